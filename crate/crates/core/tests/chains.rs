use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

use wirtinger::exterior::pfaffian;
use wirtinger::hk::QuaternionicSpace;
use wirtinger::immersion::*;
use wirtinger::matrix::Matrix;
use wirtinger::scalar::factorial;
use wirtinger::subvariety::families::*;
use wirtinger::subvariety::{DegreeStrategy, Frame, Subvariety};

fn h(n: usize) -> Arc<QuaternionicSpace<f64>> {
    Arc::new(QuaternionicSpace::standard(n).unwrap())
}

/// `ℍe₀ ⊕ V_θ(e₁, e₂)` inside `ℍ³`.
fn tilted_middle(s: &Arc<QuaternionicSpace<f64>>, theta: f64) -> Subvariety<f64> {
    let line = quaternionic_line_basis(s, 0);
    let v = interpolating_span(s, &coordinate(s, 1), &coordinate(s, 2), theta);
    let cols: Vec<Vec<f64>> = (0..4)
        .map(|c| line.column(c))
        .chain((0..4).map(|c| v.column(c)))
        .collect();
    Subvariety::new(s.clone(), "mid", Matrix::from_columns(&cols).unwrap(), None).unwrap()
}

#[test]
fn certificate_scale_matches_symplectic_degree() {
    let s = h(2);
    let x = Subvariety::new(s.clone(), "V", interpolating_basis(&s, FRAC_PI_4), None).unwrap();
    let cert = linear_calabi_yau(&x).unwrap();
    assert!(cert.is_valid());
    let restricted = x.restrict_form(&s.omega_i(), Frame::Orthonormal).unwrap();
    let rescaled = factorial::<f64>(2)
        * pfaffian(&restricted.scale(cert.scale)).unwrap()
        * x.volume().unwrap();
    let target = x.deg_big_omega(DegreeStrategy::Oracle).unwrap().abs();
    assert!((rescaled - target).abs() < 1e-8 * target);
    let h = cert.recovered().unwrap();
    h.verify(1e-8).unwrap();
    assert!(
        h.holomorphic_symplectic_form()
            .max_abs_diff(&cert.restricted_omega)
            < 1e-8
    );
}

#[test]
fn quaternionic_certificate_reproduces_the_restriction() {
    let s = h(2);
    let x = Subvariety::new(s.clone(), "L", quaternionic_line_basis(&s, 1), None).unwrap();
    let cert = linear_calabi_yau(&x).unwrap();
    let rec = cert.recovered().unwrap();
    assert!((cert.scale - 1.0).abs() < 1e-12);
    assert!(rec.g().max_abs_diff(&Matrix::identity(4)) < 1e-12);
    assert!(rec.i().max_abs_diff(&cert.restricted_i) < 1e-12);
}

#[test]
fn degenerate_form_has_no_certificate() {
    let s = h(2);
    let x = Subvariety::new(s.clone(), "P", complex_plane_basis(&s), None).unwrap();
    assert!(linear_calabi_yau(&x).is_err());
}

#[test]
fn corollary_instance_with_flat_middle() {
    let s = h(3);
    let chain = [
        Subvariety::new(s.clone(), "line", quaternionic_line_basis(&s, 0), None).unwrap(),
        tilted_middle(&s, 0.0),
        Subvariety::new(s.clone(), "M", Matrix::identity(12), None).unwrap(),
    ];
    let r = verify_chain(&chain, CHAIN_TOL).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.links[0].corollary, Some(true));
    assert!(r.elements[1].trianalytic);
}

#[test]
fn tilted_middle_is_skipped_and_decreasing() {
    let s = h(3);
    for theta in [0.2, FRAC_PI_4, 1.2] {
        let chain = [
            Subvariety::new(s.clone(), "line", quaternionic_line_basis(&s, 0), None).unwrap(),
            tilted_middle(&s, theta),
            Subvariety::new(s.clone(), "M", Matrix::identity(12), None).unwrap(),
        ];
        let r = verify_chain(&chain, CHAIN_TOL).unwrap();
        assert!(matches!(
            r.links[0].status,
            LinkStatus::SkippedNoCertificate { .. }
        ));
        assert!(r.links[0].w_inner > r.links[0].w_outer);
        assert!((r.links[0].w_outer - theta.cos().sqrt()).abs() < 1e-12);
        assert_eq!(r.links[1].status, LinkStatus::Pass);
    }
}

#[test]
fn broken_inclusion_names_the_link() {
    let s = h(2);
    let a = Subvariety::new(s.clone(), "A", quaternionic_line_basis(&s, 0), None).unwrap();
    let b = Subvariety::new(s.clone(), "B", quaternionic_line_basis(&s, 1), None).unwrap();
    let err = verify_chain(&[a, b], CHAIN_TOL).unwrap_err();
    assert!(err.to_string().contains("A -> B"), "{err}");
}

#[test]
fn generated_suite_mixes_kinds() {
    let suite = generate_chain_suite::<f64>(0, 20);
    for window in suite.chunks(10) {
        assert!(window.iter().any(|c| c.kind == ChainKind::Trianalytic));
    }
    let mut skipped = 0;
    let mut certified = 0;
    for c in &suite {
        let r = verify_chain(&c.members, CHAIN_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        skipped += r.skipped();
        certified += r.certified_links().count();
    }
    assert!(skipped > 0 && certified > 0);
}

#[test]
fn chain_report_serializes() {
    let suite = generate_chain_suite::<f64>(3, 4);
    let r = verify_chain(&suite[3].members, CHAIN_TOL).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: ChainReport<f64> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert!(text.contains("SKIPPED-NO-CERTIFICATE"));
}
