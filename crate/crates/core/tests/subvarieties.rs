use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wirtinger::hk::QuaternionicSpace;
use wirtinger::matrix::Matrix;
use wirtinger::properties::population::{
    random_complex_subvariety, random_quaternionic_subvariety,
};
use wirtinger::subvariety::families::*;
use wirtinger::subvariety::{degree_reports, DegreeStrategy, Subvariety};
use wirtinger::{Error, SubvarietyF32, SubvarietyF64};

fn h(n: usize) -> Arc<QuaternionicSpace<f64>> {
    Arc::new(QuaternionicSpace::standard(n).unwrap())
}

/// Determinant by Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

fn gram_volume(basis: &Matrix<f64>) -> f64 {
    let cols: Vec<Vec<f64>> = (0..basis.cols()).map(|j| basis.column(j)).collect();
    let g: Vec<Vec<f64>> = cols
        .iter()
        .map(|a| {
            cols.iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    det(g).sqrt()
}

#[test]
fn interpolating_family_has_w_cos_theta() {
    let s = h(2);
    for theta in [FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8] {
        let x = Subvariety::new(s.clone(), "V", interpolating_basis(&s, theta), None).unwrap();
        for strategy in DegreeStrategy::ALL {
            let r = x.degree_report(strategy).unwrap();
            assert!((r.wirtinger - theta.cos()).abs() < 1e-12, "{strategy:?}");
        }
        assert!(!x.is_trianalytic());
    }
}

#[test]
fn complex_plane_has_w_zero() {
    let s = h(2);
    let x = Subvariety::new(s.clone(), "P", complex_plane_basis(&s), None).unwrap();
    let r = x.wirtinger_number().unwrap();
    assert!(r.wirtinger.abs() < 1e-12);
    assert!((r.deg_omega - 2.0).abs() < 1e-12);
}

#[test]
fn kahler_degree_is_factorial_times_gram_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for d in [2, 4] {
        for _ in 0..10 {
            let x: SubvarietyF64 = random_complex_subvariety(3, d, "X".into(), &mut rng);
            let want = (1..=d).product::<usize>() as f64 * gram_volume(x.basis());
            let got = x.deg_omega().unwrap();
            assert!((got - want).abs() < 1e-9 * want, "{got} vs {want}");
        }
    }
}

#[test]
fn lattice_scales_volume() {
    let s = h(1);
    let mut lattice = Matrix::identity(4);
    lattice[(0, 0)] = 2.0;
    lattice[(1, 2)] = 5.0;
    let x = Subvariety::new(s.clone(), "M", Matrix::identity(4), Some(lattice)).unwrap();
    assert!((x.volume().unwrap() - 2.0).abs() < 1e-12);
    assert!((x.deg_omega().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn strategies_agree_in_dimension_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..10 {
        let x: SubvarietyF64 = random_complex_subvariety(3, 4, "X".into(), &mut rng);
        let values: Vec<f64> = DegreeStrategy::ALL
            .iter()
            .map(|&s| x.deg_big_omega(s).unwrap())
            .collect();
        let scale = x.deg_omega().unwrap();
        for v in &values {
            assert!((v - values[0]).abs() < 1e-8 * scale);
        }
        assert!((x.deg_omega_k().unwrap() - values[0]).abs() < 1e-8 * scale);
    }
}

#[test]
fn wirtinger_inequality_and_equality_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let x: SubvarietyF64 = random_complex_subvariety(2, 2, "X".into(), &mut rng);
        let r = x.wirtinger_number().unwrap();
        assert!(r.deg_omega >= r.deg_big_omega.abs() - 1e-9 * r.deg_omega);
        assert_eq!(r.wirtinger >= 1.0 - 1e-9, x.is_trianalytic());
    }
    for m in 1..=3 {
        let x: SubvarietyF64 = random_quaternionic_subvariety(3, m, "Q".into(), &mut rng);
        let r = x.wirtinger_number().unwrap();
        assert!((r.wirtinger - 1.0).abs() < 1e-9 && x.is_trianalytic());
    }
}

#[test]
fn odd_dimension_and_non_complex_input_rejected() {
    let s = h(1);
    let line = complex_span(&s, &[coordinate(&s, 0)]);
    let x = Subvariety::new(s.clone(), "C", line, None).unwrap();
    assert_eq!(
        x.wirtinger_number().unwrap_err(),
        Error::OddComplexDimension(1)
    );
    let real_plane = Matrix::from_columns(&[unit(4, 0), unit(4, 2)]).unwrap();
    assert!(matches!(
        Subvariety::new(s, "R", real_plane, None),
        Err(Error::NotComplex(_))
    ));
}

#[test]
fn batch_reports_keep_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let xs: Vec<SubvarietyF64> = (0..8)
        .map(|i| random_complex_subvariety(2, 2, format!("x{i}"), &mut rng))
        .collect();
    let batch = degree_reports(&xs, DegreeStrategy::ComplexPfaffian);
    for (x, r) in xs.iter().zip(batch) {
        assert_eq!(
            x.degree_report(DegreeStrategy::ComplexPfaffian).unwrap(),
            r.unwrap()
        );
    }
}

#[test]
fn single_precision_interpolating_family() {
    let s = Arc::new(QuaternionicSpace::<f32>::standard(2).unwrap());
    let x = SubvarietyF32::new(
        s.clone(),
        "V",
        interpolating_basis(&s, std::f32::consts::FRAC_PI_4),
        None,
    )
    .unwrap();
    let r = x.wirtinger_number().unwrap();
    assert!((r.wirtinger - std::f32::consts::FRAC_PI_4.cos()).abs() < 1e-5);
}
