//! Per-instance property checks. Each returns `Err(detail)` on failure.

use num_complex::Complex;

use crate::exterior::{pfaffian_oracle, top_coefficient_with, PfaffianKernel, SkewMatrix};
use crate::hk::{check_quaternionic, QuaternionicSpace, RECOVERED_TOL};
use crate::immersion::{linear_calabi_yau, ChainReport, LinkStatus};
use crate::matrix::Matrix;
use crate::scalar::{factorial, Real};
use crate::subvariety::{DegreeStrategy, Frame, Subvariety};

pub type Check = std::result::Result<(), String>;

fn rel<R: Real>(a: R, b: R, scale: R) -> R {
    (a - b).abs() / scale.abs()
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `deg_ω ≥ |deg_Ω| − 1e−9·deg_ω`.
pub fn wirtinger_inequality<R: Real>(x: &Subvariety<R>, kernel: PfaffianKernel<R>) -> Check {
    let dw = x.deg_omega_with(kernel).map_err(fail)?;
    let db = x
        .deg_big_omega_with(DegreeStrategy::PfaffianOfOmegaJ, kernel)
        .map_err(fail)?;
    if dw >= db.abs() - R::tol(1e-9) * dw {
        Ok(())
    } else {
        Err(format!("deg_omega = {dw:e} < |deg_Omega| = {:e}", db.abs()))
    }
}

/// `W ≥ 1 − 1e−9` exactly when the subspace is `J`-invariant.
pub fn equality_iff_trianalytic<R: Real>(x: &Subvariety<R>, kernel: PfaffianKernel<R>) -> Check {
    let d = x.complex_dim();
    let dw = x.deg_omega_with(kernel).map_err(fail)?;
    let db = x
        .deg_big_omega_with(DegreeStrategy::PfaffianOfOmegaJ, kernel)
        .map_err(fail)?;
    let w = (db.abs() / dw).powf(R::one() / R::c(d as f64));
    let equal = w >= R::one() - R::tol(1e-9);
    if equal == x.is_trianalytic() {
        Ok(())
    } else {
        Err(format!(
            "W = {w:e} but trianalytic = {}",
            x.is_trianalytic()
        ))
    }
}

/// The three symplectic-degree strategies agree within 1e−8 relative.
pub fn strategy_agreement<R: Real>(x: &Subvariety<R>, kernel: PfaffianKernel<R>) -> Check {
    let dw = x.deg_omega_with(kernel).map_err(fail)?;
    let mut values = Vec::new();
    for s in DegreeStrategy::ALL {
        match x.deg_big_omega_with(s, kernel) {
            Ok(v) => values.push((s.name(), v)),
            Err(crate::Error::AboveOracleCutoff { .. }) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    let k = x.deg_omega_k().map_err(fail)?;
    values.push(("omega-k", k));
    for (sa, a) in &values {
        for (sb, b) in &values {
            if !(rel(*a, *b, dw) <= R::tol(1e-8)) {
                return Err(format!("{sa} = {a:e} vs {sb} = {b:e}"));
            }
        }
    }
    Ok(())
}

/// `deg_ω = d!·Vol` within 1e−9 relative.
pub fn kahler_normalization<R: Real>(x: &Subvariety<R>, kernel: PfaffianKernel<R>) -> Check {
    let dw = x.deg_omega_with(kernel).map_err(fail)?;
    let want = factorial::<R>(x.complex_dim()) * x.volume().map_err(fail)?;
    if rel(dw, want, want) <= R::tol(1e-9) {
        Ok(())
    } else {
        Err(format!("deg_omega = {dw:e}, d! Vol = {want:e}"))
    }
}

/// A unimodular change of lattice basis leaves every degree unchanged.
pub fn lattice_invariance<R: Real>(
    x: &Subvariety<R>,
    change: &Matrix<R>,
    kernel: PfaffianKernel<R>,
) -> Check {
    let y = x.with_lattice(x.lattice() * change).map_err(fail)?;
    for (a, b) in [
        (x.deg_omega_with(kernel), y.deg_omega_with(kernel)),
        (
            x.deg_big_omega_with(DegreeStrategy::PfaffianOfOmegaJ, kernel),
            y.deg_big_omega_with(DegreeStrategy::PfaffianOfOmegaJ, kernel),
        ),
    ] {
        let (a, b) = (a.map_err(fail)?, b.map_err(fail)?);
        if !(rel(a, b, a) <= R::tol(1e-9) || (a - b).abs() <= R::tol(1e-12)) {
            return Err(format!("degree {a:e} became {b:e} after unimodular change"));
        }
    }
    Ok(())
}

/// `W` is unchanged when the ambient structure is rotated by `λ`.
pub fn rotation_invariance<R: Real>(
    x: &Subvariety<R>,
    lambda: Complex<R>,
    kernel: PfaffianKernel<R>,
) -> Check {
    let rotated = std::sync::Arc::new(x.space().rotate(lambda).map_err(fail)?);
    let y = Subvariety::new(
        rotated,
        x.name(),
        x.basis().clone(),
        x.explicit_lattice().cloned(),
    )
    .map_err(fail)?;
    let w = |s: &Subvariety<R>| -> Result<R, String> {
        let dw = s.deg_omega_with(kernel).map_err(fail)?;
        let db = s
            .deg_big_omega_with(DegreeStrategy::PfaffianOfOmegaJ, kernel)
            .map_err(fail)?;
        Ok((db.abs() / dw).powf(R::one() / R::c(s.complex_dim() as f64)))
    };
    let (a, b) = (w(x)?, w(&y)?);
    if (a - b).abs() <= R::tol(1e-9) {
        Ok(())
    } else {
        Err(format!("W = {a:e} before rotation, {b:e} after"))
    }
}

/// Degree under `c·ω_I` equals `c^d` times the degree under `ω_I`.
pub fn degree_scaling<R: Real>(x: &Subvariety<R>, c: R, kernel: PfaffianKernel<R>) -> Check {
    let omega = x.space().omega_i();
    let base = x.degree_of_form(&omega, kernel).map_err(fail)?;
    let scaled = x.degree_of_form(&omega.scale(c), kernel).map_err(fail)?;
    let want = base * c.powi(x.complex_dim() as i32);
    if rel(scaled, want, want) <= R::tol(1e-10) {
        Ok(())
    } else {
        Err(format!(
            "deg under c omega = {scaled:e}, c^d deg = {want:e}"
        ))
    }
}

/// Rotation by `λ` keeps the quaternionic identities, multiplies `Ω` by
/// `λ̄`, and composes multiplicatively.
pub fn rotation_mechanism<R: Real>(
    space: &QuaternionicSpace<R>,
    l1: Complex<R>,
    l2: Complex<R>,
) -> Check {
    let tol = R::tol(1e-10);
    let r1 = space.rotate(l1).map_err(fail)?;
    r1.verify(tol).map_err(fail)?;
    let want = space.holomorphic_symplectic_form().scale(l1.conj());
    let diff = r1.holomorphic_symplectic_form().max_abs_diff(&want);
    if !(diff <= tol) {
        return Err(format!(
            "Omega' differs from conj(lambda) Omega by {diff:e}"
        ));
    }
    let twice = r1.rotate(l2).map_err(fail)?;
    let once = space.rotate(l1 * l2).map_err(fail)?;
    let diff = twice.max_abs_diff(&once);
    if diff <= tol {
        Ok(())
    } else {
        Err(format!("composition differs by {diff:e}"))
    }
}

/// Top coefficient of `ω_L^{2n}` equals that of `ω_I^{2n}`.
pub fn su2_invariance<R: Real>(
    space: &QuaternionicSpace<R>,
    coeffs: [R; 3],
    kernel: PfaffianKernel<R>,
) -> Check {
    let dim = space.dim();
    let l = space.induced_structure(coeffs).map_err(fail)?;
    let wl = space.kahler_form(&l).map_err(fail)?;
    let a = top_coefficient_with(&space.omega_i().matrix, dim / 2, kernel).map_err(fail)?;
    let b = top_coefficient_with(&wl.matrix, dim / 2, kernel).map_err(fail)?;
    if rel(a, b, a) <= R::tol(1e-9) {
        Ok(())
    } else {
        Err(format!("top coefficient {b:e} for L, {a:e} for I"))
    }
}

/// Fast Pfaffian agrees with the expansion within 1e−10 relative.
pub fn pfaffian_oracle_agreement<R: Real>(a: &SkewMatrix<R>, kernel: PfaffianKernel<R>) -> Check {
    let fast = kernel(a).map_err(fail)?;
    let exact = pfaffian_oracle(a).map_err(fail)?;
    if rel(fast, exact, exact) <= R::tol(1e-10) {
        Ok(())
    } else {
        Err(format!("Pf = {fast:e}, oracle = {exact:e}"))
    }
}

/// `Pf(A)² = det(A)` within 1e−9 relative.
pub fn pfaffian_squared_det<R: Real>(a: &SkewMatrix<R>, kernel: PfaffianKernel<R>) -> Check {
    let pf = kernel(a).map_err(fail)?;
    let det = a.matrix().det().map_err(fail)?;
    if rel(pf * pf, det, det) <= R::tol(1e-9) {
        Ok(())
    } else {
        Err(format!("Pf^2 = {:e}, det = {det:e}", pf * pf))
    }
}

/// `Pf(BᵀAB) = det(B)·Pf(A)` within 1e−9 relative.
pub fn pfaffian_congruence<R: Real>(
    a: &SkewMatrix<R>,
    b: &Matrix<R>,
    kernel: PfaffianKernel<R>,
) -> Check {
    let lhs = kernel(&a.congruence(b).map_err(fail)?).map_err(fail)?;
    let rhs = b.det().map_err(fail)? * kernel(a).map_err(fail)?;
    if rel(lhs, rhs, rhs) <= R::tol(1e-9) {
        Ok(())
    } else {
        Err(format!("Pf(B^T A B) = {lhs:e}, det(B) Pf(A) = {rhs:e}"))
    }
}

/// Certified links satisfy `W(inner) ≤ W(outer) + 1e−9`.
pub fn chain_monotonicity<R: Real>(report: &ChainReport<R>) -> Check {
    match report
        .links
        .iter()
        .find(|l| l.status == LinkStatus::Violation)
    {
        None => Ok(()),
        Some(l) => Err(format!(
            "{} -> {}: W {:e} > {:e}",
            l.inner, l.outer, l.w_inner, l.w_outer
        )),
    }
}

/// Trianalytic inner element and certified outer element force
/// `W(outer) = 1` and a trianalytic outer element.
pub fn chain_corollary<R: Real>(report: &ChainReport<R>) -> Check {
    match report.links.iter().find(|l| l.corollary == Some(false)) {
        None => Ok(()),
        Some(l) => Err(format!(
            "{} -> {}: W(outer) = {:e}",
            l.inner, l.outer, l.w_outer
        )),
    }
}

/// A successful certificate satisfies the quaternionic identities, and
/// reproduces the restricted `Ω`, within 1e−8.
pub fn certificate_soundness<R: Real>(x: &Subvariety<R>) -> Check {
    let cert = linear_calabi_yau(x).map_err(fail)?;
    let Some(h) = cert.recovered() else {
        return Ok(());
    };
    let tol = R::tol(RECOVERED_TOL);
    check_quaternionic(h.i(), h.j(), h.k(), h.g(), tol).map_err(fail)?;
    let diff = h
        .holomorphic_symplectic_form()
        .max_abs_diff(&cert.restricted_omega);
    if diff <= tol {
        Ok(())
    } else {
        Err(format!("recovered Omega differs by {diff:e}"))
    }
}

/// For a successful certificate, `d!·Pf(scale·ω_I|_V)·Vol = |deg_Ω|`
/// within 1e−8 relative.
pub fn certificate_scale<R: Real>(x: &Subvariety<R>, kernel: PfaffianKernel<R>) -> Check {
    let cert = linear_calabi_yau(x).map_err(fail)?;
    if !cert.is_valid() {
        return Ok(());
    }
    let d = x.complex_dim();
    let restricted = x
        .restrict_form(&x.space().omega_i(), Frame::Orthonormal)
        .map_err(fail)?;
    let rescaled = factorial::<R>(d)
        * kernel(&restricted.scale(cert.scale)).map_err(fail)?
        * x.volume().map_err(fail)?;
    let target = x
        .deg_big_omega_with(DegreeStrategy::PfaffianOfOmegaJ, kernel)
        .map_err(fail)?
        .abs();
    if rel(rescaled, target, target) <= R::tol(1e-8) {
        Ok(())
    } else {
        Err(format!(
            "rescaled Kähler degree {rescaled:e}, |deg_Omega| = {target:e}"
        ))
    }
}
