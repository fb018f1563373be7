use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hk::{
    recover_structure, ComplexTwoForm, QuaternionicSpace, Recovery, StructureViolation,
    RECOVERED_TOL,
};
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::subvariety::Subvariety;

/// `|Pf S|` below which the restricted holomorphic symplectic form counts as
/// degenerate. `S` is written in a unitary frame, so `|Pf S| ≤ 1`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// Holomorphic symplectic immersion `inner ↪ outer` in the restriction
/// model: `inner ⊆ outer` and `Ω|_inner` nondegenerate.
#[derive(Clone, Debug)]
pub struct ImmersionEdge<'a, R> {
    pub inner: &'a Subvariety<R>,
    pub outer: &'a Subvariety<R>,
    pub inclusion_residual: R,
    pub symplectic: bool,
}

/// `|Pf S|` of the restricted `Ω`, zero for odd complex dimension.
pub fn symplectic_strength<R: Real>(x: &Subvariety<R>) -> R {
    x.symplectic_pfaffian().norm()
}

pub fn is_symplectic_immersion<'a, R: Real>(
    inner: &'a Subvariety<R>,
    outer: &'a Subvariety<R>,
) -> Result<ImmersionEdge<'a, R>> {
    if inner.space() != outer.space() {
        return Err(Error::Chain(format!(
            "{} and {} live in different ambient spaces",
            inner.name(),
            outer.name()
        )));
    }
    let residual = outer.inclusion_residual(inner);
    if !(residual <= R::tol(crate::subvariety::INCLUSION_TOL)) {
        return Err(Error::NotContained(residual.to_f64().unwrap_or(f64::NAN)));
    }
    let symplectic = symplectic_strength(inner) > R::c(SYMPLECTIC_TOL);
    Ok(ImmersionEdge {
        inner,
        outer,
        inclusion_residual: residual,
        symplectic,
    })
}

/// Linear stand-in for the Calabi-Yau step: a hyperkähler structure on the
/// subspace with metric `scale·g|_V`, complex structure `I|_V` and
/// holomorphic symplectic form `Ω|_V`, all written in the subvariety's
/// orthonormal frame.
#[derive(Clone, Debug)]
pub struct HkCertificate<R> {
    pub subject: String,
    /// Kähler rescaling factor, `W(X)`.
    pub scale: R,
    /// Rotation applied to the structure recovered from the phase-normalized
    /// form; `λ = e^{−iφ}` with `φ = arg(Pf S)·2/d`.
    pub lambda: Complex<R>,
    pub restricted_metric: Matrix<R>,
    pub restricted_i: Matrix<R>,
    pub restricted_omega: ComplexTwoForm<R>,
    pub outcome: Recovery<R>,
}

impl<R: Real> HkCertificate<R> {
    pub fn is_valid(&self) -> bool {
        matches!(self.outcome, Recovery::Recovered(_))
    }

    pub fn recovered(&self) -> Option<&QuaternionicSpace<R>> {
        self.outcome.space()
    }

    pub fn failure(&self) -> Option<&StructureViolation> {
        match &self.outcome {
            Recovery::NotQuaternionic(v) => Some(v),
            Recovery::Recovered(_) => None,
        }
    }
}

/// Builds the certificate for `x`.
///
/// The scale is `W(X)`, so the rescaled Kähler degree equals `|deg_Ω X|`.
/// A structure is recovered from the rescaled metric and `e^{−iφ}Ω|_V`
/// (whose Pfaffian in the unitary frame is real positive), then rotated by
/// `λ = e^{−iφ}` so that its holomorphic symplectic form is `Ω|_V` again.
pub fn linear_calabi_yau<R: Real>(x: &Subvariety<R>) -> Result<HkCertificate<R>> {
    let d = x.complex_dim();
    if d % 2 == 1 {
        return Err(Error::OddComplexDimension(d));
    }
    let pf = x.symplectic_pfaffian();
    if !(pf.norm() > R::c(SYMPLECTIC_TOL)) {
        return Err(Error::DegenerateSymplectic);
    }
    let report = x.wirtinger_number()?;
    let scale = report.wirtinger;

    let space = x.space();
    let q = x.frame();
    let gram = q.congruence(space.g());
    let restricted_i = &gram.inverse()? * &(&(&q.transpose() * space.g()) * &(space.i() * q));
    let restricted_omega = x.restricted_symplectic_form()?;

    let phi = pf.arg() * R::c(2.0) / R::c(d as f64);
    let lambda = Complex::from_polar(R::one(), -phi);
    let normalized = restricted_omega.scale(lambda);
    let metric = gram.scale(scale);

    let outcome = match recover_structure(&metric, &normalized, &restricted_i)? {
        Recovery::Recovered(h1) => {
            let h = h1.rotate(lambda)?;
            check_certificate(&h, &restricted_omega, &restricted_i, scale, &gram)
        }
        failed => failed,
    };
    Ok(HkCertificate {
        subject: x.name().to_string(),
        scale,
        lambda,
        restricted_metric: gram,
        restricted_i,
        restricted_omega,
        outcome,
    })
}

fn check_certificate<R: Real>(
    h: &QuaternionicSpace<R>,
    omega: &ComplexTwoForm<R>,
    restricted_i: &Matrix<R>,
    scale: R,
    gram: &Matrix<R>,
) -> Recovery<R> {
    let tol = R::tol(RECOVERED_TOL);
    if let Err(v) = h.verify(tol) {
        return Recovery::NotQuaternionic(v);
    }
    let r = h.holomorphic_symplectic_form().max_abs_diff(omega);
    if !(r <= tol) {
        return Recovery::NotQuaternionic(StructureViolation::FormMismatch {
            form: "holomorphic symplectic form".into(),
            residual: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let kahler = (gram * restricted_i).scale(scale);
    let r = h.omega_i().matrix.matrix().max_abs_diff(&kahler);
    if !(r <= tol) {
        return Recovery::NotQuaternionic(StructureViolation::FormMismatch {
            form: "Kähler form".into(),
            residual: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Recovery::Recovered(h.clone())
}
