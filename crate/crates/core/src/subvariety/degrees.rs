//! Kähler and symplectic degrees, Wirtinger numbers.
//!
//! For a flat subtorus the integral of a constant top form is its
//! coefficient in an oriented orthonormal frame times the covolume, so
//! `∫_X η^d = d! · Pf(Qᵀ A Q) · Vol(X)`.
//!
//! The symplectic degree uses `(Ω∧Ω̄/4)^{d/2}` with coefficient
//! `binom(d, d/2)`; with this normalization it coincides with the
//! `ω_J`-degree on every `I`-complex subspace.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{pfaffian, PfaffianKernel, SkewMatrix, WEDGE_ORACLE_CUTOFF};
use crate::hk::{ComplexTwoForm, TwoForm};
use crate::scalar::{binomial, factorial, Real};
use crate::subvariety::{Frame, Subvariety};

/// How [`Subvariety::deg_big_omega`] evaluates the symplectic degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegreeStrategy {
    /// `d! · Pf(Qᵀ ω_J Q) · Vol`.
    #[default]
    #[serde(rename = "pfaffian-of-omega-j")]
    PfaffianOfOmegaJ,
    /// `binom(d, d/2) · ((d/2)!)² · |Pf S|² · Vol`, where `S` is the complex
    /// `d×d` matrix of `Ω` in a unitary frame of `V`.
    #[serde(rename = "complex-pfaffian")]
    ComplexPfaffian,
    /// Full wedge expansion of `(Ω∧Ω̄/4)^{d/2}` over the complex numbers.
    #[serde(rename = "oracle")]
    Oracle,
}

impl DegreeStrategy {
    pub const ALL: [DegreeStrategy; 3] =
        [Self::PfaffianOfOmegaJ, Self::ComplexPfaffian, Self::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Self::PfaffianOfOmegaJ => "pfaffian-of-omega-j",
            Self::ComplexPfaffian => "complex-pfaffian",
            Self::Oracle => "oracle",
        }
    }
}

/// The degree invariants of one subvariety.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport<R> {
    /// `dim_ℂ X`.
    pub d: usize,
    pub volume: R,
    pub deg_omega: R,
    #[serde(rename = "deg_Omega")]
    pub deg_big_omega: R,
    #[serde(rename = "deg_omega_J")]
    pub deg_omega_j: R,
    #[serde(rename = "deg_omega_K")]
    pub deg_omega_k: R,
    pub wirtinger: R,
    pub trianalytic: bool,
}

impl<R: Real> Subvariety<R> {
    fn even_complex_dim(&self) -> Result<usize> {
        let d = self.complex_dim();
        if d % 2 == 1 {
            return Err(Error::OddComplexDimension(d));
        }
        Ok(d)
    }

    /// `∫_X η^d = d! · Pf(Qᵀ A Q) · Vol(X)` for a constant 2-form `η`.
    pub fn degree_of_form(&self, form: &TwoForm<R>, kernel: PfaffianKernel<R>) -> Result<R> {
        let d = self.complex_dim();
        let restricted = self.restrict_form(form, Frame::Orthonormal)?;
        Ok(factorial::<R>(d) * kernel(&restricted)? * self.volume()?)
    }

    /// Kähler degree `∫_X ω_I^d`.
    pub fn deg_omega(&self) -> Result<R> {
        self.deg_omega_with(pfaffian)
    }

    pub fn deg_omega_with(&self, kernel: PfaffianKernel<R>) -> Result<R> {
        self.even_complex_dim()?;
        self.degree_of_form(&self.space().omega_i(), kernel)
    }

    /// `∫_X ω_J^d`.
    pub fn deg_omega_j(&self) -> Result<R> {
        self.even_complex_dim()?;
        self.degree_of_form(&self.space().omega_j(), pfaffian)
    }

    /// `∫_X ω_K^d`.
    pub fn deg_omega_k(&self) -> Result<R> {
        self.even_complex_dim()?;
        self.degree_of_form(&self.space().omega_k(), pfaffian)
    }

    /// `Ω` restricted to `V` and written in the unitary frame `v₁, …, v_d`:
    /// `S[a][b] = Ω(v_a, v_b)`.
    pub fn symplectic_matrix(&self) -> SkewMatrix<Complex<R>> {
        let omega = self.space().holomorphic_symplectic_form();
        let vs = self.complex_frame();
        SkewMatrix::from_upper(vs.len(), |a, b| omega.eval(&vs[a], &vs[b]))
    }

    /// `Pf S` (zero for odd `d`).
    pub fn symplectic_pfaffian(&self) -> Complex<R> {
        let s = self.symplectic_matrix();
        if s.dim() % 2 == 1 {
            return Complex::new(R::zero(), R::zero());
        }
        pfaffian(&s).expect("even dimension")
    }

    /// `Ω` restricted to the oriented orthonormal frame.
    pub fn restricted_symplectic_form(&self) -> Result<ComplexTwoForm<R>> {
        self.space()
            .holomorphic_symplectic_form()
            .restrict(self.frame())
    }

    /// Symplectic degree `binom(d, d/2) ∫_X (Ω∧Ω̄/4)^{d/2}`.
    pub fn deg_big_omega(&self, strategy: DegreeStrategy) -> Result<R> {
        self.deg_big_omega_with(strategy, pfaffian)
    }

    pub fn deg_big_omega_with(
        &self,
        strategy: DegreeStrategy,
        kernel: PfaffianKernel<R>,
    ) -> Result<R> {
        let d = self.even_complex_dim()?;
        let vol = self.volume()?;
        let half = d / 2;
        match strategy {
            DegreeStrategy::PfaffianOfOmegaJ => {
                self.degree_of_form(&self.space().omega_j(), kernel)
            }
            DegreeStrategy::ComplexPfaffian => {
                // Ω^{d/2} = (d/2)! Pf S ζ¹∧…∧ζ^d, and ζ¹…ζ^d∧ζ̄¹…ζ̄^d = 2^d vol
                // for even d, so the top coefficient of (Ω∧Ω̄/4)^{d/2} is
                // ((d/2)!)² |Pf S|².
                let pf = self.symplectic_pfaffian();
                let half_fact = factorial::<R>(half);
                let top = half_fact * half_fact * pf.norm_sqr();
                Ok(binomial::<R>(d, half) * top * vol)
            }
            DegreeStrategy::Oracle => {
                if 2 * d > WEDGE_ORACLE_CUTOFF {
                    return Err(Error::AboveOracleCutoff {
                        dim: 2 * d,
                        cutoff: WEDGE_ORACLE_CUTOFF,
                    });
                }
                let omega = self.restricted_symplectic_form()?;
                let big = omega.complex_matrix().to_multivector();
                let bar = omega.conjugate().complex_matrix().to_multivector();
                let quarter = Complex::new(R::c(0.25), R::zero());
                let base = big.wedge(&bar)?.scale(quarter);
                let top = base.power(half).top_coefficient();
                Ok(binomial::<R>(d, half) * top.re * vol)
            }
        }
    }

    /// Full degree report using the given symplectic-degree strategy.
    pub fn degree_report(&self, strategy: DegreeStrategy) -> Result<DegreeReport<R>> {
        let d = self.even_complex_dim()?;
        let deg_omega = self.deg_omega()?;
        let deg_big_omega = self.deg_big_omega(strategy)?;
        let wirtinger = (deg_big_omega.abs() / deg_omega).powf(R::one() / R::c(d as f64));
        Ok(DegreeReport {
            d,
            volume: self.volume()?,
            deg_omega,
            deg_big_omega,
            deg_omega_j: self.deg_omega_j()?,
            deg_omega_k: self.deg_omega_k()?,
            wirtinger,
            trianalytic: self.is_trianalytic(),
        })
    }

    /// `W(X) = (|deg_Ω X| / deg_ω X)^{1/d}` with the full report.
    pub fn wirtinger_number(&self) -> Result<DegreeReport<R>> {
        self.degree_report(DegreeStrategy::default())
    }
}

/// Reports for a batch of subvarieties, computed in parallel and returned
/// in input order.
pub fn degree_reports<R: Real>(
    xs: &[Subvariety<R>],
    strategy: DegreeStrategy,
) -> Vec<Result<DegreeReport<R>>> {
    xs.par_iter().map(|x| x.degree_report(strategy)).collect()
}
