use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::SkewMatrix;
use crate::hk::forms::{ComplexTwoForm, FormLabel, TwoForm};
use crate::matrix::Matrix;
use crate::scalar::Real;

/// Tolerance for identities of structures built by this crate.
pub const CONSTRUCTED_TOL: f64 = 1e-12;
/// Tolerance for identities of user-supplied or recovered structures.
pub const RECOVERED_TOL: f64 = 1e-8;
/// Tolerance on `|λ| = 1` for structure rotations.
pub const UNIT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Structure {
    I,
    J,
    K,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Structure::I => "I",
            Structure::J => "J",
            Structure::K => "K",
        };
        f.write_str(s)
    }
}

/// The first quaternionic identity a candidate triple fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum StructureViolation {
    /// `L² = −Id` fails.
    Square { structure: Structure, residual: f64 },
    /// `I∘J = K` fails.
    Product { residual: f64 },
    /// `J∘I = −K` fails.
    Anticommute { residual: f64 },
    /// `Lᵀ g L = g` fails.
    Hermitian { structure: Structure, residual: f64 },
    /// `g` is not symmetric positive-definite.
    Metric,
    /// Matrix sizes are inconsistent or not a multiple of four.
    Shape { detail: String },
    /// A form built from the recovered structure differs from its target.
    FormMismatch { form: String, residual: f64 },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Square {
                structure,
                residual,
            } => {
                write!(f, "{structure}² = -Id violated (residual {residual:.3e})")
            }
            Self::Product { residual } => write!(f, "I∘J = K violated (residual {residual:.3e})"),
            Self::Anticommute { residual } => {
                write!(f, "J∘I = -K violated (residual {residual:.3e})")
            }
            Self::Hermitian {
                structure,
                residual,
            } => {
                write!(f, "metric not Hermitian for {structure}: {structure}ᵀ g {structure} ≠ g (residual {residual:.3e})")
            }
            Self::Metric => f.write_str("metric is not symmetric positive-definite"),
            Self::Shape { detail } => f.write_str(detail),
            Self::FormMismatch { form, residual } => {
                write!(
                    f,
                    "recovered {form} differs from its target (residual {residual:.3e})"
                )
            }
        }
    }
}

/// Flat hyperkähler model: `ℝ^{4n}` with structures `I, J, K` and metric `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionicSpace<R> {
    n: usize,
    i: Matrix<R>,
    j: Matrix<R>,
    k: Matrix<R>,
    g: Matrix<R>,
}

/// Left multiplication by `i`, `j`, `k` on one quaternionic coordinate with
/// real basis `(1, i, j, k)`. Column `c` is the image of basis vector `c`.
fn left_mult<R: Real>(unit: Structure) -> Matrix<R> {
    // images of 1, i, j, k as (index, sign)
    let images: [(usize, f64); 4] = match unit {
        Structure::I => [(1, 1.0), (0, -1.0), (3, 1.0), (2, -1.0)],
        Structure::J => [(2, 1.0), (3, -1.0), (0, -1.0), (1, 1.0)],
        Structure::K => [(3, 1.0), (2, 1.0), (1, -1.0), (0, -1.0)],
    };
    let mut m = Matrix::zeros(4, 4);
    for (col, (row, sign)) in images.iter().enumerate() {
        m[(*row, col)] = R::c(*sign);
    }
    m
}

fn block_diagonal<R: Real>(block: &Matrix<R>, copies: usize) -> Matrix<R> {
    let b = block.rows();
    let mut m = Matrix::zeros(b * copies, b * copies);
    for c in 0..copies {
        for r in 0..b {
            for s in 0..b {
                m[(c * b + r, c * b + s)] = block[(r, s)];
            }
        }
    }
    m
}

/// Checks the quaternionic identities and metric compatibility of a triple.
pub fn check_quaternionic<R: Real>(
    i: &Matrix<R>,
    j: &Matrix<R>,
    k: &Matrix<R>,
    g: &Matrix<R>,
    tol: R,
) -> std::result::Result<(), StructureViolation> {
    let dim = g.rows();
    for m in [i, j, k, g] {
        if !m.is_square() || m.rows() != dim {
            return Err(StructureViolation::Shape {
                detail: format!("expected {dim}x{dim} matrices"),
            });
        }
    }
    if dim == 0 || !dim.is_multiple_of(4) {
        return Err(StructureViolation::Shape {
            detail: format!("real dimension {dim} is not a positive multiple of 4"),
        });
    }
    if !is_positive_definite(g, tol) {
        return Err(StructureViolation::Metric);
    }
    let id = Matrix::identity(dim);
    let minus_id = -&id;
    let f = |x: R| x.to_f64().unwrap_or(f64::NAN);
    for (s, m) in [(Structure::I, i), (Structure::J, j), (Structure::K, k)] {
        let r = (m * m).max_abs_diff(&minus_id);
        if !(r <= tol) {
            return Err(StructureViolation::Square {
                structure: s,
                residual: f(r),
            });
        }
    }
    let r = (i * j).max_abs_diff(k);
    if !(r <= tol) {
        return Err(StructureViolation::Product { residual: f(r) });
    }
    let r = (j * i).max_abs_diff(&-k);
    if !(r <= tol) {
        return Err(StructureViolation::Anticommute { residual: f(r) });
    }
    let gscale = g.max_abs().max(R::one());
    for (s, m) in [(Structure::I, i), (Structure::J, j), (Structure::K, k)] {
        let r = m.congruence(g).max_abs_diff(g);
        if !(r <= tol * gscale) {
            return Err(StructureViolation::Hermitian {
                structure: s,
                residual: f(r),
            });
        }
    }
    Ok(())
}

fn is_positive_definite<R: Real>(g: &Matrix<R>, tol: R) -> bool {
    if g.asymmetry() > tol * g.max_abs().max(R::one()) {
        return false;
    }
    match g.symmetric_eigenvalues() {
        Ok(eig) => eig.first().is_some_and(|&l| l > R::zero()),
        Err(_) => false,
    }
}

impl<R: Real> QuaternionicSpace<R> {
    /// `ℍⁿ = ℝ^{4n}` with `I, J, K` acting by left multiplication by
    /// `i, j, k` on each coordinate and the identity metric.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            n,
            i: block_diagonal(&left_mult(Structure::I), n),
            j: block_diagonal(&left_mult(Structure::J), n),
            k: block_diagonal(&left_mult(Structure::K), n),
            g: Matrix::identity(4 * n),
        })
    }

    /// Validates a user-supplied triple at [`RECOVERED_TOL`].
    pub fn new(i: Matrix<R>, j: Matrix<R>, k: Matrix<R>, g: Matrix<R>) -> Result<Self> {
        Self::with_tolerance(i, j, k, g, R::tol(RECOVERED_TOL))
    }

    pub fn with_tolerance(
        i: Matrix<R>,
        j: Matrix<R>,
        k: Matrix<R>,
        g: Matrix<R>,
        tol: R,
    ) -> Result<Self> {
        check_quaternionic(&i, &j, &k, &g, tol).map_err(|v| Error::Structure(v.to_string()))?;
        Ok(Self {
            n: g.rows() / 4,
            i,
            j,
            k,
            g,
        })
    }

    pub(crate) fn from_parts_unchecked(
        i: Matrix<R>,
        j: Matrix<R>,
        k: Matrix<R>,
        g: Matrix<R>,
    ) -> Self {
        Self {
            n: g.rows() / 4,
            i,
            j,
            k,
            g,
        }
    }

    /// Quaternionic dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension `4n`.
    pub fn dim(&self) -> usize {
        4 * self.n
    }

    pub fn i(&self) -> &Matrix<R> {
        &self.i
    }

    pub fn j(&self) -> &Matrix<R> {
        &self.j
    }

    pub fn k(&self) -> &Matrix<R> {
        &self.k
    }

    pub fn g(&self) -> &Matrix<R> {
        &self.g
    }

    pub fn structure(&self, s: Structure) -> &Matrix<R> {
        match s {
            Structure::I => &self.i,
            Structure::J => &self.j,
            Structure::K => &self.k,
        }
    }

    /// Re-checks the quaternionic identities at `tol`.
    pub fn verify(&self, tol: R) -> std::result::Result<(), StructureViolation> {
        check_quaternionic(&self.i, &self.j, &self.k, &self.g, tol)
    }

    /// `L = aI + bJ + cK` for the normalized coefficient vector.
    pub fn induced_structure(&self, coeffs: [R; 3]) -> Result<InducedStructure<R>> {
        let norm = coeffs.iter().map(|c| *c * *c).sum::<R>().sqrt();
        if norm == R::zero() || !norm.is_finite() {
            return Err(Error::ZeroCoefficients);
        }
        let [a, b, c] = coeffs.map(|x| x / norm);
        let l = &(&self.i.scale(a) + &self.j.scale(b)) + &self.k.scale(c);
        let r = (&l * &l).max_abs_diff(&-&Matrix::identity(self.dim()));
        if r > R::tol(1e-10) {
            return Err(Error::Structure(format!(
                "L² = -Id violated (residual {r:e})"
            )));
        }
        Ok(InducedStructure {
            coeffs: [a, b, c],
            matrix: l,
        })
    }

    /// `ω_L = g(·, L·)`, matrix `g·L`.
    pub fn kahler_form(&self, l: &InducedStructure<R>) -> Result<TwoForm<R>> {
        let label = match l.coeffs {
            [a, b, c] if b == R::zero() && c == R::zero() && a == R::one() => FormLabel::OmegaI,
            [a, b, c] if a == R::zero() && c == R::zero() && b == R::one() => FormLabel::OmegaJ,
            [a, b, c] if a == R::zero() && b == R::zero() && c == R::one() => FormLabel::OmegaK,
            _ => FormLabel::Other,
        };
        Ok(TwoForm::new(SkewMatrix::new(&self.g * &l.matrix)?, label))
    }

    fn structure_form(&self, s: Structure, label: FormLabel) -> TwoForm<R> {
        TwoForm::new(
            SkewMatrix::antisymmetrize(&self.g * self.structure(s)),
            label,
        )
    }

    pub fn omega_i(&self) -> TwoForm<R> {
        self.structure_form(Structure::I, FormLabel::OmegaI)
    }

    pub fn omega_j(&self) -> TwoForm<R> {
        self.structure_form(Structure::J, FormLabel::OmegaJ)
    }

    pub fn omega_k(&self) -> TwoForm<R> {
        self.structure_form(Structure::K, FormLabel::OmegaK)
    }

    /// `Ω = ω_J + √−1·ω_K`.
    pub fn holomorphic_symplectic_form(&self) -> ComplexTwoForm<R> {
        ComplexTwoForm {
            re: self.omega_j(),
            im: self.omega_k(),
        }
    }

    /// Same `I` and `g`, with `J' = aJ + bK`, `K' = −bJ + aK` for
    /// `λ = a + b√−1`. The new holomorphic symplectic form is `λ̄·Ω`.
    pub fn rotate(&self, lambda: Complex<R>) -> Result<Self> {
        let modulus = lambda.norm();
        if (modulus - R::one()).abs() > R::tol(UNIT_TOL) {
            return Err(Error::NotUnit(modulus.to_f64().unwrap_or(f64::NAN)));
        }
        let (a, b) = (lambda.re, lambda.im);
        let j = &self.j.scale(a) + &self.k.scale(b);
        let k = &self.k.scale(a) - &self.j.scale(b);
        Ok(Self {
            n: self.n,
            i: self.i.clone(),
            j,
            k,
            g: self.g.clone(),
        })
    }

    /// Largest entrywise difference of the four defining matrices.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        [
            self.i.max_abs_diff(&other.i),
            self.j.max_abs_diff(&other.j),
            self.k.max_abs_diff(&other.k),
            self.g.max_abs_diff(&other.g),
        ]
        .into_iter()
        .fold(R::zero(), R::max)
    }
}

/// An induced complex structure `L = aI + bJ + cK`, `a² + b² + c² = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedStructure<R> {
    pub coeffs: [R; 3],
    pub matrix: Matrix<R>,
}

/// Outcome of [`recover_structure`]: either the unique quaternionic triple
/// determined by `(g, Ω, I)`, or the identity it violates.
#[derive(Clone, Debug, PartialEq)]
pub enum Recovery<R> {
    Recovered(QuaternionicSpace<R>),
    NotQuaternionic(StructureViolation),
}

impl<R> Recovery<R> {
    pub fn space(&self) -> Option<&QuaternionicSpace<R>> {
        match self {
            Recovery::Recovered(s) => Some(s),
            Recovery::NotQuaternionic(_) => None,
        }
    }
}

/// Solves `ω_J = gJ`, `ω_K = gK` for `J, K` and checks the result.
///
/// Fails with an error only on malformed input (non-positive metric,
/// inconsistent sizes); a triple that is simply not quaternionic comes
/// back as [`Recovery::NotQuaternionic`].
pub fn recover_structure<R: Real>(
    g: &Matrix<R>,
    omega: &ComplexTwoForm<R>,
    i: &Matrix<R>,
) -> Result<Recovery<R>> {
    let dim = g.rows();
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    if omega.dim() != dim || i.rows() != dim || i.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: omega.dim(),
        });
    }
    if !is_positive_definite(g, R::tol(RECOVERED_TOL)) {
        return Err(Error::MetricNotPositive);
    }
    let g_inv = g.inverse()?;
    let j = &g_inv * omega.re.matrix.matrix();
    let k = &g_inv * omega.im.matrix.matrix();
    Ok(
        match check_quaternionic(i, &j, &k, g, R::tol(RECOVERED_TOL)) {
            Ok(()) => Recovery::Recovered(QuaternionicSpace::from_parts_unchecked(
                i.clone(),
                j,
                k,
                g.clone(),
            )),
            Err(v) => Recovery::NotQuaternionic(v),
        },
    )
}
