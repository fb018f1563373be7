use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::SkewMatrix;
use crate::matrix::Matrix;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormLabel {
    OmegaI,
    OmegaJ,
    OmegaK,
    Other,
}

/// A constant real 2-form, `ω(x, y) = xᵀ A y`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<R> {
    pub matrix: SkewMatrix<R>,
    pub label: FormLabel,
}

impl<R: Real> TwoForm<R> {
    pub fn new(matrix: SkewMatrix<R>, label: FormLabel) -> Self {
        Self { matrix, label }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eval(&self, x: &[R], y: &[R]) -> R {
        self.matrix.eval(x, y)
    }

    /// Pullback along the columns of `basis`.
    pub fn restrict(&self, basis: &Matrix<R>) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.congruence(basis)?,
            label: self.label,
        })
    }

    pub fn scale(&self, s: R) -> Self {
        Self {
            matrix: self.matrix.scale(s),
            label: FormLabel::Other,
        }
    }
}

/// A complex-valued constant 2-form stored as its real and imaginary parts,
/// `Ω = re + √−1·im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTwoForm<R> {
    pub re: TwoForm<R>,
    pub im: TwoForm<R>,
}

impl<R: Real> ComplexTwoForm<R> {
    pub fn new(re: TwoForm<R>, im: TwoForm<R>) -> Result<Self> {
        if re.dim() != im.dim() {
            return Err(Error::DimensionMismatch {
                expected: re.dim(),
                found: im.dim(),
            });
        }
        Ok(Self { re, im })
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    /// `Ω̄ = re − √−1·im`.
    pub fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: TwoForm::new(self.im.matrix.scale(-R::one()), self.im.label),
        }
    }

    /// Complex scalar multiple `c·Ω`.
    pub fn scale(&self, c: Complex<R>) -> Self {
        let (a, b) = (c.re, c.im);
        let re = &self.re.matrix.matrix().scale(a) - &self.im.matrix.matrix().scale(b);
        let im = &self.re.matrix.matrix().scale(b) + &self.im.matrix.matrix().scale(a);
        Self {
            re: TwoForm::new(SkewMatrix::antisymmetrize(re), FormLabel::Other),
            im: TwoForm::new(SkewMatrix::antisymmetrize(im), FormLabel::Other),
        }
    }

    pub fn eval(&self, x: &[R], y: &[R]) -> Complex<R> {
        Complex::new(self.re.eval(x, y), self.im.eval(x, y))
    }

    pub fn restrict(&self, basis: &Matrix<R>) -> Result<Self> {
        Ok(Self {
            re: self.re.restrict(basis)?,
            im: self.im.restrict(basis)?,
        })
    }

    /// The complex skew matrix `re + √−1·im`.
    pub fn complex_matrix(&self) -> SkewMatrix<Complex<R>> {
        let n = self.dim();
        SkewMatrix::antisymmetrize(Matrix::from_fn(n, n, |i, j| {
            Complex::new(self.re.matrix.get(i, j), self.im.matrix.get(i, j))
        }))
    }

    /// Largest entrywise difference over both parts.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        let re = self
            .re
            .matrix
            .matrix()
            .max_abs_diff(other.re.matrix.matrix());
        let im = self
            .im
            .matrix
            .matrix()
            .max_abs_diff(other.im.matrix.matrix());
        re.max(im)
    }
}
