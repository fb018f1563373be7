use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::matrix::Matrix;
use crate::scalar::{Field, Real};

/// Relative asymmetry above which input is rejected instead of symmetrized.
pub const SKEW_REJECTION: f64 = 1e-8;

/// Coordinate matrix `A` of a constant 2-form `η(x, y) = xᵀ A y`.
///
/// Always exactly antisymmetric: input is replaced by `(A - Aᵀ)/2` on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<T> {
    entries: Matrix<T>,
}

impl<T: Field> SkewMatrix<T> {
    /// Symmetrizes `entries`, rejecting input whose symmetric part is larger
    /// than rounding noise.
    pub fn new(entries: Matrix<T>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.rows(),
                cols: entries.cols(),
            });
        }
        let scale = entries.max_abs();
        let sym = (&entries + &entries.transpose()).max_abs();
        let threshold = T::Real::c(SKEW_REJECTION) * scale;
        if sym > threshold {
            return Err(Error::NotSkew {
                asymmetry: sym.to_f64().unwrap_or(f64::NAN),
                threshold: threshold.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::antisymmetrize(entries))
    }

    /// `(A - Aᵀ)/2` without the rejection check. Used for products such as
    /// `BᵀAB` that are skew up to rounding by construction.
    pub fn antisymmetrize(entries: Matrix<T>) -> Self {
        assert!(entries.is_square(), "antisymmetrize needs a square matrix");
        let half = T::from_real(T::Real::c(0.5));
        let n = entries.rows();
        let m = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                T::zero()
            } else {
                (entries[(i, j)].clone() - entries[(j, i)].clone()) * half.clone()
            }
        });
        Self { entries: m }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: Matrix::zeros(dim, dim),
        }
    }

    /// Builds the matrix from its strictly upper triangle.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                m[(j, i)] = -v.clone();
                m[(i, j)] = v;
            }
        }
        Self { entries: m }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.entries
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[(i, j)].clone()
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            entries: self.entries.scale(s),
        }
    }

    /// Pullback `Bᵀ A B` along the linear map with matrix `b`.
    pub fn congruence(&self, b: &Matrix<T>) -> Result<Self> {
        if b.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: b.rows(),
            });
        }
        Ok(Self::antisymmetrize(b.congruence(&self.entries)))
    }

    /// `Σ_{i<j} A[i][j] eᵢ∧eⱼ`.
    pub fn to_multivector(&self) -> Multivector<T> {
        let n = self.dim();
        let mut mv = Multivector::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                mv.add_term(vec![i, j], self.get(i, j));
            }
        }
        mv
    }
}

impl<R: Real> SkewMatrix<R> {
    /// `η(x, y) = xᵀ A y`.
    pub fn eval(&self, x: &[R], y: &[R]) -> R {
        self.entries.bilinear(x, y)
    }
}
