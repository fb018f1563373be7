//! Pfaffians of skew-symmetric matrices.
//!
//! [`pfaffian`] reduces the matrix two rows at a time with a skew
//! congruence (Parlett-Reid style) and partial pivoting; every row/column
//! interchange flips the tracked sign. [`pfaffian_oracle`] is the
//! first-row expansion, exponential in the dimension and kept as ground
//! truth for small matrices.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::SkewMatrix;
use crate::scalar::{factorial, Field};

/// Largest dimension accepted by [`pfaffian_oracle`].
pub const PFAFFIAN_ORACLE_CUTOFF: usize = 12;

/// Largest ambient dimension for full wedge-expansion cross-checks.
pub const WEDGE_ORACLE_CUTOFF: usize = 10;

/// Signature shared by the Pfaffian implementations, so callers can swap
/// the kernel (e.g. the property harness runs with a mutated one).
pub type PfaffianKernel<T> = fn(&SkewMatrix<T>) -> Result<T>;

pub fn pfaffian<T: Field>(a: &SkewMatrix<T>) -> Result<T> {
    let n = a.dim();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let mut m = a.matrix().clone();
    let mut pf = T::one();
    for k in (0..n).step_by(2) {
        // Pivot: largest |m[k][j]| over j > k moves to column k + 1.
        let (p, best) = (k + 1..n).map(|j| (j, m[(k, j)].modulus())).fold(
            (k + 1, T::Real::zero()),
            |acc, cur| if cur.1 > acc.1 { cur } else { acc },
        );
        if best == T::Real::zero() {
            return Ok(T::zero());
        }
        if p != k + 1 {
            for i in 0..n {
                let t = m[(i, k + 1)].clone();
                m[(i, k + 1)] = m[(i, p)].clone();
                m[(i, p)] = t;
            }
            for j in 0..n {
                let t = m[(k + 1, j)].clone();
                m[(k + 1, j)] = m[(p, j)].clone();
                m[(p, j)] = t;
            }
            pf = -pf;
        }
        let pivot = m[(k, k + 1)].clone();
        pf *= pivot.clone();
        // row_i -= tau_i row_{k+1}, col_i -= tau_i col_{k+1}; determinant one,
        // and it clears row k beyond k + 1.
        let tau: Vec<T> = (k + 2..n)
            .map(|i| m[(k, i)].clone() / pivot.clone())
            .collect();
        for (ii, i) in (k + 2..n).enumerate() {
            for (jj, j) in (k + 2..n).enumerate().skip(ii + 1) {
                let upd = m[(i, j)].clone() - tau[ii].clone() * m[(k + 1, j)].clone()
                    + tau[jj].clone() * m[(k + 1, i)].clone();
                m[(j, i)] = -upd.clone();
                m[(i, j)] = upd;
            }
        }
    }
    Ok(pf)
}

/// Pfaffian by recursive expansion along the first row.
pub fn pfaffian_oracle<T: Field>(a: &SkewMatrix<T>) -> Result<T> {
    let n = a.dim();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n > PFAFFIAN_ORACLE_CUTOFF {
        return Err(Error::AboveOracleCutoff {
            dim: n,
            cutoff: PFAFFIAN_ORACLE_CUTOFF,
        });
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(expand(a, &idx))
}

fn expand<T: Field>(a: &SkewMatrix<T>, idx: &[usize]) -> T {
    if idx.is_empty() {
        return T::one();
    }
    let first = idx[0];
    let mut total = T::zero();
    for pos in 1..idx.len() {
        let entry = a.get(first, idx[pos]);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .copied()
            .filter(|&i| i != idx[pos])
            .collect();
        let term = entry * expand(a, &rest);
        if pos % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `c` with `η^d = c · e₁∧…∧e_{2d}`, i.e. `d! · Pf(A)`.
pub fn top_coefficient<T: Field>(a: &SkewMatrix<T>, d: usize) -> Result<T> {
    top_coefficient_with(a, d, pfaffian)
}

pub fn top_coefficient_with<T: Field>(
    a: &SkewMatrix<T>,
    d: usize,
    kernel: PfaffianKernel<T>,
) -> Result<T> {
    if a.dim() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            found: a.dim(),
        });
    }
    Ok(kernel(a)? * T::from_real(factorial(d)))
}
