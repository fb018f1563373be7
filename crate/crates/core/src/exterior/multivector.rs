use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::SkewMatrix;
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Element of `Λ*(ℝ^m)` (or its complexification) in canonical sparse form.
///
/// Keys are strictly increasing index tuples; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<T> {
    dim: usize,
    terms: BTreeMap<Vec<usize>, T>,
}

/// Sorts `indices` in place and returns the permutation sign, or `None` if
/// an index repeats.
fn sort_with_sign(indices: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// Sign of concatenating two sorted blades, `None` if they share an index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut odd = false;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a.len() - i elements of a.
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, odd))
}

impl<T: Field> Multivector<T> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: T) -> Self {
        let mut mv = Self::zero(dim);
        mv.add_term(Vec::new(), c);
        mv
    }

    /// `coeff · e_{i₁}∧…∧e_{i_k}` for indices in any order.
    pub fn blade(dim: usize, indices: &[usize], coeff: T) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad + 1,
            });
        }
        let mut mv = Self::zero(dim);
        mv.add_term(indices.to_vec(), coeff);
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &T)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Adds `coeff · e_indices`, normalizing the index order and sign.
    pub fn add_term(&mut self, mut indices: Vec<usize>, coeff: T) {
        let Some(odd) = sort_with_sign(&mut indices) else {
            return;
        };
        let coeff = if odd { -coeff } else { coeff };
        self.accumulate(indices, coeff);
    }

    fn accumulate(&mut self, key: Vec<usize>, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    /// Coefficient of the blade with the given (strictly increasing) indices.
    pub fn coefficient(&self, indices: &[usize]) -> T {
        self.terms.get(indices).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of `e₁∧…∧e_m`.
    pub fn top_coefficient(&self) -> T {
        self.coefficient(&(0..self.dim).collect::<Vec<_>>())
    }

    pub fn grade_part(&self, k: usize) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.len() == k)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), v.clone() * s.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-T::one()))
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Multivector<U> {
        let mut out = Multivector::zero(self.dim);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), f(v));
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                if let Some((key, odd)) = merge_sign(ka, kb) {
                    let c = va.clone() * vb.clone();
                    out.accumulate(key, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `self^k` under the wedge product (`k = 0` gives the scalar 1).
    pub fn power(&self, k: usize) -> Self {
        let mut acc = Self::scalar(self.dim, T::one());
        for _ in 0..k {
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    /// Pullback `(Rᵀ)^* α`: the form `(x₁,…,x_k) ↦ α(R x₁,…,R x_k)`.
    ///
    /// The coefficient on `e_J` is `Σ_I c_I · det R[I, J]`.
    pub fn pullback(&self, map: &Matrix<T>) -> Result<Self> {
        if map.rows() != self.dim || map.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: map.rows(),
            });
        }
        let mut out = Self::zero(self.dim);
        for (rows, c) in &self.terms {
            for cols in combinations(self.dim, rows.len()) {
                let minor = Matrix::from_fn(rows.len(), rows.len(), |a, b| {
                    map[(rows[a], cols[b])].clone()
                });
                let det = minor.det()?;
                out.accumulate(cols, c.clone() * det);
            }
        }
        Ok(out)
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T::Real> {
        let diff = self.sub(other)?;
        Ok(diff
            .terms
            .values()
            .map(Field::modulus)
            .fold(T::Real::zero(), |a, b| if b > a { b } else { a }))
    }
}

/// All strictly increasing `k`-tuples of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `η^k` for the constant 2-form with matrix `a`, by repeated wedging.
pub fn form_power<T: Field>(a: &SkewMatrix<T>, k: usize) -> Multivector<T> {
    a.to_multivector().power(k)
}
