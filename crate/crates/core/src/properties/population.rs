//! Seeded random inputs for the property harness and the acceptance suite.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::exterior::SkewMatrix;
use crate::hk::QuaternionicSpace;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::subvariety::families::{
    quaternionic_span, random_complex_basis, random_quaternionic_frame,
};
use crate::subvariety::Subvariety;

pub fn gaussian<R: Real>(rng: &mut impl Rng) -> R {
    R::c(rng.sample::<f64, _>(StandardNormal))
}

pub fn random_matrix<R: Real>(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix<R> {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_skew<R: Real>(dim: usize, rng: &mut impl Rng) -> SkewMatrix<R> {
    SkewMatrix::from_upper(dim, |_, _| gaussian(rng))
}

/// Uniform on the unit circle.
pub fn random_unit<R: Real>(rng: &mut impl Rng) -> Complex<R> {
    Complex::from_polar(R::one(), R::c(rng.random_range(0.0..std::f64::consts::TAU)))
}

/// Uniform on the unit sphere of `(a, b, c)`.
pub fn random_sphere_point<R: Real>(rng: &mut impl Rng) -> [R; 3] {
    loop {
        let v: [R; 3] = [gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = v.iter().map(|x| *x * *x).sum::<R>().sqrt();
        if n > R::c(1e-3) {
            return v.map(|x| x / n);
        }
    }
}

/// Random `I`-complex subspace of complex dimension `d` in `ℍⁿ`.
pub fn random_complex_subvariety<R: Real>(
    n: usize,
    d: usize,
    name: String,
    rng: &mut impl Rng,
) -> Subvariety<R> {
    let space = Arc::new(QuaternionicSpace::standard(n).expect("n > 0"));
    loop {
        let basis = random_complex_basis(&space, d, rng);
        if let Ok(x) = Subvariety::new(space.clone(), name.clone(), basis, None) {
            return x;
        }
    }
}

/// Random quaternionic subspace `ℍw₁ ⊕ … ⊕ ℍw_m` of `ℍⁿ`.
pub fn random_quaternionic_subvariety<R: Real>(
    n: usize,
    m: usize,
    name: String,
    rng: &mut impl Rng,
) -> Subvariety<R> {
    let space = Arc::new(QuaternionicSpace::standard(n).expect("n > 0"));
    let w = random_quaternionic_frame(&space, rng);
    Subvariety::new(
        space.clone(),
        name,
        quaternionic_span(&space, &w[..m]),
        None,
    )
    .expect("quaternionic span")
}

/// Mixed population: one in five subspaces quaternionic, one in five of
/// complex dimension 4 in `ℍ³`, the rest complex planes in `ℍ²` or `ℍ³`.
pub fn mixed_population<R: Real>(count: usize, rng: &mut impl Rng) -> Vec<Subvariety<R>> {
    (0..count)
        .map(|i| {
            let name = format!("x{i}");
            match i % 5 {
                0 => {
                    let n = rng.random_range(1..=3);
                    let m = rng.random_range(1..=n);
                    random_quaternionic_subvariety(n, m, name, rng)
                }
                1 => random_complex_subvariety(3, 4, name, rng),
                _ => {
                    let n = rng.random_range(2..=3);
                    random_complex_subvariety(n, 2, name, rng)
                }
            }
        })
        .collect()
}

/// Integer unimodular `dim × dim` matrix: a product of elementary shears.
pub fn random_unimodular<R: Real>(dim: usize, rng: &mut impl Rng) -> Matrix<R> {
    let mut m = Matrix::identity(dim);
    for _ in 0..2 * dim {
        let (a, b) = (rng.random_range(0..dim), rng.random_range(0..dim));
        if a == b {
            continue;
        }
        let c = R::c(rng.random_range(-2..=2) as f64);
        for r in 0..dim {
            let v = m[(r, b)];
            m[(r, a)] += c * v;
        }
    }
    m
}
