//! Constructions of test subspaces: quaternionic lines, the complex plane
//! `span{(1,0),(i,0),(0,1),(0,i)} ⊂ ℍ²`, the interpolating family `V_θ`,
//! random `I`-complex subspaces and random quaternionic frames.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::hk::QuaternionicSpace;
use crate::matrix::{axpy, inner, Matrix};
use crate::scalar::Real;

/// Standard basis vector `e_idx` of `ℝ^dim`.
pub fn unit<R: Real>(dim: usize, idx: usize) -> Vec<R> {
    let mut v = vec![R::zero(); dim];
    v[idx] = R::one();
    v
}

/// The real vector of the quaternion `1` in coordinate `coord`.
pub fn coordinate<R: Real>(space: &QuaternionicSpace<R>, coord: usize) -> Vec<R> {
    unit(space.dim(), 4 * coord)
}

/// Columns `w, Iw, Jw, Kw` for each `w`.
pub fn quaternionic_span<R: Real>(space: &QuaternionicSpace<R>, ws: &[Vec<R>]) -> Matrix<R> {
    let cols: Vec<Vec<R>> = ws
        .iter()
        .flat_map(|w| {
            [
                w.clone(),
                space.i().mul_vec(w),
                space.j().mul_vec(w),
                space.k().mul_vec(w),
            ]
        })
        .collect();
    Matrix::from_columns(&cols).expect("consistent lengths")
}

/// Columns `v, Iv` for each `v`.
pub fn complex_span<R: Real>(space: &QuaternionicSpace<R>, vs: &[Vec<R>]) -> Matrix<R> {
    let cols: Vec<Vec<R>> = vs
        .iter()
        .flat_map(|v| [v.clone(), space.i().mul_vec(v)])
        .collect();
    Matrix::from_columns(&cols).expect("consistent lengths")
}

/// `ℍ·e_coord`.
pub fn quaternionic_line_basis<R: Real>(space: &QuaternionicSpace<R>, coord: usize) -> Matrix<R> {
    quaternionic_span(space, &[coordinate(space, coord)])
}

/// `span{(1,0), (i,0), (0,1), (0,i)}`: `ℂ·e₀ ⊕ ℂ·e₁` inside `ℍ²`.
pub fn complex_plane_basis<R: Real>(space: &QuaternionicSpace<R>) -> Matrix<R> {
    complex_span(space, &[coordinate(space, 0), coordinate(space, 1)])
}

/// `V_θ = span{w_a, I w_a, u, I u}` with `u = cos θ · J w_a + sin θ · w_b`.
pub fn interpolating_span<R: Real>(
    space: &QuaternionicSpace<R>,
    wa: &[R],
    wb: &[R],
    theta: R,
) -> Matrix<R> {
    let mut u = space
        .j()
        .mul_vec(wa)
        .into_iter()
        .map(|x| x * theta.cos())
        .collect::<Vec<_>>();
    axpy(theta.sin(), wb, &mut u);
    complex_span(space, &[wa.to_vec(), u])
}

/// `V_θ` on the first two quaternionic coordinates.
pub fn interpolating_basis<R: Real>(space: &QuaternionicSpace<R>, theta: R) -> Matrix<R> {
    interpolating_span(space, &coordinate(space, 0), &coordinate(space, 1), theta)
}

fn gaussian_vector<R: Real>(dim: usize, rng: &mut impl Rng) -> Vec<R> {
    (0..dim)
        .map(|_| R::c(rng.sample::<f64, _>(StandardNormal)))
        .collect()
}

/// Random `d`-dimensional `I`-complex subspace: the complex span of the
/// first `d` columns of a Gaussian `4n × 2d` matrix.
pub fn random_complex_basis<R: Real>(
    space: &QuaternionicSpace<R>,
    d: usize,
    rng: &mut impl Rng,
) -> Matrix<R> {
    let gauss: Vec<Vec<R>> = (0..2 * d)
        .map(|_| gaussian_vector(space.dim(), rng))
        .collect();
    complex_span(space, &gauss[..d])
}

/// Random `g`-orthonormal quaternionic frame `w₁, …, w_n`: the vectors
/// `w_a, I w_a, J w_a, K w_a` together form a `g`-orthonormal basis.
pub fn random_quaternionic_frame<R: Real>(
    space: &QuaternionicSpace<R>,
    rng: &mut impl Rng,
) -> Vec<Vec<R>> {
    let g = space.g();
    let mut taken: Vec<Vec<R>> = Vec::new();
    let mut frame = Vec::with_capacity(space.n());
    while frame.len() < space.n() {
        let mut w = gaussian_vector(space.dim(), rng);
        for _ in 0..2 {
            for q in &taken {
                let c = inner(g, q, &w);
                axpy(-c, q, &mut w);
            }
        }
        let nrm = inner(g, &w, &w).sqrt();
        if !(nrm > R::c(1e-6)) {
            continue;
        }
        let w: Vec<R> = w.into_iter().map(|x| x / nrm).collect();
        for s in [space.i(), space.j(), space.k()] {
            taken.push(s.mul_vec(&w));
        }
        taken.push(w.clone());
        frame.push(w);
    }
    frame
}
