use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hk::QuaternionicSpace;
use crate::matrix::{axpy, Matrix};
use crate::scalar::Real;
use crate::subvariety::families::{complex_span, quaternionic_span, random_quaternionic_frame};
use crate::subvariety::Subvariety;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// Flag of quaternionic subspaces `ℍw₁ ⊂ ℍw₁⊕ℍw₂ ⊂ …`.
    Trianalytic,
    /// A complex 2-plane inside `V_θ ⊕ V_θ`, then the whole space.
    CertifiedFamily,
    /// `ℍw₁ ⊂ ℍw₁ ⊕ V_θ ⊂ ℍ³`, with `θ = 0` every other time.
    Corollary,
    /// `V_θ₁ ⊂ V_θ₁ ⊕ V_θ₂ ⊂ ℍ⁴` with distinct angles.
    Uncertified,
}

#[derive(Clone, Debug)]
pub struct GeneratedChain<R> {
    pub kind: ChainKind,
    pub members: Vec<Subvariety<R>>,
}

impl<R: Real> PartialEq for GeneratedChain<R> {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.members == other.members
    }
}

impl<R: Real> GeneratedChain<R> {
    pub fn space(&self) -> &Arc<QuaternionicSpace<R>> {
        self.members[0].space()
    }
}

fn angle<R: Real>(rng: &mut ChaCha8Rng) -> R {
    R::c(rng.random_range(0.1..1.4))
}

/// `u = cos θ · J w_a + sin θ · w_b`.
fn tilt<R: Real>(space: &QuaternionicSpace<R>, wa: &[R], wb: &[R], theta: R) -> Vec<R> {
    let mut u: Vec<R> = space
        .j()
        .mul_vec(wa)
        .into_iter()
        .map(|x| x * theta.cos())
        .collect();
    axpy(theta.sin(), wb, &mut u);
    u
}

fn concat<R: Real>(parts: &[Vec<Vec<R>>]) -> Vec<Vec<R>> {
    parts.iter().flatten().cloned().collect()
}

fn member<R: Real>(
    space: &Arc<QuaternionicSpace<R>>,
    idx: usize,
    k: usize,
    basis: Matrix<R>,
) -> Result<Subvariety<R>> {
    Subvariety::new(space.clone(), format!("c{idx}_x{k}"), basis, None)
}

fn build<R: Real>(idx: usize, rng: &mut ChaCha8Rng) -> Result<GeneratedChain<R>> {
    let kind = match idx % 4 {
        0 => ChainKind::Trianalytic,
        1 => ChainKind::CertifiedFamily,
        2 => ChainKind::Corollary,
        _ => ChainKind::Uncertified,
    };
    let n = match kind {
        ChainKind::Trianalytic => rng.random_range(2..=3),
        ChainKind::Corollary => 3,
        ChainKind::CertifiedFamily | ChainKind::Uncertified => 4,
    };
    let space = Arc::new(QuaternionicSpace::<R>::standard(n)?);
    let w = random_quaternionic_frame(&space, rng);
    let whole = Matrix::identity(space.dim());
    let bases: Vec<Matrix<R>> = match kind {
        ChainKind::Trianalytic => (1..=n)
            .map(|m| quaternionic_span(&space, &w[..m]))
            .collect(),
        ChainKind::CertifiedFamily => {
            let theta = angle(rng);
            let outer = vec![
                w[0].clone(),
                tilt(&space, &w[0], &w[1], theta),
                w[2].clone(),
                tilt(&space, &w[2], &w[3], theta),
            ];
            let with_i: Vec<Vec<R>> = outer
                .iter()
                .flat_map(|v| [v.clone(), space.i().mul_vec(v)])
                .collect();
            let inner: Vec<Vec<R>> = (0..2)
                .map(|_| {
                    let mut x = vec![R::zero(); space.dim()];
                    for v in &with_i {
                        axpy(R::c(rng.sample::<f64, _>(StandardNormal)), v, &mut x);
                    }
                    x
                })
                .collect();
            vec![
                complex_span(&space, &inner),
                complex_span(&space, &outer),
                whole,
            ]
        }
        ChainKind::Corollary => {
            let theta = if rng.random_bool(0.5) {
                R::zero()
            } else {
                angle(rng)
            };
            let line = quaternionic_span(&space, &w[..1]);
            let mid = concat(&[
                (0..4).map(|c| line.column(c)).collect(),
                vec![w[1].clone(), space.i().mul_vec(&w[1])],
                {
                    let u = tilt(&space, &w[1], &w[2], theta);
                    vec![space.i().mul_vec(&u), u]
                },
            ]);
            vec![line, Matrix::from_columns(&mid)?, whole]
        }
        ChainKind::Uncertified => {
            let t1: R = angle(rng);
            let t2 = t1
                + R::c(rng.random_range(0.2..0.6))
                    * if t1 > R::c(0.75) { -R::one() } else { R::one() };
            let a = [w[0].clone(), tilt(&space, &w[0], &w[1], t1)];
            let b = [w[2].clone(), tilt(&space, &w[2], &w[3], t2)];
            vec![
                complex_span(&space, &a),
                complex_span(&space, &concat(&[a.to_vec(), b.to_vec()])),
                whole,
            ]
        }
    };
    let members = bases
        .into_iter()
        .enumerate()
        .map(|(k, b)| member(&space, idx, k, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratedChain { kind, members })
}

/// Deterministic population of `count` chains. Chain `idx` draws from its
/// own ChaCha8 stream, so it does not depend on `count`. Every fourth chain
/// is trianalytic.
pub fn generate_chain_suite<R: Real>(seed: u64, count: usize) -> Vec<GeneratedChain<R>> {
    (0..count)
        .into_par_iter()
        .map(|idx| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(idx as u64);
            build(idx, &mut rng).expect("generated chains are well-formed")
        })
        .collect()
}
