//! Flat complex subtori of a quaternionic space: `I`-complex subspaces with
//! a lattice, their degrees, Wirtinger numbers and trianalyticity.

mod degrees;
pub mod families;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::{pfaffian, SkewMatrix};
use crate::hk::{QuaternionicSpace, TwoForm};
use crate::matrix::{axpy, inner, Matrix};
use crate::scalar::Real;

pub use degrees::{degree_reports, DegreeReport, DegreeStrategy};

/// Tolerance on the `I`-invariance residual of a subvariety basis.
pub const COMPLEX_TOL: f64 = 1e-10;
/// Tolerance on the `J`-invariance residual deciding trianalyticity.
pub const TRIANALYTIC_TOL: f64 = 1e-9;
/// Relative smallest singular value below which a basis counts as dependent.
pub const RANK_TOL: f64 = 1e-10;
/// Tolerance on the residual of `inner ⊆ outer`.
pub const INCLUSION_TOL: f64 = 1e-10;

/// Which frame [`Subvariety::restrict_form`] pulls back along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `g`-orthonormal, carrying the canonical `I`-orientation.
    Orthonormal,
    /// The basis exactly as supplied.
    Raw,
}

/// An `I`-complex subspace `V ⊂ ℝ^{4n}` with a lattice, modelling a flat
/// complex subtorus `X = V/Λ`.
#[derive(Clone, Debug)]
pub struct Subvariety<R> {
    name: String,
    space: Arc<QuaternionicSpace<R>>,
    basis: Matrix<R>,
    lattice: Matrix<R>,
    explicit_lattice: bool,
    /// `g`-orthonormal `(v₁, Iv₁, …, v_d, Iv_d)`, sign-fixed so that
    /// `Pf(Qᵀ ω_I Q) > 0`.
    frame: Matrix<R>,
    /// `v₁, …, v_d`: a `g`-unitary complex frame of `V`.
    complex_frame: Vec<Vec<R>>,
}

impl<R: Real> PartialEq for Subvariety<R> {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && *self.space == *other.space
            && self.basis == other.basis
            && self.lattice == other.lattice
            && self.explicit_lattice == other.explicit_lattice
    }
}

fn g_norm<R: Real>(g: &Matrix<R>, v: &[R]) -> R {
    inner(g, v, v).max(R::zero()).sqrt()
}

/// Removes the `g`-projection of `v` onto the (orthonormal) `frame` twice.
fn orthogonalize<R: Real>(g: &Matrix<R>, frame: &[Vec<R>], v: &mut [R]) {
    for _ in 0..2 {
        for q in frame {
            let c = inner(g, q, v);
            axpy(-c, q, v);
        }
    }
}

fn columns<R: Real>(m: &Matrix<R>) -> Vec<Vec<R>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// `g`-orthonormal basis of the column space (modified Gram-Schmidt with
/// re-orthogonalization).
fn orthonormalize<R: Real>(g: &Matrix<R>, cols: &[Vec<R>]) -> Vec<Vec<R>> {
    let mut out: Vec<Vec<R>> = Vec::with_capacity(cols.len());
    for c in cols {
        let mut v = c.clone();
        orthogonalize(g, &out, &mut v);
        let nrm = g_norm(g, &v);
        if nrm > R::zero() {
            out.push(v.into_iter().map(|x| x / nrm).collect());
        }
    }
    out
}

/// Largest `g`-norm of `x - P x` over the given vectors, where `P` is the
/// `g`-orthogonal projection onto the span of the orthonormal `frame`.
fn projection_residual<R: Real>(g: &Matrix<R>, frame: &[Vec<R>], vectors: &[Vec<R>]) -> R {
    vectors
        .iter()
        .map(|x| {
            let mut r = x.clone();
            for q in frame {
                let c = inner(g, q, x);
                axpy(-c, q, &mut r);
            }
            g_norm(g, &r)
        })
        .fold(R::zero(), R::max)
}

impl<R: Real> Subvariety<R> {
    /// Validates `basis` (columns span `V`) and the optional lattice, whose
    /// columns are the lattice generators in the basis coordinates.
    pub fn new(
        space: Arc<QuaternionicSpace<R>>,
        name: impl Into<String>,
        basis: Matrix<R>,
        lattice: Option<Matrix<R>>,
    ) -> Result<Self> {
        let name = name.into();
        if basis.rows() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: basis.rows(),
            });
        }
        if basis.cols() == 0 {
            return Err(Error::RankDeficient(0.0));
        }
        let sv = basis.singular_values()?;
        let (smin, smax) = (sv[0], sv[sv.len() - 1]);
        if !(smin > R::c(RANK_TOL) * smax) {
            let ratio = if smax > R::zero() {
                smin / smax
            } else {
                R::zero()
            };
            return Err(Error::RankDeficient(ratio.to_f64().unwrap_or(0.0)));
        }
        let real_dim = basis.cols();
        let explicit_lattice = lattice.is_some();
        let lattice = lattice.unwrap_or_else(|| Matrix::identity(real_dim));
        if lattice.rows() != real_dim || lattice.cols() != real_dim {
            return Err(Error::DimensionMismatch {
                expected: real_dim,
                found: lattice.rows(),
            });
        }
        let lsv = lattice.singular_values()?;
        if !(lsv[0] > R::c(RANK_TOL) * lsv[lsv.len() - 1]) {
            return Err(Error::DegenerateLattice);
        }

        let g = space.g();
        let ortho = orthonormalize(g, &columns(&basis));
        let images: Vec<Vec<R>> = ortho.iter().map(|q| space.i().mul_vec(q)).collect();
        let residual = projection_residual(g, &ortho, &images);
        if !(residual <= R::tol(COMPLEX_TOL)) || real_dim % 2 == 1 {
            return Err(Error::NotComplex(residual.to_f64().unwrap_or(f64::NAN)));
        }

        let (frame, complex_frame) = complex_adapted_frame(&space, &ortho)?;
        Ok(Self {
            name,
            space,
            basis,
            lattice,
            explicit_lattice,
            frame,
            complex_frame,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<QuaternionicSpace<R>> {
        &self.space
    }

    pub fn basis(&self) -> &Matrix<R> {
        &self.basis
    }

    pub fn lattice(&self) -> &Matrix<R> {
        &self.lattice
    }

    /// The lattice as supplied, `None` when it defaulted to the identity.
    pub fn explicit_lattice(&self) -> Option<&Matrix<R>> {
        self.explicit_lattice.then_some(&self.lattice)
    }

    /// Same subspace and name with a different lattice.
    pub fn with_lattice(&self, lattice: Matrix<R>) -> Result<Self> {
        Self::new(
            self.space.clone(),
            self.name.clone(),
            self.basis.clone(),
            Some(lattice),
        )
    }

    /// `d = dim_ℂ X`.
    pub fn complex_dim(&self) -> usize {
        self.basis.cols() / 2
    }

    /// The oriented `g`-orthonormal frame `Q`.
    pub fn frame(&self) -> &Matrix<R> {
        &self.frame
    }

    pub fn complex_frame(&self) -> &[Vec<R>] {
        &self.complex_frame
    }

    /// `QᵀAQ` (orthonormal frame) or `BᵀAB` (raw basis).
    pub fn restrict_form(&self, form: &TwoForm<R>, frame: Frame) -> Result<SkewMatrix<R>> {
        if form.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: form.dim(),
            });
        }
        let b = match frame {
            Frame::Orthonormal => &self.frame,
            Frame::Raw => &self.basis,
        };
        form.matrix.congruence(b)
    }

    /// Covolume `√det(Λᵀ (Bᵀ g B) Λ)` of the lattice.
    pub fn volume(&self) -> Result<R> {
        let gram = self.basis.congruence(self.space.g());
        let det = self.lattice.congruence(&gram).det()?;
        if !(det > R::zero()) {
            return Err(Error::DegenerateLattice);
        }
        Ok(det.sqrt())
    }

    /// Largest `g`-distance of `L·q` from `V` over the orthonormal frame.
    pub fn invariance_residual(&self, structure: &Matrix<R>) -> R {
        let frame = columns(&self.frame);
        let images: Vec<Vec<R>> = frame.iter().map(|q| structure.mul_vec(q)).collect();
        projection_residual(self.space.g(), &frame, &images)
    }

    /// `J`-invariance of `V` (with `I`-invariance this gives invariance
    /// under every induced structure).
    pub fn is_trianalytic(&self) -> bool {
        self.invariance_residual(self.space.j()) <= R::tol(TRIANALYTIC_TOL)
    }

    /// Largest distance of `inner`'s orthonormal frame from this subspace.
    pub fn inclusion_residual(&self, inner: &Self) -> R {
        projection_residual(
            self.space.g(),
            &columns(&self.frame),
            &columns(&inner.frame),
        )
    }
}

/// Builds `(v₁, Iv₁, …, v_d, Iv_d)` from an orthonormal basis of an
/// `I`-invariant subspace, choosing each `v` as the candidate with the
/// largest component off the current frame.
fn complex_adapted_frame<R: Real>(
    space: &QuaternionicSpace<R>,
    ortho: &[Vec<R>],
) -> Result<(Matrix<R>, Vec<Vec<R>>)> {
    let g = space.g();
    let d = ortho.len() / 2;
    let mut frame: Vec<Vec<R>> = Vec::with_capacity(2 * d);
    let mut complex = Vec::with_capacity(d);
    for _ in 0..d {
        let (v, nrm) = ortho
            .iter()
            .map(|c| {
                let mut v = c.clone();
                orthogonalize(g, &frame, &mut v);
                let n = g_norm(g, &v);
                (v, n)
            })
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("nonempty basis");
        let v: Vec<R> = v.into_iter().map(|x| x / nrm).collect();
        let mut iv = space.i().mul_vec(&v);
        orthogonalize(g, &frame, &mut iv);
        let inrm = g_norm(g, &iv);
        let iv: Vec<R> = iv.into_iter().map(|x| x / inrm).collect();
        complex.push(v.clone());
        frame.push(v);
        frame.push(iv);
    }
    let mut q = Matrix::from_columns(&frame)?;
    let omega_i = space.omega_i().matrix.congruence(&q)?;
    if pfaffian(&omega_i)? < R::zero() {
        q.swap_columns(0, 1);
    }
    Ok((q, complex))
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use crate::exterior::pfaffian;
    use crate::hk::QuaternionicSpace;
    use rand::SeedableRng;

    fn h(n: usize) -> Arc<QuaternionicSpace<f64>> {
        Arc::new(QuaternionicSpace::standard(n).unwrap())
    }

    #[test]
    fn whole_space_raw_restriction_is_identity_map() {
        let s = h(1);
        let x = Subvariety::new(s.clone(), "M", Matrix::identity(4), None).unwrap();
        let w = s.omega_j();
        assert_eq!(x.restrict_form(&w, Frame::Raw).unwrap(), w.matrix);
    }

    #[test]
    fn omega_i_restriction_is_positive() {
        let s = h(2);
        let x = Subvariety::new(s.clone(), "L", complex_plane_basis(&s), None).unwrap();
        let r = x.restrict_form(&s.omega_i(), Frame::Orthonormal).unwrap();
        assert!((pfaffian(&r).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn omega_j_vanishes_on_complex_plane() {
        let s = h(2);
        let x = Subvariety::new(s.clone(), "P", complex_plane_basis(&s), None).unwrap();
        let r = x.restrict_form(&s.omega_j(), Frame::Orthonormal).unwrap();
        assert_eq!(r.matrix().max_abs(), 0.0);
    }

    #[test]
    fn unit_volume_and_scaling() {
        let s = h(1);
        let x = Subvariety::new(s, "M", Matrix::identity(4), None).unwrap();
        assert!((x.volume().unwrap() - 1.0).abs() < 1e-15);
        let y = x.with_lattice(Matrix::identity(4).scale(1.5)).unwrap();
        assert!((y.volume().unwrap() - 1.5f64.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn non_complex_basis_rejected() {
        let s = h(1);
        let b =
            Matrix::from_columns(&[vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0]]).unwrap();
        assert!(matches!(
            Subvariety::new(s, "bad", b, None),
            Err(Error::NotComplex(_))
        ));
    }

    #[test]
    fn dependent_basis_rejected() {
        let s = h(1);
        let b =
            Matrix::from_columns(&[vec![1.0, 0.0, 0.0, 0.0], vec![2.0, 0.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(
            Subvariety::new(s, "dep", b, None),
            Err(Error::RankDeficient(_))
        ));
    }

    #[test]
    fn degenerate_lattice_rejected() {
        let s = h(1);
        let mut l = Matrix::identity(4);
        l[(3, 3)] = 0.0;
        assert_eq!(
            Subvariety::new(s, "M", Matrix::identity(4), Some(l)).unwrap_err(),
            Error::DegenerateLattice
        );
    }

    #[test]
    fn trianalytic_detection() {
        let s = h(2);
        let line = Subvariety::new(s.clone(), "L", quaternionic_line_basis(&s, 0), None).unwrap();
        let plane = Subvariety::new(s.clone(), "P", complex_plane_basis(&s), None).unwrap();
        let vt = Subvariety::new(
            s.clone(),
            "V",
            interpolating_basis(&s, std::f64::consts::FRAC_PI_4),
            None,
        )
        .unwrap();
        assert!(line.is_trianalytic());
        assert!(!plane.is_trianalytic());
        assert!(!vt.is_trianalytic());
    }

    #[test]
    fn frame_is_orthonormal() {
        let s = h(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let x =
            Subvariety::new(s.clone(), "X", random_complex_basis(&s, 2, &mut rng), None).unwrap();
        let gram = x.frame().congruence(s.g());
        assert!(gram.max_abs_diff(&Matrix::identity(4)) < 1e-13);
    }
}
