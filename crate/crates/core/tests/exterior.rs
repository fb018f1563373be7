use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wirtinger::exterior::{
    form_power, pfaffian, pfaffian_oracle, top_coefficient, Multivector, SkewMatrix,
};
use wirtinger::matrix::Matrix;
use wirtinger::properties::population::{random_matrix, random_skew};

/// Sum over perfect matchings of {0..n}, each with its crossing sign.
fn matching_pfaffian(a: &Matrix<f64>) -> f64 {
    fn go(a: &Matrix<f64>, left: &[usize]) -> f64 {
        if left.is_empty() {
            return 1.0;
        }
        let i = left[0];
        let mut total = 0.0;
        for (pos, &j) in left.iter().enumerate().skip(1) {
            let rest: Vec<usize> = left.iter().copied().filter(|&x| x != i && x != j).collect();
            let sign = if pos % 2 == 1 { 1.0 } else { -1.0 };
            total += sign * a[(i, j)] * go(a, &rest);
        }
        total
    }
    go(a, &(0..a.rows()).collect::<Vec<_>>())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn fast_pfaffian_matches_matching_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dim in (2..=10).step_by(2) {
        for _ in 0..20 {
            let a = random_skew::<f64>(dim, &mut rng);
            let want = matching_pfaffian(a.matrix());
            assert!(rel(pfaffian(&a).unwrap(), want) < 1e-10, "dim {dim}");
            assert!(rel(pfaffian_oracle(&a).unwrap(), want) < 1e-12, "dim {dim}");
        }
    }
}

#[test]
fn block_diagonal_pfaffian_is_product() {
    let blocks = [2.0_f64, -3.0, 0.5];
    let a = SkewMatrix::from_upper(6, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            blocks[i / 2]
        } else {
            0.0
        }
    });
    assert!((pfaffian(&a).unwrap() - (-3.0)).abs() < 1e-15);
}

#[test]
fn pfaffian_squared_is_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for dim in (2..=12).step_by(2) {
        let a = random_skew::<f64>(dim, &mut rng);
        let pf = pfaffian(&a).unwrap();
        assert!(rel(pf * pf, a.matrix().det().unwrap()) < 1e-9);
    }
}

#[test]
fn congruence_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for dim in [4, 6, 8] {
        let a = random_skew::<f64>(dim, &mut rng);
        let b = random_matrix::<f64>(dim, dim, &mut rng);
        let lhs = pfaffian(&a.congruence(&b).unwrap()).unwrap();
        let rhs = b.det().unwrap() * pfaffian(&a).unwrap();
        assert!(rel(lhs, rhs) < 1e-9);
    }
}

#[test]
fn odd_dimension_rejected() {
    let a = SkewMatrix::<f64>::zeros(3);
    assert!(pfaffian(&a).is_err());
}

#[test]
fn complex_pfaffian_of_conjugate_is_conjugate() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let re = random_skew::<f64>(6, &mut rng);
    let im = random_skew::<f64>(6, &mut rng);
    let z = SkewMatrix::from_upper(6, |i, j| Complex::new(re.get(i, j), im.get(i, j)));
    let zbar = SkewMatrix::from_upper(6, |i, j| Complex::new(re.get(i, j), -im.get(i, j)));
    let (p, q) = (pfaffian(&z).unwrap(), pfaffian(&zbar).unwrap());
    assert!((p.conj() - q).norm() < 1e-12 * p.norm());
    assert!((p - pfaffian_oracle(&z).unwrap()).norm() < 1e-10 * p.norm());
}

#[test]
fn top_power_coefficient_matches_pfaffian() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for dim in [2, 4, 6, 8] {
        let a = random_skew::<f64>(dim, &mut rng);
        let top = form_power(&a, dim / 2).top_coefficient();
        assert!(rel(top, top_coefficient(&a, dim / 2).unwrap()) < 1e-10);
    }
}

fn small_vector() -> impl Strategy<Value = Vec<(Vec<usize>, f64)>> {
    prop::collection::vec((prop::collection::vec(0usize..5, 0..4), -3.0f64..3.0), 0..6)
}

fn build(terms: &[(Vec<usize>, f64)]) -> Multivector<f64> {
    let mut mv = Multivector::zero(5);
    for (idx, c) in terms {
        if let Ok(b) = Multivector::blade(5, idx, *c) {
            mv = mv.add(&b).unwrap();
        }
    }
    mv
}

proptest! {
    #[test]
    fn wedge_is_associative(a in small_vector(), b in small_vector(), c in small_vector()) {
        let (a, b, c) = (build(&a), build(&b), build(&c));
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-9);
    }

    #[test]
    fn one_forms_anticommute(x in prop::collection::vec(-2.0f64..2.0, 5), y in prop::collection::vec(-2.0f64..2.0, 5)) {
        let one = |v: &[f64]| {
            let terms: Vec<(Vec<usize>, f64)> = v.iter().enumerate().map(|(i, c)| (vec![i], *c)).collect();
            build(&terms)
        };
        let (u, v) = (one(&x), one(&y));
        let sum = u.wedge(&v).unwrap().add(&v.wedge(&u).unwrap()).unwrap();
        prop_assert!(sum.max_abs_diff(&Multivector::zero(5)).unwrap() < 1e-12);
        prop_assert!(u.wedge(&u).unwrap().max_abs_diff(&Multivector::zero(5)).unwrap() < 1e-12);
    }

    #[test]
    fn pullback_of_top_form_is_determinant(entries in prop::collection::vec(-2.0f64..2.0, 16)) {
        let m = Matrix::from_fn(4, 4, |i, j| entries[4 * i + j]);
        let vol = Multivector::blade(4, &[0, 1, 2, 3], 1.0).unwrap();
        let pulled = vol.pullback(&m).unwrap();
        prop_assert!((pulled.top_coefficient() - m.det().unwrap()).abs() < 1e-9);
    }
}
