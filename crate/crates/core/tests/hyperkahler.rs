use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wirtinger::hk::{recover_structure, QuaternionicSpace, Recovery, Structure};
use wirtinger::matrix::Matrix;
use wirtinger::properties::population::{random_sphere_point, random_unit};
use wirtinger::{QuaternionicSpaceF32, QuaternionicSpaceF64};

/// Hamilton product of (w, x, y, z) quaternions.
fn qmul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

#[test]
fn structures_are_left_multiplication() {
    let s = QuaternionicSpaceF64::standard(2).unwrap();
    let v = [0.3, -1.2, 0.7, 2.0, -0.4, 0.9, 1.1, -0.6];
    let units = [
        (Structure::I, [0.0, 1.0, 0.0, 0.0]),
        (Structure::J, [0.0, 0.0, 1.0, 0.0]),
        (Structure::K, [0.0, 0.0, 0.0, 1.0]),
    ];
    for (st, unit) in units {
        let got = s.structure(st).mul_vec(&v);
        for c in 0..2 {
            let q = [v[4 * c], v[4 * c + 1], v[4 * c + 2], v[4 * c + 3]];
            let want = qmul(unit, q);
            for t in 0..4 {
                assert!((got[4 * c + t] - want[t]).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn omega_is_i_linear_in_first_argument() {
    let s = QuaternionicSpaceF64::standard(2).unwrap();
    let omega = s.holomorphic_symplectic_form();
    let x = [1.0, 0.5, -0.3, 0.2, 0.0, 1.5, -0.7, 0.4];
    let y = [-0.2, 0.1, 0.9, 1.3, 0.6, -0.8, 0.3, 0.0];
    let ix = s.i().mul_vec(&x);
    let lhs = omega.eval(&ix, &y);
    let rhs = Complex::new(0.0, 1.0) * omega.eval(&x, &y);
    assert!((lhs - rhs).norm() < 1e-14);
}

#[test]
fn omega_wedge_conjugate_is_sum_of_squares() {
    let s = QuaternionicSpaceF64::standard(1).unwrap();
    let omega = s.holomorphic_symplectic_form();
    let big = omega.complex_matrix().to_multivector();
    let bar = omega.conjugate().complex_matrix().to_multivector();
    let lhs = big.wedge(&bar).unwrap();
    let j = s.omega_j().matrix.to_multivector();
    let k = s.omega_k().matrix.to_multivector();
    let rhs = j.wedge(&j).unwrap().add(&k.wedge(&k).unwrap()).unwrap();
    let rhs = rhs.map(|c| Complex::new(*c, 0.0));
    assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-14);
}

#[test]
fn rotation_preserves_identities_and_rotates_omega() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let s = QuaternionicSpaceF64::standard(2).unwrap();
    for _ in 0..20 {
        let l: Complex<f64> = random_unit(&mut rng);
        let r = s.rotate(l).unwrap();
        r.verify(1e-12).unwrap();
        let want = s.holomorphic_symplectic_form().scale(l.conj());
        assert!(r.holomorphic_symplectic_form().max_abs_diff(&want) < 1e-14);
    }
    assert!(s.rotate(Complex::new(2.0, 0.0)).is_err());
}

#[test]
fn recovery_round_trips_the_standard_structure() {
    let s = QuaternionicSpaceF64::standard(2).unwrap();
    match recover_structure(s.g(), &s.holomorphic_symplectic_form(), s.i()).unwrap() {
        Recovery::Recovered(h) => assert!(h.max_abs_diff(&s) < 1e-14),
        Recovery::NotQuaternionic(v) => panic!("{v}"),
    }
}

#[test]
fn recovery_reports_a_scaled_form() {
    let s = QuaternionicSpaceF64::standard(1).unwrap();
    let omega = s
        .holomorphic_symplectic_form()
        .scale(Complex::new(0.5, 0.0));
    assert!(matches!(
        recover_structure(s.g(), &omega, s.i()).unwrap(),
        Recovery::NotQuaternionic(_)
    ));
}

#[test]
fn induced_structures_are_complex_structures() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let s = QuaternionicSpaceF64::standard(2).unwrap();
    let id = Matrix::identity(8);
    for _ in 0..20 {
        let l = s.induced_structure(random_sphere_point(&mut rng)).unwrap();
        assert!((&(&l.matrix * &l.matrix) + &id).max_abs() < 1e-12);
    }
}

#[test]
fn explicit_structures_are_validated() {
    let s = QuaternionicSpaceF64::standard(1).unwrap();
    assert!(
        QuaternionicSpace::new(s.i().clone(), s.k().clone(), s.j().clone(), s.g().clone()).is_err()
    );
    assert!(
        QuaternionicSpace::new(s.i().clone(), s.j().clone(), s.k().clone(), s.g().clone()).is_ok()
    );
}

#[test]
fn single_precision_space() {
    let s = QuaternionicSpaceF32::standard(2).unwrap();
    s.verify(1e-6).unwrap();
    let r = s.rotate(Complex::from_polar(1.0, 0.3)).unwrap();
    r.verify(1e-5).unwrap();
}
