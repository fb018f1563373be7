use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wirtinger::exterior::{pfaffian, PfaffianKernel, SkewMatrix};
use wirtinger::hk::QuaternionicSpace;
use wirtinger::immersion::generate_chain_suite;
use wirtinger::properties::population::{random_unimodular, random_unit};
use wirtinger::properties::{recheck, run_properties_with, PropertyConfig};
use wirtinger::scene::*;
use wirtinger::subvariety::families::random_complex_basis;
use wirtinger::subvariety::{DegreeStrategy, Subvariety};

fn random_scene(seed: u64, n: usize, count: usize, rotate: bool) -> Scene<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut space = QuaternionicSpace::standard(n).unwrap();
    if rotate {
        space = space.rotate(random_unit(&mut rng)).unwrap();
    }
    let space = Arc::new(space);
    let xs: Vec<Subvariety<f64>> = (0..count)
        .map(|i| {
            let basis = random_complex_basis(&space, 2, &mut rng);
            let lattice = (i % 2 == 1).then(|| random_unimodular(4, &mut rng));
            Subvariety::new(space.clone(), format!("s{i}"), basis, lattice).unwrap()
        })
        .collect();
    let options = SceneOptions {
        seed,
        tolerance: 1e-9,
        strategy: DegreeStrategy::ComplexPfaffian,
    };
    Scene::from_parts(xs, vec![], options).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parse_inverts_serialize(seed in 0u64..1000, n in 1usize..=3, count in 1usize..4, rotate: bool) {
        let scene = random_scene(seed, n, count, rotate);
        let text = serialize_scene(&scene);
        let back = parse_scene::<f64>(&text).unwrap();
        prop_assert_eq!(&back, &scene);
        prop_assert_eq!(serialize_scene(&back), text);
    }
}

#[test]
fn generated_chain_scenes_round_trip() {
    for c in generate_chain_suite::<f64>(9, 8) {
        let members = c.members.clone();
        let chain = vec![(0..members.len()).collect()];
        let scene = Scene::from_parts(members, chain, SceneOptions::default()).unwrap();
        let back = parse_scene::<f64>(&serialize_scene(&scene)).unwrap();
        assert_eq!(back, scene);
        let a = run_scene(&scene, false).unwrap().to_json();
        let b = run_scene(&back, false).unwrap().to_json();
        assert_eq!(a, b);
    }
}

#[test]
fn every_entry_appears_once_in_the_report() {
    let scene = random_scene(5, 3, 4, true);
    let report = run_scene(&scene, true).unwrap();
    let names: Vec<&str> = report
        .subvarieties
        .iter()
        .map(|r| r.name.as_str())
        .collect();
    assert_eq!(names, ["s0", "s1", "s2", "s3"]);
    assert!(report.passed(), "{:?}", report.violations);
}

#[test]
fn rotated_structure_keeps_w() {
    let rotated = random_scene(8, 2, 3, true);
    let plain = Arc::new(QuaternionicSpace::standard(2).unwrap());
    let report = run_scene(&rotated, false).unwrap();
    for (x, row) in rotated.subvarieties.iter().zip(&report.subvarieties) {
        let y = Subvariety::new(plain.clone(), x.name(), x.basis().clone(), None).unwrap();
        let w = y.wirtinger_number().unwrap().wirtinger;
        assert!((w - row.degrees.wirtinger).abs() < 1e-9);
    }
}

#[test]
fn table_rounds_to_six_digits() {
    let text = r#"{"space": {"n": 2, "structure": "standard"},
        "subvarieties": [{"name": "V", "basis": [[1,0,0,0],[0,1,0,0],[0,0,0.7071067811865476,0],[0,0,0,0.7071067811865476],
                                                [0,0,0.7071067811865476,0],[0,0,0,0.7071067811865476],[0,0,0,0],[0,0,0,0]]}]}"#;
    let scene = parse_scene::<f64>(text).unwrap();
    let report = run_scene(&scene, false).unwrap();
    let table = render_table(&report);
    assert!(table.contains("0.707107"), "{table}");
    assert!(report.to_json().contains("0.7071067811865"));
}

fn negated(a: &SkewMatrix<f64>) -> wirtinger::Result<f64> {
    pfaffian(a).map(|p| -p)
}

#[test]
fn mutation_counterexample_reparses_and_reproduces() {
    let cfg = PropertyConfig {
        pfaffian: negated as PfaffianKernel<f64>,
    };
    let report = run_properties_with(7, 20, &cfg);
    let failing = report.get("wirtinger_inequality").unwrap();
    assert!(failing.failures > 0);
    let dump = failing.counterexample.as_ref().unwrap();
    let text = serde_json::to_string_pretty(dump.scene.as_ref().unwrap()).unwrap();
    for _ in 0..2 {
        let scene = parse_scene::<f64>(&text).unwrap();
        let results = recheck("wirtinger_inequality", &scene, &cfg).unwrap();
        assert_eq!(results[0].as_ref().unwrap_err(), &dump.detail);
    }
}

#[test]
fn lattice_round_trip_is_exact() {
    let text = r#"{"space": {"n": 1, "structure": "standard"},
        "subvarieties": [{"name": "T", "basis": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
                          "lattice": [[1,0.1,0,0],[0,1,0,0],[0,0,3,0],[0,0,0,1e-3]]}],
        "options": {"seed": 3, "tolerance": 1e-7, "strategy": "oracle"}}"#;
    let scene = parse_scene::<f64>(text).unwrap();
    assert_eq!(scene.options.strategy, DegreeStrategy::Oracle);
    let again = parse_scene::<f64>(&serialize_scene(&scene)).unwrap();
    assert_eq!(again, scene);
    let report = run_scene(&again, false).unwrap();
    assert!((report.subvarieties[0].degrees.volume - 3e-3).abs() < 1e-15);
}
