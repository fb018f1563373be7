//! Seeded property runs over random instances, with a counterexample dump
//! for the first failing case of each property.

pub mod checks;
pub mod population;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exterior::{pfaffian, PfaffianKernel, SkewMatrix};
use crate::hk::QuaternionicSpace;
use crate::immersion::{generate_chain_suite, verify_chain, ChainReport, CHAIN_TOL};
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::scene::{Scene, SceneDocument, SceneOptions};
use crate::subvariety::Subvariety;
use checks::Check;
use population::*;

/// Kernel substitution for mutation testing.
#[derive(Clone, Copy, Debug)]
pub struct PropertyConfig<R> {
    pub pfaffian: PfaffianKernel<R>,
}

impl<R: Real> Default for PropertyConfig<R> {
    fn default() -> Self {
        Self { pfaffian }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: usize,
    pub detail: String,
    /// A scene reproducing the failing instance, when it has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scene: Option<SceneDocument>,
    /// Inputs that are not part of a scene (matrices, rotation parameters).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub seed: u64,
    pub size: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Names of the properties that can be re-checked from a scene alone.
pub const SUBVARIETY_PROPERTIES: [&str; 6] = [
    "wirtinger_inequality",
    "equality_iff_trianalytic",
    "strategy_agreement",
    "kahler_normalization",
    "certificate_soundness",
    "certificate_scale",
];
pub const CHAIN_PROPERTIES: [&str; 2] = ["chain_monotonicity", "chain_corollary"];

fn subvariety_check<R: Real>(
    name: &str,
    x: &Subvariety<R>,
    cfg: &PropertyConfig<R>,
) -> Option<Check> {
    let k = cfg.pfaffian;
    Some(match name {
        "wirtinger_inequality" => checks::wirtinger_inequality(x, k),
        "equality_iff_trianalytic" => checks::equality_iff_trianalytic(x, k),
        "strategy_agreement" => checks::strategy_agreement(x, k),
        "kahler_normalization" => checks::kahler_normalization(x, k),
        "certificate_soundness" => checks::certificate_soundness(x),
        "certificate_scale" => checks::certificate_scale(x, k),
        _ => return None,
    })
}

fn chain_check<R: Real>(name: &str, report: &ChainReport<R>) -> Option<Check> {
    Some(match name {
        "chain_monotonicity" => checks::chain_monotonicity(report),
        "chain_corollary" => checks::chain_corollary(report),
        _ => return None,
    })
}

/// Re-runs a scene-reproducible property on every subvariety (or chain) of
/// `scene`, in scene order.
pub fn recheck<R: Real>(
    name: &str,
    scene: &Scene<R>,
    cfg: &PropertyConfig<R>,
) -> Option<Vec<Check>> {
    if SUBVARIETY_PROPERTIES.contains(&name) {
        return scene
            .subvarieties
            .iter()
            .map(|x| subvariety_check(name, x, cfg))
            .collect();
    }
    if CHAIN_PROPERTIES.contains(&name) {
        let tol = R::tol(scene.options.tolerance);
        return (0..scene.chains.len())
            .map(|c| match verify_chain(&scene.chain_members(c), tol) {
                Ok(report) => chain_check(name, &report),
                Err(e) => Some(Err(e.to_string())),
            })
            .collect();
    }
    None
}

fn outcome<T: Sync>(
    name: &str,
    items: &[T],
    check: impl Fn(&T) -> Check + Sync + Send,
    dump: impl Fn(&T) -> (Option<SceneDocument>, Option<Value>),
) -> PropertyOutcome {
    let results: Vec<Check> = items.par_iter().map(check).collect();
    let failures = results.iter().filter(|r| r.is_err()).count();
    let counterexample = results.iter().position(|r| r.is_err()).map(|case| {
        let (scene, data) = dump(&items[case]);
        Counterexample {
            case,
            detail: results[case].clone().unwrap_err(),
            scene,
            data,
        }
    });
    PropertyOutcome {
        name: name.into(),
        cases: items.len(),
        failures,
        counterexample,
        note: None,
    }
}

fn rows<R: Real>(m: &Matrix<R>) -> Value {
    json!(m
        .to_rows()
        .into_iter()
        .map(|r| r
            .into_iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect::<Vec<f64>>())
        .collect::<Vec<_>>())
}

fn complex_json<R: Real>(c: num_complex::Complex<R>) -> Value {
    json!([c.re.to_f64(), c.im.to_f64()])
}

fn scene_of<R: Real>(
    members: &[Subvariety<R>],
    chains: Vec<Vec<usize>>,
    seed: u64,
) -> Option<SceneDocument> {
    let options = SceneOptions {
        seed,
        ..SceneOptions::default()
    };
    Scene::from_parts(members.to_vec(), chains, options)
        .ok()
        .map(|s| s.to_document())
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

pub fn run_properties(seed: u64, size: usize) -> PropertyReport {
    run_properties_with::<f64>(seed, size, &PropertyConfig::default())
}

/// Runs every property on `size` seeded instances each.
pub fn run_properties_with<R: Real>(
    seed: u64,
    size: usize,
    cfg: &PropertyConfig<R>,
) -> PropertyReport {
    let size = size.max(1);
    let k = cfg.pfaffian;
    let mut out = Vec::new();

    let pop: Vec<Subvariety<R>> = mixed_population(size, &mut stream(seed, 0));
    let dump_one = |x: &Subvariety<R>| (scene_of(std::slice::from_ref(x), vec![], seed), None);
    for name in &SUBVARIETY_PROPERTIES[..4] {
        out.push(outcome(
            name,
            &pop,
            |x| subvariety_check(name, x, cfg).expect("known name"),
            dump_one,
        ));
    }

    let mut rng = stream(seed, 1);
    let relattice: Vec<(Subvariety<R>, Matrix<R>)> = pop
        .iter()
        .map(|x| (x.clone(), random_unimodular(x.basis().cols(), &mut rng)))
        .collect();
    out.push(outcome(
        "lattice_invariance",
        &relattice,
        |(x, m)| checks::lattice_invariance(x, m, k),
        |(x, m)| {
            (
                scene_of(std::slice::from_ref(x), vec![], seed),
                Some(json!({ "lattice_change": rows(m) })),
            )
        },
    ));

    let mut rng = stream(seed, 2);
    let rotated: Vec<(Subvariety<R>, num_complex::Complex<R>)> = pop
        .iter()
        .map(|x| (x.clone(), random_unit(&mut rng)))
        .collect();
    out.push(outcome(
        "rotation_invariance",
        &rotated,
        |(x, l)| checks::rotation_invariance(x, *l, k),
        |(x, l)| {
            (
                scene_of(std::slice::from_ref(x), vec![], seed),
                Some(json!({ "lambda": complex_json(*l) })),
            )
        },
    ));

    let mut rng = stream(seed, 3);
    let scaled: Vec<(Subvariety<R>, R)> = pop
        .iter()
        .map(|x| (x.clone(), R::c(rng.random_range(0.25..4.0))))
        .collect();
    out.push(outcome(
        "degree_scaling",
        &scaled,
        |(x, c)| checks::degree_scaling(x, *c, k),
        |(x, c)| {
            (
                scene_of(std::slice::from_ref(x), vec![], seed),
                Some(json!({ "c": c.to_f64() })),
            )
        },
    ));

    let mut rng = stream(seed, 4);
    let rotations: Vec<(usize, num_complex::Complex<R>, num_complex::Complex<R>)> = (0..size)
        .map(|_| {
            (
                rng.random_range(1..=3),
                random_unit(&mut rng),
                random_unit(&mut rng),
            )
        })
        .collect();
    out.push(outcome(
        "rotation_mechanism",
        &rotations,
        |(n, l1, l2)| {
            checks::rotation_mechanism(
                &QuaternionicSpace::standard(*n).map_err(|e| e.to_string())?,
                *l1,
                *l2,
            )
        },
        |(n, l1, l2)| {
            (
                None,
                Some(json!({ "n": n, "lambda1": complex_json(*l1), "lambda2": complex_json(*l2) })),
            )
        },
    ));

    let mut rng = stream(seed, 5);
    let spheres: Vec<(usize, [R; 3])> = (0..size)
        .map(|_| (rng.random_range(1..=2), random_sphere_point(&mut rng)))
        .collect();
    out.push(outcome(
        "su2_invariance",
        &spheres,
        |(n, l)| {
            checks::su2_invariance(
                &QuaternionicSpace::standard(*n).map_err(|e| e.to_string())?,
                *l,
                k,
            )
        },
        |(n, l)| {
            (
                None,
                Some(json!({ "n": n, "coeffs": l.map(|c| c.to_f64()) })),
            )
        },
    ));

    let mut rng = stream(seed, 6);
    let skews: Vec<SkewMatrix<R>> = (0..size)
        .map(|i| random_skew(2 + 2 * (i % 6), &mut rng))
        .collect();
    let dump_skew = |a: &SkewMatrix<R>| (None, Some(json!({ "matrix": rows(a.matrix()) })));
    out.push(outcome(
        "pfaffian_oracle_agreement",
        &skews,
        |a| checks::pfaffian_oracle_agreement(a, k),
        dump_skew,
    ));
    out.push(outcome(
        "pfaffian_squared_det",
        &skews,
        |a| checks::pfaffian_squared_det(a, k),
        dump_skew,
    ));

    let mut rng = stream(seed, 7);
    let congruences: Vec<(SkewMatrix<R>, Matrix<R>)> = (0..size)
        .map(|i| {
            let dim = 4 + 2 * (i % 3);
            (
                random_skew(dim, &mut rng),
                random_matrix(dim, dim, &mut rng),
            )
        })
        .collect();
    out.push(outcome(
        "pfaffian_congruence",
        &congruences,
        |(a, b)| checks::pfaffian_congruence(a, b, k),
        |(a, b)| {
            (
                None,
                Some(json!({ "matrix": rows(a.matrix()), "b": rows(b) })),
            )
        },
    ));

    let suite = generate_chain_suite::<R>(seed, size);
    let reports: Vec<(Vec<Subvariety<R>>, ChainReport<R>)> = suite
        .par_iter()
        .map(|c| {
            (
                c.members.clone(),
                verify_chain(&c.members, R::c(CHAIN_TOL)).expect("generated chains verify"),
            )
        })
        .collect();
    let dump_chain = |(m, _): &(Vec<Subvariety<R>>, ChainReport<R>)| {
        (scene_of(m, vec![(0..m.len()).collect()], seed), None)
    };
    let links: usize = reports.iter().map(|(_, r)| r.links.len()).sum();
    let skipped: usize = reports.iter().map(|(_, r)| r.skipped()).sum();
    let corollary: usize = reports
        .iter()
        .flat_map(|(_, r)| &r.links)
        .filter(|l| l.corollary.is_some())
        .count();
    let mut mono = outcome(
        "chain_monotonicity",
        &reports,
        |(_, r)| checks::chain_monotonicity(r),
        dump_chain,
    );
    mono.note = Some(format!(
        "{skipped} of {links} links skipped without certificate"
    ));
    out.push(mono);
    let mut cor = outcome(
        "chain_corollary",
        &reports,
        |(_, r)| checks::chain_corollary(r),
        dump_chain,
    );
    cor.note = Some(format!(
        "{corollary} links with trianalytic inner and certified outer"
    ));
    out.push(cor);

    let certified: Vec<Subvariety<R>> = suite
        .iter()
        .flat_map(|c| c.members[1..].iter().cloned())
        .collect();
    for name in &SUBVARIETY_PROPERTIES[4..] {
        out.push(outcome(
            name,
            &certified,
            |x| subvariety_check(name, x, cfg).expect("known name"),
            dump_one,
        ));
    }

    PropertyReport {
        seed,
        size,
        properties: out,
    }
}

/// Plain-text summary, one line per property.
pub fn render_properties(report: &PropertyReport) -> String {
    let mut s = format!("properties seed={} size={}\n", report.seed, report.size);
    for p in &report.properties {
        let status = if p.passed() { "PASS" } else { "FAIL" };
        s += &format!(
            "{status} {:<28} {:>5} cases {:>5} failures",
            p.name, p.cases, p.failures
        );
        if let Some(note) = &p.note {
            s += &format!("  ({note})");
        }
        s.push('\n');
        if let Some(c) = &p.counterexample {
            s += &format!("  counterexample #{}: {}\n", c.case, c.detail);
            if let Some(scene) = &c.scene {
                let text = serde_json::to_string(scene).expect("scene serializes");
                s += &format!("  scene: {text}\n");
            }
            if let Some(data) = &c.data {
                s += &format!("  data: {data}\n");
            }
        }
    }
    s
}
