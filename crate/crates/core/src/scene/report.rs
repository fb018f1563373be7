use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::document::{Scene, SceneError, SceneWarning};
use crate::exterior::{pfaffian, pfaffian_oracle, PFAFFIAN_ORACLE_CUTOFF};
use crate::immersion::{verify_chain, ChainReport, LinkStatus, Verdict};
use crate::scalar::Real;
use crate::subvariety::{DegreeReport, DegreeStrategy, Frame, Subvariety};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub scalar: String,
    pub seed: u64,
    pub tolerance: f64,
    pub strategy: DegreeStrategy,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyValue<R> {
    pub strategy: DegreeStrategy,
    /// `None` above the oracle cutoff.
    pub deg_big_omega: Option<R>,
}

/// Brute-force cross-checks of one row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck<R> {
    pub strategies: Vec<StrategyValue<R>>,
    /// Largest `|deg_Ω(a) − deg_Ω(b)| / deg_ω` over computed strategies.
    pub strategy_deviation: R,
    /// `|Pf − Pf_oracle| / |Pf_oracle|` on the restricted `ω_I`.
    pub pfaffian_deviation: R,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row<R> {
    pub name: String,
    #[serde(flatten)]
    pub degrees: DegreeReport<R>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck<R>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry<R> {
    pub name: String,
    #[serde(flatten)]
    pub report: ChainReport<R>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    WirtingerInequality,
    OracleDisagreement,
    Monotonicity,
    Corollary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<R> {
    pub metadata: Metadata,
    pub subvarieties: Vec<Row<R>>,
    pub chains: Vec<ChainEntry<R>>,
    pub warnings: Vec<SceneWarning>,
    pub violations: Vec<Violation>,
}

impl<R: Real> Report<R> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn oracle_check<R: Real>(
    x: &Subvariety<R>,
    report: &DegreeReport<R>,
) -> Result<OracleCheck<R>, crate::Error> {
    let strategies = DegreeStrategy::ALL
        .iter()
        .map(|&s| {
            let v = match x.deg_big_omega(s) {
                Err(crate::Error::AboveOracleCutoff { .. }) => None,
                other => Some(other?),
            };
            Ok(StrategyValue {
                strategy: s,
                deg_big_omega: v,
            })
        })
        .collect::<Result<Vec<_>, crate::Error>>()?;
    let values: Vec<R> = strategies.iter().filter_map(|s| s.deg_big_omega).collect();
    let strategy_deviation = values
        .iter()
        .flat_map(|a| {
            values
                .iter()
                .map(move |b| (*a - *b).abs() / report.deg_omega)
        })
        .fold(R::zero(), R::max);
    let restricted = x.restrict_form(&x.space().omega_i(), Frame::Orthonormal)?;
    let pfaffian_deviation = if restricted.dim() <= PFAFFIAN_ORACLE_CUTOFF {
        let exact = pfaffian_oracle(&restricted)?;
        (pfaffian(&restricted)? - exact).abs() / exact.abs()
    } else {
        R::zero()
    };
    Ok(OracleCheck {
        strategies,
        strategy_deviation,
        pfaffian_deviation,
    })
}

fn row<R: Real>(
    x: &Subvariety<R>,
    strategy: DegreeStrategy,
    oracle: bool,
) -> Result<Row<R>, SceneError> {
    let wrap = |source| SceneError::Subvariety {
        name: x.name().to_string(),
        source,
    };
    let degrees = x.degree_report(strategy).map_err(wrap)?;
    let oracle = if oracle {
        Some(oracle_check(x, &degrees).map_err(wrap)?)
    } else {
        None
    };
    Ok(Row {
        name: x.name().to_string(),
        degrees,
        oracle,
    })
}

/// Degree rows for every subvariety and a verdict for every chain, in scene
/// order. Fails on the first subvariety or chain whose invariants are
/// undefined.
pub fn run_scene<R: Real>(scene: &Scene<R>, oracle: bool) -> Result<Report<R>, SceneError> {
    let opts = scene.options;
    let tol = R::tol(opts.tolerance);
    let rows = scene
        .subvarieties
        .par_iter()
        .map(|x| row(x, opts.strategy, oracle))
        .collect::<Result<Vec<_>, _>>()?;
    let chains = (0..scene.chains.len())
        .into_par_iter()
        .map(|c| {
            let name = scene.chain_name(c);
            verify_chain(&scene.chain_members(c), tol)
                .map(|report| ChainEntry {
                    name: name.clone(),
                    report,
                })
                .map_err(|source| SceneError::Chain {
                    chain: name,
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut violations = Vec::new();
    for r in &rows {
        let d = &r.degrees;
        if d.deg_omega < d.deg_big_omega.abs() - tol * d.deg_omega {
            violations.push(Violation {
                kind: ViolationKind::WirtingerInequality,
                subject: r.name.clone(),
                detail: format!(
                    "deg_omega {:e} < |deg_Omega| {:e}",
                    d.deg_omega,
                    d.deg_big_omega.abs()
                ),
            });
        }
        if let Some(o) = &r.oracle {
            let worst = o.strategy_deviation.max(o.pfaffian_deviation);
            if !(worst <= tol) {
                violations.push(Violation {
                    kind: ViolationKind::OracleDisagreement,
                    subject: r.name.clone(),
                    detail: format!("relative deviation {worst:e}"),
                });
            }
        }
    }
    for c in &chains {
        for l in &c.report.links {
            let subject = format!("{} -> {}", l.inner, l.outer);
            if l.status == LinkStatus::Violation {
                violations.push(Violation {
                    kind: ViolationKind::Monotonicity,
                    subject: subject.clone(),
                    detail: format!("W {:e} > {:e}", l.w_inner, l.w_outer),
                });
            }
            if l.corollary == Some(false) {
                violations.push(Violation {
                    kind: ViolationKind::Corollary,
                    subject,
                    detail: format!("trianalytic inner but W(outer) = {:e}", l.w_outer),
                });
            }
        }
    }

    Ok(Report {
        metadata: Metadata {
            tool: "wirtinger".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            scalar: std::any::type_name::<R>().into(),
            seed: opts.seed,
            tolerance: opts.tolerance,
            strategy: opts.strategy,
            oracle,
        },
        subvarieties: rows,
        chains,
        warnings: scene.warnings.clone(),
        violations,
    })
}

/// `x` rounded to 6 significant digits, trailing zeros dropped.
pub fn sig6<R: Real>(x: R) -> String {
    let x = x.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    let exp = rounded.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        let s = format!("{rounded:.5e}");
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        return format!("{mantissa}e{e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Plain-text rendering with 6 significant digits.
pub fn render_table<R: Real>(report: &Report<R>) -> String {
    let mut out = String::new();
    let m = &report.metadata;
    let _ = writeln!(
        out,
        "{} {}  seed={}  tolerance={}  strategy={}  oracle={}",
        m.tool,
        m.version,
        m.seed,
        sig6(m.tolerance),
        m.strategy.name(),
        m.oracle
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:<16} {:>3} {:>12} {:>12} {:>12} {:>12} {:>12} {:>11}",
        "subvariety", "d", "volume", "deg_omega", "deg_Omega", "deg_omega_K", "W", "trianalytic"
    );
    for r in &report.subvarieties {
        let d = &r.degrees;
        let _ = writeln!(
            out,
            "{:<16} {:>3} {:>12} {:>12} {:>12} {:>12} {:>12} {:>11}",
            r.name,
            d.d,
            sig6(d.volume),
            sig6(d.deg_omega),
            sig6(d.deg_big_omega),
            sig6(d.deg_omega_k),
            sig6(d.wirtinger),
            yes_no(d.trianalytic)
        );
        if let Some(o) = &r.oracle {
            let values: Vec<String> = o
                .strategies
                .iter()
                .map(|s| {
                    format!(
                        "{}={}",
                        s.strategy.name(),
                        s.deg_big_omega.map_or("skipped".into(), sig6)
                    )
                })
                .collect();
            let _ = writeln!(
                out,
                "  oracle: {}  deviation={}  pfaffian={}",
                values.join(" "),
                sig6(o.strategy_deviation),
                sig6(o.pfaffian_deviation)
            );
        }
    }
    for c in &report.chains {
        let _ = writeln!(out);
        let verdict = match c.report.verdict {
            Verdict::Pass => "PASS",
            Verdict::Violation => "VIOLATION",
        };
        let _ = writeln!(out, "chain {}: {verdict}", c.name);
        for l in &c.report.links {
            let status = match &l.status {
                LinkStatus::Pass => "PASS".to_string(),
                LinkStatus::Violation => "VIOLATION".to_string(),
                LinkStatus::SkippedNoCertificate { reason } => {
                    format!("SKIPPED-NO-CERTIFICATE ({reason})")
                }
            };
            let corollary = match l.corollary {
                Some(true) => "  corollary=holds",
                Some(false) => "  corollary=FAILS",
                None => "",
            };
            let _ = writeln!(
                out,
                "  {} -> {}  W {} <= {}  {}{}",
                l.inner,
                l.outer,
                sig6(l.w_inner),
                sig6(l.w_outer),
                status,
                corollary
            );
        }
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {}: {}", w.subvariety, w.message);
    }
    let _ = writeln!(out);
    if report.violations.is_empty() {
        let _ = writeln!(out, "no violations");
    } else {
        for v in &report.violations {
            let _ = writeln!(out, "violation [{:?}] {}: {}", v.kind, v.subject, v.detail);
        }
    }
    out
}
