use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{is_symplectic_immersion, linear_calabi_yau};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::subvariety::Subvariety;

/// Default slack in `W(inner) ≤ W(outer) + tol`.
pub const CHAIN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertificateStatus<R> {
    /// The first element of a chain carries no certificate.
    NotRequired,
    Certified {
        scale: R,
    },
    Failed {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainElement<R> {
    pub name: String,
    pub d: usize,
    pub wirtinger: R,
    pub trianalytic: bool,
    pub certificate: CertificateStatus<R>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING-KEBAB-CASE")]
pub enum LinkStatus {
    Pass,
    Violation,
    SkippedNoCertificate { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainLink<R> {
    pub inner: String,
    pub outer: String,
    pub w_inner: R,
    pub w_outer: R,
    pub status: LinkStatus,
    /// Trianalytic inner element and certified outer element: whether the
    /// outer element is trianalytic with `W = 1` as well. `None` when the
    /// hypotheses do not hold.
    pub corollary: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport<R> {
    pub elements: Vec<ChainElement<R>>,
    pub links: Vec<ChainLink<R>>,
    pub verdict: Verdict,
}

impl<R> ChainReport<R> {
    pub fn skipped(&self) -> usize {
        self.links
            .iter()
            .filter(|l| matches!(l.status, LinkStatus::SkippedNoCertificate { .. }))
            .count()
    }

    pub fn certified_links(&self) -> impl Iterator<Item = &ChainLink<R>> {
        self.links
            .iter()
            .filter(|l| !matches!(l.status, LinkStatus::SkippedNoCertificate { .. }))
    }
}

fn element<R: Real>(x: &Subvariety<R>, certify: bool) -> Result<ChainElement<R>> {
    let report = x
        .wirtinger_number()
        .map_err(|e| Error::Chain(format!("{}: {e}", x.name())))?;
    let certificate = if certify {
        let cert = linear_calabi_yau(x).map_err(|e| Error::Chain(format!("{}: {e}", x.name())))?;
        match cert.failure() {
            None => CertificateStatus::Certified { scale: cert.scale },
            Some(v) => CertificateStatus::Failed {
                reason: v.to_string(),
            },
        }
    } else {
        CertificateStatus::NotRequired
    };
    Ok(ChainElement {
        name: x.name().to_string(),
        d: report.d,
        wirtinger: report.wirtinger,
        trianalytic: report.trianalytic,
        certificate,
    })
}

/// Checks `W(X₁) ≤ … ≤ W(Xₙ)` on every link whose outer element holds a
/// valid certificate.
///
/// Every consecutive pair must be a symplectic immersion, and every element
/// must have even `d ≥ 2` and a nondegenerate restricted `Ω`. Links whose
/// outer certificate fails are skipped with the recovery failure as reason.
pub fn verify_chain<R: Real>(chain: &[Subvariety<R>], tol: R) -> Result<ChainReport<R>> {
    if chain.is_empty() {
        return Err(Error::Chain("empty chain".into()));
    }
    for pair in chain.windows(2) {
        let (inner, outer) = (&pair[0], &pair[1]);
        let edge = is_symplectic_immersion(inner, outer)
            .map_err(|e| Error::Chain(format!("link {} -> {}: {e}", inner.name(), outer.name())))?;
        if !edge.symplectic {
            return Err(Error::Chain(format!(
                "link {} -> {}: restricted holomorphic symplectic form is degenerate on {}",
                inner.name(),
                outer.name(),
                inner.name()
            )));
        }
    }
    let elements = chain
        .par_iter()
        .enumerate()
        .map(|(idx, x)| element(x, idx > 0))
        .collect::<Result<Vec<_>>>()?;

    let one = R::one();
    let links: Vec<ChainLink<R>> = elements
        .windows(2)
        .map(|pair| {
            let (a, b) = (&pair[0], &pair[1]);
            let (status, corollary) = match &b.certificate {
                CertificateStatus::Certified { .. } => {
                    let status = if a.wirtinger <= b.wirtinger + tol {
                        LinkStatus::Pass
                    } else {
                        LinkStatus::Violation
                    };
                    let hyp = a.trianalytic && (a.wirtinger - one).abs() <= tol;
                    let corollary = hyp.then(|| (b.wirtinger - one).abs() <= tol && b.trianalytic);
                    (status, corollary)
                }
                CertificateStatus::Failed { reason } => (
                    LinkStatus::SkippedNoCertificate {
                        reason: reason.clone(),
                    },
                    None,
                ),
                CertificateStatus::NotRequired => {
                    unreachable!("outer elements are always certified")
                }
            };
            ChainLink {
                inner: a.name.clone(),
                outer: b.name.clone(),
                w_inner: a.wirtinger,
                w_outer: b.wirtinger,
                status,
                corollary,
            }
        })
        .collect();

    let ok = links
        .iter()
        .all(|l| l.status != LinkStatus::Violation && l.corollary != Some(false));
    let verdict = if ok {
        Verdict::Pass
    } else {
        Verdict::Violation
    };
    Ok(ChainReport {
        elements,
        links,
        verdict,
    })
}
