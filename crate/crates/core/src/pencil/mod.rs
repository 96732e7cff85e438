//! Quartic cones cutting 16 q on an elliptic normal quartic, the pencil of
//! plane quartics they project to, and its certificate.

pub mod build;
pub mod certificate;
pub mod irreducible;
pub mod scan;

pub use build::{build_pencil, osculating_quartic, OsculatingQuartic, PlanePencil};
pub use certificate::{certify_pencil, PencilCertificate};
pub use scan::{search_vertices, vertex_conditions, ConeWitness, ScanRegion, ScanReport};

use crate::algebra::prime::next_prime;
use crate::elliptic::{find_point_of_order, EPoint, GoldenCertificate, SearchSpace, WeierstrassCurve};
use crate::error::{Error, Result};

/// Primes are tried in increasing order; up to `full_scan_limit` the whole
/// of P^3(F_p) is scanned, above it only `fallback_region`.
#[derive(Clone, Debug, PartialEq)]
pub struct EscalationPolicy {
    pub min_prime: u64,
    pub max_prime: u64,
    pub full_scan_limit: u64,
    pub fallback_region: ScanRegion,
    pub budget: u64,
    pub seed: u64,
}

impl Default for EscalationPolicy {
    fn default() -> Self {
        EscalationPolicy {
            min_prime: 17,
            max_prime: 1021,
            full_scan_limit: 127,
            fallback_region: ScanRegion::Box { lo: [0; 3], hi: [31; 3] },
            budget: u64::MAX,
            seed: 0x9e11,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOutcome {
    pub golden: GoldenCertificate,
    pub curve: WeierstrassCurve,
    pub q: EPoint,
    pub scan: ScanReport,
    pub witness: ConeWitness,
    pub pencil: PlanePencil,
    pub certificate: PencilCertificate,
    /// (p, reason) for every prime given up on.
    pub skipped: Vec<(u64, String)>,
}

/// Scan, build and certify for a fixed curve and point; the first witness
/// whose pencil certifies cleanly wins.
pub fn pipeline_for(
    e: &WeierstrassCurve,
    q: &EPoint,
    region: &ScanRegion,
    budget: u64,
    seed: u64,
) -> Result<(ScanReport, ConeWitness, PlanePencil, PencilCertificate)> {
    let c = e.embed_by_4o()?;
    let qv = e.embed(q);
    let scan = search_vertices(&c, &qv, region, 0, budget)?;
    if scan.witnesses.is_empty() {
        return Err(Error::GenericityFailure(format!(
            "no vertex over F_{} in region {}; raise p or use an extension",
            e.p(),
            region.describe()
        )));
    }
    let mut last = None;
    for w in &scan.witnesses {
        let attempt = build_pencil(&c, w, &qv).and_then(|pencil| {
            let cert = certify_pencil(&pencil, e, q, seed)?;
            Ok((pencil, cert))
        });
        match attempt {
            Ok((pencil, cert)) if cert.passed() => return Ok((scan.clone(), w.clone(), pencil, cert)),
            Ok(_) => last = Some(Error::CertificateFailure { record: 2, detail: "a member splits; manual review".into() }),
            Err(err @ Error::BudgetExhausted { .. }) => return Err(err),
            Err(err) => last = Some(err),
        }
    }
    Err(last.unwrap())
}

/// Find a torsion witness and a certified pencil, escalating p per `policy`.
pub fn run_pipeline(policy: &EscalationPolicy) -> Result<PipelineOutcome> {
    let mut skipped = vec![];
    let mut p = if crate::algebra::prime::is_prime(policy.min_prime) { policy.min_prime } else { next_prime(policy.min_prime) };
    while p <= policy.max_prime {
        let found = find_point_of_order(&SearchSpace::new(vec![p]), 16, u64::MAX);
        let (e, q) = match found {
            Ok(x) => x,
            Err(err) => {
                skipped.push((p, err.to_string()));
                p = next_prime(p);
                continue;
            }
        };
        let region = if p <= policy.full_scan_limit { ScanRegion::Full } else { policy.fallback_region.clone() };
        match pipeline_for(&e, &q, &region, policy.budget, policy.seed) {
            Ok((scan, witness, pencil, certificate)) => {
                return Ok(PipelineOutcome {
                    golden: GoldenCertificate::from_witness(&e, &q)?,
                    curve: e,
                    q,
                    scan,
                    witness,
                    pencil,
                    certificate,
                    skipped,
                })
            }
            Err(err @ Error::BudgetExhausted { .. }) => return Err(err),
            Err(err) => skipped.push((p, err.to_string())),
        }
        p = next_prime(p);
    }
    Err(Error::GenericityFailure(format!("no certified pencil for p <= {}", policy.max_prime)))
}

#[cfg(test)]
mod tests;
