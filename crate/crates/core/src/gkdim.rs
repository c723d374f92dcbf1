//! Growth of the standard filtration and the combined smoothness verdict.

use std::fmt;

use crate::algebra::Algebra;
use crate::audit::{AuditRecord, Status};
use crate::error::{Result, SpbwError};
use crate::exponents;

/// Every relation must keep the filtration by total degree in all coordinates.
pub fn filtration_compatibility(alg: &Algebra) -> Result<()> {
    let pres = alg.presentation();
    let sym = alg.symbols();
    let deg = |c: &crate::coeff::CoeffPoly| c.total_degree().unwrap_or(0);
    let fail = |s: String| Err(SpbwError::Unsupported(format!("relation leaves the filtration: {s}")));
    for (i, (s, d)) in pres.sigma.iter().zip(&pres.delta).enumerate() {
        for a in 0..alg.ncoeffs() {
            let t = crate::coeff::CoeffPoly::var(a);
            if deg(&s.apply(&t)) > 1 || deg(&d.apply(&t)) > 2 {
                return fail(format!("{} {}", sym.gens[i], sym.coeffs[a]));
            }
        }
    }
    for (&(j, i), rel) in pres.stored_relations() {
        let tail_ok = rel.r.iter().all(|r| deg(r) <= 1);
        if deg(&rel.d) > 0 || deg(&rel.r0) > 2 || !tail_ok {
            return fail(format!("{} {}", sym.gens[j], sym.gens[i]));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationTable {
    /// dim V^m for m = 0..=m_max.
    pub dims: Vec<u64>,
}

/// Count normal monomials of degree at most m by enumeration.
pub fn filtration_dims(alg: &Algebra, m_max: u32) -> Result<FiltrationTable> {
    filtration_compatibility(alg)?;
    let mut per_degree = vec![0u64; m_max as usize + 1];
    for (g, a) in alg.basis_monomials(m_max) {
        per_degree[(exponents::degree(&g) + exponents::degree(&a)) as usize] += 1;
    }
    let dims = per_degree
        .iter()
        .scan(0u64, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    Ok(FiltrationTable { dims })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GkEstimate {
    pub estimate: u32,
    /// Order at which the finite differences become constant.
    pub difference_degree: Option<u32>,
    /// Extrapolated local growth exponent.
    pub log_estimate: f64,
    pub ambiguous: bool,
    pub diagnostics: Vec<String>,
}

fn local_exponent(d: &[u64], m: usize) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let ratio = d[m] as f64 / d[m - 1] as f64;
    ratio.ln() / (m as f64 / (m - 1) as f64).ln()
}

pub fn gk_estimate(t: &FiltrationTable) -> Result<GkEstimate> {
    let d = &t.dims;
    if d.len() < 9 {
        return Err(SpbwError::Config("growth estimate needs at least degree 8".into()));
    }
    let mut diagnostics = Vec::new();
    let mut seq: Vec<i128> = d.iter().map(|&v| v as i128).collect();
    let mut difference_degree = None;
    for k in 0..d.len() as u32 {
        if seq.len() >= 2 && seq.windows(2).all(|w| w[0] == w[1]) {
            difference_degree = Some(k);
            break;
        }
        if seq.len() < 3 {
            break;
        }
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let top = d.len() - 1;
    let log_estimate = 2.0 * local_exponent(d, top) - local_exponent(d, top / 2);
    diagnostics.push(match difference_degree {
        Some(k) => format!("finite differences constant from order {k}"),
        None => "finite differences never become constant".into(),
    });
    diagnostics.push(format!("log growth: {log_estimate:.3}"));
    let (estimate, ambiguous) = match difference_degree {
        Some(k) if (log_estimate - k as f64).abs() < 0.5 => (k, false),
        Some(k) => (k, true),
        None => (log_estimate.round().max(0.0) as u32, true),
    };
    if ambiguous {
        diagnostics.push("estimates disagree".into());
    }
    Ok(GkEstimate { estimate, difference_degree, log_estimate, ambiguous, diagnostics })
}

impl GkEstimate {
    pub fn to_record(&self) -> AuditRecord {
        let status = if self.ambiguous { Status::Fail } else { Status::Pass };
        let mut rec = AuditRecord::new("gk-dimension", status, format!("estimate {} (desk-scale)", self.estimate));
        rec.witnesses = self.diagnostics.clone();
        rec
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedSmooth,
    NotCertified(Vec<String>),
    Failed(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::CertifiedSmooth => "certified-smooth",
            Verdict::NotCertified(_) => "not-certified",
            Verdict::Failed(_) => "failed",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CertifiedSmooth => f.write_str("certified-smooth"),
            Verdict::NotCertified(r) => write!(f, "not-certified ({})", r.join("; ")),
            Verdict::Failed(c) => write!(f, "failed({c})"),
        }
    }
}

/// Checks whose failure stops the pipeline.
pub const HARD_CHECKS: [&str; 2] = ["pbw", "compatibility"];

/// Checks that must be present and passing for a certificate.
pub const REQUIRED_CHECKS: [&str; 8] = [
    "pbw",
    "compatibility",
    "d-squared",
    "connectedness",
    "volume",
    "integrability",
    "divergence",
    "flatness",
];

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessReport {
    pub records: Vec<AuditRecord>,
    pub calculus_dim: Option<usize>,
    pub gk: Option<GkEstimate>,
    pub verdict: Verdict,
}

pub fn smoothness_verdict(
    records: Vec<AuditRecord>,
    calculus_dim: Option<usize>,
    gk: Option<GkEstimate>,
) -> SmoothnessReport {
    let status = |name: &str| records.iter().find(|r| r.name == name).map(|r| r.status);
    let verdict = if let Some(h) = HARD_CHECKS.iter().find(|h| status(h) == Some(Status::Fail)) {
        Verdict::Failed(h.to_string())
    } else {
        let mut reasons: Vec<String> = Vec::new();
        for name in REQUIRED_CHECKS {
            match status(name) {
                Some(Status::Pass) => {}
                Some(s) => reasons.push(format!("{name} {s}")),
                None => reasons.push(format!("{name} missing")),
            }
        }
        for r in &records {
            if r.status == Status::Fail && !REQUIRED_CHECKS.contains(&r.name.as_str()) {
                reasons.push(format!("{} fail", r.name));
            }
        }
        match (&gk, calculus_dim) {
            (Some(g), _) if g.ambiguous => reasons.push("growth estimate ambiguous".into()),
            (Some(g), Some(n)) if g.estimate as usize != n => {
                reasons.push(format!("dimension mismatch: N = {n}, GK = {}", g.estimate))
            }
            (Some(_), Some(_)) => {}
            _ => reasons.push("dimension unknown".into()),
        }
        if reasons.is_empty() {
            Verdict::CertifiedSmooth
        } else {
            Verdict::NotCertified(reasons)
        }
    };
    SmoothnessReport { records, calculus_dim, gk, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use proptest::prelude::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn filtration_examples() {
        let w = filtration_dims(&weyl(), 8).unwrap();
        assert_eq!(&w.dims[..4], &[1, 3, 6, 10]);
        let f = filtration_dims(&over_field("f", &[], 0, vec![]), 8).unwrap();
        assert!(f.dims.iter().all(|&d| d == 1));
        assert_eq!(filtration_dims(&jordan(), 3).unwrap().dims[3], 10);
        for m in 0..=8u64 {
            assert_eq!(filtration_dims(&qaffine3(), 8).unwrap().dims[m as usize], binom(m + 3, 3));
        }
    }

    #[test]
    fn estimates() {
        assert_eq!(gk_estimate(&filtration_dims(&weyl(), 12).unwrap()).unwrap().estimate, 2);
        let g = gk_estimate(&filtration_dims(&qaffine3(), 8).unwrap()).unwrap();
        assert_eq!((g.estimate, g.ambiguous), (3, false));
        let c = gk_estimate(&FiltrationTable { dims: vec![1; 9] }).unwrap();
        assert_eq!((c.estimate, c.ambiguous), (0, false));
        assert!(gk_estimate(&FiltrationTable { dims: vec![1; 5] }).is_err());
        // exponential growth has no stable difference order
        let e = gk_estimate(&FiltrationTable { dims: (0..10).map(|m| 1u64 << m).collect() }).unwrap();
        assert!(e.ambiguous);
    }

    fn passing() -> Vec<AuditRecord> {
        REQUIRED_CHECKS.iter().map(|n| AuditRecord::new(*n, Status::Pass, "")).collect()
    }

    fn gk(n: u32) -> Option<GkEstimate> {
        Some(GkEstimate { estimate: n, difference_degree: Some(n), log_estimate: n as f64, ambiguous: false, diagnostics: vec![] })
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(smoothness_verdict(passing(), Some(2), gk(2)).verdict, Verdict::CertifiedSmooth);
        let v = smoothness_verdict(passing(), Some(1), gk(2)).verdict;
        assert_eq!(v, Verdict::NotCertified(vec!["dimension mismatch: N = 1, GK = 2".into()]));
        let mut r = passing();
        r[0].status = Status::Fail;
        assert_eq!(smoothness_verdict(r, Some(2), gk(2)).verdict, Verdict::Failed("pbw".into()));
    }

    proptest! {
        #[test]
        fn verdict_is_monotone(flip in 0usize..8, extra in any::<bool>()) {
            let mut r = passing();
            if extra {
                r.push(AuditRecord::new("graded-leibniz", Status::Fail, ""));
            } else {
                r[flip].status = Status::Fail;
            }
            prop_assert_ne!(smoothness_verdict(r, Some(2), gk(2)).verdict, Verdict::CertifiedSmooth);
        }
    }
}
