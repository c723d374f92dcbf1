//! Commands run against a parsed document.

use std::time::Instant;

use spbw_core::algebra::rewrite::pbw_consistency_check;
use spbw_core::calculus::checks::{
    connectedness_check, d_squared_check, density_check, graded_leibniz_check, integrability_check, volume,
    volume_record,
};
use spbw_core::calculus::integral::Divergence;
use spbw_core::extended::{extend_delta, extend_sigma, hypothesis_check, verify_twisted_leibniz};
use spbw_core::gkdim::{filtration_dims, gk_estimate, smoothness_verdict, GkEstimate};
use spbw_core::{AuditRecord, Calculus, Status};

use crate::dsl::{eval_in, Options, PresentationDoc};
use crate::error::CliError;
use crate::report::{Check, Config, Gk, Report, Timing, VerdictDoc, SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckPbw,
    CheckHypotheses,
    CalculusCheck,
    Smooth,
    Gkdim,
    Report,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::CheckPbw => "check pbw",
            Command::CheckHypotheses => "check hypotheses",
            Command::CalculusCheck => "calculus check",
            Command::Smooth => "smooth",
            Command::Gkdim => "gkdim",
            Command::Report => "report",
        }
    }
}

/// Command-line values that replace the document's options.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_degree: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, mut o: Options, command: Option<Command>) -> Options {
        if let Some(d) = self.max_degree {
            if command == Some(Command::Gkdim) {
                o.gk_degree = d;
            } else {
                o.degree = d;
            }
        }
        if let Some(s) = self.samples {
            o.samples = s;
            o.leibniz_samples = s;
        }
        if let Some(s) = self.seed {
            o.seed = s;
        }
        o
    }
}

struct Run<'a> {
    doc: &'a PresentationDoc,
    opts: Options,
    checks: Vec<Check>,
    records: Vec<AuditRecord>,
}

impl Run<'_> {
    fn push(&mut self, rec: AuditRecord, start: Instant) {
        self.checks.push(Check::from_record(&rec, start.elapsed().as_micros() as u64));
        self.records.push(rec);
    }

    fn timed(&mut self, f: impl FnOnce() -> AuditRecord) -> bool {
        let start = Instant::now();
        let rec = f();
        let ok = rec.status != Status::Fail;
        self.push(rec, start);
        ok
    }

    fn pbw(&mut self) -> bool {
        let (alg, d) = (&self.doc.algebra, self.opts.pbw_degree);
        self.timed(|| pbw_consistency_check(alg, d))
    }

    fn hypotheses(&mut self) {
        let start = Instant::now();
        let alg = &self.doc.algebra;
        let report = hypothesis_check(alg);
        self.push(report.to_record(), start);
        let start = Instant::now();
        let rec = if report.h_block() {
            twisted_leibniz(alg, self.opts.leibniz_samples, self.opts.sample_degree, self.opts.seed)
        } else {
            AuditRecord::new("twisted-leibniz", Status::Skipped, "hypotheses H1-H4 do not all hold")
        };
        self.push(rec, start);
    }

    /// Build the calculus; construction errors become a failed compatibility record.
    fn calculus(&mut self) -> Result<Option<Calculus>, CliError> {
        let Some(spec) = self.doc.calculus_spec() else {
            return Err(CliError::Config(format!("{} has no calculus block", self.doc.name)));
        };
        let start = Instant::now();
        let built = spec.and_then(|s| Calculus::new(&self.doc.algebra, s));
        match built {
            Ok(calc) => {
                let rec = calc.compatibility();
                let ok = rec.passed();
                self.push(rec, start);
                Ok(ok.then_some(calc))
            }
            Err(e) => {
                let rec = AuditRecord::new("compatibility", Status::Fail, "calculus could not be built")
                    .with_witness(e.to_string());
                self.push(rec, start);
                Ok(None)
            }
        }
    }

    fn calculus_checks(&mut self, calc: &Calculus) {
        let o = self.opts.clone();
        self.timed(|| d_squared_check(calc, o.degree));
        self.timed(|| graded_leibniz_check(calc, o.leibniz_samples, o.sample_degree, o.seed));
        self.timed(|| density_check(calc));
        self.timed(|| connectedness_check(calc, o.degree).record);
    }

    fn integral_checks(&mut self, calc: &Calculus) {
        let o = self.opts.clone();
        let start = Instant::now();
        let vol = match volume(calc) {
            Ok(v) => v,
            Err(e) => {
                self.push(AuditRecord::new("volume", Status::Fail, "no volume form").with_witness(e.to_string()), start);
                return;
            }
        };
        self.push(volume_record(calc, &vol), start);
        let start = Instant::now();
        let integ = integrability_check(calc, &vol, o.samples, o.sample_degree, o.seed);
        self.push(integ.clone(), start);
        let start = Instant::now();
        let div = match Divergence::new(calc, &vol, &integ) {
            Ok(d) => d,
            Err(e) => {
                self.push(AuditRecord::new("divergence", Status::Skipped, e.to_string()), start);
                return;
            }
        };
        let rec = div.leibniz_check(o.samples, o.sample_degree, o.seed).unwrap_or_else(error_record("divergence"));
        self.push(rec, start);
        let start = Instant::now();
        let rec = div.flatness_check().unwrap_or_else(error_record("flatness"));
        self.push(rec, start);
    }

    fn gk(&mut self) -> Option<(GkEstimate, Vec<u64>)> {
        let start = Instant::now();
        let result = filtration_dims(&self.doc.algebra, self.opts.gk_degree)
            .and_then(|t| gk_estimate(&t).map(|g| (g, t.dims)));
        match result {
            Ok((g, dims)) => {
                self.push(g.to_record(), start);
                Some((g, dims))
            }
            Err(e) => {
                self.push(AuditRecord::new("gk-dimension", Status::Fail, e.to_string()), start);
                None
            }
        }
    }
}

fn error_record(name: &'static str) -> impl Fn(spbw_core::SpbwError) -> AuditRecord {
    move |e| AuditRecord::new(name, Status::Fail, e.to_string())
}

/// One combined record over all generators.
fn twisted_leibniz(alg: &spbw_core::Algebra, samples: usize, degree: u32, seed: u64) -> AuditRecord {
    let mut witnesses = Vec::new();
    for i in 0..alg.ngens() {
        let pair = extend_sigma(alg, i).and_then(|s| extend_delta(alg, i).map(|d| (s, d)));
        let g = &alg.symbols().gens[i];
        match pair {
            Ok((s, d)) => {
                let rec = verify_twisted_leibniz(&s, &d, samples, degree, seed.wrapping_add(i as u64));
                witnesses.extend(rec.witnesses.iter().map(|w| format!("{g}: {w}")));
            }
            Err(e) => witnesses.push(format!("{g}: {e}")),
        }
    }
    let mut rec = AuditRecord::new(
        "twisted-leibniz",
        Status::from_bool(witnesses.is_empty()),
        format!("{samples} sampled pairs of degree <= {degree} per generator"),
    );
    rec.witnesses = witnesses;
    rec
}

fn config(doc: &PresentationDoc, o: &Options) -> Config {
    Config {
        mode: doc.calculus.as_ref().map(|c| c.mode.as_str().to_string()),
        degree: o.degree,
        pbw_degree: o.pbw_degree,
        samples: o.samples,
        sample_degree: o.sample_degree,
        leibniz_samples: o.leibniz_samples,
        gk_degree: o.gk_degree,
        seed: o.seed,
    }
}

fn empty_report(doc: &PresentationDoc, command: &str, o: &Options) -> Report {
    Report {
        schema: SCHEMA.into(),
        algebra: doc.name.clone(),
        command: command.into(),
        config: config(doc, o),
        result: None,
        checks: Vec::new(),
        calculus_dim: None,
        gk: None,
        verdict: None,
        timing: Timing { total_us: 0 },
    }
}

/// Normal form of an expression in the document's algebra.
pub fn normalize(doc: &PresentationDoc, expr: &str, ov: &Overrides) -> Result<Report, CliError> {
    let start = Instant::now();
    let opts = ov.apply(doc.options.clone(), None);
    let f = eval_in(&doc.algebra, expr).map_err(|diag| CliError::Parse { path: "expression".into(), diag })?;
    let mut r = empty_report(doc, "normalize", &opts);
    r.result = Some(doc.algebra.render(&f));
    r.timing.total_us = start.elapsed().as_micros() as u64;
    Ok(r)
}

pub fn run(doc: &PresentationDoc, command: Command, ov: &Overrides) -> Result<Report, CliError> {
    let start = Instant::now();
    let opts = ov.apply(doc.options.clone(), Some(command));
    let mut run = Run { doc, opts: opts.clone(), checks: Vec::new(), records: Vec::new() };
    let mut report = empty_report(doc, command.as_str(), &opts);
    match command {
        Command::CheckPbw => {
            run.pbw();
        }
        Command::CheckHypotheses => run.hypotheses(),
        Command::CalculusCheck => {
            if let Some(calc) = run.calculus()? {
                report.calculus_dim = Some(calc.dim());
                run.calculus_checks(&calc);
            }
        }
        Command::Gkdim => {
            if let Some((g, dims)) = run.gk() {
                report.gk = Some(Gk::new(&g, dims));
            }
        }
        Command::Smooth | Command::Report => {
            let mut gk = None;
            if run.pbw() {
                run.hypotheses();
                if let Some(calc) = run.calculus()? {
                    report.calculus_dim = Some(calc.dim());
                    run.calculus_checks(&calc);
                    run.integral_checks(&calc);
                    gk = run.gk();
                }
            }
            report.gk = gk.as_ref().map(|(g, dims)| Gk::new(g, dims.clone()));
            let verdict = smoothness_verdict(run.records.clone(), report.calculus_dim, gk.map(|(g, _)| g)).verdict;
            report.verdict = Some(VerdictDoc::from(&verdict));
        }
    }
    report.checks = run.checks;
    report.timing.total_us = start.elapsed().as_micros() as u64;
    Ok(report)
}
