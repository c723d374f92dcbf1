//! One line per acceptance criterion; all arithmetic is exact, so every
//! comparison below is equality with tolerance zero. Time limits are in seconds.

use std::time::{Duration, Instant};

use spbw_cli::corpus::corpus;
use spbw_cli::dsl::{parse_presentation, PresentationDoc};
use spbw_cli::pipeline::{run, Command, Overrides};
use spbw_core::algebra::power::power_commute_closed;
use spbw_core::algebra::rewrite::{normalize_word, pbw_consistency_check, Letter, Order};
use spbw_core::calculus::checks::{
    connectedness_check, d_squared_check, graded_leibniz_check, integrability_check, volume,
};
use spbw_core::calculus::integral::Divergence;
use spbw_core::exponents;
use spbw_core::extended::{extend_delta, extend_sigma, hypothesis_check, verify_twisted_leibniz};
use spbw_core::ore::{ore_case_classify, ore_nu_maps, OreCase};
use spbw_core::{Calculus, CoeffPoly, Scalar};

const SEED: u64 = 0;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, pass_detail: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Outcome { ok: true, detail: pass_detail.into() }
    } else {
        Outcome { ok: false, detail: failures.join("; ") }
    }
}

fn docs() -> Vec<PresentationDoc> {
    corpus().into_iter().filter(|d| d.name != "broken").collect()
}

fn calculus_of(doc: &PresentationDoc) -> Calculus {
    let spec = doc.calculus_spec().expect("calculus block").expect("spec builds");
    Calculus::new(&doc.algebra, spec).expect("calculus builds")
}

fn within(start: Instant, secs: u64, failures: &mut Vec<String>) {
    let t = start.elapsed();
    if t > Duration::from_secs(secs) {
        failures.push(format!("took {:.1}s, limit {secs}s", t.as_secs_f64()));
    }
}

fn c1_pbw() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for doc in corpus() {
        let rec = pbw_consistency_check(&doc.algebra, 4);
        if doc.name == "broken" {
            if rec.passed() || !rec.witnesses.iter().any(|w| w == "word: x3*x2*x1") {
                failures.push(format!("broken: expected failure at x3*x2*x1, got {rec:?}"));
            }
        } else if !rec.passed() {
            failures.push(format!("{}: {}", doc.name, rec.summary));
        }
    }
    within(start, 5, &mut failures);
    outcome(failures, "8 consistent, broken fails at x3*x2*x1")
}

fn c2_powers() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for doc in corpus().into_iter().filter(|d| d.name != "broken") {
        let alg = &doc.algebra;
        for e in exponents::all_up_to(alg.ncoeffs(), 3) {
            let r = CoeffPoly::monomial(e, Scalar::one());
            for i in 0..alg.ngens() {
                for m in 0..=8 {
                    let closed = power_commute_closed(alg, i, m, &r).expect("sigma and delta commute");
                    let mut word = vec![Letter::Gen(i); m as usize];
                    word.push(Letter::Coef(r.clone()));
                    let oracle = normalize_word(alg, word, Order::Leftmost);
                    count += 1;
                    if closed != oracle {
                        failures.push(format!("{}: x{i}^{m} r differs for r = {}", doc.name, r.render(alg.symbols())));
                    }
                }
            }
        }
    }
    within(start, 10, &mut failures);
    outcome(failures, format!("{count} cases agree with the rewriting oracle"))
}

fn c3_extended() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for doc in docs() {
        let alg = &doc.algebra;
        if !hypothesis_check(alg).h_block() {
            continue;
        }
        for i in 0..alg.ngens() {
            let rec = verify_twisted_leibniz(
                &extend_sigma(alg, i).unwrap(),
                &extend_delta(alg, i).unwrap(),
                100,
                4,
                SEED + i as u64,
            );
            checked += 1;
            if !rec.passed() {
                failures.push(format!("{} generator {i}: {:?}", doc.name, rec.witnesses));
            }
        }
    }
    within(start, 30, &mut failures);
    outcome(failures, format!("{checked} lifted derivations, 100 samples each"))
}

fn c4_ore() -> Outcome {
    let t = CoeffPoly::var(0);
    let int = Scalar::from_int;
    let q = Scalar::param(0);
    let cases = [
        ("Jordan", int(1), int(0), t.pow(2), OreCase::A),
        ("Weyl", int(1), int(0), CoeffPoly::one(), OreCase::A),
        ("U(n2)", int(1), int(0), t.clone(), OreCase::A),
        ("shifted constant", int(1), int(1), CoeffPoly::from_int(5), OreCase::B),
        ("quantum plane", q.clone(), int(0), CoeffPoly::zero(), OreCase::C),
        ("q = 2, p = t^2", int(2), int(0), t.pow(2), OreCase::None),
    ];
    let mut failures = Vec::new();
    for (name, q, r, p, expect) in cases {
        let got = ore_case_classify(&q, &r, &p);
        if got != expect {
            failures.push(format!("{name}: {got} instead of {expect}"));
            continue;
        }
        match (expect, ore_nu_maps(&q, &r, &p, &["q"])) {
            (OreCase::None, Err(_)) => {}
            (OreCase::None, Ok(_)) => failures.push(format!("{name}: twists built outside the cases")),
            (_, Err(e)) => failures.push(format!("{name}: {e}")),
            (_, Ok(d)) => {
                for c in 0..2 {
                    let u = d.algebra.coord(c);
                    if d.nu_x.apply(&d.nu_t.apply(&u)) != d.nu_t.apply(&d.nu_x.apply(&u)) {
                        failures.push(format!("{name}: twists do not commute on {}", d.algebra.coord_name(c)));
                    }
                }
            }
        }
    }
    outcome(failures, "6 instantiations classified, twists commute on t and x")
}

fn c5_soundness() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for doc in docs() {
        let calc = calculus_of(&doc);
        for rec in [
            calc.compatibility(),
            d_squared_check(&calc, 6),
            graded_leibniz_check(&calc, 100, 4, SEED),
        ] {
            if !rec.passed() {
                failures.push(format!("{} {}: {:?}", doc.name, rec.name, rec.witnesses));
            }
        }
    }
    within(start, 60, &mut failures);
    outcome(failures, "compatibility, d^2 = 0 to degree 6, graded Leibniz on 100 pairs")
}

fn c6_connected() -> Outcome {
    let mut failures = Vec::new();
    for doc in docs() {
        let c = connectedness_check(&calculus_of(&doc), 6);
        if c.kernel_dim != 1 {
            failures.push(format!("{}: kernel dimension {}", doc.name, c.kernel_dim));
        }
    }
    outcome(failures, "kernel of d is the scalars up to degree 6")
}

fn c7_integrability() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for doc in docs() {
        let calc = calculus_of(&doc);
        let rec = integrability_check(&calc, &volume(&calc).unwrap(), 50, 4, SEED);
        if !rec.passed() {
            failures.push(format!("{}: {:?}", doc.name, rec.witnesses));
        }
    }
    within(start, 60, &mut failures);
    outcome(failures, "first identity on all basis forms, second on 50 samples per k")
}

fn c8_divergence() -> Outcome {
    let mut failures = Vec::new();
    for doc in docs() {
        let calc = calculus_of(&doc);
        let vol = volume(&calc).unwrap();
        let integ = integrability_check(&calc, &vol, 50, 4, SEED);
        let div = Divergence::new(&calc, &vol, &integ).unwrap();
        for rec in [div.leibniz_check(50, 4, SEED).unwrap(), div.flatness_check().unwrap()] {
            if !rec.passed() {
                failures.push(format!("{} {}: {:?}", doc.name, rec.name, rec.witnesses));
            }
        }
    }
    outcome(failures, "divergence Leibniz on 50 pairs, curvature zero")
}

const MISUSE: &str = "name misuse\ncoeffs t\ngens x\ndelta x t = t^2\ncalculus theorem\n";

fn c9_verdicts() -> Outcome {
    let mut failures = Vec::new();
    let ov = Overrides::default();
    for doc in docs() {
        let r = run(&doc, Command::Smooth, &ov).unwrap();
        let v = r.verdict.as_ref().unwrap();
        let generators = doc.algebra.ncoords() as u32;
        if v.label != "certified-smooth" {
            failures.push(format!("{}: {} {:?}", doc.name, v.label, v.reasons));
        }
        if r.gk.as_ref().map(|g| g.estimate) != Some(generators) {
            failures.push(format!("{}: GK estimate differs from {generators}", doc.name));
        }
    }
    let misuse = parse_presentation(MISUSE).unwrap();
    let r = run(&misuse, Command::Smooth, &ov).unwrap();
    let v = r.verdict.unwrap();
    let mismatch = "dimension mismatch: N = 1, GK = 2".to_string();
    if v.label != "not-certified" || !v.reasons.contains(&mismatch) {
        failures.push(format!("misuse: {} {:?}", v.label, v.reasons));
    }
    outcome(failures, "8 certified, misuse not certified (N = 1, GK = 2)")
}

fn c10_end_to_end() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for doc in corpus() {
        let r = run(&doc, Command::Smooth, &Overrides::default()).unwrap();
        let text = r.normalized().to_json().unwrap();
        match std::fs::read_to_string(dir.join(format!("{}.json", doc.name))) {
            Ok(g) if g == text => {}
            Ok(_) => failures.push(format!("{}: report differs from golden file", doc.name)),
            Err(e) => failures.push(format!("{}: {e}", doc.name)),
        }
    }
    within(start, 120, &mut failures);
    outcome(failures, format!("9 reports match golden files in {:.1}s", start.elapsed().as_secs_f64()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("pbw consistency", c1_pbw),
        ("commutation formulas", c2_powers),
        ("extended maps", c3_extended),
        ("ore cases", c4_ore),
        ("calculus soundness", c5_soundness),
        ("connectedness", c6_connected),
        ("integrability", c7_integrability),
        ("divergence", c8_divergence),
        ("verdicts", c9_verdicts),
        ("end to end", c10_end_to_end),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {:>2} {:<22} {}  {}", k + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed.push(k + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
