//! The ten acceptance criteria, one PASS/FAIL line each.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncsing::calculus::{
    cyclic_derivative, jacobi_generators, random_automorphism, split, substitute, Potential,
};
use ncsing::commslice::{parse_comm, CommPoly};
use ncsing::freealg::{parse_poly, Alphabet, NcJet, Word};
use ncsing::invariants::{
    analyze, coarse_type, family_fingerprint, Coarse, Dimension, FamilyTag, Jdim,
};
use ncsing::stdbasis::{reduce, reduce_randomized, Certificate, RewriteSystem};
use ncsing::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::oracle::Oracle;
use common::{family_corpus, potential, random_potential, terms, xy};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("{what} took {took:?}, limit {limit:?}"))
    }
}

fn show(jet: &NcJet) -> String {
    jet.to_string()
}

fn oracle_dims(f: &Potential, cap: usize) -> Vec<u64> {
    Oracle::new(f.alphabet().len(), cap).jacobi_dims(&terms(f.jet()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = potential("x^4 + x*y^2", 12);
    let a = analyze(&f, 12).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start, "cap 12 analysis")?;
    for cap in [12, 13, 16] {
        let a = analyze(&potential("x^4 + x*y^2", cap), cap).map_err(|e| e.to_string())?;
        let rules: Vec<String> = a.system.rules().iter().map(|r| r.format()).collect();
        ensure!(
            rules == ["x*y + y*x", "y^2 + 4*x^3", "y*x^3", "x^6"],
            "cap {cap}: rules {rules:?}"
        );
        ensure!(a.report.certificate == Certificate::Exact, "cap {cap}: not exact");
    }
    let alphabet = xy();
    let words: Vec<String> =
        a.staircase.words(12, 100).iter().map(|w| w.display(&alphabet).to_string()).collect();
    ensure!(
        words == ["1", "x", "y", "x^2", "y*x", "x^3", "y*x^2", "x^4", "x^5"],
        "standard words {words:?}"
    );
    ensure!(a.report.dimension == Dimension::Finite(9), "dimension {:?}", a.report.dimension);
    let expected: Vec<u64> = [2, 2, 2, 1, 1].into_iter().chain([0; 7]).collect();
    ensure!(a.report.coranks == expected, "coranks {:?}", a.report.coranks);
    Ok(format!("basis and 9 standard words, {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let a = xy();
    let d = |text: &str, v: &str| show(&cyclic_derivative(&parse_poly(text, &a, 10).unwrap(), v).unwrap());
    let expected = show(&parse_poly("x^2*y + x*y*x + y*x^2", &a, 10).unwrap());
    ensure!(d("x^3*y", "x") == expected, "d_x(x^3 y) = {}", d("x^3*y", "x"));
    ensure!(d("y^3", "y") == "3*y^2", "d_y(y^3) = {}", d("y^3", "y"));
    let gens: Vec<String> = jacobi_generators(&potential("x^4 + x*y^2", 10)).iter().map(show).collect();
    let want = [
        show(&parse_poly("4*x^3 + y^2", &a, 10).unwrap()),
        show(&parse_poly("x*y + y*x", &a, 10).unwrap()),
    ];
    ensure!(gens == want, "generators {gens:?}");
    Ok("three identities".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut library = Duration::ZERO;
    for n in 2..=12usize {
        let cap = n + 1;
        let f = potential(&format!("x^2 + y^{n}"), cap);
        let t = Instant::now();
        let a = analyze(&f, cap).map_err(|e| e.to_string())?;
        library += t.elapsed();
        ensure!(
            a.report.dimension == Dimension::Finite(n as u64 - 1),
            "n = {n}: dimension {:?}",
            a.report.dimension
        );
        let dims = oracle_dims(&f, cap);
        ensure!(dims[0] == 1, "n = {n}: oracle c_0 = {}", dims[0]);
        let safe = a.report.safe_degree;
        ensure!(
            a.report.coranks[..safe] == dims[1..=safe],
            "n = {n}: coranks {:?} oracle {:?}",
            a.report.coranks,
            dims
        );
        let oracle_total: u64 = dims[..=safe].iter().sum();
        ensure!(oracle_total == n as u64 - 1, "n = {n}: oracle dimension {oracle_total}");
    }
    within(Duration::from_secs(10), start, "sweep")?;
    Ok(format!("n = 2..12 agree with oracle, rewriting {library:?}, total {:?}", start.elapsed()))
}

fn corpus(cap: usize) -> Vec<(String, Potential)> {
    let mut out: Vec<(String, Potential)> = family_corpus()
        .into_iter()
        .map(|t| (t.to_string(), t.potential(cap).unwrap()))
        .collect();
    for seed in 1..=14 {
        let f = random_potential(seed, 5, cap);
        out.push((show(f.jet()), f));
    }
    out
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let cap = 10;
    let corpus = corpus(cap);
    ensure!(corpus.len() >= 30, "corpus has {} entries", corpus.len());
    for (name, f) in &corpus {
        let a = analyze(f, cap).map_err(|e| format!("{name}: {e}"))?;
        let dims = oracle_dims(f, cap);
        let safe = a.report.safe_degree;
        ensure!(
            a.report.coranks[..safe] == dims[1..=safe],
            "{name}: staircase {:?} oracle {:?}",
            a.report.coranks,
            &dims[1..]
        );
    }
    within(Duration::from_secs(120), start, "oracle suite")?;
    Ok(format!("{} potentials at cap {cap}, {:?}", corpus.len(), start.elapsed()))
}

fn criterion_5() -> Outcome {
    let cap = 12;
    for text in ["x^2", "x*y^2", "x*y^2 + x^3", "x^3 + x*y^3"] {
        let r = analyze(&potential(text, cap), cap).unwrap().report;
        ensure!(r.certificate == Certificate::Exact, "{text}: certificate {:?}", r.certificate);
        ensure!(r.jdim == Jdim::One, "{text}: jdim {:?}", r.jdim);
    }
    let mut zero: Vec<String> = (2..=8).map(|n| format!("x^2 + y^{n}")).collect();
    zero.push("x*y^2 + x^3 + x^4".into());
    zero.push("x^4 + x*y^2".into());
    for text in &zero {
        let r = analyze(&potential(text, cap), cap).unwrap().report;
        ensure!(r.jdim == Jdim::Zero, "{text}: jdim {:?}", r.jdim);
    }
    Ok(format!("4 with jdim 1, {} with jdim 0", zero.len()))
}

fn criterion_6() -> Outcome {
    let cap = 10;
    let mut checked = 0;
    for tag in FamilyTag::within_cap(Coarse::A, cap) {
        let fp = family_fingerprint(tag, cap).unwrap();
        ensure!(fp.coranks.iter().all(|&c| c <= 1), "{tag}: {:?}", fp.coranks);
        checked += 1;
    }
    for tag in FamilyTag::within_cap(Coarse::D, cap) {
        let c = family_fingerprint(tag, cap).unwrap().coranks;
        ensure!(c[..3] == [2, 2, 2] && c[3] <= 2, "{tag}: {c:?}");
        checked += 1;
    }
    let e = family_fingerprint(FamilyTag::E6(Some(4)), cap).unwrap();
    ensure!(e.coranks[..4] == [2, 3, 4, 4], "E_{{6,4}}: {:?}", e.coranks);
    checked += 1;
    for tag in family_corpus() {
        let fp = family_fingerprint(tag, cap).unwrap();
        ensure!(coarse_type(&fp) == tag.coarse(), "{tag}: row {:?}", coarse_type(&fp));
        let dims = oracle_dims(&tag.potential(cap).unwrap(), cap);
        let safe = fp.safe_degree;
        ensure!(fp.coranks[..safe] == dims[1..=safe], "{tag}: oracle {:?}", &dims[1..]);
    }
    Ok(format!("{checked} fingerprints in their rows, corpus families oracle-checked"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cap = 10;
    let a = xy();
    let inputs = ["x^4 + x*y^2", "x^2 + y^5", "x*y^2 + x^5 + x^4", "x^3 + x*y^3 + y^4", "x^2 + y^3"];
    for text in inputs {
        let f = potential(text, cap);
        let base = analyze(&f, cap).unwrap().report;
        for seed in 0..100 {
            let s = random_automorphism(&a, cap, seed, 2).unwrap();
            let g = Potential::new(substitute(f.jet(), &s).unwrap()).unwrap();
            let r = analyze(&g, cap).unwrap().report;
            let safe = base.safe_degree;
            ensure!(coarse_type(&r) == coarse_type(&base), "{text}, seed {seed}: coarse type");
            ensure!(
                r.dimension == base.dimension,
                "{text}, seed {seed}: {:?} vs {:?}",
                r.dimension,
                base.dimension
            );
            ensure!(
                r.coranks[..safe] == base.coranks[..safe],
                "{text}, seed {seed}: {:?} vs {:?}",
                r.coranks,
                base.coranks
            );
        }
    }
    within(Duration::from_secs(120), start, "500 trials")?;
    Ok(format!("500 trials, {:?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let cap = 9;
    let xyw = Alphabet::new(["x", "y", "w"]).unwrap();
    let f = Potential::parse("x^2 + y^2 + w^3", &xyw, cap).unwrap();
    let s = split(&f).unwrap();
    ensure!(s.r == 2, "r = {}", s.r);
    let g = s.reduced().ok_or("no remainder")?;
    let w = Alphabet::new(["w"]).unwrap();
    let alone = Potential::parse("w^3", &w, cap).unwrap();
    let (rg, rw) = (analyze(&g, cap).unwrap().report, analyze(&alone, cap).unwrap().report);
    ensure!(rg == rw, "g = {}: {rg:?} vs {rw:?}", show(g.jet()));

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = xy();
    let mut trials = 0;
    while trials < 25 {
        let q: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
        if q[0] * q[2] == q[1] * q[1] {
            continue;
        }
        let quad = format!("({})*x^2 + ({})*x*y + ({})*y*x + ({})*y^2", q[0], q[1], q[1], q[2]);
        let higher = random_potential(rng.gen(), 5, cap);
        let jet = parse_poly(&quad, &a, cap).unwrap().add(higher.jet()).unwrap();
        let f = Potential::new(jet).unwrap();
        let s = split(&f).unwrap();
        ensure!(s.r == 2 && s.g.is_zero(), "{}: r = {}, g = {}", show(f.jet()), s.r, show(&s.g));
        let d = analyze(&f, cap).unwrap().report.dimension;
        ensure!(d == Dimension::Finite(1), "{}: dimension {d:?}", show(f.jet()));
        trials += 1;
    }
    Ok(format!("x^2 + y^2 + w^3 and {trials} nondegenerate potentials"))
}

fn criterion_9() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/e8_base.txt");
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let vars = Alphabet::new(["x", "y", "z", "t"]).unwrap();
    let base = parse_comm(text.trim(), &vars).map_err(|e| e.to_string())?;
    ensure!(base.len() == 40, "{} terms", base.len());
    let slice: CommPoly = base.substitute_zero("x").unwrap();
    ensure!(slice == parse_comm("y^5 + z^3 + t^2", &vars).unwrap(), "slice {slice}");
    ensure!(slice.to_string() == "y^5 + z^3 + t^2", "slice prints as {slice}");
    Ok(format!("{} terms slice to {slice}", base.len()))
}

fn random_jet(rng: &mut ChaCha8Rng, cap: usize) -> NcJet {
    let a = xy();
    let mut p = NcJet::zero(&a, cap);
    for _ in 0..rng.gen_range(1..=6) {
        let degree = rng.gen_range(0..=cap);
        let letters: Vec<u8> = (0..degree).map(|_| rng.gen_range(0..2)).collect();
        let c = Rational::from_integer(BigInt::from(rng.gen_range(-5..=5)));
        p = p.add(&NcJet::monomial(&a, cap, Word::from_letters(&letters), c)).unwrap();
    }
    p
}

fn criterion_10() -> Outcome {
    let cap = 10;
    let systems: Vec<RewriteSystem> = corpus(cap)
        .iter()
        .map(|(_, f)| analyze(f, cap).unwrap().system)
        .filter(|s| s.certificate() == Certificate::Exact)
        .collect();
    ensure!(!systems.is_empty(), "no exact systems");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut trials = 0;
    for round in 0..1200 {
        let sys = &systems[round % systems.len()];
        let p = random_jet(&mut rng, cap);
        let nf = reduce(&p, sys).unwrap();
        let again = reduce(&nf, sys).unwrap();
        ensure!(again == nf, "not idempotent on {}", show(&p));
        let other = reduce_randomized(&p, sys, &mut rng).unwrap();
        ensure!(other == nf, "{} reduces to {} and {}", show(&p), show(&nf), show(&other));
        let leads = sys.leads();
        ensure!(
            nf.terms().all(|(w, _)| leads.iter().all(|l| !w.contains(l))),
            "normal form {} has a reducible word",
            show(&nf)
        );
        trials += 1;
    }
    Ok(format!("{trials} trials over {} exact systems", systems.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("nine-dimensional example reproduced", criterion_1),
        ("derivative identities", criterion_2),
        ("A_n sweep against oracle", criterion_3),
        ("oracle equivalence suite", criterion_4),
        ("Jdim dichotomy", criterion_5),
        ("corank table conformance", criterion_6),
        ("automorphism invariance", criterion_7),
        ("splitting", criterion_8),
        ("E8 slice identity", criterion_9),
        ("confluence and idempotence", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
