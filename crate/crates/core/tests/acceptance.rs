//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{oracle_milnor, random_escape_poly, random_poly, x, y};
use equising::cli::parse;
use equising::complex::{disk_may_contain_zero, CRat};
use equising::family::{analyze, generic_invariants, specialize, value_text, Conclusion, PolyFamily, Theorem};
use equising::invariants::{b_infinity, default_precision, invariant_record, sigma_with_nu};
use equising::poly::rat;
use equising::roots::isolate_qpoly;
use equising::singular::{infinity_candidates, jump_polynomial, lambda_at, local_milnor, probe_values, sigma, PlaneGerm};
use equising::{Error, MPoly, QPoly, Rat, Var};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXAMPLE1: &str = "x*(x^2*y + t*x + 1)";
const EXAMPLE2: &str = "(x + t)*(x*y + 1)";
const EXAMPLE3: &str = "x*(x*(y + t*x^2) + 1)";

fn unit_family(text: &str) -> PolyFamily {
    PolyFamily::unit(parse(text).unwrap()).unwrap()
}

fn criterion1() {
    let fam = unit_family(EXAMPLE1);
    for tau in [rat(0, 1), rat(1, 3), rat(1, 1)] {
        let rec = invariant_record(&fam.at(&tau)).unwrap();
        assert!(rec.b_aff.is_empty(), "B_aff at {}", tau);
        assert_eq!(rec.b_inf.cardinality(), 1);
        assert_eq!(rec.b_inf.clusters[0].rational(), Some(Rat::zero()));
        assert_eq!((rec.lambda, rec.mu, rec.d, rec.k), (1, 0, 4, 4), "at {}", tau);
    }
    let a = analyze(&fam, None, &default_precision()).unwrap();
    assert_eq!(a.verdict.theorem, Some(Theorem::C));
    assert_eq!(a.verdict.conclusion, Conclusion::TopologicallyEquivalent);
}

fn criterion2() {
    let fam = unit_family(EXAMPLE2);
    let g = generic_invariants(&fam, &default_precision()).unwrap();
    let rec = &g.record;
    let mut values: Vec<String> = Vec::new();
    for c in &rec.b_aff {
        assert_eq!((c.mu, c.lambda), (1, 0));
        values.extend(c.values.as_ref().expect("rational values").iter().map(value_text));
    }
    values.sort();
    assert_eq!(values, vec!["0", "t"]);
    assert!(rec.b_inf.is_empty());

    let zero = specialize(&fam, &rat(0, 1), &default_precision()).unwrap();
    assert!(zero.b_aff.is_empty());
    assert_eq!(zero.b_inf.cardinality(), 1);
    assert_eq!(zero.b_inf.clusters[0].rational(), Some(Rat::zero()));

    let a = analyze(&fam, None, &default_precision()).unwrap();
    for name in ["#B_aff", "#B_inf"] {
        let row = a.constancy.row(name).unwrap();
        assert!(!row.constant, "{} constant", name);
        assert!(
            row.witnesses.iter().any(|w| w.lo <= Rat::zero() && Rat::zero() <= w.hi && w.value.is_ok()),
            "{} jump not located at 0",
            name
        );
    }
    assert_eq!(a.verdict.conclusion, Conclusion::HypothesesFail);
}

fn criterion3() {
    let fam = unit_family(EXAMPLE3);
    let a = analyze(&fam, None, &default_precision()).unwrap();
    let expected = [("mu", 0), ("lambda", 1), ("#B", 1), ("#B_aff", 0), ("#B_inf", 1)];
    for (name, value) in expected {
        let row = a.constancy.row(name).unwrap();
        assert!(row.constant && row.unresolved.is_empty(), "{} row fails", name);
        assert_eq!(row.generic, value, "{}", name);
    }
    let deg = a.constancy.row("deg").unwrap();
    assert!(!deg.constant);
    assert_eq!(deg.generic, 4);
    assert!(deg.witnesses.iter().any(|w| w.lo.is_zero() && w.hi.is_zero() && w.value.as_ref().map(|v| v[5]) == Ok(3)));
    let failing = a.constancy.rows.iter().filter(|r| !r.constant || !r.unresolved.is_empty()).count();
    assert_eq!(failing, 1);
    assert_eq!(a.verdict.conclusion, Conclusion::Inconclusive);
    assert!(!a.verdict.conclusion.is_equivalence());
}

fn criterion4() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut accepted = 0;
    let mut tries = 0;
    while accepted < 100 {
        tries += 1;
        assert!(tries < 2000, "too many rejections");
        let d = rng.gen_range(1..=6);
        let terms = rng.gen_range(1..=5);
        let f = random_poly(&mut rng, d, terms);
        match invariant_record(&f) {
            Ok(rec) => {
                assert_eq!(rec.k + 1, rec.mu + rec.lambda + rec.d, "{}", f);
                accepted += 1;
            }
            Err(Error::NonIsolated) => continue,
            Err(e) => panic!("{}: {}", f, e),
        }
    }
}

/// Compares the jumps at infinity of the discriminant route with the chart route.
fn routes_agree(f: &MPoly) -> Result<(), Error> {
    let inf = b_infinity(f)?;
    let avoid = infinity_candidates(f)?;
    let points = sigma_with_nu(f, &avoid)?;
    let probe = QPoly::linear_root(&probe_values(&avoid, 1)[0]);
    let q = inf.defining_polynomial().mul(&probe);
    let chart = jump_polynomial(f, &points, &q)?;
    let discriminant = inf.clusters.iter().fold(QPoly::one(), |acc, c| acc.mul(&c.factor.pow(c.lambda)));
    assert_eq!(chart.monic(), discriminant.monic(), "{}", f);
    for c in &inf.clusters {
        if let Some(r) = c.rational() {
            let mut total = 0;
            for p in sigma(f)? {
                total += lambda_at(f, &p, &r)?;
            }
            assert_eq!(total, c.lambda, "{} at {}", f, r);
        }
    }
    Ok(())
}

fn criterion5() {
    for text in [EXAMPLE1, EXAMPLE2, EXAMPLE3] {
        let fam = unit_family(text);
        for tau in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            routes_agree(&fam.at(&tau)).unwrap();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut accepted = 0;
    let mut tries = 0;
    while accepted < 20 {
        tries += 1;
        assert!(tries < 200, "too many rejections");
        let f = random_escape_poly(&mut rng, tries % 2 == 0);
        assert!(f.total_degree().unwrap() <= 5);
        if sigma(&f).unwrap().is_empty() {
            continue;
        }
        match routes_agree(&f) {
            Ok(()) => accepted += 1,
            Err(Error::NonIsolated) => continue,
            Err(e) => panic!("{}: {}", f, e),
        }
    }
}

fn criterion6() {
    for a in 2..=5u32 {
        for b in 2..=5u32 {
            let g = x().pow(a).add(&y().pow(b));
            let mu = local_milnor(&PlaneGerm::new(g.clone())).unwrap().mu;
            assert_eq!(mu, (a - 1) * (b - 1));
            assert_eq!(oracle_milnor(&g), mu as usize);
        }
    }
}

fn criterion7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let precision = rat(1, 1_000_000);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let mut roots: Vec<Rat> = Vec::new();
        while roots.len() < n {
            let r = Rat::new(rng.gen_range(-60i64..=60).into(), rng.gen_range(1i64..=7).into());
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let p = roots.iter().fold(QPoly::one(), |acc, r| acc.mul(&QPoly::linear_root(r)));
        let set = isolate_qpoly(&p, Var::S, &precision).unwrap();
        assert_eq!(set.cardinality(), n);
        assert!(set.verify());
        for (i, b) in set.boxes.iter().enumerate() {
            assert_eq!(b.multiplicity, 1);
            assert!(b.radius <= precision);
            assert!(disk_may_contain_zero(&p, &b.center, &b.radius));
            assert!(set.boxes[i + 1..].iter().all(|o| b.disjoint(o)));
        }
        for r in &roots {
            let z = CRat::real(r.clone());
            assert_eq!(set.boxes.iter().filter(|b| b.contains(&z)).count(), 1, "root {}", r);
        }
    }
}

fn criterion8() {
    let a = analyze(&unit_family(EXAMPLE1), Some(32), &default_precision()).unwrap();
    let b = a.braid.unwrap();
    assert_eq!(b.strands.len(), 1);
    assert!(b.events.is_empty());

    let width = rat(1, 256);
    for interval in [(rat(0, 1), rat(1, 1)), (rat(-1, 1), rat(1, 1))] {
        let fam = PolyFamily::new(parse(EXAMPLE2).unwrap(), interval).unwrap();
        let b = analyze(&fam, Some(32), &default_precision()).unwrap().braid.unwrap();
        assert!(
            b.events.iter().any(|e| e.lo <= Rat::zero() && Rat::zero() <= e.hi && &e.hi - &e.lo <= width),
            "no event box around 0"
        );
    }
}

fn criterion9() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("run{}.json", i));
        let status = Command::new(env!("CARGO_BIN_EXE_equising"))
            .args(["family", "--poly", EXAMPLE2, "--json", path.to_str().unwrap()])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(3));
        reports.push(std::fs::read(&path).unwrap());
    }
    assert!(!reports[0].is_empty());
    assert_eq!(reports[0], reports[1]);
}

fn main() {
    let criteria: [(&str, fn(), u64); 9] = [
        ("Example 1 regression", criterion1, 5),
        ("Example 2 regression", criterion2, 5),
        ("Example 3 regression", criterion3, 5),
        ("k-identity on random polynomials", criterion4, 60),
        ("chart route vs discriminant route", criterion5, 120),
        ("local Milnor oracle", criterion6, 10),
        ("root isolation certification", criterion7, 30),
        ("braid integrity", criterion8, 10),
        ("determinism of family reports", criterion9, 60),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("    {}", info)));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = ok && in_time;
        failed += usize::from(!pass);
        println!(
            "criterion {}: {} {} ({:.2} s, limit {} s){}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            elapsed.as_secs_f64(),
            limit,
            if ok && !in_time { " over time" } else { "" }
        );
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
