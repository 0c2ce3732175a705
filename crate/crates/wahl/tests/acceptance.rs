//! One line per acceptance criterion, with its runtime against the budget.
//!
//! Runs without the libtest harness: `cargo test -p wahl --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::panic::{AssertUnwindSafe, catch_unwind};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::ledger::{self, DELTA_E, GCDS, GRAM, K_SQUARED};
use common::props;
use common::{gcd64, i};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use serde_json::json;
use wahl::classt::{ClassTTriple, Classification, classify, enumerate, invariants, smoothing_family, t_l, t_r};
use wahl::toric::gorenstein_index;
use wahl::verify::mutation::survey;
use wahl::verify::{
    GramData, Status, builtin, builtins, check_c4, check_c9, check_c10, check_simply_connected_sufficient, verify_all,
};
use wahl::{Characteristic, Rational};

type Check = Result<String, String>;

/// Name, body and budget in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn ch(p: u64) -> Characteristic {
    Characteristic::new(p).unwrap()
}

fn fx(k: u32) -> wahl::verify::Fixture {
    builtin(&format!("example-7.{k}")).unwrap()
}

fn tables() -> Check {
    let rows = ledger::table2();
    for row in &rows {
        ledger::check_row(row)?;
    }
    let got: Vec<_> = wahl::tables::table2().into_iter().map(|r| r.inv.triple).collect();
    let want: Vec<_> = rows.iter().map(|((d, n, a), ..)| ClassTTriple::from_i64(*d, *n, *a).unwrap()).collect();
    ensure(got == want, || "table 2 triples differ".into())?;
    let mut count = rows.len();
    for k in 2..=4 {
        for m in 3..=5 {
            let rows = ledger::table1(k, m);
            for row in &rows {
                ledger::check_row(row)?;
            }
            let got: Vec<_> = wahl::tables::table1(k, m).unwrap().into_iter().map(|r| r.inv.triple).collect();
            let want: Vec<_> = rows.iter().map(|((d, n, a), ..)| ClassTTriple::from_i64(*d, *n, *a).unwrap()).collect();
            ensure(got == want, || format!("table 1 differs at k={k}, m={m}"))?;
            count += rows.len();
        }
    }
    Ok(format!("{count} rows"))
}

fn k_ledger() -> Check {
    for (k, kx, sum) in K_SQUARED {
        let f = fx(k);
        let c9 = check_c9(&f);
        ensure(c9.status == Status::Pass, || format!("7.{k}: {}", c9.summary))?;
        ensure(c9.summary.starts_with(&format!("K_X^2 = {sum};")), || format!("7.{k}: {}", c9.summary))?;
        let r = verify_all(&f, ch(0)).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.k_x_squared == Some(i(kx)), || format!("7.{k}:\n{}", r.to_text()))?;
    }
    Ok("8 examples".into())
}

fn delta_e() -> Check {
    let mut count = 0;
    for (k, curves) in DELTA_E {
        let e = check_c10(&fx(k));
        let rows = e.details["curves"].as_array().ok_or("no curves")?;
        ensure(rows.len() == curves.len(), || format!("7.{k}: {} curves", rows.len()))?;
        for (row, (id, (num, den))) in rows.iter().zip(curves) {
            let value: Rational = serde_json::from_value(row["value"].clone()).map_err(|e| e.to_string())?;
            let want = Rational::new(i(*num), i(*den)).unwrap();
            ensure(row["id"] == *id && value == want, || format!("7.{k} {id}: {value}, want {want}"))?;
            ensure(row["exceeds_one"] == (value > Rational::one()), || format!("7.{k} {id}: predicate"))?;
            count += 1;
        }
        if k == 5 {
            ensure(e.status == Status::Asserted && e.notes.iter().any(|n| n.contains("exactly 1")), || {
                format!("7.5 should surface exactly 1: {:?}", e.notes)
            })?;
        } else {
            ensure(e.status == Status::Pass, || format!("7.{k}: {}", e.summary))?;
        }
    }
    Ok(format!("{count} values"))
}

fn dets_and_gcds() -> Check {
    for (k, det) in GRAM {
        let e = check_c4(&fx(k), ch(5));
        ensure(e.status == Status::Pass && e.details["determinant"] == json!(det), || {
            format!("7.{k}: {}", e.summary)
        })?;
    }
    for n in 1..=12usize {
        let det = if n % 2 == 0 { n as i64 + 1 } else { -(n as i64 + 1) };
        let mut f = fx(3);
        f.gram = Some(GramData { description: format!("A_{n}"), a_blocks: vec![n], matrix: None, determinant: i(det) });
        let e = check_c4(&f, ch(0));
        ensure(e.status == Status::Pass, || format!("A_{n}: {}", e.summary))?;
    }
    for (k, dn) in GCDS {
        let e = check_simply_connected_sufficient(&fx(k));
        let rows = e.details["witnesses"].as_array().ok_or("no witnesses")?;
        let found = rows.iter().any(|r| r["dn"] == json!(dn) && r["gcd"] == json!(1));
        ensure(e.status == Status::Pass && found, || format!("7.{k}: gcd{dn:?} not witnessed"))?;
    }
    Ok("2 Gram, 12 A_n, 5 gcds".into())
}

fn classification_sweep() -> Check {
    const MAX_N: u64 = 20_000;
    // every class-T triple with d ≤ 3 and N ≤ MAX_N, tagged with its length
    let mut found: Vec<(usize, ClassTTriple)> = Vec::new();
    let mut pairs = 0u64;
    for big_n in 2..=MAX_N {
        for big_q in 1..big_n {
            if gcd64(big_n as i64, big_q as i64) != 1 {
                continue;
            }
            pairs += 1;
            let c = classify(&i(big_n as i64), &i(big_q as i64)).map_err(|e| e.to_string())?;
            if let Classification::ClassT(t) = c
                && *t.d() <= i(3)
            {
                found.push((invariants(&t).l, t));
            }
        }
    }
    for max_l in 1..=8 {
        let want: BTreeSet<String> =
            found.iter().filter(|(l, _)| *l <= max_l).map(|(_, t)| t.to_string()).collect();
        let mut got = BTreeSet::new();
        // a class-T chain is never shorter than d
        for d in 1..=3.min(max_l as i64) {
            for t in enumerate(&i(d), max_l).map_err(|e| e.to_string())? {
                if t.d() * t.n() * t.n() <= i(MAX_N as i64) {
                    got.insert(t.to_string());
                }
            }
        }
        ensure(got == want, || {
            let extra: Vec<_> = got.difference(&want).collect();
            let missing: Vec<_> = want.difference(&got).collect();
            format!("max_l={max_l}: extra {extra:?}, missing {missing:?}")
        })?;
    }
    Ok(format!("{pairs} coprime pairs, {} triples", found.iter().filter(|(l, _)| *l <= 8).count()))
}

fn run_prop<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Check {
    run_prop("hj roundtrip", props::coprime_pair(300), props::hj_roundtrip_and_duality)?;
    run_prop("unimodularity", props::coprime_pair(300), props::unimodularity)?;
    run_prop("r sequence", props::word(4, 10), |w| props::r_sequence(&props::triple(&w)))?;
    run_prop("sum and delta", props::word(4, 10), |w| props::sum_and_delta(&props::triple(&w), w.1.len()))?;
    run_prop("delta squared", props::word(4, 10), |w| props::delta_squared_two_ways(&props::triple(&w)))?;
    run_prop("going up", props::word(4, 10), |w| props::going_up_laws(&props::triple(&w)))?;
    run_prop("blowup replay", props::script_steps(), |s| props::blowup_replay(&s))?;
    run_prop("pullback", props::contraction_case(), |c| props::pullback_orthogonality(&c))?;
    Ok("8 suites x 256 cases".into())
}

/// All triples with `dn² ≤ bound`; both going-up maps raise `n`.
fn triples_up_to(bound: i64) -> Vec<ClassTTriple> {
    let mut out = Vec::new();
    let mut stack: Vec<ClassTTriple> = (1..=bound / 4).map(|d| ClassTTriple::from_i64(d, 2, 1).unwrap()).collect();
    while let Some(t) = stack.pop() {
        if t.d() * t.n() * t.n() > i(bound) {
            continue;
        }
        stack.push(t_l(&t));
        stack.push(t_r(&t));
        out.push(t);
    }
    out
}

fn smoothing() -> Check {
    for d in 1..=6i64 {
        let t = ClassTTriple::from_i64(d, 2, 1).unwrap();
        for p in [0u64, 2, 3, 5] {
            let got = smoothing_family(&t, ch(p)).excluded_parameter;
            let absent = d == 1 || (p != 0 && (d % p as i64 == 0 || (d - 1) % p as i64 == 0));
            let want = (!absent).then(|| {
                let num = i(d).pow(d as usize);
                let den = i(d - 1).pow(d as usize - 1);
                Rational::new(num, den).unwrap()
            });
            ensure(got == want, || format!("d={d}, p={p}: {got:?}, want {want:?}"))?;
        }
    }
    let listed = [(2, (4, 1)), (3, (27, 4)), (4, (256, 27)), (5, (3125, 256)), (6, (46656, 3125))];
    for (d, (num, den)) in listed {
        let got = smoothing_family(&ClassTTriple::from_i64(d, 2, 1).unwrap(), ch(0)).excluded_parameter;
        ensure(got == Some(Rational::new(i(num), i(den)).unwrap()), || format!("d={d}: {got:?}"))?;
    }
    let all = triples_up_to(5000);
    for t in &all {
        let f = smoothing_family(t, ch(0));
        let cq = t.cyclic_quotient();
        let (big_n, big_q) = (i64::try_from(cq.n()).unwrap(), i64::try_from(cq.q()).unwrap());
        let scan = (1..=big_n).find(|j| (j * (1 + big_q)) % big_n == 0).unwrap();
        let ok = f.gorenstein_index == *t.n() && gorenstein_index(&cq) == *t.n() && i(scan) == *t.n();
        ensure(ok && f.group_order == *t.n(), || format!("{t}: index {}", f.gorenstein_index))?;
    }
    Ok(format!("{} triples", all.len()))
}

fn mutations() -> Check {
    let (mut killed, mut rejected, mut equivalent) = (0, 0, 0);
    for fx in builtins() {
        let s = survey(&fx);
        ensure(s.survived.is_empty(), || {
            let paths: Vec<String> = s.survived.iter().map(|m| format!("{} {}->{}", m.path, m.from, m.to)).collect();
            format!("{}: {} survivors {paths:?}", s.fixture, s.survived.len())
        })?;
        killed += s.killed.len();
        rejected += s.rejected.len();
        equivalent += s.equivalent.len();
    }
    Ok(format!("{killed} killed, {rejected} rejected, {equivalent} equivalent, 0 survived"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 table reproduction", tables, 1),
        ("2 example ledger", k_ledger, 1),
        ("3 delta.E values", delta_e, 1),
        ("4 determinants and gcds", dets_and_gcds, 1),
        ("5 classification oracle", classification_sweep, 30),
        ("6 property suites", property_suites, 60),
        ("7 smoothing emitter", smoothing, 5),
        ("8 mutation robustness", mutations, 60),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let (tag, detail) = match &outcome {
            Ok(info) if in_time => ("PASS", info.clone()),
            Ok(info) => ("FAIL", format!("{info}; over budget")),
            Err(e) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {name:<26} {:>8.3}s / {budget}s  {detail}", took.as_secs_f64());
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
