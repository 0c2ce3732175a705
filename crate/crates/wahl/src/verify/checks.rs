use std::collections::BTreeMap;

use serde_json::{Value, json};

use crate::classt::{ClassTInvariants, Classification, classify, invariants};
use crate::hjcore::{ChainWeights, Characteristic, Int, Rational, gcd, hj_eval};
use crate::json::{int_value, ints_value, rational_value};
use crate::surface::{a_n_matrix, block_diagonal, determinant};

use super::{Attachment, Claim, Fixture, ReportEntry, Status};

const REQUIRED_ASSERTED: [&str; 6] = ["C1", "C2", "C3", "C5", "C6", "C7"];
const CONSUMED_FACTS: [&str; 4] = ["C4", "C10", "C11", "simply-connected"];

/// Per-chain classification shared by several checks.
pub(crate) struct Context {
    chains: Vec<std::result::Result<ClassTInvariants, String>>,
}

impl Context {
    pub(crate) fn new(fx: &Fixture) -> Context {
        let chains = fx.chains.iter().map(|c| classify_chain(&c.weights)).collect();
        Context { chains }
    }

    fn chain(&self, idx: usize) -> std::result::Result<&ClassTInvariants, String> {
        match self.chains.get(idx.wrapping_sub(1)) {
            None => Err(format!("chain index {idx} out of range")),
            Some(Err(e)) => Err(format!("chain {idx}: {e}")),
            Some(Ok(inv)) => Ok(inv),
        }
    }
}

fn classify_chain(weights: &[Int]) -> std::result::Result<ClassTInvariants, String> {
    let w = ChainWeights::new(weights.to_vec()).map_err(|e| e.to_string())?;
    let (n, q) = hj_eval(&w);
    match classify(&n, &q).map_err(|e| e.to_string())? {
        Classification::ClassT(t) => Ok(invariants(&t)),
        other => Err(format!("type ({n},{q}) is {}, not class T", other.kind())),
    }
}

fn status_of(problems: &[String]) -> Status {
    if problems.is_empty() { Status::Pass } else { Status::Fail }
}

fn asserted_or_missing(fx: &Fixture, key: &str, condition: &str, what: &str) -> ReportEntry {
    match fx.fact(key) {
        Some(f) => ReportEntry::new(condition, Status::Asserted, format!("{what} not recomputed"), Value::Null)
            .with_citation(Some(f.citation.clone())),
        None => ReportEntry::new(condition, Status::NotCheckable, format!("no {what} data and no citation"), Value::Null),
    }
}

/// Removes every factor of the excluded primes from `det`.
fn strip_excluded(det: &Int, excluded: &[Characteristic]) -> Int {
    let mut r = det.clone();
    for p in excluded {
        let p = Int::from(p.value());
        if p <= Int::ONE {
            continue;
        }
        while r != Int::ZERO && (&r % &p) == Int::ZERO {
            r = &r / &p;
        }
    }
    r
}

/// Determinant of the Gram block: recomputed, compared with the stated value, nonzero
/// modulo `p`, and divisible by no prime outside the excluded list.
pub fn check_c4(fx: &Fixture, p: Characteristic) -> ReportEntry {
    match fx.excluded() {
        Ok(ex) => c4_with(fx, p, &ex),
        Err(e) => ReportEntry::new("C4", Status::Fail, e.to_string(), Value::Null),
    }
}

pub(crate) fn c4_with(fx: &Fixture, p: Characteristic, excluded: &[Characteristic]) -> ReportEntry {
    let Some(g) = &fx.gram else {
        return asserted_or_missing(fx, "C4", "C4", "Gram block");
    };
    let mut problems = Vec::new();
    let mut blocks = Vec::new();
    for &n in &g.a_blocks {
        if n == 0 {
            problems.push("empty A_n block".to_string());
        } else {
            blocks.push(a_n_matrix(n));
        }
    }
    if let Some(m) = &g.matrix {
        if m.iter().any(|row| row.len() != m.len()) {
            problems.push("explicit block is not square".to_string());
        } else {
            blocks.push(m.clone());
        }
    }
    if blocks.is_empty() && problems.is_empty() {
        problems.push("no blocks".to_string());
    }
    if !problems.is_empty() {
        return ReportEntry::new("C4", Status::Fail, problems.join("; "), Value::Null);
    }
    let det = determinant(&block_diagonal(&blocks));
    if det != g.determinant {
        problems.push(format!("determinant is {det}, stated {}", g.determinant));
    }
    if det == Int::ZERO {
        problems.push("determinant vanishes".to_string());
    } else if p.divides(&det) {
        problems.push(format!("characteristic {p} divides the determinant {det}"));
    }
    let cofactor = strip_excluded(&det, excluded);
    let mut notes = Vec::new();
    if det != Int::ZERO && cofactor != Int::ONE && cofactor != -Int::ONE {
        notes.push(format!("primes dividing {cofactor} also divide the determinant but are not excluded"));
    }
    let blocks_text = g.a_blocks.iter().map(|n| format!("A{n}")).collect::<Vec<_>>().join("+");
    let summary = if problems.is_empty() {
        format!("det({}) = {det}, nonzero in characteristic {p}", g.description)
    } else {
        problems.join("; ")
    };
    let details = json!({
        "description": g.description,
        "a_blocks": blocks_text,
        "determinant": int_value(&det),
        "stated": int_value(&g.determinant),
        "unexcluded_cofactor": int_value(&cofactor),
    });
    ReportEntry::new("C4", status_of(&problems), summary, details).with_notes(notes)
}

/// Every chain is of class T with the stated triple.
pub fn check_c8(fx: &Fixture) -> ReportEntry {
    let mut problems = Vec::new();
    let mut rows = Vec::new();
    let mut parts = Vec::new();
    for (k, ch) in fx.chains.iter().enumerate() {
        let label = &ch.label;
        match classify_chain(&ch.weights) {
            Err(e) => {
                problems.push(format!("{label}: {e}"));
                rows.push(json!({ "label": label, "weights": ints_value(&ch.weights), "error": e }));
            }
            Ok(inv) => {
                let t = &inv.triple;
                let got = vec![t.d().clone(), t.n().clone(), t.a().clone()];
                if got != ch.expected {
                    problems.push(format!("{label}: chain is {t}, stated {:?}", ch.expected.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
                }
                let cq = t.cyclic_quotient();
                rows.push(json!({
                    "label": label,
                    "chain": k + 1,
                    "weights": ints_value(&ch.weights),
                    "n": int_value(cq.n()),
                    "q": int_value(cq.q()),
                    "triple": ints_value(&got),
                    "stated": ints_value(&ch.expected),
                }));
                parts.push(format!("{label} {t}"));
            }
        }
    }
    if fx.chains.is_empty() {
        problems.push("no chains".to_string());
    }
    let summary = if problems.is_empty() { parts.join(", ") } else { problems.join("; ") };
    ReportEntry::new("C8", status_of(&problems), summary, json!({ "chains": rows }))
}

/// `K_X² = K_M² + Σ δ_i` against the target, plus `K_M² + ρ(M) = 10`.
pub fn check_c9(fx: &Fixture) -> ReportEntry {
    let ctx = Context::new(fx);
    let mut problems = Vec::new();
    let mut deltas = Vec::new();
    for k in 1..=fx.chains.len() {
        match ctx.chain(k) {
            Ok(inv) => deltas.push(inv.delta.clone()),
            Err(e) => problems.push(e),
        }
    }
    let noether = &fx.k_m_squared + &fx.picard_rank_m;
    if noether != Int::from(10) {
        problems.push(format!("K_M^2 + rho(M) = {noether}, a rational surface has 10"));
    }
    if !problems.is_empty() || deltas.is_empty() {
        if deltas.is_empty() {
            problems.push("no chains".to_string());
        }
        return ReportEntry::new("C9", Status::Fail, problems.join("; "), json!({ "noether": int_value(&noether) }));
    }
    let total: Int = deltas.iter().fold(fx.k_m_squared.clone(), |acc, d| acc + d);
    if total != fx.target_k_squared {
        problems.push(format!("K_X^2 = {total}, stated {}", fx.target_k_squared));
    }
    let shown = if fx.displayed_deltas.is_empty() { deltas.clone() } else { fx.displayed_deltas.clone() };
    if !groups_into(&deltas, &shown) {
        problems.push(format!(
            "displayed summands ({}) do not group the chain deltas ({})",
            join_ints(&shown),
            join_ints(&deltas)
        ));
    }
    let mut expr = fx.k_m_squared.to_string();
    for d in &shown {
        expr.push_str(&format!(" + {d}"));
    }
    let summary = if problems.is_empty() {
        format!("K_X^2 = {expr} = {total}; K_M^2 + rho(M) = 10")
    } else {
        problems.join("; ")
    };
    let details = json!({
        "k_m_squared": int_value(&fx.k_m_squared),
        "deltas": ints_value(&deltas),
        "displayed_deltas": ints_value(&shown),
        "k_x_squared": int_value(&total),
        "target": int_value(&fx.target_k_squared),
        "noether": int_value(&noether),
    });
    ReportEntry::new("C9", status_of(&problems), summary, details)
}

fn join_ints(v: &[Int]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Whether the chain deltas can be split into groups whose sums are the displayed summands.
fn groups_into(deltas: &[Int], shown: &[Int]) -> bool {
    fn place(deltas: &[Int], left: &mut [Int]) -> bool {
        let Some((d, rest)) = deltas.split_first() else {
            return left.iter().all(|x| *x == Int::ZERO);
        };
        for i in 0..left.len() {
            if left[i] >= *d {
                left[i] -= d;
                let ok = place(rest, left);
                left[i] += d;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut left = shown.to_vec();
    !shown.is_empty() && shown.len() <= deltas.len() && place(deltas, &mut left)
}

fn incidence_problems(ctx: &Context, a: &Attachment) -> std::result::Result<(Rational, bool, bool), String> {
    let inv = ctx.chain(a.chain)?;
    if a.component == 0 || a.component > inv.l {
        return Err(format!("component {} of chain {} out of range 1..={}", a.component, a.chain, inv.l));
    }
    let b = &inv.b.as_slice()[a.component - 1];
    if a.self_int != -b.clone() {
        return Err(format!(
            "component {} of chain {} has self-intersection {}, stated {}",
            a.component, a.chain, -b.clone(), a.self_int
        ));
    }
    if a.multiplicity < Int::ONE {
        return Err(format!("multiplicity {} is not positive", a.multiplicity));
    }
    let contribution = &inv.c[a.component - 1] * &Rational::from(a.multiplicity.clone());
    let two = Int::from(2);
    let w = inv.b.as_slice();
    let in_head = w[..a.component].iter().all(|x| *x == two);
    let in_tail = w[a.component - 1..].iter().all(|x| *x == two);
    let is_t21 = *inv.triple.n() == two;
    Ok((contribution, in_head || in_tail, is_t21))
}

/// `Δ·E > 1` for the listed (−1)-curves, each summand matched against its displayed value.
pub fn check_c10(fx: &Fixture) -> ReportEntry {
    c10_with(fx, &Context::new(fx))
}

pub(crate) fn c10_with(fx: &Fixture, ctx: &Context) -> ReportEntry {
    if fx.minus_one_curves.is_empty() {
        return asserted_or_missing(fx, "C10", "C10", "(-1)-curve");
    }
    let one = Rational::one();
    let mut status = Status::Pass;
    let mut rows = Vec::new();
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    let mut citation = None;
    for e in &fx.minus_one_curves {
        let mut problems = Vec::new();
        let mut contributions = Vec::new();
        let mut end_two = false;
        let mut meets_t21 = false;
        let mut meets_big = false;
        for a in &e.attachments {
            match incidence_problems(ctx, a) {
                Ok((c, two_string, t21)) => {
                    contributions.push(c);
                    end_two |= two_string;
                    if t21 {
                        meets_t21 = true;
                    } else {
                        meets_big = true;
                    }
                }
                Err(m) => problems.push(format!("{}: {m}", e.id)),
            }
        }
        if e.attachments.is_empty() {
            problems.push(format!("{} meets no chain", e.id));
        }
        let mut displayed = Vec::new();
        if e.displayed.len() != e.attachments.len() {
            problems.push(format!("{}: {} displayed summands for {} attachments", e.id, e.displayed.len(), e.attachments.len()));
        }
        for s in &e.displayed {
            match Rational::new(s.r.clone(), s.n.clone()) {
                Ok(x) => displayed.push(&one - &x),
                Err(_) => problems.push(format!("{}: displayed summand 1 - {}/{} is undefined", e.id, s.r, s.n)),
            }
        }
        if problems.is_empty() {
            for (k, (c, d)) in contributions.iter().zip(&displayed).enumerate() {
                if c != d {
                    problems.push(format!("{}: summand {} is {c}, displayed {d}", e.id, k + 1));
                }
            }
        }
        let value: Rational = contributions.iter().cloned().sum();
        let exceeds = value > one;
        let mut distinct: Vec<(usize, usize)> = e.attachments.iter().map(|a| (a.chain, a.component)).collect();
        distinct.sort();
        distinct.dedup();
        let lemma = json!({
            "meets_two_components": distinct.len() >= 2,
            "t21_rule": !meets_t21 || meets_big,
            "meets_end_two_string": end_two,
        });
        let curve_status = if !problems.is_empty() {
            Status::Fail
        } else if exceeds {
            Status::Pass
        } else if let Some(f) = fx.fact("C10") {
            notes.push(format!("{}: the displayed sum evaluates to exactly {value}, not more than 1", e.id));
            citation = Some(f.citation.clone());
            Status::Asserted
        } else {
            problems.push(format!("{}: Delta.E = {value} is not > 1", e.id));
            Status::Fail
        };
        status = status.combine(curve_status);
        let route = if end_two { "direct" } else { "direct, lemma conditions also hold" };
        parts.push(if problems.is_empty() {
            format!("{} {value}{}", e.id, if exceeds { " > 1" } else { " (not > 1)" })
        } else {
            problems.join("; ")
        });
        rows.push(json!({
            "id": e.id,
            "contributions": contributions.iter().map(rational_value).collect::<Vec<_>>(),
            "displayed": displayed.iter().map(rational_value).collect::<Vec<_>>(),
            "value": rational_value(&value),
            "exceeds_one": exceeds,
            "status": curve_status.as_str(),
            "route": route,
            "lemma": lemma,
        }));
    }
    ReportEntry::new("C10", status, parts.join("; "), json!({ "curves": rows }))
        .with_citation(citation)
        .with_notes(notes)
}

/// Each chain is flanked by curves `Γ`, `Γ'` of `B⁺` meeting its two ends once.
pub fn check_c11(fx: &Fixture) -> ReportEntry {
    c11_with(fx, &Context::new(fx))
}

pub(crate) fn c11_with(fx: &Fixture, _ctx: &Context) -> ReportEntry {
    let Some(flanks) = &fx.flanking else {
        return asserted_or_missing(fx, "C11", "C11", "flanking");
    };
    let mut problems = Vec::new();
    let mut sources: Vec<String> = Vec::new();
    let m = fx.chains.len();
    for f in flanks {
        if f.chain == 0 || f.chain > m {
            problems.push(format!("flank refers to chain {} of {m}", f.chain));
        }
        if !f.source.is_empty() && !sources.contains(&f.source) {
            sources.push(f.source.clone());
        }
    }
    for k in 1..=m {
        let here: Vec<_> = flanks.iter().filter(|f| f.chain == k).collect();
        let label = &fx.chains[k - 1].label;
        if here.len() != 1 {
            problems.push(format!("{label} has {} flank records", here.len()));
            continue;
        }
        let f = here[0];
        let l = fx.chains[k - 1].weights.len();
        let once = |c: &super::FlankCurve, comp: usize| {
            c.meets.len() == 1 && c.meets[0].component == comp && c.meets[0].multiplicity == Int::ONE
        };
        if !once(&f.gamma, 1) {
            problems.push(format!("{label}: {} does not meet component 1 exactly once and nothing else", f.gamma.id));
        }
        if !once(&f.gamma_prime, l) {
            problems.push(format!("{label}: {} does not meet component {l} exactly once and nothing else", f.gamma_prime.id));
        }
        if !f.gamma.in_b_plus || !f.gamma_prime.in_b_plus {
            problems.push(format!("{label}: flanking curve outside B+"));
        }
        if f.gamma.id == f.gamma_prime.id {
            problems.push(format!("{label}: both flanks are {}", f.gamma.id));
        }
    }
    let summary = if problems.is_empty() {
        format!("every chain flanked at both ends ({m})")
    } else {
        problems.join("; ")
    };
    let notes = sources.iter().map(|s| format!("adjacency source: {s}")).collect();
    ReportEntry::new("C11", status_of(&problems), summary, json!({ "chains": m })).with_notes(notes)
}

/// `A3` from the listed exceptional curves, then the ampleness verdict it implies.
pub fn check_a3_and_ampleness(fx: &Fixture) -> ReportEntry {
    let a = &fx.ampleness;
    let minus_two: Vec<&str> = fx
        .other_exceptional_curves
        .iter()
        .filter(|c| c.self_int == Int::from(-2))
        .map(|c| c.id.as_str())
        .collect();
    let a3 = minus_two.is_empty();
    let (verdict, reason, via_bespoke) = if !a3 {
        (Some(Claim::NotAmple), format!("A3 fails: {} is a (-2)-curve outside D", minus_two.join(", ")), false)
    } else if a.a2 == Some(false) {
        (Some(Claim::NotAmple), "A2 fails, and ampleness forces A2 and A3".to_string(), false)
    } else if a.a1 == Some(true) {
        (Some(Claim::Ample), "A1 and A3 hold".to_string(), false)
    } else if a.b_contains_j && a.a2 == Some(true) {
        (Some(Claim::Ample), "B contains J1 or J2, and A2 and A3 hold".to_string(), false)
    } else if a.bespoke.is_some() {
        (Some(Claim::Ample), "construction-specific argument".to_string(), true)
    } else {
        (None, "A1, A2 and A3 do not decide ampleness".to_string(), false)
    };
    let claim = |c: Claim| match c {
        Claim::Ample => "ample",
        Claim::NotAmple => "not ample",
    };
    let (status, summary) = match verdict {
        None => (Status::NotCheckable, reason.clone()),
        Some(v) if v != a.claimed => {
            (Status::Fail, format!("{reason}, so K_X is {}; stated {}", claim(v), claim(a.claimed)))
        }
        Some(v) if via_bespoke => (Status::Asserted, format!("K_X {} by a {reason}", claim(v))),
        Some(v) => (Status::Pass, format!("{reason}, so K_X is {}", claim(v))),
    };
    let mut notes = vec!["A3 checked against the listed exceptional curves of M only".to_string()];
    if a.a1.is_some() || a.a2.is_some() {
        notes.push("A1/A2 values are carried from the construction, not recomputed".to_string());
    }
    let details = json!({
        "a1": a.a1,
        "a2": a.a2,
        "a3": a3,
        "b_contains_j": a.b_contains_j,
        "claimed": a.claimed,
        "derived": verdict,
    });
    let citation = if via_bespoke { a.bespoke.clone() } else { None };
    ReportEntry::new("A3/ampleness", status, summary, details).with_citation(citation).with_notes(notes)
}

/// The sufficient condition for `π₁(X) = 1`: each chain `D_i` is joined to some `D_j`
/// by a curve meeting one end of each once, and no other chain, with `gcd(d_i n_i, d_j n_j) = 1`.
pub fn check_simply_connected_sufficient(fx: &Fixture) -> ReportEntry {
    sc_with(fx, &Context::new(fx))
}

pub(crate) fn sc_with(fx: &Fixture, ctx: &Context) -> ReportEntry {
    let Some(ws) = &fx.sc_witnesses else {
        return asserted_or_missing(fx, "simply-connected", "simply-connected", "witness");
    };
    let m = fx.chains.len();
    let mut problems = Vec::new();
    let mut covered = vec![false; m];
    let mut rows = Vec::new();
    for w in ws {
        let [i, j] = w.chains;
        let mut bad = Vec::new();
        let attachments = fx
            .minus_one_curves
            .iter()
            .find(|c| c.id == w.curve)
            .map(|c| &c.attachments)
            .or_else(|| fx.joining_curves.iter().find(|c| c.id == w.curve).map(|c| &c.attachments));
        if i == j {
            bad.push("joins a chain to itself".to_string());
        }
        let mut g = None;
        let mut args = None;
        match (ctx.chain(i), ctx.chain(j), attachments) {
            (Ok(ti), Ok(tj), Some(att)) => {
                let mut by_chain: BTreeMap<usize, Vec<&Attachment>> = BTreeMap::new();
                for a in att {
                    by_chain.entry(a.chain).or_default().push(a);
                }
                let others: Vec<usize> = by_chain.keys().copied().filter(|&c| c != i && c != j).collect();
                if !others.is_empty() {
                    bad.push(format!("also meets chains {others:?}"));
                }
                for (k, inv) in [(i, ti), (j, tj)] {
                    let list = by_chain.get(&k).cloned().unwrap_or_default();
                    let total: Int = list.iter().fold(Int::ZERO, |s, a| s + &a.multiplicity);
                    if total != Int::ONE {
                        bad.push(format!("meets chain {k} with total multiplicity {total}"));
                        continue;
                    }
                    let a = list[0];
                    if a.component != 1 && a.component != inv.l {
                        bad.push(format!("meets chain {k} at interior component {}", a.component));
                    }
                    if let Err(e) = incidence_problems(ctx, a) {
                        bad.push(e);
                    }
                }
                let ni = ti.triple.d() * ti.triple.n();
                let nj = tj.triple.d() * tj.triple.n();
                let gg = gcd(&ni, &nj);
                if gg != Int::ONE {
                    bad.push(format!("gcd({ni}, {nj}) = {gg}"));
                }
                g = Some(gg);
                args = Some([ni, nj]);
            }
            (ri, rj, att) => {
                for r in [ri.err(), rj.err()].into_iter().flatten() {
                    bad.push(r);
                }
                if att.is_none() {
                    bad.push(format!("unknown curve {}", w.curve));
                }
            }
        }
        if bad.is_empty() {
            covered[i - 1] = true;
            covered[j - 1] = true;
        } else {
            problems.push(format!("{} joining {i},{j}: {}", w.curve, bad.join(", ")));
        }
        rows.push(json!({
            "curve": w.curve,
            "chains": [i, j],
            "dn": args.as_ref().map(|a| ints_value(a)),
            "gcd": g.as_ref().map(int_value),
            "ok": bad.is_empty(),
        }));
    }
    for (k, c) in covered.iter().enumerate() {
        if !c {
            problems.push(format!("no witness for {}", fx.chains[k].label));
        }
    }
    let summary = if problems.is_empty() {
        format!("{} witnesses cover all {m} chains", ws.len())
    } else {
        problems.join("; ")
    };
    ReportEntry::new("simply-connected", status_of(&problems), summary, json!({ "witnesses": rows }))
}

/// Conditions carried only by citation, in a fixed order.
pub(crate) fn asserted_entries(fx: &Fixture) -> Vec<ReportEntry> {
    let mut out: Vec<ReportEntry> = REQUIRED_ASSERTED
        .iter()
        .map(|c| asserted_or_missing(fx, c, c, "direct check"))
        .collect();
    for f in &fx.asserted_facts {
        if !REQUIRED_ASSERTED.contains(&f.condition.as_str()) && !CONSUMED_FACTS.contains(&f.condition.as_str()) {
            out.push(
                ReportEntry::new(&f.condition, Status::Asserted, "not recomputed", Value::Null)
                    .with_citation(Some(f.citation.clone())),
            );
        }
    }
    out
}
