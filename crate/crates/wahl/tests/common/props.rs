//! Property bodies and their input strategies. The proptest suites and the
//! acceptance runner both drive these.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{PicOracle, gcd64, hj_small, i, ints};
use wahl::classt::{ClassTTriple, Move, delta_squared, involution, invariants, replay, t_l, t_r};
use wahl::hjcore::{ChainWeights, hj_eval, hj_expand, modular_inverse};
use wahl::surface::{CurveConfig, PointSpec, blow_up, chains_config, contract_chains, delta_dot};
use wahl::toric::{CyclicQuotient, resolution_data};
use wahl::{Int, Rational, script};

pub type Outcome = Result<(), TestCaseError>;

pub fn coprime_pair(max_n: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max_n).prop_flat_map(|n| (Just(n), 1..n)).prop_filter("coprime", |&(n, q)| gcd64(n, q) == 1)
}

/// A class-T triple as `d` and a going-up word from `(d, 2, 1)`.
pub fn word(max_d: i64, max_len: usize) -> impl Strategy<Value = (i64, Vec<Move>)> {
    (1i64..=max_d, prop::collection::vec(prop_oneof![Just(Move::L), Just(Move::R)], 0..=max_len))
}

pub fn triple(w: &(i64, Vec<Move>)) -> ClassTTriple {
    replay(&i(w.0), &w.1).unwrap()
}

pub fn hj_roundtrip_and_duality((n, q): (i64, i64)) -> Outcome {
    let w = hj_expand(&i(n), &i(q)).unwrap();
    let oracle = ints(&hj_small(n, q));
    prop_assert_eq!(w.as_slice(), oracle.as_slice());
    prop_assert_eq!(hj_eval(&w), (i(n), i(q)));
    let qi = modular_inverse(&i(q), &i(n)).unwrap();
    prop_assert_eq!(hj_expand(&i(n), &qi).unwrap(), w.reversed());
    Ok(())
}

pub fn unimodularity((n, q): (i64, i64)) -> Outcome {
    let res = resolution_data(&CyclicQuotient::new(i(n), i(q)).unwrap());
    let l = res.len();
    let (p, qq, b) = (&res.p, &res.q, res.weights.as_slice());
    prop_assert_eq!((p.len(), qq.len()), (l + 2, l + 2));
    prop_assert_eq!((&p[0], &p[1], &p[l + 1]), (&i(0), &i(1), &i(n)));
    prop_assert_eq!((&qq[0], &qq[1], &qq[l], &qq[l + 1]), (&i(n), &i(q), &i(1), &i(0)));
    for k in 1..=l + 1 {
        prop_assert_eq!(&p[k] * &qq[k - 1] - &p[k - 1] * &qq[k], i(n), "at {} for ({},{})", k, n, q);
        prop_assert!(p[k] > p[k - 1] && qq[k] < qq[k - 1]);
    }
    for k in 1..=l {
        prop_assert_eq!(&p[k - 1] + &p[k + 1], &b[k - 1] * &p[k]);
        prop_assert_eq!(&qq[k - 1] + &qq[k + 1], &b[k - 1] * &qq[k]);
    }
    Ok(())
}

pub fn r_sequence(t: &ClassTTriple) -> Outcome {
    let inv = invariants(t);
    let (n, a) = (t.n().clone(), t.a().clone());
    let l = inv.l;
    prop_assert_eq!(&inv.r[0], &a);
    prop_assert_eq!(&inv.r[l - 1], &(&n - &a));
    let dn = t.d() * &n;
    for k in 0..l {
        let prev = if k == 0 { n.clone() } else { inv.r[k - 1].clone() };
        let next = if k + 1 == l { n.clone() } else { inv.r[k + 1].clone() };
        prop_assert_eq!(prev + next, &inv.b.as_slice()[k] * &inv.r[k]);
        prop_assert_eq!(&inv.r[k] * &dn, &inv.p[k] + &inv.q[k]);
        prop_assert!(inv.r[k] >= Int::ONE && inv.r[k] < n);
        prop_assert!(inv.c[k] > Rational::zero() && inv.c[k] < Rational::one());
    }
    Ok(())
}

pub fn sum_and_delta(t: &ClassTTriple, word_len: usize) -> Outcome {
    let inv = invariants(t);
    let l = Int::from(inv.l);
    prop_assert_eq!(inv.b.sum(), i(3) * &l + i(2) - t.d());
    prop_assert_eq!(&inv.delta, &(&l - t.d() + Int::ONE));
    prop_assert_eq!(&inv.delta, &(inv.b.sum() - (i(2) * &l + Int::ONE)));
    prop_assert_eq!(inv.l, usize::try_from(t.d()).unwrap() + word_len);
    Ok(())
}

/// `Δ²` from `Σ c_i (2 − b_i)` and from `cᵀ M c` over the chain's intersection matrix.
pub fn delta_squared_two_ways(t: &ClassTTriple) -> Outcome {
    let inv = invariants(t);
    let want = Rational::from(-inv.delta.clone());
    prop_assert_eq!(delta_squared(t), want.clone());
    let b = inv.b.as_slice();
    let mut total = Rational::zero();
    for r in 0..inv.l {
        let mut row = Rational::from(-b[r].clone()) * &inv.c[r];
        if r > 0 {
            row = row + inv.c[r - 1].clone();
        }
        if r + 1 < inv.l {
            row = row + inv.c[r + 1].clone();
        }
        prop_assert_eq!(&row, &Rational::from(i(2) - &b[r]), "Δ·E_{} for {}", r + 1, t);
        total = total + &inv.c[r] * &row;
    }
    prop_assert_eq!(total, want);
    Ok(())
}

pub fn going_up_laws(t: &ClassTTriple) -> Outcome {
    let inv = invariants(t);
    let (b, r, l) = (inv.b.as_slice(), &inv.r, inv.l);
    let edge = &r[0] + &r[l - 1];

    let left = invariants(&t_l(t));
    let mut want_b = vec![i(2)];
    want_b.extend_from_slice(&b[..l - 1]);
    want_b.push(&b[l - 1] + Int::ONE);
    prop_assert_eq!(left.b.as_slice(), want_b.as_slice(), "B of t_L({})", t);
    let mut want_r = vec![edge.clone()];
    want_r.extend_from_slice(r);
    prop_assert_eq!(&left.r, &want_r, "R of t_L({})", t);
    prop_assert_eq!(&left.delta, &(&inv.delta + Int::ONE));

    let right = invariants(&t_r(t));
    let mut want_b = vec![&b[0] + Int::ONE];
    want_b.extend_from_slice(&b[1..]);
    want_b.push(i(2));
    prop_assert_eq!(right.b.as_slice(), want_b.as_slice(), "B of t_R({})", t);
    let mut want_r = r.clone();
    want_r.push(edge);
    prop_assert_eq!(&right.r, &want_r, "R of t_R({})", t);
    prop_assert_eq!(&right.delta, &(&inv.delta + Int::ONE));

    prop_assert_eq!(t_l(t), involution(&t_r(&involution(t))));
    Ok(())
}

/// Four general lines and a nodal cubic in the plane.
pub fn plane_seed() -> (CurveConfig, PicOracle) {
    let mut cfg = CurveConfig::new(i(9), i(1));
    let mut pic = PicOracle::default();
    for k in 1..=4 {
        cfg.add_curve(&format!("L{k}"), i(1)).unwrap();
        pic.add(&format!("L{k}"), 1);
    }
    cfg.add_curve("C", i(9)).unwrap();
    pic.add("C", 3);
    for a in 1..=4 {
        for b in a + 1..=4 {
            cfg.set_pairing(&format!("L{a}"), &format!("L{b}"), i(1)).unwrap();
        }
        cfg.set_pairing(&format!("L{a}"), "C", i(3)).unwrap();
    }
    (cfg, pic)
}

/// One step of a random script: a curve, an optional second curve, and whether to
/// blow up the cubic's node when the first curve is the cubic.
pub type Step = (usize, Option<usize>, bool);

pub fn script_steps() -> impl Strategy<Value = Vec<Step>> {
    prop::collection::vec((0usize..64, prop::option::of(0usize..64), prop::bool::weighted(0.3)), 0..=20)
}

/// Turns abstract steps into points that keep every pairing nonnegative.
pub fn points(steps: &[Step]) -> Vec<PointSpec> {
    let (mut cfg, _) = plane_seed();
    let mut out = Vec::new();
    let mut node_used = false;
    for (k, &(a, b, double)) in steps.iter().enumerate() {
        let ids: Vec<String> = cfg.curves().iter().map(|c| c.id.clone()).collect();
        let first = ids[a % ids.len()].clone();
        // only the cubic has a singular point, and only one
        let node = double && first == "C" && !node_used;
        node_used |= node;
        let m1 = if node { 2 } else { 1 };
        let mut through = vec![(first.clone(), i(m1))];
        if let Some(b) = b {
            let second = &ids[b % ids.len()];
            if *second != first && cfg.pairing(&first, second).unwrap() >= i(m1) {
                through.push((second.clone(), i(1)));
            }
        }
        let pt = PointSpec { exceptional: format!("E{}", k + 1), passes_through: through };
        cfg = blow_up(&cfg, &pt).unwrap();
        out.push(pt);
    }
    out
}

fn script_json(cfg: &CurveConfig, pts: &[PointSpec]) -> String {
    let doc = script::config_doc(cfg);
    let s = script::ScriptDoc {
        schema_version: 1,
        k_squared: doc.k_squared,
        picard_rank: doc.picard_rank,
        curves: doc.curves,
        pairings: doc.pairings,
        blowups: pts
            .iter()
            .map(|p| script::PointDoc {
                exceptional: p.exceptional.clone(),
                passes_through: p.passes_through.iter().map(|(id, m)| (id.clone(), wahl::json::int_value(m))).collect(),
            })
            .collect(),
        chains: Vec::new(),
    };
    serde_json::to_string(&s).unwrap()
}

/// Incremental blowups agree with divisor classes in `Pic` and with a replay of
/// the same script from JSON.
pub fn blowup_replay(steps: &[Step]) -> Outcome {
    let pts = points(steps);
    let (mut cfg, mut pic) = plane_seed();
    for pt in &pts {
        cfg = blow_up(&cfg, pt).unwrap();
        let through: Vec<(String, i64)> =
            pt.passes_through.iter().map(|(id, m)| (id.clone(), i64::try_from(m).unwrap())).collect();
        pic.blow_up(&pt.exceptional, &through);
    }
    prop_assert_eq!(&cfg.k_squared, &i(pic.k_squared()));
    prop_assert_eq!(&cfg.picard_rank, &i(1 + pts.len() as i64));
    let ids: Vec<String> = cfg.curves().iter().map(|c| c.id.clone()).collect();
    prop_assert_eq!(ids.len(), 5 + pts.len());
    for a in &ids {
        prop_assert_eq!(cfg.self_int(a).unwrap().clone(), i(PicOracle::dot(pic.class(a), pic.class(a))));
        for b in &ids {
            if a != b {
                let want = PicOracle::dot(pic.class(a), pic.class(b));
                prop_assert_eq!(cfg.pairing(a, b).unwrap(), i(want), "{} . {}", a, b);
            }
        }
        if a != "C" {
            // smooth rational curves obey adjunction
            let k_dot = PicOracle::dot(&pic.canonical(), pic.class(a));
            prop_assert_eq!(k_dot, -2 - PicOracle::dot(pic.class(a), pic.class(a)));
        }
    }
    let (seed, _) = plane_seed();
    let parsed = script::parse_script(&script_json(&seed, &pts)).unwrap();
    let (replayed, none) = script::replay(&parsed).unwrap();
    prop_assert!(none.is_none());
    prop_assert_eq!(replayed, cfg);
    Ok(())
}

/// Random disjoint class-T chains, `K_M²`, and `(−1)`-curves given as
/// `(chain, component, multiplicity)` seeds.
pub type ContractionCase = (Vec<(i64, Vec<Move>)>, i64, Vec<Vec<(usize, usize, i64)>>);

pub fn contraction_case() -> impl Strategy<Value = ContractionCase> {
    (
        prop::collection::vec(word(3, 5), 1..4),
        -30i64..10,
        prop::collection::vec(prop::collection::vec((0usize..8, 0usize..16, 1i64..3), 1..4), 0..4),
    )
}

pub fn pullback_orthogonality((chains, k, gammas): &ContractionCase) -> Outcome {
    let triples: Vec<ClassTTriple> = chains.iter().map(triple).collect();
    let weights: Vec<ChainWeights> = triples.iter().map(|t| invariants(t).b).collect();
    let (mut cfg, sel) = chains_config(i(*k), i(10 - k), &weights);
    let mut expected = Vec::new();
    for (g, meets) in gammas.iter().enumerate() {
        let id = format!("G{g}");
        cfg.add_curve(&id, i(-1)).unwrap();
        let mut value = Rational::zero();
        let mut used = std::collections::HashSet::new();
        for &(ch, comp, mult) in meets {
            let ch = ch % weights.len();
            let comp = comp % weights[ch].len();
            if !used.insert((ch, comp)) {
                continue;
            }
            cfg.set_pairing(&id, &format!("D{}.{}", ch + 1, comp + 1), i(mult)).unwrap();
            value = value + &invariants(&triples[ch]).c[comp] * &Rational::from(mult);
        }
        expected.push((id, value));
    }
    let res = contract_chains(&cfg, &sel).unwrap();
    let dots = res.canonical_pullback_dots(&cfg).unwrap();
    prop_assert_eq!(dots.len(), weights.iter().map(ChainWeights::len).sum::<usize>());
    for dot in dots {
        prop_assert_eq!(dot, Rational::zero());
    }
    let total_delta: Int = res.per_chain.iter().map(|c| c.delta.clone()).sum();
    prop_assert_eq!(&res.k_x_squared, &(i(*k) + &total_delta));
    prop_assert_eq!(&res.k_x_squared_from_matrix, &Rational::from(res.k_x_squared.clone()));
    for (id, value) in &expected {
        prop_assert_eq!(&delta_dot(&cfg, &sel, id).unwrap(), value);
        prop_assert_eq!(&res.delta_dot(&cfg, id).unwrap(), value);
    }
    // chain components are not candidates for Γ
    for ch in &res.per_chain {
        for id in &ch.ids {
            prop_assert!(res.delta_dot(&cfg, id).is_err());
        }
    }
    Ok(())
}
