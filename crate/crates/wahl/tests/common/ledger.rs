//! Values typed from the tables and worked examples.

use super::ints;
use wahl::classt::{ClassTTriple, invariants};

/// `((d, n, a), δ, l, B, R)`.
pub type Row = ((i64, i64, i64), i64, usize, Vec<i64>, Vec<i64>);

pub fn table2() -> Vec<Row> {
    vec![
        ((1, 11, 3), 5, 5, vec![4, 5, 3, 2, 2], vec![3, 1, 2, 5, 8]),
        ((1, 19, 5), 7, 7, vec![4, 7, 2, 2, 3, 2, 2], vec![5, 1, 2, 3, 4, 9, 14]),
        ((1, 19, 13), 8, 8, vec![2, 2, 9, 2, 2, 2, 2, 4], vec![13, 7, 1, 2, 3, 4, 5, 6]),
        ((3, 23, 4), 8, 10, vec![6, 5, 2, 3, 2, 3, 2, 2, 2, 2], vec![4, 1, 1, 1, 2, 3, 7, 11, 15, 19]),
        ((1, 25, 17), 10, 10, vec![2, 2, 11, 2, 2, 2, 2, 2, 2, 4], vec![17, 9, 1, 2, 3, 4, 5, 6, 7, 8]),
        ((1, 35, 6), 10, 10, vec![6, 8, 2, 2, 2, 3, 2, 2, 2, 2], vec![6, 1, 2, 3, 4, 5, 11, 17, 23, 29]),
        ((1, 63, 34), 11, 11, vec![2, 7, 7, 2, 2, 3, 2, 2, 2, 2, 3], vec![34, 5, 1, 2, 3, 4, 9, 14, 19, 24, 29]),
        (
            (1, 252, 145),
            13,
            13,
            vec![2, 4, 6, 2, 6, 2, 4, 2, 2, 2, 3, 2, 3],
            vec![145, 38, 7, 4, 1, 2, 3, 10, 17, 24, 31, 69, 107],
        ),
    ]
}

fn rep(x: i64, count: i64) -> Vec<i64> {
    vec![x; count.max(0) as usize]
}

/// The six parametric rows at `k ≥ 2`, `m ≥ 3`.
pub fn table1(k: i64, m: i64) -> Vec<Row> {
    let up = |lo: i64, hi: i64| (lo..=hi).collect::<Vec<_>>();
    vec![
        ((1, 2, 1), 1, 1, vec![4], vec![1]),
        ((k, 2, 1), 1, k as usize, [vec![3], rep(2, k - 2), vec![3]].concat(), rep(1, k)),
        ((1, m, 1), m - 1, (m - 1) as usize, [vec![m + 2], rep(2, m - 2)].concat(), up(1, m - 1)),
        (
            (1, 2 * m - 1, m),
            m,
            m as usize,
            [vec![2, m + 2], rep(2, m - 3), vec![3]].concat(),
            [vec![m], up(1, m - 1)].concat(),
        ),
        // printed with l = m + k − 1, but its B row has m + k − 2 entries
        (
            (k, m, 1),
            m - 1,
            (m + k - 2) as usize,
            [vec![m + 1], rep(2, k - 2), vec![3], rep(2, m - 2)].concat(),
            [rep(1, k), up(2, m - 1)].concat(),
        ),
        (
            (1, 3 * m - 1, m),
            m + 1,
            (m + 1) as usize,
            [vec![3, m + 2], rep(2, m - 3), vec![3, 2]].concat(),
            [vec![m], up(1, m - 1), vec![2 * m - 1]].concat(),
        ),
    ]
}

pub fn check_row(((d, n, a), delta, l, b, r): &Row) -> Result<(), String> {
    let t = ClassTTriple::from_i64(*d, *n, *a).map_err(|e| e.to_string())?;
    let inv = invariants(&t);
    let got = (inv.delta.clone(), inv.l, inv.b.as_slice().to_vec(), inv.r.clone());
    let want = (super::i(*delta), *l, ints(b), ints(r));
    if got == want { Ok(()) } else { Err(format!("{t}: got {got:?}, want {want:?}")) }
}

/// Example number, `K_X²`, and the displayed sum.
pub const K_SQUARED: [(u32, i64, &str); 8] = [
    (1, 2, "-18 + 8 + 5 + 4 + 2 + 1 = 2"),
    (2, 2, "-22 + 10 + 8 + 4 + 2 = 2"),
    (3, 1, "-14 + 8 + 1 + 6 = 1"),
    (4, 3, "-21 + 10 + 1 + 7 + 6 = 3"),
    (5, 4, "-9 + 13 = 4"),
    (6, 1, "-7 + 5 + 2 + 1 = 1"),
    (7, 3, "-17 + 11 + 3 + 6 = 3"),
    (8, 2, "-10 + 8 + 4 = 2"),
];

/// Curve id and `Δ·E` as `(num, den)`.
pub type CurveValues = &'static [(&'static str, (i64, i64))];

/// Every displayed `Δ·E`, by example and curve.
pub const DELTA_E: [(u32, CurveValues); 8] = [
    (1, &[("E1", (17, 15)), ("E2", (10, 9)), ("E3", (46, 45))]),
    (2, &[("E1", (29, 25)), ("E2", (24, 19)), ("E3", (477, 475))]),
    (3, &[("E1", (37, 35)), ("E2", (37, 35))]),
    (4, &[("E1", (744, 665)), ("E2", (149, 133)), ("E3", (39, 35))]),
    (5, &[("E", (1, 1))]),
    (6, &[("E", (35, 33))]),
    (7, &[("E1", (31, 28)), ("E2", (71, 63)), ("E3", (29, 21))]),
    (8, &[("E", (118, 115))]),
];

/// Stated `gcd(d_i n_i, d_j n_j) = 1` checks, by example.
pub const GCDS: [(u32, [i64; 2]); 5] = [(8, [69, 5]), (7, [8, 7]), (7, [63, 8]), (2, [25, 19]), (3, [5, 7])];

/// Stated Gram determinants, by example.
pub const GRAM: [(u32, i64); 2] = [(1, -24), (2, -8)];
