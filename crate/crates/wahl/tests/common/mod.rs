//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod ledger;
pub mod props;

use wahl::Int;

pub fn i(v: i64) -> Int {
    Int::from(v)
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn gcd64(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Class-T recognition by direct search: `N = d n²`, `Q = d n a − 1`.
pub fn class_t_by_search(big_n: i64, big_q: i64) -> Option<(i64, i64, i64)> {
    let mut n = 2;
    while n * n <= big_n {
        if big_n % (n * n) == 0 {
            let d = big_n / (n * n);
            if (big_q + 1) % (d * n) == 0 {
                let a = (big_q + 1) / (d * n);
                if a >= 1 && a < n && gcd64(n, a) == 1 {
                    return Some((d, n, a));
                }
            }
        }
        n += 1;
    }
    None
}

/// HJ expansion by repeated ceiling, in machine integers.
pub fn hj_small(mut n: i64, mut q: i64) -> Vec<i64> {
    let mut out = Vec::new();
    while q != 0 {
        let b = (n + q - 1) / q;
        out.push(b);
        (n, q) = (q, b * q - n);
    }
    out
}

/// Irreducible elements of `{(m1, m2) ≥ 0 : m1 + q m2 ≡ 0 mod n} ∖ {0}`, by exhaustion.
pub fn semigroup_brute(n: i64, q: i64) -> Vec<(i64, i64)> {
    let mut elems = Vec::new();
    for m1 in 0..=n {
        for m2 in 0..=n {
            if (m1, m2) != (0, 0) && (m1 + q * m2) % n == 0 {
                elems.push((m1, m2));
            }
        }
    }
    let set: std::collections::HashSet<_> = elems.iter().copied().collect();
    let mut out: Vec<(i64, i64)> = elems
        .iter()
        .copied()
        .filter(|&(a, b)| !set.iter().any(|&(x, y)| (x, y) != (a, b) && x <= a && y <= b && set.contains(&(a - x, b - y))))
        .collect();
    out.sort();
    out
}

/// Determinant by cofactor expansion, for small matrices.
pub fn det_cofactor(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for c in 0..n {
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect()).collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * det_cofactor(&minor);
    }
    total
}

/// Divisor classes on a blowup of P² in the basis `(H, E_1, …, E_k)` with form
/// `diag(1, −1, …, −1)`.
#[derive(Clone, Debug, Default)]
pub struct PicOracle {
    pub classes: Vec<(String, Vec<i64>)>,
    pub blowups: usize,
}

impl PicOracle {
    pub fn dot(a: &[i64], b: &[i64]) -> i64 {
        let len = a.len().max(b.len());
        (0..len)
            .map(|k| {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                if k == 0 { x * y } else { -x * y }
            })
            .sum()
    }

    pub fn class(&self, id: &str) -> &[i64] {
        &self.classes.iter().find(|(n, _)| n == id).expect("known curve").1
    }

    pub fn add(&mut self, id: &str, degree: i64) {
        self.classes.push((id.to_string(), vec![degree]));
    }

    /// Blow up a point lying on the listed curves with the given multiplicities.
    pub fn blow_up(&mut self, exceptional: &str, through: &[(String, i64)]) {
        self.blowups += 1;
        let k = self.blowups;
        for (id, m) in through {
            let c = &mut self.classes.iter_mut().find(|(n, _)| n == id).expect("known curve").1;
            c.resize(k + 1, 0);
            c[k] -= m;
        }
        let mut e = vec![0; k + 1];
        e[k] = 1;
        self.classes.push((exceptional.to_string(), e));
    }

    pub fn k_squared(&self) -> i64 {
        9 - self.blowups as i64
    }

    pub fn canonical(&self) -> Vec<i64> {
        let mut k = vec![-3];
        k.extend(std::iter::repeat_n(1, self.blowups));
        k
    }
}
