//! Intersection bookkeeping on rational surfaces: blowups, chain extraction and
//! contraction of class-T chains.
//!
//! Every curve is a smooth rational curve, so adjunction gives `K·C = −2 − C²`.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::classt::{ClassTTriple, classify, invariants};
use crate::error::{Error, Result, pre};
use crate::hjcore::{ChainWeights, Int, Rational, hj_eval, int};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub id: String,
    pub self_int: Int,
    /// Set on curves created by a blowup: the id of that blowup's exceptional curve.
    pub exceptional_of: Option<String>,
}

/// Curves with their intersection numbers, together with `K²` and `ρ` of the surface.
#[derive(Clone, Debug)]
pub struct CurveConfig {
    curves: Vec<Curve>,
    index: HashMap<String, usize>,
    pairings: BTreeMap<(usize, usize), Int>,
    pub k_squared: Int,
    pub picard_rank: Int,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j { (i, j) } else { (j, i) }
}

impl CurveConfig {
    pub fn new(k_squared: Int, picard_rank: Int) -> CurveConfig {
        CurveConfig {
            curves: Vec::new(),
            index: HashMap::new(),
            pairings: BTreeMap::new(),
            k_squared,
            picard_rank,
        }
    }

    pub fn add_curve(&mut self, id: &str, self_int: Int) -> Result<()> {
        self.push_curve(Curve { id: id.to_string(), self_int, exceptional_of: None })
    }

    /// Adds a curve record as is, keeping its `exceptional_of` tag.
    pub fn push_curve(&mut self, c: Curve) -> Result<()> {
        if self.index.contains_key(&c.id) {
            return Err(Error::Input(format!("duplicate curve id {}", c.id)));
        }
        self.index.insert(c.id.clone(), self.curves.len());
        self.curves.push(c);
        Ok(())
    }

    pub fn set_pairing(&mut self, a: &str, b: &str, k: Int) -> Result<()> {
        let (i, j) = (self.idx(a)?, self.idx(b)?);
        if i == j {
            return Err(Error::Input(format!("pairing of {a} with itself; use self_int")));
        }
        if k < Int::ZERO {
            return Err(Error::Input(format!("negative pairing {k} between distinct curves {a}, {b}")));
        }
        if k == Int::ZERO {
            self.pairings.remove(&key(i, j));
        } else {
            self.pairings.insert(key(i, j), k);
        }
        Ok(())
    }

    fn idx(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::Input(format!("unknown curve id {id}")))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn curve(&self, id: &str) -> Result<&Curve> {
        Ok(&self.curves[self.idx(id)?])
    }

    pub fn self_int(&self, id: &str) -> Result<&Int> {
        Ok(&self.curve(id)?.self_int)
    }

    /// Intersection number of two distinct curves.
    pub fn pairing(&self, a: &str, b: &str) -> Result<Int> {
        let (i, j) = (self.idx(a)?, self.idx(b)?);
        if i == j {
            return Err(Error::Input(format!("pairing of {a} with itself; use self_int")));
        }
        Ok(self.pair_idx(i, j))
    }

    fn pair_idx(&self, i: usize, j: usize) -> Int {
        self.pairings.get(&key(i, j)).cloned().unwrap_or(Int::ZERO)
    }

    /// `C·D`, including `C = D`.
    pub fn intersection(&self, a: &str, b: &str) -> Result<Int> {
        if a == b { self.self_int(a).cloned() } else { self.pairing(a, b) }
    }

    /// All nonzero pairings as `(a, b, k)` with `a` listed before `b`.
    pub fn pairing_list(&self) -> Vec<(String, String, Int)> {
        self.pairings
            .iter()
            .map(|(&(i, j), k)| (self.curves[i].id.clone(), self.curves[j].id.clone(), k.clone()))
            .collect()
    }

    /// Intersection matrix of the listed curves.
    pub fn matrix(&self, ids: &[&str]) -> Result<Vec<Vec<Int>>> {
        let idx: Vec<usize> = ids.iter().map(|id| self.idx(id)).collect::<Result<_>>()?;
        Ok(idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| if i == j { self.curves[i].self_int.clone() } else { self.pair_idx(i, j) })
                    .collect()
            })
            .collect())
    }
}

/// Same curves, self-intersections, pairings, `K²` and `ρ`, regardless of insertion order.
impl PartialEq for CurveConfig {
    fn eq(&self, other: &Self) -> bool {
        if self.k_squared != other.k_squared
            || self.picard_rank != other.picard_rank
            || self.curves.len() != other.curves.len()
        {
            return false;
        }
        let mut a: Vec<_> = self.curves.iter().collect();
        let mut b: Vec<_> = other.curves.iter().collect();
        a.sort_by(|x, y| x.id.cmp(&y.id));
        b.sort_by(|x, y| x.id.cmp(&y.id));
        if a != b {
            return false;
        }
        let norm = |c: &CurveConfig| {
            let mut v: Vec<_> = c
                .pairing_list()
                .into_iter()
                .map(|(x, y, k)| if x < y { (x, y, k) } else { (y, x, k) })
                .collect();
            v.sort();
            v
        };
        norm(self) == norm(other)
    }
}

/// A point to blow up, given by the curves through it and their multiplicities
/// there. A node of a curve is that curve with multiplicity 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    /// Id assigned to the new exceptional curve.
    pub exceptional: String,
    pub passes_through: Vec<(String, Int)>,
}

pub fn blow_up(cfg: &CurveConfig, pt: &PointSpec) -> Result<CurveConfig> {
    if cfg.contains(&pt.exceptional) {
        return Err(Error::Input(format!("exceptional id {} already in use", pt.exceptional)));
    }
    let mut seen = HashSet::new();
    let mut listed = Vec::new();
    for (id, m) in &pt.passes_through {
        if !seen.insert(id.as_str()) {
            return Err(Error::Input(format!("curve {id} listed twice at one point")));
        }
        if *m < Int::ONE {
            return Err(Error::Input(format!("multiplicity {m} of {id} must be positive")));
        }
        listed.push((cfg.idx(id)?, m.clone()));
    }
    let mut out = cfg.clone();
    for (a, &(i, ref mi)) in listed.iter().enumerate() {
        for &(j, ref mj) in &listed[a + 1..] {
            let k = cfg.pair_idx(i, j);
            if k == Int::ZERO {
                return Err(Error::Input(format!(
                    "{} and {} do not meet, so they share no point",
                    cfg.curves[i].id, cfg.curves[j].id
                )));
            }
            let left = k - mi * mj;
            if left < Int::ZERO {
                return Err(Error::Input(format!(
                    "blowing up drops the pairing of {} and {} below zero",
                    cfg.curves[i].id, cfg.curves[j].id
                )));
            }
            if left == Int::ZERO {
                out.pairings.remove(&key(i, j));
            } else {
                out.pairings.insert(key(i, j), left);
            }
        }
    }
    for (i, m) in &listed {
        out.curves[*i].self_int -= m * m;
    }
    out.push_curve(Curve {
        id: pt.exceptional.clone(),
        self_int: int(-1),
        exceptional_of: Some(pt.exceptional.clone()),
    })?;
    let e = out.curves.len() - 1;
    for (i, m) in listed {
        out.pairings.insert(key(i, e), m);
    }
    out.k_squared -= Int::ONE;
    out.picard_rank += Int::ONE;
    Ok(out)
}

/// Weights of a linear chain read off the configuration.
pub fn extract_chain(cfg: &CurveConfig, ids: &[&str]) -> Result<ChainWeights> {
    if ids.is_empty() {
        return Err(pre("a chain needs at least one curve"));
    }
    let idx: Vec<usize> = ids.iter().map(|id| cfg.idx(id)).collect::<Result<_>>()?;
    if idx.iter().collect::<HashSet<_>>().len() != idx.len() {
        return Err(pre("a chain lists the same curve twice"));
    }
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            let k = cfg.pair_idx(idx[a], idx[b]);
            let want = if b == a + 1 { Int::ONE } else { Int::ZERO };
            if k != want {
                return Err(pre(format!("chain curves {} and {} meet {k} times, expected {want}", ids[a], ids[b])));
            }
        }
    }
    let weights: Vec<Int> = idx.iter().map(|&i| -cfg.curves[i].self_int.clone()).collect();
    if let Some(pos) = weights.iter().position(|w| *w <= Int::ONE) {
        return Err(pre(format!("chain curve {} has self-intersection {}", ids[pos], -weights[pos].clone())));
    }
    ChainWeights::new(weights)
}

/// Disjoint linear chains inside a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSelection {
    pub chains: Vec<Vec<String>>,
}

impl ChainSelection {
    pub fn new(cfg: &CurveConfig, chains: Vec<Vec<String>>) -> Result<ChainSelection> {
        let mut seen = HashSet::new();
        for ch in &chains {
            let ids: Vec<&str> = ch.iter().map(String::as_str).collect();
            extract_chain(cfg, &ids)?;
            for id in ch {
                if !seen.insert(id.clone()) {
                    return Err(pre(format!("curve {id} is in two chains")));
                }
            }
        }
        for (x, a) in chains.iter().enumerate() {
            for b in &chains[x + 1..] {
                for u in a {
                    for v in b {
                        if cfg.pairing(u, v)? != Int::ZERO {
                            return Err(pre(format!("chains are not disjoint: {u} meets {v}")));
                        }
                    }
                }
            }
        }
        Ok(ChainSelection { chains })
    }

    pub fn contains(&self, id: &str) -> bool {
        self.chains.iter().any(|c| c.iter().any(|x| x == id))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedChain {
    pub ids: Vec<String>,
    pub weights: ChainWeights,
    pub triple: ClassTTriple,
    pub delta: Int,
    /// Multiplicities of `Δ` along the chain components.
    pub coefficients: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionResult {
    pub per_chain: Vec<ContractedChain>,
    /// `K_M² + Σ δ`.
    pub k_x_squared: Int,
    /// `(K_M + Δ)²` from the intersection matrix and adjunction.
    pub k_x_squared_from_matrix: Rational,
}

impl ContractionResult {
    /// `Δ·C` for a curve outside the chains.
    pub fn delta_dot(&self, cfg: &CurveConfig, curve_id: &str) -> Result<Rational> {
        cfg.idx(curve_id)?;
        let mut total = Rational::zero();
        for ch in &self.per_chain {
            for (id, c) in ch.ids.iter().zip(&ch.coefficients) {
                if id == curve_id {
                    return Err(pre(format!("{curve_id} is a chain component")));
                }
                total = total + c * &Rational::from(cfg.pairing(curve_id, id)?);
            }
        }
        Ok(total)
    }

    /// `(K_M + Δ)·E` for every chain component; all zero for a correct contraction.
    pub fn canonical_pullback_dots(&self, cfg: &CurveConfig) -> Result<Vec<Rational>> {
        let mut out = Vec::new();
        for ch in &self.per_chain {
            for e in &ch.ids {
                let k_dot = Rational::from(int(-2) - cfg.self_int(e)?);
                let mut d_dot = Rational::zero();
                for other in &self.per_chain {
                    for (id, c) in other.ids.iter().zip(&other.coefficients) {
                        d_dot = d_dot + c * &Rational::from(cfg.intersection(e, id)?);
                    }
                }
                out.push(k_dot + d_dot);
            }
        }
        Ok(out)
    }
}

/// Contracts each selected chain to its class-T point.
pub fn contract_chains(cfg: &CurveConfig, sel: &ChainSelection) -> Result<ContractionResult> {
    let mut per_chain = Vec::new();
    let mut k_x = cfg.k_squared.clone();
    for (i, ch) in sel.chains.iter().enumerate() {
        let ids: Vec<&str> = ch.iter().map(String::as_str).collect();
        let weights = extract_chain(cfg, &ids)?;
        let (n, q) = hj_eval(&weights);
        let triple = match classify(&n, &q)?.triple() {
            Some(t) => t.clone(),
            None => return Err(Error::NotClassT { chain: i, n: n.to_string(), q: q.to_string() }),
        };
        let inv = invariants(&triple);
        assert_eq!(inv.b, weights, "expansion of hj_eval must return the chain");
        let solved = solve_discrepancy(&cfg.matrix(&ids)?, &weights);
        assert_eq!(solved, inv.c, "discrepancy from the matrix disagrees with c_i = 1 - r_i/n");
        k_x += &inv.delta;
        per_chain.push(ContractedChain {
            ids: ch.clone(),
            weights,
            triple,
            delta: inv.delta,
            coefficients: inv.c,
        });
    }

    // (K + Δ)² = K² + 2 K·Δ + Δ² with K·E = b_E − 2
    let all: Vec<(&str, &Rational)> = per_chain
        .iter()
        .flat_map(|c| c.ids.iter().map(String::as_str).zip(&c.coefficients))
        .collect();
    let mut k_dot_delta = Rational::zero();
    let mut delta_sq = Rational::zero();
    for &(e, c) in &all {
        k_dot_delta = k_dot_delta + c * &Rational::from(int(-2) - cfg.self_int(e)?);
        for &(f, c2) in &all {
            delta_sq = delta_sq + &(c * c2) * &Rational::from(cfg.intersection(e, f)?);
        }
    }
    let from_matrix = Rational::from(cfg.k_squared.clone()) + &(Rational::from(2) * &k_dot_delta) + &delta_sq;
    assert_eq!(from_matrix, Rational::from(k_x.clone()), "two computations of K_X² disagree");
    Ok(ContractionResult { per_chain, k_x_squared: k_x, k_x_squared_from_matrix: from_matrix })
}

/// Solves `Σ x_i E_i·E_j = 2 − b_j` by exact Gaussian elimination.
fn solve_discrepancy(m: &[Vec<Int>], w: &ChainWeights) -> Vec<Rational> {
    let l = m.len();
    let mut a: Vec<Vec<Rational>> = (0..l)
        .map(|r| {
            let mut row: Vec<Rational> = m[r].iter().cloned().map(Rational::from).collect();
            row.push(Rational::from(int(2) - &w.as_slice()[r]));
            row
        })
        .collect();
    for col in 0..l {
        let piv = (col..l).find(|&r| !a[r][col].is_zero()).expect("chain matrices are negative definite");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..l {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    a.into_iter().map(|row| row[l].clone()).collect()
}

/// `Δ·C` for a curve outside the selected chains.
pub fn delta_dot(cfg: &CurveConfig, sel: &ChainSelection, curve_id: &str) -> Result<Rational> {
    if sel.contains(curve_id) {
        return Err(pre(format!("{curve_id} is a chain component")));
    }
    contract_chains(cfg, sel)?.delta_dot(cfg, curve_id)
}

/// Determinant of the intersection matrix of the listed curves.
pub fn gram_determinant(cfg: &CurveConfig, ids: &[&str]) -> Result<Int> {
    if ids.iter().collect::<HashSet<_>>().len() != ids.len() {
        return Err(pre("gram determinant of a repeated curve"));
    }
    Ok(determinant(&cfg.matrix(ids)?))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::ONE;
    }
    let mut a = m.to_vec();
    let mut sign = Int::ONE;
    let mut prev = Int::ONE;
    for k in 0..n - 1 {
        if a[k][k] == Int::ZERO {
            match (k + 1..n).find(|&r| a[r][k] != Int::ZERO) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Int::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Intersection matrix of an `A_n` string of `(−2)`-curves.
pub fn a_n_matrix(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => int(-2),
                    1 => int(1),
                    _ => int(0),
                })
                .collect()
        })
        .collect()
}

pub fn block_diagonal(blocks: &[Vec<Vec<Int>>]) -> Vec<Vec<Int>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![Int::ZERO; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[off + i][off + j] = v.clone();
            }
        }
        off += b.len();
    }
    out
}

/// A configuration holding just the chains `LC(weights)`, named `D<k>.<i>` (1-based).
pub fn chains_config(k_squared: Int, picard_rank: Int, chains: &[ChainWeights]) -> (CurveConfig, ChainSelection) {
    let mut cfg = CurveConfig::new(k_squared, picard_rank);
    let mut sel = Vec::new();
    for (k, w) in chains.iter().enumerate() {
        let mut ids: Vec<String> = Vec::new();
        for (i, b) in w.as_slice().iter().enumerate() {
            let id = format!("D{}.{}", k + 1, i + 1);
            cfg.add_curve(&id, -b.clone()).expect("fresh ids");
            if let Some(prev) = ids.last() {
                cfg.set_pairing(prev.as_str(), &id, Int::ONE).expect("fresh ids");
            }
            ids.push(id);
        }
        sel.push(ids);
    }
    (cfg, ChainSelection { chains: sel })
}
