//! Class-T singularities `T(d, n, a)`: the cyclic quotients of type `(dn², dna − 1)`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Result, pre};
use crate::hjcore::{ChainWeights, Characteristic, Int, Rational, gcd, hj_expand, int, modulo};
use crate::toric::{CyclicQuotient, gorenstein_index, resolution_data};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassTTriple {
    d: Int,
    n: Int,
    a: Int,
}

impl ClassTTriple {
    pub fn new(d: Int, n: Int, a: Int) -> Result<ClassTTriple> {
        if d < Int::ONE {
            return Err(pre(format!("T(d,n,a) needs d >= 1, got d = {d}")));
        }
        if a < Int::ONE || n <= a {
            return Err(pre(format!("T(d,n,a) needs n > a >= 1, got n = {n}, a = {a}")));
        }
        if gcd(&n, &a) != Int::ONE {
            return Err(pre(format!("T(d,n,a) needs gcd(n,a) = 1, got n = {n}, a = {a}")));
        }
        Ok(ClassTTriple { d, n, a })
    }

    pub fn from_i64(d: i64, n: i64, a: i64) -> Result<ClassTTriple> {
        ClassTTriple::new(int(d), int(n), int(a))
    }

    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    /// `(dn², dna − 1)`.
    pub fn cyclic_quotient(&self) -> CyclicQuotient {
        let dn = &self.d * &self.n;
        CyclicQuotient::new(&dn * &self.n, &dn * &self.a - Int::ONE).expect("class-T pairs are admissible")
    }

    pub fn weights(&self) -> ChainWeights {
        let cq = self.cyclic_quotient();
        hj_expand(cq.n(), cq.q()).expect("admissible pair")
    }
}

impl fmt::Display for ClassTTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{},{})", self.d, self.n, self.a)
    }
}

impl fmt::Debug for ClassTTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    ClassT(ClassTTriple),
    /// `q = n − 1`: a chain of `(−2)`-curves, with `Δ² = 0`.
    AllTwosChain,
    Other,
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::ClassT(_) => "class-t",
            Classification::AllTwosChain => "all-twos",
            Classification::Other => "other",
        }
    }

    pub fn triple(&self) -> Option<&ClassTTriple> {
        match self {
            Classification::ClassT(t) => Some(t),
            _ => None,
        }
    }
}

/// Recognizes `(N, Q) = (dn², dna − 1)`.
///
/// With `g = gcd(N, Q + 1)` the triple is forced: `n = N/g`, `d = g²/N`, `a = (Q+1)/g`.
pub fn classify(big_n: &Int, big_q: &Int) -> Result<Classification> {
    if let (Ok(n), Ok(q)) = (u64::try_from(big_n), u64::try_from(big_q))
        && n < 1 << 31
    {
        return classify_word(n, q);
    }
    if *big_q < Int::ONE || big_n <= big_q {
        return Err(pre(format!("classify needs N > Q >= 1, got ({big_n},{big_q})")));
    }
    if gcd(big_n, big_q) != Int::ONE {
        return Err(pre(format!("classify needs gcd(N,Q) = 1, got ({big_n},{big_q})")));
    }
    let q1 = big_q + Int::ONE;
    if q1 == *big_n {
        return Ok(Classification::AllTwosChain);
    }
    let g = gcd(big_n, &q1);
    let g2 = &g * &g;
    if modulo(&g2, big_n) != Int::ZERO {
        return Ok(Classification::Other);
    }
    let t = ClassTTriple::new(&g2 / big_n, big_n / &g, &q1 / &g).expect("gcd decomposition is admissible");
    Ok(Classification::ClassT(t))
}

fn classify_word(n: u64, q: u64) -> Result<Classification> {
    if q < 1 || n <= q {
        return Err(pre(format!("classify needs N > Q >= 1, got ({n},{q})")));
    }
    if binary_gcd(n, q) != 1 {
        return Err(pre(format!("classify needs gcd(N,Q) = 1, got ({n},{q})")));
    }
    let q1 = q + 1;
    if q1 == n {
        return Ok(Classification::AllTwosChain);
    }
    let g = binary_gcd(n, q1);
    // n < 2^31 so g² fits
    if !(g * g).is_multiple_of(n) {
        return Ok(Classification::Other);
    }
    let t = ClassTTriple::new(Int::from(g * g / n), Int::from(n / g), Int::from(q1 / g))
        .expect("gcd decomposition is admissible");
    Ok(Classification::ClassT(t))
}

fn binary_gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// The sequences attached to `T(d, n, a)`, indexed from component 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTInvariants {
    pub triple: ClassTTriple,
    pub b: ChainWeights,
    pub p: Vec<Int>,
    pub q: Vec<Int>,
    /// `r_i = (p_i + q_i)/(dn)`.
    pub r: Vec<Int>,
    /// `c_i = 1 − r_i/n`, the coefficients of the discrepancy divisor.
    pub c: Vec<Rational>,
    /// `Σ b_i − (2l + 1)`.
    pub delta: Int,
    pub l: usize,
}

pub fn invariants(t: &ClassTTriple) -> ClassTInvariants {
    let res = resolution_data(&t.cyclic_quotient());
    let l = res.len();
    let dn = &t.d * &t.n;
    let p: Vec<Int> = res.p[1..=l].to_vec();
    let q: Vec<Int> = res.q[1..=l].to_vec();
    let r: Vec<Int> = p
        .iter()
        .zip(&q)
        .map(|(pi, qi)| {
            let s = pi + qi;
            let ri = &s / &dn;
            assert_eq!(&ri * &dn, s, "r_i must be integral for {t}");
            assert!(ri >= Int::ONE && ri < t.n, "r_i out of range for {t}");
            assert_eq!(modulo(&(&ri - &t.a * pi), &t.n), Int::ZERO, "r_i ≡ a p_i fails for {t}");
            assert_eq!(modulo(&(&ri + &t.a * qi), &t.n), Int::ZERO, "r_i ≡ -a q_i fails for {t}");
            ri
        })
        .collect();
    assert_eq!(r[0], t.a, "r_1 = a fails for {t}");
    assert_eq!(r[l - 1], &t.n - &t.a, "r_l = n - a fails for {t}");
    let b = res.weights;
    for i in 0..l {
        let prev = if i == 0 { &t.n } else { &r[i - 1] };
        let next = if i + 1 == l { &t.n } else { &r[i + 1] };
        assert_eq!(prev + next, &b.as_slice()[i] * &r[i], "r convexity fails for {t}");
    }
    let nr = Rational::from(t.n.clone());
    let c: Vec<Rational> = r.iter().map(|ri| Rational::one() - &Rational::from(ri.clone()) / &nr).collect();
    let li = Int::from(l);
    let delta = b.sum() - (int(2) * &li + Int::ONE);
    assert_eq!(delta, &li - &t.d + Int::ONE, "δ = l − d + 1 fails for {t}");
    ClassTInvariants { triple: t.clone(), b, p, q, r, c, delta, l }
}

/// `Δ² = Σ c_i (2 − b_i)`, which equals `−δ`.
pub fn delta_squared(t: &ClassTTriple) -> Rational {
    let inv = invariants(t);
    let v: Rational = inv
        .c
        .iter()
        .zip(inv.b.as_slice())
        .map(|(c, b)| c * &Rational::from(int(2) - b))
        .sum();
    assert_eq!(v, Rational::from(-inv.delta.clone()), "Δ² ≠ −δ for {t}");
    v
}

/// `(d, n, a) ↦ (d, n, n − a)`; reverses the chain.
pub fn involution(t: &ClassTTriple) -> ClassTTriple {
    ClassTTriple { d: t.d.clone(), n: t.n.clone(), a: &t.n - &t.a }
}

/// `(d, n, a) ↦ (d, 2n − a, n)`.
pub fn t_l(t: &ClassTTriple) -> ClassTTriple {
    ClassTTriple { d: t.d.clone(), n: int(2) * &t.n - &t.a, a: t.n.clone() }
}

/// `(d, n, a) ↦ (d, n + a, a)`.
pub fn t_r(t: &ClassTTriple) -> ClassTTriple {
    ClassTTriple { d: t.d.clone(), n: &t.n + &t.a, a: t.a.clone() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

impl Move {
    pub fn apply(self, t: &ClassTTriple) -> ClassTTriple {
        match self {
            Move::L => t_l(t),
            Move::R => t_r(t),
        }
    }
}

pub fn word_string(word: &[Move]) -> String {
    word.iter().map(|m| if *m == Move::L { 'L' } else { 'R' }).collect()
}

/// The base triple `(d, 2, 1)`.
pub fn base(d: &Int) -> Result<ClassTTriple> {
    ClassTTriple::new(d.clone(), int(2), Int::ONE)
}

pub fn replay(d: &Int, word: &[Move]) -> Result<ClassTTriple> {
    Ok(word.iter().fold(base(d)?, |t, m| m.apply(&t)))
}

/// The word over `{L, R}` that builds `t` from `(d, 2, 1)`, applied left to right.
///
/// Walks down: a final weight 2 means the last step was `t_R`, with predecessor
/// `(d, n − a, a)`; otherwise `b_1 = 2` and the last step was `t_L`, with
/// predecessor `(d, a, 2a − n)`. The chain of the predecessor is read off by
/// undoing the going-up law.
pub fn ancestry(t: &ClassTTriple) -> Vec<Move> {
    let mut cur = t.clone();
    let mut b = t.weights().into_vec();
    let two = int(2);
    let mut word = Vec::new();
    while cur.n != two {
        let l = b.len();
        if b[l - 1] == two {
            word.push(Move::R);
            cur = ClassTTriple { d: cur.d.clone(), n: &cur.n - &cur.a, a: cur.a.clone() };
            b.pop();
            b[0] -= Int::ONE;
        } else {
            assert_eq!(b[0], two, "{t}: neither end weight is 2 above the base case");
            word.push(Move::L);
            let a = int(2) * &cur.a - &cur.n;
            cur = ClassTTriple { d: cur.d.clone(), n: cur.a.clone(), a };
            b.remove(0);
            b[l - 2] -= Int::ONE;
        }
    }
    assert_eq!(cur, base(&t.d).expect("d >= 1"), "descent of {t} must end at the base case");
    word.reverse();
    word
}

/// All triples with `l ≤ max_l` for fixed `d`, breadth first from `(d, 2, 1)`,
/// `t_L` before `t_R` at every node.
pub fn enumerate(d: &Int, max_l: usize) -> Result<Vec<ClassTTriple>> {
    let root = base(d)?;
    if Int::from(max_l) < *d {
        return Err(pre(format!("enumerate needs max_l >= d, got max_l = {max_l}, d = {d}")));
    }
    let base_l = usize::try_from(d).expect("d <= max_l");
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(root, base_l)]);
    while let Some((t, l)) = queue.pop_front() {
        if l < max_l {
            queue.push_back((t_l(&t), l + 1));
            queue.push_back((t_r(&t), l + 1));
        }
        out.push(t);
    }
    Ok(out)
}

/// The relation `z^{dn} − u_1 u_2 − s (z^n + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingRelation {
    pub z_degree: Int,
    pub shift_degree: Int,
}

impl fmt::Display for SmoothingRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{} - u1*u2 - s*(z^{} + 1)", self.z_degree, self.shift_degree)
    }
}

/// One-parameter Q-Gorenstein smoothing of `T(d, n, a)` over the `s`-line,
/// as the `μ_n`-quotient of a hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingFamily {
    pub triple: ClassTTriple,
    pub relation: SmoothingRelation,
    pub group_order: Int,
    /// Weights of `(u_1, u_2, z)` under `t ∈ μ_n`, reduced into `[0, n)`.
    pub weights: [Int; 3],
    /// The parameter value `d^d/(d−1)^{d−1}` that must be removed from the base,
    /// present iff `p ∤ d` and `p ∤ d − 1`.
    pub excluded_parameter: Option<Rational>,
    pub characteristic: Characteristic,
    /// Gorenstein index of the central fiber; the family keeps it.
    pub gorenstein_index: Int,
}

impl SmoothingFamily {
    /// Fibers over `s` are smooth for every `s` outside this set.
    pub fn singular_parameters(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero()];
        v.extend(self.excluded_parameter.clone());
        v
    }
}

pub fn smoothing_family(t: &ClassTTriple, p: Characteristic) -> SmoothingFamily {
    let dn = &t.d * &t.n;
    let dm1 = &t.d - Int::ONE;
    let excluded_parameter = if p.divides(&t.d) || p.divides(&dm1) {
        None
    } else {
        let e = u32::try_from(&dm1).expect("exponent d - 1 exceeds u32");
        let num = t.d.pow(e as usize + 1);
        let den = dm1.pow(e as usize);
        Some(Rational::new(num, den).expect("d >= 2 here"))
    };
    let index = gorenstein_index(&t.cyclic_quotient());
    assert_eq!(index, t.n, "Gorenstein index of {t} must be n");
    SmoothingFamily {
        triple: t.clone(),
        relation: SmoothingRelation { z_degree: dn, shift_degree: t.n.clone() },
        group_order: t.n.clone(),
        weights: [modulo(&Int::ONE, &t.n), modulo(&-Int::ONE, &t.n), modulo(&t.a, &t.n)],
        excluded_parameter,
        characteristic: p,
        gorenstein_index: index,
    }
}
