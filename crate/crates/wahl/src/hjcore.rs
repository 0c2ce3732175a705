//! Integers, rationals and Hirzebruch–Jung continued fractions.
//!
//! `n/q = [b_1, …, b_l] = b_1 − 1/(b_2 − 1/(… − 1/b_l))` with every `b_i ≥ 2`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_int::IBig;
use dashu_int::ops::{ExtendedGcd, Gcd};
use dashu_ratio::RBig;

use crate::error::{Result, pre};

/// Arbitrary precision integer used throughout the crate.
pub type Int = IBig;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    Int::from(a.gcd(b))
}

/// Floor division for a positive divisor.
pub(crate) fn div_floor(a: &Int, b: &Int) -> Int {
    let q = a / b;
    if &q * b > *a { q - Int::ONE } else { q }
}

/// Least nonnegative residue for a positive modulus.
pub(crate) fn modulo(a: &Int, m: &Int) -> Int {
    let r = a % m;
    if r < Int::ZERO { r + m } else { r }
}

/// Exact rational number in lowest terms, sign carried by the numerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(RBig);

impl Rational {
    pub fn new(num: Int, den: Int) -> Result<Rational> {
        if den == Int::ZERO {
            return Err(pre("rational with zero denominator"));
        }
        Ok(Rational(RBig::from_parts_signed(num, den)))
    }

    pub fn from_int(v: Int) -> Rational {
        Rational(RBig::from(v))
    }

    pub fn zero() -> Rational {
        Rational(RBig::ZERO)
    }

    pub fn one() -> Rational {
        Rational(RBig::ONE)
    }

    pub fn numer(&self) -> &Int {
        self.0.numerator()
    }

    pub fn denom(&self) -> Int {
        Int::from(self.0.denominator().clone())
    }

    pub fn is_integer(&self) -> bool {
        self.denom() == Int::ONE
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::new(self.denom(), self.numer().clone())
    }

    pub fn is_zero(&self) -> bool {
        *self.numer() == Int::ZERO
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(Int::from(v))
    }
}

impl From<Int> for Rational {
    fn from(v: Int) -> Self {
        Rational::from_int(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Weights `b_1, …, b_l` of a linear chain, all at least 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainWeights(Vec<Int>);

impl ChainWeights {
    pub fn new(weights: Vec<Int>) -> Result<ChainWeights> {
        if weights.is_empty() {
            return Err(pre("a chain needs at least one weight"));
        }
        if let Some(w) = weights.iter().find(|w| **w < int(2)) {
            return Err(pre(format!("chain weight {w} is below 2")));
        }
        Ok(ChainWeights(weights))
    }

    pub fn from_i64s(weights: &[i64]) -> Result<ChainWeights> {
        ChainWeights::new(weights.iter().map(|&w| int(w)).collect())
    }

    pub fn as_slice(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> Int {
        self.0.iter().fold(Int::ZERO, |acc, b| acc + b)
    }

    pub fn reversed(&self) -> ChainWeights {
        ChainWeights(self.0.iter().rev().cloned().collect())
    }

    pub fn first(&self) -> &Int {
        &self.0[0]
    }

    pub fn last(&self) -> &Int {
        &self.0[self.0.len() - 1]
    }

    pub fn into_vec(self) -> Vec<Int> {
        self.0
    }
}

impl fmt::Display for ChainWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ChainWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LC{self}")
    }
}

/// Expands `n/q` with `n > q ≥ 1` coprime.
pub fn hj_expand(n: &Int, q: &Int) -> Result<ChainWeights> {
    if *q < Int::ONE || n <= q {
        return Err(pre(format!("expansion needs n > q >= 1, got ({n},{q})")));
    }
    if gcd(n, q) != Int::ONE {
        return Err(pre(format!("expansion needs gcd(n,q) = 1, got ({n},{q})")));
    }
    let (mut n, mut q) = (n.clone(), q.clone());
    let mut out = Vec::new();
    while q != Int::ZERO {
        // b = ceil(n/q); n/q = b - q/(b q - n)
        let b = div_floor(&(&n + &q - Int::ONE), &q);
        let next = &b * &q - &n;
        out.push(b);
        n = q;
        q = next;
    }
    ChainWeights::new(out)
}

/// Evaluates the continued fraction, returning the coprime pair `(n, q)`.
pub fn hj_eval(w: &ChainWeights) -> (Int, Int) {
    let mut it = w.as_slice().iter().rev();
    let mut x = Rational::from_int(it.next().expect("chains are nonempty").clone());
    for b in it {
        x = Rational::from_int(b.clone()) - x.recip().expect("partial values exceed 1");
    }
    let (n, q) = (x.numer().clone(), x.denom());
    assert!(n > q, "continued fraction value {n}/{q} is not above 1");
    (n, q)
}

/// The unique `q'` in `(0, n)` with `q q' ≡ 1 (mod n)`.
pub fn modular_inverse(q: &Int, n: &Int) -> Result<Int> {
    if *n < int(2) {
        return Err(pre(format!("modulus must be at least 2, got {n}")));
    }
    let (g, s, _) = q.clone().gcd_ext(n.clone());
    if Int::from(g) != Int::ONE {
        return Err(pre(format!("{q} is not invertible modulo {n}")));
    }
    Ok(modulo(&s, n))
}

/// A field characteristic: 0 or a prime.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Characteristic(u64);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(p: u64) -> Result<Characteristic> {
        if p == 0 || is_prime(p) {
            Ok(Characteristic(p))
        } else {
            Err(pre(format!("characteristic must be 0 or a prime, got {p}")))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Whether `p | m`, where 0 divides only 0.
    pub fn divides(self, m: &Int) -> bool {
        if self.0 == 0 {
            *m == Int::ZERO
        } else {
            modulo(m, &Int::from(self.0)) == Int::ZERO
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
