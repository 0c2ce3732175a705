//! Cyclic quotient singularities of type `(n, q)` and their toric resolution.
//!
//! Index conventions: the resolution chain is `G_1, …, G_l`; index 0 is the
//! proper transform of `D_2` and index `l+1` that of `D_1`, so pullback vectors
//! have length `l + 2`.

use dashu_int::IBig;

use crate::error::{Result, pre};
use crate::hjcore::{ChainWeights, Characteristic, Int, gcd, hj_expand, modulo};
#[cfg(test)]
use crate::hjcore::int;

/// The pair `(n, q)` with `n > q ≥ 1` coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicQuotient {
    n: Int,
    q: Int,
}

impl CyclicQuotient {
    pub fn new(n: Int, q: Int) -> Result<CyclicQuotient> {
        if q < Int::ONE || n <= q {
            return Err(pre(format!("cyclic quotient needs n > q >= 1, got ({n},{q})")));
        }
        if gcd(&n, &q) != Int::ONE {
            return Err(pre(format!("cyclic quotient needs gcd(n,q) = 1, got ({n},{q})")));
        }
        Ok(CyclicQuotient { n, q })
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    pub fn q(&self) -> &Int {
        &self.q
    }
}

/// Resolution chain together with the lattice integers `p_i`, `q_i`,
/// where `v_i = (p_i e_1 + q_i e_2)/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionData {
    pub base: CyclicQuotient,
    pub weights: ChainWeights,
    /// `p_0, …, p_{l+1}`.
    pub p: Vec<Int>,
    /// `q_0, …, q_{l+1}`.
    pub q: Vec<Int>,
}

impl ResolutionData {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn resolution_data(cq: &CyclicQuotient) -> ResolutionData {
    let weights = hj_expand(&cq.n, &cq.q).expect("valid cyclic quotient");
    let b = weights.as_slice();
    let l = b.len();

    let mut p = vec![Int::ZERO, Int::ONE];
    for i in 1..=l {
        let next = &b[i - 1] * &p[i] - &p[i - 1];
        p.push(next);
    }

    let mut q = vec![Int::ZERO; l + 2];
    q[l] = Int::ONE;
    for i in (1..=l).rev() {
        q[i - 1] = &b[i - 1] * &q[i] - &q[i + 1];
    }

    assert_eq!(p[l + 1], cq.n, "p_(l+1) must equal n");
    assert_eq!(q[0], cq.n, "q_0 must equal n");
    assert_eq!(q[1], cq.q, "q_1 must equal q");
    ResolutionData { base: cq.clone(), weights, p, q }
}

/// Coefficients `m_i = (p_i a_1 + q_i a_2)/n` of the pullback of `a_1 D_1 + a_2 D_2`.
pub fn pullback_divisor(cq: &CyclicQuotient, a1: &Int, a2: &Int) -> Result<Vec<Int>> {
    if modulo(&(a1 + &cq.q * a2), &cq.n) != Int::ZERO {
        return Err(pre(format!(
            "a1 + q a2 = {} is not divisible by n = {}",
            a1 + &cq.q * a2,
            cq.n
        )));
    }
    let res = resolution_data(cq);
    let out = res
        .p
        .iter()
        .zip(&res.q)
        .map(|(p, q)| {
            let num = p * a1 + q * a2;
            let m = &num / &cq.n;
            assert_eq!(&m * &cq.n, num, "pullback coefficient is not integral");
            m
        })
        .collect();
    Ok(out)
}

/// Minimal generators of `{(m_1, m_2) ≥ 0 : m_1 + q m_2 ≡ 0 (mod n)}`, sorted.
///
/// For each `m_2 ∈ 1..=n` the smallest admissible `m_1` is `(−q m_2) mod n`;
/// every other element with that `m_2` is reducible by `(n, 0)`. A candidate is
/// irreducible exactly when its `m_1` is a strict running minimum.
pub fn semigroup_generators(cq: &CyclicQuotient) -> Vec<(Int, Int)> {
    let n = &cq.n;
    let mut gens = vec![(n.clone(), Int::ZERO)];
    let mut best = n.clone();
    let mut m2 = Int::ONE;
    while m2 <= *n {
        let m1 = modulo(&-(&cq.q * &m2), n);
        if m1 < best {
            best = m1.clone();
            gens.push((m1, m2.clone()));
        }
        m2 += Int::ONE;
    }
    gens.sort();
    gens
}

/// The residue map is onto exactly when `p ∤ n`.
pub fn residue_surjective(n: &Int, p: Characteristic) -> bool {
    !p.divides(n)
}

/// An equivariant resolution fails to exist only when `p | n` and `q = n − 1`.
pub fn equivariant_resolution_exists(cq: &CyclicQuotient, p: Characteristic) -> bool {
    !(p.divides(&cq.n) && cq.q == &cq.n - Int::ONE)
}

/// Smallest `j ≥ 1` with `j (1 + q) ≡ 0 (mod n)`, i.e. `n / gcd(n, q+1)`.
pub fn gorenstein_index(cq: &CyclicQuotient) -> Int {
    let g = gcd(&cq.n, &(&cq.q + IBig::ONE));
    &cq.n / g
}
