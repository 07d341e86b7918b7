//! Exhaustive rational root search with exact deflation.
//!
//! The polynomial is scaled to primitive integer coefficients; any rational
//! root `p/q` in lowest terms then has `p | a_0` and `q | a_n`. Candidates
//! are screened with the divisibility filters `(q - p) | f(1)` and
//! `(q + p) | f(-1)` before an exact evaluation.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactmath::factor::divisors;
use crate::exactmath::poly::Poly;
use crate::exactmath::rational::Rational;

/// Rational roots with multiplicity, ascending, and the cofactor `c` with
/// `f = c · ∏ (x - r)^m` exactly. The cofactor has no rational roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSplit {
    pub roots: Vec<(Rational, u32)>,
    pub cofactor: Poly,
}

impl RationalSplit {
    pub fn is_split(&self) -> bool {
        self.cofactor.deg() == 0
    }

    pub fn is_simple(&self) -> bool {
        self.roots.iter().all(|(_, m)| *m == 1)
    }

    /// Roots repeated according to multiplicity.
    pub fn root_list(&self) -> Vec<Rational> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m as usize))
            .collect()
    }
}

/// `q^n · h(p/q)` for integer coefficients `h` (ascending).
fn homogeneous_eval(h: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let n = h.len() - 1;
    let mut acc = BigInt::zero();
    let mut p_pow = BigInt::one();
    let mut q_pows: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut qp = BigInt::one();
    for _ in 0..=n {
        q_pows.push(qp.clone());
        qp *= q;
    }
    for (i, a) in h.iter().enumerate() {
        if !a.is_zero() {
            acc += a * &p_pow * &q_pows[n - i];
        }
        p_pow *= p;
    }
    acc
}

fn int_eval(h: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    h.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d).is_zero()
    }
}

fn distinct_roots_of_primitive(h: &[BigInt]) -> BTreeSet<Rational> {
    let mut found = BTreeSet::new();
    let a0 = h[0].magnitude().clone();
    let an = h[h.len() - 1].magnitude().clone();
    let f1 = int_eval(h, 1);
    let fm1 = int_eval(h, -1);
    let num_divs: Vec<BigUint> = divisors(&a0);
    let den_divs: Vec<BigUint> = divisors(&an);
    for q in &den_divs {
        let q = BigInt::from(q.clone());
        for p in &num_divs {
            let p = BigInt::from(p.clone());
            if !p.gcd(&q).is_one() {
                continue;
            }
            for p in [p.clone(), -p] {
                if !f1.is_zero() && !divides(&(&q - &p), &f1) {
                    continue;
                }
                if !fm1.is_zero() && !divides(&(&q + &p), &fm1) {
                    continue;
                }
                if homogeneous_eval(h, &p, &q).is_zero() {
                    found.insert(Rational::new(p, q.clone()));
                }
            }
        }
    }
    found
}

pub fn split_rational(f: &Poly) -> Result<RationalSplit> {
    f.require_nonzero()?;
    let ints = f.primitive_integer_coeffs();
    let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
    let core = &ints[zero_mult..];

    let mut candidates = BTreeSet::new();
    if zero_mult > 0 {
        candidates.insert(Rational::zero());
    }
    if core.len() > 1 {
        candidates.extend(distinct_roots_of_primitive(core));
    }

    let mut cofactor = f.clone();
    let mut roots = Vec::with_capacity(candidates.len());
    for r in candidates {
        let lin = Poly::linear_root(&r);
        let mut m = 0;
        while let Some(q) = cofactor.exact_div(&lin) {
            cofactor = q;
            m += 1;
        }
        debug_assert!(m > 0);
        roots.push((r, m));
    }
    Ok(RationalSplit { roots, cofactor })
}

/// All rational roots of `f` with multiplicities, in ascending order.
pub fn rational_roots(f: &Poly) -> Result<Vec<(Rational, u32)>> {
    Ok(split_rational(f)?.roots)
}
