//! Finite prime sets `S` and the `S`-part of a rational number.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::factor::{factorize, is_prime_u64};
use crate::exactmath::rational::Rational;

/// A finite set of rational primes; `O_S = Z[1/p : p ∈ S]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    /// Sorts and deduplicates; every element must be prime.
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        primes.sort_unstable();
        primes.dedup();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime_u64(p)) {
            return Err(Error::NotPrime(bad));
        }
        Ok(PrimeSet { primes })
    }

    pub fn empty() -> Self {
        PrimeSet::default()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn contains_big(&self, p: &BigUint) -> bool {
        u64::try_from(p).is_ok_and(|p| self.contains(p))
    }

    /// Every maximal ideal above 2 lies in `S`; over `Q` that is `2 ∈ S`.
    pub fn require_two(&self) -> Result<()> {
        if self.contains(2) {
            Ok(())
        } else {
            Err(Error::MissingPrimeTwo)
        }
    }

    /// `O_S` is a principal ring. Every localization of `Z` is a PID, so
    /// over the rationals this always holds.
    pub fn is_principal(&self) -> bool {
        true
    }

    pub fn support(&self, q: &Rational) -> Result<(SupportMap, Rational)> {
        support(q, self)
    }

    pub fn is_s_integer(&self, q: &Rational) -> bool {
        q.is_zero() || support(q, self).is_ok_and(|(_, res)| res.is_integer())
    }

    pub fn is_s_unit(&self, q: &Rational) -> bool {
        !q.is_zero() && support(q, self).is_ok_and(|(_, res)| res.is_one())
    }

    /// Like [`is_s_unit`](Self::is_s_unit), but also bounds every exponent
    /// by `bound` in absolute value.
    pub fn is_bounded_s_unit(&self, q: &Rational, bound: u32) -> bool {
        match support(q, self) {
            Ok((map, res)) => {
                res.is_one() && map.exponents.values().all(|e| e.unsigned_abs() <= bound as u64)
            }
            Err(_) => false,
        }
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(s: PrimeSet) -> Self {
        s.primes
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Comma-separated list such as `"2,3,5"`; the empty string is `S = {}`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(PrimeSet::empty());
        }
        let primes = t
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| Error::ParsePrimeSet(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(primes)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// `q = unit_sign · ∏ p^e · residual` with `residual > 0` coprime to `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportMap {
    pub unit_sign: i8,
    /// Serialized with decimal-string keys, like any JSON object.
    #[serde(with = "prime_keys")]
    pub exponents: BTreeMap<u64, i64>,
}

mod prime_keys {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, i64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(p, e)| (p.to_string(), e)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, i64>, D::Error> {
        BTreeMap::<String, i64>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.parse().map(|p| (p, v)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl SupportMap {
    /// `unit_sign · ∏ p^e`
    pub fn value(&self) -> Rational {
        let mut v = Rational::from(self.unit_sign as i64);
        for (&p, &e) in &self.exponents {
            v *= Rational::from(p).pow(e as i32);
        }
        v
    }
}

fn strip_prime(n: &mut BigInt, p: &BigInt) -> i64 {
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        *n = q;
        e += 1;
    }
}

/// Split `q` into its `S`-part and a positive residual coprime to `S`.
pub fn support(q: &Rational, s: &PrimeSet) -> Result<(SupportMap, Rational)> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit_sign = if q.is_negative() { -1 } else { 1 };
    let mut num = BigInt::from(q.numer_magnitude());
    let mut den = q.denom().clone();
    let mut exponents = BTreeMap::new();
    for &p in s.primes() {
        let bp = BigInt::from(p);
        let e = strip_prime(&mut num, &bp) - strip_prime(&mut den, &bp);
        if e != 0 {
            exponents.insert(p, e);
        }
    }
    Ok((SupportMap { unit_sign, exponents }, Rational::new(num, den)))
}

/// Primes dividing the numerator or denominator of a rational, ascending.
pub fn prime_divisors(q: &Rational) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = factorize(&q.numer_magnitude()).into_keys().collect();
    out.extend(factorize(&q.denom_magnitude()).into_keys());
    out.sort();
    out.dedup();
    out.retain(|p| !p.is_one());
    out
}
