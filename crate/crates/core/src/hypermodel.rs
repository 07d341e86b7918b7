//! Pointed hyperelliptic models `y^2 + Q(x)·y = P(x)` with `deg P = 2g+1`
//! and `deg Q <= g`, their discriminant
//! `Δ = 2^{4g} · disc(P + Q^2/4)`, and reduction tests.
//!
//! Verdicts are about the given model: a prime outside `S` dividing `Δ`
//! witnesses bad reduction of this model, which for a non-minimal model only
//! bounds the bad primes of the curve from above.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::factor::is_prime_u64;
use crate::exactmath::primes::prime_divisors;
use crate::exactmath::{discriminant, split_rational, Poly, PrimeSet, Rational, SupportMap};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelJson", into = "ModelJson")]
pub struct PointedModel {
    genus: u32,
    p: Poly,
    q: Poly,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    genus: u32,
    #[serde(rename = "P")]
    p: Poly,
    #[serde(rename = "Q", default)]
    q: Poly,
}

impl TryFrom<ModelJson> for PointedModel {
    type Error = Error;
    fn try_from(m: ModelJson) -> Result<Self> {
        PointedModel::new(m.genus, m.p, m.q)
    }
}

impl From<PointedModel> for ModelJson {
    fn from(m: PointedModel) -> Self {
        ModelJson { genus: m.genus, p: m.p, q: m.q }
    }
}

impl PointedModel {
    pub fn new(genus: u32, p: Poly, q: Poly) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidGenus(genus));
        }
        let g = genus as usize;
        if p.degree() != Some(2 * g + 1) {
            return Err(Error::DegreeMismatch { expected: 2 * g + 1, found: p.deg() });
        }
        if q.degree().is_some_and(|d| d > g) {
            return Err(Error::DegreeMismatch { expected: g, found: q.deg() });
        }
        let m = PointedModel { genus, p, q };
        if !m.completed().is_squarefree() {
            return Err(Error::NonSquarefree);
        }
        Ok(m)
    }

    /// `y^2 = P(x)`, with the genus read off `deg P`.
    /// Parse and validate `{"genus": g, "P": [...], "Q": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ModelJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))?;
        raw.try_into()
    }

    pub fn odd(p: Poly) -> Result<Self> {
        let d = p.deg();
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::DegreeMismatch { expected: 2 * (d / 2).max(1) + 1, found: d });
        }
        PointedModel::new((d / 2) as u32, p, Poly::zero())
    }

    /// `y^2 = ∏ (x - a)` over an odd number (at least three) of roots.
    pub fn from_roots(roots: &[Rational]) -> Result<Self> {
        PointedModel::odd(Poly::from_roots(roots))
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    /// `P + Q^2/4`, the polynomial whose roots are the finite
    /// Weierstrass points.
    pub fn completed(&self) -> Poly {
        if self.q.is_zero() {
            return self.p.clone();
        }
        &self.p + &(&self.q * &self.q).scale(&Rational::new(1, 4))
    }

    fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        self.p.coeffs().iter().chain(self.q.coeffs())
    }
}

impl fmt::Display for PointedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "y^2 = {}", self.p)
        } else {
            write!(f, "y^2 + ({})*y = {}", self.q, self.p)
        }
    }
}

impl fmt::Debug for PointedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointedModel(g={}, {})", self.genus, self)
    }
}

/// `2^{4g} · disc(P + Q^2/4)`.
pub fn lockhart_discriminant(m: &PointedModel) -> Result<Rational> {
    let d = discriminant(&m.completed())?;
    if d.is_zero() {
        return Err(Error::NonSquarefree);
    }
    Ok(Rational::from(2).pow(4 * m.genus as i32) * d)
}

/// The model `y^2 = P + Q^2/4`, obtained by `y -> y - Q/2`. Needs `2 ∈ S`
/// so that S-integral models stay S-integral.
pub fn complete_the_square(m: &PointedModel, s: &PrimeSet) -> Result<PointedModel> {
    s.require_two()?;
    if m.q.is_zero() {
        return Ok(m.clone());
    }
    Ok(PointedModel { genus: m.genus, p: m.completed(), q: Poly::zero() })
}

mod decimal_list {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|p| p.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub discriminant: Rational,
    pub s_part: SupportMap,
    /// Primes outside `S` dividing the discriminant, ascending.
    #[serde(with = "decimal_list")]
    pub bad_primes: Vec<BigUint>,
    pub good_outside_s: bool,
    /// Always `"model-level"`: the verdict concerns this model only.
    pub scope: String,
}

/// Build a report from an already computed discriminant.
pub fn reduction_report(discriminant: Rational, s: &PrimeSet) -> Result<ReductionReport> {
    if discriminant.is_zero() {
        return Err(Error::NonSquarefree);
    }
    let (s_part, residual) = s.support(&discriminant)?;
    let bad_primes = prime_divisors(&residual);
    Ok(ReductionReport {
        discriminant,
        s_part,
        good_outside_s: bad_primes.is_empty(),
        bad_primes,
        scope: "model-level".to_string(),
    })
}

pub fn good_reduction_outside(m: &PointedModel, s: &PrimeSet) -> Result<ReductionReport> {
    if let Some(c) = m.coefficients().find(|c| !s.is_s_integer(c)) {
        return Err(Error::NotSIntegral(c.to_string()));
    }
    reduction_report(lockhart_discriminant(m)?, s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootMultiplicity {
    pub root: Rational,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassData {
    pub finite_roots: Vec<RootMultiplicity>,
    /// Degrees of the part of `P + Q^2/4` without rational roots; empty
    /// when everything splits. Not factored further.
    pub nonrational_degree_profile: Vec<usize>,
    pub includes_infinity: bool,
    pub total: usize,
}

pub fn weierstrass_points(m: &PointedModel) -> Result<WeierstrassData> {
    let f = m.completed();
    if !f.is_squarefree() {
        return Err(Error::NonSquarefree);
    }
    let split = split_rational(&f)?;
    let cofactor_degree = split.cofactor.deg();
    let nonrational_degree_profile = if cofactor_degree > 0 { vec![cofactor_degree] } else { vec![] };
    let includes_infinity = f.deg() % 2 == 1;
    let total = split.roots.len() + cofactor_degree + usize::from(includes_infinity);
    Ok(WeierstrassData {
        finite_roots: split
            .roots
            .into_iter()
            .map(|(root, multiplicity)| RootMultiplicity { root, multiplicity })
            .collect(),
        nonrational_degree_profile,
        includes_infinity,
        total,
    })
}

/// Polynomials over `F_p`, coefficients ascending, trailing zeros trimmed.
mod modp {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(p as i128) as u64
    }

    pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
        trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| ((i as u128 * *c as u128) % p as u128) as u64)
                .collect(),
        )
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lc_inv = inv(b[db], p) as u128;
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = (r[r.len() - 1] as u128 * lc_inv % p as u128) as u64;
            for (j, bj) in b.iter().enumerate() {
                let sub = (c as u128 * *bj as u128 % p as u128) as u64;
                r[k + j] = (r[k + j] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    /// Degree of `gcd(a, b)`; `None` when both are zero.
    pub fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> Option<usize> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a.len().checked_sub(1)
    }
}

fn rational_mod(c: &Rational, p: u64) -> u64 {
    let bp = BigInt::from(p);
    let n = c.numer().mod_floor(&bp).to_u64().unwrap_or(0);
    let d = c.denom().mod_floor(&bp).to_u64().unwrap_or(0);
    ((n as u128 * modp::inv(d, p) as u128) % p as u128) as u64
}

fn check_reduction_prime(m: &PointedModel, p: u64) -> Result<Poly> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::BadPrime(p));
    }
    let f = m.completed();
    let bp = BigInt::from(p);
    if f.coeffs().iter().any(|c| c.denom().is_multiple_of(&bp)) {
        return Err(Error::BadPrime(p));
    }
    Ok(f)
}

/// Route through `F_p`: the reduction of `P + Q^2/4` keeps its degree and
/// stays squarefree, so the `2g+2` geometric Weierstrass points reduce to
/// `2g+2` distinct points.
fn bijection_over_fp(f: &Poly, p: u64) -> bool {
    let reduced = modp::trim(f.coeffs().iter().map(|c| rational_mod(c, p)).collect());
    if reduced.len() != f.coeffs().len() {
        return false;
    }
    modp::gcd_degree(&reduced, &modp::derivative(&reduced, p), p) == Some(0)
}

/// Route through the discriminant: `p` divides neither the numerator of
/// `Δ` nor the numerator of the leading coefficient of `P + Q^2/4`.
pub fn reduction_bijection_by_discriminant(m: &PointedModel, p: u64) -> Result<bool> {
    let f = check_reduction_prime(m, p)?;
    let delta = lockhart_discriminant(m)?;
    let bp = BigInt::from(p);
    Ok(!delta.numer().is_multiple_of(&bp) && !f.leading_coeff().numer().is_multiple_of(&bp))
}

/// Whether reduction mod `p` is a bijection on geometric Weierstrass
/// points. Computed over `F_p`; the discriminant route is checked against
/// it in debug builds.
pub fn reduction_bijection_check(m: &PointedModel, p: u64) -> Result<bool> {
    let f = check_reduction_prime(m, p)?;
    let verdict = bijection_over_fp(&f, p);
    debug_assert_eq!(Ok(verdict), reduction_bijection_by_discriminant(m, p));
    Ok(verdict)
}
