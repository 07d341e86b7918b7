//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rational::Rational;

/// Coefficients in ascending degree order; the empty vector is the zero
/// polynomial and the last stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl From<Vec<Rational>> for Poly {
    fn from(coeffs: Vec<Rational>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<Rational> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Parse an ascending JSON array of rational strings.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidJson(e.to_string()))
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        Poly::new(vec![-a, Rational::one()])
    }

    /// The monic polynomial `∏ (x - a)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(Poly::constant(Rational::one()), |acc, a| &acc * &Poly::linear_root(a))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i as u64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * &lc_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree means `gcd(f, f')` is a nonzero constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `f(x + t)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, t: &Rational) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1].clone();
                c[j] += &next * t;
            }
        }
        Poly::new(c)
    }

    /// `x^n f(1/x)`; requires `n >= deg f`.
    pub fn reversed(&self, n: usize) -> Poly {
        assert!(self.is_zero() || n >= self.deg());
        let mut c = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Poly::new(c)
    }

    /// Scale by a positive rational so all coefficients become coprime
    /// integers; returns the integer coefficients (ascending).
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &content).collect()
    }

    pub fn from_integer_coeffs(coeffs: &[BigInt]) -> Poly {
        Poly::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Error helper for operations that need a nonzero input.
    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(())
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || i == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn trims_and_degree() {
        let p = Poly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::from_i64s(&[0, 0]).degree(), None);
        assert!(Poly::from_i64s(&[]).is_zero());
    }

    #[test]
    fn division_reconstructs() {
        let f = Poly::from_i64s(&[6, 11, 6, 1]);
        let g = Poly::from_i64s(&[1, 1]);
        let (q, rem) = f.div_rem(&g);
        assert!(rem.is_zero());
        assert_eq!(q, Poly::from_i64s(&[6, 5, 1]));
        let h = Poly::from_i64s(&[1, 0, 3]);
        let (q, rem) = f.div_rem(&h);
        assert_eq!(&(&q * &h) + &rem, f);
    }

    #[test]
    fn shift_matches_composition() {
        // (x+2)^3 - (x+2) = x^3 + 6x^2 + 11x + 6
        let f = Poly::from_i64s(&[0, -1, 0, 1]);
        assert_eq!(f.shift(&Rational::from(2)), Poly::from_i64s(&[6, 11, 6, 1]));
        let t = r(-3, 7);
        let x = r(5, 2);
        assert_eq!(f.shift(&t).eval(&x), f.eval(&(&x + &t)));
    }

    #[test]
    fn reversal() {
        let p = Poly::from_i64s(&[6, 11, 6, 1]);
        assert_eq!(p.reversed(4), Poly::from_i64s(&[0, 1, 6, 11, 6]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = Poly::from_roots(&[r(1, 2), r(3, 1)]);
        let b = Poly::from_roots(&[r(1, 2), r(-1, 1)]);
        assert_eq!(a.gcd(&b), Poly::linear_root(&r(1, 2)));
        assert!(a.is_squarefree());
        let sq = Poly::from_roots(&[r(2, 1), r(2, 1), r(0, 1)]);
        assert!(!sq.is_squarefree());
    }

    #[test]
    fn primitive_integer_scaling() {
        let p = Poly::new(vec![r(1, 4), r(0, 1), r(0, 1), r(1, 1)]);
        assert_eq!(
            p.primitive_integer_coeffs(),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(0), BigInt::from(4)]
        );
        let q = Poly::from_i64s(&[-6, 0, -4]);
        assert_eq!(
            q.primitive_integer_coeffs(),
            vec![BigInt::from(-3), BigInt::from(0), BigInt::from(-2)]
        );
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64s(&[0, -1, 0, 1]).to_string(), "x^3 - x");
        let p = Poly::new(vec![r(1, 4), r(0, 1), r(-1, 2), r(1, 1)]);
        assert_eq!(p.to_string(), "x^3 - (1/2)*x^2 + 1/4");
    }

    #[test]
    fn serde_trims_trailing_zeros() {
        let p: Poly = serde_json::from_str(r#"["1","0","-1/2","0"]"#).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1","0","-1/2"]"#);
    }
}
