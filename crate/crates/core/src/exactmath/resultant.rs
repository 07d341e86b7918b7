//! Resultants and discriminants.
//!
//! Conventions: `Res(f, g) = lc(f)^deg(g) · ∏_{f(α)=0} g(α)`, which is the
//! determinant of the Sylvester matrix with the `deg g` rows of `f` on top,
//! and `disc(f) = (-1)^{n(n-1)/2} · Res(f, f') / lc(f)` for `n = deg f`.
//! A linear polynomial has discriminant 1.
//!
//! Inputs are first scaled to integer coefficients so the determinant can be
//! taken by Bareiss elimination, where every intermediate division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exactmath::poly::Poly;
use crate::exactmath::rational::Rational;

/// The `(m+n) × (m+n)` Sylvester matrix of integer polynomials given in
/// ascending order, with `m = deg f` and `n = deg g`.
pub fn sylvester_matrix(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant of a square integer matrix by fraction-free Gaussian
/// elimination (Bareiss) with row pivoting.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
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
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Integer coefficients `c·f` with `c` the lcm of the denominators.
fn clear_denominators(f: &Poly) -> (Vec<BigInt>, BigInt) {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    (ints, lcm)
}

pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational> {
    f.require_nonzero()?;
    g.require_nonzero()?;
    let (fi, cf) = clear_denominators(f);
    let (gi, cg) = clear_denominators(g);
    let m = f.deg() as u32;
    let n = g.deg() as u32;
    let det = bareiss_determinant(sylvester_matrix(&fi, &gi));
    // Res(cf·f, cg·g) = cf^n · cg^m · Res(f, g)
    let scale = Pow::pow(&cf, n) * Pow::pow(&cg, m);
    Ok(Rational::new(det, scale))
}

pub fn discriminant(f: &Poly) -> Result<Rational> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::DegreeTooLow),
        Some(n) => n,
    };
    let res = resultant(f, &f.derivative())?;
    let d = res / f.leading_coeff();
    if (n * (n - 1) / 2) % 2 == 1 {
        Ok(-d)
    } else {
        Ok(d)
    }
}
