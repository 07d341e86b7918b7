//! Bounded enumeration of split pointed models with `S`-unit discriminant.
//!
//! A monic split model `y^2 = ∏ (x - a_i)` has `Δ = 2^{4g} ∏_{i<j} (a_i - a_j)^2`,
//! so with `2 ∈ S` its discriminant is an `S`-unit exactly when every root
//! difference is. After an affine change of variable the roots include 0 and
//! 1, and every other root `λ` then satisfies the `S`-unit equation
//! `λ + (1 - λ) = 1`. The search is complete only within the exponent
//! bound `B`; results are split model classes, not curve counts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{PrimeSet, Rational};
use crate::hypermodel::{good_reduction_outside, PointedModel, ReductionReport};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SUnitSolution {
    pub x: Rational,
    pub y: Rational,
}

/// `±∏ p^e` over `p ∈ S`, `|e| <= bound`.
pub(crate) fn bounded_units(s: &PrimeSet, bound: u32) -> Vec<Rational> {
    let b = bound as i32;
    let mut units = vec![Rational::one()];
    for &p in s.primes() {
        let p = Rational::from(p);
        units = units
            .iter()
            .flat_map(|u| (-b..=b).map(|e| u * p.pow(e)).collect::<Vec<_>>())
            .collect();
    }
    units.into_iter().flat_map(|u| [-&u, u]).collect()
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// All solutions of `x + y = 1` in `S`-units with every exponent of `x`
/// and `y` at most `bound` in absolute value, ascending by `x`.
pub fn s_unit_solutions(s: &PrimeSet, bound: u32) -> Vec<SUnitSolution> {
    s_unit_solutions_with_workers(s, bound, default_workers())
}

pub fn s_unit_solutions_with_workers(s: &PrimeSet, bound: u32, workers: usize) -> Vec<SUnitSolution> {
    let units = bounded_units(s, bound);
    let mut out: Vec<SUnitSolution> = with_workers(workers, || {
        units
            .par_iter()
            .filter_map(|x| {
                let y = Rational::one() - x;
                s.is_bounded_s_unit(&y, bound)
                    .then(|| SUnitSolution { x: x.clone(), y })
            })
            .collect()
    });
    out.sort();
    out
}

/// Worker count from `SHAFDEC_THREADS`, else rayon's default.
pub fn default_workers() -> usize {
    std::env::var("SHAFDEC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// A point of `P^1(Q)`. Finite points sort numerically, infinity last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjectivePoint {
    Finite(Rational),
    Infinity,
}

impl ProjectivePoint {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ProjectivePoint::Finite(r) => Some(r),
            ProjectivePoint::Infinity => None,
        }
    }
}

impl From<Rational> for ProjectivePoint {
    fn from(r: Rational) -> Self {
        ProjectivePoint::Finite(r)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(r) => write!(f, "{r}"),
            ProjectivePoint::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ProjectivePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(ProjectivePoint::Infinity),
            t => Ok(ProjectivePoint::Finite(t.parse()?)),
        }
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `z -> (a·z + b) / (c·z + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mobius {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Option<Self> {
        let det = &a * &d - &b * &c;
        (!det.is_zero()).then_some(Mobius { a, b, c, d })
    }

    pub fn apply(&self, z: &ProjectivePoint) -> ProjectivePoint {
        let (num, den) = match z {
            ProjectivePoint::Finite(x) => (&self.a * x + &self.b, &self.c * x + &self.d),
            ProjectivePoint::Infinity => (self.a.clone(), self.c.clone()),
        };
        if den.is_zero() {
            ProjectivePoint::Infinity
        } else {
            ProjectivePoint::Finite(num / den)
        }
    }

    /// The unique map sending `p -> 0`, `q -> 1`, `r -> ∞` (distinct inputs).
    pub fn normalizing(p: &ProjectivePoint, q: &ProjectivePoint, r: &ProjectivePoint) -> Self {
        use ProjectivePoint::{Finite, Infinity};
        let one = Rational::one();
        let zero = Rational::zero();
        let (a, b, c, d) = match (p, q, r) {
            (Infinity, Finite(q), Finite(r)) => (zero, q - r, one, -r),
            (Finite(p), Infinity, Finite(r)) => (one.clone(), -p, one, -r),
            (Finite(p), Finite(q), Infinity) => (one, -p, zero, q - p),
            (Finite(p), Finite(q), Finite(r)) => {
                let qr = q - r;
                let qp = q - p;
                (qr.clone(), -(p * &qr), qp.clone(), -(r * &qp))
            }
            _ => unreachable!("normalizing triple must be distinct"),
        };
        Mobius { a, b, c, d }
    }
}

/// A branch configuration up to `PGL_2(Q)`. `signature` is the
/// lexicographically least sorted image of the remaining points over all
/// ordered triples sent to `(0, 1, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelClass {
    pub points: Vec<ProjectivePoint>,
    pub signature: Vec<Rational>,
}

pub fn canonical_class(points: &[ProjectivePoint]) -> Result<ModelClass> {
    if points.len() < 4 {
        return Err(Error::TooFewPoints);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedPoint);
    }
    let n = sorted.len();
    let mut best: Option<Vec<Rational>> = None;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let m = Mobius::normalizing(&sorted[i], &sorted[j], &sorted[k]);
                let mut image: Vec<Rational> = (0..n)
                    .filter(|&t| t != i && t != j && t != k)
                    .map(|t| match m.apply(&sorted[t]) {
                        ProjectivePoint::Finite(r) => r,
                        ProjectivePoint::Infinity => unreachable!("only the third point maps to ∞"),
                    })
                    .collect();
                image.sort();
                if best.as_ref().is_none_or(|b| image.cmp(b) == Ordering::Less) {
                    best = Some(image);
                }
            }
        }
    }
    Ok(ModelClass { points: sorted, signature: best.expect("at least one triple") })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedClass {
    pub class: ModelClass,
    /// Finite Weierstrass points of the representative, ascending.
    pub roots: Vec<Rational>,
    pub representative: PointedModel,
    pub report: ReductionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub genus: u32,
    pub primes: PrimeSet,
    pub bound: u32,
    /// Always `"split model classes, complete within bound"`.
    pub label: String,
    /// Number of `λ` with `λ` and `λ - 1` bounded `S`-units.
    pub lambda_count: usize,
    pub classes: Vec<EnumeratedClass>,
}

/// Candidates `λ != 0, 1` with `λ` and `1 - λ` bounded `S`-units, in the
/// order of the solutions `(x, λ)` ascending by `x`.
fn lambda_set(s: &PrimeSet, bound: u32, workers: usize) -> Vec<Rational> {
    s_unit_solutions_with_workers(s, bound, workers)
        .into_iter()
        .map(|sol| sol.y)
        .collect()
}

/// Index tuples of `size`-cliques in the compatibility graph, found by
/// extending in increasing index order from a fixed first vertex.
fn cliques_from(first: usize, size: usize, adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn extend(cur: &mut Vec<usize>, size: usize, adj: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&l| l + 1);
        for v in start..adj.len() {
            if cur.iter().all(|&u| adj[u][v]) {
                cur.push(v);
                extend(cur, size, adj, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![first], size, adj, &mut out);
    out
}

pub fn enumerate_split_models(genus: u32, s: &PrimeSet, bound: u32) -> Result<Enumeration> {
    enumerate_split_models_with_workers(genus, s, bound, default_workers())
}

pub fn enumerate_split_models_with_workers(
    genus: u32,
    s: &PrimeSet,
    bound: u32,
    workers: usize,
) -> Result<Enumeration> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    s.require_two()?;
    let lambdas = lambda_set(s, bound, workers);
    let free = 2 * genus as usize - 1;
    let n = lambdas.len();

    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && s.is_bounded_s_unit(&(&lambdas[i] - &lambdas[j]), bound))
                .collect()
        })
        .collect();

    // signature -> (discovery key, sorted roots); the smallest key wins, so
    // the result does not depend on how the work was partitioned.
    type Found = BTreeMap<Vec<Rational>, (Vec<usize>, Vec<Rational>, ModelClass)>;
    let merge = |mut a: Found, b: Found| {
        for (sig, entry) in b {
            match a.get(&sig) {
                Some(existing) if existing.0 <= entry.0 => {}
                _ => {
                    a.insert(sig, entry);
                }
            }
        }
        a
    };
    let found: Result<Found> = with_workers(workers, || {
        (0..n)
            .into_par_iter()
            .map(|first| -> Result<Found> {
                let mut local = Found::new();
                for clique in cliques_from(first, free, &adj) {
                    let mut roots = vec![Rational::zero(), Rational::one()];
                    roots.extend(clique.iter().map(|&i| lambdas[i].clone()));
                    roots.sort();
                    let mut points: Vec<ProjectivePoint> =
                        roots.iter().cloned().map(ProjectivePoint::Finite).collect();
                    points.push(ProjectivePoint::Infinity);
                    let class = canonical_class(&points)?;
                    let entry = (clique, roots, class.clone());
                    local = merge(local, Found::from([(class.signature, entry)]));
                }
                Ok(local)
            })
            .try_reduce(Found::new, |a, b| Ok(merge(a, b)))
    });

    let mut classes = Vec::new();
    for (_, (_, roots, class)) in found? {
        let representative = PointedModel::from_roots(&roots)?;
        let report = good_reduction_outside(&representative, s)?;
        classes.push(EnumeratedClass { class, roots, representative, report });
    }
    Ok(Enumeration {
        genus,
        primes: s.clone(),
        bound,
        label: "split model classes, complete within bound".to_string(),
        lambda_count: n,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn fin(n: i64, d: i64) -> ProjectivePoint {
        ProjectivePoint::Finite(r(n, d))
    }

    fn s(p: &[u64]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn s_unit_examples() {
        let sols = s_unit_solutions(&s(&[2]), 10);
        let pairs: Vec<(Rational, Rational)> = sols.into_iter().map(|x| (x.x, x.y)).collect();
        assert_eq!(
            pairs,
            vec![(r(-1, 1), r(2, 1)), (r(1, 2), r(1, 2)), (r(2, 1), r(-1, 1))]
        );
        assert!(s_unit_solutions(&PrimeSet::empty(), 5).is_empty());
    }

    #[test]
    fn s_unit_two_three_contains_known() {
        let sols = s_unit_solutions(&s(&[2, 3]), 6);
        for (x, y) in [(2, -1), (3, -2), (4, -3), (9, -8)] {
            assert!(sols.contains(&SUnitSolution { x: r(x, 1), y: r(y, 1) }));
        }
        for (x, y) in [((1, 4), (3, 4)), ((1, 9), (8, 9)), ((3, 4), (1, 4))] {
            assert!(sols.contains(&SUnitSolution { x: r(x.0, x.1), y: r(y.0, y.1) }));
        }
        for sol in &sols {
            assert!(sols.contains(&SUnitSolution { x: sol.y.clone(), y: sol.x.clone() }));
        }
    }

    #[test]
    fn workers_do_not_change_output() {
        let a = s_unit_solutions_with_workers(&s(&[2, 3, 5]), 3, 1);
        let b = s_unit_solutions_with_workers(&s(&[2, 3, 5]), 3, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn harmonic_class() {
        let a = canonical_class(&[fin(0, 1), fin(1, 1), fin(-1, 1), ProjectivePoint::Infinity]).unwrap();
        assert_eq!(a.signature, vec![r(-1, 1)]);
        let b = canonical_class(&[fin(0, 1), fin(1, 1), fin(2, 1), ProjectivePoint::Infinity]).unwrap();
        assert_eq!(b.signature, vec![r(-1, 1)]);
    }

    #[test]
    fn lambda_and_reciprocal() {
        for (n, d) in [(3, 1), (-5, 7), (9, 4)] {
            let a = canonical_class(&[fin(0, 1), fin(1, 1), ProjectivePoint::Infinity, fin(n, d)]).unwrap();
            let b = canonical_class(&[fin(0, 1), fin(1, 1), ProjectivePoint::Infinity, fin(d, n)]).unwrap();
            assert_eq!(a.signature, b.signature);
        }
    }

    #[test]
    fn class_errors() {
        assert_eq!(
            canonical_class(&[fin(0, 1), fin(1, 1), ProjectivePoint::Infinity]),
            Err(Error::TooFewPoints)
        );
        assert_eq!(
            canonical_class(&[fin(0, 1), fin(1, 1), fin(0, 1), ProjectivePoint::Infinity]),
            Err(Error::RepeatedPoint)
        );
    }

    #[test]
    fn mobius_normalizing_hits_targets() {
        let pts = [fin(3, 2), ProjectivePoint::Infinity, fin(-7, 1), fin(0, 1)];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let m = Mobius::normalizing(&pts[i], &pts[j], &pts[k]);
                    assert_eq!(m.apply(&pts[i]), fin(0, 1));
                    assert_eq!(m.apply(&pts[j]), fin(1, 1));
                    assert_eq!(m.apply(&pts[k]), ProjectivePoint::Infinity);
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let e = enumerate_split_models(1, &s(&[2]), 10).unwrap();
        assert_eq!(e.classes.len(), 1);
        assert_eq!(e.classes[0].roots, vec![r(0, 1), r(1, 1), r(2, 1)]);
        assert_eq!(e.classes[0].report.discriminant, r(64, 1));
        assert!(enumerate_split_models(2, &s(&[2]), 10).unwrap().classes.is_empty());
        assert_eq!(enumerate_split_models(1, &PrimeSet::empty(), 5), Err(Error::MissingPrimeTwo));
    }

    #[test]
    fn enumeration_is_partition_independent() {
        let a = enumerate_split_models_with_workers(2, &s(&[2, 3]), 4, 1).unwrap();
        let b = enumerate_split_models_with_workers(2, &s(&[2, 3]), 4, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.classes.iter().all(|c| c.report.good_outside_s));
    }

    #[test]
    fn point_parsing() {
        assert_eq!("inf".parse::<ProjectivePoint>().unwrap(), ProjectivePoint::Infinity);
        assert_eq!("-2/4".parse::<ProjectivePoint>().unwrap(), fin(-1, 2));
        assert!(fin(100, 1) < ProjectivePoint::Infinity);
    }
}
