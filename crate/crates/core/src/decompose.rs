//! Recursive splitting of a split pointed model into genus-one pieces.
//!
//! One step, for a genus-`g` model `y^2 = P(x)` with `deg P = 2g+1`:
//!
//! 1. translate `x -> x + t` so that `P(t) != 0`;
//! 2. reverse, `R(z) = z^{2g+2} P(1/z)`, an even model of degree `2g+2`
//!    whose roots are `0` and the reciprocals of the translated roots;
//! 3. split `R = R1·R2` with `deg R1 = 3`, `deg R2 = 2g-1`;
//! 4. report reduction of `y^2 = R1` and `y^2 = R2`, the resultant term
//!    linking them, and the genus of their fiber product;
//! 5. recurse on `y^2 = R2`, which has odd degree and so is already a
//!    pointed model of genus `g-1`.
//!
//! The translation is chosen so that, when possible, every `t - a` is an
//! `S`-unit: then `t` stays distinct from the branch points modulo every
//! prime outside `S` and the reversal keeps good reduction. Candidates are
//! tried in order: small non-negative integers, the roots set aside in
//! `R1` at the parent step, then `S`-unit translates of the smallest root.
//! If none qualifies, the smallest non-negative integer with `P(t) != 0`
//! is used and the reports show the resulting bad primes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::enumerate::bounded_units;
use crate::error::{Error, Result};
use crate::exactmath::primes::prime_divisors;
use crate::exactmath::{discriminant, resultant, split_rational, Poly, PrimeSet, Rational, SupportMap};
use crate::fiberprod::{fiber_genus, genus_of_even_model, FiberGenusReport};
use crate::hypermodel::{complete_the_square, reduction_report, PointedModel, ReductionReport};

/// Upper limit on the number of `S`-unit translates tried for a shift.
const SHIFT_TRANSLATE_BUDGET: usize = 20_000;
const SHIFT_TRANSLATE_MAX_EXPONENT: u32 = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitStrategy {
    #[default]
    SortedFirstThree,
    Exhaustive,
}

impl FromStr for SplitStrategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sorted-first-three" | "sorted" => Ok(SplitStrategy::SortedFirstThree),
            "exhaustive" => Ok(SplitStrategy::Exhaustive),
            other => Err(format!("unknown split strategy {other:?}")),
        }
    }
}

impl fmt::Display for SplitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitStrategy::SortedFirstThree => "sorted-first-three",
            SplitStrategy::Exhaustive => "exhaustive",
        })
    }
}

/// One factorization `R = R1·R2`; `R1` carries the leading coefficient of
/// `R` and `R2` is monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitChoice {
    pub strategy: SplitStrategy,
    pub r1_roots: Vec<Rational>,
    pub r2_roots: Vec<Rational>,
    pub r1: Poly,
    pub r2: Poly,
}

/// Smallest non-negative integer `t` with `P(t) != 0`, and `P(x + t)`.
pub fn shift_to_nonzero_constant(p: &Poly) -> Result<(Rational, Poly)> {
    p.require_nonzero()?;
    let t = (0u64..)
        .map(Rational::from)
        .find(|t| !p.eval(t).is_zero())
        .expect("a nonzero polynomial has finitely many roots");
    let shifted = p.shift(&t);
    Ok((t, shifted))
}

/// `R(z) = z^{2g+2} P(1/z)` for `deg P = 2g+1` and `P(0) != 0`.
pub fn reverse(p: &Poly, genus: u32) -> Result<Poly> {
    let n = 2 * genus as usize + 1;
    if p.degree() != Some(n) {
        return Err(Error::DegreeMismatch { expected: n, found: p.deg() });
    }
    if p.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(p.reversed(n + 1))
}

fn partition(r: &Poly, roots: &[Rational], pick: [usize; 3], strategy: SplitStrategy) -> SplitChoice {
    let r1_roots: Vec<Rational> = pick.iter().map(|&i| roots[i].clone()).collect();
    let r2_roots: Vec<Rational> = roots
        .iter()
        .enumerate()
        .filter(|(i, _)| !pick.contains(i))
        .map(|(_, a)| a.clone())
        .collect();
    let r1 = Poly::from_roots(&r1_roots).scale(&r.leading_coeff());
    let r2 = Poly::from_roots(&r2_roots);
    SplitChoice { strategy, r1_roots, r2_roots, r1, r2 }
}

/// Partitions of the (ascending, simple) roots of `R`. The sorted rule
/// gives one choice; the exhaustive rule all `C(2g+2, 3)` of them in
/// lexicographic order of index triples, starting with the sorted one.
fn split_with_roots(r: &Poly, roots: &[Rational], strategy: SplitStrategy) -> Vec<SplitChoice> {
    match strategy {
        SplitStrategy::SortedFirstThree => vec![partition(r, roots, [0, 1, 2], strategy)],
        SplitStrategy::Exhaustive => {
            let n = roots.len();
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        out.push(partition(r, roots, [i, j, k], strategy));
                    }
                }
            }
            out
        }
    }
}

pub fn split(r: &Poly, genus: u32, strategy: SplitStrategy) -> Result<Vec<SplitChoice>> {
    if genus < 2 {
        return Err(Error::InvalidGenus(genus));
    }
    let s = split_rational(r)?;
    if !s.is_split() {
        return Err(Error::NotSplit);
    }
    if !s.is_simple() {
        return Err(Error::RepeatedRoots);
    }
    let n = 2 * genus as usize + 2;
    if r.degree() != Some(n) {
        return Err(Error::DegreeMismatch { expected: n, found: r.deg() });
    }
    Ok(split_with_roots(r, &s.root_list(), strategy))
}

/// Support of a nonzero rational relative to `S`, with the primes outside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    pub value: Rational,
    pub s_part: SupportMap,
    pub outside_primes: Vec<String>,
}

impl SupportReport {
    fn new(value: Rational, s: &PrimeSet) -> Result<Self> {
        let (s_part, residual) = s.support(&value)?;
        let outside_primes = prime_divisors(&residual).iter().map(BigUint::to_string).collect();
        Ok(SupportReport { value, s_part, outside_primes })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReductions {
    pub r1: ReductionReport,
    pub r2: ReductionReport,
    pub resultant: SupportReport,
    /// `disc(R1·R2) = disc(R1)·disc(R2)·Res(R1, R2)^2`, checked exactly.
    pub multiplicativity_holds: bool,
}

impl FactorReductions {
    pub fn both_good(&self) -> bool {
        self.r1.good_outside_s && self.r2.good_outside_s
    }
}

/// Reduction of `y^2 = R` for squarefree `R`, from `2^{4g}` times the
/// discriminant of `R` as a binary form of degree `2g+2`. For odd `deg R`
/// that form has a root at infinity and its discriminant is
/// `lc(R)^2·disc(R)`; without the `lc^2` a root colliding with infinity
/// mod `p` can cancel against the leading coefficient and go unseen.
/// Primes outside `S` in a coefficient denominator also count as bad: the
/// model is not defined over `O_S` there.
fn factor_report(r: &Poly, s: &PrimeSet) -> Result<ReductionReport> {
    let g = genus_of_even_model(r)?;
    let mut d = discriminant(r)?;
    if r.deg() % 2 == 1 {
        let lc = r.leading_coeff();
        d = d * &lc * &lc;
    }
    let mut report = reduction_report(Rational::from(2).pow(4 * g as i32) * d, s)?;
    for c in r.coeffs().iter().filter(|c| !s.is_s_integer(c)) {
        report
            .bad_primes
            .extend(prime_divisors(&Rational::from(c.denom().clone())).into_iter().filter(|p| !s.contains_big(p)));
    }
    report.bad_primes.sort();
    report.bad_primes.dedup();
    report.good_outside_s = report.bad_primes.is_empty();
    Ok(report)
}

pub fn factor_reduction(r1: &Poly, r2: &Poly, s: &PrimeSet) -> Result<FactorReductions> {
    let rep1 = factor_report(r1, s)?;
    let rep2 = factor_report(r2, s)?;
    let res = resultant(r1, r2)?;
    if res.is_zero() {
        return Err(Error::NotCoprime);
    }
    let d1 = discriminant(r1)?;
    let d2 = discriminant(r2)?;
    let d12 = discriminant(&(r1 * r2))?;
    let multiplicativity_holds = d12 == d1 * d2 * &res * &res;
    Ok(FactorReductions {
        r1: rep1,
        r2: rep2,
        resultant: SupportReport::new(res, s)?,
        multiplicativity_holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftKind {
    /// A small non-negative integer with every `t - a` an `S`-unit.
    Integer,
    /// A branch point set aside in `R1` at the parent step.
    SpareRoot,
    /// The smallest root plus an `S`-unit.
    UnitTranslate,
    /// Smallest non-negative integer with `P(t) != 0`; reduction may
    /// degrade.
    FirstNonRoot,
}

fn unit_translates(s: &PrimeSet) -> Vec<Rational> {
    if s.is_empty() {
        return vec![Rational::one(), -Rational::one()];
    }
    let mut bound = SHIFT_TRANSLATE_MAX_EXPONENT;
    while bound > 0 && (2 * bound as usize + 1).pow(s.len() as u32) * 2 > SHIFT_TRANSLATE_BUDGET {
        bound -= 1;
    }
    let mut out = bounded_units(s, bound);
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    out
}

fn choose_shift(p: &Poly, roots: &[Rational], spare: &[Rational], s: &PrimeSet) -> Result<(Rational, ShiftKind)> {
    let good = |t: &Rational| roots.iter().all(|a| s.is_s_unit(&(t - a)));
    for t in (0..=roots.len() as u64 + 1).map(Rational::from) {
        if !p.eval(&t).is_zero() && good(&t) {
            return Ok((t, ShiftKind::Integer));
        }
    }
    if let Some(t) = spare.iter().find(|t| good(t)) {
        return Ok((t.clone(), ShiftKind::SpareRoot));
    }
    if let Some(a0) = roots.first() {
        if let Some(t) = unit_translates(s).into_iter().map(|u| a0 + u).find(|t| good(t)) {
            return Ok((t, ShiftKind::UnitTranslate));
        }
    }
    let (t, _) = shift_to_nonzero_constant(p)?;
    Ok((t, ShiftKind::FirstNonRoot))
}

/// How one alternative partition fares, for the exhaustive strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionScore {
    pub r1_roots: Vec<Rational>,
    pub bad_primes: Vec<String>,
    pub both_good: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionNode {
    pub path: String,
    pub genus: u32,
    pub model: PointedModel,
    pub shift: Rational,
    pub shift_kind: ShiftKind,
    /// `R(z) = z^{2g+2} P(1/z + t)`.
    pub reversed: Poly,
    pub split: SplitChoice,
    pub factor_reports: FactorReductions,
    pub fiber: FiberGenusReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternatives: Option<Vec<PartitionScore>>,
    /// `y^2 = R1`, genus one.
    pub leaf: PointedModel,
    /// `y^2 = R2`, genus `g - 1`.
    pub child: DecompositionTree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DecompositionTree {
    Leaf { path: String, model: PointedModel },
    Node(Box<DecompositionNode>),
}

impl DecompositionTree {
    pub fn genus(&self) -> u32 {
        match self {
            DecompositionTree::Leaf { model, .. } => model.genus(),
            DecompositionTree::Node(n) => n.genus,
        }
    }

    pub fn internal_nodes(&self) -> usize {
        self.nodes().len()
    }

    /// Genus-one curves at the bottom of the recursion.
    pub fn leaves(&self) -> Vec<&PointedModel> {
        match self {
            DecompositionTree::Leaf { model, .. } => vec![model],
            DecompositionTree::Node(n) => {
                let mut out = vec![&n.leaf];
                out.extend(n.child.leaves());
                out
            }
        }
    }

    pub fn nodes(&self) -> Vec<&DecompositionNode> {
        let mut out = Vec::new();
        let mut cur = self;
        while let DecompositionTree::Node(n) = cur {
            out.push(n.as_ref());
            cur = &n.child;
        }
        out
    }

    pub fn depth(&self) -> usize {
        self.internal_nodes()
    }
}

pub fn decompose_recursive(m: &PointedModel, s: &PrimeSet) -> Result<DecompositionTree> {
    decompose_with(m, s, SplitStrategy::SortedFirstThree)
}

pub fn decompose_with(m: &PointedModel, s: &PrimeSet, strategy: SplitStrategy) -> Result<DecompositionTree> {
    let m = complete_the_square(m, s).map_err(|e| e.at_node("g"))?;
    decompose_node(m, s, strategy, &[], "g".to_string())
}

fn decompose_node(
    m: PointedModel,
    s: &PrimeSet,
    strategy: SplitStrategy,
    spare: &[Rational],
    parent_path: String,
) -> Result<DecompositionTree> {
    let genus = m.genus();
    let path = format!("{parent_path}{genus}");
    if genus == 1 {
        return Ok(DecompositionTree::Leaf { path, model: m });
    }
    let at = |e: Error| e.at_node(&path);

    let p = m.p().clone();
    let roots_split = split_rational(&p).map_err(at)?;
    if !roots_split.is_split() {
        return Err(at(Error::NotSplit));
    }
    if !roots_split.is_simple() {
        return Err(at(Error::RepeatedRoots));
    }
    let p_roots = roots_split.root_list();

    let (shift, shift_kind) = choose_shift(&p, &p_roots, spare, s).map_err(at)?;
    let shifted = p.shift(&shift);
    let reversed = reverse(&shifted, genus).map_err(at)?;

    let mut r_roots: Vec<Rational> = p_roots.iter().map(|a| (a - &shift).recip()).collect();
    r_roots.push(Rational::zero());
    r_roots.sort();

    let choices = split_with_roots(&reversed, &r_roots, strategy);
    let alternatives = match strategy {
        SplitStrategy::SortedFirstThree => None,
        SplitStrategy::Exhaustive => Some(
            choices
                .iter()
                .map(|c| {
                    let fr = factor_reduction(&c.r1, &c.r2, s)?;
                    let mut bad: Vec<BigUint> =
                        fr.r1.bad_primes.iter().chain(&fr.r2.bad_primes).cloned().collect();
                    bad.sort();
                    bad.dedup();
                    Ok(PartitionScore {
                        r1_roots: c.r1_roots.clone(),
                        bad_primes: bad.iter().map(BigUint::to_string).collect(),
                        both_good: fr.both_good(),
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map_err(at)?,
        ),
    };
    let chosen = choices.into_iter().next().expect("at least one partition");

    let factor_reports = factor_reduction(&chosen.r1, &chosen.r2, s).map_err(at)?;
    let fiber = fiber_genus(&chosen.r1, &chosen.r2).map_err(at)?;
    let leaf = PointedModel::new(1, chosen.r1.clone(), Poly::zero()).map_err(at)?;
    let child_model = PointedModel::new(genus - 1, chosen.r2.clone(), Poly::zero()).map_err(at)?;
    let child = decompose_node(child_model, s, strategy, &chosen.r1_roots, format!("{path}/"))?;

    Ok(DecompositionTree::Node(Box::new(DecompositionNode {
        path,
        genus,
        model: m,
        shift,
        shift_kind,
        reversed,
        split: chosen,
        factor_reports,
        fiber,
        alternatives,
        leaf,
        child,
    })))
}

impl fmt::Display for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(v: &[Rational]) -> String {
            v.iter().map(Rational::to_string).collect::<Vec<_>>().join(", ")
        }
        fn verdict(r: &ReductionReport) -> String {
            if r.good_outside_s {
                "good".to_string()
            } else {
                let bad: Vec<String> = r.bad_primes.iter().map(BigUint::to_string).collect();
                format!("bad at {}", bad.join(","))
            }
        }
        let mut indent = String::new();
        let mut cur = self;
        loop {
            match cur {
                DecompositionTree::Leaf { model, .. } => {
                    return writeln!(f, "{indent}└─ leaf g={}: {model}", model.genus());
                }
                DecompositionTree::Node(n) => {
                    writeln!(f, "{indent}node g={}: {}", n.genus, n.model)?;
                    writeln!(f, "{indent}│  shift t = {} ({:?})", n.shift, n.shift_kind)?;
                    writeln!(f, "{indent}│  R = {}", n.reversed)?;
                    writeln!(f, "{indent}│  R1 roots [{}]  R2 roots [{}]", join(&n.split.r1_roots), join(&n.split.r2_roots))?;
                    writeln!(
                        f,
                        "{indent}│  y^2=R1: {}   y^2=R2: {}   Res(R1,R2) = {}",
                        verdict(&n.factor_reports.r1),
                        verdict(&n.factor_reports.r2),
                        n.factor_reports.resultant.value
                    )?;
                    writeln!(
                        f,
                        "{indent}│  fiber product genus {} = {} + {} + {}",
                        n.fiber.g3, n.fiber.g1, n.fiber.g2, n.fiber.g12
                    )?;
                    writeln!(f, "{indent}├─ leaf g=1: {}", n.leaf)?;
                    cur = &n.child;
                    indent.push_str("   ");
                }
            }
        }
    }
}
