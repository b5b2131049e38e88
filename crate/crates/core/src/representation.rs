//! Utility functions, multi-utilities and their semicontinuity.
//!
//! Values are exact rationals, so the strict inequalities in
//! Richter–Peleg checks never depend on a tolerance.

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::order::{ContourKind, Preorder};
use crate::set::ElementSet;
use crate::topology::Topology;
use crate::verdict::Verdict;

pub type Rational = Rational64;

/// A total function from element indices to rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueFunction(Vec<Rational>);

impl ValueFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        ValueFunction(values)
    }

    pub fn from_integers(values: &[i64]) -> Self {
        ValueFunction(values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, i: usize) -> Rational {
        self.0[i]
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn max(&self) -> Option<Rational> {
        self.0.iter().copied().max()
    }

    /// `{y : f(y) ≤ f(x)}`.
    pub fn sublevel(&self, x: usize) -> ElementSet {
        let level = self.0[x];
        (0..self.len()).filter(|&y| self.0[y] <= level).collect()
    }

    /// `{y : f(y) ≥ f(x)}`.
    pub fn superlevel(&self, x: usize) -> ElementSet {
        let level = self.0[x];
        (0..self.len()).filter(|&y| self.0[y] >= level).collect()
    }

    fn check_domain(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::DomainMismatch(self.len(), n))
        }
    }
}

impl fmt::Display for ValueFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// An ordered list of value functions sharing one ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionFamily(Vec<ValueFunction>);

impl FunctionFamily {
    pub fn new(members: Vec<ValueFunction>) -> Self {
        FunctionFamily(members)
    }

    pub fn members(&self) -> &[ValueFunction] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::EmptyFamily);
        }
        self.0.iter().try_for_each(|f| f.check_domain(n))
    }

    /// Pointwise sum of all members.
    pub fn sum(&self) -> Option<ValueFunction> {
        let n = self.0.first()?.len();
        let values = (0..n).map(|i| self.0.iter().map(|f| f.value(i)).sum()).collect();
        Some(ValueFunction(values))
    }
}

/// How a pair defeats a candidate representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepFailure {
    /// `x ≾ y` but the member has `u(x) > u(y)`.
    MemberDecreases,
    /// `¬(x ≾ y)` yet every member has `u(x) ≤ u(y)`.
    UnseparatedPair,
    /// `x ≺ y` but the member has `u(x) ≥ u(y)`.
    NotStrictOnStrictPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepWitness {
    pub x: usize,
    pub y: usize,
    /// Offending member; absent for [`RepFailure::UnseparatedPair`].
    pub member: Option<usize>,
    pub failure: RepFailure,
}

pub type RepVerdict = Verdict<RepWitness>;

/// Result of [`monotonicity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monotonicity {
    pub isotonic: bool,
    pub order_preserving: bool,
    /// First pair breaking the strongest failing property.
    pub witness: Option<(usize, usize)>,
}

pub fn monotonicity(f: &ValueFunction, p: &Preorder) -> Result<Monotonicity> {
    f.check_domain(p.len())?;
    let n = p.len();
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    if let Some(w) = pairs().find(|&(x, y)| p.leq(x, y) && f.value(x) > f.value(y)) {
        return Ok(Monotonicity { isotonic: false, order_preserving: false, witness: Some(w) });
    }
    let strict_fail = pairs().find(|&(x, y)| p.lt(x, y) && f.value(x) >= f.value(y));
    Ok(Monotonicity { isotonic: true, order_preserving: strict_fail.is_none(), witness: strict_fail })
}

/// `x ≾ y ⇔ ∀u∈F: u(x) ≤ u(y)` for every pair.
pub fn is_multiutility(family: &FunctionFamily, p: &Preorder) -> Result<RepVerdict> {
    family.check(p.len())?;
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            let decreasing = family.members().iter().position(|u| u.value(x) > u.value(y));
            match (p.leq(x, y), decreasing) {
                (true, Some(k)) => {
                    return Ok(Verdict::Fails(RepWitness {
                        x,
                        y,
                        member: Some(k),
                        failure: RepFailure::MemberDecreases,
                    }))
                }
                (false, None) => {
                    return Ok(Verdict::Fails(RepWitness {
                        x,
                        y,
                        member: None,
                        failure: RepFailure::UnseparatedPair,
                    }))
                }
                _ => {}
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A multi-utility whose every member is strictly increasing on `≺`.
///
/// On success the strict part is also represented:
/// `x ≺ y ⇔ ∀u∈F: u(x) < u(y)`; that equivalence is asserted here too.
pub fn is_richter_peleg_multiutility(family: &FunctionFamily, p: &Preorder) -> Result<RepVerdict> {
    if let Verdict::Fails(w) = is_multiutility(family, p)? {
        return Ok(Verdict::Fails(w));
    }
    let n = p.len();
    for (k, u) in family.members().iter().enumerate() {
        for x in 0..n {
            for y in 0..n {
                if p.lt(x, y) && u.value(x) >= u.value(y) {
                    return Ok(Verdict::Fails(RepWitness {
                        x,
                        y,
                        member: Some(k),
                        failure: RepFailure::NotStrictOnStrictPair,
                    }));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let all_strict = family.members().iter().all(|u| u.value(x) < u.value(y));
            assert_eq!(
                p.lt(x, y),
                all_strict,
                "accepted Richter-Peleg family must represent the strict part"
            );
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemicontinuityKind {
    Lower,
    Upper,
    Both,
}

/// A level set that should be closed but is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LevelSetFailure {
    /// The point whose value sets the level.
    pub at: usize,
    pub set: ElementSet,
    /// `Lower` for a sublevel set, `Upper` for a superlevel set.
    pub side: SemicontinuityKind,
}

/// Lower: every sublevel set `{y : f(y) ≤ f(x)}` is closed. Upper: every
/// superlevel set is closed. Both: continuity.
pub fn semicontinuity(
    f: &ValueFunction,
    t: &Topology,
    kind: SemicontinuityKind,
) -> Result<Verdict<LevelSetFailure>> {
    f.check_domain(t.ground_size())?;
    let lower = matches!(kind, SemicontinuityKind::Lower | SemicontinuityKind::Both);
    let upper = matches!(kind, SemicontinuityKind::Upper | SemicontinuityKind::Both);
    for x in 0..f.len() {
        if lower {
            let set = f.sublevel(x);
            if !t.is_closed(set)? {
                return Ok(Verdict::Fails(LevelSetFailure { at: x, set, side: SemicontinuityKind::Lower }));
            }
        }
        if upper {
            let set = f.superlevel(x);
            if !t.is_closed(set)? {
                return Ok(Verdict::Fails(LevelSetFailure { at: x, set, side: SemicontinuityKind::Upper }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreorderSemicontinuity {
    Lower,
    Upper,
}

/// Lower: every weak lower contour is closed. Upper: every weak upper
/// contour is closed. The witness is the offending element.
pub fn preorder_semicontinuity(
    p: &Preorder,
    t: &Topology,
    kind: PreorderSemicontinuity,
) -> Result<Verdict<usize>> {
    if p.len() != t.ground_size() {
        return Err(Error::GroundMismatch(p.len(), t.ground_size()));
    }
    let contour = match kind {
        PreorderSemicontinuity::Lower => ContourKind::WeakLower,
        PreorderSemicontinuity::Upper => ContourKind::WeakUpper,
    };
    for a in 0..p.len() {
        if !t.is_closed(p.contour(a, contour)?)? {
            return Ok(Verdict::Fails(a));
        }
    }
    Ok(Verdict::Holds)
}

/// Every strict lower and strict upper contour is open.
pub fn strict_continuity(p: &Preorder, t: &Topology) -> Result<Verdict<usize>> {
    if p.len() != t.ground_size() {
        return Err(Error::GroundMismatch(p.len(), t.ground_size()));
    }
    for a in 0..p.len() {
        let lower = p.contour(a, ContourKind::StrictLower)?;
        let upper = p.contour(a, ContourKind::StrictUpper)?;
        if !t.is_open(lower) || !t.is_open(upper) {
            return Ok(Verdict::Fails(a));
        }
    }
    Ok(Verdict::Holds)
}

/// `u_x(y) = 1` if `x ≾ y`, else `0`, one member per element.
pub fn construct_indicator_multiutility(p: &Preorder) -> FunctionFamily {
    let n = p.len();
    FunctionFamily(
        (0..n)
            .map(|x| {
                let values: Vec<i64> = (0..n).map(|y| i64::from(p.leq(x, y))).collect();
                ValueFunction::from_integers(&values)
            })
            .collect(),
    )
}

/// `v_x(y) = 0` on the weak lower contour of `x`, `1` outside it.
fn contour_complement_indicator(p: &Preorder, x: usize) -> ValueFunction {
    let values: Vec<i64> = (0..p.len()).map(|y| i64::from(!p.leq(y, x))).collect();
    ValueFunction::from_integers(&values)
}

/// One 0/1 member per weak lower contour; requires every contour closed.
pub fn construct_lsc_multiutility(p: &Preorder, t: &Topology) -> Result<FunctionFamily> {
    if let Verdict::Fails(a) = preorder_semicontinuity(p, t, PreorderSemicontinuity::Lower)? {
        return Err(Error::NotLscPreorder(p.label(a).to_owned()));
    }
    Ok(FunctionFamily((0..p.len()).map(|x| contour_complement_indicator(p, x)).collect()))
}

/// `f(y) = |{x : ¬(y ≾ x)}|`.
pub fn construct_rp_utility(p: &Preorder) -> ValueFunction {
    let n = p.len();
    let values: Vec<i64> = (0..n).map(|y| (n - p.up_row(y).len()) as i64).collect();
    ValueFunction::from_integers(&values)
}

/// Certificate from [`construct_finite_lsc_rp_multiutility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LscRpResult {
    Family(FunctionFamily),
    /// An element whose weak lower contour is not closed.
    Obstruction(usize),
}

/// Decides whether a finite lower semicontinuous Richter–Peleg
/// multi-utility exists for `p` on `t`, returning one or an obstruction.
///
/// The family is `g_x = f + (n+1)·v_x` where `f` is the Richter–Peleg
/// utility, `n = max f`, and `v_x` the contour indicator of `x`.
pub fn construct_finite_lsc_rp_multiutility(p: &Preorder, t: &Topology) -> Result<LscRpResult> {
    if let Verdict::Fails(a) = preorder_semicontinuity(p, t, PreorderSemicontinuity::Lower)? {
        return Ok(LscRpResult::Obstruction(a));
    }
    let f = construct_rp_utility(p);
    let scale = f.max().unwrap_or_else(Rational::zero) + 1;
    let members = (0..p.len())
        .map(|x| {
            let v = contour_complement_indicator(p, x);
            ValueFunction((0..p.len()).map(|y| f.value(y) + scale * v.value(y)).collect())
        })
        .collect();
    Ok(LscRpResult::Family(FunctionFamily(members)))
}
