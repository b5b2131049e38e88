//! Finite topologies as explicit, canonically sorted families of open sets.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::order::{ContourKind, Preorder};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::verdict::Verdict;

/// Largest ground set accepted by [`Topology::scott`].
pub const SCOTT_LIMIT: usize = 20;

/// Whether a generating family is read as open or closed sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubbasisRole {
    AsOpenSubbasis,
    AsClosedSubbasis,
}

/// Why a family of sets fails to be a topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomViolation {
    MissingEmpty,
    MissingGround,
    OutOfBounds(ElementSet),
    NotClosedUnderUnion(ElementSet, ElementSet),
    NotClosedUnderIntersection(ElementSet, ElementSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Topology {
    ground_size: usize,
    opens: Vec<ElementSet>,
}

/// Smallest family containing `seed` that is closed under pairwise union and
/// intersection. Each new set is combined with everything seen so far.
fn lattice_closure(seed: impl IntoIterator<Item = ElementSet>) -> BTreeSet<ElementSet> {
    let mut family: BTreeSet<ElementSet> = BTreeSet::new();
    let mut pending: Vec<ElementSet> = seed.into_iter().collect();
    while let Some(s) = pending.pop() {
        if !family.insert(s) {
            continue;
        }
        for &o in &family {
            for c in [s.union(o), s.intersection(o)] {
                if !family.contains(&c) {
                    pending.push(c);
                }
            }
        }
    }
    family
}

/// Checks the finite topology axioms on an arbitrary family.
pub fn check_axioms(ground_size: usize, opens: &[ElementSet]) -> Verdict<AxiomViolation> {
    let family: BTreeSet<ElementSet> = opens.iter().copied().collect();
    if let Some(&s) = family.iter().find(|s| !s.within(ground_size)) {
        return Verdict::Fails(AxiomViolation::OutOfBounds(s));
    }
    if !family.contains(&ElementSet::EMPTY) {
        return Verdict::Fails(AxiomViolation::MissingEmpty);
    }
    if !family.contains(&ElementSet::full(ground_size)) {
        return Verdict::Fails(AxiomViolation::MissingGround);
    }
    for &a in &family {
        for &b in &family {
            if !family.contains(&a.union(b)) {
                return Verdict::Fails(AxiomViolation::NotClosedUnderUnion(a, b));
            }
            if !family.contains(&a.intersection(b)) {
                return Verdict::Fails(AxiomViolation::NotClosedUnderIntersection(a, b));
            }
        }
    }
    Verdict::Holds
}

impl Topology {
    /// Wraps a family already known to satisfy the axioms.
    fn from_trusted(ground_size: usize, opens: impl IntoIterator<Item = ElementSet>) -> Self {
        let mut opens: Vec<ElementSet> = opens.into_iter().collect();
        opens.sort_unstable();
        opens.dedup();
        let t = Topology { ground_size, opens };
        debug_assert!(t.ground_size > 12 || check_axioms(t.ground_size, &t.opens).holds());
        t
    }

    /// Validates an explicit family of opens.
    pub fn from_opens(ground_size: usize, opens: Vec<ElementSet>) -> Result<Self, AxiomViolation> {
        if let Verdict::Fails(v) = check_axioms(ground_size, &opens) {
            return Err(v);
        }
        Ok(Topology::from_trusted(ground_size, opens))
    }

    /// Smallest topology whose opens (or closeds) include `sets`.
    pub fn generate(ground_size: usize, sets: &[ElementSet], role: SubbasisRole) -> Result<Self> {
        if ground_size > MAX_ELEMENTS {
            return Err(Error::TooLarge { limit: MAX_ELEMENTS, actual: ground_size });
        }
        if let Some(&s) = sets.iter().find(|s| !s.within(ground_size)) {
            return Err(Error::OutOfBounds(s, ground_size));
        }
        let opens = sets.iter().map(|&s| match role {
            SubbasisRole::AsOpenSubbasis => s,
            SubbasisRole::AsClosedSubbasis => s.complement(ground_size),
        });
        let seed = opens.chain([ElementSet::EMPTY, ElementSet::full(ground_size)]);
        Ok(Topology::from_trusted(ground_size, lattice_closure(seed)))
    }

    pub fn indiscrete(ground_size: usize) -> Self {
        Topology::from_trusted(ground_size, [ElementSet::EMPTY, ElementSet::full(ground_size)])
    }

    pub fn discrete(ground_size: usize) -> Self {
        Topology::from_trusted(ground_size, ElementSet::all_subsets(ground_size))
    }

    /// Closed subbasis: the weak lower contours.
    pub fn upper(p: &Preorder) -> Self {
        let contours: Vec<ElementSet> = (0..p.len()).map(|a| p.down_row(a)).collect();
        Topology::generate(p.len(), &contours, SubbasisRole::AsClosedSubbasis)
            .expect("contours are within bounds")
    }

    /// Every up-set is open.
    pub fn alexandrov(p: &Preorder) -> Self {
        Topology::from_trusted(p.len(), ElementSet::all_subsets(p.len()).filter(|&s| p.is_up_set(s)))
    }

    /// Up-sets `U` such that whenever a directed set `d` has a supremum
    /// class meeting `U`, `d` itself meets `U`. Computed directly from the
    /// directed-set definition over every nonempty subset.
    pub fn scott(p: &Preorder) -> Result<Self> {
        let n = p.len();
        if n > SCOTT_LIMIT {
            return Err(Error::TooLarge { limit: SCOTT_LIMIT, actual: n });
        }
        let mut directed_with_sup: Vec<(ElementSet, ElementSet)> = Vec::new();
        for d in ElementSet::all_subsets(n).skip(1) {
            let (directed, sup) = p.directed_sup(d)?;
            if let (true, crate::order::SupResult::Exists(class)) = (directed, sup) {
                directed_with_sup.push((d, class));
            }
        }
        let opens = ElementSet::all_subsets(n).filter(|&u| {
            p.is_up_set(u)
                && directed_with_sup
                    .iter()
                    .all(|&(d, class)| !class.intersects(u) || d.intersects(u))
        });
        Ok(Topology::from_trusted(n, opens))
    }

    /// Open subbasis: strict lower and strict upper contours.
    pub fn order(p: &Preorder) -> Self {
        let mut sets = Vec::with_capacity(2 * p.len());
        for a in 0..p.len() {
            sets.push(p.contour(a, ContourKind::StrictLower).expect("index in range"));
            sets.push(p.contour(a, ContourKind::StrictUpper).expect("index in range"));
        }
        Topology::generate(p.len(), &sets, SubbasisRole::AsOpenSubbasis)
            .expect("contours are within bounds")
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.ground_size)
    }

    /// Opens in ascending bitmask order.
    pub fn opens(&self) -> &[ElementSet] {
        &self.opens
    }

    pub fn closeds(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.opens.iter().map(move |o| o.complement(self.ground_size))
    }

    pub fn is_open(&self, s: ElementSet) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: ElementSet) -> Result<bool> {
        self.check_bounds(s)?;
        Ok(self.is_open(s.complement(self.ground_size)))
    }

    /// Smallest closed superset of `s`.
    pub fn closure(&self, s: ElementSet) -> Result<ElementSet> {
        self.check_bounds(s)?;
        Ok(self
            .closeds()
            .filter(|c| s.is_subset(*c))
            .fold(self.ground(), ElementSet::intersection))
    }

    /// Largest open subset of `s`.
    pub fn interior(&self, s: ElementSet) -> Result<ElementSet> {
        self.check_bounds(s)?;
        Ok(self
            .opens
            .iter()
            .filter(|o| o.is_subset(s))
            .fold(ElementSet::EMPTY, |acc, &o| acc.union(o)))
    }

    fn check_bounds(&self, s: ElementSet) -> Result<()> {
        if s.within(self.ground_size) {
            Ok(())
        } else {
            Err(Error::OutOfBounds(s, self.ground_size))
        }
    }

    /// `self ⊇ other`. The witness is an open of `other` missing from `self`.
    pub fn is_finer(&self, other: &Topology) -> Result<Verdict<ElementSet>> {
        if self.ground_size != other.ground_size {
            return Err(Error::GroundMismatch(self.ground_size, other.ground_size));
        }
        Ok(other.opens.iter().copied().find(|&o| !self.is_open(o)).into())
    }

    /// Subspace topology on `s`, re-indexed so the k-th element of `s`
    /// becomes index k.
    pub fn subspace(&self, s: ElementSet) -> Result<Topology> {
        if s.is_empty() {
            return Err(Error::EmptySubspace);
        }
        self.check_bounds(s)?;
        let k = s.len();
        let opens: BTreeSet<ElementSet> = self.opens.iter().map(|o| o.compress(s)).collect();
        let opens: Vec<ElementSet> = opens.into_iter().collect();
        debug_assert!(check_axioms(k, &opens).holds());
        Ok(Topology { ground_size: k, opens })
    }

    /// A topology between `self` and the discrete one: `extra_sets`
    /// seed-chosen subsets are added to the opens and the family re-closed.
    pub fn random_between(&self, seed: u64, extra_sets: usize) -> Topology {
        let mut rng = StdRng::seed_from_u64(seed);
        let full = ElementSet::full(self.ground_size).bits();
        let extra = (0..extra_sets).map(|_| ElementSet::from_bits(rng.gen::<u64>() & full));
        let seed_sets = self.opens.iter().copied().chain(extra.collect::<Vec<_>>());
        Topology::from_trusted(self.ground_size, lattice_closure(seed_sets))
    }

    /// Specialization preorder: `i ≾ j` iff every open containing `i`
    /// contains `j`. Alexandrov topologies of preorders recover them.
    pub fn specialization(&self, labels: Vec<String>) -> Result<Preorder> {
        if labels.len() != self.ground_size {
            return Err(Error::GroundMismatch(labels.len(), self.ground_size));
        }
        let up = (0..self.ground_size)
            .map(|i| {
                self.opens
                    .iter()
                    .filter(|o| o.contains(i))
                    .fold(self.ground(), |acc, &o| acc.intersection(o))
            })
            .collect();
        Preorder::from_rows(labels, up)
    }
}
