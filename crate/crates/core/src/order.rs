//! Finite preorders.
//!
//! A [`Preorder`] is stored as one up-set bitmask per element
//! (`up[i] = {j : i ≾ j}`) together with the transposed down-sets. All the
//! derived relations (strict part, indifference, incomparability) are read
//! off those two tables.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::representation::ValueFunction;
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::verdict::Verdict;

/// Largest ground set accepted by [`Preorder::width`].
pub const WIDTH_LIMIT: usize = 25;
/// Largest ground set accepted by [`Preorder::enumerate_all`].
pub const ENUMERATION_LIMIT: usize = 5;

/// How an ordered pair `(a, b)` relates under a preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// `a ~ b`
    Equivalent,
    /// `a ≺ b`
    StrictlyBelow,
    /// `b ≺ a`
    StrictlyAbove,
    /// `a ⋈ b`
    Incomparable,
}

impl PairClass {
    /// The class of `(b, a)` given the class of `(a, b)`.
    pub fn swapped(self) -> Self {
        match self {
            PairClass::StrictlyBelow => PairClass::StrictlyAbove,
            PairClass::StrictlyAbove => PairClass::StrictlyBelow,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContourKind {
    WeakLower,
    WeakUpper,
    StrictLower,
    StrictUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetDirection {
    Up,
    Down,
}

/// Supremum of a subset, defined up to indifference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupResult {
    /// The single `~`-class of minimal upper bounds.
    Exists(ElementSet),
    NoSupremum,
}

/// A preorder quotiented by indifference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// `~`-classes, ordered by their smallest member index.
    pub classes: Vec<ElementSet>,
    /// `class_of[i]` is the position of element `i`'s class in `classes`.
    pub class_of: Vec<usize>,
    /// Partial order on the classes; class labels are member labels joined by `,`.
    pub order: Preorder,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    labels: Vec<String>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
}

/// `a`, `b`, ..., `z`, then `x26`, `x27`, ...
pub fn default_label(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("x{i}")
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(default_label).collect()
}

fn transpose(up: &[ElementSet]) -> Vec<ElementSet> {
    let mut down = vec![ElementSet::EMPTY; up.len()];
    for (i, row) in up.iter().enumerate() {
        for j in row.iter() {
            down[j].insert(i);
        }
    }
    down
}

/// Reflexive-transitive closure of a relation given as successor rows.
fn close(up: &mut [ElementSet]) {
    for (i, row) in up.iter_mut().enumerate() {
        row.insert(i);
    }
    for k in 0..up.len() {
        let via = up[k];
        for row in up.iter_mut() {
            if row.contains(k) {
                *row = row.union(via);
            }
        }
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptyUniverse);
    }
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::TooLarge { limit: MAX_ELEMENTS, actual: labels.len() });
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl Preorder {
    /// Builds a preorder from labelled pairs `(x, y)` meaning `x ≾ y`.
    ///
    /// With `autoclose` the reflexive-transitive closure is taken; otherwise
    /// the pairs must already form a preorder.
    pub fn build<L, P>(elements: &[L], pairs: &[(P, P)], autoclose: bool) -> Result<Self>
    where
        L: AsRef<str>,
        P: AsRef<str>,
    {
        let labels: Vec<String> = elements.iter().map(|l| l.as_ref().to_owned()).collect();
        check_labels(&labels)?;
        let index = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_owned()))
        };
        let mut up = vec![ElementSet::EMPTY; labels.len()];
        for (x, y) in pairs {
            let (i, j) = (index(x.as_ref())?, index(y.as_ref())?);
            up[i].insert(j);
        }
        if autoclose {
            close(&mut up);
            let down = transpose(&up);
            return Ok(Preorder { labels, up, down });
        }
        Self::from_rows(labels, up)
    }

    /// Validates successor rows as a preorder without closing them.
    pub fn from_rows(labels: Vec<String>, up: Vec<ElementSet>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        if up.len() != n {
            return Err(Error::DomainMismatch(up.len(), n));
        }
        for (i, row) in up.iter().enumerate() {
            if !row.within(n) {
                return Err(Error::OutOfBounds(*row, n));
            }
            if !row.contains(i) {
                return Err(Error::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if let Some(k) = up[j].difference(up[i]).first() {
                    return Err(Error::NotTransitive(
                        labels[i].clone(),
                        labels[j].clone(),
                        labels[k].clone(),
                    ));
                }
            }
        }
        let down = transpose(&up);
        Ok(Preorder { labels, up, down })
    }

    /// Closes arbitrary successor rows. Rows must be within bounds.
    pub(crate) fn closure_of(labels: Vec<String>, mut up: Vec<ElementSet>) -> Self {
        debug_assert_eq!(labels.len(), up.len());
        close(&mut up);
        let down = transpose(&up);
        Preorder { labels, up, down }
    }

    /// The discrete preorder (only reflexive pairs) on `n` default labels.
    pub fn antichain(n: usize) -> Self {
        let up = (0..n).map(ElementSet::singleton).collect();
        Preorder::closure_of(default_labels(n), up)
    }

    /// The chain `0 ≺ 1 ≺ ... ≺ n-1` on default labels.
    pub fn chain(n: usize) -> Self {
        let up = (0..n).map(|i| ElementSet::full(n).difference(ElementSet::full(i))).collect();
        Preorder::closure_of(default_labels(n), up)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownLabel(format!("#{i}")))
        }
    }

    /// `i ≾ j`. Panics on out-of-range indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// `i ≺ j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && !self.leq(j, i)
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.leq(i, j) && !self.leq(j, i)
    }

    /// `{j : i ≾ j}`.
    pub fn up_row(&self, i: usize) -> ElementSet {
        self.up[i]
    }

    /// `{j : j ≾ i}`.
    pub fn down_row(&self, i: usize) -> ElementSet {
        self.down[i]
    }

    /// The `~`-class of `i`.
    pub fn class_of(&self, i: usize) -> ElementSet {
        self.up[i].intersection(self.down[i])
    }

    pub fn classify_pair(&self, a: usize, b: usize) -> Result<PairClass> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self.leq(a, b), self.leq(b, a)) {
            (true, true) => PairClass::Equivalent,
            (true, false) => PairClass::StrictlyBelow,
            (false, true) => PairClass::StrictlyAbove,
            (false, false) => PairClass::Incomparable,
        })
    }

    pub fn contour(&self, a: usize, kind: ContourKind) -> Result<ElementSet> {
        self.check(a)?;
        let class = self.class_of(a);
        Ok(match kind {
            ContourKind::WeakLower => self.down[a],
            ContourKind::WeakUpper => self.up[a],
            ContourKind::StrictLower => self.down[a].difference(class),
            ContourKind::StrictUpper => self.up[a].difference(class),
        })
    }

    /// Checks whether `s` is an up-set (resp. down-set). The witness `(x, y)`
    /// has `x ∈ s`, `y ∉ s` and `x ≾ y` (resp. `y ≾ x`).
    pub fn is_monotone_set(&self, s: ElementSet, direction: SetDirection) -> Verdict<(usize, usize)> {
        let s = s.intersection(self.ground());
        for x in s.iter() {
            let reach = match direction {
                SetDirection::Up => self.up[x],
                SetDirection::Down => self.down[x],
            };
            if let Some(y) = reach.difference(s).first() {
                return Verdict::Fails((x, y));
            }
        }
        Verdict::Holds
    }

    pub fn is_up_set(&self, s: ElementSet) -> bool {
        self.is_monotone_set(s, SetDirection::Up).holds()
    }

    pub fn is_down_set(&self, s: ElementSet) -> bool {
        self.is_monotone_set(s, SetDirection::Down).holds()
    }

    /// Upward closure `{y : ∃x∈s, x ≾ y}`.
    pub fn up_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    /// Downward closure `{y : ∃x∈s, y ≾ x}`.
    pub fn down_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn is_total(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    /// First incomparable pair in index order.
    pub fn incomparable_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            let comparable = self.up[i].union(self.down[i]);
            if let Some(j) = comparable.complement(n).first() {
                return Some((i.min(j), i.max(j)));
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.len()).all(|i| self.class_of(i).len() == 1)
    }

    /// `self ⊆ other` as relations on the same ground set.
    pub fn is_contained_in(&self, other: &Preorder) -> Verdict<(usize, usize)> {
        for i in 0..self.len() {
            if let Some(j) = self.up[i].difference(other.up[i]).first() {
                return Verdict::Fails((i, j));
            }
        }
        Verdict::Holds
    }

    /// The sub-preorder on `s`, re-indexed in ascending order.
    pub fn restrict(&self, s: ElementSet) -> Result<Preorder> {
        if s.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if !s.within(self.len()) {
            return Err(Error::OutOfBounds(s, self.len()));
        }
        let labels = s.iter().map(|i| self.labels[i].clone()).collect();
        let up = s.iter().map(|i| self.up[i].compress(s)).collect();
        Ok(Preorder::closure_of(labels, up))
    }

    /// Adds the given pairs and closes transitively. The result is a
    /// refinement of `self` in the sense `self ⊆ result`.
    pub fn extend_with(&self, pairs: &[(usize, usize)]) -> Result<Preorder> {
        let mut up = self.up.clone();
        for &(a, b) in pairs {
            self.check(a)?;
            self.check(b)?;
            up[a].insert(b);
        }
        Ok(Preorder::closure_of(self.labels.clone(), up))
    }

    pub fn quotient(&self) -> Quotient {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let class = self.class_of(i);
            for j in class.iter() {
                class_of[j] = classes.len();
            }
            classes.push(class);
        }
        let labels = classes
            .iter()
            .map(|c| c.iter().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(","))
            .collect();
        let up = classes
            .iter()
            .map(|c| {
                let rep = c.first().expect("classes are nonempty");
                self.up[rep].iter().map(|j| class_of[j]).collect()
            })
            .collect();
        let order = Preorder::closure_of(labels, up);
        Quotient { classes, class_of, order }
    }

    /// Size of a largest antichain and the lexicographically first one
    /// attaining it, by exhaustive branch search.
    pub fn width(&self) -> Result<(usize, ElementSet)> {
        let n = self.len();
        if n > WIDTH_LIMIT {
            return Err(Error::TooLarge { limit: WIDTH_LIMIT, actual: n });
        }
        let incomparable: Vec<ElementSet> =
            (0..n).map(|i| self.up[i].union(self.down[i]).complement(n)).collect();

        fn search(
            incomparable: &[ElementSet],
            chosen: ElementSet,
            candidates: ElementSet,
            best: &mut ElementSet,
        ) {
            if chosen.len() > best.len() {
                *best = chosen;
            }
            if chosen.len() + candidates.len() <= best.len() {
                return;
            }
            let mut rest = candidates;
            for i in candidates.iter() {
                rest = rest.without(i);
                if chosen.len() + 1 + rest.len() <= best.len() {
                    return;
                }
                search(incomparable, chosen.with(i), rest.intersection(incomparable[i]), best);
            }
        }

        let mut best = ElementSet::EMPTY;
        search(&incomparable, ElementSet::EMPTY, self.ground(), &mut best);
        Ok((best.len(), best))
    }

    /// A total preorder extending `self` in which every `forced` pair
    /// `(a, b)` becomes strict. Ties among available classes are broken by a
    /// seeded RNG, so the result is a function of `(self, forced, seed)`.
    pub fn szpilrajn_extension(&self, forced: &[(usize, usize)], seed: u64) -> Result<Preorder> {
        let constrained = self.force(forced)?;
        let quotient = self.quotient();
        let mut rng = StdRng::seed_from_u64(seed);
        let k = quotient.classes.len();
        // class-level strict predecessors under the forced closure
        let preds: Vec<ElementSet> = (0..k)
            .map(|c| {
                let rep = quotient.classes[c].first().expect("nonempty class");
                constrained
                    .down_row(rep)
                    .iter()
                    .map(|j| quotient.class_of[j])
                    .filter(|&d| d != c)
                    .collect()
            })
            .collect();
        let mut placed = ElementSet::EMPTY;
        let mut position = vec![0usize; k];
        for step in 0..k {
            let available: Vec<usize> = (0..k)
                .filter(|&c| !placed.contains(c) && preds[c].is_subset(placed))
                .collect();
            let pick = available[rng.gen_range(0..available.len())];
            position[pick] = step;
            placed.insert(pick);
        }
        Ok(self.lift_class_positions(&quotient, &position))
    }

    /// Adds forced pairs, rejecting any forcing that would collapse a strict
    /// relation or a forced pair.
    fn force(&self, forced: &[(usize, usize)]) -> Result<Preorder> {
        for &(a, b) in forced {
            self.check(a)?;
            self.check(b)?;
            if self.leq(b, a) {
                return Err(Error::InconsistentForcing(self.labels[a].clone(), self.labels[b].clone()));
            }
        }
        let constrained = self.extend_with(forced)?;
        for &(a, b) in forced {
            if constrained.leq(b, a) {
                return Err(Error::InconsistentForcing(self.labels[a].clone(), self.labels[b].clone()));
            }
        }
        Ok(constrained)
    }

    fn lift_class_positions(&self, quotient: &Quotient, position: &[usize]) -> Preorder {
        let n = self.len();
        let up: Vec<ElementSet> = (0..n)
            .map(|i| {
                let p = position[quotient.class_of[i]];
                (0..n).filter(|&j| position[quotient.class_of[j]] >= p).collect()
            })
            .collect();
        Preorder { labels: self.labels.clone(), down: transpose(&up), up }
    }

    /// Distinct linear extensions (linear orders of the `~`-classes that
    /// respect the strict part), in lexicographic order of class sequences,
    /// truncated at `limit`.
    pub fn enumerate_linear_extensions(&self, limit: usize) -> Vec<Preorder> {
        let quotient = self.quotient();
        let k = quotient.classes.len();
        let preds: Vec<ElementSet> =
            (0..k).map(|c| quotient.order.down_row(c).without(c)).collect();
        let mut out = Vec::new();
        let mut sequence = Vec::with_capacity(k);

        fn walk(
            preds: &[ElementSet],
            placed: ElementSet,
            sequence: &mut Vec<usize>,
            limit: usize,
            emit: &mut dyn FnMut(&[usize]) -> usize,
        ) -> bool {
            let k = preds.len();
            if sequence.len() == k {
                return emit(sequence) < limit;
            }
            for c in 0..k {
                if placed.contains(c) || !preds[c].is_subset(placed) {
                    continue;
                }
                sequence.push(c);
                let go_on = walk(preds, placed.with(c), sequence, limit, emit);
                sequence.pop();
                if !go_on {
                    return false;
                }
            }
            true
        }

        if limit == 0 {
            return out;
        }
        let mut emit = |seq: &[usize]| {
            let mut position = vec![0; k];
            for (step, &c) in seq.iter().enumerate() {
                position[c] = step;
            }
            out.push(self.lift_class_positions(&quotient, &position));
            out.len()
        };
        walk(&preds, ElementSet::EMPTY, &mut sequence, limit, &mut emit);
        out
    }

    /// `∀a,b∈d ∃c∈d: a ≾ c ∧ b ≾ c`.
    pub fn is_directed(&self, d: ElementSet) -> bool {
        let d = d.intersection(self.ground());
        d.iter().all(|a| d.iter().all(|b| self.up[a].intersection(self.up[b]).intersects(d)))
    }

    /// Upper bounds of `d` in the whole ground set.
    pub fn upper_bounds(&self, d: ElementSet) -> ElementSet {
        d.iter().fold(self.ground(), |acc, x| acc.intersection(self.up[x]))
    }

    /// Supremum of `d` up to indifference: exists when the minimal upper
    /// bounds of `d` form a single `~`-class.
    pub fn supremum(&self, d: ElementSet) -> SupResult {
        let bounds = self.upper_bounds(d);
        let minimal: ElementSet = bounds
            .iter()
            .filter(|&u| !bounds.iter().any(|v| self.lt(v, u)))
            .collect();
        match minimal.first() {
            Some(m) if minimal == self.class_of(m) => SupResult::Exists(minimal),
            _ => SupResult::NoSupremum,
        }
    }

    pub fn directed_sup(&self, d: ElementSet) -> Result<(bool, SupResult)> {
        if d.is_empty() {
            return Err(Error::EmptySet);
        }
        if !d.within(self.len()) {
            return Err(Error::OutOfBounds(d, self.len()));
        }
        Ok((self.is_directed(d), self.supremum(d)))
    }

    /// For a total preorder, the position of each element's class in the
    /// quotient chain.
    pub fn rank_utility(&self) -> Result<ValueFunction> {
        if let Some((a, b)) = self.incomparable_pair() {
            return Err(Error::NotTotal(self.labels[a].clone(), self.labels[b].clone()));
        }
        // in a total preorder, rank = number of classes strictly below
        let values = (0..self.len())
            .map(|i| {
                let strictly_below = self.down[i].difference(self.class_of(i));
                let classes: HashSet<ElementSet> =
                    strictly_below.iter().map(|j| self.class_of(j)).collect();
                classes.len() as i64
            })
            .collect::<Vec<_>>();
        Ok(ValueFunction::from_integers(&values))
    }

    /// All preorders on `n` default labels, as closures of every subset of
    /// off-diagonal pairs, deduplicated and sorted.
    pub fn enumerate_all(n: usize) -> Result<Vec<Preorder>> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        if n > ENUMERATION_LIMIT {
            return Err(Error::TooLarge { limit: ENUMERATION_LIMIT, actual: n });
        }
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let mut seen: HashSet<Vec<ElementSet>> = HashSet::new();
        for mask in 0u64..1 << pairs.len() {
            let mut up = vec![ElementSet::EMPTY; n];
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    up[i].insert(j);
                }
            }
            close(&mut up);
            seen.insert(up);
        }
        let mut rows: Vec<Vec<ElementSet>> = seen.into_iter().collect();
        rows.sort();
        let labels = default_labels(n);
        Ok(rows
            .into_iter()
            .map(|up| Preorder { labels: labels.clone(), down: transpose(&up), up })
            .collect())
    }

    /// Closure of a random relation: every off-diagonal pair is included
    /// independently with probability `density`.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Preorder {
        let mut up = vec![ElementSet::EMPTY; n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if i != j && rng.gen_bool(density) {
                    row.insert(j);
                }
            }
        }
        Preorder::closure_of(default_labels(n), up)
    }

    /// Row-major boolean matrix.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect()).collect()
    }

    /// Pairs `(x, y)` with `x ≾ y`, `x ≠ y`, in index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up[i].without(i).iter().map(move |j| (i, j)))
            .collect()
    }

    /// Cover pairs of the strict part (transitive reduction).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn set_labels(&self, s: ElementSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn set_from_labels<L: AsRef<str>>(&self, labels: &[L]) -> Result<ElementSet> {
        labels.iter().map(|l| self.index(l.as_ref())).collect()
    }
}
