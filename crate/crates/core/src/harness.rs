//! Executable checks of the order-topological theorems on finite
//! instances, plus a seeded instance miner.
//!
//! Each checker runs on one instance and returns a [`TheoremReport`]. A
//! report separates instances whose hypothesis held (the conclusion was
//! actually exercised) from vacuous ones, and records every violation as a
//! serialized [`Case`] that [`Violation::replay`] can re-run.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{ContourKind, Preorder};
use crate::representation::{
    construct_finite_lsc_rp_multiutility, is_richter_peleg_multiutility, preorder_semicontinuity,
    semicontinuity, LscRpResult, PreorderSemicontinuity, SemicontinuityKind,
};
use crate::set::ElementSet;
use crate::topology::{Topology, SCOTT_LIMIT};

/// Largest instance accepted by [`mine`] and [`check_chain_restriction`].
pub const HARNESS_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// A preorder is lsc iff the topology refines its Upper topology.
    LscIffUpper,
    /// A finite lsc Richter–Peleg multi-utility forces τ ⊇ Scott.
    ScottNecessity,
    /// Soundness of the finite decision procedure.
    DecisionProcedure,
    /// Refining a preorder coarsens its Alexandrov topology.
    AlexandrovAntitone,
    /// τ ⊇ Alexandrov makes every linear extension lsc.
    LinearExtensionsLsc,
    /// All linear extensions lsc forces τ|C ⊇ Alexandrov(C).
    ChainRestriction,
    /// Upper ⊆ Scott ⊆ Alexandrov, with equality on finite sets.
    TopologyCoincidence,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::LscIffUpper,
        TheoremId::ScottNecessity,
        TheoremId::DecisionProcedure,
        TheoremId::AlexandrovAntitone,
        TheoremId::LinearExtensionsLsc,
        TheoremId::ChainRestriction,
        TheoremId::TopologyCoincidence,
    ];
}

/// Label-level description of a checker input, sufficient to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub elements: Vec<String>,
    /// Every non-reflexive pair `x ≾ y`.
    pub relation: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<Vec<Vec<String>>>,
    /// Refined relation for the antitonicity check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fine_relation: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn relation_labels(p: &Preorder) -> Vec<(String, String)> {
    p.pairs().into_iter().map(|(x, y)| (p.label(x).to_owned(), p.label(y).to_owned())).collect()
}

fn opens_labels(p: &Preorder, t: &Topology) -> Vec<Vec<String>> {
    t.opens().iter().map(|&o| p.set_labels(o)).collect()
}

impl Case {
    pub fn new(p: &Preorder) -> Self {
        Case {
            elements: p.labels().to_vec(),
            relation: relation_labels(p),
            topology: None,
            fine_relation: None,
            chain: None,
            pivot: None,
            samples: None,
            seed: None,
        }
    }

    pub fn with_topology(p: &Preorder, t: &Topology) -> Self {
        Case { topology: Some(opens_labels(p, t)), ..Case::new(p) }
    }

    pub fn preorder(&self) -> Result<Preorder> {
        Preorder::build(&self.elements, &self.relation, true)
    }

    pub fn topology(&self, p: &Preorder) -> Result<Topology> {
        let opens = self.topology.as_ref().ok_or_else(|| Error::validation("topology", "missing"))?;
        let opens = opens.iter().map(|o| p.set_from_labels(o)).collect::<Result<Vec<_>>>()?;
        Topology::from_opens(p.len(), opens)
            .map_err(|v| Error::validation("topology", format!("{v:?}")))
    }
}

/// A failed theorem instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Violation {
    pub theorem: TheoremId,
    pub case: Case,
    pub detail: String,
}

impl Violation {
    /// Re-runs the checker on the stored case. Returns `true` when it
    /// reproduces exactly this violation.
    pub fn replay(&self) -> Result<bool> {
        let c = &self.case;
        let p = c.preorder()?;
        let report = match self.theorem {
            TheoremId::LscIffUpper => check_lsc_iff_upper(&p, &c.topology(&p)?)?,
            TheoremId::ScottNecessity => check_scott_necessity(&p, &c.topology(&p)?)?,
            TheoremId::DecisionProcedure => check_decision_procedure(&p, &c.topology(&p)?)?,
            TheoremId::AlexandrovAntitone => {
                let fine_pairs = c.fine_relation.as_ref().ok_or_else(|| Error::validation("fine_relation", "missing"))?;
                let fine = Preorder::build(&c.elements, fine_pairs, true)?;
                check_alexandrov_antitone(&p, &fine)?
            }
            TheoremId::LinearExtensionsLsc => {
                check_linear_extensions_lsc(&p, &c.topology(&p)?, c.samples.unwrap_or(0), c.seed.unwrap_or(0))?
            }
            TheoremId::ChainRestriction => {
                let chain = c.chain.as_ref().ok_or_else(|| Error::validation("chain", "missing"))?;
                let pivot = c.pivot.as_ref().ok_or_else(|| Error::validation("pivot", "missing"))?;
                check_chain_restriction(&p, &c.topology(&p)?, p.set_from_labels(chain)?, p.index(pivot)?)?
            }
            TheoremId::TopologyCoincidence => check_topology_coincidence(&p)?,
        };
        Ok(report.violations.first() == Some(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub instances_checked: usize,
    /// Instances whose hypothesis held, so the conclusion was exercised.
    pub premise_held: usize,
    /// Instances that passed vacuously.
    pub premise_failed: usize,
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn empty(theorem: TheoremId) -> Self {
        TheoremReport {
            theorem,
            instances_checked: 0,
            premise_held: 0,
            premise_failed: 0,
            violations: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn single(theorem: TheoremId, premise: bool, violations: Vec<Violation>, started: Instant) -> Self {
        TheoremReport {
            theorem,
            instances_checked: 1,
            premise_held: usize::from(premise),
            premise_failed: usize::from(!premise),
            violations,
            elapsed: started.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: TheoremReport) {
        debug_assert_eq!(self.theorem, other.theorem);
        self.instances_checked += other.instances_checked;
        self.premise_held += other.premise_held;
        self.premise_failed += other.premise_failed;
        self.violations.extend(other.violations);
        self.elapsed += other.elapsed;
    }

    /// Copy with the timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        TheoremReport { elapsed: Duration::ZERO, ..self.clone() }
    }
}

/// One report per theorem, in [`TheoremId::ALL`] order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: Vec<TheoremReport>,
}

impl Summary {
    pub fn new() -> Self {
        Summary { reports: TheoremId::ALL.iter().map(|&id| TheoremReport::empty(id)).collect() }
    }

    pub fn add(&mut self, report: TheoremReport) {
        let slot = self
            .reports
            .iter_mut()
            .find(|r| r.theorem == report.theorem)
            .expect("every theorem has a slot");
        slot.merge(report);
    }

    pub fn absorb(&mut self, other: Summary) {
        for r in other.reports {
            self.add(r);
        }
    }

    pub fn report(&self, id: TheoremId) -> &TheoremReport {
        self.reports.iter().find(|r| r.theorem == id).expect("every theorem has a slot")
    }

    pub fn violation_count(&self) -> usize {
        self.reports.iter().map(|r| r.violations.len()).sum()
    }

    pub fn instances_checked(&self) -> usize {
        self.reports.iter().map(|r| r.instances_checked).sum()
    }

    pub fn without_timing(&self) -> Self {
        Summary { reports: self.reports.iter().map(TheoremReport::without_timing).collect() }
    }
}

impl Default for Summary {
    fn default() -> Self {
        Summary::new()
    }
}

fn same_ground(p: &Preorder, t: &Topology) -> Result<()> {
    if p.len() == t.ground_size() {
        Ok(())
    } else {
        Err(Error::GroundMismatch(p.len(), t.ground_size()))
    }
}

fn labels_of(p: &Preorder, s: ElementSet) -> String {
    format!("{{{}}}", p.set_labels(s).join(","))
}

pub fn check_lsc_iff_upper(p: &Preorder, t: &Topology) -> Result<TheoremReport> {
    same_ground(p, t)?;
    let started = Instant::now();
    let lsc = preorder_semicontinuity(p, t, PreorderSemicontinuity::Lower)?;
    let finer = t.is_finer(&Topology::upper(p))?;
    let mut violations = Vec::new();
    if lsc.holds() != finer.holds() {
        violations.push(Violation {
            theorem: TheoremId::LscIffUpper,
            case: Case::with_topology(p, t),
            detail: format!("lsc={} finer_than_upper={}", lsc.holds(), finer.holds()),
        });
    }
    Ok(TheoremReport::single(TheoremId::LscIffUpper, lsc.holds(), violations, started))
}

/// Re-verifies a constructed family with the independent checkers.
fn verify_family(p: &Preorder, t: &Topology, family: &crate::FunctionFamily) -> Result<Option<String>> {
    if let Some(w) = is_richter_peleg_multiutility(family, p)?.into_witness() {
        return Ok(Some(format!("family is not Richter-Peleg: {w:?}")));
    }
    for (k, g) in family.members().iter().enumerate() {
        if let Some(w) = semicontinuity(g, t, SemicontinuityKind::Lower)?.into_witness() {
            return Ok(Some(format!("member {k} not lsc: sublevel {}", labels_of(p, w.set))));
        }
    }
    Ok(None)
}

pub fn check_scott_necessity(p: &Preorder, t: &Topology) -> Result<TheoremReport> {
    same_ground(p, t)?;
    let started = Instant::now();
    let case = || Case::with_topology(p, t);
    let mut violations = Vec::new();
    let family = match construct_finite_lsc_rp_multiutility(p, t)? {
        LscRpResult::Family(f) => f,
        LscRpResult::Obstruction(_) => {
            return Ok(TheoremReport::single(TheoremId::ScottNecessity, false, violations, started))
        }
    };
    if let Some(detail) = verify_family(p, t, &family)? {
        violations.push(Violation { theorem: TheoremId::ScottNecessity, case: case(), detail });
    } else if let Some(open) = t.is_finer(&Topology::scott(p)?)?.into_witness() {
        violations.push(Violation {
            theorem: TheoremId::ScottNecessity,
            case: case(),
            detail: format!("Scott open {} is not open in τ", labels_of(p, open)),
        });
    }
    Ok(TheoremReport::single(TheoremId::ScottNecessity, true, violations, started))
}

pub fn check_decision_procedure(p: &Preorder, t: &Topology) -> Result<TheoremReport> {
    same_ground(p, t)?;
    let started = Instant::now();
    let lsc = preorder_semicontinuity(p, t, PreorderSemicontinuity::Lower)?.holds();
    let result = construct_finite_lsc_rp_multiutility(p, t)?;
    let detail = match &result {
        LscRpResult::Family(_) if !lsc => Some("family returned for a non-lsc preorder".to_owned()),
        LscRpResult::Family(f) if f.len() > p.len() => Some(format!("family size {} exceeds |X|", f.len())),
        LscRpResult::Family(f) => verify_family(p, t, f)?,
        LscRpResult::Obstruction(_) if lsc => Some("obstruction returned for an lsc preorder".to_owned()),
        LscRpResult::Obstruction(a) => {
            let contour = p.contour(*a, ContourKind::WeakLower)?;
            // independent of is_closed: compare with the topological closure
            (t.closure(contour)? == contour)
                .then(|| format!("obstruction contour {} is closed", labels_of(p, contour)))
        }
    };
    let violations = detail
        .map(|detail| Violation { theorem: TheoremId::DecisionProcedure, case: Case::with_topology(p, t), detail })
        .into_iter()
        .collect();
    let premise = matches!(result, LscRpResult::Family(_));
    Ok(TheoremReport::single(TheoremId::DecisionProcedure, premise, violations, started))
}

/// `coarse ⊆ fine` as relations must give `alexandrov(fine) ⊆ alexandrov(coarse)`.
pub fn check_alexandrov_antitone(coarse: &Preorder, fine: &Preorder) -> Result<TheoremReport> {
    if coarse.len() != fine.len() {
        return Err(Error::GroundMismatch(coarse.len(), fine.len()));
    }
    if let Some((x, y)) = coarse.is_contained_in(fine).into_witness() {
        return Err(Error::RefinementViolated(coarse.label(x).to_owned(), coarse.label(y).to_owned()));
    }
    let started = Instant::now();
    let mut violations = Vec::new();
    let coarse_top = Topology::alexandrov(coarse);
    if let Some(open) = coarse_top.is_finer(&Topology::alexandrov(fine))?.into_witness() {
        violations.push(Violation {
            theorem: TheoremId::AlexandrovAntitone,
            case: Case { fine_relation: Some(relation_labels(fine)), ..Case::new(coarse) },
            detail: format!("up-set {} of the refinement is not an up-set of the original", labels_of(coarse, open)),
        });
    }
    let strict_refinement = coarse != fine;
    Ok(TheoremReport::single(TheoremId::AlexandrovAntitone, strict_refinement, violations, started))
}

/// Extensions checked by [`check_linear_extensions_lsc`]: all of them when
/// there are at most `samples`, else `samples` seeded Szpilrajn draws.
pub fn sample_extensions(p: &Preorder, samples: usize, seed: u64) -> Result<Vec<Preorder>> {
    let all = p.enumerate_linear_extensions(samples.saturating_add(1));
    if all.len() <= samples {
        return Ok(all);
    }
    (0..samples as u64).map(|i| p.szpilrajn_extension(&[], derive_seed(seed, i))).collect()
}

pub fn check_linear_extensions_lsc(p: &Preorder, t: &Topology, samples: usize, seed: u64) -> Result<TheoremReport> {
    same_ground(p, t)?;
    if let Some(open) = t.is_finer(&Topology::alexandrov(p))?.into_witness() {
        return Err(Error::PremiseFailed(format!(
            "topology is not finer than Alexandrov: up-set {} is not open",
            labels_of(p, open)
        )));
    }
    let started = Instant::now();
    let mut violations = Vec::new();
    for ext in sample_extensions(p, samples, seed)? {
        if let Some(a) = preorder_semicontinuity(&ext, t, PreorderSemicontinuity::Lower)?.into_witness() {
            violations.push(Violation {
                theorem: TheoremId::LinearExtensionsLsc,
                case: Case { samples: Some(samples), seed: Some(seed), ..Case::with_topology(p, t) },
                detail: format!(
                    "extension {:?} has non-closed lower contour at {}",
                    relation_labels(&ext),
                    p.label(a)
                ),
            });
            break;
        }
    }
    Ok(TheoremReport::single(TheoremId::LinearExtensionsLsc, true, violations, started))
}

pub fn check_chain_restriction(p: &Preorder, t: &Topology, chain: ElementSet, pivot: usize) -> Result<TheoremReport> {
    same_ground(p, t)?;
    if p.len() > HARNESS_LIMIT {
        return Err(Error::TooLarge { limit: HARNESS_LIMIT, actual: p.len() });
    }
    if chain.is_empty() || !chain.within(p.len()) {
        return Err(Error::PremiseFailed("chain must be a nonempty subset of the ground set".into()));
    }
    if pivot >= p.len() {
        return Err(Error::UnknownLabel(format!("#{pivot}")));
    }
    let restricted = p.restrict(chain)?;
    if let Some((a, b)) = restricted.incomparable_pair() {
        return Err(Error::PremiseFailed(format!(
            "{} and {} in the chain are incomparable",
            restricted.label(a),
            restricted.label(b)
        )));
    }
    if let Some(c) = chain.iter().find(|&c| !p.incomparable(pivot, c)) {
        return Err(Error::PremiseFailed(format!("{} is comparable to {}", p.label(pivot), p.label(c))));
    }
    let started = Instant::now();
    let mut all_lsc = true;
    for ext in p.enumerate_linear_extensions(usize::MAX) {
        if !preorder_semicontinuity(&ext, t, PreorderSemicontinuity::Lower)?.holds() {
            all_lsc = false;
            break;
        }
    }
    let mut violations = Vec::new();
    if all_lsc {
        if let Some(open) = t.subspace(chain)?.is_finer(&Topology::alexandrov(&restricted))?.into_witness() {
            violations.push(Violation {
                theorem: TheoremId::ChainRestriction,
                case: Case {
                    chain: Some(p.set_labels(chain)),
                    pivot: Some(p.label(pivot).to_owned()),
                    ..Case::with_topology(p, t)
                },
                detail: format!("up-set {} of the chain is not open in the subspace", labels_of(&restricted, open)),
            });
        }
    }
    Ok(TheoremReport::single(TheoremId::ChainRestriction, all_lsc, violations, started))
}

pub fn check_topology_coincidence(p: &Preorder) -> Result<TheoremReport> {
    if p.len() > SCOTT_LIMIT {
        return Err(Error::TooLarge { limit: SCOTT_LIMIT, actual: p.len() });
    }
    let started = Instant::now();
    let upper = Topology::upper(p);
    let scott = Topology::scott(p)?;
    let alexandrov = Topology::alexandrov(p);
    let mut details = Vec::new();
    if let Some(o) = scott.is_finer(&upper)?.into_witness() {
        details.push(format!("Upper open {} is not Scott open", labels_of(p, o)));
    }
    if let Some(o) = alexandrov.is_finer(&scott)?.into_witness() {
        details.push(format!("Scott open {} is not an up-set", labels_of(p, o)));
    }
    if upper != scott || scott != alexandrov {
        details.push(format!(
            "families differ: |upper|={} |scott|={} |alexandrov|={}",
            upper.opens().len(),
            scott.opens().len(),
            alexandrov.opens().len()
        ));
    }
    let violations = if details.is_empty() {
        Vec::new()
    } else {
        vec![Violation { theorem: TheoremId::TopologyCoincidence, case: Case::new(p), detail: details.join("; ") }]
    };
    Ok(TheoremReport::single(TheoremId::TopologyCoincidence, true, violations, started))
}

/// SplitMix64 step, used to derive independent per-trial seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Every chain `C` with a pivot incomparable to all of `C`.
pub fn chain_pivot_pairs(p: &Preorder) -> Vec<(ElementSet, usize)> {
    let mut out = Vec::new();
    for chain in ElementSet::all_subsets(p.len()).skip(1) {
        let is_chain = chain.iter().all(|a| chain.iter().all(|b| !p.incomparable(a, b)));
        if !is_chain {
            continue;
        }
        for x in chain.complement(p.len()).iter() {
            if chain.iter().all(|c| p.incomparable(x, c)) {
                out.push((chain, x));
            }
        }
    }
    out
}

/// A random preorder with a topology drawn between a seed-chosen lower
/// topology and the discrete one.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> (Preorder, Topology) {
    let n = rng.gen_range(1..=max_size);
    let density = rng.gen_range(0.05..0.5);
    let p = Preorder::random(n, density, rng);
    let lower = match rng.gen_range(0..4) {
        0 => Topology::indiscrete(n),
        1 => Topology::upper(&p),
        2 => Topology::alexandrov(&Preorder::random(n, rng.gen_range(0.05..0.6), rng)),
        _ => Topology::order(&p),
    };
    let extra = rng.gen_range(0..=3);
    let t = lower.random_between(rng.gen(), extra);
    (p, t)
}

fn mine_trial(seed: u64, max_size: usize) -> Result<Summary> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (p, t) = random_instance(&mut rng, max_size);
    let n = p.len();
    let mut summary = Summary::new();
    summary.add(check_lsc_iff_upper(&p, &t)?);
    summary.add(check_scott_necessity(&p, &t)?);
    summary.add(check_decision_procedure(&p, &t)?);
    summary.add(check_topology_coincidence(&p)?);

    let forced: Vec<(usize, usize)> =
        (0..rng.gen_range(0..=3)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    summary.add(check_alexandrov_antitone(&p, &p.extend_with(&forced)?)?);

    let alexandrov = Topology::alexandrov(&p);
    let finer = if t.is_finer(&alexandrov)?.holds() {
        t.clone()
    } else {
        alexandrov.random_between(rng.gen(), rng.gen_range(0..=2))
    };
    summary.add(check_linear_extensions_lsc(&p, &finer, 10, rng.gen())?);

    let pairs = chain_pivot_pairs(&p);
    if !pairs.is_empty() {
        let (chain, pivot) = pairs[rng.gen_range(0..pairs.len())];
        let topology = if rng.gen_bool(0.5) { &t } else { &finer };
        summary.add(check_chain_restriction(&p, topology, chain, pivot)?);
    }
    Ok(summary)
}

/// Runs every checker on `trials` seeded random instances of size at most
/// `max_size`. Trials run in parallel; each uses a seed derived from
/// `(seed, trial index)`, so the summary (timing aside) is a pure function
/// of the arguments.
pub fn mine(seed: u64, trials: usize, max_size: usize) -> Result<Summary> {
    if max_size > HARNESS_LIMIT {
        return Err(Error::TooLarge { limit: HARNESS_LIMIT, actual: max_size });
    }
    if max_size == 0 {
        return Err(Error::EmptyUniverse);
    }
    let parts = (0..trials as u64)
        .into_par_iter()
        .map(|i| mine_trial(derive_seed(seed, i), max_size))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = Summary::new();
    for part in parts {
        summary.absorb(part);
    }
    Ok(summary)
}

/// Every checker over every labelled preorder of size `1..=max_size`,
/// paired with every topology on the same ground set (each finite topology
/// is the Alexandrov topology of its specialization preorder).
pub fn exhaustive(max_size: usize) -> Result<Summary> {
    let mut summary = Summary::new();
    for n in 1..=max_size {
        let preorders = Preorder::enumerate_all(n)?;
        let topologies: Vec<Topology> = preorders.iter().map(Topology::alexandrov).collect();
        let parts = preorders
            .par_iter()
            .map(|p| exhaustive_for(p, &preorders, &topologies))
            .collect::<Result<Vec<_>>>()?;
        for part in parts {
            summary.absorb(part);
        }
    }
    Ok(summary)
}

fn exhaustive_for(p: &Preorder, preorders: &[Preorder], topologies: &[Topology]) -> Result<Summary> {
    let mut summary = Summary::new();
    summary.add(check_topology_coincidence(p)?);
    let alexandrov = Topology::alexandrov(p);
    let chains = chain_pivot_pairs(p);
    for t in topologies {
        summary.add(check_lsc_iff_upper(p, t)?);
        summary.add(check_scott_necessity(p, t)?);
        summary.add(check_decision_procedure(p, t)?);
        if t.is_finer(&alexandrov)?.holds() {
            summary.add(check_linear_extensions_lsc(p, t, 24, 0)?);
        }
        for &(chain, pivot) in &chains {
            summary.add(check_chain_restriction(p, t, chain, pivot)?);
        }
    }
    for fine in preorders {
        if p.is_contained_in(fine).holds() {
            summary.add(check_alexandrov_antitone(p, fine)?);
        }
    }
    Ok(summary)
}

/// All checkers applicable to one explicit instance.
pub fn check_instance(p: &Preorder, t: &Topology) -> Result<Summary> {
    let mut summary = Summary::new();
    summary.add(check_lsc_iff_upper(p, t)?);
    summary.add(check_scott_necessity(p, t)?);
    summary.add(check_decision_procedure(p, t)?);
    if p.len() <= SCOTT_LIMIT {
        summary.add(check_topology_coincidence(p)?);
    }
    summary.add(check_alexandrov_antitone(p, p)?);
    if t.is_finer(&Topology::alexandrov(p))?.holds() {
        summary.add(check_linear_extensions_lsc(p, t, 24, 0)?);
    }
    if p.len() <= HARNESS_LIMIT {
        for (chain, pivot) in chain_pivot_pairs(p) {
            summary.add(check_chain_restriction(p, t, chain, pivot)?);
        }
    }
    Ok(summary)
}

/// Per-theorem `(checked, violations)` counts.
pub fn tally(summary: &Summary) -> BTreeMap<TheoremId, (usize, usize)> {
    summary.reports.iter().map(|r| (r.theorem, (r.instances_checked, r.violations.len()))).collect()
}
