//! Instance documents, DOT export and replayable witnesses.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::Violation;
use crate::order::{ContourKind, Preorder};
use crate::representation::{FunctionFamily, Rational, RepFailure, ValueFunction};
use crate::set::ElementSet;
use crate::topology::{AxiomViolation, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyMode {
    Upper,
    Alexandrov,
    Scott,
    Order,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologySpec {
    pub mode: TopologyMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
}

/// The on-disk instance format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
    #[serde(default)]
    pub autoclose: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologySpec>,
    /// Named functions, each a map from label to a `p/q` rational string.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, BTreeMap<String, String>>,
}

fn build_error_path(e: &Error) -> &'static str {
    match e {
        Error::DuplicateLabel(_) | Error::EmptyUniverse | Error::TooLarge { .. } => "elements",
        _ => "relation",
    }
}

fn axiom_reason(p: &Preorder, v: AxiomViolation) -> String {
    let show = |s: ElementSet| format!("{{{}}}", p.set_labels(s).join(","));
    match v {
        AxiomViolation::MissingEmpty => "empty set absent".into(),
        AxiomViolation::MissingGround => "ground set absent".into(),
        AxiomViolation::OutOfBounds(s) => format!("set {s:?} out of bounds"),
        AxiomViolation::NotClosedUnderUnion(a, b) => format!("union of {} and {} absent", show(a), show(b)),
        AxiomViolation::NotClosedUnderIntersection(a, b) => {
            format!("intersection of {} and {} absent", show(a), show(b))
        }
    }
}

/// Parses and validates an instance, returning it in canonical form:
/// relation pairs sorted by element position and deduplicated, explicit
/// opens sorted.
pub fn parse_instance(text: &str) -> Result<InstanceDocument> {
    let mut doc: InstanceDocument = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => Error::validation("document", e.to_string()),
            _ => Error::Syntax { line: e.line(), message: e.to_string() },
        }
    })?;
    doc.canonicalize()?;
    Ok(doc)
}

impl InstanceDocument {
    fn canonicalize(&mut self) -> Result<()> {
        let p = self.preorder()?;
        let mut pairs: Vec<(usize, usize)> = self
            .relation
            .iter()
            .map(|(x, y)| Ok((p.index(x)?, p.index(y)?)))
            .collect::<Result<_>>()?;
        pairs.sort_unstable();
        pairs.dedup();
        self.relation = pairs.into_iter().map(|(x, y)| (p.label(x).to_owned(), p.label(y).to_owned())).collect();
        if let Some(t) = self.topology(&p)? {
            if let Some(spec) = &mut self.topology {
                if spec.mode == TopologyMode::Explicit {
                    spec.opens = Some(t.opens().iter().map(|&o| p.set_labels(o)).collect());
                }
            }
        }
        self.functions()?;
        Ok(())
    }

    pub fn preorder(&self) -> Result<Preorder> {
        Preorder::build(&self.elements, &self.relation, self.autoclose)
            .map_err(|e| Error::validation(build_error_path(&e), e.to_string()))
    }

    /// The topology named by the document, if any.
    pub fn topology(&self, p: &Preorder) -> Result<Option<Topology>> {
        let Some(spec) = &self.topology else { return Ok(None) };
        if spec.mode != TopologyMode::Explicit {
            if spec.opens.is_some() {
                return Err(Error::validation("topology.opens", "only allowed with mode \"explicit\""));
            }
            return resolve_mode(spec.mode, p).map(Some);
        }
        let opens = spec.opens.as_ref().ok_or_else(|| Error::validation("topology.opens", "required"))?;
        let sets = opens
            .iter()
            .enumerate()
            .map(|(k, o)| {
                p.set_from_labels(o).map_err(|e| Error::validation(format!("topology.opens[{k}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Topology::from_opens(p.len(), sets)
            .map(Some)
            .map_err(|v| Error::validation("topology.opens", axiom_reason(p, v)))
    }

    /// Named functions in name order.
    pub fn functions(&self) -> Result<Vec<(String, ValueFunction)>> {
        self.functions
            .iter()
            .map(|(name, values)| {
                let path = |l: &str| format!("functions.{name}.{l}");
                if let Some(l) = values.keys().find(|l| !self.elements.contains(l)) {
                    return Err(Error::validation(path(l), "unknown element"));
                }
                let values = self
                    .elements
                    .iter()
                    .map(|l| {
                        let raw = values.get(l).ok_or_else(|| Error::validation(path(l), "missing value"))?;
                        Rational::from_str(raw.trim())
                            .map_err(|_| Error::validation(path(l), format!("`{raw}` is not a rational p/q")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((name.clone(), ValueFunction::new(values)))
            })
            .collect()
    }

    pub fn family(&self) -> Result<Option<FunctionFamily>> {
        let fs = self.functions()?;
        Ok((!fs.is_empty()).then(|| FunctionFamily::new(fs.into_iter().map(|(_, f)| f).collect())))
    }

    /// Canonical document for a preorder, optionally with an explicit
    /// topology and named functions.
    pub fn from_parts(p: &Preorder, t: Option<&Topology>, functions: &[(String, ValueFunction)]) -> Self {
        InstanceDocument {
            elements: p.labels().to_vec(),
            relation: p.pairs().into_iter().map(|(x, y)| (p.label(x).to_owned(), p.label(y).to_owned())).collect(),
            autoclose: true,
            topology: t.map(|t| TopologySpec {
                mode: TopologyMode::Explicit,
                opens: Some(t.opens().iter().map(|&o| p.set_labels(o)).collect()),
            }),
            functions: functions.iter().map(|(name, f)| (name.clone(), function_map(p, f))).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

pub fn resolve_mode(mode: TopologyMode, p: &Preorder) -> Result<Topology> {
    match mode {
        TopologyMode::Upper => Ok(Topology::upper(p)),
        TopologyMode::Alexandrov => Ok(Topology::alexandrov(p)),
        TopologyMode::Scott => Topology::scott(p),
        TopologyMode::Order => Ok(Topology::order(p)),
        TopologyMode::Explicit => Err(Error::validation("topology", "explicit mode needs opens")),
    }
}

/// Label → `p/q` string.
pub fn function_map(p: &Preorder, f: &ValueFunction) -> BTreeMap<String, String> {
    (0..p.len()).map(|i| (p.label(i).to_owned(), f.value(i).to_string())).collect()
}

/// Hasse diagram of the quotient. Node ids are the lexicographically sorted
/// member labels of each `~`-class joined by commas.
pub fn export_dot(p: &Preorder) -> String {
    let q = p.quotient();
    let ids: Vec<String> = q
        .classes
        .iter()
        .map(|c| {
            let mut labels = p.set_labels(*c);
            labels.sort();
            labels.join(",")
        })
        .collect();
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("digraph preorder {\n  rankdir=BT;\n");
    for id in &ids {
        out.push_str(&format!("  {};\n", quote(id)));
    }
    for (a, b) in q.order.covers() {
        out.push_str(&format!("  {} -> {};\n", quote(&ids[a]), quote(&ids[b])));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixExport {
    pub elements: Vec<String>,
    pub matrix: Vec<Vec<bool>>,
}

pub fn export_matrix(p: &Preorder) -> MatrixExport {
    MatrixExport { elements: p.labels().to_vec(), matrix: p.matrix() }
}

/// A printed failure certificate that can be re-checked against an
/// instance document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Witness {
    /// The weak lower contour of `element` is not closed in `topology`.
    ContourNotClosed { element: String, contour: Vec<String>, topology: Vec<Vec<String>> },
    /// A named function has a sublevel set that is not closed.
    SublevelNotClosed { function: String, at: String, set: Vec<String>, topology: Vec<Vec<String>> },
    /// The document's function family misrepresents the pair `(x, y)`.
    PairMisrepresented { x: String, y: String, function: Option<String>, failure: PairFailure },
    /// A theorem checker failed; replayed without the document.
    TheoremViolation { violation: Violation },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairFailure {
    MemberDecreases,
    UnseparatedPair,
    NotStrictOnStrictPair,
}

impl From<RepFailure> for PairFailure {
    fn from(f: RepFailure) -> Self {
        match f {
            RepFailure::MemberDecreases => PairFailure::MemberDecreases,
            RepFailure::UnseparatedPair => PairFailure::UnseparatedPair,
            RepFailure::NotStrictOnStrictPair => PairFailure::NotStrictOnStrictPair,
        }
    }
}

fn explicit_topology(p: &Preorder, opens: &[Vec<String>]) -> Result<Topology> {
    let sets = opens.iter().map(|o| p.set_from_labels(o)).collect::<Result<Vec<_>>>()?;
    Topology::from_opens(p.len(), sets).map_err(|v| Error::validation("witness.topology", axiom_reason(p, v)))
}

pub fn opens_labels(p: &Preorder, t: &Topology) -> Vec<Vec<String>> {
    t.opens().iter().map(|&o| p.set_labels(o)).collect()
}

impl Witness {
    /// Re-checks the claim against `doc`. `Ok(true)` means it still holds.
    pub fn confirm(&self, doc: &InstanceDocument) -> Result<bool> {
        match self {
            Witness::TheoremViolation { violation } => violation.replay(),
            Witness::ContourNotClosed { element, contour, topology } => {
                let p = doc.preorder()?;
                let t = explicit_topology(&p, topology)?;
                let lower = p.contour(p.index(element)?, ContourKind::WeakLower)?;
                Ok(lower == p.set_from_labels(contour)? && !t.is_closed(lower)?)
            }
            Witness::SublevelNotClosed { function, at, set, topology } => {
                let p = doc.preorder()?;
                let t = explicit_topology(&p, topology)?;
                let functions = doc.functions()?;
                let Some((_, f)) = functions.iter().find(|(name, _)| name == function) else {
                    return Ok(false);
                };
                let sub = f.sublevel(p.index(at)?);
                Ok(sub == p.set_from_labels(set)? && !t.is_closed(sub)?)
            }
            Witness::PairMisrepresented { x, y, function, failure } => {
                let p = doc.preorder()?;
                let (x, y) = (p.index(x)?, p.index(y)?);
                let functions = doc.functions()?;
                let member = |name: &str| functions.iter().find(|(n, _)| n == name).map(|(_, f)| f);
                Ok(match (failure, function.as_deref().map(member)) {
                    (PairFailure::MemberDecreases, Some(Some(f))) => p.leq(x, y) && f.value(x) > f.value(y),
                    (PairFailure::NotStrictOnStrictPair, Some(Some(f))) => p.lt(x, y) && f.value(x) >= f.value(y),
                    (PairFailure::UnseparatedPair, None) => {
                        !functions.is_empty()
                            && !p.leq(x, y)
                            && functions.iter().all(|(_, f)| f.value(x) <= f.value(y))
                    }
                    _ => false,
                })
            }
        }
    }
}
