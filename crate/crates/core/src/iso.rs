//! Correlators, isomorphism between models, and formality.
//!
//! A correlator is a bijection on individuals, lifted through relation
//! values tuple by tuple. In Tarski mode it is a permutation of the whole
//! base domain; in Carnap mode it maps the individuals occurring in one
//! model onto those occurring in the other.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::admissible_models;
use crate::error::{Error, Result};
use crate::eval::eval;
use crate::formula::{check_types, Formula};
use crate::system::{ModelAssignment, Signature};
use crate::universe::Universe;
use crate::value::{Relation, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoMode {
    /// Bijection between the individuals the two models mention.
    Carnap,
    /// Bijection of the entire base domain.
    #[default]
    Tarski,
}

impl fmt::Display for IsoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoMode::Carnap => "carnap",
            IsoMode::Tarski => "tarski",
        })
    }
}

impl FromStr for IsoMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "carnap" => Ok(IsoMode::Carnap),
            "tarski" => Ok(IsoMode::Tarski),
            other => Err(format!("unknown mode `{other}` (expected carnap or tarski)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correlator {
    pub mode: IsoMode,
    map: BTreeMap<u32, u32>,
}

impl Correlator {
    /// Builds a correlator from `(from, to)` pairs. Returns `None` unless
    /// the pairs form an injective function.
    pub fn from_pairs(mode: IsoMode, pairs: impl IntoIterator<Item = (u32, u32)>) -> Option<Self> {
        let mut map = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (a, b) in pairs {
            if map.insert(a, b).is_some() || !seen.insert(b) {
                return None;
            }
        }
        Some(Correlator { mode, map })
    }

    pub fn identity(mode: IsoMode, domain: impl IntoIterator<Item = u32>) -> Self {
        Correlator { mode, map: domain.into_iter().map(|i| (i, i)).collect() }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.map.iter().map(|(a, b)| (*a, *b))
    }

    pub fn apply(&self, i: u32) -> Option<u32> {
        self.map.get(&i).copied()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    pub fn inverse(&self) -> Correlator {
        Correlator { mode: self.mode, map: self.map.iter().map(|(a, b)| (*b, *a)).collect() }
    }

    /// `other` after `self`, defined where both steps are.
    pub fn then(&self, other: &Correlator) -> Correlator {
        let map = self.map.iter().filter_map(|(a, b)| other.apply(*b).map(|c| (*a, c))).collect();
        Correlator { mode: self.mode, map }
    }

    /// Hereditary image of a value.
    pub fn lift(&self, v: &Value) -> Result<Value> {
        match v {
            Value::Ind(i) => self.apply(*i).map(Value::Ind).ok_or(Error::SupportNotCovered),
            Value::Rel(r) => {
                let tuples = r
                    .tuples()
                    .iter()
                    .map(|t| t.iter().map(|x| self.lift(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(Value::Rel(Relation::new(tuples)))
            }
        }
    }

    pub fn lift_model(&self, m: &ModelAssignment) -> Result<ModelAssignment> {
        m.values().iter().map(|v| self.lift(v)).collect::<Result<Vec<_>>>().map(ModelAssignment)
    }
}

impl fmt::Display for Correlator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        f.write_str("}")
    }
}

fn shape_check(p: &ModelAssignment, q: &ModelAssignment) -> Result<()> {
    if p.values().len() != q.values().len() {
        return Err(Error::SignatureMismatch(format!(
            "models have {} and {} components",
            p.values().len(),
            q.values().len()
        )));
    }
    for (a, b) in p.values().iter().zip(q.values()) {
        if matches!(a, Value::Ind(_)) != matches!(b, Value::Ind(_)) {
            return Err(Error::SignatureMismatch("component kinds differ".into()));
        }
    }
    Ok(())
}

/// Cheap necessary conditions: lifting preserves relation sizes and the
/// number of individuals mentioned.
fn invariants_agree(p: &ModelAssignment, q: &ModelAssignment) -> bool {
    p.values().iter().zip(q.values()).all(|(a, b)| match (a, b) {
        (Value::Rel(x), Value::Rel(y)) => x.len() == y.len() && a.support().len() == b.support().len(),
        _ => true,
    }) && p.support().len() == q.support().len()
}

/// Calls `visit` on every bijection from `from` onto `to` in lexicographic
/// order of the image sequence, honouring `forced` pairs. Stops when
/// `visit` returns `Some`.
fn search_bijections<T>(
    from: &[u32],
    to: &[u32],
    forced: &BTreeMap<u32, u32>,
    visit: &mut impl FnMut(&[(u32, u32)]) -> Option<T>,
) -> Option<T> {
    fn go<T>(
        k: usize,
        from: &[u32],
        to: &[u32],
        forced: &BTreeMap<u32, u32>,
        used: &mut [bool],
        graph: &mut Vec<(u32, u32)>,
        visit: &mut impl FnMut(&[(u32, u32)]) -> Option<T>,
    ) -> Option<T> {
        if k == from.len() {
            return visit(graph);
        }
        let d = from[k];
        for (j, &c) in to.iter().enumerate() {
            if used[j] || forced.get(&d).is_some_and(|&f| f != c) {
                continue;
            }
            used[j] = true;
            graph.push((d, c));
            let found = go(k + 1, from, to, forced, used, graph, visit);
            graph.pop();
            used[j] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }
    if from.len() != to.len() {
        return None;
    }
    let mut used = vec![false; to.len()];
    go(0, from, to, forced, &mut used, &mut Vec::with_capacity(from.len()), visit)
}

/// The first correlator (in lexicographic order of its graph) carrying `p`
/// onto `q`, if any.
pub fn are_isomorphic(
    universe: &Universe,
    p: &ModelAssignment,
    q: &ModelAssignment,
    mode: IsoMode,
) -> Result<Option<Correlator>> {
    shape_check(p, q)?;
    if !invariants_agree(p, q) {
        return Ok(None);
    }
    let mut forced = BTreeMap::new();
    for (a, b) in p.values().iter().zip(q.values()) {
        if let (Value::Ind(x), Value::Ind(y)) = (a, b) {
            if forced.insert(*x, *y).is_some_and(|prev| prev != *y) {
                return Ok(None);
            }
        }
    }
    let (from, to): (Vec<u32>, Vec<u32>) = match mode {
        IsoMode::Tarski => ((0..universe.base_size()).collect(), (0..universe.base_size()).collect()),
        IsoMode::Carnap => (p.support().into_iter().collect(), q.support().into_iter().collect()),
    };
    let mut failure = None;
    let found = search_bijections(&from, &to, &forced, &mut |graph| {
        let c = Correlator::from_pairs(mode, graph.iter().copied()).expect("bijection");
        match c.lift_model(p) {
            Ok(image) if &image == q => Some(c),
            Ok(_) => None,
            Err(e) => {
                failure = Some(e);
                Some(c)
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found)
}

/// One isomorphism class; `representative` is its least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub representative: ModelAssignment,
    pub members: Vec<ModelAssignment>,
}

impl IsoClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partitions `models` into isomorphism classes, ordered by representative.
pub fn iso_classes(universe: &Universe, models: &[ModelAssignment], mode: IsoMode) -> Result<Vec<IsoClass>> {
    let mut sorted = models.to_vec();
    sorted.sort();
    sorted.dedup();
    if let Some(first) = sorted.first() {
        for m in &sorted[1..] {
            shape_check(first, m)?;
        }
    }
    // Only models with matching invariants can be isomorphic, so buckets
    // are partitioned independently.
    let mut buckets: BTreeMap<Vec<(usize, usize)>, Vec<ModelAssignment>> = BTreeMap::new();
    for m in sorted {
        let key = m
            .values()
            .iter()
            .map(|v| (v.as_rel().map_or(0, Relation::len), v.support().len()))
            .chain([(0, m.support().len())])
            .collect();
        buckets.entry(key).or_default().push(m);
    }
    let parts: Vec<Vec<IsoClass>> = buckets
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|bucket| {
            let mut classes: Vec<IsoClass> = Vec::new();
            'next: for m in bucket {
                for class in classes.iter_mut() {
                    if are_isomorphic(universe, &class.representative, &m, mode)?.is_some() {
                        class.members.push(m);
                        continue 'next;
                    }
                }
                classes.push(IsoClass { representative: m.clone(), members: vec![m] });
            }
            Ok(classes)
        })
        .collect::<Result<_>>()?;
    let mut classes: Vec<IsoClass> = parts.into_iter().flatten().collect();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// An isomorphic pair on which a formula takes different truth values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalityCounterexample {
    /// Satisfies the formula.
    pub holds: ModelAssignment,
    /// Falsifies it.
    pub fails: ModelAssignment,
    /// Carries `holds` onto `fails`.
    pub correlator: Correlator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Formality {
    pub formal: bool,
    pub counterexample: Option<FormalityCounterexample>,
}

/// Every correlator `mode` allows out of `m`, identity excluded.
fn correlators_from(universe: &Universe, m: &ModelAssignment, mode: IsoMode) -> Vec<Correlator> {
    let n = universe.base_size();
    let from: Vec<u32> = match mode {
        IsoMode::Tarski => (0..n).collect(),
        IsoMode::Carnap => m.support().into_iter().collect(),
    };
    // Carnap: every injection of the support into the base domain, i.e.
    // every choice of target support with every bijection onto it.
    let mut out = Vec::new();
    let targets: Vec<Vec<u32>> = match mode {
        IsoMode::Tarski => vec![(0..n).collect()],
        IsoMode::Carnap => subsets_of_size(n, from.len()),
    };
    for to in targets {
        search_bijections::<()>(&from, &to, &BTreeMap::new(), &mut |graph| {
            let c = Correlator::from_pairs(mode, graph.iter().copied()).expect("bijection");
            if !c.is_identity() {
                out.push(c);
            }
            None
        });
    }
    out
}

fn subsets_of_size(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether `g` has the same truth value on isomorphic admissible models of
/// `signature`. The counterexample is the first one in canonical order of
/// the satisfying model, then of the correlator.
pub fn is_formal_semantic(universe: &Universe, g: &Formula, signature: &Signature, mode: IsoMode) -> Result<Formality> {
    check_types(g, signature)?;
    is_formal_class(universe, signature, mode, |m| eval(universe, g, signature, m))
}

/// As [`is_formal_semantic`] for an arbitrary class of admissible models,
/// given by its membership test.
pub fn is_formal_class(
    universe: &Universe,
    signature: &Signature,
    mode: IsoMode,
    member: impl Fn(&ModelAssignment) -> Result<bool> + Sync,
) -> Result<Formality> {
    let space = admissible_models(universe, signature)?;
    let found = (0..space.count())
        .into_par_iter()
        .map(|i| -> Result<Option<FormalityCounterexample>> {
            let p = space.get(i).expect("index in range");
            if !member(&p)? {
                return Ok(None);
            }
            for c in correlators_from(universe, &p, mode) {
                let q = c.lift_model(&p)?;
                if !member(&q)? {
                    return Ok(Some(FormalityCounterexample { holds: p, fails: q, correlator: c }));
                }
            }
            Ok(None)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(Formality { formal: true, counterexample: None }),
        Some(Err(e)) => Err(e),
        Some(Ok(cx)) => Ok(Formality { formal: false, counterexample: cx }),
    }
}

/// True when `g` mentions no individual literal. Sound for formality, not
/// complete: `x = #0 | x != #0` is formal but rejected.
pub fn is_formal_syntactic(g: &Formula) -> bool {
    g.is_pure()
}
