//! Model enumeration and the submodel order.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::satisfies;
use crate::system::{AxiomSystem, ModelAssignment, Signature};
use crate::universe::Universe;
use crate::value::Value;

/// Every type-matching assignment for a signature, in canonical order.
///
/// Assignments are indexed in mixed radix with the first signature entry
/// most significant, so index order is lexicographic order on the tuple of
/// canonically ordered component values.
#[derive(Clone)]
pub struct AdmissibleModels {
    domains: Vec<Arc<[Value]>>,
    total: u64,
}

impl AdmissibleModels {
    pub fn new(universe: &Universe, signature: &Signature) -> Result<Self> {
        let domains = signature.types().map(|t| universe.type_domain(t)).collect::<Result<Vec<_>>>()?;
        let total = domains.iter().fold(1u64, |acc, d| acc.saturating_mul(d.len() as u64));
        Ok(AdmissibleModels { domains, total })
    }

    /// Number of admissible assignments (saturating).
    pub fn count(&self) -> u64 {
        self.total
    }

    /// The assignment at position `index` in canonical order.
    pub fn get(&self, mut index: u64) -> Option<ModelAssignment> {
        if index >= self.total {
            return None;
        }
        let mut values = vec![Value::Ind(0); self.domains.len()];
        for (slot, dom) in values.iter_mut().zip(&self.domains).rev() {
            let len = dom.len() as u64;
            *slot = dom[(index % len) as usize].clone();
            index /= len;
        }
        Some(ModelAssignment(values))
    }

    pub fn iter(&self) -> impl Iterator<Item = ModelAssignment> + '_ {
        (0..self.total).map(|i| self.get(i).expect("index in range"))
    }
}

/// The admissible assignments of `signature` over `universe`.
pub fn admissible_models(universe: &Universe, signature: &Signature) -> Result<AdmissibleModels> {
    AdmissibleModels::new(universe, signature)
}

/// Models of an axiom system, canonically ordered.
#[derive(Clone, Debug, Serialize)]
pub struct ModelSet {
    pub system: String,
    pub base_size: u32,
    pub models: Vec<ModelAssignment>,
}

impl ModelSet {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ModelAssignment> {
        self.models.iter()
    }

    pub fn contains(&self, m: &ModelAssignment) -> bool {
        self.models.binary_search(m).is_ok()
    }
}

const CHUNK: u64 = 256;

/// All admissible assignments satisfying `system`.
///
/// Work is split into fixed index ranges and evaluated in parallel; results
/// are concatenated in range order, so the output never depends on
/// scheduling.
pub fn models_of(universe: &Universe, system: &AxiomSystem) -> Result<ModelSet> {
    let space = admissible_models(universe, system.signature())?;
    let chunks = space.count().div_ceil(CHUNK);
    let parts: Vec<Vec<ModelAssignment>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let hi = ((c + 1) * CHUNK).min(space.count());
            let mut found = Vec::new();
            for i in c * CHUNK..hi {
                let m = space.get(i).expect("index in range");
                if satisfies(universe, system, &m)? {
                    found.push(m);
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    Ok(ModelSet {
        system: system.name().to_string(),
        base_size: universe.base_size(),
        models: parts.into_iter().flatten().collect(),
    })
}

/// Componentwise inclusion: relation components by subset, individual
/// components by equality.
pub fn is_submodel(p: &ModelAssignment, q: &ModelAssignment) -> Result<bool> {
    if p.values().len() != q.values().len() {
        return Err(Error::SignatureMismatch(format!(
            "models have {} and {} components",
            p.values().len(),
            q.values().len()
        )));
    }
    let mut ok = true;
    for (a, b) in p.values().iter().zip(q.values()) {
        match (a, b) {
            (Value::Ind(x), Value::Ind(y)) => ok &= x == y,
            (Value::Rel(x), Value::Rel(y)) => ok &= x.is_subset_of(y),
            _ => return Err(Error::SignatureMismatch("component kinds differ".into())),
        }
    }
    Ok(ok)
}

/// `p ⊆ q` and `p ≠ q`.
pub fn is_proper_submodel(p: &ModelAssignment, q: &ModelAssignment) -> Result<bool> {
    Ok(p != q && is_submodel(p, q)?)
}

fn require_model(universe: &Universe, system: &AxiomSystem, p: &ModelAssignment) -> Result<()> {
    p.check_admissible(system.signature(), universe)?;
    if !satisfies(universe, system, p)? {
        return Err(Error::NotAModel(p.display_with(system.signature())));
    }
    Ok(())
}

/// No model of `system` properly extends `p`.
pub fn is_maximal(universe: &Universe, system: &AxiomSystem, p: &ModelAssignment) -> Result<bool> {
    require_model(universe, system, p)?;
    let models = models_of(universe, system)?;
    for q in models.iter() {
        if is_proper_submodel(p, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No model of `system` is properly contained in `p`.
pub fn is_minimal(universe: &Universe, system: &AxiomSystem, p: &ModelAssignment) -> Result<bool> {
    require_model(universe, system, p)?;
    let models = models_of(universe, system)?;
    for q in models.iter() {
        if is_proper_submodel(q, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The models of a set that no other member properly contains.
pub fn maximal_models(models: &ModelSet) -> Result<Vec<ModelAssignment>> {
    extremal(models, is_proper_submodel)
}

/// The models of a set that properly contain no other member.
pub fn minimal_models(models: &ModelSet) -> Result<Vec<ModelAssignment>> {
    extremal(models, |p, q| is_proper_submodel(q, p))
}

fn extremal(
    models: &ModelSet,
    beaten: impl Fn(&ModelAssignment, &ModelAssignment) -> Result<bool>,
) -> Result<Vec<ModelAssignment>> {
    let mut out = Vec::new();
    'outer: for p in models.iter() {
        for q in models.iter() {
            if beaten(p, q)? {
                continue 'outer;
            }
        }
        out.push(p.clone());
    }
    Ok(out)
}

/// Outcome of a Hilbert-completeness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCompleteness {
    pub complete: bool,
    /// On failure: the least non-maximal model and the greatest model
    /// properly extending it.
    pub witness: Option<(ModelAssignment, ModelAssignment)>,
}

/// Every model of `system` is maximal among its models.
pub fn is_hilbert_complete(universe: &Universe, system: &AxiomSystem) -> Result<HilbertCompleteness> {
    let models = models_of(universe, system)?;
    hilbert_completeness(&models)
}

/// As [`is_hilbert_complete`], on an already enumerated model set.
pub fn hilbert_completeness(models: &ModelSet) -> Result<HilbertCompleteness> {
    for p in models.iter() {
        let mut above = None;
        for q in models.iter().rev() {
            if is_proper_submodel(p, q)? {
                above = Some(q.clone());
                break;
            }
        }
        if let Some(q) = above {
            return Ok(HilbertCompleteness { complete: false, witness: Some((p.clone(), q)) });
        }
    }
    Ok(HilbertCompleteness { complete: true, witness: None })
}
