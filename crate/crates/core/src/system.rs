//! Axiom systems, their signatures, and model assignments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, TypeErrors};
use crate::formula::{check_types_at, Formula};
use crate::types::SimpleType;
use crate::universe::Universe;
use crate::value::Value;

/// Ordered primitive signs: the free variables of an axiom system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Signature {
    vars: Vec<(String, SimpleType)>,
}

impl Signature {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, SimpleType)>) -> Self {
        Signature { vars: vars.into_iter().map(|(n, t)| (n.into(), t)).collect() }
    }

    pub fn type_of(&self, name: &str) -> Option<&SimpleType> {
        self.vars.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|(n, _)| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SimpleType)> {
        self.vars.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|(n, _)| n.as_str())
    }

    pub fn types(&self) -> impl Iterator<Item = &SimpleType> {
        self.vars.iter().map(|(_, t)| t)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, t)) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{n}:{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Axiom {
    pub label: String,
    pub formula: Formula,
}

impl Axiom {
    pub fn new(label: impl Into<String>, formula: Formula) -> Self {
        Axiom { label: label.into(), formula }
    }
}

/// A named conjunction of axioms over a signature of primitive signs.
///
/// `constraints` hold clauses injected by declarations rather than written
/// as axioms (functionality of a `func` primitive); they take part in the
/// system formula like any axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSystem {
    name: String,
    signature: Signature,
    axioms: Vec<Axiom>,
    constraints: Vec<Axiom>,
}

impl AxiomSystem {
    pub fn new(name: impl Into<String>, signature: Signature, axioms: Vec<Axiom>) -> Result<Self> {
        AxiomSystem::with_constraints(name, signature, axioms, Vec::new())
    }

    pub fn with_constraints(
        name: impl Into<String>,
        signature: Signature,
        axioms: Vec<Axiom>,
        constraints: Vec<Axiom>,
    ) -> Result<Self> {
        let name = name.into();
        if signature.is_empty() {
            return Err(Error::SignatureMismatch(format!("system `{name}` declares no primitive signs")));
        }
        let mut errors = Vec::new();
        for a in axioms.iter().chain(&constraints) {
            if let Err(TypeErrors(es)) = check_types_at(&a.formula, &signature, &a.label) {
                errors.extend(es);
            }
        }
        if !errors.is_empty() {
            return Err(TypeErrors(errors).into());
        }
        Ok(AxiomSystem { name, signature, axioms, constraints })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn constraints(&self) -> &[Axiom] {
        &self.constraints
    }

    /// Axioms followed by constraints.
    pub fn clauses(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().chain(&self.constraints)
    }

    /// The system formula: the conjunction of every clause.
    pub fn conjunction(&self) -> Formula {
        Formula::conjunction(self.clauses().map(|a| a.formula.clone()))
    }

    /// Primitive signs that no clause mentions.
    pub fn unused_signature_variables(&self) -> Vec<&str> {
        let used: Vec<String> = self.clauses().flat_map(|a| a.formula.free_names()).collect();
        self.signature.names().filter(|n| !used.iter().any(|u| u == n)).collect()
    }

    /// The same system with one more axiom.
    pub fn with_axiom(&self, axiom: Axiom) -> Result<Self> {
        let mut axioms = self.axioms.clone();
        axioms.push(axiom);
        AxiomSystem::with_constraints(self.name.clone(), self.signature.clone(), axioms, self.constraints.clone())
    }
}

/// One value per primitive sign, in signature order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModelAssignment(pub Vec<Value>);

impl ModelAssignment {
    pub fn new(values: impl IntoIterator<Item = Value>) -> Self {
        ModelAssignment(values.into_iter().collect())
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<&Value> {
        self.0.get(i)
    }

    /// Admissible for `signature` over `universe`: pointwise type match.
    pub fn is_admissible(&self, signature: &Signature, universe: &Universe) -> bool {
        self.0.len() == signature.len()
            && self.0.iter().zip(signature.types()).all(|(v, t)| v.has_type(t, universe.base_size()))
    }

    pub fn check_admissible(&self, signature: &Signature, universe: &Universe) -> Result<()> {
        if self.is_admissible(signature, universe) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "assignment {self} is not admissible for signature {signature} at n={}",
                universe.base_size()
            )))
        }
    }

    /// Individuals occurring anywhere in the assignment.
    pub fn support(&self) -> std::collections::BTreeSet<u32> {
        let mut out = std::collections::BTreeSet::new();
        for v in &self.0 {
            v.collect_support(&mut out);
        }
        out
    }

    /// `name = value` pairs joined by `; `.
    pub fn display_with(&self, signature: &Signature) -> String {
        signature.names().zip(&self.0).map(|(n, v)| format!("{n} = {v}")).collect::<Vec<_>>().join("; ")
    }
}

impl fmt::Display for ModelAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}
