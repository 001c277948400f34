//! Substitutional satisfaction over a finite universe.
//!
//! A formula holds under a model assignment when the sentence obtained by
//! substituting the assigned values for the primitive signs is true in the
//! universe, with every quantifier ranging over the full type domain.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::formula::{Connective, Formula, Quantifier, Term};
use crate::system::{AxiomSystem, ModelAssignment, Signature};
use crate::universe::Universe;
use crate::value::Value;

/// Bound-variable bindings, innermost first.
#[derive(Clone, Copy)]
pub struct Env<'a> {
    name: &'a str,
    value: &'a Value,
    parent: Option<&'a Env<'a>>,
}

impl<'a> Env<'a> {
    pub fn bind(name: &'a str, value: &'a Value, parent: Option<&'a Env<'a>>) -> Self {
        Env { name, value, parent }
    }

    fn lookup(env: Option<&Env<'a>>, name: &str) -> Option<&'a Value> {
        let mut cur = env;
        while let Some(e) = cur {
            if e.name == name {
                return Some(e.value);
            }
            cur = e.parent;
        }
        None
    }
}

/// Evaluates `formula` with the primitive signs of `signature` bound to `model`.
pub fn eval(universe: &Universe, formula: &Formula, signature: &Signature, model: &ModelAssignment) -> Result<bool> {
    eval_in(universe, formula, signature, model, None)
}

/// As [`eval`], with additional bound-variable bindings.
pub fn eval_in(
    universe: &Universe,
    formula: &Formula,
    signature: &Signature,
    model: &ModelAssignment,
    env: Option<&Env<'_>>,
) -> Result<bool> {
    if model.values().len() != signature.len() {
        return Err(Error::SignatureMismatch(format!(
            "assignment has {} values for {} primitive signs",
            model.values().len(),
            signature.len()
        )));
    }
    Evaluator { universe, signature, model }.formula(formula, env)
}

/// True iff every clause of `system` holds under `model`.
pub fn satisfies(universe: &Universe, system: &AxiomSystem, model: &ModelAssignment) -> Result<bool> {
    for axiom in system.clauses() {
        if !eval(universe, &axiom.formula, system.signature(), model)? {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Evaluator<'a> {
    universe: &'a Universe,
    signature: &'a Signature,
    model: &'a ModelAssignment,
}

impl<'a> Evaluator<'a> {
    fn term<'e>(&self, t: &'e Term, env: Option<&Env<'e>>) -> Result<Cow<'e, Value>>
    where
        'a: 'e,
    {
        match t {
            Term::Lit(k) => {
                if *k >= self.universe.base_size() {
                    return Err(Error::LiteralOutOfRange { literal: *k, base_size: self.universe.base_size() });
                }
                Ok(Cow::Owned(Value::Ind(*k)))
            }
            Term::Var(name) => self.var(name, env).map(Cow::Borrowed),
        }
    }

    fn var<'e>(&self, name: &str, env: Option<&Env<'e>>) -> Result<&'e Value>
    where
        'a: 'e,
    {
        if let Some(v) = Env::lookup(env, name) {
            return Ok(v);
        }
        self.signature
            .index_of(name)
            .and_then(|i| self.model.get(i))
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    fn formula(&self, f: &Formula, env: Option<&Env<'_>>) -> Result<bool> {
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::App { head, args } => {
                let rel = self
                    .var(head, env)?
                    .as_rel()
                    .ok_or_else(|| Error::SignatureMismatch(format!("`{head}` is not bound to a relation")))?;
                let values = args.iter().map(|a| self.term(a, env)).collect::<Result<Vec<_>>>()?;
                rel.tuples().binary_search_by(|t| t.iter().cmp(values.iter().map(|v| v.as_ref()))).is_ok()
            }
            Formula::Eq(a, b) => self.term(a, env)? == self.term(b, env)?,
            Formula::Not(g) => !self.formula(g, env)?,
            Formula::Binary(c, a, b) => {
                let a = self.formula(a, env)?;
                match c {
                    Connective::And => a && self.formula(b, env)?,
                    Connective::Or => a || self.formula(b, env)?,
                    Connective::Implies => !a || self.formula(b, env)?,
                    Connective::Iff => a == self.formula(b, env)?,
                }
            }
            Formula::Quant(q, binder, body) => {
                let domain = self.universe.type_domain(&binder.ty)?;
                let mut holds = domain.iter().map(|v| {
                    let inner = Env::bind(&binder.name, v, env);
                    self.formula(body, Some(&inner))
                });
                match q {
                    Quantifier::Forall => {
                        for r in holds {
                            if !r? {
                                return Ok(false);
                            }
                        }
                        true
                    }
                    Quantifier::Exists => {
                        for r in holds {
                            if r? {
                                return Ok(true);
                            }
                        }
                        false
                    }
                    Quantifier::ExistsUnique => {
                        let mut count = 0;
                        for r in holds.by_ref() {
                            if r? {
                                count += 1;
                                if count > 1 {
                                    break;
                                }
                            }
                        }
                        count == 1
                    }
                }
            }
        })
    }
}
