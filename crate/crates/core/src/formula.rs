//! Core formula AST of the typed higher-order language.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{TypeError, TypeErrors};
use crate::system::Signature;
use crate::types::SimpleType;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    /// `#k`, the constant naming base element `k`.
    Lit(u32),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binder {
    pub name: String,
    pub ty: SimpleType,
}

impl Binder {
    pub fn new(name: impl Into<String>, ty: SimpleType) -> Self {
        Binder { name: name.into(), ty }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantifier {
    Forall,
    Exists,
    ExistsUnique,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Connective {
    And,
    Or,
    Implies,
    Iff,
}

impl Connective {
    pub fn is_commutative(self) -> bool {
        !matches!(self, Connective::Implies)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formula {
    True,
    False,
    /// A relation-typed variable applied to argument terms.
    App {
        head: String,
        args: Vec<Term>,
    },
    Eq(Term, Term),
    Not(Box<Formula>),
    Binary(Connective, Box<Formula>, Box<Formula>),
    Quant(Quantifier, Binder, Box<Formula>),
}

impl Formula {
    pub fn app(head: impl Into<String>, args: impl IntoIterator<Item = Term>) -> Self {
        Formula::App { head: head.into(), args: args.into_iter().collect() }
    }

    /// Application to variables only, the common case.
    pub fn app_vars<'a>(head: impl Into<String>, args: impl IntoIterator<Item = &'a str>) -> Self {
        Formula::app(head, args.into_iter().map(Term::var))
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Self {
        Formula::Binary(c, Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::And, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::Or, a, b)
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::Implies, a, b)
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::Iff, a, b)
    }

    pub fn quant(q: Quantifier, name: impl Into<String>, ty: SimpleType, body: Formula) -> Self {
        Formula::Quant(q, Binder::new(name, ty), Box::new(body))
    }

    pub fn forall(name: impl Into<String>, ty: SimpleType, body: Formula) -> Self {
        Formula::quant(Quantifier::Forall, name, ty, body)
    }

    pub fn exists(name: impl Into<String>, ty: SimpleType, body: Formula) -> Self {
        Formula::quant(Quantifier::Exists, name, ty, body)
    }

    pub fn exists_unique(name: impl Into<String>, ty: SimpleType, body: Formula) -> Self {
        Formula::quant(Quantifier::ExistsUnique, name, ty, body)
    }

    /// Conjunction of a list, left-nested; `True` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Number of AST nodes. Terms count as nodes, so `R(x,y)` has size 4
    /// (application, head, two arguments) and `x = y` has size 3.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False => 1,
            Formula::App { args, .. } => 2 + args.len(),
            Formula::Eq(..) => 3,
            Formula::Not(f) => 1 + f.size(),
            Formula::Binary(_, a, b) => 1 + a.size() + b.size(),
            Formula::Quant(_, _, body) => 1 + body.size(),
        }
    }

    /// True iff no individual literal `#k` occurs.
    pub fn is_pure(&self) -> bool {
        self.literals().is_empty()
    }

    pub fn literals(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.visit_terms(&mut |t| {
            if let Term::Lit(k) = t {
                out.push(*k);
            }
        });
        out
    }

    fn visit_terms(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::App { args, .. } => args.iter().for_each(&mut *f),
            Formula::Eq(a, b) => {
                f(a);
                f(b);
            }
            Formula::Not(g) => g.visit_terms(f),
            Formula::Binary(_, a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Formula::Quant(_, _, body) => body.visit_terms(f),
        }
    }

    /// Names of the free variables in first-occurrence order.
    pub fn free_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut Vec<String>) {
        let note = |name: &'a str, bound: &Vec<&'a str>, out: &mut Vec<String>| {
            if !bound.contains(&name) && !out.iter().any(|o| o == name) {
                out.push(name.to_string());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::App { head, args } => {
                note(head, bound, out);
                for a in args {
                    if let Term::Var(v) = a {
                        note(v, bound, out);
                    }
                }
            }
            Formula::Eq(a, b) => {
                for t in [a, b] {
                    if let Term::Var(v) = t {
                        note(v, bound, out);
                    }
                }
            }
            Formula::Not(g) => g.collect_free(bound, out),
            Formula::Binary(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, binder, body) => {
                bound.push(&binder.name);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables with their signature types, in first-occurrence order.
    /// Names missing from the signature are skipped; [`check_types`] reports them.
    pub fn free_variables(&self, signature: &Signature) -> Vec<(String, SimpleType)> {
        self.free_names().into_iter().filter_map(|n| signature.type_of(&n).map(|t| (n.clone(), t.clone()))).collect()
    }

    /// Every identifier occurring in the formula, bound or free.
    pub fn names(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut HashSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::App { head, args } => {
                out.insert(head.clone());
                for a in args {
                    if let Term::Var(v) = a {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Eq(a, b) => {
                for t in [a, b] {
                    if let Term::Var(v) = t {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Not(g) => g.collect_names(out),
            Formula::Binary(_, a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Quant(_, binder, body) => {
                out.insert(binder.name.clone());
                body.collect_names(out);
            }
        }
    }
}

/// Type-checks `formula` against `signature`. Locations are child-index
/// paths from the root, e.g. `/1/0`.
pub fn check_types(formula: &Formula, signature: &Signature) -> Result<(), TypeErrors> {
    check_types_at(formula, signature, "")
}

/// As [`check_types`], prefixing every location with `label`.
pub fn check_types_at(formula: &Formula, signature: &Signature, label: &str) -> Result<(), TypeErrors> {
    let mut checker = Checker { signature, scope: Vec::new(), path: Vec::new(), label, errors: Vec::new() };
    checker.formula(formula);
    if checker.errors.is_empty() {
        Ok(())
    } else {
        Err(TypeErrors(checker.errors))
    }
}

struct Checker<'a> {
    signature: &'a Signature,
    scope: Vec<(&'a str, &'a SimpleType)>,
    path: Vec<usize>,
    label: &'a str,
    errors: Vec<TypeError>,
}

impl<'a> Checker<'a> {
    fn error(&mut self, message: String) {
        let mut location = self.label.to_string();
        if self.path.is_empty() {
            location.push('/');
        }
        for i in &self.path {
            location.push('/');
            location.push_str(&i.to_string());
        }
        self.errors.push(TypeError { location, message });
    }

    fn lookup(&self, name: &str) -> Option<&'a SimpleType> {
        self.scope.iter().rev().find(|(n, _)| *n == name).map(|(_, t)| *t).or_else(|| self.signature.type_of(name))
    }

    fn term(&mut self, t: &'a Term) -> Option<&'a SimpleType> {
        match t {
            Term::Lit(_) => Some(&SimpleType::Ind),
            Term::Var(v) => {
                let ty = self.lookup(v);
                if ty.is_none() {
                    self.error(format!("unknown variable `{v}`"));
                }
                ty
            }
        }
    }

    fn child(&mut self, i: usize, f: &'a Formula) {
        self.path.push(i);
        self.formula(f);
        self.path.pop();
    }

    fn formula(&mut self, f: &'a Formula) {
        match f {
            Formula::True | Formula::False => {}
            Formula::App { head, args } => {
                let Some(head_ty) = self.lookup(head) else {
                    self.error(format!("unknown relation `{head}`"));
                    return;
                };
                let Some(components) = head_ty.components() else {
                    self.error(format!("`{head}` has type ind and cannot be applied"));
                    return;
                };
                if components.len() != args.len() {
                    self.error(format!(
                        "`{head}` of type {head_ty} expects {} arguments, found {}",
                        components.len(),
                        args.len()
                    ));
                    return;
                }
                for (i, (a, expected)) in args.iter().zip(components).enumerate() {
                    if let Some(found) = self.term(a) {
                        if found != expected {
                            self.error(format!("argument {} of `{head}`: expected {expected}, found {found}", i + 1));
                        }
                    }
                }
            }
            Formula::Eq(a, b) => {
                let (ta, tb) = (self.term(a), self.term(b));
                if let (Some(ta), Some(tb)) = (ta, tb) {
                    if ta != tb {
                        self.error(format!("cannot equate a term of type {ta} with one of type {tb}"));
                    }
                }
            }
            Formula::Not(g) => self.child(0, g),
            Formula::Binary(_, a, b) => {
                self.child(0, a);
                self.child(1, b);
            }
            Formula::Quant(_, binder, body) => {
                if self.signature.type_of(&binder.name).is_some() {
                    self.error(format!("bound variable `{}` shadows a primitive sign", binder.name));
                }
                self.scope.push((&binder.name, &binder.ty));
                self.child(0, body);
                self.scope.pop();
            }
        }
    }
}
