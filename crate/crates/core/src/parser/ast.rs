//! Surface syntax: the core language plus set-theoretic abbreviations.

use crate::formula::{Binder, Connective, Formula, Quantifier, Term};
use crate::types::SimpleType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum STerm {
    Var(String),
    Lit(u32),
    /// `f(t1,…,tk)` for a primitive declared `func`.
    Call(String, Vec<STerm>),
}

/// Class expressions usable in `in`, `subset`, and `inter-empty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    /// A relation variable or a `define`d predicate.
    Name(String),
    Dom(String),
    Ran(String),
    Field(String),
    Inter(Box<SetExpr>, Box<SetExpr>),
    Powerset(Box<SetExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SFormula {
    True,
    False,
    /// Relation application or `define` instance.
    App(String, Vec<STerm>),
    Eq(STerm, STerm),
    Neq(STerm, STerm),
    In(STerm, SetExpr),
    Subset(SetExpr, SetExpr),
    InterEmpty(SetExpr, SetExpr),
    Not(Box<SFormula>),
    Binary(Connective, Box<SFormula>, Box<SFormula>),
    Quant(Quantifier, Binder, Box<SFormula>),
}

impl SFormula {
    /// Embeds a core formula unchanged.
    pub fn from_core(f: &Formula) -> SFormula {
        let term = |t: &Term| match t {
            Term::Var(v) => STerm::Var(v.clone()),
            Term::Lit(k) => STerm::Lit(*k),
        };
        match f {
            Formula::True => SFormula::True,
            Formula::False => SFormula::False,
            Formula::App { head, args } => SFormula::App(head.clone(), args.iter().map(term).collect()),
            Formula::Eq(a, b) => SFormula::Eq(term(a), term(b)),
            Formula::Not(g) => SFormula::Not(Box::new(SFormula::from_core(g))),
            Formula::Binary(c, a, b) => {
                SFormula::Binary(*c, Box::new(SFormula::from_core(a)), Box::new(SFormula::from_core(b)))
            }
            Formula::Quant(q, b, body) => SFormula::Quant(*q, b.clone(), Box::new(SFormula::from_core(body))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefineDecl {
    pub name: String,
    pub params: Vec<Binder>,
    pub body: SFormula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDecl {
    pub name: String,
    /// Position of the `system` keyword.
    pub line: usize,
    pub column: usize,
    pub vars: Vec<(String, SimpleType)>,
    pub funcs: Vec<String>,
    pub defines: Vec<DefineDecl>,
    pub axioms: Vec<(String, SFormula)>,
}

/// A parsed `.axs` file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourceFile {
    pub systems: Vec<SystemDecl>,
}
