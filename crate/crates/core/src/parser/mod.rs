//! The `.axs` surface language.
//!
//! ```text
//! system equiv
//! vars R:rel(ind,ind)
//! axiom refl: forall x:ind. R(x,x)
//! axiom sym: forall x:ind, y:ind. R(x,y) -> R(y,x)
//! ```
//!
//! A file holds one or more `system` blocks. Each block declares its
//! primitive signs with `vars`, may mark binary-or-wider relations as
//! functions with `func`, may introduce abbreviations with
//! `define name(params) := formula`, and lists `axiom label: formula`.
//! Types are `ind`, `rel(t1,…,tk)`, and `set(t)` (same as `rel(t)`).
//! Formulas accept ASCII (`forall`, `exists`, `exists!`, `~`, `&`, `|`,
//! `->`, `<->`, `!=`) or Unicode (`∀ ∃ ∃! ¬ ∧ ∨ → ↔ ≠ ∈ ∉`). `//` starts a
//! comment.

mod ast;
mod expand;
mod lexer;
mod parse;
mod printer;

use crate::error::{Error, ParseError, Result};
use crate::formula::{check_types, Formula};
use crate::system::{Axiom, AxiomSystem, ModelAssignment, Signature};
use crate::types::SimpleType;
use crate::value::Value;

pub use ast::{DefineDecl, SFormula, STerm, SetExpr, SourceFile, SystemDecl};
pub use expand::{expand_sugar, Define, SugarContext};
pub use printer::pretty_print;

use expand::expand_labelled;
use parse::Parser;

/// Parses a file into its surface declarations without expanding anything.
pub fn parse_source(text: &str) -> Result<SourceFile, ParseError> {
    let mut p = Parser::new(text)?;
    p.source_file()
}

/// An axiom system together with the context its formulas were expanded
/// in, so further formulas can use the same definitions and functions.
#[derive(Clone, Debug)]
pub struct Elaborated {
    pub system: AxiomSystem,
    pub context: SugarContext,
}

impl Elaborated {
    /// Parses a formula over this system's primitive signs, with its
    /// definitions and functions available.
    pub fn parse_formula(&self, text: &str) -> Result<Formula> {
        let mut ctx = self.context.clone();
        parse_formula_with(text, &mut ctx)
    }
}

/// Parses every system in a file.
pub fn parse_systems(text: &str) -> Result<Vec<Elaborated>> {
    let mut p = Parser::new(text)?;
    let file = p.source_file()?;
    file.systems.iter().map(|decl| elaborate(decl, p.identifiers.iter().cloned())).collect()
}

/// Parses a file holding exactly one system.
pub fn parse_axiom_system(text: &str) -> Result<AxiomSystem> {
    parse_elaborated(text).map(|e| e.system)
}

/// As [`parse_axiom_system`], keeping the expansion context.
pub fn parse_elaborated(text: &str) -> Result<Elaborated> {
    let file = parse_source(text)?;
    if let Some(second) = file.systems.get(1) {
        return Err(ParseError {
            line: second.line,
            column: second.column,
            expected: "end of input (one system per file)".to_string(),
        }
        .into());
    }
    let mut systems = parse_systems(text)?;
    match systems.len() {
        0 => {
            let lines = text.lines().count().max(1);
            Err(ParseError {
                line: lines,
                column: text.lines().last().map_or(1, |l| l.chars().count() + 1),
                expected: "`system`, found end of input".to_string(),
            }
            .into())
        }
        _ => Ok(systems.remove(0)),
    }
}

/// Expands and type-checks one system declaration.
pub fn elaborate(decl: &SystemDecl, identifiers: impl IntoIterator<Item = String>) -> Result<Elaborated> {
    let signature = Signature::new(decl.vars.iter().cloned());
    let mut ctx = SugarContext::new(signature.clone());
    ctx.reserve_names(identifiers);
    for f in &decl.funcs {
        ctx.add_function(f.clone());
    }
    for d in &decl.defines {
        let body = expand_labelled(&d.body, &mut ctx, &d.params, &d.name)?;
        let mut scope: Vec<(String, SimpleType)> = signature.iter().map(|(n, t)| (n.to_string(), t.clone())).collect();
        for p in &d.params {
            if signature.type_of(&p.name).is_some() {
                return Err(Error::Type(crate::error::TypeErrors(vec![crate::error::TypeError {
                    location: d.name.clone(),
                    message: format!("parameter `{}` shadows a primitive sign", p.name),
                }])));
            }
            scope.push((p.name.clone(), p.ty.clone()));
        }
        crate::formula::check_types_at(&body, &Signature::new(scope), &d.name)?;
        ctx.add_define(Define { name: d.name.clone(), params: d.params.clone(), body });
    }
    let mut axioms = Vec::with_capacity(decl.axioms.len());
    for (label, f) in &decl.axioms {
        axioms.push(Axiom::new(label.clone(), expand_labelled(f, &mut ctx, &[], label)?));
    }
    let constraints = decl.funcs.iter().map(|f| Axiom::new(format!("func({f})"), ctx.functionality(f))).collect();
    let system = AxiomSystem::with_constraints(decl.name.clone(), signature, axioms, constraints)?;
    Ok(Elaborated { system, context: ctx })
}

/// Parses a standalone formula over `signature` (no definitions or functions).
pub fn parse_formula(text: &str, signature: &Signature) -> Result<Formula> {
    parse_formula_with(text, &mut SugarContext::new(signature.clone()))
}

fn parse_formula_with(text: &str, ctx: &mut SugarContext) -> Result<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_eof()?;
    ctx.reserve_names(p.identifiers.iter().cloned());
    let core = expand_sugar(&f, ctx)?;
    check_types(&core, ctx.signature())?;
    Ok(core)
}

/// Parses a surface formula without expanding it.
pub fn parse_surface_formula(text: &str) -> Result<SFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a value literal of type `ty`: `2`, `{0,1}`, `{(0,1),(1,0)}`, `{({0},0)}`.
pub fn parse_value(text: &str, ty: &SimpleType, base_size: u32) -> Result<Value, ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.value(ty, base_size)?;
    p.expect_eof()?;
    Ok(v)
}

/// Parses `;`-separated value literals, one per primitive sign.
pub fn parse_model(text: &str, signature: &Signature, base_size: u32) -> Result<ModelAssignment, ParseError> {
    let mut p = Parser::new(text)?;
    let mut values = Vec::with_capacity(signature.len());
    for (i, ty) in signature.types().enumerate() {
        if i > 0 {
            p.semi()?;
        }
        values.push(p.value(ty, base_size)?);
    }
    p.expect_eof()?;
    Ok(ModelAssignment(values))
}

/// Parses a type expression such as `rel(set(ind),ind)`.
pub fn parse_type(text: &str) -> Result<SimpleType, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}
