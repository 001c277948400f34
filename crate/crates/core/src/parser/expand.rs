//! Expansion of surface abbreviations into core formulas.
//!
//! Every abbreviation has one fixed quantified expansion:
//!
//! | surface                | core                                     |
//! |------------------------|------------------------------------------|
//! | `in(t, A)`             | `A(t)`                                   |
//! | `in(t, dom(R))`        | `exists y. R(t, y)`                      |
//! | `in(t, ran(R))`        | `exists y. R(y, t)`                      |
//! | `in(t, field(R))`      | `dom` case `|` `ran` case                |
//! | `in(t, inter(A, B))`   | `in(t, A) & in(t, B)`                    |
//! | `in(a, powerset(A))`   | `forall x. a(x) -> in(x, A)`             |
//! | `subset(A, B)`         | `forall x. in(x, A) -> in(x, B)`         |
//! | `inter-empty(A, B)`    | `forall x. ~(in(x, A) & in(x, B))`       |
//! | `s != t`               | `~(s = t)`                               |
//! | `P[f(t)]`, `f` a func  | `exists y. f(t, y) & P[y]`               |
//!
//! Defined predicates are inlined with their bound variables renamed apart.
//! Introduced variables get names unused anywhere in the source.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result, TypeError, TypeErrors};
use crate::formula::{Binder, Formula, Quantifier, Term};
use crate::system::Signature;
use crate::types::SimpleType;

use super::ast::{SFormula, STerm, SetExpr};

/// A `define`d predicate with its body already in core form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Define {
    pub name: String,
    pub params: Vec<Binder>,
    pub body: Formula,
}

/// Everything sugar expansion needs to know about the enclosing system.
#[derive(Clone, Debug, Default)]
pub struct SugarContext {
    signature: Signature,
    functions: Vec<String>,
    defines: Vec<Define>,
    used: HashSet<String>,
    counters: HashMap<&'static str, usize>,
}

impl SugarContext {
    pub fn new(signature: Signature) -> Self {
        let used = signature.names().map(str::to_string).collect();
        SugarContext { signature, used, ..SugarContext::default() }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn functions(&self) -> &[String] {
        &self.functions
    }

    pub fn defines(&self) -> &[Define] {
        &self.defines
    }

    pub(crate) fn reserve_names(&mut self, names: impl IntoIterator<Item = String>) {
        self.used.extend(names);
    }

    pub(crate) fn add_function(&mut self, name: String) {
        self.functions.push(name);
    }

    pub(crate) fn add_define(&mut self, define: Define) {
        self.used.insert(define.name.clone());
        self.defines.push(define);
    }

    fn define(&self, name: &str) -> Option<&Define> {
        self.defines.iter().find(|d| d.name == name)
    }

    fn fresh(&mut self, ty: &SimpleType) -> String {
        let prefix = match ty {
            SimpleType::Ind => "x",
            SimpleType::Rel(cs) if cs.len() == 1 => "a",
            SimpleType::Rel(_) => "r",
        };
        loop {
            let n = self.counters.entry(prefix).or_insert(0);
            *n += 1;
            let name = format!("{prefix}{n}");
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }

    /// The functionality clause `forall x̄. exists! y. f(x̄, y)` for a `func` primitive.
    pub(crate) fn functionality(&mut self, name: &str) -> Formula {
        let cs = self
            .signature
            .type_of(name)
            .and_then(SimpleType::components)
            .expect("func primitives are declared relations")
            .to_vec();
        let (inputs, output) = cs.split_at(cs.len() - 1);
        let xs: Vec<Binder> = inputs.iter().map(|t| Binder::new(self.fresh(t), t.clone())).collect();
        let y = Binder::new(self.fresh(&output[0]), output[0].clone());
        let mut args: Vec<Term> = xs.iter().map(|b| Term::var(&b.name)).collect();
        args.push(Term::var(&y.name));
        let body = Formula::Quant(Quantifier::ExistsUnique, y, Box::new(Formula::app(name, args)));
        wrap_forall(xs, body)
    }
}

fn wrap_forall(binders: Vec<Binder>, body: Formula) -> Formula {
    binders.into_iter().rev().fold(body, |acc, b| Formula::Quant(Quantifier::Forall, b, Box::new(acc)))
}

fn wrap_exists(binders: Vec<Binder>, body: Formula) -> Formula {
    binders.into_iter().rev().fold(body, |acc, b| Formula::Quant(Quantifier::Exists, b, Box::new(acc)))
}

/// Expands every abbreviation in `f`. Core formulas come back unchanged.
pub fn expand_sugar(f: &SFormula, ctx: &mut SugarContext) -> Result<Formula> {
    expand_labelled(f, ctx, &[], "")
}

pub(crate) fn expand_labelled(f: &SFormula, ctx: &mut SugarContext, scope: &[Binder], label: &str) -> Result<Formula> {
    let mut e = Expander { ctx, scope: scope.to_vec(), label };
    e.formula(f)
}

/// A function-term binding produced by flattening: `exists var. func(args, var)`.
struct Binding {
    var: Binder,
    func: String,
    args: Vec<Term>,
}

struct Expander<'a> {
    ctx: &'a mut SugarContext,
    scope: Vec<Binder>,
    label: &'a str,
}

impl Expander<'_> {
    fn type_error(&self, message: String) -> Error {
        let location = if self.label.is_empty() { "/".to_string() } else { self.label.to_string() };
        Error::Type(TypeErrors(vec![TypeError { location, message }]))
    }

    fn var_type(&self, name: &str) -> Option<SimpleType> {
        self.scope
            .iter()
            .rev()
            .find(|b| b.name == name)
            .map(|b| b.ty.clone())
            .or_else(|| self.ctx.signature.type_of(name).cloned())
    }

    fn in_scope(&self, name: &str) -> bool {
        self.var_type(name).is_some()
    }

    fn formula(&mut self, f: &SFormula) -> Result<Formula> {
        Ok(match f {
            SFormula::True => Formula::True,
            SFormula::False => Formula::False,
            SFormula::App(name, args) => {
                let mut bindings = Vec::new();
                let ts = self.flatten_all(args, &mut bindings)?;
                let atom = self.relation_atom(name, ts)?;
                self.wrap(bindings, atom)
            }
            SFormula::Eq(a, b) => self.equality(a, b)?,
            SFormula::Neq(a, b) => Formula::not(self.equality(a, b)?),
            SFormula::In(t, set) => {
                let mut bindings = Vec::new();
                let t = self.flatten(t, &mut bindings)?;
                let arity = self.set_components(set)?.len();
                if arity != 1 {
                    return Err(
                        self.type_error(format!("`in` needs a class of single elements, found one of arity {arity}"))
                    );
                }
                let atom = self.member(vec![t], set)?;
                self.wrap(bindings, atom)
            }
            SFormula::Subset(a, b) => {
                let xs = self.element_binders(a, b, "subset")?;
                let ts: Vec<Term> = xs.iter().map(|x| Term::var(&x.name)).collect();
                let body = Formula::implies(self.member(ts.clone(), a)?, self.member(ts, b)?);
                wrap_forall(xs, body)
            }
            SFormula::InterEmpty(a, b) => {
                let xs = self.element_binders(a, b, "inter-empty")?;
                let ts: Vec<Term> = xs.iter().map(|x| Term::var(&x.name)).collect();
                let body = Formula::not(Formula::and(self.member(ts.clone(), a)?, self.member(ts, b)?));
                wrap_forall(xs, body)
            }
            SFormula::Not(g) => Formula::not(self.formula(g)?),
            SFormula::Binary(c, a, b) => Formula::binary(*c, self.formula(a)?, self.formula(b)?),
            SFormula::Quant(q, binder, body) => {
                self.scope.push(binder.clone());
                let body = self.formula(body);
                self.scope.pop();
                Formula::Quant(*q, binder.clone(), Box::new(body?))
            }
        })
    }

    fn equality(&mut self, a: &STerm, b: &STerm) -> Result<Formula> {
        let mut bindings = Vec::new();
        let a = self.flatten(a, &mut bindings)?;
        let b = self.flatten(b, &mut bindings)?;
        Ok(self.wrap(bindings, Formula::Eq(a, b)))
    }

    /// Fresh bound variables for the elements of two classes of equal type.
    fn element_binders(&mut self, a: &SetExpr, b: &SetExpr, form: &str) -> Result<Vec<Binder>> {
        let ta = self.set_components(a)?;
        let tb = self.set_components(b)?;
        if ta != tb {
            return Err(self.type_error(format!(
                "`{form}` compares classes of different types ({} vs {})",
                SimpleType::Rel(ta),
                SimpleType::Rel(tb)
            )));
        }
        Ok(ta.iter().map(|t| Binder::new(self.ctx.fresh(t), t.clone())).collect())
    }

    fn flatten_all(&mut self, args: &[STerm], bindings: &mut Vec<Binding>) -> Result<Vec<Term>> {
        args.iter().map(|a| self.flatten(a, bindings)).collect()
    }

    fn flatten(&mut self, t: &STerm, bindings: &mut Vec<Binding>) -> Result<Term> {
        match t {
            STerm::Var(v) => Ok(Term::var(v.clone())),
            STerm::Lit(k) => Ok(Term::Lit(*k)),
            STerm::Call(f, args) => {
                if !self.ctx.functions.iter().any(|g| g == f) || self.scope.iter().any(|b| b.name == *f) {
                    return Err(self.type_error(format!("`{f}` is used as a function but is not declared `func`")));
                }
                let cs = self.ctx.signature.type_of(f).and_then(SimpleType::components).unwrap_or(&[]).to_vec();
                if args.len() + 1 != cs.len() {
                    return Err(self.type_error(format!(
                        "function `{f}` takes {} arguments, found {}",
                        cs.len() - 1,
                        args.len()
                    )));
                }
                let args = self.flatten_all(args, bindings)?;
                let out = cs[cs.len() - 1].clone();
                let var = Binder::new(self.ctx.fresh(&out), out);
                let result = Term::var(&var.name);
                bindings.push(Binding { var, func: f.clone(), args });
                Ok(result)
            }
        }
    }

    fn wrap(&self, bindings: Vec<Binding>, atom: Formula) -> Formula {
        bindings.into_iter().rev().fold(atom, |acc, b| {
            let mut args = b.args;
            args.push(Term::var(&b.var.name));
            Formula::Quant(Quantifier::Exists, b.var, Box::new(Formula::and(Formula::app(b.func, args), acc)))
        })
    }

    /// `name(args)` where `name` is a relation variable or a definition.
    fn relation_atom(&mut self, name: &str, args: Vec<Term>) -> Result<Formula> {
        if !self.in_scope(name) {
            if let Some(def) = self.ctx.define(name).cloned() {
                return self.instantiate(&def, args);
            }
            if name.contains('-') {
                return Err(Error::UnknownSugar(name.to_string()));
            }
        }
        Ok(Formula::app(name, args))
    }

    /// Component types of a relation variable or definition.
    fn relation_components(&self, name: &str) -> Result<Vec<SimpleType>> {
        if let Some(ty) = self.var_type(name) {
            return ty
                .components()
                .map(<[_]>::to_vec)
                .ok_or_else(|| self.type_error(format!("`{name}` has type ind and is not a class")));
        }
        if let Some(def) = self.ctx.define(name) {
            return Ok(def.params.iter().map(|p| p.ty.clone()).collect());
        }
        Err(self.type_error(format!("unknown relation `{name}`")))
    }

    fn set_components(&self, set: &SetExpr) -> Result<Vec<SimpleType>> {
        match set {
            SetExpr::Name(n) => self.relation_components(n),
            SetExpr::Dom(r) | SetExpr::Ran(r) | SetExpr::Field(r) => {
                let cs = self.relation_components(r)?;
                if cs.len() < 2 {
                    return Err(self.type_error(format!("`{r}` is not a relation of arity at least 2")));
                }
                match set {
                    SetExpr::Dom(_) => Ok(vec![cs[0].clone()]),
                    SetExpr::Ran(_) => Ok(vec![cs[cs.len() - 1].clone()]),
                    _ if cs.len() == 2 && cs[0] == cs[1] => Ok(vec![cs[0].clone()]),
                    _ => Err(self.type_error(format!("the field of `{r}` mixes types; use `dom` or `ran`"))),
                }
            }
            SetExpr::Inter(a, b) => {
                let (ta, tb) = (self.set_components(a)?, self.set_components(b)?);
                if ta != tb {
                    return Err(self.type_error("`inter` of classes of different types".to_string()));
                }
                Ok(ta)
            }
            SetExpr::Powerset(a) => Ok(vec![SimpleType::Rel(self.set_components(a)?)]),
        }
    }

    /// Membership of the tuple `ts` in `set`.
    fn member(&mut self, ts: Vec<Term>, set: &SetExpr) -> Result<Formula> {
        match set {
            SetExpr::Name(n) => self.relation_atom(n, ts),
            SetExpr::Dom(r) | SetExpr::Ran(r) => {
                let cs = self.relation_components(r)?;
                let t = ts.into_iter().next().expect("unary membership");
                let others: Vec<SimpleType> =
                    if matches!(set, SetExpr::Dom(_)) { cs[1..].to_vec() } else { cs[..cs.len() - 1].to_vec() };
                let ys: Vec<Binder> = others.iter().map(|c| Binder::new(self.ctx.fresh(c), c.clone())).collect();
                let mut args: Vec<Term> = ys.iter().map(|b| Term::var(&b.name)).collect();
                if matches!(set, SetExpr::Dom(_)) {
                    args.insert(0, t);
                } else {
                    args.push(t);
                }
                let atom = self.relation_atom(r, args)?;
                Ok(wrap_exists(ys, atom))
            }
            SetExpr::Field(r) => {
                let dom = self.member(ts.clone(), &SetExpr::Dom(r.clone()))?;
                let ran = self.member(ts, &SetExpr::Ran(r.clone()))?;
                Ok(Formula::or(dom, ran))
            }
            SetExpr::Inter(a, b) => Ok(Formula::and(self.member(ts.clone(), a)?, self.member(ts, b)?)),
            SetExpr::Powerset(a) => {
                let Some(Term::Var(class)) = ts.into_iter().next() else {
                    return Err(self.type_error("an individual literal is never a class".to_string()));
                };
                let cs = self.set_components(a)?;
                let xs: Vec<Binder> = cs.iter().map(|c| Binder::new(self.ctx.fresh(c), c.clone())).collect();
                let es: Vec<Term> = xs.iter().map(|b| Term::var(&b.name)).collect();
                let body = Formula::implies(Formula::app(class, es.clone()), self.member(es, a)?);
                Ok(wrap_forall(xs, body))
            }
        }
    }

    fn instantiate(&mut self, def: &Define, args: Vec<Term>) -> Result<Formula> {
        if args.len() != def.params.len() {
            return Err(self.type_error(format!(
                "`{}` takes {} arguments, found {}",
                def.name,
                def.params.len(),
                args.len()
            )));
        }
        let renamed = rename_bound(&def.body, &mut HashMap::new(), self.ctx);
        let subst: HashMap<&str, &Term> = def.params.iter().map(|p| p.name.as_str()).zip(&args).collect();
        substitute(&renamed, &subst).map_err(|m| self.type_error(m))
    }
}

/// Renames every bound variable to a fresh name.
fn rename_bound(f: &Formula, renames: &mut HashMap<String, String>, ctx: &mut SugarContext) -> Formula {
    let term = |t: &Term, renames: &HashMap<String, String>| match t {
        Term::Var(v) => Term::Var(renames.get(v).cloned().unwrap_or_else(|| v.clone())),
        Term::Lit(k) => Term::Lit(*k),
    };
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::App { head, args } => Formula::App {
            head: renames.get(head).cloned().unwrap_or_else(|| head.clone()),
            args: args.iter().map(|a| term(a, renames)).collect(),
        },
        Formula::Eq(a, b) => Formula::Eq(term(a, renames), term(b, renames)),
        Formula::Not(g) => Formula::not(rename_bound(g, renames, ctx)),
        Formula::Binary(c, a, b) => Formula::binary(*c, rename_bound(a, renames, ctx), rename_bound(b, renames, ctx)),
        Formula::Quant(q, binder, body) => {
            let fresh = ctx.fresh(&binder.ty);
            let previous = renames.insert(binder.name.clone(), fresh.clone());
            let body = rename_bound(body, renames, ctx);
            match previous {
                Some(p) => renames.insert(binder.name.clone(), p),
                None => renames.remove(&binder.name),
            };
            Formula::Quant(*q, Binder::new(fresh, binder.ty.clone()), Box::new(body))
        }
    }
}

/// Replaces free occurrences of the keys. Bound names must already be apart
/// from every substituted term.
fn substitute(f: &Formula, subst: &HashMap<&str, &Term>) -> std::result::Result<Formula, String> {
    let term = |t: &Term| match t {
        Term::Var(v) => subst.get(v.as_str()).map_or_else(|| t.clone(), |s| (*s).clone()),
        Term::Lit(_) => t.clone(),
    };
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::App { head, args } => {
            let head = match subst.get(head.as_str()) {
                None => head.clone(),
                Some(Term::Var(v)) => v.clone(),
                Some(Term::Lit(k)) => return Err(format!("literal #{k} cannot be applied as a relation")),
            };
            Formula::App { head, args: args.iter().map(term).collect() }
        }
        Formula::Eq(a, b) => Formula::Eq(term(a), term(b)),
        Formula::Not(g) => Formula::not(substitute(g, subst)?),
        Formula::Binary(c, a, b) => Formula::binary(*c, substitute(a, subst)?, substitute(b, subst)?),
        Formula::Quant(q, binder, body) => Formula::Quant(*q, binder.clone(), Box::new(substitute(body, subst)?)),
    })
}
