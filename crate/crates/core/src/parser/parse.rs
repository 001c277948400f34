//! Recursive-descent parser for `.axs` files, formulas, and value literals.
//!
//! Stops at the first error; there is no resynchronization.

use std::collections::HashSet;

use crate::error::ParseError;
use crate::formula::{Binder, Connective, Quantifier};
use crate::types::SimpleType;
use crate::value::Value;

use super::ast::{DefineDecl, SFormula, STerm, SetExpr, SourceFile, SystemDecl};
use super::lexer::{lex, Tok, Token};

const MAX_DEPTH: usize = 200;

/// Names with a fixed meaning in call position or in types.
pub(crate) const RESERVED: &[&str] =
    &["in", "subset", "inter-empty", "dom", "ran", "field", "inter", "powerset", "ind", "rel", "set"];

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
    pub identifiers: HashSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub(crate) fn new(src: &str) -> PResult<Self> {
        let lexed = lex(src)?;
        Ok(Parser { tokens: lexed.tokens, pos: 0, depth: 0, identifiers: lexed.identifiers })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            expected: format!("{}, found {}", expected.into(), t.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.error(what)),
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("shallower nesting"));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    pub(crate) fn expect_eof(&mut self) -> PResult<()> {
        self.expect(Tok::Eof, "end of input")
    }

    // ---- declarations ----

    pub(crate) fn source_file(&mut self) -> PResult<SourceFile> {
        let mut file = SourceFile::default();
        let mut system_names = HashSet::new();
        while *self.peek() != Tok::Eof {
            if *self.peek() != Tok::System {
                return Err(self.error("`system`"));
            }
            let (line, column) = (self.tokens[self.pos].line, self.tokens[self.pos].column);
            self.advance();
            let at = self.pos;
            let name = self.ident("a system name")?;
            if !system_names.insert(name.clone()) {
                self.pos = at;
                return Err(self.error(format!("a system name not used before (`{name}` is taken)")));
            }
            let mut sys = SystemDecl {
                name,
                line,
                column,
                vars: Vec::new(),
                funcs: Vec::new(),
                defines: Vec::new(),
                axioms: Vec::new(),
            };
            let mut names: HashSet<String> = HashSet::new();
            while self.peek().is_declaration() && *self.peek() != Tok::System {
                match self.advance() {
                    Tok::Vars => loop {
                        let name = self.fresh_decl_name(&mut names, "a variable name")?;
                        self.expect(Tok::Colon, "`:`")?;
                        let ty = self.ty()?;
                        sys.vars.push((name, ty));
                        if *self.peek() == Tok::Comma {
                            self.advance();
                        }
                        if !matches!(self.peek(), Tok::Ident(_)) {
                            break;
                        }
                    },
                    Tok::Func => loop {
                        let at = self.pos;
                        let name = self.ident("a primitive sign name")?;
                        match sys.vars.iter().find(|(n, _)| *n == name) {
                            Some((_, ty)) if ty.arity() >= 2 && !sys.funcs.contains(&name) => sys.funcs.push(name),
                            _ => {
                                self.pos = at;
                                return Err(
                                    self.error("a declared relation of arity at least 2 not already marked `func`")
                                );
                            }
                        }
                        if *self.peek() == Tok::Comma {
                            self.advance();
                        }
                        if !matches!(self.peek(), Tok::Ident(_)) {
                            break;
                        }
                    },
                    Tok::Define => {
                        let name = self.fresh_decl_name(&mut names, "a definition name")?;
                        self.expect(Tok::LParen, "`(`")?;
                        let mut params = vec![self.binder()?];
                        while *self.peek() == Tok::Comma {
                            self.advance();
                            params.push(self.binder()?);
                        }
                        self.expect(Tok::RParen, "`,` or `)`")?;
                        self.expect(Tok::Assign, "`:=`")?;
                        let body = self.formula()?;
                        sys.defines.push(DefineDecl { name, params, body });
                    }
                    Tok::Axiom => {
                        let at = self.pos;
                        let label = self.ident("an axiom label")?;
                        if sys.axioms.iter().any(|(l, _)| *l == label) {
                            self.pos = at;
                            return Err(self.error(format!("an unused axiom label (`{label}` is taken)")));
                        }
                        self.expect(Tok::Colon, "`:`")?;
                        let body = self.formula()?;
                        sys.axioms.push((label, body));
                    }
                    _ => unreachable!("guarded by is_declaration"),
                }
            }
            if !self.peek().is_declaration() && *self.peek() != Tok::Eof {
                return Err(self.error("a declaration (`vars`, `func`, `define`, `axiom`, `system`)"));
            }
            if sys.vars.is_empty() {
                return Err(self.error("`vars` (a system needs at least one primitive sign)"));
            }
            file.systems.push(sys);
        }
        Ok(file)
    }

    fn fresh_decl_name(&mut self, names: &mut HashSet<String>, what: &str) -> PResult<String> {
        let at = self.pos;
        let name = self.ident(what)?;
        if RESERVED.contains(&name.as_str()) || !names.insert(name.clone()) {
            self.pos = at;
            return Err(self.error(format!("{what} that is neither reserved nor already declared")));
        }
        Ok(name)
    }

    pub(crate) fn ty(&mut self) -> PResult<SimpleType> {
        self.enter()?;
        let at = self.pos;
        let t = match self.ident("a type (`ind`, `rel(...)`, `set(...)`)")?.as_str() {
            "ind" => SimpleType::Ind,
            "set" => {
                self.expect(Tok::LParen, "`(`")?;
                let t = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                SimpleType::set(t)
            }
            "rel" => {
                self.expect(Tok::LParen, "`(`")?;
                let mut cs = vec![self.ty()?];
                while *self.peek() == Tok::Comma {
                    self.advance();
                    cs.push(self.ty()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                SimpleType::Rel(cs)
            }
            _ => {
                self.pos = at;
                return Err(self.error("a type (`ind`, `rel(...)`, `set(...)`)"));
            }
        };
        self.leave();
        Ok(t)
    }

    fn binder(&mut self) -> PResult<Binder> {
        let at = self.pos;
        let name = self.ident("a variable name")?;
        if RESERVED.contains(&name.as_str()) {
            self.pos = at;
            return Err(self.error("a variable name that is not reserved"));
        }
        self.expect(Tok::Colon, "`:`")?;
        Ok(Binder::new(name, self.ty()?))
    }

    // ---- formulas ----

    pub(crate) fn formula(&mut self) -> PResult<SFormula> {
        self.enter()?;
        let f = self.iff()?;
        self.leave();
        Ok(f)
    }

    fn iff(&mut self) -> PResult<SFormula> {
        let mut f = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.advance();
            let rhs = self.implication()?;
            f = SFormula::Binary(Connective::Iff, Box::new(f), Box::new(rhs));
        }
        Ok(f)
    }

    fn implication(&mut self) -> PResult<SFormula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.advance();
            self.enter()?;
            let rhs = self.implication()?;
            self.leave();
            return Ok(SFormula::Binary(Connective::Implies, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<SFormula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.advance();
            let rhs = self.conjunction()?;
            f = SFormula::Binary(Connective::Or, Box::new(f), Box::new(rhs));
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> PResult<SFormula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.advance();
            let rhs = self.unary()?;
            f = SFormula::Binary(Connective::And, Box::new(f), Box::new(rhs));
        }
        Ok(f)
    }

    fn unary(&mut self) -> PResult<SFormula> {
        self.enter()?;
        let f = match self.peek() {
            Tok::Not => {
                self.advance();
                SFormula::Not(Box::new(self.unary()?))
            }
            Tok::Forall | Tok::Exists | Tok::ExistsUnique => {
                let q = match self.advance() {
                    Tok::Forall => Quantifier::Forall,
                    Tok::Exists => Quantifier::Exists,
                    _ => Quantifier::ExistsUnique,
                };
                let mut binders = vec![self.binder()?];
                while *self.peek() == Tok::Comma {
                    self.advance();
                    binders.push(self.binder()?);
                }
                self.expect(Tok::Dot, "`.` or `,`")?;
                let body = self.formula()?;
                binders.into_iter().rev().fold(body, |acc, b| SFormula::Quant(q, b, Box::new(acc)))
            }
            _ => self.atom()?,
        };
        self.leave();
        Ok(f)
    }

    fn atom(&mut self) -> PResult<SFormula> {
        match self.peek().clone() {
            Tok::True => {
                self.advance();
                Ok(SFormula::True)
            }
            Tok::False => {
                self.advance();
                Ok(SFormula::False)
            }
            Tok::LParen => {
                self.advance();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) if *self.peek_at(1) == Tok::LParen && is_set_sugar(&name) => {
                self.advance();
                self.advance();
                let f = match name.as_str() {
                    "in" => {
                        let t = self.term()?;
                        self.expect(Tok::Comma, "`,`")?;
                        SFormula::In(t, self.set_expr()?)
                    }
                    _ => {
                        let a = self.set_expr()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let b = self.set_expr()?;
                        if name == "subset" {
                            SFormula::Subset(a, b)
                        } else {
                            SFormula::InterEmpty(a, b)
                        }
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) | Tok::Lit(_) => {
                let lhs = self.term()?;
                match self.peek() {
                    Tok::Eq => {
                        self.advance();
                        Ok(SFormula::Eq(lhs, self.term()?))
                    }
                    Tok::Neq => {
                        self.advance();
                        Ok(SFormula::Neq(lhs, self.term()?))
                    }
                    Tok::Member => {
                        self.advance();
                        Ok(SFormula::In(lhs, self.set_expr()?))
                    }
                    Tok::NotMember => {
                        self.advance();
                        Ok(SFormula::Not(Box::new(SFormula::In(lhs, self.set_expr()?))))
                    }
                    _ => match lhs {
                        STerm::Call(head, args) => Ok(SFormula::App(head, args)),
                        _ => Err(self.error("`=`, `!=`, `∈`, or `∉`")),
                    },
                }
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn term(&mut self) -> PResult<STerm> {
        self.enter()?;
        let t = match self.peek().clone() {
            Tok::Lit(k) => {
                self.advance();
                STerm::Lit(k)
            }
            Tok::Ident(name) => {
                self.advance();
                if *self.peek() == Tok::LParen {
                    self.advance();
                    let mut args = vec![self.term()?];
                    while *self.peek() == Tok::Comma {
                        self.advance();
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen, "`,` or `)`")?;
                    STerm::Call(name, args)
                } else {
                    STerm::Var(name)
                }
            }
            _ => return Err(self.error("a term")),
        };
        self.leave();
        Ok(t)
    }

    fn set_expr(&mut self) -> PResult<SetExpr> {
        self.enter()?;
        let name = self.ident("a class expression")?;
        let e = if *self.peek() == Tok::LParen {
            self.advance();
            let e = match name.as_str() {
                "dom" => SetExpr::Dom(self.ident("a relation name")?),
                "ran" => SetExpr::Ran(self.ident("a relation name")?),
                "field" => SetExpr::Field(self.ident("a relation name")?),
                "powerset" => SetExpr::Powerset(Box::new(self.set_expr()?)),
                "inter" => {
                    let a = self.set_expr()?;
                    self.expect(Tok::Comma, "`,`")?;
                    SetExpr::Inter(Box::new(a), Box::new(self.set_expr()?))
                }
                _ => {
                    self.pos -= 2;
                    return Err(self.error("`dom`, `ran`, `field`, `inter`, or `powerset`"));
                }
            };
            self.expect(Tok::RParen, "`)`")?;
            e
        } else {
            SetExpr::Name(name)
        };
        self.leave();
        Ok(e)
    }

    // ---- value literals ----

    pub(crate) fn value(&mut self, ty: &SimpleType, base_size: u32) -> PResult<Value> {
        self.enter()?;
        let v = match ty {
            SimpleType::Ind => match self.peek().clone() {
                Tok::Num(k) | Tok::Lit(k) if k < base_size => {
                    self.advance();
                    Value::Ind(k)
                }
                _ => return Err(self.error(format!("an individual below {base_size}"))),
            },
            SimpleType::Rel(cs) => {
                self.expect(Tok::LBrace, &format!("`{{` opening a value of type {ty}"))?;
                let mut tuples = Vec::new();
                if *self.peek() != Tok::RBrace {
                    loop {
                        tuples.push(self.tuple(cs, base_size)?);
                        if *self.peek() != Tok::Comma {
                            break;
                        }
                        self.advance();
                    }
                }
                self.expect(Tok::RBrace, "`,` or `}`")?;
                Value::relation(tuples)
            }
        };
        self.leave();
        Ok(v)
    }

    fn tuple(&mut self, cs: &[SimpleType], base_size: u32) -> PResult<Vec<Value>> {
        if cs.len() == 1 {
            return Ok(vec![self.value(&cs[0], base_size)?]);
        }
        self.expect(Tok::LParen, "`(` opening a tuple")?;
        let mut out = Vec::with_capacity(cs.len());
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                self.expect(Tok::Comma, "`,`")?;
            }
            out.push(self.value(c, base_size)?);
        }
        self.expect(Tok::RParen, "`)` closing a tuple")?;
        Ok(out)
    }

    pub(crate) fn semi(&mut self) -> PResult<()> {
        self.expect(Tok::Semi, "`;`")
    }
}

fn is_set_sugar(name: &str) -> bool {
    matches!(name, "in" | "subset" | "inter-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(s: &str) -> PResult<SFormula> {
        let mut p = Parser::new(s)?;
        let f = p.formula()?;
        p.expect_eof()?;
        Ok(f)
    }

    #[test]
    fn unbalanced_quantifier_reports_the_paren() {
        let e = formula("forall x (").unwrap_err();
        assert_eq!((e.line, e.column), (1, 10));
        assert!(e.expected.contains("`:`"), "{}", e.expected);
    }

    #[test]
    fn implication_is_right_associative() {
        let f = formula("a = b -> b = c -> c = a").unwrap();
        let SFormula::Binary(Connective::Implies, _, rhs) = f else { panic!() };
        assert!(matches!(*rhs, SFormula::Binary(Connective::Implies, ..)));
    }

    #[test]
    fn quantifier_body_extends_right() {
        let f = formula("forall x:ind. x = x & x = x").unwrap();
        let SFormula::Quant(_, _, body) = f else { panic!() };
        assert!(matches!(*body, SFormula::Binary(Connective::And, ..)));
    }

    #[test]
    fn multi_binder_quantifiers_nest() {
        let f = formula("∀ x:ind, y:ind. R(x,y)").unwrap();
        let SFormula::Quant(Quantifier::Forall, b, body) = f else { panic!() };
        assert_eq!(b.name, "x");
        assert!(matches!(*body, SFormula::Quant(Quantifier::Forall, ..)));
    }

    #[test]
    fn membership_forms() {
        assert_eq!(
            formula("x ∉ ran(R)").unwrap(),
            SFormula::Not(Box::new(SFormula::In(STerm::Var("x".into()), SetExpr::Ran("R".into()))))
        );
        assert_eq!(
            formula("in(Nf(x), za)").unwrap(),
            SFormula::In(STerm::Call("Nf".into(), vec![STerm::Var("x".into())]), SetExpr::Name("za".into()))
        );
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let s = "~".repeat(10_000) + "true";
        assert!(formula(&s).is_err());
        let s = "(".repeat(10_000);
        assert!(formula(&s).is_err());
    }

    #[test]
    fn values() {
        let mut p = Parser::new("{({0},0),({0,1},1)}").unwrap();
        let ty = SimpleType::rel([SimpleType::set(SimpleType::Ind), SimpleType::Ind]);
        let v = p.value(&ty, 2).unwrap();
        assert_eq!(v.to_string(), "{({0},0),({0,1},1)}");
        let mut p = Parser::new("{(0,2)}").unwrap();
        assert!(p.value(&SimpleType::binary(), 2).is_err());
    }
}
