//! ASCII pretty printer. Output parses back to the same core formula.

use std::fmt::Write;

use crate::formula::{Connective, Formula, Quantifier, Term};

pub fn pretty_print(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, 0, true);
    out
}

fn precedence(c: Connective) -> u8 {
    match c {
        Connective::Iff => 1,
        Connective::Implies => 2,
        Connective::Or => 3,
        Connective::And => 4,
    }
}

fn symbol(c: Connective) -> &'static str {
    match c {
        Connective::Iff => " <-> ",
        Connective::Implies => " -> ",
        Connective::Or => " | ",
        Connective::And => " & ",
    }
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Lit(k) => {
            let _ = write!(out, "#{k}");
        }
    }
}

/// `min_prec`: binding strength the context demands.
/// `rightmost`: nothing follows this subformula before the enclosing
/// parenthesis, so a quantifier body may extend to the end.
fn write_formula(out: &mut String, f: &Formula, min_prec: u8, rightmost: bool) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::App { head, args } => {
            out.push_str(head);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(out, a);
            }
            out.push(')');
        }
        Formula::Eq(a, b) => {
            write_term(out, a);
            out.push_str(" = ");
            write_term(out, b);
        }
        Formula::Not(g) => match g.as_ref() {
            Formula::Eq(a, b) => {
                write_term(out, a);
                out.push_str(" != ");
                write_term(out, b);
            }
            _ => {
                out.push('~');
                write_formula(out, g, 5, rightmost);
            }
        },
        Formula::Binary(c, a, b) => {
            let p = precedence(*c);
            let parens = p < min_prec;
            if parens {
                out.push('(');
            }
            let (lp, rp) = match c {
                Connective::Implies => (p + 1, p),
                _ => (p, p + 1),
            };
            write_formula(out, a, lp, false);
            out.push_str(symbol(*c));
            write_formula(out, b, rp, rightmost || parens);
            if parens {
                out.push(')');
            }
        }
        Formula::Quant(q, binder, body) => {
            let parens = !rightmost;
            if parens {
                out.push('(');
            }
            out.push_str(match q {
                Quantifier::Forall => "forall ",
                Quantifier::Exists => "exists ",
                Quantifier::ExistsUnique => "exists! ",
            });
            let _ = write!(out, "{}:{}. ", binder.name, binder.ty);
            write_formula(out, body, 0, true);
            if parens {
                out.push(')');
            }
        }
    }
}
