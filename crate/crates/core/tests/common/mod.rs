#![allow(dead_code)]

use axcheck_core::{Connective, Formula, ModelAssignment, Quantifier, Signature, SimpleType, Term, Universe};
use proptest::prelude::*;

/// `R:rel(ind,ind)`, `A:set(ind)`, `b:ind`.
pub fn mixed_signature() -> Signature {
    Signature::new([("R", SimpleType::binary()), ("A", SimpleType::set(SimpleType::Ind)), ("b", SimpleType::Ind)])
}

pub fn binary_signature() -> Signature {
    Signature::new([("R", SimpleType::binary())])
}

fn atom(sig: &Signature, scope: &[String], literals: bool) -> BoxedStrategy<Formula> {
    let mut inds: Vec<Term> = scope.iter().map(Term::var).collect();
    inds.extend(sig.iter().filter(|(_, t)| t.is_ind()).map(|(n, _)| Term::var(n)));
    if literals {
        inds.push(Term::Lit(0));
    }
    let mut options: Vec<BoxedStrategy<Formula>> = vec![Just(Formula::True).boxed(), Just(Formula::False).boxed()];
    if inds.is_empty() {
        return proptest::strategy::Union::new(options).boxed();
    }
    let pick = proptest::sample::select(inds);
    for (name, ty) in sig.iter() {
        if let SimpleType::Rel(cs) = ty {
            if cs.iter().all(SimpleType::is_ind) {
                let name = name.to_string();
                options.push(
                    proptest::collection::vec(pick.clone(), cs.len())
                        .prop_map(move |args| Formula::app(name.clone(), args))
                        .boxed(),
                );
            }
        }
    }
    options.push((pick.clone(), pick).prop_map(|(x, y)| Formula::eq(x, y)).boxed());
    proptest::strategy::Union::new(options).boxed()
}

fn go(sig: Signature, scope: Vec<String>, depth: u32, literals: bool) -> BoxedStrategy<Formula> {
    if depth == 0 {
        return atom(&sig, &scope, literals);
    }
    let (s1, s2, sig1, sig2) = (scope.clone(), scope.clone(), sig.clone(), sig.clone());
    prop_oneof![
        1 => atom(&sig, &scope, literals),
        1 => go(sig.clone(), scope.clone(), depth - 1, literals).prop_map(Formula::not),
        2 => (0..4usize, go(sig1.clone(), s1.clone(), depth - 1, literals), go(sig1, s1, depth - 1, literals))
            .prop_map(|(c, a, b)| Formula::binary(CONNECTIVES[c], a, b)),
        2 => (0..3usize).prop_flat_map(move |q| {
            let name = format!("v{}", s2.len());
            let mut inner = s2.clone();
            inner.push(name.clone());
            go(sig2.clone(), inner, depth - 1, literals)
                .prop_map(move |body| Formula::quant(QUANTIFIERS[q], name.clone(), SimpleType::Ind, body))
        }),
    ]
    .boxed()
}

pub const CONNECTIVES: [Connective; 4] = [Connective::And, Connective::Or, Connective::Implies, Connective::Iff];
pub const QUANTIFIERS: [Quantifier; 3] = [Quantifier::Forall, Quantifier::Exists, Quantifier::ExistsUnique];

/// Well-typed formulas over `sig`, quantifying over individuals only.
pub fn arb_formula(sig: &Signature, depth: u32) -> BoxedStrategy<Formula> {
    go(sig.clone(), Vec::new(), depth, false)
}

/// As [`arb_formula`], allowing the literal `#0`.
pub fn arb_formula_with_literals(sig: &Signature, depth: u32) -> BoxedStrategy<Formula> {
    go(sig.clone(), Vec::new(), depth, true)
}

/// A uniformly chosen admissible model.
pub fn arb_model(universe: &Universe, sig: &Signature) -> BoxedStrategy<ModelAssignment> {
    let space = axcheck_core::admissible_models(universe, sig).unwrap();
    (0..space.count()).prop_map(move |i| space.get(i).unwrap()).boxed()
}
