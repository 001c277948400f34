//! Bottom-up enumeration of pure formulas by size.
//!
//! Formulas are built over the primitive signs of a signature plus bound
//! variables, which are named by nesting depth (`x0`, `x1`, ...), so
//! α-variants are never produced twice. Quantifiers range over the
//! component types of the signature. Within one size the order is: atoms,
//! equalities, negations, quantifiers (∀, ∃, ∃! per type), then binary
//! connectives (∧, ∨, →, ↔) by size of the left operand.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::formula::{Connective, Formula, Quantifier, Term};
use crate::system::Signature;
use crate::types::SimpleType;

const CONNECTIVES: [Connective; 4] = [Connective::And, Connective::Or, Connective::Implies, Connective::Iff];
const QUANTIFIERS: [Quantifier; 3] = [Quantifier::Forall, Quantifier::Exists, Quantifier::ExistsUnique];

pub struct FormulaEnumerator {
    signature: Signature,
    quantifier_types: Vec<SimpleType>,
    canonical: bool,
    memo: HashMap<(Vec<SimpleType>, usize), Arc<Vec<Formula>>>,
    prefixes: HashMap<SimpleType, String>,
}

impl FormulaEnumerator {
    /// Skips operand orders of commutative connectives and equalities that
    /// only restate an earlier formula.
    pub fn canonical(signature: &Signature) -> Self {
        Self::build(signature, true)
    }

    /// Every formula, including commutative duplicates.
    pub fn exhaustive(signature: &Signature) -> Self {
        Self::build(signature, false)
    }

    fn build(signature: &Signature, canonical: bool) -> Self {
        let mut quantifier_types = Vec::new();
        for t in signature.types() {
            for c in t.component_types() {
                if !quantifier_types.contains(&c) {
                    quantifier_types.push(c);
                }
            }
        }
        let mut prefixes = HashMap::new();
        for t in &quantifier_types {
            let mut p = match t {
                SimpleType::Ind => "x".to_string(),
                SimpleType::Rel(cs) if cs.len() == 1 => "a".to_string(),
                SimpleType::Rel(_) => "r".to_string(),
            };
            while signature
                .names()
                .any(|n| n.strip_prefix(p.as_str()).is_some_and(|rest| rest.chars().all(|c| c.is_ascii_digit())))
            {
                p.push('_');
            }
            prefixes.insert(t.clone(), p);
        }
        FormulaEnumerator { signature: signature.clone(), quantifier_types, canonical, memo: HashMap::new(), prefixes }
    }

    pub fn quantifier_types(&self) -> &[SimpleType] {
        &self.quantifier_types
    }

    fn bound_name(&self, ty: &SimpleType, depth: usize) -> String {
        format!("{}{depth}", self.prefixes[ty])
    }

    /// Terms usable in `scope`, with their types, signature first.
    fn terms(&self, scope: &[SimpleType]) -> Vec<(Term, SimpleType)> {
        let mut out: Vec<_> = self.signature.iter().map(|(n, t)| (Term::var(n), t.clone())).collect();
        out.extend(scope.iter().enumerate().map(|(d, t)| (Term::var(self.bound_name(t, d)), t.clone())));
        out
    }

    /// All formulas of exactly `size` nodes over bound variables `scope`.
    pub fn formulas(&mut self, scope: &[SimpleType], size: usize) -> Arc<Vec<Formula>> {
        let key = (scope.to_vec(), size);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        let _ = self.generate::<()>(scope, size, &mut |f| {
            out.push(f);
            ControlFlow::Continue(())
        });
        let out = Arc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// Calls `visit` on every closed-over-the-signature formula of size
    /// `1..=max_size` in enumeration order, stopping early on `Break`.
    pub fn for_each<B>(&mut self, max_size: usize, mut visit: impl FnMut(Formula) -> ControlFlow<B>) -> Option<B> {
        for size in 1..=max_size {
            if let ControlFlow::Break(b) = self.generate(&[], size, &mut visit) {
                return Some(b);
            }
        }
        None
    }

    /// Every formula up to `max_size`, in enumeration order.
    pub fn all_up_to(&mut self, max_size: usize) -> Vec<Formula> {
        let mut out = Vec::new();
        let _ = self.for_each::<()>(max_size, |f| {
            out.push(f);
            ControlFlow::Continue(())
        });
        out
    }

    fn generate<B>(
        &mut self,
        scope: &[SimpleType],
        size: usize,
        emit: &mut impl FnMut(Formula) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if size < 2 {
            return ControlFlow::Continue(());
        }
        let terms = self.terms(scope);

        // relation applications: 2 + arity nodes
        for (head, ty) in &terms {
            let SimpleType::Rel(components) = ty else { continue };
            if components.len() + 2 != size {
                continue;
            }
            let choices: Vec<Vec<&Term>> = components
                .iter()
                .map(|c| terms.iter().filter(|(_, t)| t == c).map(|(term, _)| term).collect())
                .collect();
            if choices.iter().any(Vec::is_empty) {
                continue;
            }
            let Term::Var(h) = head else { unreachable!() };
            let mut idx = vec![0usize; choices.len()];
            'tuples: loop {
                emit(Formula::app(h.clone(), idx.iter().zip(&choices).map(|(&i, c)| c[i].clone())))?;
                // odometer, last argument fastest
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        continue 'tuples;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }

        if size == 3 {
            for (i, (a, ta)) in terms.iter().enumerate() {
                for (j, (b, tb)) in terms.iter().enumerate() {
                    if ta != tb || (self.canonical && i >= j) {
                        continue;
                    }
                    emit(Formula::eq(a.clone(), b.clone()))?;
                }
            }
        }

        for f in self.formulas(scope, size - 1).iter() {
            emit(Formula::not(f.clone()))?;
        }

        for ty in self.quantifier_types.clone() {
            let mut inner = scope.to_vec();
            inner.push(ty.clone());
            let name = self.bound_name(&ty, scope.len());
            let bodies = self.formulas(&inner, size - 1);
            for q in QUANTIFIERS {
                for body in bodies.iter() {
                    emit(Formula::quant(q, name.clone(), ty.clone(), body.clone()))?;
                }
            }
        }

        for c in CONNECTIVES {
            for left in 1..size.saturating_sub(1) {
                let right = size - 1 - left;
                if self.canonical && c.is_commutative() && left > right {
                    continue;
                }
                let ls = self.formulas(scope, left);
                let rs = self.formulas(scope, right);
                for (i, a) in ls.iter().enumerate() {
                    for (j, b) in rs.iter().enumerate() {
                        if self.canonical && c.is_commutative() && left == right && i > j {
                            continue;
                        }
                        emit(Formula::binary(c, a.clone(), b.clone()))?;
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }
}
