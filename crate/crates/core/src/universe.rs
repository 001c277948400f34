//! The fixed finite universe of types.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::types::SimpleType;
use crate::value::{Relation, Value};

/// Default bound on the tuple space a quantified type may have (so at most
/// 2^16 values per relation type).
pub const DEFAULT_QUANTIFIER_CAP: u64 = 16;

/// A base domain of `n` individuals together with every type domain built
/// over it. Domains are materialized lazily and memoized; the observable
/// state never changes after construction.
pub struct Universe {
    base_size: u32,
    quantifier_cap: u64,
    domains: RwLock<HashMap<SimpleType, Arc<[Value]>>>,
}

impl Universe {
    pub fn new(base_size: u32) -> Self {
        Universe::with_cap(base_size, DEFAULT_QUANTIFIER_CAP)
    }

    pub fn with_cap(base_size: u32, quantifier_cap: u64) -> Self {
        Universe { base_size, quantifier_cap, domains: RwLock::new(HashMap::new()) }
    }

    pub fn base_size(&self) -> u32 {
        self.base_size
    }

    pub fn quantifier_cap(&self) -> u64 {
        self.quantifier_cap
    }

    /// Tuple space of `ty`: `n` for individuals, the product of component
    /// domain sizes for relations. Checks the cap for every nested type.
    pub fn tuple_space(&self, ty: &SimpleType) -> Result<u64> {
        let space = match ty {
            SimpleType::Ind => u64::from(self.base_size),
            SimpleType::Rel(cs) => {
                let mut space: u64 = 1;
                for c in cs {
                    space = space.saturating_mul(self.domain_size(c)?);
                }
                space
            }
        };
        if space > self.quantifier_cap {
            return Err(Error::CapExceeded { ty: ty.clone(), required: space, cap: self.quantifier_cap });
        }
        Ok(space)
    }

    /// `|D_ty|` without materializing the domain.
    pub fn domain_size(&self, ty: &SimpleType) -> Result<u64> {
        let space = self.tuple_space(ty)?;
        Ok(match ty {
            SimpleType::Ind => space,
            SimpleType::Rel(_) => u32::try_from(space).ok().and_then(|s| 1u64.checked_shl(s)).unwrap_or(u64::MAX),
        })
    }

    /// All values of `ty`, each once, in canonical order.
    pub fn type_domain(&self, ty: &SimpleType) -> Result<Arc<[Value]>> {
        if let Some(d) = self.domains.read().expect("domain cache poisoned").get(ty) {
            return Ok(Arc::clone(d));
        }
        let domain: Arc<[Value]> = self.build_domain(ty)?.into();
        let mut cache = self.domains.write().expect("domain cache poisoned");
        Ok(Arc::clone(cache.entry(ty.clone()).or_insert(domain)))
    }

    fn build_domain(&self, ty: &SimpleType) -> Result<Vec<Value>> {
        let space = self.tuple_space(ty)?;
        let components = match ty {
            SimpleType::Ind => return Ok((0..self.base_size).map(Value::Ind).collect()),
            SimpleType::Rel(cs) => cs,
        };
        let component_domains = components.iter().map(|c| self.type_domain(c)).collect::<Result<Vec<_>>>()?;
        // Cartesian product in lexicographic order, which is canonical tuple order.
        let mut tuples: Vec<Vec<Value>> = vec![Vec::new()];
        for d in &component_domains {
            tuples = tuples
                .into_iter()
                .flat_map(|prefix| {
                    d.iter().map(move |v| {
                        let mut t = prefix.clone();
                        t.push(v.clone());
                        t
                    })
                })
                .collect();
        }
        debug_assert_eq!(tuples.len() as u64, space);
        let mut values: Vec<Value> = (0u64..1 << space)
            .map(|mask| {
                let chosen =
                    tuples.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect();
                Value::Rel(Relation::from_sorted(chosen))
            })
            .collect();
        values.sort();
        Ok(values)
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("base_size", &self.base_size)
            .field("quantifier_cap", &self.quantifier_cap)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn individuals() {
        let u = Universe::new(3);
        let d = u.type_domain(&SimpleType::Ind).unwrap();
        assert_eq!(&*d, &[Value::Ind(0), Value::Ind(1), Value::Ind(2)]);
    }

    #[test]
    fn powerset_of_two() {
        let u = Universe::new(2);
        let d = u.type_domain(&SimpleType::set(SimpleType::Ind)).unwrap();
        assert_eq!(&*d, &[Value::ind_set([]), Value::ind_set([0]), Value::ind_set([1]), Value::ind_set([0, 1])]);
    }

    #[test]
    fn binary_relations_of_two() {
        let u = Universe::new(2);
        assert_eq!(u.type_domain(&SimpleType::binary()).unwrap().len(), 16);
        assert_eq!(u.domain_size(&SimpleType::binary()).unwrap(), 16);
    }

    #[test]
    fn cap_exceeded() {
        let u = Universe::new(3);
        let t = SimpleType::rel([SimpleType::set(SimpleType::Ind), SimpleType::Ind]);
        // tuple space 8 * 3 = 24 > 16
        assert_eq!(u.type_domain(&t).unwrap_err(), Error::CapExceeded { ty: t, required: 24, cap: 16 });
    }

    #[test]
    fn neighborhood_type_at_two() {
        let u = Universe::new(2);
        let t = SimpleType::rel([SimpleType::set(SimpleType::Ind), SimpleType::Ind]);
        assert_eq!(u.type_domain(&t).unwrap().len(), 256);
    }
}
