//! Simple (non-cumulative) types.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A simple type: individuals, or relations among component types.
///
/// Sets are unary relations, `set(t)` is just `rel(t)`. Types are not
/// cumulative: a relation value never inhabits `ind` or a differently
/// shaped relation type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleType {
    Ind,
    Rel(Vec<SimpleType>),
}

impl SimpleType {
    pub fn rel(components: impl IntoIterator<Item = SimpleType>) -> Self {
        let components: Vec<_> = components.into_iter().collect();
        assert!(!components.is_empty(), "relation types need at least one component");
        SimpleType::Rel(components)
    }

    pub fn set(element: SimpleType) -> Self {
        SimpleType::Rel(vec![element])
    }

    /// `rel(ind, ind)`, the type of a binary relation on individuals.
    pub fn binary() -> Self {
        SimpleType::rel([SimpleType::Ind, SimpleType::Ind])
    }

    /// 0 for individuals, one more than the highest component otherwise.
    pub fn level(&self) -> usize {
        match self {
            SimpleType::Ind => 0,
            SimpleType::Rel(cs) => 1 + cs.iter().map(SimpleType::level).max().unwrap_or(0),
        }
    }

    pub fn is_ind(&self) -> bool {
        matches!(self, SimpleType::Ind)
    }

    pub fn components(&self) -> Option<&[SimpleType]> {
        match self {
            SimpleType::Ind => None,
            SimpleType::Rel(cs) => Some(cs),
        }
    }

    pub fn arity(&self) -> usize {
        self.components().map_or(0, <[_]>::len)
    }

    /// Every type occurring as a component anywhere inside `self`, `self` excluded,
    /// in first-occurrence order.
    pub fn component_types(&self) -> Vec<SimpleType> {
        let mut out = Vec::new();
        fn walk(t: &SimpleType, out: &mut Vec<SimpleType>) {
            if let SimpleType::Rel(cs) = t {
                for c in cs {
                    if !out.contains(c) {
                        out.push(c.clone());
                    }
                    walk(c, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Ind => f.write_str("ind"),
            SimpleType::Rel(cs) => {
                f.write_str("rel(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}
