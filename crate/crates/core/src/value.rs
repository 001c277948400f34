//! Extensional values of simple types.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::types::SimpleType;

/// A finite relation given by its graph.
///
/// The tuple list is kept sorted (by [`Value`]'s canonical order) and
/// duplicate-free, so derived equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Relation {
    tuples: Vec<Vec<Value>>,
}

impl Relation {
    pub fn empty() -> Self {
        Relation::default()
    }

    pub fn new(tuples: impl IntoIterator<Item = Vec<Value>>) -> Self {
        let mut tuples: Vec<_> = tuples.into_iter().collect();
        tuples.sort_by(|a, b| cmp_tuples(a, b));
        tuples.dedup();
        Relation { tuples }
    }

    /// Builds a relation from tuples already in canonical order without duplicates.
    pub(crate) fn from_sorted(tuples: Vec<Vec<Value>>) -> Self {
        debug_assert!(tuples.windows(2).all(|w| cmp_tuples(&w[0], &w[1]) == Ordering::Less));
        Relation { tuples }
    }

    pub fn tuples(&self) -> &[Vec<Value>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[Value]) -> bool {
        self.tuples.binary_search_by(|t| cmp_tuples(t, tuple)).is_ok()
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.len() <= other.len() && self.tuples.iter().all(|t| other.contains(t))
    }
}

fn cmp_tuples(a: &[Value], b: &[Value]) -> Ordering {
    // Tuples of one relation share a type, so lexicographic order is enough.
    a.iter().cmp(b.iter())
}

/// A value in the universe of types: an individual index or a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Ind(u32),
    Rel(Relation),
}

impl Value {
    pub fn ind(i: u32) -> Self {
        Value::Ind(i)
    }

    pub fn relation(tuples: impl IntoIterator<Item = Vec<Value>>) -> Self {
        Value::Rel(Relation::new(tuples))
    }

    /// A set of individuals.
    pub fn ind_set(elements: impl IntoIterator<Item = u32>) -> Self {
        Value::relation(elements.into_iter().map(|i| vec![Value::Ind(i)]))
    }

    /// A binary relation on individuals.
    pub fn pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        Value::relation(pairs.into_iter().map(|(a, b)| vec![Value::Ind(a), Value::Ind(b)]))
    }

    pub fn as_ind(&self) -> Option<u32> {
        match self {
            Value::Ind(i) => Some(*i),
            Value::Rel(_) => None,
        }
    }

    pub fn as_rel(&self) -> Option<&Relation> {
        match self {
            Value::Ind(_) => None,
            Value::Rel(r) => Some(r),
        }
    }

    /// Checks that `self` inhabits `ty` over a base domain of `base_size` individuals.
    pub fn has_type(&self, ty: &SimpleType, base_size: u32) -> bool {
        match (self, ty) {
            (Value::Ind(i), SimpleType::Ind) => *i < base_size,
            (Value::Rel(r), SimpleType::Rel(cs)) => {
                r.tuples.iter().all(|t| t.len() == cs.len() && t.iter().zip(cs).all(|(v, c)| v.has_type(c, base_size)))
            }
            _ => false,
        }
    }

    /// The individuals occurring anywhere inside the value.
    pub fn support(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_support(&mut out);
        out
    }

    pub(crate) fn collect_support(&self, out: &mut BTreeSet<u32>) {
        match self {
            Value::Ind(i) => {
                out.insert(*i);
            }
            Value::Rel(r) => {
                for t in &r.tuples {
                    for v in t {
                        v.collect_support(out);
                    }
                }
            }
        }
    }
}

impl Ord for Value {
    /// Individuals by index; relations by size, then lexicographically on
    /// their sorted tuple lists.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Ind(a), Value::Ind(b)) => a.cmp(b),
            (Value::Ind(_), Value::Rel(_)) => Ordering::Less,
            (Value::Rel(_), Value::Ind(_)) => Ordering::Greater,
            (Value::Rel(a), Value::Rel(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.tuples.iter().map(Vec::as_slice).cmp(b.tuples.iter().map(Vec::as_slice))),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Ind(i) => write!(f, "{i}"),
            Value::Rel(r) => {
                f.write_str("{")?;
                for (i, t) in r.tuples.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    if t.len() == 1 {
                        write!(f, "{}", t[0])?;
                    } else {
                        f.write_str("(")?;
                        for (j, v) in t.iter().enumerate() {
                            if j > 0 {
                                f.write_str(",")?;
                            }
                            write!(f, "{v}")?;
                        }
                        f.write_str(")")?;
                    }
                }
                f.write_str("}")
            }
        }
    }
}

// JSON form: individuals are numbers, relations are arrays of tuples (arrays).
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Ind(i) => serializer.serialize_u32(*i),
            Value::Rel(r) => r.tuples.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Ind(u32),
            Rel(Vec<Vec<Value>>),
        }
        Ok(match Raw::deserialize(deserializer)? {
            Raw::Ind(i) => Value::Ind(i),
            Raw::Rel(ts) => Value::relation(ts),
        })
    }
}
