//! Bundled example systems.

pub const HAUSDORFF: &str = include_str!("../../../corpus/hausdorff.axs");
pub const PEANO: &str = include_str!("../../../corpus/pa.axs");
pub const BASIC_ARITHMETIC: &str = include_str!("../../../corpus/ba.axs");
pub const TOTAL_ORDER: &str = include_str!("../../../corpus/total_order.axs");
pub const EQUIVALENCE: &str = include_str!("../../../corpus/equiv.axs");
pub const REFLEXIVE: &str = include_str!("../../../corpus/reflexive.axs");
pub const FULL_RELATION: &str = include_str!("../../../corpus/full_relation.axs");

/// `(file stem, source)` for every bundled system.
pub fn all() -> [(&'static str, &'static str); 7] {
    [
        ("hausdorff", HAUSDORFF),
        ("pa", PEANO),
        ("ba", BASIC_ARITHMETIC),
        ("total_order", TOTAL_ORDER),
        ("equiv", EQUIVALENCE),
        ("reflexive", REFLEXIVE),
        ("full_relation", FULL_RELATION),
    ]
}

/// Looks a bundled system up by file stem.
pub fn source(stem: &str) -> Option<&'static str> {
    all().into_iter().find(|(s, _)| *s == stem).map(|(_, src)| src)
}
