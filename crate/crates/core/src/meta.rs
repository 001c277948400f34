//! Metatheoretic properties of axiom systems over a finite universe.
//!
//! Each check returns a [`Judgment`]: an absolute verdict obtained by
//! exhaustive enumeration, plus evidence that can be replayed (a model, a
//! pair of models, a formula, or an isomorphism-class predicate).
//!
//! Quantification over "all properties" of models is read two ways. The
//! extensional reading ranges over every isomorphism-closed class of
//! admissible models; the bounded reading ranges over pure formulas up to a
//! size bound. Both are reported where they differ in kind.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::enumerate::{hilbert_completeness, models_of, ModelSet};
use crate::error::{Error, Result};
use crate::eval::eval;
use crate::formula::{check_types, Formula};
use crate::iso::{are_isomorphic, is_formal_class, is_formal_semantic, iso_classes, Correlator, IsoClass, IsoMode};
use crate::parser::pretty_print;
use crate::synth::FormulaEnumerator;
use crate::system::{AxiomSystem, ModelAssignment, Signature};
use crate::universe::Universe;

/// Default size bound for formula synthesis.
pub const DEFAULT_SIZE_BOUND: usize = 9;

/// A model with its human-readable rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRef {
    pub values: ModelAssignment,
    pub text: String,
}

impl ModelRef {
    pub fn new(m: &ModelAssignment, signature: &Signature) -> Self {
        ModelRef { values: m.clone(), text: m.display_with(signature) }
    }
}

/// The class of models isomorphic to `representative`. Closed under
/// isomorphism by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClassPredicate {
    pub signature: Signature,
    pub representative: ModelAssignment,
    pub mode: IsoMode,
}

impl IsoClassPredicate {
    pub fn holds(&self, universe: &Universe, m: &ModelAssignment) -> Result<bool> {
        Ok(are_isomorphic(universe, &self.representative, m, self.mode)?.is_some())
    }

    /// Checks closure under isomorphism over all admissible models.
    pub fn is_formal(&self, universe: &Universe) -> Result<bool> {
        Ok(is_formal_class(universe, &self.signature, self.mode, |m| self.holds(universe, m))?.formal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub representative: ModelRef,
    pub size: usize,
}

/// The three conjuncts of forking a system at a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkCheck {
    pub formula: String,
    /// A model of the system satisfying the formula.
    pub satisfied_by: Option<ModelRef>,
    /// A model of the system falsifying it.
    pub falsified_by: Option<ModelRef>,
    pub formal: bool,
    /// Isomorphic admissible models the formula separates, if not formal.
    pub formality_counterexample: Option<(ModelRef, ModelRef, Correlator)>,
}

impl ForkCheck {
    pub fn forks(&self) -> bool {
        self.satisfied_by.is_some() && self.falsified_by.is_some() && self.formal
    }
}

/// Replay of the construction turning two non-isomorphic models into a
/// formal property separating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFork {
    pub predicate: IsoClassPredicate,
    pub satisfied_by: ModelRef,
    pub falsified_by: ModelRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Model { model: ModelRef },
    Pair { left: ModelRef, right: ModelRef, correlator: Option<Correlator> },
    Formula { formula: String },
    Partition { classes: Vec<ClassSummary> },
    ClassFork(ClassFork),
    Fork(ForkCheck),
    Undecided { formula: Option<String>, class: Option<IsoClassPredicate> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub property: String,
    pub absolute: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Evidence>,
    pub notes: Vec<String>,
}

impl Judgment {
    fn new(property: &str, absolute: bool, ctx: &Analysis<'_>) -> Self {
        Judgment {
            property: property.to_string(),
            absolute,
            witness: None,
            counterexample: None,
            notes: vec![format!(
                "over n={}, cap={}, mode={}",
                ctx.universe.base_size(),
                ctx.universe.quantifier_cap(),
                ctx.mode
            )],
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    fn witness(mut self, e: Evidence) -> Self {
        self.witness = Some(e);
        self
    }

    fn counterexample(mut self, e: Evidence) -> Self {
        self.counterexample = Some(e);
        self
    }
}

/// Outcome of checking that monomorphy and non-forkability coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GabelReport {
    pub satisfiable: bool,
    pub monomorphic: bool,
    pub forkable: bool,
    /// For satisfiable systems: monomorphic iff not forkable.
    pub biconditional: bool,
    /// For polymorphic systems: the separating class, re-verified.
    pub replay: Option<ClassFork>,
}

/// Shared state for analysing one system: models and isomorphism classes
/// are computed once.
pub struct Analysis<'a> {
    pub universe: &'a Universe,
    pub system: &'a AxiomSystem,
    pub mode: IsoMode,
    models: OnceLock<ModelSet>,
    classes: OnceLock<Vec<IsoClass>>,
}

impl<'a> Analysis<'a> {
    pub fn new(universe: &'a Universe, system: &'a AxiomSystem, mode: IsoMode) -> Self {
        Analysis { universe, system, mode, models: OnceLock::new(), classes: OnceLock::new() }
    }

    fn sig(&self) -> &Signature {
        self.system.signature()
    }

    fn model_ref(&self, m: &ModelAssignment) -> ModelRef {
        ModelRef::new(m, self.sig())
    }

    pub fn models(&self) -> Result<&ModelSet> {
        if let Some(m) = self.models.get() {
            return Ok(m);
        }
        let ms = models_of(self.universe, self.system)?;
        Ok(self.models.get_or_init(|| ms))
    }

    pub fn classes(&self) -> Result<&[IsoClass]> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let cs = iso_classes(self.universe, &self.models()?.models, self.mode)?;
        Ok(self.classes.get_or_init(|| cs))
    }

    pub fn satisfiable(&self) -> Result<Judgment> {
        let ms = self.models()?;
        let j = Judgment::new("satisfiable", !ms.is_empty(), self);
        Ok(match ms.models.first() {
            Some(m) => j.witness(Evidence::Model { model: self.model_ref(m) }).note("witness is the least model"),
            None => j.note(format!("none of the admissible models satisfies {}", self.system.name())),
        })
    }

    /// Every model of the system satisfies `g`.
    pub fn consequence(&self, g: &Formula) -> Result<Judgment> {
        self.check_formula(g)?;
        let ms = self.models()?;
        let mut counter = None;
        for m in ms.iter() {
            if !eval(self.universe, g, self.sig(), m)? {
                counter = Some(m);
                break;
            }
        }
        let j = Judgment::new("consequence", counter.is_none(), self).note(format!("g = {}", pretty_print(g)));
        Ok(match counter {
            Some(m) => j.counterexample(Evidence::Model { model: self.model_ref(m) }),
            None => j.note(format!("checked all {} models", ms.len())),
        })
    }

    /// Some property h has `f → (h ∧ ¬h)` true in every admissible model.
    pub fn carnap_inconsistent(&self) -> Result<Judgment> {
        let ms = self.models()?;
        let j = Judgment::new("carnap_inconsistent", ms.is_empty(), self)
            .note("over a finite universe this holds exactly when the system has no model");
        Ok(match ms.models.first() {
            None => j
                .witness(Evidence::Formula { formula: "true".into() })
                .note("with no models, f -> (h & ~h) holds vacuously for every h"),
            Some(m) => j
                .counterexample(Evidence::Model { model: self.model_ref(m) })
                .note("h & ~h fails in this model for every h"),
        })
    }

    /// Satisfiable, with every model isomorphic to every other. Checked
    /// pairwise against the least model.
    pub fn monomorphic(&self) -> Result<Judgment> {
        let ms = self.models()?;
        let Some(first) = ms.models.first() else {
            return Ok(Judgment::new("monomorphic", false, self).note("no models"));
        };
        let mut outlier = None;
        for m in &ms.models[1..] {
            if are_isomorphic(self.universe, first, m, self.mode)?.is_none() {
                outlier = Some(m);
                break;
            }
        }
        let j = Judgment::new("monomorphic", outlier.is_none(), self).witness(self.partition()?);
        Ok(match outlier {
            Some(m) => j.counterexample(Evidence::Pair {
                left: self.model_ref(first),
                right: self.model_ref(m),
                correlator: None,
            }),
            None => j,
        })
    }

    fn partition(&self) -> Result<Evidence> {
        Ok(Evidence::Partition {
            classes: self
                .classes()?
                .iter()
                .map(|c| ClassSummary { representative: self.model_ref(&c.representative), size: c.len() })
                .collect(),
        })
    }

    fn class_fork(&self) -> Result<Option<ClassFork>> {
        let cs = self.classes()?;
        if cs.len() < 2 {
            return Ok(None);
        }
        Ok(Some(ClassFork {
            predicate: IsoClassPredicate {
                signature: self.sig().clone(),
                representative: cs[0].representative.clone(),
                mode: self.mode,
            },
            satisfied_by: self.model_ref(&cs[0].representative),
            falsified_by: self.model_ref(&cs[1].representative),
        }))
    }

    /// Some isomorphism-closed class of models splits the models of the
    /// system.
    pub fn forkable_semantic(&self) -> Result<Judgment> {
        let cs = self.classes()?;
        let j = Judgment::new("forkable", cs.len() >= 2, self)
            .note(format!("{} isomorphism classes among the models", cs.len()));
        Ok(match self.class_fork()? {
            Some(fork) => j.witness(Evidence::ClassFork(fork)).note("h = isomorphic to the first class representative"),
            None => j,
        })
    }

    fn check_formula(&self, g: &Formula) -> Result<()> {
        for name in g.free_names() {
            if self.sig().type_of(&name).is_none() {
                return Err(Error::SignatureMismatch(format!(
                    "`{name}` is free in the formula but not a primitive sign of {}",
                    self.system.name()
                )));
            }
        }
        check_types(g, self.sig())?;
        Ok(())
    }

    /// The three conjuncts for forking at `g`.
    pub fn fork_check(&self, g: &Formula) -> Result<ForkCheck> {
        self.check_formula(g)?;
        let mut yes = None;
        let mut no = None;
        for m in self.models()?.iter() {
            let slot = if eval(self.universe, g, self.sig(), m)? { &mut yes } else { &mut no };
            if slot.is_none() {
                *slot = Some(self.model_ref(m));
            }
            if yes.is_some() && no.is_some() {
                break;
            }
        }
        let formality = is_formal_semantic(self.universe, g, self.sig(), self.mode)?;
        Ok(ForkCheck {
            formula: pretty_print(g),
            satisfied_by: yes,
            falsified_by: no,
            formal: formality.formal,
            formality_counterexample: formality
                .counterexample
                .map(|c| (self.model_ref(&c.holds), self.model_ref(&c.fails), c.correlator)),
        })
    }

    pub fn forkable_at(&self, g: &Formula) -> Result<Judgment> {
        let check = self.fork_check(g)?;
        let j = Judgment::new("forkable_at", check.forks(), self)
            .note(format!("some model satisfies g: {}", check.satisfied_by.is_some()))
            .note(format!("some model falsifies g: {}", check.falsified_by.is_some()))
            .note(format!("g is formal: {}", check.formal));
        Ok(if check.forks() { j.witness(Evidence::Fork(check)) } else { j.counterexample(Evidence::Fork(check)) })
    }

    /// The least pure formula of at most `bound` nodes that forks the
    /// system.
    pub fn synthesize_fork(&self, bound: usize) -> Result<Option<Formula>> {
        let ms = self.models()?;
        if ms.len() < 2 {
            return Ok(None);
        }
        let mut enumerator = FormulaEnumerator::canonical(self.sig());
        let mut failure = None;
        let found = enumerator.for_each(bound, |g| {
            match self
                .splits(&ms.models, &g)
                .and_then(|split| Ok(split && is_formal_semantic(self.universe, &g, self.sig(), self.mode)?.formal))
            {
                Ok(true) => ControlFlow::Break(g),
                Ok(false) => ControlFlow::Continue(()),
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(g)
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(found),
        }
    }

    fn splits(&self, models: &[ModelAssignment], g: &Formula) -> Result<bool> {
        let first = eval(self.universe, g, self.sig(), &models[0])?;
        for m in &models[1..] {
            if eval(self.universe, g, self.sig(), m)? != first {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Synthesis as a judgment; the witness formula is replayed through
    /// [`Analysis::fork_check`].
    pub fn forkable_syntactic(&self, bound: usize) -> Result<Judgment> {
        let found = self.synthesize_fork(bound)?;
        let j = Judgment::new("forkable_by_formula", found.is_some(), self)
            .note(format!("searched pure formulas of at most {bound} nodes"));
        Ok(match found {
            Some(g) => j.witness(Evidence::Fork(self.fork_check(&g)?)),
            None => j.note(format!("no forking formula of at most {bound} nodes")),
        })
    }

    /// Satisfiable, and every formal property or its negation follows from
    /// the system. The verdict uses the extensional reading; the bounded
    /// formula reading is reported alongside.
    pub fn decidable(&self, bound: usize) -> Result<Judgment> {
        let sat = !self.models()?.is_empty();
        let fork = self.class_fork()?;
        let verdict = sat && fork.is_none();
        let formula = if sat { self.synthesize_fork(bound)? } else { None };
        let bounded = sat && formula.is_none();
        let mut j = Judgment::new("decidable", verdict, self)
            .note("extensional reading: every isomorphism-closed class is settled; equivalent to monomorphic here")
            .note(format!("bounded reading (pure formulas of at most {bound} nodes): {bounded}"))
            .note("k-decidable: finite-universe-trivial (consequence is decided by enumeration)");
        if !sat {
            j = j.note("no models");
        }
        if fork.is_some() || formula.is_some() {
            j = j.counterexample(Evidence::Undecided {
                formula: formula.as_ref().map(pretty_print),
                class: fork.map(|f| f.predicate),
            });
        }
        Ok(j)
    }

    pub fn hilbert_complete(&self) -> Result<Judgment> {
        let h = hilbert_completeness(self.models()?)?;
        let j = Judgment::new("hilbert_complete", h.complete, self)
            .note("submodel order: relation components by inclusion, individual components by equality");
        Ok(match h.witness {
            Some((p, q)) => j.counterexample(Evidence::Pair {
                left: self.model_ref(&p),
                right: self.model_ref(&q),
                correlator: None,
            }),
            None => j,
        })
    }

    /// Checks that monomorphy and non-forkability agree and replays the
    /// class construction on polymorphic systems.
    pub fn gabel(&self) -> Result<GabelReport> {
        let satisfiable = !self.models()?.is_empty();
        let monomorphic = self.monomorphic()?.absolute;
        let forkable = self.forkable_semantic()?.absolute;
        let biconditional = monomorphic != forkable;
        if satisfiable && !biconditional {
            return Err(Error::InvariantViolation(format!(
                "{}: monomorphic={monomorphic} but forkable={forkable}",
                self.system.name()
            )));
        }
        let replay = self.class_fork()?;
        if let Some(fork) = &replay {
            let h = &fork.predicate;
            let ok = h.is_formal(self.universe)?
                && h.holds(self.universe, &fork.satisfied_by.values)?
                && !h.holds(self.universe, &fork.falsified_by.values)?;
            if !ok {
                return Err(Error::InvariantViolation(format!(
                    "{}: class construction failed to replay",
                    self.system.name()
                )));
            }
        }
        Ok(GabelReport { satisfiable, monomorphic, forkable, biconditional, replay })
    }
}

pub fn is_satisfiable(universe: &Universe, system: &AxiomSystem) -> Result<Judgment> {
    Analysis::new(universe, system, IsoMode::default()).satisfiable()
}

pub fn is_consequence(universe: &Universe, system: &AxiomSystem, g: &Formula) -> Result<Judgment> {
    Analysis::new(universe, system, IsoMode::default()).consequence(g)
}

pub fn is_carnap_inconsistent(universe: &Universe, system: &AxiomSystem) -> Result<Judgment> {
    Analysis::new(universe, system, IsoMode::default()).carnap_inconsistent()
}

pub fn is_monomorphic(universe: &Universe, system: &AxiomSystem, mode: IsoMode) -> Result<Judgment> {
    Analysis::new(universe, system, mode).monomorphic()
}

pub fn is_forkable_at(universe: &Universe, system: &AxiomSystem, g: &Formula, mode: IsoMode) -> Result<Judgment> {
    Analysis::new(universe, system, mode).forkable_at(g)
}

pub fn is_forkable_semantic(universe: &Universe, system: &AxiomSystem, mode: IsoMode) -> Result<Judgment> {
    Analysis::new(universe, system, mode).forkable_semantic()
}

pub fn synthesize_forking_formula(
    universe: &Universe,
    system: &AxiomSystem,
    mode: IsoMode,
    size_bound: usize,
) -> Result<Option<Formula>> {
    Analysis::new(universe, system, mode).synthesize_fork(size_bound)
}

pub fn is_decidable(universe: &Universe, system: &AxiomSystem, mode: IsoMode, size_bound: usize) -> Result<Judgment> {
    Analysis::new(universe, system, mode).decidable(size_bound)
}

pub fn is_hilbert_complete(universe: &Universe, system: &AxiomSystem) -> Result<Judgment> {
    Analysis::new(universe, system, IsoMode::default()).hilbert_complete()
}

pub fn gabel_check(universe: &Universe, system: &AxiomSystem, mode: IsoMode) -> Result<GabelReport> {
    Analysis::new(universe, system, mode).gabel()
}
