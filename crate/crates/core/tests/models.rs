//! Enumeration, submodels, isomorphism, and metatheory invariants.

mod common;

use axcheck_core::enumerate::{is_proper_submodel, minimal_models};
use axcheck_core::meta::Analysis;
use axcheck_core::*;
use common::*;
use proptest::prelude::*;

fn small_signature() -> Signature {
    Signature::new([("A", SimpleType::set(SimpleType::Ind)), ("R", SimpleType::binary())])
}

fn system_from(name: &str, sig: &Signature, axioms: Vec<Formula>) -> AxiomSystem {
    let axioms = axioms.into_iter().enumerate().map(|(i, f)| Axiom::new(format!("a{i}"), f)).collect();
    AxiomSystem::new(name, sig.clone(), axioms).unwrap()
}

#[test]
fn submodel_order_is_partial() {
    let u = Universe::new(2);
    let all: Vec<_> = admissible_models(&u, &small_signature()).unwrap().iter().collect();
    for p in &all {
        assert!(is_submodel(p, p).unwrap());
        for q in &all {
            if is_submodel(p, q).unwrap() && is_submodel(q, p).unwrap() {
                assert_eq!(p, q);
            }
        }
    }
    for p in all.iter().step_by(3) {
        for q in &all {
            if !is_submodel(p, q).unwrap() {
                continue;
            }
            for r in all.iter().step_by(2) {
                if is_submodel(q, r).unwrap() {
                    assert!(is_submodel(p, r).unwrap());
                }
            }
        }
    }
}

#[test]
fn maximality_matches_double_loop() {
    let u = Universe::new(2);
    for (stem, src) in corpus::all() {
        let f = parse_axiom_system(src).unwrap();
        let ms = models_of(&u, &f).unwrap();
        let mut all_max = true;
        for p in ms.iter() {
            let direct = !ms.iter().any(|q| is_proper_submodel(p, q).unwrap());
            assert_eq!(is_maximal(&u, &f, p).unwrap(), direct, "{stem}");
            let below = ms.iter().any(|q| is_proper_submodel(q, p).unwrap());
            assert_eq!(is_minimal(&u, &f, p).unwrap(), !below, "{stem}");
            all_max &= direct;
        }
        assert_eq!(is_hilbert_complete(&u, &f).unwrap().complete, all_max, "{stem}");
        assert!(minimal_models(&ms).unwrap().len() <= ms.len());
    }
}

#[test]
fn models_agree_with_pointwise_satisfaction() {
    for n in 1..=2 {
        let u = Universe::new(n);
        for (_, src) in corpus::all() {
            let f = parse_axiom_system(src).unwrap();
            let ms = models_of(&u, &f).unwrap();
            let expected: Vec<_> = admissible_models(&u, f.signature())
                .unwrap()
                .iter()
                .filter(|m| satisfies(&u, &f, m).unwrap())
                .collect();
            assert_eq!(ms.models, expected);
            assert!(ms.models.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn lifting_preserves_shape() {
    let u = Universe::new(3);
    let ty = SimpleType::rel([SimpleType::set(SimpleType::Ind), SimpleType::Ind]);
    let c = Correlator::from_pairs(IsoMode::Tarski, [(0, 2), (1, 0), (2, 1)]).unwrap();
    let u2 = Universe::new(2);
    for v in u2.type_domain(&ty).unwrap().iter() {
        let w = c.lift(v).unwrap();
        assert!(w.has_type(&ty, 3));
        assert_eq!(v.as_rel().unwrap().len(), w.as_rel().unwrap().len());
        assert_eq!(v.support().len(), w.support().len());
        let sizes = |x: &Value| {
            let mut s: Vec<_> = x.as_rel().unwrap().tuples().iter().map(|t| t[0].as_rel().unwrap().len()).collect();
            s.sort();
            s
        };
        assert_eq!(sizes(v), sizes(&w));
        assert_eq!(c.inverse().lift(&w).unwrap(), *v);
    }
    let _ = u;
}

#[test]
fn tarski_isomorphism_implies_carnap() {
    let u = Universe::new(3);
    let all: Vec<_> = admissible_models(&u, &binary_signature()).unwrap().iter().step_by(7).collect();
    for p in &all {
        for q in &all {
            let t = are_isomorphic(&u, p, q, IsoMode::Tarski).unwrap();
            let c = are_isomorphic(&u, p, q, IsoMode::Carnap).unwrap();
            if t.is_some() {
                assert!(c.is_some());
            }
            // at a fixed base size equal supports have equal complements
            assert_eq!(t.is_some(), c.is_some());
        }
    }
}

#[test]
fn gabel_on_corpus() {
    for n in 1..=2 {
        let u = Universe::new(n);
        for (stem, src) in corpus::all() {
            let f = parse_axiom_system(src).unwrap();
            for mode in [IsoMode::Tarski, IsoMode::Carnap] {
                let a = Analysis::new(&u, &f, mode);
                let sat = a.satisfiable().unwrap().absolute;
                let mono = a.monomorphic().unwrap().absolute;
                let fork = a.forkable_semantic().unwrap().absolute;
                assert_eq!(mono, sat && !fork, "{stem} n={n}");
                assert_eq!(a.carnap_inconsistent().unwrap().absolute, !sat);
                gabel_check(&u, &f, mode).unwrap();
            }
        }
    }
}

#[test]
fn monomorphic_systems_have_no_forking_formula() {
    let u3 = Universe::new(3);
    let orders = parse_axiom_system(corpus::TOTAL_ORDER).unwrap();
    assert!(is_monomorphic(&u3, &orders, IsoMode::Tarski).unwrap().absolute);
    for bound in [5, 9] {
        assert!(synthesize_forking_formula(&u3, &orders, IsoMode::Tarski, bound).unwrap().is_none());
    }
}

fn replay(a: &Analysis<'_>, j: &Judgment) {
    use axcheck_core::meta::Evidence;
    let sig = a.system.signature();
    let u = a.universe;
    for ev in j.witness.iter().chain(j.counterexample.iter()) {
        match ev {
            Evidence::Model { model } => {
                model.values.check_admissible(sig, u).unwrap();
                let sat = satisfies(u, a.system, &model.values).unwrap();
                match j.property.as_str() {
                    "satisfiable" => assert!(sat && j.absolute),
                    "carnap_inconsistent" => assert!(sat && !j.absolute),
                    "consequence" => assert!(sat && !j.absolute),
                    other => panic!("unexpected model evidence for {other}"),
                }
            }
            Evidence::Pair { left, right, .. } => {
                assert!(satisfies(u, a.system, &left.values).unwrap());
                assert!(satisfies(u, a.system, &right.values).unwrap());
                match j.property.as_str() {
                    "monomorphic" => {
                        assert!(are_isomorphic(u, &left.values, &right.values, a.mode).unwrap().is_none())
                    }
                    "hilbert_complete" => assert!(is_proper_submodel(&left.values, &right.values).unwrap()),
                    other => panic!("unexpected pair evidence for {other}"),
                }
            }
            Evidence::ClassFork(fork) => {
                assert!(fork.predicate.holds(u, &fork.satisfied_by.values).unwrap());
                assert!(!fork.predicate.holds(u, &fork.falsified_by.values).unwrap());
                assert!(fork.predicate.is_formal(u).unwrap());
            }
            Evidence::Fork(check) => {
                let g = a.system.signature();
                let f = parse_formula(&check.formula, g).unwrap();
                assert_eq!(&a.fork_check(&f).unwrap(), check);
            }
            Evidence::Partition { classes } => {
                let total: usize = classes.iter().map(|c| c.size).sum();
                assert_eq!(total, a.models().unwrap().len());
            }
            Evidence::Undecided { formula, class } => {
                if let Some(text) = formula {
                    let g = parse_formula(text, sig).unwrap();
                    assert!(!a.consequence(&g).unwrap().absolute);
                    assert!(!a.consequence(&Formula::not(g)).unwrap().absolute);
                }
                if let Some(h) = class {
                    let ms = a.models().unwrap();
                    let inside = ms.iter().filter(|m| h.holds(u, m).unwrap()).count();
                    assert!(inside > 0 && inside < ms.len());
                }
            }
            Evidence::Formula { formula } => assert_eq!(formula, "true"),
        }
    }
}

#[test]
fn evidence_replays() {
    for n in 1..=2 {
        let u = Universe::new(n);
        for (_, src) in corpus::all() {
            let f = parse_axiom_system(src).unwrap();
            let a = Analysis::new(&u, &f, IsoMode::Tarski);
            let js = [
                a.satisfiable().unwrap(),
                a.carnap_inconsistent().unwrap(),
                a.monomorphic().unwrap(),
                a.forkable_semantic().unwrap(),
                a.forkable_syntactic(7).unwrap(),
                a.decidable(7).unwrap(),
                a.hilbert_complete().unwrap(),
                a.consequence(&f.axioms()[0].formula).unwrap(),
            ];
            for j in &js {
                replay(&a, j);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isomorphism_is_an_equivalence(n in 1..=3u32, i in any::<u64>(), j in any::<u64>(), k in any::<u64>(), mode in prop_oneof![Just(IsoMode::Tarski), Just(IsoMode::Carnap)]) {
        let u = Universe::new(n);
        let space = admissible_models(&u, &small_signature()).unwrap();
        let pick = |x: u64| space.get(x % space.count()).unwrap();
        let (p, q, r) = (pick(i), pick(j), pick(k));
        let id = are_isomorphic(&u, &p, &p, mode).unwrap().unwrap();
        prop_assert!(id.is_identity());
        if let Some(c) = are_isomorphic(&u, &p, &q, mode).unwrap() {
            prop_assert_eq!(c.lift_model(&p).unwrap(), q.clone());
            prop_assert_eq!(c.inverse().lift_model(&q).unwrap(), p.clone());
            prop_assert!(are_isomorphic(&u, &q, &p, mode).unwrap().is_some());
            // lifting p by a random permutation gives an isomorphic r'
            if let Some(d) = are_isomorphic(&u, &q, &r, mode).unwrap() {
                prop_assert_eq!(c.then(&d).lift_model(&p).unwrap(), r.clone());
                prop_assert!(are_isomorphic(&u, &p, &r, mode).unwrap().is_some());
            }
        }
        let perm = Correlator::from_pairs(IsoMode::Tarski, (0..n).map(|x| (x, (x + 1) % n))).unwrap();
        let image = perm.lift_model(&p).unwrap();
        prop_assert!(are_isomorphic(&u, &p, &image, mode).unwrap().is_some());
    }

    #[test]
    fn adding_an_axiom_never_adds_models(a in arb_formula(&binary_signature(), 3), b in arb_formula(&binary_signature(), 3)) {
        let u = Universe::new(2);
        let sig = binary_signature();
        let f = system_from("f", &sig, vec![a.clone()]);
        let fg = system_from("fg", &sig, vec![a, b]);
        let small = models_of(&u, &fg).unwrap();
        let big = models_of(&u, &f).unwrap();
        prop_assert!(small.iter().all(|m| big.contains(m)));
    }

    #[test]
    fn consequence_is_closed_under_modus_ponens(a in arb_formula(&binary_signature(), 3), g in arb_formula(&binary_signature(), 3), h in arb_formula(&binary_signature(), 3)) {
        let u = Universe::new(2);
        let f = system_from("f", &binary_signature(), vec![a]);
        let gh = Formula::implies(g.clone(), h.clone());
        if is_consequence(&u, &f, &g).unwrap().absolute && is_consequence(&u, &f, &gh).unwrap().absolute {
            prop_assert!(is_consequence(&u, &f, &h).unwrap().absolute);
        }
    }

    #[test]
    fn inconsistency_is_unsatisfiability(a in arb_formula(&binary_signature(), 3), b in arb_formula(&binary_signature(), 2)) {
        let u = Universe::new(2);
        let f = system_from("f", &binary_signature(), vec![a, b]);
        prop_assert_eq!(
            is_carnap_inconsistent(&u, &f).unwrap().absolute,
            !is_satisfiable(&u, &f).unwrap().absolute
        );
    }

    #[test]
    fn syntactic_formality_is_sound(g in arb_formula(&mixed_signature(), 4)) {
        let u = Universe::new(2);
        prop_assert!(is_formal_syntactic(&g));
        for mode in [IsoMode::Tarski, IsoMode::Carnap] {
            prop_assert!(is_formal_semantic(&u, &g, &mixed_signature(), mode).unwrap().formal);
        }
    }

    #[test]
    fn synthesized_formulas_fork(a in arb_formula(&binary_signature(), 3)) {
        let u = Universe::new(2);
        let f = system_from("f", &binary_signature(), vec![a]);
        let an = Analysis::new(&u, &f, IsoMode::Tarski);
        if let Some(g) = an.synthesize_fork(6).unwrap() {
            prop_assert!(an.forkable_at(&g).unwrap().absolute);
        }
        if an.monomorphic().unwrap().absolute {
            prop_assert!(an.synthesize_fork(6).unwrap().is_none());
        }
    }
}
