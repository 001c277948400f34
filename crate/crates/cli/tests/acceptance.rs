//! End-to-end acceptance checks. Each criterion prints one `[PASS]` or
//! `[FAIL]` line; the test fails if any criterion does.
//!
//! Oracles here are written independently of the engine: satisfaction is
//! replayed clause by clause, isomorphism is checked by permuting values
//! directly, and unsatisfiability is counted by brute force.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use axcheck_core::meta::Evidence;
use axcheck_core::synth::FormulaEnumerator;
use axcheck_core::{
    admissible_models, are_isomorphic, corpus, eval, gabel_check, is_carnap_inconsistent, is_forkable_at,
    is_forkable_semantic, is_formal_semantic, is_monomorphic, is_satisfiable, iso_classes, models_of,
    parse_axiom_system, parse_formula, pretty_print, synthesize_forking_formula, Axiom, AxiomSystem, Error, Formula,
    IsoMode, ModelAssignment, Relation, Signature, SimpleType, Term, Universe, Value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CORPUS_LIMIT: Duration = Duration::from_secs(1);
const SATISFIABILITY_LIMIT: Duration = Duration::from_secs(10);
const GABEL_LIMIT: Duration = Duration::from_secs(60);
const FORMALITY_LIMIT: Duration = Duration::from_secs(120);

const RANDOM_SYSTEMS: usize = 200;
const RANDOM_SEED: u64 = 0x5eed_0002;
const FUZZ_CASES: usize = 10_000;
const FUZZ_SEED: u64 = 0xf022;
const FORMULA_BOUND: usize = 9;
const MODES: [IsoMode; 2] = [IsoMode::Tarski, IsoMode::Carnap];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn corpus_systems() -> Vec<(&'static str, AxiomSystem)> {
    corpus::all().into_iter().map(|(stem, src)| (stem, parse_axiom_system(src).unwrap())).collect()
}

fn binary() -> Signature {
    Signature::new([("R", SimpleType::binary())])
}

/// A closed pure formula over `R`, built with an explicit generator so the
/// population does not depend on the engine's own enumerator.
fn random_formula(rng: &mut ChaCha8Rng, scope: &mut Vec<String>, depth: u32) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf && !scope.is_empty() {
        let pick = |rng: &mut ChaCha8Rng| Term::var(scope[rng.gen_range(0..scope.len())].clone());
        return if rng.gen_bool(0.75) {
            Formula::app("R", [pick(rng), pick(rng)])
        } else {
            Formula::eq(pick(rng), pick(rng))
        };
    }
    let quantify = scope.is_empty() || leaf || rng.gen_bool(0.4);
    if quantify {
        let name = format!("v{}", scope.len());
        scope.push(name.clone());
        let body = random_formula(rng, scope, depth.saturating_sub(1));
        scope.pop();
        return match rng.gen_range(0..3) {
            0 => Formula::forall(name, SimpleType::Ind, body),
            1 => Formula::exists(name, SimpleType::Ind, body),
            _ => Formula::exists_unique(name, SimpleType::Ind, body),
        };
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(rng, scope, depth - 1)),
        k => {
            let a = random_formula(rng, scope, depth - 1);
            let b = random_formula(rng, scope, depth - 1);
            match k {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                3 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
    }
}

fn random_systems() -> Vec<AxiomSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    (0..RANDOM_SYSTEMS)
        .map(|i| {
            let axioms = (0..rng.gen_range(1..=3))
                .map(|k| Axiom::new(format!("A{k}"), random_formula(&mut rng, &mut Vec::new(), 4)))
                .collect();
            AxiomSystem::new(format!("random{i}"), binary(), axioms).unwrap()
        })
        .collect()
}

/// Every (system, n) pair the population criteria range over: the corpus at
/// n = 1, 2, 3 where the cap allows, and the random systems at n = 2.
fn population() -> Vec<(String, AxiomSystem, u32)> {
    let mut out = Vec::new();
    for (stem, sys) in corpus_systems() {
        for n in 1..=3 {
            if admissible_models(&Universe::new(n), sys.signature()).is_ok() {
                out.push((format!("{stem}@{n}"), sys.clone(), n));
            }
        }
    }
    out.extend(random_systems().into_iter().map(|s| (s.name().to_string(), s, 2)));
    out
}

/// Satisfaction replayed clause by clause through the evaluator.
fn replays(u: &Universe, sys: &AxiomSystem, m: &ModelAssignment) -> bool {
    sys.clauses().all(|a| eval(u, &a.formula, sys.signature(), m).unwrap())
}

fn brute_force_models(u: &Universe, sys: &AxiomSystem) -> usize {
    admissible_models(u, sys.signature()).unwrap().iter().filter(|m| replays(u, sys, m)).count()
}

fn permute(v: &Value, perm: &[u32]) -> Value {
    match v {
        Value::Ind(i) => Value::Ind(perm[*i as usize]),
        Value::Rel(r) => {
            Value::Rel(Relation::new(r.tuples().iter().map(|t| t.iter().map(|x| permute(x, perm)).collect())))
        }
    }
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n as usize {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

fn naive_isomorphic(p: &ModelAssignment, q: &ModelAssignment, n: u32) -> bool {
    permutations(n).iter().any(|perm| p.values().iter().zip(q.values()).all(|(a, b)| &permute(a, perm) == b))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/golden");
    let mut clauses = 0;
    for (stem, sys) in corpus_systems() {
        let printed: String = sys.clauses().map(|a| format!("{}: {}\n", a.label, pretty_print(&a.formula))).collect();
        let expected = std::fs::read_to_string(golden.join(format!("{stem}.ast"))).map_err(|e| e.to_string())?;
        ensure(printed == expected, || format!("{stem} differs from its golden expansion"))?;
        clauses += sys.clauses().count();
    }
    let labels =
        |src: &str| parse_axiom_system(src).unwrap().axioms().iter().map(|a| a.label.clone()).collect::<Vec<_>>();
    ensure(labels(corpus::HAUSDORFF) == ["Ax1a", "Ax1b", "Ax2", "Ax3", "Ax4"], || "hausdorff labels".into())?;
    ensure(labels(corpus::PEANO) == ["PA1", "PA2", "PA3", "PA4", "PA5"], || "pa labels".into())?;
    ensure(labels(corpus::BASIC_ARITHMETIC) == ["BA1", "BA2", "BA3"], || "ba labels".into())?;
    let took = within(CORPUS_LIMIT, start)?;
    Ok(format!("{clauses} clauses match their goldens in {took:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let hausdorff = parse_axiom_system(corpus::HAUSDORFF).unwrap();
    let mut counts = Vec::new();
    for n in [1, 2] {
        let u = Universe::new(n);
        let j = is_satisfiable(&u, &hausdorff).map_err(|e| e.to_string())?;
        ensure(j.absolute, || format!("hausdorff unsatisfiable at n={n}"))?;
        let Some(Evidence::Model { model }) = &j.witness else {
            return Err(format!("no witness at n={n}"));
        };
        ensure(replays(&u, &hausdorff, &model.values), || format!("witness {} fails at n={n}", model.text))?;
        counts.push(brute_force_models(&u, &hausdorff));
    }
    let ba = parse_axiom_system(corpus::BASIC_ARITHMETIC).unwrap();
    for n in 1..=3 {
        let u = Universe::new(n);
        let j = is_satisfiable(&u, &ba).map_err(|e| e.to_string())?;
        ensure(!j.absolute, || format!("ba satisfiable at n={n}"))?;
        ensure(brute_force_models(&u, &ba) == 0, || format!("brute force finds a ba model at n={n}"))?;
    }
    let took = within(SATISFIABILITY_LIMIT, start)?;
    Ok(format!("hausdorff models at n=1,2: {counts:?}; ba has none at n<=3; {took:.2?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let pop = population();
    let violations: Vec<String> = pop
        .par_iter()
        .flat_map_iter(|(name, sys, n)| {
            let u = Universe::new(*n);
            MODES.into_iter().filter_map(move |mode| {
                let sat = is_satisfiable(&u, sys).unwrap().absolute;
                let mono = is_monomorphic(&u, sys, mode).unwrap().absolute;
                let fork = is_forkable_semantic(&u, sys, mode).unwrap().absolute;
                let report = gabel_check(&u, sys, mode);
                let consistent = mono == (sat && !fork) && report.is_ok();
                (!consistent).then(|| format!("{name}/{mode}: sat={sat} mono={mono} fork={fork}"))
            })
        })
        .collect();
    ensure(violations.is_empty(), || format!("{} violations, first {}", violations.len(), violations[0]))?;
    let took = within(GABEL_LIMIT, start)?;
    Ok(format!("{} systems x 2 modes, 0 violations in {took:.2?}", pop.len()))
}

fn criterion_4() -> Outcome {
    let pop = population();
    let bad: Vec<&String> = pop
        .par_iter()
        .filter(|(_, sys, n)| {
            let u = Universe::new(*n);
            let inconsistent = is_carnap_inconsistent(&u, sys).unwrap().absolute;
            inconsistent != (brute_force_models(&u, sys) == 0)
        })
        .map(|(name, _, _)| name)
        .collect();
    ensure(bad.is_empty(), || format!("disagreement on {bad:?}"))?;
    let unsat = pop.iter().filter(|(_, s, n)| models_of(&Universe::new(*n), s).unwrap().is_empty()).count();
    Ok(format!("{} systems ({unsat} unsatisfiable), 0 disagreements", pop.len()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let sig = binary();
    let u = Universe::new(2);
    let formulas = FormulaEnumerator::exhaustive(&sig).all_up_to(FORMULA_BOUND);
    for mode in MODES {
        let bad = formulas.par_iter().find_any(|g| !is_formal_semantic(&u, g, &sig, mode).unwrap().formal);
        if let Some(g) = bad {
            return Err(format!("{} is not formal in {mode} mode", pretty_print(g)));
        }
    }
    let g = parse_formula("exists x:ind. exists y:ind. R(x, y) & x = #0", &sig).map_err(|e| e.to_string())?;
    for mode in MODES {
        let f = is_formal_semantic(&u, &g, &sig, mode).map_err(|e| e.to_string())?;
        let c = f.counterexample.ok_or("literal formula reported formal")?;
        let lifted = c.correlator.lift_model(&c.holds).map_err(|e| e.to_string())?;
        ensure(lifted == c.fails, || "correlator does not carry holds onto fails".into())?;
        ensure(naive_isomorphic(&c.holds, &c.fails, 2), || "pair is not isomorphic".into())?;
        let truth = |m| eval(&u, &g, &sig, m).unwrap();
        ensure(truth(&c.holds) && !truth(&c.fails), || "pair does not separate the formula".into())?;
    }
    let took = within(FORMALITY_LIMIT, start)?;
    Ok(format!("{} pure formulas formal in both modes; literal formula refuted; {took:.2?}", formulas.len()))
}

fn criterion_6() -> Outcome {
    let mut pairs = 0usize;
    for (stem, sys) in corpus_systems() {
        for n in 1..=3 {
            let u = Universe::new(n);
            let models = match models_of(&u, &sys) {
                Ok(ms) => ms.models,
                Err(Error::CapExceeded { .. }) => continue,
                Err(e) => return Err(e.to_string()),
            };
            let results: Vec<Result<(), String>> = models
                .par_iter()
                .flat_map_iter(|p| models.iter().map(move |q| (p, q)))
                .map(|(p, q)| {
                    let expected = naive_isomorphic(p, q, n);
                    for mode in MODES {
                        let found = are_isomorphic(&u, p, q, mode).map_err(|e| e.to_string())?;
                        ensure(found.is_some() == expected, || format!("{stem}@{n} {mode}: {p} vs {q}"))?;
                        if let Some(c) = found {
                            let lifted = c.lift_model(p).map_err(|e| e.to_string())?;
                            ensure(&lifted == q, || format!("{stem}@{n}: correlator {c} does not map {p} to {q}"))?;
                        }
                    }
                    Ok(())
                })
                .collect();
            results.into_iter().collect::<Result<Vec<()>, String>>()?;
            pairs += models.len() * models.len();
        }
    }
    let equiv = parse_axiom_system(corpus::EQUIVALENCE).unwrap();
    let u2 = Universe::new(2);
    let classes = iso_classes(&u2, &models_of(&u2, &equiv).unwrap().models, IsoMode::Tarski).unwrap();
    ensure(classes.len() == 2, || format!("equivalences at n=2 give {} classes", classes.len()))?;
    let orders = parse_axiom_system(corpus::TOTAL_ORDER).unwrap();
    let u3 = Universe::new(3);
    let classes = iso_classes(&u3, &models_of(&u3, &orders).unwrap().models, IsoMode::Tarski).unwrap();
    let sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
    ensure(sizes == [6], || format!("total orders at n=3 give classes of sizes {sizes:?}"))?;
    Ok(format!("{pairs} model pairs agree with the permutation oracle; class counts 2 and 1x6"))
}

fn criterion_7() -> Outcome {
    let mut pop: Vec<(String, AxiomSystem, u32)> =
        corpus_systems().into_iter().map(|(stem, s)| (format!("{stem}@2"), s, 2)).collect();
    let orders = parse_axiom_system(corpus::TOTAL_ORDER).unwrap();
    pop.push(("total_order@3".into(), orders, 3));
    pop.extend(random_systems().into_iter().map(|s| (s.name().to_string(), s, 2)));
    let outcomes: Vec<Result<(bool, bool), String>> = pop
        .par_iter()
        .map(|(name, sys, n)| {
            let u = Universe::new(*n);
            let mode = IsoMode::Tarski;
            let mono = is_monomorphic(&u, sys, mode).unwrap().absolute;
            let g = synthesize_forking_formula(&u, sys, mode, FORMULA_BOUND).map_err(|e| e.to_string())?;
            let Some(g) = g else {
                return Ok((mono, false));
            };
            ensure(!mono, || format!("{name}: monomorphic yet {} forks it", pretty_print(&g)))?;
            let j = is_forkable_at(&u, sys, &g, mode).unwrap();
            ensure(j.absolute, || format!("{name}: {} does not fork", pretty_print(&g)))?;
            let models = models_of(&u, sys).unwrap();
            let truths: Vec<bool> = models.iter().map(|m| eval(&u, &g, sys.signature(), m).unwrap()).collect();
            ensure(truths.contains(&true) && truths.contains(&false), || format!("{name}: no split"))?;
            let formal = is_formal_semantic(&u, &g, sys.signature(), mode).unwrap().formal;
            ensure(formal && g.is_pure(), || format!("{name}: synthesized formula not formal"))?;
            Ok((mono, true))
        })
        .collect();
    let mut forks = 0;
    let mut monos = 0;
    for o in outcomes {
        let (mono, forked) = o?;
        monos += mono as usize;
        forks += forked as usize;
    }
    Ok(format!("{} systems: {forks} forking formulas replayed, {monos} monomorphic with none", pop.len()))
}

fn criterion_8() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let run = |file: &PathBuf, jobs: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_axcheck"))
            .args(["meta", "--deterministic", "--json", "--jobs", jobs])
            .arg(file)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("{}: exit {:?}", file.display(), out.status.code()))?;
        Ok::<_, String>(out.stdout)
    };
    let mut files = 0;
    for (stem, _) in corpus::all() {
        let file = dir.join(format!("{stem}.axs"));
        let first = run(&file, "1")?;
        for jobs in ["1", "2", "8"] {
            ensure(run(&file, jobs)? == first, || format!("{stem}: output differs with --jobs {jobs}"))?;
        }
        files += 1;
    }
    Ok(format!("{files} corpus files byte-identical across 4 runs (jobs 1, 1, 2, 8)"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    let (mut parse, mut ty) = (0, 0);
    for i in 0..FUZZ_CASES {
        let len = rng.gen_range(0..=96);
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        let text = String::from_utf8_lossy(&bytes).into_owned();
        let result = catch_unwind(|| parse_axiom_system(&text)).map_err(|_| format!("case {i} panicked"))?;
        match result {
            Err(Error::Parse(_)) => parse += 1,
            Err(Error::Type(_)) => ty += 1,
            Err(e) => return Err(format!("case {i}: unexpected error kind: {e}")),
            Ok(sys) => return Err(format!("case {i}: random bytes parsed as system {}", sys.name())),
        }
    }
    Ok(format!("{FUZZ_CASES} random inputs: {parse} parse errors, {ty} type errors, no panics"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("corpus transcription", criterion_1),
        ("satisfiability", criterion_2),
        ("monomorphic iff not forkable", criterion_3),
        ("inconsistent iff unsatisfiable", criterion_4),
        ("formality soundness", criterion_5),
        ("isomorphism oracle", criterion_6),
        ("forking witnesses replay", criterion_7),
        ("determinism", criterion_8),
        ("parser robustness", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let line = match &outcome {
            Ok(detail) => format!("[PASS] {}. {name}: {detail}", i + 1),
            Err(why) => format!("[FAIL] {}. {name}: {why}", i + 1),
        };
        // straight to the process stdout so the lines show without --nocapture
        let _ = writeln!(std::io::stdout().lock(), "{line}");
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
