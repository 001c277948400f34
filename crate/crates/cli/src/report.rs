//! The report record and its text rendering.

use std::fmt::Write;

use axcheck_core::meta::{Evidence, GabelReport, Judgment, ModelRef};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemId {
    pub name: String,
    /// SHA-256 of the source file, hex.
    pub hash: String,
}

impl SystemId {
    pub fn new(name: &str, source: &[u8]) -> Self {
        SystemId { name: name.to_string(), hash: hex::encode(Sha256::digest(source)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelListing {
    /// Exact number of models.
    pub count: usize,
    /// The first `limit` models in canonical order.
    pub shown: Vec<ModelRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub system: SystemId,
    pub judgments: Vec<Judgment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub models: Option<ModelListing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gabel: Option<GabelReport>,
    pub timing_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "system {} (sha256 {})", self.system.name, &self.system.hash[..12]);
        let _ = writeln!(out, "n={} mode={} cap={} bound={}", c.n, c.mode, c.cap, c.bound);
        if let Some(m) = &self.models {
            let _ = writeln!(out, "\n{} model(s)", m.count);
            for (i, model) in m.shown.iter().enumerate() {
                let _ = writeln!(out, "  [{i}] {}", model.text);
            }
            if m.shown.len() < m.count {
                let _ = writeln!(out, "  ... {} more", m.count - m.shown.len());
            }
        }
        for j in &self.judgments {
            let _ = writeln!(out, "\n{}: {}", j.property, if j.absolute { "yes" } else { "no" });
            if let Some(w) = &j.witness {
                render_evidence(&mut out, "witness", w);
            }
            if let Some(w) = &j.counterexample {
                render_evidence(&mut out, "counterexample", w);
            }
            for n in j.notes.iter().skip(1) {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        if let Some(g) = &self.gabel {
            let _ = writeln!(
                out,
                "\nmonomorphic <-> not forkable: {} (monomorphic={}, forkable={})",
                if !g.satisfiable { "n/a, no models".to_string() } else { g.biconditional.to_string() },
                g.monomorphic,
                g.forkable
            );
            if let Some(r) = &g.replay {
                let _ = writeln!(
                    out,
                    "  replayed: h = iso to {}; h holds there, fails at {}, h is formal",
                    r.satisfied_by.text, r.falsified_by.text
                );
            }
        }
        if self.timing_ms > 0 {
            let _ = writeln!(out, "\n({} ms)", self.timing_ms);
        }
        out
    }
}

fn render_evidence(out: &mut String, label: &str, e: &Evidence) {
    let _ = match e {
        Evidence::Model { model } => writeln!(out, "  {label}: {}", model.text),
        Evidence::Pair { left, right, correlator } => {
            let _ = writeln!(out, "  {label}: {}", left.text);
            let _ = writeln!(out, "  {:width$}  {}", "", right.text, width = label.len());
            match correlator {
                Some(c) => writeln!(out, "  correlator: {c}"),
                None => Ok(()),
            }
        }
        Evidence::Formula { formula } => writeln!(out, "  {label}: h = {formula}"),
        Evidence::Partition { classes } => {
            let _ = writeln!(out, "  {label}: {} class(es)", classes.len());
            for c in classes {
                let _ = writeln!(out, "    {} model(s) like {}", c.size, c.representative.text);
            }
            Ok(())
        }
        Evidence::ClassFork(f) => writeln!(
            out,
            "  {label}: h = isomorphic to {}; holds at {}, fails at {}",
            f.predicate.representative.display_with(&f.predicate.signature),
            f.satisfied_by.text,
            f.falsified_by.text
        ),
        Evidence::Fork(check) => {
            let _ = writeln!(out, "  {label}: g = {}", check.formula);
            let show = |m: &Option<ModelRef>| m.as_ref().map_or("none".to_string(), |m| m.text.clone());
            let _ = writeln!(out, "    model with g:  {}", show(&check.satisfied_by));
            let _ = writeln!(out, "    model with ~g: {}", show(&check.falsified_by));
            let _ = writeln!(out, "    formal: {}", check.formal);
            match &check.formality_counterexample {
                Some((p, q, c)) => writeln!(out, "    isomorphic but separated: {} vs {} via {c}", p.text, q.text),
                None => Ok(()),
            }
        }
        Evidence::Undecided { formula, class } => {
            if let Some(f) = formula {
                let _ = writeln!(out, "  {label}: neither g nor ~g follows, g = {f}");
            }
            match class {
                Some(h) => writeln!(
                    out,
                    "  {label}: neither h nor ~h follows, h = isomorphic to {}",
                    h.representative.display_with(&h.signature)
                ),
                None => Ok(()),
            }
        }
    };
}
