//! Batch verification over seeded instances.
//!
//! Each instance is generated in class, given a chordless outer face of
//! degree at most 6 when one exists, and then run through the class check,
//! the audit, the solver on random perfect assignments, precolouring
//! extension from `V(D)`, and the discharging ledger. Instances run in
//! parallel; the report lists them in input order.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::discharging::{self, Charge};
use crate::dp::{self, Coloring, CorrespondenceAssignment};
use crate::generate::{self, chordless_outer, gen_in_class};
use crate::plane_graph::{Graph, Plane, Vertex};
use crate::structure;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchConfig {
    pub seed: u64,
    pub instances: usize,
    pub assignments: usize,
    pub k: usize,
    pub max_n: usize,
    /// Precolourings of `V(D)` tried per instance.
    pub extensions: usize,
    /// Run the minimal-counterexample audit with `S = V(D)`.
    pub audit: bool,
    /// Prepend K4 (outside the class) to the batch.
    pub include_k4: bool,
    pub deterministic: bool,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            seed: 0,
            instances: 10,
            assignments: 5,
            k: 4,
            max_n: 24,
            extensions: 3,
            audit: true,
            include_k4: false,
            deterministic: true,
        }
    }
}

/// Mixes a batch seed with a stream tag and an index.
pub fn derive_seed(seed: u64, tag: u64, index: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveSummary {
    pub attempted: usize,
    pub solved: usize,
    pub validated: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExtensionSummary {
    /// Valid colourings of `G[V(D)]` found by brute force.
    pub precolorings_available: usize,
    pub attempted: usize,
    pub extended: usize,
    pub validated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DischargeSummary {
    pub conservation_ok: bool,
    pub closed_form_matches: bool,
    pub outer_final: Charge,
    pub outer_closed_form: Charge,
    pub negative_elements: usize,
    pub outer_edges_out: Option<usize>,
    /// `μ*(D) > 0`, required when the audit passes, `e(D, V-D) > 0` and
    /// `d(D) <= 6`.
    pub outer_positive: bool,
    pub outer_positive_required: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub name: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub in_class: bool,
    pub outer: Option<Vec<Vertex>>,
    pub chordless_outer: bool,
    pub audit_passed: Option<bool>,
    pub audit_violations: Vec<char>,
    pub solve: SolveSummary,
    pub extension: ExtensionSummary,
    pub discharge: Option<DischargeSummary>,
    pub status: Status,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub solved: usize,
    pub attempted: usize,
    pub extended: usize,
    pub extension_attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub seed: u64,
    pub k: usize,
    pub max_n: usize,
    pub instances: Vec<InstanceReport>,
    pub totals: Totals,
    pub pass: bool,
}

impl BatchReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn has_errors(&self) -> bool {
        self.totals.errors > 0
    }
}

/// Every valid colouring of the subgraph induced by `s`, found by trying all
/// `k^|s|` label tuples.
pub fn brute_force_precolorings(graph: &Graph, assignment: &CorrespondenceAssignment, s: &[Vertex]) -> Vec<Coloring> {
    let k = assignment.k();
    let mut out = Vec::new();
    let mut labels = vec![1; s.len()];
    if s.is_empty() {
        return out;
    }
    loop {
        let mut phi = Coloring::empty(graph.vertex_count());
        for (&v, &c) in s.iter().zip(&labels) {
            phi.set(v, c);
        }
        if dp::is_valid(graph, assignment, &phi, false) {
            out.push(phi);
        }
        let mut i = 0;
        loop {
            if i == labels.len() {
                return out;
            }
            labels[i] += 1;
            if labels[i] <= k {
                break;
            }
            labels[i] = 1;
            i += 1;
        }
    }
}

/// Picks a designated outer face: the smallest chordless simple face of
/// degree at most 6, else face 0.
pub fn choose_outer(graph: crate::PlaneGraph) -> Result<(Plane, bool), crate::GraphError> {
    match chordless_outer(graph.clone(), 6)? {
        Some(p) => Ok((p, true)),
        None => {
            let plane = Plane::new(graph)?;
            let id = plane.faces()[0].id;
            Ok((plane.set_outer(id)?, false))
        }
    }
}

pub fn run_instance(
    config: &BatchConfig,
    index: usize,
    name: String,
    seed: u64,
    plane: Plane,
    chordless: bool,
) -> InstanceReport {
    let g = plane.graph().clone();
    let mut problems = Vec::new();
    let mut errored = false;
    let in_class = structure::class_check(&g).is_none();
    let outer_face = plane.outer_face().ok().cloned();
    let outer = outer_face.as_ref().map(|f| f.vertices());
    let s: BTreeSet<Vertex> = outer_face.as_ref().map(|f| f.vertex_set()).unwrap_or_default();

    let (audit_passed, audit_violations) = if config.audit && !s.is_empty() {
        match structure::audit(&plane, &s) {
            Ok(a) => (Some(a.passed()), a.violations().map(|c| c.clause).collect()),
            Err(e) => {
                problems.push(format!("audit: {e}"));
                (None, Vec::new())
            }
        }
    } else {
        (None, Vec::new())
    };

    let mut solve = SolveSummary::default();
    let empty = Coloring::empty(g.vertex_count());
    for a in 0..config.assignments {
        let c = CorrespondenceAssignment::random(&g, config.k, derive_seed(seed, 1, a as u64), true);
        solve.attempted += 1;
        match dp::solve(&g, &c, &empty) {
            Ok(sol) => {
                solve.nodes += sol.stats.nodes;
                if let Some(phi) = sol.coloring() {
                    solve.solved += 1;
                    if dp::is_valid(&g, &c, phi, true) {
                        solve.validated += 1;
                    } else {
                        problems.push(format!("assignment {a}: returned colouring is invalid"));
                    }
                } else if in_class {
                    problems.push(format!("assignment {a}: no colouring"));
                }
            }
            Err(e) => {
                errored = true;
                problems.push(format!("assignment {a}: {e}"));
            }
        }
    }

    let mut extension = ExtensionSummary::default();
    if chordless && config.extensions > 0 {
        let c = CorrespondenceAssignment::random(&g, config.k, derive_seed(seed, 2, 0), true);
        let sv: Vec<Vertex> = s.iter().copied().collect();
        let mut pre = brute_force_precolorings(&g, &c, &sv);
        extension.precolorings_available = pre.len();
        pre.shuffle(&mut generate::rng(derive_seed(seed, 3, 0)));
        for phi0 in pre.iter().take(config.extensions) {
            extension.attempted += 1;
            match dp::solve(&g, &c, phi0) {
                Ok(sol) => match sol.coloring() {
                    Some(phi) => {
                        extension.extended += 1;
                        if dp::is_valid(&g, &c, phi, true) && phi.extends(phi0) {
                            extension.validated += 1;
                        } else {
                            problems.push("extension is invalid or ignores the precolouring".into());
                        }
                    }
                    None if in_class => problems.push("precolouring of V(D) does not extend".into()),
                    None => {}
                },
                Err(e) => {
                    errored = true;
                    problems.push(format!("extension: {e}"));
                }
            }
        }
    }

    let discharge = match discharging::discharge(&plane).and_then(|l| discharging::verify(&plane, &l)) {
        Ok(r) => {
            let edges_out = r.balance.as_ref().map(|b| b.outer_edges_out);
            let required = audit_passed == Some(true) && edges_out.is_some_and(|e| e > 0);
            let positive = r.outer_final.is_positive();
            if !r.conservation_ok {
                problems.push("charge is not conserved".into());
            }
            if !r.closed_form_matches {
                problems.push("ledger disagrees with the closed form for D".into());
            }
            if required && !positive {
                problems.push("audited instance has non-positive final charge on D".into());
            }
            Some(DischargeSummary {
                conservation_ok: r.conservation_ok,
                closed_form_matches: r.closed_form_matches,
                negative_elements: r.negative_elements.len(),
                outer_final: r.outer_final,
                outer_closed_form: r.outer_closed_form,
                outer_edges_out: edges_out,
                outer_positive: positive,
                outer_positive_required: required,
            })
        }
        Err(e) => {
            errored = true;
            problems.push(format!("discharge: {e}"));
            None
        }
    };

    let status = if errored {
        Status::Error
    } else if problems.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    InstanceReport {
        index,
        name,
        seed,
        n: g.vertex_count(),
        m: g.edge_count(),
        in_class,
        outer,
        chordless_outer: chordless,
        audit_passed,
        audit_violations,
        solve,
        extension,
        discharge,
        status,
        problems,
    }
}

/// One batch instance before it is run: the plane and whether its outer
/// face is chordless, or the generation error.
#[derive(Debug, Clone)]
pub struct BatchJob {
    pub name: String,
    pub seed: u64,
    pub source: Result<(Plane, bool), String>,
}

/// The instances `run_batch` would run, in order.
pub fn batch_jobs(config: &BatchConfig) -> Vec<BatchJob> {
    let mut out = Vec::new();
    if config.include_k4 {
        let seed = derive_seed(config.seed, 0, u64::MAX);
        let source = choose_outer(generate::tetrahedron().plane_graph().clone()).map_err(|e| e.to_string());
        out.push(BatchJob { name: "k4".into(), seed, source });
    }
    let lo = (config.max_n / 2).max(4).min(config.max_n.max(4));
    let hi = config.max_n.max(lo);
    for i in 0..config.instances {
        let seed = derive_seed(config.seed, 0, i as u64);
        let n = generate::rng(seed).gen_range(lo..=hi);
        let source =
            gen_in_class(n, seed).map_err(|e| e.to_string()).and_then(|g| choose_outer(g).map_err(|e| e.to_string()));
        out.push(BatchJob { name: format!("in-class-{i}"), seed, source });
    }
    out
}

pub fn run_batch(config: &BatchConfig) -> BatchReport {
    use rayon::prelude::*;
    let reports: Vec<InstanceReport> = batch_jobs(config)
        .into_par_iter()
        .enumerate()
        .map(|(i, job)| match job.source {
            Ok((plane, chordless)) => run_instance(config, i, job.name, job.seed, plane, chordless),
            Err(e) => InstanceReport {
                index: i,
                name: job.name,
                seed: job.seed,
                n: 0,
                m: 0,
                in_class: false,
                outer: None,
                chordless_outer: false,
                audit_passed: None,
                audit_violations: Vec::new(),
                solve: SolveSummary::default(),
                extension: ExtensionSummary::default(),
                discharge: None,
                status: Status::Error,
                problems: vec![format!("generation: {e}")],
            },
        })
        .collect();
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let totals = Totals {
        instances: reports.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        errors: count(Status::Error),
        solved: reports.iter().map(|r| r.solve.solved).sum(),
        attempted: reports.iter().map(|r| r.solve.attempted).sum(),
        extended: reports.iter().map(|r| r.extension.extended).sum(),
        extension_attempts: reports.iter().map(|r| r.extension.attempted).sum(),
    };
    let generated_at = (!config.deterministic)
        .then(|| std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    BatchReport {
        schema: SCHEMA,
        generated_at,
        seed: config.seed,
        k: config.k,
        max_n: config.max_n,
        pass: totals.passed == totals.instances,
        instances: reports,
        totals,
    }
}
