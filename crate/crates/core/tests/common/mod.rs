//! Brute-force oracles shared by the integration tests. None of them call
//! into the search routines they check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dpcolor::dp::{self, Coloring, CorrespondenceAssignment};
use dpcolor::generate::ConfigGadget;
use dpcolor::reductions;
use dpcolor::Graph;

/// Calls `visit` on every tuple in `[1, k]^len`.
pub fn for_each_tuple(len: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k == 0 {
        if len == 0 {
            visit(&[]);
        }
        return;
    }
    let mut t = vec![1; len];
    loop {
        visit(&t);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            t[i] += 1;
            if t[i] <= k {
                break;
            }
            t[i] = 1;
            i += 1;
        }
    }
}

/// Direct validity check from the matchings, for total label vectors.
pub fn respects(graph: &Graph, c: &CorrespondenceAssignment, labels: &[usize]) -> bool {
    graph.edges().into_iter().all(|(u, v)| {
        let pairs = c.matching(u, v).unwrap_or_default();
        !pairs.contains(&(labels[u], labels[v]))
    })
}

/// Number of total colourings extending `phi0`, by trying every tuple.
pub fn brute_count(graph: &Graph, c: &CorrespondenceAssignment, phi0: &Coloring) -> u64 {
    let n = graph.vertex_count();
    let mut count = 0;
    for_each_tuple(n, c.k(), |t| {
        if (0..n).all(|v| phi0.get(v).is_none_or(|x| x == t[v])) && respects(graph, c, t) {
            count += 1;
        }
    });
    count
}

/// Ordinary proper `k`-colourability by exhaustive search.
pub fn properly_colorable(graph: &Graph, k: usize) -> bool {
    let mut found = false;
    for_each_tuple(graph.vertex_count(), k, |t| {
        if !found && graph.edges().iter().all(|&(u, v)| t[u] != t[v]) {
            found = true;
        }
    });
    found
}

/// Simple cycles of length `3..=max_len` counted as vertex sequences, each
/// cycle appearing `2 * len` times.
pub fn brute_cycle_count(graph: &Graph, max_len: usize) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut counts = vec![0; max_len + 1];
    fn walk(g: &Graph, path: &mut Vec<usize>, max_len: usize, counts: &mut [usize]) {
        let last = *path.last().unwrap();
        if path.len() >= 3 && g.has_edge(last, path[0]) {
            counts[path.len()] += 1;
        }
        if path.len() == max_len {
            return;
        }
        for &w in g.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                walk(g, path, max_len, counts);
                path.pop();
            }
        }
    }
    for s in 0..n {
        walk(graph, &mut vec![s], max_len, &mut counts);
    }
    counts.iter().enumerate().map(|(len, &c)| if len >= 3 { c / (2 * len) } else { 0 }).collect()
}

/// Whether some 4-cycle shares an edge with each of two distinct triangles,
/// by iterating over vertex tuples.
pub fn brute_violates_class(graph: &Graph) -> bool {
    let n = graph.vertex_count();
    let e = |a: usize, b: usize| graph.has_edge(a, b);
    let mut tris: Vec<BTreeSet<(usize, usize)>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if e(a, b) && e(b, c) && e(a, c) {
                    tris.push([(a, b), (b, c), (a, c)].into_iter().collect());
                }
            }
        }
    }
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let vs = [a, b, c, d];
                    if vs.iter().collect::<BTreeSet<_>>().len() < 4 {
                        continue;
                    }
                    if !(e(a, b) && e(b, c) && e(c, d) && e(d, a)) {
                        continue;
                    }
                    let edges = [norm(a, b), norm(b, c), norm(c, d), norm(d, a)];
                    let touching: Vec<usize> =
                        (0..tris.len()).filter(|&i| edges.iter().any(|x| tris[i].contains(x))).collect();
                    if touching.len() >= 2 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[derive(Debug, Default)]
pub struct LiftSummary {
    /// Distinct colourings of the reduced graph on the lifting interface.
    pub interface_colorings: usize,
    pub lifted: usize,
    pub failures: Vec<String>,
    pub min_residual: usize,
}

/// Lifts every colouring of the reduced graph, grouped by its restriction to
/// the interface.
///
/// The lifted colouring on deleted vertices depends only on the reduced
/// colouring at the interface; elsewhere it is a copy. So one extension per
/// extendable interface colouring covers every colouring of the reduced
/// graph. Interface colourings are enumerated over all `k^|I|` tuples and
/// tested for extendability with the solver; when the reduced graph is
/// small, full enumeration is used instead.
pub fn lift_exhaustively(gadget: &ConfigGadget, c: &CorrespondenceAssignment) -> LiftSummary {
    let g = gadget.plane.graph();
    let red = reductions::reduce(&gadget.plane, c, &gadget.config).expect("reduce");
    let mut out = LiftSummary { min_residual: usize::MAX, ..LiftSummary::default() };
    let check = |phi: &Coloring, out: &mut LiftSummary| match reductions::lift_traced(g, c, &red.plan, phi) {
        Ok((lifted, trace)) => {
            let ok = dp::is_valid(g, c, &lifted, true)
                && red.plan.vertex_map.iter().enumerate().all(|(x, m)| {
                    m.is_none_or(|i| lifted.get(x) == Some(red.plan.relabel.backward(x, phi.get(i).unwrap())))
                });
            if ok {
                out.lifted += 1;
            } else {
                out.failures.push(format!("{}: invalid lift of {:?}", gadget.name, phi.labels()));
            }
            for &(_, s) in &trace.residuals {
                out.min_residual = out.min_residual.min(s);
            }
        }
        Err(e) => out.failures.push(format!("{}: {e}", gadget.name)),
    };
    let nr = red.graph.vertex_count();
    if nr <= 9 {
        let mut seen = BTreeSet::new();
        dp::for_each_coloring(&red.graph, &red.assignment, &Coloring::empty(nr), nr, |phi| {
            seen.insert(red.plan.interface.iter().map(|&i| phi.get(i)).collect::<Vec<_>>());
            check(phi, &mut out);
        })
        .unwrap();
        out.interface_colorings = seen.len();
        return out;
    }
    let iface = red.plan.interface.clone();
    for_each_tuple(iface.len(), c.k(), |t| {
        let mut phi0 = Coloring::empty(nr);
        for (&i, &l) in iface.iter().zip(t) {
            phi0.set(i, l);
        }
        if !dp::is_valid(&red.graph, &red.assignment, &phi0, false) {
            return;
        }
        let sol = dp::solve(&red.graph, &red.assignment, &phi0).unwrap();
        if let Some(phi) = sol.coloring() {
            out.interface_colorings += 1;
            check(phi, &mut out);
        }
    });
    out
}
