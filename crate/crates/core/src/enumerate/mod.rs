//! Isomorph-free generation of small graphs in hereditary classes, and the
//! exhaustive sweeps built on it.
//!
//! Generation is vertex-by-vertex canonical augmentation. A child
//! `parent + x` is kept iff deleting its canonical deletion vertex (the
//! vertex at the last canonical position) gives a graph isomorphic to the
//! parent; children of one parent are deduplicated by canonical form.
//! Because the forbidden patterns define a hereditary class, a child need
//! only be tested for copies that use the new vertex.

mod sweeps;

pub use sweeps::*;

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{bit, low_mask, Graph, VertexSet};
use crate::holes::claw;
use crate::iso::{are_isomorphic, canonical_form, canonical_labeling, equitable_partition, CanonicalForm, Pattern};

/// Largest order a sweep may request.
pub const ENVELOPE_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("n_max = {n_max} exceeds the enumeration envelope of {limit}")]
    Envelope { n_max: usize, limit: usize },
    #[error("{0}")]
    Precondition(String),
}

/// Which graphs to generate. `forbidden` is hereditary and pruned during
/// generation; the other fields are filters applied at emission.
#[derive(Clone, Debug, Default)]
pub struct EnumerationQuery {
    pub n_max: usize,
    pub forbidden: Vec<Graph>,
    pub require_connected: bool,
    pub min_alpha: Option<usize>,
    pub exclude_odd_cycles: bool,
}

impl EnumerationQuery {
    pub fn new(n_max: usize) -> Self {
        EnumerationQuery {
            n_max,
            ..Default::default()
        }
    }

    pub fn forbid(mut self, g: Graph) -> Self {
        self.forbidden.push(g);
        self
    }

    pub fn forbid_all(mut self, gs: impl IntoIterator<Item = Graph>) -> Self {
        self.forbidden.extend(gs);
        self
    }

    pub fn connected(mut self) -> Self {
        self.require_connected = true;
        self
    }

    pub fn min_alpha(mut self, a: usize) -> Self {
        self.min_alpha = Some(a);
        self
    }

    pub fn exclude_odd_cycles(mut self) -> Self {
        self.exclude_odd_cycles = true;
        self
    }

    /// The emission-time filters.
    pub fn accepts(&self, g: &Graph) -> bool {
        if self.require_connected && !g.is_connected().unwrap_or(false) {
            return false;
        }
        if self.exclude_odd_cycles && is_odd_cycle(g) {
            return false;
        }
        match self.min_alpha {
            Some(a) => g.independence_number() >= a,
            None => true,
        }
    }

    fn validate(&self) -> Result<(), EnumerateError> {
        if self.n_max > ENVELOPE_MAX_ORDER {
            return Err(EnumerateError::Envelope {
                n_max: self.n_max,
                limit: ENVELOPE_MAX_ORDER,
            });
        }
        Ok(())
    }
}

/// Connected, 2-regular, odd order at least 3.
pub fn is_odd_cycle(g: &Graph) -> bool {
    let n = g.order();
    n >= 3 && n % 2 == 1 && (0..n).all(|v| g.degree(v) == 2) && g.is_connected().unwrap_or(false)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderStats {
    pub order: usize,
    /// Isomorphism classes of this order in the hereditary class.
    pub classes: u64,
    /// Classes that also passed the emission filters.
    pub emitted: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub per_order: Vec<OrderStats>,
    /// Neighbourhoods tried for a new vertex.
    pub candidates: u64,
    /// Candidates containing a forbidden pattern.
    pub rejected_forbidden: u64,
    /// Candidates rejected as non-canonical or duplicate.
    pub rejected_noncanonical: u64,
    pub emitted: u64,
    pub wall_time_ms: u64,
}

/// Pattern tests specialised for the common cases.
struct Filter {
    claw: bool,
    patterns: Vec<Pattern>,
    /// Some pattern has at most one vertex: the class is (nearly) empty.
    trivial_order: Option<usize>,
}

impl Filter {
    fn new(forbidden: &[Graph]) -> Self {
        let claw_g = claw();
        let claw = forbidden.iter().any(|f| are_isomorphic(f, &claw_g));
        let trivial_order = forbidden.iter().map(Graph::order).filter(|&o| o <= 1).min();
        // Drop patterns that contain another forbidden pattern: they are
        // redundant in a hereditary class.
        let mut kept: Vec<&Graph> = Vec::new();
        let mut sorted: Vec<&Graph> = forbidden.iter().collect();
        sorted.sort_by_key(|g| (g.order(), g.size()));
        for f in sorted {
            if claw && Pattern::new(&claw_g).embeds_in(f) {
                continue;
            }
            if kept.iter().any(|k| are_isomorphic(k, f) || Pattern::new(k).embeds_in(f)) {
                continue;
            }
            kept.push(f);
        }
        let patterns = kept
            .into_iter()
            .filter(|f| !(claw && are_isomorphic(f, &claw_g)))
            .map(Pattern::new)
            .collect();
        Filter {
            claw,
            patterns,
            trivial_order,
        }
    }

    fn allows_k1(&self) -> bool {
        self.trivial_order.is_none()
    }

    /// Does `child` (whose last vertex `x` is new) contain a forbidden
    /// pattern through `x`?
    fn rejects(&self, parent: &Graph, s: u64, child: &Graph) -> bool {
        if self.claw && claw_through_new_vertex(parent.rows(), s) {
            return true;
        }
        let x = child.order() - 1;
        self.patterns.iter().any(|p| p.embeds_through(child, x))
    }
}

/// A claw in `parent + x` with `N(x) = s` must use `x`, either as the
/// centre or as a leaf.
fn claw_through_new_vertex(rows: &[u64], s: u64) -> bool {
    for a in VertexSet(s) {
        let r = s & !rows[a] & !low_mask(a + 1);
        for b in VertexSet(r) {
            if r & !rows[b] & !low_mask(b + 1) != 0 {
                return true;
            }
        }
    }
    for u in VertexSet(s) {
        let t = rows[u] & !s;
        for b in VertexSet(t) {
            if t & !rows[b] & !bit(b) != 0 {
                return true;
            }
        }
    }
    false
}

#[derive(Default)]
struct Counters {
    candidates: AtomicU64,
    forbidden: AtomicU64,
    noncanonical: AtomicU64,
}

fn children(parent: &Graph, parent_form: &CanonicalForm, filter: &Filter, counters: &Counters) -> Vec<(Graph, CanonicalForm)> {
    let n = parent.order();
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out = Vec::new();
    let (mut cand, mut forb, mut noncanon) = (0u64, 0u64, 0u64);
    for s in 0..(1u64 << n) {
        cand += 1;
        let child = parent.add_vertex(VertexSet(s)).expect("order stays within the envelope");
        if filter.rejects(parent, s, &child) {
            forb += 1;
            continue;
        }
        let cells = equitable_partition(&child);
        if cells.last().is_some_and(|&c| c & bit(n) == 0) {
            noncanon += 1;
            continue;
        }
        let lab = canonical_labeling(&child);
        let d = lab.vertex_at(n);
        if d != n && canonical_form(&child.delete_vertex(d)) != *parent_form {
            noncanon += 1;
            continue;
        }
        if !seen.insert(lab.form.clone()) {
            noncanon += 1;
            continue;
        }
        out.push((child, lab.form));
    }
    counters.candidates.fetch_add(cand, Ordering::Relaxed);
    counters.forbidden.fetch_add(forb, Ordering::Relaxed);
    counters.noncanonical.fetch_add(noncanon, Ordering::Relaxed);
    out
}

/// Drives generation level by level. `on_level` receives the emitted graphs
/// of each order (in a deterministic order) and may stop the run.
fn run_levels(
    q: &EnumerationQuery,
    mut on_level: impl FnMut(usize, &[Graph]) -> ControlFlow<()>,
) -> Result<EnumerationReport, EnumerateError> {
    q.validate()?;
    let start = Instant::now();
    let filter = Filter::new(&q.forbidden);
    let counters = Counters::default();
    let mut report = EnumerationReport::default();
    if q.n_max == 0 || !filter.allows_k1() {
        return Ok(report);
    }
    let k1 = Graph::empty(1).expect("K1");
    let k1_form = canonical_form(&k1);
    let mut level = vec![(k1, k1_form)];
    for order in 1..=q.n_max {
        if order > 1 {
            let next: Vec<Vec<(Graph, CanonicalForm)>> = level
                .par_iter()
                .map(|(g, f)| children(g, f, &filter, &counters))
                .collect();
            level = next.into_iter().flatten().collect();
        }
        let emitted: Vec<Graph> = level
            .par_iter()
            .filter(|(g, _)| q.accepts(g))
            .map(|(g, _)| g.clone())
            .collect();
        report.per_order.push(OrderStats {
            order,
            classes: level.len() as u64,
            emitted: emitted.len() as u64,
        });
        report.emitted += emitted.len() as u64;
        let flow = on_level(order, &emitted);
        if flow.is_break() || level.is_empty() {
            break;
        }
    }
    report.candidates = counters.candidates.load(Ordering::Relaxed);
    report.rejected_forbidden = counters.forbidden.load(Ordering::Relaxed);
    report.rejected_noncanonical = counters.noncanonical.load(Ordering::Relaxed);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Visits one representative of every isomorphism class satisfying `q`, by
/// ascending order and in a fixed order within each order.
pub fn enumerate_graphs(q: &EnumerationQuery, mut visitor: impl FnMut(&Graph)) -> Result<EnumerationReport, EnumerateError> {
    run_levels(q, |_, graphs| {
        graphs.iter().for_each(&mut visitor);
        ControlFlow::Continue(())
    })
}

/// All emitted representatives.
pub fn collect_graphs(q: &EnumerationQuery) -> Result<Vec<Graph>, EnumerateError> {
    let mut out = Vec::new();
    enumerate_graphs(q, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Applies `f` to every emitted graph in parallel and keeps the `Some`
/// results, in visit order.
pub fn enumerate_map<T: Send>(
    q: &EnumerationQuery,
    f: impl Fn(&Graph) -> Option<T> + Sync,
) -> Result<(Vec<T>, EnumerationReport), EnumerateError> {
    let mut out = Vec::new();
    let report = run_levels(q, |_, graphs| {
        let found: Vec<T> = graphs.par_iter().filter_map(&f).collect();
        out.extend(found);
        ControlFlow::Continue(())
    })?;
    Ok((out, report))
}

/// Like [`enumerate_map`], but stops after the first order at which `f`
/// produced anything and returns the first result of that order.
pub fn enumerate_find<T: Send>(
    q: &EnumerationQuery,
    f: impl Fn(&Graph) -> Option<T> + Sync,
) -> Result<(Option<T>, EnumerationReport), EnumerateError> {
    let mut hit = None;
    let report = run_levels(q, |_, graphs| {
        let found: Vec<T> = graphs.par_iter().filter_map(&f).collect();
        match found.into_iter().next() {
            Some(t) => {
                hit = Some(t);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    })?;
    Ok((hit, report))
}

/// Runs `op` on a dedicated pool of `workers` threads (0 = default pool).
pub fn with_workers<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        return op();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_free;
    use std::collections::BTreeSet;

    /// All graphs on exactly `n` vertices, deduplicated by canonical form.
    fn brute_force(n: usize, keep: impl Fn(&Graph) -> bool) -> BTreeSet<CanonicalForm> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..(1 << pairs.len()))
            .filter_map(|mask| {
                let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                let g = Graph::build(n, &edges).unwrap();
                keep(&g).then(|| canonical_form(&g))
            })
            .collect()
    }

    fn generated(q: &EnumerationQuery, n: usize) -> BTreeSet<CanonicalForm> {
        let mut out = BTreeSet::new();
        let mut count = 0;
        enumerate_graphs(q, |g| {
            if g.order() == n {
                count += 1;
                out.insert(canonical_form(g));
            }
        })
        .unwrap();
        assert_eq!(count, out.len(), "duplicate isomorphism class emitted");
        out
    }

    #[test]
    fn class_counts_without_constraints() {
        let mut counts = vec![0u64; 8];
        enumerate_graphs(&EnumerationQuery::new(7), |g| counts[g.order()] += 1).unwrap();
        assert_eq!(counts, vec![0, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn matches_brute_force_up_to_six() {
        let claw = claw();
        let p4 = Graph::path(4).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let queries: Vec<(EnumerationQuery, Box<dyn Fn(&Graph) -> bool>)> = vec![
            (EnumerationQuery::new(6), Box::new(|_: &Graph| true)),
            (
                EnumerationQuery::new(6).forbid(claw.clone()).connected(),
                Box::new(move |g: &Graph| g.is_connected().unwrap() && is_free(g, std::slice::from_ref(&claw))),
            ),
            (
                EnumerationQuery::new(6).forbid(p4.clone()).forbid(c4.clone()).min_alpha(2),
                Box::new(move |g: &Graph| is_free(g, &[p4.clone(), c4.clone()]) && g.independence_number() >= 2),
            ),
        ];
        for (q, keep) in &queries {
            for n in 1..=6 {
                assert_eq!(generated(q, n), brute_force(n, keep), "order {n}");
            }
        }
    }

    #[test]
    fn claw_fast_path_matches_pattern_search() {
        let claw_p = Pattern::new(&claw());
        for g in collect_graphs(&EnumerationQuery::new(6)).unwrap() {
            let n = g.order();
            for s in 0..(1u64 << n) {
                let child = g.add_vertex(VertexSet(s)).unwrap();
                assert_eq!(claw_through_new_vertex(g.rows(), s), claw_p.embeds_through(&child, n));
            }
        }
    }

    #[test]
    fn determinism_and_early_stop() {
        let q = EnumerationQuery::new(7).forbid(claw()).connected().min_alpha(3);
        let a: Vec<Graph> = collect_graphs(&q).unwrap();
        let b: Vec<Graph> = collect_graphs(&q).unwrap();
        assert_eq!(a, b);
        let (hit, report) = enumerate_find(&q, |g| (g.order() >= 6).then(|| g.clone())).unwrap();
        assert_eq!(hit.unwrap().order(), 6);
        assert_eq!(report.per_order.len(), 6);
        assert!(matches!(
            collect_graphs(&EnumerationQuery::new(13)),
            Err(EnumerateError::Envelope { .. })
        ));
    }

    #[test]
    fn odd_cycle_filter() {
        assert!(is_odd_cycle(&Graph::cycle(9).unwrap()));
        assert!(!is_odd_cycle(&Graph::cycle(8).unwrap()));
        let two_triangles = Graph::disjoint_union(&[Graph::cycle(3).unwrap(), Graph::cycle(3).unwrap()]).unwrap();
        assert!(!is_odd_cycle(&two_triangles));
        let q = EnumerationQuery::new(5).connected().exclude_odd_cycles().forbid(Graph::cycle(3).unwrap());
        assert!(collect_graphs(&q).unwrap().iter().all(|g| !is_odd_cycle(g)));
    }
}
