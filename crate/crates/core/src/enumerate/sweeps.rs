//! Exhaustive verification sweeps.
//!
//! Each sweep enumerates a class up to some order and reports the first
//! counterexample in visit order (smallest order first), together with
//! counts that show how much was actually covered.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use super::{enumerate_map, EnumerateError, EnumerationQuery};
use crate::catalog::{self, Catalog, CatalogError};
use crate::classify::{
    family_for_witness, member_of_class_g, unavoidable_witness_in, verdict_in, ClassifyError, Outcome,
    FINITE_CASE, SCRIPT_X,
};
use crate::families::{attachment_profile, build_family_in, cycle_order, recognize_inflation, Attachment, FamilySpec};
use crate::format::to_graph6;
use crate::graph::{bit, Graph, VertexSet};
use crate::holes::{claw, has_induced_cycle, induced_cycles, is_perfect};
use crate::iso::{are_isomorphic, canonical_form, contains_induced, CanonicalForm, Pattern};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("invalid context: {0}")]
    Context(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub graph6: String,
    pub order: usize,
    pub note: String,
    #[serde(skip)]
    pub graph: Graph,
}

impl Finding {
    pub fn new(graph: &Graph, note: impl Into<String>) -> Self {
        Finding {
            graph6: to_graph6(graph),
            order: graph.order(),
            note: note.into(),
            graph: graph.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub sweep: String,
    pub n_max: usize,
    /// Graphs examined.
    pub checked: u64,
    pub counterexample: Option<Finding>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Finding>,
    pub stats: BTreeMap<String, u64>,
    pub wall_time_ms: u64,
}

impl SweepReport {
    fn new(sweep: impl Into<String>, n_max: usize) -> Self {
        SweepReport {
            sweep: sweep.into(),
            n_max,
            checked: 0,
            counterexample: None,
            findings: Vec::new(),
            stats: BTreeMap::new(),
            wall_time_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn stat(&mut self, key: &str, value: u64) {
        self.stats.insert(key.to_string(), value);
    }

    fn finish(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_millis() as u64;
        self
    }
}

fn patterns(cat: &Catalog, names: &[&str]) -> Result<Vec<Graph>, CatalogError> {
    names.iter().map(|n| cat.named(n)).collect()
}

/// The class of the finite case: connected, claw-free, 2K1uK3-free, α ≥ 4,
/// not an odd cycle.
fn exception_class(cat: &Catalog, n_max: usize) -> Result<EnumerationQuery, CatalogError> {
    Ok(EnumerationQuery::new(n_max)
        .forbid(claw())
        .forbid(cat.named(FINITE_CASE)?)
        .connected()
        .min_alpha(4)
        .exclude_odd_cycles())
}

/// All imperfect graphs of the finite case up to `n_max` vertices, by order.
pub fn derive_exceptions(n_max: usize) -> Result<Vec<Graph>, SweepError> {
    derive_exceptions_in(catalog::standard(), n_max)
}

pub fn derive_exceptions_in(cat: &Catalog, n_max: usize) -> Result<Vec<Graph>, SweepError> {
    let q = exception_class(cat, n_max)?;
    let (found, _) = enumerate_map(&q, |g| (!is_perfect(g).perfect).then(|| g.clone()))?;
    Ok(found)
}

/// Index of the first catalog exception isomorphic to each graph.
pub fn match_exceptions(cat: &Catalog, graphs: &[Graph]) -> Vec<Option<usize>> {
    let known = cat.exceptions();
    graphs
        .iter()
        .map(|g| known.iter().find(|(_, e)| are_isomorphic(g, e)).map(|(i, _)| *i))
        .collect()
}

/// Among connected claw-free graphs with α ≥ 4: H1-free graphs have no
/// induced C7, and {H2, …, H7}-free graphs have no induced C5. Hosts missing
/// from `cat` are simply not forbidden, which is how the mutation runs work.
pub fn verify_lemma5(n_max: usize) -> Result<SweepReport, SweepError> {
    verify_lemma5_in(catalog::standard(), n_max)
}

pub fn verify_lemma5_in(cat: &Catalog, n_max: usize) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let compile = |names: &[&str]| -> Vec<Pattern> {
        names.iter().filter_map(|n| cat.get(n)).map(|e| Pattern::new(&e.graph)).collect()
    };
    let c7_hosts = compile(&["H1"]);
    let c5_hosts = compile(&["H2", "H3", "H4", "H5", "H6", "H7"]);
    let q = EnumerationQuery::new(n_max).forbid(claw()).connected().min_alpha(4);
    // (has C7, has C5, counterexample note)
    let (rows, enumeration) = enumerate_map(&q, |g| {
        let c7 = has_induced_cycle(g, 7);
        let c5 = has_induced_cycle(g, 5);
        let bad = if c7 && !c7_hosts.iter().any(|p| p.embeds_in(g)) {
            Some("induced C7 in an H1-free graph")
        } else if c5 && !c5_hosts.iter().any(|p| p.embeds_in(g)) {
            Some("induced C5 in an {H2..H7}-free graph")
        } else {
            None
        };
        (c7 || c5).then(|| (c7, c5, bad.map(|b| Finding::new(g, b))))
    })?;
    let mut report = SweepReport::new("lemma5", n_max);
    report.checked = enumeration.emitted;
    report.stat("c7_hosts", rows.iter().filter(|r| r.0).count() as u64);
    report.stat("c5_hosts", rows.iter().filter(|r| r.1).count() as u64);
    let bad: Vec<Finding> = rows.into_iter().filter_map(|r| r.2).collect();
    report.stat("counterexamples", bad.len() as u64);
    report.counterexample = bad.into_iter().next();
    Ok(report.finish(start))
}

/// Every connected {claw, 2K1uK3}-free graph with α ≥ 4 that is not one of
/// the catalog exceptions has no induced C5 or C7.
pub fn verify_lemma6(n_max: usize) -> Result<SweepReport, SweepError> {
    let cat = catalog::standard();
    let exceptions: Vec<Graph> = cat.exceptions().into_iter().map(|(_, g)| g).collect();
    verify_lemma6_with(cat, &exceptions, n_max)
}

pub fn verify_lemma6_with(cat: &Catalog, exceptions: &[Graph], n_max: usize) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let known: HashSet<CanonicalForm> = exceptions.iter().map(canonical_form).collect();
    let q = EnumerationQuery::new(n_max)
        .forbid(claw())
        .forbid(cat.named(FINITE_CASE)?)
        .connected()
        .min_alpha(4);
    let (rows, enumeration) = enumerate_map(&q, |g| {
        if !(has_induced_cycle(g, 5) || has_induced_cycle(g, 7)) {
            return None;
        }
        let listed = known.contains(&canonical_form(g));
        Some((!listed).then(|| Finding::new(g, "induced C5 or C7 outside the exception list")))
    })?;
    let mut report = SweepReport::new("lemma6", n_max);
    report.checked = enumeration.emitted;
    report.stat("cycle_hosts", rows.len() as u64);
    report.stat("exceptions_listed", known.len() as u64);
    let bad: Vec<Finding> = rows.into_iter().flatten().collect();
    report.stat("counterexamples", bad.len() as u64);
    report.counterexample = bad.into_iter().next();
    Ok(report.finish(start))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum H6Type {
    A,
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H6ExtensionType {
    /// `None` if the orbit matches none of the labelled types.
    pub kind: Option<H6Type>,
    pub neighborhoods: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H6PairOption {
    pub first: Option<H6Type>,
    pub second: Option<H6Type>,
    pub adjacent: bool,
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H6Extensions {
    pub automorphisms: usize,
    pub orbits: Vec<H6ExtensionType>,
    /// Two-vertex attachments up to automorphisms of H6 and swapping.
    pub pair_options: Vec<H6PairOption>,
    /// The same, counted up to isomorphism of the resulting graph.
    pub pair_classes: Vec<String>,
}

/// Every automorphism of a small graph, by backtracking.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, perm: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) {
        let v = perm.len();
        if v == g.order() {
            out.push(perm.clone());
            return;
        }
        for w in 0..g.order() {
            if used & bit(w) != 0 || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(perm[u], w)) {
                perm.push(w);
                extend(g, perm, used | bit(w), out);
                perm.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::with_capacity(g.order()), 0, &mut out);
    out
}

fn image(s: VertexSet, perm: &[usize]) -> VertexSet {
    s.iter().map(|v| perm[v]).collect()
}

/// Non-empty neighbourhoods in H6 that keep H6 + x free of the claw and
/// 2K1uK3, grouped into orbits under Aut(H6) and named by the H6 labels;
/// then all valid ways of adding two such vertices.
pub fn h6_extension_orbits() -> Result<H6Extensions, SweepError> {
    h6_extension_orbits_in(catalog::standard())
}

pub fn h6_extension_orbits_in(cat: &Catalog) -> Result<H6Extensions, SweepError> {
    let entry = cat
        .get("H6")
        .ok_or_else(|| CatalogError::UnknownName("H6".into()))?;
    let h = &entry.graph;
    let n = h.order();
    let forbidden = [Pattern::new(&claw()), Pattern::new(&cat.named(FINITE_CASE)?)];
    let free_through = |g: &Graph, vs: &[usize]| !forbidden.iter().any(|p| vs.iter().any(|&v| p.embeds_through(g, v)));
    let valid: Vec<VertexSet> = (1u64..1 << n)
        .map(|b| (0..n).filter(|&v| b & bit(v) != 0).collect::<VertexSet>())
        .filter(|&s| free_through(&h.add_vertex(s).expect("order fits"), &[n]))
        .collect();
    let autos = automorphisms(h);

    let labels = entry.labels();
    let l = |k: &str| labels.get(k).copied();
    let typed = |names: &[&str]| -> Option<VertexSet> { names.iter().map(|k| l(k)).collect::<Option<Vec<_>>>().map(|v| VertexSet::from_slice(&v)) };
    let all = VertexSet::full(n);
    let type_sets: Vec<(H6Type, VertexSet)> = [
        (H6Type::A, typed(&["i1", "i3", "v2'"])),
        (H6Type::B, typed(&["i2", "i3"]).map(|s| all.difference(s))),
        (H6Type::C, typed(&["i2", "i3", "v2'", "v1", "v1'"])),
    ]
    .into_iter()
    .filter_map(|(t, s)| s.map(|s| (t, s)))
    .collect();

    let mut orbit_of: BTreeMap<VertexSet, usize> = BTreeMap::new();
    let mut orbits: Vec<H6ExtensionType> = Vec::new();
    for &s in &valid {
        if orbit_of.contains_key(&s) {
            continue;
        }
        let members: Vec<VertexSet> = {
            let set: std::collections::BTreeSet<VertexSet> = autos.iter().map(|p| image(s, p)).collect();
            set.into_iter().collect()
        };
        for &m in &members {
            orbit_of.insert(m, orbits.len());
        }
        let kind = type_sets.iter().find(|(_, t)| members.contains(t)).map(|(k, _)| *k);
        orbits.push(H6ExtensionType {
            kind,
            neighborhoods: members.iter().map(|m| m.to_vec()).collect(),
        });
    }

    let mut seen: HashSet<(VertexSet, VertexSet, bool)> = HashSet::new();
    let mut pair_options = Vec::new();
    let mut classes: Vec<Graph> = Vec::new();
    for (i, &a) in valid.iter().enumerate() {
        for &b in &valid[i..] {
            for adjacent in [false, true] {
                if seen.contains(&(a, b, adjacent)) {
                    continue;
                }
                let mut g = h.add_vertex(a).expect("order fits");
                let mut nb = b;
                if adjacent {
                    nb.insert(n);
                }
                g = g.add_vertex(nb).expect("order fits");
                if !free_through(&g, &[n, n + 1]) {
                    continue;
                }
                for p in &autos {
                    let (pa, pb) = (image(a, p), image(b, p));
                    seen.insert((pa, pb, adjacent));
                    seen.insert((pb, pa, adjacent));
                }
                let kind = |s: VertexSet| orbits[orbit_of[&s]].kind;
                pair_options.push(H6PairOption {
                    first: kind(a),
                    second: kind(b),
                    adjacent,
                    graph6: to_graph6(&g),
                });
                if !classes.iter().any(|c| are_isomorphic(c, &g)) {
                    classes.push(g);
                }
            }
        }
    }
    Ok(H6Extensions {
        automorphisms: autos.len(),
        orbits,
        pair_options,
        pair_classes: classes.iter().map(to_graph6).collect(),
    })
}

/// An induced cycle `C` of a host, with a maximum independent set `I`.
/// The cross-edge count is recomputed from the host on every call.
#[derive(Clone, Debug)]
pub struct CycleContext {
    host: Graph,
    cycle: VertexSet,
    independent: VertexSet,
}

impl CycleContext {
    pub fn new(host: Graph, cycle: VertexSet, independent: VertexSet) -> Result<Self, SweepError> {
        let order = cycle_order(&host, cycle).ok_or_else(|| SweepError::Context("C does not induce a cycle".into()))?;
        if order.len() < 4 {
            return Err(SweepError::Context("C is too short".into()));
        }
        if !independent.is_subset(host.vertices()) || !host.is_independent(independent) {
            return Err(SweepError::Context("I is not independent".into()));
        }
        if independent.len() != host.independence_number() {
            return Err(SweepError::Context("I is not maximum".into()));
        }
        Ok(CycleContext { host, cycle, independent })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn cycle(&self) -> VertexSet {
        self.cycle
    }

    pub fn independent(&self) -> VertexSet {
        self.independent
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// N(C): vertices outside C with a neighbour on C.
    pub fn neighborhood(&self) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for c in self.cycle.iter() {
            out = out.union(self.host.neighbors(c));
        }
        out.difference(self.cycle)
    }

    /// Edges between C and I ∖ C.
    pub fn cross_edges(&self) -> usize {
        let outside = self.independent.difference(self.cycle);
        self.cycle.iter().map(|c| self.host.neighbors(c).intersection(outside).len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub e: usize,
    pub len: usize,
    /// 2ℓ − 4|I ∩ C|.
    pub proof_bound: i64,
    /// 2ℓ − 4|I ∩ (C ∪ N(C))| + 4|I ∩ N(C)|.
    pub statement_bound: i64,
    pub holds: bool,
}

/// Checks e ≤ 2ℓ − 4|I ∩ C| and its equivalent longer form. The host must
/// be claw-free.
pub fn verify_edge_bound(ctx: &CycleContext) -> Result<EdgeBound, SweepError> {
    if contains_induced(ctx.host(), &claw()).is_some() {
        return Err(SweepError::Context("host contains K_1_3".into()));
    }
    Ok(edge_bound(ctx))
}

fn edge_bound(ctx: &CycleContext) -> EdgeBound {
    let l = ctx.len() as i64;
    let i = ctx.independent();
    let on = i.intersection(ctx.cycle()).len() as i64;
    let near = i.intersection(ctx.neighborhood()).len() as i64;
    let around = i.intersection(ctx.cycle().union(ctx.neighborhood())).len() as i64;
    let proof_bound = 2 * l - 4 * on;
    let statement_bound = 2 * l - 4 * around + 4 * near;
    let e = ctx.cross_edges();
    EdgeBound {
        e,
        len: ctx.len(),
        proof_bound,
        statement_bound,
        holds: proof_bound == statement_bound && (e as i64) <= proof_bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum ClaimCheck {
    Pass,
    Violation { induced: String },
}

/// In a claw-free host, a vertex `x` with neighbours both on an induced
/// cycle `C` (length ≥ 5) and outside C ∪ N(C) sees exactly an edge of C.
pub fn verify_claim_cd2(host: &Graph, c: VertexSet, x: usize) -> Result<ClaimCheck, SweepError> {
    if contains_induced(host, &claw()).is_some() {
        return Err(SweepError::Context("host contains K_1_3".into()));
    }
    let order = cycle_order(host, c).ok_or_else(|| SweepError::Context("C does not induce a cycle".into()))?;
    if order.len() < 5 {
        return Err(SweepError::Context("C is shorter than 5".into()));
    }
    if x >= host.order() || c.contains(x) {
        return Err(SweepError::Context("x must be a vertex outside C".into()));
    }
    claim_cd2(host, c, x).ok_or_else(|| SweepError::Context("x needs a neighbour on C and one outside C ∪ N(C)".into()))
}

fn claim_cd2(host: &Graph, c: VertexSet, x: usize) -> Option<ClaimCheck> {
    let mut closed = c;
    for v in c.iter() {
        closed = closed.union(host.neighbors(v));
    }
    let nx = host.neighbors(x);
    let on = nx.intersection(c);
    if on.is_empty() || nx.difference(closed).is_empty() {
        return None;
    }
    let is_k2 = on.len() == 2 && {
        let v = on.to_vec();
        host.has_edge(v[0], v[1])
    };
    Some(if is_k2 {
        ClaimCheck::Pass
    } else {
        ClaimCheck::Violation {
            induced: format!("{} vertices", on.len()),
        }
    })
}

fn maximum_independent_sets(g: &Graph) -> Vec<VertexSet> {
    fn rec(g: &Graph, cand: u64, cur: u64, need: usize, out: &mut Vec<VertexSet>) {
        if need == 0 {
            out.push((0..g.order()).filter(|&v| cur & bit(v) != 0).collect());
            return;
        }
        if (cand.count_ones() as usize) < need {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        rec(g, cand & !bit(v) & !g.row(v), cur | bit(v), need - 1, out);
        rec(g, cand & !bit(v), cur, need, out);
    }
    let mut out = Vec::new();
    rec(g, g.vertices().bits(), 0, g.independence_number(), &mut out);
    out
}

#[derive(Default)]
struct CycleTally {
    contexts: u64,
    edge_violations: u64,
    cd2_checks: u64,
    cd2_violations: u64,
    attachments: u64,
    attachment_violations: u64,
    first: Option<Finding>,
}

/// Over all claw-free graphs up to `n_max` vertices, every induced C5 or C7,
/// every maximum independent set and every vertex next to the cycle: the
/// cross-edge bound, the edge-attachment claim and the attachment shapes.
pub fn verify_cycle_claims(n_max: usize) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let q = EnumerationQuery::new(n_max).forbid(claw());
    let (rows, enumeration) = enumerate_map(&q, |g| {
        let mut t = CycleTally::default();
        let flag = |t: &mut CycleTally, note: String| {
            if t.first.is_none() {
                t.first = Some(Finding::new(g, note));
            }
        };
        let sets = maximum_independent_sets(g);
        for len in [5, 7] {
            for cyc in induced_cycles(g, len) {
                let c = VertexSet::from_slice(&cyc);
                for &i in &sets {
                    let ctx = CycleContext {
                        host: g.clone(),
                        cycle: c,
                        independent: i,
                    };
                    t.contexts += 1;
                    let b = edge_bound(&ctx);
                    if !b.holds {
                        t.edge_violations += 1;
                        flag(&mut t, format!("edge bound fails on C{len}: e = {} > {}", b.e, b.proof_bound));
                    }
                }
                for x in g.vertices().difference(c).iter() {
                    if g.neighbors(x).intersection(c).is_empty() {
                        continue;
                    }
                    t.attachments += 1;
                    if let Ok(Attachment::Violation { induced }) = attachment_profile(g, c, x) {
                        t.attachment_violations += 1;
                        flag(&mut t, format!("attachment {induced} on C{len}"));
                    }
                    if let Some(check) = claim_cd2(g, c, x) {
                        t.cd2_checks += 1;
                        if let ClaimCheck::Violation { induced } = check {
                            t.cd2_violations += 1;
                            flag(&mut t, format!("edge-attachment claim fails on C{len}: {induced}"));
                        }
                    }
                }
            }
        }
        (t.contexts > 0).then_some(t)
    })?;
    let mut report = SweepReport::new("edge-bound", n_max);
    report.checked = enumeration.emitted;
    let sum = |f: fn(&CycleTally) -> u64| rows.iter().map(f).sum::<u64>();
    report.stat("cycle_hosts", rows.len() as u64);
    report.stat("contexts", sum(|t| t.contexts));
    report.stat("edge_bound_violations", sum(|t| t.edge_violations));
    report.stat("cd2_checks", sum(|t| t.cd2_checks));
    report.stat("cd2_violations", sum(|t| t.cd2_violations));
    report.stat("attachments", sum(|t| t.attachments));
    report.stat("attachment_violations", sum(|t| t.attachment_violations));
    report.counterexample = rows.into_iter().find_map(|t| t.first);
    Ok(report.finish(start))
}

/// Every graph on at most `n_max` vertices that is not an induced subgraph
/// of one of the six maximal graphs contains one of the fifteen.
pub fn verify_unavoidability(n_max: usize) -> Result<SweepReport, SweepError> {
    verify_unavoidability_in(catalog::standard(), n_max)
}

pub fn verify_unavoidability_in(cat: &Catalog, n_max: usize) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let maximal = patterns(cat, &[&SCRIPT_X[..], &[FINITE_CASE]].concat())?;
    let q = EnumerationQuery::new(n_max);
    let (rows, enumeration) = enumerate_map(&q, |x| {
        if maximal.iter().any(|m| contains_induced(m, x).is_some()) {
            return None;
        }
        Some(match unavoidable_witness_in(cat, x) {
            Ok(_) => None,
            Err(e) => Some(Finding::new(x, e.to_string())),
        })
    })?;
    let mut report = SweepReport::new("unavoidability", n_max);
    report.checked = enumeration.emitted;
    report.stat("infinite_case_graphs", rows.len() as u64);
    let bad: Vec<Finding> = rows.into_iter().flatten().collect();
    report.stat("counterexamples", bad.len() as u64);
    report.counterexample = bad.into_iter().next();
    Ok(report.finish(start))
}

/// For every X on at most `n_max` vertices in the infinite case: a witness
/// exists, and the first `members` graphs of its family are X-free, in the
/// class, and imperfect.
pub fn verify_family_pipeline(n_max: usize, members: usize) -> Result<SweepReport, SweepError> {
    verify_family_pipeline_in(catalog::standard(), n_max, members)
}

pub fn verify_family_pipeline_in(cat: &Catalog, n_max: usize, members: usize) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let maximal = patterns(cat, &[&SCRIPT_X[..], &[FINITE_CASE]].concat())?;
    let mut built: BTreeMap<(usize, usize), Graph> = BTreeMap::new();
    for (fi, id) in crate::classify::FamilyId::ALL.into_iter().enumerate() {
        for i in 0..members {
            built.insert((fi, i), build_family_in(cat, &FamilySpec::member(id, i)).map_err(|e| SweepError::Context(e.to_string()))?);
        }
    }
    let q = EnumerationQuery::new(n_max);
    let (rows, enumeration) = enumerate_map(&q, |x| {
        if maximal.iter().any(|m| contains_induced(m, x).is_some()) {
            return None;
        }
        let check = || -> Result<(), String> {
            let witness = unavoidable_witness_in(cat, x).map_err(|e| e.to_string())?;
            let (id, _) = family_for_witness(witness).map_err(|e| e.to_string())?;
            let fi = crate::classify::FamilyId::ALL.iter().position(|&f| f == id).expect("listed");
            for i in 0..members {
                let g = &built[&(fi, i)];
                let m = member_of_class_g(g, x);
                if !m.in_class {
                    return Err(format!("{id} member {i}: {}", m.failing_predicate.unwrap_or_default()));
                }
                match verdict_in(cat, g, x).map_err(|e| e.to_string())?.outcome {
                    Outcome::Imperfect(_) => {}
                    other => return Err(format!("{id} member {i}: outcome {}", other.name())),
                }
            }
            Ok(())
        };
        Some(check().err().map(|e| Finding::new(x, e)))
    })?;
    let mut report = SweepReport::new("families", n_max);
    report.checked = enumeration.emitted;
    report.stat("infinite_case_graphs", rows.len() as u64);
    report.stat("members_per_family", members as u64);
    let bad: Vec<Finding> = rows.into_iter().flatten().collect();
    report.stat("counterexamples", bad.len() as u64);
    report.counterexample = bad.into_iter().next();
    Ok(report.finish(start))
}

/// For each X of the all-perfect case, every class member up to `n_max`
/// vertices is perfect.
pub fn verify_case1(n_max: usize) -> Result<Vec<SweepReport>, SweepError> {
    let cat = catalog::standard();
    SCRIPT_X.iter().map(|name| verify_case1_for(name, &cat.named(name)?, n_max)).collect()
}

/// The same harness for an arbitrary X.
pub fn verify_case1_for(name: &str, x: &Graph, n_max: usize) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let q = EnumerationQuery::new(n_max)
        .forbid(claw())
        .forbid(x.clone())
        .connected()
        .min_alpha(4)
        .exclude_odd_cycles();
    let (bad, enumeration) = enumerate_map(&q, |g| {
        is_perfect(g)
            .certificate
            .map(|c| Finding::new(g, format!("{:?} of length {}", c.kind, c.len())))
    })?;
    let mut report = SweepReport::new(format!("case1:{name}"), n_max);
    report.checked = enumeration.emitted;
    report.stat("imperfect", bad.len() as u64);
    report.counterexample = bad.into_iter().next();
    Ok(report.finish(start))
}

/// Every connected {claw, B_1_2}-free graph with α ≥ 4 is perfect or an
/// inflation of an odd cycle of length at least 9. Odd cycles themselves
/// are kept.
pub fn verify_bull_theorem(n_max: usize) -> Result<SweepReport, SweepError> {
    verify_bull_theorem_with(&[catalog::named("B_1_2")?], n_max)
}

/// The same sweep with `extra` in place of B_1_2.
pub fn verify_bull_theorem_with(extra: &[Graph], n_max: usize) -> Result<SweepReport, SweepError> {
    let start = Instant::now();
    let q = EnumerationQuery::new(n_max)
        .forbid(claw())
        .forbid_all(extra.iter().cloned())
        .connected()
        .min_alpha(4);
    let (rows, enumeration) = enumerate_map(&q, |g| {
        if is_perfect(g).perfect {
            return None;
        }
        Some(match recognize_inflation(g) {
            Some(inf) if inf.k >= 9 && inf.k % 2 == 1 => Ok(Finding::new(g, format!("C{} inflation {:?}", inf.k, inf.multiplicities))),
            Some(inf) => Err(Finding::new(g, format!("imperfect C{} inflation", inf.k))),
            None => Err(Finding::new(g, "imperfect and not a cycle inflation")),
        })
    })?;
    let mut report = SweepReport::new("bull", n_max);
    report.checked = enumeration.emitted;
    report.stat("imperfect", rows.len() as u64);
    let (ok, bad): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| r.is_ok());
    report.findings = ok.into_iter().filter_map(Result::ok).collect();
    report.stat("counterexamples", bad.len() as u64);
    report.counterexample = bad.into_iter().filter_map(Result::err).next();
    Ok(report.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::from_graph6;

    #[test]
    fn small_exception_runs() {
        let eight = derive_exceptions(8).unwrap();
        assert_eq!(eight.len(), 1);
        assert!(are_isomorphic(&eight[0], &catalog::named("H6").unwrap()));
        let nine = derive_exceptions(9).unwrap();
        assert_eq!(nine.iter().map(Graph::order).collect::<Vec<_>>(), vec![8, 9, 9, 9]);
        let mut idx = match_exceptions(catalog::standard(), &nine);
        idx.sort();
        assert_eq!(idx, vec![Some(1), Some(2), Some(3), Some(4)]);
    }

    #[test]
    fn lemma5_small_and_mutated() {
        let r = verify_lemma5(8).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.stats["c7_hosts"] > 0);
        assert_eq!(verify_lemma5(7).unwrap().stats["c7_hosts"], 0);
        let weakened = catalog::standard().without("H6");
        let r = verify_lemma5_in(&weakened, 8).unwrap();
        let c = r.counterexample.unwrap();
        assert_eq!(c.order, 8);
        assert!(are_isomorphic(&c.graph, &catalog::named("H6").unwrap()));
    }

    #[test]
    fn lemma6_small_and_truncated() {
        assert!(verify_lemma6(9).unwrap().passed());
        let r = verify_lemma6(7).unwrap();
        assert!(r.passed());
        assert_eq!(r.stats["cycle_hosts"], 0);
        let cat = catalog::standard();
        let few: Vec<Graph> = cat.exceptions().into_iter().take(3).map(|(_, g)| g).collect();
        let c = verify_lemma6_with(cat, &few, 9).unwrap().counterexample.unwrap();
        assert!(are_isomorphic(&c.graph, &catalog::named("E4").unwrap()));
    }

    #[test]
    fn h6_orbits() {
        let ext = h6_extension_orbits().unwrap();
        assert_eq!(ext.automorphisms, 2);
        assert_eq!(ext.orbits.len(), 3);
        let kinds: Vec<_> = ext.orbits.iter().map(|o| o.kind).collect();
        assert!(kinds.contains(&Some(H6Type::A)) && kinds.contains(&Some(H6Type::B)) && kinds.contains(&Some(H6Type::C)));
        let b = ext.orbits.iter().find(|o| o.kind == Some(H6Type::B)).unwrap();
        assert!(b.neighborhoods.iter().any(|s| s.len() == 6));
        assert_eq!(ext.pair_options.len(), 3);
        assert_eq!(ext.pair_classes.len(), 2);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&Graph::cycle(5).unwrap()).len(), 10);
        assert_eq!(automorphisms(&Graph::complete(4).unwrap()).len(), 24);
        assert_eq!(automorphisms(&catalog::named("B").unwrap()).len(), 2);
    }

    #[test]
    fn edge_bound_examples() {
        let c9 = Graph::cycle(9).unwrap();
        let i = VertexSet::from_slice(&[0, 2, 4, 6]);
        let ctx = CycleContext::new(c9.clone(), c9.vertices(), i).unwrap();
        let b = verify_edge_bound(&ctx).unwrap();
        assert_eq!((b.e, b.proof_bound, b.statement_bound, b.holds), (0, 2, 2, true));

        let f1 = from_graph6(&to_graph6(&Graph::cycle(9).unwrap().add_vertex(VertexSet::from_slice(&[0, 1])).unwrap())).unwrap();
        let i = f1.max_independent_set();
        let ctx = CycleContext::new(f1.clone(), VertexSet::full(9), i).unwrap();
        assert!(verify_edge_bound(&ctx).unwrap().holds);

        assert!(CycleContext::new(c9.clone(), c9.vertices(), VertexSet::from_slice(&[0, 2])).is_err());
        assert!(CycleContext::new(c9.clone(), VertexSet::from_slice(&[0, 1, 2]), i).is_err());
        assert!(CycleContext::new(c9, VertexSet::full(9), VertexSet::from_slice(&[0, 1, 3, 5])).is_err());
    }

    #[test]
    fn cd2_examples() {
        // C9, x on the edge 0-1, w hanging off x.
        let g = Graph::cycle(9).unwrap().add_vertex(VertexSet::from_slice(&[0, 1])).unwrap();
        let g = g.add_vertex(VertexSet::singleton(9)).unwrap();
        assert_eq!(verify_claim_cd2(&g, VertexSet::full(9), 9).unwrap(), ClaimCheck::Pass);
        // On three consecutive vertices the same construction has a claw at x.
        let h = Graph::cycle(9).unwrap().add_vertex(VertexSet::from_slice(&[0, 1, 2])).unwrap();
        let h = h.add_vertex(VertexSet::singleton(9)).unwrap();
        assert!(verify_claim_cd2(&h, VertexSet::full(9), 9).is_err());
        // No neighbour beyond N(C).
        let k = Graph::cycle(9).unwrap().add_vertex(VertexSet::from_slice(&[0, 1])).unwrap();
        assert!(verify_claim_cd2(&k, VertexSet::full(9), 9).is_err());
    }

    #[test]
    fn cycle_claims_small() {
        let r = verify_cycle_claims(8).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.stats["cd2_checks"] > 0 && r.stats["attachments"] > 0);
    }

    #[test]
    fn unavoidability_and_mutation() {
        assert!(verify_unavoidability(6).unwrap().passed());
        let mutated = catalog::standard().with_override("B", catalog::named("B_1_2").unwrap());
        assert!(!verify_unavoidability_in(&mutated, 6).unwrap().passed());
    }

    #[test]
    fn case1_and_weakened() {
        for r in verify_case1(9).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        let b12 = catalog::named("B_1_2").unwrap();
        // Odd cycles are outside the class, so the first hit is a C9 inflation.
        let r = verify_case1_for("B_1_2", &b12, 10).unwrap();
        let c = r.counterexample.unwrap();
        assert_eq!(c.order, 10);
        assert_eq!(recognize_inflation(&c.graph).map(|i| i.k), Some(9));
    }

    #[test]
    fn bull_small() {
        let r = verify_bull_theorem(9).unwrap();
        assert!(r.passed());
        assert_eq!(r.findings.len(), 1);
        assert!(are_isomorphic(&r.findings[0].graph, &Graph::cycle(9).unwrap()));
        let r = verify_bull_theorem_with(&[], 8).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn pipeline_small() {
        let r = verify_family_pipeline(5, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.stats["infinite_case_graphs"] > 0);
    }
}
