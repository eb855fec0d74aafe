//! Infinite witness families, cycle inflations and cycle attachments.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, Catalog, CatalogError};
use crate::classify::FamilyId;
use crate::graph::{Graph, GraphError, VertexSet, MAX_ORDER};
use crate::holes::{claw, find_induced_cycle, find_odd_hole, is_chordless_cycle};
use crate::iso::contains_induced;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("cycle length must be odd and at least 9, got {0}")]
    CycleLength(usize),
    #[error("invalid inflation: {0}")]
    Inflation(String),
    #[error("base graph {0} has no distinguished vertex")]
    NoDistinguished(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    /// C_ℓ plus a vertex on an edge.
    F1 { ell: usize },
    /// C_ℓ plus a vertex on three consecutive vertices.
    F2 { ell: usize },
    /// Base graph plus `t` true twins of its distinguished vertex.
    F3 { t: usize },
    F4 { t: usize },
    Inflation { k: usize, multiplicities: Vec<usize> },
}

impl FamilySpec {
    /// The `index`-th member (from 0) of a family: ℓ = 9, 11, … or t = 0, 1, ….
    pub fn member(id: FamilyId, index: usize) -> FamilySpec {
        match id {
            FamilyId::F1 => FamilySpec::F1 { ell: 9 + 2 * index },
            FamilyId::F2 => FamilySpec::F2 { ell: 9 + 2 * index },
            FamilyId::F3 => FamilySpec::F3 { t: index },
            FamilyId::F4 => FamilySpec::F4 { t: index },
        }
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    build_family_in(catalog::standard(), spec)
}

pub fn build_family_in(cat: &Catalog, spec: &FamilySpec) -> Result<Graph, FamilyError> {
    match spec {
        FamilySpec::F1 { ell } | FamilySpec::F2 { ell } => {
            if *ell < 9 || ell % 2 == 0 {
                return Err(FamilyError::CycleLength(*ell));
            }
            let span = if matches!(spec, FamilySpec::F1 { .. }) { 2 } else { 3 };
            let attach: VertexSet = (0..span).collect();
            Ok(Graph::cycle(*ell)?.add_vertex(attach)?)
        }
        FamilySpec::F3 { t } | FamilySpec::F4 { t } => {
            let name = if matches!(spec, FamilySpec::F3 { .. }) { "F3" } else { "F4" };
            let entry = cat.get(name).ok_or_else(|| CatalogError::UnknownName(name.into()))?;
            let v = entry
                .distinguished()
                .ok_or_else(|| FamilyError::NoDistinguished(name.into()))?;
            let mut g = entry.graph.clone();
            for _ in 0..*t {
                g = add_true_twin(&g, v)?;
            }
            Ok(g)
        }
        FamilySpec::Inflation { k, multiplicities } => inflate_cycle(*k, multiplicities),
    }
}

/// Adds a vertex adjacent exactly to `v` and its neighbours.
pub fn add_true_twin(g: &Graph, v: usize) -> Result<Graph, GraphError> {
    let mut s = g.neighbors(v);
    s.insert(v);
    g.add_vertex(s)
}

/// Classes Q_1..Q_k of the given sizes, each a clique, consecutive classes
/// (cyclically) completely joined.
pub fn inflate_cycle(k: usize, multiplicities: &[usize]) -> Result<Graph, FamilyError> {
    if k < 5 {
        return Err(FamilyError::Inflation(format!("k = {k} < 5")));
    }
    if multiplicities.len() != k {
        return Err(FamilyError::Inflation(format!("{} multiplicities for k = {k}", multiplicities.len())));
    }
    if multiplicities.contains(&0) {
        return Err(FamilyError::Inflation("multiplicities must be positive".into()));
    }
    let total: usize = multiplicities.iter().sum();
    if total > MAX_ORDER {
        return Err(FamilyError::Inflation(format!("total {total} exceeds {MAX_ORDER}")));
    }
    let mut class = Vec::with_capacity(total);
    for (i, &m) in multiplicities.iter().enumerate() {
        class.extend(std::iter::repeat_n(i, m));
    }
    let mut edges = Vec::new();
    for u in 0..total {
        for v in u + 1..total {
            let d = (class[v] + k - class[u]) % k;
            if d == 0 || d == 1 || d == k - 1 {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::build(total, &edges)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inflation {
    pub k: usize,
    pub multiplicities: Vec<usize>,
}

/// Lexicographically least rotation or reflection.
pub fn canonical_multiplicities(m: &[usize]) -> Vec<usize> {
    let k = m.len();
    let mut best = m.to_vec();
    for r in 0..k {
        let rot: Vec<usize> = (0..k).map(|i| m[(i + r) % k]).collect();
        let rev: Vec<usize> = (0..k).map(|i| m[(r + k - i) % k]).collect();
        best = best.min(rot).min(rev);
    }
    best
}

/// Recognizes inflations of C_k, k ≥ 5: the true-twin quotient must be
/// C_k. Classes of true twins are cliques completely joined to each other
/// or not at all, so the quotient determines the graph.
pub fn recognize_inflation(g: &Graph) -> Option<Inflation> {
    let n = g.order();
    if n < 5 {
        return None;
    }
    let closed: Vec<u64> = (0..n).map(|v| g.neighbors(v).bits() | 1u64 << v).collect();
    let mut reps: Vec<u64> = Vec::new();
    let mut class_of = vec![0usize; n];
    for v in 0..n {
        class_of[v] = match reps.iter().position(|&r| r == closed[v]) {
            Some(i) => i,
            None => {
                reps.push(closed[v]);
                reps.len() - 1
            }
        };
    }
    let k = reps.len();
    if k < 5 {
        return None;
    }
    let mut members = vec![VertexSet::EMPTY; k];
    for v in 0..n {
        members[class_of[v]].insert(v);
    }
    // Quotient adjacency: class i sees class j iff a representative does.
    let quotient: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let rep = members[i].first().expect("classes are non-empty");
            (0..k).filter(|&j| j != i && g.has_edge(rep, members[j].first().unwrap())).collect()
        })
        .collect();
    if quotient.iter().any(|nb| nb.len() != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = if quotient[cur][0] != prev { quotient[cur][0] } else { quotient[cur][1] };
        if next == 0 {
            break;
        }
        if order.len() == k {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != k {
        return None;
    }
    let m: Vec<usize> = order.iter().map(|&c| members[c].len()).collect();
    Some(Inflation {
        k,
        multiplicities: canonical_multiplicities(&m),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AttachmentType {
    K2,
    P3,
    P4,
    C5,
    #[serde(rename = "2K2")]
    TwoK2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Attachment {
    Allowed { kind: AttachmentType },
    /// Outside the allowed set, in a host containing a claw.
    Outside { induced: String },
    /// Outside the allowed set in a claw-free host.
    Violation { induced: String },
}

/// Cyclic order of a vertex set inducing a cycle, if it does.
pub(crate) fn cycle_order(g: &Graph, c: VertexSet) -> Option<Vec<usize>> {
    let start = c.first()?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let nb = g.neighbors(cur).intersection(c);
        if nb.len() != 2 {
            return None;
        }
        let next = nb.iter().find(|&u| u != prev)?;
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > c.len() {
            return None;
        }
    }
    (order.len() == c.len() && is_chordless_cycle(g, &order)).then_some(order)
}

/// Names the graph induced on `s` ⊆ C by its path components, e.g. `K2`,
/// `P3`, `2K2`, `K1uP3`; the whole cycle is `C<len>`.
fn describe_on_cycle(order: &[usize], s: VertexSet) -> (Vec<usize>, String) {
    let l = order.len();
    if s.len() == l {
        return (vec![l], format!("C{l}"));
    }
    let on: Vec<bool> = order.iter().map(|&v| s.contains(v)).collect();
    let start = (0..l).find(|&i| !on[i]).expect("some cycle vertex is off");
    let mut runs = Vec::new();
    let mut run = 0;
    for i in 1..=l {
        if on[(start + i) % l] {
            run += 1;
        } else if run > 0 {
            runs.push(run);
            run = 0;
        }
    }
    runs.sort_unstable();
    let name = |r: usize| match r {
        1 => "K1".to_string(),
        2 => "K2".to_string(),
        r => format!("P{r}"),
    };
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < runs.len() {
        let j = runs[i..].iter().take_while(|&&r| r == runs[i]).count();
        parts.push(if j > 1 { format!("{j}{}", name(runs[i])) } else { name(runs[i]) });
        i += j;
    }
    (runs, parts.join("u"))
}

/// Classifies `N(x) ∩ C` for a vertex `x` outside an induced cycle `C` of
/// length at least 5.
pub fn attachment_profile(g: &Graph, c: VertexSet, x: usize) -> Result<Attachment, FamilyError> {
    let order = cycle_order(g, c).ok_or_else(|| FamilyError::Precondition("C does not induce a cycle".into()))?;
    if order.len() < 5 {
        return Err(FamilyError::Precondition("C is shorter than 5".into()));
    }
    if x >= g.order() || c.contains(x) {
        return Err(FamilyError::Precondition("x must be a vertex outside C".into()));
    }
    let s = g.neighbors(x).intersection(c);
    if s.is_empty() {
        return Err(FamilyError::Precondition("x has no neighbour in C".into()));
    }
    let l = order.len();
    let (runs, induced) = describe_on_cycle(&order, s);
    let kind = if s.len() == l {
        (l == 5).then_some(AttachmentType::C5)
    } else {
        match runs.as_slice() {
            [2] => Some(AttachmentType::K2),
            [3] => Some(AttachmentType::P3),
            [4] => Some(AttachmentType::P4),
            [2, 2] if l >= 6 => Some(AttachmentType::TwoK2),
            _ => None,
        }
    };
    Ok(match kind {
        Some(kind) => Attachment::Allowed { kind },
        None if contains_induced(g, &claw()).is_some() => Attachment::Outside { induced },
        None => Attachment::Violation { induced },
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub failures: Vec<String>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Claw-free, connected, α ≥ 4, an odd hole, and free of the family list.
pub fn check_family_properties(g: &Graph, id: FamilyId) -> FamilyCheck {
    check_family_properties_in(catalog::standard(), g, id)
}

pub fn check_family_properties_in(cat: &Catalog, g: &Graph, id: FamilyId) -> FamilyCheck {
    let mut failures = Vec::new();
    if contains_induced(g, &claw()).is_some() {
        failures.push("contains K_1_3".to_string());
    }
    if g.order() == 0 || !g.is_connected().unwrap_or(false) {
        failures.push("not connected".to_string());
    }
    if g.independence_number() < 4 {
        failures.push("independence number below 4".to_string());
    }
    if find_odd_hole(g).is_none() {
        failures.push("no odd hole".to_string());
    }
    for name in id.free_of() {
        match cat.named(name) {
            Ok(p) if contains_induced(g, &p).is_some() => failures.push(format!("contains {name}")),
            Ok(_) => {}
            Err(e) => failures.push(e.to_string()),
        }
    }
    FamilyCheck { failures }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum BullObservation {
    /// A hypothesis fails; names the first failing one.
    Vacuous { reason: String },
    Holds { cycle_length: usize, inflation: Inflation },
    Violation { cycle_length: usize },
}

/// Connected, claw-free, B_{1,p}-free with an induced C_k, k ≥ 2p + 3,
/// must be an inflation of that C_k.
pub fn observation_bull_check(g: &Graph, p: usize) -> Result<BullObservation, FamilyError> {
    if p < 2 {
        return Err(FamilyError::Precondition(format!("p = {p} < 2")));
    }
    let vacuous = |r: &str| Ok(BullObservation::Vacuous { reason: r.to_string() });
    if g.order() == 0 || !g.is_connected()? {
        return vacuous("not connected");
    }
    if contains_induced(g, &claw()).is_some() {
        return vacuous("not K_1_3-free");
    }
    if contains_induced(g, &catalog::named_with("B", &[1, p])?).is_some() {
        return vacuous("not B_1_p-free");
    }
    let Some(cycle) = (2 * p + 3..=g.order()).find_map(|l| find_induced_cycle(g, l)) else {
        return vacuous("no induced cycle of length at least 2p+3");
    };
    let k = cycle.len();
    Ok(match recognize_inflation(g) {
        Some(inf) if inf.k == k => BullObservation::Holds {
            cycle_length: k,
            inflation: inf,
        },
        _ => BullObservation::Violation { cycle_length: k },
    })
}
