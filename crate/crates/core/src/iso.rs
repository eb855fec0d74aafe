//! Induced-subgraph containment, isomorphism and canonical forms.
//!
//! Canonical labeling runs colour refinement to an equitable ordered
//! partition, then individualizes vertices of the first smallest
//! non-singleton cell, keeping the lexicographically smallest relabeled
//! adjacency matrix over all leaves. Automorphisms found from equal leaves
//! prune sibling branches in the same orbit of the pointwise stabilizer.

use std::fmt;

use crate::graph::{bit, low_mask, Graph, VertexSet};

/// Isomorphism-invariant byte string. Equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// A canonical labeling: `perm[v]` is the canonical position of vertex `v`.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub perm: Vec<usize>,
    pub form: CanonicalForm,
}

impl Labeling {
    /// Vertex placed at canonical position `pos`.
    pub fn vertex_at(&self, pos: usize) -> usize {
        self.perm.iter().position(|&p| p == pos).expect("perm is a bijection")
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    canonical_labeling_colored(g, &vec![0; g.order()])
}

/// Canonical labeling of a vertex-coloured graph. Isomorphisms must
/// preserve colours; the colour histogram is part of the form.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Labeling {
    let n = g.order();
    assert_eq!(colors.len(), n, "one colour per vertex");
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<u64> = palette
        .iter()
        .map(|&c| {
            (0..n)
                .filter(|&v| colors[v] == c)
                .fold(0u64, |acc, v| acc | bit(v))
        })
        .collect();

    let mut search = Search {
        adj: g.rows(),
        n,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut cells = cells;
    refine(search.adj, &mut cells);
    let mut fixed = Vec::new();
    search.descend(cells, &mut fixed);
    let (rows, perm) = search
        .best
        .map(|l| (l.rows, l.perm))
        .unwrap_or_default();

    let mut bytes = Vec::with_capacity(2 + palette.len() * 5 + n * n.div_ceil(8));
    bytes.push(n as u8);
    if palette.len() > 1 || palette.first().is_some_and(|&c| c != 0) {
        bytes.push(palette.len() as u8);
        for &c in &palette {
            bytes.extend_from_slice(&c.to_le_bytes());
            bytes.push(colors.iter().filter(|&&x| x == c).count() as u8);
        }
    }
    let width = n.div_ceil(8);
    for r in rows {
        bytes.extend_from_slice(&r.to_le_bytes()[..width]);
    }
    Labeling {
        perm,
        form: CanonicalForm(bytes),
    }
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g).perm)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    dg == dh && canonical_form(g) == canonical_form(h)
}

/// The coarsest equitable ordered partition refining the unit partition.
/// The vertex at the last canonical position always lies in its last cell.
pub(crate) fn equitable_partition(g: &Graph) -> Vec<u64> {
    if g.order() == 0 {
        return Vec::new();
    }
    let mut cells = vec![low_mask(g.order())];
    refine(g.rows(), &mut cells);
    cells
}

/// Splits cells until the ordered partition is equitable. Each split orders
/// the fragments by neighbour count into the splitter cell, so the result
/// is determined by the input partition up to isomorphism.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut buf: Vec<(u32, usize)> = Vec::with_capacity(64);
    let mut j = 0;
    while j < cells.len() {
        let splitter = cells[j];
        let mut changed = false;
        let mut next = Vec::with_capacity(cells.len() + 4);
        for &cell in cells.iter() {
            if cell & (cell - 1) == 0 {
                next.push(cell);
                continue;
            }
            buf.clear();
            buf.extend(VertexSet(cell).iter().map(|v| ((adj[v] & splitter).count_ones(), v)));
            let first = buf[0].0;
            if buf.iter().all(|&(c, _)| c == first) {
                next.push(cell);
                continue;
            }
            changed = true;
            buf.sort_unstable();
            let mut cur = 0u64;
            let mut cur_count = buf[0].0;
            for &(c, v) in &buf {
                if c != cur_count {
                    next.push(cur);
                    cur = 0;
                    cur_count = c;
                }
                cur |= bit(v);
            }
            next.push(cur);
        }
        *cells = next;
        // Any split can make earlier splitters informative again.
        j = if changed { 0 } else { j + 1 };
    }
}

struct Leaf {
    rows: Vec<u64>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

/// Returned by a subtree that wants the search to keep going normally.
const NO_JUMP: usize = usize::MAX;

impl Search<'_> {
    /// Explores the subtree under `cells`. Returns the depth to which the
    /// search should back up, or [`NO_JUMP`].
    fn descend(&mut self, cells: Vec<u64>, fixed: &mut Vec<usize>) -> usize {
        if cells.len() == self.n {
            return self.leaf(&cells, fixed);
        }
        let depth = fixed.len();
        let (ti, target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored: Vec<usize> = Vec::new();
        for v in VertexSet(target) {
            if !explored.is_empty() && self.same_orbit_as_explored(v, &explored, fixed) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(bit(v));
            child.push(target & !bit(v));
            child.extend_from_slice(&cells[ti + 1..]);
            refine(self.adj, &mut child);
            fixed.push(v);
            let jump = self.descend(child, fixed);
            fixed.pop();
            if jump < depth {
                return jump;
            }
        }
        NO_JUMP
    }

    /// Orbit test under the group generated by the known automorphisms that
    /// fix every individualized vertex.
    fn same_orbit_as_explored(&self, v: usize, explored: &[usize], fixed: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if fixed.iter().any(|&f| a[f] != f) {
                continue;
            }
            any = true;
            for (x, &y) in a.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    /// Records the leaf. If it is equivalent to the first or best leaf, the
    /// automorphism between them maps the finished subtree of the earlier
    /// leaf onto the current one, so the search backs up to their common
    /// ancestor.
    fn leaf(&mut self, cells: &[u64], fixed: &[usize]) -> usize {
        let mut perm = vec![0usize; self.n];
        for (pos, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = pos;
        }
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            rows[perm[v]] = VertexSet(self.adj[v])
                .iter()
                .fold(0u64, |acc, u| acc | bit(perm[u]));
        }
        let leaf = Leaf {
            rows,
            perm,
            path: fixed.to_vec(),
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                rows: leaf.rows.clone(),
                perm: leaf.perm.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return NO_JUMP;
        };
        let best = self.best.as_ref().expect("best is set with first");
        let twin = if leaf.rows == first.rows {
            Some(first)
        } else if leaf.rows == best.rows {
            Some(best)
        } else {
            None
        };
        if let Some(earlier) = twin {
            // earlier.perm⁻¹ ∘ leaf.perm maps the graph onto itself.
            let mut inv = vec![0usize; self.n];
            for (v, &p) in earlier.perm.iter().enumerate() {
                inv[p] = v;
            }
            let auto: Vec<usize> = leaf.perm.iter().map(|&p| inv[p]).collect();
            let common = leaf
                .path
                .iter()
                .zip(&earlier.path)
                .take_while(|(a, b)| a == b)
                .count();
            if auto.iter().enumerate().any(|(i, &x)| i != x) {
                self.autos.push(auto);
            }
            return common;
        }
        if leaf.rows < best.rows {
            self.best = Some(leaf);
        }
        NO_JUMP
    }
}

/// An injective, induced map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and the induced edge condition directly.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        let k = pattern.order();
        if self.map.len() != k || self.map.iter().any(|&h| h >= host.order()) {
            return false;
        }
        let image: VertexSet = self.map.iter().copied().collect();
        if image.len() != k {
            return false;
        }
        (0..k).all(|u| {
            (0..k).all(|w| u == w || pattern.has_edge(u, w) == host.has_edge(self.map[u], self.map[w]))
        })
    }

    pub fn image(&self) -> VertexSet {
        self.map.iter().copied().collect()
    }
}

/// One backtracking order for a pattern.
#[derive(Clone, Debug)]
struct Plan {
    order: Vec<usize>,
    /// For depth d: (earlier depth, adjacent in pattern?).
    constraints: Vec<Vec<(usize, bool)>>,
    /// For depth d: earlier depth of an interchangeable twin whose image
    /// must be smaller.
    twin_prev: Vec<Option<usize>>,
}

/// A pattern graph precompiled for repeated induced-containment queries.
#[derive(Clone, Debug)]
pub struct Pattern {
    graph: Graph,
    degrees: Vec<usize>,
    size: usize,
    triangles: usize,
    free_plan: Plan,
    /// Anchored plans, one per twin class: (anchor vertex, plan).
    anchored: Vec<(usize, Plan)>,
}

impl Pattern {
    pub fn new(graph: &Graph) -> Self {
        let k = graph.order();
        let degrees: Vec<usize> = (0..k).map(|v| graph.degree(v)).collect();
        let twin_class = twin_classes(graph);
        let free_plan = make_plan(graph, None, &twin_class);
        let mut anchored = Vec::new();
        let mut seen_classes = Vec::new();
        for u in 0..k {
            if !seen_classes.contains(&twin_class[u]) {
                seen_classes.push(twin_class[u]);
                anchored.push((u, make_plan(graph, Some(u), &twin_class)));
            }
        }
        Pattern {
            graph: graph.clone(),
            degrees,
            size: graph.size(),
            triangles: graph.triangle_count(),
            free_plan,
            anchored,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Some induced embedding into `host`, if one exists.
    pub fn find_in(&self, host: &Graph) -> Option<Embedding> {
        let k = self.graph.order();
        let n = host.order();
        if k > n {
            return None;
        }
        let host_size = host.size();
        let pairs = |m: usize| m * m.saturating_sub(1) / 2;
        if self.size > host_size || pairs(k) - self.size > pairs(n) - host_size {
            return None;
        }
        if self.triangles > 0 && host.triangle_count() < self.triangles {
            return None;
        }
        self.run(host, &self.free_plan, None)
    }

    /// Some induced embedding into `host` whose image contains `v`.
    pub fn find_through(&self, host: &Graph, v: usize) -> Option<Embedding> {
        if self.graph.order() > host.order() {
            return None;
        }
        self.anchored
            .iter()
            .find_map(|(_, plan)| self.run(host, plan, Some(v)))
    }

    pub fn embeds_in(&self, host: &Graph) -> bool {
        self.find_in(host).is_some()
    }

    pub fn embeds_through(&self, host: &Graph, v: usize) -> bool {
        self.find_through(host, v).is_some()
    }

    fn run(&self, host: &Graph, plan: &Plan, anchor: Option<usize>) -> Option<Embedding> {
        let k = self.graph.order();
        if k == 0 {
            return Some(Embedding { map: Vec::new() });
        }
        let n = host.order();
        let all = low_mask(n);
        // Degree feasibility per pattern vertex.
        let host_deg: Vec<usize> = (0..n).map(|h| host.degree(h)).collect();
        let feasible: Vec<u64> = plan
            .order
            .iter()
            .map(|&u| {
                let (d, nd) = (self.degrees[u], k - 1 - self.degrees[u]);
                (0..n)
                    .filter(|&h| host_deg[h] >= d && n - 1 - host_deg[h] >= nd)
                    .fold(0u64, |acc, h| acc | bit(h))
            })
            .collect();
        let mut images = vec![0usize; k];
        let first = match anchor {
            Some(v) => {
                if feasible[0] & bit(v) == 0 {
                    return None;
                }
                bit(v)
            }
            None => feasible[0],
        };
        if extend(host, plan, &feasible, all, 0, first, 0, &mut images) {
            let mut map = vec![0usize; k];
            for (d, &u) in plan.order.iter().enumerate() {
                map[u] = images[d];
            }
            Some(Embedding { map })
        } else {
            None
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    host: &Graph,
    plan: &Plan,
    feasible: &[u64],
    all: u64,
    depth: usize,
    first: u64,
    used: u64,
    images: &mut [usize],
) -> bool {
    let k = plan.order.len();
    let mut cand = if depth == 0 { first } else { feasible[depth] & all & !used };
    if depth > 0 {
        for &(d, adjacent) in &plan.constraints[depth] {
            let row = host.row(images[d]);
            cand &= if adjacent { row } else { !row };
        }
        if let Some(d) = plan.twin_prev[depth] {
            cand &= !low_mask(images[d] + 1);
        }
    }
    while cand != 0 {
        let h = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        images[depth] = h;
        if depth + 1 == k || extend(host, plan, feasible, all, depth + 1, first, used | bit(h), images) {
            return true;
        }
    }
    false
}

/// Twin class id per vertex: u, w are twins when N(u)∖{w} = N(w)∖{u}.
fn twin_classes(g: &Graph) -> Vec<usize> {
    let k = g.order();
    let mut class = vec![usize::MAX; k];
    let mut next = 0;
    for u in 0..k {
        if class[u] != usize::MAX {
            continue;
        }
        class[u] = next;
        for w in u + 1..k {
            if class[w] == usize::MAX
                && g.row(u) & !bit(w) == g.row(w) & !bit(u)
            {
                class[w] = next;
            }
        }
        next += 1;
    }
    class
}

fn make_plan(g: &Graph, anchor: Option<usize>, twin_class: &[usize]) -> Plan {
    let k = g.order();
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = 0u64;
    if let Some(a) = anchor {
        order.push(a);
        placed |= bit(a);
    }
    while order.len() < k {
        let u = (0..k)
            .filter(|&u| placed & bit(u) == 0)
            .max_by_key(|&u| {
                (
                    (g.row(u) & placed).count_ones(),
                    g.degree(u),
                    std::cmp::Reverse(u),
                )
            })
            .expect("unplaced vertex exists");
        order.push(u);
        placed |= bit(u);
    }
    let constraints = (0..k)
        .map(|d| (0..d).map(|e| (e, g.has_edge(order[d], order[e]))).collect())
        .collect();
    let twin_prev = (0..k)
        .map(|d| {
            let u = order[d];
            if Some(u) == anchor {
                return None;
            }
            (0..d)
                .rev()
                .find(|&e| twin_class[order[e]] == twin_class[u] && Some(order[e]) != anchor)
        })
        .collect();
    Plan {
        order,
        constraints,
        twin_prev,
    }
}

/// Some induced copy of `pattern` in `host`.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    Pattern::new(pattern).find_in(host)
}

/// True iff `g` contains none of `patterns` as an induced subgraph.
pub fn is_free(g: &Graph, patterns: &[Graph]) -> bool {
    patterns.iter().all(|p| contains_induced(g, p).is_none())
}

/// [`is_free`] for precompiled patterns.
pub fn is_free_compiled(g: &Graph, patterns: &[Pattern]) -> bool {
    patterns.iter().all(|p| !p.embeds_in(g))
}
