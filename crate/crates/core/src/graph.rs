//! Immutable simple graphs on at most 64 vertices.
//!
//! Every vertex set is a single `u64`, so neighbourhood algebra is a handful
//! of bit operations. The exact invariants (α, ω, χ) are branch-and-bound
//! searches meant for desk-scale inputs.

use std::fmt;

use thiserror::Error;

/// Hard cap on the order of a [`Graph`].
pub const MAX_ORDER: usize = 64;

/// Largest order accepted by [`Graph::chromatic_number`].
pub const CHROMATIC_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the 64-vertex limit")]
    OrderOverflow(usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("edge endpoint {vertex} out of range for order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("a cycle needs at least 3 vertices, got {0}")]
    ShortCycle(usize),
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
    #[error("order {order} too large for exact {what} (limit {limit})")]
    TooLarge {
        what: &'static str,
        order: usize,
        limit: usize,
    },
}

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `{0, …, 63}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        vs.iter().copied().collect()
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A labeled simple graph. `adj[v]` is the open neighbourhood of `v`.
///
/// Equality is label equality. Use [`crate::iso::are_isomorphic`] for
/// "same graph" questions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderOverflow(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Builds a graph from neighbourhood bit rows, checking every invariant.
    pub fn from_adjacency(rows: &[u64]) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderOverflow(n));
        }
        let mask = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & bit(v) != 0 {
                return Err(GraphError::LoopEdge(v));
            }
            if row & !mask != 0 {
                let w = 63 - (row & !mask).leading_zeros() as usize;
                return Err(GraphError::OutOfRange {
                    vertex: w,
                    order: n,
                });
            }
            for u in VertexSet(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(GraphError::OutOfRange {
                        vertex: u,
                        order: n,
                    });
                }
            }
        }
        Ok(Graph {
            n,
            adj: rows.to_vec(),
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let m = low_mask(n);
        for v in 0..n {
            g.adj[v] = m & !bit(v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::build(n, &edges)
    }

    /// The cycle `0-1-…-(n-1)-0`, `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::ShortCycle(n));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::build(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let m = low_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & m & !bit(v)).collect();
        Graph { n: self.n, adj }
    }

    /// Vertex-disjoint copies laid out consecutively.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Graph, GraphError> {
        let total: usize = parts.iter().map(Graph::order).sum();
        if total > MAX_ORDER {
            return Err(GraphError::OrderOverflow(total));
        }
        let mut adj = Vec::with_capacity(total);
        let mut offset = 0;
        for p in parts {
            adj.extend(p.adj.iter().map(|&r| r << offset));
            offset += p.n;
        }
        Ok(Graph { n: total, adj })
    }

    /// Subgraph induced by `s`, relabeled by the sorted order of `s`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph, GraphError> {
        if let Some(v) = s.difference(self.vertices()).first() {
            return Err(GraphError::OutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let verts = s.to_vec();
        let adj = verts
            .iter()
            .map(|&v| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(v, u))
                    .fold(0u64, |acc, (i, _)| acc | bit(i))
            })
            .collect();
        Ok(Graph { n: verts.len(), adj })
    }

    /// The graph with vertex `v` removed, later vertices shifted down.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        let lo = low_mask(v);
        let adj = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| {
                let r = self.adj[u];
                (r & lo) | ((r >> 1) & !lo)
            })
            .collect();
        Graph { n: self.n - 1, adj }
    }

    /// A new vertex `n` adjacent exactly to `nbrs`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph, GraphError> {
        if self.n >= MAX_ORDER {
            return Err(GraphError::OrderOverflow(self.n + 1));
        }
        if let Some(v) = nbrs.difference(self.vertices()).first() {
            return Err(GraphError::OutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let mut adj = self.adj.clone();
        let x = self.n;
        for u in nbrs {
            adj[u] |= bit(x);
        }
        adj.push(nbrs.0);
        Ok(Graph { n: x + 1, adj })
    }

    /// Graph with vertex `v` at position `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = VertexSet(self.adj[v])
                .iter()
                .fold(0, |acc, u| acc | bit(perm[u]));
        }
        Graph { n: self.n, adj }
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(self.component_of(0) == low_mask(self.n))
    }

    /// Vertex set of the component containing `v`.
    pub(crate) fn component_of(&self, v: usize) -> u64 {
        self.component_within(v, low_mask(self.n))
    }

    /// Component of `v` in the subgraph induced by `within`.
    pub(crate) fn component_within(&self, v: usize, within: u64) -> u64 {
        let mut seen = bit(v);
        let mut frontier = bit(v);
        while frontier != 0 {
            let mut next = 0;
            for u in VertexSet(frontier) {
                next |= self.adj[u];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn triangle_count(&self) -> usize {
        let mut t = 0;
        for u in 0..self.n {
            let higher = self.adj[u] & !low_mask(u + 1);
            for v in VertexSet(higher) {
                t += (self.adj[v] & higher & !low_mask(v + 1)).count_ones() as usize;
            }
        }
        t
    }

    /// A maximum clique.
    pub fn max_clique(&self) -> VertexSet {
        max_clique_in(&self.adj, low_mask(self.n))
    }

    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    /// A maximum independent set, found as a maximum clique of the complement.
    pub fn max_independent_set(&self) -> VertexSet {
        let c = self.complement();
        max_clique_in(&c.adj, low_mask(self.n))
    }

    pub fn independence_number(&self) -> usize {
        self.max_independent_set().len()
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.0 & !self.adj[v] & !bit(v) == 0)
    }

    /// Exact chromatic number by iterative deepening from the clique bound.
    pub fn chromatic_number(&self) -> Result<usize, GraphError> {
        if self.n > CHROMATIC_MAX_ORDER {
            return Err(GraphError::TooLarge {
                what: "chromatic number",
                order: self.n,
                limit: CHROMATIC_MAX_ORDER,
            });
        }
        Ok(chromatic_number_in(&self.adj, low_mask(self.n)))
    }

    /// Edge-list text: `n m` header, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Graphviz DOT text.
    pub fn to_dot(&self, name: &str) -> String {
        let ident: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let mut s = format!("graph {ident} {{\n");
        for v in 0..self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Greedy colouring of `cand`; returns vertices ordered by colour and the
/// colour (1-based) of each.
fn color_sort(adj: &[u64], cand: u64, order: &mut Vec<usize>, colors: &mut Vec<usize>) {
    order.clear();
    colors.clear();
    let mut uncolored = cand;
    let mut k = 0;
    while uncolored != 0 {
        k += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !adj[v] & !bit(v);
            uncolored &= !bit(v);
            order.push(v);
            colors.push(k);
        }
    }
}

fn expand_clique(adj: &[u64], cand: u64, current: &mut u64, best: &mut u64) {
    let mut order = Vec::new();
    let mut colors = Vec::new();
    color_sort(adj, cand, &mut order, &mut colors);
    let mut cand = cand;
    let cur_len = current.count_ones() as usize;
    for i in (0..order.len()).rev() {
        if cur_len + colors[i] <= best.count_ones() as usize {
            return;
        }
        let v = order[i];
        *current |= bit(v);
        let next = cand & adj[v];
        if next == 0 {
            if current.count_ones() > best.count_ones() {
                *best = *current;
            }
        } else {
            expand_clique(adj, next, current, best);
        }
        *current &= !bit(v);
        cand &= !bit(v);
    }
}

/// Maximum clique inside `within`, by colour-bounded branch and bound.
pub(crate) fn max_clique_in(adj: &[u64], within: u64) -> VertexSet {
    if within == 0 {
        return VertexSet::EMPTY;
    }
    let mut best = bit(within.trailing_zeros() as usize);
    let mut current = 0;
    expand_clique(adj, within, &mut current, &mut best);
    VertexSet(best)
}

/// χ of the subgraph induced by `within`.
pub(crate) fn chromatic_number_in(adj: &[u64], within: u64) -> usize {
    if within == 0 {
        return 0;
    }
    let lower = max_clique_in(adj, within).len();
    let mut k = lower.max(1);
    loop {
        if colorable(adj, within, k) {
            return k;
        }
        k += 1;
    }
}

fn colorable(adj: &[u64], within: u64, k: usize) -> bool {
    let mut classes = vec![0u64; k];
    dsatur(adj, within, &mut classes, 0)
}

/// DSATUR backtracking: colour the uncoloured vertex of largest saturation.
fn dsatur(adj: &[u64], uncolored: u64, classes: &mut [u64], used: usize) -> bool {
    if uncolored == 0 {
        return true;
    }
    let mut pick = usize::MAX;
    let mut pick_key = (0usize, 0usize);
    for v in VertexSet(uncolored) {
        let sat = classes[..used]
            .iter()
            .filter(|&&c| c & adj[v] != 0)
            .count();
        let key = (sat, (adj[v] & uncolored).count_ones() as usize);
        if pick == usize::MAX || key > pick_key {
            pick = v;
            pick_key = key;
        }
    }
    let v = pick;
    let rest = uncolored & !bit(v);
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        if classes[c] & adj[v] == 0 {
            classes[c] |= bit(v);
            let ok = dsatur(adj, rest, classes, used.max(c + 1));
            classes[c] &= !bit(v);
            if ok {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_alpha(g: &Graph) -> usize {
        (0u64..1 << g.order())
            .filter(|&s| g.is_independent(VertexSet(s)))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn build_small_named_graphs() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        let c5 = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5, Graph::cycle(5).unwrap());
        let claw = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (0, 1)]).unwrap();
        assert_eq!(claw.size(), 3);
        assert_eq!(claw.degree(0), 3);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Graph::build(65, &[]), Err(GraphError::OrderOverflow(65)));
        assert_eq!(Graph::build(3, &[(1, 1)]), Err(GraphError::LoopEdge(1)));
        assert_eq!(
            Graph::build(3, &[(0, 3)]),
            Err(GraphError::OutOfRange {
                vertex: 3,
                order: 3
            })
        );
        assert!(Graph::from_adjacency(&[0b10, 0b00]).is_err());
    }

    #[test]
    fn complement_basics() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.complement(), Graph::empty(4).unwrap());
        let c7 = Graph::cycle(7).unwrap();
        let anti = c7.complement();
        assert_eq!(anti.size(), 21 - 7);
        assert_eq!(anti.complement(), c7);
    }

    #[test]
    fn disjoint_union_counts() {
        let k1 = Graph::complete(1).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let p3 = Graph::path(3).unwrap();
        let p5 = Graph::path(5).unwrap();
        let u = Graph::disjoint_union(&[k1.clone(), p5]).unwrap();
        assert_eq!((u.order(), u.size()), (6, 4));
        let u = Graph::disjoint_union(&[p3.clone(), p3]).unwrap();
        assert_eq!((u.order(), u.size()), (6, 4));
        let u = Graph::disjoint_union(&[k1.clone(), k1, k3]).unwrap();
        assert_eq!((u.order(), u.size()), (5, 3));
        let big = Graph::empty(40).unwrap();
        assert!(Graph::disjoint_union(&[big.clone(), big]).is_err());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced_subgraph(c5.vertices()).unwrap(), c5);
        let p4 = c5.induced_subgraph(VertexSet::from_slice(&[0, 1, 2, 3])).unwrap();
        assert_eq!(p4, Graph::path(4).unwrap());
        assert!(c5.induced_subgraph(VertexSet::singleton(7)).is_err());
        // K1 ∪ Z1 with the isolated vertex first; dropping it leaves Z1.
        let k1z1 = Graph::build(5, &[(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let z1 = k1z1.induced_subgraph(VertexSet::from_slice(&[1, 2, 3, 4])).unwrap();
        assert_eq!((z1.order(), z1.size(), z1.triangle_count()), (4, 4, 1));
    }

    #[test]
    fn delete_and_add_vertex() {
        let c5 = Graph::cycle(5).unwrap();
        let p4 = c5.delete_vertex(4);
        assert_eq!(p4, Graph::path(4).unwrap());
        let back = p4.add_vertex(VertexSet::from_slice(&[0, 3])).unwrap();
        assert_eq!(back, c5);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::cycle(9).unwrap().is_connected().unwrap());
        let p3 = Graph::path(3).unwrap();
        assert!(!Graph::disjoint_union(&[p3.clone(), p3]).unwrap().is_connected().unwrap());
        assert!(Graph::complete(1).unwrap().is_connected().unwrap());
        assert_eq!(Graph::empty(0).unwrap().is_connected(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn independence_and_clique_numbers() {
        assert_eq!(Graph::cycle(9).unwrap().independence_number(), 4);
        assert_eq!(Graph::cycle(7).unwrap().independence_number(), 3);
        assert_eq!(Graph::cycle(5).unwrap().clique_number(), 2);
        assert_eq!(Graph::complete(4).unwrap().clique_number(), 4);
        // C9 plus a vertex on the edge 0-1; frozen by subset brute force.
        let f1 = Graph::cycle(9).unwrap().add_vertex(VertexSet::from_slice(&[0, 1])).unwrap();
        assert_eq!(brute_alpha(&f1), 5);
        assert_eq!(f1.independence_number(), 5);
        let w = f1.max_independent_set();
        assert!(f1.is_independent(w));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(Graph::cycle(5).unwrap().chromatic_number().unwrap(), 3);
        assert_eq!(Graph::cycle(6).unwrap().chromatic_number().unwrap(), 2);
        assert_eq!(Graph::complete(5).unwrap().chromatic_number().unwrap(), 5);
        assert_eq!(Graph::cycle(7).unwrap().complement().chromatic_number().unwrap(), 4);
        assert_eq!(Graph::empty(0).unwrap().chromatic_number().unwrap(), 0);
        assert!(Graph::empty(30).unwrap().chromatic_number().is_err());
    }

    #[test]
    fn triangles() {
        assert_eq!(Graph::complete(4).unwrap().triangle_count(), 4);
        assert_eq!(Graph::cycle(5).unwrap().triangle_count(), 0);
    }
}
