//! Odd holes, odd antiholes and perfectness.
//!
//! A graph is perfect iff it has neither an odd hole nor an odd antihole, so
//! [`is_perfect`] is two chordless-cycle searches (one in the complement).
//! [`is_perfect_by_definition`] checks χ = ω on every induced subgraph and
//! serves as an independent oracle on small graphs.

use serde::Serialize;

use crate::graph::{bit, chromatic_number_in, low_mask, max_clique_in, Graph, GraphError, VertexSet};
use crate::iso::Pattern;

/// Largest order accepted by [`is_perfect_by_definition`].
pub const DEFINITION_MAX_ORDER: usize = 9;

/// Largest order accepted by [`find_odd_hole_brute_force`].
pub const BRUTE_FORCE_MAX_ORDER: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HoleKind {
    Hole,
    Antihole,
}

/// An odd hole of the host, or an odd hole of its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleCertificate {
    pub kind: HoleKind,
    /// Vertices in cycle order (in the complement for antiholes).
    pub cycle: Vec<usize>,
}

impl HoleCertificate {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }

    /// Re-validates the certificate against `host` from scratch.
    pub fn is_valid(&self, host: &Graph) -> bool {
        let l = self.cycle.len();
        if l < 5 || l.is_multiple_of(2) {
            return false;
        }
        match self.kind {
            HoleKind::Hole => is_chordless_cycle(host, &self.cycle),
            HoleKind::Antihole => is_chordless_cycle(&host.complement(), &self.cycle),
        }
    }
}

/// True iff `cycle` lists distinct vertices inducing a cycle in that order.
pub fn is_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let l = cycle.len();
    if l < 3 || cycle.iter().any(|&v| v >= g.order()) {
        return false;
    }
    if VertexSet::from_slice(cycle).len() != l {
        return false;
    }
    (0..l).all(|i| {
        (i + 1..l).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == l - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

/// Depth-first search over induced paths starting at the smallest cycle
/// vertex. Each chordless cycle of length `len` is reported once, as
/// `[s, p1, …, p_last]` with `s` minimal and `p1 < p_last`.
struct CycleSearch<'a, F: FnMut(&[usize]) -> bool> {
    g: &'a Graph,
    len: usize,
    start: usize,
    allowed: u64,
    path: Vec<usize>,
    on_cycle: F,
}

impl<F: FnMut(&[usize]) -> bool> CycleSearch<'_, F> {
    /// Returns false once the callback asks to stop.
    fn dfs(&mut self, inner: u64) -> bool {
        let d = self.path.len();
        let last = self.path[d - 1];
        let s_nbrs = self.g.row(self.start);
        let mut cand = self.g.row(last) & self.allowed & !inner;
        if d + 1 < self.len {
            if d > 1 {
                cand &= !s_nbrs;
            }
        } else {
            cand &= s_nbrs & !low_mask(self.path[1] + 1);
        }
        let next_inner = if d >= 2 {
            inner | self.g.row(last) | bit(last)
        } else {
            inner
        };
        for q in VertexSet(cand) {
            self.path.push(q);
            let keep_going = if d + 1 == self.len {
                (self.on_cycle)(&self.path)
            } else {
                self.dfs(next_inner)
            };
            self.path.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Calls `f` on every chordless cycle of length `len` (≥ 4); stops early
/// when `f` returns false.
pub fn for_each_induced_cycle(g: &Graph, len: usize, mut f: impl FnMut(&[usize]) -> bool) {
    assert!(len >= 4, "holes have length at least 4");
    let n = g.order();
    if len > n {
        return;
    }
    for s in 0..n {
        let allowed = low_mask(n) & !low_mask(s + 1);
        if (g.row(s) & allowed).count_ones() < 2 {
            continue;
        }
        let mut search = CycleSearch {
            g,
            len,
            start: s,
            allowed,
            path: vec![s],
            on_cycle: &mut f,
        };
        if !search.dfs(0) {
            return;
        }
    }
}

/// Some chordless cycle of exactly `len` vertices.
pub fn find_induced_cycle(g: &Graph, len: usize) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_induced_cycle(g, len, |c| {
        found = Some(c.to_vec());
        false
    });
    found
}

/// All chordless cycles of exactly `len` vertices, each once.
pub fn induced_cycles(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_induced_cycle(g, len, |c| {
        out.push(c.to_vec());
        true
    });
    out
}

pub fn has_induced_cycle(g: &Graph, len: usize) -> bool {
    find_induced_cycle(g, len).is_some()
}

/// Shortest odd hole (length ≥ 5), by ascending target length.
pub fn find_odd_hole(g: &Graph) -> Option<HoleCertificate> {
    (5..=g.order()).step_by(2).find_map(|l| {
        find_induced_cycle(g, l).map(|cycle| HoleCertificate {
            kind: HoleKind::Hole,
            cycle,
        })
    })
}

/// Shortest odd antihole. A 5-antihole is also a 5-hole; it is reported
/// as a hole, listed in the host's cycle order.
pub fn find_odd_antihole(g: &Graph) -> Option<HoleCertificate> {
    let co = g.complement();
    (5..=g.order()).step_by(2).find_map(|l| {
        find_induced_cycle(&co, l).map(|cycle| {
            if l == 5 {
                HoleCertificate {
                    kind: HoleKind::Hole,
                    cycle: vec![cycle[0], cycle[2], cycle[4], cycle[1], cycle[3]],
                }
            } else {
                HoleCertificate {
                    kind: HoleKind::Antihole,
                    cycle,
                }
            }
        })
    })
}

/// Exhaustive subset search for the shortest odd hole: every vertex subset
/// of odd size ≥ 5 inducing a connected 2-regular graph. Slow, obviously
/// correct; used to cross-check [`find_odd_hole`].
pub fn find_odd_hole_brute_force(g: &Graph) -> Result<Option<HoleCertificate>, GraphError> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(GraphError::TooLarge {
            what: "brute-force hole search",
            order: n,
            limit: BRUTE_FORCE_MAX_ORDER,
        });
    }
    for l in (5..=n).step_by(2) {
        for mask in 1u64..(1u64 << n) {
            if mask.count_ones() as usize != l {
                continue;
            }
            let two_regular = VertexSet(mask)
                .iter()
                .all(|v| (g.row(v) & mask).count_ones() == 2);
            if !two_regular {
                continue;
            }
            let start = mask.trailing_zeros() as usize;
            if g.component_within(start, mask) != mask {
                continue;
            }
            let mut cycle = vec![start];
            let mut prev = start;
            let mut cur = (g.row(start) & mask).trailing_zeros() as usize;
            while cur != start {
                cycle.push(cur);
                let next = (g.row(cur) & mask & !bit(prev)).trailing_zeros() as usize;
                prev = cur;
                cur = next;
            }
            return Ok(Some(HoleCertificate {
                kind: HoleKind::Hole,
                cycle,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Perfectness {
    pub perfect: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<HoleCertificate>,
}

/// Perfect iff no odd hole and no odd antihole; otherwise a certificate.
pub fn is_perfect(g: &Graph) -> Perfectness {
    let certificate = find_odd_hole(g).or_else(|| {
        let co = g.complement();
        (7..=g.order()).step_by(2).find_map(|l| {
            find_induced_cycle(&co, l).map(|cycle| HoleCertificate {
                kind: HoleKind::Antihole,
                cycle,
            })
        })
    });
    Perfectness {
        perfect: certificate.is_none(),
        certificate,
    }
}

/// χ(H) = ω(H) for every induced subgraph H.
pub fn is_perfect_by_definition(g: &Graph) -> Result<bool, GraphError> {
    let n = g.order();
    if n > DEFINITION_MAX_ORDER {
        return Err(GraphError::TooLarge {
            what: "perfectness by definition",
            order: n,
            limit: DEFINITION_MAX_ORDER,
        });
    }
    let adj = g.rows();
    Ok((1u64..(1u64 << n)).all(|s| chromatic_number_in(adj, s) == max_clique_in(adj, s).len()))
}

/// Outcome of checking the claw-free antihole lemma on one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BenRebeaOutcome {
    /// A hypothesis fails; the named one is the first that does.
    Vacuous(&'static str),
    /// Hypotheses hold and the graph has an induced C5.
    Holds,
    /// Connected, claw-free, α ≥ 3, odd antihole, yet no induced C5.
    Violation,
}

impl BenRebeaOutcome {
    pub fn is_violation(self) -> bool {
        self == BenRebeaOutcome::Violation
    }
}

pub fn ben_rebea_check(g: &Graph) -> BenRebeaOutcome {
    if g.order() == 0 || !g.is_connected().unwrap_or(false) {
        return BenRebeaOutcome::Vacuous("not connected");
    }
    if Pattern::new(&claw()).embeds_in(g) {
        return BenRebeaOutcome::Vacuous("not claw-free");
    }
    if g.independence_number() < 3 {
        return BenRebeaOutcome::Vacuous("independence number below 3");
    }
    if find_odd_antihole(g).is_none() {
        return BenRebeaOutcome::Vacuous("no odd antihole");
    }
    if has_induced_cycle(g, 5) {
        BenRebeaOutcome::Holds
    } else {
        BenRebeaOutcome::Violation
    }
}

pub fn claw() -> Graph {
    Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).expect("claw is valid")
}
