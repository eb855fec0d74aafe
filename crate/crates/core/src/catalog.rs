//! Named graphs: a data file of graph6 records with checkable property tags,
//! parametric constructors, and the validation gate.
//!
//! Record syntax: `name<TAB>graph6<TAB>tag;tag;…`. Lines starting with `#`
//! are comments. Names follow an ASCII grammar: `u` for disjoint union, a
//! leading count for copies, underscores for subscripts (`2K1uK3`,
//! `B_1_2`, `K_1_3`).

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::format::{from_graph6, FormatError};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::holes::{has_induced_cycle, is_perfect};
use crate::iso::{are_isomorphic, contains_induced, is_free};

/// Environment variable naming an alternative catalog file.
pub const CATALOG_ENV: &str = "CLAWPERF_CATALOG";

const BUILTIN: &str = include_str!("../data/catalog.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("catalog line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read catalog {path}: {msg}")]
    Io { path: String, msg: String },
}

impl From<GraphError> for CatalogError {
    fn from(e: GraphError) -> Self {
        CatalogError::InvalidParameter(e.to_string())
    }
}

/// A checkable claim attached to a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", content = "value", rename_all = "kebab-case")]
pub enum Tag {
    Order(usize),
    Size(usize),
    Triangles(usize),
    Alpha(usize),
    Connected,
    ClawFree,
    Imperfect,
    Perfect,
    /// Contains an induced cycle of this length.
    Hole(usize),
    Free(String),
    Contains(String),
    Iso(String),
    /// Isomorphic to a parametric constructor, e.g. `built=B:1:2`.
    Built(String, Vec<usize>),
    Distinguished(usize),
    Labels(Vec<(String, usize)>),
}

impl Tag {
    fn parse(s: &str) -> Result<Tag, String> {
        let (key, value) = match s.split_once('=') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (s.trim(), None),
        };
        let num = |v: Option<&str>| -> Result<usize, String> {
            v.ok_or_else(|| format!("tag {key} needs a value"))?
                .parse()
                .map_err(|_| format!("tag {key}: not a number"))
        };
        let text = |v: Option<&str>| -> Result<String, String> {
            v.map(str::to_string).ok_or_else(|| format!("tag {key} needs a value"))
        };
        Ok(match key {
            "order" => Tag::Order(num(value)?),
            "size" => Tag::Size(num(value)?),
            "triangles" => Tag::Triangles(num(value)?),
            "alpha" => Tag::Alpha(num(value)?),
            "connected" => Tag::Connected,
            "claw-free" => Tag::ClawFree,
            "imperfect" => Tag::Imperfect,
            "perfect" => Tag::Perfect,
            "hole" => Tag::Hole(num(value)?),
            "free" => Tag::Free(text(value)?),
            "contains" => Tag::Contains(text(value)?),
            "iso" => Tag::Iso(text(value)?),
            "distinguished" => Tag::Distinguished(num(value)?),
            "built" => {
                let v = text(value)?;
                let mut parts = v.split(':');
                let name = parts.next().unwrap_or_default().to_string();
                let params = parts
                    .map(|p| p.parse().map_err(|_| format!("built={v}: bad parameter")))
                    .collect::<Result<Vec<usize>, _>>()?;
                Tag::Built(name, params)
            }
            "labels" => {
                let v = text(value)?;
                let labels = v
                    .split(',')
                    .map(|kv| {
                        let (k, i) = kv.split_once(':').ok_or(format!("labels: bad pair {kv:?}"))?;
                        let i = i.parse().map_err(|_| format!("labels: bad index in {kv:?}"))?;
                        Ok((k.to_string(), i))
                    })
                    .collect::<Result<Vec<_>, String>>()?;
                Tag::Labels(labels)
            }
            other => return Err(format!("unknown tag {other:?}")),
        })
    }
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tag::Order(n) => write!(f, "order={n}"),
            Tag::Size(n) => write!(f, "size={n}"),
            Tag::Triangles(n) => write!(f, "triangles={n}"),
            Tag::Alpha(n) => write!(f, "alpha={n}"),
            Tag::Connected => write!(f, "connected"),
            Tag::ClawFree => write!(f, "claw-free"),
            Tag::Imperfect => write!(f, "imperfect"),
            Tag::Perfect => write!(f, "perfect"),
            Tag::Hole(l) => write!(f, "hole={l}"),
            Tag::Free(s) => write!(f, "free={s}"),
            Tag::Contains(s) => write!(f, "contains={s}"),
            Tag::Iso(s) => write!(f, "iso={s}"),
            Tag::Built(s, p) => {
                write!(f, "built={s}")?;
                p.iter().try_for_each(|x| write!(f, ":{x}"))
            }
            Tag::Distinguished(v) => write!(f, "distinguished={v}"),
            Tag::Labels(l) => {
                let parts: Vec<String> = l.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                write!(f, "labels={}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    pub tags: Vec<Tag>,
}

impl CatalogEntry {
    pub fn distinguished(&self) -> Option<usize> {
        self.tags.iter().find_map(|t| match t {
            Tag::Distinguished(v) => Some(*v),
            _ => None,
        })
    }

    /// Vertex labels such as `i1` or `v2'`, if the entry records them.
    pub fn labels(&self) -> BTreeMap<String, usize> {
        self.tags
            .iter()
            .filter_map(|t| match t {
                Tag::Labels(l) => Some(l.iter().cloned()),
                _ => None,
            })
            .flatten()
            .collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let mut cat = Catalog::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| CatalogError::Parse { line: i + 1, msg };
            let mut fields = line.split('\t');
            let name = fields.next().unwrap_or_default().trim().to_string();
            let g6 = fields.next().ok_or_else(|| err("missing graph6 field".into()))?;
            let graph = from_graph6(g6).map_err(|e: FormatError| err(e.to_string()))?;
            let tags = match fields.next() {
                Some(t) if !t.trim().is_empty() => t.split(';').map(Tag::parse).collect::<Result<Vec<_>, _>>().map_err(err)?,
                _ => Vec::new(),
            };
            if fields.next().is_some() {
                return Err(err("too many fields".into()));
            }
            if name.is_empty() || cat.index.contains_key(&name) {
                return Err(err(format!("empty or duplicate name {name:?}")));
            }
            cat.insert(CatalogEntry { name, graph, tags });
        }
        Ok(cat)
    }

    fn insert(&mut self, e: CatalogEntry) {
        match self.index.get(&e.name) {
            Some(&i) => self.entries[i] = e,
            None => {
                self.index.insert(e.name.clone(), self.entries.len());
                self.entries.push(e);
            }
        }
    }

    /// The catalog shipped with the crate.
    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN).expect("embedded catalog parses")
    }

    pub fn load(path: &Path) -> Result<Catalog, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Catalog::parse(&text)
    }

    /// The file named by `CLAWPERF_CATALOG`, else the built-in catalog.
    pub fn from_env() -> Result<Catalog, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(p) if !p.is_empty() => Catalog::load(Path::new(&p)),
            _ => Ok(Catalog::builtin()),
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    /// A copy with `name` bound to `graph` (tags kept when replacing).
    pub fn with_override(&self, name: &str, graph: Graph) -> Catalog {
        let mut c = self.clone();
        let tags = self.get(name).map(|e| e.tags.clone()).unwrap_or_default();
        c.insert(CatalogEntry {
            name: name.to_string(),
            graph,
            tags,
        });
        c
    }

    /// A copy without `name`.
    pub fn without(&self, name: &str) -> Catalog {
        let mut c = Catalog::default();
        for e in self.entries.iter().filter(|e| e.name != name) {
            c.insert(e.clone());
        }
        c
    }

    /// Resolves a name: catalog entries first, then the name grammar.
    pub fn named(&self, name: &str) -> Result<Graph, CatalogError> {
        if let Some(e) = self.get(name) {
            return Ok(e.graph.clone());
        }
        let parts: Vec<&str> = name.split('u').collect();
        if parts.len() > 1 {
            let gs = parts.iter().map(|p| self.named_part(p)).collect::<Result<Vec<_>, _>>()?;
            return Ok(Graph::disjoint_union(&gs)?);
        }
        self.named_part(name)
    }

    fn named_part(&self, part: &str) -> Result<Graph, CatalogError> {
        if let Some(e) = self.get(part) {
            return Ok(e.graph.clone());
        }
        let digits = part.chars().take_while(char::is_ascii_digit).count();
        if digits > 0 && digits < part.len() {
            let k: usize = part[..digits].parse().map_err(|_| CatalogError::UnknownName(part.into()))?;
            let base = self.named_part(&part[digits..])?;
            return Ok(Graph::disjoint_union(&vec![base; k])?);
        }
        let unknown = || CatalogError::UnknownName(part.to_string());
        let (head, rest) = part.split_at(part.chars().next().map_or(0, char::len_utf8));
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        if rest.is_empty() {
            return Err(unknown());
        }
        let params = rest
            .split('_')
            .map(str::parse)
            .collect::<Result<Vec<usize>, _>>()
            .map_err(|_| unknown())?;
        named_with(head, &params).map_err(|e| match e {
            CatalogError::UnknownName(_) => unknown(),
            other => other,
        })
    }

    /// The exception graphs `E1, E2, …` present, in index order.
    pub fn exceptions(&self) -> Vec<(usize, Graph)> {
        (1..)
            .map_while(|i| self.get(&format!("E{i}")).map(|e| (i, e.graph.clone())))
            .collect()
    }
}

/// Catalog used by functions without an explicit catalog argument: the
/// `CLAWPERF_CATALOG` file if set, else the built-in one.
///
/// # Panics
/// If the environment names a catalog that cannot be loaded.
pub fn standard() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::from_env().unwrap_or_else(|e| panic!("{e}")))
}

/// Name lookup in the standard catalog.
pub fn named(name: &str) -> Result<Graph, CatalogError> {
    standard().named(name)
}

/// Parametric constructors: `K`(n) complete, `K`(a, b) complete bipartite,
/// `P`(n), `C`(n), `Z`(k), `B`(i, j).
pub fn named_with(name: &str, params: &[usize]) -> Result<Graph, CatalogError> {
    let bad = |msg: &str| Err(CatalogError::InvalidParameter(format!("{name}{params:?}: {msg}")));
    match (name, params) {
        ("K", &[n]) => Ok(Graph::complete(n)?),
        ("K", &[a, b]) => {
            let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
            Ok(Graph::build(a + b, &edges)?)
        }
        ("P", &[n]) => Ok(Graph::path(n)?),
        ("C", &[n]) if n < 3 => bad("cycles need n >= 3"),
        ("C", &[n]) => Ok(Graph::cycle(n)?),
        ("Z", &[k]) => {
            let mut edges = vec![(0, 1), (0, 2), (1, 2)];
            edges.extend((0..k).map(|i| (i + 2, i + 3)));
            Ok(Graph::build(k + 3, &edges)?)
        }
        ("B", &[i, j]) if i == 0 || j == 0 => bad("B_i_j needs i, j >= 1"),
        ("B", &[i, j]) => {
            let mut edges = vec![(0, 1), (0, 2), (1, 2)];
            let mut next = 3;
            for (anchor, len) in [(0, i), (1, j)] {
                let mut prev = anchor;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Ok(Graph::build(next, &edges)?)
        }
        ("K" | "P" | "C" | "Z" | "B", _) => bad("wrong number of parameters"),
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub entry: String,
    pub assertion: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, entry: &str, assertion: impl Into<String>, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                entry: entry.to_string(),
                assertion: assertion.into(),
            });
        }
    }
}

fn eval_tag(cat: &Catalog, e: &CatalogEntry, tag: &Tag) -> Result<bool, CatalogError> {
    let g = &e.graph;
    Ok(match tag {
        Tag::Order(n) => g.order() == *n,
        Tag::Size(m) => g.size() == *m,
        Tag::Triangles(t) => g.triangle_count() == *t,
        Tag::Alpha(a) => g.independence_number() == *a,
        Tag::Connected => g.order() > 0 && g.is_connected()?,
        Tag::ClawFree => is_free(g, &[named_with("K", &[1, 3])?]),
        Tag::Imperfect => !is_perfect(g).perfect,
        Tag::Perfect => is_perfect(g).perfect,
        Tag::Hole(l) => *l >= 4 && has_induced_cycle(g, *l),
        Tag::Free(name) => contains_induced(g, &cat.named(name)?).is_none(),
        Tag::Contains(name) => contains_induced(g, &cat.named(name)?).is_some(),
        Tag::Iso(name) => are_isomorphic(g, &cat.named(name)?),
        Tag::Built(name, params) => are_isomorphic(g, &named_with(name, params)?),
        Tag::Distinguished(v) => *v < g.order(),
        Tag::Labels(l) => {
            let vs: VertexSet = l.iter().map(|&(_, v)| v).collect();
            l.iter().all(|&(_, v)| v < g.order()) && vs.len() == l.len()
        }
    })
}

const EXCEPTION_ORDERS: [usize; 8] = [8, 9, 9, 9, 10, 10, 10, 11];

/// Checks every entry's tags, then the structural assertions tying the
/// figure graphs together. Each violation names the entry and assertion.
pub fn validate_catalog(cat: &Catalog) -> ValidationReport {
    let mut r = ValidationReport::default();
    for e in cat.entries() {
        for tag in &e.tags {
            match eval_tag(cat, e, tag) {
                Ok(ok) => r.check(&e.name, tag.to_string(), ok),
                Err(err) => r.check(&e.name, format!("{tag}: {err}"), false),
            }
        }
    }

    let claw = named_with("K", &[1, 3]).expect("claw");
    let co_k3 = cat.named("2K1uK3").unwrap_or_else(|_| {
        Graph::disjoint_union(&[Graph::empty(2).expect("2K1"), Graph::complete(3).expect("K3")]).expect("2K1uK3")
    });
    let mut exceptions = Vec::new();
    for (i, &order) in EXCEPTION_ORDERS.iter().enumerate() {
        let name = format!("E{}", i + 1);
        let Some(e) = cat.get(&name) else {
            r.check(&name, "present", false);
            continue;
        };
        let g = &e.graph;
        r.check(&name, format!("order {order}"), g.order() == order);
        r.check(&name, "connected", g.order() > 0 && g.is_connected().unwrap_or(false));
        r.check(&name, "claw-free", is_free(g, std::slice::from_ref(&claw)));
        r.check(&name, "2K1uK3-free", is_free(g, std::slice::from_ref(&co_k3)));
        r.check(&name, "independence number at least 4", g.independence_number() >= 4);
        r.check(&name, "imperfect", !is_perfect(g).perfect);
        exceptions.push((name, g.clone()));
    }
    for (a, (na, ga)) in exceptions.iter().enumerate() {
        for (nb, gb) in &exceptions[a + 1..] {
            r.check(&format!("{na}/{nb}"), "pairwise non-isomorphic", !are_isomorphic(ga, gb));
        }
    }

    for i in 1..=7 {
        let name = format!("H{i}");
        let Some(e) = cat.get(&name) else {
            r.check(&name, "present", false);
            continue;
        };
        let len = if i == 1 { 7 } else { 5 };
        r.check(&name, format!("contains an induced C{len}"), has_induced_cycle(&e.graph, len));
        r.check(&name, "claw-free", is_free(&e.graph, std::slice::from_ref(&claw)));
    }
    match (cat.get("H6"), cat.get("E1")) {
        (Some(h6), Some(e1)) => r.check("H6", "isomorphic to E1", are_isomorphic(&h6.graph, &e1.graph)),
        _ => r.check("H6", "isomorphic to E1", false),
    }
    if let Some(h6) = cat.get("H6") {
        check_h6_labels(&mut r, h6, &claw, &co_k3);
    }
    for (name, triangles) in [("D", 2), ("H", 2), ("B", 1)] {
        let ok = cat.get(name).is_some_and(|e| e.graph.triangle_count() == triangles);
        r.check(name, format!("exactly {triangles} triangle(s)"), ok);
    }
    r
}

/// The H6 labels must make `{i1, i1', i2, i3}` a maximum independent set,
/// and the three attachment types (plus the mirror of type A) must keep
/// H6 + x free of the claw and of 2K1uK3.
fn check_h6_labels(r: &mut ValidationReport, h6: &CatalogEntry, claw: &Graph, co_k3: &Graph) {
    let labels = h6.labels();
    let want = ["i1", "i1'", "i2", "i3", "v1", "v1'", "v2", "v2'"];
    if want.iter().any(|l| !labels.contains_key(*l)) {
        r.check("H6", "labels i1, i1', i2, i3, v1, v1', v2, v2' present", false);
        return;
    }
    let set = |names: &[&str]| -> VertexSet { names.iter().map(|n| labels[*n]).collect() };
    let g = &h6.graph;
    let i = set(&["i1", "i1'", "i2", "i3"]);
    r.check(
        "H6",
        "i1, i1', i2, i3 form a maximum independent set",
        g.is_independent(i) && i.len() == g.independence_number(),
    );
    let types = [
        ("A", set(&["i1", "i3", "v2'"])),
        ("A'", set(&["i1'", "i3", "v2"])),
        ("B", g.vertices().difference(set(&["i2", "i3"]))),
        ("C", set(&["i2", "i3", "v2'", "v1", "v1'"])),
    ];
    for (t, nbhd) in types {
        let ok = g
            .add_vertex(nbhd)
            .map(|x| is_free(&x, &[claw.clone(), co_k3.clone()]))
            .unwrap_or(false);
        r.check("H6", format!("type {t} attachment is claw-free and 2K1uK3-free"), ok);
    }
}
