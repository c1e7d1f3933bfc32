//! Simple undirected graphs on vertices `1..=n`, the edge-list text format,
//! and small generators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::{Vertex, VertexSet, MAX_VERTICES};

/// Default upper bound on `n` for exhaustive labeled enumeration.
pub const DEFAULT_MAX_ENUMERATION_N: usize = 8;

/// An unordered edge stored with `a < b`.
///
/// The derived ordering compares `a` first; use [`Edge::lt_order`] for the
/// larger-endpoint-first order that drives facet orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: Vertex,
    pub b: Vertex,
}

impl Edge {
    /// Normalizes endpoint order. Panics on a loop.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "loop edge at vertex {u}");
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    pub fn endpoints(self) -> VertexSet {
        VertexSet::singleton(self.a).with(self.b)
    }

    /// `self <_L other`: compare larger endpoints first, then smaller ones.
    pub fn lt_order(self, other: Edge) -> bool {
        self.b < other.b || (self.b == other.b && self.a < other.a)
    }

    /// Sort key realising [`Edge::lt_order`].
    pub fn order_key(self) -> (Vertex, Vertex) {
        (self.b, self.a)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a, self.b)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: BTreeSet<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Graph on `1..=n` with no edges.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "{n} vertices exceeds {MAX_VERTICES}");
        Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Precondition(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.try_add_edge(u, v).map_err(Error::Precondition)?;
        }
        Ok(g)
    }

    fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> std::result::Result<(), String> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(format!("endpoint {w} outside 1..={}", self.n));
            }
        }
        if u == v {
            return Err(format!("loop edge at vertex {u}"));
        }
        let e = Edge::new(u, v);
        if !self.edges.insert(e) {
            return Err(format!("duplicate edge {} {}", e.a, e.b));
        }
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in the derived `(a, b)` lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && u >= 1 && u <= self.n && self.adj[u - 1].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    /// `N(S)`: every vertex adjacent to some member of `S`. Members of `S`
    /// appear only if they have a neighbor inside `S`.
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(VertexSet::EMPTY, |acc, u| acc.union(self.adj[u - 1]))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|u| self.adj[u - 1].is_disjoint(s))
    }

    /// `W` meets every edge, i.e. its complement is independent.
    pub fn is_cover(&self, w: VertexSet) -> bool {
        self.is_independent(w.complement(self.n))
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (1..=self.n).filter(|&v| self.adj[v - 1].is_empty()).collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|a| a.is_empty())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(1);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighborhood(frontier).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen.len() == self.n
    }

    /// `G[S]` relabeled onto `1..=|S|` preserving relative order. The second
    /// component maps new label `i` (at index `i - 1`) to its original vertex.
    pub fn induced_subgraph(&self, s: VertexSet) -> (Graph, Vec<Vertex>) {
        let map: Vec<Vertex> = s.to_vec();
        let mut new_label = vec![0usize; self.n + 1];
        for (i, &v) in map.iter().enumerate() {
            new_label[v] = i + 1;
        }
        let mut g = Graph::empty(map.len());
        for e in self.edges() {
            if s.contains(e.a) && s.contains(e.b) {
                g.try_add_edge(new_label[e.a], new_label[e.b])
                    .expect("induced edges are valid");
            }
        }
        (g, map)
    }

    /// Applies a vertex permutation: `perm[v - 1]` is the new label of `v`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for e in self.edges() {
            g.try_add_edge(perm[e.a - 1], perm[e.b - 1])
                .expect("permutation preserves simplicity");
        }
        g
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for e in self.edges() {
            out.push_str(&format!("e {} {}\n", e.a, e.b));
        }
        out
    }

    /// Parses the `p edge <n> <m>` / `e <u> <v>` format. Lines starting with
    /// `c` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Graph> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut graph: Option<(Graph, usize)> = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "edge", n, m] => {
                    if graph.is_some() {
                        return Err(err(line_no, "second header line".into()));
                    }
                    let n: usize = n
                        .parse()
                        .map_err(|_| err(line_no, format!("invalid vertex count {n:?}")))?;
                    let m: usize = m
                        .parse()
                        .map_err(|_| err(line_no, format!("invalid edge count {m:?}")))?;
                    if n == 0 {
                        return Err(err(line_no, "vertex count must be positive".into()));
                    }
                    if n > MAX_VERTICES {
                        return Err(err(
                            line_no,
                            format!("{n} vertices exceeds the supported maximum of {MAX_VERTICES}"),
                        ));
                    }
                    graph = Some((Graph::empty(n), m));
                }
                ["p", ..] => return Err(err(line_no, format!("malformed header {line:?}"))),
                ["e", u, v] => {
                    let (g, _) = graph
                        .as_mut()
                        .ok_or_else(|| err(line_no, "edge before header".into()))?;
                    let parse_v = |s: &str| {
                        s.parse::<Vertex>()
                            .map_err(|_| err(line_no, format!("invalid vertex {s:?}")))
                    };
                    let (u, v) = (parse_v(u)?, parse_v(v)?);
                    g.try_add_edge(u, v).map_err(|m| err(line_no, m))?;
                }
                _ => return Err(err(line_no, format!("unrecognised line {line:?}"))),
            }
        }
        let (g, m) = graph.ok_or_else(|| err(last_line.max(1), "missing header".into()))?;
        if g.edge_count() != m {
            return Err(err(
                last_line.max(1),
                format!("header declares {m} edges, found {}", g.edge_count()),
            ));
        }
        Ok(g)
    }

    /// Cycle `1-2-...-m-1`. For `m <= 2` this degenerates to a path.
    pub fn cycle(m: usize) -> Graph {
        assert!(m >= 1);
        let mut g = Graph::path(m);
        if m >= 3 {
            g.try_add_edge(m, 1).expect("closing edge");
        }
        g
    }

    pub fn path(m: usize) -> Graph {
        assert!(m >= 1);
        Graph::from_edges(m, (1..m).map(|v| (v, v + 1))).expect("path edges")
    }

    pub fn complete(m: usize) -> Graph {
        assert!(m >= 1);
        let pairs = (1..=m).flat_map(|u| (u + 1..=m).map(move |v| (u, v)));
        Graph::from_edges(m, pairs).expect("complete edges")
    }

    /// Star with center 1 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (2..=leaves + 1).map(|v| (1, v))).expect("star edges")
    }

    /// Disjoint union placing `other` on labels after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges()
            .map(|e| (e.a, e.b))
            .chain(other.edges().map(|e| (e.a + shift, e.b + shift)));
        Graph::from_edges(self.n + other.n, edges).expect("union of simple graphs")
    }
}

/// Labeled graphs on `1..=n`, indexed by an edge mask over the pairs
/// `(1,2), (1,3), ..., (n-1,n)` in lexicographic order.
#[derive(Clone, Debug)]
pub struct AllGraphs {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    next: u64,
    end: u64,
    isolated_free: bool,
}

impl AllGraphs {
    pub fn new(n: usize, max_n: usize) -> Result<Self> {
        if n > max_n {
            return Err(Error::GuardExceeded {
                what: "graph enumeration",
                limit: max_n,
                reached: n,
            });
        }
        let pairs: Vec<_> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        if pairs.len() >= 64 {
            return Err(Error::GuardExceeded {
                what: "graph enumeration",
                limit: 11,
                reached: n,
            });
        }
        Ok(AllGraphs {
            n,
            end: 1u64 << pairs.len(),
            pairs,
            next: 0,
            isolated_free: false,
        })
    }

    /// Skip graphs with an isolated vertex.
    pub fn isolated_free(mut self) -> Self {
        self.isolated_free = true;
        self
    }

    /// The graph whose edge mask is `mask`.
    pub fn graph(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p);
        Graph::from_edges(self.n, edges).expect("enumerated edges are valid")
    }
}

impl Iterator for AllGraphs {
    /// `(edge mask, graph)`.
    type Item = (u64, Graph);

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let g = self.graph(mask);
            if self.isolated_free && g.has_isolated_vertex() {
                continue;
            }
            return Some((mask, g));
        }
        None
    }
}

/// Every labeled graph on `1..=n` under the default guard.
pub fn all_graphs(n: usize) -> Result<AllGraphs> {
    AllGraphs::new(n, DEFAULT_MAX_ENUMERATION_N)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn parse_path() {
        let g = Graph::parse("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g, Graph::path(3));
        let g = Graph::parse("p edge 2 0").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let loop_err = Graph::parse("p edge 3 1\ne 1 1").unwrap_err();
        assert!(matches!(loop_err, Error::Parse { line: 2, .. }), "{loop_err}");
        let dup = Graph::parse("p edge 3 2\ne 1 2\ne 2 1").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }), "{dup}");
        let range = Graph::parse("c hi\np edge 3 1\ne 1 4").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 3, .. }), "{range}");
        assert!(matches!(
            Graph::parse("p edge x 0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse("e 1 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(Graph::parse("p edge 3 2\ne 1 2").is_err());
        assert!(Graph::parse("p edge 65 0").is_err());
        assert!(Graph::parse("").is_err());
    }

    #[test]
    fn serialization_normalizes() {
        let g = Graph::parse("c comment\np edge 4 3\ne 4 3\ne 2 1\ne 1 3\n").unwrap();
        assert_eq!(g.to_edge_list(), "p edge 4 3\ne 1 2\ne 1 3\ne 3 4\n");
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn neighborhoods() {
        let c6 = Graph::cycle(6);
        assert_eq!(c6.neighborhood(set(&[1])), set(&[2, 6]));
        assert_eq!(c6.neighborhood(VertexSet::EMPTY), VertexSet::EMPTY);
        let p3 = Graph::path(3);
        assert_eq!(p3.neighborhood(set(&[1, 3])), set(&[2]));
    }

    #[test]
    fn independence_and_covers() {
        let p3 = Graph::path(3);
        assert!(p3.is_independent(set(&[1, 3])));
        assert!(!p3.is_independent(set(&[1, 2])));
        assert!(p3.is_independent(VertexSet::EMPTY));
        assert!(p3.is_cover(set(&[2])));
        assert!(!p3.is_cover(set(&[1])));
        assert!(Graph::cycle(6).is_cover(set(&[1, 2, 4, 5])));
    }

    #[test]
    fn isolated() {
        let g = Graph::parse("p edge 3 1\ne 1 2").unwrap();
        assert_eq!(g.isolated_vertices(), set(&[3]));
        assert!(Graph::cycle(6).isolated_vertices().is_empty());
        assert_eq!(Graph::empty(2).isolated_vertices(), set(&[1, 2]));
    }

    #[test]
    fn induced() {
        let c6 = Graph::cycle(6);
        let (m, map) = c6.induced_subgraph(set(&[1, 2, 4, 5]));
        assert_eq!(map, vec![1, 2, 4, 5]);
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![Edge::new(1, 2), Edge::new(3, 4)]);
        let (e, map) = c6.induced_subgraph(VertexSet::EMPTY);
        assert_eq!(e.n(), 0);
        assert!(map.is_empty());
        let (p, _) = Graph::path(3).induced_subgraph(set(&[1, 3]));
        assert_eq!((p.n(), p.edge_count()), (2, 0));
        assert_eq!(c6.induced_subgraph(c6.vertices()).0, c6);
    }

    #[test]
    fn generators() {
        let c6 = Graph::cycle(6);
        let expected: Vec<_> = [(1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)]
            .into_iter()
            .map(|(a, b)| Edge::new(a, b))
            .collect();
        assert_eq!(c6.edges().collect::<Vec<_>>(), expected);
        assert_eq!(Graph::complete(3).edge_count(), 3);
        assert_eq!(all_graphs(3).unwrap().count(), 8);
        assert_eq!(all_graphs(4).unwrap().count(), 64);
        // Isolated-free labeled graphs: 1, 4, 41, 768 for n = 2..5.
        let counts: Vec<_> = (2..=5)
            .map(|n| all_graphs(n).unwrap().isolated_free().count())
            .collect();
        assert_eq!(counts, vec![1, 4, 41, 768]);
        assert!(matches!(all_graphs(9), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn edge_order() {
        assert!(Edge::new(1, 3).lt_order(Edge::new(2, 4)));
        assert!(Edge::new(1, 4).lt_order(Edge::new(2, 4)));
        assert!(!Edge::new(2, 3).lt_order(Edge::new(2, 3)));
        assert!(!Edge::new(2, 4).lt_order(Edge::new(1, 4)));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::cycle(5).is_connected());
        assert!(!Graph::path(2).disjoint_union(&Graph::path(2)).is_connected());
    }
}
