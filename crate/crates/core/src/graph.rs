//! Finite simple graphs, Cayley graphs of C_q x C_q, the wreath
//! (lexicographic) product, and the family graphs Γ_h = pK₁ wr Δ.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::group_algebra::{AbelianH, Generator, HElem};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum VertexLabel {
    Index(usize),
    Elem(HElem),
    /// (outer vertex, inner vertex) of a wreath product.
    Pair(Box<VertexLabel>, usize),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Index(i) => write!(f, "{i}"),
            VertexLabel::Elem(x) => write!(f, "a^{}b^{}", x.i, x.j),
            VertexLabel::Pair(outer, c) => write!(f, "({outer},{c})"),
        }
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { labels: (0..n).map(VertexLabel::Index).collect(), adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for (u, list) in g.adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {u}")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|u| (u - 1, u)).collect();
        Self::from_edges(n, &edges).expect("path is simple")
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Self {
        assert_eq!(labels.len(), self.adj.len());
        self.labels = labels;
        self
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn valency(&self) -> Result<usize> {
        if !self.is_regular() {
            return Err(Error::Irregular);
        }
        Ok(self.adj.first().map_or(0, Vec::len))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Same edge set, ignoring labels.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}

/// Cayley graph data: x ~ y iff x⁻¹y lies in the connection set.
#[derive(Clone, Debug)]
pub struct CayleySpec {
    group: AbelianH,
    connection_set: Vec<HElem>,
}

impl CayleySpec {
    pub fn new(group: AbelianH, connection_set: Vec<HElem>) -> Result<Self> {
        let q = group.q();
        for (k, &s) in connection_set.iter().enumerate() {
            if s.i >= q || s.j >= q {
                return Err(Error::InvalidConnectionSet(format!("{s:?} is not an element of H")));
            }
            if s == group.identity() {
                return Err(Error::InvalidConnectionSet("contains the identity".into()));
            }
            if connection_set[..k].contains(&s) {
                return Err(Error::InvalidConnectionSet(format!("duplicate element {s:?}")));
            }
            if !connection_set.contains(&group.inv(s)) {
                return Err(Error::InvalidConnectionSet(format!("not inverse-closed at {s:?}")));
            }
        }
        Ok(CayleySpec { group, connection_set })
    }

    /// {a, a⁻¹, b, b⁻¹} with duplicates removed (they coincide when q = 2).
    pub fn standard(group: AbelianH) -> Self {
        let a = group.gen(Generator::A);
        let b = group.gen(Generator::B);
        let mut set = Vec::new();
        for s in [a, group.inv(a), b, group.inv(b)] {
            if !set.contains(&s) {
                set.push(s);
            }
        }
        CayleySpec::new(group, set).expect("standard connection set is valid")
    }

    pub fn group(&self) -> AbelianH {
        self.group
    }

    pub fn connection_set(&self) -> &[HElem] {
        &self.connection_set
    }
}

pub fn cayley(spec: &CayleySpec) -> Graph {
    let group = spec.group;
    let n = group.order();
    let mut adj = vec![Vec::new(); n];
    for x in group.elements() {
        let list = &mut adj[group.index(x)];
        list.extend(spec.connection_set.iter().map(|&s| group.index(group.mul(x, s))));
        list.sort_unstable();
    }
    let labels = group.elements().map(VertexLabel::Elem).collect();
    Graph { labels, adj }
}

/// Vertex index of (outer vertex, inner vertex) in a wreath product.
pub fn wreath_index(outer_vertex: usize, inner_vertex: usize, inner_order: usize) -> usize {
    outer_vertex * inner_order + inner_vertex
}

/// The wreath product `inner wr outer`: vertices are pairs (δ, c) with δ in
/// `outer` and c in `inner`; (δ₁,c₁) ~ (δ₂,c₂) iff δ₁ = δ₂ and c₁ ~ c₂, or δ₁ ~ δ₂.
pub fn wreath_product(inner: &Graph, outer: &Graph) -> Graph {
    let m = inner.order();
    let n = outer.order() * m;
    let mut adj = vec![Vec::new(); n];
    let mut labels = Vec::with_capacity(n);
    for d in 0..outer.order() {
        for c in 0..m {
            let list = &mut adj[wreath_index(d, c, m)];
            for &d2 in outer.neighbors(d) {
                list.extend((0..m).map(|c2| wreath_index(d2, c2, m)));
            }
            list.extend(inner.neighbors(c).iter().map(|&c2| wreath_index(d, c2, m)));
            list.sort_unstable();
            labels.push(VertexLabel::Pair(Box::new(outer.label(d).clone()), c));
        }
    }
    Graph { labels, adj }
}

#[derive(Clone, Debug)]
pub struct FamilyGraph {
    pub delta: Graph,
    pub graph: Graph,
    pub cayley: CayleySpec,
    /// Set for (p, h) = (2, 1), where a = a⁻¹ and b = b⁻¹ and the valency drops to 2p.
    pub degenerate: bool,
}

/// Γ_h = pK₁ wr Cay(C_q x C_q, {a, a⁻¹, b, b⁻¹}), q = p^h.
pub fn build_family_graph(p: u32, h: u32) -> Result<FamilyGraph> {
    let group = AbelianH::new(p, h)?;
    let spec = CayleySpec::standard(group);
    let delta = cayley(&spec);
    let graph = wreath_product(&Graph::empty(p as usize), &delta);
    Ok(FamilyGraph { delta, graph, degenerate: spec.connection_set.len() < 4, cayley: spec })
}
