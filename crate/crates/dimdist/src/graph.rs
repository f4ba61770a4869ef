//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is one `u64` bit row per vertex, so neighborhood operations are
//! single word operations. Every constructor goes through [`Graph::from_rows`]
//! which debug-checks symmetry and loop-freeness.
//!
//! Vertex numbering of the named families (tests depend on these):
//!
//! * `Path(n)`: vertices `0..n` along the path, edges `i–(i+1)`.
//! * `Cycle(n)`: vertices `0..n` around the cycle, plus the closing edge `(n-1)–0`.
//! * `Complete(n)`, `Empty(n)`: vertices `0..n`.
//! * `Star(k)` = K_{1,k}: center `0`, leaves `1..=k`.
//! * `CompleteBipartite(s, t)`: first part `0..s`, second part `s..s+t`.
//! * `CompleteMultipartite(sizes)`: parts occupy consecutive index ranges.
//! * `Wheel(n)` = C_n + K_1: cycle `0..n`, hub `n`.
//! * `Kite`: K_4 − e on `{0,1,2,3}` with the edge `2–3` missing, pendant `4`
//!   attached to the degree-2 vertex `2`.
//! * `SubdividedStar(k)` = T_k: center `0`; leg `i` (subdivided `i` times,
//!   `i = 0..k`) is numbered consecutively outward, so leg 0 is the single
//!   vertex `1`, leg 1 is `2, 3`, and so on; the last vertex of each leg is
//!   its leaf.
//! * `PropW(n, m)` = G_{n,m}: T_{m-n+2} with its numbering above, followed by
//!   the K_n vertices; the tree center `0` is joined to the whole clique.

use std::fmt;

use thiserror::Error;

/// Maximum supported vertex count (one adjacency row per machine word).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop ({v},{v}) rejected")]
    SelfLoop { v: usize },
    #[error("graph on {n} vertices exceeds the {MAX_VERTICES}-vertex representation")]
    TooManyVertices { n: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
}

/// Simple undirected graph with bit-vector adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Builds a graph from raw adjacency rows. Debug-checks the invariants.
    fn from_rows(n: usize, adj: Vec<u64>) -> Self {
        let g = Graph { n, adj };
        g.debug_validate();
        g
    }

    fn debug_validate(&self) {
        debug_assert!(self.n >= 1 && self.n <= MAX_VERTICES);
        debug_assert_eq!(self.adj.len(), self.n);
        let mask = full_mask(self.n);
        for u in 0..self.n {
            debug_assert_eq!(self.adj[u] & !mask, 0, "adjacency bits outside range");
            debug_assert_eq!(self.adj[u] >> u & 1, 0, "self-loop at {u}");
            for v in (u + 1)..self.n {
                debug_assert_eq!(
                    self.adj[u] >> v & 1,
                    self.adj[v] >> u & 1,
                    "asymmetric adjacency at ({u},{v})"
                );
            }
        }
    }

    /// Builds the graph with exactly the given edges; duplicates and reversed
    /// copies collapse. Rejects out-of-range endpoints and self-loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v: u });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph::from_rows(n, adj))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Bitmask of the component containing `start`, grown by BFS.
    pub fn component_mask(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        loop {
            let mut next = seen;
            let mut frontier = seen;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                next |= self.adj[v];
            }
            if next == seen {
                return seen;
            }
            seen = next;
        }
    }

    pub fn is_connected(&self) -> bool {
        self.component_mask(0) == full_mask(self.n)
    }

    /// Complement on the same vertex set (an involution on labeled graphs).
    pub fn complement(&self) -> Graph {
        let mask = full_mask(self.n);
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & mask & !(1 << v))
            .collect();
        Graph::from_rows(self.n, adj)
    }

    /// Disjoint union; `other`'s vertices are shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut adj = self.adj.clone();
        adj.resize(n, 0);
        for v in 0..other.n {
            adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(Graph::from_rows(n, adj))
    }

    /// Join G + H: disjoint union plus all cross edges.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = full_mask(self.n);
        let right = full_mask(g.n) & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        g.debug_validate();
        Ok(g)
    }

    /// The image graph under a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u) {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_rows(self.n, adj)
    }

    /// Induced subgraph on the vertices of `mask`, renumbered ascending.
    /// Returns the subgraph and the original index of each new vertex.
    pub fn induced(&self, mask: u64) -> (Graph, Vec<usize>) {
        let verts: Vec<usize> = BitIter(mask).collect();
        assert!(!verts.is_empty(), "induced subgraph needs a vertex");
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![0u64; verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for w in BitIter(self.adj[v] & mask) {
                adj[i] |= 1 << index[w];
            }
        }
        (Graph::from_rows(verts.len(), adj), verts)
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Descriptors for every named family used in the classifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDescriptor {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    /// K_{1,k}: a center plus `k` leaves.
    Star(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    /// C_n joined with one hub vertex.
    Wheel(usize),
    Kite,
    /// T_k: K_{1,k} with edge `i` subdivided `i` times.
    SubdividedStar(usize),
    /// G_{n,m}: T_{m-n+2} with its center joined to a K_n.
    PropW(usize, usize),
}

/// Builds the named family with the numbering documented in the module docs.
pub fn standard_family(desc: &FamilyDescriptor) -> Result<Graph, GraphError> {
    use FamilyDescriptor::*;
    match *desc {
        Path(n) => {
            require(n >= 1, "Path(n) needs n >= 1")?;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &edges)
        }
        Cycle(n) => {
            require(n >= 3, "Cycle(n) needs n >= 3")?;
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((n - 1, 0));
            Graph::from_edges(n, &edges)
        }
        Complete(n) => {
            require(n >= 1, "Complete(n) needs n >= 1")?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, &edges)
        }
        Empty(n) => {
            require(n >= 1, "Empty(n) needs n >= 1")?;
            Graph::from_edges(n, &[])
        }
        Star(k) => {
            require(k >= 1, "Star(k) needs k >= 1")?;
            let edges: Vec<_> = (1..=k).map(|leaf| (0, leaf)).collect();
            Graph::from_edges(k + 1, &edges)
        }
        CompleteBipartite(s, t) => {
            require(s >= 1 && t >= 1, "CompleteBipartite(s,t) needs s,t >= 1")?;
            complete_multipartite(&[s, t])
        }
        CompleteMultipartite(ref sizes) => {
            require(
                !sizes.is_empty() && sizes.iter().all(|&s| s >= 1),
                "CompleteMultipartite needs nonempty part sizes >= 1",
            )?;
            complete_multipartite(sizes)
        }
        Wheel(n) => {
            require(n >= 3, "Wheel(n) needs n >= 3")?;
            let cycle = standard_family(&Cycle(n))?;
            let hub = standard_family(&Complete(1))?;
            cycle.join(&hub)
        }
        Kite => Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4)]),
        SubdividedStar(k) => {
            require(k >= 3, "SubdividedStar(k) needs k >= 3")?;
            let n = 1 + k + k * (k - 1) / 2;
            if n > MAX_VERTICES {
                return Err(GraphError::TooManyVertices { n });
            }
            let mut edges = Vec::new();
            let mut next = 1usize;
            for leg in 0..k {
                // leg `leg` has `leg` internal vertices plus its leaf
                let mut prev = 0usize;
                for _ in 0..=leg {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Graph::from_edges(n, &edges)
        }
        PropW(n, m) => {
            require(2 <= n && n < m, "PropW(n,m) needs 2 <= n < m")?;
            let tree = standard_family(&SubdividedStar(m - n + 2))?;
            let clique = standard_family(&Complete(n))?;
            let tn = tree.n();
            let mut g = tree.disjoint_union(&clique)?;
            // the tree center is its unique maximum-degree vertex
            for v in tn..g.n {
                g.adj[0] |= 1 << v;
                g.adj[v] |= 1;
            }
            g.debug_validate();
            Ok(g)
        }
    }
}

fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
    let n: usize = sizes.iter().sum();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n });
    }
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

fn require(cond: bool, msg: &str) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::InvalidFamily(msg.to_owned()))
    }
}

/// All-pairs shortest-path distances; `None` marks unreachable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Option<u32>>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        self.d[u * self.n + v]
    }

    /// Largest finite distance; `None` iff some pair is unreachable.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for x in &self.d {
            best = best.max((*x)?);
        }
        Some(best)
    }
}

/// BFS from every vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![None; n * n];
    for s in 0..n {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut dist = 0u32;
        while frontier != 0 {
            for v in BitIter(frontier) {
                d[s * n + v] = Some(dist);
            }
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= g.neighbor_mask(v);
            }
            frontier = next & !seen;
            seen |= next;
            dist += 1;
        }
    }
    DistanceMatrix { n, d }
}

/// Basic shape facts used to route graphs to the right solvers and checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureProbe {
    pub connected: bool,
    pub tree: bool,
    pub unicyclic: bool,
    pub diameter: Option<u32>,
}

pub fn structure_probe(g: &Graph) -> StructureProbe {
    let connected = g.is_connected();
    let m = g.edge_count();
    StructureProbe {
        connected,
        tree: connected && m == g.n() - 1,
        unicyclic: connected && m == g.n(),
        diameter: all_pairs_distances(g).diameter(),
    }
}

pub fn is_path_graph(g: &Graph) -> bool {
    let p = structure_probe(g);
    p.tree && g.vertices().all(|v| g.degree(v) <= 2)
}

/// True for K_{1,k} with k >= 2 (a star that is not also counted as a path).
pub fn is_star_graph(g: &Graph) -> bool {
    let p = structure_probe(g);
    p.tree && g.n() >= 3 && g.vertices().any(|c| g.degree(c) == g.n() - 1)
}

/// The unique cycle of a unicyclic graph, in traversal order.
///
/// Peels degree-1 vertices until only the 2-core (the cycle) remains.
pub fn unique_cycle(g: &Graph) -> Option<Vec<usize>> {
    if !structure_probe(g).unicyclic {
        return None;
    }
    let mut alive = full_mask(g.n());
    loop {
        let mut removed = false;
        for v in BitIter(alive) {
            if (g.neighbor_mask(v) & alive).count_ones() == 1 {
                alive &= !(1 << v);
                removed = true;
            }
        }
        if !removed {
            break;
        }
    }
    // walk around the cycle from its lowest vertex
    let start = alive.trailing_zeros() as usize;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = (g.neighbor_mask(start) & alive).trailing_zeros() as usize;
    while cur != start {
        order.push(cur);
        let next_mask = g.neighbor_mask(cur) & alive & !(1 << prev);
        prev = cur;
        cur = next_mask.trailing_zeros() as usize;
    }
    Some(order)
}
