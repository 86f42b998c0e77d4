//! Immutable simple graphs, breadth-first distances, graph powers and the
//! distance-two profile every other module is built on.

use std::collections::VecDeque;

use thiserror::Error;

/// Dense 0-based vertex identifier.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("adjacency is not symmetric: {0} lists {1} but not vice versa")]
    Asymmetric(Vertex, Vertex),
    #[error("graph power exponent must be at least 1")]
    ZeroPower,
}

/// Simple undirected graph stored as sorted neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph { adj }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// Validates and adopts raw adjacency lists (order inside a list is free).
    pub fn from_adjacency(mut adj: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = adj.len();
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
                }
            }
            for &u in list.iter() {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: u, n });
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
            }
        }
        for v in 0..n {
            for &u in &adj[v] {
                if adj[u].binary_search(&v).is_err() {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == first).then_some(first)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + offset).collect()));
        Graph { adj }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}

/// Shortest-path distance; unreachable vertices are explicit, not a magic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

const UNSEEN: u32 = u32::MAX;

/// BFS levels from `source`, stopping after `limit` levels. Unseen entries
/// hold `UNSEEN`.
fn bfs_levels(g: &Graph, source: Vertex, limit: u32) -> Vec<u32> {
    let mut dist = vec![UNSEEN; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        if next > limit {
            continue;
        }
        for &u in g.neighbors(v) {
            if dist[u] == UNSEEN {
                dist[u] = next;
                queue.push_back(u);
            }
        }
    }
    dist
}

pub fn bfs_distances(g: &Graph, v: Vertex) -> Result<Vec<Distance>, GraphError> {
    g.check_vertex(v)?;
    Ok(bfs_levels(g, v, u32::MAX - 1)
        .into_iter()
        .map(|d| {
            if d == UNSEEN {
                Distance::Unreachable
            } else {
                Distance::Finite(d)
            }
        })
        .collect())
}

/// `G^k`: same vertices, an edge wherever `1 <= d_G(u, v) <= k`.
pub fn graph_power(g: &Graph, k: u32) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::ZeroPower);
    }
    let adj = (0..g.n())
        .map(|v| {
            bfs_levels(g, v, k)
                .into_iter()
                .enumerate()
                .filter(|&(u, d)| u != v && d != UNSEEN)
                .map(|(u, _)| u)
                .collect()
        })
        .collect();
    Ok(Graph { adj })
}

/// Per-vertex second neighbourhoods `N_2(v)` and their boundary `N_2'(v)`,
/// the members of `N_2(v)` adjacent to some vertex at distance three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dist2Profile {
    n2: Vec<Vec<Vertex>>,
    n2_prime: Vec<Vec<Vertex>>,
}

/// Highest `deg_2` still counted as low degree.
pub const LOW_DEGREE_MAX: usize = 3;

impl Dist2Profile {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut dist = vec![UNSEEN; n];
        let mut touched = Vec::new();
        let mut n2 = Vec::with_capacity(n);
        let mut n2_prime = Vec::with_capacity(n);
        for v in 0..n {
            dist[v] = 0;
            touched.push(v);
            let mut frontier = vec![v];
            let mut second = Vec::new();
            for level in 1..=3u32 {
                let mut next = Vec::new();
                for &a in &frontier {
                    for &b in g.neighbors(a) {
                        if dist[b] == UNSEEN {
                            dist[b] = level;
                            touched.push(b);
                            next.push(b);
                        }
                    }
                }
                if level == 2 {
                    second = next.clone();
                }
                frontier = next;
            }
            second.sort_unstable();
            // dist-3 vertices are marked now; a boundary vertex touches one
            let prime = second
                .iter()
                .copied()
                .filter(|&a| g.neighbors(a).iter().any(|&b| dist[b] == 3))
                .collect();
            n2.push(second);
            n2_prime.push(prime);
            for t in touched.drain(..) {
                dist[t] = UNSEEN;
            }
        }
        Dist2Profile { n2, n2_prime }
    }

    pub fn n(&self) -> usize {
        self.n2.len()
    }

    pub fn deg2(&self, v: Vertex) -> usize {
        self.n2[v].len()
    }

    pub fn n2(&self, v: Vertex) -> &[Vertex] {
        &self.n2[v]
    }

    pub fn n2_prime(&self, v: Vertex) -> &[Vertex] {
        &self.n2_prime[v]
    }

    pub fn is_low_degree(&self, v: Vertex) -> bool {
        self.deg2(v) <= LOW_DEGREE_MAX
    }

    pub fn at_distance_two(&self, u: Vertex, v: Vertex) -> bool {
        self.n2[u].binary_search(&v).is_ok()
    }

    pub fn sum_deg2(&self) -> usize {
        self.n2.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicChecks {
    pub is_connected: bool,
    pub regular_degree: Option<usize>,
    pub square_complete: bool,
}

pub fn basic_checks(g: &Graph) -> BasicChecks {
    let n = g.n();
    let is_connected = n == 0 || bfs_levels(g, 0, u32::MAX - 1).iter().all(|&d| d != UNSEEN);
    let square_complete = (0..n).all(|v| bfs_levels(g, v, 2).iter().all(|&d| d != UNSEEN));
    BasicChecks {
        is_connected,
        regular_degree: g.regular_degree(),
        square_complete,
    }
}

/// Vertices reachable from `start` without passing through `removed`.
pub(crate) fn component_avoiding(g: &Graph, start: Vertex, removed: &[Vertex]) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    for &r in removed {
        seen[r] = true;
    }
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = vec![start];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
                out.push(u);
            }
        }
    }
    out.sort_unstable();
    out
}
