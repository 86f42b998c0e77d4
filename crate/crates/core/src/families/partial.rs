use std::collections::BTreeMap;
use std::ops::Range;

use super::FamilyError;
use crate::graph::{Graph, Vertex};

/// A graph under construction toward `d`-regularity. Every vertex tracks how
/// many edges it still needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGraph {
    degree: usize,
    adj: Vec<Vec<Vertex>>,
    roles: BTreeMap<String, Vertex>,
}

impl PartialGraph {
    pub fn new(degree: usize) -> Self {
        PartialGraph {
            degree,
            adj: Vec::new(),
            roles: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertices(&mut self, count: usize) -> Range<Vertex> {
        let start = self.adj.len();
        self.adj.resize_with(start + count, Vec::new);
        start..start + count
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), FamilyError> {
        if u == v || self.adj[u].contains(&v) {
            return Err(FamilyError::Construction(format!("edge {u}-{v} rejected")));
        }
        if self.deficiency(u) == 0 || self.deficiency(v) == 0 {
            return Err(FamilyError::Construction(format!(
                "edge {u}-{v} exceeds degree {}",
                self.degree
            )));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    /// Adds all edges of a clique on `vertices`, except the listed pairs.
    pub fn add_clique_except(&mut self, vertices: &[Vertex], missing: &[(Vertex, Vertex)]) -> Result<(), FamilyError> {
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                if !missing.iter().any(|&(p, q)| (p, q) == (a, b) || (p, q) == (b, a)) {
                    self.add_edge(a, b)?;
                }
            }
        }
        Ok(())
    }

    pub fn deficiency(&self, v: Vertex) -> usize {
        self.degree - self.adj[v].len()
    }

    /// `(vertex, deficiency)` for every vertex still short of degree `d`.
    pub fn deficient(&self) -> Vec<(Vertex, usize)> {
        (0..self.n())
            .map(|v| (v, self.deficiency(v)))
            .filter(|&(_, def)| def > 0)
            .collect()
    }

    pub fn set_role(&mut self, role: impl Into<String>, v: Vertex) {
        self.roles.insert(role.into(), v);
    }

    pub fn role(&self, role: &str) -> Option<Vertex> {
        self.roles.get(role).copied()
    }

    pub fn roles(&self) -> &BTreeMap<String, Vertex> {
        &self.roles
    }

    pub(crate) fn take_roles(&mut self) -> BTreeMap<String, Vertex> {
        std::mem::take(&mut self.roles)
    }

    /// Appends a disjoint copy of `other`; returns the vertex offset.
    pub(crate) fn absorb(&mut self, other: &PartialGraph, role_suffix: &str) -> usize {
        let offset = self.n();
        self.adj
            .extend(other.adj.iter().map(|l| l.iter().map(|&v| v + offset).collect()));
        for (role, &v) in &other.roles {
            self.roles.insert(format!("{role}{role_suffix}"), v + offset);
        }
        offset
    }

    /// Finalizes; every vertex must have reached degree `d`.
    pub fn finish(self) -> Result<Graph, FamilyError> {
        if let Some(&(v, def)) = self.deficient().first() {
            return Err(FamilyError::Construction(format!(
                "vertex {v} still missing {def} edges"
            )));
        }
        Graph::from_adjacency(self.adj).map_err(|e| FamilyError::Construction(e.to_string()))
    }
}
