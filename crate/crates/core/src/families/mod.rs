//! Constructors for the named graph families: snakes, peanuts, tails closed
//! off with clique caps, A and B tails, multitails, and seeded random
//! regular graphs.
//!
//! Every constructor returns the graph together with a [`FamilyMeta`] that
//! records where the structurally important vertices ended up, so tests can
//! cross-check the analyzer against the construction.

mod partial;
mod random;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use partial::PartialGraph;
pub use random::{random_regular, RANDOM_REGULAR_ATTEMPTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("random regular generation failed after {attempts} attempts")]
    RetriesExhausted { attempts: usize },
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::InvalidParameters(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Snake,
    Peanut,
    TailClosure,
    ATailClosure,
    BTailClosure,
    MultitailClosure,
    RandomRegular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyParams {
    Snake { ka: usize, kb: usize },
    Peanut,
    Tail { k: usize },
    ATail { k: usize, x_prime: usize },
    BTail { k: usize, x_prime: usize },
    Multitail { segment_counts: Vec<usize> },
    Random { n: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMeta {
    pub d: usize,
    pub params: FamilyParams,
    /// Named vertices (`u_T`, `w_T`, `z`, `y1`, ...).
    pub labels: BTreeMap<String, Vertex>,
    /// Named vertex sets (`X`, `X'`, `cap`, ...).
    pub sets: BTreeMap<String, Vec<Vertex>>,
}

impl FamilyMeta {
    fn new(d: usize, params: FamilyParams, labels: BTreeMap<String, Vertex>) -> Self {
        FamilyMeta {
            d,
            params,
            labels,
            sets: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match self.params {
            FamilyParams::Snake { .. } => FamilyKind::Snake,
            FamilyParams::Peanut => FamilyKind::Peanut,
            FamilyParams::Tail { .. } => FamilyKind::TailClosure,
            FamilyParams::ATail { .. } => FamilyKind::ATailClosure,
            FamilyParams::BTail { .. } => FamilyKind::BTailClosure,
            FamilyParams::Multitail { .. } => FamilyKind::MultitailClosure,
            FamilyParams::Random { .. } => FamilyKind::RandomRegular,
        }
    }

    pub fn label(&self, role: &str) -> Vertex {
        self.labels[role]
    }
}

/// `K_q` with an `m`-edge matching removed. The matched vertices are
/// `0..2m`, paired as `(0,1), (2,3), ...`.
pub fn clique_minus_matching(q: usize, m: usize) -> Result<Graph, FamilyError> {
    if 2 * m > q {
        return invalid(format!("matching of size {m} does not fit in {q} vertices"));
    }
    let edges = (0..q)
        .flat_map(|a| (a + 1..q).map(move |b| (a, b)))
        .filter(|&(a, b)| !(b < 2 * m && a % 2 == 0 && b == a + 1));
    Graph::from_edges(q, edges).map_err(|e| FamilyError::Construction(e.to_string()))
}

fn consecutive_pairs(vs: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    vs.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

/// A `k`-segment tail for odd `d`: a B region (clique on `d+1` vertices
/// minus a matching on `d-1` of them, plus the connector joined to those
/// `d-1`) followed by `k-1` copies of `K_{d+1}` minus one edge, chained by
/// single edges. The last connector, `w_T`, is the only deficient vertex.
///
/// Roles: `w_T`, `b_connector`, `y1`, `y2` (the two `deg_2 = 1` vertices).
pub fn tail_fragment(d: usize, k: usize) -> Result<PartialGraph, FamilyError> {
    if d.is_multiple_of(2) {
        return invalid(format!("tails need odd degree, got {d}"));
    }
    if d < 5 {
        return invalid(format!("tails need degree at least 5, got {d}"));
    }
    if k == 0 {
        return invalid("a tail has at least one segment");
    }
    let mut p = PartialGraph::new(d);
    let b = p.add_vertices(d + 2);
    let connector = b.start;
    let inner: Vec<Vertex> = (b.start + 1..b.start + d).collect();
    let (y1, y2) = (b.start + d, b.start + d + 1);
    let mut body = inner.clone();
    body.extend([y1, y2]);
    p.add_clique_except(&body, &consecutive_pairs(&inner))?;
    for &x in &inner {
        p.add_edge(connector, x)?;
    }
    p.set_role("b_connector", connector);
    p.set_role("y1", y1);
    p.set_role("y2", y2);

    let mut last = connector;
    for _ in 1..k {
        let seg: Vec<Vertex> = p.add_vertices(d + 1).collect();
        let (entry, exit) = (seg[0], seg[1]);
        p.add_clique_except(&seg, &[(entry, exit)])?;
        p.add_edge(last, entry)?;
        last = exit;
    }
    p.set_role("w_T", last);
    Ok(p)
}

/// Two disjoint copies of `p`, with each deficient vertex joined to its
/// mirror image.
pub fn mirror_close(p: &PartialGraph) -> Result<Graph, FamilyError> {
    let deficient = p.deficient();
    if let Some(&(v, def)) = deficient.iter().find(|&&(_, def)| def != 1) {
        return invalid(format!("vertex {v} has deficiency {def}, mirror closure needs 1"));
    }
    let mut out = PartialGraph::new(p.degree());
    out.absorb(p, "");
    let offset = out.absorb(p, "'");
    for (v, _) in deficient {
        out.add_edge(v, v + offset)?;
    }
    out.finish()
}

fn check_odd_at_least_7(d: usize) -> Result<(), FamilyError> {
    if d.is_multiple_of(2) || d < 7 {
        return invalid(format!("degree must be odd and at least 7, got {d}"));
    }
    Ok(())
}

/// Two tails with `ka` and `kb` segments whose exit connectors are joined.
pub fn make_snake(d: usize, ka: usize, kb: usize) -> Result<(Graph, FamilyMeta), FamilyError> {
    check_odd_at_least_7(d)?;
    if ka == 0 || kb == 0 {
        return invalid("snake tails need at least one segment each");
    }
    let mut g = PartialGraph::new(d);
    g.absorb(&tail_fragment(d, ka)?, "_a");
    g.absorb(&tail_fragment(d, kb)?, "_b");
    let (wa, wb) = (g.role("w_T_a").unwrap(), g.role("w_T_b").unwrap());
    g.add_edge(wa, wb)?;
    let labels = g.take_roles();
    Ok((g.finish()?, FamilyMeta::new(d, FamilyParams::Snake { ka, kb }, labels)))
}

/// The even-degree exception on `2d + 3` vertices: `R1` is `K_{d+1}` minus
/// `w1 w2`, `R2` is `K_{d+2}` minus `u v1, u v2, u v3` and a perfect matching
/// on the rest, and `u` is joined to `w1` and `w2`.
pub fn make_peanut(d: usize) -> Result<(Graph, FamilyMeta), FamilyError> {
    if d % 2 == 1 || d < 8 {
        return invalid(format!("peanut graphs need even degree at least 8, got {d}"));
    }
    let mut p = PartialGraph::new(d);
    let r1: Vec<Vertex> = p.add_vertices(d + 1).collect();
    let r2: Vec<Vertex> = p.add_vertices(d + 2).collect();
    let (w1, w2) = (r1[0], r1[1]);
    let u = r2[0];
    let vs = &r2[1..4];
    let rest = &r2[4..];
    p.add_clique_except(&r1, &[(w1, w2)])?;
    let mut missing = consecutive_pairs(rest);
    missing.extend(vs.iter().map(|&v| (u, v)));
    p.add_clique_except(&r2, &missing)?;
    p.add_edge(u, w1)?;
    p.add_edge(u, w2)?;
    for (role, v) in [
        ("u", u),
        ("w1", w1),
        ("w2", w2),
        ("v1", vs[0]),
        ("v2", vs[1]),
        ("v3", vs[2]),
    ] {
        p.set_role(role, v);
    }
    let labels = p.take_roles();
    let mut meta = FamilyMeta::new(d, FamilyParams::Peanut, labels);
    meta.sets.insert("R1".into(), r1);
    meta.sets.insert("R2".into(), r2);
    Ok((p.finish()?, meta))
}

/// Closes `attach`, which must be missing exactly `r` edges, with a copy of
/// `K_{d+1}` minus an `r/2`-matching whose `r` matched vertices are joined
/// to `attach`.
pub fn clique_cap(mut p: PartialGraph, attach: Vertex, r: usize) -> Result<PartialGraph, FamilyError> {
    if p.deficiency(attach) != r {
        return invalid(format!(
            "cap size {r} does not match deficiency {} of vertex {attach}",
            p.deficiency(attach)
        ));
    }
    attach_cap(&mut p, attach, r)?;
    Ok(p)
}

fn attach_cap(p: &mut PartialGraph, attach: Vertex, r: usize) -> Result<Vec<Vertex>, FamilyError> {
    let d = p.degree();
    if r % 2 == 1 || r < 2 {
        return invalid(format!("cap size must be even and at least 2, got {r}"));
    }
    if r > d + 1 || r > p.deficiency(attach) {
        return invalid(format!("cap size {r} too large"));
    }
    let cap: Vec<Vertex> = p.add_vertices(d + 1).collect();
    p.add_clique_except(&cap, &consecutive_pairs(&cap[..r]))?;
    for &c in &cap[..r] {
        p.add_edge(attach, c)?;
    }
    Ok(cap)
}

/// A single tail whose attachment vertex `u_T` is closed off with two caps
/// (sizes 2 and `d-3`), so that no second tail appears.
pub fn make_tail_graph(d: usize, k: usize) -> Result<(Graph, FamilyMeta), FamilyError> {
    check_odd_at_least_7(d)?;
    let mut p = tail_fragment(d, k)?;
    let w_t = p.role("w_T").unwrap();
    let u_t = p.add_vertices(1).start;
    p.add_edge(u_t, w_t)?;
    p.set_role("u_T", u_t);
    let cap_a = attach_cap(&mut p, u_t, 2)?;
    let cap_b = attach_cap(&mut p, u_t, d - 3)?;
    let labels = p.take_roles();
    let mut meta = FamilyMeta::new(d, FamilyParams::Tail { k }, labels);
    meta.sets.insert("cap".into(), cap_a.into_iter().chain(cap_b).collect());
    Ok((p.finish()?, meta))
}

fn rename_tail_ends(p: &mut PartialGraph) {
    let (y1, y2) = (p.role("y1").unwrap(), p.role("y2").unwrap());
    p.set_role("v1", y1);
    p.set_role("v2", y2);
}

/// A tail whose attachment vertex sits in an A-tail head: `u_T`, `z`, `X`
/// (`|X| = d-2`), `X' ⊂ X` and apexes `y1`, `y2`. The cut vertex `z` is
/// closed with a clique cap.
pub fn make_a_tail_graph(d: usize, k: usize, x_prime: usize) -> Result<(Graph, FamilyMeta), FamilyError> {
    check_odd_at_least_7(d)?;
    if x_prime % 2 == 1 {
        return invalid(format!("|X'| must be even, got {x_prime}"));
    }
    if x_prime == d - 3 {
        return invalid("|X'| = d-3 makes the graph a snake");
    }
    if x_prime > d - 3 {
        return invalid(format!("|X'| must be below d-3, got {x_prime}"));
    }
    let mut p = tail_fragment(d, k)?;
    rename_tail_ends(&mut p);
    let w_t = p.role("w_T").unwrap();
    let head = p.add_vertices(d + 2);
    let u_t = head.start;
    let z = head.start + 1;
    let (y1, y2) = (head.start + 2, head.start + 3);
    let xs: Vec<Vertex> = (head.start + 4..head.end).collect();
    let xp = &xs[..x_prime];
    p.add_edge(u_t, w_t)?;
    p.add_edge(u_t, z)?;
    p.add_clique_except(&xs, &consecutive_pairs(xp))?;
    for &x in &xs {
        p.add_edge(u_t, x)?;
        p.add_edge(x, y1)?;
        p.add_edge(x, y2)?;
    }
    p.add_edge(y1, y2)?;
    p.add_edge(z, y1)?;
    p.add_edge(z, y2)?;
    for &x in xp {
        p.add_edge(x, z)?;
    }
    let cap_size = d - x_prime - 3;
    let mut p = clique_cap(p, z, cap_size)?;
    for (role, v) in [("u_T", u_t), ("z", z), ("y1", y1), ("y2", y2)] {
        p.set_role(role, v);
    }
    let labels = p.take_roles();
    let cap: Vec<Vertex> = (p.n() - (d + 1)..p.n()).collect();
    let mut meta = FamilyMeta::new(d, FamilyParams::ATail { k, x_prime }, labels);
    meta.sets.insert("X".into(), xs.clone());
    meta.sets.insert("X'".into(), xp.to_vec());
    meta.sets.insert("Z".into(), cap[..cap_size].to_vec());
    meta.sets.insert("cap".into(), cap);
    Ok((p.finish()?, meta))
}

/// A tail whose attachment vertex sits in a B-tail head: `X` (`|X| = d-1`),
/// `X' ⊂ X`, an apex `w` and the cut vertex `z`, closed with a clique cap.
pub fn make_b_tail_graph(d: usize, k: usize, x_prime: usize) -> Result<(Graph, FamilyMeta), FamilyError> {
    check_odd_at_least_7(d)?;
    if x_prime % 2 == 1 || x_prime < 2 || x_prime > d - 3 {
        return invalid(format!("|X'| must be even in [2, d-3], got {x_prime}"));
    }
    let mut p = tail_fragment(d, k)?;
    rename_tail_ends(&mut p);
    let w_t = p.role("w_T").unwrap();
    let head = p.add_vertices(d + 2);
    let u_t = head.start;
    let w = head.start + 1;
    let z = head.start + 2;
    let xs: Vec<Vertex> = (head.start + 3..head.end).collect();
    let xp = &xs[..x_prime];
    p.add_edge(u_t, w_t)?;
    p.add_clique_except(&xs, &consecutive_pairs(xp))?;
    for &x in &xs {
        p.add_edge(u_t, x)?;
        p.add_edge(w, x)?;
    }
    for &x in xp {
        p.add_edge(z, x)?;
    }
    p.add_edge(w, z)?;
    let cap_size = d - 1 - x_prime;
    let mut p = clique_cap(p, z, cap_size)?;
    for (role, v) in [("u_T", u_t), ("w", w), ("z", z)] {
        p.set_role(role, v);
    }
    let labels = p.take_roles();
    let cap: Vec<Vertex> = (p.n() - (d + 1)..p.n()).collect();
    let mut meta = FamilyMeta::new(d, FamilyParams::BTail { k, x_prime }, labels);
    meta.sets.insert("X".into(), xs.clone());
    meta.sets.insert("X'".into(), xp.to_vec());
    meta.sets.insert("cap".into(), cap);
    Ok((p.finish()?, meta))
}

/// `m` tails sharing one attachment vertex `u`, whose remaining `d - m`
/// edges go to a clique cap. Roles of tail `i` carry the suffix `_i`.
pub fn make_multitail_graph(d: usize, segment_counts: &[usize]) -> Result<(Graph, FamilyMeta), FamilyError> {
    check_odd_at_least_7(d)?;
    let m = segment_counts.len();
    if m < 2 || m > d - 2 {
        return invalid(format!("multitail needs 2 <= m <= d-2 tails, got {m}"));
    }
    if (d - m) % 2 == 1 {
        return invalid(format!("d - m = {} is odd, no cap closes the shared vertex", d - m));
    }
    let mut p = PartialGraph::new(d);
    let u = p.add_vertices(1).start;
    for (i, &k) in segment_counts.iter().enumerate() {
        let frag = tail_fragment(d, k)?;
        p.absorb(&frag, &format!("_{i}"));
        let w_t = p.role(&format!("w_T_{i}")).unwrap();
        p.add_edge(u, w_t)?;
    }
    p.set_role("u", u);
    let mut p = clique_cap(p, u, d - m)?;
    let labels = p.take_roles();
    let cap: Vec<Vertex> = (p.n() - (d + 1)..p.n()).collect();
    let mut meta = FamilyMeta::new(
        d,
        FamilyParams::Multitail {
            segment_counts: segment_counts.to_vec(),
        },
        labels,
    );
    meta.sets.insert("cap".into(), cap);
    Ok((p.finish()?, meta))
}
