use serde::Serialize;

use super::region::{Region, RegionClass};
use super::tail::{all_tails, snake_pair, Tail};
use super::DecompositionError;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SuperregionKind {
    Singleton,
    PlainRegion(RegionClass),
    Tail,
    Multitail,
    ATail,
    BTail,
}

impl SuperregionKind {
    /// Stable name used in census keys.
    pub fn name(&self) -> String {
        match self {
            SuperregionKind::Singleton => "Singleton".into(),
            SuperregionKind::PlainRegion(c) => format!("PlainRegion({c:?})"),
            SuperregionKind::Tail => "Tail".into(),
            SuperregionKind::Multitail => "Multitail".into(),
            SuperregionKind::ATail => "ATail".into(),
            SuperregionKind::BTail => "BTail".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadShape {
    A { y1: Vertex, y2: Vertex },
    B { w: Vertex },
}

/// The head region `H` an A or B tail attaches to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Head {
    pub shape: HeadShape,
    pub attachment: Vertex,
    pub z: Vertex,
    pub x: Vec<Vertex>,
    pub x_prime: Vec<Vertex>,
    /// The region `H` (either `H'` or `H' - z`).
    pub region: usize,
    pub vertices: Vec<Vertex>,
}

impl Head {
    pub fn includes_z(&self) -> bool {
        self.vertices.binary_search(&self.z).is_ok()
    }

    /// `z`'s neighbours outside `H'`.
    pub fn z_outside(&self, g: &Graph) -> Vec<Vertex> {
        let mut h_prime = self.vertices.clone();
        h_prime.push(self.z);
        g.neighbors(self.z)
            .iter()
            .copied()
            .filter(|v| !h_prime.contains(v))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superregion {
    pub id: usize,
    pub kind: SuperregionKind,
    /// Sorted.
    pub vertices: Vec<Vertex>,
    /// Ids of the regions it is made of.
    pub regions: Vec<usize>,
    pub tails: Vec<Tail>,
    pub head: Option<Head>,
}

impl Superregion {
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn is_set(a: &[Vertex], b: &[Vertex]) -> bool {
    let mut a = a.to_vec();
    a.sort_unstable();
    a == b
}

/// Partner of `x` in the matching removed from the clique on `xs`, if any.
fn partner(g: &Graph, xs: &[Vertex], x: Vertex) -> Option<Vertex> {
    let mut missing = xs.iter().copied().filter(|&y| y != x && !g.has_edge(x, y));
    match (missing.next(), missing.next()) {
        (Some(p), None) => Some(p),
        _ => None,
    }
}

/// Checks that `xs` is a clique minus a perfect matching on exactly `x_prime`
/// and that every `x` has neighbourhood `xs - {x, partner} ∪ extra(x)`.
fn clique_minus_matching_on(
    g: &Graph,
    xs: &[Vertex],
    x_prime: &[Vertex],
    extra: impl Fn(Vertex) -> Vec<Vertex>,
) -> bool {
    xs.iter().all(|&x| {
        let matched = x_prime.binary_search(&x).is_ok();
        let p = partner(g, xs, x);
        if matched != p.is_some() {
            return false;
        }
        if let Some(p) = p {
            if x_prime.binary_search(&p).is_err() || partner(g, xs, p) != Some(x) {
                return false;
            }
        }
        let mut expect: Vec<Vertex> = xs.iter().copied().filter(|&y| y != x && Some(y) != p).collect();
        expect.extend(extra(x));
        is_set(&expect, g.neighbors(x))
    })
}

fn match_a_pattern(g: &Graph, d: usize, tail: &Tail) -> Option<(HeadShape, Vertex, Vec<Vertex>, Vec<Vertex>)> {
    let u = tail.attachment;
    let rest: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&x| x != tail.exit()).collect();
    for &z in &rest {
        let xs: Vec<Vertex> = rest.iter().copied().filter(|&x| x != z).collect();
        if xs.is_empty() {
            continue;
        }
        let apexes: Vec<Vertex> = g
            .neighbors(xs[0])
            .iter()
            .copied()
            .filter(|&y| y != u && y != z && xs.binary_search(&y).is_err())
            .filter(|&y| xs.iter().all(|&x| g.has_edge(x, y)))
            .collect();
        let [y1, y2] = apexes[..] else { continue };
        if tail.contains(z) || tail.contains(y1) || tail.contains(y2) {
            continue;
        }
        let mut ny = xs.clone();
        ny.extend([z]);
        let with = |y: Vertex| {
            let mut v = ny.clone();
            v.push(y);
            v
        };
        if !is_set(&with(y2), g.neighbors(y1)) || !is_set(&with(y1), g.neighbors(y2)) {
            continue;
        }
        let x_prime: Vec<Vertex> = xs.iter().copied().filter(|&x| g.has_edge(x, z)).collect();
        if x_prime.len() % 2 == 1 || x_prime.len() + 3 >= d {
            continue;
        }
        let ok = clique_minus_matching_on(g, &xs, &x_prime, |x| {
            let mut e = vec![u, y1, y2];
            if x_prime.binary_search(&x).is_ok() {
                e.push(z);
            }
            e
        });
        if ok {
            return Some((HeadShape::A { y1, y2 }, z, xs, x_prime));
        }
    }
    None
}

fn match_b_pattern(g: &Graph, d: usize, tail: &Tail) -> Option<(HeadShape, Vertex, Vec<Vertex>, Vec<Vertex>)> {
    let u = tail.attachment;
    let xs: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&x| x != tail.exit()).collect();
    if xs.is_empty() {
        return None;
    }
    let apexes: Vec<Vertex> = g
        .neighbors(xs[0])
        .iter()
        .copied()
        .filter(|&y| y != u && xs.binary_search(&y).is_err())
        .filter(|&y| xs.iter().all(|&x| g.has_edge(x, y)))
        .collect();
    let [w] = apexes[..] else { return None };
    let zs: Vec<Vertex> = g
        .neighbors(w)
        .iter()
        .copied()
        .filter(|x| xs.binary_search(x).is_err())
        .collect();
    let [z] = zs[..] else { return None };
    if z == u || tail.contains(w) || tail.contains(z) {
        return None;
    }
    let x_prime: Vec<Vertex> = xs.iter().copied().filter(|&x| g.has_edge(x, z)).collect();
    if x_prime.len() % 2 == 1 || x_prime.is_empty() || x_prime.len() + 1 >= d {
        return None;
    }
    let ok = clique_minus_matching_on(g, &xs, &x_prime, |x| {
        let mut e = vec![u, w];
        if x_prime.binary_search(&x).is_ok() {
            e.push(z);
        }
        e
    });
    ok.then_some((HeadShape::B { w }, z, xs, x_prime))
}

/// Matches the A-tail and B-tail head patterns at `tail`'s attachment vertex.
/// The head region must be the region holding `X - X'`, equal to `H'` or `H' - z`.
pub fn match_head(
    g: &Graph,
    tail: &Tail,
    regions: &[Region],
    owner: &[Option<usize>],
) -> Result<Option<Head>, DecompositionError> {
    let Some(d) = g.regular_degree() else {
        return Err(DecompositionError::NotRegular);
    };
    let a = match_a_pattern(g, d, tail);
    let b = match_b_pattern(g, d, tail);
    let (shape, z, x, x_prime) = match (a, b) {
        (None, None) => return Ok(None),
        (Some(_), Some(_)) => {
            return Err(DecompositionError::AmbiguousHead {
                attachment: tail.attachment,
            })
        }
        (Some(m), None) | (None, Some(m)) => m,
    };
    let mismatch = || DecompositionError::HeadMismatch {
        attachment: tail.attachment,
    };
    let plain: Vec<Vertex> = x
        .iter()
        .copied()
        .filter(|v| x_prime.binary_search(v).is_err())
        .collect();
    let region = plain.first().and_then(|&v| owner[v]).ok_or_else(mismatch)?;
    if plain.iter().any(|&v| owner[v] != Some(region)) {
        return Err(mismatch());
    }
    let mut h: Vec<Vertex> = x.clone();
    h.push(tail.attachment);
    match shape {
        HeadShape::A { y1, y2 } => h.extend([y1, y2]),
        HeadShape::B { w } => h.push(w),
    }
    h.sort_unstable();
    let vertices = regions[region].vertices.clone();
    let mut with_z = h.clone();
    with_z.push(z);
    with_z.sort_unstable();
    if vertices != h && vertices != with_z {
        return Err(mismatch());
    }
    Ok(Some(Head {
        shape,
        attachment: tail.attachment,
        z,
        x,
        x_prime,
        region,
        vertices,
    }))
}

/// Vertices `a ∈ H` with exactly one outside neighbour `v`, where `v` in turn
/// has `a` as its only neighbour in `H`.
pub fn link_vertices(g: &Graph, h: &[Vertex]) -> Vec<Vertex> {
    let inside = |v: &Vertex| h.binary_search(v).is_ok();
    h.iter()
        .copied()
        .filter(|&a| {
            let mut out = g.neighbors(a).iter().filter(|v| !inside(v));
            match (out.next(), out.next()) {
                (Some(&v), None) => g.neighbors(v).iter().filter(|x| inside(x)).count() == 1,
                _ => false,
            }
        })
        .collect()
}

/// Recovers `u_T` from a head region alone: the unique link vertex if there
/// is one, otherwise the unique vertex with several outside neighbours.
pub fn recover_attachment(g: &Graph, h: &[Vertex]) -> Option<Vertex> {
    let links = link_vertices(g, h);
    let candidates = if links.is_empty() {
        h.iter()
            .copied()
            .filter(|&a| g.neighbors(a).iter().filter(|v| h.binary_search(v).is_err()).count() > 1)
            .collect()
    } else {
        links
    };
    match candidates[..] {
        [a] => Some(a),
        _ => None,
    }
}

/// Groups regions and tails into superregions. Tails sharing an attachment
/// vertex form a multitail; a lone tail whose attachment sits in a matching
/// head forms an A or B tail; leftover regions and vertices stand alone.
pub fn assemble_superregions(
    g: &Graph,
    regions: &[Region],
    tails: &[Tail],
) -> Result<Vec<Superregion>, DecompositionError> {
    if let Some((a, b)) = snake_pair(g.n(), &all_tails(tails)) {
        return Err(DecompositionError::SnakeGraph {
            d: g.regular_degree().unwrap_or(0),
            segments: a + b,
        });
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.n()];
    for r in regions {
        for &v in &r.vertices {
            owner[v] = Some(r.id);
        }
    }
    let mut used_region = vec![false; regions.len()];
    let mut out: Vec<Superregion> = Vec::new();
    let regions_within = |vs: &[Vertex], used: &mut Vec<bool>| -> Vec<usize> {
        let mut ids: Vec<usize> = vs.iter().filter_map(|&v| owner[v]).collect();
        ids.sort_unstable();
        ids.dedup();
        for &id in &ids {
            used[id] = true;
        }
        ids
    };

    let mut by_attachment: std::collections::BTreeMap<Vertex, Vec<&Tail>> = Default::default();
    for t in tails {
        by_attachment.entry(t.attachment).or_default().push(t);
    }
    for (&attachment, group) in &by_attachment {
        if group.len() >= 2 {
            let mut vertices: Vec<Vertex> = group.iter().flat_map(|t| t.vertices.iter().copied()).collect();
            vertices.sort_unstable();
            out.push(Superregion {
                id: 0,
                kind: SuperregionKind::Multitail,
                regions: regions_within(&vertices, &mut used_region),
                vertices,
                tails: group.iter().map(|&t| t.clone()).collect(),
                head: None,
            });
            continue;
        }
        let tail = group[0];
        match match_head(g, tail, regions, &owner)? {
            Some(head) => {
                if recover_attachment(g, &head.vertices) != Some(attachment) {
                    return Err(DecompositionError::HeadMismatch { attachment });
                }
                let mut vertices = tail.vertices.clone();
                vertices.extend(&head.vertices);
                vertices.sort_unstable();
                let kind = match head.shape {
                    HeadShape::A { .. } => SuperregionKind::ATail,
                    HeadShape::B { .. } => SuperregionKind::BTail,
                };
                out.push(Superregion {
                    id: 0,
                    kind,
                    regions: regions_within(&vertices, &mut used_region),
                    vertices,
                    tails: vec![tail.clone()],
                    head: Some(head),
                });
            }
            None => out.push(Superregion {
                id: 0,
                kind: SuperregionKind::Tail,
                regions: regions_within(&tail.vertices, &mut used_region),
                vertices: tail.vertices.clone(),
                tails: vec![tail.clone()],
                head: None,
            }),
        }
    }

    let mut covered = vec![false; g.n()];
    for s in &out {
        for &v in &s.vertices {
            covered[v] = true;
        }
    }
    for r in regions.iter().filter(|r| !used_region[r.id]) {
        out.push(Superregion {
            id: 0,
            kind: SuperregionKind::PlainRegion(r.class),
            vertices: r.vertices.clone(),
            regions: vec![r.id],
            tails: Vec::new(),
            head: None,
        });
        for &v in &r.vertices {
            covered[v] = true;
        }
    }
    for v in (0..g.n()).filter(|&v| !covered[v]) {
        out.push(Superregion {
            id: 0,
            kind: SuperregionKind::Singleton,
            vertices: vec![v],
            regions: Vec::new(),
            tails: Vec::new(),
            head: None,
        });
    }
    out.sort_by_key(|s| s.vertices.first().copied());
    for (id, s) in out.iter_mut().enumerate() {
        s.id = id;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionVerdict {
    Holds,
    RefusedSnake {
        d: usize,
        segments: usize,
    },
    Overlap {
        vertex: Vertex,
        first: usize,
        second: usize,
    },
    Uncovered {
        vertex: Vertex,
    },
}

/// Checks that the superregions are pairwise disjoint and cover every vertex.
pub fn verify_partition(g: &Graph, superregions: &[Superregion]) -> PartitionVerdict {
    if let Some((d, segments)) = super::detect::detect_snake(g) {
        return PartitionVerdict::RefusedSnake { d, segments };
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.n()];
    for s in superregions {
        for &v in &s.vertices {
            if let Some(first) = owner[v] {
                return PartitionVerdict::Overlap {
                    vertex: v,
                    first,
                    second: s.id,
                };
            }
            owner[v] = Some(s.id);
        }
    }
    match owner.iter().position(Option::is_none) {
        Some(vertex) => PartitionVerdict::Uncovered { vertex },
        None => PartitionVerdict::Holds,
    }
}
