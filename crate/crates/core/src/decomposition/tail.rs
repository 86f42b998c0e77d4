use super::region::{Region, RegionClass, RegionWitness};
use crate::graph::{Dist2Profile, Graph, Vertex};

/// A B region followed by zero or more `K_{d+1}`-minus-an-edge segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    /// `segments[0]` is the B region; later entries are the chained segments.
    pub segments: Vec<Vec<Vertex>>,
    /// All tail vertices, sorted.
    pub vertices: Vec<Vertex>,
    /// `connectors[i]` is the vertex of segment `i` with an edge into segment
    /// `i + 1` (or to `u_T` for the last one).
    pub connectors: Vec<Vertex>,
    /// `entries[i - 1]` is the vertex of segment `i` joined to `connectors[i - 1]`.
    pub entries: Vec<Vertex>,
    /// The two `deg_2 = 1` vertices of the B region.
    pub ends: [Vertex; 2],
    /// `u_T`: the unique outside vertex adjacent to the tail.
    pub attachment: Vertex,
}

impl Tail {
    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    /// `w_T`: the tail vertex adjacent to `u_T`.
    pub fn exit(&self) -> Vertex {
        *self.connectors.last().expect("tails have a B region")
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn b_connector(&self) -> Vertex {
        self.connectors[0]
    }

    /// The tail made of the first `k` segments.
    pub fn prefix(&self, k: usize) -> Tail {
        assert!(k >= 1 && k <= self.segments.len());
        let segments = self.segments[..k].to_vec();
        let mut vertices: Vec<Vertex> = segments.concat();
        vertices.sort_unstable();
        let attachment = if k == self.segments.len() {
            self.attachment
        } else {
            self.entries[k - 1]
        };
        Tail {
            segments,
            vertices,
            connectors: self.connectors[..k].to_vec(),
            entries: self.entries[..k - 1].to_vec(),
            ends: self.ends,
            attachment,
        }
    }

    /// This tail and all its improper prefixes, longest first.
    pub fn prefixes(&self) -> Vec<Tail> {
        (1..=self.segments.len()).rev().map(|k| self.prefix(k)).collect()
    }

    fn is_subset_of(&self, other: &Tail) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }
}

/// The B region anchored at a `deg_2 = 1` vertex `v`, if there is one:
/// `(region vertices, connector, ends)`.
pub(crate) fn b_region_at(
    g: &Graph,
    profile: &Dist2Profile,
    d: usize,
    v: Vertex,
) -> Option<(Vec<Vertex>, Vertex, [Vertex; 2])> {
    if profile.deg2(v) != 1 {
        return None;
    }
    let u = profile.n2(v)[0];
    let mut component: Vec<Vertex> = g.neighbors(v).to_vec();
    component.push(v);
    component.sort_unstable();
    let ends: Vec<Vertex> = component.iter().copied().filter(|&x| !g.has_edge(u, x)).collect();
    if component.len() - ends.len() != d - 1 || ends.len() != 2 {
        return None;
    }
    let mut region = component;
    region.push(u);
    region.sort_unstable();
    Some((region, u, [ends[0], ends[1]]))
}

/// Grows a tail from a B region until the next step fails to be a segment.
/// Returns `None` if the connector does not have exactly one outside neighbour.
pub(crate) fn grow_tail(
    g: &Graph,
    d: usize,
    b_region: Vec<Vertex>,
    connector: Vertex,
    ends: [Vertex; 2],
) -> Option<Tail> {
    let mut inside = vec![false; g.n()];
    for &v in &b_region {
        inside[v] = true;
    }
    let mut segments = vec![b_region];
    let mut connectors = vec![connector];
    let mut entries = Vec::new();
    let mut current = connector;
    let attachment = loop {
        let mut outside = g.neighbors(current).iter().copied().filter(|&x| !inside[x]);
        let (Some(next), None) = (outside.next(), outside.next()) else {
            return None;
        };
        match segment_at(g, d, next, current, &inside) {
            Some((segment, exit)) => {
                for &v in &segment {
                    inside[v] = true;
                }
                segments.push(segment);
                entries.push(next);
                connectors.push(exit);
                current = exit;
            }
            None => break next,
        }
    };
    let mut vertices: Vec<Vertex> = segments.concat();
    vertices.sort_unstable();
    Some(Tail {
        segments,
        vertices,
        connectors,
        entries,
        ends,
        attachment,
    })
}

/// Checks that `entry` starts a `K_{d+1}` minus `{entry, exit}` hanging off
/// `prev`, with `exit` having exactly one neighbour outside the segment.
fn segment_at(g: &Graph, d: usize, entry: Vertex, prev: Vertex, inside: &[bool]) -> Option<(Vec<Vertex>, Vertex)> {
    let interior: Vec<Vertex> = g.neighbors(entry).iter().copied().filter(|&x| x != prev).collect();
    if interior.len() != d - 1 || interior.iter().any(|&x| inside[x]) {
        return None;
    }
    let mut extra = g
        .neighbors(interior[0])
        .iter()
        .copied()
        .filter(|&x| x != entry && interior.binary_search(&x).is_err());
    let (Some(exit), None) = (extra.next(), extra.next()) else {
        return None;
    };
    if inside[exit] || exit == prev || g.has_edge(entry, exit) {
        return None;
    }
    let mut segment = interior.clone();
    segment.extend([entry, exit]);
    segment.sort_unstable();
    let in_segment = |x: Vertex| segment.binary_search(&x).is_ok();
    // A degree-d vertex whose d neighbours all lie in the (d+1)-set sees the
    // whole set minus itself.
    if !interior.iter().all(|&a| g.neighbors(a).iter().all(|&x| in_segment(x))) {
        return None;
    }
    if g.neighbors(exit).iter().filter(|&&x| !in_segment(x)).count() != 1 {
        return None;
    }
    Some((segment, exit))
}

/// Maximal tails grown from every B region, with improper ones dropped.
pub fn find_tails(g: &Graph, profile: &Dist2Profile, regions: &[Region]) -> Vec<Tail> {
    let Some(d) = g.regular_degree() else {
        return Vec::new();
    };
    let grown: Vec<Tail> = regions
        .iter()
        .filter(|r| r.class == RegionClass::B)
        .filter_map(|r| {
            let RegionWitness::Pendant { v, .. } = r.witness else {
                return None;
            };
            let (b, connector, ends) = b_region_at(g, profile, d, v)?;
            grow_tail(g, d, b, connector, ends)
        })
        .collect();
    proper_only(grown)
}

fn proper_only(tails: Vec<Tail>) -> Vec<Tail> {
    let keep: Vec<bool> = tails
        .iter()
        .enumerate()
        .map(|(i, t)| {
            !tails
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && t.is_subset_of(o) && (t.vertices.len() < o.vertices.len() || j < i))
        })
        .collect();
    let mut out: Vec<Tail> = tails
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(t, _)| t)
        .collect();
    out.sort_by_key(|t| t.vertices[0]);
    out
}

/// Every tail of the graph: each proper tail and all its prefixes.
pub fn all_tails(proper: &[Tail]) -> Vec<Tail> {
    let mut out: Vec<Tail> = proper.iter().flat_map(Tail::prefixes).collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out.dedup_by(|a, b| a.vertices == b.vertices);
    out
}

/// Two disjoint tails covering every vertex, each attached to the other's exit.
pub(crate) fn snake_pair(n: usize, tails: &[Tail]) -> Option<(usize, usize)> {
    for (i, a) in tails.iter().enumerate() {
        for b in &tails[i + 1..] {
            if a.vertices.len() + b.vertices.len() == n
                && a.attachment == b.exit()
                && b.attachment == a.exit()
                && !a.vertices.iter().any(|&v| b.contains(v))
            {
                return Some((a.segment_count(), b.segment_count()));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailIntersection {
    Consistent,
    Snake {
        d: usize,
        segments: usize,
    },
    /// Two tails share `shared` but neither contains the other.
    Violation {
        first: Vec<Vertex>,
        second: Vec<Vertex>,
        shared: Vertex,
    },
}

/// Every pair of intersecting tails must be nested unless the graph is a snake.
pub fn check_tail_intersection(g: &Graph, tails: &[Tail]) -> TailIntersection {
    if let (Some(d), Some((a, b))) = (g.regular_degree(), snake_pair(g.n(), tails)) {
        return TailIntersection::Snake { d, segments: a + b };
    }
    for (i, a) in tails.iter().enumerate() {
        for b in &tails[i + 1..] {
            if let Some(&shared) = a.vertices.iter().find(|&&v| b.contains(v)) {
                if !a.is_subset_of(b) && !b.is_subset_of(a) {
                    return TailIntersection::Violation {
                        first: a.vertices.clone(),
                        second: b.vertices.clone(),
                        shared,
                    };
                }
            }
        }
    }
    TailIntersection::Consistent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::region::{build_and_classify_regions, low_degree_set, region_equivalence};
    use crate::families::{make_a_tail_graph, make_multitail_graph, make_snake, make_tail_graph};

    fn tails_of(g: &Graph) -> Vec<Tail> {
        let p = Dist2Profile::new(g);
        let classes = region_equivalence(g, &p, &low_degree_set(&p));
        let regions = build_and_classify_regions(g, &p, &classes).unwrap();
        find_tails(g, &p, &regions)
    }

    #[test]
    fn snake_tails_are_maximal() {
        let (g, _) = make_snake(7, 2, 2).unwrap();
        let tails = tails_of(&g);
        assert_eq!(tails.len(), 2);
        // each maximal tail runs through the other snake half up to its B region
        assert!(tails
            .iter()
            .all(|t| t.segment_count() == 3 && t.vertices.len() == 9 + 16));
    }

    #[test]
    fn tail_closure_has_one_tail() {
        let (g, meta) = make_tail_graph(7, 3).unwrap();
        let tails = tails_of(&g);
        assert_eq!(tails.len(), 1);
        let t = &tails[0];
        assert_eq!(t.segment_count(), 3);
        assert_eq!(t.attachment, meta.label("u_T"));
        assert_eq!(t.exit(), meta.label("w_T"));
        let mut ends = [meta.label("y1"), meta.label("y2")];
        ends.sort();
        assert_eq!(t.ends, ends);
    }

    #[test]
    fn a_tail_graph_has_one_short_tail() {
        let (g, meta) = make_a_tail_graph(7, 1, 0).unwrap();
        let tails = tails_of(&g);
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].segment_count(), 1);
        assert_eq!(tails[0].attachment, meta.label("u_T"));
    }

    #[test]
    fn prefixes_step_back_attachment() {
        let (g, meta) = make_tail_graph(7, 2).unwrap();
        let tail = &tails_of(&g)[0];
        let short = tail.prefix(1);
        assert_eq!(short.vertices.len(), 9);
        assert_eq!(short.exit(), meta.label("b_connector"));
        assert!(tail.contains(short.attachment));
        assert_eq!(all_tails(std::slice::from_ref(tail)).len(), 2);
    }

    #[test]
    fn intersection_verdicts() {
        let (g, _) = make_snake(7, 1, 1).unwrap();
        let tails = all_tails(&tails_of(&g));
        assert_eq!(
            check_tail_intersection(&g, &tails),
            TailIntersection::Snake { d: 7, segments: 2 }
        );

        let (g, _) = make_multitail_graph(7, &[1, 1, 1]).unwrap();
        let tails = all_tails(&tails_of(&g));
        assert_eq!(tails.len(), 3);
        assert_eq!(check_tail_intersection(&g, &tails), TailIntersection::Consistent);

        let (g, _) = make_tail_graph(9, 2).unwrap();
        let tails = all_tails(&tails_of(&g));
        assert_eq!(check_tail_intersection(&g, &tails), TailIntersection::Consistent);
    }

    #[test]
    fn no_b_regions_no_tails() {
        let (g, _) = crate::families::make_peanut(8).unwrap();
        assert!(tails_of(&g).is_empty());
    }
}
