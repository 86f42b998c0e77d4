use serde::Serialize;

use super::DecompositionError;
use crate::graph::{component_avoiding, Dist2Profile, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RegionClass {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RegionClass {
    pub const ALL: [RegionClass; 7] = [
        RegionClass::A,
        RegionClass::B,
        RegionClass::C,
        RegionClass::D,
        RegionClass::E,
        RegionClass::F,
        RegionClass::G,
    ];
}

/// The vertices that justify a region's class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionWitness {
    /// A and B regions. `N_2(v) = {u}`, `component` is the component of
    /// `G - u` containing `v` (which is `{v} ∪ N(v)`), and
    /// `t = |component ∩ N(u)|`.
    Pendant {
        v: Vertex,
        u: Vertex,
        t: usize,
        component: Vec<Vertex>,
    },
    /// C regions. `deg_2(v) = 2` with `N_2'(v) = {u}`; `component` is the
    /// component of `G - u` containing `v`, `inner` its vertices at distance
    /// two from `u`, `w` the lowest-id vertex of `R ∩ N(u)` and `spokes` the
    /// rest of `R ∩ N(u)`.
    Hub {
        v: Vertex,
        u: Vertex,
        w: Vertex,
        component: Vec<Vertex>,
        inner: Vec<Vertex>,
        spokes: Vec<Vertex>,
    },
    /// D regions: some `v` with `deg_2(v) = 2`, none with a single boundary vertex.
    TwoSided { v: Vertex },
    /// E, F and G regions: `v` attains `k = min |N_2'|` over the low-degree core.
    Boundary { v: Vertex, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    /// The equivalence class of low-degree vertices.
    pub core: Vec<Vertex>,
    /// `core ∪ N(core)`, sorted.
    pub vertices: Vec<Vertex>,
    pub class: RegionClass,
    pub witness: RegionWitness,
    /// Minimum `deg_2` over all region vertices.
    pub min_deg2: usize,
}

impl Region {
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

/// All vertices with `deg_2 <= 3`.
pub fn low_degree_set(profile: &Dist2Profile) -> Vec<Vertex> {
    (0..profile.n()).filter(|&v| profile.is_low_degree(v)).collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Classes of the relation chaining low-degree vertices at distance at most
/// two. Classes are sorted and ordered by their smallest vertex.
pub fn region_equivalence(g: &Graph, profile: &Dist2Profile, low: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in low.iter().enumerate() {
        index[v] = i;
    }
    let mut parent: Vec<usize> = (0..low.len()).collect();
    for (i, &v) in low.iter().enumerate() {
        for &u in g.neighbors(v).iter().chain(profile.n2(v)) {
            let j = index[u];
            if j != usize::MAX {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut slot = vec![usize::MAX; low.len()];
    for (i, &v) in low.iter().enumerate() {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[root]].push(v);
    }
    classes
}

/// `core ∪ N(core)`, sorted.
pub fn region_vertices(g: &Graph, core: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = core
        .iter()
        .flat_map(|&v| std::iter::once(v).chain(g.neighbors(v).iter().copied()))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn sorted_intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// Turns equivalence classes into labelled regions, asserting the general
/// size and locality bounds on the way.
pub fn build_and_classify_regions(
    g: &Graph,
    profile: &Dist2Profile,
    classes: &[Vec<Vertex>],
) -> Result<Vec<Region>, DecompositionError> {
    let d = g.regular_degree().ok_or(DecompositionError::NotRegular)?;
    let mut regions = Vec::with_capacity(classes.len());
    let mut owner = vec![usize::MAX; g.n()];
    for (id, core) in classes.iter().enumerate() {
        let vertices = region_vertices(g, core);
        let min_deg2 = vertices.iter().map(|&v| profile.deg2(v)).min().unwrap_or(0);
        check_bounds(g, profile, d, id, core, &vertices, min_deg2)?;
        for &v in &vertices {
            if owner[v] != usize::MAX {
                return Err(DecompositionError::RegionBound {
                    part: 5,
                    region: id,
                    witness: vec![v],
                });
            }
            owner[v] = id;
        }
        let (class, witness) = classify(g, profile, d, core, &vertices)?;
        regions.push(Region {
            id,
            core: core.clone(),
            vertices,
            class,
            witness,
            min_deg2,
        });
    }
    Ok(regions)
}

fn check_bounds(
    g: &Graph,
    profile: &Dist2Profile,
    d: usize,
    id: usize,
    core: &[Vertex],
    vertices: &[Vertex],
    min_deg2: usize,
) -> Result<(), DecompositionError> {
    let fail = |part, witness| {
        Err(DecompositionError::RegionBound {
            part,
            region: id,
            witness,
        })
    };
    if vertices.len() < d + 1 {
        return fail(1, core.to_vec());
    }
    for &v in core {
        if let Some(&x) = vertices
            .iter()
            .find(|&&x| x != v && !g.has_edge(v, x) && !profile.at_distance_two(v, x))
        {
            return fail(2, vec![v, x]);
        }
    }
    if vertices.len() > d + min_deg2 + 1 {
        return fail(3, core.to_vec());
    }
    if vertices.len() > d + 4 {
        return fail(4, core.to_vec());
    }
    Ok(())
}

fn classify(
    g: &Graph,
    profile: &Dist2Profile,
    d: usize,
    core: &[Vertex],
    vertices: &[Vertex],
) -> Result<(RegionClass, RegionWitness), DecompositionError> {
    let deg2 = |v: Vertex| profile.deg2(v);
    if let Some(&v) = core.iter().find(|&&v| deg2(v) == 0) {
        return Err(DecompositionError::Degenerate {
            vertex: v,
            reason: "vertex has no vertex at distance two".into(),
        });
    }
    if let Some(&v) = core.iter().find(|&&v| deg2(v) == 1) {
        let u = profile.n2(v)[0];
        let component = component_avoiding(g, v, &[u]);
        let t = sorted_intersection(g.neighbors(u), &component).len();
        let class = if t == d - 1 { RegionClass::B } else { RegionClass::A };
        return Ok((class, RegionWitness::Pendant { v, u, t, component }));
    }
    if let Some(&v) = core.iter().find(|&&v| deg2(v) == 2) {
        let hub = core
            .iter()
            .copied()
            .find(|&x| deg2(x) == 2 && profile.n2_prime(x).len() == 1);
        return Ok(match hub {
            Some(v) => {
                let u = profile.n2_prime(v)[0];
                let component = component_avoiding(g, v, &[u]);
                let inner = sorted_intersection(profile.n2(u), &component);
                let around_u = sorted_intersection(g.neighbors(u), vertices);
                let (w, spokes) = match around_u.split_first() {
                    Some((&w, rest)) => (w, rest.to_vec()),
                    None => {
                        return Err(DecompositionError::Inconsistent(format!(
                            "C region around {v} has no neighbour of {u}"
                        )))
                    }
                };
                (
                    RegionClass::C,
                    RegionWitness::Hub {
                        v,
                        u,
                        w,
                        component,
                        inner,
                        spokes,
                    },
                )
            }
            None => (RegionClass::D, RegionWitness::TwoSided { v }),
        });
    }
    let (v, k) = core
        .iter()
        .map(|&v| (v, profile.n2_prime(v).len()))
        .min_by_key(|&(v, k)| (k, v))
        .expect("region core is never empty");
    let class = match k {
        1 => RegionClass::E,
        2 => RegionClass::F,
        3 => RegionClass::G,
        _ => {
            return Err(DecompositionError::Degenerate {
                vertex: v,
                reason: "low-degree vertex with no boundary at distance two".into(),
            })
        }
    };
    Ok((class, RegionWitness::Boundary { v, k }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_peanut, make_snake};

    fn regions_of(g: &Graph) -> Vec<Region> {
        let p = Dist2Profile::new(g);
        let classes = region_equivalence(g, &p, &low_degree_set(&p));
        build_and_classify_regions(g, &p, &classes).unwrap()
    }

    #[test]
    fn empty_low_set_gives_no_classes() {
        let g = Graph::complete(5);
        let p = Dist2Profile::new(&g);
        assert!(region_equivalence(&g, &p, &[]).is_empty());
    }

    #[test]
    fn snake_has_two_b_regions() {
        let (g, meta) = make_snake(7, 1, 1).unwrap();
        let p = Dist2Profile::new(&g);
        let low = low_degree_set(&p);
        // every tail vertex except the two connectors is low degree
        assert_eq!(low.len(), 16);
        assert!(!low.contains(&meta.label("b_connector_a")));
        let regions = regions_of(&g);
        assert_eq!(regions.len(), 2);
        assert!(regions.iter().all(|r| r.class == RegionClass::B && r.len() == 9));
    }

    #[test]
    fn peanut_has_two_a_regions() {
        let (g, meta) = make_peanut(8).unwrap();
        let regions = regions_of(&g);
        assert_eq!(regions.len(), 2);
        assert!(regions.iter().all(|r| r.class == RegionClass::A));
        assert_eq!(regions[0].vertices, meta.sets["R1"]);
        assert_eq!(regions[1].vertices, meta.sets["R2"]);
    }

    #[test]
    fn segments_are_two_sided_regions() {
        let (g, _) = make_snake(7, 2, 1).unwrap();
        let classes: Vec<RegionClass> = regions_of(&g).iter().map(|r| r.class).collect();
        assert_eq!(classes, [RegionClass::B, RegionClass::D, RegionClass::B]);
    }

    #[test]
    fn complete_graph_is_degenerate() {
        let g = Graph::complete(8);
        let p = Dist2Profile::new(&g);
        let classes = region_equivalence(&g, &p, &low_degree_set(&p));
        assert!(matches!(
            build_and_classify_regions(&g, &p, &classes),
            Err(DecompositionError::Degenerate { .. })
        ));
    }
}
