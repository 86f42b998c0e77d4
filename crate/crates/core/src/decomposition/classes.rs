use serde::Serialize;

use super::region::{Region, RegionClass, RegionWitness};
use super::superregion::{HeadShape, Superregion, SuperregionKind};
use super::DecompositionError;
use crate::graph::{Dist2Profile, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassTag {
    U,
    W,
    N,
    V,
}

/// Membership flags for one vertex. `W` and `N` are designated per
/// superregion and can overlap with `U`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VertexClass {
    pub high: bool,
    pub designated_w: bool,
    pub designated_n: bool,
}

impl VertexClass {
    /// A single display tag; `U` takes precedence, then `W`, then `N`.
    pub fn tag(&self) -> ClassTag {
        if self.high {
            ClassTag::U
        } else if self.designated_w {
            ClassTag::W
        } else if self.designated_n {
            ClassTag::N
        } else {
            ClassTag::V
        }
    }

    pub fn in_v(&self) -> bool {
        self.tag() == ClassTag::V
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Designation {
    pub w: Vec<Vertex>,
    pub n: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    pub d: usize,
    pub vertices: Vec<VertexClass>,
    /// Indexed by superregion id.
    pub designations: Vec<Designation>,
}

impl ClassTable {
    pub fn class(&self, v: Vertex) -> VertexClass {
        self.vertices[v]
    }

    pub fn in_u(&self, v: Vertex) -> bool {
        self.vertices[v].high
    }

    pub fn in_w(&self, v: Vertex) -> bool {
        self.vertices[v].designated_w
    }

    pub fn in_v(&self, v: Vertex) -> bool {
        self.vertices[v].in_v()
    }

    pub fn count(&self, tag: ClassTag) -> usize {
        self.vertices.iter().filter(|c| c.tag() == tag).count()
    }
}

/// The `deg_2 = 1` vertices of an A region, and its `X = R - V - {u}`.
pub(crate) fn a_region_parts(profile: &Dist2Profile, region: &Region) -> Option<(Vertex, Vec<Vertex>, Vec<Vertex>)> {
    let RegionWitness::Pendant { u, .. } = region.witness else {
        return None;
    };
    let (v_set, x): (Vec<Vertex>, Vec<Vertex>) = region
        .vertices
        .iter()
        .copied()
        .filter(|&x| x != u)
        .partition(|&x| profile.deg2(x) == 1);
    Some((u, v_set, x))
}

fn designate(profile: &Dist2Profile, regions: &[Region], s: &Superregion) -> Result<Designation, DecompositionError> {
    let tail_ends = || s.tails.iter().flat_map(|t| t.ends).collect::<Vec<_>>();
    let mut des = match s.kind {
        SuperregionKind::Singleton => Designation::default(),
        SuperregionKind::PlainRegion(class) => {
            let region = &regions[s.regions[0]];
            match class {
                RegionClass::A => {
                    let (_, _, x) = a_region_parts(profile, region)
                        .ok_or_else(|| DecompositionError::Inconsistent("A region without a pendant witness".into()))?;
                    Designation {
                        w: x.into_iter().take(2).collect(),
                        n: Vec::new(),
                    }
                }
                RegionClass::C => {
                    let RegionWitness::Hub { w, .. } = region.witness else {
                        return Err(DecompositionError::Inconsistent(
                            "C region without a hub witness".into(),
                        ));
                    };
                    Designation {
                        w: vec![w],
                        n: Vec::new(),
                    }
                }
                RegionClass::B => {
                    return Err(DecompositionError::Inconsistent(format!(
                        "B region {} outside every tail",
                        region.id
                    )))
                }
                _ => Designation::default(),
            }
        }
        SuperregionKind::Tail | SuperregionKind::Multitail => Designation {
            w: s.tails.iter().map(|t| t.exit()).collect(),
            n: tail_ends(),
        },
        SuperregionKind::ATail | SuperregionKind::BTail => {
            let head = s.head.as_ref().expect("A and B tails carry a head");
            let mut n = tail_ends();
            let w = match head.shape {
                HeadShape::A { y1, y2 } => {
                    n.extend([y1, y2]);
                    head.attachment
                }
                HeadShape::B { w } => w,
            };
            Designation { w: vec![w], n }
        }
    };
    des.w.sort_unstable();
    des.n.sort_unstable();
    Ok(des)
}

/// Assigns `U` by `deg_2 >= d - 2` and designates `W` and `N` per
/// superregion, checking `(d+1)|R ∩ (W ∪ N - U)| <= 2|R|`.
pub fn build_class_table(
    profile: &Dist2Profile,
    d: usize,
    regions: &[Region],
    superregions: &[Superregion],
) -> Result<ClassTable, DecompositionError> {
    let mut vertices: Vec<VertexClass> = (0..profile.n())
        .map(|v| VertexClass {
            high: profile.deg2(v) + 2 >= d,
            ..Default::default()
        })
        .collect();
    let mut designations = Vec::with_capacity(superregions.len());
    for s in superregions {
        let des = designate(profile, regions, s)?;
        for &w in &des.w {
            vertices[w].designated_w = true;
        }
        for &n in &des.n {
            vertices[n].designated_n = true;
        }
        let mut flagged: Vec<Vertex> = des
            .w
            .iter()
            .chain(&des.n)
            .copied()
            .filter(|&v| !vertices[v].high)
            .collect();
        flagged.sort_unstable();
        flagged.dedup();
        if (d + 1) * flagged.len() > 2 * s.len() {
            return Err(DecompositionError::DesignationBound {
                superregion: s.id,
                count: flagged.len(),
                size: s.len(),
            });
        }
        designations.push(des);
    }
    Ok(ClassTable {
        d,
        vertices,
        designations,
    })
}
