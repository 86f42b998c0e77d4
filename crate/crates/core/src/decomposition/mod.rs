//! Regions of low-degree vertices, the tails built from them, and the
//! superregions that partition the vertex set.

mod classes;
mod detect;
mod region;
mod superregion;
mod tail;

use thiserror::Error;

use crate::graph::{Dist2Profile, Graph, Vertex};

pub(crate) use classes::a_region_parts;
pub use classes::{build_class_table, ClassTable, ClassTag, Designation, VertexClass};
pub use detect::{detect_peanut, detect_snake};
pub use region::{
    build_and_classify_regions, low_degree_set, region_equivalence, region_vertices, Region, RegionClass, RegionWitness,
};
pub use superregion::{
    assemble_superregions, link_vertices, match_head, recover_attachment, verify_partition, Head, HeadShape,
    PartitionVerdict, Superregion, SuperregionKind,
};
pub use tail::{all_tails, check_tail_intersection, find_tails, Tail, TailIntersection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("degenerate vertex {vertex}: {reason}")]
    Degenerate { vertex: Vertex, reason: String },
    #[error("region {region} breaks region bound {part} (witness {witness:?})")]
    RegionBound {
        part: u8,
        region: usize,
        witness: Vec<Vertex>,
    },
    #[error("graph is a snake with degree {d} and {segments} segments")]
    SnakeGraph { d: usize, segments: usize },
    #[error("tail attached at {attachment} matches both head patterns")]
    AmbiguousHead { attachment: Vertex },
    #[error("head pattern at {attachment} does not line up with its region")]
    HeadMismatch { attachment: Vertex },
    #[error("superregion {superregion} has {count} W/N vertices outside U for {size} vertices")]
    DesignationBound {
        superregion: usize,
        count: usize,
        size: usize,
    },
    #[error("inconsistent decomposition: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub d: usize,
    pub regions: Vec<Region>,
    /// Proper tails only.
    pub tails: Vec<Tail>,
    pub superregions: Vec<Superregion>,
    pub classes: ClassTable,
}

impl Decomposition {
    /// Superregion id for every vertex.
    pub fn owners(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.classes.vertices.len()];
        for s in &self.superregions {
            for &v in &s.vertices {
                owner[v] = s.id;
            }
        }
        owner
    }

    /// `(kind name, count)` sorted by name.
    pub fn census(&self) -> Vec<(String, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for s in &self.superregions {
            *counts.entry(s.kind.name()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

/// Runs the full decomposition: regions, tails, superregions and classes.
pub fn decompose(g: &Graph, profile: &Dist2Profile) -> Result<Decomposition, DecompositionError> {
    let d = g.regular_degree().ok_or(DecompositionError::NotRegular)?;
    let classes = region_equivalence(g, profile, &low_degree_set(profile));
    let regions = build_and_classify_regions(g, profile, &classes)?;
    let tails = find_tails(g, profile, &regions);
    let superregions = assemble_superregions(g, &regions, &tails)?;
    let classes = build_class_table(profile, d, &regions, &superregions)?;
    Ok(Decomposition {
        d,
        regions,
        tails,
        superregions,
        classes,
    })
}
