//! The ordered-pair certificate: every superregion `R` is charged a set
//! `S_R` of distance-two pairs, at least four per vertex of `R ∩ 𝒱`, and the
//! sets are made pairwise disjoint by local replacements.

mod bound;
mod build;
mod collide;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{detect_peanut, ClassTable, Decomposition, Superregion};
use crate::graph::{Dist2Profile, Graph, Vertex};

pub use bound::{aggregate_bound, theorem_rhs, BoundReport, BoundVerdict, Shortcut};
pub use build::build_pairs;
pub use collide::{
    detect_collisions, resolve_collisions, Collision, CollisionReport, Replacement, Resolution, Unresolved,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairTag {
    S1,
    S2,
    S3,
    S4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPair {
    pub x: Vertex,
    pub y: Vertex,
    pub tag: PairTag,
    pub owner: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("pair ({x}, {y}) of superregion {owner} is invalid: {reason}")]
    InvalidPair {
        owner: usize,
        x: Vertex,
        y: Vertex,
        reason: String,
    },
    #[error("superregion {owner} has a malformed {what}")]
    Malformed { owner: usize, what: String },
    #[error("pair sets are not defined for the {0} exception")]
    ExceptionGraph(&'static str),
}

/// Classifies `(x, y)` for superregion `r`, trying the four membership rules
/// in order.
pub fn tag_pair(table: &ClassTable, r: &Superregion, x: Vertex, y: Vertex) -> Option<PairTag> {
    let (xin, yin) = (r.contains(x), r.contains(y));
    if xin && yin {
        Some(PairTag::S1)
    } else if xin && !yin && table.in_v(x) {
        Some(PairTag::S2)
    } else if yin && table.in_v(y) && table.in_u(x) && !xin {
        Some(PairTag::S3)
    } else if xin && !yin && table.in_w(x) {
        Some(PairTag::S4)
    } else {
        None
    }
}

/// All pair sets, indexed by superregion id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBook {
    pub sets: Vec<Vec<OrderedPair>>,
    index: BTreeMap<(Vertex, Vertex), Vec<usize>>,
}

impl PairBook {
    pub fn from_sets(sets: Vec<Vec<OrderedPair>>) -> Self {
        let mut book = PairBook {
            sets,
            index: BTreeMap::new(),
        };
        book.reindex();
        book
    }

    fn reindex(&mut self) {
        self.index.clear();
        for (owner, set) in self.sets.iter().enumerate() {
            for p in set {
                self.index.entry((p.x, p.y)).or_default().push(owner);
            }
        }
    }

    /// Superregions whose set contains `(x, y)`.
    pub fn owners(&self, x: Vertex, y: Vertex) -> &[usize] {
        self.index.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    pub fn total(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = &OrderedPair> {
        self.sets.iter().flatten()
    }

    /// Whether every pair has exactly one owner.
    pub fn is_disjoint(&self) -> bool {
        self.index.values().all(|o| o.len() == 1)
    }

    pub(crate) fn replace(&mut self, owner: usize, old: (Vertex, Vertex), new: OrderedPair) {
        let set = &mut self.sets[owner];
        if let Some(slot) = set.iter_mut().find(|p| (p.x, p.y) == old) {
            *slot = new;
        }
        if let Some(o) = self.index.get_mut(&old) {
            o.retain(|&id| id != owner);
            if o.is_empty() {
                self.index.remove(&old);
            }
        }
        self.index.entry((new.x, new.y)).or_default().push(owner);
    }
}

/// Builds `S_R` for every superregion. Refuses the peanut exception; snakes
/// never reach this point because decomposition refuses them.
pub fn build_book(g: &Graph, profile: &Dist2Profile, dec: &Decomposition) -> Result<PairBook, PairError> {
    if detect_peanut(g).is_some() {
        return Err(PairError::ExceptionGraph("peanut"));
    }
    let sets = dec
        .superregions
        .iter()
        .map(|s| build_pairs(g, profile, dec, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PairBook::from_sets(sets))
}

/// `(superregion, |S_R|, 4|R ∩ 𝒱|)` for every superregion below its quota.
pub fn quota_shortfalls(book: &PairBook, dec: &Decomposition) -> Vec<(usize, usize, usize)> {
    dec.superregions
        .iter()
        .filter_map(|s| {
            let need = 4 * s.vertices.iter().filter(|&&v| dec.classes.in_v(v)).count();
            let have = book.sets[s.id].len();
            (have < need).then_some((s.id, have, need))
        })
        .collect()
}

/// Low-degree vertices `v` receiving more than `4 - deg_2(v)` pairs tagged
/// `S3`: `(superregion, v, count)`.
pub fn s3_overloads(book: &PairBook, profile: &Dist2Profile) -> Vec<(usize, Vertex, usize)> {
    let mut counts: BTreeMap<(usize, Vertex), usize> = BTreeMap::new();
    for p in book.pairs().filter(|p| p.tag == PairTag::S3) {
        *counts.entry((p.owner, p.y)).or_default() += 1;
    }
    counts
        .into_iter()
        .filter(|&((_, v), c)| profile.is_low_degree(v) && c + profile.deg2(v) > 4)
        .map(|((s, v), c)| (s, v, c))
        .collect()
}

#[cfg(test)]
pub(crate) mod tests;
