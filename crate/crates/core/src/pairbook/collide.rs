use std::collections::BTreeMap;

use serde::Serialize;

use super::{tag_pair, OrderedPair, PairBook, PairTag};
use crate::decomposition::{Decomposition, RegionClass, Superregion, SuperregionKind};
use crate::graph::{Dist2Profile, Graph, Vertex};

/// A pair claimed by more than one superregion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub x: Vertex,
    pub y: Vertex,
    /// `(superregion, tag)` for every claimant.
    pub owners: Vec<(usize, PairTag)>,
}

impl Collision {
    /// Only an `S4` claim against an `S3` claim can be repaired.
    pub fn is_allowed(&self) -> bool {
        let mut tags: Vec<PairTag> = self.owners.iter().map(|o| o.1).collect();
        tags.sort();
        tags == [PairTag::S3, PairTag::S4]
    }

    fn owner_with(&self, tag: PairTag) -> Option<usize> {
        self.owners.iter().find(|o| o.1 == tag).map(|o| o.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub allowed: Vec<Collision>,
    pub forbidden: Vec<Collision>,
}

impl CollisionReport {
    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty() && self.forbidden.is_empty()
    }

    pub fn len(&self) -> usize {
        self.allowed.len() + self.forbidden.len()
    }
}

pub fn detect_collisions(book: &PairBook) -> CollisionReport {
    let mut report = CollisionReport::default();
    for ((x, y), owners) in &book.index {
        if owners.len() < 2 {
            continue;
        }
        let owners = owners
            .iter()
            .map(|&o| {
                let tag = book.sets[o].iter().find(|p| (p.x, p.y) == (*x, *y)).map(|p| p.tag);
                (o, tag.expect("index agrees with sets"))
            })
            .collect();
        let c = Collision { x: *x, y: *y, owners };
        if c.is_allowed() {
            report.allowed.push(c);
        } else {
            report.forbidden.push(c);
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unresolved {
    pub x: Vertex,
    pub y: Vertex,
    /// Which replacement case applied, and why it failed.
    pub case: String,
    /// Kind of the superregion holding the pair in `S4`.
    pub w_side: String,
    /// Kind of the superregion holding the pair in `S3`.
    pub v_side: String,
}

/// `(superregion, old pair, new pair)`.
pub type Replacement = (usize, (Vertex, Vertex), (Vertex, Vertex));

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub found: usize,
    pub resolved: usize,
    pub unresolved: Vec<Unresolved>,
    /// In application order.
    pub replacements: Vec<Replacement>,
}

/// Replacement sources for the `S3` pair `(x, y)` when `(x, y)` is also in
/// `S4` of `w_side`.
fn candidates(
    g: &Graph,
    profile: &Dist2Profile,
    dec: &Decomposition,
    w_side: &Superregion,
    x: Vertex,
    y: Vertex,
) -> Result<Vec<Vertex>, String> {
    let n2y = profile.n2(y);
    let n2py = profile.n2_prime(y);
    let (deg2, bound) = (profile.deg2(y), n2py.len());
    match w_side.kind {
        SuperregionKind::PlainRegion(RegionClass::A) => {
            let rest: Vec<Vertex> = n2y.iter().copied().filter(|&z| !w_side.contains(z)).collect();
            let out: Vec<Vertex> = rest.iter().copied().filter(|z| n2py.binary_search(z).is_ok()).collect();
            if out.is_empty() {
                Err("A-region owner: no boundary vertex of y outside the region (peanut configuration)".into())
            } else {
                Ok(out)
            }
        }
        SuperregionKind::PlainRegion(RegionClass::C) => {
            let mut out: Vec<Vertex> = g
                .neighbors(x)
                .iter()
                .filter(|&&u| g.has_edge(u, y))
                .flat_map(|&u| g.neighbors(u).iter().copied())
                .filter(|&x2| x2 != x && w_side.contains(x2) && n2y.binary_search(&x2).is_ok())
                .collect();
            out.sort_unstable();
            out.dedup();
            if out.is_empty() {
                Err("C-region owner: no second neighbour of the shared vertex at distance two from y".into())
            } else {
                Ok(out)
            }
        }
        SuperregionKind::Tail => match (deg2, bound) {
            (3, 2) => Ok(n2py.iter().copied().filter(|&z| z != x).collect()),
            (3, 3) => {
                let out: Vec<Vertex> = n2py
                    .iter()
                    .copied()
                    .filter(|&z| z != x && !dec.classes.in_w(z))
                    .collect();
                if out.is_empty() {
                    Err("tail owner, deg2(y) = 3, |N2'(y)| = 3: both other boundary vertices are W vertices".into())
                } else {
                    Ok(out)
                }
            }
            (a, b) => Err(format!(
                "tail owner, deg2(y) = {a}, |N2'(y)| = {b}: no replacement rule"
            )),
        },
        SuperregionKind::Multitail => Err(format!("multitail owner, deg2(y) = {deg2}: no replacement rule")),
        SuperregionKind::ATail | SuperregionKind::BTail => Err("A/B-tail owner: no replacement rule".into()),
        SuperregionKind::Singleton | SuperregionKind::PlainRegion(_) => {
            Err("owner without W vertices: no replacement rule".into())
        }
    }
}

/// Repairs `S4`/`S3` collisions by moving the `S3` claim to another source
/// vertex, iterating until nothing changes. Forbidden collisions and cases
/// with no applicable rule are reported, never dropped.
pub fn resolve_collisions(g: &Graph, profile: &Dist2Profile, dec: &Decomposition, book: &mut PairBook) -> Resolution {
    let initial = detect_collisions(book);
    let mut res = Resolution {
        found: initial.len(),
        ..Default::default()
    };
    let mut failures: BTreeMap<(Vertex, Vertex), Unresolved> = BTreeMap::new();
    let limit = book.total().max(1);
    let mut passes = 0;
    loop {
        let report = detect_collisions(book);
        if report.allowed.is_empty() {
            break;
        }
        if passes == limit {
            for c in &report.allowed {
                failures.insert(
                    (c.x, c.y),
                    unresolved(dec, c, "replacement pass limit reached (cycle)".into()),
                );
            }
            break;
        }
        passes += 1;
        let mut progress = false;
        for c in &report.allowed {
            let (w_id, v_id) = (c.owner_with(PairTag::S4).unwrap(), c.owner_with(PairTag::S3).unwrap());
            let v_side = &dec.superregions[v_id];
            match candidates(g, profile, dec, &dec.superregions[w_id], c.x, c.y) {
                Ok(cands) => {
                    let chosen = cands.into_iter().find(|&z| {
                        profile.at_distance_two(z, c.y)
                            && tag_pair(&dec.classes, v_side, z, c.y) == Some(PairTag::S3)
                            && book.owners(z, c.y).is_empty()
                    });
                    match chosen {
                        Some(z) => {
                            let new = OrderedPair {
                                x: z,
                                y: c.y,
                                tag: PairTag::S3,
                                owner: v_id,
                            };
                            book.replace(v_id, (c.x, c.y), new);
                            res.replacements.push((v_id, (c.x, c.y), (z, c.y)));
                            res.resolved += 1;
                            failures.remove(&(c.x, c.y));
                            progress = true;
                        }
                        None => {
                            failures.insert(
                                (c.x, c.y),
                                unresolved(dec, c, "no admissible replacement vertex".into()),
                            );
                        }
                    }
                }
                Err(case) => {
                    failures.insert((c.x, c.y), unresolved(dec, c, case));
                }
            }
        }
        if !progress {
            break;
        }
    }
    for c in detect_collisions(book).forbidden {
        failures.insert(
            (c.x, c.y),
            Unresolved {
                x: c.x,
                y: c.y,
                case: format!(
                    "overlap of tags {:?} is not repairable",
                    c.owners.iter().map(|o| o.1).collect::<Vec<_>>()
                ),
                w_side: dec.superregions[c.owners[0].0].kind.name(),
                v_side: dec.superregions[c.owners[1].0].kind.name(),
            },
        );
    }
    res.unresolved = failures.into_values().collect();
    res
}

fn unresolved(dec: &Decomposition, c: &Collision, case: String) -> Unresolved {
    let kind = |tag| {
        c.owner_with(tag)
            .map(|id| dec.superregions[id].kind.name())
            .unwrap_or_default()
    };
    Unresolved {
        x: c.x,
        y: c.y,
        case,
        w_side: kind(PairTag::S4),
        v_side: kind(PairTag::S3),
    }
}
