use std::collections::BTreeSet;

use super::{tag_pair, OrderedPair, PairError};
use crate::decomposition::{
    a_region_parts, Decomposition, HeadShape, RegionClass, RegionWitness, Superregion, SuperregionKind, Tail,
};
use crate::graph::{Dist2Profile, Graph, Vertex};

struct Collector<'a> {
    g: &'a Graph,
    profile: &'a Dist2Profile,
    dec: &'a Decomposition,
    region: &'a Superregion,
    raw: BTreeSet<(Vertex, Vertex)>,
}

impl<'a> Collector<'a> {
    fn add(&mut self, x: Vertex, y: Vertex) {
        self.raw.insert((x, y));
    }

    fn finish(self) -> Result<Vec<OrderedPair>, PairError> {
        let owner = self.region.id;
        self.raw
            .into_iter()
            .map(|(x, y)| {
                if !self.profile.at_distance_two(x, y) {
                    return Err(PairError::InvalidPair {
                        owner,
                        x,
                        y,
                        reason: "endpoints are not at distance two".into(),
                    });
                }
                let tag = tag_pair(&self.dec.classes, self.region, x, y).ok_or_else(|| PairError::InvalidPair {
                    owner,
                    x,
                    y,
                    reason: "pair fits none of the four membership rules".into(),
                })?;
                Ok(OrderedPair { x, y, tag, owner })
            })
            .collect()
    }

    fn inside(&self, v: Vertex) -> bool {
        self.region.contains(v)
    }

    /// `S_T1 ∪ S_T2 ∪ S_T3` for one tail.
    fn tail_core(&mut self, tail: &Tail) {
        let u_t = tail.attachment;
        for &x in &tail.vertices {
            if self.profile.deg2(x) != 2 {
                continue;
            }
            for &y in self.profile.n2(x) {
                if tail.contains(y) {
                    self.add(x, y);
                    self.add(y, x);
                } else if y == u_t {
                    self.add(x, u_t);
                    self.add(u_t, x);
                }
            }
        }
    }

    /// `S_T4`: `(w_T, y)` for every neighbour `y` of `u_T` outside the tail.
    fn tail_exit(&mut self, tail: &Tail) {
        let w_t = tail.exit();
        for &y in self.g.neighbors(tail.attachment) {
            if !tail.contains(y) {
                self.add(w_t, y);
            }
        }
    }

    fn singleton(&mut self) {
        let v = self.region.vertices[0];
        if self.dec.classes.in_v(v) {
            for &u in self.profile.n2(v) {
                self.add(v, u);
            }
        }
    }

    fn plain(&mut self) {
        let table = &self.dec.classes;
        for &v in &self.region.vertices {
            if !table.in_v(v) {
                continue;
            }
            for &a in self.profile.n2(v) {
                self.add(v, a);
            }
            let boundary = self.profile.n2_prime(v);
            let chosen: &[Vertex] = match self.profile.deg2(v) {
                2 => boundary,
                3 => &boundary[..boundary.len().min(1)],
                _ => &[],
            };
            for &a in chosen {
                self.add(a, v);
            }
        }
    }

    fn a_region(&mut self) -> Result<(), PairError> {
        let region = &self.dec.regions[self.region.regions[0]];
        let (u, vs, xs) = a_region_parts(self.profile, region).ok_or_else(|| self.malformed("A region"))?;
        let ws = self.dec.classes.designations[self.region.id].w.clone();
        let d = self.dec.d;
        let free: Vec<Vertex> = xs.iter().copied().filter(|x| !ws.contains(x)).collect();
        let reverse = 4usize.saturating_sub(vs.len());
        for &x in &free {
            if vs.len() + 2 < d {
                for &y in self.profile.n2(x) {
                    self.add(x, y);
                }
            }
            let outside: Vec<Vertex> = self
                .profile
                .n2(x)
                .iter()
                .copied()
                .filter(|&y| !self.inside(y))
                .collect();
            for &y in outside.iter().take(reverse) {
                if self.profile.n2_prime(x).binary_search(&y).is_err() {
                    return Err(PairError::InvalidPair {
                        owner: self.region.id,
                        x: y,
                        y: x,
                        reason: "reverse pair source is not a boundary vertex".into(),
                    });
                }
                self.add(y, x);
            }
        }
        for &v in &vs {
            self.add(v, u);
            self.add(u, v);
        }
        for &w in &ws {
            for &y in self.profile.n2(w) {
                self.add(w, y);
            }
        }
        Ok(())
    }

    fn c_region(&mut self) -> Result<(), PairError> {
        let region = &self.dec.regions[self.region.regions[0]];
        let RegionWitness::Hub {
            u,
            w,
            ref component,
            ref inner,
            ref spokes,
            ..
        } = region.witness
        else {
            return Err(self.malformed("C region"));
        };
        for &x in inner.iter().chain(spokes) {
            for &y in component {
                if y != x && !self.g.has_edge(x, y) {
                    self.add(x, y);
                }
            }
        }
        for &v in inner {
            self.add(v, u);
            self.add(u, v);
        }
        for &y in self.profile.n2(w) {
            self.add(w, y);
        }
        if inner.len() + 2 < self.dec.d {
            let ys: Vec<Vertex> = self
                .g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&y| !self.inside(y))
                .take(2)
                .collect();
            for &x in spokes {
                for &y in &ys {
                    self.add(x, y);
                }
            }
        }
        Ok(())
    }

    fn head_tail(&mut self) -> Result<(), PairError> {
        let tail = &self.region.tails[0];
        let head = self.region.head.as_ref().ok_or_else(|| self.malformed("head"))?;
        let table = &self.dec.classes;
        let (u_t, w_t, z) = (tail.attachment, tail.exit(), head.z);
        self.tail_core(tail);
        let plain: Vec<Vertex> = head.x.iter().copied().filter(|x| !head.x_prime.contains(x)).collect();
        let matched_v: Vec<Vertex> = head.x_prime.iter().copied().filter(|&x| table.in_v(x)).collect();
        let z_out: Vec<Vertex> = self
            .g
            .neighbors(z)
            .iter()
            .copied()
            .filter(|&s| !self.inside(s))
            .collect();
        let b: Vec<Vertex> = z_out.iter().copied().take(2).collect();
        for &x in &head.x_prime {
            for &x2 in &head.x_prime {
                if x != x2 && !self.g.has_edge(x, x2) {
                    self.add(x, x2);
                }
            }
        }
        for &x in &plain {
            self.add(x, z);
            self.add(z, x);
        }
        for &x in &matched_v {
            for &bi in &b {
                self.add(x, bi);
            }
        }
        match head.shape {
            HeadShape::A { y1, y2 } => {
                self.add(u_t, y1);
                self.add(u_t, y2);
                for &s in &z_out {
                    self.add(u_t, s);
                }
                for &x in plain.iter().chain(&matched_v) {
                    self.add(x, w_t);
                    self.add(w_t, x);
                }
            }
            HeadShape::B { w } => {
                for &s in &z_out {
                    self.add(w, s);
                }
                for &x in &head.x {
                    self.add(x, w_t);
                    self.add(w_t, x);
                }
            }
        }
        Ok(())
    }

    fn malformed(&self, what: &str) -> PairError {
        PairError::Malformed {
            owner: self.region.id,
            what: what.into(),
        }
    }
}

/// The ordered pairs `S_R` charged to one superregion, each tagged.
pub fn build_pairs(
    g: &Graph,
    profile: &Dist2Profile,
    dec: &Decomposition,
    region: &Superregion,
) -> Result<Vec<OrderedPair>, PairError> {
    let mut c = Collector {
        g,
        profile,
        dec,
        region,
        raw: BTreeSet::new(),
    };
    match region.kind {
        SuperregionKind::Singleton => c.singleton(),
        SuperregionKind::PlainRegion(RegionClass::A) => c.a_region()?,
        SuperregionKind::PlainRegion(RegionClass::C) => c.c_region()?,
        SuperregionKind::PlainRegion(RegionClass::B) => return Err(c.malformed("B region outside a tail")),
        SuperregionKind::PlainRegion(_) => c.plain(),
        SuperregionKind::Tail | SuperregionKind::Multitail => {
            for tail in &region.tails {
                c.tail_core(tail);
                c.tail_exit(tail);
            }
        }
        SuperregionKind::ATail | SuperregionKind::BTail => c.head_tail()?,
    }
    c.finish()
}
