use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::FamilyError;
use crate::graph::{Graph, Vertex};

/// Restart budget for [`random_regular`].
pub const RANDOM_REGULAR_ATTEMPTS: usize = 10_000;

const ROUNDS_PER_ATTEMPT: usize = 256;

/// Seeded random simple `d`-regular graph on `n` vertices.
///
/// Half-edges are paired in shuffled rounds; pairs that would form a loop or
/// a repeated edge go back into the pool for the next round, and an attempt
/// restarts from scratch once the pool can no longer be completed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, FamilyError> {
    if (n * d) % 2 == 1 {
        return Err(FamilyError::InvalidParameters(format!("n*d = {} is odd", n * d)));
    }
    if d >= n {
        return Err(FamilyError::InvalidParameters(format!(
            "degree {d} must be below n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_REGULAR_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::from_edges(n, edges).map_err(|e| FamilyError::Construction(e.to_string()));
        }
    }
    Err(FamilyError::RetriesExhausted {
        attempts: RANDOM_REGULAR_ATTEMPTS,
    })
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(n * d / 2);
    let mut present: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(n * d / 2);
    for _ in 0..ROUNDS_PER_ATTEMPT {
        if stubs.is_empty() {
            return Some(edges);
        }
        stubs.shuffle(rng);
        let mut leftover = Vec::new();
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && present.insert((a, b)) {
                edges.push((a, b));
            } else {
                leftover.extend([a, b]);
            }
        }
        if leftover.len() == stubs.len() && !completable(&leftover, &present) {
            return None;
        }
        stubs = leftover;
    }
    stubs.is_empty().then_some(edges)
}

/// Whether some pair of remaining stubs could still form a new edge.
fn completable(stubs: &[Vertex], present: &HashSet<(Vertex, Vertex)>) -> bool {
    let mut vs: Vec<Vertex> = stubs.to_vec();
    vs.sort_unstable();
    vs.dedup();
    vs.iter()
        .enumerate()
        .any(|(i, &a)| vs[i + 1..].iter().any(|&b| !present.contains(&(a, b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{basic_checks, graph_power, Dist2Profile};

    #[test]
    fn produces_simple_regular_graph() {
        let g = random_regular(20, 7, 1).unwrap();
        assert_eq!(g.n(), 20);
        assert_eq!(g.regular_degree(), Some(7));
    }

    #[test]
    fn odd_stub_count_fails_cleanly() {
        assert!(matches!(
            random_regular(9, 7, 3),
            Err(FamilyError::InvalidParameters(_))
        ));
        assert!(random_regular(5, 5, 3).is_err());
    }

    #[test]
    fn seed_is_reproducible() {
        assert_eq!(random_regular(60, 9, 42).unwrap(), random_regular(60, 9, 42).unwrap());
        assert_ne!(random_regular(60, 9, 42).unwrap(), random_regular(60, 9, 43).unwrap());
    }

    #[test]
    fn profile_matches_square_degrees() {
        let g = random_regular(100, 9, 42).unwrap();
        let g2 = graph_power(&g, 2).unwrap();
        let p = Dist2Profile::new(&g);
        let via_square: usize = (0..g.n()).map(|v| g2.degree(v) - g.degree(v)).sum();
        assert_eq!(p.sum_deg2(), via_square);
        assert!(basic_checks(&g).regular_degree == Some(9));
    }

    #[test]
    fn dense_degrees_still_generate() {
        for (n, d) in [(30, 12), (30, 7), (120, 12)] {
            assert_eq!(random_regular(n, d, 7).unwrap().regular_degree(), Some(d));
        }
    }
}
