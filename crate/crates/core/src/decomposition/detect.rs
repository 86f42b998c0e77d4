//! Exact recognizers for the two exceptional families.

use super::tail::{all_tails, b_region_at, grow_tail, snake_pair, Tail};
use crate::graph::{component_avoiding, Dist2Profile, Graph, Vertex};

/// `Some((d, k))` when `g` is a snake graph with `k` segments in total.
pub fn detect_snake(g: &Graph) -> Option<(usize, usize)> {
    let d = g.regular_degree()?;
    if d % 2 == 0 || g.n() == 0 {
        return None;
    }
    let profile = Dist2Profile::new(g);
    let mut seen = vec![false; g.n()];
    let mut grown: Vec<Tail> = Vec::new();
    for v in 0..g.n() {
        if seen[v] {
            continue;
        }
        if let Some((b, connector, ends)) = b_region_at(g, &profile, d, v) {
            for &x in &b {
                seen[x] = true;
            }
            grown.extend(grow_tail(g, d, b, connector, ends));
        }
    }
    let tails = all_tails(&grown);
    snake_pair(g.n(), &tails).map(|(a, b)| (d, a + b))
}

/// `Some(d)` when `g` is the peanut graph of even degree `d`.
pub fn detect_peanut(g: &Graph) -> Option<usize> {
    let d = g.regular_degree()?;
    if d % 2 == 1 || d < 2 || g.n() != 2 * d + 3 {
        return None;
    }
    (0..g.n()).any(|u| peanut_around(g, d, u)).then_some(d)
}

/// Whether `u` plays the role of the cut vertex between `R1 = K_{d+1} - w1w2`
/// and the rest of `R2`.
fn peanut_around(g: &Graph, d: usize, u: Vertex) -> bool {
    let nu = g.neighbors(u);
    let Some(&start) = nu.first() else {
        return false;
    };
    let first = component_avoiding(g, start, &[u]);
    let rest: Vec<Vertex> = (0..g.n())
        .filter(|&x| x != u && first.binary_search(&x).is_err())
        .collect();
    if first.len() != d + 1 || rest.len() != d + 1 {
        return false;
    }
    let second = rest;
    if component_avoiding(g, second[0], &[u]) != second {
        return false;
    }
    let in_part = |part: &[Vertex]| nu.iter().filter(|&&x| part.binary_search(&x).is_ok()).count();
    let (r1, mut r2) = match (in_part(&first), in_part(&second)) {
        (2, m) if m == d - 2 => (first, second),
        (m, 2) if m == d - 2 => (second, first),
        _ => return false,
    };
    r2.push(u);
    r2.sort_unstable();
    r1_pattern(g, &r1, u) && r2_pattern(g, d, &r2, u)
}

fn non_edges(g: &Graph, part: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for (i, &a) in part.iter().enumerate() {
        for &b in &part[i + 1..] {
            if !g.has_edge(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `K_{d+1}` minus exactly the edge between the two neighbours of `u`.
fn r1_pattern(g: &Graph, r1: &[Vertex], u: Vertex) -> bool {
    let ws: Vec<Vertex> = r1.iter().copied().filter(|&x| g.has_edge(u, x)).collect();
    non_edges(g, r1) == [(ws[0], ws[1])]
}

/// `K_{d+2}` minus three edges at `u` and a perfect matching on the other
/// `d - 2` vertices.
fn r2_pattern(g: &Graph, d: usize, r2: &[Vertex], u: Vertex) -> bool {
    let missing = non_edges(g, r2);
    let (at_u, others): (Vec<_>, Vec<_>) = missing.iter().partition(|&&(a, b)| a == u || b == u);
    if at_u.len() != 3 || others.len() * 2 != d - 2 {
        return false;
    }
    let mut touched: Vec<Vertex> = at_u.iter().map(|&(a, b)| if a == u { b } else { a }).collect();
    for (a, b) in others {
        touched.extend([a, b]);
    }
    touched.sort_unstable();
    let len = touched.len();
    touched.dedup();
    touched.len() == len && len == d + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_a_tail_graph, make_peanut, make_snake, make_tail_graph, random_regular};

    #[test]
    fn snakes_are_recognized() {
        assert_eq!(detect_snake(&make_snake(9, 2, 1).unwrap().0), Some((9, 3)));
        assert_eq!(detect_snake(&make_snake(7, 1, 1).unwrap().0), Some((7, 2)));
        assert_eq!(detect_snake(&make_snake(11, 2, 2).unwrap().0), Some((11, 4)));
    }

    #[test]
    fn tail_closures_are_not_snakes() {
        assert_eq!(detect_snake(&make_tail_graph(7, 2).unwrap().0), None);
        assert_eq!(detect_snake(&make_a_tail_graph(7, 1, 2).unwrap().0), None);
        assert_eq!(detect_snake(&random_regular(100, 9, 5).unwrap()), None);
    }

    #[test]
    fn peanuts_are_recognized() {
        for d in [8, 10, 12] {
            assert_eq!(detect_peanut(&make_peanut(d).unwrap().0), Some(d));
        }
        assert_eq!(detect_peanut(&random_regular(100, 9, 5).unwrap()), None);
        assert_eq!(detect_peanut(&make_snake(7, 1, 1).unwrap().0), None);
    }

    #[test]
    fn wrong_size_is_not_a_peanut() {
        let g = random_regular(19, 8, 1).unwrap();
        assert_eq!(detect_peanut(&g), None);
    }
}
