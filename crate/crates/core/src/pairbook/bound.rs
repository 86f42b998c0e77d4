use num_rational::Ratio;
use num_traits::One;
use serde::Serialize;

use super::PairBook;
use crate::decomposition::{ClassTable, ClassTag};
use crate::graph::{Dist2Profile, Graph};

/// `2n(1 - 2/(d+1) - 3/(d-3))`, exactly. Defined for `d > 6` only.
pub fn theorem_rhs(n: usize, d: usize) -> Option<Ratio<i64>> {
    if d <= 6 {
        return None;
    }
    let (n, d) = (n as i64, d as i64);
    let factor = Ratio::one() - Ratio::new(2, d + 1) - Ratio::new(3, d - 3);
    Some(Ratio::from_integer(2 * n) * factor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVerdict {
    Pass,
    Fail,
    OutOfScope,
}

/// The dense-`𝒰` shortcut: once `|𝒰| >= 3n/(d-3)` the degree count alone
/// must give `Σ deg_2 >= 4n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Shortcut {
    pub u_count: usize,
    pub applies: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub e_g: usize,
    pub e_g2: usize,
    pub sum_deg2: usize,
    pub sum_pairs: usize,
    pub four_v: usize,
    #[serde(skip)]
    pub rhs: Option<Ratio<i64>>,
    pub shortcut: Option<Shortcut>,
    pub verdict: BoundVerdict,
}

impl BoundReport {
    /// `e(G^2) - e(G)`.
    pub fn gain(&self) -> usize {
        self.e_g2 - self.e_g
    }
}

/// Compares `e(G^2) - e(G)` against the theorem bound and records the
/// certificate totals `Σ|S_R|` and `4|𝒱|` alongside.
pub fn aggregate_bound(g: &Graph, profile: &Dist2Profile, book: &PairBook, table: &ClassTable) -> BoundReport {
    let n = g.n();
    let d = table.d;
    let sum_deg2 = profile.sum_deg2();
    let e_g = g.edge_count();
    let rhs = theorem_rhs(n, d).filter(|_| g.regular_degree() == Some(d));
    let u_count = table.count(ClassTag::U);
    let shortcut = rhs.map(|_| Shortcut {
        u_count,
        applies: u_count * (d - 3) >= 3 * n,
        holds: sum_deg2 >= 4 * n,
    });
    let verdict = match rhs {
        None => BoundVerdict::OutOfScope,
        Some(r) if Ratio::from_integer((sum_deg2 / 2) as i64) > r => BoundVerdict::Pass,
        Some(_) => BoundVerdict::Fail,
    };
    BoundReport {
        n,
        d,
        e_g,
        e_g2: e_g + sum_deg2 / 2,
        sum_deg2,
        sum_pairs: book.total(),
        four_v: 4 * table.count(ClassTag::V),
        rhs,
        shortcut,
        verdict,
    }
}
