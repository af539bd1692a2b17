//! Reference classification lists used as fixtures by `classify`.

use drspolar::clifford::{CliffordClass, Multiplicity};
use drspolar::polarity::Verdict;

fn verdict(polar: bool) -> Verdict {
    if polar {
        Verdict::Polar
    } else {
        Verdict::NonPolar
    }
}

fn octonionic_small(cls: CliffordClass) -> bool {
    matches!(cls.multiplicity, Multiplicity::Pair(1, 0) | Multiplicity::Pair(0, 1) | Multiplicity::Pair(2, 0) | Multiplicity::Pair(0, 2))
}

/// Expected verdict for `A(N)_0` acting on `v`.
///
/// Polar: `N(0,k)`, `N(1,k)`, `N(2,k)`, `N(3,k+,k-)`, `N(4,1)`, `N(5,1)`,
/// `N(6,1)`, `N(7,1,0)`, `N(7,0,1)`, `N(7,2,0)`, `N(7,0,2)`, `N(8,1)`, and
/// the trivial action when `v = 0`. Everything else is non-polar.
pub fn representation(cls: CliffordClass) -> Verdict {
    if cls.v_dim() == 0 {
        return Verdict::Polar;
    }
    verdict(match (cls.m, cls.multiplicity) {
        (0..=3, _) => true,
        (4 | 5 | 6 | 8, Multiplicity::Single(k)) => k == 1,
        (7, _) => octonionic_small(cls),
        _ => false,
    })
}

/// Expected verdict for `A(N)_0 x L(Z)` acting on `S`.
///
/// Polar: `S(k,0)`, `S(0,k)`, `S(1,k)`, `S(2,k)`, `S(3,k+,k-)`, `S(5,1)`,
/// `S(6,1)`, `S(7,1,0)`, `S(7,0,1)`, `S(7,2,0)`, `S(7,0,2)`.
pub fn pasl(cls: CliffordClass) -> Verdict {
    if cls.v_dim() == 0 {
        return Verdict::Polar;
    }
    verdict(match (cls.m, cls.multiplicity) {
        (0..=3, _) => true,
        (5 | 6, Multiplicity::Single(k)) => k == 1,
        (7, _) => octonionic_small(cls),
        _ => false,
    })
}
