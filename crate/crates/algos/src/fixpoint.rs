//! Relaxation fixed-point checks. A matrix of path-achievable upper bounds
//! that has a zero diagonal and cannot be improved by relaxing any single
//! edge equals the true distance matrix, so the randomized staged solvers
//! certify their output in O(nm) and resample on the rare miss.

use apsp_core::dist::SignedDist;
use apsp_core::graph::Graph;
use apsp_core::lexdist::LexDist;
use apsp_core::matrix::Matrix;
use apsp_core::Dist;

fn arcs(g: &Graph) -> impl Iterator<Item = (usize, usize, i64, i64)> + '_ {
    g.edges().iter().flat_map(move |e| {
        let fwd = (e.u, e.v, e.w1, e.w2.unwrap_or(1));
        if g.is_directed() {
            vec![fwd]
        } else {
            vec![fwd, (e.v, e.u, e.w1, e.w2.unwrap_or(1))]
        }
    })
}

pub fn is_apsp_fixed_point(g: &Graph, d: &Matrix<Dist>) -> bool {
    let n = g.n();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    for s in 0..n {
        if *d.get(s, s) != Dist::ZERO {
            return false;
        }
    }
    for (u, v, w, _) in arcs(g) {
        debug_assert!(w >= 0);
        let w = Dist::finite(w.max(0) as u64);
        for s in 0..n {
            if *d.get(s, u) + w < *d.get(s, v) {
                return false;
            }
        }
    }
    true
}

pub fn is_signed_apsp_fixed_point(g: &Graph, d: &Matrix<SignedDist>) -> bool {
    let n = g.n();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    for s in 0..n {
        if *d.get(s, s) != SignedDist::ZERO {
            return false;
        }
    }
    for (u, v, w, _) in arcs(g) {
        let w = SignedDist::finite(w);
        for s in 0..n {
            if *d.get(s, u) + w < *d.get(s, v) {
                return false;
            }
        }
    }
    true
}

/// Full exactness certificate for strictly positive weights: the diagonal is
/// zero, no edge relaxation improves any entry (so every entry is at most the
/// true distance), and every finite off-diagonal entry is supported by an
/// incoming edge (so, by induction over increasing values, no entry can fall
/// below the true distance).
pub fn is_exact_apsp(g: &Graph, d: &Matrix<Dist>) -> bool {
    if g.min_weight() <= 0 && g.m() > 0 {
        return false;
    }
    if !is_apsp_fixed_point(g, d) {
        return false;
    }
    let n = g.n();
    let mut supported = vec![false; n * n];
    for (u, v, w, _) in arcs(g) {
        let w = Dist::finite(w as u64);
        for s in 0..n {
            if *d.get(s, u) + w == *d.get(s, v) {
                supported[s * n + v] = true;
            }
        }
    }
    for s in 0..n {
        for v in 0..n {
            if s != v && d.get(s, v).is_finite() && !supported[s * n + v] {
                return false;
            }
        }
    }
    true
}

pub fn is_lex_fixed_point(g: &Graph, d: &Matrix<LexDist>) -> bool {
    let n = g.n();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    for s in 0..n {
        if *d.get(s, s) != LexDist::ZERO {
            return false;
        }
    }
    for (u, v, w1, w2) in arcs(g) {
        if w1 < 0 || w2 < 0 {
            return false;
        }
        let step = LexDist::finite(w1 as u64, w2 as u64);
        for s in 0..n {
            if *d.get(s, u) + step < *d.get(s, v) {
                return false;
            }
        }
    }
    true
}
