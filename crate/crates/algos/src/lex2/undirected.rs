use std::cmp::Reverse;
use std::collections::BinaryHeap;

use apsp_core::dist::Dist;
use apsp_core::engines::minplus;
use apsp_core::engines::ProductEngine;
use apsp_core::graph::Graph;
use apsp_core::lexdist::LexDist;
use apsp_core::matrix::Matrix;
use apsp_core::oracles::dijkstra_apsp;

use crate::error::{Error, Result};
use crate::fixpoint::is_lex_fixed_point;

/// Lexicographic two-weight APSP for undirected graphs with strictly
/// positive primary weights, ascending geometric primary-distance levels.
///
/// High-degree sources are grouped into clusters around a greedy dominating
/// set; within a cluster, all rows extend together through banded secondary
/// products around a thin middle shell (sources in one cluster are within
/// primary distance 2*c0 of each other, so their band memberships agree up
/// to that slack). Low-degree sources extend by lexicographic Dijkstra over
/// the subgraph of edges with a low-degree endpoint plus shortcut edges into
/// the finished high-degree rows. The procedure is deterministic.
pub fn lex2_undirected_positive(g: &Graph) -> Result<Matrix<LexDist>> {
    lex2_undirected_with_split(g, None)
}

/// Same solver with an explicit cluster-count parameter L (degree threshold
/// n / L); exactness does not depend on the choice.
pub fn lex2_undirected_with_split(g: &Graph, l_param: Option<usize>) -> Result<Matrix<LexDist>> {
    if g.is_directed() {
        return Err(Error::invalid(
            "lex2_undirected_positive needs an undirected graph",
        ));
    }
    if g.min_weight() < 1 && g.m() > 0 {
        return Err(Error::validation(
            "primary weights must be strictly positive",
        ));
    }
    for (id, e) in g.edges().iter().enumerate() {
        if e.w2.unwrap_or(1) < 0 {
            return Err(Error::validation(format!(
                "edge {id} has a negative secondary weight"
            )));
        }
    }
    let n = g.n();
    let c0 = g.max_weight().max(1) as u64;
    let d1 = dijkstra_apsp(g)?;
    let max_d1 = d1.max_finite().unwrap_or(0);

    // Base closure: pairs with small primary distance by capped lexicographic
    // squaring (a path of primary length b has at most b edges).
    let start_level = 4 * c0 + 8;
    let base_bound = start_level;
    let mut d = lex_adjacency(g)?;
    let mut doubled = 1u64;
    while doubled < base_bound {
        let squared = lex_square(&d);
        merge(&mut d, &squared);
        d = cap_primary(d, base_bound);
        doubled *= 2;
    }
    let mut done = base_bound.min(max_d1);

    if max_d1 > done {
        let l_param = l_param.unwrap_or_else(|| (n as f64).powf(0.42).ceil() as usize);
        let degree_threshold = n / l_param.max(1);
        let high: Vec<usize> = (0..n)
            .filter(|&v| g.neighbors(v).len() > degree_threshold)
            .collect();
        let low: Vec<usize> = (0..n)
            .filter(|&v| g.neighbors(v).len() <= degree_threshold)
            .collect();
        let clusters = build_clusters(g, &high, degree_threshold.max(1));
        let low_arcs = low_endpoint_arcs(g, degree_threshold);

        let mut level = start_level as f64;
        while done < max_d1 {
            level *= 1.5;
            let ell = (level.floor() as u64).min(max_d1);
            for (dominator, members) in &clusters {
                solve_cluster(g, &d1, &mut d, *dominator, members, c0, done, ell)?;
            }
            symmetrize(&mut d);
            for &u in &low {
                solve_low_source(g, &low_arcs, &high, &mut d, &d1, u, ell)?;
            }
            symmetrize(&mut d);
            done = ell;
        }
    }

    if !is_lex_fixed_point(g, &d) {
        return Err(Error::Internal(
            "undirected lexicographic solve missed a pair".into(),
        ));
    }
    Ok(d)
}

fn lex_adjacency(g: &Graph) -> Result<Matrix<LexDist>> {
    let n = g.n();
    let mut adj = Matrix::new(n, n, LexDist::INF)?;
    for i in 0..n {
        adj.set(i, i, LexDist::ZERO);
    }
    for e in g.edges() {
        let cand = LexDist::finite(e.w1 as u64, e.w2.unwrap_or(1) as u64);
        if cand < *adj.get(e.u, e.v) {
            adj.set(e.u, e.v, cand);
            adj.set(e.v, e.u, cand);
        }
    }
    Ok(adj)
}

fn lex_square(d: &Matrix<LexDist>) -> Matrix<LexDist> {
    let n = d.rows();
    Matrix::from_fn(n, n, |i, j| {
        let mut best = LexDist::INF;
        for k in 0..n {
            best = best.min(*d.get(i, k) + *d.get(k, j));
        }
        best
    })
}

fn cap_primary(d: Matrix<LexDist>, cap: u64) -> Matrix<LexDist> {
    d.map(|&x| match x.d1.value() {
        Some(v) if v <= cap => x,
        _ => LexDist::INF,
    })
}

fn merge(dst: &mut Matrix<LexDist>, src: &Matrix<LexDist>) {
    for i in 0..dst.rows() {
        for j in 0..dst.cols() {
            let cand = *src.get(i, j);
            if cand < *dst.get(i, j) {
                dst.set(i, j, cand);
            }
        }
    }
}

fn symmetrize(d: &mut Matrix<LexDist>) {
    for i in 0..d.rows() {
        for j in i + 1..d.cols() {
            let best = LexDist::min(*d.get(i, j), *d.get(j, i));
            d.set(i, j, best);
            d.set(j, i, best);
        }
    }
}

/// Greedy dominating set for the high-degree vertices, then a split of each
/// dominator's fresh neighborhood into clusters of about the degree
/// threshold. Ties break toward the lowest index.
pub(crate) fn build_clusters(g: &Graph, high: &[usize], chunk: usize) -> Vec<(usize, Vec<usize>)> {
    let n = g.n();
    let mut uncovered: Vec<bool> = vec![false; n];
    for &v in high {
        uncovered[v] = true;
    }
    let mut remaining = high.len();
    let mut clusters = Vec::new();
    while remaining > 0 {
        let mut best = usize::MAX;
        let mut best_gain = 0usize;
        for x in 0..n {
            let mut gain = usize::from(uncovered[x]);
            for &(y, _) in g.neighbors(x) {
                gain += usize::from(uncovered[y]);
            }
            if gain > best_gain {
                best_gain = gain;
                best = x;
            }
        }
        debug_assert_ne!(best, usize::MAX);
        let mut fresh = Vec::new();
        if uncovered[best] {
            fresh.push(best);
            uncovered[best] = false;
        }
        for &(y, _) in g.neighbors(best) {
            if uncovered[y] {
                fresh.push(y);
                uncovered[y] = false;
            }
        }
        fresh.sort_unstable();
        remaining -= fresh.len();
        for piece in fresh.chunks(chunk.max(1)) {
            clusters.push((best, piece.to_vec()));
        }
    }
    clusters
}

/// Extends all rows of one cluster from primary distance `done` to `ell`.
#[allow(clippy::too_many_arguments)]
fn solve_cluster(
    g: &Graph,
    d1: &Matrix<Dist>,
    d: &mut Matrix<LexDist>,
    dominator: usize,
    members: &[usize],
    c0: u64,
    done: u64,
    ell: u64,
) -> Result<()> {
    let n = g.n();
    let c = 2 * c0;
    // Band shell: choose m in the middle so that i - m + delta stays within
    // the finished range and the shell is thin.
    let lo = ((2 * ell).div_ceil(5)).max(ell.saturating_sub(done) + c0 + 1);
    let hi = (3 * ell / 5).min(done);
    if lo > hi {
        return Err(Error::Internal(format!(
            "no viable middle band for level {ell} with finished range {done}"
        )));
    }
    let band = |center: u64| -> Vec<usize> {
        (0..n)
            .filter(|&v| {
                d1.get(dominator, v)
                    .value()
                    .map(|x| x + c >= center && x <= center + c)
                    .unwrap_or(false)
            })
            .collect()
    };
    let m = (lo..=hi)
        .min_by_key(|&cand| {
            (cand.saturating_sub(c0)..=cand)
                .map(|center| band(center).len())
                .sum::<usize>()
        })
        .expect("nonempty range");

    // Columns: (target value i, vertex v) pairs restricted to the dominator's
    // bands, which contain every vertex at exact distance i from any member.
    let mut columns: Vec<(u64, usize)> = Vec::new();
    for i in m + 1..=ell {
        for v in band(i) {
            columns.push((i, v));
        }
    }
    if columns.is_empty() {
        return Ok(());
    }
    let engine = ProductEngine::blocked();
    let mut best: Matrix<LexDist> = Matrix::new(members.len(), columns.len(), LexDist::INF)?;
    for delta in 0..=c0 {
        let split = m - delta;
        let shell = band(split);
        if shell.is_empty() {
            continue;
        }
        // Left: secondary distances of member rows at exact primary split.
        let a = Matrix::from_fn(members.len(), shell.len(), |i, k| {
            let x = *d.get(members[i], shell[k]);
            if x.d1.value() == Some(split) {
                x.d2
            } else {
                Dist::INF
            }
        });
        // Right: secondary distances from the shell to each (i, v) column at
        // exact primary i - split.
        let b = Matrix::from_fn(shell.len(), columns.len(), |k, jc| {
            let (i, v) = columns[jc];
            let x = *d.get(shell[k], v);
            if x.d1.value() == Some(i - split) {
                x.d2
            } else {
                Dist::INF
            }
        });
        let (prod, _) = minplus(&a, &b, &engine)?;
        for (row, _) in members.iter().enumerate() {
            for jc in 0..columns.len() {
                let (i, _) = columns[jc];
                if let Some(d2) = prod.get(row, jc).value() {
                    let cand = LexDist::finite(i, d2);
                    if cand < *best.get(row, jc) {
                        best.set(row, jc, cand);
                    }
                }
            }
        }
    }
    for (row, &u) in members.iter().enumerate() {
        for (jc, &(i, v)) in columns.iter().enumerate() {
            if d1.get(u, v).value() == Some(i) {
                let cand = *best.get(row, jc);
                debug_assert!(
                    cand.is_finite() || d.get(u, v).is_finite(),
                    "band containment violated for ({u},{v}) at {i}"
                );
                if cand < *d.get(u, v) {
                    d.set(u, v, cand);
                }
            }
        }
    }
    Ok(())
}

fn low_endpoint_arcs(g: &Graph, threshold: usize) -> Vec<(usize, usize, u64, u64)> {
    let mut arcs = Vec::new();
    for e in g.edges() {
        if g.neighbors(e.u).len() <= threshold || g.neighbors(e.v).len() <= threshold {
            let w = (e.w1 as u64, e.w2.unwrap_or(1) as u64);
            arcs.push((e.u, e.v, w.0, w.1));
            arcs.push((e.v, e.u, w.0, w.1));
        }
    }
    arcs
}

/// Lexicographic Dijkstra from a low-degree source over the low-endpoint
/// subgraph, with one shortcut edge per finished high-degree row.
fn solve_low_source(
    g: &Graph,
    low_arcs: &[(usize, usize, u64, u64)],
    high: &[usize],
    d: &mut Matrix<LexDist>,
    d1: &Matrix<Dist>,
    u: usize,
    ell: u64,
) -> Result<()> {
    let n = g.n();
    let mut adj: Vec<Vec<(usize, u64, u64)>> = vec![Vec::new(); n];
    for &(a, b, w1, w2) in low_arcs {
        adj[a].push((b, w1, w2));
    }
    for &z in high {
        if let (Some(p), Some(s)) = (d.get(u, z).d1.value(), d.get(u, z).d2.value()) {
            adj[u].push((z, p, s));
        }
    }
    let mut dist = vec![LexDist::INF; n];
    dist[u] = LexDist::ZERO;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0u64, u)));
    while let Some(Reverse((p, s, x))) = heap.pop() {
        if LexDist::finite(p, s) > dist[x] {
            continue;
        }
        for &(y, w1, w2) in &adj[x] {
            let cand = dist[x] + LexDist::finite(w1, w2);
            if cand < dist[y] {
                dist[y] = cand;
                heap.push(Reverse((cand.d1.raw(), cand.d2.raw(), y)));
            }
        }
    }
    for v in 0..n {
        if let Some(true) = d1.get(u, v).value().map(|x| x <= ell) {
            if dist[v] < *d.get(u, v) {
                d.set(u, v, dist[v]);
            }
        }
    }
    Ok(())
}
