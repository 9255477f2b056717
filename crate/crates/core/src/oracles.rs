//! Baseline solvers used as oracles by the staged algorithms' test suites
//! and as desk-scale subroutines: per-source BFS, Dijkstra, Bellman-Ford,
//! Johnson reweighting, Floyd-Warshall, lexicographic Dijkstra, big-integer
//! path counting, budgeted search over colored graphs, exact-rational
//! betweenness accumulation, and longest paths in DAGs.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::dist::{Dist, SignedDist};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lexdist::LexDist;
use crate::matrix::Matrix;

/// Hop distances from one source, ignoring weights.
pub fn bfs_dist(g: &Graph, s: usize) -> Vec<Dist> {
    let mut dist = vec![Dist::INF; g.n()];
    let mut queue = VecDeque::new();
    dist[s] = Dist::ZERO;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &(v, _) in g.neighbors(u) {
            if dist[v].is_inf() {
                dist[v] = du + Dist::finite(1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Hop distance matrix; rows are computed per source in parallel.
pub fn bfs_apsp(g: &Graph) -> Matrix<Dist> {
    let rows: Vec<Vec<Dist>> = (0..g.n()).into_par_iter().map(|s| bfs_dist(g, s)).collect();
    Matrix::from_rows(rows).expect("graph has at least one vertex")
}

/// Dijkstra from `s`; weights must be non-negative. `reverse` follows edges
/// backwards.
pub fn dijkstra_dist(g: &Graph, s: usize, reverse: bool) -> Vec<Dist> {
    dijkstra_with_weights(g, s, reverse, |e| g.edge(e).w1 as u64)
}

fn dijkstra_with_weights(
    g: &Graph,
    s: usize,
    reverse: bool,
    weight: impl Fn(usize) -> u64,
) -> Vec<Dist> {
    let mut dist = vec![Dist::INF; g.n()];
    let mut heap = BinaryHeap::new();
    dist[s] = Dist::ZERO;
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if Dist::finite(d) > dist[u] {
            continue;
        }
        let neigh = if reverse {
            g.in_neighbors(u)
        } else {
            g.neighbors(u)
        };
        for &(v, e) in neigh {
            let cand = Dist::finite(d + weight(e));
            if cand < dist[v] {
                dist[v] = cand;
                heap.push(Reverse((cand.raw(), v)));
            }
        }
    }
    dist
}

pub fn dijkstra_apsp(g: &Graph) -> Result<Matrix<Dist>> {
    if g.min_weight() < 0 {
        return Err(Error::invalid("dijkstra oracle needs non-negative weights"));
    }
    let rows: Vec<Vec<Dist>> = (0..g.n())
        .into_par_iter()
        .map(|s| dijkstra_dist(g, s, false))
        .collect();
    Ok(Matrix::from_rows(rows).expect("nonempty"))
}

/// Bellman-Ford potentials from a virtual source connected to every vertex
/// with weight 0; a negative cycle is returned as an error naming its
/// vertices.
pub fn johnson_potentials(g: &Graph) -> Result<Vec<i64>> {
    let n = g.n();
    let mut h = vec![0i64; n];
    let mut pred = vec![usize::MAX; n];
    let arcs = directed_arcs(g);
    for round in 0..n {
        let mut changed = false;
        for &(u, v, w) in &arcs {
            if h[u] + w < h[v] {
                h[v] = h[u] + w;
                pred[v] = u;
                changed = true;
            }
        }
        if !changed {
            return Ok(h);
        }
        if round == n - 1 {
            // A vertex still relaxing after n rounds lies on or behind a
            // negative cycle; walk predecessors to extract it.
            for &(u, v, w) in &arcs {
                if h[u] + w < h[v] {
                    return Err(Error::NegativeCycle(extract_cycle(&pred, u)));
                }
            }
        }
    }
    Ok(h)
}

fn directed_arcs(g: &Graph) -> Vec<(usize, usize, i64)> {
    let mut arcs = Vec::with_capacity(if g.is_directed() { g.m() } else { 2 * g.m() });
    for e in g.edges() {
        arcs.push((e.u, e.v, e.w1));
        if !g.is_directed() {
            arcs.push((e.v, e.u, e.w1));
        }
    }
    arcs
}

fn extract_cycle(pred: &[usize], start: usize) -> Vec<usize> {
    let n = pred.len();
    let mut x = start;
    for _ in 0..n {
        x = pred[x];
    }
    let mut cycle = vec![x];
    let mut y = pred[x];
    while y != x {
        cycle.push(y);
        y = pred[y];
    }
    cycle.reverse();
    cycle
}

/// Lifts a non-negative distance matrix into the signed representation.
pub fn signed_matrix(m: &Matrix<Dist>) -> Matrix<SignedDist> {
    m.map(|&d| SignedDist::from_dist(d))
}

/// Single-source Bellman-Ford distances, usable with negative weights.
pub fn bellman_ford_dist(g: &Graph, s: usize) -> Result<Vec<SignedDist>> {
    let n = g.n();
    let arcs = directed_arcs(g);
    let inf = i64::MAX / 4;
    let mut d = vec![inf; n];
    d[s] = 0;
    for round in 0..n {
        let mut changed = false;
        for &(u, v, w) in &arcs {
            if d[u] < inf && d[u] + w < d[v] {
                d[v] = d[u] + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == n - 1 {
            return Err(Error::NegativeCycle(vec![s]));
        }
    }
    Ok(d.into_iter()
        .map(|x| {
            if x >= inf {
                SignedDist::INF
            } else {
                SignedDist::finite(x)
            }
        })
        .collect())
}

pub fn bellman_ford_apsp(g: &Graph) -> Result<Matrix<SignedDist>> {
    let rows: Result<Vec<Vec<SignedDist>>> = (0..g.n())
        .into_par_iter()
        .map(|s| bellman_ford_dist(g, s))
        .collect();
    Ok(Matrix::from_rows(rows?).expect("nonempty"))
}

/// Johnson reweighting plus per-source Dijkstra; handles negative weights
/// without negative cycles.
pub fn johnson_apsp(g: &Graph) -> Result<Matrix<SignedDist>> {
    let h = johnson_potentials(g)?;
    let rows: Vec<Vec<SignedDist>> = (0..g.n())
        .into_par_iter()
        .map(|s| {
            let dist = dijkstra_with_weights(g, s, false, |e| {
                let rec = g.edge(e);
                // Reweighted arcs are non-negative; undirected graphs cannot
                // carry negative edges without a negative cycle, so u->v
                // orientation is enough for the directed case and symmetric
                // potentials cover the rest.
                (rec.w1 + h[rec.u] - h[rec.v]).max(0) as u64
            });
            dist.iter()
                .enumerate()
                .map(|(v, d)| match d.value() {
                    Some(x) => SignedDist::finite(x as i64 - h[s] + h[v]),
                    None => SignedDist::INF,
                })
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows).expect("nonempty"))
}

/// Floyd-Warshall with negative-cycle detection through the diagonal.
pub fn floyd_warshall(g: &Graph) -> Result<Matrix<SignedDist>> {
    let n = g.n();
    let inf = i64::MAX / 4;
    let mut d = vec![inf; n * n];
    let mut next = vec![usize::MAX; n * n];
    for i in 0..n {
        d[i * n + i] = 0;
    }
    for &(u, v, w) in &directed_arcs(g) {
        if w < d[u * n + v] {
            d[u * n + v] = w;
            next[u * n + v] = v;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik >= inf {
                continue;
            }
            for j in 0..n {
                let dkj = d[k * n + j];
                if dkj >= inf {
                    continue;
                }
                let cand = dik + dkj;
                if cand < d[i * n + j] {
                    d[i * n + j] = cand;
                    next[i * n + j] = next[i * n + k];
                }
            }
        }
    }
    for i in 0..n {
        if d[i * n + i] < 0 {
            let mut cycle = vec![i];
            let mut x = next[i * n + i];
            while x != i && x != usize::MAX && cycle.len() <= n {
                cycle.push(x);
                x = next[x * n + i];
            }
            return Err(Error::NegativeCycle(cycle));
        }
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        let v = d[i * n + j];
        if v >= inf {
            SignedDist::INF
        } else {
            SignedDist::finite(v)
        }
    }))
}

/// Exact distance matrix by the cheapest applicable baseline: BFS when
/// unweighted, Dijkstra when non-negative, Johnson reweighting otherwise.
pub fn oracle_apsp(g: &Graph) -> Result<Matrix<SignedDist>> {
    if g.is_unweighted() {
        Ok(signed_matrix(&bfs_apsp(g)))
    } else if g.min_weight() >= 0 {
        Ok(signed_matrix(&dijkstra_apsp(g)?))
    } else {
        johnson_apsp(g)
    }
}

/// Exact shortest-path counts in an unweighted graph: per-source BFS
/// layering with a big-integer DP over the shortest-path DAG.
pub fn oracle_count(g: &Graph) -> Result<(Matrix<Dist>, Matrix<BigUint>)> {
    if !g.is_unweighted() {
        return Err(Error::invalid("counting oracle needs an unweighted graph"));
    }
    let n = g.n();
    let rows: Vec<(Vec<Dist>, Vec<BigUint>)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![Dist::INF; n];
            let mut count = vec![BigUint::ZERO; n];
            let mut queue = VecDeque::new();
            dist[s] = Dist::ZERO;
            count[s] = BigUint::one();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = dist[u];
                for &(v, _) in g.neighbors(u) {
                    if dist[v].is_inf() {
                        dist[v] = du + Dist::finite(1);
                        queue.push_back(v);
                    }
                    if dist[v] == du + Dist::finite(1) {
                        let cu = count[u].clone();
                        count[v] += cu;
                    }
                }
            }
            (dist, count)
        })
        .collect();
    let dist = Matrix::from_rows(rows.iter().map(|(d, _)| d.clone()).collect()).expect("nonempty");
    let count = Matrix::from_rows(rows.into_iter().map(|(_, c)| c).collect()).expect("nonempty");
    Ok((dist, count))
}

/// Lexicographic (primary, secondary) Dijkstra from one source. Both weight
/// components must be non-negative.
pub fn lex_dijkstra(g: &Graph, s: usize) -> Result<Vec<LexDist>> {
    let n = g.n();
    for (id, e) in g.edges().iter().enumerate() {
        if e.w1 < 0 || e.w2.unwrap_or(1) < 0 {
            return Err(Error::validation(format!(
                "edge {id} has a negative weight component"
            )));
        }
    }
    let mut dist = vec![LexDist::INF; n];
    let mut heap: BinaryHeap<Reverse<(u64, u64, usize)>> = BinaryHeap::new();
    dist[s] = LexDist::ZERO;
    heap.push(Reverse((0, 0, s)));
    while let Some(Reverse((d1, d2, u))) = heap.pop() {
        if LexDist::finite(d1, d2) > dist[u] {
            continue;
        }
        for &(v, e) in g.neighbors(u) {
            let rec = g.edge(e);
            let step = LexDist::finite(rec.w1 as u64, rec.w2.unwrap_or(1) as u64);
            let cand = dist[u] + step;
            if cand < dist[v] {
                dist[v] = cand;
                heap.push(Reverse((cand.d1.raw(), cand.d2.raw(), v)));
            }
        }
    }
    Ok(dist)
}

pub fn lex_dijkstra_apsp(g: &Graph) -> Result<Matrix<LexDist>> {
    let rows: Result<Vec<Vec<LexDist>>> = (0..g.n())
        .into_par_iter()
        .map(|s| lex_dijkstra(g, s))
        .collect();
    Ok(Matrix::from_rows(rows?).expect("nonempty"))
}

/// Shortest distances among paths using at most `budget` red edges, by
/// Dijkstra over (vertex, reds-used) states.
pub fn budgeted_apsp(g: &Graph, budget: usize) -> Result<Matrix<Dist>> {
    if !g.all_colored() {
        return Err(Error::validation("every edge needs a color"));
    }
    if g.min_weight() < 0 {
        return Err(Error::invalid("budgeted oracle needs non-negative weights"));
    }
    let n = g.n();
    let layers = budget + 1;
    let rows: Vec<Vec<Dist>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![Dist::INF; n * layers];
            let mut heap = BinaryHeap::new();
            dist[s * layers] = Dist::ZERO;
            heap.push(Reverse((0u64, s, 0usize)));
            while let Some(Reverse((d, u, r))) = heap.pop() {
                if Dist::finite(d) > dist[u * layers + r] {
                    continue;
                }
                for &(v, e) in g.neighbors(u) {
                    let rec = g.edge(e);
                    let nr = r + usize::from(rec.color == Some(crate::graph::Color::Red));
                    if nr >= layers {
                        continue;
                    }
                    let cand = Dist::finite(d + rec.w1 as u64);
                    if cand < dist[v * layers + nr] {
                        dist[v * layers + nr] = cand;
                        heap.push(Reverse((cand.raw(), v, nr)));
                    }
                }
            }
            (0..n)
                .map(|v| (0..layers).fold(Dist::INF, |acc, r| acc.min(dist[v * layers + r])))
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows).expect("nonempty"))
}

/// Exact-rational betweenness of every vertex by per-source shortest-path
/// DAG accumulation (ordered-pair convention).
pub fn brandes_bc_rational(g: &Graph) -> Result<Vec<BigRational>> {
    if !g.is_unweighted() {
        return Err(Error::invalid(
            "betweenness oracle needs an unweighted graph",
        ));
    }
    let n = g.n();
    let per_source: Vec<Vec<BigRational>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            let mut sigma = vec![BigUint::ZERO; n];
            let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut order = Vec::with_capacity(n);
            let mut queue = VecDeque::new();
            dist[s] = 0;
            sigma[s] = BigUint::one();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &(v, _) in g.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                    if dist[v] == dist[u] + 1 {
                        let su = sigma[u].clone();
                        sigma[v] += su;
                        preds[v].push(u);
                    }
                }
            }
            let mut delta = vec![BigRational::zero(); n];
            for &w in order.iter().rev() {
                let share = (BigRational::one() + delta[w].clone())
                    / BigRational::from_integer(sigma[w].clone().into());
                for &u in &preds[w] {
                    let add = share.clone() * BigRational::from_integer(sigma[u].clone().into());
                    delta[u] += add;
                }
            }
            delta[s] = BigRational::zero();
            delta
        })
        .collect();
    let mut bc = vec![BigRational::zero(); n];
    for row in per_source {
        for (v, d) in row.into_iter().enumerate() {
            bc[v] += d;
        }
    }
    Ok(bc)
}

/// Topological order, or `None` when the graph has a directed cycle.
pub fn topo_order(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_directed() {
        return None;
    }
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for e in g.edges() {
        indeg[e.v] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &(v, _) in g.neighbors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Sentinel for "no path" in longest-path matrices.
pub const NO_PATH: i64 = i64::MIN / 2;

/// All-pairs longest path weights in a DAG by a per-source DP over a
/// topological order.
pub fn dag_longest_paths(g: &Graph) -> Result<Matrix<i64>> {
    let order = topo_order(g).ok_or_else(|| Error::invalid("input is not a DAG"))?;
    let n = g.n();
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut best = vec![NO_PATH; n];
            best[s] = 0;
            for &u in &order {
                if best[u] == NO_PATH {
                    continue;
                }
                for &(v, e) in g.neighbors(u) {
                    let cand = best[u] + g.edge(e).w1;
                    if cand > best[v] {
                        best[v] = cand;
                    }
                }
            }
            best
        })
        .collect();
    Ok(Matrix::from_rows(rows).expect("nonempty"))
}

/// Vertex-weighted APSP: the cost of a path is the sum of the weights of all
/// its vertices, endpoints included. Vertex weights must be non-negative.
pub fn vertex_weighted_apsp(g: &Graph) -> Result<Matrix<Dist>> {
    let vw = g
        .vertex_weights()
        .ok_or_else(|| Error::validation("graph carries no vertex weights"))?;
    if vw.iter().any(|&w| w < 0) {
        return Err(Error::invalid("vertex weights must be non-negative"));
    }
    let n = g.n();
    let rows: Vec<Vec<Dist>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![Dist::INF; n];
            let mut heap = BinaryHeap::new();
            dist[s] = Dist::finite(vw[s] as u64);
            heap.push(Reverse((vw[s] as u64, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if Dist::finite(d) > dist[u] {
                    continue;
                }
                for &(v, _) in g.neighbors(u) {
                    let cand = Dist::finite(d + vw[v] as u64);
                    if cand < dist[v] {
                        dist[v] = cand;
                        heap.push(Reverse((cand.raw(), v)));
                    }
                }
            }
            dist
        })
        .collect();
    Ok(Matrix::from_rows(rows).expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_graph(
        rng: &mut StdRng,
        n: usize,
        directed: bool,
        m: usize,
        wlo: i64,
        whi: i64,
    ) -> Graph {
        let mut g = Graph::new(n, directed);
        let mut added = 0;
        while added < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                g.add_edge(u, v, rng.random_range(wlo..=whi)).unwrap();
                added += 1;
            }
        }
        g
    }

    #[test]
    fn path_graph_distances() {
        let g = Graph::parse_text("graph directed 3 2\n0 1 1\n1 2 1\n").unwrap();
        let d = oracle_apsp(&g).unwrap();
        assert_eq!(*d.get(0, 2), SignedDist::finite(2));
        assert!(d.get(2, 0).is_inf());
    }

    #[test]
    fn four_cycle_symmetry() {
        let g = Graph::parse_text("graph undirected 4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n").unwrap();
        let d = oracle_apsp(&g).unwrap();
        assert_eq!(*d.get(0, 2), SignedDist::finite(2));
        assert_eq!(*d.get(1, 3), SignedDist::finite(2));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.get(i, j), d.get(j, i));
            }
        }
    }

    /// Random digraph with some negative weights but no negative cycle:
    /// non-negative base weights shifted by vertex potentials, so every cycle
    /// keeps its non-negative base sum.
    pub(crate) fn random_no_negcycle_graph(
        rng: &mut StdRng,
        n: usize,
        m: usize,
        base_hi: i64,
        pot_hi: i64,
    ) -> Graph {
        let pot: Vec<i64> = (0..n).map(|_| rng.random_range(0..=pot_hi)).collect();
        let mut g = Graph::new(n, true);
        let mut added = 0;
        while added < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                let w = rng.random_range(0..=base_hi) - pot[u] + pot[v];
                g.add_edge(u, v, w).unwrap();
                added += 1;
            }
        }
        g
    }

    #[test]
    fn cross_oracle_agreement_with_negative_weights() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..5 {
            let g = random_no_negcycle_graph(&mut rng, 64, 200, 2, 2);
            assert!(g.min_weight() < 0, "want genuinely negative weights");
            let bf = bellman_ford_apsp(&g).unwrap();
            let jo = johnson_apsp(&g).unwrap();
            let fw = floyd_warshall(&g).unwrap();
            assert_eq!(bf, jo);
            assert_eq!(bf, fw);
        }
    }

    #[test]
    fn negative_cycle_detected_with_witness() {
        let g = Graph::parse_text("graph directed 3 3\n0 1 1\n1 2 -3\n2 0 1\n").unwrap();
        match johnson_apsp(&g) {
            Err(Error::NegativeCycle(cycle)) => {
                assert!(!cycle.is_empty());
                let total: i64 = cycle
                    .iter()
                    .zip(cycle.iter().cycle().skip(1))
                    .map(|(&a, &b)| {
                        g.edges()
                            .iter()
                            .find(|e| e.u == a && e.v == b)
                            .map(|e| e.w1)
                            .unwrap_or(0)
                    })
                    .take(cycle.len())
                    .sum();
                assert!(total < 0, "witness cycle {cycle:?} sums to {total}");
            }
            other => panic!("expected negative cycle, got {other:?}"),
        }
    }

    #[test]
    fn layered_counts_are_powers_of_two() {
        for layers in [5usize, 12, 20] {
            let n = 2 * (layers + 1);
            let mut g = Graph::new(n, true);
            for l in 0..layers {
                for a in 0..2 {
                    for b in 0..2 {
                        g.add_edge(2 * l + a, 2 * (l + 1) + b, 1).unwrap();
                    }
                }
            }
            let (_, counts) = oracle_count(&g).unwrap();
            assert_eq!(
                *counts.get(0, 2 * layers),
                BigUint::from(1u32) << (layers - 1)
            );
        }
    }

    #[test]
    fn count_dag_recurrence_holds() {
        let mut rng = StdRng::seed_from_u64(5);
        let g = random_graph(&mut rng, 30, true, 70, 1, 1);
        let (dist, counts) = oracle_count(&g).unwrap();
        for s in 0..g.n() {
            for e in g.edges() {
                if *dist.get(s, e.u) + Dist::finite(1) == *dist.get(s, e.v) {
                    // counted through this edge
                    let mut total = BigUint::ZERO;
                    for e2 in g.edges() {
                        if e2.v == e.v && *dist.get(s, e2.u) + Dist::finite(1) == *dist.get(s, e.v)
                        {
                            total += counts.get(s, e2.u);
                        }
                    }
                    assert_eq!(&total, counts.get(s, e.v));
                }
            }
        }
    }

    #[test]
    fn budgeted_oracle_on_small_colored_graph() {
        let mut g = Graph::new(3, false);
        g.add_colored_edge(0, 1, 1, Color::Red).unwrap();
        g.add_colored_edge(1, 2, 1, Color::Blue).unwrap();
        let d0 = budgeted_apsp(&g, 0).unwrap();
        assert!(d0.get(0, 1).is_inf());
        assert!(d0.get(0, 2).is_inf());
        let d1 = budgeted_apsp(&g, 1).unwrap();
        assert_eq!(*d1.get(0, 1), Dist::finite(1));
        assert_eq!(*d1.get(0, 2), Dist::finite(2));
    }

    #[test]
    fn star_betweenness() {
        let g = Graph::parse_text("graph undirected 4 3\n0 1 1\n0 2 1\n0 3 1\n").unwrap();
        let bc = brandes_bc_rational(&g).unwrap();
        assert_eq!(bc[0], BigRational::from_integer(6.into()));
        for v in 1..4 {
            assert!(bc[v].is_zero());
        }
    }

    #[test]
    fn dag_longest_on_chain() {
        let g = Graph::parse_text("graph directed 4 3\n0 1 1\n1 2 1\n2 3 1\n").unwrap();
        let l = dag_longest_paths(&g).unwrap();
        assert_eq!(*l.get(0, 3), 3);
        assert_eq!(*l.get(3, 0), NO_PATH);
    }

    #[test]
    fn vertex_weighted_path() {
        let mut g = Graph::new(3, false);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.set_vertex_weights(vec![5, 2, 7]).unwrap();
        let d = vertex_weighted_apsp(&g).unwrap();
        assert_eq!(*d.get(0, 2), Dist::finite(14));
        assert_eq!(*d.get(0, 0), Dist::finite(5));
    }
}
