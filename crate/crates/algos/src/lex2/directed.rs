use apsp_core::bounds::EntryBounds;
use apsp_core::dist::Dist;
use apsp_core::engines::minplus_sparse_range;
use apsp_core::graph::Graph;
use apsp_core::hitting::{HittingConfig, HittingFamily, LevelRatio};
use apsp_core::lexdist::LexDist;
use apsp_core::matrix::Matrix;
use apsp_core::oracles::lex_dijkstra;

use crate::error::{Error, Result};
use crate::fixpoint::is_lex_fixed_point;

#[derive(Clone, Debug)]
pub struct Lex2Options {
    /// Hop threshold past which per-sample lexicographic Dijkstra sweeps and
    /// one brute product replace the staged products.
    pub crossover: Option<u64>,
    /// Group size handed to the rank-grouped sparse product.
    pub group_size: usize,
}

impl Default for Lex2Options {
    fn default() -> Lex2Options {
        Lex2Options {
            crossover: None,
            group_size: 8,
        }
    }
}

/// Lexicographic two-weight APSP for directed graphs with primary weights in
/// [0, c0] (zero allowed) and non-negative secondary weights.
///
/// Phase 1 ascends geometric hop levels, keeping sample-row and sample-column
/// matrices exact wherever some lexicographic shortest path uses at most
/// level-many edges. Phase 2 descends, completing each sample's rows out of
/// the rows one level up. Products split the left factor by its primary
/// value, which leaves small secondary entries against a scalar-encoded
/// right factor, the shape the rank-grouped sparse product handles. Pairs
/// beyond the crossover hop count are finished by lexicographic Dijkstra
/// sweeps over the crossover sample and one brute product.
pub fn lex2_directed(g: &Graph, opts: &Lex2Options, seed: u64) -> Result<Matrix<LexDist>> {
    if !g.is_directed() {
        return Err(Error::invalid("lex2_directed needs a directed graph"));
    }
    for (id, e) in g.edges().iter().enumerate() {
        if e.w1 < 0 || e.w2.unwrap_or(1) < 0 {
            return Err(Error::validation(format!(
                "edge {id} has a negative weight component"
            )));
        }
    }
    let n = g.n();
    let crossover = opts
        .crossover
        .unwrap_or_else(|| ((n as f64).sqrt().ceil() as u64).max(4));
    let config = HittingConfig {
        constant: 9.0,
        ratio: LevelRatio::ThreeHalves,
        ..HittingConfig::default()
    };
    for retry in 0..config.max_retries {
        let family = HittingFamily::sample(n, &config, seed.wrapping_add(retry as u64));
        let d = run_once(g, opts, crossover, &family)?;
        if is_lex_fixed_point(g, &d) {
            return Ok(d);
        }
    }
    Err(Error::VerificationFailure {
        retries: config.max_retries,
    })
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
        }
    }
    Ok(adj)
}

fn cap_lex(m: Matrix<LexDist>, cap1: u64, cap2: u64) -> Matrix<LexDist> {
    m.map(|&x| match (x.d1.value(), x.d2.value()) {
        (Some(a), Some(b)) if a <= cap1 && b <= cap2 => x,
        _ => LexDist::INF,
    })
}

/// Lexicographic min-plus product by splitting the left factor per primary
/// value: within one split, the primary part is a shared offset, the left
/// entries are bare secondary distances, and the right entries are encoded
/// as `d1 * base + d2` with a power-of-two base above every achievable
/// secondary sum. Each split runs through the sparse range product.
fn lex_product(
    a: &Matrix<LexDist>,
    b: &Matrix<LexDist>,
    group_size: usize,
) -> Result<Matrix<LexDist>> {
    let (n1, n3) = (a.rows(), b.cols());
    let max_d2_a = a
        .data()
        .iter()
        .filter_map(|x| x.d2.value())
        .max()
        .unwrap_or(0);
    let max_d2_b = b
        .data()
        .iter()
        .filter_map(|x| x.d2.value())
        .max()
        .unwrap_or(0);
    let base = (max_d2_a + max_d2_b + 1).next_power_of_two();
    let encoded_b = b.map(|&x| x.encode(base).expect("secondary sums fit the base"));
    let wanted: Vec<(usize, usize)> = (0..n1).flat_map(|i| (0..n3).map(move |j| (i, j))).collect();

    let mut values: Vec<u64> = a.data().iter().filter_map(|x| x.d1.value()).collect();
    values.sort_unstable();
    values.dedup();

    let mut out = Matrix::new(n1, n3, LexDist::INF)?;
    for value in values {
        let slice = a.map(|&x| {
            if x.d1.value() == Some(value) {
                x.d2
            } else {
                Dist::INF
            }
        });
        let bounds = EntryBounds::new(max_d2_a, u64::MAX - 1);
        let cells = minplus_sparse_range(&slice, &encoded_b, &bounds, &wanted, group_size)?;
        for ((i, j), enc) in cells {
            if enc.is_inf() {
                continue;
            }
            let decoded = LexDist::decode(enc, base);
            let cand = LexDist::new(decoded.d1 + Dist::finite(value), decoded.d2);
            if cand < *out.get(i, j) {
                out.set(i, j, cand);
            }
        }
    }
    Ok(out)
}

fn run_once(
    g: &Graph,
    opts: &Lex2Options,
    crossover: u64,
    family: &HittingFamily,
) -> Result<Matrix<LexDist>> {
    let n = g.n();
    let c1 = g.max_weight().max(1) as u64;
    let c2 = g
        .edges()
        .iter()
        .map(|e| e.w2.unwrap_or(1))
        .max()
        .unwrap_or(1)
        .max(1) as u64;
    let all: Vec<usize> = (0..n).collect();
    let adj = lex_adjacency(g)?;

    let top = (0..family.num_levels())
        .find(|&s| family.level_value(s) >= crossover as f64)
        .unwrap_or(0);

    // Phase 1 ascending.
    let base_ids = family.level(0).to_vec();
    let mut rows: Vec<Matrix<LexDist>> = vec![cap_lex(adj.submatrix(&base_ids, &all), c1, c2)];
    let mut cols: Vec<Matrix<LexDist>> = vec![cap_lex(adj.submatrix(&all, &base_ids), c1, c2)];
    for s in 1..=top {
        let sample = family.level(s);
        let prev = family.level(s - 1);
        let level = family.level_value(s).ceil() as u64;
        let (cap1, cap2) = (c1 * level, c2 * level);
        let sample_rows: Vec<usize> = (0..sample.len()).collect();

        let a = rows[s - 1].submatrix(&sample_rows, prev);
        let prod = lex_product(&a, &rows[s - 1], opts.group_size)?;
        let mut next = rows[s - 1].submatrix(&sample_rows, &all);
        merge_lex(&mut next, &prod);
        rows.push(cap_lex(next, cap1, cap2));

        let b = rows[s - 1].submatrix(&(0..prev.len()).collect::<Vec<_>>(), sample);
        let prod = lex_product(&cols[s - 1], &b, opts.group_size)?;
        let mut next = cols[s - 1].submatrix(&all, &sample_rows);
        merge_lex(&mut next, &prod);
        cols.push(cap_lex(next, cap1, cap2));
    }

    // Phase 2 descending: full[s] holds sample-row lexicographic distances,
    // correct up to crossover-many hops.
    let mut full = rows[top].clone();
    for s in (0..top).rev() {
        let sample = family.level(s);
        let a = cols[s + 1].submatrix(sample, &(0..family.level(s + 1).len()).collect::<Vec<_>>());
        let prod = lex_product(&a, &full, opts.group_size)?;
        let mut next = rows[s].clone();
        merge_lex(&mut next, &prod);
        full = next;
    }
    // full is now V x V (level 0 is everything), in sample order.
    let mut d = Matrix::new(n, n, LexDist::INF)?;
    for (i, &u) in family.level(0).iter().enumerate() {
        for v in 0..n {
            d.set(u, v, *full.get(i, v));
        }
    }

    // Long paths: lexicographic Dijkstra to and from the crossover sample,
    // then one brute product over the sample bridges.
    let sweep = family.level(top);
    let reversed = reverse_graph(g);
    for &x in sweep {
        let from_x = lex_dijkstra(g, x)?;
        let to_x = lex_dijkstra(&reversed, x)?;
        for v in 0..n {
            if from_x[v] < *d.get(x, v) {
                d.set(x, v, from_x[v]);
            }
            if to_x[v] < *d.get(v, x) {
                d.set(v, x, to_x[v]);
            }
        }
    }
    for &x in sweep {
        for u in 0..n {
            let ux = *d.get(u, x);
            if !ux.is_finite() {
                continue;
            }
            for v in 0..n {
                let cand = ux + *d.get(x, v);
                if cand < *d.get(u, v) {
                    d.set(u, v, cand);
                }
            }
        }
    }
    Ok(d)
}

fn merge_lex(dst: &mut Matrix<LexDist>, src: &Matrix<LexDist>) {
    for i in 0..dst.rows() {
        for j in 0..dst.cols() {
            let cand = *src.get(i, j);
            if cand < *dst.get(i, j) {
                dst.set(i, j, cand);
            }
        }
    }
}

fn reverse_graph(g: &Graph) -> Graph {
    let mut h = Graph::new(g.n(), true);
    for e in g.edges() {
        let mut rec = *e;
        std::mem::swap(&mut rec.u, &mut rec.v);
        h.add_edge_full(rec).expect("valid edge");
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use apsp_core::gen::random_dual;
    use apsp_core::oracles::lex_dijkstra_apsp;

    #[test]
    fn prefers_smaller_secondary_on_tied_primary() {
        let mut g = Graph::new(3, true);
        g.add_dual_edge(0, 2, 2, 1).unwrap();
        g.add_dual_edge(0, 1, 1, 5).unwrap();
        g.add_dual_edge(1, 2, 1, 5).unwrap();
        let d = lex2_directed(&g, &Lex2Options::default(), 1).unwrap();
        assert_eq!(*d.get(0, 2), LexDist::finite(2, 1));
    }

    #[test]
    fn unit_secondary_counts_hops() {
        let g = random_dual(48, 140, true, 1, 2, 1, 1, 3);
        let d = lex2_directed(&g, &Lex2Options::default(), 2).unwrap();
        let want = lex_dijkstra_apsp(&g).unwrap();
        assert_eq!(d, want);
    }

    #[test]
    fn random_dual_weights_match_oracle() {
        for seed in 0..4 {
            let g = random_dual(64, 200, true, 0, 2, 0, 3, 100 + seed);
            let d = lex2_directed(&g, &Lex2Options::default(), seed).unwrap();
            let want = lex_dijkstra_apsp(&g).unwrap();
            assert_eq!(d, want, "seed {seed}");
        }
    }

    #[test]
    fn primary_component_is_plain_apsp() {
        let g = random_dual(40, 120, true, 1, 3, 0, 3, 7);
        let d = lex2_directed(&g, &Lex2Options::default(), 1).unwrap();
        let mut primary = Graph::new(g.n(), true);
        for e in g.edges() {
            primary.add_edge(e.u, e.v, e.w1).unwrap();
        }
        let want = apsp_core::oracles::dijkstra_apsp(&primary).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(
                    d.get(u, v).d1.value(),
                    want.get(u, v).value(),
                    "pair ({u},{v})"
                );
            }
        }
    }

    #[test]
    fn negative_weight_rejected() {
        let mut g = Graph::new(2, true);
        g.add_dual_edge(0, 1, -1, 0).unwrap();
        assert!(lex2_directed(&g, &Lex2Options::default(), 1).is_err());
    }

    #[test]
    fn tiny_crossover_exercises_both_phases() {
        let g = random_dual(40, 110, true, 0, 2, 0, 2, 19);
        let opts = Lex2Options {
            crossover: Some(3),
            ..Lex2Options::default()
        };
        let d = lex2_directed(&g, &opts, 5).unwrap();
        assert_eq!(d, lex_dijkstra_apsp(&g).unwrap());
    }
}
