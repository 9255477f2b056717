//! Lexicographic two-weight shortest paths: for every pair, the minimum of
//! (sum of primary weights, sum of secondary weights) compared
//! lexicographically. Three solvers cover the directed small-weight case,
//! the undirected positive-weight case, and a scaling-factor variant whose
//! products run on sparse per-value slices.

mod directed;
mod gamma;
mod undirected;

pub use directed::{lex2_directed, Lex2Options};
pub use gamma::lex2_gamma;
pub use undirected::{lex2_undirected_positive, lex2_undirected_with_split};

pub(crate) use undirected::build_clusters as undirected_clusters;

pub use apsp_core::lexdist::LexDist;

use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;

use crate::error::Result;

/// Per-value secondary-distance slice: entries carry the secondary distance
/// wherever the primary distance equals `value`, and are infinite elsewhere.
#[derive(Clone, Debug)]
pub struct LevelSlice {
    pub value: u64,
    pub entries: Matrix<apsp_core::Dist>,
}

impl LevelSlice {
    pub fn from_lex(d: &Matrix<LexDist>, value: u64) -> LevelSlice {
        LevelSlice {
            value,
            entries: d.map(|x| {
                if x.d1.value() == Some(value) {
                    x.d2
                } else {
                    apsp_core::Dist::INF
                }
            }),
        }
    }
}

fn override_secondary(g: &Graph, w2: i64) -> Graph {
    let mut h = Graph::new(g.n(), g.is_directed());
    for e in g.edges() {
        h.add_dual_edge(e.u, e.v, e.w1, w2).expect("valid edge");
    }
    h
}

fn hops_primary(g: &Graph) -> Graph {
    let mut h = Graph::new(g.n(), g.is_directed());
    for e in g.edges() {
        h.add_dual_edge(e.u, e.v, 1, e.w1).expect("valid edge");
    }
    h
}

/// All-pairs lightest shortest paths: secondary weight 1 on every edge, so
/// the secondary distance is the hop count of a lightest shortest path.
pub fn aplsp(g: &Graph, seed: u64) -> Result<Matrix<LexDist>> {
    let h = override_secondary(g, 1);
    route(&h, seed)
}

/// All-pairs shortest lightest paths: primary weight 1 on every edge, the
/// original weight demoted to the secondary component.
pub fn apslp(g: &Graph, seed: u64) -> Result<Matrix<LexDist>> {
    let h = hops_primary(g);
    route(&h, seed)
}

fn route(g: &Graph, seed: u64) -> Result<Matrix<LexDist>> {
    if !g.is_directed() && g.min_weight() > 0 {
        lex2_undirected_positive(g)
    } else {
        lex2_directed(&g.to_directed(), &Lex2Options::default(), seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use apsp_core::oracles::lex_dijkstra_apsp;

    #[test]
    fn aplsp_on_unweighted_graph_has_matching_components() {
        let g = apsp_core::gen::random_digraph(40, 120, 1, 1, 5);
        let got = aplsp(&g, 3).unwrap();
        for (_, _, x) in got.iter() {
            if x.is_finite() {
                assert_eq!(x.d1, x.d2);
            }
        }
    }

    #[test]
    fn aplsp_matches_lex_oracle_on_weighted_digraph() {
        let g = apsp_core::gen::random_digraph(64, 200, 0, 2, 8);
        let got = aplsp(&g, 4).unwrap();
        let want = lex_dijkstra_apsp(&override_secondary(&g, 1)).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn apslp_matches_lex_oracle() {
        let g = apsp_core::gen::random_undirected(48, 130, 1, 3, 9);
        let got = apslp(&g, 5).unwrap();
        let want = lex_dijkstra_apsp(&hops_primary(&g).to_directed()).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn level_slices_partition_finite_pairs() {
        let g = apsp_core::gen::random_dual(32, 90, true, 0, 2, 0, 3, 11);
        let d = lex2_directed(&g, &Lex2Options::default(), 2).unwrap();
        let maxd1 = d
            .data()
            .iter()
            .filter_map(|x| x.d1.value())
            .max()
            .unwrap_or(0);
        for u in 0..g.n() {
            for v in 0..g.n() {
                let hits = (0..=maxd1)
                    .filter(|&t| LevelSlice::from_lex(&d, t).entries.get(u, v).is_finite())
                    .count();
                let want = usize::from(d.get(u, v).is_finite());
                assert_eq!(hits, want, "pair ({u},{v})");
            }
        }
    }
}
