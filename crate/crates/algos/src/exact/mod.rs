//! Exact all-pairs shortest path solvers.

mod colored;
mod seidel;
mod small_undirected;
mod zwick;

pub use colored::{cred_apsp, one_red_apsp, one_red_upper_estimates};
pub use seidel::seidel_apsp;
pub use small_undirected::undirected_small_weight_apsp;
pub use zwick::{successor_path, zwick_apsp, zwick_apsp_full, ZwickOutput, NO_SUCCESSOR};

use apsp_core::dist::SignedDist;
use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;

use crate::error::{Error, Result};

/// All-pairs longest paths in a DAG: negate the weights, solve APSP with the
/// staged solver, negate back.
pub fn dag_aplp(
    g: &Graph,
    cost: &apsp_core::CostModel,
    engine: &apsp_core::engines::ProductEngine,
    seed: u64,
) -> Result<Matrix<SignedDist>> {
    if apsp_core::oracles::topo_order(g).is_none() {
        return Err(Error::invalid("dag_aplp needs a directed acyclic graph"));
    }
    let mut negated = Graph::new(g.n(), true);
    for e in g.edges() {
        negated.add_edge(e.u, e.v, -e.w1)?;
    }
    let d = zwick_apsp(&negated, cost, engine, seed)?;
    Ok(d.map(|x| match x.value() {
        Some(v) => SignedDist::finite(-v),
        None => SignedDist::INF,
    }))
}
