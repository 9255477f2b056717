use std::collections::HashMap;

use apsp_core::dist::Dist;
use apsp_core::gamma::{select_gamma, GammaScale};
use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;
use apsp_core::oracles::bfs_apsp;

use crate::error::{Error, Result};

use super::{matmul_mod, CountData, CountMatrix};

const UNSET: u64 = u64::MAX;

/// Shortest-path counts modulo U for a directed unweighted graph, riding the
/// gamma-scaled doubling: per-value count slices replace the secondary
/// distance slices, min-plus recombination becomes a masked modular
/// sum-product, and (the graph being unweighted) each target splits at one
/// exact prefix distance instead of a window.
pub fn count_mod_directed(g: &Graph, modulus: u64) -> Result<CountMatrix> {
    if !g.is_unweighted() {
        return Err(Error::invalid(
            "count_mod_directed needs an unweighted graph",
        ));
    }
    if modulus < 2 {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    let n = g.n();
    let dist = bfs_apsp(g);
    let max_d = dist.max_finite().unwrap_or(0);

    let gamma = pick_gamma(&dist)?;

    let mut state = State::new(&dist, max_d, modulus);

    // Base: walk-count powers masked to exact distances cover small values
    // (a length-d walk between vertices at distance d is a shortest path).
    let base_bound = 6u64.min(max_d);
    let mut adj = Matrix::new(n, n, 0u64)?;
    for e in g.edges() {
        let c = (*adj.get(e.u, e.v) + 1) % modulus;
        adj.set(e.u, e.v, c);
    }
    let mut power = adj.clone();
    for value in 1..=base_bound.max(1) {
        if value > 1 {
            power = matmul_mod(&power, &adj, modulus);
        }
        if value > max_d {
            break;
        }
        for u in 0..n {
            for v in 0..n {
                if dist.get(u, v).value() == Some(value) {
                    state.counts[u * n + v] = *power.get(u, v);
                }
            }
        }
        state.mark_done(value);
    }

    let levels = (0..)
        .take_while(|&i| gamma.floor_mul(1, i) <= max_d + 4)
        .last()
        .unwrap_or(0);

    // Doubling phase.
    for i in 1..=levels {
        let anchor = gamma.floor_mul(1, i) as i64;
        let prev = gamma.floor_mul(1, i - 1) as i64;
        let parity = anchor - 2 * prev;
        for b in -4i64..=4 {
            let target = anchor + b;
            if target < 1 || target as u64 > max_d || state.is_done(target as u64) {
                continue;
            }
            let left = prev + floor_div(b, 2) + parity;
            let right = prev + ceil_div(b, 2);
            if state.split_ready(target as u64, left, right) {
                state.combine(target as u64, left as u64, right as u64);
                state.mark_done(target as u64);
            }
        }
    }

    // Descending phase over odd multiples.
    for i in (0..levels).rev() {
        let step = gamma.floor_mul(1, i) as i64;
        let mut j = 3u64;
        loop {
            let anchor = gamma.floor_mul(j, i) as i64;
            if anchor - 4 > max_d as i64 {
                break;
            }
            if j % 2 == 1 {
                let prev_anchor = gamma.floor_mul(j - 1, i) as i64;
                let parity = anchor - prev_anchor - step;
                for b in -4i64..=4 {
                    let target = anchor + b;
                    if target < 1 || target as u64 > max_d || state.is_done(target as u64) {
                        continue;
                    }
                    let left = prev_anchor + floor_div(b, 2) + parity;
                    let right = step + ceil_div(b, 2);
                    if state.split_ready(target as u64, left, right) {
                        state.combine(target as u64, left as u64, right as u64);
                        state.mark_done(target as u64);
                    }
                }
            }
            j += 1;
        }
    }

    let counts = Matrix::from_fn(n, n, |u, v| {
        if u == v {
            return 1 % modulus;
        }
        match dist.get(u, v).value() {
            Some(d) => {
                let c = state.counts[u * n + v];
                debug_assert_ne!(c, UNSET, "pair ({u},{v}) at distance {d} unsolved");
                if c == UNSET {
                    0
                } else {
                    c
                }
            }
            None => 0,
        }
    });
    Ok(CountMatrix {
        dist,
        data: CountData::Mod(modulus, counts),
    })
}

fn pick_gamma(d: &Matrix<Dist>) -> Result<GammaScale> {
    let mut constant = 4.0;
    loop {
        match select_gamma(d, 4, constant) {
            Ok(g) => return Ok(g),
            Err(_) if constant < 64.0 => constant *= 2.0,
            Err(e) => return Err(e.into()),
        }
    }
}

struct State<'a> {
    n: usize,
    dist: &'a Matrix<Dist>,
    modulus: u64,
    counts: Vec<u64>,
    cells_by_value: HashMap<u64, Vec<(u32, u32)>>,
    row_lists: Vec<HashMap<u64, Vec<u32>>>,
    done: Vec<bool>,
}

impl<'a> State<'a> {
    fn new(dist: &'a Matrix<Dist>, max_d: u64, modulus: u64) -> State<'a> {
        let n = dist.rows();
        let mut cells_by_value: HashMap<u64, Vec<(u32, u32)>> = HashMap::new();
        let mut row_lists: Vec<HashMap<u64, Vec<u32>>> = vec![HashMap::new(); n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    if let Some(val) = dist.get(u, v).value() {
                        cells_by_value
                            .entry(val)
                            .or_default()
                            .push((u as u32, v as u32));
                        row_lists[u].entry(val).or_default().push(v as u32);
                    }
                }
            }
        }
        State {
            n,
            dist,
            modulus,
            counts: vec![UNSET; n * n],
            cells_by_value,
            row_lists,
            done: vec![false; (max_d + 2) as usize],
        }
    }

    fn mark_done(&mut self, value: u64) {
        if (value as usize) < self.done.len() {
            self.done[value as usize] = true;
        }
    }

    fn is_done(&self, value: u64) -> bool {
        (value as usize) >= self.done.len()
            || self.done[value as usize]
            || !self.cells_by_value.contains_key(&value)
    }

    fn split_ready(&self, target: u64, left: i64, right: i64) -> bool {
        left >= 1
            && right >= 1
            && (left as u64) < target
            && self.is_done(left as u64)
            && self.is_done(right as u64)
    }

    /// counts[target cell] = sum over middle vertices at exact prefix
    /// distance `left` of prefix * suffix counts, in Z_U. Unweighted paths
    /// cross the prefix shell exactly once, so the sum is exact.
    fn combine(&mut self, target: u64, left: u64, right: u64) {
        debug_assert_eq!(left + right, target);
        let Some(cells) = self.cells_by_value.get(&target) else {
            return;
        };
        let mut updates = Vec::with_capacity(cells.len());
        for &(u, v) in cells {
            let (u, v) = (u as usize, v as usize);
            let mut acc: u64 = 0;
            if let Some(mids) = self.row_lists[u].get(&left) {
                for &r in mids {
                    let r = r as usize;
                    if self.dist.get(r, v).value() == Some(right) {
                        let a = self.counts[u * self.n + r];
                        let b = self.counts[r * self.n + v];
                        debug_assert_ne!(a, UNSET);
                        debug_assert_ne!(b, UNSET);
                        acc = (acc + a * b) % self.modulus;
                    }
                }
            }
            updates.push((u, v, acc));
        }
        for (u, v, acc) in updates {
            self.counts[u * self.n + v] = acc;
        }
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}
