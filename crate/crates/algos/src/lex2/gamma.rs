use std::collections::HashMap;

use apsp_core::bounds::CostModel;
use apsp_core::dist::Dist;
use apsp_core::engines::ProductEngine;
use apsp_core::gamma::{select_gamma, GammaScale};
use apsp_core::graph::Graph;
use apsp_core::lexdist::LexDist;
use apsp_core::matrix::Matrix;

use crate::error::{Error, Result};
use crate::exact::zwick_apsp;
use crate::fixpoint::is_lex_fixed_point;

const UNSET: u64 = u64::MAX;

/// Per-value view of the pair matrix: secondary distances grouped by exact
/// primary value, with per-row candidate lists for sparse products.
struct SliceState {
    n: usize,
    d1: Matrix<Dist>,
    /// Secondary distance per cell, UNSET until its slice is solved.
    d2: Vec<u64>,
    /// Cells grouped by primary value.
    cells_by_value: HashMap<u64, Vec<(u32, u32)>>,
    /// Per row, middle indices grouped by the primary value of (row, mid).
    row_lists: Vec<HashMap<u64, Vec<u32>>>,
    /// Values whose slice is completely solved.
    done: Vec<bool>,
}

impl SliceState {
    fn new(d1: Matrix<Dist>, max_d1: u64) -> SliceState {
        let n = d1.rows();
        let mut cells_by_value: HashMap<u64, Vec<(u32, u32)>> = HashMap::new();
        let mut row_lists: Vec<HashMap<u64, Vec<u32>>> = vec![HashMap::new(); n];
        for u in 0..n {
            for v in 0..n {
                if let Some(val) = d1.get(u, v).value() {
                    if u != v {
                        cells_by_value
                            .entry(val)
                            .or_default()
                            .push((u as u32, v as u32));
                        row_lists[u].entry(val).or_default().push(v as u32);
                    }
                }
            }
        }
        SliceState {
            n,
            d1,
            d2: vec![UNSET; n * n],
            cells_by_value,
            row_lists,
            done: vec![false; (max_d1 + 2) as usize],
        }
    }

    fn mark_done(&mut self, value: u64) {
        if (value as usize) < self.done.len() {
            self.done[value as usize] = true;
        }
    }

    fn is_done(&self, value: u64) -> bool {
        // A value without cells has no prefixes landing on it either, so it
        // counts as vacuously solved.
        (value as usize) >= self.done.len()
            || self.done[value as usize]
            || !self.cells_by_value.contains_key(&value)
    }

    /// A split family is usable when a prefix point of every optimal path
    /// must land in the delta window (the window sits at least one full edge
    /// weight inside the value range) and every slice it consults is solved.
    fn combo_valid(&self, left_base: i64, right_base: i64, deltas: u64, c0: u64) -> bool {
        if left_base < c0 as i64 || right_base < 1 {
            return false;
        }
        for delta in 0..=deltas as i64 {
            let left = left_base - delta;
            let right = right_base + delta;
            if left >= 1 && !self.is_done(left as u64) {
                return false;
            }
            if !self.is_done(right as u64) {
                return false;
            }
        }
        true
    }

    /// Accumulates candidates for the slice at `target` out of the solved
    /// slices at `target = left + right`, over a delta window around the
    /// nominal split. Returns whether the window was usable.
    fn combine(&mut self, target: u64, left_base: i64, right_base: i64, c0: u64) -> bool {
        if !self.combo_valid(left_base, right_base, c0, c0) {
            return false;
        }
        let Some(cells) = self.cells_by_value.get(&target) else {
            return true;
        };
        let mut updates = Vec::with_capacity(cells.len());
        for &(u, v) in cells {
            let (u, v) = (u as usize, v as usize);
            let mut best = u64::MAX;
            for delta in 0..=c0 as i64 {
                let left = left_base - delta;
                let right = right_base + delta;
                if left < 1 || right < 1 {
                    continue;
                }
                let (left, right) = (left as u64, right as u64);
                if let Some(mids) = self.row_lists[u].get(&left) {
                    for &r in mids {
                        let r = r as usize;
                        if self.d1.get(r, v).value() == Some(right) {
                            let a = self.d2[u * self.n + r];
                            let b = self.d2[r * self.n + v];
                            debug_assert_ne!(a, UNSET);
                            debug_assert_ne!(b, UNSET);
                            best = best.min(a + b);
                        }
                    }
                }
            }
            updates.push((u, v, best));
        }
        for (u, v, best) in updates {
            debug_assert_ne!(best, u64::MAX, "target {target} cell ({u},{v}) uncovered");
            let cell = &mut self.d2[u * self.n + v];
            *cell = (*cell).min(best);
        }
        true
    }
}

/// Lexicographic two-weight APSP for directed graphs with strictly positive
/// primary weights, doubling over primary values scaled by a deterministic
/// gamma. Slices near multiples of `gamma * 2^i` are provably sparse, which
/// keeps the per-value products cheap: phase 1 doubles up through
/// `floor(gamma * 2^i)`, phase 2 descends filling `floor(gamma * j * 2^i)`
/// for odd j, and at level zero the targets sweep every primary value.
pub fn lex2_gamma(g: &Graph, seed: u64) -> Result<Matrix<LexDist>> {
    if !g.is_directed() {
        return Err(Error::invalid("lex2_gamma needs a directed graph"));
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

    // Primary distances through the staged exact solver.
    let mut primary = Graph::new(n, true);
    for e in g.edges() {
        primary.add_edge(e.u, e.v, e.w1)?;
    }
    let d1_signed = zwick_apsp(
        &primary,
        &CostModel::default(),
        &ProductEngine::blocked(),
        seed,
    )?;
    let d1 = d1_signed.map(|x| match x.value() {
        Some(v) => Dist::finite(v as u64),
        None => Dist::INF,
    });
    let max_d1 = d1.max_finite().unwrap_or(0);

    let gamma = pick_gamma(&d1, c0)?;

    let mut state = SliceState::new(d1.clone(), max_d1);

    // Base closure by capped lexicographic squaring: all pairs with primary
    // distance at most 4c0 + 2.
    let base_bound = 4 * c0 + 2;
    let base = base_closure(g, base_bound)?;
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if let Some(val) = state.d1.get(u, v).value() {
                if val <= base_bound {
                    let pair = *base.get(u, v);
                    debug_assert_eq!(pair.d1.value(), Some(val));
                    state.d2[u * n + v] = pair.d2.expect_finite("base pair");
                }
            }
        }
    }
    for value in 0..=base_bound.min(max_d1) {
        state.mark_done(value);
    }

    let b_range = 4 * c0 as i64;
    let levels = (0..)
        .take_while(|&i| gamma.floor_mul(1, i) <= max_d1 + (4 * c0))
        .last()
        .unwrap_or(0);

    // Phase 1: doubling targets floor(gamma * 2^i) + b.
    for i in 1..=levels {
        let anchor = gamma.floor_mul(1, i) as i64;
        let prev = gamma.floor_mul(1, i - 1) as i64;
        let parity = anchor - 2 * prev;
        debug_assert!((0..=1).contains(&parity));
        let mut targets: Vec<i64> = (-b_range..=b_range).map(|b| anchor + b).collect();
        targets.sort_unstable();
        for target in targets {
            if target < 1 || target as u64 > max_d1 || state.is_done(target as u64) {
                continue;
            }
            let b = target - anchor;
            let left_base = prev + floor_div(b, 2) + parity;
            let right_base = prev + ceil_div(b, 2);
            if state.combine(target as u64, left_base, right_base, c0) {
                state.mark_done(target as u64);
            }
        }
    }

    // Phase 2: descending levels fill the odd multiples.
    for i in (0..levels).rev() {
        let step = gamma.floor_mul(1, i) as i64;
        let mut j = 3u64;
        loop {
            let anchor = gamma.floor_mul(j, i) as i64;
            if anchor - b_range > max_d1 as i64 {
                break;
            }
            if j % 2 == 1 {
                let prev_anchor = gamma.floor_mul(j - 1, i) as i64;
                let parity = anchor - prev_anchor - step;
                debug_assert!((0..=1).contains(&parity));
                for b in -b_range..=b_range {
                    let target = anchor + b;
                    if target < 1 || target as u64 > max_d1 || state.is_done(target as u64) {
                        continue;
                    }
                    let left_base = prev_anchor + floor_div(b, 2) + parity;
                    let right_base = step + ceil_div(b, 2);
                    if state.combine(target as u64, left_base, right_base, c0) {
                        state.mark_done(target as u64);
                    }
                }
            }
            j += 1;
        }
    }

    let out = Matrix::from_fn(n, n, |u, v| {
        if u == v {
            return LexDist::ZERO;
        }
        match state.d1.get(u, v).value() {
            Some(val) => {
                let d2 = state.d2[u * n + v];
                debug_assert_ne!(d2, UNSET, "pair ({u},{v}) at primary {val} unsolved");
                LexDist::finite(val, d2)
            }
            None => LexDist::INF,
        }
    });
    if !is_lex_fixed_point(g, &out) {
        return Err(Error::Internal(
            "gamma-scaled lexicographic solve missed a pair".into(),
        ));
    }
    Ok(out)
}

fn pick_gamma(d1: &Matrix<Dist>, c0: u64) -> Result<GammaScale> {
    let window = 4 * c0;
    let mut constant = 4.0;
    loop {
        match select_gamma(d1, window, constant) {
            Ok(g) => return Ok(g),
            Err(_) if constant < 64.0 => constant *= 2.0,
            Err(e) => return Err(e.into()),
        }
    }
}

fn base_closure(g: &Graph, bound: u64) -> Result<Matrix<LexDist>> {
    let n = g.n();
    let mut d = Matrix::new(n, n, LexDist::INF)?;
    for i in 0..n {
        d.set(i, i, LexDist::ZERO);
    }
    for e in g.edges() {
        let cand = LexDist::finite(e.w1 as u64, e.w2.unwrap_or(1) as u64);
        if cand < *d.get(e.u, e.v) {
            d.set(e.u, e.v, cand);
        }
    }
    let mut doubled = 1u64;
    while doubled < bound {
        let next = Matrix::from_fn(n, n, |i, j| {
            let mut best = *d.get(i, j);
            for k in 0..n {
                best = best.min(*d.get(i, k) + *d.get(k, j));
            }
            best
        });
        d = next.map(|&x| match x.d1.value() {
            Some(v) if v <= bound => x,
            _ if x == LexDist::ZERO => x,
            _ => LexDist::INF,
        });
        doubled *= 2;
    }
    Ok(d)
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}
