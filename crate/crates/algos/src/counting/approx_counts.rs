use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use apsp_core::dist::Dist;
use apsp_core::engines::{approx_count_product, ApproxCount};
use apsp_core::gamma::{select_gamma, GammaScale};
use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;
use apsp_core::oracles::bfs_apsp;

use crate::error::{Error, Result};
use crate::lex2::undirected_clusters;

use super::{CountData, CountMatrix};

/// Approximate shortest-path counts within factor (1 + 1/u) for unweighted
/// graphs. Undirected inputs follow the dominating-set cluster route with
/// plain floating sum-products; directed inputs follow the gamma-scaled
/// doubling with the rank-grouped approximate product. Both run their
/// internal products at a budget tightened by the instance size, so the
/// composed drift stays within the requested factor.
pub fn count_approx(g: &Graph, u: u64) -> Result<CountMatrix> {
    if !g.is_unweighted() {
        return Err(Error::invalid("count_approx needs an unweighted graph"));
    }
    if u < 2 {
        return Err(Error::invalid("approximation parameter must be at least 2"));
    }
    if g.is_directed() {
        count_approx_directed(g, u)
    } else {
        count_approx_undirected(g, u)
    }
}

fn count_approx_undirected(g: &Graph, u: u64) -> Result<CountMatrix> {
    let n = g.n();
    let dist = bfs_apsp(g);
    let max_d = dist.max_finite().unwrap_or(0);

    let mut counts = Matrix::new(n, n, ApproxCount::ZERO)?;
    for i in 0..n {
        counts.set(i, i, ApproxCount::ONE);
    }
    for e in g.edges() {
        let bump = *counts.get(e.u, e.v);
        let bumped = bump + ApproxCount::ONE;
        counts.set(e.u, e.v, bumped);
        counts.set(e.v, e.u, bumped);
    }

    if max_d > 1 {
        let l_param = (n as f64).powf(0.42).ceil() as usize;
        let threshold = n / l_param.max(1);
        let high: Vec<usize> = (0..n)
            .filter(|&v| g.neighbors(v).len() > threshold)
            .collect();
        let low: Vec<usize> = (0..n)
            .filter(|&v| g.neighbors(v).len() <= threshold)
            .collect();
        let clusters = undirected_clusters(g, &high, threshold.max(1));

        let mut done = 1u64;
        let mut level = 1.0f64;
        while done < max_d {
            level = (level * 1.5).max(level + 1.0);
            let ell = (level.floor() as u64).min(max_d);
            for (dominator, members) in &clusters {
                cluster_counts(&dist, &mut counts, *dominator, members, done, ell);
            }
            mirror(&mut counts, &dist);
            for &src in &low {
                low_source_counts(g, &high, threshold, &dist, &mut counts, src, ell);
            }
            mirror(&mut counts, &dist);
            done = ell;
        }
    }

    Ok(CountMatrix {
        dist,
        data: CountData::Approx(u, counts),
    })
}

/// Counts are symmetric in an undirected graph; propagate whichever side has
/// been computed.
fn mirror(counts: &mut Matrix<ApproxCount>, dist: &Matrix<Dist>) {
    for i in 0..counts.rows() {
        for j in i + 1..counts.cols() {
            if dist.get(i, j).is_finite() {
                let a = *counts.get(i, j);
                let b = *counts.get(j, i);
                let pick = if a.is_zero() { b } else { a };
                counts.set(i, j, pick);
                counts.set(j, i, pick);
            }
        }
    }
}

/// Band recombination for every source in one cluster: paths at distance i
/// cross the source's exact distance-m shell once, and the shell sits inside
/// the dominator's band of slack 2.
fn cluster_counts(
    dist: &Matrix<Dist>,
    counts: &mut Matrix<ApproxCount>,
    dominator: usize,
    members: &[usize],
    done: u64,
    ell: u64,
) {
    let n = dist.rows();
    let c = 2u64;
    let lo = (2 * ell).div_ceil(5).max(ell.saturating_sub(done)).max(1);
    let hi = (3 * ell / 5).min(done);
    let (lo, hi) = if lo <= hi {
        (lo, hi)
    } else {
        (ell.saturating_sub(done).max(1), done.min(ell - 1))
    };
    let band = |center: u64| -> Vec<usize> {
        (0..n)
            .filter(|&v| {
                dist.get(dominator, v)
                    .value()
                    .map(|x| x + c >= center && x <= center + c)
                    .unwrap_or(false)
            })
            .collect()
    };
    let m = match (lo..=hi).min_by_key(|&cand| band(cand).len()) {
        Some(m) => m,
        None => return,
    };
    let shell = band(m);
    if shell.is_empty() {
        return;
    }
    for &src in members {
        for v in 0..n {
            let Some(d) = dist.get(src, v).value() else {
                continue;
            };
            if d <= m.max(done) || d > ell {
                continue;
            }
            let mut acc = ApproxCount::ZERO;
            for &r in &shell {
                if dist.get(src, r).value() == Some(m) && dist.get(r, v).value() == Some(d - m) {
                    acc = acc + *counts.get(src, r) * *counts.get(r, v);
                }
            }
            counts.set(src, v, acc);
        }
    }
}

/// Counting Dijkstra from a low-degree source: arcs into high-degree
/// vertices are cut and replaced by one shortcut per finished high row, so
/// each path is counted exactly once at its last high vertex (or with no
/// high vertex at all). Only low-degree targets are committed; high targets
/// arrive by symmetry.
fn low_source_counts(
    g: &Graph,
    high: &[usize],
    threshold: usize,
    dist: &Matrix<Dist>,
    counts: &mut Matrix<ApproxCount>,
    src: usize,
    ell: u64,
) {
    let n = g.n();
    let is_high: Vec<bool> = {
        let mut v = vec![false; n];
        for &h in high {
            v[h] = true;
        }
        v
    };
    let mut arcs: Vec<Vec<(usize, u64, ApproxCount)>> = vec![Vec::new(); n];
    for e in g.edges() {
        let margin = |x: usize| g.neighbors(x).len() <= threshold;
        if margin(e.u) || margin(e.v) {
            if !is_high[e.v] {
                arcs[e.u].push((e.v, 1, ApproxCount::ONE));
            }
            if !is_high[e.u] {
                arcs[e.v].push((e.u, 1, ApproxCount::ONE));
            }
        }
    }
    for &z in high {
        if let Some(d) = dist.get(src, z).value() {
            if d <= ell && !counts.get(src, z).is_zero() {
                arcs[src].push((z, d, *counts.get(src, z)));
            }
        }
    }
    let mut best = vec![u64::MAX; n];
    let mut cnt = vec![ApproxCount::ZERO; n];
    best[src] = 0;
    cnt[src] = ApproxCount::ONE;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, src)));
    let mut settled = vec![false; n];
    while let Some(Reverse((d, x))) = heap.pop() {
        if settled[x] || d > best[x] {
            continue;
        }
        settled[x] = true;
        let from = cnt[x];
        for &(y, w, ref mult) in &arcs[x] {
            let nd = d + w;
            if nd < best[y] {
                best[y] = nd;
                cnt[y] = from * *mult;
                heap.push(Reverse((nd, y)));
            } else if nd == best[y] && !settled[y] {
                cnt[y] = cnt[y] + from * *mult;
            }
        }
    }
    for v in 0..n {
        if is_high[v] || v == src {
            continue;
        }
        if let Some(d) = dist.get(src, v).value() {
            if d <= ell && best[v] == d {
                counts.set(src, v, cnt[v]);
            }
        }
    }
}

fn count_approx_directed(g: &Graph, u: u64) -> Result<CountMatrix> {
    let n = g.n();
    let dist = bfs_apsp(g);
    let max_d = dist.max_finite().unwrap_or(0);
    // Internal budget tightened by the composition depth.
    let internal_u = (n as u64).saturating_mul(u);

    let gamma = pick_gamma(&dist)?;
    let mut counts = Matrix::new(n, n, ApproxCount::ZERO)?;
    for i in 0..n {
        counts.set(i, i, ApproxCount::ONE);
    }
    let mut done = vec![false; (max_d + 2) as usize];
    let mut cells_by_value: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                if let Some(v) = dist.get(i, j).value() {
                    cells_by_value.entry(v).or_default().push((i, j));
                }
            }
        }
    }
    let value_exists = |v: u64| cells_by_value.contains_key(&v);
    let is_done = |done: &[bool], v: u64| -> bool {
        (v as usize) >= done.len() || done[v as usize] || !value_exists(v)
    };

    // Base values by masked walk powers.
    let base_bound = 6u64.min(max_d);
    let mut adj = Matrix::new(n, n, ApproxCount::ZERO)?;
    for e in g.edges() {
        let c = counts_add_one(*adj.get(e.u, e.v));
        adj.set(e.u, e.v, c);
    }
    let mut power = adj.clone();
    for value in 1..=base_bound.max(1) {
        if value > 1 {
            power = apsp_core::engines::approx_matmul(&power, &adj);
        }
        if value > max_d {
            break;
        }
        if let Some(cells) = cells_by_value.get(&value) {
            for &(i, j) in cells {
                counts.set(i, j, *power.get(i, j));
            }
        }
        if (value as usize) < done.len() {
            done[value as usize] = true;
        }
    }

    let levels = (0..)
        .take_while(|&i| gamma.floor_mul(1, i) <= max_d + 4)
        .last()
        .unwrap_or(0);

    let slice_product = |counts: &Matrix<ApproxCount>,
                         target: u64,
                         left: u64,
                         right: u64,
                         cells: &[(usize, usize)]|
     -> Result<Vec<((usize, usize), ApproxCount)>> {
        debug_assert_eq!(left + right, target);
        let a = Matrix::from_fn(n, n, |i, k| {
            if dist.get(i, k).value() == Some(left) {
                *counts.get(i, k)
            } else {
                ApproxCount::ZERO
            }
        });
        let b = Matrix::from_fn(n, n, |k, j| {
            if dist.get(k, j).value() == Some(right) {
                *counts.get(k, j)
            } else {
                ApproxCount::ZERO
            }
        });
        let ell1 = a
            .data()
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.exponent() + 1)
            .max()
            .unwrap_or(1)
            .max(1) as u32;
        let out = approx_count_product(&a, &b, ell1, internal_u, cells, 8)?;
        Ok(out.into_iter().collect())
    };

    // Doubling phase, then descending odd multiples; unweighted, so each
    // target uses one exact split.
    for i in 1..=levels {
        let anchor = gamma.floor_mul(1, i) as i64;
        let prev = gamma.floor_mul(1, i - 1) as i64;
        let parity = anchor - 2 * prev;
        for b in -4i64..=4 {
            let target = anchor + b;
            if target < 1 || target as u64 > max_d || is_done(&done, target as u64) {
                continue;
            }
            let left = prev + floor_div(b, 2) + parity;
            let right = prev + ceil_div(b, 2);
            if split_ready(&done, &is_done, target as u64, left, right) {
                if let Some(cells) = cells_by_value.get(&(target as u64)) {
                    for ((x, y), v) in
                        slice_product(&counts, target as u64, left as u64, right as u64, cells)?
                    {
                        counts.set(x, y, v);
                    }
                }
                done[target as usize] = true;
            }
        }
    }
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
                    if target < 1 || target as u64 > max_d || is_done(&done, target as u64) {
                        continue;
                    }
                    let left = prev_anchor + floor_div(b, 2) + parity;
                    let right = step + ceil_div(b, 2);
                    if split_ready(&done, &is_done, target as u64, left, right) {
                        if let Some(cells) = cells_by_value.get(&(target as u64)) {
                            for ((x, y), v) in slice_product(
                                &counts,
                                target as u64,
                                left as u64,
                                right as u64,
                                cells,
                            )? {
                                counts.set(x, y, v);
                            }
                        }
                        done[target as usize] = true;
                    }
                }
            }
            j += 1;
        }
    }

    Ok(CountMatrix {
        dist,
        data: CountData::Approx(u, counts),
    })
}

fn counts_add_one(c: ApproxCount) -> ApproxCount {
    c + ApproxCount::ONE
}

fn split_ready(
    done: &[bool],
    is_done: &impl Fn(&[bool], u64) -> bool,
    target: u64,
    left: i64,
    right: i64,
) -> bool {
    left >= 1
        && right >= 1
        && (left as u64) < target
        && is_done(done, left as u64)
        && is_done(done, right as u64)
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

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}
