use std::collections::HashMap;

use crate::bitmat::BitMatrix;
use crate::bounds::EntryBounds;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::{brute, check_product_dims};

struct Group {
    col: usize,
    members: Vec<usize>,
    /// Largest B value in the group.
    max: u64,
}

/// Min-plus product for requested output positions only, organized for a
/// small-entry left matrix against a right matrix with arbitrary finite
/// entries. Each column of B is split by rank into groups of `t`; a boolean
/// product finds the first reachable group per cell, a window product covers
/// values within `l1` above it, and group plus leftover elements are scanned
/// directly. Rank ties break by row index; the trailing `< t` elements of a
/// column are always scanned.
pub fn minplus_sparse_range(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    bounds: &EntryBounds,
    wanted: &[(usize, usize)],
    t: usize,
) -> Result<HashMap<(usize, usize), Dist>> {
    if t == 0 {
        return Err(Error::invalid("group size t must be >= 1"));
    }
    check_product_dims(a, b)?;
    let l1 = bounds.a.max_finite;
    for (i, j, d) in a.iter() {
        if let Some(v) = d.value() {
            if v > l1 {
                return Err(Error::BoundViolation {
                    row: i,
                    col: j,
                    value: v,
                    bound: l1,
                });
            }
        }
    }
    let mut out = HashMap::with_capacity(wanted.len());
    if wanted.is_empty() {
        return Ok(out);
    }

    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let mut groups: Vec<Group> = Vec::new();
    let mut col_groups: Vec<Vec<usize>> = vec![Vec::new(); n3];
    let mut col_leftover: Vec<Vec<usize>> = vec![Vec::new(); n3];
    for j in 0..n3 {
        let mut entries: Vec<(u64, usize)> = (0..n2)
            .filter_map(|k| b.get(k, j).value().map(|v| (v, k)))
            .collect();
        entries.sort_unstable();
        let full = entries.len() / t * t;
        for chunk in entries[..full].chunks_exact(t) {
            col_groups[j].push(groups.len());
            groups.push(Group {
                col: j,
                members: chunk.iter().map(|&(_, k)| k).collect(),
                max: chunk.last().unwrap().0,
            });
        }
        col_leftover[j] = entries[full..].iter().map(|&(_, k)| k).collect();
    }

    let reach = if groups.is_empty() {
        None
    } else {
        let mut afin = BitMatrix::new(n1, n2);
        for (i, k, d) in a.iter() {
            if d.is_finite() {
                afin.set(i, k);
            }
        }
        let mut gmem = BitMatrix::new(n2, groups.len());
        for (g, group) in groups.iter().enumerate() {
            for &k in &group.members {
                gmem.set(k, g);
            }
        }
        Some(afin.mul(&gmem))
    };

    // Window product: per group g with max x, the shifted column holds
    // B[k, col(g)] - x for values in [x, x + l1].
    let window = if groups.is_empty() {
        None
    } else {
        let w = Matrix::from_fn(n2, groups.len(), |k, g| {
            let group = &groups[g];
            match b.get(k, group.col).value() {
                Some(v) if v >= group.max && v <= group.max.saturating_add(l1) => {
                    Dist::finite(v - group.max)
                }
                _ => Dist::INF,
            }
        });
        Some(brute::minplus_blocked(a, &w, 64).0)
    };

    for &(i, j) in wanted {
        if i >= n1 || j >= n3 {
            return Err(Error::invalid(format!(
                "wanted position ({i}, {j}) outside {n1}x{n3} output"
            )));
        }
        let mut best = Dist::INF;
        if let (Some(reach), Some(window)) = (&reach, &window) {
            if let Some(&g) = col_groups[j].iter().find(|&&g| reach.get(i, g)) {
                for &k in &groups[g].members {
                    best = best.min(*a.get(i, k) + *b.get(k, j));
                }
                best = best.min(*window.get(i, g) + Dist::finite(groups[g].max));
            }
        }
        for &k in &col_leftover[j] {
            best = best.min(*a.get(i, k) + *b.get(k, j));
        }
        out.insert((i, j), best);
    }
    Ok(out)
}
