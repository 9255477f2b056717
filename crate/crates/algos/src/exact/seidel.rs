use apsp_core::bitmat::BitMatrix;
use apsp_core::dist::Dist;
use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;

use crate::error::{Error, Result};

const UNREACHED: u32 = u32::MAX;

/// Exact hop distances in an undirected unweighted graph by recursive
/// adjacency squaring. Components are solved independently; the recursion
/// bottoms out at diameter one and parities are decided by the mod-3
/// neighbor test.
pub fn seidel_apsp(g: &Graph) -> Result<Matrix<Dist>> {
    if g.is_directed() {
        return Err(Error::invalid("seidel_apsp needs an undirected graph"));
    }
    if !g.is_unweighted() {
        return Err(Error::invalid("seidel_apsp needs an unweighted graph"));
    }
    let n = g.n();
    let mut out = Matrix::new(n, n, Dist::INF)?;
    for comp in g.components() {
        let k = comp.len();
        let mut back = vec![usize::MAX; n];
        for (i, &v) in comp.iter().enumerate() {
            back[v] = i;
        }
        let mut adj = BitMatrix::new(k, k);
        for e in g.edges() {
            if back[e.u] != usize::MAX && back[e.v] != usize::MAX {
                adj.set(back[e.u], back[e.v]);
                adj.set(back[e.v], back[e.u]);
            }
        }
        let guard = (k.max(2) as f64).log2().ceil() as usize + 4;
        let local = solve(&adj, 0, guard)?;
        for (i, &u) in comp.iter().enumerate() {
            for (j, &v) in comp.iter().enumerate() {
                out.set(u, v, Dist::finite(local[i * k + j] as u64));
            }
        }
    }
    Ok(out)
}

/// Distances within one connected component, row-major n*n of u32.
fn solve(adj: &BitMatrix, depth: usize, guard: usize) -> Result<Vec<u32>> {
    let n = adj.rows();
    if depth > guard {
        return Err(Error::Internal(format!(
            "adjacency squaring exceeded depth {guard} at n={n}; squared graph not contracting"
        )));
    }
    if n == 1 {
        return Ok(vec![0]);
    }
    if adj.is_all_ones_off_diagonal() {
        let mut d = vec![1u32; n * n];
        for i in 0..n {
            d[i * n + i] = 0;
        }
        return Ok(d);
    }
    let mut squared = adj.mul(adj);
    squared.or_assign(adj);
    let d2 = solve(&squared, depth + 1, guard)?;

    // Parity: D[u,v] odd iff some neighbor x of v has d2[u,x] = d2[u,v] - 1,
    // decided through the residues of d2 mod 3.
    let mut residue = [
        BitMatrix::new(n, n),
        BitMatrix::new(n, n),
        BitMatrix::new(n, n),
    ];
    for u in 0..n {
        for x in 0..n {
            // x = u participates: it decides parity for pairs at distance 1.
            residue[(d2[u * n + x] % 3) as usize].set(u, x);
        }
    }
    let products: Vec<BitMatrix> = residue.iter().map(|b| b.mul(adj)).collect();
    let mut d = vec![UNREACHED; n * n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                d[u * n + v] = 0;
                continue;
            }
            let half = d2[u * n + v];
            let j = ((half + 2) % 3) as usize;
            let odd = products[j].get(u, v);
            d[u * n + v] = 2 * half - u32::from(odd);
        }
    }
    Ok(d)
}
