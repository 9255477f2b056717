use apsp_core::bitmat::BitMatrix;
use apsp_core::dist::Dist;
use apsp_core::graph::{Color, Graph};
use apsp_core::matrix::Matrix;
use apsp_core::oracles::{bfs_dist, dijkstra_dist};

use crate::error::{Error, Result};

const UNREACHED: u32 = u32::MAX;

/// Shortest distances among paths that use at most `budget` red edges, by
/// searching the (budget+1)-layer directed graph in which blue edges stay in
/// a layer and red edges fall one layer down.
pub fn cred_apsp(g: &Graph, budget: usize) -> Result<Matrix<Dist>> {
    if g.is_directed() {
        return Err(Error::invalid("cred_apsp needs an undirected graph"));
    }
    if !g.all_colored() {
        return Err(Error::validation("every edge needs a color"));
    }
    if g.min_weight() < 0 {
        return Err(Error::validation("weights must be non-negative"));
    }
    let n = g.n();
    let layers = budget + 1;
    let mut layered = Graph::new(n * layers, true);
    for e in g.edges() {
        match e.color.expect("validated") {
            Color::Blue => {
                for i in 0..layers {
                    layered.add_edge(e.u * layers + i, e.v * layers + i, e.w1)?;
                    layered.add_edge(e.v * layers + i, e.u * layers + i, e.w1)?;
                }
            }
            Color::Red => {
                for i in 0..layers.saturating_sub(1) {
                    layered.add_edge(e.u * layers + i, e.v * layers + i + 1, e.w1)?;
                    layered.add_edge(e.v * layers + i, e.u * layers + i + 1, e.w1)?;
                }
            }
        }
    }
    let unweighted = g.is_unweighted();
    let mut out = Matrix::new(n, n, Dist::INF)?;
    for u in 0..n {
        let dist = if unweighted {
            bfs_dist(&layered, u * layers)
        } else {
            dijkstra_dist(&layered, u * layers, false)
        };
        for v in 0..n {
            let best = (0..layers).fold(Dist::INF, |acc, i| acc.min(dist[v * layers + i]));
            out.set(u, v, best);
        }
    }
    Ok(out)
}

/// Distances among paths with at most one red edge in an unweighted
/// undirected colored graph, by recursive squaring of the (red, blue)
/// adjacency pair: one squaring level combines `(R, B)` into
/// `(R + RB + BR, B + BB)` and distances are rebuilt from the halved graph
/// through the blue-first-edge parity rule, taking the better endpoint view.
pub fn one_red_apsp(g: &Graph) -> Result<Matrix<Dist>> {
    if g.is_directed() {
        return Err(Error::invalid("one_red_apsp needs an undirected graph"));
    }
    if !g.is_unweighted() {
        return Err(Error::invalid("one_red_apsp needs an unweighted graph"));
    }
    if !g.all_colored() {
        return Err(Error::validation("every edge needs a color"));
    }
    let n = g.n();
    let mut red = BitMatrix::new(n, n);
    let mut blue = BitMatrix::new(n, n);
    for e in g.edges() {
        match e.color.expect("validated") {
            Color::Red => {
                red.set(e.u, e.v);
                red.set(e.v, e.u);
            }
            Color::Blue => {
                blue.set(e.u, e.v);
                blue.set(e.v, e.u);
            }
        }
    }
    let guard = (n.max(2) as f64).log2().ceil() as usize + 4;
    let d = solve(&red, &blue, 0, guard)?;
    Ok(Matrix::from_fn(n, n, |u, v| {
        let x = d[u * n + v];
        if x == UNREACHED {
            Dist::INF
        } else {
            Dist::finite(x as u64)
        }
    }))
}

fn squared(red: &BitMatrix, blue: &BitMatrix) -> (BitMatrix, BitMatrix) {
    let mut r2 = red.mul(blue);
    r2.or_assign(&blue.mul(red));
    r2.or_assign(red);
    let mut b2 = blue.mul(blue);
    b2.or_assign(blue);
    (r2, b2)
}

fn solve(red: &BitMatrix, blue: &BitMatrix, depth: usize, guard: usize) -> Result<Vec<u32>> {
    let n = red.rows();
    if depth > guard {
        return Err(Error::Internal(format!(
            "colored squaring exceeded depth {guard} at n={n}"
        )));
    }
    let (r2, b2) = squared(red, blue);
    if r2 == *red && b2 == *blue {
        // Fixed point: any additional hop would already be an edge, so
        // distances are one or infinity.
        let mut d = vec![UNREACHED; n * n];
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    d[u * n + v] = 0;
                } else if red.get(u, v) || blue.get(u, v) {
                    d[u * n + v] = 1;
                }
            }
        }
        return Ok(d);
    }
    let d2 = solve(&r2, &b2, depth + 1, guard)?;

    let mut residue = [
        BitMatrix::new(n, n),
        BitMatrix::new(n, n),
        BitMatrix::new(n, n),
    ];
    for x in 0..n {
        for v in 0..n {
            let val = d2[x * n + v];
            if val != UNREACHED {
                residue[(val % 3) as usize].set(x, v);
            }
        }
    }
    // blue_step[u, v] = exists blue neighbor x of u with d2[x, v] in class j.
    let blue_step: Vec<BitMatrix> = residue.iter().map(|m| blue.mul(m)).collect();

    let mut upper = vec![UNREACHED; n * n];
    for u in 0..n {
        for v in 0..n {
            let half = d2[u * n + v];
            if half == UNREACHED || u == v {
                continue;
            }
            let j = ((half + 2) % 3) as usize;
            let odd = blue_step[j].get(u, v);
            upper[u * n + v] = 2 * half - u32::from(odd);
        }
    }
    let mut d = vec![UNREACHED; n * n];
    for u in 0..n {
        for v in 0..n {
            d[u * n + v] = if u == v {
                0
            } else if red.get(u, v) || blue.get(u, v) {
                1
            } else {
                upper[u * n + v].min(upper[v * n + u])
            };
        }
    }
    Ok(d)
}

/// Intermediate one-sided estimate of the recursion, exposed so its
/// contract (never below the true distance, equal when some optimal path
/// starts on a blue edge) can be tested directly.
pub fn one_red_upper_estimates(g: &Graph) -> Result<(Matrix<Dist>, Matrix<Dist>)> {
    let d = one_red_apsp(g)?;
    let n = g.n();
    let mut red = BitMatrix::new(n, n);
    let mut blue = BitMatrix::new(n, n);
    for e in g.edges() {
        match e.color.expect("validated") {
            Color::Red => {
                red.set(e.u, e.v);
                red.set(e.v, e.u);
            }
            Color::Blue => {
                blue.set(e.u, e.v);
                blue.set(e.v, e.u);
            }
        }
    }
    let guard = (n.max(2) as f64).log2().ceil() as usize + 4;
    let (r2, b2) = squared(&red, &blue);
    let d2 = if r2 == red && b2 == blue {
        let mut base = vec![UNREACHED; n * n];
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    base[u * n + v] = 0;
                } else if red.get(u, v) || blue.get(u, v) {
                    base[u * n + v] = 1;
                }
            }
        }
        base
    } else {
        solve(&r2, &b2, 1, guard)?
    };
    let mut residue = [
        BitMatrix::new(n, n),
        BitMatrix::new(n, n),
        BitMatrix::new(n, n),
    ];
    for x in 0..n {
        for v in 0..n {
            let val = d2[x * n + v];
            if val != UNREACHED {
                residue[(val % 3) as usize].set(x, v);
            }
        }
    }
    let blue_step: Vec<BitMatrix> = residue.iter().map(|m| blue.mul(m)).collect();
    let upper = Matrix::from_fn(n, n, |u, v| {
        let half = d2[u * n + v];
        if u == v {
            Dist::ZERO
        } else if half == UNREACHED {
            Dist::INF
        } else {
            let j = ((half + 2) % 3) as usize;
            let odd = blue_step[j].get(u, v);
            Dist::finite((2 * half - u32::from(odd)) as u64)
        }
    });
    Ok((upper, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::seidel::seidel_apsp;
    use apsp_core::oracles::budgeted_apsp;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn colored_graph(rng: &mut StdRng, n: usize, m: usize, red_prob: f64) -> Graph {
        let mut g = Graph::new(n, false);
        let mut added = 0;
        while added < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                let color = if rng.random::<f64>() < red_prob {
                    Color::Red
                } else {
                    Color::Blue
                };
                g.add_colored_edge(u, v, 1, color).unwrap();
                added += 1;
            }
        }
        g
    }

    #[test]
    fn uncolored_edges_are_rejected() {
        let mut g = Graph::new(3, false);
        g.add_colored_edge(0, 1, 1, Color::Red).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        assert!(cred_apsp(&g, 1).is_err());
        assert!(one_red_apsp(&g).is_err());
    }

    #[test]
    fn budget_boundary() {
        let mut g = Graph::new(2, false);
        g.add_colored_edge(0, 1, 1, Color::Red).unwrap();
        assert!(cred_apsp(&g, 0).unwrap().get(0, 1).is_inf());
        assert_eq!(*cred_apsp(&g, 1).unwrap().get(0, 1), Dist::finite(1));
    }

    #[test]
    fn one_red_plus_one_blue() {
        let mut g = Graph::new(3, false);
        g.add_colored_edge(0, 1, 1, Color::Red).unwrap();
        g.add_colored_edge(1, 2, 1, Color::Blue).unwrap();
        let d = cred_apsp(&g, 1).unwrap();
        assert_eq!(*d.get(0, 2), Dist::finite(2));
        let d = one_red_apsp(&g).unwrap();
        assert_eq!(*d.get(0, 2), Dist::finite(2));
    }

    #[test]
    fn matches_budgeted_oracle_and_monotone() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..6 {
            let g = colored_graph(&mut rng, 64, 150, 0.4);
            let mut prev: Option<Matrix<Dist>> = None;
            for c in 0..4 {
                let got = cred_apsp(&g, c).unwrap();
                let want = budgeted_apsp(&g, c).unwrap();
                assert_eq!(got, want, "budget {c}");
                if let Some(p) = &prev {
                    for u in 0..g.n() {
                        for v in 0..g.n() {
                            assert!(got.get(u, v) <= p.get(u, v));
                        }
                    }
                }
                prev = Some(got);
            }
        }
    }

    #[test]
    fn big_budget_equals_colorblind() {
        let mut rng = StdRng::seed_from_u64(11);
        let g = colored_graph(&mut rng, 24, 60, 0.5);
        let blind = {
            let mut h = Graph::new(24, false);
            for e in g.edges() {
                h.add_edge(e.u, e.v, 1).unwrap();
            }
            seidel_apsp(&h).unwrap()
        };
        assert_eq!(cred_apsp(&g, 23).unwrap(), blind);
    }

    #[test]
    fn all_blue_degenerates_to_seidel() {
        let mut rng = StdRng::seed_from_u64(3);
        let g = colored_graph(&mut rng, 40, 100, 0.0);
        let mut plain = Graph::new(40, false);
        for e in g.edges() {
            plain.add_edge(e.u, e.v, 1).unwrap();
        }
        assert_eq!(one_red_apsp(&g).unwrap(), seidel_apsp(&plain).unwrap());
    }

    #[test]
    fn one_red_equals_budget_one() {
        let mut rng = StdRng::seed_from_u64(23);
        for round in 0..5 {
            let g = colored_graph(&mut rng, 96, 250, 0.5);
            let got = one_red_apsp(&g).unwrap();
            let want = cred_apsp(&g, 1).unwrap();
            assert_eq!(got, want, "round {round}");
        }
    }

    #[test]
    fn upper_estimate_contract() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..20 {
            let g = colored_graph(&mut rng, 12, 22, 0.5);
            let (upper, exact) = one_red_upper_estimates(&g).unwrap();
            let oracle = budgeted_apsp(&g, 1).unwrap();
            assert_eq!(exact, oracle);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    assert!(upper.get(u, v) >= exact.get(u, v), "({u},{v})");
                    // When some optimal valid path leaves u on a blue edge,
                    // the u-side estimate must be tight.
                    if let Some(duv) = exact.get(u, v).value() {
                        if u != v && duv >= 2 {
                            let tight_expected = g.neighbors(u).iter().any(|&(x, e)| {
                                g.edge(e).color == Some(Color::Blue)
                                    && oracle.get(x, v).value() == Some(duv - 1)
                            });
                            if tight_expected {
                                assert_eq!(upper.get(u, v), exact.get(u, v), "({u},{v})");
                            }
                        }
                    }
                }
            }
        }
    }
}
