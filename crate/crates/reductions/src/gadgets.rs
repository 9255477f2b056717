use apsp_core::dist::Dist;
use apsp_core::graph::{Color, Graph};

use apsp_algos::approx::ErrorProfile;

use crate::{DecodeMap, Error, GadgetGraph, GadgetKind, MinPlusInstance, Result};

/// Vertex layout shared by the path-spine constructions: the sources first,
/// then per column a spine of `2 * bound + 1` vertices running from the
/// x-side tip through the midpoint to the y-side tip, then the sinks.
struct SpineLayout {
    n1: usize,
    n2: usize,
    n3: usize,
    bound: usize,
    spine_len: usize,
}

impl SpineLayout {
    fn new(inst: &MinPlusInstance) -> SpineLayout {
        let (n1, n2, n3) = inst.dims();
        let bound = inst.bound as usize;
        SpineLayout {
            n1,
            n2,
            n3,
            bound,
            spine_len: 2 * bound + 1,
        }
    }

    fn total(&self) -> usize {
        self.n1 + self.n3 + self.n2 * self.spine_len
    }

    /// x-side vertex at offset `t` from the midpoint of column `p`
    /// (t = 0 is the midpoint).
    fn x(&self, p: usize, t: usize) -> usize {
        debug_assert!(t <= self.bound);
        self.n1 + p * self.spine_len + (self.bound - t)
    }

    /// y-side vertex at offset `t` from the midpoint (t >= 1).
    fn y(&self, p: usize, t: usize) -> usize {
        debug_assert!((1..=self.bound).contains(&t));
        self.n1 + p * self.spine_len + self.bound + t
    }

    fn source(&self, i: usize) -> usize {
        i
    }

    fn sink(&self, j: usize) -> usize {
        self.n1 + self.n2 * self.spine_len + j
    }

    fn spine_ids(&self, p: usize) -> Vec<usize> {
        let start = self.n1 + p * self.spine_len;
        (start..start + self.spine_len).collect()
    }
}

/// Directed unweighted encoding: one spine per inner index, an edge from
/// each source into the x-side at depth A[i,p], an edge out of the y-side at
/// depth B[p,j] into each sink. Every source-to-sink path walks exactly one
/// spine, so its length is 2 + A[i,p] + B[p,j] and the distance decodes the
/// product with offset two.
pub fn encode_minplus_as_uapsp(inst: &MinPlusInstance) -> Result<GadgetGraph> {
    let layout = SpineLayout::new(inst);
    let mut g = Graph::new(layout.total(), true);
    build_spines_directed(&mut g, &layout)?;
    for i in 0..layout.n1 {
        for p in 0..layout.n2 {
            let t = inst.a.get(i, p).expect_finite("validated entry") as usize;
            g.add_edge(layout.source(i), layout.x(p, t), 1)?;
        }
    }
    for j in 0..layout.n3 {
        for p in 0..layout.n2 {
            let t = inst.b.get(p, j).expect_finite("validated entry") as usize;
            g.add_edge(layout.y(p, t), layout.sink(j), 1)?;
        }
    }
    Ok(GadgetGraph {
        graph: g,
        map: DecodeMap {
            kind: GadgetKind::Uapsp,
            offset: 2,
            scale: 1,
            sources: (0..layout.n1).map(|i| layout.source(i)).collect(),
            sinks: (0..layout.n3).map(|j| layout.sink(j)).collect(),
            spines: (0..layout.n2).map(|p| layout.spine_ids(p)).collect(),
        },
    })
}

fn build_spines_directed(g: &mut Graph, layout: &SpineLayout) -> Result<()> {
    for p in 0..layout.n2 {
        for t in (1..=layout.bound).rev() {
            g.add_edge(layout.x(p, t), layout.x(p, t - 1), 1)?;
        }
        if layout.bound >= 1 {
            g.add_edge(layout.x(p, 0), layout.y(p, 1), 1)?;
        }
        for t in 1..layout.bound {
            g.add_edge(layout.y(p, t), layout.y(p, t + 1), 1)?;
        }
    }
    Ok(())
}

/// Longest-path encoding: complement both matrices against bound + 1 and
/// reuse the directed spine construction (a DAG); the longest source-to-sink
/// path realizes the complemented maximum, so the product decodes as
/// `2 * (bound + 1) + 2 - longest`.
pub fn encode_minplus_as_dag_aplp(inst: &MinPlusInstance) -> Result<GadgetGraph> {
    let flip = |m: &apsp_core::Matrix<Dist>| {
        m.map(|d| Dist::finite(inst.bound + 1 - d.expect_finite("validated entry")))
    };
    let complemented = MinPlusInstance::new(flip(&inst.a), flip(&inst.b), inst.bound)?;
    let built = encode_minplus_as_uapsp(&complemented)?;
    Ok(GadgetGraph {
        graph: built.graph,
        map: DecodeMap {
            kind: GadgetKind::DagAplp,
            offset: 2 * (inst.bound as i64 + 1) + 2,
            scale: 1,
            ..built.map
        },
    })
}

/// Undirected colored encoding: blue spines, red attachment edges. A path
/// between a source and a sink under a two-red-edge budget must cross one
/// spine, giving 2 + A + B again. Budgets above two are lifted by hanging a
/// red pendant path of length budget - 2 off every source and querying from
/// its tip.
pub fn encode_minplus_as_2red(inst: &MinPlusInstance, budget: usize) -> Result<GadgetGraph> {
    if budget < 2 {
        return Err(Error::Validation("red budget must be at least 2".into()));
    }
    let layout = SpineLayout::new(inst);
    let pendant = budget - 2;
    let mut g = Graph::new(layout.total() + pendant * layout.n1, false);
    let pendant_id = |i: usize, step: usize| layout.total() + i * pendant + step;

    for p in 0..layout.n2 {
        for t in (1..=layout.bound).rev() {
            g.add_colored_edge(layout.x(p, t), layout.x(p, t - 1), 1, Color::Blue)?;
        }
        if layout.bound >= 1 {
            g.add_colored_edge(layout.x(p, 0), layout.y(p, 1), 1, Color::Blue)?;
        }
        for t in 1..layout.bound {
            g.add_colored_edge(layout.y(p, t), layout.y(p, t + 1), 1, Color::Blue)?;
        }
    }
    for i in 0..layout.n1 {
        for p in 0..layout.n2 {
            let t = inst.a.get(i, p).expect_finite("validated entry") as usize;
            g.add_colored_edge(layout.source(i), layout.x(p, t), 1, Color::Red)?;
        }
    }
    for j in 0..layout.n3 {
        for p in 0..layout.n2 {
            let t = inst.b.get(p, j).expect_finite("validated entry") as usize;
            g.add_colored_edge(layout.y(p, t), layout.sink(j), 1, Color::Red)?;
        }
    }
    let sources: Vec<usize> = (0..layout.n1)
        .map(|i| {
            if pendant == 0 {
                return layout.source(i);
            }
            let mut prev = layout.source(i);
            for step in 0..pendant {
                let v = pendant_id(i, step);
                g.add_colored_edge(prev, v, 1, Color::Red)
                    .expect("fresh vertex");
                prev = v;
            }
            prev
        })
        .collect();
    Ok(GadgetGraph {
        graph: g,
        map: DecodeMap {
            kind: GadgetKind::TwoRed,
            offset: budget as i64,
            scale: 1,
            sources,
            sinks: (0..layout.n3).map(|j| layout.sink(j)).collect(),
            spines: (0..layout.n2).map(|p| layout.spine_ids(p)).collect(),
        },
    })
}

/// Lightest-shortest-path encoding over {0, 1} weights: the two-red geometry
/// with red edges at weight one and blue spine edges at weight zero. Every
/// source-sink primary distance is exactly two, and the lightest such path
/// minimizes its edge count 2 + A + B.
pub fn encode_minplus_as_aplsp01(inst: &MinPlusInstance) -> Result<GadgetGraph> {
    let colored = encode_minplus_as_2red(inst, 2)?;
    let mut g = Graph::new(colored.graph.n(), false);
    for e in colored.graph.edges() {
        let w = match e.color.expect("two-red edges are colored") {
            Color::Red => 1,
            Color::Blue => 0,
        };
        g.add_edge(e.u, e.v, w)?;
    }
    Ok(GadgetGraph {
        graph: g,
        map: DecodeMap {
            kind: GadgetKind::Aplsp01,
            offset: 2,
            scale: 1,
            ..colored.map
        },
    })
}

/// Vertex-weighted encoding: the same geometry, uncolored and unweighted on
/// edges, with spine vertices at weight one and source/sink vertices heavy
/// enough (2 * bound) that no optimal path detours through another terminal.
/// Path cost, endpoints included, is 4 * bound + 1 + A + B.
pub fn encode_minplus_as_vertex_weighted(inst: &MinPlusInstance) -> Result<GadgetGraph> {
    let colored = encode_minplus_as_2red(inst, 2)?;
    let layout = SpineLayout::new(inst);
    let mut g = Graph::new(colored.graph.n(), false);
    for e in colored.graph.edges() {
        g.add_edge(e.u, e.v, 1)?;
    }
    let heavy = 2 * inst.bound as i64;
    let mut weights = vec![1i64; g.n()];
    for i in 0..layout.n1 {
        weights[layout.source(i)] = heavy;
    }
    for j in 0..layout.n3 {
        weights[layout.sink(j)] = heavy;
    }
    g.set_vertex_weights(weights)?;
    Ok(GadgetGraph {
        graph: g,
        map: DecodeMap {
            kind: GadgetKind::VertexWeighted,
            offset: 4 * inst.bound as i64 + 1,
            scale: 1,
            ..colored.map
        },
    })
}

/// Additive-error encoding: spine steps are stretched to paths of length
/// `6 * f(ell)` and the midpoint carries a path of length `ell - 2`, so that
/// the source-sink distance is `ell + 6 f(ell) * (A + B)` and any estimate
/// within the profile's budget pins the product to the nearest multiple.
pub fn encode_minplus_additive_lb(
    inst: &MinPlusInstance,
    profile: &ErrorProfile,
    ell: u64,
) -> Result<GadgetGraph> {
    let f = profile.eval(ell as f64);
    let step_unit = f.round().max(0.0) as u64;
    if step_unit < 1 {
        return Err(Error::Validation(format!(
            "error budget {f:.3} at length {ell} is too small to stretch"
        )));
    }
    if ell < 3 {
        return Err(Error::Validation(
            "length parameter must be at least 3".into(),
        ));
    }
    // Entries up to ell / (6 f) keep every gadget distance within [ell, 3*ell],
    // so an estimate within the 2 f(ell) window still rounds to the product.
    let limit = (ell as f64) / (6.0 * f);
    if (inst.bound as f64) > limit {
        return Err(Error::Validation(format!(
            "entries up to {} exceed the stretch limit {limit:.3} for length {ell}",
            inst.bound
        )));
    }
    let step = 6 * step_unit;
    let mid = ell - 2;

    let (n1, n2, n3) = inst.dims();
    let bound = inst.bound as usize;
    // Anchor vertices per column: x_bound .. x_0, y_0 .. y_bound.
    let mut g_edges: Vec<(usize, usize)> = Vec::new();
    let mut next_id = n1 + n3 + n2 * (2 * bound + 2);
    let anchor_x = |p: usize, t: usize| n1 + p * (2 * bound + 2) + (bound - t);
    let anchor_y = |p: usize, t: usize| n1 + p * (2 * bound + 2) + bound + 1 + t;
    let sink = |j: usize| n1 + n2 * (2 * bound + 2) + j;

    let mut chain = |edges: &mut Vec<(usize, usize)>, from: usize, to: usize, len: u64| {
        debug_assert!(len >= 1);
        let mut prev = from;
        for _ in 0..len - 1 {
            let v = next_id;
            next_id += 1;
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, to));
    };
    for p in 0..n2 {
        for t in (1..=bound).rev() {
            chain(&mut g_edges, anchor_x(p, t), anchor_x(p, t - 1), step);
        }
        chain(&mut g_edges, anchor_x(p, 0), anchor_y(p, 0), mid);
        for t in 0..bound {
            chain(&mut g_edges, anchor_y(p, t), anchor_y(p, t + 1), step);
        }
    }
    for i in 0..n1 {
        for p in 0..n2 {
            let t = inst.a.get(i, p).expect_finite("validated entry") as usize;
            g_edges.push((i, anchor_x(p, t)));
        }
    }
    for j in 0..n3 {
        for p in 0..n2 {
            let t = inst.b.get(p, j).expect_finite("validated entry") as usize;
            g_edges.push((anchor_y(p, t), sink(j)));
        }
    }
    let mut g = Graph::new(next_id, true);
    for (u, v) in g_edges {
        g.add_edge(u, v, 1)?;
    }
    Ok(GadgetGraph {
        graph: g,
        map: DecodeMap {
            kind: GadgetKind::AdditiveLb,
            offset: ell as i64,
            scale: step as i64,
            sources: (0..n1).collect(),
            sinks: (0..n3).map(sink).collect(),
            spines: (0..n2)
                .map(|p| (anchor_x(p, bound)..=anchor_y(p, bound)).collect())
                .collect(),
        },
    })
}
