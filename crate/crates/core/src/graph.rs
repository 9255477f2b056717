use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub w1: i64,
    pub w2: Option<i64>,
    pub color: Option<Color>,
}

/// Directed or undirected weighted graph with optional edge colors, dual
/// weights and vertex weights. Undirected graphs store each edge once; the
/// adjacency index carries both directions.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<EdgeRecord>,
    vertex_weights: Option<Vec<i64>>,
    adj: Vec<Vec<(usize, usize)>>,
    radj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Graph {
        Graph {
            n,
            directed,
            edges: Vec::new(),
            vertex_weights: None,
            adj: vec![Vec::new(); n],
            radj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &EdgeRecord {
        &self.edges[id]
    }

    pub fn vertex_weights(&self) -> Option<&[i64]> {
        self.vertex_weights.as_deref()
    }

    pub fn set_vertex_weights(&mut self, w: Vec<i64>) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::validation(format!(
                "expected {} vertex weights, got {}",
                self.n,
                w.len()
            )));
        }
        self.vertex_weights = Some(w);
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w1: i64) -> Result<usize> {
        self.add_edge_full(EdgeRecord {
            u,
            v,
            w1,
            w2: None,
            color: None,
        })
    }

    pub fn add_colored_edge(&mut self, u: usize, v: usize, w1: i64, color: Color) -> Result<usize> {
        self.add_edge_full(EdgeRecord {
            u,
            v,
            w1,
            w2: None,
            color: Some(color),
        })
    }

    pub fn add_dual_edge(&mut self, u: usize, v: usize, w1: i64, w2: i64) -> Result<usize> {
        self.add_edge_full(EdgeRecord {
            u,
            v,
            w1,
            w2: Some(w2),
            color: None,
        })
    }

    pub fn add_edge_full(&mut self, e: EdgeRecord) -> Result<usize> {
        if e.u >= self.n || e.v >= self.n {
            return Err(Error::validation(format!(
                "edge ({}, {}) out of range for n={}",
                e.u, e.v, self.n
            )));
        }
        if e.u == e.v {
            return Err(Error::validation(format!("self-loop at vertex {}", e.u)));
        }
        let id = self.edges.len();
        self.adj[e.u].push((e.v, id));
        self.radj[e.v].push((e.u, id));
        if !self.directed {
            self.adj[e.v].push((e.u, id));
            self.radj[e.u].push((e.v, id));
        }
        self.edges.push(e);
        Ok(id)
    }

    /// Out-neighbors as (vertex, edge id). For undirected graphs this lists
    /// both endpoints' views of each edge.
    pub fn neighbors(&self, u: usize) -> &[(usize, usize)] {
        &self.adj[u]
    }

    /// In-neighbors as (vertex, edge id).
    pub fn in_neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.radj[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn min_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.w1).min().unwrap_or(0)
    }

    pub fn max_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.w1).max().unwrap_or(0)
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w1 == 1)
    }

    pub fn all_colored(&self) -> bool {
        self.edges.iter().all(|e| e.color.is_some())
    }

    /// Validates that every primary weight lies in `[lo, hi]`.
    pub fn validate_weight_range(&self, lo: i64, hi: i64) -> Result<()> {
        for (id, e) in self.edges.iter().enumerate() {
            if e.w1 < lo || e.w1 > hi {
                return Err(Error::validation(format!(
                    "edge {id} weight {} outside declared range [{lo}, {hi}]",
                    e.w1
                )));
            }
        }
        Ok(())
    }

    /// Directed view of an undirected graph (each edge in both directions);
    /// directed graphs are returned unchanged.
    pub fn to_directed(&self) -> Graph {
        if self.directed {
            return self.clone();
        }
        let mut g = Graph::new(self.n, true);
        g.vertex_weights = self.vertex_weights.clone();
        for e in &self.edges {
            g.add_edge_full(*e).expect("valid edge");
            g.add_edge_full(EdgeRecord {
                u: e.v,
                v: e.u,
                ..*e
            })
            .expect("valid edge");
        }
        g
    }

    /// Connected components of the underlying undirected structure.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(v, _) in self.adj[u].iter().chain(self.radj[u].iter()) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Text format:
    /// `graph <directed|undirected> <n> <m> [colors] [dual] [vweights]`,
    /// an optional `vw w0 .. w_{n-1}` line, then `m` lines
    /// `u v w1 [w2] [red|blue]`. `#` starts a comment, vertices are 0-indexed.
    pub fn to_text(&self) -> String {
        let has_colors = self.edges.iter().any(|e| e.color.is_some());
        let has_dual = self.edges.iter().any(|e| e.w2.is_some());
        let mut out = String::new();
        let _ = write!(
            out,
            "graph {} {} {}",
            if self.directed {
                "directed"
            } else {
                "undirected"
            },
            self.n,
            self.edges.len()
        );
        if has_colors {
            out.push_str(" colors");
        }
        if has_dual {
            out.push_str(" dual");
        }
        if self.vertex_weights.is_some() {
            out.push_str(" vweights");
        }
        out.push('\n');
        if let Some(vw) = &self.vertex_weights {
            let toks: Vec<String> = vw.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(out, "vw {}", toks.join(" "));
        }
        for e in &self.edges {
            let _ = write!(out, "{} {} {}", e.u, e.v, e.w1);
            if has_dual {
                let _ = write!(out, " {}", e.w2.unwrap_or(1));
            }
            if has_colors {
                let tok = match e.color {
                    Some(Color::Red) => "red",
                    Some(Color::Blue) => "blue",
                    None => "blue",
                };
                let _ = write!(out, " {tok}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(input: &str) -> Result<Graph> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lineno, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() < 4 || toks[0] != "graph" {
            return Err(Error::Parse {
                line: lineno,
                msg: "expected `graph <directed|undirected> <n> <m> [colors] [dual] [vweights]`"
                    .into(),
            });
        }
        let directed = match toks[1] {
            "directed" => true,
            "undirected" => false,
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("bad direction token `{other}`"),
                })
            }
        };
        let n: usize = toks[2].parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: "bad vertex count".into(),
        })?;
        let m: usize = toks[3].parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: "bad edge count".into(),
        })?;
        let mut has_colors = false;
        let mut has_dual = false;
        let mut has_vweights = false;
        for tok in &toks[4..] {
            match *tok {
                "colors" => has_colors = true,
                "dual" => has_dual = true,
                "vweights" => has_vweights = true,
                other => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("unknown header flag `{other}`"),
                    })
                }
            }
        }
        let mut g = Graph::new(n, directed);
        if has_vweights {
            let (lineno, line) = lines.next().ok_or(Error::Parse {
                line: lineno,
                msg: "missing vertex-weight line".into(),
            })?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.first() != Some(&"vw") || toks.len() != n + 1 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `vw` plus {n} weights"),
                });
            }
            let mut vw = Vec::with_capacity(n);
            for tok in &toks[1..] {
                vw.push(tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex weight `{tok}`"),
                })?);
            }
            g.set_vertex_weights(vw)?;
        }
        for _ in 0..m {
            let (lineno, line) = lines.next().ok_or(Error::Parse {
                line: lineno,
                msg: "unexpected end of input inside edge list".into(),
            })?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            let expect = 3 + usize::from(has_dual) + usize::from(has_colors);
            if toks.len() != expect {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {expect} edge tokens, got {}", toks.len()),
                });
            }
            let parse_num = |tok: &str, what: &str| -> Result<i64> {
                tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad {what} `{tok}`"),
                })
            };
            let u = parse_num(toks[0], "vertex")? as usize;
            let v = parse_num(toks[1], "vertex")? as usize;
            let w1 = parse_num(toks[2], "weight")?;
            let mut idx = 3;
            let w2 = if has_dual {
                idx += 1;
                Some(parse_num(toks[3], "secondary weight")?)
            } else {
                None
            };
            let color = if has_colors {
                Some(match toks[idx] {
                    "red" => Color::Red,
                    "blue" => Color::Blue,
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("bad color `{other}`"),
                        })
                    }
                })
            } else {
                None
            };
            g.add_edge_full(EdgeRecord {
                u,
                v,
                w1,
                w2,
                color,
            })
            .map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Graph> {
        Graph::parse_text(&std::fs::read_to_string(path)?)
    }
}
