//! Executable reduction gadgets: each encoder turns a rectangular bounded
//! min-plus instance into a graph (or matrix pair) for some shortest-path
//! variant, stores its decode metadata, and a decoder reads the product back
//! out of the solved variant. Round-trip equality against the brute product
//! is the defining contract.

mod gadgets;
mod minwitness;
mod unique;

pub use gadgets::{
    encode_minplus_additive_lb, encode_minplus_as_2red, encode_minplus_as_aplsp01,
    encode_minplus_as_dag_aplp, encode_minplus_as_uapsp, encode_minplus_as_vertex_weighted,
};
pub use minwitness::{brute_minwitness_eq, encode_minplus_as_minwitness_eq, MinWitnessEncoding};
pub use unique::{
    unique_minplus_via_counting, CountingBackend, ModDirectedBackend, OracleModBackend,
    UniqueOptions, UniqueTelemetry,
};

use std::fmt::Write as _;

use apsp_core::dist::{Dist, SignedDist};
use apsp_core::graph::Graph;
use apsp_core::lexdist::LexDist;
use apsp_core::matrix::Matrix;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] apsp_core::Error),

    #[error(transparent)]
    Algos(#[from] apsp_algos::Error),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("probabilistic reduction did not reach confidence: {uncertain} uncertain cells after {rounds} rounds (seed {seed})")]
    ProbabilisticFailure {
        uncertain: usize,
        rounds: usize,
        seed: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rectangular min-plus instance with entries in [1, bound].
#[derive(Clone, Debug, PartialEq)]
pub struct MinPlusInstance {
    pub a: Matrix<Dist>,
    pub b: Matrix<Dist>,
    pub bound: u64,
}

impl MinPlusInstance {
    pub fn new(a: Matrix<Dist>, b: Matrix<Dist>, bound: u64) -> Result<MinPlusInstance> {
        if a.cols() != b.rows() {
            return Err(Error::Validation(format!(
                "inner dimensions disagree: {} vs {}",
                a.cols(),
                b.rows()
            )));
        }
        if bound < 1 {
            return Err(Error::Validation("entry bound must be at least 1".into()));
        }
        for (m, name) in [(&a, "left"), (&b, "right")] {
            for (i, j, d) in m.iter() {
                match d.value() {
                    Some(v) if v >= 1 && v <= bound => {}
                    _ => {
                        return Err(Error::Validation(format!(
                            "{name} entry ({i}, {j}) = {d} outside [1, {bound}]"
                        )))
                    }
                }
            }
        }
        Ok(MinPlusInstance { a, b, bound })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.a.rows(), self.a.cols(), self.b.cols())
    }

    /// Reference product by direct enumeration; the target every decoder is
    /// checked against.
    pub fn brute_product(&self) -> Matrix<Dist> {
        let (n1, n2, n3) = self.dims();
        Matrix::from_fn(n1, n3, |i, j| {
            let mut best = Dist::INF;
            for k in 0..n2 {
                best = best.min(*self.a.get(i, k) + *self.b.get(k, j));
            }
            best
        })
    }

    /// Text form: `minplus <n1> <n2> <n3> <bound>` then the two matrices.
    pub fn to_text(&self) -> String {
        let (n1, n2, n3) = self.dims();
        let mut out = format!("minplus {n1} {n2} {n3} {}\n", self.bound);
        out.push_str(&self.a.to_text());
        out.push_str(&self.b.to_text());
        out
    }

    pub fn parse_text(input: &str) -> Result<MinPlusInstance> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Validation("empty instance".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 5 || toks[0] != "minplus" {
            return Err(Error::Validation(
                "expected `minplus <n1> <n2> <n3> <bound>`".into(),
            ));
        }
        let bound: u64 = toks[4]
            .parse()
            .map_err(|_| Error::Validation("bad bound".into()))?;
        let rest = input.split_once('\n').map(|(_, r)| r).unwrap_or("");
        let blocks: Vec<Matrix<Dist>> = Matrix::parse_blocks(rest).map_err(Error::Core)?;
        if blocks.len() != 2 {
            return Err(Error::Validation("expected two matrix blocks".into()));
        }
        let mut it = blocks.into_iter();
        MinPlusInstance::new(it.next().unwrap(), it.next().unwrap(), bound)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    /// Directed unweighted APSP; product = distance - offset.
    Uapsp,
    /// Longest paths in a DAG; product = offset - longest.
    DagAplp,
    /// Undirected colored, at most `budget` red edges.
    TwoRed,
    /// Lightest shortest paths over {0,1} weights; product = d2 - offset at d1 = 2.
    Aplsp01,
    /// Vertex-weighted undirected APSP.
    VertexWeighted,
    /// Additive-error APSP; product = nearest multiple of `scale` above offset.
    AdditiveLb,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Uapsp => "uapsp",
            GadgetKind::DagAplp => "dag-aplp",
            GadgetKind::TwoRed => "2red",
            GadgetKind::Aplsp01 => "aplsp01",
            GadgetKind::VertexWeighted => "vweight",
            GadgetKind::AdditiveLb => "additive",
        }
    }

    pub fn parse(name: &str) -> Result<GadgetKind> {
        Ok(match name {
            "uapsp" => GadgetKind::Uapsp,
            "dag-aplp" => GadgetKind::DagAplp,
            "2red" => GadgetKind::TwoRed,
            "aplsp01" => GadgetKind::Aplsp01,
            "vweight" => GadgetKind::VertexWeighted,
            "additive" => GadgetKind::AdditiveLb,
            other => return Err(Error::Validation(format!("unknown gadget kind `{other}`"))),
        })
    }
}

/// Stored decode metadata: the solver-agnostic map from solved variant
/// output back to the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeMap {
    pub kind: GadgetKind,
    pub offset: i64,
    pub scale: i64,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub spines: Vec<Vec<usize>>,
}

impl DecodeMap {
    fn affine(&self, raw: i64) -> Result<Dist> {
        match self.kind {
            GadgetKind::DagAplp => {
                let v = self.offset - raw;
                if v < 0 {
                    return Err(Error::Decode(format!(
                        "raw value {raw} above decodable range"
                    )));
                }
                Ok(Dist::finite(v as u64))
            }
            GadgetKind::AdditiveLb => {
                let shifted = raw - self.offset;
                if shifted < -self.scale / 2 {
                    return Err(Error::Decode(format!("raw value {raw} below offset")));
                }
                let v = (shifted + self.scale / 2).div_euclid(self.scale);
                Ok(Dist::finite(v as u64))
            }
            _ => {
                let shifted = raw - self.offset;
                if shifted < 0 || shifted % self.scale != 0 {
                    return Err(Error::Decode(format!(
                        "raw value {raw} does not decode over offset {} scale {}",
                        self.offset, self.scale
                    )));
                }
                Ok(Dist::finite((shifted / self.scale) as u64))
            }
        }
    }

    /// Decode from a distance matrix over the gadget graph.
    pub fn decode_dist(&self, solved: &Matrix<Dist>) -> Result<Matrix<Dist>> {
        self.decode_with(|i, j| solved.get(i, j).value().map(|v| v as i64))
    }

    pub fn decode_signed(&self, solved: &Matrix<SignedDist>) -> Result<Matrix<Dist>> {
        self.decode_with(|i, j| solved.get(i, j).value())
    }

    /// Decode from a longest-path matrix (`NO_PATH` treated as no value).
    pub fn decode_longest(&self, solved: &Matrix<i64>) -> Result<Matrix<Dist>> {
        self.decode_with(|i, j| {
            let v = *solved.get(i, j);
            (v != apsp_core::oracles::NO_PATH).then_some(v)
        })
    }

    /// Decode from a lexicographic matrix: the primary part must equal the
    /// fixed hop count, the secondary part carries the product.
    pub fn decode_lex(&self, solved: &Matrix<LexDist>) -> Result<Matrix<Dist>> {
        self.decode_with(|i, j| {
            let x = *solved.get(i, j);
            match (x.d1.value(), x.d2.value()) {
                (Some(2), Some(d2)) => Some(d2 as i64),
                _ => None,
            }
        })
    }

    fn decode_with(&self, raw: impl Fn(usize, usize) -> Option<i64>) -> Result<Matrix<Dist>> {
        let mut out =
            Matrix::new(self.sources.len(), self.sinks.len(), Dist::INF).map_err(Error::Core)?;
        for (i, &src) in self.sources.iter().enumerate() {
            for (j, &snk) in self.sinks.iter().enumerate() {
                if let Some(v) = raw(src, snk) {
                    out.set(i, j, self.affine(v)?);
                }
            }
        }
        Ok(out)
    }

    /// Line-oriented sidecar text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "decode {}", self.kind.name());
        let _ = writeln!(out, "offset {}", self.offset);
        let _ = writeln!(out, "scale {}", self.scale);
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(out, "sources {}", join(&self.sources));
        let _ = writeln!(out, "sinks {}", join(&self.sinks));
        for (p, spine) in self.spines.iter().enumerate() {
            let _ = writeln!(out, "spine {p} {}", join(spine));
        }
        out
    }

    pub fn parse_text(input: &str) -> Result<DecodeMap> {
        let mut kind = None;
        let mut offset = None;
        let mut scale = None;
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        let mut spines: Vec<(usize, Vec<usize>)> = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Validation(format!("line {}: {msg}", lineno + 1));
            let nums = |toks: &[&str]| -> Result<Vec<usize>> {
                toks.iter()
                    .map(|t| t.parse().map_err(|_| bad("bad index")))
                    .collect()
            };
            match toks[0] {
                "decode" if toks.len() == 2 => kind = Some(GadgetKind::parse(toks[1])?),
                "offset" if toks.len() == 2 => {
                    offset = Some(toks[1].parse().map_err(|_| bad("bad offset"))?)
                }
                "scale" if toks.len() == 2 => {
                    scale = Some(toks[1].parse().map_err(|_| bad("bad scale"))?)
                }
                "sources" => sources = nums(&toks[1..])?,
                "sinks" => sinks = nums(&toks[1..])?,
                "spine" if toks.len() >= 2 => {
                    let p: usize = toks[1].parse().map_err(|_| bad("bad spine index"))?;
                    spines.push((p, nums(&toks[2..])?));
                }
                _ => return Err(bad("unrecognized decode-map line")),
            }
        }
        spines.sort_by_key(|&(p, _)| p);
        Ok(DecodeMap {
            kind: kind.ok_or_else(|| Error::Validation("missing `decode` line".into()))?,
            offset: offset.ok_or_else(|| Error::Validation("missing offset".into()))?,
            scale: scale.ok_or_else(|| Error::Validation("missing scale".into()))?,
            sources,
            sinks,
            spines: spines.into_iter().map(|(_, s)| s).collect(),
        })
    }
}

/// A gadget graph together with its decode metadata.
#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub map: DecodeMap,
}

#[cfg(test)]
mod tests {
    use super::*;
    use apsp_core::matrix::dist_matrix;

    #[test]
    fn instance_validation() {
        let a = dist_matrix(&[&[1, 2]]);
        let b = dist_matrix(&[&[2], &[1]]);
        assert!(MinPlusInstance::new(a.clone(), b.clone(), 2).is_ok());
        assert!(MinPlusInstance::new(a.clone(), b.clone(), 1).is_err());
        let zero = dist_matrix(&[&[0, 2]]);
        assert!(MinPlusInstance::new(zero, b, 2).is_err());
    }

    #[test]
    fn instance_text_round_trip() {
        let inst = MinPlusInstance::new(
            dist_matrix(&[&[1, 2], &[2, 1]]),
            dist_matrix(&[&[2, 1], &[1, 2]]),
            2,
        )
        .unwrap();
        let back = MinPlusInstance::parse_text(&inst.to_text()).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn decode_map_text_round_trip() {
        let map = DecodeMap {
            kind: GadgetKind::Uapsp,
            offset: 2,
            scale: 1,
            sources: vec![0, 1],
            sinks: vec![9, 10],
            spines: vec![vec![2, 3, 4], vec![5, 6, 7]],
        };
        let back = DecodeMap::parse_text(&map.to_text()).unwrap();
        assert_eq!(map, back);
    }
}
