use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use apsp_algos::approx::{approx_apsp_with, ApproxOptions, ErrorProfile};
use apsp_algos::counting::{
    betweenness, count_approx, count_capped_directed, count_exact, count_mod_directed,
    count_undirected_seidel, BCValue, BetweennessMode, CountMatrix, SeidelCountMode,
};
use apsp_algos::exact::{
    cred_apsp, dag_aplp, one_red_apsp, seidel_apsp, undirected_small_weight_apsp, zwick_apsp,
};
use apsp_algos::lex2::{
    aplsp, apslp, lex2_directed, lex2_gamma, lex2_undirected_positive, Lex2Options,
};
use apsp_core::bounds::CostModel;
use apsp_core::dist::SignedDist;
use apsp_core::engines::ProductEngine;
use apsp_core::graph::Graph;
use apsp_core::lexdist::LexDist;
use apsp_core::matrix::Matrix;
use apsp_core::oracles;
use apsp_reductions::{
    encode_minplus_additive_lb, encode_minplus_as_2red, encode_minplus_as_aplsp01,
    encode_minplus_as_dag_aplp, encode_minplus_as_uapsp, encode_minplus_as_vertex_weighted,
    unique_minplus_via_counting, DecodeMap, GadgetGraph, GadgetKind, MinPlusInstance,
    ModDirectedBackend, OracleModBackend, UniqueOptions,
};

use crate::bench;
use crate::report::{emit, RunReport};

#[derive(Parser)]
#[command(name = "apsp", version, about = "Shortest-path algebra toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for parallel passes; 1 gives identical results to any k.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Emit a structured JSON result document on stdout.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Args)]
pub struct CommonIo {
    /// Input file.
    input: PathBuf,

    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed for the randomized passes.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Product engine: brute, blocked, scaled or auto.
    #[arg(long, default_value = "blocked")]
    engine: String,
}

#[derive(Subcommand)]
pub enum Command {
    /// Exact all-pairs shortest distances.
    Apsp {
        #[command(flatten)]
        io: CommonIo,
        /// seidel, zwick, undirected, aplp or oracle.
        #[arg(long, default_value = "zwick")]
        algo: String,
        /// Crossover hop count for the staged solver.
        #[arg(long)]
        crossover: Option<u64>,
    },
    /// Additive-error approximate distances.
    Approx {
        #[command(flatten)]
        io: CommonIo,
        /// Exponent of the error budget D^p.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Lexicographic two-weight distances.
    Lex2 {
        #[command(flatten)]
        io: CommonIo,
        /// directed, undirected, gamma, aplsp or apslp.
        #[arg(long, default_value = "directed")]
        algo: String,
    },
    /// Shortest-path counting.
    Count {
        #[command(flatten)]
        io: CommonIo,
        /// exact, capped, mod or approx.
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Cap for capped counting.
        #[arg(long)]
        cap: Option<u64>,
        /// Modulus for modular counting.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Approximation parameter U for (1+1/U) counting.
        #[arg(long)]
        approx: Option<u64>,
    },
    /// Betweenness centrality of one vertex.
    Bc {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long)]
        vertex: usize,
        /// Approximate with factor (1+1/U) instead of exact rationals.
        #[arg(long)]
        approx: Option<u64>,
        /// Halve the ordered-pair sum for undirected unordered reporting.
        #[arg(long)]
        halve: bool,
    },
    /// Budgeted-red-edge shortest distances.
    Cred {
        #[command(flatten)]
        io: CommonIo,
        /// Red edge budget.
        #[arg(long, default_value_t = 1)]
        budget: usize,
        /// layered (default) or onered (budget one via squaring).
        #[arg(long, default_value = "layered")]
        algo: String,
    },
    /// Encode a min-plus instance as a gadget graph plus decode map.
    Reduce {
        /// Instance file in the `minplus` text format.
        input: PathBuf,
        /// uapsp, dag-aplp, 2red, aplsp01, vweight or additive.
        #[arg(long)]
        gadget: String,
        #[arg(long)]
        out: PathBuf,
        /// Decode-map sidecar path (defaults to `<out>.decode`).
        #[arg(long)]
        map: Option<PathBuf>,
        /// Red budget for the 2red gadget.
        #[arg(long, default_value_t = 2)]
        budget: usize,
        /// Error exponent for the additive gadget.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Length parameter for the additive gadget.
        #[arg(long, default_value_t = 36)]
        ell: u64,
    },
    /// Decode a solved gadget matrix back into the min-plus product.
    Decode {
        /// Solved matrix file.
        input: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate instances.
    Gen {
        /// random-digraph, random-undirected, colored, dual-weight,
        /// bigcount-layered or minplus.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        wlo: i64,
        #[arg(long, default_value_t = 1)]
        whi: i64,
        /// Dimensions n1,n2,n3 for min-plus instances.
        #[arg(long)]
        dims: Option<String>,
        /// Entry bound for min-plus instances.
        #[arg(long, default_value_t = 6)]
        bound: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a registered benchmark suite and fit a log-log slope.
    Bench {
        /// minplus-brute, minplus-blocked, minplus-scaled, seidel,
        /// brute-apsp or count-exact.
        #[arg(long)]
        suite: String,
        /// Comma-separated instance sizes.
        #[arg(long, default_value = "64,128,256")]
        sizes: String,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a min-plus product through a counting solver.
    Unique {
        /// Instance file in the `minplus` text format.
        input: PathBuf,
        /// Counting ring (modulus).
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
        /// oracle or gamma.
        #[arg(long, default_value = "oracle")]
        backend: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub enum ExitKind {
    Usage,
    Validation,
    Probabilistic,
}

pub fn classify(e: &anyhow::Error) -> ExitKind {
    if let Some(red) = e.downcast_ref::<apsp_reductions::Error>() {
        return match red {
            apsp_reductions::Error::ProbabilisticFailure { .. } => ExitKind::Probabilistic,
            _ => ExitKind::Validation,
        };
    }
    if let Some(alg) = e.downcast_ref::<apsp_algos::Error>() {
        return match alg {
            apsp_algos::Error::VerificationFailure { .. } => ExitKind::Probabilistic,
            _ => ExitKind::Validation,
        };
    }
    if let Some(core) = e.downcast_ref::<apsp_core::Error>() {
        return match core {
            apsp_core::Error::SamplingFailure { .. } => ExitKind::Probabilistic,
            _ => ExitKind::Validation,
        };
    }
    if e.downcast_ref::<std::io::Error>().is_some() {
        return ExitKind::Validation;
    }
    ExitKind::Usage
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .ok();
    }
    let json = cli.json;
    match cli.command {
        Command::Apsp {
            io,
            algo,
            crossover,
        } => {
            let g = Graph::load(&io.input)?;
            let engine = ProductEngine::parse(&io.engine)?;
            let cost = CostModel {
                crossover_l: crossover,
                ..CostModel::default()
            };
            let t0 = Instant::now();
            let text = match algo.as_str() {
                "seidel" => seidel_apsp(&g)?.to_text(),
                "zwick" => zwick_apsp(&g, &cost, &engine, io.seed)?.to_text(),
                "undirected" => undirected_small_weight_apsp(&g, &engine, io.seed)?.to_text(),
                "aplp" => dag_aplp(&g, &cost, &engine, io.seed)?.to_text(),
                "oracle" => oracles::oracle_apsp(&g)?.to_text(),
                other => bail!("unknown apsp algorithm `{other}`"),
            };
            finish(
                json,
                &format!("apsp/{algo}"),
                io.seed,
                t0,
                &text,
                io.out.as_deref(),
            )
        }
        Command::Approx { io, p } => {
            let g = Graph::load(&io.input)?;
            let profile = ErrorProfile::power(p)?;
            let opts = ApproxOptions {
                engine: ProductEngine::parse(&io.engine)?,
                seed: io.seed,
                ..ApproxOptions::default()
            };
            let t0 = Instant::now();
            let out = approx_apsp_with(&g, &profile, &opts)?;
            let text = out.estimate.to_text();
            finish(
                json,
                &format!("approx/p={p}"),
                io.seed,
                t0,
                &text,
                io.out.as_deref(),
            )
        }
        Command::Lex2 { io, algo } => {
            let g = Graph::load(&io.input)?;
            let t0 = Instant::now();
            let solved: Matrix<LexDist> = match algo.as_str() {
                "directed" => lex2_directed(&g.to_directed(), &Lex2Options::default(), io.seed)?,
                "undirected" => lex2_undirected_positive(&g)?,
                "gamma" => lex2_gamma(&g.to_directed(), io.seed)?,
                "aplsp" => aplsp(&g, io.seed)?,
                "apslp" => apslp(&g, io.seed)?,
                other => bail!("unknown lex2 algorithm `{other}`"),
            };
            let text = solved.to_text();
            finish(
                json,
                &format!("lex2/{algo}"),
                io.seed,
                t0,
                &text,
                io.out.as_deref(),
            )
        }
        Command::Count {
            io,
            mode,
            cap,
            modulus,
            approx,
        } => {
            let g = Graph::load(&io.input)?;
            let t0 = Instant::now();
            let out: CountMatrix = match mode.as_str() {
                "exact" => count_exact(&g)?,
                "capped" => {
                    let cap = cap.ok_or_else(|| anyhow!("--cap is required for capped mode"))?;
                    if g.is_directed() {
                        count_capped_directed(&g, cap, io.seed)?
                    } else {
                        count_undirected_seidel(&g, SeidelCountMode::Capped(cap))?
                    }
                }
                "mod" => {
                    let m = modulus.ok_or_else(|| anyhow!("--mod is required for mod mode"))?;
                    if g.is_directed() {
                        count_mod_directed(&g, m)?
                    } else {
                        count_undirected_seidel(&g, SeidelCountMode::Mod(m))?
                    }
                }
                "approx" => {
                    let u =
                        approx.ok_or_else(|| anyhow!("--approx is required for approx mode"))?;
                    count_approx(&g, u)?
                }
                other => bail!("unknown count mode `{other}`"),
            };
            let text = count_text(&out);
            finish(
                json,
                &format!("count/{mode}"),
                io.seed,
                t0,
                &text,
                io.out.as_deref(),
            )
        }
        Command::Bc {
            io,
            vertex,
            approx,
            halve,
        } => {
            let g = Graph::load(&io.input)?;
            let mode = match approx {
                Some(u) => BetweennessMode::Approx(u),
                None => BetweennessMode::Exact,
            };
            let t0 = Instant::now();
            let bc = betweenness(&g, vertex, mode)?;
            let text = match bc {
                BCValue::Exact(r) => {
                    let r = if halve {
                        r / num_rational::BigRational::from_integer(2.into())
                    } else {
                        r
                    };
                    format!("bc {vertex} {r}\n")
                }
                BCValue::Approx(x) => {
                    let x = if halve { x / 2.0 } else { x };
                    format!("bc {vertex} {x:.9}\n")
                }
            };
            finish(json, "bc", io.seed, t0, &text, io.out.as_deref())
        }
        Command::Cred { io, budget, algo } => {
            let g = Graph::load(&io.input)?;
            let t0 = Instant::now();
            let solved = match algo.as_str() {
                "layered" => cred_apsp(&g, budget)?,
                "onered" => {
                    if budget != 1 {
                        bail!("onered solves exactly budget 1");
                    }
                    one_red_apsp(&g)?
                }
                other => bail!("unknown cred algorithm `{other}`"),
            };
            let text = solved.to_text();
            finish(
                json,
                &format!("cred/{budget}"),
                io.seed,
                t0,
                &text,
                io.out.as_deref(),
            )
        }
        Command::Reduce {
            input,
            gadget,
            out,
            map,
            budget,
            p,
            ell,
        } => {
            let inst = MinPlusInstance::parse_text(&std::fs::read_to_string(&input)?)?;
            let kind = GadgetKind::parse(&gadget)?;
            let built: GadgetGraph = match kind {
                GadgetKind::Uapsp => encode_minplus_as_uapsp(&inst)?,
                GadgetKind::DagAplp => encode_minplus_as_dag_aplp(&inst)?,
                GadgetKind::TwoRed => encode_minplus_as_2red(&inst, budget)?,
                GadgetKind::Aplsp01 => encode_minplus_as_aplsp01(&inst)?,
                GadgetKind::VertexWeighted => encode_minplus_as_vertex_weighted(&inst)?,
                GadgetKind::AdditiveLb => {
                    let profile = ErrorProfile::power(p)?;
                    encode_minplus_additive_lb(&inst, &profile, ell)?
                }
            };
            std::fs::write(&out, built.graph.to_text())?;
            let map_path = map.unwrap_or_else(|| sidecar(&out));
            std::fs::write(&map_path, built.map.to_text())?;
            if json {
                RunReport::new(format!("reduce/{gadget}"), 0, 0.0, &built.graph.to_text())
                    .print()?;
            }
            Ok(())
        }
        Command::Decode { input, map, out } => {
            let map = DecodeMap::parse_text(&std::fs::read_to_string(&map)?)?;
            let text = std::fs::read_to_string(&input)?;
            let decoded = match map.kind {
                GadgetKind::Aplsp01 => {
                    let solved: Matrix<LexDist> = Matrix::parse_text(&text)?;
                    map.decode_lex(&solved)?
                }
                _ => {
                    let solved: Matrix<SignedDist> = Matrix::parse_text(&text)?;
                    map.decode_signed(&solved)?
                }
            };
            emit(out.as_deref(), false, &decoded.to_text())?;
            Ok(())
        }
        Command::Gen {
            kind,
            n,
            m,
            seed,
            wlo,
            whi,
            dims,
            bound,
            out,
        } => {
            let m_default = 3 * n;
            let text = match kind.as_str() {
                "random-digraph" => {
                    apsp_core::gen::random_digraph(n, m.unwrap_or(m_default), wlo.max(0), whi, seed)
                        .to_text()
                }
                "random-undirected" => apsp_core::gen::random_undirected(
                    n,
                    m.unwrap_or(m_default),
                    wlo.max(0),
                    whi,
                    seed,
                )
                .to_text(),
                "colored" => {
                    apsp_core::gen::random_colored(n, m.unwrap_or(m_default), 0.4, seed).to_text()
                }
                "dual-weight" => apsp_core::gen::random_dual(
                    n,
                    m.unwrap_or(m_default),
                    true,
                    wlo.max(0),
                    whi,
                    0,
                    3,
                    seed,
                )
                .to_text(),
                "bigcount-layered" => apsp_core::gen::bigcount_layered(n).to_text(),
                "minplus" => {
                    let dims = dims.unwrap_or_else(|| "8,4,8".into());
                    let parts: Vec<usize> = dims
                        .split(',')
                        .map(|x| x.parse().context("bad --dims"))
                        .collect::<anyhow::Result<_>>()?;
                    if parts.len() != 3 {
                        bail!("--dims must be n1,n2,n3");
                    }
                    let (a, b) =
                        apsp_core::gen::random_minplus(parts[0], parts[1], parts[2], bound, seed);
                    MinPlusInstance::new(a, b, bound)?.to_text()
                }
                other => bail!("unknown generator kind `{other}`"),
            };
            std::fs::write(&out, text)?;
            Ok(())
        }
        Command::Bench {
            suite,
            sizes,
            reps,
            seed,
            out,
        } => {
            let sizes: Vec<usize> = sizes
                .split(',')
                .map(|x| x.parse().context("bad --sizes"))
                .collect::<anyhow::Result<_>>()?;
            if sizes.len() < 3 {
                bail!("need at least three sizes to fit a slope");
            }
            if reps == 0 {
                bail!("need at least one repetition");
            }
            let report = bench::run_suite(&suite, &sizes, reps, seed)?;
            let text = serde_json::to_string_pretty(&report)?;
            match out {
                Some(path) => std::fs::write(path, &text)?,
                None => println!("{text}"),
            }
            Ok(())
        }
        Command::Unique {
            input,
            modulus,
            backend,
            seed,
            out,
        } => {
            let inst = MinPlusInstance::parse_text(&std::fs::read_to_string(&input)?)?;
            let opts = UniqueOptions {
                seed,
                ..UniqueOptions::default()
            };
            let t0 = Instant::now();
            let (solved, telemetry) = match backend.as_str() {
                "oracle" => {
                    unique_minplus_via_counting(&inst, &OracleModBackend { modulus }, &opts)?
                }
                "gamma" => {
                    unique_minplus_via_counting(&inst, &ModDirectedBackend { modulus }, &opts)?
                }
                other => bail!("unknown counting backend `{other}`"),
            };
            eprintln!(
                "unique: {} stages, {} rounds, {} probes, seed {}",
                telemetry.stages, telemetry.rounds, telemetry.probes, telemetry.seed
            );
            let text = solved.to_text();
            finish(json, "unique", seed, t0, &text, out.as_deref())
        }
    }
}

fn sidecar(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_owned();
    os.push(".decode");
    PathBuf::from(os)
}

fn count_text(out: &CountMatrix) -> String {
    use std::fmt::Write as _;
    let mut text = out.dist.to_text();
    let _ = writeln!(text, "# counts ({} mode)", out.mode_name());
    let _ = writeln!(text, "matrix {} {}", out.dist.rows(), out.dist.cols());
    for i in 0..out.dist.rows() {
        let row: Vec<String> = (0..out.dist.cols())
            .map(|j| out.count_token(i, j))
            .collect();
        let _ = writeln!(text, "{}", row.join(" "));
    }
    text
}

fn finish(
    json: bool,
    algorithm: &str,
    seed: u64,
    t0: Instant,
    text: &str,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    emit(out, json, text)?;
    if json {
        RunReport::new(algorithm, seed, wall_ms, text).print()?;
    }
    Ok(())
}
