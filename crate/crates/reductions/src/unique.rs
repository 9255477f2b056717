use apsp_core::dist::Dist;
use apsp_core::graph::Graph;
use apsp_core::matrix::Matrix;
use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{encode_minplus_as_uapsp, Error, MinPlusInstance, Result};

/// A shortest-path counting solver for directed unweighted graphs, counting
/// either modulo a value or capped at one. Only the counts are consulted;
/// the reduction never reads distances from the backend.
pub trait CountingBackend {
    fn count(&self, g: &Graph) -> Result<Matrix<u64>>;
    /// The modulus (or cap) the counts live under; at least 2.
    fn ring(&self) -> u64;
}

/// Backend over the big-integer counting baseline, reduced modulo `modulus`.
pub struct OracleModBackend {
    pub modulus: u64,
}

impl CountingBackend for OracleModBackend {
    fn count(&self, g: &Graph) -> Result<Matrix<u64>> {
        let (_, counts) = apsp_core::oracles::oracle_count(g)?;
        let m = BigUint::from(self.modulus);
        Ok(counts.map(|c| {
            let r = c % &m;
            r.to_u64_digits().first().copied().unwrap_or(0)
        }))
    }

    fn ring(&self) -> u64 {
        self.modulus
    }
}

/// Backend over the gamma-scaled directed modular counting solver.
pub struct ModDirectedBackend {
    pub modulus: u64,
}

impl CountingBackend for ModDirectedBackend {
    fn count(&self, g: &Graph) -> Result<Matrix<u64>> {
        let out = apsp_algos::counting::count_mod_directed(g, self.modulus)?;
        match out.data {
            apsp_algos::counting::CountData::Mod(_, m) => Ok(m),
            _ => Err(Error::Validation("backend returned wrong mode".into())),
        }
    }

    fn ring(&self) -> u64 {
        self.modulus
    }
}

#[derive(Clone, Debug)]
pub struct UniqueOptions {
    pub rounds_per_stage: usize,
    pub seed: u64,
}

impl Default for UniqueOptions {
    fn default() -> UniqueOptions {
        UniqueOptions {
            rounds_per_stage: 12,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UniqueTelemetry {
    pub seed: u64,
    pub stages: usize,
    pub rounds: usize,
    pub probes: usize,
    /// Cells that never produced a coherent probe signature; nonzero means
    /// the run is reported as a probabilistic failure.
    pub uncertain: usize,
}

/// Recovers the min-plus product through a counting solver, using only
/// counts.
///
/// Stage t keeps each inner index with probability 2^-t; where the kept
/// submatrix has a unique minimizer, bit probes pin it down: duplicating
/// the kept columns whose index has bit beta set turns "count of minimizing
/// indices" into 2 for a set bit and 1 for a clear bit (mod anything, since
/// a witness always exists). Each probe routes through the unweighted-APSP
/// spine gadget and the injected counting backend; recovered indices yield
/// candidate sums from the original matrices, which are safe upper bounds
/// even when uniqueness failed, and the minimum over all rounds is reported.
/// A cell whose probes never form a coherent 1-or-2 signature is counted as
/// uncertain and surfaces as an error with the run telemetry.
pub fn unique_minplus_via_counting(
    inst: &MinPlusInstance,
    backend: &dyn CountingBackend,
    opts: &UniqueOptions,
) -> Result<(Matrix<Dist>, UniqueTelemetry)> {
    if backend.ring() < 2 {
        return Err(Error::Validation("counting ring must be at least 2".into()));
    }
    let (n1, n2, n3) = inst.dims();
    let ring = backend.ring();
    let one = 1 % ring;
    let two = 2 % ring;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut result = Matrix::new(n1, n3, Dist::INF).map_err(Error::Core)?;
    let mut confident = Matrix::new(n1, n3, false).map_err(Error::Core)?;
    let bits = (usize::BITS - (n2 - 1).leading_zeros()).max(1) as usize;

    let stages = ((n2 as f64).log2().ceil() as usize) + 1;
    let mut telemetry = UniqueTelemetry {
        seed: opts.seed,
        stages,
        rounds: 0,
        probes: 0,
        uncertain: 0,
    };

    for stage in 0..stages {
        let keep_prob = 0.5f64.powi(stage as i32);
        let rounds = if stage == 0 { 1 } else { opts.rounds_per_stage };
        for _ in 0..rounds {
            let kept: Vec<usize> = (0..n2)
                .filter(|_| stage == 0 || rng.random::<f64>() < keep_prob)
                .collect();
            if kept.is_empty() {
                continue;
            }
            telemetry.rounds += 1;
            let mut kept_mask = vec![false; n2];
            for &k in &kept {
                kept_mask[k] = true;
            }

            // counts_per_probe[beta][cell]
            let mut probe_counts: Vec<Matrix<u64>> = Vec::with_capacity(bits);
            for beta in 0..bits {
                let mut cols: Vec<usize> = kept.clone();
                cols.extend(kept.iter().copied().filter(|k| k >> beta & 1 == 1));
                let a = inst.a.submatrix(&(0..n1).collect::<Vec<_>>(), &cols);
                let b = inst.b.submatrix(&cols, &(0..n3).collect::<Vec<_>>());
                let probe_inst = MinPlusInstance::new(a, b, inst.bound)?;
                let built = encode_minplus_as_uapsp(&probe_inst)?;
                telemetry.probes += 1;
                let counts = backend.count(&built.graph)?;
                let cell_counts = Matrix::from_fn(n1, n3, |i, j| {
                    *counts.get(built.map.sources[i], built.map.sinks[j])
                });
                probe_counts.push(cell_counts);
            }

            for i in 0..n1 {
                for j in 0..n3 {
                    let mut candidate = 0usize;
                    let mut coherent = true;
                    for (beta, counts) in probe_counts.iter().enumerate() {
                        let c = *counts.get(i, j);
                        if c == two {
                            candidate |= 1 << beta;
                        } else if c != one {
                            coherent = false;
                            break;
                        }
                    }
                    if candidate < n2 && kept_mask[candidate] {
                        let cand = *inst.a.get(i, candidate) + *inst.b.get(candidate, j);
                        if cand < *result.get(i, j) {
                            result.set(i, j, cand);
                        }
                        if coherent {
                            confident.set(i, j, true);
                        }
                    }
                }
            }
        }
    }

    telemetry.uncertain = confident.data().iter().filter(|&&c| !c).count();
    if telemetry.uncertain > 0 {
        return Err(Error::ProbabilisticFailure {
            uncertain: telemetry.uncertain,
            rounds: telemetry.rounds,
            seed: opts.seed,
        });
    }
    Ok((result, telemetry))
}
