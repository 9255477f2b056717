use crate::dist::Dist;
use crate::matrix::Matrix;

/// Declared bound on the finite entries of one matrix, with an optional
/// cap on how many finite entries it contains.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SideBound {
    pub max_finite: u64,
    pub finite_count: Option<usize>,
}

impl SideBound {
    pub fn max(max_finite: u64) -> SideBound {
        SideBound {
            max_finite,
            finite_count: None,
        }
    }

    pub fn with_count(max_finite: u64, finite_count: usize) -> SideBound {
        SideBound {
            max_finite,
            finite_count: Some(finite_count),
        }
    }
}

/// Entry bounds for the two operands of a product.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct EntryBounds {
    pub a: SideBound,
    pub b: SideBound,
}

impl EntryBounds {
    pub fn symmetric(max_finite: u64) -> EntryBounds {
        EntryBounds {
            a: SideBound::max(max_finite),
            b: SideBound::max(max_finite),
        }
    }

    pub fn new(max_a: u64, max_b: u64) -> EntryBounds {
        EntryBounds {
            a: SideBound::max(max_a),
            b: SideBound::max(max_b),
        }
    }

    /// Bounds measured from the matrices themselves.
    pub fn measure(a: &Matrix<Dist>, b: &Matrix<Dist>) -> EntryBounds {
        EntryBounds {
            a: SideBound::with_count(a.max_finite().unwrap_or(0), a.count_finite()),
            b: SideBound::with_count(b.max_finite().unwrap_or(0), b.count_finite()),
        }
    }
}

/// True iff every finite entry of `m` is within the declared bound and, when a
/// finite-entry count is declared, the matrix does not exceed it.
pub fn check_bounds(m: &Matrix<Dist>, bound: &SideBound) -> bool {
    let mut finite = 0usize;
    for d in m.data() {
        if let Some(v) = d.value() {
            finite += 1;
            if v > bound.max_finite {
                return false;
            }
        }
    }
    match bound.finite_count {
        Some(cap) => finite <= cap,
        None => true,
    }
}

/// Tuning knobs shared by the staged algorithms and the benchmark harness.
///
/// `omega` and `rho` are analysis-only constants: nothing consumes them except
/// reporting. Algorithms see this struct only through `crossover_l`.
#[derive(Copy, Clone, Debug)]
pub struct CostModel {
    /// Path-length threshold at which staged products hand over to the
    /// brute-force per-sample pass. `None` selects `sqrt(n)` rounded up to a
    /// stage boundary.
    pub crossover_l: Option<u64>,
    /// Log-log slope fitted by the benchmark harness, when one has been run.
    pub reported_exponent: Option<f64>,
    /// Square matrix-multiplication exponent used in reports (classical 3.0).
    pub omega: f64,
    /// Middle-dimension exponent used in reports.
    pub rho: f64,
}

impl Default for CostModel {
    fn default() -> CostModel {
        CostModel {
            crossover_l: None,
            reported_exponent: None,
            omega: 3.0,
            rho: 0.5,
        }
    }
}

impl CostModel {
    /// Effective crossover for an n-vertex instance, always at least 2.
    pub fn crossover_for(&self, n: usize) -> u64 {
        match self.crossover_l {
            Some(l) => l.max(1),
            None => ((n as f64).sqrt().ceil() as u64).max(2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::dist_matrix;

    #[test]
    fn bound_check_examples() {
        let m = dist_matrix(&[&[1, -1], &[2, 3]]);
        assert!(check_bounds(&m, &SideBound::max(3)));
        let m = dist_matrix(&[&[4]]);
        assert!(!check_bounds(&m, &SideBound::max(3)));
        let m = dist_matrix(&[&[1, 2]]);
        assert!(!check_bounds(&m, &SideBound::with_count(2, 1)));
        assert!(check_bounds(&m, &SideBound::with_count(2, 2)));
    }

    #[test]
    fn crossover_default_is_sqrt() {
        let cm = CostModel::default();
        assert_eq!(cm.crossover_for(100), 10);
        assert_eq!(cm.crossover_for(1), 2);
        let fixed = CostModel {
            crossover_l: Some(4),
            ..CostModel::default()
        };
        assert_eq!(fixed.crossover_for(100), 4);
    }
}
