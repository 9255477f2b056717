use crate::dist::Dist;
use crate::matrix::Matrix;

use super::{WitnessMatrix, NO_WITNESS};

/// Reference kernel: row of A against transposed rows of B, first minimizer
/// kept as the witness.
pub(crate) fn minplus_brute(a: &Matrix<Dist>, b: &Matrix<Dist>) -> (Matrix<Dist>, WitnessMatrix) {
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let bt = b.transpose();
    let mut c = Matrix::new(n1, n3, Dist::INF).expect("positive dims");
    let mut w = Matrix::new(n1, n3, NO_WITNESS).expect("positive dims");
    for i in 0..n1 {
        let arow = a.row(i);
        for j in 0..n3 {
            let bcol = bt.row(j);
            let mut best = Dist::INF;
            let mut arg = NO_WITNESS;
            for k in 0..n2 {
                let cand = arow[k] + bcol[k];
                if cand < best {
                    best = cand;
                    arg = k as u32;
                }
            }
            c.set(i, j, best);
            w.set(i, j, arg);
        }
    }
    (c, w)
}

/// Tiled kernel: i-k-j order inside `block`-sized tiles so the B rows stream
/// through cache.
pub(crate) fn minplus_blocked(
    a: &Matrix<Dist>,
    b: &Matrix<Dist>,
    block: usize,
) -> (Matrix<Dist>, WitnessMatrix) {
    let (n1, n2, n3) = (a.rows(), a.cols(), b.cols());
    let mut c = Matrix::new(n1, n3, Dist::INF).expect("positive dims");
    let mut w = Matrix::new(n1, n3, NO_WITNESS).expect("positive dims");
    for kb in (0..n2).step_by(block) {
        let kend = (kb + block).min(n2);
        for jb in (0..n3).step_by(block) {
            let jend = (jb + block).min(n3);
            for i in 0..n1 {
                let arow = a.row(i);
                for k in kb..kend {
                    let av = arow[k];
                    if av.is_inf() {
                        continue;
                    }
                    let brow = &b.row(k)[jb..jend];
                    let crow = &mut c.row_mut(i)[jb..jend];
                    let wrow = &mut w.row_mut(i)[jb..jend];
                    for ((cv, wv), &bv) in crow.iter_mut().zip(wrow.iter_mut()).zip(brow.iter()) {
                        let cand = av + bv;
                        if cand < *cv {
                            *cv = cand;
                            *wv = k as u32;
                        }
                    }
                }
            }
        }
    }
    (c, w)
}
