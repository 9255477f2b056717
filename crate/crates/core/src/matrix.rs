use std::fmt::Write as _;
use std::path::Path;

use crate::dist::Dist;
use crate::error::{Error, Result};

/// Row-major rectangular matrix. Dimensions are fixed at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, fill: T) -> Result<Matrix<T>> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data: vec![fill; rows * cols],
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Matrix<T> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Matrix<T>> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(Error::invalid("matrix needs at least one row and column"));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Submatrix with the given row and column index lists.
    pub fn submatrix(&self, row_ids: &[usize], col_ids: &[usize]) -> Matrix<T> {
        Matrix::from_fn(row_ids.len(), col_ids.len(), |i, j| {
            self.get(row_ids[i], col_ids[j]).clone()
        })
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<T> Matrix<T> {
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn same_shape<U>(&self, other: &Matrix<U>) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

impl Matrix<Dist> {
    /// Min-plus identity: zero diagonal, infinity elsewhere.
    pub fn minplus_identity(n: usize) -> Result<Matrix<Dist>> {
        let mut m = Matrix::new(n, n, Dist::INF)?;
        for i in 0..n {
            m.set(i, i, Dist::ZERO);
        }
        Ok(m)
    }

    pub fn max_finite(&self) -> Option<u64> {
        self.data.iter().filter_map(|d| d.value()).max()
    }

    pub fn count_finite(&self) -> usize {
        self.data.iter().filter(|d| d.is_finite()).count()
    }

    /// Entrywise minimum of two equally-shaped matrices.
    pub fn entrywise_min(&mut self, other: &Matrix<Dist>) {
        assert!(self.same_shape(other));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a = Dist::min(*a, *b);
        }
    }
}

/// An entry that can round-trip through the whitespace-token text format.
pub trait MatrixEntry: Sized {
    fn parse_token(tok: &str) -> Option<Self>;
    fn format_token(&self) -> String;
}

impl MatrixEntry for Dist {
    fn parse_token(tok: &str) -> Option<Dist> {
        if tok == "INF" {
            Some(Dist::INF)
        } else {
            tok.parse::<u64>().ok().map(Dist::finite)
        }
    }

    fn format_token(&self) -> String {
        self.to_string()
    }
}

impl MatrixEntry for i64 {
    fn parse_token(tok: &str) -> Option<i64> {
        tok.parse().ok()
    }

    fn format_token(&self) -> String {
        self.to_string()
    }
}

impl MatrixEntry for crate::dist::SignedDist {
    fn parse_token(tok: &str) -> Option<Self> {
        if tok == "INF" {
            Some(Self::INF)
        } else {
            tok.parse::<i64>().ok().map(Self::finite)
        }
    }

    fn format_token(&self) -> String {
        self.to_string()
    }
}

impl MatrixEntry for u64 {
    fn parse_token(tok: &str) -> Option<u64> {
        tok.parse().ok()
    }

    fn format_token(&self) -> String {
        self.to_string()
    }
}

impl MatrixEntry for crate::lexdist::LexDist {
    fn parse_token(tok: &str) -> Option<Self> {
        use crate::lexdist::LexDist;
        if tok == "INF" {
            return Some(LexDist::INF);
        }
        let (a, b) = tok.split_once(',')?;
        Some(LexDist::finite(a.parse().ok()?, b.parse().ok()?))
    }

    fn format_token(&self) -> String {
        match (self.d1.value(), self.d2.value()) {
            (Some(a), Some(b)) => format!("{a},{b}"),
            _ => "INF".into(),
        }
    }
}

impl MatrixEntry for num_bigint::BigUint {
    fn parse_token(tok: &str) -> Option<Self> {
        tok.parse().ok()
    }

    fn format_token(&self) -> String {
        self.to_string()
    }
}

impl<T: MatrixEntry + Clone> Matrix<T> {
    /// Text format: `matrix <rows> <cols>` header, then one line per row of
    /// whitespace-separated tokens. `INF` denotes infinity, `#` starts a comment.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "matrix {} {}", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.format_token()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn parse_text(input: &str) -> Result<Matrix<T>> {
        let mut blocks = Self::parse_blocks(input)?;
        if blocks.len() != 1 {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected one matrix block, found {}", blocks.len()),
            });
        }
        Ok(blocks.pop().unwrap())
    }

    /// Parses a file holding one or more concatenated matrix blocks.
    pub fn parse_blocks(input: &str) -> Result<Vec<Matrix<T>>> {
        let mut out = Vec::new();
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        while let Some((lineno, header)) = lines.next() {
            let parts: Vec<&str> = header.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "matrix" {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `matrix <rows> <cols>`, got `{header}`"),
                });
            }
            let rows: usize = parts[1].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: "bad row count".into(),
            })?;
            let cols: usize = parts[2].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: "bad column count".into(),
            })?;
            if rows == 0 || cols == 0 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "matrix dimensions must be positive".into(),
                });
            }
            let mut data = Vec::with_capacity(rows * cols);
            for _ in 0..rows {
                let (lineno, line) = lines.next().ok_or(Error::Parse {
                    line: lineno,
                    msg: "unexpected end of input inside matrix body".into(),
                })?;
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != cols {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected {cols} entries, got {}", toks.len()),
                    });
                }
                for tok in toks {
                    data.push(T::parse_token(tok).ok_or(Error::Parse {
                        line: lineno,
                        msg: format!("bad entry `{tok}`"),
                    })?);
                }
            }
            out.push(Matrix { rows, cols, data });
        }
        if out.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "empty input".into(),
            });
        }
        Ok(out)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Matrix<T>> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_text(&text)
    }
}

impl<T: MatrixEntry + Clone> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Convenience constructor used throughout the tests.
pub fn dist_matrix(rows: &[&[i64]]) -> Matrix<Dist> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&v| {
                        if v < 0 {
                            Dist::INF
                        } else {
                            Dist::finite(v as u64)
                        }
                    })
                    .collect()
            })
            .collect(),
    )
    .expect("literal matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_and_identity() {
        let m = Matrix::new(2, 2, Dist::INF).unwrap();
        assert!(m.data().iter().all(|d| d.is_inf()));
        let z = Matrix::new(1, 3, Dist::ZERO).unwrap();
        assert!(z.data().iter().all(|d| *d == Dist::ZERO));
        let id = Matrix::minplus_identity(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { Dist::ZERO } else { Dist::INF };
                assert_eq!(*id.get(i, j), want);
            }
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(Matrix::new(0, 3, Dist::ZERO).is_err());
        assert!(Matrix::new(3, 0, Dist::ZERO).is_err());
    }

    #[test]
    fn writes_are_independent() {
        let mut m = Matrix::new(3, 4, 0u64).unwrap();
        m.set(1, 2, 42);
        m.set(2, 3, 7);
        assert_eq!(*m.get(1, 2), 42);
        assert_eq!(*m.get(2, 3), 7);
        assert_eq!(*m.get(0, 0), 0);
    }

    #[test]
    fn text_round_trip_with_inf_and_comments() {
        let m = dist_matrix(&[&[1, -1], &[2, 3]]);
        let mut text = String::from("# leading comment\n");
        text.push_str(&m.to_text());
        let back: Matrix<Dist> = Matrix::parse_text(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Matrix::<Dist>::parse_text("matrix 2 2\n1 2\n3").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
