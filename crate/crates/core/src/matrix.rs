//! Dense matrices over exact arbitrary-precision integers, plus Matrix
//! Market (coordinate integer) I/O.
//!
//! Inverse entries grow with the instance, so nothing here ever touches
//! floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of exact signed integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from rows of machine integers; handy for fixtures and tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Unit diagonal and zeros strictly above it; entries may be any integer.
    pub fn is_unit_lower_triangular(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_one() {
                return false;
            }
            for j in (i + 1)..self.cols {
                if !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Unit lower triangular with every entry 0 or 1.
    pub fn is_unit_lower_triangular_01(&self) -> bool {
        self.is_unit_lower_triangular()
            && self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero entries in row-major order as (row, col, value).
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &BigInt)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.push((i, j, e));
                }
            }
        }
        out
    }

    /// Standard Kronecker (tensor) product.
    pub fn kronecker(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Serialize in Matrix Market coordinate integer format (1-based indices,
    /// nonzeros in row-major order).
    pub fn to_matrix_market(&self) -> String {
        let nz = self.nonzero_entries();
        let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
        out.push_str(&format!("{} {} {}\n", self.rows, self.cols, nz.len()));
        for (i, j, v) in nz {
            out.push_str(&format!("{} {} {}\n", i + 1, j + 1, v));
        }
        out
    }

    /// Parse Matrix Market coordinate integer format. Accepts `general` and
    /// `symmetric` symmetry (the latter mirrors entries below the diagonal).
    pub fn from_matrix_market(text: &str) -> Result<IntegerMatrix> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::InvalidMatrix("empty file".into()))?;
        let hdr: Vec<&str> = header.split_whitespace().collect();
        if hdr.len() < 4
            || !hdr[0].eq_ignore_ascii_case("%%MatrixMarket")
            || !hdr[1].eq_ignore_ascii_case("matrix")
            || !hdr[2].eq_ignore_ascii_case("coordinate")
            || !hdr[3].eq_ignore_ascii_case("integer")
        {
            return Err(Error::InvalidMatrix(
                "expected '%%MatrixMarket matrix coordinate integer' header".into(),
            ));
        }
        let symmetric = hdr.get(4).is_some_and(|s| s.eq_ignore_ascii_case("symmetric"));
        if let Some(sym) = hdr.get(4) {
            if !sym.eq_ignore_ascii_case("general") && !symmetric {
                return Err(Error::InvalidMatrix(format!("unsupported symmetry '{sym}'")));
            }
        }

        let mut size: Option<(usize, usize, usize)> = None;
        let mut m: Option<IntegerMatrix> = None;
        let mut seen = 0usize;
        for (lineno, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if size.is_none() {
                if fields.len() != 3 {
                    return Err(Error::Syntax { line: lineno + 1, msg: "expected 'rows cols nnz'".into() });
                }
                let r = parse_usize(fields[0], lineno)?;
                let c = parse_usize(fields[1], lineno)?;
                let nnz = parse_usize(fields[2], lineno)?;
                size = Some((r, c, nnz));
                m = Some(IntegerMatrix::zero(r, c));
                continue;
            }
            let (r, c, nnz) = size.unwrap();
            if fields.len() != 3 {
                return Err(Error::Syntax { line: lineno + 1, msg: "expected 'i j value'".into() });
            }
            let i = parse_usize(fields[0], lineno)?;
            let j = parse_usize(fields[1], lineno)?;
            let v = BigInt::from_str(fields[2])
                .map_err(|_| Error::Syntax { line: lineno + 1, msg: "bad integer value".into() })?;
            if i == 0 || j == 0 || i > r || j > c {
                return Err(Error::Syntax { line: lineno + 1, msg: "index out of range".into() });
            }
            let mat = m.as_mut().unwrap();
            mat.set(i - 1, j - 1, v.clone());
            if symmetric && i != j {
                mat.set(j - 1, i - 1, v);
            }
            seen += 1;
            if seen > nnz {
                return Err(Error::Syntax { line: lineno + 1, msg: "more entries than declared".into() });
            }
        }
        let (_, _, nnz) = size.ok_or(Error::InvalidMatrix("missing size line".into()))?;
        if seen != nnz {
            return Err(Error::InvalidMatrix(format!("declared {nnz} entries, found {seen}")));
        }
        Ok(m.unwrap())
    }
}

fn parse_usize(s: &str, lineno: usize) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Syntax { line: lineno + 1, msg: format!("expected integer, got '{s}'") })
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
