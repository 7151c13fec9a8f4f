use std::fmt;

use crate::error::{Error, Result};
use crate::ffla::field::{Elem, Field};

/// A dense matrix over a small finite field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                write!(f, " {}", self.get(r, c))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    row.len(),
                    cols
                )));
            }
            for &e in row {
                if !field.is_element(e) {
                    return Err(Error::FieldMismatch(format!(
                        "{e} is not an element of {field}"
                    )));
                }
            }
            entries.extend_from_slice(row);
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Build from a flat row-major entry list.
    pub fn from_entries(
        field: Field,
        rows: usize,
        cols: usize,
        entries: Vec<Elem>,
    ) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for &e in &entries {
            if !field.is_element(e) {
                return Err(Error::FieldMismatch(format!(
                    "{e} is not an element of {field}"
                )));
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn stack(&self, below: &Matrix) -> Result<Matrix> {
        if self.field != below.field {
            return Err(Error::FieldMismatch(
                "stacking matrices over different fields".into(),
            ));
        }
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {}-column onto {}-column matrix",
                below.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn concat_cols(&self, right: &Matrix) -> Result<Matrix> {
        if self.field != right.field {
            return Err(Error::FieldMismatch(
                "concatenating matrices over different fields".into(),
            ));
        }
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch(format!(
                "concatenating {}-row beside {}-row matrix",
                right.rows, self.rows
            )));
        }
        let mut m = Matrix::zero(self.field.clone(), self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..right.cols {
                m.set(r, self.cols + c, right.get(r, c));
            }
        }
        Ok(m)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(
                "multiplying matrices over different fields".into(),
            ));
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "multiplying {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, f.mul(a, rhs.get(k, c))));
                }
            }
        }
        Ok(out)
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "applying {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.rows];
        for r in 0..self.rows {
            let mut acc = 0;
            for c in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(r, c), v[c]));
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Reduced row echelon form; returns the pivot columns.
    ///
    /// Two row-equivalent matrices produce the same nonzero rows, which is
    /// what makes subspace representations canonical.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(row, c), m.get(pr, c));
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(row, c, f.mul(m.get(row, c), inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Row rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field.clone();
        let (r, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !pivot_set[c]).collect();
        let mut basis = Matrix::zero(f.clone(), free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                basis.set(bi, pc, f.neg(r.get(pi, fc)));
            }
        }
        basis
    }

    /// Serialize in the text format: `field p m`, `rows cols`, then entries.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "field {} {}\n{} {}\n",
            self.field.characteristic(),
            self.field.degree(),
            self.rows,
            self.cols
        );
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parse the text format produced by [`Matrix::to_text`].
    pub fn parse_text(input: &str) -> Result<Matrix> {
        let mut lines = NumberedLines::new(input);
        let (lno, header) = lines.next_content()?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "field" {
            return Err(Error::parse(lno, 1, "expected header `field p m`"));
        }
        let p: u32 = parse_tok(toks[1], lno, "characteristic")?;
        let m: u32 = parse_tok(toks[2], lno, "degree")?;
        let field = Field::gf(
            p.checked_pow(m)
                .ok_or_else(|| Error::parse(lno, 1, "field order overflows"))?,
        )?;

        let (lno, dims) = lines.next_content()?;
        let toks: Vec<&str> = dims.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(lno, 1, "expected `rows cols`"));
        }
        let rows: usize = parse_tok(toks[0], lno, "row count")?;
        let cols: usize = parse_tok(toks[1], lno, "column count")?;

        let mut entries = Vec::with_capacity(rows * cols);
        while entries.len() < rows * cols {
            let (lno, line) = lines.next_content()?;
            for (start, tok) in tokens_with_positions(line) {
                let col = start + 1;
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::parse(lno, col, format!("bad entry `{tok}`")))?;
                if v >= field.order() {
                    return Err(Error::parse(
                        lno,
                        col,
                        format!("entry {v} is not an element of {field}"),
                    ));
                }
                entries.push(v as Elem);
            }
        }
        Matrix::from_entries(field, rows, cols, entries)
    }
}

fn parse_tok<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, 1, format!("bad {what} `{tok}`")))
}

/// Whitespace-separated tokens with their 0-based byte offsets.
pub(crate) fn tokens_with_positions(line: &str) -> Vec<(usize, &str)> {
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        out.push((start, &line[start..i]));
    }
    out
}

/// Iterator over non-empty, non-comment lines with 1-based numbering.
pub(crate) struct NumberedLines<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> NumberedLines<'a> {
    pub(crate) fn new(input: &'a str) -> Self {
        NumberedLines {
            lines: input.lines().enumerate(),
        }
    }

    pub(crate) fn next_content(&mut self) -> Result<(usize, &'a str)> {
        for (i, line) in self.lines.by_ref() {
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Ok((i + 1, line));
            }
        }
        Err(Error::parse(0, 0, "unexpected end of input"))
    }
}

/// The standard basis column vector `e_i` in dimension `n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
