use std::fmt;

use super::{Field, LinalgError};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon {
    pub reduced: GfMatrix,
    pub pivots: Vec<usize>,
}

impl GfMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows. Entries must already be field elements.
    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(LinalgError::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for &v in row {
                if !field.contains(v) {
                    return Err(LinalgError::InvalidField(format!(
                        "entry {v} is not an element of {field}"
                    )));
                }
                data.push(v);
            }
        }
        Ok(GfMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Like [`from_rows`](Self::from_rows) but panics on malformed input.
    /// Handy for literals in fixtures and tests.
    pub fn lit(field: &Field, rows: &[&[u32]]) -> Self {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(field, &rows).expect("malformed matrix literal")
    }

    /// Column vector.
    pub fn column(field: &Field, entries: &[u32]) -> Self {
        let rows: Vec<Vec<u32>> = entries.iter().map(|&v| vec![v]).collect();
        let mut m = Self::from_rows(field, &rows).expect("malformed column literal");
        m.cols = 1;
        m
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn same_field(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch(format!(
                "cannot add {:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(GfMatrix {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, k: u32) -> Self {
        let f = &self.field;
        GfMatrix {
            data: self.data.iter().map(|&a| f.mul(a, k)).collect(),
            ..self.clone()
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * out.cols..(r + 1) * out.cols];
            dst[..self.cols].copy_from_slice(self.row(r));
            dst[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(GfMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Horizontal concatenation of any number of blocks with `rows` rows.
    pub fn hcat(field: &Field, rows: usize, blocks: &[&GfMatrix]) -> Result<Self, LinalgError> {
        let mut out = Self::zeros(field, rows, 0);
        for b in blocks {
            out = out.hstack(b)?;
        }
        Ok(out)
    }

    /// Block-diagonal matrix.
    pub fn block_diag(field: &Field, blocks: &[GfMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &GfMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        GfMatrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination. Pivots are the first nonzero entry scanning
    /// columns left to right, rows top to bottom.
    pub fn echelon(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).unwrap();
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == row || factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Some `X` with `self · X = rhs`, or `None` if the columns of `rhs` are
    /// not all in the column span of `self`. Free variables are set to zero.
    pub fn solve_right(&self, rhs: &Self) -> Result<Option<Self>, LinalgError> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "solve with {} rows against {} rows",
                self.rows, rhs.rows
            )));
        }
        let n = self.cols;
        let aug = self.hstack(rhs)?;
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Self::zeros(&self.field, n, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, reduced.get(i, n + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "inverse of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rank() < self.rows {
            return Err(LinalgError::Singular);
        }
        let id = Self::identity(&self.field, self.rows);
        Ok(self.solve_right(&id)?.expect("full rank matrix is invertible"))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// True iff every column of `other` lies in the column span of `self`.
    pub fn column_span_contains(&self, other: &Self) -> Result<bool, LinalgError> {
        Ok(self.solve_right(other)?.is_some())
    }

    /// True iff the column spans of `self` and `other` meet only in zero.
    pub fn subspaces_intersect_trivially(&self, other: &Self) -> Result<bool, LinalgError> {
        let joint = self.hstack(other)?;
        Ok(joint.rank() == self.rank() + other.rank())
    }

    /// Basis of the right null space `{x : self · x = 0}` as columns.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, j, f.neg(reduced.get(i, fc)));
            }
        }
        k
    }

    /// Text form: `matrix <rows> <cols> over <q>` then one line per row.
    pub fn to_text(&self) -> String {
        let f = &self.field;
        let over = if f.degree() == 1 {
            format!("{}", f.characteristic())
        } else {
            format!("{}^{}", f.characteristic(), f.degree())
        };
        let mut s = format!("matrix {} {} over {}\n", self.rows, self.cols, over);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Parses the matrix text format. Blank lines and `#` comments are ignored.
/// Entries are integers; over a prime field they are reduced mod `p`, over an
/// extension field they must already be element codes in `0..q`.
pub fn parse_matrix(text: &str) -> Result<GfMatrix, LinalgError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| LinalgError::Parse("empty input".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "matrix" || toks[3] != "over" {
        return Err(LinalgError::Parse(format!(
            "expected `matrix <rows> <cols> over <p>[^m]`, got `{header}`"
        )));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| LinalgError::Parse(format!("bad integer `{s}`")))
    };
    let (rows, cols) = (num(toks[1])?, num(toks[2])?);
    let field = match toks[4].split_once('^') {
        Some((p, m)) => Field::new(num(p)? as u32, num(m)? as u32)?,
        None => Field::prime(num(toks[4])? as u32)?,
    };
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| LinalgError::Parse(format!("missing row {r}")))?;
        let vals: Vec<&str> = line.split_whitespace().collect();
        if vals.len() != cols {
            return Err(LinalgError::Parse(format!(
                "row {r} has {} entries, expected {cols}",
                vals.len()
            )));
        }
        for v in vals {
            let x: i64 = v
                .parse()
                .map_err(|_| LinalgError::Parse(format!("bad entry `{v}`")))?;
            let e = if field.degree() == 1 {
                field.from_int(x)
            } else if x >= 0 && (x as u64) < field.order() as u64 {
                x as u32
            } else {
                return Err(LinalgError::Parse(format!("entry {x} outside {field}")));
            };
            data.push(e);
        }
    }
    if let Some(extra) = lines.next() {
        return Err(LinalgError::Parse(format!("trailing line `{extra}`")));
    }
    Ok(GfMatrix {
        field,
        rows,
        cols,
        data,
    })
}
