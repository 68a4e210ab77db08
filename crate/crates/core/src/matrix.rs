//! Row-major dense matrices whose arithmetic is delegated to a [`Ring`].

use crate::algebra::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Dot product; zero for empty slices.
pub fn dot<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
    debug_assert_eq!(a.len(), b.len());
    let mut it = a.iter().zip(b);
    match it.next() {
        None => ring.zero(),
        Some((x, y)) => it.fold(ring.mul(x, y), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y))),
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    /// Matrix of integer literals.
    pub fn from_i64<R: Ring<Elem = E>>(ring: &R, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
                .collect(),
        )
    }

    /// Column vector as an `len × 1` matrix.
    pub fn column(v: Vec<E>) -> Self {
        let n = v.len();
        Self::from_vec(n, 1, v)
    }

    /// Row vector as a `1 × len` matrix.
    pub fn row_vector(v: Vec<E>) -> Self {
        let n = v.len();
        Self::from_vec(1, n, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.data.chunks(self.cols.max(1)).map(<[E]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<F: Clone>(&self, f: impl FnMut(&E) -> Result<F>) -> Result<Matrix<F>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Drops row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                data.push(self.get(r, c).clone());
            }
        }
        Self::from_vec(self.rows - 1, self.cols - 1, data)
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|a| ring.mul(a, c))
    }

    /// Cubic product.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let other_t = other.transpose();
        Self::from_fn(self.rows, other.cols, |i, j| {
            dot(ring, self.row(i), other_t.row(j))
        })
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(ring, self.row(i), v)).collect()
    }

    /// `u · self` for a row vector `u`.
    pub fn vec_mul<R: Ring<Elem = E>>(&self, ring: &R, u: &[E]) -> Vec<E> {
        assert_eq!(self.rows, u.len());
        let t = self.transpose();
        (0..self.cols).map(|j| dot(ring, u, t.row(j))).collect()
    }

    /// `col · row`.
    pub fn outer<R: Ring<Elem = E>>(ring: &R, col: &[E], row: &[E]) -> Self {
        Self::from_fn(col.len(), row.len(), |i, j| ring.mul(&col[i], &row[j]))
    }

    /// `self += col · row` in place.
    pub fn add_outer<R: Ring<Elem = E>>(&mut self, ring: &R, col: &[E], row: &[E]) {
        assert_eq!((self.rows, self.cols), (col.len(), row.len()));
        for (i, c) in col.iter().enumerate() {
            for (j, r) in row.iter().enumerate() {
                let k = i * self.cols + j;
                self.data[k] = ring.add(&self.data[k], &ring.mul(c, r));
            }
        }
    }

    pub fn equal<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| ring.equal(a, b))
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| ring.render(a)).collect())
            .collect()
    }
}

/// Solves `m · x = rhs` by Gaussian elimination over a ring whose nonzero
/// pivots are units. Returns `None` when no unit pivot exists in some column.
pub fn solve<R: Ring>(ring: &R, m: &Matrix<R::Elem>, rhs: &[R::Elem]) -> Result<Option<Vec<R::Elem>>> {
    let n = m.rows();
    if !m.is_square() || rhs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "solve with {}x{} matrix and rhs of length {}",
            m.rows(),
            m.cols(),
            rhs.len()
        )));
    }
    let mut a: Vec<Vec<R::Elem>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| ring.is_unit(&a[r][col])) else {
            return Ok(None);
        };
        a.swap(col, p);
        let pinv = ring.inv(&a[col][col])?;
        let pivot_row: Vec<R::Elem> = a[col].iter().map(|x| ring.mul(x, &pinv)).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || ring.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = ring.sub(x, &ring.mul(&factor, pv));
            }
        }
        a[col] = pivot_row;
    }
    Ok(Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect()))
}
