//! Dense matrices over an exact field.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactcore::{ExactError, Field, GaussRational};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, s: T) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = s.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn column(v: Vec<T>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
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

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    fn check_same(&self, o: &Self) -> Result<(), ExactError> {
        if self.shape() != o.shape() {
            return Err(ExactError::Shape(format!("{:?} vs {:?}", self.shape(), o.shape())));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExactError> {
        self.check_same(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ExactError> {
        self.check_same(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExactError> {
        if self.cols != o.rows {
            return Err(ExactError::Shape(format!("product of {:?} and {:?}", self.shape(), o.shape())));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking shorthand for [`Matrix::try_add`].
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("matrix shape mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("matrix shape mismatch")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix shape mismatch")
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// `[self, o]` side by side.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }

    /// `[self; o]` stacked vertically.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = self.shape();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..m {
                let lead = a[i][c].clone();
                for j in c + 1..n {
                    let v = a[r][c].clone() * a[i][j].clone() - lead.clone() * a[r][j].clone();
                    a[i][j] = v / prev.clone();
                }
                a[i][c] = T::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.to_rows();
        let (m, n) = self.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].inverse();
            for j in c..n {
                a[r][j] = a[r][j].clone() * inv.clone();
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..n {
                        if !a[r][j].is_zero() {
                            a[i][j] = a[i][j].clone() - f.clone() * a[r][j].clone();
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows(a).unwrap_or_else(|_| Matrix::zeros(m, n)), pivots)
    }

    /// Basis of the right kernel, one column per free variable.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); n];
                v[f] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Self {
        let k = self.kernel();
        Matrix::from_fn(self.cols, k.len(), |i, j| k[j][i].clone())
    }

    /// One solution of `self * x = rhs` (free variables set to zero).
    pub fn solve(&self, rhs: &Self) -> Result<Self, ExactError> {
        if rhs.rows != self.rows {
            return Err(ExactError::Shape("rhs row count".into()));
        }
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(ExactError::Inconsistent);
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Ok(x)
    }

    pub fn det(&self) -> Result<T, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut prev = T::one();
        let mut sign = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Ok(T::zero()) };
            if p != c {
                a.swap(c, p);
                sign = -sign;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let v = a[c][c].clone() * a[i][j].clone() - a[i][c].clone() * a[c][j].clone();
                    a[i][j] = v / prev.clone();
                }
                a[i][c] = T::zero();
            }
            prev = a[c][c].clone();
        }
        Ok(if n == 0 { T::one() } else { sign * prev })
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ExactError::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    /// Commutator `self*o - o*self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, k| acc + self[(k, k)].clone())
    }
}

impl Matrix<GaussRational> {
    /// Conjugate transpose over Q(i).
    pub fn dagger(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// Serialized as a list of rows. An empty list of rows cannot carry a
/// column count, so shape-sensitive schemas carry the shape separately.
impl<T: Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[T]> = (0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]).collect();
        rows.serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<T>> = Vec::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }
}

impl<T> Matrix<T> {
    /// Reshape a deserialized matrix whose row list was empty.
    pub fn with_shape_hint(mut self, rows: usize, cols: usize) -> Result<Self, ExactError> {
        if self.rows == 0 && rows == 0 {
            self.cols = cols;
            return Ok(self);
        }
        if self.rows != rows || self.cols != cols {
            return Err(ExactError::Shape(format!("expected {rows}x{cols}, found {}x{}", self.rows, self.cols)));
        }
        Ok(self)
    }
}
