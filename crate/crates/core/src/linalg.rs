//! Dense exact matrices and subspaces in canonical echelon form.

use crate::{
  error::{Error, Result},
  field::Field,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
  field: K,
  rows:  usize,
  cols:  usize,
  data:  Vec<K::Elem>,
}

/// Result of Gauss-Jordan elimination.
pub struct Rref<K: Field> {
  pub matrix: Matrix<K>,
  pub pivots: Vec<usize>,
}

impl<K: Field> Matrix<K> {
  pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
    Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
  }

  pub fn identity(field: &K, n: usize) -> Self {
    let mut m = Self::zeros(field, n, n);
    for i in 0..n {
      m.set(i, i, field.one());
    }
    m
  }

  pub fn from_fn(field: &K, rows: usize, cols: usize, f: impl Fn(usize, usize) -> K::Elem) -> Self {
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
      for j in 0..cols {
        data.push(f(i, j));
      }
    }
    Matrix { field: field.clone(), rows, cols, data }
  }

  pub fn from_rows(field: &K, rows: Vec<Vec<K::Elem>>, cols: usize) -> Result<Self> {
    let r = rows.len();
    let mut data = Vec::with_capacity(r * cols);
    for (i, row) in rows.into_iter().enumerate() {
      if row.len() != cols {
        return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
      }
      data.extend(row);
    }
    Ok(Matrix { field: field.clone(), rows: r, cols, data })
  }

  pub fn from_i64(field: &K, rows: &[Vec<i64>]) -> Self {
    let cols = rows.first().map_or(0, |r| r.len());
    Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
  }

  pub fn field(&self) -> &K { &self.field }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn get(&self, i: usize, j: usize) -> &K::Elem { &self.data[i * self.cols + j] }

  pub fn set(&mut self, i: usize, j: usize, v: K::Elem) { self.data[i * self.cols + j] = v; }

  pub fn row(&self, i: usize) -> &[K::Elem] { &self.data[i * self.cols..(i + 1) * self.cols] }

  pub fn column(&self, j: usize) -> Vec<K::Elem> {
    (0..self.rows).map(|i| self.get(i, j).clone()).collect()
  }

  pub fn is_zero(&self) -> bool { self.data.iter().all(|x| self.field.is_zero(x)) }

  pub fn transpose(&self) -> Self {
    Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
  }

  pub fn mul(&self, o: &Self) -> Self {
    assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
    let f = &self.field;
    let mut out = Self::zeros(f, self.rows, o.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = self.get(i, k);
        if f.is_zero(a) {
          continue;
        }
        for j in 0..o.cols {
          let b = o.get(k, j);
          if f.is_zero(b) {
            continue;
          }
          let v = f.add(out.get(i, j), &f.mul(a, b));
          out.set(i, j, v);
        }
      }
    }
    out
  }

  pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
    assert_eq!(self.cols, v.len());
    let f = &self.field;
    (0..self.rows)
      .map(|i| {
        let mut acc = f.zero();
        for (a, b) in self.row(i).iter().zip(v) {
          if !f.is_zero(a) && !f.is_zero(b) {
            acc = f.add(&acc, &f.mul(a, b));
          }
        }
        acc
      })
      .collect()
  }

  pub fn add(&self, o: &Self) -> Self {
    assert_eq!((self.rows, self.cols), (o.rows, o.cols));
    let f = &self.field;
    Matrix {
      field: f.clone(),
      rows:  self.rows,
      cols:  self.cols,
      data:  self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect(),
    }
  }

  pub fn sub(&self, o: &Self) -> Self { self.add(&o.neg()) }

  pub fn neg(&self) -> Self {
    let f = &self.field;
    Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.neg(a)).collect() }
  }

  pub fn hstack(&self, o: &Self) -> Self {
    assert_eq!(self.rows, o.rows);
    Self::from_fn(&self.field, self.rows, self.cols + o.cols, |i, j| {
      if j < self.cols {
        self.get(i, j).clone()
      } else {
        o.get(i, j - self.cols).clone()
      }
    })
  }

  pub fn vstack(&self, o: &Self) -> Self {
    assert_eq!(self.cols, o.cols);
    let mut data = self.data.clone();
    data.extend(o.data.iter().cloned());
    Matrix { field: self.field.clone(), rows: self.rows + o.rows, cols: self.cols, data }
  }

  pub fn select_rows(&self, idx: &[usize]) -> Self {
    Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
  }

  pub fn select_cols(&self, idx: &[usize]) -> Self {
    Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
  }

  /// Gauss-Jordan elimination with the first nonzero entry as pivot.
  pub fn rref(&self) -> Rref<K> {
    let f = &self.field;
    let mut m = self.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
      if r == m.rows {
        break;
      }
      let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
      if p != r {
        for j in 0..m.cols {
          m.data.swap(p * m.cols + j, r * m.cols + j);
        }
      }
      let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
      for j in c..m.cols {
        let v = f.mul(m.get(r, j), &inv);
        m.set(r, j, v);
      }
      for i in 0..m.rows {
        if i == r {
          continue;
        }
        let factor = m.get(i, c).clone();
        if f.is_zero(&factor) {
          continue;
        }
        for j in c..m.cols {
          let rv = m.get(r, j);
          if f.is_zero(rv) {
            continue;
          }
          let v = f.sub_mul(m.get(i, j), &factor, rv);
          m.set(i, j, v);
        }
      }
      pivots.push(c);
      r += 1;
    }
    Rref { matrix: m, pivots }
  }

  pub fn rank(&self) -> usize { self.rref().pivots.len() }

  /// Columns spanning the kernel, one per free column of the reduced form.
  ///
  /// The basis vector attached to free column `f` is 1 at `f` and 0 at every
  /// other free column, so coordinates of a kernel vector in this basis are
  /// its entries at the free columns.
  pub fn kernel_matrix(&self) -> (Matrix<K>, Vec<usize>) {
    let f = &self.field;
    let Rref { matrix: r, pivots } = self.rref();
    let mut is_pivot = vec![false; self.cols];
    for &p in &pivots {
      is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = Matrix::zeros(f, self.cols, free.len());
    for (j, &fc) in free.iter().enumerate() {
      k.set(fc, j, f.one());
      for (i, &pc) in pivots.iter().enumerate() {
        k.set(pc, j, f.neg(r.get(i, fc)));
      }
    }
    (k, free)
  }

  pub fn kernel_basis(&self) -> Subspace<K> { Subspace::span(&self.kernel_matrix().0) }

  pub fn image_basis(&self) -> Subspace<K> { Subspace::span(self) }

  /// Some `X` with `self * X = b`, or `None` when the system is inconsistent.
  pub fn solve(&self, b: &Self) -> Option<Self> {
    assert_eq!(self.rows, b.rows);
    let f = &self.field;
    let aug = self.hstack(b);
    let Rref { matrix: r, pivots } = aug.rref();
    if pivots.iter().any(|&p| p >= self.cols) {
      return None;
    }
    let mut x = Matrix::zeros(f, self.cols, b.cols);
    for (i, &p) in pivots.iter().enumerate() {
      for j in 0..b.cols {
        x.set(p, j, r.get(i, self.cols + j).clone());
      }
    }
    Some(x)
  }

  pub fn inverse(&self) -> Option<Self> {
    if self.rows != self.cols {
      return None;
    }
    let x = self.solve(&Self::identity(&self.field, self.rows))?;
    if self.rank() == self.rows {
      Some(x)
    } else {
      None
    }
  }

  pub fn to_strings(&self) -> Vec<Vec<String>> {
    (0..self.rows).map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect()).collect()
  }
}

/// A linear subspace of `K^n`, stored by its unique reduced column echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<K: Field> {
  basis:  Matrix<K>,
  pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
  /// The span of the columns of `m`.
  pub fn span(m: &Matrix<K>) -> Self {
    let Rref { matrix: r, pivots } = m.transpose().rref();
    let basis = Matrix::from_fn(m.field(), m.rows(), pivots.len(), |i, j| r.get(j, i).clone());
    Subspace { basis, pivots }
  }

  pub fn zero(field: &K, ambient: usize) -> Self {
    Subspace { basis: Matrix::zeros(field, ambient, 0), pivots: vec![] }
  }

  pub fn full(field: &K, ambient: usize) -> Self {
    Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
  }

  pub fn ambient_dim(&self) -> usize { self.basis.rows() }

  pub fn dim(&self) -> usize { self.basis.cols() }

  pub fn basis(&self) -> &Matrix<K> { &self.basis }

  /// Row indices carrying the leading ones of the echelon basis.
  pub fn pivot_rows(&self) -> &[usize] { &self.pivots }

  fn check(&self, o: &Self) -> Result<()> {
    if self.ambient_dim() != o.ambient_dim() {
      return Err(Error::Shape(format!(
        "ambient dimensions {} and {} differ",
        self.ambient_dim(),
        o.ambient_dim()
      )));
    }
    Ok(())
  }

  pub fn sum(&self, o: &Self) -> Result<Self> {
    self.check(o)?;
    Ok(Self::span(&self.basis.hstack(&o.basis)))
  }

  pub fn intersect(&self, o: &Self) -> Result<Self> {
    self.check(o)?;
    let block = self.basis.hstack(&o.basis.neg());
    let (k, _) = block.kernel_matrix();
    let coeffs = k.select_rows(&(0..self.dim()).collect::<Vec<_>>());
    Ok(Self::span(&self.basis.mul(&coeffs)))
  }

  pub fn contains_vector(&self, v: &[K::Elem]) -> bool {
    let col = Matrix::from_fn(self.basis.field(), v.len(), 1, |i, _| v[i].clone());
    self.basis.solve(&col).is_some()
  }

  /// Whether `self ⊆ o`.
  pub fn is_contained(&self, o: &Self) -> Result<bool> {
    self.check(o)?;
    Ok(o.basis.solve(&self.basis).is_some())
  }

  /// Standard basis vectors at the non-pivot rows; a deterministic supplement.
  pub fn canonical_complement(&self) -> Self {
    let f = self.basis.field();
    let n = self.ambient_dim();
    let mut is_pivot = vec![false; n];
    for &p in &self.pivots {
      is_pivot[p] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
    let basis = Matrix::from_fn(f, n, rest.len(), |i, j| if i == rest[j] { f.one() } else { f.zero() });
    Subspace { basis, pivots: rest }
  }
}
