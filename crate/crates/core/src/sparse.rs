//! Sparse exact matrices for coboundary operators.

use std::collections::{BTreeMap, HashMap};

use crate::{field::Field, linalg::Matrix};

/// Sorted list of `(index, nonzero value)` pairs.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + s*b` for sorted sparse vectors.
pub fn axpy<K: Field>(f: &K, a: &SparseVec<K::Elem>, s: &K::Elem, b: &SparseVec<K::Elem>) -> SparseVec<K::Elem> {
  let mut out = Vec::with_capacity(a.len() + b.len());
  let (mut i, mut j) = (0, 0);
  while i < a.len() || j < b.len() {
    if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
      out.push(a[i].clone());
      i += 1;
    } else if i == a.len() || b[j].0 < a[i].0 {
      let v = f.mul(s, &b[j].1);
      if !f.is_zero(&v) {
        out.push((b[j].0, v));
      }
      j += 1;
    } else {
      let v = f.add(&a[i].1, &f.mul(s, &b[j].1));
      if !f.is_zero(&v) {
        out.push((a[i].0, v));
      }
      i += 1;
      j += 1;
    }
  }
  out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<K: Field> {
  field: K,
  nrows: usize,
  ncols: usize,
  rows:  Vec<SparseVec<K::Elem>>,
}

impl<K: Field> SparseMatrix<K> {
  pub fn zeros(field: &K, nrows: usize, ncols: usize) -> Self {
    SparseMatrix { field: field.clone(), nrows, ncols, rows: vec![Vec::new(); nrows] }
  }

  pub fn identity(field: &K, n: usize) -> Self {
    let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
    SparseMatrix { field: field.clone(), nrows: n, ncols: n, rows }
  }

  /// Builds from unsorted triplets, summing duplicates.
  pub fn from_triplets(field: &K, nrows: usize, ncols: usize, t: impl IntoIterator<Item = (usize, usize, K::Elem)>) -> Self {
    let mut acc: Vec<BTreeMap<usize, K::Elem>> = vec![BTreeMap::new(); nrows];
    for (i, j, v) in t {
      debug_assert!(i < nrows && j < ncols);
      let e = acc[i].entry(j).or_insert_with(|| field.zero());
      *e = field.add(e, &v);
    }
    let rows = acc.into_iter().map(|r| r.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()).collect();
    SparseMatrix { field: field.clone(), nrows, ncols, rows }
  }

  pub fn from_dense(m: &Matrix<K>) -> Self {
    let f = m.field();
    let rows = (0..m.rows())
      .map(|i| m.row(i).iter().enumerate().filter(|(_, v)| !f.is_zero(v)).map(|(j, v)| (j, v.clone())).collect())
      .collect();
    SparseMatrix { field: f.clone(), nrows: m.rows(), ncols: m.cols(), rows }
  }

  pub fn to_dense(&self) -> Matrix<K> {
    let mut m = Matrix::zeros(&self.field, self.nrows, self.ncols);
    for (i, r) in self.rows.iter().enumerate() {
      for (j, v) in r {
        m.set(i, *j, v.clone());
      }
    }
    m
  }

  pub fn field(&self) -> &K { &self.field }

  pub fn nrows(&self) -> usize { self.nrows }

  pub fn ncols(&self) -> usize { self.ncols }

  pub fn row(&self, i: usize) -> &SparseVec<K::Elem> { &self.rows[i] }

  pub fn nnz(&self) -> usize { self.rows.iter().map(Vec::len).sum() }

  pub fn is_zero(&self) -> bool { self.rows.iter().all(Vec::is_empty) }

  pub fn get(&self, i: usize, j: usize) -> K::Elem {
    match self.rows[i].binary_search_by_key(&j, |e| e.0) {
      Ok(k) => self.rows[i][k].1.clone(),
      Err(_) => self.field.zero(),
    }
  }

  pub fn transpose(&self) -> Self {
    let mut rows = vec![Vec::new(); self.ncols];
    for (i, r) in self.rows.iter().enumerate() {
      for (j, v) in r {
        rows[*j].push((i, v.clone()));
      }
    }
    SparseMatrix { field: self.field.clone(), nrows: self.ncols, ncols: self.nrows, rows }
  }

  pub fn mul(&self, o: &Self) -> Self {
    assert_eq!(self.ncols, o.nrows, "sparse product shape mismatch");
    let f = &self.field;
    let rows = self
      .rows
      .iter()
      .map(|r| {
        let mut acc: BTreeMap<usize, K::Elem> = BTreeMap::new();
        for (k, a) in r {
          for (j, b) in &o.rows[*k] {
            let e = acc.entry(*j).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(a, b));
          }
        }
        acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
      })
      .collect();
    SparseMatrix { field: f.clone(), nrows: self.nrows, ncols: o.ncols, rows }
  }

  pub fn add(&self, o: &Self) -> Self {
    assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols), "sparse sum shape mismatch");
    let f = &self.field;
    let one = f.one();
    let rows = self.rows.iter().zip(&o.rows).map(|(a, b)| axpy(f, a, &one, b)).collect();
    SparseMatrix { field: f.clone(), nrows: self.nrows, ncols: self.ncols, rows }
  }

  pub fn neg(&self) -> Self {
    let f = &self.field;
    let rows = self.rows.iter().map(|r| r.iter().map(|(j, v)| (*j, f.neg(v))).collect()).collect();
    SparseMatrix { field: f.clone(), nrows: self.nrows, ncols: self.ncols, rows }
  }

  pub fn sub(&self, o: &Self) -> Self { self.add(&o.neg()) }

  pub fn mul_vec(&self, v: &SparseVec<K::Elem>) -> SparseVec<K::Elem> {
    let f = &self.field;
    let dense: HashMap<usize, &K::Elem> = v.iter().map(|(i, x)| (*i, x)).collect();
    let mut out = Vec::new();
    for (i, r) in self.rows.iter().enumerate() {
      let mut acc = f.zero();
      for (j, a) in r {
        if let Some(b) = dense.get(j) {
          acc = f.add(&acc, &f.mul(a, b));
        }
      }
      if !f.is_zero(&acc) {
        out.push((i, acc));
      }
    }
    out
  }

  /// Builds a matrix whose columns are the given sparse vectors.
  pub fn from_columns(field: &K, nrows: usize, cols: &[SparseVec<K::Elem>]) -> Self {
    let t = cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone())));
    Self::from_triplets(field, nrows, cols.len(), t)
  }

  pub fn rank(&self) -> usize {
    let (vecs, n) = if self.nrows <= self.ncols { (&self.rows, self.ncols) } else { (&self.transpose().rows, self.nrows) };
    let mut red = Reducer::new(&self.field, n);
    for r in vecs.clone() {
      red.insert(r);
    }
    red.rank()
  }

  /// Kernel basis as columns, with the free columns that index it.
  ///
  /// The basis vector for free column `c` is 1 at `c` and 0 at the other free
  /// columns.
  pub fn kernel(&self) -> (Vec<SparseVec<K::Elem>>, Vec<usize>) {
    let f = &self.field;
    let mut red = Reducer::new(f, self.ncols);
    for r in &self.rows {
      red.insert(r.clone());
    }
    red.fully_reduce();
    let free: Vec<usize> = (0..self.ncols).filter(|c| !red.pivots.contains_key(c)).collect();
    let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let mut out: Vec<Vec<(usize, K::Elem)>> = free.iter().map(|c| vec![(*c, f.one())]).collect();
    for (p, row) in &red.pivots {
      for (c, v) in row.iter().skip(1) {
        if let Some(&k) = pos.get(c) {
          out[k].push((*p, f.neg(v)));
        }
      }
    }
    for v in &mut out {
      v.sort_by_key(|e| e.0);
    }
    (out, free)
  }
}

/// Incremental row echelon form keyed by leading column.
pub struct Reducer<K: Field> {
  field:  K,
  width:  usize,
  pivots: BTreeMap<usize, SparseVec<K::Elem>>,
}

impl<K: Field> Reducer<K> {
  pub fn new(field: &K, width: usize) -> Self { Reducer { field: field.clone(), width, pivots: BTreeMap::new() } }

  pub fn width(&self) -> usize { self.width }

  pub fn rank(&self) -> usize { self.pivots.len() }

  /// Reduces `v` against the stored rows.
  pub fn reduce(&self, mut v: SparseVec<K::Elem>) -> SparseVec<K::Elem> {
    let f = &self.field;
    let mut start = 0;
    loop {
      let Some(k) = (start..v.len()).find(|&k| self.pivots.contains_key(&v[k].0)) else { return v };
      let (c, a) = v[k].clone();
      let p = &self.pivots[&c];
      v = axpy(f, &v, &f.neg(&a), p);
      start = k;
    }
  }

  /// Adds `v`; returns whether it was independent of the stored rows.
  pub fn insert(&mut self, v: SparseVec<K::Elem>) -> bool {
    let f = &self.field;
    let mut v = v;
    loop {
      let Some((c, a)) = v.first().cloned() else { return false };
      match self.pivots.get(&c) {
        Some(p) => v = axpy(f, &v, &f.neg(&a), p),
        None => {
          let inv = f.inv(&a).expect("nonzero lead");
          let v: SparseVec<K::Elem> = v.into_iter().map(|(j, x)| (j, f.mul(&x, &inv))).collect();
          self.pivots.insert(c, v);
          return true;
        },
      }
    }
  }

  /// Clears every entry above each pivot, giving reduced row echelon form.
  pub fn fully_reduce(&mut self) {
    let f = self.field.clone();
    let keys: Vec<usize> = self.pivots.keys().rev().cloned().collect();
    for c in keys {
      let mut row = self.pivots.remove(&c).unwrap();
      let mut k = 1;
      while k < row.len() {
        let (j, a) = row[k].clone();
        if let Some(p) = self.pivots.get(&j) {
          row = axpy(&f, &row, &f.neg(&a), p);
        } else {
          k += 1;
        }
      }
      self.pivots.insert(c, row);
    }
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::field::{PrimeField, Rationals};

  #[test]
  fn dense_roundtrip_and_products() {
    let d = Matrix::from_i64(&Rationals, &[vec![1, 0, 2], vec![0, 0, 0], vec![3, 1, 0]]);
    let s = SparseMatrix::from_dense(&d);
    assert_eq!(s.to_dense(), d);
    assert_eq!(s.mul(&s.transpose()).to_dense(), d.mul(&d.transpose()));
    assert_eq!(s.rank(), 2);
    assert!(s.sub(&s).is_zero());
  }

  #[test]
  fn kernel_annihilates() {
    let f = PrimeField::new(1009).unwrap();
    let d = Matrix::from_i64(&f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
    let s = SparseMatrix::from_dense(&d);
    let (k, free) = s.kernel();
    assert_eq!(k.len(), 2);
    assert_eq!(free.len(), 2);
    for v in &k {
      assert!(s.mul_vec(v).is_empty());
    }
  }

  #[test]
  fn reducer_detects_dependence() {
    let q = Rationals;
    let mut r = Reducer::new(&q, 3);
    assert!(r.insert(vec![(0, q.from_i64(1)), (1, q.from_i64(1))]));
    assert!(r.insert(vec![(1, q.from_i64(2))]));
    assert!(!r.insert(vec![(0, q.from_i64(3)), (1, q.from_i64(7))]));
    assert_eq!(r.rank(), 2);
  }
}
