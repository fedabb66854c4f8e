//! Čech cochain complexes over open covers of finite Alexandrov spaces.
//!
//! Every complex here is built the same way: simplices are sequences of
//! "vertex" opens, the coefficient space of a simplex is the space of sections
//! over the intersection of its vertices, and face maps are restrictions of
//! sections. The Čech complex of a cover, the nerve complex of a poset and the
//! nerve of an intersection poset are all instances.

use std::collections::HashMap;

use serde::Serialize;

use crate::{
  error::{Error, Result},
  field::Field,
  linalg::Matrix,
  poset::Poset,
  presheaf::{SpaceFunctor, Topology},
  sparse::{Reducer, SparseMatrix, SparseVec},
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OpenSet {
  pub points:   Vec<usize>,
  pub topology: Topology,
}

impl OpenSet {
  /// Validates that `points` contains the basis open of each of its points.
  pub fn new(p: &Poset, points: &[usize], topology: Topology) -> Result<Self> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    for &x in &pts {
      if x >= p.len() {
        return Err(Error::Input(format!("point index {x} out of range")));
      }
      if let Some(y) = topology.basis_open(p, x).into_iter().find(|y| pts.binary_search(y).is_err()) {
        return Err(Error::NotOpen(format!("{} is in the set but {} is not", p.name(x), p.name(y))));
      }
    }
    Ok(OpenSet { points: pts, topology })
  }

  pub fn basis(p: &Poset, x: usize, topology: Topology) -> Self { OpenSet { points: topology.basis_open(p, x), topology } }

  pub fn whole(p: &Poset, topology: Topology) -> Self { OpenSet { points: (0..p.len()).collect(), topology } }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
  pub topology: Topology,
  pub members:  Vec<OpenSet>,
}

impl Cover {
  pub fn new(p: &Poset, members: Vec<OpenSet>) -> Result<Self> {
    let topology = members.first().map(|m| m.topology).ok_or_else(|| Error::NotCover("no members".into()))?;
    if members.iter().any(|m| m.topology != topology) {
      return Err(Error::NotCover("members carry different topologies".into()));
    }
    let mut seen = vec![false; p.len()];
    for m in &members {
      for &x in &m.points {
        seen[x] = true;
      }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
      return Err(Error::NotCover(format!("{} is not covered", p.name(x))));
    }
    Ok(Cover { topology, members })
  }

  pub fn len(&self) -> usize { self.members.len() }

  pub fn is_empty(&self) -> bool { self.members.is_empty() }
}

/// The cover by basis opens, in element order.
pub fn canonical_cover(p: &Poset, topology: Topology) -> Cover {
  Cover { topology, members: (0..p.len()).map(|x| OpenSet::basis(p, x, topology)).collect() }
}

/// Sections of a functor over a set of points, as a subspace of `⊕ F(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionSpace<K: Field> {
  pub points: Vec<usize>,
  offsets:    Vec<usize>,
  basis:      Matrix<K>,
  coords:     Vec<usize>,
}

impl<K: Field> SectionSpace<K> {
  pub fn dim(&self) -> usize { self.basis.cols() }

  /// Total dimension of `⊕_{x} F(x)`.
  pub fn total(&self) -> usize { self.basis.rows() }

  /// Basis sections as columns, stacked by point in `points` order.
  pub fn basis(&self) -> &Matrix<K> { &self.basis }

  /// First row of the block of point `x`.
  pub fn offset(&self, x: usize) -> Option<usize> { self.points.binary_search(&x).ok().map(|i| self.offsets[i]) }

  /// Rows on which the basis is the identity: the coordinates of a section in
  /// this basis are its entries there.
  pub fn coordinate_rows(&self) -> &[usize] { &self.coords }

  /// Point and local coordinate of a row.
  pub fn point_of_row(&self, r: usize) -> (usize, usize) {
    let i = self.offsets.partition_point(|&o| o <= r) - 1;
    (self.points[i], r - self.offsets[i])
  }

  /// Matrix of restriction to a subset `other` of the points.
  pub fn restriction_to(&self, other: &SectionSpace<K>) -> Result<Matrix<K>> {
    let rows: Vec<usize> = other
      .coords
      .iter()
      .map(|&r| {
        let (x, l) = other.point_of_row(r);
        self.offset(x).map(|o| o + l).ok_or_else(|| Error::Input(format!("point {x} is not in the larger open")))
      })
      .collect::<Result<_>>()?;
    Ok(self.basis.select_rows(&rows))
  }
}

fn is_open<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, points: &[usize]) -> bool {
  let t = f.topology();
  points.iter().all(|&x| t.basis_open(f.poset(), x).iter().all(|y| points.binary_search(y).is_ok()))
}

/// Sections over a sorted open point set (assumed open).
fn sections_on<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, points: &[usize]) -> SectionSpace<K> {
  let p = f.poset();
  let t = f.topology();
  let field = f.field();
  let mut offsets = Vec::with_capacity(points.len());
  let mut total = 0;
  for &x in points {
    offsets.push(total);
    total += f.stalk_dim(x);
  }
  let generator = points.iter().copied().find(|&x| points.iter().all(|&y| t.generates(p, x, y)));
  if let Some(g) = generator {
    let d = f.stalk_dim(g);
    let mut basis = Matrix::zeros(field, total, d);
    for (i, &y) in points.iter().enumerate() {
      let r = f.restriction(g, y);
      for a in 0..r.rows() {
        for b in 0..d {
          basis.set(offsets[i] + a, b, r.get(a, b).clone());
        }
      }
    }
    let o = offsets[points.binary_search(&g).unwrap()];
    return SectionSpace { points: points.to_vec(), offsets, basis, coords: (o..o + d).collect() };
  }
  let between = |x: usize, y: usize| points.iter().any(|&z| z != x && z != y && t.generates(p, x, z) && t.generates(p, z, y));
  let mut rows: Vec<Vec<K::Elem>> = Vec::new();
  for (i, &x) in points.iter().enumerate() {
    for (k, &y) in points.iter().enumerate() {
      if x == y || !t.generates(p, x, y) || between(x, y) {
        continue;
      }
      let r = f.restriction(x, y);
      for a in 0..r.rows() {
        let mut row = vec![field.zero(); total];
        for b in 0..r.cols() {
          row[offsets[i] + b] = r.get(a, b).clone();
        }
        row[offsets[k] + a] = field.sub(&row[offsets[k] + a], &field.one());
        rows.push(row);
      }
    }
  }
  let system = Matrix::from_rows(field, rows, total).expect("row widths");
  let (basis, coords) = system.kernel_matrix();
  SectionSpace { points: points.to_vec(), offsets, basis, coords }
}

/// Compatible families over `w`: the limit of the functor restricted to `w`.
pub fn sections<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, w: &OpenSet) -> Result<SectionSpace<K>> {
  if w.topology != f.topology() {
    return Err(Error::Variance(format!("{:?} open set for a functor on the {:?} space", w.topology, f.topology())));
  }
  if !is_open(f, &w.points) {
    return Err(Error::NotOpen("point set is not open".into()));
  }
  Ok(sections_on(f, &w.points))
}

/// Section spaces and restriction matrices, memoized by point set.
pub struct SectionCache<'a, K: Field, F: SpaceFunctor<K> + ?Sized> {
  functor:      &'a F,
  spaces:       Vec<SectionSpace<K>>,
  ids:          HashMap<Vec<usize>, usize>,
  restrictions: HashMap<(usize, usize), Matrix<K>>,
}

impl<'a, K: Field, F: SpaceFunctor<K> + ?Sized> SectionCache<'a, K, F> {
  pub fn new(functor: &'a F) -> Self {
    SectionCache { functor, spaces: Vec::new(), ids: HashMap::new(), restrictions: HashMap::new() }
  }

  pub fn functor(&self) -> &'a F { self.functor }

  pub fn field(&self) -> &K { self.functor.field() }

  /// Identifier of the section space over a sorted open point set.
  pub fn id(&mut self, points: &[usize]) -> usize {
    if let Some(&i) = self.ids.get(points) {
      return i;
    }
    let s = sections_on(self.functor, points);
    self.spaces.push(s);
    self.ids.insert(points.to_vec(), self.spaces.len() - 1);
    self.spaces.len() - 1
  }

  pub fn space(&self, id: usize) -> &SectionSpace<K> { &self.spaces[id] }

  /// Restriction from space `from` to space `to`; the points of `to` must lie in `from`.
  pub fn restriction(&mut self, from: usize, to: usize) -> &Matrix<K> {
    if !self.restrictions.contains_key(&(from, to)) {
      let m = if from == to {
        Matrix::identity(self.field(), self.spaces[from].dim())
      } else {
        self.spaces[from].restriction_to(&self.spaces[to]).expect("support containment")
      };
      self.restrictions.insert((from, to), m);
    }
    &self.restrictions[&(from, to)]
  }
}

/// One summand of a cochain space: a simplex and its coefficient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
  pub label: Vec<usize>,
  pub dim:   usize,
}

/// Cochain spaces `C^0..C^max` with differentials `δ_n : C^n -> C^{n+1}` for `n < max`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex<K: Field> {
  field:     K,
  summands:  Vec<Vec<Summand>>,
  offsets:   Vec<Vec<usize>>,
  dims:      Vec<usize>,
  delta:     Vec<SparseMatrix<K>>,
}

impl<K: Field> CochainComplex<K> {
  pub fn new(field: &K, summands: Vec<Vec<Summand>>, delta: Vec<SparseMatrix<K>>) -> Self {
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    for s in &summands {
      let mut o = Vec::with_capacity(s.len());
      let mut t = 0;
      for m in s {
        o.push(t);
        t += m.dim;
      }
      offsets.push(o);
      dims.push(t);
    }
    assert_eq!(delta.len() + 1, summands.len(), "one differential per degree below the top");
    CochainComplex { field: field.clone(), summands, offsets, dims, delta }
  }

  pub fn field(&self) -> &K { &self.field }

  pub fn max_degree(&self) -> usize { self.summands.len() - 1 }

  pub fn dim(&self, n: usize) -> usize { self.dims[n] }

  pub fn dims(&self) -> &[usize] { &self.dims }

  pub fn summands(&self, n: usize) -> &[Summand] { &self.summands[n] }

  pub fn offset(&self, n: usize, i: usize) -> usize { self.offsets[n][i] }

  pub fn delta(&self, n: usize) -> &SparseMatrix<K> { &self.delta[n] }

  /// First degree `n` with `δ_{n+1} δ_n ≠ 0`.
  pub fn check_d_squared(&self) -> std::result::Result<(), usize> {
    for n in 0..self.delta.len().saturating_sub(1) {
      if !self.delta[n + 1].mul(&self.delta[n]).is_zero() {
        return Err(n);
      }
    }
    Ok(())
  }

  /// `dim H^n` for `n <= up_to`; the top degree of the truncation is refused.
  pub fn cohomology_dims(&self, up_to: usize) -> Result<Vec<usize>> {
    if up_to >= self.max_degree() {
      return Err(Error::Degree(up_to, self.max_degree()));
    }
    let ranks: Vec<usize> = (0..=up_to).map(|n| self.delta[n].rank()).collect();
    Ok((0..=up_to).map(|n| self.dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect())
  }

  /// Basis of the cocycles in degree `n`.
  pub fn cocycles(&self, n: usize) -> Vec<SparseVec<K::Elem>> { self.delta[n].kernel().0 }

  /// Reducer preloaded with the coboundaries in degree `n`.
  pub fn coboundaries(&self, n: usize) -> Reducer<K> {
    let mut red = Reducer::new(&self.field, self.dims[n]);
    if n > 0 {
      for col in self.delta[n - 1].transpose().rows_iter() {
        red.insert(col.clone());
      }
    }
    red
  }
}

impl<K: Field> SparseMatrix<K> {
  pub fn rows_iter(&self) -> impl Iterator<Item = &SparseVec<K::Elem>> { (0..self.nrows()).map(move |i| self.row(i)) }
}

/// Rank of the map induced on `H^n` by a degree-`n` map `f : C^n -> D^n` sending
/// cocycles to cocycles. Cocycles of `c` must be supplied.
pub fn induced_rank<K: Field>(cocycles: &[SparseVec<K::Elem>], f: &SparseMatrix<K>, d: &CochainComplex<K>, n: usize) -> usize {
  let mut red = d.coboundaries(n);
  let base = red.rank();
  for z in cocycles {
    red.insert(f.mul_vec(z));
  }
  red.rank() - base
}

/// A cochain complex whose simplices are sequences of vertex opens.
pub struct SupportedComplex<K: Field> {
  pub complex:  CochainComplex<K>,
  /// Section space identifier of each simplex, per degree.
  pub supports: Vec<Vec<usize>>,
  index:        Vec<HashMap<Vec<usize>, usize>>,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> { a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect() }

impl<K: Field> SupportedComplex<K> {
  /// `simplices[n]` lists degree-`n` simplices as sequences of vertex ids into
  /// `vertex_opens`; faces of listed simplices must be listed, and every
  /// support must be nonempty.
  pub fn build<F: SpaceFunctor<K> + ?Sized>(
    cache: &mut SectionCache<'_, K, F>,
    vertex_opens: &[Vec<usize>],
    simplices: Vec<Vec<Vec<usize>>>,
  ) -> Self {
    let field = cache.field().clone();
    let mut supports = Vec::new();
    let mut index = Vec::new();
    let mut summands = Vec::new();
    for level in &simplices {
      let mut sup = Vec::with_capacity(level.len());
      let mut idx = HashMap::with_capacity(level.len());
      let mut sm = Vec::with_capacity(level.len());
      for (i, s) in level.iter().enumerate() {
        let pts = s[1..].iter().fold(vertex_opens[s[0]].clone(), |acc, &v| intersect(&acc, &vertex_opens[v]));
        debug_assert!(!pts.is_empty());
        let id = cache.id(&pts);
        sup.push(id);
        idx.insert(s.clone(), i);
        sm.push(Summand { label: s.clone(), dim: cache.space(id).dim() });
      }
      supports.push(sup);
      index.push(idx);
      summands.push(sm);
    }
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    for sm in &summands {
      let mut t = 0;
      offsets.push(sm.iter().map(|m| {
        let o = t;
        t += m.dim;
        o
      }).collect());
    }
    let mut delta = Vec::new();
    for n in 0..simplices.len().saturating_sub(1) {
      let rows: usize = summands[n + 1].iter().map(|m| m.dim).sum();
      let cols: usize = summands[n].iter().map(|m| m.dim).sum();
      let mut trip = Vec::new();
      for (si, s) in simplices[n + 1].iter().enumerate() {
        for i in 0..s.len() {
          let mut face = s.clone();
          face.remove(i);
          let ti = index[n][&face];
          let sign = if i % 2 == 0 { field.one() } else { field.neg(&field.one()) };
          let r = cache.restriction(supports[n][ti], supports[n + 1][si]);
          push_block(&field, &mut trip, offsets[n + 1][si], offsets[n][ti], &sign, r);
        }
      }
      delta.push(SparseMatrix::from_triplets(&field, rows, cols, trip));
    }
    SupportedComplex { complex: CochainComplex::new(&field, summands, delta), supports, index }
  }

  pub fn simplex_index(&self, n: usize, s: &[usize]) -> Option<usize> { self.index[n].get(s).copied() }

  pub fn simplices(&self, n: usize) -> impl Iterator<Item = &Vec<usize>> { self.complex.summands(n).iter().map(|s| &s.label) }
}

fn push_block<K: Field>(f: &K, trip: &mut Vec<(usize, usize, K::Elem)>, r0: usize, c0: usize, coeff: &K::Elem, m: &Matrix<K>) {
  for a in 0..m.rows() {
    for b in 0..m.cols() {
      let v = m.get(a, b);
      if !f.is_zero(v) {
        trip.push((r0 + a, c0 + b, f.mul(coeff, v)));
      }
    }
  }
}

/// Integer combination of source simplices attached to each target simplex.
pub type LocalMap = Vec<Vec<(usize, i64)>>;

/// Assembles a local operator `C^{ns}(src) -> C^{nt}(dst)`: the block for a
/// pair of simplices is the coefficient times the restriction from the source
/// support to the target support.
pub fn assemble<K: Field, F: SpaceFunctor<K> + ?Sized>(
  cache: &mut SectionCache<'_, K, F>,
  src: &SupportedComplex<K>,
  ns: usize,
  dst: &SupportedComplex<K>,
  nt: usize,
  map: &LocalMap,
) -> SparseMatrix<K> {
  let field = cache.field().clone();
  let mut trip = Vec::new();
  for (t, terms) in map.iter().enumerate() {
    for &(s, c) in terms {
      if c == 0 {
        continue;
      }
      let coeff = field.from_i64(c);
      let r = cache.restriction(src.supports[ns][s], dst.supports[nt][t]);
      push_block(&field, &mut trip, dst.complex.offset(nt, t), src.complex.offset(ns, s), &coeff, r);
    }
  }
  SparseMatrix::from_triplets(&field, dst.complex.dim(nt), src.complex.dim(ns), trip)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CechMode {
  /// All tuples, repeats allowed.
  Full,
  /// Strictly increasing tuples.
  Alternating,
}

/// Tuples of member indices with nonempty intersection, per degree.
pub fn cover_tuples(cover: &Cover, max_degree: usize, mode: CechMode) -> Vec<Vec<Vec<usize>>> {
  let opens: Vec<&Vec<usize>> = cover.members.iter().map(|m| &m.points).collect();
  let mut levels: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![opens
    .iter()
    .enumerate()
    .filter(|(_, o)| !o.is_empty())
    .map(|(i, o)| (vec![i], (*o).clone()))
    .collect()];
  for _ in 0..max_degree {
    let mut next = Vec::new();
    for (t, pts) in levels.last().unwrap() {
      let start = match mode {
        CechMode::Full => 0,
        CechMode::Alternating => t.last().unwrap() + 1,
      };
      for j in start..opens.len() {
        let q = intersect(pts, opens[j]);
        if !q.is_empty() {
          let mut u = t.clone();
          u.push(j);
          next.push((u, q));
        }
      }
    }
    levels.push(next);
  }
  levels.into_iter().map(|l| l.into_iter().map(|(t, _)| t).collect()).collect()
}

fn check_cover_functor<K: Field, F: SpaceFunctor<K> + ?Sized>(cover: &Cover, f: &F) -> Result<()> {
  if cover.topology != f.topology() {
    return Err(Error::Variance(format!("{:?} cover for a functor on the {:?} space", cover.topology, f.topology())));
  }
  Ok(())
}

/// The Čech complex of `cover` with coefficients in `f`, built to `max_degree`.
pub fn cech_supported<K: Field, F: SpaceFunctor<K> + ?Sized>(
  cache: &mut SectionCache<'_, K, F>,
  cover: &Cover,
  max_degree: usize,
  mode: CechMode,
) -> Result<SupportedComplex<K>> {
  check_cover_functor(cover, cache.functor())?;
  let opens: Vec<Vec<usize>> = cover.members.iter().map(|m| m.points.clone()).collect();
  Ok(SupportedComplex::build(cache, &opens, cover_tuples(cover, max_degree, mode)))
}

pub fn cech_complex<K: Field, F: SpaceFunctor<K> + ?Sized>(cover: &Cover, f: &F, max_degree: usize, mode: CechMode) -> Result<CochainComplex<K>> {
  let mut cache = SectionCache::new(f);
  Ok(cech_supported(&mut cache, cover, max_degree, mode)?.complex)
}

pub fn cohomology_dims<K: Field>(c: &CochainComplex<K>, up_to: usize) -> Result<Vec<usize>> { c.cohomology_dims(up_to) }

/// Čech cohomology of the canonical cover in the functor's topology, degrees `0..=up_to`.
pub fn canonical_cohomology<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, up_to: usize) -> Result<Vec<usize>> {
  let cover = canonical_cover(f.poset(), f.topology());
  cech_complex(&cover, f, up_to + 1, CechMode::Alternating)?.cohomology_dims(up_to)
}

/// A functor restricted to an induced sub-poset.
pub struct SubFunctor<'a, F: ?Sized> {
  inner: &'a F,
  idx:   Vec<usize>,
  poset: Poset,
}

impl<'a, F: ?Sized> SubFunctor<'a, F> {
  pub fn new<K: Field>(inner: &'a F, idx: &[usize]) -> Self
  where F: SpaceFunctor<K> {
    SubFunctor { inner, idx: idx.to_vec(), poset: inner.poset().sub_poset(idx) }
  }
}

impl<K: Field, F: SpaceFunctor<K> + ?Sized> SpaceFunctor<K> for SubFunctor<'_, F> {
  fn poset(&self) -> &Poset { &self.poset }

  fn field(&self) -> &K { self.inner.field() }

  fn topology(&self) -> Topology { self.inner.topology() }

  fn stalk_dim(&self, x: usize) -> usize { self.inner.stalk_dim(self.idx[x]) }

  fn restriction(&self, x: usize, y: usize) -> Matrix<K> { self.inner.restriction(self.idx[x], self.idx[y]) }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelativeReport {
  pub relative_dims:   Vec<usize>,
  pub absolute_dims:   Vec<usize>,
  pub subspace_dims:   Vec<usize>,
  pub rank_inclusion:  Vec<usize>,
  pub rank_restriction: Vec<usize>,
  pub rank_connecting: Vec<usize>,
  /// Degrees at which the long exact sequence fails to be exact.
  pub inexact_at:      Vec<usize>,
}

impl RelativeReport {
  pub fn exact(&self) -> bool { self.inexact_at.is_empty() }
}

/// The relative complex of the pair `(B, A)`: per tuple, the kernel of the
/// restriction from sections over `U_u` to sections of the restricted functor
/// over `U_u ∩ A`. Also computes the long exact sequence ranks up to `up_to`.
pub fn relative_complex<K: Field, F: SpaceFunctor<K> + ?Sized>(
  f: &F,
  a_points: &[usize],
  cover: &Cover,
  up_to: usize,
  mode: CechMode,
) -> Result<(CochainComplex<K>, RelativeReport)> {
  check_cover_functor(cover, f)?;
  let max_degree = up_to + 1;
  let field = f.field().clone();
  let mut a_idx = a_points.to_vec();
  a_idx.sort_unstable();
  a_idx.dedup();
  let pos: HashMap<usize, usize> = a_idx.iter().enumerate().map(|(k, &x)| (x, k)).collect();
  let sub = SubFunctor::new(f, &a_idx);
  let mut bcache = SectionCache::new(f);
  let mut acache = SectionCache::new(&sub);
  let tuples = cover_tuples(cover, max_degree, mode);
  let opens: Vec<Vec<usize>> = cover.members.iter().map(|m| m.points.clone()).collect();
  let abs = SupportedComplex::build(&mut bcache, &opens, tuples.clone());
  let a_opens: Vec<Vec<usize>> = opens.iter().map(|o| o.iter().filter_map(|x| pos.get(x).copied()).collect()).collect();
  let a_tuples: Vec<Vec<Vec<usize>>> = tuples
    .iter()
    .map(|l| l.iter().filter(|t| t[1..].iter().fold(a_opens[t[0]].clone(), |acc, &v| intersect(&acc, &a_opens[v])).len() > 0).cloned().collect())
    .collect();
  let sub_c = SupportedComplex::build(&mut acache, &a_opens, a_tuples);

  // Per tuple: the restriction r_u, its kernel, and a right inverse.
  struct Local<K: Field> {
    kernel:   Matrix<K>,
    free:     Vec<usize>,
    restrict: Option<Matrix<K>>,
    lift:     Option<Matrix<K>>,
  }
  let mut locals: Vec<Vec<Local<K>>> = Vec::new();
  for (n, level) in tuples.iter().enumerate() {
    let mut out = Vec::new();
    for (i, t) in level.iter().enumerate() {
      let bs = bcache.space(abs.supports[n][i]).clone();
      match sub_c.simplex_index(n, t) {
        None => out.push(Local { kernel: Matrix::identity(&field, bs.dim()), free: (0..bs.dim()).collect(), restrict: None, lift: None }),
        Some(j) => {
          let as_ = acache.space(sub_c.supports[n][j]);
          let rows: Vec<usize> = as_
            .coordinate_rows()
            .iter()
            .map(|&r| {
              let (x, l) = as_.point_of_row(r);
              bs.offset(a_idx[x]).unwrap() + l
            })
            .collect();
          let r = bs.basis().select_rows(&rows);
          if r.rank() != r.rows() {
            return Err(Error::NotSurjective(format!("sections over tuple {t:?}"), "its trace on A".into()));
          }
          let (kernel, free) = r.kernel_matrix();
          let lift = r.solve(&Matrix::identity(&field, r.rows())).expect("surjective");
          out.push(Local { kernel, free, restrict: Some(r), lift: Some(lift) });
        },
      }
    }
    locals.push(out);
  }

  let rel_summands: Vec<Vec<Summand>> =
    tuples.iter().enumerate().map(|(n, l)| l.iter().enumerate().map(|(i, t)| Summand { label: t.clone(), dim: locals[n][i].kernel.cols() }).collect()).collect();
  let rel_offsets: Vec<Vec<usize>> = rel_summands
    .iter()
    .map(|l| {
      let mut t = 0;
      l.iter().map(|m| { let o = t; t += m.dim; o }).collect()
    })
    .collect();
  let rel_dim = |n: usize| rel_summands[n].iter().map(|m| m.dim).sum::<usize>();

  // Inclusion i_n : C^n(B,A) -> C^n(B) and restriction r_n : C^n(B) -> C^n(A).
  let mut incl = Vec::new();
  let mut restr = Vec::new();
  let mut lifts = Vec::new();
  let mut coords = Vec::new();
  for n in 0..=max_degree {
    let mut ti = Vec::new();
    let mut tr = Vec::new();
    let mut tl = Vec::new();
    let mut tc = Vec::new();
    for (i, t) in tuples[n].iter().enumerate() {
      let loc = &locals[n][i];
      let bo = abs.complex.offset(n, i);
      let one = field.one();
      push_block(&field, &mut ti, bo, rel_offsets[n][i], &one, &loc.kernel);
      let sel = Matrix::from_fn(&field, loc.free.len(), loc.kernel.rows(), |a, b| if loc.free[a] == b { field.one() } else { field.zero() });
      push_block(&field, &mut tc, rel_offsets[n][i], bo, &one, &sel);
      if let (Some(r), Some(l)) = (&loc.restrict, &loc.lift) {
        let j = sub_c.simplex_index(n, t).unwrap();
        let ao = sub_c.complex.offset(n, j);
        push_block(&field, &mut tr, ao, bo, &one, r);
        push_block(&field, &mut tl, bo, ao, &one, l);
      }
    }
    let bd = abs.complex.dim(n);
    let ad = sub_c.complex.dim(n);
    incl.push(SparseMatrix::from_triplets(&field, bd, rel_dim(n), ti));
    restr.push(SparseMatrix::from_triplets(&field, ad, bd, tr));
    lifts.push(SparseMatrix::from_triplets(&field, bd, ad, tl));
    coords.push(SparseMatrix::from_triplets(&field, rel_dim(n), bd, tc));
  }
  let rel_delta: Vec<SparseMatrix<K>> = (0..max_degree).map(|n| coords[n + 1].mul(&abs.complex.delta(n).mul(&incl[n]))).collect();
  let rel = CochainComplex::new(&field, rel_summands, rel_delta);

  let hb = abs.complex.cohomology_dims(up_to)?;
  let ha = sub_c.complex.cohomology_dims(up_to)?;
  let hr = rel.cohomology_dims(up_to)?;
  let mut ri = Vec::new();
  let mut rr = Vec::new();
  let mut rd = Vec::new();
  for n in 0..=up_to {
    ri.push(induced_rank(&rel.cocycles(n), &incl[n], &abs.complex, n));
    rr.push(induced_rank(&abs.complex.cocycles(n), &restr[n], &sub_c.complex, n));
    let connecting = coords[n + 1].mul(&abs.complex.delta(n).mul(&lifts[n]));
    rd.push(induced_rank(&sub_c.complex.cocycles(n), &connecting, &rel, n + 1));
  }
  let mut inexact = Vec::new();
  for n in 0..=up_to {
    let prev = if n > 0 { rd[n - 1] } else { 0 };
    if hr[n] != prev + ri[n] || hb[n] != ri[n] + rr[n] || ha[n] != rr[n] + rd[n] {
      inexact.push(n);
    }
  }
  let report = RelativeReport {
    relative_dims:    hr,
    absolute_dims:    hb,
    subspace_dims:    ha,
    rank_inclusion:   ri,
    rank_restriction: rr,
    rank_connecting:  rd,
    inexact_at:       inexact,
  };
  Ok((rel, report))
}
