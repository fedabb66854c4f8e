//! Injective presheaves, copresheaves and interaction decompositions.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::{
  error::{Error, Result},
  field::Field,
  linalg::{Matrix, Subspace},
  poset::{mobius, Hypergraph, Poset},
};

/// Which Alexandrov topology a functor is a sheaf on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Topology {
  /// Basis opens `U_a = {b : a -> b}`; carries copresheaves.
  Lower,
  /// Basis opens `U^a = {b : b -> a}`; carries presheaves.
  Upper,
}

impl Topology {
  /// Whether `y` lies in the basis open generated by `x`.
  pub fn generates(self, p: &Poset, x: usize, y: usize) -> bool {
    match self {
      Topology::Lower => p.arrow(x, y),
      Topology::Upper => p.arrow(y, x),
    }
  }

  pub fn basis_open(self, p: &Poset, x: usize) -> Vec<usize> {
    match self {
      Topology::Lower => p.down_set(x),
      Topology::Upper => p.up_set(x),
    }
  }
}

/// A functor seen as a sheaf on an Alexandrov space: a stalk per point and a
/// restriction from each point to every point of its basis open.
pub trait SpaceFunctor<K: Field> {
  fn poset(&self) -> &Poset;
  fn field(&self) -> &K;
  fn topology(&self) -> Topology;
  fn stalk_dim(&self, x: usize) -> usize;
  /// The map `F(x) -> F(y)` for `y` in the basis open of `x`.
  fn restriction(&self, x: usize, y: usize) -> Matrix<K>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variance {
  Contra,
  Co,
}

/// Dimensions and structure maps on every arrow, closed under composition.
#[derive(Clone, Debug, PartialEq)]
struct Diagram<K: Field> {
  poset:    Poset,
  field:    K,
  dims:     Vec<usize>,
  maps:     HashMap<(usize, usize), Matrix<K>>,
  variance: Variance,
}

impl<K: Field> Diagram<K> {
  /// Shape of the map stored at arrow `a -> b`.
  fn shape(&self, a: usize, b: usize) -> (usize, usize) {
    match self.variance {
      Variance::Contra => (self.dims[a], self.dims[b]),
      Variance::Co => (self.dims[b], self.dims[a]),
    }
  }

  fn compose(&self, ab: &Matrix<K>, bc: &Matrix<K>) -> Matrix<K> {
    match self.variance {
      Variance::Contra => ab.mul(bc),
      Variance::Co => bc.mul(ab),
    }
  }

  fn build(poset: Poset, field: K, dims: Vec<usize>, given: HashMap<(usize, usize), Matrix<K>>, variance: Variance) -> Result<Self> {
    if dims.len() != poset.len() {
      return Err(Error::Shape(format!("{} dimensions for {} elements", dims.len(), poset.len())));
    }
    let mut d = Diagram { poset, field, dims, maps: HashMap::new(), variance };
    for (&(a, b), m) in &given {
      if !d.poset.strict(a, b) {
        return Err(Error::Input(format!("no arrow {}->{}", d.poset.name(a), d.poset.name(b))));
      }
      if (m.rows(), m.cols()) != d.shape(a, b) {
        return Err(Error::Shape(format!(
          "map {}->{} is {}x{}, expected {}x{}",
          d.poset.name(a),
          d.poset.name(b),
          m.rows(),
          m.cols(),
          d.shape(a, b).0,
          d.shape(a, b).1
        )));
      }
    }
    let mut arrows = d.poset.strict_arrows();
    arrows.sort_by_key(|&(a, b)| (0..d.poset.len()).filter(|&c| d.poset.arrow(a, c) && d.poset.arrow(c, b)).count());
    for (a, b) in arrows {
      let m = match given.get(&(a, b)) {
        Some(m) => m.clone(),
        None => {
          let c = (0..d.poset.len())
            .find(|&c| d.poset.strict(a, c) && d.poset.strict(c, b))
            .ok_or_else(|| Error::MissingMap(d.poset.name(a).into(), d.poset.name(b).into()))?;
          d.compose(&d.maps[&(a, c)], &d.maps[&(c, b)])
        },
      };
      d.maps.insert((a, b), m);
    }
    d.check_functorial()?;
    Ok(d)
  }

  fn map(&self, a: usize, b: usize) -> Matrix<K> {
    if a == b {
      Matrix::identity(&self.field, self.dims[a])
    } else {
      self.maps[&(a, b)].clone()
    }
  }

  fn check_functorial(&self) -> Result<()> {
    let p = &self.poset;
    for (a, b) in p.strict_arrows() {
      for c in 0..p.len() {
        if p.strict(b, c) && self.compose(&self.maps[&(a, b)], &self.maps[&(b, c)]) != self.maps[&(a, c)] {
          return Err(Error::NotFunctorial(p.name(a).into(), p.name(b).into(), p.name(c).into()));
        }
      }
    }
    Ok(())
  }
}

/// Presheaf of vector spaces with injective maps `j_ab : V_b -> V_a` for `a -> b`.
#[derive(Clone, Debug, PartialEq)]
pub struct InjectivePresheaf<K: Field>(Diagram<K>);

impl<K: Field> InjectivePresheaf<K> {
  /// `maps` must contain at least the covering arrows; the rest are composed.
  pub fn new(poset: Poset, field: K, dims: Vec<usize>, maps: HashMap<(usize, usize), Matrix<K>>) -> Result<Self> {
    let d = Diagram::build(poset, field, dims, maps, Variance::Contra)?;
    for (&(a, b), m) in &d.maps {
      if m.rank() != d.dims[b] {
        return Err(Error::NotInjective(d.poset.name(a).into(), d.poset.name(b).into()));
      }
    }
    Ok(InjectivePresheaf(d))
  }

  pub fn poset(&self) -> &Poset { &self.0.poset }

  pub fn field(&self) -> &K { &self.0.field }

  pub fn dim(&self, a: usize) -> usize { self.0.dims[a] }

  pub fn dims(&self) -> &[usize] { &self.0.dims }

  /// `j_ab` for `a -> b`; the identity when `a = b`.
  pub fn map(&self, a: usize, b: usize) -> Matrix<K> { self.0.map(a, b) }

  /// `V_ab`, the image of `j_ab` in `V_a`.
  pub fn image(&self, a: usize, b: usize) -> Subspace<K> { Subspace::span(&self.map(a, b)) }

  /// The presheaf whose only nonzero stalks are copies of `S_g` over `U^g`.
  pub fn factor(&self, dec: &InteractionDecomposition<K>, g: usize) -> Result<Self> {
    let p = self.poset().clone();
    let k = dec.interaction[g].cols();
    let dims: Vec<usize> = (0..p.len()).map(|a| if p.arrow(a, g) { k } else { 0 }).collect();
    let f = self.field().clone();
    let maps = p
      .strict_arrows()
      .into_iter()
      .map(|(a, b)| {
        let m = if dims[b] > 0 { Matrix::identity(&f, k) } else { Matrix::zeros(&f, dims[a], 0) };
        ((a, b), m)
      })
      .collect();
    Self::new(p, f, dims, maps)
  }

  /// The constant presheaf with one-dimensional stalks.
  pub fn constant(poset: &Poset, field: &K) -> Self {
    let maps = poset.strict_arrows().into_iter().map(|e| (e, Matrix::identity(field, 1))).collect();
    Self::new(poset.clone(), field.clone(), vec![1; poset.len()], maps).expect("constant functor")
  }
}

/// Copresheaf with surjective maps `π^{ba} : F_a -> F_b` for `a -> b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Copresheaf<K: Field>(Diagram<K>);

impl<K: Field> Copresheaf<K> {
  /// `maps[(a,b)]` is `π^{ba}`; covering arrows suffice.
  pub fn new(poset: Poset, field: K, dims: Vec<usize>, maps: HashMap<(usize, usize), Matrix<K>>) -> Result<Self> {
    let d = Diagram::build(poset, field, dims, maps, Variance::Co)?;
    for (&(a, b), m) in &d.maps {
      if m.rank() != d.dims[b] {
        return Err(Error::NotSurjective(d.poset.name(a).into(), d.poset.name(b).into()));
      }
    }
    Ok(Copresheaf(d))
  }

  pub fn poset(&self) -> &Poset { &self.0.poset }

  pub fn field(&self) -> &K { &self.0.field }

  pub fn dim(&self, a: usize) -> usize { self.0.dims[a] }

  pub fn dims(&self) -> &[usize] { &self.0.dims }

  /// `π^{ba}` for `a -> b`.
  pub fn map(&self, a: usize, b: usize) -> Matrix<K> { self.0.map(a, b) }

  /// The constant copresheaf with one-dimensional stalks.
  pub fn constant(poset: &Poset, field: &K) -> Self {
    let maps = poset.strict_arrows().into_iter().map(|e| (e, Matrix::identity(field, 1))).collect();
    Self::new(poset.clone(), field.clone(), vec![1; poset.len()], maps).expect("constant functor")
  }

  /// Restriction to an induced sub-poset, listed by element index.
  pub fn restrict_to(&self, idx: &[usize]) -> Self {
    let p = self.poset().sub_poset(idx);
    let dims = idx.iter().map(|&a| self.dim(a)).collect();
    let maps = p.strict_arrows().into_iter().map(|(a, b)| ((a, b), self.map(idx[a], idx[b]))).collect();
    Self::new(p, self.field().clone(), dims, maps).expect("sub-diagram of a valid copresheaf")
  }
}

impl<K: Field> SpaceFunctor<K> for InjectivePresheaf<K> {
  fn poset(&self) -> &Poset { &self.0.poset }

  fn field(&self) -> &K { &self.0.field }

  fn topology(&self) -> Topology { Topology::Upper }

  fn stalk_dim(&self, x: usize) -> usize { self.0.dims[x] }

  fn restriction(&self, x: usize, y: usize) -> Matrix<K> { self.0.map(y, x) }
}

impl<K: Field> SpaceFunctor<K> for Copresheaf<K> {
  fn poset(&self) -> &Poset { &self.0.poset }

  fn field(&self) -> &K { &self.0.field }

  fn topology(&self) -> Topology { Topology::Lower }

  fn stalk_dim(&self, x: usize) -> usize { self.0.dims[x] }

  fn restriction(&self, x: usize, y: usize) -> Matrix<K> { self.0.map(x, y) }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GViolation<K: Field> {
  pub source:  usize,
  pub target:  usize,
  pub witness: Vec<K::Elem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GReport<K: Field> {
  pub holds:      bool,
  pub violations: Vec<GViolation<K>>,
}

fn sum_of<K: Field>(f: &K, ambient: usize, parts: impl IntoIterator<Item = Subspace<K>>) -> Subspace<K> {
  parts.into_iter().fold(Subspace::zero(f, ambient), |acc, s| acc.sum(&s).expect("same ambient"))
}

/// Checks, for every arrow `a -> b`,
/// `V_ab ∩ Σ_{a->g, g≠a, not g->b} V_ag ⊆ Σ_{a->g≠a, b->g≠b} V_ag`.
pub fn check_condition_g<K: Field>(v: &InjectivePresheaf<K>) -> GReport<K> {
  let p = v.poset();
  let f = v.field();
  let n = p.len();
  let mut violations = Vec::new();
  for a in 0..n {
    let images: Vec<Option<Subspace<K>>> = (0..n).map(|g| p.arrow(a, g).then(|| v.image(a, g))).collect();
    for b in p.down_set(a) {
      let vab = images[b].clone().unwrap();
      let lhs_sum = sum_of(f, v.dim(a), (0..n).filter(|&g| p.strict(a, g) && !p.arrow(g, b)).map(|g| images[g].clone().unwrap()));
      let lhs = vab.intersect(&lhs_sum).unwrap();
      let rhs = sum_of(f, v.dim(a), (0..n).filter(|&g| p.strict(a, g) && p.strict(b, g)).map(|g| images[g].clone().unwrap()));
      if let Some(j) = (0..lhs.dim()).find(|&j| !rhs.contains_vector(&lhs.basis().column(j))) {
        violations.push(GViolation { source: a, target: b, witness: lhs.basis().column(j) });
      }
    }
  }
  GReport { holds: violations.is_empty(), violations }
}

/// `V_a = ⊕_{a->b} j_ab(S_b)` with its projectors.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionDecomposition<K: Field> {
  /// Basis of `S_a` as columns in coordinates of `V_a`.
  pub interaction: Vec<Matrix<K>>,
  /// `e_{b|a}` for every arrow `a -> b`.
  pub projectors:  BTreeMap<(usize, usize), Matrix<K>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionFailure {
  pub element:  usize,
  pub dim:      usize,
  pub sum_dims: usize,
  pub rank:     usize,
}

impl DecompositionFailure {
  /// Number of dependent vectors among the concatenated images.
  pub fn defect(&self) -> usize { self.sum_dims - self.rank }
}

pub fn interaction_decomposition<K: Field>(v: &InjectivePresheaf<K>) -> std::result::Result<InteractionDecomposition<K>, DecompositionFailure> {
  let p = v.poset();
  let f = v.field();
  let n = p.len();
  let mut interaction: Vec<Option<Matrix<K>>> = vec![None; n];
  let mut projectors = BTreeMap::new();
  for a in p.by_dimension() {
    let vprime = sum_of(f, v.dim(a), (0..n).filter(|&b| p.strict(a, b)).map(|b| v.image(a, b)));
    let s = vprime.canonical_complement().basis().clone();
    interaction[a] = Some(s);
    let below = p.down_set(a);
    let blocks: Vec<Matrix<K>> = below.iter().map(|&b| v.map(a, b).mul(interaction[b].as_ref().unwrap())).collect();
    let sum_dims: usize = blocks.iter().map(Matrix::cols).sum();
    let all = blocks.iter().fold(Matrix::zeros(f, v.dim(a), 0), |acc, m| acc.hstack(m));
    let rank = all.rank();
    if sum_dims != v.dim(a) || rank != v.dim(a) {
      return Err(DecompositionFailure { element: a, dim: v.dim(a), sum_dims, rank });
    }
    let inv = all.inverse().expect("square of full rank");
    let mut off = 0;
    for (k, &b) in below.iter().enumerate() {
      let w = blocks[k].cols();
      let cols: Vec<usize> = (off..off + w).collect();
      projectors.insert((a, b), all.select_cols(&cols).mul(&inv.select_rows(&cols)));
      off += w;
    }
  }
  Ok(InteractionDecomposition { interaction: interaction.into_iter().map(Option::unwrap).collect(), projectors })
}

impl<K: Field> InteractionDecomposition<K> {
  pub fn dims(&self) -> Vec<usize> { self.interaction.iter().map(Matrix::cols).collect() }

  /// Projector laws and naturality; returns a description of the first failure.
  pub fn verify(&self, v: &InjectivePresheaf<K>) -> std::result::Result<(), String> {
    let p = v.poset();
    let f = v.field();
    for a in 0..p.len() {
      let below = p.down_set(a);
      let da = v.dim(a);
      let sum = Matrix::from_fn(f, da, da, |_, _| f.zero());
      let mut sum = sum;
      for &b in &below {
        let e = &self.projectors[&(a, b)];
        if e.mul(e) != *e {
          return Err(format!("e_{{{}|{}}} is not idempotent", p.name(b), p.name(a)));
        }
        for &c in &below {
          if c != b && !e.mul(&self.projectors[&(a, c)]).is_zero() {
            return Err(format!("e_{{{}|{}}} e_{{{}|{}}} != 0", p.name(b), p.name(a), p.name(c), p.name(a)));
          }
        }
        sum = sum.add(e);
      }
      if sum != Matrix::identity(f, da) {
        return Err(format!("projectors at {} do not sum to the identity", p.name(a)));
      }
      let total: usize = below.iter().map(|&b| self.interaction[b].cols()).sum();
      if total != da {
        return Err(format!("interaction dimensions at {} sum to {total}, not {da}", p.name(a)));
      }
      for &b in &below {
        let j = v.map(a, b);
        for c in p.down_set(b) {
          if j.mul(&self.projectors[&(b, c)]) != self.projectors[&(a, c)].mul(&j) {
            return Err(format!("naturality fails for {}->{}->{}", p.name(a), p.name(b), p.name(c)));
          }
        }
      }
    }
    Ok(())
  }
}

fn pullback<K: Field>(h: &Hypergraph, f: &K, a: usize, b: usize) -> Matrix<K> {
  let mut m = Matrix::zeros(f, h.n_alpha(a), h.n_alpha(b));
  for x in 0..h.n_alpha(a) {
    m.set(x, h.restrict_config(a, x, b), f.one());
  }
  m
}

fn strict_arrow_maps<K: Field>(p: &Poset, build: impl Fn(usize, usize) -> Matrix<K>) -> HashMap<(usize, usize), Matrix<K>> {
  p.covers().into_iter().map(|(a, b)| ((a, b), build(a, b))).collect()
}

/// Functions on configurations, with pullback along restriction.
pub fn free_presheaf<K: Field>(h: &Hypergraph, f: &K) -> InjectivePresheaf<K> {
  let p = h.poset();
  let dims = (0..p.len()).map(|a| h.n_alpha(a)).collect();
  let maps = strict_arrow_maps(&p, |a, b| pullback(h, f, a, b));
  InjectivePresheaf::new(p, f.clone(), dims, maps).expect("pullbacks are injective and functorial")
}

/// Sum-zero functions, in the basis `δ_x - δ_{x0}` for `x ≠ x0`.
pub fn reduced_presheaf<K: Field>(h: &Hypergraph, f: &K) -> InjectivePresheaf<K> {
  let p = h.poset();
  let dims = (0..p.len()).map(|a| h.n_alpha(a) - 1).collect();
  let maps = strict_arrow_maps(&p, |a, b| {
    Matrix::from_fn(f, h.n_alpha(a) - 1, h.n_alpha(b) - 1, |x, y| {
      let r = h.restrict_config(a, x + 1, b);
      f.from_i64((r == y + 1) as i64 - (r == 0) as i64)
    })
  });
  InjectivePresheaf::new(p, f.clone(), dims, maps).expect("pullback preserves sum-zero functions")
}

/// Functions on configurations with marginalization.
pub fn free_copresheaf<K: Field>(h: &Hypergraph, f: &K) -> Copresheaf<K> {
  let p = h.poset();
  let dims = (0..p.len()).map(|a| h.n_alpha(a)).collect();
  let maps = strict_arrow_maps(&p, |a, b| pullback(h, f, a, b).transpose());
  Copresheaf::new(p, f.clone(), dims, maps).expect("marginalization is surjective and functorial")
}

/// Sum-zero functions with marginalization, in the basis `δ_x - δ_{x0}`.
pub fn restricted_copresheaf<K: Field>(h: &Hypergraph, f: &K) -> Copresheaf<K> {
  let p = h.poset();
  let dims = (0..p.len()).map(|a| h.n_alpha(a) - 1).collect();
  let maps = strict_arrow_maps(&p, |a, b| {
    Matrix::from_fn(f, h.n_alpha(b) - 1, h.n_alpha(a) - 1, |y, x| f.from_i64((h.restrict_config(a, x + 1, b) == y + 1) as i64))
  });
  Copresheaf::new(p, f.clone(), dims, maps).expect("marginals of sum-zero functions are sum-zero")
}

/// `D_a = Σ_{a->b} μ(a,b) N_b`.
pub fn interaction_dims_via_mobius(h: &Hypergraph) -> Vec<i64> {
  let p = h.poset();
  let m = mobius(&p);
  (0..p.len()).map(|a| p.down_set(a).iter().map(|&b| m.get(a, b) * h.n_alpha(b) as i64).sum()).collect()
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::field::{PrimeField, Rationals};

  fn h(n: usize, faces: &[Vec<usize>]) -> Hypergraph { Hypergraph::on_vertices(n, faces, 2).unwrap() }

  fn vee() -> Hypergraph { h(2, &[vec![1], vec![2], vec![1, 2]]) }

  fn square() -> Hypergraph { h(2, &[vec![], vec![1], vec![2], vec![1, 2]]) }

  #[test]
  fn free_presheaf_shapes() {
    let v = free_presheaf(&square(), &Rationals);
    assert_eq!(v.dims(), &[1, 2, 2, 4]);
    let j = v.map(3, 1);
    assert_eq!((j.rows(), j.cols()), (4, 2));
    for c in 0..2 {
      assert_eq!(j.column(c).iter().filter(|x| Rationals.is_one(x)).count(), 2);
    }
    let c = free_copresheaf(&square(), &Rationals);
    assert_eq!(c.map(3, 1), j.transpose());
  }

  #[test]
  fn reduced_and_restricted_dims() {
    assert_eq!(reduced_presheaf(&vee(), &Rationals).dims(), &[1, 1, 3]);
    assert_eq!(restricted_copresheaf(&vee(), &Rationals).dims(), &[1, 1, 3]);
  }

  #[test]
  fn reduced_maps_preserve_sum_zero() {
    let hg = Hypergraph::with_cardinalities(&[vec![1], vec![1, 2]], &[3, 2]).unwrap();
    let r = reduced_presheaf(&hg, &Rationals);
    let j = r.map(1, 0);
    let full = pullback(&hg, &Rationals, 1, 0);
    for y in 0..2 {
      let mut g = vec![Rationals.zero(); 3];
      g[y + 1] = Rationals.one();
      g[0] = Rationals.from_i64(-1);
      let pulled = full.mul_vec(&g);
      let coords: Vec<_> = pulled[1..].to_vec();
      assert_eq!(coords, j.column(y));
    }
  }

  #[test]
  fn condition_g_counterexample() {
    let v = free_presheaf(&vee(), &Rationals);
    let g = check_condition_g(&v);
    assert!(!g.holds);
    let w = &g.violations[0];
    assert_eq!(w.source, 2);
    assert!(w.witness.iter().all(|x| Rationals.is_one(x)));
    let fail = interaction_decomposition(&v).unwrap_err();
    assert_eq!(fail.element, 2);
    assert_eq!(fail.defect(), 1);
  }

  #[test]
  fn condition_g_positive_cases() {
    assert!(check_condition_g(&free_presheaf(&square(), &Rationals)).holds);
    assert!(check_condition_g(&reduced_presheaf(&vee(), &Rationals)).holds);
  }

  #[test]
  fn decomposition_dims_match_mobius() {
    let v = free_presheaf(&square(), &Rationals);
    let d = interaction_decomposition(&v).unwrap();
    assert_eq!(d.dims(), vec![1, 1, 1, 1]);
    d.verify(&v).unwrap();
    assert_eq!(interaction_dims_via_mobius(&square()), vec![1, 1, 1, 1]);
    let r = reduced_presheaf(&vee(), &Rationals);
    let d = interaction_decomposition(&r).unwrap();
    assert_eq!(d.dims(), vec![1, 1, 1]);
    d.verify(&r).unwrap();
    assert_eq!(interaction_dims_via_mobius(&vee()), vec![2, 2, 0]);
    let single = Hypergraph::on_vertices(1, &[vec![1]], 3).unwrap();
    assert_eq!(interaction_dims_via_mobius(&single), vec![3]);
  }

  #[test]
  fn prime_field_decomposition() {
    let f = PrimeField::new(1009).unwrap();
    let cube = Hypergraph::on_vertices(3, &(0..8usize).map(|m| (0..3).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect::<Vec<_>>(), 2).unwrap();
    let v = free_presheaf(&cube, &f);
    let d = interaction_decomposition(&v).unwrap();
    d.verify(&v).unwrap();
    assert!(d.dims().iter().all(|&k| k == 1));
  }

  #[test]
  fn rejects_non_functorial_and_non_injective() {
    let p = Poset::from_generators(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]).unwrap();
    let q = Rationals;
    let m = |rows: &[Vec<i64>]| Matrix::from_i64(&q, rows);
    let mut maps = HashMap::new();
    maps.insert((0, 1), m(&[vec![1], vec![0]]));
    maps.insert((0, 2), m(&[vec![0], vec![1]]));
    maps.insert((1, 3), m(&[vec![1]]));
    maps.insert((2, 3), m(&[vec![1]]));
    let e = InjectivePresheaf::new(p.clone(), q, vec![2, 1, 1, 1], maps.clone()).unwrap_err();
    assert!(matches!(e, Error::NotFunctorial(..)));
    maps.insert((0, 2), m(&[vec![1], vec![0]]));
    InjectivePresheaf::new(p.clone(), q, vec![2, 1, 1, 1], maps.clone()).unwrap();
    maps.insert((1, 3), m(&[vec![0]]));
    maps.insert((2, 3), m(&[vec![0]]));
    let e = InjectivePresheaf::new(p, q, vec![2, 1, 1, 1], maps).unwrap_err();
    assert!(matches!(e, Error::NotInjective(..)));
  }

  #[test]
  fn factor_functor_lives_on_up_set() {
    let v = free_presheaf(&square(), &Rationals);
    let d = interaction_decomposition(&v).unwrap();
    let s = v.factor(&d, 1).unwrap();
    assert_eq!(s.dims(), &[0, 1, 0, 1]);
  }
}
