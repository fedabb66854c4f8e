//! Finite posets, hypergraphs and their combinatorial invariants.
//!
//! `arrow(a, b)` means there is a morphism `a -> b`, i.e. `b <= a`. For the
//! poset of a hypergraph this is `b ⊆ a`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
  elements: Vec<String>,
  index:    HashMap<String, usize>,
  arrow:    Vec<bool>,
}

impl Poset {
  /// Reflexive-transitive closure of the generating arrows.
  pub fn from_generators<S: AsRef<str>>(elements: &[S], arrows: &[(S, S)]) -> Result<Self> {
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = HashMap::new();
    for (i, e) in names.iter().enumerate() {
      if index.insert(e.clone(), i).is_some() {
        return Err(Error::Input(format!("duplicate element `{e}`")));
      }
    }
    let n = names.len();
    let mut rel = vec![false; n * n];
    for i in 0..n {
      rel[i * n + i] = true;
    }
    for (a, b) in arrows {
      let a = *index.get(a.as_ref()).ok_or_else(|| Error::UnknownElement(a.as_ref().into()))?;
      let b = *index.get(b.as_ref()).ok_or_else(|| Error::UnknownElement(b.as_ref().into()))?;
      rel[a * n + b] = true;
    }
    for k in 0..n {
      for i in 0..n {
        if rel[i * n + k] {
          for j in 0..n {
            if rel[k * n + j] {
              rel[i * n + j] = true;
            }
          }
        }
      }
    }
    let p = Poset { elements: names, index, arrow: rel };
    p.check_antisymmetry()?;
    Ok(p)
  }

  /// Builds from a relation given as a predicate; the relation must already be
  /// a partial order.
  pub fn from_relation(elements: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
    let n = elements.len();
    let mut index = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
      if index.insert(e.clone(), i).is_some() {
        return Err(Error::Input(format!("duplicate element `{e}`")));
      }
    }
    let arrow = (0..n * n).map(|k| rel(k / n, k % n)).collect();
    let p = Poset { elements, index, arrow };
    p.check_invariants()?;
    Ok(p)
  }

  fn check_antisymmetry(&self) -> Result<()> {
    let n = self.len();
    for a in 0..n {
      for b in a + 1..n {
        if self.arrow(a, b) && self.arrow(b, a) {
          return Err(Error::NotAntisymmetric(self.elements[a].clone(), self.elements[b].clone()));
        }
      }
    }
    Ok(())
  }

  /// Reflexivity, antisymmetry and transitivity, checked exhaustively.
  pub fn check_invariants(&self) -> Result<()> {
    let n = self.len();
    for a in 0..n {
      if !self.arrow(a, a) {
        return Err(Error::Input(format!("relation is not reflexive at `{}`", self.elements[a])));
      }
    }
    self.check_antisymmetry()?;
    for a in 0..n {
      for b in 0..n {
        if !self.arrow(a, b) {
          continue;
        }
        for c in 0..n {
          if self.arrow(b, c) && !self.arrow(a, c) {
            return Err(Error::Input(format!(
              "relation is not transitive: {}->{}->{}",
              self.elements[a], self.elements[b], self.elements[c]
            )));
          }
        }
      }
    }
    Ok(())
  }

  pub fn len(&self) -> usize { self.elements.len() }

  pub fn is_empty(&self) -> bool { self.elements.is_empty() }

  pub fn elements(&self) -> &[String] { &self.elements }

  pub fn name(&self, i: usize) -> &str { &self.elements[i] }

  pub fn index_of(&self, name: &str) -> Result<usize> {
    self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
  }

  pub fn arrow(&self, a: usize, b: usize) -> bool { self.arrow[a * self.len() + b] }

  pub fn strict(&self, a: usize, b: usize) -> bool { a != b && self.arrow(a, b) }

  /// `U_a = {b : a -> b}`, in element order.
  pub fn down_set(&self, a: usize) -> Vec<usize> { (0..self.len()).filter(|&b| self.arrow(a, b)).collect() }

  /// `U^b = {a : a -> b}`, in element order.
  pub fn up_set(&self, b: usize) -> Vec<usize> { (0..self.len()).filter(|&a| self.arrow(a, b)).collect() }

  /// All non-reflexive arrows `(a, b)` in lexicographic index order.
  pub fn strict_arrows(&self) -> Vec<(usize, usize)> {
    let n = self.len();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.strict(a, b)).collect()
  }

  /// Covering arrows: strict arrows with nothing strictly in between.
  pub fn covers(&self) -> Vec<(usize, usize)> {
    self
      .strict_arrows()
      .into_iter()
      .filter(|&(a, b)| !(0..self.len()).any(|c| self.strict(a, c) && self.strict(c, b)))
      .collect()
  }

  /// The opposite poset: same elements, arrows reversed.
  pub fn opposite(&self) -> Poset {
    let n = self.len();
    let arrow = (0..n * n).map(|k| self.arrow(k % n, k / n)).collect();
    Poset { elements: self.elements.clone(), index: self.index.clone(), arrow }
  }

  /// Induced sub-poset on the listed elements, in the listed order.
  pub fn sub_poset(&self, idx: &[usize]) -> Poset {
    let elements: Vec<String> = idx.iter().map(|&i| self.elements[i].clone()).collect();
    let index = elements.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
    let m = idx.len();
    let arrow = (0..m * m).map(|k| self.arrow(idx[k / m], idx[k % m])).collect();
    Poset { elements, index, arrow }
  }

  /// Length of the longest strict chain starting at each element.
  pub fn dimensions(&self) -> Vec<usize> {
    let n = self.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| self.down_set(a).len());
    let mut dim = vec![0; n];
    for &a in &order {
      dim[a] = (0..n).filter(|&b| self.strict(a, b)).map(|b| dim[b] + 1).max().unwrap_or(0);
    }
    dim
  }

  /// Maximum of `dimensions`, 0 for the empty poset.
  pub fn dimension(&self) -> usize { self.dimensions().into_iter().max().unwrap_or(0) }

  /// Elements sorted by increasing dimension, ties by element order.
  pub fn by_dimension(&self) -> Vec<usize> {
    let d = self.dimensions();
    let mut order: Vec<usize> = (0..self.len()).collect();
    order.sort_by_key(|&a| (d[a], a));
    order
  }

  /// The conditional coproduct of `a` and `b`: a common target that every
  /// other common target receives an arrow from. `Ok(None)` when there is no
  /// common target, `Err(())` when common targets exist without a greatest one.
  pub fn coproduct(&self, a: usize, b: usize) -> std::result::Result<Option<usize>, ()> {
    let common: Vec<usize> = (0..self.len()).filter(|&c| self.arrow(a, c) && self.arrow(b, c)).collect();
    if common.is_empty() {
      return Ok(None);
    }
    common.iter().copied().find(|&d| common.iter().all(|&c| self.arrow(d, c))).map(Some).ok_or(())
  }

  /// The conditional product of `a` and `b`, dual to `coproduct`.
  pub fn product(&self, a: usize, b: usize) -> std::result::Result<Option<usize>, ()> {
    let common: Vec<usize> = (0..self.len()).filter(|&c| self.arrow(c, a) && self.arrow(c, b)).collect();
    if common.is_empty() {
      return Ok(None);
    }
    common.iter().copied().find(|&d| common.iter().all(|&c| self.arrow(c, d))).map(Some).ok_or(())
  }

  /// First pair (in index order) whose conditional product fails to exist.
  pub fn product_witness(&self) -> Option<(usize, usize)> {
    let n = self.len();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| self.product(a, b).is_err())
  }

  pub fn coproduct_witness(&self) -> Option<(usize, usize)> {
    let n = self.len();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| self.coproduct(a, b).is_err())
  }
}

/// A hypergraph with a finite alphabet size per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
  vertices:      Vec<String>,
  faces:         Vec<Vec<usize>>,
  cardinalities: Vec<usize>,
}

impl Hypergraph {
  /// Faces are canonicalized to vertex lists sorted by vertex order.
  /// Vertices without a cardinality must not occur in any face.
  pub fn new<S: AsRef<str>>(vertices: &[S], faces: &[Vec<S>], cardinalities: &BTreeMap<String, usize>) -> Result<Self> {
    let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    let mut vidx = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
      if vidx.insert(v.clone(), i).is_some() {
        return Err(Error::Input(format!("duplicate vertex `{v}`")));
      }
    }
    let mut canon: Vec<Vec<usize>> = Vec::new();
    for face in faces {
      let mut f = Vec::new();
      for v in face {
        let i = *vidx.get(v.as_ref()).ok_or_else(|| Error::UnknownElement(v.as_ref().to_string()))?;
        f.push(i);
      }
      f.sort_unstable();
      f.dedup();
      canon.push(f);
    }
    let mut card = vec![0usize; vertices.len()];
    for (k, n) in cardinalities {
      let i = *vidx.get(k).ok_or_else(|| Error::UnknownElement(k.clone()))?;
      card[i] = *n;
    }
    let h = Hypergraph { vertices, faces: canon, cardinalities: card };
    for f in &h.faces {
      for &v in f {
        if h.cardinalities[v] == 0 {
          return Err(Error::Input(format!("vertex `{}` needs a cardinality >= 1", h.vertices[v])));
        }
      }
    }
    for (i, f) in h.faces.iter().enumerate() {
      if h.faces[..i].contains(f) {
        return Err(Error::DuplicateFace(h.face_name(i)));
      }
    }
    Ok(h)
  }

  /// Vertices named `1..=n`, faces given by index lists, every `N_i` equal.
  pub fn on_vertices(n: usize, faces: &[Vec<usize>], card: usize) -> Result<Self> {
    Self::with_cardinalities(faces, &vec![card; n])
  }

  /// Vertices named `1..=n` with one cardinality each.
  pub fn with_cardinalities(faces: &[Vec<usize>], cards: &[usize]) -> Result<Self> {
    let names: Vec<String> = (1..=cards.len()).map(|i| i.to_string()).collect();
    let faces: Vec<Vec<String>> = faces.iter().map(|f| f.iter().map(|&v| v.to_string()).collect()).collect();
    let cards = names.iter().cloned().zip(cards.iter().copied()).collect();
    Self::new(&names, &faces, &cards)
  }

  pub fn vertices(&self) -> &[String] { &self.vertices }

  pub fn faces(&self) -> &[Vec<usize>] { &self.faces }

  pub fn cardinality(&self, v: usize) -> usize { self.cardinalities[v] }

  pub fn face_name(&self, i: usize) -> String {
    let names: Vec<&str> = self.faces[i].iter().map(|&v| self.vertices[v].as_str()).collect();
    format!("{{{}}}", names.join(","))
  }

  /// `N_a`, the number of configurations on face `a`.
  pub fn n_alpha(&self, a: usize) -> usize { self.faces[a].iter().map(|&v| self.cardinalities[v]).product() }

  /// Configuration `k` of face `a`, as one value per face vertex; the first
  /// vertex is the most significant digit.
  pub fn config(&self, a: usize, mut k: usize) -> Vec<usize> {
    let f = &self.faces[a];
    let mut out = vec![0; f.len()];
    for (p, &v) in f.iter().enumerate().rev() {
      let n = self.cardinalities[v];
      out[p] = k % n;
      k /= n;
    }
    out
  }

  /// Index of the restriction of configuration `k` on `a` to the sub-face `b`.
  pub fn restrict_config(&self, a: usize, k: usize, b: usize) -> usize {
    let x = self.config(a, k);
    let fa = &self.faces[a];
    let mut idx = 0;
    for &v in &self.faces[b] {
      let p = fa.iter().position(|&w| w == v).expect("sub-face");
      idx = idx * self.cardinalities[v] + x[p];
    }
    idx
  }

  pub fn is_subface(&self, b: usize, a: usize) -> bool { self.faces[b].iter().all(|v| self.faces[a].contains(v)) }

  pub fn face_index(&self, f: &[usize]) -> Option<usize> {
    let mut s = f.to_vec();
    s.sort_unstable();
    self.faces.iter().position(|g| *g == s)
  }

  pub fn poset(&self) -> Poset {
    let names = (0..self.faces.len()).map(|i| self.face_name(i)).collect();
    Poset::from_relation(names, |a, b| self.is_subface(b, a)).expect("inclusion is a partial order")
  }

  pub fn intersection_property(&self) -> IntersectionReport {
    let mut strong = None;
    let mut weak = None;
    let n = self.faces.len();
    for a in 0..n {
      for b in a + 1..n {
        let i: Vec<usize> = self.faces[a].iter().copied().filter(|v| self.faces[b].contains(v)).collect();
        if self.face_index(&i).is_none() {
          let w = (self.face_name(a), self.face_name(b));
          if strong.is_none() {
            strong = Some(w.clone());
          }
          if !i.is_empty() && weak.is_none() {
            weak = Some(w);
          }
        }
      }
    }
    IntersectionReport { strong: strong.is_none(), weak: weak.is_none(), strong_witness: strong, weak_witness: weak }
  }
}

pub fn poset_from_hypergraph(h: &Hypergraph) -> Poset { h.poset() }

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
  pub strong:         bool,
  pub weak:           bool,
  pub strong_witness: Option<(String, String)>,
  pub weak_witness:   Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
  pub conditional_coproducts: bool,
  pub coproduct_witness:      Option<(String, String)>,
  pub conditional_products:   bool,
  pub product_witness:        Option<(String, String)>,
  pub lower_finitely_covered: bool,
  pub lower_covering_set:     Vec<String>,
  pub upper_finitely_covered: bool,
  pub upper_covering_set:     Vec<String>,
  pub dimension_of:           BTreeMap<String, usize>,
}

pub fn structural_predicates(p: &Poset) -> StructuralReport {
  let name = |w: Option<(usize, usize)>| w.map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()));
  let cw = p.coproduct_witness();
  let pw = p.product_witness();
  let n = p.len();
  let lower: Vec<String> =
    (0..n).filter(|&a| !(0..n).any(|b| p.strict(b, a))).map(|a| p.name(a).to_string()).collect();
  let upper: Vec<String> =
    (0..n).filter(|&a| !(0..n).any(|b| p.strict(a, b))).map(|a| p.name(a).to_string()).collect();
  let dims = p.dimensions();
  StructuralReport {
    conditional_coproducts: cw.is_none(),
    coproduct_witness:      name(cw),
    conditional_products:   pw.is_none(),
    product_witness:        name(pw),
    lower_finitely_covered: true,
    lower_covering_set:     lower,
    upper_finitely_covered: true,
    upper_covering_set:     upper,
    dimension_of:           (0..n).map(|a| (p.name(a).to_string(), dims[a])).collect(),
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
  n:  usize,
  mu: Vec<i64>,
}

impl MobiusTable {
  pub fn get(&self, a: usize, b: usize) -> i64 { self.mu[a * self.n + b] }

  pub fn len(&self) -> usize { self.n }

  pub fn is_empty(&self) -> bool { self.n == 0 }
}

pub fn mobius(p: &Poset) -> MobiusTable {
  let n = p.len();
  let dims = p.dimensions();
  let mut mu = vec![0i64; n * n];
  for a in 0..n {
    let mut below = p.down_set(a);
    below.sort_by_key(|&g| std::cmp::Reverse(dims[g]));
    for &g in &below {
      mu[a * n + g] = if g == a {
        1
      } else {
        -below.iter().filter(|&&b| b != g && p.arrow(b, g)).map(|&b| mu[a * n + b]).sum::<i64>()
      };
    }
  }
  MobiusTable { n, mu }
}

/// Checks `Σ_{a->b->c} mu(a,b) = [a=c]` for every arrow `a -> c`.
pub fn check_mobius(p: &Poset, m: &MobiusTable) -> std::result::Result<(), (usize, usize)> {
  let n = p.len();
  for a in 0..n {
    for c in 0..n {
      if !p.arrow(a, c) {
        if m.get(a, c) != 0 {
          return Err((a, c));
        }
        continue;
      }
      let s: i64 = (0..n).filter(|&b| p.arrow(a, b) && p.arrow(b, c)).map(|b| m.get(a, b)).sum();
      if s != (a == c) as i64 {
        return Err((a, c));
      }
    }
  }
  Ok(())
}

pub fn euler_char_mobius(p: &Poset) -> i64 {
  let m = mobius(p);
  m.mu.iter().sum()
}

/// Number of strict chains with `k + 1` elements, for each `k`.
pub fn chain_counts(p: &Poset) -> Vec<u64> {
  let n = p.len();
  let mut counts = Vec::new();
  let mut cur = vec![1u64; n];
  while cur.iter().any(|&c| c > 0) {
    counts.push(cur.iter().sum());
    cur = (0..n).map(|a| (0..n).filter(|&b| p.strict(a, b)).map(|b| cur[b]).sum()).collect();
  }
  counts
}

pub fn euler_char_hall(p: &Poset) -> i64 {
  chain_counts(p).iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
  pub components: Vec<Vec<usize>>,
  /// The final element of each component, if any.
  pub finals:     Vec<Option<usize>>,
}

/// Connected components (in order of their first element) and, for each,
/// the element every member of the component has an arrow to.
pub fn components_and_finals(p: &Poset) -> Components {
  let n = p.len();
  let mut comp = vec![usize::MAX; n];
  let mut components = Vec::new();
  for s in 0..n {
    if comp[s] != usize::MAX {
      continue;
    }
    let id = components.len();
    let mut stack = vec![s];
    let mut members = Vec::new();
    comp[s] = id;
    while let Some(a) = stack.pop() {
      members.push(a);
      for b in 0..n {
        if comp[b] == usize::MAX && (p.arrow(a, b) || p.arrow(b, a)) {
          comp[b] = id;
          stack.push(b);
        }
      }
    }
    members.sort_unstable();
    components.push(members);
  }
  let finals = components.iter().map(|c| c.iter().copied().find(|&g| c.iter().all(|&a| p.arrow(a, g)))).collect();
  Components { components, finals }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn h(n: usize, faces: &[Vec<usize>]) -> Hypergraph { Hypergraph::on_vertices(n, faces, 2).unwrap() }

  fn powerset(n: usize, with_empty: bool) -> Hypergraph {
    let faces: Vec<Vec<usize>> = (0..1usize << n)
      .filter(|m| with_empty || *m != 0)
      .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect())
      .collect();
    h(n, &faces)
  }

  #[test]
  fn hypergraph_poset_arrows() {
    let p = h(2, &[vec![1], vec![2], vec![1, 2]]).poset();
    assert_eq!(p.strict_arrows(), vec![(2, 0), (2, 1)]);
    let q = powerset(2, true).poset();
    let c = components_and_finals(&q);
    assert_eq!(c.finals, vec![Some(0)]);
    assert_eq!(q.name(0), "{}");
    let a = h(3, &[vec![1, 2], vec![2, 3]]).poset();
    assert!(a.strict_arrows().is_empty());
  }

  #[test]
  fn generators_close_and_reject_cycles() {
    let p = Poset::from_generators(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    assert!(p.arrow(0, 2));
    let e = Poset::from_generators(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
    assert_eq!(e, Error::NotAntisymmetric("a".into(), "b".into()));
    assert!(Poset::from_generators(&["a"], &[("a", "z")]).is_err());
  }

  #[test]
  fn duplicate_faces_are_named() {
    let e = Hypergraph::on_vertices(2, &[vec![1, 2], vec![2, 1]], 2).unwrap_err();
    assert_eq!(e, Error::DuplicateFace("{1,2}".into()));
  }

  #[test]
  fn down_and_up_sets() {
    let p = powerset(2, true).poset();
    assert_eq!(p.down_set(p.index_of("{1,2}").unwrap()).len(), 4);
    let q = h(2, &[vec![1], vec![2], vec![1, 2]]).poset();
    assert_eq!(q.up_set(0), vec![0, 2]);
    for a in 0..q.len() {
      assert!(q.down_set(a).contains(&a) && q.up_set(a).contains(&a));
    }
  }

  #[test]
  fn intersection_properties() {
    let r = h(2, &[vec![1], vec![2], vec![1, 2]]).intersection_property();
    assert!(!r.strong && r.weak);
    assert_eq!(r.strong_witness, Some(("{1}".into(), "{2}".into())));
    let r = powerset(3, true).intersection_property();
    assert!(r.strong && r.weak);
    let faces: Vec<Vec<usize>> = (1..7usize).map(|m| (0..3).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect();
    let r = h(3, &faces).intersection_property();
    assert!(!r.strong && r.weak);
  }

  #[test]
  fn structural_examples() {
    let p = h(2, &[vec![1], vec![2], vec![1, 2]]).poset();
    let s = structural_predicates(&p);
    assert!(s.conditional_coproducts);
    assert_eq!(s.dimension_of["{1,2}"], 1);
    assert!(structural_predicates(&powerset(2, true).poset()).conditional_products);
    assert!(structural_predicates(&h(3, &[vec![1, 2], vec![2, 3]]).poset()).conditional_coproducts);
    let d = p.dimensions();
    for (a, b) in p.strict_arrows() {
      assert!(d[a] > d[b]);
    }
  }

  #[test]
  fn mobius_examples() {
    let p = powerset(3, true).poset();
    let m = mobius(&p);
    let faces = powerset(3, true);
    for a in 0..p.len() {
      for b in 0..p.len() {
        if p.arrow(a, b) {
          let k = faces.faces()[a].len() - faces.faces()[b].len();
          assert_eq!(m.get(a, b), if k % 2 == 0 { 1 } else { -1 });
        }
      }
    }
    check_mobius(&p, &m).unwrap();
    let q = h(2, &[vec![1], vec![2], vec![1, 2]]).poset();
    let m = mobius(&q);
    assert_eq!(m.get(2, 0), -1);
    assert_eq!(m.get(0, 1), 0);
  }

  #[test]
  fn euler_characteristics() {
    for n in 1..=4 {
      assert_eq!(euler_char_mobius(&powerset(n, true).poset()), 1);
      let faces = powerset(n, true);
      let boundary: Vec<Vec<usize>> = faces.faces().iter().filter(|f| !f.is_empty() && f.len() < n).map(|f| f.iter().map(|v| v + 1).collect()).collect();
      let b = h(n, &boundary).poset();
      let expect = 1 + if n % 2 == 0 { 1 } else { -1 };
      assert_eq!(euler_char_mobius(&b), expect);
      assert_eq!(euler_char_hall(&b), expect);
    }
    let q = h(2, &[vec![1], vec![2], vec![1, 2]]).poset();
    assert_eq!(chain_counts(&q), vec![3, 2]);
    assert_eq!(euler_char_hall(&q), 1);
    let anti = Poset::from_generators::<&str>(&["a", "b", "c"], &[]).unwrap();
    assert_eq!(euler_char_hall(&anti), 3);
    assert_eq!(euler_char_mobius(&anti), 3);
  }

  #[test]
  fn boundary_of_triangle_chain_counts() {
    let faces: Vec<Vec<usize>> = (1..7usize).map(|m| (0..3).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect();
    let p = h(3, &faces).poset();
    assert_eq!(chain_counts(&p), vec![6, 6]);
    assert_eq!(euler_char_hall(&p), 0);
  }

  #[test]
  fn components_without_final() {
    let q = h(2, &[vec![1], vec![2], vec![1, 2]]).poset();
    let c = components_and_finals(&q);
    assert_eq!(c.components.len(), 1);
    assert_eq!(c.finals, vec![None]);
    let anti = Poset::from_generators::<&str>(&["a", "b"], &[]).unwrap();
    assert_eq!(components_and_finals(&anti).finals, vec![Some(0), Some(1)]);
  }

  #[test]
  fn configurations_are_lexicographic() {
    let hg = Hypergraph::with_cardinalities(&[vec![1, 2], vec![2]], &[2, 3]).unwrap();
    assert_eq!(hg.n_alpha(0), 6);
    assert_eq!(hg.config(0, 4), vec![1, 1]);
    assert_eq!(hg.restrict_config(0, 4, 1), 1);
  }
}
