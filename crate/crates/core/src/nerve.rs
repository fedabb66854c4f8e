//! Nerve complexes of posets and of covers, and the comparison with Čech complexes.
//!
//! Chains are listed in arrow order `a_0 -> a_1 -> ... -> a_n`, so `a_0` is the
//! largest element. A chain is supported on the intersection of the basis opens
//! of its elements: for the lower topology that is `U_{a_n}`, for the upper
//! topology `U^{a_0}`. The face that drops the anchoring endpoint is the one on
//! which the functor acts.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::{
  cech::{assemble, cech_supported, canonical_cover, CechMode, CochainComplex, Cover, LocalMap, SectionCache, SupportedComplex},
  error::{Error, Result},
  field::Field,
  poset::Poset,
  presheaf::{SpaceFunctor, Topology},
  sparse::SparseMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NerveMode {
  /// Chains with repeated elements allowed.
  Full,
  /// Strict chains only.
  Nondegenerate,
}

/// Chains `a_0 -> ... -> a_n` per degree `n <= max_degree`.
pub fn poset_chains(p: &Poset, max_degree: usize, mode: NerveMode) -> Vec<Vec<Vec<usize>>> {
  let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..p.len()).map(|a| vec![a]).collect()];
  for _ in 0..max_degree {
    let mut next = Vec::new();
    for c in levels.last().unwrap() {
      let last = *c.last().unwrap();
      for b in 0..p.len() {
        let ok = match mode {
          NerveMode::Full => p.arrow(last, b),
          NerveMode::Nondegenerate => p.strict(last, b),
        };
        if ok {
          let mut d = c.clone();
          d.push(b);
          next.push(d);
        }
      }
    }
    levels.push(next);
  }
  levels
}

pub fn face(chain: &[usize], i: usize) -> Vec<usize> {
  let mut c = chain.to_vec();
  c.remove(i);
  c
}

pub fn degeneracy(chain: &[usize], i: usize) -> Vec<usize> {
  let mut c = chain.to_vec();
  c.insert(i, chain[i]);
  c
}

/// Checks the cosimplicial identities for faces and degeneracies on every
/// full-mode chain up to `max_degree`, and that both operations keep chains valid.
pub fn check_simplicial_identities(p: &Poset, max_degree: usize) -> std::result::Result<(), String> {
  let valid = |c: &[usize]| c.windows(2).all(|w| p.arrow(w[0], w[1]));
  for level in poset_chains(p, max_degree, NerveMode::Full) {
    for c in &level {
      let n = c.len() - 1;
      for i in 0..=n {
        if n > 0 && !valid(&face(c, i)) {
          return Err(format!("face {i} of {c:?} is not a chain"));
        }
        if !valid(&degeneracy(c, i)) {
          return Err(format!("degeneracy {i} of {c:?} is not a chain"));
        }
      }
      if n >= 2 {
        for j in 1..=n {
          for i in 0..j {
            if face(&face(c, j), i) != face(&face(c, i), j - 1) {
              return Err(format!("d_{i} d_{j} on {c:?}"));
            }
          }
        }
      }
      for j in 0..=n {
        let s = degeneracy(c, j);
        for i in 0..=n + 1 {
          let lhs = face(&s, i);
          let rhs = if i < j {
            if n == 0 { continue } else { degeneracy(&face(c, i), j - 1) }
          } else if i == j || i == j + 1 {
            c.clone()
          } else if n == 0 {
            continue;
          } else {
            degeneracy(&face(c, i - 1), j)
          };
          if lhs != rhs {
            return Err(format!("d_{i} s_{j} on {c:?}"));
          }
        }
        for i in 0..=j {
          if degeneracy(&degeneracy(c, j), i) != degeneracy(&degeneracy(c, i), j + 1) {
            return Err(format!("s_{i} s_{j} on {c:?}"));
          }
        }
      }
    }
  }
  Ok(())
}

fn check_topology<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, topology: Topology) -> Result<()> {
  if f.topology() != topology {
    return Err(Error::Variance(format!("{:?} nerve requested for a functor on the {:?} space", topology, f.topology())));
  }
  Ok(())
}

pub fn nerve_supported<K: Field, F: SpaceFunctor<K> + ?Sized>(
  cache: &mut SectionCache<'_, K, F>,
  topology: Topology,
  max_degree: usize,
  mode: NerveMode,
) -> Result<SupportedComplex<K>> {
  let f = cache.functor();
  check_topology(f, topology)?;
  let p = f.poset();
  let opens: Vec<Vec<usize>> = (0..p.len()).map(|x| topology.basis_open(p, x)).collect();
  let chains = poset_chains(p, max_degree, mode);
  Ok(SupportedComplex::build(cache, &opens, chains))
}

/// The nerve cochain complex of the functor's poset.
pub fn nerve_complex<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, topology: Topology, max_degree: usize, mode: NerveMode) -> Result<CochainComplex<K>> {
  let mut cache = SectionCache::new(f);
  Ok(nerve_supported(&mut cache, topology, max_degree, mode)?.complex)
}

/// Distinct nonempty intersections of cover members, ordered by inclusion.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionPoset {
  /// `arrow(a, b)` iff `opens[b] ⊆ opens[a]`.
  pub poset:      Poset,
  pub opens:      Vec<Vec<usize>>,
  /// Smallest-first member set whose intersection gives each element.
  pub generators: Vec<Vec<usize>>,
  /// The member itself for members, otherwise the first member containing the element.
  pub projection: Vec<usize>,
  /// Element of each cover member.
  pub member:     Vec<usize>,
}

impl IntersectionPoset {
  pub fn index_of(&self, points: &[usize]) -> Option<usize> { self.opens.iter().position(|o| o == points) }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> { a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect() }

fn contains(big: &[usize], small: &[usize]) -> bool { small.iter().all(|x| big.binary_search(x).is_ok()) }

pub fn intersection_poset(cover: &Cover) -> IntersectionPoset {
  let m = cover.members.len();
  let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
  let mut order: Vec<Vec<usize>> = Vec::new();
  let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
  for (i, u) in cover.members.iter().enumerate() {
    if !u.points.is_empty() && !found.contains_key(&u.points) {
      found.insert(u.points.clone(), vec![i]);
      order.push(u.points.clone());
      frontier.push((u.points.clone(), vec![i]));
    }
  }
  while !frontier.is_empty() {
    let mut next = Vec::new();
    for (pts, gens) in &frontier {
      for j in gens.last().unwrap() + 1..m {
        let q = intersect(pts, &cover.members[j].points);
        if !q.is_empty() && !found.contains_key(&q) {
          let mut g = gens.clone();
          g.push(j);
          found.insert(q.clone(), g.clone());
          order.push(q.clone());
          next.push((q, g));
        }
      }
    }
    frontier = next;
  }
  let names = order.iter().map(|o| format!("{o:?}")).collect();
  let poset = Poset::from_relation(names, |a, b| contains(&order[a], &order[b])).expect("inclusion is a partial order");
  let projection = order
    .iter()
    .map(|o| {
      let exact = cover.members.iter().position(|u| u.points == *o);
      exact.unwrap_or_else(|| cover.members.iter().position(|u| contains(&u.points, o)).unwrap())
    })
    .collect();
  let member = cover.members.iter().map(|u| order.iter().position(|o| *o == u.points).unwrap()).collect();
  let generators = order.iter().map(|o| found[o].clone()).collect();
  IntersectionPoset { poset, opens: order, generators, projection, member }
}

/// Integer chain combinations.
type Comb = BTreeMap<Vec<usize>, i64>;

fn add_term(c: &mut Comb, k: Vec<usize>, v: i64) {
  if v == 0 {
    return;
  }
  let e = c.entry(k.clone()).or_insert(0);
  *e += v;
  if *e == 0 {
    c.remove(&k);
  }
}

fn add_comb(c: &mut Comb, o: &Comb, s: i64) {
  for (k, v) in o {
    add_term(c, k.clone(), s * v);
  }
}

fn boundary(s: &[usize]) -> Comb {
  let mut c = Comb::new();
  for i in 0..s.len() {
    add_term(&mut c, face(s, i), if i % 2 == 0 { 1 } else { -1 });
  }
  c
}

fn append(c: &Comb, x: usize, s: i64) -> Comb {
  let mut out = Comb::new();
  for (k, v) in c {
    let mut k = k.clone();
    k.push(x);
    add_term(&mut out, k, s * v);
  }
  out
}

fn sign(n: usize) -> i64 { if n % 2 == 0 { 1 } else { -1 } }

/// Chain-level operators between the Čech tuples `K(U)` and the chains `N(U)`
/// of the intersection poset.
struct ChainOps<'a> {
  cover: &'a Cover,
  ip:    &'a IntersectionPoset,
  sd:    HashMap<Vec<usize>, Comb>,
  dk:    HashMap<Vec<usize>, Comb>,
  dn:    HashMap<Vec<usize>, Comb>,
}

impl<'a> ChainOps<'a> {
  fn node_of_tuple(&self, u: &[usize]) -> usize {
    let pts = u[1..].iter().fold(self.cover.members[u[0]].points.clone(), |acc, &i| intersect(&acc, &self.cover.members[i].points));
    self.ip.index_of(&pts).expect("intersection of members is an element")
  }

  fn p(&self, v: &[usize]) -> Vec<usize> { v.iter().map(|&x| self.ip.projection[x]).collect() }

  fn sd(&mut self, u: &[usize]) -> Comb {
    if let Some(c) = self.sd.get(u) {
      return c.clone();
    }
    let out = if u.len() == 1 {
      Comb::from([(vec![self.ip.member[u[0]]], 1)])
    } else {
      let mut acc = Comb::new();
      for (f, c) in boundary(u) {
        let s = self.sd(&f);
        add_comb(&mut acc, &s, c);
      }
      append(&acc, self.node_of_tuple(u), sign(u.len() - 1))
    };
    self.sd.insert(u.to_vec(), out.clone());
    out
  }

  fn dk(&mut self, u: &[usize]) -> Comb {
    if let Some(c) = self.dk.get(u) {
      return c.clone();
    }
    let n = u.len() - 1;
    let out = if n == 0 {
      Comb::new()
    } else {
      let mut acc = Comb::from([(u.to_vec(), 1)]);
      for (f, c) in boundary(u) {
        let d = self.dk(&f);
        add_comb(&mut acc, &d, -c);
      }
      append(&acc, self.ip.projection[self.node_of_tuple(u)], sign(n + 1))
    };
    self.dk.insert(u.to_vec(), out.clone());
    out
  }

  fn dn(&mut self, v: &[usize]) -> Comb {
    if let Some(c) = self.dn.get(v) {
      return c.clone();
    }
    let n = v.len() - 1;
    let out = if n == 0 {
      Comb::from([(vec![self.ip.member[self.ip.projection[v[0]]], v[0]], 1)])
    } else {
      let mut acc = Comb::from([(v.to_vec(), 1)]);
      let sp = self.sd(&self.p(v));
      add_comb(&mut acc, &sp, -1);
      for (f, c) in boundary(v) {
        let d = self.dn(&f);
        add_comb(&mut acc, &d, -c);
      }
      append(&acc, v[n], sign(n + 1))
    };
    self.dn.insert(v.to_vec(), out.clone());
    out
  }
}

fn local_map(src: &SupportedComplex<impl Field>, ns: usize, targets: impl Iterator<Item = Comb>) -> LocalMap {
  targets
    .map(|c| c.into_iter().map(|(k, v)| (src.simplex_index(ns, &k).expect("image chain is listed"), v)).collect())
    .collect()
}

/// Degree-graded maps between cochain spaces; `maps[n]` has source degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<K: Field> {
  pub shift: i32,
  pub maps:  Vec<SparseMatrix<K>>,
}

/// Full-mode complexes `C(K(U); F)` and `C(N(U); F)` with the comparison maps
/// `π*` and `Sd` and the homotopies `D_K`, `D_N`.
pub struct HomotopyOperators<K: Field> {
  pub cech:         SupportedComplex<K>,
  pub nerve:        SupportedComplex<K>,
  pub intersection: IntersectionPoset,
  pub pi:           GradedMap<K>,
  pub sd:           GradedMap<K>,
  pub dk:           GradedMap<K>,
  pub dn:           GradedMap<K>,
}

pub fn homotopy_operators<K: Field, F: SpaceFunctor<K> + ?Sized>(
  cache: &mut SectionCache<'_, K, F>,
  cover: &Cover,
  max_degree: usize,
) -> Result<HomotopyOperators<K>> {
  for i in 0..cover.len() {
    for j in 0..i {
      if cover.members[i].points == cover.members[j].points {
        return Err(Error::NotCover(format!("members {j} and {i} coincide")));
      }
    }
  }
  let cech = cech_supported(cache, cover, max_degree, CechMode::Full)?;
  let ip = intersection_poset(cover);
  let chains = poset_chains(&ip.poset, max_degree, NerveMode::Full);
  let nerve = SupportedComplex::build(cache, &ip.opens, chains);
  let mut ops = ChainOps { cover, ip: &ip, sd: HashMap::new(), dk: HashMap::new(), dn: HashMap::new() };
  let field = cache.field().clone();
  let (mut pi, mut sd, mut dk, mut dn) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
  for n in 0..=max_degree {
    let ks: Vec<Vec<usize>> = cech.simplices(n).cloned().collect();
    let ns: Vec<Vec<usize>> = nerve.simplices(n).cloned().collect();
    let m = local_map(&cech, n, ns.iter().map(|v| Comb::from([(ops.p(v), 1)])));
    pi.push(assemble(cache, &cech, n, &nerve, n, &m));
    let m = local_map(&nerve, n, ks.iter().map(|u| ops.sd(u)).collect::<Vec<_>>().into_iter());
    sd.push(assemble(cache, &nerve, n, &cech, n, &m));
    if n == 0 {
      dk.push(SparseMatrix::zeros(&field, 0, cech.complex.dim(0)));
      dn.push(SparseMatrix::zeros(&field, 0, nerve.complex.dim(0)));
    } else {
      let prev: Vec<Vec<usize>> = cech.simplices(n - 1).cloned().collect();
      let m = local_map(&cech, n, prev.iter().map(|u| ops.dk(u)).collect::<Vec<_>>().into_iter());
      dk.push(assemble(cache, &cech, n, &cech, n - 1, &m));
      let prev: Vec<Vec<usize>> = nerve.simplices(n - 1).cloned().collect();
      let m = local_map(&nerve, n, prev.iter().map(|v| ops.dn(v)).collect::<Vec<_>>().into_iter());
      dn.push(assemble(cache, &nerve, n, &nerve, n - 1, &m));
    }
  }
  drop(ops);
  Ok(HomotopyOperators {
    cech,
    nerve,
    intersection: ip,
    pi: GradedMap { shift: 0, maps: pi },
    sd: GradedMap { shift: 0, maps: sd },
    dk: GradedMap { shift: -1, maps: dk },
    dn: GradedMap { shift: -1, maps: dn },
  })
}

/// A failed matrix identity: the first basis cochain on which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
  pub identity: String,
  pub degree:   usize,
  /// Summand label and local coordinate of the witness basis cochain.
  pub summand:  Vec<usize>,
  pub coordinate: usize,
}

impl std::fmt::Display for IdentityFailure {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    write!(f, "{} fails in degree {} on basis cochain {} of summand {:?}", self.identity, self.degree, self.coordinate, self.summand)
  }
}

fn witness<K: Field>(c: &CochainComplex<K>, n: usize, diff: &SparseMatrix<K>) -> Option<(Vec<usize>, usize)> {
  let col = (0..diff.nrows()).filter_map(|i| diff.row(i).first().map(|e| e.0)).min()?;
  let i = (0..c.summands(n).len()).rev().find(|&i| c.offset(n, i) <= col && c.summands(n)[i].dim > 0).unwrap();
  Some((c.summands(n)[i].label.clone(), col - c.offset(n, i)))
}

fn compare<K: Field>(name: &str, c: &CochainComplex<K>, n: usize, lhs: &SparseMatrix<K>, rhs: &SparseMatrix<K>, out: &mut Vec<IdentityFailure>) -> bool {
  match witness(c, n, &lhs.sub(rhs)) {
    None => true,
    Some((summand, coordinate)) => {
      out.push(IdentityFailure { identity: name.into(), degree: n, summand, coordinate });
      false
    },
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
  pub degree:      usize,
  pub cech_dim:    usize,
  pub nerve_dim:   usize,
  pub pi_commutes: bool,
  pub sd_commutes: bool,
  pub homotopy_k:  bool,
  pub homotopy_n:  bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyReport {
  pub max_degree:        usize,
  pub cover_size:        usize,
  pub intersection_size: usize,
  pub degrees:           Vec<DegreeCheck>,
  pub failures:          Vec<IdentityFailure>,
}

impl HomotopyReport {
  pub fn holds(&self) -> bool { self.failures.is_empty() }
}

/// Checks `δπ* = π*δ`, `δSd = Sdδ`, `Id − Sd∘π* = δD_K + D_Kδ` and
/// `Id − π*∘Sd = δD_N + D_Nδ` in every degree below the top.
pub fn verify_homotopies<K: Field>(ops: &HomotopyOperators<K>) -> HomotopyReport {
  let k = &ops.cech.complex;
  let nv = &ops.nerve.complex;
  let field = k.field();
  let top = k.max_degree();
  let mut failures = Vec::new();
  let mut degrees = Vec::new();
  for n in 0..top {
    let pi_ok = compare("δπ* = π*δ", k, n, &nv.delta(n).mul(&ops.pi.maps[n]), &ops.pi.maps[n + 1].mul(k.delta(n)), &mut failures);
    let sd_ok = compare("δSd = Sdδ", nv, n, &k.delta(n).mul(&ops.sd.maps[n]), &ops.sd.maps[n + 1].mul(nv.delta(n)), &mut failures);
    let homotopy = |c: &CochainComplex<K>, round: SparseMatrix<K>, d: &GradedMap<K>| {
      let lhs = SparseMatrix::identity(field, c.dim(n)).sub(&round);
      let mut rhs = d.maps[n + 1].mul(c.delta(n));
      if n > 0 {
        rhs = rhs.add(&c.delta(n - 1).mul(&d.maps[n]));
      }
      (lhs, rhs)
    };
    let (l, r) = homotopy(k, ops.sd.maps[n].mul(&ops.pi.maps[n]), &ops.dk);
    let hk = compare("Id − Sd∘π* = δD_K + D_Kδ", k, n, &l, &r, &mut failures);
    let (l, r) = homotopy(nv, ops.pi.maps[n].mul(&ops.sd.maps[n]), &ops.dn);
    let hn = compare("Id − π*∘Sd = δD_N + D_Nδ", nv, n, &l, &r, &mut failures);
    degrees.push(DegreeCheck { degree: n, cech_dim: k.dim(n), nerve_dim: nv.dim(n), pi_commutes: pi_ok, sd_commutes: sd_ok, homotopy_k: hk, homotopy_n: hn });
  }
  HomotopyReport {
    max_degree: top,
    cover_size: ops.cech.complex.summands(0).len(),
    intersection_size: ops.intersection.poset.len(),
    degrees,
    failures,
  }
}

/// Builds the operators and fails with the first witness if an identity breaks.
pub fn homotopies_dk_dn<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, cover: &Cover, max_degree: usize) -> Result<HomotopyReport> {
  let mut cache = SectionCache::new(f);
  let ops = homotopy_operators(&mut cache, cover, max_degree)?;
  let report = verify_homotopies(&ops);
  match report.failures.first() {
    Some(w) => Err(Error::Identity(w.to_string())),
    None => Ok(report),
  }
}

/// First pair of basis opens whose intersection is nonempty but not a basis open.
pub fn intersection_witness(p: &Poset, topology: Topology) -> Option<(usize, usize)> {
  let opens: Vec<Vec<usize>> = (0..p.len()).map(|x| topology.basis_open(p, x)).collect();
  for a in 0..p.len() {
    for b in a + 1..p.len() {
      let q = intersect(&opens[a], &opens[b]);
      if !q.is_empty() && !opens.contains(&q) {
        return Some((a, b));
      }
    }
  }
  None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
  pub cech_dims:     Vec<usize>,
  pub nerve_dims:    Vec<usize>,
  /// Rank of the map induced on `H^n` by `j*`.
  pub induced_ranks: Vec<usize>,
}

impl ComparisonReport {
  pub fn isomorphic(&self) -> bool {
    self.cech_dims == self.nerve_dims && self.induced_ranks == self.cech_dims
  }
}

/// Compares the alternating Čech complex of the canonical cover with the
/// nondegenerate nerve complex through `j*`, which sends a chain to the tuple
/// of basis opens of its elements.
pub fn compare_cech_nerve<K: Field, F: SpaceFunctor<K> + ?Sized>(f: &F, max_degree: usize) -> Result<ComparisonReport> {
  let p = f.poset();
  let t = f.topology();
  if let Some((a, b)) = intersection_witness(p, t) {
    return Err(Error::NoConditionalProduct(p.name(a).into(), p.name(b).into()));
  }
  if max_degree == 0 {
    return Err(Error::Degree(0, 0));
  }
  let mut cache = SectionCache::new(f);
  let cover = canonical_cover(p, t);
  let cech = cech_supported(&mut cache, &cover, max_degree, CechMode::Alternating)?;
  let nerve = nerve_supported(&mut cache, t, max_degree, NerveMode::Nondegenerate)?;
  let up_to = max_degree - 1;
  let cech_dims = cech.complex.cohomology_dims(up_to)?;
  let nerve_dims = nerve.complex.cohomology_dims(up_to)?;
  let mut induced_ranks = Vec::new();
  for n in 0..=up_to {
    let map: LocalMap = nerve
      .simplices(n)
      .map(|v| {
        let mut s = v.clone();
        let mut parity = 1;
        for i in 0..s.len() {
          for j in 0..s.len() - 1 - i {
            if s[j] > s[j + 1] {
              s.swap(j, j + 1);
              parity = -parity;
            }
          }
        }
        vec![(cech.simplex_index(n, &s).expect("tuple of a chain is listed"), parity)]
      })
      .collect();
    let j = assemble(&mut cache, &cech, n, &nerve, n, &map);
    induced_ranks.push(crate::cech::induced_rank(&cech.complex.cocycles(n), &j, &nerve.complex, n));
  }
  Ok(ComparisonReport { cech_dims, nerve_dims, induced_ranks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismReport {
  pub max_degree: usize,
  pub holds:      bool,
  pub failures:   Vec<IdentityFailure>,
}

/// For a refinement `fine` of `coarse` with projections `λ`, `μ`, builds the
/// prism operator `H` on full-mode Čech complexes and checks `δH + Hδ = μ* − λ*`
/// in every degree below the top.
pub fn projection_homotopy<K: Field, F: SpaceFunctor<K> + ?Sized>(
  f: &F,
  fine: &Cover,
  coarse: &Cover,
  lambda: &[usize],
  mu: &[usize],
  max_degree: usize,
) -> Result<PrismReport> {
  for (name, proj) in [("λ", lambda), ("μ", mu)] {
    if proj.len() != fine.len() {
      return Err(Error::Shape(format!("{name} has {} entries for {} members", proj.len(), fine.len())));
    }
    for (i, &j) in proj.iter().enumerate() {
      if j >= coarse.len() || !contains(&coarse.members[j].points, &fine.members[i].points) {
        return Err(Error::NotCover(format!("{name} sends member {i} to a set not containing it")));
      }
    }
  }
  let mut cache = SectionCache::new(f);
  let kf = cech_supported(&mut cache, fine, max_degree, CechMode::Full)?;
  let kc = cech_supported(&mut cache, coarse, max_degree, CechMode::Full)?;
  let apply = |p: &[usize], u: &[usize]| u.iter().map(|&i| p[i]).collect::<Vec<usize>>();
  let mut pulls = Vec::new();
  for p in [lambda, mu] {
    let mut maps = Vec::new();
    for n in 0..=max_degree {
      let m = local_map(&kc, n, kf.simplices(n).map(|u| Comb::from([(apply(p, u), 1)])));
      maps.push(assemble(&mut cache, &kc, n, &kf, n, &m));
    }
    pulls.push(maps);
  }
  let mut h = vec![SparseMatrix::zeros(f.field(), 0, kc.complex.dim(0))];
  for n in 1..=max_degree {
    let m = local_map(
      &kc,
      n,
      kf.simplices(n - 1).map(|u| {
        let mut c = Comb::new();
        for i in 0..u.len() {
          let mut t = apply(lambda, &u[..=i]);
          t.extend(apply(mu, &u[i..]));
          add_term(&mut c, t, sign(i));
        }
        c
      }),
    );
    h.push(assemble(&mut cache, &kc, n, &kf, n - 1, &m));
  }
  let mut failures = Vec::new();
  for n in 0..max_degree {
    let lhs = pulls[1][n].sub(&pulls[0][n]);
    let mut rhs = h[n + 1].mul(kc.complex.delta(n));
    if n > 0 {
      rhs = rhs.add(&kf.complex.delta(n - 1).mul(&h[n]));
    }
    compare("δH + Hδ = μ* − λ*", &kc.complex, n, &lhs, &rhs, &mut failures);
  }
  Ok(PrismReport { max_degree, holds: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::{
    cech::OpenSet,
    field::Rationals,
    poset::Hypergraph,
    presheaf::{free_copresheaf, interaction_decomposition, reduced_presheaf, Copresheaf, InjectivePresheaf},
  };

  fn h(n: usize, faces: &[Vec<usize>]) -> Hypergraph { Hypergraph::on_vertices(n, faces, 2).unwrap() }

  fn vee() -> Hypergraph { h(2, &[vec![1], vec![2], vec![1, 2]]) }

  fn circle() -> Hypergraph { h(3, &[vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]]) }

  #[test]
  fn constant_nerves() {
    let p = vee().poset();
    let k = InjectivePresheaf::constant(&p, &Rationals);
    let c = nerve_complex(&k, Topology::Upper, 3, NerveMode::Nondegenerate).unwrap();
    assert_eq!(&c.dims()[..3], &[3, 2, 0]);
    assert_eq!(c.cohomology_dims(2).unwrap(), vec![1, 0, 0]);
    let full = nerve_complex(&k, Topology::Upper, 3, NerveMode::Full).unwrap();
    assert_eq!(full.check_d_squared(), Ok(()));
    assert_eq!(full.cohomology_dims(2).unwrap(), vec![1, 0, 0]);
    assert!(matches!(nerve_complex(&k, Topology::Lower, 2, NerveMode::Full), Err(Error::Variance(_))));
    let q = circle().poset();
    let kc = Copresheaf::constant(&q, &Rationals);
    assert_eq!(nerve_complex(&kc, Topology::Lower, 3, NerveMode::Nondegenerate).unwrap().cohomology_dims(2).unwrap(), vec![1, 1, 0]);
  }

  #[test]
  fn simplicial_identities() {
    assert_eq!(check_simplicial_identities(&vee().poset(), 3), Ok(()));
    assert_eq!(check_simplicial_identities(&circle().poset(), 2), Ok(()));
  }

  #[test]
  fn factor_functors_detect_final_elements() {
    let sq = h(2, &[vec![], vec![1], vec![2], vec![1, 2]]);
    let v = reduced_presheaf(&sq, &Rationals);
    let dec = interaction_decomposition(&v).unwrap();
    let empty = sq.face_index(&[]).unwrap();
    for g in 0..4 {
      let s = v.factor(&dec, g).unwrap();
      let hd = nerve_complex(&s, Topology::Upper, 3, NerveMode::Nondegenerate).unwrap().cohomology_dims(2).unwrap();
      let expect = if g == empty { dec.dims()[g] } else { 0 };
      assert_eq!(hd, vec![expect, 0, 0], "factor {g}");
    }
  }

  #[test]
  fn factor_at_top_of_vee_has_first_cohomology() {
    let v = reduced_presheaf(&vee(), &Rationals);
    let dec = interaction_decomposition(&v).unwrap();
    let s = v.factor(&dec, 2).unwrap();
    let hd = nerve_complex(&s, Topology::Upper, 3, NerveMode::Nondegenerate).unwrap().cohomology_dims(2).unwrap();
    assert_eq!(hd, vec![0, 1, 0]);
    let c = crate::cech::canonical_cohomology(&s, 2).unwrap();
    assert_eq!(c, hd);
  }

  #[test]
  fn intersection_posets() {
    let p = vee().poset();
    let ip = intersection_poset(&canonical_cover(&p, Topology::Upper));
    assert_eq!(ip.poset.len(), 3);
    assert_eq!(ip.projection, vec![0, 1, 2]);
    let p3 = circle().poset();
    let tops: Vec<OpenSet> = (3..6).map(|x| OpenSet::basis(&p3, x, Topology::Lower)).collect();
    let cover = Cover::new(&p3, tops).unwrap();
    let ip = intersection_poset(&cover);
    assert_eq!(ip.poset.len(), 6);
    let v = ip.index_of(&[0]).unwrap();
    assert_eq!(ip.projection[v], 0);
    let anti = Cover::new(&p, vec![OpenSet::basis(&p, 0, Topology::Lower), OpenSet::new(&p, &[1, 2], Topology::Upper).unwrap()]);
    assert!(anti.is_err());
  }

  #[test]
  fn homotopies_on_coarse_cover() {
    let p3 = circle().poset();
    let f = free_copresheaf(&circle(), &Rationals);
    let tops: Vec<OpenSet> = (3..6).map(|x| OpenSet::basis(&p3, x, Topology::Lower)).collect();
    let cover = Cover::new(&p3, tops).unwrap();
    let rep = homotopies_dk_dn(&f, &cover, 4).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.degrees.len(), 4);
    let mut cache = SectionCache::new(&f);
    let ops = homotopy_operators(&mut cache, &cover, 2).unwrap();
    assert!(ops.dk.maps[1].is_zero());
    let sp = ops.sd.maps[0].mul(&ops.pi.maps[0]);
    assert_eq!(sp, SparseMatrix::identity(&Rationals, ops.cech.complex.dim(0)));
  }

  #[test]
  fn cech_nerve_comparison() {
    let sq = h(2, &[vec![], vec![1], vec![2], vec![1, 2]]);
    let f = free_copresheaf(&sq, &Rationals);
    let r = compare_cech_nerve(&f, 3).unwrap();
    assert_eq!(r.cech_dims, vec![4, 0, 0]);
    assert!(r.isomorphic());
    let one = h(1, &[vec![1]]);
    let r = compare_cech_nerve(&free_copresheaf(&one, &Rationals), 3).unwrap();
    assert_eq!(r.nerve_dims, vec![2, 0, 0]);
    let circ = free_copresheaf(&circle(), &Rationals);
    assert!(compare_cech_nerve(&circ, 2).is_ok());
    let bad = h(4, &[vec![1, 2, 3], vec![1, 2, 4], vec![1], vec![2]]);
    let k = InjectivePresheaf::constant(&bad.poset(), &Rationals);
    assert!(matches!(compare_cech_nerve(&k, 2), Err(Error::NoConditionalProduct(..))));
    let k = Copresheaf::constant(&bad.poset(), &Rationals);
    assert!(matches!(compare_cech_nerve(&k, 2), Err(Error::NoConditionalProduct(..))));
  }

  #[test]
  fn prism_homotopy() {
    let q = circle().poset();
    let g = free_copresheaf(&circle(), &Rationals);
    let a = OpenSet::new(&q, &[0, 1, 2, 3, 4], Topology::Lower).unwrap();
    let b = OpenSet::new(&q, &[0, 1, 2, 5], Topology::Lower).unwrap();
    let ab = OpenSet::new(&q, &[0, 1, 2], Topology::Lower).unwrap();
    let coarse = Cover::new(&q, vec![a.clone(), b.clone()]).unwrap();
    let fine = Cover::new(&q, vec![ab, a, b]).unwrap();
    let rep = projection_homotopy(&g, &fine, &coarse, &[0, 0, 1], &[1, 0, 1], 3).unwrap();
    assert!(rep.holds, "{:?}", rep.failures);
    let same = projection_homotopy(&g, &fine, &coarse, &[0, 0, 1], &[0, 0, 1], 3).unwrap();
    assert!(same.holds);
    assert!(projection_homotopy(&g, &fine, &coarse, &[1, 1, 1], &[0, 0, 1], 3).is_err());
  }
}
