//! The linear marginal problem on a hypergraph.

use std::collections::HashMap;

use serde::Serialize;

use crate::{
  cech::{canonical_cover, cech_complex, sections, CechMode, OpenSet},
  error::{Error, Result},
  field::Field,
  linalg::Matrix,
  poset::{components_and_finals, euler_char_mobius, mobius, Hypergraph},
  presheaf::{free_copresheaf, restricted_copresheaf, Copresheaf, InjectivePresheaf, InteractionDecomposition, Topology},
  sparse::SparseMatrix,
};

/// Dimension of the space of compatible sum-zero families over all faces.
pub fn pseudomarginal_dim<K: Field>(h: &Hypergraph, field: &K) -> usize {
  let f = restricted_copresheaf(h, field);
  sections(&f, &OpenSet::whole(f.poset(), Topology::Lower)).expect("whole space is open").dim()
}

/// Dimension of the space of compatible families over all faces.
pub fn free_h0<K: Field>(h: &Hypergraph, field: &K) -> usize {
  let f = free_copresheaf(h, field);
  sections(&f, &OpenSet::whole(f.poset(), Topology::Lower)).expect("whole space is open").dim()
}

/// `Σ μ(a, b) N_b` over all pairs of faces.
pub fn index_formula(h: &Hypergraph) -> i64 {
  let p = h.poset();
  let m = mobius(&p);
  let mut s = 0;
  for a in 0..p.len() {
    for b in p.down_set(a) {
      s += m.get(a, b) * h.n_alpha(b) as i64;
    }
  }
  s
}

/// Default truncation: enough degrees to see two vanishing degrees past the poset dimension.
pub fn default_max_degree(h: &Hypergraph) -> usize { h.poset().dimension() + 3 }

/// Čech cohomology of a copresheaf on the canonical lower cover, degrees `0..max_degree`.
pub fn copresheaf_cohomology<K: Field>(f: &Copresheaf<K>, max_degree: usize) -> Result<Vec<usize>> {
  if max_degree == 0 {
    return Err(Error::Degree(0, 0));
  }
  let cover = canonical_cover(f.poset(), Topology::Lower);
  cech_complex(&cover, f, max_degree, CechMode::Alternating)?.cohomology_dims(max_degree - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
  pub dims:        Vec<usize>,
  pub euler:       i64,
  /// Highest degree with nonzero cohomology.
  pub top_nonzero: Option<usize>,
}

fn alternating_sum(dims: &[usize]) -> i64 { dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum() }

/// Checks that the two degrees past the poset dimension vanish.
fn stabilized(dims: &[usize], dim: usize) -> Result<()> {
  if dims.len() < dim + 3 {
    return Err(Error::Degree(dims.len(), dim + 3));
  }
  for n in dim + 1..dims.len() {
    if dims[n] != 0 {
      return Err(Error::Unstable(n, dims[n]));
    }
  }
  Ok(())
}

/// Euler characteristic of the free copresheaf; refuses when the truncation
/// does not show two vanishing degrees past the poset dimension.
pub fn euler_char_sheaf<K: Field>(h: &Hypergraph, field: &K, max_degree: usize) -> Result<EulerReport> {
  let dims = copresheaf_cohomology(&free_copresheaf(h, field), max_degree)?;
  stabilized(&dims, h.poset().dimension())?;
  Ok(EulerReport { euler: alternating_sum(&dims), top_nonzero: dims.iter().rposition(|&d| d > 0), dims })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
  pub free:       Vec<usize>,
  pub restricted: Vec<usize>,
  pub constant:   Vec<usize>,
  pub holds:      bool,
}

/// Compares the cohomology of the free functor with that of the restricted
/// functor plus the constant functor.
pub fn theorem4_split<K: Field>(h: &Hypergraph, field: &K, max_degree: usize) -> Result<SplitReport> {
  let free = copresheaf_cohomology(&free_copresheaf(h, field), max_degree)?;
  let restricted = copresheaf_cohomology(&restricted_copresheaf(h, field), max_degree)?;
  let constant = copresheaf_cohomology(&Copresheaf::constant(&h.poset(), field), max_degree)?;
  let holds = free[0] == restricted[0] + constant[0] && (1..free.len()).all(|n| free[n] == constant[n]);
  Ok(SplitReport { free, restricted, constant, holds })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurjectivityReport {
  pub source_dim: usize,
  pub target_dim: usize,
  pub rank:       usize,
  pub surjective: bool,
  /// Restriction of global sections, as rows of field elements.
  pub matrix:     Vec<Vec<String>>,
}

/// Indices in `b` of the faces of `a`, after checking that `a ⊆ b` is a strict
/// simplicial inclusion: same vertex names and cardinalities, and every face of
/// `a` is a face of `b`.
pub fn inclusion_indices(a: &Hypergraph, b: &Hypergraph) -> Result<Vec<usize>> {
  let mut vmap = Vec::new();
  for (i, v) in a.vertices().iter().enumerate() {
    let j = b.vertices().iter().position(|w| w == v).ok_or_else(|| Error::BadInclusion(format!("vertex {v} is not in the target")))?;
    if a.cardinality(i) != b.cardinality(j) {
      return Err(Error::BadInclusion(format!("vertex {v} has cardinality {} but {} in the target", a.cardinality(i), b.cardinality(j))));
    }
    vmap.push(j);
  }
  a.faces()
    .iter()
    .enumerate()
    .map(|(k, f)| {
      let mut img: Vec<usize> = f.iter().map(|&v| vmap[v]).collect();
      img.sort_unstable();
      b.face_index(&img).ok_or_else(|| Error::BadInclusion(format!("face {} is not a face of the target", a.face_name(k))))
    })
    .collect()
}

/// The restriction `H⁰(B; F̄') -> H⁰(A; F̄)` of compatible sum-zero families.
pub fn marginal_surjectivity<K: Field>(a: &Hypergraph, b: &Hypergraph, field: &K) -> Result<SurjectivityReport> {
  for (name, h) in [("source", b), ("target", a)] {
    if let Some((x, y)) = h.intersection_property().weak_witness {
      return Err(Error::BadInclusion(format!("{name} lacks the weak intersection property at {x} and {y}")));
    }
  }
  let idx = inclusion_indices(a, b)?;
  let fb = restricted_copresheaf(b, field);
  let fa = fb.restrict_to(&idx);
  let direct = restricted_copresheaf(a, field);
  debug_assert!((0..idx.len()).all(|k| direct.dim(k) == fa.dim(k)));
  let src = sections(&fb, &OpenSet::whole(fb.poset(), Topology::Lower))?;
  let dst = sections(&fa, &OpenSet::whole(fa.poset(), Topology::Lower))?;
  let rows: Vec<usize> = dst
    .coordinate_rows()
    .iter()
    .map(|&r| {
      let (x, l) = dst.point_of_row(r);
      src.offset(idx[x]).unwrap() + l
    })
    .collect();
  let m: Matrix<K> = src.basis().select_rows(&rows);
  let rank = m.rank();
  Ok(SurjectivityReport { source_dim: src.dim(), target_dim: dst.dim(), rank, surjective: rank == dst.dim(), matrix: m.to_strings() })
}

/// Bound on the number of unknowns of the brute-force system.
pub const BRUTE_FORCE_LIMIT: usize = 20_000;

/// Solution dimension of the raw marginalization system, assembled directly
/// from configurations: one unknown per face and configuration, one equation
/// per arrow `a -> b` and configuration of `b`, plus sum-zero equations when
/// `restricted`.
pub fn brute_force_h0<K: Field>(h: &Hypergraph, restricted: bool, field: &K) -> Result<usize> {
  let faces = h.faces();
  let configs: Vec<Vec<Vec<usize>>> = faces
    .iter()
    .map(|f| {
      let mut out = vec![Vec::new()];
      for &v in f {
        out = out.into_iter().flat_map(|c: Vec<usize>| (0..h.cardinality(v)).map(move |x| [c.clone(), vec![x]].concat())).collect();
      }
      out
    })
    .collect();
  let mut start = Vec::new();
  let mut total = 0;
  for c in &configs {
    start.push(total);
    total += c.len();
  }
  if total > BRUTE_FORCE_LIMIT {
    return Err(Error::Input(format!("{total} unknowns exceed the brute-force limit {BRUTE_FORCE_LIMIT}")));
  }
  let lookup: Vec<HashMap<&Vec<usize>, usize>> = configs.iter().map(|c| c.iter().enumerate().map(|(i, x)| (x, i)).collect()).collect();
  let one = field.one();
  let minus = field.neg(&one);
  let mut trip = Vec::new();
  let mut row = 0;
  for (a, fa) in faces.iter().enumerate() {
    for (b, fb) in faces.iter().enumerate() {
      if a == b || !fb.iter().all(|v| fa.contains(v)) {
        continue;
      }
      let pos: Vec<usize> = fb.iter().map(|v| fa.iter().position(|w| w == v).unwrap()).collect();
      for (xb, cb) in configs[b].iter().enumerate() {
        trip.push((row, start[b] + xb, minus.clone()));
        for (xa, ca) in configs[a].iter().enumerate() {
          let proj: Vec<usize> = pos.iter().map(|&p| ca[p]).collect();
          if lookup[b][&proj] == lookup[b][cb] {
            trip.push((row, start[a] + xa, one.clone()));
          }
        }
        row += 1;
      }
    }
    if restricted {
      for xa in 0..configs[a].len() {
        trip.push((row, start[a] + xa, one.clone()));
      }
      row += 1;
    }
  }
  Ok(total - SparseMatrix::from_triplets(field, row, total, trip).rank())
}

/// `dim H⁰` of the upper-space sheaf of a decomposable presheaf, predicted as
/// the sum of the interaction dimensions at the final element of each component.
pub fn final_element_h0<K: Field>(v: &InjectivePresheaf<K>, dec: &InteractionDecomposition<K>) -> usize {
  let dims = dec.dims();
  components_and_finals(v.poset()).finals.iter().flatten().map(|&g| dims[g]).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginalReport {
  pub faces:           Vec<String>,
  pub h0_restricted:   usize,
  pub h0_free:         usize,
  pub euler_sheaf:     i64,
  pub euler_poset:     i64,
  pub index_rhs:       i64,
  pub dims_free:       Vec<usize>,
  pub dims_restricted: Vec<usize>,
  pub weak_intersection: bool,
}

impl MarginalReport {
  /// The index formula and the relation it implies for H^0, where they apply.
  pub fn consistent(&self) -> bool {
    !self.weak_intersection || (self.euler_sheaf == self.index_rhs && self.euler_sheaf == self.h0_restricted as i64 + self.euler_poset)
  }
}

pub fn marginal_report<K: Field>(h: &Hypergraph, field: &K, max_degree: usize) -> Result<MarginalReport> {
  let euler = euler_char_sheaf(h, field, max_degree)?;
  let dims_restricted = copresheaf_cohomology(&restricted_copresheaf(h, field), max_degree)?;
  Ok(MarginalReport {
    faces: (0..h.faces().len()).map(|i| h.face_name(i)).collect(),
    h0_restricted: pseudomarginal_dim(h, field),
    h0_free: euler.dims[0],
    euler_sheaf: euler.euler,
    euler_poset: euler_char_mobius(&h.poset()),
    index_rhs: index_formula(h),
    dims_free: euler.dims,
    dims_restricted,
    weak_intersection: h.intersection_property().weak,
  })
}
