//! Seeded instance generators: hypergraphs, posets, presheaves and covers.

use std::collections::{BTreeSet, HashMap};

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{
  cech::{canonical_cover, Cover, OpenSet},
  field::{Field, PrimeField},
  linalg::{Matrix, Subspace},
  poset::{Hypergraph, Poset},
  presheaf::{Copresheaf, InjectivePresheaf, Topology},
};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Prime used for randomly generated presheaves.
pub const PRIME: u64 = 1009;

pub fn rng(seed: u64) -> ChaCha8Rng { ChaCha8Rng::seed_from_u64(seed) }

type Family = Vec<Vec<usize>>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
  if n == 0 {
    return vec![Vec::new()];
  }
  let mut out = Vec::new();
  for p in permutations(n - 1) {
    for i in 0..=p.len() {
      let mut q = p.clone();
      q.insert(i, n - 1);
      out.push(q);
    }
  }
  out
}

/// Canonical representative of a family of 0-based vertex sets under relabeling.
fn canonical(f: &Family, perms: &[Vec<usize>]) -> Family {
  perms
    .iter()
    .map(|p| {
      let mut g: Family = f
        .iter()
        .map(|s| {
          let mut t: Vec<usize> = s.iter().map(|&v| p[v]).collect();
          t.sort_unstable();
          t
        })
        .collect();
      g.sort();
      g
    })
    .min()
    .unwrap()
}

fn weakly_closed(f: &Family) -> bool {
  let set: BTreeSet<&Vec<usize>> = f.iter().collect();
  f.iter().all(|a| {
    f.iter().all(|b| {
      let i: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
      i.is_empty() || set.contains(&i)
    })
  })
}

fn close(mut f: Family) -> Family {
  loop {
    let mut set: BTreeSet<Vec<usize>> = f.iter().cloned().collect();
    let before = set.len();
    for a in &f {
      for b in &f {
        let i: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
        if !i.is_empty() {
          set.insert(i);
        }
      }
    }
    f = set.into_iter().collect();
    if f.len() == before {
      return f;
    }
  }
}

fn uses_all(f: &Family, n: usize) -> bool { (0..n).all(|v| f.iter().any(|s| s.contains(&v))) }

/// Families on exactly `n` vertices closed under nonempty pairwise
/// intersection, one per isomorphism class, with 1-based vertices.
pub fn weak_families(n: usize) -> Vec<Family> {
  let subsets: Family = (0..1usize << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
  let perms = permutations(n);
  let mut seen = BTreeSet::new();
  for m in 1u64..1 << subsets.len() {
    let f: Family = (0..subsets.len()).filter(|i| m >> i & 1 == 1).map(|i| subsets[i].clone()).collect();
    if uses_all(&f, n) && weakly_closed(&f) {
      seen.insert(canonical(&f, &perms));
    }
  }
  seen.into_iter().map(|f| f.into_iter().map(|s| s.into_iter().map(|v| v + 1).collect()).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct HypergraphCase {
  pub name: String,
  pub h:    Hypergraph,
}

fn case(faces: &Family, cards: &[usize]) -> HypergraphCase {
  let h = Hypergraph::with_cardinalities(faces, cards).expect("generated faces are distinct");
  let fs: Vec<String> = (0..h.faces().len()).map(|i| h.face_name(i)).collect();
  HypergraphCase { name: format!("[{}] N={:?}", fs.join(" "), cards), h }
}

/// Number of random four-vertex families in the hypergraph corpus.
pub const RANDOM_FAMILIES: usize = 150;

/// Every weak-intersection family on at most three vertices (up to
/// isomorphism) with uniform cardinalities 1, 2, 3 and one mixed assignment,
/// followed by random weak-intersection families on four vertices with at most
/// nine faces and random cardinalities in `{1, 2, 3}`.
pub fn hypergraph_corpus(seed: u64) -> Vec<HypergraphCase> {
  let mut r = rng(seed);
  let mut out = Vec::new();
  for n in 1..=3 {
    for f in weak_families(n) {
      for c in 1..=3 {
        out.push(case(&f, &vec![c; n]));
      }
      let mixed: Vec<usize> = (0..n).map(|_| r.gen_range(1..=3)).collect();
      out.push(case(&f, &mixed));
    }
  }
  out.extend(random_families(&mut r, 4, 9, RANDOM_FAMILIES));
  out
}

pub fn random_families(r: &mut impl Rng, n: usize, max_faces: usize, count: usize) -> Vec<HypergraphCase> {
  let perms = permutations(n);
  let mut seen = BTreeSet::new();
  let mut out = Vec::new();
  let mut attempts = 0;
  while out.len() < count && attempts < 100 * count {
    attempts += 1;
    let k = r.gen_range(2..=5);
    let mut f: Family = (0..k)
      .map(|_| {
        let m = r.gen_range(1..1usize << n);
        (0..n).filter(|i| m >> i & 1 == 1).collect()
      })
      .collect();
    if r.gen_bool(0.3) {
      f.push(Vec::new());
    }
    let f = close(f);
    if f.len() > max_faces || !uses_all(&f, n) || !seen.insert(canonical(&f, &perms)) {
      continue;
    }
    let faces: Family = f.iter().map(|s| s.iter().map(|v| v + 1).collect()).collect();
    let cards: Vec<usize> = (0..n).map(|_| r.gen_range(1..=3)).collect();
    out.push(case(&faces, &cards));
  }
  out
}

/// The full simplex on `n` vertices: every subset, including the empty one.
pub fn simplex(n: usize, card: usize) -> Hypergraph {
  let faces: Family = (0..1usize << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect();
  Hypergraph::on_vertices(n, &faces, card).expect("distinct subsets")
}

/// Proper nonempty subsets of `n` vertices, optionally with the empty face.
pub fn simplex_boundary(n: usize, card: usize, with_empty: bool) -> Hypergraph {
  let faces: Family = (0..1usize << n)
    .filter(|&m| m + 1 != 1 << n && (with_empty || m != 0))
    .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect())
    .collect();
  Hypergraph::on_vertices(n, &faces, card).expect("distinct subsets")
}

/// Sub-hypergraphs of `h` that are themselves weak-intersection: all faces
/// except one maximal face, and the faces inside each maximal face.
pub fn sub_hypergraphs(h: &Hypergraph) -> Vec<Hypergraph> {
  let p = h.poset();
  let n = p.len();
  let maximal: Vec<usize> = (0..n).filter(|&a| !(0..n).any(|b| p.strict(b, a))).collect();
  let cards: Vec<usize> = (0..h.vertices().len()).map(|v| h.cardinality(v)).collect();
  let build = |keep: Vec<usize>| {
    let faces: Family = keep.iter().map(|&a| h.faces()[a].iter().map(|v| v + 1).collect()).collect();
    Hypergraph::with_cardinalities(&faces, &cards).ok().filter(|g| g.intersection_property().weak)
  };
  let mut out = Vec::new();
  if n > 1 {
    for &m in &maximal {
      out.extend(build((0..n).filter(|&a| a != m).collect()));
    }
  }
  for &m in &maximal {
    out.extend(build(p.down_set(m)));
  }
  out
}

/// A random poset on `n` elements named `p0, p1, ...`.
pub fn random_poset(r: &mut impl Rng, n: usize, density: f64) -> Poset {
  let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
  let mut arrows = Vec::new();
  for a in 0..n {
    for b in 0..a {
      if r.gen_bool(density) {
        arrows.push((names[a].clone(), names[b].clone()));
      }
    }
  }
  Poset::from_generators(&names, &arrows).expect("arrows point to lower indices")
}

/// A random injective presheaf realized as an arrangement of subspaces of a
/// common ambient space, ordered by inclusion along arrows: each stalk is the
/// sum of the stalks below it plus a few random vectors.
pub fn random_injective_presheaf<K: Field>(r: &mut impl Rng, field: &K, p: &Poset, max_dim: usize) -> InjectivePresheaf<K> {
  let ambient = r.gen_range(1..=max_dim);
  let n = p.len();
  let mut order: Vec<usize> = (0..n).collect();
  order.sort_by_key(|&a| p.down_set(a).len());
  let mut spaces: Vec<Option<Subspace<K>>> = vec![None; n];
  for &a in &order {
    let mut s = Subspace::zero(field, ambient);
    for b in p.down_set(a) {
      if b != a {
        s = s.sum(spaces[b].as_ref().unwrap()).unwrap();
      }
    }
    let extra = r.gen_range(0..=2);
    let vals: Vec<i64> = (0..ambient * extra).map(|_| r.gen_range(-3..=3)).collect();
    let v = Matrix::from_fn(field, ambient, extra, |i, j| field.from_i64(vals[i * extra + j]));
    s = s.sum(&Subspace::span(&v)).unwrap();
    spaces[a] = Some(s);
  }
  let spaces: Vec<Subspace<K>> = spaces.into_iter().map(Option::unwrap).collect();
  let dims = spaces.iter().map(Subspace::dim).collect();
  let maps: HashMap<(usize, usize), Matrix<K>> = p
    .covers()
    .into_iter()
    .map(|(a, b)| ((a, b), spaces[a].basis().solve(spaces[b].basis()).expect("lower stalk lies in the upper one")))
    .collect();
  InjectivePresheaf::new(p.clone(), field.clone(), dims, maps).expect("inclusions of subspaces")
}

/// The copresheaf of transposed maps.
pub fn dual_copresheaf<K: Field>(v: &InjectivePresheaf<K>) -> Copresheaf<K> {
  let p = v.poset();
  let maps = p.covers().into_iter().map(|(a, b)| ((a, b), v.map(a, b).transpose())).collect();
  Copresheaf::new(p.clone(), v.field().clone(), v.dims().to_vec(), maps).expect("transpose of injective maps is surjective")
}

/// Random injective presheaves over the prime field, on posets with at most six elements.
pub fn presheaf_corpus(seed: u64, count: usize) -> Vec<InjectivePresheaf<PrimeField>> {
  let mut r = rng(seed);
  let f = PrimeField::new(PRIME).unwrap();
  (0..count)
    .map(|_| {
      let n = r.gen_range(2..=6);
      let density = r.gen_range(0.2..0.7);
      let p = random_poset(&mut r, n, density);
      random_injective_presheaf(&mut r, &f, &p, 4)
    })
    .collect()
}

/// Covers used for comparison checks: the canonical cover, the basis opens of
/// the extremal elements, and a random union cover.
pub fn sample_covers(p: &Poset, t: Topology, r: &mut impl Rng) -> Vec<Cover> {
  let n = p.len();
  let mut out = vec![canonical_cover(p, t)];
  let tops: Vec<usize> = (0..n).filter(|&a| (0..n).all(|b| b == a || !t.basis_open(p, b).contains(&a))).collect();
  let members: Vec<OpenSet> = tops.iter().map(|&a| OpenSet::basis(p, a, t)).collect();
  if let Ok(c) = Cover::new(p, members) {
    if c.len() < n {
      out.push(c);
    }
  }
  let mut pts: Vec<usize> = (0..n).collect();
  pts.shuffle(r);
  let mut members: Vec<OpenSet> = Vec::new();
  for chunk in pts.chunks(2) {
    let mut u: Vec<usize> = chunk.iter().flat_map(|&a| t.basis_open(p, a)).collect();
    u.sort_unstable();
    u.dedup();
    if !members.iter().any(|m| m.points == u) {
      members.push(OpenSet { points: u, topology: t });
    }
  }
  if let Ok(c) = Cover::new(p, members) {
    out.push(c);
  }
  out
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn family_counts() {
    assert_eq!(weak_families(1).len(), 2);
    assert_eq!(weak_families(2).len(), 8);
    assert_eq!(weak_families(3).len(), 44);
  }

  #[test]
  fn corpus_is_small_and_weak() {
    let c = hypergraph_corpus(DEFAULT_SEED);
    assert!(c.len() < 500);
    assert!(c.iter().all(|x| x.h.intersection_property().weak));
    assert!(c.iter().any(|x| x.h.vertices().len() == 4));
  }

  #[test]
  fn corpus_is_deterministic() {
    let a: Vec<String> = hypergraph_corpus(7).into_iter().map(|c| c.name).collect();
    let b: Vec<String> = hypergraph_corpus(7).into_iter().map(|c| c.name).collect();
    assert_eq!(a, b);
  }

  #[test]
  fn random_presheaves_are_valid() {
    for v in presheaf_corpus(3, 20) {
      assert!(v.poset().len() <= 6);
      assert!(v.dims().iter().all(|&d| d <= 4));
      let _ = dual_copresheaf(&v);
    }
  }

  #[test]
  fn boundaries() {
    assert_eq!(simplex_boundary(3, 2, false).faces().len(), 6);
    assert_eq!(simplex_boundary(3, 2, true).faces().len(), 7);
    assert_eq!(simplex(2, 2).faces().len(), 4);
  }
}
