//! Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero on failure.

use std::time::Instant;

use posheaf::{
  cech::{canonical_cover, cech_complex, CechMode, CochainComplex, Cover},
  corpus::{self, HypergraphCase},
  field::{Field, PrimeField, Rationals},
  linalg::{Matrix, Subspace},
  marginal::{brute_force_h0, copresheaf_cohomology, default_max_degree, euler_char_sheaf, free_h0, index_formula, marginal_surjectivity, pseudomarginal_dim, theorem4_split},
  nerve::{compare_cech_nerve, homotopies_dk_dn, intersection_witness, nerve_complex, projection_homotopy, NerveMode},
  poset::{check_mobius, euler_char_hall, euler_char_mobius, mobius, Hypergraph, Poset},
  presheaf::{check_condition_g, free_copresheaf, free_presheaf, interaction_decomposition, reduced_presheaf, restricted_copresheaf, InjectivePresheaf, SpaceFunctor, Topology},
};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> { if cond { Ok(()) } else { Err(msg()) } }

fn corpus() -> Vec<HypergraphCase> { corpus::hypergraph_corpus(corpus::DEFAULT_SEED) }

fn d_squared<K: Field>(c: &CochainComplex<K>, what: &str) -> Result<(), String> {
  c.check_d_squared().map_err(|n| format!("{what}: δδ ≠ 0 in degree {n}"))
}

fn criterion_1(cases: &[HypergraphCase]) -> Outcome {
  let start = Instant::now();
  for c in cases {
    let e = euler_char_sheaf(&c.h, &Rationals, default_max_degree(&c.h)).map_err(|e| format!("{}: {e}", c.name))?;
    let rhs = index_formula(&c.h);
    ensure(e.euler == rhs, || format!("{}: χ = {} but Σ μ N = {rhs}", c.name, e.euler))?;
  }
  let secs = start.elapsed().as_secs_f64();
  ensure(secs < 300.0, || format!("took {secs:.1}s"))?;
  Ok(format!("{} hypergraphs in {secs:.1}s", cases.len()))
}

fn criterion_2() -> Outcome {
  for n in 1..=3 {
    for card in 1..=3 {
      let h = corpus::simplex(n, card);
      let want = card.pow(n as u32);
      let got = copresheaf_cohomology(&free_copresheaf(&h, &Rationals), 2).map_err(|e| e.to_string())?[0];
      ensure(got == want && free_h0(&h, &Rationals) == want, || format!("powerset n={n} N={card}: H⁰ = {got}, expected {want}"))?;
    }
  }
  let b = corpus::simplex_boundary(3, 2, true);
  let got = copresheaf_cohomology(&free_copresheaf(&b, &Rationals), 2).map_err(|e| e.to_string())?[0];
  ensure(got == 7, || format!("boundary with empty face: H⁰ = {got}, expected 7"))?;
  for n in 1..=4 {
    let full = corpus::simplex(n, 2);
    let nonempty: Vec<Vec<usize>> = full.faces().iter().filter(|f| !f.is_empty()).map(|f| f.iter().map(|v| v + 1).collect()).collect();
    let chi = euler_char_mobius(&Hypergraph::on_vertices(n, &nonempty, 2).unwrap().poset());
    ensure(chi == 1, || format!("χ(Δ({})) = {chi}", n - 1))?;
    if n >= 2 {
      let chi = euler_char_mobius(&corpus::simplex_boundary(n, 2, false).poset());
      let want = 1 + if n % 2 == 0 { 1 } else { -1 };
      ensure(chi == want, || format!("χ(∂Δ({})) = {chi}, expected {want}", n - 1))?;
    }
  }
  Ok("powersets, boundary with empty face, simplex Euler characteristics".into())
}

fn vanishes(dims: &[usize]) -> bool { dims[1..].iter().all(|&d| d == 0) }

fn criterion_3(cases: &[HypergraphCase]) -> Outcome {
  let mut strong = 0;
  for c in cases {
    let m = default_max_degree(&c.h);
    let r = copresheaf_cohomology(&restricted_copresheaf(&c.h, &Rationals), m).map_err(|e| e.to_string())?;
    ensure(vanishes(&r), || format!("{}: restricted functor has cohomology {r:?}", c.name))?;
    if c.h.intersection_property().strong {
      strong += 1;
      let f = copresheaf_cohomology(&free_copresheaf(&c.h, &Rationals), m).map_err(|e| e.to_string())?;
      ensure(vanishes(&f), || format!("{}: free functor has cohomology {f:?}", c.name))?;
    }
  }
  Ok(format!("{} restricted, {strong} free", cases.len()))
}

fn constant_witness<K: Field>(f: &K, w: &[K::Elem]) -> bool { !w.is_empty() && !f.is_zero(&w[0]) && w.iter().all(|x| x == &w[0]) }

fn criterion_4_and_projectors(cases: &[HypergraphCase]) -> (Outcome, usize) {
  let mut verified = 0;
  let mut run = || -> Outcome {
    let mut random = 0;
    let mut split = [0usize; 2];
    for v in corpus::presheaf_corpus(corpus::DEFAULT_SEED, 120) {
      let g = check_condition_g(&v);
      let d = interaction_decomposition(&v);
      ensure(g.holds == d.is_ok(), || format!("random presheaf on {:?}: condition G {} but decomposition {}", v.poset().elements(), g.holds, d.is_ok()))?;
      if let Ok(dec) = d {
        dec.verify(&v).map_err(|e| format!("projector laws: {e}"))?;
        verified += 1;
      }
      split[g.holds as usize] += 1;
      random += 1;
    }
    let mut built = 0;
    for c in cases {
      for v in [free_presheaf(&c.h, &Rationals), reduced_presheaf(&c.h, &Rationals)] {
        let g = check_condition_g(&v);
        let d = interaction_decomposition(&v);
        ensure(g.holds == d.is_ok(), || format!("{}: condition G {} but decomposition {}", c.name, g.holds, d.is_ok()))?;
        if let Ok(dec) = d {
          dec.verify(&v).map_err(|e| format!("{}: projector laws: {e}", c.name))?;
          verified += 1;
        }
        built += 1;
      }
    }
    let vee = Hypergraph::on_vertices(2, &[vec![1], vec![2], vec![1, 2]], 2).unwrap();
    let v = free_presheaf(&vee, &Rationals);
    let g = check_condition_g(&v);
    ensure(!g.holds && interaction_decomposition(&v).is_err(), || "counterexample is not detected both ways".into())?;
    ensure(constant_witness(&Rationals, &g.violations[0].witness), || format!("witness {:?} is not constant", g.violations[0].witness))?;
    Ok(format!("{random} random ({} decomposable, {} not), {built} constructed, counterexample rejected with constant witness", split[1], split[0]))
  };
  let out = run();
  (out, verified)
}

/// Spaces with at most six points, each with a functor in both topologies.
fn small_instances(cases: &[HypergraphCase]) -> Vec<(String, InjectivePresheaf<PrimeField>)> {
  let f = PrimeField::new(corpus::PRIME).unwrap();
  let mut out: Vec<(String, InjectivePresheaf<PrimeField>)> = Vec::new();
  for c in cases {
    let uniform2 = (0..c.h.vertices().len()).all(|v| c.h.cardinality(v) == 2);
    if c.h.faces().len() <= 6 && uniform2 {
      out.push((c.name.clone(), free_presheaf(&c.h, &f)));
    }
  }
  for (i, v) in corpus::presheaf_corpus(corpus::DEFAULT_SEED + 1, 40).into_iter().enumerate() {
    out.push((format!("random presheaf {i}"), v));
  }
  out
}

/// Every cover whose members are basis opens: the maximal ones plus any subset of the rest.
fn basis_covers(p: &Poset, t: Topology) -> Vec<Cover> {
  let n = p.len();
  let maximal: Vec<usize> = (0..n).filter(|&a| (0..n).all(|b| b == a || !t.basis_open(p, b).contains(&a))).collect();
  let rest: Vec<usize> = (0..n).filter(|a| !maximal.contains(a)).collect();
  (0..1usize << rest.len())
    .filter_map(|mask| {
      let mut idx = maximal.clone();
      idx.extend(rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a));
      idx.sort_unstable();
      Cover::new(p, idx.iter().map(|&a| posheaf::cech::OpenSet::basis(p, a, t)).collect()).ok()
    })
    .collect()
}

fn homotopies_on<K: Field, F: SpaceFunctor<K>>(name: &str, f: &F, r: &mut impl Rng, counts: &mut [usize; 2]) -> Result<(), String> {
  let p = f.poset();
  let t = f.topology();
  let mut covers = corpus::sample_covers(p, t, r);
  covers.extend(basis_covers(p, t));
  for cover in covers {
    homotopies_dk_dn(f, &cover, 4).map_err(|e| format!("{name} ({t:?}, cover of {}): {e}", cover.len()))?;
    counts[0] += 1;
  }
  let fine = canonical_cover(p, t);
  let tops: Vec<usize> = (0..p.len()).filter(|&a| (0..p.len()).all(|b| b == a || !t.basis_open(p, b).contains(&a))).collect();
  let coarse = Cover::new(p, tops.iter().map(|&a| posheaf::cech::OpenSet::basis(p, a, t)).collect()).map_err(|e| e.to_string())?;
  let containing = |i: usize| -> Vec<usize> {
    (0..coarse.len()).filter(|&j| fine.members[i].points.iter().all(|x| coarse.members[j].points.contains(x))).collect()
  };
  let lambda: Vec<usize> = (0..fine.len()).map(|i| containing(i)[0]).collect();
  let mu: Vec<usize> = (0..fine.len()).map(|i| *containing(i).last().unwrap()).collect();
  let rep = projection_homotopy(f, &fine, &coarse, &lambda, &mu, 4).map_err(|e| format!("{name}: {e}"))?;
  ensure(rep.holds, || format!("{name}: prism identity fails: {}", rep.failures[0]))?;
  counts[1] += 1;
  Ok(())
}

fn criterion_5(cases: &[HypergraphCase]) -> Outcome {
  let mut r = corpus::rng(corpus::DEFAULT_SEED);
  let mut counts = [0usize; 2];
  let instances = small_instances(cases);
  for (name, v) in &instances {
    homotopies_on(name, v, &mut r, &mut counts)?;
    homotopies_on(name, &corpus::dual_copresheaf(v), &mut r, &mut counts)?;
  }
  Ok(format!("{} (space, functor) pairs, {} covers, {} prism checks, degrees 0-3", 2 * instances.len(), counts[0], counts[1]))
}

fn compare_on<K: Field, F: SpaceFunctor<K>>(name: &str, f: &F) -> Result<bool, String> {
  if intersection_witness(f.poset(), f.topology()).is_some() {
    return Ok(false);
  }
  let r = compare_cech_nerve(f, 4).map_err(|e| format!("{name}: {e}"))?;
  ensure(r.isomorphic(), || format!("{name}: Čech {:?}, nerve {:?}, ranks {:?}", r.cech_dims, r.nerve_dims, r.induced_ranks))?;
  Ok(true)
}

fn criterion_6(cases: &[HypergraphCase]) -> Outcome {
  let mut checked = 0;
  for (name, v) in small_instances(cases) {
    checked += compare_on(&name, &v)? as usize;
    checked += compare_on(&name, &corpus::dual_copresheaf(&v))? as usize;
  }
  for c in cases.iter().filter(|c| c.h.faces().len() <= 8) {
    checked += compare_on(&c.name, &free_copresheaf(&c.h, &Rationals))? as usize;
    checked += compare_on(&c.name, &restricted_copresheaf(&c.h, &Rationals))? as usize;
  }
  ensure(checked > 0, || "no conditional-product instance".into())?;
  Ok(format!("{checked} conditional-product instances, degrees 0-3"))
}

fn criterion_7(cases: &[HypergraphCase]) -> Outcome {
  let a = corpus::simplex_boundary(3, 2, false);
  let b = corpus::simplex(3, 2);
  let r = marginal_surjectivity(&a, &b, &Rationals).map_err(|e| e.to_string())?;
  ensure((r.source_dim, r.target_dim, r.surjective) == (7, 6, true), || format!("boundary in simplex: {} -> {}, surjective {}", r.source_dim, r.target_dim, r.surjective))?;
  let mut n = 0;
  for c in cases {
    for sub in corpus::sub_hypergraphs(&c.h) {
      let r = marginal_surjectivity(&sub, &c.h, &Rationals).map_err(|e| format!("{}: {e}", c.name))?;
      ensure(r.surjective, || format!("{}: rank {} onto {}", c.name, r.rank, r.target_dim))?;
      n += 1;
    }
  }
  Ok(format!("{n} inclusions plus 7 -> 6 on the triangle boundary"))
}

fn criterion_8(cases: &[HypergraphCase]) -> Outcome {
  for c in cases {
    let s = theorem4_split(&c.h, &Rationals, default_max_degree(&c.h)).map_err(|e| e.to_string())?;
    ensure(s.holds, || format!("{}: free {:?}, restricted {:?}, constant {:?}", c.name, s.free, s.restricted, s.constant))?;
  }
  Ok(format!("{} hypergraphs", cases.len()))
}

fn criterion_9(cases: &[HypergraphCase]) -> Outcome {
  let mut modes = 0;
  for c in cases {
    let rb = brute_force_h0(&c.h, true, &Rationals).map_err(|e| e.to_string())?;
    let rp = pseudomarginal_dim(&c.h, &Rationals);
    ensure(rb == rp, || format!("{}: restricted oracle {rb}, sections {rp}", c.name))?;
    let fb = brute_force_h0(&c.h, false, &Rationals).map_err(|e| e.to_string())?;
    let fc = copresheaf_cohomology(&free_copresheaf(&c.h, &Rationals), 1).map_err(|e| e.to_string())?[0];
    ensure(fb == fc, || format!("{}: free oracle {fb}, Čech {fc}", c.name))?;
    if c.h.faces().len() <= 6 {
      let f = free_copresheaf(&c.h, &Rationals);
      let cover = canonical_cover(f.poset(), Topology::Lower);
      let alt = cech_complex(&cover, &f, 3, CechMode::Alternating).map_err(|e| e.to_string())?;
      let full = cech_complex(&cover, &f, 3, CechMode::Full).map_err(|e| e.to_string())?;
      d_squared(&full, &c.name)?;
      let (a, b) = (alt.cohomology_dims(2).unwrap(), full.cohomology_dims(2).unwrap());
      ensure(a == b, || format!("{}: alternating {a:?}, full {b:?}", c.name))?;
      let nd = nerve_complex(&f, Topology::Lower, 3, NerveMode::Nondegenerate).map_err(|e| e.to_string())?;
      let nf = nerve_complex(&f, Topology::Lower, 3, NerveMode::Full).map_err(|e| e.to_string())?;
      d_squared(&nd, &c.name)?;
      d_squared(&nf, &c.name)?;
      let (x, y) = (nd.cohomology_dims(2).unwrap(), nf.cohomology_dims(2).unwrap());
      ensure(x == y, || format!("{}: nondegenerate {x:?}, full {y:?}", c.name))?;
      modes += 1;
    }
  }
  Ok(format!("{} oracle pairs, {modes} mode comparisons", cases.len()))
}

fn grassmann(r: &mut impl Rng) -> Result<usize, String> {
  let f = PrimeField::new(corpus::PRIME).unwrap();
  let mut n = 0;
  for _ in 0..200 {
    let amb = r.gen_range(1..=6);
    let mut rand_space = |k: usize| {
      let vals: Vec<i64> = (0..amb * k).map(|_| r.gen_range(-2..=2)).collect();
      Subspace::span(&Matrix::from_fn(&f, amb, k, |i, j| f.from_i64(vals[i * k + j])))
    };
    let ka = rand_space(amb.min(3));
    let kb = rand_space(amb.min(4));
    let lhs = ka.sum(&kb).unwrap().dim() + ka.intersect(&kb).unwrap().dim();
    ensure(lhs == ka.dim() + kb.dim(), || format!("Grassmann identity fails in ambient {amb}"))?;
    n += 1;
  }
  Ok(n)
}

fn criterion_10(cases: &[HypergraphCase], projectors: usize) -> Outcome {
  let mut r = corpus::rng(corpus::DEFAULT_SEED + 2);
  let mut posets: Vec<Poset> = cases.iter().map(|c| c.h.poset()).collect();
  posets.extend((0..100).map(|_| {
    let n = r.gen_range(1..=7);
    corpus::random_poset(&mut r, n, 0.4)
  }));
  for p in &posets {
    check_mobius(p, &mobius(p)).map_err(|(a, b)| format!("Möbius identity fails at {} -> {}", p.name(a), p.name(b)))?;
    ensure(euler_char_hall(p) == euler_char_mobius(p), || format!("Hall and Möbius disagree on {:?}", p.elements()))?;
  }
  let mut complexes = 0;
  for c in cases {
    let m = default_max_degree(&c.h);
    for f in [free_copresheaf(&c.h, &Rationals), restricted_copresheaf(&c.h, &Rationals)] {
      d_squared(&cech_complex(&canonical_cover(f.poset(), Topology::Lower), &f, m, CechMode::Alternating).unwrap(), &c.name)?;
      complexes += 1;
    }
    let v = free_presheaf(&c.h, &Rationals);
    d_squared(&nerve_complex(&v, Topology::Upper, m, NerveMode::Nondegenerate).unwrap(), &c.name)?;
    complexes += 1;
  }
  let g = grassmann(&mut r)?;
  Ok(format!("{} posets, {complexes} complexes, {g} Grassmann checks, {projectors} decompositions", posets.len()))
}

fn main() {
  let cases = corpus();
  let (c4, projectors) = criterion_4_and_projectors(&cases);
  let results: Vec<(usize, &str, Box<dyn FnOnce() -> Outcome>)> = vec![
    (1, "index formula", Box::new(|| criterion_1(&cases))),
    (2, "closed forms", Box::new(criterion_2)),
    (3, "acyclicity", Box::new(|| criterion_3(&cases))),
    (4, "decomposition iff condition G", Box::new(move || c4)),
    (5, "homotopy identities and prism", Box::new(|| criterion_5(&cases))),
    (6, "Čech and nerve comparison", Box::new(|| criterion_6(&cases))),
    (7, "marginal surjectivity", Box::new(|| criterion_7(&cases))),
    (8, "degree-zero split", Box::new(|| criterion_8(&cases))),
    (9, "oracle and mode agreement", Box::new(|| criterion_9(&cases))),
    (10, "structural suites", Box::new(|| criterion_10(&cases, projectors))),
  ];
  let mut failed = 0;
  for (n, name, run) in results {
    let start = Instant::now();
    let out = run();
    let secs = start.elapsed().as_secs_f64();
    match out {
      Ok(detail) => println!("criterion {n:>2} PASS {name}: {detail} [{secs:.1}s]"),
      Err(why) => {
        failed += 1;
        println!("criterion {n:>2} FAIL {name}: {why} [{secs:.1}s]");
      },
    }
  }
  if failed > 0 {
    std::process::exit(1);
  }
}
