use posheaf::{
  cech::{canonical_cover, cech_complex, CechMode},
  corpus::{self, HypergraphCase},
  field::Rationals,
  marginal::{
    brute_force_h0, copresheaf_cohomology, default_max_degree, euler_char_sheaf, free_h0, index_formula, marginal_report, marginal_surjectivity,
    pseudomarginal_dim, theorem4_split,
  },
  nerve::{check_simplicial_identities, compare_cech_nerve, homotopies_dk_dn, intersection_witness, nerve_complex, NerveMode},
  poset::{check_mobius, euler_char_hall, euler_char_mobius, mobius, structural_predicates, Poset},
  presheaf::{check_condition_g, free_presheaf, interaction_decomposition, reduced_presheaf, restricted_copresheaf, SpaceFunctor, Topology},
};
use serde_json::{json, Value};

use crate::{Cli, Command, Outcome};

struct Check {
  name:    &'static str,
  count:   usize,
  failure: Option<String>,
}

fn check<T>(name: &'static str, items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<(), String>) -> Check {
  let mut count = 0;
  for x in items {
    if let Err(e) = f(x) {
      return Check { name, count, failure: Some(e) };
    }
    count += 1;
  }
  Check { name, count, failure: None }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> { if cond { Ok(()) } else { Err(msg()) } }

fn small(cases: &[HypergraphCase], faces: usize) -> impl Iterator<Item = &HypergraphCase> { cases.iter().filter(move |c| c.h.faces().len() <= faces) }

fn posets(seed: u64, cases: &[HypergraphCase]) -> Vec<Poset> {
  let mut r = corpus::rng(seed);
  let mut out: Vec<Poset> = cases.iter().map(|c| c.h.poset()).collect();
  for i in 0..60 {
    out.push(corpus::random_poset(&mut r, 1 + i % 7, 0.4));
  }
  out
}

fn suite(cmd: &Command, seed: u64) -> Vec<Check> {
  let cases = corpus::hypergraph_corpus(seed);
  let name = |c: &HypergraphCase| c.name.clone();
  match cmd {
    Command::Mobius { .. } => vec![check("mobius_identity", posets(seed, &cases), |p| {
      check_mobius(&p, &mobius(&p)).map_err(|(a, b)| format!("{} -> {}", p.name(a), p.name(b)))
    })],
    Command::Euler { .. } => vec![
      check("hall_equals_mobius", posets(seed, &cases), |p| {
        ensure(euler_char_hall(&p) == euler_char_mobius(&p), || format!("{:?}", p.elements()))
      }),
      check("simplex_boundary", 2..=5usize, |n| {
        let chi = euler_char_mobius(&corpus::simplex_boundary(n, 2, false).poset());
        ensure(chi == 1 + if n % 2 == 0 { 1 } else { -1 }, || format!("{n} vertices: {chi}"))
      }),
    ],
    Command::Predicates { .. } => vec![
      check("weak_intersection", &cases, |c| ensure(c.h.intersection_property().weak, || name(c))),
      check("dimension", &cases, |c| {
        let p = c.h.poset();
        let s = structural_predicates(&p);
        ensure(s.dimension_of.values().copied().max().unwrap_or(0) == p.dimension(), || name(c))
      }),
    ],
    Command::CheckG { .. } | Command::Decompose { .. } => {
      let random = corpus::presheaf_corpus(seed, 60);
      vec![
        check("g_iff_decomposition_random", &random, |v| {
          let d = interaction_decomposition(v);
          ensure(check_condition_g(v).holds == d.is_ok(), || format!("{:?}", v.poset().elements()))?;
          d.map_or(Ok(()), |d| d.verify(v))
        }),
        check("g_iff_decomposition_corpus", small(&cases, 6), |c| {
          for v in [free_presheaf(&c.h, &Rationals), reduced_presheaf(&c.h, &Rationals)] {
            let d = interaction_decomposition(&v);
            ensure(check_condition_g(&v).holds == d.is_ok(), || name(c))?;
            d.map_or(Ok(()), |d| d.verify(&v))?;
          }
          Ok(())
        }),
      ]
    },
    Command::Cech { .. } => vec![
      check("restricted_acyclic", &cases, |c| {
        let d = copresheaf_cohomology(&restricted_copresheaf(&c.h, &Rationals), default_max_degree(&c.h)).map_err(|e| e.to_string())?;
        ensure(d[1..].iter().all(|&x| x == 0), || format!("{}: {d:?}", name(c)))
      }),
      check("full_equals_alternating", small(&cases, 5), |c| {
        let f = restricted_copresheaf(&c.h, &Rationals);
        let cover = canonical_cover(f.poset(), Topology::Lower);
        let a = cech_complex(&cover, &f, 3, CechMode::Alternating).and_then(|x| x.cohomology_dims(2)).map_err(|e| e.to_string())?;
        let full = cech_complex(&cover, &f, 3, CechMode::Full).map_err(|e| e.to_string())?;
        ensure(full.check_d_squared().is_ok(), || name(c))?;
        ensure(full.cohomology_dims(2).map_err(|e| e.to_string())? == a, || name(c))
      }),
    ],
    Command::Nerve { .. } => vec![
      check("simplicial_identities", small(&cases, 6), |c| check_simplicial_identities(&c.h.poset(), 3)),
      check("full_equals_nondegenerate", small(&cases, 6), |c| {
        let f = restricted_copresheaf(&c.h, &Rationals);
        let a = nerve_complex(&f, Topology::Lower, 3, NerveMode::Nondegenerate).map_err(|e| e.to_string())?;
        let b = nerve_complex(&f, Topology::Lower, 3, NerveMode::Full).map_err(|e| e.to_string())?;
        ensure(a.check_d_squared().is_ok() && b.check_d_squared().is_ok(), || name(c))?;
        ensure(a.cohomology_dims(2).ok() == b.cohomology_dims(2).ok(), || name(c))
      }),
    ],
    Command::Compare { .. } => vec![check("cech_nerve_isomorphic", small(&cases, 8), |c| {
      let f = restricted_copresheaf(&c.h, &Rationals);
      if intersection_witness(f.poset(), f.topology()).is_some() {
        return Ok(());
      }
      let r = compare_cech_nerve(&f, 4).map_err(|e| e.to_string())?;
      ensure(r.isomorphic(), || format!("{}: {r:?}", name(c)))
    })],
    Command::VerifyHomotopy { .. } => {
      let mut r = corpus::rng(seed);
      vec![check("homotopy_identities", corpus::presheaf_corpus(seed, 20), |v| {
        for cover in corpus::sample_covers(v.poset(), v.topology(), &mut r) {
          homotopies_dk_dn(&v, &cover, 4).map_err(|e| e.to_string())?;
        }
        let dual = corpus::dual_copresheaf(&v);
        for cover in corpus::sample_covers(dual.poset(), Topology::Lower, &mut r) {
          homotopies_dk_dn(&dual, &cover, 4).map_err(|e| e.to_string())?;
        }
        Ok(())
      })]
    },
    Command::Marginal { .. } => vec![
      check("index_formula", &cases, |c| {
        let e = euler_char_sheaf(&c.h, &Rationals, default_max_degree(&c.h)).map_err(|e| e.to_string())?;
        ensure(e.euler == index_formula(&c.h), || name(c))
      }),
      check("degree_zero_split", &cases, |c| {
        let s = theorem4_split(&c.h, &Rationals, default_max_degree(&c.h)).map_err(|e| e.to_string())?;
        ensure(s.holds, || name(c))
      }),
      check("report_consistent", &cases, |c| {
        let m = marginal_report(&c.h, &Rationals, default_max_degree(&c.h)).map_err(|e| e.to_string())?;
        ensure(m.consistent(), || name(c))
      }),
    ],
    Command::Surjectivity { .. } => vec![check("sub_hypergraphs_surjective", &cases, |c| {
      for sub in corpus::sub_hypergraphs(&c.h) {
        let r = marginal_surjectivity(&sub, &c.h, &Rationals).map_err(|e| e.to_string())?;
        ensure(r.surjective, || name(c))?;
      }
      Ok(())
    })],
    Command::Oracle { .. } => vec![check("brute_force_agrees", &cases, |c| {
      let rb = brute_force_h0(&c.h, true, &Rationals).map_err(|e| e.to_string())?;
      let fb = brute_force_h0(&c.h, false, &Rationals).map_err(|e| e.to_string())?;
      ensure(rb == pseudomarginal_dim(&c.h, &Rationals) && fb == free_h0(&c.h, &Rationals), || name(c))
    })],
  }
}

pub fn run(cli: &Cli) -> Outcome {
  let checks = suite(&cli.command, cli.seed);
  let ok = checks.iter().all(|c| c.failure.is_none());
  let rows: Vec<Value> = checks
    .iter()
    .map(|c| {
      let mut v = json!({ "name": c.name, "passed": c.failure.is_none(), "count": c.count });
      if let Some(w) = &c.failure {
        v["witness"] = json!(w);
      }
      v
    })
    .collect();
  let text = checks
    .iter()
    .map(|c| match &c.failure {
      None => format!("PASS {} ({} cases)", c.name, c.count),
      Some(w) => format!("FAIL {} after {} cases: {w}", c.name, c.count),
    })
    .collect::<Vec<_>>()
    .join("\n");
  Outcome { ok, value: json!({ "suite": cli.command.name(), "seed": cli.seed, "passed": ok, "checks": rows }), text: Some(text) }
}
