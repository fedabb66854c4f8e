use std::{io::Read, path::Path};

use posheaf::{
  cech::{canonical_cover, cech_complex, CechMode, CochainComplex, Cover, SectionCache},
  corpus,
  field::Field,
  io::{self, Functor},
  marginal::{brute_force_h0, default_max_degree, free_h0, marginal_report, marginal_surjectivity, pseudomarginal_dim},
  nerve::{compare_cech_nerve, nerve_complex, homotopy_operators, verify_homotopies, NerveMode},
  poset::{chain_counts, check_mobius, euler_char_hall, euler_char_mobius, mobius, structural_predicates, Hypergraph, Poset},
  presheaf::{
    check_condition_g, free_copresheaf, free_presheaf, interaction_decomposition, reduced_presheaf, restricted_copresheaf, Copresheaf, InjectivePresheaf,
    SpaceFunctor, Topology,
  },
  Error, Result,
};
use serde_json::{json, Map, Value};

use crate::{Cli, Command, FunctorKind, Mode, Outcome};

fn read(path: Option<&Path>) -> Result<Value> {
  let path = path.ok_or_else(|| Error::Input("missing input file (use - for stdin)".into()))?;
  let text = if path == Path::new("-") {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(e.to_string()))?;
    s
  } else {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
  };
  io::parse_json(&text)
}

/// What an input document describes.
enum Doc<K: Field> {
  Poset(Poset),
  Hypergraph(Hypergraph),
  Functor(Functor<K>),
}

fn classify<K: Field>(v: &Value, field: &K) -> Result<Doc<K>> {
  if v.get("poset").is_some() {
    Ok(Doc::Functor(io::functor_from_value(v, field)?))
  } else if v.get("faces").is_some() {
    Ok(Doc::Hypergraph(io::hypergraph_from_value(v)?))
  } else if v.get("elements").is_some() {
    Ok(Doc::Poset(io::poset_from_value(v)?))
  } else {
    Err(Error::Input("expected a poset, hypergraph or functor document".into()))
  }
}

fn poset_of<K: Field>(doc: &Doc<K>) -> Poset {
  match doc {
    Doc::Poset(p) => p.clone(),
    Doc::Hypergraph(h) => h.poset(),
    Doc::Functor(f) => f.poset().clone(),
  }
}

fn hypergraph(v: &Value) -> Result<Hypergraph> {
  if v.get("faces").is_none() {
    return Err(Error::Input("expected a hypergraph document".into()));
  }
  io::hypergraph_from_value(v)
}

fn functor<K: Field>(doc: Doc<K>, kind: Option<FunctorKind>, default: FunctorKind, field: &K) -> Result<Functor<K>> {
  use FunctorKind::*;
  let h = match doc {
    Doc::Functor(f) if kind.is_none() => return Ok(f),
    Doc::Functor(_) => return Err(Error::Input("--functor applies to hypergraph and poset inputs only".into())),
    Doc::Poset(p) => match kind.unwrap_or(Constant) {
      Constant => return Ok(Functor::Presheaf(InjectivePresheaf::constant(&p, field))),
      Coconstant => return Ok(Functor::Copresheaf(Copresheaf::constant(&p, field))),
      k => return Err(Error::Input(format!("--functor {k:?} needs a hypergraph input"))),
    },
    Doc::Hypergraph(h) => h,
  };
  Ok(match kind.unwrap_or(default) {
    Free => Functor::Presheaf(free_presheaf(&h, field)),
    Reduced => Functor::Presheaf(reduced_presheaf(&h, field)),
    Constant => Functor::Presheaf(InjectivePresheaf::constant(&h.poset(), field)),
    Cofree => Functor::Copresheaf(free_copresheaf(&h, field)),
    Restricted => Functor::Copresheaf(restricted_copresheaf(&h, field)),
    Coconstant => Functor::Copresheaf(Copresheaf::constant(&h.poset(), field)),
  })
}

fn presheaf<K: Field>(f: Functor<K>) -> Result<InjectivePresheaf<K>> {
  match f {
    Functor::Presheaf(v) => Ok(v),
    Functor::Copresheaf(_) => Err(Error::Variance("this command needs a presheaf".into())),
  }
}

fn vector<K: Field>(f: &K, v: &[K::Elem]) -> Value { Value::Array(v.iter().map(|x| json!(f.format(x))).collect()) }

fn names(p: &Poset, idx: &[usize]) -> Vec<String> { idx.iter().map(|&i| p.name(i).to_string()).collect() }

fn topology_name(t: Topology) -> &'static str {
  match t {
    Topology::Lower => "lower",
    Topology::Upper => "upper",
  }
}

fn cover_value(p: &Poset, c: &Cover) -> Value { Value::Array(c.members.iter().map(|m| json!(names(p, &m.points))).collect()) }

fn max_degree(cli: &Cli, p: &Poset) -> usize { cli.max_degree.unwrap_or(p.dimension() + 3).max(1) }

fn complex_report<K: Field>(cli: &Cli, c: &CochainComplex<K>, label: impl Fn(&[usize]) -> String, extra: Map<String, Value>) -> Result<Outcome> {
  let squared = c.check_d_squared();
  let mut m = extra;
  m.insert("max_degree".into(), json!(c.max_degree()));
  m.insert("cochain_dims".into(), json!(c.dims()));
  m.insert("cohomology".into(), json!(c.cohomology_dims(c.max_degree() - 1)?));
  m.insert("d_squared_zero".into(), json!(squared.is_ok()));
  if let Err(n) = squared {
    m.insert("witness".into(), json!({ "degree": n }));
  }
  if cli.emit_complex {
    m.insert("complex".into(), io::complex_to_value(c, label));
  }
  Ok(Outcome::new(squared.is_ok(), Value::Object(m)))
}

pub fn run<K: Field>(cli: &Cli, field: K) -> Result<Outcome> {
  match &cli.command {
    Command::Mobius { input } => {
      let p = poset_of(&classify(&read(input.as_deref())?, &field)?);
      let mu = mobius(&p);
      let mut entries = Vec::new();
      for a in 0..p.len() {
        for b in p.down_set(a) {
          if mu.get(a, b) != 0 {
            entries.push(json!([p.name(a), p.name(b), mu.get(a, b)]));
          }
        }
      }
      let check = check_mobius(&p, &mu);
      let mut v = json!({ "elements": p.elements(), "mobius": entries, "identity_holds": check.is_ok() });
      if let Err((a, b)) = check {
        v["witness"] = json!([p.name(a), p.name(b)]);
      }
      Ok(Outcome::new(check.is_ok(), v))
    },
    Command::Euler { input } => {
      let p = poset_of(&classify(&read(input.as_deref())?, &field)?);
      let (m, h) = (euler_char_mobius(&p), euler_char_hall(&p));
      let v = json!({ "euler": m, "hall": h, "chain_counts": chain_counts(&p) });
      let mut out = Outcome::new(m == h, v);
      if m == h {
        out.text = Some(m.to_string());
      }
      Ok(out)
    },
    Command::Predicates { input } => {
      let doc = classify(&read(input.as_deref())?, &field)?;
      let mut v = serde_json::to_value(structural_predicates(&poset_of(&doc))).expect("serializable");
      if let Doc::Hypergraph(h) = &doc {
        v["intersection"] = serde_json::to_value(h.intersection_property()).expect("serializable");
      }
      Ok(Outcome::new(true, v))
    },
    Command::CheckG { input } => {
      let doc = classify(&read(input.as_deref())?, &field)?;
      let v = presheaf(functor(doc, cli.functor, FunctorKind::Free, &field)?)?;
      let p = v.poset();
      let g = check_condition_g(&v);
      let violations: Vec<Value> = g
        .violations
        .iter()
        .map(|w| json!({ "source": p.name(w.source), "target": p.name(w.target), "witness": vector(&field, &w.witness) }))
        .collect();
      Ok(Outcome::new(g.holds, json!({ "holds": g.holds, "violations": violations })))
    },
    Command::Decompose { input } => {
      let doc = classify(&read(input.as_deref())?, &field)?;
      let v = presheaf(functor(doc, cli.functor, FunctorKind::Free, &field)?)?;
      let p = v.poset();
      match interaction_decomposition(&v) {
        Ok(dec) => {
          let verified = dec.verify(&v);
          let dims: Map<String, Value> = dec.dims().iter().enumerate().map(|(a, d)| (p.name(a).to_string(), json!(d))).collect();
          let bases: Map<String, Value> =
            dec.interaction.iter().enumerate().map(|(a, m)| (p.name(a).to_string(), io::matrix_to_value(m))).collect();
          let mut out = json!({ "decomposable": true, "interaction_dims": dims, "interaction_bases": bases, "projectors_verified": verified.is_ok() });
          if let Err(e) = &verified {
            out["witness"] = json!(e);
          }
          Ok(Outcome::new(verified.is_ok(), out))
        },
        Err(fail) => {
          let g = check_condition_g(&v);
          let violations: Vec<Value> = g
            .violations
            .iter()
            .map(|w| json!({ "source": p.name(w.source), "target": p.name(w.target), "witness": vector(&field, &w.witness) }))
            .collect();
          let out = json!({
            "decomposable": false,
            "failure": { "element": p.name(fail.element), "dim": fail.dim, "sum_dims": fail.sum_dims, "rank": fail.rank, "defect": fail.defect() },
            "condition_g_violations": violations,
          });
          Ok(Outcome::new(false, out))
        },
      }
    },
    Command::Cech { input } => {
      let doc = classify(&read(input.as_deref())?, &field)?;
      let f = functor(doc, cli.functor, FunctorKind::Restricted, &field)?;
      let p = f.poset();
      let cover = canonical_cover(p, f.topology());
      let mode = if cli.mode == Mode::Full { CechMode::Full } else { CechMode::Alternating };
      let c = cech_complex(&cover, &f, max_degree(cli, p), mode)?;
      let mut extra = Map::new();
      extra.insert("topology".into(), json!(topology_name(f.topology())));
      extra.insert("cover".into(), cover_value(p, &cover));
      let label = |s: &[usize]| format!("({})", s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
      complex_report(cli, &c, label, extra)
    },
    Command::Nerve { input } => {
      let doc = classify(&read(input.as_deref())?, &field)?;
      let f = functor(doc, cli.functor, FunctorKind::Restricted, &field)?;
      let p = f.poset().clone();
      let mode = if cli.mode == Mode::Full { NerveMode::Full } else { NerveMode::Nondegenerate };
      let c = nerve_complex(&f, f.topology(), max_degree(cli, &p), mode)?;
      let mut extra = Map::new();
      extra.insert("topology".into(), json!(topology_name(f.topology())));
      let label = |s: &[usize]| names(&p, s).join("->");
      complex_report(cli, &c, label, extra)
    },
    Command::Compare { input } => {
      let doc = classify(&read(input.as_deref())?, &field)?;
      let f = functor(doc, cli.functor, FunctorKind::Restricted, &field)?;
      match compare_cech_nerve(&f, max_degree(cli, f.poset())) {
        Ok(r) => {
          let ok = r.isomorphic();
          let mut v = serde_json::to_value(&r).expect("serializable");
          v["isomorphic"] = json!(ok);
          Ok(Outcome::new(ok, v))
        },
        Err(Error::NoConditionalProduct(a, b)) => {
          Ok(Outcome::new(false, json!({ "isomorphic": false, "witness": { "no_conditional_product": [a, b] } })))
        },
        Err(e) => Err(e),
      }
    },
    Command::VerifyHomotopy { input } => {
      let doc = classify(&read(input.as_deref())?, &field)?;
      let f = functor(doc, cli.functor, FunctorKind::Restricted, &field)?;
      let p = f.poset();
      let m = max_degree(cli, p);
      let mut r = corpus::rng(cli.seed);
      let mut cache = SectionCache::new(&f);
      let mut ok = true;
      let mut reports = Vec::new();
      for cover in corpus::sample_covers(p, f.topology(), &mut r) {
        let report = verify_homotopies(&homotopy_operators(&mut cache, &cover, m)?);
        ok &= report.holds();
        let mut v = serde_json::to_value(&report).expect("serializable");
        v["cover"] = cover_value(p, &cover);
        v["holds"] = json!(report.holds());
        reports.push(v);
      }
      Ok(Outcome::new(ok, json!({ "topology": topology_name(f.topology()), "holds": ok, "covers": reports })))
    },
    Command::Marginal { input } => {
      let h = hypergraph(&read(input.as_deref())?)?;
      let m = cli.max_degree.unwrap_or_else(|| default_max_degree(&h));
      let r = marginal_report(&h, &field, m)?;
      let ok = r.consistent();
      let mut v = serde_json::to_value(&r).expect("serializable");
      v["consistent"] = json!(ok);
      Ok(Outcome::new(ok, v))
    },
    Command::Surjectivity { a, b } => {
      let ha = hypergraph(&read(a.as_deref())?)?;
      let hb = hypergraph(&read(b.as_deref())?)?;
      let r = marginal_surjectivity(&ha, &hb, &field)?;
      Ok(Outcome::new(r.surjective, serde_json::to_value(&r).expect("serializable")))
    },
    Command::Oracle { input } => {
      let h = hypergraph(&read(input.as_deref())?)?;
      let rb = brute_force_h0(&h, true, &field)?;
      let rs = pseudomarginal_dim(&h, &field);
      let fb = brute_force_h0(&h, false, &field)?;
      let fs = free_h0(&h, &field);
      let ok = rb == rs && fb == fs;
      let v = json!({
        "restricted": { "oracle": rb, "sections": rs },
        "free": { "oracle": fb, "sections": fs },
        "agree": ok,
      });
      Ok(Outcome::new(ok, v))
    },
  }
}
