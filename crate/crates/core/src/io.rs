//! JSON input and output for posets, hypergraphs, functors and complexes.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::{
  cech::CochainComplex,
  error::{Error, Result},
  field::{Field, FieldSpec},
  linalg::Matrix,
  poset::{Hypergraph, Poset},
  presheaf::{Copresheaf, InjectivePresheaf, SpaceFunctor, Topology},
};

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
  serde_json::from_str(text).map_err(|e| {
    let full = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
    Error::Parse { line: e.line(), column: e.column(), message }
  })
}

fn bad(msg: impl Into<String>) -> Error { Error::Input(msg.into()) }

fn field_of<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
  v.get(key).ok_or_else(|| bad(format!("{what}: missing `{key}`")))
}

/// Element and vertex names may be strings or integers.
fn name(v: &Value) -> Result<String> {
  match v {
    Value::String(s) => Ok(s.clone()),
    Value::Number(n) => Ok(n.to_string()),
    other => Err(bad(format!("expected a name, found {other}"))),
  }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> { v.as_array().ok_or_else(|| bad(format!("{what}: expected an array"))) }

fn count(v: &Value, what: &str) -> Result<usize> {
  v.as_u64().map(|n| n as usize).ok_or_else(|| bad(format!("{what}: expected a nonnegative integer")))
}

/// `{"elements": [...], "arrows": [[a, b], ...]}`
pub fn poset_from_value(v: &Value) -> Result<Poset> {
  let elements = array(field_of(v, "elements", "poset")?, "elements")?.iter().map(name).collect::<Result<Vec<_>>>()?;
  let mut arrows = Vec::new();
  if let Some(a) = v.get("arrows") {
    for pair in array(a, "arrows")? {
      match pair.as_array().map(Vec::as_slice) {
        Some([x, y]) => arrows.push((name(x)?, name(y)?)),
        _ => return Err(bad(format!("arrow {pair} is not a pair"))),
      }
    }
  }
  Poset::from_generators(&elements, &arrows)
}

/// `{"vertices": [...], "faces": [[...]], "cardinalities": {v: N}}`.
///
/// `vertices` defaults to the order of first appearance in `faces`, and a
/// single integer for `cardinalities` assigns it to every vertex.
pub fn hypergraph_from_value(v: &Value) -> Result<Hypergraph> {
  let faces = array(field_of(v, "faces", "hypergraph")?, "faces")?
    .iter()
    .map(|f| array(f, "face")?.iter().map(name).collect::<Result<Vec<_>>>())
    .collect::<Result<Vec<_>>>()?;
  let vertices = match v.get("vertices") {
    Some(vs) => array(vs, "vertices")?.iter().map(name).collect::<Result<Vec<_>>>()?,
    None => {
      let mut seen = Vec::new();
      for f in &faces {
        for x in f {
          if !seen.contains(x) {
            seen.push(x.clone());
          }
        }
      }
      seen
    },
  };
  let cards: BTreeMap<String, usize> = match field_of(v, "cardinalities", "hypergraph")? {
    Value::Object(m) => m.iter().map(|(k, n)| Ok((k.clone(), count(n, "cardinality")?))).collect::<Result<_>>()?,
    n @ Value::Number(_) => {
      let n = count(n, "cardinality")?;
      vertices.iter().map(|x| (x.clone(), n)).collect()
    },
    other => return Err(bad(format!("cardinalities: expected an object or integer, found {other}"))),
  };
  Hypergraph::new(&vertices, &faces, &cards)
}

pub fn parse_poset(text: &str) -> Result<Poset> { poset_from_value(&parse_json(text)?) }

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> { hypergraph_from_value(&parse_json(text)?) }

/// A poset given either directly or as the face poset of a hypergraph.
pub fn any_poset_from_value(v: &Value) -> Result<Poset> {
  if v.get("faces").is_some() {
    Ok(hypergraph_from_value(v)?.poset())
  } else {
    poset_from_value(v)
  }
}

pub fn matrix_from_value<K: Field>(v: &Value, field: &K, rows: usize, cols: usize) -> Result<Matrix<K>> {
  let rs = array(v, "matrix")?;
  if rs.len() != rows {
    return Err(Error::Shape(format!("matrix has {} rows, expected {rows}", rs.len())));
  }
  let mut out = Vec::with_capacity(rows);
  for r in rs {
    let r = array(r, "matrix row")?;
    let row = r
      .iter()
      .map(|x| match x {
        Value::String(s) => field.parse(s),
        Value::Number(n) => field.parse(&n.to_string()),
        other => Err(bad(format!("matrix entry {other} is not a number"))),
      })
      .collect::<Result<Vec<_>>>()?;
    out.push(row);
  }
  Matrix::from_rows(field, out, cols)
}

/// Rationals as strings `"p/q"`, prime-field entries as integers.
pub fn matrix_to_value<K: Field>(m: &Matrix<K>) -> Value {
  let prime = matches!(m.field().spec(), FieldSpec::Prime(_));
  Value::Array(
    (0..m.rows())
      .map(|i| {
        Value::Array(
          m.row(i)
            .iter()
            .map(|x| {
              let s = m.field().format(x);
              match (prime, s.parse::<u64>()) {
                (true, Ok(n)) => json!(n),
                _ => json!(s),
              }
            })
            .collect(),
        )
      })
      .collect(),
  )
}

/// A presheaf with injective maps or a copresheaf with surjective maps.
#[derive(Clone, Debug, PartialEq)]
pub enum Functor<K: Field> {
  Presheaf(InjectivePresheaf<K>),
  Copresheaf(Copresheaf<K>),
}

impl<K: Field> SpaceFunctor<K> for Functor<K> {
  fn poset(&self) -> &Poset {
    match self {
      Functor::Presheaf(v) => v.poset(),
      Functor::Copresheaf(f) => f.poset(),
    }
  }

  fn field(&self) -> &K {
    match self {
      Functor::Presheaf(v) => v.field(),
      Functor::Copresheaf(f) => f.field(),
    }
  }

  fn topology(&self) -> Topology {
    match self {
      Functor::Presheaf(v) => v.topology(),
      Functor::Copresheaf(f) => f.topology(),
    }
  }

  fn stalk_dim(&self, x: usize) -> usize {
    match self {
      Functor::Presheaf(v) => v.stalk_dim(x),
      Functor::Copresheaf(f) => f.stalk_dim(x),
    }
  }

  fn restriction(&self, x: usize, y: usize) -> Matrix<K> {
    match self {
      Functor::Presheaf(v) => v.restriction(x, y),
      Functor::Copresheaf(f) => f.restriction(x, y),
    }
  }
}

fn split_arrow(key: &str, p: &Poset) -> Result<(usize, usize)> {
  key
    .match_indices("->")
    .find_map(|(i, _)| Some((p.index_of(&key[..i]).ok()?, p.index_of(&key[i + 2..]).ok()?)))
    .ok_or_else(|| bad(format!("map key `{key}` is not of the form a->b over known elements")))
}

/// `{"poset": ..., "dims": {a: d}, "maps": {"a->b": matrix}, "variance": "presheaf"|"copresheaf"}`.
///
/// A presheaf map at `a->b` is `V_b -> V_a` (shape `d_a x d_b`); a
/// copresheaf map is `F_a -> F_b` (shape `d_b x d_a`).
pub fn functor_from_value<K: Field>(v: &Value, field: &K) -> Result<Functor<K>> {
  let p = any_poset_from_value(field_of(v, "poset", "functor")?)?;
  let co = match v.get("variance").map(|x| x.as_str()) {
    None | Some(Some("presheaf")) => false,
    Some(Some("copresheaf")) => true,
    Some(_) => return Err(bad("variance must be \"presheaf\" or \"copresheaf\"")),
  };
  let dv = field_of(v, "dims", "functor")?.as_object().ok_or_else(|| bad("dims: expected an object"))?;
  let mut dims = vec![None; p.len()];
  for (k, d) in dv {
    dims[p.index_of(k)?] = Some(count(d, "dimension")?);
  }
  let dims = dims
    .into_iter()
    .enumerate()
    .map(|(i, d)| d.ok_or_else(|| bad(format!("dims: missing element `{}`", p.name(i)))))
    .collect::<Result<Vec<_>>>()?;
  let mut maps = HashMap::new();
  if let Some(mv) = v.get("maps") {
    for (k, m) in mv.as_object().ok_or_else(|| bad("maps: expected an object"))? {
      let (a, b) = split_arrow(k, &p)?;
      let (r, c) = if co { (dims[b], dims[a]) } else { (dims[a], dims[b]) };
      let m = matrix_from_value(m, field, r, c).map_err(|e| bad(format!("map {k}: {e}")))?;
      maps.insert((a, b), m);
    }
  }
  Ok(if co {
    Functor::Copresheaf(Copresheaf::new(p, field.clone(), dims, maps)?)
  } else {
    Functor::Presheaf(InjectivePresheaf::new(p, field.clone(), dims, maps)?)
  })
}

pub fn parse_functor<K: Field>(text: &str, field: &K) -> Result<Functor<K>> { functor_from_value(&parse_json(text)?, field) }

pub fn poset_to_value(p: &Poset) -> Value {
  json!({
    "elements": p.elements(),
    "arrows": p.covers().into_iter().map(|(a, b)| json!([p.name(a), p.name(b)])).collect::<Vec<_>>(),
  })
}

/// Exports a functor with maps on covering arrows only.
pub fn functor_to_value<K: Field>(f: &Functor<K>) -> Value {
  let p = f.poset();
  let (variance, map): (&str, Box<dyn Fn(usize, usize) -> Matrix<K>>) = match f {
    Functor::Presheaf(v) => ("presheaf", Box::new(|a, b| v.map(a, b))),
    Functor::Copresheaf(c) => ("copresheaf", Box::new(|a, b| c.map(a, b))),
  };
  let dims: Map<String, Value> = (0..p.len()).map(|a| (p.name(a).to_string(), json!(f.stalk_dim(a)))).collect();
  let maps: Map<String, Value> =
    p.covers().into_iter().map(|(a, b)| (format!("{}->{}", p.name(a), p.name(b)), matrix_to_value(&map(a, b)))).collect();
  json!({ "poset": poset_to_value(p), "variance": variance, "dims": dims, "maps": maps })
}

/// `{degree: {"summands": [...], "delta": matrix}}`; the last degree has no differential.
pub fn complex_to_value<K: Field>(c: &CochainComplex<K>, label: impl Fn(&[usize]) -> String) -> Value {
  let mut out = Map::new();
  for n in 0..=c.max_degree() {
    let summands: Vec<Value> = c.summands(n).iter().map(|s| json!({ "label": label(&s.label), "dim": s.dim })).collect();
    let mut entry = Map::new();
    entry.insert("summands".into(), Value::Array(summands));
    if n < c.max_degree() {
      entry.insert("delta".into(), matrix_to_value(&c.delta(n).to_dense()));
    }
    out.insert(n.to_string(), Value::Object(entry));
  }
  Value::Object(out)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::{
    field::{PrimeField, Rationals},
    presheaf::{free_copresheaf, free_presheaf},
  };

  #[test]
  fn poset_round_trip() {
    let p = parse_poset(r#"{"elements": ["a", "b", 3], "arrows": [["a", "b"], ["b", 3]]}"#).unwrap();
    assert!(p.arrow(0, 2));
    let q = poset_from_value(&poset_to_value(&p)).unwrap();
    assert_eq!(p, q);
  }

  #[test]
  fn syntax_errors_have_positions() {
    match parse_poset("{\n  \"elements\": [1,\n  ]\n}") {
      Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
      other => panic!("{other:?}"),
    }
  }

  #[test]
  fn hypergraph_forms() {
    let h = parse_hypergraph(r#"{"vertices": [1, 2], "faces": [[1], [2], [1, 2]], "cardinalities": {"1": 2, "2": 3}}"#).unwrap();
    assert_eq!(h.n_alpha(2), 6);
    let g = parse_hypergraph(r#"{"faces": [["x"], ["x", "y"]], "cardinalities": 2}"#).unwrap();
    assert_eq!(g.vertices(), ["x", "y"]);
    assert!(matches!(parse_hypergraph(r#"{"faces": [[1], [1]], "cardinalities": 2}"#), Err(Error::DuplicateFace(_))));
  }

  #[test]
  fn functor_round_trip() {
    let h = Hypergraph::on_vertices(2, &[vec![1], vec![2], vec![1, 2]], 2).unwrap();
    for f in [Functor::Presheaf(free_presheaf(&h, &Rationals)), Functor::Copresheaf(free_copresheaf(&h, &Rationals))] {
      let v = functor_to_value(&f);
      assert_eq!(functor_from_value(&v, &Rationals).unwrap(), f);
    }
    let g = Functor::Presheaf(free_presheaf(&h, &PrimeField::new(7).unwrap()));
    let v = functor_to_value(&g);
    assert!(v.to_string().contains("[[1,0],"));
    assert_eq!(functor_from_value(&v, &PrimeField::new(7).unwrap()).unwrap(), g);
  }

  #[test]
  fn functor_rejects_bad_shape() {
    let text = r#"{"poset": {"elements": ["a", "b"], "arrows": [["a", "b"]]}, "dims": {"a": 2, "b": 1}, "maps": {"a->b": [["1", "0"]]}}"#;
    assert!(parse_functor(text, &Rationals).is_err());
    let ok = r#"{"poset": {"elements": ["a", "b"], "arrows": [["a", "b"]]}, "dims": {"a": 2, "b": 1}, "maps": {"a->b": [["1"], ["1/2"]]}}"#;
    assert!(parse_functor(ok, &Rationals).is_ok());
  }
}
