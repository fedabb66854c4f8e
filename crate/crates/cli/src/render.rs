use serde_json::Value;

fn flat(v: &Value) -> bool {
  match v {
    Value::Array(a) => a.iter().all(|x| !x.is_object() && flat(x)),
    Value::Object(_) => false,
    _ => true,
  }
}

fn scalar(v: &Value) -> String {
  match v {
    Value::String(s) => s.clone(),
    Value::Null => "-".into(),
    other => other.to_string(),
  }
}

fn write(v: &Value, indent: usize, out: &mut String) {
  let pad = " ".repeat(indent);
  match v {
    Value::Object(m) => {
      let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
      for (k, x) in m {
        if flat(x) {
          let gap = " ".repeat(width - k.chars().count() + 2);
          out.push_str(&format!("{pad}{k}{gap}{}\n", scalar(x)));
        } else {
          out.push_str(&format!("{pad}{k}:\n"));
          write(x, indent + 2, out);
        }
      }
    },
    Value::Array(a) => {
      for (i, x) in a.iter().enumerate() {
        if flat(x) {
          out.push_str(&format!("{pad}[{i}]  {}\n", scalar(x)));
        } else {
          out.push_str(&format!("{pad}[{i}]\n"));
          write(x, indent + 2, out);
        }
      }
    },
    other => out.push_str(&format!("{pad}{}\n", scalar(other))),
  }
}

/// Aligned key/value text, nesting objects by indentation.
pub fn table(v: &Value) -> String {
  let mut out = String::new();
  write(v, 0, &mut out);
  out
}
