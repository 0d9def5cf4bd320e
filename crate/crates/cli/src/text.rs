use std::fmt::Write;

use serde_json::Value;

/// Plain-text rendering of a report: one field per line, matrices as grids.
pub fn render(report: &Value) -> String {
    let mut out = String::new();
    field(&mut out, 0, None, report);
    out
}

fn complex(v: &Value) -> Option<(f64, f64)> {
    match v.as_array()?.as_slice() {
        [re, im] => Some((re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

fn scalar(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re:.6}")
    } else if im < 0.0 {
        format!("{re:.6}-{:.6}i", -im)
    } else {
        format!("{re:.6}+{im:.6}i")
    }
}

fn is_complex_vector(v: &Value) -> bool {
    v.as_array().is_some_and(|a| !a.is_empty() && a.iter().all(|x| complex(x).is_some()))
}

fn grid(out: &mut String, indent: usize, rows: &[Value]) {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .map(|r| r.iter().map(|x| complex(x).map_or_else(|| x.to_string(), |(a, b)| scalar(a, b))).collect())
                .unwrap_or_default()
        })
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{:indent$}[ {} ]", "", line.join("  "));
    }
}

fn field(out: &mut String, indent: usize, key: Option<&str>, v: &Value) {
    let label = key.map_or(String::new(), |k| format!("{k}: "));
    match v {
        Value::Object(map) if map.contains_key("entries") => {
            let shape = match (map.get("dim"), map.get("rows"), map.get("cols")) {
                (Some(d), _, _) => format!("{d}x{d}"),
                (_, Some(r), Some(c)) => format!("{r}x{c}"),
                _ => String::new(),
            };
            let _ = writeln!(out, "{:indent$}{label}{shape} matrix", "");
            if let Some(rows) = map["entries"].as_array() {
                grid(out, indent + 2, rows);
            }
        }
        Value::Object(map) => {
            if key.is_some() {
                let _ = writeln!(out, "{:indent$}{label}", "");
            }
            let inner = if key.is_some() { indent + 2 } else { indent };
            for (k, x) in map {
                field(out, inner, Some(k), x);
            }
        }
        Value::Array(items) if is_complex_vector(v) => {
            let parts: Vec<String> = items.iter().filter_map(complex).map(|(a, b)| scalar(a, b)).collect();
            let _ = writeln!(out, "{:indent$}{label}({})", "", parts.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{:indent$}{label}[{} items]", "", items.len());
            for (i, x) in items.iter().enumerate() {
                field(out, indent + 2, Some(&format!("[{i}]")), x);
            }
        }
        Value::Number(n) => {
            let s = n.as_f64().map_or_else(|| n.to_string(), |x| if n.is_f64() { format!("{x:.6e}") } else { n.to_string() });
            let _ = writeln!(out, "{:indent$}{label}{s}", "");
        }
        Value::String(s) => {
            let _ = writeln!(out, "{:indent$}{label}{s}", "");
        }
        other => {
            let _ = writeln!(out, "{:indent$}{label}{other}", "");
        }
    }
}
