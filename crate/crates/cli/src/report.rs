//! Deterministic report writers: JSON with fixed field order and floats
//! printed to 17 significant digits, CSV tables, and minimal polyline SVG
//! plots. Two runs with the same inputs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

/// JSON value with insertion-ordered object fields.
#[derive(Clone, Debug)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn obj() -> Json {
        Json::Object(Vec::new())
    }

    pub fn field(mut self, key: &str, value: Json) -> Json {
        if let Json::Object(fields) = &mut self {
            fields.push((key.to_string(), value));
        }
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Num(v) => out.push_str(&format_f64(*v)),
            Json::Str(s) => write_json_string(out, s),
            Json::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Json::Object(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    write_json_string(out, k);
                    out.push_str(": ");
                    v.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }
}

/// Decimal with 17 significant digits; non-finite values become null (JSON
/// has no infinity literal).
pub fn format_f64(v: f64) -> String {
    if !v.is_finite() {
        return "null".to_string();
    }
    format!("{:.16e}", v)
}

fn write_json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// One CSV cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Str(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => {
                if v.is_finite() {
                    format!("{:.16e}", v)
                } else {
                    "inf".to_string()
                }
            }
            Cell::Str(s) => s.clone(),
        }
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> io::Result<()> {
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        text.push_str(&line.join(","));
        text.push('\n');
    }
    fs::write(path, text)
}

/// Minimal polyline chart: one series of (x, y) points on fixed 640×480
/// canvas with 40px margins.
pub fn write_svg(path: &Path, title: &str, xs: &[f64], ys: &[f64]) -> io::Result<()> {
    let (w, h, m) = (640.0, 480.0, 40.0);
    let finite = |v: &&f64| v.is_finite();
    let x_min = xs
        .iter()
        .filter(finite)
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let x_max = xs
        .iter()
        .filter(finite)
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let y_min = ys
        .iter()
        .filter(finite)
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let y_max = ys
        .iter()
        .filter(finite)
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let x_span = (x_max - x_min).max(1e-300);
    let y_span = (y_max - y_min).max(1e-300);
    let mut pts = String::new();
    for (x, y) in xs.iter().zip(ys) {
        if !x.is_finite() || !y.is_finite() {
            continue;
        }
        let px = m + (x - x_min) / x_span * (w - 2.0 * m);
        let py = h - m - (y - y_min) / y_span * (h - 2.0 * m);
        let _ = write!(pts, "{:.2},{:.2} ", px, py);
    }
    let svg = format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\">\n",
            "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n",
            "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
            "<line x1=\"40\" y1=\"440\" x2=\"600\" y2=\"440\" stroke=\"black\"/>\n",
            "<line x1=\"40\" y1=\"40\" x2=\"40\" y2=\"440\" stroke=\"black\"/>\n",
            "<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n",
            "</svg>\n"
        ),
        title,
        pts.trim_end()
    );
    fs::write(path, svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits() {
        let s = format_f64(0.5493061443340548);
        assert_eq!(s, "5.4930614433405478e-1");
        let mantissa = s.split('e').next().unwrap().replace('.', "");
        assert_eq!(mantissa.len(), 17);
        assert_eq!(format_f64(f64::INFINITY), "null");
    }

    #[test]
    fn object_field_order_is_insertion_order() {
        let j = Json::obj()
            .field("b", Json::Int(1))
            .field("a", Json::Num(2.0));
        let text = j.render();
        assert!(text.find("\"b\"").unwrap() < text.find("\"a\"").unwrap());
    }

    #[test]
    fn strings_are_escaped() {
        let j = Json::Str("a\"b\\c\n".into());
        assert_eq!(j.render().trim_end(), "\"a\\\"b\\\\c\\n\"");
    }
}
