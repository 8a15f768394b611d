//! Parsers for CLI literals: complex numbers, domain specs, vector fields
//! and family index ranges.

use autdim_core::domain::DomainSpec;
use autdim_core::point::CxPoint;
use autdim_core::poly::VectorFieldPoly;
use num_complex::Complex64;

/// Parse "0.5", "-1.5i", "0.3+0.2i", "i", "1-i".
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    // Split into up to two signed terms.
    let mut terms: Vec<String> = Vec::new();
    let mut current = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            let prev = s.chars().nth(i - 1).unwrap();
            if prev != 'e' && prev != 'E' {
                terms.push(current.clone());
                current.clear();
            }
        }
        current.push(ch);
    }
    terms.push(current);
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    for term in terms {
        if let Some(body) = term.strip_suffix(['i', 'I']) {
            let v = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                b => b
                    .parse::<f64>()
                    .map_err(|e| format!("bad imaginary part {term:?}: {e}"))?,
            };
            im += v;
        } else {
            re += term
                .parse::<f64>()
                .map_err(|e| format!("bad real part {term:?}: {e}"))?;
        }
    }
    Ok(Complex64::new(re, im))
}

/// Parse a domain literal: either a shorthand name or a JSON document
/// {"variant": ..., "params": {...}}.
pub fn parse_domain(text: &str) -> Result<DomainSpec, String> {
    let t = text.trim();
    if t.starts_with('{') {
        let d: DomainSpec = serde_json::from_str(t).map_err(|e| format!("bad domain JSON: {e}"))?;
        d.validate().map_err(|e| e.to_string())?;
        return Ok(d);
    }
    let lower = t.to_ascii_lowercase();
    let (name, args) = match lower.split_once(':') {
        Some((n, a)) => (n, a),
        None => (lower.as_str(), ""),
    };
    let nums = || -> Result<Vec<f64>, String> {
        args.split(',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| format!("bad number {s:?}: {e}"))
            })
            .collect()
    };
    let d = match name {
        "unitdisk" | "disk" => DomainSpec::UnitDisk,
        "upperhalfplane" | "halfplane" => DomainSpec::UpperHalfPlane,
        "strip" => DomainSpec::Strip,
        "q" => DomainSpec::q_limit(),
        "qj" => {
            let v = nums()?;
            if v.len() != 1 {
                return Err("qj takes one index, e.g. qj:5".into());
            }
            DomainSpec::q_j(v[0] as u32)
        }
        "annulus" => {
            let v = nums()?;
            if v.len() != 2 {
                return Err("annulus takes r_in,r_out".into());
            }
            DomainSpec::Annulus {
                r_in: v[0],
                r_out: v[1],
            }
        }
        "ellipse" => {
            let v = nums()?;
            if v.len() != 2 {
                return Err("ellipse takes a,b".into());
            }
            DomainSpec::Ellipse { a: v[0], b: v[1] }
        }
        "ball" => {
            let v = nums()?;
            match v.len() {
                1 => DomainSpec::Ball {
                    center: CxPoint::scalar(Complex64::ZERO),
                    radius: v[0],
                },
                3 => DomainSpec::Ball {
                    center: CxPoint::scalar(Complex64::new(v[0], v[1])),
                    radius: v[2],
                },
                _ => return Err("ball takes radius or re,im,radius".into()),
            }
        }
        "ball2" => {
            let v = nums()?;
            if v.len() != 1 {
                return Err("ball2 takes radius".into());
            }
            DomainSpec::Ball {
                center: CxPoint::pair(Complex64::ZERO, Complex64::ZERO),
                radius: v[0],
            }
        }
        other => return Err(format!("unknown domain {other:?}")),
    };
    d.validate().map_err(|e| e.to_string())?;
    Ok(d)
}

/// Named planar vector fields used by the flow command.
pub fn parse_field(text: &str) -> Result<VectorFieldPoly, String> {
    let lower = text.trim().to_ascii_lowercase();
    let (name, args) = match lower.split_once(':') {
        Some((n, a)) => (n, a),
        None => (lower.as_str(), ""),
    };
    match name {
        "iz" | "rotation" => Ok(VectorFieldPoly::rotation()),
        "1-z2" | "one-minus-z2" => Ok(VectorFieldPoly::disk_field(Complex64::ONE, 0.0)),
        "example1-limit" => Ok(autdim_core::gallery::limit_generator()),
        "const" => {
            let c = parse_complex(args)?;
            Ok(VectorFieldPoly::constant(c))
        }
        "disk" => {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 3 {
                return Err("disk field takes alpha_re,alpha_im,beta".into());
            }
            let re = parts[0].parse::<f64>().map_err(|e| e.to_string())?;
            let im = parts[1].parse::<f64>().map_err(|e| e.to_string())?;
            let beta = parts[2].parse::<f64>().map_err(|e| e.to_string())?;
            Ok(VectorFieldPoly::disk_field(Complex64::new(re, im), beta))
        }
        other => Err(format!("unknown field {other:?}")),
    }
}

/// Parse "3..8" (inclusive) or a single index "5".
pub fn parse_j_range(text: &str) -> Result<Vec<u32>, String> {
    let t = text.trim();
    if let Some((a, b)) = t.split_once("..") {
        let lo: u32 = a
            .trim()
            .parse()
            .map_err(|e| format!("bad range start: {e}"))?;
        let hi: u32 = b
            .trim()
            .parse()
            .map_err(|e| format!("bad range end: {e}"))?;
        if lo < 2 || hi < lo {
            return Err("range must satisfy 2 <= start <= end".into());
        }
        Ok((lo..=hi).collect())
    } else {
        let j: u32 = t.parse().map_err(|e| format!("bad index: {e}"))?;
        if j < 2 {
            return Err("family indices start at 2".into());
        }
        Ok(vec![j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-1.5i").unwrap(), Complex64::new(0.0, -1.5));
        assert_eq!(parse_complex("0.3+0.2i").unwrap(), Complex64::new(0.3, 0.2));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("1-i").unwrap(), Complex64::new(1.0, -1.0));
        assert_eq!(parse_complex("1e-3").unwrap(), Complex64::new(1e-3, 0.0));
        assert!(parse_complex("foo").is_err());
    }

    #[test]
    fn domain_names() {
        assert!(matches!(
            parse_domain("unitdisk").unwrap(),
            DomainSpec::UnitDisk
        ));
        assert!(matches!(
            parse_domain("q").unwrap(),
            DomainSpec::DiskMinusDisk { .. }
        ));
        assert!(matches!(
            parse_domain("ellipse:2,1").unwrap(),
            DomainSpec::Ellipse { .. }
        ));
        assert!(matches!(
            parse_domain("qj:5").unwrap(),
            DomainSpec::DiskMinusDisk { .. }
        ));
        assert!(parse_domain("annulus:1,0.3").is_err());
        let json = r#"{"variant":"Annulus","params":{"r_in":0.3,"r_out":1.0}}"#;
        assert!(matches!(
            parse_domain(json).unwrap(),
            DomainSpec::Annulus { .. }
        ));
    }

    #[test]
    fn j_ranges() {
        assert_eq!(parse_j_range("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_j_range("4").unwrap(), vec![4]);
        assert!(parse_j_range("1..3").is_err());
    }
}
