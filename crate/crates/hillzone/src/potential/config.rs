//! Potential definition files.
//!
//! A definition is a TOML document selecting one representation and its
//! payload, plus optional analytic declarations:
//!
//! ```toml
//! representation = "piecewise"   # or "fourier", "sampled"
//! smoothness_s = 1               # optional, default 0
//!
//! # representation = "fourier"
//! fourier = [[1, 1.25, 0.0], [-1, 0.75, 0.0]]   # rows [n, re, im]
//!
//! # representation = "piecewise"
//! [[pieces]]
//! interval = [0.0, 1.0]
//! poly_re = []            # coefficients in ascending powers of x
//! poly_im = [0.5, -1.0]
//!
//! # representation = "sampled"
//! # samples = "grid.csv"  # columns x, re, im; path relative to this file
//!
//! [[jumps]]
//! location = 0.0
//! component = "im"
//! order = 1
//! size = -1.0
//! ```
//!
//! Errors name the offending key (and the line for syntax and CSV problems)
//! so a broken file can be fixed without reading this source.

use std::path::Path;

use num_complex::Complex64;
use toml::Value;

use crate::error::{ConfigError, Error, Result};
use super::{JumpComponent, JumpDeclaration, PeriodicPotential, Piece};

/// Load a potential from a definition file on disk.
pub fn from_config_path(path: impl AsRef<Path>) -> Result<PeriodicPotential> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path)?;
    parse(&src, path.parent())
}

/// Parse a definition from a string. The `sampled` representation needs a
/// base directory to resolve its CSV path against, so it is only available
/// through [`from_config_path`].
pub fn from_config_str(src: &str) -> Result<PeriodicPotential> {
    parse(src, None)
}

fn err(message: impl Into<String>, key: Option<&str>, line: Option<usize>) -> Error {
    Error::Config(ConfigError {
        message: message.into(),
        key: key.map(str::to_owned),
        line,
    })
}

fn parse(src: &str, base: Option<&Path>) -> Result<PeriodicPotential> {
    let table: toml::Table = src.parse().map_err(|e: toml::de::Error| {
        let line = e
            .span()
            .map(|s| src[..s.start.min(src.len())].lines().count().max(1));
        err(e.message(), None, line)
    })?;

    const KNOWN: &[&str] = &[
        "representation",
        "smoothness_s",
        "fourier",
        "pieces",
        "samples",
        "jumps",
    ];
    for k in table.keys() {
        if !KNOWN.contains(&k.as_str()) {
            return Err(err(format!("unknown key `{k}`"), Some(k), None));
        }
    }

    let repr = table
        .get("representation")
        .ok_or_else(|| err("missing key", Some("representation"), None))?;
    let repr = repr
        .as_str()
        .ok_or_else(|| err("expected a string", Some("representation"), None))?;

    let mut pot = match repr {
        "fourier" => parse_fourier(&table)?,
        "piecewise" => parse_pieces(&table)?,
        "sampled" => parse_sampled(&table, base)?,
        other => {
            return Err(err(
                format!("unknown representation `{other}`, expected fourier, piecewise, or sampled"),
                Some("representation"),
                None,
            ))
        }
    };

    if let Some(v) = table.get("smoothness_s") {
        let s = as_int(v, "smoothness_s")?;
        if !(0..=16).contains(&s) {
            return Err(err("expected an integer in 0..=16", Some("smoothness_s"), None));
        }
        pot = pot.with_smoothness(s as u32);
    }

    if let Some(v) = table.get("jumps") {
        pot = pot.with_jumps(parse_jumps(v)?)?;
    }

    Ok(pot)
}

/// Accept both TOML floats and integers where a number is expected.
fn as_float(v: &Value, key: &str) -> Result<f64> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(n) => Ok(*n as f64),
        _ => Err(err("expected a number", Some(key), None)),
    }
}

fn as_int(v: &Value, key: &str) -> Result<i64> {
    v.as_integer()
        .ok_or_else(|| err("expected an integer", Some(key), None))
}

fn as_float_list(v: &Value, key: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| err("expected an array of numbers", Some(key), None))?;
    arr.iter().map(|x| as_float(x, key)).collect()
}

fn parse_fourier(table: &toml::Table) -> Result<PeriodicPotential> {
    let rows = table
        .get("fourier")
        .ok_or_else(|| err("missing key", Some("fourier"), None))?
        .as_array()
        .ok_or_else(|| err("expected an array of [n, re, im] rows", Some("fourier"), None))?;
    let mut coeffs = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let key = format!("fourier[{i}]");
        let row = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| err("expected a row [n, re, im]", Some(&key), None))?;
        let n = as_int(&row[0], &key)?;
        let re = as_float(&row[1], &key)?;
        let im = as_float(&row[2], &key)?;
        coeffs.push((n, Complex64::new(re, im)));
    }
    PeriodicPotential::from_fourier(coeffs)
}

fn parse_pieces(table: &toml::Table) -> Result<PeriodicPotential> {
    let rows = table
        .get("pieces")
        .ok_or_else(|| err("missing key", Some("pieces"), None))?
        .as_array()
        .ok_or_else(|| err("expected an array of tables", Some("pieces"), None))?;
    let mut pieces = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let key = format!("pieces[{i}]");
        let t = row
            .as_table()
            .ok_or_else(|| err("expected a table", Some(&key), None))?;
        let interval = t
            .get("interval")
            .ok_or_else(|| err("missing interval", Some(&key), None))?;
        let interval = as_float_list(interval, &format!("{key}.interval"))?;
        if interval.len() != 2 {
            return Err(err("expected [lo, hi]", Some(&format!("{key}.interval")), None));
        }
        let re = match t.get("poly_re") {
            Some(v) => as_float_list(v, &format!("{key}.poly_re"))?,
            None => Vec::new(),
        };
        let im = match t.get("poly_im") {
            Some(v) => as_float_list(v, &format!("{key}.poly_im"))?,
            None => Vec::new(),
        };
        pieces.push(Piece {
            lo: interval[0],
            hi: interval[1],
            re,
            im,
        });
    }
    PeriodicPotential::from_pieces(pieces)
}

fn parse_sampled(table: &toml::Table, base: Option<&Path>) -> Result<PeriodicPotential> {
    let rel = table
        .get("samples")
        .ok_or_else(|| err("missing key", Some("samples"), None))?
        .as_str()
        .ok_or_else(|| err("expected a CSV path", Some("samples"), None))?;
    let base = base.ok_or_else(|| {
        err(
            "sampled potentials must be loaded from a file path",
            Some("samples"),
            None,
        )
    })?;
    read_samples_csv(&base.join(rel))
}

/// Read `x, re, im` rows. A leading header row is allowed. The `x` column
/// must be the uniform grid `j / M` in order; it is checked, not used.
fn read_samples_csv(path: &Path) -> Result<PeriodicPotential> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| err(format!("cannot read {}: {e}", path.display()), Some("samples"), None))?;
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| err(e.to_string(), Some("samples"), None))?;
        let line = rec.position().map(|p| p.line() as usize);
        if rec.len() != 3 {
            return Err(err(
                format!("expected 3 columns, found {}", rec.len()),
                Some("samples"),
                line,
            ));
        }
        let is_header = rows.is_empty() && rec[0].parse::<f64>().is_err();
        if is_header {
            continue;
        }
        let mut vals = [0.0f64; 3];
        for (slot, field) in vals.iter_mut().zip(rec.iter()) {
            *slot = field.parse().map_err(|_| {
                err(format!("`{field}` is not a number"), Some("samples"), line)
            })?;
        }
        rows.push((vals[0], vals[1], vals[2]));
    }
    let m = rows.len();
    for (j, (x, _, _)) in rows.iter().enumerate() {
        if (x - j as f64 / m as f64).abs() > 1e-9 {
            return Err(err(
                format!("x = {x} at row {j}, expected the uniform grid point {}", j as f64 / m as f64),
                Some("samples"),
                None,
            ));
        }
    }
    PeriodicPotential::from_samples(rows.into_iter().map(|(_, re, im)| Complex64::new(re, im)).collect())
}

fn parse_jumps(v: &Value) -> Result<Vec<JumpDeclaration>> {
    let rows = v
        .as_array()
        .ok_or_else(|| err("expected an array of tables", Some("jumps"), None))?;
    let mut jumps = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let key = format!("jumps[{i}]");
        let t = row
            .as_table()
            .ok_or_else(|| err("expected a table", Some(&key), None))?;
        let location = as_float(
            t.get("location")
                .ok_or_else(|| err("missing location", Some(&key), None))?,
            &format!("{key}.location"),
        )?;
        let component = t
            .get("component")
            .and_then(Value::as_str)
            .ok_or_else(|| err("missing component (\"re\" or \"im\")", Some(&key), None))?;
        let component = match component {
            "re" => JumpComponent::Re,
            "im" => JumpComponent::Im,
            other => {
                return Err(err(
                    format!("component `{other}`, expected \"re\" or \"im\""),
                    Some(&key),
                    None,
                ))
            }
        };
        let order = as_int(
            t.get("order")
                .ok_or_else(|| err("missing order", Some(&key), None))?,
            &format!("{key}.order"),
        )?;
        if !(0..=16).contains(&order) {
            return Err(err("order out of range 0..=16", Some(&key), None));
        }
        let size = as_float(
            t.get("size")
                .ok_or_else(|| err("missing size", Some(&key), None))?,
            &format!("{key}.size"),
        )?;
        jumps.push(JumpDeclaration {
            location,
            component,
            order: order as u32,
            size,
        });
    }
    Ok(jumps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_document() {
        let q = from_config_str(
            r#"
            representation = "fourier"
            fourier = [[1, 1.0, 0.0], [-1, 1.0, 0.0]]
            "#,
        )
        .unwrap();
        assert_eq!(q.kind(), "fourier");
        let t = q.fourier_triple(1).unwrap();
        assert_eq!(t.f, 1.0);
        assert_eq!(t.g, 0.0);
    }

    #[test]
    fn piecewise_document_with_jumps() {
        let q = from_config_str(
            r#"
            representation = "piecewise"
            smoothness_s = 0
            [[pieces]]
            interval = [0.0, 1.0]
            poly_im = [0.5, -1.0]
            [[jumps]]
            location = 0.0
            component = "im"
            order = 0
            size = 1.0
            "#,
        )
        .unwrap();
        assert_eq!(q.kind(), "piecewise");
        assert_eq!(q.jumps().len(), 1);
        assert_eq!(q.jumps()[0].component, JumpComponent::Im);
    }

    #[test]
    fn integers_pass_where_floats_are_expected() {
        let q = from_config_str(
            r#"
            representation = "fourier"
            fourier = [[2, 1, 0]]
            "#,
        )
        .unwrap();
        assert_eq!(q.fourier_coefficient(2).unwrap().re, 1.0);
    }

    #[test]
    fn unknown_key_is_rejected_by_name() {
        let e = from_config_str("representation = \"fourier\"\nfourier = []\nbogus = 1\n")
            .unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("bogus"), "{msg}");
    }

    #[test]
    fn syntax_error_reports_line() {
        let e = from_config_str("representation = \"fourier\"\nfourier = [[1, 1.0,\n").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn missing_payload_names_key() {
        let e = from_config_str("representation = \"piecewise\"\n").unwrap_err();
        assert!(e.to_string().contains("pieces"), "{e}");
    }

    #[test]
    fn sampled_roundtrip_through_csv() {
        let dir = std::env::temp_dir().join(format!("hillzone-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let csv_path = dir.join("grid.csv");
        let m = 16;
        let mut body = String::from("x,re,im\n");
        for j in 0..m {
            let x = j as f64 / m as f64;
            let tau = 2.0 * std::f64::consts::PI;
            body.push_str(&format!("{x},{},{}\n", (tau * x).cos(), 0.0));
        }
        std::fs::write(&csv_path, body).unwrap();
        let cfg = dir.join("pot.toml");
        std::fs::write(&cfg, "representation = \"sampled\"\nsamples = \"grid.csv\"\n").unwrap();
        let q = from_config_path(&cfg).unwrap();
        assert_eq!(q.kind(), "sampled");
        assert!((q.fourier_coefficient(1).unwrap().re - 0.5).abs() < 1e-12);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn csv_bad_number_cites_line() {
        let dir = std::env::temp_dir().join(format!("hillzone-cfg-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("grid.csv"), "x,re,im\n0.0,1.0,0.0\n0.125,oops,0.0\n").unwrap();
        let cfg = dir.join("pot.toml");
        std::fs::write(&cfg, "representation = \"sampled\"\nsamples = \"grid.csv\"\n").unwrap();
        let e = from_config_path(&cfg).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("oops") && msg.contains("line 3"), "{msg}");
        std::fs::remove_dir_all(&dir).ok();
    }
}
