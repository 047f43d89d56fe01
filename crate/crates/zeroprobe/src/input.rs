//! Zero files, grid files and Odlyzko height tables.
//!
//! A zero file is either JSON (first non-blank character `{`) or line based.
//! Line grammar, `#` starting a comment anywhere on a line:
//!
//! ```text
//! RE [IM [MULT]]          one zero, IM defaults to 0 and MULT to 1
//! pair RE IM [MULT]       the conjugate pair RE ± i·IM
//! ell L                   power of z in the prefactor
//! d2 V                    the real quadratic coefficient
//! tail arithmetic START GAP
//! tail mirrored START GAP
//! ```
//!
//! The JSON form is
//! `{"zeros": [{"re": 2, "im": 1, "multiplicity": 1}, ...], "ell": 0, "d2": 0,
//! "tail": {"kind": "arithmetic", "start": 10, "gap": 1}}` with every field
//! except `zeros` optional.

use std::io::{BufRead, Write};

use serde::Deserialize;
use zeroprobe_core::zeta::ZetaZeroTable;
use zeroprobe_core::{Decimal, TailModel, Zero, ZeroConfig};

use crate::IoError;

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, IoError> {
    tok.parse().map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

fn tail_model(kind: &str, start: f64, gap: f64, line: usize) -> Result<TailModel, IoError> {
    let t = match kind {
        "arithmetic" => TailModel::arithmetic(start, gap),
        "mirrored" => TailModel::mirrored(start, gap),
        other => return Err(parse_err(line, format!("unknown tail kind {other:?}"))),
    };
    t.map_err(|e| parse_err(line, e.to_string()))
}

/// Reads a zero file in either format.
pub fn read_zero_config<R: BufRead>(mut reader: R) -> Result<ZeroConfig, IoError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    if text.trim_start().starts_with('{') {
        zero_config_from_json(&text)
    } else {
        zero_config_from_lines(&text)
    }
}

pub fn zero_config_from_lines(text: &str) -> Result<ZeroConfig, IoError> {
    let mut b = ZeroConfig::builder();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        let arity = |lo: usize, hi: usize| {
            if toks.len() < lo || toks.len() > hi {
                Err(parse_err(
                    line,
                    format!("{head:?} takes {} to {} fields, found {}", lo - 1, hi - 1, toks.len() - 1),
                ))
            } else {
                Ok(())
            }
        };
        match head {
            "ell" => {
                arity(2, 2)?;
                b = b.ell(number(toks[1], line, "a non-negative integer")?);
            }
            "d2" => {
                arity(2, 2)?;
                b = b.d2(number(toks[1], line, "a real number")?);
            }
            "tail" => {
                arity(4, 4)?;
                let start = number(toks[2], line, "a tail start")?;
                let gap = number(toks[3], line, "a tail gap")?;
                b = b.tail(tail_model(toks[1], start, gap, line)?);
            }
            "pair" => {
                arity(3, 4)?;
                let re: f64 = number(toks[1], line, "a real part")?;
                let im: f64 = number(toks[2], line, "an imaginary part")?;
                let m = toks.get(3).map(|t| number(t, line, "a multiplicity")).transpose()?.unwrap_or(1);
                if im == 0.0 {
                    return Err(parse_err(line, "a pair needs a non-zero imaginary part"));
                }
                for s in [im, -im] {
                    b = b.zero(Zero::new(re, s, m).map_err(|e| parse_err(line, e.to_string()))?);
                }
            }
            _ => {
                if toks.len() > 3 {
                    return Err(parse_err(line, format!("a zero takes at most 3 fields, found {}", toks.len())));
                }
                let re = number(toks[0], line, "a real part or keyword")?;
                let im = toks.get(1).map(|t| number(t, line, "an imaginary part")).transpose()?.unwrap_or(0.0);
                let m = toks.get(2).map(|t| number(t, line, "a multiplicity")).transpose()?.unwrap_or(1);
                b = b.zero(Zero::new(re, im, m).map_err(|e| parse_err(line, e.to_string()))?);
            }
        }
    }
    b.build().map_err(IoError::Core)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonZero {
    re: f64,
    #[serde(default)]
    im: f64,
    #[serde(default = "one")]
    multiplicity: u32,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTail {
    kind: String,
    start: f64,
    gap: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonConfig {
    zeros: Vec<JsonZero>,
    #[serde(default)]
    ell: u32,
    #[serde(default)]
    d2: f64,
    tail: Option<JsonTail>,
}

pub fn zero_config_from_json(text: &str) -> Result<ZeroConfig, IoError> {
    let j: JsonConfig = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let mut b = ZeroConfig::builder().ell(j.ell).d2(j.d2);
    for z in j.zeros {
        b = b.zero(Zero::new(z.re, z.im, z.multiplicity)?);
    }
    if let Some(t) = j.tail {
        b = b.tail(tail_model(&t.kind, t.start, t.gap, 0)?);
    }
    b.build().map_err(IoError::Core)
}

/// Grid file: whitespace-separated abscissae, `#` comments.
pub fn read_grid<R: BufRead>(reader: R) -> Result<Vec<f64>, IoError> {
    let mut grid = Vec::new();
    for (i, raw) in reader.lines().enumerate() {
        let raw = raw?;
        for tok in strip_comment(&raw).split_whitespace() {
            let x: f64 = number(tok, i + 1, "a grid abscissa")?;
            if !x.is_finite() {
                return Err(parse_err(i + 1, "grid abscissae must be finite"));
            }
            grid.push(x);
        }
    }
    Ok(grid)
}

/// Odlyzko table: whitespace-separated decimal heights, lines starting with
/// `#` ignored. Heights must exceed 14 and increase strictly.
pub fn read_odlyzko<R: BufRead>(reader: R, source: &str) -> Result<ZetaZeroTable, IoError> {
    let mut heights = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in reader.lines().enumerate() {
        let raw = raw?;
        let body = raw.trim();
        if body.starts_with('#') {
            continue;
        }
        for tok in body.split_whitespace() {
            let h: Decimal =
                tok.parse().map_err(|_| parse_err(i + 1, format!("expected a decimal height, found {tok:?}")))?;
            heights.push(h);
            lines.push(i + 1);
        }
    }
    ZetaZeroTable::new(heights, source).map_err(|e| match e {
        zeroprobe_core::Error::Monotonicity(bad) => IoError::Monotonicity(bad.iter().map(|&k| lines[k]).collect()),
        other => IoError::Core(other),
    })
}

/// One height per line, exactly as parsed.
pub fn write_odlyzko<W: Write>(mut w: W, table: &ZetaZeroTable) -> std::io::Result<()> {
    for h in table.heights() {
        writeln!(w, "{h}")?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use zeroprobe_core::zeros::spacing_report;
    use zeroprobe_core::{Extended, TailKind};

    #[test]
    fn line_format() {
        let cfg =
            zero_config_from_lines("# sample\npair 2 1\n5   # real\nell 1\nd2 0.5\ntail arithmetic 10 5\n").unwrap();
        assert_eq!(cfg.len(), 3);
        assert_eq!((cfg.ell(), cfg.d2()), (1, 0.5));
        assert_eq!(cfg.tail().unwrap().kind, TailKind::ArithmeticReal);
        let r = spacing_report(&cfg);
        assert_eq!((r.c, r.b), (Extended::Finite(3.0), Extended::Finite(1.0)));
    }

    #[test]
    fn multiplicities_and_json_agree() {
        let a = zero_config_from_lines("1 0 2\n4\n").unwrap();
        let b = zero_config_from_json(r#"{"zeros": [{"re": 1, "multiplicity": 2}, {"re": 4}]}"#).unwrap();
        assert_eq!(a, b);
        let c = read_zero_config("  {\"zeros\": [{\"re\": 4}, {\"re\": 1}, {\"re\": 1}]}".as_bytes()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn line_numbers_in_errors() {
        let e = zero_config_from_lines("1\n2\nthree\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 3, .. }), "{e}");
        let e = zero_config_from_lines("1\npair 1\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 2, .. }), "{e}");
        let e = zero_config_from_lines("tail geometric 1 2\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 1, .. }), "{e}");
        assert!(zero_config_from_json("{\"zeros\": [{\"re\": 1, \"mult\": 2}]}").is_err());
    }

    #[test]
    fn odlyzko_round_trip() {
        let text = "# heights\n14.134725142\n21.022039639\n\n25.010857580 30.424876126\n";
        let t = read_odlyzko(text.as_bytes(), "test").unwrap();
        assert_eq!(t.len(), 4);
        let mut out = Vec::new();
        write_odlyzko(&mut out, &t).unwrap();
        let again = read_odlyzko(out.as_slice(), "test").unwrap();
        assert_eq!(again.heights(), t.heights());
        assert_eq!(String::from_utf8(out).unwrap().lines().nth(3), Some("30.424876126"));
    }

    #[test]
    fn odlyzko_errors() {
        let e = read_odlyzko("21.0\n14.1\n".as_bytes(), "t").unwrap_err();
        assert!(matches!(e, IoError::Monotonicity(ref v) if v == &[2]), "{e}");
        let e = read_odlyzko("13.9\n".as_bytes(), "t").unwrap_err();
        assert!(matches!(e, IoError::Core(_)), "{e}");
        let e = read_odlyzko("21.0\n# c\n20.5\n".as_bytes(), "t").unwrap_err();
        assert_eq!(e.to_string(), IoError::Monotonicity(vec![3]).to_string());
        let e = read_odlyzko("21.0\n2l.5\n".as_bytes(), "t").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 2, .. }));
        assert!(read_odlyzko("".as_bytes(), "t").unwrap().is_empty());
    }

    #[test]
    fn grids() {
        assert_eq!(read_grid("0 1.5\n# c\n-2 # tail\n".as_bytes()).unwrap(), vec![0.0, 1.5, -2.0]);
        assert!(read_grid("0 nan\n".as_bytes()).is_err());
        assert!(read_grid("".as_bytes()).unwrap().is_empty());
    }
}
