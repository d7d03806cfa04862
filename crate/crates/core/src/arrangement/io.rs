//! Plain-text arrangement format.
//!
//! ```text
//! # optional comments
//! vars 3
//! 1 0 0
//! 1/2 -1 3
//! ```
//!
//! The `vars` line is optional (default 3). Each remaining line holds the
//! rational coefficients of one form; denominators are cleared on input.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{Arrangement, Hyperplane};
use crate::{Error, Rational, Result};

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut nvars: Option<usize> = None;
    let mut forms: Vec<(usize, Hyperplane)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars") {
            if nvars.is_some() || !forms.is_empty() {
                return Err(Error::Parse { line: lineno, msg: "misplaced vars line".into() });
            }
            let n = rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad variable count '{}'", rest.trim()),
            })?;
            if n < 2 {
                return Err(Error::Parse { line: lineno, msg: "need at least 2 variables".into() });
            }
            nvars = Some(n);
            continue;
        }
        let ell = *nvars.get_or_insert(3);
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Rational>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("'{tok}' is not a rational number"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != ell {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected {ell} coefficients, found {}", values.len()),
            });
        }
        let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let coeffs = values.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        let h = Hyperplane::new(coeffs).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
        if let Some((first, _)) = forms.iter().find(|(_, g)| *g == h) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("duplicate hyperplane {h} (same as line {first})"),
            });
        }
        forms.push((lineno, h));
    }
    Arrangement::new(nvars.unwrap_or(3), forms.into_iter().map(|(_, h)| h).collect())
}

/// Canonical text form; `parse_arrangement` reproduces the input exactly.
pub fn write_arrangement(a: &Arrangement) -> String {
    let mut out = String::new();
    writeln!(out, "vars {}", a.nvars()).unwrap();
    for h in a.hyperplanes() {
        let cs: Vec<String> = h.coeffs().iter().map(|c| c.to_string()).collect();
        writeln!(out, "{}", cs.join(" ")).unwrap();
    }
    out
}
