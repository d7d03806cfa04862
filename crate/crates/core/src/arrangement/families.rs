//! Named arrangement families and the inline family-spec grammar
//! `NAME[:key=val,...]` followed by any number of `+modifier` suffixes:
//!
//! - `+generic[:seedN]` adds a certified generic line;
//! - `+genericthrough:double|triple|max[:seedN]` adds a generic line through
//!   the first point (in canonical order) of the requested kind;
//! - `+line:a,b,c` adds the given line.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;

use super::{add_generic_line, intersection_points, Arrangement, Hyperplane};
use crate::{Error, Result};

pub const FAMILY_NAMES: &[&str] = &[
    "triangle", "boolean", "ziegler:1", "ziegler:2", "a223", "b7", "ex10a", "ex10b", "thm100",
    "prop101", "dminus4", "dminus3", "generic",
];

pub(crate) fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn h(c: &[i64]) -> Hyperplane {
    Hyperplane::from_ints(c).expect("family forms are nonzero")
}

fn hb(c: [BigInt; 3]) -> Hyperplane {
    Hyperplane::new(c.to_vec()).expect("family forms are nonzero")
}

fn planar(rows: &[[i64; 3]]) -> Result<Arrangement> {
    Arrangement::new(3, rows.iter().map(|r| h(r)).collect())
}

struct Params<'a> {
    family: &'a str,
    map: &'a BTreeMap<String, i64>,
}

impl Params<'_> {
    fn allow(&self, keys: &[&str]) -> Result<()> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::params(self.family, format!("unknown parameter '{k}'"))),
            None => Ok(()),
        }
    }

    fn get(&self, key: &str, default: Option<i64>) -> Result<i64> {
        self.map
            .get(key)
            .copied()
            .or(default)
            .ok_or_else(|| Error::params(self.family, format!("missing parameter '{key}'")))
    }

    fn check(&self, ok: bool, msg: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::params(self.family, msg))
        }
    }
}

fn thm100_lines(k: i64, j: i64) -> Vec<Hyperplane> {
    let mut hs: Vec<Hyperplane> = (0..=k - 2).map(|i| h(&[1, 0, -i])).collect();
    hs.extend((0..=k - 2).map(|i| h(&[0, 1, -i])));
    hs.push(h(&[0, 0, 1]));
    hs.extend((1..=j).map(|i| h(&[1, -1, i])));
    hs
}

/// Constants `c` of the lines `x + y - c z` appended after `thm100(k, k-1)`.
fn prop101_constants(k: i64) -> Vec<i64> {
    let kp = (k - 1) / 2;
    let mut cs: Vec<i64> = (3 * kp..=4 * kp - 1).collect();
    cs.extend((4 * kp + 1..=6 * kp - 1).step_by(2));
    cs
}

fn pow(b: u32, e: u32) -> BigInt {
    BigInt::from(b).pow(e)
}

fn dminus4_lines(d: i64) -> Vec<Hyperplane> {
    let p = ((d - 2) / 3) as u32;
    let e = (d - 2) % 3;
    let mut hs = vec![h(&[1, 0, 0]), h(&[0, 1, 0])];
    hs.push(hb([pow(3, p + 1), pow(2, p + 1), -pow(6, p + 1)]));
    for j in 1..=p {
        hs.push(hb([pow(3, j), pow(2, j), -pow(6, j)]));
        hs.push(hb([pow(3, j + 1), pow(2, j), -(pow(2, j) * pow(3, j + 1))]));
    }
    for j in 1..p {
        hs.push(hb([pow(3, j + 2), pow(2, j), -(pow(2, j) * pow(3, j + 2))]));
    }
    if e >= 1 {
        hs.push(h(&[27, -8, 0]));
    }
    if e == 2 {
        hs.push(h(&[1, -1, 0]));
    }
    hs
}

fn dminus3_lines(d: i64) -> Vec<Hyperplane> {
    let p = (d / 2) as u32;
    let mut hs = vec![h(&[1, 0, 0]), h(&[0, 1, 0])];
    if d % 2 == 1 {
        hs.push(hb([pow(3, p), pow(2, p), -pow(6, p)]));
    }
    for j in 1..p {
        hs.push(hb([pow(3, j), pow(2, j), -pow(6, j)]));
        hs.push(hb([pow(3, j + 1), pow(2, j), -(pow(2, j) * pow(3, j + 1))]));
    }
    hs
}

fn generic_seed(seed: u64, i: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i)
}

/// Builds a named family. `params` holds the integer parameters (`k`, `j`,
/// `d`, `seed`, `l`) accepted by that family.
pub fn generate_family(name: &str, params: &BTreeMap<String, i64>) -> Result<Arrangement> {
    let ps = Params { family: name, map: params };
    match name {
        "triangle" => {
            ps.allow(&[])?;
            planar(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        }
        "boolean" => {
            ps.allow(&["l"])?;
            let l = ps.get("l", Some(3))?;
            ps.check((2..=64).contains(&l), "l must be in 2..=64")?;
            let l = l as usize;
            let hs = (0..l)
                .map(|i| Hyperplane::from_ints(&(0..l).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
                .collect::<Result<_>>()?;
            Arrangement::new(l, hs)
        }
        _ if name.starts_with("boolean:") => {
            let l = name["boolean:".len()..]
                .parse::<i64>()
                .map_err(|_| Error::params("boolean", "dimension must be an integer"))?;
            let mut p = params.clone();
            p.insert("l".into(), l);
            generate_family("boolean", &p)
        }
        "ziegler:1" => {
            ps.allow(&[])?;
            planar(&[
                [1, 0, 0], [0, 1, 0], [1, -1, -1], [1, -1, 1], [2, 1, -2],
                [1, 3, -3], [3, 2, 3], [1, 5, 5], [7, -4, -1],
            ])
        }
        "ziegler:2" => {
            ps.allow(&[])?;
            planar(&[
                [1, 0, 0], [0, 1, 0], [4, -5, -5], [1, -1, 1], [16, 13, -20],
                [1, 3, -3], [3, 2, 3], [1, 5, 5], [7, -4, -1],
            ])
        }
        "a223" => {
            ps.allow(&[])?;
            planar(&[[1, -1, 0], [1, 1, 0], [1, 0, -1], [1, 0, 1], [0, 1, -1], [0, 1, 1]])
        }
        "b7" => {
            ps.allow(&[])?;
            planar(&[[0, 1, 0], [1, 1, 0], [-1, 1, 0], [1, 1, -2], [-1, 1, -2], [1, 3, -2], [-1, 3, -2]])
        }
        "ex10a" | "ex10b" => {
            ps.allow(&[])?;
            let mut rows = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [1, 1, -1], [2, -1, 0], [1, 1, 3]];
            if name == "ex10b" {
                rows.push([0, 1, 1]);
            }
            planar(&rows)
        }
        "thm100" => {
            ps.allow(&["k", "j"])?;
            let k = ps.get("k", None)?;
            let j = ps.get("j", Some(0))?;
            ps.check((2..=200).contains(&k), "k must be in 2..=200")?;
            ps.check((0..k).contains(&j), "j must satisfy 0 <= j <= k-1")?;
            Arrangement::new(3, thm100_lines(k, j))
        }
        "prop101" => {
            ps.allow(&["k", "j"])?;
            let k = ps.get("k", None)?;
            let j = ps.get("j", Some(0))?;
            ps.check((3..=199).contains(&k) && k % 2 == 1, "k must be odd and at least 3")?;
            ps.check((0..=2 * k - 2).contains(&j), "j must satisfy 0 <= j <= 2k-2")?;
            let mut hs = thm100_lines(k, j.min(k - 1));
            let extra = (j - (k - 1)).max(0) as usize;
            hs.extend(prop101_constants(k).into_iter().take(extra).map(|c| h(&[1, 1, -c])));
            Arrangement::new(3, hs)
        }
        "dminus4" => {
            ps.allow(&["d"])?;
            let d = ps.get("d", None)?;
            ps.check((8..=60).contains(&d), "d must be in 8..=60")?;
            Arrangement::new(3, dminus4_lines(d))
        }
        "dminus3" => {
            ps.allow(&["d"])?;
            let d = ps.get("d", None)?;
            ps.check((7..=60).contains(&d), "d must be in 7..=60")?;
            Arrangement::new(3, dminus3_lines(d))
        }
        "generic" => {
            ps.allow(&["d", "seed"])?;
            let d = ps.get("d", None)?;
            let seed = ps.get("seed", Some(0))?;
            ps.check((3..=200).contains(&d), "d must be in 3..=200")?;
            ps.check(seed >= 0, "seed must be non-negative")?;
            let mut a = planar(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])?;
            for i in 0..(d - 3) as u64 {
                a = add_generic_line(&a, generic_seed(seed as u64, i), None)?;
            }
            Ok(a)
        }
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

/// Which existing point a `genericthrough` modifier anchors at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnchorKind {
    Double,
    Triple,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modifier {
    Generic { seed: u64 },
    GenericThrough { anchor: AnchorKind, seed: u64 },
    Line(Hyperplane),
}

/// A parsed inline family specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub modifiers: Vec<Modifier>,
}

fn parse_seed(tok: &str) -> Result<u64> {
    let digits = tok.strip_prefix("seed=").or_else(|| tok.strip_prefix("seed")).unwrap_or(tok);
    digits.parse().map_err(|_| Error::params("modifier", format!("bad seed '{tok}'")))
}

fn parse_modifier(text: &str) -> Result<Modifier> {
    let toks: Vec<&str> = text.split(':').collect();
    match toks.as_slice() {
        ["generic"] => Ok(Modifier::Generic { seed: 0 }),
        ["generic", s] => Ok(Modifier::Generic { seed: parse_seed(s)? }),
        ["genericthrough", kind, rest @ ..] if rest.len() <= 1 => {
            let anchor = match *kind {
                "double" => AnchorKind::Double,
                "triple" => AnchorKind::Triple,
                "max" => AnchorKind::Max,
                other => return Err(Error::params("genericthrough", format!("unknown anchor '{other}'"))),
            };
            let seed = rest.first().map(|s| parse_seed(s)).transpose()?.unwrap_or(0);
            Ok(Modifier::GenericThrough { anchor, seed })
        }
        ["line", coeffs] => {
            let cs = coeffs
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::params("line", format!("bad coefficients '{coeffs}'")))?;
            Ok(Modifier::Line(Hyperplane::from_ints(&cs)?))
        }
        _ => Err(Error::params("modifier", format!("cannot parse '+{text}'"))),
    }
}

/// Parses `[family:]NAME[:key=val,...][+modifier...]`.
pub fn parse_family_spec(spec: &str) -> Result<FamilySpec> {
    let body = spec.strip_prefix("family:").unwrap_or(spec);
    let mut parts = body.split('+');
    let base = parts.next().unwrap_or_default();
    let mut name_toks = Vec::new();
    let mut params = BTreeMap::new();
    for tok in base.split(':') {
        if tok.contains('=') {
            for kv in tok.split(',').filter(|s| !s.is_empty()) {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::params(base, format!("malformed parameter '{kv}'")))?;
                let v = v
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::params(base, format!("parameter '{k}' is not an integer")))?;
                params.insert(k.trim().to_string(), v);
            }
        } else {
            name_toks.push(tok);
        }
    }
    let name = name_toks.join(":");
    if name.is_empty() {
        return Err(Error::UnknownFamily(String::new()));
    }
    let modifiers = parts.map(parse_modifier).collect::<Result<_>>()?;
    Ok(FamilySpec { name, params, modifiers })
}

impl FamilySpec {
    pub fn build(&self) -> Result<Arrangement> {
        let mut a = generate_family(&self.name, &self.params)?;
        for m in &self.modifiers {
            a = match m {
                Modifier::Generic { seed } => add_generic_line(&a, *seed, None)?,
                Modifier::GenericThrough { anchor, seed } => {
                    let inc = intersection_points(&a)?;
                    let point = match anchor {
                        AnchorKind::Max => Some(inc.max_point().1),
                        AnchorKind::Double => inc.points.iter().find(|p| p.multiplicity() == 2),
                        AnchorKind::Triple => inc.points.iter().find(|p| p.multiplicity() == 3),
                    }
                    .ok_or_else(|| Error::Precondition(format!("no {anchor:?} point to pass through")))?;
                    add_generic_line(&a, *seed, Some(&point.coords))?
                }
                Modifier::Line(line) => a.add_line(line.clone())?.0,
            };
        }
        Ok(a)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family:{}", self.name)?;
        if !self.params.is_empty() {
            let kv: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, ":{}", kv.join(","))?;
        }
        for m in &self.modifiers {
            match m {
                Modifier::Generic { seed } => write!(f, "+generic:seed{seed}")?,
                Modifier::GenericThrough { anchor, seed } => {
                    let kind = match anchor {
                        AnchorKind::Double => "double",
                        AnchorKind::Triple => "triple",
                        AnchorKind::Max => "max",
                    };
                    write!(f, "+genericthrough:{kind}:seed{seed}")?
                }
                Modifier::Line(h) => {
                    let cs: Vec<String> = h.coeffs().iter().map(|c| c.to_string()).collect();
                    write!(f, "+line:{}", cs.join(","))?
                }
            }
        }
        Ok(())
    }
}
