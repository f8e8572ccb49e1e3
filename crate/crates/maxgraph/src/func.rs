//! Finitely supported nonnegative rational functions on vertices.

use crate::error::{Error, Result};
use crate::key::VertexKey;
use crate::ratio::{parse_ratio, ratio_string};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::str::FromStr;

/// A function with finite support; stored values are strictly positive, and
/// absent keys mean zero. `total_mass` is the exact L1 norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSupFn {
    values: BTreeMap<VertexKey, BigRational>,
}

impl FinSupFn {
    pub fn new<I: IntoIterator<Item = (VertexKey, BigRational)>>(pairs: I) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (k, v) in pairs {
            if v.is_zero() {
                continue;
            }
            if v.is_negative() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("function value at {k} must be positive, got {}", ratio_string(&v)),
                });
            }
            *values.entry(k).or_insert_with(BigRational::zero) += v;
        }
        if values.is_empty() {
            return Err(Error::EmptyFunction);
        }
        Ok(FinSupFn { values })
    }

    /// The Dirac delta: unit mass at `x`.
    pub fn delta(x: VertexKey) -> Self {
        let mut values = BTreeMap::new();
        values.insert(x, BigRational::from_integer(1.into()));
        FinSupFn { values }
    }

    pub fn get(&self, v: VertexKey) -> Option<&BigRational> {
        self.values.get(&v)
    }

    pub fn support(&self) -> Vec<VertexKey> {
        self.values.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexKey, &BigRational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_mass(&self) -> BigRational {
        self.values.values().fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn scaled(&self, c: &BigRational) -> Result<Self> {
        FinSupFn::new(self.values.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn plus(&self, other: &FinSupFn) -> Self {
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            *values.entry(*k).or_insert_with(BigRational::zero) += v;
        }
        FinSupFn { values }
    }
}

/// Parses a function literal: either `delta@VERTEX` (e.g. `delta@(0,0)`) or
/// the multi-line file format of `VERTEX VALUE` pairs with rational values.
impl FromStr for FinSupFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix("delta@") {
            let key: VertexKey = v
                .parse()
                .map_err(|e| Error::Parse { line: 0, msg: e })?;
            return Ok(FinSupFn::delta(key));
        }
        parse_fn_file(s)
    }
}

/// Text format: one `VERTEX VALUE` pair per line, `#` comments allowed,
/// values are rationals like `3/4` or integers.
pub fn parse_fn_file(text: &str) -> Result<FinSupFn> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (vert, value) = line.rsplit_once(char::is_whitespace).ok_or(Error::Parse {
            line: idx + 1,
            msg: "expected 'vertex value'".into(),
        })?;
        let key: VertexKey = vert
            .trim()
            .parse()
            .map_err(|e| Error::Parse { line: idx + 1, msg: e })?;
        let v = parse_ratio(value).map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("bad rational '{value}'"),
        })?;
        if !v.is_positive() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("value at {key} must be positive"),
            });
        }
        pairs.push((key, v));
    }
    FinSupFn::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};

    #[test]
    fn delta_literal() {
        let f: FinSupFn = "delta@(0,0)".parse().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.total_mass(), int(1));
        assert_eq!(f.get(VertexKey::two(0, 0)), Some(&int(1)));
    }

    #[test]
    fn file_format() {
        let f = parse_fn_file("(0,0) 1/2\n(1,0) 3  # a comment\n\n# blank above\n(0,1) 1/2").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.total_mass(), int(4));
        assert_eq!(f.get(VertexKey::two(1, 0)), Some(&int(3)));
    }

    #[test]
    fn rejects_nonpositive_and_empty() {
        assert!(parse_fn_file("(0,0) -1").is_err());
        assert!(matches!(parse_fn_file("# nothing"), Err(Error::EmptyFunction)));
        let dup = parse_fn_file("3 1/2\n3 1/2").unwrap();
        assert_eq!(dup.get(VertexKey::one(3)), Some(&int(1)));
    }

    #[test]
    fn scaling_and_sum() {
        let f = FinSupFn::delta(VertexKey::one(0));
        let g = f.scaled(&frac(2, 3)).unwrap();
        assert_eq!(g.total_mass(), frac(2, 3));
        let h = f.plus(&g);
        assert_eq!(h.total_mass(), frac(5, 3));
    }
}
