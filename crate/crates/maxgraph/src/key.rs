//! Canonical vertex identity.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A vertex is identified by a short tuple of signed integers. Each graph
/// family fixes one encoding per vertex, so equality and ordering of keys
/// coincide with equality of vertices. The lexicographic order makes every
/// set, report and neighbor list deterministic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", try_from = "Vec<i64>")]
pub struct VertexKey {
    len: u8,
    coords: [i64; 3],
}

impl VertexKey {
    pub fn one(a: i64) -> Self {
        VertexKey { len: 1, coords: [a, 0, 0] }
    }

    pub fn two(a: i64, b: i64) -> Self {
        VertexKey { len: 2, coords: [a, b, 0] }
    }

    pub fn three(a: i64, b: i64, c: i64) -> Self {
        VertexKey { len: 3, coords: [a, b, c] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.len as usize]
    }

    pub fn arity(&self) -> usize {
        self.len as usize
    }

    /// First coordinate; every encoding has at least one.
    pub fn a(&self) -> i64 {
        self.coords[0]
    }

    /// Second coordinate, or 0 for unary keys.
    pub fn b(&self) -> i64 {
        self.coords[1]
    }
}

impl Ord for VertexKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords()
            .cmp(other.coords())
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for VertexKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords() {
            [a] => write!(f, "{a}"),
            [a, b] => write!(f, "({a},{b})"),
            [a, b, c] => write!(f, "({a},{b},{c})"),
            _ => unreachable!(),
        }
    }
}

impl From<VertexKey> for Vec<i64> {
    fn from(k: VertexKey) -> Self {
        k.coords().to_vec()
    }
}

impl TryFrom<Vec<i64>> for VertexKey {
    type Error = String;

    fn try_from(v: Vec<i64>) -> Result<Self, String> {
        match v.as_slice() {
            [a] => Ok(VertexKey::one(*a)),
            [a, b] => Ok(VertexKey::two(*a, *b)),
            [a, b, c] => Ok(VertexKey::three(*a, *b, *c)),
            _ => Err(format!("vertex key must have 1-3 coordinates, got {}", v.len())),
        }
    }
}

/// Parses "7", "(0,0)" or "(1,-2,3)".
impl FromStr for VertexKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let coords: Result<Vec<i64>, _> = inner
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect();
        let coords = coords.map_err(|e| format!("bad vertex '{s}': {e}"))?;
        VertexKey::try_from(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let a = VertexKey::two(-1, 0);
        let b = VertexKey::two(0, 1);
        let c = VertexKey::two(1, 0);
        assert!(a < b && b < c);
        let mut v = vec![c, a, b];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["7", "(0,0)", "(-3,12)", "(1,-2,3)"] {
            let k: VertexKey = s.parse().unwrap();
            assert_eq!(k.to_string(), s.replace(' ', ""));
        }
        assert!("(1,2,3,4)".parse::<VertexKey>().is_err());
        assert!("x".parse::<VertexKey>().is_err());
    }
}
