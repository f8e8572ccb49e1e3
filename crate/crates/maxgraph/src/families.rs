//! The graph families: classical finite graphs, the block-sum families, the
//! regular tree, the comb and the steplike dyadic tree, plus user-supplied
//! edge lists. Each oracle implements its adjacency rule exactly; the
//! closed-form ball/degree formulas live here too so tests can cross-validate
//! them against BFS.

use crate::bfs::{ball, Limits};
use crate::error::{Error, Result};
use crate::key::VertexKey;
use crate::oracle::GraphOracle;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Complete,
    Star,
    Linear,
    Cycle,
    OplusComplete,
    ShiftedOplusComplete,
    RegularTree,
    Comb,
    SteplikeDyadic,
    EdgeList,
}

/// A parsed family descriptor, e.g. `tree:k=3` or `complete:n=5`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_path: Option<String>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec { kind, params: BTreeMap::new(), source_path: None }
    }

    pub fn with_param(kind: FamilyKind, name: &str, value: i64) -> Self {
        let mut s = Self::new(kind);
        s.params.insert(name.to_string(), value);
        s
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.get(name).copied()
    }

    fn require(&self, name: &str) -> Result<i64> {
        self.param(name)
            .ok_or_else(|| Error::InvalidSpec(format!("{self} requires parameter '{name}'")))
    }

    /// Validates parameters and constructs the oracle.
    pub fn build(&self) -> Result<Box<dyn GraphOracle>> {
        match self.kind {
            FamilyKind::Complete => {
                let n = self.require("n")?;
                if n < 1 {
                    return Err(Error::InvalidSpec("complete requires n >= 1".into()));
                }
                Ok(Box::new(FiniteFamily { kind: FiniteKind::Complete, n: n as u64 }))
            }
            FamilyKind::Star => {
                let n = self.require("n")?;
                if n < 2 {
                    return Err(Error::InvalidSpec("star requires n >= 2".into()));
                }
                Ok(Box::new(FiniteFamily { kind: FiniteKind::Star, n: n as u64 }))
            }
            FamilyKind::Linear => {
                let n = self.require("n")?;
                if n < 1 {
                    return Err(Error::InvalidSpec("linear requires n >= 1".into()));
                }
                Ok(Box::new(FiniteFamily { kind: FiniteKind::Linear, n: n as u64 }))
            }
            FamilyKind::Cycle => {
                let n = self.require("n")?;
                // C_1 and C_2 would need loops or parallel edges
                if n < 3 {
                    return Err(Error::InvalidSpec("cycle requires n >= 3".into()));
                }
                Ok(Box::new(FiniteFamily { kind: FiniteKind::Cycle, n: n as u64 }))
            }
            FamilyKind::OplusComplete => Ok(Box::new(OplusComplete)),
            FamilyKind::ShiftedOplusComplete => Ok(Box::new(ShiftedOplusComplete)),
            FamilyKind::RegularTree => {
                let k = self.require("k")?;
                if k < 2 {
                    return Err(Error::InvalidSpec("tree requires k >= 2".into()));
                }
                Ok(Box::new(RegularTree { k: k as u64 }))
            }
            FamilyKind::Comb => Ok(Box::new(Comb)),
            FamilyKind::SteplikeDyadic => Ok(Box::new(SteplikeDyadic)),
            FamilyKind::EdgeList => {
                let path = self.source_path.as_ref().ok_or_else(|| {
                    Error::InvalidSpec("edgelist requires path=FILE".into())
                })?;
                Ok(Box::new(load_edge_list(Path::new(path))?))
            }
        }
    }

    /// The ball-size formula where the family has one; `None` otherwise
    /// (the block-sum and dyadic families expose interval bounds instead).
    pub fn closed_form_ball_size(&self, v: VertexKey, r: u64) -> Option<u64> {
        match self.kind {
            FamilyKind::RegularTree => {
                let k = self.param("k")? as u64;
                regular_tree_ball(k, r)
            }
            FamilyKind::Comb => {
                let k = v.b() as u64;
                if r < k {
                    Some(2 * r + 1)
                } else {
                    let s = r - k + 1;
                    s.checked_mul(s)?.checked_add(2 * k)
                }
            }
            FamilyKind::Complete => {
                let n = self.param("n")? as u64;
                Some(if r == 0 { 1 } else { n })
            }
            FamilyKind::Star => {
                let n = self.param("n")? as u64;
                Some(match (v.a(), r) {
                    (_, 0) => 1,
                    (0, _) => n,
                    (_, 1) => 2,
                    (_, _) => n,
                })
            }
            FamilyKind::Linear => {
                let n = self.param("n")? as i64;
                let i = v.a();
                let lo = (i - r as i64).max(0);
                let hi = (i + r as i64).min(n - 1);
                Some((hi - lo + 1) as u64)
            }
            FamilyKind::Cycle => {
                let n = self.param("n")? as u64;
                Some((2 * r + 1).min(n))
            }
            _ => None,
        }
    }

    /// Sphere-size supremum formula, where known: the k-regular tree has
    /// `|S(x,r)| = k(k-1)^(r-1)` for every vertex.
    pub fn closed_form_sphere_sup(&self, r: u64) -> Option<u64> {
        match self.kind {
            FamilyKind::RegularTree => {
                let k = self.param("k")? as u64;
                if r == 0 {
                    Some(1)
                } else {
                    let p = (k - 1).checked_pow(u32::try_from(r - 1).ok()?)?;
                    k.checked_mul(p)
                }
            }
            _ => None,
        }
    }

    /// Degree formula, where the family has a uniform one.
    pub fn closed_form_degree(&self, v: VertexKey) -> Option<u64> {
        match self.kind {
            FamilyKind::RegularTree => Some(self.param("k")? as u64),
            FamilyKind::Comb => Some(if v.b() == 0 { 3 } else { 2 }),
            FamilyKind::OplusComplete => {
                let m = v.a() as u64;
                if v.b() == 1 {
                    Some(2 * m - 3)
                } else {
                    Some(m - 1)
                }
            }
            FamilyKind::ShiftedOplusComplete => {
                let m = v.a() as u64;
                match v.b() {
                    0 => Some(if m >= 3 { 3 } else { 2 }),
                    1 => Some(m),
                    _ => Some(m - 1),
                }
            }
            _ => None,
        }
    }

    /// Checks, by BFS, that `|B(v,r)|` lies in the family's proved interval.
    /// Only the block-sum family and the dyadic tree carry interval bounds.
    pub fn check_interval_bounds(&self, v: VertexKey, r: u64, limits: &Limits) -> Result<bool> {
        if r < 1 {
            return Err(Error::InvalidSpec("interval bounds need r >= 1".into()));
        }
        let oracle = self.build()?;
        let size = ball(oracle.as_ref(), v, r, limits)?.len() as u128;
        let r = r as u128;
        match self.kind {
            FamilyKind::OplusComplete => {
                let j = oplus_block_index(v) as u128;
                if j >= r {
                    // [jr/2, 6jr]
                    Ok(2 * size >= j * r && size <= 6 * j * r)
                } else {
                    // [r^2/2, 6r^2]
                    Ok(2 * size >= r * r && size <= 6 * r * r)
                }
            }
            FamilyKind::SteplikeDyadic => Ok(size >= r && size <= 24 * r),
            _ => Err(Error::InvalidSpec(
                "interval bounds are defined for oplusK and dyadic only".into(),
            )),
        }
    }
}

/// Ball size in the k-regular tree: every vertex has degree k, so
/// `|B(x,r)| = 1 + k + k(k-1) + ... + k(k-1)^(r-1)`.
pub fn regular_tree_ball(k: u64, r: u64) -> Option<u64> {
    if r == 0 {
        return Some(1);
    }
    if k == 2 {
        return Some(2 * r + 1);
    }
    // 1 + k * ((k-1)^r - 1) / (k - 2)
    let p = (k - 1).checked_pow(u32::try_from(r).ok()?)?;
    Some(1 + k * (p - 1) / (k - 2))
}

/// Block index of a vertex of the block-sum family. Interior vertices of
/// block j have index j; a cut vertex lies in two blocks and we use the
/// smaller index.
pub fn oplus_block_index(v: VertexKey) -> u64 {
    let m = v.a() as u64;
    if v.b() == 1 {
        m - 1
    } else {
        m
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Complete => write!(f, "complete:n={}", self.param("n").unwrap_or(0)),
            FamilyKind::Star => write!(f, "star:n={}", self.param("n").unwrap_or(0)),
            FamilyKind::Linear => write!(f, "linear:n={}", self.param("n").unwrap_or(0)),
            FamilyKind::Cycle => write!(f, "cycle:n={}", self.param("n").unwrap_or(0)),
            FamilyKind::OplusComplete => write!(f, "oplusK"),
            FamilyKind::ShiftedOplusComplete => write!(f, "shiftK"),
            FamilyKind::RegularTree => write!(f, "tree:k={}", self.param("k").unwrap_or(0)),
            FamilyKind::Comb => write!(f, "comb"),
            FamilyKind::SteplikeDyadic => write!(f, "dyadic"),
            FamilyKind::EdgeList => {
                write!(f, "edgelist:path={}", self.source_path.as_deref().unwrap_or(""))
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let kind = match head {
            "complete" => FamilyKind::Complete,
            "star" => FamilyKind::Star,
            "linear" => FamilyKind::Linear,
            "cycle" => FamilyKind::Cycle,
            "oplusK" => FamilyKind::OplusComplete,
            "shiftK" => FamilyKind::ShiftedOplusComplete,
            "tree" => FamilyKind::RegularTree,
            "comb" => FamilyKind::Comb,
            "dyadic" => FamilyKind::SteplikeDyadic,
            "edgelist" => FamilyKind::EdgeList,
            other => return Err(Error::InvalidSpec(format!("unknown family '{other}'"))),
        };
        let mut spec = FamilySpec::new(kind);
        if let Some(rest) = rest {
            for part in rest.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(|| {
                    Error::InvalidSpec(format!("bad parameter '{part}' (expected name=value)"))
                })?;
                if k == "path" {
                    spec.source_path = Some(v.to_string());
                } else {
                    let value: i64 = v.parse().map_err(|_| {
                        Error::InvalidSpec(format!("parameter '{k}' must be an integer"))
                    })?;
                    spec.params.insert(k.to_string(), value);
                }
            }
        }
        // eager validation
        spec.build()?;
        Ok(spec)
    }
}

// ---------------------------------------------------------------------------
// finite classical families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum FiniteKind {
    Complete,
    Star,
    Linear,
    Cycle,
}

#[derive(Debug, Clone)]
struct FiniteFamily {
    kind: FiniteKind,
    n: u64,
}

impl GraphOracle for FiniteFamily {
    fn name(&self) -> String {
        match self.kind {
            FiniteKind::Complete => format!("K_{}", self.n),
            FiniteKind::Star => format!("S_{}", self.n),
            FiniteKind::Linear => format!("L_{}", self.n),
            FiniteKind::Cycle => format!("C_{}", self.n),
        }
    }

    fn contains(&self, v: VertexKey) -> bool {
        v.arity() == 1 && v.a() >= 0 && (v.a() as u64) < self.n
    }

    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        let i = v.a();
        let n = self.n as i64;
        match self.kind {
            FiniteKind::Complete => {
                for j in 0..n {
                    if j != i {
                        out.push(VertexKey::one(j));
                    }
                }
            }
            FiniteKind::Star => {
                if i == 0 {
                    for j in 1..n {
                        out.push(VertexKey::one(j));
                    }
                } else {
                    out.push(VertexKey::one(0));
                }
            }
            FiniteKind::Linear => {
                if i > 0 {
                    out.push(VertexKey::one(i - 1));
                }
                if i + 1 < n {
                    out.push(VertexKey::one(i + 1));
                }
            }
            FiniteKind::Cycle => {
                let mut ns = vec![(i + n - 1) % n, (i + 1) % n];
                ns.sort_unstable();
                ns.dedup();
                for j in ns {
                    if j != i {
                        out.push(VertexKey::one(j));
                    }
                }
            }
        }
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn origin(&self) -> VertexKey {
        VertexKey::one(0)
    }
}

// ---------------------------------------------------------------------------
// the block sum of complete graphs
// ---------------------------------------------------------------------------

/// Vertices (m,n) with m >= 2, 1 <= n <= m-1. Column m is a clique; the
/// vertex (m+1,1) is adjacent to the whole of column m, making it the cut
/// vertex between consecutive complete blocks.
#[derive(Debug, Clone, Copy)]
struct OplusComplete;

impl GraphOracle for OplusComplete {
    fn name(&self) -> String {
        "oplusK".into()
    }

    fn contains(&self, v: VertexKey) -> bool {
        v.arity() == 2 && v.a() >= 2 && v.b() >= 1 && v.b() <= v.a() - 1
    }

    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        let (m, n) = (v.a(), v.b());
        if n == 1 {
            // the whole previous column, then the rest of this one
            if m >= 3 {
                for i in 1..=m - 2 {
                    out.push(VertexKey::two(m - 1, i));
                }
            }
            for i in 2..=m - 1 {
                out.push(VertexKey::two(m, i));
            }
        } else {
            for i in 1..=m - 1 {
                if i != n {
                    out.push(VertexKey::two(m, i));
                }
            }
        }
        out.push(VertexKey::two(m + 1, 1));
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn origin(&self) -> VertexKey {
        VertexKey::two(2, 1)
    }
}

// ---------------------------------------------------------------------------
// the upwards-shift block sum
// ---------------------------------------------------------------------------

/// Vertices (m,n) with m >= 2, 0 <= n <= m. The n = 0 row is a one-sided
/// path; each column {(m,1),...,(m,m)} is a clique hanging off the path at
/// (m,0) through (m,1).
#[derive(Debug, Clone, Copy)]
struct ShiftedOplusComplete;

impl GraphOracle for ShiftedOplusComplete {
    fn name(&self) -> String {
        "shiftK".into()
    }

    fn contains(&self, v: VertexKey) -> bool {
        v.arity() == 2 && v.a() >= 2 && v.b() >= 0 && v.b() <= v.a()
    }

    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        let (m, n) = (v.a(), v.b());
        if n == 0 {
            if m >= 3 {
                out.push(VertexKey::two(m - 1, 0));
            }
            out.push(VertexKey::two(m, 1));
            out.push(VertexKey::two(m + 1, 0));
        } else {
            if n == 1 {
                out.push(VertexKey::two(m, 0));
            }
            for i in 1..=m {
                if i != n {
                    out.push(VertexKey::two(m, i));
                }
            }
        }
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn origin(&self) -> VertexKey {
        VertexKey::two(2, 0)
    }
}

// ---------------------------------------------------------------------------
// the k-regular tree
// ---------------------------------------------------------------------------

/// The infinite tree in which every vertex has degree exactly k. Vertices
/// are numbered breadth-first from the root: 0 has children 1..=k, and each
/// later vertex v has k-1 children starting at k + (v-1)(k-1) + 1.
#[derive(Debug, Clone, Copy)]
struct RegularTree {
    k: u64,
}

impl GraphOracle for RegularTree {
    fn name(&self) -> String {
        format!("T_{}", self.k)
    }

    fn contains(&self, v: VertexKey) -> bool {
        v.arity() == 1 && v.a() >= 0
    }

    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        let k = self.k as i128;
        let id = v.a() as i128;
        let push = |out: &mut Vec<VertexKey>, x: i128| {
            out.push(VertexKey::one(
                i64::try_from(x).expect("regular-tree vertex id exceeds i64"),
            ));
        };
        if id == 0 {
            for c in 1..=k {
                push(out, c);
            }
        } else {
            let parent = if id <= k { 0 } else { (id - k - 1) / (k - 1) + 1 };
            push(out, parent);
            let first = k + (id - 1) * (k - 1) + 1;
            for c in first..first + (k - 1) {
                push(out, c);
            }
        }
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn origin(&self) -> VertexKey {
        VertexKey::one(0)
    }
}

// ---------------------------------------------------------------------------
// the infinite comb
// ---------------------------------------------------------------------------

/// Vertices (j,k), j ranging over all integers, k >= 0. The k = 0 row is a
/// two-sided path (the spine); each spine vertex carries an upward ray.
#[derive(Debug, Clone, Copy)]
struct Comb;

impl GraphOracle for Comb {
    fn name(&self) -> String {
        "comb".into()
    }

    fn contains(&self, v: VertexKey) -> bool {
        v.arity() == 2 && v.b() >= 0
    }

    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        let (j, k) = (v.a(), v.b());
        if k == 0 {
            out.push(VertexKey::two(j - 1, 0));
            out.push(VertexKey::two(j, 1));
            out.push(VertexKey::two(j + 1, 0));
        } else {
            out.push(VertexKey::two(j, k - 1));
            out.push(VertexKey::two(j, k + 1));
        }
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn origin(&self) -> VertexKey {
        VertexKey::two(0, 0)
    }
}

// ---------------------------------------------------------------------------
// the steplike dyadic tree
// ---------------------------------------------------------------------------

/// A one-sided spine (j,0), j >= 1, with a tooth of height 2^n attached at
/// each spine position 2^n, n >= 1.
#[derive(Debug, Clone, Copy)]
struct SteplikeDyadic;

fn dyadic_tooth(j: i64) -> bool {
    j >= 2 && (j & (j - 1)) == 0
}

impl GraphOracle for SteplikeDyadic {
    fn name(&self) -> String {
        "dyadic".into()
    }

    fn contains(&self, v: VertexKey) -> bool {
        if v.arity() != 2 {
            return false;
        }
        let (j, k) = (v.a(), v.b());
        if j < 1 || k < 0 {
            return false;
        }
        k == 0 || (dyadic_tooth(j) && k <= j)
    }

    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        let (j, k) = (v.a(), v.b());
        if k == 0 {
            if j >= 2 {
                out.push(VertexKey::two(j - 1, 0));
            }
            if dyadic_tooth(j) {
                out.push(VertexKey::two(j, 1));
            }
            out.push(VertexKey::two(j + 1, 0));
        } else {
            out.push(VertexKey::two(j, k - 1));
            if k + 1 <= j {
                out.push(VertexKey::two(j, k + 1));
            }
        }
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn origin(&self) -> VertexKey {
        VertexKey::two(1, 0)
    }
}

// ---------------------------------------------------------------------------
// user-supplied edge lists
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct EdgeListOracle {
    label: String,
    adj: BTreeMap<i64, Vec<i64>>,
    origin: i64,
}

impl GraphOracle for EdgeListOracle {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn contains(&self, v: VertexKey) -> bool {
        v.arity() == 1 && self.adj.contains_key(&v.a())
    }

    fn neighbors_into(&self, v: VertexKey, out: &mut Vec<VertexKey>) {
        if let Some(ns) = self.adj.get(&v.a()) {
            out.extend(ns.iter().map(|&j| VertexKey::one(j)));
        }
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn origin(&self) -> VertexKey {
        VertexKey::one(self.origin)
    }
}

/// Reads a text file of `u v` lines (nonnegative integer ids, whitespace
/// separated, `#` comments allowed). The symmetric closure is applied and
/// duplicate edges collapse; self-loops are rejected, as is a graph that is
/// not connected from its smallest id.
pub fn load_edge_list(path: &Path) -> Result<EdgeListOracle> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, path.display().to_string())
}

pub fn parse_edge_list(text: &str, label: String) -> Result<EdgeListOracle> {
    let mut adj: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse_id = |tok: Option<&str>| -> Result<i64> {
            let tok = tok.ok_or(Error::Parse {
                line: idx + 1,
                msg: "expected two vertex ids".into(),
            })?;
            let id: i64 = tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad vertex id '{tok}'"),
            })?;
            if id < 0 {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("vertex ids must be nonnegative, got {id}"),
                });
            }
            Ok(id)
        };
        let u = parse_id(it.next())?;
        let v = parse_id(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: "expected exactly two vertex ids".into(),
            });
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    if adj.is_empty() {
        return Err(Error::Parse { line: 0, msg: "edge list is empty".into() });
    }
    for ns in adj.values_mut() {
        ns.sort_unstable();
        ns.dedup();
    }
    let root = *adj.keys().next().unwrap();
    let mut seen: BTreeMap<i64, bool> = adj.keys().map(|&k| (k, false)).collect();
    let mut stack = vec![root];
    seen.insert(root, true);
    while let Some(u) = stack.pop() {
        for &v in &adj[&u] {
            if !seen[&v] {
                seen.insert(v, true);
                stack.push(v);
            }
        }
    }
    if let Some((&unreached, _)) = seen.iter().find(|(_, &s)| !s) {
        return Err(Error::Disconnected { root, unreached });
    }
    Ok(EdgeListOracle { label, adj, origin: root })
}
