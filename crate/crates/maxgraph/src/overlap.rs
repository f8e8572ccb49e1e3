//! Ball families, union-preserving cover reduction, overlap certificates,
//! and the exact overlapping index of finite graphs.
//!
//! A subfamily is union-preserving when it covers the same vertex set as the
//! whole family; the overlap of a family is the maximum number of its balls
//! through a single point. A ball that owns a private point (a point in no
//! other ball of the family) is forced into every union-preserving
//! subfamily, so when every ball has one the family admits no reduction at
//! all and its overlap is the certified minimum.

use crate::bfs::{ball, Limits};
use crate::error::{Error, Result};
use crate::key::VertexKey;
use crate::oracle::GraphOracle;
use crate::par::{par_map_ranges, ExecMode};
use std::collections::BTreeMap;

/// Exact-search cap: beyond this many balls the subset sweep would leave
/// interactive latency and the heuristic path takes over.
pub const EXACT_BALL_CAP: usize = 20;

/// A finite list of balls with their materialized member sets.
#[derive(Debug, Clone)]
pub struct BallFamily {
    pub balls: Vec<(VertexKey, u64)>,
    pub materialized: Vec<Vec<VertexKey>>,
}

impl BallFamily {
    pub fn materialize(
        g: &dyn GraphOracle,
        balls: &[(VertexKey, u64)],
        limits: &Limits,
    ) -> Result<Self> {
        if balls.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut materialized = Vec::with_capacity(balls.len());
        for &(c, r) in balls {
            materialized.push(ball(g, c, r, limits)?.members);
        }
        Ok(BallFamily { balls: balls.to_vec(), materialized })
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    /// For every point of the union, the bitmask of balls containing it.
    /// Returns `(union_points, masks)`, both in point order.
    fn point_masks(&self) -> (Vec<VertexKey>, Vec<u32>) {
        let mut map: BTreeMap<VertexKey, u32> = BTreeMap::new();
        for (i, members) in self.materialized.iter().enumerate() {
            for &v in members {
                *map.entry(v).or_insert(0) |= 1 << i;
            }
        }
        let points = map.keys().copied().collect();
        let masks = map.values().copied().collect();
        (points, masks)
    }
}

/// Overlap certificate: the exact minimum overlap among union-preserving
/// subfamilies, with the minimizing subfamily and, when every ball is forced
/// by a private point, the per-ball private points.
#[derive(Debug, Clone)]
pub struct OverlapCertificate {
    pub min_overlap: u64,
    /// Indices into the family, sorted.
    pub minimizing_subfamily: Vec<usize>,
    pub private_points: Option<Vec<(usize, VertexKey)>>,
}

fn max_multiplicity(masks: &[u32], subset: u32) -> u32 {
    masks.iter().map(|m| (m & subset).count_ones()).max().unwrap_or(0)
}

fn covers_union(masks: &[u32], subset: u32) -> bool {
    masks.iter().all(|m| m & subset != 0)
}

fn subset_indices(subset: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| subset & (1 << i) != 0).collect()
}

/// Compares index sets by (cardinality, lexicographic order of the sorted
/// index lists); used for the deterministic tie-breaks.
fn subset_order(a: u32, b: u32, n: usize) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| subset_indices(a, n).cmp(&subset_indices(b, n)))
}

/// Private points of each ball: the lex-smallest point lying in that ball
/// only, if any.
fn find_private_points(
    points: &[VertexKey],
    masks: &[u32],
    n: usize,
) -> Vec<Option<VertexKey>> {
    let mut out = vec![None; n];
    for (p, &m) in points.iter().zip(masks) {
        if m.count_ones() == 1 {
            let i = m.trailing_zeros() as usize;
            if out[i].is_none() {
                out[i] = Some(*p);
            }
        }
    }
    out
}

/// Exact minimum achievable overlap among union-preserving subfamilies.
/// Exact mode requires at most [`EXACT_BALL_CAP`] balls unless every ball
/// has a private point, in which case the full family is the only
/// union-preserving subfamily and no search is needed.
pub fn overlap_certificate(family: &BallFamily, mode: ExecMode) -> Result<OverlapCertificate> {
    if family.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = family.len();
    let (points, masks) = family.point_masks();
    let privates = find_private_points(&points, &masks, n);

    if privates.iter().all(|p| p.is_some()) {
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        return Ok(OverlapCertificate {
            min_overlap: max_multiplicity(&masks, full) as u64,
            minimizing_subfamily: (0..n).collect(),
            private_points: Some(
                privates.into_iter().enumerate().map(|(i, p)| (i, p.unwrap())).collect(),
            ),
        });
    }

    if n > EXACT_BALL_CAP {
        return Err(Error::ResourceLimit {
            what: "exact overlap search (ball count)",
            limit: EXACT_BALL_CAP as u64,
        });
    }

    let total: u64 = 1u64 << n;
    let best = par_map_ranges(mode, total, 1 << 14, |range| {
        let mut best: Option<(u32, u32)> = None; // (overlap, subset)
        for s in range {
            let s = s as u32;
            if s == 0 || !covers_union(&masks, s) {
                continue;
            }
            let o = max_multiplicity(&masks, s);
            let better = match best {
                None => true,
                Some((bo, bs)) => {
                    o < bo || (o == bo && subset_order(s, bs, n) == std::cmp::Ordering::Less)
                }
            };
            if better {
                best = Some((o, s));
            }
        }
        best
    })
    .into_iter()
    .flatten()
    .reduce(|a, b| {
        if b.0 < a.0 || (b.0 == a.0 && subset_order(b.1, a.1, n) == std::cmp::Ordering::Less) {
            b
        } else {
            a
        }
    });
    let (overlap, subset) = best.expect("the full family always covers its union");
    Ok(OverlapCertificate {
        min_overlap: overlap as u64,
        minimizing_subfamily: subset_indices(subset, n),
        private_points: None,
    })
}

/// Finds a union-preserving subfamily with pointwise overlap at most `m`,
/// or `None` (certified) when no such subfamily exists. Subsets are taken
/// in increasing cardinality with lexicographic tie-break, so the returned
/// subfamily is deterministic. Beyond [`EXACT_BALL_CAP`] balls a greedy
/// heuristic runs instead: a `Some` is still sound, but instead of a
/// certified `None` it reports [`Error::HeuristicInconclusive`].
pub fn cover_reduce(family: &BallFamily, m: u64, mode: ExecMode) -> Result<Option<Vec<usize>>> {
    if family.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = family.len();
    let (_, masks) = family.point_masks();

    if n > EXACT_BALL_CAP {
        return greedy_reduce(&masks, n, m);
    }

    let total: u64 = 1u64 << n;
    let best = par_map_ranges(mode, total, 1 << 14, |range| {
        let mut best: Option<u32> = None;
        for s in range {
            let s = s as u32;
            if s == 0 || !covers_union(&masks, s) || max_multiplicity(&masks, s) as u64 > m {
                continue;
            }
            let better = best.map_or(true, |bs| subset_order(s, bs, n) == std::cmp::Ordering::Less);
            if better {
                best = Some(s);
            }
        }
        best
    })
    .into_iter()
    .flatten()
    .reduce(|a, b| if subset_order(b, a, n) == std::cmp::Ordering::Less { b } else { a });
    Ok(best.map(|s| subset_indices(s, n)))
}

/// Greedy fallback: repeatedly drop the ball that is most covered by the
/// others, as long as the union survives; then check the overlap target.
fn greedy_reduce(masks: &[u32], n: usize, m: u64) -> Result<Option<Vec<usize>>> {
    let mut alive: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    loop {
        let mut dropped = false;
        // candidate = removable ball whose removal lowers redundancy most;
        // scan in index order so the walk is deterministic
        let mut candidate: Option<(u32, usize)> = None; // (forced-points, index)
        for i in 0..n {
            let bit = 1u32 << i;
            if alive & bit == 0 {
                continue;
            }
            let without = alive & !bit;
            if without != 0 && covers_union(masks, without) {
                let forced = masks.iter().filter(|&&pm| pm & alive == bit).count() as u32;
                if candidate.map_or(true, |(f, _)| forced < f) {
                    candidate = Some((forced, i));
                }
            }
        }
        if let Some((_, i)) = candidate {
            alive &= !(1u32 << i);
            dropped = true;
        }
        if !dropped {
            break;
        }
    }
    if max_multiplicity(masks, alive) as u64 <= m {
        Ok(Some(subset_indices(alive, n)))
    } else {
        Err(Error::HeuristicInconclusive)
    }
}

// ---------------------------------------------------------------------------
// exact overlapping index of a finite graph
// ---------------------------------------------------------------------------

/// All distinct balls of a finite graph, as bitmasks over its vertex list.
fn all_distinct_balls(g: &dyn GraphOracle, limits: &Limits) -> Result<(Vec<VertexKey>, Vec<u64>)> {
    let origin = g.origin();
    let everything = ball(g, origin, limits.max_radius, limits)?;
    let vertices = everything.members;
    if vertices.len() > 63 {
        return Err(Error::ResourceLimit { what: "finite overlap index vertices", limit: 63 });
    }
    let mut balls: Vec<u64> = Vec::new();
    for &v in &vertices {
        let mut r = 0;
        loop {
            let b = ball(g, v, r, limits)?;
            let mut bits: u64 = 0;
            for m in &b.members {
                bits |= 1 << vertices.binary_search(m).unwrap();
            }
            balls.push(bits);
            if b.len() as usize == vertices.len() {
                break;
            }
            r += 1;
        }
    }
    balls.sort_unstable();
    balls.dedup();
    Ok((vertices, balls))
}

/// The exact overlapping index of a finite graph.
///
/// The index equals the maximum, over irredundant families of balls (every
/// ball keeps a private point), of the family's pointwise overlap: a
/// minimizing union-preserving subfamily of any family is itself
/// irredundant with the same overlap, and conversely an irredundant family
/// admits no proper reduction. Since the private points of distinct balls
/// are distinct, and the overlap is attained at some vertex x, it suffices
/// to search, for every x, for the largest irredundant family of balls all
/// containing x.
pub fn finite_overlapping_index(g: &dyn GraphOracle, limits: &Limits) -> Result<u64> {
    if !g.is_finite() {
        return Err(Error::InvalidSpec("overlapping index search needs a finite graph".into()));
    }
    let (vertices, balls) = all_distinct_balls(g, limits)?;
    let nv = vertices.len();
    let mut best = 0u64;
    for xi in 0..nv {
        let through: Vec<u64> = balls.iter().copied().filter(|b| b & (1 << xi) != 0).collect();
        let mut privates: Vec<u64> = Vec::new();
        let mut union: u64 = 0;
        best = best.max(grow_irredundant(&through, 0, &mut privates, &mut union, best, nv as u64));
    }
    Ok(best)
}

/// Depth-first growth of irredundant families. `privates[i]` is the set of
/// points still private to the i-th chosen ball; adding a ball must leave
/// every such set nonempty and must itself own a point outside the union.
fn grow_irredundant(
    candidates: &[u64],
    from: usize,
    privates: &mut Vec<u64>,
    union: &mut u64,
    mut best: u64,
    cap: u64,
) -> u64 {
    best = best.max(privates.len() as u64);
    if privates.len() as u64 + (candidates.len() - from) as u64 <= best || privates.len() as u64 == cap
    {
        return best;
    }
    for i in from..candidates.len() {
        let b = candidates[i];
        let own = b & !*union;
        if own == 0 {
            continue;
        }
        if privates.iter().any(|&p| p & !b == 0) {
            continue;
        }
        let saved: Vec<u64> = privates.clone();
        let saved_union = *union;
        for p in privates.iter_mut() {
            *p &= !b;
        }
        privates.push(own);
        *union |= b;
        best = grow_irredundant(candidates, i + 1, privates, union, best, cap);
        *privates = saved;
        *union = saved_union;
    }
    best
}
