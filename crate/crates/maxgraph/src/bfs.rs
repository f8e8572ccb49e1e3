//! Exact BFS-based metric geometry: distances, balls, spheres, layer
//! profiles, and a streaming multi-source traversal.
//!
//! All traversals are layered. Deduplication uses the previous and current
//! layer only: a neighbor of a vertex at distance d sits at distance d-1, d
//! or d+1, so earlier layers can never be rediscovered. This keeps memory
//! proportional to the frontier, which is what makes exploring large windows
//! of infinite graphs feasible.

use crate::error::{Error, Result};
use crate::key::VertexKey;
use crate::oracle::GraphOracle;

/// Caller-set safety bounds. The library defaults mirror a desk-scale
/// machine; every operation that explores a graph takes these explicitly.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of vertices a single ball/window may contain.
    pub max_ball_members: u64,
    /// Maximum BFS radius.
    pub max_radius: u64,
    /// Maximum number of vertices a streaming enumeration may visit.
    pub max_enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ball_members: 1_000_000,
            max_radius: 10_000,
            max_enumeration: 50_000_000,
        }
    }
}

/// An exactly computed ball `B(center, radius)`.
#[derive(Debug, Clone)]
pub struct BallRecord {
    pub center: VertexKey,
    pub radius: u64,
    /// All members, sorted ascending.
    pub members: Vec<VertexKey>,
    /// `layer_sizes[i] = |S(center, i)|` for `i = 0..=radius`.
    pub layer_sizes: Vec<u64>,
}

impl BallRecord {
    pub fn len(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexKey) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

pub enum Distance {
    Exact(u64),
    /// The true distance exceeds the cap that was passed in.
    ExceedsCap(u64),
}

fn check_contains(g: &dyn GraphOracle, v: VertexKey) -> Result<()> {
    if g.contains(v) {
        Ok(())
    } else {
        Err(Error::UnknownVertex { vertex: v, graph: g.name() })
    }
}

/// Expands `layer` one step, returning the next layer sorted and deduplicated
/// against `prev` and `layer` themselves.
pub(crate) fn next_layer(
    g: &dyn GraphOracle,
    prev: &[VertexKey],
    layer: &[VertexKey],
    scratch: &mut Vec<VertexKey>,
) -> Vec<VertexKey> {
    scratch.clear();
    for &v in layer {
        g.neighbors_into(v, scratch);
    }
    scratch.sort_unstable();
    scratch.dedup();
    scratch
        .iter()
        .copied()
        .filter(|v| prev.binary_search(v).is_err() && layer.binary_search(v).is_err())
        .collect()
}

/// Shortest-path distance, capped. `d(x,x) = 0`; symmetric.
pub fn distance(
    g: &dyn GraphOracle,
    x: VertexKey,
    y: VertexKey,
    cap: u64,
    limits: &Limits,
) -> Result<Distance> {
    check_contains(g, x)?;
    check_contains(g, y)?;
    if x == y {
        return Ok(Distance::Exact(0));
    }
    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur = vec![x];
    let mut scratch = Vec::new();
    let mut visited: u64 = 1;
    for d in 1..=cap.min(limits.max_radius) {
        let next = next_layer(g, &prev, &cur, &mut scratch);
        if next.binary_search(&y).is_ok() {
            return Ok(Distance::Exact(d));
        }
        if next.is_empty() {
            // finite component exhausted; unreachable within any cap
            return Ok(Distance::ExceedsCap(cap));
        }
        visited += next.len() as u64;
        if visited > limits.max_ball_members {
            return Err(Error::ResourceLimit {
                what: "distance search visited too many vertices",
                limit: limits.max_ball_members,
            });
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(Distance::ExceedsCap(cap))
}

/// Exact ball via layered BFS.
pub fn ball(g: &dyn GraphOracle, x: VertexKey, r: u64, limits: &Limits) -> Result<BallRecord> {
    check_contains(g, x)?;
    if r > limits.max_radius {
        return Err(Error::ResourceLimit { what: "ball radius", limit: limits.max_radius });
    }
    let mut members = vec![x];
    let mut layer_sizes = vec![1u64];
    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur = vec![x];
    let mut scratch = Vec::new();
    for _ in 0..r {
        let next = next_layer(g, &prev, &cur, &mut scratch);
        layer_sizes.push(next.len() as u64);
        if members.len() as u64 + next.len() as u64 > limits.max_ball_members {
            return Err(Error::ResourceLimit {
                what: "ball members",
                limit: limits.max_ball_members,
            });
        }
        members.extend_from_slice(&next);
        if next.is_empty() {
            // finite graph exhausted: remaining layers are empty
            while layer_sizes.len() as u64 <= r {
                layer_sizes.push(0);
            }
            break;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    members.sort_unstable();
    Ok(BallRecord { center: x, radius: r, members, layer_sizes })
}

/// Exact sphere `S(x,r)`, sorted.
pub fn sphere(g: &dyn GraphOracle, x: VertexKey, r: u64, limits: &Limits) -> Result<Vec<VertexKey>> {
    check_contains(g, x)?;
    if r > limits.max_radius {
        return Err(Error::ResourceLimit { what: "sphere radius", limit: limits.max_radius });
    }
    if r == 0 {
        return Ok(vec![x]);
    }
    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur = vec![x];
    let mut scratch = Vec::new();
    let mut visited: u64 = 1;
    for _ in 0..r {
        let next = next_layer(g, &prev, &cur, &mut scratch);
        visited += next.len() as u64;
        if visited > limits.max_ball_members {
            return Err(Error::ResourceLimit {
                what: "sphere members",
                limit: limits.max_ball_members,
            });
        }
        if next.is_empty() {
            return Ok(Vec::new());
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Cumulative ball sizes `|B(x,i)|` for `i = 0..=r`, without retaining
/// members. Optionally records the BFS distance of each element of `targets`
/// (which must be sorted) encountered along the way.
pub fn ball_profile(
    g: &dyn GraphOracle,
    x: VertexKey,
    r: u64,
    targets: Option<&[VertexKey]>,
    target_dist: Option<&mut Vec<Option<u64>>>,
    limits: &Limits,
) -> Result<Vec<u64>> {
    check_contains(g, x)?;
    if r > limits.max_radius {
        return Err(Error::ResourceLimit { what: "profile radius", limit: limits.max_radius });
    }
    let mut dists = target_dist;
    let mut mark = |layer: &[VertexKey], d: u64, dists: &mut Option<&mut Vec<Option<u64>>>| {
        if let (Some(t), Some(out)) = (targets, dists.as_deref_mut()) {
            for &v in layer {
                if let Ok(i) = t.binary_search(&v) {
                    out[i] = Some(d);
                }
            }
        }
    };
    let mut cum = vec![1u64];
    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur = vec![x];
    mark(&cur, 0, &mut dists);
    let mut scratch = Vec::new();
    let mut total: u64 = 1;
    for d in 1..=r {
        let next = next_layer(g, &prev, &cur, &mut scratch);
        total += next.len() as u64;
        if total > limits.max_ball_members {
            return Err(Error::ResourceLimit {
                what: "profile members",
                limit: limits.max_ball_members,
            });
        }
        mark(&next, d, &mut dists);
        cum.push(total);
        if next.is_empty() {
            while cum.len() as u64 <= r {
                cum.push(total);
            }
            return Ok(cum);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cum)
}

/// `max_{y in S} d(x, y)`. Runs BFS from `x` until the whole set is seen;
/// this is the radius bound that makes maximal-operator suprema finite.
pub fn eccentricity_to_set(
    g: &dyn GraphOracle,
    x: VertexKey,
    set: &[VertexKey],
    limits: &Limits,
) -> Result<u64> {
    check_contains(g, x)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for &v in set {
        check_contains(g, v)?;
    }
    let mut sorted: Vec<VertexKey> = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut remaining = sorted.len();
    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur = vec![x];
    let mut scratch = Vec::new();
    let mut ecc = 0;
    let mut visited: u64 = 1;
    let mut seen_in = |layer: &[VertexKey]| {
        layer.iter().filter(|v| sorted.binary_search(v).is_ok()).count()
    };
    remaining -= seen_in(&cur);
    for d in 1..=limits.max_radius {
        if remaining == 0 {
            break;
        }
        let next = next_layer(g, &prev, &cur, &mut scratch);
        if next.is_empty() {
            return Err(Error::Disconnected { root: 0, unreached: 0 });
        }
        visited += next.len() as u64;
        if visited > limits.max_enumeration {
            return Err(Error::ResourceLimit {
                what: "eccentricity search",
                limit: limits.max_enumeration,
            });
        }
        let hits = seen_in(&next);
        if hits > 0 {
            ecc = d;
            remaining -= hits;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    if remaining > 0 {
        return Err(Error::ResourceLimit {
            what: "eccentricity radius",
            limit: limits.max_radius,
        });
    }
    Ok(ecc)
}
