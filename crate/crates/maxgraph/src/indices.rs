//! Certified lower bounds for the dilation index, the real-radius doubling
//! constant, the equidistant-comparability constant and the maximum degree,
//! all truncated to explicit windows. Enlarging the window or the radius
//! range never decreases a value, and every reported value is attained by
//! the recorded witness.

use crate::bfs::{ball, ball_profile, Limits};
use crate::error::{Error, Result};
use crate::key::VertexKey;
use crate::oracle::GraphOracle;
use crate::par::{par_map, ExecMode};
use crate::ratio::from_u64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// A finite ball around a base point over which infinite suprema are
/// truncated.
#[derive(Debug, Clone)]
pub struct Window {
    pub base: VertexKey,
    pub radius: u64,
    /// Sorted members of `ball(base, radius)`.
    pub members: Vec<VertexKey>,
}

impl Window {
    pub fn new(g: &dyn GraphOracle, base: VertexKey, radius: u64, limits: &Limits) -> Result<Self> {
        let b = ball(g, base, radius, limits)?;
        Ok(Window { base, radius, members: b.members })
    }

    pub fn around_origin(g: &dyn GraphOracle, radius: u64, limits: &Limits) -> Result<Self> {
        Self::new(g, g.origin(), radius, limits)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    Dilation { k: u64 },
    DoublingK,
    Ecp,
    MaxDegree,
}

/// The maximizing configuration behind an estimate.
#[derive(Debug, Clone)]
pub struct IndexWitness {
    pub x: VertexKey,
    pub y: Option<VertexKey>,
    pub r: Option<BigRational>,
}

/// A lower bound for a supremum-type invariant: the exact maximum of the
/// defining ratio over the stated finite domain.
#[derive(Debug, Clone)]
pub struct IndexEstimate {
    pub index: IndexKind,
    pub value: BigRational,
    pub witness: IndexWitness,
    pub window_base: VertexKey,
    pub window_radius: u64,
    pub r_max: u64,
}

/// Exact u64 fraction with u128 cross-multiplied comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    fn gt(&self, other: &Frac) -> bool {
        (self.num as u128) * (other.den as u128) > (other.num as u128) * (self.den as u128)
    }

    fn to_ratio(self) -> BigRational {
        BigRational::new((self.num as i64).into(), (self.den as i64).into())
    }
}

/// Ratio pairs to scan: `cum[hi] / cum[lo]`, displayed as radius `r_disp`.
fn best_pair_for(cums: &[u64], pairs: &[(u64, u64)]) -> Option<(Frac, usize)> {
    let mut best: Option<(Frac, usize)> = None;
    for (i, &(hi, lo)) in pairs.iter().enumerate() {
        let (hi, lo) = (hi as usize, lo as usize);
        if hi >= cums.len() {
            continue;
        }
        let f = Frac { num: cums[hi], den: cums[lo] };
        if best.map_or(true, |(b, _)| f.gt(&b)) {
            best = Some((f, i));
        }
    }
    best
}

fn ratio_scan(
    g: &dyn GraphOracle,
    window: &Window,
    profile_radius: u64,
    pairs: &[(u64, u64)],
    limits: &Limits,
    mode: ExecMode,
) -> Result<(Frac, VertexKey, usize)> {
    if window.is_empty() {
        return Err(Error::EmptySet);
    }
    let per_member: Vec<Result<Option<(Frac, usize)>>> = par_map(mode, &window.members, |&x| {
        let cums = ball_profile(g, x, profile_radius, None, None, limits)?;
        Ok(best_pair_for(&cums, pairs))
    });
    let mut best: Option<(Frac, VertexKey, usize)> = None;
    for (x, res) in window.members.iter().zip(per_member) {
        if let Some((f, pi)) = res? {
            if best.as_ref().map_or(true, |(b, _, _)| f.gt(b)) {
                best = Some((f, *x, pi));
            }
        }
    }
    best.ok_or(Error::EmptySet)
}

/// `max |B(x, k r)| / |B(x, r)|` over the window and integer `0 <= r <= r_max`.
pub fn dilation_lb(
    g: &dyn GraphOracle,
    k: u64,
    window: &Window,
    r_max: u64,
    limits: &Limits,
    mode: ExecMode,
) -> Result<IndexEstimate> {
    if k < 2 {
        return Err(Error::InvalidSpec("dilation index needs k >= 2".into()));
    }
    let pairs: Vec<(u64, u64)> = (0..=r_max).map(|r| (k * r, r)).collect();
    let (f, x, pi) = ratio_scan(g, window, k * r_max, &pairs, limits, mode)?;
    Ok(IndexEstimate {
        index: IndexKind::Dilation { k },
        value: f.to_ratio(),
        witness: IndexWitness { x, y: None, r: Some(from_u64(pairs[pi].1)) },
        window_base: window.base,
        window_radius: window.radius,
        r_max,
    })
}

/// `max |B(x, [2r])| / |B(x, [r])|` over half-integer radii
/// `r in {1/2, 1, 3/2, ..., r_max}`; half-integers suffice because balls
/// only change at integer radii, and `r = 1/2` contributes `1 + d_x`.
pub fn doubling_k_lb(
    g: &dyn GraphOracle,
    window: &Window,
    r_max: u64,
    limits: &Limits,
    mode: ExecMode,
) -> Result<IndexEstimate> {
    let pairs: Vec<(u64, u64)> = (1..=2 * r_max).map(|s| (s, s / 2)).collect();
    let (f, x, pi) = ratio_scan(g, window, 2 * r_max, &pairs, limits, mode)?;
    let s = pi as u64 + 1;
    Ok(IndexEstimate {
        index: IndexKind::DoublingK,
        value: f.to_ratio(),
        witness: IndexWitness {
            x,
            y: None,
            r: Some(BigRational::new((s as i64).into(), 2.into())),
        },
        window_base: window.base,
        window_radius: window.radius,
        r_max,
    })
}

/// `max |B(x, d(x,y))| / |B(y, d(x,y))|` over ordered pairs in the window.
pub fn ecp_lb(
    g: &dyn GraphOracle,
    window: &Window,
    limits: &Limits,
    mode: ExecMode,
) -> Result<IndexEstimate> {
    if window.is_empty() {
        return Err(Error::EmptySet);
    }
    let diam_bound = 2 * window.radius;
    let members = &window.members;
    // one profile per member, recording distances to every other member
    let per: Vec<Result<(Vec<u64>, Vec<u32>)>> = par_map(mode, members, |&x| {
        let mut dists: Vec<Option<u64>> = vec![None; members.len()];
        let cums = ball_profile(g, x, diam_bound, Some(members), Some(&mut dists), limits)?;
        let packed: Vec<u32> = dists
            .iter()
            .map(|d| d.map(|v| v as u32).unwrap_or(u32::MAX))
            .collect();
        Ok((cums, packed))
    });
    let mut profiles = Vec::with_capacity(members.len());
    for res in per {
        profiles.push(res?);
    }
    // triangle inequality keeps every pair within 2 * radius
    if profiles.iter().any(|(_, d)| d.iter().any(|&v| v == u32::MAX)) {
        return Err(Error::WindowTooSmall(
            "a window member was not reached within twice the window radius".into(),
        ));
    }

    let mut best = Frac { num: 1, den: 1 };
    let mut wx = window.base;
    let mut wy = window.base;
    for (i, (cums_i, dist_i)) in profiles.iter().enumerate() {
        for (j, (cums_j, _)) in profiles.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = dist_i[j] as usize;
            let f = Frac { num: cums_i[d], den: cums_j[d] };
            if f.gt(&best) {
                best = f;
                wx = members[i];
                wy = members[j];
            }
        }
    }
    Ok(IndexEstimate {
        index: IndexKind::Ecp,
        value: best.to_ratio(),
        witness: IndexWitness { x: wx, y: Some(wy), r: None },
        window_base: window.base,
        window_radius: window.radius,
        r_max: diam_bound,
    })
}

/// Maximum degree over the window.
pub fn max_degree_lb(
    g: &dyn GraphOracle,
    window: &Window,
    mode: ExecMode,
) -> Result<IndexEstimate> {
    if window.is_empty() {
        return Err(Error::EmptySet);
    }
    let degs: Vec<usize> = par_map(mode, &window.members, |&x| g.degree(x));
    let (mut best, mut wx) = (0usize, window.base);
    for (x, d) in window.members.iter().zip(degs) {
        if d > best {
            best = d;
            wx = *x;
        }
    }
    Ok(IndexEstimate {
        index: IndexKind::MaxDegree,
        value: from_u64(best as u64),
        witness: IndexWitness { x: wx, y: None, r: None },
        window_base: window.base,
        window_radius: window.radius,
        r_max: 0,
    })
}
