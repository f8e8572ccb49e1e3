//! The centered Hardy-Littlewood maximal operator on finitely supported
//! functions: exact pointwise evaluation, exact superlevel-set counting, and
//! weak-type norm lower bounds with divergence diagnostics.
//!
//! Exactness of the superlevel enumeration rests on the bound
//! `M f(x) <= ||f||_1 / |B(x, d(x, supp f))|`: averages at radii below the
//! support distance vanish, and beyond it the numerator is at most the total
//! mass while the ball only grows. The enumeration walks outward from the
//! support layer by layer, maintains for every frontier vertex a certified
//! lower bound on `|B(x, d)|` (propagated from its parents' computed ball
//! sizes), and evaluates the operator only where that bound leaves room for
//! `M f(x) > lambda`. A layer whose certified bounds all clear the threshold
//! proves that no deeper vertex can belong to the superlevel set, which is
//! what terminates the walk on infinite graphs.

use crate::bfs::{ball, distance, next_layer, Distance, Limits};
use crate::error::{Error, Result};
use crate::func::FinSupFn;
use crate::key::VertexKey;
use crate::oracle::GraphOracle;
use crate::par::{par_map, ExecMode};
use crate::ratio::from_u64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// One exact superlevel-set count.
#[derive(Debug, Clone)]
pub struct LevelSetRecord {
    pub lambda: BigRational,
    pub count: u64,
    pub members: Option<Vec<VertexKey>>,
    /// False only when a resource cap truncated the enumeration; the count
    /// is then a certified lower bound.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    BoundedEvidence,
    DivergenceEvidence,
    Inconclusive,
}

/// A certified lower bound for the weak-type (1,1) norm of `M f`, together
/// with the level curve it came from.
#[derive(Debug, Clone)]
pub struct WeakNormEstimate {
    pub lower_bound: BigRational,
    pub attained_at_lambda: BigRational,
    pub lambda_floor: BigRational,
    /// Points `(v, v * |{M f >= v}|)` at the attained values `v` of `M f`
    /// above the floor, in decreasing `v` order. Evaluating at value points
    /// with the closed superlevel set realizes `sup lambda |{M f > lambda}|`
    /// over `lambda >= lambda_floor` exactly (the supremum is approached as
    /// `lambda` increases to an attained value).
    pub curve: Vec<(BigRational, BigRational)>,
    pub divergence_exponent: Option<f64>,
    pub fit_residual: Option<f64>,
    pub verdict: Verdict,
    pub exact: bool,
}

struct FnView {
    support: Vec<VertexKey>,
    mass_at: Vec<BigRational>,
    total: BigRational,
}

impl FnView {
    fn new(f: &FinSupFn) -> Self {
        let support: Vec<VertexKey> = f.support();
        let mass_at = support.iter().map(|v| f.get(*v).unwrap().clone()).collect();
        FnView { support, mass_at, total: f.total_mass() }
    }

    fn mass_of_layer(&self, layer: &[VertexKey]) -> (BigRational, usize) {
        let mut sum = BigRational::zero();
        let mut hits = 0;
        for v in layer {
            if let Ok(i) = self.support.binary_search(v) {
                sum += &self.mass_at[i];
                hits += 1;
            }
        }
        (sum, hits)
    }
}

/// Exact `M_G f(x)`: the maximum ball average over radii `0..=R0` where `R0`
/// is the eccentricity of `x` to the support; for larger radii the numerator
/// stays `||f||_1` while the ball is nondecreasing.
pub fn hl_maximal_at(
    g: &dyn GraphOracle,
    f: &FinSupFn,
    x: VertexKey,
    limits: &Limits,
) -> Result<BigRational> {
    check_inputs(g, f, x)?;
    let view = FnView::new(f);
    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur = vec![x];
    let mut scratch = Vec::new();
    let mut count: u64 = 1;
    let mut mass;
    let mut remaining = view.support.len();
    {
        let (m, h) = view.mass_of_layer(&cur);
        mass = m;
        remaining -= h;
    }
    let mut best = if mass.is_zero() { BigRational::zero() } else { mass.clone() };
    let mut r = 0;
    while remaining > 0 {
        if r >= limits.max_radius {
            return Err(Error::ResourceLimit { what: "maximal radius", limit: limits.max_radius });
        }
        let next = next_layer(g, &prev, &cur, &mut scratch);
        if next.is_empty() {
            return Err(Error::UnknownVertex {
                vertex: view.support[0],
                graph: format!("{} (support unreachable from {x})", g.name()),
            });
        }
        count += next.len() as u64;
        if count > limits.max_ball_members {
            return Err(Error::ResourceLimit {
                what: "maximal ball members",
                limit: limits.max_ball_members,
            });
        }
        let (m, h) = view.mass_of_layer(&next);
        mass += m;
        remaining -= h;
        r += 1;
        if h > 0 {
            let avg = &mass / from_u64(count);
            if avg > best {
                best = avg;
            }
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(best)
}

/// `M_G delta_x0 (y) = 1 / |B(y, d(x0, y))|`: the smallest ball around `y`
/// that captures the unit mass realizes the maximal average.
pub fn delta_maximal_at(
    g: &dyn GraphOracle,
    x0: VertexKey,
    y: VertexKey,
    limits: &Limits,
) -> Result<BigRational> {
    let d = match distance(g, x0, y, limits.max_radius, limits)? {
        Distance::Exact(d) => d,
        Distance::ExceedsCap(_) => {
            return Err(Error::ResourceLimit { what: "delta distance", limit: limits.max_radius })
        }
    };
    let b = ball(g, y, d, limits)?;
    Ok(BigRational::new(1.into(), (b.len() as i64).into()))
}

fn check_inputs(g: &dyn GraphOracle, f: &FinSupFn, x: VertexKey) -> Result<()> {
    if f.is_empty() {
        return Err(Error::EmptyFunction);
    }
    if !g.contains(x) {
        return Err(Error::UnknownVertex { vertex: x, graph: g.name() });
    }
    for v in f.support() {
        if !g.contains(v) {
            return Err(Error::UnknownVertex { vertex: v, graph: g.name() });
        }
    }
    Ok(())
}

enum Goal {
    /// Decide `M f(x) > lambda` only.
    Threshold,
    /// Also produce the exact value when it exceeds lambda.
    Value,
}

struct EvalOutcome {
    exceeds: bool,
    value: Option<BigRational>,
    /// `min(|B(x, d)|, cap)` where `d` is the vertex's layer; used as the
    /// certified bound propagated to its children.
    ball_at_d: u64,
}

/// Decides `M f(x) > lambda` (and optionally its exact value) with early
/// stops: once the ball holds `cap >= ||f||_1/lambda` vertices every later
/// average is at most `lambda`, so the decision (and the exceeding value,
/// when there is one) is final.
fn evaluate_candidate(
    g: &dyn GraphOracle,
    view: &FnView,
    x: VertexKey,
    d_layer: u64,
    cap: u64,
    lambda: &BigRational,
    goal: &Goal,
    limits: &Limits,
) -> Result<EvalOutcome> {
    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur = vec![x];
    let mut scratch = Vec::new();
    let mut count: u64 = 1;
    let mut mass;
    let mut remaining = view.support.len();
    {
        let (m, h) = view.mass_of_layer(&cur);
        mass = m;
        remaining -= h;
    }
    let mut best = BigRational::zero();
    let mut exceeds = false;
    let mut ball_at_d = if d_layer == 0 { Some(1u64) } else { None };
    if !mass.is_zero() {
        best = mass.clone();
        exceeds = best > *lambda;
    }
    let mut r: u64 = 0;
    loop {
        let support_done = remaining == 0;
        if support_done && ball_at_d.is_some() {
            break;
        }
        if count >= cap {
            // |B(x, d)| >= |B(x, r)| >= cap already; the bound saturates
            if ball_at_d.is_none() {
                ball_at_d = Some(cap);
            }
            break;
        }
        if r >= limits.max_radius {
            return Err(Error::ResourceLimit { what: "candidate radius", limit: limits.max_radius });
        }
        let next = next_layer(g, &prev, &cur, &mut scratch);
        if next.is_empty() {
            // finite graph exhausted
            if ball_at_d.is_none() {
                ball_at_d = Some(count.min(cap));
            }
            break;
        }
        count += next.len() as u64;
        if count > limits.max_ball_members {
            return Err(Error::ResourceLimit {
                what: "candidate ball members",
                limit: limits.max_ball_members,
            });
        }
        r += 1;
        if r == d_layer {
            ball_at_d = Some(count.min(cap));
        }
        if !support_done {
            let (m, h) = view.mass_of_layer(&next);
            if h > 0 {
                mass += m;
                remaining -= h;
                let avg = &mass / from_u64(count);
                if avg > best {
                    best = avg;
                }
                if !exceeds && best > *lambda {
                    exceeds = true;
                    if matches!(goal, Goal::Threshold) && ball_at_d.is_some() {
                        break;
                    }
                }
            }
        }
        prev = std::mem::replace(&mut cur, next);
    }
    // When the walk stopped because the ball reached `cap`, later averages
    // are <= lambda, so a best value already above lambda is the exact
    // maximum; otherwise the exact value is only known to be <= lambda and
    // is not reported.
    let value = match goal {
        Goal::Value if exceeds => Some(best),
        _ => None,
    };
    Ok(EvalOutcome { exceeds, value, ball_at_d: ball_at_d.unwrap_or_else(|| count.min(cap)) })
}

struct StreamOutcome {
    count: u64,
    members: Vec<(VertexKey, Option<BigRational>)>,
    exact: bool,
    streamed: u64,
}

/// Walks the graph outward from the support and finds every vertex with
/// `M f > lambda`, exactly (see the module notes for the certificate that
/// allows skipping and early termination).
fn stream_superlevel(
    g: &dyn GraphOracle,
    f: &FinSupFn,
    lambda: &BigRational,
    limits: &Limits,
    mode: ExecMode,
    collect_members: bool,
    goal: Goal,
) -> Result<StreamOutcome> {
    check_inputs(g, f, *f.support().first().unwrap())?;
    if !lambda.is_positive() {
        return Err(Error::InvalidSequence("lambda must be positive".into()));
    }
    let view = FnView::new(f);
    let threshold = &view.total / lambda; // skip rule: |B(x,d)| >= threshold
    let cap = crate::ratio::ceil_to_u64(&threshold).max(1);

    let mut count: u64 = 0;
    let mut members: Vec<(VertexKey, Option<BigRational>)> = Vec::new();
    let mut exact = true;

    let mut prev: Vec<VertexKey> = Vec::new();
    let mut cur: Vec<VertexKey> = view.support.clone();
    // certified lower bounds for |B(x, d)| on the current layer
    let mut bound: Vec<u64> = vec![1; cur.len()];
    let mut streamed: u64 = cur.len() as u64;
    let mut d: u64 = 0;

    loop {
        // evaluate candidates whose certified bound leaves room
        let idx: Vec<usize> = (0..cur.len())
            .filter(|&i| from_u64(bound[i]) < threshold)
            .collect();
        let outcomes: Vec<Result<EvalOutcome>> = par_map(mode, &idx, |&i| {
            evaluate_candidate(g, &view, cur[i], d, cap, lambda, &goal, limits)
        });
        let mut vals = bound.clone();
        for (slot, res) in idx.iter().zip(outcomes) {
            let out = res?;
            if out.exceeds {
                count += 1;
                if collect_members {
                    members.push((cur[*slot], out.value));
                }
            }
            vals[*slot] = vals[*slot].max(out.ball_at_d);
        }

        // certified termination: every frontier vertex already clears the
        // threshold, hence so does everything deeper
        if !cur.is_empty() && vals.iter().all(|&v| from_u64(v) >= threshold) {
            break;
        }
        // next layer cannot contain superlevel vertices either once d+2 > threshold
        if from_u64(d + 2) >= threshold {
            break;
        }

        // expand, propagating bounds from parents
        let mut cand: Vec<(VertexKey, u64)> = Vec::new();
        let mut nbuf = Vec::new();
        for (i, &v) in cur.iter().enumerate() {
            nbuf.clear();
            g.neighbors_into(v, &mut nbuf);
            for &y in &nbuf {
                cand.push((y, vals[i]));
            }
        }
        cand.sort_unstable();
        let mut next: Vec<VertexKey> = Vec::new();
        let mut next_bound: Vec<u64> = Vec::new();
        for (y, b) in cand {
            if prev.binary_search(&y).is_ok() || cur.binary_search(&y).is_ok() {
                continue;
            }
            if next.last() == Some(&y) {
                let last = next_bound.last_mut().unwrap();
                *last = (*last).max(b);
            } else {
                next.push(y);
                next_bound.push(b.max(d + 2));
            }
        }
        if next.is_empty() {
            break; // finite graph exhausted
        }
        streamed += next.len() as u64;
        if streamed > limits.max_enumeration {
            exact = false;
            break;
        }
        prev = std::mem::replace(&mut cur, next);
        bound = next_bound;
        d += 1;
    }

    Ok(StreamOutcome { count, members, exact, streamed })
}

/// Exact size of `{x : M_G f(x) > lambda}`. When a resource cap truncates
/// the walk the record carries `exact = false` and the count is a certified
/// lower bound.
pub fn superlevel_count(
    g: &dyn GraphOracle,
    f: &FinSupFn,
    lambda: &BigRational,
    limits: &Limits,
    mode: ExecMode,
    want_members: bool,
) -> Result<LevelSetRecord> {
    let out = stream_superlevel(g, f, lambda, limits, mode, want_members, Goal::Threshold)?;
    let members = want_members.then(|| {
        let mut m: Vec<VertexKey> = out.members.iter().map(|(v, _)| *v).collect();
        m.sort_unstable();
        m
    });
    Ok(LevelSetRecord { lambda: lambda.clone(), count: out.count, members, exact: out.exact })
}

/// The exact attained values of `M f` above `lambda_floor`, as
/// `(vertex, value)` pairs sorted by vertex.
pub fn superlevel_values(
    g: &dyn GraphOracle,
    f: &FinSupFn,
    lambda_floor: &BigRational,
    limits: &Limits,
    mode: ExecMode,
) -> Result<(Vec<(VertexKey, BigRational)>, bool)> {
    let out = stream_superlevel(g, f, lambda_floor, limits, mode, true, Goal::Value)?;
    let mut pairs: Vec<(VertexKey, BigRational)> = out
        .members
        .into_iter()
        .map(|(v, val)| (v, val.expect("value mode returns values for members")))
        .collect();
    pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok((pairs, out.exact))
}

/// Weak-type lower bound over `lambda >= lambda_floor` via the attained
/// value points of `M f`, with a log-log divergence diagnostic.
pub fn weak_norm(
    g: &dyn GraphOracle,
    f: &FinSupFn,
    lambda_floor: &BigRational,
    limits: &Limits,
    mode: ExecMode,
) -> Result<WeakNormEstimate> {
    if !lambda_floor.is_positive() || *lambda_floor > f.total_mass() {
        return Err(Error::InvalidSequence(
            "lambda_floor must satisfy 0 < lambda_floor <= ||f||_1".into(),
        ));
    }
    let (pairs, exact) = superlevel_values(g, f, lambda_floor, limits, mode)?;
    let mut values: Vec<BigRational> = pairs.into_iter().map(|(_, v)| v).collect();
    values.sort_unstable_by(|a, b| b.cmp(a));

    let mut curve: Vec<(BigRational, BigRational)> = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let v = values[i].clone();
        let mut j = i + 1;
        while j < values.len() && values[j] == v {
            j += 1;
        }
        // |{M f >= v}| = j: everything at or above this tie block
        curve.push((v.clone(), &v * from_u64(j as u64)));
        i = j;
    }

    let (lower_bound, attained_at_lambda) = curve
        .iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(v, p)| (p.clone(), v.clone()))
        .unwrap_or_else(|| (BigRational::zero(), lambda_floor.clone()));

    let (divergence_exponent, fit_residual) = fit_tail_slope(&curve);
    let verdict = classify(&curve, divergence_exponent, fit_residual);

    Ok(WeakNormEstimate {
        lower_bound,
        attained_at_lambda,
        lambda_floor: lambda_floor.clone(),
        curve,
        divergence_exponent,
        fit_residual,
        verdict,
        exact,
    })
}

/// Least-squares slope of `ln(lambda * count)` against `ln lambda`, fitted
/// over the small-lambda half of the curve's log range (the asymptotic
/// regime); returns the slope and the rms residual.
fn fit_tail_slope(curve: &[(BigRational, BigRational)]) -> (Option<f64>, Option<f64>) {
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .filter_map(|(l, p)| {
            let (lf, pf) = (crate::ratio::to_f64(l), crate::ratio::to_f64(p));
            (lf > 0.0 && pf > 0.0).then(|| (lf.ln(), pf.ln()))
        })
        .collect();
    if pts.len() < 3 {
        return (None, None);
    }
    let lo = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let mid = (lo + hi) / 2.0;
    let tail: Vec<(f64, f64)> = pts.iter().copied().filter(|p| p.0 <= mid).collect();
    if tail.len() < 3 {
        return (None, None);
    }
    let n = tail.len() as f64;
    let mx = tail.iter().map(|p| p.0).sum::<f64>() / n;
    let my = tail.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in &tail {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return (None, None);
    }
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rms = (tail.iter().map(|(x, y)| (y - (icept + slope * x)).powi(2)).sum::<f64>() / n).sqrt();
    (Some(slope), Some(rms))
}

fn classify(
    curve: &[(BigRational, BigRational)],
    slope: Option<f64>,
    rms: Option<f64>,
) -> Verdict {
    if let (Some(s), Some(r)) = (slope, rms) {
        if s < -0.1 && r <= 0.05 {
            return Verdict::DivergenceEvidence;
        }
    }
    // bounded evidence: the running maximum (scanning from large lambda
    // down) gains nothing over the small-lambda half of the log range
    if curve.len() >= 4 {
        let lo = crate::ratio::to_f64(&curve.last().unwrap().0).ln();
        let hi = crate::ratio::to_f64(&curve[0].0).ln();
        let mid = (lo + hi) / 2.0;
        let mut max_upper = BigRational::zero();
        let mut max_all = BigRational::zero();
        for (l, p) in curve {
            if crate::ratio::to_f64(l).ln() > mid && *p > max_upper {
                max_upper = p.clone();
            }
            if *p > max_all {
                max_all = p.clone();
            }
        }
        if !max_upper.is_zero() && max_all == max_upper {
            return Verdict::BoundedEvidence;
        }
    }
    Verdict::Inconclusive
}

/// `sup_f ||M f||_{1,infinity} / ||f||_1` lower-bounded over trial functions.
pub fn operator_norm_lb(
    g: &dyn GraphOracle,
    trials: &[FinSupFn],
    lambda_floor: &BigRational,
    limits: &Limits,
    mode: ExecMode,
) -> Result<BigRational> {
    if trials.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best = BigRational::zero();
    for f in trials {
        let floor = lambda_floor.clone().min(f.total_mass());
        let est = weak_norm(g, f, &floor, limits, mode)?;
        let scaled = est.lower_bound / f.total_mass();
        if scaled > best {
            best = scaled;
        }
    }
    Ok(best)
}

