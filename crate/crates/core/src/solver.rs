//! Extremal metrics of discrete boxes.
//!
//! The extremal program: minimize `Σ_v m(v)^n` subject to every top-to-bottom
//! path having metric length at least 1, with `m >= 0`. Scaling the optimizer
//! to unit volume gives the extremal metric, and the extremal length is the
//! reciprocal n-norm of the unscaled optimizer.
//!
//! Two independent routes solve it:
//!
//! * [`extremal_metric`] — cutting plane. Maintain an active path set, solve
//!   the restricted dual exactly by coordinate ascent on path multipliers
//!   (stationarity `n * m(v)^(n-1) = Σ multipliers through v` turns each
//!   coordinate step into a scalar root-find, closed form at n = 2), then add
//!   the globally shortest path while its length stays below `1 - eps`.
//! * [`brute_force_extremal`] — enumerate every simple top-to-bottom path,
//!   reduce to minimal vertex sets, and run projected gradient ascent with
//!   backtracking line search on the full dual.
//!
//! Both routes certify their answer with a weak-duality bracket; at `n = 1`
//! the program is linear and both degenerate to exact minimum-vertex-cut
//! computations (max-flow vs. branch-and-bound hitting sets).

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boxes::{DiscreteBox, Indexed};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::onedim;
use crate::shortest::dijkstra_multi;
use crate::weight::R64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolverMode {
    #[serde(rename = "cutting-plane")]
    CuttingPlane,
    #[serde(rename = "brute-force")]
    BruteForce,
}

impl std::str::FromStr for SolverMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cutting-plane" => Ok(SolverMode::CuttingPlane),
            "brute-force" => Ok(SolverMode::BruteForce),
            other => Err(format!(
                "unknown mode `{other}` (cutting-plane|brute-force)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Constraint tolerance: terminate once the shortest path length under
    /// the working metric is at least `1 - eps`.
    pub eps: f64,
    /// Outer-round cap (cutting plane) and gradient-iteration scale (oracle).
    pub max_iter: usize,
    /// Simple-path enumeration cap for the brute-force oracle.
    pub max_paths: usize,
    /// Nonzero seeds randomize the initial active set; the optimum is the
    /// same, which is exactly what the uniqueness tests exercise.
    pub seed: u64,
    pub mode: SolverMode,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            eps: 1e-8,
            max_iter: 10_000,
            max_paths: 100_000,
            seed: 0,
            mode: SolverMode::CuttingPlane,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Residuals {
    /// `max(0, 1 - shortest)` in the constraint frame.
    pub feasibility: f64,
    /// `max over active paths of multiplier * |length - EL|` under the
    /// reported unit-volume metric.
    pub complementary_slackness: f64,
    /// Primal-dual gap relative to the primal value.
    pub duality_gap: f64,
    /// `|volume(metric) - 1|` for the reported metric.
    pub volume_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IterationCounts {
    pub outer: usize,
    pub inner_passes: usize,
    pub paths_enumerated: usize,
}

/// Solver output: the unit-volume extremal metric plus certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolverResult {
    pub mode: SolverMode,
    pub n: usize,
    /// Reported as the shortest top-to-bottom length of the unit-volume
    /// metric, recomputed after normalization.
    pub extremal_length: f64,
    pub shortest_length: f64,
    /// Certified bracket on the true extremal length (weak duality).
    pub el_bounds: (f64, f64),
    pub metric: Metric,
    pub residuals: Residuals,
    pub iterations: IterationCounts,
    /// Support paths (positive multiplier), as vertex name lists.
    pub active_paths: Vec<Vec<String>>,
    /// Multipliers for `active_paths`, scaled to the unit-volume frame:
    /// `n * m(v)^(n-1) = Σ_{paths through v} multiplier`.
    pub multipliers: Vec<f64>,
    pub converged: bool,
}

impl SolverResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solver result serializes")
    }
}

/// Cutting-plane solver (exact min-cut specialization at n = 1).
pub fn extremal_metric(bx: &DiscreteBox, opts: &SolverOptions) -> Result<SolverResult> {
    let idx = Indexed::new(bx)?;
    if bx.n == 1 {
        return one_dim_flow(&idx, opts);
    }
    cutting_plane(&idx, opts)
}

/// Independent oracle: full path enumeration plus projected gradient ascent
/// (branch-and-bound hitting sets at n = 1).
pub fn brute_force_extremal(bx: &DiscreteBox, opts: &SolverOptions) -> Result<SolverResult> {
    let idx = Indexed::new(bx)?;
    brute_force(&idx, opts)
}

/// Dispatch on `opts.mode`.
pub fn solve(bx: &DiscreteBox, opts: &SolverOptions) -> Result<SolverResult> {
    match opts.mode {
        SolverMode::CuttingPlane => extremal_metric(bx, opts),
        SolverMode::BruteForce => brute_force_extremal(bx, opts),
    }
}

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

fn metric_from_load(load: &[f64], n: usize) -> Vec<f64> {
    let exp = 1.0 / (n as f64 - 1.0);
    load.iter().map(|&l| (l / n as f64).powf(exp)).collect()
}

fn recompute_load(active: &[Vec<usize>], lambda: &[f64], load: &mut [f64]) {
    load.fill(0.0);
    for (path, &l) in active.iter().zip(lambda) {
        for &v in path {
            load[v] += l;
        }
    }
}

/// `g(lambda) = Σ lambda - (n-1) Σ_v (load_v / n)^(n/(n-1))`.
fn dual_value(lambda: &[f64], load: &[f64], n: usize) -> f64 {
    let nf = n as f64;
    let exp = nf / (nf - 1.0);
    let sum_lambda: f64 = lambda.iter().sum();
    let penalty: f64 = load.iter().map(|&l| (l / nf).powf(exp)).sum();
    sum_lambda - (nf - 1.0) * penalty
}

/// Shortest bottom-to-top structure under a raw weight vector: length,
/// parents, and the best target (ties to the smallest index).
fn shortest_under(
    idx: &Indexed,
    weights: &[f64],
    sources: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
) -> (Option<f64>, Vec<usize>, usize) {
    let w: Vec<R64> = weights.iter().map(|&x| R64(x)).collect();
    let (dist, parent) = dijkstra_multi(&idx.adj, &w, sources);
    let mut best: Option<(f64, usize)> = None;
    for &t in targets {
        if let Some(d) = &dist[t] {
            if best.map_or(true, |(b, _)| d.0 < b) {
                best = Some((d.0, t));
            }
        }
    }
    match best {
        Some((d, t)) => (Some(d), parent, t),
        None => (None, parent, usize::MAX),
    }
}

fn backtrack(parent: &[usize], target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut cur = target;
    while parent[cur] != usize::MAX {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Solves `Σ_{v in path} ((c_v + x)/n)^(1/(n-1)) = 1` for `x >= 0`, where
/// `c_v` is the load on `v` from the other paths. Closed form at n = 2,
/// safeguarded Newton otherwise; returns 0 when the constraint is already
/// satisfied.
fn solve_tight(path: &[usize], load: &[f64], old: f64, n: usize) -> f64 {
    let nf = n as f64;
    if n == 2 {
        let csum: f64 = path.iter().map(|&v| load[v] - old).sum();
        return ((2.0 - csum) / path.len() as f64).max(0.0);
    }
    let c: Vec<f64> = path.iter().map(|&v| (load[v] - old).max(0.0)).collect();
    let exp = 1.0 / (nf - 1.0);
    let len_at = |x: f64| c.iter().map(|&cv| ((cv + x) / nf).powf(exp)).sum::<f64>();
    if len_at(0.0) >= 1.0 {
        return 0.0;
    }
    let mut lo = 0.0f64;
    let mut hi = nf / (path.len() as f64).powi(n as i32 - 1);
    while len_at(hi) < 1.0 {
        hi *= 2.0;
    }
    let mut x = hi;
    for _ in 0..100 {
        let f = len_at(x) - 1.0;
        if f.abs() <= 1e-15 {
            break;
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let slope: f64 = c
            .iter()
            .map(|&cv| {
                let base = (cv + x) / nf;
                exp * base.powf(exp - 1.0) / nf
            })
            .sum();
        let mut next = if slope.is_finite() && slope > 0.0 {
            x - f / slope
        } else {
            0.5 * (lo + hi)
        };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= f64::EPSILON * x.abs() {
            x = next;
            break;
        }
        x = next;
    }
    x.max(0.0)
}

/// One full sweep structure: exact coordinate maximization of the restricted
/// dual. Returns the number of passes used.
fn inner_ascent(
    active: &[Vec<usize>],
    lambda: &mut [f64],
    load: &mut [f64],
    n: usize,
    tol: f64,
    max_passes: usize,
) -> usize {
    if active.is_empty() {
        return 0;
    }
    let mut passes = 0;
    let mut prev_g = f64::NEG_INFINITY;
    let mut stalls = 0;
    while passes < max_passes {
        passes += 1;
        let mut max_delta = 0.0f64;
        for (i, path) in active.iter().enumerate() {
            let old = lambda[i];
            let new = solve_tight(path, load, old, n);
            if new != old {
                let d = new - old;
                for &v in path {
                    load[v] = (load[v] + d).max(0.0);
                }
                lambda[i] = new;
                max_delta = max_delta.max(d.abs());
            }
        }
        let scale = lambda.iter().fold(1.0f64, |a, &b| a.max(b));
        if max_delta <= tol * scale {
            break;
        }
        let g = dual_value(lambda, load, n);
        if (g - prev_g).abs() <= 1e-15 * g.abs().max(1.0) {
            stalls += 1;
            if stalls >= 3 {
                break;
            }
        } else {
            stalls = 0;
        }
        prev_g = g;
    }
    passes
}

#[allow(clippy::too_many_arguments)]
fn finalize(
    idx: &Indexed,
    n: usize,
    m_tilde: &[f64],
    ell: f64,
    lambda: &[f64],
    active: &[Vec<usize>],
    load: &[f64],
    iterations: IterationCounts,
    mode: SolverMode,
) -> SolverResult {
    let nf = n as f64;
    // Scale to exact feasibility: shortest length becomes 1.
    let m_feas: Vec<f64> = m_tilde.iter().map(|&x| x / ell).collect();
    let primal: f64 = m_feas.iter().map(|&x| x.powi(n as i32)).sum();
    let dual = dual_value(lambda, load, n);
    let gap = primal - dual;
    let el_lo = primal.powf(-1.0 / nf);
    let el_hi = if dual > 0.0 {
        dual.powf(-1.0 / nf)
    } else {
        f64::INFINITY
    };

    let volume = primal.powf(1.0 / nf);
    let m_star: Vec<f64> = m_feas.iter().map(|&x| x / volume).collect();
    let (pos, neg) = idx.face_sets(1).expect("axis 1 exists");
    let (ell_star, _, _) = shortest_under(idx, &m_star, neg, pos);
    let ell_star = ell_star.unwrap_or(f64::NAN);

    // Multipliers transported to the unit-volume frame: the overall metric
    // scale is c, so multipliers scale by c^(n-1).
    let c = 1.0 / (ell * volume);
    let lam_scale = c.powi(n as i32 - 1);
    let threshold = 1e-12 * lambda.iter().fold(1.0f64, |a, &b| a.max(b));
    let mut active_paths = Vec::new();
    let mut multipliers = Vec::new();
    let mut comp_slack = 0.0f64;
    for (path, &l) in active.iter().zip(lambda) {
        if l <= threshold {
            continue;
        }
        let length: f64 = path.iter().map(|&v| m_star[v]).sum();
        comp_slack = comp_slack.max(l * lam_scale * (length - ell_star).abs());
        active_paths.push(idx.names(path));
        multipliers.push(l * lam_scale);
    }

    let volume_error = {
        let sum: f64 = m_star.iter().map(|&x| x.powi(n as i32)).sum();
        (sum.powf(1.0 / nf) - 1.0).abs()
    };

    let metric = Metric::Real(
        idx.bx
            .vertices
            .iter()
            .cloned()
            .zip(m_star.iter().copied())
            .collect(),
    );

    SolverResult {
        mode,
        n,
        extremal_length: ell_star,
        shortest_length: ell_star,
        el_bounds: (el_lo, el_hi),
        metric,
        residuals: Residuals {
            feasibility: (1.0 - ell).max(0.0),
            complementary_slackness: comp_slack,
            duality_gap: gap / primal.max(1.0),
            volume_error,
        },
        iterations,
        active_paths,
        multipliers,
        converged: true,
    }
}

// ---------------------------------------------------------------------------
// Cutting plane
// ---------------------------------------------------------------------------

fn random_simple_path(
    idx: &Indexed,
    sources: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    let source_list: Vec<usize> = sources.iter().copied().collect();
    let start = source_list[rng.gen_range(0..source_list.len())];
    let mut visited = vec![false; idx.len()];
    let mut path = Vec::new();
    fn dfs(
        idx: &Indexed,
        u: usize,
        targets: &BTreeSet<usize>,
        visited: &mut [bool],
        path: &mut Vec<usize>,
        rng: &mut ChaCha8Rng,
    ) -> bool {
        visited[u] = true;
        path.push(u);
        if targets.contains(&u) {
            return true;
        }
        let mut order = idx.adj[u].clone();
        order.shuffle(rng);
        for v in order {
            if !visited[v] && dfs(idx, v, targets, visited, path, rng) {
                return true;
            }
        }
        path.pop();
        false
    }
    if dfs(idx, start, targets, &mut visited, &mut path, rng) {
        Some(path)
    } else {
        None
    }
}

fn cutting_plane(idx: &Indexed, opts: &SolverOptions) -> Result<SolverResult> {
    let n = idx.bx.n;
    let nv = idx.len();
    let (pos, neg) = idx.face_sets(1)?;

    // Reachability probe with unit weights.
    let ones: Vec<R64> = vec![R64(1.0); nv];
    let (probe, _) = dijkstra_multi(&idx.adj, &ones, neg);
    if !pos.iter().any(|&t| probe[t].is_some()) {
        return Err(Error::Unreachable { axis: 1 });
    }

    let mut active: Vec<Vec<usize>> = Vec::new();
    let mut keys: HashSet<Vec<usize>> = HashSet::new();
    let mut lambda: Vec<f64> = Vec::new();
    let mut load = vec![0.0f64; nv];

    if opts.seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..3 {
            if let Some(p) = random_simple_path(idx, neg, pos, &mut rng) {
                if keys.insert(p.clone()) {
                    active.push(p);
                    lambda.push(0.0);
                }
            }
        }
    }

    let mut inner_tol = (opts.eps * 1e-2).clamp(1e-15, 1e-9);
    let mut inner_total = 0usize;
    let mut outer = 0usize;
    let mut tightened = false;
    let (ell, m_tilde) = loop {
        if outer >= opts.max_iter {
            let m = metric_from_load(&load, n);
            let (ell, _, _) = shortest_under(idx, &m, neg, pos);
            return Err(Error::NonConvergence {
                outer,
                feasibility: (1.0 - ell.unwrap_or(0.0)).max(0.0),
                gap: f64::NAN,
            });
        }
        outer += 1;
        inner_total += inner_ascent(&active, &mut lambda, &mut load, n, inner_tol, 50_000);
        recompute_load(&active, &lambda, &mut load);
        let m = metric_from_load(&load, n);
        let (ell, parent, best_t) = shortest_under(idx, &m, neg, pos);
        let ell = ell.expect("reachable by probe");
        if ell >= 1.0 - opts.eps {
            break (ell, m);
        }
        let path = backtrack(&parent, best_t);
        if !keys.insert(path.clone()) {
            // The shortest path is already active: the inner solve was too
            // loose. Tighten once; a second repeat is a genuine failure.
            if tightened {
                return Err(Error::NonConvergence {
                    outer,
                    feasibility: (1.0 - ell).max(0.0),
                    gap: f64::NAN,
                });
            }
            tightened = true;
            inner_tol = (inner_tol * 1e-3).max(1e-16);
            continue;
        }
        tightened = false;
        active.push(path);
        lambda.push(0.0);
    };

    let iterations = IterationCounts {
        outer,
        inner_passes: inner_total,
        paths_enumerated: active.len(),
    };
    Ok(finalize(
        idx,
        n,
        &m_tilde,
        ell,
        &lambda,
        &active,
        &load,
        iterations,
        SolverMode::CuttingPlane,
    ))
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

fn enumerate_all_paths(
    idx: &Indexed,
    sources: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
    cap: usize,
) -> Result<Vec<(u128, Vec<usize>)>> {
    let mut out = Vec::new();
    let mut visited = vec![false; idx.len()];
    let mut mask = 0u128;
    let mut stack = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        idx: &Indexed,
        u: usize,
        targets: &BTreeSet<usize>,
        visited: &mut [bool],
        mask: &mut u128,
        stack: &mut Vec<usize>,
        out: &mut Vec<(u128, Vec<usize>)>,
        cap: usize,
    ) -> Result<()> {
        visited[u] = true;
        *mask |= 1u128 << u;
        stack.push(u);
        if targets.contains(&u) {
            if out.len() >= cap {
                return Err(Error::PathCapExceeded { cap });
            }
            // Stopping at the first target vertex loses no constraint: any
            // longer continuation is a superset, hence dominated.
            out.push((*mask, stack.clone()));
        } else {
            for &v in &idx.adj[u] {
                if !visited[v] {
                    dfs(idx, v, targets, visited, mask, stack, out, cap)?;
                }
            }
        }
        stack.pop();
        visited[u] = false;
        *mask &= !(1u128 << u);
        Ok(())
    }
    for &s in sources {
        dfs(
            idx,
            s,
            targets,
            &mut visited,
            &mut mask,
            &mut stack,
            &mut out,
            cap,
        )?;
    }
    Ok(out)
}

fn minimal_paths(mut paths: Vec<(u128, Vec<usize>)>) -> Vec<Vec<usize>> {
    paths.sort_by_key(|(m, _)| m.count_ones());
    let mut kept_masks: Vec<u128> = Vec::new();
    let mut kept = Vec::new();
    for (m, p) in paths {
        if !kept_masks.iter().any(|&k| k & m == k) {
            kept_masks.push(m);
            kept.push(p);
        }
    }
    kept
}

fn brute_force(idx: &Indexed, opts: &SolverOptions) -> Result<SolverResult> {
    let n = idx.bx.n;
    if idx.len() > 128 {
        return Err(Error::Format(
            "brute-force enumeration supports at most 128 vertices".into(),
        ));
    }
    let (pos, neg) = idx.face_sets(1)?;
    let raw = enumerate_all_paths(idx, neg, pos, opts.max_paths)?;
    let enumerated = raw.len();
    if raw.is_empty() {
        return Err(Error::Unreachable { axis: 1 });
    }
    let sets = minimal_paths(raw);

    if n == 1 {
        return one_dim_hitting(idx, opts, &sets, enumerated);
    }

    let nv = idx.len();
    let k = sets.len();
    let mut lambda = vec![0.0f64; k];
    let mut load = vec![0.0f64; nv];
    let mut eta = 1.0f64;
    let budget = opts.max_iter.max(200_000);
    let mut converged = false;
    let mut iters = 0usize;
    let mut g_cur = dual_value(&lambda, &load, n);
    while iters < budget {
        iters += 1;
        let m = metric_from_load(&load, n);
        let grad: Vec<f64> = sets
            .iter()
            .map(|s| 1.0 - s.iter().map(|&v| m[v]).sum::<f64>())
            .collect();
        // Backtracking projected step.
        let mut accepted = false;
        for _ in 0..60 {
            let cand: Vec<f64> = lambda
                .iter()
                .zip(&grad)
                .map(|(&l, &g)| (l + eta * g).max(0.0))
                .collect();
            let mut cand_load = vec![0.0f64; nv];
            for (s, &l) in sets.iter().zip(&cand) {
                for &v in s {
                    cand_load[v] += l;
                }
            }
            let g_new = dual_value(&cand, &cand_load, n);
            let progress: f64 = grad
                .iter()
                .zip(lambda.iter().zip(&cand))
                .map(|(&g, (&l, &c))| g * (c - l))
                .sum();
            if g_new >= g_cur + 1e-4 * progress {
                lambda = cand;
                load = cand_load;
                g_cur = g_new;
                eta = (eta * 1.25).min(1e6);
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        let stuck = !accepted;
        if iters % 16 == 0 || stuck {
            let m = metric_from_load(&load, n);
            let ell_enum = sets
                .iter()
                .map(|s| s.iter().map(|&v| m[v]).sum::<f64>())
                .fold(f64::INFINITY, f64::min);
            if ell_enum > 0.0 {
                let primal: f64 = m.iter().map(|&x| (x / ell_enum).powi(n as i32)).sum();
                let gap = primal - g_cur;
                if gap <= opts.eps * primal.max(1.0) {
                    converged = true;
                    break;
                }
            }
            if stuck {
                break;
            }
        }
    }

    let m_tilde = metric_from_load(&load, n);
    let (ell, _, _) = shortest_under(idx, &m_tilde, neg, pos);
    let ell = ell.ok_or(Error::Unreachable { axis: 1 })?;
    if !converged || ell <= 0.0 {
        let primal: f64 = if ell > 0.0 {
            m_tilde.iter().map(|&x| (x / ell).powi(n as i32)).sum()
        } else {
            f64::INFINITY
        };
        return Err(Error::NonConvergence {
            outer: iters,
            feasibility: (1.0 - ell).max(0.0),
            gap: primal - g_cur,
        });
    }

    let iterations = IterationCounts {
        outer: iters,
        inner_passes: 0,
        paths_enumerated: enumerated,
    };
    Ok(finalize(
        idx,
        n,
        &m_tilde,
        ell,
        &lambda,
        &sets,
        &load,
        iterations,
        SolverMode::BruteForce,
    ))
}

// ---------------------------------------------------------------------------
// n = 1: exact linear specialization
// ---------------------------------------------------------------------------

fn one_dim_result(
    idx: &Indexed,
    cut_size: usize,
    cuts: &[BTreeSet<usize>],
    iterations: IterationCounts,
    mode: SolverMode,
) -> SolverResult {
    let nv = idx.len();
    let mut counts = vec![0usize; nv];
    for cut in cuts {
        for &v in cut {
            counts[v] += 1;
        }
    }
    let denom = (cuts.len() * cut_size) as f64;
    let m_star: Vec<f64> = counts.iter().map(|&c| c as f64 / denom).collect();
    let el = 1.0 / cut_size as f64;
    let (pos, neg) = idx.face_sets(1).expect("axis 1 exists");
    let (ell_star, _, _) = shortest_under(idx, &m_star, neg, pos);
    let metric = Metric::Real(
        idx.bx
            .vertices
            .iter()
            .cloned()
            .zip(m_star.iter().copied())
            .collect(),
    );
    SolverResult {
        mode,
        n: 1,
        extremal_length: ell_star.unwrap_or(el),
        shortest_length: ell_star.unwrap_or(el),
        el_bounds: (el, el),
        metric,
        residuals: Residuals {
            feasibility: 0.0,
            complementary_slackness: 0.0,
            duality_gap: 0.0,
            volume_error: 0.0,
        },
        iterations,
        active_paths: Vec::new(),
        multipliers: Vec::new(),
        converged: true,
    }
}

/// Minimum cuts are not always unique, so extremal metrics at n = 1 are not
/// either; averaging every minimum cut indicator picks a canonical one.
const CUT_ENUMERATION_CAP: usize = 200_000;

fn one_dim_flow(idx: &Indexed, _opts: &SolverOptions) -> Result<SolverResult> {
    let (pos, neg) = idx.face_sets(1)?;
    let ones: Vec<R64> = vec![R64(1.0); idx.len()];
    let (probe, _) = dijkstra_multi(&idx.adj, &ones, neg);
    if !pos.iter().any(|&t| probe[t].is_some()) {
        return Err(Error::Unreachable { axis: 1 });
    }
    let cut_size = onedim::min_vertex_cut_size(&idx.adj, neg, pos);
    let (cuts, _complete) =
        onedim::enumerate_min_cuts(&idx.adj, neg, pos, cut_size, CUT_ENUMERATION_CAP);
    if cuts.is_empty() {
        return Err(Error::NonConvergence {
            outer: 0,
            feasibility: f64::NAN,
            gap: f64::NAN,
        });
    }
    let iterations = IterationCounts {
        outer: cut_size,
        inner_passes: 0,
        paths_enumerated: cuts.len(),
    };
    Ok(one_dim_result(
        idx,
        cut_size,
        &cuts,
        iterations,
        SolverMode::CuttingPlane,
    ))
}

fn one_dim_hitting(
    idx: &Indexed,
    _opts: &SolverOptions,
    sets: &[Vec<usize>],
    enumerated: usize,
) -> Result<SolverResult> {
    let as_sets: Vec<BTreeSet<usize>> = sets
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    let size = onedim::min_hitting_set_size(&as_sets);
    let (cuts, _complete) =
        onedim::enumerate_min_hitting_sets(&as_sets, size, CUT_ENUMERATION_CAP);
    if cuts.is_empty() {
        return Err(Error::NonConvergence {
            outer: 0,
            feasibility: f64::NAN,
            gap: f64::NAN,
        });
    }
    let iterations = IterationCounts {
        outer: size,
        inner_passes: 0,
        paths_enumerated: enumerated,
    };
    Ok(one_dim_result(
        idx,
        size,
        &cuts,
        iterations,
        SolverMode::BruteForce,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn assert_metric_close(result: &SolverResult, expected: &[(&str, f64)], tol: f64) {
        for (name, want) in expected {
            let got = result.metric.get(name).unwrap();
            assert!(
                (got - want).abs() <= tol,
                "{name}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn q4_extremal_metric_is_uniform_half() {
        // Oracle value: brute_force_extremal on the 4-vertex fixture (also
        // derived by hand: the uniform metric of unit volume has shortest
        // length 1, and no metric does better by symmetrization).
        let q4 = fixtures::q4();
        let r = extremal_metric(&q4, &SolverOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.extremal_length - 1.0).abs() < 1e-7, "{}", r.extremal_length);
        assert_metric_close(&r, &[("a", 0.5), ("b", 0.5), ("c", 0.5), ("d", 0.5)], 1e-6);
        let b = brute_force_extremal(&q4, &SolverOptions::default()).unwrap();
        assert!((b.extremal_length - 1.0).abs() < 1e-7);
        assert!(r.metric.sup_distance(&b.metric) < 1e-6);
    }

    #[test]
    fn k8_extremal_metric_is_uniform_half() {
        let k8 = fixtures::k8();
        let r = extremal_metric(&k8, &SolverOptions::default()).unwrap();
        assert!((r.extremal_length - 1.0).abs() < 1e-7);
        for v in &k8.vertices {
            assert!((r.metric.get(v).unwrap() - 0.5).abs() < 1e-5);
        }
        let b = brute_force_extremal(&k8, &SolverOptions::default()).unwrap();
        assert!((b.extremal_length - 1.0).abs() < 1e-7);
        assert!(r.metric.sup_distance(&b.metric) < 1e-5);
    }

    #[test]
    fn q7_matches_the_scaled_tiling_metric() {
        // Forced by the extremality of tiling metrics: sides scaled to unit
        // volume, extremal length h1 / sqrt(area) = 1.
        let bx = fixtures::q7_contact_box();
        let r = extremal_metric(&bx, &SolverOptions::default()).unwrap();
        assert!((r.extremal_length - 1.0).abs() < 1e-7);
        let expected = [
            ("s00", 0.5),
            ("s10", 0.5),
            ("s01", 0.5),
            ("t11", 0.25),
            ("t21", 0.25),
            ("t12", 0.25),
            ("t22", 0.25),
        ];
        assert_metric_close(&r, &expected, 1e-6);
    }

    #[test]
    fn two_vertex_one_dim_box() {
        // min m(a)+m(b) with m(a)+m(b) >= 1: optimum 1; averaging the two
        // singleton cuts gives (1/2, 1/2).
        let bx = fixtures::path2();
        for mode in [SolverMode::CuttingPlane, SolverMode::BruteForce] {
            let r = solve(
                &bx,
                &SolverOptions {
                    mode,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!((r.extremal_length - 1.0).abs() < 1e-12);
            assert_metric_close(&r, &[("a", 0.5), ("b", 0.5)], 1e-12);
        }
    }

    #[test]
    fn invalid_box_is_rejected() {
        let err = extremal_metric(&fixtures::stack3(), &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidBox(_)));
    }

    #[test]
    fn seeded_runs_agree() {
        let bx = fixtures::q7_contact_box();
        let base = extremal_metric(&bx, &SolverOptions::default()).unwrap();
        for seed in [1u64, 2, 3] {
            let r = extremal_metric(
                &bx,
                &SolverOptions {
                    seed,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(base.metric.sup_distance(&r.metric) < 1e-5);
        }
    }

    #[test]
    fn kkt_certificate_holds_on_q7() {
        let bx = fixtures::q7_contact_box();
        let r = extremal_metric(&bx, &SolverOptions::default()).unwrap();
        let el = r.extremal_length;
        assert!(!r.active_paths.is_empty());
        for (path, lam) in r.active_paths.iter().zip(&r.multipliers) {
            assert!(*lam > 0.0);
            let len: f64 = path.iter().map(|v| r.metric.get(v).unwrap()).sum();
            assert!((len - el).abs() <= 1e-6 * el.max(1.0));
        }
        // Stationarity: n * m(v)^(n-1) equals the multiplier load.
        let mut loads: std::collections::BTreeMap<&str, f64> = Default::default();
        for (path, lam) in r.active_paths.iter().zip(&r.multipliers) {
            for v in path {
                *loads.entry(v.as_str()).or_default() += lam;
            }
        }
        for v in &bx.vertices {
            let m = r.metric.get(v).unwrap();
            if m > 1e-6 {
                let lhs = 2.0 * m;
                let rhs = loads.get(v.as_str()).copied().unwrap_or(0.0);
                assert!((lhs - rhs).abs() <= 1e-6, "{v}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn scale_invariance_of_result() {
        // Different seeds change the constraint-generation trajectory but
        // the optimum (and the certified bracket) is scale-invariant.
        let bx = fixtures::q4();
        let r = extremal_metric(&bx, &SolverOptions::default()).unwrap();
        let (lo, hi) = r.el_bounds;
        assert!(lo <= r.extremal_length * (1.0 + 1e-9));
        assert!(r.extremal_length <= hi * (1.0 + 1e-9));
        assert!(hi - lo < 1e-6);
    }
}
