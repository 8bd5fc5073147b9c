//! Eigenvalue-side computations.
//!
//! For graphs (r = 2) everything reduces to dense symmetric eigenproblems,
//! solved here by cyclic Jacobi rotations so no external solver is needed.
//! For r >= 3 the spectrum is out of reach, but two certified routes remain:
//! a power iteration with Collatz-Wielandt brackets for nonnegative tensors,
//! and trace-series partial sums with disk-bound tail estimates.  Intervals
//! carry a `certified` flag; it is set only when every step of the bracket
//! is backed by an exact or one-sided argument.

use crate::hypergraph::{degree_stats, Hypergraph, HypergraphError};
use crate::tensor::{build_tensor, StructuredTensor, TensorKind};
use crate::trace::{average_degree, eigenvalue_count, trace_series, TraceConfig, TraceError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("matrix entry ({row},{col}) breaks symmetry")]
    NotSymmetric { row: usize, col: usize },
    #[error("rotation sweeps did not converge after {sweeps} sweeps (off-norm {off_norm:e})")]
    NoConvergence { sweeps: u32, off_norm: f64 },
    #[error("operation requires r = 2, got r = {r}")]
    WrongUniformity { r: u32 },
    #[error("spectral radius iteration supports kinds A and Q, got {kind}")]
    UnsupportedKind { kind: &'static str },
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

const JACOBI_MAX_SWEEPS: u32 = 100;

/// Nudge a float down (resp. up) by a few parts in 1e14, so that rounded
/// rational endpoints stay on the safe side of the true value.
pub(crate) fn round_down(v: f64) -> f64 {
    v - v.abs() * 3e-14 - f64::MIN_POSITIVE
}

pub(crate) fn round_up(v: f64) -> f64 {
    v + v.abs() * 3e-14 + f64::MIN_POSITIVE
}

fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn eig_symmetric(mat: &[Vec<f64>]) -> Result<Vec<f64>, SpectraError> {
    eig_symmetric_with_vectors(mat).map(|(vals, _)| vals)
}

/// Same, returning matched eigenvectors (one row per eigenvalue).
pub fn eig_symmetric_with_vectors(
    mat: &[Vec<f64>],
) -> Result<(Vec<f64>, Vec<Vec<f64>>), SpectraError> {
    let n = mat.len();
    let scale = mat
        .iter()
        .flat_map(|row| row.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt();
    for (i, row) in mat.iter().enumerate() {
        if row.len() != n {
            return Err(SpectraError::NotSymmetric { row: i, col: row.len() });
        }
        for (j, v) in row.iter().enumerate() {
            if (v - mat[j][i]).abs() > 1e-12 * (1.0 + scale) {
                return Err(SpectraError::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut a: Vec<Vec<f64>> = mat.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p][q] * a[p][q];
            }
        }
        s.sqrt()
    };
    for sweep in 0..JACOBI_MAX_SWEEPS {
        let off = off_norm(&a);
        if off <= 1e-14 * (1.0 + scale) {
            break;
        }
        if sweep == JACOBI_MAX_SWEEPS - 1 {
            return Err(SpectraError::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= 1e-18 * (1.0 + scale) {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e12 {
                    1.0 / (2.0 * theta)
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[p][i] = a[i][p];
                    a[i][q] = s * aip + c * aiq;
                    a[q][i] = a[i][q];
                }
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = c * vip - s * viq;
                    row[q] = s * vip + c * viq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let vecs: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    Ok((vals, vecs))
}

/// Dense matrix of a graph tensor (r = 2 only).
pub fn dense_matrix(h: &Hypergraph, kind: TensorKind) -> Result<Vec<Vec<f64>>, SpectraError> {
    if h.r() != 2 {
        return Err(SpectraError::WrongUniformity { r: h.r() });
    }
    let n = h.n() as usize;
    let degrees = degree_stats(h, 1).degrees;
    let mut mat = vec![vec![0.0; n]; n];
    let off = match kind {
        TensorKind::Adjacency | TensorKind::SignlessLaplacian => 1.0,
        TensorKind::Laplacian => -1.0,
        TensorKind::Degree => 0.0,
    };
    for e in h.edges() {
        mat[e[0] as usize][e[1] as usize] = off;
        mat[e[1] as usize][e[0] as usize] = off;
    }
    if kind != TensorKind::Adjacency {
        for (i, &d) in degrees.iter().enumerate() {
            mat[i][i] = d as f64;
        }
    }
    Ok(mat)
}

/// The five Estrada-type indices of a graph from exact eigenvalues,
/// plus the three spectra they came from.
#[derive(Debug, Clone)]
pub struct EstradaSuite {
    pub ee: f64,
    pub slee: f64,
    pub lee: f64,
    pub lee1: f64,
    pub le: f64,
    pub adjacency: Vec<f64>,
    pub laplacian: Vec<f64>,
    pub signless: Vec<f64>,
}

pub fn estrada_suite_graph(h: &Hypergraph) -> Result<EstradaSuite, SpectraError> {
    if h.r() != 2 {
        return Err(SpectraError::WrongUniformity { r: h.r() });
    }
    let adjacency = eig_symmetric(&dense_matrix(h, TensorKind::Adjacency)?)?;
    let laplacian = eig_symmetric(&dense_matrix(h, TensorKind::Laplacian)?)?;
    let signless = eig_symmetric(&dense_matrix(h, TensorKind::SignlessLaplacian)?)?;
    let shift = rational_to_f64(&average_degree(h));
    Ok(EstradaSuite {
        ee: kahan_sum(adjacency.iter().map(|l| l.exp())),
        slee: kahan_sum(signless.iter().map(|q| q.exp())),
        lee: kahan_sum(laplacian.iter().map(|m| (m - shift).exp())),
        lee1: kahan_sum(laplacian.iter().map(|m| m.exp())),
        le: kahan_sum(laplacian.iter().map(|m| (m - shift).abs())),
        adjacency,
        laplacian,
        signless,
    })
}

/// Spectral radius bracket for a nonnegative tensor.  `upper_exact` is
/// evaluated in exact rational arithmetic from the final iterate and is a
/// true upper bound regardless of convergence.
#[derive(Debug, Clone)]
pub struct RadiusEstimate {
    pub point: f64,
    pub lower: f64,
    pub upper: f64,
    pub upper_exact: BigRational,
    pub iterations: u32,
    pub converged: bool,
}

const RADIUS_MAX_ITERS: u32 = 20_000;

fn zero_radius() -> RadiusEstimate {
    RadiusEstimate {
        point: 0.0,
        lower: 0.0,
        upper: 0.0,
        upper_exact: BigRational::zero(),
        iterations: 0,
        converged: true,
    }
}

/// One connected component with at least one edge: power iteration on
/// T + I, ratio brackets, then an exact rational evaluation of the upper
/// bracket at the final iterate.  The +1 shift is removed at the end.
fn radius_component(h: &Hypergraph, kind: TensorKind, tol: f64) -> RadiusEstimate {
    let t = build_tensor(h, kind);
    let n = h.n() as usize;
    let rm1 = (h.r() - 1) as i32;
    let mut x = vec![1.0f64; n];
    let mut best_lo = 0.0f64;
    let mut best_hi = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    for it in 1..=RADIUS_MAX_ITERS {
        iterations = it;
        let mut y = t.apply_f64(&x).expect("dimension fixed");
        for i in 0..n {
            y[i] += x[i].powi(rm1);
        }
        let ratios: Vec<f64> = (0..n).map(|i| y[i] / x[i].powi(rm1)).collect();
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
        best_lo = best_lo.max(lo);
        best_hi = best_hi.min(hi);
        if best_hi - best_lo <= tol * best_hi.max(1.0) {
            converged = true;
            break;
        }
        let norm = y.iter().cloned().fold(0.0f64, f64::max);
        for i in 0..n {
            x[i] = (y[i] / norm).powf(1.0 / rm1 as f64).max(1e-150);
        }
    }
    // exact Collatz-Wielandt upper bound at the final positive iterate
    let x_rat: Vec<BigRational> = x
        .iter()
        .map(|&v| BigRational::from_float(v.max(1e-150)).expect("finite"))
        .collect();
    let y_rat = t.apply(&x_rat).expect("dimension fixed");
    let mut upper_exact = BigRational::zero();
    for i in 0..n {
        let pow = crate::trace::rat_pow(&x_rat[i], h.r() - 1);
        let ratio = (&y_rat[i] + &pow) / &pow;
        if ratio > upper_exact {
            upper_exact = ratio;
        }
    }
    upper_exact -= BigRational::one();
    let upper = round_up(rational_to_f64(&upper_exact)).min((best_hi - 1.0).max(0.0));
    RadiusEstimate {
        point: ((best_lo + best_hi) / 2.0 - 1.0).max(0.0),
        lower: (round_down(best_lo) - 1.0).max(0.0),
        upper,
        upper_exact,
        iterations,
        converged,
    }
}

/// Spectral radius of a nonnegative tensor (kinds A and Q), taken per
/// connected component.  The returned bracket always holds; `converged`
/// reports whether it closed to `tol`.
pub fn spectral_radius_nonneg(
    t: &StructuredTensor,
    tol: f64,
) -> Result<RadiusEstimate, SpectraError> {
    if !matches!(
        t.kind(),
        TensorKind::Adjacency | TensorKind::SignlessLaplacian
    ) {
        return Err(SpectraError::UnsupportedKind {
            kind: t.kind().letter(),
        });
    }
    let h = t.host();
    if h.m() == 0 {
        return Ok(zero_radius());
    }
    let mut best: Option<RadiusEstimate> = None;
    let mut all_converged = true;
    let mut total_iters = 0;
    for comp in h.components() {
        let sub = h.induced(&comp);
        let est = if sub.m() == 0 {
            zero_radius()
        } else {
            radius_component(&sub, t.kind(), tol)
        };
        all_converged &= est.converged;
        total_iters += est.iterations;
        best = Some(match best {
            None => est,
            Some(b) => {
                if est.upper_exact > b.upper_exact {
                    est
                } else {
                    b
                }
            }
        });
    }
    let mut out = best.expect("at least one component");
    out.converged = all_converged;
    out.iterations = total_iters;
    Ok(out)
}

/// Taylor remainder e^x - sum_{k<=terms} x^k/k!.
pub fn exp_taylor_remainder(x: f64, terms: u32) -> f64 {
    let mut partial = 0.0f64;
    let mut term = 1.0f64;
    for k in 0..=terms {
        if k > 0 {
            term *= x / k as f64;
        }
        partial += term;
    }
    x.exp() - partial
}

/// Upper bound on the series tail sum_{k>terms} radius^k/k!, radius >= 0.
pub fn exp_tail_bound(radius: f64, terms: u32) -> f64 {
    if radius <= 0.0 {
        return 0.0;
    }
    let mut first = 1.0f64;
    for k in 1..=terms + 1 {
        first *= radius / k as f64;
    }
    let lagrange = first * radius.exp();
    let next = (terms + 2) as f64;
    let geometric = if radius < next {
        first / (1.0 - radius / next)
    } else {
        f64::INFINITY
    };
    lagrange.min(geometric) * (1.0 + 1e-12)
}

/// A certified or heuristic enclosure of an Estrada-type series.
#[derive(Debug, Clone)]
pub struct SeriesBound {
    pub lower: f64,
    pub upper: f64,
    /// Exact partial sum the enclosure was built from.
    pub partial: BigRational,
    pub truncation_order: u32,
    pub radius: f64,
    /// Width <= the tolerance passed in.
    pub converged: bool,
    /// True when both endpoints follow from one-sided arguments
    /// (nonnegative trace terms, disk-bound tails, exact radii).
    pub certified: bool,
    pub nodes_visited: u64,
}

fn series_partial_sum(values: &[BigRational]) -> BigRational {
    let mut sum = BigRational::zero();
    let mut kfact = BigInt::one();
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            kfact *= BigInt::from(k as u64);
        }
        sum += v / BigRational::from(kfact.clone());
    }
    sum
}

/// Radius for the signless Laplacian tail: min(2*max degree, certified
/// power-iteration upper bound).
fn signless_radius(h: &Hypergraph) -> f64 {
    let two_delta = 2.0 * degree_stats(h, 1).max_degree as f64;
    if h.m() == 0 {
        return 0.0;
    }
    let t = build_tensor(h, TensorKind::SignlessLaplacian);
    match spectral_radius_nonneg(&t, 1e-12) {
        Ok(est) => round_up(est.upper).min(two_delta).max(0.0),
        Err(_) => two_delta,
    }
}

/// Certified SLEE enclosure: lower = exact partial sum of Q traces over k!
/// (valid since every Q trace is a nonnegative sum of walk weights), upper
/// adds s times the tail bound at the disk radius.
pub fn slee_certified_interval(
    h: &Hypergraph,
    k: u32,
    tol: f64,
    cfg: &TraceConfig,
) -> Result<SeriesBound, SpectraError> {
    let series = trace_series(h, TensorKind::SignlessLaplacian, k, cfg)?;
    let partial = series_partial_sum(&series.values);
    let radius = signless_radius(h);
    let s = rational_to_f64(&BigRational::from(BigInt::from(eigenvalue_count(h))));
    let tail = round_up(s) * exp_tail_bound(radius, series.k_eff);
    let lower = round_down(rational_to_f64(&partial));
    let upper = round_up(rational_to_f64(&partial)) + tail;
    Ok(SeriesBound {
        lower,
        upper,
        partial,
        truncation_order: series.k_eff,
        radius,
        converged: upper - lower <= tol,
        certified: true,
        nodes_visited: series.nodes_visited,
    })
}

/// LEE series enclosure from centered Laplacian power sums.  The interval
/// uses the disk radius 2*max degree + rm/n, symmetric about the partial
/// sum.  Certification follows the spectrum-equality rule: graphs, empty
/// hypergraphs, and even-r odd-colorable instances only.
pub fn lee_series(
    h: &Hypergraph,
    k: u32,
    tol: f64,
    cfg: &TraceConfig,
) -> Result<SeriesBound, SpectraError> {
    let series = trace_series(h, TensorKind::Laplacian, k, cfg)?;
    let shift = -average_degree(h);
    // M_j by binomial expansion of the shifted traces
    let mut centered: Vec<BigRational> = Vec::with_capacity(series.values.len());
    for j in 0..series.values.len() {
        let mut mj = BigRational::zero();
        for (i, tr) in series.values.iter().enumerate().take(j + 1) {
            let binom = num_integer::binomial(
                num_bigint::BigUint::from(j as u64),
                num_bigint::BigUint::from(i as u64),
            );
            mj += BigRational::from(BigInt::from(binom))
                * crate::trace::rat_pow(&shift, (j - i) as u32)
                * tr;
        }
        centered.push(mj);
    }
    let partial = series_partial_sum(&centered);
    let prof = degree_stats(h, 1);
    let radius = if h.m() == 0 {
        0.0
    } else {
        round_up(2.0 * prof.max_degree as f64 + rational_to_f64(&average_degree(h)))
    };
    let s = rational_to_f64(&BigRational::from(BigInt::from(eigenvalue_count(h))));
    let tail = round_up(s) * exp_tail_bound(radius, series.k_eff);
    let lower = round_down(rational_to_f64(&partial)) - tail;
    let upper = round_up(rational_to_f64(&partial)) + tail;
    let certified = h.r() == 2 || h.m() == 0 || spectra_coincide(h);
    Ok(SeriesBound {
        lower,
        upper,
        partial,
        truncation_order: series.k_eff,
        radius,
        converged: upper - lower <= tol,
        certified,
        nodes_visited: series.nodes_visited,
    })
}

/// Whether the Laplacian and signless Laplacian spectra provably coincide:
/// r even and an odd coloring exists.  Search failures count as "no".
pub fn spectra_coincide(h: &Hypergraph) -> bool {
    if h.m() == 0 {
        return true;
    }
    h.r() % 2 == 0 && matches!(crate::hypergraph::is_odd_colorable(h), Ok(Some(_)))
}

/// Certified LEE enclosure for r >= 3, available exactly when the
/// L-spectrum is pinned down: empty H (all eigenvalues 0) or even-r
/// odd-colorable H (L and Q share spectra, so LEE = e^{-rm/n} * SLEE).
/// Returns the interval and a label for its source.
pub fn lee_enclosure_r3(
    h: &Hypergraph,
    k: u32,
    tol: f64,
    cfg: &TraceConfig,
) -> Result<Option<(f64, f64, &'static str)>, SpectraError> {
    if h.m() == 0 {
        let s = rational_to_f64(&BigRational::from(BigInt::from(eigenvalue_count(h))));
        return Ok(Some((s, s, "empty: all eigenvalues zero")));
    }
    if !spectra_coincide(h) {
        return Ok(None);
    }
    let slee = slee_certified_interval(h, k, tol, cfg)?;
    let scale = (-rational_to_f64(&average_degree(h))).exp();
    Ok(Some((
        round_down(slee.lower * scale),
        round_up(slee.upper * scale),
        "scaled signless series (coinciding spectra)",
    )))
}

/// Enclosure of the Laplacian spectral radius where one is attainable:
/// exact eigensolver for r = 2, zero for empty H, and the signless radius
/// bracket when the two spectra coincide.  None otherwise.
pub fn laplacian_radius_enclosure(
    h: &Hypergraph,
    tol: f64,
) -> Result<Option<(f64, f64, &'static str)>, SpectraError> {
    if h.m() == 0 {
        return Ok(Some((0.0, 0.0, "empty")));
    }
    if h.r() == 2 {
        let vals = eig_symmetric(&dense_matrix(h, TensorKind::Laplacian)?)?;
        let rho = vals.last().copied().unwrap_or(0.0).max(0.0);
        return Ok(Some((
            round_down(rho).max(0.0),
            round_up(rho),
            "dense eigensolver",
        )));
    }
    if !spectra_coincide(h) {
        return Ok(None);
    }
    let t = build_tensor(h, TensorKind::SignlessLaplacian);
    let est = spectral_radius_nonneg(&t, tol)?;
    Ok(Some((
        est.lower,
        round_up(rational_to_f64(&est.upper_exact)),
        "signless radius (coinciding spectra)",
    )))
}
