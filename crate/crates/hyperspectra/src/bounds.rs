//! Inequality checks over degree statistics, traces, and Estrada indices.
//!
//! Every check reports both sides of its inequality, a tri-state verdict,
//! the margin, and whether the instance sits in the stated equality case.
//! Verdicts are interval-aware: `Proven` requires the inequality to hold
//! for all values a side could take, `Violated` requires it to fail for
//! all of them, and overlapping or uncertified data yields `Inconclusive`.
//! A `Violated` outcome on valid input would falsify a published theorem,
//! so the test suite treats any violation as a build failure.

use crate::hypergraph::{degree_stats, is_odd_colorable, DegreeProfile, Hypergraph};
use crate::spectra::{
    estrada_suite_graph, laplacian_radius_enclosure, lee_enclosure_r3, round_down, round_up,
    slee_certified_interval, EstradaSuite, SeriesBound, SpectraError,
};
use crate::tensor::TensorKind;
use crate::trace::{eigenvalue_count, rat_pow, shifted_power_sum_mk, trace_auto, TraceConfig};
use crate::walks::factorial;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    Lem21Lower,
    Lem21Upper,
    Lem22,
    Lem23Lower,
    Lem23Upper,
    Thm41,
    Cor42,
    Thm43,
    Thm51,
    Thm52,
    Thm54,
}

impl BoundId {
    pub const ALL: [BoundId; 11] = [
        BoundId::Lem21Lower,
        BoundId::Lem21Upper,
        BoundId::Lem22,
        BoundId::Lem23Lower,
        BoundId::Lem23Upper,
        BoundId::Thm41,
        BoundId::Cor42,
        BoundId::Thm43,
        BoundId::Thm51,
        BoundId::Thm52,
        BoundId::Thm54,
    ];

    pub fn code(self) -> &'static str {
        match self {
            BoundId::Lem21Lower => "lem21_lower",
            BoundId::Lem21Upper => "lem21_upper",
            BoundId::Lem22 => "lem22",
            BoundId::Lem23Lower => "lem23_lower",
            BoundId::Lem23Upper => "lem23_upper",
            BoundId::Thm41 => "thm41",
            BoundId::Cor42 => "cor42",
            BoundId::Thm43 => "thm43",
            BoundId::Thm51 => "thm51",
            BoundId::Thm52 => "thm52",
            BoundId::Thm54 => "thm54",
        }
    }

    pub fn from_code(code: &str) -> Option<BoundId> {
        BoundId::ALL.into_iter().find(|id| id.code() == code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Satisfaction {
    Proven,
    Violated,
    Inconclusive,
}

impl Satisfaction {
    pub fn as_str(self) -> &'static str {
        match self {
            Satisfaction::Proven => "proven",
            Satisfaction::Violated => "violated",
            Satisfaction::Inconclusive => "inconclusive",
        }
    }
}

/// One side of an inequality: exact rational, floating point, or a
/// floating interval.  Intervals carry the certification flag of the
/// series or bracket they came from.
#[derive(Debug, Clone)]
pub enum SideValue {
    Exact(BigRational),
    Point(f64),
    Interval { lo: f64, hi: f64, certified: bool },
}

impl SideValue {
    pub fn lo(&self) -> f64 {
        match self {
            SideValue::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            SideValue::Point(v) => *v,
            SideValue::Interval { lo, .. } => *lo,
        }
    }

    pub fn hi(&self) -> f64 {
        match self {
            SideValue::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            SideValue::Point(v) => *v,
            SideValue::Interval { hi, .. } => *hi,
        }
    }

    pub fn mid(&self) -> f64 {
        (self.lo() + self.hi()) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi() - self.lo()
    }

    pub fn certified(&self) -> bool {
        match self {
            SideValue::Interval { certified, .. } => *certified,
            _ => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub id: BoundId,
    pub lhs: SideValue,
    pub rhs: SideValue,
    pub satisfied: Satisfaction,
    pub margin: f64,
    pub equality_case: bool,
    pub context: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub enum BoundOutcome {
    Report(BoundReport),
    NotApplicable { id: BoundId, reason: String },
}

#[derive(Debug, Clone)]
pub struct BoundOptions {
    pub tol: f64,
    pub series_order: u32,
    pub trace: TraceConfig,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            tol: 1e-9,
            series_order: 20,
            trace: TraceConfig::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("{} not applicable: {reason}", id.code())]
    NotApplicable { id: BoundId, reason: String },
    #[error("inputs unavailable for {}: {reason}", id.code())]
    InputsUnavailable { id: BoundId, reason: String },
}

enum Rel {
    Le,
    Ge,
}

/// Verdict, margin, and equality flag for a claimed inequality.
/// `rel` is the claimed relation of lhs against rhs.
fn judge(lhs: &SideValue, rhs: &SideValue, rel: Rel, tol: f64) -> (Satisfaction, f64, bool) {
    let equality = match (lhs, rhs) {
        (SideValue::Exact(x), SideValue::Exact(y)) => x == y,
        _ => {
            let scale = tol * rhs.mid().abs().max(1.0);
            (lhs.mid() - rhs.mid()).abs() <= scale
                && lhs.width() <= scale
                && rhs.width() <= scale
        }
    };
    // normalize to the claim a <= b
    let (a, b) = match rel {
        Rel::Le => (lhs, rhs),
        Rel::Ge => (rhs, lhs),
    };
    if let (SideValue::Exact(x), SideValue::Exact(y)) = (a, b) {
        let margin = (y - x).to_f64().unwrap_or(f64::NAN);
        let sat = if x <= y {
            Satisfaction::Proven
        } else {
            Satisfaction::Violated
        };
        return (sat, margin, equality);
    }
    let slack = tol * a.hi().abs().max(b.hi().abs()).max(1.0);
    let margin = b.lo() - a.hi();
    let sat = if !a.certified() || !b.certified() {
        Satisfaction::Inconclusive
    } else if a.hi() <= b.lo() + slack {
        Satisfaction::Proven
    } else if a.lo() > b.hi() + slack {
        Satisfaction::Violated
    } else {
        Satisfaction::Inconclusive
    };
    (sat, margin, equality)
}

pub fn is_regular(h: &Hypergraph) -> bool {
    let d = h.degrees();
    d.iter().all(|&x| x == d[0])
}

/// Every degree equals the maximum or the minimum degree.
pub fn degrees_two_valued(h: &Hypergraph) -> bool {
    let d = h.degrees();
    let max = d.iter().max().copied().unwrap_or(0);
    let min = d.iter().min().copied().unwrap_or(0);
    d.iter().all(|&x| x == max || x == min)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn big(u: &BigUint) -> BigRational {
    BigRational::from(BigInt::from(u.clone()))
}

/// Lazy per-instance cache shared by the bound evaluators.
struct Workspace<'a> {
    h: &'a Hypergraph,
    opts: &'a BoundOptions,
    prof: DegreeProfile,
    graph: Option<Result<EstradaSuite, String>>,
    slee: Option<Result<SeriesBound, String>>,
    lee3: Option<Result<Option<(f64, f64, &'static str)>, String>>,
    rho_l: Option<Result<Option<(f64, f64, &'static str)>, String>>,
}

impl<'a> Workspace<'a> {
    fn new(h: &'a Hypergraph, opts: &'a BoundOptions) -> Self {
        let max_power = 6.max(h.r() + 1);
        Workspace {
            h,
            opts,
            prof: degree_stats(h, max_power),
            graph: None,
            slee: None,
            lee3: None,
            rho_l: None,
        }
    }

    fn n(&self) -> u64 {
        self.h.n() as u64
    }

    fn r(&self) -> u64 {
        self.h.r() as u64
    }

    fn m(&self) -> u64 {
        self.h.m()
    }

    fn s(&self) -> BigRational {
        big(&eigenvalue_count(self.h))
    }

    fn zagreb(&self) -> BigRational {
        big(&self.prof.zagreb)
    }

    fn dsum(&self, k: u32) -> BigRational {
        big(&self.prof.power_sums[k as usize])
    }

    fn graph_suite(&mut self) -> Result<&EstradaSuite, String> {
        if self.graph.is_none() {
            self.graph = Some(estrada_suite_graph(self.h).map_err(|e| e.to_string()));
        }
        self.graph.as_ref().unwrap().as_ref().map_err(|e| e.clone())
    }

    fn slee_bound(&mut self) -> Result<&SeriesBound, String> {
        if self.slee.is_none() {
            self.slee = Some(
                slee_certified_interval(
                    self.h,
                    self.opts.series_order,
                    self.opts.tol,
                    &self.opts.trace,
                )
                .map_err(|e| e.to_string()),
            );
        }
        self.slee.as_ref().unwrap().as_ref().map_err(|e| e.clone())
    }

    fn lee_enclosure(&mut self) -> Result<Option<(f64, f64, &'static str)>, String> {
        if self.lee3.is_none() {
            self.lee3 = Some(
                lee_enclosure_r3(
                    self.h,
                    self.opts.series_order,
                    self.opts.tol,
                    &self.opts.trace,
                )
                .map_err(|e| e.to_string()),
            );
        }
        self.lee3.as_ref().unwrap().clone()
    }

    fn rho_laplacian(&mut self) -> Result<Option<(f64, f64, &'static str)>, String> {
        if self.rho_l.is_none() {
            self.rho_l =
                Some(laplacian_radius_enclosure(self.h, 1e-12).map_err(|e| e.to_string()));
        }
        self.rho_l.as_ref().unwrap().clone()
    }

    /// SLEE side used by the lower-bound theorems: exact eigenvalues for
    /// graphs, certified series interval otherwise.
    fn slee_side(&mut self, id: BoundId) -> Result<(SideValue, Vec<(String, String)>), BoundError> {
        if self.h.r() == 2 {
            let v = self
                .graph_suite()
                .map_err(|reason| BoundError::InputsUnavailable { id, reason })?
                .slee;
            Ok((SideValue::Point(v), vec![("slee_source".into(), "dense eigensolver".into())]))
        } else {
            let b = self
                .slee_bound()
                .map_err(|reason| BoundError::InputsUnavailable { id, reason })?;
            let ctx = vec![
                ("slee_source".into(), "trace series".into()),
                ("series_terms".into(), b.truncation_order.to_string()),
                ("series_radius".into(), format!("{:.6}", b.radius)),
            ];
            Ok((
                SideValue::Interval {
                    lo: b.lower,
                    hi: b.upper,
                    certified: b.certified,
                },
                ctx,
            ))
        }
    }

    /// LEE side for the upper-bound theorems, where one is available.
    fn lee_side(&mut self, id: BoundId) -> Result<(SideValue, Vec<(String, String)>), BoundError> {
        if self.m() == 0 {
            return Ok((
                SideValue::Exact(self.s()),
                vec![("lee_source".into(), "empty: all eigenvalues zero".into())],
            ));
        }
        if self.h.r() == 2 {
            let v = self
                .graph_suite()
                .map_err(|reason| BoundError::InputsUnavailable { id, reason })?
                .lee;
            return Ok((SideValue::Point(v), vec![("lee_source".into(), "dense eigensolver".into())]));
        }
        match self
            .lee_enclosure()
            .map_err(|reason| BoundError::InputsUnavailable { id, reason })?
        {
            Some((lo, hi, src)) => Ok((
                SideValue::Interval { lo, hi, certified: true },
                vec![("lee_source".into(), src.into())],
            )),
            None => Err(BoundError::NotApplicable {
                id,
                reason: "no certified LEE route for r >= 3 without coinciding spectra".into(),
            }),
        }
    }
}

fn base_context(opts: &BoundOptions, equality_condition: &str) -> Vec<(String, String)> {
    vec![
        ("tolerance".into(), format!("{:e}", opts.tol)),
        ("equality_condition".into(), equality_condition.into()),
    ]
}

fn report(
    id: BoundId,
    lhs: SideValue,
    rhs: SideValue,
    rel: Rel,
    tol: f64,
    mut context: Vec<(String, String)>,
    extra: Vec<(String, String)>,
) -> BoundReport {
    let (satisfied, margin, equality_case) = judge(&lhs, &rhs, rel, tol);
    context.extend(extra);
    BoundReport {
        id,
        lhs,
        rhs,
        satisfied,
        margin,
        equality_case,
        context,
    }
}

/// r^2 m^2 / n as an exact rational.
fn mean_square_bound(ws: &Workspace) -> BigRational {
    ratio(
        (BigInt::from(ws.r()) * BigInt::from(ws.m())).pow(2),
        BigInt::from(ws.n()),
    )
}

fn eval_lem21_lower(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    if ws.n() < 3 {
        return Err(BoundError::NotApplicable {
            id: BoundId::Lem21Lower,
            reason: "requires at least 3 vertices".into(),
        });
    }
    let lhs = SideValue::Exact(mean_square_bound(ws));
    let rhs = SideValue::Exact(ws.zagreb());
    let ctx = base_context(ws.opts, "H regular");
    Ok(report(BoundId::Lem21Lower, lhs, rhs, Rel::Le, ws.opts.tol, ctx, vec![]))
}

fn eval_lem21_upper(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    if ws.n() < 3 {
        return Err(BoundError::NotApplicable {
            id: BoundId::Lem21Upper,
            reason: "requires at least 3 vertices".into(),
        });
    }
    let dn = ws.prof.min_degree;
    let rhs = BigRational::from(
        (BigInt::from(ws.r()) * BigInt::from(ws.m())).pow(2)
            - BigInt::from(ws.n()) * BigInt::from(ws.n() - 1) * BigInt::from(dn).pow(2),
    );
    let ctx = base_context(ws.opts, "H regular");
    Ok(report(
        BoundId::Lem21Upper,
        SideValue::Exact(ws.zagreb()),
        SideValue::Exact(rhs),
        Rel::Le,
        ws.opts.tol,
        ctx,
        vec![],
    ))
}

fn eval_lem22(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    let d1 = ws.prof.max_degree;
    let dn = ws.prof.min_degree;
    let rhs = BigRational::from(
        BigInt::from(d1 + dn) * BigInt::from(ws.r()) * BigInt::from(ws.m())
            - BigInt::from(ws.n()) * BigInt::from(d1) * BigInt::from(dn),
    );
    let ctx = base_context(ws.opts, "every degree equals the max or min degree");
    Ok(report(
        BoundId::Lem22,
        SideValue::Exact(ws.zagreb()),
        SideValue::Exact(rhs),
        Rel::Le,
        ws.opts.tol,
        ctx,
        vec![],
    ))
}

const POWER_MEAN_RANGE: std::ops::RangeInclusive<u32> = 2..=6;

fn eval_lem23_lower(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    // n (rm/n)^k <= sum d^k, exactly: (rm)^k <= n^(k-1) * sum d^k
    let rm = BigUint::from(ws.r() * ws.m());
    let n = BigUint::from(ws.n());
    let mut all_hold = true;
    let mut all_equal = true;
    let mut worst: Option<(u32, f64)> = None;
    for k in POWER_MEAN_RANGE {
        let lhs_int = rm.pow(k);
        let rhs_int = n.pow(k - 1) * &ws.prof.power_sums[k as usize];
        all_hold &= lhs_int <= rhs_int;
        all_equal &= lhs_int == rhs_int;
        let margin = (big(&rhs_int) - big(&lhs_int)).to_f64().unwrap_or(f64::NAN)
            / big(&rhs_int).to_f64().unwrap_or(1.0).max(1.0);
        if worst.map_or(true, |(_, w)| margin < w) {
            worst = Some((k, margin));
        }
    }
    let (k, _) = worst.unwrap();
    let lhs = SideValue::Exact(big(&rm.pow(k)) / big(&BigUint::from(ws.n()).pow(k - 1)));
    let rhs = SideValue::Exact(ws.dsum(k));
    let satisfied = if all_hold {
        Satisfaction::Proven
    } else {
        Satisfaction::Violated
    };
    let margin = rhs.lo() - lhs.hi();
    let mut context = base_context(ws.opts, "H regular");
    context.push(("orders".into(), "2..=6".into()));
    context.push(("reported_order".into(), k.to_string()));
    Ok(BoundReport {
        id: BoundId::Lem23Lower,
        lhs,
        rhs,
        satisfied,
        margin,
        equality_case: all_equal,
        context,
    })
}

fn eval_lem23_upper(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    // sum d^k <= M^(k/2), exactly: (sum d^k)^2 <= M^k
    let zag = &ws.prof.zagreb;
    let mut all_hold = true;
    let mut all_equal = true;
    for k in POWER_MEAN_RANGE {
        let lhs_int = ws.prof.power_sums[k as usize].pow(2);
        let rhs_int = zag.pow(k);
        all_hold &= lhs_int <= rhs_int;
        all_equal &= lhs_int == rhs_int;
    }
    // the order-2 instance is tight by definition, so report order 3
    let lhs = SideValue::Exact(ws.dsum(3));
    let rhs = SideValue::Point(to_f64(&ws.zagreb()).powf(1.5));
    let satisfied = if all_hold {
        Satisfaction::Proven
    } else {
        Satisfaction::Violated
    };
    let margin = rhs.lo() - lhs.hi();
    let mut context = base_context(ws.opts, "all orders tight (zero or one active degree value)");
    context.push(("orders".into(), "2..=6".into()));
    context.push(("reported_order".into(), "3".into()));
    context.push(("order_2_note".into(), "order 2 is an identity".into()));
    Ok(BoundReport {
        id: BoundId::Lem23Upper,
        lhs,
        rhs,
        satisfied,
        margin,
        equality_case: all_equal,
        context,
    })
}

/// Exact sum of signless Laplacian traces over k! for k = 0..=r+1.
fn signless_partial_exact(ws: &mut Workspace) -> Result<BigRational, String> {
    let mut sum = BigRational::zero();
    for k in 0..=ws.h.r() + 1 {
        let tr = trace_auto(ws.h, TensorKind::SignlessLaplacian, k, &ws.opts.trace)
            .map_err(|e| e.to_string())?;
        sum += tr.value / big(&factorial(k as u64));
    }
    Ok(sum)
}

fn eval_thm41(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    let rhs = signless_partial_exact(ws).map_err(|reason| BoundError::InputsUnavailable {
        id: BoundId::Thm41,
        reason,
    })?;
    let (lhs, extra) = ws.slee_side(BoundId::Thm41)?;
    let ctx = base_context(ws.opts, "H empty");
    Ok(report(
        BoundId::Thm41,
        lhs,
        SideValue::Exact(rhs),
        Rel::Ge,
        ws.opts.tol,
        ctx,
        extra,
    ))
}

/// The degree-only lower-bound expression shared by the corollary route:
/// (r-1)^(n-1) * (n + (r/(r-1))^(r-1) m/r! + (r+1)r^(r-2)/((r-1)^(r-1)(r+1)!) sum d^2
///              + sum_{k=1}^{r+1} sum d^k / k!).
fn degree_series_bound(ws: &Workspace) -> BigRational {
    let r = ws.r();
    let scale = BigRational::from(BigInt::from(r - 1).pow(ws.h.n() - 1));
    let mut inner = BigRational::from(BigInt::from(ws.n()));
    inner += rat_pow(&ratio(BigInt::from(r), BigInt::from(r - 1)), ws.h.r() - 1)
        * ratio(BigInt::from(ws.m()), BigInt::from(factorial(r)));
    inner += ratio(
        BigInt::from(r + 1) * BigInt::from(r).pow(ws.h.r() - 2),
        BigInt::from(r - 1).pow(ws.h.r() - 1) * BigInt::from(factorial(r + 1)),
    ) * big(&ws.prof.zagreb);
    for k in 1..=ws.h.r() + 1 {
        inner += big(&ws.prof.power_sums[k as usize]) / big(&factorial(k as u64));
    }
    scale * inner
}

fn eval_cor42(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    let id = BoundId::Cor42;
    if ws.h.r() % 2 != 0 {
        return Err(BoundError::NotApplicable {
            id,
            reason: "requires even r".into(),
        });
    }
    match is_odd_colorable(ws.h) {
        Ok(Some(_)) => {}
        Ok(None) => {
            return Err(BoundError::NotApplicable {
                id,
                reason: "no odd coloring exists".into(),
            })
        }
        Err(e) => {
            return Err(BoundError::NotApplicable {
                id,
                reason: format!("odd-coloring search unavailable: {e}"),
            })
        }
    }
    let rhs = degree_series_bound(ws);
    let (lhs, extra) = ws.slee_side(id)?;
    let mut ctx = base_context(ws.opts, "H empty");
    ctx.push(("coloring".into(), "odd coloring found".into()));
    Ok(report(id, lhs, SideValue::Exact(rhs), Rel::Ge, ws.opts.tol, ctx, extra))
}

fn eval_thm43(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    let id = BoundId::Thm43;
    if ws.h.r() != 2 {
        return Err(BoundError::NotApplicable {
            id,
            reason: "stated for graphs (r = 2)".into(),
        });
    }
    let tr3a = trace_auto(ws.h, TensorKind::Adjacency, 3, &ws.opts.trace)
        .map_err(|e| BoundError::InputsUnavailable { id, reason: e.to_string() })?
        .value;
    let eta = tr3a / BigRational::from(BigInt::from(6));
    let n = BigInt::from(ws.n());
    let m = BigInt::from(ws.m());
    let mut rhs = BigRational::from(n.clone());
    rhs += ws.dsum(3) / BigRational::from(BigInt::from(6));
    rhs += (BigRational::one() - ratio(m.clone(), n.clone())) * ws.dsum(2);
    rhs += BigRational::from(m.clone());
    rhs += ratio(BigInt::from(8) * m.pow(3), BigInt::from(3) * n.pow(2));
    rhs -= ratio(BigInt::from(4) * m.pow(2), n);
    rhs -= eta.clone();
    let lee = ws
        .graph_suite()
        .map_err(|reason| BoundError::InputsUnavailable { id, reason })?
        .lee;
    let mut ctx = base_context(ws.opts, "not stated");
    ctx.push(("triangles".into(), eta.to_string()));
    Ok(report(
        id,
        SideValue::Point(lee),
        SideValue::Exact(rhs),
        Rel::Ge,
        ws.opts.tol,
        ctx,
        vec![("lee_source".into(), "dense eigensolver".into())],
    ))
}

/// s - 1 - sqrt(first) + exp(sqrt(s*rho^2 - c)) with both sqrt arguments
/// clamped at zero against float dust.
fn exp_radius_form(s: f64, first_arg: f64, c: f64, rho: f64) -> f64 {
    let head = s - 1.0 - first_arg.max(0.0).sqrt();
    head + (s * rho * rho - c).max(0.0).sqrt().exp()
}

fn rho_gate(
    ws: &mut Workspace,
    id: BoundId,
) -> Result<((f64, f64, &'static str), SideValue, Vec<(String, String)>), BoundError> {
    let rho = match ws
        .rho_laplacian()
        .map_err(|reason| BoundError::InputsUnavailable { id, reason })?
    {
        Some(r) => r,
        None => {
            return Err(BoundError::NotApplicable {
                id,
                reason: "Laplacian spectral radius unavailable for r >= 3 without coinciding spectra"
                    .into(),
            })
        }
    };
    let (lee, mut extra) = ws.lee_side(id)?;
    extra.push(("rho_source".into(), rho.2.into()));
    extra.push(("rho_bracket".into(), format!("[{:.9}, {:.9}]", rho.0, rho.1)));
    Ok((rho, lee, extra))
}

fn eval_thm51(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    let id = BoundId::Thm51;
    let (rho, lee, extra) = rho_gate(ws, id)?;
    let tr2 = trace_auto(ws.h, TensorKind::Laplacian, 2, &ws.opts.trace)
        .map_err(|e| BoundError::InputsUnavailable { id, reason: e.to_string() })?
        .value;
    let c = BigRational::from(BigInt::from(ws.r() - 1).pow(ws.h.n() - 1)) * mean_square_bound(ws);
    let first = to_f64(&(tr2 - &c));
    let s = to_f64(&ws.s());
    let rhs_lo = exp_radius_form(s, first, to_f64(&c), rho.0);
    let rhs_hi = exp_radius_form(s, first, to_f64(&c), rho.1);
    let rhs = SideValue::Interval {
        lo: round_down(rhs_lo.min(rhs_hi)),
        hi: round_up(rhs_lo.max(rhs_hi)),
        certified: true,
    };
    let ctx = base_context(ws.opts, "H empty");
    Ok(report(id, lee, rhs, Rel::Le, ws.opts.tol, ctx, extra))
}

fn eval_thm52(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    let id = BoundId::Thm52;
    if ws.h.r() == 2 {
        // graph variant derived from the exact order-2 trace, with the
        // same radicand inside the exponential
        let tr2 = trace_auto(ws.h, TensorKind::Laplacian, 2, &ws.opts.trace)
            .map_err(|e| BoundError::InputsUnavailable { id, reason: e.to_string() })?
            .value;
        let arg = to_f64(&(tr2 - mean_square_bound(ws))).max(0.0);
        let x = arg.sqrt();
        let rhs = ws.n() as f64 - 1.0 - x + x.exp();
        let lee = ws
            .graph_suite()
            .map_err(|reason| BoundError::InputsUnavailable { id, reason })?
            .lee;
        let mut ctx = base_context(ws.opts, "H empty");
        ctx.push((
            "form".into(),
            "graph variant with the exact order-2 trace in both radicands".into(),
        ));
        return Ok(report(
            id,
            SideValue::Point(lee),
            SideValue::Point(rhs),
            Rel::Le,
            ws.opts.tol,
            ctx,
            vec![("lee_source".into(), "dense eigensolver".into())],
        ));
    }
    let (rho, lee, extra) = rho_gate(ws, id)?;
    let d1 = ws.prof.max_degree;
    let dn = ws.prof.min_degree;
    let theta_a = BigInt::from(ws.r()) * BigInt::from(ws.m()) * BigInt::from(d1 + dn)
        - BigInt::from(ws.n()) * BigInt::from(d1) * BigInt::from(dn);
    let theta_b = (BigInt::from(ws.r()) * BigInt::from(ws.m())).pow(2)
        - BigInt::from(ws.n()) * BigInt::from(ws.n() - 1) * BigInt::from(dn).pow(2);
    let theta = BigRational::from(theta_a.min(theta_b));
    let scale = BigRational::from(BigInt::from(ws.r() - 1).pow(ws.h.n() - 1));
    let first = to_f64(&(&scale * (&theta - mean_square_bound(ws))));
    let c = scale * mean_square_bound(ws);
    let s = to_f64(&ws.s());
    let rhs_lo = exp_radius_form(s, first, to_f64(&c), rho.0);
    let rhs_hi = exp_radius_form(s, first, to_f64(&c), rho.1);
    let rhs = SideValue::Interval {
        lo: round_down(rhs_lo.min(rhs_hi)),
        hi: round_up(rhs_lo.max(rhs_hi)),
        certified: true,
    };
    let mut ctx = base_context(ws.opts, "H empty");
    ctx.push(("theta".into(), theta.to_string()));
    Ok(report(id, lee, rhs, Rel::Le, ws.opts.tol, ctx, extra))
}

fn eval_thm54(ws: &mut Workspace) -> Result<BoundReport, BoundError> {
    let id = BoundId::Thm54;
    let s = ws.s();
    if ws.m() == 0 {
        // all eigenvalues zero: LEE = s, M2 = 0, LE = 0, both sides s
        let mut ctx = base_context(ws.opts, "H empty");
        ctx.push(("le".into(), "0".into()));
        ctx.push(("weak_form_rhs".into(), s.to_string()));
        ctx.push(("weak_form_holds".into(), "true".into()));
        return Ok(report(
            id,
            SideValue::Exact(s.clone()),
            SideValue::Exact(s),
            Rel::Le,
            ws.opts.tol,
            ctx,
            vec![("lee_source".into(), "empty: all eigenvalues zero".into())],
        ));
    }
    if ws.h.r() != 2 {
        return Err(BoundError::NotApplicable {
            id,
            reason: "Laplacian energy unavailable for r >= 3".into(),
        });
    }
    let m2 = shifted_power_sum_mk(ws.h, 2, ws.opts.series_order.max(2), &ws.opts.trace)
        .map_err(|e| BoundError::InputsUnavailable { id, reason: e.to_string() })?;
    let (lee, le) = {
        let suite = ws
            .graph_suite()
            .map_err(|reason| BoundError::InputsUnavailable { id, reason })?;
        (suite.lee, suite.le)
    };
    let s_f = to_f64(&s);
    let rhs = s_f + to_f64(&m2) / 2.0 - 1.0 - le - le * le / 2.0 + le.exp();
    let weak = s_f - 1.0 - le + le.exp();
    let slack = ws.opts.tol * weak.abs().max(1.0);
    let mut ctx = base_context(ws.opts, "H empty");
    ctx.push(("le".into(), format!("{le:.12}")));
    ctx.push(("m2".into(), m2.to_string()));
    ctx.push(("weak_form_rhs".into(), format!("{weak:.12}")));
    ctx.push(("weak_form_holds".into(), (lee <= weak + slack).to_string()));
    ctx.push(("m2_le_le_squared".into(), (to_f64(&m2) <= le * le + slack).to_string()));
    Ok(report(
        id,
        SideValue::Point(lee),
        SideValue::Point(rhs),
        Rel::Le,
        ws.opts.tol,
        ctx,
        vec![("lee_source".into(), "dense eigensolver".into())],
    ))
}

fn eval_with(ws: &mut Workspace, id: BoundId) -> Result<BoundReport, BoundError> {
    match id {
        BoundId::Lem21Lower => eval_lem21_lower(ws),
        BoundId::Lem21Upper => eval_lem21_upper(ws),
        BoundId::Lem22 => eval_lem22(ws),
        BoundId::Lem23Lower => eval_lem23_lower(ws),
        BoundId::Lem23Upper => eval_lem23_upper(ws),
        BoundId::Thm41 => eval_thm41(ws),
        BoundId::Cor42 => eval_cor42(ws),
        BoundId::Thm43 => eval_thm43(ws),
        BoundId::Thm51 => eval_thm51(ws),
        BoundId::Thm52 => eval_thm52(ws),
        BoundId::Thm54 => eval_thm54(ws),
    }
}

pub fn evaluate_bound(
    h: &Hypergraph,
    id: BoundId,
    opts: &BoundOptions,
) -> Result<BoundReport, BoundError> {
    let mut ws = Workspace::new(h, opts);
    eval_with(&mut ws, id)
}

/// Evaluates every bound, sharing cached spectra and series between them.
/// Inapplicable bounds come back as `NotApplicable` with the reason.
pub fn bound_suite(h: &Hypergraph, opts: &BoundOptions) -> Vec<BoundOutcome> {
    let mut ws = Workspace::new(h, opts);
    BoundId::ALL
        .into_iter()
        .map(|id| match eval_with(&mut ws, id) {
            Ok(rep) => BoundOutcome::Report(rep),
            Err(BoundError::NotApplicable { id, reason })
            | Err(BoundError::InputsUnavailable { id, reason }) => {
                BoundOutcome::NotApplicable { id, reason }
            }
        })
        .collect()
}

/// Floor check for connected sparse graphs: with r = 2, connected H and
/// n >= m >= 3, LEE is at least n + m - 1, and that floor in turn exceeds
/// sqrt(n^2 + 4m).  Returns None when the preconditions fail.
#[derive(Debug, Clone)]
pub struct LeeFloorReport {
    pub lee: f64,
    pub floor: u64,
    pub satisfied: Satisfaction,
    pub margin: f64,
    pub floor_exceeds_root_form: bool,
}

pub fn lee_floor_connected(
    h: &Hypergraph,
    tol: f64,
) -> Result<Option<LeeFloorReport>, SpectraError> {
    let (n, m) = (h.n() as u64, h.m());
    if h.r() != 2 || !h.is_connected() || m < 3 || n < m {
        return Ok(None);
    }
    let lee = estrada_suite_graph(h)?.lee;
    let floor = n + m - 1;
    let slack = tol * (floor as f64).max(1.0);
    let satisfied = if lee >= floor as f64 - slack {
        Satisfaction::Proven
    } else {
        Satisfaction::Violated
    };
    let floor_exceeds_root_form =
        BigUint::from(floor).pow(2) > BigUint::from(n * n + 4 * m);
    Ok(Some(LeeFloorReport {
        lee,
        floor,
        satisfied,
        margin: lee - floor as f64,
        floor_exceeds_root_form,
    }))
}
