//! Order-j tensor traces.
//!
//! `trace_general` enumerates multisets of support entries whose induced arc
//! multiset admits an Eulerian closed walk, weighting each by
//!
//!   ord(F) * b(F)/c(F) * pi_F(T) * walks(E(F))
//!
//! and scaling the total by (r-1)^(n-1).  ord(F) counts the row-sorted entry
//! sequences that collapse to the multiset F.  `trace_closed_form` evaluates
//! the degree-and-simplex formulas available for A, L and Q up to order r+1,
//! giving an independent route that the test suite compares against the
//! enumeration.  Everything here is exact rational arithmetic.

use crate::hypergraph::{count_simplices, degree_stats, generate, GenKind, Hypergraph};
use crate::tensor::{build_tensor, StructuredTensor, TensorKind};
use crate::walks::{count_eulerian_closed_walks, factorial, ArcMultiset};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("enumeration budget {budget} exhausted after {visited} nodes (upper bound {bound} multisets)")]
    BudgetExceeded {
        budget: u64,
        visited: u64,
        bound: String,
    },
    #[error("no closed form for kind {kind} at order {j} when r = {r}")]
    NoClosedForm { kind: &'static str, j: u32, r: u32 },
    #[error("order {j} out of supported range {max}")]
    UnsupportedOrder { j: u32, max: u32 },
    #[error("constant extraction supports r in 2..=4, got {r}")]
    ExtractionCapExceeded { r: u32 },
    #[error("matrix power route requires r = 2, got {r}")]
    RequiresGraph { r: u32 },
}

/// Enumeration limits.  `budget` caps visited search nodes; `jobs` > 1
/// splits the search over first-item partitions (results are identical
/// for any worker count since all arithmetic is exact).
#[derive(Debug, Clone)]
pub struct TraceConfig {
    pub budget: u64,
    pub jobs: usize,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            budget: 50_000_000,
            jobs: 1,
        }
    }
}

/// An exact trace, kept in factored form value = coefficient * (r-1)^(n-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceValue {
    pub value: BigRational,
    pub coefficient: BigRational,
    /// r - 1
    pub base: u64,
    /// n - 1
    pub exponent: u32,
}

impl TraceValue {
    pub fn from_value(value: BigRational, r: u32, n: u32) -> Self {
        let scale = BigInt::from(r as u64 - 1).pow(n - 1);
        TraceValue {
            coefficient: &value / BigRational::from(scale),
            value,
            base: r as u64 - 1,
            exponent: n - 1,
        }
    }

    pub fn from_coefficient(coefficient: BigRational, r: u32, n: u32) -> Self {
        let scale = BigInt::from(r as u64 - 1).pow(n - 1);
        TraceValue {
            value: &coefficient * BigRational::from(scale),
            coefficient,
            base: r as u64 - 1,
            exponent: n - 1,
        }
    }
}

/// Number of tensor eigenvalues: s = n (r-1)^(n-1).
pub fn eigenvalue_count(h: &Hypergraph) -> BigUint {
    BigUint::from(h.n() as u64) * BigUint::from(h.r() as u64 - 1).pow(h.n() - 1)
}

/// Average degree r m / n, the Laplacian eigenvalue shift.
pub fn average_degree(h: &Hypergraph) -> BigRational {
    BigRational::new(
        BigInt::from(h.r() as u64 * h.m()),
        BigInt::from(h.n() as u64),
    )
}

/// Cooper-Dutle simplex constants for r = 2..=8.
const CR_TABLE: [(u32, u64); 7] = [
    (2, 2),
    (3, 21),
    (4, 588),
    (5, 28230),
    (6, 2_092_206),
    (7, 220_611_384),
    (8, 31_373_370_936),
];

pub fn cr_constant(r: u32) -> Option<BigRational> {
    CR_TABLE
        .iter()
        .find(|&&(rr, _)| rr == r)
        .map(|&(_, c)| BigRational::from(BigInt::from(c)))
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from(v.into())
}

pub fn rat_pow(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Adjacency trace at order r+1: Cr * (r+1) * (r-1)^(n-r) * simplices.
fn adjacency_simplex_trace(
    h: &Hypergraph,
    cr: Option<&BigRational>,
) -> Result<BigRational, TraceError> {
    let (n, r) = (h.n(), h.r());
    let simplices = count_simplices(h);
    if simplices == 0 {
        return Ok(BigRational::zero());
    }
    let cr_val = match cr {
        Some(c) => c.clone(),
        None => cr_constant(r).ok_or(TraceError::NoClosedForm {
            kind: "A",
            j: r + 1,
            r,
        })?,
    };
    // simplices > 0 forces n >= r + 1, so the exponent n - r is nonnegative
    let scale = rat(BigInt::from(r as u64 + 1) * BigInt::from(r as u64 - 1).pow(n - r));
    Ok(cr_val * scale * rat(BigInt::from(simplices)))
}

/// Closed-form traces.
///
/// Covered: L and Q for every order up to r+1; A for orders below r
/// (identically zero) and at order r+1 (simplex count against the stored
/// constants, or `cr` when supplied).  Anything else is `NoClosedForm`.
pub fn trace_closed_form(
    h: &Hypergraph,
    kind: TensorKind,
    j: u32,
    cr: Option<&BigRational>,
) -> Result<TraceValue, TraceError> {
    let (n, r) = (h.n(), h.r());
    if j == 0 {
        return Err(TraceError::UnsupportedOrder { j: 0, max: r + 1 });
    }
    let no_form = Err(TraceError::NoClosedForm {
        kind: kind.letter(),
        j,
        r,
    });
    match kind {
        TensorKind::Adjacency => {
            if j <= r - 1 {
                Ok(TraceValue::from_value(BigRational::zero(), r, n))
            } else if j == r + 1 {
                let v = adjacency_simplex_trace(h, cr)?;
                Ok(TraceValue::from_value(v, r, n))
            } else {
                no_form
            }
        }
        TensorKind::Degree => no_form,
        TensorKind::Laplacian | TensorKind::SignlessLaplacian => {
            let sign = if kind == TensorKind::Laplacian { -1i64 } else { 1 };
            let prof = degree_stats(h, j);
            let dsum = |k: u32| rat(BigInt::from(prof.power_sums[k as usize].clone()));
            let coeff = if j <= r - 1 {
                dsum(j)
            } else if j == r {
                // coefficient of (r-1)^(n-1): sign^r * r^(r-1) * (r-1)^(1-r) * m + sum d^r
                let edge_term = BigRational::new(
                    BigInt::from(sign).pow(r) * BigInt::from(r as u64).pow(r - 1) * BigInt::from(h.m()),
                    BigInt::from(r as u64 - 1).pow(r - 1),
                );
                edge_term + dsum(r)
            } else if j == r + 1 {
                let a_part = adjacency_simplex_trace(h, cr)?;
                let scale = BigRational::from(BigInt::from(r as u64 - 1).pow(n - 1));
                // (-1)^(r+1) Tr_{r+1}(A) for L, +Tr_{r+1}(A) for Q
                let a_sign = if kind == TensorKind::Laplacian {
                    rat(BigInt::from(-1i64).pow(r + 1))
                } else {
                    BigRational::one()
                };
                // sign^r * (r+1) * r^(r-2) * (r-1)^(1-r) * sum d^2
                let deg2_term = BigRational::new(
                    BigInt::from(sign).pow(r)
                        * BigInt::from(r as u64 + 1)
                        * BigInt::from(r as u64).pow(r - 2)
                        * BigInt::from(prof.power_sums[2].clone()),
                    BigInt::from(r as u64 - 1).pow(r - 1),
                );
                a_sign * a_part / scale + dsum(r + 1) + deg2_term
            } else {
                return no_form;
            };
            Ok(TraceValue::from_coefficient(coeff, r, n))
        }
    }
}

struct Item {
    row: u32,
    targets: Vec<u32>,
    value: BigRational,
    row_start: bool,
}

fn support_items(t: &StructuredTensor) -> Vec<Item> {
    let entries = t.support_entries();
    let mut items: Vec<Item> = entries
        .into_iter()
        .map(|e| Item {
            row: e.row,
            targets: e.tail,
            value: e.value,
            row_start: false,
        })
        .collect();
    for i in 0..items.len() {
        items[i].row_start = i == 0 || items[i - 1].row != items[i].row;
    }
    items
}

/// Result of a general trace run, with enumeration statistics and the
/// Eulerian arc multisets collected for oracle replay (when requested).
pub struct TraceRun {
    pub trace: TraceValue,
    pub nodes_visited: u64,
    pub eulerian_leaves: u64,
    pub collected: Vec<ArcMultiset>,
}

struct Partition<'a> {
    items: &'a [Item],
    r1: u64, // r - 1, arcs per item
    j: u64,
    budget: u64,
    global_nodes: &'a AtomicU64,
    collect_cap: Option<u64>,
    // mutable search state
    out: Vec<i64>,
    inn: Vec<i64>,
    surplus: Vec<i64>,  // max(out - in, 0) per vertex
    def_ceil: Vec<i64>, // ceil(max(in - out, 0) / (r-1)) per vertex
    need_in: i64,
    ceil_out: i64,
    counts: Vec<u64>,
    row_counts: Vec<u64>,
    stack: Vec<usize>,
    local_nodes: u64,
    unflushed: u64,
    eulerian_leaves: u64,
    acc: BigRational,
    cache: HashMap<Vec<(u32, u32, u64)>, BigUint>,
    collected: BTreeMap<Vec<(u32, u32, u64)>, ArcMultiset>,
}

impl<'a> Partition<'a> {
    fn new(
        items: &'a [Item],
        n: usize,
        r: u32,
        j: u32,
        budget: u64,
        global_nodes: &'a AtomicU64,
        collect_cap: Option<u64>,
    ) -> Self {
        Partition {
            items,
            r1: r as u64 - 1,
            j: j as u64,
            budget,
            global_nodes,
            collect_cap,
            out: vec![0; n],
            inn: vec![0; n],
            surplus: vec![0; n],
            def_ceil: vec![0; n],
            need_in: 0,
            ceil_out: 0,
            counts: vec![0; items.len()],
            row_counts: vec![0; n],
            stack: Vec::new(),
            local_nodes: 0,
            unflushed: 0,
            eulerian_leaves: 0,
            acc: BigRational::zero(),
            cache: HashMap::new(),
            collected: BTreeMap::new(),
        }
    }

    fn bump_node(&mut self) -> Result<(), ()> {
        self.local_nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= 4096 {
            let total = self.global_nodes.fetch_add(self.unflushed, Ordering::Relaxed)
                + self.unflushed;
            self.unflushed = 0;
            if total > self.budget {
                return Err(());
            }
        }
        Ok(())
    }

    fn touch(&mut self, v: usize) {
        let diff = self.out[v] - self.inn[v];
        let new_surplus = diff.max(0);
        let deficit = (-diff).max(0);
        let new_ceil = (deficit + self.r1 as i64 - 1) / self.r1 as i64;
        self.need_in += new_surplus - self.surplus[v];
        self.ceil_out += new_ceil - self.def_ceil[v];
        self.surplus[v] = new_surplus;
        self.def_ceil[v] = new_ceil;
    }

    fn apply(&mut self, idx: usize) {
        let item = &self.items[idx];
        self.counts[idx] += 1;
        if self.counts[idx] == 1 {
            self.stack.push(idx);
        }
        self.row_counts[item.row as usize] += 1;
        self.out[item.row as usize] += self.r1 as i64;
        self.touch(item.row as usize);
        for &t in &item.targets {
            self.inn[t as usize] += 1;
            self.touch(t as usize);
        }
    }

    fn unapply(&mut self, idx: usize) {
        let item = &self.items[idx];
        self.counts[idx] -= 1;
        if self.counts[idx] == 0 {
            let popped = self.stack.pop();
            debug_assert_eq!(popped, Some(idx));
        }
        self.row_counts[item.row as usize] -= 1;
        self.out[item.row as usize] -= self.r1 as i64;
        self.touch(item.row as usize);
        for &t in &item.targets {
            self.inn[t as usize] -= 1;
            self.touch(t as usize);
        }
    }

    /// Feasibility: remaining picks supply (r-1) in-arcs each and (r-1)
    /// out-arcs at a single row each.
    fn feasible(&self, remaining: u64) -> bool {
        self.need_in as u64 <= self.r1 * remaining && self.ceil_out as u64 <= remaining
    }

    /// A row boundary fixes the out-degrees of all earlier vertices: any of
    /// them still short of out-arcs can never balance.
    fn boundary_ok(&self, row: u32) -> bool {
        (0..row as usize).all(|v| self.inn[v] <= self.out[v])
    }

    fn leaf(&mut self) {
        // feasibility at remaining = 0 guarantees balance
        debug_assert!(self.need_in == 0 && self.ceil_out == 0);
        let mut d = ArcMultiset::new();
        for &i in &self.stack {
            let item = &self.items[i];
            for &t in &item.targets {
                d.add_arc(item.row, t, self.counts[i]);
            }
        }
        if !d.is_connected_loopless() {
            return;
        }
        let key = d.key();
        let walks = match self.cache.get(&key) {
            Some(w) => w.clone(),
            None => {
                let w = count_eulerian_closed_walks(&d);
                self.cache.insert(key.clone(), w.clone());
                w
            }
        };
        if walks.is_zero() {
            return;
        }
        self.eulerian_leaves += 1;
        if let Some(cap) = self.collect_cap {
            if d.total_arcs() <= cap {
                self.collected.entry(key).or_insert_with(|| d.clone());
            }
        }
        let rows: BTreeSet<u32> = self.stack.iter().map(|&i| self.items[i].row).collect();
        let mut num = walks;
        for &row in &rows {
            num *= factorial(self.row_counts[row as usize]);
        }
        for (_, _, mult) in d.arcs() {
            num *= factorial(mult); // b(F)
        }
        let mut den = BigUint::one();
        for &i in &self.stack {
            den *= factorial(self.counts[i]);
        }
        for (_, deg) in d.out_degrees() {
            den *= factorial(deg); // c(F)
        }
        let mut pi = BigRational::one();
        for &i in &self.stack {
            pi *= rat_pow(&self.items[i].value, self.counts[i] as u32);
        }
        let weight = BigRational::new(BigInt::from(num), BigInt::from(den));
        self.acc += pi * weight;
    }

    fn dfs(&mut self, idx: usize, remaining: u64) -> Result<(), ()> {
        self.bump_node()?;
        if remaining == 0 {
            self.leaf();
            return Ok(());
        }
        if idx == self.items.len() {
            return Ok(());
        }
        if self.items[idx].row_start && !self.boundary_ok(self.items[idx].row) {
            return Ok(());
        }
        // zero copies of this item
        self.dfs(idx + 1, remaining)?;
        // one or more copies; the feasibility counters degrade monotonically
        // with further copies, so the first failure ends the loop
        let mut applied = 0;
        for q in 1..=remaining {
            self.apply(idx);
            applied += 1;
            if !self.feasible(remaining - q) {
                break;
            }
            self.dfs(idx + 1, remaining - q)?;
        }
        for _ in 0..applied {
            self.unapply(idx);
        }
        Ok(())
    }

    /// Explores all multisets whose first chosen item is `start`.
    fn run(&mut self, start: usize) -> Result<(), ()> {
        self.bump_node()?;
        if self.items[start].row_start && !self.boundary_ok(self.items[start].row) {
            return Ok(());
        }
        let mut applied = 0;
        for q in 1..=self.j {
            self.apply(start);
            applied += 1;
            if !self.feasible(self.j - q) {
                break;
            }
            if self.j - q == 0 {
                self.local_nodes += 1;
                self.leaf();
            } else {
                self.dfs(start + 1, self.j - q)?;
            }
        }
        for _ in 0..applied {
            self.unapply(start);
        }
        Ok(())
    }
}

fn multiset_bound(support: usize, j: u32) -> BigUint {
    // C(support + j - 1, j)
    if support == 0 {
        return BigUint::zero();
    }
    num_integer::binomial(
        BigUint::from(support as u64 + j as u64 - 1),
        BigUint::from(j as u64),
    )
}

/// General trace by entry-multiset enumeration; also returns search
/// statistics and, when `collect_cap` is set, every distinct Eulerian arc
/// multiset with at most that many arcs.
pub fn trace_general_run(
    t: &StructuredTensor,
    j: u32,
    cfg: &TraceConfig,
    collect_cap: Option<u64>,
) -> Result<TraceRun, TraceError> {
    if j == 0 {
        return Err(TraceError::UnsupportedOrder { j: 0, max: u32::MAX });
    }
    let items = support_items(t);
    let n = t.n() as usize;
    let r = t.r();
    let global_nodes = AtomicU64::new(0);
    let budget_err = |visited: u64| TraceError::BudgetExceeded {
        budget: cfg.budget,
        visited,
        bound: multiset_bound(items.len(), j).to_string(),
    };

    let run_one = |start: usize| -> Result<Partition, ()> {
        let mut p = Partition::new(&items, n, r, j, cfg.budget, &global_nodes, collect_cap);
        p.run(start)?;
        Ok(p)
    };

    let parts: Result<Vec<Partition>, ()> = if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| (0..items.len()).into_par_iter().map(run_one).collect())
    } else {
        (0..items.len()).map(run_one).collect()
    };
    let parts = match parts {
        Ok(p) => p,
        Err(()) => return Err(budget_err(global_nodes.load(Ordering::Relaxed))),
    };

    let mut acc = BigRational::zero();
    let mut nodes = 0u64;
    let mut eulerian = 0u64;
    let mut collected: BTreeMap<Vec<(u32, u32, u64)>, ArcMultiset> = BTreeMap::new();
    for p in parts {
        acc += p.acc;
        nodes += p.local_nodes;
        eulerian += p.eulerian_leaves;
        collected.extend(p.collected);
    }
    if nodes > cfg.budget {
        return Err(budget_err(nodes));
    }
    Ok(TraceRun {
        trace: TraceValue::from_coefficient(acc, r, t.n()),
        nodes_visited: nodes,
        eulerian_leaves: eulerian,
        collected: collected.into_values().collect(),
    })
}

pub fn trace_general(
    t: &StructuredTensor,
    j: u32,
    cfg: &TraceConfig,
) -> Result<TraceValue, TraceError> {
    trace_general_run(t, j, cfg, None).map(|run| run.trace)
}

const SEQUENCE_ORACLE_MAX_ORDER: u32 = 4;

/// Secondary oracle: sums over row-sorted entry *sequences* directly, with
/// no multiset collapsing and no ord factor.  Exponential in j; refuses
/// orders above 4.
pub fn trace_by_sequences(t: &StructuredTensor, j: u32) -> Result<TraceValue, TraceError> {
    if j == 0 || j > SEQUENCE_ORACLE_MAX_ORDER {
        return Err(TraceError::UnsupportedOrder {
            j,
            max: SEQUENCE_ORACLE_MAX_ORDER,
        });
    }
    let items = support_items(t);
    let mut chosen: Vec<usize> = Vec::with_capacity(j as usize);
    let mut acc = BigRational::zero();
    fn rec(
        items: &[Item],
        chosen: &mut Vec<usize>,
        left: u32,
        min_row: u32,
        acc: &mut BigRational,
    ) {
        if left == 0 {
            let mut d = ArcMultiset::new();
            let mut pi = BigRational::one();
            for &i in chosen.iter() {
                for &t in &items[i].targets {
                    d.add_arc(items[i].row, t, 1);
                }
                pi *= &items[i].value;
            }
            let walks = count_eulerian_closed_walks(&d);
            if walks.is_zero() {
                return;
            }
            let mut b = BigUint::one();
            for (_, _, mult) in d.arcs() {
                b *= factorial(mult);
            }
            let mut c = BigUint::one();
            for (_, deg) in d.out_degrees() {
                c *= factorial(deg);
            }
            *acc += pi
                * BigRational::new(BigInt::from(b * walks), BigInt::from(c));
            return;
        }
        for (i, item) in items.iter().enumerate() {
            if item.row >= min_row {
                chosen.push(i);
                rec(items, chosen, left - 1, item.row, acc);
                chosen.pop();
            }
        }
    }
    rec(&items, &mut chosen, j, 0, &mut acc);
    Ok(TraceValue::from_coefficient(acc, t.r(), t.n()))
}

/// Exact trace of order j for a graph (r = 2) by integer matrix powers.
/// The enumeration engine agrees but is exponentially slower at high j,
/// so series evaluation uses this route when r = 2.
pub fn trace_graph_matrix(
    h: &Hypergraph,
    kind: TensorKind,
    j: u32,
) -> Result<TraceValue, TraceError> {
    if h.r() != 2 {
        return Err(TraceError::RequiresGraph { r: h.r() });
    }
    let n = h.n() as usize;
    let degrees = degree_stats(h, 1).degrees;
    let mut mat = vec![vec![BigInt::zero(); n]; n];
    for e in h.edges() {
        let (a, b) = (e[0] as usize, e[1] as usize);
        let off = match kind {
            TensorKind::Adjacency | TensorKind::SignlessLaplacian => BigInt::one(),
            TensorKind::Laplacian => -BigInt::one(),
            TensorKind::Degree => BigInt::zero(),
        };
        mat[a][b] = off.clone();
        mat[b][a] = off;
    }
    if kind != TensorKind::Adjacency {
        for (i, &d) in degrees.iter().enumerate() {
            mat[i][i] = BigInt::from(d);
        }
    }
    // power = mat^j, trace accumulated at the end
    let mut power = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in power.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    for _ in 0..j {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for (k, mik) in power[i].iter().enumerate() {
                if mik.is_zero() {
                    continue;
                }
                for (l, cell) in next[i].iter_mut().enumerate() {
                    *cell += mik * &mat[k][l];
                }
            }
        }
        power = next;
    }
    let trace = (0..n).fold(BigInt::zero(), |acc, i| acc + &power[i][i]);
    Ok(TraceValue::from_value(rat(trace), 2, h.n()))
}

/// Traces of orders 0..=k_eff for one tensor kind, sharing a single node
/// budget.  Closed forms and the r = 2 matrix route cost nothing; orders
/// that need the enumeration engine consume budget, and once it runs out
/// past order r+1 the series is truncated rather than failed.
pub struct TraceSeries {
    pub values: Vec<BigRational>,
    pub k_eff: u32,
    pub requested: u32,
    pub nodes_visited: u64,
    pub truncated: bool,
}

pub fn trace_series(
    h: &Hypergraph,
    kind: TensorKind,
    k_max: u32,
    cfg: &TraceConfig,
) -> Result<TraceSeries, TraceError> {
    let mut values = vec![BigRational::from(BigInt::from(eigenvalue_count(h)))];
    let mut nodes = 0u64;
    let mut truncated = false;
    let mut k_eff = k_max;
    for j in 1..=k_max {
        if h.r() == 2 {
            values.push(trace_graph_matrix(h, kind, j)?.value);
            continue;
        }
        match trace_closed_form(h, kind, j, None) {
            Ok(v) => values.push(v.value),
            Err(TraceError::NoClosedForm { .. }) => {
                let t = build_tensor(h, kind);
                let run_cfg = TraceConfig {
                    budget: cfg.budget.saturating_sub(nodes),
                    jobs: cfg.jobs,
                };
                match trace_general_run(&t, j, &run_cfg, None) {
                    Ok(run) => {
                        nodes += run.nodes_visited;
                        values.push(run.trace.value);
                    }
                    Err(TraceError::BudgetExceeded { visited, .. }) if j > h.r() + 1 => {
                        nodes += visited;
                        truncated = true;
                        k_eff = j - 1;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(TraceSeries {
        values,
        k_eff,
        requested: k_max,
        nodes_visited: nodes,
        truncated,
    })
}

/// Best available trace: closed form when one applies, otherwise the
/// general enumeration.  Order 0 gives the eigenvalue count s.
pub fn trace_auto(
    h: &Hypergraph,
    kind: TensorKind,
    j: u32,
    cfg: &TraceConfig,
) -> Result<TraceValue, TraceError> {
    if j == 0 {
        let s = BigRational::from(BigInt::from(eigenvalue_count(h)));
        return Ok(TraceValue::from_value(s, h.r(), h.n()));
    }
    match trace_closed_form(h, kind, j, None) {
        Ok(v) => Ok(v),
        Err(TraceError::NoClosedForm { .. }) => {
            let t = build_tensor(h, kind);
            trace_general(&t, j, cfg)
        }
        Err(e) => Err(e),
    }
}

/// Extracts the order-(r+1) adjacency constant from the (r+1)-vertex
/// complete r-uniform hypergraph: trace divided by (r+1)(r-1)^(n-r).
pub fn extract_cr(r: u32, cfg: &TraceConfig) -> Result<BigRational, TraceError> {
    if !(2..=4).contains(&r) {
        return Err(TraceError::ExtractionCapExceeded { r });
    }
    let h = generate(GenKind::Complete, r + 1, r, 0, 0).expect("simplex parameters are valid");
    let t = build_tensor(&h, TensorKind::Adjacency);
    let tr = trace_general(&t, r + 1, cfg)?;
    let denom = rat(BigInt::from(r as u64 + 1) * BigInt::from(r as u64 - 1));
    Ok(tr.value / denom)
}

/// Centered Laplacian power sum M_k = sum over eigenvalues of
/// (mu - rm/n)^k, expanded through traces:
/// M_k = sum_j C(k,j) (-rm/n)^(k-j) Tr_j(L), with Tr_0 = s.
pub fn shifted_power_sum_mk(
    h: &Hypergraph,
    k: u32,
    max_trace_order: u32,
    cfg: &TraceConfig,
) -> Result<BigRational, TraceError> {
    if k > max_trace_order {
        return Err(TraceError::UnsupportedOrder {
            j: k,
            max: max_trace_order,
        });
    }
    let shift = -average_degree(h);
    let mut total = BigRational::zero();
    for j in 0..=k {
        let tr = trace_auto(h, TensorKind::Laplacian, j, cfg)?;
        let binom = num_integer::binomial(BigUint::from(k as u64), BigUint::from(j as u64));
        total += rat(BigInt::from(binom)) * rat_pow(&shift, k - j) * tr.value;
    }
    Ok(total)
}
