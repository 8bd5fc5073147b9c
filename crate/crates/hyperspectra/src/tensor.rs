//! Structured order-r tensors attached to an r-uniform hypergraph.
//!
//! The adjacency tensor A has value 1/(r-1)! at every tuple (i, alpha) where
//! {i} together with the entries of alpha forms an edge; the degree tensor D
//! carries d_i on the diagonal; L = D - A and Q = D + A.  Tensors are never
//! materialized densely: the support has m * r * (r-1)! off-diagonal entries
//! plus at most n diagonal ones.

use crate::hypergraph::Hypergraph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TensorKind {
    Adjacency,
    Degree,
    Laplacian,
    SignlessLaplacian,
}

impl TensorKind {
    pub fn letter(self) -> &'static str {
        match self {
            TensorKind::Adjacency => "A",
            TensorKind::Degree => "D",
            TensorKind::Laplacian => "L",
            TensorKind::SignlessLaplacian => "Q",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("vector has length {found}, tensor dimension is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// One nonzero tensor entry: value at position (row, tail[0], ..., tail[r-2]).
/// Diagonal entries have tail = [row; r-1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EntryPattern {
    pub row: u32,
    pub tail: Vec<u32>,
    pub value: BigRational,
    pub diagonal: bool,
}

/// Implicit representation of A, D, L or Q for a host hypergraph.
#[derive(Debug, Clone)]
pub struct StructuredTensor<'a> {
    host: &'a Hypergraph,
    kind: TensorKind,
    degrees: Vec<u64>,
    /// Coefficient of every off-diagonal entry: +-1/(r-1)!, or 0 for D.
    off_diag: BigRational,
    /// 1 for D, L, Q; 0 for A.
    diag_scale: i8,
}

fn factorial_big(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn build_tensor<'a>(h: &'a Hypergraph, kind: TensorKind) -> StructuredTensor<'a> {
    let r = h.r() as u64;
    let inv_fact = BigRational::new(BigInt::one(), factorial_big(r - 1));
    let (off_diag, diag_scale) = match kind {
        TensorKind::Adjacency => (inv_fact, 0),
        TensorKind::Degree => (BigRational::zero(), 1),
        TensorKind::Laplacian => (-inv_fact, 1),
        TensorKind::SignlessLaplacian => (inv_fact, 1),
    };
    StructuredTensor {
        host: h,
        kind,
        degrees: h.degrees(),
        off_diag,
        diag_scale,
    }
}

impl<'a> StructuredTensor<'a> {
    pub fn host(&self) -> &'a Hypergraph {
        self.host
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.host.n()
    }

    pub fn r(&self) -> u32 {
        self.host.r()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn off_diag_value(&self) -> &BigRational {
        &self.off_diag
    }

    /// Exact off-diagonal support size: m * r * (r-1)!.
    pub fn off_diag_support_count(&self) -> u64 {
        if self.kind == TensorKind::Degree {
            return 0;
        }
        let r = self.r() as u64;
        let fact: u64 = (1..r).product();
        self.host.m() * r * fact
    }

    /// All nonzero entries, sorted by (row, tail); rows therefore appear
    /// grouped and in increasing order.
    pub fn support_entries(&self) -> Vec<EntryPattern> {
        let r = self.r() as usize;
        let mut out: Vec<EntryPattern> = Vec::new();
        if self.diag_scale != 0 {
            for (v, &d) in self.degrees.iter().enumerate() {
                if d > 0 {
                    out.push(EntryPattern {
                        row: v as u32,
                        tail: vec![v as u32; r - 1],
                        value: BigRational::from(BigInt::from(d)),
                        diagonal: true,
                    });
                }
            }
        }
        if !self.off_diag.is_zero() {
            for e in self.host.edges() {
                for &row in e {
                    let rest: Vec<u32> = e.iter().copied().filter(|&v| v != row).collect();
                    for_each_permutation(&rest, |tail| {
                        out.push(EntryPattern {
                            row,
                            tail: tail.to_vec(),
                            value: self.off_diag.clone(),
                            diagonal: false,
                        });
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Exact contraction y_i = sum over alpha of t_{i,alpha} * prod x_alpha.
    pub fn apply(&self, x: &[BigRational]) -> Result<Vec<BigRational>, TensorError> {
        let n = self.n() as usize;
        if x.len() != n {
            return Err(TensorError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let rm1 = self.r() as usize - 1;
        let mut y = vec![BigRational::zero(); n];
        if self.diag_scale != 0 {
            for i in 0..n {
                if self.degrees[i] > 0 {
                    y[i] = BigRational::from(BigInt::from(self.degrees[i])) * pow_rat(&x[i], rm1);
                }
            }
        }
        if !self.off_diag.is_zero() {
            // (r-1)! orderings of each tail collapse against the 1/(r-1)! value
            let sign = if self.kind == TensorKind::Laplacian {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            for e in self.host.edges() {
                for &row in e {
                    let mut prod = sign.clone();
                    for &v in e {
                        if v != row {
                            prod *= &x[v as usize];
                        }
                    }
                    y[row as usize] += prod;
                }
            }
        }
        Ok(y)
    }

    /// Floating-point contraction, used by the power iteration.
    pub fn apply_f64(&self, x: &[f64]) -> Result<Vec<f64>, TensorError> {
        let n = self.n() as usize;
        if x.len() != n {
            return Err(TensorError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let rm1 = self.r() as i32 - 1;
        let mut y = vec![0.0f64; n];
        if self.diag_scale != 0 {
            for i in 0..n {
                y[i] = self.degrees[i] as f64 * x[i].powi(rm1);
            }
        }
        if !self.off_diag.is_zero() {
            let sign = if self.kind == TensorKind::Laplacian { -1.0 } else { 1.0 };
            for e in self.host.edges() {
                for &row in e {
                    let mut prod = sign;
                    for &v in e {
                        if v != row {
                            prod *= x[v as usize];
                        }
                    }
                    y[row as usize] += prod;
                }
            }
        }
        Ok(y)
    }
}

fn pow_rat(x: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Calls `f` on every permutation of `items` in lexicographic order.
pub(crate) fn for_each_permutation<F: FnMut(&[u32])>(items: &[u32], mut f: F) {
    let mut a = items.to_vec();
    a.sort_unstable();
    loop {
        f(&a);
        // next lexicographic permutation
        let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
            return;
        };
        let j = a.iter().rposition(|&x| x > a[i]).expect("successor exists");
        a.swap(i, j);
        a[i + 1..].reverse();
    }
}
