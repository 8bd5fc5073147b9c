//! Eulerian closed-walk counting on arc multisets.
//!
//! An entry multiset induces a directed multigraph: item (i, v1..v_{r-1})
//! contributes the arcs (i,v1)..(i,v_{r-1}); a diagonal item contributes r-1
//! loops at its row.  Walks traverse every arc exactly once, parallel arcs
//! and loops being indistinguishable, and carry a distinguished starting
//! point.  The closed form is
//!
//!   walks(D) = totalArcs * t_root(D) * prod_v (out(v)-1)! / prod_arc mult!
//!
//! with t_root(D) the number of arborescences oriented toward any fixed root
//! (root choice is immaterial on balanced digraphs); loops are excluded from
//! the arborescence count but do count toward out-degrees.  A direct DFS
//! enumeration is kept as an independent oracle for small multisets.

use crate::tensor::EntryPattern;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WalkError {
    #[error("oracle refuses {arcs} arcs, cap is {cap}")]
    TooLargeForOracle { arcs: u64, cap: u64 },
    #[error("root {root} is not a support vertex")]
    RootNotInSupport { root: u32 },
}

/// Directed multigraph given by arc multiplicities; loops allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArcMultiset {
    arcs: BTreeMap<(u32, u32), u64>,
}

impl ArcMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arcs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut d = Self::new();
        for (u, v) in pairs {
            d.add_arc(u, v, 1);
        }
        d
    }

    pub fn add_arc(&mut self, from: u32, to: u32, mult: u64) {
        if mult > 0 {
            *self.arcs.entry((from, to)).or_insert(0) += mult;
        }
    }

    /// Distinct arc classes with multiplicities, sorted.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.arcs.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn total_arcs(&self) -> u64 {
        self.arcs.values().sum()
    }

    pub fn support_vertices(&self) -> BTreeSet<u32> {
        let mut s = BTreeSet::new();
        for &(u, v) in self.arcs.keys() {
            s.insert(u);
            s.insert(v);
        }
        s
    }

    /// Out-degrees including loops.
    pub fn out_degrees(&self) -> BTreeMap<u32, u64> {
        let mut d = BTreeMap::new();
        for (&(u, _), &m) in &self.arcs {
            *d.entry(u).or_insert(0) += m;
        }
        d
    }

    pub fn in_degrees(&self) -> BTreeMap<u32, u64> {
        let mut d = BTreeMap::new();
        for (&(_, v), &m) in &self.arcs {
            *d.entry(v).or_insert(0) += m;
        }
        d
    }

    pub fn is_balanced(&self) -> bool {
        let outs = self.out_degrees();
        let ins = self.in_degrees();
        for v in self.support_vertices() {
            if outs.get(&v).copied().unwrap_or(0) != ins.get(&v).copied().unwrap_or(0) {
                return false;
            }
        }
        true
    }

    /// Weak connectivity of the loopless arcs over all support vertices;
    /// a vertex carrying only loops counts as support and must be reached.
    pub fn is_connected_loopless(&self) -> bool {
        let support: Vec<u32> = self.support_vertices().into_iter().collect();
        if support.len() <= 1 {
            return true;
        }
        let index: BTreeMap<u32, usize> =
            support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); support.len()];
        for &(u, v) in self.arcs.keys() {
            if u != v {
                let (iu, iv) = (index[&u], index[&v]);
                adj[iu].push(iv);
                adj[iv].push(iu);
            }
        }
        let mut seen = vec![false; support.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_eulerian(&self) -> bool {
        self.total_arcs() > 0 && self.is_balanced() && self.is_connected_loopless()
    }

    /// Canonical key for memoization.
    pub fn key(&self) -> Vec<(u32, u32, u64)> {
        self.arcs().collect()
    }
}

/// A multiset of tensor support entries with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMultiset {
    pub items: Vec<(EntryPattern, u64)>,
}

/// Combinatorial weights of an entry multiset: b = product of arc
/// multiplicity factorials, c = product of out-degree factorials, pi =
/// product of entry values raised to their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkFactors {
    pub b: BigUint,
    pub c: BigUint,
    pub pi: BigRational,
}

pub(crate) fn factorial(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=k {
        acc *= BigUint::from(i);
    }
    acc
}

/// Arc multiset induced by an entry multiset.
pub fn arc_multiset_of(f: &EntryMultiset) -> ArcMultiset {
    let mut d = ArcMultiset::new();
    for (pattern, mult) in &f.items {
        for &t in &pattern.tail {
            d.add_arc(pattern.row, t, *mult);
        }
    }
    d
}

pub fn walk_factors(f: &EntryMultiset) -> WalkFactors {
    let d = arc_multiset_of(f);
    let mut b = BigUint::one();
    for (_, _, m) in d.arcs() {
        b *= factorial(m);
    }
    let mut c = BigUint::one();
    for (_, deg) in d.out_degrees() {
        c *= factorial(deg);
    }
    let mut pi = BigRational::one();
    for (pattern, mult) in &f.items {
        for _ in 0..*mult {
            pi *= &pattern.value;
        }
    }
    WalkFactors { b, c, pi }
}

/// Number of arborescences of the loopless part oriented toward `root`,
/// by the directed matrix-tree theorem (delete the root row and column of
/// the out-degree Laplacian, take the determinant).
pub fn arborescence_count(d: &ArcMultiset, root: u32) -> Result<BigUint, WalkError> {
    let support: Vec<u32> = d.support_vertices().into_iter().collect();
    if !support.contains(&root) {
        return Err(WalkError::RootNotInSupport { root });
    }
    let others: Vec<u32> = support.into_iter().filter(|&v| v != root).collect();
    let k = others.len();
    if k == 0 {
        return Ok(BigUint::one());
    }
    let index: BTreeMap<u32, usize> = others.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut mat = vec![vec![BigInt::zero(); k]; k];
    for (u, v, m) in d.arcs() {
        if u == v {
            continue;
        }
        if let Some(&iu) = index.get(&u) {
            mat[iu][iu] += BigInt::from(m);
            if let Some(&iv) = index.get(&v) {
                mat[iu][iv] -= BigInt::from(m);
            }
        }
    }
    let det = det_bareiss(mat);
    assert!(!det.is_negative(), "matrix-tree minor must be nonnegative");
    Ok(det.magnitude().clone())
}

/// Fraction-free determinant (Bareiss) of an integer matrix.
fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let mik = m[i][k].clone();
            for j in k + 1..n {
                let val = &pivot * &m[i][j] - &mik * &m[k][j];
                m[i][j] = val / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    sign * m[n - 1][n - 1].clone()
}

/// Rooted Eulerian closed walks of the arc multiset; 0 when no Eulerian
/// closed walk exists (unbalanced, disconnected, or no arcs at all).
pub fn count_eulerian_closed_walks(d: &ArcMultiset) -> BigUint {
    if !d.is_eulerian() {
        return BigUint::zero();
    }
    let root = *d.support_vertices().iter().next().expect("nonempty support");
    let trees = arborescence_count(d, root).expect("root drawn from support");
    if trees.is_zero() {
        return BigUint::zero();
    }
    let mut num = BigUint::from(d.total_arcs()) * trees;
    for (_, deg) in d.out_degrees() {
        num *= factorial(deg - 1);
    }
    let mut b = BigUint::one();
    for (_, _, m) in d.arcs() {
        b *= factorial(m);
    }
    let (q, rem) = num_integer::Integer::div_rem(&num, &b);
    assert!(rem.is_zero(), "walk count formula must divide exactly");
    q
}

pub const ORACLE_ARC_CAP: u64 = 16;

/// Independent oracle: depth-first enumeration of all rooted Eulerian closed
/// walks, i.e. arc sequences using the multiset exactly with matching
/// consecutive endpoints and a closing step, parallel arcs identified.
pub fn enumerate_eulerian_walks_oracle(d: &ArcMultiset) -> Result<BigUint, WalkError> {
    let total = d.total_arcs();
    if total > ORACLE_ARC_CAP {
        return Err(WalkError::TooLargeForOracle {
            arcs: total,
            cap: ORACLE_ARC_CAP,
        });
    }
    if total == 0 {
        return Ok(BigUint::zero());
    }
    // arc classes grouped by tail vertex
    let classes: Vec<(u32, u32)> = d.arcs().map(|(u, v, _)| (u, v)).collect();
    let mut remaining: Vec<u64> = d.arcs().map(|(_, _, m)| m).collect();
    let mut by_tail: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &(u, _)) in classes.iter().enumerate() {
        by_tail.entry(u).or_default().push(i);
    }
    fn dfs(
        at: u32,
        start: u32,
        used: u64,
        total: u64,
        classes: &[(u32, u32)],
        remaining: &mut Vec<u64>,
        by_tail: &BTreeMap<u32, Vec<usize>>,
        count: &mut u64,
    ) {
        if used == total {
            if at == start {
                *count += 1;
            }
            return;
        }
        let Some(outgoing) = by_tail.get(&at) else {
            return;
        };
        for &i in outgoing {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                dfs(classes[i].1, start, used + 1, total, classes, remaining, by_tail, count);
                remaining[i] += 1;
            }
        }
    }
    let mut count = 0u64;
    for &start in &d.support_vertices() {
        dfs(start, start, 0, total, &classes, &mut remaining, &by_tail, &mut count);
    }
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn loops_at(v: u32, k: u64) -> ArcMultiset {
        let mut d = ArcMultiset::new();
        d.add_arc(v, v, k);
        d
    }

    fn complete_digraph(k: u32) -> ArcMultiset {
        let mut d = ArcMultiset::new();
        for u in 0..k {
            for v in 0..k {
                if u != v {
                    d.add_arc(u, v, 1);
                }
            }
        }
        d
    }

    #[test]
    fn two_cycle_has_two_rooted_walks() {
        let d = ArcMultiset::from_arcs([(0, 1), (1, 0)]);
        assert_eq!(count_eulerian_closed_walks(&d), BigUint::from(2u32));
        assert_eq!(enumerate_eulerian_walks_oracle(&d).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn parallel_loops_collapse_to_one_walk() {
        for k in [1u64, 3, 8] {
            let d = loops_at(5, k);
            assert_eq!(count_eulerian_closed_walks(&d), BigUint::one(), "k = {k}");
            assert_eq!(enumerate_eulerian_walks_oracle(&d).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn complete_digraph_k3_walks() {
        let d = complete_digraph(3);
        assert_eq!(count_eulerian_closed_walks(&d), BigUint::from(18u32));
        assert_eq!(enumerate_eulerian_walks_oracle(&d).unwrap(), BigUint::from(18u32));
    }

    #[test]
    fn complete_digraph_k3_plus_two_loops() {
        let mut d = complete_digraph(3);
        d.add_arc(0, 0, 2);
        assert_eq!(count_eulerian_closed_walks(&d), BigUint::from(72u32));
        assert_eq!(enumerate_eulerian_walks_oracle(&d).unwrap(), BigUint::from(72u32));
    }

    #[test]
    fn arborescences_of_complete_digraphs() {
        // k^(k-2) rooted spanning in-trees
        assert_eq!(arborescence_count(&complete_digraph(3), 0).unwrap(), BigUint::from(3u32));
        assert_eq!(arborescence_count(&complete_digraph(4), 2).unwrap(), BigUint::from(16u32));
        let two = ArcMultiset::from_arcs([(0, 1), (1, 0)]);
        assert_eq!(arborescence_count(&two, 0).unwrap(), BigUint::one());
        assert_eq!(arborescence_count(&two, 1).unwrap(), BigUint::one());
    }

    #[test]
    fn arborescence_root_independence_on_balanced_digraphs() {
        let mut d = complete_digraph(3);
        d.add_arc(0, 0, 2);
        let counts: Vec<BigUint> = (0..3)
            .map(|root| arborescence_count(&d, root).unwrap())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn loops_do_not_enter_the_arborescence_matrix() {
        let mut with_loops = complete_digraph(3);
        with_loops.add_arc(1, 1, 4);
        assert_eq!(
            arborescence_count(&with_loops, 0).unwrap(),
            arborescence_count(&complete_digraph(3), 0).unwrap()
        );
    }

    #[test]
    fn non_eulerian_counts_are_zero() {
        assert_eq!(
            count_eulerian_closed_walks(&ArcMultiset::from_arcs([(0, 1)])),
            BigUint::zero()
        );
        // balanced but disconnected: two disjoint 2-cycles
        let d = ArcMultiset::from_arcs([(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert!(d.is_balanced());
        assert!(!d.is_connected_loopless());
        assert_eq!(count_eulerian_closed_walks(&d), BigUint::zero());
        // loop vertex unreachable from the rest
        let mut e = ArcMultiset::from_arcs([(0, 1), (1, 0)]);
        e.add_arc(7, 7, 2);
        assert_eq!(count_eulerian_closed_walks(&e), BigUint::zero());
        assert_eq!(enumerate_eulerian_walks_oracle(&e).unwrap(), BigUint::zero());
        assert_eq!(count_eulerian_closed_walks(&ArcMultiset::new()), BigUint::zero());
    }

    #[test]
    fn best_matches_dfs_on_mixed_shapes() {
        let shapes: Vec<ArcMultiset> = vec![
            ArcMultiset::from_arcs([(0, 1), (1, 2), (2, 0)]),
            ArcMultiset::from_arcs([(0, 1), (1, 0), (0, 1), (1, 0)]),
            {
                let mut d = ArcMultiset::from_arcs([(0, 1), (1, 0)]);
                d.add_arc(0, 0, 3);
                d
            },
            complete_digraph(4),
            {
                let mut d = complete_digraph(3);
                d.add_arc(2, 2, 1);
                d.add_arc(0, 0, 1);
                d
            },
        ];
        for d in &shapes {
            assert_eq!(
                count_eulerian_closed_walks(d),
                enumerate_eulerian_walks_oracle(d).unwrap(),
                "mismatch on {:?}",
                d.key()
            );
        }
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let d = loops_at(0, ORACLE_ARC_CAP + 1);
        assert_eq!(
            enumerate_eulerian_walks_oracle(&d),
            Err(WalkError::TooLargeForOracle { arcs: ORACLE_ARC_CAP + 1, cap: ORACLE_ARC_CAP })
        );
    }

    #[test]
    fn factors_of_an_all_diagonal_multiset() {
        use crate::tensor::EntryPattern;
        let item = EntryPattern {
            row: 0,
            tail: vec![0, 0],
            value: BigRational::from(num_bigint::BigInt::from(3)), // degree 3 diagonal
            diagonal: true,
        };
        let f = EntryMultiset { items: vec![(item, 4)] };
        let d = arc_multiset_of(&f);
        assert_eq!(d.key(), vec![(0, 0, 8)]);
        let w = walk_factors(&f);
        assert_eq!(w.b, factorial(8));
        assert_eq!(w.c, factorial(8));
        assert_eq!(w.pi, BigRational::from(num_bigint::BigInt::from(81)));
    }

    #[test]
    fn factors_of_a_single_adjacency_item() {
        use crate::tensor::EntryPattern;
        let item = EntryPattern {
            row: 0,
            tail: vec![1, 2],
            value: BigRational::new(1.into(), 2.into()),
            diagonal: false,
        };
        let f = EntryMultiset { items: vec![(item, 1)] };
        let w = walk_factors(&f);
        assert_eq!(w.b, BigUint::one());
        assert_eq!(w.c, BigUint::from(2u32)); // out-degree 2 at the row
        assert_eq!(w.pi, BigRational::new(1.into(), 2.into()));
    }
}
