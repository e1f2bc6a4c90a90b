//! Chains, antichains and minimum-price chain partitions of a DAG.
//!
//! All comparisons go through the transitive closure of the host [`Dag`], so
//! a chain is any sequence whose consecutive vertices are joined by a
//! directed path, and an antichain is a set of pairwise unreachable vertices.
//!
//! [`min_price_chain_partition`] returns a chain partition of minimum price
//! together with a tower of antichains whose value equals that price, which
//! certifies optimality through weak duality ([`evaluate`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dag::Dag;
use crate::matching::hopcroft_karp;
use crate::rowset::RowSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("weight function has {found} entries for {expected} vertices")]
    WeightLength { expected: usize, found: usize },
    #[error("weights are not monotone along arc ({from}, {to})")]
    NonMonotone { from: usize, to: usize },
    #[error("brute force is capped at {cap} vertices, got {vertices}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("invalid chain partition: {0}")]
    InvalidPartition(String),
    #[error("invalid antichain tower: {0}")]
    InvalidTower(String),
}

/// Default vertex cap for the exhaustive oracles.
pub const BRUTE_FORCE_CAP: usize = 10;

/// Non-negative integer weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightFn(pub Vec<u64>);

impl WeightFn {
    pub fn constant(n: usize, w: u64) -> Self {
        WeightFn(vec![w; n])
    }

    /// `π(v) = |v|` over a list of supports.
    pub fn support_sizes(supports: &[RowSet]) -> Self {
        WeightFn(supports.iter().map(|s| s.len() as u64).collect())
    }

    pub fn get(&self, v: usize) -> u64 {
        self.0[v]
    }

    fn check_len(&self, dag: &Dag) -> Result<(), PosetError> {
        if self.0.len() != dag.vertex_count() {
            return Err(PosetError::WeightLength {
                expected: dag.vertex_count(),
                found: self.0.len(),
            });
        }
        Ok(())
    }

    /// First arc `(u, v)` with `π(u) > π(v)`, if any.
    pub fn monotonicity_violation(&self, dag: &Dag) -> Option<(usize, usize)> {
        dag.arcs().iter().find(|&(u, v)| self.0[u] > self.0[v])
    }

    pub fn is_monotone(&self, dag: &Dag) -> bool {
        self.monotonicity_violation(dag).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn price(&self, weights: &WeightFn) -> u64 {
        self.0.iter().map(|&v| weights.get(v)).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainPartition {
    pub chains: Vec<Chain>,
}

impl ChainPartition {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn price(&self, weights: &WeightFn) -> u64 {
        self.chains.iter().map(|c| c.price(weights)).sum()
    }

    /// Checks chains are non-empty, ordered along paths of `dag`, disjoint
    /// and covering.
    pub fn validate(&self, dag: &Dag) -> Result<(), PosetError> {
        let bad = |msg: String| Err(PosetError::InvalidPartition(msg));
        let mut seen = vec![false; dag.vertex_count()];
        for (i, chain) in self.chains.iter().enumerate() {
            if chain.0.is_empty() {
                return bad(format!("chain {i} is empty"));
            }
            for &v in &chain.0 {
                if v >= seen.len() {
                    return bad(format!("vertex {v} out of range"));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return bad(format!("vertex {v} is in two chains"));
                }
            }
            if let Some(w) = chain.0.windows(2).find(|w| !dag.reaches(w[0], w[1])) {
                return bad(format!("no path from {} to {} in chain {i}", w[0], w[1]));
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return bad(format!("vertex {v} is not covered"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Antichain(pub Vec<usize>);

impl Antichain {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn value(&self, weights: &WeightFn) -> u64 {
        self.0.iter().map(|&v| weights.get(v)).min().unwrap_or(0)
    }

    pub fn is_antichain_of(&self, dag: &Dag) -> bool {
        self.0.iter().enumerate().all(|(i, &u)| {
            u < dag.vertex_count() && self.0[i + 1..].iter().all(|&v| u != v && !dag.comparable(u, v))
        })
    }
}

/// Antichains `N_1, …, N_w` with `|N_i| = i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AntichainTower {
    pub levels: Vec<Antichain>,
}

impl AntichainTower {
    pub fn value(&self, weights: &WeightFn) -> u64 {
        self.levels.iter().map(|n| n.value(weights)).sum()
    }

    pub fn validate(&self, dag: &Dag) -> Result<(), PosetError> {
        let w = width(dag);
        if self.levels.len() != w {
            return Err(PosetError::InvalidTower(format!(
                "{} levels for width {w}",
                self.levels.len()
            )));
        }
        for (i, level) in self.levels.iter().enumerate() {
            if level.len() != i + 1 {
                return Err(PosetError::InvalidTower(format!(
                    "level {} has {} vertices",
                    i + 1,
                    level.len()
                )));
            }
            if !level.is_antichain_of(dag) {
                return Err(PosetError::InvalidTower(format!(
                    "level {} is not an antichain",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Price of `partition` and value of `tower` under `weights`.
pub fn evaluate(partition: &ChainPartition, tower: &AntichainTower, weights: &WeightFn) -> (u64, u64) {
    (partition.price(weights), tower.value(weights))
}

/// Bipartite split of the closure restricted to `subset`: left copy `i` is
/// adjacent to right copy `j` when `subset[i]` reaches `subset[j]`.
fn closure_split(dag: &Dag, subset: &[usize]) -> Vec<Vec<usize>> {
    subset
        .iter()
        .map(|&u| {
            (0..subset.len())
                .filter(|&j| dag.reaches(u, subset[j]))
                .collect()
        })
        .collect()
}

fn dilworth_on(dag: &Dag, subset: &[usize]) -> ChainPartition {
    let adj = closure_split(dag, subset);
    let matching = hopcroft_karp(&adj, subset.len());
    let chains = (0..subset.len())
        .filter(|&j| matching.right_mate[j].is_none())
        .map(|start| {
            let mut chain = vec![subset[start]];
            let mut cur = start;
            while let Some(next) = matching.left_mate[cur] {
                chain.push(subset[next]);
                cur = next;
            }
            Chain(chain)
        })
        .collect();
    ChainPartition { chains }
}

fn maximum_antichain_on(dag: &Dag, subset: &[usize]) -> Antichain {
    let adj = closure_split(dag, subset);
    let matching = hopcroft_karp(&adj, subset.len());
    let (left_cover, right_cover) = matching.konig_cover(&adj);
    Antichain(
        (0..subset.len())
            .filter(|&i| !left_cover[i] && !right_cover[i])
            .map(|i| subset[i])
            .collect(),
    )
}

fn width_on(dag: &Dag, subset: &[usize]) -> usize {
    let adj = closure_split(dag, subset);
    subset.len() - hopcroft_karp(&adj, subset.len()).size()
}

fn all_vertices(dag: &Dag) -> Vec<usize> {
    (0..dag.vertex_count()).collect()
}

/// Minimum chain partition via maximum matching on the closure split.
pub fn dilworth_partition(dag: &Dag) -> ChainPartition {
    dilworth_on(dag, &all_vertices(dag))
}

/// Maximum antichain read off a König vertex cover.
pub fn maximum_antichain(dag: &Dag) -> Antichain {
    maximum_antichain_on(dag, &all_vertices(dag))
}

/// Maximum antichain size, as vertex count minus maximum matching size.
pub fn width(dag: &Dag) -> usize {
    width_on(dag, &all_vertices(dag))
}

/// Chain partition of minimum price for a monotone weight function, with a
/// tower of antichains of equal value.
///
/// Vertices are peeled off as minimum-weight sources; the partition is then
/// rebuilt by adding them back in reverse. When a vertex raises the width it
/// becomes a singleton chain and the new top level is a maximum antichain.
/// Otherwise the chains are cut at a maximum antichain `T` of the smaller
/// graph and the part above `T` is re-covered by a Dilworth partition of `T`
/// and its ancestors.
pub fn min_price_chain_partition(
    dag: &Dag,
    weights: &WeightFn,
) -> Result<(ChainPartition, AntichainTower), PosetError> {
    weights.check_len(dag)?;
    if let Some((from, to)) = weights.monotonicity_violation(dag) {
        return Err(PosetError::NonMonotone { from, to });
    }
    let n = dag.vertex_count();

    let mut remaining = vec![true; n];
    let mut peel = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| remaining[v])
            .filter(|&v| !(0..n).any(|u| remaining[u] && dag.reaches(u, v)))
            .min_by_key(|&v| (weights.get(v), v))
            .expect("a non-empty DAG has a source");
        remaining[v] = false;
        peel.push(v);
    }

    let mut present: Vec<usize> = Vec::with_capacity(n);
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut levels: Vec<Antichain> = Vec::new();
    for &v in peel.iter().rev() {
        let previous = present.clone();
        let pos = present.binary_search(&v).unwrap_err();
        present.insert(pos, v);

        if width_on(dag, &present) > chains.len() {
            chains.push(vec![v]);
            let top = maximum_antichain_on(dag, &present);
            assert!(top.contains(v), "width grew but {v} is missing from the new antichain");
            levels.push(top);
            continue;
        }

        let cut = maximum_antichain_on(dag, &previous);
        assert_eq!(cut.len(), chains.len());
        let below: Vec<usize> = present
            .iter()
            .copied()
            .filter(|&x| cut.0.iter().any(|&t| dag.reaches(x, t)))
            .collect();
        let in_below = |x: &usize| below.binary_search(x).is_ok();

        // each old chain meets the cut once; keep the suffix starting there
        let mut upper: Vec<Option<Vec<usize>>> = vec![None; cut.len()];
        for chain in &chains {
            let rest: Vec<usize> = chain.iter().copied().filter(|x| !in_below(x)).collect();
            let hits: Vec<usize> = (0..cut.len()).filter(|&i| rest.contains(&cut.0[i])).collect();
            assert!(
                hits.len() == 1 && rest.first() == Some(&cut.0[hits[0]]),
                "chain {chain:?} does not start at exactly one cut vertex after trimming"
            );
            upper[hits[0]] = Some(rest);
        }

        let mut lower_set: Vec<usize> = below.iter().chain(&cut.0).copied().collect();
        lower_set.sort_unstable();
        let lower = dilworth_on(dag, &lower_set);
        assert_eq!(lower.len(), cut.len(), "ancestors of the cut have the wrong width");

        let mut glued = Vec::with_capacity(cut.len());
        for Chain(mut head) in lower.chains {
            let last = *head.last().expect("chains are non-empty");
            let i = cut.0.iter().position(|&t| t == last).unwrap_or_else(|| {
                panic!("lower chain {head:?} does not end at a cut vertex")
            });
            assert!(
                head[..head.len() - 1].iter().all(|x| !cut.contains(*x)),
                "lower chain {head:?} meets the cut twice"
            );
            let tail = upper[i].take().expect("each cut vertex ends one lower chain");
            head.extend_from_slice(&tail[1..]);
            glued.push(head);
        }
        chains = glued;
    }

    let partition = ChainPartition {
        chains: chains.into_iter().map(Chain).collect(),
    };
    Ok((partition, AntichainTower { levels }))
}

fn check_cap(dag: &Dag, cap: usize) -> Result<(), PosetError> {
    if dag.vertex_count() > cap {
        return Err(PosetError::CapExceeded {
            vertices: dag.vertex_count(),
            cap,
        });
    }
    Ok(())
}

/// Exact minimum price over all chain partitions, by exhaustive search.
/// Weights need not be monotone.
pub fn brute_force_min_price(dag: &Dag, weights: &WeightFn, cap: usize) -> Result<u64, PosetError> {
    weights.check_len(dag)?;
    check_cap(dag, cap)?;

    // Vertices are placed in topological order; each either opens a new chain
    // or extends a chain whose last vertex reaches it. Every partition into
    // chains arises exactly once this way.
    fn go(
        dag: &Dag,
        weights: &WeightFn,
        order: &[usize],
        chains: &mut Vec<(usize, u64)>,
        price: u64,
        best: &mut u64,
    ) {
        if price >= *best {
            return;
        }
        let Some((&v, rest)) = order.split_first() else {
            *best = price;
            return;
        };
        let w = weights.get(v);
        for i in 0..chains.len() {
            let (last, max) = chains[i];
            if dag.reaches(last, v) {
                let new_max = max.max(w);
                chains[i] = (v, new_max);
                go(dag, weights, rest, chains, price - max + new_max, best);
                chains[i] = (last, max);
            }
        }
        chains.push((v, w));
        go(dag, weights, rest, chains, price + w, best);
        chains.pop();
    }

    let mut best = u64::MAX;
    go(dag, weights, dag.topological_order(), &mut Vec::new(), 0, &mut best);
    Ok(if dag.vertex_count() == 0 { 0 } else { best })
}

/// Exact maximum tower value, by enumerating every vertex subset.
pub fn brute_force_max_tower(dag: &Dag, weights: &WeightFn, cap: usize) -> Result<u64, PosetError> {
    weights.check_len(dag)?;
    check_cap(dag, cap)?;
    let n = dag.vertex_count();
    // best[s] = largest min-weight over antichains of size s
    let mut best: Vec<Option<u64>> = vec![None; n + 1];
    for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if Antichain(members.clone()).is_antichain_of(dag) {
            let value = Antichain(members).value(weights);
            let slot = &mut best[mask.count_ones() as usize];
            *slot = Some(slot.map_or(value, |b| b.max(value)));
        }
    }
    Ok(best.iter().flatten().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_dag(t: usize) -> Dag {
        Dag::new(t, (1..t).map(|i| (i - 1, i))).unwrap()
    }

    /// Vertices {a}, {b}, {a,b}, {b,c} ordered by inclusion.
    fn remark_dag() -> Dag {
        Dag::new(4, [(0, 2), (1, 2), (1, 3)]).unwrap()
    }

    fn remark_weights(z: u64, big: u64) -> WeightFn {
        WeightFn(vec![z, big, big, z])
    }

    #[test]
    fn dilworth_on_chains_and_antichains() {
        let p = dilworth_partition(&chain_dag(5));
        assert_eq!(p.len(), 1);
        p.validate(&chain_dag(5)).unwrap();
        let iso = Dag::new(4, []).unwrap();
        assert_eq!(dilworth_partition(&iso).len(), 4);
        assert_eq!(width(&iso), 4);
        assert_eq!(width(&chain_dag(5)), 1);
        assert_eq!(maximum_antichain(&chain_dag(5)).len(), 1);
    }

    #[test]
    fn remark_antichain() {
        let a = maximum_antichain(&remark_dag());
        assert_eq!(a.len(), 2);
        assert!(a.is_antichain_of(&remark_dag()));
    }

    #[test]
    fn remark_prices() {
        let dag = remark_dag();
        let w = remark_weights(3, 5);
        let p = ChainPartition {
            chains: vec![Chain(vec![0, 2]), Chain(vec![1, 3])],
        };
        p.validate(&dag).unwrap();
        assert_eq!(p.price(&w), 10);
        assert_eq!(brute_force_min_price(&dag, &w, BRUTE_FORCE_CAP), Ok(10));
        assert_eq!(brute_force_max_tower(&dag, &w, BRUTE_FORCE_CAP), Ok(8));
        assert_eq!(
            min_price_chain_partition(&dag, &w),
            Err(PosetError::NonMonotone { from: 1, to: 3 })
        );
    }

    #[test]
    fn constant_weights_recover_dilworth() {
        let dag = remark_dag();
        let w = WeightFn::constant(4, 1);
        let (p, t) = min_price_chain_partition(&dag, &w).unwrap();
        assert_eq!(evaluate(&p, &t, &w), (2, 2));
        assert_eq!(brute_force_min_price(&dag, &w, BRUTE_FORCE_CAP), Ok(2));
        assert_eq!(brute_force_max_tower(&dag, &w, BRUTE_FORCE_CAP), Ok(2));
    }

    #[test]
    fn two_leaf_tree_with_sizes() {
        // {1}, {2}, {1,2}
        let dag = Dag::new(3, [(0, 2), (1, 2)]).unwrap();
        let w = WeightFn(vec![1, 1, 2]);
        let (p, t) = min_price_chain_partition(&dag, &w).unwrap();
        p.validate(&dag).unwrap();
        t.validate(&dag).unwrap();
        assert_eq!(evaluate(&p, &t, &w), (3, 3));
        assert_eq!(brute_force_min_price(&dag, &w, BRUTE_FORCE_CAP), Ok(3));
        assert_eq!(brute_force_max_tower(&dag, &w, BRUTE_FORCE_CAP), Ok(3));
    }

    #[test]
    fn cap_and_length_errors() {
        let big = Dag::new(11, []).unwrap();
        let w = WeightFn::constant(11, 1);
        assert_eq!(
            brute_force_min_price(&big, &w, BRUTE_FORCE_CAP),
            Err(PosetError::CapExceeded { vertices: 11, cap: 10 })
        );
        assert!(matches!(
            min_price_chain_partition(&big, &WeightFn::constant(3, 1)),
            Err(PosetError::WeightLength { .. })
        ));
    }

    #[test]
    fn empty_dag() {
        let dag = Dag::new(0, []).unwrap();
        let (p, t) = min_price_chain_partition(&dag, &WeightFn(vec![])).unwrap();
        assert!(p.is_empty());
        assert!(t.levels.is_empty());
        assert_eq!(brute_force_min_price(&dag, &WeightFn(vec![]), 10), Ok(0));
    }

    #[test]
    fn partition_validation_errors() {
        let dag = chain_dag(3);
        let bad = ChainPartition {
            chains: vec![Chain(vec![2, 0]), Chain(vec![1])],
        };
        assert!(bad.validate(&dag).is_err());
        let missing = ChainPartition {
            chains: vec![Chain(vec![0, 1])],
        };
        assert!(missing.validate(&dag).is_err());
    }
}
