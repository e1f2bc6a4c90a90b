//! Branchings of the containment digraph and the row splits they induce.
//!
//! A branching picks at most one outgoing arc per vertex. Row `r` of vertex
//! `v` is *covered* when some chosen in-neighbour of `v` contains `r`; the
//! uncovered pairs index the rows of the B-split, and the vertices with at
//! least one uncovered row index its distinct rows.

use thiserror::Error;

use crate::containment::{build_containment, ContainmentDigraph};
use crate::dag::{elementary_arcs, Dag};
use crate::matrix::{verify_row_split, BinaryMatrix, MatrixError, RejectReason, RowSplit, Verdict};
use crate::poset::{Chain, ChainPartition};
use crate::rowset::RowSet;

/// Default cap on the number of branchings an exact solver may enumerate.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchingError {
    #[error("branching covers {found} vertices, digraph has {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("({from}, {to}) is not an arc of the digraph")]
    NotAnArc { from: usize, to: usize },
    #[error("two chosen arcs leave vertex {0}")]
    TwoArcsLeave(usize),
    #[error("branching is not linear: vertex {0} has in-degree at least 2")]
    NotLinear(usize),
    #[error("{states} branchings exceed the enumeration budget of {budget}")]
    BudgetExceeded { states: u128, budget: u64 },
    #[error("row split rejected: {0}")]
    SplitRejected(RejectReason),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// At most one chosen successor per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branching {
    choice: Vec<Option<usize>>,
}

impl Branching {
    pub fn empty(vertex_count: usize) -> Self {
        Self {
            choice: vec![None; vertex_count],
        }
    }

    pub fn from_choices(choice: Vec<Option<usize>>) -> Self {
        Self { choice }
    }

    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(
        vertex_count: usize,
        arcs: I,
    ) -> Result<Self, BranchingError> {
        let mut b = Self::empty(vertex_count);
        for (u, v) in arcs {
            if u >= vertex_count || v >= vertex_count {
                return Err(BranchingError::NotAnArc { from: u, to: v });
            }
            if b.choice[u].replace(v).is_some() {
                return Err(BranchingError::TwoArcsLeave(u));
            }
        }
        Ok(b)
    }

    pub fn vertex_count(&self) -> usize {
        self.choice.len()
    }

    pub fn choice(&self, v: usize) -> Option<usize> {
        self.choice[v]
    }

    pub fn choices(&self) -> &[Option<usize>] {
        &self.choice
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.choice
            .iter()
            .enumerate()
            .filter_map(|(u, c)| c.map(|v| (u, v)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.choice.iter().flatten().count()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.choice.len()];
        for &v in self.choice.iter().flatten() {
            deg[v] += 1;
        }
        deg
    }

    /// Sources of `B`: vertices not entered by a chosen arc.
    pub fn sources(&self) -> Vec<usize> {
        let deg = self.in_degrees();
        (0..self.choice.len()).filter(|&v| deg[v] == 0).collect()
    }

    pub fn is_linear(&self) -> bool {
        self.in_degrees().iter().all(|&d| d <= 1)
    }

    /// Vertices reachable from `v` along chosen arcs, `v` included.
    pub fn reachable_from(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(next) = self.choice[cur] {
            path.push(next);
            cur = next;
        }
        path
    }
}

pub fn validate_branching(d: &ContainmentDigraph, b: &Branching) -> Result<(), BranchingError> {
    validate_on_dag(d.dag(), b)
}

fn validate_on_dag(dag: &Dag, b: &Branching) -> Result<(), BranchingError> {
    if b.vertex_count() != dag.vertex_count() {
        return Err(BranchingError::WrongSize {
            expected: dag.vertex_count(),
            found: b.vertex_count(),
        });
    }
    match b.arcs().into_iter().find(|&(u, v)| !dag.has_arc(u, v)) {
        Some((from, to)) => Err(BranchingError::NotAnArc { from, to }),
        None => Ok(()),
    }
}

/// `(row, vertex)` pairs with the row in the vertex's support but in none of
/// its chosen in-neighbours; sorted by row, then vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UncoveredPairs {
    pub pairs: Vec<(usize, usize)>,
}

impl UncoveredPairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs whose row is `row`.
    pub fn of_row(&self, row: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied().filter(move |&(r, _)| r == row)
    }
}

/// Vertices with at least one uncovered row, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrreducibleSet {
    pub vertices: Vec<usize>,
}

impl IrreducibleSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Union of the chosen in-neighbours of every vertex.
fn covered_sets(d: &ContainmentDigraph, b: &Branching) -> Vec<RowSet> {
    let mut cover = vec![RowSet::empty(d.rows()); d.vertex_count()];
    for (u, v) in b.arcs() {
        cover[v].union_with(d.support(u));
    }
    cover
}

pub fn uncovered_pairs(d: &ContainmentDigraph, b: &Branching) -> Result<UncoveredPairs, BranchingError> {
    validate_branching(d, b)?;
    let cover = covered_sets(d, b);
    let mut pairs: Vec<(usize, usize)> = (0..d.vertex_count())
        .flat_map(|v| d.support(v).difference(&cover[v]).iter().map(move |r| (r, v)).collect::<Vec<_>>())
        .collect();
    pairs.sort_unstable();
    Ok(UncoveredPairs { pairs })
}

pub fn irreducible_vertices(d: &ContainmentDigraph, b: &Branching) -> Result<IrreducibleSet, BranchingError> {
    validate_branching(d, b)?;
    let cover = covered_sets(d, b);
    let vertices = (0..d.vertex_count())
        .filter(|&v| !d.support(v).is_subset(&cover[v]))
        .collect();
    Ok(IrreducibleSet { vertices })
}

/// The B-split of `matrix`.
pub fn b_split(matrix: &BinaryMatrix, b: &Branching) -> Result<RowSplit, BranchingError> {
    b_split_on(matrix, &build_containment(matrix), b)
}

/// The B-split of `matrix` over its precomputed containment digraph.
///
/// Split row `(r, v)` has a 1 in column `j` iff the support of `j` is
/// reachable from `v` along chosen arcs. Rows follow the order of
/// [`uncovered_pairs`].
pub fn b_split_on(
    matrix: &BinaryMatrix,
    d: &ContainmentDigraph,
    b: &Branching,
) -> Result<RowSplit, BranchingError> {
    let unc = uncovered_pairs(d, b)?;
    let reach: Vec<Vec<bool>> = (0..d.vertex_count())
        .map(|v| {
            let mut mark = vec![false; d.vertex_count()];
            for w in b.reachable_from(v) {
                mark[w] = true;
            }
            mark
        })
        .collect();
    let mut groups = vec![Vec::new(); matrix.rows()];
    let mut rows = Vec::with_capacity(unc.len());
    let mut labels = Vec::with_capacity(unc.len());
    for (s, &(r, v)) in unc.pairs.iter().enumerate() {
        rows.push(
            (0..matrix.cols())
                .map(|j| reach[v][d.vertex_of_column(j)])
                .collect(),
        );
        groups[r].push(s);
        labels.push(format!("{}.{}", matrix.row_labels()[r], groups[r].len()));
    }
    let split = BinaryMatrix::new(rows)?.with_labels(labels, matrix.col_labels().to_vec())?;
    Ok(RowSplit { split, groups })
}

/// Extracts a branching of `D_M` from a conflict-free row split of `matrix`
/// whose B-split embeds into the given split.
///
/// Works on representative columns: with `v'_i` the support of
/// representative column `i` among the split rows, `(i, j)` is chosen iff
/// `v'_i` is non-empty and `v'_i ⊊ v'_j` is an elementary inclusion.
pub fn split_to_branching(matrix: &BinaryMatrix, split: &RowSplit) -> Result<Branching, BranchingError> {
    if let Verdict::Reject(reason) = verify_row_split(matrix, split, true)? {
        return Err(BranchingError::SplitRejected(reason));
    }
    let d = build_containment(matrix);
    let reps = &d.reduction().representative;
    let split_rows = split.split.rows();
    let lifted: Vec<RowSet> = reps
        .iter()
        .map(|&j| RowSet::from_members(split_rows, (0..split_rows).filter(|&s| split.split.get(s, j))))
        .collect();
    let k = lifted.len();
    let arcs: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| (0..k).map(move |v| (u, v)))
        .filter(|&(u, v)| lifted[u].is_proper_subset(&lifted[v]))
        .collect();
    let lifted_dag = Dag::new(k, arcs).expect("proper inclusion is acyclic");
    let elementary = elementary_arcs(&lifted_dag);
    let chosen = elementary.iter().filter(|&(u, _)| !lifted[u].is_empty());
    let b = Branching::from_arcs(k, chosen)?;
    validate_branching(&d, &b)?;
    Ok(b)
}

/// Chain partition to branching: consecutive chain vertices become arcs.
pub fn linear_from_chains(dag: &Dag, partition: &ChainPartition) -> Result<Branching, BranchingError> {
    let arcs = partition
        .chains
        .iter()
        .flat_map(|c| c.0.windows(2).map(|w| (w[0], w[1])));
    let b = Branching::from_arcs(dag.vertex_count(), arcs)?;
    validate_on_dag(dag, &b)?;
    Ok(b)
}

/// Linear branching to chain partition: each maximal path is a chain.
pub fn chains_from_linear(b: &Branching) -> Result<ChainPartition, BranchingError> {
    let deg = b.in_degrees();
    if let Some(v) = deg.iter().position(|&d| d > 1) {
        return Err(BranchingError::NotLinear(v));
    }
    let chains = (0..b.vertex_count())
        .filter(|&v| deg[v] == 0)
        .map(|v| Chain(b.reachable_from(v)))
        .collect();
    Ok(ChainPartition { chains })
}

/// Number of branchings of `d`, `Π_v (d⁺(v) + 1)`.
pub fn branching_count(d: &ContainmentDigraph) -> u128 {
    (0..d.vertex_count())
        .map(|v| d.dag().out_degree(v) as u128 + 1)
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

fn check_budget(d: &ContainmentDigraph, budget: u64) -> Result<(), BranchingError> {
    let states = branching_count(d);
    if states > budget as u128 {
        return Err(BranchingError::BudgetExceeded { states, budget });
    }
    Ok(())
}

/// Calls `visit` on every branching of `d`, in lexicographic order of the
/// choices taken along the topological vertex order (no arc first).
pub fn for_each_branching<F: FnMut(&Branching)>(
    d: &ContainmentDigraph,
    budget: u64,
    mut visit: F,
) -> Result<(), BranchingError> {
    check_budget(d, budget)?;
    fn go<F: FnMut(&Branching)>(dag: &Dag, t: usize, b: &mut Branching, visit: &mut F) {
        let order = dag.topological_order();
        if t == order.len() {
            visit(b);
            return;
        }
        let v = order[t];
        go(dag, t + 1, b, visit);
        for &w in dag.successors(v) {
            b.choice[v] = Some(w);
            go(dag, t + 1, b, visit);
        }
        b.choice[v] = None;
    }
    go(d.dag(), 0, &mut Branching::empty(d.vertex_count()), &mut visit);
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    Uncovered,
    Irreducible,
}

struct Search<'a> {
    d: &'a ContainmentDigraph,
    objective: Objective,
    cover: Vec<RowSet>,
    current: Branching,
    best: usize,
    best_branching: Branching,
}

impl Search<'_> {
    // Every in-neighbour of a vertex precedes it in topological order, so a
    // vertex's cost is final by the time the search reaches it.
    fn go(&mut self, t: usize, acc: usize) {
        let order = self.d.dag().topological_order();
        if acc >= self.best {
            return;
        }
        if t == order.len() {
            self.best = acc;
            self.best_branching = self.current.clone();
            return;
        }
        let v = order[t];
        let uncovered = self.d.support(v).difference_count(&self.cover[v]);
        let cost = match self.objective {
            Objective::Uncovered => uncovered,
            Objective::Irreducible => usize::from(uncovered > 0),
        };
        let acc = acc + cost;
        self.go(t + 1, acc);
        for &w in self.d.dag().successors(v) {
            let saved = self.cover[w].clone();
            self.cover[w].union_with(self.d.support(v));
            self.current.choice[v] = Some(w);
            self.go(t + 1, acc);
            self.cover[w] = saved;
        }
        self.current.choice[v] = None;
    }
}

fn exact(d: &ContainmentDigraph, budget: u64, objective: Objective) -> Result<(Branching, usize), BranchingError> {
    check_budget(d, budget)?;
    let n = d.vertex_count();
    let mut search = Search {
        d,
        objective,
        cover: vec![RowSet::empty(d.rows()); n],
        current: Branching::empty(n),
        best: usize::MAX,
        best_branching: Branching::empty(n),
    };
    search.go(0, 0);
    Ok((search.best_branching, search.best))
}

/// A branching minimizing the number of uncovered pairs, with that minimum.
pub fn exact_min_uncovered(d: &ContainmentDigraph, budget: u64) -> Result<(Branching, usize), BranchingError> {
    exact(d, budget, Objective::Uncovered)
}

/// A branching minimizing the number of irreducible vertices, with that
/// minimum.
pub fn exact_min_irreducible(d: &ContainmentDigraph, budget: u64) -> Result<(Branching, usize), BranchingError> {
    exact(d, budget, Objective::Irreducible)
}
