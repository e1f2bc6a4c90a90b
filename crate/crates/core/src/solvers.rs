//! Solving pipelines: exact, linear-branching heuristic and approximations.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::branching::{
    b_split_on, exact_min_irreducible, exact_min_uncovered, linear_from_chains, Branching, BranchingError,
};
use crate::containment::{build_containment, ContainmentDigraph};
use crate::matrix::{BinaryMatrix, RowSplit};
use crate::poset::{min_price_chain_partition, PosetError, WeightFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Branching(#[from] BranchingError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl SolveError {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, SolveError::Branching(BranchingError::BudgetExceeded { .. }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactRows,
    ExactDistinct,
    Linear,
    Height,
    Width,
    Distinct2,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::ExactRows,
        Method::ExactDistinct,
        Method::Linear,
        Method::Height,
        Method::Width,
        Method::Distinct2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::ExactRows => "exact-rows",
            Method::ExactDistinct => "exact-distinct",
            Method::Linear => "linear",
            Method::Height => "height",
            Method::Width => "width",
            Method::Distinct2 => "distinct-2",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// Which count the exact solver minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Rows,
    Distinct,
}

/// Summary of one solver run.
///
/// `beta_lower_bound` is a lower bound on the minimum number of rows of any
/// conflict-free split; `linear_lower_bound` is the antichain-tower value
/// that certifies the optimum over linear branchings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub method: Method,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub height: usize,
    pub width: usize,
    pub rows: usize,
    pub distinct_rows: usize,
    pub beta_lower_bound: Option<usize>,
    pub linear_lower_bound: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method: {}", self.method)?;
        writeln!(f, "m: {}", self.m)?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "height: {}", self.height)?;
        writeln!(f, "width: {}", self.width)?;
        writeln!(f, "rows: {}", self.rows)?;
        writeln!(f, "distinct_rows: {}", self.distinct_rows)?;
        if let Some(lb) = self.beta_lower_bound {
            writeln!(f, "beta_lower_bound: {lb}")?;
        }
        if let Some(lb) = self.linear_lower_bound {
            writeln!(f, "linear_lower_bound: {lb}")?;
        }
        Ok(())
    }
}

struct Run<'a> {
    matrix: &'a BinaryMatrix,
    digraph: ContainmentDigraph,
    started: Instant,
}

impl<'a> Run<'a> {
    fn start(matrix: &'a BinaryMatrix) -> Self {
        Self {
            matrix,
            started: Instant::now(),
            digraph: build_containment(matrix),
        }
    }

    fn report(&self, method: Method, split: &RowSplit, beta_lb: usize, linear_lb: Option<u64>) -> SolveReport {
        SolveReport {
            method,
            m: self.matrix.rows(),
            n: self.matrix.cols(),
            k: self.digraph.vertex_count(),
            height: self.digraph.height(),
            width: self.digraph.width(),
            rows: split.rows(),
            distinct_rows: split.distinct_rows(),
            beta_lower_bound: Some(beta_lb),
            linear_lower_bound: linear_lb,
            elapsed: self.started.elapsed(),
        }
    }

    fn split(&self, b: &Branching) -> RowSplit {
        b_split_on(self.matrix, &self.digraph, b).expect("branching built on this digraph")
    }

    /// Minimum-price chain partition under `π(v) = |v|` as a linear
    /// branching, with the tower value.
    fn min_price_linear(&self) -> (Branching, u64) {
        let dag = self.digraph.dag();
        let weights = WeightFn::support_sizes(self.digraph.supports());
        let (partition, tower) =
            min_price_chain_partition(dag, &weights).expect("support sizes are monotone under inclusion");
        debug_assert_eq!(partition.price(&weights), tower.value(&weights));
        let b = linear_from_chains(dag, &partition).expect("consecutive chain vertices are arcs of a closed digraph");
        (b, tower.value(&weights))
    }
}

/// Optimum over linear branchings, certified by an antichain tower.
pub fn solve_linear_heuristic(matrix: &BinaryMatrix) -> (RowSplit, SolveReport) {
    let run = Run::start(matrix);
    let (b, tower_value) = run.min_price_linear();
    let split = run.split(&b);
    debug_assert_eq!(split.rows() as u64, tower_value);
    let report = run.report(Method::Linear, &split, matrix.rows(), Some(tower_value));
    (split, report)
}

/// Optimal split for the chosen objective by branching enumeration.
pub fn solve_exact(
    matrix: &BinaryMatrix,
    objective: Objective,
    budget: u64,
) -> Result<(RowSplit, SolveReport), SolveError> {
    let run = Run::start(matrix);
    let (method, b, beta_lb) = match objective {
        Objective::Rows => {
            let (b, beta) = exact_min_uncovered(&run.digraph, budget)?;
            (Method::ExactRows, b, beta)
        }
        Objective::Distinct => {
            let (b, _) = exact_min_irreducible(&run.digraph, budget)?;
            (Method::ExactDistinct, b, matrix.rows())
        }
    };
    let split = run.split(&b);
    let report = run.report(method, &split, beta_lb, None);
    Ok((split, report))
}

/// Splits every row into one row per distinct column class it contains.
/// At most `k` distinct rows, hence within a factor 2 of optimal.
pub fn approx_distinct_2(matrix: &BinaryMatrix) -> (RowSplit, SolveReport) {
    let run = Run::start(matrix);
    let class_of = &run.digraph.reduction().class_of;
    let reduced = &run.digraph.reduction().reduced;
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut groups = vec![Vec::new(); matrix.rows()];
    for (i, group) in groups.iter_mut().enumerate() {
        for c in (0..reduced.cols()).filter(|&c| reduced.get(i, c)) {
            group.push(rows.len());
            rows.push(class_of.iter().map(|&cls| cls == c).collect());
            labels.push(format!("{}.{}", matrix.row_labels()[i], group.len()));
        }
    }
    let split = BinaryMatrix::new(rows)
        .and_then(|s| s.with_labels(labels, matrix.col_labels().to_vec()))
        .expect("every row and column keeps a one");
    let split = RowSplit { split, groups };
    let report = run.report(Method::Distinct2, &split, matrix.rows(), None);
    (split, report)
}

/// The split of the empty branching; at most `h(M)` times optimal.
pub fn approx_height(matrix: &BinaryMatrix) -> (RowSplit, SolveReport) {
    let run = Run::start(matrix);
    let split = run.split(&Branching::empty(run.digraph.vertex_count()));
    let report = run.report(Method::Height, &split, matrix.rows(), None);
    (split, report)
}

/// Split of a linear branching with `wdt(M)` paths; at most `wdt(M)` times
/// optimal. The paths come from a minimum-price chain partition, which also
/// has minimum size.
pub fn approx_width(matrix: &BinaryMatrix) -> (RowSplit, SolveReport) {
    let run = Run::start(matrix);
    let (b, tower_value) = run.min_price_linear();
    debug_assert_eq!(b.vertex_count() - b.arc_count(), run.digraph.width());
    let split = run.split(&b);
    let report = run.report(Method::Width, &split, matrix.rows(), Some(tower_value));
    (split, report)
}

/// Runs `method` on `matrix`; `budget` only applies to the exact methods.
pub fn solve(matrix: &BinaryMatrix, method: Method, budget: u64) -> Result<(RowSplit, SolveReport), SolveError> {
    Ok(match method {
        Method::ExactRows => solve_exact(matrix, Objective::Rows, budget)?,
        Method::ExactDistinct => solve_exact(matrix, Objective::Distinct, budget)?,
        Method::Linear => solve_linear_heuristic(matrix),
        Method::Height => approx_height(matrix),
        Method::Width => approx_width(matrix),
        Method::Distinct2 => approx_distinct_2(matrix),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::DEFAULT_BUDGET;
    use crate::matrix::verify_row_split;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_strs(rows).unwrap()
    }

    fn check(matrix: &BinaryMatrix, (split, report): &(RowSplit, SolveReport)) {
        assert!(verify_row_split(matrix, split, true).unwrap().is_accept());
        assert_eq!(report.rows, split.rows());
        assert!(report.rows >= matrix.rows());
        assert!(report.distinct_rows <= report.rows);
    }

    #[test]
    fn crossing_pair() {
        let m2 = m(&["11", "10", "01"]);
        for method in Method::ALL {
            let out = solve(&m2, method, DEFAULT_BUDGET).unwrap();
            check(&m2, &out);
        }
        assert_eq!(solve_linear_heuristic(&m2).1.rows, 4);
        assert_eq!(approx_height(&m2).1.rows, 4);
        assert_eq!(approx_width(&m2).1.rows, 4);
        assert_eq!(approx_distinct_2(&m2).1.distinct_rows, 2);
        assert_eq!(solve_exact(&m2, Objective::Distinct, DEFAULT_BUDGET).unwrap().1.distinct_rows, 2);
    }

    #[test]
    fn chain_matrix() {
        let m4 = m(&["11", "01"]);
        assert_eq!(approx_height(&m4).1.rows, 3);
        assert_eq!(solve_exact(&m4, Objective::Rows, DEFAULT_BUDGET).unwrap().1.rows, 2);
        assert_eq!(approx_width(&m4).1.rows, 2);
    }

    #[test]
    fn identity_matrix() {
        let id = m(&["10", "01"]);
        let (split, report) = approx_distinct_2(&id);
        check(&id, &(split, report.clone()));
        assert_eq!(report.distinct_rows, 2);
        assert_eq!(report.k, 2);
    }

    #[test]
    fn distinct_2_reexpands_duplicates() {
        let mat = m(&["1101", "0110"]);
        let (split, report) = approx_distinct_2(&mat);
        check(&mat, &(split.clone(), report));
        assert_eq!(split.split.row_strings(), vec!["1001", "0100", "0100", "0010"]);
    }

    #[test]
    fn budget_error_is_flagged() {
        let err = solve_exact(&m(&["11", "01"]), Objective::Rows, 1).unwrap_err();
        assert!(err.is_budget_exceeded());
    }

    #[test]
    fn method_names_round_trip() {
        for method in Method::ALL {
            assert_eq!(method.name().parse::<Method>(), Ok(method));
        }
        assert!("fast".parse::<Method>().is_err());
    }
}
