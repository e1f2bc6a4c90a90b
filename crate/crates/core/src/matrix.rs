//! Binary matrices, conflicts, column reduction, row splits and perfect
//! phylogenies.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::rowset::RowSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {0} is all-zero")]
    ZeroRow(usize),
    #[error("column {0} is all-zero")]
    ZeroColumn(usize),
    #[error("unknown column {0}")]
    UnknownColumn(usize),
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("invalid cell character {0:?} (expected '0' or '1')")]
    BadCell(char),
    #[error("split has {found} columns but source has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has a conflict: {0}")]
    Conflict(ConflictWitness),
}

/// A 0/1 matrix with no all-zero row and no all-zero column.
///
/// Rows and columns are identified by position; labels are kept only for
/// reporting and default to `r1..rm` and `c1..cn`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl BinaryMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self, MatrixError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut cells = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            cells.extend(row);
        }
        let matrix = Self {
            rows: m,
            cols: n,
            cells,
            row_labels: (1..=m).map(|i| format!("r{i}")).collect(),
            col_labels: (1..=n).map(|j| format!("c{j}")).collect(),
        };
        matrix.check_nonzero()?;
        Ok(matrix)
    }

    /// Builds a matrix from strings over `{0,1}`, one per row.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self, MatrixError> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(MatrixError::BadCell(other)),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parsed)
    }

    /// Builds a matrix from column supports over `m` rows.
    pub fn from_supports(m: usize, supports: &[RowSet]) -> Result<Self, MatrixError> {
        let rows = (0..m)
            .map(|i| supports.iter().map(|s| s.contains(i)).collect())
            .collect();
        Self::new(rows)
    }

    pub fn with_labels(
        mut self,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self, MatrixError> {
        if row_labels.len() != self.rows {
            return Err(MatrixError::LabelCount {
                expected: self.rows,
                found: row_labels.len(),
            });
        }
        if col_labels.len() != self.cols {
            return Err(MatrixError::LabelCount {
                expected: self.cols,
                found: col_labels.len(),
            });
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    fn check_nonzero(&self) -> Result<(), MatrixError> {
        if let Some(i) = (0..self.rows).find(|&i| !self.row(i).contains(&true)) {
            return Err(MatrixError::ZeroRow(i));
        }
        if let Some(j) = (0..self.cols).find(|&j| (0..self.rows).all(|i| !self.get(i, j))) {
            return Err(MatrixError::ZeroColumn(j));
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// The set of rows with a 1 in column `col`.
    pub fn column_support(&self, col: usize) -> Result<RowSet, MatrixError> {
        if col >= self.cols {
            return Err(MatrixError::UnknownColumn(col));
        }
        Ok(RowSet::from_members(
            self.rows,
            (0..self.rows).filter(|&i| self.get(i, col)),
        ))
    }

    pub fn column_supports(&self) -> Vec<RowSet> {
        (0..self.cols)
            .map(|j| self.column_support(j).expect("column in range"))
            .collect()
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self, MatrixError> {
        let rows = (0..self.rows)
            .map(|i| cols.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        let labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        Self::new(rows)?.with_labels(self.row_labels.clone(), labels)
    }

    /// Rows as `0`/`1` strings.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_strings() {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Two columns and three rows realizing the forbidden pattern
/// `(1,1) / (1,0) / (0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConflictWitness {
    pub col_i: usize,
    pub col_j: usize,
    pub rows: (usize, usize, usize),
}

impl fmt::Display for ConflictWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.rows;
        write!(
            f,
            "columns c{} and c{} on rows r{}, r{}, r{}",
            self.col_i + 1,
            self.col_j + 1,
            a + 1,
            b + 1,
            c + 1
        )
    }
}

impl ConflictWitness {
    /// Checks the witness against `matrix`.
    pub fn holds_in(&self, matrix: &BinaryMatrix) -> bool {
        let (a, b, c) = self.rows;
        let (i, j) = (self.col_i, self.col_j);
        matrix.get(a, i) && matrix.get(a, j)
            && matrix.get(b, i) && !matrix.get(b, j)
            && !matrix.get(c, i) && matrix.get(c, j)
    }
}

/// Returns the lexicographically smallest `(i, j, r, r', r'')` conflict, if
/// any.
///
/// For a fixed column pair the three rows play independent roles, so the
/// smallest triple is the first row of each pattern.
pub fn find_conflict(matrix: &BinaryMatrix) -> Option<ConflictWitness> {
    let n = matrix.cols();
    for i in 0..n {
        for j in i + 1..n {
            let mut both = None;
            let mut only_i = None;
            let mut only_j = None;
            for r in 0..matrix.rows() {
                match (matrix.get(r, i), matrix.get(r, j)) {
                    (true, true) if both.is_none() => both = Some(r),
                    (true, false) if only_i.is_none() => only_i = Some(r),
                    (false, true) if only_j.is_none() => only_j = Some(r),
                    _ => {}
                }
            }
            if let (Some(a), Some(b), Some(c)) = (both, only_i, only_j) {
                return Some(ConflictWitness {
                    col_i: i,
                    col_j: j,
                    rows: (a, b, c),
                });
            }
        }
    }
    None
}

pub fn is_conflict_free(matrix: &BinaryMatrix) -> bool {
    find_conflict(matrix).is_none()
}

/// True iff every two column supports are disjoint or nested.
pub fn is_laminar(matrix: &BinaryMatrix) -> bool {
    let supports = matrix.column_supports();
    supports.iter().enumerate().all(|(a, s)| {
        supports[a + 1..]
            .iter()
            .all(|t| s.is_disjoint(t) || s.is_subset(t) || t.is_subset(s))
    })
}

/// One representative per class of identical columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnReduction {
    pub reduced: BinaryMatrix,
    /// Original column index to reduced column index.
    pub class_of: Vec<usize>,
    /// Reduced column index to its smallest original column index.
    pub representative: Vec<usize>,
}

impl ColumnReduction {
    pub fn k(&self) -> usize {
        self.representative.len()
    }
}

/// Collapses identical columns; classes are numbered by first appearance.
pub fn reduce_columns(matrix: &BinaryMatrix) -> ColumnReduction {
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(matrix.cols());
    let mut representative = Vec::new();
    for j in 0..matrix.cols() {
        let next = representative.len();
        let class = *seen.entry(matrix.column(j)).or_insert(next);
        if class == next {
            representative.push(j);
        }
        class_of.push(class);
    }
    let reduced = matrix
        .select_columns(&representative)
        .expect("columns of a valid matrix");
    ColumnReduction {
        reduced,
        class_of,
        representative,
    }
}

pub fn count_distinct_columns(matrix: &BinaryMatrix) -> usize {
    reduce_columns(matrix).k()
}

pub fn count_distinct_rows(matrix: &BinaryMatrix) -> usize {
    let mut seen = std::collections::HashSet::new();
    (0..matrix.rows()).filter(|&i| seen.insert(matrix.row(i))).count()
}

/// A split matrix together with the block of split rows for each source row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSplit {
    pub split: BinaryMatrix,
    /// `groups[i]` lists the split-row indices whose OR is source row `i`.
    pub groups: Vec<Vec<usize>>,
}

impl RowSplit {
    /// The trivial split where every row is its own block.
    pub fn identity(matrix: &BinaryMatrix) -> Self {
        Self {
            split: matrix.clone(),
            groups: (0..matrix.rows()).map(|i| vec![i]).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.split.rows()
    }

    pub fn distinct_rows(&self) -> usize {
        count_distinct_rows(&self.split)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    GroupCount { expected: usize, found: usize },
    IndexOutOfRange { source_row: usize, index: usize },
    EmptyGroup { source_row: usize },
    RepeatedRow { split_row: usize },
    UnassignedRow { split_row: usize },
    WrongOr { source_row: usize },
    Conflict(ConflictWitness),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GroupCount { expected, found } => {
                write!(f, "expected {expected} row groups, found {found}")
            }
            Self::IndexOutOfRange { source_row, index } => write!(
                f,
                "group of row r{} names split row {} which does not exist",
                source_row + 1,
                index + 1
            ),
            Self::EmptyGroup { source_row } => write!(f, "row r{} has no split rows", source_row + 1),
            Self::RepeatedRow { split_row } => {
                write!(f, "split row {} appears in more than one group", split_row + 1)
            }
            Self::UnassignedRow { split_row } => {
                write!(f, "split row {} belongs to no group", split_row + 1)
            }
            Self::WrongOr { source_row } => write!(
                f,
                "bitwise OR of the split rows of r{} differs from r{}",
                source_row + 1,
                source_row + 1
            ),
            Self::Conflict(w) => write!(f, "split is not conflict-free: {w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Checks that `candidate` is a row split of `source` and, if requested,
/// that the split matrix is conflict-free.
pub fn verify_row_split(
    source: &BinaryMatrix,
    candidate: &RowSplit,
    require_conflict_free: bool,
) -> Result<Verdict, MatrixError> {
    let split = &candidate.split;
    if split.cols() != source.cols() {
        return Err(MatrixError::DimensionMismatch {
            expected: source.cols(),
            found: split.cols(),
        });
    }
    let reject = |r| Ok(Verdict::Reject(r));
    if candidate.groups.len() != source.rows() {
        return reject(RejectReason::GroupCount {
            expected: source.rows(),
            found: candidate.groups.len(),
        });
    }
    let mut owner = vec![None; split.rows()];
    for (i, group) in candidate.groups.iter().enumerate() {
        if group.is_empty() {
            return reject(RejectReason::EmptyGroup { source_row: i });
        }
        for &s in group {
            if s >= split.rows() {
                return reject(RejectReason::IndexOutOfRange {
                    source_row: i,
                    index: s,
                });
            }
            if owner[s].replace(i).is_some() {
                return reject(RejectReason::RepeatedRow { split_row: s });
            }
        }
    }
    if let Some(s) = owner.iter().position(Option::is_none) {
        return reject(RejectReason::UnassignedRow { split_row: s });
    }
    for (i, group) in candidate.groups.iter().enumerate() {
        let ors_to_row = (0..source.cols())
            .all(|j| group.iter().any(|&s| split.get(s, j)) == source.get(i, j));
        if !ors_to_row {
            return reject(RejectReason::WrongOr { source_row: i });
        }
    }
    if require_conflict_free {
        if let Some(w) = find_conflict(split) {
            return reject(RejectReason::Conflict(w));
        }
    }
    Ok(Verdict::Accept)
}

/// Rooted tree over the distinct column supports of a conflict-free matrix.
///
/// Node 0 is the synthetic root carrying all rows; nodes `1..=k` are the
/// distinct supports in reduced-column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhyloTree {
    pub supports: Vec<RowSet>,
    pub parent: Vec<Option<usize>>,
    /// Original columns mapped to each node (empty for the root).
    pub columns: Vec<Vec<usize>>,
    /// Node each row hangs below.
    pub row_node: Vec<usize>,
}

impl PhyloTree {
    pub fn node_count(&self) -> usize {
        self.supports.len()
    }

    pub fn children(&self, node: usize) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&c| self.parent[c] == Some(node))
            .collect()
    }

    pub fn to_dot(&self, row_labels: &[String], col_labels: &[String]) -> String {
        let mut out = String::from("digraph phylogeny {\n");
        for (v, support) in self.supports.iter().enumerate() {
            let label = if v == 0 {
                format!("root {}", support.display_with(row_labels))
            } else {
                let cols: Vec<&str> = self.columns[v].iter().map(|&j| col_labels[j].as_str()).collect();
                format!("{} {}", cols.join(","), support.display_with(row_labels))
            };
            out.push_str(&format!("  n{v} [label=\"{label}\"];\n"));
        }
        for (r, label) in row_labels.iter().enumerate() {
            out.push_str(&format!("  leaf{r} [label=\"{label}\", shape=box];\n"));
        }
        for v in 1..self.node_count() {
            let p = self.parent[v].expect("non-root node has a parent");
            out.push_str(&format!("  n{p} -> n{v};\n"));
        }
        for (r, &v) in self.row_node.iter().enumerate() {
            out.push_str(&format!("  n{v} -> leaf{r};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the perfect phylogeny of a conflict-free matrix.
pub fn build_phylogeny(matrix: &BinaryMatrix) -> Result<PhyloTree, MatrixError> {
    if let Some(w) = find_conflict(matrix) {
        return Err(MatrixError::Conflict(w));
    }
    let reduction = reduce_columns(matrix);
    let m = matrix.rows();
    let mut supports = vec![RowSet::full(m)];
    supports.extend(reduction.reduced.column_supports());
    let mut columns = vec![Vec::new(); supports.len()];
    for (j, &class) in reduction.class_of.iter().enumerate() {
        columns[class + 1].push(j);
    }

    // Supersets of a support form a chain in a laminar family, so the
    // smallest proper superset is the unique parent.
    let smallest_superset = |pred: &dyn Fn(&RowSet) -> bool| {
        (1..supports.len())
            .filter(|&t| pred(&supports[t]))
            .min_by_key(|&t| (supports[t].len(), t))
    };
    let mut parent = vec![None];
    for s in &supports[1..] {
        parent.push(Some(smallest_superset(&|t| s.is_proper_subset(t)).unwrap_or(0)));
    }
    let row_node = (0..m)
        .map(|r| smallest_superset(&|t| t.contains(r)).unwrap_or(0))
        .collect();
    Ok(PhyloTree {
        supports,
        parent,
        columns,
        row_node,
    })
}
