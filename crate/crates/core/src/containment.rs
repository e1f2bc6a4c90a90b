//! The containment digraph of a binary matrix: one vertex per distinct column
//! support, one arc per proper inclusion.

use crate::dag::{self, ArcSet, Dag};
use crate::matrix::{reduce_columns, BinaryMatrix, ColumnReduction};
use crate::poset;
use crate::rowset::RowSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentDigraph {
    supports: Vec<RowSet>,
    dag: Dag,
    reduction: ColumnReduction,
}

impl ContainmentDigraph {
    pub fn vertex_count(&self) -> usize {
        self.supports.len()
    }

    pub fn supports(&self) -> &[RowSet] {
        &self.supports
    }

    pub fn support(&self, v: usize) -> &RowSet {
        &self.supports[v]
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn reduction(&self) -> &ColumnReduction {
        &self.reduction
    }

    /// Number of rows of the source matrix.
    pub fn rows(&self) -> usize {
        self.reduction.reduced.rows()
    }

    /// Vertex carrying the support of original column `col`.
    pub fn vertex_of_column(&self, col: usize) -> usize {
        self.reduction.class_of[col]
    }

    pub fn height(&self) -> usize {
        dag::height(&self.dag)
    }

    pub fn width(&self) -> usize {
        poset::width(&self.dag)
    }

    pub fn elementary_arcs(&self) -> ArcSet {
        dag::elementary_arcs(&self.dag)
    }

    /// DOT rendering with `{r1,r3}`-style labels. With `hasse` set only the
    /// elementary arcs are drawn.
    pub fn to_dot(&self, row_labels: &[String], hasse: bool) -> String {
        let labels: Vec<String> = self.supports.iter().map(|s| s.display_with(row_labels)).collect();
        if hasse {
            let reduced = Dag::new(self.vertex_count(), self.elementary_arcs().iter())
                .expect("subgraph of a DAG");
            reduced.to_dot("containment", &labels)
        } else {
            self.dag.to_dot("containment", &labels)
        }
    }
}

/// Builds `D_M`; vertex `i` is the support of reduced column `i`.
pub fn build_containment(matrix: &BinaryMatrix) -> ContainmentDigraph {
    let reduction = reduce_columns(matrix);
    let supports = reduction.reduced.column_supports();
    let k = supports.len();
    let arcs = (0..k).flat_map(|u| (0..k).map(move |v| (u, v))).filter(|&(u, v)| {
        supports[u].is_proper_subset(&supports[v])
    });
    let arcs: Vec<_> = arcs.collect();
    let dag = Dag::new(k, arcs).expect("proper inclusion is acyclic");
    ContainmentDigraph {
        supports,
        dag,
        reduction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_strs(rows).unwrap()
    }

    #[test]
    fn chain_matrix() {
        let d = build_containment(&m(&["11", "01"]));
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.support(0), &RowSet::from_members(2, [0]));
        assert_eq!(d.dag().arcs(), &[(0, 1)].into_iter().collect());
        assert_eq!(d.height(), 2);
        assert_eq!(d.width(), 1);
    }

    #[test]
    fn crossing_supports_have_no_arcs() {
        let d = build_containment(&m(&["11", "10", "01"]));
        assert_eq!(d.vertex_count(), 2);
        assert!(d.dag().arcs().is_empty());
        assert_eq!(d.height(), 1);
        assert_eq!(d.width(), 2);
    }

    #[test]
    fn digraph_is_transitively_closed() {
        let d = build_containment(&m(&["111", "011", "001"]));
        assert!(d.dag().is_transitively_closed());
        assert_eq!(d.elementary_arcs(), [(0, 1), (1, 2)].into_iter().collect());
        assert_eq!(d.height(), 3);
    }

    #[test]
    fn duplicate_columns_share_a_vertex() {
        let d = build_containment(&m(&["110", "011"]));
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.vertex_of_column(0), 0);
        assert_eq!(d.vertex_of_column(2), 2);
        let dup = build_containment(&m(&["1100", "0111"]));
        assert_eq!(dup.vertex_count(), 3);
        assert_eq!(dup.vertex_of_column(3), 2);
    }

    #[test]
    fn dot_labels_use_row_names() {
        let mat = m(&["11", "01"]);
        let dot = build_containment(&mat).to_dot(mat.row_labels(), false);
        assert!(dot.contains("[label=\"{r1,r2}\"]"));
        assert!(dot.contains("v0 -> v1;"));
    }
}
