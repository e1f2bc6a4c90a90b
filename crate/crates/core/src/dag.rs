//! Directed acyclic graphs with a precomputed transitive closure.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("arc ({0}, {1}) refers to a vertex outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has a directed cycle through vertex {0}")]
    Cycle(usize),
}

/// A set of arcs of some host digraph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ArcSet(pub BTreeSet<(usize, usize)>);

impl ArcSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arc: (usize, usize)) -> bool {
        self.0.contains(&arc)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<(usize, usize)> for ArcSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        ArcSet(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    arcs: ArcSet,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    topo: Vec<usize>,
    /// `reach[u]` holds every `v` with a non-trivial path `u -> v`.
    reach: Vec<FixedBitSet>,
}

impl Dag {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<Self, DagError> {
        let arcs: ArcSet = arcs.into_iter().collect();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (u, v) in arcs.iter() {
            if u >= n || v >= n {
                return Err(DagError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(DagError::SelfLoop(u));
            }
            succ[u].push(v);
            pred[v].push(u);
        }
        let topo = topological_order(&succ, &pred)?;
        let mut reach = vec![FixedBitSet::with_capacity(n); n];
        for &u in topo.iter().rev() {
            let mut r = FixedBitSet::with_capacity(n);
            for &v in &succ[u] {
                r.insert(v);
                r.union_with(&reach[v]);
            }
            reach[u] = r;
        }
        Ok(Self {
            n,
            arcs,
            succ,
            pred,
            topo,
            reach,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains((u, v))
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.succ[u].len()
    }

    /// Vertices ordered so that every arc points forward; ties by index.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// True iff there is a non-trivial directed path from `u` to `v`.
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.reach[u].contains(v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.reaches(u, v) || self.reaches(v, u)
    }

    pub fn is_transitively_closed(&self) -> bool {
        (0..self.n).all(|u| self.reach[u].ones().all(|v| self.has_arc(u, v)))
    }

    pub fn transitive_closure(&self) -> Dag {
        let arcs: Vec<_> = (0..self.n)
            .flat_map(|u| self.reach[u].ones().map(move |v| (u, v)))
            .collect();
        Dag::new(self.n, arcs).expect("closure of a DAG is a DAG")
    }

    /// Renders the digraph in DOT with the given vertex labels.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = format!("digraph {name} {{\n");
        for (v, label) in labels.iter().enumerate().take(self.n) {
            out.push_str(&format!("  v{v} [label=\"{label}\"];\n"));
        }
        for (u, v) in self.arcs.iter() {
            out.push_str(&format!("  v{u} -> v{v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn topological_order(succ: &[Vec<usize>], pred: &[Vec<usize>]) -> Result<Vec<usize>, DagError> {
    let n = succ.len();
    let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = ready.pop_first() {
        order.push(u);
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.insert(v);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indeg[v] > 0).expect("some vertex on a cycle");
        return Err(DagError::Cycle(stuck));
    }
    Ok(order)
}

/// Number of vertices on a longest directed path.
pub fn height(dag: &Dag) -> usize {
    let mut longest = vec![1usize; dag.vertex_count()];
    for &u in dag.topological_order() {
        for &v in dag.successors(u) {
            longest[v] = longest[v].max(longest[u] + 1);
        }
    }
    longest.into_iter().max().unwrap_or(0)
}

/// Transitive reduction: arcs `(u, v)` with no `w` such that `u -> w -> v`.
pub fn elementary_arcs(dag: &Dag) -> ArcSet {
    dag.arcs()
        .iter()
        .filter(|&(u, v)| !(0..dag.vertex_count()).any(|w| dag.reaches(u, w) && dag.reaches(w, v)))
        .collect()
}
