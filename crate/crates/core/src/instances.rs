//! Instance generators: the d-ary tightness family, the vertex-cover
//! reductions on cubic graphs, and seeded random corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dag::Dag;
use crate::matrix::{BinaryMatrix, MatrixError};
use crate::poset::WeightFn;
use crate::rowset::RowSet;

/// Largest matrix dimension a generator will produce.
pub const SIZE_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("generated instance exceeds the size cap of {SIZE_CAP}")]
    TooLarge,
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("brute-force vertex cover is capped at {cap} vertices, got {vertices}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn params(msg: impl Into<String>) -> InstanceError {
    InstanceError::Parameters(msg.into())
}

/// The hierarchical family with `d^(h-1)` rows whose column supports are the
/// aligned blocks of size `d^(i-1)` for every level `i` in `1..=h`.
///
/// Columns are listed level by level, leaves first.
pub fn gen_md(d: usize, h: usize) -> Result<BinaryMatrix, InstanceError> {
    if d < 2 || h < 2 {
        return Err(params(format!("need d >= 2 and h >= 2, got d={d}, h={h}")));
    }
    let rows = d
        .checked_pow(h as u32 - 1)
        .filter(|&r| r <= SIZE_CAP)
        .ok_or(InstanceError::TooLarge)?;
    let mut supports = Vec::new();
    let mut block = 1;
    for _level in 1..=h {
        for j in 0..rows / block {
            supports.push(RowSet::from_members(rows, j * block..(j + 1) * block));
        }
        block *= d;
    }
    Ok(BinaryMatrix::from_supports(rows, &supports)?)
}

/// A simple 3-regular graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl CubicGraph {
    /// Validates simplicity and cubicity; edges are stored as given with
    /// endpoints ordered.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, InstanceError> {
        let mut seen = std::collections::HashSet::new();
        let mut degree = vec![0usize; n];
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(InstanceError::NotSimple(format!("edge ({u}, {v}) leaves 0..{n}")));
            }
            if u == v {
                return Err(InstanceError::NotSimple(format!("loop at {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(InstanceError::NotSimple(format!("repeated edge ({u}, {v})")));
            }
            degree[u] += 1;
            degree[v] += 1;
            normalized.push(e);
        }
        if let Some(vertex) = degree.iter().position(|&d| d != 3) {
            return Err(InstanceError::NotCubic {
                vertex,
                degree: degree[vertex],
            });
        }
        Ok(Self { n, edges: normalized })
    }

    pub fn complete_k4() -> Self {
        Self::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4 is cubic")
    }

    pub fn complete_bipartite_k33() -> Self {
        let edges = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        Self::new(6, edges).expect("K33 is cubic")
    }

    pub fn cube_q3() -> Self {
        let edges = (0..8usize)
            .flat_map(|u| (0..3).map(move |bit| (u, u ^ (1 << bit))))
            .filter(|&(u, v)| u < v)
            .collect();
        Self::new(8, edges).expect("Q3 is cubic")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of the edges incident with `v`.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v)
            .collect()
    }
}

/// Matrix over rows `E(G)` followed by `x` and `y`, with column supports
/// `E(G)∪{x}`, then `E(v)∪{x}`, `E(v)∪{y}` and `E(v)∪{x,y}` for each vertex.
pub fn gen_vc_reduction(g: &CubicGraph) -> Result<BinaryMatrix, InstanceError> {
    let e = g.edges().len();
    let rows = e + 2;
    let (x, y) = (e, e + 1);
    let mut supports = vec![RowSet::from_members(rows, (0..e).chain([x]))];
    for extra in [&[x][..], &[y], &[x, y]] {
        for v in 0..g.vertex_count() {
            supports.push(RowSet::from_members(
                rows,
                g.incident(v).into_iter().chain(extra.iter().copied()),
            ));
        }
    }
    let mut labels: Vec<String> = g.edges().iter().map(|(u, v)| format!("e{u}-{v}")).collect();
    labels.extend(["x".to_string(), "y".to_string()]);
    let cols = (1..=supports.len()).map(|j| format!("c{j}")).collect();
    Ok(BinaryMatrix::from_supports(rows, &supports)?.with_labels(labels, cols)?)
}

/// Matrix over rows `E(G)` with a singleton column per edge followed by a
/// column `E(v)` per vertex.
pub fn gen_ib_reduction(g: &CubicGraph) -> Result<BinaryMatrix, InstanceError> {
    let e = g.edges().len();
    let mut supports: Vec<RowSet> = (0..e).map(|i| RowSet::from_members(e, [i])).collect();
    supports.extend((0..g.vertex_count()).map(|v| RowSet::from_members(e, g.incident(v))));
    let labels = g.edges().iter().map(|(u, v)| format!("e{u}-{v}")).collect();
    let cols = (1..=supports.len()).map(|j| format!("c{j}")).collect();
    Ok(BinaryMatrix::from_supports(e, &supports)?.with_labels(labels, cols)?)
}

/// Minimum vertex cover size by subset enumeration, for at most 16 vertices.
pub fn brute_force_vertex_cover(g: &CubicGraph) -> Result<usize, InstanceError> {
    const CAP: usize = 16;
    let n = g.vertex_count();
    if n > CAP {
        return Err(InstanceError::CapExceeded { vertices: n, cap: CAP });
    }
    let covers = |mask: u32| g.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
    Ok((0u32..1 << n)
        .filter(|&mask| covers(mask))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap_or(0))
}

/// Uniform random matrix with the given density. All-zero rows are redrawn
/// and every all-zero column is then given ones at freshly drawn positions.
pub fn gen_random(m: usize, n: usize, density: f64, seed: u64) -> Result<BinaryMatrix, InstanceError> {
    if m == 0 || n == 0 {
        return Err(params("rows and columns must be positive"));
    }
    if !(density > 0.0 && density < 1.0) {
        return Err(params(format!("density must lie in (0, 1), got {density}")));
    }
    if m.checked_mul(n).is_none_or(|size| size > SIZE_CAP * 16) {
        return Err(InstanceError::TooLarge);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |len: usize, rng: &mut ChaCha8Rng| -> Vec<bool> {
        loop {
            let v: Vec<bool> = (0..len).map(|_| rng.gen_bool(density)).collect();
            if v.contains(&true) {
                return v;
            }
        }
    };
    let mut cells: Vec<Vec<bool>> = (0..m).map(|_| draw(n, &mut rng)).collect();
    for j in 0..n {
        if cells.iter().all(|row| !row[j]) {
            for (row, bit) in cells.iter_mut().zip(draw(m, &mut rng)) {
                row[j] |= bit;
            }
        }
    }
    Ok(BinaryMatrix::new(cells)?)
}

/// Random conflict-free matrix with exactly `k` distinct columns over `m`
/// rows.
///
/// Draws a random binary hierarchy over the rows (2m − 1 distinct sets),
/// picks a random cut of it covering every row, then fills up to `k` sets
/// with other members of the hierarchy. Columns are shuffled.
pub fn gen_random_laminar(m: usize, k: usize, seed: u64) -> Result<BinaryMatrix, InstanceError> {
    if m == 0 || k == 0 {
        return Err(params("rows and k must be positive"));
    }
    if m > SIZE_CAP {
        return Err(InstanceError::TooLarge);
    }
    // a laminar family of distinct non-empty sets over m elements has at
    // most 2m - 1 members
    if k > 2 * m - 1 {
        return Err(params(format!(
            "a laminar family over {m} rows has at most {} distinct non-empty sets, asked for {k}",
            2 * m - 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(&mut rng);

    // node = contiguous range of `perm`; children[i] = split into two ranges
    let mut nodes: Vec<(usize, usize)> = vec![(0, m)];
    let mut children: Vec<Option<(usize, usize)>> = vec![None];
    let mut i = 0;
    while i < nodes.len() {
        let (lo, hi) = nodes[i];
        if hi - lo > 1 {
            let mid = rng.gen_range(lo + 1..hi);
            nodes.push((lo, mid));
            nodes.push((mid, hi));
            children.push(None);
            children.push(None);
            children[i] = Some((nodes.len() - 2, nodes.len() - 1));
        }
        i += 1;
    }

    let target = rng.gen_range(1..=k.min(m));
    let mut cut = vec![0usize];
    while cut.len() < target {
        let splittable: Vec<usize> = (0..cut.len()).filter(|&c| children[cut[c]].is_some()).collect();
        let pos = *splittable.choose(&mut rng).expect("a cut smaller than m has a non-singleton");
        let (a, b) = children[cut[pos]].expect("splittable");
        cut.swap_remove(pos);
        cut.push(a);
        cut.push(b);
    }
    let mut others: Vec<usize> = (0..nodes.len()).filter(|x| !cut.contains(x)).collect();
    others.shuffle(&mut rng);
    let mut chosen = cut;
    chosen.extend(others.into_iter().take(k - chosen.len()));
    chosen.shuffle(&mut rng);

    let supports: Vec<RowSet> = chosen
        .iter()
        .map(|&x| {
            let (lo, hi) = nodes[x];
            RowSet::from_members(m, perm[lo..hi].iter().copied())
        })
        .collect();
    Ok(BinaryMatrix::from_supports(m, &supports)?)
}

/// Random DAG on `n` vertices: each pair is joined with probability `p`,
/// oriented along a random vertex order.
pub fn gen_random_dag(n: usize, p: f64, seed: u64) -> Result<Dag, InstanceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(params(format!("arc probability must lie in [0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    Ok(Dag::new(n, arcs).expect("arcs follow a linear order"))
}

/// Random weights in `0..=max` that never decrease along arcs.
pub fn gen_monotone_weights(dag: &Dag, max: u64, seed: u64) -> WeightFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![0u64; dag.vertex_count()];
    for &v in dag.topological_order() {
        let floor = dag.predecessors(v).iter().map(|&u| w[u]).max().unwrap_or(0);
        w[v] = rng.gen_range(floor..=max);
    }
    WeightFn(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{count_distinct_columns, find_conflict};

    #[test]
    fn md_shapes() {
        let m = gen_md(2, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.row_strings(), vec!["101", "011"]);
        let m = gen_md(3, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (9, 13));
        assert_eq!(count_distinct_columns(&m), 13);
        assert!(find_conflict(&m).is_none());
        assert!(gen_md(1, 3).is_err());
        assert_eq!(gen_md(2, 40), Err(InstanceError::TooLarge));
    }

    #[test]
    fn cubic_validation() {
        assert!(matches!(
            CubicGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]),
            Err(InstanceError::NotCubic { vertex: 0, degree: 2 })
        ));
        assert!(matches!(CubicGraph::new(2, vec![(0, 0)]), Err(InstanceError::NotSimple(_))));
        assert!(matches!(
            CubicGraph::new(2, vec![(0, 1), (1, 0)]),
            Err(InstanceError::NotSimple(_))
        ));
        assert_eq!(CubicGraph::cube_q3().edges().len(), 12);
    }

    #[test]
    fn reduction_shapes() {
        let k4 = CubicGraph::complete_k4();
        let vc = gen_vc_reduction(&k4).unwrap();
        assert_eq!((vc.rows(), vc.cols()), (8, 13));
        assert_eq!(count_distinct_columns(&vc), 13);
        let ib = gen_ib_reduction(&k4).unwrap();
        assert_eq!((ib.rows(), ib.cols()), (6, 10));
        let ib = gen_ib_reduction(&CubicGraph::complete_bipartite_k33()).unwrap();
        assert_eq!((ib.rows(), ib.cols()), (9, 15));
    }

    #[test]
    fn vertex_covers() {
        assert_eq!(brute_force_vertex_cover(&CubicGraph::complete_k4()), Ok(3));
        assert_eq!(brute_force_vertex_cover(&CubicGraph::complete_bipartite_k33()), Ok(3));
        assert_eq!(brute_force_vertex_cover(&CubicGraph::cube_q3()), Ok(4));
    }

    #[test]
    fn random_is_seeded() {
        let a = gen_random(5, 5, 0.5, 42).unwrap();
        assert_eq!(a, gen_random(5, 5, 0.5, 42).unwrap());
        assert_ne!(a, gen_random(5, 5, 0.5, 43).unwrap());
        let sparse = gen_random(6, 6, 0.05, 7).unwrap();
        assert_eq!(sparse.rows(), 6);
        assert!(gen_random(3, 3, 1.0, 0).is_err());
    }

    #[test]
    fn laminar_hits_every_size() {
        for m in 1..7 {
            for k in 1..2 * m {
                for seed in 0..5 {
                    let mat = gen_random_laminar(m, k, seed).unwrap();
                    assert!(find_conflict(&mat).is_none());
                    assert_eq!(count_distinct_columns(&mat), k, "m={m} k={k}");
                }
            }
            assert!(gen_random_laminar(m, 2 * m, 0).is_err());
        }
    }

    #[test]
    fn monotone_weights_are_monotone() {
        for seed in 0..20 {
            let dag = gen_random_dag(8, 0.3, seed).unwrap();
            let w = gen_monotone_weights(&dag, 20, seed);
            assert!(w.is_monotone(&dag));
            assert!(w.0.iter().all(|&x| x <= 20));
        }
    }
}
