//! Hopcroft–Karp maximum bipartite matching with a König vertex cover.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// A maximum matching between `left` and `right` vertex classes.
#[derive(Debug, Clone)]
pub struct Matching {
    /// Right partner of each left vertex.
    pub left_mate: Vec<Option<usize>>,
    /// Left partner of each right vertex.
    pub right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    /// König's construction: returns `(left_in_cover, right_in_cover)` for a
    /// minimum vertex cover of the same size as the matching.
    pub fn konig_cover(&self, adj: &[Vec<usize>]) -> (Vec<bool>, Vec<bool>) {
        let left = self.left_mate.len();
        let right = self.right_mate.len();
        let mut seen_left = vec![false; left];
        let mut seen_right = vec![false; right];
        let mut queue: VecDeque<usize> = (0..left).filter(|&u| self.left_mate[u].is_none()).collect();
        for &u in &queue {
            seen_left[u] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if seen_right[v] || self.left_mate[u] == Some(v) {
                    continue;
                }
                seen_right[v] = true;
                if let Some(w) = self.right_mate[v] {
                    if !seen_left[w] {
                        seen_left[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let left_cover = seen_left.iter().map(|&s| !s).collect();
        (left_cover, seen_right)
    }
}

/// Maximum matching of the bipartite graph where left vertex `u` is adjacent
/// to every right vertex in `adj[u]`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Matching {
    let left = adj.len();
    let mut left_mate = vec![NIL; left];
    let mut right_mate = vec![NIL; right];
    let mut dist = vec![0usize; left];

    loop {
        // layer the free left vertices and alternate along matched edges
        let mut queue = VecDeque::new();
        for u in 0..left {
            if left_mate[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = right_mate[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..left {
            if left_mate[u] == NIL {
                augment(u, adj, &mut left_mate, &mut right_mate, &mut dist);
            }
        }
    }

    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != NIL).then_some(x)).collect();
    Matching {
        left_mate: wrap(left_mate),
        right_mate: wrap(right_mate),
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    left_mate: &mut [usize],
    right_mate: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in &adj[u] {
        let w = right_mate[v];
        let ok = w == NIL || (dist[w] == dist[u] + 1 && augment(w, adj, left_mate, right_mate, dist));
        if ok {
            left_mate[u] = v;
            right_mate[v] = u;
            return true;
        }
    }
    dist[u] = NIL;
    false
}
