//! Backtracking search for fixed-size cliques over point bitsets.

use rayon::prelude::*;

use crate::gf2::PointSet;

/// Adjacency over the packed points of one ambient space.
pub(crate) struct PointGraph {
    adj: Vec<PointSet>,
}

impl PointGraph {
    /// Graph on `vertices` with an edge wherever `edge(u, v)` holds.
    pub fn new(space_size: usize, vertices: &PointSet, edge: impl Fn(u16, u16) -> bool) -> Self {
        let mut adj = vec![PointSet::new(); space_size];
        for u in vertices.iter() {
            for v in vertices.iter() {
                if u != v && edge(u, v) {
                    adj[u as usize].insert(v);
                }
            }
        }
        Self { adj }
    }

    /// All cliques of exactly `size` vertices inside `candidates`, each as a
    /// bitset, in canonical order. Extensions are only ever by vertices larger
    /// than the last one chosen, so each clique is produced once.
    pub fn cliques(&self, candidates: PointSet, size: usize) -> Vec<PointSet> {
        if size == 0 {
            return vec![PointSet::new()];
        }
        let roots: Vec<u16> = candidates.iter().collect();
        let mut out: Vec<PointSet> = roots
            .par_iter()
            .flat_map_iter(|&v| {
                let mut found = Vec::new();
                let mut chosen = PointSet::new();
                chosen.insert(v);
                let next = candidates.above(v) & self.adj[v as usize];
                self.extend(&mut chosen, 1, next, size, &mut found);
                found
            })
            .collect();
        out.sort_unstable_by(|a, b| a.iter().cmp(b.iter()));
        out
    }

    fn extend(
        &self,
        chosen: &mut PointSet,
        depth: usize,
        candidates: PointSet,
        size: usize,
        out: &mut Vec<PointSet>,
    ) {
        if depth == size {
            out.push(*chosen);
            return;
        }
        if depth + candidates.len() < size {
            return;
        }
        for v in candidates.iter() {
            let next = candidates.above(v) & self.adj[v as usize];
            if depth + 1 + next.len() < size {
                continue;
            }
            chosen.insert(v);
            self.extend(chosen, depth + 1, next, size, out);
            chosen.remove(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangles_of_k4() {
        let verts: PointSet = (1..=4u16).collect();
        let g = PointGraph::new(8, &verts, |_, _| true);
        let tri = g.cliques(verts, 3);
        assert_eq!(tri.len(), 4);
        assert_eq!(g.cliques(verts, 4).len(), 1);
        assert!(g.cliques(verts, 5).is_empty());
    }

    #[test]
    fn cycle_has_no_triangles() {
        let verts: PointSet = (0..5u16).collect();
        let g = PointGraph::new(8, &verts, |u, v| (u + 1) % 5 == v || (v + 1) % 5 == u);
        assert!(g.cliques(verts, 3).is_empty());
        assert_eq!(g.cliques(verts, 2).len(), 5);
    }
}
