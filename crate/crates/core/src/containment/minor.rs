use std::collections::HashSet;

use super::{placement_order, MinorModel};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guard;

pub const MAX_PATTERN: usize = 6;
pub const MAX_HOST: usize = 16;

/// Brute-force branch-set search for `pattern ≼ host`.
///
/// Pattern vertices are placed in BFS order; each receives a connected set of
/// unused host vertices touching the sets of its placed neighbours. Sets are
/// tried smallest first. Sizes beyond the guard are a resource error.
pub fn contains_minor(host: &Graph, pattern: &Graph) -> Result<Option<MinorModel>> {
    guard::check("minor_pattern", pattern.n(), MAX_PATTERN)?;
    guard::check("minor_host", host.n(), MAX_HOST)?;
    if host.n() > 64 {
        return Err(Error::Resource("minor search supports at most 64 host vertices".into()));
    }
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    let host_masks: Vec<u64> = (0..host.n())
        .map(|v| host.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let mut search = MinorSearch {
        host_masks,
        pattern,
        order: placement_order(pattern),
        sets: vec![0; pattern.n()],
    };
    let all = if host.n() == 64 { u64::MAX } else { (1u64 << host.n()) - 1 };
    if !search.place(0, all) {
        return Ok(None);
    }
    let branch_sets = search
        .sets
        .iter()
        .map(|&m| (0..host.n()).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    Ok(Some(MinorModel { branch_sets }))
}

struct MinorSearch<'a> {
    host_masks: Vec<u64>,
    pattern: &'a Graph,
    order: Vec<(usize, Option<usize>)>,
    sets: Vec<u64>,
}

impl MinorSearch<'_> {
    fn boundary(&self, set: u64) -> u64 {
        let mut b = 0;
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            b |= self.host_masks[v];
        }
        b & !set
    }

    /// All connected subsets of `free`, smallest first then by mask.
    fn connected_subsets(&self, free: u64, max_size: u32, seeds: u64) -> Vec<u64> {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut frontier: Vec<u64> = Vec::new();
        let mut s = seeds & free;
        while s != 0 {
            let v = s.trailing_zeros();
            s &= s - 1;
            frontier.push(1 << v);
        }
        frontier.sort_unstable();
        frontier.dedup();
        let mut out = frontier.clone();
        seen.extend(frontier.iter().copied());
        for _ in 1..max_size {
            let mut next = Vec::new();
            for &set in &frontier {
                let mut ext = self.boundary(set) & free;
                while ext != 0 {
                    let v = ext.trailing_zeros();
                    ext &= ext - 1;
                    let grown = set | (1 << v);
                    if seen.insert(grown) {
                        next.push(grown);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            out.extend(next.iter().copied());
            frontier = next;
        }
        out
    }

    fn place(&mut self, i: usize, free: u64) -> bool {
        if i == self.order.len() {
            return true;
        }
        let (z, parent) = self.order[i];
        let remaining = (self.order.len() - i - 1) as u32;
        let max_size = free.count_ones().saturating_sub(remaining);
        if max_size == 0 {
            return false;
        }
        let placed_nbrs: Vec<usize> = self
            .pattern
            .neighbors(z)
            .iter()
            .copied()
            .filter(|&y| self.sets[y] != 0)
            .collect();
        let unplaced_nbrs = self.pattern.degree(z) - placed_nbrs.len();
        // A set touching the parent's set must contain a vertex next to it.
        let seeds = match parent {
            Some(p) => self.boundary(self.sets[p]),
            None => free,
        };
        for set in self.connected_subsets(free, max_size, seeds) {
            if !placed_nbrs.iter().all(|&y| self.boundary(self.sets[y]) & set != 0) {
                continue;
            }
            let rest = free & !set;
            if unplaced_nbrs > 0 && self.boundary(set) & rest == 0 {
                continue;
            }
            self.sets[z] = set;
            let ok = self.order[..i]
                .iter()
                .all(|&(y, _)| self.still_reachable(y, rest));
            if ok && self.place(i + 1, rest) {
                return true;
            }
            self.sets[z] = 0;
        }
        false
    }

    /// A placed vertex with unplaced pattern neighbours must still border free vertices.
    fn still_reachable(&self, y: usize, free: u64) -> bool {
        let waiting = self.pattern.neighbors(y).iter().any(|&w| self.sets[w] == 0);
        !waiting || self.boundary(self.sets[y]) & free != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_identity() {
        let m = contains_minor(&Graph::cycle(3), &Graph::clique(3)).unwrap().unwrap();
        assert!(m.branch_sets.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn no_k4_in_tree() {
        let tree = Graph::from_edges(8, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (6, 7)]).unwrap();
        assert!(contains_minor(&tree, &Graph::clique(4)).unwrap().is_none());
    }

    #[test]
    fn k5_in_petersen() {
        let m = contains_minor(&Graph::petersen(), &Graph::clique(5)).unwrap().unwrap();
        assert_eq!(m.branch_sets.len(), 5);
    }

    #[test]
    fn guard() {
        assert!(contains_minor(&Graph::path(3), &Graph::path(7)).is_err());
    }
}
