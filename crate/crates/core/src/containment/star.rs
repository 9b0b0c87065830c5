use super::{StarPattern, StarWitness};
use crate::graph::Graph;

/// Finds a copy of the subdivided star `pattern` in `host`.
///
/// Centres are tried in ascending id among vertices of degree at least `k`;
/// legs are placed longest first as vertex-disjoint paths of exactly the
/// required length (any longer leg truncates to one of exact length, so the
/// exact-length search is complete). Legs of equal length start at increasing
/// neighbours of the centre.
pub fn contains_star(host: &Graph, pattern: &StarPattern) -> Option<StarWitness> {
    let k = pattern.k();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(pattern.legs()[i]));
    let mut used = vec![false; host.n()];
    for centre in 0..host.n() {
        if host.degree(centre) < k {
            continue;
        }
        used[centre] = true;
        let mut search = LegSearch {
            host,
            legs: pattern.legs(),
            order: &order,
            centre,
            used: &mut used,
            found: vec![Vec::new(); k],
        };
        if search.place(0, 0) {
            let legs = search.found;
            return Some(StarWitness { centre, legs });
        }
        used[centre] = false;
    }
    None
}

struct LegSearch<'a> {
    host: &'a Graph,
    legs: &'a [usize],
    order: &'a [usize],
    centre: usize,
    used: &'a mut Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl LegSearch<'_> {
    /// Places leg `order[i]`; `min_start` is the smallest admissible first
    /// vertex (symmetry breaking between equal legs).
    fn place(&mut self, i: usize, min_start: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let leg = self.order[i];
        let len = self.legs[leg];
        let nbrs = self.host.neighbors(self.centre);
        for idx in 0..nbrs.len() {
            let w = nbrs[idx];
            if w < min_start || self.used[w] {
                continue;
            }
            let mut path = vec![self.centre, w];
            self.used[w] = true;
            if self.extend(&mut path, len, i, w) {
                return true;
            }
            self.used[w] = false;
        }
        false
    }

    fn extend(&mut self, path: &mut Vec<usize>, len: usize, i: usize, start: usize) -> bool {
        if path.len() == len + 1 {
            let leg = self.order[i];
            let next_min = match self.order.get(i + 1) {
                Some(&nl) if self.legs[nl] == self.legs[leg] => start + 1,
                _ => 0,
            };
            self.found[leg] = path.clone();
            if self.place(i + 1, next_min) {
                return true;
            }
            return false;
        }
        let last = *path.last().unwrap();
        let nbrs = self.host.neighbors(last);
        for idx in 0..nbrs.len() {
            let x = nbrs[idx];
            if self.used[x] {
                continue;
            }
            self.used[x] = true;
            path.push(x);
            if self.extend(path, len, i, start) {
                return true;
            }
            path.pop();
            self.used[x] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider(legs: &[usize]) -> Graph {
        StarPattern::new(legs.to_vec()).unwrap().realize()
    }

    #[test]
    fn hub_of_k13() {
        let w = contains_star(&spider(&[1, 1, 1]), &StarPattern::star(3)).unwrap();
        assert_eq!(w.centre, 0);
        assert_eq!(w.legs.len(), 3);
    }

    #[test]
    fn path_has_no_branching_star() {
        let t = StarPattern::new(vec![1, 1, 2]).unwrap();
        assert!(contains_star(&Graph::path(5), &t).is_none());
    }

    #[test]
    fn spider_contains_itself() {
        let t = StarPattern::new(vec![1, 2, 2]).unwrap();
        let w = contains_star(&spider(&[1, 2, 2]), &t).unwrap();
        assert_eq!(w.centre, 0);
        assert_eq!(w.legs.iter().map(|l| l.len() - 1).collect::<Vec<_>>(), vec![1, 2, 2]);
    }

    #[test]
    fn longer_legs_truncate() {
        let t = StarPattern::new(vec![2, 2, 2]).unwrap();
        let w = contains_star(&spider(&[3, 4, 5]), &t).unwrap();
        assert!(w.legs.iter().all(|l| l.len() == 3));
        assert!(contains_star(&spider(&[1, 4, 5]), &t).is_none());
    }

    #[test]
    fn empty_pattern_needs_a_vertex() {
        assert!(contains_star(&Graph::new(0), &StarPattern::star(0)).is_none());
        assert!(contains_star(&Graph::new(1), &StarPattern::star(0)).is_some());
    }
}
