//! Automorphisms and orbits of finite binary structures.
//!
//! Backtracking search over color classes from iterated degree refinement.
//! Transitive ∈-structures refine to singletons immediately, so the search is
//! linear there; symmetric structures pay for their symmetry.

use std::collections::HashMap;

use super::structure::Relation;

/// A bijection of `0..n`, stored as its image table.
pub type Permutation = Vec<usize>;

pub(crate) struct Search<'a> {
    rel: &'a Relation,
    colors: Vec<u32>,
    order: Vec<usize>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(rel: &'a Relation) -> Self {
        let n = rel.size();
        let mut members_of = vec![Vec::new(); n];
        let mut contains = vec![Vec::new(); n];
        for (i, j) in rel.pairs() {
            members_of[j].push(i);
            contains[i].push(j);
        }
        let colors = refine(rel, &members_of, &contains);
        let mut class_size: HashMap<u32, usize> = HashMap::new();
        for &c in &colors {
            *class_size.entry(c).or_default() += 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (class_size[&colors[v]], v));
        Search {
            rel,
            colors,
            order,
        }
    }

    fn consistent(&self, map: &[Option<usize>], v: usize, w: usize) -> bool {
        let r = self.rel;
        if r.holds(v, v) != r.holds(w, w) {
            return false;
        }
        map.iter().enumerate().all(|(u, img)| match img {
            Some(x) if u != v => r.holds(u, v) == r.holds(*x, w) && r.holds(v, u) == r.holds(w, *x),
            _ => true,
        })
    }

    fn extend(
        &self,
        depth: usize,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[Option<usize>]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(map);
        }
        let v = self.order[depth];
        if map[v].is_some() {
            // pre-seeded
            return self.extend(depth + 1, map, used, visit);
        }
        for w in 0..self.rel.size() {
            if used[w] || self.colors[w] != self.colors[v] || !self.consistent(map, v, w) {
                continue;
            }
            map[v] = Some(w);
            used[w] = true;
            let stop = self.extend(depth + 1, map, used, visit);
            map[v] = None;
            used[w] = false;
            if stop {
                return true;
            }
        }
        false
    }

    /// Some automorphism sending `from` to `to`, if one exists.
    pub(crate) fn find_mapping(&self, from: usize, to: usize) -> Option<Permutation> {
        if self.colors[from] != self.colors[to] {
            return None;
        }
        let n = self.rel.size();
        let mut map = vec![None; n];
        let mut used = vec![false; n];
        map[from] = Some(to);
        used[to] = true;
        if !self.consistent(&map, from, to) {
            return None;
        }
        let mut found = None;
        self.extend(0, &mut map, &mut used, &mut |m| {
            found = Some(m.iter().map(|x| x.expect("total map")).collect());
            true
        });
        found
    }

    /// Every automorphism, or `None` once more than `limit` have been found.
    pub(crate) fn all(&self, limit: usize) -> Option<Vec<Permutation>> {
        let n = self.rel.size();
        let mut out: Vec<Permutation> = Vec::new();
        let mut overflow = false;
        self.extend(0, &mut vec![None; n], &mut vec![false; n], &mut |m| {
            if out.len() == limit {
                overflow = true;
                return true;
            }
            out.push(m.iter().map(|x| x.expect("total map")).collect());
            false
        });
        if overflow {
            None
        } else {
            out.sort();
            Some(out)
        }
    }

    /// Orbits of the automorphism group, each sorted, listed by least member.
    pub(crate) fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.rel.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if self.colors[u] != self.colors[v] || find(&mut parent, u) == find(&mut parent, v) {
                    continue;
                }
                if let Some(pi) = self.find_mapping(u, v) {
                    for (a, &b) in pi.iter().enumerate() {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        if ra != rb {
                            let (lo, hi) = (ra.min(rb), ra.max(rb));
                            parent[hi] = lo;
                        }
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }
}

/// Iterated degree refinement: the coarsest equitable partition, with
/// deterministic color ids.
fn refine(rel: &Relation, members_of: &[Vec<usize>], contains: &[Vec<usize>]) -> Vec<u32> {
    let n = rel.size();
    let mut colors: Vec<u32> = vec![0; n];
    let mut classes = usize::from(n > 0);
    loop {
        let keys: Vec<(u32, bool, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut ins: Vec<u32> = members_of[v].iter().map(|&u| colors[u]).collect();
                let mut outs: Vec<u32> = contains[v].iter().map(|&u| colors[u]).collect();
                ins.sort_unstable();
                outs.sort_unstable();
                (colors[v], rel.holds(v, v), ins, outs)
            })
            .collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        let ids: HashMap<&(u32, bool, Vec<u32>, Vec<u32>), u32> =
            distinct.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        let next: Vec<u32> = keys.iter().map(|k| ids[k]).collect();
        let count = distinct.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}
