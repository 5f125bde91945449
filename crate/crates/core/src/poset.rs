//! Finite posets and their ideals (down-closed subsets).

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit)
            })
        })
    }
}

/// A finite poset on elements `0..len`, stored with its strict order and
/// its cover relation (the transitive reduction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    below: Vec<Bits>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds the poset generated by `lower < upper` pairs. Fails on cycles.
    pub fn new(len: usize, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut down_adj = vec![Vec::new(); len];
        for (lower, upper) in relations {
            assert!(lower < len && upper < len, "relation element out of range");
            if lower == upper {
                return Err(Error::CyclicOrder(lower));
            }
            down_adj[upper].push(lower);
        }

        // transitive closure in topological order, lower elements first
        let mut indegree = vec![0usize; len];
        for lowers in &down_adj {
            for &l in lowers {
                indegree[l] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..len).filter(|&x| indegree[x] == 0).collect();
        let mut top_down = Vec::with_capacity(len);
        while let Some(x) = queue.pop_front() {
            top_down.push(x);
            for &l in &down_adj[x] {
                indegree[l] -= 1;
                if indegree[l] == 0 {
                    queue.push_back(l);
                }
            }
        }
        if top_down.len() != len {
            let culprit = (0..len).find(|&x| indegree[x] > 0).unwrap_or(0);
            return Err(Error::CyclicOrder(culprit));
        }
        let mut below = vec![Bits::new(len); len];
        for &x in top_down.iter().rev() {
            let mut acc = Bits::new(len);
            for &l in &down_adj[x] {
                acc.set(l);
                acc.union_with(&below[l]);
            }
            below[x] = acc;
        }

        // a cover must be a generating pair not implied through another direct lower element
        let mut lower_covers = vec![Vec::new(); len];
        let mut upper_covers = vec![Vec::new(); len];
        for x in 0..len {
            let mut direct = down_adj[x].clone();
            direct.sort_unstable();
            direct.dedup();
            let mut implied = Bits::new(len);
            for &d in &direct {
                implied.union_with(&below[d]);
            }
            for &l in &direct {
                if !implied.get(l) {
                    lower_covers[x].push(l);
                    upper_covers[l].push(x);
                }
            }
        }
        for ups in &mut upper_covers {
            ups.sort_unstable();
        }
        Ok(Poset { below, lower_covers, upper_covers })
    }

    pub fn antichain(len: usize) -> Self {
        Poset::new(len, std::iter::empty()).expect("antichain is acyclic")
    }

    /// `0 < 1 < ... < len - 1`.
    pub fn chain(len: usize) -> Self {
        Poset::new(len, (1..len).map(|x| (x - 1, x))).expect("chain is acyclic")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.below.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].get(a)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    /// All `(lower, upper)` cover pairs, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.lower_covers[x].iter().map(move |&l| (l, x)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Strictly smaller elements, ascending.
    pub fn strictly_below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[x].ones()
    }

    pub fn principal_ideal(&self, x: usize) -> Ideal {
        let mut members: Vec<usize> = self.strictly_below(x).collect();
        members.push(x);
        members.sort_unstable();
        Ideal(members)
    }

    /// Smallest ideal containing `elements`.
    pub fn down_closure(&self, elements: impl IntoIterator<Item = usize>) -> Ideal {
        let mut acc = Bits::new(self.len());
        for x in elements {
            acc.set(x);
            acc.union_with(&self.below[x]);
        }
        Ideal(acc.ones().collect())
    }

    pub fn is_down_closed(&self, inside: &[bool]) -> bool {
        (0..self.len()).all(|x| !inside[x] || self.lower_covers[x].iter().all(|&l| inside[l]))
    }

    /// Validates and wraps a member set.
    pub fn ideal(&self, members: impl IntoIterator<Item = usize>) -> Option<Ideal> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.last().is_some_and(|&x| x >= self.len()) {
            return None;
        }
        let inside = Ideal(members).indicator(self.len());
        if self.is_down_closed(&inside) {
            Some(Ideal::from_indicator(&inside))
        } else {
            None
        }
    }

    /// Deterministic linear extension: repeatedly take the smallest-index minimal element.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut pending: Vec<usize> = self.lower_covers.iter().map(Vec::len).collect();
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
            (0..self.len()).filter(|&x| pending[x] == 0).map(std::cmp::Reverse).collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(std::cmp::Reverse(x)) = ready.pop() {
            order.push(x);
            for &u in &self.upper_covers[x] {
                pending[u] -= 1;
                if pending[u] == 0 {
                    ready.push(std::cmp::Reverse(u));
                }
            }
        }
        order
    }

    /// Elements outside `ideal` whose addition keeps it an ideal.
    pub fn addable(&self, ideal: &Ideal) -> Vec<usize> {
        let inside = ideal.indicator(self.len());
        (0..self.len())
            .filter(|&x| !inside[x] && self.lower_covers[x].iter().all(|&l| inside[l]))
            .collect()
    }

    /// Members of `ideal` whose removal keeps it an ideal.
    pub fn removable(&self, ideal: &Ideal) -> Vec<usize> {
        let inside = ideal.indicator(self.len());
        ideal
            .members()
            .iter()
            .copied()
            .filter(|&x| self.upper_covers[x].iter().all(|&u| !inside[u]))
            .collect()
    }
}

/// A down-closed member set, kept sorted. Ordering is by size, then lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ideal(Vec<usize>);

impl Ideal {
    pub fn empty() -> Self {
        Ideal(Vec::new())
    }

    pub(crate) fn from_indicator(inside: &[bool]) -> Self {
        Ideal((0..inside.len()).filter(|&x| inside[x]).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn indicator(&self, len: usize) -> Vec<bool> {
        let mut inside = vec![false; len];
        for &x in &self.0 {
            inside[x] = true;
        }
        inside
    }

    pub fn union(&self, other: &Ideal) -> Ideal {
        let mut members: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        members.sort_unstable();
        members.dedup();
        Ideal(members)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// All ideals of `p`, sorted by size then lexicographically.
///
/// Backtracks along a linear extension, so the work is proportional to
/// `|p|` times the number of ideals rather than `2^|p|`.
pub fn enumerate_ideals(p: &Poset, cap: usize) -> Result<Vec<Ideal>> {
    let mut found = Vec::new();
    for_each_ideal(p, |inside| {
        if found.len() == cap {
            return false;
        }
        found.push(Ideal::from_indicator(inside));
        true
    })
    .then_some(())
    .ok_or(Error::TooManyIdeals { cap })?;
    found.sort();
    Ok(found)
}

/// Visits every ideal as an indicator vector; stops early (returning false)
/// when the visitor returns false.
pub(crate) fn for_each_ideal(p: &Poset, mut visit: impl FnMut(&[bool]) -> bool) -> bool {
    let order = p.linear_extension();
    let n = order.len();
    let mut inside = vec![false; p.len()];
    let mut choice = vec![0u8; n + 1];
    let mut depth = 0;
    loop {
        if depth == n {
            if !visit(&inside) {
                return false;
            }
            if depth == 0 {
                return true;
            }
            depth -= 1;
            continue;
        }
        let x = order[depth];
        match choice[depth] {
            0 => {
                choice[depth] = 1;
                inside[x] = false;
                depth += 1;
                choice[depth] = 0;
            }
            1 => {
                choice[depth] = 2;
                if p.lower_covers(x).iter().all(|&l| inside[l]) {
                    inside[x] = true;
                    depth += 1;
                    choice[depth] = 0;
                }
            }
            _ => {
                inside[x] = false;
                if depth == 0 {
                    return true;
                }
                depth -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(ideals: &[Ideal]) -> Vec<Vec<usize>> {
        ideals.iter().map(|i| i.members().to_vec()).collect()
    }

    #[test]
    fn three_element_poset_with_one_relation_has_six_ideals() {
        // x2 = 0, x3 = 1, x5 = 2 with x3 < x5
        let p = Poset::new(3, [(1, 2)]).unwrap();
        let ideals = enumerate_ideals(&p, 100).unwrap();
        assert_eq!(
            members(&ideals),
            vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn boolean_and_chain_counts() {
        assert_eq!(enumerate_ideals(&Poset::antichain(3), 100).unwrap().len(), 8);
        assert_eq!(enumerate_ideals(&Poset::chain(3), 100).unwrap().len(), 4);
        assert_eq!(enumerate_ideals(&Poset::antichain(0), 100).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_ideals(&Poset::antichain(4), 15), Err(Error::TooManyIdeals { cap: 15 }));
        assert_eq!(enumerate_ideals(&Poset::antichain(4), 16).unwrap().len(), 16);
    }

    #[test]
    fn covers_are_the_transitive_reduction() {
        let p = Poset::new(4, [(0, 1), (1, 2), (0, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(p.lt(0, 3));
        assert!(!p.lt(3, 0));
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(matches!(Poset::new(2, [(0, 1), (1, 0)]), Err(Error::CyclicOrder(_))));
        assert!(matches!(Poset::new(1, [(0, 0)]), Err(Error::CyclicOrder(0))));
    }

    #[test]
    fn ideal_validation_and_moves() {
        let p = Poset::new(3, [(1, 2)]).unwrap();
        assert!(p.ideal([2]).is_none());
        let i = p.ideal([1, 2]).unwrap();
        assert_eq!(p.addable(&i), vec![0]);
        assert_eq!(p.removable(&i), vec![2]);
        assert_eq!(p.down_closure([2]).members(), &[1, 2]);
        assert_eq!(p.linear_extension(), vec![0, 1, 2]);
    }

    #[test]
    fn long_chain_enumerates_without_recursion() {
        let p = Poset::chain(5_000);
        assert_eq!(enumerate_ideals(&p, 10_000).unwrap().len(), 5_001);
    }
}
