//! Finitely supported permutations of the positive integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, 2, ...}` moving finitely many points. Only moved
/// points are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: BTreeMap<usize, usize>,
}

impl Perm {
    pub fn identity() -> Self {
        Perm::default()
    }

    /// Adjacent transposition `s_i = (i, i+1)`.
    pub fn adjacent(i: usize) -> Self {
        assert!(i >= 1);
        Perm::from_cycles(&[vec![i, i + 1]]).expect("valid transposition")
    }

    /// The long cycle `c_n = (1 2 ... n)`.
    pub fn long_cycle(n: usize) -> Self {
        if n < 2 {
            return Perm::identity();
        }
        Perm::from_cycles(&[(1..=n).collect()]).expect("valid cycle")
    }

    /// Disjoint cycles in cycle notation: `[a, b, c]` sends `a -> b -> c -> a`.
    pub fn from_cycles(cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for cycle in cycles {
            if cycle.len() < 2 {
                return Err(Error::InvalidElement(format!("cycle {cycle:?} has length < 2")));
            }
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 {
                    return Err(Error::InvalidElement("positions are 1-based".into()));
                }
                let next = cycle[(k + 1) % cycle.len()];
                if map.insert(p, next).is_some() {
                    return Err(Error::InvalidElement(format!("position {p} occurs in two cycles")));
                }
            }
        }
        Ok(Perm { map })
    }

    /// One-line notation: `images[k]` is the image of `k + 1`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        let mut map = BTreeMap::new();
        for (k, &v) in images.iter().enumerate() {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidElement(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
            if v != k + 1 {
                map.insert(k + 1, v);
            }
        }
        Ok(Perm { map })
    }

    /// Caller guarantees `map` is a bijection on its keys with no fixed points.
    pub(crate) fn from_map_unchecked(map: BTreeMap<usize, usize>) -> Self {
        debug_assert!(map.iter().all(|(a, b)| a != b));
        Perm { map }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.get(&x).copied().unwrap_or(x)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.map.keys().copied().collect()
    }

    pub fn max_moved(&self) -> usize {
        self.map.keys().next_back().copied().unwrap_or(0)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut map = BTreeMap::new();
        for &x in self.map.keys().chain(other.map.keys()) {
            let y = self.apply(other.apply(x));
            if y != x {
                map.insert(x, y);
            }
        }
        Perm { map }
    }

    pub fn inverse(&self) -> Perm {
        Perm {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// Cycles of length >= 2, each starting at its minimal point, sorted by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut x = self.apply(start);
            while x != start {
                seen.insert(x);
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn one_line(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|x| self.apply(x)).collect()
    }

    pub fn sign(&self) -> i64 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Indices `[i1, ..., ik]` with `self = s_i1 ∘ s_i2 ∘ ... ∘ s_ik`, taken
    /// from bubble-sorting the one-line notation.
    pub fn bubble_word(&self) -> Vec<usize> {
        let n = self.max_moved();
        let mut w = self.one_line(n);
        let mut swaps = Vec::new();
        // swapping positions j, j+1 of the one-line form is right
        // multiplication by s_j; sorting reaches the identity
        for end in (1..n).rev() {
            for j in 0..end {
                if w[j] > w[j + 1] {
                    w.swap(j, j + 1);
                    swaps.push(j + 1);
                }
            }
        }
        swaps.reverse();
        swaps
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order() {
        let a = Perm::adjacent(1);
        let b = Perm::adjacent(2);
        // s1 ∘ s2 sends 3 -> 2 -> 1
        let ab = a.compose(&b);
        assert_eq!(ab.apply(3), 1);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab, Perm::long_cycle(3));
    }

    #[test]
    fn bubble_word_reconstructs() {
        let p = Perm::from_cycles(&[vec![1, 4, 2], vec![3, 5]]).unwrap();
        let word = p.bubble_word();
        let rebuilt = word
            .iter()
            .fold(Perm::identity(), |acc, &i| acc.compose(&Perm::adjacent(i)));
        assert_eq!(rebuilt, p);
        assert!(Perm::identity().bubble_word().is_empty());
        assert_eq!(Perm::long_cycle(4).bubble_word(), vec![1, 2, 3]);
    }

    #[test]
    fn cycles_and_sign() {
        let p = Perm::from_cycles(&[vec![3, 1, 2], vec![6, 7]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2, 3], vec![6, 7]]);
        assert_eq!(p.sign(), -1);
        assert_eq!(p.inverse().compose(&p), Perm::identity());
        assert!(Perm::from_cycles(&[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Perm::from_one_line(&[2, 2]).is_err());
        assert_eq!(Perm::from_one_line(&[2, 3, 1]).unwrap(), Perm::long_cycle(3));
    }
}
