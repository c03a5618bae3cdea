use serde::{Deserialize, Serialize};
use std::fmt;

/// A sorted, duplicate-free set of point indices into a metric space.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(Vec<usize>);

impl PointSet {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PointSet(v)
    }

    pub fn empty() -> Self {
        PointSet(Vec::new())
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        PointSet((0..n).collect())
    }

    /// Builds a set from indices that are already strictly increasing.
    ///
    /// Returns `None` if the input is not strictly increasing.
    pub fn from_sorted(indices: Vec<usize>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(PointSet(indices))
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        let mut count = 0;
        while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    count += 1;
                    a.next();
                    b.next();
                }
            }
        }
        count
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.intersection_len(other) == self.len()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet::new(self.iter().chain(other.iter()))
    }

    /// Complement within `0..n`.
    pub fn complement(&self, n: usize) -> PointSet {
        PointSet((0..n).filter(|i| !self.contains(*i)).collect())
    }

    /// Applies an index map (`perm[old] = new`) and re-sorts.
    pub fn map(&self, perm: &[usize]) -> PointSet {
        PointSet::new(self.iter().map(|i| perm[i]))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        PointSet::new(iter)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_sorts_and_dedups() {
        let s = PointSet::new([3, 1, 3, 0]);
        assert_eq!(s.as_slice(), &[0, 1, 3]);
        assert!(PointSet::from_sorted(vec![1, 1]).is_none());
        assert!(PointSet::from_sorted(vec![0, 2]).is_some());
    }

    #[test]
    fn set_algebra() {
        let a = PointSet::new([0, 2, 4]);
        let b = PointSet::new([2, 3, 4]);
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.union(&b).as_slice(), &[0, 2, 3, 4]);
        assert_eq!(a.complement(6).as_slice(), &[1, 3, 5]);
        assert!(PointSet::new([2, 4]).is_subset(&a));
        assert!(!b.is_subset(&a));
    }
}
