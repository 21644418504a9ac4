use std::fmt;

use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition; zero parts are dropped, the rest must be weakly
    /// decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|kappa|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition {
            parts: (0..first)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Cells `(i, j)`, both 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// Arm length of cell `(i, j)`.
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.part(i) - j - 1
    }

    /// Leg length of cell `(i, j)`, given the conjugate partition.
    pub fn leg_with(conj: &Partition, i: usize, j: usize) -> usize {
        conj.part(j) - i - 1
    }

    /// All partitions of `k` with at most `max_len` parts, in reverse
    /// lexicographic order.
    pub fn of_weight(k: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill(k, k, max_len, &mut current, &mut out);
        out
    }

    /// All partitions with weight at most `k` and at most `max_len` parts,
    /// grouped by weight.
    pub fn up_to_weight(k: usize, max_len: usize) -> Vec<Vec<Partition>> {
        (0..=k).map(|w| Partition::of_weight(w, max_len)).collect()
    }
}

fn fill(
    remaining: usize,
    cap: usize,
    slots: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=cap.min(remaining)).rev() {
        current.push(p);
        fill(remaining - p, p, slots - 1, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![3, 1, 0]).unwrap().parts(), &[3, 1]);
    }

    #[test]
    fn conjugate_is_involution() {
        let k = Partition::new(vec![4, 2, 2, 1]).unwrap();
        assert_eq!(k.conjugate().parts(), &[4, 3, 1, 1]);
        assert_eq!(k.conjugate().conjugate(), k);
    }

    #[test]
    fn partition_counts() {
        // p(6) = 11, and 7 of them have at most 3 parts
        assert_eq!(Partition::of_weight(6, 6).len(), 11);
        assert_eq!(Partition::of_weight(6, 3).len(), 7);
        assert_eq!(Partition::of_weight(0, 0), vec![Partition::empty()]);
    }

    #[test]
    fn arm_and_leg() {
        let k = Partition::new(vec![3, 1]).unwrap();
        let c = k.conjugate();
        assert_eq!(k.arm(0, 0), 2);
        assert_eq!(Partition::leg_with(&c, 0, 0), 1);
        assert_eq!(Partition::leg_with(&c, 0, 2), 0);
    }
}
