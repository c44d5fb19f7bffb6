use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=w)
                .map(|j| self.0.iter().filter(|&&r| r >= j).count() as u32)
                .collect(),
        )
    }

    /// Boxes `(row, col)`, zero-based, row by row.
    pub fn boxes(&self) -> Vec<(u32, u32)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i as u32, j)))
            .collect()
    }

    /// Number of boxes strictly below `(i, j)` in its column.
    pub fn leg(&self, i: u32, j: u32) -> u32 {
        self.conjugate().0[j as usize] - i - 1
    }

    /// Number of boxes strictly right of `(i, j)` in its row.
    pub fn arm(&self, i: u32, j: u32) -> u32 {
        self.0[i as usize] - j - 1
    }

    pub fn hook(&self, i: u32, j: u32) -> u32 {
        self.arm(i, j) + self.leg(i, j) + 1
    }

    /// Sum of contents `col - row` over all boxes.
    pub fn content_sum(&self) -> i64 {
        self.boxes().iter().map(|&(i, j)| j as i64 - i as i64).sum()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// `l`-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPartition(pub Vec<Partition>);

impl MultiPartition {
    pub fn size(&self) -> u32 {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn l(&self) -> usize {
        self.0.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hooks_and_contents() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
        assert_eq!(p.hook(0, 0), 4);
        assert_eq!(p.leg(0, 0), 1);
        // contents 0, 1, 2 in the first row and -1 below
        assert_eq!(p.content_sum(), 2);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::all(5).len(), 7);
    }
}
