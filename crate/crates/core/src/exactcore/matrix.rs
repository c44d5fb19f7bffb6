use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::rat::{int, rat_string, Rat};
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Mismatch("ragged matrix rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Mismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        m.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Mismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (r, c) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..c {
            if pr == r {
                break;
            }
            let Some(sel) = (pr..r).find(|&i| !self.get(i, pc).is_zero()) else {
                continue;
            };
            if sel != pr {
                for j in 0..c {
                    self.data.swap(sel * c + j, pr * c + j);
                }
            }
            let inv = Rat::one() / self.get(pr, pc);
            for j in pc..c {
                let v = &self.data[pr * c + j] * &inv;
                self.data[pr * c + j] = v;
            }
            for i in 0..r {
                if i == pr {
                    continue;
                }
                let f = self.get(i, pc).clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..c {
                    let s = &self.data[pr * c + j];
                    if !s.is_zero() {
                        let v = &f * s;
                        self.data[i * c + j] -= v;
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve_any(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::Mismatch(format!(
                "rhs of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = m.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// The unique solution of a square nonsingular system.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if self.rows != self.cols || self.rank() != self.cols {
            return Err(Error::Singular(format!(
                "{}x{} system is not uniquely solvable",
                self.rows, self.cols
            )));
        }
        Ok(self.solve_any(b)?.expect("nonsingular"))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Mismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::Mismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(sel) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if sel != c {
                for j in 0..n {
                    m.data.swap(sel * n + j, c * n + j);
                }
                det = -det;
            }
            let p = m.get(c, c).clone();
            det *= &p;
            for i in c + 1..n {
                let f = m.get(i, c) / &p;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = &f * m.get(c, j);
                    m.data[i * n + j] -= v;
                }
            }
        }
        Ok(det)
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            (0..self.rows).map(|i| self.row(i).iter().map(rat_string).collect::<Vec<_>>()),
        )
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(rat_string).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::rat;

    #[test]
    fn inverse_and_solve() {
        let a = RatMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(a.solve(&[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        assert_eq!(a.determinant().unwrap(), int(1));
        let s = RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(s.inverse().is_err());
        assert_eq!(s.nullspace(), vec![vec![int(-2), int(1)]]);
        assert_eq!(s.solve_any(&[int(1), int(3)]).unwrap(), None);
        assert_eq!(
            s.solve_any(&[int(1), int(2)]).unwrap(),
            Some(vec![int(1), int(0)])
        );
        let h = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 3), rat(1, 4)]])
            .unwrap();
        assert_eq!(h.determinant().unwrap(), rat(1, 72));
    }
}
