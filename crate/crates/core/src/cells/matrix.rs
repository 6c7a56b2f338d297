//! Dense matrices over the scalar rings, with exact fraction-free rank.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Ring, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            entries: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::invalid("ragged matrix rows"));
            }
            for x in row {
                if x.ring() != ring {
                    return Err(Error::RingMismatch(ring, x.ring()));
                }
                entries.push(x);
            }
        }
        Ok(Matrix {
            ring,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let mut out = Matrix::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            entries: self.entries.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    pub fn map(&self, ring: Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Matrix> {
        Ok(Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rank over the fraction field, by Bareiss elimination with exact division.
    pub fn rank(&self) -> Result<usize> {
        let mut a: Vec<Vec<Scalar>> = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = Scalar::one(self.ring);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for r in rank + 1..rows {
                let factor = a[r][col].clone();
                for c in col + 1..cols {
                    let num = &(&a[r][c] * &pivot) - &(&factor * &a[rank][c]);
                    a[r][c] = num.div_exact(&prev).ok_or_else(|| {
                        Error::internal("inexact division in fraction-free elimination")
                    })?;
                }
                a[r][col] = Scalar::zero(self.ring);
            }
            prev = pivot;
            rank += 1;
        }
        Ok(rank)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let r = Ring::integer();
        Matrix::from_rows(
            r,
            rows.iter()
                .map(|row| row.iter().map(|&x| Scalar::from_int(r, x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn integer_ranks() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).rank().unwrap(), 2);
        assert_eq!(m(&[&[2, 4, 6], &[1, 3, 5], &[3, 7, 11]]).rank().unwrap(), 2);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank().unwrap(), 0);
    }

    #[test]
    fn laurent_rank() {
        // [[2], v], [v^-1, 1]] has determinant [2] - 1 ≠ 0
        let r = Ring::integer();
        let two = Scalar::two(r);
        let a = Matrix::from_rows(
            r,
            vec![
                vec![two.clone(), Scalar::v(r)],
                vec![Scalar::v_pow(r, -1), Scalar::one(r)],
            ],
        )
        .unwrap();
        assert_eq!(a.rank().unwrap(), 2);
        // second row is v^-1 times the first
        let b = Matrix::from_rows(
            r,
            vec![
                vec![two.clone(), Scalar::v(r)],
                vec![&two * &Scalar::v_pow(r, -1), Scalar::one(r)],
            ],
        )
        .unwrap();
        assert_eq!(b.rank().unwrap(), 1);
    }

    #[test]
    fn product_with_identity() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(Ring::integer(), 2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert_eq!(a.mul(&a).unwrap(), m(&[&[7, 10], &[15, 22]]));
    }
}
