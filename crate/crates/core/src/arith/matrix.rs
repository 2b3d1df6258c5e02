//! Dense matrices over an exact field.

use std::fmt;

use num_traits::{One, Zero};

use super::field::Field;
use super::poly::RatPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn filled(value: K, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn identity_like(like: &K, n: usize) -> Self {
        let mut m = Self::filled(like.zero_like(), n, n);
        for i in 0..n {
            m.data[i * n + i] = like.one_like();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument("matrix shapes do not compose".into()));
        }
        let like = self.data.first().or(rhs.data.first());
        let Some(like) = like else {
            return Ok(Matrix { rows: self.rows, cols: rhs.cols, data: Vec::new() });
        };
        let zero = like.zero_like();
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc.plus(&a.times(rhs.get(k, j)));
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &K) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.times(c)).collect() }
    }

    pub fn trace(&self) -> K {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows {
            acc = acc.plus(self.get(i, i));
        }
        acc
    }

    /// Row-reduces in place; returns pivot columns and the determinant sign
    /// and product of pivots (meaningful for square input).
    fn eliminate(&mut self) -> (Vec<usize>, Option<K>) {
        let Some(like) = self.data.first().cloned() else {
            return (Vec::new(), None);
        };
        let mut det = like.one_like();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                det = det.negate();
            }
            let pivot = self.get(r, c).clone();
            det = det.times(&pivot);
            let inv = pivot.inverse().expect("nonzero pivot in a field");
            for j in c..self.cols {
                let v = self.get(r, j).times(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).minus(&f.times(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, Some(det))
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0.len()
    }

    pub fn determinant(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let (pivots, det) = m.eliminate();
        let det = det.expect("determinant of an empty matrix has no field");
        if pivots.len() < self.rows {
            det.zero_like()
        } else {
            det
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let (pivots, _) = m.eliminate();
        (m, pivots)
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<K>> {
        let Some(like) = self.data.first() else {
            return Vec::new();
        };
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![like.zero_like(); self.cols];
                v[f] = like.one_like();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).negate();
                }
                v
            })
            .collect()
    }

    /// Solves `M x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &[K]) -> Result<Vec<K>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::InvalidArgument("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut aug = Vec::with_capacity(n);
        for (i, bi) in b.iter().enumerate() {
            let mut row = self.row(i).to_vec();
            row.push(bi.clone());
            aug.push(row);
        }
        let mut m = Matrix::from_rows(aug);
        let (pivots, _) = m.eliminate();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::NotAUnit("singular matrix".into()));
        }
        Ok((0..n).map(|i| m.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        if n == 0 {
            return Ok(self.clone());
        }
        let like = &self.data[0];
        let mut aug = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            for j in 0..n {
                row.push(if i == j { like.one_like() } else { like.zero_like() });
            }
            aug.push(row);
        }
        let mut m = Matrix::from_rows(aug);
        let (pivots, _) = m.eliminate();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotAUnit("singular matrix".into()));
        }
        Ok(Matrix::from_rows((0..n).map(|i| m.row(i)[n..].to_vec()).collect()))
    }

    pub fn apply(&self, v: &[K]) -> Vec<K> {
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for j in 0..self.cols {
                    acc = acc.plus(&self.get(i, j).times(&v[j]));
                }
                acc
            })
            .collect()
    }
}

impl Matrix<Rational> {
    pub fn identity(n: usize) -> Self {
        Self::identity_like(&Rational::one(), n)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(Rational::zero(), rows, cols)
    }

    /// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier:
    /// `M_1 = I`, `c_{n-k} = -tr(M M_k)/k`, `M_{k+1} = M M_k + c_{n-k} I`.
    pub fn charpoly(&self) -> RatPoly {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        if n == 0 {
            return RatPoly::new(coeffs);
        }
        let id = Self::identity(n);
        let mut mk = id.clone();
        for k in 1..=n {
            let am = self.mul(&mk).expect("square");
            let c = -am.trace() / int(k as i64);
            coeffs[n - k] = c.clone();
            mk = am.add(&id.scale(&c));
        }
        RatPoly::new(coeffs)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|c| c.is_integer())
    }
}

impl<K: Field> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|c| c.to_exact_string()).collect();
        let width = cells.iter().map(|s| s.len()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.determinant(), int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant(), int(0));
        assert!(s.inverse().is_err());
        assert_eq!(s.nullspace(), vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn solve_system() {
        let a = m(&[&[1, 1, 1], &[0, 2, 5], &[2, 5, -1]]);
        let x = a.solve(&[int(6), int(-4), int(27)]).unwrap();
        assert_eq!(x, vec![int(5), int(3), int(-2)]);
    }

    /// det(t I - M) evaluated directly at sample points.
    fn charpoly_oracle(a: &Matrix<Rational>, t: &Rational) -> Rational {
        let n = a.nrows();
        Matrix::identity(n).scale(t).sub(a).determinant()
    }

    proptest! {
        #[test]
        fn charpoly_matches_pointwise_determinants(
            v in proptest::collection::vec((-9i64..9, 1i64..4), 16)
        ) {
            let rows: Vec<Vec<Rational>> = v.chunks(4)
                .map(|c| c.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect();
            let a = Matrix::from_rows(rows);
            let cp = a.charpoly();
            prop_assert_eq!(cp.degree(), Some(4));
            for t in [-3i64, -1, 0, 2, 5] {
                let t = int(t);
                prop_assert_eq!(cp.eval(&t), charpoly_oracle(&a, &t));
            }
        }
    }
}
