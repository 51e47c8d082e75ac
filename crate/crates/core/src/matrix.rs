//! Row-compressed matrices and the Kronecker product.
//!
//! Only nonzero entries are stored, so the deterministic constructions
//! (one successor per state and symbol) stay linear in their state count.

use crate::error::{contract, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    cols: usize,
    // each row sorted by column, no stored zeros
    rows: Vec<Vec<(u32, S)>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { cols, rows: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { cols: n, rows: (0..n).map(|i| vec![(i as u32, S::one())]).collect() }
    }

    /// Builds from dense rows.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(contract!("ragged matrix rows"));
        }
        let rows = rows
            .into_iter()
            .map(|row| {
                row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j as u32, v)).collect()
            })
            .collect();
        Ok(Matrix { cols: c, rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        let row = &self.rows[r];
        match row.binary_search_by_key(&(c as u32), |(j, _)| *j) {
            Ok(k) => row[k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        assert!(c < self.cols, "column {c} out of range");
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&(c as u32), |(j, _)| *j) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (c as u32, v)),
        }
    }

    /// Nonzero entries of row `r` in column order.
    pub fn row_entries(&self, r: usize) -> &[(u32, S)] {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![S::zero(); self.cols];
                for (j, v) in row {
                    dense[*j as usize] = v.clone();
                }
                dense
            })
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.rows.iter().flatten().map(|(_, v)| v)
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows(), "matrix product shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = vec![S::zero(); other.cols];
                for (k, a) in row {
                    for (j, b) in &other.rows[*k as usize] {
                        acc[*j as usize] = acc[*j as usize].clone() + a.clone() * b.clone();
                    }
                }
                compress(acc)
            })
            .collect();
        Matrix { cols: other.cols, rows }
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows(), self.cols), (other.rows(), other.cols), "matrix sum shape mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
                    let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
                    if take_a {
                        out.push(a[i].clone());
                        i += 1;
                    } else if take_b {
                        out.push(b[j].clone());
                        j += 1;
                    } else {
                        let v = a[i].1.clone() + b[j].1.clone();
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        Matrix { cols: self.cols, rows }
    }

    /// `A ⊗ B` with block `(i, j)` equal to `a_ij · B`.
    pub fn kron(&self, other: &Matrix<S>) -> Matrix<S> {
        let mut rows = Vec::with_capacity(self.rows() * other.rows());
        for arow in &self.rows {
            for brow in &other.rows {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (j, a) in arow {
                    for (l, b) in brow {
                        let v = a.clone() * b.clone();
                        if !v.is_zero() {
                            out.push((*j * other.cols as u32 + *l, v));
                        }
                    }
                }
                rows.push(out);
            }
        }
        Matrix { cols: self.cols * other.cols, rows }
    }

    /// `diag(A, B)`.
    pub fn block_diag(&self, other: &Matrix<S>) -> Matrix<S> {
        let shift = self.cols as u32;
        let rows = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|row| row.iter().map(|(j, v)| (j + shift, v.clone())).collect()))
            .collect();
        Matrix { cols: self.cols + other.cols, rows }
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.rows(), "vector length mismatch");
        let mut out = vec![S::zero(); self.cols];
        for (vi, row) in v.iter().zip(&self.rows) {
            if vi.is_zero() {
                continue;
            }
            for (j, a) in row {
                out[*j as usize] = out[*j as usize].clone() + vi.clone() * a.clone();
            }
        }
        out
    }

    pub fn all_finite(&self) -> bool {
        self.entries().all(Scalar::is_finite_value)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, f(v))).filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }
}

fn compress<S: Scalar>(dense: Vec<S>) -> Vec<(u32, S)> {
    dense.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j as u32, v)).collect()
}

pub fn kron_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.clone() * y.clone())).collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix<f64> {
        Matrix::from_rows((0..r).map(|_| (0..c).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn mixed_product_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (a, b, c, d) =
                (random(&mut rng, 2, 2), random(&mut rng, 2, 2), random(&mut rng, 2, 2), random(&mut rng, 2, 2));
            let lhs = a.mul(&b).kron(&c.mul(&d)).to_rows();
            let rhs = a.kron(&c).mul(&b.kron(&d)).to_rows();
            for (x, y) in lhs.iter().flatten().zip(rhs.iter().flatten()) {
                assert!((x - y).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn kron_layout() {
        let a = Matrix::from_rows(vec![vec![1.0, 2.0]]).unwrap();
        let b = Matrix::from_rows(vec![vec![0.0], vec![3.0]]).unwrap();
        assert_eq!(a.kron(&b).to_rows(), vec![vec![0.0, 0.0], vec![3.0, 6.0]]);
    }

    #[test]
    fn set_get_and_add() {
        let mut m = Matrix::<f64>::zeros(2, 3);
        m.set(1, 2, 4.0);
        m.set(1, 0, 1.0);
        assert_eq!(m.get(1, 2), 4.0);
        assert_eq!(m.get(0, 0), 0.0);
        let mut neg = Matrix::zeros(2, 3);
        neg.set(1, 2, -4.0);
        let s = m.add(&neg);
        assert_eq!(s.nnz(), 1);
        assert_eq!(s.to_rows(), vec![vec![0.0; 3], vec![1.0, 0.0, 0.0]]);
        m.set(1, 2, 0.0);
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn product_against_dense_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(&mut rng, 2, 3);
        let b = random(&mut rng, 3, 4);
        let (da, db) = (a.to_rows(), b.to_rows());
        let p = a.mul(&b);
        for (i, row) in da.iter().enumerate() {
            for j in 0..4 {
                let want: f64 = row.iter().zip(&db).map(|(x, b)| x * b[j]).sum();
                assert!((p.get(i, j) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::<f64>::from_rows(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
    }
}
