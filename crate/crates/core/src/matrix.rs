//! Square matrices over the Gaussian rationals, stored as sorted sparse rows.
//!
//! Most matrices in the sector calculus are monomial (Pauli strings, site
//! permutations), so products cost a handful of scalar multiplications.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::gaussian::GaussQ;
use crate::rational::Q;

pub type SparseRow = Vec<(usize, GaussQ)>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    rows: Vec<SparseRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, rows: vec![Vec::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussQ::one())
    }

    pub fn scalar(n: usize, z: GaussQ) -> Self {
        if z.is_zero() {
            return Self::zeros(n);
        }
        Matrix { n, rows: (0..n).map(|i| vec![(i, z.clone())]).collect() }
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.rows[i].push((j, GaussQ::one()));
        m
    }

    pub fn from_dense(rows: Vec<Vec<GaussQ>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare { row: r, len: row.len(), n });
            }
            out.push(row.into_iter().enumerate().filter(|(_, z)| !z.is_zero()).collect());
        }
        Ok(Matrix { n, rows: out })
    }

    /// Builds from integer real/imaginary parts, for fixtures.
    pub fn from_ints(entries: &[&[(i64, i64)]]) -> Self {
        let dense = entries.iter().map(|r| r.iter().map(|&(a, b)| GaussQ::from_ints(a, b)).collect()).collect();
        Self::from_dense(dense).expect("fixture matrix is square")
    }

    pub fn from_real(entries: &[&[Q]]) -> Self {
        let dense = entries.iter().map(|r| r.iter().map(|a| GaussQ::real(a.clone())).collect()).collect();
        Self::from_dense(dense).expect("fixture matrix is square")
    }

    /// Row-major vectorisation, indices `i * n + j`.
    pub fn from_vec(n: usize, v: &[(usize, GaussQ)]) -> Self {
        let mut m = Self::zeros(n);
        for (k, z) in v {
            if !z.is_zero() {
                m.rows[k / n].push((k % n, z.clone()));
            }
        }
        for row in &mut m.rows {
            row.sort_by_key(|(j, _)| *j);
        }
        m
    }

    pub fn to_vec(&self) -> Vec<(usize, GaussQ)> {
        let mut v = Vec::with_capacity(self.nnz());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, z) in row {
                v.push((i * self.n + j, z.clone()));
            }
        }
        v
    }

    pub fn to_dense(&self) -> Vec<Vec<GaussQ>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, GaussQ)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> GaussQ {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => GaussQ::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let mut rows = Vec::with_capacity(self.n);
        let mut acc: Vec<Option<GaussQ>> = vec![None; self.n];
        let mut touched = Vec::new();
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let p = a * b;
                    match &mut acc[*j] {
                        Some(s) => *s += &p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                let z = acc[j].take().expect("touched slot is filled");
                if !z.is_zero() {
                    out.push((j, z));
                }
            }
            rows.push(out);
        }
        Matrix { n: self.n, rows }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Matrix, op: impl Fn(&GaussQ, &GaussQ) -> GaussQ) -> Matrix {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let zero = GaussQ::zero();
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(ra, rb)| {
                let mut out = Vec::with_capacity(ra.len() + rb.len());
                let (mut x, mut y) = (0, 0);
                while x < ra.len() || y < rb.len() {
                    let ca = ra.get(x).map(|e| e.0).unwrap_or(usize::MAX);
                    let cb = rb.get(y).map(|e| e.0).unwrap_or(usize::MAX);
                    let (c, z) = if ca == cb {
                        x += 1;
                        y += 1;
                        (ca, op(&ra[x - 1].1, &rb[y - 1].1))
                    } else if ca < cb {
                        x += 1;
                        (ca, op(&ra[x - 1].1, &zero))
                    } else {
                        y += 1;
                        (cb, op(&zero, &rb[y - 1].1))
                    };
                    if !z.is_zero() {
                        out.push((c, z));
                    }
                }
                out
            })
            .collect();
        Matrix { n: self.n, rows }
    }

    pub fn scale(&self, z: &GaussQ) -> Matrix {
        if z.is_zero() {
            return Matrix::zeros(self.n);
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|(j, a)| (*j, a * z)).collect()).collect();
        Matrix { n: self.n, rows }
    }

    pub fn adjoint(&self) -> Matrix {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, z) in row {
                rows[*j].push((i, z.conj()));
            }
        }
        Matrix { n: self.n, rows }
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let m = other.n;
        let mut rows = Vec::with_capacity(self.n * m);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut out = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        out.push((ja * m + jb, a * b));
                    }
                }
                rows.push(out);
            }
        }
        Matrix { n: self.n * m, rows }
    }

    pub fn trace(&self) -> GaussQ {
        let mut t = GaussQ::zero();
        for i in 0..self.n {
            t += &self.get(i, i);
        }
        t
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// `Some(z)` when the matrix equals `z * 1`.
    pub fn as_scalar(&self) -> Option<GaussQ> {
        if self.n == 0 {
            return Some(GaussQ::zero());
        }
        let z = self.get(0, 0);
        if z.is_zero() {
            return if self.is_zero() { Some(z) } else { None };
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != 1 || row[0].0 != i || row[0].1 != z {
                return None;
            }
        }
        Some(z)
    }

    /// `Some(lambda)` with `lambda > 0` when `u u* = lambda * 1`, so that
    /// `u / sqrt(lambda)` is unitary. Such matrices represent unitaries up to
    /// normalisation; conjugation by them is [`Matrix::conjugate`].
    pub fn unitary_scale(&self) -> Option<Q> {
        let z = self.mul(&self.adjoint()).as_scalar()?;
        if z.is_real() && z.re.is_positive() {
            Some(z.re)
        } else {
            None
        }
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_scale().map(|l| l.is_one()).unwrap_or(false)
    }

    /// `u a u^{-1}` for `u` a scaled unitary with scale `lambda`.
    pub fn conjugate(&self, a: &Matrix, lambda: &Q) -> Matrix {
        let r = self.mul(a).mul(&self.adjoint());
        if lambda.is_one() {
            r
        } else {
            r.scale(&GaussQ::real(Q::one() / lambda))
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{})[", self.n, self.n)?;
        for i in 0..self.n {
            let cells: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_dense().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dense = Vec::<Vec<GaussQ>>::deserialize(d)?;
        Matrix::from_dense(dense).map_err(serde::de::Error::custom)
    }
}

/// The Pauli matrices and a few other single-qubit fixtures.
pub mod pauli {
    use super::Matrix;

    pub fn x() -> Matrix {
        Matrix::from_ints(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]])
    }

    pub fn y() -> Matrix {
        Matrix::from_ints(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]])
    }

    pub fn z() -> Matrix {
        Matrix::from_ints(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]])
    }

    pub fn s() -> Matrix {
        Matrix::from_ints(&[&[(1, 0), (0, 0)], &[(0, 0), (0, 1)]])
    }
}
