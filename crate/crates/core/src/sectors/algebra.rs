//! Unital *-subalgebras of `M_N` given by an exact basis, with commutants
//! computed by null-space solves.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::gaussian::GaussQ;
use crate::linalg::{null_space, Echelon, SparseVec};
use crate::matrix::Matrix;

use super::SectorError;

#[derive(Clone, Debug)]
pub struct MatrixAlg {
    n: usize,
    basis: Vec<Matrix>,
    generators: Vec<Matrix>,
    span: Echelon,
}

impl MatrixAlg {
    /// The *-algebra generated by `gens` and the identity.
    pub fn generated_by(n: usize, gens: Vec<Matrix>) -> Self {
        for g in &gens {
            assert_eq!(g.dim(), n, "generator dimension");
        }
        let mut letters: Vec<Matrix> = Vec::with_capacity(2 * gens.len());
        for g in &gens {
            letters.push(g.clone());
            let a = g.adjoint();
            if &a != g {
                letters.push(a);
            }
        }
        let mut span = Echelon::new();
        let mut basis = Vec::new();
        let id = Matrix::identity(n);
        span.insert(&id.to_vec());
        basis.push(id);
        let mut next = 0;
        while next < basis.len() {
            let b = basis[next].clone();
            next += 1;
            for l in &letters {
                let p = l.mul(&b);
                if span.insert(&p.to_vec()) {
                    basis.push(p);
                }
            }
        }
        MatrixAlg { n, basis, generators: gens, span }
    }

    /// Validates that `basis` is independent, contains the identity in its
    /// span and is closed under products and adjoints.
    pub fn from_basis(n: usize, basis: Vec<Matrix>) -> Result<Self, SectorError> {
        let mut span = Echelon::new();
        for (k, b) in basis.iter().enumerate() {
            if b.dim() != n {
                return Err(SectorError::Dimension { expected: n, got: b.dim() });
            }
            if !span.insert(&b.to_vec()) {
                return Err(SectorError::NotAlgebra(format!("basis element {k} is dependent")));
            }
        }
        if !span.contains(&Matrix::identity(n).to_vec()) {
            return Err(SectorError::NotAlgebra("identity missing".into()));
        }
        for (i, a) in basis.iter().enumerate() {
            if !span.contains(&a.adjoint().to_vec()) {
                return Err(SectorError::NotAlgebra(format!("adjoint of element {i} escapes")));
            }
            for (j, b) in basis.iter().enumerate() {
                if !span.contains(&a.mul(b).to_vec()) {
                    return Err(SectorError::NotAlgebra(format!("product of elements {i} and {j} escapes")));
                }
            }
        }
        Ok(MatrixAlg { n, generators: basis.clone(), basis, span })
    }

    pub fn full(n: usize) -> Self {
        let basis: Vec<Matrix> = (0..n).flat_map(|i| (0..n).map(move |j| Matrix::unit(n, i, j))).collect();
        Self::trusted(n, basis)
    }

    pub fn scalars(n: usize) -> Self {
        Self::trusted(n, vec![Matrix::identity(n)])
    }

    pub fn diagonal(n: usize) -> Self {
        Self::trusted(n, (0..n).map(|i| Matrix::unit(n, i, i)).collect())
    }

    fn trusted(n: usize, basis: Vec<Matrix>) -> Self {
        let mut span = Echelon::new();
        for b in &basis {
            span.insert(&b.to_vec());
        }
        MatrixAlg { n, generators: basis.clone(), basis, span }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// A generating set; commutation with these is commutation with all.
    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.dim() == self.n && self.span.contains(&m.to_vec())
    }

    pub fn is_subalgebra_of(&self, other: &MatrixAlg) -> bool {
        self.n == other.n && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_span(&self, other: &MatrixAlg) -> bool {
        self.dim() == other.dim() && self.is_subalgebra_of(other)
    }

    /// Replaces the generating set by a greedily chosen subset of the basis
    /// that still generates, which keeps later commutant solves small.
    fn with_small_generators(mut self) -> Self {
        let mut gens: Vec<Matrix> = Vec::new();
        let mut alg = MatrixAlg::scalars(self.n);
        for b in &self.basis {
            if alg.dim() == self.dim() {
                break;
            }
            if !alg.contains(b) {
                gens.push(b.clone());
                alg = MatrixAlg::generated_by(self.n, gens.clone());
            }
        }
        self.generators = gens;
        self
    }
}

/// Linear constraints `left X - X right = 0` on the row-major entries of
/// an `n x n` unknown `X`.
pub fn sylvester_rows(n: usize, left: &Matrix, right: &Matrix) -> Vec<SparseVec> {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // sum_k left_ik X_kj - X_ik right_kj
            let mut row: BTreeMap<usize, GaussQ> = BTreeMap::new();
            for (k, l) in left.row(i) {
                *row.entry(k * n + j).or_insert_with(GaussQ::zero) += l;
            }
            for k in 0..n {
                let r = right.get(k, j);
                if !r.is_zero() {
                    *row.entry(i * n + k).or_insert_with(GaussQ::zero) -= &r;
                }
            }
            let r: SparseVec = row.into_iter().filter(|(_, z)| !z.is_zero()).collect();
            if !r.is_empty() {
                rows.push(r);
            }
        }
    }
    rows
}

/// `{X : X g = g X}` for every `g` in `gens`, as a basis of `N x N` matrices.
pub fn commutant_of(n: usize, gens: &[Matrix]) -> MatrixAlg {
    let rows: Vec<SparseVec> = gens.iter().flat_map(|g| sylvester_rows(n, g, g)).collect();
    let basis: Vec<Matrix> = null_space(&rows, n * n).iter().map(|v| Matrix::from_vec(n, v)).collect();
    MatrixAlg::trusted(n, basis).with_small_generators()
}

pub fn commutant(s: &MatrixAlg) -> MatrixAlg {
    commutant_of(s.n, &s.generators)
}

pub fn bicommutant(s: &MatrixAlg) -> MatrixAlg {
    commutant(&commutant(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;

    #[test]
    fn schur_extremes() {
        assert_eq!(commutant(&MatrixAlg::full(3)).dim(), 1);
        assert_eq!(commutant(&MatrixAlg::scalars(3)).dim(), 9);
        let d = MatrixAlg::diagonal(2);
        assert!(bicommutant(&d).same_span(&d));
        assert!(commutant(&d).same_span(&d));
        let s = MatrixAlg::scalars(4);
        assert!(bicommutant(&s).same_span(&s));
    }

    #[test]
    fn generation_and_validation() {
        let a = MatrixAlg::generated_by(2, vec![pauli::x(), pauli::z()]);
        assert_eq!(a.dim(), 4);
        let z = MatrixAlg::generated_by(2, vec![pauli::z()]);
        assert!(z.same_span(&MatrixAlg::diagonal(2)));
        assert!(MatrixAlg::from_basis(2, vec![Matrix::identity(2), pauli::x()]).is_ok());
        let upper = Matrix::unit(2, 0, 1);
        assert!(MatrixAlg::from_basis(2, vec![Matrix::identity(2), upper]).is_err());
        assert!(MatrixAlg::from_basis(2, vec![pauli::x()]).is_err());
    }

    #[test]
    fn commutant_of_tensor_factor() {
        let i2 = Matrix::identity(2);
        let a = MatrixAlg::generated_by(4, vec![pauli::x().kron(&i2), pauli::z().kron(&i2)]);
        let c = commutant(&a);
        assert_eq!(c.dim(), 4);
        assert!(c.contains(&i2.kron(&pauli::y())));
        assert!(c.generators().len() <= 3);
    }
}
