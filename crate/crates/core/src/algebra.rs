//! Finite-dimensional algebras given by structure constants, and their
//! modules given by explicit action matrices.
//!
//! An algebra of dimension n over F_p is a table c with
//! b_i * b_j = sum_k c[i][j][k] b_k together with a unit vector. A module of
//! dimension d assigns to each basis element b_i a d x d matrix rho_i, acting
//! on column vectors, with rho a unital homomorphism:
//! rho_i * rho_j = sum_k c[i][j][k] rho_k and rho(unit) = id.
//!
//! We use the left-action convention throughout. The bundled algebras are
//! commutative (truncated polynomial rings), where the left/right distinction
//! is immaterial; nothing downstream depends on the side, only on the
//! intertwiner equations.
//!
//! Modules deliberately do not hold a back-pointer to their algebra: all the
//! categorical machinery works purely with action-matrix lists, and keeping
//! modules as plain data makes them cheap to key, cache, and compare.

use crate::field::Fp;
use crate::mat::Matrix;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constant table has wrong shape at index ({0}, {1})")]
    TableShape(usize, usize),
    #[error("unit vector has length {0}, expected {1}")]
    UnitShape(usize, usize),
    #[error("associativity fails at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    BadUnit(usize),
    #[error("module has {0} action matrices, algebra has dimension {1}")]
    ActionCount(usize, usize),
    #[error("action matrix {0} is {1}x{2}, expected {3}x{3}")]
    ActionShape(usize, usize, usize, usize),
    #[error("module action violates rho_{0} * rho_{1} = rho(b_{0} b_{1})")]
    ActionProduct(usize, usize),
    #[error("unit does not act as the identity")]
    UnitAction,
    #[error("field mismatch between algebra and module")]
    FieldMismatch,
}

/// A finite-dimensional associative unital F_p-algebra, by structure constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Algebra {
    field: Fp,
    dim: usize,
    /// c[i][j][k]: coefficient of b_k in b_i * b_j.
    constants: Vec<Vec<Vec<u32>>>,
    /// Coefficients of the unit in the basis.
    unit: Vec<u32>,
}

impl Algebra {
    /// Validates shapes, associativity, and the unit laws before exposing the
    /// algebra to the rest of the engine.
    pub fn new(
        field: Fp,
        constants: Vec<Vec<Vec<u32>>>,
        unit: Vec<u32>,
    ) -> Result<Self, AlgebraError> {
        let dim = constants.len();
        for (i, row) in constants.iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraError::TableShape(i, row.len()));
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != dim {
                    return Err(AlgebraError::TableShape(i, j));
                }
            }
        }
        if unit.len() != dim {
            return Err(AlgebraError::UnitShape(unit.len(), dim));
        }
        let a = Algebra {
            field,
            dim,
            constants: constants
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|e| e.into_iter().map(|x| field.reduce(x as u64)).collect())
                        .collect()
                })
                .collect(),
            unit: unit.into_iter().map(|x| field.reduce(x as u64)).collect(),
        };
        a.check_associative()?;
        a.check_unit()?;
        Ok(a)
    }

    /// F_p[x] / (x^n) with basis 1, x, ..., x^(n-1). Commutative, local, and
    /// self-injective, which makes it the workhorse test algebra.
    pub fn truncated_polynomial(p: u64, n: usize) -> Result<Self, AlgebraError> {
        let field = Fp::new(p).map_err(|_| AlgebraError::FieldMismatch)?;
        assert!(n >= 1, "need at least the constants");
        let mut constants = vec![vec![vec![0u32; n]; n]; n];
        for (i, row) in constants.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if i + j < n {
                    entry[i + j] = 1;
                }
            }
        }
        let mut unit = vec![0u32; n];
        unit[0] = 1;
        Algebra::new(field, constants, unit)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn constants(&self) -> &[Vec<Vec<u32>>] {
        &self.constants
    }

    /// Product of two coefficient vectors.
    pub fn mul_elements(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let xy = f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(xy, self.constants[i][j][k]));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by b_i on the algebra itself:
    /// column j holds the coefficients of b_i * b_j.
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                m.set(k, j, self.constants[i][j][k]);
            }
        }
        m
    }

    /// Matrix of right multiplication by b_i: column k holds b_k * b_i.
    pub fn right_mult_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for k in 0..self.dim {
            for l in 0..self.dim {
                m.set(l, k, self.constants[k][i][l]);
            }
        }
        m
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular_module(&self) -> Module {
        let actions = (0..self.dim).map(|i| self.left_mult_matrix(i)).collect();
        Module::new(self.field, self.dim, actions)
    }

    /// The linear dual D(A) = Hom(A, F_p) with action (a . f)(x) = f(x a),
    /// so rho_i = (right multiplication by b_i)^T. For a self-injective
    /// algebra this is an injective cogenerator isomorphic to a direct sum of
    /// the same indecomposables as the regular module.
    pub fn dual_regular_module(&self) -> Module {
        let actions = (0..self.dim)
            .map(|i| self.right_mult_matrix(i).transpose())
            .collect();
        Module::new(self.field, self.dim, actions)
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let mut basis = vec![vec![0u32; self.dim]; self.dim];
        for (i, b) in basis.iter_mut().enumerate() {
            b[i] = 1;
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul_elements(&basis[i], &basis[j]);
                for k in 0..self.dim {
                    let jk = self.mul_elements(&basis[j], &basis[k]);
                    let left = self.mul_elements(&ij, &basis[k]);
                    let right = self.mul_elements(&basis[i], &jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        for j in 0..self.dim {
            let mut e = vec![0u32; self.dim];
            e[j] = 1;
            if self.mul_elements(&self.unit, &e) != e || self.mul_elements(&e, &self.unit) != e {
                return Err(AlgebraError::BadUnit(j));
            }
        }
        Ok(())
    }

    /// Checks that `m` is a unital representation of this algebra.
    pub fn validate_module(&self, m: &Module) -> Result<(), AlgebraError> {
        if m.field() != self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        if m.actions().len() != self.dim {
            return Err(AlgebraError::ActionCount(m.actions().len(), self.dim));
        }
        for (i, a) in m.actions().iter().enumerate() {
            if a.rows() != m.dim() || a.cols() != m.dim() {
                return Err(AlgebraError::ActionShape(i, a.rows(), a.cols(), m.dim()));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = m.action(i).mul(m.action(j));
                let mut rhs = Matrix::zeros(self.field, m.dim(), m.dim());
                for k in 0..self.dim {
                    let c = self.constants[i][j][k];
                    if c != 0 {
                        rhs = rhs.add(&m.action(k).scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(AlgebraError::ActionProduct(i, j));
                }
            }
        }
        if !m.action_of(&self.unit).is_identity() {
            return Err(AlgebraError::UnitAction);
        }
        Ok(())
    }
}

/// A module, given by one action matrix per algebra basis element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Module {
    field: Fp,
    dim: usize,
    actions: Vec<Matrix>,
}

impl Module {
    pub fn new(field: Fp, dim: usize, actions: Vec<Matrix>) -> Self {
        Module { field, dim, actions }
    }

    /// The zero module over an algebra of the given dimension.
    pub fn zero(field: Fp, algebra_dim: usize) -> Self {
        Module {
            field,
            dim: 0,
            actions: (0..algebra_dim).map(|_| Matrix::zeros(field, 0, 0)).collect(),
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero_dim(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    /// Action of a general element with the given coefficient vector.
    pub fn action_of(&self, coeffs: &[u32]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action(i).scale(c));
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Module) -> Module {
        assert_eq!(self.field, other.field);
        assert_eq!(self.actions.len(), other.actions.len());
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Module::new(self.field, self.dim + other.dim, actions)
    }

    /// Direct sum of a whole list (empty list gives the zero module).
    pub fn direct_sum_of(field: Fp, algebra_dim: usize, parts: &[Arc<Module>]) -> Module {
        let mut acc = Module::zero(field, algebra_dim);
        for p in parts {
            acc = acc.direct_sum(p);
        }
        acc
    }

    /// Deterministic cache key: field, dimension, and all action entries.
    pub fn key(&self) -> Vec<u32> {
        let mut k = vec![self.field.p(), self.dim as u32, self.actions.len() as u32];
        for a in &self.actions {
            k.extend_from_slice(a.entries());
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_algebras_validate() {
        for (p, n) in [(2u64, 2usize), (2, 4), (3, 3), (5, 2)] {
            let a = Algebra::truncated_polynomial(p, n).unwrap();
            assert_eq!(a.dim(), n);
            let reg = a.regular_module();
            a.validate_module(&reg).unwrap();
            let dual = a.dual_regular_module();
            a.validate_module(&dual).unwrap();
        }
    }

    #[test]
    fn broken_constants_are_rejected() {
        // Unit laws hold, but b_1 b_1 = b_2, b_1 b_2 = 1, b_2 b_1 = 0 gives
        // (b_1 b_1) b_1 = 0 while b_1 (b_1 b_1) = 1.
        let f = Fp::new(3).unwrap();
        let e = |k: usize| -> Vec<u32> {
            let mut v = vec![0u32; 3];
            v[k] = 1;
            v
        };
        let zero = vec![0u32; 3];
        let bad = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), e(0)],
            vec![e(2), zero.clone(), zero],
        ];
        let err = Algebra::new(f, bad, vec![1, 0, 0]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAssociative(..)));
    }

    #[test]
    fn non_representation_is_rejected() {
        let a = Algebra::truncated_polynomial(2, 2).unwrap();
        let f = a.field();
        // x acting as identity is not a representation: x^2 = 0 must act as 0.
        let m = Module::new(f, 1, vec![Matrix::identity(f, 1), Matrix::identity(f, 1)]);
        assert!(matches!(
            a.validate_module(&m),
            Err(AlgebraError::ActionProduct(1, 1))
        ));
    }

    #[test]
    fn zero_module_and_direct_sum() {
        let a = Algebra::truncated_polynomial(2, 2).unwrap();
        let z = Module::zero(a.field(), a.dim());
        a.validate_module(&z).unwrap();
        let reg = a.regular_module();
        let s = reg.direct_sum(&z).direct_sum(&reg);
        a.validate_module(&s).unwrap();
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn keys_distinguish_modules() {
        let a = Algebra::truncated_polynomial(2, 4).unwrap();
        let reg = a.regular_module();
        let dual = a.dual_regular_module();
        assert_eq!(reg.key(), reg.clone().key());
        // Same dimensions, different action entries.
        assert_ne!(reg.key(), dual.key());
    }
}
