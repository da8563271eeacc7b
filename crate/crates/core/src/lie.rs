//! Finite-dimensional Lie algebras given by structure constants over Q(i,√2).
//!
//! The two algebras of interest carry a fixed generator order chosen so that
//! the canonical Clifford expressions are already in normal form:
//! `an` with basis (H, E) and `sl2` with basis (E, H, F).

use crate::matrix::Matrix;
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("subalgebra is not closed under the bracket")]
    NotClosed,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    names: Vec<String>,
    // brackets[i][j] = coefficients of [X_i, X_j] over the basis
    brackets: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, brackets: Vec<Vec<Vec<Scalar>>>) -> Result<Self, LieError> {
        let n = names.len();
        assert_eq!(brackets.len(), n);
        for row in &brackets {
            assert_eq!(row.len(), n);
            for entry in row {
                assert_eq!(entry.len(), n);
            }
        }
        let g = LieAlgebra { names, brackets };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.brackets[i][j][k].clone() + self.brackets[j][i][k].clone();
                    if !lhs.is_zero() {
                        return Err(LieError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] = 0
                    let mut total = vec![Scalar::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket_basis(a, b);
                        for (m, coeff) in inner.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            let outer = self.bracket_basis(m, c);
                            for (t, o) in outer.iter().enumerate() {
                                total[t] += coeff * o;
                            }
                        }
                    }
                    if total.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The 2-dimensional solvable algebra with [H, E] = (1/√2) E.
    pub fn an() -> Self {
        let r = Scalar::inv_sqrt2();
        let z = Scalar::zero();
        LieAlgebra::new(
            vec!["H".into(), "E".into()],
            vec![
                vec![vec![z.clone(), z.clone()], vec![z.clone(), r.clone()]],
                vec![vec![z.clone(), -r], vec![z.clone(), z.clone()]],
            ],
        )
        .expect("an is a Lie algebra")
    }

    /// sl(2,R) with the orthonormal basis ordered (E, H, F):
    /// [H,E] = (1/√2)E, [H,F] = −(1/√2)F, [E,F] = (1/√2)H.
    pub fn sl2() -> Self {
        let names = vec!["E".to_string(), "H".to_string(), "F".to_string()];
        let n = 3;
        let mut brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
        let r = Scalar::inv_sqrt2();
        let (e, h, f) = (0, 1, 2);
        // [E,H] = -(1/√2)E
        brackets[e][h][e] = -r.clone();
        brackets[h][e][e] = r.clone();
        // [H,F] = -(1/√2)F
        brackets[h][f][f] = -r.clone();
        brackets[f][h][f] = r.clone();
        // [E,F] = (1/√2)H
        brackets[e][f][h] = r.clone();
        brackets[f][e][h] = -r;
        LieAlgebra::new(names, brackets).expect("sl2 is a Lie algebra")
    }

    /// The 1-dimensional algebra spanned by E (abelian).
    pub fn n_line() -> Self {
        LieAlgebra::new(vec!["E".into()], vec![vec![vec![Scalar::zero()]]])
            .expect("abelian line is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize, LieError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| LieError::UnknownGenerator(name.to_string()))
    }

    /// Coefficients of [X_i, X_j] over the basis.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brackets[i][j]
    }

    /// Bracket of arbitrary coefficient vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let coeff = &x[i] * &y[j];
                for k in 0..n {
                    let c = &self.brackets[i][j][k];
                    if !c.is_zero() {
                        out[k] += &coeff * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(X_i) on the algebra itself (columns indexed by basis).
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |row, col| self.brackets[i][col][row].clone())
    }

    /// Checks that the listed basis indices span a subalgebra.
    pub fn check_subalgebra(&self, indices: &[usize]) -> Result<(), LieError> {
        for &i in indices {
            for &j in indices {
                let b = self.bracket_basis(i, j);
                for (k, c) in b.iter().enumerate() {
                    if !c.is_zero() && !indices.contains(&k) {
                        return Err(LieError::NotClosed);
                    }
                }
            }
        }
        Ok(())
    }
}
