//! Levi-Civita connection, curvature and Ricci tensor of the left-invariant
//! metric for which the frame is orthonormal.
//!
//! Conventions: `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z`,
//! `R[i][j][k][l] = ⟨R(e_i,e_j)e_k, e_l⟩` and `Ric(e_j,e_k) = Σ_i R[i][j][k][i]`.
//! With these, the sectional curvature of the plane `(e_i,e_j)` is `R[i][j][j][i]`.

use crate::algebra::{StructureConstants, Vector};
use crate::error::Result;
use crate::scalar::Scalar;

/// `gamma[i][j][k] = ⟨∇_{e_i} e_j, e_k⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<T> {
    dim: usize,
    gamma: Vec<T>,
}

impl<T: Scalar> Connection<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// `∇_{e_i} e_j`.
    pub fn covariant(&self, i: usize, j: usize) -> Vector<T> {
        let base = (i * self.dim + j) * self.dim;
        Vector::new(self.gamma[base..base + self.dim].to_vec())
    }
}

/// Koszul formula for an orthonormal left-invariant frame:
/// `Γ[i][j][k] = ½ (c[i][j][k] − c[j][k][i] + c[k][i][j])`.
pub fn connection<T: Scalar>(a: &StructureConstants<T>) -> Result<Connection<T>> {
    a.ensure_valid()?;
    Ok(connection_unchecked(a))
}

pub(crate) fn connection_unchecked<T: Scalar>(a: &StructureConstants<T>) -> Connection<T> {
    let n = a.dim();
    let half = T::half();
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = a.get(i, j, k).clone() - a.get(j, k, i).clone() + a.get(k, i, j).clone();
                gamma.push(s * half.clone());
            }
        }
    }
    Connection { dim: n, gamma }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curvature<T> {
    dim: usize,
    r: Vec<T>,
}

impl<T: Scalar> Curvature<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &T {
        let n = self.dim;
        &self.r[((i * n + j) * n + k) * n + l]
    }

    /// Sectional curvature of the plane spanned by the orthonormal `e_i, e_j`.
    pub fn sectional(&self, i: usize, j: usize) -> T {
        self.get(i, j, j, i).clone()
    }
}

/// Full curvature array from the structure constants and their connection.
pub fn curvature<T: Scalar>(a: &StructureConstants<T>, gamma: &Connection<T>) -> Curvature<T> {
    let n = a.dim();
    let mut r = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = T::zero();
                    for m in 0..n {
                        let jk = gamma.get(j, k, m);
                        if !jk.is_zero() {
                            s = s + jk.clone() * gamma.get(i, m, l).clone();
                        }
                        let ik = gamma.get(i, k, m);
                        if !ik.is_zero() {
                            s = s - ik.clone() * gamma.get(j, m, l).clone();
                        }
                        let cij = a.get(i, j, m);
                        if !cij.is_zero() {
                            s = s - cij.clone() * gamma.get(m, k, l).clone();
                        }
                    }
                    r.push(s);
                }
            }
        }
    }
    Curvature { dim: n, r }
}

/// Symmetric Ricci matrix in the orthonormal frame. Since the frame is
/// orthonormal it is also the matrix of the Ricci operator.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciTensor<T> {
    dim: usize,
    ric: Vec<T>,
}

impl<T: Scalar> RicciTensor<T> {
    pub fn from_diagonal(diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut ric = vec![T::zero(); n * n];
        for (i, d) in diag.into_iter().enumerate() {
            ric[i * n + i] = d;
        }
        Self { dim: n, ric }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.ric[i * self.dim + j]
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.ric.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_negligible(tol)))
    }

    /// `Ric(u)` as an endomorphism.
    pub fn apply(&self, u: &Vector<T>) -> Vector<T> {
        Vector::new(
            (0..self.dim)
                .map(|i| {
                    (0..self.dim).fold(T::zero(), |acc, j| {
                        acc + self.get(i, j).clone() * u[j].clone()
                    })
                })
                .collect(),
        )
    }
}

pub fn ricci_from_curvature<T: Scalar>(r: &Curvature<T>) -> RicciTensor<T> {
    let n = r.dim();
    let mut ric = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            ric.push((0..n).fold(T::zero(), |acc, i| acc + r.get(i, j, k, i).clone()));
        }
    }
    RicciTensor { dim: n, ric }
}

pub fn ricci<T: Scalar>(a: &StructureConstants<T>) -> Result<RicciTensor<T>> {
    let gamma = connection(a)?;
    Ok(ricci_from_curvature(&curvature(a, &gamma)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use num_traits::Zero;

    fn e(n: usize, i: usize) -> Vector<Rational> {
        Vector::basis(n, i)
    }

    fn heisenberg() -> StructureConstants<Rational> {
        StructureConstants::from_brackets(3, [(0, 1, e(3, 2))]).unwrap()
    }

    fn so3() -> StructureConstants<Rational> {
        StructureConstants::from_brackets(3, [(0, 1, e(3, 2)), (1, 2, e(3, 0)), (2, 0, e(3, 1))])
            .unwrap()
    }

    #[test]
    fn abelian_is_flat() {
        let a = StructureConstants::<Rational>::zero(4);
        let g = connection(&a).unwrap();
        assert!((0..4).all(|i| (0..4).all(|j| g.covariant(i, j).is_negligible(0.0))));
        let r = curvature(&a, &g);
        assert!(r.r.iter().all(|x| x.is_zero()));
        assert!(ricci(&a).unwrap().ric.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn heisenberg_connection_values() {
        let g = connection(&heisenberg()).unwrap();
        assert_eq!(*g.get(0, 1, 2), rat(1, 2));
        assert_eq!(*g.get(0, 2, 1), rat(-1, 2));
        assert_eq!(*g.get(2, 0, 1), rat(-1, 2));
    }

    #[test]
    fn heisenberg_sectional_curvature() {
        let a = heisenberg();
        let r = curvature(&a, &connection(&a).unwrap());
        assert_eq!(r.sectional(0, 1), rat(-3, 4));
        assert_eq!(r.sectional(0, 2), rat(1, 4));
        assert_eq!(r.sectional(1, 2), rat(1, 4));
    }

    #[test]
    fn round_sphere_has_constant_curvature() {
        let a = so3();
        let r = curvature(&a, &connection(&a).unwrap());
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(r.sectional(i, j), rat(1, 4));
        }
        assert_eq!(
            ricci(&a).unwrap(),
            RicciTensor::from_diagonal(vec![rat(1, 2); 3])
        );
    }

    #[test]
    fn ricci_scales_quadratically() {
        let t = rat(3, 2);
        let ric = ricci(&so3().scaled(&t)).unwrap();
        assert_eq!(ric, RicciTensor::from_diagonal(vec![rat(9, 8); 3]));
    }

    #[test]
    fn sol_connection() {
        // [W, X_k] = α_k X_k with W = e0.
        let alphas = [rat(2, 1), rat(-1, 3)];
        let a = StructureConstants::from_brackets(
            3,
            alphas
                .iter()
                .enumerate()
                .map(|(k, al)| (0, k + 1, e(3, k + 1).scale(al))),
        )
        .unwrap();
        let g = connection(&a).unwrap();
        for (k, al) in alphas.iter().enumerate() {
            assert_eq!(*g.get(k + 1, k + 1, 0), al.clone());
            assert_eq!(*g.get(k + 1, 0, k + 1), -al.clone());
        }
        assert!((0..3).all(|j| g.covariant(0, j).is_negligible(0.0)));
    }

    #[test]
    fn invalid_algebra_rejected() {
        let bad = StructureConstants::from_brackets(
            3,
            [(0, 1, e(3, 1)), (0, 2, e(3, 2)), (1, 2, e(3, 0))],
        )
        .unwrap();
        assert!(connection(&bad).is_err());
        assert!(ricci(&bad).is_err());
    }
}
