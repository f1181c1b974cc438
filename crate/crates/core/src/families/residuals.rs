//! Residuals of the polynomial constraint systems equivalent to the Jacobi
//! identity for the normalized form.
//!
//! For `λ ≠ 0` the representation property forces `a = b = 0`; the remaining
//! Jacobi equations are the 2×2 matrix system on `(z₁, z₂, z₃, z₄)` followed
//! by the Case A or Case B relations. For `λ = 0` the Jacobi identity is
//! equivalent to the 4×2 quadratic matrix system together with the 4-vector
//! `θ` system; when also `r = 0` the symmetric system is reported as well.

use super::params::Params4D;
use crate::scalar::{max_abs, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSystem<T> {
    pub name: &'static str,
    pub values: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSet<T> {
    pub systems: Vec<ResidualSystem<T>>,
}

impl<T: Scalar> ResidualSet<T> {
    pub fn is_zero(&self, tol: f64) -> bool {
        self.first_nonzero(tol).is_none()
    }

    /// Name of the first system with a non-negligible entry.
    pub fn first_nonzero(&self, tol: f64) -> Option<&'static str> {
        self.systems
            .iter()
            .find(|s| s.values.iter().any(|v| !v.is_negligible(tol)))
            .map(|s| s.name)
    }

    pub fn get(&self, name: &str) -> Option<&ResidualSystem<T>> {
        self.systems.iter().find(|s| s.name == name)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(self.systems.iter().flat_map(|s| &s.values))
    }
}

pub const DERIVED_ADJOINT: &str = "derived-adjoint";
pub const VERTICAL_MATRIX: &str = "vertical-matrix";
pub const CASE_A: &str = "case-a";
pub const CASE_B: &str = "case-b";
pub const QUADRATIC_MATRIX: &str = "quadratic-matrix";
pub const THETA_SYSTEM: &str = "theta-system";
pub const SYMMETRIC_SYSTEM: &str = "symmetric-system";

pub fn constraint_residuals<T: Scalar>(p: &Params4D<T>) -> ResidualSet<T> {
    let Params4D {
        lambda,
        alpha,
        beta,
        a,
        b,
        r,
        z1,
        z2,
        z3,
        z4,
        w1,
        w2,
        theta1,
        theta2,
    } = p.clone();
    let two = T::from_i64(2);
    let mut systems = Vec::new();

    if !p.is_negligible(&lambda) {
        // ℋad_W|ℋ = [ℋad_Z|ℋ, ℋad_W|ℋ]/λ vanishes since co(ℋ) is abelian.
        systems.push(ResidualSystem {
            name: DERIVED_ADJOINT,
            values: vec![a, b],
        });
        // [[β, λ−α], [λ−α, −β]] · [[z₁, z₄], [z₂, −z₃]], row-major.
        let d = lambda.clone() - alpha.clone();
        systems.push(ResidualSystem {
            name: VERTICAL_MATRIX,
            values: vec![
                beta.clone() * z1.clone() + d.clone() * z2.clone(),
                beta.clone() * z4.clone() - d.clone() * z3.clone(),
                d.clone() * z1.clone() - beta.clone() * z2.clone(),
                d.clone() * z4.clone() + beta.clone() * z3.clone(),
            ],
        });
        let case_a = d.clone() * d + beta.clone() * beta.clone();
        if !p.is_negligible(&case_a) {
            systems.push(ResidualSystem {
                name: CASE_A,
                values: vec![
                    theta1,
                    r.clone() * alpha.clone(),
                    r.clone() * beta,
                    theta2 * (lambda + two * alpha) - r * w1,
                ],
            });
        } else {
            systems.push(ResidualSystem {
                name: CASE_B,
                values: vec![
                    z1,
                    z3,
                    z4,
                    theta1,
                    z2.clone() + r,
                    lambda * theta2 + z2 * w1,
                ],
            });
        }
        return ResidualSet { systems };
    }

    // −2 M P − r S with M = [[z₁,w₁],[z₂,w₂],[z₃,−z₁],[z₄,−z₂]],
    // P = [[α,β],[a,b]], S = [[β,α],[α,−β],[b,a],[a,−b]].
    let m = [
        [z1.clone(), w1.clone()],
        [z2.clone(), w2.clone()],
        [z3.clone(), -z1.clone()],
        [z4.clone(), -z2.clone()],
    ];
    let pm = [[alpha.clone(), beta.clone()], [a.clone(), b.clone()]];
    let s = [
        [beta.clone(), alpha.clone()],
        [alpha.clone(), -beta.clone()],
        [b.clone(), a.clone()],
        [a.clone(), -b.clone()],
    ];
    let mut top = Vec::with_capacity(8);
    for (mi, si) in m.iter().zip(&s) {
        for col in 0..2 {
            let mp = mi[0].clone() * pm[0][col].clone() + mi[1].clone() * pm[1][col].clone();
            top.push(-(two.clone() * mp) - r.clone() * si[col].clone());
        }
    }
    systems.push(ResidualSystem {
        name: QUADRATIC_MATRIX,
        values: top,
    });
    systems.push(ResidualSystem {
        name: THETA_SYSTEM,
        values: vec![
            -(a.clone() * theta2.clone()) - alpha.clone() * theta1.clone(),
            z3.clone() * w2.clone()
                - z4.clone() * w1.clone()
                - two.clone() * a.clone() * theta2.clone()
                - r.clone() * z1.clone(),
            two.clone() * (z2.clone() * z3.clone() - z1.clone() * z4.clone())
                - two.clone() * a.clone() * theta1.clone()
                + r.clone() * z3.clone(),
            two.clone() * (z1.clone() * w2.clone() - z2.clone() * w1.clone())
                - two.clone() * alpha.clone() * theta2.clone()
                + r.clone() * w1.clone(),
        ],
    });
    if p.is_negligible(&r) {
        let mut sym = Vec::with_capacity(12);
        let zs = [&z1, &z2, &z3, &z4];
        let rhs_left = [
            -(a.clone() * w1.clone()),
            -(a.clone() * w2.clone()),
            a.clone() * z1.clone(),
            a.clone() * z2.clone(),
        ];
        let rhs_right = [
            -(b.clone() * w1.clone()),
            -(b.clone() * w2.clone()),
            b.clone() * z1.clone(),
            b.clone() * z2.clone(),
        ];
        for k in 0..4 {
            sym.push(alpha.clone() * zs[k].clone() - rhs_left[k].clone());
            sym.push(beta.clone() * zs[k].clone() - rhs_right[k].clone());
        }
        sym.push(-(a.clone() * theta2.clone()) - alpha.clone() * theta1.clone());
        sym.push(
            z3.clone() * w2.clone() - z4.clone() * w1.clone() - two * a.clone() * theta2.clone(),
        );
        sym.push(z2.clone() * z3.clone() - z1.clone() * z4.clone() - a * theta1);
        sym.push(z1 * w2 - z2 * w1 - alpha * theta2);
        systems.push(ResidualSystem {
            name: SYMMETRIC_SYSTEM,
            values: sym,
        });
    }
    ResidualSet { systems }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn zero_params_have_zero_residuals() {
        let res = constraint_residuals(&Params4D::<Rational>::zero());
        assert!(res.is_zero(0.0));
        assert!(res.get(SYMMETRIC_SYSTEM).is_some());
    }

    #[test]
    fn vertical_matrix_first_column() {
        // λ=1, α=0, β=1, z₁=1: column one of the product is (β z₁, (λ−α) z₁) = (1, 1).
        let mut p = Params4D::<Rational>::zero();
        p.lambda = rat(1, 1);
        p.beta = rat(1, 1);
        p.z1 = rat(1, 1);
        let res = constraint_residuals(&p);
        let m = &res.get(VERTICAL_MATRIX).unwrap().values;
        assert_eq!((m[0].clone(), m[2].clone()), (rat(1, 1), rat(1, 1)));
        assert_eq!(res.first_nonzero(0.0), Some(VERTICAL_MATRIX));
    }

    #[test]
    fn branch_selection() {
        let mut p = Params4D::<Rational>::zero();
        p.lambda = rat(2, 1);
        p.alpha = rat(2, 1);
        assert!(constraint_residuals(&p).get(CASE_B).is_some());
        p.beta = rat(1, 1);
        assert!(constraint_residuals(&p).get(CASE_A).is_some());
        p.lambda = rat(0, 1);
        p.r = rat(1, 1);
        let res = constraint_residuals(&p);
        assert!(res.get(QUADRATIC_MATRIX).is_some() && res.get(SYMMETRIC_SYSTEM).is_none());
    }

    #[test]
    fn nonabelian_vertical_forbids_horizontal_part_of_ad_w() {
        let mut p = Params4D::<Rational>::zero();
        p.lambda = rat(1, 1);
        p.a = rat(1, 3);
        assert_eq!(
            constraint_residuals(&p).first_nonzero(0.0),
            Some(DERIVED_ADJOINT)
        );
    }
}
