//! Case A–F decision tree over residual-free normalized parameters.

use std::fmt;

use super::catalog::{family, FamilyId, FamilyInstance};
use super::params::Params4D;
use super::residuals::constraint_residuals;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// `λ ≠ 0`, `(λ−α)² + β² ≠ 0`.
    A,
    /// `λ ≠ 0`, `α = λ`, `β = 0`.
    B,
    /// `λ = 0`, `r ≠ 0`, `aβ − αb ≠ 0`.
    C,
    /// `λ = 0`, `r ≠ 0`, `aβ − αb = 0`.
    D,
    /// `λ = 0`, `r = 0`, `αb − aβ ≠ 0`.
    E,
    /// `λ = 0`, `r = 0`, `αb − aβ = 0`.
    F,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Branch quantities evaluated on the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Discriminants<T> {
    pub lambda: T,
    /// `(λ − α)² + β²`
    pub case_ab: T,
    pub r: T,
    /// `aβ − αb`
    pub det: T,
    /// Nonzero pattern of `Λ = (α, a, β, b)`.
    pub pattern: [bool; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseTag<T> {
    pub case: Case,
    pub discriminants: Discriminants<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<T> {
    pub tag: CaseTag<T>,
    /// Family and recovered parameters. `swapped` marks a mirror pattern that
    /// was mapped onto its representative by `Z ↔ W`.
    pub family: FamilyInstance<T>,
}

pub fn discriminants<T: Scalar>(p: &Params4D<T>) -> Discriminants<T> {
    let d = p.lambda.clone() - p.alpha.clone();
    let nz = |x: &T| !p.is_negligible(x);
    Discriminants {
        lambda: p.lambda.clone(),
        case_ab: d.clone() * d + p.beta.clone() * p.beta.clone(),
        r: p.r.clone(),
        det: p.a.clone() * p.beta.clone() - p.alpha.clone() * p.b.clone(),
        pattern: [nz(&p.alpha), nz(&p.a), nz(&p.beta), nz(&p.b)],
    }
}

pub fn classify<T: Scalar>(p: &Params4D<T>) -> Result<Classification<T>> {
    if let Some(name) = constraint_residuals(p).first_nonzero(p.tolerance()) {
        return Err(Error::ResidualsNonzero(name));
    }
    let disc = discriminants(p);
    let nz = |x: &T| !p.is_negligible(x);
    use FamilyId::*;

    let (case, id, swapped) = if nz(&disc.lambda) {
        if nz(&disc.case_ab) {
            let id = if nz(&p.r) {
                G1
            } else if nz(&p.theta2) {
                G3
            } else {
                G2
            };
            (Case::A, id, false)
        } else {
            (Case::B, G4, false)
        }
    } else if nz(&disc.r) {
        if nz(&disc.det) {
            (Case::C, G5, false)
        } else {
            let id = if nz(&p.z1) {
                G6
            } else if nz(&p.w1) {
                G7
            } else if !nz(&p.z3) {
                G8
            } else {
                G9
            };
            (Case::D, id, false)
        }
    } else if nz(&disc.det) {
        (Case::E, G10, false)
    } else {
        let (id, swapped) = match disc.pattern {
            [false, false, false, false] => {
                let id = if nz(&p.z1) {
                    G11
                } else if nz(&p.w1) {
                    G12
                } else if nz(&p.z3) {
                    G13
                } else {
                    G14
                };
                (id, false)
            }
            [true, false, false, false] => (G15, false),
            [false, true, false, false] => (G15, true),
            [false, false, true, false] => (G16, false),
            [false, false, false, true] => (G16, true),
            [true, true, false, false] => (G17, false),
            [false, false, true, true] => (G18, false),
            [true, false, true, false] => (G19, false),
            [false, true, false, true] => (G19, true),
            [true, true, true, true] => (G20, false),
            pattern => {
                return Err(Error::ClassificationGap(format!(
                    "Case F with Λ-pattern {pattern:?} matches no family"
                )))
            }
        };
        (Case::F, id, swapped)
    };

    let target = if swapped {
        p.swap_vertical()?
    } else {
        p.clone()
    };
    let params = id
        .param_names()
        .iter()
        .map(|n| target.get(n).cloned())
        .collect::<Result<Vec<T>>>()?;
    let rebuilt = family(id, &params).map_err(|e| {
        Error::ClassificationGap(format!(
            "branch {case}/{id} rejects recovered parameters: {e}"
        ))
    })?;
    if !rebuilt.approx_eq(&target) {
        return Err(Error::ClassificationGap(format!(
            "branch {case}/{id} does not reproduce the parameters"
        )));
    }
    Ok(Classification {
        tag: CaseTag {
            case,
            discriminants: disc,
        },
        family: FamilyInstance {
            id,
            params,
            swapped,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n, 1)).collect()
    }

    #[test]
    fn abelian_is_g14() {
        let c = classify(&Params4D::<Rational>::zero()).unwrap();
        assert_eq!(c.tag.case, Case::F);
        assert_eq!(c.family.id, FamilyId::G14);
        assert!(c.family.params.iter().all(|x| *x == rat(0, 1)));
    }

    #[test]
    fn g3_is_case_a() {
        let p = family(FamilyId::G3, &ints(&[1, 2, 0, 1, 3])).unwrap();
        let c = classify(&p).unwrap();
        assert_eq!((c.tag.case, c.family.id), (Case::A, FamilyId::G3));
        assert_eq!(c.family.params, ints(&[1, 2, 0, 1, 3]));
    }

    #[test]
    fn g5_round_trip() {
        let vals = ints(&[1, 1, 0, 1, 2]);
        let c = classify(&family(FamilyId::G5, &vals).unwrap()).unwrap();
        assert_eq!((c.tag.case, c.family.id), (Case::C, FamilyId::G5));
        assert_eq!(c.family.params, vals);
        assert_eq!(c.tag.discriminants.det, rat(-1, 1));
    }

    #[test]
    fn mirror_pattern_is_flagged() {
        let inst = FamilyInstance::new(FamilyId::G16, ints(&[3, 1, -1, 2, 0]))
            .unwrap()
            .mirrored()
            .unwrap();
        let c = classify(&inst.params4d().unwrap()).unwrap();
        assert_eq!(c.family, inst);
        assert_eq!(c.tag.discriminants.pattern, [false, false, false, true]);
    }

    #[test]
    fn non_solutions_are_rejected() {
        let mut p = Params4D::<Rational>::zero();
        p.lambda = rat(1, 1);
        p.beta = rat(1, 1);
        p.z1 = rat(1, 1);
        assert!(matches!(classify(&p), Err(Error::ResidualsNonzero(_))));
    }

    #[test]
    fn g8_with_zero_r_routes_to_g14() {
        let mut p = Params4D::<Rational>::zero();
        p.z2 = rat(1, 1);
        p.w2 = rat(2, 1);
        p.theta1 = rat(3, 1);
        assert!(family(FamilyId::G8, &ints(&[1, 0, 2, 0, 3, 0])).is_err());
        assert_eq!(classify(&p).unwrap().family.id, FamilyId::G14);
    }
}
