//! The twenty families of 4-dimensional Lie algebras carrying a
//! left-invariant conformal foliation with minimal leaves of codimension 2.

use std::fmt;
use std::str::FromStr;

use super::classify::Case;
use super::params::Params4D;
use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar, APPROX_RELATIVE_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
    G10,
    G11,
    G12,
    G13,
    G14,
    G15,
    G16,
    G17,
    G18,
    G19,
    G20,
}

use FamilyId::*;

impl FamilyId {
    pub const ALL: [FamilyId; 20] = [
        G1, G2, G3, G4, G5, G6, G7, G8, G9, G10, G11, G12, G13, G14, G15, G16, G17, G18, G19, G20,
    ];

    /// 1-based index, `g1 → 1`.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    /// Free parameters, in the order of the family's signature.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            G1 => &["lambda", "r", "w1", "w2"],
            G2 => &["lambda", "alpha", "beta", "w1", "w2"],
            G3 => &["alpha", "beta", "w1", "w2", "theta2"],
            G4 => &["lambda", "z2", "w1", "w2"],
            G5 => &["alpha", "a", "beta", "b", "r"],
            G6 => &["z1", "z2", "z3", "r", "theta1", "theta2"],
            G7 => &["z2", "w1", "w2", "theta1", "theta2"],
            G8 => &["z2", "z4", "w2", "r", "theta1", "theta2"],
            G9 => &["z2", "z3", "z4", "theta1", "theta2"],
            G10 => &["alpha", "a", "beta", "b"],
            G11 => &["z1", "z2", "z3", "w1", "theta1", "theta2"],
            G12 => &["z3", "w1", "w2", "theta1", "theta2"],
            G13 => &["z3", "z4", "theta1", "theta2"],
            G14 => &["z2", "z4", "w2", "theta1", "theta2"],
            G15 => &["alpha", "w1", "w2"],
            G16 => &["beta", "w1", "w2", "theta1", "theta2"],
            G17 => &["alpha", "a", "w1", "w2"],
            G18 => &["beta", "b", "z3", "z4", "theta1", "theta2"],
            G19 => &["alpha", "beta", "w1", "w2"],
            G20 => &["alpha", "a", "beta", "w1", "w2"],
        }
    }

    pub fn case(self) -> Case {
        match self {
            G1 | G2 | G3 => Case::A,
            G4 => Case::B,
            G5 => Case::C,
            G6 | G7 | G8 | G9 => Case::D,
            G10 => Case::E,
            _ => Case::F,
        }
    }

    /// Families whose Λ-pattern has a mirror image under `Z ↔ W`.
    pub fn has_mirror(self) -> bool {
        matches!(self, G15 | G16 | G19)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.number())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n: usize = s
            .strip_prefix('g')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))?;
        n.checked_sub(1)
            .and_then(|i| Self::ALL.get(i).copied())
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family member: the family, its free parameter values, and whether the
/// mirror image under `Z ↔ W` is meant.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyInstance<T> {
    pub id: FamilyId,
    pub params: Vec<T>,
    pub swapped: bool,
}

impl<T: Scalar> FamilyInstance<T> {
    pub fn new(id: FamilyId, params: Vec<T>) -> Result<Self> {
        family(id, &params)?;
        Ok(Self {
            id,
            params,
            swapped: false,
        })
    }

    pub fn mirrored(mut self) -> Result<Self> {
        if !self.id.has_mirror() {
            return Err(Error::FamilyConstraint {
                family: self.id.to_string(),
                constraint: "has no Z↔W mirror variant".into(),
            });
        }
        self.swapped = !self.swapped;
        Ok(self)
    }

    pub fn params4d(&self) -> Result<Params4D<T>> {
        let p = family(self.id, &self.params)?;
        if self.swapped {
            p.swap_vertical()
        } else {
            Ok(p)
        }
    }

    pub fn named_params(&self) -> impl Iterator<Item = (&'static str, &T)> {
        self.id.param_names().iter().copied().zip(&self.params)
    }
}

struct Args<'a, T> {
    id: FamilyId,
    values: &'a [T],
    tol: f64,
}

impl<T: Scalar> Args<'_, T> {
    fn get(&self, name: &str) -> T {
        let k = self
            .id
            .param_names()
            .iter()
            .position(|n| *n == name)
            .expect("name belongs to the family signature");
        self.values[k].clone()
    }

    fn violation(&self, constraint: &str) -> Error {
        Error::FamilyConstraint {
            family: self.id.to_string(),
            constraint: constraint.to_string(),
        }
    }

    fn require_nonzero(&self, value: &T, constraint: &str) -> Result<()> {
        if value.is_negligible(self.tol) {
            Err(self.violation(constraint))
        } else {
            Ok(())
        }
    }

    fn nonzero(&self, name: &str) -> Result<T> {
        let v = self.get(name);
        self.require_nonzero(&v, &format!("{name} ≠ 0"))?;
        Ok(v)
    }
}

/// Full normalized parameters of a family member; derived entries are filled
/// in from the family's relations.
pub fn family<T: Scalar>(id: FamilyId, values: &[T]) -> Result<Params4D<T>> {
    let names = id.param_names();
    if values.len() != names.len() {
        return Err(Error::FamilyArity {
            family: id.to_string(),
            expected: names.len(),
            found: values.len(),
        });
    }
    let tol = if T::EXACT {
        0.0
    } else {
        let m = 1.0 + max_abs(values);
        APPROX_RELATIVE_TOLERANCE * m * m
    };
    let args = Args { id, values, tol };
    let v = |name: &str| args.get(name);
    let two = T::from_i64(2);
    let mut p = Params4D::zero();
    match id {
        G1 => {
            let lambda = args.nonzero("lambda")?;
            let r = args.nonzero("r")?;
            p.theta2 = r.clone() * v("w1") / lambda.clone();
            p.lambda = lambda;
            p.r = r;
            p.w1 = v("w1");
            p.w2 = v("w2");
        }
        G2 => {
            let lambda = args.nonzero("lambda")?;
            let (alpha, beta) = (v("alpha"), v("beta"));
            let d = lambda.clone() - alpha.clone();
            args.require_nonzero(
                &(d.clone() * d + beta.clone() * beta.clone()),
                "(lambda - alpha)² + beta² ≠ 0",
            )?;
            p.lambda = lambda;
            p.alpha = alpha;
            p.beta = beta;
            p.w1 = v("w1");
            p.w2 = v("w2");
        }
        G3 => {
            let alpha = args.nonzero("alpha")?;
            p.theta2 = args.nonzero("theta2")?;
            p.lambda = -(two * alpha.clone());
            p.alpha = alpha;
            p.beta = v("beta");
            p.w1 = v("w1");
            p.w2 = v("w2");
        }
        G4 => {
            let lambda = args.nonzero("lambda")?;
            let z2 = v("z2");
            p.alpha = lambda.clone();
            p.r = -z2.clone();
            p.theta2 = -(z2.clone() * v("w1")) / lambda.clone();
            p.lambda = lambda;
            p.z2 = z2;
            p.w1 = v("w1");
            p.w2 = v("w2");
        }
        G5 => {
            let r = args.nonzero("r")?;
            let (alpha, a, beta, b) = (v("alpha"), v("a"), v("beta"), v("b"));
            let det = a.clone() * beta.clone() - alpha.clone() * b.clone();
            args.require_nonzero(&det, "a·beta − alpha·b ≠ 0")?;
            let k = r.clone() / (two.clone() * det.clone());
            p.z1 = k.clone() * (beta.clone() * b.clone() - alpha.clone() * a.clone());
            p.w1 = k.clone() * (alpha.clone() * alpha.clone() - beta.clone() * beta.clone());
            p.z2 = k.clone() * (alpha.clone() * b.clone() + beta.clone() * a.clone());
            p.w2 = -(k.clone() * two.clone() * alpha.clone() * beta.clone());
            p.z3 = k.clone() * (b.clone() * b.clone() - a.clone() * a.clone());
            p.z4 = k * two.clone() * a.clone() * b.clone();
            let r2 = r.clone() * r.clone() / (two * det);
            p.theta1 = -(a.clone() * r2.clone());
            p.theta2 = alpha.clone() * r2;
            p.alpha = alpha;
            p.a = a;
            p.beta = beta;
            p.b = b;
            p.r = r;
        }
        G6 => {
            let z1 = args.nonzero("z1")?;
            let z3 = args.nonzero("z3")?;
            let r = args.nonzero("r")?;
            let z2 = v("z2");
            p.z4 = z3.clone() * (r.clone() + two.clone() * z2.clone()) / (two.clone() * z1.clone());
            p.w1 = -(z1.clone() * z1.clone()) / z3.clone();
            p.w2 = z1.clone() * (r.clone() - two.clone() * z2.clone()) / (two * z3.clone());
            // Case relation z₁² + w₁z₃ = 0 with both sides nonzero.
            let rel = z1.clone() * z1.clone() + p.w1.clone() * z3.clone();
            if !rel.is_negligible(tol) {
                return Err(args.violation("z1² + w1·z3 = 0"));
            }
            p.z1 = z1;
            p.z2 = z2;
            p.z3 = z3;
            p.r = r;
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G7 => {
            p.z2 = args.nonzero("z2")?;
            p.w1 = args.nonzero("w1")?;
            p.r = two * p.z2.clone();
            p.w2 = v("w2");
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G8 => {
            p.r = args.nonzero("r")?;
            p.z2 = v("z2");
            p.z4 = v("z4");
            p.w2 = v("w2");
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G9 => {
            p.z2 = args.nonzero("z2")?;
            p.z3 = args.nonzero("z3")?;
            p.r = -(two * p.z2.clone());
            p.z4 = v("z4");
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G10 => {
            let (alpha, a, beta, b) = (v("alpha"), v("a"), v("beta"), v("b"));
            let det = alpha.clone() * b.clone() - a.clone() * beta.clone();
            args.require_nonzero(&det, "alpha·b − a·beta ≠ 0")?;
            p.alpha = alpha;
            p.a = a;
            p.beta = beta;
            p.b = b;
        }
        G11 => {
            let z1 = args.nonzero("z1")?;
            let (z2, z3, w1) = (v("z2"), v("z3"), v("w1"));
            p.w2 = z2.clone() * w1.clone() / z1.clone();
            p.z4 = z2.clone() * z3.clone() / z1.clone();
            p.z1 = z1;
            p.z2 = z2;
            p.z3 = z3;
            p.w1 = w1;
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G12 => {
            let w1 = args.nonzero("w1")?;
            let (z3, w2) = (v("z3"), v("w2"));
            p.z4 = z3.clone() * w2.clone() / w1.clone();
            p.z3 = z3;
            p.w1 = w1;
            p.w2 = w2;
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G13 => {
            p.z3 = args.nonzero("z3")?;
            p.z4 = v("z4");
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G14 => {
            p.z2 = v("z2");
            p.z4 = v("z4");
            p.w2 = v("w2");
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G15 => {
            p.alpha = args.nonzero("alpha")?;
            p.w1 = v("w1");
            p.w2 = v("w2");
        }
        G16 => {
            p.beta = args.nonzero("beta")?;
            p.w1 = v("w1");
            p.w2 = v("w2");
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G17 | G20 => {
            let alpha = args.nonzero("alpha")?;
            let a = args.nonzero("a")?;
            let (w1, w2) = (v("w1"), v("w2"));
            let ratio = a.clone() / alpha.clone();
            p.z1 = -(ratio.clone() * w1.clone());
            p.z2 = -(ratio.clone() * w2.clone());
            p.z3 = -(ratio.clone() * ratio.clone() * w1.clone());
            p.z4 = -(ratio.clone() * ratio.clone() * w2.clone());
            if id == G20 {
                let beta = args.nonzero("beta")?;
                p.b = beta.clone() * ratio;
                p.beta = beta;
            }
            p.alpha = alpha;
            p.a = a;
            p.w1 = w1;
            p.w2 = w2;
        }
        G18 => {
            let beta = args.nonzero("beta")?;
            let b = args.nonzero("b")?;
            let (z3, z4) = (v("z3"), v("z4"));
            let ratio = beta.clone() / b.clone();
            p.z1 = ratio.clone() * z3.clone();
            p.z2 = ratio.clone() * z4.clone();
            p.w1 = -(ratio.clone() * ratio.clone() * z3.clone());
            p.w2 = -(ratio.clone() * ratio * z4.clone());
            p.beta = beta;
            p.b = b;
            p.z3 = z3;
            p.z4 = z4;
            p.theta1 = v("theta1");
            p.theta2 = v("theta2");
        }
        G19 => {
            p.alpha = args.nonzero("alpha")?;
            p.beta = args.nonzero("beta")?;
            p.w1 = v("w1");
            p.w2 = v("w2");
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vector;
    use crate::families::params::{assemble, W, X, Y, Z};
    use crate::scalar::{rat, Rational};

    fn q(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n, 1)).collect()
    }

    fn v4(c: [i64; 4]) -> Vector<Rational> {
        Vector::new(c.iter().map(|&n| rat(n, 1)).collect())
    }

    #[test]
    fn ids_parse_and_display() {
        for id in FamilyId::ALL {
            assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
        assert!("g0".parse::<FamilyId>().is_err());
        assert!("g21".parse::<FamilyId>().is_err());
        assert!("G1".parse::<FamilyId>().is_err());
    }

    #[test]
    fn g1_derives_theta2() {
        // λ[Y,X] = λrX + rw₁W with λ = r = w₁ = 1.
        let p = family(G1, &ints(&[1, 1, 1, 0])).unwrap();
        assert_eq!(p.theta2, rat(1, 1));
        let a = assemble(&p);
        assert_eq!(a.bracket_basis(W, Z), v4([0, 0, 0, 1]));
        assert_eq!(a.bracket_basis(Z, X), v4([0, 0, 0, 1]));
        assert_eq!(a.bracket_basis(Y, X), v4([1, 0, 0, 1]));
    }

    #[test]
    fn g2_bracket() {
        let a = assemble(&family(G2, &ints(&[1, 1, 2, 3, 0])).unwrap());
        assert_eq!(a.bracket_basis(Z, X), v4([1, 2, 0, 3]));
    }

    #[test]
    fn g4_brackets() {
        let a = assemble(&family(G4, &ints(&[1, 2, 0, 0])).unwrap());
        assert_eq!(a.bracket_basis(W, Z), v4([0, 0, 0, 1]));
        assert_eq!(a.bracket_basis(Z, X), v4([1, 0, 0, 0]));
        assert_eq!(a.bracket_basis(Z, Y), v4([0, 1, 2, 0]));
        assert_eq!(a.bracket_basis(W, Y), v4([0, 0, 0, -2]));
        assert_eq!(a.bracket_basis(Y, X), v4([-2, 0, 0, 0]));
    }

    #[test]
    fn g5_derived_entries() {
        // aβ − αb = −1 and r/(2(aβ−αb)) = −1; the values satisfy Jacobi
        // (checked independently in the integration tests).
        let p = family(G5, &ints(&[1, 1, 0, 1, 2])).unwrap();
        assert_eq!(
            [&p.z1, &p.w1, &p.z2, &p.w2, &p.z3, &p.z4, &p.theta1, &p.theta2],
            ints(&[1, -1, -1, 0, 0, -2, 2, -2])
                .iter()
                .collect::<Vec<_>>()
                .as_slice()
        );
        assert!(assemble(&p).validate().valid);
    }

    #[test]
    fn g17_derived_entries() {
        let p = family(G17, &ints(&[1, 2, 1, 0])).unwrap();
        assert_eq!((p.z1.clone(), p.z3.clone()), (rat(-2, 1), rat(-4, 1)));
        assert_eq!((p.z2.clone(), p.z4.clone()), (rat(0, 1), rat(0, 1)));
        assert_eq!((p.theta1, p.theta2), (rat(0, 1), rat(0, 1)));
    }

    #[test]
    fn g6_case_relation() {
        let p = family(G6, &q(&[(1, 2), (1, 3), (-2, 1), (1, 1), (0, 1), (5, 1)])).unwrap();
        assert_eq!(
            p.z1.clone() * p.z1.clone() + p.w1.clone() * p.z3.clone(),
            rat(0, 1)
        );
        assert!(assemble(&p).validate().valid);
    }

    #[test]
    fn constraint_violations_are_named() {
        let err = family(G6, &ints(&[0, 1, 1, 1, 0, 0])).unwrap_err();
        assert_eq!(
            err,
            Error::FamilyConstraint {
                family: "g6".into(),
                constraint: "z1 ≠ 0".into()
            }
        );
        assert!(family(G5, &ints(&[1, 1, 1, 1, 1])).is_err()); // aβ − αb = 0
        assert!(family(G2, &ints(&[1, 1, 0, 0, 0])).is_err()); // Case B point
        assert!(family(G10, &ints(&[1, 2, 1, 2])).is_err());
        assert!(matches!(
            family(G1, &ints(&[1, 1])),
            Err(Error::FamilyArity {
                expected: 4,
                found: 2,
                ..
            })
        ));
    }

    #[test]
    fn mirror_variant_only_for_mirrored_families() {
        let inst = FamilyInstance::new(G15, ints(&[2, 1, 0])).unwrap();
        let m = inst.clone().mirrored().unwrap();
        let p = m.params4d().unwrap();
        assert_eq!((p.alpha.clone(), p.a.clone()), (rat(0, 1), rat(2, 1)));
        assert!(FamilyInstance::new(G17, ints(&[1, 1, 1, 1]))
            .unwrap()
            .mirrored()
            .is_err());
    }

    #[test]
    fn every_default_instance_is_a_lie_algebra() {
        // Parameters 1..=k avoid every degeneracy except g2's Case B point.
        for id in FamilyId::ALL {
            let n = id.param_names().len() as i64;
            let vals: Vec<Rational> = (1..=n).map(|k| rat(k + 1, 1)).collect();
            let p = family(id, &vals).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(assemble(&p).validate().valid, "{id}");
        }
    }
}
