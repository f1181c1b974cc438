//! Rotating a 4-dimensional conformal-minimal splitting into the normalized
//! frame `(X, Y, Z, W)`.

use super::params::Params4D;
use crate::algebra::{StructureConstants, Vector};
use crate::error::{Error, Result};
use crate::foliation::{analyze, Split};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Normalization<T> {
    pub params: Params4D<T>,
    /// New frame vectors `X', Y', Z', W'` in the original coordinates.
    pub frame: Vec<Vector<T>>,
    /// The algebra in the new frame; equals `assemble(&params)`.
    pub algebra: StructureConstants<T>,
}

fn combo<T: Scalar>(n: usize, i: usize, ci: T, j: usize, cj: T) -> Vector<T> {
    let mut v = vec![T::zero(); n];
    v[i] = ci;
    v[j] = cj;
    Vector::new(v)
}

/// Chooses `W'` along the derived line of `𝒱` (when nonabelian) with the
/// sign of `Z'` making `λ > 0`, and `X'` along the horizontal part of `[Y, X]`
/// by an orientation-preserving rotation so that `r ≥ 0`. Already normalized
/// input with `λ ≥ 0`, `r ≥ 0` is returned unchanged.
pub fn normalize_frame<T: Scalar>(
    a: &StructureConstants<T>,
    split: &Split,
) -> Result<Normalization<T>> {
    if a.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: a.dim(),
        });
    }
    if split.vertical().len() != 2 {
        return Err(Error::MalformedSplit(
            "normalization needs a 2-dimensional vertical distribution".into(),
        ));
    }
    let report = analyze(a, split)?;
    if !report.vertical_integrable {
        return Err(Error::Hypothesis(
            "vertical distribution is not integrable".into(),
        ));
    }
    if !report.conformal {
        return Err(Error::Hypothesis("foliation is not conformal".into()));
    }
    if !report.minimal {
        return Err(Error::Hypothesis("leaves are not minimal".into()));
    }

    let n = 4;
    let (h0, h1) = (split.horizontal()[0], split.horizontal()[1]);
    let (v0, v1) = (split.vertical()[0], split.vertical()[1]);
    let tol = a.tolerance();

    let u = a.bracket(&Vector::basis(n, v0), &Vector::basis(n, v1))?;
    let (p, q) = (u[v0].clone(), u[v1].clone());
    let (z_new, w_new) = if u.is_negligible(tol) {
        (Vector::basis(n, v0), Vector::basis(n, v1))
    } else {
        let norm = (p.clone() * p.clone() + q.clone() * q.clone())
            .sqrt_checked()
            .ok_or(Error::IrrationalRotation)?;
        let (mut p, mut q) = (p / norm.clone(), q / norm);
        if q.is_negative() || (q.is_negligible(tol) && p.is_negative()) {
            p = -p;
            q = -q;
        }
        let w_new = combo(n, v0, p.clone(), v1, q.clone());
        let mut z_new = combo(n, v0, q, v1, -p);
        let lambda = a.bracket(&w_new, &z_new)?.dot(&w_new);
        if lambda.is_negative() {
            z_new = -&z_new;
        }
        (z_new, w_new)
    };

    let s = a.get(h1, h0, h0).clone();
    let t = a.get(h1, h0, h1).clone();
    let (x_new, y_new) = if s.is_negligible(tol) && t.is_negligible(tol) {
        (Vector::basis(n, h0), Vector::basis(n, h1))
    } else {
        let norm = (s.clone() * s.clone() + t.clone() * t.clone())
            .sqrt_checked()
            .ok_or(Error::IrrationalRotation)?;
        let (c, sn) = (s / norm.clone(), t / norm);
        (
            combo(n, h0, c.clone(), h1, sn.clone()),
            combo(n, h0, -sn, h1, c),
        )
    };

    let frame = vec![x_new, y_new, z_new, w_new];
    let algebra = a.change_frame(&frame)?;
    let params = Params4D::from_normal_form(&algebra)?;
    Ok(Normalization {
        params,
        frame,
        algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::catalog::{family, FamilyId};
    use crate::families::params::{assemble, W, Z};
    use crate::scalar::{rat, Rational};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n, 1)).collect()
    }

    fn rotate_horizontal<T: Scalar>(
        a: &StructureConstants<T>,
        c: T,
        s: T,
    ) -> StructureConstants<T> {
        let frame = vec![
            combo(4, 0, c.clone(), 1, s.clone()),
            combo(4, 0, -s, 1, c),
            Vector::basis(4, 2),
            Vector::basis(4, 3),
        ];
        a.change_frame(&frame).unwrap()
    }

    #[test]
    fn normalized_input_is_unchanged() {
        let p = family(FamilyId::G2, &ints(&[2, 1, 3, -1, 4])).unwrap();
        let norm = normalize_frame(&assemble(&p), &Split::standard_4d()).unwrap();
        assert_eq!(norm.params, p);
        let identity: Vec<_> = (0..4).map(|i| Vector::basis(4, i)).collect();
        assert_eq!(norm.frame, identity);
    }

    #[test]
    fn recovers_r_after_pythagorean_rotation() {
        let p = family(FamilyId::G1, &ints(&[1, 3, 1, 2])).unwrap();
        let rotated = rotate_horizontal(&assemble(&p), rat(3, 5), rat(4, 5));
        assert_ne!(rotated, assemble(&p));
        let norm = normalize_frame(&rotated, &Split::standard_4d()).unwrap();
        assert_eq!(norm.params.r, rat(3, 1));
        assert_eq!(norm.params.lambda, rat(1, 1));
        assert_eq!(norm.algebra, assemble(&norm.params));
    }

    #[test]
    fn recovers_r_after_thirty_degree_rotation() {
        let p = family(FamilyId::G1, &ints(&[1, 1, 1, 0])).unwrap();
        let approx = assemble(&p).to_approx();
        let (s, c) = std::f64::consts::FRAC_PI_6.sin_cos();
        let rotated = rotate_horizontal(&approx, c, s);
        let norm = normalize_frame(&rotated, &Split::standard_4d()).unwrap();
        assert!((norm.params.r - 1.0).abs() < 1e-12);
        assert!((norm.params.theta2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derived_line_of_nonabelian_vertical() {
        // [Z,W] = Z + W: W' = (Z+W)/√2 and λ = √2.
        let v = Vector::new(vec![0.0, 0.0, 1.0, 1.0]);
        let a = StructureConstants::from_brackets(4, [(Z, W, v)]).unwrap();
        let norm = normalize_frame(&a, &Split::standard_4d()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((norm.frame[3][2] - h).abs() < 1e-12 && (norm.frame[3][3] - h).abs() < 1e-12);
        assert!((norm.params.lambda - 2f64.sqrt()).abs() < 1e-12);
        // Exactly irrational in rational arithmetic.
        let exact =
            StructureConstants::from_brackets(4, [(Z, W, Vector::new(ints(&[0, 0, 1, 1])))])
                .unwrap();
        assert_eq!(
            normalize_frame(&exact, &Split::standard_4d()),
            Err(Error::IrrationalRotation)
        );
        // [Z,W] = 3Z + 4W has a rational derived direction.
        let exact =
            StructureConstants::from_brackets(4, [(Z, W, Vector::new(ints(&[0, 0, 3, 4])))])
                .unwrap();
        assert_eq!(
            normalize_frame(&exact, &Split::standard_4d())
                .unwrap()
                .params
                .lambda,
            rat(5, 1)
        );
    }

    #[test]
    fn negative_lambda_and_r_are_flipped() {
        let p = family(FamilyId::G1, &ints(&[-2, -3, 1, 1])).unwrap();
        let norm = normalize_frame(&assemble(&p), &Split::standard_4d()).unwrap();
        assert_eq!(norm.params.lambda, rat(2, 1));
        assert_eq!(norm.params.r, rat(3, 1));
    }

    #[test]
    fn hypotheses_are_checked() {
        // [Z,X] = Z gives trace B^𝒱 ≠ 0.
        let a = StructureConstants::from_brackets(4, [(Z, 0, Vector::<Rational>::basis(4, Z))])
            .unwrap();
        assert!(matches!(
            normalize_frame(&a, &Split::standard_4d()),
            Err(Error::Hypothesis(_))
        ));
        let three = Split::new(4, [1, 2, 3]).unwrap();
        assert!(matches!(
            normalize_frame(&StructureConstants::<Rational>::zero(4), &three),
            Err(Error::MalformedSplit(_))
        ));
    }
}
