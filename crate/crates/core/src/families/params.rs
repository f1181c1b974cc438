use crate::algebra::{StructureConstants, Vector};
use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar, APPROX_RELATIVE_TOLERANCE};

/// Frame order of the normalized 4-dimensional form: `ℋ = {X, Y}`, `𝒱 = {Z, W}`.
pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const W: usize = 3;

pub const FRAME_LABELS: [&str; 4] = ["X", "Y", "Z", "W"];

pub const PARAM_NAMES: [&str; 14] = [
    "lambda", "alpha", "beta", "a", "b", "r", "z1", "z2", "z3", "z4", "w1", "w2", "theta1",
    "theta2",
];

/// Structure constants of the normalized bracket form
///
/// ```text
/// [W,Z] = λW
/// [Z,X] = αX + βY + z₁Z + w₁W
/// [Z,Y] = −βX + αY + z₂Z + w₂W
/// [W,X] = aX + bY + z₃Z − z₁W
/// [W,Y] = −bX + aY + z₄Z − z₂W
/// [Y,X] = rX + θ₁Z + θ₂W
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct Params4D<T> {
    pub lambda: T,
    pub alpha: T,
    pub beta: T,
    pub a: T,
    pub b: T,
    pub r: T,
    pub z1: T,
    pub z2: T,
    pub z3: T,
    pub z4: T,
    pub w1: T,
    pub w2: T,
    pub theta1: T,
    pub theta2: T,
}

impl<T: Scalar> Params4D<T> {
    pub fn zero() -> Self {
        let z = T::zero;
        Self {
            lambda: z(),
            alpha: z(),
            beta: z(),
            a: z(),
            b: z(),
            r: z(),
            z1: z(),
            z2: z(),
            z3: z(),
            z4: z(),
            w1: z(),
            w2: z(),
            theta1: z(),
            theta2: z(),
        }
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        Ok(match name {
            "lambda" => &self.lambda,
            "alpha" => &self.alpha,
            "beta" => &self.beta,
            "a" => &self.a,
            "b" => &self.b,
            "r" => &self.r,
            "z1" => &self.z1,
            "z2" => &self.z2,
            "z3" => &self.z3,
            "z4" => &self.z4,
            "w1" => &self.w1,
            "w2" => &self.w2,
            "theta1" => &self.theta1,
            "theta2" => &self.theta2,
            _ => return Err(Error::UnknownParameter(name.to_string())),
        })
    }

    pub fn get_mut(&mut self, name: &str) -> Result<&mut T> {
        Ok(match name {
            "lambda" => &mut self.lambda,
            "alpha" => &mut self.alpha,
            "beta" => &mut self.beta,
            "a" => &mut self.a,
            "b" => &mut self.b,
            "r" => &mut self.r,
            "z1" => &mut self.z1,
            "z2" => &mut self.z2,
            "z3" => &mut self.z3,
            "z4" => &mut self.z4,
            "w1" => &mut self.w1,
            "w2" => &mut self.w2,
            "theta1" => &mut self.theta1,
            "theta2" => &mut self.theta2,
            _ => return Err(Error::UnknownParameter(name.to_string())),
        })
    }

    pub fn set(&mut self, name: &str, value: T) -> Result<()> {
        *self.get_mut(name)? = value;
        Ok(())
    }

    /// `(name, value)` pairs in [`PARAM_NAMES`] order.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &T)> {
        PARAM_NAMES
            .iter()
            .map(move |&n| (n, self.get(n).expect("known name")))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(self.iter().map(|(_, v)| v))
    }

    /// Zero threshold for expressions up to quadratic in the parameters.
    pub fn tolerance(&self) -> f64 {
        if T::EXACT {
            0.0
        } else {
            let m = 1.0 + self.max_abs();
            APPROX_RELATIVE_TOLERANCE * m * m
        }
    }

    pub fn is_negligible(&self, x: &T) -> bool {
        x.is_negligible(self.tolerance())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        let tol = self.tolerance().max(other.tolerance());
        self.iter()
            .zip(other.iter())
            .all(|((_, x), (_, y))| (x.clone() - y.clone()).is_negligible(tol))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Params4D<U> {
        let mut out = Params4D::zero();
        for (name, v) in self.iter() {
            out.set(name, f(v)).expect("known name");
        }
        out
    }

    /// Exchange of the vertical frame vectors `Z ↔ W`, which maps the
    /// normalized form to itself when `λ = 0`:
    /// `α↔a, β↔b, z₁→−z₁, w₁↔z₃, z₂→−z₂, w₂↔z₄, θ₁↔θ₂`.
    pub fn swap_vertical(&self) -> Result<Self> {
        if !self.is_negligible(&self.lambda) {
            return Err(Error::Hypothesis(
                "Z↔W exchange preserves the normal form only when λ = 0".into(),
            ));
        }
        Ok(Self {
            lambda: T::zero(),
            alpha: self.a.clone(),
            beta: self.b.clone(),
            a: self.alpha.clone(),
            b: self.beta.clone(),
            r: self.r.clone(),
            z1: -self.z1.clone(),
            z2: -self.z2.clone(),
            z3: self.w1.clone(),
            z4: self.w2.clone(),
            w1: self.z3.clone(),
            w2: self.z4.clone(),
            theta1: self.theta2.clone(),
            theta2: self.theta1.clone(),
        })
    }

    /// Reads the parameters off structure constants given in the frame
    /// `(X, Y, Z, W)`; fails unless the bracket has exactly the normalized form.
    pub fn from_normal_form(a: &StructureConstants<T>) -> Result<Self> {
        if a.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: a.dim(),
            });
        }
        let c = |i, j, k| a.get(i, j, k).clone();
        let p = Self {
            lambda: c(W, Z, W),
            alpha: c(Z, X, X),
            beta: c(Z, X, Y),
            a: c(W, X, X),
            b: c(W, X, Y),
            r: c(Y, X, X),
            z1: c(Z, X, Z),
            z2: c(Z, Y, Z),
            z3: c(W, X, Z),
            z4: c(W, Y, Z),
            w1: c(Z, X, W),
            w2: c(Z, Y, W),
            theta1: c(Y, X, Z),
            theta2: c(Y, X, W),
        };
        let rebuilt = assemble(&p);
        let tol = a.tolerance().max(p.tolerance());
        let matches = a
            .entries()
            .iter()
            .zip(rebuilt.entries())
            .all(|(x, y)| (x.clone() - y.clone()).is_negligible(tol));
        if !matches {
            return Err(Error::Hypothesis(
                "bracket is not in the normalized conformal-minimal form".into(),
            ));
        }
        Ok(p)
    }
}

fn vec4<T: Scalar>(x: &T, y: &T, z: &T, w: &T) -> Vector<T> {
    Vector::new(vec![x.clone(), y.clone(), z.clone(), w.clone()])
}

/// Structure constants of the normalized form in frame order `(X, Y, Z, W)`.
pub fn assemble<T: Scalar>(p: &Params4D<T>) -> StructureConstants<T> {
    let zero = T::zero();
    let neg = |x: &T| -x.clone();
    let brackets = [
        (W, Z, vec4(&zero, &zero, &zero, &p.lambda)),
        (Z, X, vec4(&p.alpha, &p.beta, &p.z1, &p.w1)),
        (Z, Y, vec4(&neg(&p.beta), &p.alpha, &p.z2, &p.w2)),
        (W, X, vec4(&p.a, &p.b, &p.z3, &neg(&p.z1))),
        (W, Y, vec4(&neg(&p.b), &p.a, &p.z4, &neg(&p.z2))),
        (Y, X, vec4(&p.r, &zero, &p.theta1, &p.theta2)),
    ];
    StructureConstants::from_brackets(4, brackets).expect("six distinct pairs in dimension 4")
}
