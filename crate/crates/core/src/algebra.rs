//! Finite-dimensional algebras given by structure constants in a fixed
//! orthonormal frame.

use std::ops::{Add, Index, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{default_tolerance, max_abs, Scalar};

/// Coordinates of an algebra element in the orthonormal frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![T::zero(); dim])
    }

    /// The `i`-th frame vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn scale(&self, s: &T) -> Self {
        Self(self.0.iter().map(|x| x.clone() * s.clone()).collect())
    }

    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "dot product of unequal dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.0.iter().all(|x| x.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.0)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "sum of unequal dimensions");
        Vector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "difference of unequal dimensions");
        Vector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

/// Antisymmetric array `c[i][j][k]`, the coefficient of `e_k` in `[e_i, e_j]`.
///
/// Antisymmetry is enforced at construction; the Jacobi identity is not
/// (see [`StructureConstants::validate`]). Equality compares the entries
/// only, not the zero threshold.
#[derive(Clone, Debug)]
pub struct StructureConstants<T> {
    dim: usize,
    c: Vec<T>,
    tolerance: f64,
}

impl<T: PartialEq> PartialEq for StructureConstants<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.c == other.c
    }
}

/// Jacobi residual on one basis triple.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiResidual<T> {
    pub triple: (usize, usize, usize),
    pub residual: Vector<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<T> {
    pub antisymmetry_violations: Vec<(usize, usize, usize)>,
    /// Largest absolute jacobiator component over all basis triples `i<j<k`.
    pub max_residual: T,
    /// The triple attaining `max_residual`, when it is nonzero.
    pub worst: Option<JacobiResidual<T>>,
    pub valid: bool,
}

impl<T: Scalar> StructureConstants<T> {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// The abelian algebra of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            c: vec![T::zero(); dim * dim * dim],
            tolerance: default_tolerance(0.0),
        }
    }

    /// Builds from a full `dim³` array, rejecting non-antisymmetric data.
    pub fn from_array(dim: usize, c: Vec<T>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: c.len(),
            });
        }
        let tolerance = default_tolerance(max_abs(&c));
        let a = Self { dim, c, tolerance };
        if let Some(&(i, j, k)) = a.antisymmetry_violations().first() {
            return Err(Error::Antisymmetry { i, j, k });
        }
        Ok(a)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> T) -> Result<Self> {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c.push(f(i, j, k));
                }
            }
        }
        Self::from_array(dim, c)
    }

    /// Builds from bracket relations `[e_i, e_j] = v`; the antisymmetric
    /// partner is filled in. A pair given twice must agree.
    pub fn from_brackets<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector<T>)>,
    {
        let mut c = vec![T::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, v) in brackets {
            for index in [i, j] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            if i == j {
                if let Some(k) = v.coords().iter().position(|x| !x.is_zero()) {
                    return Err(Error::Antisymmetry { i, j, k });
                }
                continue;
            }
            let (lo, hi, v) = if i < j { (i, j, v) } else { (j, i, -&v) };
            let base = (lo * dim + hi) * dim;
            if seen[lo * dim + hi] {
                if c[base..base + dim] != *v.coords() {
                    return Err(Error::BracketConflict { i: lo, j: hi });
                }
                continue;
            }
            seen[lo * dim + hi] = true;
            for (k, x) in v.into_coords().into_iter().enumerate() {
                c[(hi * dim + lo) * dim + k] = -x.clone();
                c[base + k] = x;
            }
        }
        Self::from_array(dim, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[self.idx(i, j, k)]
    }

    pub fn entries(&self) -> &[T] {
        &self.c
    }

    /// Zero threshold: always 0 in exact arithmetic, otherwise
    /// `1e-9 (1 + max |c|)` unless overridden.
    pub fn tolerance(&self) -> f64 {
        if T::EXACT {
            0.0
        } else {
            self.tolerance
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn is_negligible(&self, x: &T) -> bool {
        x.is_negligible(self.tolerance())
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.c)
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|x| self.is_negligible(x))
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector<T> {
        let base = self.idx(i, j, 0);
        Vector(self.c[base..base + self.dim].to_vec())
    }

    fn check_dim(&self, v: &Vector<T>) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, u: &Vector<T>, v: &Vector<T>) -> Result<Vector<T>> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for (i, ui) in u.0.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.0.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                if i == j {
                    continue;
                }
                let coeff = ui.clone() * vj.clone();
                let base = self.idx(i, j, 0);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[base + k];
                    if !c.is_zero() {
                        *o = o.clone() + coeff.clone() * c.clone();
                    }
                }
            }
        }
        Ok(Vector(out))
    }

    /// Matrix of `ad_u` in the frame: `m[k][j]` is the `e_k` coefficient of `[u, e_j]`.
    pub fn ad_matrix(&self, u: &Vector<T>) -> Result<Vec<Vec<T>>> {
        self.check_dim(u)?;
        let n = self.dim;
        let mut m = vec![vec![T::zero(); n]; n];
        for j in 0..n {
            let col = self.bracket(u, &Vector::basis(n, j))?;
            for (k, row) in m.iter_mut().enumerate() {
                row[j] = col[k].clone();
            }
        }
        Ok(m)
    }

    /// `[[u,v],w] + [[w,u],v] + [[v,w],u]`.
    pub fn jacobiator(&self, u: &Vector<T>, v: &Vector<T>, w: &Vector<T>) -> Result<Vector<T>> {
        let a = self.bracket(&self.bracket(u, v)?, w)?;
        let b = self.bracket(&self.bracket(w, u)?, v)?;
        let c = self.bracket(&self.bracket(v, w)?, u)?;
        Ok(&(&a + &b) + &c)
    }

    fn antisymmetry_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let tol = self.tolerance();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.get(i, j, k).clone() + self.get(j, i, k).clone();
                    if !s.is_negligible(tol) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity on all basis triples.
    pub fn validate(&self) -> ValidationReport<T> {
        let n = self.dim;
        let antisymmetry_violations = self.antisymmetry_violations();
        let mut max_residual = T::zero();
        let mut worst = None;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let residual = self
                        .jacobiator(
                            &Vector::basis(n, i),
                            &Vector::basis(n, j),
                            &Vector::basis(n, k),
                        )
                        .expect("basis vectors match the dimension");
                    let m = residual
                        .coords()
                        .iter()
                        .map(|x| x.abs())
                        .fold(T::zero(), |a, b| if b > a { b } else { a });
                    if m > max_residual {
                        max_residual = m;
                        worst = Some(JacobiResidual {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        let valid = antisymmetry_violations.is_empty() && self.is_negligible(&max_residual);
        ValidationReport {
            antisymmetry_violations,
            max_residual,
            worst,
            valid,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.valid {
            return Ok(());
        }
        if let Some(&(i, j, k)) = report.antisymmetry_violations.first() {
            return Err(Error::Antisymmetry { i, j, k });
        }
        let triple = report.worst.map(|w| w.triple).unwrap_or((0, 0, 0));
        Err(Error::InvalidAlgebra { triple })
    }

    /// Structure constants in a new orthonormal frame whose vectors are the
    /// rows of `frame` (given in old coordinates).
    pub fn change_frame(&self, frame: &[Vector<T>]) -> Result<Self> {
        let n = self.dim;
        if frame.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: frame.len(),
            });
        }
        for f in frame {
            self.check_dim(f)?;
        }
        let tol = default_tolerance(1.0);
        for (a, fa) in frame.iter().enumerate() {
            for (b, fb) in frame.iter().enumerate() {
                let expected = if a == b { T::one() } else { T::zero() };
                if !(fa.dot(fb) - expected).is_negligible(tol) {
                    return Err(Error::NonOrthonormalFrame);
                }
            }
        }
        let mut c = Vec::with_capacity(n * n * n);
        for fa in frame {
            for fb in frame {
                let ab = self.bracket(fa, fb)?;
                for fc in frame {
                    c.push(ab.dot(fc));
                }
            }
        }
        let rotated = Self::from_array(n, c)?;
        Ok(Self {
            tolerance: self.tolerance.max(rotated.tolerance),
            ..rotated
        })
    }

    /// Same bracket scaled by `t`.
    pub fn scaled(&self, t: &T) -> Self {
        Self {
            dim: self.dim,
            c: self.c.iter().map(|x| x.clone() * t.clone()).collect(),
            tolerance: default_tolerance(self.max_abs() * t.to_f64().abs()),
        }
    }

    /// Converts the scalar type, e.g. exact to approximate.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StructureConstants<U> {
        let c: Vec<U> = self.c.iter().map(f).collect();
        StructureConstants {
            dim: self.dim,
            tolerance: default_tolerance(max_abs(&c)),
            c,
        }
    }

    pub fn to_approx(&self) -> StructureConstants<f64> {
        self.map(|x| x.to_f64())
    }
}
