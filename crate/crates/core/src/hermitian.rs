//! Adapted almost Hermitian structures and their Nijenhuis tensors.

use crate::algebra::{StructureConstants, Vector};
use crate::error::{Error, Result};
use crate::families::Params4D;
use crate::foliation::Split;
use crate::scalar::{default_tolerance, max_abs, Scalar};

/// Orthogonal `J` with `J² = −Id`, stored column-wise in the sense that
/// `J e_col = Σ_row m[row][col] e_row`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostComplexStructure<T> {
    m: Vec<Vec<T>>,
}

impl<T: Scalar> AlmostComplexStructure<T> {
    pub fn new(m: Vec<Vec<T>>) -> Result<Self> {
        let n = m.len();
        if n == 0 || n % 2 == 1 || m.iter().any(|row| row.len() != n) {
            return Err(Error::NotAlmostComplex(
                "matrix must be square of even size".into(),
            ));
        }
        let tol = matrix_tolerance(&m);
        for i in 0..n {
            for j in 0..n {
                let mut sq = T::zero();
                let mut gram = T::zero();
                for (k, row) in m.iter().enumerate() {
                    sq = sq + m[i][k].clone() * row[j].clone();
                    gram = gram + row[i].clone() * row[j].clone();
                }
                let id = if i == j { T::one() } else { T::zero() };
                if !(sq + id.clone()).is_negligible(tol) {
                    return Err(Error::NotAlmostComplex("J² ≠ −Id".into()));
                }
                if !(gram - id).is_negligible(tol) {
                    return Err(Error::NotAlmostComplex("J is not orthogonal".into()));
                }
            }
        }
        Ok(Self { m })
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.m
    }

    pub fn apply(&self, v: &Vector<T>) -> Vector<T> {
        Vector::new(
            self.m
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(v.coords())
                        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            m: self
                .m
                .iter()
                .map(|row| row.iter().map(|x| -x.clone()).collect())
                .collect(),
        }
    }
}

fn matrix_tolerance<T: Scalar>(m: &[Vec<T>]) -> f64 {
    if T::EXACT {
        0.0
    } else {
        default_tolerance(max_abs(m.iter().flatten()))
    }
}

/// The two structures adapted to a 4-dimensional split with sorted frames
/// `(X, Y)` on `ℋ` and `(Z, W)` on `𝒱`: `J₁` sends `X→Y, Z→W` and `J₂`
/// sends `X→Y, W→Z`.
pub fn adapted_structures<T: Scalar>(
    split: &Split,
) -> Result<(AlmostComplexStructure<T>, AlmostComplexStructure<T>)> {
    if split.dim() != 4 || split.vertical().len() != 2 {
        return Err(Error::MalformedSplit(
            "adapted structures need dim 4 with two vertical directions".into(),
        ));
    }
    let (x, y) = (split.horizontal()[0], split.horizontal()[1]);
    let (z, w) = (split.vertical()[0], split.vertical()[1]);
    let build = |sign: i64| {
        let mut m = vec![vec![T::zero(); 4]; 4];
        m[y][x] = T::one();
        m[x][y] = -T::one();
        m[w][z] = T::from_i64(sign);
        m[z][w] = T::from_i64(-sign);
        AlmostComplexStructure { m }
    };
    Ok((build(1), build(-1)))
}

/// `N(e_i, e_j)` for all basis pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisTensor<T> {
    dim: usize,
    values: Vec<Vector<T>>,
}

impl<T: Scalar> NijenhuisTensor<T> {
    pub fn get(&self, i: usize, j: usize) -> &Vector<T> {
        &self.values[i * self.dim + j]
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(Vector::max_abs).fold(0.0, f64::max)
    }
}

/// `N(U,V) = [JU,JV] − J[JU,V] − J[U,JV] − [U,V]`.
pub fn nijenhuis_pair<T: Scalar>(
    a: &StructureConstants<T>,
    j: &AlmostComplexStructure<T>,
    u: &Vector<T>,
    v: &Vector<T>,
) -> Result<Vector<T>> {
    let (ju, jv) = (j.apply(u), j.apply(v));
    let t1 = a.bracket(&ju, &jv)?;
    let t2 = j.apply(&a.bracket(&ju, v)?);
    let t3 = j.apply(&a.bracket(u, &jv)?);
    let t4 = a.bracket(u, v)?;
    Ok(&(&(&t1 - &t2) - &t3) - &t4)
}

pub fn nijenhuis<T: Scalar>(
    a: &StructureConstants<T>,
    j: &AlmostComplexStructure<T>,
) -> Result<NijenhuisTensor<T>> {
    let n = a.dim();
    if j.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.dim(),
        });
    }
    a.ensure_valid()?;
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            values.push(nijenhuis_pair(
                a,
                j,
                &Vector::basis(n, i),
                &Vector::basis(n, k),
            )?);
        }
    }
    Ok(NijenhuisTensor { dim: n, values })
}

pub fn is_integrable<T: Scalar>(
    a: &StructureConstants<T>,
    j: &AlmostComplexStructure<T>,
) -> Result<bool> {
    Ok(nijenhuis(a, j)?.is_negligible(a.tolerance()))
}

/// `J₁` is integrable iff `2z₁−z₄−w₂ = 2z₂+z₃+w₁ = 0`; `J₂` iff
/// `2z₁+z₄+w₂ = 2z₂−z₃−w₁ = 0`.
pub fn integrability_closed_form<T: Scalar>(p: &Params4D<T>) -> (bool, bool) {
    let two = T::from_i64(2);
    let zero = |x: T| p.is_negligible(&x);
    let z1 = two.clone() * p.z1.clone();
    let z2 = two * p.z2.clone();
    let j1 = zero(z1.clone() - p.z4.clone() - p.w2.clone())
        && zero(z2.clone() + p.z3.clone() + p.w1.clone());
    let j2 = zero(z1 + p.z4.clone() + p.w2.clone()) && zero(z2 - p.z3.clone() - p.w1.clone());
    (j1, j2)
}
