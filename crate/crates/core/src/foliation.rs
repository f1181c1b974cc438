//! Second fundamental forms of an orthogonal coordinate splitting and the
//! foliation predicates built on them.

use crate::algebra::{StructureConstants, Vector};
use crate::error::{Error, Result};
use crate::families::Params4D;
use crate::geometry::{connection_unchecked, Connection};
use crate::scalar::Scalar;

/// Orthogonal decomposition of the frame into vertical and horizontal index
/// sets. Both are sorted, disjoint, non-empty and cover `0..dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Split {
    dim: usize,
    vertical: Vec<usize>,
    horizontal: Vec<usize>,
}

impl Split {
    pub fn new(dim: usize, vertical: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut vertical: Vec<usize> = vertical.into_iter().collect();
        vertical.sort_unstable();
        if let Some(&index) = vertical.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        if vertical.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSplit("repeated vertical index".into()));
        }
        let horizontal: Vec<usize> = (0..dim).filter(|i| !vertical.contains(i)).collect();
        if vertical.is_empty() || horizontal.is_empty() {
            return Err(Error::MalformedSplit(
                "vertical and horizontal parts must both be non-empty".into(),
            ));
        }
        Ok(Self {
            dim,
            vertical,
            horizontal,
        })
    }

    pub fn from_horizontal(
        dim: usize,
        horizontal: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let horizontal: Vec<usize> = horizontal.into_iter().collect();
        if let Some(&index) = horizontal.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        Self::new(dim, (0..dim).filter(|i| !horizontal.contains(i)))
    }

    /// `𝒱 = span{Z, W}` in the frame order `(X, Y, Z, W)`.
    pub fn standard_4d() -> Self {
        Self::new(4, [2, 3]).expect("static split")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertical(&self) -> &[usize] {
        &self.vertical
    }

    pub fn horizontal(&self) -> &[usize] {
        &self.horizontal
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::MalformedSplit(format!(
                "split is for dimension {}, algebra has dimension {dim}",
                self.dim
            )));
        }
        Ok(())
    }
}

/// Symmetric bilinear form on the `domain` indices with values in the span
/// of the `codomain` indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondFundamentalForm<T> {
    domain: Vec<usize>,
    codomain: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> SecondFundamentalForm<T> {
    fn build(gamma: &Connection<T>, domain: &[usize], codomain: &[usize]) -> Self {
        let half = T::half();
        let mut values = Vec::with_capacity(domain.len() * domain.len() * codomain.len());
        for &u in domain {
            for &v in domain {
                for &h in codomain {
                    let s = gamma.get(u, v, h).clone() + gamma.get(v, u, h).clone();
                    values.push(s * half.clone());
                }
            }
        }
        Self {
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            values,
        }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain(&self) -> &[usize] {
        &self.codomain
    }

    /// Value on the `a`-th and `b`-th domain vectors, in codomain coordinates.
    pub fn get(&self, a: usize, b: usize) -> Vector<T> {
        let m = self.codomain.len();
        let base = (a * self.domain.len() + b) * m;
        Vector::new(self.values[base..base + m].to_vec())
    }

    pub fn trace(&self) -> Vector<T> {
        let zero = Vector::zeros(self.codomain.len());
        (0..self.domain.len()).fold(zero, |acc, a| &acc + &self.get(a, a))
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.values.iter().all(|x| x.is_negligible(tol))
    }

    /// Whether the form equals `g ⊗ V` for some `V`; returns that `V`.
    fn conformal_vector(&self, tol: f64) -> Option<Vector<T>> {
        let n = self.domain.len();
        let reference = self.get(0, 0);
        for a in 0..n {
            for b in 0..n {
                let v = self.get(a, b);
                let ok = if a == b {
                    (&v - &reference).is_negligible(tol)
                } else {
                    v.is_negligible(tol)
                };
                if !ok {
                    return None;
                }
            }
        }
        if n == 2 {
            // Rotated pair (X+Y, X−Y); redundant with the above for a symmetric form.
            let rotated =
                &(&(&self.get(0, 0) - &self.get(0, 1)) + &self.get(1, 0)) - &self.get(1, 1);
            if !rotated.is_negligible(tol) {
                return None;
            }
        }
        Some(reference)
    }
}

/// `(B^𝒱, B^ℋ)` with `B^𝒱(U,V) = ½ ℋ(∇_U V + ∇_V U)` and
/// `B^ℋ(X,Y) = ½ 𝒱(∇_X Y + ∇_Y X)`.
pub fn second_fundamental_forms<T: Scalar>(
    a: &StructureConstants<T>,
    split: &Split,
) -> Result<(SecondFundamentalForm<T>, SecondFundamentalForm<T>)> {
    split.check_dim(a.dim())?;
    a.ensure_valid()?;
    Ok(forms_unchecked(a, split))
}

fn forms_unchecked<T: Scalar>(
    a: &StructureConstants<T>,
    split: &Split,
) -> (SecondFundamentalForm<T>, SecondFundamentalForm<T>) {
    let gamma = connection_unchecked(a);
    (
        SecondFundamentalForm::build(&gamma, split.vertical(), split.horizontal()),
        SecondFundamentalForm::build(&gamma, split.horizontal(), split.vertical()),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoliationReport<T> {
    pub vertical_integrable: bool,
    pub conformal: bool,
    /// `V` with `B^ℋ = g ⊗ V`, in the coordinates of the vertical indices.
    /// Absent when the foliation is not conformal.
    pub conformal_vector: Option<Vector<T>>,
    pub riemannian: bool,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub horizontal_integrable: bool,
}

impl<T> FoliationReport<T> {
    /// Integrable vertical distribution that is conformal with minimal leaves.
    pub fn is_conformal_minimal(&self) -> bool {
        self.vertical_integrable && self.conformal && self.minimal
    }
}

fn closes<T: Scalar>(a: &StructureConstants<T>, part: &[usize], complement: &[usize]) -> bool {
    part.iter().all(|&i| {
        part.iter()
            .all(|&j| complement.iter().all(|&k| a.is_negligible(a.get(i, j, k))))
    })
}

pub fn analyze<T: Scalar>(a: &StructureConstants<T>, split: &Split) -> Result<FoliationReport<T>> {
    let (bv, bh) = second_fundamental_forms(a, split)?;
    let tol = a.tolerance();
    let conformal_vector = bh.conformal_vector(tol);
    let conformal = conformal_vector.is_some();
    let riemannian = conformal_vector
        .as_ref()
        .is_some_and(|v| v.is_negligible(tol));
    Ok(FoliationReport {
        vertical_integrable: closes(a, split.vertical(), split.horizontal()),
        conformal,
        conformal_vector,
        riemannian,
        minimal: bv.trace().is_negligible(tol),
        totally_geodesic: bv.is_negligible(tol),
        horizontal_integrable: closes(a, split.horizontal(), split.vertical()),
    })
}

/// Horizontal block of `ad_v`: `m[a][b]` is the `h_a` coefficient of `[v, h_b]`.
pub fn horizontal_block<T: Scalar>(
    a: &StructureConstants<T>,
    split: &Split,
    v: &Vector<T>,
) -> Result<Vec<Vec<T>>> {
    split.check_dim(a.dim())?;
    let ad = a.ad_matrix(v)?;
    Ok(split
        .horizontal()
        .iter()
        .map(|&ha| {
            split
                .horizontal()
                .iter()
                .map(|&hb| ad[ha][hb].clone())
                .collect()
        })
        .collect())
}

fn mat_mul<T: Scalar>(x: &[Vec<T>], y: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(T::zero(), |acc, k| acc + x[i][k].clone() * y[k][j].clone()))
                .collect()
        })
        .collect()
}

fn is_conformal_matrix<T: Scalar>(m: &[Vec<T>], tol: f64) -> bool {
    let n = m.len();
    let sym = |i: usize, j: usize| m[i][j].clone() + m[j][i].clone();
    (0..n).all(|i| {
        (0..n).all(|j| {
            if i == j {
                (sym(i, i) - sym(0, 0)).is_negligible(tol)
            } else {
                sym(i, j).is_negligible(tol)
            }
        })
    })
}

/// Checks that `ℋ ad_V|ℋ ∈ co(ℋ)` for every vertical basis vector and that
/// `V ↦ ℋ ad_V|ℋ` is a representation of `𝒱`.
pub fn conformal_adjoint_check<T: Scalar>(
    a: &StructureConstants<T>,
    split: &Split,
) -> Result<bool> {
    split.check_dim(a.dim())?;
    if !closes(a, split.vertical(), split.horizontal()) {
        return Err(Error::Hypothesis(
            "vertical distribution is not integrable".into(),
        ));
    }
    let n = a.dim();
    let tol = a.tolerance();
    let blocks = split
        .vertical()
        .iter()
        .map(|&v| horizontal_block(a, split, &Vector::basis(n, v)))
        .collect::<Result<Vec<_>>>()?;
    if !blocks.iter().all(|m| is_conformal_matrix(m, tol)) {
        return Ok(false);
    }
    let vertical = split.vertical();
    for (p, &vi) in vertical.iter().enumerate() {
        for (q, &vj) in vertical.iter().enumerate().skip(p + 1) {
            let w = a.bracket(&Vector::basis(n, vi), &Vector::basis(n, vj))?;
            let lhs = horizontal_block(a, split, &w)?;
            let ab = mat_mul(&blocks[p], &blocks[q]);
            let ba = mat_mul(&blocks[q], &blocks[p]);
            for r in 0..lhs.len() {
                for s in 0..lhs.len() {
                    let d = lhs[r][s].clone() - (ab[r][s].clone() - ba[r][s].clone());
                    if !d.is_negligible(tol) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalFormPredicates {
    pub totally_geodesic: bool,
    pub riemannian: bool,
    pub horizontal_integrable: bool,
}

/// Closed-form predicates for the normalized 4-dimensional bracket form:
/// totally geodesic iff `z₁ = z₂ = z₃+w₁ = z₄+w₂ = 0`, Riemannian iff
/// `α = a = 0`, horizontally integrable iff `θ₁ = θ₂ = 0`.
pub fn normal_form_predicates<T: Scalar>(p: &Params4D<T>) -> NormalFormPredicates {
    let zero = |x: T| p.is_negligible(&x);
    NormalFormPredicates {
        totally_geodesic: zero(p.z1.clone())
            && zero(p.z2.clone())
            && zero(p.z3.clone() + p.w1.clone())
            && zero(p.z4.clone() + p.w2.clone()),
        riemannian: zero(p.alpha.clone()) && zero(p.a.clone()),
        horizontal_integrable: zero(p.theta1.clone()) && zero(p.theta2.clone()),
    }
}
