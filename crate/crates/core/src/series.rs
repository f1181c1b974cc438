//! The nilpotent chain algebras `Nil^{n+2}` and the diagonal solvable algebras
//! `Sol^{n+1}`, in the frame `(W, X₁, X₂, …)`.

use crate::algebra::{StructureConstants, Vector};
use crate::error::{Error, Result};
use crate::foliation::{analyze, Split};
use crate::geometry::{ricci, RicciTensor};
use crate::scalar::Scalar;

fn labels(dim: usize) -> Vec<String> {
    std::iter::once("W".to_string())
        .chain((1..dim).map(|k| format!("X{k}")))
        .collect()
}

/// Horizontal part `{W, X₁, …, X_k}`, vertical part the rest.
fn leading_split(dim: usize, k: usize) -> Result<Split> {
    Split::from_horizontal(dim, 0..=k)
}

/// `[W, X_k] = X_{k+1}` for `k = 1, …, n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilSpec {
    n: usize,
}

impl NilSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("Nil series needs n ≥ 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn labels(&self) -> Vec<String> {
        labels(self.dim())
    }

    pub fn algebra<T: Scalar>(&self) -> StructureConstants<T> {
        let d = self.dim();
        StructureConstants::from_brackets(d, (1..=self.n).map(|k| (0, k, Vector::basis(d, k + 1))))
            .expect("distinct brackets")
    }

    pub fn split(&self, k: usize) -> Result<Split> {
        if !(1..=self.n).contains(&k) {
            return Err(Error::OutOfRange(format!(
                "Nil split index k = {k} outside 1..={}",
                self.n
            )));
        }
        leading_split(self.dim(), k)
    }

    /// `Ric(W) = −n/2`, `Ric(X₁) = −½`, `Ric(X₂) = ⋯ = Ric(X_n) = 0`,
    /// `Ric(X_{n+1}) = ½`.
    pub fn ricci_closed_form<T: Scalar>(&self) -> RicciTensor<T> {
        let half = T::half();
        let mut diag = vec![T::zero(); self.dim()];
        diag[0] = -(T::from_i64(self.n as i64) * half.clone());
        diag[1] = -half.clone();
        diag[self.n + 1] = half;
        RicciTensor::from_diagonal(diag)
    }
}

/// `[W, X_k] = α_k X_k` for `k = 1, …, n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolSpec<T> {
    alphas: Vec<T>,
}

impl<T: Scalar> SolSpec<T> {
    pub fn new(alphas: Vec<T>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::OutOfRange("Sol series needs at least one α".into()));
        }
        Ok(Self { alphas })
    }

    pub fn alphas(&self) -> &[T] {
        &self.alphas
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn dim(&self) -> usize {
        self.n() + 1
    }

    pub fn labels(&self) -> Vec<String> {
        labels(self.dim())
    }

    pub fn algebra(&self) -> StructureConstants<T> {
        let d = self.dim();
        StructureConstants::from_brackets(
            d,
            self.alphas
                .iter()
                .enumerate()
                .map(|(i, al)| (0, i + 1, Vector::basis(d, i + 1).scale(al))),
        )
        .expect("distinct brackets")
    }

    /// Accepts `1 ≤ k ≤ n − 1`; see [`Self::within_stated_range`].
    pub fn split(&self, k: usize) -> Result<Split> {
        if k == 0 || k + 1 > self.n() {
            return Err(Error::OutOfRange(format!(
                "Sol split index k = {k} outside 1..={}",
                self.n().saturating_sub(1)
            )));
        }
        leading_split(self.dim(), k)
    }

    /// Whether `k ≤ n − 2`, the range in which the vertical leaves have
    /// dimension at least two.
    pub fn within_stated_range(&self, k: usize) -> bool {
        k >= 1 && k + 2 <= self.n()
    }

    /// `Ric(W) = −|α|²`, `Ric(X_k) = −α_k (α₁ + ⋯ + α_n)`.
    pub fn ricci_closed_form(&self) -> RicciTensor<T> {
        let sum = self.alphas.iter().fold(T::zero(), |acc, a| acc + a.clone());
        let norm2 = self
            .alphas
            .iter()
            .fold(T::zero(), |acc, a| acc + a.clone() * a.clone());
        let diag = std::iter::once(-norm2)
            .chain(self.alphas.iter().map(|a| -(a.clone() * sum.clone())))
            .collect();
        RicciTensor::from_diagonal(diag)
    }
}

/// Failure of the horizontal Ricci curvature to be a multiple of the metric
/// on a 2-dimensional `ℋ = {h₀, h₁}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciDefect<T> {
    /// `Ric(h₁, h₁) − Ric(h₀, h₀)`.
    pub diagonal_gap: T,
    /// `Ric(h₀, h₁)`.
    pub off_diagonal: T,
}

impl<T: Scalar> RicciDefect<T> {
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.diagonal_gap.is_negligible(tol) && self.off_diagonal.is_negligible(tol)
    }
}

pub fn horizontal_ricci_defect<T: Scalar>(
    a: &StructureConstants<T>,
    split: &Split,
) -> Result<RicciDefect<T>> {
    if split.horizontal().len() != 2 {
        return Err(Error::Hypothesis(format!(
            "horizontal distribution has dimension {}, not 2",
            split.horizontal().len()
        )));
    }
    if !analyze(a, split)?.is_conformal_minimal() {
        return Err(Error::Hypothesis(
            "foliation is not conformal with minimal leaves".into(),
        ));
    }
    let ric = ricci(a)?;
    let (h0, h1) = (split.horizontal()[0], split.horizontal()[1]);
    Ok(RicciDefect {
        diagonal_gap: ric.get(h1, h1).clone() - ric.get(h0, h0).clone(),
        off_diagonal: ric.get(h0, h1).clone(),
    })
}

/// `Ric(h₁, h₁) − Ric(h₀, h₀)`; for both series with `k = 1` this is
/// `Ric(X₁, X₁) − Ric(W, W)`.
pub fn horizontal_ricci_gap<T: Scalar>(a: &StructureConstants<T>, split: &Split) -> Result<T> {
    Ok(horizontal_ricci_defect(a, split)?.diagonal_gap)
}
