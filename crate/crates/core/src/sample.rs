//! Seeded random draws of small rationals, family members, normal-form
//! parameters and low-dimensional conformal foliations.
//!
//! Every draw owns an RNG derived from `(root, stream, index)`, so parallel
//! sweeps produce the same values as sequential ones.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{StructureConstants, Vector};
use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilyInstance, Params4D, PARAM_NAMES};
use crate::scalar::{rat, Rational, Scalar};

pub type SampleRng = ChaCha8Rng;

/// Largest absolute numerator and denominator of a drawn rational.
pub const SMALL_BOUND: i64 = 9;

const MAX_ATTEMPTS: usize = 10_000;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn derive_seed(root: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(root) ^ stream) ^ index)
}

pub fn rng_for(root: u64, stream: u64, index: u64) -> SampleRng {
    SampleRng::seed_from_u64(derive_seed(root, stream, index))
}

/// `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 9`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(-SMALL_BOUND..=SMALL_BOUND);
    let q = rng.gen_range(1..=SMALL_BOUND);
    rat(p, q)
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(1..=SMALL_BOUND) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let q = rng.gen_range(1..=SMALL_BOUND);
    rat(p, q)
}

/// Zero with probability `p_zero`, otherwise a nonzero small rational.
pub fn sparse_rational(rng: &mut impl Rng, p_zero: f64) -> Rational {
    if rng.gen_bool(p_zero) {
        rat(0, 1)
    } else {
        nonzero_rational(rng)
    }
}

/// Rejection-samples free parameters until the family's constraints hold.
/// Mirror families are swapped with probability one half.
pub fn draw_family(id: FamilyId, rng: &mut impl Rng) -> Result<FamilyInstance<Rational>> {
    for _ in 0..MAX_ATTEMPTS {
        let params: Vec<Rational> = id
            .param_names()
            .iter()
            .map(|_| sparse_rational(rng, 0.25))
            .collect();
        if let Ok(inst) = FamilyInstance::new(id, params) {
            return if id.has_mirror() && rng.gen_bool(0.5) {
                inst.mirrored()
            } else {
                Ok(inst)
            };
        }
    }
    Err(Error::FamilyConstraint {
        family: id.to_string(),
        constraint: format!("no admissible draw in {MAX_ATTEMPTS} attempts"),
    })
}

pub fn draw_family_id(rng: &mut impl Rng) -> FamilyId {
    FamilyId::ALL[rng.gen_range(0..FamilyId::ALL.len())]
}

/// A residual-free parameter set: a member of a uniformly chosen family.
pub fn draw_solution(rng: &mut impl Rng) -> Params4D<Rational> {
    let id = draw_family_id(rng);
    draw_family(id, rng)
        .and_then(|inst| inst.params4d())
        .expect("every family admits small rational members")
}

/// Normal-form parameters mixing family members, family members with one
/// entry perturbed, and sparse random entries.
pub fn draw_params(rng: &mut impl Rng) -> Params4D<Rational> {
    match rng.gen_range(0..3) {
        0 => draw_solution(rng),
        1 => {
            let mut p = draw_solution(rng);
            let name = PARAM_NAMES[rng.gen_range(0..PARAM_NAMES.len())];
            let v = p.get(name).expect("known name").clone() + nonzero_rational(rng);
            p.set(name, v).expect("known name");
            p
        }
        _ => {
            let mut p = Params4D::zero();
            let p_zero = rng.gen_range(0.3..0.9);
            for name in PARAM_NAMES {
                p.set(name, sparse_rational(rng, p_zero))
                    .expect("known name");
            }
            p
        }
    }
}

/// `(c, s) = ((m²−n²)/(m²+n²), 2mn/(m²+n²))`, a rational point of the unit circle.
pub fn pythagorean_rotation(rng: &mut impl Rng) -> (Rational, Rational) {
    loop {
        let m = rng.gen_range(-SMALL_BOUND..=SMALL_BOUND);
        let n = rng.gen_range(-SMALL_BOUND..=SMALL_BOUND);
        if m != 0 || n != 0 {
            let d = m * m + n * n;
            return (rat(m * m - n * n, d), rat(2 * m * n, d));
        }
    }
}

/// The algebra in the frame obtained by rotating the `(e_i, e_j)` plane.
pub fn rotate_plane<T: Scalar>(
    a: &StructureConstants<T>,
    i: usize,
    j: usize,
    (c, s): (T, T),
) -> Result<StructureConstants<T>> {
    let n = a.dim();
    let mut frame: Vec<Vector<T>> = (0..n).map(|k| Vector::basis(n, k)).collect();
    let mut fi = vec![T::zero(); n];
    let mut fj = vec![T::zero(); n];
    fi[i] = c.clone();
    fi[j] = s.clone();
    fj[i] = -s;
    fj[j] = c;
    frame[i] = Vector::new(fi);
    frame[j] = Vector::new(fj);
    a.change_frame(&frame)
}

/// A 3-dimensional algebra with `ℋ = {e₀, e₁}`, `𝒱 = {e₂}` whose vertical
/// foliation is conformal with minimal (geodesic) leaves:
/// `[Z,X] = αX + βY`, `[Z,Y] = −βX + αY`, `[Y,X] = rX + sY + θZ`, subject to
/// the Jacobi conditions `αr + βs = rβ − αs = αθ = 0`, followed by a random
/// rotation of `ℋ`.
pub fn draw_conformal_minimal_3d(rng: &mut impl Rng) -> StructureConstants<Rational> {
    let zero = || rat(0, 1);
    let (alpha, beta, r, s, theta) = match rng.gen_range(0..3) {
        0 => (
            zero(),
            zero(),
            sparse_rational(rng, 0.3),
            sparse_rational(rng, 0.3),
            sparse_rational(rng, 0.3),
        ),
        1 => (
            zero(),
            nonzero_rational(rng),
            zero(),
            zero(),
            sparse_rational(rng, 0.3),
        ),
        _ => (
            nonzero_rational(rng),
            sparse_rational(rng, 0.3),
            zero(),
            zero(),
            zero(),
        ),
    };
    let v = |x: &Rational, y: &Rational, z: &Rational| {
        Vector::new(vec![x.clone(), y.clone(), z.clone()])
    };
    let a = StructureConstants::from_brackets(
        3,
        [
            (2, 0, v(&alpha, &beta, &zero())),
            (2, 1, v(&-beta.clone(), &alpha, &zero())),
            (1, 0, v(&r, &s, &theta)),
        ],
    )
    .expect("distinct brackets");
    rotate_plane(&a, 0, 1, pythagorean_rotation(rng)).expect("orthonormal frame")
}

pub fn draw_sol_alphas(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// Sol parameters whose tail `α₂ + ⋯ + α_n` vanishes, so that the `k = 1`
/// foliation has minimal leaves.
pub fn draw_sol_alphas_minimal(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut alphas = draw_sol_alphas(rng, n);
    if n >= 2 {
        let tail: Rational = alphas[1..n - 1].iter().sum();
        alphas[n - 1] = -tail;
    }
    alphas
}
