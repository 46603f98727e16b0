//! Closed-form superposition coefficients of `|J, M>` in the occupation basis.
//!
//! The amplitude of `|n_{+s}, …, n_{-s}>` in the maximal-J state is
//!
//! ```text
//! C = sqrt(N! / Π n_m!) · Π d_m^{n_m} · (J-|M|)! · Π_{l=1}^{J-|M|} 1/sqrt((2sN-l+1) l)
//! ```
//!
//! with level weights `d_m = sqrt(binom(2s, s-m))`. `C²` is a rational number,
//! evaluated exactly with big integers; only the final square root is done in
//! `f64`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::basis::enumerate_basis;
use crate::error::{DickeError, Result};
use crate::spin::{OccupationVector, SpinSpecies};

/// Which single-level prefactor to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightConvention {
    /// `d_m² = binom(2s, s-m)`. Reproduces the tabulated coefficients.
    #[default]
    Binomial,
    /// The species-specific prefactors: `2^{n_0}` (spin 1),
    /// `3^{(n_2+n_3)/2}` (spin 3/2) and `(3/2)^{n_3/2} 3^{(n_2+n_3+n_4)/2}`
    /// (spin 2). Kept for documenting where they fail.
    SpeciesPrefactor,
}

/// A state written in the occupation basis of one `(species, N, M)` subspace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DickeExpansion {
    pub species: SpinSpecies,
    pub n: u32,
    pub twice_j: i64,
    pub twice_m: i64,
    pub terms: Vec<(OccupationVector, f64)>,
}

impl DickeExpansion {
    pub fn new(species: SpinSpecies, n: u32, twice_m: i64, terms: Vec<(OccupationVector, f64)>) -> Self {
        DickeExpansion { species, n, twice_j: species.twice_j(n), twice_m, terms }
    }

    pub fn amplitude(&self, occ: &OccupationVector) -> f64 {
        self.terms.iter().find(|(v, _)| v == occ).map_or(0.0, |(_, a)| *a)
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|(_, a)| a * a).sum()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm_sq().sqrt();
        if norm > 0.0 {
            for (_, a) in &mut self.terms {
                *a /= norm;
            }
        }
        self
    }

    /// `M -> -M` image: mirrored vectors, same amplitudes, canonical order.
    pub fn mirror(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(v, a)| (v.mirror(), *a)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        DickeExpansion::new(self.species, self.n, -self.twice_m, terms)
    }

    /// Largest amplitude difference against `other`, over the union of supports.
    pub fn max_deviation(&self, other: &DickeExpansion) -> f64 {
        let mut dev: f64 = 0.0;
        for (v, a) in &self.terms {
            dev = dev.max((a - other.amplitude(v)).abs());
        }
        for (v, a) in &other.terms {
            dev = dev.max((a - self.amplitude(v)).abs());
        }
        dev
    }

    pub fn support(&self, threshold: f64) -> Vec<OccupationVector> {
        self.terms.iter().filter(|(_, a)| a.abs() > threshold).map(|(v, _)| v.clone()).collect()
    }
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn big(v: BigUint) -> BigInt {
    BigInt::from(v)
}

/// `d_m = sqrt(binom(2s, s - m))` for the level with twice-magnetic number `twice_m`.
pub fn level_weight(species: SpinSpecies, twice_m: i64) -> Result<f64> {
    let level = species.level_of_twice_m(twice_m)?;
    let b = binomial(species.twice_spin() as u64, level as u64);
    Ok(b.to_f64().unwrap_or(f64::NAN).sqrt())
}

fn check_member(species: SpinSpecies, n: u32, twice_m: i64, occ: &OccupationVector) -> Result<()> {
    species.check_subspace(n, twice_m)?;
    if occ.len() != species.levels() {
        return Err(DickeError::LevelCountMismatch { expected: species.levels(), got: occ.len() });
    }
    if occ.total() != n as u64 || occ.twice_magnetization() != twice_m {
        return Err(DickeError::NotInBasis(occ.to_string()));
    }
    Ok(())
}

// Squared level prefactor Π w_i^{2 n_i} as a rational.
fn prefactor_sq(species: SpinSpecies, occ: &OccupationVector, convention: WeightConvention) -> BigRational {
    let c = occ.counts();
    let pow = |base: u64, e: u32| BigInt::from(base).pow(e);
    match convention {
        WeightConvention::Binomial => {
            let ts = species.twice_spin() as u64;
            let mut acc = BigInt::one();
            for (i, &n_i) in c.iter().enumerate() {
                acc *= big(binomial(ts, i as u64)).pow(n_i);
            }
            BigRational::from_integer(acc)
        }
        WeightConvention::SpeciesPrefactor => match species.twice_spin() {
            1 => BigRational::one(),
            2 => BigRational::from_integer(pow(4, c[1])),
            3 => BigRational::from_integer(pow(3, c[1] + c[2])),
            _ => BigRational::new(pow(3, c[2]) * pow(3, c[1] + c[2] + c[3]), pow(2, c[2])),
        },
    }
}

/// Exact `C²` for `occ` under `convention`.
pub fn closed_form_square(
    species: SpinSpecies,
    n: u32,
    twice_m: i64,
    occ: &OccupationVector,
    convention: WeightConvention,
) -> Result<BigRational> {
    check_member(species, n, twice_m, occ)?;
    let n = n as u64;
    let multinomial = occ.counts().iter().fold(big(factorial(n)), |acc, &k| acc / big(factorial(k as u64)));
    let two_j = species.twice_spin() as u64 * n;
    let k = ((two_j as i64 - twice_m.abs()) / 2) as u64;
    // (K!)² / Π_{l=1}^{K} (2sN - l + 1) l
    let k_fact = big(factorial(k));
    let denom = (1..=k).fold(BigInt::one(), |acc, l| acc * BigInt::from((two_j - l + 1) * l));
    let ladder = BigRational::new(&k_fact * &k_fact, denom);
    Ok(BigRational::from_integer(multinomial) * prefactor_sq(species, occ, convention) * ladder)
}

fn rational_sqrt_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN).sqrt()
}

/// Closed-form amplitude of `occ` in `|J, M>`.
pub fn closed_form_coefficient(species: SpinSpecies, n: u32, twice_m: i64, occ: &OccupationVector) -> Result<f64> {
    closed_form_square(species, n, twice_m, occ, WeightConvention::Binomial).map(|q| rational_sqrt_f64(&q))
}

/// Full expansion of `|J = sN, M>`, explicitly renormalized.
pub fn dicke_expansion(species: SpinSpecies, n: u32, twice_m: i64) -> Result<DickeExpansion> {
    dicke_expansion_with(species, n, twice_m, WeightConvention::Binomial)
}

pub fn dicke_expansion_with(
    species: SpinSpecies,
    n: u32,
    twice_m: i64,
    convention: WeightConvention,
) -> Result<DickeExpansion> {
    let basis = enumerate_basis(species, n, twice_m)?;
    let mut squares = Vec::with_capacity(basis.len());
    for occ in &basis {
        squares.push(closed_form_square(species, n, twice_m, occ, convention)?);
    }
    let total: BigRational = squares.iter().fold(BigRational::zero(), |acc, q| acc + q);
    let norm = rational_sqrt_f64(&total);
    let terms = basis
        .into_iter()
        .zip(&squares)
        .map(|(occ, q)| (occ, rational_sqrt_f64(q) / norm))
        .collect();
    Ok(DickeExpansion::new(species, n, twice_m, terms))
}
