//! Independent construction of `|J, M>` by repeated collective lowering
//! from the highest-weight state `|N, 0, …, 0>`.
//!
//! In second quantization `J₋ = Σ_m sqrt((s+m)(s-m+1)) a†_{m-1} a_m`, so a
//! term with occupations `n` feeds the vector with one particle moved from
//! level `m` to `m-1` with weight `sqrt((s+m)(s-m+1)) · sqrt(n_m (n_{m-1}+1))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coefficients::DickeExpansion;
use crate::error::{DickeError, Result};
use crate::spin::{OccupationVector, SpinSpecies};

/// Amplitudes below this are dropped from oracle output.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Unnormalized expansion keyed by occupation vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RawExpansion {
    pub species: SpinSpecies,
    pub n: u32,
    pub twice_m: i64,
    pub terms: BTreeMap<OccupationVector, f64>,
}

impl RawExpansion {
    pub fn from_expansion(e: &DickeExpansion) -> Self {
        RawExpansion {
            species: e.species,
            n: e.n,
            twice_m: e.twice_m,
            terms: e.terms.iter().cloned().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms.values().map(|a| a * a).sum()
    }

    pub fn scale(mut self, factor: f64) -> Self {
        for a in self.terms.values_mut() {
            *a *= factor;
        }
        self
    }

    pub fn dot(&self, other: &RawExpansion) -> f64 {
        self.terms.iter().map(|(v, a)| a * other.terms.get(v).copied().unwrap_or(0.0)).sum()
    }

    /// Normalizes, prunes tiny amplitudes, and flattens to canonical order.
    pub fn into_expansion(self, prune: f64) -> DickeExpansion {
        let norm = self.norm_sq().sqrt();
        let mut terms: Vec<_> = self
            .terms
            .into_iter()
            .map(|(v, a)| (v, if norm > 0.0 { a / norm } else { a }))
            .filter(|(_, a)| a.abs() > prune)
            .collect();
        terms.reverse();
        DickeExpansion::new(self.species, self.n, self.twice_m, terms).normalized()
    }
}

/// `|J, J> = |N, 0, …, 0>`.
pub fn highest_weight(species: SpinSpecies, n: u32) -> Result<DickeExpansion> {
    if n == 0 {
        return Err(DickeError::NoParticles);
    }
    let mut counts = vec![0; species.levels()];
    counts[0] = n;
    Ok(DickeExpansion::new(species, n, species.twice_j(n), vec![(counts.into(), 1.0)]))
}

// (s+m)(s-m+1) for the level at `index`, i.e. (2s - i)(i + 1) in level indices.
fn lowering_factor(twice_spin: u32, index: usize) -> u64 {
    (twice_spin as u64 - index as u64) * (index as u64 + 1)
}

// (s-m)(s+m+1) for the level at `index`: i (2s - i + 1).
fn raising_factor(twice_spin: u32, index: usize) -> u64 {
    index as u64 * (twice_spin as u64 - index as u64 + 1)
}

/// Applies the collective lowering operator `J₋`.
pub fn apply_lowering(x: &RawExpansion) -> RawExpansion {
    let ts = x.species.twice_spin();
    let mut out: BTreeMap<OccupationVector, f64> = BTreeMap::new();
    for (occ, &amp) in &x.terms {
        let c = occ.counts();
        for i in 0..c.len() - 1 {
            if c[i] == 0 {
                continue;
            }
            let w = (lowering_factor(ts, i) as f64 * c[i] as f64 * (c[i + 1] + 1) as f64).sqrt();
            *out.entry(occ.with_move(i, i + 1)).or_insert(0.0) += amp * w;
        }
    }
    RawExpansion { species: x.species, n: x.n, twice_m: x.twice_m - 2, terms: out }
}

/// Applies the collective raising operator `J₊`.
pub fn apply_raising(x: &RawExpansion) -> RawExpansion {
    let ts = x.species.twice_spin();
    let mut out: BTreeMap<OccupationVector, f64> = BTreeMap::new();
    for (occ, &amp) in &x.terms {
        let c = occ.counts();
        for i in 1..c.len() {
            if c[i] == 0 {
                continue;
            }
            let w = (raising_factor(ts, i) as f64 * c[i] as f64 * (c[i - 1] + 1) as f64).sqrt();
            *out.entry(occ.with_move(i, i - 1)).or_insert(0.0) += amp * w;
        }
    }
    RawExpansion { species: x.species, n: x.n, twice_m: x.twice_m + 2, terms: out }
}

// (J+M')(J-M'+1) with J, M' in twice-units.
fn ladder_norm_sq(twice_j: i64, twice_m: i64) -> i64 {
    (twice_j + twice_m) * (twice_j - twice_m + 2) / 4
}

/// `|J, M>` obtained by lowering from `|J, J>` with the exact ladder normalization.
pub fn oracle_expansion(species: SpinSpecies, n: u32, twice_m: i64) -> Result<DickeExpansion> {
    species.check_subspace(n, twice_m)?;
    let twice_j = species.twice_j(n);
    let mut state = RawExpansion::from_expansion(&highest_weight(species, n)?);
    while state.twice_m > twice_m {
        let from = state.twice_m;
        state = apply_lowering(&state).scale(1.0 / (ladder_norm_sq(twice_j, from) as f64).sqrt());
    }
    Ok(state.into_expansion(PRUNE_THRESHOLD))
}

/// `<J²>` computed as `<J₋J₊> + <J_z²> + <J_z>` for a normalized state.
pub fn total_spin_expectation(x: &DickeExpansion) -> f64 {
    let raw = RawExpansion::from_expansion(x);
    let lowered = apply_lowering(&apply_raising(&raw));
    let jm_jp = raw.dot(&lowered);
    let jz: f64 = x
        .terms
        .iter()
        .map(|(v, a)| {
            let m = v.twice_magnetization() as f64 / 2.0;
            a * a * (m * m + m)
        })
        .sum();
    jm_jp + jz
}

/// A non-negative amplitude held exactly as its square.
///
/// Every amplitude reached by lowering from `|J,J>` is a positive square root
/// of a rational, and contributions merging onto one vector are rational
/// multiples of each other, so the sum stays in this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactAmplitude(BigRational);

fn exact_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

impl ExactAmplitude {
    pub fn from_square(sq: BigRational) -> Self {
        ExactAmplitude(sq)
    }

    pub fn square(&self) -> &BigRational {
        &self.0
    }

    pub fn scaled_by_sqrt(&self, factor: &BigRational) -> Self {
        ExactAmplitude(&self.0 * factor)
    }

    /// `sqrt(a) + sqrt(b)` when `b / a` is a rational square.
    pub fn add(&self, other: &ExactAmplitude) -> Result<ExactAmplitude> {
        if self.0.is_zero() {
            return Ok(other.clone());
        }
        if other.0.is_zero() {
            return Ok(self.clone());
        }
        let ratio = &other.0 / &self.0;
        let r = exact_sqrt(&ratio)
            .ok_or_else(|| DickeError::Incommensurate(self.0.to_string(), other.0.to_string()))?;
        let one_plus = BigRational::one() + r;
        Ok(ExactAmplitude(&self.0 * &one_plus * &one_plus))
    }
}

/// Exact-mode oracle: normalized amplitude squares as big rationals, canonical order.
pub fn oracle_expansion_exact(
    species: SpinSpecies,
    n: u32,
    twice_m: i64,
) -> Result<Vec<(OccupationVector, BigRational)>> {
    species.check_subspace(n, twice_m)?;
    let ts = species.twice_spin();
    let twice_j = species.twice_j(n);
    let mut counts = vec![0; species.levels()];
    counts[0] = n;
    let mut state: BTreeMap<OccupationVector, ExactAmplitude> = BTreeMap::new();
    state.insert(counts.into(), ExactAmplitude(BigRational::one()));
    let mut current = twice_j;
    while current > twice_m {
        let step = BigRational::new(BigInt::one(), BigInt::from(ladder_norm_sq(twice_j, current)));
        let mut next: BTreeMap<OccupationVector, ExactAmplitude> = BTreeMap::new();
        for (occ, amp) in &state {
            let c = occ.counts();
            for i in 0..c.len() - 1 {
                if c[i] == 0 {
                    continue;
                }
                let w = lowering_factor(ts, i) * c[i] as u64 * (c[i + 1] as u64 + 1);
                let contrib = amp.scaled_by_sqrt(&(BigRational::from_integer(BigInt::from(w)) * &step));
                let target = occ.with_move(i, i + 1);
                let merged = match next.get(&target) {
                    Some(prev) => prev.add(&contrib)?,
                    None => contrib,
                };
                next.insert(target, merged);
            }
        }
        state = next;
        current -= 2;
    }
    let total = state.values().fold(BigRational::zero(), |acc, a| acc + a.square());
    Ok(state.into_iter().rev().map(|(v, a)| (v, a.square() / &total)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{closed_form_square, WeightConvention};
    use approx::assert_abs_diff_eq;

    #[test]
    fn highest_weights() {
        let h = highest_weight(SpinSpecies::TWO, 5).unwrap();
        assert_eq!(h.terms, vec![([5, 0, 0, 0, 0].into(), 1.0)]);
        let h = highest_weight(SpinSpecies::HALF, 3).unwrap();
        assert_eq!(h.terms, vec![([3, 0].into(), 1.0)]);
        assert_eq!(h.twice_m, 3);
        let h = highest_weight(SpinSpecies::ONE, 1).unwrap();
        assert_eq!(h.terms, vec![([1, 0, 0].into(), 1.0)]);
    }

    #[test]
    fn single_lowering_of_spin_two() {
        let h = RawExpansion::from_expansion(&highest_weight(SpinSpecies::TWO, 5).unwrap());
        let l = apply_lowering(&h);
        assert_eq!(l.terms.len(), 1);
        assert_abs_diff_eq!(l.terms[&[4, 1, 0, 0, 0].into()], 2.0 * 5f64.sqrt(), epsilon = 1e-14);
        assert_eq!(l.twice_m, 18);
    }

    #[test]
    fn annihilation_at_the_ends() {
        let h = RawExpansion::from_expansion(&highest_weight(SpinSpecies::ONE, 4).unwrap());
        assert!(apply_raising(&h).is_empty());
        let low = RawExpansion {
            species: SpinSpecies::ONE,
            n: 4,
            twice_m: -8,
            terms: [([0, 0, 4].into(), 1.0)].into_iter().collect(),
        };
        assert!(apply_lowering(&low).is_empty());
    }

    #[test]
    fn raise_after_lower_gives_two_j() {
        for s in SpinSpecies::ALL {
            let h = RawExpansion::from_expansion(&highest_weight(s, 3).unwrap());
            let back = apply_raising(&apply_lowering(&h));
            let two_j = s.twice_j(3) as f64;
            assert_abs_diff_eq!(back.terms[h.terms.keys().next().unwrap()], two_j, epsilon = 1e-12);
        }
    }

    #[test]
    fn twice_lowered_spin_one_matches_table() {
        let e = oracle_expansion(SpinSpecies::ONE, 10, 16).unwrap();
        assert_abs_diff_eq!(e.amplitude(&[9, 0, 1].into()), 0.2294, epsilon = 5e-5);
        assert_abs_diff_eq!(e.amplitude(&[8, 2, 0].into()), 0.9733, epsilon = 5e-5);
    }

    #[test]
    fn spin_two_m8() {
        let e = oracle_expansion(SpinSpecies::TWO, 5, 16).unwrap();
        assert_abs_diff_eq!(e.amplitude(&[4, 0, 1, 0, 0].into()), 0.3974, epsilon = 5e-5);
        assert_abs_diff_eq!(e.amplitude(&[3, 2, 0, 0, 0].into()), 0.9177, epsilon = 5e-5);
    }

    #[test]
    fn raising_m0_reproduces_m1() {
        let m0 = oracle_expansion(SpinSpecies::ONE, 10, 0).unwrap();
        let raised = apply_raising(&RawExpansion::from_expansion(&m0)).into_expansion(PRUNE_THRESHOLD);
        let m1 = oracle_expansion(SpinSpecies::ONE, 10, 2).unwrap();
        assert!(raised.max_deviation(&m1) < 1e-12);
        assert_abs_diff_eq!(raised.amplitude(&[5, 1, 4].into()), 0.1225, epsilon = 5e-5);
    }

    #[test]
    fn spin_half_is_uniform() {
        for n in 1..=12u32 {
            for tm in (-(n as i64)..=n as i64).step_by(2) {
                let e = oracle_expansion(SpinSpecies::HALF, n, tm).unwrap();
                assert_eq!(e.terms.len(), 1);
                assert_abs_diff_eq!(e.terms[0].1, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn total_spin_values() {
        let h = highest_weight(SpinSpecies::ONE, 10).unwrap();
        assert_abs_diff_eq!(total_spin_expectation(&h), 110.0, epsilon = 1e-10);
        let e = oracle_expansion(SpinSpecies::THREE_HALVES, 6, 0).unwrap();
        assert_abs_diff_eq!(total_spin_expectation(&e), 90.0, epsilon = 1e-8);
    }

    #[test]
    fn perturbed_state_is_detected() {
        let mut e = oracle_expansion(SpinSpecies::ONE, 6, 0).unwrap();
        e.terms[0].1 += 0.2;
        let e = e.normalized();
        assert!((total_spin_expectation(&e) - 42.0).abs() > 1e-3);
    }

    #[test]
    fn exact_mode_matches_closed_form() {
        for s in SpinSpecies::ALL {
            for n in 1..=5u32 {
                let tj = s.twice_j(n);
                for tm in (-tj..=tj).step_by(2) {
                    let exact = oracle_expansion_exact(s, n, tm).unwrap();
                    for (v, sq) in exact {
                        let cf = closed_form_square(s, n, tm, &v, WeightConvention::Binomial).unwrap();
                        assert_eq!(sq, cf, "spin {s} N={n} 2M={tm} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn exact_add_rejects_incommensurate() {
        let a = ExactAmplitude::from_square(BigRational::from_integer(2.into()));
        let b = ExactAmplitude::from_square(BigRational::from_integer(3.into()));
        assert!(a.add(&b).is_err());
        let c = ExactAmplitude::from_square(BigRational::from_integer(8.into()));
        // sqrt 2 + sqrt 8 = 3 sqrt 2 -> square 18
        assert_eq!(a.add(&c).unwrap().square(), &BigRational::from_integer(18.into()));
    }
}
