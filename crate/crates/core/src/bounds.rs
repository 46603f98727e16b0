//! The closed-form `k / k1 / k2` parametrization of the occupation basis.
//!
//! These bounds are evaluated exactly as written and are kept only as a
//! cross-check of [`enumerate_basis`](crate::basis::enumerate_basis), which is
//! authoritative. For spin 3/2 and spin 2 they disagree with the direct
//! solution away from `|M| ≈ J`; [`compare_with_direct`] reports by how much.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::basis::enumerate_basis;
use crate::error::Result;
use crate::spin::{OccupationVector, SpinSpecies};

/// Bound parameters of the parametrized enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationParams {
    pub species: SpinSpecies,
    pub n: u32,
    pub twice_m: i64,
    /// First admissible `k`.
    pub k0: i64,
    /// Last admissible `k` ("max").
    pub k_max: i64,
    /// Parity offset "min" (spin 1 and spin 3/2).
    pub parity_min: Option<i64>,
    /// `α = N/2 - |M|` (spin 3/2) or `N - |M|` (spin 2).
    pub alpha: Option<i64>,
    pub beta_of_k: BTreeMap<i64, i64>,
    pub gamma_of_k: BTreeMap<i64, i64>,
    pub mk_table: BTreeMap<i64, i64>,
    /// Inclusive `k1` range per `k`; empty when `m_k < 1`.
    pub k1_range: BTreeMap<i64, (i64, i64)>,
    /// Inclusive `k2` range per `(k, k1)` (spin 2 only).
    pub k2_range: BTreeMap<(i64, i64), (i64, i64)>,
    /// Sign factor applied to `n_2 - n_3` (or `n_2 - n_4`); `+1` at `M = 0`.
    pub sign: i64,
}

fn positive_part(x: i64) -> i64 {
    x.max(0)
}

fn parity_min(j_minus_m: i64) -> i64 {
    // ½[(-1)^{J-|M|+1} + 1]
    if j_minus_m.rem_euclid(2) == 1 {
        1
    } else {
        0
    }
}

/// Evaluates the parametrized bound formulas for `(species, N, M)`.
pub fn enumeration_bounds(species: SpinSpecies, n: u32, twice_m: i64) -> Result<EnumerationParams> {
    species.check_subspace(n, twice_m)?;
    let twice_j = species.twice_j(n);
    // J - |M| is an integer whenever the subspace exists
    let j_minus_m = (twice_j - twice_m.abs()) / 2;
    let sign = if twice_m < 0 { -1 } else { 1 };
    let n = n as i64;

    let mut p = EnumerationParams {
        species,
        n: n as u32,
        twice_m,
        k0: 0,
        k_max: 0,
        parity_min: None,
        alpha: None,
        beta_of_k: BTreeMap::new(),
        gamma_of_k: BTreeMap::new(),
        mk_table: BTreeMap::new(),
        k1_range: BTreeMap::new(),
        k2_range: BTreeMap::new(),
        sign,
    };

    match species.twice_spin() {
        1 => {}
        2 => {
            let min = parity_min(j_minus_m);
            p.parity_min = Some(min);
            p.k_max = (j_minus_m - min) / 2;
        }
        3 => {
            let min = parity_min(j_minus_m);
            p.parity_min = Some(min);
            p.k_max = (j_minus_m - min) / 2;
            // α₁ = N/2 - |M| = (N - |2M|)/2, integral by parity
            let alpha = (n - twice_m.abs()) / 2;
            let a_plus = positive_part(alpha);
            p.alpha = Some(alpha);
            p.k0 = (a_plus + a_plus.rem_euclid(2)) / 2;
            for k in p.k0..=p.k_max {
                let gamma = j_minus_m - 3 * k;
                let beta = k - a_plus;
                let x = beta.min(0) + k + 1;
                let mk = positive_part(x) + positive_part(gamma);
                p.gamma_of_k.insert(k, gamma);
                p.beta_of_k.insert(k, beta);
                p.mk_table.insert(k, mk);
                p.k1_range.insert(k, (1, mk));
            }
        }
        4 => {
            let m_abs = twice_m.abs() / 2;
            let alpha = n - m_abs;
            let a_plus = positive_part(alpha);
            p.alpha = Some(alpha);
            p.k0 = match a_plus.rem_euclid(3) {
                0 => 2 * a_plus / 3,
                1 => (2 * a_plus + 1) / 3,
                _ => (2 * a_plus + 2) / 3,
            };
            let q = 2 * n - m_abs;
            p.k_max = match q.rem_euclid(3) {
                0 => 2 * q / 3,
                2 => (2 * q - 1) / 3,
                _ => (2 * q - 2) / 3,
            };
            for k in p.k0..=p.k_max {
                let gamma = j_minus_m - 2 * k;
                let beta = k - a_plus;
                let qk = (2 * k + 3 + if k % 2 == 0 { 1 } else { -1 }) / 4;
                let mk = positive_part(positive_part(beta) + qk) + gamma.min(0);
                p.gamma_of_k.insert(k, gamma);
                p.beta_of_k.insert(k, beta);
                p.mk_table.insert(k, mk);
                p.k1_range.insert(k, (1, mk));
                for k1 in 1..=mk {
                    p.k2_range.insert((k, k1), (0, mk - k1));
                }
            }
        }
        _ => unreachable!("species validated on construction"),
    }
    Ok(p)
}

/// Basis size predicted by the parametrized count formulas.
pub fn basis_count_paper(species: SpinSpecies, n: u32, twice_m: i64) -> Result<i64> {
    let p = enumeration_bounds(species, n, twice_m)?;
    Ok(match species.twice_spin() {
        1 => 1,
        2 => p.k_max + 1,
        3 => p.mk_table.values().sum(),
        _ => p.mk_table.values().map(|&m| m * (m + 1) / 2).sum(),
    })
}

/// Output of running the parametrized constraint systems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParametrizedBasis {
    /// Number of `(k, k1, k2)` index tuples visited.
    pub candidates: usize,
    /// Candidates whose linear system has no non-negative integer solution.
    pub inadmissible: usize,
    /// Distinct admissible occupation vectors, canonical order.
    pub vectors: Vec<OccupationVector>,
}

fn solve_pair(sum: i64, diff: i64) -> Option<(i64, i64)> {
    if (sum + diff).rem_euclid(2) != 0 {
        return None;
    }
    Some(((sum + diff) / 2, (sum - diff) / 2))
}

/// Generates occupation vectors from the parametrized constraint systems.
pub fn parametrized_basis(species: SpinSpecies, n: u32, twice_m: i64) -> Result<ParametrizedBasis> {
    let p = enumeration_bounds(species, n, twice_m)?;
    let n_i = n as i64;
    let mut candidates = 0usize;
    let mut found: BTreeSet<OccupationVector> = BTreeSet::new();
    let mut push = |v: Option<Vec<i64>>| {
        candidates += 1;
        match v {
            Some(v) if v.iter().all(|&c| c >= 0) => {
                found.insert(OccupationVector::new(v.into_iter().map(|c| c as u32).collect()));
                true
            }
            _ => false,
        }
    };
    let mut admissible = 0usize;
    match species.twice_spin() {
        1 => {
            // |J,M> = |n1, n2> with n1 - n2 = 2M
            let v = solve_pair(n_i, twice_m).map(|(a, b)| vec![a, b]);
            admissible += push(v) as usize;
        }
        2 => {
            let m = twice_m / 2;
            let min = p.parity_min.unwrap_or(0);
            for k in 0..=p.k_max {
                let n0 = min + 2 * k;
                let v = solve_pair(n_i - n0, m).map(|(a, c)| vec![a, n0, c]);
                admissible += push(v) as usize;
            }
        }
        3 => {
            for (&k, &(lo, hi)) in &p.k1_range {
                let gamma = p.gamma_of_k[&k];
                for k1 in lo..=hi {
                    let diff23 = p.sign * gamma;
                    let sum23 = gamma.abs() - 2 * (k1 - 1);
                    let v = solve_pair(sum23, diff23).and_then(|(n2, n3)| {
                        // n1 + n4 = N - (n2+n3),  3(n1 - n4) = 2M - (n2 - n3)
                        let rest = twice_m - diff23;
                        if rest.rem_euclid(3) != 0 {
                            return None;
                        }
                        solve_pair(n_i - sum23, rest / 3).map(|(n1, n4)| vec![n1, n2, n3, n4])
                    });
                    admissible += push(v) as usize;
                }
            }
        }
        _ => {
            let m = twice_m / 2;
            for (&(k, k1), &(lo, hi)) in &p.k2_range {
                let gamma = p.gamma_of_k[&k];
                for k2 in lo..=hi {
                    let diff24 = p.sign * gamma;
                    let sum24 = gamma + 2 * (k1 - 1);
                    let n3 = 2 * (k2 + 1) + if k % 2 == 0 { 0 } else { 1 } - 2;
                    let v = solve_pair(sum24, diff24).and_then(|(n2, n4)| {
                        // n1 + n5 = N - n2 - n3 - n4,  2(n1 - n5) = M - (n2 - n4)
                        let rest = m - diff24;
                        if rest.rem_euclid(2) != 0 {
                            return None;
                        }
                        solve_pair(n_i - sum24 - n3, rest / 2).map(|(n1, n5)| vec![n1, n2, n3, n4, n5])
                    });
                    admissible += push(v) as usize;
                }
            }
        }
    }
    let mut vectors: Vec<_> = found.into_iter().collect();
    vectors.reverse();
    Ok(ParametrizedBasis { candidates, inadmissible: candidates - admissible, vectors })
}

/// Side-by-side comparison of the parametrized and direct enumerations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsComparison {
    pub direct_count: usize,
    pub formula_count: i64,
    pub parametrized: ParametrizedBasis,
    /// Direct solutions the parametrization never produces.
    pub missing: Vec<OccupationVector>,
    /// Parametrized vectors that are not direct solutions.
    pub spurious: Vec<OccupationVector>,
}

impl BoundsComparison {
    pub fn consistent(&self) -> bool {
        self.missing.is_empty()
            && self.spurious.is_empty()
            && self.formula_count == self.direct_count as i64
    }
}

fn descending<'a>(it: impl Iterator<Item = &'a OccupationVector>) -> Vec<OccupationVector> {
    let mut v: Vec<_> = it.cloned().collect();
    v.reverse();
    v
}

pub fn compare_with_direct(species: SpinSpecies, n: u32, twice_m: i64) -> Result<BoundsComparison> {
    let direct = enumerate_basis(species, n, twice_m)?;
    let formula_count = basis_count_paper(species, n, twice_m)?;
    let parametrized = parametrized_basis(species, n, twice_m)?;
    let d: BTreeSet<_> = direct.iter().cloned().collect();
    let g: BTreeSet<_> = parametrized.vectors.iter().cloned().collect();
    Ok(BoundsComparison {
        direct_count: direct.len(),
        formula_count,
        missing: descending(d.difference(&g)),
        spurious: descending(g.difference(&d)),
        parametrized,
    })
}
