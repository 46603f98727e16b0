//! Totally antisymmetric states of `2 ≤ n ≤ 2s+1` identical spin-s particles.
//!
//! States are stored fully expanded in first quantization: one term per
//! ordered assignment of levels to particle slots. With at most five
//! particles this never exceeds 120 terms.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{DickeError, Result};
use crate::spin::SpinSpecies;

/// Tolerance for amplitude comparisons in this module.
pub const ANTISYM_TOL: f64 = 1e-12;

/// A first-quantized state: per-slot twice-m assignments with amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstQuantizedState {
    pub species: SpinSpecies,
    pub n_particles: usize,
    pub terms: Vec<(Vec<i64>, f64)>,
}

impl FirstQuantizedState {
    pub fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|(_, a)| a * a).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for (_, a) in &mut out.terms {
            *a *= factor;
        }
        out
    }

    fn amplitude_map(&self) -> HashMap<&[i64], f64> {
        let mut map: HashMap<&[i64], f64> = HashMap::new();
        for (assignment, a) in &self.terms {
            *map.entry(assignment.as_slice()).or_insert(0.0) += a;
        }
        map
    }

    /// Dense vector over `(2s+1)^n` product states, level index 0 = `+s` first.
    pub fn to_dense(&self) -> Result<Vec<f64>> {
        let d = self.species.levels();
        let mut v = vec![0.0; d.pow(self.n_particles as u32)];
        for (assignment, a) in &self.terms {
            let mut idx = 0;
            for &tm in assignment {
                idx = idx * d + self.species.level_of_twice_m(tm)?;
            }
            v[idx] += a;
        }
        Ok(v)
    }

    pub fn inner(&self, other: &FirstQuantizedState) -> f64 {
        let theirs = other.amplitude_map();
        self.amplitude_map().iter().map(|(k, a)| a * theirs.get(k).copied().unwrap_or(0.0)).sum()
    }
}

/// Number of antisymmetric states, `2^{2s+1} - (2s+2)`.
pub fn antisym_count(species: SpinSpecies) -> u64 {
    let d = species.levels() as u32;
    2u64.pow(d) - (d as u64 + 1)
}

// All permutations of 0..n in lexicographic order, each with its parity sign.
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, f64)>) {
        let n = used.len();
        if prefix.len() == n {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1.0 } else { -1.0 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// `(1/sqrt(n!)) Σ_P sign(P) P(|m_1>…|m_n>)` over distinct levels (twice-m).
///
/// Levels are put in decreasing order first; that ordering carries sign `+1`.
pub fn elementary_antisym(species: SpinSpecies, levels: &[i64]) -> Result<FirstQuantizedState> {
    let max = species.levels();
    if levels.len() < 2 || levels.len() > max {
        return Err(DickeError::AntisymParticleCount { got: levels.len(), max });
    }
    for &tm in levels {
        species.level_of_twice_m(tm)?;
    }
    let mut sorted = levels.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(DickeError::RepeatedLevel(w[0]));
    }
    let n = sorted.len();
    let norm = 1.0 / (signed_permutations(n).len() as f64).sqrt();
    let terms = signed_permutations(n)
        .into_iter()
        .map(|(perm, sign)| (perm.iter().map(|&i| sorted[i]).collect(), sign * norm))
        .collect();
    Ok(FirstQuantizedState { species, n_particles: n, terms })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every elementary antisymmetric state, grouped by particle number.
pub fn enumerate_all_antisym(species: SpinSpecies) -> Vec<FirstQuantizedState> {
    let d = species.levels();
    let mut out = Vec::new();
    for k in 2..=d {
        for subset in combinations(d, k) {
            let levels: Vec<i64> = subset.iter().map(|&i| species.twice_m_of_level(i)).collect();
            out.push(elementary_antisym(species, &levels).expect("distinct in-range levels"));
        }
    }
    out
}

/// Whether every slot transposition negates the state (scale-free).
pub fn is_antisymmetric(x: &FirstQuantizedState) -> bool {
    let map = x.amplitude_map();
    if map.values().all(|a| a.abs() <= ANTISYM_TOL) {
        return true;
    }
    for i in 0..x.n_particles {
        for j in i + 1..x.n_particles {
            for (assignment, &a) in &map {
                let mut swapped = assignment.to_vec();
                swapped.swap(i, j);
                let b = map.get(swapped.as_slice()).copied().unwrap_or(0.0);
                if (a + b).abs() > ANTISYM_TOL {
                    return false;
                }
            }
        }
    }
    true
}

/// Result of generating the two-particle `J = 2s-1` multiplet and projecting
/// it onto the span of elementary pair states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairMultipletCheck {
    pub species: SpinSpecies,
    /// `(2M, residual norm after projection)` for `M = 2s-1 … -(2s-1)`.
    pub residuals: Vec<(i64, f64)>,
    /// `(2M, |overlap|)` with the single elementary pair state expected at
    /// `|M| = 2s-1` and `|M| = 2s-2`.
    pub edge_overlaps: Vec<(i64, f64)>,
}

impl PairMultipletCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

// s₋ ⊗ 1 + 1 ⊗ s₋ on a dense two-particle vector.
fn lower_pair(species: SpinSpecies, v: &[f64]) -> Vec<f64> {
    let d = species.levels();
    let ts = species.twice_spin() as f64;
    let mut out = vec![0.0; d * d];
    let w = |i: usize| ((ts - i as f64) * (i as f64 + 1.0)).sqrt();
    for a in 0..d {
        for b in 0..d {
            let amp = v[a * d + b];
            if amp == 0.0 {
                continue;
            }
            if a + 1 < d {
                out[(a + 1) * d + b] += amp * w(a);
            }
            if b + 1 < d {
                out[a * d + b + 1] += amp * w(b);
            }
        }
    }
    out
}

/// Builds the `J = 2s-1` pair multiplet by lowering and checks it lies in
/// the antisymmetric pair span.
pub fn check_pair_multiplet(species: SpinSpecies) -> Result<PairMultipletCheck> {
    let ts = species.twice_spin() as i64;
    let pairs: Vec<Vec<f64>> = combinations(species.levels(), 2)
        .into_iter()
        .map(|p| {
            let lv: Vec<i64> = p.iter().map(|&i| species.twice_m_of_level(i)).collect();
            elementary_antisym(species, &lv)?.to_dense()
        })
        .collect::<Result<_>>()?;
    let top = elementary_antisym(species, &[ts, ts - 2])?.to_dense()?;
    let twice_j = 2 * ts - 2;
    let mut residuals = Vec::new();
    let mut edge_overlaps = Vec::new();
    let mut state = top;
    let mut twice_m = twice_j;
    loop {
        let norm = state.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut state {
            *x /= norm;
        }
        let mut residual = state.clone();
        for p in &pairs {
            let c: f64 = p.iter().zip(&state).map(|(a, b)| a * b).sum();
            for (r, x) in residual.iter_mut().zip(p) {
                *r -= c * x;
            }
        }
        residuals.push((twice_m, residual.iter().map(|x| x * x).sum::<f64>().sqrt()));

        let edge = if twice_m.abs() == twice_j {
            Some(ts - 2)
        } else if twice_m.abs() == twice_j - 2 && ts >= 2 {
            Some(ts - 4)
        } else {
            None
        };
        if let Some(partner) = edge {
            let sgn = if twice_m < 0 { -1 } else { 1 };
            let e = elementary_antisym(species, &[sgn * ts, sgn * partner])?.to_dense()?;
            let ov: f64 = e.iter().zip(&state).map(|(a, b)| a * b).sum();
            edge_overlaps.push((twice_m, ov.abs()));
        }

        if twice_m == -twice_j {
            break;
        }
        state = lower_pair(species, &state);
        twice_m -= 2;
    }
    Ok(PairMultipletCheck { species, residuals, edge_overlaps })
}
