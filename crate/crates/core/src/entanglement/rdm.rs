//! Two-particle reductions of symmetric spin-1 states.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::Serialize;

use super::density::{BasisOrder, TwoQuditDensity, TwoQuditMatrix};
use crate::basis::enumerate_basis;
use crate::coefficients::DickeExpansion;
use crate::error::{DickeError, Result};
use crate::spin::{OccupationVector, SpinSpecies};

/// Largest particle number accepted by [`brute_force_rdm`].
pub const BRUTE_FORCE_MAX_N: u32 = 6;

/// The independent elements of the reduced density matrix.
///
/// `a[k]` holds `a_{k+1}`, `b[k]` holds `b_{k+1}`, `c` holds `(c_1, c_2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correlators {
    pub a: [f64; 9],
    pub b: [f64; 3],
    pub c: [f64; 2],
    /// `a_2` from the expanded form `1 - 2Σ|C|²(N-n0)/N + …`.
    pub a2_expanded: f64,
    /// `a_4` from the form `½Σ|C|²(N-n0)/N + M/2N - …`.
    pub a4_expanded: f64,
    /// `a_6` from the form `½Σ|C|²(N-n0)/N - M/2N - …`.
    pub a6_expanded: f64,
}

fn check_spin_one(x: &DickeExpansion) -> Result<()> {
    if x.species != SpinSpecies::ONE {
        return Err(DickeError::RequiresSpinOne(x.species.twice_spin()));
    }
    if x.n < 2 {
        return Err(DickeError::Parse(format!("two-particle reduction needs N >= 2, got {}", x.n)));
    }
    if x.terms.iter().any(|(v, _)| v.len() != 3 || v.total() != x.n as u64 || v.twice_magnetization() != x.twice_m) {
        return Err(DickeError::InconsistentExpansion);
    }
    Ok(())
}

impl Correlators {
    /// Occupation-statistics formulas for the reduced matrix elements.
    pub fn from_expansion(x: &DickeExpansion) -> Result<Self> {
        check_spin_one(x)?;
        let n = x.n as f64;
        let pairs = n * (n - 1.0);
        let m = (x.twice_m / 2) as f64;
        let lookup: HashMap<&OccupationVector, f64> = x.terms.iter().map(|(v, c)| (v, *c)).collect();

        let (mut a2, mut a3, mut a8, mut a9, mut b1, mut b2, mut c1) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let (mut up_down_mean, mut a2_tail, mut a4_tail, mut a6_tail) = (0.0, 0.0, 0.0, 0.0);
        for (v, c) in &x.terms {
            let w = c * c;
            let [n1, n0, nm] = [0, 1, 2].map(|i| v.counts()[i] as f64);
            a2 += w * n0 * (n0 - 1.0);
            a3 += w * n1 * nm;
            a8 += w * n1 * (n1 - 1.0);
            a9 += w * nm * (nm - 1.0);
            b1 += w * n1 * n0;
            b2 += w * n0 * nm;
            up_down_mean += w * (n - n0) / n;
            a2_tail += w * (n1 * nm + 0.5 * (n1 * (n1 - 1.0) + nm * (nm - 1.0)));
            a4_tail += w * (n1 * nm + n1 * (n1 - 1.0));
            a6_tail += w * (n1 * nm + nm * (nm - 1.0));
            if v.counts()[1] >= 2 {
                let c0 = v.counts();
                let partner = OccupationVector::new(vec![c0[0] + 1, c0[1] - 2, c0[2] + 1]);
                if let Some(cp) = lookup.get(&partner) {
                    c1 += c * cp * (n0 * (n0 - 1.0) * (n1 + 1.0) * (nm + 1.0)).sqrt();
                }
            }
        }
        let norm = x.norm_sq();
        let [a2, a3, a8, a9, b1, b2, c1] = [a2, a3, a8, a9, b1, b2, c1].map(|t| t / pairs);
        Ok(Correlators {
            // a1 = a3 by exchange symmetry
            a: [a3, a2, a3, b1, b1, b2, b2, a8, a9],
            b: [b1, b2, a3],
            c: [c1, c1],
            a2_expanded: norm - 2.0 * up_down_mean + 2.0 * a2_tail / pairs,
            a4_expanded: 0.5 * up_down_mean + norm * m / (2.0 * n) - a4_tail / pairs,
            a6_expanded: 0.5 * up_down_mean - norm * m / (2.0 * n) - a6_tail / pairs,
        })
    }

    /// `|Σ a_k - 1|`.
    pub fn trace_closure_residual(&self) -> f64 {
        (self.a.iter().sum::<f64>() - 1.0).abs()
    }

    /// Largest gap between the direct and the expanded element forms.
    pub fn expanded_form_residual(&self) -> f64 {
        [self.a[1] - self.a2_expanded, self.a[3] - self.a4_expanded, self.a[5] - self.a6_expanded]
            .iter()
            .map(|d| d.abs())
            .fold(0.0, f64::max)
    }

    /// `diag(T1, T2, T3, a8, a9)` in [`BasisOrder::DickeBlocks`].
    pub fn to_matrix(&self) -> TwoQuditMatrix {
        let [a1, a2, a3, a4, a5, a6, a7, a8, a9] = self.a;
        let [b1, b2, b3] = self.b;
        let [c1, c2] = self.c;
        let mut m = DMatrix::<f64>::zeros(9, 9);
        let t1 = [[a1, c1, b3], [c1, a2, c2], [b3, c2, a3]];
        for (i, row) in t1.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m[(3, 3)] = a4;
        m[(3, 4)] = b1;
        m[(4, 3)] = b1;
        m[(4, 4)] = a5;
        m[(5, 5)] = a6;
        m[(5, 6)] = b2;
        m[(6, 5)] = b2;
        m[(6, 6)] = a7;
        m[(7, 7)] = a8;
        m[(8, 8)] = a9;
        TwoQuditMatrix::from_real(BasisOrder::DickeBlocks, &m).expect("9x9")
    }
}

/// Reduced two-particle density matrix from the correlator formulas.
pub fn dicke_two_particle_rdm(x: &DickeExpansion) -> Result<TwoQuditDensity> {
    TwoQuditDensity::new(Correlators::from_expansion(x)?.to_matrix())
}

/// Partial trace over `N - 2` particles of the full `3^N` tensor.
pub fn brute_force_rdm(x: &DickeExpansion) -> Result<TwoQuditDensity> {
    check_spin_one(x)?;
    if x.n > BRUTE_FORCE_MAX_N {
        return Err(DickeError::TooManyParticles { got: x.n, max: BRUTE_FORCE_MAX_N });
    }
    let n = x.n as usize;
    let dim = 3usize.pow(x.n);
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    let mut psi = vec![0.0; dim];
    for (idx, amp) in psi.iter_mut().enumerate() {
        let mut counts = vec![0u32; 3];
        let mut r = idx;
        for _ in 0..n {
            counts[r % 3] += 1;
            r /= 3;
        }
        let c = x.amplitude(&OccupationVector::new(counts.clone()));
        if c != 0.0 {
            *amp = c * (counts.iter().map(|&k| fact(k)).product::<f64>() / fact(x.n)).sqrt();
        }
    }
    // index = 9·rest + 3α + β with (α, β) the two kept particles
    let rest = dim / 9;
    let mut rho = DMatrix::<f64>::zeros(9, 9);
    for i in 0..9 {
        for j in 0..9 {
            rho[(i, j)] = (0..rest).map(|r| psi[9 * r + i] * psi[9 * r + j]).sum();
        }
    }
    // the least significant base-3 digit is particle 1
    let swap = |p: usize| 3 * (p % 3) + p / 3;
    let rho = DMatrix::from_fn(9, 9, |i, j| rho[(swap(i), swap(j))]);
    TwoQuditDensity::new(TwoQuditMatrix::from_real(BasisOrder::Product, &rho)?)
}

/// Uniform superposition over every occupation vector of a spin-1 `(N, M)` subspace.
pub fn equal_probability_expansion(n: u32, twice_m: i64) -> Result<DickeExpansion> {
    let basis = enumerate_basis(SpinSpecies::ONE, n, twice_m)?;
    let amp = 1.0 / (basis.len() as f64).sqrt();
    Ok(DickeExpansion::new(SpinSpecies::ONE, n, twice_m, basis.into_iter().map(|v| (v, amp)).collect()))
}
