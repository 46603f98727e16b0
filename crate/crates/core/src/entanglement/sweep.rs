//! Negativity as a function of magnetization for spin-1 state families.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::negativity::negativity;
use super::rdm::{dicke_two_particle_rdm, equal_probability_expansion};
use crate::coefficients::dicke_expansion;
use crate::error::{DickeError, Result};
use crate::spin::SpinSpecies;

pub const FIG1_SIZES: [u32; 7] = [20, 30, 40, 50, 60, 70, 80];
pub const FIG2_SIZES: [u32; 2] = [30, 80];

const SHAPE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    Dicke,
    Equal,
}

impl FromStr for StateFamily {
    type Err = DickeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dicke" => Ok(StateFamily::Dicke),
            "equal" => Ok(StateFamily::Equal),
            _ => Err(DickeError::UnknownState(s.to_string())),
        }
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateFamily::Dicke => "dicke",
            StateFamily::Equal => "equal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub family: StateFamily,
    pub n: u32,
    pub twice_m: i64,
    pub negativity: f64,
}

/// Two-particle negativity of one member of a spin-1 family.
pub fn negativity_at(family: StateFamily, n: u32, twice_m: i64) -> Result<f64> {
    let x = match family {
        StateFamily::Dicke => dicke_expansion(SpinSpecies::ONE, n, twice_m)?,
        StateFamily::Equal => equal_probability_expansion(n, twice_m)?,
    };
    Ok(negativity(&dicke_two_particle_rdm(&x)?)?.value)
}

/// Parallel over points; output keeps the order of `twice_ms`.
pub fn negativity_sweep(family: StateFamily, n: u32, twice_ms: &[i64]) -> Result<Vec<SweepPoint>> {
    twice_ms
        .par_iter()
        .map(|&twice_m| Ok(SweepPoint { family, n, twice_m, negativity: negativity_at(family, n, twice_m)? }))
        .collect()
}

fn non_negative_ms(n: u32) -> Vec<i64> {
    (0..=n as i64).map(|m| 2 * m).collect()
}

/// Dicke negativity for every size in [`FIG1_SIZES`] and `M = 0..=J`.
pub fn fig1_data() -> Result<Vec<SweepPoint>> {
    let grid: Vec<(u32, i64)> =
        FIG1_SIZES.iter().flat_map(|&n| non_negative_ms(n).into_iter().map(move |m| (n, m))).collect();
    grid.par_iter()
        .map(|&(n, twice_m)| {
            let v = negativity_at(StateFamily::Dicke, n, twice_m)?;
            Ok(SweepPoint { family: StateFamily::Dicke, n, twice_m, negativity: v })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Series {
    pub n: u32,
    pub dicke: Vec<SweepPoint>,
    pub equal: Vec<SweepPoint>,
}

/// Dicke and equal-probability negativity for `M = 0..=N` at one size.
pub fn fig2_data(n: u32) -> Result<Fig2Series> {
    let ms = non_negative_ms(n);
    Ok(Fig2Series {
        n,
        dicke: negativity_sweep(StateFamily::Dicke, n, &ms)?,
        equal: negativity_sweep(StateFamily::Equal, n, &ms)?,
    })
}

/// Shape violations of the Dicke sweep; empty when every property holds.
///
/// Per size: the `M = 0` value is the maximum, values are non-increasing in
/// `|M|`, and the top of the ladder is unentangled. Across sizes: the `M = 0`
/// value decreases with `N`.
pub fn check_fig1_shape(points: &[SweepPoint]) -> Vec<String> {
    let mut problems = Vec::new();
    let mut sizes: Vec<u32> = points.iter().map(|p| p.n).collect();
    sizes.dedup();
    let mut peaks = Vec::new();
    for &n in &sizes {
        let mut series: Vec<&SweepPoint> = points.iter().filter(|p| p.n == n).collect();
        series.sort_by_key(|p| p.twice_m.abs());
        let Some(first) = series.first() else { continue };
        if first.twice_m != 0 {
            problems.push(format!("N={n}: no M=0 point"));
            continue;
        }
        peaks.push((n, first.negativity));
        for w in series.windows(2) {
            if w[1].negativity > w[0].negativity + SHAPE_TOL {
                problems.push(format!(
                    "N={n}: negativity rises from {:.6} at 2M={} to {:.6} at 2M={}",
                    w[0].negativity, w[0].twice_m, w[1].negativity, w[1].twice_m
                ));
            }
        }
        if let Some(last) = series.last() {
            if last.twice_m.abs() == 2 * n as i64 && last.negativity != 0.0 {
                problems.push(format!("N={n}: M=J negativity {:e} is not zero", last.negativity));
            }
        }
    }
    for w in peaks.windows(2) {
        if w[1].1 >= w[0].1 {
            problems.push(format!("M=0 negativity does not decrease from N={} to N={}", w[0].0, w[1].0));
        }
    }
    problems
}

/// Equal-probability states must beat Dicke states at `M = 0`.
pub fn check_fig2_shape(series: &Fig2Series) -> Vec<String> {
    let at_zero = |v: &[SweepPoint]| v.iter().find(|p| p.twice_m == 0).map(|p| p.negativity);
    match (at_zero(&series.dicke), at_zero(&series.equal)) {
        (Some(d), Some(e)) if e > d => Vec::new(),
        (Some(d), Some(e)) => vec![format!("N={}: equal {e:.6} does not exceed dicke {d:.6} at M=0", series.n)],
        _ => vec![format!("N={}: missing M=0 point", series.n)],
    }
}
