use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::density::TwoQuditDensity;
use crate::coefficients::{dicke_expansion, DickeExpansion};
use crate::error::{DickeError, Result};
use crate::spin::{OccupationVector, SpinSpecies};

const UP: usize = 0;
const ZERO: usize = 1;
const DOWN: usize = 2;

/// A pure two-qutrit state, amplitudes in product order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQutritState(pub [Complex64; 9]);

impl TwoQutritState {
    fn from_terms(terms: &[(usize, usize, Complex64)]) -> Self {
        let mut v = [Complex64::new(0.0, 0.0); 9];
        for &(a, b, c) in terms {
            v[3 * a + b] += c;
        }
        Self(v)
    }

    pub fn amplitudes(&self) -> &[Complex64; 9] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn density(&self) -> Result<TwoQuditDensity> {
        TwoQuditDensity::from_pure(&self.0)
    }

    /// Symmetrized first-quantized form of a two-particle spin-1 expansion.
    pub fn from_expansion(x: &DickeExpansion) -> Result<Self> {
        if x.species != SpinSpecies::ONE {
            return Err(DickeError::RequiresSpinOne(x.species.twice_spin()));
        }
        if x.n != 2 {
            return Err(DickeError::Parse(format!("expected a two-particle expansion, got N = {}", x.n)));
        }
        let mut v = [Complex64::new(0.0, 0.0); 9];
        for a in 0..3 {
            for b in 0..3 {
                let mut counts = vec![0u32; 3];
                counts[a] += 1;
                counts[b] += 1;
                // each ordered configuration carries C·sqrt(∏n!/N!)
                let weight = if a == b { 1.0 } else { 0.5f64.sqrt() };
                v[3 * a + b] = Complex64::new(x.amplitude(&OccupationVector::new(counts)) * weight, 0.0);
            }
        }
        Ok(Self(v))
    }
}

/// The named two-qutrit states with published negativities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedState {
    /// `(|↑↑> + |00> + |↓↓>)/√3`.
    BellG,
    /// `√(1/3)[|↑↑> + c1 (|↑↓>+|↓↑>)/√2 + c2 |00> + |↓↓>]`.
    Psi1 { c1: Complex64, c2: Complex64 },
    /// `Psi1` at `c1 = √(1/3)`, `c2 = √(2/3)`: the even spin coherent state.
    PsiE,
    /// `(|↑↓>+|↓↑>)/2 + |00>/√2`.
    Psi2,
    /// `√(1/3)(|↑↓> + |↓↑> + |00>)`.
    BsPlus,
    /// `√(1/3)(|↑↓> + |↓↑> - |00>)`.
    BsMinus,
    /// The two-particle Dicke state `|2,0>`.
    Dicke20,
}

impl NamedState {
    pub fn psi1(c1: Complex64, c2: Complex64) -> Result<Self> {
        let total = c1.norm_sqr() + c2.norm_sqr();
        if (total - 1.0).abs() > 1e-10 {
            return Err(DickeError::CoefficientConstraint(total));
        }
        Ok(NamedState::Psi1 { c1, c2 })
    }

    pub fn state(&self) -> Result<TwoQutritState> {
        let r = |x: f64| Complex64::new(x, 0.0);
        let third = (1.0f64 / 3.0).sqrt();
        let h = 0.5f64.sqrt();
        Ok(match *self {
            NamedState::BellG => {
                TwoQutritState::from_terms(&[(UP, UP, r(third)), (ZERO, ZERO, r(third)), (DOWN, DOWN, r(third))])
            }
            NamedState::Psi1 { c1, c2 } => TwoQutritState::from_terms(&[
                (UP, UP, r(third)),
                (UP, DOWN, c1 * third * h),
                (DOWN, UP, c1 * third * h),
                (ZERO, ZERO, c2 * third),
                (DOWN, DOWN, r(third)),
            ]),
            NamedState::PsiE => NamedState::psi1(r(third), r((2.0f64 / 3.0).sqrt()))?.state()?,
            NamedState::Psi2 => {
                TwoQutritState::from_terms(&[(UP, DOWN, r(0.5)), (DOWN, UP, r(0.5)), (ZERO, ZERO, r(h))])
            }
            NamedState::BsPlus | NamedState::BsMinus => {
                let sign = if *self == NamedState::BsPlus { 1.0 } else { -1.0 };
                TwoQutritState::from_terms(&[
                    (UP, DOWN, r(third)),
                    (DOWN, UP, r(third)),
                    (ZERO, ZERO, r(sign * third)),
                ])
            }
            NamedState::Dicke20 => TwoQutritState::from_expansion(&dicke_expansion(SpinSpecies::ONE, 2, 0)?)?,
        })
    }
}

impl FromStr for NamedState {
    type Err = DickeError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if let Some(params) = lower.strip_prefix("psi1:") {
            let parts: Vec<&str> = params.split(',').collect();
            if parts.len() != 2 {
                return Err(DickeError::UnknownState(s.to_string()));
            }
            let parse = |p: &str| -> Result<f64> {
                p.trim().parse::<f64>().map_err(|_| DickeError::Parse(format!("bad coefficient `{p}`")))
            };
            let (c1, c2) = (parse(parts[0])?, parse(parts[1])?);
            return NamedState::psi1(Complex64::new(c1, 0.0), Complex64::new(c2, 0.0));
        }
        match lower.as_str() {
            "bg" | "b_g" => Ok(NamedState::BellG),
            "psie" | "psi_e" => Ok(NamedState::PsiE),
            "psi2" | "psi_2" => Ok(NamedState::Psi2),
            "bsplus" | "bs+" => Ok(NamedState::BsPlus),
            "bsminus" | "bs-" => Ok(NamedState::BsMinus),
            "dicke20" | "2,0" => Ok(NamedState::Dicke20),
            _ => Err(DickeError::UnknownState(s.to_string())),
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedState::BellG => write!(f, "bg"),
            NamedState::Psi1 { c1, c2 } => write!(f, "psi1:{},{}", c1.re, c2.re),
            NamedState::PsiE => write!(f, "psie"),
            NamedState::Psi2 => write!(f, "psi2"),
            NamedState::BsPlus => write!(f, "bsplus"),
            NamedState::BsMinus => write!(f, "bsminus"),
            NamedState::Dicke20 => write!(f, "dicke20"),
        }
    }
}

pub fn named_two_qutrit_state(name: &str) -> Result<TwoQutritState> {
    name.parse::<NamedState>()?.state()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn all_normalized() {
        for name in ["bg", "psie", "psi2", "bsplus", "bsminus", "dicke20", "psi1:1,0", "psi1:0.6,0.8"] {
            assert_abs_diff_eq!(named_two_qutrit_state(name).unwrap().norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn psi1_substitution() {
        let s = named_two_qutrit_state("psi1:1,0").unwrap();
        let t = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(s.0[0].re, t, epsilon = 1e-15);
        assert_abs_diff_eq!(s.0[2].re, t / 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(s.0[4].re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn dicke20_matches_literal_form() {
        let s = named_two_qutrit_state("dicke20").unwrap();
        assert_abs_diff_eq!(s.0[2].re, (1.0f64 / 6.0).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(s.0[6].re, (1.0f64 / 6.0).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(s.0[4].re, (2.0f64 / 3.0).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn psie_is_even_coherent_state() {
        // (|2,2> + |2,0> + |2,-2>)/√3
        let s = named_two_qutrit_state("psie").unwrap();
        let d20 = named_two_qutrit_state("dicke20").unwrap();
        let t = 1.0 / 3f64.sqrt();
        for i in 0..9 {
            let mut expected = d20.0[i].re * t;
            if i == 0 || i == 8 {
                expected += t;
            }
            assert_abs_diff_eq!(s.0[i].re, expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!("psi1:1,1".parse::<NamedState>(), Err(DickeError::CoefficientConstraint(_))));
        assert!(matches!("ghz".parse::<NamedState>(), Err(DickeError::UnknownState(_))));
    }
}
