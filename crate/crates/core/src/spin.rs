//! Single-particle spin species and occupation-number vectors.
//!
//! All magnetic quantum numbers are carried in twice-units so that
//! half-integer spins stay in integer arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{DickeError, Result};

/// Spin of one particle, stored as `2s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SpinSpecies(u32);

impl SpinSpecies {
    pub const HALF: SpinSpecies = SpinSpecies(1);
    pub const ONE: SpinSpecies = SpinSpecies(2);
    pub const THREE_HALVES: SpinSpecies = SpinSpecies(3);
    pub const TWO: SpinSpecies = SpinSpecies(4);

    pub const ALL: [SpinSpecies; 4] = [Self::HALF, Self::ONE, Self::THREE_HALVES, Self::TWO];

    pub fn from_twice(twice_spin: u32) -> Result<Self> {
        match twice_spin {
            1..=4 => Ok(SpinSpecies(twice_spin)),
            other => Err(DickeError::UnsupportedSpin(other)),
        }
    }

    pub fn twice_spin(self) -> u32 {
        self.0
    }

    pub fn spin(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Number of magnetic levels, `2s + 1`.
    pub fn levels(self) -> usize {
        self.0 as usize + 1
    }

    /// Twice the magnetic number of level `index`; index 0 is `m = +s`.
    pub fn twice_m_of_level(self, index: usize) -> i64 {
        self.0 as i64 - 2 * index as i64
    }

    /// Inverse of [`twice_m_of_level`](Self::twice_m_of_level).
    pub fn level_of_twice_m(self, twice_m: i64) -> Result<usize> {
        let ts = self.0 as i64;
        if twice_m.abs() > ts || (ts - twice_m) % 2 != 0 {
            return Err(DickeError::LevelOutOfRange(twice_m));
        }
        Ok(((ts - twice_m) / 2) as usize)
    }

    /// Iterator over twice-m values from `+2s` down to `-2s`.
    pub fn twice_m_values(self) -> impl Iterator<Item = i64> {
        (0..self.levels()).map(move |i| self.twice_m_of_level(i))
    }

    /// Twice the maximal total spin `J = sN`.
    pub fn twice_j(self, n: u32) -> i64 {
        self.0 as i64 * n as i64
    }

    /// Checks `N >= 1`, `|2M| <= 2sN` and the parity of `2M`.
    pub fn check_subspace(self, n: u32, twice_m: i64) -> Result<()> {
        if n == 0 {
            return Err(DickeError::NoParticles);
        }
        let twice_j = self.twice_j(n);
        if twice_m.abs() > twice_j {
            return Err(DickeError::MagnetizationOutOfRange { twice_m: twice_m.abs(), limit: twice_j });
        }
        if (twice_j - twice_m).rem_euclid(2) != 0 {
            return Err(DickeError::MagnetizationParity { twice_m, twice_j });
        }
        Ok(())
    }
}

impl TryFrom<u32> for SpinSpecies {
    type Error = DickeError;
    fn try_from(v: u32) -> Result<Self> {
        SpinSpecies::from_twice(v)
    }
}

impl From<SpinSpecies> for u32 {
    fn from(s: SpinSpecies) -> u32 {
        s.0
    }
}

impl fmt::Display for SpinSpecies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_half(self.0 as i64))
    }
}

impl FromStr for SpinSpecies {
    type Err = DickeError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1/2" | "0.5" => Ok(Self::HALF),
            "1" => Ok(Self::ONE),
            "3/2" | "1.5" => Ok(Self::THREE_HALVES),
            "2" => Ok(Self::TWO),
            other => Err(DickeError::BadSpinLiteral(other.to_string())),
        }
    }
}

/// Parses an integer or a half-integer written `p/2` into twice-units.
pub fn parse_twice(s: &str) -> Result<i64> {
    let bad = || DickeError::BadMagnetizationLiteral(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        match den {
            1 => Ok(2 * num),
            2 => Ok(num),
            _ => Err(bad()),
        }
    } else {
        let v: i64 = t.parse().map_err(|_| bad())?;
        Ok(2 * v)
    }
}

/// Renders a twice-unit quantity as `k` or `k/2`.
pub fn format_half(twice: i64) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{}/2", twice)
    }
}

/// Occupation numbers of the `2s + 1` levels, ordered from `m = +s` down to `m = -s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector(Vec<u32>);

impl OccupationVector {
    pub fn new(counts: Vec<u32>) -> Self {
        OccupationVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// `Σ 2m_i n_i` for the species whose level count matches this vector.
    pub fn twice_magnetization(&self) -> i64 {
        let ts = self.0.len() as i64 - 1;
        self.0
            .iter()
            .enumerate()
            .map(|(i, &c)| (ts - 2 * i as i64) * c as i64)
            .sum()
    }

    /// Reverses the levels, i.e. flips `m -> -m`.
    pub fn mirror(&self) -> OccupationVector {
        let mut c = self.0.clone();
        c.reverse();
        OccupationVector(c)
    }

    pub(crate) fn with_move(&self, from: usize, to: usize) -> OccupationVector {
        let mut c = self.0.clone();
        c[from] -= 1;
        c[to] += 1;
        OccupationVector(c)
    }
}

impl From<Vec<u32>> for OccupationVector {
    fn from(v: Vec<u32>) -> Self {
        OccupationVector(v)
    }
}

impl<const K: usize> From<[u32; K]> for OccupationVector {
    fn from(v: [u32; K]) -> Self {
        OccupationVector(v.to_vec())
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(">")
    }
}

/// Mirror of an occupation vector (`n_m <-> n_-m`).
pub fn mirror(occ: &OccupationVector) -> OccupationVector {
    occ.mirror()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_and_twice_m() {
        let s = SpinSpecies::THREE_HALVES;
        assert_eq!(s.levels(), 4);
        assert_eq!(s.twice_m_values().collect::<Vec<_>>(), vec![3, 1, -1, -3]);
        assert_eq!(s.level_of_twice_m(-1).unwrap(), 2);
        assert!(s.level_of_twice_m(0).is_err());
        assert!(SpinSpecies::from_twice(5).is_err());
    }

    #[test]
    fn parse_spin_and_m() {
        assert_eq!("3/2".parse::<SpinSpecies>().unwrap(), SpinSpecies::THREE_HALVES);
        assert_eq!("1".parse::<SpinSpecies>().unwrap(), SpinSpecies::ONE);
        assert!("5/2".parse::<SpinSpecies>().is_err());
        assert_eq!(parse_twice("7/2").unwrap(), 7);
        assert_eq!(parse_twice("-1").unwrap(), -2);
        assert_eq!(parse_twice("-3/2").unwrap(), -3);
        assert!(parse_twice("1/3").is_err());
        assert_eq!(format_half(-3), "-3/2");
        assert_eq!(format_half(4), "2");
    }

    #[test]
    fn subspace_checks() {
        let s = SpinSpecies::TWO;
        assert!(s.check_subspace(5, 20).is_ok());
        assert!(matches!(
            s.check_subspace(5, 198),
            Err(DickeError::MagnetizationOutOfRange { .. })
        ));
        assert!(matches!(
            SpinSpecies::HALF.check_subspace(3, 2),
            Err(DickeError::MagnetizationParity { .. })
        ));
        assert_eq!(s.check_subspace(0, 0), Err(DickeError::NoParticles));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror(&[4, 1, 5].into()), [5, 1, 4].into());
        assert_eq!(mirror(&[3, 4, 3].into()), [3, 4, 3].into());
        assert_eq!(mirror(&[1, 0, 5, 0].into()), [0, 5, 0, 1].into());
    }

    #[test]
    fn magnetization_of_vector() {
        let v: OccupationVector = [1, 3, 0, 2].into();
        assert_eq!(v.twice_magnetization(), 0);
        let v: OccupationVector = [4, 1, 0, 0, 0].into();
        assert_eq!(v.twice_magnetization(), 18);
    }
}
