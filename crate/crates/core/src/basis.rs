//! Occupation-number basis of the maximal-J subspace at fixed `(N, M)`.

use crate::error::Result;
use crate::spin::{OccupationVector, SpinSpecies};

/// Every non-negative integer solution of `Σ n_i = N`, `Σ 2m_i n_i = 2M`,
/// in descending lexicographic order of the counts tuple.
pub fn enumerate_basis(species: SpinSpecies, n: u32, twice_m: i64) -> Result<Vec<OccupationVector>> {
    species.check_subspace(n, twice_m)?;
    let mut out = Vec::new();
    let mut counts = vec![0u32; species.levels()];
    fill(species, 0, n, twice_m, &mut counts, &mut out);
    Ok(out)
}

// Assigns levels `level..` with `remaining` particles carrying `target` twice-magnetization.
fn fill(
    species: SpinSpecies,
    level: usize,
    remaining: u32,
    target: i64,
    counts: &mut [u32],
    out: &mut Vec<OccupationVector>,
) {
    let last = species.levels() - 1;
    let m_here = species.twice_m_of_level(level);
    if level == last {
        if m_here * remaining as i64 == target {
            counts[level] = remaining;
            out.push(OccupationVector::new(counts.to_vec()));
            counts[level] = 0;
        }
        return;
    }
    let m_next = species.twice_m_of_level(level + 1);
    let m_low = species.twice_m_of_level(last);
    for c in (0..=remaining).rev() {
        let rest = (remaining - c) as i64;
        let need = target - m_here * c as i64;
        // the rest must fit between all-lowest and all-next-highest
        if need > m_next * rest || need < m_low * rest {
            continue;
        }
        counts[level] = c;
        fill(species, level + 1, remaining - c, need, counts, out);
    }
    counts[level] = 0;
}
