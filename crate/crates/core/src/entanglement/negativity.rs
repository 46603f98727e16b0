use std::ops::Range;

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;
use serde::Serialize;

use super::density::{partial_transpose, BasisOrder, TwoQuditDensity};
use super::eigen::hermitian_eigenvalues;
use super::states::TwoQutritState;
use crate::error::Result;

/// Eigenvalues of the partial transpose below `-cutoff` count as negative.
pub const NEGATIVE_EIGENVALUE_CUTOFF: f64 = 1e-12;
/// Largest off-block entry tolerated before the block path is skipped.
pub const BLOCK_TOL: f64 = 1e-12;

/// Blocks of the reduced Dicke matrix in [`BasisOrder::DickeBlocks`].
pub const RHO_BLOCKS: [(&str, Range<usize>); 5] =
    [("T1", 0..3), ("T2", 3..5), ("T3", 5..7), ("a8", 7..8), ("a9", 8..9)];
/// Blocks of its partial transpose in [`BasisOrder::TransposedBlocks`].
pub const PT_BLOCKS: [(&str, Range<usize>); 5] =
    [("T1'", 0..3), ("T2'", 3..5), ("T3'", 5..7), ("a1", 7..8), ("a3", 8..9)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDecomposition {
    /// Block label with its eigenvalues.
    pub blocks: Vec<(String, Vec<f64>)>,
    /// Negativity summed block by block.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativityReport {
    pub value: f64,
    pub negative_eigenvalues: Vec<f64>,
    /// Present when the partial transpose is block diagonal in the Dicke pattern.
    pub block_decomposition: Option<BlockDecomposition>,
}

/// Largest `|m_ij|` with `i` and `j` in different blocks.
pub fn block_structure_residual(m: &DMatrix<Complex64>, blocks: &[(&str, Range<usize>)]) -> f64 {
    let block_of = |i: usize| blocks.iter().position(|(_, r)| r.contains(&i));
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if block_of(i) != block_of(j) {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

fn negative_part(eigenvalues: &[f64]) -> Vec<f64> {
    eigenvalues.iter().copied().filter(|&l| l < -NEGATIVE_EIGENVALUE_CUTOFF).collect()
}

// fold from +0.0 so an empty set prints as 0, not -0
fn abs_sum(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc, l| acc + l.abs())
}

/// `Σ |λ|` over the negative eigenvalues of the partial transpose.
///
/// The full 9×9 spectrum is always computed; the block decomposition is
/// added alongside when the structure allows it.
pub fn negativity(rho: &TwoQuditDensity) -> Result<NegativityReport> {
    let pt = partial_transpose(rho.matrix());
    let negative_eigenvalues = negative_part(&hermitian_eigenvalues(pt.entries())?);
    let value = abs_sum(&negative_eigenvalues);

    let pt = pt.to_order(BasisOrder::TransposedBlocks);
    let block_decomposition = if block_structure_residual(pt.entries(), &PT_BLOCKS) <= BLOCK_TOL {
        let mut blocks = Vec::new();
        let mut block_value = 0.0;
        for (label, r) in PT_BLOCKS {
            let sub = pt.entries().view((r.start, r.start), (r.len(), r.len())).into_owned();
            let ev = hermitian_eigenvalues(&sub)?;
            block_value += abs_sum(&negative_part(&ev));
            blocks.push((label.to_string(), ev));
        }
        Some(BlockDecomposition { blocks, value: block_value })
    } else {
        None
    };
    Ok(NegativityReport { value, negative_eigenvalues, block_decomposition })
}

/// Singular values of the 3×3 amplitude matrix `ψ_{αβ}`, descending.
pub fn schmidt_coefficients(state: &TwoQutritState) -> Vec<f64> {
    let m = Matrix3::from_fn(|a, b| state.amplitudes()[3 * a + b]);
    let mut s: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Pure-state negativity `Σ_{i<j} s_i s_j` from the Schmidt coefficients.
pub fn schmidt_negativity_oracle(state: &TwoQutritState) -> f64 {
    let s = schmidt_coefficients(state);
    let mut total = 0.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            total += s[i] * s[j];
        }
    }
    total
}
