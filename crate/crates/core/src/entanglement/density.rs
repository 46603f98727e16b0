use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::eigen::hermitian_eigenvalues;
use crate::error::{DickeError, Result};

/// Tolerance for Hermiticity and unit trace of a density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted for a density matrix.
pub const PSD_TOL: f64 = 1e-10;

/// Ordering of the nine two-qutrit product states along the matrix axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisOrder {
    /// `|↑↑>, |↑0>, |↑↓>, |0↑>, …, |↓↓>`.
    Product,
    /// `|↑↓>, |00>, |↓↑>, |↑0>, |0↑>, |0↓>, |↓0>, |↑↑>, |↓↓>`, where the
    /// reduced Dicke density matrix is block diagonal.
    DickeBlocks,
    /// `|↑↑>, |00>, |↓↓>, |↑0>, |0↓>, |0↑>, |↓0>, |↑↓>, |↓↑>`, where its
    /// partial transpose is block diagonal.
    TransposedBlocks,
}

const LEVEL_LABELS: [&str; 3] = ["↑", "0", "↓"];

impl BasisOrder {
    /// Product index stored at each position.
    pub fn slots(self) -> [usize; 9] {
        match self {
            BasisOrder::Product => [0, 1, 2, 3, 4, 5, 6, 7, 8],
            BasisOrder::DickeBlocks => [2, 4, 6, 1, 3, 5, 7, 0, 8],
            BasisOrder::TransposedBlocks => [0, 4, 8, 1, 5, 3, 7, 2, 6],
        }
    }

    /// Position of each product index.
    pub fn positions(self) -> [usize; 9] {
        let mut pos = [0; 9];
        for (k, &p) in self.slots().iter().enumerate() {
            pos[p] = k;
        }
        pos
    }

    pub fn labels(self) -> [String; 9] {
        self.slots().map(|p| format!("{}{}", LEVEL_LABELS[p / 3], LEVEL_LABELS[p % 3]))
    }

    /// Ordering used for the partial transpose of a matrix in this ordering.
    pub fn transposed(self) -> BasisOrder {
        match self {
            BasisOrder::Product => BasisOrder::Product,
            BasisOrder::DickeBlocks => BasisOrder::TransposedBlocks,
            BasisOrder::TransposedBlocks => BasisOrder::DickeBlocks,
        }
    }
}

/// A 9×9 complex matrix on the two-qutrit space with a declared ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQuditMatrix {
    order: BasisOrder,
    entries: DMatrix<Complex64>,
}

impl TwoQuditMatrix {
    pub fn new(order: BasisOrder, entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != 9 || entries.ncols() != 9 {
            return Err(DickeError::BadShape);
        }
        Ok(Self { order, entries })
    }

    pub fn from_real(order: BasisOrder, entries: &DMatrix<f64>) -> Result<Self> {
        Self::new(order, entries.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn order(&self) -> BasisOrder {
        self.order
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Entry addressed by product indices regardless of the stored ordering.
    pub fn product_entry(&self, row: usize, col: usize) -> Complex64 {
        let pos = self.order.positions();
        self.entries[(pos[row], pos[col])]
    }

    pub fn to_order(&self, order: BasisOrder) -> TwoQuditMatrix {
        let slots = order.slots();
        let entries = DMatrix::from_fn(9, 9, |i, j| self.product_entry(slots[i], slots[j]));
        TwoQuditMatrix { order, entries }
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `max |M - M^†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let m = &self.entries;
        let mut worst = 0.0f64;
        for i in 0..9 {
            for j in 0..9 {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &TwoQuditMatrix) -> f64 {
        let other = other.to_order(self.order);
        self.entries.iter().zip(other.entries.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// A validated two-qutrit density matrix: unit trace, Hermitian, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQuditDensity(TwoQuditMatrix);

impl TwoQuditDensity {
    pub fn new(matrix: TwoQuditMatrix) -> Result<Self> {
        let h = matrix.hermiticity_residual();
        if h > HERMITIAN_TOL {
            return Err(DickeError::NotSymmetric(h));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(DickeError::Parse(format!("density matrix trace {tr} is not 1")));
        }
        let min = hermitian_eigenvalues(matrix.entries())?[0];
        if min < -PSD_TOL {
            return Err(DickeError::Parse(format!("density matrix has eigenvalue {min:e}")));
        }
        Ok(Self(matrix))
    }

    /// `|ψ><ψ|` from product-order amplitudes; the state is normalized first.
    pub fn from_pure(amplitudes: &[Complex64; 9]) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(DickeError::Parse("zero state vector".into()));
        }
        let v: Vec<Complex64> = amplitudes.iter().map(|a| a / norm).collect();
        let entries = DMatrix::from_fn(9, 9, |i, j| v[i] * v[j].conj());
        Self::new(TwoQuditMatrix::new(BasisOrder::Product, entries)?)
    }

    pub fn matrix(&self) -> &TwoQuditMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> TwoQuditMatrix {
        self.0
    }

    pub fn to_order(&self, order: BasisOrder) -> TwoQuditDensity {
        TwoQuditDensity(self.0.to_order(order))
    }
}

/// Transpose on the second factor: `<αβ|ρ^T|α'β'> = <αβ'|ρ|α'β>`.
///
/// The result is stored in [`BasisOrder::transposed`] of the input ordering.
pub fn partial_transpose(rho: &TwoQuditMatrix) -> TwoQuditMatrix {
    let order = rho.order().transposed();
    let slots = order.slots();
    let entries = DMatrix::from_fn(9, 9, |i, j| {
        let (a, b) = (slots[i] / 3, slots[i] % 3);
        let (a2, b2) = (slots[j] / 3, slots[j] % 3);
        rho.product_entry(3 * a + b2, 3 * a2 + b)
    });
    TwoQuditMatrix { order, entries }
}
