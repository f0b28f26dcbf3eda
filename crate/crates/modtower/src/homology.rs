//! Cellular chain complexes and Betti numbers over the two-element field.

use crate::error::{Error, Result};
use crate::strata::CellComplexModel;

/// Dense bit matrix over F2, rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    pub rows: usize,
    pub cols: usize,
    words: Vec<u64>,
    words_per_row: usize,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            words: vec![0; rows * words_per_row],
            words_per_row,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let idx = r * self.words_per_row + c / 64;
        let bit = 1u64 << (c % 64);
        if v {
            self.words[idx] |= bit;
        } else {
            self.words[idx] &= !bit;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.words[r * self.words_per_row + c / 64] & (1u64 << (c % 64)) != 0
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (a, b) = (src * self.words_per_row, dst * self.words_per_row);
        for k in 0..self.words_per_row {
            self.words[b + k] ^= self.words[a + k];
        }
    }

    /// Rank by Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            if pivot != rank {
                for k in 0..m.words_per_row {
                    m.words.swap(
                        pivot * m.words_per_row + k,
                        rank * m.words_per_row + k,
                    );
                }
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// `self * rhs` over F2.
    pub fn multiply(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = F2Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    let (a, b) = (c * rhs.words_per_row, r * out.words_per_row);
                    for k in 0..rhs.words_per_row {
                        out.words[b + k] ^= rhs.words[a + k];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }
}

/// Boundary matrices of a cellular chain complex over F2.
///
/// `boundaries[d]` maps dimension-`d+1` chains to dimension-`d` chains
/// (columns index the higher cells).
#[derive(Clone, Debug)]
pub struct ChainComplexF2 {
    /// Cells per dimension.
    pub ranks: Vec<usize>,
    /// `boundaries[d]: C_{d+1} → C_d`.
    pub boundaries: Vec<F2Matrix>,
}

/// Diagnostics from assembling the mod-2 boundary.
#[derive(Clone, Debug, Default)]
pub struct BoundaryDiagnostics {
    /// (cell, face) pairs whose incidence multiplicity was even and dropped.
    pub even_incidences: Vec<(usize, usize)>,
}

/// Builds the mod-2 chain complex of a cell complex model. The boundary of a
/// cell is the sum of its codimension-1 faces; faces listed an even number of
/// times cancel and are reported in the diagnostics, guarding the regularity
/// assumption behind the mod-2 boundary.
pub fn chain_complex(model: &CellComplexModel) -> (ChainComplexF2, BoundaryDiagnostics) {
    let top = model.dims.iter().copied().max().unwrap_or(0);
    let mut per_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    let mut local_index = vec![0usize; model.cell_count()];
    for (i, &d) in model.dims.iter().enumerate() {
        local_index[i] = per_dim[d].len();
        per_dim[d].push(i);
    }
    let ranks: Vec<usize> = per_dim.iter().map(|v| v.len()).collect();
    let mut diagnostics = BoundaryDiagnostics::default();
    let mut boundaries = Vec::new();
    for d in 0..top {
        let mut m = F2Matrix::zero(ranks[d], ranks[d + 1]);
        for &cell in &per_dim[d + 1] {
            for &(face, mult) in &model.incidence[cell] {
                if mult % 2 == 0 {
                    diagnostics.even_incidences.push((cell, face));
                    continue;
                }
                debug_assert_eq!(model.dims[face], d);
                m.set(local_index[face], local_index[cell], true);
            }
        }
        boundaries.push(m);
    }
    (ChainComplexF2 { ranks, boundaries }, diagnostics)
}

impl ChainComplexF2 {
    /// Checks `∂∂ = 0` in every dimension.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].multiply(&w[1]).is_zero())
    }

    /// F2 Betti numbers `b_d = dim ker ∂_d − rank ∂_{d+1}`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let dims = self.ranks.len();
        let rank_out = |d: usize| -> usize {
            // rank of ∂ : C_d → C_{d−1}
            if d == 0 || d > self.boundaries.len() {
                0
            } else {
                self.boundaries[d - 1].rank()
            }
        };
        (0..dims)
            .map(|d| self.ranks[d] - rank_out(d) - rank_out(d + 1))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// Betti numbers of a complex model, with the regularity diagnostic enforced
/// to at most warn (even incidences simply drop out of the mod-2 boundary).
pub fn homology_f2(model: &CellComplexModel) -> Result<Vec<usize>> {
    let (cc, _) = chain_complex(model);
    if !cc.boundary_squares_to_zero() {
        return Err(Error::Unsupported(
            "boundary does not square to zero".into(),
        ));
    }
    Ok(cc.betti_numbers())
}
