//! Code families: D-dimensional toric codes with their explicit logical
//! operators, and the Steane code.
//!
//! In `TC(D, i)` qubits sit on the i-cells of the cubic cellulation of the
//! D-torus of side `L`. Z checks are (i−1)-cells, X checks are (i+1)-cells,
//! and both matrices are boundary maps, so `H_X·H_Zᵀ = 0` is `∂∘∂ = 0`.
//!
//! A cell `c(p, I)` is anchored at a lattice point `p ∈ Z_L^D` and spans the
//! unit directions in `I`. Directions are 0-based here. Cells of one
//! dimension are indexed lexicographically by `(I, p)`: direction sets in
//! lexicographic order of their sorted elements, then points in row-major
//! order (first coordinate most significant).

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Anchor point and direction set of a cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellIndex {
    pub point: Vec<usize>,
    pub directions: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ToricCode {
    dim: usize,
    cell_dim: usize,
    side: usize,
    code: CssCode,
}

/// All size-`size` subsets of `0..dim` as bitmasks, in lexicographic order of
/// their sorted elements.
fn direction_sets(dim: usize, size: usize) -> Vec<u32> {
    fn rec(start: usize, dim: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for j in start..dim {
            rec(j + 1, dim, left - 1, acc | 1 << j, out);
        }
    }
    let mut out = Vec::new();
    rec(0, dim, size, 0, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Index arithmetic for the cells of one dimension.
struct CellLayout {
    dim: usize,
    side: usize,
    volume: usize,
    /// Rank of each direction mask; `usize::MAX` for masks of other sizes.
    rank_of_mask: Vec<usize>,
    masks: Vec<u32>,
}

impl CellLayout {
    fn new(dim: usize, side: usize, cell_dim: usize) -> Self {
        let masks = direction_sets(dim, cell_dim);
        let mut rank_of_mask = vec![usize::MAX; 1 << dim];
        for (r, &m) in masks.iter().enumerate() {
            rank_of_mask[m as usize] = r;
        }
        Self {
            dim,
            side,
            volume: side.pow(dim as u32),
            rank_of_mask,
            masks,
        }
    }

    fn count(&self) -> usize {
        self.masks.len() * self.volume
    }

    fn index(&self, point: &[usize], mask: u32) -> usize {
        let lin = point.iter().fold(0, |acc, &x| acc * self.side + x);
        self.rank_of_mask[mask as usize] * self.volume + lin
    }

    fn decode(&self, index: usize) -> (Vec<usize>, u32) {
        let mask = self.masks[index / self.volume];
        let mut lin = index % self.volume;
        let mut point = vec![0; self.dim];
        for k in (0..self.dim).rev() {
            point[k] = lin % self.side;
            lin /= self.side;
        }
        (point, mask)
    }
}

/// Rows of a boundary map from `cell_dim`-cells to (cell_dim−1)-cells,
/// transposed: for each `cell_dim`-cell, the indices of its boundary cells.
fn boundary_columns(dim: usize, side: usize, cell_dim: usize) -> (usize, Vec<Vec<usize>>) {
    let upper = CellLayout::new(dim, side, cell_dim);
    let lower = CellLayout::new(dim, side, cell_dim - 1);
    let cols = (0..upper.count())
        .map(|idx| {
            let (point, mask) = upper.decode(idx);
            let mut faces = Vec::with_capacity(2 * cell_dim);
            for j in (0..dim).filter(|j| mask >> j & 1 == 1) {
                let face = mask & !(1 << j);
                faces.push(lower.index(&point, face));
                let mut shifted = point.clone();
                shifted[j] = (shifted[j] + 1) % side;
                faces.push(lower.index(&shifted, face));
            }
            faces
        })
        .collect();
    (lower.count(), cols)
}

/// Builds `TC(dim, cell_dim)` on the torus of side `side`.
pub fn toric_code(dim: usize, cell_dim: usize, side: usize) -> Result<ToricCode> {
    if !(2..=16).contains(&dim) {
        return Err(Error::InvalidParameter(format!("toric dimension D = {dim} must be in 2..=16")));
    }
    if cell_dim < 1 || cell_dim >= dim {
        return Err(Error::InvalidParameter(format!(
            "cell dimension i = {cell_dim} must satisfy 1 <= i <= D - 1 = {}",
            dim - 1
        )));
    }
    if side < 2 {
        return Err(Error::InvalidParameter(format!("side L = {side} must be at least 2")));
    }

    // H_Z = ∂_i, with rows indexed by (i−1)-cells.
    let (num_lower, qubit_faces) = boundary_columns(dim, side, cell_dim);
    let n = qubit_faces.len();
    let mut h_z = BitMatrix::zeros(num_lower, n);
    for (q, faces) in qubit_faces.iter().enumerate() {
        for &f in faces {
            h_z.set(f, q, true);
        }
    }

    // H_X = ∂_{i+1}ᵀ, with rows indexed by (i+1)-cells.
    let (_, x_checks) = boundary_columns(dim, side, cell_dim + 1);
    let h_x = BitMatrix::from_row_supports(n, &x_checks);

    let code = CssCode::new(format!("toric-{dim}-{cell_dim}-{side}"), h_x, h_z)?;
    Ok(ToricCode {
        dim,
        cell_dim,
        side,
        code,
    })
}

impl ToricCode {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cell_dim(&self) -> usize {
        self.cell_dim
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    pub fn into_code(self) -> CssCode {
        self.code
    }

    /// `C(D, i)`, the number of independent logical qubits.
    pub fn expected_logicals(&self) -> usize {
        binomial(self.dim, self.cell_dim)
    }

    /// All direction sets of size `i`, in column order.
    pub fn direction_sets(&self) -> Vec<Vec<usize>> {
        direction_sets(self.dim, self.cell_dim)
            .into_iter()
            .map(|m| (0..self.dim).filter(|j| m >> j & 1 == 1).collect())
            .collect()
    }

    fn layout(&self) -> CellLayout {
        CellLayout::new(self.dim, self.side, self.cell_dim)
    }

    fn check_point(&self, point: &[usize]) -> Result<()> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "lattice point coordinates",
                expected: self.dim,
                found: point.len(),
            });
        }
        Ok(())
    }

    fn mask_of(&self, directions: &[usize], size: usize) -> Result<u32> {
        let mut mask = 0u32;
        for &j in directions {
            if j >= self.dim || mask >> j & 1 == 1 {
                return Err(Error::InvalidParameter(format!(
                    "direction set {directions:?} must hold distinct directions below {}",
                    self.dim
                )));
            }
            mask |= 1 << j;
        }
        if directions.len() != size {
            return Err(Error::InvalidParameter(format!(
                "direction set {directions:?} must have size {size}"
            )));
        }
        Ok(mask)
    }

    /// Column index of the qubit on cell `c(point, directions)`.
    pub fn qubit_index(&self, point: &[usize], directions: &[usize]) -> Result<usize> {
        self.check_point(point)?;
        let mask = self.mask_of(directions, self.cell_dim)?;
        let reduced: Vec<usize> = point.iter().map(|x| x % self.side).collect();
        Ok(self.layout().index(&reduced, mask))
    }

    pub fn qubit_cell(&self, index: usize) -> CellIndex {
        let (point, mask) = self.layout().decode(index);
        CellIndex {
            point,
            directions: (0..self.dim).filter(|j| mask >> j & 1 == 1).collect(),
        }
    }

    /// Sum of the cells `c(q, I)` over the lattice points `q` of the sheet
    /// through `point` spanned by `sheet_mask`.
    fn sheet(&self, point: &[usize], cell_mask: u32, sheet_mask: u32) -> BitVector {
        let layout = self.layout();
        let dirs: Vec<usize> = (0..self.dim).filter(|j| sheet_mask >> j & 1 == 1).collect();
        let count = self.side.pow(dirs.len() as u32);
        let mut out = BitVector::zeros(layout.count());
        let mut q: Vec<usize> = point.iter().map(|x| x % self.side).collect();
        for mut t in 0..count {
            for &j in &dirs {
                q[j] = (point[j] + t % self.side) % self.side;
                t /= self.side;
            }
            out.set(layout.index(&q, cell_mask), true);
        }
        out
    }

    /// Logical X operator tiling the i-dimensional sheet through `point`
    /// spanned by `directions`. Its support has `L^i` cells.
    pub fn logical_x(&self, point: &[usize], directions: &[usize]) -> Result<BitVector> {
        self.check_point(point)?;
        let mask = self.mask_of(directions, self.cell_dim)?;
        Ok(self.sheet(point, mask, mask))
    }

    /// Logical Z operator: the cells `c(q, I)` for `q` on the complementary
    /// (D−i)-dimensional sheet through `point`. Its support has `L^(D−i)`
    /// cells and it commutes with every X check.
    pub fn logical_z(&self, point: &[usize], directions: &[usize]) -> Result<BitVector> {
        self.check_point(point)?;
        let mask = self.mask_of(directions, self.cell_dim)?;
        let complement = ((1u32 << self.dim) - 1) & !mask;
        Ok(self.sheet(point, mask, complement))
    }
}

pub fn toric_logical_x(tc: &ToricCode, point: &[usize], directions: &[usize]) -> Result<BitVector> {
    tc.logical_x(point, directions)
}

pub fn toric_logical_z(tc: &ToricCode, point: &[usize], directions: &[usize]) -> Result<BitVector> {
    tc.logical_z(point, directions)
}

/// The [[7,1,3]] Steane code; both sectors use the Hamming matrix whose
/// column `j` is the binary expansion of `j + 1`.
pub fn steane_code() -> CssCode {
    let h = BitMatrix::from_strs(&["1010101", "0110011", "0001111"]);
    CssCode::new("steane", h.clone(), h).expect("Hamming rows are self-orthogonal")
}
