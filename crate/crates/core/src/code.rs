//! CSS codes.
//!
//! Z checks are the rows of `h_z` and detect X errors; X checks are the rows
//! of `h_x`. Decoders in this crate work on the (H_Z, X-error) sector; the
//! other sector is handled by building the code with the matrices swapped.

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    name: String,
    h_x: BitMatrix,
    h_z: BitMatrix,
}

impl CssCode {
    /// Validates `H_X·H_Zᵀ = 0` and builds the code. The first anticommuting
    /// row pair in row-major order is reported.
    pub fn new(name: impl Into<String>, h_x: BitMatrix, h_z: BitMatrix) -> Result<Self> {
        if h_x.num_cols() != h_z.num_cols() {
            return Err(Error::DimensionMismatch {
                context: "H_X and H_Z column counts",
                expected: h_x.num_cols(),
                found: h_z.num_cols(),
            });
        }
        for (i, rx) in h_x.rows().iter().enumerate() {
            for (j, rz) in h_z.rows().iter().enumerate() {
                if rx.dot(rz) {
                    return Err(Error::CommutationViolation { x_row: i, z_row: j });
                }
            }
        }
        Ok(Self {
            name: name.into(),
            h_x,
            h_z,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn h_x(&self) -> &BitMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BitMatrix {
        &self.h_z
    }

    /// Number of physical qubits.
    pub fn n(&self) -> usize {
        self.h_z.num_cols()
    }

    pub fn num_x_checks(&self) -> usize {
        self.h_x.num_rows()
    }

    pub fn num_z_checks(&self) -> usize {
        self.h_z.num_rows()
    }

    /// `k = n − rank(H_X) − rank(H_Z)`.
    pub fn num_logical(&self) -> usize {
        self.n() - gf2::rank(&self.h_x) - gf2::rank(&self.h_z)
    }

    /// `H_Z·x`, the Z-check syndrome of an X error.
    pub fn syndrome(&self, x: &BitVector) -> Result<BitVector> {
        self.h_z.mul_vec(x)
    }

    /// The code with X and Z roles exchanged, for decoding Z errors.
    pub fn dual(&self) -> Self {
        Self {
            name: format!("{}-dual", self.name),
            h_x: self.h_z.clone(),
            h_z: self.h_x.clone(),
        }
    }
}

pub fn validate_css(h_x: BitMatrix, h_z: BitMatrix) -> Result<CssCode> {
    CssCode::new("css", h_x, h_z)
}

pub fn num_logical(code: &CssCode) -> usize {
    code.num_logical()
}

pub fn syndrome(code: &CssCode, x: &BitVector) -> Result<BitVector> {
    code.syndrome(x)
}
