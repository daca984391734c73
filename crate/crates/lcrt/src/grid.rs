//! Centered sample grids and the frequency grids the transforms induce.

use std::f64::consts::TAU;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid needs at least 2 samples, got {0}")]
    GridTooSmall(usize),
    #[error("grid length must be even, got {0}")]
    OddGrid(usize),
    #[error("grid spacing must be positive and finite, got {0}")]
    BadSpacing(f64),
}

/// Uniform centered grid: x_k = (k - n/2) * dx for k in 0..n.
///
/// n must be even so that x = 0 is a grid point and the frequency grid
/// below contains xi = 0; both the chirp factors and the multiplier
/// symbols are anchored there.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    n: usize,
    dx: f64,
}

impl SampleGrid {
    pub fn new(n: usize, dx: f64) -> Result<Self, GridError> {
        if n < 2 {
            return Err(GridError::GridTooSmall(n));
        }
        if !n.is_multiple_of(2) {
            return Err(GridError::OddGrid(n));
        }
        if !dx.is_finite() || dx <= 0.0 {
            return Err(GridError::BadSpacing(dx));
        }
        Ok(Self { n, dx })
    }

    /// Grid of n samples spanning a unit extent (dx = 1/n), the default
    /// coordinate assignment for image rasters.
    pub fn unit_extent(n: usize) -> Result<Self, GridError> {
        Self::new(n, 1.0 / n as f64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// x_k = (k - n/2) * dx.
    pub fn coord(&self, k: usize) -> f64 {
        (k as f64 - self.n as f64 / 2.0) * self.dx
    }

    /// Angular frequency of DFT bin m on this grid:
    /// xi_m = 2 pi (m - n/2) / (n dx). Bin n/2 is exactly xi = 0.
    pub fn xi(&self, m: usize) -> f64 {
        TAU * (m as f64 - self.n as f64 / 2.0) / (self.n as f64 * self.dx)
    }
}

/// Frequency-domain grid induced by transforming a [`SampleGrid`] with
/// matrix parameter b: output bin m sits at u_m = b * xi_m.
///
/// Keeps the source grid so an inverse transform can land back on the
/// exact original coordinates, and so chirp factors evaluated here agree
/// bit-for-bit with the ones the forward pass applied (recomputing the
/// source spacing from du would round differently and leave ~1e-8
/// round-trip residue when chirp phases reach 1e8 rad).
#[derive(Debug, Clone, PartialEq)]
pub struct FreqGrid {
    src: SampleGrid,
    b: f64,
}

impl FreqGrid {
    pub fn new(src: SampleGrid, b: f64) -> Self {
        Self { src, b }
    }

    pub fn n(&self) -> usize {
        self.src.n
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn source(&self) -> &SampleGrid {
        &self.src
    }

    pub fn xi(&self, m: usize) -> f64 {
        self.src.xi(m)
    }

    /// Output coordinate u_m = b * xi_m (decreasing in m when b < 0).
    pub fn u(&self, m: usize) -> f64 {
        self.b * self.src.xi(m)
    }

    /// Magnitude of the output spacing, |b| * 2 pi / (n dx).
    pub fn du(&self) -> f64 {
        TAU * self.b.abs() / (self.src.n as f64 * self.src.dx)
    }
}

/// Coordinate labeling of one raster axis.
#[derive(Debug, Clone, PartialEq)]
pub enum AxisGrid {
    Sample(SampleGrid),
    Freq(FreqGrid),
}

impl AxisGrid {
    pub fn n(&self) -> usize {
        match self {
            AxisGrid::Sample(g) => g.n(),
            AxisGrid::Freq(g) => g.n(),
        }
    }

    /// Quadrature weight: the (positive) spacing between adjacent samples.
    pub fn spacing(&self) -> f64 {
        match self {
            AxisGrid::Sample(g) => g.dx(),
            AxisGrid::Freq(g) => g.du(),
        }
    }

    /// Angular frequency of bin `m` on this axis's underlying sample
    /// lattice; bin n/2 is exactly zero.
    pub fn xi(&self, m: usize) -> f64 {
        match self {
            AxisGrid::Sample(g) => g.xi(m),
            AxisGrid::Freq(g) => g.xi(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_are_centered() {
        let g = SampleGrid::new(4, 0.5).unwrap();
        let xs: Vec<f64> = (0..4).map(|k| g.coord(k)).collect();
        assert_eq!(xs, vec![-1.0, -0.5, 0.0, 0.5]);
    }

    #[test]
    fn zero_frequency_bin_is_center() {
        let g = SampleGrid::new(256, 0.37).unwrap();
        assert_eq!(g.xi(128), 0.0);
        assert!(g.xi(127) < 0.0 && g.xi(129) > 0.0);
    }

    #[test]
    fn fourier_spacing() {
        let g = SampleGrid::new(256, 1.0).unwrap();
        let f = FreqGrid::new(g, 1.0);
        assert!((f.du() - TAU / 256.0).abs() < 1e-15);
        assert_eq!(f.u(128), 0.0);
    }

    #[test]
    fn negative_b_reverses_output_coords() {
        let g = SampleGrid::new(8, 1.0).unwrap();
        let f = FreqGrid::new(g, -2.0);
        assert!(f.u(0) > 0.0 && f.u(7) < 0.0);
        assert_eq!(f.du(), 2.0 * TAU / 8.0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(SampleGrid::new(1, 1.0), Err(GridError::GridTooSmall(1)));
        assert_eq!(SampleGrid::new(7, 1.0), Err(GridError::OddGrid(7)));
        assert_eq!(SampleGrid::new(8, 0.0), Err(GridError::BadSpacing(0.0)));
        assert_eq!(SampleGrid::new(8, -1.0), Err(GridError::BadSpacing(-1.0)));
    }
}
