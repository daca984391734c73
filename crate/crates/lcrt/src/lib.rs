//! Canonical integral transforms, Riesz-type directional operators, and
//! the image-analysis layer built on them: monogenic local features,
//! edge maps with a tunable sharpness parameter, and evaluation metrics.

pub mod chirp;
pub mod edge;
pub mod grid;
pub mod imageio;
pub mod lct;
pub mod matrix;
pub mod metrics;
pub mod monogenic;
pub mod raster;
pub mod riesz;

pub use chirp::{chirp_field, ChirpSign, ChirpSpec};
pub use edge::{
    edge_detect, edge_detect_rgb, edge_detect_rgb_with_spacing, edge_detect_with_spacing,
    gaussian_test_image, run_sweep, EdgeError, EdgeMap, SweepEntry, SweepPlan,
};
pub use grid::{AxisGrid, FreqGrid, GridError, SampleGrid};
pub use imageio::{read_image, write_image, ImageIoError};
pub use lct::{
    chirp_aliasing_violated, lct_forward_1d, lct_forward_2d, lct_inverse_1d, lct_inverse_2d,
    lct_oracle_1d, lct_oracle_2d, lct_oracle_inverse_2d, LctError,
};
pub use matrix::{MatrixError, ParamMatrix, ParamPair, DET_TOLERANCE};
pub use metrics::{
    convergence_sweep, mse, near_classical_family, subregion_mse, ConvergenceCurve,
    ConvergencePoint, MetricsError, MetricsReport,
};
pub use monogenic::{monogenic, MonogenicField};
pub use raster::{ComplexRaster, RasterError, RealRaster};
pub use riesz::{
    classical_riesz, hlcht_apply, lcrt_apply, lcrt_apply_oracle, lcrt_conjugated, riesz_symbol,
    riesz_symbol_at, RieszError,
};

/// Image axis selector: `Axis1` runs along rows (x, width), `Axis2` along
/// columns (y, height).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Axis1,
    Axis2,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::Axis1 => 0,
            Axis::Axis2 => 1,
        }
    }
}

impl TryFrom<u8> for Axis {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Axis::Axis1),
            2 => Ok(Axis::Axis2),
            other => Err(format!("axis must be 1 or 2, got {other}")),
        }
    }
}
