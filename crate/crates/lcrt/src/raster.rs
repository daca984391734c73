//! Raster containers: complex-valued rasters carrying grid labels for the
//! transforms, and plain real rasters for images and feature maps.

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::{AxisGrid, GridError, SampleGrid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RasterError {
    #[error("sample buffer holds {got} values, shape needs {expected}")]
    SampleCountMismatch { expected: usize, got: usize },
    #[error("rasters carry 1 or 3 channels, got {0}")]
    BadChannelCount(usize),
    #[error("channel index {index} out of range for {channels}-channel raster")]
    ChannelOutOfRange { index: usize, channels: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Complex samples in row-major order with per-axis coordinate labels.
/// Axis 1 runs along rows (width), axis 2 down columns (height).
/// 1D signals are rasters of height 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRaster {
    width: usize,
    height: usize,
    samples: Vec<Complex64>,
    grid1: AxisGrid,
    grid2: Option<AxisGrid>,
}

impl ComplexRaster {
    pub fn new_1d(samples: Vec<Complex64>, grid: SampleGrid) -> Result<Self, RasterError> {
        if samples.len() != grid.n() {
            return Err(RasterError::SampleCountMismatch {
                expected: grid.n(),
                got: samples.len(),
            });
        }
        Ok(Self {
            width: grid.n(),
            height: 1,
            samples,
            grid1: AxisGrid::Sample(grid),
            grid2: None,
        })
    }

    pub fn new_2d(
        samples: Vec<Complex64>,
        grid1: SampleGrid,
        grid2: SampleGrid,
    ) -> Result<Self, RasterError> {
        let expected = grid1.n() * grid2.n();
        if samples.len() != expected {
            return Err(RasterError::SampleCountMismatch {
                expected,
                got: samples.len(),
            });
        }
        Ok(Self {
            width: grid1.n(),
            height: grid2.n(),
            samples,
            grid1: AxisGrid::Sample(grid1),
            grid2: Some(AxisGrid::Sample(grid2)),
        })
    }

    /// Lifts a single-channel real raster to a complex one on unit-extent
    /// grids (dx = 1/n per axis); both image dimensions must be even.
    pub fn from_real(r: &RealRaster) -> Result<Self, RasterError> {
        let dx = [1.0 / r.width() as f64, 1.0 / r.height() as f64];
        Self::from_real_with_spacing(r, dx)
    }

    /// As [`ComplexRaster::from_real`] with explicit per-axis spacings.
    pub fn from_real_with_spacing(r: &RealRaster, dx: [f64; 2]) -> Result<Self, RasterError> {
        if r.channels() != 1 {
            return Err(RasterError::BadChannelCount(r.channels()));
        }
        let samples = r.samples().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::new_2d(
            samples,
            SampleGrid::new(r.width(), dx[0])?,
            SampleGrid::new(r.height(), dx[1])?,
        )
    }

    pub(crate) fn with_parts(
        width: usize,
        height: usize,
        samples: Vec<Complex64>,
        grid1: AxisGrid,
        grid2: Option<AxisGrid>,
    ) -> Self {
        debug_assert_eq!(samples.len(), width * height);
        debug_assert_eq!(grid1.n(), width);
        match &grid2 {
            Some(g) => debug_assert_eq!(g.n(), height),
            None => debug_assert_eq!(height, 1),
        }
        Self {
            width,
            height,
            samples,
            grid1,
            grid2,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_1d(&self) -> bool {
        self.height == 1
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn grid1(&self) -> &AxisGrid {
        &self.grid1
    }

    pub fn grid2(&self) -> Option<&AxisGrid> {
        self.grid2.as_ref()
    }

    pub fn at(&self, x: usize, y: usize) -> Complex64 {
        self.samples[y * self.width + x]
    }

    /// Swaps the two axes (and their grid labels).
    pub fn transpose(&self) -> Self {
        let grid2 = self
            .grid2
            .clone()
            .expect("transpose needs a 2D raster");
        let mut samples = vec![Complex64::new(0.0, 0.0); self.samples.len()];
        for y in 0..self.height {
            for x in 0..self.width {
                samples[x * self.height + y] = self.samples[y * self.width + x];
            }
        }
        Self {
            width: self.height,
            height: self.width,
            samples,
            grid1: grid2,
            grid2: Some(self.grid1.clone()),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ||self - other||_2 / ||other||_2.
    pub fn relative_l2_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.samples.len(), other.samples.len(), "shape mismatch");
        let diff: f64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        diff.sqrt() / other.l2_norm()
    }

    pub fn amplitude(&self) -> RealRaster {
        self.map_to_real(|z| z.norm())
    }

    pub fn real_part(&self) -> RealRaster {
        self.map_to_real(|z| z.re)
    }

    pub fn imag_part(&self) -> RealRaster {
        self.map_to_real(|z| z.im)
    }

    fn map_to_real(&self, f: impl Fn(Complex64) -> f64) -> RealRaster {
        RealRaster::new(
            self.width,
            self.height,
            1,
            self.samples.iter().map(|&z| f(z)).collect(),
        )
        .expect("shape preserved")
    }
}

/// Real samples in row-major, channel-interleaved order (1 or 3 channels).
#[derive(Debug, Clone, PartialEq)]
pub struct RealRaster {
    width: usize,
    height: usize,
    channels: usize,
    samples: Vec<f64>,
}

impl RealRaster {
    pub fn new(
        width: usize,
        height: usize,
        channels: usize,
        samples: Vec<f64>,
    ) -> Result<Self, RasterError> {
        if channels != 1 && channels != 3 {
            return Err(RasterError::BadChannelCount(channels));
        }
        let expected = width * height * channels;
        if samples.len() != expected {
            return Err(RasterError::SampleCountMismatch {
                expected,
                got: samples.len(),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            samples,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn at(&self, x: usize, y: usize, ch: usize) -> f64 {
        self.samples[(y * self.width + x) * self.channels + ch]
    }

    pub fn min_max(&self) -> (f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in &self.samples {
            min = min.min(v);
            max = max.max(v);
        }
        (min, max)
    }

    /// Min-max rescale to [0, 1]; a constant raster maps to all zeros.
    pub fn normalize_unit(&self) -> Self {
        let (min, max) = self.min_max();
        let span = max - min;
        let samples = if span > 0.0 {
            self.samples.iter().map(|&v| (v - min) / span).collect()
        } else {
            vec![0.0; self.samples.len()]
        };
        Self {
            samples,
            ..*self
        }
    }

    /// Extracts one channel as a single-channel raster.
    pub fn channel(&self, index: usize) -> Result<Self, RasterError> {
        if index >= self.channels {
            return Err(RasterError::ChannelOutOfRange {
                index,
                channels: self.channels,
            });
        }
        let samples = self
            .samples
            .chunks_exact(self.channels)
            .map(|px| px[index])
            .collect();
        Self::new(self.width, self.height, 1, samples)
    }

    /// Interleaves three single-channel rasters of equal shape.
    pub fn from_channels(ch: [&RealRaster; 3]) -> Result<Self, RasterError> {
        for c in &ch {
            if c.channels != 1 || c.width != ch[0].width || c.height != ch[0].height {
                return Err(RasterError::SampleCountMismatch {
                    expected: ch[0].width * ch[0].height,
                    got: c.samples.len(),
                });
            }
        }
        let mut samples = Vec::with_capacity(ch[0].samples.len() * 3);
        for i in 0..ch[0].samples.len() {
            samples.extend_from_slice(&[ch[0].samples[i], ch[1].samples[i], ch[2].samples[i]]);
        }
        Self::new(ch[0].width, ch[0].height, 3, samples)
    }
}
