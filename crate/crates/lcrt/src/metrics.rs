//! Evaluation metrics: global and 3x3-subregion mean squared error,
//! per-run report rendering, and the convergence harness that drives a
//! family of parameter pairs toward the classical operator.

use thiserror::Error;

use crate::matrix::{ParamMatrix, ParamPair};
use crate::raster::{ComplexRaster, RasterError, RealRaster};
use crate::riesz::{classical_riesz, lcrt_apply, RieszError};
use crate::Axis;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("dimension mismatch: {expected:?} vs {got:?} (width, height, channels)")]
    DimensionMismatch {
        expected: (usize, usize, usize),
        got: (usize, usize, usize),
    },
    #[error("subregion grid needs at least 3x3 pixels, got {width}x{height}")]
    TooSmall { width: usize, height: usize },
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error(transparent)]
    Raster(#[from] RasterError),
}

fn check_shapes(a: &RealRaster, b: &RealRaster) -> Result<(), MetricsError> {
    let (sa, sb) = (
        (a.width(), a.height(), a.channels()),
        (b.width(), b.height(), b.channels()),
    );
    if sa == sb {
        Ok(())
    } else {
        Err(MetricsError::DimensionMismatch {
            expected: sa,
            got: sb,
        })
    }
}

/// Mean squared error over every sample (all channels).
pub fn mse(a: &RealRaster, b: &RealRaster) -> Result<f64, MetricsError> {
    check_shapes(a, b)?;
    let sum: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.samples().len() as f64)
}

/// MSE over each cell of a 3x3 partition, row-major. Cell widths are
/// floor(w/3) with the remainder absorbed by the last column, likewise
/// for rows.
pub fn subregion_mse(a: &RealRaster, b: &RealRaster) -> Result<[f64; 9], MetricsError> {
    check_shapes(a, b)?;
    let (w, h, c) = (a.width(), a.height(), a.channels());
    if w < 3 || h < 3 {
        return Err(MetricsError::TooSmall {
            width: w,
            height: h,
        });
    }
    let bounds = |len: usize, i: usize| {
        let step = len / 3;
        (i * step, if i == 2 { len } else { (i + 1) * step })
    };
    let mut out = [0.0; 9];
    for row in 0..3 {
        let (y0, y1) = bounds(h, row);
        for col in 0..3 {
            let (x0, x1) = bounds(w, col);
            let mut sum = 0.0;
            for y in y0..y1 {
                for x in x0..x1 {
                    for ch in 0..c {
                        let d = a.at(x, y, ch) - b.at(x, y, ch);
                        sum += d * d;
                    }
                }
            }
            out[row * 3 + col] = sum / ((y1 - y0) * (x1 - x0) * c) as f64;
        }
    }
    Ok(out)
}

/// Metrics for one edge map against a reference, with the parameters
/// that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    /// Source channel for multichannel runs; `None` for grayscale.
    pub channel: Option<usize>,
    /// Per-axis sharpness b/c; `None` when c = 0 leaves it undefined.
    pub sharpness: [Option<f64>; 2],
    pub global_mse: f64,
    pub subregion_mse: [f64; 9],
}

impl MetricsReport {
    pub fn new(
        a: &RealRaster,
        b: &RealRaster,
        pair: &ParamPair,
        channel: Option<usize>,
    ) -> Result<Self, MetricsError> {
        Ok(Self {
            channel,
            sharpness: pair.sharpness(),
            global_mse: mse(a, b)?,
            subregion_mse: subregion_mse(a, b)?,
        })
    }

    /// Render as a TOML fragment; undefined sharpness becomes the string
    /// "undefined".
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(ch) = self.channel {
            s.push_str(&format!("channel = {ch}\n"));
        }
        for (i, v) in self.sharpness.iter().enumerate() {
            match v {
                Some(v) => s.push_str(&format!("sharpness{} = {:?}\n", i + 1, v)),
                None => s.push_str(&format!("sharpness{} = \"undefined\"\n", i + 1)),
            }
        }
        s.push_str(&format!("global_mse = {:?}\n", self.global_mse));
        s.push_str("subregion_mse = [\n");
        for row in 0..3 {
            let r = &self.subregion_mse[row * 3..row * 3 + 3];
            s.push_str(&format!("    [{:?}, {:?}, {:?}],\n", r[0], r[1], r[2]));
        }
        s.push_str("]\n");
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint {
    pub epsilon: f64,
    /// Per-axis sharpness b/c of the pair at this epsilon.
    pub sharpness: [Option<f64>; 2],
    /// Relative L2 distance to the classical operator's output.
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceCurve {
    pub points: Vec<ConvergencePoint>,
}

impl ConvergenceCurve {
    pub fn strictly_decreasing(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].distance < w[0].distance)
    }

    pub fn to_csv(&self) -> String {
        let fmt = |v: &Option<f64>| match v {
            Some(v) => format!("{v:?}"),
            None => "undefined".to_string(),
        };
        let mut s = String::from("epsilon,sharpness1,sharpness2,distance\n");
        for p in &self.points {
            s.push_str(&format!(
                "{:?},{},{},{:?}\n",
                p.epsilon,
                fmt(&p.sharpness[0]),
                fmt(&p.sharpness[1]),
                p.distance
            ));
        }
        s
    }
}

/// The perturbation family {eps, 1 + eps; -1 + eps, eps} (unimodular for
/// every eps), used isotropically on both axes. It approaches the
/// classical matrix as eps approaches zero.
pub fn near_classical_family(epsilons: &[f64]) -> Vec<(f64, ParamPair)> {
    epsilons
        .iter()
        .map(|&e| {
            let m = ParamMatrix::new(e, 1.0 + e, -1.0 + e, e)
                .expect("family is unimodular by construction");
            (e, ParamPair::isotropic(m))
        })
        .collect()
}

/// For each (eps, pair), apply the axis-1 multiplier-route operator to
/// the image (lifted onto the unit-extent grid) and record the relative
/// L2 distance to the classical operator's output on the same input,
/// along with the pair's sharpness values.
pub fn convergence_sweep(
    image: &RealRaster,
    family: &[(f64, ParamPair)],
) -> Result<ConvergenceCurve, MetricsError> {
    let f = ComplexRaster::from_real(image)?;
    let reference = classical_riesz(&f, Axis::Axis1)?;
    let mut points = Vec::with_capacity(family.len());
    for (epsilon, pair) in family {
        let out = lcrt_apply(&f, pair, Axis::Axis1)?;
        points.push(ConvergencePoint {
            epsilon: *epsilon,
            sharpness: pair.sharpness(),
            distance: out.relative_l2_distance(&reference),
        });
    }
    Ok(ConvergenceCurve { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raster(w: usize, h: usize, f: impl Fn(usize, usize) -> f64) -> RealRaster {
        let samples = (0..w * h).map(|i| f(i % w, i / w)).collect();
        RealRaster::new(w, h, 1, samples).unwrap()
    }

    #[test]
    fn identical_rasters_have_zero_mse() {
        let a = raster(5, 4, |x, y| (x * 7 + y) as f64);
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
        assert_eq!(subregion_mse(&a, &a).unwrap(), [0.0; 9]);
    }

    #[test]
    fn constant_offset_mse_is_offset_squared() {
        let a = raster(6, 3, |_, _| 1.0);
        let b = raster(6, 3, |_, _| 1.5);
        assert!((mse(&a, &b).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn subregion_grid_uses_floor_plus_remainder_bounds() {
        // 4x5: column widths 1,1,2; row heights 1,1,3. Mark one pixel in
        // the bottom-right cell and verify only that cell sees it.
        let a = raster(4, 5, |_, _| 0.0);
        let mut b = raster(4, 5, |_, _| 0.0);
        let w = b.width();
        b.samples_mut()[4 * w + 3] = 2.0; // x = 3, y = 4
        let grid = subregion_mse(&a, &b).unwrap();
        for (i, v) in grid.iter().enumerate() {
            if i == 8 {
                // Cell spans x in [2,4), y in [2,5): 6 pixels, one differs by 2.
                assert!((v - 4.0 / 6.0).abs() < 1e-15, "cell 8 = {v}");
            } else {
                assert_eq!(*v, 0.0, "cell {i}");
            }
        }
    }

    #[test]
    fn area_weighted_subregion_mean_recovers_global() {
        let a = raster(10, 7, |x, y| ((x * 31 + y * 17) % 13) as f64 / 13.0);
        let b = raster(10, 7, |x, y| ((x * 5 + y * 29) % 11) as f64 / 11.0);
        let global = mse(&a, &b).unwrap();
        let grid = subregion_mse(&a, &b).unwrap();
        let bounds = |len: usize, i: usize| {
            let step = len / 3;
            (i * step, if i == 2 { len } else { (i + 1) * step })
        };
        let mut acc = 0.0;
        for row in 0..3 {
            let (y0, y1) = bounds(7, row);
            for col in 0..3 {
                let (x0, x1) = bounds(10, col);
                acc += grid[row * 3 + col] * ((y1 - y0) * (x1 - x0)) as f64;
            }
        }
        assert!((acc / 70.0 - global).abs() < 1e-15);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = raster(4, 4, |_, _| 0.0);
        let b = raster(4, 5, |_, _| 0.0);
        assert!(matches!(
            mse(&a, &b),
            Err(MetricsError::DimensionMismatch { .. })
        ));
        let tiny = raster(2, 2, |_, _| 0.0);
        assert!(matches!(
            subregion_mse(&tiny, &tiny),
            Err(MetricsError::TooSmall { .. })
        ));
    }

    #[test]
    fn report_renders_parseable_fragment() {
        let a = raster(6, 6, |x, _| x as f64 / 6.0);
        let b = raster(6, 6, |_, y| y as f64 / 6.0);
        let pair = ParamPair::isotropic(ParamMatrix::new(0.0, 22.0, -1.0 / 22.0, 0.0).unwrap());
        let report = MetricsReport::new(&a, &b, &pair, Some(2)).unwrap();
        let text = report.to_text();
        assert!(text.contains("channel = 2"));
        assert!(text.contains("sharpness1 = -484.0"));
        assert!(text.contains("global_mse = "));
        let scaling_free = ParamPair::isotropic(ParamMatrix::new(1.0, 0.5, 0.0, 1.0).unwrap());
        let report = MetricsReport::new(&a, &b, &scaling_free, None).unwrap();
        assert!(report.to_text().contains("sharpness1 = \"undefined\""));
    }

    #[test]
    fn perturbation_family_shrinks_toward_classical() {
        let n = 64;
        let image = raster(n, n, |x, y| {
            let (dx, dy) = (x as f64 - n as f64 / 2.0, y as f64 - n as f64 / 2.0);
            (-(dx * dx + dy * dy) / (2.0 * 64.0)).exp()
        });
        let family = near_classical_family(&[1e-1, 1e-2]);
        let curve = convergence_sweep(&image, &family).unwrap();
        assert!(curve.strictly_decreasing(), "{:?}", curve.points);
        assert!(curve.points[0].distance > 1e-6);
        assert!(curve.points[1].distance < curve.points[0].distance);
        // The family keeps b/c = (1 + eps)/(eps - 1); at eps = 0.1 that is -11/9.
        let s = curve.points[0].sharpness[0].unwrap();
        assert!((s - 1.1 / -0.9).abs() < 1e-12);
        let csv = curve.to_csv();
        assert!(csv.starts_with("epsilon,sharpness1,sharpness2,distance\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
