//! Edge maps from directional component energy, with a per-axis
//! sharpness parameter b/c carried alongside, plus the sweep harness
//! that measures each map against the source image.

use thiserror::Error;

use crate::matrix::ParamPair;
use crate::metrics::{MetricsError, MetricsReport};
use crate::monogenic::monogenic;
use crate::raster::{ComplexRaster, RasterError, RealRaster};
use crate::riesz::RieszError;

/// Slack for the input range check; images must arrive normalized into
/// [-NORMALIZED_SLACK, 1 + NORMALIZED_SLACK] rather than being silently
/// rescaled here.
const NORMALIZED_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EdgeError {
    #[error("edge detection expects 1 or 3 channels, got {0}")]
    BadChannelCount(usize),
    #[error("input image is not normalized to the unit range: [{min}, {max}]")]
    NotNormalized { min: f64, max: f64 },
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error(transparent)]
    Raster(#[from] RasterError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// A normalized edge-strength map and the parameters that produced it.
#[derive(Debug, Clone)]
pub struct EdgeMap {
    /// Edge strength in [0, 1]; same channel count as the input image.
    pub map: RealRaster,
    pub pair: ParamPair,
    /// Per-axis b/c; `None` where c = 0 leaves it undefined.
    pub sharpness: [Option<f64>; 2],
}

/// The square-centered Gaussian test pattern
/// exp(-((x - n/2)^2 + (y - n/2)^2) / (2 sigma^2)) on pixel coordinates.
pub fn gaussian_test_image(n: usize, sigma: f64) -> RealRaster {
    let c = n as f64 / 2.0;
    let samples = (0..n * n)
        .map(|i| {
            let (x, y) = ((i % n) as f64 - c, (i / n) as f64 - c);
            (-(x * x + y * y) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    RealRaster::new(n, n, 1, samples).expect("sample count matches by construction")
}

fn check_input_range(image: &RealRaster) -> Result<(), EdgeError> {
    let (min, max) = image.min_max();
    if min < -NORMALIZED_SLACK || max > 1.0 + NORMALIZED_SLACK {
        return Err(EdgeError::NotNormalized { min, max });
    }
    Ok(())
}

fn single_channel_edge(
    image: &RealRaster,
    pair: &ParamPair,
    dx: [f64; 2],
) -> Result<RealRaster, EdgeError> {
    let f = ComplexRaster::from_real_with_spacing(image, dx)?;
    let field = monogenic(&f, pair)?;
    let samples: Vec<f64> = field
        .q1
        .samples()
        .iter()
        .zip(field.q2.samples())
        .map(|(a, b)| (a.norm_sqr() + b.norm_sqr()).sqrt())
        .collect();
    let energy = RealRaster::new(image.width(), image.height(), 1, samples)?;
    Ok(energy.normalize_unit())
}

fn unit_extent_spacing(image: &RealRaster) -> [f64; 2] {
    [1.0 / image.width() as f64, 1.0 / image.height() as f64]
}

/// Edge map of a single-channel image on unit-extent grids (spacing 1/n
/// per axis).
pub fn edge_detect(image: &RealRaster, pair: &ParamPair) -> Result<EdgeMap, EdgeError> {
    edge_detect_with_spacing(image, pair, unit_extent_spacing(image))
}

/// As [`edge_detect`] with explicit per-axis sample spacings.
pub fn edge_detect_with_spacing(
    image: &RealRaster,
    pair: &ParamPair,
    dx: [f64; 2],
) -> Result<EdgeMap, EdgeError> {
    if image.channels() != 1 {
        return Err(EdgeError::BadChannelCount(image.channels()));
    }
    check_input_range(image)?;
    Ok(EdgeMap {
        map: single_channel_edge(image, pair, dx)?,
        pair: *pair,
        sharpness: pair.sharpness(),
    })
}

/// Per-channel edge detection of a three-channel image on unit-extent
/// grids; each channel is processed and normalized independently, and
/// the result carries three channels again.
pub fn edge_detect_rgb(image: &RealRaster, pair: &ParamPair) -> Result<EdgeMap, EdgeError> {
    edge_detect_rgb_with_spacing(image, pair, unit_extent_spacing(image))
}

/// As [`edge_detect_rgb`] with explicit per-axis sample spacings.
pub fn edge_detect_rgb_with_spacing(
    image: &RealRaster,
    pair: &ParamPair,
    dx: [f64; 2],
) -> Result<EdgeMap, EdgeError> {
    if image.channels() != 3 {
        return Err(EdgeError::BadChannelCount(image.channels()));
    }
    check_input_range(image)?;
    let maps: Vec<RealRaster> = (0..3)
        .map(|ch| single_channel_edge(&image.channel(ch)?, pair, dx))
        .collect::<Result<_, _>>()?;
    Ok(EdgeMap {
        map: RealRaster::from_channels([&maps[0], &maps[1], &maps[2]])?,
        pair: *pair,
        sharpness: pair.sharpness(),
    })
}

/// A family of parameter pairs to evaluate on one image.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub pairs: Vec<ParamPair>,
    /// Per-axis sample spacing; `None` selects unit extent (1/n).
    pub spacing: Option<[f64; 2]>,
}

/// One evaluated sweep member: its edge map plus metrics against the
/// source image, one report per channel.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub edge: EdgeMap,
    pub reports: Vec<MetricsReport>,
}

/// Evaluate every pair in the plan on `image` (one or three channels,
/// three-channel images routed per channel) and measure each edge map
/// against the source image itself, in the order given.
pub fn run_sweep(image: &RealRaster, plan: &SweepPlan) -> Result<Vec<SweepEntry>, EdgeError> {
    let dx = plan.spacing.unwrap_or_else(|| unit_extent_spacing(image));
    let mut out = Vec::with_capacity(plan.pairs.len());
    for pair in &plan.pairs {
        let entry = match image.channels() {
            1 => {
                let edge = edge_detect_with_spacing(image, pair, dx)?;
                let report = MetricsReport::new(image, &edge.map, pair, None)?;
                SweepEntry {
                    edge,
                    reports: vec![report],
                }
            }
            3 => {
                let edge = edge_detect_rgb_with_spacing(image, pair, dx)?;
                let mut reports = Vec::with_capacity(3);
                for ch in 0..3 {
                    reports.push(MetricsReport::new(
                        &image.channel(ch)?,
                        &edge.map.channel(ch)?,
                        pair,
                        Some(ch),
                    )?);
                }
                SweepEntry { edge, reports }
            }
            c => return Err(EdgeError::BadChannelCount(c)),
        };
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ParamMatrix;

    #[test]
    fn gaussian_pattern_reference_values() {
        let img = gaussian_test_image(400, 50.0);
        // Center pixel is exactly 1, a 50-pixel offset is exactly e^{-1/2}.
        assert_eq!(img.at(200, 200, 0), 1.0);
        assert_eq!(img.at(250, 200, 0), (-0.5f64).exp());
        assert_eq!(img.at(200, 150, 0), (-0.5f64).exp());
        // Radial symmetry across the center.
        assert_eq!(img.at(170, 200, 0), img.at(230, 200, 0));
    }

    #[test]
    fn edge_map_is_normalized_and_ring_shaped() {
        let img = gaussian_test_image(128, 16.0);
        let pair = ParamPair::isotropic(ParamMatrix::new(6.0, 50.0, 0.7, 6.0).unwrap());
        let edge = edge_detect(&img, &pair).unwrap();
        let (lo, hi) = edge.map.min_max();
        assert_eq!((lo, hi), (0.0, 1.0));
        assert_eq!(edge.sharpness, [Some(50.0 / 0.7), Some(50.0 / 0.7)]);
        // A radial bump has weak response at its flat center, strong on
        // the slope: the map at radius sigma dominates the center.
        let center = edge.map.at(64, 64, 0);
        let slope = edge.map.at(64 + 16, 64, 0);
        assert!(slope > center + 0.2, "slope {slope} vs center {center}");
    }

    #[test]
    fn constant_image_yields_zero_map() {
        let img = RealRaster::new(32, 32, 1, vec![0.7; 32 * 32]).unwrap();
        let edge = edge_detect(&img, &ParamPair::classical()).unwrap();
        assert_eq!(edge.map.min_max(), (0.0, 0.0));
    }

    #[test]
    fn channel_count_is_enforced() {
        let gray = gaussian_test_image(16, 4.0);
        assert!(matches!(
            edge_detect_rgb(&gray, &ParamPair::classical()),
            Err(EdgeError::BadChannelCount(1))
        ));
        let rgb = RealRaster::from_channels([&gray, &gray, &gray]).unwrap();
        assert!(matches!(
            edge_detect(&rgb, &ParamPair::classical()),
            Err(EdgeError::BadChannelCount(3))
        ));
    }

    #[test]
    fn rgb_edges_are_per_channel_normalized() {
        let a = gaussian_test_image(32, 4.0);
        let b = gaussian_test_image(32, 8.0);
        let mut c = gaussian_test_image(32, 6.0);
        for v in c.samples_mut() {
            *v *= 0.1; // scaling a channel must not change its edge map
        }
        let rgb = RealRaster::from_channels([&a, &b, &c]).unwrap();
        let pair = ParamPair::classical();
        let edge = edge_detect_rgb(&rgb, &pair).unwrap();
        assert_eq!(edge.map.channels(), 3);
        for ch in 0..3 {
            let single = edge.map.channel(ch).unwrap();
            let (lo, hi) = single.min_max();
            assert_eq!((lo, hi), (0.0, 1.0), "channel {ch}");
        }
        let direct = edge_detect(&gaussian_test_image(32, 6.0), &pair).unwrap();
        let scaled = edge.map.channel(2).unwrap();
        for (x, y) in direct.map.samples().iter().zip(scaled.samples()) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let mut img = gaussian_test_image(16, 4.0);
        img.samples_mut()[0] = 1.5;
        assert!(matches!(
            edge_detect(&img, &ParamPair::classical()),
            Err(EdgeError::NotNormalized { .. })
        ));
        let mut neg = gaussian_test_image(16, 4.0);
        neg.samples_mut()[0] = -0.5;
        assert!(matches!(
            edge_detect(&neg, &ParamPair::classical()),
            Err(EdgeError::NotNormalized { .. })
        ));
    }

    #[test]
    fn sweep_measures_maps_against_the_source_image() {
        let img = gaussian_test_image(64, 8.0);
        let classical = ParamMatrix::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let plan = SweepPlan {
            pairs: vec![
                ParamPair::new(
                    classical,
                    ParamMatrix::new(0.0, 1000.0, -0.001, 0.0).unwrap(),
                ),
                ParamPair::classical(),
            ],
            spacing: None,
        };
        let entries = run_sweep(&img, &plan).unwrap();
        assert_eq!(entries.len(), 2);
        // Both pairs are anti-diagonal, so their maps coincide and the
        // source-image MSEs tie to floating-point accuracy.
        let a = entries[0].reports[0].global_mse;
        let b = entries[1].reports[0].global_mse;
        assert!(a > 0.0);
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        assert_eq!(
            entries[0].reports[0].sharpness,
            [Some(-1.0), Some(-1_000_000.0)]
        );
    }

    #[test]
    fn rgb_sweep_reports_one_entry_per_channel() {
        let r = gaussian_test_image(32, 4.0);
        let g = gaussian_test_image(32, 8.0);
        let b = gaussian_test_image(32, 6.0);
        let rgb = RealRaster::from_channels([&r, &g, &b]).unwrap();
        let plan = SweepPlan {
            pairs: vec![ParamPair::classical()],
            spacing: None,
        };
        let entries = run_sweep(&rgb, &plan).unwrap();
        assert_eq!(entries[0].reports.len(), 3);
        for (ch, source) in [&r, &g, &b].into_iter().enumerate() {
            let report = &entries[0].reports[ch];
            assert_eq!(report.channel, Some(ch));
            let gray = run_sweep(
                source,
                &SweepPlan {
                    pairs: vec![ParamPair::classical()],
                    spacing: None,
                },
            )
            .unwrap();
            assert!((report.global_mse - gray[0].reports[0].global_mse).abs() < 1e-15);
        }
    }
}
