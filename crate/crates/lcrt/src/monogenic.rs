//! Monogenic signal features: a raster bundled with its two directional
//! Riesz-type components, and the pointwise local amplitude, orientation,
//! and phase derived from them.

use std::f64::consts::FRAC_PI_2;

use crate::matrix::ParamPair;
use crate::raster::{ComplexRaster, RealRaster};
use crate::riesz::{lcrt_apply, RieszError};
use crate::Axis;

/// Below this magnitude a component is treated as vanished when choosing
/// the degenerate-angle conventions.
const DEGENERATE: f64 = 1e-12;

/// A signal together with its axis-1 and axis-2 Riesz-type components.
#[derive(Debug, Clone)]
pub struct MonogenicField {
    pub p: ComplexRaster,
    pub q1: ComplexRaster,
    pub q2: ComplexRaster,
}

/// Assemble the monogenic field of `f` under the parameter pair. The
/// components are computed by the chirp-conjugation route, so any valid
/// pair is accepted.
pub fn monogenic(f: &ComplexRaster, pair: &ParamPair) -> Result<MonogenicField, RieszError> {
    Ok(MonogenicField {
        p: f.clone(),
        q1: lcrt_apply(f, pair, Axis::Axis1)?,
        q2: lcrt_apply(f, pair, Axis::Axis2)?,
    })
}

impl MonogenicField {
    fn map(&self, f: impl Fn(f64, f64, f64) -> f64) -> RealRaster {
        let samples = self
            .p
            .samples()
            .iter()
            .zip(self.q1.samples())
            .zip(self.q2.samples())
            .map(|((p, q1), q2)| f(p.re, q1.norm(), q2.norm()))
            .collect();
        RealRaster::new(self.p.width(), self.p.height(), 1, samples)
            .expect("component rasters share one shape")
    }

    /// sqrt(Re(p)^2 + |q1|^2 + |q2|^2) per pixel.
    pub fn local_amplitude(&self) -> RealRaster {
        self.map(|p, q1, q2| (p * p + q1 * q1 + q2 * q2).sqrt())
    }

    /// atan(|q2| / |q1|) per pixel, in [0, pi/2]; 0 where both components
    /// vanish.
    pub fn local_orientation(&self) -> RealRaster {
        self.map(|_, q1, q2| {
            if q1 <= DEGENERATE && q2 <= DEGENERATE {
                0.0
            } else {
                (q2 / q1).atan()
            }
        })
    }

    /// atan(Re(p) / sqrt(|q1|^2 + |q2|^2)) per pixel, in [-pi/2, pi/2];
    /// 0 where everything vanishes, +-pi/2 where only the components do.
    pub fn local_phase(&self) -> RealRaster {
        self.map(|p, q1, q2| {
            let q = (q1 * q1 + q2 * q2).sqrt();
            if q <= DEGENERATE {
                if p.abs() <= DEGENERATE {
                    0.0
                } else {
                    FRAC_PI_2.copysign(p)
                }
            } else {
                (p / q).atan()
            }
        })
    }
}
