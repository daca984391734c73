//! Directional Riesz-type operators realized as canonical-domain
//! multipliers.
//!
//! The multiplier for axis j is -i xi_j / |xi| evaluated on the
//! frequency lattice (zero at the center bin). Two routes compute the
//! same operator when both matrices have equal diagonal entries (a = d):
//!
//! * [`lcrt_apply`]: forward transform, multiply, inverse transform. The
//!   a = d hypothesis is what makes the frequency-side chirps of the
//!   forward and inverse passes cancel, so it is enforced here.
//! * [`lcrt_conjugated`]: chirp-conjugation of the classical operator,
//!   exp(-i d/(2b) |x|^2) . R_j ( exp(i a/(2b) |x|^2) . f ). No
//!   hypothesis needed; this is the defining extension.
//!
//! With the Fourier matrices (a = d = 0, b = 1) both routes reduce to
//! the classical Riesz transform, implemented independently in
//! [`classical_riesz`].

use num_complex::Complex64;
use thiserror::Error;

use crate::chirp::{chirp_field, ChirpSign, ChirpSpec};
use crate::grid::{AxisGrid, SampleGrid};
use crate::lct::{
    centered_dft_rows, lct_forward_2d, lct_inverse_2d, lct_oracle_2d, lct_oracle_inverse_2d,
    pass_rows, LctError,
};
use crate::matrix::{ParamMatrix, ParamPair};
use crate::raster::ComplexRaster;
use crate::Axis;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RieszError {
    /// The multiplier route is only the advertised operator when the
    /// matrix for each axis has a = d.
    #[error("multiplier route requires a = d; {axis:?} matrix has a = {a}, d = {d}")]
    HypothesisViolated { axis: Axis, a: f64, d: f64 },
    #[error(transparent)]
    Lct(#[from] LctError),
}

/// Multiplier value at a frequency point: -i xi_axis / |xi|, zero at the
/// origin.
pub fn riesz_symbol_at(axis: Axis, xi: [f64; 2]) -> Complex64 {
    let norm = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
    if norm == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, -xi[axis.index()] / norm)
    }
}

/// The multiplier sampled over a 2D bin lattice, returned with the same
/// axis grids attached.
pub fn riesz_symbol(axis: Axis, grid1: &AxisGrid, grid2: &AxisGrid) -> ComplexRaster {
    let (w, h) = (grid1.n(), grid2.n());
    let mut samples = Vec::with_capacity(w * h);
    for m2 in 0..h {
        let xi2 = grid2.xi(m2);
        for m1 in 0..w {
            samples.push(riesz_symbol_at(axis, [grid1.xi(m1), xi2]));
        }
    }
    ComplexRaster::with_parts(w, h, samples, grid1.clone(), Some(grid2.clone()))
}

fn require_2d(r: &ComplexRaster) -> Result<(), RieszError> {
    if r.is_1d() {
        Err(LctError::GridMismatch("2D operator on a 1D raster".into()).into())
    } else {
        Ok(())
    }
}

fn require_equal_diagonal(pair: &ParamPair) -> Result<(), RieszError> {
    for (axis, m) in [(Axis::Axis1, &pair.m1), (Axis::Axis2, &pair.m2)] {
        if !m.equal_diagonal() {
            return Err(RieszError::HypothesisViolated {
                axis,
                a: m.a(),
                d: m.d(),
            });
        }
    }
    Ok(())
}

fn multiply_symbol(r: &mut ComplexRaster, axis: Axis) {
    let w = r.width();
    let xi1: Vec<f64> = (0..w).map(|m| r.grid1().xi(m)).collect();
    let xi2: Vec<f64> = (0..r.height())
        .map(|m| r.grid2().expect("2D raster").xi(m))
        .collect();
    for (row, &x2) in r.samples_mut().chunks_mut(w).zip(&xi2) {
        for (v, &x1) in row.iter_mut().zip(&xi1) {
            *v *= riesz_symbol_at(axis, [x1, x2]);
        }
    }
}

/// Riesz-type operator along `axis` via the canonical-domain multiplier:
/// forward transform with `pair`, multiply by -i xi_axis/|xi|, inverse
/// transform. Requires a = d on both matrices.
pub fn lcrt_apply(
    f: &ComplexRaster,
    pair: &ParamPair,
    axis: Axis,
) -> Result<ComplexRaster, RieszError> {
    require_2d(f)?;
    require_equal_diagonal(pair)?;
    let mut hat = lct_forward_2d(f, pair)?;
    multiply_symbol(&mut hat, axis);
    Ok(lct_inverse_2d(&hat, pair)?)
}

/// Same contract as [`lcrt_apply`] but built on the quadratic-cost
/// direct-summation transforms; the benchmark baseline.
pub fn lcrt_apply_oracle(
    f: &ComplexRaster,
    pair: &ParamPair,
    axis: Axis,
) -> Result<ComplexRaster, RieszError> {
    require_2d(f)?;
    require_equal_diagonal(pair)?;
    let mut hat = lct_oracle_2d(f, pair)?;
    multiply_symbol(&mut hat, axis);
    Ok(lct_oracle_inverse_2d(&hat, pair)?)
}

fn sample_grids(r: &ComplexRaster) -> Result<(SampleGrid, SampleGrid), RieszError> {
    let pick = |g: &AxisGrid, what: &str| match g {
        AxisGrid::Sample(sg) => Ok(sg.clone()),
        AxisGrid::Freq(_) => Err(RieszError::Lct(LctError::GridMismatch(format!(
            "{what} must be sample-labeled for a spatial-domain operator"
        )))),
    };
    Ok((
        pick(r.grid1(), "axis 1")?,
        pick(r.grid2().expect("2D raster"), "axis 2")?,
    ))
}

/// Riesz-type operator along `axis` via chirp conjugation of the
/// classical operator. Valid for any parameter pair; coincides with
/// [`lcrt_apply`] whenever that route's a = d hypothesis holds.
pub fn lcrt_conjugated(
    f: &ComplexRaster,
    pair: &ParamPair,
    axis: Axis,
) -> Result<ComplexRaster, RieszError> {
    require_2d(f)?;
    let (g1, g2) = sample_grids(f)?;
    let bs = [pair.m1.b(), pair.m2.b()];
    let lift = ChirpSpec::new([pair.m1.a(), pair.m2.a()], bs, ChirpSign::Plus)
        .expect("validated matrices have nonzero b");
    let drop = ChirpSpec::new([pair.m1.d(), pair.m2.d()], bs, ChirpSign::Minus)
        .expect("validated matrices have nonzero b");

    let mut work = f.clone();
    for (v, c) in work
        .samples_mut()
        .iter_mut()
        .zip(chirp_field(&lift, &g1, &g2).samples())
    {
        *v *= c;
    }
    let mut out = classical_riesz(&work, axis)?;
    for (v, c) in out
        .samples_mut()
        .iter_mut()
        .zip(chirp_field(&drop, &g1, &g2).samples())
    {
        *v *= c;
    }
    Ok(out)
}

/// Classical Riesz transform along `axis`: plain recentered 2D DFT,
/// multiply by -i xi_axis/|xi|, exact inverse DFT. Independent of the
/// canonical pipeline except for shared grid definitions.
pub fn classical_riesz(f: &ComplexRaster, axis: Axis) -> Result<ComplexRaster, RieszError> {
    require_2d(f)?;
    let hat_rows = centered_dft_rows(f, false);
    let mut hat = centered_dft_rows(&hat_rows.transpose(), false).transpose();
    multiply_symbol(&mut hat, axis);
    let back_cols = centered_dft_rows(&hat.transpose(), true).transpose();
    Ok(centered_dft_rows(&back_cols, true))
}

/// Directional Hilbert companion in the canonical domain: per line along
/// `axis`, forward 1D transform with `m`, multiply by -i sgn(xi) (zero
/// at the center bin), inverse transform. Requires a = d for the same
/// reason as [`lcrt_apply`].
pub fn hlcht_apply(
    f: &ComplexRaster,
    m: &ParamMatrix,
    axis: Axis,
) -> Result<ComplexRaster, RieszError> {
    if !m.equal_diagonal() {
        return Err(RieszError::HypothesisViolated {
            axis,
            a: m.a(),
            d: m.d(),
        });
    }
    let work = match axis {
        Axis::Axis1 => f.clone(),
        Axis::Axis2 => {
            require_2d(f)?;
            f.transpose()
        }
    };
    match work.grid1() {
        AxisGrid::Sample(_) => {}
        AxisGrid::Freq(_) => {
            return Err(RieszError::Lct(LctError::GridMismatch(
                "spatial-domain operator on a frequency-labeled axis".into(),
            )))
        }
    }
    let mut hat = pass_rows(&work, m)?;
    let w = hat.width();
    let line: Vec<Complex64> = (0..w)
        .map(|k| {
            let xi = hat.grid1().xi(k);
            if xi == 0.0 {
                Complex64::new(0.0, 0.0)
            } else if xi > 0.0 {
                Complex64::new(0.0, -1.0)
            } else {
                Complex64::new(0.0, 1.0)
            }
        })
        .collect();
    for row in hat.samples_mut().chunks_mut(w) {
        for (v, s) in row.iter_mut().zip(&line) {
            *v *= s;
        }
    }
    let back = pass_rows(&hat, &m.inverse())?;
    Ok(match axis {
        Axis::Axis1 => back,
        Axis::Axis2 => back.transpose(),
    })
}
