//! Canonical integral transforms on centered grids.
//!
//! The forward transform of a signal f sampled at x_k = (k - n/2) dx is
//!
//!   F[m] = C_b * exp(i d/(2b) u_m^2)
//!          * sum_k f[k] exp(i a/(2b) x_k^2) exp(-i x_k xi_m) * dx,
//!
//! with xi_m = 2 pi (m - n/2)/(n dx), output coordinate u_m = b xi_m, and
//! C_b the principal square root of 1/(i 2 pi b). The cross factor
//! exp(-i x_k xi_m) is a recentered DFT kernel, so the whole pipeline is
//! chirp -> FFT -> chirp at O(n log n); [`lct_oracle_1d`] evaluates the
//! same sum directly at O(n^2) as an independent reference.
//!
//! The inverse runs the same machinery with the inverted matrix
//! {d, -b; -c, a} over the frequency grid. Its natural output coordinates
//! are the negated source points, so the result rows are index-reversed
//! (mod n) to land back on the original grid; with that relabeling the
//! discrete round trip is an algebraic identity, not an approximation.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::grid::{AxisGrid, FreqGrid, GridError, SampleGrid};
use crate::matrix::{ParamMatrix, ParamPair};
use crate::raster::ComplexRaster;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LctError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

/// Principal square root of 1/(i 2 pi b); argument in (-pi/2, pi/2].
fn kernel_constant(b: f64) -> Complex64 {
    Complex64::new(0.0, std::f64::consts::TAU * b).inv().sqrt()
}

/// Whether the input-side chirp exp(i a/(2b) x^2) is too steep for the
/// grid: beyond this threshold its instantaneous frequency at the
/// aperture edge exceeds the grid's Nyquist rate and the sampled chirp
/// aliases, so forward transforms log a warning.
pub fn chirp_aliasing_violated(m: &ParamMatrix, grid: &SampleGrid) -> bool {
    let half_aperture = grid.n() as f64 / 2.0 * grid.dx();
    let edge = (m.a() / (2.0 * m.b())).abs() * half_aperture * half_aperture
        * (2.0 / grid.n() as f64);
    edge > std::f64::consts::PI
}

/// One transform pass along axis 1, each row independently.
///
/// A Sample-labeled axis gets the forward treatment and comes out labeled
/// with the induced frequency grid. A Freq-labeled axis is a landing
/// pass: the machinery's natural output sits on the negated source
/// coordinates, so rows are index-reversed (mod n) and the axis comes out
/// labeled with the stored source grid. Chirp coordinates are read
/// through the same grid accessors in both directions, which makes the
/// forward/inverse chirp factors cancel bit-for-bit.
pub(crate) fn pass_rows(r: &ComplexRaster, m: &ParamMatrix) -> Result<ComplexRaster, LctError> {
    let n = r.width();
    let (xs, ys, weight, out_grid, land): (Vec<f64>, Vec<f64>, f64, AxisGrid, bool) =
        match r.grid1() {
            AxisGrid::Sample(sg) => {
                if chirp_aliasing_violated(m, sg) {
                    log::warn!(
                        "input chirp a/(2b) = {} aliases on grid n = {}, dx = {}",
                        m.a() / (2.0 * m.b()),
                        sg.n(),
                        sg.dx()
                    );
                }
                let fg = FreqGrid::new(sg.clone(), m.b());
                let xs = (0..n).map(|k| sg.coord(k)).collect();
                let ys = (0..n).map(|p| fg.u(p)).collect();
                (xs, ys, sg.dx(), AxisGrid::Freq(fg), false)
            }
            AxisGrid::Freq(fg) => {
                let src = fg.source().clone();
                let xs = (0..n).map(|k| fg.u(k)).collect();
                let ys = (0..n).map(|p| src.coord(p)).collect();
                (xs, ys, fg.du(), AxisGrid::Sample(src), true)
            }
        };

    let alpha = m.a() / (2.0 * m.b());
    let delta = m.d() / (2.0 * m.b());
    // Recentering both DFT ends contributes (-1)^k, (-1)^m and a global
    // (-1)^{n/2}; the parities fold into the chirp vectors.
    let global = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = kernel_constant(m.b()) * (weight * global);

    let pre: Vec<Complex64> = xs
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let ph = Complex64::new(0.0, alpha * x * x).exp();
            if k % 2 == 0 {
                ph
            } else {
                -ph
            }
        })
        .collect();
    let post: Vec<Complex64> = ys
        .iter()
        .enumerate()
        .map(|(p, &y)| {
            let ph = Complex64::new(0.0, delta * y * y).exp() * scale;
            if p % 2 == 0 {
                ph
            } else {
                -ph
            }
        })
        .collect();

    let fft = FftPlanner::new().plan_fft_forward(n);
    let mut out = r.samples().to_vec();
    out.par_chunks_mut(n).for_each_init(
        || vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()],
        |scratch, row| {
            for (v, p) in row.iter_mut().zip(&pre) {
                *v *= p;
            }
            fft.process_with_scratch(row, scratch);
            for (v, p) in row.iter_mut().zip(&post) {
                *v *= p;
            }
            if land {
                // out[k] = t[(n - k) mod n]: keep index 0, reverse the tail.
                row[1..].reverse();
            }
        },
    );

    Ok(ComplexRaster::with_parts(
        n,
        r.height(),
        out,
        out_grid,
        r.grid2().cloned(),
    ))
}

/// Direct O(n^2) evaluation of the same contract as [`pass_rows`],
/// sharing only the grid coordinate definitions with the fast path.
fn oracle_rows(r: &ComplexRaster, m: &ParamMatrix) -> Result<ComplexRaster, LctError> {
    let n = r.width();
    // cross_in/cross_out: the cross factor is exp(-i cross_in[k] cross_out[p]).
    #[allow(clippy::type_complexity)]
    let (xs, ys, cross_in, cross_out, weight, out_grid, land): (
        Vec<f64>,
        Vec<f64>,
        Vec<f64>,
        Vec<f64>,
        f64,
        AxisGrid,
        bool,
    ) = match r.grid1() {
        AxisGrid::Sample(sg) => {
            let fg = FreqGrid::new(sg.clone(), m.b());
            let xs: Vec<f64> = (0..n).map(|k| sg.coord(k)).collect();
            let xis: Vec<f64> = (0..n).map(|p| sg.xi(p)).collect();
            let ys = (0..n).map(|p| fg.u(p)).collect();
            (xs.clone(), ys, xs, xis, sg.dx(), AxisGrid::Freq(fg), false)
        }
        AxisGrid::Freq(fg) => {
            let src = fg.source().clone();
            let xs = (0..n).map(|k| fg.u(k)).collect();
            let xis: Vec<f64> = (0..n).map(|k| fg.xi(k)).collect();
            let ys: Vec<f64> = (0..n).map(|p| src.coord(p)).collect();
            (xs, ys.clone(), xis, ys, fg.du(), AxisGrid::Sample(src), true)
        }
    };

    let alpha = m.a() / (2.0 * m.b());
    let delta = m.d() / (2.0 * m.b());
    let scale = kernel_constant(m.b()) * weight;

    let src_rows: Vec<&[Complex64]> = r.samples().chunks(n).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); r.samples().len()];
    out.par_chunks_mut(n)
        .zip(src_rows.par_iter())
        .for_each(|(row_out, row_in)| {
            for p in 0..n {
                let post = scale * Complex64::new(0.0, delta * ys[p] * ys[p]).exp();
                let co = cross_out[p];
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    let phase = alpha * xs[k] * xs[k] - cross_in[k] * co;
                    acc += row_in[k] * Complex64::new(0.0, phase).exp();
                }
                row_out[p] = acc * post;
            }
            if land {
                row_out[1..].reverse();
            }
        });

    Ok(ComplexRaster::with_parts(
        n,
        r.height(),
        out,
        out_grid,
        r.grid2().cloned(),
    ))
}

/// Recentered DFT along rows (and its exact inverse): the plain Fourier
/// machinery used by the classical-operator reference paths. Grid labels
/// pass through unchanged.
pub(crate) fn centered_dft_rows(r: &ComplexRaster, inverse: bool) -> ComplexRaster {
    let n = r.width();
    let global = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let post_scale = if inverse { global / n as f64 } else { global };
    let planner = &mut FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    let mut out = r.samples().to_vec();
    out.par_chunks_mut(n).for_each_init(
        || vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()],
        |scratch, row| {
            for (k, v) in row.iter_mut().enumerate() {
                if k % 2 == 1 {
                    *v = -*v;
                }
            }
            fft.process_with_scratch(row, scratch);
            for (k, v) in row.iter_mut().enumerate() {
                let s = if k % 2 == 0 { post_scale } else { -post_scale };
                *v *= s;
            }
        },
    );
    ComplexRaster::with_parts(n, r.height(), out, r.grid1().clone(), r.grid2().cloned())
}

fn require_1d(r: &ComplexRaster) -> Result<(), LctError> {
    if r.is_1d() {
        Ok(())
    } else {
        Err(LctError::GridMismatch(format!(
            "1D transform on a raster of height {}",
            r.height()
        )))
    }
}

fn require_2d(r: &ComplexRaster) -> Result<(), LctError> {
    if r.is_1d() {
        Err(LctError::GridMismatch(
            "2D transform on a 1D raster".into(),
        ))
    } else {
        Ok(())
    }
}

fn require_sample(g: &AxisGrid, what: &str) -> Result<(), LctError> {
    match g {
        AxisGrid::Sample(_) => Ok(()),
        AxisGrid::Freq(_) => Err(LctError::GridMismatch(format!(
            "{what} is already frequency-labeled; forward transforms take sample-domain input"
        ))),
    }
}

fn require_matching_freq(g: &AxisGrid, m: &ParamMatrix, what: &str) -> Result<(), LctError> {
    match g {
        AxisGrid::Freq(fg) if fg.b() == m.b() => Ok(()),
        AxisGrid::Freq(fg) => Err(LctError::GridMismatch(format!(
            "{what} was induced by b = {}, inverse matrix has b = {}",
            fg.b(),
            m.b()
        ))),
        AxisGrid::Sample(_) => Err(LctError::GridMismatch(format!(
            "{what} is sample-labeled; inverse transforms take frequency-domain input"
        ))),
    }
}

/// Forward transform of a 1D signal (raster of height 1).
pub fn lct_forward_1d(f: &ComplexRaster, m: &ParamMatrix) -> Result<ComplexRaster, LctError> {
    require_1d(f)?;
    require_sample(f.grid1(), "axis 1")?;
    pass_rows(f, m)
}

/// Inverse of [`lct_forward_1d`]: runs the forward machinery with the
/// inverted matrix over the frequency grid and lands on the original
/// sample grid. Rejects rasters whose frequency grid was not induced by
/// `m`.
pub fn lct_inverse_1d(f: &ComplexRaster, m: &ParamMatrix) -> Result<ComplexRaster, LctError> {
    require_1d(f)?;
    require_matching_freq(f.grid1(), m, "axis 1")?;
    pass_rows(f, &m.inverse())
}

/// Separable 2D forward transform: axis 1 (rows) with `pair.m1`, then
/// axis 2 (columns) with `pair.m2`.
pub fn lct_forward_2d(f: &ComplexRaster, pair: &ParamPair) -> Result<ComplexRaster, LctError> {
    require_2d(f)?;
    require_sample(f.grid1(), "axis 1")?;
    require_sample(f.grid2().expect("2D raster"), "axis 2")?;
    let step = pass_rows(f, &pair.m1)?.transpose();
    Ok(pass_rows(&step, &pair.m2)?.transpose())
}

/// Inverse of [`lct_forward_2d`].
pub fn lct_inverse_2d(f: &ComplexRaster, pair: &ParamPair) -> Result<ComplexRaster, LctError> {
    require_2d(f)?;
    require_matching_freq(f.grid1(), &pair.m1, "axis 1")?;
    require_matching_freq(f.grid2().expect("2D raster"), &pair.m2, "axis 2")?;
    let step = pass_rows(f, &pair.m1.inverse())?.transpose();
    Ok(pass_rows(&step, &pair.m2.inverse())?.transpose())
}

/// Direct kernel-summation reference for [`lct_forward_1d`]: O(n^2),
/// no FFT, no shared pipeline code.
pub fn lct_oracle_1d(f: &ComplexRaster, m: &ParamMatrix) -> Result<ComplexRaster, LctError> {
    require_1d(f)?;
    require_sample(f.grid1(), "axis 1")?;
    oracle_rows(f, m)
}

/// Direct-summation 2D forward transform; the quadratic-cost benchmark
/// baseline.
pub fn lct_oracle_2d(f: &ComplexRaster, pair: &ParamPair) -> Result<ComplexRaster, LctError> {
    require_2d(f)?;
    require_sample(f.grid1(), "axis 1")?;
    require_sample(f.grid2().expect("2D raster"), "axis 2")?;
    let step = oracle_rows(f, &pair.m1)?.transpose();
    Ok(oracle_rows(&step, &pair.m2)?.transpose())
}

/// Direct-summation inverse of [`lct_oracle_2d`].
pub fn lct_oracle_inverse_2d(f: &ComplexRaster, pair: &ParamPair) -> Result<ComplexRaster, LctError> {
    require_2d(f)?;
    require_matching_freq(f.grid1(), &pair.m1, "axis 1")?;
    require_matching_freq(f.grid2().expect("2D raster"), &pair.m2, "axis 2")?;
    let step = oracle_rows(f, &pair.m1.inverse())?.transpose();
    Ok(oracle_rows(&step, &pair.m2.inverse())?.transpose())
}
