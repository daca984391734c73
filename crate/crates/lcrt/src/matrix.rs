//! 2x2 parameter matrices for the canonical-transform family.
//!
//! A transform is parameterized by a real matrix {{a, b}, {c, d}} with
//! det = ad - bc = 1. This realization is the frequency-multiplier fast
//! path, which exists only for b != 0, so b = 0 parameterizations are
//! rejected at construction.

use thiserror::Error;

/// Validation slack on |det - 1|. Matrix entries arrive as decimal
/// literals (config files, CLI flags), so the determinant of a nominally
/// unimodular matrix carries a few ulps of representation error; 1e-9
/// absorbs that without admitting genuinely non-unimodular input.
pub const DET_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix determinant is {0}, expected 1")]
    DetNotOne(f64),
    #[error("matrix has b = 0; the multiplier realization requires b != 0")]
    ZeroB,
    #[error("sharpness b/c is undefined: matrix has c = 0")]
    ZeroC,
}

/// Validated transform parameters {{a, b}, {c, d}}, det = 1, b != 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl ParamMatrix {
    /// Validates det = 1 (within [`DET_TOLERANCE`]) and b != 0.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MatrixError> {
        for v in [a, b, c, d] {
            if !v.is_finite() {
                return Err(MatrixError::DetNotOne(f64::NAN));
            }
        }
        if b == 0.0 {
            return Err(MatrixError::ZeroB);
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOLERANCE {
            return Err(MatrixError::DetNotOne(det));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// The group inverse {{d, -b}, {-c, a}}; applying the transform of the
    /// inverse matrix undoes the transform of `self`.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Edge-sharpness ratio b/c. Undefined for c = 0; -1 marks the
    /// classical (Fourier) regime.
    pub fn sharpness(&self) -> Result<f64, MatrixError> {
        if self.c == 0.0 {
            return Err(MatrixError::ZeroC);
        }
        Ok(self.b / self.c)
    }

    /// Whether a = d, the hypothesis under which the Riesz-type transform
    /// reduces to a pure frequency multiplier.
    pub fn equal_diagonal(&self) -> bool {
        self.a == self.d
    }

    /// {{0, 1}, {-1, 0}}: the transform reduces to the Fourier transform
    /// (up to the constant factor sqrt(-i) per axis).
    pub fn fourier() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            c: -1.0,
            d: 0.0,
        }
    }

    /// Fractional-Fourier rotation {{cos a, sin a}, {-sin a, cos a}}.
    /// Fails with `ZeroB` at integer multiples of pi.
    pub fn frft(alpha: f64) -> Result<Self, MatrixError> {
        Self::new(alpha.cos(), alpha.sin(), -alpha.sin(), alpha.cos())
    }

    /// Pure scaling diag(sigma, 1/sigma). Always fails with `ZeroB`: the
    /// multiplier realization cannot express b = 0 members.
    pub fn scaling(sigma: f64) -> Result<Self, MatrixError> {
        Self::new(sigma, 0.0, 0.0, 1.0 / sigma)
    }

    /// Free-space (Fresnel) propagation {{1, z*lambda/(2 pi)}, {0, 1}}.
    pub fn fresnel(z: f64, lambda: f64) -> Result<Self, MatrixError> {
        Self::new(1.0, z * lambda / std::f64::consts::TAU, 0.0, 1.0)
    }

    /// Chirp multiplication {{1, 0}, {-q, 1}}. Always fails with `ZeroB`,
    /// as for [`ParamMatrix::scaling`].
    pub fn chirp_multiplication(q: f64) -> Result<Self, MatrixError> {
        Self::new(1.0, 0.0, -q, 1.0)
    }
}

/// Per-axis matrices (A1, A2) for a separable 2D transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPair {
    pub m1: ParamMatrix,
    pub m2: ParamMatrix,
}

impl ParamPair {
    pub fn new(m1: ParamMatrix, m2: ParamMatrix) -> Self {
        Self { m1, m2 }
    }

    /// Same matrix on both axes.
    pub fn isotropic(m: ParamMatrix) -> Self {
        Self { m1: m, m2: m }
    }

    pub fn classical() -> Self {
        Self::isotropic(ParamMatrix::fourier())
    }

    pub fn inverse(&self) -> Self {
        Self {
            m1: self.m1.inverse(),
            m2: self.m2.inverse(),
        }
    }

    pub fn equal_diagonal(&self) -> bool {
        self.m1.equal_diagonal() && self.m2.equal_diagonal()
    }

    pub fn axis(&self, axis: crate::Axis) -> &ParamMatrix {
        match axis {
            crate::Axis::Axis1 => &self.m1,
            crate::Axis::Axis2 => &self.m2,
        }
    }

    /// Per-axis sharpness; `None` where c = 0.
    pub fn sharpness(&self) -> [Option<f64>; 2] {
        [self.m1.sharpness().ok(), self.m2.sharpness().ok()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_unimodular() {
        let m = ParamMatrix::new(6.0, 50.0, 0.7, 6.0).unwrap();
        assert_eq!(m.a(), 6.0);
        assert_eq!(m.b(), 50.0);
        assert_eq!(m.c(), 0.7);
        assert_eq!(m.d(), 6.0);
    }

    #[test]
    fn rejects_non_unimodular() {
        match ParamMatrix::new(1.0, 2.0, 3.0, 4.0) {
            Err(MatrixError::DetNotOne(det)) => assert_eq!(det, -2.0),
            other => panic!("expected DetNotOne, got {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_b() {
        assert_eq!(ParamMatrix::new(1.0, 0.0, 0.0, 1.0), Err(MatrixError::ZeroB));
        assert_eq!(ParamMatrix::scaling(2.0), Err(MatrixError::ZeroB));
        assert_eq!(ParamMatrix::chirp_multiplication(3.0), Err(MatrixError::ZeroB));
    }

    #[test]
    fn inverse_swaps_diagonal_and_negates_off_axis() {
        let m = ParamMatrix::new(6.0, 50.0, 0.7, 6.0).unwrap();
        let inv = m.inverse();
        assert_eq!((inv.a(), inv.b(), inv.c(), inv.d()), (6.0, -50.0, -0.7, 6.0));
        assert_eq!(inv.inverse(), m);
    }

    #[test]
    fn fourier_matrix() {
        let f = ParamMatrix::fourier();
        assert_eq!((f.a(), f.b(), f.c(), f.d()), (0.0, 1.0, -1.0, 0.0));
    }

    #[test]
    fn quarter_turn_frft_is_fourier() {
        let m = ParamMatrix::frft(std::f64::consts::FRAC_PI_2).unwrap();
        let f = ParamMatrix::fourier();
        // cos(pi/2) is ~6e-17 rather than 0 in f64.
        assert!((m.a() - f.a()).abs() < 1e-15);
        assert!((m.b() - f.b()).abs() < 1e-15);
        assert!((m.c() - f.c()).abs() < 1e-15);
        assert!((m.d() - f.d()).abs() < 1e-15);
    }

    #[test]
    fn frft_rejects_zero_angle() {
        assert_eq!(ParamMatrix::frft(0.0), Err(MatrixError::ZeroB));
    }

    #[test]
    fn fresnel_is_unit_upper_shear() {
        let m = ParamMatrix::fresnel(2.0, std::f64::consts::TAU).unwrap();
        assert_eq!((m.a(), m.b(), m.c(), m.d()), (1.0, 2.0, 0.0, 1.0));
        assert_eq!(m.sharpness(), Err(MatrixError::ZeroC));
    }

    #[test]
    fn reference_matrices_validate() {
        // 2D experiment pairs.
        let table = [
            (6.0, 50.0, 0.7, 6.0),
            (3.0, 400.0, 0.02, 3.0),
            (10.0, 330.0, 0.3, 10.0),
            (20.0, 39.9, 10.0, 20.0),
            (4.0, 1.0, 15.0, 4.0),
            (6.0, 500.0, 0.07, 6.0),
            (4.0, 300.0, 0.05, 4.0),
        ];
        for (a, b, c, d) in table {
            ParamMatrix::new(a, b, c, d).unwrap();
        }
        // Gaussian-sweep and color-sweep matrices.
        for (b, c) in [
            (1.0, -1.0),
            (1000.0, -0.001),
            (500.0, -0.002),
            (250.0, -0.004),
            (25.0, -0.04),
            (400.0, -1.0 / 400.0),
            (200.0, -0.005),
            (125.0, -0.008),
            (22.0, -1.0 / 22.0),
        ] {
            ParamMatrix::new(0.0, b, c, 0.0).unwrap();
        }
    }

    #[test]
    fn sharpness_reference_values_exact() {
        let cases = [
            (1000.0, -0.001, -1_000_000.0),
            (500.0, -0.002, -250_000.0),
            (250.0, -0.004, -62_500.0),
            (25.0, -0.04, -625.0),
            (1.0, -1.0, -1.0),
            (400.0, -1.0 / 400.0, -160_000.0),
            (200.0, -0.005, -40_000.0),
            (125.0, -0.008, -15_625.0),
            (22.0, -1.0 / 22.0, -484.0),
        ];
        for (b, c, expected) in cases {
            let m = ParamMatrix::new(0.0, b, c, 0.0).unwrap();
            assert_eq!(m.sharpness().unwrap(), expected, "b={b} c={c}");
        }
    }
}
