//! Quadratic-phase (chirp) fields used to sandwich classical operators
//! into their canonical-domain counterparts.

use num_complex::Complex64;

use crate::grid::SampleGrid;
use crate::matrix::MatrixError;
use crate::raster::ComplexRaster;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChirpSign {
    Plus,
    Minus,
}

impl ChirpSign {
    fn factor(self) -> f64 {
        match self {
            ChirpSign::Plus => 1.0,
            ChirpSign::Minus => -1.0,
        }
    }
}

/// Separable quadratic phase
/// exp(sign * i * sum_j (num_j / (2 den_j)) x_j^2).
///
/// With numerator a (or d) and denominator b this produces the pre- and
/// post-multipliers that conjugate classical frequency-multiplier
/// operators into their canonical-domain versions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpSpec {
    pub numerator: [f64; 2],
    pub denominator: [f64; 2],
    pub sign: ChirpSign,
}

impl ChirpSpec {
    pub fn new(
        numerator: [f64; 2],
        denominator: [f64; 2],
        sign: ChirpSign,
    ) -> Result<Self, MatrixError> {
        if denominator.contains(&0.0) {
            return Err(MatrixError::ZeroB);
        }
        Ok(Self {
            numerator,
            denominator,
            sign,
        })
    }

    /// Phase coefficient num_j / (2 den_j) for one axis, before the sign.
    fn coefficient(&self, axis: usize) -> f64 {
        self.numerator[axis] / (2.0 * self.denominator[axis])
    }
}

/// Samples the chirp on the tensor grid (grid1 along rows, grid2 down
/// columns). Every sample has unit modulus.
pub fn chirp_field(spec: &ChirpSpec, grid1: &SampleGrid, grid2: &SampleGrid) -> ComplexRaster {
    let s = spec.sign.factor();
    let c1 = spec.coefficient(0);
    let c2 = spec.coefficient(1);
    let w = grid1.n();
    let h = grid2.n();
    let mut samples = Vec::with_capacity(w * h);
    for y in 0..h {
        let x2 = grid2.coord(y);
        let p2 = c2 * x2 * x2;
        for x in 0..w {
            let x1 = grid1.coord(x);
            let phase = s * (c1 * x1 * x1 + p2);
            samples.push(Complex64::new(0.0, phase).exp());
        }
    }
    ComplexRaster::new_2d(samples, grid1.clone(), grid2.clone()).expect("shape by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_denominator() {
        assert_eq!(
            ChirpSpec::new([1.0, 1.0], [1.0, 0.0], ChirpSign::Plus),
            Err(MatrixError::ZeroB)
        );
    }

    #[test]
    fn half_pi_phase_per_axis_gives_minus_one() {
        // With num = den = 1 the phase is (x1^2 + x2^2) / 2; at
        // x = (sqrt(pi), sqrt(pi)) that is pi, so the field is -1 there.
        let spec = ChirpSpec::new([1.0, 1.0], [1.0, 1.0], ChirpSign::Plus).unwrap();
        let root_pi = std::f64::consts::PI.sqrt();
        // Grid with dx = sqrt(pi): coordinate at index 3 of n = 4 is sqrt(pi).
        let g = SampleGrid::new(4, root_pi).unwrap();
        let field = chirp_field(&spec, &g, &g);
        let v = field.at(3, 3);
        assert!((v.re + 1.0).abs() < 1e-12, "re = {}", v.re);
        assert!(v.im.abs() < 1e-12, "im = {}", v.im);
    }

    #[test]
    fn opposite_signs_multiply_to_one() {
        let plus = ChirpSpec::new([3.0, -0.7], [2.0, 5.0], ChirpSign::Plus).unwrap();
        let minus = ChirpSpec::new([3.0, -0.7], [2.0, 5.0], ChirpSign::Minus).unwrap();
        let g1 = SampleGrid::new(8, 0.9).unwrap();
        let g2 = SampleGrid::new(6, 1.7).unwrap();
        let a = chirp_field(&plus, &g1, &g2);
        let b = chirp_field(&minus, &g1, &g2);
        for (x, y) in a.samples().iter().zip(b.samples()) {
            let prod = x * y;
            assert!((prod.re - 1.0).abs() < 1e-15 && prod.im.abs() < 1e-15);
        }
    }

    #[test]
    fn unit_modulus_everywhere() {
        let spec = ChirpSpec::new([6.0, 3.0], [50.0, 400.0], ChirpSign::Minus).unwrap();
        let g = SampleGrid::new(16, 0.25).unwrap();
        let field = chirp_field(&spec, &g, &g);
        for z in field.samples() {
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
    }
}
