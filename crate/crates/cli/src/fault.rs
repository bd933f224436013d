use num_complex::Complex64;
use scarf_core::numeric::Side;
use scarf_core::{Potential, ScarfParams64};

/// The potential with the sign of `Q` reversed, `V(x, -Q) = V(-x, Q)`,
/// while the closed forms still come from the original `(A, B)`.
#[derive(Debug, Clone, Copy)]
pub struct FlippedQ(pub ScarfParams64);

impl Potential<f64> for FlippedQ {
    fn value(&self, x: f64) -> Complex64 {
        self.0.value(-x)
    }

    fn tail_coefficients(&self, side: Side, terms: usize) -> Vec<Complex64> {
        let mirrored = match side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        self.0.tail_coefficients(mirrored, terms)
    }

    fn scan_floor(&self) -> f64 {
        self.0.scan_floor()
    }
}

/// The potential the numerics should integrate.
pub fn numeric_potential(p: &ScarfParams64, flip_q: bool) -> Box<dyn Potential<f64>> {
    if flip_q {
        Box::new(FlippedQ(*p))
    } else {
        Box::new(*p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flipped_potential() {
        let p = ScarfParams64::new(Complex64::new(2.7, 0.0), Complex64::new(1.2, 1.4));
        let f = FlippedQ(p);
        for x in [-3.0, -0.5, 0.0, 1.7] {
            let s = 1.0 / f64::cosh(x);
            let want = p.p() * s * s - p.q() * s * f64::tanh(x);
            assert!((f.value(x) - want).norm() < 1e-14);
        }
        assert_eq!(f.tail_coefficients(Side::Right, 4), p.tail_coefficients(Side::Left, 4));
    }
}
