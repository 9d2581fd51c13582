//! Truncated complex power series: just enough arithmetic to extract jets of
//! rational boundary-to-boundary maps without symbolic differentiation.

use num_complex::Complex64;

/// Coefficients `c_0 + c_1 z + ... + c_m z^m`; all operations truncate to
/// the common order.
#[derive(Debug, Clone, PartialEq)]
pub struct Taylor {
    pub coeffs: Vec<Complex64>,
}

impl Taylor {
    pub fn zero(order: usize) -> Self {
        Taylor {
            coeffs: vec![Complex64::ZERO; order + 1],
        }
    }

    pub fn constant(order: usize, c: Complex64) -> Self {
        let mut t = Self::zero(order);
        t.coeffs[0] = c;
        t
    }

    /// `c0 + c1 z` padded to `order`.
    pub fn linear(order: usize, c0: Complex64, c1: Complex64) -> Self {
        let mut t = Self::zero(order);
        t.coeffs[0] = c0;
        if order >= 1 {
            t.coeffs[1] = c1;
        }
        t
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Taylor) -> Taylor {
        let order = self.order().min(other.order());
        let mut out = Taylor::zero(order);
        for i in 0..=order {
            let mut acc = Complex64::ZERO;
            for j in 0..=i {
                acc += self.coeffs[j] * other.coeffs[i - j];
            }
            out.coeffs[i] = acc;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Taylor {
        Taylor {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Taylor {
        let order = self.order();
        let a0 = self.coeffs[0];
        assert!(a0.norm() > 0.0, "series has no inverse at 0");
        let mut out = Taylor::zero(order);
        out.coeffs[0] = a0.inv();
        for i in 1..=order {
            let mut acc = Complex64::ZERO;
            for j in 1..=i {
                acc += self.coeffs[j] * out.coeffs[i - j];
            }
            out.coeffs[i] = -acc / a0;
        }
        out
    }

    /// Derivatives `(f(0), f'(0), ..., f^(m)(0))` by factorial scaling.
    pub fn derivatives(&self) -> Vec<Complex64> {
        let mut fact = 1.0f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                if k > 1 {
                    fact *= k as f64;
                }
                c * fact
            })
            .collect()
    }
}
