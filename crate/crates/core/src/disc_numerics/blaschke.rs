//! Finite Blaschke products: the model for holomorphic maps of the disc to
//! itself of a given boundary degree.

use super::series::Taylor;
use super::NumericsError;
use num_complex::Complex64;

/// `xi * prod (z - a_k)/(1 - conj(a_k) z)` with `|xi| = 1` and every center
/// strictly inside the unit disc. The topological degree is the number of
/// centers.
#[derive(Debug, Clone)]
pub struct BlaschkeProduct {
    xi: Complex64,
    centers: Vec<Complex64>,
}

/// Vector of derivatives `(h(0), h'(0), ..., h^(m)(0))`.
#[derive(Debug, Clone, PartialEq)]
pub struct JetVector(pub Vec<Complex64>);

impl BlaschkeProduct {
    pub fn new(xi: Complex64, centers: Vec<Complex64>) -> Result<Self, NumericsError> {
        if (xi.norm() - 1.0).abs() > 1e-12 {
            return Err(NumericsError::NotUnitModulus(xi.norm()));
        }
        for &a in &centers {
            if a.norm() >= 1.0 {
                return Err(NumericsError::CenterOutsideDisc(a.norm()));
            }
        }
        Ok(BlaschkeProduct { xi, centers })
    }

    /// `z^d`.
    pub fn power(d: usize) -> Self {
        BlaschkeProduct {
            xi: Complex64::ONE,
            centers: vec![Complex64::ZERO; d],
        }
    }

    pub fn degree(&self) -> usize {
        self.centers.len()
    }

    pub fn xi(&self) -> Complex64 {
        self.xi
    }

    pub fn centers(&self) -> &[Complex64] {
        &self.centers
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = self.xi;
        for &a in &self.centers {
            acc *= (z - a) / (Complex64::ONE - a.conj() * z);
        }
        acc
    }

    /// Taylor expansion at the origin up to `order`, via truncated series
    /// products and geometric inversion of each denominator.
    pub fn taylor(&self, order: usize) -> Taylor {
        let mut acc = Taylor::constant(order, self.xi);
        for &a in &self.centers {
            let num = Taylor::linear(order, -a, Complex64::ONE);
            let den = Taylor::linear(order, Complex64::ONE, -a.conj());
            acc = acc.mul(&num).mul(&den.inverse());
        }
        acc
    }

    /// Jet `(h(0), ..., h^(order)(0))`.
    pub fn jet(&self, order: usize) -> JetVector {
        JetVector(self.taylor(order).derivatives())
    }

    /// Pointwise product, a Blaschke product of summed degree.
    pub fn product(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut centers = self.centers.clone();
        centers.extend_from_slice(&other.centers);
        BlaschkeProduct {
            xi: self.xi * other.xi,
            centers,
        }
    }

    /// Topological degree read off the boundary circle: total winding of
    /// `theta -> b(e^{i theta})`, rounded to the nearest integer.
    pub fn boundary_winding(&self, samples: usize) -> i64 {
        let mut total = 0.0f64;
        let mut prev = self.eval(Complex64::ONE).arg();
        for k in 1..=samples {
            let theta = std::f64::consts::TAU * (k as f64) / (samples as f64);
            let arg = self.eval(Complex64::from_polar(1.0, theta)).arg();
            let mut delta = arg - prev;
            while delta > std::f64::consts::PI {
                delta -= std::f64::consts::TAU;
            }
            while delta < -std::f64::consts::PI {
                delta += std::f64::consts::TAU;
            }
            total += delta;
            prev = arg;
        }
        (total / std::f64::consts::TAU).round() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds;
    use rand::Rng;

    fn random_product(rng: &mut impl Rng, degree: usize) -> BlaschkeProduct {
        let xi = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        let centers = (0..degree)
            .map(|_| {
                let r = 0.9 * rng.random_range(0.0f64..1.0).sqrt();
                Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
            })
            .collect();
        BlaschkeProduct::new(xi, centers).unwrap()
    }

    #[test]
    fn degree_zero_is_constant() {
        let b = BlaschkeProduct::new(Complex64::ONE, vec![]).unwrap();
        for z in [Complex64::ZERO, Complex64::new(0.3, -0.4)] {
            assert_eq!(b.eval(z), Complex64::ONE);
        }
    }

    #[test]
    fn centered_product_is_power() {
        let b = BlaschkeProduct::power(3);
        let z = Complex64::new(0.2, 0.5);
        assert!((b.eval(z) - z.powu(3)).norm() < 1e-14);
    }

    #[test]
    fn boundary_modulus_is_one() {
        for trial in 0..1000u64 {
            let mut rng = seeds::stream(42, trial);
            let b = random_product(&mut rng, 1 + (trial % 4) as usize);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let v = b.eval(Complex64::from_polar(1.0, theta));
            assert!((v.norm() - 1.0).abs() < 1e-10, "trial {trial}");
        }
    }

    #[test]
    fn jet_of_power_vanishes() {
        for n in 1..=4usize {
            let b = BlaschkeProduct::power(n + 1);
            let JetVector(jet) = b.jet(n);
            assert!(jet.iter().all(|c| c.norm() < 1e-14), "n={n}");
        }
    }

    #[test]
    fn jet_order_zero_is_value() {
        let a = Complex64::new(0.3, -0.2);
        let b = BlaschkeProduct::new(Complex64::ONE, vec![a]).unwrap();
        let JetVector(jet) = b.jet(0);
        assert!((jet[0] - (-a)).norm() < 1e-14);
    }

    #[test]
    fn jet_matches_finite_differences() {
        // independent oracle: central differences of eval along the real axis
        for trial in 0..20u64 {
            let mut rng = seeds::stream(7, trial);
            let b = random_product(&mut rng, 3);
            let JetVector(jet) = b.jet(2);
            let h = 1e-5;
            let f = |x: f64| b.eval(Complex64::new(x, 0.0));
            let d0 = f(0.0);
            let d1 = (f(h) - f(-h)) / (2.0 * h);
            let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
            assert!((jet[0] - d0).norm() < 1e-10);
            assert!((jet[1] - d1).norm() < 1e-6);
            assert!((jet[2] - d2).norm() < 1e-4);
        }
    }

    #[test]
    fn winding_adds_over_products() {
        for trial in 0..20u64 {
            let mut rng = seeds::stream(11, trial);
            let da = 1 + (trial % 3) as usize;
            let db = 1 + (trial % 2) as usize;
            let a = random_product(&mut rng, da);
            let b = random_product(&mut rng, db);
            let prod = a.product(&b);
            assert_eq!(prod.degree(), da + db);
            assert_eq!(prod.boundary_winding(4096), (da + db) as i64);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BlaschkeProduct::new(Complex64::new(2.0, 0.0), vec![]).is_err());
        assert!(BlaschkeProduct::new(Complex64::ONE, vec![Complex64::new(1.0, 0.0)]).is_err());
    }
}
