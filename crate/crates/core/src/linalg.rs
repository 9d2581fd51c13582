#![allow(clippy::needless_range_loop)]

//! Small dense linear algebra: complex LU solves for the Newton steps,
//! eigenvalue magnitudes for solver diagnostics, and exact Gaussian
//! elimination over the rationals for determinants and ranks.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solve `a x = b` in place by LU with partial pivoting. Returns `None` when
/// a pivot falls below `1e-300` (numerically singular).
pub fn lu_solve(a: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut x: Vec<Complex64> = b.to_vec();
    for col in 0..n {
        let (piv, piv_norm) = (col..n)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|u, v| u.1.total_cmp(&v.1))?;
        if piv_norm < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        x.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let sub = f * m[col][c];
                m[r][c] -= sub;
            }
            let sub = f * x[col];
            x[r] -= sub;
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for c in col + 1..n {
            s -= m[col][c] * x[c];
        }
        x[col] = s / m[col][col];
    }
    Some(x)
}

/// Determinant magnitude via LU.
pub fn det_magnitude(a: &[Vec<Complex64>]) -> f64 {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut det = Complex64::ONE;
    for col in 0..n {
        let Some((piv, piv_norm)) = (col..n)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|u, v| u.1.total_cmp(&v.1))
        else {
            return 0.0;
        };
        if piv_norm == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let sub = f * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det.norm()
}

/// Eigenvalue magnitudes of a small complex matrix, sorted descending.
///
/// Characteristic polynomial by Faddeev-LeVerrier, roots by Durand-Kerner;
/// adequate for the n <= 8 matrices this toolkit produces.
pub fn eigenvalue_magnitudes(a: &[Vec<Complex64>]) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return vec![];
    }
    // c[k] are the coefficients of lambda^{n-k}; c[0] = 1
    let mut coeffs = vec![Complex64::ZERO; n + 1];
    coeffs[0] = Complex64::ONE;
    let mut m = vec![vec![Complex64::ZERO; n]; n]; // starts as zero, becomes A M + c I
    for k in 1..=n {
        // M_k = A * M_{k-1} + c_{k-1} I
        let mut next = vec![vec![Complex64::ZERO; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = if i == j {
                    coeffs[k - 1]
                } else {
                    Complex64::ZERO
                };
                for l in 0..n {
                    s += a[i][l] * m[l][j];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut trace = Complex64::ZERO;
        for i in 0..n {
            let mut s = Complex64::ZERO;
            for l in 0..n {
                s += a[i][l] * m[l][i];
            }
            trace += s;
        }
        coeffs[k] = -trace / (k as f64);
    }
    let roots = durand_kerner(&coeffs);
    let mut mags: Vec<f64> = roots.iter().map(|r| r.norm()).collect();
    mags.sort_by(|x, y| y.total_cmp(x));
    mags
}

/// All roots of a monic polynomial given by coefficients `c[0] = 1, c[1], ..`
/// of descending powers (Durand-Kerner iteration).
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    durand_kerner(coeffs)
}

fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let eval = |z: Complex64| {
        let mut v = Complex64::ZERO;
        for &c in coeffs {
            v = v * z + c;
        }
        v
    };
    // spread initial guesses on a non-real ray to break symmetry
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..400 {
        let mut moved: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::ONE;
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-280 {
                continue;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-13 {
            break;
        }
    }
    roots
}

/// Exact rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mat: &[Vec<BigRational>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut m = mat.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, piv);
        let inv = m[row][col].recip();
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let sub = &m[row][c] * &f;
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Exact determinant of a square rational matrix.
pub fn rational_det(mat: &[Vec<BigRational>]) -> BigRational {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let sub = &m[col][c] * &f;
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn lu_solves_2x2() {
        let a = vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)],
        ];
        let b = vec![Complex64::new(5.0, 0.0), Complex64::new(10.0, 0.0)];
        let x = lu_solve(&a, &b).unwrap();
        assert!((x[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eigen_magnitudes_of_diagonal() {
        let a = vec![
            vec![Complex64::new(3.0, 0.0), Complex64::ZERO],
            vec![Complex64::ZERO, Complex64::new(-1.0, 0.0)],
        ];
        let mags = eigenvalue_magnitudes(&a);
        assert!((mags[0] - 3.0).abs() < 1e-9);
        assert!((mags[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rational_rank_and_det() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(rational_rank(&m), 1);
        assert_eq!(rational_det(&m), rat(0));
        let m2 = vec![vec![rat(18), rat(-9)], vec![rat(-9), rat(18)]];
        assert_eq!(rational_det(&m2), rat(243));
        assert_eq!(rational_rank(&m2), 2);
    }
}
