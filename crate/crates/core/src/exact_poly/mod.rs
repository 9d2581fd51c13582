//! Exact multivariate Laurent polynomials over arbitrary-precision rationals.
//!
//! Every symbolic identity in the toolkit is decided on this carrier: terms
//! are kept in a sorted map from exponent vector to nonzero coefficient, so
//! equality is termwise and serialization is deterministic.

mod multinomial;

pub use multinomial::{binomial, multinomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable contexts differ: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("substitution image for {var} is not a single Laurent monomial")]
    NonMonomialImage { var: String },
    #[error("expected {expected} substitution images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("evaluation at a zero coordinate with negative exponent")]
    ZeroToNegativePower,
    #[error("{0}")]
    Argument(String),
}

/// Ambient variable set. Polynomials only combine when they share one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarContext {
    names: Vec<String>,
}

impl VarContext {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        Arc::new(VarContext {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    /// `y1..yn`
    pub fn y_vars(n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| format!("y{i}")).collect())
    }

    /// `z0..zn` (count entries, so `z_vars(n + 1)` for indices `0..=n`)
    pub fn z_vars(count: usize) -> Arc<Self> {
        Self::new((0..count).map(|i| format!("z{i}")).collect())
    }

    /// `x0..xn` (count entries)
    pub fn x_vars(count: usize) -> Arc<Self> {
        Self::new((0..count).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn describe(&self) -> String {
        self.names.join(",")
    }
}

/// Exponent vector of one Laurent monomial; `entries.len()` always equals
/// the ambient variable count, with no trailing padding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, var: usize) -> Self {
        let mut e = vec![0; n];
        e[var] = 1;
        Exponent(e)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn scaled(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }
}

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero, and all exponent vectors have
/// the context's length. Terms iterate in lexicographic exponent order.
#[derive(Debug, Clone)]
pub struct LaurentPolynomial {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Exponent, BigRational>,
}

impl PartialEq for LaurentPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for LaurentPolynomial {}

impl LaurentPolynomial {
    pub fn zero(ctx: Arc<VarContext>) -> Self {
        LaurentPolynomial {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: Arc<VarContext>, c: BigRational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            let n = p.ctx.len();
            p.terms.insert(Exponent::zeros(n), c);
        }
        p
    }

    pub fn constant_i64(ctx: Arc<VarContext>, c: i64) -> Self {
        Self::constant(ctx, BigRational::from_integer(BigInt::from(c)))
    }

    /// The monomial `c * vars^exp`.
    pub fn monomial(ctx: Arc<VarContext>, exp: Exponent, c: BigRational) -> Self {
        assert_eq!(exp.0.len(), ctx.len(), "exponent arity mismatch");
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `vars[i]` as a polynomial.
    pub fn var(ctx: Arc<VarContext>, i: usize) -> Self {
        let n = ctx.len();
        Self::monomial(ctx, Exponent::unit(n, i), BigRational::one())
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &Exponent) -> BigRational {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn check_ctx(&self, other: &Self) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch {
                left: self.ctx.describe(),
                right: other.ctx.describe(),
            })
        }
    }

    fn insert_term(terms: &mut BTreeMap<Exponent, BigRational>, exp: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ctx(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        Ok(LaurentPolynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx.clone());
        }
        LaurentPolynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ctx(other)?;
        Ok(LaurentPolynomial {
            ctx: self.ctx.clone(),
            terms: mul_terms(&self.terms, &other.terms),
        })
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.ctx.clone(), BigRational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        acc
    }

    /// Composition with one Laurent monomial per variable. Each image must be
    /// a single-term polynomial (nonzero coefficient times a monomial), so
    /// negative exponents of `self` stay exact.
    pub fn substitute(&self, images: &[LaurentPolynomial]) -> Result<Self, PolyError> {
        let n = self.ctx.len();
        if images.len() != n {
            return Err(PolyError::ImageCount {
                expected: n,
                got: images.len(),
            });
        }
        let out_ctx = images
            .first()
            .map(|p| p.ctx.clone())
            .unwrap_or_else(|| self.ctx.clone());
        let mut parts: Vec<(Exponent, BigRational)> = Vec::with_capacity(n);
        for (i, img) in images.iter().enumerate() {
            if img.ctx != out_ctx {
                return Err(PolyError::ContextMismatch {
                    left: out_ctx.describe(),
                    right: img.ctx.describe(),
                });
            }
            if img.terms.len() != 1 {
                return Err(PolyError::NonMonomialImage {
                    var: self.ctx.name(i).to_string(),
                });
            }
            let (e, c) = img.terms.iter().next().unwrap();
            parts.push((e.clone(), c.clone()));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut exp = Exponent::zeros(out_ctx.len());
            let mut coeff = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                exp = exp.add(&parts[i].0.scaled(k));
                coeff *= rational_pow(&parts[i].1, k);
            }
            Self::insert_term(&mut terms, exp, coeff);
        }
        Ok(LaurentPolynomial {
            ctx: out_ctx,
            terms,
        })
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp.0[var] -= 1;
            Self::insert_term(
                &mut terms,
                exp,
                c * BigRational::from_integer(BigInt::from(k)),
            );
        }
        LaurentPolynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Exact evaluation at a rational point; the point must avoid zero
    /// coordinates wherever the polynomial has a negative exponent.
    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.ctx.len() {
            return Err(PolyError::Argument(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.ctx.len()
            )));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if point[i].is_zero() && k < 0 {
                    return Err(PolyError::ZeroToNegativePower);
                }
                t *= rational_pow(&point[i], k);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation at a complex point, with compensated
    /// summation so large positive expansions keep absolute accuracy.
    pub fn eval_complex(&self, point: &[num_complex::Complex64]) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let mut sum = Complex64::ZERO;
        let mut comp = Complex64::ZERO;
        for (e, c) in &self.terms {
            let mut t = Complex64::new(coeff_to_f64(c), 0.0);
            for (i, &k) in e.0.iter().enumerate() {
                if k != 0 {
                    t *= point[i].powi(k as i32);
                }
            }
            let y = t - comp;
            let s2 = sum + y;
            comp = (s2 - sum) - y;
            sum = s2;
        }
        sum
    }

    /// Largest power of the all-ones monomial dividing every term is removed,
    /// i.e. the canonical representative modulo `v_0 * ... * v_{n-1} = 1`.
    pub fn reduce_mod_product(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let m = *e.0.iter().min().unwrap_or(&0);
            let exp = if m == 0 {
                e.clone()
            } else {
                Exponent(e.0.iter().map(|a| a - m).collect())
            };
            Self::insert_term(&mut terms, exp, c.clone());
        }
        LaurentPolynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// True when every exponent is componentwise nonnegative and every term
    /// has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: i64) -> bool {
        self.terms
            .keys()
            .all(|e| e.0.iter().all(|&k| k >= 0) && e.total() == d)
    }
}

fn rational_pow(base: &BigRational, k: i64) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::one();
    let b = if k > 0 { base.clone() } else { base.recip() };
    for _ in 0..k.unsigned_abs() {
        acc *= &b;
    }
    acc
}

#[cfg(feature = "parallel")]
fn mul_terms(
    a: &BTreeMap<Exponent, BigRational>,
    b: &BTreeMap<Exponent, BigRational>,
) -> BTreeMap<Exponent, BigRational> {
    use rayon::prelude::*;
    // Exact coefficients commute, so chunked partial products merge to the
    // same map regardless of thread scheduling.
    if a.len() * b.len() < 4096 {
        return mul_terms_seq(a, b);
    }
    let lhs: Vec<(&Exponent, &BigRational)> = a.iter().collect();
    lhs.par_chunks(64.max(lhs.len() / 64))
        .map(|chunk| {
            let mut out = BTreeMap::new();
            for (ea, ca) in chunk {
                for (eb, cb) in b {
                    LaurentPolynomial::insert_term(&mut out, ea.add(eb), *ca * cb);
                }
            }
            out
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (e, c) in part {
                LaurentPolynomial::insert_term(&mut acc, e, c);
            }
            acc
        })
}

#[cfg(not(feature = "parallel"))]
fn mul_terms(
    a: &BTreeMap<Exponent, BigRational>,
    b: &BTreeMap<Exponent, BigRational>,
) -> BTreeMap<Exponent, BigRational> {
    mul_terms_seq(a, b)
}

fn mul_terms_seq(
    a: &BTreeMap<Exponent, BigRational>,
    b: &BTreeMap<Exponent, BigRational>,
) -> BTreeMap<Exponent, BigRational> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            LaurentPolynomial::insert_term(&mut out, ea.add(eb), ca * cb);
        }
    }
    out
}

/// Canonical text form: terms in lexicographic exponent order, each printed
/// as `c * v^e ...` with zero exponents omitted.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.0.iter().enumerate() {
                if k != 0 {
                    write!(f, " * {}^{}", self.ctx.name(i), k)?;
                }
            }
        }
        Ok(())
    }
}

/// JSON form: a list of `{"exponent": [...], "num": "...", "den": "..."}`
/// objects in lexicographic exponent order.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exponent: &'a [i64],
            num: String,
            den: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term {
                exponent: &e.0,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })?;
        }
        seq.end()
    }
}

/// Coefficient as f64 (used only by floating-point consumers; exact checks
/// never round).
pub fn coeff_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back to a sign-preserving ratio of leading digits
        let s = if c.is_negative() { -1.0 } else { 1.0 };
        s * f64::INFINITY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn additive_inverse_cancels() {
        let ctx = VarContext::y_vars(1);
        let y = LaurentPolynomial::var(ctx.clone(), 0);
        let sum = y.add(&y.neg()).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn binomial_square() {
        let ctx = VarContext::y_vars(1);
        let one = LaurentPolynomial::constant_i64(ctx.clone(), 1);
        let y = LaurentPolynomial::var(ctx.clone(), 0);
        let sq = one.add(&y).unwrap().pow(2);
        // 1 + 2 y + y^2
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coefficient(&Exponent(vec![0])), rat(1));
        assert_eq!(sq.coefficient(&Exponent(vec![1])), rat(2));
        assert_eq!(sq.coefficient(&Exponent(vec![2])), rat(1));
    }

    #[test]
    fn binomial_square_two_vars() {
        let ctx = VarContext::z_vars(2);
        let z0 = LaurentPolynomial::var(ctx.clone(), 0);
        let z1 = LaurentPolynomial::var(ctx.clone(), 1);
        let sq = z0.add(&z1).unwrap().pow(2);
        assert_eq!(sq.coefficient(&Exponent(vec![2, 0])), rat(1));
        assert_eq!(sq.coefficient(&Exponent(vec![1, 1])), rat(2));
        assert_eq!(sq.coefficient(&Exponent(vec![0, 2])), rat(1));
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = LaurentPolynomial::var(VarContext::y_vars(1), 0);
        let b = LaurentPolynomial::var(VarContext::z_vars(1), 0);
        assert!(matches!(a.add(&b), Err(PolyError::ContextMismatch { .. })));
    }

    #[test]
    fn complex_evaluation_matches_rational() {
        use num_complex::Complex64;
        use num_traits::ToPrimitive;
        let ctx = VarContext::y_vars(2);
        let y1 = LaurentPolynomial::var(ctx.clone(), 0);
        let inv = LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![-1, -2]), rat(3));
        let p = y1.add(&inv).unwrap();
        let point = [
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        ];
        let exact = p.eval_rational(&point).unwrap();
        let complex = p.eval_complex(&[Complex64::new(0.5, 0.0), Complex64::new(-0.75, 0.0)]);
        assert!((complex.re - exact.to_f64().unwrap()).abs() < 1e-12);
        assert!(complex.im.abs() < 1e-12);
    }

    #[test]
    fn substitute_monomial_images() {
        // n=1 covering map: y -> y * Y with Y = y, so y -> y^2
        let ctx = VarContext::y_vars(1);
        let y = LaurentPolynomial::var(ctx.clone(), 0);
        let image = LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![2]), rat(1));
        let out = y.substitute(&[image]).unwrap();
        assert_eq!(
            out,
            LaurentPolynomial::monomial(ctx, Exponent(vec![2]), rat(1))
        );
    }

    #[test]
    fn substitute_fixes_constants() {
        let ctx = VarContext::y_vars(2);
        let c = LaurentPolynomial::constant_i64(ctx.clone(), 7);
        let imgs = vec![
            LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![2, 1]), rat(1)),
            LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![1, 2]), rat(1)),
        ];
        assert_eq!(c.substitute(&imgs).unwrap(), c);
    }

    #[test]
    fn substitute_exponent_bookkeeping() {
        // n=2: y1 y2 under y_i -> y_i * (y1 y2) becomes y1^3 y2^3
        let ctx = VarContext::y_vars(2);
        let p = LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![1, 1]), rat(1));
        let imgs = vec![
            LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![2, 1]), rat(1)),
            LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![1, 2]), rat(1)),
        ];
        let out = p.substitute(&imgs).unwrap();
        assert_eq!(
            out,
            LaurentPolynomial::monomial(ctx, Exponent(vec![3, 3]), rat(1))
        );
    }

    #[test]
    fn substitute_rejects_non_monomial_image() {
        let ctx = VarContext::y_vars(1);
        let y = LaurentPolynomial::var(ctx.clone(), 0);
        let img = y
            .add(&LaurentPolynomial::constant_i64(ctx.clone(), 1))
            .unwrap();
        assert!(matches!(
            y.substitute(&[img]),
            Err(PolyError::NonMonomialImage { .. })
        ));
    }

    #[test]
    fn derivative_of_laurent_term() {
        let ctx = VarContext::y_vars(1);
        let p = LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![-1]), rat(1));
        let d = p.derivative(0);
        assert_eq!(
            d,
            LaurentPolynomial::monomial(ctx, Exponent(vec![-2]), rat(-1))
        );
    }

    #[test]
    fn reduce_mod_product_canonicalizes() {
        let ctx = VarContext::z_vars(3);
        // z0^3 z1 z2 == z0^2 modulo z0 z1 z2 = 1
        let p = LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![3, 1, 1]), rat(1));
        assert_eq!(
            p.reduce_mod_product(),
            LaurentPolynomial::monomial(ctx, Exponent(vec![2, 0, 0]), rat(1))
        );
    }

    #[test]
    fn display_is_canonical() {
        let ctx = VarContext::y_vars(2);
        let y1 = LaurentPolynomial::var(ctx.clone(), 0);
        let inv = LaurentPolynomial::monomial(ctx.clone(), Exponent(vec![-1, 0]), rat(1));
        let p = y1
            .add(&inv)
            .unwrap()
            .add(&LaurentPolynomial::constant_i64(ctx, 2))
            .unwrap();
        assert_eq!(p.to_string(), "1 * y1^-1 + 2 + 1 * y1^1");
    }

    #[test]
    fn json_terms_in_lexicographic_order() {
        let ctx = VarContext::y_vars(2);
        let mut p = LaurentPolynomial::zero(ctx.clone());
        for (e, c) in [(vec![1, 0], 3), (vec![-1, 2], 5), (vec![0, 0], -7)] {
            p = p
                .add(&LaurentPolynomial::monomial(
                    ctx.clone(),
                    Exponent(e),
                    rat(c),
                ))
                .unwrap();
        }
        let json = serde_json::to_value(&p).unwrap();
        let exps: Vec<Vec<i64>> = json
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                t["exponent"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|v| v.as_i64().unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(exps, vec![vec![-1, 2], vec![0, 0], vec![1, 0]]);
        assert_eq!(json[1]["num"], "-7");
        assert_eq!(json[1]["den"], "1");
    }

    #[test]
    fn eval_rational_rejects_zero_pole() {
        let ctx = VarContext::y_vars(1);
        let p = LaurentPolynomial::monomial(ctx, Exponent(vec![-1]), rat(1));
        assert!(matches!(
            p.eval_rational(&[BigRational::zero()]),
            Err(PolyError::ZeroToNegativePower)
        ));
    }
}
