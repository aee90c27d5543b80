//! The quadratic extension `K(σ)` with `σ² = radicand`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::poly::{NVARS, VAR_NAMES};
use super::ratfunc::{l_const, RatFunc};
use super::ScalarError;

/// `p + q·σ` where `σ² = radicand`.
///
/// The radicand is normally `L`; the Homflypt specialization carries
/// `λ = L|_{B=1}` instead. Values with different radicands never mix.
/// Equality is componentwise, which is sound because neither radicand is a
/// square in the base field.
#[derive(Clone, PartialEq, Eq)]
pub struct SqrtExt {
    p: RatFunc,
    q: RatFunc,
    radicand: Arc<RatFunc>,
}

impl SqrtExt {
    pub fn new(p: RatFunc, q: RatFunc, radicand: Arc<RatFunc>) -> Self {
        SqrtExt { p, q, radicand }
    }

    /// `p + q·√L`.
    pub fn with_l(p: RatFunc, q: RatFunc) -> Self {
        Self::new(p, q, Arc::new(l_const()))
    }

    pub fn from_base(p: RatFunc, radicand: Arc<RatFunc>) -> Self {
        Self::new(p, RatFunc::zero(), radicand)
    }

    pub fn one_over(radicand: Arc<RatFunc>) -> Self {
        Self::from_base(RatFunc::one(), radicand)
    }

    /// `σ` itself.
    pub fn sqrt(radicand: Arc<RatFunc>) -> Self {
        Self::new(RatFunc::zero(), RatFunc::one(), radicand)
    }

    pub fn p(&self) -> &RatFunc {
        &self.p
    }

    pub fn q(&self) -> &RatFunc {
        &self.q
    }

    pub fn radicand(&self) -> &Arc<RatFunc> {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    fn same_radicand(&self, other: &SqrtExt) {
        assert!(
            Arc::ptr_eq(&self.radicand, &other.radicand) || self.radicand == other.radicand,
            "mixing values over different radicands"
        );
    }

    pub fn scale(&self, c: &RatFunc) -> SqrtExt {
        SqrtExt::new(&self.p * c, &self.q * c, self.radicand.clone())
    }

    /// `(p + qσ)^{-1} = (p - qσ) / (p² - q² r)`.
    pub fn inv(&self) -> Result<SqrtExt, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NonInvertible);
        }
        let norm = &(&self.p * &self.p) - &(&(&self.q * &self.q) * &self.radicand);
        let ninv = norm.inv().map_err(|_| ScalarError::NonInvertible)?;
        Ok(SqrtExt::new(
            &self.p * &ninv,
            -&(&self.q * &ninv),
            self.radicand.clone(),
        ))
    }

    pub fn pow(&self, k: i32) -> Result<SqrtExt, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = SqrtExt::one_over(self.radicand.clone());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `σ^k` via the parity split: `(r^{k/2}, 0)` or `(0, r^{(k-1)/2})`.
    pub fn sqrt_pow(k: i32, radicand: Arc<RatFunc>) -> SqrtExt {
        let half = k.div_euclid(2);
        let rp = radicand.pow(half).expect("radicand is nonzero");
        if k.rem_euclid(2) == 0 {
            SqrtExt::new(rp, RatFunc::zero(), radicand)
        } else {
            SqrtExt::new(RatFunc::zero(), rp, radicand)
        }
    }

    /// Componentwise evaluation at a rational point: `(p(x), q(x))`.
    pub fn eval(
        &self,
        point: &[BigRational; NVARS],
    ) -> Result<(BigRational, BigRational), ScalarError> {
        Ok((self.p.eval(point)?, self.q.eval(point)?))
    }

    /// Applies a map to both components and to the radicand.
    pub fn map_components<F>(&self, f: F) -> Result<SqrtExt, ScalarError>
    where
        F: Fn(&RatFunc) -> Result<RatFunc, ScalarError>,
    {
        Ok(SqrtExt::new(
            f(&self.p)?,
            f(&self.q)?,
            Arc::new(f(&self.radicand)?),
        ))
    }

    /// Canonical rendering `P + (Q)*sqrt(<label>)`; zero parts are dropped.
    pub fn render_with(&self, names: &[&str; NVARS], label: &str) -> String {
        let p = self.p.render_with(names);
        let q = self.q.render_with(names);
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => p,
            (true, false) => format!("({q})*sqrt({label})"),
            (false, false) => format!("{p} + ({q})*sqrt({label})"),
        }
    }
}

/// `D̄ = -(1 - L u) / (√L (1 - u) B)` written in the `{1, σ}` basis as
/// `(0, -(1 - L u) / (L (1 - u) B))`.
pub fn d_const() -> SqrtExt {
    let l = l_const();
    let u = RatFunc::u();
    let one = RatFunc::one();
    let num = -&(&one - &(&l * &u));
    let den = &(&l * &(&one - &u)) * &RatFunc::b();
    SqrtExt::with_l(RatFunc::zero(), &num / &den)
}

impl Add for &SqrtExt {
    type Output = SqrtExt;
    fn add(self, rhs: &SqrtExt) -> SqrtExt {
        self.same_radicand(rhs);
        SqrtExt::new(&self.p + &rhs.p, &self.q + &rhs.q, self.radicand.clone())
    }
}

impl Sub for &SqrtExt {
    type Output = SqrtExt;
    fn sub(self, rhs: &SqrtExt) -> SqrtExt {
        self.same_radicand(rhs);
        SqrtExt::new(&self.p - &rhs.p, &self.q - &rhs.q, self.radicand.clone())
    }
}

impl Neg for &SqrtExt {
    type Output = SqrtExt;
    fn neg(self) -> SqrtExt {
        SqrtExt::new(-&self.p, -&self.q, self.radicand.clone())
    }
}

impl Mul for &SqrtExt {
    type Output = SqrtExt;
    fn mul(self, rhs: &SqrtExt) -> SqrtExt {
        self.same_radicand(rhs);
        let p = &(&self.p * &rhs.p) + &(&(&self.q * &rhs.q) * &self.radicand);
        let q = &(&self.p * &rhs.q) + &(&self.q * &rhs.p);
        SqrtExt::new(p, q, self.radicand.clone())
    }
}

impl Mul for SqrtExt {
    type Output = SqrtExt;
    fn mul(self, rhs: SqrtExt) -> SqrtExt {
        &self * &rhs
    }
}

impl fmt::Display for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&VAR_NAMES, "L"))
    }
}

impl fmt::Debug for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqrtExt({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_arc() -> Arc<RatFunc> {
        Arc::new(l_const())
    }

    #[test]
    fn sqrt_powers() {
        let r = l_arc();
        let l = l_const();
        assert_eq!(
            SqrtExt::sqrt_pow(2, r.clone()),
            SqrtExt::with_l(l.clone(), RatFunc::zero())
        );
        assert!(SqrtExt::sqrt_pow(0, r.clone()).is_one());
        let m3 = SqrtExt::sqrt_pow(-3, r.clone());
        let l2inv = (&l * &l).inv().unwrap();
        assert_eq!(m3, SqrtExt::with_l(RatFunc::zero(), l2inv));
        assert!((&m3 * &SqrtExt::sqrt_pow(3, r.clone())).is_one());
        assert_eq!(SqrtExt::sqrt(r.clone()).pow(-3).unwrap(), m3);
    }

    #[test]
    fn normalization_identity() {
        let r = l_arc();
        let d = d_const();
        assert!(d.p().is_zero());
        let lhs = (&SqrtExt::sqrt(r.clone()) * &d).scale(&RatFunc::a());
        assert!(lhs.is_one());
        // D̄·σ = 1/A
        let ds = &d * &SqrtExt::sqrt(r);
        assert_eq!(
            ds,
            SqrtExt::with_l(RatFunc::a().inv().unwrap(), RatFunc::zero())
        );
    }

    #[test]
    fn zero_is_not_invertible() {
        let z = SqrtExt::with_l(RatFunc::zero(), RatFunc::zero());
        assert_eq!(z.inv(), Err(ScalarError::NonInvertible));
    }

    #[test]
    fn rendering() {
        let r = l_arc();
        assert_eq!(SqrtExt::one_over(r.clone()).to_string(), "1");
        assert_eq!(SqrtExt::sqrt(r.clone()).to_string(), "(1)*sqrt(L)");
        let v = SqrtExt::new(RatFunc::u(), RatFunc::a(), r);
        assert_eq!(v.to_string(), "u + (A)*sqrt(L)");
    }
}
