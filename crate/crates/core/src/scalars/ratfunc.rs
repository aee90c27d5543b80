//! Canonical fractions of [`MultiPoly`]s: the scalar field `Q(u, A, B)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{poly_gcd, MultiPoly, NVARS, VAR_NAMES};
use super::ScalarError;

/// A rational function `num / den` in lowest terms.
///
/// Invariants: `den != 0`, `gcd(num, den) = 1`, and the leading coefficient
/// of `den` (graded lex, `u > A > B`) is `+1`. Zero is `0 / 1`. Under these
/// invariants derived equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    /// Builds and canonicalizes `num / den`.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else if den.as_monomial().is_some() || num.as_monomial().is_some() {
            let m = num.monomial_content().gcd(&den.monomial_content());
            if m.is_one() {
                (num, den)
            } else {
                (num.div_monomial(&m), den.div_monomial(&m))
            }
        } else {
            let g = poly_gcd(&num, &den).expect("den is nonzero");
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::normalized(num, den)
    }

    /// Scales a coprime pair so the denominator has leading coefficient 1.
    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.leading_coeff().expect("den is nonzero").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(MultiPoly::var(i))
    }

    pub fn u() -> Self {
        Self::var(super::poly::U)
    }

    pub fn a() -> Self {
        Self::var(super::poly::A)
    }

    pub fn b() -> Self {
        Self::var(super::poly::B)
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i32) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[BigRational; NVARS]) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Replaces one indeterminate by a rational constant.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Result<Self, ScalarError> {
        Self::new(
            self.num.substitute(var, value),
            self.den.substitute(var, value),
        )
        .map_err(|_| ScalarError::VanishingDenominator)
    }

    pub fn render_with(&self, names: &[&str; NVARS]) -> String {
        if self.den.is_one() {
            self.num.render_with(names)
        } else {
            format!(
                "({})/({})",
                self.num.render_with(names),
                self.den.render_with(names)
            )
        }
    }
}

/// `L = (A + (1 - u) B) / (u A)`, the normalization element.
pub fn l_const() -> RatFunc {
    let u = RatFunc::u();
    let a = RatFunc::a();
    let b = RatFunc::b();
    let num = &a + &(&(&RatFunc::one() - &u) * &b);
    num.checked_div(&(&u * &a)).expect("uA is nonzero")
}

/// Convenience: an integer as a [`BigRational`].
pub fn q(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Sums and products reduce against the factors already known to be
/// coprime, so gcds only ever involve operand-sized polynomials.
impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::normalized(num, &self.den * &rhs.den);
        }
        let d1 = exact(&self.den, &g);
        let d2 = exact(&rhs.den, &g);
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = gcd(&num, &g);
        RatFunc::normalized(exact(&num, &h), &(&d1 * &d2) * &exact(&g, &h))
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        RatFunc::normalized(
            &exact(&self.num, &g1) * &exact(&rhs.num, &g2),
            &exact(&self.den, &g2) * &exact(&rhs.den, &g1),
        )
    }
}

fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    poly_gcd(a, b).expect("operands are nonzero")
}

fn exact(a: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if g.is_one() {
        a.clone()
    } else {
        a.div_exact(g).expect("gcd divides")
    }
}

/// Panics on division by the zero function; use [`RatFunc::checked_div`]
/// for a fallible version.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&VAR_NAMES))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
