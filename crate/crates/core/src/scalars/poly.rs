//! Sparse polynomials in the three indeterminates `u`, `A`, `B` with
//! rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of indeterminates.
pub const NVARS: usize = 3;

/// Display names of the indeterminates, in monomial-order priority.
pub const VAR_NAMES: [&str; NVARS] = ["u", "A", "B"];

/// Index of `u`.
pub const U: usize = 0;
/// Index of `A`.
pub const A: usize = 1;
/// Index of `B`.
pub const B: usize = 2;

/// Exponent vector `(e_u, e_A, e_B)`.
///
/// Ordered graded-lexicographically with `u > A > B`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Monomial(e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `u, A, B` over the rationals. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Builds a polynomial from `(coefficient, [e_u, e_A, e_B])` pairs,
    /// merging repeated monomials.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, [u32; NVARS])>,
    {
        let mut p = MultiPoly::zero();
        for (c, e) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// `Some((m, c))` if this is a single term.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.leading().map(|(_, c)| c)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.gcd(m)),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &MultiPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &MultiPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, -c.clone());
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect(),
        }
    }

    /// Divides every term by `m`; caller guarantees `m` divides each monomial.
    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, d)| (m.quotient_of(k), d.clone()))
                .collect(),
        }
    }

    /// Leading coefficient made `+1`; the zero polynomial stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => MultiPoly::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not
    /// divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.leading()?;
        if let Some((m, c)) = divisor.as_monomial() {
            if !self.terms.keys().all(|k| m.divides(k)) {
                return None;
            }
            return Some(self.div_monomial(m).scale(&c.recip()));
        }
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.quotient_of(rm);
            let qc = rc * &lc_inv;
            rem.sub_assign_ref(&divisor.mul_monomial(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational point `(u, A, B)`.
    pub fn eval(&self, point: &[BigRational; NVARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[v].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces one indeterminate by a rational constant.
    pub fn substitute(&self, var: usize, value: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[var];
            e[var] = 0;
            let factor = num_traits::pow(value.clone(), k as usize);
            out.add_term(Monomial(e), c * factor);
        }
        out
    }

    /// Renders with custom variable names; terms in descending monomial order.
    pub fn render_with(&self, names: &[&str; NVARS]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    // Helpers for the recursive gcd: view as univariate in `var`.

    fn to_univariate(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[var] as usize;
            e[var] = 0;
            coeffs[k].add_term(Monomial(e), c.clone());
        }
        coeffs
    }

    fn leading_coeff_in(&self, var: usize) -> MultiPoly {
        let deg = self.degree_in(var);
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.0[var] == deg {
                let mut e = m.0;
                e[var] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }
}

/// Monic greatest common divisor.
///
/// `gcd(a, 0)` is `a` made monic. Returns `None` when both inputs are zero.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    if a.is_zero() && b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(b.monic());
    }
    if b.is_zero() {
        return Some(a.monic());
    }
    // Monomial fast path: gcd is the common monomial content.
    if a.as_monomial().is_some() || b.as_monomial().is_some() {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return Some(MultiPoly::monomial(m, BigRational::one()));
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let g = gcd_rec(&a.div_monomial(&ma), &b.div_monomial(&mb), &[U, A, B]);
    Some(g.mul_monomial(&ma.gcd(&mb), &BigRational::one()).monic())
}

/// Recursive gcd over the indeterminates in `vars`. The main variable is the
/// one of smallest degree, which keeps remainder sequences short.
fn gcd_rec(a: &MultiPoly, b: &MultiPoly, vars: &[usize]) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if vars.is_empty() || a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let (pos, &var) = vars
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| {
            a.degree_in(v).min(b.degree_in(v)) * 64 + a.degree_in(v).max(b.degree_in(v))
        })
        .expect("vars is nonempty");
    let mut rest = [0usize; NVARS];
    let mut k = 0;
    for (idx, &v) in vars.iter().enumerate() {
        if idx != pos {
            rest[k] = v;
            k += 1;
        }
    }
    let rest = &rest[..k];
    let ca = content(a, var, rest);
    let cb = content(b, var, rest);
    let c = gcd_rec(&ca, &cb, rest);
    let mut pa = a.div_exact(&ca).expect("content divides");
    let mut pb = b.div_exact(&cb).expect("content divides");
    if pa.degree_in(var) < pb.degree_in(var) {
        std::mem::swap(&mut pa, &mut pb);
    }
    if coprime_by_image(&pa, &pb, var) {
        return c;
    }
    while !pb.is_zero() {
        if pb.degree_in(var) == 0 {
            pa = MultiPoly::one();
            break;
        }
        let r = pseudo_rem(&pa, &pb, var);
        pa = pb;
        pb = if r.is_zero() {
            r
        } else {
            primitive_part(&r, var, rest)
        };
    }
    let g = if pa.degree_in(var) == 0 {
        MultiPoly::one()
    } else {
        primitive_part(&pa, var, rest)
    };
    &c * &g
}

/// Exact coprimality test in `var`. At a point where both leading
/// coefficients survive, the image gcd has degree at least that of the true
/// gcd, so a constant image gcd proves the true gcd is free of `var`.
fn coprime_by_image(a: &MultiPoly, b: &MultiPoly, var: usize) -> bool {
    let (da, db) = (a.degree_in(var) as usize, b.degree_in(var) as usize);
    for attempt in 0..3i64 {
        let mut pt: [BigRational; NVARS] = Default::default();
        for (v, x) in pt.iter_mut().enumerate() {
            *x = BigRational::from_integer((2 + 3 * attempt + 5 * v as i64).into());
        }
        let ia = image(a, var, &pt);
        let ib = image(b, var, &pt);
        if ia[da].is_zero() || ib[db].is_zero() {
            continue;
        }
        return univariate_gcd_degree(ia, ib) == 0;
    }
    false
}

/// Coefficients of `p` in `var` (by degree) after substituting `pt` for the
/// other indeterminates.
fn image(p: &MultiPoly, var: usize, pt: &[BigRational; NVARS]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in &p.terms {
        let mut t = c.clone();
        for (v, x) in pt.iter().enumerate() {
            if v != var && m.0[v] > 0 {
                t *= num_traits::pow(x.clone(), m.0[v] as usize);
            }
        }
        out[m.0[var] as usize] += t;
    }
    out
}

fn univariate_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let q = a.last().expect("nonempty") / &lb;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[shift + i] -= &q * c;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Gcd of the coefficients of `p` viewed as univariate in `var`; those
/// coefficients only involve `rest`.
fn content(p: &MultiPoly, var: usize, rest: &[usize]) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    let mut coeffs: Vec<MultiPoly> = p
        .to_univariate(var)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    // Small coefficients first: the running gcd shrinks faster.
    coeffs.sort_by_key(|c| (c.total_degree(), c.num_terms()));
    for coeff in coeffs {
        acc = if acc.is_zero() {
            coeff
        } else {
            gcd_rec(&acc, &coeff, rest)
        };
        if acc.is_constant() {
            return MultiPoly::one();
        }
    }
    acc.monic()
}

/// `p` divided by its content, scaled monic so rational coefficients stay
/// small through the remainder sequence.
fn primitive_part(p: &MultiPoly, var: usize, rest: &[usize]) -> MultiPoly {
    let c = content(p, var, rest);
    p.div_exact(&c).expect("content divides").monic()
}

/// A multiple of `a mod b` (by a power of `lc(b)`), in `var`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lb = b.leading_coeff_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.leading_coeff_in(var);
        let mut shift = [0; NVARS];
        shift[var] = dr - db;
        let shifted = (&lr * b).mul_monomial(&Monomial(shift), &BigRational::one());
        let mut next = &lb * &r;
        next.sub_assign_ref(&shifted);
        r = next;
    }
    r
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&VAR_NAMES))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> MultiPoly {
        MultiPoly::var(U)
    }
    fn a() -> MultiPoly {
        MultiPoly::var(A)
    }
    fn b() -> MultiPoly {
        MultiPoly::var(B)
    }
    fn int(c: i64) -> MultiPoly {
        MultiPoly::from_int(c)
    }

    #[test]
    fn additive_inverse() {
        assert!((&u() - &u()).is_zero());
        assert!((&u() + &(-&u())).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&u() - &int(1)) * &(&u() + &int(1));
        assert_eq!(p, &(&u() * &u()) - &int(1));
    }

    #[test]
    fn l_numerator_identity() {
        let n = &a() + &(&(&int(1) - &u()) * &b());
        assert_eq!(&n * &int(1), &(&a() + &b()) - &(&u() * &b()));
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        assert!(Monomial([0, 0, 2]) > Monomial([1, 0, 0]));
        assert!(Monomial([1, 0, 0]) > Monomial([0, 1, 0]));
        assert!(Monomial([0, 1, 0]) > Monomial([0, 0, 1]));
        assert!(Monomial([1, 1, 0]) > Monomial([0, 2, 0]));
    }

    #[test]
    fn gcd_examples() {
        let u2m1 = &(&u() * &u()) - &int(1);
        let um1 = &u() - &int(1);
        assert_eq!(poly_gcd(&u2m1, &um1).unwrap(), um1);
        assert!(poly_gcd(&a(), &b()).unwrap().is_one());
        let l = &(&a() + &b()) - &(&u() * &b());
        let sq = &l * &l;
        let g = poly_gcd(&sq, &l).unwrap();
        assert_eq!(g, l.monic());
        // Division oracle: g divides both with zero remainder.
        assert!(sq.div_exact(&g).is_some());
        assert!(l.div_exact(&g).is_some());
    }

    #[test]
    fn gcd_rejects_double_zero() {
        assert!(poly_gcd(&MultiPoly::zero(), &MultiPoly::zero()).is_none());
        assert_eq!(poly_gcd(&int(-3), &MultiPoly::zero()).unwrap(), int(1));
        let p = &(&int(2) * &u()) + &a();
        assert_eq!(poly_gcd(&p, &MultiPoly::zero()).unwrap(), p.monic());
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let f = &(&u() * &a()) + &b();
        let g = &(&a() * &a()) - &(&u() * &b());
        let h = &(&b() * &b()) + &(&int(3) * &u());
        let lhs = &f * &g;
        let rhs = &f * &h;
        assert_eq!(poly_gcd(&lhs, &rhs).unwrap(), f.monic());
    }

    #[test]
    fn render_examples() {
        let p = &(&(&int(2) * &(&u() * &u())) - &a()) + &int(1);
        assert_eq!(p.to_string(), "2*u^2 - A + 1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((-&b()).to_string(), "-B");
    }

    #[test]
    fn eval_and_substitute() {
        let p = &a() * &b();
        let pt = [3, 2, 5].map(|x| BigRational::from_integer(BigInt::from(x)));
        assert_eq!(p.eval(&pt), BigRational::from_integer(BigInt::from(10)));
        let q = p.substitute(B, &BigRational::one());
        assert_eq!(q, a());
    }
}
