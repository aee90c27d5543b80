//! The link invariant `Δ̄`, the singular-link invariant `Γ̄`, and the
//! Homflypt polynomial, both as a specialization of `Δ̄` and from an
//! independent Hecke-algebra computation.
//!
//! `Δ̄(α) = D̄^{n-1} (√L)^{e(α)} ρ_n(π̄(α))` with `π̄ : σ_i ↦ T_i`.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{AlgebraError, BtElement};
use crate::hecke::{HeckeElement, HECKE_GUARD};
use crate::partitions::SetPartition;
use crate::permutations::Perm;
use crate::report::Report;
use crate::scalars::{d_const, l_const, q, RatFunc, ScalarError, SqrtExt, A, B};
use crate::trace::{markov_trace, TraceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("generator {letter} is outside 1..{n} for {n} strands")]
    LetterOutOfRange { letter: i32, n: usize },
    #[error("{0} strands exceeds the Homflypt oracle limit of {HECKE_GUARD}")]
    OracleGuard(usize),
    #[error("value is not over the radicand L")]
    WrongRadicand,
    #[error("cannot combine words on {0} and {1} strands")]
    StrandMismatch(usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A classical braid word: `+i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self, InvariantError> {
        if n == 0 {
            return Err(InvariantError::NoStrands);
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if i == 0 || i >= n {
                return Err(InvariantError::LetterOutOfRange { letter: l, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Result<Self, InvariantError> {
        Self::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `e(α)`, the sum of the signs.
    pub fn exponent(&self) -> i32 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, InvariantError> {
        if self.n != other.n {
            return Err(InvariantError::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// The same word on `m >= n` strands.
    pub fn embed(&self, m: usize) -> Result<BraidWord, InvariantError> {
        if m < self.n {
            return Err(InvariantError::StrandMismatch(self.n, m));
        }
        Ok(BraidWord {
            n: m,
            letters: self.letters.clone(),
        })
    }

    /// The underlying permutation of the strands.
    pub fn permutation(&self) -> Perm {
        self.letters.iter().fold(Perm::identity(self.n), |p, l| {
            p.mul_s(l.unsigned_abs() as usize)
        })
    }
}

/// Token form, e.g. `1 -2 1`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// A letter of a singular braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SbLetter {
    /// `σ_i` for `+i`, `σ_i^{-1}` for `-i`.
    Sigma(i32),
    /// The singular crossing `τ_i`.
    Tau(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularBraidWord {
    n: usize,
    letters: Vec<SbLetter>,
}

impl SingularBraidWord {
    pub fn new(n: usize, letters: Vec<SbLetter>) -> Result<Self, InvariantError> {
        if n == 0 {
            return Err(InvariantError::NoStrands);
        }
        for &l in &letters {
            let (i, shown) = match l {
                SbLetter::Sigma(s) => (s.unsigned_abs() as usize, s),
                SbLetter::Tau(t) => (t, t as i32),
            };
            if i == 0 || i >= n {
                return Err(InvariantError::LetterOutOfRange { letter: shown, n });
            }
        }
        Ok(SingularBraidWord { n, letters })
    }

    pub fn from_classical(w: &BraidWord) -> Self {
        SingularBraidWord {
            n: w.n,
            letters: w.letters.iter().map(|&l| SbLetter::Sigma(l)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[SbLetter] {
        &self.letters
    }

    pub fn tau_count(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| matches!(l, SbLetter::Tau(_)))
            .count()
    }

    /// `ε(ω)`; each `τ_i` counts `+1`.
    pub fn exponent(&self) -> i32 {
        self.letters
            .iter()
            .map(|l| match l {
                SbLetter::Sigma(s) => s.signum(),
                SbLetter::Tau(_) => 1,
            })
            .sum()
    }

    pub fn concat(&self, other: &SingularBraidWord) -> Result<Self, InvariantError> {
        if self.n != other.n {
            return Err(InvariantError::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(SingularBraidWord { n: self.n, letters })
    }

    pub fn embed(&self, m: usize) -> Result<Self, InvariantError> {
        if m < self.n {
            return Err(InvariantError::StrandMismatch(self.n, m));
        }
        Ok(SingularBraidWord {
            n: m,
            letters: self.letters.clone(),
        })
    }
}

impl fmt::Display for SingularBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                SbLetter::Sigma(s) => s.to_string(),
                SbLetter::Tau(t) => format!("t{t}"),
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// `π̄(α)`, the image of `σ_i ↦ T_i`.
pub fn pi_bar(word: &BraidWord) -> Result<BtElement, InvariantError> {
    let mut x = BtElement::unit(word.n)?;
    for &l in &word.letters {
        let i = l.unsigned_abs() as usize;
        x = if l > 0 { x.mul_t(i) } else { x.mul_t_inv(i) };
    }
    Ok(x)
}

/// `δ̄(ω)`, the image of `σ_i ↦ T_i`, `τ_i ↦ E_i (1 + T_i)`.
pub fn sb_rep(word: &SingularBraidWord) -> Result<BtElement, InvariantError> {
    let mut x = BtElement::unit(word.n)?;
    for &l in &word.letters {
        x = match l {
            SbLetter::Sigma(s) if s > 0 => x.mul_t(s as usize),
            SbLetter::Sigma(s) => x.mul_t_inv(s.unsigned_abs() as usize),
            SbLetter::Tau(t) => {
                let tie = SetPartition::singletons(word.n)
                    .join_adjacent(t)
                    .expect("validated index");
                let xe = x.mul_e(&tie);
                let mut y = xe.mul_t(t);
                y.add_scaled(&xe, &RatFunc::one());
                y
            }
        };
    }
    Ok(x)
}

fn normalize(n: usize, exponent: i32, rho: RatFunc) -> Result<SqrtExt, InvariantError> {
    let l = Arc::new(l_const());
    let scale = d_const().pow(n as i32 - 1)? * SqrtExt::sqrt_pow(exponent, l);
    Ok(scale.scale(&rho))
}

/// `Δ̄(α)`.
pub fn delta_bar(word: &BraidWord) -> Result<SqrtExt, InvariantError> {
    let rho = markov_trace(&pi_bar(word)?)?;
    normalize(word.n, word.exponent(), rho)
}

/// `Δ̄(α)` computed through the rescaled representation `σ_i ↦ √L T_i`.
/// The element is carried as `P + √L Q` with `P, Q` over `K(A, B)`.
pub fn delta_bar_sqrtl_rep(word: &BraidWord) -> Result<SqrtExt, InvariantError> {
    let n = word.n;
    let l = l_const();
    let l_inv = l.inv()?;
    let mut p = BtElement::unit(n)?;
    let mut qq = BtElement::zero(n)?;
    for &x in &word.letters {
        let i = x.unsigned_abs() as usize;
        if x > 0 {
            // (P + √L Q) √L T_i = L Q T_i + √L P T_i
            let np = qq.mul_t(i).scale(&l);
            qq = p.mul_t(i);
            p = np;
        } else {
            // (P + √L Q) T_i^{-1} / √L = Q T_i^{-1} + √L P T_i^{-1} / L
            let np = qq.mul_t_inv(i);
            qq = p.mul_t_inv(i).scale(&l_inv);
            p = np;
        }
    }
    let rho = SqrtExt::with_l(markov_trace(&p)?, markov_trace(&qq)?);
    Ok(d_const().pow(n as i32 - 1)? * rho)
}

/// `Γ̄(ω)`.
pub fn gamma_bar(word: &SingularBraidWord) -> Result<SqrtExt, InvariantError> {
    let rho = markov_trace(&sb_rep(word)?)?;
    normalize(word.n, word.exponent(), rho)
}

/// `λ = L|_{B=1} = (z + 1 - u) / (u z)`, with `z` in the `A` slot.
pub fn lambda_const() -> RatFunc {
    l_const()
        .substitute(B, &q(1))
        .expect("L has no pole at B = 1")
}

/// Variable names for values over `(u, z)`.
pub const HOMFLYPT_NAMES: [&str; 3] = ["u", "z", "B"];

/// Substitutes `B = 1` in both components; the radicand becomes `λ`.
pub fn homflypt_specialize(v: &SqrtExt) -> Result<SqrtExt, InvariantError> {
    if **v.radicand() != l_const() {
        return Err(InvariantError::WrongRadicand);
    }
    let one = q(1);
    Ok(SqrtExt::new(
        v.p().substitute(B, &one)?,
        v.q().substitute(B, &one)?,
        Arc::new(lambda_const()),
    ))
}

/// Substitutes `B = 1/m`; the radicand becomes `L|_{B=1/m}`.
pub fn specialize_b_reciprocal(v: &SqrtExt, m: i64) -> Result<SqrtExt, InvariantError> {
    if m == 0 {
        return Err(ScalarError::DivisionByZero.into());
    }
    let b = BigRational::new(1.into(), m.into());
    Ok(v.map_components(|f| f.substitute(B, &b))?)
}

/// The Homflypt polynomial `X` from the Hecke algebra and the Ocneanu
/// trace: `X(α) = (-(1 - λu)/(√λ (1 - u)))^{n-1} (√λ)^{e(α)} τ(π(α))`.
pub fn homflypt_oracle(word: &BraidWord) -> Result<SqrtExt, InvariantError> {
    let n = word.n;
    if n > HECKE_GUARD {
        return Err(InvariantError::OracleGuard(n));
    }
    let z = RatFunc::var(A);
    let u = RatFunc::u();
    let one = RatFunc::one();
    let lambda = (&(&z + &one) - &u).checked_div(&(&u * &z))?;
    let tr = HeckeElement::from_word(n, &word.letters).ocneanu(&z);
    let rad = Arc::new(lambda.clone());
    // 1/√λ = √λ/λ
    let d = SqrtExt::new(
        RatFunc::zero(),
        (-&(&one - &(&lambda * &u))).checked_div(&(&lambda * &(&one - &u)))?,
        rad.clone(),
    );
    Ok((d.pow(n as i32 - 1)? * SqrtExt::sqrt_pow(word.exponent(), rad)).scale(&tr))
}

fn sig(i: i32) -> SbLetter {
    SbLetter::Sigma(i)
}

/// The defining relations of the singular braid monoid, checked on their
/// images under `δ̄` for all valid indices at level `n`.
pub fn sb_relation_suite(n: usize) -> Result<Report, InvariantError> {
    let mut r = Report::new(format!("singular braid relations at n = {n}"));
    let img = |letters: Vec<SbLetter>| -> Result<BtElement, InvariantError> {
        sb_rep(&SingularBraidWord::new(n, letters)?)
    };
    for i in 1..n {
        let ii = i as i32;
        for j in 1..n {
            let jj = j as i32;
            let d = i.abs_diff(j);
            if d > 1 {
                r.check("tau_far_commute").record(
                    img(vec![SbLetter::Tau(i), SbLetter::Tau(j)])?
                        == img(vec![SbLetter::Tau(j), SbLetter::Tau(i)])?,
                    || format!("i={i} j={j}"),
                );
                r.check("sigma_tau_far_commute").record(
                    img(vec![sig(ii), SbLetter::Tau(j)])? == img(vec![SbLetter::Tau(j), sig(ii)])?,
                    || format!("i={i} j={j}"),
                );
                r.check("sigma_far_commute").record(
                    img(vec![sig(ii), sig(jj)])? == img(vec![sig(jj), sig(ii)])?,
                    || format!("i={i} j={j}"),
                );
            }
            if d == 1 {
                r.check("sigma_sigma_tau").record(
                    img(vec![sig(ii), sig(jj), SbLetter::Tau(i)])?
                        == img(vec![SbLetter::Tau(j), sig(ii), sig(jj)])?,
                    || format!("i={i} j={j}"),
                );
                r.check("sigma_braid").record(
                    img(vec![sig(ii), sig(jj), sig(ii)])? == img(vec![sig(jj), sig(ii), sig(jj)])?,
                    || format!("i={i} j={j}"),
                );
            }
        }
        r.check("sigma_tau_commute").record(
            img(vec![sig(ii), SbLetter::Tau(i)])? == img(vec![SbLetter::Tau(i), sig(ii)])?
                && img(vec![sig(-ii), SbLetter::Tau(i)])? == img(vec![SbLetter::Tau(i), sig(-ii)])?,
            || format!("i={i}"),
        );
        r.check("sigma_inverse")
            .record(img(vec![sig(ii), sig(-ii)])? == BtElement::unit(n)?, || {
                format!("i={i}")
            });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn hopf_rho() -> RatFunc {
        let u = RatFunc::u();
        &RatFunc::one() + &(&(&RatFunc::a() + &RatFunc::b()) * &(&u - &RatFunc::one()))
    }

    #[test]
    fn unknot_is_one() {
        assert!(delta_bar(&bw(2, &[1])).unwrap().is_one());
        assert!(delta_bar(&bw(2, &[-1])).unwrap().is_one());
        assert!(delta_bar(&bw(1, &[])).unwrap().is_one());
        assert_eq!(delta_bar(&bw(2, &[1, -1])).unwrap(), d_const());
    }

    #[test]
    fn hopf_value() {
        let v = delta_bar(&bw(2, &[1, 1])).unwrap();
        assert!(v.p().is_zero());
        assert_eq!(*v.q(), &hopf_rho() / &RatFunc::a());
    }

    #[test]
    fn inverse_cube_value() {
        let (u, a, b) = (RatFunc::u(), RatFunc::a(), RatFunc::b());
        let u2 = &u * &u;
        let u3 = &u2 * &u;
        let inner = &(&(&(&(&(&(&(&-&(&u3 * &b) + &(&u2 * &b)) - &(&u * &b)) + &b)
            + &(&u2 * &a))
            - &(&u * &a))
            + &a)
            * &a);
        let base = &(&a + &b) - &(&u * &b);
        let want = inner / &(&u * &(&base * &base));
        let v = delta_bar(&bw(2, &[-1, -1, -1])).unwrap();
        assert!(v.q().is_zero());
        assert_eq!(*v.p(), want);
    }

    #[test]
    fn two_paths_agree() {
        for w in [
            &[1, 1][..],
            &[-1, -1, -1],
            &[1, -2, 1, 2, 2],
            &[],
            &[-2, -1, 2, 1, -1],
        ] {
            let w = bw(3, w);
            assert_eq!(delta_bar(&w).unwrap(), delta_bar_sqrtl_rep(&w).unwrap());
        }
    }

    #[test]
    fn singular_values() {
        let tau = SingularBraidWord::new(2, vec![SbLetter::Tau(1)]).unwrap();
        let v = gamma_bar(&tau).unwrap();
        assert!(v.q().is_zero());
        assert_eq!(*v.p(), &(&RatFunc::a() + &RatFunc::b()) / &RatFunc::a());

        let ts = SingularBraidWord::new(2, vec![SbLetter::Tau(1), SbLetter::Sigma(1)]).unwrap();
        let v = gamma_bar(&ts).unwrap();
        assert!(v.p().is_zero());
        let want = &(&RatFunc::u() * &(&RatFunc::a() + &RatFunc::b())) / &RatFunc::a();
        assert_eq!(*v.q(), want);
    }

    #[test]
    fn tau_image() {
        let tau = SingularBraidWord::new(2, vec![SbLetter::Tau(1)]).unwrap();
        let want = BtElement::gen_e(1, 2)
            .unwrap()
            .add(&BtElement::gen_e(1, 2).unwrap().mul_t(1))
            .unwrap();
        assert_eq!(sb_rep(&tau).unwrap(), want);
    }

    #[test]
    fn gamma_matches_delta_classically() {
        let w = bw(3, &[1, 2, -1, 2]);
        assert_eq!(
            gamma_bar(&SingularBraidWord::from_classical(&w)).unwrap(),
            delta_bar(&w).unwrap()
        );
    }

    #[test]
    fn lambda_value() {
        let (u, z) = (RatFunc::u(), RatFunc::a());
        let want = &(&(&z + &RatFunc::one()) - &u) / &(&u * &z);
        assert_eq!(lambda_const(), want);
    }

    #[test]
    fn homflypt_hopf() {
        let v = homflypt_specialize(&delta_bar(&bw(2, &[1, 1])).unwrap()).unwrap();
        let (u, z) = (RatFunc::u(), RatFunc::a());
        let want = &(&RatFunc::one() + &(&(&z + &RatFunc::one()) * &(&u - &RatFunc::one()))) / &z;
        assert!(v.p().is_zero());
        assert_eq!(*v.q(), want);
        assert_eq!(v, homflypt_oracle(&bw(2, &[1, 1])).unwrap());
    }

    #[test]
    fn oracle_agrees_on_small_words() {
        for (n, w) in [
            (2, &[1][..]),
            (2, &[-1, -1, -1]),
            (2, &[1, 1, 1]),
            (3, &[1, -2, 1, -2]),
            (3, &[1, 1, 2, -1, 2]),
            (4, &[1, 2, 3, -1, 2]),
        ] {
            let w = bw(n, w);
            assert_eq!(
                homflypt_specialize(&delta_bar(&w).unwrap()).unwrap(),
                homflypt_oracle(&w).unwrap(),
                "{w}"
            );
        }
    }

    #[test]
    fn oracle_guard() {
        assert_eq!(
            homflypt_oracle(&bw(8, &[])),
            Err(InvariantError::OracleGuard(8))
        );
    }

    #[test]
    fn sb_relations_hold() {
        for n in 2..=4 {
            let r = sb_relation_suite(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn letters_validated() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert!(SingularBraidWord::new(3, vec![SbLetter::Tau(3)]).is_err());
        assert_eq!(bw(3, &[1, -2, 2, 2]).exponent(), 2);
    }

    #[test]
    fn reciprocal_hook_is_defined() {
        let v = delta_bar(&bw(2, &[1, 1, 1])).unwrap();
        for m in 1..=4 {
            specialize_b_reciprocal(&v, m).unwrap();
        }
    }
}
