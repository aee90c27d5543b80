//! Elements of the algebra of braids and ties `E_n(u)` in the basis
//! `{T_w E_I : w ∈ S_n, I ∈ P(n)}`.
//!
//! Normal form keeps the ties on the right. Multiplication pushes partitions
//! rightward with `E_K T_i = T_i E_{s_i(K)}`, splits non-reduced products
//! with the quadratic relation
//! `T_x T_i = T_{x s_i} + (u-1) T_{x s_i} E_i + (u-1) T_x E_i` (when
//! `ℓ(x s_i) < ℓ(x)`), and merges ties with `E_I E_J = E_{I ∗ J}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::par;
use crate::partitions::SetPartition;
use crate::permutations::Perm;
use crate::scalars::RatFunc;
use crate::{DEFAULT_LEVEL_GUARD, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements live at different levels ({0} vs {1})")]
    LevelMismatch(usize, usize),
    #[error("generator index {0} outside 1..{1}")]
    IndexOutOfRange(usize, usize),
    #[error("level {0} exceeds the guard {1}; raise it with set_level_guard")]
    LevelGuard(usize, usize),
    #[error("cannot embed level {0} into level {1}")]
    EmbedDown(usize, usize),
    #[error("pair ({0}, {1}) is not i < j <= {2}")]
    BadPair(usize, usize, usize),
}

static LEVEL_GUARD: AtomicUsize = AtomicUsize::new(DEFAULT_LEVEL_GUARD);

/// Raises (or lowers) the largest `n` constructors accept. Clamped to
/// [`MAX_N`].
pub fn set_level_guard(n: usize) {
    LEVEL_GUARD.store(n.min(MAX_N), Ordering::Relaxed);
}

pub fn level_guard() -> usize {
    LEVEL_GUARD.load(Ordering::Relaxed)
}

fn check_level(n: usize) -> Result<(), AlgebraError> {
    let g = level_guard();
    if n == 0 || n > g {
        return Err(AlgebraError::LevelGuard(n, g));
    }
    Ok(())
}

/// A basis label `(w, I)` standing for `T_w E_I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Basis {
    pub perm: Perm,
    pub part: SetPartition,
}

impl Basis {
    pub fn new(perm: Perm, part: SetPartition) -> Self {
        debug_assert_eq!(perm.n(), part.n());
        Basis { perm, part }
    }

    pub fn unit(n: usize) -> Self {
        Basis::new(Perm::identity(n), SetPartition::singletons(n))
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }
}

/// Every basis label at level `n`, partitions outermost.
pub fn basis_labels(n: usize) -> Vec<Basis> {
    let perms = crate::permutations::all_perms(n);
    let parts = SetPartition::enumerate(n).expect("n within enumeration range");
    let mut out = Vec::with_capacity(perms.len() * parts.len());
    for part in &parts {
        for perm in &perms {
            out.push(Basis::new(*perm, *part));
        }
    }
    out
}

/// A finite linear combination `Σ c_{w,I} T_w E_I` with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct BtElement {
    n: usize,
    terms: BTreeMap<Basis, RatFunc>,
}

impl BtElement {
    pub fn zero(n: usize) -> Result<Self, AlgebraError> {
        check_level(n)?;
        Ok(BtElement {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn unit(n: usize) -> Result<Self, AlgebraError> {
        Self::scalar(RatFunc::one(), n)
    }

    pub fn scalar(c: RatFunc, n: usize) -> Result<Self, AlgebraError> {
        let mut e = Self::zero(n)?;
        e.add_term(Basis::unit(n), c);
        Ok(e)
    }

    /// The single basis term `c · T_w E_I`.
    pub fn term(basis: Basis, c: RatFunc) -> Result<Self, AlgebraError> {
        let mut e = Self::zero(basis.n())?;
        e.add_term(basis, c);
        Ok(e)
    }

    pub fn basis(perm: Perm, part: SetPartition) -> Result<Self, AlgebraError> {
        if perm.n() != part.n() {
            return Err(AlgebraError::LevelMismatch(perm.n(), part.n()));
        }
        Self::term(Basis::new(perm, part), RatFunc::one())
    }

    fn check_index(i: usize, n: usize) -> Result<(), AlgebraError> {
        if i == 0 || i >= n {
            return Err(AlgebraError::IndexOutOfRange(i, n));
        }
        Ok(())
    }

    /// `T_i`.
    pub fn gen_t(i: usize, n: usize) -> Result<Self, AlgebraError> {
        check_level(n)?;
        Self::check_index(i, n)?;
        Self::basis(Perm::s(i, n), SetPartition::singletons(n))
    }

    /// `E_i`.
    pub fn gen_e(i: usize, n: usize) -> Result<Self, AlgebraError> {
        check_level(n)?;
        Self::check_index(i, n)?;
        let part = SetPartition::singletons(n)
            .join_adjacent(i)
            .expect("valid index");
        Self::basis(Perm::identity(n), part)
    }

    /// `T_i^{-1} = T_i + (u^{-1} - 1) E_i + (u^{-1} - 1) E_i T_i`.
    pub fn gen_t_inv(i: usize, n: usize) -> Result<Self, AlgebraError> {
        check_level(n)?;
        Self::check_index(i, n)?;
        let c = u_inv_minus_one();
        let tie = SetPartition::singletons(n)
            .join_adjacent(i)
            .expect("valid index");
        let s = Perm::s(i, n);
        let mut e = Self::zero(n)?;
        e.add_term(Basis::new(s, SetPartition::singletons(n)), RatFunc::one());
        e.add_term(Basis::new(Perm::identity(n), tie), c.clone());
        // E_i T_i = T_i E_i
        e.add_term(Basis::new(s, tie), c);
        Ok(e)
    }

    /// `E_I`, the basis term `(1, I)`.
    pub fn e_partition(part: &SetPartition) -> Result<Self, AlgebraError> {
        check_level(part.n())?;
        Self::basis(Perm::identity(part.n()), *part)
    }

    /// `E_{i,j}` for `i < j`, the basis term `(1, ({i,j}))`.
    pub fn e_pair(i: usize, j: usize, n: usize) -> Result<Self, AlgebraError> {
        if i == 0 || i >= j || j > n {
            return Err(AlgebraError::BadPair(i, j, n));
        }
        let part = SetPartition::singletons(n)
            .join_pair(i, j)
            .expect("valid pair");
        Self::e_partition(&part)
    }

    /// `T_w` for a permutation.
    pub fn t_perm(w: &Perm) -> Result<Self, AlgebraError> {
        Self::basis(*w, SetPartition::singletons(w.n()))
    }

    /// The product `T_{i1} ⋯ T_{ik}` of generators, normalized.
    pub fn t_word(word: &[usize], n: usize) -> Result<Self, AlgebraError> {
        let mut e = Self::unit(n)?;
        for &i in word {
            Self::check_index(i, n)?;
            e = e.mul_t(i);
        }
        Ok(e)
    }

    /// `𝕋_{i,k} = T_i T_{i-1} ⋯ T_k`, with `𝕋_{i,0} = 𝕋_{i,i+1} = 1`.
    pub fn t_run(i: usize, k: usize, n: usize) -> Result<Self, AlgebraError> {
        if k == 0 || k == i + 1 {
            return Self::unit(n);
        }
        if k > i + 1 {
            return Err(AlgebraError::IndexOutOfRange(k, i + 1));
        }
        let word: Vec<usize> = (k..=i).rev().collect();
        Self::t_word(&word, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, basis: &Basis) -> RatFunc {
        self.terms.get(basis).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// If this is a scalar multiple of the unit, the scalar.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => {
                let (b, c) = self.terms.iter().next()?;
                (*b == Basis::unit(self.n)).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, basis: Basis, c: RatFunc) {
        debug_assert_eq!(basis.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same_level(&self, other: &BtElement) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::LevelMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &BtElement, c: &RatFunc) {
        assert_eq!(self.n, other.n, "level mismatch");
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (b, d) in &other.terms {
            self.add_term(*b, if one { d.clone() } else { d * c });
        }
    }

    pub fn add(&self, other: &BtElement) -> Result<BtElement, AlgebraError> {
        self.check_same_level(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::one());
        Ok(out)
    }

    pub fn sub(&self, other: &BtElement) -> Result<BtElement, AlgebraError> {
        self.check_same_level(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> BtElement {
        let mut out = BtElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        out.add_scaled(self, c);
        out
    }

    /// `self · T_i`.
    pub fn mul_t(&self, i: usize) -> BtElement {
        let c = u_minus_one();
        let mut out = BtElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (b, coef) in &self.terms {
            let k = b.part.swap_adjacent(i);
            let xs = b.perm.mul_s(i);
            if b.perm.ascends_right(i) {
                out.add_term(Basis::new(xs, k), coef.clone());
            } else {
                let ktie = k.join_adjacent(i).expect("valid index");
                let cc = coef * &c;
                out.add_term(Basis::new(xs, k), coef.clone());
                out.add_term(Basis::new(xs, ktie), cc.clone());
                out.add_term(Basis::new(b.perm, ktie), cc);
            }
        }
        out
    }

    /// `self · E_J`.
    pub fn mul_e(&self, j: &SetPartition) -> BtElement {
        assert_eq!(j.n(), self.n, "level mismatch");
        if j.is_singletons() {
            return self.clone();
        }
        let mut out = BtElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (b, coef) in &self.terms {
            let part = b.part.join(j).expect("same level");
            out.add_term(Basis::new(b.perm, part), coef.clone());
        }
        out
    }

    /// `self · T_i^{-1}`.
    pub fn mul_t_inv(&self, i: usize) -> BtElement {
        let c = u_inv_minus_one();
        let tie = SetPartition::singletons(self.n)
            .join_adjacent(i)
            .expect("valid index");
        let mut out = self.mul_t(i);
        let with_tie = self.mul_e(&tie);
        out.add_scaled(&with_tie, &c);
        out.add_scaled(&with_tie.mul_t(i), &c);
        out
    }

    /// `self · T_w`, applying a reduced word of `w`.
    pub fn mul_t_perm(&self, w: &Perm) -> BtElement {
        let mut acc = self.clone();
        for i in w.reduced_word() {
            acc = acc.mul_t(i);
        }
        acc
    }

    /// The normal form of `self · other`.
    pub fn mul(&self, other: &BtElement) -> Result<BtElement, AlgebraError> {
        self.check_same_level(other)?;
        // Group the right factor by permutation so each `self · T_v` is
        // computed once.
        let mut groups: BTreeMap<Perm, Vec<(SetPartition, RatFunc)>> = BTreeMap::new();
        for (b, c) in &other.terms {
            groups.entry(b.perm).or_default().push((b.part, c.clone()));
        }
        let groups: Vec<(Perm, Vec<(SetPartition, RatFunc)>)> = groups.into_iter().collect();
        let n = self.n;
        let partial = |(v, ties): &(Perm, Vec<(SetPartition, RatFunc)>)| {
            let sv = self.mul_t_perm(v);
            let mut acc = BtElement {
                n,
                terms: BTreeMap::new(),
            };
            for (j, d) in ties {
                acc.add_scaled(&sv.mul_e(j), d);
            }
            acc
        };
        let zero = || BtElement {
            n,
            terms: BTreeMap::new(),
        };
        let combine = |mut a: BtElement, b: BtElement| {
            if a.num_terms() < b.num_terms() {
                let mut b = b;
                b.add_scaled(&a, &RatFunc::one());
                return b;
            }
            a.add_scaled(&b, &RatFunc::one());
            a
        };
        if groups.len() * self.terms.len().max(1) < par::MIN_PARALLEL_LEN {
            Ok(groups.iter().map(partial).fold(zero(), combine))
        } else {
            Ok(par::map_reduce(&groups, zero, partial, combine))
        }
    }

    /// The same element viewed in `E_m`.
    pub fn embed(&self, m: usize) -> Result<BtElement, AlgebraError> {
        if m < self.n {
            return Err(AlgebraError::EmbedDown(self.n, m));
        }
        check_level(m)?;
        Ok(BtElement {
            n: m,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (Basis::new(b.perm.embed(m), b.part.embed(m)), c.clone()))
                .collect(),
        })
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> BtElement {
        let mut acc = BtElement::unit(self.n).expect("level already checked");
        for _ in 0..k {
            acc = acc.mul(self).expect("same level");
        }
        acc
    }
}

/// `u - 1`.
pub fn u_minus_one() -> RatFunc {
    &RatFunc::u() - &RatFunc::one()
}

/// `u^{-1} - 1`.
pub fn u_inv_minus_one() -> RatFunc {
    &RatFunc::u().inv().expect("u is nonzero") - &RatFunc::one()
}

/// Multiplies a slice of elements left to right.
pub fn product(factors: &[BtElement]) -> Result<BtElement, AlgebraError> {
    let (first, rest) = factors
        .split_first()
        .expect("product of an empty list has no level");
    rest.iter().try_fold(first.clone(), |acc, f| acc.mul(f))
}

/// Renders `c * T[w] * E[I]` terms in basis order; the zero element is `0`.
impl fmt::Display for BtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("({}) * T{} * E[{}]", c, b.perm, b.part))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BtElement(n={}: {})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, n: usize) -> BtElement {
        BtElement::gen_t(i, n).unwrap()
    }
    fn e(i: usize, n: usize) -> BtElement {
        BtElement::gen_e(i, n).unwrap()
    }
    fn mul(a: &BtElement, b: &BtElement) -> BtElement {
        a.mul(b).unwrap()
    }

    #[test]
    fn tie_idempotent() {
        assert_eq!(mul(&e(1, 2), &e(1, 2)), e(1, 2));
    }

    #[test]
    fn t_times_e_is_single_term() {
        let p = mul(&t(1, 2), &e(1, 2));
        let expected = BtElement::basis(Perm::s(1, 2), SetPartition::full(2)).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn far_generators_commute() {
        assert_eq!(mul(&t(1, 4), &t(3, 4)), mul(&t(3, 4), &t(1, 4)));
    }

    #[test]
    fn quadratic_relation() {
        let c = u_minus_one();
        let lhs = mul(&t(1, 2), &t(1, 2));
        let mut rhs = BtElement::unit(2).unwrap();
        rhs.add_scaled(&e(1, 2), &c);
        rhs.add_scaled(&mul(&t(1, 2), &e(1, 2)), &c);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hand_expansion_t2t1_t1() {
        let c = u_minus_one();
        let t2t1 = mul(&t(2, 3), &t(1, 3));
        let lhs = mul(&t2t1, &t(1, 3));
        let mut rhs = t(2, 3);
        rhs.add_scaled(&mul(&t(2, 3), &e(1, 3)), &c);
        rhs.add_scaled(&mul(&t2t1, &e(1, 3)), &c);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_both_sides() {
        for n in 2..=4 {
            for i in 1..n {
                let one = BtElement::unit(n).unwrap();
                let inv = BtElement::gen_t_inv(i, n).unwrap();
                assert_eq!(mul(&t(i, n), &inv), one);
                assert_eq!(mul(&inv, &t(i, n)), one);
                assert_eq!(t(i, n).mul_t_inv(i), one);
            }
        }
    }

    #[test]
    fn inverse_coefficients() {
        let inv = BtElement::gen_t_inv(1, 2).unwrap();
        let c = u_inv_minus_one();
        assert_eq!(inv.num_terms(), 3);
        assert!(inv
            .coeff(&Basis::new(Perm::s(1, 2), SetPartition::singletons(2)))
            .is_one());
        assert_eq!(
            inv.coeff(&Basis::new(Perm::identity(2), SetPartition::full(2))),
            c
        );
        assert_eq!(
            inv.coeff(&Basis::new(Perm::s(1, 2), SetPartition::full(2))),
            c
        );
    }

    #[test]
    fn e_pair_from_conjugation() {
        // T_1 E_2 T_1^{-1} in E_3 is E_{1,3}.
        let lhs = product(&[t(1, 3), e(2, 3), BtElement::gen_t_inv(1, 3).unwrap()]).unwrap();
        assert_eq!(lhs, BtElement::e_pair(1, 3, 3).unwrap());
        assert_eq!(BtElement::e_pair(2, 3, 3).unwrap(), e(2, 3));
    }

    #[test]
    fn errors() {
        assert_eq!(
            BtElement::gen_t(0, 3),
            Err(AlgebraError::IndexOutOfRange(0, 3))
        );
        assert_eq!(
            BtElement::gen_e(3, 3),
            Err(AlgebraError::IndexOutOfRange(3, 3))
        );
        assert!(matches!(
            BtElement::unit(9),
            Err(AlgebraError::LevelGuard(9, _))
        ));
        assert_eq!(
            t(1, 3).mul(&t(1, 2)),
            Err(AlgebraError::LevelMismatch(3, 2))
        );
        assert_eq!(t(1, 3).embed(2), Err(AlgebraError::EmbedDown(3, 2)));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(t(1, 2).embed(3).unwrap(), t(1, 3));
        assert_eq!(e(1, 2).embed(4).unwrap(), e(1, 4));
        let x = mul(&t(1, 3), &e(2, 3));
        let y = mul(&t(2, 3), &t(1, 3));
        assert_eq!(
            mul(&x, &y).embed(4).unwrap(),
            mul(&x.embed(4).unwrap(), &y.embed(4).unwrap())
        );
    }

    #[test]
    fn display_format() {
        let s = mul(&t(1, 2), &e(1, 2)).to_string();
        assert_eq!(s, "(1) * T[2,1] * E[({1,2})]");
        assert_eq!(BtElement::zero(2).unwrap().to_string(), "0");
    }
}
