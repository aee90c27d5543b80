//! The Iwahori–Hecke algebra `H_n(u)` on the basis `{h_w}` with
//! `h_i^2 = u + (u - 1) h_i`, and its Ocneanu trace with parameter `z`.
//!
//! This module shares only scalars and permutations with the rest of the
//! crate. It is the independent side of the Homflypt cross-check, so it has
//! no ties and no partitions.

use std::collections::BTreeMap;

use crate::permutations::Perm;
use crate::scalars::RatFunc;

/// Largest strand count the oracle accepts.
pub const HECKE_GUARD: usize = 7;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Perm, RatFunc>,
}

impl HeckeElement {
    pub fn unit(n: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Perm::identity(n), RatFunc::one());
        HeckeElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &RatFunc)> {
        self.terms.iter()
    }

    fn add(&mut self, w: Perm, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(RatFunc::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Right multiplication by `h_i`.
    pub fn mul_h(&self, i: usize) -> Self {
        let u = RatFunc::u();
        let um1 = &u - &RatFunc::one();
        let mut out = HeckeElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            let ws = w.mul_s(i);
            if w.ascends_right(i) {
                out.add(ws, c.clone());
            } else {
                out.add(ws, c * &u);
                out.add(*w, c * &um1);
            }
        }
        out
    }

    /// Right multiplication by `h_i^{-1} = u^{-1} h_i + (u^{-1} - 1)`.
    pub fn mul_h_inv(&self, i: usize) -> Self {
        let ui = RatFunc::u().inv().expect("u is nonzero");
        let c0 = &ui - &RatFunc::one();
        let mut out = self.mul_h(i);
        for c in out.terms.values_mut() {
            *c = &*c * &ui;
        }
        for (w, c) in &self.terms {
            out.add(*w, c * &c0);
        }
        out
    }

    /// Image of a signed word (`+i ↦ h_i`, `-i ↦ h_i^{-1}`).
    pub fn from_word(n: usize, letters: &[i32]) -> Self {
        letters.iter().fold(Self::unit(n), |acc, &l| {
            let i = l.unsigned_abs() as usize;
            if l > 0 {
                acc.mul_h(i)
            } else {
                acc.mul_h_inv(i)
            }
        })
    }

    /// The Ocneanu trace with `tr(x h_{n-1} y) = z tr(xy)` for `x, y` in
    /// `H_{n-1}`.
    pub fn ocneanu(&self, z: &RatFunc) -> RatFunc {
        let mut cur = self.clone();
        while cur.n > 1 {
            cur = cur.relative(z);
        }
        cur.terms.values().cloned().sum()
    }

    /// One step down the tower. A permutation moving `n` is written
    /// `w' s_{n-1} s_{n-2} ⋯ s_k` with `w'` fixing `n`; its image is
    /// `z h_{w'} h_{n-2} ⋯ h_k`.
    fn relative(&self, z: &RatFunc) -> Self {
        let n = self.n;
        let mut out = HeckeElement {
            n: n - 1,
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            // Position holding the value n.
            let pos = (1..=n).find(|&p| w.apply(p) == n).expect("bijection");
            if pos == n {
                out.add(w.restrict().expect("fixes n"), c.clone());
                continue;
            }
            let mut head = *w;
            for j in pos..n {
                head = head.mul_s(j);
            }
            let mut x = HeckeElement {
                n: n - 1,
                terms: BTreeMap::new(),
            };
            x.add(head.restrict().expect("fixes n"), c * z);
            for i in (pos..n - 1).rev() {
                x = x.mul_h(i);
            }
            for (p, d) in x.terms {
                out.add(p, d);
            }
        }
        out
    }
}
