//! The symmetric group `S_n`, 1-based.
//!
//! Products are function composition: `compose(v, w)` is `v ∘ w`, so
//! `s_{i1} s_{i2} ⋯ s_{ik}` applies `s_{ik}` first. Under this convention
//! `T_w = T_{i1} ⋯ T_{ik}` for any reduced word of `w`.

use std::fmt;

use thiserror::Error;

use crate::MAX_N;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutations act on different point sets ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("generator index {0} outside 1..{1}")]
    IndexOutOfRange(usize, usize),
    #[error("theta({0}, {1}) needs j <= i")]
    BadTheta(usize, usize),
    #[error("not a permutation of 1..={0}")]
    NotBijective(usize),
    #[error("factor exponent k_{0} = {1} exceeds {0}")]
    BadFactor(usize, usize),
}

/// A permutation in one-line notation. Points past `n` are fixed, which
/// keeps the embedding `S_n ⊂ S_m` free.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_N],
}

/// Canonical exponents `(k_1, …, k_{n-1})`, `0 <= k_j <= j`, encoding
/// `w = w_1 ⋯ w_{n-1}` with `w_j = s_j s_{j-1} ⋯ s_{k_j}` (or `1` when
/// `k_j = 0`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FactorVector(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        let mut img = [0u8; MAX_N];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm { n: n as u8, img }
    }

    /// The adjacent transposition `s_i = (i, i+1)` in `S_n`.
    pub fn s(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} not in S_{n}");
        let mut p = Self::identity(n);
        p.img.swap(i - 1, i);
        p
    }

    /// From 1-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_N {
            return Err(PermError::NotBijective(n));
        }
        let mut p = Self::identity(n);
        let mut seen = [false; MAX_N];
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > n || seen[x - 1] {
                return Err(PermError::NotBijective(n));
            }
            seen[x - 1] = true;
            p.img[i] = (x - 1) as u8;
        }
        Ok(p)
    }

    /// Product of generators `s_{i1} ⋯ s_{ik}` (function composition).
    pub fn from_word(word: &[usize], n: usize) -> Result<Self, PermError> {
        let mut p = Self::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(PermError::IndexOutOfRange(i, n));
            }
            p = p.mul_s(i);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        (1..=self.n()).map(|i| self.apply(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n()).all(|i| self.img[i] as usize == i)
    }

    /// `v ∘ w`.
    pub fn compose(&self, w: &Perm) -> Result<Perm, PermError> {
        if self.n != w.n {
            return Err(PermError::SizeMismatch(self.n(), w.n()));
        }
        let mut out = *self;
        for i in 0..self.n() {
            out.img[i] = self.img[w.img[i] as usize];
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.n() {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    /// `self ∘ s_i`: swaps positions `i` and `i+1` of the one-line notation.
    pub fn mul_s(&self, i: usize) -> Perm {
        let mut out = *self;
        out.img.swap(i - 1, i);
        out
    }

    /// Whether `ℓ(self ∘ s_i) > ℓ(self)`.
    pub fn ascends_right(&self, i: usize) -> bool {
        self.img[i - 1] < self.img[i]
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.img[i] > self.img[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = [false; MAX_N];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x] as usize;
            }
        }
        cycles
    }

    /// View in `S_m`, `m >= n`.
    pub fn embed(&self, m: usize) -> Perm {
        assert!(m >= self.n() && m <= MAX_N);
        let mut out = *self;
        out.n = m as u8;
        out
    }

    /// Restriction to `S_{n-1}`; `None` unless `n` is fixed.
    pub fn restrict(&self) -> Option<Perm> {
        let n = self.n();
        if n == 0 || self.img[n - 1] as usize != n - 1 {
            return None;
        }
        let mut out = *self;
        out.n = (n - 1) as u8;
        Some(out)
    }

    /// The canonical factorization exponents.
    pub fn canonical_factor(&self) -> FactorVector {
        let n = self.n();
        let mut ks = vec![0usize; n.saturating_sub(1)];
        let mut w = *self;
        for top in (2..=n).rev() {
            // w = w' ∘ (s_{top-1} ⋯ s_k) with w'(top) = top, hence w(k) = top.
            let k = w.inverse().apply(top);
            if k != top {
                ks[top - 2] = k;
                // Peel off w_{top-1}: w' = w ∘ s_k ∘ s_{k+1} ∘ ⋯ ∘ s_{top-1}.
                for j in k..top {
                    w = w.mul_s(j);
                }
            }
            debug_assert_eq!(w.apply(top), top);
        }
        FactorVector(ks)
    }

    /// Reduced word read off the canonical factorization: the runs
    /// `j, j-1, …, k_j` for `j = 1..n-1`.
    pub fn reduced_word(&self) -> Vec<usize> {
        self.canonical_factor().reduced_word()
    }
}

impl FactorVector {
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    pub fn validate(&self) -> Result<(), PermError> {
        for (idx, &k) in self.0.iter().enumerate() {
            let j = idx + 1;
            if k > j {
                return Err(PermError::BadFactor(j, k));
            }
        }
        Ok(())
    }

    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        for (idx, &k) in self.0.iter().enumerate() {
            let j = idx + 1;
            if k > 0 {
                word.extend((k..=j).rev());
            }
        }
        word
    }

    pub fn decode(&self) -> Result<Perm, PermError> {
        self.validate()?;
        Perm::from_word(&self.reduced_word(), self.n())
    }
}

/// `θ_{i,j} = s_i s_{i-1} ⋯ s_j` in `S_n`.
///
/// As a map on points this sends `j → i+1` and `m → m-1` for `j < m <= i+1`.
pub fn theta(i: usize, j: usize, n: usize) -> Result<Perm, PermError> {
    if j > i {
        return Err(PermError::BadTheta(i, j));
    }
    if j == 0 || i >= n {
        return Err(PermError::IndexOutOfRange(i, n));
    }
    let word: Vec<usize> = (j..=i).rev().collect();
    Perm::from_word(&word, n)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", imgs.join(","))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// All of `S_n` in lexicographic one-line order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut imgs: Vec<usize> = (1..=n).collect();
    fn rec(k: usize, imgs: &mut Vec<usize>, out: &mut Vec<Perm>) {
        if k == imgs.len() {
            out.push(Perm::from_images(imgs).expect("valid"));
            return;
        }
        for i in k..imgs.len() {
            imgs[k..=i].rotate_right(1);
            rec(k + 1, imgs, out);
            imgs[k..=i].rotate_left(1);
        }
    }
    rec(0, &mut imgs, &mut out);
    out
}
