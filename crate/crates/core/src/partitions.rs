//! Set partitions of `{1..n}`.
//!
//! A partition is stored as a restricted growth string: `block[i]` is the
//! block id of point `i + 1`, with ids assigned in order of each block's
//! minimum. That makes the representation canonical, so derived equality is
//! partition equality.

use std::fmt;

use thiserror::Error;

use crate::permutations::Perm;
use crate::MAX_N;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partitions live on different point sets ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("point {0} is outside 1..={1}")]
    PointOutOfRange(usize, usize),
    #[error("cannot remove the last point of a partition of {{1}}")]
    TooSmall,
    #[error("n = {0} is outside the supported range 1..={1}")]
    UnsupportedSize(usize, usize),
    #[error("malformed partition literal: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: u8,
    block: [u8; MAX_N],
}

/// Union-find over at most `MAX_N` points.
struct DisjointSets {
    parent: [u8; MAX_N],
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX_N];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        DisjointSets { parent }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins so roots are block minima.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u8;
        }
    }
}

impl SetPartition {
    /// The partition into singletons (the bottom of the lattice).
    pub fn singletons(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        let mut block = [0u8; MAX_N];
        for (i, b) in block.iter_mut().enumerate().take(n) {
            *b = i as u8;
        }
        SetPartition { n: n as u8, block }
    }

    /// The partition with a single block `{1..n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        SetPartition {
            n: n as u8,
            block: [0; MAX_N],
        }
    }

    /// Builds from 1-based blocks; points not mentioned become singletons.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self, PartitionError> {
        if n == 0 || n > MAX_N {
            return Err(PartitionError::UnsupportedSize(n, MAX_N));
        }
        let mut seen = [false; MAX_N];
        let mut ds = DisjointSets::new(n);
        for blk in blocks {
            let blk = blk.as_ref();
            for &p in blk {
                if p == 0 || p > n {
                    return Err(PartitionError::PointOutOfRange(p, n));
                }
                if seen[p - 1] {
                    return Err(PartitionError::Parse(format!("point {p} appears twice")));
                }
                seen[p - 1] = true;
            }
            for w in blk.windows(2) {
                ds.union(w[0] - 1, w[1] - 1);
            }
        }
        Ok(Self::from_disjoint_sets(n, &mut ds))
    }

    /// Builds from an arbitrary block labelling of the points `1..=n`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        let mut block = [0u8; MAX_N];
        let mut map: Vec<(usize, u8)> = Vec::with_capacity(n);
        for (i, &l) in labels.iter().enumerate() {
            let id = match map.iter().find(|(k, _)| *k == l) {
                Some(&(_, id)) => id,
                None => {
                    let id = map.len() as u8;
                    map.push((l, id));
                    id
                }
            };
            block[i] = id;
        }
        SetPartition { n: n as u8, block }
    }

    fn from_disjoint_sets(n: usize, ds: &mut DisjointSets) -> Self {
        let mut roots = [0usize; MAX_N];
        for (i, r) in roots.iter_mut().enumerate().take(n) {
            *r = ds.find(i);
        }
        Self::from_labels(&roots[..n])
    }

    fn to_disjoint_sets(self) -> DisjointSets {
        let n = self.n();
        let mut ds = DisjointSets::new(n);
        let mut first = [usize::MAX; MAX_N];
        for i in 0..n {
            let b = self.block[i] as usize;
            if first[b] == usize::MAX {
                first[b] = i;
            } else {
                ds.union(first[b], i);
            }
        }
        ds
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Block id of the 1-based point `p`.
    pub fn block_of(&self, p: usize) -> usize {
        self.block[p - 1] as usize
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block[a - 1] == self.block[b - 1]
    }

    pub fn num_blocks(&self) -> usize {
        self.block[..self.n()]
            .iter()
            .map(|&b| b as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// All blocks, 1-based, sorted internally and by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for i in 0..self.n() {
            out[self.block[i] as usize].push(i + 1);
        }
        out
    }

    pub fn is_singletons(&self) -> bool {
        self.num_blocks() == self.n()
    }

    /// Whether `p` lies in a block of size at least two.
    pub fn in_support(&self, p: usize) -> bool {
        let b = self.block[p - 1];
        self.block[..self.n()]
            .iter()
            .enumerate()
            .any(|(i, &x)| x == b && i != p - 1)
    }

    /// Union of the non-singleton blocks.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&p| self.in_support(p)).collect()
    }

    fn check_same_n(&self, other: &SetPartition) -> Result<(), PartitionError> {
        if self.n != other.n {
            return Err(PartitionError::SizeMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// `I ∗ J`: the finest partition coarser than both.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition, PartitionError> {
        self.check_same_n(other)?;
        if other.is_singletons() {
            return Ok(*self);
        }
        if self.is_singletons() {
            return Ok(*other);
        }
        let mut ds = self.to_disjoint_sets();
        let mut first = [usize::MAX; MAX_N];
        for i in 0..self.n() {
            let b = other.block[i] as usize;
            if first[b] == usize::MAX {
                first[b] = i;
            } else {
                ds.union(first[b], i);
            }
        }
        Ok(Self::from_disjoint_sets(self.n(), &mut ds))
    }

    /// `I ∗ {a, b}`: merges the blocks of `a` and `b`.
    pub fn join_pair(&self, a: usize, b: usize) -> Result<SetPartition, PartitionError> {
        let n = self.n();
        for p in [a, b] {
            if p == 0 || p > n {
                return Err(PartitionError::PointOutOfRange(p, n));
            }
        }
        let (ba, bb) = (self.block[a - 1], self.block[b - 1]);
        if ba == bb {
            return Ok(*self);
        }
        let (keep, drop) = (ba.min(bb), ba.max(bb));
        let mut labels = [0usize; MAX_N];
        for (i, l) in labels.iter_mut().enumerate().take(n) {
            let x = self.block[i];
            *l = if x == drop { keep as usize } else { x as usize };
        }
        Ok(Self::from_labels(&labels[..n]))
    }

    /// `I ∗ j = I ∗ {j, j+1}`.
    pub fn join_adjacent(&self, j: usize) -> Result<SetPartition, PartitionError> {
        self.join_pair(j, j + 1)
    }

    /// `w(I)`: blocks mapped pointwise through `w`.
    pub fn act(&self, w: &Perm) -> Result<SetPartition, PartitionError> {
        if w.n() != self.n() {
            return Err(PartitionError::SizeMismatch(w.n(), self.n()));
        }
        Ok(self.act_unchecked(w))
    }

    pub(crate) fn act_unchecked(&self, w: &Perm) -> SetPartition {
        let n = self.n();
        let mut labels = [0usize; MAX_N];
        for i in 1..=n {
            labels[w.apply(i) - 1] = self.block[i - 1] as usize;
        }
        Self::from_labels(&labels[..n])
    }

    /// `s_i(I)`; cheaper than a general [`SetPartition::act`].
    pub fn swap_adjacent(&self, i: usize) -> SetPartition {
        let n = self.n();
        if self.block[i - 1] == self.block[i] {
            return *self;
        }
        let mut labels = [0usize; MAX_N];
        for (k, l) in labels.iter_mut().enumerate().take(n) {
            *l = self.block[k] as usize;
        }
        labels.swap(i - 1, i);
        Self::from_labels(&labels[..n])
    }

    /// `I \ n`.
    pub fn remove_last(&self) -> Result<SetPartition, PartitionError> {
        let n = self.n();
        if n < 2 {
            return Err(PartitionError::TooSmall);
        }
        let mut labels = [0usize; MAX_N];
        for (i, l) in labels.iter_mut().enumerate().take(n - 1) {
            *l = self.block[i] as usize;
        }
        Ok(Self::from_labels(&labels[..n - 1]))
    }

    /// `τ_{n,k}(I) = (I ∗ {k, n}) \ n`.
    pub fn tau(&self, k: usize) -> Result<SetPartition, PartitionError> {
        let n = self.n();
        if k == 0 || k >= n {
            return Err(PartitionError::PointOutOfRange(k, n - 1));
        }
        self.join_pair(k, n)?.remove_last()
    }

    /// Adds singleton points up to `m`.
    pub fn embed(&self, m: usize) -> SetPartition {
        assert!(m >= self.n() && m <= MAX_N);
        let mut out = *self;
        let nb = self.num_blocks();
        for i in self.n()..m {
            out.block[i] = (nb + i - self.n()) as u8;
        }
        out.n = m as u8;
        out
    }

    /// `I ⪯ J`: every block of `I` sits inside a block of `J`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool, PartitionError> {
        self.check_same_n(other)?;
        let n = self.n();
        let mut image = [u8::MAX; MAX_N];
        for i in 0..n {
            let b = self.block[i] as usize;
            if image[b] == u8::MAX {
                image[b] = other.block[i];
            } else if image[b] != other.block[i] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All partitions of `{1..n}` in restricted-growth-string order.
    pub fn enumerate(n: usize) -> Result<Vec<SetPartition>, PartitionError> {
        if n == 0 || n > 10 {
            return Err(PartitionError::UnsupportedSize(n, 10));
        }
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
            if pos == rgs.len() {
                out.push(SetPartition::from_labels(rgs));
                return;
            }
            for b in 0..=max + 1 {
                rgs[pos] = b;
                rec(pos + 1, max.max(b), rgs, out);
            }
        }
        if n == 1 {
            return Ok(vec![SetPartition::singletons(1)]);
        }
        rec(1, 0, &mut rgs, &mut out);
        Ok(out)
    }

    /// Parses `({1,3},{2,5})`; singleton blocks may be given or omitted.
    pub fn parse(n: usize, text: &str) -> Result<SetPartition, PartitionError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| PartitionError::Parse(t.to_string()))?
            .trim();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| PartitionError::Parse(t.to_string()))?;
            let close = body
                .find('}')
                .ok_or_else(|| PartitionError::Parse(t.to_string()))?;
            let items = body[..close]
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| PartitionError::Parse(t.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(items);
            rest = body[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            }
        }
        SetPartition::from_blocks(n, &blocks)
    }
}

/// Displays non-singleton blocks only, e.g. `({1,3},{2,5})`; the all-singleton
/// partition displays as `()`.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .into_iter()
            .filter(|b| b.len() > 1)
            .map(|b| {
                let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "({})", blocks.join(","))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition(n={}, {})", self.n, self)
    }
}

/// Bell numbers via `B(m+1) = Σ_k C(m, k) B(k)`.
pub fn bell(n: usize) -> u64 {
    let mut b = vec![1u64];
    for m in 0..n {
        let mut next = 0u64;
        let mut c = 1u64;
        for (k, bk) in b.iter().enumerate().take(m + 1) {
            next += c * bk;
            c = c * (m - k) as u64 / (k + 1) as u64;
        }
        b.push(next);
    }
    b[n]
}
