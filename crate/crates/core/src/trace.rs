//! Relative traces `ϱ_n : E_n → E_{n-1}` and the Markov trace
//! `ρ_n = ρ_{n-1} ∘ ϱ_n`.
//!
//! On a basis element `𝕋_{1,k_1} ⋯ 𝕋_{n-1,k_{n-1}} E_I` the relative trace
//! is
//!
//! * `𝕋_{1,k_1} ⋯ 𝕋_{n-2,k_{n-2}} E_I` when `k_{n-1} = 0` and `n` is a
//!   singleton of `I`;
//! * `B · 𝕋_{1,k_1} ⋯ 𝕋_{n-2,k_{n-2}} E_{I \ n}` when `k_{n-1} = 0` and `n`
//!   is tied to something;
//! * `A · 𝕋_{1,k_1} ⋯ 𝕋_{n-2,k_{n-2}} T_{n-2} ⋯ T_k E_{τ_{n,k}(I)}` when
//!   `k = k_{n-1} > 0`. The product in front of the tie is not in canonical
//!   shape, so it is renormalized.

use rand::Rng;
use thiserror::Error;

use crate::algebra::{basis_labels, AlgebraError, Basis, BtElement};
use crate::par;
use crate::partitions::SetPartition;
use crate::report::Report;
use crate::sampling;
use crate::scalars::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("the relative trace needs level n >= 2, got {0}")]
    LevelTooSmall(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A relative trace with parameters `A` (for `T_{n-1}`, `E_{n-1}T_{n-1}`)
/// and `B` (for `E_{n-1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeTrace {
    a: RatFunc,
    b: RatFunc,
}

impl Default for RelativeTrace {
    fn default() -> Self {
        RelativeTrace {
            a: RatFunc::a(),
            b: RatFunc::b(),
        }
    }
}

const CHUNK: usize = 256;

impl RelativeTrace {
    pub fn new(a: RatFunc, b: RatFunc) -> Self {
        RelativeTrace { a, b }
    }

    /// The same map with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        RelativeTrace {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn param_a(&self) -> &RatFunc {
        &self.a
    }

    pub fn param_b(&self) -> &RatFunc {
        &self.b
    }

    /// `ϱ_n` on one basis element, written into `out` scaled by `c`.
    fn basis_into(&self, basis: &Basis, c: &RatFunc, out: &mut BtElement) {
        let n = basis.n();
        let fv = basis.perm.canonical_factor();
        let k = fv.0[n - 2];
        if k == 0 {
            let w = basis.perm.restrict().expect("k_{n-1} = 0 fixes n");
            let part = basis.part.remove_last().expect("n >= 2");
            let coeff = if basis.part.in_support(n) {
                c * &self.b
            } else {
                c.clone()
            };
            out.add_term(Basis::new(w, part), coeff);
            return;
        }
        // Strip the last factor s_{n-1} ⋯ s_k from the right.
        let mut w = basis.perm;
        for j in k..n {
            w = w.mul_s(j);
        }
        let w = w.restrict().expect("stripping the last factor fixes n");
        let tie = basis.part.tau(k).expect("1 <= k < n");
        let mut x = BtElement::term(Basis::new(w, SetPartition::singletons(n - 1)), c * &self.a)
            .expect("level below guard");
        for i in (k..n - 1).rev() {
            x = x.mul_t(i);
        }
        out.add_scaled(&x.mul_e(&tie), &RatFunc::one());
    }

    /// `ϱ_n(x)`, an element of `E_{n-1}`.
    pub fn apply(&self, x: &BtElement) -> Result<BtElement, TraceError> {
        let n = x.n();
        if n < 2 {
            return Err(TraceError::LevelTooSmall(n));
        }
        let terms: Vec<(&Basis, &RatFunc)> = x.terms().collect();
        let zero = || BtElement::zero(n - 1).expect("level below guard");
        if terms.len() < 2 * CHUNK {
            let mut out = zero();
            for (b, c) in terms {
                self.basis_into(b, c, &mut out);
            }
            return Ok(out);
        }
        let chunks: Vec<&[(&Basis, &RatFunc)]> = terms.chunks(CHUNK).collect();
        Ok(par::map_reduce(
            &chunks,
            zero,
            |chunk| {
                let mut out = zero();
                for (b, c) in chunk.iter() {
                    self.basis_into(b, c, &mut out);
                }
                out
            },
            |mut a, b| {
                a.add_scaled(&b, &RatFunc::one());
                a
            },
        ))
    }

    /// `ρ_n(x) = ϱ_2(⋯ ϱ_n(x))`, read off as a scalar.
    pub fn markov(&self, x: &BtElement) -> Result<RatFunc, TraceError> {
        let mut cur = x.clone();
        while cur.n() > 1 {
            cur = self.apply(&cur)?;
        }
        Ok(cur.as_scalar().expect("E_1 is the scalars"))
    }
}

/// `ϱ_n` with parameters `A`, `B`.
pub fn rel_trace(x: &BtElement) -> Result<BtElement, TraceError> {
    RelativeTrace::default().apply(x)
}

/// `ρ_n` with parameters `A`, `B`.
pub fn markov_trace(x: &BtElement) -> Result<RatFunc, TraceError> {
    RelativeTrace::default().markov(x)
}

/// How a suite picks its test elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Every basis element (or pair/triple of them).
    Exhaustive,
    /// `count` random basis elements from a seeded generator.
    Random { count: usize, seed: u64 },
}

fn basis_elem(b: &Basis) -> BtElement {
    BtElement::term(*b, RatFunc::one()).expect("level below guard")
}

fn embed_up(x: &BtElement) -> BtElement {
    x.embed(x.n() + 1).expect("level below guard")
}

/// Checks the bimodule and commutation properties of `ϱ_n`, the Markov
/// trace axioms for `ρ_n`, and the conjugation property of `ϱ_n` against
/// `ϱ_{n-1}`. Axioms (iii)/(iv) are checked against the nominal parameters
/// `A` and `B`, not against `trace`'s own, so a mutated trace is caught.
pub fn trace_axiom_suite(
    n: usize,
    sampling: Sampling,
    trace: &RelativeTrace,
) -> Result<Report, TraceError> {
    if n < 2 {
        return Err(TraceError::LevelTooSmall(n));
    }
    let mut report = Report::new(format!("trace axioms at n = {n}"));
    let mut rng = sampling::rng(match sampling {
        Sampling::Random { seed, .. } => {
            report.seed = Some(seed);
            seed
        }
        Sampling::Exhaustive => 0,
    });
    let a_nom = RatFunc::a();
    let b_nom = RatFunc::b();

    let lower = basis_labels(n - 1);
    let upper = basis_labels(n);

    // Triples (X, Y, Z) with X, Z ∈ E_{n-1} and Y ∈ E_n.
    let triples: Vec<(Basis, Basis, Basis)> = match sampling {
        Sampling::Exhaustive => {
            let mut v = Vec::new();
            for x in &lower {
                for z in &lower {
                    for y in &upper {
                        v.push((*x, *y, *z));
                    }
                }
            }
            v
        }
        Sampling::Random { count, .. } => (0..count)
            .map(|_| {
                (
                    sampling::random_basis(n - 1, &mut rng),
                    sampling::random_basis(n, &mut rng),
                    sampling::random_basis(n - 1, &mut rng),
                )
            })
            .collect(),
    };
    let results = par::map(&triples, |(xb, yb, zb)| -> Result<bool, TraceError> {
        let x = basis_elem(xb);
        let z = basis_elem(zb);
        let y = basis_elem(yb);
        let lhs = trace.apply(&embed_up(&x).mul(&y)?.mul(&embed_up(&z))?)?;
        let rhs = x.mul(&trace.apply(&y)?)?.mul(&z)?;
        Ok(lhs == rhs)
    });
    for ((x, y, z), r) in triples.iter().zip(results) {
        report
            .check("relative_bimodule")
            .record(r?, || format!("X={x:?} Y={y:?} Z={z:?}"));
    }

    // Y ∈ E_n for the one-sided properties.
    let singles: Vec<Basis> = match sampling {
        Sampling::Exhaustive => upper.clone(),
        Sampling::Random { count, .. } => (0..count)
            .map(|_| sampling::random_basis(n, &mut rng))
            .collect(),
    };
    if n >= 3 {
        let t_last = BtElement::gen_t(n - 1, n)?;
        let e_last = BtElement::gen_e(n - 1, n)?;
        let results = par::map(&singles, |yb| -> Result<(bool, bool), TraceError> {
            let y = basis_elem(yb);
            let twice =
                |v: &BtElement| -> Result<BtElement, TraceError> { trace.apply(&trace.apply(v)?) };
            let t_ok = twice(&t_last.mul(&y)?)? == twice(&y.mul(&t_last)?)?;
            let e_ok = twice(&e_last.mul(&y)?)? == twice(&y.mul(&e_last)?)?;
            Ok((t_ok, e_ok))
        });
        for (y, r) in singles.iter().zip(results) {
            let (t_ok, e_ok) = r?;
            report
                .check("relative_commute_T")
                .record(t_ok, || format!("Y={y:?}"));
            report
                .check("relative_commute_E")
                .record(e_ok, || format!("Y={y:?}"));
        }
    }

    let unit = BtElement::unit(n)?;
    let one_ok = trace.markov(&unit)?.is_one();
    report
        .check("markov_unit")
        .record(one_ok, || "rho(1) != 1".into());

    // Trace property on pairs.
    let pairs: Vec<(Basis, Basis)> = match sampling {
        Sampling::Exhaustive => {
            let mut v = Vec::new();
            for x in &upper {
                for y in &upper {
                    v.push((*x, *y));
                }
            }
            v
        }
        Sampling::Random { count, .. } => (0..count)
            .map(|_| {
                (
                    sampling::random_basis(n, &mut rng),
                    sampling::random_basis(n, &mut rng),
                )
            })
            .collect(),
    };
    let results = par::map(&pairs, |(xb, yb)| -> Result<bool, TraceError> {
        let x = basis_elem(xb);
        let y = basis_elem(yb);
        Ok(trace.markov(&x.mul(&y)?)? == trace.markov(&y.mul(&x)?)?)
    });
    for ((x, y), r) in pairs.iter().zip(results) {
        report
            .check("markov_cyclic")
            .record(r?, || format!("X={x:?} Y={y:?}"));
    }

    // Markov properties: X ∈ E_n, compared at level n + 1.
    let t_next = BtElement::gen_t(n, n + 1)?;
    let e_next = BtElement::gen_e(n, n + 1)?;
    let et_next = e_next.mul(&t_next)?;
    let results = par::map(&singles, |xb| -> Result<(bool, bool), TraceError> {
        let x = basis_elem(xb);
        let base = trace.markov(&x)?;
        let up = embed_up(&x);
        let want_a = &a_nom * &base;
        let t_ok = trace.markov(&up.mul(&t_next)?)? == want_a
            && trace.markov(&up.mul(&et_next)?)? == want_a;
        let e_ok = trace.markov(&up.mul(&e_next)?)? == &b_nom * &base;
        Ok((t_ok, e_ok))
    });
    for (x, r) in singles.iter().zip(results) {
        let (t_ok, e_ok) = r?;
        report
            .check("markov_T_step")
            .record(t_ok, || format!("X={x:?}"));
        report
            .check("markov_E_step")
            .record(e_ok, || format!("X={x:?}"));
    }

    if n >= 3 {
        let conj = conjugation_check(n, &lower, trace)?;
        report.checks.push(conj);
    }
    Ok(report)
}

/// `ϱ_n(T_{n-1}^{-1} X T_{n-1}) = ϱ_{n-1}(X) = ϱ_n(T_{n-1} X T_{n-1}^{-1})`
/// for each `X` in `xs` (basis of `E_{n-1}`), both sides viewed in `E_{n-1}`.
pub fn conjugation_check(
    n: usize,
    xs: &[Basis],
    trace: &RelativeTrace,
) -> Result<crate::report::CheckResult, TraceError> {
    let t = BtElement::gen_t(n - 1, n)?;
    let ti = BtElement::gen_t_inv(n - 1, n)?;
    let results = par::map(xs, |xb| -> Result<bool, TraceError> {
        let x = basis_elem(xb);
        let want = trace.apply(&x)?.embed(n - 1)?;
        let up = embed_up(&x);
        let left = trace.apply(&ti.mul(&up)?.mul(&t)?)?;
        let right = trace.apply(&t.mul(&up)?.mul(&ti)?)?;
        Ok(left == want && right == want)
    });
    let mut check = crate::report::CheckResult::new("relative_conjugation");
    for (x, r) in xs.iter().zip(results) {
        check.record(r?, || format!("X={x:?}"));
    }
    Ok(check)
}

/// `ρ_{n+1}(x T_n^{-1}) = (u^{-1} A + (u^{-1} - 1) B) ρ_n(x)` on `count`
/// random elements.
pub fn factorization_check<R: Rng>(
    n: usize,
    count: usize,
    rng: &mut R,
) -> Result<crate::report::CheckResult, TraceError> {
    let ui = RatFunc::u().inv().expect("u is nonzero");
    let factor = &(&ui * &RatFunc::a()) + &(&(&ui - &RatFunc::one()) * &RatFunc::b());
    let mut check = crate::report::CheckResult::new("inverse_factorization");
    for _ in 0..count {
        let x = sampling::random_element(n, 3, rng);
        let lhs = markov_trace(&embed_up(&x).mul_t_inv(n))?;
        let rhs = &factor * &markov_trace(&x)?;
        check.record(lhs == rhs, || format!("x={x}"));
    }
    Ok(check)
}
