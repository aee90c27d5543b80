//! Element-level verification of the defining relations of `E_n(u)` and of
//! the derived identities used by the trace.

use std::collections::HashSet;

use crate::algebra::{basis_labels, product, u_minus_one, AlgebraError, Basis, BtElement};
use crate::par;
use crate::partitions::SetPartition;
use crate::permutations::{all_perms, theta, Perm};
use crate::report::{CheckResult, Report};
use crate::sampling;
use crate::scalars::RatFunc;

fn t(i: usize, n: usize) -> BtElement {
    BtElement::gen_t(i, n).expect("valid generator")
}

fn ti(i: usize, n: usize) -> BtElement {
    BtElement::gen_t_inv(i, n).expect("valid generator")
}

fn e(i: usize, n: usize) -> BtElement {
    BtElement::gen_e(i, n).expect("valid generator")
}

fn run(i: usize, k: usize, n: usize) -> BtElement {
    BtElement::t_run(i, k, n).expect("valid run")
}

fn prod(factors: &[BtElement]) -> BtElement {
    product(factors).expect("levels agree")
}

fn ep(part: &SetPartition) -> BtElement {
    BtElement::e_partition(part).expect("level within guard")
}

fn plus(a: &BtElement, b: &BtElement) -> BtElement {
    a.add(b).expect("levels agree")
}

/// `T_i^3 - u T_i^2 - T_i + u` with `u` replaced by `u + shift`.
fn cubic_residue(i: usize, n: usize, shift: i64) -> BtElement {
    let uu = &RatFunc::u() + &RatFunc::from_int(shift);
    let g = t(i, n);
    let g2 = g.mul(&g).expect("same level");
    let g3 = g2.mul(&g).expect("same level");
    let mut r = g3;
    r.add_scaled(&g2, &-&uu);
    r.add_scaled(&g, &RatFunc::from_int(-1));
    r.add_scaled(&BtElement::unit(n).expect("level within guard"), &uu);
    r
}

/// Whether `T_i^3 - u T_i^2 - T_i + u` normalizes to zero.
pub fn cubic_check(i: usize, n: usize) -> Result<bool, AlgebraError> {
    BtElement::gen_t(i, n)?;
    Ok(cubic_residue(i, n, 0).is_zero())
}

/// `E_{i,j}` built from generators as `T_i ⋯ T_{j-2} E_{j-1} T_{j-2}^{-1} ⋯ T_i^{-1}`.
pub fn e_pair_from_generators(i: usize, j: usize, n: usize) -> BtElement {
    if j == i + 1 {
        return e(i, n);
    }
    let mut f: Vec<BtElement> = (i..=j - 2).map(|k| t(k, n)).collect();
    f.push(e(j - 1, n));
    f.extend((i..=j - 2).rev().map(|k| ti(k, n)));
    prod(&f)
}

/// `E_I` built from generators, one `E_{min, j}` word per non-minimal point.
fn e_partition_from_generators(part: &SetPartition) -> BtElement {
    let n = part.n();
    let mut f = vec![BtElement::unit(n).expect("level within guard")];
    for block in part.blocks() {
        for &j in &block[1..] {
            f.push(e_pair_from_generators(block[0], j, n));
        }
    }
    prod(&f)
}

/// All reduced words of `w`, by peeling right descents.
pub fn all_reduced_words(w: &Perm) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 1..w.n() {
        if !w.ascends_right(i) {
            for mut word in all_reduced_words(&w.mul_s(i)) {
                word.push(i);
                out.push(word);
            }
        }
    }
    out
}

/// Evaluates every relation family as an element identity for all valid
/// indices at level `n`. Families that enumerate `S_n × P(n)` are limited
/// to `n <= 4`.
pub fn check_relations(n: usize) -> Result<Report, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::IndexOutOfRange(1, n));
    }
    BtElement::unit(n)?;
    let mut r = Report::new(format!("relations at n = {n}"));
    let one = BtElement::unit(n)?;
    let um1 = u_minus_one();
    let idx: Vec<usize> = (1..n).collect();

    for &i in &idx {
        for &j in &idx {
            let far = i.abs_diff(j) > 1;
            let adj = i.abs_diff(j) == 1;
            if far {
                r.check("braid_far_commute").record(
                    prod(&[t(i, n), t(j, n)]) == prod(&[t(j, n), t(i, n)]),
                    || format!("i={i} j={j}"),
                );
                r.check("tie_far_commute").record(
                    prod(&[e(i, n), t(j, n)]) == prod(&[t(j, n), e(i, n)]),
                    || format!("i={i} j={j}"),
                );
            }
            if adj {
                r.check("braid_relation").record(
                    prod(&[t(i, n), t(j, n), t(i, n)]) == prod(&[t(j, n), t(i, n), t(j, n)]),
                    || format!("i={i} j={j}"),
                );
                let a = prod(&[e(i, n), e(j, n), t(i, n)]);
                let b = prod(&[t(i, n), e(i, n), e(j, n)]);
                let c = prod(&[e(j, n), t(i, n), e(j, n)]);
                r.check("tie_triple")
                    .record(a == b && b == c, || format!("i={i} j={j}"));
                r.check("tie_braid_slide").record(
                    prod(&[e(i, n), t(j, n), t(i, n)]) == prod(&[t(j, n), t(i, n), e(j, n)]),
                    || format!("i={i} j={j}"),
                );
                r.check("braid_conjugate").record(
                    prod(&[t(i, n), t(j, n), ti(i, n)]) == prod(&[ti(j, n), t(i, n), t(j, n)]),
                    || format!("i={i} j={j}"),
                );
            }
            r.check("tie_commute").record(
                prod(&[e(i, n), e(j, n)]) == prod(&[e(j, n), e(i, n)]),
                || format!("i={i} j={j}"),
            );
        }
        // T_i^2 = 1 + (u-1) E_i (1 + T_i)
        let rhs = plus(&one, &prod(&[e(i, n), plus(&one, &t(i, n))]).scale(&um1));
        r.check("quadratic")
            .record(prod(&[t(i, n), t(i, n)]) == rhs, || format!("i={i}"));
        r.check("tie_idempotent")
            .record(prod(&[e(i, n), e(i, n)]) == e(i, n), || format!("i={i}"));
        r.check("tie_braid_commute").record(
            prod(&[e(i, n), t(i, n)]) == prod(&[t(i, n), e(i, n)]),
            || format!("i={i}"),
        );
        r.check("inverse").record(
            prod(&[t(i, n), ti(i, n)]) == one && prod(&[ti(i, n), t(i, n)]) == one,
            || format!("i={i}"),
        );
        r.check("cubic")
            .record(cubic_residue(i, n, 0).is_zero(), || format!("i={i}"));
    }

    // Tie elements E_{i,j}, E_J and E_I.
    for i in 1..n {
        for j in i + 1..=n {
            let want = BtElement::e_pair(i, j, n)?;
            r.check("tie_pair_definition")
                .record(e_pair_from_generators(i, j, n) == want, || {
                    format!("i={i} j={j}")
                });
        }
    }
    for part in SetPartition::enumerate(n).expect("n within enumeration range") {
        let want = ep(&part);
        let mut from_min = vec![one.clone()];
        let mut chain = vec![one.clone()];
        let mut all_pairs = vec![one.clone()];
        for block in part.blocks() {
            for (a, &x) in block.iter().enumerate() {
                for &y in &block[a + 1..] {
                    all_pairs.push(BtElement::e_pair(x, y, n)?);
                }
            }
            for w in block.windows(2) {
                chain.push(BtElement::e_pair(w[0], w[1], n)?);
                from_min.push(BtElement::e_pair(block[0], w[1], n)?);
            }
        }
        let ok = prod(&all_pairs) == want && prod(&from_min) == want && prod(&chain) == want;
        r.check("tie_partition_product")
            .record(ok, || format!("I={part}"));
    }

    // 𝕋_{i,k} T_j.
    for i in 1..n {
        for k in 1..=i {
            for j in 1..=i {
                let lhs = prod(&[run(i, k, n), t(j, n)]);
                let rhs = if j == k {
                    let mut x = run(i, k + 1, n);
                    x.add_scaled(
                        &prod(&[run(i, k + 1, n), e(k, n), plus(&one, &t(k, n))]),
                        &um1,
                    );
                    x
                } else if j + 1 == k {
                    run(i, j, n)
                } else if j + 2 <= k {
                    prod(&[t(j, n), run(i, k, n)])
                } else {
                    prod(&[t(j - 1, n), run(i, k, n)])
                };
                r.check("run_times_generator")
                    .record(lhs == rhs, || format!("i={i} k={k} j={j}"));
            }
        }
    }

    // T_i 𝕋_{i-1,r} 𝕋_{i,s} and the expansion of 𝕋_{i-1,r} 𝕋_{i,r} 𝕋_{r,s}.
    for i in 2..n {
        for rr in 1..i {
            for s in 1..=i {
                let lhs = prod(&[t(i, n), run(i - 1, rr, n), run(i, s, n)]);
                let rhs = if rr < s {
                    prod(&[run(i - 1, s - 1, n), run(i, rr, n)])
                } else {
                    prod(&[run(i - 1, rr, n), run(i, rr, n), run(rr, s, n)])
                };
                r.check("run_braid_identity")
                    .record(lhs == rhs, || format!("i={i} r={rr} s={s}"));
                if s <= rr {
                    let lhs = prod(&[run(i - 1, rr, n), run(i, rr, n), run(rr, s, n)]);
                    let head = prod(&[run(i - 1, rr, n), run(i, rr + 1, n)]);
                    let mut rhs = prod(&[head.clone(), run(rr - 1, s, n)]);
                    rhs.add_scaled(&prod(&[head.clone(), e(rr, n), run(rr - 1, s, n)]), &um1);
                    rhs.add_scaled(&prod(&[head, e(rr, n), run(rr, s, n)]), &um1);
                    r.check("run_quadratic_expansion")
                        .record(lhs == rhs, || format!("i={i} r={rr} s={s}"));
                }
            }
        }
    }

    // 𝕋_{i,j} E_I = E_{θ_{i,j}(I)} 𝕋_{i,j}.
    let parts = SetPartition::enumerate(n).expect("n within enumeration range");
    for i in 1..n {
        for j in 1..=i {
            let th = theta(i, j, n).expect("valid theta");
            for part in &parts {
                let moved = part.act(&th).expect("same size");
                r.check("run_tie_transport").record(
                    prod(&[run(i, j, n), ep(part)]) == prod(&[ep(&moved), run(i, j, n)]),
                    || format!("i={i} j={j} I={part}"),
                );
            }
        }
    }

    if n <= 4 {
        r.checks.push(conjugation_action_check(n));
        r.checks.push(reduced_word_check(n));
        r.checks.push(tie_join_check(n));
    }
    Ok(r)
}

/// `T_w E_I = E_{w(I)} T_w` for all `w ∈ S_n`, `I ∈ P(n)`.
pub fn conjugation_action_check(n: usize) -> CheckResult {
    let parts = SetPartition::enumerate(n).expect("n within enumeration range");
    let perms = all_perms(n);
    let results = par::map(&perms, |w| {
        let tw = BtElement::t_perm(w).expect("level within guard");
        parts
            .iter()
            .find(|p| {
                let moved = p.act(w).expect("same size");
                prod(&[tw.clone(), ep(p)]) != prod(&[ep(&moved), tw.clone()])
            })
            .map(|p| format!("w={w} I={p}"))
    });
    let mut c = CheckResult::new("conjugation_action");
    for res in results {
        match res {
            None => c.record(true, String::new),
            Some(msg) => c.record(false, || msg),
        }
    }
    c
}

/// Every reduced word of `w` gives the same product of generators.
pub fn reduced_word_check(n: usize) -> CheckResult {
    let mut c = CheckResult::new("reduced_word_independence");
    for w in all_perms(n) {
        let want = BtElement::t_perm(&w).expect("level within guard");
        for word in all_reduced_words(&w) {
            let got = BtElement::t_word(&word, n).expect("valid word");
            c.record(got == want, || format!("w={w} word={word:?}"));
        }
    }
    c
}

/// `E_I E_J = E_{I ∗ J}`, with both sides built from generator words.
pub fn tie_join_check(n: usize) -> CheckResult {
    let parts = SetPartition::enumerate(n).expect("n within enumeration range");
    let words: Vec<BtElement> = parts.iter().map(e_partition_from_generators).collect();
    let mut c = CheckResult::new("tie_join_rule");
    for (p, wp) in parts.iter().zip(&words) {
        for (q, wq) in parts.iter().zip(&words) {
            let joined = p.join(q).expect("same size");
            let lhs = prod(&[wp.clone(), wq.clone()]);
            c.record(
                lhs == ep(&joined) && e_partition_from_generators(&joined) == lhs,
                || format!("I={p} J={q}"),
            );
        }
    }
    c
}

/// The quadratic relation with its `(u-1) E_i` term dropped. Must fail.
pub fn mutated_quadratic_check(n: usize) -> CheckResult {
    let one = BtElement::unit(n).expect("level within guard");
    let mut c = CheckResult::new("mutated_quadratic");
    for i in 1..n {
        let wrong = plus(&one, &prod(&[e(i, n), t(i, n)]).scale(&u_minus_one()));
        c.record(prod(&[t(i, n), t(i, n)]) == wrong, || format!("i={i}"));
    }
    c
}

/// Whether the cubic relation with `u` replaced by `u + 1` fails.
pub fn mutated_cubic_fails(i: usize, n: usize) -> bool {
    !cubic_residue(i, n, 1).is_zero()
}

/// Products of `count` random basis pairs re-expand inside the label set
/// of size `Bell(n)·n!`, and each term carries at most one `T_{n-1}`.
pub fn closure_check(n: usize, count: usize, seed: u64) -> CheckResult {
    let labels: HashSet<Basis> = basis_labels(n).into_iter().collect();
    let mut rng = sampling::rng(seed);
    let pairs: Vec<(Basis, Basis)> = (0..count)
        .map(|_| {
            (
                sampling::random_basis(n, &mut rng),
                sampling::random_basis(n, &mut rng),
            )
        })
        .collect();
    let results = par::map(&pairs, |(a, b)| {
        let x = BtElement::term(*a, RatFunc::one()).expect("level within guard");
        let y = BtElement::term(*b, RatFunc::one()).expect("level within guard");
        x.mul(&y).expect("same level").terms().all(|(basis, _)| {
            labels.contains(basis)
                && basis
                    .perm
                    .reduced_word()
                    .iter()
                    .filter(|&&g| g == n - 1)
                    .count()
                    <= 1
        })
    });
    let mut c = CheckResult::new("basis_closure");
    for ((a, b), ok) in pairs.iter().zip(results) {
        c.record(ok, || format!("{a:?} * {b:?}"));
    }
    c
}

/// `(xy)z = x(yz)` on `count` random triples of small elements.
pub fn associativity_check(n: usize, count: usize, seed: u64) -> CheckResult {
    let mut rng = sampling::rng(seed);
    let triples: Vec<[BtElement; 3]> = (0..count)
        .map(|_| {
            [
                sampling::random_element(n, 2, &mut rng),
                sampling::random_element(n, 2, &mut rng),
                sampling::random_element(n, 2, &mut rng),
            ]
        })
        .collect();
    let results = par::map(&triples, |[x, y, z]| {
        let left = x.mul(y).and_then(|xy| xy.mul(z)).expect("same level");
        let right = y.mul(z).and_then(|yz| x.mul(&yz)).expect("same level");
        left == right
    });
    let mut c = CheckResult::new("associativity");
    for ([x, y, z], ok) in triples.iter().zip(results) {
        c.record(ok, || format!("x={x} y={y} z={z}"));
    }
    c
}
