use rand::Rng;

use crate::invariants::{
    delta_bar, gamma_bar, BraidWord, InvariantError, SbLetter, SingularBraidWord,
};
use crate::par;
use crate::report::Report;
use crate::sampling;

/// `g w g^{-1}`.
pub fn markov_conjugate(w: &BraidWord, g: &BraidWord) -> Result<BraidWord, InvariantError> {
    g.concat(w)?.concat(&g.inverse())
}

/// `w σ_n^{±1}` on `n + 1` strands.
pub fn markov_stabilize(w: &BraidWord, positive: bool) -> BraidWord {
    let n = w.n();
    let mut letters = w.letters().to_vec();
    letters.push(if positive { n as i32 } else { -(n as i32) });
    BraidWord::new(n + 1, letters).expect("new letter is in range")
}

/// `g ω g^{-1}` for a classical `g`.
pub fn markov_conjugate_singular(
    w: &SingularBraidWord,
    g: &BraidWord,
) -> Result<SingularBraidWord, InvariantError> {
    let gs = SingularBraidWord::from_classical(g);
    let gi = SingularBraidWord::from_classical(&g.inverse());
    gs.concat(w)?.concat(&gi)
}

/// Moves the first `k` letters to the end: `αβ ↦ βα`.
pub fn rotate_singular(w: &SingularBraidWord, k: usize) -> SingularBraidWord {
    let mut letters = w.letters().to_vec();
    if !letters.is_empty() {
        let k = k % letters.len();
        letters.rotate_left(k);
    }
    SingularBraidWord::new(w.n(), letters).expect("same letters")
}

pub fn markov_stabilize_singular(w: &SingularBraidWord, positive: bool) -> SingularBraidWord {
    let n = w.n();
    let mut letters = w.letters().to_vec();
    letters.push(SbLetter::Sigma(if positive {
        n as i32
    } else {
        -(n as i32)
    }));
    SingularBraidWord::new(n + 1, letters).expect("new letter is in range")
}

/// Number of components of the closure: cycles of the strand permutation.
pub fn closure_components(w: &BraidWord) -> usize {
    w.permutation().cycle_count()
}

fn random_sigma<R: Rng>(n: usize, rng: &mut R) -> i32 {
    let i = rng.gen_range(1..n) as i32;
    if rng.gen_bool(0.5) {
        i
    } else {
        -i
    }
}

/// A random word of length `len` on `n` strands.
pub fn random_braid<R: Rng>(n: usize, len: usize, rng: &mut R) -> BraidWord {
    let letters = if n < 2 {
        Vec::new()
    } else {
        (0..len).map(|_| random_sigma(n, rng)).collect()
    };
    BraidWord::new(n, letters).expect("letters in range")
}

/// A random singular word of length `len >= 1` on `n >= 2` strands with
/// at least one `τ`.
pub fn random_singular<R: Rng>(n: usize, len: usize, rng: &mut R) -> SingularBraidWord {
    assert!(n >= 2 && len >= 1, "need a strand pair and one letter");
    let mut letters: Vec<SbLetter> = (0..len)
        .map(|_| {
            if rng.gen_bool(0.3) {
                SbLetter::Tau(rng.gen_range(1..n))
            } else {
                SbLetter::Sigma(random_sigma(n, rng))
            }
        })
        .collect();
    if !letters.iter().any(|l| matches!(l, SbLetter::Tau(_))) {
        let pos = rng.gen_range(0..len);
        letters[pos] = SbLetter::Tau(rng.gen_range(1..n));
    }
    SingularBraidWord::new(n, letters).expect("letters in range")
}

/// Parameters of the randomized Markov-invariance batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkovConfig {
    /// Largest strand count before stabilization.
    pub max_n: usize,
    pub count: usize,
    pub seed: u64,
    pub max_len: usize,
    /// Conjugations per word.
    pub conjugations: usize,
    pub max_conjugator_len: usize,
    /// Also run the singular scheme.
    pub singular: bool,
}

impl MarkovConfig {
    pub fn new(max_n: usize, count: usize, seed: u64) -> Self {
        MarkovConfig {
            max_n,
            count,
            seed,
            max_len: 12,
            conjugations: 3,
            max_conjugator_len: 4,
            singular: true,
        }
    }
}

struct Case {
    word: BraidWord,
    conjugators: Vec<BraidWord>,
}

struct SingularCase {
    word: SingularBraidWord,
    conjugators: Vec<BraidWord>,
    rotation: usize,
}

/// Checks that `Δ̄` is unchanged by conjugation and by both stabilizations
/// on `count` random words, and likewise `Γ̄` on singular words with at
/// least one `τ` (conjugation by classical braids, cyclic rotation, and
/// both stabilizations).
pub fn markov_test(cfg: &MarkovConfig) -> Result<Report, InvariantError> {
    let mut report = Report::new(format!(
        "Markov invariance, n <= {}, {} words",
        cfg.max_n, cfg.count
    ));
    report.seed = Some(cfg.seed);
    let mut rng = sampling::rng(cfg.seed);
    let max_n = cfg.max_n.max(1);
    let conjugators = |n: usize, rng: &mut sampling::SuiteRng| -> Vec<BraidWord> {
        (0..cfg.conjugations)
            .map(|_| {
                let len = rng.gen_range(1..=cfg.max_conjugator_len.max(1));
                random_braid(n, len, rng)
            })
            .collect()
    };
    let cases: Vec<Case> = (0..cfg.count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let len = rng.gen_range(0..=cfg.max_len);
            let word = random_braid(n, len, &mut rng);
            Case {
                conjugators: conjugators(n, &mut rng),
                word,
            }
        })
        .collect();
    let results = par::map(&cases, |c| -> Result<(bool, bool, bool), InvariantError> {
        let base = delta_bar(&c.word)?;
        let mut conj_ok = true;
        for g in &c.conjugators {
            conj_ok &= delta_bar(&markov_conjugate(&c.word, g)?)? == base;
        }
        let plus = delta_bar(&markov_stabilize(&c.word, true))? == base;
        let minus = delta_bar(&markov_stabilize(&c.word, false))? == base;
        Ok((conj_ok, plus, minus))
    });
    for (c, r) in cases.iter().zip(results) {
        let (conj, plus, minus) = r?;
        let show = || crate::braidio::render_braid(&c.word);
        report.check("delta_conjugation").record(conj, show);
        report.check("delta_stabilize_positive").record(plus, show);
        report.check("delta_stabilize_negative").record(minus, show);
    }

    if cfg.singular && max_n >= 2 {
        let cases: Vec<SingularCase> = (0..cfg.count)
            .map(|_| {
                let n = rng.gen_range(2..=max_n);
                let len = rng.gen_range(1..=cfg.max_len.max(1));
                let word = random_singular(n, len, &mut rng);
                SingularCase {
                    conjugators: conjugators(n, &mut rng),
                    rotation: rng.gen_range(0..len),
                    word,
                }
            })
            .collect();
        let results = par::map(&cases, |c| -> Result<(bool, bool, bool), InvariantError> {
            let base = gamma_bar(&c.word)?;
            let mut conj_ok = gamma_bar(&rotate_singular(&c.word, c.rotation))? == base;
            for g in &c.conjugators {
                conj_ok &= gamma_bar(&markov_conjugate_singular(&c.word, g)?)? == base;
            }
            let plus = gamma_bar(&markov_stabilize_singular(&c.word, true))? == base;
            let minus = gamma_bar(&markov_stabilize_singular(&c.word, false))? == base;
            Ok((conj_ok, plus, minus))
        });
        for (c, r) in cases.iter().zip(results) {
            let (conj, plus, minus) = r?;
            let show = || crate::braidio::render_singular(&c.word);
            report.check("gamma_conjugation").record(conj, show);
            report.check("gamma_stabilize_positive").record(plus, show);
            report.check("gamma_stabilize_negative").record(minus, show);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidio::parse_braid;

    #[test]
    fn move_examples() {
        let w = parse_braid("n=3; 1 -2").unwrap();
        let e = BraidWord::identity(3).unwrap();
        assert_eq!(markov_conjugate(&w, &e).unwrap(), w);
        let s = markov_stabilize(&BraidWord::identity(1).unwrap(), true);
        assert_eq!(crate::braidio::render_braid(&s), "n=2; 1");
    }

    #[test]
    fn component_counts() {
        assert_eq!(closure_components(&parse_braid("n=2; 1 1").unwrap()), 2);
        assert_eq!(closure_components(&parse_braid("n=2; 1 1 1").unwrap()), 1);
        assert_eq!(closure_components(&parse_braid("n=3;").unwrap()), 3);
        let w = parse_braid("n=3; 1 -2 2 1").unwrap();
        let c = closure_components(&w);
        assert_eq!(closure_components(&markov_stabilize(&w, true)), c);
        assert_eq!(closure_components(&markov_stabilize(&w, false)), c);
    }

    #[test]
    fn small_batch_passes() {
        let mut cfg = MarkovConfig::new(3, 10, 5);
        cfg.max_len = 6;
        let r = markov_test(&cfg).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn singular_words_have_tau() {
        let mut rng = sampling::rng(3);
        for _ in 0..50 {
            assert!(random_singular(3, 4, &mut rng).tau_count() >= 1);
        }
    }
}
