//! Word parsing and invariant consistency under Markov moves and evaluation.

use num_rational::BigRational;
use proptest::prelude::*;

use braidties::braidio::{
    markov_conjugate, markov_stabilize, parse_braid, parse_singular, random_braid, render_braid,
    render_singular,
};
use braidties::invariants::{delta_bar, BraidWord, SbLetter, SingularBraidWord};
use braidties::sampling::rng;
use braidties::scalars::ScalarError;

fn braid() -> impl Strategy<Value = BraidWord> {
    (1usize..=5).prop_flat_map(|n| {
        let letters = if n == 1 {
            Just(Vec::new()).boxed()
        } else {
            let k = (n - 1) as i32;
            prop::collection::vec((1..=k, any::<bool>()), 0..10)
                .prop_map(|v| v.into_iter().map(|(i, s)| if s { i } else { -i }).collect())
                .boxed()
        };
        letters.prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

fn singular() -> impl Strategy<Value = SingularBraidWord> {
    (2usize..=5).prop_flat_map(|n| {
        let k = n - 1;
        prop::collection::vec((1..=k, 0u8..3), 0..10).prop_map(move |v| {
            let letters = v
                .into_iter()
                .map(|(i, kind)| match kind {
                    0 => SbLetter::Sigma(i as i32),
                    1 => SbLetter::Sigma(-(i as i32)),
                    _ => SbLetter::Tau(i),
                })
                .collect();
            SingularBraidWord::new(n, letters).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn braid_round_trip(w in braid()) {
        let text = render_braid(&w);
        prop_assert_eq!(parse_braid(&text).unwrap(), w.clone());
        prop_assert_eq!(render_braid(&parse_braid(&text).unwrap()), text);
    }

    #[test]
    fn singular_round_trip(w in singular()) {
        let text = render_singular(&w);
        prop_assert_eq!(parse_singular(&text).unwrap(), w);
    }

    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,40}") {
        let _ = parse_braid(&s);
        let _ = parse_singular(&s);
    }

    #[test]
    fn near_miss_text_never_panics(s in "[ n=;t0-9-]{0,30}") {
        let a = parse_braid(&s);
        let b = parse_singular(&s);
        // A classical parse implies a singular parse of the same word.
        if let Ok(w) = a {
            prop_assert_eq!(b.unwrap(), SingularBraidWord::from_classical(&w));
        }
    }
}

#[test]
fn invalid_corpus_is_rejected() {
    let corpus = [
        "",
        "n",
        "n=",
        "n=;",
        "n=0;",
        "n=-2; 1",
        "n=2",
        "n=2 1",
        "n=2; 2",
        "n=2; -2",
        "n=2; 0",
        "n=2; t",
        "n=2; t0",
        "n=2; 1,1",
        "n=2; +1",
        "n=2; --1",
        "n=2; 1.0",
        "n=99999999999999999999999; 1",
        "m=2; 1",
        "n=2; ; 1",
        "n=2; σ1",
    ];
    for text in corpus {
        assert!(parse_singular(text).is_err(), "{text:?}");
        assert!(parse_braid(text).is_err(), "{text:?}");
    }
    assert!(parse_braid("n=3; t1").is_err());
    assert!(parse_singular("n=3; t1").is_ok());
}

fn small(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn invariant_survives_moves_at_points(seed in any::<u64>(), n in 1usize..=3, len in 0usize..6) {
        let mut r = rng(seed);
        let w = random_braid(n, len, &mut r);
        let g = random_braid(n, 2, &mut r);
        let base = delta_bar(&w).unwrap();
        let conj = delta_bar(&markov_conjugate(&w, &g).unwrap()).unwrap();
        let stab = delta_bar(&markov_stabilize(&w, seed % 2 == 0)).unwrap();
        prop_assert_eq!(&conj, &base);
        prop_assert_eq!(&stab, &base);
        // Evaluating first and comparing must agree with symbolic equality.
        for pt in [
            [small(2, 1), small(3, 1), small(5, 1)],
            [small(-1, 3), small(7, 2), small(1, 4)],
        ] {
            match (base.eval(&pt), stab.eval(&pt)) {
                (Err(ScalarError::PoleAtPoint), Err(ScalarError::PoleAtPoint)) => {}
                (x, y) => prop_assert_eq!(x.unwrap(), y.unwrap()),
            }
        }
    }
}
