//! Text input and output for braid words, Markov moves, the knot table,
//! and the randomized Markov-invariance batch.
//!
//! Grammar: `n=<int> ; <token>*` where a token is `<int>` (`σ_i`),
//! `-<int>` (`σ_i^{-1}`) or `t<int>` (`τ_i`), separated by whitespace.

mod moves;
mod table;

pub use moves::{
    closure_components, markov_conjugate, markov_conjugate_singular, markov_stabilize,
    markov_stabilize_singular, markov_test, random_braid, random_singular, rotate_singular,
    MarkovConfig,
};
pub use table::{bundled_table, load_table, KnotTableRow, TableEntry, TableError};

use thiserror::Error;

use crate::invariants::{BraidWord, SbLetter, SingularBraidWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("token `{token}` at column {pos} is outside 1..{n}")]
    IndexOutOfRange { pos: usize, token: String, n: usize },
    #[error("singular crossing `{token}` at column {pos} in a classical braid")]
    TauInClassicalContext { pos: usize, token: String },
}

/// Columns are 1-based character offsets into the input.
fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos: pos + 1,
        msg: msg.into(),
    }
}

/// Splits `n=<int>;` off the front and returns `(n, body, body_offset)`.
fn split_header(text: &str) -> Result<(usize, &str, usize), ParseError> {
    let lead = text.len() - text.trim_start().len();
    let rest = &text[lead..];
    let Some(after_n) = rest.strip_prefix('n') else {
        return Err(syntax(lead, "expected `n=`"));
    };
    let eq_off = lead + 1 + (after_n.len() - after_n.trim_start().len());
    let Some(after_eq) = text[eq_off..].strip_prefix('=') else {
        return Err(syntax(eq_off, "expected `=` after `n`"));
    };
    let num_off = eq_off + 1 + (after_eq.len() - after_eq.trim_start().len());
    let digits: String = text[num_off..]
        .chars()
        .take_while(|c| c.is_ascii_digit())
        .collect();
    if digits.is_empty() {
        return Err(syntax(num_off, "expected a strand count"));
    }
    let n: usize = digits
        .parse()
        .map_err(|_| syntax(num_off, "strand count too large"))?;
    if n == 0 {
        return Err(syntax(num_off, "strand count must be positive"));
    }
    let after_num = num_off + digits.len();
    let tail = &text[after_num..];
    let semi_off = after_num + (tail.len() - tail.trim_start().len());
    if !text[semi_off..].starts_with(';') {
        return Err(syntax(semi_off, "expected `;` after the strand count"));
    }
    Ok((n, &text[semi_off + 1..], semi_off + 1))
}

/// Tokens of a body with their byte offsets.
fn tokens(body: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    body.split_whitespace().map(move |tok| {
        let local = tok.as_ptr() as usize - body.as_ptr() as usize;
        (offset + local, tok)
    })
}

fn parse_index(tok: &str, digits: &str, pos: usize, n: usize) -> Result<usize, ParseError> {
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(syntax(pos, format!("bad token `{tok}`")));
    }
    match digits.parse::<usize>() {
        Ok(i) if i >= 1 && i < n => Ok(i),
        _ => Err(ParseError::IndexOutOfRange {
            pos: pos + 1,
            token: tok.to_string(),
            n,
        }),
    }
}

fn parse_letter(tok: &str, pos: usize, n: usize) -> Result<SbLetter, ParseError> {
    if let Some(d) = tok.strip_prefix('t') {
        return Ok(SbLetter::Tau(parse_index(tok, d, pos, n)?));
    }
    if let Some(d) = tok.strip_prefix('-') {
        return Ok(SbLetter::Sigma(-(parse_index(tok, d, pos, n)? as i32)));
    }
    Ok(SbLetter::Sigma(parse_index(tok, tok, pos, n)? as i32))
}

/// Parses a token list (no `n=` header) for `n` strands.
pub fn parse_singular_tokens(n: usize, body: &str) -> Result<SingularBraidWord, ParseError> {
    parse_body(n, body, 0)
}

/// Parses a classical token list (no `n=` header) for `n` strands.
pub fn parse_braid_tokens(n: usize, body: &str) -> Result<BraidWord, ParseError> {
    classical(parse_body(n, body, 0)?, body, 0)
}

fn parse_body(n: usize, body: &str, offset: usize) -> Result<SingularBraidWord, ParseError> {
    if n == 0 {
        return Err(syntax(0, "strand count must be positive"));
    }
    let mut letters = Vec::new();
    for (pos, tok) in tokens(body, offset) {
        letters.push(parse_letter(tok, pos, n)?);
    }
    Ok(SingularBraidWord::new(n, letters).expect("letters validated"))
}

fn classical(w: SingularBraidWord, body: &str, offset: usize) -> Result<BraidWord, ParseError> {
    let mut letters = Vec::with_capacity(w.letters().len());
    for (l, (pos, tok)) in w.letters().iter().zip(tokens(body, offset)) {
        match l {
            SbLetter::Sigma(s) => letters.push(*s),
            SbLetter::Tau(_) => {
                return Err(ParseError::TauInClassicalContext {
                    pos: pos + 1,
                    token: tok.to_string(),
                })
            }
        }
    }
    Ok(BraidWord::new(w.n(), letters).expect("letters validated"))
}

/// Parses `n=<int>; tokens` into a classical braid word.
pub fn parse_braid(text: &str) -> Result<BraidWord, ParseError> {
    let (n, body, off) = split_header(text)?;
    classical(parse_body(n, body, off)?, body, off)
}

/// Parses `n=<int>; tokens` into a singular braid word.
pub fn parse_singular(text: &str) -> Result<SingularBraidWord, ParseError> {
    let (n, body, off) = split_header(text)?;
    parse_body(n, body, off)
}

pub fn render_braid(w: &BraidWord) -> String {
    if w.is_empty() {
        format!("n={};", w.n())
    } else {
        format!("n={}; {}", w.n(), w)
    }
}

pub fn render_singular(w: &SingularBraidWord) -> String {
    if w.letters().is_empty() {
        format!("n={};", w.n())
    } else {
        format!("n={}; {}", w.n(), w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let w = parse_braid("n=2; 1 1").unwrap();
        assert_eq!((w.n(), w.letters()), (2, &[1, 1][..]));
        let w = parse_braid("n=2; -1 -1 -1").unwrap();
        assert_eq!(w.letters(), &[-1, -1, -1]);
        let w = parse_singular("n=3; 1 t2 -1").unwrap();
        assert_eq!(
            w.letters(),
            &[SbLetter::Sigma(1), SbLetter::Tau(2), SbLetter::Sigma(-1)]
        );
        assert!(parse_braid("n=1;").unwrap().is_empty());
        assert_eq!(parse_braid("  n = 3 ;2").unwrap().letters(), &[2]);
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(
            parse_braid("n=3; 1 t2"),
            Err(ParseError::TauInClassicalContext {
                pos: 8,
                token: "t2".into()
            })
        );
        assert_eq!(
            parse_braid("n=2; 1 2"),
            Err(ParseError::IndexOutOfRange {
                pos: 8,
                token: "2".into(),
                n: 2
            })
        );
        assert!(matches!(
            parse_braid("n=2; 1 x"),
            Err(ParseError::Syntax { pos: 8, .. })
        ));
        assert!(matches!(
            parse_braid("m=2; 1"),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_braid("n=2 1"),
            Err(ParseError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_braid("n=0;"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_braid("n=2; --1"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_braid("n=2; 0"),
            Err(ParseError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_braid(""),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
    }

    #[test]
    fn round_trip() {
        for text in ["n=2; 1 1", "n=1;", "n=4; 3 -2 1 -3"] {
            let w = parse_braid(text).unwrap();
            assert_eq!(render_braid(&w), text);
        }
        let w = parse_singular("n=3; t1 -2 t2").unwrap();
        assert_eq!(parse_singular(&render_singular(&w)).unwrap(), w);
    }
}
