use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_braid_tokens, ParseError};
use crate::invariants::BraidWord;

/// A row of a knot table: header `name,n,word`; `word` is a token list
/// without the `n=` prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotTableRow {
    pub name: String,
    pub n: usize,
    pub word: String,
}

#[derive(Debug, Clone)]
pub struct TableEntry {
    pub row: KnotTableRow,
    pub braid: BraidWord,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("table is not valid CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("row {line} ({name}): {source}")]
    Row {
        line: usize,
        name: String,
        source: ParseError,
    },
}

pub fn load_table<R: Read>(reader: R) -> Result<Vec<TableEntry>, TableError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (idx, rec) in rdr.deserialize::<KnotTableRow>().enumerate() {
        let row = rec?;
        let braid = parse_braid_tokens(row.n, &row.word).map_err(|source| TableError::Row {
            line: idx + 2,
            name: row.name.clone(),
            source,
        })?;
        out.push(TableEntry { row, braid });
    }
    Ok(out)
}

const BUNDLED: &str = include_str!("../../data/knots.csv");

/// Torus knots and links on at most four strands with at most eight
/// crossings, plus a few small extras.
pub fn bundled_table() -> Vec<TableEntry> {
    load_table(BUNDLED.as_bytes()).expect("bundled table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braidio::closure_components;

    #[test]
    fn bundled_loads() {
        let t = bundled_table();
        assert!(t.len() >= 10);
        for e in &t {
            assert!(e.braid.len() <= 8, "{}", e.row.name);
            assert!(e.row.n <= 4);
        }
        let hopf = t.iter().find(|e| e.row.name == "hopf").unwrap();
        assert_eq!(closure_components(&hopf.braid), 2);
    }

    #[test]
    fn bad_rows_are_located() {
        let text = "name,n,word\nok,2,1 1\nbad,2,1 3\n";
        match load_table(text.as_bytes()) {
            Err(TableError::Row { line, name, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(name, "bad");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(load_table("name,n\nx,2\n".as_bytes()).is_err());
    }
}
