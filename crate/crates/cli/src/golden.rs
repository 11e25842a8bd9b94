//! Displayed matrices bundled as `fixtures/golden.txt`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use riordan::{Coeff, DenseMatrix, LowerTriMatrix, Poly, Rational};

const GOLDEN: &str = include_str!("../fixtures/golden.txt");

pub type Block = Vec<Vec<Poly>>;

fn parse(text: &str) -> Result<BTreeMap<String, Block>, String> {
    let mut out = BTreeMap::new();
    let mut current: Option<(String, Block)> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix("== ") {
            if let Some((n, b)) = current.take() {
                out.insert(n, b);
            }
            current = Some((name.trim().to_string(), Vec::new()));
            continue;
        }
        let (_, rows) = current.as_mut().ok_or_else(|| format!("line {}: entry before any block", i + 1))?;
        let row = line
            .split(';')
            .map(|e| e.trim().parse::<Poly>().map_err(|e| format!("line {}: {e}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if let Some((n, b)) = current {
        out.insert(n, b);
    }
    Ok(out)
}

pub fn blocks() -> &'static BTreeMap<String, Block> {
    static CELL: OnceLock<BTreeMap<String, Block>> = OnceLock::new();
    CELL.get_or_init(|| parse(GOLDEN).expect("bundled golden fixture parses"))
}

pub fn block(name: &str) -> Option<&'static Block> {
    blocks().get(name)
}

/// Anything whose entries can be compared against a golden block.
pub trait Entries {
    fn entry(&self, r: usize, c: usize) -> Option<Poly>;
}

pub trait ToPoly {
    fn to_poly(&self) -> Poly;
}

impl ToPoly for Rational {
    fn to_poly(&self) -> Poly {
        Poly::constant(self.clone())
    }
}

impl ToPoly for Poly {
    fn to_poly(&self) -> Poly {
        self.clone()
    }
}

impl<C: Coeff + ToPoly> Entries for LowerTriMatrix<C> {
    fn entry(&self, r: usize, c: usize) -> Option<Poly> {
        (r < self.size() && c < self.size()).then(|| self.get(r, c).to_poly())
    }
}

impl<C: Coeff + ToPoly> Entries for DenseMatrix<C> {
    fn entry(&self, r: usize, c: usize) -> Option<Poly> {
        (r < self.nrows() && c < self.ncols()).then(|| self.get(r, c).to_poly())
    }
}

/// First entry where `m` disagrees with the named block, as a message.
pub fn compare(name: &str, m: &impl Entries) -> Result<(), String> {
    let b = block(name).ok_or_else(|| format!("no golden block {name:?}"))?;
    for (r, row) in b.iter().enumerate() {
        for (c, want) in row.iter().enumerate() {
            match m.entry(r, c) {
                None => return Err(format!("({r}, {c}) outside the computed matrix")),
                Some(got) if &got != want => return Err(format!("({r}, {c}): got {got}, expected {want}")),
                Some(_) => {}
            }
        }
    }
    Ok(())
}

/// Number of displayed rows of a block.
pub fn rows(name: &str) -> usize {
    block(name).map_or(0, Vec::len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_blocks_parse() {
        let b = blocks();
        assert!(b.len() >= 30);
        assert_eq!(rows("a106566"), 7);
        assert_eq!(block("rna_source").unwrap()[1][0], Poly::constant(riordan::ratio(1, 2)));
        assert_eq!(block("probe_square").unwrap()[2][0], Poly::from_ints(&[2, -2]));
    }

    #[test]
    fn parse_rejects_orphans_and_garbage() {
        assert!(parse("1; 2\n").is_err());
        assert!(parse("== a\n1; q\n").is_err());
        let ok = parse("== a\n1; 0\n2; 1\n== b\n-1\n").unwrap();
        assert_eq!(ok["a"].len(), 2);
        assert_eq!(ok["b"][0][0], Poly::from_ints(&[-1]));
    }

    #[test]
    fn compare_reports_witness() {
        let m = LowerTriMatrix::<Rational>::identity(7);
        assert!(compare("a106566", &m).unwrap_err().starts_with("(2, 1)"));
        assert!(compare("missing", &m).is_err());
    }
}
