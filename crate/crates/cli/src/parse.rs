//! Parsers for command-line values: fields, letter words, columns and
//! chains.

use std::str::FromStr;

use plactic_core::letters::Letter;
use plactic_core::rewrite::{Coeff, Presentation};
use plactic_core::{Column, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(PrimeField),
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        let p = s
            .strip_prefix("gfp:")
            .ok_or_else(|| format!("field must be `rational` or `gfp:<prime>`, got `{s}`"))?;
        let p: u64 = p.parse().map_err(|_| format!("`{p}` is not an integer"))?;
        PrimeField::new(p).map(FieldSpec::Prime).ok_or_else(|| format!("{p} is not an odd prime below 2^31"))
    }
}

impl FieldSpec {
    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rational => "rational".to_string(),
            FieldSpec::Prime(f) => format!("gfp:{}", f.modulus()),
        }
    }
}

/// A letter word given as digits (`"3121"`) or as a bracketed list
/// (`"[1,12,3]"`).
pub fn letter_word(s: &str) -> Result<Vec<Letter>, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        return inner
            .split(',')
            .map(|p| p.trim().parse::<Letter>().map_err(|_| format!("bad letter `{p}`")))
            .collect();
    }
    s.chars()
        .map(|c| c.to_digit(10).map(|d| d as Letter).ok_or_else(|| format!("bad letter `{c}`")))
        .collect()
}

pub fn column(s: &str, n: usize) -> Result<Column, String> {
    let c: Column = s.parse().map_err(|e| format!("{e}"))?;
    if !c.within(n) {
        return Err(format!("column {c} uses letters above {n}"));
    }
    Ok(c)
}

/// A column word: columns separated by `.` or `·`, e.g. `"21.2"`.
pub fn column_word(s: &str, n: usize) -> Result<Vec<Column>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(['.', '·']).map(|c| column(c, n)).collect()
}

/// A chain such as `"[1|21]"` or `"1|21"` as a tuple of generator words.
pub fn chain(s: &str, p: &Presentation, n: usize) -> Result<Vec<Vec<usize>>, String> {
    let s = s.trim();
    let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split('|')
        .map(|entry| {
            let cols = column_word(entry, n)?;
            let w = p.columns_to_word(&cols).map_err(|e| e.to_string())?;
            if w.is_empty() {
                return Err("chain entries must be nonempty".to_string());
            }
            Ok(w)
        })
        .collect()
}

/// An augmentation pair `ε(x),ε(y)` of rationals, e.g. `"2,-2"`.
pub fn eps_pair(s: &str) -> Result<(Coeff, Coeff), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<Coeff>().map_err(|_| format!("bad rational `{t}`"));
    Ok((parse(a)?, parse(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("gfp:7".parse::<FieldSpec>().unwrap().label(), "gfp:7");
        assert!("gfp:2".parse::<FieldSpec>().is_err());
        assert!("gfp:9".parse::<FieldSpec>().is_err());
        assert!("real".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn words_and_columns() {
        assert_eq!(letter_word("3121").unwrap(), vec![3, 1, 2, 1]);
        assert_eq!(letter_word("[1,12]").unwrap(), vec![1, 12]);
        assert!(letter_word("").unwrap().is_empty());
        assert_eq!(column_word("21.2", 2).unwrap().len(), 2);
        assert!(column("12", 3).is_err());
        assert!(column("31", 2).is_err());
    }

    #[test]
    fn eps() {
        let (a, b) = eps_pair("2,-2").unwrap();
        assert_eq!((a, b), (Coeff::from_integer(2), Coeff::from_integer(-2)));
        assert!(eps_pair("2").is_err());
    }
}
