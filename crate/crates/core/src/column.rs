//! Columns and the binary operations `∨`, `∧` on them.
//!
//! A column is a strictly decreasing word, stored as a bitmask where bit
//! `i - 1` marks letter `i`. The product of two columns in the plactic monoid
//! is `a·b = (a ∨ b)·(a ∧ b)`, where `∧` collects the letters of `b` bumped
//! by Schensted insertion of the letters of `a`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::letters::Letter;

/// Largest supported alphabet.
pub const MAX_LETTERS: usize = 32;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Column(u32);

impl Column {
    /// The empty column, the unit of the monoid.
    pub const EMPTY: Column = Column(0);

    pub fn from_bits(bits: u32) -> Self {
        Column(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_letters(letters: &[usize]) -> Result<Self> {
        let mut c = Column::EMPTY;
        for &x in letters {
            if x == 0 || x > MAX_LETTERS {
                return Err(Error::InvalidColumn(format!("letter {x} out of range")));
            }
            if c.contains(x) {
                return Err(Error::InvalidColumn(format!("letter {x} repeated")));
            }
            c = c.with(x);
        }
        Ok(c)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        Column(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(x: usize) -> Self {
        Column::EMPTY.with(x)
    }

    #[must_use]
    pub fn with(self, x: usize) -> Self {
        Column(self.0 | 1 << (x - 1))
    }

    #[must_use]
    pub fn without(self, x: usize) -> Self {
        Column(self.0 & !(1 << (x - 1)))
    }

    pub fn contains(self, x: usize) -> bool {
        (1..=MAX_LETTERS).contains(&x) && self.0 & (1 << (x - 1)) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn max_letter(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn is_subset(self, other: Column) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: Column) -> Column {
        Column(self.0 | other.0)
    }

    #[must_use]
    pub fn minus(self, other: Column) -> Column {
        Column(self.0 & !other.0)
    }

    pub fn letters_asc(self) -> Vec<Letter> {
        (1..=MAX_LETTERS).filter(|&x| self.contains(x)).map(|x| x as Letter).collect()
    }

    /// The column read as a word (strictly decreasing).
    pub fn letters_desc(self) -> Vec<Letter> {
        let mut v = self.letters_asc();
        v.reverse();
        v
    }

    /// Fits in the alphabet `1..=n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(Column::full(n))
    }

    /// All columns over `1..=n` including the empty one, by bitmask.
    pub fn all(n: usize) -> Vec<Column> {
        (0..1u32 << n).map(Column).collect()
    }

    /// The nonempty columns over `1..=n`, increasing in column order.
    pub fn generators(n: usize) -> Vec<Column> {
        let mut v: Vec<Column> = (1..1u32 << n).map(Column).collect();
        v.sort();
        v
    }

    /// `wt(a) = (|a|, a_1, ..., a_n)`.
    pub fn wt(self, n: usize) -> Vec<i64> {
        let mut w = vec![self.len() as i64];
        w.extend((1..=n).map(|i| i64::from(self.contains(i))));
        w
    }
}

/// Column order: `a < b` iff `wt(a) > wt(b)` lexicographically.
impl Ord for Column {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        match other.len().cmp(&self.len()) {
            Ordering::Equal => {
                let d = (self.0 ^ other.0).trailing_zeros();
                if self.0 & (1 << d) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Column {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn column_less(a: Column, b: Column) -> bool {
    a < b
}

/// Deg-lex order on column words: length first, then left to right.
pub fn deglex_cmp(u: &[Column], v: &[Column]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

pub fn deglex_less(u: &[Column], v: &[Column]) -> bool {
    deglex_cmp(u, v) == Ordering::Less
}

/// Schensted insertion of a letter into a column. Returns the new column
/// and the bumped letter, if any.
pub fn insert_letter(x: usize, a: Column) -> (Column, Option<usize>) {
    let above = a.0 & !((1u32 << (x - 1)) - 1);
    if above == 0 {
        return (a.with(x), None);
    }
    let y = above.trailing_zeros() as usize + 1;
    (a.without(y).with(x), Some(y))
}

/// The pairing of letters of `a` with letters of `b` produced by inserting
/// the letters of `a` into `b` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionMatching {
    /// Pairs `(x, y)` with `x ∈ a`, `y ∈ b` and `y >= x`.
    pub pairs: Vec<(usize, usize)>,
    /// `b_a`: the matched letters of `b`.
    pub matched: Column,
    /// `b^a`: the unmatched letters of `b`.
    pub unmatched: Column,
}

pub fn connect(a: Column, b: Column) -> ConnectionMatching {
    let mut cur = b;
    let mut pairs = Vec::new();
    let mut matched = Column::EMPTY;
    for x in a.letters_asc() {
        let x = x as usize;
        let (next, bumped) = insert_letter(x, cur);
        if let Some(y) = bumped {
            debug_assert!(b.contains(y) && !matched.contains(y));
            pairs.push((x, y));
            matched = matched.with(y);
        }
        cur = next;
    }
    ConnectionMatching { pairs, matched, unmatched: b.minus(matched) }
}

/// `a ∨ b = a ∪ b^a`.
pub fn vee(a: Column, b: Column) -> Column {
    a.union(connect(a, b).unmatched)
}

/// `a ∧ b = b_a`.
pub fn wedge(a: Column, b: Column) -> Column {
    connect(a, b).matched
}

pub fn vee_wedge(a: Column, b: Column) -> (Column, Column) {
    let m = connect(a, b);
    (a.union(m.unmatched), m.matched)
}

/// `a·b` is a leading term of the column presentation.
pub fn is_leading(a: Column, b: Column) -> bool {
    let (v, w) = vee_wedge(a, b);
    v != a && w != b
}

/// The normal form of the two-column product `a·b`, with the empty column
/// standing for a missing factor.
pub fn product_normal_form(a: Column, b: Column) -> (Column, Column) {
    if is_leading(a, b) {
        vee_wedge(a, b)
    } else {
        (a, b)
    }
}

/// `a·b = b·a` in the plactic monoid.
pub fn commutes(a: Column, b: Column) -> bool {
    product_normal_form(a, b) == product_normal_form(b, a)
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let letters = self.letters_desc();
        if letters.iter().all(|&x| x <= 9) {
            for x in letters {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = letters.iter().map(u8::to_string).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{self}")
    }
}

/// Parses a strictly decreasing digit string such as `"21"`, a bracketed
/// list such as `"[12,3]"`, or `""`, `"∅"`, `"[]"` for the empty column.
impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "e" {
            return Ok(Column::EMPTY);
        }
        let letters: Vec<usize> = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if inner.trim().is_empty() {
                return Ok(Column::EMPTY);
            }
            inner
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| Error::InvalidColumn(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            let s = s.strip_prefix('e').unwrap_or(s);
            s.chars()
                .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::InvalidColumn(s.to_string())))
                .collect::<Result<_>>()?
        };
        if letters.windows(2).any(|p| p[0] <= p[1]) {
            return Err(Error::InvalidColumn(format!("{s} is not strictly decreasing")));
        }
        Column::from_letters(&letters)
    }
}

impl Serialize for Column {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters_desc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Column {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        Column::from_letters(&v).map_err(serde::de::Error::custom)
    }
}

/// One checked identity and its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<[Column; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub triples: usize,
    pub identities: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn total_failures(&self) -> usize {
        self.identities.iter().map(|c| c.failures).sum()
    }
}

type TriplePredicate = fn(Column, Column, Column) -> bool;

const IDENTITIES: [(&str, &str, TriplePredicate); 9] = [
    ("2.1", "a∨b = a∨c and a∧b = a∧c imply b = c", |a, b, c| {
        !(vee(a, b) == vee(a, c) && wedge(a, b) == wedge(a, c)) || b == c
    }),
    ("2.2", "a∨c = b∨c and a∧c = b∧c imply a = b", |a, b, c| {
        !(vee(a, c) == vee(b, c) && wedge(a, c) == wedge(b, c)) || a == b
    }),
    ("2.3", "a∨b = a iff a∧b = b, and a∧b = a iff a∨b = b", |a, b, _| {
        let (v, w) = vee_wedge(a, b);
        (v == a) == (w == b) && (w == a) == (v == b)
    }),
    ("2.4", "a∨a = a and a∧a = a", |a, _, _| vee(a, a) == a && wedge(a, a) == a),
    ("2.5", "a∨(a∧b) = a = a∧(a∨b) and (a∧b)∨b = b = (a∨b)∧b", |a, b, _| {
        let (v, w) = vee_wedge(a, b);
        vee(a, w) == a && wedge(a, v) == a && vee(w, b) == b && wedge(v, b) == b
    }),
    ("2.6", "(a∨b)∨((a∧b)∨c) = a∨(b∨c)", |a, b, c| {
        let (v, w) = vee_wedge(a, b);
        vee(v, vee(w, c)) == vee(a, vee(b, c))
    }),
    ("2.7", "(a∨b)∧((a∧b)∨c) = (a∧(b∨c))∨(b∧c)", |a, b, c| {
        let (v, w) = vee_wedge(a, b);
        let (bv, bw) = vee_wedge(b, c);
        wedge(v, vee(w, c)) == vee(wedge(a, bv), bw)
    }),
    ("2.8", "(a∧(b∨c))∧(b∧c) = (a∧b)∧c", |a, b, c| {
        let (bv, bw) = vee_wedge(b, c);
        wedge(wedge(a, bv), bw) == wedge(wedge(a, b), c)
    }),
    ("2.9", "a∨b = b iff a∧b = a", |a, b, _| (vee(a, b) == b) == (wedge(a, b) == a)),
];

/// Checks the nine column identities over all triples of columns over
/// `1..=n`, including the empty column.
pub fn verify_identities(n: usize) -> IdentityReport {
    let cols = Column::all(n);
    let mut identities: Vec<IdentityCheck> = IDENTITIES
        .iter()
        .map(|&(name, statement, _)| IdentityCheck { name, statement, checked: 0, failures: 0, first_counterexample: None })
        .collect();
    for &a in &cols {
        for &b in &cols {
            for &c in &cols {
                for (check, (_, _, pred)) in identities.iter_mut().zip(IDENTITIES.iter()) {
                    check.checked += 1;
                    if !pred(a, b, c) {
                        check.failures += 1;
                        check.first_counterexample.get_or_insert([a, b, c]);
                    }
                }
            }
        }
    }
    IdentityReport { n, triples: cols.len().pow(3), identities }
}

/// First triple (in bitmask order) with `(a∨b)∨c ≠ a∨(b∨c)`.
pub fn vee_associativity_counterexample(n: usize) -> Option<[Column; 3]> {
    let cols = Column::generators(n);
    for &a in &cols {
        for &b in &cols {
            for &c in &cols {
                if vee(vee(a, b), c) != vee(a, vee(b, c)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// First triple with `(a∧b)∧c ≠ a∧(b∧c)`.
pub fn wedge_associativity_counterexample(n: usize) -> Option<[Column; 3]> {
    let cols = Column::generators(n);
    for &a in &cols {
        for &b in &cols {
            for &c in &cols {
                if wedge(wedge(a, b), c) != wedge(a, wedge(b, c)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}
