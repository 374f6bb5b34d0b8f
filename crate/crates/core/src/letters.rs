//! The plactic monoid on letters `1..=n`.
//!
//! Knuth equivalence is decided two ways: by breadth-first closure under the
//! Knuth relations (slow, obviously correct) and by comparing RSK insertion
//! tableaux. The closure is the ground truth the faster paths are tested
//! against.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::column::Column;
use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

pub type Letter = u8;

/// Default cap on the size of a Knuth class explored by BFS.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// The BFS cap, overridable through `PLACTIC_MAX_STATES`.
pub fn max_states() -> usize {
    std::env::var("PLACTIC_MAX_STATES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_STATES)
}

pub fn check_word(w: &[Letter], n: usize) -> Result<()> {
    for &x in w {
        if x == 0 || x as usize > n {
            return Err(Error::LetterOutOfRange { letter: x as u32, n });
        }
    }
    Ok(())
}

pub fn content(w: &[Letter], n: usize) -> Multidegree {
    let mut d = Multidegree::zero(n);
    for &x in w {
        d.0[x as usize - 1] += 1;
    }
    d
}

/// Words obtained from `w` by one Knuth move at some position.
pub fn knuth_neighbors(w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for p in 0..w.len().saturating_sub(2) {
        let (a, b, c) = (w[p], w[p + 1], w[p + 2]);
        // ikj <-> kij with i <= j < k: swap the first two letters
        if (a <= c && c < b) || (b <= c && c < a) {
            let mut v = w.to_vec();
            v.swap(p, p + 1);
            out.push(v);
        }
        // jki <-> jik with i < j <= k: swap the last two letters
        if (c < a && a <= b) || (b < a && a <= c) {
            let mut v = w.to_vec();
            v.swap(p + 1, p + 2);
            out.push(v);
        }
    }
    out
}

/// The full Knuth class of `w`, in lexicographic order.
pub fn knuth_class(w: &[Letter], cap: usize) -> Result<BTreeSet<Vec<Letter>>> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(u) = queue.pop_front() {
        for v in knuth_neighbors(&u) {
            if seen.insert(v.clone()) {
                if seen.len() > cap {
                    return Err(Error::StateCapExceeded { cap });
                }
                queue.push_back(v);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Decides `u ≡ v` by exploring the Knuth class of `u`.
pub fn knuth_equivalent(u: &[Letter], v: &[Letter]) -> Result<bool> {
    if u.len() != v.len() {
        return Ok(false);
    }
    let mut cu = u.to_vec();
    let mut cv = v.to_vec();
    cu.sort_unstable();
    cv.sort_unstable();
    if cu != cv {
        return Ok(false);
    }
    Ok(knuth_class(u, max_states())?.contains(v))
}

/// The lexicographically least word of the Knuth class.
pub fn bfs_canonical(w: &[Letter]) -> Result<Vec<Letter>> {
    Ok(knuth_class(w, max_states())?.into_iter().next().unwrap_or_default())
}

/// A semistandard tableau stored by rows, top row first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau::default()
    }

    pub fn from_rows(rows: Vec<Vec<Letter>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::MalformedTableau(format!("row {r} is empty")));
            }
            if row.contains(&0) {
                return Err(Error::MalformedTableau("letter 0".into()));
            }
            if row.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::MalformedTableau(format!("row {r} is not weakly increasing")));
            }
            if r > 0 {
                let above = &self.rows[r - 1];
                if row.len() > above.len() {
                    return Err(Error::MalformedTableau(format!("row {r} longer than row above")));
                }
                if row.iter().zip(above).any(|(b, a)| b <= a) {
                    return Err(Error::MalformedTableau(format!("column strictness fails in row {r}")));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Classical row insertion: `x` bumps the leftmost entry greater than it.
    pub fn row_insert(&mut self, x: Letter) {
        let mut x = x;
        for row in &mut self.rows {
            match row.iter().position(|&y| y > x) {
                Some(i) => x = std::mem::replace(&mut row[i], x),
                None => {
                    row.push(x);
                    return;
                }
            }
        }
        self.rows.push(vec![x]);
    }

    /// Columns read left to right; each column is a set of letters.
    pub fn to_columns(&self) -> Vec<Column> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| {
                let mut col = Column::EMPTY;
                for row in self.rows.iter().take_while(|row| row.len() > c) {
                    col = col.with(row[c] as usize);
                }
                col
            })
            .collect()
    }

    /// Column reading word: columns left to right, each bottom to top.
    pub fn column_reading(&self) -> Vec<Letter> {
        columns_to_letters(&self.to_columns())
    }
}

/// The RSK insertion tableau of `w`.
pub fn rsk_normal_form(w: &[Letter]) -> Tableau {
    let mut t = Tableau::empty();
    for &x in w {
        t.row_insert(x);
    }
    t
}

pub fn tableau_to_columns(t: &Tableau) -> Vec<Column> {
    t.to_columns()
}

/// Concatenation of the decreasing readings of the columns.
pub fn columns_to_letters(cw: &[Column]) -> Vec<Letter> {
    cw.iter().flat_map(|c| c.letters_desc()).collect()
}

/// Rebuilds a tableau from its columns; rejects inputs that are not the
/// columns of a semistandard tableau.
pub fn columns_to_tableau(cw: &[Column]) -> Result<Tableau> {
    let height = cw.first().map_or(0, |c| c.len());
    let mut rows = vec![Vec::new(); height];
    for (i, col) in cw.iter().enumerate() {
        if col.is_empty() {
            return Err(Error::MalformedTableau(format!("column {i} is empty")));
        }
        for (r, x) in col.letters_asc().into_iter().enumerate() {
            if r >= height {
                return Err(Error::MalformedTableau(format!("column {i} taller than first")));
            }
            rows[r].push(x);
        }
    }
    let t = Tableau { rows };
    t.validate()?;
    if t.to_columns() != cw {
        return Err(Error::MalformedTableau("columns are not left justified".into()));
    }
    Ok(t)
}

/// All words of length `len` over `1..=n`, lexicographically.
pub fn all_words(n: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for w in &out {
            for x in 1..=n as Letter {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
