//! Closed-form differentials for the column presentation of the plactic
//! monoid.
//!
//! For a chain `[a1|...|aℓ]` the differential is a sum of three families:
//!
//! * `L_i`, `0 <= i < ℓ`: sign `(-1)^i`, left coefficient
//!   `a1 ∨ (a2 ∨ ... ∨ a_{i+1})`, tuple
//!   `[a1∧(a2∨...∨a_{i+1}) | ... | a_i∧a_{i+1} | a_{i+2} | ... | aℓ]`;
//! * `R_j`, `1 <= j <= ℓ`: sign `(-1)^j`, coefficient
//!   `ε(((a_j∧a_{j+1})∧...)∧aℓ)` (a right coefficient in bimodule mode),
//!   tuple `[a1|...|a_{j-1} | a_j∨a_{j+1} | (a_j∧a_{j+1})∨a_{j+2} | ... | (a_j∧...∧a_{ℓ-1})∨aℓ]`;
//! * `W_{m,l,k}`: tuples where a right-moving hole started at `m` meets a
//!   second hole and their product collapses to the unit.
//!
//! Which `L`/`R` tuples vanish and the exact shape of the `W` family admit
//! several readings; [`ClosedVariant`] selects one and the reading that
//! agrees with the Morse path sum is chosen by search.

use serde::Serialize;

use super::{enumerate_chains, DSquaredReport, Mode, ModVec, MorseEngine, Term, Tuple};
use crate::column::{is_leading, vee, wedge, Column};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rewrite::Presentation;

/// When an `L` or `R` tuple is dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Vanishing {
    /// `L̂_i = 0` iff `a_j∨a_{j+1} = a_j∨(a_{j+1}∨a_{j+2})` and
    /// `R̂_i = 0` iff `a_j∧a_{j+1} = (a_j∧a_{j+1})∧a_{j+2}` for some `j` in
    /// `i..=ℓ-2`.
    Displayed,
    /// The two conditions above exchanged between `L̂` and `R̂`.
    Swapped,
    /// A tuple vanishes iff it is not an Anick chain.
    Structural,
}

/// The two readings offered for each of the `b` and `c` sequences of a
/// `W` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClosedVariant {
    pub vanishing: Vanishing,
    /// `None` drops the `W` family entirely.
    pub w: Option<(Reading, Reading)>,
}

impl ClosedVariant {
    pub fn all() -> Vec<ClosedVariant> {
        let mut out = Vec::new();
        for vanishing in [Vanishing::Displayed, Vanishing::Swapped, Vanishing::Structural] {
            out.push(ClosedVariant { vanishing, w: None });
            for b in [Reading::First, Reading::Second] {
                for c in [Reading::First, Reading::Second] {
                    out.push(ClosedVariant { vanishing, w: Some((b, c)) });
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let v = match self.vanishing {
            Vanishing::Displayed => "displayed",
            Vanishing::Swapped => "swapped",
            Vanishing::Structural => "structural",
        };
        match self.w {
            None => format!("{v}/no-W"),
            Some((b, c)) => format!("{v}/b{}-c{}", reading_index(b), reading_index(c)),
        }
    }
}

fn reading_index(r: Reading) -> u8 {
    match r {
        Reading::First => 1,
        Reading::Second => 2,
    }
}

/// `x0 ∨ (x1 ∨ (... ∨ xr))`.
pub fn vee_right(xs: &[Column]) -> Column {
    let mut it = xs.iter().rev();
    let mut acc = *it.next().expect("nonempty");
    for &x in it {
        acc = vee(x, acc);
    }
    acc
}

/// `((x0 ∧ x1) ∧ ...) ∧ xr`.
pub fn wedge_left(xs: &[Column]) -> Column {
    let mut it = xs.iter();
    let mut acc = *it.next().expect("nonempty");
    for &x in it {
        acc = wedge(acc, x);
    }
    acc
}

/// The hole pushed right through a window: entries
/// `x0∨x1, (x0∧x1)∨x2, ..., (x0∧...∧x_{r-1})∨x_r`, then `x0∧...∧x_r`.
fn right_sweep(xs: &[Column]) -> Vec<Column> {
    let mut out = Vec::with_capacity(xs.len());
    for t in 1..xs.len() {
        out.push(vee(wedge_left(&xs[..t]), xs[t]));
    }
    out.push(wedge_left(xs));
    out
}

/// The hole pushed left through a window: entries `x0∨...∨x_r`, then
/// `x_k ∧ (x_{k+1}∨...∨x_r)` for `k = 0..r`.
fn left_sweep(xs: &[Column]) -> Vec<Column> {
    let mut out = Vec::with_capacity(xs.len());
    out.push(vee_right(xs));
    for k in 0..xs.len().saturating_sub(1) {
        out.push(wedge(xs[k], vee_right(&xs[k + 1..])));
    }
    out
}

/// `L̂_i` (without vanishing) and its coefficient column.
pub fn l_hat(a: &[Column], i: usize) -> (Column, Vec<Column>) {
    let coeff = vee_right(&a[..=i]);
    let mut t: Vec<Column> = (0..i).map(|k| wedge(a[k], vee_right(&a[k + 1..=i]))).collect();
    t.extend_from_slice(&a[i + 1..]);
    (coeff, t)
}

/// `R̂_j` (1-based `j`, without vanishing) and its coefficient column.
pub fn r_hat(a: &[Column], j: usize) -> (Column, Vec<Column>) {
    let coeff = wedge_left(&a[j - 1..]);
    let mut t = a[..j - 1].to_vec();
    if j < a.len() {
        let sweep = right_sweep(&a[j - 1..]);
        t.extend_from_slice(&sweep[..sweep.len() - 1]);
    }
    (coeff, t)
}

fn is_column_chain(t: &[Column]) -> bool {
    t.iter().all(|c| !c.is_empty()) && t.windows(2).all(|p| is_leading(p[0], p[1]))
}

fn displayed_l_vanishes(a: &[Column], i: usize) -> bool {
    // 1-based j in i..=ℓ-2 is 0-based j-1
    (i.max(1)..=a.len().saturating_sub(2)).any(|j| {
        let (x, y, z) = (a[j - 1], a[j], a[j + 1]);
        vee(x, y) == vee(x, vee(y, z))
    })
}

fn displayed_r_vanishes(a: &[Column], i: usize) -> bool {
    (i.max(1)..=a.len().saturating_sub(2)).any(|j| {
        let (x, y, z) = (a[j - 1], a[j], a[j + 1]);
        wedge(x, y) == wedge(wedge(x, y), z)
    })
}

/// One `W_{m,l,k}` tuple and its sign, or `None` when the collapse
/// condition fails.
fn w_term(a: &[Column], m: usize, l: usize, k: usize, b_reading: Reading, c_reading: Reading) -> Option<(i64, Vec<Column>)> {
    let ell = a.len();
    let (m0, c0) = (m - 1, m - 1 + l + 1);
    if c0 + k > ell {
        return None;
    }
    let b_window = &a[m0..=m0 + l];
    let c_window = &a[c0..c0 + k];
    let (b, b_sign) = match b_reading {
        Reading::First => (right_sweep(b_window), 1),
        Reading::Second => (left_sweep(b_window), -1),
    };
    let (c, c_sign) = match c_reading {
        Reading::First => (left_sweep(c_window), -1),
        Reading::Second => (right_sweep(c_window), 1),
    };
    let b_last = *b.last().expect("nonempty");
    let c_first = c[0];
    if !wedge(b_last, c_first).is_empty() {
        return None;
    }
    let mut t = a[..m0].to_vec();
    t.extend_from_slice(&b[..b.len() - 1]);
    t.push(vee(b_last, c_first));
    t.extend_from_slice(&c[1..]);
    t.extend_from_slice(&a[c0 + k..]);
    let sign = if (l + k).is_multiple_of(2) { 1 } else { -1 };
    Some((sign * b_sign * c_sign, t))
}

/// A column-level term of a closed differential before conversion to
/// generator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnTerm {
    pub sign: i64,
    pub left: Column,
    pub tuple: Vec<Column>,
    pub right: Column,
    pub family: String,
}

/// All terms of the closed formula for `[a1|...|aℓ]`.
pub fn closed_terms(a: &[Column], variant: ClosedVariant, mode: Mode) -> Vec<ColumnTerm> {
    let ell = a.len();
    let mut out = Vec::new();
    let keep = |t: &[Column], displayed: bool| -> bool {
        if t.iter().any(|c| c.is_empty()) {
            return false;
        }
        match variant.vanishing {
            Vanishing::Structural => is_column_chain(t),
            _ => !displayed,
        }
    };
    for i in 0..ell {
        let (coeff, t) = l_hat(a, i);
        let displayed = match variant.vanishing {
            Vanishing::Displayed => displayed_l_vanishes(a, i),
            Vanishing::Swapped => displayed_r_vanishes(a, i),
            Vanishing::Structural => false,
        };
        if keep(&t, displayed) {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.push(ColumnTerm { sign, left: coeff, tuple: t, right: Column::EMPTY, family: format!("L{i}") });
        }
    }
    for j in 1..=ell {
        let (coeff, t) = r_hat(a, j);
        let displayed = match variant.vanishing {
            Vanishing::Displayed => displayed_r_vanishes(a, j),
            Vanishing::Swapped => displayed_l_vanishes(a, j),
            Vanishing::Structural => false,
        };
        if keep(&t, displayed) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let right = match mode {
                Mode::Left => Column::EMPTY,
                Mode::Bimodule => coeff,
            };
            out.push(ColumnTerm { sign, left: Column::EMPTY, tuple: t, right, family: format!("R{j}") });
        }
    }
    if let Some((br, cr)) = variant.w {
        for m in 1..ell {
            for l in 0..ell {
                for k in 1..ell {
                    if m + l + k > ell - 1 {
                        continue;
                    }
                    if let Some((sign, t)) = w_term(a, m, l, k, br, cr) {
                        let structural_ok = variant.vanishing != Vanishing::Structural || is_column_chain(&t);
                        if t.iter().all(|c| !c.is_empty()) && structural_ok {
                            out.push(ColumnTerm {
                                sign,
                                left: Column::EMPTY,
                                tuple: t,
                                right: Column::EMPTY,
                                family: format!("W{m},{l},{k}"),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// The closed-form differential of a plactic chain as a module vector over
/// the generator words of `p`.
pub fn differential_closed<F: Field>(
    p: &Presentation,
    field: &F,
    chain: &Tuple,
    variant: ClosedVariant,
    mode: Mode,
) -> Result<ModVec<F::Elem>> {
    let cols: Vec<Column> = chain
        .iter()
        .map(|w| match w.as_slice() {
            [g] => Ok(p.column(*g)),
            _ => Err(Error::Matching("closed formula needs single-column entries".into())),
        })
        .collect::<Result<_>>()?;
    let mut out = ModVec::new();
    for t in closed_terms(&cols, variant, mode) {
        let cell: Tuple = t.tuple.iter().map(|c| p.columns_to_word(&[*c])).collect::<Result<_>>()?;
        let term = Term { cell, left: p.columns_to_word(&[t.left])?, right: p.columns_to_word(&[t.right])? };
        out.add(field, term, &field.from_i64(t.sign));
    }
    Ok(out)
}

/// Checks `d∘d = 0` for the closed formula on every chain of homological
/// degree `1..=max_degree`. The engine supplies coefficient products.
pub fn d_squared_closed<F: Field>(
    engine: &MorseEngine<'_, F>,
    variant: ClosedVariant,
    max_degree: usize,
) -> Result<DSquaredReport> {
    let p = engine.presentation();
    let f = engine.field();
    let mode = engine.mode();
    let mut violations = Vec::new();
    let mut checked = 0;
    for m in 1..=max_degree {
        for c in enumerate_chains(p, m + 1) {
            checked += 1;
            let d = differential_closed(p, f, &c, variant, mode)?;
            let mut dd = ModVec::new();
            for (t, coef) in d.iter() {
                let inner = differential_closed(p, f, &t.cell, variant, mode)?;
                engine.add_sandwich(&mut dd, coef, &t.left, &inner, &t.right)?;
            }
            if !dd.is_zero() {
                violations.push(format!("{}: d² = {}", engine.format_tuple(&c), engine.format_vec(&dd)));
            }
        }
    }
    Ok(DSquaredReport {
        presentation: p.name().to_string(),
        mode,
        implementation: format!("closed/{}", variant.label()),
        max_degree,
        chains_checked: checked,
        violations,
    })
}

/// Agreement of one closed-formula variant with the Morse path sum.
#[derive(Clone, Debug, Serialize)]
pub struct VariantReport {
    pub variant: String,
    pub chains_checked: usize,
    /// Chains on which some `W` tuple passes its collapse condition.
    pub chains_with_w: usize,
    pub disagreements: Vec<String>,
    pub disagreements_on_w_free: usize,
}

/// Whether any `W_{m,l,k}` of any reading passes the collapse condition on
/// `a`.
pub fn has_w_candidates(a: &[Column]) -> bool {
    let ell = a.len();
    for (br, cr) in [
        (Reading::First, Reading::First),
        (Reading::First, Reading::Second),
        (Reading::Second, Reading::First),
        (Reading::Second, Reading::Second),
    ] {
        for m in 1..ell {
            for l in 0..ell {
                for k in 1..ell {
                    if m + l + k < ell && w_term(a, m, l, k, br, cr).is_some() {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Compares `variant` against the Morse differential on every chain with
/// `1..=max_degree + 1` entries.
pub fn compare_with_admt<F: Field>(
    engine: &MorseEngine<'_, F>,
    variant: ClosedVariant,
    max_degree: usize,
) -> Result<VariantReport> {
    let p = engine.presentation();
    let mut report = VariantReport {
        variant: variant.label(),
        chains_checked: 0,
        chains_with_w: 0,
        disagreements: Vec::new(),
        disagreements_on_w_free: 0,
    };
    for m in 0..=max_degree {
        for c in enumerate_chains(p, m + 1) {
            report.chains_checked += 1;
            let cols: Vec<Column> = c.iter().map(|w| p.column(w[0])).collect();
            let w = has_w_candidates(&cols);
            if w {
                report.chains_with_w += 1;
            }
            let a = engine.differential(&c)?;
            let b = differential_closed(p, engine.field(), &c, variant, engine.mode())?;
            if a != b {
                if !w {
                    report.disagreements_on_w_free += 1;
                }
                report.disagreements.push(format!(
                    "{}: admt {} closed {}",
                    engine.format_tuple(&c),
                    engine.format_vec(&a),
                    engine.format_vec(&b)
                ));
            }
        }
    }
    Ok(report)
}

/// Quadruples `a,b,c,d` with `a∧b = b`, `b∧c ≠ c`, `c∧d = d` for which one
/// of the two follow-up reductions of `[a | b∨c | b∧c | d]` produces two
/// adjacent leading pairs. Quadruples where a unit appears are skipped.
pub fn two_holes_counterexamples(n: usize) -> Vec<[Column; 4]> {
    let cols = Column::generators(n);
    let mut out = Vec::new();
    let two_adjacent = |t: &[Column; 4]| {
        let h: Vec<bool> = t.windows(2).map(|p| is_leading(p[0], p[1])).collect();
        (h[0] && h[1]) || (h[1] && h[2])
    };
    for &a in &cols {
        for &b in &cols {
            if wedge(a, b) != b {
                continue;
            }
            for &c in &cols {
                if wedge(b, c) == c {
                    continue;
                }
                for &d in &cols {
                    if wedge(c, d) != d {
                        continue;
                    }
                    let (bv, bw) = (vee(b, c), wedge(b, c));
                    if bw.is_empty() {
                        continue;
                    }
                    let left = [vee(a, bv), wedge(a, bv), bw, d];
                    let right = [a, bv, vee(bw, d), wedge(bw, d)];
                    for child in [left, right] {
                        if child.iter().all(|x| !x.is_empty()) && two_adjacent(&child) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
    }
    out
}
