//! Products of the cochains `∂/∂e_i` and the column identities behind them.
//!
//! Values are elements of the monoid algebra with integer coefficients,
//! keyed by normal-form words.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ext::{permutation_sign, permutations};
use crate::anick::closed::{l_hat, r_hat, vee_right, wedge_left};
use crate::anick::enumerate_chains;
use crate::column::{commutes, is_leading, vee, wedge, Column};
use crate::error::Result;
use crate::rewrite::{Presentation, Word};

/// Integer combination of monoid elements.
pub type IntPoly = BTreeMap<Word, i64>;

fn add_term(acc: &mut IntPoly, w: Word, c: i64) {
    let e = acc.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&w);
    }
}

/// `∂a/∂e_i`: the column without `i`, possibly empty; `None` is zero.
pub fn partial(a: Column, i: usize) -> Option<Column> {
    a.contains(i).then(|| a.without(i))
}

/// The monoid element `c_1 ⋯ c_k`; empty columns are the unit.
pub fn product(p: &Presentation, cols: &[Column]) -> Result<Word> {
    let nonempty: Vec<Column> = cols.iter().copied().filter(|c| !c.is_empty()).collect();
    p.normal_word(&p.columns_to_word(&nonempty)?)
}

fn pairwise_commuting(a: &[Column]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| commutes(a[i], a[j])))
}

/// `Σ_σ sign(σ) (a_ℓ ⋯ a_1) ∂a_σ(1)/∂e_i_1 ⋯ ∂a_σ(ℓ)/∂e_i_ℓ` when the
/// entries pairwise commute, zero otherwise.
pub fn permutation_cup(p: &Presentation, ids: &[usize], a: &[Column]) -> Result<IntPoly> {
    let mut out = IntPoly::new();
    if !pairwise_commuting(a) {
        return Ok(out);
    }
    let prefix: Vec<Column> = a.iter().rev().copied().collect();
    'perm: for perm in permutations(a.len()) {
        let mut cols = prefix.clone();
        for (k, &s) in perm.iter().enumerate() {
            match partial(a[s], ids[k]) {
                Some(c) => cols.push(c),
                None => continue 'perm,
            }
        }
        add_term(&mut out, product(p, &cols)?, permutation_sign(&perm));
    }
    Ok(out)
}

/// `(∂a/∂x · b)(a · ∂b/∂y) - (∂(a∨b)/∂x · (a∧b))((a∨b) · ∂(a∧b)/∂y)`.
pub fn two_term(p: &Presentation, x: usize, y: usize, a: Column, b: Column) -> Result<IntPoly> {
    let mut out = IntPoly::new();
    let (v, w) = (vee(a, b), wedge(a, b));
    if let (Some(da), Some(db)) = (partial(a, x), partial(b, y)) {
        add_term(&mut out, product(p, &[da, b, a, db])?, 1);
    }
    if let (Some(dv), Some(dw)) = (partial(v, x), partial(w, y)) {
        add_term(&mut out, product(p, &[dv, w, v, dw])?, -1);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PermutationCupReport {
    pub n: usize,
    pub commuting_chains: usize,
    pub noncommuting_chains: usize,
    /// `(chain, x, y)` evaluations on commuting chains.
    pub evaluations: usize,
    pub mismatches: Vec<String>,
    /// Noncommuting evaluations where the formula is nonzero.
    pub nonvanishing: usize,
    /// Noncommuting evaluations where the two-term expression is nonzero.
    pub two_term_nonvanishing: usize,
}

impl PermutationCupReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.nonvanishing == 0
    }
}

/// The permutation formula against the two-term expression on every
/// two-entry chain and every pair of letters.
pub fn check_permutation_cup(p: &Presentation, n: usize) -> Result<PermutationCupReport> {
    let mut r = PermutationCupReport {
        n,
        commuting_chains: 0,
        noncommuting_chains: 0,
        evaluations: 0,
        mismatches: Vec::new(),
        nonvanishing: 0,
        two_term_nonvanishing: 0,
    };
    for c in enumerate_chains(p, 2) {
        let (a, b) = (p.column(c[0][0]), p.column(c[1][0]));
        let comm = commutes(a, b);
        if comm {
            r.commuting_chains += 1;
        } else {
            r.noncommuting_chains += 1;
        }
        for x in 1..=n {
            for y in 1..=n {
                let lhs = permutation_cup(p, &[x, y], &[a, b])?;
                let rhs = two_term(p, x, y, a, b)?;
                if comm {
                    r.evaluations += 1;
                    if lhs != rhs {
                        r.mismatches.push(format!("[{a}|{b}] x={x} y={y}"));
                    }
                } else {
                    r.nonvanishing += usize::from(!lhs.is_empty());
                    r.two_term_nonvanishing += usize::from(!rhs.is_empty());
                }
            }
        }
    }
    Ok(r)
}

fn tuples(n: usize, len: usize) -> Vec<Vec<Column>> {
    let gens = Column::generators(n);
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                gens.iter().map(move |&g| {
                    let mut u = t.clone();
                    u.push(g);
                    u
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub n: usize,
    /// Pairwise commuting tuples of length `ℓ` whose entries all contain
    /// `1..=ℓ`, summed over `ℓ = 2..=n`.
    pub applicable: usize,
    pub failures: Vec<String>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(∂/∂e_1 ⌣ ⋯ ⌣ ∂/∂e_ℓ)[a_1|…|a_ℓ] = 0` whenever every `∂a_k/∂e_j` is
/// nonzero and the entries commute.
pub fn check_vanishing(p: &Presentation, n: usize) -> Result<VanishingReport> {
    let mut applicable = 0;
    let mut failures = Vec::new();
    for ell in 2..=n {
        let ids: Vec<usize> = (1..=ell).collect();
        for t in tuples(n, ell) {
            if !pairwise_commuting(&t) || !t.iter().all(|a| ids.iter().all(|&j| a.contains(j))) {
                continue;
            }
            applicable += 1;
            if !permutation_cup(p, &ids, &t)?.is_empty() {
                failures.push(format_cols(&t));
            }
        }
    }
    Ok(VanishingReport { n, applicable, failures })
}

fn format_cols(t: &[Column]) -> String {
    let parts: Vec<String> = t.iter().map(Column::to_string).collect();
    format!("[{}]", parts.join("|"))
}

/// Hypotheses under which the exchange identity is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExchangeScope {
    /// Only `i ≠ j` and the case condition on `e_j`.
    Bare,
    /// Also `e_i ∈ a`.
    LetterInA,
    /// Also `a ⊆ b`.
    Nested,
}

impl ExchangeScope {
    pub fn all() -> [ExchangeScope; 3] {
        [ExchangeScope::Bare, ExchangeScope::LetterInA, ExchangeScope::Nested]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeReport {
    pub n: usize,
    pub scope: ExchangeScope,
    pub applicable: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

/// `∂a/∂e_i · ∂b/∂e_j` equals `∂b/∂e_i · ∂a/∂e_j` when `e_j ∈ a`, and
/// `∂b/∂e_j · ∂a/∂e_i` when `e_j ∈ b ∖ a`, as monoid elements.
pub fn check_exchange(p: &Presentation, n: usize, scope: ExchangeScope) -> Result<ExchangeReport> {
    let gens = Column::generators(n);
    let mut applicable = 0;
    let mut failures = 0;
    let mut first_failure = None;
    let term = |x: Option<Column>, y: Option<Column>| -> Result<Option<Word>> {
        match (x, y) {
            (Some(x), Some(y)) => Ok(Some(product(p, &[x, y])?)),
            _ => Ok(None),
        }
    };
    for &a in &gens {
        for &b in &gens {
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    if scope != ExchangeScope::Bare && !a.contains(i) {
                        continue;
                    }
                    if scope == ExchangeScope::Nested && !a.is_subset(b) {
                        continue;
                    }
                    let lhs = term(partial(a, i), partial(b, j))?;
                    let rhs = if a.contains(j) {
                        term(partial(b, i), partial(a, j))?
                    } else if b.contains(j) {
                        term(partial(b, j), partial(a, i))?
                    } else {
                        continue;
                    };
                    applicable += 1;
                    if lhs != rhs {
                        failures += 1;
                        first_failure.get_or_insert_with(|| format!("a={a} b={b} i={i} j={j}"));
                    }
                }
            }
        }
    }
    Ok(ExchangeReport { n, scope, applicable, failures, first_failure })
}

/// Which wedge accompanies `R̂_j` in the formal-sum identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WedgeFactor {
    /// `a_1 ∧ ⋯ ∧ a_{ℓ+1}` for every `j`.
    Whole,
    /// `a_j ∧ ⋯ ∧ a_{ℓ+1}`, the coefficient of `R̂_j`.
    Suffix,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalSumReport {
    pub n: usize,
    pub factor: WedgeFactor,
    /// Only tuples whose consecutive entries form leading pairs.
    pub chains_only: bool,
    pub tuples: usize,
    /// Tuples on which both sums vanish.
    pub both_zero: usize,
    /// Tuples on which the two formal sums coincide.
    pub equal_sums: usize,
    /// Among those, tuples with a noncommuting pair.
    pub counterexamples: Vec<String>,
}

impl FormalSumReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

type FormalSum = BTreeMap<(Vec<Column>, Column), i64>;

fn add_formal(acc: &mut FormalSum, t: Vec<Column>, c: Column, s: i64) {
    // normalized bar: a unit anywhere kills the term
    if c.is_empty() || t.iter().any(|x| x.is_empty()) {
        return;
    }
    let e = acc.entry((t.clone(), c)).or_insert(0);
    *e += s;
    if *e == 0 {
        acc.remove(&(t, c));
    }
}

/// For tuples of `ℓ + 1 <= 3` columns: whenever
/// `Σ_j (-1)^j R̂_j ⊗ wedge = Σ_i (-1)^(i+1) L̂_i ⊗ (a_1 ∨ ⋯ ∨ a_{i+1})`
/// as formal sums, all entries commute.
pub fn check_formal_sums(n: usize, factor: WedgeFactor, chains_only: bool) -> FormalSumReport {
    let mut r = FormalSumReport {
        n,
        factor,
        chains_only,
        tuples: 0,
        both_zero: 0,
        equal_sums: 0,
        counterexamples: Vec::new(),
    };
    for len in 2..=3 {
        for a in tuples(n, len) {
            if chains_only && !a.windows(2).all(|w| is_leading(w[0], w[1])) {
                continue;
            }
            r.tuples += 1;
            let mut lhs = FormalSum::new();
            for j in 1..=len {
                let (coef, t) = r_hat(&a, j);
                let w = match factor {
                    WedgeFactor::Whole => wedge_left(&a),
                    WedgeFactor::Suffix => coef,
                };
                add_formal(&mut lhs, t, w, if j % 2 == 0 { 1 } else { -1 });
            }
            let mut rhs = FormalSum::new();
            for i in 0..len {
                let (_, t) = l_hat(&a, i);
                add_formal(&mut rhs, t, vee_right(&a[..=i]), if i % 2 == 0 { -1 } else { 1 });
            }
            if lhs == rhs {
                r.equal_sums += 1;
                r.both_zero += usize::from(lhs.is_empty());
                if !pairwise_commuting(&a) {
                    r.counterexamples.push(format_cols(&a));
                }
            }
        }
    }
    r
}
