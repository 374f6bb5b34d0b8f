//! The Anick resolution from algebraic discrete Morse theory.
//!
//! Cells of the normalized bar resolution are tuples `[w1|...|wn]` of
//! irreducible nonempty words. The matching pairs a tuple whose chain prefix
//! stops at entry `K` with the tuple obtained by splitting entry `K + 1` at
//! its shortest prefix that extends the chain. Unmatched tuples are exactly
//! the Anick chains, and the Morse differential is a sum over zig-zag paths,
//! evaluated here by memoized recursion.
//!
//! Bar differential convention (left module, augmentation `ε`):
//!
//! ```text
//! ∂[w1|...|wn] = w1·[w2|...|wn] + Σ_{i=1}^{n-1} (-1)^i [...|wi·wi+1|...] + (-1)^n ε(wn)[w1|...|wn-1]
//! ```
//!
//! In bimodule mode the last term is `(-1)^n [w1|...|wn-1]·wn`. Merged
//! entries are rewritten to normal form and unit words vanish.

pub mod closed;
pub mod example15;
pub mod exactness;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::rewrite::{Presentation, Word};

/// A bar tuple; entries are nonempty irreducible words.
pub type Tuple = Vec<Word>;

/// Default cap on ȟ / ĥ evaluations per engine.
pub const DEFAULT_BUDGET: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Left,
    Bimodule,
}

/// A basis element `left ⊗ cell ⊗ right` of a free module over `Λ` or `Λᵉ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub cell: Tuple,
    pub left: Word,
    pub right: Word,
}

impl Term {
    pub fn cell(cell: Tuple) -> Self {
        Term { cell, left: Vec::new(), right: Vec::new() }
    }

    pub fn is_scalar(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

/// A finite linear combination of [`Term`]s with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModVec<E> {
    terms: BTreeMap<Term, E>,
}

impl<E> Default for ModVec<E> {
    fn default() -> Self {
        ModVec { terms: BTreeMap::new() }
    }
}

impl<E: Clone> ModVec<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single<F: Field<Elem = E>>(field: &F, term: Term) -> Self {
        let mut v = Self::new();
        v.terms.insert(term, field.one());
        v
    }

    pub fn add<F: Field<Elem = E>>(&mut self, field: &F, term: Term, c: &E) {
        if field.is_zero(c) {
            return;
        }
        let sum = match self.terms.get(&term) {
            Some(old) => field.add(old, c),
            None => c.clone(),
        };
        if field.is_zero(&sum) {
            self.terms.remove(&term);
        } else {
            self.terms.insert(term, sum);
        }
    }

    pub fn add_vec<F: Field<Elem = E>>(&mut self, field: &F, other: &ModVec<E>, scale: &E) {
        for (t, c) in &other.terms {
            self.add(field, t.clone(), &field.mul(c, scale));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &E)> {
        self.terms.iter()
    }

    pub fn get(&self, t: &Term) -> Option<&E> {
        self.terms.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Collapses coefficients through `ε` on both sides, leaving a
    /// combination of bare cells.
    pub fn augment<F: Field<Elem = E>>(&self, field: &F, eps: impl Fn(&Word) -> E) -> BTreeMap<Tuple, E> {
        let mut out: BTreeMap<Tuple, E> = BTreeMap::new();
        for (t, c) in &self.terms {
            let v = field.mul(c, &field.mul(&eps(&t.left), &eps(&t.right)));
            if field.is_zero(&v) {
                continue;
            }
            let sum = match out.get(&t.cell) {
                Some(old) => field.add(old, &v),
                None => v,
            };
            if field.is_zero(&sum) {
                out.remove(&t.cell);
            } else {
                out.insert(t.cell.clone(), sum);
            }
        }
        out
    }
}

/// Words `u` such that `t·u` contains an obstruction as a suffix starting
/// inside `t`, and no obstruction occurrence ends earlier.
pub fn chain_extensions(p: &Presentation, t: &[usize]) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    let mut seen = HashSet::new();
    for o in p.obstructions() {
        for s in 0..t.len() {
            let overlap = t.len() - s;
            if o.len() <= overlap || t[s..] != o[..overlap] {
                continue;
            }
            let u = o[overlap..].to_vec();
            let mut tu = t.to_vec();
            tu.extend_from_slice(&u);
            if let Some((start, len)) = p.first_obstruction(&tu) {
                if start + len == tu.len() && start < t.len() && seen.insert(u.clone()) {
                    out.push(u);
                }
            }
        }
    }
    out.sort_by(|a, b| crate::rewrite::deglex_cmp(a, b));
    out
}

/// All Anick chains with `entries` entries (homological degree
/// `entries - 1`), in the bar form `[generator | tail | tail | ...]`.
/// Zero entries gives the single empty chain.
pub fn enumerate_chains(p: &Presentation, entries: usize) -> Vec<Tuple> {
    if entries == 0 {
        return vec![Vec::new()];
    }
    let mut ext_cache: HashMap<Word, Vec<Word>> = HashMap::new();
    let mut level: Vec<Tuple> = (0..p.num_generators()).map(|g| vec![vec![g]]).collect();
    for _ in 1..entries {
        let mut next = Vec::new();
        for chain in &level {
            let tail = chain.last().expect("nonempty chain");
            let exts = ext_cache.entry(tail.clone()).or_insert_with(|| chain_extensions(p, tail));
            for u in exts.iter() {
                let mut c = chain.clone();
                c.push(u.clone());
                next.push(c);
            }
        }
        level = next;
    }
    level.sort_by(tuple_cmp);
    level
}

/// Entrywise deg-lex comparison of tuples.
pub fn tuple_cmp(a: &Tuple, b: &Tuple) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = crate::rewrite::deglex_cmp(x, y);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Position of a bar tuple in the matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellKind {
    Critical,
    /// Matched with the given tuple one degree up; the matched edge merges
    /// entries `at` and `at + 1` (1-based `at`).
    Lower { partner: Tuple, at: usize },
    /// Matched with the given tuple one degree down.
    Upper { partner: Tuple },
}

type Edge<E> = (Word, Tuple, Word, E);

pub struct MorseEngine<'a, F: Field> {
    pres: &'a Presentation,
    field: F,
    mode: Mode,
    eps: Vec<F::Elem>,
    budget: usize,
    steps: RefCell<usize>,
    ext_cache: RefCell<HashMap<Word, Vec<Word>>>,
    prod_cache: RefCell<HashMap<(Word, Word), Vec<(Word, F::Elem)>>>,
    check_memo: RefCell<HashMap<Tuple, ModVec<F::Elem>>>,
    psi_memo: RefCell<HashMap<Tuple, ModVec<F::Elem>>>,
    on_stack: RefCell<HashSet<Tuple>>,
}

impl<'a, F: Field> MorseEngine<'a, F> {
    pub fn new(pres: &'a Presentation, field: F, mode: Mode) -> Result<Self> {
        let eps = pres
            .augmentation()
            .iter()
            .map(|q| field.from_ratio(q).ok_or_else(|| Error::FieldConversion(q.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(MorseEngine {
            pres,
            field,
            mode,
            eps,
            budget: DEFAULT_BUDGET,
            steps: RefCell::new(0),
            ext_cache: RefCell::new(HashMap::new()),
            prod_cache: RefCell::new(HashMap::new()),
            check_memo: RefCell::new(HashMap::new()),
            psi_memo: RefCell::new(HashMap::new()),
            on_stack: RefCell::new(HashSet::new()),
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn presentation(&self) -> &Presentation {
        self.pres
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `ε` of a word.
    pub fn eps_word(&self, w: &[usize]) -> F::Elem {
        w.iter().fold(self.field.one(), |acc, &g| self.field.mul(&acc, &self.eps[g]))
    }

    fn extensions(&self, t: &[usize]) -> Vec<Word> {
        if let Some(v) = self.ext_cache.borrow().get(t) {
            return v.clone();
        }
        let v = chain_extensions(self.pres, t);
        self.ext_cache.borrow_mut().insert(t.to_vec(), v.clone());
        v
    }

    fn is_extension(&self, t: &[usize], u: &[usize]) -> bool {
        self.extensions(t).iter().any(|e| e == u)
    }

    /// Normal form of the product `u·v`.
    pub fn product(&self, u: &[usize], v: &[usize]) -> Result<Vec<(Word, F::Elem)>> {
        if u.is_empty() {
            return Ok(vec![(v.to_vec(), self.field.one())]);
        }
        if v.is_empty() {
            return Ok(vec![(u.to_vec(), self.field.one())]);
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(r) = self.prod_cache.borrow().get(&key) {
            return Ok(r.clone());
        }
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        let nf = self.pres.normal_form(&w)?;
        let mut out = Vec::with_capacity(nf.len());
        for (word, q) in nf {
            let c = self.field.from_ratio(&q).ok_or_else(|| Error::FieldConversion(q.to_string()))?;
            if !self.field.is_zero(&c) {
                out.push((word, c));
            }
        }
        self.prod_cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// Number of leading entries forming an Anick chain.
    pub fn chain_prefix_len(&self, u: &Tuple) -> usize {
        if u.is_empty() || u[0].len() != 1 {
            return 0;
        }
        let mut k = 1;
        while k < u.len() && self.is_extension(&u[k - 1], &u[k]) {
            k += 1;
        }
        k
    }

    pub fn is_chain(&self, u: &Tuple) -> bool {
        self.chain_prefix_len(u) == u.len()
    }

    pub fn classify(&self, u: &Tuple) -> Result<CellKind> {
        let n = u.len();
        let k = self.chain_prefix_len(u);
        if k == n {
            return Ok(CellKind::Critical);
        }
        if k == 0 {
            let (head, rest) = u[0].split_at(1);
            let mut partner = vec![head.to_vec(), rest.to_vec()];
            partner.extend_from_slice(&u[1..]);
            return Ok(CellKind::Lower { partner, at: 1 });
        }
        let next = &u[k];
        for cut in 1..next.len() {
            if self.is_extension(&u[k - 1], &next[..cut]) {
                let mut partner = u[..k].to_vec();
                partner.push(next[..cut].to_vec());
                partner.push(next[cut..].to_vec());
                partner.extend_from_slice(&u[k + 1..]);
                return Ok(CellKind::Lower { partner, at: k + 1 });
            }
        }
        let mut merged = u[k - 1].clone();
        merged.extend_from_slice(next);
        if self.pres.is_irreducible(&merged) {
            let mut partner = u[..k - 1].to_vec();
            partner.push(merged);
            partner.extend_from_slice(&u[k + 1..]);
            return Ok(CellKind::Upper { partner });
        }
        Err(Error::Matching(format!("tuple {} fits no matching case", self.format_tuple(u))))
    }

    /// Terms of the bar differential as `(left, tuple, right, coefficient)`.
    pub fn bar_boundary(&self, u: &Tuple) -> Result<Vec<Edge<F::Elem>>> {
        let f = &self.field;
        let n = u.len();
        let mut out = Vec::new();
        if n == 0 {
            return Ok(out);
        }
        out.push((u[0].clone(), u[1..].to_vec(), Vec::new(), f.one()));
        for i in 1..n {
            let sign = if i % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            for (w, c) in self.product(&u[i - 1], &u[i])? {
                if w.is_empty() {
                    continue;
                }
                let mut t = u[..i - 1].to_vec();
                t.push(w);
                t.extend_from_slice(&u[i + 1..]);
                out.push((Vec::new(), t, Vec::new(), f.mul(&sign, &c)));
            }
        }
        let sign = if n.is_multiple_of(2) { f.one() } else { f.neg(&f.one()) };
        let rest = u[..n - 1].to_vec();
        match self.mode {
            Mode::Left => {
                let c = f.mul(&sign, &self.eps_word(&u[n - 1]));
                if !f.is_zero(&c) {
                    out.push((Vec::new(), rest, Vec::new(), c));
                }
            }
            Mode::Bimodule => out.push((Vec::new(), rest, u[n - 1].clone(), sign)),
        }
        Ok(out)
    }

    /// `λ·v·μ` added into `acc` with scalar `s`.
    /// Adds `s·λ·v·μ` to `acc`, normalising the coefficient products.
    pub fn add_sandwich(&self, acc: &mut ModVec<F::Elem>, s: &F::Elem, lam: &[usize], v: &ModVec<F::Elem>, mu: &[usize]) -> Result<()> {
        let f = &self.field;
        for (t, c) in v.iter() {
            let base = f.mul(s, c);
            for (l, lc) in self.product(lam, &t.left)? {
                for (r, rc) in self.product(&t.right, mu)? {
                    let term = Term { cell: t.cell.clone(), left: l.clone(), right: r };
                    acc.add(f, term, &f.mul(&base, &f.mul(&lc, &rc)));
                }
            }
        }
        Ok(())
    }

    fn tick(&self) -> Result<()> {
        let mut s = self.steps.borrow_mut();
        *s += 1;
        if *s > self.budget {
            return Err(Error::MorseBudget(self.budget));
        }
        Ok(())
    }

    fn matched_weight(&self, partner: &Tuple, u: &Tuple) -> Result<F::Elem> {
        let f = &self.field;
        let mut s0 = f.zero();
        for (l, t, r, c) in self.bar_boundary(partner)? {
            if &t == u {
                if !l.is_empty() || !r.is_empty() {
                    return Err(Error::Matching(format!(
                        "matched edge {} -> {} has a non-scalar part",
                        self.format_tuple(partner),
                        self.format_tuple(u)
                    )));
                }
                s0 = f.add(&s0, &c);
            }
        }
        if f.is_zero(&s0) {
            return Err(Error::Matching(format!(
                "matched edge {} -> {} has zero weight",
                self.format_tuple(partner),
                self.format_tuple(u)
            )));
        }
        Ok(s0)
    }

    /// `ȟ`: the projection of a bar tuple onto the Morse complex.
    pub fn h_check(&self, u: &Tuple) -> Result<ModVec<F::Elem>> {
        if let Some(v) = self.check_memo.borrow().get(u) {
            return Ok(v.clone());
        }
        self.tick()?;
        let f = &self.field;
        let result = match self.classify(u)? {
            CellKind::Critical => ModVec::single(f, Term::cell(u.clone())),
            CellKind::Upper { .. } => ModVec::new(),
            CellKind::Lower { partner, .. } => {
                if !self.on_stack.borrow_mut().insert(u.clone()) {
                    return Err(Error::MorseCycle(self.format_tuple(u)));
                }
                let s0 = self.matched_weight(&partner, u)?;
                let scale = f.neg(&f.inv(&s0).expect("nonzero"));
                let mut acc = ModVec::new();
                for (l, t, r, c) in self.bar_boundary(&partner)? {
                    if &t == u {
                        continue;
                    }
                    let sub = self.h_check(&t)?;
                    self.add_sandwich(&mut acc, &f.mul(&scale, &c), &l, &sub, &r)?;
                }
                self.on_stack.borrow_mut().remove(u);
                acc
            }
        };
        self.check_memo.borrow_mut().insert(u.clone(), result.clone());
        Ok(result)
    }

    /// The Morse differential of an Anick chain.
    pub fn differential(&self, c: &Tuple) -> Result<ModVec<F::Elem>> {
        if !self.is_chain(c) {
            return Err(Error::Matching(format!("{} is not an Anick chain", self.format_tuple(c))));
        }
        let mut acc = ModVec::new();
        for (l, t, r, s) in self.bar_boundary(c)? {
            let sub = self.h_check(&t)?;
            self.add_sandwich(&mut acc, &s, &l, &sub, &r)?;
        }
        Ok(acc)
    }

    /// Applies the Morse differential to a combination of chains.
    pub fn differential_vec(&self, v: &ModVec<F::Elem>) -> Result<ModVec<F::Elem>> {
        let mut acc = ModVec::new();
        for (t, c) in v.iter() {
            let d = self.differential(&t.cell)?;
            self.add_sandwich(&mut acc, c, &t.left, &d, &t.right)?;
        }
        Ok(acc)
    }

    fn psi(&self, u: &Tuple) -> Result<ModVec<F::Elem>> {
        if let Some(v) = self.psi_memo.borrow().get(u) {
            return Ok(v.clone());
        }
        self.tick()?;
        let f = &self.field;
        let result = match self.classify(u)? {
            CellKind::Lower { partner, .. } => {
                if !self.on_stack.borrow_mut().insert(u.clone()) {
                    return Err(Error::MorseCycle(self.format_tuple(u)));
                }
                let s0 = self.matched_weight(&partner, u)?;
                let scale = f.neg(&f.inv(&s0).expect("nonzero"));
                let mut acc = ModVec::single(f, Term::cell(partner.clone()));
                for (l, t, r, c) in self.bar_boundary(&partner)? {
                    if &t == u {
                        continue;
                    }
                    let sub = self.psi(&t)?;
                    self.add_sandwich(&mut acc, &c, &l, &sub, &r)?;
                }
                self.on_stack.borrow_mut().remove(u);
                let mut scaled = ModVec::new();
                scaled.add_vec(f, &acc, &scale);
                scaled
            }
            _ => ModVec::new(),
        };
        self.psi_memo.borrow_mut().insert(u.clone(), result.clone());
        Ok(result)
    }

    /// `ĥ`: the inclusion of the Morse complex into the bar complex.
    pub fn h_hat(&self, c: &Tuple) -> Result<ModVec<F::Elem>> {
        if !self.is_chain(c) {
            return Err(Error::Matching(format!("{} is not an Anick chain", self.format_tuple(c))));
        }
        let f = &self.field;
        let mut acc = ModVec::single(f, Term::cell(c.clone()));
        for (l, t, r, s) in self.bar_boundary(c)? {
            let sub = self.psi(&t)?;
            self.add_sandwich(&mut acc, &s, &l, &sub, &r)?;
        }
        Ok(acc)
    }

    /// `ȟ` applied to a combination of bar tuples.
    pub fn h_check_vec(&self, v: &ModVec<F::Elem>) -> Result<ModVec<F::Elem>> {
        let mut acc = ModVec::new();
        for (t, c) in v.iter() {
            let h = self.h_check(&t.cell)?;
            self.add_sandwich(&mut acc, c, &t.left, &h, &t.right)?;
        }
        Ok(acc)
    }

    pub fn format_tuple(&self, u: &Tuple) -> String {
        let parts: Vec<String> = u.iter().map(|w| self.pres.format_word(w)).collect();
        format!("[{}]", parts.join("|"))
    }

    pub fn format_term(&self, t: &Term) -> String {
        let mut s = String::new();
        if !t.left.is_empty() {
            s.push_str(&self.pres.format_word(&t.left));
        }
        s.push_str(&self.format_tuple(&t.cell));
        if !t.right.is_empty() {
            s.push_str(&self.pres.format_word(&t.right));
        }
        s
    }

    /// Human readable form such as `x[x] + [x] - y[y]`.
    pub fn format_vec(&self, v: &ModVec<F::Elem>) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut s = String::new();
        for (i, (t, c)) in v.iter().enumerate() {
            let text = f.display(c);
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if abs != "1" {
                s.push_str(&abs);
                s.push('·');
            }
            s.push_str(&self.format_term(t));
        }
        s
    }

    /// The part of the Morse graph reachable from `c` along down edges of
    /// the bar differential and reversed matched edges, as DOT.
    pub fn morse_graph_dot(&self, c: &Tuple, max_vertices: usize) -> Result<String> {
        let mut out = String::from("digraph morse {\n  rankdir=TB;\n  node [shape=box];\n");
        let mut seen: HashSet<Tuple> = HashSet::new();
        let mut stack = vec![c.clone()];
        let mut ids: HashMap<Tuple, usize> = HashMap::new();
        let id = |t: &Tuple, ids: &mut HashMap<Tuple, usize>| {
            let next = ids.len();
            *ids.entry(t.clone()).or_insert(next)
        };
        let top_degree = c.len();
        while let Some(u) = stack.pop() {
            if !seen.insert(u.clone()) {
                continue;
            }
            if seen.len() > max_vertices {
                return Err(Error::MorseBudget(max_vertices));
            }
            let uid = id(&u, &mut ids);
            let kind = self.classify(&u)?;
            let style = match kind {
                CellKind::Critical => "style=bold",
                _ => "style=solid",
            };
            let _ = writeln!(out, "  n{uid} [label=\"{}\", {style}];", self.format_tuple(&u));
            if u.len() + 1 < top_degree || u.is_empty() {
                continue;
            }
            if u.len() == top_degree {
                for (l, t, r, s) in self.bar_boundary(&u)? {
                    let tid = id(&t, &mut ids);
                    let label = format!("{}{}{}", self.pres.format_word(&l), self.field.display(&s), self.pres.format_word(&r));
                    let _ = writeln!(out, "  n{uid} -> n{tid} [label=\"{label}\"];");
                    stack.push(t);
                }
            } else if let CellKind::Lower { partner, .. } = kind {
                let pid = id(&partner, &mut ids);
                let _ = writeln!(out, "  n{uid} -> n{pid} [style=dashed];");
                stack.push(partner);
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Result of checking `d∘d = 0` on all chains up to a degree.
#[derive(Clone, Debug, Serialize)]
pub struct DSquaredReport {
    pub presentation: String,
    pub mode: Mode,
    pub implementation: String,
    pub max_degree: usize,
    pub chains_checked: usize,
    pub violations: Vec<String>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d∘d = 0` on every chain of homological degree `1..=max_degree`
/// using the ADMT differential.
pub fn d_squared_admt<F: Field>(engine: &MorseEngine<'_, F>, max_degree: usize) -> Result<DSquaredReport> {
    let mut violations = Vec::new();
    let mut checked = 0;
    for m in 1..=max_degree {
        for c in enumerate_chains(engine.presentation(), m + 1) {
            checked += 1;
            let d = engine.differential(&c)?;
            let dd = engine.differential_vec(&d)?;
            if !dd.is_zero() {
                violations.push(format!("{}: d² = {}", engine.format_tuple(&c), engine.format_vec(&dd)));
            }
        }
    }
    Ok(DSquaredReport {
        presentation: engine.presentation().name().to_string(),
        mode: engine.mode(),
        implementation: "admt".into(),
        max_degree,
        chains_checked: checked,
        violations,
    })
}

#[cfg(test)]
mod tests;
