//! Gröbner–Shirshov presentations and rewriting to normal form.
//!
//! Words are sequences of generator indices; the generator order is the index
//! order and words are compared deg-lex. A rule rewrites its left-hand side
//! (an obstruction) to a linear combination of strictly smaller words.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::column::{is_leading, vee_wedge, Column};
use crate::error::{Error, Result};
use crate::letters::Letter;
use crate::multidegree::Multidegree;

pub type Coeff = Ratio<i64>;
pub type Word = Vec<usize>;
/// A linear combination of words with no zero coefficients.
pub type LinComb = BTreeMap<Word, Coeff>;

/// Default cap on rewrite steps for one normal form computation.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

pub fn deglex_cmp(u: &[usize], v: &[usize]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct DegLex(Word);

impl Ord for DegLex {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for DegLex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn add_term(comb: &mut LinComb, word: Word, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match comb.get_mut(&word) {
        Some(old) => {
            *old += c;
            if old.is_zero() {
                comb.remove(&word);
            }
        }
        None => {
            comb.insert(word, c);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: LinComb,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    generators: Vec<String>,
    separator: String,
    rules: Vec<Rule>,
    augmentation: Vec<Coeff>,
    grading: Vec<Multidegree>,
    // lhs -> rule index
    lhs_index: HashMap<Word, usize>,
    lhs_lengths: Vec<usize>,
    columns: Option<Vec<Column>>,
    column_index: HashMap<Column, usize>,
    step_cap: usize,
}

impl Presentation {
    /// Builds and validates a presentation. Generators are listed in
    /// increasing order.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        rules: Vec<Rule>,
        augmentation: Vec<Coeff>,
        grading: Vec<Multidegree>,
    ) -> Result<Self> {
        let ngen = generators.len();
        if augmentation.len() != ngen || grading.len() != ngen {
            return Err(Error::InvalidPresentation("augmentation and grading need one entry per generator".into()));
        }
        let mut lhs_index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() || r.lhs.iter().chain(r.rhs.keys().flatten()).any(|&g| g >= ngen) {
                return Err(Error::InvalidPresentation(format!("rule {i} uses an unknown generator or has empty lhs")));
            }
            if r.rhs.values().any(Zero::is_zero) {
                return Err(Error::InvalidPresentation(format!("rule {i} stores a zero coefficient")));
            }
            if let Some(w) = r.rhs.keys().find(|w| deglex_cmp(w, &r.lhs) != Ordering::Less) {
                return Err(Error::InvalidPresentation(format!("rule {i}: rhs word {w:?} is not below lhs {:?}", r.lhs)));
            }
            if lhs_index.insert(r.lhs.clone(), i).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate lhs {:?}", r.lhs)));
            }
        }
        for r in &rules {
            for s in &rules {
                if r.lhs != s.lhs && contains_subword(&r.lhs, &s.lhs) {
                    return Err(Error::InvalidPresentation(format!("lhs {:?} contains lhs {:?}", r.lhs, s.lhs)));
                }
            }
        }
        let mut lhs_lengths: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lhs_lengths.sort_unstable();
        lhs_lengths.dedup();
        let p = Presentation {
            name: name.into(),
            generators,
            separator: String::new(),
            rules,
            augmentation,
            grading,
            lhs_index,
            lhs_lengths,
            columns: None,
            column_index: HashMap::new(),
            step_cap: DEFAULT_STEP_CAP,
        };
        for (i, r) in p.rules.iter().enumerate() {
            let lhs_eps = p.augment_word(&r.lhs);
            let rhs_eps: Coeff = r.rhs.iter().map(|(w, c)| c * p.augment_word(w)).sum();
            if lhs_eps != rhs_eps {
                return Err(Error::InvalidPresentation(format!("augmentation is not compatible with rule {i}")));
            }
            let deg = p.word_degree(&r.lhs);
            if r.rhs.keys().any(|w| p.word_degree(w) != deg) {
                return Err(Error::InvalidPresentation(format!("rule {i} is not homogeneous for the grading")));
            }
        }
        Ok(p)
    }

    pub fn with_separator(mut self, sep: &str) -> Self {
        self.separator = sep.to_string();
        self
    }

    pub fn with_step_cap(mut self, cap: usize) -> Self {
        self.step_cap = cap;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn augmentation(&self) -> &[Coeff] {
        &self.augmentation
    }

    pub fn grading(&self, g: usize) -> &Multidegree {
        &self.grading[g]
    }

    pub fn grading_rank(&self) -> usize {
        self.grading.first().map_or(0, Multidegree::len)
    }

    /// The obstructions (leading terms).
    pub fn obstructions(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.rules.iter().map(|r| r.lhs.clone()).collect();
        v.sort_by(|a, b| deglex_cmp(a, b));
        v
    }

    pub fn is_obstruction(&self, w: &[usize]) -> bool {
        self.lhs_index.contains_key(w)
    }

    pub fn obstruction_lengths(&self) -> &[usize] {
        &self.lhs_lengths
    }

    pub fn rule_for(&self, lhs: &[usize]) -> Option<&Rule> {
        self.lhs_index.get(lhs).map(|&i| &self.rules[i])
    }

    /// `ε` of a word, as the product of generator augmentations.
    pub fn augment_word(&self, w: &[usize]) -> Coeff {
        w.iter().map(|&g| self.augmentation[g]).product()
    }

    pub fn word_degree(&self, w: &[usize]) -> Multidegree {
        let mut d = Multidegree::zero(self.grading_rank());
        for &g in w {
            d = &d + &self.grading[g];
        }
        d
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<&str> = w.iter().map(|&g| self.generators[g].as_str()).collect();
        parts.join(&self.separator)
    }

    /// Position `(start, len)` of the obstruction occurrence in `w` that ends
    /// first, ties broken by the shorter occurrence.
    pub fn first_obstruction(&self, w: &[usize]) -> Option<(usize, usize)> {
        for end in 1..=w.len() {
            for &len in &self.lhs_lengths {
                if len > end {
                    break;
                }
                if self.lhs_index.contains_key(&w[end - len..end]) {
                    return Some((end - len, len));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.first_obstruction(w).is_none()
    }

    /// The irreducible words of degree exactly `d`, in deg-lex order. These
    /// form a basis of the degree `d` part of the algebra. Every generator
    /// must have a nonnegative, nonzero degree.
    pub fn irreducible_words(&self, d: &Multidegree) -> Vec<Word> {
        let mut out = Vec::new();
        if !d.is_nonnegative() || d.len() != self.grading_rank() {
            return out;
        }
        let mut stack = vec![(Vec::new(), Multidegree::zero(d.len()))];
        while let Some((w, deg)) = stack.pop() {
            if &deg == d {
                out.push(w);
                continue;
            }
            for g in 0..self.num_generators() {
                let nd = &deg + &self.grading[g];
                if nd == deg || !nd.dominated_by(d) {
                    continue;
                }
                let mut v = w.clone();
                v.push(g);
                // irreducibility only needs checking at the new suffix
                let tail = v.len().saturating_sub(self.lhs_lengths.last().copied().unwrap_or(0));
                if self.first_obstruction(&v[tail..]).is_none() {
                    stack.push((v, nd));
                }
            }
        }
        out.sort_by(|a, b| deglex_cmp(a, b));
        out
    }

    /// Normal form of a linear combination: rewrites the largest reducible
    /// word at its first obstruction until every word is irreducible.
    pub fn normal_form_comb(&self, comb: &LinComb) -> Result<LinComb> {
        let mut work: BTreeMap<DegLex, Coeff> = BTreeMap::new();
        for (w, c) in comb {
            add_deglex(&mut work, w.clone(), *c);
        }
        let mut out = LinComb::new();
        let mut steps = 0usize;
        while let Some((DegLex(w), c)) = work.pop_last() {
            match self.first_obstruction(&w) {
                None => add_term(&mut out, w, c),
                Some((start, len)) => {
                    steps += 1;
                    if steps > self.step_cap {
                        return Err(Error::RewriteStepCap { steps: self.step_cap });
                    }
                    let rule = &self.rules[self.lhs_index[&w[start..start + len]]];
                    for (r, rc) in &rule.rhs {
                        let mut v = Vec::with_capacity(w.len() - len + r.len());
                        v.extend_from_slice(&w[..start]);
                        v.extend_from_slice(r);
                        v.extend_from_slice(&w[start + len..]);
                        add_deglex(&mut work, v, c * rc);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn normal_form(&self, w: &[usize]) -> Result<LinComb> {
        let mut comb = LinComb::new();
        comb.insert(w.to_vec(), Coeff::one());
        self.normal_form_comb(&comb)
    }

    /// For presentations whose rules are monomial (`lhs -> single word`),
    /// the normal form is a single word.
    pub fn normal_word(&self, w: &[usize]) -> Result<Word> {
        let nf = self.normal_form(w)?;
        match nf.iter().next() {
            Some((v, c)) if nf.len() == 1 && c.is_one() => Ok(v.clone()),
            _ => Err(Error::InvalidPresentation(format!(
                "normal form of {} is not a single word",
                self.format_word(w)
            ))),
        }
    }

    /// Every overlap and inclusion of obstructions, with both branches
    /// reduced to normal form.
    pub fn composition_check(&self) -> Result<CompositionReport> {
        let mut compositions = Vec::new();
        for r in &self.rules {
            for s in &self.rules {
                // overlaps: a proper suffix of r.lhs equals a proper prefix of s.lhs
                for k in 1..r.lhs.len().min(s.lhs.len()) {
                    if r.lhs[r.lhs.len() - k..] != s.lhs[..k] {
                        continue;
                    }
                    let mut word = r.lhs.clone();
                    word.extend_from_slice(&s.lhs[k..]);
                    let left = self.normal_form_comb(&splice(&r.rhs, &[], &s.lhs[k..]))?;
                    let right = self.normal_form_comb(&splice(&s.rhs, &r.lhs[..r.lhs.len() - k], &[]))?;
                    compositions.push(self.composition_entry("overlap", word, left, right));
                }
                // inclusions: s.lhs occurs strictly inside r.lhs
                if r.lhs != s.lhs {
                    for start in 0..r.lhs.len().saturating_sub(s.lhs.len() - 1) {
                        if r.lhs[start..start + s.lhs.len()] == s.lhs[..] {
                            let left = self.normal_form_comb(&r.rhs)?;
                            let right = self.normal_form_comb(&splice(
                                &s.rhs,
                                &r.lhs[..start],
                                &r.lhs[start + s.lhs.len()..],
                            ))?;
                            compositions.push(self.composition_entry("inclusion", r.lhs.clone(), left, right));
                        }
                    }
                }
            }
        }
        let failures = compositions.iter().filter(|c| !c.resolves).count();
        Ok(CompositionReport { presentation: self.name.clone(), checked: compositions.len(), failures, compositions })
    }

    fn composition_entry(&self, kind: &'static str, word: Word, left: LinComb, right: LinComb) -> Composition {
        Composition {
            kind,
            word_text: self.format_word(&word),
            resolves: left == right,
            left: self.format_comb(&left),
            right: self.format_comb(&right),
            word,
        }
    }

    pub fn format_comb(&self, comb: &LinComb) -> String {
        if comb.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in comb.iter().rev().enumerate() {
            let neg = *c < Coeff::zero();
            let abs = if neg { -c } else { *c };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}·"));
            }
            s.push_str(&self.format_word(w));
        }
        s
    }

    pub fn to_json_view(&self) -> PresentationJson {
        PresentationJson {
            name: self.name.clone(),
            generators: self.generators.clone(),
            order: "deg-lex; generators listed in increasing order",
            rules: self
                .rules
                .iter()
                .map(|r| RuleJson {
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.iter().map(|(w, c)| TermJson { coeff: c.to_string(), word: w.clone() }).collect(),
                })
                .collect(),
            augmentation: self.augmentation.iter().map(ToString::to_string).collect(),
        }
    }

    /// The columns backing the generators of a plactic presentation.
    pub fn columns(&self) -> Option<&[Column]> {
        self.columns.as_deref()
    }

    pub fn column(&self, g: usize) -> Column {
        self.columns.as_ref().expect("not a column presentation")[g]
    }

    pub fn column_generator(&self, c: Column) -> Option<usize> {
        self.column_index.get(&c).copied()
    }

    /// A column word as a generator word; empty columns are dropped.
    pub fn columns_to_word(&self, cols: &[Column]) -> Result<Word> {
        cols.iter()
            .filter(|c| !c.is_empty())
            .map(|&c| {
                self.column_generator(c)
                    .ok_or_else(|| Error::InvalidColumn(format!("{c} is not a generator of {}", self.name)))
            })
            .collect()
    }

    pub fn word_to_columns(&self, w: &[usize]) -> Vec<Column> {
        w.iter().map(|&g| self.column(g)).collect()
    }

    /// Normal form of a letter word, as columns.
    pub fn letters_normal_form(&self, w: &[Letter]) -> Result<Vec<Column>> {
        let cols: Vec<Column> = w.iter().map(|&x| Column::singleton(x as usize)).collect();
        let word = self.columns_to_word(&cols)?;
        Ok(self.word_to_columns(&self.normal_word(&word)?))
    }
}

fn add_deglex(work: &mut BTreeMap<DegLex, Coeff>, w: Word, c: Coeff) {
    if c.is_zero() {
        return;
    }
    let key = DegLex(w);
    match work.get_mut(&key) {
        Some(old) => {
            *old += c;
            if old.is_zero() {
                work.remove(&key);
            }
        }
        None => {
            work.insert(key, c);
        }
    }
}

fn splice(comb: &LinComb, prefix: &[usize], suffix: &[usize]) -> LinComb {
    let mut out = LinComb::new();
    for (w, c) in comb {
        let mut v = prefix.to_vec();
        v.extend_from_slice(w);
        v.extend_from_slice(suffix);
        add_term(&mut out, v, *c);
    }
    out
}

fn contains_subword(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[derive(Clone, Debug, Serialize)]
pub struct Composition {
    pub kind: &'static str,
    pub word: Word,
    pub word_text: String,
    pub resolves: bool,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub presentation: String,
    pub checked: usize,
    pub failures: usize,
    pub compositions: Vec<Composition>,
}

impl CompositionReport {
    pub fn failing_words(&self) -> Vec<String> {
        let set: HashSet<&str> = self.compositions.iter().filter(|c| !c.resolves).map(|c| c.word_text.as_str()).collect();
        let mut v: Vec<String> = set.into_iter().map(str::to_string).collect();
        v.sort();
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleJson {
    pub lhs: Word,
    pub rhs: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationJson {
    pub name: String,
    pub generators: Vec<String>,
    pub order: &'static str,
    pub rules: Vec<RuleJson>,
    pub augmentation: Vec<String>,
}

/// The column presentation of the plactic monoid: generators are the
/// nonempty columns in column order and every leading pair `a·b` rewrites to
/// `(a∨b)·(a∧b)`, or to `a∨b` alone when the wedge is empty. The
/// augmentation sends every column to 1 and the grading is the content.
pub fn plactic_presentation(n: usize) -> Result<Presentation> {
    if n == 0 || n > 16 {
        return Err(Error::Unsupported(format!("alphabet size {n} (supported: 1..=16)")));
    }
    let cols = Column::generators(n);
    let index: HashMap<Column, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut rules = Vec::new();
    for &a in &cols {
        for &b in &cols {
            if is_leading(a, b) {
                let (v, w) = vee_wedge(a, b);
                let mut rhs_word = vec![index[&v]];
                if !w.is_empty() {
                    rhs_word.push(index[&w]);
                }
                let mut rhs = LinComb::new();
                rhs.insert(rhs_word, Coeff::one());
                rules.push(Rule { lhs: vec![index[&a], index[&b]], rhs });
            }
        }
    }
    let grading = cols
        .iter()
        .map(|c| Multidegree((1..=n).map(|i| i64::from(c.contains(i))).collect()))
        .collect();
    let mut p = Presentation::new(
        format!("plactic-{n}"),
        cols.iter().map(ToString::to_string).collect(),
        rules,
        vec![Coeff::one(); cols.len()],
        grading,
    )?
    .with_separator("·");
    p.columns = Some(cols);
    p.column_index = index;
    Ok(p)
}

/// Generator indices of the two-generator presentation: `y < x`.
pub const EX_Y: usize = 0;
pub const EX_X: usize = 1;

/// The algebra `k<x, y>/(x² − y²)` with `x > y`, completed by `xy² → y²x`.
/// `eps` gives the augmentation `(ε(x), ε(y))`; it must satisfy
/// `ε(x)² = ε(y)²`.
pub fn example15_presentation(eps: (Coeff, Coeff)) -> Result<Presentation> {
    example15_with_rules(eps, true)
}

/// The same algebra with only the defining relation `x² → y²`, which is not
/// yet a Gröbner–Shirshov basis.
pub fn example15_incomplete(eps: (Coeff, Coeff)) -> Result<Presentation> {
    example15_with_rules(eps, false)
}

fn example15_with_rules(eps: (Coeff, Coeff), completed: bool) -> Result<Presentation> {
    let one = Coeff::one();
    let mut rules = vec![Rule { lhs: vec![EX_X, EX_X], rhs: [(vec![EX_Y, EX_Y], one)].into() }];
    if completed {
        rules.push(Rule { lhs: vec![EX_X, EX_Y, EX_Y], rhs: [(vec![EX_Y, EX_Y, EX_X], one)].into() });
    }
    let name = if completed { "x2-y2" } else { "x2-y2-incomplete" };
    Presentation::new(
        name,
        vec!["y".into(), "x".into()],
        rules,
        vec![eps.1, eps.0],
        vec![Multidegree(vec![1]), Multidegree(vec![1])],
    )
}
