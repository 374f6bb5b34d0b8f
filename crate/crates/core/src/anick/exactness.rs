//! Homology of the augmented left-module resolution on a degree box.
//!
//! The differential never raises the degree of `coefficient ⊗ chain` (the
//! augmentation terms only remove generators), so the span of basis
//! elements of degree at most `W` is a subcomplex. Its associated graded
//! pieces are the homogeneous resolutions, hence the truncated complex is
//! exact whenever the full resolution is.

use std::collections::HashMap;

use serde::Serialize;

use super::{enumerate_chains, Mode, ModVec, MorseEngine, Term, Tuple};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multidegree::Multidegree;
use crate::rewrite::Word;
use crate::sparse::{rank, SparseMatrix};

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub presentation: String,
    pub window: Multidegree,
    pub max_degree: usize,
    /// `(homological degree, basis size, homology dimension)`, starting at
    /// degree `-1` (the algebra itself, augmented to the field).
    pub homology: Vec<(i64, usize, usize)>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.homology.iter().all(|&(_, _, h)| h == 0)
    }
}

struct Basis {
    elems: Vec<(Word, Tuple)>,
    index: HashMap<(Word, Tuple), usize>,
}

fn basis<F: Field>(engine: &MorseEngine<'_, F>, entries: usize, window: &Multidegree) -> Basis {
    let p = engine.presentation();
    let mut elems = Vec::new();
    for c in enumerate_chains(p, entries) {
        let cd = c.iter().fold(Multidegree::zero(window.len()), |acc, w| &acc + &p.word_degree(w));
        if !cd.dominated_by(window) {
            continue;
        }
        let rest = window - &cd;
        for d in Multidegree::box_iter(&Multidegree::zero(window.len()), &rest) {
            for w in p.irreducible_words(&d) {
                elems.push((w, c.clone()));
            }
        }
    }
    let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    Basis { elems, index }
}

/// Homology of the box-truncated augmented resolution in degrees
/// `-1..=max_degree`.
pub fn resolution_homology<F: Field>(
    engine: &MorseEngine<'_, F>,
    max_degree: usize,
    window: &Multidegree,
) -> Result<ExactnessReport> {
    if engine.mode() != Mode::Left {
        return Err(Error::Unsupported("exactness is checked for the left-module resolution".into()));
    }
    let f = engine.field();
    // bases[k] holds chains with k entries: homological degree k - 1
    let bases: Vec<Basis> = (0..=max_degree + 2).map(|k| basis(engine, k, window)).collect();
    let mut ranks = vec![0usize; bases.len()];
    // augmentation on degree -1
    let eps_row: Vec<F::Elem> = bases[0].elems.iter().map(|(w, _)| engine.eps_word(w)).collect();
    ranks[0] = usize::from(eps_row.iter().any(|e| !f.is_zero(e)));
    for k in 1..bases.len() {
        let (src, dst) = (&bases[k], &bases[k - 1]);
        let mut m = SparseMatrix::zeros(dst.elems.len(), src.elems.len());
        let mut cache: HashMap<Tuple, ModVec<F::Elem>> = HashMap::new();
        for (j, (w, c)) in src.elems.iter().enumerate() {
            if !cache.contains_key(c) {
                cache.insert(c.clone(), engine.differential(c)?);
            }
            let mut img = ModVec::new();
            engine.add_sandwich(&mut img, &f.one(), w, &cache[c], &[])?;
            for (t, v) in img.iter() {
                let Term { cell, left, .. } = t;
                let i = dst.index.get(&(left.clone(), cell.clone())).ok_or_else(|| {
                    Error::Matching(format!("{} leaves the degree box", engine.format_term(t)))
                })?;
                m.add_to(f, *i, j, v);
            }
        }
        ranks[k] = rank(f, &m);
    }
    let homology = (0..=max_degree + 1)
        .map(|k| {
            let dim = bases[k].elems.len();
            (k as i64 - 1, dim, dim - ranks[k] - ranks[k + 1])
        })
        .collect();
    Ok(ExactnessReport {
        presentation: engine.presentation().name().to_string(),
        window: window.clone(),
        max_degree,
        homology,
    })
}
