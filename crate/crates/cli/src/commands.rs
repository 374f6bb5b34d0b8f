//! One function per subcommand. Each returns a [`Report`]; printing and exit
//! codes are handled by the caller.

use std::thread;

use serde_json::{json, Value};

use plactic_core::anick::closed::{d_squared_closed, differential_closed, ClosedVariant, Vanishing};
use plactic_core::anick::example15::example15_fixtures;
use plactic_core::anick::{d_squared_admt, enumerate_chains, Mode, ModVec, MorseEngine, Tuple};
use plactic_core::cohomology::ext::{ext_ring_report, ExtComplex};
use plactic_core::cohomology::graph::commutation_graph;
use plactic_core::cohomology::hh::{center, verify_derivations, HhComplex};
use plactic_core::cohomology::hh_cup::{
    check_exchange, check_formal_sums, check_permutation_cup, check_vanishing, ExchangeScope, WedgeFactor,
};
use plactic_core::column::{vee, vee_wedge, verify_identities, wedge, Column};
use plactic_core::letters::{check_word, columns_to_letters, max_states, rsk_normal_form, Letter};
use plactic_core::rewrite::{plactic_presentation, Coeff, Presentation};
use plactic_core::{Error, Field};

/// The closed-formula variant that agrees with the Morse differential.
pub const VALIDATED: ClosedVariant = ClosedVariant { vanishing: Vanishing::Structural, w: None };

/// Augmentations used by `example15` when none is given.
pub const DEFAULT_EPS: [(i64, i64); 2] = [(1, 1), (2, -2)];

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// The computation itself failed: exit code 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LetterOutOfRange { .. }
            | Error::InvalidColumn(_)
            | Error::InvalidPresentation(_)
            | Error::Unsupported(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

pub struct Report {
    /// `None` for pure computations, otherwise whether every check passed.
    pub passed: Option<bool>,
    pub json: Value,
    /// Overrides the generic text rendering.
    pub text: Option<String>,
    pub dot: Option<String>,
    /// Field-independent data compared by `--exact`.
    pub summary: Value,
}

impl Report {
    fn new(passed: Option<bool>, json: Value) -> Self {
        Report { passed, json, text: None, dot: None, summary: Value::Null }
    }

    fn summary(mut self, summary: Value) -> Self {
        self.summary = summary;
        self
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn column_names(cols: &[Column]) -> Vec<String> {
    cols.iter().map(Column::to_string).collect()
}

fn letters_text(w: &[Letter]) -> String {
    if w.iter().all(|&x| x <= 9) {
        w.iter().map(u8::to_string).collect()
    } else {
        format!("[{}]", w.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
    }
}

pub fn presentation(n: usize) -> Result<Presentation, Failure> {
    Ok(plactic_presentation(n)?)
}

pub fn normal_form(n: usize, word: &[Letter]) -> Outcome {
    check_word(word, n)?;
    let p = presentation(n)?;
    let t = rsk_normal_form(word);
    let cols = t.to_columns();
    let rewritten = p.letters_normal_form(word)?;
    let agrees = rewritten == cols;
    let json = json!({
        "word": letters_text(word),
        "tableau": t.rows(),
        "shape": t.shape(),
        "normal_form": column_names(&cols),
        "column_reading": letters_text(&t.column_reading()),
        "rewriting_agrees": agrees,
    });
    let text = if t.is_empty() {
        "(empty tableau)".to_string()
    } else {
        t.rows().iter().rev().map(|r| letters_text(r)).collect::<Vec<_>>().join("\n")
    };
    Ok(Report { text: Some(text), ..Report::new(Some(agrees), json) })
}

pub fn product(n: usize, u: &[Column], v: &[Column]) -> Outcome {
    let p = presentation(n)?;
    let all: Vec<Column> = u.iter().chain(v).copied().collect();
    let cols = rsk_normal_form(&columns_to_letters(&all)).to_columns();
    let rewritten = p.word_to_columns(&p.normal_word(&p.columns_to_word(&all)?)?);
    let agrees = rewritten == cols;
    let json = json!({ "normal_form": column_names(&cols), "rewriting_agrees": agrees });
    Ok(Report { text: Some(column_names(&cols).join("·")), ..Report::new(Some(agrees), json) })
}

pub fn vee_or_wedge(a: Column, b: Column, is_vee: bool) -> Outcome {
    let (key, c) = if is_vee { ("vee", vee(a, b)) } else { ("wedge", wedge(a, b)) };
    let (v, w) = vee_wedge(a, b);
    let json = json!({ key: c.to_string(), "product_normal_form": column_names(&[v, w].into_iter().filter(|c| !c.is_empty()).collect::<Vec<_>>()) });
    Ok(Report { text: Some(c.to_string()), ..Report::new(None, json) })
}

pub fn identities(n: usize) -> Outcome {
    let r = verify_identities(n);
    Ok(Report::new(Some(r.total_failures() == 0), to_json(&r)))
}

pub fn gsb_check(n: usize) -> Outcome {
    let r = presentation(n)?.composition_check()?;
    Ok(Report::new(Some(r.failures == 0), to_json(&r)))
}

fn format_tuple(p: &Presentation, t: &Tuple) -> String {
    format!("[{}]", t.iter().map(|w| p.format_word(w)).collect::<Vec<_>>().join("|"))
}

pub fn chains(n: usize, degree: usize) -> Outcome {
    let p = presentation(n)?;
    let list: Vec<String> = enumerate_chains(&p, degree + 1).iter().map(|c| format_tuple(&p, c)).collect();
    let text = list.join("\n");
    let json = json!({ "degree": degree, "count": list.len(), "chains": list });
    Ok(Report { text: Some(text), ..Report::new(None, json) })
}

fn vec_json<F: Field>(e: &MorseEngine<'_, F>, v: &ModVec<F::Elem>) -> Value {
    let p = e.presentation();
    v.iter()
        .map(|(t, c)| {
            json!({
                "coeff": e.field().display(c),
                "left": p.format_word(&t.left),
                "cell": format_tuple(p, &t.cell),
                "right": p.format_word(&t.right),
            })
        })
        .collect()
}

pub struct DiffArgs<'a> {
    pub chain: &'a Tuple,
    pub closed: bool,
    pub mode: Mode,
    pub dot: bool,
}

pub fn diff<F: Field>(p: &Presentation, field: F, args: DiffArgs<'_>) -> Outcome {
    let e = MorseEngine::new(p, field.clone(), args.mode)?;
    if !e.is_chain(args.chain) {
        return Err(Failure::Usage(format!("{} is not an Anick chain", format_tuple(p, args.chain))));
    }
    let (implementation, v) = if args.closed {
        ("closed", differential_closed(p, &field, args.chain, VALIDATED, args.mode)?)
    } else {
        ("admt", e.differential(args.chain)?)
    };
    let mut report = Report::new(
        None,
        json!({
            "chain": format_tuple(p, args.chain),
            "mode": args.mode,
            "implementation": implementation,
            "differential": e.format_vec(&v),
            "terms": vec_json(&e, &v),
        }),
    );
    report.text = Some(e.format_vec(&v));
    report.summary = json!({ "terms": v.len() });
    if args.dot {
        report.dot = Some(e.morse_graph_dot(args.chain, max_states())?);
    }
    Ok(report)
}

/// `d∘d = 0` for both implementations in both modes, one thread per block.
pub fn d2_check<F: Field>(p: &Presentation, field: F, max: usize) -> Outcome {
    let blocks = [(Mode::Left, false), (Mode::Left, true), (Mode::Bimodule, false), (Mode::Bimodule, true)];
    let results: Vec<Result<Value, Failure>> = thread::scope(|s| {
        let handles: Vec<_> = blocks
            .iter()
            .map(|&(mode, closed)| {
                let field = field.clone();
                s.spawn(move || -> Result<(bool, Value), Failure> {
                    let e = MorseEngine::new(p, field, mode)?;
                    let r = if closed { d_squared_closed(&e, VALIDATED, max)? } else { d_squared_admt(&e, max)? };
                    Ok((r.passed(), to_json(&r)))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                let (ok, v) = h.join().map_err(|_| Failure::Runtime("worker panicked".into()))??;
                Ok(json!({ "passed": ok, "report": v }))
            })
            .collect()
    });
    let reports: Vec<Value> = results.into_iter().collect::<Result<_, _>>()?;
    let passed = reports.iter().all(|r| r["passed"] == json!(true));
    let summary: Vec<Value> = reports.iter().map(|r| r["passed"].clone()).collect();
    Ok(Report::new(Some(passed), json!({ "max_degree": max, "checks": reports })).summary(json!(summary)))
}

pub fn ext_betti<F: Field>(p: &Presentation, field: F, max: usize) -> Outcome {
    let ext = ExtComplex::new(p, field, max)?;
    let betti = ext.betti();
    let euler = ext.euler();
    let ok = ext.squares_to_zero() && euler.0 == euler.1;
    let counts: Vec<usize> = (0..=max).map(|k| ext.chains(k).len()).collect();
    let json = json!({ "betti": betti, "chain_counts": counts, "euler": [euler.0, euler.1], "squares_to_zero": ext.squares_to_zero() });
    Ok(Report { text: Some(format!("{betti:?}")), ..Report::new(Some(ok), json) }.summary(json!(betti)))
}

pub fn ext_ring<F: Field>(p: &Presentation, field: F, n: usize, max: usize) -> Outcome {
    let ext = ExtComplex::new(p, field, max)?;
    let r = ext_ring_report(&ext, n)?;
    let ok = r.xi.passed()
        && r.shuffle_ring_laws()
        && r.transfer_consistent()
        && r.determinant_mismatches == 0
        && (n > 2 || r.shuffle_agrees());
    let mut json = to_json(&r);
    json["shuffle_ring_laws"] = json!(r.shuffle_ring_laws());
    json["transfer_consistent"] = json!(r.transfer_consistent());
    json["shuffle_agrees_with_transfer"] = json!(r.shuffle_agrees());
    let summary = json!([r.betti, r.products_rank, r.nonzero_triples, r.shuffle_agrees()]);
    Ok(Report::new(Some(ok), json).summary(summary))
}

pub fn hh_center<F: Field>(p: &Presentation, field: F, n: usize, window: usize) -> Outcome {
    let hh = HhComplex::new(p, field, 0)?;
    let r = center(&hh, n, window)?;
    let summary = json!(r.elements);
    Ok(Report::new(Some(r.passed()), to_json(&r)).summary(summary))
}

pub fn hh_derivations<F: Field>(p: &Presentation, field: F, n: usize) -> Outcome {
    let hh = HhComplex::new(p, field, 1)?;
    let checks = verify_derivations(&hh, n)?;
    let passed = checks.iter().all(|c| c.passed());
    let summary: Vec<bool> = checks.iter().map(|c| c.cocycle).collect();
    Ok(Report::new(Some(passed), json!({ "derivations": to_json(&checks) })).summary(json!(summary)))
}

pub fn hh_cup(n: usize) -> Outcome {
    let p = presentation(n)?;
    let prop = check_permutation_cup(&p, n)?;
    let vanishing = check_vanishing(&p, n)?;
    let exchange: Vec<_> = ExchangeScope::all().into_iter().map(|s| check_exchange(&p, n, s)).collect::<Result<_, _>>()?;
    let sums: Vec<_> = [WedgeFactor::Whole, WedgeFactor::Suffix].into_iter().map(|f| check_formal_sums(n, f, true)).collect();
    let nested_ok = exchange.iter().all(|x| x.scope != ExchangeScope::Nested || x.failures == 0);
    let passed = prop.passed() && vanishing.passed() && nested_ok;
    let json = json!({
        "formula_vs_two_term": to_json(&prop),
        "vanishing": to_json(&vanishing),
        "exchange": to_json(&exchange),
        "formal_sums": to_json(&sums),
    });
    Ok(Report::new(Some(passed), json))
}

pub fn graph(n: usize) -> Outcome {
    let g = commutation_graph(n);
    let bad = g.disagreements_with_columns();
    let adjacency: serde_json::Map<String, Value> = g.adjacency().into_iter().map(|(k, v)| (k, json!(v))).collect();
    let json = json!({
        "n": n,
        "vertices": column_names(&g.vertices),
        "edges": g.edges.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
        "clique_profile": g.clique_profile(),
        "adjacency": adjacency,
        "column_test_disagreements": bad.len(),
    });
    Ok(Report { dot: Some(g.to_dot()), ..Report::new(Some(bad.is_empty()), json) })
}

/// Runs the two-generator fixtures, one thread per augmentation.
pub fn example15(eps: &[(Coeff, Coeff)]) -> Outcome {
    let reports: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = eps.iter().map(|&e| s.spawn(move || example15_fixtures(e))).collect();
        handles.into_iter().map(|h| h.join().expect("fixture worker panicked")).collect::<Result<Vec<_>, _>>()
    })?;
    let passed = reports.iter().all(|r| r.passed());
    let mut lines = Vec::new();
    for r in &reports {
        lines.push(format!("ε(x)={}, ε(y)={}", r.eps.0, r.eps.1));
        for f in r.fixtures.iter().chain(&r.corrected) {
            lines.push(format!("  {} {}", if f.matches { "ok  " } else { "FAIL" }, f.name));
            if !f.matches {
                lines.push(format!("       engine: {}", f.actual));
            }
        }
    }
    let json = json!({ "augmentations": to_json(&reports) });
    Ok(Report { text: Some(lines.join("\n")), ..Report::new(Some(passed), json) })
}
