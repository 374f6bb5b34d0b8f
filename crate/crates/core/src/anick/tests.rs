use super::closed::{differential_closed, d_squared_closed, ClosedVariant, Vanishing};
use super::exactness::resolution_homology;
use super::*;
use crate::column::Column;
use crate::field::{PrimeField, Rationals};
use crate::multidegree::Multidegree;
use crate::rewrite::{example15_presentation, plactic_presentation, Coeff, EX_X, EX_Y};

const VALIDATED: ClosedVariant = ClosedVariant { vanishing: Vanishing::Structural, w: None };

fn gen(p: &Presentation, s: &str) -> usize {
    p.column_generator(s.parse::<Column>().unwrap()).unwrap()
}

fn chain(p: &Presentation, cols: &[&str]) -> Tuple {
    cols.iter().map(|s| vec![gen(p, s)]).collect()
}

fn word(p: &Presentation, cols: &[&str]) -> Word {
    cols.iter().map(|s| gen(p, s)).collect()
}

/// Builds a left-mode vector from `(coefficient, left word, cell)` triples.
fn left_vec(terms: &[(i64, Word, Tuple)]) -> ModVec<num_rational::BigRational> {
    let f = Rationals;
    let mut v = ModVec::new();
    for (c, l, cell) in terms {
        v.add(&f, Term { cell: cell.clone(), left: l.clone(), right: Vec::new() }, &f.from_i64(*c));
    }
    v
}

#[test]
fn plactic_chain_counts() {
    let p2 = plactic_presentation(2).unwrap();
    let counts: Vec<usize> = (0..=5).map(|k| enumerate_chains(&p2, k).len()).collect();
    assert_eq!(counts, vec![1, 3, 3, 1, 0, 0]);
    let mut want = vec![chain(&p2, &["2", "1"]), chain(&p2, &["1", "21"]), chain(&p2, &["2", "21"])];
    want.sort_by(tuple_cmp);
    assert_eq!(enumerate_chains(&p2, 2), want);
    assert_eq!(enumerate_chains(&p2, 3), vec![chain(&p2, &["2", "1", "21"])]);
    let p3 = plactic_presentation(3).unwrap();
    let counts: Vec<usize> = (1..=4).map(|k| enumerate_chains(&p3, k).len()).collect();
    assert_eq!(counts, vec![7, 22, 42, 57]);
}

#[test]
fn plactic_chains_are_leading_pair_sequences() {
    for n in 1..=3 {
        let p = plactic_presentation(n).unwrap();
        let cols = Column::generators(n);
        for k in 1..=3 {
            let mut brute: Vec<Tuple> = Vec::new();
            let mut stack: Vec<Vec<Column>> = cols.iter().map(|&c| vec![c]).collect();
            while let Some(t) = stack.pop() {
                if t.len() == k {
                    brute.push(t.iter().map(|&c| vec![p.column_generator(c).unwrap()]).collect());
                    continue;
                }
                for &c in &cols {
                    if crate::column::is_leading(*t.last().unwrap(), c) {
                        let mut u = t.clone();
                        u.push(c);
                        stack.push(u);
                    }
                }
            }
            brute.sort_by(tuple_cmp);
            assert_eq!(enumerate_chains(&p, k), brute, "n={n} k={k}");
        }
    }
}

#[test]
fn plactic_n2_differentials() {
    let p = plactic_presentation(2).unwrap();
    let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap();
    let c21 = chain(&p, &["2", "1"]);
    let expected = left_vec(&[
        (1, word(&p, &["2"]), chain(&p, &["1"])),
        (1, vec![], chain(&p, &["2"])),
        (-1, vec![], chain(&p, &["21"])),
    ]);
    assert_eq!(e.differential(&c21).unwrap(), expected);

    let expected = left_vec(&[
        (-1, vec![], chain(&p, &["21"])),
        (1, word(&p, &["1"]), chain(&p, &["21"])),
        (1, vec![], chain(&p, &["1"])),
        (-1, word(&p, &["21"]), chain(&p, &["1"])),
    ]);
    assert_eq!(e.differential(&chain(&p, &["1", "21"])).unwrap(), expected);

    let expected = left_vec(&[
        (1, word(&p, &["2"]), chain(&p, &["1", "21"])),
        (1, vec![], chain(&p, &["2", "21"])),
        (-1, vec![], chain(&p, &["2", "1"])),
        (1, word(&p, &["21"]), chain(&p, &["2", "1"])),
    ]);
    assert_eq!(e.differential(&chain(&p, &["2", "1", "21"])).unwrap(), expected);

    // degree 0: d[a] = a[] - ε(a)[]
    let expected = left_vec(&[(1, word(&p, &["21"]), vec![]), (-1, vec![], vec![])]);
    assert_eq!(e.differential(&chain(&p, &["21"])).unwrap(), expected);
}

#[test]
fn plactic_n3_w_type_differential() {
    let p = plactic_presentation(3).unwrap();
    let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap();
    let expected = left_vec(&[
        (1, vec![], chain(&p, &["32", "21"])),
        (-1, vec![], chain(&p, &["32", "1"])),
        (1, word(&p, &["32"]), chain(&p, &["1", "21"])),
        (1, word(&p, &["321"]), chain(&p, &["2", "1"])),
    ]);
    assert_eq!(e.differential(&chain(&p, &["32", "1", "21"])).unwrap(), expected);
}

#[test]
fn d_squared_vanishes_for_small_plactic() {
    for mode in [Mode::Left, Mode::Bimodule] {
        let p = plactic_presentation(2).unwrap();
        let e = MorseEngine::new(&p, Rationals, mode).unwrap();
        assert!(d_squared_admt(&e, 4).unwrap().passed());
        assert!(d_squared_closed(&e, VALIDATED, 4).unwrap().passed());
        let p = plactic_presentation(3).unwrap();
        let e = MorseEngine::new(&p, PrimeField::default(), mode).unwrap();
        assert!(d_squared_admt(&e, 2).unwrap().passed());
    }
}

#[test]
fn closed_formula_matches_admt() {
    for n in 1..=3 {
        let p = plactic_presentation(n).unwrap();
        for mode in [Mode::Left, Mode::Bimodule] {
            let e = MorseEngine::new(&p, Rationals, mode).unwrap();
            for k in 1..=3 {
                for c in enumerate_chains(&p, k) {
                    let a = e.differential(&c).unwrap();
                    let b = differential_closed(&p, &Rationals, &c, VALIDATED, mode).unwrap();
                    assert_eq!(a, b, "{}", e.format_tuple(&c));
                }
            }
        }
    }
}

#[test]
fn retraction_and_projection() {
    for n in 2..=3 {
        let p = plactic_presentation(n).unwrap();
        for mode in [Mode::Left, Mode::Bimodule] {
            let e = MorseEngine::new(&p, Rationals, mode).unwrap();
            for k in 0..=3 {
                for c in enumerate_chains(&p, k) {
                    let back = e.h_check_vec(&e.h_hat(&c).unwrap()).unwrap();
                    assert_eq!(back, ModVec::single(&Rationals, Term::cell(c.clone())), "{}", e.format_tuple(&c));
                    assert_eq!(e.h_check(&c).unwrap(), ModVec::single(&Rationals, Term::cell(c.clone())));
                }
            }
        }
    }
}

#[test]
fn homotopy_maps_are_chain_maps() {
    // ȟ∂ = dȟ on bar tuples and ∂ĥ = ĥd on chains
    let p = plactic_presentation(2).unwrap();
    let f = Rationals;
    let e = MorseEngine::new(&p, f, Mode::Left).unwrap();
    let bar_vec = |u: &Tuple| {
        let mut v = ModVec::new();
        for (l, t, r, s) in e.bar_boundary(u).unwrap() {
            v.add(&f, Term { cell: t, left: l, right: r }, &s);
        }
        v
    };
    let bar_apply = |v: &ModVec<_>| {
        let mut acc = ModVec::new();
        for (t, c) in v.iter() {
            e.add_sandwich(&mut acc, c, &t.left, &bar_vec(&t.cell), &t.right).unwrap();
        }
        acc
    };
    for k in 1..=3 {
        for c in enumerate_chains(&p, k) {
            let lhs = bar_apply(&e.h_hat(&c).unwrap());
            let d = e.differential(&c).unwrap();
            let mut rhs = ModVec::new();
            for (t, coef) in d.iter() {
                e.add_sandwich(&mut rhs, coef, &t.left, &e.h_hat(&t.cell).unwrap(), &t.right).unwrap();
            }
            assert_eq!(lhs, rhs, "{}", e.format_tuple(&c));
        }
    }
    let g = |s: &str| vec![gen(&p, s)];
    for u in [vec![g("2"), g("1")], vec![g("1"), g("2")], vec![g("21"), g("2"), g("1")], vec![g("1"), g("1"), g("2")]] {
        let lhs = e.h_check_vec(&bar_apply(&ModVec::single(&f, Term::cell(u.clone())))).unwrap();
        let rhs = e.differential_vec(&e.h_check(&u).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{}", e.format_tuple(&u));
    }
}

#[test]
fn bimodule_differentials_conserve_content() {
    let p = plactic_presentation(3).unwrap();
    let e = MorseEngine::new(&p, Rationals, Mode::Bimodule).unwrap();
    let content = |ws: &[&Word]| ws.iter().fold(Multidegree::zero(3), |acc, w| &acc + &p.word_degree(w));
    for k in 1..=3 {
        for c in enumerate_chains(&p, k) {
            let want = content(&c.iter().collect::<Vec<_>>());
            for (t, _) in e.differential(&c).unwrap().iter() {
                let mut parts: Vec<&Word> = t.cell.iter().collect();
                parts.push(&t.left);
                parts.push(&t.right);
                assert_eq!(content(&parts), want, "{}", e.format_term(t));
            }
        }
    }
}

#[test]
fn resolutions_are_exact_on_degree_boxes() {
    let p = plactic_presentation(2).unwrap();
    let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap();
    let r = resolution_homology(&e, 2, &Multidegree(vec![2, 2])).unwrap();
    assert!(r.exact(), "{:?}", r.homology);
    let p = plactic_presentation(3).unwrap();
    let e = MorseEngine::new(&p, PrimeField::default(), Mode::Left).unwrap();
    let r = resolution_homology(&e, 2, &Multidegree(vec![1, 1, 1])).unwrap();
    assert!(r.exact(), "{:?}", r.homology);
    for eps in [(1, 1), (0, 0), (1, -1)] {
        let p = example15_presentation((Coeff::from_integer(eps.0), Coeff::from_integer(eps.1))).unwrap();
        let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap();
        let r = resolution_homology(&e, 3, &Multidegree(vec![5])).unwrap();
        assert!(r.exact(), "{eps:?} {:?}", r.homology);
    }
}

fn x_chain(xs: usize, yy: bool) -> Tuple {
    let mut c: Tuple = vec![vec![EX_X]; xs];
    if yy {
        c.push(vec![EX_Y, EX_Y]);
    }
    c
}

#[test]
fn example15_chains() {
    let p = example15_presentation((Coeff::from_integer(1), Coeff::from_integer(1))).unwrap();
    for m in 1..=5 {
        let mut want = vec![x_chain(m + 1, false), x_chain(m, true)];
        want.sort_by(tuple_cmp);
        assert_eq!(enumerate_chains(&p, m + 1), want);
    }
    assert_eq!(enumerate_chains(&p, 1), vec![vec![vec![EX_Y]], vec![vec![EX_X]]]);
}

#[test]
fn example15_differentials_in_general_form() {
    for (ex, ey) in [(1i64, 1i64), (1, -1), (0, 0), (-1, 1)] {
        let p = example15_presentation((Coeff::from_integer(ex), Coeff::from_integer(ey))).unwrap();
        let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap();
        let (x, y) = (vec![EX_X], vec![EX_Y]);
        // d₁[x|x] = x[x] + ε(x)[x] - y[y] - ε(y)[y]
        let d1 = left_vec(&[(1, x.clone(), vec![x.clone()]), (ex, vec![], vec![x.clone()]), (-1, y.clone(), vec![y.clone()]), (-ey, vec![], vec![y.clone()])]);
        assert_eq!(e.differential(&x_chain(2, false)).unwrap(), d1);
        for l in 2..=5i64 {
            let s = if l % 2 == 0 { 1 } else { -1 };
            let lu = l as usize;
            let want = left_vec(&[
                (1, x.clone(), x_chain(lu - 1, true)),
                (s * ex, vec![], x_chain(lu - 1, true)),
                (-s * ey * ey, vec![], x_chain(lu, false)),
                (s, vec![EX_Y, EX_Y], x_chain(lu, false)),
            ]);
            assert_eq!(e.differential(&x_chain(lu, true)).unwrap(), want, "ε=({ex},{ey}) ℓ={l}");
            let want = left_vec(&[
                (1, x.clone(), x_chain(lu, false)),
                (-s * ex, vec![], x_chain(lu, false)),
                (s, vec![], x_chain(lu - 1, true)),
            ]);
            assert_eq!(e.differential(&x_chain(lu + 1, false)).unwrap(), want, "ε=({ex},{ey}) ℓ={l}");
        }
        assert!(d_squared_admt(&e, 5).unwrap().passed());
    }
}

#[test]
fn budget_is_enforced() {
    let p = plactic_presentation(3).unwrap();
    let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap().with_budget(3);
    let c = chain(&p, &["31", "21", "321"]);
    assert!(matches!(e.differential(&c), Err(Error::MorseBudget(3))));
}

#[test]
fn non_chains_are_rejected() {
    let p = plactic_presentation(2).unwrap();
    let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap();
    assert!(e.differential(&chain(&p, &["1", "2"])).is_err());
    assert!(differential_closed(&p, &Rationals, &vec![vec![0, 1]], VALIDATED, Mode::Left).is_err());
}

#[test]
fn morse_graph_dot_output() {
    let p = plactic_presentation(2).unwrap();
    let e = MorseEngine::new(&p, Rationals, Mode::Left).unwrap();
    let dot = e.morse_graph_dot(&chain(&p, &["2", "1", "21"]), 1000).unwrap();
    assert!(dot.starts_with("digraph morse {"));
    assert!(dot.contains("style=dashed"));
    assert!(dot.trim_end().ends_with('}'));
}
