mod support;

use std::collections::{BTreeMap, HashMap, VecDeque};

use proptest::prelude::*;
use surgerykit::alexander::{alexander_polynomial, alexander_with_column, wirtinger};
use surgerykit::corpus::Corpus;
use surgerykit::groups::{binary_icosahedral_table, BINARY_ICOSAHEDRAL_CLASS_WORDS};
use surgerykit::linkdiag::{BraidWord, LinkDiagram};

#[test]
fn skein_conway_values() {
    assert_eq!(support::conway(2, &[1, 1, 1]), vec![1, 0, 1]);
    assert_eq!(support::conway(3, &[1, -2, 1, -2]), vec![1, 0, -1]);
    assert_eq!(support::conway(2, &[1, 1]), vec![0, 1]);
    assert_eq!(support::conway(2, &[]), Vec::<i64>::new());
}

#[test]
fn corpus_knots_match_skein() {
    for entry in &Corpus::embedded().links {
        if entry.expected.components != 1 {
            continue;
        }
        let braid = entry.diagram().unwrap().braid().cloned().expect("corpus knots carry braids");
        let oracle = support::skein_alexander(&braid);
        for d in entry.diagrams().unwrap() {
            assert_eq!(alexander_polynomial(&d).unwrap(), oracle, "{}", entry.name);
        }
        assert_eq!(oracle.to_string(), entry.expected.alexander, "{}", entry.name);
    }
}

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4)
        .prop_flat_map(|s| {
            let letter = (1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
            (Just(s), proptest::collection::vec(letter, 1..9))
        })
        .prop_map(|(s, letters)| BraidWord::new(s, letters).unwrap())
        .prop_filter("closes to a knot", |b| b.cycles().len() == 1)
}

fn any_braid() -> impl Strategy<Value = BraidWord> {
    (1usize..=4).prop_flat_map(|s| {
        let letter = if s == 1 {
            Just(Vec::new()).boxed()
        } else {
            proptest::collection::vec((1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]), 0..9)
                .boxed()
        };
        letter.prop_map(move |l| BraidWord::new(s, l).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_knots_match_skein(b in knot_braid()) {
        let d = LinkDiagram::from_braid(b.clone());
        prop_assert_eq!(alexander_polynomial(&d).unwrap(), support::skein_alexander(&b));
    }

    #[test]
    fn braid_and_traced_pd_agree(b in any_braid()) {
        let d = LinkDiagram::from_braid(b);
        let pd = d.to_pd();
        prop_assume!(!pd.0.is_empty());
        let traced = LinkDiagram::from_pd(pd).unwrap();
        prop_assert_eq!(traced.num_components() + d.free_components().len(), d.num_components());
        // Reversing a component keeps self-crossing signs and |lk|, which is
        // all a PD code fixes for a component that never passes under.
        let self_signs = |d: &LinkDiagram| -> Vec<i8> {
            d.crossings().iter().map(|c| if c.under == c.over { c.sign } else { 0 }).collect()
        };
        prop_assert_eq!(self_signs(&d), self_signs(&traced));
        let flat = |m: Vec<Vec<i64>>| {
            let mut v: Vec<i64> = m.into_iter().flatten().filter(|&x| x != 0).map(i64::abs).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(flat(traced.linking_matrix()), flat(d.linking_matrix()));
        if d.num_components() == 1 {
            prop_assert_eq!(alexander_polynomial(&traced).unwrap(), alexander_polynomial(&d).unwrap());
        }
    }

    #[test]
    fn column_choice_is_irrelevant(b in any_braid()) {
        let d = LinkDiagram::from_braid(b);
        let cols = wirtinger(&d).unwrap().presentation.generators.len();
        let first = alexander_with_column(&d, 0).unwrap();
        for c in 1..cols {
            prop_assert_eq!(&alexander_with_column(&d, c).unwrap(), &first);
        }
    }
}

type Mat = [[u8; 2]; 2];
const P: u8 = 5;

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0u8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = ((a[i][0] as u32 * b[0][j] as u32 + a[i][1] as u32 * b[1][j] as u32) % P as u32) as u8;
        }
    }
    c
}

fn pow(a: &Mat, k: u32) -> Mat {
    (0..k).fold([[1, 0], [0, 1]], |acc, _| mul(&acc, a))
}

fn inv(a: &Mat) -> Mat {
    // Determinant one.
    [[a[1][1], (P - a[0][1]) % P], [(P - a[1][0]) % P, a[0][0]]]
}

fn sl25() -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..P {
        for b in 0..P {
            for c in 0..P {
                for d in 0..P {
                    if (a as u32 * d as u32 % 5 + 5 - b as u32 * c as u32 % 5) % 5 == 1 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn generated(gens: &[Mat]) -> usize {
    let id: Mat = [[1, 0], [0, 1]];
    let mut seen = std::collections::HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let n = mul(&m, g);
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len()
}

fn order(m: &Mat) -> usize {
    let id: Mat = [[1, 0], [0, 1]];
    let mut k = 1;
    let mut p = *m;
    while p != id {
        p = mul(&p, m);
        k += 1;
    }
    k
}

fn eval(word: &str, x: &Mat, y: &Mat) -> Mat {
    let g = binary_icosahedral_table();
    let w = g.presentation().word(word).unwrap();
    w.letters().iter().fold([[1, 0], [0, 1]], |acc, l| {
        let m = if l.gen == 0 { *x } else { *y };
        mul(&acc, &if l.inverse { inv(&m) } else { m })
    })
}

/// The binary icosahedral group is `SL(2,5)`; any generating pair satisfying
/// the relations gives an isomorphism, checked element by element.
#[test]
fn binary_icosahedral_matches_sl25() {
    let all = sl25();
    assert_eq!(all.len(), 120);
    let id: Mat = [[1, 0], [0, 1]];
    let (x, y) = all
        .iter()
        .flat_map(|x| all.iter().map(move |y| (*x, *y)))
        .find(|(x, y)| {
            let xy = mul(x, y);
            let xyx = mul(&xy, x);
            pow(x, 5) == pow(&xy, 3) && pow(&xy, 3) == pow(&xyx, 2) && pow(x, 5) != id && generated(&[*x, *y]) == 120
        })
        .expect("a generating pair exists");

    let g = binary_icosahedral_table();
    let image: Vec<Mat> = (0..g.order())
        .map(|e| {
            let w = g.word_of(e);
            w.letters().iter().fold(id, |acc, l| {
                let m = if l.gen == 0 { x } else { y };
                mul(&acc, &if l.inverse { inv(&m) } else { m })
            })
        })
        .collect();
    let distinct: std::collections::HashSet<Mat> = image.iter().copied().collect();
    assert_eq!(distinct.len(), 120);
    let index: HashMap<Mat, usize> = image.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    for a in 0..g.order() {
        for b in 0..g.order() {
            assert_eq!(index[&mul(&image[a], &image[b])], g.product(a, b));
        }
    }

    let class_size = |m: &Mat| {
        let conj: std::collections::HashSet<Mat> = all.iter().map(|h| mul(&mul(&inv(h), m), h)).collect();
        conj.len()
    };
    let mut from_matrices = BTreeMap::new();
    for (label, word) in BINARY_ICOSAHEDRAL_CLASS_WORDS {
        let m = eval(word, &x, &y);
        from_matrices.insert(label, (order(&m), class_size(&m)));
    }
    for (label, word) in BINARY_ICOSAHEDRAL_CLASS_WORDS {
        let e = g.evaluate(word).unwrap();
        let class = &g.conjugacy_classes()[g.class_index(e).unwrap()];
        assert_eq!((g.element_order(e).unwrap(), class.len()), from_matrices[label], "{label}");
    }
}
