use proptest::prelude::*;
use surgerykit::forms::{name_standard, stably_equivalent, ManifoldName};
use surgerykit::groups::{binary_icosahedral_table, Letter, Word};
use surgerykit::laurent::LaurentPoly;
use surgerykit::linkdiag::{apply_three_strand_twist, BraidWord, LinkDiagram};
use surgerykit::surgery::{classify_link_surgery, scharlemann_verdict};

const VARS: [&str; 2] = ["t1", "t2"];

fn poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-3i64..=3, -3i64..=3), -5i64..=5), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(&VARS, terms.into_iter().map(|((a, b), c)| (vec![a, b], c))).unwrap()
    })
}

fn unit() -> impl Strategy<Value = LaurentPoly> {
    ((-4i64..=4, -4i64..=4), prop_oneof![Just(1i64), Just(-1)]).prop_map(|((a, b), s)| {
        LaurentPoly::from_terms(&VARS, [(vec![a, b], s)]).unwrap()
    })
}

fn braid(max_strands: usize) -> impl Strategy<Value = BraidWord> {
    (3usize..=max_strands).prop_flat_map(|s| {
        let letter = (1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        proptest::collection::vec(letter, 0..16).prop_map(move |l| BraidWord::new(s, l).unwrap())
    })
}

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec((0usize..2, any::<bool>()), 0..12)
        .prop_map(|v| Word(v.into_iter().map(|(gen, inverse)| Letter { gen, inverse }).collect()))
}

fn small_name() -> impl Strategy<Value = ManifoldName> {
    (0u64..=4, 0u64..=4, 0u64..=4).prop_map(|(a, b, c)| ManifoldName { s2xs2: a, cp2: b, cp2bar: c, s3xs1: 0 })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&LaurentPoly::one(&VARS)).unwrap(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let p = a.mul(&b).unwrap();
        prop_assert_eq!(p.div_exact(&b).unwrap(), Some(a));
    }

    #[test]
    fn normalization_forgets_units(a in poly(), u in unit()) {
        prop_assume!(!a.is_zero());
        let n = a.normalize().unwrap();
        prop_assert_eq!(a.mul(&u).unwrap().normalize().unwrap(), n.clone());
        prop_assert_eq!(n.normalize().unwrap(), n);
    }

    #[test]
    fn gcd_divides_both(a in poly(), b in poly(), c in poly()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (x, y) = (a.mul(&c).unwrap(), b.mul(&c).unwrap());
        let g = x.gcd(&y).unwrap();
        prop_assert!(x.div_exact(&g).unwrap().is_some());
        prop_assert!(y.div_exact(&g).unwrap().is_some());
        prop_assert!(g.div_exact(&c.to_polynomial().1).unwrap().is_some());
    }

    #[test]
    fn parity_has_even_weight(b in braid(6)) {
        prop_assert_eq!(LinkDiagram::from_braid(b).parity_vector().weight() % 2, 0);
    }

    #[test]
    fn twists_keep_parity_and_classification(
        b in braid(5),
        sites in proptest::collection::vec((0usize..64, 0usize..8, any::<bool>()), 1..4),
    ) {
        let before = LinkDiagram::from_braid(b.clone());
        let mut twisted = b;
        for (pos, strand, positive) in sites {
            let pos = pos % (twisted.len() + 1);
            let strand = 1 + strand % (twisted.strands() - 2);
            twisted = apply_three_strand_twist(&twisted, pos, strand, if positive { 1 } else { -1 }).unwrap();
        }
        let after = LinkDiagram::from_braid(twisted);
        prop_assert_eq!(before.parity_vector(), after.parity_vector());
        prop_assert_eq!(classify_link_surgery(&before).unwrap(), classify_link_surgery(&after).unwrap());
    }

    #[test]
    fn classification_has_the_right_form(b in braid(6)) {
        let d = LinkDiagram::from_braid(b);
        let name = classify_link_surgery(&d).unwrap();
        let inv = name.model_form().invariants();
        let n = d.num_components();
        prop_assert_eq!((inv.rank, inv.signature), (2 * (2 * n - 1), 0));
        prop_assert_eq!(inv.parity == surgerykit::forms::Parity::Even, d.parity_vector().is_zero());
    }

    #[test]
    fn slides_preserve_invariants(
        name in small_name(),
        slides in proptest::collection::vec((0usize..32, 0usize..32, any::<bool>()), 0..20),
    ) {
        let q0 = name.model_form();
        prop_assume!(q0.size() >= 2);
        let mut q = q0.clone();
        for (i, j, s) in slides {
            let (i, j) = (i % q.size(), j % q.size());
            if i == j {
                continue;
            }
            q = q.handle_slide(i, j, if s { 1 } else { -1 }).unwrap();
        }
        prop_assert_eq!(q.invariants(), q0.invariants());
        prop_assert_eq!(name_standard(&q).unwrap(), name.canonical());
        if q.size() <= 8 || q0.invariants().definiteness == surgerykit::forms::Definiteness::Indefinite {
            prop_assert!(stably_equivalent(&q, &q0).unwrap());
        }
    }

    #[test]
    fn direct_sums_add(a in small_name(), b in small_name()) {
        let (qa, qb) = (a.model_form(), b.model_form());
        let (ia, ib, is) = (qa.invariants(), qb.invariants(), qa.direct_sum(&qb).invariants());
        prop_assert_eq!(is.rank, ia.rank + ib.rank);
        prop_assert_eq!(is.signature, ia.signature + ib.signature);
        prop_assert_eq!(
            is.parity == surgerykit::forms::Parity::Even,
            ia.parity == surgerykit::forms::Parity::Even && ib.parity == surgerykit::forms::Parity::Even
        );
    }

    #[test]
    fn verdicts_depend_only_on_class(w in word(), g in word(), epsilon in 0u8..=1) {
        let conj = g.concat(&w).concat(&g.inverse());
        prop_assert_eq!(scharlemann_verdict(epsilon, &w).unwrap(), scharlemann_verdict(epsilon, &conj).unwrap());
    }

    #[test]
    fn conjugation_is_consistent(w in word(), g in word()) {
        let table = binary_icosahedral_table();
        let conj = g.inverse().concat(&w).concat(&g);
        prop_assert!(table.is_conjugate(&w, &conj).unwrap());
        let (a, b) = (table.evaluate_word(&w).unwrap(), table.evaluate_word(&conj).unwrap());
        prop_assert_eq!(table.element_order(a).unwrap(), table.element_order(b).unwrap());
    }
}

#[test]
fn names_round_trip_through_forms() {
    for a in 0..=10 {
        for b in 0..=10 {
            for c in 0..=10 {
                let name = ManifoldName { s2xs2: a, cp2: b, cp2bar: c, s3xs1: 0 };
                assert_eq!(name_standard(&name.model_form()).unwrap(), name.canonical(), "{name}");
            }
        }
    }
}

#[test]
fn class_equation_and_lagrange() {
    let g = binary_icosahedral_table();
    let classes = g.conjugacy_classes();
    assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
    assert_eq!(classes[0], vec![g.identity()]);
    for class in classes {
        let orders: Vec<usize> = class.iter().map(|&e| g.element_order(e).unwrap()).collect();
        assert!(orders.iter().all(|&o| o == orders[0] && g.order().is_multiple_of(o)));
    }
}
