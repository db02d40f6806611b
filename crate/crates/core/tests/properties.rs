use proptest::prelude::*;

use flagqh::combinatorics::{FlagShape, Partition, PartitionTuple};
use flagqh::mirror::{parse_expr, Laurent, Monomial, RationalExpr, Symbol};
use flagqh::permutations::{permutation_to_tuple, tuple_to_permutation, Permutation};
use flagqh::symfunc::{divided_difference, schubert_polynomial, MPoly};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn partition(rows: usize, cols: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=cols, rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn tuple_in(sh: FlagShape) -> impl Strategy<Value = (FlagShape, PartitionTuple)> {
    let boxes: Vec<_> = (1..=sh.rho()).map(|i| partition(sh.r(i), sh.r(i - 1) - sh.r(i))).collect();
    boxes.prop_map(move |ps| (sh.clone(), PartitionTuple::new(&sh, ps).unwrap()))
}

fn laurent() -> impl Strategy<Value = Laurent> {
    let syms =
        vec![Symbol::Q(1), Symbol::Q(2), Symbol::p(1, &[1]), Symbol::p(1, &[2, 1]), Symbol::p(2, &[]), Symbol::Z(1, 2)];
    let term = (proptest::collection::vec(-2i32..=2, syms.len()), -3i64..=3);
    proptest::collection::vec(term, 0..5).prop_map(move |ts| {
        let mut l = Laurent::zero();
        for (es, c) in ts {
            let m = syms
                .iter()
                .zip(es)
                .filter(|(_, e)| *e != 0)
                .fold(Monomial::one(), |m, (s, e)| m.mul(&Monomial::var(s.clone(), e)));
            l = l.add(&Laurent::term(m, c.into()));
        }
        l
    })
}

proptest! {
    #[test]
    fn inverse_and_length(w in permutation(7)) {
        prop_assert!(w.compose(&w.inverse()).is_identity());
        prop_assert_eq!(w.inverse().length(), w.length());
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(Permutation::from_word(7, &word), w);
    }

    #[test]
    fn tuples_round_trip(st in prop_oneof![
        tuple_in(FlagShape::parse("6;4,2,1").unwrap()),
        tuple_in(FlagShape::parse("7;5,3").unwrap()),
        tuple_in(FlagShape::parse("8;6,4,3").unwrap()),
    ]) {
        let (sh, t) = st;
        let w = tuple_to_permutation(&sh, &t);
        prop_assert_eq!(w.length(), t.size());
        prop_assert_eq!(permutation_to_tuple(&sh, &w).unwrap(), t);
    }

    #[test]
    fn transpose_is_an_involution(p in partition(6, 7)) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().size(), p.size());
    }

    #[test]
    fn divided_differences_lower_schubert_polynomials(w in permutation(5), i in 1usize..5) {
        let f = schubert_polynomial(&w).widen(5);
        let d = divided_difference(i, &f).unwrap();
        if w.at(i) > w.at(i + 1) {
            prop_assert_eq!(d, schubert_polynomial(&w.compose(&Permutation::simple(5, i))).widen(5));
        } else {
            prop_assert_eq!(d, MPoly::zero(5));
        }
    }

    #[test]
    fn laurent_display_parses_back(l in laurent()) {
        let back = parse_expr(&l.to_string()).unwrap();
        prop_assert!(back.equals(&RationalExpr::from(l.clone())), "{}", l);
        prop_assert_eq!(back.as_laurent(), Some(&l));
    }

    #[test]
    fn quotient_rule(a in laurent(), b in laurent()) {
        // coefficients live in Z, so integer denominators other than 1 and -1 have no inverse
        let f = RationalExpr::from(a.clone()).div(&RationalExpr::from(b.clone()));
        prop_assume!(f.is_ok());
        let f = f.unwrap();
        let x = Symbol::p(1, &[1]);
        // d(f) * b + f * d(b) = d(a)
        let lhs = f.partial(&x).mul(&b.clone().into()).add(&f.mul(&RationalExpr::from(b.derivative(&x))));
        prop_assert!(lhs.equals(&RationalExpr::from(a.derivative(&x))));
    }
}
