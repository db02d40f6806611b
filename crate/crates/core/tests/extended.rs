//! Degree-11 and degree-20 evaluations on Fl(8;6,4,3). Slow in debug builds; run with
//! `cargo test --release -- --ignored`.

use num_bigint::BigInt;
use num_traits::One;

use flagqh::combinatorics::{FlagShape, Partition};
use flagqh::permutations::Permutation;
use flagqh::qring::{QuantumRing, SchubertExpansion};
use flagqh::theorems::{s1_equals, theorem_b_verify, Verdict};

fn expected(w: &[usize], q: &[usize]) -> SchubertExpansion {
    SchubertExpansion::single(Permutation::new(w.to_vec()).unwrap(), q.to_vec(), BigInt::one())
}

#[test]
#[ignore]
fn higher_degree_hook_values() {
    let r = QuantumRing::new(&FlagShape::parse("8;6,4,3").unwrap()).unwrap();
    // the seven-row partition in the text does not fit in 6 rows; the figure's six-row one does
    assert!(theorem_b_verify(&r, &Partition::new(vec![5, 5, 5, 5, 5, 4, 2]).unwrap()).is_err());
    for (lam, w, q) in [
        (vec![5, 5, 5, 5, 4, 2], [3, 6, 8, 1, 2, 4, 5, 7], [3, 1, 0]),
        (vec![6, 6, 6, 6, 5, 3], [1, 4, 7, 2, 3, 5, 6, 8], [4, 2, 1]),
    ] {
        let lam = Partition::new(lam).unwrap();
        let want = expected(&w, &q);
        assert!(s1_equals(&r, &lam, &want).unwrap(), "{}", lam);
        let rep = theorem_b_verify(&r, &lam).unwrap();
        assert_eq!(rep.verdict, Verdict::Match);
        assert_eq!(rep.expansion, want);
    }
}
