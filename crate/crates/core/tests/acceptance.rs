//! One PASS/FAIL line per acceptance criterion. Items that are false as stated print FAIL with the
//! reason, and the test asserts the reason itself so a silent change is caught.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use flagqh::combinatorics::{
    classify, q_hook, q_hook_monomial, step_index, Classification, FlagShape, Partition, PartitionTuple,
};
use flagqh::mirror::{
    available_exchanges, parse_expr, pluecker_superpotential, prop_commutes_verify, theorem_a_verify, ChartExpansion,
    LadderQuiver, LocalVerdict, RationalExpr,
};
use flagqh::permutations::{all_in_s, permutation_to_tuple, tuple_to_permutation, Permutation};
use flagqh::qring::{QuantumRing, SchubertExpansion};
use flagqh::symfunc::{divided_difference, schubert_polynomial, MPoly};
use flagqh::theorems::{box_partitions, prop_expand_verify, sample_partitions, theorem_b_sweep, Mode, Verdict};

fn shape(s: &str) -> FlagShape {
    FlagShape::parse(s).unwrap()
}

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

fn tuple(sh: &FlagShape, parts: &[&[usize]]) -> PartitionTuple {
    PartitionTuple::new(sh, parts.iter().map(|p| part(p)).collect()).unwrap()
}

fn ring(s: &str) -> QuantumRing {
    QuantumRing::new(&shape(s)).unwrap()
}

fn class(sh: &FlagShape, parts: &[&[usize]], q: &[usize]) -> SchubertExpansion {
    SchubertExpansion::single(tuple_to_permutation(sh, &tuple(sh, parts)), q.to_vec(), BigInt::one())
}

struct Line {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, line: &Line, start: Instant) {
    let tag = if line.pass { "PASS" } else { "FAIL" };
    println!("criterion {} [{}] {}: {} ({:.1?})", n, tag, title, line.detail, start.elapsed());
}

fn q_hooks() -> Line {
    let sh = shape("8;6,4,3");
    let table: [(usize, usize, &[usize], [usize; 3]); 6] = [
        (3, 1, &[3, 1], [1, 0, 0]),
        (4, 1, &[4, 4], [2, 0, 0]),
        (5, 2, &[5, 5, 5], [3, 1, 0]),
        (6, 3, &[6, 6, 6, 6, 1, 1], [4, 2, 1]),
        (7, 3, &[7, 7, 7, 7, 7, 2], [5, 3, 2]),
        (8, 3, &[8, 8, 8, 8, 8, 8], [6, 4, 3]),
    ];
    let mut rows = 0;
    for (b, i, h, q) in table {
        let ok = step_index(&sh, b).unwrap() == i
            && q_hook(&sh, b).unwrap() == part(h)
            && q_hook_monomial(&sh, b).unwrap().0 == q.to_vec();
        rows += ok as usize;
    }
    let two = shape("4;2,1");
    let small = q_hook(&two, 3).unwrap() == part(&[3])
        && q_hook_monomial(&two, 3).unwrap().0 == vec![1, 0]
        && q_hook(&two, 4).unwrap() == part(&[4, 4])
        && q_hook_monomial(&two, 4).unwrap().0 == vec![2, 1];
    Line { pass: rows == 6 && small, detail: format!("Fl(8;6,4,3) {}/6 rows, Fl(4;2,1) H_3 and H_4 {}", rows, small) }
}

fn theorem_b_small() -> Line {
    let r = ring("4;2,1");
    let sh = r.shape().clone();
    let lambdas = box_partitions(&sh);
    let reps = theorem_b_sweep(&r, &lambdas, Mode::Parallel).unwrap();
    let matched = reps.iter().filter(|x| x.verdict == Verdict::Match).count();
    let free = reps.iter().filter(|x| x.verdict == Verdict::Unconstrained).count();
    let value = |l: &[usize]| reps.iter().find(|x| x.lambda == part(l)).unwrap().expansion.clone();
    let examples = [
        (value(&[2]), class(&sh, &[&[2], &[]], &[0, 0])),
        (value(&[3]), class(&sh, &[&[], &[]], &[1, 0])),
        (value(&[3, 3]), class(&sh, &[&[2], &[1]], &[1, 0])),
        (value(&[4, 4]), class(&sh, &[&[], &[]], &[2, 1])),
    ];
    let shown = examples.iter().filter(|(a, b)| a == b).count();
    let pass = lambdas.len() == 15 && matched + free == 15 && shown == 4;
    Line {
        pass,
        detail: format!(
            "{} partitions, {} match, {} outside the theorem, 0 mismatches; {}/4 displayed values",
            lambdas.len(),
            matched,
            free,
            shown
        ),
    }
}

struct SpotCheck {
    stated: bool,
    corrected: bool,
    figure: bool,
    gamma: bool,
}

fn theorem_b_large() -> (Line, SpotCheck) {
    let r = ring("8;6,4,3");
    let sh = r.shape().clone();
    let s1 = |l: &[usize]| r.schubert_expand(&r.s_class(1, &part(l)).unwrap()).unwrap();
    let eta = s1(&[3, 3, 3, 2]);
    let stated = SchubertExpansion::single(
        Permutation::new(vec![1, 2, 4, 5, 3, 7, 6, 8]).unwrap(),
        vec![1, 0, 0],
        BigInt::one(),
    );
    let check = SpotCheck {
        stated: eta == stated,
        corrected: eta == class(&sh, &[&[2, 2, 1], &[1, 1], &[]], &[1, 0, 0]),
        figure: s1(&[3, 3, 2, 1]) == class(&sh, &[&[2, 1], &[1, 1], &[]], &[1, 0, 0]),
        gamma: s1(&[6, 6, 6, 6, 3]).is_zero(),
    };
    let detail = format!(
        "stated s1[3,3,3,2] = q1*s[1,2,4,5,3,7,6,8] is {} (degrees 11 and 7); computed {}; \
         s1[3,3,2,1] = q1*s[1,2,4,6,3,8,5,7] {}; s1[6,6,6,6,3] = 0 {}",
        if check.stated { "true" } else { "false" },
        eta,
        check.figure,
        check.gamma
    );
    (Line { pass: check.stated && check.gamma, detail }, check)
}

fn wide_neither(sh: &FlagShape, l: &Partition) -> bool {
    classify(sh, l).unwrap() == Classification::Neither && l.width() > sh.n() - sh.r(1)
}

struct ExpandCheck {
    failures: Vec<(&'static str, Partition)>,
    hook_class_failures: usize,
}

fn column_expansion() -> (Line, ExpandCheck) {
    let mut failures = Vec::new();
    let mut hook_class_failures = 0;
    let mut counts = Vec::new();
    for (s, lambdas) in
        [("4;2,1", box_partitions(&shape("4;2,1"))), ("5;3,2", sample_partitions(&shape("5;3,2"), 20, 2024))]
    {
        let r = ring(s);
        let mut tested = 0;
        let mut bad = Vec::new();
        // the identity is stated for nonempty partitions
        for l in lambdas.iter().filter(|l| !l.is_empty()) {
            tested += 1;
            if !prop_expand_verify(&r, l).unwrap() {
                if !wide_neither(r.shape(), l) {
                    hook_class_failures += 1;
                }
                bad.push(l.to_string());
                failures.push((s, l.clone()));
            }
        }
        counts.push(format!("{} {}/{} fail {}", s, bad.len(), tested, bad.join(" ")));
    }
    let detail = format!(
        "{}; {} failures outside the partitions wider than n - r_1 containing neither H_b nor R_b",
        counts.join(", "),
        hook_class_failures
    );
    (Line { pass: failures.is_empty(), detail }, ExpandCheck { failures, hook_class_failures })
}

struct MirrorCheck {
    ehx: bool,
    plucker: bool,
    rect_stated: bool,
    rect_derived: bool,
}

fn expr(s: &str) -> RationalExpr {
    parse_expr(s).unwrap()
}

fn mirrors() -> (Line, MirrorCheck) {
    let gr = shape("4;2");
    let ehx = LadderQuiver::build(&gr).ehx_superpotential();
    let ehx_ok = RationalExpr::from(ehx.clone())
        == expr("z[1,1] + z[1,2]/z[1,1] + z[2,1]/z[1,1] + z[2,2]/z[1,2] + z[2,2]/z[2,1] + q1/z[2,2]")
        && ehx.len() == 6;
    let w = pluecker_superpotential(&ring("6;4,2,1")).unwrap();
    let want = expr(
        "p1[1]/p1[] + p1[2,1,1,1]/p1[1,1,1,1] + p1[2,1]/p1[2] + (p1[2,2,1] + q1*p1[1])/p1[2,2] \
         + (p1[2,2,2,1] + q1*p1[1,1]*p2[1])/p1[2,2,2] + q1*p1[1,1,1]*p2[1,1]/p1[2,2,2,2] \
         + p2[1]/p2[] + p2[2,1]/p2[1,1] + (p2[2,1] + q2)/p2[2] + q2*p2[1]*p3[1]/p2[2,2] \
         + p3[1]/p3[] + q3/p3[1]",
    );
    let plucker = RationalExpr::from(w) == want;
    let rect = RationalExpr::from(LadderQuiver::build(&gr).rectangles_chart_expansion());
    let p_empty = |x: RationalExpr| x.substitute(&flagqh::mirror::Symbol::p(1, &[]), &RationalExpr::one()).unwrap();
    let displayed =
        expr("p1[1]/p1[] + p1[2]/p1[1] + p1[1,1]/p1[1] + p1[2,2]/p1[2] + p1[2,2]/p1[1,1] + q1*p1[1]/p1[2,2]");
    let derived = expr(
        "p1[1]/p1[] + p1[2]/p1[1] + p1[1,1]/p1[1] + p1[]*p1[2,2]/(p1[1]*p1[2]) \
         + p1[]*p1[2,2]/(p1[1]*p1[1,1]) + q1*p1[1]/p1[2,2]",
    );
    let check = MirrorCheck {
        ehx: ehx_ok,
        plucker,
        rect_stated: p_empty(rect.clone()).equals(&p_empty(displayed)),
        rect_derived: rect == derived,
    };
    let detail = format!(
        "Gr(4,2) EHX {}, Fl(6;4,2,1) W_P {}; Gr(4,2) rectangles chart matches the displayed form: {} \
         (display has p[2,2]/p[2] where z22/z12 gives p[]*p[2,2]/(p[1]*p[2])), derived form {}",
        check.ehx, check.plucker, check.rect_stated, check.rect_derived
    );
    (Line { pass: check.ehx && check.plucker && check.rect_stated, detail }, check)
}

fn theorem_a() -> Line {
    let mut parts = Vec::new();
    let mut pass = true;
    for s in ["4;2", "5;2", "4;2,1", "5;3,2"] {
        let r = ring(s);
        let ce = ChartExpansion::rectangles(r.shape());
        let reps = theorem_a_verify(&r, &ce).unwrap();
        let zero = reps.iter().filter(|x| x.verdict == LocalVerdict::Zero).count();
        pass &= zero == reps.len();
        parts.push(format!("{} {}/{}", s, zero, reps.len()));
        if s == "4;2" || s == "4;2,1" {
            let x = available_exchanges(&ce.chart, 1).remove(0);
            let m = ce.mutate(&x).unwrap();
            let reps = theorem_a_verify(&r, &m).unwrap();
            let zero = reps.iter().filter(|x| x.verdict == LocalVerdict::Zero).count();
            pass &= zero == reps.len();
            parts.push(format!("{} after {}->{} {}/{}", s, x.lambda, x.mu, zero, reps.len()));
        }
    }
    Line { pass, detail: format!("zero partials: {}", parts.join(", ")) }
}

fn commuting_diagram() -> Line {
    let mut parts = Vec::new();
    let mut pass = true;
    for s in ["4;2,1", "5;3,2,1"] {
        let r = ring(s);
        let reps = prop_commutes_verify(&r).unwrap();
        let equal = reps.iter().filter(|x| x.verdict == LocalVerdict::Equal).count();
        pass &= equal == reps.len();
        parts.push(format!("{} {}/{} vertices", s, equal, reps.len()));
    }
    let r = ring("4;2,1");
    let sh = r.shape().clone();
    let s1 = |l: &[usize]| r.s_class(1, &part(l)).unwrap();
    let sigma = |p: &[&[usize]]| r.from_schubert(&class(&sh, p, &[0, 0])).unwrap();
    let q = |e: &[usize]| r.q_monomial(e);
    // a/b = c/d is checked as a*d = b*c
    let values = [
        r.is_zero(&s1(&[3]).sub(&q(&[1, 0]))),
        r.is_zero(
            &r.mul(&s1(&[3, 3]), &sigma(&[&[2], &[]]))
                .sub(&r.mul(&s1(&[2]), &r.mul(&q(&[1, 0]), &sigma(&[&[2], &[1]])))),
        ),
        r.is_zero(&s1(&[4, 4]).sub(&r.mul(&s1(&[3]), &q(&[1, 1])))),
    ];
    let shown = values.iter().filter(|&&b| b).count();
    pass &= shown == 3;
    Line { pass, detail: format!("{}; {}/3 displayed vertex values", parts.join(", "), shown) }
}

/// `d_w = d_{a_1} ... d_{a_l}` for a reduced word of `w`, innermost letter last.
fn apply_word(w: &Permutation, f: &MPoly) -> MPoly {
    let mut g = f.clone();
    for &a in w.reduced_word().iter().rev() {
        g = divided_difference(a, &g).unwrap();
    }
    g
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if rest.is_empty() {
            out.push(Permutation::new(cur.clone()).unwrap());
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

fn braid_and_nilpotency() -> (usize, usize) {
    let mut polys: Vec<MPoly> = all_perms(4).iter().map(|w| schubert_polynomial(w).widen(4)).collect();
    for e in 0..256usize {
        let exps = vec![(e % 4) as u8, (e / 4 % 4) as u8, (e / 16 % 4) as u8, (e / 64) as u8];
        polys.push(MPoly::monomial(4, exps, BigInt::one()));
    }
    let d = |i: usize, f: &MPoly| divided_difference(i, f).unwrap();
    let mut bad = 0;
    for f in &polys {
        for i in 1..=3 {
            bad += !d(i, &d(i, f)).is_zero() as usize;
        }
        bad += (d(1, &d(3, f)) != d(3, &d(1, f))) as usize;
        for i in 1..=2 {
            bad += (d(i, &d(i + 1, &d(i, f))) != d(i + 1, &d(i, &d(i + 1, f)))) as usize;
        }
    }
    // d_i S_w is S_{w s_i} at a descent and 0 otherwise
    for w in all_perms(4) {
        let f = schubert_polynomial(&w).widen(4);
        for i in 1..=3 {
            let want = if w.at(i) > w.at(i + 1) {
                schubert_polynomial(&w.compose(&Permutation::simple(4, i))).widen(4)
            } else {
                MPoly::zero(4)
            };
            bad += (d(i, &f) != want) as usize;
        }
    }
    (polys.len(), bad)
}

fn round_trips() -> (usize, usize) {
    let sh = shape("5;3,2,1");
    let perms = all_in_s(&sh);
    let tuples = PartitionTuple::all(&sh);
    let mut bad = (perms.len() != 60 || tuples.len() != 60) as usize;
    for w in &perms {
        let t = permutation_to_tuple(&sh, w).unwrap();
        bad += (tuple_to_permutation(&sh, &t) != *w || t.size() != w.length()) as usize;
    }
    for t in &tuples {
        bad += (permutation_to_tuple(&sh, &tuple_to_permutation(&sh, t)).unwrap() != *t) as usize;
    }
    (perms.len() + tuples.len(), bad)
}

/// Classical structure constants from Schubert polynomials: the coefficient of `S_w` in a
/// homogeneous `f` is `d_w f` at `x = 0`.
fn classical_limit() -> (usize, usize) {
    let r = ring("4;2,1");
    let sh = r.shape().clone();
    let dim = sh.dimension();
    let classes = all_in_s(&sh);
    let mut bad = 0;
    let mut checked = 0;
    for w in all_perms(4) {
        let f = schubert_polynomial(&w).widen(4);
        bad += (apply_word(&w, &f) != MPoly::one(4)) as usize;
    }
    for (x, u) in classes.iter().enumerate() {
        for v in &classes[x..] {
            if u.length() + v.length() > dim {
                continue;
            }
            checked += 1;
            let prod = schubert_polynomial(u).widen(4).mul(&schubert_polynomial(v).widen(4));
            let e = r.multiply_classes(u, v).unwrap();
            for w in all_perms(4) {
                if w.length() != u.length() + v.length() {
                    continue;
                }
                let c = apply_word(&w, &prod).coeff(&[0, 0, 0, 0]);
                let got = e.coefficient(&w, &[0, 0]);
                bad += (c != got) as usize;
            }
        }
    }
    (checked, bad)
}

/// Littlewood-Richardson coefficient by counting skew tableaux of shape `nu/lam` and content `mu`
/// whose reverse row reading word is a lattice word.
fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lam) || nu.size() != lam.size() + mu.size() {
        return 0;
    }
    let cells: Vec<(usize, usize)> =
        (1..=nu.height()).flat_map(|i| (lam.part(i) + 1..=nu.part(i)).rev().map(move |j| (i, j))).collect();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        lam: &Partition,
        mu: &Partition,
        t: &mut BTreeMap<(usize, usize), usize>,
        used: &mut Vec<usize>,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        let mut total = 0;
        for v in 1..=mu.height() {
            if used[v] == mu.part(v) || (v > 1 && used[v] >= used[v - 1]) {
                continue;
            }
            if let Some(&right) = t.get(&(i, j + 1)) {
                if v > right {
                    continue;
                }
            }
            if i > 1 && j > lam.part(i - 1) && t[&(i - 1, j)] >= v {
                continue;
            }
            t.insert((i, j), v);
            used[v] += 1;
            total += fill(k + 1, cells, lam, mu, t, used);
            used[v] -= 1;
            t.remove(&(i, j));
        }
        total
    }
    fill(0, &cells, lam, mu, &mut BTreeMap::new(), &mut vec![0; mu.height() + 1])
}

fn littlewood_richardson() -> (usize, usize) {
    let mut bad = 0;
    let mut products = 0;
    for n in 2..=6 {
        for k in 1..n {
            let sh = FlagShape::grassmannian(n, k).unwrap();
            let r = QuantumRing::new(&sh).unwrap();
            let parts = Partition::all_in_box(k, n - k);
            let perm = |l: &Partition| tuple_to_permutation(&sh, &PartitionTuple::new(&sh, vec![l.clone()]).unwrap());
            for (x, a) in parts.iter().enumerate() {
                for b in &parts[x..] {
                    products += 1;
                    let e = r.multiply_classes(&perm(a), &perm(b)).unwrap();
                    bad += !e.all_nonnegative() as usize;
                    for c in &parts {
                        let want = BigInt::from(lr_coefficient(a, b, c));
                        bad += (e.coefficient(&perm(c), &[0]) != want) as usize;
                    }
                }
            }
        }
    }
    (products, bad)
}

fn properties() -> Line {
    let (polys, braid_bad) = braid_and_nilpotency();
    let (trips, trip_bad) = round_trips();
    let (pairs, limit_bad) = classical_limit();
    let (products, lr_bad) = littlewood_richardson();
    Line {
        pass: braid_bad + trip_bad + limit_bad + lr_bad == 0,
        detail: format!(
            "braid/nilpotency on {} polynomials: {} bad; {} round trips: {} bad; \
             {} classical products on Fl(4;2,1): {} bad; {} Grassmannian products: {} bad",
            polys, braid_bad, trips, trip_bad, pairs, limit_bad, products, lr_bad
        ),
    }
}

#[test]
fn acceptance() {
    let t = Instant::now();
    let c1 = q_hooks();
    report(1, "q-hook tables", &c1, t);

    let t = Instant::now();
    let c2 = theorem_b_small();
    report(2, "q-hook theorem on Fl(4;2,1)", &c2, t);

    let t = Instant::now();
    let (c3, spot) = theorem_b_large();
    report(3, "q-hook theorem spot check on Fl(8;6,4,3)", &c3, t);

    let t = Instant::now();
    let (c4, expand) = column_expansion();
    report(4, "column expansion identity", &c4, t);

    let t = Instant::now();
    let (c5, mirror) = mirrors();
    report(5, "mirror regression", &c5, t);

    let t = Instant::now();
    let c6 = theorem_a();
    report(6, "superpotential partials map to zero", &c6, t);

    let t = Instant::now();
    let c7 = commuting_diagram();
    report(7, "commuting diagram", &c7, t);

    let t = Instant::now();
    let c8 = properties();
    report(8, "property suites", &c8, t);

    assert!(c1.pass && c2.pass && c6.pass && c7.pass && c8.pass);
    // False as stated: the displayed class has the wrong degree. The corrected values hold.
    assert!(!spot.stated && spot.corrected && spot.figure && spot.gamma);
    // False as stated for wide partitions outside both hook classes, true everywhere else.
    let small: Vec<String> =
        expand.failures.iter().filter(|(s, _)| *s == "4;2,1").map(|(_, p)| p.to_string()).collect();
    assert_eq!(small, ["[4]", "[4,1]", "[4,2]", "[4,3]"]);
    assert_eq!(expand.hook_class_failures, 0);
    // The displayed rectangles-chart form disagrees with the map z -> p it is derived from.
    assert!(mirror.ehx && mirror.plucker && mirror.rect_derived && !mirror.rect_stated);
}
