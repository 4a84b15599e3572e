use abrank::curve::{CurvePoint, FunctionFieldCurve};
use abrank::exactnum::{is_cube_in_ext, is_kth_power, is_square_in_ext, sixth_power_class};
use abrank::funcfield::Poly;
use abrank::generators::{embed_point, subfamily_generator};
use abrank::rankalg::census::sixth_power_free_range;
use abrank::rankalg::{rank, rank_breakdown};
use abrank::{QuadExt, Rational};
use proptest::prelude::*;
use rayon::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn nonzero_rational(num: i64, den: i64) -> impl Strategy<Value = Rational> {
    (1..=num, any::<bool>(), 1..=den)
        .prop_map(|(n, neg, d)| Rational::normalize(if neg { -n } else { n }, d).unwrap())
}

fn small_poly() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(-9i64..=9, 0..5).prop_map(|c| Poly::new(c.into_iter().map(q).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sixth_class_ignores_sixth_powers(x in nonzero_rational(1_000_000, 1000), w in nonzero_rational(30, 30)) {
        let scaled = &x * &w.pow(6).unwrap();
        prop_assert_eq!(sixth_power_class(&x).unwrap(), sixth_power_class(&scaled).unwrap());
    }

    #[test]
    fn kth_power_round_trip(r in nonzero_rational(5000, 5000), k in 1u32..=6) {
        let x = r.pow(k as i32).unwrap();
        let root = is_kth_power(&x, k).expect("r^k is a k-th power");
        prop_assert_eq!(root.pow(k as i32).unwrap(), x);
    }

    #[test]
    fn square_and_neg3_square_exclusive(x in nonzero_rational(100_000, 100)) {
        let sq = is_kth_power(&x, 2).is_some();
        let neg3 = is_kth_power(&(&x * &q(-3)), 2).is_some();
        prop_assert!(!(sq && neg3));
    }

    #[test]
    fn substitution_is_a_ring_map(f in small_poly(), g in small_poly(), p in small_poly(), x in -5i64..=5) {
        prop_assert_eq!(f.mul(&g).compose(&p), f.compose(&p).mul(&g.compose(&p)));
        prop_assert_eq!(f.add(&g).compose(&p), f.compose(&p).add(&g.compose(&p)));
        prop_assert_eq!(f.compose(&p).eval(&q(x)), f.eval(&p.eval(&q(x))));
    }

    #[test]
    fn rank_symmetric_and_scale_invariant(
        a in nonzero_rational(10_000, 50),
        b in nonzero_rational(10_000, 50),
        u in nonzero_rational(12, 12),
        v in nonzero_rational(12, 12),
    ) {
        let bd = rank_breakdown(&a, &b).unwrap();
        let sw = rank_breakdown(&b, &a).unwrap();
        prop_assert_eq!(bd.r, [sw.r[3], sw.r[2], sw.r[1], sw.r[0]]);
        let scaled = rank(&(&a * &u.pow(6).unwrap()), &(&b * &v.pow(6).unwrap())).unwrap();
        prop_assert_eq!(bd.rank, scaled);
        prop_assert!(bd.rank <= 3);
    }
}

#[test]
fn extension_roots_against_brute_force() {
    // over Q(sqrt(-3)) a square root of a rational u is a or b*sqrt(-3)
    let cands = Rational::up_to_height(50);
    let squares: std::collections::BTreeSet<Rational> = cands.iter().map(|r| r * r).collect();
    for u in sixth_power_free_range(200) {
        let u = q(u);
        let brute = squares.contains(&u) || squares.contains(&(&u / &q(-3)));
        assert_eq!(is_square_in_ext(&u).unwrap(), brute, "u = {u}");
        assert_eq!(is_cube_in_ext(&u).unwrap(), is_kth_power(&u, 3).is_some(), "u = {u}");
    }
}

#[test]
fn generator_exists_iff_term_is_one() {
    let vals = sixth_power_free_range(100);
    let bad: Vec<(i64, i64, u32)> = vals
        .par_iter()
        .flat_map_iter(|&a| {
            let vals = &vals;
            vals.iter().flat_map(move |&b| {
                let bd = rank_breakdown(&q(a), &q(b)).unwrap();
                (1..=4u32).filter_map(move |k| {
                    let g = subfamily_generator(&q(a), &q(b), k).unwrap();
                    (g.is_some() != (bd.r(k) == 1)).then_some((a, b, k))
                })
            })
        })
        .collect();
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
}

fn witnesses(a: i64, b: i64) -> Vec<(u32, FunctionFieldCurve<Rational>, CurvePoint<Rational>)> {
    (1..=4)
        .filter_map(|k| subfamily_generator(&q(a), &q(b), k).unwrap())
        .map(|w| (w.k, w.subfamily, w.descended_point))
        .collect()
}

#[test]
fn group_law_associative_and_eisenstein() {
    let e = FunctionFieldCurve::e_ab(&q(1), &q(16)).unwrap();
    let pts: Vec<_> = (1..=4)
        .filter_map(|k| subfamily_generator(&q(1), &q(16), k).unwrap())
        .map(|w| w.embedded_point)
        .collect();
    let (p, r, s) = (&pts[0], &pts[1], &pts[2]);
    let left = e.add(&e.add(p, r).unwrap(), s).unwrap();
    let right = e.add(p, &e.add(r, s).unwrap()).unwrap();
    assert_eq!(left, right);
    assert!(e.on_curve(&left));
    assert_eq!(e.add(p, &e.negate(p).unwrap()).unwrap(), CurvePoint::Identity);

    let el = e.lift();
    for p in &pts {
        let p = p.lift();
        let wp = el.omega_mul(&p).unwrap();
        let w2p = el.omega_mul(&wp).unwrap();
        // (omega^2 + omega + 1) P = O
        let sum = el.add(&el.add(&p, &wp).unwrap(), &w2p).unwrap();
        assert_eq!(sum, CurvePoint::Identity);
        assert_eq!(el.tau_pow(6, &p).unwrap(), p);
    }
}

#[test]
fn embedding_is_an_injective_homomorphism() {
    for (a, b) in [(1, 16), (8, 9), (-27, 16), (16, 1), (-3, 1)] {
        let e = FunctionFieldCurve::e_ab(&q(a), &q(b)).unwrap().lift();
        for (k, sub, p) in witnesses(a, b) {
            let sub = sub.lift();
            let p = p.lift();
            let wp = sub.omega_mul(&p).unwrap();
            let sum = sub.add(&p, &wp).unwrap();
            let emb = |x: &CurvePoint<QuadExt>| embed_point(x, k, 1).unwrap();
            assert_eq!(emb(&sum), e.add(&emb(&p), &emb(&wp)).unwrap(), "({a},{b}) k={k}");
            assert_eq!(emb(&p.neg()), emb(&p).neg());
            assert!(!emb(&p).is_identity());
            assert_ne!(emb(&p), emb(&wp));
            assert_eq!(emb(&CurvePoint::Identity), CurvePoint::Identity);
        }
    }
}
