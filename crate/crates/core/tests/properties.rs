use braceforge::abelian::AbelianPGroup;
use braceforge::brace::{construct, BraceKind};
use braceforge::flows::{group_of_flows, FlowsContext};
use braceforge::group::bound_formulas;
use braceforge::json::{brace_to_value, canonical_string, content_hash, parse_structure, Structure};
use braceforge::prelie::PreLieRing;
use braceforge::report::Status;
use braceforge::suites::xi_checks;
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = AbelianPGroup> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), prop::collection::vec(1u32..=3, 0..=3)).prop_filter_map(
        "order too large",
        |(p, mut e)| {
            e.sort_unstable_by(|a, b| b.cmp(a));
            let n: u32 = e.iter().sum();
            (p.pow(n) <= 2401).then(|| AbelianPGroup::new(p, e).unwrap())
        },
    )
}

fn small_brace() -> impl Strategy<Value = BraceKind> {
    prop_oneof![
        (prop::sample::select(vec![3u64, 5, 7]), 1u32..=3).prop_map(|(p, n)| BraceKind::RadicalCyclic { p, n }),
        (prop::sample::select(vec![3u64, 5]), prop::collection::vec(1u32..=2, 1..=3))
            .prop_filter("order too large", |(p, e)| p.pow(e.iter().sum()) <= 729)
            .prop_map(|(p, exponents)| BraceKind::Trivial { p, exponents }),
        (prop::sample::select(vec![3u64, 5]), 2usize..=3).prop_map(|(p, d)| BraceKind::RadicalTriangular { p, d }),
        prop::sample::select(vec![3u64, 5]).prop_map(|p| BraceKind::RadicalTwisted { p }),
    ]
}

/// Addition read off coordinates, independent of any lookup table.
fn add_by_coords(g: &AbelianPGroup, a: u32, b: u32) -> u32 {
    let sum: Vec<u64> = g
        .coords(a)
        .iter()
        .zip(g.coords(b))
        .zip(g.moduli())
        .map(|((x, y), m)| (x + y) % m)
        .collect();
    g.rank_of(&sum)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn addition_matches_coordinates(g in small_group(), a in any::<u32>(), b in any::<u32>()) {
        let n = g.order() as u32;
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(g.add(a, b), add_by_coords(&g, a, b));
        prop_assert_eq!(g.add(a, g.neg(a)), 0);
        prop_assert_eq!(g.sub(g.add(a, b), b), a);
    }

    #[test]
    fn scalar_multiples_are_repeated_sums(g in small_group(), a in any::<u32>(), k in 0u64..40) {
        let a = a % g.order() as u32;
        let repeated = (0..k).fold(0, |acc, _| g.add(acc, a));
        prop_assert_eq!(g.mul_u(k, a), repeated);
        prop_assert_eq!(g.scalar_mul(-(k as i128), a), g.neg(repeated));
    }

    #[test]
    fn canonical_json_round_trips(kind in small_brace()) {
        let b = construct(&kind).unwrap();
        let v = brace_to_value(&b);
        let text = canonical_string(&v);
        let Structure::Brace(c) = parse_structure(&text).unwrap() else {
            panic!("not a brace");
        };
        prop_assert_eq!(&c, &b);
        prop_assert_eq!(canonical_string(&brace_to_value(&c)), text);
        prop_assert_eq!(content_hash(&brace_to_value(&c)), content_hash(&v));
    }

    #[test]
    fn circ_is_associative_with_inverses(kind in small_brace(), a in any::<u32>(), x in any::<u32>(), c in any::<u32>()) {
        let b = construct(&kind).unwrap();
        let n = b.order() as u32;
        let (a, x, c) = (a % n, x % n, c % n);
        prop_assert_eq!(b.circ(b.circ(a, x), c), b.circ(a, b.circ(x, c)));
        let inv = b.circ_inverse(a).unwrap();
        prop_assert_eq!(b.circ(inv, a), 0);
        // λ is a homomorphism (A,∘) → Aut(A,+)
        prop_assert_eq!(b.lambda(b.circ(a, x), c), b.lambda(a, b.lambda(x, c)));
    }

    #[test]
    fn omega_inverts_w(p in prop::sample::select(vec![5u64, 7, 11]), n in 1u32..=2, a in any::<u32>()) {
        let ctx = FlowsContext::new(PreLieRing::radical_cyclic(p, n).unwrap()).unwrap();
        let a = a % ctx.ring().order() as u32;
        prop_assert_eq!(ctx.w_map(ctx.omega(a).unwrap()), a);
        prop_assert_eq!(ctx.omega(ctx.w_map(a)).unwrap(), a);
    }

    #[test]
    fn flows_of_associative_ring_is_adjoint(p in prop::sample::select(vec![5u64, 7]), n in 1u32..=2) {
        let ring = PreLieRing::radical_cyclic(p, n).unwrap();
        let b = group_of_flows(&ring).unwrap();
        prop_assert_eq!(b, construct(&BraceKind::RadicalCyclic { p, n }).unwrap());
    }

    #[test]
    fn xi_has_the_right_order(p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31])) {
        for c in xi_checks(p) {
            prop_assert_eq!(c.status, Status::Pass, "{}", c.name);
        }
    }

    #[test]
    fn f_ceiling_bounds_value(p in prop::sample::select(vec![3u64, 5, 7]), k in 1u32..=2, m in 1u32..=6) {
        let b = bound_formulas(p, k, m).unwrap();
        let ceil: f64 = b.f.ceiling.to_string().parse().unwrap();
        prop_assume!(b.f.value < 1e15);
        prop_assert!(ceil >= b.f.value && ceil < b.f.value + 1.0);
        prop_assert_eq!(b.d_bound.to_string(), (m as u64 * p.pow(k)).to_string());
    }
}
