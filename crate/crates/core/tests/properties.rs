//! Randomised algebraic identities across the public API.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use weingarten::classfun::{char_pi, convolve, delta_e, fourier, inverse_fourier, pseudo_inverse};
use weingarten::jucys::{algebra_multiply, jucys_murphy, GroupAlgebraElement};
use weingarten::moments::{haar_moment, MomentQuery};
use weingarten::partitions::{enumerate_partitions, Partition};
use weingarten::symgroup::act_on_multiindex;
use weingarten::{ClassFunction, MultiIndex, Permutation};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn class_function(n: usize) -> impl Strategy<Value = ClassFunction> {
    let k = enumerate_partitions(n, None).len();
    prop::collection::vec(rational(), k).prop_map(move |vals| {
        let mut it = vals.into_iter();
        ClassFunction::from_fn(n, |_| it.next().unwrap()).unwrap()
    })
}

fn index(n: usize, d: usize) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(1..=d, n).prop_map(|v| MultiIndex::new(v).unwrap())
}

/// A query whose halves are rearrangements of each other, so it is usually non-zero.
fn matched_query() -> impl Strategy<Value = MomentQuery> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(n, d)| {
        (index(n, d), index(n, d), permutation(n), permutation(n)).prop_map(move |(i, j, s, t)| {
            let ip = act_on_multiindex(&s, &i).unwrap();
            let jp = act_on_multiindex(&t, &j).unwrap();
            MomentQuery::new(i, j, ip, jp, d).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cycle_type_is_conjugation_invariant((s, t) in (1usize..=7).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        let conj = t.compose(&s).unwrap().compose(&t.inverse()).unwrap();
        prop_assert_eq!(conj.cycle_type(), s.cycle_type());
        prop_assert_eq!(s.inverse().cycle_type(), s.cycle_type());
    }

    #[test]
    fn sign_is_multiplicative((s, t) in (1usize..=7).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        prop_assert_eq!(s.compose(&t).unwrap().sign(), s.sign() * t.sign());
    }

    #[test]
    fn action_is_a_left_action(
        (s, t, i) in (1usize..=6).prop_flat_map(|n| (permutation(n), permutation(n), index(n, 4)))
    ) {
        let st = s.compose(&t).unwrap();
        let lhs = act_on_multiindex(&st, &i).unwrap();
        let rhs = act_on_multiindex(&s, &act_on_multiindex(&t, &i).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_is_commutative_and_associative(
        (f, g, h) in (1usize..=5).prop_flat_map(|n| (class_function(n), class_function(n), class_function(n)))
    ) {
        prop_assert_eq!(convolve(&f, &g).unwrap(), convolve(&g, &f).unwrap());
        let left = convolve(&convolve(&f, &g).unwrap(), &h).unwrap();
        let right = convolve(&f, &convolve(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(convolve(&f, &delta_e(f.n()).unwrap()).unwrap(), f);
    }

    #[test]
    fn fourier_round_trip(f in (1usize..=6).prop_flat_map(class_function)) {
        prop_assert_eq!(inverse_fourier(&fourier(&f)), f);
    }

    #[test]
    fn pseudo_inverse_axioms(f in (1usize..=5).prop_flat_map(class_function)) {
        let g = pseudo_inverse(&f);
        let fgf = convolve(&convolve(&f, &g).unwrap(), &f).unwrap();
        let gfg = convolve(&convolve(&g, &f).unwrap(), &g).unwrap();
        prop_assert_eq!(&fgf, &f);
        prop_assert_eq!(&gfg, &g);
        prop_assert_eq!(pseudo_inverse(&g), f);
    }

    #[test]
    fn haar_moment_symmetries(
        (q, sigma, tau, pi, rho) in matched_query().prop_flat_map(|q| {
            let (n, d) = (q.n(), q.d);
            (Just(q), permutation(n), permutation(n), permutation(d), permutation(d))
        })
    ) {
        let value = haar_moment(&q).unwrap();
        let d = q.d;
        // positions
        let moved = MomentQuery::new(
            act_on_multiindex(&sigma, &q.i).unwrap(),
            act_on_multiindex(&sigma, &q.j).unwrap(),
            act_on_multiindex(&tau, &q.i_prime).unwrap(),
            act_on_multiindex(&tau, &q.j_prime).unwrap(),
            d,
        ).unwrap();
        prop_assert_eq!(haar_moment(&moved).unwrap(), value.clone());
        // values
        let relabelled = MomentQuery::new(
            q.i.map_values(|v| pi.image(v)),
            q.j.map_values(|v| rho.image(v)),
            q.i_prime.map_values(|v| pi.image(v)),
            q.j_prime.map_values(|v| rho.image(v)),
            d,
        ).unwrap();
        prop_assert_eq!(haar_moment(&relabelled).unwrap(), value.clone());
        // adjoint swap
        let swapped = MomentQuery::new(q.j_prime.clone(), q.i_prime.clone(), q.j.clone(), q.i.clone(), d).unwrap();
        prop_assert_eq!(haar_moment(&swapped).unwrap(), value.clone());
        // exchanging the roles of rows and columns is U ↦ Uᵀ, also Haar
        let transposed = MomentQuery::new(q.j.clone(), q.i.clone(), q.j_prime.clone(), q.i_prime.clone(), d).unwrap();
        prop_assert_eq!(haar_moment(&transposed).unwrap(), value);
    }

    #[test]
    fn mismatched_multisets_vanish((i, j, ip, jp, d) in (1usize..=4, 2usize..=3).prop_flat_map(|(n, d)| {
        (index(n, d), index(n, d), index(n, d), index(n, d), Just(d))
    })) {
        prop_assume!(!i.same_multiset(&ip) || !j.same_multiset(&jp));
        let q = MomentQuery::new(i, j, ip, jp, d).unwrap();
        prop_assert!(haar_moment(&q).unwrap().is_zero());
    }

    #[test]
    fn jucys_murphy_elements_commute((j, k, n) in (2usize..=5).prop_flat_map(|n| (1..=n, 1..=n, Just(n)))) {
        let a = jucys_murphy(j, n).unwrap();
        let b = jucys_murphy(k, n).unwrap();
        prop_assert_eq!(algebra_multiply(&a, &b).unwrap(), algebra_multiply(&b, &a).unwrap());
    }

    #[test]
    fn class_sums_are_central(
        (s, mu) in (1usize..=5).prop_flat_map(|n| {
            let parts = enumerate_partitions(n, None);
            (permutation(n), proptest::sample::select(parts))
        })
    ) {
        let n = s.n();
        let indicator = ClassFunction::from_fn(n, |p: &Partition| {
            if *p == mu { BigRational::from_integer(1.into()) } else { BigRational::zero() }
        }).unwrap();
        let c = GroupAlgebraElement::from_class_function(&indicator).unwrap();
        let x = GroupAlgebraElement::basis(s);
        prop_assert_eq!(algebra_multiply(&c, &x).unwrap(), algebra_multiply(&x, &c).unwrap());
    }

    #[test]
    fn char_pi_has_nonnegative_fourier_coefficients(n in 1usize..=6, d in 1usize..=6) {
        let f = fourier(&char_pi(n, d).unwrap());
        prop_assert!(f.values().iter().all(|c| *c >= BigRational::zero()));
    }
}
