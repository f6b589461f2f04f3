//! Property tests for the numeric, form and lattice layers.

use std::collections::BTreeSet;

use cubic_orbits::forms::{canonicalize, is_irreducible, stab_order};
use cubic_orbits::lattice::{contains, count_points, sample_point, IntBox, LowerUnipotent};
use cubic_orbits::random::{LazyUniform, RandomStream, StreamAddress};
use cubic_orbits::{BinaryCubic, CubicForm, DyadicInterval, Gl2, SmallCubicForm};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn small_form(r: i64) -> impl Strategy<Value = SmallCubicForm> {
    (-r..=r, -r..=r, -r..=r, -r..=r).prop_map(|(a, b, c, d)| BinaryCubic::new(a as i128, b as i128, c as i128, d as i128))
}

/// Products of elementary matrices, so entries stay moderate.
fn unimodular() -> impl Strategy<Value = Gl2<i128>> {
    prop::collection::vec(0u8..6, 0..8).prop_map(|word| {
        word.into_iter().fold(Gl2::identity(), |m, g| {
            let e = match g {
                0 => Gl2::lower_shear(1),
                1 => Gl2::lower_shear(-1),
                2 => Gl2::upper_shear(1),
                3 => Gl2::upper_shear(-1),
                4 => Gl2::swap(),
                _ => Gl2::diag(-1, 1),
            };
            m.mul(&e)
        })
    })
}

fn dyadic_point() -> impl Strategy<Value = (i64, i64)> {
    (-10_000i64..10_000, -12i64..4)
}

proptest! {
    #[test]
    fn discriminant_is_invariant(f in small_form(20), m in unimodular()) {
        let g = m.apply(&f).unwrap();
        prop_assert_eq!(g.discriminant(), f.discriminant());
    }

    #[test]
    fn action_is_a_left_action(f in small_form(10), m in unimodular(), n in unimodular()) {
        let lhs = m.mul(&n).apply(&f).unwrap();
        let rhs = m.apply(&n.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_is_homogeneous_of_degree_four(f in small_form(30), k in -20i128..20) {
        prop_assert_eq!(f.scale(&k).discriminant(), k.pow(4) * f.discriminant());
    }

    #[test]
    fn hessian_discriminant(f in small_form(50)) {
        let (p, q, r) = f.hessian();
        prop_assert_eq!(q * q - 4 * p * r, -3 * f.discriminant());
    }

    #[test]
    fn canonical_form_and_stabilizer_are_orbit_invariants(f in small_form(6), m in unimodular()) {
        prop_assume!(f.discriminant() != 0);
        let g = m.apply(&f).unwrap();
        let cf = canonicalize(&f).unwrap();
        prop_assert_eq!(&canonicalize(&g).unwrap(), &cf);
        prop_assert_eq!(cf.discriminant(), f.discriminant());
        prop_assert_eq!(is_irreducible(&f), is_irreducible(&g));
        if is_irreducible(&f) {
            prop_assert_eq!(stab_order(&f).unwrap(), stab_order(&g).unwrap());
        }
    }

    #[test]
    fn ring_is_associative_and_commutative(f in small_form(9), x in prop::array::uniform3(-5i128..5),
                                           y in prop::array::uniform3(-5i128..5), z in prop::array::uniform3(-5i128..5)) {
        let t = f.ring_table();
        prop_assert_eq!(t.multiply(&t.multiply(&x, &y), &z), t.multiply(&x, &t.multiply(&y, &z)));
        prop_assert_eq!(t.multiply(&x, &y), t.multiply(&y, &x));
    }

    #[test]
    fn interval_ops_contain_exact_results(x in dyadic_point(), y in dyadic_point(), p in 1u32..80) {
        let xi = DyadicInterval::from_dyadic(x.0, x.1, p);
        let yi = DyadicInterval::from_dyadic(y.0, y.1, p);
        let xr = xi.lower();
        let yr = yi.lower();
        prop_assert!((&xi + &yi).contains(&(&xr + &yr)));
        prop_assert!((&xi - &yi).contains(&(&xr - &yr)));
        prop_assert!((&xi * &yi).contains(&(&xr * &yr)));
        if y.0 != 0 {
            let q = xi.checked_div(&yi).unwrap();
            prop_assert!(q.contains(&(&xr / &yr)));
            prop_assert!(q.width() <= BigRational::new(1.into(), BigInt::from(1) << p));
        }
    }

    #[test]
    fn roots_bracket_their_argument(n in 1u64..1_000_000_000, k in 2u32..6, p in 4u32..100) {
        let x = DyadicInterval::from_int(n, p);
        let r = x.root(k).unwrap();
        // lo^k <= n <= hi^k
        let lo = r.lower();
        let hi = r.upper();
        let nr = BigRational::from_integer(n.into());
        prop_assert!(num_traits::Pow::pow(&lo, k) <= nr);
        prop_assert!(num_traits::Pow::pow(&hi, k) >= nr);
    }

    #[test]
    fn decided_floors_are_correct(m in -100_000i64..100_000, e in -10i64..2, p in 1u32..40) {
        let x = DyadicInterval::from_dyadic(m, e, p);
        let exact = x.lower();
        if let Some(fl) = x.floor_partial() {
            prop_assert_eq!(fl, exact.floor().to_integer());
        }
        if let Some(cl) = x.ceil_partial() {
            prop_assert_eq!(cl, exact.ceil().to_integer());
        }
    }

    #[test]
    fn lazy_digits_persist(seed in any::<u64>(), steps in prop::collection::vec(1u32..300, 1..8)) {
        let mut u = LazyUniform::fresh(RandomStream::new(StreamAddress::new(seed, 0, 0, 0)));
        let mut fresh = LazyUniform::fresh(RandomStream::new(StreamAddress::new(seed, 0, 0, 0)));
        let mut prev = u.as_interval();
        for p in steps {
            let next = u.reveal(p);
            prop_assert!(next.overlaps(&prev));
            prev = u.as_interval();
            // digits depend only on the address
            prop_assert_eq!(next, fresh.reveal(p));
        }
    }

    #[test]
    fn lattice_sampling_is_a_bijection(
        n in 1usize..=4,
        lengths in prop::collection::vec(0i64..=5, 4),
        lower in prop::collection::vec(-24i64..24, 4),
        shear in prop::collection::vec((-8i64..=8, 1i64..=4), 6),
    ) {
        let lengths: Vec<BigInt> = lengths[..n].iter().map(|&l| l.into()).collect();
        let lower: Vec<BigRational> = lower[..n].iter().map(|&a| rat(a, 4)).collect();
        let mut it = shear.into_iter();
        let inverse: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..i).map(|_| { let (a, b) = it.next().unwrap(); rat(a, b) }).collect()).collect();
        let m = LowerUnipotent::from_inverse(inverse);
        let bx = IntBox::new(lower, lengths.clone());
        let points = all_outputs(&bx, &m);
        prop_assert_eq!(BigInt::from(points.len()), count_points(&bx, &m));
        for v in &points {
            prop_assert!(contains(&bx, &m, v));
        }
    }
}

fn all_outputs(bx: &IntBox<BigRational>, m: &LowerUnipotent<BigRational>) -> BTreeSet<Vec<BigInt>> {
    let mut offsets: Vec<Vec<BigInt>> = vec![vec![]];
    for l in bx.lengths() {
        let l: i64 = l.try_into().unwrap();
        offsets = offsets
            .into_iter()
            .flat_map(|p| (0..l).map(move |d| { let mut q = p.clone(); q.push(d.into()); q }))
            .collect();
    }
    offsets
        .iter()
        .map(|d| sample_point(bx, m, d, |x: &BigRational| Some(x.ceil().to_integer())).unwrap())
        .collect()
}

#[test]
fn big_forms_keep_invariants() {
    let f = CubicForm::new(
        "123456789012345678901".parse().unwrap(),
        (-7).into(),
        "-98765432109876543210".parse().unwrap(),
        3.into(),
    );
    let m = Gl2::new(BigInt::from(3), BigInt::from(5), BigInt::from(1), BigInt::from(2));
    assert_eq!(m.apply(&f).unwrap().discriminant(), f.discriminant());
}
