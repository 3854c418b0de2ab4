use std::collections::{BTreeMap, BTreeSet};

use genjac_core::curve::{Curve, Point, DEFAULT_ENUMERATION_BOUND};
use genjac_core::extgroup::{
    make_coboundary_cocycle, verify_cocycle, CyclicGroup, ExtElement, Extension, GroupBackend,
};
use genjac_core::field::{ExtFieldParams, Fe, Field, PrimeFieldParams};
use genjac_core::genjac::GenJacParams;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn fields() -> Vec<Field> {
    let p11 = PrimeFieldParams::new(11).unwrap();
    let p7 = PrimeFieldParams::new(7).unwrap();
    let big = PrimeFieldParams::new((1 << 61) - 1).unwrap();
    vec![
        Field::new(ExtFieldParams::prime(p11)),
        Field::new(ExtFieldParams::default_quadratic(p11).unwrap()),
        Field::new(ExtFieldParams::new(p7, &[5, 0, 0, 1]).unwrap()),
        Field::new(ExtFieldParams::prime(big)),
        Field::new(ExtFieldParams::default_quadratic(big).unwrap()),
    ]
}

fn elem(f: &Field, seed: u64) -> Fe {
    f.random(&mut ChaCha20Rng::seed_from_u64(seed))
}

proptest! {
    #[test]
    fn field_axioms(which in 0usize..5, s1: u64, s2: u64, s3: u64) {
        let f = &fields()[which];
        let (x, y, z) = (elem(f, s1), elem(f, s2), elem(f, s3));
        prop_assert_eq!(f.add(&x, &y), f.add(&y, &x));
        prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
        prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
        prop_assert_eq!(f.add(&f.add(&x, &y), &z), f.add(&x, &f.add(&y, &z)));
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        prop_assert_eq!(f.sub(&f.add(&x, &y), &y), x);
        if !x.is_zero() {
            let xi = f.inv(&x).unwrap();
            prop_assert_eq!(f.mul(&x, &xi), f.one());
            prop_assert_eq!(f.inv(&xi).unwrap(), x);
        }
    }

    #[test]
    fn mul_counter_is_additive(which in 0usize..5, s1: u64, s2: u64, e in 1u64..5000) {
        let f = &fields()[which];
        let (x, y) = (elem(f, s1), elem(f, s2));
        f.counter().reset();
        let _ = f.mul(&x, &y);
        let a = f.mul_count();
        f.counter().reset();
        let _ = f.pow(&x, e as u128).unwrap();
        let b = f.mul_count();
        f.counter().reset();
        let _ = f.mul(&x, &y);
        let _ = f.pow(&x, e as u128).unwrap();
        prop_assert_eq!(f.mul_count(), a + b);
    }

    #[test]
    fn pow_matches_repeated_mul(which in 0usize..3, s: u64, e in 0u64..200) {
        let f = &fields()[which];
        let x = f.random_nonzero(&mut ChaCha20Rng::seed_from_u64(s));
        let mut acc = f.one();
        for _ in 0..e {
            acc = f.mul(&acc, &x);
        }
        prop_assert_eq!(f.pow(&x, e as u128).unwrap(), acc);
    }
}

fn toy_curve_points() -> (Curve, Vec<Point>) {
    let f = Field::prime(11).unwrap();
    let e = Curve::new(f.clone(), f.one(), f.zero()).unwrap();
    let pts = e.enumerate_points(DEFAULT_ENUMERATION_BOUND).unwrap();
    (e, pts)
}

proptest! {
    #[test]
    fn curve_group_laws(p in 0usize..12, q in 0usize..12, r in 0usize..12, n in -50i128..50) {
        let (e, pts) = toy_curve_points();
        let (p, q, r) = (pts[p], pts[q], pts[r]);
        prop_assert_eq!(e.add(&p, &q), e.add(&q, &p));
        prop_assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
        prop_assert_eq!(e.add(&p, &Point::Infinity), p);
        prop_assert_eq!(e.add(&p, &e.neg(&p)), Point::Infinity);
        let mut acc = Point::Infinity;
        for _ in 0..n.unsigned_abs() {
            acc = e.add(&acc, &p);
        }
        let expect = if n < 0 { e.neg(&acc) } else { acc };
        prop_assert_eq!(e.scalar_mul(n, &p), expect);
    }

    #[test]
    fn curve_over_large_prime(seed: u64) {
        let f = Field::prime(1_000_003).unwrap();
        let e = Curve::new(f.clone(), f.from_u64(3), f.from_u64(7)).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (p, q, r) = (e.random_point(&mut rng).unwrap(), e.random_point(&mut rng).unwrap(), e.random_point(&mut rng).unwrap());
        prop_assert!(e.is_on_curve(&e.add(&p, &q)));
        prop_assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
    }
}

/// A random table `g: Z/n -> Z/m` with `g(0) = 0`.
fn random_g(n: u64, m: u64, rng: &mut ChaCha20Rng) -> BTreeMap<u64, u64> {
    use rand::Rng;
    (0..n).map(|x| (x, if x == 0 { 0 } else { rng.random_range(0..m) })).collect()
}

#[test]
fn coboundary_cocycles_pass_exhaustively() {
    let mut rng = ChaCha20Rng::seed_from_u64(77);
    for (n, m) in [(2u64, 25u64), (5, 10), (6, 8), (7, 7), (12, 4), (10, 5)] {
        let (a, b) = (CyclicGroup::new(n), CyclicGroup::new(m));
        let cob = make_coboundary_cocycle(&a, &b, random_g(n, m, &mut rng)).unwrap();
        let triples: Vec<_> = (0..n).flat_map(|p| (0..n).flat_map(move |q| (0..n).map(move |r| (p, q, r)))).collect();
        assert!(verify_cocycle(&a, &b, &cob, &triples).all_pass(), "n = {n}, m = {m}");
    }
}

#[test]
fn scalar_mul_matches_iteration_and_commutes_with_pi() {
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let (a, b) = (CyclicGroup::new(9), CyclicGroup::new(5));
    let cob = make_coboundary_cocycle(&a, &b, random_g(9, 5, &mut rng)).unwrap();
    let c = Extension::new(a, b, cob);
    for pa in 0..9 {
        for pb in 0..5 {
            let x = ExtElement::new(pa, pb);
            let mut acc = c.identity();
            for n in 0..=50u64 {
                let nx = c.scalar_mul(n, &x).unwrap();
                assert_eq!(nx, acc);
                assert_eq!(c.pi(&nx), a.scalar_mul(n, &pa).unwrap());
                acc = c.add(&acc, &x).unwrap();
            }
        }
    }
}

/// All elements reachable from `gens`.
fn closure<G: GroupBackend>(g: &G, gens: &[G::Elem]) -> BTreeSet<G::Elem> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = g.add(&x, s).unwrap();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

#[test]
fn exactness_on_enumerated_jacobian() {
    let gp = GenJacParams::generate(11, &mut ChaCha20Rng::seed_from_u64(21)).unwrap();
    let jac = gp.group();
    let big = gp.ext_curve().field();
    let pts = gp.base_curve().enumerate_points(DEFAULT_ENUMERATION_BOUND).unwrap();
    let units: Vec<Fe> = big.elements(1 << 10).unwrap().into_iter().filter(|x| !x.is_zero()).collect();
    // the subgroup generated by a point of order 12 together with a generator of K*
    let gen_k = units.iter().find(|u| jac.b().element_order(u, gp.gm_order()).unwrap() == 120).unwrap();
    let gen_e = pts.iter().find(|p| gp.base_curve().element_order(p, gp.base_order()).unwrap() == 12).unwrap();
    let all = closure(&jac, &[ExtElement::new(*gen_e, big.one()), jac.iota(*gen_k)]);
    assert_eq!(all.len() as u64, gp.jac_order().unwrap().order());

    let kernel: BTreeSet<_> = all.iter().filter(|x| x.a.is_infinity()).cloned().collect();
    let image: BTreeSet<_> = units.iter().map(|u| jac.iota(*u)).collect();
    assert_eq!(kernel, image);
    // pi is onto E(k)
    let projected: BTreeSet<_> = all.iter().map(|x| jac.pi(x)).collect();
    assert_eq!(projected.len(), pts.len());
}

#[test]
fn jac_add_costs_at_least_product_add() {
    let gp = GenJacParams::generate(11, &mut ChaCha20Rng::seed_from_u64(31)).unwrap();
    let (jac, prod, e, gm) = (gp.group(), gp.direct_product(), gp.curve_group(), gp.gm_group());
    let counter = gp.counter().clone();
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let pts = gp.base_curve().enumerate_points(DEFAULT_ENUMERATION_BOUND).unwrap();
    let big = gp.ext_curve().field();
    let cost = |f: &dyn Fn()| {
        counter.reset();
        f();
        counter.get()
    };
    use rand::Rng;
    for _ in 0..300 {
        let x = ExtElement::new(pts[rng.random_range(0..12)], big.random_nonzero(&mut rng));
        let y = ExtElement::new(pts[rng.random_range(0..12)], big.random_nonzero(&mut rng));
        let jac_cost = cost(&|| {
            jac.add(&x, &y).unwrap();
        });
        let prod_cost = cost(&|| {
            prod.add(&x, &y).unwrap();
        });
        let parts = cost(&|| {
            e.add(&x.a, &y.a).unwrap();
            gm.add(&x.b, &y.b).unwrap();
        });
        assert_eq!(prod_cost, parts);
        assert!(jac_cost >= parts);
    }
}
