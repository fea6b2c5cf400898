mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use rescomp::groebner::{buchberger, buchberger_with, ideal_membership, normal_form, Criteria};
use rescomp::{Ideal, MonomialOrder, Polynomial, Ring};

fn random_ideal(seed: u64, order: MonomialOrder) -> (Ideal, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = Ring::new(["x", "y", "z"], order).unwrap();
    let n = rng.gen_range(1..=3);
    let gens: Vec<Polynomial> = (0..n).map(|_| random_no_constant(&mut rng, &r, 2)).collect();
    (Ideal::new(&r, gens).unwrap(), rng)
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::WeightedGrevlex(vec![3, 1, 2])),
    ]
}

#[test]
fn textbook_division() {
    let r = ring(&["x", "y"]);
    let r = r.with_order(MonomialOrder::Lex).unwrap();
    let p = polys(&r, &["x^2*y + x*y^2 + y^2", "x*y - 1", "y^2 - 1"]);
    let (rem, q) = normal_form(&p[0], &p[1..], r.order()).unwrap();
    assert_eq!(rem, polys(&r, &["x + y + 1"])[0]);
    assert_eq!(q, polys(&r, &["x + y", "1"]));
    assert_eq!(oracle_remainder(&p[0], &p[1..]), rem);
}

#[test]
fn twisted_cubic_basis() {
    let r = ring(&["x", "y", "z"]);
    let ideal = Ideal::new(&r, polys(&r, &["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2"])).unwrap();
    let gb = buchberger(&ideal);
    assert!(spairs_reduce_to_zero(&gb.elements));
    for g in ideal.generators() {
        assert!(oracle_remainder(g, &gb.elements).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_passes_buchberger_criterion(seed in any::<u64>(), order in orders()) {
        let (ideal, _) = random_ideal(seed, order);
        let gb = buchberger(&ideal);
        if !gb.elements.is_empty() {
            prop_assert!(spairs_reduce_to_zero(&gb.elements));
        }
        for g in ideal.generators() {
            prop_assert!(oracle_remainder(g, &gb.elements).is_zero());
        }
    }

    #[test]
    fn reduced_basis_is_idempotent(seed in any::<u64>(), order in orders()) {
        let (ideal, _) = random_ideal(seed, order);
        let gb = buchberger(&ideal);
        let again = buchberger(&Ideal::new(ideal.ring(), gb.elements.clone()).unwrap());
        prop_assert_eq!(gb.elements, again.elements);
    }

    #[test]
    fn criteria_do_not_change_the_basis(seed in any::<u64>()) {
        let (ideal, _) = random_ideal(seed, MonomialOrder::Grevlex);
        let plain = buchberger_with(&ideal, Criteria { product: false, chain: false });
        prop_assert_eq!(buchberger(&ideal).elements, plain.elements);
    }

    #[test]
    fn remainder_modulo_basis_is_canonical(seed in any::<u64>(), order in orders()) {
        let (ideal, mut rng) = random_ideal(seed, order);
        let gb = buchberger(&ideal);
        let p = random_no_constant(&mut rng, ideal.ring(), 3);
        let (rem, _) = normal_form(&p, &gb.elements, &gb.order).unwrap();
        prop_assert_eq!(&rem, &oracle_remainder(&p, &gb.elements));
        prop_assert_eq!(rem.is_zero(), ideal_membership(&p, &ideal).member);
    }

    #[test]
    fn certificates_reproduce_members(seed in any::<u64>()) {
        let (ideal, mut rng) = random_ideal(seed, MonomialOrder::Grevlex);
        let mut p = Polynomial::zero(ideal.ring());
        for g in ideal.generators() {
            p = &p + &(g * &random_no_constant(&mut rng, ideal.ring(), 1));
        }
        let m = ideal_membership(&p, &ideal);
        prop_assert!(m.member);
        let cert = m.certificate.unwrap();
        let back = cert
            .iter()
            .zip(ideal.generators())
            .fold(Polynomial::zero(ideal.ring()), |acc, (c, g)| &acc + &(c * g));
        prop_assert_eq!(back, p);
    }
}
