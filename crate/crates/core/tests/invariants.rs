//! Structural invariants of the Hopf, comodule and identity layers, on seeded random inputs.

mod common;

use std::sync::Arc;

use hopfpi::commpoly::{CommPoly, ParamName};
use hopfpi::comodule::{galois_object, ComoduleAlgebra, GaloisObjectSpec};
use hopfpi::hopf::{self, HopfPresentation};
use hopfpi::identities::{FreeComodule, CATALOG_COPIES};
use hopfpi::ncalg::{AlgElement, GeneratorMap};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hopfs() -> Vec<Arc<HopfPresentation>> {
    vec![
        hopf::taft(2).unwrap(),
        hopf::taft(3).unwrap(),
        hopf::en(1).unwrap(),
        hopf::en(2).unwrap(),
    ]
}

fn objects() -> Vec<(FreeComodule, Arc<ComoduleAlgebra>)> {
    [GaloisObjectSpec::taft(2), GaloisObjectSpec::taft(3), GaloisObjectSpec::en(2)]
        .iter()
        .map(|s| {
            let a = galois_object(s).unwrap();
            (FreeComodule::new(a.hopf(), CATALOG_COPIES).unwrap(), a)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structure_maps_respect_products(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for h in hopfs() {
            let x = common::element(&mut rng, h.algebra(), 3, false);
            let y = common::element(&mut rng, h.algebra(), 3, true);
            let xy = &x * &y;
            prop_assert_eq!(h.coproduct(&xy).unwrap(), h.coproduct(&x).unwrap() * h.coproduct(&y).unwrap());
            prop_assert_eq!(h.counit(&xy).unwrap(), &h.counit(&x).unwrap() * &h.counit(&y).unwrap());
            prop_assert_eq!(h.antipode(&xy).unwrap(), h.antipode(&y).unwrap() * h.antipode(&x).unwrap());
        }
    }

    #[test]
    fn coaction_is_an_algebra_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (_, a) in objects() {
            let x = common::element(&mut rng, a.algebra(), 3, true);
            let y = common::element(&mut rng, a.algebra(), 3, false);
            prop_assert_eq!(a.coaction(&(&x * &y)).unwrap(), a.coaction(&x).unwrap() * a.coaction(&y).unwrap());
        }
    }

    #[test]
    fn identities_form_a_two_sided_ideal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (t, a) in objects() {
            for (_, p) in t.catalog(a.spec()).unwrap() {
                let x = common::element(&mut rng, t.algebra(), 2, true);
                prop_assert!(t.is_identity(&(&x * &p), &a).unwrap());
                prop_assert!(t.is_identity(&(&p * &x), &a).unwrap());
            }
        }
    }

    #[test]
    fn homogeneous_components_of_identities_are_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (t, a) in objects() {
            let catalog = t.catalog(a.spec()).unwrap();
            let mut mixed = AlgElement::zero(t.algebra());
            for (_, p) in &catalog {
                let x = common::element(&mut rng, t.algebra(), 2, false);
                mixed = mixed + &x * p + p.clone();
            }
            prop_assert!(t.is_identity(&mixed, &a).unwrap());
            for d in 0..=mixed.degree() {
                prop_assert!(t.is_identity(&mixed.homogeneous_component(d), &a).unwrap());
            }
        }
    }

    #[test]
    fn endomorphisms_preserve_identities(seed in any::<u64>()) {
        // f(X_i^x) = Σ χ_i(x₁) C_i X_{j_i}^{x₂} with C_i coinvariant is a comodule algebra map.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (t, a) in objects() {
            let h = t.hopf().clone();
            let order = h.order();
            let e = t.basis_symbol(1, 0).unwrap();
            let mut images = Vec::new();
            for _copy in 1..=t.copies() {
                let chi: Vec<CommPoly> = (0..h.dimension())
                    .map(|_| CommPoly::constant(common::cyclotomic(&mut rng, order)))
                    .collect();
                let target = rng.gen_range(1..=t.copies());
                let coinvariant = match rng.gen_range(0..3) {
                    0 => AlgElement::one(t.algebra()),
                    1 => e.clone(),
                    _ => &e * &e,
                };
                for r in 0..h.dimension() {
                    let img = h.coproduct(&h.basis_element(r)).unwrap().map_tensor(
                        t.algebra(),
                        &|l| Ok(AlgElement::scalar(t.algebra(), chi[h.basis_index(l).unwrap()].clone())),
                        &|w| {
                            let hw = AlgElement::from_word(h.algebra(), w.clone(), CommPoly::one(order))?;
                            coinvariant.try_mul(&t.x_symbol(target, &hw)?)
                        },
                    ).unwrap();
                    images.push(img);
                }
            }
            let f = GeneratorMap::new(t.algebra(), images);
            for (name, p) in t.catalog(a.spec()).unwrap() {
                let fp = f.apply(&p).unwrap();
                prop_assert!(t.is_identity(&fp, &a).unwrap(), "{}", name);
            }
        }
    }
}

#[test]
fn identities_form_a_right_coideal() {
    for (t, a) in objects() {
        for (name, p) in t.catalog(a.spec()).unwrap() {
            for (r, component) in t.coaction_components(&p).unwrap() {
                assert!(t.is_identity(&component, &a).unwrap(), "{name}, component {r}");
            }
        }
    }
}

#[test]
fn mu_is_a_comodule_map_on_generators() {
    for (t, a) in objects() {
        let h = t.hopf();
        let ah = a.tensor_with_hopf();
        for copy in 1..=t.copies() {
            for r in 0..h.dimension() {
                let x = t.basis_symbol(copy, r).unwrap();
                let lhs = t.t_coaction(&x).unwrap().map_tensor(
                    ah,
                    &|l| t.mu(&AlgElement::from_word(t.algebra(), l.clone(), CommPoly::one(h.order()))?, &a)?.embed_left(ah),
                    &|w| AlgElement::from_word(h.algebra(), w.clone(), CommPoly::one(h.order()))?.embed_right(ah),
                ).unwrap();
                let rhs = a.coaction(&t.mu(&x, &a).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{}", x);
            }
        }
    }
}

#[test]
fn coaction_of_catalog_polynomials_is_graded() {
    for (t, a) in objects() {
        for (_, p) in t.catalog(a.spec()).unwrap() {
            for (_, component) in t.coaction_components(&p).unwrap() {
                assert_eq!(component.homogeneous_component(p.degree()), component);
            }
        }
    }
}

#[test]
fn distinct_parameters_break_identities() {
    let a = galois_object(&GaloisObjectSpec::taft(3).with_int(ParamName::C, 1)).unwrap();
    let t = FreeComodule::new(a.hopf(), 1).unwrap();
    let other = GaloisObjectSpec::taft(3).with_int(ParamName::C, 2);
    let (_, p) = t.catalog(&other).unwrap().remove(0);
    assert!(!t.is_identity(&p, &a).unwrap());
    assert!(t.is_identity(&t.catalog(a.spec()).unwrap()[0].1, &a).unwrap());
}
