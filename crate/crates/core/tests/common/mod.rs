//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use hopfpi::commpoly::{CommPoly, Param, ParamName, VariableId};
use hopfpi::exactnum::{BigRational, CyclotomicNumber};
use hopfpi::ncalg::{AlgElement, PresentedAlgebra, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn cyclotomic(rng: &mut ChaCha8Rng, order: u32) -> CyclotomicNumber {
    let d = hopfpi::exactnum::totient(order) as usize;
    let coeffs = (0..d).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
    CyclotomicNumber::from_coeffs(order, coeffs)
}

/// A few monomials in `a`, `c`, `c'` and the first `t`-variables.
pub fn commpoly(rng: &mut ChaCha8Rng, order: u32, t_basis: u32) -> CommPoly {
    let mut vars = vec![
        VariableId::param(ParamName::A),
        VariableId::param(ParamName::C),
        VariableId::Param(Param::new(ParamName::C).primed(1)),
    ];
    vars.extend((0..t_basis.max(1)).map(|r| VariableId::t(1, r)));
    let mut p = CommPoly::zero(order);
    for _ in 0..rng.gen_range(0..4) {
        let mut m = CommPoly::constant(cyclotomic(rng, order));
        for _ in 0..rng.gen_range(0..3) {
            let v = vars[rng.gen_range(0..vars.len())];
            m = &m * &CommPoly::var(order, v);
        }
        p = &p + &m;
    }
    p
}

pub fn word(rng: &mut ChaCha8Rng, ngens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(0..ngens) as u16).collect())
}

/// A random element: a handful of random words with random coefficients, reduced.
pub fn element(rng: &mut ChaCha8Rng, alg: &Arc<PresentedAlgebra>, max_len: usize, symbolic: bool) -> AlgElement {
    let order = alg.order();
    let ngens = alg.generators().len();
    let terms: Vec<(Word, CommPoly)> = (0..rng.gen_range(1..4))
        .map(|_| {
            let c = if symbolic { commpoly(rng, order, 2) } else { CommPoly::constant(cyclotomic(rng, order)) };
            (word(rng, ngens, max_len), c)
        })
        .collect();
    AlgElement::from_terms(alg, terms).expect("valid random element")
}
