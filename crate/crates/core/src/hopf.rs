//! Hopf structures on presented algebras: the Taft algebras `H_{n²}`, the
//! algebras `E(n)`, and the trivial Hopf algebra `k`.
//!
//! Coproduct, counit and antipode are given on generators and extended
//! (anti-)multiplicatively; coproducts of composite elements are always
//! computed in `H ⊗ H`, never read off closed formulas.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::commpoly::CommPoly;
use crate::error::{Error, Result};
use crate::exactnum::CyclotomicNumber;
use crate::expr::Expr;
use crate::ncalg::{AlgElement, GenId, GeneratorMap, GeneratorsOnly, ParseContext, PresentedAlgebra, RewriteRule, Word};

/// Upper bound on the dimension of any shipped Hopf algebra.
pub const MAX_DIMENSION: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopfFamily {
    /// The Taft algebra `H_{n²}`.
    Taft(u32),
    /// The `2^{n+1}`-dimensional algebra `E(n)`.
    En(u32),
    /// The one-dimensional Hopf algebra `k`.
    Trivial,
}

impl fmt::Display for HopfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfFamily::Taft(n) => write!(f, "taft:{n}"),
            HopfFamily::En(n) => write!(f, "en:{n}"),
            HopfFamily::Trivial => f.write_str("trivial"),
        }
    }
}

impl std::str::FromStr for HopfFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown Hopf algebra `{s}` (expected taft:<n>, en:<n> or trivial)"));
        if s.trim() == "trivial" {
            return Ok(HopfFamily::Trivial);
        }
        let (kind, n) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "taft" => Ok(HopfFamily::Taft(n)),
            "en" => Ok(HopfFamily::En(n)),
            _ => Err(bad()),
        }
    }
}

pub struct HopfPresentation {
    family: HopfFamily,
    algebra: Arc<PresentedAlgebra>,
    tensor2: Arc<PresentedAlgebra>,
    tensor3: OnceLock<Arc<PresentedAlgebra>>,
    coproduct: GeneratorMap,
    counit: Vec<CyclotomicNumber>,
    antipode: GeneratorMap,
    basis: Vec<Word>,
    basis_names: Arc<[String]>,
    basis_index: HashMap<Word, usize>,
    q: CyclotomicNumber,
}

impl fmt::Debug for HopfPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfPresentation({})", self.family)
    }
}

/// Structure maps on generators, expressed through closures over the built algebras.
struct Structure {
    coproduct: Vec<AlgElement>,
    counit: Vec<CyclotomicNumber>,
    antipode: Vec<AlgElement>,
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn word(v: &[GenId]) -> Word {
    Word::new(v.to_vec())
}

/// The Taft algebra `H_{n²} = k<x, y | x^n = 1, yx = q xy, y^n = 0>` over `Q(ζ_n)`.
pub fn taft(n: u32) -> Result<Arc<HopfPresentation>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Taft algebras need n >= 2, got {n}")));
    }
    let q = CyclotomicNumber::primitive_root(n);
    let rules = vec![
        RewriteRule::new(word(&[1, 0]), vec![(word(&[0, 1]), CommPoly::constant(q.clone()))]),
        RewriteRule::new(Word::letter(0).pow(n as usize), vec![(Word::empty(), CommPoly::one(n))]),
        RewriteRule::new(Word::letter(1).pow(n as usize), Vec::new()),
    ];
    let alg = PresentedAlgebra::new_confluent(format!("H_{{{}}}", n * n), names(&["x", "y"]), rules, n)?;
    HopfPresentation::assemble(HopfFamily::Taft(n), alg, q, |h, hh| {
        let x = AlgElement::generator(h, 0)?;
        let one = AlgElement::one(h);
        let xl = x.embed_left(hh)?;
        let xr = x.embed_right(hh)?;
        let y = AlgElement::generator(h, 1)?;
        let dy = one.embed_left(hh)? * y.embed_right(hh)? + y.embed_left(hh)? * xr.clone();
        let q_inv = CyclotomicNumber::primitive_root(n).inverse()?;
        let x_last = x.pow(n - 1);
        let sy = (&x_last * &y).scale(&CommPoly::constant(-q_inv));
        Ok(Structure {
            coproduct: vec![xl * xr, dy],
            counit: vec![CyclotomicNumber::one(n), CyclotomicNumber::zero(n)],
            antipode: vec![x_last, sy],
        })
    })
}

/// `E(n) = k<x, y_1..y_n | x² = 1, y_i² = 0, y_i x = -x y_i, y_j y_i = -y_i y_j>` over `Q`.
pub fn en(n: u32) -> Result<Arc<HopfPresentation>> {
    if n < 1 {
        return Err(Error::InvalidArgument("E(n) needs n >= 1".into()));
    }
    if n as usize >= GenId::MAX as usize / 4 {
        return Err(Error::InvalidArgument(format!("E({n}) is too large")));
    }
    let order = 2;
    let minus = CommPoly::from_int(order, -1);
    let mut gens = vec!["x".to_string()];
    gens.extend((1..=n).map(|i| format!("y{i}")));
    let mut rules = vec![RewriteRule::new(word(&[0, 0]), vec![(Word::empty(), CommPoly::one(order))])];
    for i in 1..=n as GenId {
        rules.push(RewriteRule::new(word(&[i, i]), Vec::new()));
        rules.push(RewriteRule::new(word(&[i, 0]), vec![(word(&[0, i]), minus.clone())]));
        for j in i + 1..=n as GenId {
            rules.push(RewriteRule::new(word(&[j, i]), vec![(word(&[i, j]), minus.clone())]));
        }
    }
    let alg = PresentedAlgebra::new_confluent(format!("E({n})"), gens, rules, order)?;
    HopfPresentation::assemble(HopfFamily::En(n), alg, CyclotomicNumber::primitive_root(2), |h, hh| {
        let x = AlgElement::generator(h, 0)?;
        let xr = x.embed_right(hh)?;
        let one = AlgElement::one(h);
        let mut coproduct = vec![x.embed_left(hh)? * xr.clone()];
        let mut counit = vec![CyclotomicNumber::one(order)];
        let mut antipode = vec![x.clone()];
        for i in 1..=n as GenId {
            let y = AlgElement::generator(h, i)?;
            coproduct.push(one.embed_left(hh)? * y.embed_right(hh)? + y.embed_left(hh)? * xr.clone());
            counit.push(CyclotomicNumber::zero(order));
            antipode.push(-(&y * &x));
        }
        Ok(Structure {
            coproduct,
            counit,
            antipode,
        })
    })
}

/// The one-dimensional Hopf algebra `k = Q`; its comodule algebras are plain algebras.
pub fn trivial() -> Arc<HopfPresentation> {
    let alg = PresentedAlgebra::free("k", Vec::new(), 1);
    HopfPresentation::assemble(HopfFamily::Trivial, alg, CyclotomicNumber::one(1), |_, _| {
        Ok(Structure {
            coproduct: Vec::new(),
            counit: Vec::new(),
            antipode: Vec::new(),
        })
    })
    .expect("trivial Hopf algebra")
}

/// Builds the Hopf algebra named by a family tag.
pub fn hopf(family: HopfFamily) -> Result<Arc<HopfPresentation>> {
    match family {
        HopfFamily::Taft(n) => taft(n),
        HopfFamily::En(n) => en(n),
        HopfFamily::Trivial => Ok(trivial()),
    }
}

impl HopfPresentation {
    fn assemble(
        family: HopfFamily,
        alg: Arc<PresentedAlgebra>,
        q: CyclotomicNumber,
        structure: impl FnOnce(&Arc<PresentedAlgebra>, &Arc<PresentedAlgebra>) -> Result<Structure>,
    ) -> Result<Arc<Self>> {
        let basis = alg.normal_basis(MAX_DIMENSION)?;
        let basis_names: Arc<[String]> = basis.iter().map(|w| alg.render_word(w)).collect();
        let alg = alg.with_basis_names(basis_names.clone());
        let tensor2 = PresentedAlgebra::tensor_square(&alg)?;
        let s = structure(&alg, &tensor2)?;
        let basis_index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(Arc::new(HopfPresentation {
            family,
            coproduct: GeneratorMap::new(&tensor2, s.coproduct),
            counit: s.counit,
            antipode: GeneratorMap::anti(&alg, s.antipode),
            algebra: alg,
            tensor2,
            tensor3: OnceLock::new(),
            basis,
            basis_names,
            basis_index,
            q,
        }))
    }

    /// A copy with the coproduct replaced on generators; used to probe the axiom checker.
    pub fn with_coproduct(&self, images: Vec<AlgElement>) -> Result<Arc<Self>> {
        if images.len() != self.algebra.generators().len() {
            return Err(Error::InvalidArgument("one coproduct image per generator expected".into()));
        }
        Ok(Arc::new(HopfPresentation {
            family: self.family,
            algebra: self.algebra.clone(),
            tensor2: self.tensor2.clone(),
            tensor3: OnceLock::new(),
            coproduct: GeneratorMap::new(&self.tensor2, images),
            counit: self.counit.clone(),
            antipode: GeneratorMap::anti(&self.algebra, self.antipode.images().to_vec()),
            basis: self.basis.clone(),
            basis_names: self.basis_names.clone(),
            basis_index: self.basis_index.clone(),
            q: self.q.clone(),
        }))
    }

    pub fn family(&self) -> HopfFamily {
        self.family
    }

    /// Order of the cyclotomic coefficient field.
    pub fn order(&self) -> u32 {
        self.algebra.order()
    }

    /// The distinguished root of unity `q` (`-1` for `E(n)`).
    pub fn q(&self) -> &CyclotomicNumber {
        &self.q
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn tensor_square(&self) -> &Arc<PresentedAlgebra> {
        &self.tensor2
    }

    /// `(H ⊗ H) ⊗ H`.
    pub fn tensor_cube(&self) -> &Arc<PresentedAlgebra> {
        self.tensor3.get_or_init(|| {
            PresentedAlgebra::tensor(&self.tensor2, &self.algebra).expect("tensor cube of a valid presentation")
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Normal-word basis in increasing order; index `r` names `t[i,r]` and `X[i,r]`.
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn basis_names(&self) -> &Arc<[String]> {
        &self.basis_names
    }

    pub fn basis_index(&self, w: &Word) -> Option<usize> {
        self.basis_index.get(w).copied()
    }

    pub fn basis_element(&self, r: usize) -> AlgElement {
        AlgElement::from_word(&self.algebra, self.basis[r].clone(), CommPoly::one(self.order()))
            .expect("basis word")
    }

    pub fn generator(&self, name: &str) -> Result<AlgElement> {
        AlgElement::named(&self.algebra, name)
    }

    pub fn parse(&self, src: &str) -> Result<AlgElement> {
        AlgElement::parse_with(&self.algebra, src, self)
    }

    fn check_member(&self, e: &AlgElement) -> Result<()> {
        if e.algebra().same_as(&self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(e.algebra().name().to_string(), self.algebra.name().to_string()))
        }
    }

    /// Images of the generators under the coproduct.
    pub fn coproduct_on_generators(&self) -> &[AlgElement] {
        self.coproduct.images()
    }

    pub fn antipode_on_generators(&self) -> &[AlgElement] {
        self.antipode.images()
    }

    pub fn counit_on_generators(&self) -> &[CyclotomicNumber] {
        &self.counit
    }

    pub fn coproduct(&self, e: &AlgElement) -> Result<AlgElement> {
        self.check_member(e)?;
        self.coproduct.apply(e)
    }

    pub fn coproduct_word(&self, w: &Word) -> Result<AlgElement> {
        self.coproduct.apply_word(w)
    }

    fn counit_word(&self, w: &Word) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::one(self.order());
        for &g in w.letters() {
            acc = &acc * &self.counit[g as usize];
        }
        acc
    }

    /// The counit, extended linearly over the coefficient polynomials.
    pub fn counit(&self, e: &AlgElement) -> Result<CommPoly> {
        self.check_member(e)?;
        let mut acc = CommPoly::zero(self.order());
        for (w, c) in e.terms() {
            acc = &acc + &c.scale(&self.counit_word(w));
        }
        Ok(acc)
    }

    /// The counit as a field element; fails on elements with symbolic coefficients.
    pub fn counit_scalar(&self, e: &AlgElement) -> Result<CyclotomicNumber> {
        self.counit(e)?
            .as_constant()
            .ok_or_else(|| Error::SymbolicParameter(e.to_string()))
    }

    pub fn antipode(&self, e: &AlgElement) -> Result<AlgElement> {
        self.check_member(e)?;
        self.antipode.apply(e)
    }

    pub fn antipode_word(&self, w: &Word) -> Result<AlgElement> {
        self.antipode.apply_word(w)
    }

    fn word_element(&self, w: &Word) -> Result<AlgElement> {
        AlgElement::from_word(&self.algebra, w.clone(), CommPoly::one(self.order()))
    }

    /// Verifies every Hopf axiom on every basis element and every defining relation.
    pub fn check_hopf_axioms(&self) -> HopfAxiomReport {
        let h = &self.algebra;
        let hh = &self.tensor2;
        let h3 = self.tensor_cube();
        let k = h.generators().len() as GenId;

        let per_element: Vec<Vec<AxiomFailure>> = self
            .basis
            .par_iter()
            .map(|b| {
                let mut fails = Vec::new();
                let mut fail = |axiom: Axiom| {
                    fails.push(AxiomFailure {
                        axiom,
                        element: h.render_word(b),
                    })
                };
                let run = || -> Result<Vec<Axiom>> {
                    let mut bad = Vec::new();
                    let elem = self.word_element(b)?;
                    let d = self.coproduct_word(b)?;
                    // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ in (H ⊗ H) ⊗ H.
                    let lhs = d.map_tensor(
                        h3,
                        &|l| self.coproduct_word(l)?.relabel(h3, &|g| g),
                        &|r| self.word_element(r)?.relabel(h3, &|g| g + 2 * k),
                    )?;
                    let rhs = d.map_tensor(
                        h3,
                        &|l| self.word_element(l)?.relabel(h3, &|g| g),
                        &|r| self.coproduct_word(r)?.relabel(h3, &|g| g + k),
                    )?;
                    if lhs != rhs {
                        bad.push(Axiom::Coassociativity);
                    }
                    let eps_l = d.map_tensor(
                        h,
                        &|l| Ok(AlgElement::constant(h, self.counit_word(l))),
                        &|r| self.word_element(r),
                    )?;
                    if eps_l != elem {
                        bad.push(Axiom::LeftCounit);
                    }
                    let eps_r = d.map_tensor(
                        h,
                        &|l| self.word_element(l),
                        &|r| Ok(AlgElement::constant(h, self.counit_word(r))),
                    )?;
                    if eps_r != elem {
                        bad.push(Axiom::RightCounit);
                    }
                    let unit = AlgElement::constant(h, self.counit_word(b));
                    let s_l = d.map_tensor(h, &|l| self.antipode_word(l), &|r| self.word_element(r))?;
                    if s_l != unit {
                        bad.push(Axiom::LeftAntipode);
                    }
                    let s_r = d.map_tensor(h, &|l| self.word_element(l), &|r| self.antipode_word(r))?;
                    if s_r != unit {
                        bad.push(Axiom::RightAntipode);
                    }
                    Ok(bad)
                };
                match run() {
                    Ok(bad) => bad.into_iter().for_each(&mut fail),
                    Err(_) => fail(Axiom::Evaluation),
                }
                fails
            })
            .collect();

        let mut failures: Vec<AxiomFailure> = per_element.into_iter().flatten().collect();
        for rule in h.rules() {
            let name = format!(
                "{} = {}",
                h.render_word(&rule.lhs),
                AlgElement::from_terms(h, rule.rhs.clone()).map_or_else(|_| "?".into(), |e| e.render())
            );
            let mut push = |axiom| failures.push(AxiomFailure { axiom, element: name.clone() });
            let check = |f: &dyn Fn(&Word) -> Result<AlgElement>, target: &Arc<PresentedAlgebra>| -> Result<bool> {
                let lhs = f(&rule.lhs)?;
                let mut rhs = AlgElement::zero(target);
                for (w, c) in &rule.rhs {
                    rhs = rhs.try_add(&f(w)?.scale(c))?;
                }
                Ok(lhs == rhs)
            };
            if !check(&|w| self.coproduct_word(w), hh).unwrap_or(false) {
                push(Axiom::CoproductRelation);
            }
            let eps = |w: &Word| Ok(AlgElement::constant(h, self.counit_word(w)));
            if !check(&eps, h).unwrap_or(false) {
                push(Axiom::CounitRelation);
            }
            if !check(&|w| self.antipode_word(w), h).unwrap_or(false) {
                push(Axiom::AntipodeRelation);
            }
        }
        HopfAxiomReport {
            checked_elements: self.basis.len(),
            checked_relations: h.rules().len(),
            failures,
        }
    }
}

/// Resolves `t[i, h]` by reading `h` as an element of `H` that must be a single basis word.
impl ParseContext for HopfPresentation {
    fn basis_index(&self, e: &Expr) -> Result<u32> {
        let h = AlgElement::from_expr(&self.algebra, e, &GeneratorsOnly)?;
        let mut terms = h.terms();
        match (terms.next(), terms.next()) {
            (Some((w, c)), None) if c.is_one() => Ok(self.basis_index(w).expect("normal word") as u32),
            _ => Err(Error::InvalidArgument(format!(
                "`{}` is not a basis element of {}",
                h.render(),
                self.family
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Coassociativity,
    LeftCounit,
    RightCounit,
    LeftAntipode,
    RightAntipode,
    CoproductRelation,
    CounitRelation,
    AntipodeRelation,
    /// A structure map could not be evaluated at all.
    Evaluation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Coassociativity => "coassociativity",
            Axiom::LeftCounit => "left counit law",
            Axiom::RightCounit => "right counit law",
            Axiom::LeftAntipode => "left antipode law",
            Axiom::RightAntipode => "right antipode law",
            Axiom::CoproductRelation => "coproduct respects relation",
            Axiom::CounitRelation => "counit respects relation",
            Axiom::AntipodeRelation => "antipode respects relation",
            Axiom::Evaluation => "evaluation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub element: String,
}

#[derive(Debug, Clone, Default)]
pub struct HopfAxiomReport {
    pub checked_elements: usize,
    pub checked_relations: usize,
    pub failures: Vec<AxiomFailure>,
}

impl HopfAxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

/// Gaussian binomial coefficient `[m choose k]` evaluated at `q`, by the q-Pascal recurrence
/// `[m, k] = [m-1, k-1] + q^k [m-1, k]`.
pub fn qbinom(m: u32, k: u32, q: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    if k > m {
        return Err(Error::InvalidArgument(format!("q-binomial needs k <= m, got ({m}, {k})")));
    }
    let order = q.order();
    let mut row = vec![CyclotomicNumber::one(order)];
    for mm in 1..=m as usize {
        let mut next = vec![CyclotomicNumber::one(order); mm + 1];
        for kk in 1..mm {
            next[kk] = &row[kk - 1] + &(&q.pow_u(kk as u64) * &row[kk]);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}
