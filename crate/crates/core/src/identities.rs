//! Polynomial H-identities.
//!
//! `T(X_H)` is the free algebra on symbols `X[i,h]` (copy `i`, basis element
//! `h` of `H`). The universal map sends `X[i,x]` to `Σ t[i,x₁] u_{x₂}` in
//! `S ⊗ A`, realized as `A` with polynomial coefficients in the `t`-variables;
//! an element is an identity exactly when its image vanishes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::commpoly::{CommPoly, ParamName};
use crate::comodule::{ComoduleAlgebra, GaloisObjectSpec, ParamValue};
use crate::error::{Error, Result};
use crate::exactnum::{rational_root, CyclotomicNumber};
use crate::expr::{Expr, Ident};
use crate::hopf::{self, HopfFamily, HopfPresentation};
use crate::ncalg::{AlgElement, GenId, GeneratorMap, GeneratorsOnly, ParseContext, PresentedAlgebra, Word};

/// Copies used by the catalog: `E, X, Y` live in copy 1 and the commutator partner in copy 2.
pub const CATALOG_COPIES: u32 = 2;

/// Upper bound on matrix-unit substitutions times polynomial terms.
pub const MATRIX_BUDGET: u128 = 50_000_000;

/// The free comodule algebra `T(X_H)` on a fixed number of copies of `H`.
pub struct FreeComodule {
    hopf: Arc<HopfPresentation>,
    copies: u32,
    algebra: Arc<PresentedAlgebra>,
    tensor_h: Arc<PresentedAlgebra>,
    coaction: OnceLock<GeneratorMap>,
    coproducts: Vec<AlgElement>,
    max_degree: Option<usize>,
}

impl fmt::Debug for FreeComodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeComodule({}, copies={})", self.hopf.family(), self.copies)
    }
}

impl FreeComodule {
    pub fn new(hopf: &Arc<HopfPresentation>, copies: u32) -> Result<Self> {
        let dim = hopf.dimension();
        if copies == 0 || copies as usize * dim > GenId::MAX as usize {
            return Err(Error::InvalidArgument(format!("unsupported number of copies: {copies}")));
        }
        let names = hopf.basis_names();
        let gens = (1..=copies)
            .flat_map(|i| names.iter().map(move |h| format!("X[{i},{h}]")))
            .collect();
        let algebra = PresentedAlgebra::free(format!("T({})", hopf.family()), gens, hopf.order())
            .with_basis_names(names.clone());
        let tensor_h = PresentedAlgebra::tensor(&algebra, hopf.algebra())?;
        let coproducts = hopf.basis().iter().map(|w| hopf.coproduct_word(w)).collect::<Result<_>>()?;
        Ok(FreeComodule {
            hopf: hopf.clone(),
            copies,
            algebra,
            tensor_h,
            coaction: OnceLock::new(),
            coproducts,
            max_degree: None,
        })
    }

    /// Limits the degree of intermediate expansions while parsing.
    pub fn with_max_degree(mut self, limit: Option<usize>) -> Self {
        self.max_degree = limit;
        self
    }

    pub fn hopf(&self) -> &Arc<HopfPresentation> {
        &self.hopf
    }

    pub fn copies(&self) -> u32 {
        self.copies
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    /// The presentation of `T ⊗ H`.
    pub fn tensor_with_hopf(&self) -> &Arc<PresentedAlgebra> {
        &self.tensor_h
    }

    fn order(&self) -> u32 {
        self.hopf.order()
    }

    fn gen_id(&self, copy: u32, r: usize) -> GenId {
        ((copy - 1) as usize * self.hopf.dimension() + r) as GenId
    }

    fn check_copy(&self, copy: u32) -> Result<()> {
        if copy == 0 || copy > self.copies {
            return Err(Error::InvalidArgument(format!(
                "copy index {copy} out of range 1..={}",
                self.copies
            )));
        }
        Ok(())
    }

    /// `X[copy, r]` for the `r`-th basis element of `H`.
    pub fn basis_symbol(&self, copy: u32, r: usize) -> Result<AlgElement> {
        self.check_copy(copy)?;
        AlgElement::generator(&self.algebra, self.gen_id(copy, r))
    }

    /// The linear extension `X_i^{Σ λ_r x_r} = Σ λ_r X_i^{x_r}`.
    pub fn x_symbol(&self, copy: u32, h: &AlgElement) -> Result<AlgElement> {
        self.check_copy(copy)?;
        if !h.algebra().same_as(self.hopf.algebra()) {
            return Err(Error::AlgebraMismatch(h.algebra().name().to_string(), self.hopf.algebra().name().to_string()));
        }
        AlgElement::from_terms(
            &self.algebra,
            h.terms().map(|(w, c)| {
                let r = self.hopf.basis_index(w).expect("normal word");
                (Word::letter(self.gen_id(copy, r)), c.clone())
            }),
        )
    }

    /// `X[copy, h]` with `h` given as text in `H`.
    pub fn x_named(&self, copy: u32, h: &str) -> Result<AlgElement> {
        self.x_symbol(copy, &self.hopf.parse(h)?)
    }

    /// Parses an element of `T`. Besides `X[i,h]`, the shorthands `E = X[1,1]`,
    /// `X = X[1,x]`, `Y = X[1,y]` (Taft) and `Yi = X[1,yi]` (E(n)) are accepted,
    /// as are the coefficient symbols `a`, `c`, `c[i]`, `d[i,j]` and `q`.
    pub fn parse(&self, src: &str) -> Result<AlgElement> {
        AlgElement::parse_with(&self.algebra, src, self)
    }

    fn coaction_map(&self) -> &GeneratorMap {
        self.coaction.get_or_init(|| {
            let dim = self.hopf.dimension();
            let images = (1..=self.copies)
                .flat_map(|i| (0..dim).map(move |r| (i, r)))
                .map(|(i, r)| {
                    self.coproducts[r]
                        .map_tensor(
                            &self.tensor_h,
                            &|l| self.basis_symbol(i, self.hopf.basis_index(l).expect("normal"))?.embed_left(&self.tensor_h),
                            &|w| self.hword(w)?.embed_right(&self.tensor_h),
                        )
                        .expect("coaction image")
                })
                .collect();
            GeneratorMap::new(&self.tensor_h, images)
        })
    }

    fn hword(&self, w: &Word) -> Result<AlgElement> {
        AlgElement::from_word(self.hopf.algebra(), w.clone(), CommPoly::one(self.order()))
    }

    /// `δ(X_i^x) = X_i^{x₁} ⊗ x₂`, extended multiplicatively.
    pub fn t_coaction(&self, p: &AlgElement) -> Result<AlgElement> {
        self.check_member(p)?;
        self.coaction_map().apply_memo(p)
    }

    /// Left tensor components of `δ(P)`, grouped by the right-hand `H`-basis element.
    pub fn coaction_components(&self, p: &AlgElement) -> Result<Vec<(usize, AlgElement)>> {
        let d = self.t_coaction(p)?;
        let mut groups: BTreeMap<usize, Vec<(Word, CommPoly)>> = BTreeMap::new();
        for (w, c) in d.terms() {
            let (l, r) = self.tensor_h.split(w).expect("tensor word");
            let idx = self.hopf.basis_index(&r).expect("normal word");
            groups.entry(idx).or_default().push((l, c.clone()));
        }
        groups
            .into_iter()
            .map(|(r, terms)| Ok((r, AlgElement::from_terms(&self.algebra, terms)?)))
            .collect()
    }

    pub fn is_coinvariant(&self, p: &AlgElement) -> Result<bool> {
        Ok(self.t_coaction(p)? == p.embed_left(&self.tensor_h)?)
    }

    fn check_member(&self, p: &AlgElement) -> Result<()> {
        if p.algebra().same_as(&self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(p.algebra().name().to_string(), self.algebra.name().to_string()))
        }
    }

    /// The universal map for `A` as a generator map `T → S ⊗ A`.
    pub fn mu_map(&self, a: &ComoduleAlgebra) -> Result<GeneratorMap> {
        if a.hopf().family() != self.hopf.family() {
            return Err(Error::InvalidArgument(format!(
                "{} is a comodule algebra over {}, not {}",
                a.spec(),
                a.hopf().family(),
                self.hopf.family()
            )));
        }
        let dim = self.hopf.dimension();
        let order = self.order();
        let mut images = Vec::with_capacity(self.copies as usize * dim);
        for i in 1..=self.copies {
            for r in 0..dim {
                let img = self.coproducts[r].map_tensor(
                    a.algebra(),
                    &|l| {
                        let t = CommPoly::t(order, i, self.hopf.basis_index(l).expect("normal") as u32);
                        Ok(AlgElement::scalar(a.algebra(), t))
                    },
                    &|w| Ok(a.section(self.hopf.basis_index(w).expect("normal")).clone()),
                )?;
                images.push(img);
            }
        }
        Ok(GeneratorMap::new(a.algebra(), images))
    }

    /// `μ(P)` in `S ⊗ A`.
    pub fn mu(&self, p: &AlgElement, a: &ComoduleAlgebra) -> Result<AlgElement> {
        self.check_member(p)?;
        self.mu_map(a)?.apply_memo(p)
    }

    /// Whether `P` is an identity of `A`, i.e. `μ(P) = 0`.
    ///
    /// With symbolic parameters a `true` answer holds for every value.
    pub fn is_identity(&self, p: &AlgElement, a: &ComoduleAlgebra) -> Result<bool> {
        Ok(self.mu(p, a)?.is_zero())
    }

    fn shorthand(&self, name: &str) -> Option<&'static str> {
        match (name, self.hopf.family()) {
            ("E", _) => Some("1"),
            ("X", HopfFamily::Taft(_) | HopfFamily::En(_)) => Some("x"),
            ("Y", HopfFamily::Taft(_)) => Some("y"),
            _ => None,
        }
    }

    // The catalog, over copy 1 (and copy 2 for commutators).

    fn e(&self) -> AlgElement {
        self.basis_symbol(1, 0).expect("unit symbol")
    }

    fn x(&self) -> Result<AlgElement> {
        self.x_named(1, "x")
    }

    /// `P_c = (YX − qXY)^n − (1−q)^n X^nY^n + (1−q)^n c E^nX^n` for a given value of `c`.
    pub fn taft_identity_with(&self, c: &CommPoly) -> Result<AlgElement> {
        let HopfFamily::Taft(n) = self.hopf.family() else {
            return Err(Error::InvalidArgument("the Taft identity needs a Taft algebra".into()));
        };
        let q = self.hopf.q().clone();
        let x = self.x()?;
        let y = self.x_named(1, "y")?;
        let core = (&y * &x) - (&x * &y).scale(&CommPoly::constant(q.clone()));
        let w = (CyclotomicNumber::one(n) - q).pow_u(n as u64);
        let wn = CommPoly::constant(w);
        Ok(core.pow(n) - (x.pow(n) * y.pow(n)).scale(&wn) + (self.e().pow(n) * x.pow(n)).scale(&wn.try_mul(c)?))
    }

    /// `P_c` with symbolic `c`.
    pub fn taft_identity(&self) -> Result<AlgElement> {
        self.taft_identity_with(&GaloisObjectSpec::new(self.hopf.family()).value_poly(ParamName::C))
    }

    fn y_i(&self, i: u16) -> Result<AlgElement> {
        self.x_named(1, &format!("y{i}"))
    }

    /// `(XY_i+Y_iX)² − 4X²Y_i² + 4c_i E²X²` with `c_i` taken from `spec`.
    pub fn en_first(&self, i: u16, spec: &GaloisObjectSpec) -> Result<AlgElement> {
        let x = self.x()?;
        let y = self.y_i(i)?;
        let order = self.order();
        let s = &x * &y + &y * &x;
        let ci = spec.value_poly(ParamName::Ci(i)).scale(&CyclotomicNumber::from_int(order, 4));
        Ok(s.pow(2) - (x.pow(2) * y.pow(2)).scale(&CommPoly::from_int(order, 4)) + (self.e().pow(2) * x.pow(2)).scale(&ci))
    }

    /// `2(Y_iY_j + Y_jY_i)X² − (XY_i+Y_iX)(XY_j+Y_jX) − 2d_{i,j} E²X²` with `d` taken from `spec`.
    pub fn en_second(&self, i: u16, j: u16, spec: &GaloisObjectSpec) -> Result<AlgElement> {
        let x = self.x()?;
        let yi = self.y_i(i)?;
        let yj = self.y_i(j)?;
        let order = self.order();
        let two = CommPoly::from_int(order, 2);
        let anti = |a: &AlgElement, b: &AlgElement| a * b + b * a;
        let dij = spec.value_poly(ParamName::d(i, j)).scale(&CyclotomicNumber::from_int(order, 2));
        Ok((anti(&yi, &yj) * x.pow(2)).scale(&two)
            - anti(&x, &yi) * anti(&x, &yj)
            - (self.e().pow(2) * x.pow(2)).scale(&dij))
    }

    /// All `n(n+3)/2` identities for `E(n)`, in catalog order.
    pub fn en_identities(&self, spec: &GaloisObjectSpec) -> Result<Vec<(IdentityName, AlgElement)>> {
        let HopfFamily::En(n) = self.hopf.family() else {
            return Err(Error::InvalidArgument("the E(n) identities need E(n)".into()));
        };
        let n = n as u16;
        let mut out = Vec::new();
        for i in 1..=n {
            out.push((IdentityName::EnCi(i), self.en_first(i, spec)?));
        }
        for i in 1..=n {
            for j in i..=n {
                out.push((IdentityName::EnDij(i, j), self.en_second(i, j, spec)?));
            }
        }
        Ok(out)
    }

    /// `P_h = X_1^{h₁} X_1^{S(h₂)}`.
    pub fn coinvariant_p(&self, h: &AlgElement) -> Result<AlgElement> {
        let d = self.hopf.coproduct(h)?;
        d.map_tensor(
            &self.algebra,
            &|l| self.x_symbol(1, &self.hword(l)?),
            &|r| self.x_symbol(1, &self.hopf.antipode_word(r)?),
        )
    }

    /// `Q_{h,h'} = X_1^{h₁} X_1^{h'₁} X_1^{S(h₂h'₂)}`.
    pub fn coinvariant_q(&self, h: &AlgElement, h2: &AlgElement) -> Result<AlgElement> {
        let d1 = self.hopf.coproduct(h)?;
        let d2 = self.hopf.coproduct(h2)?;
        let hh = self.hopf.tensor_square();
        let mut acc = AlgElement::zero(&self.algebra);
        for (w1, c1) in d1.terms() {
            let (l1, r1) = hh.split(w1).expect("tensor word");
            for (w2, c2) in d2.terms() {
                let (l2, r2) = hh.split(w2).expect("tensor word");
                let s = self.hopf.antipode(&(self.hword(&r1)? * self.hword(&r2)?))?;
                let term = self.x_symbol(1, &self.hword(&l1)?)? * self.x_symbol(1, &self.hword(&l2)?)? * self.x_symbol(1, &s)?;
                acc = acc + term.scale(&c1.try_mul(c2)?);
            }
        }
        Ok(acc)
    }

    /// `core · X_2^z − X_2^z · core`.
    pub fn commutator_identity(&self, core: &AlgElement, z: &AlgElement) -> Result<AlgElement> {
        let xz = self.x_symbol(2, z)?;
        core.try_mul(&xz)?.try_sub(&xz.try_mul(core)?)
    }

    /// Members of a named catalog entry, with parameters taken from `spec`.
    ///
    /// `coinv_P:<h>` and `coinv_Q:<h>,<h'>` stand for the commutators with
    /// `X_2^z` for every basis element `z`, one member per `z`.
    pub fn identity(&self, name: &IdentityName, spec: &GaloisObjectSpec) -> Result<Vec<(String, AlgElement)>> {
        let fam = self.hopf.family();
        let wrong = || Err(Error::InvalidArgument(format!("identity `{name}` does not apply to {fam}")));
        let single = |p: AlgElement| Ok(vec![(name.to_string(), p)]);
        match name {
            IdentityName::TaftPc => match fam {
                HopfFamily::Taft(_) => single(self.taft_identity_with(&spec.value_poly(ParamName::C))?),
                _ => wrong(),
            },
            IdentityName::EnCi(i) | IdentityName::EnDij(i, _) => {
                let HopfFamily::En(n) = fam else { return wrong() };
                let bad_index = |k: u16| k == 0 || k as u32 > n;
                match name {
                    IdentityName::EnDij(i, j) if !bad_index(*i) && !bad_index(*j) => {
                        single(self.en_second(*i.min(j), *i.max(j), spec)?)
                    }
                    IdentityName::EnCi(_) if !bad_index(*i) => single(self.en_first(*i, spec)?),
                    _ => Err(Error::InvalidArgument(format!("index out of range in `{name}` for {fam}"))),
                }
            }
            IdentityName::CoinvP(h) | IdentityName::CoinvQ(h, _) => {
                if self.copies < 2 {
                    return Err(Error::InvalidArgument("commutator identities need two copies".into()));
                }
                let core = match name {
                    IdentityName::CoinvQ(_, h2) => self.coinvariant_q(&self.hopf.parse(h)?, &self.hopf.parse(h2)?)?,
                    _ => self.coinvariant_p(&self.hopf.parse(h)?)?,
                };
                (0..self.hopf.dimension())
                    .map(|r| {
                        let z = self.hopf.basis_element(r);
                        Ok((format!("{name} with z = {}", z.render()), self.commutator_identity(&core, &z)?))
                    })
                    .collect()
            }
            IdentityName::Standard(_) => Err(Error::InvalidArgument(
                "standard polynomials are checked on matrix algebras (verify_matrix_identity)".into(),
            )),
        }
    }

    /// The identities that parametrize Galois objects of the family, in fixed order.
    pub fn catalog(&self, spec: &GaloisObjectSpec) -> Result<Vec<(IdentityName, AlgElement)>> {
        match self.hopf.family() {
            HopfFamily::Taft(_) => Ok(vec![(IdentityName::TaftPc, self.taft_identity_with(&spec.value_poly(ParamName::C))?)]),
            HopfFamily::En(_) => self.en_identities(spec),
            HopfFamily::Trivial => Ok(Vec::new()),
        }
    }
}

impl ParseContext for FreeComodule {
    fn element(&self, _alg: &Arc<PresentedAlgebra>, id: &Ident) -> Result<Option<AlgElement>> {
        if id.primes > 0 {
            return Ok(None);
        }
        if id.args.is_empty() {
            if let Some(h) = self.shorthand(&id.name) {
                return self.x_named(1, h).map(Some);
            }
            if let (Some(i), HopfFamily::En(n)) = (id.name.strip_prefix('Y'), self.hopf.family()) {
                if let Ok(i) = i.parse::<u32>() {
                    if (1..=n).contains(&i) {
                        return self.x_named(1, &format!("y{i}")).map(Some);
                    }
                }
            }
            return Ok(None);
        }
        if id.name != "X" {
            return Ok(None);
        }
        let [copy, h] = id.args.as_slice() else {
            return Err(Error::InvalidArgument("X[i,h] takes a copy index and an element of H".into()));
        };
        let copy = copy
            .as_int()
            .and_then(|v| u32::try_from(v).ok())
            .filter(|&v| v >= 1)
            .ok_or_else(|| Error::InvalidArgument("the copy index of X[i,h] must be a positive integer".into()))?;
        let h = AlgElement::from_expr(self.hopf.algebra(), h, &GeneratorsOnly)?;
        self.x_symbol(copy, &h).map(Some)
    }

    fn basis_index(&self, e: &Expr) -> Result<u32> {
        ParseContext::basis_index(&*self.hopf, e)
    }

    fn max_degree(&self) -> Option<usize> {
        self.max_degree
    }
}

/// Stable names for catalog identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityName {
    TaftPc,
    EnCi(u16),
    EnDij(u16, u16),
    CoinvP(String),
    CoinvQ(String, String),
    Standard(u32),
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityName::TaftPc => f.write_str("taft_pc"),
            IdentityName::EnCi(i) => write!(f, "en_ci:{i}"),
            IdentityName::EnDij(i, j) => write!(f, "en_dij:{i},{j}"),
            IdentityName::CoinvP(h) => write!(f, "coinv_P:{h}"),
            IdentityName::CoinvQ(h, k) => write!(f, "coinv_Q:{h},{k}"),
            IdentityName::Standard(m) => write!(f, "standard:{m}"),
        }
    }
}

impl std::str::FromStr for IdentityName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown identity `{s}`"));
        let num = |t: &str| t.trim().parse::<u16>().map_err(|_| bad());
        if s == "taft_pc" {
            return Ok(IdentityName::TaftPc);
        }
        let (head, arg) = s.split_once(':').ok_or_else(bad)?;
        match head {
            "en_ci" => Ok(IdentityName::EnCi(num(arg)?)),
            "en_dij" => {
                let (i, j) = arg.split_once(',').ok_or_else(bad)?;
                Ok(IdentityName::EnDij(num(i)?, num(j)?))
            }
            "coinv_P" => Ok(IdentityName::CoinvP(arg.trim().to_string())),
            "coinv_Q" => {
                let (h, k) = arg.split_once(',').ok_or_else(bad)?;
                Ok(IdentityName::CoinvQ(h.trim().to_string(), k.trim().to_string()))
            }
            "standard" => Ok(IdentityName::Standard(arg.trim().parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// `T(X_k)` over the trivial Hopf algebra with `m` copies: ordinary noncommutative polynomials.
pub fn classical(m: u32) -> Result<FreeComodule> {
    FreeComodule::new(&hopf::trivial(), m)
}

/// `S_m = Σ_{σ ∈ S_m} sgn(σ) X_{σ(1)} ⋯ X_{σ(m)}` in `T(X_k)` with `m` copies.
pub fn standard_polynomial(m: u32) -> Result<(FreeComodule, AlgElement)> {
    if m == 0 {
        return Err(Error::InvalidArgument("standard polynomials need m >= 1".into()));
    }
    if m > 10 {
        return Err(Error::BudgetExceeded(format!("{m}! terms")));
    }
    let t = classical(m)?;
    let terms = (0..m as GenId).permutations(m as usize).map(|p| {
        let inversions = p.iter().tuple_combinations().filter(|(a, b)| a > b).count();
        (Word::new(p), CommPoly::from_int(1, if inversions % 2 == 0 { 1 } else { -1 }))
    });
    let s = AlgElement::from_terms(t.algebra(), terms)?;
    Ok((t, s))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixIdentityReport {
    pub holds: bool,
    pub substitutions: usize,
    /// The first failing tuple of matrix units `(row, column)`, 1-based, and the nonzero value.
    pub witness: Option<(Vec<(usize, usize)>, String)>,
}

/// Checks `S_m` on `k × k` matrices by substituting every tuple of matrix units;
/// multilinearity makes this exhaustive.
pub fn verify_matrix_identity(m: u32, k: usize) -> Result<MatrixIdentityReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    let units = k * k;
    let subs = (units as u128).checked_pow(m).unwrap_or(u128::MAX);
    let terms = (1..=m as u128).product::<u128>();
    if subs.saturating_mul(terms) > MATRIX_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{subs} substitutions × {terms} terms exceeds {MATRIX_BUDGET}"
        )));
    }
    let (_, s) = standard_polynomial(m)?;
    let poly: Vec<(Vec<GenId>, BigRational)> = s
        .terms()
        .map(|(w, c)| {
            let v = c.as_constant().and_then(|c| c.as_rational()).expect("rational coefficients");
            (w.letters().to_vec(), v)
        })
        .collect();
    let tuple = |mut idx: usize| -> Vec<(usize, usize)> {
        // Lexicographic: the last variable varies fastest.
        let mut t = vec![(0, 0); m as usize];
        for slot in t.iter_mut().rev() {
            let u = idx % units;
            idx /= units;
            *slot = (u / k, u % k);
        }
        t
    };
    let evaluate = |t: &[(usize, usize)]| -> BTreeMap<(usize, usize), BigRational> {
        let mut out: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for (w, c) in &poly {
            // A product of matrix units is a matrix unit or zero.
            let (start, mut end) = t[w[0] as usize];
            let mut alive = true;
            for &g in &w[1..] {
                let (r, col) = t[g as usize];
                if r != end {
                    alive = false;
                    break;
                }
                end = col;
            }
            if alive {
                let e = out.entry((start, end)).or_insert_with(BigRational::zero);
                *e += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    let total = subs as usize;
    let witness = (0..total).into_par_iter().find_map_first(|idx| {
        let t = tuple(idx);
        let v = evaluate(&t);
        (!v.is_empty()).then(|| {
            let shown = v
                .iter()
                .map(|((i, j), c)| {
                    let unit = format!("E[{},{}]", i + 1, j + 1);
                    if c.is_one() {
                        unit
                    } else if (-c).is_one() {
                        format!("-{unit}")
                    } else {
                        format!("{c}*{unit}")
                    }
                })
                .join(" + ");
            (t.iter().map(|&(i, j)| (i + 1, j + 1)).collect(), shown)
        })
    });
    Ok(MatrixIdentityReport {
        holds: witness.is_none(),
        substitutions: total,
        witness,
    })
}

/// How the `a`-parameters of two objects compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AClass {
    /// `a' = v^n a` with `v` found explicitly (`v = 1` when equal).
    Equivalent(CyclotomicNumber),
    /// No root was found in the coefficient field; over its algebraic closure the classes agree.
    Undetermined,
    /// At least one `a` is symbolic.
    Symbolic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No catalog identity separates the objects; `c` (and `d`) agree.
    Isomorphic { a_class: AClass },
    /// An identity of one object whose image under the other's universal map is nonzero.
    DistinguishedBy {
        identity: String,
        /// Which object the identity belongs to: 0 for the first, 1 for the second.
        owner: usize,
        witness: AlgElement,
    },
}

fn compare_a(s1: &GaloisObjectSpec, s2: &GaloisObjectSpec, power: u32) -> AClass {
    let (ParamValue::Numeric(a1), ParamValue::Numeric(a2)) = (s1.value(ParamName::A), s2.value(ParamName::A)) else {
        return AClass::Symbolic;
    };
    if a1 == a2 {
        return AClass::Equivalent(CyclotomicNumber::one(a1.order()));
    }
    let ratio = a2.try_div(&a1).expect("nonzero a");
    ratio
        .as_rational()
        .and_then(|r| rational_root(&r, power))
        .map_or(AClass::Undetermined, |v| AClass::Equivalent(CyclotomicNumber::from_rational(a1.order(), v)))
}

/// Compares two Galois objects by their catalog identities.
///
/// Each object's identities are evaluated under the other's universal map;
/// the first nonzero image (in catalog order, first object's catalog first)
/// is returned as witness.
pub fn distinguish(a1: &ComoduleAlgebra, a2: &ComoduleAlgebra) -> Result<Verdict> {
    let fam = a1.spec().family();
    if fam != a2.spec().family() {
        return Err(Error::InvalidArgument(format!(
            "cannot compare objects over {fam} and {}",
            a2.spec().family()
        )));
    }
    let t = FreeComodule::new(a1.hopf(), 1)?;
    for (owner, (mine, other)) in [(a1, a2), (a2, a1)].into_iter().enumerate() {
        let catalog = t.catalog(mine.spec())?;
        let map = t.mu_map(other)?;
        let images: Vec<AlgElement> = catalog
            .par_iter()
            .map(|(_, p)| map.apply_memo(p))
            .collect::<Result<_>>()?;
        if let Some(((name, _), img)) = catalog.iter().zip(images).find(|(_, img)| !img.is_zero()) {
            return Ok(Verdict::DistinguishedBy {
                identity: name.to_string(),
                owner,
                witness: img,
            });
        }
    }
    let power = match fam {
        HopfFamily::Taft(n) => n,
        _ => 2,
    };
    Ok(Verdict::Isomorphic {
        a_class: compare_a(a1.spec(), a2.spec(), power),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::galois_object;

    fn taft_setup(n: u32) -> (FreeComodule, Arc<ComoduleAlgebra>) {
        let a = galois_object(&GaloisObjectSpec::taft(n)).unwrap();
        (FreeComodule::new(a.hopf(), CATALOG_COPIES).unwrap(), a)
    }

    #[test]
    fn symbols_and_parsing() {
        let (t, _) = taft_setup(2);
        assert_eq!(t.parse("E").unwrap().render(), "X[1,1]");
        assert_eq!(t.parse("X[1,x+y]").unwrap().render(), "X[1,x] + X[1,y]");
        assert_eq!(t.parse("X[1,x*y]").unwrap().render(), "X[1,x*y]");
        assert!(t.parse("X[2,0]").unwrap().is_zero());
        assert!(t.parse("X[0,x]").is_err());
        assert!(t.parse("X[3,x]").is_err());
        assert!(t.parse("Y1").is_err());
        let e = t.parse("E^2*X^2").unwrap();
        assert_eq!(e.render(), "X[1,1]^2*X[1,x]^2");
        assert_eq!(t.parse(&e.render()).unwrap(), e);
    }

    #[test]
    fn coaction_on_symbols() {
        let (t, _) = taft_setup(3);
        let th = t.tensor_with_hopf();
        let x = t.parse("X").unwrap();
        assert_eq!(t.t_coaction(&x).unwrap().render(), "X[1,x] ⊗ x");
        assert_eq!(t.t_coaction(&t.parse("E").unwrap()).unwrap(), t.parse("E").unwrap().embed_left(th).unwrap());
        assert_eq!(t.t_coaction(&t.parse("Y").unwrap()).unwrap().render(), "X[1,1] ⊗ y + X[1,y] ⊗ x");
        assert!(t.is_coinvariant(&t.parse("E").unwrap()).unwrap());
        assert!(!t.is_coinvariant(&x).unwrap());
    }

    #[test]
    fn mu_on_generators() {
        let (t, a) = taft_setup(3);
        let mu = |s: &str| t.mu(&t.parse(s).unwrap(), &a).unwrap().render();
        assert_eq!(mu("E"), "t[1,1]");
        assert_eq!(mu("X"), "t[1,x]*x");
        assert_eq!(mu("Y"), "t[1,y]*x + t[1,1]*y");
        assert_eq!(mu("Y*X - q*X*Y"), "(1 - z)*t[1,x]*t[1,y]*x^2");
        assert!(t.is_identity(&AlgElement::zero(t.algebra()), &a).unwrap());
    }

    #[test]
    fn taft_identity_vanishes() {
        for n in 2..=3 {
            let (t, a) = taft_setup(n);
            let p = t.taft_identity().unwrap();
            assert_eq!(p.degree(), 2 * n as usize);
            assert!(t.is_identity(&p, &a).unwrap());
        }
    }

    #[test]
    fn sweedler_form() {
        let (t, _) = taft_setup(2);
        let expected = t.parse("(X*Y+Y*X)^2 - 4*X^2*Y^2 + 4*c*E^2*X^2").unwrap();
        assert_eq!(t.taft_identity().unwrap(), expected);
    }

    #[test]
    fn en_catalog() {
        for (n, count) in [(1, 2), (2, 5), (3, 9)] {
            let a = galois_object(&GaloisObjectSpec::en(n)).unwrap();
            let t = FreeComodule::new(a.hopf(), 1).unwrap();
            let ids = t.en_identities(a.spec()).unwrap();
            assert_eq!(ids.len(), count);
            for (name, p) in &ids {
                assert_eq!(p.degree(), 4);
                assert!(t.is_identity(p, &a).unwrap(), "{name}");
            }
        }
        let a = galois_object(&GaloisObjectSpec::en(2)).unwrap();
        let t = FreeComodule::new(a.hopf(), 1).unwrap();
        let mu = |s: &str| t.mu(&t.parse(s).unwrap(), &a).unwrap().render();
        assert_eq!(mu("X*Y1 + Y1*X"), "2*a*t[1,x]*t[1,y1]");
        assert_eq!(mu("Y1*Y2 + Y2*Y1"), "2*a*t[1,y1]*t[1,y2] + d[1,2]*t[1,1]^2");
    }

    #[test]
    fn coinvariant_elements() {
        let (t, a) = taft_setup(2);
        let h = t.hopf().clone();
        let e = t.parse("E").unwrap();
        assert_eq!(t.coinvariant_p(&AlgElement::one(h.algebra())).unwrap(), &e * &e);
        let y = h.parse("y").unwrap();
        let x = h.parse("x").unwrap();
        assert!(t.is_coinvariant(&t.coinvariant_p(&y).unwrap()).unwrap());
        assert!(t.is_coinvariant(&t.coinvariant_q(&x, &y).unwrap()).unwrap());
        let c = t.commutator_identity(&t.coinvariant_p(&y).unwrap(), &x).unwrap();
        assert!(t.is_identity(&c, &a).unwrap());
    }

    #[test]
    fn identity_names() {
        for s in ["taft_pc", "en_ci:2", "en_dij:1,2", "coinv_P:x*y", "coinv_Q:x,y", "standard:4"] {
            assert_eq!(s.parse::<IdentityName>().unwrap().to_string(), s);
        }
        assert!("en_ci".parse::<IdentityName>().is_err());
        assert!("bogus:1".parse::<IdentityName>().is_err());
    }

    #[test]
    fn standard_polynomials() {
        let (_, s2) = standard_polynomial(2).unwrap();
        assert_eq!(s2.render(), "X[1,1]*X[2,1] - X[2,1]*X[1,1]");
        assert_eq!(standard_polynomial(3).unwrap().1.len(), 6);
        assert_eq!(standard_polynomial(4).unwrap().1.len(), 24);
    }

    #[test]
    fn amitsur_levitzki() {
        let r = verify_matrix_identity(4, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.substitutions, 256);
        let r = verify_matrix_identity(2, 2).unwrap();
        assert!(!r.holds);
        assert!(!verify_matrix_identity(3, 2).unwrap().holds);
        assert!(!verify_matrix_identity(1, 1).unwrap().holds);
        assert!(matches!(verify_matrix_identity(8, 4), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn distinguishing() {
        let s1 = GaloisObjectSpec::taft(2).with_int(ParamName::A, 1);
        let s2 = GaloisObjectSpec::taft(2).with_int(ParamName::A, 1).primed(1);
        let v = distinguish(&galois_object(&s1).unwrap(), &galois_object(&s2).unwrap()).unwrap();
        let Verdict::DistinguishedBy { identity, owner, witness } = v else { panic!("{v:?}") };
        assert_eq!(identity, "taft_pc");
        assert_eq!(owner, 0);
        assert_eq!(witness.render(), "4*c*t[1,1]^2*t[1,x]^2 - 4*c'*t[1,1]^2*t[1,x]^2");

        let five = GaloisObjectSpec::taft(3).with_int(ParamName::A, 1).with_int(ParamName::C, 5);
        let a = galois_object(&five).unwrap();
        assert_eq!(
            distinguish(&a, &a).unwrap(),
            Verdict::Isomorphic {
                a_class: AClass::Equivalent(CyclotomicNumber::one(3))
            }
        );
        let eight = five.clone().with_int(ParamName::A, 8);
        let v = distinguish(&a, &galois_object(&eight).unwrap()).unwrap();
        assert_eq!(
            v,
            Verdict::Isomorphic {
                a_class: AClass::Equivalent(CyclotomicNumber::from_int(3, 2))
            }
        );
    }
}
