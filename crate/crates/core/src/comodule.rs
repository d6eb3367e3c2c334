//! Galois objects: `A_{a,c}` over the Taft algebra and `A(a, c, d)` over `E(n)`.
//!
//! Objects are built from their presentations. The coaction has the same
//! generator formulas as the coproduct, and the section `u` sends each
//! normal word of `H` to the same word in `A`, since both algebras share
//! their leading words and therefore their normal bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::commpoly::{CommPoly, Param, ParamName};
use crate::error::{Error, Result};
use crate::exactnum::CyclotomicNumber;
use crate::hopf::{self, HopfFamily, HopfPresentation, MAX_DIMENSION};
use crate::linalg::Matrix;
use crate::ncalg::{AlgElement, GenId, GeneratorMap, PresentedAlgebra, RewriteRule, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Symbolic,
    Numeric(CyclotomicNumber),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Symbolic => f.write_str("sym"),
            ParamValue::Numeric(v) => write!(f, "{v}"),
        }
    }
}

/// Family plus parameter values; unset parameters are symbolic.
///
/// `primes` decorates every symbolic parameter, so two objects with
/// independent symbols (`c` versus `c'`) can be compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisObjectSpec {
    family: HopfFamily,
    values: BTreeMap<ParamName, ParamValue>,
    primes: u8,
}

impl GaloisObjectSpec {
    pub fn new(family: HopfFamily) -> Self {
        GaloisObjectSpec {
            family,
            values: BTreeMap::new(),
            primes: 0,
        }
    }

    pub fn taft(n: u32) -> Self {
        Self::new(HopfFamily::Taft(n))
    }

    pub fn en(n: u32) -> Self {
        Self::new(HopfFamily::En(n))
    }

    pub fn family(&self) -> HopfFamily {
        self.family
    }

    pub fn primes(&self) -> u8 {
        self.primes
    }

    pub fn order(&self) -> u32 {
        match self.family {
            HopfFamily::Taft(n) => n,
            HopfFamily::En(_) => 2,
            HopfFamily::Trivial => 1,
        }
    }

    pub fn with(mut self, name: ParamName, value: ParamValue) -> Self {
        self.values.insert(name, value);
        self
    }

    pub fn with_int(self, name: ParamName, v: i64) -> Self {
        let order = self.order();
        self.with(name, ParamValue::Numeric(CyclotomicNumber::from_int(order, v)))
    }

    pub fn primed(mut self, primes: u8) -> Self {
        self.primes = primes;
        self
    }

    /// Free parameters of the family, in canonical order.
    pub fn parameter_names(&self) -> Vec<ParamName> {
        match self.family {
            HopfFamily::Taft(_) => vec![ParamName::A, ParamName::C],
            HopfFamily::En(n) => {
                let n = n as u16;
                let mut v = vec![ParamName::A];
                v.extend((1..=n).map(ParamName::Ci));
                for i in 1..=n {
                    v.extend((i + 1..=n).map(|j| ParamName::D(i, j)));
                }
                v
            }
            HopfFamily::Trivial => Vec::new(),
        }
    }

    pub fn value(&self, name: ParamName) -> ParamValue {
        self.values.get(&name).cloned().unwrap_or(ParamValue::Symbolic)
    }

    pub fn is_numeric(&self) -> bool {
        self.parameter_names()
            .into_iter()
            .all(|p| matches!(self.value(p), ParamValue::Numeric(_)))
    }

    /// The parameter as a polynomial: a constant, or its (primed) symbol.
    ///
    /// The diagonal `d[i,i]` is not free: `u_i u_i + u_i u_i = d[i,i]` and
    /// `u_i² = c[i]` force `d[i,i] = 2 c[i]`.
    pub fn value_poly(&self, name: ParamName) -> CommPoly {
        let order = self.order();
        if let ParamName::D(i, j) = name {
            if i == j {
                return self.value_poly(ParamName::Ci(i)).scale(&CyclotomicNumber::from_int(order, 2));
            }
        }
        match self.value(name) {
            ParamValue::Numeric(v) => CommPoly::constant(v),
            ParamValue::Symbolic => CommPoly::param(order, Param::new(name).primed(self.primes)),
        }
    }

    fn validate(&self) -> Result<()> {
        let allowed = self.parameter_names();
        for (name, value) in &self.values {
            if !allowed.contains(name) {
                let what = match name {
                    ParamName::D(i, j) if i == j => format!("d[{i},{i}] is determined by c[{i}] (it equals 2*c[{i}])"),
                    _ => format!("parameter {} does not belong to {}", Param::new(*name), self.family),
                };
                return Err(Error::InvalidArgument(what));
            }
            if let ParamValue::Numeric(v) = value {
                if v.order() != self.order() {
                    return Err(Error::OrderMismatch(self.order(), v.order()));
                }
            }
        }
        if let ParamValue::Numeric(a) = self.value(ParamName::A) {
            if a.is_zero() {
                return Err(Error::InvalidArgument("the parameter a must be nonzero".into()));
            }
        }
        Ok(())
    }

    /// Parses `taft:3;a=1;c=sym` or `en:2;a=1;c1=0;c2=1;d12=sym`.
    ///
    /// Parameter names may also be written `c[1]` and `d[1,2]`; values are
    /// `sym` or cyclotomic literals such as `-1` or `1+z^2`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut parts = src.split(';');
        let family: HopfFamily = parts.next().unwrap_or("").parse()?;
        let mut spec = GaloisObjectSpec::new(family);
        for part in parts {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected name=value, found `{part}`")))?;
            let name = parse_param_name(k.trim())?;
            let value = match v.trim() {
                "sym" => ParamValue::Symbolic,
                lit => ParamValue::Numeric(CyclotomicNumber::parse(spec.order(), lit)?),
            };
            if spec.values.insert(name, value).is_some() {
                return Err(Error::InvalidArgument(format!("parameter `{k}` given twice")));
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_param_name(s: &str) -> Result<ParamName> {
    let bad = || Error::InvalidArgument(format!("unknown parameter `{s}`"));
    let idx = |t: &str| t.trim().parse::<u16>().map_err(|_| bad());
    match s {
        "a" => return Ok(ParamName::A),
        "c" => return Ok(ParamName::C),
        _ if s.is_empty() || !s.is_ascii() => return Err(bad()),
        _ => {}
    }
    let (head, rest) = s.split_at(1);
    let rest = rest.trim();
    let args: Vec<&str> = if let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        inner.split(',').collect()
    } else if head == "d" && rest.len() == 2 {
        vec![&rest[..1], &rest[1..]]
    } else {
        vec![rest]
    };
    match (head, args.as_slice()) {
        ("c", [i]) => Ok(ParamName::Ci(idx(i)?)),
        ("d", [i, j]) => Ok(ParamName::d(idx(i)?, idx(j)?)),
        _ => Err(bad()),
    }
}

impl fmt::Display for GaloisObjectSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for name in self.parameter_names() {
            let key = match name {
                ParamName::A => "a".to_string(),
                ParamName::C => "c".to_string(),
                ParamName::Ci(i) => format!("c{i}"),
                ParamName::D(i, j) => format!("d{i}{j}"),
            };
            write!(f, ";{key}={}", self.value(name))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GaloisObjectSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub struct ComoduleAlgebra {
    spec: GaloisObjectSpec,
    hopf: Arc<HopfPresentation>,
    algebra: Arc<PresentedAlgebra>,
    a_tensor_h: Arc<PresentedAlgebra>,
    a_tensor_hh: OnceLock<Arc<PresentedAlgebra>>,
    coaction: GeneratorMap,
    section: Vec<AlgElement>,
}

impl fmt::Debug for ComoduleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComoduleAlgebra({})", self.spec)
    }
}

/// Builds the Galois object described by `spec`.
pub fn galois_object(spec: &GaloisObjectSpec) -> Result<Arc<ComoduleAlgebra>> {
    spec.validate()?;
    let h = hopf::hopf(spec.family)?;
    let order = h.order();
    let a = spec.value_poly(ParamName::A);
    let (name, gens, rules) = match spec.family {
        HopfFamily::Taft(n) => {
            let q = CommPoly::constant(h.q().clone());
            let rules = vec![
                RewriteRule::new(Word::new(vec![1, 0]), vec![(Word::new(vec![0, 1]), q)]),
                RewriteRule::new(Word::letter(0).pow(n as usize), vec![(Word::empty(), a)]),
                RewriteRule::new(Word::letter(1).pow(n as usize), vec![(Word::empty(), spec.value_poly(ParamName::C))]),
            ];
            (format!("A({})", spec), vec!["x".to_string(), "y".to_string()], rules)
        }
        HopfFamily::En(n) => {
            let minus = CommPoly::from_int(order, -1);
            let mut gens = vec!["u".to_string()];
            gens.extend((1..=n).map(|i| format!("u{i}")));
            let mut rules = vec![RewriteRule::new(Word::new(vec![0, 0]), vec![(Word::empty(), a)])];
            for i in 1..=n as GenId {
                let ci = spec.value_poly(ParamName::Ci(i));
                rules.push(RewriteRule::new(Word::new(vec![i, i]), vec![(Word::empty(), ci)]));
                rules.push(RewriteRule::new(Word::new(vec![i, 0]), vec![(Word::new(vec![0, i]), minus.clone())]));
                for j in i + 1..=n as GenId {
                    let dij = spec.value_poly(ParamName::D(i, j));
                    rules.push(RewriteRule::new(
                        Word::new(vec![j, i]),
                        vec![(Word::new(vec![i, j]), minus.clone()), (Word::empty(), dij)],
                    ));
                }
            }
            (format!("A({})", spec), gens, rules)
        }
        HopfFamily::Trivial => {
            return Err(Error::InvalidArgument("no Galois objects are built over the trivial Hopf algebra".into()))
        }
    };
    let algebra =
        PresentedAlgebra::new_confluent(name, gens, rules, order)?.with_basis_names(h.basis_names().clone());
    let a_tensor_h = PresentedAlgebra::tensor(&algebra, h.algebra())?;

    // Same formulas as the coproduct: A⊗H and H⊗H share their generator layout.
    let images = h
        .coproduct_on_generators()
        .iter()
        .map(|d| d.relabel(&a_tensor_h, &|g| g))
        .collect::<Result<Vec<_>>>()?;
    let section = h
        .basis()
        .iter()
        .map(|w| AlgElement::from_word(&algebra, w.clone(), CommPoly::one(order)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(ComoduleAlgebra {
        spec: spec.clone(),
        coaction: GeneratorMap::new(&a_tensor_h, images),
        hopf: h,
        algebra,
        a_tensor_h,
        a_tensor_hh: OnceLock::new(),
        section,
    }))
}

impl ComoduleAlgebra {
    pub fn spec(&self) -> &GaloisObjectSpec {
        &self.spec
    }

    pub fn hopf(&self) -> &Arc<HopfPresentation> {
        &self.hopf
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    /// The presentation of `A ⊗ H`.
    pub fn tensor_with_hopf(&self) -> &Arc<PresentedAlgebra> {
        &self.a_tensor_h
    }

    fn tensor_cube(&self) -> &Arc<PresentedAlgebra> {
        self.a_tensor_hh.get_or_init(|| {
            PresentedAlgebra::tensor(&self.a_tensor_h, self.hopf.algebra()).expect("valid tensor presentation")
        })
    }

    pub fn order(&self) -> u32 {
        self.algebra.order()
    }

    /// Parses an element of `A`; coefficients may use `t[i,h]` with `h` a basis element of `H`.
    pub fn parse(&self, src: &str) -> Result<AlgElement> {
        AlgElement::parse_with(&self.algebra, src, &*self.hopf)
    }

    fn check_member(&self, e: &AlgElement) -> Result<()> {
        if e.algebra().same_as(&self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(e.algebra().name().to_string(), self.algebra.name().to_string()))
        }
    }

    pub fn coaction(&self, e: &AlgElement) -> Result<AlgElement> {
        self.check_member(e)?;
        self.coaction.apply(e)
    }

    pub fn coaction_word(&self, w: &Word) -> Result<AlgElement> {
        self.coaction.apply_word(w)
    }

    /// `u_{x_r}` for the `r`-th basis element of `H`.
    pub fn section(&self, r: usize) -> &AlgElement {
        &self.section[r]
    }

    /// `u` applied to a word of `H` (reduced in `H` first, then mapped linearly).
    pub fn section_word(&self, w: &Word) -> Result<AlgElement> {
        let h = AlgElement::normal_form(self.hopf.algebra(), w)?;
        self.section_of(&h)
    }

    pub fn section_of(&self, h: &AlgElement) -> Result<AlgElement> {
        if !h.algebra().same_as(self.hopf.algebra()) {
            return Err(Error::AlgebraMismatch(h.algebra().name().to_string(), self.hopf.algebra().name().to_string()));
        }
        let mut acc = AlgElement::zero(&self.algebra);
        for (w, c) in h.terms() {
            let r = self.hopf.basis_index(w).expect("normal words are basis words");
            acc = acc.try_add(&self.section[r].scale(c))?;
        }
        Ok(acc)
    }

    fn word(&self, w: &Word) -> Result<AlgElement> {
        AlgElement::from_word(&self.algebra, w.clone(), CommPoly::one(self.order()))
    }

    fn hword(&self, w: &Word) -> Result<AlgElement> {
        AlgElement::from_word(self.hopf.algebra(), w.clone(), CommPoly::one(self.order()))
    }

    /// Checks that δ respects the relations, is coassociative and counital,
    /// and that `u` is colinear.
    pub fn check_comodule_axioms(&self) -> ComoduleAxiomReport {
        let k = self.algebra.generators().len() as GenId;
        let aht = &self.a_tensor_h;
        let ahh = self.tensor_cube();
        let h = &self.hopf;
        let mut failures = Vec::new();

        for rule in self.algebra.rules() {
            let ok = (|| -> Result<bool> {
                let lhs = self.coaction_word(&rule.lhs)?;
                let mut rhs = AlgElement::zero(aht);
                for (w, c) in &rule.rhs {
                    rhs = rhs.try_add(&self.coaction_word(w)?.scale(c))?;
                }
                Ok(lhs == rhs)
            })();
            if !ok.unwrap_or(false) {
                failures.push((ComoduleAxiom::Relation, self.algebra.render_word(&rule.lhs)));
            }
        }

        let per_basis: Vec<Vec<(ComoduleAxiom, String)>> = h
            .basis()
            .par_iter()
            .map(|b| {
                let mut out = Vec::new();
                let run = || -> Result<Vec<ComoduleAxiom>> {
                    let mut bad = Vec::new();
                    let d = self.coaction_word(b)?;
                    let lhs = d.map_tensor(
                        ahh,
                        &|l| self.coaction_word(l)?.relabel(ahh, &|g| g),
                        &|r| self.hword(r)?.relabel(ahh, &|g| g + 2 * k),
                    )?;
                    let rhs = d.map_tensor(
                        ahh,
                        &|l| self.word(l)?.relabel(ahh, &|g| g),
                        &|r| h.coproduct_word(r)?.relabel(ahh, &|g| g + k),
                    )?;
                    if lhs != rhs {
                        bad.push(ComoduleAxiom::Coassociativity);
                    }
                    let counit = d.map_tensor(
                        &self.algebra,
                        &|l| self.word(l),
                        &|r| Ok(AlgElement::scalar(&self.algebra, h.counit(&self.hword(r)?)?)),
                    )?;
                    if counit != self.word(b)? {
                        bad.push(ComoduleAxiom::Counit);
                    }
                    let r = h.basis_index(b).expect("basis word");
                    let colinear = h.coproduct_word(b)?.map_tensor(
                        aht,
                        &|l| self.section_word(l)?.embed_left(aht),
                        &|r| self.hword(r)?.embed_right(aht),
                    )?;
                    if self.coaction(&self.section[r])? != colinear {
                        bad.push(ComoduleAxiom::SectionColinear);
                    }
                    Ok(bad)
                };
                let name = self.algebra.render_word(b);
                match run() {
                    Ok(bad) => out.extend(bad.into_iter().map(|a| (a, name.clone()))),
                    Err(_) => out.push((ComoduleAxiom::Evaluation, name)),
                }
                out
            })
            .collect();
        failures.extend(per_basis.into_iter().flatten());
        ComoduleAxiomReport { failures }
    }

    fn require_numeric(&self) -> Result<()> {
        if self.spec.is_numeric() {
            Ok(())
        } else {
            Err(Error::SymbolicParameter(format!(
                "{} has symbolic parameters; exact linear algebra needs numeric values",
                self.spec
            )))
        }
    }

    /// Index of each normal word of `A ⊗ H`, in the product basis order.
    fn tensor_basis_index(&self) -> HashMap<Word, usize> {
        let k = self.algebra.generators().len() as GenId;
        let basis = self.hopf.basis();
        let mut idx = HashMap::new();
        for l in basis {
            for r in basis {
                let shifted = Word::new(r.letters().iter().map(|&g| g + k).collect());
                idx.insert(l.concat(&shifted), idx.len());
            }
        }
        idx
    }

    fn coordinates(&self, e: &AlgElement, index: &HashMap<Word, usize>) -> Result<Vec<(usize, CyclotomicNumber)>> {
        e.terms()
            .map(|(w, c)| {
                let row = *index.get(w).expect("normal words of A ⊗ H are product basis words");
                let v = c.as_constant().ok_or_else(|| Error::SymbolicParameter(c.to_string()))?;
                Ok((row, v))
            })
            .collect()
    }

    /// A basis of `A^H = { a | δ(a) = a ⊗ 1 }`; numeric parameters only.
    pub fn coinvariants(&self) -> Result<Vec<AlgElement>> {
        self.require_numeric()?;
        let index = self.tensor_basis_index();
        let dim = self.hopf.dimension();
        let columns = (0..dim)
            .into_par_iter()
            .map(|r| {
                let b = &self.section[r];
                let diff = self.coaction(b)?.try_sub(&b.embed_left(&self.a_tensor_h)?)?;
                self.coordinates(&diff, &index)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(self.order(), index.len(), &columns);
        m.kernel()
            .into_iter()
            .map(|v| {
                let mut acc = AlgElement::zero(&self.algebra);
                for (r, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.try_add(&self.section[r].scale(&CommPoly::constant(c)))?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// Whether `β : A ⊗ A → A ⊗ H, a ⊗ a' ↦ (a ⊗ 1) δ(a')` is bijective; numeric parameters only.
    pub fn galois_map_bijective(&self) -> Result<bool> {
        self.require_numeric()?;
        let index = self.tensor_basis_index();
        let dim = self.hopf.dimension();
        if dim * dim > MAX_DIMENSION {
            return Err(Error::BudgetExceeded(format!("β matrix of size {}", dim * dim)));
        }
        let deltas: Vec<AlgElement> = self.section.iter().map(|b| self.coaction(b)).collect::<Result<_>>()?;
        let lefts: Vec<AlgElement> = self
            .section
            .iter()
            .map(|b| b.embed_left(&self.a_tensor_h))
            .collect::<Result<_>>()?;
        let columns = (0..dim * dim)
            .into_par_iter()
            .map(|col| {
                let (r, s) = (col / dim, col % dim);
                let img = lefts[r].try_mul(&deltas[s])?;
                self.coordinates(&img, &index)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(self.order(), index.len(), &columns);
        Ok(m.rank() == dim * dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComoduleAxiom {
    Relation,
    Coassociativity,
    Counit,
    SectionColinear,
    Evaluation,
}

impl fmt::Display for ComoduleAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComoduleAxiom::Relation => "coaction respects relation",
            ComoduleAxiom::Coassociativity => "coaction coassociativity",
            ComoduleAxiom::Counit => "coaction counit law",
            ComoduleAxiom::SectionColinear => "section is colinear",
            ComoduleAxiom::Evaluation => "evaluation",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct ComoduleAxiomReport {
    pub failures: Vec<(ComoduleAxiom, String)>,
}

impl ComoduleAxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
