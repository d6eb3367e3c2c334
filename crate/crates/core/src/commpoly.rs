//! Sparse commutative polynomials over `Q(ζ_n)`.
//!
//! Variables are either structure parameters (`a`, `c`, `c[i]`, `d[i,j]`, each
//! optionally primed to tell two objects apart) or the `t`-symbols `t[i,r]`
//! indexed by a copy index and an H-basis index.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{BigRational, CyclotomicNumber};
use crate::expr::{self, Expr, Ident, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamName {
    A,
    C,
    Ci(u16),
    /// Off-diagonal or diagonal entry of the symmetric matrix `d`; always stored with `i <= j`.
    D(u16, u16),
}

impl ParamName {
    pub fn d(i: u16, j: u16) -> Self {
        ParamName::D(i.min(j), i.max(j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    pub name: ParamName,
    pub primes: u8,
}

impl Param {
    pub fn new(name: ParamName) -> Self {
        Param { name, primes: 0 }
    }

    pub fn primed(self, primes: u8) -> Self {
        Param { primes, ..self }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            ParamName::A => f.write_str("a")?,
            ParamName::C => f.write_str("c")?,
            ParamName::Ci(i) => write!(f, "c[{i}]")?,
            ParamName::D(i, j) => write!(f, "d[{i},{j}]")?,
        }
        for _ in 0..self.primes {
            f.write_char('\'')?;
        }
        Ok(())
    }
}

/// Parameters sort before `t`-variables; `t`-variables by `(copy, basis)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    Param(Param),
    T { copy: u32, basis: u32 },
}

impl VariableId {
    pub fn param(name: ParamName) -> Self {
        VariableId::Param(Param::new(name))
    }

    pub fn t(copy: u32, basis: u32) -> Self {
        VariableId::T { copy, basis }
    }

    fn render(&self, basis_names: Option<&[String]>) -> String {
        match self {
            VariableId::Param(p) => p.to_string(),
            VariableId::T { copy, basis } => match basis_names.and_then(|n| n.get(*basis as usize)) {
                Some(name) => format!("t[{copy},{name}]"),
                None => format!("t[{copy},{basis}]"),
            },
        }
    }
}

/// A monomial: variables with positive exponents, sorted by variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommMonomial(Vec<(VariableId, u32)>);

impl CommMonomial {
    pub fn one() -> Self {
        CommMonomial(Vec::new())
    }

    pub fn var(v: VariableId) -> Self {
        CommMonomial(vec![(v, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(VariableId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn exponent(&self, v: VariableId) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map_or(0, |i| self.0[i].1)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a.1.checked_add(b.1).ok_or(Error::ExponentOverflow)?;
                    out.push((a.0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Ok(CommMonomial(out))
    }

    fn render(&self, basis_names: Option<&[String]>) -> String {
        self.0
            .iter()
            .map(|(v, e)| match e {
                1 => v.render(basis_names),
                _ => format!("{}^{e}", v.render(basis_names)),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A sparse polynomial in [`VariableId`]s with coefficients in `Q(ζ_n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommPoly {
    order: u32,
    terms: BTreeMap<CommMonomial, CyclotomicNumber>,
}

impl CommPoly {
    pub fn zero(order: u32) -> Self {
        CommPoly {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(CyclotomicNumber::one(order))
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        Self::constant(CyclotomicNumber::from_int(order, v))
    }

    pub fn constant(c: CyclotomicNumber) -> Self {
        Self::term(CommMonomial::one(), c)
    }

    pub fn term(m: CommMonomial, c: CyclotomicNumber) -> Self {
        let order = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CommPoly { order, terms }
    }

    pub fn var(order: u32, v: VariableId) -> Self {
        Self::term(CommMonomial::var(v), CyclotomicNumber::one(order))
    }

    pub fn param(order: u32, p: Param) -> Self {
        Self::var(order, VariableId::Param(p))
    }

    pub fn t(order: u32, copy: u32, basis: u32) -> Self {
        Self::var(order, VariableId::t(copy, basis))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CommMonomial, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &CommMonomial) -> CyclotomicNumber {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CyclotomicNumber::zero(self.order))
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<CyclotomicNumber> {
        match self.terms.len() {
            0 => Some(CyclotomicNumber::zero(self.order)),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// All variables occurring with nonzero exponent, sorted.
    pub fn variables(&self) -> Vec<VariableId> {
        let mut vs: Vec<_> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn has_t_variables(&self) -> bool {
        self.variables().iter().any(|v| matches!(v, VariableId::T { .. }))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    fn add_term(&mut self, m: CommMonomial, c: CyclotomicNumber) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = CommPoly::zero(self.order);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.try_mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CyclotomicNumber) -> Self {
        assert_eq!(self.order, s.order(), "cyclotomic order mismatch");
        if s.is_zero() {
            return CommPoly::zero(self.order);
        }
        CommPoly {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = CommPoly::one(self.order);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Replaces each variable for which `f` returns a value; other variables stay symbolic.
    pub fn substitute(&self, f: &dyn Fn(VariableId) -> Option<CommPoly>) -> Self {
        let mut cache: HashMap<VariableId, Option<CommPoly>> = HashMap::new();
        let mut out = CommPoly::zero(self.order);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = CommPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                let image = cache.entry(v).or_insert_with(|| f(v));
                match image {
                    Some(p) => factor = &factor * &p.pow(e).expect("exponent overflow"),
                    None => kept.push((v, e)),
                }
            }
            for (mm, cc) in (&factor * &CommPoly::term(CommMonomial(kept), CyclotomicNumber::one(self.order))).terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Evaluates the given parameters, leaving `t`-variables and unassigned parameters symbolic.
    pub fn specialize(&self, assignment: &HashMap<Param, CyclotomicNumber>) -> Self {
        self.substitute(&|v| match v {
            VariableId::Param(p) => assignment.get(&p).cloned().map(CommPoly::constant),
            VariableId::T { .. } => None,
        })
    }

    /// Highest `t`-degree among the terms.
    pub fn t_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| {
                m.factors()
                    .iter()
                    .filter(|(v, _)| matches!(v, VariableId::T { .. }))
                    .map(|(_, e)| *e as u64)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self, basis_names: Option<&[String]>) -> String {
        let mut out = String::new();
        if self.terms.is_empty() {
            return "0".to_string();
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = (!m.is_one()).then(|| m.render(basis_names));
            write_term(&mut out, c, mono.as_deref(), i == 0);
        }
        out
    }

    /// Renders the polynomial as a factor in front of `rest`, adding parentheses when needed.
    /// Returns the sign separately so callers can join terms with ` + ` / ` - `.
    pub(crate) fn render_factor(&self, basis_names: Option<&[String]>) -> (bool, Option<String>) {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if !c.is_compound() {
                // A single ζ-power times a rational.
                let (k, r) = c
                    .coeffs()
                    .iter()
                    .enumerate()
                    .find(|(_, r)| !r.is_zero())
                    .expect("nonzero coefficient");
                let neg = r.is_negative();
                let abs = r.abs();
                let mut parts = Vec::new();
                if !abs.is_one() {
                    parts.push(abs.to_string());
                }
                match k {
                    0 => {}
                    1 => parts.push("z".to_string()),
                    _ => parts.push(format!("z^{k}")),
                }
                if !m.is_one() {
                    parts.push(m.render(basis_names));
                }
                return (neg, (!parts.is_empty()).then(|| parts.join("*")));
            }
            return if m.is_one() {
                (false, Some(format!("({c})")))
            } else {
                (false, Some(format!("({c})*{}", m.render(basis_names))))
            };
        }
        (false, Some(format!("({})", self.render(basis_names))))
    }

    /// Parses the textual polynomial grammar.
    ///
    /// `t[i,r]` requires `r` to be resolved to an H-basis index by `basis`;
    /// a bare integer is taken as the index itself.
    pub fn parse(order: u32, src: &str, basis: Option<&dyn Fn(&Expr) -> Result<u32>>) -> Result<Self> {
        let e = expr::parse(src)?;
        Self::from_expr(order, &e, basis)
    }

    pub fn from_expr(order: u32, e: &Expr, basis: Option<&dyn Fn(&Expr) -> Result<u32>>) -> Result<Self> {
        let rec = |x: &Expr| Self::from_expr(order, x, basis);
        Ok(match e {
            Expr::Int(v) => CommPoly::constant(CyclotomicNumber::from_rational(order, BigRational::from_integer(v.clone()))),
            Expr::Ident(id) => match parse_symbol(id, basis)? {
                Some(v) => CommPoly::var(order, v),
                None => CommPoly::constant(CyclotomicNumber::primitive_root(order)),
            },
            Expr::Neg(a) => -rec(a)?,
            Expr::Add(a, b) => rec(a)?.try_add(&rec(b)?)?,
            Expr::Sub(a, b) => rec(a)?.try_sub(&rec(b)?)?,
            Expr::Mul(a, b) => rec(a)?.try_mul(&rec(b)?)?,
            Expr::Div(a, b) => {
                let d = rec(b)?
                    .as_constant()
                    .ok_or_else(|| Error::InvalidArgument("division by a non-constant polynomial".into()))?;
                rec(a)?.scale(&d.inverse()?)
            }
            Expr::Pow(a, k) => rec(a)?.pow(*k)?,
        })
    }
}

fn small_index(e: &Expr, what: &str, pos: usize) -> Result<u16> {
    e.as_int()
        .and_then(|v| v.to_u16())
        .filter(|&v| v >= 1)
        .ok_or_else(|| ParseError::new(pos, format!("a positive {what} index"), format!("{e:?}")).into())
}

/// Resolves a coefficient symbol. `Ok(None)` means the root of unity `q`/`z`.
pub(crate) fn parse_symbol(id: &Ident, basis: Option<&dyn Fn(&Expr) -> Result<u32>>) -> Result<Option<VariableId>> {
    let p = |name| Ok(Some(VariableId::Param(Param { name, primes: id.primes })));
    match (id.name.as_str(), id.args.len()) {
        ("q" | "z", 0) if id.primes == 0 => Ok(None),
        ("a", 0) => p(ParamName::A),
        ("c", 0) => p(ParamName::C),
        ("c", 1) => p(ParamName::Ci(small_index(&id.args[0], "parameter", id.pos)?)),
        ("d", 2) => p(ParamName::d(
            small_index(&id.args[0], "parameter", id.pos)?,
            small_index(&id.args[1], "parameter", id.pos)?,
        )),
        ("t", 2) if id.primes == 0 => {
            let copy = small_index(&id.args[0], "copy", id.pos)? as u32;
            let r = match basis {
                Some(f) => f(&id.args[1])?,
                None => numeric_basis_index(&id.args[1], id.pos)?,
            };
            Ok(Some(VariableId::t(copy, r)))
        }
        _ => Err(ParseError::new(id.pos, "a coefficient symbol (q, z, a, c, c[i], d[i,j], t[i,r])", format!("`{}`", id.name)).into()),
    }
}

/// A literal basis index, used when no Hopf algebra is around to name basis elements.
pub(crate) fn numeric_basis_index(e: &Expr, pos: usize) -> Result<u32> {
    match e.as_int() {
        Some(v) => v
            .to_u32()
            .ok_or_else(|| ParseError::new(pos, "a basis index", v.to_string()).into()),
        None => Err(ParseError::new(pos, "a numeric basis index", "a basis word").into()),
    }
}

pub(crate) fn write_term(out: &mut String, c: &CyclotomicNumber, mono: Option<&str>, first: bool) {
    match c.as_rational() {
        Some(r) => {
            let neg = r.is_negative();
            let abs = r.abs();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match mono {
                None => {
                    let _ = write!(out, "{abs}");
                }
                Some(m) if abs.is_one() => out.push_str(m),
                Some(m) => {
                    let _ = write!(out, "{abs}*{m}");
                }
            }
        }
        None => {
            if !first {
                out.push_str(" + ");
            }
            let body = if c.is_compound() { format!("({c})") } else { c.to_string() };
            match mono {
                None => out.push_str(&body),
                Some(m) => {
                    let _ = write!(out, "{body}*{m}");
                }
            }
        }
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly[Q(z{})]({})", self.order, self.render(None))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CommPoly> for &CommPoly {
            type Output = CommPoly;
            fn $method(self, rhs: &CommPoly) -> CommPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CommPoly> for CommPoly {
            type Output = CommPoly;
            fn $method(self, rhs: CommPoly) -> CommPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        CommPoly {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pa(name: ParamName) -> CommPoly {
        CommPoly::param(2, Param::new(name))
    }

    #[test]
    fn arithmetic_examples() {
        let tx = CommPoly::t(2, 1, 1);
        let ty = CommPoly::t(2, 1, 2);
        assert_eq!((&tx * &ty).to_string(), "t[1,1]*t[1,2]");
        let t1 = CommPoly::t(2, 1, 0);
        assert_eq!(t1.pow(2).unwrap().to_string(), "t[1,0]^2");
        // (c - c')(1 - q)^2 at n = 2 is 4c - 4c'.
        let c = pa(ParamName::C);
        let cp = CommPoly::param(2, Param::new(ParamName::C).primed(1));
        let one_minus_q = CommPoly::one(2) - CommPoly::constant(CyclotomicNumber::primitive_root(2));
        let lhs = (&c - &cp) * one_minus_q.pow(2).unwrap();
        assert_eq!(lhs, CommPoly::from_int(2, 4) * c.clone() - CommPoly::from_int(2, 4) * cp.clone());
        assert_eq!(lhs.to_string(), "4*c - 4*c'");
        assert_eq!(c.try_add(&CommPoly::one(3)), Err(Error::OrderMismatch(2, 3)));
    }

    #[test]
    fn specialization() {
        let a = pa(ParamName::A);
        let tx = CommPoly::t(2, 1, 1);
        let p = &a * &tx.pow(2).unwrap();
        let one: HashMap<_, _> = [(Param::new(ParamName::A), CyclotomicNumber::one(2))].into();
        assert_eq!(p.specialize(&one), tx.pow(2).unwrap());

        let c = pa(ParamName::C);
        let cp = CommPoly::param(2, Param::new(ParamName::C).primed(1));
        let t1 = CommPoly::t(2, 1, 0);
        let q = (&c - &cp) * t1.pow(2).unwrap();
        let sub = q.substitute(&|v| (v == VariableId::param(ParamName::C)).then(|| cp.clone()));
        assert!(sub.is_zero());

        // a^2 (1 - q)^2 t_x^2 t_y^2 at a = 1, n = 2.
        let ty = CommPoly::t(2, 1, 2);
        let one_minus_q = CommPoly::from_int(2, 2);
        let big = a.pow(2).unwrap() * one_minus_q.pow(2).unwrap() * tx.pow(2).unwrap() * ty.pow(2).unwrap();
        assert_eq!(
            big.specialize(&one),
            CommPoly::from_int(2, 4) * tx.pow(2).unwrap() * ty.pow(2).unwrap()
        );
    }

    #[test]
    fn zero_tests() {
        assert!(CommPoly::zero(3).is_zero());
        let t = CommPoly::t(3, 1, 0);
        assert!((&t - &t).is_zero());
        // (c - c')(1 - q)^n t_1^n t_x^n is not zero for distinct symbols.
        let n = 3;
        let q = CommPoly::constant(CyclotomicNumber::primitive_root(n));
        let c = CommPoly::param(n, Param::new(ParamName::C));
        let cp = CommPoly::param(n, Param::new(ParamName::C).primed(1));
        let w = (c - cp) * (CommPoly::one(n) - q).pow(n).unwrap() * CommPoly::t(n, 1, 0).pow(n).unwrap() * CommPoly::t(n, 1, 1).pow(n).unwrap();
        assert!(!w.is_zero());
    }

    #[test]
    fn canonical_order() {
        let d = CommPoly::param(2, Param::new(ParamName::d(2, 1)));
        assert_eq!(d.to_string(), "d[1,2]");
        let p = CommPoly::t(2, 1, 0) + CommPoly::param(2, Param::new(ParamName::A)) + CommPoly::one(2);
        assert_eq!(p.to_string(), "1 + a + t[1,0]");
        assert_eq!(
            CommMonomial::var(VariableId::t(1, 0)).try_mul(&CommMonomial(vec![(VariableId::t(1, 0), u32::MAX)])),
            Err(Error::ExponentOverflow)
        );
    }

    #[test]
    fn parse_render() {
        let p = CommPoly::parse(5, "(1 - q)^2*t[1,0]*c[2]' - d[2,1]/3", None).unwrap();
        let back = CommPoly::parse(5, &p.to_string(), None).unwrap();
        assert_eq!(p, back);
        assert!(CommPoly::parse(5, "t[0,1]", None).is_err());
        assert!(CommPoly::parse(5, "b", None).is_err());
        assert!(CommPoly::parse(5, "a/t[1,1]", None).is_err());
    }

    fn arb_var() -> impl Strategy<Value = VariableId> {
        prop_oneof![
            Just(VariableId::param(ParamName::A)),
            Just(VariableId::param(ParamName::C)),
            (1u16..3).prop_map(|i| VariableId::param(ParamName::Ci(i))),
            (1u32..3, 0u32..4).prop_map(|(c, b)| VariableId::t(c, b)),
        ]
    }

    pub(crate) fn arb_poly(order: u32) -> impl Strategy<Value = CommPoly> {
        let d = crate::exactnum::totient(order) as usize;
        proptest::collection::vec(
            (
                proptest::collection::vec((arb_var(), 1u32..3), 0..3),
                proptest::collection::vec(-3i64..4, d),
            ),
            0..4,
        )
        .prop_map(move |terms| {
            let mut p = CommPoly::zero(order);
            for (vars, cs) in terms {
                let mut m = CommPoly::one(order);
                for (v, e) in vars {
                    m = m * CommPoly::var(order, v).pow(e).unwrap();
                }
                let c = CyclotomicNumber::from_coeffs(order, cs.into_iter().map(|x| BigRational::from_integer(x.into())).collect());
                p = p + m.scale(&c);
            }
            p
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CommPoly, CommPoly, CommPoly)> {
        (2u32..6).prop_flat_map(|n| (arb_poly(n), arb_poly(n), arb_poly(n)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn specialize_is_multiplicative((a, b, _c) in arb_triple(), v in -3i64..4) {
            let n = a.order();
            let asg: HashMap<_, _> = [
                (Param::new(ParamName::A), CyclotomicNumber::from_int(n, v)),
                (Param::new(ParamName::Ci(1)), CyclotomicNumber::primitive_root(n)),
            ].into();
            prop_assert_eq!((&a * &b).specialize(&asg), &a.specialize(&asg) * &b.specialize(&asg));
        }

        #[test]
        fn render_round_trip((a, _b, _c) in arb_triple()) {
            prop_assert_eq!(CommPoly::parse(a.order(), &a.to_string(), None).unwrap(), a);
        }
    }
}
