//! Exact scalars: rationals and the cyclotomic fields `Q(ζ_n)`.
//!
//! An element of `Q(ζ_n)` is stored as its reduced remainder modulo the
//! cyclotomic polynomial `Φ_n`, i.e. a rational vector of length `φ(n)`.
//! `Φ_n` is computed by exact polynomial division and memoized per order.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, ParseError};

pub use num_rational::BigRational;

/// Integer polynomial, coefficients stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => {}
                (_, false) => write!(f, "{abs}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn phi_cache() -> &'static Mutex<HashMap<u32, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Returns the `n`-th cyclotomic polynomial `Φ_n`.
///
/// Computed as `(x^n - 1) / ∏_{d | n, d < n} Φ_d` by exact division.
pub fn cyclotomic_polynomial(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let div = cyclotomic_polynomial(d);
        num = div_exact_monic(&num, div.coeffs());
    }
    let p = IntPoly(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// The field `Q(ζ_n)` with its defining modulus.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    modulus: Vec<BigRational>,
}

impl CyclotomicField {
    /// Shared handle for `Q(ζ_n)`; one instance per order.
    pub fn get(order: u32) -> Arc<CyclotomicField> {
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(f) = fields.lock().unwrap().get(&order) {
            return f.clone();
        }
        let modulus = cyclotomic_polynomial(order)
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let field = Arc::new(CyclotomicField { order, modulus });
        fields
            .lock()
            .unwrap()
            .entry(order)
            .or_insert(field)
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of `Φ_n` over `Q`, i.e. Euler's totient of the order.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        for k in (d..p.len()).rev() {
            let c = std::mem::take(&mut p[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                if !self.modulus[i].is_zero() {
                    p[k - d + i] -= &c * &self.modulus[i];
                }
            }
        }
        p.resize(d, BigRational::zero());
        p
    }
}

/// An exact element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    /// Builds `Σ c_i ζ^i` from an arbitrary-length coefficient list, reducing mod `Φ_n`.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        let field = CyclotomicField::get(order);
        let coeffs = field.reduce(coeffs);
        CyclotomicNumber { field, coeffs }
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        Self::from_coeffs(order, vec![r])
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(v.into()))
    }

    pub fn zero(order: u32) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    /// The canonical primitive `n`-th root of unity `ζ_n`.
    pub fn primitive_root(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// `ζ_n^k` for any integer `k`, reduced.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_coeffs(order, c)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicNumber {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.coeffs.len();
        if d == 1 {
            return Ok(CyclotomicNumber {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_n`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order(), r.recip()));
        }
        // Invariant: s * self ≡ r (mod Φ_n) for each (r, s) pair.
        let mut r0 = trim(self.field.modulus.clone());
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Φ_n is irreducible.
        let g = r1[0].recip();
        let inv = s1.into_iter().map(|c| c * &g).collect();
        Ok(Self::from_coeffs(self.order(), inv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents require an invertible base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_u(k.unsigned_abs()))
    }

    pub fn pow_u(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Parses the `z`-polynomial grammar (`q` is accepted as an alias of `z`).
    pub fn parse(order: u32, src: &str) -> Result<Self> {
        let e = expr::parse(src)?;
        Self::from_expr(order, &e)
    }

    pub fn from_expr(order: u32, e: &Expr) -> Result<Self> {
        Ok(match e {
            Expr::Int(v) => Self::from_rational(order, BigRational::from_integer(v.clone())),
            Expr::Ident(id) if (id.name == "z" || id.name == "q") && id.args.is_empty() && id.primes == 0 => {
                Self::primitive_root(order)
            }
            Expr::Ident(id) => {
                return Err(ParseError::new(id.pos, "`z`", format!("`{}`", id.name)).into())
            }
            Expr::Neg(a) => -Self::from_expr(order, a)?,
            Expr::Add(a, b) => Self::from_expr(order, a)? + Self::from_expr(order, b)?,
            Expr::Sub(a, b) => Self::from_expr(order, a)? - Self::from_expr(order, b)?,
            Expr::Mul(a, b) => Self::from_expr(order, a)? * Self::from_expr(order, b)?,
            Expr::Div(a, b) => Self::from_expr(order, a)?.try_div(&Self::from_expr(order, b)?)?,
            Expr::Pow(a, k) => Self::from_expr(order, a)?.pow_u(*k as u64),
        })
    }

    /// True when the display form needs parentheses as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        let nonzero = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        nonzero > 1
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.order(), self)
    }
}

fn write_rational_term(
    f: &mut fmt::Formatter<'_>,
    c: &BigRational,
    first: bool,
    monomial: Option<&str>,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    match monomial {
        None => write!(f, "{abs}"),
        Some(m) if abs.is_one() => f.write_str(m),
        Some(m) => write!(f, "{abs}*{m}"),
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = match k {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{k}")),
            };
            write_rational_term(f, c, first, m.as_deref())?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, rhs: &CyclotomicNumber) {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn mul_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = &*self * rhs;
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Exact `k`-th root of a rational, if one exists in `Q`.
pub fn rational_root(r: &BigRational, k: u32) -> Option<BigRational> {
    if k == 0 {
        return None;
    }
    if r.is_negative() && k % 2 == 0 {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let s = v.abs().nth_root(k);
        (s.pow(k) == v.abs()).then_some(s)
    };
    let n = root(r.numer())?;
    let d = root(r.denom())?;
    let n = if r.is_negative() { -n } else { n };
    Some(BigRational::new(n, d))
}

/// Euler's totient, used to size coefficient vectors.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(p: &IntPoly) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn mobius(n: u32) -> i32 {
        let mut m = n;
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    }

    // Independent route: Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}, with integer series division.
    fn phi_via_mobius(n: u32) -> Vec<i64> {
        let mut num = vec![1i64];
        let mut den = vec![1i64];
        let mul = |p: &[i64], d: u32| {
            let mut out = vec![0i64; p.len() + d as usize];
            for (i, c) in p.iter().enumerate() {
                out[i + d as usize] += c;
                out[i] -= c;
            }
            out
        };
        for d in (1..=n).filter(|d| n % d == 0) {
            match mobius(n / d) {
                1 => num = mul(&num, d),
                -1 => den = mul(&den, d),
                _ => {}
            }
        }
        // Normalize signs so both are monic, then divide.
        let lead = *den.last().unwrap();
        let numl = *num.last().unwrap();
        let mut rem: Vec<i64> = num.iter().map(|c| c * lead.signum() * numl.signum()).collect();
        let den: Vec<i64> = den.iter().map(|c| c * lead.signum()).collect();
        let dd = den.len() - 1;
        let mut q = vec![0i64; rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd];
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
            q[k] = c;
        }
        assert!(rem.iter().all(|&c| c == 0));
        q
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(6).to_string(), "x^2 - x + 1");
        for n in 1..=40 {
            assert_eq!(ints(&cyclotomic_polynomial(n)), phi_via_mobius(n), "n = {n}");
            assert_eq!(cyclotomic_polynomial(n).degree() as u32, totient(n));
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(CyclotomicNumber::primitive_root(2), CyclotomicNumber::from_int(2, -1));
        assert!(CyclotomicNumber::primitive_root(1).is_one());
        let z4 = CyclotomicNumber::primitive_root(4);
        assert_eq!(&z4 * &z4, CyclotomicNumber::from_int(4, -1));
        for n in 1..=12u32 {
            let z = CyclotomicNumber::primitive_root(n);
            assert!(z.pow_u(n as u64).is_one());
            for k in 1..n {
                assert!(!z.pow_u(k as u64).is_one(), "ζ_{n}^{k} = 1");
            }
        }
    }

    #[test]
    fn inverse_and_errors() {
        let z4 = CyclotomicNumber::primitive_root(4);
        assert_eq!(z4.inverse().unwrap(), -&z4);
        let q2 = CyclotomicNumber::primitive_root(2);
        assert_eq!(CyclotomicNumber::one(2) - q2, CyclotomicNumber::from_int(2, 2));
        assert_eq!(CyclotomicNumber::zero(5).inverse(), Err(Error::DivisionByZero));
        let a = CyclotomicNumber::one(3);
        let b = CyclotomicNumber::one(4);
        assert_eq!(a.try_add(&b), Err(Error::OrderMismatch(3, 4)));
        assert_eq!(z4.pow(-1).unwrap(), -&z4);
    }

    #[test]
    fn render_and_parse() {
        let x = CyclotomicNumber::parse(7, "1 - z + 2*z^2").unwrap();
        assert_eq!(x.to_string(), "1 - z + 2*z^2");
        let y = CyclotomicNumber::parse(3, "z^2").unwrap();
        assert_eq!(y.to_string(), "-1 - z");
        let h = CyclotomicNumber::parse(5, "1/2 - 3/4*z^3").unwrap();
        assert_eq!(h.to_string(), "1/2 - 3/4*z^3");
        assert_eq!(CyclotomicNumber::parse(5, "(1+z)/(1+z)").unwrap(), CyclotomicNumber::one(5));
        assert!(CyclotomicNumber::parse(5, "w").is_err());
        assert_eq!(CyclotomicNumber::zero(3).to_string(), "0");
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rational_root(&rat(-8, 1), 3), Some(rat(-2, 1)));
        assert_eq!(rational_root(&rat(-4, 1), 2), None);
        assert_eq!(rational_root(&rat(2, 1), 2), None);
    }

    fn arb_elem(order: u32) -> impl Strategy<Value = CyclotomicNumber> {
        let d = totient(order) as usize;
        proptest::collection::vec((-9i64..10, 1i64..5), d)
            .prop_map(move |cs| CyclotomicNumber::from_coeffs(order, cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn arb_triple() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
        (1u32..13).prop_flat_map(|n| (arb_elem(n), arb_elem(n), arb_elem(n)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            let order = a.order();
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
            // Reducing an already reduced element is the identity.
            prop_assert_eq!(CyclotomicNumber::from_coeffs(order, a.coeffs().to_vec()), a.clone());
            prop_assert_eq!(CyclotomicNumber::parse(order, &a.to_string()).unwrap(), a);
        }
    }
}
