//! Exact arithmetic over the rationals and over the cyclotomic fields Q(zeta_r).
//!
//! A scalar is stored by its coefficient vector over the power basis
//! `1, z, ..., z^(phi(r)-1)` where `z` is a primitive r-th root of unity,
//! fully reduced modulo the r-th cyclotomic polynomial. The representation
//! is unique, so equality of values is equality of coefficient vectors.
//! Conductor 1 is the rational field itself (`z = 1`).
//!
//! All coefficients are arbitrary-precision rationals; nothing here ever
//! rounds. Rank computations downstream rely on that.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Computes the coefficient list of the `r`-th cyclotomic polynomial,
/// lowest degree first, by exact division of `x^r - 1` by the product of
/// the cyclotomic polynomials of the proper divisors of `r`.
pub fn cyclotomic_polynomial(r: u32) -> Result<Vec<BigInt>> {
    if r == 0 {
        return Err(Error::InvalidConductor);
    }
    let mut memo: Vec<Option<Vec<BigInt>>> = vec![None; (r + 1) as usize];
    for d in 1..=r {
        if !r.is_multiple_of(d) {
            continue;
        }
        // x^d - 1
        let mut num = vec![BigInt::zero(); (d + 1) as usize];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::one();
        let mut den = vec![BigInt::one()];
        for e in 1..d {
            if d % e == 0 {
                den = int_poly_mul(&den, memo[e as usize].as_ref().unwrap());
            }
        }
        memo[d as usize] = Some(int_poly_div_exact(&num, &den)?);
    }
    Ok(memo[r as usize].take().unwrap())
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Long division over Z, requiring the remainder to vanish.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = rem.len() - 1;
    if dn < dd {
        return Err(Error::Inconsistency("cyclotomic division underflow".into()));
    }
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i - dd + j] -= t;
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::Inconsistency(
            "cyclotomic polynomial division left a remainder".into(),
        ));
    }
    Ok(quot)
}

#[derive(Debug)]
struct FieldData {
    conductor: u32,
    degree: usize,
    /// Monic, integer coefficients, lowest degree first, length `degree + 1`.
    minimal_poly: Vec<BigInt>,
}

/// The cyclotomic field Q(zeta_r), identified by its conductor.
///
/// Cheap to clone; two specs compare equal iff their conductors agree.
#[derive(Clone)]
pub struct FieldSpec {
    data: Arc<FieldData>,
}

impl FieldSpec {
    /// The rational field, as the cyclotomic field of conductor 1.
    pub fn rational() -> FieldSpec {
        FieldSpec::cyclotomic(1).unwrap()
    }

    pub fn cyclotomic(conductor: u32) -> Result<FieldSpec> {
        let minimal_poly = cyclotomic_polynomial(conductor)?;
        let degree = minimal_poly.len() - 1;
        Ok(FieldSpec {
            data: Arc::new(FieldData {
                conductor,
                degree,
                minimal_poly,
            }),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.data.conductor
    }

    /// phi(r), the degree of the field extension over Q.
    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn minimal_poly(&self) -> &[BigInt] {
        &self.data.minimal_poly
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        self.rational_scalar(Rational::from_integer(BigInt::from(n)))
    }

    pub fn rational_scalar(&self, q: Rational) -> Scalar {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = q;
        Scalar {
            field: self.clone(),
            coeffs,
        }
    }

    /// Builds a scalar from explicit power-basis coefficients.
    pub fn scalar_from_coeffs(&self, coeffs: Vec<Rational>) -> Result<Scalar> {
        if coeffs.len() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: coeffs.len(),
            });
        }
        Ok(Scalar {
            field: self.clone(),
            coeffs,
        })
    }

    /// zeta, a fixed primitive root of unity of order `conductor`.
    pub fn zeta(&self) -> Scalar {
        self.zeta_pow(1)
    }

    /// zeta^n, reduced into the power basis.
    pub fn zeta_pow(&self, n: u64) -> Scalar {
        let k = (n % self.conductor() as u64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Scalar {
            field: self.clone(),
            coeffs: self.reduce(coeffs),
        }
    }

    /// Reduces a coefficient vector of arbitrary length modulo the minimal
    /// polynomial and pads/truncates it to `degree` entries.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        let phi = &self.data.minimal_poly;
        let mut i = coeffs.len();
        while i > d {
            i -= 1;
            if coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[i], Rational::zero());
            for (j, pj) in phi.iter().enumerate().take(d) {
                if !pj.is_zero() {
                    let t = &c * Rational::from_integer(pj.clone());
                    coeffs[i - d + j] -= t;
                }
            }
        }
        coeffs.resize(d, Rational::zero());
        coeffs
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor()
    }
}
impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor())
    }
}

/// An element of a fixed cyclotomic field, in reduced power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value of this scalar, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field.conductor(),
            other.field.conductor(),
            "scalars from different cyclotomic fields"
        );
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.checked(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.checked(other)?;
        Ok(self * other)
    }

    fn checked(&self, other: &Scalar) -> Result<()> {
        if self.field.conductor() != other.field.conductor() {
            return Err(Error::FieldMismatch {
                expected: self.field.conductor(),
                found: other.field.conductor(),
            });
        }
        Ok(())
    }

    /// Multiplicative inverse, via the extended gcd of the representing
    /// polynomial with the minimal polynomial.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<Rational> = self
            .field
            .minimal_poly()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a = rpoly_trim(self.coeffs.clone());
        let (g, u, _v) = rpoly_egcd(a, phi);
        // phi is irreducible over Q, so the gcd is a nonzero constant.
        debug_assert_eq!(rpoly_deg(&g), Some(0));
        let ginv = Rational::one() / g[0].clone();
        let u: Vec<Rational> = u.into_iter().map(|c| c * &ginv).collect();
        Ok(Scalar {
            field: self.field.clone(),
            coeffs: self.field.reduce(u),
        })
    }

    pub fn pow(&self, mut n: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }
}

// Total order (conductor first, then coefficients) used for canonical
// sorting of normals; it has no arithmetic meaning.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor()
            .cmp(&other.field.conductor())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Scalar {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Scalar {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let d = self.field.degree();
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        Scalar {
            field: self.field.clone(),
            coeffs: self.field.reduce(conv),
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers for the extended gcd.

fn rpoly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rpoly_deg(p: &[Rational]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn rpoly_sub_scaled(a: &mut Vec<Rational>, b: &[Rational], c: &Rational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Rational::zero());
    }
    for (j, bj) in b.iter().enumerate() {
        if !bj.is_zero() {
            let t = c * bj;
            a[j + shift] -= t;
        }
    }
    let trimmed = rpoly_trim(std::mem::take(a));
    *a = trimmed;
}

fn rpoly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = rpoly_deg(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let mut quot = vec![Rational::zero(); num.len().saturating_sub(dd)];
    while let Some(dn) = rpoly_deg(&rem) {
        if dn < dd {
            break;
        }
        let c = &rem[dn] / &lead;
        quot[dn - dd] = c.clone();
        rpoly_sub_scaled(&mut rem, den, &c, dn - dd);
    }
    (rpoly_trim(quot), rem)
}

fn rpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    rpoly_trim(out)
}

fn rpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    rpoly_trim(out)
}

/// Extended Euclid: returns (g, u, v) with u*a + v*b = g.
fn rpoly_egcd(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let one = vec![Rational::one()];
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = rpoly_divmod(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = rpoly_sub(&s0, &rpoly_mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = rpoly_sub(&t0, &rpoly_mul(&q, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

// ---------------------------------------------------------------------------
// Textual syntax: rationals as `p/q`, powers of zeta as `z^k`,
// e.g. `1/2+3*z^2-z`.

fn rational_token(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let zpart = match j {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{j}")),
            };
            match zpart {
                None => write!(f, "{}", rational_token(&mag))?,
                Some(z) => {
                    if mag.is_one() {
                        write!(f, "{z}")?;
                    } else {
                        write!(f, "{}*{}", rational_token(&mag), z)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Scalar {
    /// Parses the textual scalar syntax. Whitespace is ignored everywhere.
    pub fn parse(input: &str, field: &FieldSpec) -> Result<Scalar> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "empty scalar".into(),
            });
        }
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: format!("bad scalar `{input}`: {msg}"),
        };
        let mut total = field.zero();
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        while pos < bytes.len() {
            let mut sign = 1i64;
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let term = &s[start..pos];
            if term.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coef_str, zpow) = match term.find('z') {
                None => (term, None),
                Some(zi) => {
                    let coef = term[..zi].trim_end_matches('*');
                    let rest = &term[zi + 1..];
                    let pow: u64 = if rest.is_empty() {
                        1
                    } else {
                        let Some(p) = rest.strip_prefix('^') else {
                            return Err(bad("expected `^` after z"));
                        };
                        p.parse().map_err(|_| bad("bad exponent"))?
                    };
                    (coef, Some(pow))
                }
            };
            let coef = if coef_str.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef_str).ok_or_else(|| bad("bad rational"))?
            };
            let coef = coef * Rational::from_integer(BigInt::from(sign));
            let term_value = match zpow {
                None => field.rational_scalar(coef),
                Some(p) => &field.rational_scalar(coef) * &field.zeta_pow(p),
            };
            total = &total + &term_value;
        }
        Ok(total)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}
