//! Exact coefficient fields: the rationals, prime fields `F_p`, and simple
//! algebraic extensions `Q[nu]/(m(nu))` of the rationals.
//!
//! A [`FieldElem`] carries enough of its field to do arithmetic on its own.
//! Rational values mix freely with the other two kinds (they are promoted);
//! mixing two different prime fields or two different extensions panics, since
//! that is always a programming error upstream.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default prime for fast randomized checks: 2^31 - 19.
pub const DEFAULT_PRIME: u64 = 2_147_483_629;

/// `Q[nu]/(m)` for a monic polynomial `m` of degree at least 2.
///
/// Irreducibility of `m` is the caller's responsibility; inversion reports an
/// error if it meets a zero divisor.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Coefficients of the monic modulus, constant term first.
    modulus: Vec<BigRational>,
}

impl NumberField {
    pub fn new(modulus: Vec<BigRational>) -> Result<Self> {
        let mut m = modulus;
        while m.last().is_some_and(Zero::is_zero) {
            m.pop();
        }
        if m.len() < 3 {
            return Err(Error::InvalidInput(
                "extension modulus must have degree at least 2".into(),
            ));
        }
        let lead = m.last().unwrap().clone();
        for c in &mut m {
            *c = &*c / &lead;
        }
        Ok(NumberField { modulus: m })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        while c.len() > deg {
            let top = c.pop().unwrap();
            if !top.is_zero() {
                let shift = c.len() - deg;
                for (i, m) in self.modulus[..deg].iter().enumerate() {
                    c[shift + i] -= &top * m;
                }
            }
        }
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        c
    }
}

/// The coefficient field of a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    Extension(Arc<NumberField>),
}

impl Field {
    /// A prime field; rejects composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn extension(modulus: Vec<BigRational>) -> Result<Field> {
        Ok(Field::Extension(Arc::new(NumberField::new(modulus)?)))
    }

    /// 0 for the rationals and their extensions, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElem::Mod {
                v: (n as i128).rem_euclid(*p as i128) as u64,
                p: *p,
            },
            Field::Extension(nf) => FieldElem::Alg(AlgElem::from_rational(
                BigRational::from_integer(n.into()),
                nf.clone(),
            )),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        self.from_rational(&BigRational::from_integer(n.clone()))
            .expect("integers embed in every field")
    }

    /// Embed a rational; fails in `F_p` when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        match self {
            Field::Rational => Ok(FieldElem::Rat(q.clone())),
            Field::Prime(p) => rational_mod(q, *p).ok_or_else(|| {
                Error::InvalidInput(format!("denominator of {q} vanishes in F_{p}"))
            }),
            Field::Extension(nf) => Ok(FieldElem::Alg(AlgElem::from_rational(
                q.clone(),
                nf.clone(),
            ))),
        }
    }

    /// The generator `nu` of an extension field.
    pub fn generator(&self) -> Option<FieldElem> {
        match self {
            Field::Extension(nf) => Some(FieldElem::Alg(AlgElem {
                coeffs: nf.reduce(vec![BigRational::zero(), BigRational::one()]),
                field: nf.clone(),
            })),
            _ => None,
        }
    }

    /// Short tag used in serialized output: `QQ`, `Fp:<p>`, or `QQ[nu]`.
    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "QQ".into(),
            Field::Prime(p) => format!("Fp:{p}"),
            Field::Extension(_) => "QQ[nu]".into(),
        }
    }

    /// Parse `QQ` or `Fp:<p>`.
    pub fn parse_tag(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("QQ") || s.eq_ignore_ascii_case("Q") {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("FP:")) {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime in field tag {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidInput(format!(
            "unknown field {s:?} (expected QQ or Fp:<p>)"
        )))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Deterministic trial-division primality test; plenty for 64-bit moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut i = 3u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

fn rational_mod(q: &BigRational, p: u64) -> Option<FieldElem> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64().unwrap();
    let den = q.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    Some(FieldElem::Mod {
        v: mul_mod(num, inv_mod(den, p), p),
        p,
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// An element of a [`NumberField`], stored reduced (degree below the modulus).
#[derive(Clone, Debug)]
pub struct AlgElem {
    coeffs: Vec<BigRational>,
    field: Arc<NumberField>,
}

impl AlgElem {
    fn from_rational(q: BigRational, field: Arc<NumberField>) -> Self {
        let coeffs = if q.is_zero() { vec![] } else { vec![q] };
        AlgElem { coeffs, field }
    }

    /// Coefficients in the power basis `1, nu, nu^2, ...`, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `Some(q)` when the element lies in the prime subfield.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn same_field(&self, other: &AlgElem) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mixing elements of different number fields"
        );
    }

    fn add(&self, other: &AlgElem) -> AlgElem {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![BigRational::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.coeffs.iter().enumerate() {
            c[i] += x;
        }
        AlgElem {
            coeffs: self.field.reduce(c),
            field: self.field.clone(),
        }
    }

    fn mul(&self, other: &AlgElem) -> AlgElem {
        self.same_field(other);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return AlgElem::from_rational(BigRational::zero(), self.field.clone());
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        AlgElem {
            coeffs: self.field.reduce(c),
            field: self.field.clone(),
        }
    }

    fn neg(&self) -> AlgElem {
        AlgElem {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            field: self.field.clone(),
        }
    }

    /// Inverse via the extended Euclidean algorithm in `Q[nu]`.
    fn inv(&self) -> Option<AlgElem> {
        if self.coeffs.is_empty() {
            return None;
        }
        // Invariant: s * self == r  (mod m)
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.coeffs.clone();
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = upoly_divrem(&r0, &r1);
            let s2 = upoly_sub(&s0, &upoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r1.is_empty() {
            // gcd is nonconstant: the modulus is reducible and self is a zero divisor
            return None;
        }
        let c = r1[0].clone();
        let coeffs = s1.iter().map(|x| x / &c).collect();
        Some(AlgElem {
            coeffs: self.field.reduce(coeffs),
            field: self.field.clone(),
        })
    }
}

fn upoly_trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn upoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut c = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        c[i] -= x;
    }
    upoly_trim(c)
}

fn upoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    upoly_trim(c)
}

fn upoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = upoly_trim(a.to_vec());
    let b = upoly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= &c * y;
        }
        q[k] = c;
        r = upoly_trim(r);
    }
    (upoly_trim(q), r)
}

/// An exact scalar. See the module docs for the mixing rules.
#[derive(Clone, Debug)]
pub enum FieldElem {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
    Alg(AlgElem),
}

impl FieldElem {
    pub fn rational(n: i64, d: i64) -> FieldElem {
        FieldElem::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rational,
            FieldElem::Mod { p, .. } => Field::Prime(*p),
            FieldElem::Alg(a) => Field::Extension(a.field.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_zero(),
            FieldElem::Mod { v, .. } => *v == 0,
            FieldElem::Alg(a) => a.coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_one(),
            FieldElem::Mod { v, .. } => *v == 1,
            FieldElem::Alg(a) => a.coeffs.len() == 1 && a.coeffs[0].is_one(),
        }
    }

    /// The multiplicative inverse, `None` for zero (or a zero divisor in a
    /// reducible extension).
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        match self {
            FieldElem::Rat(q) => Some(FieldElem::Rat(q.recip())),
            FieldElem::Mod { v, p } => Some(FieldElem::Mod {
                v: inv_mod(*v, *p),
                p: *p,
            }),
            FieldElem::Alg(a) => a.inv().map(FieldElem::Alg),
        }
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        self.pow_u64(e as u64)
    }

    pub fn pow_u64(&self, e: u64) -> FieldElem {
        let mut result = self.field().one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// The rational value, if this element has one.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            FieldElem::Rat(q) => Some(q.clone()),
            FieldElem::Mod { .. } => None,
            FieldElem::Alg(a) => a.as_rational(),
        }
    }

    /// Scale `self` into the field of `other` (rationals get promoted).
    fn lift_to(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(q), FieldElem::Mod { p, .. }) => {
                rational_mod(q, *p).expect("rational with denominator divisible by p")
            }
            (FieldElem::Rat(q), FieldElem::Alg(a)) => {
                FieldElem::Alg(AlgElem::from_rational(q.clone(), a.field.clone()))
            }
            _ => self.clone(),
        }
    }

    fn binop(&self, other: &FieldElem, op: BinOp) -> FieldElem {
        let (a, b) = (self.lift_to(other), other.lift_to(self));
        match (&a, &b) {
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
            }),
            (FieldElem::Mod { v: x, p }, FieldElem::Mod { v: y, p: q }) => {
                assert_eq!(p, q, "mixing elements of different prime fields");
                let v = match op {
                    BinOp::Add => (x + y) % p,
                    BinOp::Sub => (x + p - y) % p,
                    BinOp::Mul => mul_mod(*x, *y, *p),
                };
                FieldElem::Mod { v, p: *p }
            }
            (FieldElem::Alg(x), FieldElem::Alg(y)) => FieldElem::Alg(match op {
                BinOp::Add => x.add(y),
                BinOp::Sub => x.add(&y.neg()),
                BinOp::Mul => x.mul(y),
            }),
            _ => panic!("mixing prime-field and extension-field elements"),
        }
    }
}

#[derive(Clone, Copy)]
enum BinOp {
    Add,
    Sub,
    Mul,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for FieldElem {}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        self.binop(rhs, BinOp::Add)
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        self.binop(rhs, BinOp::Sub)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        self.binop(rhs, BinOp::Mul)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(q) => FieldElem::Rat(-q),
            FieldElem::Mod { v, p } => FieldElem::Mod {
                v: (p - v) % p,
                p: *p,
            },
            FieldElem::Alg(a) => FieldElem::Alg(a.neg()),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(q) => f.write_str(&fmt_rational(q)),
            FieldElem::Mod { v, .. } => write!(f, "{v}"),
            FieldElem::Alg(a) => {
                if a.coeffs.is_empty() {
                    return f.write_str("0");
                }
                let mut parts = Vec::new();
                for (i, c) in a.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mag = fmt_rational(&c.abs());
                    let sign = if c.is_negative() { "-" } else { "+" };
                    let body = match i {
                        0 => mag,
                        1 if c.abs().is_one() => "nu".into(),
                        1 => format!("{mag}*nu"),
                        _ if c.abs().is_one() => format!("nu^{i}"),
                        _ => format!("{mag}*nu^{i}"),
                    };
                    parts.push((sign, body));
                }
                let mut s = String::from("(");
                for (k, (sign, body)) in parts.iter().enumerate() {
                    if k == 0 {
                        if *sign == "-" {
                            s.push('-');
                        }
                    } else {
                        s.push_str(&format!(" {sign} "));
                    }
                    s.push_str(body);
                }
                s.push(')');
                f.write_str(&s)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_are_reduced() {
        let x = FieldElem::rational(6, -4);
        assert_eq!(x.to_string(), "-3/2");
    }

    #[test]
    fn prime_field_canonical_representative() {
        let f = Field::prime(17).unwrap();
        assert!(matches!(f.from_i64(-1), FieldElem::Mod { v: 16, p: 17 }));
        let half = f.from_rational(&q(1, 2)).unwrap();
        assert!(matches!(half, FieldElem::Mod { v: 9, p: 17 }));
        assert!((&half * &f.from_i64(2)).is_one());
    }

    #[test]
    fn prime_field_rejects_bad_denominator_and_composites() {
        let f = Field::prime(7).unwrap();
        assert!(f.from_rational(&q(1, 14)).is_err());
        assert!(Field::prime(15).is_err());
        assert!(is_prime(DEFAULT_PRIME));
    }

    #[test]
    fn extension_arithmetic() {
        // Q(nu) with nu^3 = 2
        let f = Field::extension(vec![q(-2, 1), q(0, 1), q(0, 1), q(1, 1)]).unwrap();
        let nu = f.generator().unwrap();
        assert_eq!(nu.pow(3), f.from_i64(2));
        let x = &nu + &f.one();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(x.to_string(), "(1 + nu)");
    }

    #[test]
    fn rationals_promote() {
        let f = Field::prime(5).unwrap();
        let x = &FieldElem::rational(1, 2) + &f.from_i64(1);
        assert!(matches!(x, FieldElem::Mod { v: 4, p: 5 }));
    }

    #[test]
    fn field_tags() {
        assert_eq!(Field::parse_tag("QQ").unwrap(), Field::Rational);
        assert_eq!(Field::parse_tag("Fp:17").unwrap(), Field::Prime(17));
        assert!(Field::parse_tag("Fp:18").is_err());
        assert!(Field::parse_tag("RR").is_err());
    }
}
