//! Multivariate gcd by recursive primitive remainder sequences, exact division,
//! and normalization of projective pairs of polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{Monomial, Poly};

fn check_same_ring(a: &Poly, b: &Poly) -> Result<()> {
    if a.nvars() != b.nvars() || a.field() != b.field() {
        return Err(Error::Dimension(format!(
            "polynomials over different rings ({} vars over {}, {} vars over {})",
            a.nvars(),
            a.field(),
            b.nvars(),
            b.field()
        )));
    }
    if matches!(a.field(), Field::Extension(_)) {
        return Err(Error::InvalidInput(
            "gcd over number fields is not supported".into(),
        ));
    }
    Ok(())
}

/// `a / b` when `b` divides `a`.
pub fn exact_div(a: &Poly, b: &Poly) -> Result<Poly> {
    check_same_ring(a, b)?;
    let (lm, lc) = match b.leading() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(Error::InvalidInput("division by zero polynomial".into())),
    };
    let inv = lc.inv().expect("nonzero field element");
    let mut rem = a.clone();
    let mut quo = Poly::zero(a.nvars(), a.field().clone());
    while let Some((m, c)) = rem.leading() {
        if !lm.divides(m) {
            return Err(Error::InvalidInput(format!("{b} does not divide {a}")));
        }
        let t = lm.quotient_of(m);
        let k = c * &inv;
        rem = rem.sub(&b.mul_term(&t, &k));
        quo.add_term(t, k);
    }
    Ok(quo)
}

/// Scale so that the leading coefficient is one.
pub fn monic(p: &Poly) -> Poly {
    match p.leading() {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv().expect("nonzero")),
        _ => p.clone(),
    }
}

fn top_variable(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.nvars())
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut acc = Poly::zero(p.nvars(), p.field().clone());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_unchecked(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn leading_in(p: &Poly, v: usize) -> Poly {
    p.coefficients_in(v).pop().expect("nonzero polynomial")
}

/// `lc(b)^k a mod b` in `x_v`, with `k` as small as the reduction allows.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = leading_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = leading_in(&r, v);
        let mut shift = Monomial::one(a.nvars());
        shift.0[v] = dr - db;
        let one = a.field().one();
        r = r.mul(&lb).sub(&lr.mul(&b.mul_term(&shift, &one)));
    }
    r
}

fn primitive_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    exact_div(p, &c).expect("content divides")
}

fn gcd_unchecked(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    let Some(v) = top_variable(a, b) else {
        return Poly::one(a.nvars(), a.field().clone());
    };
    if a.degree_in(v) == 0 {
        return gcd_unchecked(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd_unchecked(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_unchecked(&ca, &cb);
    let mut p = exact_div(a, &ca).expect("content divides");
    let mut q = exact_div(b, &cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            q = Poly::one(a.nvars(), a.field().clone());
            break;
        }
        p = q;
        q = monic(&primitive_in(&r, v));
    }
    monic(&c.mul(&q))
}

/// Monic greatest common divisor (leading term in grevlex has coefficient one).
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    check_same_ring(a, b)?;
    Ok(gcd_unchecked(a, b))
}

fn rational_coeffs(p: &Poly) -> Option<Vec<BigRational>> {
    p.terms().map(|(_, c)| c.to_rational()).collect()
}

/// Divide out the gcd; over the rationals also clear denominators and common
/// integer content, with the sign chosen so the second entry's leading
/// coefficient is positive (the first entry's when the second is zero).
pub fn normalized_pair(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    check_same_ring(a, b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidInput(
            "both entries of the pair are zero".into(),
        ));
    }
    let g = gcd_unchecked(a, b);
    let (mut a, mut b) = (exact_div(a, &g)?, exact_div(b, &g)?);
    if a.field() == &Field::Rational {
        let coeffs: Vec<BigRational> = rational_coeffs(&a)
            .into_iter()
            .chain(rational_coeffs(&b))
            .flatten()
            .collect();
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * &den / c.denom()))
        });
        let mut s = BigRational::new(den, num);
        let lead = if b.is_zero() { &a } else { &b };
        if lead
            .leading()
            .and_then(|(_, c)| c.to_rational())
            .is_some_and(|c| c.is_negative())
        {
            s = -s;
        }
        let s = FieldElem::Rat(s);
        a = a.scale(&s);
        b = b.scale(&s);
    } else {
        let lead = if b.is_zero() { &a } else { &b };
        let inv = lead.leading().expect("nonzero").1.inv().expect("nonzero");
        a = a.scale(&inv);
        b = b.scale(&inv);
    }
    Ok((a, b))
}

/// `a1 * b2 == a2 * b1`.
pub fn same_projective_pair(p: &(Poly, Poly), q: &(Poly, Poly)) -> bool {
    p.0.mul(&q.1) == q.0.mul(&p.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 3, &Field::Rational).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let common = p("x0*x1 - 2*x2^2 + 1");
        let a = common.mul(&p("x0 + x1^3"));
        let b = common.mul(&p("x2 - x0*x1")).mul(&p("x0 + 1"));
        assert_eq!(gcd(&a, &b).unwrap(), monic(&common));
        assert_eq!(
            gcd(&p("x0^2 - x1^2"), &p("x0^3 - x1^3")).unwrap(),
            p("x0 - x1")
        );
        assert!(gcd(&p("x0 + 1"), &p("x1 + 1")).unwrap().is_constant());
        assert_eq!(gcd(&p("0"), &p("2*x1")).unwrap(), p("x1"));
        let a = p("x0^3*x1^2 + x0^3*x2");
        assert_eq!(
            gcd(&a, &p("x0^2*x2 + x0^2*x1^2")).unwrap(),
            p("x0^2*x1^2 + x0^2*x2")
        );
    }

    #[test]
    fn gcd_mod_p() {
        let f = Field::Prime(7);
        let a = parse_poly("x0^2 - 1", 2, &f).unwrap();
        let b = parse_poly("x0^2 + 2*x0 + 1", 2, &f).unwrap();
        assert_eq!(gcd(&a, &b).unwrap(), parse_poly("x0 + 1", 2, &f).unwrap());
    }

    #[test]
    fn exact_division() {
        let a = p("x0^2 - x1^2");
        assert_eq!(exact_div(&a, &p("x0 + x1")).unwrap(), p("x0 - x1"));
        assert!(exact_div(&a, &p("x0 + 2*x1")).is_err());
    }

    #[test]
    fn pair_normalization() {
        let (a, b) = normalized_pair(&p("-1/2*x0^2*x1"), &p("3/4*x0^2 - 3/4*x0*x1")).unwrap();
        assert_eq!(
            (a.to_string(), b.to_string()),
            ("-2*x0*x1".into(), "3*x0 - 3*x1".into())
        );
        let (a, b) = normalized_pair(&p("-6*x0"), &p("0")).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("1".into(), "0".into()));
        assert!(same_projective_pair(
            &(p("x0"), p("x1")),
            &(p("2*x0*x2"), p("2*x1*x2"))
        ));
        assert!(normalized_pair(&p("0"), &p("0")).is_err());
    }
}
