//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded reverse lexicographic order with `x0` the greatest variable. Zero
//! coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Graded reverse lexicographic comparison, `x0 > x1 > ...`.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    /// Pure lexicographic comparison, `x0 > x1 > ...`.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `C(n + d - 1, d)`, the number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    let (mut num, k) = (1u128, d as u128);
    for i in 1..=k {
        num = num * (n as u128 - 1 + i) / i;
    }
    num as usize
}

/// Default variable names `x0, x1, ...`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// A polynomial in `nvars` variables.
#[derive(Clone, Debug)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((m1, c1), (m2, c2))| m1 == m2 && c1 == c2)
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(nvars: usize, field: Field) -> Poly {
        Poly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Poly {
        let field = c.field();
        let mut p = Poly::zero(nvars, field);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, field: Field) -> Poly {
        let c = field.one();
        Poly::constant(nvars, c)
    }

    pub fn var(nvars: usize, i: usize, field: Field) -> Poly {
        let c = field.one();
        Poly::term(Monomial::var(nvars, i), c)
    }

    pub fn term(m: Monomial, c: FieldElem) -> Poly {
        let mut p = Poly::zero(m.nvars(), c.field());
        p.add_term(m, c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms<I>(nvars: usize, field: Field, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, FieldElem)>,
    {
        let mut p = Poly::zero(nvars, field);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Degree in variable `v`.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                let c = if self.field == c.field() {
                    c
                } else {
                    &self.field.zero() + &c
                };
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.map_coeffs(|c| -c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut r = Poly::zero(self.nvars, self.field.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field.clone());
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Poly {
        let mut r = Poly::zero(self.nvars, self.field.clone());
        if c.is_zero() {
            return r;
        }
        for (m1, c1) in &self.terms {
            r.terms.insert(m1.mul(m), c1 * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars, self.field.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn map_coeffs<F: Fn(&FieldElem) -> FieldElem>(&self, f: F) -> Poly {
        let mut r = Poly::zero(self.nvars, self.field.clone());
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                r.terms.insert(m.clone(), v);
            }
        }
        r
    }

    /// Reinterpret the coefficients in another field (rationals are promoted).
    pub fn to_field(&self, field: &Field) -> Result<Poly> {
        let mut r = Poly::zero(self.nvars, field.clone());
        for (m, c) in &self.terms {
            let v = match (c, field) {
                (FieldElem::Rat(q), _) => field.from_rational(q)?,
                _ if &c.field() == field => c.clone(),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "cannot move coefficient {c} into {field}"
                    )))
                }
            };
            r.add_term(m.clone(), v);
        }
        Ok(r)
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitute polynomial `images[i]` for variable `i`.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target_vars = images.first().map(Poly::nvars).unwrap_or(0);
        let field = images
            .first()
            .map(|p| p.field.clone())
            .unwrap_or_else(|| self.field.clone());
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target_vars, p.field.clone())])
            .collect();
        let mut r = Poly::zero(target_vars, field);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            r = r.add(&t);
        }
        r
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars, self.field.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            r.add_term(m2, c * &self.field.from_i64(e as i64));
        }
        r
    }

    /// Embed into a ring with `nvars` variables, variable `i` going to `map[i]`.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut r = Poly::zero(nvars, self.field.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Set variable `v` to the constant `value`, keeping the arity.
    pub fn specialize(&self, v: usize, value: &FieldElem) -> Poly {
        let mut r = Poly::zero(self.nvars, self.field.clone());
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.0[v];
            e.0[v] = 0;
            r.add_term(e, c * &value.pow(k));
        }
        r
    }

    /// Split by the exponent of variable `v`: `self = sum_k coeffs[k] * x_v^k`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let mut out =
            vec![Poly::zero(self.nvars, self.field.clone()); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.0[v] as usize;
            e.0[v] = 0;
            out[k].add_term(e, c.clone());
        }
        out
    }

    /// Largest monomial dividing every term (the empty polynomial gives `1`).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        let mut r = Poly::zero(self.nvars, self.field.clone());
        for (t, c) in &self.terms {
            assert!(m.divides(t), "monomial does not divide polynomial");
            r.terms.insert(m.quotient_of(t), c.clone());
        }
        r
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = coeff_sign_and_magnitude(c);
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.fmt_with(names);
            match (m.is_one(), mag.as_str()) {
                (true, _) => s.push_str(&mag),
                (false, "1") => s.push_str(&mono),
                (false, _) => {
                    s.push_str(&mag);
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

fn coeff_sign_and_magnitude(c: &FieldElem) -> (bool, String) {
    match c {
        FieldElem::Rat(q) => {
            let neg = q < &num_rational::BigRational::from_integer(0.into());
            let mag = if neg { -q.clone() } else { q.clone() };
            (neg, FieldElem::Rat(mag).to_string())
        }
        other => (false, other.to_string()),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n, &Field::Rational).unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(3, 2);
        assert_eq!(m.len(), monomial_count(3, 2));
        assert_eq!(m[0], Monomial(vec![2, 0, 0]));
        assert_eq!(m.last().unwrap(), &Monomial(vec![0, 0, 2]));
        assert_eq!(monomial_count(9, 3), 165);
        assert_eq!(monomial_count(3, 5), 21);
    }

    #[test]
    fn grevlex_order() {
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        // equal degree; last variable: a has 1, b has 0, so b > a
        assert_eq!(a.cmp_grevlex(&b), Ordering::Less);
        let c = Monomial(vec![2, 0, 0]);
        assert_eq!(c.cmp_grevlex(&b), Ordering::Greater);
        assert_eq!(Monomial(vec![0, 0, 2]).cmp_grevlex(&c), Ordering::Less);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let f = p("x0 + x1", 2);
        let g = p("x0 - x1", 2);
        assert_eq!(f.mul(&g), p("x0^2 - x1^2", 2));
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.pow(3), p("x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3", 2));
    }

    #[test]
    fn display_is_grevlex_descending() {
        let f = p("3*x2^3 + x0^2*x1 - 1/2*x0*x1*x2", 3);
        assert_eq!(f.to_string(), "x0^2*x1 - 1/2*x0*x1*x2 + 3*x2^3");
    }

    #[test]
    fn compose_and_derivative() {
        let f = p("x0^2*x1", 2);
        let images = [p("x0 + x1", 2), p("x1", 2)];
        assert_eq!(f.compose(&images), p("x0^2*x1 + 2*x0*x1^2 + x1^3", 2));
        assert_eq!(f.derivative(0), p("2*x0*x1", 2));
    }

    #[test]
    fn content_and_specialize() {
        let f = p("x0^2*x1^3 + x0^3*x1", 2);
        assert_eq!(f.monomial_content(), Monomial(vec![2, 1]));
        assert_eq!(f.div_monomial(&Monomial(vec![2, 1])), p("x1^2 + x0", 2));
        assert_eq!(
            f.specialize(0, &FieldElem::rational(2, 1)),
            p("4*x1^3 + 8*x1", 2)
        );
    }
}
