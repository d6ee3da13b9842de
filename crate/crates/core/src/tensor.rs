//! Homogeneous forms, linear substitution and Laurent curves acting on forms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::Matrix;
use crate::parse;
use crate::poly::{Monomial, Poly};

/// A linear map given by its matrix.
pub type LinMap = Matrix;

/// A degree-`d` form in `n` variables. The zero form keeps `d` and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    form: Poly,
    degree: u32,
}

impl SymTensor {
    pub fn new(form: Poly, degree: u32) -> Result<SymTensor> {
        if form.nvars() == 0 {
            return Err(Error::Dimension(
                "a form needs at least one variable".into(),
            ));
        }
        if let Some((m, _)) = form.terms().find(|(m, _)| m.degree() != degree) {
            return Err(Error::InvalidInput(format!(
                "not homogeneous of degree {degree}: term of degree {}",
                m.degree()
            )));
        }
        Ok(SymTensor { form, degree })
    }

    /// Degree taken from the form itself; the zero polynomial is rejected.
    pub fn from_poly(form: Poly) -> Result<SymTensor> {
        let d = form.total_degree().ok_or_else(|| {
            Error::InvalidInput("cannot infer the degree of the zero form".into())
        })?;
        SymTensor::new(form, d)
    }

    pub fn zero(n: usize, degree: u32, field: Field) -> SymTensor {
        SymTensor {
            form: Poly::zero(n, field),
            degree,
        }
    }

    /// Parse with `n` variables; `degree` is required only for the zero form.
    pub fn parse(src: &str, n: usize, degree: Option<u32>, field: &Field) -> Result<SymTensor> {
        let p = parse::parse_poly(src, n, field)?;
        match degree {
            Some(d) => SymTensor::new(p, d),
            None => SymTensor::from_poly(p),
        }
    }

    /// Parse, inferring `n` from the highest variable index used.
    pub fn parse_infer(src: &str, degree: Option<u32>, field: &Field) -> Result<SymTensor> {
        let p = parse::parse_poly_infer(src, 1, field)?;
        match degree {
            Some(d) => SymTensor::new(p, d),
            None => SymTensor::from_poly(p),
        }
    }

    pub fn form(&self) -> &Poly {
        &self.form
    }

    pub fn into_form(self) -> Poly {
        self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.form.nvars()
    }

    pub fn field(&self) -> &Field {
        self.form.field()
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        self.same_shape(other)?;
        Ok(SymTensor {
            form: self.form.add(&other.form),
            degree: self.degree,
        })
    }

    pub fn sub(&self, other: &SymTensor) -> Result<SymTensor> {
        self.same_shape(other)?;
        Ok(SymTensor {
            form: self.form.sub(&other.form),
            degree: self.degree,
        })
    }

    pub fn scale(&self, c: &FieldElem) -> SymTensor {
        SymTensor {
            form: self.form.scale(c),
            degree: self.degree,
        }
    }

    fn same_shape(&self, other: &SymTensor) -> Result<()> {
        if self.degree != other.degree || self.nvars() != other.nvars() {
            return Err(Error::Dimension(format!(
                "forms of shape (d={}, n={}) and (d={}, n={})",
                self.degree,
                self.nvars(),
                other.degree,
                other.nvars()
            )));
        }
        Ok(())
    }

    /// Same form viewed in `m >= n` variables (the first `n` keep their names).
    pub fn embed(&self, m: usize) -> Result<SymTensor> {
        if m < self.nvars() {
            return Err(Error::Dimension(format!(
                "cannot embed {} variables into {m}",
                self.nvars()
            )));
        }
        let map: Vec<usize> = (0..self.nvars()).collect();
        Ok(SymTensor {
            form: self.form.remap_vars(m, &map),
            degree: self.degree,
        })
    }

    pub fn to_field(&self, field: &Field) -> Result<SymTensor> {
        Ok(SymTensor {
            form: self.form.to_field(field)?,
            degree: self.degree,
        })
    }

    /// Check that this form's degree is admissible over its field.
    pub fn check_admissible(&self) -> Result<()> {
        check_admissible(self.degree, self.field())
    }
}

impl fmt::Display for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

/// Degree condition required throughout: after removing every factor of the
/// characteristic from `d`, at least 3 must remain.
pub fn check_admissible(d: u32, field: &Field) -> Result<()> {
    let p = field.characteristic();
    let mut m = d as u64;
    if p != 0 {
        while m > 0 && m.is_multiple_of(p) {
            m /= p;
        }
    }
    if m < 3 {
        return Err(Error::DegreeNotAdmissible {
            d,
            characteristic: p,
        });
    }
    Ok(())
}

/// `x0^d + ... + x{r-1}^d` over the rationals.
pub fn unit_tensor(r: usize, d: u32) -> SymTensor {
    unit_tensor_over(r, d, &Field::Rational)
}

pub fn unit_tensor_over(r: usize, d: u32, field: &Field) -> SymTensor {
    assert!(r >= 1 && d >= 1, "unit tensor needs r >= 1 and d >= 1");
    let terms = (0..r).map(|i| {
        let mut e = vec![0; r];
        e[i] = d;
        (Monomial(e), field.one())
    });
    SymTensor {
        form: Poly::from_terms(r, field.clone(), terms),
        degree: d,
    }
}

/// Linear forms `sum_j M[i][j] y_j`, one per row of `m`.
pub fn row_forms(m: &Matrix, field: &Field) -> Vec<Poly> {
    (0..m.rows())
        .map(|i| {
            let terms = (0..m.cols()).map(|j| (Monomial::var(m.cols(), j), m.get(i, j).clone()));
            Poly::from_terms(m.cols(), field.clone(), terms)
        })
        .collect()
}

/// `g(y) = f(M y)` for an `n x m` matrix `M`.
pub fn substitute(f: &SymTensor, m: &Matrix) -> Result<SymTensor> {
    if m.rows() != f.nvars() || m.cols() == 0 {
        return Err(Error::Dimension(format!(
            "substitution matrix is {}x{} but the form has {} variables",
            m.rows(),
            m.cols(),
            f.nvars()
        )));
    }
    let images = row_forms(m, f.field());
    Ok(SymTensor {
        form: f.form.compose(&images),
        degree: f.degree,
    })
}

/// `g . f`, realised as `f(g x)`: variable `x_i` becomes `sum_j g_ij x_j`.
pub fn act(g: &Matrix, f: &SymTensor) -> Result<SymTensor> {
    if g.rows() != g.cols() {
        return Err(Error::Dimension(format!(
            "group element must be square, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    substitute(f, g)
}

/// A Laurent polynomial in `t`: exponent -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, FieldElem>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: FieldElem, k: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.terms.insert(k, c);
        }
        p
    }

    pub fn constant(c: FieldElem) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    pub fn parse(src: &str, field: &Field) -> Result<LaurentPoly> {
        Ok(LaurentPoly {
            terms: parse::parse_laurent(src, field)?.into_iter().collect(),
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElem)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, c: FieldElem, k: i64) {
        let sum = match self.terms.get(&k) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn eval(&self, t: &FieldElem) -> Option<FieldElem> {
        let field = t.field();
        let mut acc = field.zero();
        for (&k, c) in &self.terms {
            let p = if k >= 0 {
                t.pow(k as u32)
            } else {
                t.inv()?.pow((-k) as u32)
            };
            acc = &acc + &(c * &p);
        }
        Some(acc)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = body == "1";
            match (k, unit) {
                (0, _) => f.write_str(&body)?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{body}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{body}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// A square matrix of Laurent polynomials in one parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<LaurentMatrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(
                "Laurent matrix must be square and nonempty".into(),
            ));
        }
        Ok(LaurentMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Rows of entry strings such as `"t^3"`, `"0"`, `"t^-3"`.
    pub fn parse_rows(rows: &[Vec<String>], field: &Field) -> Result<LaurentMatrix> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| LaurentPoly::parse(s, field))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LaurentMatrix::from_rows(parsed)
    }

    /// JSON array of arrays of strings.
    pub fn parse_json(src: &str, field: &Field) -> Result<LaurentMatrix> {
        let rows: Vec<Vec<String>> = serde_json::from_str(src)
            .map_err(|e| Error::InvalidInput(format!("Laurent matrix JSON: {e}")))?;
        LaurentMatrix::parse_rows(&rows, field)
    }

    pub fn constant(m: &Matrix) -> Result<LaurentMatrix> {
        if m.rows() != m.cols() {
            return Err(Error::Dimension("Laurent matrix must be square".into()));
        }
        let rows = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| LaurentPoly::constant(m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        LaurentMatrix::from_rows(rows)
    }

    pub fn identity(n: usize, field: &Field) -> LaurentMatrix {
        LaurentMatrix::constant(&Matrix::identity(n, field.clone())).expect("square")
    }

    /// `diag(t^{w_0}, ..., t^{w_{n-1}})`.
    pub fn diagonal_weights(w: &[i64], field: &Field) -> LaurentMatrix {
        let n = w.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            LaurentPoly::monomial(field.one(), w[i])
                        } else {
                            LaurentPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix::from_rows(rows).expect("square")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    /// Smallest exponent of `t` among all entries (0 for a constant matrix).
    pub fn min_exponent(&self) -> i64 {
        self.entries
            .iter()
            .filter_map(LaurentPoly::min_exponent)
            .min()
            .unwrap_or(0)
            .min(0)
    }

    /// Evaluate at a nonzero value of `t`.
    pub fn eval(&self, t: &FieldElem) -> Option<Matrix> {
        let field = t.field();
        let mut m = Matrix::zeros(self.n, self.n, field);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).eval(t)?);
            }
        }
        Some(m)
    }
}

/// A form whose coefficients are Laurent polynomials in `t`, stored by powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentForm {
    nvars: usize,
    degree: u32,
    field: Field,
    by_power: BTreeMap<i64, Poly>,
}

impl LaurentForm {
    pub fn powers(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.by_power.iter().map(|(k, p)| (*k, p))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.by_power.keys().next().copied()
    }

    /// Coefficient of `t^k` as a form (zero form if absent).
    pub fn coefficient(&self, k: i64) -> SymTensor {
        SymTensor {
            form: self
                .by_power
                .get(&k)
                .cloned()
                .unwrap_or_else(|| Poly::zero(self.nvars, self.field.clone())),
            degree: self.degree,
        }
    }

    pub fn is_t_free(&self) -> bool {
        self.by_power.keys().all(|&k| k == 0)
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> SymTensor {
        let mut p = Poly::zero(self.nvars, self.field.clone());
        for q in self.by_power.values() {
            p = p.add(q);
        }
        SymTensor {
            form: p,
            degree: self.degree,
        }
    }
}

/// Expand `G(t) . f` and collect by powers of `t`.
pub fn laurent_act(g: &LaurentMatrix, f: &SymTensor) -> Result<LaurentForm> {
    let n = f.nvars();
    if g.size() != n {
        return Err(Error::Dimension(format!(
            "Laurent matrix has size {} but the form has {n} variables",
            g.size()
        )));
    }
    let field = f.field().clone();
    // Multiply every entry by t^s so exponents are nonnegative, expand in n+1
    // variables with t last, then shift back by s*d.
    let s = -g.min_exponent();
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            let mut p = Poly::zero(n + 1, field.clone());
            for j in 0..n {
                for (k, c) in g.get(i, j).terms() {
                    let mut e = vec![0u32; n + 1];
                    e[j] = 1;
                    e[n] = (k + s) as u32;
                    p.add_term(Monomial(e), c.clone());
                }
            }
            p
        })
        .collect();
    let expanded = f.form.compose(&images);
    let shift = s * f.degree as i64;
    let mut by_power: BTreeMap<i64, Poly> = BTreeMap::new();
    for (m, c) in expanded.terms() {
        let k = m.0[n] as i64 - shift;
        let entry = by_power
            .entry(k)
            .or_insert_with(|| Poly::zero(n, field.clone()));
        entry.add_term(Monomial(m.0[..n].to_vec()), c.clone());
    }
    by_power.retain(|_, p| !p.is_zero());
    Ok(LaurentForm {
        nvars: n,
        degree: f.degree,
        field,
        by_power,
    })
}
