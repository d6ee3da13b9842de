//! Invariants of plane cubics and binary quartics, the projective-line moduli
//! map, plane sections of hypersurfaces, vertex loci and section-moduli scans.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::groebner::{buchberger, Ideal, MonomialOrder};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::tensor::{substitute, SymTensor};

// ---------------------------------------------------------------------------
// Forms with polynomial coefficients

/// A form of degree `degree` in `nvars` variables whose coefficients are
/// polynomials in `nparams` parameters. The ring lists parameters first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamForm {
    poly: Poly,
    nparams: usize,
    degree: u32,
}

impl ParamForm {
    pub fn new(poly: Poly, nparams: usize, degree: u32) -> Result<ParamForm> {
        if nparams > poly.nvars() {
            return Err(Error::Dimension(format!(
                "{nparams} parameters in a ring of {} variables",
                poly.nvars()
            )));
        }
        for (m, _) in poly.terms() {
            let dx: u32 = m.0[nparams..].iter().sum();
            if dx != degree {
                return Err(Error::InvalidInput(format!(
                    "term of degree {dx} in a form of degree {degree}"
                )));
            }
        }
        Ok(ParamForm {
            poly,
            nparams,
            degree,
        })
    }

    /// A form with constant coefficients, viewed with no parameters.
    pub fn constant(f: &SymTensor) -> ParamForm {
        ParamForm {
            poly: f.form().clone(),
            nparams: 0,
            degree: f.degree(),
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars() - self.nparams
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    /// Coefficients in the parameter ring, in the order of `monomials_of_degree(nvars, degree)`.
    pub fn coefficients(&self) -> Vec<Poly> {
        let np = self.nparams;
        let mons = monomials_of_degree(self.nvars(), self.degree);
        let index: HashMap<&[u32], usize> = mons
            .iter()
            .enumerate()
            .map(|(i, m)| (&m.0[..], i))
            .collect();
        let mut out = vec![Poly::zero(np, self.field().clone()); mons.len()];
        for (m, c) in self.poly.terms() {
            let k = index[&m.0[np..]];
            out[k].add_term(Monomial(m.0[..np].to_vec()), c.clone());
        }
        out
    }

    /// Set parameter `i` to a constant.
    pub fn specialize(&self, i: usize, value: &FieldElem) -> ParamForm {
        ParamForm {
            poly: self.poly.specialize(i, value),
            nparams: self.nparams,
            degree: self.degree,
        }
    }

    /// The form itself when no parameter occurs.
    pub fn to_tensor(&self) -> Result<SymTensor> {
        let np = self.nparams;
        let n = self.nvars();
        let mut p = Poly::zero(n, self.field().clone());
        for (m, c) in self.poly.terms() {
            if m.0[..np].iter().any(|&e| e > 0) {
                return Err(Error::InvalidInput(
                    "form still depends on parameters".into(),
                ));
            }
            p.add_term(Monomial(m.0[np..].to_vec()), c.clone());
        }
        SymTensor::new(p, self.degree)
    }
}

/// Sections of `f = x_0 g + h` (with `g, h` free of `x_0`) by the hyperplanes
/// `a_0 x_0 + ... + a_m x_m = 0` through `[1:0:...:0]`: the form
/// `(a_1 x_1 + ... + a_m x_m) g - a_0 h` in `x_1..x_m`, with the `a_i` appended
/// to the parameters. It is `-a_0` times the restriction of `f` to the hyperplane.
pub fn sections_through_first_point(f: &ParamForm) -> Result<ParamForm> {
    let np = f.nparams();
    let nv = f.nvars();
    if nv < 2 {
        return Err(Error::Dimension("need at least two variables".into()));
    }
    if f.poly.degree_in(np) > 1 {
        return Err(Error::Precondition(
            "the first point must have multiplicity d-1 (x0 may occur at most linearly)".into(),
        ));
    }
    let field = f.field().clone();
    let new_np = np + nv;
    let total = new_np + nv - 1;
    // old parameter i -> i; old x_j (j >= 1) -> y_{j-1}
    let map: Vec<usize> = (0..np)
        .chain(std::iter::once(usize::MAX))
        .chain((1..nv).map(|j| new_np + j - 1))
        .collect();
    let embed = |p: &Poly| -> Poly {
        let fixed: Vec<usize> = map
            .iter()
            .map(|&t| if t == usize::MAX { 0 } else { t })
            .collect();
        p.remap_vars(total, &fixed)
    };
    let g = embed(&f.poly.derivative(np));
    let h = embed(&f.poly.specialize(np, &field.zero()));
    let mut line = Poly::zero(total, field.clone());
    for j in 1..nv {
        let mut e = vec![0u32; total];
        e[np + j] = 1;
        e[new_np + j - 1] = 1;
        line.add_term(Monomial(e), field.one());
    }
    let a0 = Poly::var(total, np, field);
    ParamForm::new(line.mul(&g).sub(&a0.mul(&h)), new_np, f.degree())
}

// ---------------------------------------------------------------------------
// Classical invariants

/// Sparse integer polynomial in 18 umbral variables, two bits per exponent.
type Packed = HashMap<u64, i64>;

fn bracket_product(brackets: &[[usize; 3]]) -> Packed {
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    let mut acc: Packed = HashMap::from([(0, 1)]);
    for &[i, j, k] in brackets {
        let mut next: Packed = HashMap::new();
        for (&m, &c) in &acc {
            for (p, s) in PERMS {
                let add = (1u64 << (2 * (3 * i + p[0])))
                    + (1u64 << (2 * (3 * j + p[1])))
                    + (1u64 << (2 * (3 * k + p[2])));
                *next.entry(m + add).or_insert(0) += s * c;
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Replace each symbol's cube `(a . x)^3` by the form's coefficients, giving a
/// polynomial in the ten coefficients of a ternary cubic.
fn umbral_to_coefficients(expansion: &Packed, symbols: usize) -> Poly {
    let field = Field::Rational;
    let mons = monomials_of_degree(3, 3);
    let mut out = Poly::zero(mons.len(), field.clone());
    for (&m, &c) in expansion {
        let mut exps = vec![0u32; mons.len()];
        let mut num = BigInt::from(c);
        let mut den = BigInt::one();
        for s in 0..symbols {
            let e: Vec<u32> = (0..3)
                .map(|t| ((m >> (2 * (3 * s + t))) & 3) as u32)
                .collect();
            let idx = mons
                .iter()
                .position(|x| x.0 == e)
                .expect("each symbol has degree 3");
            exps[idx] += 1;
            num *= e.iter().map(|&x| factorial(x)).product::<i64>();
            den *= 6;
        }
        out.add_term(Monomial(exps), FieldElem::Rat(BigRational::new(num, den)));
    }
    out
}

/// `S` and `T` as polynomials in the ten coefficients, ordered as
/// `monomials_of_degree(3, 3)`, scaled so that `S(x^3+y^3+z^3+6m xyz) = m - m^4`
/// and `T(x^3+y^3+z^3) = 1`.
fn cubic_invariant_polys() -> &'static (Poly, Poly) {
    static CELL: OnceLock<(Poly, Poly)> = OnceLock::new();
    CELL.get_or_init(|| {
        let s = umbral_to_coefficients(
            &bracket_product(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]),
            4,
        );
        let t = umbral_to_coefficients(
            &bracket_product(&[
                [0, 1, 2],
                [0, 1, 3],
                [0, 2, 4],
                [1, 2, 5],
                [3, 4, 5],
                [3, 4, 5],
            ]),
            6,
        );
        let q = Field::Rational;
        let s = s.scale(&q.from_i64(-24).inv().expect("nonzero"));
        let t = t.scale(&q.from_i64(-6).inv().expect("nonzero"));
        (s, t)
    })
}

fn check_shape(f: &ParamForm, nvars: usize, degree: u32, what: &str) -> Result<()> {
    if f.nvars() != nvars || f.degree() != degree {
        return Err(Error::InvalidInput(format!(
            "{what} needs a form of degree {degree} in {nvars} variables, got degree {} in {}",
            f.degree(),
            f.nvars()
        )));
    }
    Ok(())
}

fn evaluate_at(inv: &Poly, coeffs: &[Poly], field: &Field) -> Result<Poly> {
    Ok(inv.to_field(field)?.compose(coeffs))
}

/// Aronhold invariants `(S, T)` of a ternary cubic with parametric coefficients.
pub fn aronhold_st_param(h: &ParamForm) -> Result<(Poly, Poly)> {
    check_shape(h, 3, 3, "Aronhold invariants")?;
    let (s, t) = cubic_invariant_polys();
    let coeffs = h.coefficients();
    let field = h.field().clone();
    Ok((
        evaluate_at(s, &coeffs, &field)?,
        evaluate_at(t, &coeffs, &field)?,
    ))
}

fn constant_of(p: &Poly) -> FieldElem {
    p.coeff(&Monomial::one(p.nvars()))
}

/// Aronhold invariants `(S, T)` of degrees 4 and 6, with `S = 0` on the Fermat
/// cubic and `T = 1` there.
pub fn aronhold_st(h: &SymTensor) -> Result<(FieldElem, FieldElem)> {
    let (s, t) = aronhold_st_param(&ParamForm::constant(h))?;
    Ok((constant_of(&s), constant_of(&t)))
}

/// Invariants `(D, E)` of `a x^4 + 4b x^3y + 6c x^2y^2 + 4d xy^3 + e y^4`:
/// `D = ae - 4bd + 3c^2`, `E = ace + 2bcd - ad^2 - b^2e - c^3`.
pub fn eisenstein_de_param(h: &ParamForm) -> Result<(Poly, Poly)> {
    check_shape(h, 2, 4, "Eisenstein invariants")?;
    let field = h.field().clone();
    let c = h.coefficients();
    // coefficients come ordered x0^4, x0^3x1, x0^2x1^2, x0x1^3, x1^4
    let inv = |k: i64| field.from_i64(k).inv().expect("2 and 3 invertible");
    let (a, b, cc, d, e) = (
        c[0].clone(),
        c[1].scale(&inv(4)),
        c[2].scale(&inv(6)),
        c[3].scale(&inv(4)),
        c[4].clone(),
    );
    let k = |n: i64| field.from_i64(n);
    let dd = a
        .mul(&e)
        .sub(&b.mul(&d).scale(&k(4)))
        .add(&cc.mul(&cc).scale(&k(3)));
    let ee = a
        .mul(&cc)
        .mul(&e)
        .add(&b.mul(&cc).mul(&d).scale(&k(2)))
        .sub(&a.mul(&d).mul(&d))
        .sub(&b.mul(&b).mul(&e))
        .sub(&cc.mul(&cc).mul(&cc));
    Ok((dd, ee))
}

pub fn eisenstein_de(h: &SymTensor) -> Result<(FieldElem, FieldElem)> {
    let (d, e) = eisenstein_de_param(&ParamForm::constant(h))?;
    Ok((constant_of(&d), constant_of(&e)))
}

fn check_small_characteristic(field: &Field) -> Result<()> {
    if matches!(field.characteristic(), 2 | 3) {
        return Err(Error::InvalidInput(format!(
            "invariants need characteristic other than 2, 3; got {field}"
        )));
    }
    Ok(())
}

/// `(S^3, 2^6 S^3 + T^2)` as polynomials in the parameters.
pub fn eta_cubic_pair(h: &ParamForm) -> Result<(Poly, Poly)> {
    check_small_characteristic(h.field())?;
    let (s, t) = aronhold_st_param(h)?;
    let s3 = s.pow(3);
    let b = s3.scale(&h.field().from_i64(64)).add(&t.mul(&t));
    Ok((s3, b))
}

/// `(D^3, D^3 - 27 E^2)` as polynomials in the parameters.
pub fn eta_quartic_pair(h: &ParamForm) -> Result<(Poly, Poly)> {
    check_small_characteristic(h.field())?;
    let (d, e) = eisenstein_de_param(h)?;
    let d3 = d.pow(3);
    let b = d3.sub(&e.mul(&e).scale(&h.field().from_i64(27)));
    Ok((d3, b))
}

fn pair_to_point(pair: (Poly, Poly)) -> Option<ModuliPoint> {
    ModuliPoint::new(constant_of(&pair.0), constant_of(&pair.1)).ok()
}

fn not_semistable() -> Error {
    Error::Precondition("form is not semistable: both moduli coordinates vanish".into())
}

/// `[S^3 : 2^6 S^3 + T^2]`; the nodal locus maps to `[1:0]`.
pub fn eta_cubic(h: &SymTensor) -> Result<ModuliPoint> {
    pair_to_point(eta_cubic_pair(&ParamForm::constant(h))?).ok_or_else(not_semistable)
}

/// `[D^3 : D^3 - 27 E^2]`; forms with a double root map to `[1:0]`.
pub fn eta_quartic(h: &SymTensor) -> Result<ModuliPoint> {
    pair_to_point(eta_quartic_pair(&ParamForm::constant(h))?).ok_or_else(not_semistable)
}

// ---------------------------------------------------------------------------
// Moduli points

/// A point `[A : B]` of the projective line, normalized: over the rationals
/// coprime integers with the first nonzero coordinate positive, otherwise the
/// first nonzero coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModuliPoint {
    coords: [Normal; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Normal {
    Int(BigInt),
    Other(String, u8),
}

impl ModuliPoint {
    pub fn new(a: FieldElem, b: FieldElem) -> Result<ModuliPoint> {
        if a.is_zero() && b.is_zero() {
            return Err(not_semistable());
        }
        if let (Some(x), Some(y)) = (a.to_rational(), b.to_rational()) {
            if !matches!(a, FieldElem::Mod { .. }) {
                return Ok(Self::from_rationals(&x, &y));
            }
        }
        let lead = if a.is_zero() { &b } else { &a };
        let inv = lead
            .inv()
            .ok_or_else(|| Error::Internal("noninvertible coordinate".into()))?;
        let (a, b) = (&a * &inv, &b * &inv);
        if let (Some(x), Some(y)) = (a.to_rational(), b.to_rational()) {
            if !matches!(a, FieldElem::Mod { .. }) {
                return Ok(Self::from_rationals(&x, &y));
            }
        }
        let tag = |e: &FieldElem| Normal::Other(e.to_string(), 0);
        Ok(ModuliPoint {
            coords: [tag(&a), tag(&b)],
        })
    }

    fn from_rationals(x: &BigRational, y: &BigRational) -> ModuliPoint {
        let den = x.denom().lcm(y.denom());
        let xi = x.numer() * (&den / x.denom());
        let yi = y.numer() * (&den / y.denom());
        let mut g = xi.gcd(&yi);
        let first = if xi.is_zero() { &yi } else { &xi };
        if first.is_negative() {
            g = -g;
        }
        ModuliPoint {
            coords: [Normal::Int(&xi / &g), Normal::Int(&yi / &g)],
        }
    }

    pub fn from_i64(a: i64, b: i64) -> Result<ModuliPoint> {
        let q = Field::Rational;
        ModuliPoint::new(q.from_i64(a), q.from_i64(b))
    }

    /// Integer coordinates, when the point is rational.
    pub fn integers(&self) -> Option<(BigInt, BigInt)> {
        match &self.coords {
            [Normal::Int(a), Normal::Int(b)] => Some((a.clone(), b.clone())),
            _ => None,
        }
    }

    /// `[1:0]`, the image of the singular (or double-root) locus.
    pub fn is_infinity(&self) -> bool {
        self.integers()
            .is_some_and(|(a, b)| a.is_one() && b.is_zero())
    }
}

impl fmt::Display for Normal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normal::Int(n) => write!(f, "{n}"),
            Normal::Other(s, _) => f.write_str(s),
        }
    }
}

impl fmt::Display for ModuliPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.coords[0], self.coords[1])
    }
}

impl Serialize for ModuliPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        for c in &self.coords {
            match c {
                Normal::Int(n) => match i64::try_from(n) {
                    Ok(v) => seq.serialize_element(&v)?,
                    Err(_) => seq.serialize_element(&n.to_string())?,
                },
                Normal::Other(s, _) => seq.serialize_element(s)?,
            }
        }
        seq.end()
    }
}

// ---------------------------------------------------------------------------
// Plane sections

/// The plane `{ x : x_{k+1+i} = -(M x_{0..=k})_i }` of a hypersurface `V(f)`,
/// `M` of size `(N - k - 1) x (k + 1)` for `f` in `N` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionFrame {
    form: SymTensor,
    chart: Matrix,
}

impl SectionFrame {
    pub fn new(form: SymTensor, chart: Matrix) -> Result<SectionFrame> {
        let n = form.nvars();
        if chart.cols() == 0 || chart.rows() + chart.cols() != n {
            return Err(Error::Dimension(format!(
                "chart of size {}x{} for a form in {n} variables",
                chart.rows(),
                chart.cols()
            )));
        }
        if chart.field() != form.field() {
            return Err(Error::InvalidInput(
                "chart and form over different fields".into(),
            ));
        }
        Ok(SectionFrame { form, chart })
    }

    pub fn form(&self) -> &SymTensor {
        &self.form
    }

    pub fn chart(&self) -> &Matrix {
        &self.chart
    }

    /// Projective dimension of the plane.
    pub fn k(&self) -> usize {
        self.chart.cols() - 1
    }

    /// `N x (k+1)` matrix whose columns span the plane: identity over `-M`.
    pub fn plane_basis(&self) -> Matrix {
        let n = self.form.nvars();
        let c = self.chart.cols();
        let field = self.form.field().clone();
        let mut b = Matrix::zeros(n, c, field.clone());
        for j in 0..c {
            b.set(j, j, field.one());
        }
        for i in 0..self.chart.rows() {
            for j in 0..c {
                b.set(c + i, j, -self.chart.get(i, j));
            }
        }
        b
    }

    pub fn contains(&self, x: &[FieldElem]) -> Result<bool> {
        let n = self.form.nvars();
        if x.len() != n {
            return Err(Error::Dimension(format!(
                "point with {} coordinates, expected {n}",
                x.len()
            )));
        }
        let c = self.chart.cols();
        Ok((0..self.chart.rows()).all(|i| {
            let mut acc = x[c + i].clone();
            for (j, xj) in x[..c].iter().enumerate() {
                acc = &acc + &(self.chart.get(i, j) * xj);
            }
            acc.is_zero()
        }))
    }
}

/// `f(x_0, ..., x_k, -a_1, ..., -a_{N-k-1})` with `a_i = (M x)_i`.
pub fn restrict_to_plane(frame: &SectionFrame) -> Result<SymTensor> {
    substitute(&frame.form, &frame.plane_basis())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "point", rename_all = "kebab-case")]
pub enum SectionModuli {
    Point(ModuliPoint),
    NotSemistable,
}

/// The moduli point of a plane section: cubic curves on planes (`d = 3, k = 2`)
/// or four points on lines (`d = 4, k = 1`).
pub fn section_moduli(frame: &SectionFrame) -> Result<SectionModuli> {
    let d = frame.form.degree();
    let k = frame.k();
    if (d, k) != (3, 2) && (d, k) != (4, 1) {
        return Err(Error::Precondition(format!(
            "section moduli need (d, k) = (3, 2) or (4, 1), got ({d}, {k})"
        )));
    }
    let h = restrict_to_plane(frame)?;
    if h.is_zero() {
        return Err(Error::Precondition(
            "the plane lies inside the hypersurface".into(),
        ));
    }
    let pair = if d == 3 {
        eta_cubic_pair(&ParamForm::constant(&h))?
    } else {
        eta_quartic_pair(&ParamForm::constant(&h))?
    };
    Ok(match pair_to_point(pair) {
        Some(p) => SectionModuli::Point(p),
        None => SectionModuli::NotSemistable,
    })
}

/// Whether the plane lies in the projective tangent space of `V(f)` at the
/// point `x` of the section (always true at a singular point).
pub fn singular_section_test(frame: &SectionFrame, x: &[FieldElem]) -> Result<bool> {
    if !frame.contains(x)? || x.iter().all(FieldElem::is_zero) {
        return Err(Error::Precondition("the point is not on the plane".into()));
    }
    if !frame.form.form().eval(x).is_zero() {
        return Err(Error::Precondition(
            "the point is not on the hypersurface".into(),
        ));
    }
    if restrict_to_plane(frame)?.is_zero() {
        return Err(Error::Precondition(
            "the plane lies inside the hypersurface".into(),
        ));
    }
    let n = frame.form.nvars();
    let grad: Vec<FieldElem> = (0..n)
        .map(|i| frame.form.form().derivative(i).eval(x))
        .collect();
    let basis = frame.plane_basis();
    Ok((0..basis.cols()).all(|j| {
        let mut acc = frame.form.field().zero();
        for (i, g) in grad.iter().enumerate() {
            acc = &acc + &(g * basis.get(i, j));
        }
        acc.is_zero()
    }))
}

/// Points of multiplicity `d` on `V(f)`, a linear subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLocus {
    pub ambient: usize,
    pub basis: Vec<Vec<FieldElem>>,
}

impl VertexLocus {
    /// Projective dimension; `-1` when empty.
    pub fn projective_dim(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    pub fn codimension(&self) -> usize {
        self.ambient - self.basis.len()
    }
}

/// Rows of the order-`(d-1)` divided derivatives of `f`, each a linear form.
fn top_derivative_rows(f: &SymTensor) -> Vec<Vec<FieldElem>> {
    let n = f.nvars();
    let field = f.field();
    monomials_of_degree(n, f.degree() - 1)
        .into_iter()
        .map(|beta| {
            (0..n)
                .map(|j| {
                    let mut e = beta.0.clone();
                    e[j] += 1;
                    &field.from_i64(beta.0[j] as i64 + 1) * &f.form().coeff(&Monomial(e))
                })
                .collect()
        })
        .collect()
}

/// Common zeros of all order-`(d-1)` partial derivatives.
pub fn vertex_locus(f: &SymTensor) -> Result<VertexLocus> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::InvalidInput(
            "vertex locus needs a nonzero form of positive degree".into(),
        ));
    }
    let n = f.nvars();
    let m = Matrix::from_rows(top_derivative_rows(f), f.field().clone())?;
    Ok(VertexLocus {
        ambient: n,
        basis: m.kernel(),
    })
}

/// Whether every order-`(d-1)` derivative vanishes at `x`.
pub fn has_full_multiplicity(f: &SymTensor, x: &[FieldElem]) -> bool {
    top_derivative_rows(f).iter().all(|row| {
        row.iter()
            .zip(x)
            .fold(f.field().zero(), |acc, (a, b)| &acc + &(a * b))
            .is_zero()
    })
}

/// Smoothness of `V(h)` in the projective plane (or space): the partials have
/// no common projective zero, decided by a Gröbner basis of their ideal.
pub fn is_smooth_hypersurface(h: &SymTensor) -> Result<bool> {
    if h.is_zero() {
        return Ok(false);
    }
    let n = h.nvars();
    let partials: Vec<Poly> = (0..n)
        .map(|i| h.form().derivative(i))
        .filter(|p| !p.is_zero())
        .collect();
    if partials.is_empty() {
        return Ok(false);
    }
    let gb = buchberger(&Ideal::new(partials)?, &MonomialOrder::Grevlex)?;
    let leads = gb.leading_monomials();
    Ok((0..n).all(|i| {
        leads
            .iter()
            .any(|m| m.0.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
    }))
}

// ---------------------------------------------------------------------------
// Weierstrass targets on the surface V(x0 x1^2 + x2^2 x3 + x1 x3^2)

/// The surface `x_0 x_1^2 + x_2^2 x_3 + x_1 x_3^2` with variables reordered so
/// that `x_0` comes last, ready for sections `x_0 = -(a_1 x_1 + a_3 x_3)`.
pub fn weierstrass_surface(field: &Field) -> SymTensor {
    SymTensor::parse("x3*x0^2 + x1^2*x2 + x0*x2^2", 4, Some(3), field).expect("valid surface")
}

/// `y^2 z = x^3 + a x z^2 + b z^3` in variables `(x, y, z)`.
pub fn weierstrass_cubic(a: &FieldElem, b: &FieldElem) -> Result<SymTensor> {
    let field = a.field();
    let mut p = Poly::zero(3, field.clone());
    let m = |e: [u32; 3]| Monomial(e.to_vec());
    p.add_term(m([0, 2, 1]), field.one());
    p.add_term(m([3, 0, 0]), -field.one());
    p.add_term(m([1, 0, 2]), -a.clone());
    p.add_term(m([0, 0, 3]), -b.clone());
    SymTensor::new(p, 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeierstrassPlane {
    /// `(a, b) = (-3 nu^2, 2 nu^3)`: the target is singular.
    OnCurve { nu: FieldElem },
    /// The section by `x_0 + a_1 x_1 + a_3 x_3 = 0`; `nu` solves
    /// `nu^3 + a nu + b = 0` and may live in a cubic extension.
    Plane {
        a1: FieldElem,
        a3: FieldElem,
        nu: FieldElem,
    },
}

impl WeierstrassPlane {
    /// The section frame on `weierstrass_surface` over the field of the parameters.
    pub fn frame(&self) -> Result<SectionFrame> {
        match self {
            WeierstrassPlane::OnCurve { .. } => Err(Error::Precondition(
                "targets on the cuspidal curve have no plane".into(),
            )),
            WeierstrassPlane::Plane { a1, a3, .. } => {
                let field = a1.field();
                let chart = Matrix::from_rows(
                    vec![vec![a1.clone(), field.zero(), a3.clone()]],
                    field.clone(),
                )?;
                SectionFrame::new(weierstrass_surface(&field), chart)
            }
        }
    }
}

/// Rational roots of a monic-able cubic `t^3 + a t + b` with rational coefficients.
fn rational_root_of_depressed_cubic(a: &BigRational, b: &BigRational) -> Option<BigRational> {
    // t = u / L with L = lcm of denominators makes u^3 + a L^2 u + b L^3 integral
    let l = a.denom().lcm(b.denom());
    let c1 = (a * BigRational::from_integer(&l * &l)).to_integer();
    let c0 = (b * BigRational::from_integer(&l * &l * &l)).to_integer();
    let eval = |u: &BigInt| u * u * u + &c1 * u + &c0;
    let candidates: Vec<BigInt> = if c0.is_zero() {
        vec![BigInt::zero()]
    } else {
        divisors(&c0.abs())?
    };
    for u in candidates {
        for s in [u.clone(), -u] {
            if eval(&s).is_zero() {
                return Some(BigRational::new(s, l.clone()));
            }
        }
    }
    None
}

/// Positive divisors by trial division; `None` when the number is too large to factor quickly.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000_000u64);
    while &p * &p <= m {
        if p > limit {
            return None;
        }
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
    }
    Some(divs)
}

/// A hyperplane section of `V(x0 x1^2 + x2^2 x3 + x1 x3^2)` projectively
/// equivalent to `y^2 z = x^3 + a x z^2 + b z^3`, or `OnCurve` when
/// `4a^3 + 27b^2 = 0`. Uses `a_1 = 1/c`, `a_3 = 3 nu a_1` with
/// `nu^3 + a nu + b = 0` and `c = -a - 3 nu^2`.
pub fn weierstrass_plane_for_target(a: &FieldElem, b: &FieldElem) -> Result<WeierstrassPlane> {
    let field = a.field();
    let (Some(ar), Some(br)) = (a.to_rational(), b.to_rational()) else {
        return Err(Error::InvalidInput("targets must be rational".into()));
    };
    if !matches!(field, Field::Rational) || !matches!(b.field(), Field::Rational) {
        return Err(Error::InvalidInput("targets must be rational".into()));
    }
    let disc = BigRational::from_integer(4.into()) * &ar * &ar * &ar
        + BigRational::from_integer(27.into()) * &br * &br;
    if disc.is_zero() {
        let nu = if ar.is_zero() {
            BigRational::zero()
        } else {
            -BigRational::from_integer(3.into()) * &br / (BigRational::from_integer(2.into()) * &ar)
        };
        return Ok(WeierstrassPlane::OnCurve {
            nu: FieldElem::Rat(nu),
        });
    }
    let nu = match rational_root_of_depressed_cubic(&ar, &br) {
        Some(r) => FieldElem::Rat(r),
        None => {
            let ext = Field::extension(vec![
                br.clone(),
                ar.clone(),
                BigRational::zero(),
                BigRational::one(),
            ])?;
            ext.generator().expect("extension has a generator")
        }
    };
    let f = nu.field();
    let a_f = f.from_rational(&ar)?;
    let c = -(&a_f + &(&f.from_i64(3) * &(&nu * &nu)));
    let a1 = c
        .inv()
        .ok_or_else(|| Error::Internal("c vanished off the cuspidal curve".into()))?;
    let a3 = &(&f.from_i64(3) * &nu) * &a1;
    Ok(WeierstrassPlane::Plane { a1, a3, nu })
}

/// Equality of projective points, possibly over different fields.
pub fn same_moduli(p: &SectionModuli, q: &ModuliPoint) -> bool {
    matches!(p, SectionModuli::Point(x) if x == q)
}

// ---------------------------------------------------------------------------
// Section scans

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    /// Chart entries are uniform integers in `[-box_size, box_size]`.
    pub box_size: i64,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            box_size: 20,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub f: String,
    pub d: u32,
    pub k: usize,
    #[serde(rename = "N")]
    pub samples: usize,
    pub distinct: usize,
    pub points: Vec<ModuliPoint>,
    #[serde(rename = "rejected_insideX")]
    pub rejected_inside: usize,
    pub rejected_unstable: usize,
    pub vertex_locus_dim: i64,
    /// `"one-point"` when the vertex locus is too large for the sections to vary.
    pub prediction: String,
}

/// Sample `samples` random planes of dimension `k` and collect their moduli points.
pub fn section_scan(
    f: &SymTensor,
    k: usize,
    config: &ScanConfig,
    samples: usize,
) -> Result<ScanReport> {
    let d = f.degree();
    if (d, k) != (3, 2) && (d, k) != (4, 1) {
        return Err(Error::Precondition(format!(
            "section scans need (d, k) = (3, 2) or (4, 1), got ({d}, {k})"
        )));
    }
    let total = f.nvars();
    if total < k + 2 {
        return Err(Error::Dimension(format!(
            "a form in {total} variables has no proper {k}-planes"
        )));
    }
    if config.box_size < 1 {
        return Err(Error::InvalidInput("sample box must be positive".into()));
    }
    let n = total as i64 - 2;
    let locus = vertex_locus(f)?;
    let field = f.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut points = Vec::new();
    let (mut inside, mut unstable) = (0, 0);
    for _ in 0..samples {
        let rows: Vec<Vec<FieldElem>> = (0..total - k - 1)
            .map(|_| {
                (0..=k)
                    .map(|_| field.from_i64(rng.gen_range(-config.box_size..=config.box_size)))
                    .collect()
            })
            .collect();
        let frame = SectionFrame::new(f.clone(), Matrix::from_rows(rows, field.clone())?)?;
        if restrict_to_plane(&frame)?.is_zero() {
            inside += 1;
            continue;
        }
        match section_moduli(&frame)? {
            SectionModuli::Point(p) => points.push(p),
            SectionModuli::NotSemistable => unstable += 1,
        }
    }
    let distinct = points.iter().collect::<BTreeSet<_>>().len();
    let prediction = if locus.projective_dim() < n - k as i64 {
        "P1"
    } else {
        "one-point"
    };
    Ok(ScanReport {
        schema: 1,
        f: f.to_string(),
        d,
        k,
        samples,
        distinct,
        points,
        rejected_inside: inside,
        rejected_unstable: unstable,
        vertex_locus_dim: locus.projective_dim(),
        prediction: prediction.into(),
    })
}
