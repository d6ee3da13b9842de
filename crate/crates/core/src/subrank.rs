//! Symmetric subrank: the per-level decision procedure, generic bounds,
//! spanning certificates, the differential rank check and unit-tensor facts.

use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::groebner::{
    buchberger_with, ideal_membership_with, GroebnerConfig, Ideal, MonomialOrder,
};
use crate::linalg::{rank_of_rows, Matrix};
use crate::poly::{monomial_count, monomials_of_degree, Monomial, Poly};
use crate::tensor::{check_admissible, unit_tensor_over, SymTensor};

// ---------------------------------------------------------------------------
// Restriction systems and the decision procedure

/// Equations in the `r*n` entries of an `r x n` matrix `A` (row-major,
/// unknown `a_ij` is variable `i*n + j`) expressing `f(A^T y) = y_0^d + ... + y_{r-1}^d`.
/// One generator per degree-`d` monomial in `r` variables.
pub fn restriction_system(f: &SymTensor, r: usize) -> Result<Ideal> {
    f.check_admissible()?;
    let n = f.nvars();
    if r == 0 || r > n {
        return Err(Error::Precondition(format!(
            "need 1 <= r <= n = {n}, got r = {r}"
        )));
    }
    if f.is_zero() {
        return Err(Error::Precondition(
            "the zero form has no restriction system".into(),
        ));
    }
    let field = f.field().clone();
    let unknowns = r * n;
    let total = unknowns + r;
    // x_j -> sum_i a_ij y_i in the ring of (a, y).
    let images: Vec<Poly> = (0..n)
        .map(|j| {
            let mut p = Poly::zero(total, field.clone());
            for i in 0..r {
                let mut e = vec![0u32; total];
                e[i * n + j] = 1;
                e[unknowns + i] = 1;
                p.add_term(Monomial(e), field.one());
            }
            p
        })
        .collect();
    let expanded = f.form().compose(&images);
    let ys = monomials_of_degree(r, f.degree());
    let mut gens: Vec<Poly> = ys
        .iter()
        .map(|m| {
            let target = m.0.iter().filter(|&&e| e > 0).count() == 1;
            if target {
                Poly::constant(unknowns, -field.one())
            } else {
                Poly::zero(unknowns, field.clone())
            }
        })
        .collect();
    for (m, c) in expanded.terms() {
        let y = Monomial(m.0[unknowns..].to_vec());
        let k = ys
            .iter()
            .position(|t| t == &y)
            .expect("y-part has degree d");
        gens[k].add_term(Monomial(m.0[..unknowns].to_vec()), c.clone());
    }
    Ideal::new(gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LevelStatus {
    Feasible,
    Infeasible,
    Inconclusive,
}

/// Why a level received its status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Setting all other coordinates to zero leaves `sum c_i x_i^d` with every
    /// `c_i` nonzero; rescaling by `d`-th roots gives the unit tensor.
    CoordinateWitness {
        coordinates: Vec<usize>,
        coefficients: Vec<String>,
    },
    /// The restriction system has a reduced basis different from `{1}`.
    ConsistentBasis {
        basis_size: usize,
        leading_monomials: Vec<String>,
    },
    /// The restriction system generates the unit ideal.
    UnitIdeal {
        pairs_processed: usize,
    },
    /// The form depends on fewer than `r` linear forms.
    EssentialVariables {
        count: usize,
    },
    /// In its essential variables the form is (or is not) equivalent to the unit
    /// tensor, decided by the structure of its center algebra.
    CenterAlgebra {
        report: CenterReport,
    },
    /// `f(M y)` is equivalent to the unit tensor in `r` variables.
    SectionWitness {
        matrix: Vec<Vec<String>>,
        report: CenterReport,
    },
    /// Deduced from the verdict at another level.
    Monotonicity {
        from_level: usize,
    },
    ResourceLimit {
        message: String,
    },
}

/// Result of an optional reduction of the system modulo a prime. Only a signal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefilterSignal {
    pub prime: u64,
    /// `None` when the reduction was not possible or hit a cap.
    pub inconsistent_mod_p: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelVerdict {
    pub r: usize,
    pub status: LevelStatus,
    pub evidence: Evidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefilter: Option<PrefilterSignal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubrankVerdict {
    pub n: usize,
    pub d: u32,
    pub field: String,
    pub lo: usize,
    pub hi: usize,
    pub levels: Vec<LevelVerdict>,
}

impl SubrankVerdict {
    /// The subrank, when every level up to it is feasible and the next is not.
    pub fn value(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }

    pub fn status(&self, r: usize) -> Option<LevelStatus> {
        self.levels.iter().find(|l| l.r == r).map(|l| l.status)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubrankOptions {
    pub r_cap: Option<usize>,
    pub groebner: GroebnerConfig,
    /// Run the system modulo this prime first and record the outcome.
    pub prefilter_prime: Option<u64>,
    pub coordinate_witness: bool,
    /// Decide the level equal to the essential variable count by the center algebra.
    pub center_test: bool,
    /// Number of random `n x r` sections tried for a feasibility witness below that level.
    pub section_attempts: usize,
    pub seed: u64,
}

impl Default for SubrankOptions {
    fn default() -> Self {
        SubrankOptions {
            r_cap: None,
            groebner: GroebnerConfig::default(),
            prefilter_prime: None,
            coordinate_witness: true,
            center_test: true,
            section_attempts: 4,
            seed: 0,
        }
    }
}

fn coordinate_witness(f: &SymTensor, r: usize) -> Option<Evidence> {
    let n = f.nvars();
    let d = f.degree();
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        let inside = |m: &Monomial| {
            m.0.iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || subset.contains(&i))
        };
        let ok = f
            .form()
            .terms()
            .filter(|(m, _)| inside(m))
            .all(|(m, _)| m.0.iter().filter(|&&e| e > 0).count() == 1);
        if ok {
            let coeffs: Vec<FieldElem> = subset
                .iter()
                .map(|&i| {
                    let mut e = vec![0; n];
                    e[i] = d;
                    f.form().coeff(&Monomial(e))
                })
                .collect();
            if coeffs.iter().all(|c| !c.is_zero()) {
                return Some(Evidence::CoordinateWitness {
                    coordinates: subset.clone(),
                    coefficients: coeffs.iter().map(ToString::to_string).collect(),
                });
            }
        }
        // next r-subset in lexicographic order
        let mut k = r;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if subset[k] < n - r + k {
                subset[k] += 1;
                for j in k + 1..r {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn settled(r: usize, status: LevelStatus, evidence: Evidence) -> LevelVerdict {
    LevelVerdict {
        r,
        status,
        evidence,
        prefilter: None,
    }
}

fn section_witness(f: &SymTensor, r: usize, opts: &SubrankOptions) -> Result<Option<Evidence>> {
    let n = f.nvars();
    let field = f.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((r as u64) << 32));
    for _ in 0..opts.section_attempts {
        let rows: Vec<Vec<FieldElem>> = (0..n)
            .map(|_| {
                (0..r)
                    .map(|_| field.from_i64(rng.gen_range(-3..=3)))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(rows, field.clone())?;
        let g = crate::tensor::substitute(f, &m)?;
        if g.is_zero() {
            continue;
        }
        let (ok, report) = unit_orbit_test(&g)?;
        if ok {
            let matrix = (0..n)
                .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                .collect();
            return Ok(Some(Evidence::SectionWitness { matrix, report }));
        }
    }
    Ok(None)
}

fn decide_level(f: &SymTensor, r: usize, opts: &SubrankOptions) -> Result<LevelVerdict> {
    let exact_derivatives = derivatives_faithful(f.degree(), f.field());
    let essential = exact_derivatives.then(|| essential_variable_count(f));
    if let Some(k) = essential {
        if r > k {
            return Ok(settled(
                r,
                LevelStatus::Infeasible,
                Evidence::EssentialVariables { count: k },
            ));
        }
    }
    if opts.coordinate_witness {
        if let Some(ev) = coordinate_witness(f, r) {
            return Ok(settled(r, LevelStatus::Feasible, ev));
        }
    }
    if let Some(k) = essential {
        if opts.center_test && r == k {
            let (g, _) = essential_form(f)?;
            let (ok, report) = unit_orbit_test(&g)?;
            let status = if ok {
                LevelStatus::Feasible
            } else {
                LevelStatus::Infeasible
            };
            return Ok(settled(r, status, Evidence::CenterAlgebra { report }));
        }
        if r < k {
            if let Some(ev) = section_witness(f, r, opts)? {
                return Ok(settled(r, LevelStatus::Feasible, ev));
            }
        }
    }
    let ideal = restriction_system(f, r)?;
    let prefilter = match opts.prefilter_prime {
        Some(p) => {
            let signal = Field::prime(p)
                .and_then(|fp| ideal.to_field(&fp))
                .and_then(|i| buchberger_with(&i, &MonomialOrder::Grevlex, &opts.groebner))
                .map(|gb| gb.is_unit())
                .ok();
            Some(PrefilterSignal {
                prime: p,
                inconsistent_mod_p: signal,
            })
        }
        None => None,
    };
    let (status, evidence) = match buchberger_with(&ideal, &MonomialOrder::Grevlex, &opts.groebner)
    {
        Ok(gb) if gb.is_unit() => (
            LevelStatus::Infeasible,
            Evidence::UnitIdeal {
                pairs_processed: gb.stats().pairs_processed,
            },
        ),
        Ok(gb) => (
            LevelStatus::Feasible,
            Evidence::ConsistentBasis {
                basis_size: gb.basis().len(),
                leading_monomials: gb
                    .leading_monomials()
                    .iter()
                    .map(|m| m.fmt_with(&unknown_names(r, f.nvars())))
                    .collect(),
            },
        ),
        Err(Error::ResourceLimit(message)) => (
            LevelStatus::Inconclusive,
            Evidence::ResourceLimit { message },
        ),
        Err(e) => return Err(e),
    };
    Ok(LevelVerdict {
        r,
        status,
        evidence,
        prefilter,
    })
}

/// Names `a<i>_<j>` for the unknowns of a restriction system.
pub fn unknown_names(r: usize, n: usize) -> Vec<String> {
    (0..r)
        .flat_map(|i| (0..n).map(move |j| format!("a{i}_{j}")))
        .collect()
}

pub fn symmetric_subrank(f: &SymTensor, r_cap: Option<usize>) -> Result<SubrankVerdict> {
    symmetric_subrank_with(
        f,
        &SubrankOptions {
            r_cap,
            ..SubrankOptions::default()
        },
    )
}

/// Decide each level `r = 1, 2, ...` upward. The first infeasible level settles
/// every level above it.
pub fn symmetric_subrank_with(f: &SymTensor, opts: &SubrankOptions) -> Result<SubrankVerdict> {
    f.check_admissible()?;
    let n = f.nvars();
    let d = f.degree();
    let field = f.field().tag();
    if f.is_zero() {
        return Ok(SubrankVerdict {
            n,
            d,
            field,
            lo: 0,
            hi: 0,
            levels: Vec::new(),
        });
    }
    let top = opts.r_cap.map_or(n, |c| c.min(n));
    let mut levels: Vec<LevelVerdict> = Vec::new();
    let mut first_infeasible: Option<usize> = None;
    for r in 1..=top {
        if let Some(r0) = first_infeasible {
            levels.push(LevelVerdict {
                r,
                status: LevelStatus::Infeasible,
                evidence: Evidence::Monotonicity { from_level: r0 },
                prefilter: None,
            });
            continue;
        }
        let v = decide_level(f, r, opts)?;
        if v.status == LevelStatus::Infeasible {
            first_infeasible = Some(r);
        }
        levels.push(v);
    }
    // A feasible level makes every lower level feasible.
    if let Some(top_feasible) = levels
        .iter()
        .filter(|l| l.status == LevelStatus::Feasible)
        .map(|l| l.r)
        .max()
    {
        for l in levels.iter_mut().filter(|l| l.r < top_feasible) {
            match l.status {
                LevelStatus::Infeasible => {
                    return Err(Error::Internal(format!(
                        "level {} infeasible below feasible level {top_feasible}",
                        l.r
                    )))
                }
                LevelStatus::Inconclusive => {
                    l.status = LevelStatus::Feasible;
                    l.evidence = Evidence::Monotonicity {
                        from_level: top_feasible,
                    };
                }
                LevelStatus::Feasible => {}
            }
        }
    }
    let lo = levels
        .iter()
        .filter(|l| l.status == LevelStatus::Feasible)
        .map(|l| l.r)
        .max()
        .unwrap_or(0);
    let hi = match first_infeasible {
        Some(r0) => r0 - 1,
        None => n,
    };
    Ok(SubrankVerdict {
        n,
        d,
        field,
        lo,
        hi,
        levels,
    })
}

// ---------------------------------------------------------------------------
// Bounds

fn factorial(d: u32) -> Result<u128> {
    (1..=d as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .ok_or_else(overflow)
}

fn overflow() -> Error {
    Error::InvalidInput("bound arithmetic overflows 128 bits".into())
}

fn check_bound_args(n: u64, d: u32) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("bounds need d >= 3, got {d}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("bounds need n >= 1".into()));
    }
    Ok(())
}

/// Largest `r >= 0` with `r^k <= x`.
fn floor_root(x: u128, k: u32) -> u128 {
    let mut r = x.nth_root(k);
    // guard against rounding at the edges
    while r > 0 && pow_le(r, k, x) != Some(true) {
        r -= 1;
    }
    while pow_le(r + 1, k, x) == Some(true) {
        r += 1;
    }
    r
}

fn pow_le(base: u128, k: u32, x: u128) -> Option<bool> {
    match base.checked_pow(k) {
        Some(v) => Some(v <= x),
        None => Some(false),
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let mut acc = 1u128;
    for i in 1..=k {
        acc = acc.checked_mul(n - k + i)? / i;
    }
    Some(acc)
}

/// Upper bound on the generic symmetric subrank.
pub fn generic_upper_bound(n: u64, d: u32) -> Result<u64> {
    check_bound_args(n, d)?;
    if d == 3 {
        // floor(sqrt(6n + 1/4) - 3/2) = floor((sqrt(24n + 1) - 3) / 2)
        let s = (24 * n as u128 + 1).sqrt();
        return Ok(((s - 3) / 2) as u64);
    }
    let x = factorial(d)?.checked_mul(n as u128).ok_or_else(overflow)?;
    Ok(floor_root(x, d - 1) as u64)
}

fn hl_holds(n: u128, r: u128, d: u32) -> Result<bool> {
    let lhs = (n - r) * r;
    let rhs = binomial(r + d as u128 - 1, d as u128).ok_or_else(overflow)?;
    Ok(lhs >= rhs)
}

/// Largest `r >= 1` with `(n - r) r >= C(r + d - 1, d)`, or 0.
pub fn hl_condition_max_r(n: u64, d: u32) -> Result<u64> {
    check_bound_args(n, d)?;
    // The condition forces r^(d-1) <= d! n, so the scan is short.
    let limit = floor_root(
        factorial(d)?.checked_mul(n as u128).ok_or_else(overflow)?,
        d - 1,
    )
    .min(n as u128 - 1);
    let mut best = 0;
    for r in 1..=limit {
        if hl_holds(n as u128, r, d)? {
            best = r;
        }
    }
    Ok(best as u64)
}

/// `floor(sqrt(6n + 73/4) - 9/2)` for cubics, clamped below at 0.
pub fn cubic_lower_closed_form(n: u64) -> i64 {
    let s = (24 * n as u128 + 73).sqrt() as i64;
    (s - 9).div_euclid(2)
}

/// Lower bound on the generic symmetric subrank via the spanning condition.
pub fn generic_lower_bound(n: u64, d: u32) -> Result<u64> {
    let scan = hl_condition_max_r(n, d)?;
    if d == 3 {
        let closed = cubic_lower_closed_form(n);
        if closed >= 1 && closed as u64 != scan {
            return Err(Error::Internal(format!(
                "cubic lower bound at n = {n}: closed form {closed}, scan {scan}"
            )));
        }
        return Ok(scan.max(closed.max(0) as u64));
    }
    Ok(scan)
}

/// `floor(2 (4 d! n)^(1/(d-1)))`: largest `m` with `m^(d-1) <= 2^(d-1) 4 d! n`.
pub fn border_upper_bound(n: u64, d: u32) -> Result<u64> {
    check_bound_args(n, d)?;
    let x = factorial(d)?
        .checked_mul(4)
        .and_then(|v| v.checked_mul(n as u128))
        .and_then(|v| v.checked_mul(1u128 << (d - 1)))
        .ok_or_else(overflow)?;
    Ok(floor_root(x, d - 1) as u64)
}

/// Whether `border / generic` lies in `[1, 2 * 4^(1/(d-1)) + 1/10]`, decided
/// with integer arithmetic.
pub fn border_ratio_within(n: u64, d: u32) -> Result<(bool, bool)> {
    let b = border_upper_bound(n, d)? as u128;
    let g = generic_upper_bound(n, d)? as u128;
    if g == 0 {
        return Ok((false, false));
    }
    let lower_ok = b >= g;
    // b/g <= c + 1/10  <=>  (10b - g) <= 20 g 4^(1/(d-1))  <=>  (10b - g)^(d-1) <= (20g)^(d-1) * 4
    let upper_ok = if 10 * b <= g {
        true
    } else {
        let lhs = (10 * b - g).checked_pow(d - 1).ok_or_else(overflow)?;
        let rhs = (20 * g)
            .checked_pow(d - 1)
            .and_then(|v| v.checked_mul(4))
            .ok_or_else(overflow)?;
        lhs <= rhs
    };
    Ok((lower_ok, upper_ok))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub schema: u32,
    pub n: u64,
    pub d: u32,
    pub generic_upper: u64,
    pub generic_lower: u64,
    pub border_upper: u64,
    pub hl_condition_max_r: u64,
    /// Only for cubics; `None` otherwise.
    pub closed_form_lower: Option<i64>,
}

/// The upper bounds here are additionally capped by `n`.
pub fn bounds_report(n: u64, d: u32) -> Result<BoundsReport> {
    Ok(BoundsReport {
        schema: 1,
        n,
        d,
        generic_upper: generic_upper_bound(n, d)?.min(n),
        generic_lower: generic_lower_bound(n, d)?,
        border_upper: border_upper_bound(n, d)?.min(n),
        hl_condition_max_r: hl_condition_max_r(n, d)?,
        closed_form_lower: (d == 3).then(|| cubic_lower_closed_form(n)),
    })
}

// ---------------------------------------------------------------------------
// Spanning certificates

pub const DEFAULT_BOX: u64 = 10;

/// Forms `h_1..h_{n-r}` of degree `d-1` in `r` variables whose multiples by
/// the `r` variables span all degree-`d` forms in those variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCertificate {
    pub schema: u32,
    pub kind: String,
    pub n: usize,
    pub d: u32,
    pub r: usize,
    pub seed: u64,
    pub field: String,
    #[serde(rename = "box")]
    pub box_bound: u64,
    pub forms: Vec<String>,
    pub rank: usize,
    pub verdict: String,
}

fn sample_forms(
    n: usize,
    d: u32,
    r: usize,
    seed: u64,
    field: &Field,
    box_bound: u64,
) -> Result<Vec<Poly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_of_degree(r, d - 1);
    let b = box_bound as i64;
    (0..n - r)
        .map(|_| {
            let terms = monos
                .iter()
                .map(|m| {
                    let c = match field {
                        Field::Rational => field.from_i64(rng.gen_range(-b..=b)),
                        Field::Prime(p) => FieldElem::Mod {
                            v: rng.gen_range(0..*p),
                            p: *p,
                        },
                        Field::Extension(_) => {
                            return Err(Error::InvalidInput(
                                "certificates are sampled over QQ or F_p".into(),
                            ))
                        }
                    };
                    Ok((m.clone(), c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::from_terms(r, field.clone(), terms))
        })
        .collect()
}

/// Rank of the products `x_j h_i` inside the degree-`d` forms in `r` variables.
pub fn span_rank(forms: &[Poly], r: usize, d: u32, field: &Field) -> usize {
    let cols = monomials_of_degree(r, d);
    let rows: Vec<Vec<FieldElem>> = forms
        .iter()
        .flat_map(|h| (0..r).map(move |j| h.mul(&Poly::var(r, j, field.clone()))))
        .map(|p| cols.iter().map(|m| p.coeff(m)).collect())
        .collect();
    rank_of_rows(rows, cols.len(), field)
}

pub fn certify_lower_bound(
    n: usize,
    d: u32,
    r: usize,
    seed: u64,
    field: &Field,
    box_bound: u64,
) -> Result<LowerBoundCertificate> {
    check_admissible(d, field)?;
    if r == 0 || r >= n {
        return Err(Error::Precondition(format!(
            "need 1 <= r < n, got r = {r}, n = {n}"
        )));
    }
    let target = monomial_count(r, d);
    if (n - r) * r < target {
        return Err(Error::Precondition(format!(
            "spanning condition violated: (n - r) r = {} < C(r + d - 1, d) = {target}",
            (n - r) * r
        )));
    }
    let forms = sample_forms(n, d, r, seed, field, box_bound)?;
    let rank = span_rank(&forms, r, d, field);
    if rank < target {
        return Err(Error::SpanDeficient { seed, rank, target });
    }
    Ok(LowerBoundCertificate {
        schema: 1,
        kind: "lower-bound".into(),
        n,
        d,
        r,
        seed,
        field: field.tag(),
        box_bound,
        forms: forms.iter().map(ToString::to_string).collect(),
        rank,
        verdict: "valid".into(),
    })
}

impl LowerBoundCertificate {
    pub fn field(&self) -> Result<Field> {
        Field::parse_tag(&self.field)
    }

    pub fn parsed_forms(&self) -> Result<Vec<Poly>> {
        let field = self.field()?;
        self.forms
            .iter()
            .map(|s| crate::parse::parse_poly(s, self.r, &field))
            .collect()
    }

    /// Recheck the rank from the stored forms and regenerate them from the seed.
    pub fn verify(&self) -> Result<bool> {
        let field = self.field()?;
        let forms = self.parsed_forms()?;
        let regenerated = sample_forms(self.n, self.d, self.r, self.seed, &field, self.box_bound)?;
        let target = monomial_count(self.r, self.d);
        Ok(forms == regenerated
            && self.rank == target
            && span_rank(&forms, self.r, self.d, &field) == target)
    }

    /// `x_0^d + ... + x_{r-1}^d + sum_i x_{r+i} h_i` in `n` variables.
    pub fn witness_form(&self) -> Result<SymTensor> {
        let field = self.field()?;
        let mut f = unit_tensor_over(self.r, self.d, &field)
            .embed(self.n)?
            .into_form();
        let map: Vec<usize> = (0..self.r).collect();
        for (i, h) in self.parsed_forms()?.iter().enumerate() {
            let lifted = h.remap_vars(self.n, &map);
            f = f.add(&lifted.mul(&Poly::var(self.n, self.r + i, field.clone())));
        }
        SymTensor::new(f, self.d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<LowerBoundCertificate> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("certificate JSON: {e}")))
    }
}

// ---------------------------------------------------------------------------
// Essential variables and the center algebra

/// Whether first derivatives and the Hessian see every monomial of a degree-`d` form.
fn derivatives_faithful(d: u32, field: &Field) -> bool {
    let p = field.characteristic();
    p == 0 || p > d as u64
}

/// Columns are the first partials of `f`, rows the degree `d-1` monomials.
fn derivative_matrix(f: &SymTensor) -> Matrix {
    let n = f.nvars();
    let field = f.field().clone();
    let mons = monomials_of_degree(n, f.degree().saturating_sub(1));
    let partials: Vec<Poly> = (0..n).map(|j| f.form().derivative(j)).collect();
    let rows = mons
        .iter()
        .map(|m| partials.iter().map(|p| p.coeff(m)).collect())
        .collect();
    Matrix::from_rows(rows, field.clone()).unwrap_or_else(|_| Matrix::zeros(0, n, field))
}

/// Dimension of the smallest subspace `U` with `f` in `S^d U`, read off the span
/// of the first partial derivatives. Exact when the characteristic is 0 or exceeds `d`.
pub fn essential_variable_count(f: &SymTensor) -> usize {
    if f.is_zero() {
        return 0;
    }
    derivative_matrix(f).rank()
}

/// The form in `k` essential variables together with the `n x k` matrix `M`
/// with `f(M y)` equal to it. The columns of `M` extend to a basis whose
/// remaining vectors are directions `f` ignores, so `f` and the result lie in
/// one `GL_n` orbit after padding with unused variables.
pub fn essential_form(f: &SymTensor) -> Result<(SymTensor, Matrix)> {
    if f.is_zero() {
        return Err(Error::Precondition(
            "the zero form has no essential variables".into(),
        ));
    }
    let n = f.nvars();
    let field = f.field().clone();
    let kernel = derivative_matrix(f).kernel();
    let mut chosen: Vec<Vec<FieldElem>> = kernel.clone();
    let mut columns: Vec<Vec<FieldElem>> = Vec::new();
    for i in 0..n {
        let e: Vec<FieldElem> = (0..n)
            .map(|j| if i == j { field.one() } else { field.zero() })
            .collect();
        let mut trial = chosen.clone();
        trial.push(e.clone());
        if rank_of_rows(trial, n, &field) > chosen.len() {
            chosen.push(e.clone());
            columns.push(e);
        }
    }
    let k = columns.len();
    let m = Matrix::from_rows(
        (0..n)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect(),
        field,
    )?;
    let g = crate::tensor::substitute(f, &m)?;
    debug_assert_eq!(essential_variable_count(&g), k);
    Ok((g, m))
}

/// Structure of `{ Z : H Z is symmetric }`, `H` the Hessian matrix of the form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub variables: usize,
    pub dimension: usize,
    pub commutative: bool,
    /// Closed under matrix products.
    pub closed: bool,
    /// Rank of `(Z_a, Z_b) -> tr(Z_a Z_b)` on a basis.
    pub trace_form_rank: usize,
}

impl CenterReport {
    /// True iff the algebra is isomorphic to `K^n` (split semisimple of full size).
    pub fn is_split(&self) -> bool {
        self.dimension == self.variables
            && self.commutative
            && self.closed
            && self.trace_form_rank == self.variables
    }
}

/// A basis of the matrices `Z` with `H_f Z` symmetric.
pub fn center_algebra(f: &SymTensor) -> Result<Vec<Matrix>> {
    let d = f.degree();
    if d < 3 {
        return Err(Error::Precondition(format!(
            "center algebra needs degree >= 3, got {d}"
        )));
    }
    let n = f.nvars();
    let field = f.field().clone();
    let hessian: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            let di = f.form().derivative(i);
            (0..n).map(|j| di.derivative(j)).collect()
        })
        .collect();
    let mons = monomials_of_degree(n, d - 2);
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // (H Z)_ij - (H Z)_ji = sum_k H_ik Z_kj - H_jk Z_ki
            for m in &mons {
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    row[k * n + j] = &row[k * n + j] + &hessian[i][k].coeff(m);
                    row[k * n + i] = &row[k * n + i] - &hessian[j][k].coeff(m);
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(1, n * n, field.clone())
    } else {
        Matrix::from_rows(rows, field.clone())?
    };
    system
        .kernel()
        .into_iter()
        .map(|v| {
            Matrix::from_rows(
                v.chunks(n).map(<[FieldElem]>::to_vec).collect(),
                field.clone(),
            )
        })
        .collect()
}

fn flatten(m: &Matrix) -> Vec<FieldElem> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

pub fn center_report(f: &SymTensor) -> Result<CenterReport> {
    let basis = center_algebra(f)?;
    let n = f.nvars();
    let field = f.field().clone();
    let mut commutative = true;
    let mut spanning: Vec<Vec<FieldElem>> = basis.iter().map(flatten).collect();
    let mut gram = vec![vec![field.zero(); basis.len()]; basis.len()];
    for (a, za) in basis.iter().enumerate() {
        for (b, zb) in basis.iter().enumerate().skip(a) {
            let ab = za.mul(zb)?;
            let ba = zb.mul(za)?;
            if ab != ba {
                commutative = false;
            }
            let mut tr = field.zero();
            for i in 0..n {
                tr = &tr + ab.get(i, i);
            }
            gram[a][b] = tr.clone();
            gram[b][a] = tr;
            spanning.push(flatten(&ab));
            spanning.push(flatten(&ba));
        }
    }
    let dimension = basis.len();
    let closed = rank_of_rows(spanning, n * n, &field) == dimension;
    Ok(CenterReport {
        variables: n,
        dimension,
        commutative,
        closed,
        trace_form_rank: rank_of_rows(gram, dimension, &field),
    })
}

/// Decide whether `f` is `GL_n`-equivalent to `x_0^d + ... + x_{n-1}^d` over the
/// algebraic closure. Requires `d >= 3` and characteristic 0 or above `d`.
pub fn unit_orbit_test(f: &SymTensor) -> Result<(bool, CenterReport)> {
    let d = f.degree();
    if !derivatives_faithful(d, f.field()) {
        return Err(Error::Precondition(format!(
            "center test needs characteristic 0 or above {d}"
        )));
    }
    let report = center_report(f)?;
    let full = essential_variable_count(f) == f.nvars();
    Ok((full && report.is_split(), report))
}

// ---------------------------------------------------------------------------
// Contraction and the differential

/// `(1/d) sum_i y_i df/dx_i`, so that `x_i^d` contracted with `e_i` is `x_i^(d-1)`.
pub fn contraction(f: &SymTensor, y: &[FieldElem]) -> Result<SymTensor> {
    let n = f.nvars();
    if y.len() != n {
        return Err(Error::Dimension(format!(
            "covector of length {} for a form in {n} variables",
            y.len()
        )));
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::InvalidInput("cannot contract a constant".into()));
    }
    let inv_d = f.field().from_i64(d as i64).inv().ok_or_else(|| {
        Error::InvalidInput(format!("degree {d} is not invertible in {}", f.field()))
    })?;
    let mut acc = Poly::zero(n, f.field().clone());
    for (i, yi) in y.iter().enumerate() {
        if !yi.is_zero() {
            acc = acc.add(&f.form().derivative(i).scale(yi));
        }
    }
    SymTensor::new(acc.scale(&inv_d), d - 1)
}

/// Contraction with the `j`-th coordinate covector.
pub fn contraction_basis(f: &SymTensor, j: usize) -> Result<SymTensor> {
    let field = f.field();
    let y: Vec<FieldElem> = (0..f.nvars())
        .map(|i| if i == j { field.one() } else { field.zero() })
        .collect();
    contraction(f, &y)
}

fn check_in_x_r(f: &SymTensor, r: usize) -> Result<()> {
    let n = f.nvars();
    if r == 0 || r > n {
        return Err(Error::Precondition(format!("need 1 <= r <= n = {n}")));
    }
    let mut pure = Poly::zero(n, f.field().clone());
    for (m, c) in f.form().terms() {
        if m.0[r..].iter().all(|&e| e == 0) {
            pure.add_term(m.clone(), c.clone());
        }
    }
    let unit = unit_tensor_over(r, f.degree(), f.field()).embed(n)?;
    if pure != *unit.form() {
        return Err(Error::Precondition(format!(
            "the part of f in the first {r} variables is not the unit tensor"
        )));
    }
    Ok(())
}

/// Dimension of `span{ contraction(f, e_j) x_i } + Y_r`, where `Y_r` is spanned
/// by the monomials not purely in the first `r` variables.
pub fn differential_image_rank(f: &SymTensor, r: usize) -> Result<usize> {
    f.check_admissible()?;
    check_in_x_r(f, r)?;
    let n = f.nvars();
    let d = f.degree();
    let pure = monomials_of_degree(r, d);
    let y_dim = monomial_count(n, d) - pure.len();
    let field = f.field().clone();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        let c = contraction_basis(f, j)?;
        for i in 0..n {
            let p = c.form().mul(&Poly::var(n, i, field.clone()));
            rows.push(
                pure.iter()
                    .map(|m| {
                        let mut e = m.0.clone();
                        e.resize(n, 0);
                        p.coeff(&Monomial(e))
                    })
                    .collect(),
            );
        }
    }
    Ok(y_dim + rank_of_rows(rows, pure.len(), &field))
}

// ---------------------------------------------------------------------------
// Unit tensor facts

/// `d` with every factor of the characteristic removed.
pub fn reduced_degree(d: u32, field: &Field) -> u32 {
    let p = field.characteristic();
    let mut m = d;
    if p != 0 {
        while m > 0 && (m as u64).is_multiple_of(p) {
            m /= p as u32;
        }
    }
    m
}

pub fn unit_orbit_dimension(r: usize, d: u32) -> Result<usize> {
    unit_orbit_dimension_over(r, d, &Field::Rational)
}

/// Rank of `A -> sum_i d' x_i^(d'-1) (A x)_i`, from `r x r` matrices to forms of
/// degree `d'` in `r` variables.
pub fn unit_orbit_dimension_over(r: usize, d: u32, field: &Field) -> Result<usize> {
    check_admissible(d, field)?;
    if r == 0 {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    let dp = reduced_degree(d, field);
    let cols = monomials_of_degree(r, dp);
    let scale = field.from_i64(dp as i64);
    let mut rows = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            // A = E_ij: (A x)_i = x_j, contributing d' x_i^(d'-1) x_j.
            let mut e = vec![0u32; r];
            e[i] += dp - 1;
            e[j] += 1;
            let p = Poly::term(Monomial(e), scale.clone());
            rows.push(cols.iter().map(|m| p.coeff(m)).collect());
        }
    }
    Ok(rank_of_rows(rows, cols.len(), field))
}

/// True iff `f` lies in the ideal of the given independent linear forms.
pub fn slice_witness_check(f: &SymTensor, forms: &[Poly]) -> Result<bool> {
    slice_witness_check_with(f, forms, &GroebnerConfig::default())
}

pub fn slice_witness_check_with(
    f: &SymTensor,
    forms: &[Poly],
    config: &GroebnerConfig,
) -> Result<bool> {
    let n = f.nvars();
    for l in forms {
        if l.nvars() != n {
            return Err(Error::Dimension(format!(
                "linear form in {} variables for a form in {n}",
                l.nvars()
            )));
        }
        if l.is_zero() || l.terms().any(|(m, _)| m.degree() != 1) {
            return Err(Error::InvalidInput(format!(
                "{l} is not a nonzero linear form"
            )));
        }
    }
    let field = f.field().clone();
    let rows: Vec<Vec<FieldElem>> = forms
        .iter()
        .map(|l| (0..n).map(|i| l.coeff(&Monomial::var(n, i))).collect())
        .collect();
    if rank_of_rows(rows, n, &field) != forms.len() {
        return Err(Error::InvalidInput("linear forms are dependent".into()));
    }
    if f.is_zero() {
        return Ok(true);
    }
    if forms.is_empty() {
        return Ok(false);
    }
    let forms: Vec<Poly> = forms
        .iter()
        .map(|l| l.to_field(&field))
        .collect::<Result<_>>()?;
    ideal_membership_with(f.form(), &Ideal::new(forms)?, config)
}

/// An element `z` with `z^d = -1`, if the field has one.
fn root_of_minus_one(d: u32, field: &Field) -> Result<FieldElem> {
    let minus_one = -field.one();
    if d % 2 == 1 {
        return Ok(minus_one);
    }
    match field {
        Field::Prime(p) => {
            let p = *p;
            if p == 2 {
                return Ok(field.one());
            }
            let check = |z: u64| FieldElem::Mod { v: z, p }.pow(d) == minus_one;
            if p < 1 << 20 {
                if let Some(z) = (1..p).find(|&z| check(z)) {
                    return Ok(FieldElem::Mod { v: z, p });
                }
            } else {
                // z of order dividing 2g with z^d = -1, g = gcd(d, p - 1)
                let g = num_integer::gcd(d as u64, p - 1);
                if (p - 1) % (2 * g) == 0 {
                    for c in 2..2000u64 {
                        let z = FieldElem::Mod { v: c, p }.pow_u64((p - 1) / (2 * g));
                        if z.pow(d) == minus_one {
                            return Ok(z);
                        }
                    }
                }
            }
            Err(Error::MissingRoot(format!("no z with z^{d} = -1 in F_{p}")))
        }
        _ => Err(Error::MissingRoot(format!(
            "no z with z^{d} = -1 in {field}"
        ))),
    }
}

/// `ceil(r/2)` linear forms whose common zero set lies inside the unit tensor's
/// hypersurface: `x_{2i} - z x_{2i+1}` with `z^d = -1`, plus `x_{r-1}` for odd `r`.
pub fn slice_witness_for_unit(r: usize, d: u32, field: &Field) -> Result<Vec<Poly>> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    let z = root_of_minus_one(d, field)?;
    let neg_z = -z;
    let mut forms = Vec::with_capacity(r.div_ceil(2));
    for i in 0..r / 2 {
        let mut l = Poly::var(r, 2 * i, field.clone());
        l.add_term(Monomial::var(r, 2 * i + 1), neg_z.clone());
        forms.push(l);
    }
    if r % 2 == 1 {
        forms.push(Poly::var(r, r - 1, field.clone()));
    }
    Ok(forms)
}

/// Build an `r x n` matrix over the field from row-major entries.
pub fn matrix_from_unknowns(
    values: &[FieldElem],
    r: usize,
    n: usize,
    field: &Field,
) -> Result<Matrix> {
    if values.len() != r * n {
        return Err(Error::Dimension(format!("expected {} values", r * n)));
    }
    Matrix::from_rows(
        values.chunks(n).map(<[FieldElem]>::to_vec).collect(),
        field.clone(),
    )
}
