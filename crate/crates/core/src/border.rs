//! One-parameter subgroup limits, Laurent-curve limits and witnesses for the
//! symmetric border subrank and the Hilbert–Mumford subrank.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::subrank::{
    essential_form, symmetric_subrank_with, LevelStatus, SubrankOptions, SubrankVerdict,
};
use crate::tensor::{act, laurent_act, LaurentMatrix, LaurentPoly, SymTensor};

/// Integer weights `a_i` of a one-parameter subgroup `t -> g diag(t^a) g^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<i64>,
    basis: Option<Matrix>,
}

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> WeightVector {
        WeightVector {
            weights,
            basis: None,
        }
    }

    /// Weights acting diagonally on the columns of an invertible `g`.
    pub fn with_basis(weights: Vec<i64>, g: Matrix) -> Result<WeightVector> {
        if g.rows() != weights.len() || g.cols() != weights.len() {
            return Err(Error::Dimension(format!(
                "basis change is {}x{} for {} weights",
                g.rows(),
                g.cols(),
                weights.len()
            )));
        }
        if !g.is_invertible() {
            return Err(Error::InvalidInput("basis change is singular".into()));
        }
        Ok(WeightVector {
            weights,
            basis: Some(g),
        })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn basis(&self) -> Option<&Matrix> {
        self.basis.as_ref()
    }

    fn check(&self, f: &SymTensor) -> Result<()> {
        if self.weights.len() != f.nvars() {
            return Err(Error::Dimension(format!(
                "{} weights for a form in {} variables",
                self.weights.len(),
                f.nvars()
            )));
        }
        if let Some(g) = &self.basis {
            if g.field() != f.field() {
                return Err(Error::InvalidInput(
                    "basis change over a different field".into(),
                ));
            }
        }
        Ok(())
    }

    /// The curve `g diag(t^a) g^-1` as a Laurent matrix.
    pub fn to_laurent(&self, field: &Field) -> Result<LaurentMatrix> {
        let Some(g) = &self.basis else {
            return Ok(LaurentMatrix::diagonal_weights(&self.weights, field));
        };
        let gi = g.inverse()?;
        let n = self.weights.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero();
                        for (k, &a) in self.weights.iter().enumerate() {
                            acc.add_term(g.get(i, k) * gi.get(k, j), a);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix::from_rows(rows)
    }
}

/// Components of `f` by total weight. With a basis change `g` the grading is
/// taken in the coordinates `g^-1 x` and the components are mapped back, so
/// they always sum to `f`.
pub fn weight_decomposition(f: &SymTensor, w: &WeightVector) -> Result<BTreeMap<i64, SymTensor>> {
    w.check(f)?;
    let (work, back) = match &w.basis {
        None => (f.clone(), None),
        Some(g) => (act(g, f)?, Some(g.inverse()?)),
    };
    let mut parts: BTreeMap<i64, Poly> = BTreeMap::new();
    for (m, c) in work.form().terms() {
        let k: i64 =
            m.0.iter()
                .zip(&w.weights)
                .map(|(&e, &a)| e as i64 * a)
                .sum();
        parts
            .entry(k)
            .or_insert_with(|| Poly::zero(f.nvars(), f.field().clone()))
            .add_term(m.clone(), c.clone());
    }
    parts
        .into_iter()
        .map(|(k, p)| {
            let t = SymTensor::new(p, f.degree())?;
            let t = match &back {
                None => t,
                Some(gi) => act(gi, &t)?,
            };
            Ok((k, t))
        })
        .collect()
}

/// Outcome of `lim_{t -> 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    /// The limit exists; it may be the zero form.
    Exists(SymTensor),
    /// A component with this negative weight (or `t`-exponent) survives.
    DoesNotExist { exponent: i64 },
}

impl Limit {
    pub fn form(&self) -> Option<&SymTensor> {
        match self {
            Limit::Exists(f) => Some(f),
            Limit::DoesNotExist { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Limit::Exists(f) => f.to_string(),
            Limit::DoesNotExist { .. } => "DOES_NOT_EXIST".into(),
        }
    }
}

/// `lim_{t -> 0} lambda(t) . f` for the subgroup with weights `w`.
pub fn psg_limit(f: &SymTensor, w: &WeightVector) -> Result<Limit> {
    let parts = weight_decomposition(f, w)?;
    if let Some((&k, _)) = parts.iter().next().filter(|(&k, _)| k < 0) {
        return Ok(Limit::DoesNotExist { exponent: k });
    }
    Ok(Limit::Exists(parts.get(&0).cloned().unwrap_or_else(|| {
        SymTensor::zero(f.nvars(), f.degree(), f.field().clone())
    })))
}

/// `lim_{t -> 0} G(t) . f` for a Laurent curve `G`.
pub fn laurent_limit(f: &SymTensor, g: &LaurentMatrix) -> Result<Limit> {
    let expanded = laurent_act(g, f)?;
    match expanded.min_exponent() {
        Some(k) if k < 0 => Ok(Limit::DoesNotExist { exponent: k }),
        _ => Ok(Limit::Exists(expanded.coefficient(0))),
    }
}

fn level_feasible(f: &SymTensor, r: usize, opts: &SubrankOptions) -> Result<bool> {
    let opts = SubrankOptions {
        r_cap: Some(r),
        ..opts.clone()
    };
    let v: SubrankVerdict = symmetric_subrank_with(f, &opts)?;
    match v.status(r) {
        Some(LevelStatus::Feasible) => Ok(true),
        Some(LevelStatus::Infeasible) | None => Ok(false),
        Some(LevelStatus::Inconclusive) => Err(Error::ResourceLimit(format!(
            "level {r} of the limit is inconclusive"
        ))),
    }
}

/// True when `lim G(t) . f` exists and restricts to the unit tensor of size `r`,
/// which certifies that the border subrank of `f` is at least `r`.
pub fn border_witness_check(f: &SymTensor, g: &LaurentMatrix, r: usize) -> Result<bool> {
    border_witness_check_with(f, g, r, &SubrankOptions::default())
}

pub fn border_witness_check_with(
    f: &SymTensor,
    g: &LaurentMatrix,
    r: usize,
    opts: &SubrankOptions,
) -> Result<bool> {
    f.check_admissible()?;
    if r == 0 {
        return Ok(true);
    }
    if r > f.nvars() {
        return Ok(false);
    }
    match laurent_limit(f, g)? {
        Limit::Exists(l) if !l.is_zero() => level_feasible(&l, r, opts),
        _ => Ok(false),
    }
}

/// Essential variables of a nonzero form.
pub fn essential_variable_count(f: &SymTensor) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "the zero form has no essential variables".into(),
        ));
    }
    Ok(crate::subrank::essential_variable_count(f))
}

/// True when the subgroup limit exists, uses exactly `r` essential variables,
/// and in those variables is equivalent to the unit tensor (full subrank `r`).
pub fn hm_witness_check(f: &SymTensor, w: &WeightVector, r: usize) -> Result<bool> {
    hm_witness_check_with(f, w, r, &SubrankOptions::default())
}

pub fn hm_witness_check_with(
    f: &SymTensor,
    w: &WeightVector,
    r: usize,
    opts: &SubrankOptions,
) -> Result<bool> {
    f.check_admissible()?;
    if r == 0 || r > f.nvars() {
        return Ok(r == 0);
    }
    match psg_limit(f, w)? {
        Limit::Exists(l) if !l.is_zero() => limit_in_unit_orbit(&l, r, opts),
        _ => Ok(false),
    }
}

fn limit_in_unit_orbit(l: &SymTensor, r: usize, opts: &SubrankOptions) -> Result<bool> {
    if crate::subrank::essential_variable_count(l) != r {
        return Ok(false);
    }
    let (reduced, _) = essential_form(l)?;
    level_feasible(&reduced, r, opts)
}

/// JSON record of a curve witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitWitness {
    pub schema: u32,
    pub f: String,
    pub curve: Vec<Vec<String>>,
    pub limit: String,
    /// Most negative `t`-exponent when the limit does not exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_exponent: Option<i64>,
    pub r: usize,
    pub verdict: bool,
}

pub fn limit_witness(f: &SymTensor, g: &LaurentMatrix, r: usize) -> Result<LimitWitness> {
    let limit = laurent_limit(f, g)?;
    let verdict = border_witness_check(f, g, r)?;
    Ok(LimitWitness {
        schema: 1,
        f: f.to_string(),
        curve: g.to_strings(),
        limit: limit.describe(),
        negative_exponent: match limit {
            Limit::DoesNotExist { exponent } => Some(exponent),
            Limit::Exists(_) => None,
        },
        r,
        verdict,
    })
}

/// Upper bound on the border subrank from the top level of a decided subrank
/// computation: a form whose border subrank equals its number of variables
/// is already in the orbit of the unit tensor, so an infeasible top level caps
/// the border subrank at `n - 1`.
pub fn border_subrank_cap(verdict: &SubrankVerdict) -> usize {
    let n = verdict.n;
    match verdict.status(n) {
        Some(LevelStatus::Infeasible) => n - 1,
        _ => n,
    }
}

/// Outcome of a sweep over weight classes. A sweep is evidence, never a proof
/// that no subgroup works.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub bound: i64,
    pub r: usize,
    pub classes: usize,
    pub distinct_limits: usize,
    /// Effective weight vectors whose limit lies in the orbit of the unit tensor.
    pub successes: Vec<Vec<i64>>,
    pub note: String,
}

/// Weight vectors in `[-bound, bound]^n` up to a common shift, one per class
/// with smallest entry zero.
pub fn weight_classes(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let top = 2 * bound;
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        if cur.contains(&0) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < top {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// For each weight class, rescale and shift the weights (`d a - mu`, `mu` the
/// least weight of a monomial of `f`) so the limit is the lowest-weight part
/// of `f`, then test it with `hm_witness_check`.
pub fn hm_sweep(f: &SymTensor, r: usize, bound: i64, opts: &SubrankOptions) -> Result<SweepReport> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot sweep the zero form".into()));
    }
    let n = f.nvars();
    let d = f.degree() as i64;
    let mut cache: HashMap<String, bool> = HashMap::new();
    let mut successes = Vec::new();
    let classes = weight_classes(n, bound);
    for a in &classes {
        let mu = f
            .form()
            .terms()
            .map(|(m, _)| m.0.iter().zip(a).map(|(&e, &w)| e as i64 * w).sum::<i64>())
            .min()
            .expect("nonzero form");
        // every monomial has degree d, so shifting each weight by -mu/d
        // (after scaling by d to stay integral) shifts monomial weights by -mu
        let eff: Vec<i64> = a.iter().map(|&w| d * w - mu).collect();
        let w = WeightVector::new(eff.clone());
        let limit = psg_limit(f, &w)?;
        let key = limit.describe();
        let ok = match cache.get(&key) {
            Some(&v) => v,
            None => {
                let v = match &limit {
                    Limit::Exists(l) if !l.is_zero() => limit_in_unit_orbit(l, r, opts)?,
                    _ => false,
                };
                cache.insert(key, v);
                v
            }
        };
        if ok {
            debug_assert!(hm_witness_check_with(f, &w, r, opts)?);
            successes.push(eff);
        }
    }
    Ok(SweepReport {
        bound,
        r,
        classes: classes.len(),
        distinct_limits: cache.len(),
        successes,
        note: "bounded sweep: evidence only, not a proof of absence".into(),
    })
}
