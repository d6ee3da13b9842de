//! Buchberger's algorithm with sugar selection and the Gebauer-Moeller
//! criteria, normal forms, ideal membership and solvability over the closure.
//!
//! Over the rationals the engine works with integer coefficients and removes
//! the integer content after every reduction step; over `F_p` polynomials are
//! kept monic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Weighted degree first, ties broken by grevlex.
    Weighted(Vec<u64>),
}

impl MonomialOrder {
    pub fn weighted(weights: Vec<u64>) -> Result<MonomialOrder> {
        if weights.contains(&0) {
            return Err(Error::InvalidInput("order weights must be positive".into()));
        }
        Ok(MonomialOrder::Weighted(weights))
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Weighted(w) => {
                let wa: u64 = a.iter().zip(w).map(|(&e, &x)| e as u64 * x).sum();
                let wb: u64 = b.iter().zip(w).map(|(&e, &x)| e as u64 * x).sum();
                wa.cmp(&wb).then_with(|| grevlex(a, b))
            }
        }
    }

    fn check(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Weighted(w) = self {
            if w.len() != nvars {
                return Err(Error::Dimension(format!(
                    "weight vector has length {} for {nvars} variables",
                    w.len()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => f.write_str("grevlex"),
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Weighted(w) => write!(f, "weighted{w:?}"),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Limits on a Groebner computation. Exceeding one is an error, not a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub spair_cap: usize,
    pub deg_cap: u32,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            spair_cap: 200_000,
            deg_cap: 40,
        }
    }
}

/// Generators of a polynomial ideal over a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(gens: Vec<Poly>) -> Result<Ideal> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidInput(
                "an ideal needs at least one generator".into(),
            ));
        };
        let (n, field) = (first.nvars(), first.field().clone());
        for g in &gens {
            if g.nvars() != n {
                return Err(Error::Dimension(format!(
                    "generators in {} and {n} variables",
                    g.nvars()
                )));
            }
            if g.field() != &field {
                return Err(Error::InvalidInput(
                    "generators over different fields".into(),
                ));
            }
        }
        Ok(Ideal { gens })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.gens[0].nvars()
    }

    pub fn field(&self) -> &Field {
        self.gens[0].field()
    }

    /// The same generators reduced into another field.
    pub fn to_field(&self, field: &Field) -> Result<Ideal> {
        Ideal::new(
            self.gens
                .iter()
                .map(|g| g.to_field(field))
                .collect::<Result<_>>()?,
        )
    }
}

/// Counters from a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_processed: usize,
    pub pairs_skipped: usize,
    pub zero_reductions: usize,
    pub max_degree: u32,
}

/// A reduced Groebner basis: monic, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    basis: Vec<Poly>,
    order: MonomialOrder,
    nvars: usize,
    field: Field,
    reduced: bool,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        normal_form(f, self)
    }

    /// Leading monomial of each element under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| leading_under(p, &self.order).expect("basis elements are nonzero"))
            .collect()
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.basis == other.basis
    }
}

fn leading_under(p: &Poly, order: &MonomialOrder) -> Option<Monomial> {
    p.terms()
        .map(|(m, _)| m)
        .max_by(|a, b| order.cmp(&a.0, &b.0))
        .cloned()
}

// ---------------------------------------------------------------------------
// Coefficient arithmetic

type Exp = Vec<u32>;
type Terms<C> = Vec<(Exp, C)>;

trait Arith {
    type C: Clone + PartialEq + fmt::Debug;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn is_one(&self, c: &Self::C) -> bool;
    /// Multipliers `(mf, mg)` with `mf * f_lead == mg * g_lead`.
    fn cancel(&self, f_lead: &Self::C, g_lead: &Self::C) -> (Self::C, Self::C);
    /// Divide out content (rationals) or make monic (prime fields); applied to
    /// the concatenation of the given slices.
    fn normalize(&self, parts: &mut [&mut Terms<Self::C>]);
    fn import(&self, c: &FieldElem, denom_lcm: &BigInt) -> Self::C;
    fn export(&self, terms: &Terms<Self::C>, nvars: usize, field: &Field) -> Poly;
}

struct QArith;

impl Arith for QArith {
    type C = BigInt;

    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn is_one(&self, c: &BigInt) -> bool {
        c.is_one()
    }

    fn cancel(&self, f: &BigInt, g: &BigInt) -> (BigInt, BigInt) {
        let d = f.gcd(g);
        let (mut mf, mut mg) = (g / &d, f / &d);
        if mf.is_negative() {
            mf = -mf;
            mg = -mg;
        }
        (mf, mg)
    }

    fn normalize(&self, parts: &mut [&mut Terms<BigInt>]) {
        let mut g = BigInt::zero();
        'outer: for part in parts.iter() {
            for (_, c) in part.iter() {
                g = g.gcd(c);
                if g.is_one() {
                    break 'outer;
                }
            }
        }
        let lead_negative = parts
            .iter()
            .find_map(|p| p.first())
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if g.is_zero() || (g.is_one() && !lead_negative) {
            return;
        }
        if lead_negative {
            g = -g;
        }
        for part in parts.iter_mut() {
            for (_, c) in part.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    fn import(&self, c: &FieldElem, denom_lcm: &BigInt) -> BigInt {
        let q = c.to_rational().expect("rational coefficient");
        q.numer() * (denom_lcm / q.denom())
    }

    fn export(&self, terms: &Terms<BigInt>, nvars: usize, field: &Field) -> Poly {
        let lead = terms[0].1.clone();
        Poly::from_terms(
            nvars,
            field.clone(),
            terms.iter().map(|(e, c)| {
                (
                    Monomial(e.clone()),
                    FieldElem::Rat(BigRational::new(c.clone(), lead.clone())),
                )
            }),
        )
    }
}

struct FpArith {
    p: u64,
}

impl FpArith {
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        r
    }
}

impl Arith for FpArith {
    type C = u64;

    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    fn is_one(&self, c: &u64) -> bool {
        *c == 1
    }

    fn cancel(&self, f: &u64, g: &u64) -> (u64, u64) {
        (1, self.mul(f, &self.inv(*g)))
    }

    fn normalize(&self, parts: &mut [&mut Terms<u64>]) {
        let Some(lead) = parts.iter().find_map(|p| p.first()).map(|t| t.1) else {
            return;
        };
        if lead == 1 {
            return;
        }
        let inv = self.inv(lead);
        for part in parts.iter_mut() {
            for (_, c) in part.iter_mut() {
                *c = self.mul(c, &inv);
            }
        }
    }

    fn import(&self, c: &FieldElem, _: &BigInt) -> u64 {
        match c {
            FieldElem::Mod { v, .. } => *v,
            _ => unreachable!("prime field polynomial with foreign coefficient"),
        }
    }

    fn export(&self, terms: &Terms<u64>, nvars: usize, field: &Field) -> Poly {
        let inv = self.inv(terms[0].1);
        Poly::from_terms(
            nvars,
            field.clone(),
            terms.iter().map(|(e, c)| {
                (
                    Monomial(e.clone()),
                    FieldElem::Mod {
                        v: self.mul(c, &inv),
                        p: self.p,
                    },
                )
            }),
        )
    }
}

// ---------------------------------------------------------------------------
// Engine

struct Engine<'a, A: Arith> {
    ar: A,
    order: &'a MonomialOrder,
    config: &'a GroebnerConfig,
    nvars: usize,
    polys: Vec<Terms<A::C>>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

enum Outcome<C> {
    Unit,
    Basis(Vec<Terms<C>>),
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl<'a, A: Arith> Engine<'a, A> {
    fn lm(&self, i: usize) -> &Exp {
        &self.polys[i][0].0
    }

    fn sort(&self, t: &mut Terms<A::C>) {
        t.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
    }

    /// `mf * p - mg * (shift * g)` where the leading terms cancel.
    fn combine(
        &self,
        p: &Terms<A::C>,
        mf: &A::C,
        g: &Terms<A::C>,
        shift: &[u32],
        mg: &A::C,
    ) -> Terms<A::C> {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let (mut i, mut j) = (1, 1);
        let scale_p = !self.ar.is_one(mf);
        let shifted = |k: usize| -> Exp { g[k].0.iter().zip(shift).map(|(a, b)| a + b).collect() };
        let mut gj = if j < g.len() { Some(shifted(j)) } else { None };
        while i < p.len() || gj.is_some() {
            let ord = match (&gj, i < p.len()) {
                (None, _) => Ordering::Greater,
                (Some(_), false) => Ordering::Less,
                (Some(e), true) => self.order.cmp(&p[i].0, e),
            };
            match ord {
                Ordering::Greater => {
                    let c = if scale_p {
                        self.ar.mul(&p[i].1, mf)
                    } else {
                        p[i].1.clone()
                    };
                    out.push((p[i].0.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    let e = gj.take().unwrap();
                    let c = self.ar.mul(&g[j].1, mg);
                    let zero = self.ar.sub(&c, &c);
                    out.push((e, self.ar.sub(&zero, &c)));
                    j += 1;
                    gj = if j < g.len() { Some(shifted(j)) } else { None };
                }
                Ordering::Equal => {
                    let e = gj.take().unwrap();
                    let a = if scale_p {
                        self.ar.mul(&p[i].1, mf)
                    } else {
                        p[i].1.clone()
                    };
                    let c = self.ar.sub(&a, &self.ar.mul(&g[j].1, mg));
                    if !self.ar.is_zero(&c) {
                        out.push((e, c));
                    }
                    i += 1;
                    j += 1;
                    gj = if j < g.len() { Some(shifted(j)) } else { None };
                }
            }
        }
        out
    }

    fn find_reducer(&self, e: &[u32], among: &[usize]) -> Option<usize> {
        among.iter().copied().find(|&k| divides(self.lm(k), e))
    }

    /// Full reduction of `p` by the polynomials `among`; returns the remainder
    /// and its sugar.
    fn reduce(&self, mut p: Terms<A::C>, mut sugar: u32, among: &[usize]) -> (Terms<A::C>, u32) {
        let mut rem: Terms<A::C> = Vec::new();
        while !p.is_empty() {
            let e = p[0].0.clone();
            match self.find_reducer(&e, among) {
                Some(k) => {
                    let g = &self.polys[k];
                    let shift: Exp = e.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                    sugar = sugar.max(deg(&shift) + self.sugar[k]);
                    let (mf, mg) = self.ar.cancel(&p[0].1, &g[0].1);
                    if !self.ar.is_one(&mf) {
                        for t in rem.iter_mut() {
                            t.1 = self.ar.mul(&t.1, &mf);
                        }
                    }
                    p = self.combine(&p, &mf, g, &shift, &mg);
                    self.ar.normalize(&mut [&mut rem, &mut p]);
                }
                None => {
                    let mut it = p.into_iter();
                    rem.push(it.next().unwrap());
                    p = it.collect();
                }
            }
        }
        self.ar.normalize(&mut [&mut rem]);
        (rem, sugar)
    }

    fn spoly(&self, pr: &Pair) -> Terms<A::C> {
        let (f, g) = (&self.polys[pr.i], &self.polys[pr.j]);
        let tf: Exp = pr.lcm.iter().zip(&f[0].0).map(|(a, b)| a - b).collect();
        let tg: Exp = pr.lcm.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
        let (mf, mg) = self.ar.cancel(&f[0].1, &g[0].1);
        let fs: Terms<A::C> = f
            .iter()
            .map(|(e, c)| (e.iter().zip(&tf).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        let mut s = self.combine(&fs, &mf, g, &tg, &mg);
        self.ar.normalize(&mut [&mut s]);
        s
    }

    /// Gebauer-Moeller update after adding polynomial `h`.
    fn update(&mut self, h: usize) {
        let lh = self.lm(h).clone();
        let cand: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let l = lcm(&lh, self.lm(g));
                let sug = (self.sugar[h] + deg(&l) - deg(&lh))
                    .max(self.sugar[g] + deg(&l) - deg(self.lm(g)));
                Pair {
                    i: g,
                    j: h,
                    lcm: l,
                    sugar: sug,
                }
            })
            .collect();
        // A new pair survives if its leading monomials are coprime or no other
        // pending new pair has an lcm dividing its own.
        let mut pending: std::collections::VecDeque<Pair> = cand.into();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = pending.pop_front() {
            let is_coprime = coprime(&lh, self.lm(p.i));
            let dominated = pending
                .iter()
                .chain(kept.iter())
                .any(|q| divides(&q.lcm, &p.lcm));
            if is_coprime || !dominated {
                kept.push(p);
            } else {
                self.stats.pairs_skipped += 1;
            }
        }
        let mut fresh: Vec<Pair> = Vec::new();
        for p in kept {
            if coprime(&lh, self.lm(p.i)) {
                self.stats.pairs_skipped += 1;
            } else {
                fresh.push(p);
            }
        }
        // Chain criterion on old pairs.
        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = &polys[p.i][0].0;
            let lj = &polys[p.j][0].0;
            !(divides(&lh, &p.lcm) && lcm(li, &lh) != p.lcm && lcm(lj, &lh) != p.lcm)
        });
        self.stats.pairs_skipped += before - self.pairs.len();
        self.pairs.extend(fresh);
        let lh_ref = lh;
        let polys = &self.polys;
        self.active.retain(|&g| !divides(&lh_ref, &polys[g][0].0));
        self.active.push(h);
    }

    fn insert(&mut self, p: Terms<A::C>, sugar: u32) -> Result<bool> {
        let maxdeg = p.iter().map(|t| deg(&t.0)).max().unwrap_or(0);
        if maxdeg > self.config.deg_cap {
            return Err(Error::ResourceLimit(format!(
                "basis degree {maxdeg} exceeds the cap {}",
                self.config.deg_cap
            )));
        }
        self.stats.max_degree = self.stats.max_degree.max(maxdeg);
        let unit = deg(&p[0].0) == 0;
        self.polys.push(p);
        self.sugar.push(sugar);
        let h = self.polys.len() - 1;
        self.update(h);
        Ok(unit)
    }

    fn run(&mut self, gens: Vec<Terms<A::C>>) -> Result<Outcome<A::C>> {
        for mut g in gens {
            self.sort(&mut g);
            self.ar.normalize(&mut [&mut g]);
            let s = g.iter().map(|t| deg(&t.0)).max().unwrap_or(0);
            let active = self.active.clone();
            let (h, s) = self.reduce(g, s, &active);
            if h.is_empty() {
                continue;
            }
            if self.insert(h, s)? {
                return Ok(Outcome::Unit);
            }
        }
        while !self.pairs.is_empty() {
            let k = (0..self.pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&self.pairs[a], &self.pairs[b]);
                    p.sugar
                        .cmp(&q.sugar)
                        .then_with(|| self.order.cmp(&p.lcm, &q.lcm))
                })
                .unwrap();
            let pair = self.pairs.swap_remove(k);
            self.stats.pairs_processed += 1;
            if self.stats.pairs_processed > self.config.spair_cap {
                return Err(Error::ResourceLimit(format!(
                    "more than {} S-pairs processed",
                    self.config.spair_cap
                )));
            }
            let s = self.spoly(&pair);
            if s.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let active = self.active.clone();
            let (h, sug) = self.reduce(s, pair.sugar, &active);
            if h.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if self.insert(h, sug)? {
                return Ok(Outcome::Unit);
            }
        }
        // Interreduce the (already minimal) active set.
        let mut active = self.active.clone();
        active.sort_by(|&a, &b| self.order.cmp(self.lm(a), self.lm(b)));
        let mut out = Vec::with_capacity(active.len());
        for &k in &active {
            let others: Vec<usize> = active.iter().copied().filter(|&o| o != k).collect();
            let p = self.polys[k].clone();
            let lead = p[0].clone();
            let (r, _) = self.reduce_tail_with_lead(lead, p, &others);
            out.push(r);
        }
        Ok(Outcome::Basis(out))
    }

    /// Reduce every non-leading term of `p` (whose leading term is `lead`).
    fn reduce_tail_with_lead(
        &self,
        lead: (Exp, A::C),
        p: Terms<A::C>,
        among: &[usize],
    ) -> (Terms<A::C>, u32) {
        let mut rem: Terms<A::C> = vec![lead];
        let mut q: Terms<A::C> = p[1..].to_vec();
        while !q.is_empty() {
            let e = q[0].0.clone();
            match self.find_reducer(&e, among) {
                Some(k) => {
                    let g = &self.polys[k];
                    let shift: Exp = e.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                    let (mf, mg) = self.ar.cancel(&q[0].1, &g[0].1);
                    if !self.ar.is_one(&mf) {
                        for t in rem.iter_mut() {
                            t.1 = self.ar.mul(&t.1, &mf);
                        }
                    }
                    q = self.combine(&q, &mf, g, &shift, &mg);
                    self.ar.normalize(&mut [&mut rem, &mut q]);
                }
                None => {
                    let mut it = q.into_iter();
                    rem.push(it.next().unwrap());
                    q = it.collect();
                }
            }
        }
        self.ar.normalize(&mut [&mut rem]);
        (rem, 0)
    }
}

fn import_terms<A: Arith>(ar: &A, p: &Poly) -> Terms<A::C> {
    let lcm_den = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| match c.to_rational() {
            Some(q) => acc.lcm(q.denom()),
            None => acc,
        });
    p.terms()
        .map(|(m, c)| (m.0.clone(), ar.import(c, &lcm_den)))
        .collect()
}

fn run_engine<A: Arith>(
    ar: A,
    ideal: &Ideal,
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    let nvars = ideal.nvars();
    let field = ideal.field().clone();
    let gens: Vec<Terms<A::C>> = ideal
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| import_terms(&ar, g))
        .collect();
    let mut eng = Engine {
        ar,
        order,
        config,
        nvars,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GroebnerStats::default(),
    };
    let outcome = eng.run(gens)?;
    let basis = match outcome {
        Outcome::Unit => vec![Poly::one(nvars, field.clone())],
        Outcome::Basis(b) => b
            .iter()
            .map(|t| eng.ar.export(t, eng.nvars, &field))
            .collect(),
    };
    Ok(GroebnerBasis {
        basis,
        order: order.clone(),
        nvars,
        field,
        reduced: true,
        stats: eng.stats,
    })
}

/// Reduced Groebner basis with the default resource caps.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, &GroebnerConfig::default())
}

pub fn buchberger_with(
    ideal: &Ideal,
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis> {
    order.check(ideal.nvars())?;
    if ideal.generators().iter().all(Poly::is_zero) {
        return Ok(GroebnerBasis {
            basis: Vec::new(),
            order: order.clone(),
            nvars: ideal.nvars(),
            field: ideal.field().clone(),
            reduced: true,
            stats: GroebnerStats::default(),
        });
    }
    match ideal.field() {
        Field::Rational => run_engine(QArith, ideal, order, config),
        Field::Prime(p) => run_engine(FpArith { p: *p }, ideal, order, config),
        Field::Extension(_) => Err(Error::InvalidInput(
            "Groebner bases are computed over QQ or F_p only".into(),
        )),
    }
}

/// Remainder of division of `f` by the basis, over the field.
pub fn normal_form(f: &Poly, g: &GroebnerBasis) -> Result<Poly> {
    if f.nvars() != g.nvars {
        return Err(Error::Dimension(format!(
            "polynomial in {} variables against a basis in {}",
            f.nvars(),
            g.nvars
        )));
    }
    let f = f.to_field(&g.field)?;
    let order = &g.order;
    let leads: Vec<(Monomial, FieldElem)> = g
        .basis
        .iter()
        .map(|b| {
            let m = leading_under(b, order).expect("nonzero basis element");
            let c = b.coeff(&m);
            (m, c)
        })
        .collect();
    let mut p = f.clone();
    let mut rem = Poly::zero(f.nvars(), g.field.clone());
    while let Some(m) = leading_under(&p, order) {
        let c = p.coeff(&m);
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let factor = &c * &leads[k].1.inv().expect("nonzero leading coefficient");
                let shift = leads[k].0.quotient_of(&m);
                p = p.sub(&g.basis[k].mul_term(&shift, &factor));
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                p.add_term(m, -c);
            }
        }
    }
    Ok(rem)
}

pub fn is_solvable_over_closure(ideal: &Ideal) -> Result<bool> {
    is_solvable_over_closure_with(ideal, &GroebnerConfig::default())
}

/// True iff `1` is not in the ideal (weak Nullstellensatz).
pub fn is_solvable_over_closure_with(ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    let gb = buchberger_with(ideal, &MonomialOrder::Grevlex, config)?;
    Ok(!gb.is_unit())
}

pub fn ideal_membership(f: &Poly, ideal: &Ideal) -> Result<bool> {
    ideal_membership_with(f, ideal, &GroebnerConfig::default())
}

pub fn ideal_membership_with(f: &Poly, ideal: &Ideal, config: &GroebnerConfig) -> Result<bool> {
    if f.nvars() != ideal.nvars() {
        return Err(Error::Dimension(format!(
            "polynomial in {} variables, ideal in {}",
            f.nvars(),
            ideal.nvars()
        )));
    }
    let gb = buchberger_with(ideal, &MonomialOrder::Grevlex, config)?;
    Ok(normal_form(f, &gb)?.is_zero())
}
