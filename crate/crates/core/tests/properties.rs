use proptest::prelude::*;

use symsub::border::{hm_witness_check, laurent_limit, psg_limit, Limit, WeightVector};
use symsub::gcd::{exact_div, gcd, normalized_pair, same_projective_pair};
use symsub::groebner::{buchberger, is_solvable_over_closure, Ideal, MonomialOrder};
use symsub::moduli::{
    aronhold_st, eta_cubic, eta_quartic, is_smooth_hypersurface, restrict_to_plane, same_moduli,
    section_moduli, vertex_locus, weierstrass_cubic, weierstrass_plane_for_target, SectionFrame,
    WeierstrassPlane,
};
use symsub::poly::{monomial_count, monomials_of_degree};
use symsub::subrank::{
    certify_lower_bound, differential_image_rank, essential_variable_count, generic_lower_bound,
    generic_upper_bound, symmetric_subrank, LevelStatus,
};
use symsub::{
    act, laurent_act, substitute, Field, FieldElem, LaurentMatrix, LaurentPoly, Matrix, Monomial,
    Poly, SymTensor,
};

fn form_from(coeffs: &[i64], n: usize, d: u32, field: &Field) -> SymTensor {
    let terms = monomials_of_degree(n, d)
        .into_iter()
        .zip(coeffs)
        .map(|(m, &c)| (m, field.from_i64(c)));
    SymTensor::new(Poly::from_terms(n, field.clone(), terms), d).unwrap()
}

fn matrix_from(entries: &[i64], rows: usize, cols: usize, field: &Field) -> Matrix {
    let rows: Vec<Vec<FieldElem>> = entries
        .chunks(cols)
        .take(rows)
        .map(|r| r.iter().map(|&c| field.from_i64(c)).collect())
        .collect();
    Matrix::from_rows(rows, field.clone()).unwrap()
}

fn coeffs(n: usize, d: u32, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, monomial_count(n, d))
}

fn invertible(n: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, n * n).prop_filter("singular", move |e| {
        matrix_from(e, n, n, &Field::Rational).is_invertible()
    })
}

/// Product of shears `x_i += c x_j`; determinant one.
fn special_linear(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 1..6).prop_map(move |shears| {
        let q = Field::Rational;
        let mut g = Matrix::identity(n, q.clone());
        for (i, j, c) in shears {
            if i == j {
                continue;
            }
            let mut e = Matrix::identity(n, q.clone());
            e.set(i, j, q.from_i64(c));
            g = g.mul(&e).unwrap();
        }
        g
    })
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(101)),
        Just(Field::Prime(7919))
    ]
}

fn is_homogeneous(p: &Poly, d: u32) -> bool {
    p.terms().all(|(m, _)| m.0.iter().sum::<u32>() == d)
}

// ---------------------------------------------------------------------------
// Forms and substitutions

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substitution_composes(
        field in fields(),
        m in 1usize..=3, k in 1usize..=3,
        f in coeffs(3, 3, 4),
        a in prop::collection::vec(-3i64..=3, 9),
        b in prop::collection::vec(-3i64..=3, 9),
    ) {
        let f = form_from(&f, 3, 3, &field);
        let ma = matrix_from(&a, 3, m, &field);
        let mb = matrix_from(&b[..m * k], m, k, &field);
        let twice = substitute(&substitute(&f, &ma).unwrap(), &mb).unwrap();
        let once = substitute(&f, &ma.mul(&mb).unwrap()).unwrap();
        prop_assert_eq!(&twice, &once);
        prop_assert!(is_homogeneous(once.form(), 3));
        prop_assert_eq!(once.degree(), 3);
    }

    #[test]
    fn action_is_linear(
        field in fields(),
        f1 in coeffs(3, 4, 3), f2 in coeffs(3, 4, 3),
        g in prop::collection::vec(-2i64..=2, 9), c in -5i64..=5,
    ) {
        let f1 = form_from(&f1, 3, 4, &field);
        let f2 = form_from(&f2, 3, 4, &field);
        let g = matrix_from(&g, 3, 3, &field);
        let c = field.from_i64(c);
        let lhs = act(&g, &f1.add(&f2.scale(&c)).unwrap()).unwrap();
        let rhs = act(&g, &f1).unwrap().add(&act(&g, &f2).unwrap().scale(&c)).unwrap();
        prop_assert_eq!(lhs.degree(), 4);
        prop_assert!(is_homogeneous(lhs.form(), 4));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_action_at_one(
        f in coeffs(2, 3, 3),
        entries in prop::collection::vec(prop::collection::vec((-2i64..=2, -2i64..=2), 0..3), 4),
    ) {
        let q = Field::Rational;
        let f = form_from(&f, 2, 3, &q);
        let polys: Vec<LaurentPoly> = entries
            .iter()
            .map(|terms| {
                let mut p = LaurentPoly::zero();
                for &(c, k) in terms {
                    p.add_term(q.from_i64(c), k);
                }
                p
            })
            .collect();
        let at_one: Vec<i64> = entries.iter().map(|t| t.iter().map(|&(c, _)| c).sum()).collect();
        let g = LaurentMatrix::from_rows(vec![polys[..2].to_vec(), polys[2..].to_vec()]).unwrap();
        let expanded = laurent_act(&g, &f).unwrap().at_one();
        prop_assert_eq!(expanded, act(&matrix_from(&at_one, 2, 2, &q), &f).unwrap());
    }
}

// ---------------------------------------------------------------------------
// Groebner bases

fn small_system(p: u64) -> impl Strategy<Value = Vec<Poly>> {
    let field = Field::Prime(p);
    let term = (prop::collection::vec(0u32..=2, 3), 1i64..p as i64);
    let poly = prop::collection::vec(term, 1..4);
    prop::collection::vec(poly, 1..4).prop_map(move |gens| {
        gens.into_iter()
            .map(|terms| {
                Poly::from_terms(
                    3,
                    field.clone(),
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial(e), field.from_i64(c))),
                )
            })
            .filter(|p| !p.is_zero())
            .collect()
    })
}

fn has_point(gens: &[Poly], p: u64) -> bool {
    let field = Field::Prime(p);
    (0..p.pow(3)).any(|code| {
        let x: Vec<FieldElem> = (0..3)
            .map(|i| field.from_i64(((code / p.pow(i)) % p) as i64))
            .collect();
        gens.iter().all(|g| g.eval(&x).is_zero())
    })
}

fn with_field_equations(gens: &[Poly], p: u64) -> Vec<Poly> {
    let field = Field::Prime(p);
    let mut all = gens.to_vec();
    for i in 0..3 {
        let mut e = vec![0; 3];
        e[i] = p as u32;
        let mut eq = Poly::term(Monomial(e), field.one());
        eq = eq.sub(&Poly::var(3, i, field.clone()));
        all.push(eq);
    }
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solvability_matches_point_search(
        (p, gens) in prop_oneof![Just(2u64), Just(3), Just(5)].prop_flat_map(|p| (Just(p), small_system(p))),
    ) {
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(with_field_equations(&gens, p)).unwrap();
        prop_assert_eq!(is_solvable_over_closure(&ideal).unwrap(), has_point(&gens, p));
    }

    #[test]
    fn reduced_basis_is_canonical(gens in small_system(7), seed in any::<u64>()) {
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(gens.clone()).unwrap();
        let gb = buchberger(&ideal, &MonomialOrder::Grevlex).unwrap();
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed % k as u64) as usize);
        shuffled.reverse();
        let other = buchberger(&Ideal::new(shuffled).unwrap(), &MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(gb.basis(), other.basis());
        let again = buchberger(&Ideal::new(gb.basis().to_vec()).unwrap(), &MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(gb.basis(), again.basis());
        for g in &gens {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
        let probe = gens.iter().fold(Poly::one(3, Field::Prime(7)), |acc, g| acc.add(&g.mul(g)));
        prop_assert_eq!(gb.normal_form(&probe).unwrap(), again.normal_form(&probe).unwrap());
    }
}

// ---------------------------------------------------------------------------
// Symmetric subrank

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn subrank_is_invariant(n in 2usize..=3, f in coeffs(3, 3, 1), g in invertible(3, 1)) {
        let q = Field::Rational;
        let f = form_from(&f[..monomial_count(n, 3)], n, 3, &q);
        prop_assume!(!f.is_zero());
        let g = matrix_from(&g, n, n, &q);
        prop_assume!(g.is_invertible());
        let a = symmetric_subrank(&f, None).unwrap();
        let b = symmetric_subrank(&act(&g, &f).unwrap(), None).unwrap();
        prop_assert_eq!(a.value(), b.value());
        for v in [&a, &b] {
            let feasible: Vec<bool> = v
                .levels
                .iter()
                .filter(|l| l.status != LevelStatus::Inconclusive)
                .map(|l| l.status == LevelStatus::Feasible)
                .collect();
            prop_assert!(feasible.windows(2).all(|w| w[0] || !w[1]), "monotonicity: {:?}", v.levels);
        }
    }

    #[test]
    fn certificates_reproduce(seed in any::<u64>(), prime in prop_oneof![Just(Field::Prime(2147483629)), Just(Field::Rational)]) {
        let cert = match certify_lower_bound(4, 3, 2, seed, &prime, 10) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(cert.rank, 4);
        prop_assert!(cert.verify().unwrap());
        prop_assert_eq!(&certify_lower_bound(4, 3, 2, seed, &prime, 10).unwrap(), &cert);
        let f = cert.witness_form().unwrap();
        prop_assert_eq!(differential_image_rank(&f, 2).unwrap(), 20);
    }
}

#[test]
fn lower_bound_below_upper_bound() {
    for d in 3..=5 {
        for n in 1..=10_000 {
            assert!(
                generic_lower_bound(n, d).unwrap() <= generic_upper_bound(n, d).unwrap(),
                "n = {n}, d = {d}"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Degenerations

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn conjugated_limits_agree(
        f in coeffs(3, 3, 3),
        w in prop::collection::vec(-3i64..=3, 3),
        g in invertible(3, 1),
    ) {
        let q = Field::Rational;
        let f = form_from(&f, 3, 3, &q);
        let wv = WeightVector::with_basis(w, matrix_from(&g, 3, 3, &q)).unwrap();
        let a = psg_limit(&f, &wv).unwrap();
        let b = laurent_limit(&f, &wv.to_laurent(&q).unwrap()).unwrap();
        prop_assert_eq!(&a, &b);
        if let Limit::Exists(h) = &a {
            prop_assert_eq!(psg_limit(h, &wv).unwrap(), a.clone());
        }
    }

    #[test]
    fn standard_limits_are_idempotent(f in coeffs(3, 4, 2), w in prop::collection::vec(-4i64..=4, 3)) {
        let f = form_from(&f, 3, 4, &Field::Rational);
        let wv = WeightVector::new(w);
        if let Limit::Exists(h) = psg_limit(&f, &wv).unwrap() {
            prop_assert_eq!(psg_limit(&h, &wv).unwrap(), Limit::Exists(h));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hm_witness_bounds_subrank(
        n in 2usize..=3,
        f in coeffs(3, 3, 1),
        w in prop::collection::vec(-2i64..=2, 3),
        r in 1usize..=3,
    ) {
        let f = form_from(&f[..monomial_count(n, 3)], n, 3, &Field::Rational);
        prop_assume!(!f.is_zero() && r <= n);
        if hm_witness_check(&f, &WeightVector::new(w[..n].to_vec()), r).unwrap() {
            let v = symmetric_subrank(&f, None).unwrap();
            prop_assert!(v.lo >= r, "{:?}", v);
        }
    }
}

// ---------------------------------------------------------------------------
// Moduli

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cubic_moduli_are_invariant(f in coeffs(3, 3, 3), g in special_linear(3)) {
        let f = form_from(&f, 3, 3, &Field::Rational);
        if let Ok(p) = eta_cubic(&f) {
            prop_assert_eq!(eta_cubic(&act(&g, &f).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn quartic_moduli_are_invariant(f in coeffs(2, 4, 4), g in special_linear(2)) {
        let f = form_from(&f, 2, 4, &Field::Rational);
        if let Ok(p) = eta_quartic(&f) {
            prop_assert_eq!(eta_quartic(&act(&g, &f).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn composed_restrictions(
        f in coeffs(5, 3, 2),
        m1 in prop::collection::vec(-2i64..=2, 8),
        m2 in prop::collection::vec(-2i64..=2, 4),
    ) {
        // 4-plane chart (1 x 4), then a line inside it (2 x 2)
        let q = Field::Rational;
        let f = form_from(&f, 5, 3, &q);
        let outer = SectionFrame::new(f.clone(), matrix_from(&m1, 1, 4, &q)).unwrap();
        let step = restrict_to_plane(&outer).unwrap();
        let inner_chart = matrix_from(&m2, 2, 2, &q);
        let twice = restrict_to_plane(&SectionFrame::new(step, inner_chart.clone()).unwrap()).unwrap();
        let inner_basis = SectionFrame::new(SymTensor::zero(4, 3, q.clone()), inner_chart.clone())
            .unwrap()
            .plane_basis();
        let lower = matrix_from(&m1, 1, 4, &q).mul(&inner_basis).unwrap();
        let mut rows: Vec<Vec<FieldElem>> = (0..2).map(|i| inner_chart.row(i).to_vec()).collect();
        rows.push(lower.row(0).to_vec());
        let composed = Matrix::from_rows(rows, q.clone()).unwrap();
        let once = restrict_to_plane(&SectionFrame::new(f, composed).unwrap()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn vertex_points_have_full_multiplicity(
        k in 1usize..=3,
        h in coeffs(3, 3, 3),
        g in invertible(4, 1),
        mix in prop::collection::vec(-3i64..=3, 4),
    ) {
        let q = Field::Rational;
        let h = form_from(&h[..monomial_count(k, 3)], k, 3, &q);
        prop_assume!(!h.is_zero());
        let f = act(&matrix_from(&g, 4, 4, &q), &h.embed(4).unwrap()).unwrap();
        let locus = vertex_locus(&f).unwrap();
        prop_assert_eq!(locus.codimension(), essential_variable_count(&f));
        let mut point = vec![q.zero(); 4];
        for (b, c) in locus.basis.iter().zip(&mix) {
            for (x, y) in point.iter_mut().zip(b) {
                *x = &*x + &(&q.from_i64(*c) * y);
            }
        }
        let mut partials = vec![f.form().clone()];
        for _ in 0..2 {
            partials = partials.iter().flat_map(|p| (0..4).map(move |i| p.derivative(i))).collect();
        }
        for b in locus.basis.iter().chain(std::iter::once(&point)) {
            prop_assert!(partials.iter().all(|p| p.eval(b).is_zero()));
        }
    }

    #[test]
    fn weierstrass_targets_round_trip(a in (-9i64..=9, 1i64..=4), b in (-9i64..=9, 1i64..=4)) {
        let q = Field::Rational;
        let frac = |(n, d): (i64, i64)| (&q.from_i64(n) * &q.from_i64(d).inv().unwrap()).clone();
        let (a, b) = (frac(a), frac(b));
        match weierstrass_plane_for_target(&a, &b).unwrap() {
            WeierstrassPlane::OnCurve { .. } => {
                let four = q.from_i64(4);
                let disc = &(&four * &(&(&a * &a) * &a)) + &(&q.from_i64(27) * &(&b * &b));
                prop_assert!(disc.is_zero());
            }
            plane => {
                let target = eta_cubic(&weierstrass_cubic(&a, &b).unwrap()).unwrap();
                let got = section_moduli(&plane.frame().unwrap()).unwrap();
                prop_assert!(same_moduli(&got, &target), "{:?} vs {}", got, target);
            }
        }
    }
}

/// Random cubic, or one forced singular at `[1:0:0]` before a random change of coordinates.
fn cubic_sample(seed: &[i64], singular: bool, g: &[i64]) -> SymTensor {
    let q = Field::Rational;
    let mut c = seed.to_vec();
    if singular {
        for (i, m) in monomials_of_degree(3, 3).iter().enumerate() {
            if m.0[0] >= 2 {
                c[i] = 0;
            }
        }
    }
    let f = form_from(&c, 3, 3, &q);
    let g = matrix_from(g, 3, 3, &q);
    if g.is_invertible() {
        act(&g, &f).unwrap()
    } else {
        f
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn smoothness_matches_moduli(f in coeffs(3, 3, 3), singular in any::<bool>(), g in prop::collection::vec(-1i64..=1, 9)) {
        let h = cubic_sample(&f, singular, &g);
        prop_assume!(!h.is_zero());
        let smooth = is_smooth_hypersurface(&h).unwrap();
        let (s, t) = aronhold_st(&h).unwrap();
        let q = Field::Rational;
        let s3 = &(&s * &s) * &s;
        let disc = &(&q.from_i64(64) * &s3) + &(&t * &t);
        prop_assert_eq!(smooth, !disc.is_zero());
        let by_moduli = match eta_cubic(&h) {
            Ok(p) => p.integers() != Some((1.into(), 0.into())),
            Err(_) => false,
        };
        prop_assert_eq!(smooth, by_moduli);
    }
}

// ---------------------------------------------------------------------------
// Gcd and projective pairs

fn small_poly() -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0u32..=2, 3), -4i64..=4);
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let q = Field::Rational;
        Poly::from_terms(
            3,
            q.clone(),
            terms.into_iter().map(|(e, c)| (Monomial(e), q.from_i64(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_is_maximal(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = gcd(&ac, &bc).unwrap();
        prop_assert!(exact_div(&ac, &g).is_ok());
        prop_assert!(exact_div(&bc, &g).is_ok());
        prop_assert!(exact_div(&g, &c).is_ok(), "gcd {} misses {}", g, c);
        prop_assert_eq!(g.leading().unwrap().1.clone(), Field::Rational.one());
    }

    #[test]
    fn pair_normalization_is_projective(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (x, y) = (a.mul(&c), b.mul(&c));
        let n = normalized_pair(&x, &y).unwrap();
        prop_assert!(same_projective_pair(&n, &(x, y)));
        prop_assert_eq!(normalized_pair(&n.0, &n.1).unwrap(), n.clone());
        prop_assert!(gcd(&n.0, &n.1).unwrap().is_constant());
    }
}
