//! Pinned values, each checked against a computation that does not go
//! through the code path under test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use symsub::border::{
    hm_witness_check, laurent_limit, psg_limit, weight_decomposition, Limit, WeightVector,
};
use symsub::groebner::{
    buchberger, ideal_membership, is_solvable_over_closure, normal_form, Ideal, MonomialOrder,
};
use symsub::moduli::{
    aronhold_st, eisenstein_de, eta_cubic, eta_quartic, restrict_to_plane, weierstrass_cubic,
    ModuliPoint, SectionFrame,
};
use symsub::parse::parse_poly;
use symsub::poly::{monomial_count, monomials_of_degree};
use symsub::subrank::{
    border_upper_bound, certify_lower_bound, contraction, differential_image_rank,
    essential_variable_count, generic_lower_bound, generic_upper_bound, restriction_system,
    slice_witness_check, slice_witness_for_unit, symmetric_subrank, symmetric_subrank_with,
    unit_orbit_dimension, Evidence, SubrankOptions,
};
use symsub::{
    act, substitute, unit_tensor, unit_tensor_over, Field, FieldElem, LaurentMatrix, Matrix, Poly,
    SymTensor,
};

fn q() -> Field {
    Field::Rational
}

fn form(s: &str, n: usize) -> SymTensor {
    SymTensor::parse(s, n, None, &q()).unwrap()
}

fn poly(s: &str, n: usize) -> Poly {
    parse_poly(s, n, &q()).unwrap()
}

fn rat(n: i64, d: i64) -> FieldElem {
    FieldElem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// ` + c*m` or ` - |c|*m`, since the parser takes no sign after `+`.
fn signed_term(c: &BigRational, m: &str) -> String {
    if c < &BigRational::zero() {
        format!(" - {}*{m}", -c)
    } else {
        format!(" + {c}*{m}")
    }
}

fn pow(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

// ---------------------------------------------------------------------------
// Forms

#[test]
fn substitution_matches_pointwise_evaluation() {
    let f = form("x0^2*x2^3 + x1^5 + x0*x1*x2^3", 3);
    let m = Matrix::from_i64_rows(&[&[2, -1], &[3, 5], &[-7, 4]], &q());
    let g = substitute(&f, &m).unwrap();
    assert_eq!((g.nvars(), g.degree()), (2, 5));
    for (a, b) in [(1, 0), (0, 1), (2, -3), (-5, 7), (4, 9)] {
        let y = [q().from_i64(a), q().from_i64(b)];
        let x = m.apply(&y);
        assert_eq!(g.form().eval(&y), f.form().eval(&x));
    }
}

#[test]
fn unit_tensors_and_actions() {
    assert_eq!(unit_tensor(1, 3), form("x0^3", 1));
    assert_eq!(unit_tensor(2, 5), form("x0^5 + x1^5", 2));
    assert_eq!(unit_tensor(3, 3), form("x0^3 + x1^3 + x2^3", 3));
    let col = Matrix::from_i64_rows(&[&[1], &[-1]], &q());
    assert!(substitute(&unit_tensor(2, 3), &col).unwrap().is_zero());
    let g = Matrix::from_i64_rows(&[&[2, 0], &[0, 1]], &q());
    assert_eq!(act(&g, &form("x0^3", 2)).unwrap(), form("8*x0^3", 2));
    let swap = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]], &q());
    assert_eq!(act(&swap, &form("x0^2*x1", 2)).unwrap(), form("x1^2*x0", 2));
}

#[test]
fn laurent_expansions() {
    let rows = |r: [[&str; 3]; 3]| -> LaurentMatrix {
        let r: Vec<Vec<String>> = r
            .iter()
            .map(|x| x.iter().map(|s| s.to_string()).collect())
            .collect();
        LaurentMatrix::parse_rows(&r, &q()).unwrap()
    };
    let g = rows([["t", "0", "0"], ["0", "t^-1", "0"], ["0", "0", "1"]]);
    let f = form("x0*x1*x2", 3);
    assert_eq!(laurent_limit(&f, &g).unwrap(), Limit::Exists(f.clone()));
    let g = rows([["t^3", "0", "t^-3"], ["0", "1", "0"], ["0", "0", "t^2"]]);
    let quintic = form("x0^2*x2^3 + x1^5 + x0*x1*x2^3", 3);
    let expanded = symsub::laurent_act(&g, &quintic).unwrap();
    assert_eq!(expanded.min_exponent(), Some(0));
    assert_eq!(expanded.coefficient(0), form("x1^5 + x2^5", 3));
}

// ---------------------------------------------------------------------------
// Ideals

#[test]
fn groebner_anchors() {
    let inconsistent = Ideal::new(vec![poly("x0 - 1", 1), poly("x0 - 2", 1)]).unwrap();
    assert!(buchberger(&inconsistent, &MonomialOrder::Grevlex)
        .unwrap()
        .is_unit());
    let reduced = Ideal::new(vec![poly("x0^2 + 1", 1)]).unwrap();
    let gb = buchberger(&reduced, &MonomialOrder::Grevlex).unwrap();
    assert_eq!(gb.basis(), &[poly("x0^2 + 1", 1)]);
    assert!(is_solvable_over_closure(&reduced).unwrap());
    assert!(!is_solvable_over_closure(
        &Ideal::new(vec![poly("x0", 1), poly("x0 - 1", 1)]).unwrap()
    )
    .unwrap());
    // x0^3 + x1^3 = (x0 + x1)(x0^2 - x0 x1 + x1^2)
    let factor = poly("x0 + x1", 2);
    let cube = poly("x0^3 + x1^3", 2);
    assert_eq!(factor.mul(&poly("x0^2 - x0*x1 + x1^2", 2)), cube);
    let gb = buchberger(
        &Ideal::new(vec![factor.clone()]).unwrap(),
        &MonomialOrder::Grevlex,
    )
    .unwrap();
    assert!(normal_form(&cube, &gb).unwrap().is_zero());
    assert!(ideal_membership(&cube, &Ideal::new(vec![factor]).unwrap()).unwrap());
    let quintic = form("x0^2*x2^3 + x1^5 + x0*x1*x2^3", 3);
    let system = restriction_system(&quintic, 2).unwrap();
    assert_eq!((system.generators().len(), system.nvars()), (6, 6));
    assert!(!is_solvable_over_closure(&system).unwrap());
    let single = restriction_system(&form("x0^3", 1), 1).unwrap();
    assert_eq!(single.generators().len(), 1);
}

#[test]
fn slices_by_explicit_factorization() {
    // I_4 = (x0^3 + x1^3) + (x2^3 + x3^3), each summand divisible by its linear form
    let w = vec![poly("x0 + x1", 4), poly("x2 + x3", 4)];
    assert!(slice_witness_check(&unit_tensor(4, 3), &w).unwrap());
    assert!(!slice_witness_check(&unit_tensor(3, 3), &[poly("x0 + x1", 3)]).unwrap());
    assert_eq!(slice_witness_for_unit(4, 3, &q()).unwrap(), w);
    assert_eq!(
        slice_witness_for_unit(3, 3, &q()).unwrap(),
        vec![poly("x0 + x1", 3), poly("x2", 3)]
    );
    let f17 = Field::Prime(17);
    let roots: Vec<i64> = (0..17).filter(|z| (z * z * z * z) % 17 == 16).collect();
    assert!(!roots.is_empty());
    let l = &slice_witness_for_unit(2, 4, &f17).unwrap()[0];
    let c = l.coeff(&symsub::Monomial(vec![0, 1]));
    let c = (0..17).find(|&z| f17.from_i64(z) == c).unwrap();
    assert!(
        roots.contains(&c),
        "x1 coefficient {c} is not a root of z^4 = -1"
    );
    assert!(slice_witness_check(&unit_tensor_over(2, 4, &f17), std::slice::from_ref(l)).unwrap());
}

// ---------------------------------------------------------------------------
// Subrank

fn binary_cubic_discriminant(f: &SymTensor) -> FieldElem {
    // a x^3 + b x^2 y + c x y^2 + d y^3
    let co = |e: [u32; 2]| f.form().coeff(&symsub::Monomial(e.to_vec()));
    let (a, b, c, d) = (co([3, 0]), co([2, 1]), co([1, 2]), co([0, 3]));
    let k = |n: i64| q().from_i64(n);
    let t1 = &(&b * &b) * &(&c * &c);
    let t2 = &k(-4) * &(&a * &(&(&c * &c) * &c));
    let t3 = &k(-4) * &(&(&b * &b) * &(&b * &d));
    let t4 = &k(-27) * &(&(&a * &a) * &(&d * &d));
    let t5 = &k(18) * &(&(&a * &b) * &(&c * &d));
    &(&(&t1 + &t2) + &(&t3 + &t4)) + &t5
}

#[test]
fn double_root_cubic_has_subrank_one() {
    let f = form("x0^2*x1", 2);
    assert!(binary_cubic_discriminant(&f).is_zero());
    assert!(!binary_cubic_discriminant(&unit_tensor(2, 3)).is_zero());
    let opts = SubrankOptions {
        center_test: false,
        section_attempts: 0,
        ..SubrankOptions::default()
    };
    let v = symmetric_subrank_with(&f, &opts).unwrap();
    assert_eq!(v.value(), Some(1));
    assert!(matches!(v.levels[1].evidence, Evidence::UnitIdeal { .. }));
    assert_eq!(
        symmetric_subrank(&form("x0^2*x2^3 + x1^5 + x0*x1*x2^3", 3), None)
            .unwrap()
            .value(),
        Some(1)
    );
    for r in 1..=4 {
        assert_eq!(
            symmetric_subrank(&unit_tensor(r, 3), None).unwrap().value(),
            Some(r)
        );
    }
}

/// Largest `m >= 0` with `m^k <= x`, by exhaustive search.
fn floor_root_by_search(x: u128, k: u32) -> u64 {
    let mut m = 0u64;
    while (m as u128 + 1).pow(k) <= x {
        m += 1;
    }
    m
}

#[test]
fn bound_values() {
    // floor(sqrt(6n + 1/4) - 3/2): largest m with (2m + 3)^2 <= 24 n + 1
    let cubic_upper = |n: u64| {
        (0..)
            .take_while(|&m: &u64| (2 * m + 3).pow(2) <= 24 * n + 1)
            .last()
            .unwrap_or(0)
    };
    assert_eq!(generic_upper_bound(6, 3).unwrap(), 4);
    assert_eq!(generic_upper_bound(4, 3).unwrap(), 3);
    assert_eq!(generic_upper_bound(1, 3).unwrap(), 1);
    for n in 2..300 {
        assert_eq!(
            generic_upper_bound(n, 3).unwrap(),
            cubic_upper(n),
            "n = {n}"
        );
    }
    let hl = |n: u64, d: u64| {
        (1..n)
            .filter(|&r| {
                let binom = (0..d).fold(1u64, |acc, i| acc * (r + i) / (i + 1));
                (n - r) * r >= binom
            })
            .max()
            .unwrap_or(0)
    };
    assert_eq!(generic_lower_bound(4, 3).unwrap(), 2);
    assert_eq!(generic_lower_bound(1, 3).unwrap(), 0);
    for d in 3..=5u32 {
        for n in 1..200 {
            assert_eq!(
                generic_lower_bound(n, d).unwrap(),
                hl(n, d as u64),
                "n = {n}, d = {d}"
            );
        }
    }
    assert_eq!(border_upper_bound(1, 3).unwrap(), 9);
    assert_eq!(border_upper_bound(10, 3).unwrap(), 30);
    assert_eq!(border_upper_bound(1, 5).unwrap(), 9);
    for d in 3..=5u32 {
        let fact: u128 = (1..=d as u128).product();
        for n in [1u64, 2, 7, 50, 999] {
            let x = 4 * fact * n as u128 * (1u128 << (d - 1));
            assert_eq!(
                border_upper_bound(n, d).unwrap(),
                floor_root_by_search(x, d - 1)
            );
        }
    }
}

/// Rank over `F_p` by plain row reduction.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inv = |a: u64| {
        let (mut r, mut base, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = (r as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c]);
        let pivot: Vec<u64> = rows[rank]
            .iter()
            .map(|&v| (v as u128 * s as u128 % p as u128) as u64)
            .collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let k = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v + p - (k as u128 * *pv as u128 % p as u128) as u64) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

#[test]
fn certificates_against_plain_rank() {
    let p = 1_000_003u64;
    let field = Field::Prime(p);
    for (n, r) in [(4usize, 2usize), (9, 3)] {
        let cert = certify_lower_bound(n, 3, r, 5, &field, 10).unwrap();
        let forms = cert.parsed_forms().unwrap();
        assert_eq!(forms.len(), n - r);
        let cols = monomials_of_degree(r, 3);
        let rows: Vec<Vec<u64>> = forms
            .iter()
            .flat_map(|h| (0..r).map(move |j| h.mul(&Poly::var(r, j, h.field().clone()))))
            .map(|prod| {
                cols.iter()
                    .map(|m| {
                        let c = prod.coeff(m);
                        (0..p).find(|&v| field.from_i64(v as i64) == c).unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(rank_mod_p(rows, p), monomial_count(r, 3));
    }
    assert!(certify_lower_bound(3, 3, 2, 0, &q(), 10).is_err());
}

#[test]
fn differential_ranks() {
    // for the unit cubic the contractions are x_j^2, so the image is spanned by x_j^2 x_i
    for n in 1..=4usize {
        let mut hit = std::collections::BTreeSet::new();
        for j in 0..n {
            for i in 0..n {
                let mut e = vec![0u32; n];
                e[j] += 2;
                e[i] += 1;
                hit.insert(e);
            }
        }
        assert_eq!(hit.len(), n * n);
        assert_eq!(
            differential_image_rank(&unit_tensor(n, 3), n).unwrap(),
            hit.len()
        );
    }
    let cert = certify_lower_bound(4, 3, 2, 1, &q(), 10).unwrap();
    assert_eq!(
        differential_image_rank(&cert.witness_form().unwrap(), 2).unwrap(),
        monomial_count(4, 3)
    );
    // every binary cubic monomial is some x_j^2 x_i, but x0 x1 x2 is not
    let embedded = unit_tensor(2, 3).embed(4).unwrap();
    assert_eq!(
        differential_image_rank(&embedded, 2).unwrap(),
        monomial_count(4, 3)
    );
    let embedded = unit_tensor(3, 3).embed(5).unwrap();
    assert_eq!(
        differential_image_rank(&embedded, 3).unwrap(),
        monomial_count(5, 3) - 1
    );
    assert!(differential_image_rank(&form("x0^3 + 2*x1^3 + x0*x1*x2", 3), 2).is_err());
}

#[test]
fn contractions_and_orbits() {
    let e0 = [q().one(), q().zero(), q().zero()];
    assert_eq!(contraction(&form("x0^3", 3), &e0).unwrap(), form("x0^2", 3));
    assert_eq!(
        contraction(&form("x0*x1*x2", 3), &e0).unwrap(),
        form("1/3*x1*x2", 3)
    );
    let y = [rat(2, 1), rat(-1, 1), rat(5, 1)];
    assert_eq!(
        contraction(&unit_tensor(3, 4), &y).unwrap(),
        form("2*x0^3 - x1^3 + 5*x2^3", 3)
    );
    assert_eq!(unit_orbit_dimension(1, 3).unwrap(), 1);
    assert_eq!(unit_orbit_dimension(2, 3).unwrap(), 4);
    assert_eq!(unit_orbit_dimension(4, 5).unwrap(), 16);
    assert_eq!(essential_variable_count(&form("x0^3", 5)), 1);
    assert_eq!(
        essential_variable_count(&form("x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3", 2)),
        1
    );
    assert_eq!(essential_variable_count(&unit_tensor(4, 3)), 4);
}

// ---------------------------------------------------------------------------
// Degenerations

#[test]
fn weight_components() {
    let quintic = form("x0^2*x2^3 + x1^5 + x0*x1*x2^3", 3);
    let parts = weight_decomposition(&quintic, &WeightVector::new(vec![3, 0, 2])).unwrap();
    let keys: Vec<i64> = parts.keys().copied().collect();
    assert_eq!(keys, vec![0, 9, 12]);
    assert_eq!(parts[&12], form("x0^2*x2^3", 3));
    let f = form("x0^3 + x1^3", 2);
    assert_eq!(
        weight_decomposition(&f, &WeightVector::new(vec![0, 0])).unwrap()[&0],
        f
    );
    let parts = weight_decomposition(&form("x0^2*x1", 2), &WeightVector::new(vec![1, -2])).unwrap();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0]);
}

#[test]
fn limits_and_witnesses() {
    let f = form("x0^2*x1 + x1^3", 2);
    assert_eq!(
        psg_limit(&f, &WeightVector::new(vec![0, 0])).unwrap(),
        Limit::Exists(f.clone())
    );
    assert_eq!(
        psg_limit(&f, &WeightVector::new(vec![0, 1])).unwrap(),
        Limit::Exists(SymTensor::zero(2, 3, q()))
    );
    assert!(matches!(
        psg_limit(&form("x0^3 + x0*x1^2", 2), &WeightVector::new(vec![0, -1])).unwrap(),
        Limit::DoesNotExist { .. }
    ));
    let embedded = unit_tensor(2, 3).embed(3).unwrap();
    assert!(hm_witness_check(&embedded, &WeightVector::new(vec![0, 0, 1]), 2).unwrap());
    // pushing x2 away from x0^3 + x1^3 + x0 x1 x2 leaves x0^3 + x1^3
    let h = form("x0^3 + x1^3 + x0*x1*x2", 3);
    let w = WeightVector::new(vec![0, 0, 1]);
    let Limit::Exists(limit) = psg_limit(&h, &w).unwrap() else {
        panic!("limit exists")
    };
    assert_eq!(limit, form("x0^3 + x1^3", 3));
    let direct = symmetric_subrank(&limit, None).unwrap().value().unwrap();
    let essential = essential_variable_count(&limit);
    assert_eq!((direct, essential), (2, 2));
    for r in 1..=3 {
        assert_eq!(
            hm_witness_check(&h, &w, r).unwrap(),
            r == essential && r <= direct,
            "r = {r}"
        );
    }
}

// ---------------------------------------------------------------------------
// Invariants and moduli

#[test]
fn hesse_pencil_invariants() {
    // classical: S = m - m^4, T = 1 - 20 m^3 - 8 m^6 on x^3 + y^3 + z^3 + 6 m xyz
    for (num, den) in [(0, 1), (1, 1), (-1, 2), (2, 3), (5, 1), (-7, 3)] {
        let m = big(num, den);
        let text = format!(
            "x0^3 + x1^3 + x2^3{}",
            signed_term(&(m.clone() * BigInt::from(6)), "x0*x1*x2")
        );
        let h = SymTensor::parse(&text, 3, Some(3), &q()).unwrap();
        let (s, t) = aronhold_st(&h).unwrap();
        assert_eq!(s.to_rational().unwrap(), m.clone() - pow(&m, 4), "m = {m}");
        let expected_t = BigRational::one() - big(20, 1) * pow(&m, 3) - big(8, 1) * pow(&m, 6);
        assert_eq!(t.to_rational().unwrap(), expected_t, "m = {m}");
    }
    let (s, t) = aronhold_st(&form("x0*x1*x2", 3)).unwrap();
    assert_eq!((s, t), (rat(-1, 1296), rat(-1, 5832)));
    let (s, _) = aronhold_st(&form("x0^3 + x1^3 + x2^3", 3)).unwrap();
    assert!(s.is_zero());
}

/// `(D, E)` from the coefficients of `a x^4 + 4b x^3y + 6c x^2y^2 + 4d xy^3 + e y^4`.
fn eisenstein_by_hand(coeffs: [i64; 5]) -> (BigRational, BigRational) {
    let [a, b, c, d, e] = [
        big(coeffs[0], 1),
        big(coeffs[1], 4),
        big(coeffs[2], 6),
        big(coeffs[3], 4),
        big(coeffs[4], 1),
    ];
    let dd = a.clone() * &e - big(4, 1) * &b * &d + big(3, 1) * &c * &c;
    let ee = a.clone() * &c * &e + big(2, 1) * &b * &c * &d
        - a * &d * &d
        - b.clone() * &b * &e
        - pow(&c, 3);
    (dd, ee)
}

#[test]
fn quartic_invariants() {
    for coeffs in [
        [1, 0, 0, 0, 1],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 1, 0, -1, 0],
        [3, -2, 5, 7, -1],
    ] {
        let text: String = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| signed_term(&big(c, 1), &format!("x0^{}*x1^{i}", 4 - i)))
            .collect();
        let h = form(&format!("0{text}"), 2);
        let (d, e) = eisenstein_de(&h).unwrap();
        assert_eq!(
            (d.to_rational().unwrap(), e.to_rational().unwrap()),
            eisenstein_by_hand(coeffs),
            "{coeffs:?}"
        );
    }
    let (d, e) = eisenstein_de(&form("x0^2*x1^2", 2)).unwrap();
    assert!(!d.is_zero() && !e.is_zero());
    assert_eq!(&(&d * &d) * &d, &(&rat(27, 1) * &e) * &e);
    let (d, e) = eisenstein_de(&form("x0^3*x1", 2)).unwrap();
    assert!(d.is_zero() && e.is_zero());
    assert!(eta_quartic(&form("x0^3*x1", 2)).is_err());
}

#[test]
fn moduli_points() {
    let point = |a, b| ModuliPoint::from_i64(a, b).unwrap();
    assert_eq!(
        eta_cubic(&form("x0^3 + x1^3 + x2^3", 3)).unwrap(),
        point(0, 1)
    );
    assert_eq!(
        eta_cubic(&form("x1^2*x2 - x0^3 - x0^2*x2", 3)).unwrap(),
        point(1, 0)
    );
    assert_eq!(eta_quartic(&form("x0^4 + x1^4", 2)).unwrap(), point(1, 1));
    assert_eq!(eta_quartic(&form("x0^2*x1^2", 2)).unwrap(), point(1, 0));
    assert_eq!(
        eta_quartic(&form("x0^3*x1 - x0*x1^3", 2)).unwrap(),
        point(1, 1)
    );
    // y^2 z = x^3 + a x z^2 + b z^3: same point iff same a^3 / (4a^3 + 27b^2)
    let j = |a: i64, b: i64| big(a * a * a, 4 * a * a * a + 27 * b * b);
    let samples = [
        (1, 1),
        (2, 5),
        (-1, 3),
        (4, 8),
        (1, 2),
        (-3, 5),
        (0, 1),
        (1, 0),
        (9, 27),
    ];
    for &(a1, b1) in &samples {
        for &(a2, b2) in &samples {
            let p1 = eta_cubic(&weierstrass_cubic(&rat(a1, 1), &rat(b1, 1)).unwrap()).unwrap();
            let p2 = eta_cubic(&weierstrass_cubic(&rat(a2, 1), &rat(b2, 1)).unwrap()).unwrap();
            assert_eq!(
                p1 == p2,
                j(a1, b1) == j(a2, b2),
                "({a1},{b1}) vs ({a2},{b2})"
            );
        }
    }
}

#[test]
fn plane_restrictions() {
    let f = unit_tensor(5, 3);
    let frame = SectionFrame::new(f, Matrix::zeros(2, 3, q())).unwrap();
    assert_eq!(restrict_to_plane(&frame).unwrap(), unit_tensor(3, 3));
    // the plane x2 = -x0, x3 = -x1 lies on x0^3 + x1^3 + x2^3 + x3^3
    let chart = Matrix::from_i64_rows(&[&[1, 0], &[0, 1]], &q());
    let frame = SectionFrame::new(unit_tensor(4, 3), chart).unwrap();
    assert!(restrict_to_plane(&frame).unwrap().is_zero());
}
