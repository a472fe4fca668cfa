use std::sync::Arc;

use proptest::prelude::*;

use extraspecial::dickson::mui_poly;
use extraspecial::fplinalg::{hyperplanes_containing, projective_count, LinearForm, Subspace};
use extraspecial::quillen::{class_chi, inflate};
use extraspecial::symplectic::SymplecticSpace;
use extraspecial::{FpPoly, PolyRing, PrimeField};

const VARS: usize = 3;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7, 13])
}

fn ring(p: u32, k: usize) -> Arc<PolyRing> {
    PolyRing::numbered(PrimeField::new(p).unwrap(), "x", k).unwrap()
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(k: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0u32..4, k), -20i64..20), 0..6)
}

fn poly(ring: &Arc<PolyRing>, t: &Terms) -> FpPoly {
    t.iter().fold(ring.zero(), |acc, (e, c)| acc + FpPoly::monomial(ring, e, *c))
}

fn vectors(k: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..13, k), 0..=k)
}

fn subspace(p: u32, k: usize, rows: &[Vec<u8>]) -> Subspace {
    let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&c| c % p as u8).collect()).collect();
    Subspace::span(PrimeField::new(p).unwrap(), k, &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in prime(), a in terms(VARS), b in terms(VARS), c in terms(VARS)) {
        let r = ring(p, VARS);
        let (f, g, h) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &r.one(), f.clone());
        prop_assert_eq!(&f + &(-&f), r.zero());
    }

    #[test]
    fn substitution_is_a_ring_map(p in prime(), a in terms(VARS), b in terms(VARS), imgs in prop::collection::vec(terms(2), VARS)) {
        let src = ring(p, VARS);
        let dst = ring(p, 2);
        let images: Vec<FpPoly> = imgs.iter().map(|t| poly(&dst, t)).collect();
        let (f, g) = (poly(&src, &a), poly(&src, &b));
        let s = |h: &FpPoly| h.substitute(&images, &dst).unwrap();
        prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
        prop_assert_eq!(s(&(&f + &g)), &s(&f) + &s(&g));
    }

    #[test]
    fn frobenius_is_additive(p in prime(), a in terms(VARS), b in terms(VARS)) {
        let r = ring(p, VARS);
        let (f, g) = (poly(&r, &a), poly(&r, &b));
        prop_assert_eq!((&f + &g).frobenius_power(1), &f.frobenius_power(1) + &g.frobenius_power(1));
        prop_assert_eq!(f.frobenius_power(1), f.pow(p as u64));
    }

    #[test]
    fn derivative_obeys_leibniz(p in prime(), a in terms(VARS), b in terms(VARS), var in 0..VARS) {
        let r = ring(p, VARS);
        let (f, g) = (poly(&r, &a), poly(&r, &b));
        let d = |h: &FpPoly| h.partial_derivative(var).unwrap();
        prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
        prop_assert!(d(&f.frobenius_power(1)).is_zero());
    }

    #[test]
    fn text_round_trips(p in prime(), a in terms(VARS)) {
        let r = ring(p, VARS);
        let f = poly(&r, &a);
        prop_assert_eq!(FpPoly::parse(&r, &f.to_text()).unwrap(), f);
    }

    #[test]
    fn annihilator_is_an_involution(p in prime(), k in 1usize..5, rows in vectors(4)) {
        let rows: Vec<Vec<u8>> = rows.into_iter().map(|r| r[..k].to_vec()).collect();
        let u = subspace(p, k, &rows);
        let ann = u.annihilator();
        prop_assert_eq!(ann.dim(), u.codim());
        prop_assert_eq!(ann.annihilator(), u);
    }

    #[test]
    fn hyperplane_counts_match_projective_points(p in prop::sample::select(vec![3u32, 5]), rows in vectors(3)) {
        let u = subspace(p, 3, &rows);
        prop_assume!(u.dim() < 3);
        let v = Subspace::full(PrimeField::new(p).unwrap(), 3);
        let hyps = hyperplanes_containing(&v, &u).unwrap();
        prop_assert_eq!(hyps.len() as u64, projective_count(p, u.codim() as u32));
        prop_assert!(hyps.iter().all(|h| h.dim() == 2 && h.contains_subspace(&u)));
    }

    #[test]
    fn mui_is_additive_and_linear(p in prop::sample::select(vec![3u32, 5]), rows in vectors(2), c in 0u32..13) {
        // x0, x1 span V; x2, x3 are independent arguments
        let r = ring(p, 4);
        let span = subspace(p, 2, &rows);
        let gens: Vec<FpPoly> = span.basis().iter().map(|row| {
            r.linear_form(&[row[0] as u32, row[1] as u32, 0, 0])
        }).collect();
        let (x, y) = (r.var(2), r.var(3));
        let m = |arg: &FpPoly| mui_poly(&r, &gens, arg).unwrap();
        prop_assert_eq!(m(&(&x + &y)), &m(&x) + &m(&y));
        prop_assert_eq!(m(&x.scale(c)), m(&x).scale(c));
    }

    #[test]
    fn inflation_is_a_ring_map(forms in prop::collection::vec(prop::collection::vec(0u32..3, 4), 7)) {
        prop_assume!(forms.iter().all(|l| l.iter().any(|&c| c != 0)));
        let e = SymplecticSpace::new(PrimeField::new(3).unwrap(), 2).unwrap();
        let r = e.dual_ring();
        let l: Vec<FpPoly> = forms.iter().map(|c| r.linear_form(c)).collect();
        let (f, g, f2) = (&l[0] * &l[1], &(&l[2] * &l[3]) * &l[4], &l[5] * &l[6]);
        let inf = |h: &FpPoly| inflate(&e, h).unwrap();
        prop_assert_eq!(inf(&(&f * &g)), inf(&f).mul(&inf(&g)).unwrap());
        prop_assume!(!(&f + &f2).is_zero());
        prop_assert_eq!(inf(&(&f + &f2)), inf(&f).add(&inf(&f2)).unwrap());
    }

    #[test]
    fn chi_depends_only_on_the_kernel(coeffs in prop::collection::vec(0u32..5, 4), c in 1u32..5, r in 0usize..2) {
        prop_assume!(coeffs.iter().any(|&x| x != 0));
        let e = SymplecticSpace::new(PrimeField::new(5).unwrap(), 2).unwrap();
        let phi = LinearForm::new(e.field(), &coeffs);
        let scaled: Vec<u32> = coeffs.iter().map(|x| x * c).collect();
        let chi = class_chi(&e, r, &phi).unwrap();
        prop_assert_eq!(class_chi(&e, r, &LinearForm::new(e.field(), &scaled)).unwrap(), chi.clone());
        prop_assert_eq!(chi.scale(c).add(&chi.scale(5 - c)).unwrap().is_zero(), true);
    }
}
