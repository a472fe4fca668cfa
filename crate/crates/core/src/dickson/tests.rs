use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fplinalg::{all_subspaces, Subspace};
use crate::fppoly::{PolyRing, PrimeField};
use crate::report::Status;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn ring(p: u32, names: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(field(p), names.iter().copied()).unwrap()
}

fn parse(r: &Arc<PolyRing>, s: &str) -> FpPoly {
    FpPoly::parse(r, s).unwrap()
}

#[test]
fn mui_of_a_line() {
    let r = ring(3, &["x", "X"]);
    let (x, big_x) = (r.var(0), r.var(1));
    let m = mui_poly(&r, &[x], &big_x).unwrap();
    assert_eq!(m, parse(&r, "x1^3 + 2*x0^2*x1"));
}

#[test]
fn mui_of_zero_space_is_identity() {
    let r = ring(3, &["X"]);
    assert_eq!(mui_poly(&r, &[], &r.var(0)).unwrap(), r.var(0));
}

#[test]
fn mui_of_a_plane_only_has_p_power_terms() {
    let r = ring(3, &["x", "y", "X"]);
    let m = mui_poly(&r, &[r.var(0), r.var(1)], &r.var(2)).unwrap();
    assert_eq!(m.degree(), Some(9));
    for (mono, _) in m.terms() {
        assert!([1, 3, 9].contains(&mono.exponent(2)), "{m:?}");
    }
}

#[test]
fn dependent_generators_rejected() {
    let r = ring(3, &["x", "y"]);
    let x = r.var(0);
    assert_eq!(MuiContext::new(&r, &[x.clone(), x.scale(2)]).unwrap_err(), Error::DependentGenerators);
    assert_eq!(MuiContext::new(&r, &[&x * &x]).unwrap_err(), Error::NotLinear);
}

#[test]
fn dickson_invariants_in_two_variables() {
    let r = ring(3, &["x", "y"]);
    let gens = [r.var(0), r.var(1)];
    // oracle values from an independent expansion of the Mui product
    assert_eq!(dickson_invariant(&r, &gens, 1).unwrap(), parse(&r, "x0^6 + x0^4*x1^2 + x0^2*x1^4 + x1^6"));
    assert_eq!(dickson_invariant(&r, &gens, 0).unwrap(), parse(&r, "x0^6*x1^2 + x0^4*x1^4 + x0^2*x1^6"));
    assert!(dickson_invariant(&r, &gens, 2).unwrap().is_one());
    assert!(dickson_invariant(&r, &gens, -1).unwrap().is_zero());
    assert!(dickson_invariant(&r, &gens, 3).is_err());

    // Q_{2,1} = (x y^9 − x^9 y) / (x y^3 − x^3 y)
    let num = parse(&r, "x0*x1^9 + 2*x0^9*x1");
    let den = parse(&r, "x0*x1^3 + 2*x0^3*x1");
    assert_eq!(num.exact_divide(&den).unwrap().unwrap(), dickson_invariant(&r, &gens, 1).unwrap());
}

#[test]
fn dickson_of_a_line() {
    let r = ring(3, &["x"]);
    assert_eq!(dickson_invariant(&r, &[r.var(0)], 0).unwrap(), parse(&r, "x0^2"));
}

#[test]
fn mui_rel_examples() {
    let r = ring(3, &["x", "y"]);
    let (x, y) = (r.var(0), r.var(1));
    assert_eq!(mui_rel(&r, &[], &x).unwrap(), parse(&r, "x0^2"));
    let expected = parse(&r, "x1^3 + 2*x0^2*x1").pow(2);
    assert_eq!(mui_rel(&r, std::slice::from_ref(&x), &y).unwrap(), expected);
    assert_eq!(mui_rel(&r, std::slice::from_ref(&x), &(&y + &x)).unwrap(), expected);
    assert_eq!(mui_rel(&r, std::slice::from_ref(&x), &y.scale(2)).unwrap(), expected);
    assert_eq!(mui_rel(&r, std::slice::from_ref(&x), &x.scale(2)).unwrap_err(), Error::ArgumentInSubspace);
}

#[test]
fn mui_is_additive_and_vanishes_on_span() {
    let r = ring(5, &["x", "y", "z"]);
    let ctx = MuiContext::new(&r, &[r.var(0), &r.var(1) + &r.var(2).scale(3)]).unwrap();
    let a = parse(&r, "2*x0 + x2");
    let b = parse(&r, "x1 + 4*x2");
    assert_eq!(ctx.eval(&(&a + &b)).unwrap(), ctx.eval(&a).unwrap() + ctx.eval(&b).unwrap());
    assert_eq!(ctx.eval(&a.scale(3)).unwrap(), ctx.eval(&a).unwrap().scale(3));
    for u in ctx.elements() {
        assert!(ctx.eval(&u).unwrap().is_zero());
    }
}

#[test]
fn recursion_matches_direct_product_with_wide_ring() {
    // six variables: outside the cached cross-check's cheap range at p = 5
    let r = PolyRing::numbered(field(5), "v", 6).unwrap();
    let gens = [&r.var(0) + &r.var(3), &r.var(1) + &r.var(4).scale(2)];
    let arg = &r.var(2) + &r.var(5);
    assert_eq!(mui_recursive(&gens, &arg), mui_direct(&r, &gens, &arg));
}

#[test]
fn zeta_examples() {
    let e = SymplecticSpace::new(field(3), 1).unwrap();
    let r = e.dual_ring().clone();
    let z1 = zeta(&e, 1).unwrap();
    assert_eq!(z1.to_text(), "x0*x1^3 + 2*x0^3*x1");
    assert!(zeta(&e, 0).is_err());

    let z2 = zeta(&e, 2).unwrap();
    let q21 = dickson_invariant(&r, &[e.alpha(1), e.beta(1)], 1).unwrap();
    assert_eq!(z2.exact_divide(&z1).unwrap().unwrap(), q21);
    assert_eq!(z2, &z1 * &q21);

    // β ↦ 0 restricts to span{A_1, ..., A_n}
    let e2 = SymplecticSpace::new(field(3), 2).unwrap();
    let r2 = e2.dual_ring();
    let images: Vec<FpPoly> = (0..4).map(|k| if k < 2 { r2.var(k) } else { r2.zero() }).collect();
    for i in 1..=3 {
        assert!(zeta(&e2, i).unwrap().substitute_linear(&images, r2).unwrap().is_zero());
    }
}

#[test]
fn zeta_is_symplectic_invariant() {
    let e = SymplecticSpace::new(field(3), 2).unwrap();
    for i in 1..=2 {
        let z = zeta(&e, i).unwrap();
        assert_eq!(z.homogeneous_degree(), Some(3u32.pow(i) + 1));
        for g in e.sp_generators() {
            assert_eq!(e.pullback(&z, &g).unwrap(), z);
        }
        for l in e.lagrangians().iter() {
            assert!(l.restrict(&z).unwrap().is_zero());
        }
    }
}

#[test]
fn dickson_invariance_under_change_of_basis() {
    let r = ring(3, &["x", "y", "z"]);
    let ctx = MuiContext::new(&r, &[r.var(0), r.var(1)]).unwrap();
    let other = MuiContext::new(&r, &[&r.var(0) + &r.var(1), &r.var(0) - &r.var(1)]).unwrap();
    for k in 0..=2 {
        assert_eq!(ctx.dickson(k).unwrap(), other.dickson(k).unwrap());
    }
}

#[test]
fn dickson_relation_plane_over_zero() {
    let f = field(3);
    let rep = verify_dickson_relation(&Subspace::full(f, 2), &Subspace::zero(f, 2)).unwrap();
    assert_eq!(rep.status, Status::Pass, "{rep:?}");
    assert_eq!(rep.checks_run, 3);
}

#[test]
fn dickson_relation_codim_one_and_line_in_f3_cubed() {
    let f = field(3);
    let v = Subspace::full(f, 3);
    let plane = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
    assert!(verify_dickson_relation(&v, &plane).unwrap().passed());
    let line = Subspace::span(f, 3, &[vec![1, 2, 0]]).unwrap();
    assert!(verify_dickson_relation(&v, &line).unwrap().passed());
}

#[test]
fn muirel_sum_examples() {
    for p in [3, 5] {
        let f = field(p);
        let rep = verify_muirel_sum(&Subspace::full(f, 2), &Subspace::zero(f, 2)).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
    let f = field(3);
    let line = Subspace::span(f, 3, &[vec![0, 1, 2]]).unwrap();
    assert!(verify_muirel_sum(&Subspace::full(f, 3), &line).unwrap().passed());
    assert!(verify_muirel_sum(&Subspace::full(f, 3), &Subspace::zero(f, 3)).is_err());
}

#[test]
fn muirel_invariance_and_induction_on_small_spaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [3, 5] {
        let f = field(p);
        let v = Subspace::full(f, 2);
        for u in all_subspaces(f, 2, 1) {
            assert!(verify_muirel_invariance(&v, &u, 3, 3, &mut rng).unwrap().passed());
            assert!(verify_dickson_induction(&v, &u).unwrap().passed());
        }
    }
}

#[test]
fn induction_rejects_non_hyperplane() {
    let f = field(3);
    assert!(verify_dickson_induction(&Subspace::full(f, 2), &Subspace::zero(f, 2)).is_err());
}
