use std::sync::Arc;

use super::*;
use crate::error::Error;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(f3(), names.iter().copied()).unwrap()
}

fn parse(r: &Arc<PolyRing>, s: &str) -> FpPoly {
    FpPoly::parse(r, s).unwrap()
}

#[test]
fn substitute_scalar_power_collapses() {
    let src = ring(&["x"]);
    let dst = ring(&["y"]);
    let f = src.var(0).pow(2);
    let g = f.substitute_linear(&[dst.var(0).scale(2)], &dst).unwrap();
    assert_eq!(g, dst.var(0).pow(2));
}

#[test]
fn substitute_additive_cancellation() {
    let src = ring(&["x", "y"]);
    let dst = ring(&["u"]);
    let f = src.var(0) + src.var(1);
    let u = dst.var(0);
    let g = f.substitute_linear(&[u.clone(), -&u], &dst).unwrap();
    assert!(g.is_zero());
}

#[test]
fn substitute_zeta_on_isotropic_line_vanishes() {
    let src = ring(&["a1", "b1"]);
    let dst = ring(&["t"]);
    let (a, b) = (src.var(0), src.var(1));
    let zeta1 = &a * &b.pow(3) - &a.pow(3) * &b;
    let t = dst.var(0);
    assert!(zeta1.substitute_linear(&[t.clone(), t], &dst).unwrap().is_zero());
}

#[test]
fn substitute_errors() {
    let src = ring(&["x", "y"]);
    let dst = ring(&["u"]);
    let f = src.var(0);
    assert_eq!(f.substitute_linear(&[dst.var(0)], &dst), Err(Error::IncompleteSubstitution { expected: 2, got: 1 }));
    assert_eq!(f.substitute_linear(&[dst.var(0).pow(2), dst.var(0)], &dst), Err(Error::NonLinearSubstitution));
    // affine images are allowed
    let g = f.substitute_linear(&[dst.one(), dst.var(0)], &dst).unwrap();
    assert!(g.is_one());
}

#[test]
fn derivative_of_zeta_in_alpha() {
    let r = ring(&["a1", "b1"]);
    let (a, b) = (r.var(0), r.var(1));
    for j in 1..=3u32 {
        let q = 3u64.pow(j);
        let zeta = &a * &b.pow(q) - &a.pow(q) * &b;
        assert_eq!(zeta.partial_derivative_by_name("a1").unwrap(), b.pow(q));
    }
}

#[test]
fn derivative_edge_cases() {
    let r = ring(&["x"]);
    assert!(r.constant(2).partial_derivative(0).unwrap().is_zero());
    assert!(r.var(0).pow(3).partial_derivative(0).unwrap().is_zero());
    assert_eq!(r.var(0).pow(2).partial_derivative(0).unwrap(), r.var(0).scale(2));
    assert!(matches!(r.var(0).partial_derivative(1), Err(Error::UnknownVariable(_))));
    assert!(matches!(r.var(0).partial_derivative_by_name("q"), Err(Error::UnknownVariable(_))));
}

#[test]
fn exact_divide_by_variable() {
    let r = ring(&["a", "b"]);
    let f = parse(&r, "x0*x1^3 + 2*x0^3*x1");
    let q = f.exact_divide(&r.var(1)).unwrap().unwrap();
    assert_eq!(q, parse(&r, "x0*x1^2 + 2*x0^3"));
    assert_eq!(&q * &r.var(1), f);
}

#[test]
fn exact_divide_self_and_failures() {
    let r = ring(&["x", "y"]);
    let g = parse(&r, "x0^2 + 2*x0*x1 + x1^5");
    assert!(g.exact_divide(&g).unwrap().unwrap().is_one());
    let f = parse(&r, "x0^2 + x1");
    assert_eq!(f.exact_divide(&r.var(0)).unwrap(), None);
    assert_eq!(f.exact_divide(&r.zero()), Err(Error::DivisionByZero));
    // general divisor, divisible and not
    let h = parse(&r, "x0 + x1");
    let prod = &h * &g;
    assert_eq!(prod.exact_divide(&h).unwrap(), Some(g.clone()));
    assert_eq!((&prod + &r.one()).exact_divide(&h).unwrap(), None);
}

#[test]
fn frobenius_examples() {
    let r = ring(&["x", "y"]);
    let f = r.var(0) + r.var(1);
    assert_eq!(f.frobenius_power(1), parse(&r, "x0^3 + x1^3"));
    assert_eq!(f.frobenius_power(0), f);
    let g = parse(&r, "x0^2*x1");
    let mut rep = r.one();
    for _ in 0..9 {
        rep = &rep * &g;
    }
    assert_eq!(g.frobenius_power(2), rep);
    assert_eq!(rep, parse(&r, "x0^18*x1^9"));
}

#[test]
fn pow_matches_repeated_multiplication() {
    let r = PolyRing::numbered(PrimeField::new(5).unwrap(), "x", 3).unwrap();
    let f = parse(&r, "x0 + 2*x1 + 3*x2 + x0*x1");
    let mut rep = r.one();
    for e in 0..=30u64 {
        assert_eq!(f.pow(e), rep, "exponent {e}");
        rep = &rep * &f;
    }
}

#[test]
fn text_examples() {
    let r = ring(&["a1", "b1"]);
    let (a, b) = (r.var(0), r.var(1));
    let zeta1 = &a * &b.pow(3) - &a.pow(3) * &b;
    assert_eq!(zeta1.to_text(), "x0*x1^3 + 2*x0^3*x1");
    assert_eq!(zeta1.to_named_text(), "a1*b1^3 + 2*a1^3*b1");
    assert_eq!(r.zero().to_text(), "0");
    assert_eq!(r.constant(2).to_text(), "2");
    assert_eq!(parse(&r, "2 + x1 + 2*x0").to_text(), "2 + x1 + 2*x0");
    assert!(FpPoly::parse(&r, "x2").is_err());
    assert!(FpPoly::parse(&r, "x0 + + x1").is_err());
    assert!(FpPoly::parse(&r, "").is_err());
}

#[test]
fn ring_validation() {
    assert!(PolyRing::new(f3(), ["x", "x"]).is_err());
    assert!(PolyRing::new(f3(), (0..9).map(|i| format!("v{i}"))).is_err());
    let r = ring(&["x", "y"]);
    assert_eq!(r.var_index("y"), Ok(1));
    assert!(r.var_index("z").is_err());
}

#[test]
fn homogeneity_and_degree() {
    let r = ring(&["x", "y"]);
    let f = parse(&r, "x0^2 + x0*x1");
    assert_eq!(f.homogeneous_degree(), Some(2));
    assert!(!parse(&r, "x0^2 + x1").is_homogeneous());
    assert!(r.zero().is_homogeneous());
    assert_eq!(r.zero().degree(), None);
    assert_eq!(f.evaluate(&[1, 2]), 0);
    assert_eq!(r.linear_form(&[1, 2]).linear_coefficients().unwrap(), vec![1, 2]);
    assert_eq!(f.linear_coefficients(), Err(Error::NotLinear));
}
