use super::*;
use crate::dickson::{dickson_invariant, zeta};
use crate::fplinalg::normalized_vectors;

fn space(p: u32, n: usize) -> SymplecticSpace {
    SymplecticSpace::new(PrimeField::new(p).unwrap(), n).unwrap()
}

fn parse(s: &SymplecticSpace, text: &str) -> FpPoly {
    FpPoly::parse(s.restriction_ring(), text).unwrap()
}

fn index_of_a_span(e: &SymplecticSpace) -> usize {
    let a: Vec<Vec<u8>> = (1..=e.n()).map(|i| e.a_vec(i)).collect();
    e.lagrangian_index(&Subspace::span(e.field(), e.dim(), &a).unwrap()).unwrap()
}

#[test]
fn kappa_examples() {
    let e = space(3, 1);
    assert!(class_kappa(&e, 1).unwrap().components().iter().all(FpPoly::is_one));
    let k0 = class_kappa(&e, 0).unwrap();
    assert_eq!(k0.degree(), 2);
    assert!(k0.components().iter().all(|c| *c == parse(&e, "x0^2")));
    assert!(!k0.is_zero());
    assert!(class_kappa(&e, 2).is_err());

    let e2 = space(3, 2);
    let k1 = class_kappa(&e2, 1).unwrap();
    let q21 = parse(&e2, "x0^6 + x0^4*x1^2 + x0^2*x1^4 + x1^6");
    assert!(k1.components().iter().all(|c| *c == q21));
}

#[test]
fn zeta_top_is_shift_invariant() {
    let e = space(3, 1);
    let z = class_zeta_top(&e).unwrap();
    assert!(z.components().iter().all(|c| *c == parse(&e, "x1^3 + 2*x0^2*x1")));
    assert!(!z.is_z_free());
    let r = e.restriction_ring();
    let shift = [r.var(0), &r.var(1) + &r.var(0)];
    for c in z.components() {
        assert_eq!(c.substitute_linear(&shift, r).unwrap(), *c);
    }
}

#[test]
fn inflate_examples() {
    for (p, n) in [(3, 1), (3, 2)] {
        let e = space(p, n);
        for i in 1..=n as u32 + 1 {
            assert!(inflate(&e, &zeta(&e, i).unwrap()).unwrap().is_zero());
        }
        let one = inflate(&e, &e.dual_ring().one()).unwrap();
        assert!(one.components().iter().all(FpPoly::is_one));
        let a = e.alpha(1).pow(3);
        let c = inflate(&e, &a).unwrap();
        for (l, comp) in e.lagrangians().iter().zip(c.components()) {
            assert_eq!(*comp, l.images()[0].pow(3));
        }
    }
    let e = space(3, 1);
    let bad = &e.alpha(1) + &e.alpha(1).pow(2);
    assert_eq!(inflate(&e, &bad).unwrap_err(), Error::NotHomogeneous);
}

#[test]
fn chi_on_the_line_pair() {
    let e = space(3, 1);
    let chi = class_chi(&e, 0, &e.beta_form(1)).unwrap();
    assert_eq!(chi.degree(), 2);
    let i0 = index_of_a_span(&e);
    assert_eq!(chi.support(), vec![i0]);
    assert_eq!(*chi.component(i0), parse(&e, "2*x0^2"));

    let powered = chi.pth_power();
    assert_eq!(powered.degree(), 6);
    assert_eq!(*powered.component(i0), parse(&e, "2*x0^6"));
    assert!(class_chi(&e, 1, &e.beta_form(1)).is_err());
    let zero = LinearForm::new(e.field(), &[0, 0]);
    assert_eq!(class_chi(&e, 0, &zero).unwrap_err(), Error::ZeroForm);
}

#[test]
fn chi_depends_only_on_the_kernel() {
    let e = space(5, 1);
    for v in normalized_vectors(e.field(), 2) {
        let coeffs: Vec<u32> = v.iter().map(|&c| c as u32).collect();
        let base = class_chi(&e, 0, &LinearForm::new(e.field(), &coeffs)).unwrap();
        for l in 2..5 {
            let scaled: Vec<u32> = coeffs.iter().map(|c| c * l).collect();
            assert_eq!(class_chi(&e, 0, &LinearForm::new(e.field(), &scaled)).unwrap(), base);
        }
    }
}

#[test]
fn chi_support_counts_lagrangians_in_the_kernel() {
    let e = space(3, 2);
    let phi = e.beta_form(2);
    let chi = class_chi(&e, 1, &phi).unwrap();
    let oracle = e.lagrangians().iter().filter(|l| l.in_kernel_of(&phi)).count();
    assert_eq!(oracle, 4);
    assert_eq!(chi.support().len(), 4);
}

#[test]
fn ring_operations() {
    let e = space(3, 2);
    let k = class_kappa(&e, 0).unwrap();
    assert!(k.add(&k.scale(2)).unwrap().is_zero());
    assert!(k.sub(&k).unwrap().is_zero());
    assert!(k.scale(0).is_zero());
    assert_eq!(k.add(&class_kappa(&e, 1).unwrap()).unwrap_err(), Error::DegreeMismatch(8, 6));
    let f = &e.alpha(1) * &e.beta(2);
    assert_eq!(inflate(&e, &f).unwrap().pth_power(), inflate(&e, &f.pow(3)).unwrap());
    let g = e.alpha(2).pow(2);
    assert_eq!(inflate(&e, &f).unwrap().mul(&inflate(&e, &g).unwrap()).unwrap(), inflate(&e, &(&f * &g)).unwrap());
}

#[test]
fn preimages() {
    let e = space(3, 1);
    let chi = class_chi(&e, 0, &e.beta_form(1)).unwrap();
    assert_eq!(inflation_preimage(&chi).unwrap(), None);
    let f = inflation_preimage(&chi.pth_power()).unwrap().expect("χ^p is inflated");
    assert_eq!(inflate(&e, &f).unwrap(), chi.pth_power());

    let e2 = space(3, 2);
    let g = &e2.alpha(1).pow(2) * &e2.beta(2);
    let c = inflate(&e2, &g).unwrap();
    let f = inflation_preimage(&c).unwrap().unwrap();
    assert_eq!(inflate(&e2, &f).unwrap(), c);
    assert_eq!(inflation_preimage(&class_zeta_top(&e).unwrap()).unwrap(), None);
}

#[test]
fn restriction_kernel_in_degree_four() {
    let e = space(3, 1);
    let k = restriction_kernel(&e, 4).unwrap();
    assert_eq!(k.dim(), 1);
    let map = InflationMap::full(&e, 4).unwrap();
    let z = zeta(&e, 1).unwrap();
    assert!(k.contains(&map.source_vector(&z).unwrap()));
}

#[test]
fn ideal_decompose_examples() {
    let e = space(3, 1);
    let z1 = zeta(&e, 1).unwrap();
    let t = &z1 * &e.alpha(1);
    let dec = ideal_decompose(&t, std::slice::from_ref(&z1)).unwrap().unwrap();
    assert_eq!(dec.coeffs, vec![e.alpha(1)]);

    let q21 = dickson_invariant(e.dual_ring(), &[e.alpha(1), e.beta(1)], 1).unwrap();
    let dec = ideal_decompose(&zeta(&e, 2).unwrap(), std::slice::from_ref(&z1)).unwrap().unwrap();
    assert_eq!(dec.coeffs, vec![q21]);

    assert_eq!(ideal_decompose(&e.alpha(1), std::slice::from_ref(&z1)).unwrap(), None);
    assert_eq!(ideal_decompose(&e.alpha(1).pow(4), &[z1]).unwrap(), None);
}

#[test]
fn syzygies_are_reported() {
    let e = space(3, 1);
    let (a, b) = (e.alpha(1), e.beta(1));
    let t = &a * &b;
    let (dec, kernel) = ideal_decompose_with_kernel(&t, &[a.clone(), b.clone()], true).unwrap();
    assert!(dec.is_some());
    assert_eq!(kernel.len(), 1);
    assert!(kernel[0].expand(&[a, b]).is_zero());
}

#[test]
fn transport_preserves_kappa_and_moves_chi() {
    let e = space(3, 2);
    for r in 0..=2 {
        let k = class_kappa(&e, r).unwrap();
        for g in e.sp_generators() {
            assert_eq!(k.transport(&g).unwrap(), k);
        }
    }
    let phi = e.beta_form(2);
    let chi = class_chi(&e, 1, &phi).unwrap();
    for g in e.sp_generators() {
        let moved = chi.transport(&g).unwrap();
        // σ_* χ_φ = χ_{φ∘σ^{-1}}
        let inv = g.inverse().unwrap();
        let coeffs: Vec<u32> = (0..e.dim())
            .map(|j| (0..e.dim()).map(|k| phi.coeffs()[k] as u32 * inv.get(k, j)).sum::<u32>() % 3)
            .collect();
        let expected = class_chi(&e, 1, &LinearForm::new(e.field(), &coeffs)).unwrap();
        assert_eq!(moved, expected);
    }
}

#[test]
fn serialization_round_trip() {
    let e = space(3, 1);
    let chi = class_chi(&e, 0, &e.beta_form(1)).unwrap();
    let s = chi.to_serialized();
    let json = serde_json::to_string(&s).unwrap();
    let back: SerializedClass = serde_json::from_str(&json).unwrap();
    assert_eq!(QuillenClass::from_serialized(&back).unwrap(), chi);
}
