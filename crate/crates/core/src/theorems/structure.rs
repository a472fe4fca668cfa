//! Suites for the Dickson and `MuiRel` lemmas, the symplectic invariants
//! `ζ_i`, and the counting facts every other verifier relies on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::dickson::{
    verify_dickson_induction_all, verify_dickson_relation, verify_muirel_invariance, verify_muirel_sum, zeta,
};
use crate::error::Result;
use crate::fplinalg::{all_subspaces, hyperplanes_containing, projective_count, projective_points, Subspace};
use crate::fppoly::PrimeField;
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::symplectic::SymplecticSpace;

/// Largest ambient dimension covered exhaustively.
pub const EXHAUSTIVE_DIM: usize = 3;
/// Random subspace pairs drawn in ambient dimension 4.
pub const SAMPLES_DIM_4: usize = 20;
/// Largest prime given the full exhaustive range and the dimension 4 samples.
pub const FULL_RANGE_MAX_P: u32 = 5;

/// Ambient dimensions covered exhaustively at this prime. Above
/// `FULL_RANGE_MAX_P` the Mui polynomials of `F_p^3` are too large to expand.
pub fn exhaustive_dim(field: PrimeField) -> usize {
    if field.p() <= FULL_RANGE_MAX_P {
        EXHAUSTIVE_DIM
    } else {
        EXHAUSTIVE_DIM - 1
    }
}
/// Full `MuiRel` powers compared per pair; the scalar criterion covers
/// every choice.
const FULL_POWERS: usize = 3;
const TRANSFORMS: usize = 3;

fn note_witness(detail: String) -> Witness {
    Witness::new(Vec::new(), String::new()).with_detail(detail)
}

/// Hyperplane pairs `U ⊂ F_p^m` for `1 ≤ m ≤ exhaustive_dim`.
fn hyperplane_pairs(field: PrimeField) -> Vec<(Subspace, Subspace)> {
    (1..=exhaustive_dim(field))
        .flat_map(|m| {
            let v = Subspace::full(field, m);
            all_subspaces(field, m, m - 1).into_iter().map(move |u| (v.clone(), u))
        })
        .collect()
}

/// Both Dickson-relation identities for every proper `U ⊂ F_p^m`,
/// `m ≤ exhaustive_dim`.
pub fn dickson_relation_suite(field: PrimeField) -> Result<Vec<VerificationReport>> {
    let pairs: Vec<(Subspace, Subspace)> = (1..=exhaustive_dim(field))
        .flat_map(|m| {
            let v = Subspace::full(field, m);
            (0..m).flat_map(move |k| {
                let v = v.clone();
                all_subspaces(field, m, k).into_iter().map(move |u| (v.clone(), u))
            })
        })
        .collect();
    pairs.par_iter().map(|(v, u)| verify_dickson_relation(v, u)).collect()
}

/// `MuiRel` choice independence and the codimension-two sum, exhaustively
/// for ambient dimension at most `exhaustive_dim` and, for `p ≤ 5`, on
/// random pairs in dimension 4.
pub fn muirel_suite(field: PrimeField, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs: Vec<(Subspace, Subspace, u64)> =
        hyperplane_pairs(field).into_iter().map(|(v, u)| (v, u, rng.gen())).collect();
    let mut sums: Vec<(Subspace, Subspace)> = (2..=exhaustive_dim(field))
        .flat_map(|m| {
            let v = Subspace::full(field, m);
            all_subspaces(field, m, m - 2).into_iter().map(move |u| (v.clone(), u))
        })
        .collect();

    // dimension 4: keep the relative invariants small at p = 5
    let max_u = if field.p() == 3 { 2 } else { 1 };
    let samples = if field.p() <= FULL_RANGE_MAX_P { SAMPLES_DIM_4 } else { 0 };
    for _ in 0..samples {
        let k = rng.gen_range(0..=max_u);
        let u = random_subspace(field, 4, k, &Subspace::zero(field, 4), &mut rng);
        let v1 = random_subspace(field, 4, k + 1, &u, &mut rng);
        let v2 = random_subspace(field, 4, k + 2, &u, &mut rng);
        jobs.push((v1, u.clone(), rng.gen()));
        sums.push((v2, u));
    }

    let mut reports: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|(v, u, s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(*s);
            verify_muirel_invariance(v, u, FULL_POWERS, TRANSFORMS, &mut rng)
        })
        .collect::<Result<_>>()?;
    reports.extend(sums.par_iter().map(|(v, u)| verify_muirel_sum(v, u)).collect::<Result<Vec<_>>>()?);
    Ok(reports)
}

/// A random subspace of dimension `dim` containing `inside`.
fn random_subspace<R: Rng>(field: PrimeField, ambient: usize, dim: usize, inside: &Subspace, rng: &mut R) -> Subspace {
    let mut s = inside.clone();
    while s.dim() < dim {
        let v: Vec<u8> = (0..ambient).map(|_| rng.gen_range(0..field.p()) as u8).collect();
        let mut rows = s.basis().to_vec();
        rows.push(v);
        s = Subspace::span(field, ambient, &rows).expect("vectors fit");
    }
    s
}

/// The Dickson recursion against the direct product, for every hyperplane
/// `U ⊂ F_p^m`, `m ≤ exhaustive_dim`.
pub fn dickson_induction_suite(field: PrimeField) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for m in 1..=exhaustive_dim(field) {
        out.extend(verify_dickson_induction_all(&Subspace::full(field, m), &all_subspaces(field, m, m - 1))?);
    }
    Ok(out)
}

/// All three Dickson suites, in a fixed order.
pub fn dickson_suite(field: PrimeField, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut out = dickson_relation_suite(field)?;
    out.extend(muirel_suite(field, seed)?);
    out.extend(dickson_induction_suite(field)?);
    Ok(out)
}

/// `ζ_1..ζ_{n+1}` are fixed by every transvection generator and restrict
/// to zero on every Lagrangian.
pub fn verify_zeta_invariance(space: &SymplecticSpace) -> Result<VerificationReport> {
    let n = space.n();
    let gens = space.sp_generators();
    let mut b = ReportBuilder::new("zeta_invariance")
        .param("p", space.p())
        .param("n", n as u64)
        .param("generators", gens.len() as u64);
    for g in &gens {
        b.check(space.preserves_form(g), || note_witness(format!("{g:?} is not symplectic")));
    }
    for i in 1..=n as u32 + 1 {
        let z = zeta(space, i)?;
        let moved = gens.par_iter().map(|g| space.pullback(&z, g).map(|m| (g, m))).collect::<Result<Vec<_>>>()?;
        for (g, m) in moved {
            let diff = &m - &z;
            b.check(diff.is_zero(), || {
                Witness::new(Vec::new(), diff.to_named_text()).with_detail(format!("ζ_{i} moved by {g:?}"))
            });
        }
        let restricted = space.lagrangians().par_iter().map(|l| l.restrict(&z)).collect::<Result<Vec<_>>>()?;
        for (l, r) in space.lagrangians().iter().zip(restricted) {
            b.check(r.is_zero(), || {
                Witness::new(l.subspace().to_rows(), r.to_named_text()).with_detail(format!("Res ζ_{i}"))
            });
        }
    }
    Ok(b.finish())
}

fn product_formula(p: u64, n: usize) -> u64 {
    (1..=n as u32).map(|i| p.pow(i) + 1).product()
}

/// Lagrangian, projective-point and hyperplane counts against their closed
/// forms, and the number of Lagrangians inside each `ker φ`.
pub fn verify_structural_counts(space: &SymplecticSpace) -> Result<VerificationReport> {
    let n = space.n();
    let field = space.field();
    let p = field.p() as u64;
    let lags = space.lagrangians();
    let expected = product_formula(p, n);
    let mut b = ReportBuilder::new("structural_counts")
        .param("p", field.p())
        .param("n", n as u64)
        .param("lagrangians", lags.len() as u64);

    b.check(lags.len() as u64 == expected, || note_witness(format!("{} Lagrangians, expected {expected}", lags.len())));
    b.check(space.expected_lagrangian_count() == expected, || {
        note_witness("closed form disagrees with the product formula".into())
    });
    if n <= 2 {
        b.check(*lags.as_ref() == space.lagrangians_by_filter(), || {
            note_witness("filtered and flag enumerations differ".into())
        });
    }
    for l in lags.iter() {
        b.check(l.subspace().dim() == n && space.is_isotropic(l.subspace()), || {
            Witness::new(l.subspace().to_rows(), String::new()).with_detail("not Lagrangian")
        });
    }

    for k in 1..=space.dim() {
        let pts = projective_points(&Subspace::full(field, k))?.len() as u64;
        let closed = (p.pow(k as u32) - 1) / (p - 1);
        b.check(pts == closed && projective_count(field.p(), k as u32) == closed, || {
            note_witness(format!("{pts} projective points in dimension {k}, expected {closed}"))
        });
    }
    let forms = space.projective_forms();
    b.check(forms.len() as u64 == space.projective_form_count(), || note_witness("projective form count".into()));

    for m in 1..=EXHAUSTIVE_DIM.min(space.dim()) {
        let v = Subspace::full(field, m);
        for k in 0..m {
            for u in all_subspaces(field, m, k) {
                let s = (m - k) as u32;
                let closed = (p.pow(s) - 1) / (p - 1);
                let got = hyperplanes_containing(&v, &u)?.len() as u64;
                b.check(got == closed, || {
                    note_witness(format!("{got} hyperplanes over a codimension-{s} subspace, expected {closed}"))
                });
            }
        }
    }

    let in_kernel = product_formula(p, n - 1);
    let counts: Vec<usize> = forms.par_iter().map(|phi| lags.iter().filter(|l| l.in_kernel_of(phi)).count()).collect();
    for (phi, c) in forms.iter().zip(counts) {
        b.check(c as u64 == in_kernel, || {
            note_witness(format!("{c} Lagrangians in ker {:?}, expected {in_kernel}", phi.coeffs()))
        });
    }
    b.set_param("lagrangians_per_kernel", json!(in_kernel));
    Ok(b.finish())
}
