use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde_json::json;

use super::FSequence;
use crate::dickson::{dickson_invariant, forms_from_rows, MuiContext};
use crate::error::{Error, Result};
use crate::fplinalg::{coefficient_vectors, projective_points, LinearForm};
use crate::fppoly::FpPoly;
use crate::quillen::{class_chi, class_kappa, inflate, inflation_preimage, QuillenClass};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::symplectic::{Lagrangian, SymplecticSpace};

type ChiKey = (u32, usize, usize, Vec<u8>);

fn chi_cached(space: &SymplecticSpace, r: usize, phi: &LinearForm) -> Result<Arc<QuillenClass>> {
    static CACHE: OnceLock<Mutex<HashMap<ChiKey, Arc<QuillenClass>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (space.p(), space.n(), r, phi.coeffs().to_vec());
    if let Some(c) = cache.lock().expect("cache lock").get(&key) {
        return Ok(c.clone());
    }
    let c = Arc::new(class_chi(space, r, phi)?);
    cache.lock().expect("cache lock").insert(key, c.clone());
    Ok(c)
}

fn base(id: &str, space: &SymplecticSpace) -> ReportBuilder {
    ReportBuilder::new(id).param("p", space.p()).param("n", space.n() as u64)
}

fn witness(l: &Lagrangian, diff: &FpPoly, detail: impl Into<String>) -> Witness {
    Witness::new(l.subspace().to_rows(), diff.to_named_text()).with_detail(detail)
}

/// Checks every component of `c` for zero.
fn check_zero_class(b: &mut ReportBuilder, space: &SymplecticSpace, c: &QuillenClass, what: &str) {
    for (l, comp) in space.lagrangians().iter().zip(c.components()) {
        b.check(comp.is_zero(), || witness(l, comp, what));
    }
}

fn form_json(phi: &LinearForm) -> serde_json::Value {
    json!(phi.coeffs())
}

/// `ν = κ_r − Inf D_r(J_0*) + Σ_{φ ∈ P J_0*} χ_{r,φ}` vanishes on every
/// Lagrangian, where `J_0*` is the annihilator of the Lagrangian with index
/// `i0`.
pub fn verify_theorem_5_2(space: &SymplecticSpace, i0: usize, r: usize) -> Result<VerificationReport> {
    let n = space.n();
    if r >= n {
        return Err(Error::OutOfRange(format!("r = {r} needs r < n = {n}")));
    }
    let lags = space.lagrangians();
    let l0 = lags.get(i0).ok_or_else(|| Error::OutOfRange(format!("Lagrangian index {i0} of {}", lags.len())))?;
    let j0 = l0.subspace().annihilator();
    let ring = space.dual_ring();
    let d = dickson_invariant(ring, &forms_from_rows(ring, j0.basis()), r as i64)?;
    let points = projective_points(&j0)?;
    let mut nu = class_kappa(space, r)?.sub(&inflate(space, &d)?)?;
    for v in &points {
        nu = nu.add(&*chi_cached(space, r, &LinearForm::from_residues(v.clone()))?)?;
    }
    let mut b = base("theorem_5_2", space)
        .param("r", r as u64)
        .param("I0", json!(l0.subspace().to_rows()))
        .param("chi_summands", points.len() as u64);
    check_zero_class(&mut b, space, &nu, "ν component");
    Ok(b.finish())
}

/// [`verify_theorem_5_2`] for each listed Lagrangian index, in order.
pub fn verify_theorem_5_2_all(space: &SymplecticSpace, r: usize, i0s: &[usize]) -> Result<Vec<VerificationReport>> {
    i0s.par_iter().map(|&i| verify_theorem_5_2(space, i, r)).collect()
}

/// `κ_i^p = Inf f_i` on every Lagrangian, the restricted alternating
/// identity `φ^{p^{n+1}} + Σ (−1)^{n−i} φ^{p^{i+1}} D_i(I*)^p = 0` for every
/// `φ ∈ I*`, and independence of the `f_i` from the chosen solution.
pub fn verify_prop_6_4(space: &SymplecticSpace, fseq: &FSequence) -> Result<VerificationReport> {
    let n = space.n();
    let field = space.field();
    let ring = space.restriction_ring();
    let mut b = base("prop_6_4", space)
        .param("f_degrees", json!(fseq.f_list.iter().map(|f| f.degree()).collect::<Vec<_>>()))
        .param("offsets", fseq.f_offsets.len() as u64);

    let kappa_p = (0..n).map(|i| Ok(class_kappa(space, i)?.pth_power())).collect::<Result<Vec<_>>>()?;
    for (i, (k, f)) in kappa_p.iter().zip(&fseq.f_list).enumerate() {
        let diff = k.sub(&inflate(space, f)?)?;
        check_zero_class(&mut b, space, &diff, &format!("κ_{i}^p − Inf f_{i}"));
    }

    let forms = coefficient_vectors(field, n);
    let lags = space.lagrangians();
    let failures: Vec<Option<Witness>> = lags
        .par_iter()
        .enumerate()
        .flat_map_iter(|(li, l)| {
            let kappa_p = &kappa_p;
            forms.iter().map(move |v| {
                let phi = &forms_from_rows(ring, std::slice::from_ref(v))[0];
                let total = (0..n).fold(phi.frobenius_power(n as u32 + 1), |acc, i| {
                    let t = &phi.frobenius_power(i as u32 + 1) * kappa_p[i].component(li);
                    acc + t.scale(field.sign((n - i) as i64))
                });
                (!total.is_zero()).then(|| witness(l, &total, "alternating identity"))
            })
        })
        .collect();
    for w in failures {
        let failed = w.is_some();
        b.check(!failed, || w.expect("failure carries a witness"));
    }

    for alt in &fseq.f_offsets {
        for (i, (f, g)) in fseq.f_list.iter().zip(alt).enumerate() {
            let diff = inflate(space, &(f - g))?;
            check_zero_class(&mut b, space, &diff, &format!("Inf f_{i} depends on the solution"));
        }
    }
    Ok(b.finish())
}

/// The statement `χ_{n−1,β_n}^p − Inf η` nilpotent, checked componentwise
/// exactly as stated.
pub fn verify_lemma_7_1(space: &SymplecticSpace, fseq: &FSequence) -> Result<VerificationReport> {
    let n = space.n();
    let chi_p = chi_cached(space, n - 1, &space.beta_form(n))?.pth_power();
    let eta = inflate(space, &fseq.eta)?;
    let mut b = base("lemma_7_1", space).param("chi_p_degree", chi_p.degree()).param("eta_degree", eta.degree());
    if chi_p.degree() != eta.degree() {
        b.note(format!(
            "χ^p has degree {} but η has degree {}; the difference is not homogeneous",
            chi_p.degree(),
            eta.degree()
        ));
    }
    for ((l, c), e) in space.lagrangians().iter().zip(chi_p.components()).zip(eta.components()) {
        let diff = c - e;
        b.check(diff.is_zero(), || witness(l, &diff, "Res χ^p − Res η"));
    }
    Ok(b.finish())
}

/// Two companion checks for [`verify_lemma_7_1`]:
///
/// * `lemma_7_1_eta_restriction`: `Res_I η = −Mui_{I_φ*}(α_n)^p` when
///   `I ⊆ ker β_n`, and `0` otherwise;
/// * `lemma_7_1_degree_corrected`: `χ_{n−1,β_n}^p + Inf(η^{p−1})` vanishes.
pub fn lemma_7_1_diagnostics(space: &SymplecticSpace, fseq: &FSequence) -> Result<Vec<VerificationReport>> {
    let n = space.n();
    let p = space.p();
    let ring = space.restriction_ring();
    let phi = space.beta_form(n);
    let line = space.radical_line(&phi)?;
    let eta = inflate(space, &fseq.eta)?;

    let mut b = base("lemma_7_1_eta_restriction", space);
    for (l, e) in space.lagrangians().iter().zip(eta.components()) {
        let expected = if l.in_kernel_of(&phi) {
            let (ann, _) = l.annihilator_of_line(&line)?;
            let ctx = MuiContext::new(ring, &forms_from_rows(ring, &ann))?;
            -ctx.eval(&l.images()[n - 1])?.frobenius_power(1)
        } else {
            ring.zero()
        };
        let diff = e - &expected;
        b.check(diff.is_zero(), || witness(l, &diff, "Res η − expected"));
    }
    let eta_report = b.finish();

    let chi_p = chi_cached(space, n - 1, &phi)?.pth_power();
    let corrected = chi_p.add(&inflate(space, &fseq.eta.pow(p as u64 - 1))?)?;
    let mut b = base("lemma_7_1_degree_corrected", space).param("degree", corrected.degree());
    check_zero_class(&mut b, space, &corrected, "χ^p + Inf η^{p−1}");
    Ok(vec![eta_report, b.finish()])
}

/// Longest preimage printed in full; longer ones are summarized.
const MAX_PRINTED_TERMS: usize = 200;

/// `χ_{r,φ}^p` has an inflation preimage, re-inflated to confirm.
pub fn verify_thm_pth_power(space: &SymplecticSpace, r: usize, phi: &LinearForm) -> Result<VerificationReport> {
    let chi_p = chi_cached(space, r, phi)?.pth_power();
    let mut b =
        base("thm_7_2", space).param("r", r as u64).param("phi", form_json(phi)).param("degree", chi_p.degree());
    match inflation_preimage(&chi_p)? {
        Some(f) => {
            let back = inflate(space, &f)?;
            b.passed(1);
            check_zero_class(&mut b, space, &back.sub(&chi_p)?, "Inf f − χ^p");
            b.set_param("preimage_terms", f.num_terms() as u64);
            if f.num_terms() <= MAX_PRINTED_TERMS {
                b.set_param("preimage", f.to_named_text());
            }
        }
        None => {
            b.check(false, || Witness::new(Vec::new(), String::new()).with_detail("χ^p has no inflation preimage"));
        }
    }
    Ok(b.finish())
}

/// [`verify_thm_pth_power`] for every `r < n` and every projective `φ`,
/// ordered by `r`, then by `φ`.
pub fn verify_thm_pth_power_all(space: &SymplecticSpace) -> Result<Vec<VerificationReport>> {
    let forms = space.projective_forms();
    let jobs: Vec<(usize, &LinearForm)> = (0..space.n()).flat_map(|r| forms.iter().map(move |f| (r, f))).collect();
    jobs.par_iter().map(|&(r, f)| verify_thm_pth_power(space, r, f)).collect()
}

/// Negative control: the unpowered `χ_{0,β_1}` has no inflation preimage.
pub fn verify_pth_power_control(space: &SymplecticSpace) -> Result<VerificationReport> {
    let chi = chi_cached(space, 0, &space.beta_form(1))?;
    let mut b = base("thm_7_2_control", space).param("degree", chi.degree());
    let found = inflation_preimage(&chi)?;
    b.check(found.is_none(), || {
        let f = found.clone().expect("checked");
        Witness::new(Vec::new(), f.to_named_text()).with_detail("unpowered χ_{0,β_1} has a preimage")
    });
    Ok(b.finish())
}
