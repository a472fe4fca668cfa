use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::dickson::zeta;
use crate::error::Result;
use crate::fppoly::{FpPoly, HomogeneousBasis};
use crate::quillen::{ideal_slice_rank, ideal_slice_system, restriction_kernel};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::symplectic::SymplecticSpace;

fn note_witness(detail: String) -> Witness {
    Witness::new(Vec::new(), String::new()).with_detail(detail)
}

fn slice_rank(gens: &[FpPoly], d: u32) -> Result<usize> {
    if gens.is_empty() {
        return Ok(0);
    }
    ideal_slice_rank(gens, d)
}

/// For every degree `d ≤ bound`, the forms restricting to zero on all
/// Lagrangians are exactly the degree-`d` slice of `(ζ_1, …, ζ_n)`; and
/// multiplication by `ζ_i` is injective on `S(E*)/(ζ_1, …, ζ_{i−1})` in
/// every degree `e` with `e + deg ζ_i ≤ bound`.
pub fn verify_joint_kernel(space: &SymplecticSpace, bound: u32) -> Result<VerificationReport> {
    let n = space.n();
    let zetas = (1..=n as u32).map(|i| zeta(space, i)).collect::<Result<Vec<_>>>()?;
    let mut b =
        ReportBuilder::new("joint_kernel").param("p", space.p()).param("n", n as u64).param("degree_bound", bound);

    let per_degree = (1..=bound)
        .into_par_iter()
        .map(|d| Ok((d, restriction_kernel(space, d)?, ideal_slice_system(&zetas, d)?.subspace())))
        .collect::<Result<Vec<_>>>()?;
    let mut dims = Vec::new();
    for (d, k, j) in &per_degree {
        dims.push(json!([d, k.dim()]));
        b.check(k.dim() == j.dim(), || {
            note_witness(format!("degree {d}: kernel dimension {}, ideal slice {}", k.dim(), j.dim()))
        });
        b.check(k.contains_subspace(j), || note_witness(format!("degree {d}: ideal slice not in kernel")));
        b.check(j.contains_subspace(k), || note_witness(format!("degree {d}: kernel not in ideal slice")));
    }
    b.set_param("kernel_dims", json!(dims));

    // ranks of (ζ_1..ζ_i) slices, keyed by (i, degree)
    let keys: Vec<(usize, u32)> = (0..=n).flat_map(|i| (0..=bound).map(move |d| (i, d))).collect();
    let ranks: BTreeMap<(usize, u32), usize> =
        keys.par_iter().map(|&(i, d)| Ok(((i, d), slice_rank(&zetas[..i], d)?))).collect::<Result<_>>()?;
    let dim_s = |e: u32| HomogeneousBasis::new(2 * n, e).len();
    let mut regular = 0u64;
    for i in 1..=n {
        let delta = space.field().power_of_p(i as u32) as u32 + 1;
        for e in 0..=bound.saturating_sub(delta) {
            if e + delta > bound {
                break;
            }
            let image = ranks[&(i, e + delta)] - ranks[&(i - 1, e + delta)];
            let source = dim_s(e) - ranks[&(i - 1, e)];
            regular += 1;
            b.check(image == source, || {
                note_witness(format!(
                    "ζ_{i} is a zero divisor modulo its predecessors in degree {e}: image {image}, source {source}"
                ))
            });
        }
    }
    b.set_param("regular_sequence_checks", regular);
    Ok(b.finish())
}
