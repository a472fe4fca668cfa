use rayon::prelude::*;
use serde_json::json;

use crate::dickson::{dickson_invariant, zeta};
use crate::error::Result;
use crate::fplinalg::{normalized_vectors, solve_linear, LinearForm, Matrix, Subspace};
use crate::fppoly::{FpPoly, PrimeField};
use crate::quillen::{class_chi, ideal_decompose, ideal_slice_system, inflate, InflationMap};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::symplectic::SymplecticSpace;

fn note_witness(detail: String) -> Witness {
    Witness::new(Vec::new(), String::new()).with_detail(detail)
}

/// The forms `φ = a α_1 + b β_1`, one per projective point.
fn forms_on_first_pair(space: &SymplecticSpace) -> Vec<LinearForm> {
    let n = space.n();
    normalized_vectors(space.field(), 2)
        .into_iter()
        .map(|v| {
            let mut c = vec![0u32; 2 * n];
            c[0] = v[0] as u32;
            c[n] = v[1] as u32;
            LinearForm::new(space.field(), &c)
        })
        .collect()
}

/// `γ_2 = D_1(E'*) − D_1(E''*)` for `E' = <A_1, B_1>`, `E'' = <A_2, B_2>`.
pub(crate) fn gamma_2(space: &SymplecticSpace) -> Result<FpPoly> {
    let ring = space.dual_ring();
    let first = dickson_invariant(ring, &[space.alpha(1), space.beta(1)], 1)?;
    let second = dickson_invariant(ring, &[space.alpha(2), space.beta(2)], 1)?;
    Ok(first - second)
}

fn columns_matrix(field: PrimeField, cols: &[Vec<u8>], rows: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            m.set(i, j, v as u32);
        }
    }
    m
}

/// At `n = 2`: the `p + 1` classes `χ_{1,φ}` with `E'' ⊆ ker φ` are
/// linearly independent, their span meets the inflation image only in
/// zero, their supports are pairwise disjoint, and `Inf γ_2` is not in
/// their span.
pub fn verify_prop_8_1(field: PrimeField) -> Result<VerificationReport> {
    let space = SymplecticSpace::new(field, 2)?;
    let p = field.p();
    let forms = forms_on_first_pair(&space);
    let mut b = ReportBuilder::new("prop_8_1").param("p", p).param("n", 2u64);

    let e2 = [space.a_vec(2), space.b_vec(2)];
    let qualifying = space
        .projective_forms()
        .into_iter()
        .filter(|phi| e2.iter().all(|v| phi.eval(field, v).map(|x| x == 0).unwrap_or(false)))
        .collect::<Vec<_>>();
    b.check(qualifying.len() == p as usize + 1, || note_witness(format!("{} forms vanish on E''", qualifying.len())));
    b.check(qualifying == forms, || note_witness("qualifying forms differ from <α_1, β_1>".into()));

    let classes = forms.par_iter().map(|phi| class_chi(&space, 1, phi)).collect::<Result<Vec<_>>>()?;
    let degree = classes[0].degree();
    let map = InflationMap::full(&space, degree)?;
    let vectors = classes.iter().map(|c| map.class_vector(c)).collect::<Result<Vec<_>>>()?;
    let rows = map.matrix().nrows();
    b.set_param("degree", degree);
    b.set_param("inflation_source_dim", map.source_basis().len() as u64);
    b.set_param("inflation_image_dim", map.rank() as u64);

    let x = columns_matrix(field, &vectors, rows);
    let rank = x.rank();
    b.set_param("chi_rank", rank as u64);
    b.check(rank == forms.len(), || note_witness(format!("χ classes have rank {rank}")));

    let mut combined = vectors.clone();
    let r_mat = map.matrix().transpose();
    combined.extend((0..r_mat.nrows()).map(|j| r_mat.row(j).to_vec()));
    let combined_rank = columns_matrix(field, &combined, rows).rank();
    b.check(combined_rank == rank + map.rank(), || {
        note_witness(format!(
            "span of χ classes meets the inflation image: rank {combined_rank} < {rank} + {}",
            map.rank()
        ))
    });

    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let si = classes[i].support();
            let sj = classes[j].support();
            let shared = si.iter().find(|k| sj.contains(k));
            b.check(shared.is_none(), || {
                let l = &space.lagrangians()[*shared.expect("checked")];
                Witness::new(l.subspace().to_rows(), String::new())
                    .with_detail(format!("χ_{i} and χ_{j} share a Lagrangian"))
            });
        }
    }

    let g = map.class_vector(&inflate(&space, &gamma_2(&space)?)?)?;
    let in_span = solve_linear(&x, &g)?.is_some();
    b.check(!in_span, || note_witness("Inf γ_2 lies in the span of the χ classes".into()));
    Ok(b.finish())
}

/// At `n = 2`, for every degree `d ≤ bound`: the forms restricting to zero
/// on every Lagrangian meeting `E'` and `E''` trivially are exactly the
/// degree-`d` slice of `(ζ_1, γ_2)`. Also the membership
/// `(α_1β_1^p − α_1^pβ_1) γ_2 ∈ ±ζ_2 + (ζ_1)`, recording the sign that holds.
pub fn verify_lemma_8_3(field: PrimeField, bound: u32) -> Result<VerificationReport> {
    let space = SymplecticSpace::new(field, 2)?;
    let p = field.p();
    let e1 = Subspace::span(field, 4, &[space.a_vec(1), space.b_vec(1)])?;
    let e2 = Subspace::span(field, 4, &[space.a_vec(2), space.b_vec(2)])?;
    let family: Vec<usize> = space
        .lagrangians()
        .iter()
        .enumerate()
        .filter(|(_, l)| {
            let s = l.subspace();
            s.intersection(&e1).map(|x| x.dim() == 0).unwrap_or(false)
                && s.intersection(&e2).map(|x| x.dim() == 0).unwrap_or(false)
        })
        .map(|(i, _)| i)
        .collect();
    let z1 = zeta(&space, 1)?;
    let g2 = gamma_2(&space)?;
    let gens = [z1.clone(), g2.clone()];
    let mut b = ReportBuilder::new("lemma_8_3")
        .param("p", p)
        .param("n", 2u64)
        .param("degree_bound", bound)
        .param("family_size", family.len() as u64);

    let per_degree = (1..=bound)
        .into_par_iter()
        .map(|d| {
            let k = InflationMap::for_family(&space, d, family.clone())?.kernel();
            let j = ideal_slice_system(&gens, d)?.subspace();
            Ok((d, k, j))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut dims = Vec::new();
    for (d, k, j) in &per_degree {
        dims.push(json!([d, k.dim(), j.dim()]));
        b.check(k == j, || {
            note_witness(format!("degree {d}: restriction kernel has dimension {}, ideal slice {}", k.dim(), j.dim()))
        });
    }
    b.set_param("kernel_and_ideal_dims", json!(dims));

    let first =
        &space.alpha(1) * &space.beta(1).frobenius_power(1) - &space.alpha(1).frobenius_power(1) * &space.beta(1);
    let lhs = &first * &g2;
    let z2 = zeta(&space, 2)?;
    let mut holding = Vec::new();
    for sign in [1i64, -1] {
        let t = &lhs - &z2.scale(field.reduce(sign));
        if ideal_decompose(&t, std::slice::from_ref(&z1))?.is_some() {
            holding.push(sign);
        }
    }
    let label = |s: &i64| if *s > 0 { "+ζ_2" } else { "−ζ_2" };
    b.set_param("zeta2_sign", json!(holding.iter().map(label).collect::<Vec<_>>()));
    b.note(match holding.as_slice() {
        [] => "neither ±ζ_2 coset contains the product".to_string(),
        signs => format!("product lies in {} + (ζ_1)", signs.iter().map(label).collect::<Vec<_>>().join(" and ")),
    });
    b.check(!holding.is_empty(), || {
        Witness::new(Vec::new(), lhs.to_named_text()).with_detail("product is in neither ±ζ_2 + (ζ_1)")
    });
    Ok(b.finish())
}
