use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{forms_from_rows, mui_direct, MuiContext};
use crate::error::{Error, Result};
use crate::fplinalg::{hyperplanes_containing, Matrix, Subspace};
use crate::fppoly::{FpPoly, PolyRing, PrimeField};
use crate::report::{ReportBuilder, VerificationReport, Witness};

/// `F_p[x1..xk, X]`; subspaces of `F_p^k` are read as spaces of linear
/// forms in `x1..xk`.
fn ring_with_x(field: PrimeField, k: usize) -> Result<Arc<PolyRing>> {
    PolyRing::new(field, (1..=k).map(|i| format!("x{i}")).chain(["X".to_string()]))
}

fn context(ring: &Arc<PolyRing>, s: &Subspace) -> Result<MuiContext> {
    MuiContext::new(ring, &forms_from_rows(ring, s.basis()))
}

fn diff_witness(s: &Subspace, lhs: &FpPoly, rhs: &FpPoly, what: &str) -> Witness {
    Witness::new(s.to_rows(), (lhs - rhs).to_named_text()).with_detail(what.to_string())
}

fn space_params(b: ReportBuilder, v: &Subspace, u: &Subspace) -> ReportBuilder {
    b.param("p", v.field().p())
        .param("ambient_dim", v.ambient_dim() as u64)
        .param("V", json!(v.to_rows()))
        .param("U", json!(u.to_rows()))
}

/// `Σ_{W ∈ Hyp(V,U)} Mui_W(X) = Mui_U(X)^{p^{s−1}}` and
/// `Σ_W D_{r−1}(W) = D_{r−s}(U)^{p^{s−1}}` for `1 ≤ r ≤ dim V`.
pub fn verify_dickson_relation(v: &Subspace, u: &Subspace) -> Result<VerificationReport> {
    let hyps = hyperplanes_containing(v, u)?;
    let ring = ring_with_x(v.field(), v.ambient_dim())?;
    let x = ring.var(v.ambient_dim());
    let s = (v.dim() - u.dim()) as u32;
    let m = v.dim() as i64;
    let mut b = space_params(ReportBuilder::new("dickson_relation"), v, u).param("hyperplanes", hyps.len() as u64);

    let cu = context(&ring, u)?;
    let cws = hyps.iter().map(|w| context(&ring, w)).collect::<Result<Vec<_>>>()?;

    let lhs = cws.iter().map(|c| c.eval(&x)).sum::<Result<FpPoly>>()?;
    let rhs = cu.eval(&x)?.frobenius_power(s - 1);
    b.check(lhs == rhs, || diff_witness(u, &lhs, &rhs, "Mui sum over hyperplanes"));

    for r in 1..=m {
        let lhs = cws.iter().map(|c| c.dickson(r - 1)).sum::<Result<FpPoly>>()?;
        let rhs = cu.dickson(r - s as i64)?.frobenius_power(s - 1);
        b.check(lhs == rhs, || diff_witness(u, &lhs, &rhs, &format!("Dickson sum, r = {r}")));
    }
    Ok(b.finish())
}

/// `Σ_W MuiRel(U, W) = 0` over the `p + 1` spaces strictly between `U` and
/// `V`, where `U` has codimension two in `V`.
pub fn verify_muirel_sum(v: &Subspace, u: &Subspace) -> Result<VerificationReport> {
    if !v.contains_subspace(u) || v.dim() != u.dim() + 2 {
        return Err(Error::OutOfRange("U must have codimension 2 in V".into()));
    }
    let ring = ring_with_x(v.field(), v.ambient_dim())?;
    let cu = context(&ring, u)?;
    let hyps = hyperplanes_containing(v, u)?;
    let mut total = ring.zero();
    for w in &hyps {
        let t = w.complement_basis(u)?;
        let wv = &forms_from_rows(&ring, &t)[0];
        total = total + cu.rel(wv)?;
    }
    let mut b = space_params(ReportBuilder::new("muirel_sum"), v, u).param("hyperplanes", hyps.len() as u64);
    let zero = ring.zero();
    b.check(total.is_zero(), || diff_witness(u, &total, &zero, "sum of relative invariants"));
    Ok(b.finish())
}

/// Block upper triangular change of basis preserving `u ⊆ v`, conjugated
/// into standard coordinates. Acts on forms by `u -> g u`.
fn random_stabilizer<R: Rng>(v: &Subspace, u: &Subspace, rng: &mut R) -> Result<Matrix> {
    let field = v.field();
    let k = v.ambient_dim();
    let full = Subspace::full(field, k);
    let mut adapted: Vec<Vec<u8>> = u.basis().to_vec();
    adapted.extend(v.complement_basis(u)?);
    adapted.extend(full.complement_basis(v)?);
    let blocks = [u.dim(), v.dim(), k];
    let block_of = |i: usize| blocks.iter().position(|&b| i < b).expect("index in range");
    let mut p_mat = Matrix::zeros(field, k, k);
    for (j, col) in adapted.iter().enumerate() {
        for (i, &a) in col.iter().enumerate() {
            p_mat.set(i, j, a as u32);
        }
    }
    let p_inv = p_mat.inverse().expect("adapted basis");
    loop {
        let mut t = Matrix::zeros(field, k, k);
        for i in 0..k {
            for j in 0..k {
                if block_of(i) <= block_of(j) {
                    t.set(i, j, rng.gen_range(0..field.p()));
                }
            }
        }
        if t.rank() == k {
            return p_mat.mul(&t)?.mul(&p_inv);
        }
    }
}

/// Substitution `x_i -> Σ_j g[j][i] x_j`, i.e. the action of `g` on the
/// forms `x1..xk`; `X` is fixed.
fn act_on_forms(f: &FpPoly, g: &Matrix) -> Result<FpPoly> {
    let ring = f.ring().clone();
    let k = g.nrows();
    let mut images: Vec<FpPoly> = (0..k)
        .map(|i| {
            let mut c: Vec<u32> = (0..k).map(|j| g.get(j, i)).collect();
            c.resize(ring.nvars(), 0);
            ring.linear_form(&c)
        })
        .collect();
    images.extend((k..ring.nvars()).map(|i| ring.var(i)));
    f.substitute_linear(&images, &ring)
}

/// `MuiRel(U, V)` does not depend on the choice of `v ∈ V \ U`, and is
/// fixed by transformations preserving `U` and `V`.
///
/// Every `v` is checked through `Mui_U(v) = λ Mui_U(v_0)` with `λ ≠ 0`, which
/// forces equal `(p−1)`-th powers; `full_powers` of them are additionally
/// compared as expanded powers, and `transforms` random stabilizer elements
/// are applied.
pub fn verify_muirel_invariance<R: Rng>(
    v: &Subspace,
    u: &Subspace,
    full_powers: usize,
    transforms: usize,
    rng: &mut R,
) -> Result<VerificationReport> {
    if !v.contains_subspace(u) || v.dim() != u.dim() + 1 {
        return Err(Error::NotProperSubspace);
    }
    let field = v.field();
    let ring = ring_with_x(field, v.ambient_dim())?;
    let cu = context(&ring, u)?;
    let outside: Vec<Vec<u8>> = v.elements().into_iter().filter(|x| !u.contains(x)).collect();
    let forms = forms_from_rows(&ring, &outside);
    let mut b = space_params(ReportBuilder::new("muirel_invariance"), v, u)
        .param("choices", outside.len() as u64)
        .param("full_powers", full_powers.min(forms.len()) as u64)
        .param("transforms", transforms as u64);

    let base = cu.eval(&forms[0])?;
    let rel = cu.rel(&forms[0])?;
    for f in &forms {
        let val = cu.eval(f)?;
        let scalar = field.nonzero_elements().find(|&l| base.scale(l) == val);
        b.check(scalar.is_some(), || diff_witness(u, &val, &base, "Mui_U(v) is not a nonzero multiple of Mui_U(v0)"));
    }
    let step = (forms.len() / full_powers.max(1)).max(1);
    for f in forms.iter().step_by(step).take(full_powers) {
        let other = cu.rel(f)?;
        b.check(other == rel, || diff_witness(u, &other, &rel, "MuiRel depends on the choice of v"));
    }
    for _ in 0..transforms {
        let g = random_stabilizer(v, u, rng)?;
        let moved = act_on_forms(&rel, &g)?;
        b.check(moved == rel, || diff_witness(u, &moved, &rel, "MuiRel moved by a stabilizer element"));
    }
    Ok(b.finish())
}

/// `Mui_V(X) = Mui_U(X)^p − Mui_U(X) MuiRel(U,V)` and
/// `D_r(V) = D_{r−1}(U)^p + D_r(U) MuiRel(U,V)` for `0 ≤ r < dim V`, with
/// the `V` side taken from the direct product over all of `V`.
pub fn verify_dickson_induction(v: &Subspace, u: &Subspace) -> Result<VerificationReport> {
    Ok(verify_dickson_induction_all(v, std::slice::from_ref(u))?.remove(0))
}

/// [`verify_dickson_induction`] for several hyperplanes of one `V`, sharing
/// the direct product `Mui_V(X)`.
pub fn verify_dickson_induction_all(v: &Subspace, us: &[Subspace]) -> Result<Vec<VerificationReport>> {
    if us.iter().any(|u| !v.contains_subspace(u) || v.dim() != u.dim() + 1) {
        return Err(Error::NotProperSubspace);
    }
    let ring = ring_with_x(v.field(), v.ambient_dim())?;
    let direct = mui_direct(&ring, &forms_from_rows(&ring, v.basis()), &ring.var(v.ambient_dim()));
    us.par_iter().map(|u| induction_against(&ring, &direct, v, u)).collect()
}

fn induction_against(ring: &Arc<PolyRing>, direct: &FpPoly, v: &Subspace, u: &Subspace) -> Result<VerificationReport> {
    let field = v.field();
    let k = v.ambient_dim();
    let x = ring.var(k);
    let cu = context(ring, u)?;
    let vv = &forms_from_rows(ring, &v.complement_basis(u)?)[0];
    let rel = cu.rel(vv)?;
    let mut b = space_params(ReportBuilder::new("dickson_induction"), v, u);

    let mu = cu.eval(&x)?;
    let rhs = mu.frobenius_power(1) - &mu * &rel;
    b.check(*direct == rhs, || diff_witness(v, direct, &rhs, "Mui recursion"));

    // D_r(V) read off the product: the coefficient of X^{p^r}, times (−1)^{m−r}
    let m = v.dim();
    for r in 0..m {
        let e = field.power_of_p(r as u32) as u32;
        let coeff = FpPoly::from_terms(
            ring.clone(),
            direct.terms().iter().filter(|(mono, _)| mono.exponent(k) == e).map(|&(mono, c)| {
                let mut ex = mono.exponents(ring.nvars());
                ex[k] = 0;
                (crate::fppoly::Monomial::from_exponents(&ex), c as i64)
            }),
        );
        let d_v = coeff.scale(field.sign((m - r) as i64));
        let r = r as i64;
        let rhs = cu.dickson(r - 1)?.frobenius_power(1) + &cu.dickson(r)? * &rel;
        b.check(d_v == rhs, || diff_witness(v, &d_v, &rhs, &format!("Dickson recursion, r = {r}")));
    }
    Ok(b.finish())
}
