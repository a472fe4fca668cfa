//! Mui polynomials `Mui_V(X) = ∏_{φ∈V} (X − φ)`, Dickson invariants,
//! the relative invariant `MuiRel(U, V) = Mui_U(v)^{p−1}` and the
//! symplectic invariants `ζ_i`.
//!
//! A space of linear forms is given by generators inside some polynomial
//! ring. The Dickson invariants `D_r(V)` are the coefficients in
//! `Mui_V(X) = X^{p^m} + Σ_{r<m} (−1)^{m−r} D_r(V) X^{p^r}`, with
//! `D_m = 1` and `D_r = 0` for `r < 0`.
//!
//! `ζ_i = Σ_j (α_j β_j^{p^i} − α_j^{p^i} β_j)`. Where the defining sum reuses
//! its summation index in the exponent, the exponent is read as the outer
//! index `i`.

mod verify;

use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::fplinalg::{coefficient_vectors, Subspace};
use crate::fppoly::{FpPoly, Monomial, PolyRing};
use crate::symplectic::SymplecticSpace;

pub use verify::{
    verify_dickson_induction, verify_dickson_induction_all, verify_dickson_relation, verify_muirel_invariance,
    verify_muirel_sum,
};

/// A space of linear forms `V ⊆ S_1` with its Dickson invariants.
#[derive(Clone, Debug)]
pub struct MuiContext {
    ring: Arc<PolyRing>,
    span: Subspace,
    gens: Vec<FpPoly>,
    dickson: Arc<Vec<FpPoly>>,
}

type CacheKey = (Vec<String>, u32, Vec<Vec<u8>>);

fn cache() -> &'static Mutex<FxHashMap<CacheKey, Arc<Vec<FpPoly>>>> {
    static CACHE: OnceLock<Mutex<FxHashMap<CacheKey, Arc<Vec<FpPoly>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Linear forms with the given coefficient rows, zero-padded to the ring.
pub fn forms_from_rows(ring: &Arc<PolyRing>, rows: &[Vec<u8>]) -> Vec<FpPoly> {
    rows.iter()
        .map(|r| {
            let mut c: Vec<u32> = r.iter().map(|&x| x as u32).collect();
            c.resize(ring.nvars(), 0);
            ring.linear_form(&c)
        })
        .collect()
}

fn form_vector(f: &FpPoly) -> Result<Vec<u8>> {
    if f.is_zero() {
        return Ok(vec![0; f.ring().nvars()]);
    }
    if !f.is_homogeneous() || f.degree() != Some(1) {
        return Err(Error::NotLinear);
    }
    Ok(f.linear_coefficients()?.into_iter().map(|c| c as u8).collect())
}

fn linear_combination(ring: &Arc<PolyRing>, gens: &[FpPoly], coeffs: &[u8]) -> FpPoly {
    gens.iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(g, &c)| g.scale(c as u32))
        .fold(ring.zero(), |acc, t| acc + t)
}

/// `∏_{φ ∈ span(gens)} (arg − φ)` by multiplying out all `p^m` factors.
pub fn mui_direct(ring: &Arc<PolyRing>, gens: &[FpPoly], arg: &FpPoly) -> FpPoly {
    let field = ring.field();
    let mut factors: Vec<FpPoly> =
        coefficient_vectors(field, gens.len()).iter().map(|c| arg - &linear_combination(ring, gens, c)).collect();
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len().div_ceil(2));
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => &a * &b,
                None => a,
            });
        }
        factors = next;
    }
    factors.pop().unwrap_or_else(|| ring.one())
}

/// `Mui_V(arg)` by peeling off the last generator:
/// `Mui_V(X) = Mui_U(X)^p − Mui_U(X) · Mui_U(v)^{p−1}`.
pub fn mui_recursive(gens: &[FpPoly], arg: &FpPoly) -> FpPoly {
    let Some((v, u)) = gens.split_last() else {
        return arg.clone();
    };
    let p = arg.field().p() as u64;
    let a = mui_recursive(u, arg);
    let b = mui_recursive(u, v);
    a.frobenius_power(1) - &a * &b.pow(p - 1)
}

/// Whether the direct product is small enough to serve as a cross-check.
fn direct_is_cheap(p: u32, m: usize, nvars: usize) -> bool {
    let size = (p as u64).pow(m as u32);
    m <= 3 && size <= 125 && (nvars <= 4 || size <= 27)
}

/// `Mui_V(arg)` for `V = span(gens)`. Computed by the recursion and, where
/// affordable, also by the direct product; the two must agree.
pub fn mui_poly(ring: &Arc<PolyRing>, gens: &[FpPoly], arg: &FpPoly) -> Result<FpPoly> {
    MuiContext::new(ring, gens)?;
    let rec = mui_recursive(gens, arg);
    if direct_is_cheap(ring.p(), gens.len(), ring.nvars()) {
        let direct = mui_direct(ring, gens, arg);
        assert_eq!(direct, rec, "Mui product and recursion disagree");
    }
    Ok(rec)
}

impl MuiContext {
    /// The span of `gens`, which must be linearly independent linear forms.
    pub fn new(ring: &Arc<PolyRing>, gens: &[FpPoly]) -> Result<Self> {
        let rows = gens.iter().map(form_vector).collect::<Result<Vec<_>>>()?;
        if gens.iter().any(|g| !g.same_ring(&ring.zero())) {
            return Err(Error::RingMismatch);
        }
        let span = Subspace::span(ring.field(), ring.nvars(), &rows)?;
        if span.dim() != gens.len() {
            return Err(Error::DependentGenerators);
        }
        Self::build(ring, span, gens.to_vec())
    }

    /// The space spanned by the rows of `span`, read as coefficient vectors.
    pub fn from_subspace(ring: &Arc<PolyRing>, span: &Subspace) -> Result<Self> {
        if span.ambient_dim() != ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of dimension {} in a ring with {} variables",
                span.ambient_dim(),
                ring.nvars()
            )));
        }
        Self::build(ring, span.clone(), forms_from_rows(ring, span.basis()))
    }

    fn build(ring: &Arc<PolyRing>, span: Subspace, gens: Vec<FpPoly>) -> Result<Self> {
        let key = (ring.names().to_vec(), ring.p(), span.basis().to_vec());
        let cached = cache().lock().expect("cache lock").get(&key).cloned();
        let dickson = match cached {
            Some(d) => d,
            None => {
                let canonical = forms_from_rows(ring, span.basis());
                let d = Arc::new(compute_dickson(ring, &canonical)?);
                cache().lock().expect("cache lock").insert(key, d.clone());
                d
            }
        };
        Ok(Self { ring: ring.clone(), span, gens, dickson })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[FpPoly] {
        &self.gens
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// All `p^m` elements of the span.
    pub fn elements(&self) -> Vec<FpPoly> {
        forms_from_rows(&self.ring, &self.span.elements())
    }

    pub fn contains(&self, f: &FpPoly) -> bool {
        form_vector(f).is_ok_and(|v| self.span.contains(&v))
    }

    /// `D_r(V)`, with `D_m = 1` and `D_r = 0` for `r < 0`.
    pub fn dickson(&self, r: i64) -> Result<FpPoly> {
        let m = self.dim() as i64;
        if r > m {
            return Err(Error::OutOfRange(format!("Dickson index {r} exceeds dimension {m}")));
        }
        if r < 0 {
            return Ok(self.ring.zero());
        }
        Ok(self.dickson[r as usize].clone())
    }

    /// `Mui_V(arg) = Σ_r (−1)^{m−r} D_r arg^{p^r}`.
    pub fn eval(&self, arg: &FpPoly) -> Result<FpPoly> {
        if !arg.same_ring(&self.ring.zero()) {
            return Err(Error::RingMismatch);
        }
        let m = self.dim();
        let field = self.ring.field();
        let mut acc = self.ring.zero();
        for r in 0..=m {
            let term = &self.dickson[r] * &arg.frobenius_power(r as u32);
            acc = acc + term.scale(field.sign((m - r) as i64));
        }
        Ok(acc)
    }

    /// `MuiRel(V, V + <v>) = Mui_V(v)^{p−1}`.
    pub fn rel(&self, v: &FpPoly) -> Result<FpPoly> {
        let vec = form_vector(v)?;
        if self.span.contains(&vec) {
            return Err(Error::ArgumentInSubspace);
        }
        Ok(self.eval(v)?.pow(self.ring.p() as u64 - 1))
    }
}

/// Dickson invariants through `D_r(V) = D_{r−1}(U)^p + D_r(U) MuiRel(U, V)`
/// with `U` spanned by all but the last generator.
fn compute_dickson(ring: &Arc<PolyRing>, gens: &[FpPoly]) -> Result<Vec<FpPoly>> {
    let Some((v, u)) = gens.split_last() else {
        return Ok(vec![ring.one()]);
    };
    let sub = MuiContext::new(ring, u)?;
    let rel = sub.rel(v)?;
    let m = gens.len();
    let mut out = Vec::with_capacity(m + 1);
    for r in 0..m as i64 {
        let prev = sub.dickson(r - 1)?.frobenius_power(1);
        out.push(prev + &sub.dickson(r)? * &rel);
    }
    out.push(ring.one());
    cross_check(ring, gens, &out);
    Ok(out)
}

/// Compares `Σ (−1)^{m−r} D_r X^{p^r}` against the direct product in a
/// ring with one fresh variable `X`, when that is affordable.
fn cross_check(ring: &Arc<PolyRing>, gens: &[FpPoly], dickson: &[FpPoly]) {
    let m = gens.len();
    if !direct_is_cheap(ring.p(), m, ring.nvars()) || ring.nvars() >= crate::fppoly::MAX_VARS {
        return;
    }
    let mut name = String::from("X");
    while ring.names().contains(&name) {
        name.push('\'');
    }
    let names = ring.names().iter().cloned().chain([name]);
    let ext = PolyRing::new(ring.field(), names).expect("one more variable fits");
    let embed = |f: &FpPoly| {
        FpPoly::from_terms(
            ext.clone(),
            f.terms().iter().map(|&(mono, c)| {
                let mut e = mono.exponents(ring.nvars());
                e.push(0);
                (Monomial::from_exponents(&e), c as i64)
            }),
        )
    };
    let x = ext.var(ring.nvars());
    let ext_gens: Vec<FpPoly> = gens.iter().map(embed).collect();
    let direct = mui_direct(&ext, &ext_gens, &x);
    let field = ring.field();
    let from_dickson = (0..=m).fold(ext.zero(), |acc, r| {
        acc + (&embed(&dickson[r]) * &x.frobenius_power(r as u32)).scale(field.sign((m - r) as i64))
    });
    assert_eq!(direct, from_dickson, "Dickson recursion disagrees with the Mui product");
}

/// `D_r(span(gens))`.
pub fn dickson_invariant(ring: &Arc<PolyRing>, gens: &[FpPoly], r: i64) -> Result<FpPoly> {
    MuiContext::new(ring, gens)?.dickson(r)
}

/// `MuiRel(U, U + <v>) = Mui_U(v)^{p−1}` for `U = span(u_gens)`.
pub fn mui_rel(ring: &Arc<PolyRing>, u_gens: &[FpPoly], v: &FpPoly) -> Result<FpPoly> {
    MuiContext::new(ring, u_gens)?.rel(v)
}

/// `ζ_i = Σ_j (α_j β_j^{p^i} − α_j^{p^i} β_j)` in `S(E*)`.
pub fn zeta(space: &SymplecticSpace, i: u32) -> Result<FpPoly> {
    if i < 1 {
        return Err(Error::OutOfRange("ζ_i needs i ≥ 1".into()));
    }
    let ring = space.dual_ring();
    Ok((1..=space.n()).fold(ring.zero(), |acc, j| {
        let a = space.alpha(j);
        let b = space.beta(j);
        acc + &a * &b.frobenius_power(i) - &a.frobenius_power(i) * &b
    }))
}

/// [`zeta`] for an explicit list of `(α, β)` pairs of variables, used for
/// the corank-one subspace spanned by the first pairs.
pub fn zeta_on_pairs(pairs: &[(FpPoly, FpPoly)], i: u32) -> Result<FpPoly> {
    if i < 1 {
        return Err(Error::OutOfRange("ζ_i needs i ≥ 1".into()));
    }
    let (a0, _) = pairs.first().ok_or_else(|| Error::OutOfRange("no variable pairs".into()))?;
    let ring = a0.ring().clone();
    Ok(pairs.iter().fold(ring.zero(), |acc, (a, b)| acc + a * &b.frobenius_power(i) - &a.frobenius_power(i) * b))
}

#[cfg(test)]
mod tests;
