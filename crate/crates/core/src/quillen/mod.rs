//! Even-degree cohomology classes of `P = p^{1+2n}_+` modulo nilpotents,
//! modelled by their restrictions to the maximal elementary abelian
//! subgroups. Those correspond to the Lagrangians `I` of `E`, and a class
//! is a family of homogeneous polynomials in `S(I*)[z]`, one per `I`, in
//! the order of [`SymplecticSpace::lagrangians`]. A class is nilpotent
//! exactly when every component vanishes.
//!
//! Degrees are polynomial degrees, half the cohomological ones.

mod solve;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dickson::{forms_from_rows, MuiContext};
use crate::error::{Error, Result};
use crate::fplinalg::{LinearForm, Matrix, Subspace};
use crate::fppoly::{FpPoly, PrimeField};
use crate::symplectic::SymplecticSpace;

pub use solve::{
    ideal_decompose, ideal_decompose_with_kernel, ideal_slice_rank, ideal_slice_system, inflation_preimage,
    inflation_preimages, restriction_kernel, IdealDecomposition, IdealSlice, InflationMap,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuillenClass {
    space: SymplecticSpace,
    degree: u32,
    components: Vec<FpPoly>,
}

/// Serialized form: `(Lagrangian RREF, polynomial text)` pairs in
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedClass {
    pub p: u32,
    pub n: usize,
    pub degree: u32,
    pub components: Vec<(Vec<Vec<u32>>, String)>,
}

fn check_component(space: &SymplecticSpace, degree: u32, c: &FpPoly) -> Result<()> {
    if !c.same_ring(&space.restriction_ring().zero()) {
        return Err(Error::RingMismatch);
    }
    match c.homogeneous_degree() {
        None if c.is_zero() => Ok(()),
        Some(d) if d == degree => Ok(()),
        Some(d) => Err(Error::DegreeMismatch(d, degree)),
        None => Err(Error::NotHomogeneous),
    }
}

impl QuillenClass {
    /// A class from explicit components, one per Lagrangian.
    pub fn from_components(space: &SymplecticSpace, degree: u32, components: Vec<FpPoly>) -> Result<Self> {
        let count = space.lagrangians().len();
        if components.len() != count {
            return Err(Error::DimensionMismatch(format!("{} components for {count} Lagrangians", components.len())));
        }
        for c in &components {
            check_component(space, degree, c)?;
        }
        Ok(Self { space: space.clone(), degree, components })
    }

    pub fn zero(space: &SymplecticSpace, degree: u32) -> Self {
        let z = space.restriction_ring().zero();
        Self { space: space.clone(), degree, components: vec![z; space.lagrangians().len()] }
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[FpPoly] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &FpPoly {
        &self.components[index]
    }

    /// Nilpotence test: every restriction vanishes.
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(FpPoly::is_zero)
    }

    /// Indices of the Lagrangians with nonzero component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&i| !self.components[i].is_zero()).collect()
    }

    /// Whether `z` occurs in no component.
    pub fn is_z_free(&self) -> bool {
        let zi = self.space.n();
        self.components.iter().all(|c| c.max_exponent(zi) == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch("classes on different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(self.zip(other, |a, b| a + b, self.degree))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a * b, self.degree + other.degree))
    }

    pub fn scale(&self, c: u32) -> Self {
        self.map(|a| a.scale(c), self.degree)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a, self.degree)
    }

    /// Componentwise `p`-th power.
    pub fn pth_power(&self) -> Self {
        self.map(|a| a.frobenius_power(1), self.degree * self.space.p())
    }

    /// Componentwise `e`-th power.
    pub fn pow(&self, e: u32) -> Self {
        self.map(|a| a.pow(e as u64), self.degree * e)
    }

    fn map(&self, f: impl Fn(&FpPoly) -> FpPoly + Sync + Send, degree: u32) -> Self {
        Self { space: self.space.clone(), degree, components: self.components.par_iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&FpPoly, &FpPoly) -> FpPoly + Sync + Send, degree: u32) -> Self {
        Self {
            space: self.space.clone(),
            degree,
            components: self.components.par_iter().zip(&other.components).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// The class `σ_* c` for a symplectic `σ`: its component at `σI` is the
    /// component of `c` at `I`, rewritten in the coordinates of `σI`.
    pub fn transport(&self, sigma: &Matrix) -> Result<Self> {
        if !self.space.preserves_form(sigma) {
            return Err(Error::OutOfRange("transport needs a symplectic matrix".into()));
        }
        let lags = self.space.lagrangians();
        let ring = self.space.restriction_ring().clone();
        let n = self.space.n();
        let field = self.space.field();
        let mut out = vec![ring.zero(); lags.len()];
        let moved: Vec<(usize, FpPoly)> = lags
            .par_iter()
            .zip(&self.components)
            .map(|(l, c)| {
                let image = l.subspace().image(sigma)?;
                let target = self
                    .space
                    .lagrangian_index(&image)
                    .ok_or_else(|| Error::OutOfRange("image is not a Lagrangian".into()))?;
                // T[k][j]: coordinate k of σ v_j in the RREF basis of σI
                let mut t = Matrix::zeros(field, n, n);
                for (j, v) in l.subspace().basis().iter().enumerate() {
                    let w = image.coordinates(&sigma.mul_vec(v)?).expect("σ v lies in σI");
                    for (k, &a) in w.iter().enumerate() {
                        t.set(k, j, a as u32);
                    }
                }
                let t_inv = t.inverse().expect("σ restricts to an isomorphism");
                let mut images: Vec<FpPoly> = (0..n)
                    .map(|j| {
                        let mut row: Vec<u32> = (0..n).map(|k| t_inv.get(j, k)).collect();
                        row.push(0);
                        ring.linear_form(&row)
                    })
                    .collect();
                images.push(ring.var(n));
                Ok((target, c.substitute_linear(&images, &ring)?))
            })
            .collect::<Result<_>>()?;
        for (target, c) in moved {
            out[target] = c;
        }
        Ok(Self { space: self.space.clone(), degree: self.degree, components: out })
    }

    pub fn to_serialized(&self) -> SerializedClass {
        let lags = self.space.lagrangians();
        SerializedClass {
            p: self.space.p(),
            n: self.space.n(),
            degree: self.degree,
            components: lags.iter().zip(&self.components).map(|(l, c)| (l.subspace().to_rows(), c.to_text())).collect(),
        }
    }

    pub fn from_serialized(s: &SerializedClass) -> Result<Self> {
        let space = SymplecticSpace::new(PrimeField::new(s.p)?, s.n)?;
        let lags = space.lagrangians();
        if s.components.len() != lags.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} Lagrangians",
                s.components.len(),
                lags.len()
            )));
        }
        let ring = space.restriction_ring().clone();
        let mut comps = Vec::with_capacity(lags.len());
        for (l, (rref, text)) in lags.iter().zip(&s.components) {
            if &l.subspace().to_rows() != rref {
                return Err(Error::Parse("Lagrangians out of enumeration order".into()));
            }
            comps.push(FpPoly::parse(&ring, text)?);
        }
        Self::from_components(&space, s.degree, comps)
    }
}

/// `κ_{n,r}`: the component at every `I` is `D_r(I*)` in canonical
/// coordinates, of degree `p^n − p^r`. `r = n` gives the unit class.
pub fn class_kappa(space: &SymplecticSpace, r: usize) -> Result<QuillenClass> {
    let n = space.n();
    if r > n {
        return Err(Error::OutOfRange(format!("κ index r = {r} exceeds n = {n}")));
    }
    let ring = space.restriction_ring();
    let ctx = MuiContext::new(ring, &(0..n).map(|i| ring.var(i)).collect::<Vec<_>>())?;
    let d = ctx.dickson(r as i64)?;
    let degree = (space.field().power_of_p(n as u32) - space.field().power_of_p(r as u32)) as u32;
    Ok(QuillenClass { space: space.clone(), degree, components: vec![d; space.lagrangians().len()] })
}

/// The top Chern class `ζ_n`: component `Mui_{I*}(z)` of degree `p^n`.
pub fn class_zeta_top(space: &SymplecticSpace) -> Result<QuillenClass> {
    let n = space.n();
    let ring = space.restriction_ring();
    let ctx = MuiContext::new(ring, &(0..n).map(|i| ring.var(i)).collect::<Vec<_>>())?;
    let c = ctx.eval(&ring.var(n))?;
    Ok(QuillenClass {
        space: space.clone(),
        degree: space.field().power_of_p(n as u32) as u32,
        components: vec![c; space.lagrangians().len()],
    })
}

/// Inflation from `E`: the family of restrictions of a homogeneous `f`.
pub fn inflate(space: &SymplecticSpace, f: &FpPoly) -> Result<QuillenClass> {
    if !f.same_ring(&space.dual_ring().zero()) {
        return Err(Error::RingMismatch);
    }
    let degree = match f.homogeneous_degree() {
        Some(d) => d,
        None if f.is_zero() => 0,
        None => return Err(Error::NotHomogeneous),
    };
    let components = space.lagrangians().par_iter().map(|l| l.restrict(f)).collect::<Result<_>>()?;
    Ok(QuillenClass { space: space.clone(), degree, components })
}

/// The transfer class `χ_{r,φ}`, through its restrictions: zero where
/// `φ|_I ≠ 0`, and `−D_r(I_φ*) MuiRel(I_φ*, I*)` where `I ⊆ ker φ`, with
/// `I_φ*` the forms on `I` vanishing on the radical line of `ker φ`.
pub fn class_chi(space: &SymplecticSpace, r: usize, phi: &LinearForm) -> Result<QuillenClass> {
    let n = space.n();
    if n == 0 || r >= n {
        return Err(Error::OutOfRange(format!("χ index r = {r} needs r < n = {n}")));
    }
    let line = space.radical_line(phi)?;
    let ring = space.restriction_ring();
    let field = space.field();
    let degree = (field.power_of_p(n as u32) - field.power_of_p(r as u32)) as u32;
    let components = space
        .lagrangians()
        .par_iter()
        .map(|l| {
            if !l.in_kernel_of(phi) {
                return Ok(ring.zero());
            }
            let (ann, outside) = l.annihilator_of_line(&line)?;
            let ctx = MuiContext::from_subspace(ring, &pad(field, &ann, ring.nvars()))?;
            let v = &forms_from_rows(ring, &[outside])[0];
            Ok(-(&ctx.dickson(r as i64)? * &ctx.rel(v)?))
        })
        .collect::<Result<_>>()?;
    Ok(QuillenClass { space: space.clone(), degree, components })
}

fn pad(field: PrimeField, rows: &[Vec<u8>], width: usize) -> Subspace {
    let rows: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(width, 0);
            r
        })
        .collect();
    Subspace::span(field, width, &rows).expect("padded rows fit")
}

/// Sum of classes of equal degree; `None` for an empty list.
pub fn sum_classes(classes: &[QuillenClass]) -> Result<Option<QuillenClass>> {
    let mut it = classes.iter();
    let Some(first) = it.next() else {
        return Ok(None);
    };
    it.try_fold(first.clone(), |acc, c| acc.add(c)).map(Some)
}

#[cfg(test)]
mod tests;
