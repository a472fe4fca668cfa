//! Graded linear algebra for inflation and ideal questions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::QuillenClass;
use crate::error::{Error, Result};
use crate::fplinalg::{Factorization, Matrix, SparseSystem, Subspace};
use crate::fppoly::{FpPoly, HomogeneousBasis, PolyRing};
use crate::symplectic::SymplecticSpace;

/// The restriction map `S(E*)_d -> ⊕_I S(I*)_d` over a family of
/// Lagrangians, reduced once for repeated preimage queries.
///
/// Columns are the monomials of degree `d` in `α, β`; rows are blocks of
/// monomials of degree `d` in `x_1..x_n`, one block per Lagrangian of the
/// family, in family order.
#[derive(Debug)]
pub struct InflationMap {
    space: SymplecticSpace,
    degree: u32,
    family: Vec<usize>,
    source: HomogeneousBasis,
    target: HomogeneousBasis,
    factorization: Factorization,
}

type CacheKey = (u32, usize, u32, Vec<usize>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<InflationMap>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<InflationMap>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl InflationMap {
    /// The map over all Lagrangians.
    pub fn full(space: &SymplecticSpace, degree: u32) -> Result<Arc<Self>> {
        Self::for_family(space, degree, (0..space.lagrangians().len()).collect())
    }

    /// The map over the Lagrangians with the given enumeration indices.
    pub fn for_family(space: &SymplecticSpace, degree: u32, mut family: Vec<usize>) -> Result<Arc<Self>> {
        family.sort_unstable();
        family.dedup();
        let count = space.lagrangians().len();
        if let Some(&i) = family.iter().find(|&&i| i >= count) {
            return Err(Error::OutOfRange(format!("Lagrangian index {i} of {count}")));
        }
        let key = (space.p(), space.n(), degree, family.clone());
        if let Some(m) = cache().lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let map = Arc::new(Self::build(space, degree, family)?);
        cache().lock().expect("cache lock").insert(key, map.clone());
        Ok(map)
    }

    fn build(space: &SymplecticSpace, degree: u32, family: Vec<usize>) -> Result<Self> {
        let n = space.n();
        let source = HomogeneousBasis::new(2 * n, degree);
        let target = HomogeneousBasis::new(n, degree);
        let lags = space.lagrangians();
        let blocks: Vec<Vec<Vec<u8>>> =
            family.par_iter().map(|&i| restriction_block(lags[i].images(), &source, &target)).collect();
        let rows: Vec<Vec<u8>> = blocks.into_iter().flatten().collect();
        let matrix = Matrix::from_residue_rows(space.field(), source.len(), rows);
        Ok(Self { space: space.clone(), degree, family, source, target, factorization: Factorization::new(&matrix) })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn family(&self) -> &[usize] {
        &self.family
    }

    pub fn source_basis(&self) -> &HomogeneousBasis {
        &self.source
    }

    pub fn matrix(&self) -> &Matrix {
        self.factorization.matrix()
    }

    pub fn rank(&self) -> usize {
        self.factorization.rank()
    }

    /// Coefficient vector of `f ∈ S(E*)_d`.
    pub fn source_vector(&self, f: &FpPoly) -> Result<Vec<u8>> {
        if f.is_zero() {
            return Ok(vec![0; self.source.len()]);
        }
        self.source.to_vector(f).ok_or(Error::DegreeMismatch(f.degree().unwrap_or(0), self.degree))
    }

    pub fn source_poly(&self, v: &[u8]) -> FpPoly {
        self.source.from_vector(self.space.dual_ring(), v)
    }

    /// The components of `c` over the family, stacked as one vector.
    pub fn class_vector(&self, c: &QuillenClass) -> Result<Vec<u8>> {
        if c.space() != &self.space {
            return Err(Error::DimensionMismatch("class on a different space".into()));
        }
        if c.degree() != self.degree {
            return Err(Error::DegreeMismatch(c.degree(), self.degree));
        }
        let mut out = Vec::with_capacity(self.family.len() * self.target.len());
        for &i in &self.family {
            let comp = c.component(i);
            if comp.is_zero() {
                out.extend(std::iter::repeat_n(0, self.target.len()));
            } else {
                out.extend(
                    self.target.to_vector(comp).ok_or_else(|| {
                        Error::OutOfRange("component involves z; not in the image of inflation".into())
                    })?,
                );
            }
        }
        Ok(out)
    }

    /// Some `f` with `Res_I f = c_I` for every `I` of the family, or `None`.
    pub fn preimage(&self, c: &QuillenClass) -> Result<Option<FpPoly>> {
        let b = match self.class_vector(c) {
            Ok(b) => b,
            Err(Error::OutOfRange(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(self.factorization.solve(&b)?.map(|x| self.source_poly(&x)))
    }

    /// `{f ∈ S(E*)_d : Res_I f = 0 for all I in the family}`, in the
    /// coordinates of [`InflationMap::source_basis`].
    pub fn kernel(&self) -> Subspace {
        let kernel = self.factorization.kernel();
        Subspace::span(self.space.field(), self.source.len(), &kernel).expect("kernel vectors fit")
    }
}

/// Rows of the restriction matrix for one Lagrangian: row `k` holds the
/// coefficient of target monomial `k` in the restriction of every source
/// monomial.
fn restriction_block(images: &[FpPoly], source: &HomogeneousBasis, target: &HomogeneousBasis) -> Vec<Vec<u8>> {
    let d = source.degree() as usize;
    let ring = images[0].ring().clone();
    let powers: Vec<Vec<FpPoly>> = images
        .iter()
        .map(|img| {
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(ring.one());
            for e in 1..=d {
                let next = &pw[e - 1] * img;
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut rows = vec![vec![0u8; source.len()]; target.len()];
    for (j, m) in source.monomials().iter().enumerate() {
        let mut prod = ring.one();
        for (v, pw) in powers.iter().enumerate() {
            let e = m.exponent(v) as usize;
            if e > 0 {
                prod = &prod * &pw[e];
            }
        }
        for (tm, c) in prod.terms() {
            let k = target.index_of(tm).expect("restrictions of E* forms are z-free");
            rows[k][j] = *c as u8;
        }
    }
    rows
}

/// Some `f ∈ S(E*)` inflating to `c` modulo nilpotents, or `None`.
pub fn inflation_preimage(c: &QuillenClass) -> Result<Option<FpPoly>> {
    InflationMap::full(c.space(), c.degree())?.preimage(c)
}

/// Preimages of several classes; classes of equal degree share one
/// reduction.
pub fn inflation_preimages(classes: &[QuillenClass]) -> Result<Vec<Option<FpPoly>>> {
    classes.par_iter().map(inflation_preimage).collect()
}

/// The degree-`d` kernel of restriction to all Lagrangians.
pub fn restriction_kernel(space: &SymplecticSpace, degree: u32) -> Result<Subspace> {
    Ok(InflationMap::full(space, degree)?.kernel())
}

/// `t = Σ coeffs[i] · gens[i]`, each coefficient homogeneous of degree
/// `deg t − deg gens[i]` (zero where that is negative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub coeffs: Vec<FpPoly>,
}

impl IdealDecomposition {
    pub fn expand(&self, gens: &[FpPoly]) -> FpPoly {
        let ring = gens[0].ring();
        self.coeffs.iter().zip(gens).fold(ring.zero(), |acc, (c, g)| acc + c * g)
    }
}

/// The graded system for the degree-`d` slice of the ideal `(gens)`.
/// Columns run over `(generator, multiplier monomial)` pairs.
pub struct IdealSlice {
    ring: Arc<PolyRing>,
    degree: u32,
    target: HomogeneousBasis,
    layout: Vec<(usize, HomogeneousBasis)>,
    system: SparseSystem,
}

fn check_gens(gens: &[FpPoly]) -> Result<(Arc<PolyRing>, Vec<u32>)> {
    let ring = gens.first().ok_or(Error::ZeroForm)?.ring().clone();
    let mut degrees = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.same_ring(&ring.zero()) {
            return Err(Error::RingMismatch);
        }
        degrees.push(g.homogeneous_degree().ok_or(Error::NotHomogeneous)?);
    }
    Ok((ring, degrees))
}

/// Builds the degree-`degree` slice system of `(gens)`.
pub fn ideal_slice_system(gens: &[FpPoly], degree: u32) -> Result<IdealSlice> {
    let (ring, degrees) = check_gens(gens)?;
    let nv = ring.nvars();
    let target = HomogeneousBasis::new(nv, degree);
    let mut system = SparseSystem::new(ring.field(), target.len());
    let mut layout = Vec::new();
    for (i, (g, &dg)) in gens.iter().zip(&degrees).enumerate() {
        if dg > degree {
            continue;
        }
        let mult = HomogeneousBasis::new(nv, degree - dg);
        let columns: Vec<Vec<(usize, u8)>> = mult
            .monomials()
            .par_iter()
            .map(|&m| {
                g.mul_term(m, 1)
                    .terms()
                    .iter()
                    .map(|(tm, c)| (target.index_of(tm).expect("product has the slice degree"), *c as u8))
                    .collect()
            })
            .collect();
        for col in columns {
            system.push_column(col)?;
        }
        layout.push((i, mult));
    }
    Ok(IdealSlice { ring, degree, target, layout, system })
}

impl IdealSlice {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn target_basis(&self) -> &HomogeneousBasis {
        &self.target
    }

    pub fn system(&self) -> &SparseSystem {
        &self.system
    }

    /// Dimension of the slice.
    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    /// The slice as a subspace of coefficient vectors of degree-`d` forms.
    pub fn subspace(&self) -> Subspace {
        let field = self.ring.field();
        let mut cols = Vec::with_capacity(self.system.ncols());
        for j in 0..self.system.ncols() {
            let mut e = vec![0u8; self.system.ncols()];
            e[j] = 1;
            cols.push(self.system.apply(&e));
        }
        Subspace::span(field, self.target.len(), &cols).expect("columns fit")
    }

    fn coefficients(&self, ngens: usize, x: &[u8]) -> Vec<FpPoly> {
        let mut out = vec![self.ring.zero(); ngens];
        let mut offset = 0;
        for (i, basis) in &self.layout {
            out[*i] = basis.from_vector(&self.ring, &x[offset..offset + basis.len()]);
            offset += basis.len();
        }
        out
    }

    fn rhs(&self, t: &FpPoly) -> Result<Vec<u8>> {
        if t.is_zero() {
            return Ok(vec![0; self.target.len()]);
        }
        self.target.to_vector(t).ok_or(Error::DegreeMismatch(t.degree().unwrap_or(0), self.degree))
    }
}

/// Some homogeneous `f_i` with `t = Σ f_i gens[i]`, or `None`. The result
/// is re-expanded and compared with `t`.
pub fn ideal_decompose(t: &FpPoly, gens: &[FpPoly]) -> Result<Option<IdealDecomposition>> {
    Ok(ideal_decompose_with_kernel(t, gens, false)?.0)
}

/// Like [`ideal_decompose`], also returning a basis of the syzygies in
/// that degree when `want_kernel` is set.
pub fn ideal_decompose_with_kernel(
    t: &FpPoly,
    gens: &[FpPoly],
    want_kernel: bool,
) -> Result<(Option<IdealDecomposition>, Vec<IdealDecomposition>)> {
    if !t.is_zero() && !t.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let (ring, _) = check_gens(gens)?;
    if !t.same_ring(&ring.zero()) {
        return Err(Error::RingMismatch);
    }
    let degree = t.homogeneous_degree().unwrap_or(0);
    let slice = ideal_slice_system(gens, degree)?;
    let b = slice.rhs(t)?;
    let (mut sols, kernel) = slice.system.solve(std::slice::from_ref(&b), want_kernel)?;
    let found = sols.pop().flatten().map(|x| IdealDecomposition { coeffs: slice.coefficients(gens.len(), &x) });
    if let Some(dec) = &found {
        assert_eq!(&dec.expand(gens), t, "ideal decomposition failed re-expansion");
    }
    let kernel = kernel
        .unwrap_or_default()
        .iter()
        .map(|x| IdealDecomposition { coeffs: slice.coefficients(gens.len(), x) })
        .collect();
    Ok((found, kernel))
}

/// Dimension of the degree-`d` slice of `(gens)`.
pub fn ideal_slice_rank(gens: &[FpPoly], degree: u32) -> Result<usize> {
    Ok(ideal_slice_system(gens, degree)?.rank())
}
