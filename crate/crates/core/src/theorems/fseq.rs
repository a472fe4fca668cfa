use crate::dickson::zeta;
use crate::error::{Error, Result};
use crate::fppoly::FpPoly;
use crate::quillen::{ideal_decompose_with_kernel, IdealDecomposition};
use crate::symplectic::SymplecticSpace;

/// The polynomials behind the `p`-th power identities:
///
/// * `f_0..f_{n−1}` with `ζ_{n+1} + Σ_i (−1)^{n−i} ζ_{i+1} f_i = 0`;
/// * `h_1..h_{n−1}` from the space of the first `n − 1` pairs, with
///   `ζ_n = Σ_i h_i ζ_i` there;
/// * `η` with `ζ_n = β_n η + Σ_i h_i ζ_i` on `E`.
///
/// `f_offsets` holds further solutions `f'` of the first identity, one per
/// syzygy used as an offset.
#[derive(Clone, Debug)]
pub struct FSequence {
    pub f_list: Vec<FpPoly>,
    pub h_list: Vec<FpPoly>,
    pub eta: FpPoly,
    pub f_offsets: Vec<Vec<FpPoly>>,
}

/// Offsets built from at most this many syzygies, plus their sum.
const MAX_OFFSETS: usize = 3;

fn decompose(t: &FpPoly, gens: &[FpPoly], what: &str) -> Result<(IdealDecomposition, Vec<IdealDecomposition>)> {
    match ideal_decompose_with_kernel(t, gens, true)? {
        (Some(d), kernel) => Ok((d, kernel)),
        (None, _) => Err(Error::OutOfRange(format!("{what} is not in the ideal of the ζ_i"))),
    }
}

fn offsets(kernel: &[IdealDecomposition]) -> Vec<IdealDecomposition> {
    let mut out: Vec<IdealDecomposition> = kernel.iter().take(MAX_OFFSETS).cloned().collect();
    if kernel.len() > MAX_OFFSETS {
        let mut sum = kernel[0].clone();
        for k in &kernel[1..] {
            for (a, b) in sum.coeffs.iter_mut().zip(&k.coeffs) {
                *a = &*a + b;
            }
        }
        out.push(sum);
    }
    out
}

pub fn compute_f_sequence(space: &SymplecticSpace) -> Result<FSequence> {
    let n = space.n();
    if n == 0 {
        return Err(Error::OutOfRange("the f-sequence needs n ≥ 1".into()));
    }
    let field = space.field();
    let zetas = (1..=n as u32 + 1).map(|i| zeta(space, i)).collect::<Result<Vec<_>>>()?;
    let gens = &zetas[..n];

    // −ζ_{n+1} = Σ c_{i+1} ζ_{i+1}, then f_i = (−1)^{n−i} c_{i+1}
    let (dec, kernel) = decompose(&-&zetas[n], gens, "ζ_{n+1}")?;
    let to_f = |d: &IdealDecomposition| -> Vec<FpPoly> {
        (0..n).map(|i| d.coeffs[i].scale(field.sign((n - i) as i64))).collect()
    };
    let f_list = to_f(&dec);
    let f_offsets = offsets(&kernel)
        .iter()
        .map(|k| {
            let shifted = IdealDecomposition { coeffs: dec.coeffs.iter().zip(&k.coeffs).map(|(a, b)| a + b).collect() };
            to_f(&shifted)
        })
        .collect::<Vec<_>>();

    let check_f = |f: &[FpPoly]| {
        let total = (0..n).fold(zetas[n].clone(), |acc, i| acc + (&zetas[i] * &f[i]).scale(field.sign((n - i) as i64)));
        assert!(total.is_zero(), "f-sequence identity failed re-expansion");
    };
    check_f(&f_list);
    f_offsets.iter().for_each(|f| check_f(f));

    let h_list = if n == 1 { Vec::new() } else { corank_one_h(space)? };
    let mut rest = zetas[n - 1].clone();
    for (h, z) in h_list.iter().zip(&zetas) {
        rest = rest - h * z;
    }
    let beta_n = space.beta(n);
    let eta = rest
        .exact_divide(&beta_n)?
        .ok_or_else(|| Error::OutOfRange("ζ_n − Σ h_i ζ_i is not divisible by β_n".into()))?;
    let mut check = &beta_n * &eta;
    for (h, z) in h_list.iter().zip(&zetas) {
        check = check + h * z;
    }
    assert_eq!(check, zetas[n - 1], "η identity failed re-expansion");

    Ok(FSequence { f_list, h_list, eta, f_offsets })
}

/// `h_1..h_{n−1}` from `ζ_n = Σ h_i ζ_i` on the first `n − 1` pairs,
/// carried into `S(E*)`.
fn corank_one_h(space: &SymplecticSpace) -> Result<Vec<FpPoly>> {
    let n = space.n();
    let small = SymplecticSpace::new(space.field(), n - 1)?;
    let zs = (1..=n as u32).map(|i| zeta(&small, i)).collect::<Result<Vec<_>>>()?;
    let (dec, _) = decompose(&zs[n - 1], &zs[..n - 1], "ζ_n on the corank-one space")?;
    let images: Vec<FpPoly> = (1..n).map(|i| space.alpha(i)).chain((1..n).map(|i| space.beta(i))).collect();
    dec.coeffs.iter().map(|h| h.substitute_linear(&images, space.dual_ring())).collect()
}
