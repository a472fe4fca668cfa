use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

/// A sparse polynomial over `F_p`.
///
/// Terms are kept sorted ascending in graded lexicographic order with no zero
/// coefficients, so two polynomials are equal iff their term lists are.
#[derive(Clone)]
pub struct FpPoly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for FpPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for FpPoly {}

impl FpPoly {
    /// Builds a polynomial from terms already in canonical form.
    pub(crate) fn from_sorted_terms(ring: Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|&(_, c)| c != 0 && c < ring.p()));
        Self { ring, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    ///
    /// # Panics
    /// If a monomial mentions a variable outside the ring.
    pub fn from_terms(ring: Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let field = ring.field();
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            assert!(m.fits(ring.nvars()), "monomial outside ring");
            let c = field.reduce(c);
            if c != 0 {
                let e = acc.entry(m).or_insert(0);
                *e = field.add(*e, c);
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        Self { ring, terms }
    }

    /// `c * x^exps`.
    pub fn monomial(ring: &Arc<PolyRing>, exps: &[u32], c: i64) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        Self::from_terms(ring.clone(), [(Monomial::from_exponents(exps), c)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn same_ring(&self, other: &FpPoly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &FpPoly) {
        assert!(self.same_ring(other), "polynomials belong to different rings");
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (Monomial::ONE, 1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.binary_search_by(|(t, _)| t.cmp(m)).map(|i| self.terms[i].1).unwrap_or(0)
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.last().copied()
    }

    pub fn max_exponent(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// The degree-`d` homogeneous part.
    pub fn homogeneous_part(&self, d: u32) -> FpPoly {
        let terms = self.terms.iter().copied().filter(|(m, _)| m.degree() == d).collect();
        Self::from_sorted_terms(self.ring.clone(), terms)
    }

    /// Coefficients of a homogeneous linear form, one per variable.
    pub fn linear_coefficients(&self) -> Result<Vec<u32>> {
        let mut out = vec![0; self.ring.nvars()];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return Err(Error::NotLinear);
            }
            out[m.last_var().expect("degree one")] = *c;
        }
        Ok(out)
    }

    /// Value at a point of `F_p^k`.
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.ring.nvars());
        let f = self.field();
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = (0..point.len()).fold(*c, |v, i| f.mul(v, f.pow(point[i], m.exponent(i) as u64)));
            f.add(acc, v)
        })
    }

    pub fn scale(&self, c: u32) -> FpPoly {
        let f = self.field();
        let c = c % f.p();
        if c == 0 {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect();
        Self::from_sorted_terms(self.ring.clone(), terms)
    }

    /// Multiplies by a single term; monomial order is preserved.
    pub fn mul_term(&self, m: Monomial, c: u32) -> FpPoly {
        let f = self.field();
        let c = c % f.p();
        if c == 0 {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|&(t, a)| (t * m, f.mul(a, c))).collect();
        Self::from_sorted_terms(self.ring.clone(), terms)
    }

    fn add_impl(&self, other: &FpPoly, negate_other: bool) -> FpPoly {
        self.check_ring(other);
        let f = self.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let adj = |c: u32| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, adj(b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a[i].1, adj(b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, adj(c))));
        Self::from_sorted_terms(self.ring.clone(), out)
    }

    fn mul_impl(&self, other: &FpPoly) -> FpPoly {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms[0];
            return self.mul_term(m, c);
        }
        let p = self.field().p();
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        acc.reserve((self.terms.len() * other.terms.len()).min(1 << 20));
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let e = acc.entry(ma * mb).or_insert(0);
                *e = (*e + ca * cb) % p;
            }
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(m, _)| m);
        Self::from_sorted_terms(self.ring.clone(), terms)
    }

    /// `f^{p^k}`: every exponent is multiplied by `p^k` and coefficients are
    /// unchanged, since `c^p = c` in `F_p`.
    pub fn frobenius_power(&self, k: u32) -> FpPoly {
        let q = self.field().power_of_p(k);
        let q = u32::try_from(q).expect("Frobenius exponent overflow");
        let terms = self.terms.iter().map(|&(m, c)| (m.scale(q), c)).collect();
        Self::from_sorted_terms(self.ring.clone(), terms)
    }

    /// `f^e`, using the base-`p` digits of `e` and the Frobenius.
    pub fn pow(&self, e: u64) -> FpPoly {
        if e == 0 {
            return self.ring.one();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            let e32 = u32::try_from(e).expect("exponent overflow");
            return Self::from_sorted_terms(self.ring.clone(), vec![(m.scale(e32), self.field().pow(c, e))]);
        }
        let p = self.field().p() as u64;
        let mut result = self.ring.one();
        let mut rest = e;
        let mut k = 0;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let base = self.frobenius_power(k);
                for _ in 0..digit {
                    result = &result * &base;
                }
            }
            rest /= p;
            k += 1;
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<FpPoly> {
        if var >= self.ring.nvars() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        let f = self.field();
        // Lowering one exponent preserves the graded lex order.
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let e = m.exponent(var);
                let c = f.mul(c, e % f.p());
                (c != 0).then(|| (m.lower(var).expect("positive exponent"), c))
            })
            .collect();
        Ok(Self::from_sorted_terms(self.ring.clone(), terms))
    }

    /// Partial derivative by variable name.
    pub fn partial_derivative_by_name(&self, name: &str) -> Result<FpPoly> {
        self.partial_derivative(self.ring.var_index(name)?)
    }

    /// Exact quotient `f / g`.
    ///
    /// Returns `Ok(None)` when `g` does not divide `f`. Division by a single
    /// term is done term by term; otherwise the single-divisor division
    /// algorithm is run (its remainder vanishes iff `g | f`) and the quotient
    /// is re-multiplied as a check.
    pub fn exact_divide(&self, g: &FpPoly) -> Result<Option<FpPoly>> {
        if !self.same_ring(g) {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field();
        if g.terms.len() == 1 {
            let (gm, gc) = g.terms[0];
            let inv = f.inv(gc).expect("nonzero");
            let mut terms = Vec::with_capacity(self.terms.len());
            for &(m, c) in &self.terms {
                match gm.div_into(m) {
                    Some(q) => terms.push((q, f.mul(c, inv))),
                    None => return Ok(None),
                }
            }
            return Ok(Some(Self::from_sorted_terms(self.ring.clone(), terms)));
        }
        let (lm, lc) = g.leading_term().expect("nonzero");
        let lc_inv = f.inv(lc).expect("nonzero");
        let mut rem: BTreeMap<Monomial, u32> = self.terms.iter().copied().collect();
        let mut quotient: Vec<(Monomial, i64)> = Vec::new();
        while let Some((&m, &c)) = rem.iter().next_back() {
            let Some(qm) = lm.div_into(m) else {
                return Ok(None);
            };
            let qc = f.mul(c, lc_inv);
            quotient.push((qm, qc as i64));
            for &(gm, gc) in &g.terms {
                let t = gm * qm;
                let sub = f.mul(gc, qc);
                let e = rem.entry(t).or_insert(0);
                *e = f.sub(*e, sub);
                if *e == 0 {
                    rem.remove(&t);
                }
            }
        }
        let q = Self::from_terms(self.ring.clone(), quotient);
        if &(&q * g) != self {
            return Ok(None);
        }
        Ok(Some(q))
    }

    /// Applies the ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[FpPoly], target: &Arc<PolyRing>) -> Result<FpPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::IncompleteSubstitution { expected: self.ring.nvars(), got: images.len() });
        }
        if images.iter().any(|im| !(Arc::ptr_eq(im.ring(), target) || **im.ring() == **target)) {
            return Err(Error::RingMismatch);
        }
        if target.p() != self.ring.p() {
            return Err(Error::RingMismatch);
        }
        Ok(self.substitute_unchecked(images, target))
    }

    /// Like [`FpPoly::substitute`], additionally requiring every image to
    /// have degree at most one.
    pub fn substitute_linear(&self, images: &[FpPoly], target: &Arc<PolyRing>) -> Result<FpPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::IncompleteSubstitution { expected: self.ring.nvars(), got: images.len() });
        }
        if images.iter().any(|im| im.degree().unwrap_or(0) > 1) {
            return Err(Error::NonLinearSubstitution);
        }
        self.substitute(images, target)
    }

    pub(crate) fn substitute_unchecked(&self, images: &[FpPoly], target: &Arc<PolyRing>) -> FpPoly {
        let nvars = self.ring.nvars();
        // powers[i][e] = images[i]^e, filled on demand
        let mut powers: Vec<FxHashMap<u32, FpPoly>> = vec![FxHashMap::default(); nvars];
        let p = target.p();
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for &(m, c) in &self.terms {
            let mut prod = target.constant(c as i64);
            for (i, cache) in powers.iter_mut().enumerate() {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                let pw = cache.entry(e).or_insert_with(|| images[i].pow(e as u64));
                prod = &prod * &*pw;
                if prod.is_zero() {
                    break;
                }
            }
            for &(tm, tc) in &prod.terms {
                let e = acc.entry(tm).or_insert(0);
                *e = (*e + tc) % p;
            }
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(m, _)| m);
        Self::from_sorted_terms(target.clone(), terms)
    }

    /// Canonical text form `c*x0^e0*x1^e1 + ...`, using positional variable
    /// names `x0, x1, ...` and terms in ascending graded lex order.
    pub fn to_text(&self) -> String {
        self.format_with(|i| format!("x{i}"))
    }

    /// Text form using the ring's own variable names.
    pub fn to_named_text(&self) -> String {
        let names = self.ring.names().to_vec();
        self.format_with(|i| names[i].clone())
    }

    fn format_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let nvars = self.ring.nvars();
        let mut parts = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            let mut factors = Vec::new();
            if c != 1 || m.degree() == 0 {
                factors.push(c.to_string());
            }
            for i in 0..nvars {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name(i)),
                    e => factors.push(format!("{}^{e}", name(i))),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Parses the canonical text form (positional names `x0, x1, ...`).
    /// Any term order and repeated factors are accepted; the result is
    /// canonicalized.
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<FpPoly> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let nvars = ring.nvars();
        let mut terms = Vec::new();
        for raw in text.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let mut coeff: i64 = 1;
            let mut exps = vec![0u32; nvars];
            for factor in raw.split('*') {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => {
                            (i, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?)
                        }
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    if idx >= nvars {
                        return Err(Error::Parse(format!("variable x{idx} outside ring")));
                    }
                    exps[idx] += exp;
                } else {
                    let c: i64 = factor.parse().map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    coeff = (coeff * ring.field().reduce(c) as i64) % ring.p() as i64;
                }
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(Self::from_terms(ring.clone(), terms))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.ring.p(), self.to_named_text())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&FpPoly> for &FpPoly {
            type Output = FpPoly;
            fn $method(self, rhs: &FpPoly) -> FpPoly {
                $body(self, rhs)
            }
        }
        impl $tr<FpPoly> for FpPoly {
            type Output = FpPoly;
            fn $method(self, rhs: FpPoly) -> FpPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&FpPoly> for FpPoly {
            type Output = FpPoly;
            fn $method(self, rhs: &FpPoly) -> FpPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<FpPoly> for &FpPoly {
            type Output = FpPoly;
            fn $method(self, rhs: FpPoly) -> FpPoly {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FpPoly, b: &FpPoly| a.add_impl(b, false));
binop!(Sub, sub, |a: &FpPoly, b: &FpPoly| a.add_impl(b, true));
binop!(Mul, mul, |a: &FpPoly, b: &FpPoly| a.mul_impl(b));

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        self.scale(self.field().p() - 1)
    }
}

impl Neg for FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        -&self
    }
}

impl std::iter::Sum for FpPoly {
    /// # Panics
    /// On an empty iterator, since the ring is unknown.
    fn sum<I: Iterator<Item = FpPoly>>(mut iter: I) -> FpPoly {
        let first = iter.next().expect("sum of an empty polynomial iterator");
        iter.fold(first, |acc, x| acc + x)
    }
}
