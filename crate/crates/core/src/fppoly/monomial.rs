/// Maximum number of variables a ring may have.
pub const MAX_VARS: usize = 8;

const FIELD_BITS: usize = 16;
const FIELD_MASK: u128 = 0xffff;
/// Largest total degree representable; every exponent is bounded by it.
pub const MAX_DEGREE: u32 = 0xffff;

/// A monomial `x_0^{e_0} ... x_7^{e_7}` packed into 16-bit fields.
///
/// Variable 0 occupies the most significant field, so the derived ordering
/// on `(degree, packed)` is graded lexicographic with `x_0 > x_1 > ...`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    packed: u128,
}

#[inline]
fn shift(i: usize) -> usize {
    FIELD_BITS * (MAX_VARS - 1 - i)
}

impl Monomial {
    pub const ONE: Monomial = Monomial { degree: 0, packed: 0 };

    /// # Panics
    /// If more than [`MAX_VARS`] exponents are given or the degree exceeds
    /// [`MAX_DEGREE`].
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut packed = 0u128;
        let mut degree = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            degree = degree.checked_add(e).expect("monomial degree overflow");
            packed |= (e as u128) << shift(i);
        }
        assert!(degree <= MAX_DEGREE, "monomial degree overflow");
        Self { degree, packed }
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS);
        Self { degree: 1, packed: 1u128 << shift(i) }
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.packed >> shift(i)) & FIELD_MASK) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    /// Index of the last variable with positive exponent.
    pub fn last_var(self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&i| self.exponent(i) > 0)
    }

    /// True when no variable at index `>= nvars` occurs.
    pub fn fits(self, nvars: usize) -> bool {
        if nvars == 0 {
            return self.packed == 0;
        }
        nvars >= MAX_VARS || self.packed & ((1u128 << shift(nvars - 1)) - 1) == 0
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.degree <= other.degree && (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `other / self` when `self` divides `other`.
    pub fn div_into(self, other: Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial { degree: other.degree - self.degree, packed: other.packed - self.packed })
    }

    /// Every exponent multiplied by `k`.
    pub fn scale(self, k: u32) -> Monomial {
        let degree = self.degree.checked_mul(k).expect("monomial degree overflow");
        assert!(degree <= MAX_DEGREE, "monomial degree overflow");
        let mut packed = 0u128;
        for i in 0..MAX_VARS {
            packed |= ((self.exponent(i) * k) as u128) << shift(i);
        }
        Monomial { degree, packed }
    }

    /// The monomial with the exponent of `var` lowered by one.
    pub fn lower(self, var: usize) -> Option<Monomial> {
        (self.exponent(var) > 0)
            .then(|| Monomial { degree: self.degree - 1, packed: self.packed - (1u128 << shift(var)) })
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    #[inline]
    fn mul(self, other: Monomial) -> Monomial {
        let degree = self.degree + other.degree;
        assert!(degree <= MAX_DEGREE, "monomial degree overflow");
        Monomial { degree, packed: self.packed + other.packed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(&[1, 3]);
        let b = Monomial::from_exponents(&[3, 1]);
        let c = Monomial::from_exponents(&[0, 5]);
        assert!(a < b);
        assert!(b < c);
        assert!(Monomial::ONE < Monomial::var(1));
        assert!(Monomial::var(1) < Monomial::var(0));
    }

    #[test]
    fn arithmetic() {
        let a = Monomial::from_exponents(&[1, 0, 2]);
        let b = Monomial::from_exponents(&[0, 4, 1]);
        let ab = a * b;
        assert_eq!(ab.exponents(3), vec![1, 4, 3]);
        assert_eq!(ab.degree(), 8);
        assert_eq!(a.div_into(ab), Some(b));
        assert_eq!(ab.div_into(a), None);
        assert_eq!(a.scale(9).exponents(3), vec![9, 0, 18]);
        assert_eq!(a.lower(2).unwrap().exponents(3), vec![1, 0, 1]);
        assert_eq!(a.lower(1), None);
        assert_eq!(ab.last_var(), Some(2));
        assert!(a.fits(3));
        assert!(!a.fits(2));
    }
}
