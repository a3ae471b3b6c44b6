//! Univariate polynomials over an exact or floating scalar kind.
//!
//! Coefficients are stored in ascending degree order with the invariant that
//! the last entry is nonzero; the zero polynomial has an empty coefficient
//! vector.

pub mod det;
pub mod roots;
pub mod sturm;

use crate::scalar::{C64, Rat, Scalar};
use std::fmt;

pub use det::{determinant, discriminant, resultant};
pub use roots::{classify_pattern, roots, RootConfig, RootError, RootPattern};

/// Wronskian of a family of polynomials: the determinant of the matrix of
/// derivatives `f_i^{(j-1)}`, zero exactly when the family is linearly
/// dependent. Not normalized; exact over rationals.
pub fn wronskian<T: Scalar>(fs: &[UniPoly<T>]) -> UniPoly<T> {
    assert!(!fs.is_empty(), "wronskian of an empty family");
    let d = fs.len();
    let rows: Vec<Vec<UniPoly<T>>> = fs
        .iter()
        .map(|f| {
            let mut row = Vec::with_capacity(d);
            let mut der = f.clone();
            for _ in 0..d {
                row.push(der.clone());
                der = der.derivative();
            }
            row
        })
        .collect();
    det::poly_matrix_det(&rows)
}

#[derive(Clone, PartialEq)]
pub struct UniPoly<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(k: usize, c: T) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut p = UniPoly::one();
        for r in roots {
            p = p.mul(&UniPoly::new(vec![r.clone().neg(), T::one()]));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.clone().neg()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, a) in self.coeffs.iter().enumerate().skip(1) {
            out.push(a.clone() * T::from_i64(k as i64));
        }
        UniPoly::new(out)
    }

    pub fn eval(&self, z: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (UniPoly::zero(), self.clone());
        }
        let lead = divisor.coeffs[dlen - 1].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dlen - 1].clone() / lead.clone();
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dlen - 1);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Substitute `z -> z + c` (Taylor shift by synthetic division).
    pub fn taylor_shift(&self, c: &T) -> Self {
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            // One round of synthetic division by (z - (-c)) leaves the value
            // at -c... we want p(z + c): divide repeatedly by (z - c_shift)
            // with c_shift = c.
            let mut carry = T::zero();
            for k in (0..work.len()).rev() {
                carry = work[k].clone() + carry * c.clone();
                work[k] = carry.clone();
            }
            out.push(work.remove(0));
        }
        UniPoly::new(out)
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&T) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_c64(&self) -> UniPoly<C64> {
        self.map(|c| c.to_c64())
    }
}

impl UniPoly<Rat> {
    /// Clear denominators and divide by integer content; the result is a
    /// rational multiple of `self` with coprime integer coefficients.
    pub fn primitive(&self) -> Self {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if let Some(last) = ints.last() {
            if last.is_negative() {
                content = -content;
            }
        }
        UniPoly::new(
            ints.iter()
                .map(|v| Rat::from_integer(v / &content))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive();
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }
}

impl UniPoly<C64> {
    /// Max coefficient magnitude.
    pub fn max_mag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when every coefficient is within `tol` (absolute, relative to the
    /// largest coefficient) of being real.
    pub fn is_real_within(&self, tol: f64) -> bool {
        let scale = self.max_mag().max(1e-300);
        self.coeffs.iter().all(|c| c.im.abs() <= tol * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn p(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn arithmetic_and_degree() {
        let a = p(&[1, 2, 3]);
        let b = p(&[0, -2]);
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.add(&b), p(&[1, 0, 3]));
        assert_eq!(a.mul(&b), p(&[0, -2, -4, -6]));
        assert_eq!(p(&[]).degree(), None);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn divrem_exact_and_with_remainder() {
        let num = p(&[-1, 0, 0, 1]); // z^3 - 1
        let den = p(&[-1, 1]); // z - 1
        let (q, r) = num.divrem(&den);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());

        let (q2, r2) = p(&[1, 0, 1]).divrem(&p(&[1, 1]));
        assert_eq!(q2, p(&[-1, 1]));
        assert_eq!(r2, p(&[2]));
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let f = p(&[3, -1, 0, 2]);
        let g = f.taylor_shift(&rat(5, 2));
        for t in -3..4 {
            let z = rat(t, 1);
            assert_eq!(g.eval(&z), f.eval(&(z.clone() + rat(5, 2))));
        }
    }

    #[test]
    fn from_roots_and_derivative() {
        let f = UniPoly::from_roots(&[rat_i(1), rat_i(-2)]);
        assert_eq!(f, p(&[-2, 1, 1]));
        assert_eq!(f.derivative(), p(&[1, 2]));
    }

    #[test]
    fn gcd_detects_common_factor() {
        let f = p(&[-1, 1]).mul(&p(&[2, 1]));
        let g = p(&[-1, 1]).mul(&p(&[5, 1]));
        assert_eq!(f.gcd(&g), p(&[-1, 1]).monic());
    }
}
