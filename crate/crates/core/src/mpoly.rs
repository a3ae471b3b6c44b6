//! Sparse multivariate polynomials over the rationals with lexicographic
//! term order. Used for the symbolic Wronski chart and for elimination.

use crate::scalar::{rat_i, Rat, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exponent vector; the derived order is lexicographic with variable 0
/// strongest, which is exactly the lex term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub Vec<u8>);

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

impl Mono {
    pub fn unit(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div_into(&self, other: &Mono) -> Mono {
        Mono(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Terms sorted descending in the lex order; no zero coefficients.
#[derive(Clone, PartialEq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: Vec<(Mono, Rat)>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*{:?}", c, m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        if Zero::is_zero(&c) {
            return MPoly::zero(nvars);
        }
        MPoly {
            nvars,
            terms: vec![(Mono::unit(nvars), c)],
        }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: vec![(Mono::var(i, nvars), rat_i(1))],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, Rat)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    fn normalize(mut terms: Vec<(Mono, Rat)>, nvars: usize) -> MPoly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !Zero::is_zero(c));
        MPoly { nvars, terms: out }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MPoly::normalize(terms, self.nvars)
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(m, c)| (m.clone(), -c.clone())));
        MPoly::normalize(terms, self.nvars)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if Zero::is_zero(c) {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, mono: &Mono, c: &Rat) -> MPoly {
        if Zero::is_zero(c) {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m.mul(m2), c * c2));
            }
        }
        MPoly::normalize(terms, self.nvars)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                (Mono(e), c * Rat::from_integer(BigInt::from(k)))
            })
            .collect();
        MPoly::normalize(terms, self.nvars)
    }

    /// Evaluate at a point of any scalar kind.
    pub fn eval<T: Scalar>(&self, point: &[T]) -> T {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut term = T::from_rat(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term * point[i].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Divide by the integer content (and clear denominators), keeping the
    /// leading coefficient positive.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints[0].is_negative() {
            content = -content;
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), v)| (m.clone(), Rat::from_integer(v / &content)))
                .collect(),
        }
    }

    /// Monic in the lex leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = rat_i(1) / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// View as a univariate polynomial in the given variable; fails if any
    /// other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<crate::poly::UniPoly<Rat>> {
        let mut coeffs = vec![rat_i(0); self.terms.first().map_or(1, |(m, _)| m.0[var] as usize + 1)];
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if i != var && e > 0 {
                    return None;
                }
            }
            let k = m.0[var] as usize;
            if k >= coeffs.len() {
                coeffs.resize(k + 1, rat_i(0));
            }
            coeffs[k] = c.clone();
        }
        Some(crate::poly::UniPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    #[test]
    fn lex_order_and_arithmetic() {
        let x = MPoly::var(0, 2);
        let y = MPoly::var(1, 2);
        let p = x.mul(&x).add(&y.scale(&rat_i(3)));
        assert_eq!(p.leading().unwrap().0, Mono(vec![2, 0]));
        let q = p.sub(&p);
        assert!(q.is_zero());
        let r = x.add(&y).mul(&x.sub(&y));
        // x^2 - y^2
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.eval(&[rat_i(3), rat_i(2)]), rat_i(5));
    }

    #[test]
    fn derivative_and_eval() {
        let x = MPoly::var(0, 2);
        let y = MPoly::var(1, 2);
        // p = x^2 y + 2y
        let p = x.mul(&x).mul(&y).add(&y.scale(&rat_i(2)));
        let px = p.derivative(0);
        assert_eq!(px.eval(&[rat_i(3), rat_i(5)]), rat_i(30));
        let py = p.derivative(1);
        assert_eq!(py.eval(&[rat_i(3), rat_i(5)]), rat_i(11));
    }

    #[test]
    fn primitive_scaling() {
        let x = MPoly::var(0, 1);
        // -2/3 x + 2/9 scales to 3x - 1 (integer, content-free, positive lead).
        let p = x.scale(&rat(-4, 6)).add(&MPoly::constant(1, rat(2, 9)));
        let q = p.primitive();
        assert_eq!(q.terms[0].1, rat_i(3));
        assert_eq!(q.terms[1].1, rat_i(-1));
    }

    #[test]
    fn univariate_view() {
        let y = MPoly::var(1, 2);
        let p = y.mul(&y).add(&MPoly::constant(2, rat_i(-1)));
        let u = p.to_univariate(1).unwrap();
        assert_eq!(u.degree(), Some(2));
        let x = MPoly::var(0, 2);
        assert!(x.add(&y).to_univariate(1).is_none());
    }
}
