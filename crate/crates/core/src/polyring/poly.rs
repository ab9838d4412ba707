use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{PolyError, Scalar};

/// Exponent vector of a monomial; its length is the ambient variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The coordinate function `x_{idx+1}`.
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index {idx} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, idx), Scalar::one());
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; like terms are merged.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Scalar, Vec<u32>)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Linear form `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree among the terms, `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::constant(self.nvars, Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: point.len() });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ images[i]`; all images must share one variable count.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: images.len() });
        }
        let target = match images.first() {
            Some(g) => g.nvars,
            None => return Ok(MultiPoly::constant(0, self.constant_term())),
        };
        for g in images {
            if g.nvars != target {
                return Err(PolyError::NvarsMismatch { left: target, right: g.nvars });
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|g| vec![MultiPoly::constant(target, Scalar::one()), g.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Returns `g` with `g(x) = f(x + p)`.
    pub fn translate(&self, p: &[Scalar]) -> Result<MultiPoly, PolyError> {
        if p.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: p.len() });
        }
        let n = self.nvars;
        let shifted: Vec<MultiPoly> = (0..n)
            .map(|i| &MultiPoly::var(n, i) + &MultiPoly::constant(n, p[i].clone()))
            .collect();
        self.substitute(&shifted)
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of the degree-1 part, indexed by variable.
    pub fn linear_coeffs(&self) -> Vec<Scalar> {
        (0..self.nvars).map(|i| self.coeff(&Monomial::var(self.nvars, i))).collect()
    }

    pub fn partial_derivative(&self, idx: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, c * Scalar::from_integer(e.into()));
        }
        out
    }

    /// Gradient evaluated at `point`.
    pub fn gradient_at(&self, point: &[Scalar]) -> Result<Vec<Scalar>, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength { expected: self.nvars, got: point.len() });
        }
        let mut grad = vec![Scalar::zero(); self.nvars];
        for (m, c) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut t = c * Scalar::from_integer(e.into());
                for (j, (x, &ej)) in point.iter().zip(m.exponents()).enumerate() {
                    let ej = if j == i { ej - 1 } else { ej };
                    if ej > 0 {
                        t *= num_traits::pow(x.clone(), ej as usize);
                    }
                }
                grad[i] += t;
            }
        }
        Ok(grad)
    }

    /// Writes the polynomial using `name(i)` for variable `i`.
    pub fn format_with<F>(&self, name: F) -> String
    where
        F: Fn(usize) -> String,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // graded, highest degree first
        let mut ordered: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (k, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(|i| format!("x{}", i + 1)))
    }
}

// Operator forms panic on a variable-count mismatch; use the `try_*` methods
// when the operands come from untrusted input.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("MultiPoly addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("MultiPoly subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("MultiPoly multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, ints};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn cusp() -> MultiPoly {
        &x(2, 0).pow(2) - &x(2, 1).pow(3)
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        assert_eq!(&a * &b, &x(2, 0).pow(2) - &x(2, 1).pow(2));
    }

    #[test]
    fn zero_identity_and_cancellation() {
        let f = cusp();
        assert_eq!(&f + &MultiPoly::zero(2), f);
        assert_eq!(&f + &x(2, 1).pow(3), x(2, 0).pow(2));
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        let err = x(2, 0).try_add(&x(3, 0)).unwrap_err();
        assert_eq!(err, PolyError::NvarsMismatch { left: 2, right: 3 });
        assert!(x(2, 0).try_mul(&x(1, 0)).is_err());
    }

    #[test]
    fn evaluation() {
        let f = cusp();
        assert_eq!(f.eval(&ints(&[2, 1])).unwrap(), int(3));
        assert_eq!(f.eval(&ints(&[0, 0])).unwrap(), int(0));
        assert_eq!(f.eval(&ints(&[1, 1])).unwrap(), int(0));
        assert!(f.eval(&ints(&[1])).is_err());
    }

    #[test]
    fn translation_expands_binomials() {
        // (x1+1)^2 - (x2+1)^3 = x1^2 + 2x1 - x2^3 - 3x2^2 - 3x2
        let expected = MultiPoly::from_terms(
            2,
            vec![
                (int(1), vec![2, 0]),
                (int(2), vec![1, 0]),
                (int(-1), vec![0, 3]),
                (int(-3), vec![0, 2]),
                (int(-3), vec![0, 1]),
            ],
        );
        assert_eq!(cusp().translate(&ints(&[1, 1])).unwrap(), expected);
        assert_eq!(cusp().translate(&ints(&[0, 0])).unwrap(), cusp());
        let a = crate::polyring::frac(-7, 3);
        let shifted = x(1, 0).translate(std::slice::from_ref(&a)).unwrap();
        assert_eq!(shifted, &x(1, 0) + &MultiPoly::constant(1, a));
    }

    #[test]
    fn homogeneous_parts() {
        assert_eq!(cusp().homogeneous_component(2), x(2, 0).pow(2));
        assert!(cusp().homogeneous_component(1).is_zero());
        let parabola = &x(2, 1) - &x(2, 0).pow(2);
        assert_eq!(parabola.homogeneous_component(1), x(2, 1));
        assert_eq!(parabola.linear_coeffs(), ints(&[0, 1]));
    }

    #[test]
    fn gradient_matches_partials() {
        let f = &(&x(3, 0).pow(2) * &x(3, 2)) - &x(3, 1).pow(3);
        let p = ints(&[2, -1, 3]);
        let grad = f.gradient_at(&p).unwrap();
        let via_partials: Vec<Scalar> =
            (0..3).map(|i| f.partial_derivative(i).eval(&p).unwrap()).collect();
        assert_eq!(grad, via_partials);
        assert_eq!(grad, ints(&[12, -3, 4]));
    }

    #[test]
    fn display_is_stable() {
        let f = MultiPoly::from_terms(
            3,
            vec![
                (crate::polyring::frac(3, 2), vec![2, 1, 0]),
                (int(-1), vec![0, 0, 1]),
                (int(1), vec![0, 0, 0]),
            ],
        );
        assert_eq!(f.to_string(), "3/2*x1^2*x2 - x3 + 1");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!((-&x(2, 1)).to_string(), "-x2");
    }
}
