use std::fmt;

use num_traits::{One, Zero};

use super::{MultiPoly, PolyError, Scalar};

/// Truncation degree used when the caller does not pick one.
pub const DEFAULT_TRUNC: usize = 8;

/// Order of vanishing of a jet at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Exact(usize),
    /// Every coefficient through degree `trunc` vanishes.
    AboveTruncation { trunc: usize },
}

impl OrderResult {
    /// Whether the order is provably at least `k`.
    pub fn at_least(&self, k: usize) -> bool {
        match *self {
            OrderResult::Exact(m) => m >= k,
            OrderResult::AboveTruncation { trunc } => k <= trunc + 1,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            OrderResult::Exact(m) => Some(m),
            OrderResult::AboveTruncation { .. } => None,
        }
    }

    /// Smaller of two orders; an exact value always beats "above truncation".
    pub fn min(self, other: OrderResult) -> OrderResult {
        match (self, other) {
            (OrderResult::Exact(a), OrderResult::Exact(b)) => OrderResult::Exact(a.min(b)),
            (OrderResult::Exact(a), _) | (_, OrderResult::Exact(a)) => OrderResult::Exact(a),
            (OrderResult::AboveTruncation { trunc: a }, OrderResult::AboveTruncation { trunc: b }) => {
                OrderResult::AboveTruncation { trunc: a.min(b) }
            }
        }
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Exact(m) => write!(f, "{m}"),
            OrderResult::AboveTruncation { trunc } => write!(f, "≥ {} (above truncation)", trunc + 1),
        }
    }
}

/// Power series in `t` truncated after degree `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    trunc: usize,
    coeffs: Vec<Scalar>,
}

impl Jet {
    pub fn zero(trunc: usize) -> Self {
        Jet { trunc, coeffs: vec![Scalar::zero(); trunc + 1] }
    }

    pub fn constant(trunc: usize, c: Scalar) -> Self {
        let mut j = Self::zero(trunc);
        j.coeffs[0] = c;
        j
    }

    /// The series `t`.
    pub fn t(trunc: usize) -> Self {
        let mut j = Self::zero(trunc);
        if trunc >= 1 {
            j.coeffs[1] = Scalar::one();
        }
        j
    }

    /// Takes coefficients of `1, t, t², …`; missing ones are zero, those past `trunc` dropped.
    pub fn from_coeffs(trunc: usize, coeffs: Vec<Scalar>) -> Self {
        let mut j = Self::zero(trunc);
        for (i, c) in coeffs.into_iter().enumerate().take(trunc + 1) {
            j.coeffs[i] = c;
        }
        j
    }

    /// Interprets a one-variable polynomial as a jet.
    pub fn from_poly(trunc: usize, p: &MultiPoly) -> Result<Self, PolyError> {
        if p.nvars() != 1 {
            return Err(PolyError::NvarsMismatch { left: 1, right: p.nvars() });
        }
        let mut j = Self::zero(trunc);
        for (m, c) in p.terms() {
            let e = m.exponents()[0] as usize;
            if e <= trunc {
                j.coeffs[e] += c;
            }
        }
        Ok(j)
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            1,
            self.coeffs.iter().enumerate().map(|(i, c)| (c.clone(), vec![i as u32])),
        )
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-truncates (or zero-extends) to a new degree bound.
    pub fn with_trunc(&self, trunc: usize) -> Jet {
        Jet::from_coeffs(trunc, self.coeffs.clone())
    }

    fn check(&self, other: &Jet) -> Result<(), PolyError> {
        if self.trunc != other.trunc {
            return Err(PolyError::TruncMismatch { left: self.trunc, right: other.trunc });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet, PolyError> {
        self.check(other)?;
        Ok(Jet {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Jet) -> Result<Jet, PolyError> {
        self.check(other)?;
        let mut out = Jet::zero(self.trunc);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.trunc + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Jet {
        Jet { trunc: self.trunc, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Jet) -> Result<Jet, PolyError> {
        self.check(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(PolyError::NonzeroConstant);
        }
        // Horner from the top coefficient down
        let mut acc = Jet::zero(self.trunc);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> OrderResult {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(m) => OrderResult::Exact(m),
            None => OrderResult::AboveTruncation { trunc: self.trunc },
        }
    }
}

/// Parameterized curve germ `t ↦ (G₁(t), …, Gₙ(t))` with a common truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGerm {
    components: Vec<Jet>,
}

impl CurveGerm {
    pub fn new(components: Vec<Jet>) -> Result<Self, PolyError> {
        let first = components.first().ok_or(PolyError::EmptyGerm)?;
        for c in &components {
            first.check(c)?;
        }
        Ok(CurveGerm { components })
    }

    /// `p + t·v₁ + t²·v₂ + …` from coefficient vectors `[p, v₁, v₂, …]`.
    pub fn from_taylor(trunc: usize, vectors: &[Vec<Scalar>]) -> Result<Self, PolyError> {
        let n = vectors.first().map(Vec::len).ok_or(PolyError::EmptyGerm)?;
        for v in vectors {
            if v.len() != n {
                return Err(PolyError::PointLength { expected: n, got: v.len() });
            }
        }
        let components = (0..n)
            .map(|i| Jet::from_coeffs(trunc, vectors.iter().map(|v| v[i].clone()).collect()))
            .collect();
        CurveGerm::new(components)
    }

    /// A straight line `p + t·v`.
    pub fn line(trunc: usize, p: &[Scalar], v: &[Scalar]) -> Result<Self, PolyError> {
        Self::from_taylor(trunc, &[p.to_vec(), v.to_vec()])
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn trunc(&self) -> usize {
        self.components[0].trunc
    }

    pub fn components(&self) -> &[Jet] {
        &self.components
    }

    /// `G(0)`.
    pub fn base_point(&self) -> Vec<Scalar> {
        self.coefficient_vector(0)
    }

    /// Coefficient vector of `t^k`, zero beyond the truncation.
    pub fn coefficient_vector(&self, k: usize) -> Vec<Scalar> {
        self.components
            .iter()
            .map(|j| if k <= j.trunc { j.coeffs[k].clone() } else { Scalar::zero() })
            .collect()
    }

    /// The tangent vector `G'(0)`.
    pub fn velocity(&self) -> Vec<Scalar> {
        self.coefficient_vector(1)
    }

    pub fn is_smooth(&self) -> bool {
        self.velocity().iter().any(|c| !c.is_zero())
    }

    pub fn with_trunc(&self, trunc: usize) -> CurveGerm {
        CurveGerm { components: self.components.iter().map(|j| j.with_trunc(trunc)).collect() }
    }

    /// Substitutes `t ↦ t·u(t)` in every component; requires `u(0) ≠ 0` for smoothness to survive.
    pub fn reparameterize(&self, unit: &Jet) -> Result<CurveGerm, PolyError> {
        let inner = Jet::t(self.trunc()).try_mul(unit)?;
        let components =
            self.components.iter().map(|j| j.compose(&inner)).collect::<Result<Vec<_>, _>>()?;
        Ok(CurveGerm { components })
    }

    /// The series `f(G(t))`, exact through degree `trunc`.
    pub fn compose(&self, f: &MultiPoly) -> Result<Jet, PolyError> {
        if f.nvars() != self.nvars() {
            return Err(PolyError::NvarsMismatch { left: f.nvars(), right: self.nvars() });
        }
        let trunc = self.trunc();
        let mut powers: Vec<Vec<Jet>> = self
            .components
            .iter()
            .map(|j| vec![Jet::constant(trunc, Scalar::one()), j.clone()])
            .collect();
        let mut out = Jet::zero(trunc);
        for (m, c) in f.terms() {
            let mut term = Jet::constant(trunc, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache[cache.len() - 1].try_mul(&cache[1])?;
                    cache.push(next);
                }
                term = term.try_mul(&cache[e as usize])?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, ints};

    fn cusp() -> MultiPoly {
        &MultiPoly::var(2, 0).pow(2) - &MultiPoly::var(2, 1).pow(3)
    }

    #[test]
    fn cusp_along_vertical_axis() {
        let g = CurveGerm::line(5, &ints(&[0, 0]), &ints(&[0, 1])).unwrap();
        let h = g.compose(&cusp()).unwrap();
        assert_eq!(h, Jet::from_coeffs(5, ints(&[0, 0, 0, -1])));
        assert_eq!(h.order(), OrderResult::Exact(3));
    }

    #[test]
    fn parabola_contains_its_parameterization() {
        let f = &MultiPoly::var(2, 1) - &MultiPoly::var(2, 0).pow(2);
        let g = CurveGerm::from_taylor(6, &[ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1])]).unwrap();
        let h = g.compose(&f).unwrap();
        assert!(h.is_zero());
        assert_eq!(h.order(), OrderResult::AboveTruncation { trunc: 6 });
    }

    #[test]
    fn projection_returns_component() {
        let g = CurveGerm::from_taylor(4, &[ints(&[0, 0]), ints(&[1, 0]), ints(&[1, 0])]).unwrap();
        let h = g.compose(&MultiPoly::var(2, 0)).unwrap();
        assert_eq!(h, Jet::from_coeffs(4, ints(&[0, 1, 1])));
    }

    #[test]
    fn order_examples() {
        assert_eq!(Jet::from_coeffs(5, ints(&[0, 0, 0, -1])).order(), OrderResult::Exact(3));
        assert_eq!(Jet::zero(5).order(), OrderResult::AboveTruncation { trunc: 5 });
        assert_eq!(Jet::from_coeffs(5, ints(&[2, 1])).order(), OrderResult::Exact(0));
    }

    #[test]
    fn order_result_semantics() {
        let above = OrderResult::AboveTruncation { trunc: 8 };
        assert!(above.at_least(9));
        assert!(!above.at_least(10));
        assert_eq!(above.min(OrderResult::Exact(4)), OrderResult::Exact(4));
        assert_eq!(above.to_string(), "≥ 9 (above truncation)");
    }

    #[test]
    fn composition_of_series() {
        // (1 + s)^2 with s = t + t^2, truncated at 3: 1 + 2t + 3t^2 + 2t^3
        let outer = Jet::from_coeffs(3, ints(&[1, 2, 1]));
        let inner = Jet::from_coeffs(3, ints(&[0, 1, 1]));
        assert_eq!(outer.compose(&inner).unwrap(), Jet::from_coeffs(3, ints(&[1, 2, 3, 2])));
        assert_eq!(outer.compose(&outer), Err(PolyError::NonzeroConstant));
    }

    #[test]
    fn trunc_mismatch_rejected() {
        assert!(Jet::zero(3).try_add(&Jet::zero(4)).is_err());
        assert!(CurveGerm::new(vec![Jet::zero(3), Jet::zero(2)]).is_err());
        assert!(CurveGerm::new(vec![]).is_err());
    }

    #[test]
    fn smoothness_flag() {
        let g = CurveGerm::from_taylor(4, &[ints(&[1, 1]), ints(&[0, 0]), ints(&[1, 0])]).unwrap();
        assert!(!g.is_smooth());
        assert_eq!(g.base_point(), ints(&[1, 1]));
        let line = CurveGerm::line(4, &ints(&[0, 0]), &[int(0), int(3)]).unwrap();
        assert!(line.is_smooth());
    }
}
