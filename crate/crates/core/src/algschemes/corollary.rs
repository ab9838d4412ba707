use num_traits::{One, Zero};

use super::{AlgError, AlgebraPoint, BilinearMap, Splitting};
use crate::exactla::is_zero_vec;
use crate::polyring::{int, MultiPoly, Scalar};

/// Both sides of `d·(d(d+1)/2 − r) = d(d+1)(d+2)/6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimIdentity {
    pub lhs: i128,
    pub rhs: i128,
    pub equal: bool,
}

pub fn dim_identity_check(d: u64, r: u64) -> DimIdentity {
    let (d, r) = (i128::from(d), i128::from(r));
    let lhs = d * (d * (d + 1) / 2 - r);
    let rhs = d * (d + 1) * (d + 2) / 6;
    DimIdentity { lhs, rhs, equal: lhs == rhs }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    /// For each pair `(u, v)`: `f11(f11(u,u), v) − f11(u, f11(u,v))` as a vector of
    /// polynomials in the values `f(e₁), …, f(e_d)`.
    pub equations: Vec<(usize, usize, Vec<MultiPoly>)>,
    /// `forced[a]` when `f(e_a) = 0` follows from the equations.
    pub forced: Vec<bool>,
    pub forces_zero: bool,
}

impl CorollaryReport {
    /// Whether `f = 0` satisfies every equation.
    pub fn zero_is_admissible(&self) -> bool {
        let origin = vec![Scalar::zero(); self.forced.len()];
        self.equations.iter().all(|(_, _, e)| e.iter().all(|p| p.eval(&origin).is_ok_and(|v| v.is_zero())))
    }
}

/// Symbolic `f11(x, y) = f(x)·y + f(y)·x` on pairs of basis vectors in `ker μ`.
struct SymbolicF11<'a> {
    d: usize,
    mu: &'a BilinearMap,
}

impl SymbolicF11<'_> {
    fn f(&self, a: usize) -> MultiPoly {
        MultiPoly::var(self.d, a)
    }

    fn on_basis(&self, a: usize, b: usize) -> Result<Vec<MultiPoly>, AlgError> {
        if !is_zero_vec(self.mu.on_basis(a, b)) {
            return Err(AlgError::Precondition(format!(
                "f11(e{}, e{}) is needed but e{}·e{} is not in ker μ",
                a + 1,
                b + 1,
                a + 1,
                b + 1
            )));
        }
        let mut out = vec![MultiPoly::zero(self.d); self.d];
        out[b] = &out[b] + &self.f(a);
        out[a] = &out[a] + &self.f(b);
        Ok(out)
    }

    fn apply(&self, x: &[MultiPoly], y: &[MultiPoly]) -> Result<Vec<MultiPoly>, AlgError> {
        let mut out = vec![MultiPoly::zero(self.d); self.d];
        for (a, xa) in x.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let w = xa * yb;
                for (o, t) in out.iter_mut().zip(self.on_basis(a, b)?) {
                    *o = &*o + &(&w * &t);
                }
            }
        }
        Ok(out)
    }

    fn basis(&self, a: usize) -> Vec<MultiPoly> {
        (0..self.d)
            .map(|i| if i == a { MultiPoly::constant(self.d, Scalar::one()) } else { MultiPoly::zero(self.d) })
            .collect()
    }
}

/// Checks that the obstruction equation at `x = y = u`, `z = v` forces `f = 0`
/// when `f11` has the form `f(x)·y + f(y)·x` on `ker μ`.
///
/// `pairing` lists `(u, v)` by 0-based index into the adapted basis of `N₁`.
pub fn corollary_check(
    alg: &AlgebraPoint,
    split: &Splitting,
    pairing: &[(usize, usize)],
) -> Result<CorollaryReport, AlgError> {
    split.validate(alg)?;
    if !alg.is_nilpotent3() {
        return Err(AlgError::NotNilpotent3);
    }
    let (d, r) = (split.d(), split.r());
    if d % 4 != 0 {
        return Err(AlgError::Precondition(format!("d = {d} is not divisible by 4")));
    }
    if 16 * r + 8 * d != 5 * d * d {
        return Err(AlgError::Precondition(format!("r = {r} differs from (5d² − 8d)/16 for d = {d}")));
    }
    let mu = split.mu(alg);
    let mut covered = vec![false; d];
    for &(u, v) in pairing {
        if u >= d || v >= d {
            return Err(AlgError::Precondition(format!("pair ({}, {}) is out of range 1..={d}", u + 1, v + 1)));
        }
        if u == v {
            return Err(AlgError::Precondition(format!("generator {} is paired with itself", u + 1)));
        }
        if !is_zero_vec(mu.on_basis(u, u)) {
            return Err(AlgError::Precondition(format!("square of generator {} is nonzero", u + 1)));
        }
        if !is_zero_vec(mu.on_basis(u, v)) {
            return Err(AlgError::Precondition(format!("product of generators {} and {} is nonzero", u + 1, v + 1)));
        }
        covered[u] = true;
    }
    if let Some(u) = covered.iter().position(|c| !c) {
        return Err(AlgError::Precondition(format!("generator {} has no partner", u + 1)));
    }

    let sym = SymbolicF11 { d, mu: &mu };
    let mut equations = Vec::with_capacity(pairing.len());
    for &(u, v) in pairing {
        let (eu, ev) = (sym.basis(u), sym.basis(v));
        let left = sym.apply(&sym.apply(&eu, &eu)?, &ev)?;
        let right = sym.apply(&eu, &sym.apply(&eu, &ev)?)?;
        let diff: Vec<MultiPoly> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
        equations.push((u, v, diff));
    }

    let mut forced = vec![false; d];
    let mut current: Vec<MultiPoly> = equations.iter().flat_map(|(_, _, e)| e.iter().cloned()).collect();
    loop {
        let newly: Vec<usize> = current.iter().filter_map(pure_power_variable).filter(|&a| !forced[a]).collect();
        if newly.is_empty() {
            break;
        }
        let mut images: Vec<MultiPoly> = (0..d).map(|a| MultiPoly::var(d, a)).collect();
        for a in newly {
            forced[a] = true;
            images[a] = MultiPoly::zero(d);
        }
        current = current.iter().map(|p| p.substitute(&images)).collect::<Result<_, _>>()?;
    }
    let forces_zero = forced.iter().all(|&f| f);
    Ok(CorollaryReport { equations, forced, forces_zero })
}

/// `Some(i)` when `p = c·x_i^k` with `c ≠ 0`, `k ≥ 1`.
fn pure_power_variable(p: &MultiPoly) -> Option<usize> {
    if p.num_terms() != 1 {
        return None;
    }
    let (m, _) = p.terms().next()?;
    let nonzero: Vec<usize> = m.exponents().iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect();
    (nonzero.len() == 1).then(|| nonzero[0])
}

/// The substitution `x = y = u`, `z = v` carried out on formal symbols.
///
/// Polynomials are in `(f(u), f(v), u, v)`. `terms` are the three summands
/// `2f(u)(f(u)v + f(v)u)`, `−f(u)(f(u)v + f(v)u)`, `−f(v)(2f(u)u)` as derived
/// from `f11(x, y) = f(x)y + f(y)x`; `written` are the same summands entered
/// literally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionIdentity {
    pub terms: [MultiPoly; 3],
    pub written: [MultiPoly; 3],
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub holds: bool,
}

impl SubstitutionIdentity {
    pub const NAMES: [&'static str; 4] = ["f(u)", "f(v)", "u", "v"];

    pub fn format(p: &MultiPoly) -> String {
        p.format_with(|i| Self::NAMES[i].to_string())
    }
}

pub fn substitution_identity() -> SubstitutionIdentity {
    let var = |i| MultiPoly::var(4, i);
    let (fu, fv, u, v) = (var(0), var(1), var(2), var(3));
    let two = MultiPoly::constant(4, int(2));
    // vectors in span{u, v} with coefficients in (f(u), f(v)), applied to f11
    let f11 = |x: (&MultiPoly, &MultiPoly), y: (&MultiPoly, &MultiPoly)| -> (MultiPoly, MultiPoly) {
        // f11(u,u) = 2f(u)u, f11(u,v) = f(u)v + f(v)u, f11(v,v) = 2f(v)v
        let uu = x.0 * y.0;
        let uv = &(x.0 * y.1) + &(x.1 * y.0);
        let vv = x.1 * y.1;
        let cu = &(&(&two * &fu) * &uu) + &(&fv * &uv);
        let cv = &(&fu * &uv) + &(&(&two * &fv) * &vv);
        (cu, cv)
    };
    let one = MultiPoly::constant(4, Scalar::one());
    let zero = MultiPoly::zero(4);
    let eu = (&one, &zero);
    let ev = (&zero, &one);
    let to_poly = |c: &(MultiPoly, MultiPoly)| &(&c.0 * &u) + &(&c.1 * &v);

    let uu = f11(eu, eu);
    let uv = f11(eu, ev);
    let first = f11((&uu.0, &uu.1), ev);
    // f11(u, f(u)v + f(v)u) = f(u)·f11(u,v) + f(v)·f11(u,u)
    let second = (&fu * &uv.0, &fu * &uv.1);
    let third = (&fv * &uu.0, &fv * &uu.1);
    let terms = [to_poly(&first), -&to_poly(&second), -&to_poly(&third)];

    let s = &(&fu * &v) + &(&fv * &u);
    let written = [&(&two * &fu) * &s, -&(&fu * &s), -&(&fv * &(&(&two * &fu) * &u))];
    let lhs = terms.iter().fold(MultiPoly::zero(4), |acc, t| &acc + t);
    let rhs = &(&(&fu * &fu) * &v) - &(&(&fu * &fv) * &u);
    let holds = terms == written && lhs == rhs && !lhs.is_zero();
    SubstitutionIdentity { terms, written, lhs, rhs, holds }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ints;

    #[test]
    fn dimension_identity_examples() {
        assert_eq!(dim_identity_check(4, 5), DimIdentity { lhs: 20, rhs: 20, equal: true });
        assert_eq!(dim_identity_check(5, 8), DimIdentity { lhs: 35, rhs: 35, equal: true });
        assert_eq!(dim_identity_check(4, 3), DimIdentity { lhs: 28, rhs: 20, equal: false });
    }

    /// `d = 4`, `r = 3`: `u1u3 = w1`, `u1u4 = w2`, `u2u3 = w3`, `u2u4 = w1 + w2 + w3`.
    pub(crate) fn corollary_table() -> AlgebraPoint {
        let w = |v: [i64; 3]| ints(&[0, 0, 0, 0, v[0], v[1], v[2]]);
        AlgebraPoint::from_products(7, &[
            (0, 2, w([1, 0, 0])),
            (0, 3, w([0, 1, 0])),
            (1, 2, w([0, 0, 1])),
            (1, 3, w([1, 1, 1])),
        ])
        .unwrap()
    }

    #[test]
    fn corollary_on_sample_table() {
        let a = corollary_table();
        let s = Splitting::new(&a).unwrap();
        assert_eq!((s.d(), s.r()), (4, 3));
        let pairing = [(0, 1), (1, 0), (2, 3), (3, 2)];
        let rep = corollary_check(&a, &s, &pairing).unwrap();
        assert!(rep.forces_zero);
        assert!(rep.zero_is_admissible());
        // the v-component of the first equation is f(u)²
        let (u, v, eq) = &rep.equations[0];
        assert_eq!(eq[*v], &MultiPoly::var(4, *u) * &MultiPoly::var(4, *u));
        assert!(corollary_check(&a, &s, &[(0, 2)]).is_err());
        assert!(corollary_check(&a, &s, &[(0, 1), (1, 0), (2, 3)]).is_err());
    }

    #[test]
    fn substitution_reproduced() {
        let id = substitution_identity();
        assert!(id.holds);
        assert_eq!(SubstitutionIdentity::format(&id.rhs), "f(u)^2*v - f(u)*f(v)*u");
    }
}
