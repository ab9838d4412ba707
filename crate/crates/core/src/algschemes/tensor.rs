use num_traits::Zero;

use crate::exactla::ExactMatrix;
use crate::polyring::Scalar;

/// A bilinear map `Q^left × Q^right → Q^out` stored by its values on basis pairs.
///
/// `data[(a·right + b)·out + c]` is the `c`-th coordinate of `m(e_a, e_b)`. For a
/// square map this layout coincides with the structure-constant coordinates
/// `c_ab^c` used by the scheme ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    left: usize,
    right: usize,
    out: usize,
    data: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        BilinearMap { left, right, out, data: vec![Scalar::zero(); left * right * out] }
    }

    pub fn square(n: usize) -> Self {
        Self::zero(n, n, n)
    }

    pub fn from_vec(left: usize, right: usize, out: usize, data: Vec<Scalar>) -> Option<Self> {
        (data.len() == left * right * out).then_some(BilinearMap { left, right, out, data })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn out(&self) -> usize {
        self.out
    }

    pub fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.right + b) * self.out + c
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.data[self.index(a, b, c)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: Scalar) {
        let i = self.index(a, b, c);
        self.data[i] = v;
    }

    /// Sets `m(e_a, e_b) = m(e_b, e_a) = v`.
    pub fn set_sym(&mut self, a: usize, b: usize, v: &[Scalar]) {
        for (c, x) in v.iter().enumerate() {
            self.set(a, b, c, x.clone());
            self.set(b, a, c, x.clone());
        }
    }

    /// `m(e_a, e_b)` as a vector.
    pub fn on_basis(&self, a: usize, b: usize) -> &[Scalar] {
        let start = self.index(a, b, 0);
        &self.data[start..start + self.out]
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.out];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xa * yb;
                for (o, m) in out.iter_mut().zip(self.on_basis(a, b)) {
                    if !m.is_zero() {
                        *o += &w * m;
                    }
                }
            }
        }
        out
    }

    /// `m(e_a, y)`.
    pub fn apply_left_basis(&self, a: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.out];
        for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (o, m) in out.iter_mut().zip(self.on_basis(a, b)) {
                if !m.is_zero() {
                    *o += yb * m;
                }
            }
        }
        out
    }

    /// `m(x, e_b)`.
    pub fn apply_right_basis(&self, x: &[Scalar], b: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.out];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (o, m) in out.iter_mut().zip(self.on_basis(a, b)) {
                if !m.is_zero() {
                    *o += xa * m;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
            && (0..self.left).all(|a| (0..a).all(|b| self.on_basis(a, b) == self.on_basis(b, a)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Scalar> {
        self.data
    }

    pub fn add(&self, other: &BilinearMap) -> BilinearMap {
        assert_eq!((self.left, self.right, self.out), (other.left, other.right, other.out));
        BilinearMap {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> BilinearMap {
        BilinearMap { data: self.data.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    /// The same map written in the basis given by the columns of `p`:
    /// `m'(e_a, e_b) = p⁻¹·m(p·e_a, p·e_b)`. Only for square maps.
    pub fn change_basis(&self, p: &ExactMatrix, p_inv: &ExactMatrix) -> BilinearMap {
        let n = self.left;
        assert!(self.right == n && self.out == n && p.rows() == n && p.cols() == n);
        let cols: Vec<Vec<Scalar>> = (0..n).map(|a| p.column(a)).collect();
        let mut out = BilinearMap::square(n);
        for a in 0..n {
            for b in 0..n {
                let v = self.apply(&cols[a], &cols[b]);
                let w = p_inv.mul_vec(&v).expect("square matrices");
                for (c, x) in w.into_iter().enumerate() {
                    out.set(a, b, c, x);
                }
            }
        }
        out
    }
}

/// Index of the unordered pair `{a, b}` among `d(d+1)/2` pairs, `a ≤ b` ordered lexicographically.
pub fn pair_index(d: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    // rows before `a` hold d, d-1, …, d-a+1 pairs
    a * d - a * a.saturating_sub(1) / 2 + (b - a)
}

/// All unordered pairs `(a, b)` with `a ≤ b < d`, in `pair_index` order.
pub fn pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|a| (a..d).map(move |b| (a, b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ints;

    #[test]
    fn pair_index_matches_enumeration() {
        for d in 0..7 {
            for (k, (a, b)) in pairs(d).into_iter().enumerate() {
                assert_eq!(pair_index(d, a, b), k);
                assert_eq!(pair_index(d, b, a), k);
            }
        }
    }

    #[test]
    fn apply_is_bilinear() {
        let mut m = BilinearMap::square(2);
        m.set_sym(0, 1, &ints(&[1, 2]));
        m.set(0, 0, 1, crate::polyring::int(3));
        assert!(m.is_symmetric());
        let x = ints(&[1, 2]);
        let y = ints(&[-1, 1]);
        // m(x,y) = x0 y0 m00 + (x0 y1 + x1 y0) m01 = (0,-3) - (1,2)
        assert_eq!(m.apply(&x, &y), ints(&[-1, -5]));
        assert_eq!(m.apply_left_basis(0, &y), m.apply(&ints(&[1, 0]), &y));
        assert_eq!(m.apply_right_basis(&x, 1), m.apply(&x, &ints(&[0, 1])));
    }
}
