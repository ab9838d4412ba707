use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinAlgError, SubspaceBasis};
use crate::polyring::Scalar;

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form: `rows[i]` has a leading 1 in column `pivots[i]`.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Scalar>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One kernel vector per free column, with that column set to 1.
    pub fn kernel_vectors(&self, ncols: usize) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; ncols];
        for &p in &self.pivots {
            if p < ncols {
                is_pivot[p] = true;
            }
        }
        (0..ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); ncols];
                v[f] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if p < ncols {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Outcome of [`ExactMatrix::solve_affine`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    /// `particular` has every free variable set to zero.
    Solved { particular: Vec<Scalar>, kernel: SubspaceBasis },
    Inconsistent,
}

impl AffineSolution {
    pub fn particular(&self) -> Option<&[Scalar]> {
        match self {
            AffineSolution::Solved { particular, .. } => Some(particular),
            AffineSolution::Inconsistent => None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, AffineSolution::Solved { .. })
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Dimension { expected: rows * cols, got: data.len() });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::Dimension { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        Ok(ExactMatrix { rows: nrows, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Scalar>]) -> Result<Self, LinAlgError> {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != nrows {
                return Err(LinAlgError::Dimension { expected: nrows, got: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Dimension { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Dimension { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form via fraction-free elimination.
    pub fn echelon(&self) -> Echelon {
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        let (pivots, rows) = fraction_free_rref(rows, self.cols);
        let rows = rows
            .into_iter()
            .zip(&pivots)
            .map(|(r, &p)| {
                let lead = r[p].clone();
                r.into_iter().map(|x| Scalar::new(x, lead.clone())).collect()
            })
            .collect();
        Echelon { cols: self.cols, pivots, rows }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Exact rank together with a basis of `{x : Ax = 0}`.
    pub fn rank_kernel(&self) -> (usize, SubspaceBasis) {
        let ech = self.echelon();
        let kernel = SubspaceBasis::from_independent(self.cols, ech.kernel_vectors(self.cols));
        (ech.rank(), kernel)
    }

    pub fn kernel(&self) -> SubspaceBasis {
        self.rank_kernel().1
    }

    /// Solves `Ax = b`, returning the canonical particular solution plus the kernel.
    pub fn solve_affine(&self, b: &[Scalar]) -> Result<AffineSolution, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::Dimension { expected: self.rows, got: b.len() });
        }
        let aug: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                integer_row(&r)
            })
            .collect();
        let (pivots, rows) = fraction_free_rref(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(AffineSolution::Inconsistent);
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        let mut rational_rows = Vec::with_capacity(rows.len());
        for (r, &p) in rows.into_iter().zip(&pivots) {
            let lead = r[p].clone();
            particular[p] = Scalar::new(r[self.cols].clone(), lead.clone());
            rational_rows.push(r.into_iter().map(|x| Scalar::new(x, lead.clone())).collect());
        }
        let ech = Echelon { cols: self.cols + 1, pivots, rows: rational_rows };
        let kernel = SubspaceBasis::from_independent(self.cols, ech.kernel_vectors(self.cols));
        Ok(AffineSolution::Solved { particular, kernel })
    }

    pub fn inverse(&self) -> Result<ExactMatrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::Dimension { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            match self.solve_affine(&e)? {
                AffineSolution::Solved { particular, kernel } if kernel.dim() == 0 => {
                    for (i, x) in particular.into_iter().enumerate() {
                        inv.set(i, j, x);
                    }
                }
                _ => return Err(LinAlgError::Singular),
            }
        }
        Ok(inv)
    }
}

/// Clears denominators of a rational row, preserving its span.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// `target ← lead·target − factor·pivot_row`, followed by content removal.
fn eliminate(target: &mut [BigInt], pivot_row: &[BigInt], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    let lead = &pivot_row[col];
    let g = lead.gcd(&factor);
    let (lead, factor) = (lead / &g, factor / &g);
    for (t, p) in target.iter_mut().zip(pivot_row) {
        let scaled = if t.is_zero() { BigInt::zero() } else { &*t * &lead };
        *t = if p.is_zero() { scaled } else { scaled - &factor * p };
    }
    remove_content(target);
}

/// Integer reduced echelon form: returns pivot columns and the nonzero rows,
/// each with its pivot entry positive and all other pivot columns cleared.
fn fraction_free_rref(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<usize>, Vec<Vec<BigInt>>) {
    for r in rows.iter_mut() {
        remove_content(r);
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        // prefer the sparsest candidate, then the smallest pivot, to limit growth
        let candidate = (rank..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| (rows[i].iter().filter(|x| !x.is_zero()).count(), rows[i][c].bits()));
        let Some(p) = candidate else { continue };
        rows.swap(rank, p);
        if rows[rank][c].is_negative() {
            for x in rows[rank].iter_mut() {
                *x = -&*x;
            }
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for r in tail.iter_mut() {
            eliminate(r, pivot_row, c);
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    // back-substitution, still fraction-free
    for k in (0..rank).rev() {
        let c = pivots[k];
        let (head, tail) = rows.split_at_mut(k);
        let pivot_row = &tail[0];
        for r in head.iter_mut() {
            eliminate(r, pivot_row, c);
            let lead_col = r.iter().position(|x| !x.is_zero()).unwrap_or(0);
            if r[lead_col].is_negative() {
                for x in r.iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    (pivots, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{frac, int, ints};

    fn mat(cols: usize, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(cols, rows.iter().map(|r| ints(r)).collect()).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let (rank, ker) = ExactMatrix::identity(2).rank_kernel();
        assert_eq!(rank, 2);
        assert_eq!(ker.dim(), 0);
    }

    #[test]
    fn single_row_kernel() {
        let (rank, ker) = mat(2, &[&[1, 1]]).rank_kernel();
        assert_eq!(rank, 1);
        assert_eq!(ker.vectors(), &[ints(&[-1, 1])]);
        assert!(ker.contains(&ints(&[1, -1])).unwrap());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (rank, ker) = ExactMatrix::zeros(3, 3).rank_kernel();
        assert_eq!(rank, 0);
        assert_eq!(ker.dim(), 3);
    }

    #[test]
    fn affine_examples() {
        let sol = mat(2, &[&[1, 1]]).solve_affine(&ints(&[1])).unwrap();
        match sol {
            AffineSolution::Solved { particular, kernel } => {
                assert_eq!(particular, ints(&[1, 0]));
                assert!(kernel.contains(&ints(&[1, -1])).unwrap());
                assert_eq!(kernel.dim(), 1);
            }
            AffineSolution::Inconsistent => panic!("consistent system"),
        }
        assert_eq!(mat(1, &[&[0]]).solve_affine(&ints(&[1])).unwrap(), AffineSolution::Inconsistent);
        let b = vec![frac(1, 2), int(-3)];
        let sol = ExactMatrix::identity(2).solve_affine(&b).unwrap();
        assert_eq!(sol.particular().unwrap(), b.as_slice());
        assert!(ExactMatrix::identity(2).solve_affine(&ints(&[1])).is_err());
    }

    #[test]
    fn rational_entries_and_pivot_normalization() {
        let m = ExactMatrix::from_rows(3, vec![vec![frac(1, 2), frac(1, 3), int(1)], vec![int(3), int(2), int(6)]])
            .unwrap();
        let ech = m.echelon();
        assert_eq!(ech.rank(), 1);
        assert_eq!(ech.rows[0], vec![int(1), frac(2, 3), int(2)]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(3, &[&[2, 1, 0], &[0, 1, 4], &[1, 0, 3]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(3));
        assert_eq!(mat(2, &[&[1, 2], &[2, 4]]).inverse(), Err(LinAlgError::Singular));
    }

    #[test]
    fn back_substitution_clears_above() {
        let m = mat(3, &[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]);
        let ech = m.echelon();
        assert_eq!(ech.pivots, vec![0, 1, 2]);
        assert_eq!(ech.rows, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
    }
}
