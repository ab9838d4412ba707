use num_traits::Zero;

use super::{lsym_target_space, pair_index, AlgError, AlgebraPoint, BilinearMap, Splitting};
use crate::exactla::{AffineSolution, LinearSystem};
use crate::polyring::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionOutcome {
    Feasible(BilinearMap),
    Infeasible,
}

/// Equations in a symmetric `⋆`, one per `(i, j, k, l)`:
/// `lhs = e_i(e_j⋆e_k) − (e_ie_j)⋆e_k + e_i⋆(e_je_k) − (e_i⋆e_j)e_k` in coordinate `l`.
///
/// Unknown `pair_index(n, i, j)·n + k` is the `k`-th coordinate of `e_i⋆e_j`.
fn star_system(alg: &AlgebraPoint, lhs: &DefectTable) -> LinearSystem {
    let n = alg.dim();
    let star = |i: usize, j: usize, k: usize| pair_index(n, i, j) * n + k;
    let c = |i: usize, j: usize, k: usize| alg.table().get(i, j, k);
    let mut sys = LinearSystem::new(n * (n + 1) / 2 * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut row = Vec::new();
                    for m in 0..n {
                        // e_i (e_j ⋆ e_k)
                        row.push((star(j, k, m), c(i, m, l).clone()));
                        // −(e_i e_j) ⋆ e_k
                        row.push((star(m, k, l), -c(i, j, m).clone()));
                        // e_i ⋆ (e_j e_k)
                        row.push((star(i, m, l), c(j, k, m).clone()));
                        // −(e_i ⋆ e_j) e_k
                        row.push((star(i, j, m), -c(m, k, l).clone()));
                    }
                    sys.push(row.into_iter().filter(|(_, v)| !v.is_zero()), lhs.get(i, j, k, l).clone());
                }
            }
        }
    }
    sys
}

/// Dense `n⁴` table indexed by `(i, j, k, l)`.
struct DefectTable {
    n: usize,
    data: Vec<Scalar>,
}

impl DefectTable {
    fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }
}

fn star_from_solution(n: usize, x: &[Scalar]) -> BilinearMap {
    let mut m = BilinearMap::square(n);
    for i in 0..n {
        for j in i..n {
            let v: Vec<Scalar> = (0..n).map(|k| x[pair_index(n, i, j) * n + k].clone()).collect();
            m.set_sym(i, j, &v);
        }
    }
    m
}

fn check_circ(alg: &AlgebraPoint, circ: &BilinearMap) -> Result<(), AlgError> {
    let n = alg.dim();
    if (circ.left(), circ.right(), circ.out()) != (n, n, n) {
        return Err(AlgError::Shape { expected: (n, n, n), got: (circ.left(), circ.right(), circ.out()) });
    }
    if !circ.is_symmetric() {
        return Err(AlgError::Precondition("map is not symmetric".into()));
    }
    if !alg.is_associative() {
        return Err(AlgError::NotAssociative);
    }
    Ok(())
}

/// Looks for `⋆` with `(x∘y)∘z − x∘(y∘z) = x(y⋆z) − (xy)⋆z + x⋆(yz) − (x⋆y)z`.
pub fn quadratic_obstruction(alg: &AlgebraPoint, circ: &BilinearMap) -> Result<ObstructionOutcome, AlgError> {
    check_circ(alg, circ)?;
    let n = alg.dim();
    let mut data = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = circ.apply_right_basis(circ.on_basis(i, j), k);
                let right = circ.apply_left_basis(i, circ.on_basis(j, k));
                data.extend(left.iter().zip(&right).map(|(a, b)| a - b));
            }
        }
    }
    let sys = star_system(alg, &DefectTable { n, data });
    Ok(match sys.solve()? {
        AffineSolution::Solved { particular, .. } => ObstructionOutcome::Feasible(star_from_solution(n, &particular)),
        AffineSolution::Inconsistent => ObstructionOutcome::Infeasible,
    })
}

/// The system in `⋆` induced by one `*`:
/// `(x∘y)*z + (x*y)∘z − x∘(y*z) − x*(y∘z) = x(y⋆z) − (xy)⋆z + x⋆(yz) − (x⋆y)z`.
pub fn linearized_constraint(
    alg: &AlgebraPoint,
    circ: &BilinearMap,
    star_lin: &BilinearMap,
) -> Result<LinearSystem, AlgError> {
    check_circ(alg, circ)?;
    let n = alg.dim();
    if (star_lin.left(), star_lin.right(), star_lin.out()) != (n, n, n) {
        return Err(AlgError::Shape {
            expected: (n, n, n),
            got: (star_lin.left(), star_lin.right(), star_lin.out()),
        });
    }
    let mut data = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let t1 = star_lin.apply_right_basis(circ.on_basis(i, j), k);
                let t2 = circ.apply_right_basis(star_lin.on_basis(i, j), k);
                let t3 = circ.apply_left_basis(i, star_lin.on_basis(j, k));
                let t4 = star_lin.apply_left_basis(i, circ.on_basis(j, k));
                data.extend((0..n).map(|l| &t1[l] + &t2[l] - &t3[l] - &t4[l]));
            }
        }
    }
    Ok(star_system(alg, &DefectTable { n, data }))
}

/// One [`linearized_constraint`] per basis element of `L(S²(N/N²), N²)`.
pub fn linearized_system(
    alg: &AlgebraPoint,
    circ: &BilinearMap,
    split: &Splitting,
) -> Result<Vec<LinearSystem>, AlgError> {
    split.validate(alg)?;
    let n = alg.dim();
    lsym_target_space(split)?
        .vectors()
        .iter()
        .map(|v| {
            let star_lin = BilinearMap::from_vec(n, n, n, v.clone()).expect("n³ coordinates");
            linearized_constraint(alg, circ, &star_lin)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algschemes::{coboundary, lsym_target_space};
    use crate::exactla::ExactMatrix;
    use crate::polyring::ints;

    fn sample() -> AlgebraPoint {
        AlgebraPoint::from_products(3, &[(0, 0, ints(&[0, 0, 1])), (1, 1, ints(&[0, 0, 1]))]).unwrap()
    }

    #[test]
    fn zero_and_coboundary_are_unobstructed() {
        let a = sample();
        match quadratic_obstruction(&a, &BilinearMap::square(3)).unwrap() {
            ObstructionOutcome::Feasible(s) => assert!(s.is_zero()),
            ObstructionOutcome::Infeasible => panic!("zero map is unobstructed"),
        }
        let phi = ExactMatrix::from_rows(3, vec![ints(&[1, 2, 0]), ints(&[0, -1, 1]), ints(&[3, 0, 2])]).unwrap();
        let circ = coboundary(&a, &phi).unwrap();
        match quadratic_obstruction(&a, &circ).unwrap() {
            ObstructionOutcome::Feasible(s) => assert!(s.is_symmetric()),
            ObstructionOutcome::Infeasible => panic!("coboundaries are unobstructed"),
        }
    }

    #[test]
    fn nonassociative_direction_on_zero_algebra_is_obstructed() {
        let z = AlgebraPoint::zero(2).unwrap();
        let mut circ = BilinearMap::square(2);
        circ.set_sym(0, 0, &ints(&[0, 1]));
        circ.set_sym(1, 1, &ints(&[1, 0]));
        assert_eq!(quadratic_obstruction(&z, &circ).unwrap(), ObstructionOutcome::Infeasible);
    }

    #[test]
    fn linearized_counts_and_trivial_cases() {
        let a = sample();
        let s = Splitting::new(&a).unwrap();
        let systems = linearized_system(&a, &BilinearMap::square(3), &s).unwrap();
        assert_eq!(systems.len(), lsym_target_space(&s).unwrap().dim());
        let zero = vec![Scalar::zero(); 18];
        assert!(systems.iter().all(|sys| sys.is_satisfied_by(&zero)));
        // with * = 0 the left side vanishes and ⋆ = 0 solves it
        let phi = ExactMatrix::identity(3);
        let circ = coboundary(&a, &phi).unwrap();
        let sys = linearized_constraint(&a, &circ, &BilinearMap::square(3)).unwrap();
        assert!(sys.is_satisfied_by(&zero));
    }
}
