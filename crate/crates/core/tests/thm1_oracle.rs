//! Brute-force check of the obstruction test on the zero algebra in dimension 2.
//!
//! With `μ = 0` every `f12`, `g12` block is empty and the only condition left
//! on `f11` is associativity, so the statement fails exactly when a nonzero
//! commutative associative `f11` exists.

use tancone::algschemes::{thm1_test, AlgebraPoint, BilinearMap, Splitting, Thm1Verdict};
use tancone::polyring::int;

fn is_associative(m: &BilinearMap) -> bool {
    let d = m.left();
    (0..d).all(|a| {
        (0..d).all(|b| {
            (0..d).all(|c| m.apply_right_basis(m.on_basis(a, b), c) == m.apply_left_basis(a, m.on_basis(b, c)))
        })
    })
}

#[test]
fn zero_algebra_matches_enumeration() {
    // all symmetric 2×2×2 tables with entries in {−1, 0, 1}
    let mut found = 0;
    for code in 0..3usize.pow(6) {
        let mut digits = code;
        let mut entries = [0i64; 6];
        for e in entries.iter_mut() {
            *e = (digits % 3) as i64 - 1;
            digits /= 3;
        }
        let mut m = BilinearMap::square(2);
        m.set_sym(0, 0, &[int(entries[0]), int(entries[1])]);
        m.set_sym(0, 1, &[int(entries[2]), int(entries[3])]);
        m.set_sym(1, 1, &[int(entries[4]), int(entries[5])]);
        if !m.is_zero() && is_associative(&m) {
            found += 1;
        }
    }
    assert!(found > 0);

    let z = AlgebraPoint::zero(2).unwrap();
    let rep = thm1_test(&z, &Splitting::new(&z).unwrap()).unwrap();
    assert_eq!(rep.dims.kernel_mu, 3);
    match rep.verdict {
        Thm1Verdict::Fails { f11, .. } => {
            assert!(!f11.is_zero() && f11.is_symmetric());
            assert!(is_associative(&f11));
        }
        other => panic!("enumeration found {found} witnesses, test says {other:?}"),
    }
}

#[test]
fn square_zero_line_holds() {
    // x² = w: ker μ is trivial, so nothing can be nonzero on it
    let a = AlgebraPoint::from_products(2, &[(0, 0, vec![int(0), int(1)])]).unwrap();
    let rep = thm1_test(&a, &Splitting::new(&a).unwrap()).unwrap();
    assert_eq!(rep.dims.kernel_mu, 0);
    assert_eq!(rep.verdict.holds(), Some(true));
}
