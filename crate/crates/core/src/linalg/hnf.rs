use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u * m == h`. Pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, and zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut p = 0;

    for c in 0..cols {
        if p == rows {
            break;
        }
        loop {
            let pick = (p..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by_key(|&i| h[(i, c)].abs());
            let Some(k) = pick else { break };
            h.swap_rows(p, k);
            u.swap_rows(p, k);
            let mut clean = true;
            for i in p + 1..rows {
                let q = &h[(i, c)] / &h[(p, c)];
                if !q.is_zero() {
                    h.add_row_multiple(p, i, &-&q);
                    u.add_row_multiple(p, i, &-&q);
                }
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(p, c)].is_zero() {
            continue;
        }
        if h[(p, c)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for i in 0..p {
            let q = h[(i, c)].div_floor(&h[(p, c)]);
            if !q.is_zero() {
                h.add_row_multiple(p, i, &-&q);
                u.add_row_multiple(p, i, &-&q);
            }
        }
        p += 1;
    }
    (h, u)
}

/// Canonical basis of the row lattice of `m`: its HNF with zero rows dropped.
pub fn row_lattice_basis(m: &IntMatrix) -> IntMatrix {
    hermite_normal_form(m).0.nonzero_rows()
}

/// Whether two matrices with the same column count span the same row lattice.
pub fn same_row_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    row_lattice_basis(a) == row_lattice_basis(b)
}

/// Z-basis of `{x : m * x = 0}` as HNF rows; there are `cols - rank` of them.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(&m.transpose());
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .collect();
    row_lattice_basis(&u.select_rows(&zero_rows))
}

/// Whether `v` lies in the integer span of the columns of `m`.
pub fn in_column_lattice(m: &IntMatrix, v: &[BigInt]) -> bool {
    let cols = m.transpose();
    let extended = cols.vstack(&IntMatrix::from_row_vectors(v.len(), &[v.to_vec()]));
    same_row_lattice(&cols, &extended)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn is_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                None => seen_zero = true,
                Some(j) => {
                    if seen_zero || last_pivot.is_some_and(|lp| j <= lp) || !h[(i, j)].is_positive()
                    {
                        return false;
                    }
                    if (0..i).any(|k| h[(k, j)].is_negative() || h[(k, j)] >= h[(i, j)]) {
                        return false;
                    }
                    last_pivot = Some(j);
                }
            }
        }
        true
    }

    #[test]
    fn one_row_addition() {
        let m = IntMatrix::from_rows(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::from_rows(&[vec![1, 0, -1], vec![0, 1, -1]]));
        assert_eq!(&u * &m, h);
    }

    #[test]
    fn zero_matrix() {
        let (h, _) = hermite_normal_form(&IntMatrix::zeros(2, 3));
        assert!(h.is_zero());
    }

    #[test]
    fn gcd_column() {
        let (h, u) = hermite_normal_form(&IntMatrix::from_rows(&[vec![2], vec![3]]));
        assert_eq!(h, IntMatrix::from_rows(&[vec![1], vec![0]]));
        assert!(u.determinant().abs().is_one());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).rows(), 0);
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.rows(), 2);
        for row in k.row_vectors() {
            assert!(m.mul_vec(&row).iter().all(Zero::is_zero));
        }
        assert!(is_hnf(&k));
        // The kernel is {(a, b, -a-b)}: (1,0,-1),(0,1,-1) is its HNF basis.
        assert_eq!(k, IntMatrix::from_rows(&[vec![1, 0, -1], vec![0, 1, -1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y = 0 has kernel generated by (2, -1), not (4, -2).
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![2, 4]]));
        assert_eq!(k, IntMatrix::from_rows(&[vec![2, -1]]));
    }

    #[test]
    fn column_lattice_membership() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert!(in_column_lattice(&m, &[BigInt::from(4), BigInt::from(-3)]));
        assert!(!in_column_lattice(&m, &[BigInt::from(1), BigInt::from(0)]));
    }

    proptest! {
        #[test]
        fn hnf_properties(entries in prop::collection::vec(-5i64..=5, 12)) {
            let m = IntMatrix::from_fn(4, 3, |i, j| BigInt::from(entries[3 * i + j]));
            let (h, u) = hermite_normal_form(&m);
            prop_assert_eq!(&u * &m, h.clone());
            prop_assert!(u.determinant().abs().is_one());
            prop_assert!(is_hnf(&h));
            // HNF is a lattice invariant: row-shuffling and combining leaves it fixed.
            let mut m2 = m.clone();
            m2.swap_rows(0, 3);
            m2.add_row_multiple(1, 2, &BigInt::from(-2));
            prop_assert_eq!(row_lattice_basis(&m2), row_lattice_basis(&m));
        }

        #[test]
        fn kernel_rank_nullity(entries in prop::collection::vec(-3i64..=3, 15)) {
            let m = IntMatrix::from_fn(3, 5, |i, j| BigInt::from(entries[5 * i + j]));
            let k = kernel_basis(&m);
            prop_assert_eq!(k.rows(), 5 - m.rank());
            prop_assert_eq!(k.rank(), k.rows());
            for row in k.row_vectors() {
                prop_assert!(m.mul_vec(&row).iter().all(Zero::is_zero));
            }
        }
    }
}
