use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, Serializer};

use super::matrix::IntMatrix;

/// Univariate polynomial in `u` with big-integer coefficients, lowest degree
/// first. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * u^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, u: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * u + c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by `u - a`, or `None` if `a` is not a root.
    pub fn div_linear(&self, a: &BigInt) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Synthetic division from the top coefficient down.
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &carry * a;
            if k == 0 {
                return v.is_zero().then(|| Self::new(q));
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{a}u")?,
                (_, true) => write!(f, "u^{k}")?,
                (_, false) => write!(f, "{a}u^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serializes as the coefficient array, lowest degree first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        crate::bigjson::Row(&self.coeffs).serialize(serializer)
    }
}

/// Square matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<IntPolynomial>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> IntPolynomial) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &IntPolynomial {
        &self.entries[i * self.n + j]
    }

    pub fn eval(&self, u: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| self.entry(i, j).eval(u))
    }

    /// Degree bound for the determinant: the sum of per-row maximum degrees.
    pub fn det_degree_bound(&self) -> usize {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .filter_map(|j| self.entry(i, j).degree())
                    .max()
                    .unwrap_or(0)
            })
            .sum()
    }
}

/// Evaluation nodes `0, 1, -1, 2, -2, ...`.
fn nodes(count: usize) -> Vec<BigInt> {
    (0..count as i64)
        .map(|k| {
            let h = (k + 1) / 2;
            BigInt::from(if k % 2 == 1 { h } else { -h })
        })
        .collect()
}

/// Exact determinant by evaluating at `deg + 1` integer nodes (Bareiss at each
/// node) and interpolating in Newton form.
pub fn poly_matrix_det(p: &PolyMatrix) -> IntPolynomial {
    let xs = nodes(p.det_degree_bound() + 1);
    let ys: Vec<BigInt> = xs.iter().map(|x| p.eval(x).determinant()).collect();
    interpolate(&xs, ys)
}

/// Interpolates integer samples of an integer polynomial. Newton divided
/// differences stay integral because every Newton basis polynomial is monic
/// with integer coefficients.
pub fn interpolate(xs: &[BigInt], mut dd: Vec<BigInt>) -> IntPolynomial {
    let n = xs.len();
    assert_eq!(n, dd.len());
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            let (q, r) = num.div_rem(&den);
            assert!(
                r.is_zero(),
                "samples do not come from an integer polynomial"
            );
            dd[i] = q;
        }
    }
    // Horner on the Newton form.
    let mut acc = IntPolynomial::zero();
    for i in (0..n).rev() {
        let shift = IntPolynomial::new(vec![-&xs[i], BigInt::one()]);
        acc = &(&acc * &shift) + &IntPolynomial::constant(dd[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Laplace expansion along the first row; independent of the evaluation route.
    fn cofactor_det(m: &PolyMatrix) -> IntPolynomial {
        fn rec(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> IntPolynomial {
            if rows.is_empty() {
                return IntPolynomial::one();
            }
            let mut acc = IntPolynomial::zero();
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = m.entry(rows[0], c) * &rec(m, &rows[1..], &rest);
                acc = if k % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
        let idx: Vec<usize> = (0..m.size()).collect();
        rec(m, &idx, &idx)
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn one_by_one() {
        let m = PolyMatrix::from_fn(1, |_, _| p(&[1, -1]));
        assert_eq!(poly_matrix_det(&m), p(&[1, -1]));
    }

    #[test]
    fn diagonal_product() {
        let m = PolyMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => p(&[1, -1]),
            (1, 1) => p(&[1, 1]),
            _ => IntPolynomial::zero(),
        });
        assert_eq!(poly_matrix_det(&m), p(&[1, 0, -1]));
    }

    #[test]
    fn division_by_linear_factor() {
        // (1 - u)^2 (1 + u) = 1 - u - u^2 + u^3
        let f = p(&[1, -1, -1, 1]);
        let q = f.div_linear(&BigInt::one()).unwrap();
        assert_eq!(q, p(&[-1, 0, 1]));
        assert!(p(&[1, 1]).div_linear(&BigInt::one()).is_none());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "1 - 2u + 3u^3");
        assert_eq!(p(&[0, -1]).to_string(), "-u");
    }

    proptest! {
        #[test]
        fn matches_cofactor_expansion(
            n in 1usize..=4,
            raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 16),
        ) {
            let m = PolyMatrix::from_fn(n, |i, j| p(&raw[i * 4 + j]));
            prop_assert_eq!(poly_matrix_det(&m), cofactor_det(&m));
        }

        #[test]
        fn interpolation_roundtrip(c in prop::collection::vec(-20i64..=20, 0..7)) {
            let f = p(&c);
            let xs = nodes(c.len().max(1));
            let ys = xs.iter().map(|x| f.eval(x)).collect();
            prop_assert_eq!(interpolate(&xs, ys), f);
        }
    }
}
