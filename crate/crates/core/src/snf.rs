//! Integer Smith normal form and finitely generated abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentation::Presentation;
use crate::scalar::Scalar;

/// `left * input * right = diagonal` with unimodular `left`, `right`.
#[derive(Clone)]
pub struct SmithForm<T> {
    /// Diagonal entries `d_1 | d_2 | ...`, nonnegative, zeros last.
    pub diagonal: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: Scalar> fmt::Debug for SmithForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmithForm")
            .field("diagonal", &self.diagonal)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal as a full matrix shaped like the input.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let (r, c) = (self.left.rows(), self.right.cols());
        Matrix::from_fn(r, c, |i, j| if i == j { self.diagonal[i].clone() } else { T::zero() })
    }

    /// Re-checks the certificate against `input`.
    pub fn verify(&self, input: &Matrix<T>) -> bool {
        let chain = self
            .diagonal
            .windows(2)
            .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        let nonneg = self.diagonal.iter().all(|d| !d.is_negative());
        chain
            && nonneg
            && self.left.is_unimodular()
            && self.right.is_unimodular()
            && self.left.mul(input).mul(&self.right) == self.diagonal_matrix()
    }
}

/// Smith normal form, pivoting on the smallest nonzero absolute value.
pub fn smith_normal_form<T: Scalar>(input: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = (input.rows(), input.cols());
    let mut a = input.clone();
    let mut left = Matrix::identity(rows);
    let mut right = Matrix::identity(cols);
    let steps = rows.min(cols);

    'outer: for t in 0..steps {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = -a[(i, t)].div_floor(&a[(t, t)]);
                    a.add_row_multiple(i, t, &q);
                    left.add_row_multiple(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = -a[(t, j)].div_floor(&a[(t, t)]);
                    a.add_col_multiple(j, t, &q);
                    right.add_col_multiple(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &T::one());
                    left.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    SmithForm {
        diagonal: (0..steps).map(|i| a[(i, i)].clone()).collect(),
        left,
        right,
    }
}

fn smallest_entry<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// A finitely generated abelian group `Z^r x C_{d_1} x ... x C_{d_k}` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupType {
    pub free_rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl AbelianGroupType {
    pub fn trivial() -> Self {
        AbelianGroupType {
            free_rank: 0,
            invariant_factors: vec![],
        }
    }

    /// Canonical form of `Z^free_rank x C_{o_1} x C_{o_2} x ...` for
    /// arbitrary cyclic orders (`0` means infinite cyclic).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let diag = Matrix::from_fn(orders.len(), orders.len(), |i, j| {
            if i == j {
                BigInt::from(orders[i])
            } else {
                BigInt::zero()
            }
        });
        let snf = smith_normal_form(&diag);
        Self::from_diagonal(orders.len(), &snf.diagonal)
            .map(|mut a| {
                a.free_rank += free_rank;
                a
            })
            .expect("orders fit in u64")
    }

    /// Reads the cokernel shape off a Smith diagonal of an `m x generators`
    /// relation matrix.
    pub fn from_diagonal<T: Scalar>(generators: usize, diagonal: &[T]) -> Result<Self> {
        let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        let mut invariant_factors = Vec::new();
        for d in diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()) {
            let big: BigInt = d.clone().into();
            let v = u64::try_from(&big).map_err(|_| Error::Overflow(big.to_string()))?;
            invariant_factors.push(v);
        }
        Ok(AbelianGroupType {
            free_rank: generators - rank,
            invariant_factors,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Exponent of the torsion subgroup; 1 when it is trivial.
    pub fn torsion_exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// Multiset of elementary divisors `(prime power, multiplicity)`, useful
    /// for printing `C4 x C2^7` style.
    fn grouped_factors(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &d in self.invariant_factors.iter().rev() {
            match out.last_mut() {
                Some((v, c)) if *v == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}

impl fmt::Display for AbelianGroupType {
    /// `C∞ × C4 × C2^5`; the trivial group prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("C∞".to_string()),
            r => parts.push(format!("C∞^{r}")),
        }
        for (d, c) in self.grouped_factors() {
            if c == 1 {
                parts.push(format!("C{d}"));
            } else {
                parts.push(format!("C{d}^{c}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" × "))
        }
    }
}

/// Abelianization of a finitely presented group from the Smith form of its
/// exponent-sum matrix, with the certificate checked.
pub fn abelianization(p: &Presentation) -> Result<AbelianGroupType> {
    let m = p.relation_matrix::<BigInt>();
    let snf = smith_normal_form(&m);
    if !snf.verify(&m) {
        return Err(Error::Internal("Smith form certificate".into()));
    }
    AbelianGroupType::from_diagonal(p.generators().len(), &snf.diagonal)
}

/// Generic version for other scalar types.
pub fn abelianization_with<T: Scalar>(p: &Presentation) -> Result<AbelianGroupType> {
    let m = p.relation_matrix::<T>();
    let snf = smith_normal_form(&m);
    if !snf.verify(&m) {
        return Err(Error::Internal("Smith form certificate".into()));
    }
    AbelianGroupType::from_diagonal(p.generators().len(), &snf.diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn already_diagonal() {
        let a = m(&[&[2, 0], &[0, 0]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![2, 0]);
        assert!(s.verify(&a));
        assert_eq!(
            AbelianGroupType::from_diagonal(2, &s.diagonal).unwrap(),
            AbelianGroupType {
                free_rank: 1,
                invariant_factors: vec![2]
            }
        );
    }

    #[test]
    fn two_by_two_example() {
        // d1 = gcd of entries = 2, d1 * d2 = |det| = 8
        let a = m(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![2, 4]);
        assert!(s.verify(&a));
    }

    #[test]
    fn empty_relations_give_free_group() {
        let p = Presentation::from_named(&["x", "y", "z"], &[]).unwrap();
        assert_eq!(
            abelianization(&p).unwrap(),
            AbelianGroupType {
                free_rank: 3,
                invariant_factors: vec![]
            }
        );
    }

    #[test]
    fn canonical_form_merges_coprime_orders() {
        let a = AbelianGroupType::from_cyclic_orders(0, &[2, 3]);
        assert_eq!(a.invariant_factors, vec![6]);
        let b = AbelianGroupType::from_cyclic_orders(1, &[2, 4, 2, 1, 0]);
        assert_eq!(b.free_rank, 2);
        assert_eq!(b.invariant_factors, vec![2, 2, 4]);
        assert_eq!(b.to_string(), "C∞^2 × C4 × C2^2");
        assert_eq!(AbelianGroupType::trivial().to_string(), "1");
    }

    /// Determinantal divisors: d_1 ... d_k = gcd of the k x k minors.
    fn minors_gcd(a: &Matrix<i64>, k: usize) -> i64 {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = 0i64;
        for r in subsets(a.rows(), k) {
            for c in subsets(a.cols(), k) {
                let sub = Matrix::from_fn(k, k, |i, j| a[(r[i], c[j])]);
                g = g.gcd(&sub.determinant());
            }
        }
        g
    }

    proptest! {
        #[test]
        fn certificates_verify(entries in proptest::collection::vec(-12i64..13, 20), r in 1usize..5, c in 1usize..6) {
            let a = Matrix::from_fn(r, c, |i, j| entries[i * 5 + j]);
            let s = smith_normal_form(&a);
            prop_assert!(s.verify(&a));
        }

        #[test]
        fn diagonal_matches_minor_gcds(entries in proptest::collection::vec(-9i64..10, 12)) {
            let a = Matrix::from_fn(3, 4, |i, j| entries[i * 4 + j]);
            let s = smith_normal_form(&a);
            let mut prod = 1i64;
            for k in 1..=3 {
                prod *= s.diagonal[k - 1];
                prop_assert_eq!(prod, minors_gcd(&a, k));
            }
        }

        #[test]
        fn bigint_entries_verify(entries in proptest::collection::vec(any::<i64>(), 9)) {
            let a = Matrix::from_fn(3, 3, |i, j| BigInt::from(entries[i * 3 + j]));
            let s = smith_normal_form(&a);
            prop_assert!(s.verify(&a));
        }
    }
}
