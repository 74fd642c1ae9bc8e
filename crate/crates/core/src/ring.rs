//! Exact arithmetic in the integral group ring `ZG`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A sparse element `Σ c_g g` of `ZG`; no stored coefficient is zero.
#[derive(Clone)]
pub struct Element<T> {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<usize, T>,
}

impl<T: Scalar> Element<T> {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Element {
            group: Arc::clone(group),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    /// The group element `g` itself.
    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        Self::from_terms(group, [(g, T::one())])
    }

    pub fn constant(group: &Arc<FiniteGroup>, c: T) -> Self {
        Self::from_terms(group, [(0, c)])
    }

    /// Sums the given terms; repeated indices accumulate.
    pub fn from_terms(group: &Arc<FiniteGroup>, terms: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut e = Self::zero(group);
        for (g, c) in terms {
            assert!(g < group.order(), "group element {g} out of range");
            e.add_term(g, c);
        }
        e
    }

    /// Dense coefficient vector indexed by group element.
    pub fn from_dense(group: &Arc<FiniteGroup>, dense: Vec<T>) -> Self {
        assert_eq!(dense.len(), group.order());
        Self::from_terms(group, dense.into_iter().enumerate())
    }

    /// `H~ = Σ_{h ∈ H} h` for a subgroup given as an index set.
    pub fn subgroup_sum(group: &Arc<FiniteGroup>, subgroup: &[usize]) -> Self {
        Self::from_terms(group, subgroup.iter().map(|&h| (h, T::one())))
    }

    /// `g~ = Σ_{i} g^i`, the sum over the cyclic subgroup `<g>`.
    pub fn tilde(group: &Arc<FiniteGroup>, g: usize) -> Self {
        Self::subgroup_sum(group, &group.powers(g))
    }

    fn add_term(&mut self, g: usize, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&g) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.coeffs.remove(&g);
                }
            }
            None => {
                self.coeffs.insert(g, c);
            }
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self, g: usize) -> T {
        self.coeffs.get(&g).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn to_dense(&self) -> Vec<T> {
        (0..self.group.order()).map(|g| self.coeff(g)).collect()
    }

    fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        Element {
            group: Arc::clone(&self.group),
            coeffs: self.coeffs.iter().map(|(&g, c)| (g, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        if k.is_zero() {
            return Self::zero(&self.group);
        }
        Element {
            group: Arc::clone(&self.group),
            coeffs: self.coeffs.iter().map(|(&g, c)| (g, c.clone() * k.clone())).collect(),
        }
    }

    /// Convolution over the Cayley table.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut dense = vec![T::zero(); self.group.order()];
        for (&g, x) in &self.coeffs {
            let row = &self.group.table()[g];
            for (&h, y) in &other.coeffs {
                let slot = &mut dense[row[h]];
                *slot = slot.clone() + x.clone() * y.clone();
            }
        }
        Ok(Self::from_dense(&self.group, dense))
    }

    /// Left multiplication by a group element.
    pub fn left_shift(&self, g: usize) -> Self {
        Element {
            group: Arc::clone(&self.group),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&h, c)| (self.group.mul(g, h), c.clone()))
                .collect(),
        }
    }

    /// Right multiplication by a group element.
    pub fn right_shift(&self, g: usize) -> Self {
        Element {
            group: Arc::clone(&self.group),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&h, c)| (self.group.mul(h, g), c.clone()))
                .collect(),
        }
    }

    /// Augmentation: the sum of all coefficients.
    pub fn augment(&self) -> T {
        self.coeffs.values().fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Nonnegative power by square-and-multiply.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.group);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The matrix of `x -> self * x` in the group basis:
    /// entry `(g, h)` is the coefficient of `g h^-1`.
    pub fn left_regular_matrix(&self) -> Matrix<T> {
        let g = &self.group;
        Matrix::from_fn(g.order(), g.order(), |i, j| self.coeff(g.mul(i, g.inv(j))))
    }

    /// Units of `ZG` are exactly the elements whose regular representation
    /// has determinant ±1.
    pub fn is_unit(&self) -> bool {
        self.left_regular_matrix().determinant().abs().is_one()
    }

    /// Two-sided inverse; the result is verified by multiplication.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.left_regular_matrix();
        if !m.determinant().abs().is_one() {
            return Err(Error::NotUnit);
        }
        let mut rhs = vec![T::zero(); self.group.order()];
        rhs[0] = T::one();
        let x = m
            .solve_integral(&rhs)
            .ok_or_else(|| Error::Internal("unimodular system without integral solution".into()))?;
        let inv = Self::from_dense(&self.group, x);
        if !(self * &inv).is_one() || !(&inv * self).is_one() {
            return Err(Error::Internal("inverse check".into()));
        }
        Ok(inv)
    }

    /// `x^y = y^-1 x y`.
    pub fn conjugate(&self, by: &Unit<T>) -> Result<Self> {
        by.inverse.checked_mul(self)?.checked_mul(&by.value)
    }

    /// Any integer power; negative powers require a unit.
    pub fn power(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inverse()?.pow(k.unsigned_abs()))
        }
    }

    /// Human-readable form using the group's generator names when possible.
    pub fn display(&self) -> String {
        let names = crate::parse::ElementNames::new(&self.group);
        let mut out = String::new();
        for (i, (g, c)) in self.coeffs.iter().enumerate() {
            let word = names.name(*g);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (abs.is_one(), word == "1") {
                (true, _) => out.push_str(&word),
                (false, true) => out.push_str(&abs.to_string()),
                (false, false) => out.push_str(&format!("{abs}*{word}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<T: Scalar> PartialEq for Element<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.coeffs == other.coeffs
    }
}

impl<T: Scalar> Eq for Element<T> {}

impl<T: Scalar> fmt::Debug for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.display())
    }
}

impl<T: Scalar> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, T: Scalar> $tr<&'a Element<T>> for &'a Element<T> {
            type Output = Element<T>;
            /// Panics if the operands live in different groups; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &'a Element<T>) -> Element<T> {
                self.$checked(rhs).expect("group mismatch")
            }
        }
        impl<T: Scalar> $tr<Element<T>> for Element<T> {
            type Output = Element<T>;
            fn $method(self, rhs: Element<T>) -> Element<T> {
                self.$checked(&rhs).expect("group mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<T: Scalar> Neg for &Element<T> {
    type Output = Element<T>;
    fn neg(self) -> Element<T> {
        self.negate()
    }
}

/// A unit carried together with its verified inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Unit<T: Scalar> {
    value: Element<T>,
    inverse: Element<T>,
}

impl<T: Scalar> Unit<T> {
    /// Trivial unit `g`.
    pub fn group_element(group: &Arc<FiniteGroup>, g: usize) -> Self {
        Unit {
            value: Element::basis(group, g),
            inverse: Element::basis(group, group.inv(g)),
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::group_element(group, 0)
    }

    /// Accepts a claimed inverse after checking both products.
    pub fn with_inverse(value: Element<T>, inverse: Element<T>) -> Result<Self> {
        let left = value.checked_mul(&inverse)?;
        let right = inverse.checked_mul(&value)?;
        if left.is_one() && right.is_one() {
            Ok(Unit { value, inverse })
        } else {
            Err(Error::NotUnit)
        }
    }

    /// Inverts through the regular representation.
    pub fn new(value: Element<T>) -> Result<Self> {
        let inverse = value.inverse()?;
        Ok(Unit { value, inverse })
    }

    pub fn value(&self) -> &Element<T> {
        &self.value
    }

    pub fn inverse(&self) -> &Element<T> {
        &self.inverse
    }

    pub fn into_value(self) -> Element<T> {
        self.value
    }

    pub fn inv(&self) -> Unit<T> {
        Unit {
            value: self.inverse.clone(),
            inverse: self.value.clone(),
        }
    }

    pub fn mul(&self, other: &Unit<T>) -> Unit<T> {
        Unit {
            value: &self.value * &other.value,
            inverse: &other.inverse * &self.inverse,
        }
    }

    pub fn pow(&self, k: i64) -> Unit<T> {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let e = k.unsigned_abs();
        Unit {
            value: base.value.pow(e),
            inverse: base.inverse.pow(e),
        }
    }

    /// `self^by = by^-1 self by`.
    pub fn conjugate(&self, by: &Unit<T>) -> Unit<T> {
        by.inv().mul(self).mul(by)
    }

    /// `[self, other] = self^-1 self^other`.
    pub fn commutator(&self, other: &Unit<T>) -> Unit<T> {
        self.inv().mul(&self.conjugate(other))
    }
}
