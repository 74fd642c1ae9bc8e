//! The matrix model of units of `Z D_{2p}` over `R = Z[z]`, `z = ζ + ζ⁻¹`.
//!
//! `R` is stored as `Z[x]/(psi)` in the power basis. `Q` is the kernel of the
//! residue map `R -> F_p`, `z ↦ 2`. All matrix arithmetic is exact.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{is_prime, mod_inverse, mod_pow, multiplicative_order};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Largest prime accepted by [`RealCycloRing::new`].
pub const MAX_PRIME: u64 = 31;

/// `Z[z]` for `z = ζ_p + ζ_p⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCycloRing<T> {
    p: u64,
    /// Monic minimal polynomial of `z`, lowest degree first; length `degree + 1`.
    psi: Vec<T>,
}

/// An element of a [`RealCycloRing`]: exactly `degree` coefficients, reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CycloElement<T> {
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `(a b; c d)` over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2<T> {
    pub a: CycloElement<T>,
    pub b: CycloElement<T>,
    pub c: CycloElement<T>,
    pub d: CycloElement<T>,
}

impl<T: Scalar> RealCycloRing<T> {
    /// Builds `R` for an odd prime `p <= 31`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Precondition(format!(
                "p = {p} must be an odd prime at most {MAX_PRIME}"
            )));
        }
        let degree = ((p - 1) / 2) as usize;
        // V_k as integer polynomials in x, lowest degree first.
        let mut v: Vec<Vec<i64>> = vec![vec![2], vec![0, 1]];
        for k in 1..degree {
            let mut next = vec![0i64; k + 2];
            for (i, &c) in v[k].iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, &c) in v[k - 1].iter().enumerate() {
                next[i] -= c;
            }
            v.push(next);
        }
        let mut psi = vec![0i64; degree + 1];
        psi[0] = 1;
        for vk in &v[1..=degree] {
            for (i, &c) in vk.iter().enumerate() {
                psi[i] += c;
            }
        }
        debug_assert_eq!(psi[degree], 1);
        let ring = Self {
            p,
            psi: psi.into_iter().map(T::from).collect(),
        };
        debug_assert_eq!(ring.eval_mod_p(&ring.psi, 2), 0);
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn psi(&self) -> &[T] {
        &self.psi
    }

    /// `psi(2) mod p`; zero for every valid ring.
    pub fn psi_residue(&self) -> u64 {
        self.eval_mod_p(&self.psi, 2)
    }

    fn eval_mod_p(&self, poly: &[T], x: u64) -> u64 {
        poly.iter().enumerate().fold(0, |acc, (i, c)| {
            (acc + c.residue(self.p) * mod_pow(x, i as u64, self.p)) % self.p
        })
    }

    /// Reduces an arbitrary polynomial modulo `psi`.
    pub fn from_poly(&self, mut poly: Vec<T>) -> CycloElement<T> {
        let n = self.degree();
        while poly.len() > n {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - n;
            for (i, c) in self.psi[..n].iter().enumerate() {
                poly[shift + i] = poly[shift + i].clone() - top.clone() * c.clone();
            }
        }
        poly.resize(n, T::zero());
        CycloElement { coeffs: poly }
    }

    pub fn from_int(&self, value: i64) -> CycloElement<T> {
        self.from_poly(vec![T::from(value)])
    }

    pub fn zero(&self) -> CycloElement<T> {
        self.from_int(0)
    }

    pub fn one(&self) -> CycloElement<T> {
        self.from_int(1)
    }

    /// The generator `z`.
    pub fn z(&self) -> CycloElement<T> {
        self.from_poly(vec![T::zero(), T::one()])
    }

    /// `V_k = ζ^k + ζ^{-k}`.
    pub fn v(&self, k: usize) -> CycloElement<T> {
        let (mut prev, mut cur) = (self.from_int(2), self.z());
        if k == 0 {
            return prev;
        }
        for _ in 1..k {
            let next = self.sub(&self.mul(&self.z(), &cur), &prev);
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    pub fn add(&self, x: &CycloElement<T>, y: &CycloElement<T>) -> CycloElement<T> {
        CycloElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, x: &CycloElement<T>, y: &CycloElement<T>) -> CycloElement<T> {
        CycloElement {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self, x: &CycloElement<T>) -> CycloElement<T> {
        CycloElement {
            coeffs: x.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn mul(&self, x: &CycloElement<T>, y: &CycloElement<T>) -> CycloElement<T> {
        let n = self.degree();
        let mut prod = vec![T::zero(); 2 * n - 1];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        self.from_poly(prod)
    }

    pub fn pow(&self, x: &CycloElement<T>, mut exp: u64) -> CycloElement<T> {
        let mut base = x.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Image in `R/Q = F_p`: the coefficient polynomial at 2, mod `p`.
    pub fn residue(&self, x: &CycloElement<T>) -> u64 {
        self.eval_mod_p(&x.coeffs, 2)
    }

    /// The constant `r` in `0..p`, a lift of a residue.
    pub fn lift(&self, r: u64) -> CycloElement<T> {
        self.from_int((r % self.p) as i64)
    }

    /// Matrix of multiplication by `x` on the power basis.
    fn multiplication_matrix(&self, x: &CycloElement<T>) -> Matrix<T> {
        let n = self.degree();
        let mut basis = self.one();
        let mut cols = Vec::with_capacity(n);
        for _ in 0..n {
            cols.push(self.mul(x, &basis).coeffs);
            basis = self.mul(&basis, &self.z());
        }
        Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }

    /// `N(x)`, the determinant of multiplication by `x`.
    pub fn norm(&self, x: &CycloElement<T>) -> T {
        self.multiplication_matrix(x).determinant()
    }

    pub fn is_unit(&self, x: &CycloElement<T>) -> bool {
        self.norm(x).abs().is_one()
    }

    /// Inverse in `R`, when it exists.
    pub fn inverse(&self, x: &CycloElement<T>) -> Option<CycloElement<T>> {
        let m = self.multiplication_matrix(x);
        let rhs = self.one().coeffs;
        let coeffs = m.solve_integral(&rhs)?;
        let inv = CycloElement { coeffs };
        debug_assert_eq!(self.mul(x, &inv), self.one());
        Some(inv)
    }

    /// The cyclotomic unit `(ζ^k - ζ^{-k}) / (ζ - ζ^{-1})` for `p ∤ k`,
    /// written as a sum of `V_j`. Its residue is `k mod p`.
    pub fn cyclotomic_unit(&self, k: usize) -> CycloElement<T> {
        let mut acc = if k % 2 == 1 { self.one() } else { self.zero() };
        let mut j = if k % 2 == 1 { 2 } else { 1 };
        while j < k {
            acc = self.add(&acc, &self.v(j));
            j += 2;
        }
        acc
    }

    // 2x2 matrices.

    pub fn mat(&self, a: i64, b: i64, c: i64, d: i64) -> Mat2<T> {
        Mat2 {
            a: self.from_int(a),
            b: self.from_int(b),
            c: self.from_int(c),
            d: self.from_int(d),
        }
    }

    pub fn identity(&self) -> Mat2<T> {
        self.mat(1, 0, 0, 1)
    }

    /// `(0 1; 1 0)`.
    pub fn swap(&self) -> Mat2<T> {
        self.mat(0, 1, 1, 0)
    }

    /// `(x 0; 0 1)`.
    pub fn diag(&self, x: &CycloElement<T>) -> Mat2<T> {
        Mat2 {
            a: x.clone(),
            b: self.zero(),
            c: self.zero(),
            d: self.one(),
        }
    }

    /// `E(r) = (1 r; 0 1)`.
    pub fn elementary(&self, r: &CycloElement<T>) -> Mat2<T> {
        Mat2 {
            a: self.one(),
            b: r.clone(),
            c: self.zero(),
            d: self.one(),
        }
    }

    /// `(1 0; r 1)`, the transpose of `E(r)`.
    pub fn elementary_lower(&self, r: &CycloElement<T>) -> Mat2<T> {
        Mat2 {
            a: self.one(),
            b: self.zero(),
            c: r.clone(),
            d: self.one(),
        }
    }

    /// `Y = (-1 -2; 0 1)`.
    pub fn y_matrix(&self) -> Mat2<T> {
        self.mat(-1, -2, 0, 1)
    }

    pub fn mat_mul(&self, x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
        let dot = |p: &CycloElement<T>, q: &CycloElement<T>, r: &CycloElement<T>, s: &CycloElement<T>| {
            self.add(&self.mul(p, q), &self.mul(r, s))
        };
        Mat2 {
            a: dot(&x.a, &y.a, &x.b, &y.c),
            b: dot(&x.a, &y.b, &x.b, &y.d),
            c: dot(&x.c, &y.a, &x.d, &y.c),
            d: dot(&x.c, &y.b, &x.d, &y.d),
        }
    }

    pub fn mat_product<'a>(&self, factors: impl IntoIterator<Item = &'a Mat2<T>>) -> Mat2<T> {
        factors
            .into_iter()
            .fold(self.identity(), |acc, m| self.mat_mul(&acc, m))
    }

    pub fn det(&self, m: &Mat2<T>) -> CycloElement<T> {
        self.sub(&self.mul(&m.a, &m.d), &self.mul(&m.b, &m.c))
    }

    /// Inverse in `GL_2(R)`, when the determinant is a unit.
    pub fn mat_inverse(&self, m: &Mat2<T>) -> Option<Mat2<T>> {
        let inv = self.inverse(&self.det(m))?;
        Some(Mat2 {
            a: self.mul(&inv, &m.d),
            b: self.neg(&self.mul(&inv, &m.b)),
            c: self.neg(&self.mul(&inv, &m.c)),
            d: self.mul(&inv, &m.a),
        })
    }

    /// `x^y = y⁻¹ x y`; `None` when `y` is not invertible.
    pub fn conjugate(&self, x: &Mat2<T>, y: &Mat2<T>) -> Option<Mat2<T>> {
        let yi = self.mat_inverse(y)?;
        Some(self.mat_mul(&self.mat_mul(&yi, x), y))
    }

    /// Residues of `(a b; c d)` in `F_p`.
    pub fn mat_residue(&self, m: &Mat2<T>) -> [[u64; 2]; 2] {
        [
            [self.residue(&m.a), self.residue(&m.b)],
            [self.residue(&m.c), self.residue(&m.d)],
        ]
    }

    fn is_sign(&self, r: u64) -> bool {
        r == 1 || r == self.p - 1
    }

    /// Membership in `U`: unit determinant with residue `±1`, and both
    /// column sums congruent to a common `±1`.
    pub fn is_in_u(&self, m: &Mat2<T>) -> bool {
        let det = self.det(m);
        if !self.is_unit(&det) || !self.is_sign(self.residue(&det)) {
            return false;
        }
        let left = self.residue(&self.add(&m.a, &m.c));
        let right = self.residue(&self.add(&m.b, &m.d));
        left == right && self.is_sign(left)
    }

    /// `U ∩ SL_2(R)`.
    pub fn is_in_u1(&self, m: &Mat2<T>) -> bool {
        self.det(m) == self.one() && self.is_in_u(m)
    }
}

/// `A = diag(delta, 1) · swap^ε · a1` with `residue(delta) = 1` and `a1 ∈ U ∩ SL_2(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UDecomposition<T> {
    pub delta: CycloElement<T>,
    pub swap: bool,
    pub a1: Mat2<T>,
}

impl<T: Scalar> RealCycloRing<T> {
    pub fn decompose_u(&self, m: &Mat2<T>) -> Result<UDecomposition<T>> {
        if !self.is_in_u(m) {
            return Err(Error::Precondition("matrix is not in U".into()));
        }
        let det = self.det(m);
        let det_inv = self
            .inverse(&det)
            .ok_or_else(|| Error::Internal("unit determinant without inverse".into()))?;
        let out = if self.residue(&det) == 1 {
            UDecomposition {
                delta: det,
                swap: false,
                a1: self.mat_mul(&self.diag(&det_inv), m),
            }
        } else {
            let scaled = self.mat_mul(&self.diag(&self.neg(&det_inv)), m);
            UDecomposition {
                delta: self.neg(&det),
                swap: true,
                a1: self.mat_mul(&self.swap(), &scaled),
            }
        };
        if self.reassemble(&out) != *m || !self.is_in_u1(&out.a1) || self.residue(&out.delta) != 1 {
            return Err(Error::Internal("decomposition failed to reassemble".into()));
        }
        Ok(out)
    }

    pub fn reassemble(&self, parts: &UDecomposition<T>) -> Mat2<T> {
        let mut m = self.diag(&parts.delta);
        if parts.swap {
            m = self.mat_mul(&m, &self.swap());
        }
        self.mat_mul(&m, &parts.a1)
    }

    fn require_sl2(&self, s: &Mat2<T>) -> Result<()> {
        if self.det(s) != self.one() {
            return Err(Error::Precondition("matrix does not have determinant 1".into()));
        }
        Ok(())
    }

    /// A `t` making the column sums of `Y^{C(t)S}` congruent to `-1` when
    /// `c ≢ d mod Q`; `None` when `c ≡ d`, where `t = 0` is used instead.
    pub fn solve_t(&self, s: &Mat2<T>) -> Result<Option<CycloElement<T>>> {
        self.require_sl2(s)?;
        let p = self.p;
        let r = |x: &CycloElement<T>| self.residue(x);
        let (a, b, c, d) = (r(&s.a), r(&s.b), r(&s.c), r(&s.d));
        if c == d {
            return Ok(None);
        }
        let num = (b + d + 2 * p - a - c) % p;
        let den = (c + p - d) % p;
        let inv = mod_inverse(den, p).expect("nonzero residue mod a prime");
        Ok(Some(self.lift(num * inv % p)))
    }

    /// `Y' = Y^{C(t)S}`.
    pub fn conjugated_y(&self, s: &Mat2<T>, t: &CycloElement<T>) -> Option<Mat2<T>> {
        let cs = self.mat_mul(&self.elementary(t), s);
        self.conjugate(&self.y_matrix(), &cs)
    }

    /// `e` with both column sums of `Y^{C(t)S}` congruent to `2e - 1`, if
    /// `e ∈ {0, 1}` exists.
    pub fn colsum_exponent(&self, s: &Mat2<T>, t: &CycloElement<T>) -> Option<u64> {
        let y = self.conjugated_y(s, t)?;
        let left = self.residue(&self.add(&y.a, &y.c));
        let right = self.residue(&self.add(&y.b, &y.d));
        if left != right {
            return None;
        }
        match left {
            x if x == self.p - 1 => Some(0),
            1 => Some(1),
            _ => None,
        }
    }

    /// For `q ∈ Q` and `S ∈ SL_2(R)`, the element `Y'` of `U` inverting
    /// `X = E(q)^S` by conjugation, together with the checks made on it.
    pub fn involution_witness(&self, q: &CycloElement<T>, s: &Mat2<T>) -> Result<Witness<T>> {
        if self.residue(q) != 0 {
            return Err(Error::Precondition("q is not in Q".into()));
        }
        self.require_sl2(s)?;
        let solved = self.solve_t(s)?;
        let branch = if solved.is_some() {
            TBranch::Solved
        } else {
            TBranch::Congruent
        };
        let t = solved.unwrap_or_else(|| self.zero());
        let e = self.colsum_exponent(s, &t);
        let x = self.conjugate(&self.elementary(q), s).expect("determinant 1");
        let y_prime = self.conjugated_y(s, &t).expect("determinant 1");
        let in_u = self.is_in_u(&y_prime);
        let x_inv = self.mat_inverse(&x).expect("determinant 1");
        let inverts = self.conjugate(&x, &y_prime).is_some_and(|c| c == x_inv);
        Ok(Witness {
            t,
            branch,
            e,
            x,
            y_prime,
            in_u,
            inverts,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TBranch {
    /// `c ≢ d mod Q`; `t` solved from the linear congruence.
    Solved,
    /// `c ≡ d mod Q`; `t = 0`.
    Congruent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<T> {
    pub t: CycloElement<T>,
    pub branch: TBranch,
    /// Observed `e`; `None` means the column sums were not a common `±1`.
    pub e: Option<u64>,
    pub x: Mat2<T>,
    pub y_prime: Mat2<T>,
    pub in_u: bool,
    pub inverts: bool,
}

impl<T> Witness<T> {
    pub fn verified(&self) -> bool {
        self.e.is_some() && self.in_u && self.inverts
    }
}

type Fp2 = [[u64; 2]; 2];

fn fp_mul(x: &Fp2, y: &Fp2, p: u64) -> Fp2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % p;
        }
    }
    out
}

const FP_ID: Fp2 = [[1, 0], [0, 1]];

fn fp_order(x: &Fp2, p: u64, limit: usize) -> Option<usize> {
    let mut acc = *x;
    for k in 1..=limit {
        if acc == FP_ID {
            return Some(k);
        }
        acc = fp_mul(&acc, x, p);
    }
    None
}

/// `T(a) = (1+a a; -a 1-a)` over `F_p`.
pub fn t_matrix(a: u64, p: u64) -> Fp2 {
    let a = a % p;
    [[(1 + a) % p, a], [(p - a) % p, (1 + p - a) % p]]
}

/// The residue image of `U ∩ SL_2(R)` restricted to the matrices `±T(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct U1ResidueReport {
    pub p: u64,
    pub order: usize,
    pub closed: bool,
    pub cyclic: bool,
    /// Every `T(a)` with `a ≠ 0` has order `p`.
    pub t_order_p: bool,
    /// Conjugation by the swap residue inverts every `T(a)`.
    pub swap_inverts: bool,
}

impl U1ResidueReport {
    pub fn passed(&self) -> bool {
        self.order == 2 * self.p as usize && self.closed && self.cyclic && self.t_order_p && self.swap_inverts
    }
}

pub fn residue_u1_group(p: u64) -> Result<U1ResidueReport> {
    if p < 3 || !is_prime(p) || p > MAX_PRIME {
        return Err(Error::Precondition(format!(
            "p = {p} must be an odd prime at most {MAX_PRIME}"
        )));
    }
    let neg = |x: u64| (p - x) % p;
    let mut elements: Vec<Fp2> = Vec::new();
    for a in 0..p {
        let t = t_matrix(a, p);
        // (-1+a a; -a -1-a), which is -T(-a)
        let minus = [[(p - 1 + a) % p, a], [neg(a), (2 * p - 1 - a) % p]];
        for m in [t, minus] {
            if !elements.contains(&m) {
                elements.push(m);
            }
        }
    }
    let order = elements.len();
    let closed = elements
        .iter()
        .all(|x| elements.iter().all(|y| elements.contains(&fp_mul(x, y, p))));
    let cyclic = elements.iter().any(|x| fp_order(x, p, order) == Some(order));
    let t_order_p = (1..p).all(|a| fp_order(&t_matrix(a, p), p, p as usize) == Some(p as usize));
    let swap: Fp2 = [[0, 1], [1, 0]];
    let swap_inverts = (0..p).all(|a| {
        let t = t_matrix(a, p);
        let conj = fp_mul(&fp_mul(&swap, &t, p), &swap, p);
        fp_mul(&conj, &t, p) == FP_ID
    });
    Ok(U1ResidueReport {
        p,
        order,
        closed,
        cyclic,
        t_order_p,
        swap_inverts,
    })
}

// Random members.

/// Element with coefficients in `-bound..=bound`.
pub fn random_element<T: Scalar>(ring: &RealCycloRing<T>, rng: &mut impl Rng, bound: i64) -> CycloElement<T> {
    let coeffs = (0..ring.degree())
        .map(|_| T::from(rng.gen_range(-bound..=bound)))
        .collect();
    CycloElement { coeffs }
}

/// `p·x + (z - 2)·y`, an element of `Q`.
pub fn random_q<T: Scalar>(ring: &RealCycloRing<T>, rng: &mut impl Rng) -> CycloElement<T> {
    let x = random_element(ring, rng, 2);
    let y = random_element(ring, rng, 2);
    let z2 = ring.sub(&ring.z(), &ring.from_int(2));
    ring.add(&ring.mul(&ring.from_int(ring.p() as i64), &x), &ring.mul(&z2, &y))
}

/// A product of `factors` alternating upper and lower elementary matrices.
pub fn random_sl2<T: Scalar>(ring: &RealCycloRing<T>, rng: &mut impl Rng, factors: usize) -> Mat2<T> {
    let mut m = ring.identity();
    let lower_first = rng.gen_bool(0.5);
    for i in 0..factors {
        let r = random_element(ring, rng, 1);
        let e = if (i % 2 == 0) == lower_first {
            ring.elementary_lower(&r)
        } else {
            ring.elementary(&r)
        };
        m = ring.mat_mul(&m, &e);
    }
    m
}

/// A power of a cyclotomic unit, or its inverse, with residue 1.
pub fn random_unit_one<T: Scalar>(ring: &RealCycloRing<T>, rng: &mut impl Rng) -> CycloElement<T> {
    let p = ring.p();
    let k = rng.gen_range(2..p);
    let c = ring.cyclotomic_unit(k as usize);
    let order = multiplicative_order(k, p).expect("k is coprime to p");
    let lambda = ring.pow(&c, order);
    if rng.gen_bool(0.5) {
        ring.inverse(&lambda).expect("cyclotomic units are units")
    } else {
        lambda
    }
}

/// One generator of `U ∩ SL_2(R)`: a congruence element `E(q)^S`, a lift of
/// `T(a)`, or `-I`.
pub fn random_u1_generator<T: Scalar>(ring: &RealCycloRing<T>, rng: &mut impl Rng) -> Mat2<T> {
    match rng.gen_range(0..3) {
        0 => {
            let q = random_q(ring, rng);
            let s = random_sl2(ring, rng, 3);
            ring.conjugate(&ring.elementary(&q), &s).expect("determinant 1")
        }
        1 => {
            let a = rng.gen_range(0..ring.p() as i64);
            ring.mat(1 + a, a, -a, 1 - a)
        }
        _ => ring.mat(-1, 0, 0, -1),
    }
}

/// A product of `factors` random generators of `U`: `diag(λ, 1)` with
/// `λ ≡ 1`, the swap matrix and generators of `U ∩ SL_2(R)`.
pub fn random_u_member<T: Scalar>(ring: &RealCycloRing<T>, rng: &mut impl Rng, factors: usize) -> Mat2<T> {
    let mut m = ring.identity();
    for _ in 0..factors {
        let g = match rng.gen_range(0..4) {
            0 => ring.diag(&random_unit_one(ring, rng)),
            1 => ring.swap(),
            _ => random_u1_generator(ring, rng),
        };
        m = ring.mat_mul(&m, &g);
    }
    m
}

/// Independent generator for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

// Seeded sweeps.

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub passed: usize,
    /// Indices of failing trials.
    pub failures: Vec<u64>,
}

impl TrialSummary {
    fn record(&mut self, index: u64, ok: bool) {
        self.trials += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(index);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    #[serde(flatten)]
    pub summary: TrialSummary,
    /// Trials in each branch of the `t` construction.
    pub branches: BTreeMap<TBranch, usize>,
    /// Observed `e` per branch, as `"branch:e"` counts; `"branch:none"` for failures.
    pub observed_e: BTreeMap<String, usize>,
}

/// `trials` witnesses for random `q ∈ Q` and `S ∈ SL_2(R)`.
pub fn witness_trials<T: Scalar>(ring: &RealCycloRing<T>, trials: u64, seed: u64) -> Result<WitnessSummary> {
    let mut out = WitnessSummary::default();
    for index in 0..trials {
        let mut rng = trial_rng(seed, index);
        let q = random_q(ring, &mut rng);
        let s = random_sl2(ring, &mut rng, 4);
        let w = ring.involution_witness(&q, &s)?;
        *out.branches.entry(w.branch).or_default() += 1;
        let branch = match w.branch {
            TBranch::Solved => "solved",
            TBranch::Congruent => "congruent",
        };
        let e = w.e.map_or("none".to_string(), |e| e.to_string());
        *out.observed_e.entry(format!("{branch}:{e}")).or_default() += 1;
        out.summary.record(index, w.verified());
    }
    Ok(out)
}

/// Round trips of [`RealCycloRing::decompose_u`] on `trials` random members of `U`.
pub fn decomposition_trials<T: Scalar>(ring: &RealCycloRing<T>, trials: u64, seed: u64) -> TrialSummary {
    let mut out = TrialSummary::default();
    for index in 0..trials {
        let mut rng = trial_rng(seed, index);
        let m = random_u_member(ring, &mut rng, 4);
        let ok = ring.decompose_u(&m).is_ok_and(|parts| ring.reassemble(&parts) == m);
        out.record(index, ok);
    }
    out
}

/// Products and inverses of random members stay in `U`.
pub fn closure_trials<T: Scalar>(ring: &RealCycloRing<T>, trials: u64, seed: u64) -> TrialSummary {
    let mut out = TrialSummary::default();
    for index in 0..trials {
        let mut rng = trial_rng(seed, index);
        let x = random_u_member(ring, &mut rng, 3);
        let y = random_u_member(ring, &mut rng, 3);
        let ok = ring.is_in_u(&x)
            && ring.is_in_u(&y)
            && ring.is_in_u(&ring.mat_mul(&x, &y))
            && ring.mat_inverse(&x).is_some_and(|xi| ring.is_in_u(&xi));
        out.record(index, ok);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type Ring = RealCycloRing<BigInt>;

    fn ints(x: &CycloElement<BigInt>) -> Vec<i64> {
        x.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    /// `prod_{k} (x - 2cos(2πk/p))` rounded, as an independent oracle for psi.
    fn psi_oracle(p: u64) -> Vec<i64> {
        let d = ((p - 1) / 2) as usize;
        let mut poly = vec![1.0f64];
        for k in 1..=d {
            let root = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / p as f64).cos();
            let mut next = vec![0.0; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= root * c;
            }
            poly = next;
        }
        poly.iter().map(|c| c.round() as i64).collect()
    }

    #[test]
    fn minimal_polynomials() {
        let r3 = Ring::new(3).unwrap();
        assert_eq!(r3.psi(), &[BigInt::from(1), BigInt::from(1)]);
        assert_eq!(ints(&r3.z()), vec![-1]);
        let r5 = Ring::new(5).unwrap();
        assert_eq!(r5.psi(), &[BigInt::from(-1), BigInt::from(1), BigInt::from(1)]);
        for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let r = Ring::new(p).unwrap();
            let psi: Vec<i64> = r.psi().iter().map(|c| i64::try_from(c).unwrap()).collect();
            assert_eq!(psi, psi_oracle(p), "p = {p}");
            assert_eq!(r.psi_residue(), 0);
            assert_eq!(r.residue(&r.z()), 2);
            assert_eq!(r.residue(&r.one()), 1);
            assert!(r.from_poly(r.psi().to_vec()).is_zero());
        }
        for bad in [1, 2, 9, 37] {
            assert!(Ring::new(bad).is_err());
        }
    }

    #[test]
    fn cyclotomic_units_are_units() {
        for p in [5, 7, 11, 13] {
            let r = Ring::new(p).unwrap();
            for k in 1..p as usize {
                let c = r.cyclotomic_unit(k);
                assert!(r.is_unit(&c), "p = {p}, k = {k}");
                assert_eq!(r.residue(&c), k as u64 % p);
            }
            // V_1 + ... + V_d = -1
            let sum = (1..=r.degree()).fold(r.zero(), |acc, k| r.add(&acc, &r.v(k)));
            assert_eq!(sum, r.from_int(-1));
        }
    }

    #[test]
    fn membership_examples() {
        let r5 = Ring::new(5).unwrap();
        assert!(r5.is_in_u(&r5.identity()));
        assert!(r5.is_in_u(&r5.swap()));
        assert!(!r5.is_in_u(&r5.diag(&r5.z())));
        assert!(r5.is_in_u(&r5.y_matrix()));
        // unit determinant with residue 2 is rejected
        let golden = r5.add(&r5.z(), &r5.one());
        assert!(r5.is_unit(&golden));
        assert!(!r5.is_in_u(&r5.diag(&golden)));
    }

    #[test]
    fn decomposition_examples() {
        let r = Ring::new(7).unwrap();
        let a = r.y_matrix();
        let parts = r.decompose_u(&r.mat(1, 7, 0, 1)).unwrap();
        assert_eq!((parts.delta.clone(), parts.swap), (r.one(), false));
        assert_eq!(parts.a1, r.mat(1, 7, 0, 1));
        let parts = r.decompose_u(&a).unwrap();
        assert!(parts.swap);
        assert_eq!(r.reassemble(&parts), a);
        assert!(r.decompose_u(&r.diag(&r.z())).is_err());
        let mut rng = trial_rng(7, 0);
        let lambda = random_unit_one(&r, &mut rng);
        let a1 = random_u1_generator(&r, &mut rng);
        let m = r.mat_mul(&r.diag(&lambda), &a1);
        let parts = r.decompose_u(&m).unwrap();
        assert_eq!(r.reassemble(&parts), m);
    }

    #[test]
    fn solve_t_examples() {
        let r = Ring::new(5).unwrap();
        let id = r.identity();
        let t = r.solve_t(&id).unwrap().unwrap();
        assert!(t.is_zero());
        assert_eq!(r.colsum_exponent(&id, &t), Some(0));
        // c ≡ d: (1 0; 1 1)
        let s = r.elementary_lower(&r.one());
        assert_eq!(r.solve_t(&s).unwrap(), None);
        assert_eq!(r.colsum_exponent(&s, &r.zero()), Some(1));
        assert!(r.solve_t(&r.diag(&r.from_int(-1))).is_err());
    }

    #[test]
    fn witness_examples() {
        let r = Ring::new(5).unwrap();
        let q = r.from_int(5);
        let w = r.involution_witness(&q, &r.identity()).unwrap();
        assert_eq!(w.y_prime, r.y_matrix());
        assert_eq!(w.x, r.elementary(&q));
        assert!(w.verified());
        let w = r.involution_witness(&r.zero(), &r.identity()).unwrap();
        assert_eq!(w.x, r.identity());
        assert!(w.in_u);
        assert!(r.involution_witness(&r.one(), &r.identity()).is_err());
    }

    #[test]
    fn residue_groups() {
        for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let rep = residue_u1_group(p).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        let mut acc = FP_ID;
        for _ in 0..7 {
            acc = fp_mul(&acc, &t_matrix(1, 7), 7);
        }
        assert_eq!(acc, FP_ID);
        assert!(residue_u1_group(4).is_err());
    }

    #[test]
    fn seeded_sweeps() {
        let r = Ring::new(7).unwrap();
        let w = witness_trials(&r, 20, 1).unwrap();
        assert!(w.summary.all_passed(), "{w:?}");
        assert_eq!(w, witness_trials(&r, 20, 1).unwrap());
        assert!(decomposition_trials(&r, 20, 1).all_passed());
        assert!(closure_trials(&r, 20, 1).all_passed());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn residue_is_a_homomorphism(seed in any::<u64>(), pi in 0usize..4) {
            let r = Ring::new([3, 5, 7, 11][pi]).unwrap();
            let mut rng = trial_rng(seed, 0);
            let x = random_element(&r, &mut rng, 50);
            let y = random_element(&r, &mut rng, 50);
            let p = r.p();
            prop_assert_eq!(r.residue(&r.add(&x, &y)), (r.residue(&x) + r.residue(&y)) % p);
            prop_assert_eq!(r.residue(&r.mul(&x, &y)), r.residue(&x) * r.residue(&y) % p);
            prop_assert_eq!(r.residue(&random_q(&r, &mut rng)), 0);
        }

        #[test]
        fn ring_axioms(seed in any::<u64>()) {
            let r = Ring::new(7).unwrap();
            let mut rng = trial_rng(seed, 1);
            let [x, y, w] = [0, 1, 2].map(|_| random_element(&r, &mut rng, 20));
            prop_assert_eq!(r.mul(&r.mul(&x, &y), &w), r.mul(&x, &r.mul(&y, &w)));
            prop_assert_eq!(r.mul(&x, &y), r.mul(&y, &x));
            prop_assert_eq!(r.mul(&x, &r.add(&y, &w)), r.add(&r.mul(&x, &y), &r.mul(&x, &w)));
            prop_assert_eq!(r.norm(&r.mul(&x, &y)), r.norm(&x) * r.norm(&y));
        }

        #[test]
        fn sl2_products_have_determinant_one(seed in any::<u64>()) {
            let r = Ring::new(5).unwrap();
            let mut rng = trial_rng(seed, 2);
            let s = random_sl2(&r, &mut rng, 6);
            prop_assert_eq!(r.det(&s), r.one());
        }
    }
}
