//! Dense multivectors of the 5-dimensional conformal algebra.
//!
//! Coefficients are stored over the orthogonal basis `(e1, e2, e3, e+, e-)`
//! with signature `(+, +, +, +, -)`. A basis blade is identified by a 5-bit
//! mask: bit 0 is `e1`, bit 4 is `e-`. The null vectors `e0` and `e∞` are not
//! basis elements here; they are derived as `e0 = ½(e- − e+)` and
//! `e∞ = e- + e+`.
//!
//! The inner product is the left contraction. On two vectors it is the
//! signature-weighted dot product, which is the only case the geometry code
//! relies on.

use std::fmt;
use std::ops::{Add, AddAssign, BitOr, BitXor, Mul, Neg, Sub};

use crate::error::Error;

/// Number of basis vectors.
pub const DIM: usize = 5;
/// Number of basis blades.
pub const BLADES: usize = 1 << DIM;

pub const E1: usize = 0b00001;
pub const E2: usize = 0b00010;
pub const E3: usize = 0b00100;
pub const EPLUS: usize = 0b01000;
pub const EMINUS: usize = 0b10000;

/// Diagonal metric over `(e1, e2, e3, e+, e-)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metric {
    signature: [f64; DIM],
}

impl Metric {
    /// The conformal signature `(+1, +1, +1, +1, -1)`.
    pub const CONFORMAL: Metric = Metric {
        signature: [1.0, 1.0, 1.0, 1.0, -1.0],
    };

    /// Arbitrary diagonal metric. Only the self-test uses anything but
    /// [`Metric::CONFORMAL`], to prove its checks can fail.
    pub const fn diagonal(signature: [f64; DIM]) -> Self {
        Metric { signature }
    }

    pub fn signature(&self) -> [f64; DIM] {
        self.signature
    }

    /// Product of basis blades `a * b`: returns the resulting blade and its
    /// scalar factor (reordering sign times the metric of shared vectors).
    #[inline]
    pub fn blade_product(&self, a: usize, b: usize) -> (usize, f64) {
        let mut factor = reorder_sign(a, b);
        let mut common = a & b;
        let mut i = 0;
        while common != 0 {
            if common & 1 != 0 {
                factor *= self.signature[i];
            }
            common >>= 1;
            i += 1;
        }
        (a ^ b, factor)
    }

    pub fn geometric(&self, a: &Multivector, b: &Multivector) -> Multivector {
        self.product(a, b, |_, _| true)
    }

    /// Left contraction `a ⌋ b`: keeps blade pairs where `a ⊆ b`.
    pub fn inner(&self, a: &Multivector, b: &Multivector) -> Multivector {
        self.product(a, b, |x, y| x & !y == 0)
    }

    pub fn outer(&self, a: &Multivector, b: &Multivector) -> Multivector {
        self.product(a, b, |x, y| x & y == 0)
    }

    #[inline]
    fn product(
        &self,
        a: &Multivector,
        b: &Multivector,
        keep: impl Fn(usize, usize) -> bool,
    ) -> Multivector {
        // Error-free products and sums, folded in at the end. Conformal points
        // carry e+ and e- coefficients that differ by exactly 1 and grow with
        // p², so plain accumulation loses everything to cancellation.
        let mut hi = [0.0; BLADES];
        let mut lo = [0.0; BLADES];
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0.0 || !keep(i, j) {
                    continue;
                }
                let (blade, factor) = self.blade_product(i, j);
                if factor == 0.0 {
                    continue;
                }
                let x = factor * ca;
                let p = x * cb;
                let pe = x.mul_add(cb, -p);
                let s = hi[blade] + p;
                let z = s - hi[blade];
                let se = (hi[blade] - (s - z)) + (p - z);
                hi[blade] = s;
                lo[blade] += se + pe;
            }
        }
        let mut out = [0.0; BLADES];
        for k in 0..BLADES {
            out[k] = hi[k] + lo[k];
        }
        Multivector { coeffs: out }
    }
}

impl Default for Metric {
    fn default() -> Self {
        Metric::CONFORMAL
    }
}

/// Sign picked up when the concatenated blade `a b` is sorted into canonical
/// (ascending) order: one flip per transposition.
#[inline]
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Grade of a basis blade.
#[inline]
pub fn blade_grade(blade: usize) -> usize {
    blade.count_ones() as usize
}

#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    coeffs: [f64; BLADES],
}

impl Multivector {
    pub const ZERO: Multivector = Multivector {
        coeffs: [0.0; BLADES],
    };

    pub fn from_coeffs(coeffs: [f64; BLADES]) -> Self {
        Multivector { coeffs }
    }

    pub fn scalar(value: f64) -> Self {
        Self::blade(0, value)
    }

    /// `value` times the basis blade with bitmask `blade`.
    ///
    /// Panics if `blade >= 32`; use [`mbasis`] for checked construction.
    pub fn blade(blade: usize, value: f64) -> Self {
        let mut coeffs = [0.0; BLADES];
        coeffs[blade] = value;
        Multivector { coeffs }
    }

    /// Grade-1 element from coefficients over `(e1, e2, e3, e+, e-)`.
    pub fn vector(components: [f64; DIM]) -> Self {
        let mut coeffs = [0.0; BLADES];
        for (i, c) in components.into_iter().enumerate() {
            coeffs[1 << i] = c;
        }
        Multivector { coeffs }
    }

    pub fn coeffs(&self) -> &[f64; BLADES] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: usize) -> f64 {
        self.coeffs[blade]
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Projection onto grade `k`.
    pub fn grade(&self, k: usize) -> Multivector {
        let mut out = *self;
        for (blade, c) in out.coeffs.iter_mut().enumerate() {
            if blade_grade(blade) != k {
                *c = 0.0;
            }
        }
        out
    }

    pub fn geometric(&self, rhs: &Multivector) -> Multivector {
        Metric::CONFORMAL.geometric(self, rhs)
    }

    pub fn inner(&self, rhs: &Multivector) -> Multivector {
        Metric::CONFORMAL.inner(self, rhs)
    }

    pub fn outer(&self, rhs: &Multivector) -> Multivector {
        Metric::CONFORMAL.outer(self, rhs)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Componentwise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl Default for Multivector {
    fn default() -> Self {
        Multivector::ZERO
    }
}

/// Basis blade from a set of 1-based basis indices, `1..=3` for `e1..e3`,
/// `4` for `e+` and `5` for `e-`. Indices are merged in ascending order, so
/// `{2, 1}` is the same blade as `{1, 2}`; repeated indices are ignored.
pub fn mbasis(indices: &[usize]) -> Result<Multivector, Error> {
    let mut blade = 0usize;
    for &i in indices {
        if !(1..=DIM).contains(&i) {
            return Err(Error::InvalidBasisIndex(i));
        }
        blade |= 1 << (i - 1);
    }
    Ok(Multivector::blade(blade, 1.0))
}

/// `e0 = ½(e- − e+)`, the conformal origin.
pub fn null_zero() -> Multivector {
    Multivector::vector([0.0, 0.0, 0.0, -0.5, 0.5])
}

/// `e∞ = e- + e+`, the point at infinity.
pub fn null_inf() -> Multivector {
    Multivector::vector([0.0, 0.0, 0.0, 1.0, 1.0])
}

pub fn geometric(a: &Multivector, b: &Multivector) -> Multivector {
    a.geometric(b)
}

pub fn inner(a: &Multivector, b: &Multivector) -> Multivector {
    a.inner(b)
}

pub fn outer(a: &Multivector, b: &Multivector) -> Multivector {
    a.outer(b)
}

pub fn scalar_part(a: &Multivector) -> f64 {
    a.scalar_part()
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        self
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(mut self) -> Multivector {
        for a in self.coeffs.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, rhs: f64) -> Multivector {
        for a in self.coeffs.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

/// Geometric product.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric(&rhs)
    }
}

/// Outer product.
impl BitXor for Multivector {
    type Output = Multivector;
    fn bitxor(self, rhs: Multivector) -> Multivector {
        self.outer(&rhs)
    }
}

/// Inner product (left contraction).
impl BitOr for Multivector {
    type Output = Multivector;
    fn bitor(self, rhs: Multivector) -> Multivector {
        self.inner(&rhs)
    }
}

const NAMES: [&str; DIM] = ["e1", "e2", "e3", "e+", "e-"];

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (blade, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if blade != 0 {
                let name: Vec<&str> = (0..DIM)
                    .filter(|i| blade & (1 << i) != 0)
                    .map(|i| NAMES[i])
                    .collect();
                write!(f, "*{}", name.join("^"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize) -> Multivector {
        mbasis(&[i]).unwrap()
    }

    #[test]
    fn mbasis_builds_blades() {
        assert_eq!(mbasis(&[]).unwrap(), Multivector::scalar(1.0));
        assert_eq!(mbasis(&[1]).unwrap().coeff(E1), 1.0);
        assert_eq!(mbasis(&[1, 2]).unwrap(), Multivector::blade(E1 | E2, 1.0));
        assert!(matches!(mbasis(&[0]), Err(Error::InvalidBasisIndex(0))));
        assert!(matches!(mbasis(&[6]), Err(Error::InvalidBasisIndex(6))));
    }

    #[test]
    fn null_vectors() {
        let e0 = null_zero();
        let einf = null_inf();
        assert_eq!(e0, 0.5 * (e(5) - e(4)));
        assert_eq!(einf, e(5) + e(4));
        assert_eq!(e0.geometric(&e0).scalar_part(), 0.0);
        assert_eq!(einf.geometric(&einf).scalar_part(), 0.0);
        assert_eq!(e0.inner(&einf), Multivector::scalar(-1.0));
        // e0 e∞ also carries the bivector e+^e-.
        let full = e0.geometric(&einf);
        assert_eq!(full.scalar_part(), -1.0);
        assert_eq!(full.coeff(EPLUS | EMINUS), -1.0);
    }

    #[test]
    fn outer_examples() {
        assert!(outer(&e(1), &e(1)).is_zero());
        assert_eq!(outer(&e(1), &e(2)), Multivector::blade(E1 | E2, 1.0));
        assert_eq!(outer(&e(2), &e(1)), Multivector::blade(E1 | E2, -1.0));
        assert_eq!(
            outer(&(e(1) + e(2)), &e(2)),
            Multivector::blade(E1 | E2, 1.0)
        );
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&e(1), &e(1)), Multivector::scalar(1.0));
        assert_eq!(inner(&e(5), &e(5)), Multivector::scalar(-1.0));
        assert!(inner(&e(1), &e(2)).is_zero());
        // left contraction of a vector onto a bivector
        let b = Multivector::blade(E1 | E2, 1.0);
        assert_eq!(inner(&e(1), &b), e(2));
        assert_eq!(inner(&e(2), &b), -e(1));
        assert!(inner(&b, &e(1)).is_zero());
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric(&e(1), &e(1)), Multivector::scalar(1.0));
        assert_eq!(geometric(&e(4), &e(4)), Multivector::scalar(1.0));
        assert_eq!(geometric(&e(5), &e(5)), Multivector::scalar(-1.0));
        assert_eq!(geometric(&e(1), &e(2)), Multivector::blade(E1 | E2, 1.0));
        let i = Multivector::blade(E1 | E2, 1.0);
        assert_eq!(geometric(&i, &i), Multivector::scalar(-1.0));
    }

    #[test]
    fn scalar_part_examples() {
        assert_eq!(scalar_part(&Multivector::scalar(5.0)), 5.0);
        assert_eq!(scalar_part(&e(1)), 0.0);
    }

    #[test]
    fn reorder_sign_by_transposition_count() {
        // e2 e1 -> -e1 e2
        assert_eq!(reorder_sign(E2, E1), -1.0);
        assert_eq!(reorder_sign(E1, E2), 1.0);
        // (e2 e3) e1 needs two swaps
        assert_eq!(reorder_sign(E2 | E3, E1), 1.0);
        // (e3) (e1 e2) needs two swaps
        assert_eq!(reorder_sign(E3, E1 | E2), 1.0);
        assert_eq!(reorder_sign(E1 | E2 | E3, E1 | E2 | E3), -1.0);
    }

    #[test]
    fn display() {
        assert_eq!(Multivector::ZERO.to_string(), "0");
        assert_eq!((e(1) + 2.0 * e(5)).to_string(), "1*e1 + 2*e-");
    }

    fn mv() -> impl Strategy<Value = Multivector> {
        prop::array::uniform32(-1.0f64..1.0).prop_map(Multivector::from_coeffs)
    }

    fn vec5(scale: f64) -> impl Strategy<Value = Multivector> {
        prop::array::uniform5(-scale..scale).prop_map(Multivector::vector)
    }

    proptest! {
        #[test]
        fn geometric_is_associative(a in mv(), b in mv(), c in mv()) {
            let left = (a * b) * c;
            let right = a * (b * c);
            prop_assert!(left.approx_eq(&right, 1e-10), "{left} vs {right}");
        }

        #[test]
        fn outer_is_associative(a in mv(), b in mv(), c in mv()) {
            prop_assert!(((a ^ b) ^ c).approx_eq(&(a ^ (b ^ c)), 1e-10));
        }

        #[test]
        fn products_distribute(a in mv(), b in mv(), c in mv()) {
            prop_assert!((a * (b + c)).approx_eq(&(a * b + a * c), 1e-10));
            prop_assert!((a ^ (b + c)).approx_eq(&((a ^ b) + (a ^ c)), 1e-10));
            prop_assert!((a | (b + c)).approx_eq(&((a | b) + (a | c)), 1e-10));
        }

        #[test]
        fn vector_outer_self_vanishes(x in vec5(1e3)) {
            let scale = x.max_abs().max(1.0);
            prop_assert!((x ^ x).max_abs() / (scale * scale) <= 1e-12);
        }

        #[test]
        fn vector_product_splits(x in vec5(10.0), y in vec5(10.0)) {
            let rest = x * y - (x | y) - (x ^ y);
            prop_assert!(rest.max_abs() <= 1e-12);
            let s = x.coeffs();
            let t = y.coeffs();
            let dot = s[E1] * t[E1] + s[E2] * t[E2] + s[E3] * t[E3] + s[EPLUS] * t[EPLUS]
                - s[EMINUS] * t[EMINUS];
            prop_assert!(((x | y).scalar_part() - dot).abs() <= 1e-12);
        }

        #[test]
        fn grades_partition(a in mv()) {
            let sum = (0..=DIM).fold(Multivector::ZERO, |acc, k| acc + a.grade(k));
            prop_assert_eq!(sum, a);
        }
    }
}
