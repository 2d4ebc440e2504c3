//! Dense geometric algebra of the five-dimensional space with signature (4,1).
//!
//! The basis is `{e0, e1, e2, e3, e4}` with `e0² = -1` and `e1² = … = e4² = +1`.
//! A multivector stores one coefficient per basis blade. Blades are indexed by
//! bitmask (bit `i` set when `e_i` is a factor) and each blade is taken with its
//! generators in ascending order, so index `0b00110` is `e1e2`.

use std::fmt;
use std::ops::{Add, AddAssign, BitOr, BitXor, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Number of generating vectors.
pub const DIM: usize = 5;
/// Number of basis blades.
pub const BLADES: usize = 1 << DIM;

/// Bitmask of the pseudoscalar `e0e1e2e3e4`.
pub const PSEUDOSCALAR_MASK: usize = BLADES - 1;

const fn blade_product_sign(a: usize, b: usize) -> f64 {
    // Count transpositions needed to sort the concatenated generator list.
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    // e0 is the only generator with negative square.
    if a & b & 1 != 0 {
        swaps += 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

const fn build_sign_table() -> [[f64; BLADES]; BLADES] {
    let mut table = [[0.0; BLADES]; BLADES];
    let mut a = 0;
    while a < BLADES {
        let mut b = 0;
        while b < BLADES {
            table[a][b] = blade_product_sign(a, b);
            b += 1;
        }
        a += 1;
    }
    table
}

/// `e_a e_b = SIGN[a][b] · e_{a ^ b}`
static SIGN: [[f64; BLADES]; BLADES] = build_sign_table();

/// Grade of the blade with the given bitmask.
#[inline]
pub const fn blade_grade(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// A grade in `0..=5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(u8);

impl Grade {
    pub const SCALAR: Grade = Grade(0);
    pub const VECTOR: Grade = Grade(1);
    pub const BIVECTOR: Grade = Grade(2);
    pub const TRIVECTOR: Grade = Grade(3);
    pub const QUADVECTOR: Grade = Grade(4);
    pub const PSEUDOSCALAR: Grade = Grade(5);

    pub fn new(k: usize) -> Result<Self> {
        if k <= DIM {
            Ok(Grade(k as u8))
        } else {
            Err(Error::InvalidGrade(k))
        }
    }

    #[inline]
    pub fn value(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Grade> {
        (0..=DIM as u8).map(Grade)
    }
}

impl TryFrom<usize> for Grade {
    type Error = Error;

    fn try_from(k: usize) -> Result<Self> {
        Grade::new(k)
    }
}

/// Element of G(4,1).
#[derive(Clone, Copy, PartialEq, Default)]
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

    pub fn coeffs(&self) -> &[f64; BLADES] {
        &self.coeffs
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::ZERO;
        m.coeffs[0] = s;
        m
    }

    /// Unit basis blade for the given bitmask.
    pub fn blade(mask: usize) -> Self {
        assert!(mask < BLADES, "blade mask {mask} out of range");
        let mut m = Self::ZERO;
        m.coeffs[mask] = 1.0;
        m
    }

    /// Basis vector `e_i`, `i` in `0..5`.
    pub fn basis(i: usize) -> Self {
        assert!(i < DIM, "basis index {i} out of range");
        Self::blade(1 << i)
    }

    /// Vector with coefficients along `e0..e4`.
    pub fn vector(c: [f64; DIM]) -> Self {
        let mut m = Self::ZERO;
        for (i, v) in c.into_iter().enumerate() {
            m.coeffs[1 << i] = v;
        }
        m
    }

    /// `I = e0e1e2e3e4`.
    pub fn pseudoscalar() -> Self {
        Self::blade(PSEUDOSCALAR_MASK)
    }

    /// Coefficient of `e_i` in the grade-1 part.
    #[inline]
    pub fn vector_coeff(&self, i: usize) -> f64 {
        self.coeffs[1 << i]
    }

    #[inline]
    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn geometric_product(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::ZERO;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                out.coeffs[i ^ j] += SIGN[i][j] * a * b;
            }
        }
        out
    }

    /// Grade-raising part of the product, `⟨A_r B_s⟩_{r+s}` summed over grade pairs.
    pub fn outer_product(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::ZERO;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 || i & j != 0 {
                    continue;
                }
                out.coeffs[i | j] += SIGN[i][j] * a * b;
            }
        }
        out
    }

    /// Grade-lowering part of the product, `⟨A_r B_s⟩_{|r-s|}` summed over grade pairs.
    pub fn inner_product(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::ZERO;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let gi = blade_grade(i);
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let gj = blade_grade(j);
                if blade_grade(i ^ j) == gi.abs_diff(gj) {
                    out.coeffs[i ^ j] += SIGN[i][j] * a * b;
                }
            }
        }
        out
    }

    /// Scalar part of the geometric product, without forming the full product.
    pub fn scalar_product(&self, other: &Multivector) -> f64 {
        (0..BLADES)
            .map(|i| SIGN[i][i] * self.coeffs[i] * other.coeffs[i])
            .sum()
    }

    pub fn grade_project(&self, k: Grade) -> Multivector {
        let mut out = Multivector::ZERO;
        for (i, c) in self.coeffs.iter().enumerate() {
            if blade_grade(i) == k.value() {
                out.coeffs[i] = *c;
            }
        }
        out
    }

    pub(crate) fn grade(&self, k: usize) -> Multivector {
        self.grade_project(Grade(k as u8))
    }

    pub fn reverse(&self) -> Multivector {
        let mut out = *self;
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let g = blade_grade(i);
            if (g * (g.saturating_sub(1)) / 2) % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// Duality, `I a`.
    pub fn dual(&self) -> Multivector {
        Multivector::pseudoscalar().geometric_product(self)
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the coefficient array. Not a metric quantity; used for
    /// scale-relative tolerances.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Grades carrying a coefficient above `rel_tol` times the largest coefficient.
    pub fn grades_present(&self, rel_tol: f64) -> Vec<usize> {
        let cut = self.max_abs() * rel_tol;
        let mut present = [false; DIM + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.abs() > cut {
                present[blade_grade(i)] = true;
            }
        }
        (0..=DIM).filter(|&g| present[g]).collect()
    }

    /// The single grade of a homogeneous multivector, if it has one.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        match self.grades_present(HOMOGENEITY_TOL).as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    /// `√|⟨a ã⟩₀|` together with the sign of `⟨a ã⟩₀`.
    pub fn magnitude(&self) -> Result<Magnitude> {
        if self.max_abs() == 0.0 {
            return Ok(Magnitude { mag: 0.0, sign: 0 });
        }
        if self.homogeneous_grade().is_none() {
            return Err(Error::NotHomogeneous);
        }
        let sq = self.scalar_product(&self.reverse());
        let sign = if sq > 0.0 {
            1
        } else if sq < 0.0 {
            -1
        } else {
            0
        };
        Ok(Magnitude {
            mag: sq.abs().sqrt(),
            sign,
        })
    }

    /// Sandwich `R a R̃` with an arbitrary even element `R`.
    pub fn sandwich(&self, a: &Multivector) -> Multivector {
        self.geometric_product(a).geometric_product(&self.reverse())
    }

    /// Commutator product `½(ab - ba)`.
    pub fn commutator(&self, other: &Multivector) -> Multivector {
        (self.geometric_product(other) - other.geometric_product(self)) * 0.5
    }
}

/// Relative tolerance below which a grade is considered absent.
pub const HOMOGENEITY_TOL: f64 = 1e-12;

/// Result of [`Multivector::magnitude`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Magnitude {
    pub mag: f64,
    /// Sign of `⟨a ã⟩₀`: `1`, `-1` or `0`.
    pub sign: i8,
}

impl Index<usize> for Multivector {
    type Output = f64;
    fn index(&self, mask: usize) -> &f64 {
        &self.coeffs[mask]
    }
}

impl IndexMut<usize> for Multivector {
    fn index_mut(&mut self, mask: usize) -> &mut f64 {
        &mut self.coeffs[mask]
    }
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
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(mut self) -> Multivector {
        for c in self.coeffs.iter_mut() {
            *c = -*c;
        }
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, s: f64) -> Multivector {
        for c in self.coeffs.iter_mut() {
            *c *= s;
        }
        self
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, m: Multivector) -> Multivector {
        m * self
    }
}

impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(self, s: f64) -> Multivector {
        self * (1.0 / s)
    }
}

/// Geometric product.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs)
    }
}

/// Outer product.
impl BitXor for Multivector {
    type Output = Multivector;
    fn bitxor(self, rhs: Multivector) -> Multivector {
        self.outer_product(&rhs)
    }
}

/// Inner product.
impl BitOr for Multivector {
    type Output = Multivector;
    fn bitor(self, rhs: Multivector) -> Multivector {
        self.inner_product(&rhs)
    }
}

fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut s = String::from("e");
    for i in 0..DIM {
        if mask & (1 << i) != 0 {
            s.push(char::from(b'0' + i as u8));
        }
    }
    s
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| format!("{c}*{}", blade_name(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Even-grade element with positive scalar `R R̃`, acting by `A ↦ R A R̃`.
///
/// Rotors are not required to be normalized; the homogeneous model tolerates
/// any positive `R R̃`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotor {
    even: Multivector,
    norm_sq: f64,
}

/// Relative tolerance on odd grades and on the non-scalar part of `R R̃`.
pub const ROTOR_TOL: f64 = 1e-9;

impl Rotor {
    pub fn identity() -> Self {
        Rotor {
            even: Multivector::scalar(1.0),
            norm_sq: 1.0,
        }
    }

    /// Validates that `m` is even with scalar, positive `m m̃`.
    pub fn new(m: Multivector) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = m.max_abs();
        if scale == 0.0 {
            return Err(Error::InvalidRotor("zero element"));
        }
        let odd_max = (0..BLADES)
            .filter(|&i| blade_grade(i) % 2 == 1)
            .fold(0.0f64, |acc, i| acc.max(m[i].abs()));
        if odd_max > ROTOR_TOL * scale {
            return Err(Error::InvalidRotor("odd-grade terms present"));
        }
        let rr = m.geometric_product(&m.reverse());
        let norm_sq = rr.scalar_part();
        let mut rest = rr;
        rest[0] = 0.0;
        if norm_sq <= ROTOR_TOL * scale * scale {
            return Err(Error::InvalidRotor("R R̃ is not positive"));
        }
        if rest.max_abs() > ROTOR_TOL * norm_sq.abs().max(scale * scale) {
            return Err(Error::InvalidRotor("R R̃ is not a scalar"));
        }
        Ok(Rotor { even: m, norm_sq })
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.even
    }

    /// Scalar part of `R R̃`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn normalized(&self) -> Rotor {
        let s = 1.0 / self.norm_sq.sqrt();
        Rotor {
            even: self.even * s,
            norm_sq: 1.0,
        }
    }

    pub fn reverse(&self) -> Multivector {
        self.even.reverse()
    }

    /// `R a R̃`.
    pub fn apply(&self, a: &Multivector) -> Multivector {
        self.even.sandwich(a)
    }

    /// Composition: applying the result equals applying `first` then `self`.
    pub fn compose(&self, first: &Rotor) -> Rotor {
        let m = self.even.geometric_product(&first.even);
        Rotor {
            even: m,
            norm_sq: self.norm_sq * first.norm_sq,
        }
    }
}

/// Largest number of series terms used by [`exp_bivector`].
pub const EXP_MAX_TERMS: usize = 64;
/// Series terms below this coefficient norm stop the summation.
pub const EXP_TERM_TOL: f64 = 1e-15;

/// `exp(B)` for a bivector `B`, by scaling and squaring on the power series.
pub fn exp_bivector(b: &Multivector) -> Result<Rotor> {
    if !b.is_finite() {
        return Err(Error::NonFinite);
    }
    if b.max_abs() == 0.0 {
        return Ok(Rotor::identity());
    }
    if b.homogeneous_grade() != Some(2) {
        return Err(Error::NotBivector);
    }
    let norm = b.coeff_norm();
    let mut squarings = 0u32;
    let mut scaled = *b;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
        scaled = *b / f64::from(2u32).powi(squarings as i32);
    }

    let mut sum = Multivector::scalar(1.0);
    let mut term = Multivector::scalar(1.0);
    let mut converged = false;
    for k in 1..EXP_MAX_TERMS {
        term = term.geometric_product(&scaled) / k as f64;
        sum += term;
        if term.coeff_norm() < EXP_TERM_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SeriesDiverged(EXP_MAX_TERMS));
    }
    for _ in 0..squarings {
        sum = sum.geometric_product(&sum);
    }
    // Drop rounding noise in the odd grades; the exact result is even.
    let mut even = Multivector::ZERO;
    for i in (0..BLADES).filter(|&i| blade_grade(i) % 2 == 0) {
        even[i] = sum[i];
    }
    Rotor::new(even)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Multivector {
        Multivector::basis(i)
    }

    fn close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn orthogonal_vectors_anticommute() {
        let e12 = e(1) * e(2);
        assert_eq!(e12, Multivector::blade(0b00110));
        assert_eq!(e(2) * e(1), -e12);
    }

    #[test]
    fn metric_signs() {
        assert_eq!(e(0) * e(0), Multivector::scalar(-1.0));
        for i in 1..DIM {
            assert_eq!(e(i) * e(i), Multivector::scalar(1.0));
        }
    }

    #[test]
    fn null_basis_products() {
        let n = e(4) + e(0);
        let nbar = e(4) - e(0);
        assert_eq!(n * nbar + nbar * n, Multivector::scalar(4.0));
        assert_eq!(n | nbar, Multivector::scalar(2.0));
        assert_eq!(n * n, Multivector::ZERO);
    }

    #[test]
    fn wedge_basics() {
        let a = Multivector::vector([0.3, -1.0, 2.0, 0.5, 4.0]);
        assert_eq!((a ^ a).max_abs(), 0.0);
        assert_eq!(e(1) ^ e(2) ^ e(3), Multivector::blade(0b01110));
    }

    #[test]
    fn vector_dot_bivector_matches_commutator_form() {
        let a = Multivector::vector([0.2, 1.0, -0.5, 0.7, 1.5]);
        let b = (e(0) ^ e(1)) * 2.0 + (e(2) ^ e(4)) * -0.3 + (e(1) ^ e(3)) * 1.1;
        let lhs = a | b;
        let rhs = (a * b - b * a) * 0.5;
        assert!(close(&lhs, &rhs, 1e-14));
    }

    #[test]
    fn grade_projection() {
        let m = Multivector::scalar(1.0) + e(1) + e(1) * e(2);
        assert_eq!(m.grade_project(Grade::VECTOR), e(1));
        assert!(Grade::new(6).is_err());
        assert_eq!(Grade::new(6), Err(Error::InvalidGrade(6)));
    }

    #[test]
    fn reversion_signs() {
        assert_eq!((e(1) * e(2)).reverse(), -(e(1) * e(2)));
        let i = Multivector::pseudoscalar();
        assert_eq!(i.reverse(), i);
        let t = e(0) ^ e(2) ^ e(3);
        assert_eq!(t.reverse(), -t);
        let q = e(0) ^ e(1) ^ e(2) ^ e(3);
        assert_eq!(q.reverse(), q);
    }

    #[test]
    fn pseudoscalar_squares_to_minus_one() {
        let i = Multivector::pseudoscalar();
        assert_eq!(i * i, Multivector::scalar(-1.0));
        assert_eq!(Multivector::scalar(1.0).dual(), i);
    }

    #[test]
    fn magnitude_cases() {
        assert_eq!(e(1).magnitude().unwrap(), Magnitude { mag: 1.0, sign: 1 });
        let n = e(4) + e(0);
        assert_eq!(n.magnitude().unwrap(), Magnitude { mag: 0.0, sign: 0 });
        let mixed = Multivector::scalar(1.0) + e(1);
        assert_eq!(mixed.magnitude(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let r = exp_bivector(&Multivector::ZERO).unwrap();
        assert_eq!(*r.as_multivector(), Multivector::scalar(1.0));
    }

    #[test]
    fn exp_rejects_non_bivectors() {
        assert_eq!(exp_bivector(&e(1)), Err(Error::NotBivector));
    }

    #[test]
    fn exp_plane_rotation_matches_rotation_matrix() {
        for k in 0..12 {
            let theta = -3.0 + 0.55 * k as f64;
            // exp(-θ/2 e1e2) turns e1 towards e2.
            let r = exp_bivector(&(e(1) * e(2) * (-theta / 2.0))).unwrap();
            let rotated = r.apply(&e(1));
            let expected = e(1) * theta.cos() + e(2) * theta.sin();
            assert!(close(&rotated, &expected, 1e-13), "theta={theta}");
            // opposite sign gives the transposed rotation
            let r = exp_bivector(&(e(1) * e(2) * (theta / 2.0))).unwrap();
            let expected = e(1) * theta.cos() - e(2) * theta.sin();
            assert!(close(&r.apply(&e(1)), &expected, 1e-13));
        }
    }

    #[test]
    fn exp_boost_matches_hyperbolic_functions() {
        // e0e1 squares to +1, giving a boost.
        let phi = 1.7_f64;
        let r = exp_bivector(&(e(0) * e(1) * phi)).unwrap();
        let expected = Multivector::scalar(phi.cosh()) + e(0) * e(1) * phi.sinh();
        assert!(close(r.as_multivector(), &expected, 1e-12));
    }

    #[test]
    fn rotor_validation() {
        assert!(Rotor::new(e(1)).is_err());
        assert!(Rotor::new(Multivector::ZERO).is_err());
        // e0e1 squares to +1, so 1 + e0e1 has R R̃ = 0.
        assert!(Rotor::new(Multivector::scalar(1.0) + e(0) * e(1)).is_err());
        assert!(Rotor::new(Multivector::scalar(2.0)).is_ok());
    }

    #[test]
    fn identity_rotor_is_identity() {
        let a = Multivector::vector([1.0, 2.0, 3.0, 4.0, 5.0]) + e(1) * e(3);
        assert_eq!(Rotor::identity().apply(&a), a);
    }
}
