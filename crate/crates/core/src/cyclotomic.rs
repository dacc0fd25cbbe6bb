//! Exact arithmetic in the cyclotomic field Q(z), z a primitive m-th root of unity.
//!
//! Elements are stored as rational coefficient vectors in the power basis
//! `1, z, ..., z^(phi(m)-1)` of `Q[x]/(Phi_m)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
///
/// Computed as `(x^m - 1) / prod_{k | m, k < m} Phi_k`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for k in 1..m {
        if m % k == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(k));
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

// Exact division of integer polynomials by a monic divisor.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Euler's totient, the degree of `Phi_m`.
pub fn totient(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn modulus(m: u32) -> Arc<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(m)
        .or_insert_with(|| {
            Arc::new(
                cyclotomic_polynomial(m)
                    .into_iter()
                    .map(BigRational::from_integer)
                    .collect(),
            )
        })
        .clone()
}

/// An element of Q(z_m).
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
    modulus: Arc<Vec<BigRational>>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}
impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({})", self.order, self)
    }
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        let modulus = modulus(m);
        let n = modulus.len() - 1;
        Cyclotomic { order: m, coeffs: vec![BigRational::zero(); n], modulus }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u32, r: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(m: u32, k: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(k)))
    }

    /// `z^k` for any integer k.
    pub fn root_power(m: u32, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_poly(m, poly)
    }

    /// Reduces an arbitrary coefficient vector (constant term first) modulo `Phi_m`.
    pub fn from_poly(m: u32, mut poly: Vec<BigRational>) -> Self {
        let modulus = modulus(m);
        let n = modulus.len() - 1;
        if poly.len() > n {
            for i in (n..poly.len()).rev() {
                if poly[i].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut poly[i], BigRational::zero());
                for (j, mj) in modulus[..n].iter().enumerate() {
                    if !mj.is_zero() {
                        poly[i - n + j] -= &c * mj;
                    }
                }
            }
            poly.truncate(n);
        }
        poly.resize(n, BigRational::zero());
        Cyclotomic { order: m, coeffs: poly, modulus }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis, constant term first.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if let (Some(a), Some(b)) = (self.small_integers(), other.small_integers()) {
            return Ok(self.mul_small(&a, &b));
        }
        let n = self.coeffs.len();
        let mut poly = vec![BigRational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_poly(self.order, poly))
    }

    // Coefficients as machine integers when all are integral and small.
    fn small_integers(&self) -> Option<Vec<i64>> {
        const LIMIT: i64 = 1 << 40;
        self.coeffs
            .iter()
            .map(|c| {
                if !c.is_integer() {
                    return None;
                }
                c.to_integer().to_i64().filter(|v| v.abs() < LIMIT)
            })
            .collect()
    }

    // Product of integral elements in i128, reduced by the integer modulus.
    fn mul_small(&self, a: &[i64], b: &[i64]) -> Self {
        let n = a.len();
        let mut poly = vec![0i128; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                poly[i + j] += x as i128 * y as i128;
            }
        }
        let modulus: Vec<i128> = self.modulus[..n]
            .iter()
            .map(|c| c.to_integer().to_i128().expect("cyclotomic coefficient fits"))
            .collect();
        for i in (n..2 * n).rev() {
            let c = poly[i];
            if c == 0 {
                continue;
            }
            for (j, &mj) in modulus.iter().enumerate() {
                poly[i - n + j] -= c * mj;
            }
        }
        let coeffs = poly[..n]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        Cyclotomic { order: self.order, coeffs, modulus: self.modulus.clone() }
    }

    /// `sum_i w_i f_i g_i`, reduced once at the end.
    pub fn weighted_dot(fs: &[Cyclotomic], gs: &[Cyclotomic], weights: &[u64]) -> Result<Cyclotomic> {
        assert!(fs.len() == gs.len() && fs.len() == weights.len() && !fs.is_empty());
        let m = fs[0].order;
        for x in fs.iter().chain(gs) {
            if x.order != m {
                return Err(Error::OrderMismatch { left: m, right: x.order });
            }
        }
        let n = fs[0].coeffs.len();
        let small: Option<Vec<(Vec<i64>, Vec<i64>)>> = fs
            .iter()
            .zip(gs)
            .map(|(f, g)| Some((f.small_integers()?, g.small_integers()?)))
            .collect();
        let Some(small) = small else {
            let mut acc = Cyclotomic::zero(m);
            for ((f, g), &w) in fs.iter().zip(gs).zip(weights) {
                let w = BigRational::from_integer(BigInt::from(w));
                acc = acc.checked_add(&f.checked_mul(g)?.scale(&w))?;
            }
            return Ok(acc);
        };
        let mut poly = vec![0i128; 2 * n];
        for ((a, b), &w) in small.iter().zip(weights) {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let xw = x as i128 * w as i128;
                for (j, &y) in b.iter().enumerate() {
                    poly[i + j] += xw * y as i128;
                }
            }
        }
        let poly = poly.into_iter().map(|v| BigRational::from_integer(BigInt::from(v))).collect();
        Ok(Self::from_poly(m, poly))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= r;
        }
        out
    }

    /// Complex conjugation, the automorphism `z -> z^(m-1)`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut poly = vec![BigRational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(m - k) % m] += c;
            }
        }
        Self::from_poly(self.order, poly)
    }

    /// The value as a rational number; fails if any non-constant coefficient survives.
    pub fn rational_part(&self) -> Result<BigRational> {
        if self.coeffs.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::NotRational(self.to_string()));
        }
        Ok(self.coeffs[0].clone())
    }

    /// Rational coefficients rendered as strings, for serialisation.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            /// # Panics
            /// If the two operands live in different cyclotomic fields.
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect("cyclotomic operands of different order")
            }
        }
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = -a.clone();
        }
        out
    }
}
impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
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

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn totients() {
        let naive = |m: u32| (1..=m).filter(|k| num_integer::gcd(*k, m) == 1).count();
        for m in 1..=40 {
            assert_eq!(totient(m), naive(m), "m={m}");
        }
    }

    #[test]
    fn root_power_sum_vanishes() {
        for m in 2..=16u32 {
            let mut acc = Cyclotomic::zero(m);
            for k in 0..m {
                acc = &acc + &Cyclotomic::root_power(m, k as i64);
            }
            assert!(acc.is_zero(), "m={m}");
            assert_eq!(Cyclotomic::root_power(m, m as i64), Cyclotomic::one(m));
        }
    }

    #[test]
    fn order_four_example() {
        let i = Cyclotomic::root_power(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_integer(4, -1));
        assert_eq!(i.conj(), Cyclotomic::root_power(4, 3));
        assert_eq!(i.to_string(), "z");
        assert_eq!(i.conj().to_string(), "-z");
    }

    #[test]
    fn norm_of_root_is_one() {
        for m in 2..=12u32 {
            for k in 0..m as i64 {
                let z = Cyclotomic::root_power(m, k);
                let n = &z * &z.conj();
                assert_eq!(n.rational_part().unwrap(), BigRational::one());
            }
        }
    }

    #[test]
    fn mismatch_and_non_rational_errors() {
        let a = Cyclotomic::one(3);
        let b = Cyclotomic::one(4);
        assert_eq!(a.checked_add(&b), Err(Error::OrderMismatch { left: 3, right: 4 }));
        assert!(a.checked_mul(&b).is_err());
        assert!(Cyclotomic::root_power(3, 1).rational_part().is_err());
    }

    #[test]
    fn display_of_mixed_value() {
        let m = 6;
        let v = &Cyclotomic::from_integer(m, 2) - &Cyclotomic::root_power(m, 1);
        assert_eq!(v.to_string(), "2 - z");
        assert_eq!(Cyclotomic::zero(m).to_string(), "0");
    }
}
