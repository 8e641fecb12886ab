//! Exact arithmetic in the degree-4 cyclotomic field Q(w), where w = e^{i pi/6}
//! is a primitive 12th root of unity with minimal polynomial x^4 - x^2 + 1.
//!
//! Elements are stored on the power basis {1, w, w^2, w^3} with arbitrary-size
//! rational coefficients; every reduction is the linear rewrite w^4 -> w^2 - 1.
//! The field contains i = w^3 and sqrt(3) = 2w - w^3.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, Zero};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CoreError;

/// Exact rational scalar: arbitrary-size, always reduced, denominator > 0.
pub type Rat = Ratio<BigInt>;

/// Parse a rational from `"p"` or `"p/q"`.
pub fn rat_from_str(s: &str) -> Result<Rat, CoreError> {
    let bad = || CoreError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// An element of Q(w) on the power basis: `c0 + c1 w + c2 w^2 + c3 w^3`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    coeffs: [Rat; 4],
}

/// Floating-point image of a field element under w -> e^{i pi/6}.
/// Display and cross-checks only; never ground truth for a certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    /// Bits of working precision used to produce this value (always 53: f64).
    pub precision_hint: u32,
}

impl ComplexApprox {
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

impl CycNum {
    pub fn new(c0: Rat, c1: Rat, c2: Rat, c3: Rat) -> Self {
        CycNum { coeffs: [c0, c1, c2, c3] }
    }

    pub fn from_coeffs(coeffs: [Rat; 4]) -> Self {
        CycNum { coeffs }
    }

    /// Integer coefficients of 1, w, w^2, w^3.
    pub fn from_ints(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        CycNum::new(rat_i64(c0), rat_i64(c1), rat_i64(c2), rat_i64(c3))
    }

    pub fn from_int(n: i64) -> Self {
        CycNum::from_ints(n, 0, 0, 0)
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNum::new(r, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn zero() -> Self {
        CycNum::from_int(0)
    }

    pub fn one() -> Self {
        CycNum::from_int(1)
    }

    /// The generator w itself.
    pub fn omega() -> Self {
        CycNum::from_ints(0, 1, 0, 0)
    }

    /// sqrt(3) = 2w - w^3: the unique square root of 3 with positive real embedding.
    pub fn sqrt3() -> Self {
        CycNum::from_ints(0, 2, 0, -1)
    }

    /// i = w^3.
    pub fn i() -> Self {
        CycNum::from_ints(0, 0, 0, 1)
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part, when the element is rational.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Complex conjugation: the field automorphism w -> w^11 = w - w^3.
    /// An involution fixing the rationals.
    pub fn conj(&self) -> CycNum {
        let [c0, c1, c2, c3] = &self.coeffs;
        CycNum::new(c0 + c2, c1.clone(), -c2.clone(), -(c1 + c3))
    }

    /// Multiplicative inverse, by solving the 4x4 rational system for
    /// multiplication by `self`.
    pub fn inv(&self) -> Result<CycNum, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        // Column j of the multiplication matrix is self * w^j.
        let basis = [
            CycNum::from_ints(1, 0, 0, 0),
            CycNum::from_ints(0, 1, 0, 0),
            CycNum::from_ints(0, 0, 1, 0),
            CycNum::from_ints(0, 0, 0, 1),
        ];
        let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); 5]; 4];
        for (j, b) in basis.iter().enumerate() {
            let col = self.clone() * b.clone();
            for (row, coeff) in m.iter_mut().zip(col.coeffs.iter()) {
                row[j] = coeff.clone();
            }
        }
        m[0][4] = Rat::one();
        // Gaussian elimination over Q; the matrix is invertible since x^4 - x^2 + 1
        // is irreducible and self != 0.
        for col in 0..4 {
            let piv = (col..4)
                .find(|&r| !m[r][col].is_zero())
                .expect("multiplication matrix is invertible");
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= p.clone();
            }
            let pivot_row = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                        *x -= f.clone() * p.clone();
                    }
                }
            }
        }
        Ok(CycNum::new(
            m[0][4].clone(),
            m[1][4].clone(),
            m[2][4].clone(),
            m[3][4].clone(),
        ))
    }

    /// Evaluate under the defining embedding w -> e^{i pi/6}.
    pub fn embed(&self) -> ComplexApprox {
        let z = self.embed_at(Complex64::from_polar(1.0, std::f64::consts::PI / 6.0));
        ComplexApprox { re: z.re, im: z.im, precision_hint: 53 }
    }

    /// Evaluate the coefficient polynomial at an arbitrary complex point
    /// (used with the Galois-conjugate root e^{5 i pi/6} for recognition).
    pub fn embed_at(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            let cf = ratio_to_f64(c);
            acc += pw * cf;
            pw *= w;
        }
        acc
    }

    /// Max absolute value of numerators and denominators, as a crude height.
    pub fn height(&self) -> BigInt {
        let mut h = BigInt::one();
        for c in &self.coeffs {
            let n = c.numer().abs();
            let d = c.denom().abs();
            if n > h {
                h = n.clone();
            }
            if d > h {
                h = d;
            }
        }
        h
    }
}

pub(crate) fn ratio_to_f64(r: &Rat) -> f64 {
    // Good enough for display/cross-check precision on desk-scale heights.
    let n = r.numer();
    let d = r.denom();
    match (n.to_string().parse::<f64>(), d.to_string().parse::<f64>()) {
        (Ok(nf), Ok(df)) => nf / df,
        _ => f64::NAN,
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        let [a0, a1, a2, a3] = self.coeffs;
        let [b0, b1, b2, b3] = rhs.coeffs;
        CycNum::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        self + (-rhs)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let [a0, a1, a2, a3] = self.coeffs;
        CycNum::new(-a0, -a1, -a2, -a3)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        let mut conv = [
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
        ];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        // w^4 = w^2 - 1, w^5 = w^3 - w, w^6 = -1
        let [c0, c1, c2, c3, c4, c5, c6] = conv;
        CycNum::new(c0 - &c4 - c6, c1 - &c5, c2 + c4, c3 + c5)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}w", if unit_coeff { "" } else { "*" })?,
                k => write!(f, "{}w^{}", if unit_coeff { "" } else { "*" }, k)?,
            }
        }
        Ok(())
    }
}

// JSON form: array of four coefficient strings, e.g. ["0","2","0","-1"] for 2w - w^3.
impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = <[String; 4]>::deserialize(d)?;
        let mut coeffs = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for (i, s) in strs.iter().enumerate() {
            coeffs[i] = rat_from_str(s).map_err(D::Error::custom)?;
        }
        Ok(CycNum::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w() -> CycNum {
        CycNum::omega()
    }

    pub(crate) fn random_cyc(rng: &mut ChaCha8Rng) -> CycNum {
        let mut coeffs = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for c in coeffs.iter_mut() {
            let n = rng.gen_range(-9i64..=9);
            let d = rng.gen_range(1i64..=5);
            *c = Rat::new(BigInt::from(n), BigInt::from(d));
        }
        CycNum::from_coeffs(coeffs)
    }

    #[test]
    fn additive_identities() {
        assert_eq!(w() + CycNum::zero(), w());
        assert_eq!(w() + (-w()), CycNum::zero());
        let x = CycNum::sqrt3();
        assert_eq!(x.clone() + x.clone(), CycNum::from_ints(0, 4, 0, -2));
    }

    #[test]
    fn modulus_reductions() {
        let w2 = w() * w();
        assert_eq!(w2.clone() * w2.clone(), w2 - CycNum::one());
        let w3 = CycNum::i();
        assert_eq!(w3.clone() * w3, CycNum::from_int(-1));
        // w^6 = -1 and w^12 = 1
        let mut p = CycNum::one();
        for _ in 0..6 {
            p = p * w();
        }
        assert_eq!(p, CycNum::from_int(-1));
        for _ in 0..6 {
            p = p * w();
        }
        assert_eq!(p, CycNum::one());
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = CycNum::sqrt3();
        assert_eq!(s.clone() * s.clone(), CycNum::from_int(3));
        assert_eq!(s.conj(), s);
        let e = s.embed();
        assert!(e.im.abs() < 1e-12 && (e.re - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inverses() {
        assert_eq!(CycNum::one().inv().unwrap(), CycNum::one());
        // w^-1 = w^11 = w - w^3
        let wi = w().inv().unwrap();
        assert_eq!(wi, CycNum::from_ints(0, 1, 0, -1));
        assert_eq!(w() * wi, CycNum::one());
        // (2w - w^3)^-1 = (2w - w^3)/3
        let s = CycNum::sqrt3();
        let si = s.inv().unwrap();
        assert_eq!(s.clone() * si.clone(), CycNum::one());
        assert_eq!(si * CycNum::from_int(3), s);
        assert!(matches!(CycNum::zero().inv(), Err(CoreError::DivisionByZero)));
    }

    #[test]
    fn conjugation_table() {
        assert_eq!(CycNum::one().conj(), CycNum::one());
        assert_eq!(w().conj(), CycNum::from_ints(0, 1, 0, -1));
        assert_eq!((w() * w()).conj(), CycNum::from_ints(1, 0, -1, 0));
        // numeric cross-check against e^{-i pi/6}
        let e = w().conj().embed();
        let expect = Complex64::from_polar(1.0, -std::f64::consts::PI / 6.0);
        assert!((e.as_complex() - expect).norm() < 1e-12);
    }

    #[test]
    fn embeddings() {
        let one = CycNum::one().embed();
        assert!((one.re - 1.0).abs() < 1e-15 && one.im.abs() < 1e-15);
        let w2 = (w() * w()).embed();
        assert!((w2.re - 0.5).abs() < 1e-12 && (w2.im - 0.8660254037844386).abs() < 1e-12);
        assert_eq!(one.precision_hint, 53);
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..500 {
            let x = random_cyc(&mut rng);
            let y = random_cyc(&mut rng);
            let z = random_cyc(&mut rng);
            assert_eq!(
                (x.clone() * y.clone()) * z.clone(),
                x.clone() * (y.clone() * z.clone())
            );
            assert_eq!(
                x.clone() * (y.clone() + z.clone()),
                x.clone() * y.clone() + x.clone() * z.clone()
            );
            if !x.is_zero() {
                assert_eq!(x.clone() * x.inv().unwrap(), CycNum::one());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let x = CycNum::sqrt3();
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"["0","2","0","-1"]"#);
        let back: CycNum = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
        let y: CycNum = serde_json::from_str(r#"["1/2","-3/4","0","7"]"#).unwrap();
        assert_eq!(
            y,
            CycNum::new(
                Rat::new(BigInt::from(1), BigInt::from(2)),
                Rat::new(BigInt::from(-3), BigInt::from(4)),
                Rat::zero(),
                Rat::from_integer(BigInt::from(7))
            )
        );
        assert!(serde_json::from_str::<CycNum>(r#"["1/0","0","0","0"]"#).is_err());
    }
}
