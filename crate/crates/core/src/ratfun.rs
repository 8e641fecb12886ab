//! Polynomials and rational functions in one indeterminate t over an exact
//! field, together with the discrete valuation "order of vanishing at t = 0".

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::mat2::Field;
use crate::CoreError;

/// Dense polynomial; invariant: no trailing zero coefficients
/// (the zero polynomial is the empty list).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![K::one()] }
    }

    pub fn constant(c: K) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The indeterminate t.
    pub fn t() -> Self {
        Poly { coeffs: vec![K::zero(), K::one()] }
    }

    /// c * t^k.
    pub fn monomial(c: K, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Multiplicity of the root t = 0; `None` for the zero polynomial.
    pub fn ord_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exactly one nonzero coefficient: returns (its degree, the coefficient).
    fn as_monomial(&self) -> Option<(usize, &K)> {
        let k = self.ord_at_zero()?;
        if k + 1 == self.coeffs.len() {
            Some((k, &self.coeffs[k]))
        } else {
            None
        }
    }

    /// Exact division by t^k; requires ord_at_zero >= k.
    fn shift_down(&self, k: usize) -> Poly<K> {
        if self.is_zero() {
            return Poly::zero();
        }
        debug_assert!(self.ord_at_zero().unwrap() >= k);
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, s: &K) -> Poly<K> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn make_monic(&self) -> Poly<K> {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient nonzero")),
        }
    }

    /// Euclidean division: self = q * den + r with deg r < deg den.
    pub fn div_rem(&self, den: &Poly<K>) -> Result<(Poly<K>, Poly<K>), CoreError> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let dd = den.degree().unwrap();
        let lead_inv = den.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap().clone() * lead_inv.clone();
            if !f.is_zero() {
                for (i, dc) in den.coeffs.iter().enumerate() {
                    let sub = f.clone() * dc.clone();
                    rem[k + i] = rem[k + i].clone() - sub;
                }
                quot[k] = f;
            }
            rem.pop();
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly<K>) -> Poly<K> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.make_monic()
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(K::zero);
            out.push(a + b);
        }
        Poly::from_coeffs(out)
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Poly<K>) -> Poly<K> {
        self + (-rhs)
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<K: Field + Serialize> Serialize for Poly<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de, K: Field + Deserialize<'de>> Deserialize<'de> for Poly<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Poly::from_coeffs(Vec::<K>::deserialize(d)?))
    }
}

/// Value of the discrete valuation at t = 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    /// The zero function.
    Infinity,
}

impl Valuation {
    pub fn is_nonnegative(&self) -> bool {
        match self {
            Valuation::Finite(v) => *v >= 0,
            Valuation::Infinity => true,
        }
    }

    pub fn at_least(&self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => *v >= bound,
            Valuation::Infinity => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// A rational function num/den in canonical form: den monic, gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFun<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, CoreError> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly<K>, den: Poly<K>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun { num: Poly::zero(), den: Poly::one() };
        }
        // Monomial denominators are the common case in the pipeline (entries
        // of products of O-constant and parabolic matrices); cancel by
        // valuation alone instead of running the Euclidean algorithm.
        if let Some((k, c)) = den.as_monomial() {
            let s = num.ord_at_zero().unwrap().min(k);
            let ci = c.inv().expect("nonzero denominator coefficient");
            let num = num.shift_down(s).scale(&ci);
            let den = Poly::monomial(K::one(), k - s);
            return RatFun { num, den };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g).expect("gcd divides");
        let (den, _) = den.div_rem(&g).expect("gcd divides");
        let lead_inv = den.leading().unwrap().inv().expect("nonzero");
        RatFun { num: num.scale(&lead_inv), den: den.make_monic() }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: K) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    /// The indeterminate t.
    pub fn t() -> Self {
        RatFun::from_poly(Poly::t())
    }

    /// 1/t.
    pub fn t_inv() -> Self {
        RatFun { num: Poly::one(), den: Poly::t() }
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> Option<&K> {
        if self.den == Poly::one() {
            match self.num.degree() {
                None => None, // zero: handled by caller if needed
                Some(0) => Some(&self.num.coeffs()[0]),
                _ => None,
            }
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RatFun<K>, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    /// Order of vanishing at t = 0: ord(num) - ord(den); Infinity for 0.
    pub fn valuation(&self) -> Valuation {
        match self.num.ord_at_zero() {
            None => Valuation::Infinity,
            Some(n) => {
                let d = self.den.ord_at_zero().expect("den nonzero");
                Valuation::Finite(n as i64 - d as i64)
            }
        }
    }

    /// Membership in the valuation ring O = {v >= 0} (no pole at 0).
    pub fn in_valuation_ring(&self) -> bool {
        self.valuation().is_nonnegative()
    }

    /// Exact evaluation at a nonzero point of the base field.
    pub fn eval_at(&self, x: &K) -> Result<K, CoreError> {
        let d = self.den.eval(x);
        match d.inv() {
            Some(di) => Ok(self.num.eval(x) * di),
            None => Err(CoreError::PoleAtSpecialization),
        }
    }
}

impl<K: Field> Add for RatFun<K> {
    type Output = RatFun<K>;
    fn add(self, rhs: RatFun<K>) -> RatFun<K> {
        RatFun::canonical(
            self.num.clone() * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl<K: Field> Sub for RatFun<K> {
    type Output = RatFun<K>;
    fn sub(self, rhs: RatFun<K>) -> RatFun<K> {
        self + (-rhs)
    }
}

impl<K: Field> Neg for RatFun<K> {
    type Output = RatFun<K>;
    fn neg(self) -> RatFun<K> {
        RatFun { num: -self.num, den: self.den }
    }
}

impl<K: Field> Mul for RatFun<K> {
    type Output = RatFun<K>;
    fn mul(self, rhs: RatFun<K>) -> RatFun<K> {
        RatFun::canonical(self.num * rhs.num, self.den * rhs.den)
    }
}

impl<K: Field> Field for RatFun<K> {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFun::inv(self).ok()
    }
}

impl<K: Field + fmt::Display> fmt::Display for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly<K>| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let mut parts = Vec::new();
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = match i {
                    0 => String::new(),
                    1 => "*t".into(),
                    k => format!("*t^{}", k),
                };
                parts.push(format!("({}){}", c, t));
            }
            parts.join(" + ")
        };
        if self.den == Poly::one() {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "[{}] / [{}]", show(&self.num), show(&self.den))
        }
    }
}

impl<K: Field + Serialize> Serialize for RatFun<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a, K: Field + Serialize> {
            num: &'a Poly<K>,
            den: &'a Poly<K>,
        }
        Repr { num: &self.num, den: &self.den }.serialize(s)
    }
}

impl<'de, K: Field + Deserialize<'de>> Deserialize<'de> for RatFun<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr<K> {
            num: Vec<K>,
            den: Vec<K>,
        }
        let r = Repr::<K>::deserialize(d)?;
        RatFun::new(Poly::from_coeffs(r.num), Poly::from_coeffs(r.den))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;

    type P = Poly<CycNum>;
    type R = RatFun<CycNum>;

    fn c(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    fn poly(cs: &[i64]) -> P {
        Poly::from_coeffs(cs.iter().map(|&n| c(n)).collect())
    }

    #[test]
    fn poly_basics() {
        let p = poly(&[1, 0, 2]); // 1 + 2t^2
        let q = poly(&[0, 1]); // t
        assert_eq!(p.clone() * q.clone(), poly(&[0, 1, 0, 2]));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(q.ord_at_zero(), Some(1));
        assert_eq!(P::zero().ord_at_zero(), None);
        assert_eq!(p.eval(&c(2)), c(9));
        let (d, r) = poly(&[0, 1, 0, 2]).div_rem(&q).unwrap();
        assert_eq!(d, p);
        assert!(r.is_zero());
    }

    #[test]
    fn poly_gcd_monic() {
        // (t+1)(t+2) and (t+1)(t+3) have gcd t+1
        let a = poly(&[1, 1]) * poly(&[2, 1]);
        let b = poly(&[1, 1]) * poly(&[3, 1]);
        assert_eq!(a.gcd(&b), poly(&[1, 1]));
        assert_eq!(a.gcd(&P::zero()), a.make_monic());
    }

    #[test]
    fn valuations() {
        let t2 = R::from_poly(poly(&[0, 0, 1]));
        assert_eq!(t2.valuation(), Valuation::Finite(2));
        assert_eq!(R::t_inv().valuation(), Valuation::Finite(-1));
        // (t^2 + t)/t reduces to t + 1, valuation 0
        let f = R::new(poly(&[0, 1, 1]), poly(&[0, 1])).unwrap();
        assert_eq!(f.num(), &poly(&[1, 1]));
        assert_eq!(f.den(), &P::one());
        assert_eq!(f.valuation(), Valuation::Finite(0));
        assert_eq!(R::zero().valuation(), Valuation::Infinity);
    }

    #[test]
    fn valuation_ring_membership() {
        assert!(R::one().in_valuation_ring());
        assert!(!R::t_inv().in_valuation_ring());
        // t/(1+t): valuation 1
        let f = R::new(poly(&[0, 1]), poly(&[1, 1])).unwrap();
        assert!(f.in_valuation_ring());
        assert_eq!(f.valuation(), Valuation::Finite(1));
    }

    #[test]
    fn field_ops_canonical() {
        let f = R::t_inv();
        let g = R::t();
        assert_eq!(f.clone() * g.clone(), R::one());
        assert_eq!(f.clone() + (-f.clone()), R::zero());
        let h = f.clone() + g.clone(); // (1 + t^2)/t
        assert_eq!(h.num(), &poly(&[1, 0, 1]));
        assert_eq!(h.den(), &poly(&[0, 1]));
        assert_eq!(h.valuation(), Valuation::Finite(-1));
        assert_eq!(h.inv().unwrap().valuation(), Valuation::Finite(1));
        assert!(matches!(R::zero().inv(), Err(CoreError::DivisionByZero)));
    }

    #[test]
    fn non_monomial_reduction() {
        // (t^2 - 1)/(t - 1) = t + 1
        let f = R::new(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(f.num(), &poly(&[1, 1]));
        assert_eq!(f.den(), &P::one());
    }

    #[test]
    fn evaluation_and_poles() {
        let f = R::t_inv();
        assert_eq!(f.eval_at(&c(2)), Ok(CycNum::from_rat(crate::Rat::new(1.into(), 2.into()))));
        assert!(matches!(f.eval_at(&c(0)), Err(CoreError::PoleAtSpecialization)));
    }

    #[test]
    fn serde_round_trip() {
        let f = R::new(poly(&[0, 1, 1]), poly(&[0, 0, 1])).unwrap();
        let j = serde_json::to_string(&f).unwrap();
        let back: R = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
    }
}
