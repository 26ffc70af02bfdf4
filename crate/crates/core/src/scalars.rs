//! Exact arithmetic in Q(q): Laurent polynomials in the deformation
//! parameter q with arbitrary-precision rational coefficients, and their
//! field of fractions in canonical form.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::KernelError;

/// A Laurent polynomial in q. No stored coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(0, big(1))
    }

    /// The monomial c * q^e (zero if c is zero).
    pub fn term(e: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// q^e
    pub fn q_pow(e: i64) -> Self {
        Self::term(e, big(1))
    }

    pub fn from_int(c: i64) -> Self {
        Self::term(0, big(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::term(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power of q.
    pub fn leading_coeff(&self) -> BigRational {
        self.max_exp().map(|e| self.coeff(e)).unwrap_or_else(BigRational::zero)
    }

    /// Multiply by q^k.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    fn add_term(&mut self, e: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Exact evaluation at q = q0. Fails only when q0 = 0 and a negative
    /// power is present.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, KernelError> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            if *e < 0 && q0.is_zero() {
                return Err(KernelError::Pole);
            }
            let p = if *e >= 0 {
                num::pow::pow(q0.clone(), *e as usize)
            } else {
                num::pow::pow(q0.clone(), (-*e) as usize).recip()
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Euclidean division for ordinary polynomials (min_exp >= 0 assumed for
    /// the divisor after shifting): returns (quotient, remainder).
    fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let mut q = LaurentPoly::zero();
        let d_deg = d.max_exp().unwrap();
        let d_lead = d.leading_coeff();
        while !r.is_zero() && r.max_exp().unwrap() >= d_deg {
            let e = r.max_exp().unwrap() - d_deg;
            let c = r.leading_coeff() / &d_lead;
            let t = LaurentPoly::term(e, c);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        (q, r)
    }

    /// Exact quotient, if self is divisible by d.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // shift both to ordinary polynomials; track the exponent offset
        let a0 = self.min_exp().unwrap();
        let b0 = d.min_exp()?;
        let (q, r) = self.shifted(-a0).div_rem(&d.shifted(-b0));
        if r.is_zero() {
            Some(q.shifted(a0 - b0))
        } else {
            None
        }
    }

    /// Monic gcd (as ordinary polynomials after clearing q-powers).
    fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut a = match self.min_exp() {
            Some(e) => self.shifted(-e),
            None => LaurentPoly::zero(),
        };
        let mut b = match other.min_exp() {
            Some(e) => other.shifted(-e),
            None => LaurentPoly::zero(),
        };
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coeff();
        a.scaled(&lead.recip())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &(-c.clone()));
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

fn fmt_coeff_poly(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    // highest exponent first
    let mut first = true;
    for (e, c) in p.terms.iter().rev() {
        let neg = c.is_negative();
        let abs = c.abs();
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
        let unit = abs.is_one();
        if *e == 0 {
            write!(f, "{}", abs)?;
        } else {
            if !unit {
                write!(f, "{}*", abs)?;
            }
            if *e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", e)?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coeff_poly(f, self)
    }
}

/// A rational function in q, stored canonically: gcd(num, den) = 1, den monic
/// with lowest exponent zero. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Canonical representative of num/den.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: LaurentPoly::one() });
        }
        let g = num.gcd(&den);
        let mut n = num.exact_div(&g).expect("gcd divides numerator");
        let mut d = den.exact_div(&g).expect("gcd divides denominator");
        // normalize: den lowest exponent zero and monic
        let shift = d.min_exp().unwrap();
        d = d.shifted(-shift);
        n = n.shifted(-shift);
        let lead = d.leading_coeff();
        if !lead.is_one() {
            let inv = lead.recip();
            d = d.scaled(&inv);
            n = n.scaled(&inv);
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(c))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    pub fn inv(&self) -> Result<Self, KernelError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scaled(&self, c: &RatFunc) -> Self {
        self * c
    }

    /// Exact rational evaluation at q = q0; errors on a pole.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, KernelError> {
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(KernelError::Pole);
        }
        Ok(self.num.eval(q0)? / d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            fmt_coeff_poly(f, &self.num)
        } else {
            write!(f, "(")?;
            fmt_coeff_poly(f, &self.num)?;
            write!(f, ")/(")?;
            fmt_coeff_poly(f, &self.den)?;
            write!(f, ")")
        }
    }
}

/// The symmetric q-integer [m] = (q^m - q^-m)/(q - q^-1).
pub fn gauss_integer(m: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let (sign, m_abs) = if m < 0 { (-1, -m) } else { (1, m) };
    // [m] = q^{m-1} + q^{m-3} + ... + q^{1-m}
    let mut e = m_abs - 1;
    while e >= -(m_abs - 1) && m_abs > 0 {
        out.add_term(e, &big(sign));
        e -= 2;
    }
    out
}

// JSON encoding: LaurentPoly as a list of {"e": int, "c": "num/den"}, terms
// sorted by exponent ascending; RatFunc as {"num": ..., "den": ...}.

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: i64,
    c: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson { e: *e, c: c.to_string() })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(d)?;
        let mut out = LaurentPoly::zero();
        for t in v {
            let c: BigRational = t.c.parse().map_err(|_| D::Error::custom("bad rational"))?;
            out.add_term(t.e, &c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncJson { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RatFuncJson::deserialize(d)?;
        RatFunc::new(raw.num, raw.den).map_err(|_| D::Error::custom("zero denominator"))
    }
}
