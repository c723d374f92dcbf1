//! Exact scalars: rational functions over the rationals in the declared parameters.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SpbwError};
use crate::exponents::{self, Exponents};

/// Polynomial in the parameters with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(i: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents::unit(i), BigRational::one());
        p
    }

    pub fn monomial(e: Exponents, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents::trim(e)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| exponents::degree(e)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn mul_monomial(&self, e: &[u32], c: &BigRational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(f, v)| (exponents::add(e, f), v * c))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((re, rc)) = rem.leading() {
            if !exponents::divides(&de, re) {
                return None;
            }
            let qe = exponents::sub(re, &de);
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(&qe, &qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Vec::new();
        };
        it.fold(first.clone(), |acc, e| exponents::min(&acc, e))
    }

    fn div_monomial(&self, e: &[u32]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(f, v)| (exponents::sub(f, e), v.clone()))
                .collect(),
        }
    }

    /// The single variable occurring, if at most one does. `Some(None)` means constant.
    fn univariate(&self) -> Option<Option<usize>> {
        let mut var = None;
        for e in self.terms.keys() {
            let used: Vec<usize> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, _)| i)
                .collect();
            match used.as_slice() {
                [] => {}
                [i] => match var {
                    None => var = Some(*i),
                    Some(v) if v == *i => {}
                    Some(_) => return None,
                },
                _ => return None,
            }
        }
        Some(var)
    }

    fn to_dense(&self, var: usize) -> Vec<BigRational> {
        let deg = self.terms.keys().map(|e| exponents::get(e, var)).max().unwrap_or(0) as usize;
        let mut v = vec![BigRational::zero(); deg + 1];
        for (e, c) in &self.terms {
            v[exponents::get(e, var) as usize] += c;
        }
        v
    }

    fn from_dense(v: &[BigRational], var: usize) -> Self {
        let mut p = Self::zero();
        for (k, c) in v.iter().enumerate() {
            let mut e = vec![0; var + 1];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Monic gcd of two polynomials in the same single variable.
    fn univariate_gcd(a: &ParamPoly, b: &ParamPoly, var: usize) -> ParamPoly {
        fn strip(v: &mut Vec<BigRational>) {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
        }
        let mut x = a.to_dense(var);
        let mut y = b.to_dense(var);
        strip(&mut x);
        strip(&mut y);
        while !y.is_empty() {
            // x mod y
            let lc = y.last().unwrap().clone();
            while x.len() >= y.len() {
                let shift = x.len() - y.len();
                let f = x.last().unwrap() / &lc;
                for (i, c) in y.iter().enumerate() {
                    let t = c * &f;
                    x[shift + i] -= t;
                }
                strip(&mut x);
                if x.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut x, &mut y);
        }
        if let Some(lc) = x.last().cloned() {
            for c in x.iter_mut() {
                *c /= &lc;
            }
        }
        Self::from_dense(&x, var)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| exponents::display_cmp(a, b));
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = exponents::render(e, names, "*");
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(exponents::add(e, f), c * d);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-BigRational::one())
    }
}

/// Element of the parameter field, kept as a fraction that is only cheaply reduced.
/// Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_poly(ParamPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(ParamPoly::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(ParamPoly::constant(c))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn param(i: usize) -> Self {
        Self::from_poly(ParamPoly::var(i))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Self { num: p, den: ParamPoly::one() }
    }

    pub fn fraction(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(SpbwError::DivisionByZero);
        }
        Ok(Self { num, den }.reduced())
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Rational value when the scalar does not depend on any parameter.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den = ParamPoly::one();
            return self;
        }
        if let Some(c) = self.den.constant_value() {
            if !c.is_one() {
                self.num = self.num.scale(&c.recip());
                self.den = ParamPoly::one();
            }
            return self;
        }
        let g = exponents::min(&self.num.monomial_content(), &self.den.monomial_content());
        if !g.is_empty() {
            self.num = self.num.div_monomial(&g);
            self.den = self.den.div_monomial(&g);
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            return Self::from_poly(q);
        }
        if let (Some(a), Some(Some(v))) = (self.num.univariate(), self.den.univariate()) {
            if a.is_none() || a == Some(v) {
                let g = ParamPoly::univariate_gcd(&self.num, &self.den, v);
                if !g.is_one() {
                    self.num = self.num.div_exact(&g).expect("gcd divides");
                    self.den = self.den.div_exact(&g).expect("gcd divides");
                }
            }
        }
        if let Some((_, lc)) = self.den.leading() {
            if !lc.is_one() {
                let inv = lc.recip();
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
        if self.den.is_one() {
            self.den = ParamPoly::one();
        }
        self
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(SpbwError::DivisionByZero);
        }
        Ok(Self { num: self.den.clone(), den: self.num.clone() }.reduced())
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Plain polynomial with a single term whose coefficient is negative.
    pub fn is_negative_monomial(&self) -> bool {
        self.den.is_one() && self.num.len() == 1 && self.num.leading().is_some_and(|(_, c)| c.is_negative())
    }

    /// Whether the rendering can be juxtaposed with a product without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.len() <= 1
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let n = self.num.render(names);
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        let d = self.den.render(names);
        let bare = self.den.len() == 1
            && self.den.leading().is_some_and(|(e, c)| {
                c.is_one() && e.iter().filter(|k| **k > 0).count() == 1
            });
        if bare {
            format!("{n}/{d}")
        } else {
            format!("{n}/({d})")
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Scalar {}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.den.len().max(self.num.len());
        let names: Vec<String> = (0..n.max(8)).map(|i| format!("p{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return Scalar { num: &self.num + &rhs.num, den: self.den.clone() }.reduced();
        }
        if let Some(f) = self.den.div_exact(&rhs.den) {
            let num = &self.num + &(&rhs.num * &f);
            return Scalar { num, den: self.den.clone() }.reduced();
        }
        if let Some(f) = rhs.den.div_exact(&self.den) {
            let num = &(&self.num * &f) + &rhs.num;
            return Scalar { num, den: rhs.den.clone() }.reduced();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar { num, den: &self.den * &rhs.den }.reduced()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.reduced()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::param(0)
    }

    fn names() -> Vec<String> {
        vec!["q".into(), "s".into()]
    }

    #[test]
    fn fractions_reduce() {
        let a = (q() * q() - Scalar::one()).checked_div(&(q() - Scalar::one())).unwrap();
        assert_eq!(a.den(), &ParamPoly::one());
        assert_eq!(a, q() + Scalar::one());
        let b = Scalar::one().checked_div(&q()).unwrap();
        assert_eq!(&b * &q(), Scalar::one());
        assert_eq!(b.render(&names()), "1/q");
    }

    #[test]
    fn rendering() {
        let p = q() * q() - Scalar::from_int(2) * q() + Scalar::ratio(1, 2);
        assert_eq!(p.render(&names()), "q^2 - 2*q + 1/2");
        let f = Scalar::one().checked_div(&(q() + Scalar::one())).unwrap();
        assert_eq!(f.render(&names()), "1/(q + 1)");
        assert_eq!(Scalar::from_int(-3).render(&names()), "-3");
    }

    #[test]
    fn multivariate_cross_equality() {
        let s = Scalar::param(1);
        let a = (q() + s.clone()).checked_div(&(q() * s.clone())).unwrap();
        let b = q().inv().unwrap() + s.inv().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_division_is_error() {
        assert_eq!(Scalar::zero().inv(), Err(SpbwError::DivisionByZero));
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-3i64..4, -3i64..4, -2i64..3, 0u32..3).prop_map(|(a, b, c, k)| {
            let num = Scalar::from_int(a) * q().pow(k as i64).unwrap() + Scalar::from_int(b) * Scalar::param(1);
            let den = Scalar::from_int(c) * q() + Scalar::one();
            num.checked_div(&den).unwrap_or(num)
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a - &a, Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
        }
    }
}
