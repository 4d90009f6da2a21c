//! Coefficient domains for sparse polynomials.
//!
//! Three domains are used: exact rationals (the default), integers (an
//! internal fast path for products), and linear forms in unknown symbols
//! (the coefficients of an ansatz).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// An additive group that polynomial terms can carry.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn negate(&mut self);

    fn sub_assign_ref(&mut self, rhs: &Self) {
        let mut r = rhs.clone();
        r.negate();
        self.add_assign_ref(&r);
    }
}

/// A commutative ring of scalars.
pub trait Scalar: Coefficient {
    fn one_coeff() -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
}

/// Coefficients that a scalar ring `S` acts on.
pub trait ScaledBy<S>: Coefficient {
    fn scaled(&self, s: &S) -> Self;
}

impl Coefficient for BigInt {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn negate(&mut self) {
        *self = -std::mem::take(self);
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

impl Scalar for BigInt {
    fn one_coeff() -> Self {
        One::one()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl ScaledBy<BigInt> for BigInt {
    fn scaled(&self, s: &BigInt) -> Self {
        self * s
    }
}

impl Coefficient for Rational {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn negate(&mut self) {
        *self = -std::mem::replace(self, Zero::zero());
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

impl Scalar for Rational {
    fn one_coeff() -> Self {
        One::one()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl ScaledBy<Rational> for Rational {
    fn scaled(&self, s: &Rational) -> Self {
        self * s
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `num/den` in lowest terms (the denominator is
/// always written, even when it is 1).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Divides out the gcd of the entries and makes the first nonzero entry
/// positive. Returns the divisor applied (with sign).
pub fn make_primitive(values: &mut [BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for v in values.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
        }
    }
    if g.is_zero() {
        return BigInt::one();
    }
    if let Some(first) = values.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    if !g.is_one() {
        for v in values.iter_mut() {
            *v = &*v / &g;
        }
    }
    g
}

/// Scales a rational vector to the primitive integer vector on the same
/// ray with positive leading entry.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values.iter());
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    make_primitive(&mut ints);
    ints
}

/// A sparse linear form `sum_i q_i * u_i` in unknowns indexed by `u32`,
/// with no constant term.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct LinForm {
    terms: Vec<(u32, Rational)>,
}

impl LinForm {
    pub fn unknown(id: u32) -> Self {
        LinForm {
            terms: vec![(id, One::one())],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut v: Vec<(u32, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(u32, Rational)> = Vec::with_capacity(v.len());
        for (i, q) in v {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += q,
                _ => out.push((i, q)),
            }
        }
        out.retain(|(_, q)| !Zero::is_zero(q));
        LinForm { terms: out }
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn coefficient(&self, id: u32) -> Rational {
        match self.terms.binary_search_by_key(&id, |(i, _)| *i) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => Zero::zero(),
        }
    }

    /// Evaluates the form at a point given as a dense slice indexed by
    /// unknown id.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, q) in &self.terms {
            acc += q * &point[*i as usize];
        }
        acc
    }

    pub fn max_unknown(&self) -> Option<u32> {
        self.terms.last().map(|(i, _)| *i)
    }
}

impl Coefficient for LinForm {
    fn zero_coeff() -> Self {
        LinForm::default()
    }
    fn is_zero_coeff(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        if rhs.terms.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = rhs.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) => {
                    if i < j {
                        out.push(a.next().unwrap());
                    } else if j < i {
                        let (j, q) = b.next().unwrap();
                        out.push((*j, q.clone()));
                    } else {
                        let (i, mut q) = a.next().unwrap();
                        let (_, r) = b.next().unwrap();
                        q += r;
                        if !Zero::is_zero(&q) {
                            out.push((i, q));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, q) = b.next().unwrap();
                    out.push((*j, q.clone()));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }
    fn negate(&mut self) {
        for (_, q) in &mut self.terms {
            *q = -std::mem::replace(q, Zero::zero());
        }
    }
}

impl ScaledBy<Rational> for LinForm {
    fn scaled(&self, s: &Rational) -> Self {
        if Zero::is_zero(s) {
            return LinForm::default();
        }
        LinForm {
            terms: self.terms.iter().map(|(i, q)| (*i, q * s)).collect(),
        }
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, q)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*u{}", q, i)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linform_add_cancels() {
        let mut a = LinForm::from_terms([(0, rat(1)), (2, ratio(1, 3))]);
        let b = LinForm::from_terms([(2, ratio(-1, 3)), (1, rat(5))]);
        a.add_assign_ref(&b);
        assert_eq!(a.terms(), &[(0, rat(1)), (1, rat(5))]);
    }

    #[test]
    fn primitive_vector_has_positive_lead() {
        let v = primitive_integer_vector(&[rat(0), ratio(-3, 2), rat(6)]);
        assert_eq!(v, vec![BigInt::from(0), BigInt::from(1), BigInt::from(-4)]);
    }

    #[test]
    fn rational_strings() {
        let q = ratio(6, -4);
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(q));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
