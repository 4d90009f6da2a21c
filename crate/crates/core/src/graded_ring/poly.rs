//! Sparse bihomogeneous polynomials over a fixed alphabet.

use std::collections::hash_map::Entry;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::alphabet::{Alphabet, BiDegree, Monomial};
use super::coeff::{common_denominator, Coefficient, LinForm, Rational, Scalar, ScaledBy};
use super::RingError;

/// A homogeneous polynomial. Terms are stored leading-first under
/// [`Alphabet::order`], without zero coefficients.
#[derive(Clone)]
pub struct Polynomial<C> {
    alphabet: &'static Alphabet,
    degree: Option<BiDegree>,
    terms: Vec<(Monomial, C)>,
}

/// Polynomial with exact rational coefficients.
pub type Poly = Polynomial<Rational>;
/// Polynomial with integer coefficients (internal fast path).
pub type IntPoly = Polynomial<BigInt>;
/// Polynomial whose coefficients are linear forms in unknowns.
pub type ParamPoly = Polynomial<LinForm>;

fn order_key(alphabet: &Alphabet, m: &Monomial) -> (i32, [u16; super::NGEN]) {
    (alphabet.modular_weight(m), m.0)
}

fn sort_terms<C>(alphabet: &Alphabet, terms: &mut [(Monomial, C)]) {
    terms.sort_unstable_by_key(|t| std::cmp::Reverse(order_key(alphabet, &t.0)));
}

impl<C: Coefficient> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet.same(other.alphabet) && self.terms == other.terms
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]{{", self.alphabet.name)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}*{}", c, self.alphabet.format_monomial(m))?;
        }
        write!(f, "}}")
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(alphabet: &'static Alphabet) -> Self {
        Polynomial {
            alphabet,
            degree: None,
            terms: Vec::new(),
        }
    }

    pub fn monomial(alphabet: &'static Alphabet, m: Monomial, c: C) -> Self {
        if c.is_zero_coeff() {
            return Self::zero(alphabet);
        }
        Polynomial {
            alphabet,
            degree: Some(alphabet.bidegree(&m)),
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(
        alphabet: &'static Alphabet,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Result<Self, RingError> {
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        for (m, c) in terms {
            match acc.entry(m) {
                Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&c),
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut degree = None;
        for m in acc.iter().filter(|(_, c)| !c.is_zero_coeff()).map(|(m, _)| m) {
            let d = alphabet.bidegree(m);
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(RingError::Inhomogeneous { left: d0, right: d })
                }
                _ => {}
            }
        }
        Ok(Self::from_map_unchecked(alphabet, acc))
    }

    /// Builds from an accumulator whose nonzero entries are known to share
    /// one bidegree.
    pub(crate) fn from_map_unchecked(
        alphabet: &'static Alphabet,
        acc: FxHashMap<Monomial, C>,
    ) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero_coeff()).collect();
        sort_terms(alphabet, &mut terms);
        let degree = terms.first().map(|(m, _)| alphabet.bidegree(m));
        Polynomial {
            alphabet,
            degree,
            terms,
        }
    }

    /// Sorted, combined, nonzero, homogeneous terms.
    pub(crate) fn from_sorted_unchecked(
        alphabet: &'static Alphabet,
        terms: Vec<(Monomial, C)>,
    ) -> Self {
        let degree = terms.first().map(|(m, _)| alphabet.bidegree(m));
        Polynomial {
            alphabet,
            degree,
            terms,
        }
    }

    pub fn alphabet(&self) -> &'static Alphabet {
        self.alphabet
    }

    /// `None` for the zero polynomial.
    pub fn bidegree(&self) -> Option<BiDegree> {
        self.degree
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
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

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        let key = order_key(self.alphabet, m);
        self.terms
            .binary_search_by(|(t, _)| key.cmp(&order_key(self.alphabet, t)))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Largest exponent of generator `i` over all terms.
    pub fn max_exp(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    pub fn min_exp(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    fn check_alphabet(&self, other: &Alphabet) -> Result<(), RingError> {
        if self.alphabet.same(other) {
            Ok(())
        } else {
            Err(RingError::AlphabetMismatch {
                left: self.alphabet.name,
                right: other.name,
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check_alphabet(rhs.alphabet)?;
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if self.degree != rhs.degree {
            return Err(RingError::Inhomogeneous {
                left: self.degree.unwrap(),
                right: rhs.degree.unwrap(),
            });
        }
        Ok(self.merge(rhs, false))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check_alphabet(rhs.alphabet)?;
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.neg());
        }
        if self.degree != rhs.degree {
            return Err(RingError::Inhomogeneous {
                left: self.degree.unwrap(),
                right: rhs.degree.unwrap(),
            });
        }
        Ok(self.merge(rhs, true))
    }

    fn merge(&self, rhs: &Self, subtract: bool) -> Self {
        let alpha = self.alphabet;
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = if i == self.terms.len() {
                std::cmp::Ordering::Less
            } else if j == rhs.terms.len() {
                std::cmp::Ordering::Greater
            } else {
                order_key(alpha, &self.terms[i].0).cmp(&order_key(alpha, &rhs.terms[j].0))
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &rhs.terms[j];
                    let mut c = c.clone();
                    if subtract {
                        c.negate();
                    }
                    out.push((*m, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = self.terms[i].1.clone();
                    if subtract {
                        c.sub_assign_ref(&rhs.terms[j].1);
                    } else {
                        c.add_assign_ref(&rhs.terms[j].1);
                    }
                    if !c.is_zero_coeff() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted_unchecked(alpha, out)
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for (_, c) in &mut p.terms {
            c.negate();
        }
        p
    }

    /// Multiplies by a polynomial whose coefficients act on ours.
    pub fn mul_by<S>(&self, rhs: &Polynomial<S>) -> Result<Self, RingError>
    where
        S: Coefficient,
        C: ScaledBy<S>,
    {
        self.check_alphabet(rhs.alphabet)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.alphabet));
        }
        let mut acc: FxHashMap<Monomial, C> =
            FxHashMap::with_capacity_and_hasher(self.len() * rhs.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let t = ca.scaled(cb);
                match acc.entry(ma.mul(mb)) {
                    Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&t),
                    Entry::Vacant(e) => {
                        e.insert(t);
                    }
                }
            }
        }
        Ok(Self::from_map_unchecked(self.alphabet, acc))
    }

    pub fn scale<S>(&self, s: &S) -> Self
    where
        C: ScaledBy<S>,
    {
        let terms: Vec<(Monomial, C)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.scaled(s)))
            .filter(|(_, c)| !c.is_zero_coeff())
            .collect();
        Self::from_sorted_unchecked(self.alphabet, terms)
    }

    /// Multiplies by a monomial (order is preserved).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        Self::from_sorted_unchecked(self.alphabet, terms)
    }

    /// Divides every term by `m`; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            terms.push((t.checked_div(m)?, c.clone()));
        }
        Some(Self::from_sorted_unchecked(self.alphabet, terms))
    }

    pub fn map_coefficients<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> Polynomial<D> {
        let terms: Vec<(Monomial, D)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !c.is_zero_coeff())
            .collect();
        Polynomial::from_sorted_unchecked(self.alphabet, terms)
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn one(alphabet: &'static Alphabet) -> Self {
        Self::monomial(alphabet, Monomial::ONE, C::one_coeff())
    }

    pub fn constant(alphabet: &'static Alphabet, c: C) -> Self {
        Self::monomial(alphabet, Monomial::ONE, c)
    }

    pub fn generator(alphabet: &'static Alphabet, i: usize) -> Self {
        Self::monomial(alphabet, Monomial::unit(i), C::one_coeff())
    }

    pub fn pow(&self, n: u32) -> Self
    where
        C: ScaledBy<C>,
    {
        let mut result = Self::one(self.alphabet);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_by(&base).expect("same alphabet");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_by(&base).expect("same alphabet");
            }
        }
        result
    }
}

impl Poly {
    /// Exact product, computed through integer polynomials.
    pub fn mul(&self, rhs: &Poly) -> Result<Poly, RingError> {
        self.check_alphabet(rhs.alphabet)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(self.alphabet));
        }
        let (da, ia) = self.to_integer();
        let (db, ib) = rhs.to_integer();
        let prod = ia.mul_by(&ib)?;
        Ok(Poly::from_integer(&prod, &(da * db)))
    }

    pub fn pow_fast(&self, n: u32) -> Poly {
        let (d, i) = self.to_integer();
        let ip = i.pow(n);
        Poly::from_integer(&ip, &num_traits::pow(d, n as usize))
    }

    /// Writes `self = ints / den` with integer coefficients.
    pub fn to_integer(&self) -> (BigInt, IntPoly) {
        let den = common_denominator(self.terms.iter().map(|(_, c)| c));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (den, IntPoly::from_sorted_unchecked(self.alphabet, terms))
    }

    pub fn from_integer(p: &IntPoly, den: &BigInt) -> Poly {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (*m, Rational::new(c.clone(), den.clone())))
            .collect();
        Poly::from_sorted_unchecked(p.alphabet(), terms)
    }

    pub fn from_int_poly(p: &IntPoly) -> Poly {
        Poly::from_integer(p, &BigInt::one())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Sums `c_i * p_i`. All nonzero summands must share a bidegree.
    pub fn linear_combination<'a>(
        alphabet: &'static Alphabet,
        items: impl IntoIterator<Item = (&'a Rational, &'a Poly)>,
    ) -> Result<Poly, RingError> {
        let mut acc = Poly::zero(alphabet);
        for (c, p) in items {
            if c.is_zero() {
                continue;
            }
            acc = acc.checked_add(&p.scale(c))?;
        }
        Ok(acc)
    }
}

impl ParamPoly {
    /// Substitutes numeric values for the unknowns (dense, indexed by id).
    pub fn evaluate(&self, point: &[Rational]) -> Poly {
        self.map_coefficients(|lf| lf.evaluate(point))
    }

    /// Unknown ids appearing anywhere.
    pub fn unknowns(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .terms()
            .iter()
            .flat_map(|(_, lf)| lf.terms().iter().map(|(i, _)| *i))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// The concrete polynomial multiplying unknown `id`.
    pub fn part_of(&self, id: u32) -> Poly {
        self.map_coefficients(|lf| lf.coefficient(id))
    }

    /// Assembles `sum_u c_u * p_u`.
    pub fn from_parts(
        alphabet: &'static Alphabet,
        parts: impl IntoIterator<Item = (u32, Poly)>,
    ) -> Result<ParamPoly, RingError> {
        let mut acc: FxHashMap<Monomial, Vec<(u32, Rational)>> = FxHashMap::default();
        let mut degree: Option<BiDegree> = None;
        for (id, p) in parts {
            if p.is_zero() {
                continue;
            }
            if !p.alphabet().same(alphabet) {
                return Err(RingError::AlphabetMismatch {
                    left: alphabet.name,
                    right: p.alphabet().name,
                });
            }
            match degree {
                None => degree = p.bidegree(),
                Some(d) if Some(d) != p.bidegree() => {
                    return Err(RingError::Inhomogeneous {
                        left: d,
                        right: p.bidegree().unwrap(),
                    })
                }
                _ => {}
            }
            for (m, c) in p.into_terms() {
                acc.entry(m).or_default().push((id, c));
            }
        }
        let map: FxHashMap<Monomial, LinForm> = acc
            .into_iter()
            .map(|(m, v)| (m, LinForm::from_terms(v)))
            .collect();
        Ok(ParamPoly::from_map_unchecked(alphabet, map))
    }
}

fn write_coefficient_prefix(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    monomial_is_one: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if monomial_is_one || !abs.is_one() {
        if abs.is_integer() {
            write!(f, "{}", abs.numer())?;
        } else {
            write!(f, "{}/{}", abs.numer(), abs.denom())?;
        }
        if !monomial_is_one {
            write!(f, " ")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            write_coefficient_prefix(f, i == 0, c, m.is_one())?;
            if !m.is_one() {
                write!(f, "{}", self.alphabet.format_monomial(m))?;
            }
        }
        Ok(())
    }
}
