//! Exact division and the `num / (E4^p Delta^q)` normal form.

use std::collections::BTreeMap;

use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::alphabet::{upper, Alphabet, BiDegree, Monomial, AB};
use super::coeff::{ratio, Coefficient, Rational};
use super::poly::{ParamPoly, Poly, Polynomial};
use super::RingError;

// E4 and E6 occupy the same positions in both built-in alphabets.
const E4: usize = upper::E4;
const E6: usize = upper::E6;

/// `Delta = (E4^3 - E6^2)/1728` written over any alphabet that starts with
/// `E4, E6`.
pub fn delta_in(alphabet: &'static Alphabet) -> Poly {
    let c = ratio(1, 1728);
    Poly::from_terms(
        alphabet,
        [
            (Monomial::power(E4, 3), c.clone()),
            (Monomial::power(E6, 2), -c),
        ],
    )
    .expect("Delta is homogeneous")
}

/// The cusp form `Delta` as a polynomial over `AB`, bidegree (12,0).
pub fn delta_polynomial() -> Poly {
    delta_in(&AB)
}

/// `Delta^n` over `alphabet`.
pub fn delta_power(alphabet: &'static Alphabet, n: u32) -> Poly {
    delta_in(alphabet).pow_fast(n)
}

/// Exact quotient `p / d`.
///
/// `Ok(None)` means `d` does not divide `p`; errors are reserved for
/// malformed input (mismatched alphabets, zero divisor).
pub fn divexact(p: &Poly, d: &Poly) -> Result<Option<Poly>, RingError> {
    if !p.alphabet().same(d.alphabet()) {
        return Err(RingError::AlphabetMismatch {
            left: p.alphabet().name,
            right: d.alphabet().name,
        });
    }
    let Some((lm_d, lc_d)) = d.leading().cloned() else {
        return Err(RingError::ZeroDivisor);
    };
    if p.is_zero() {
        return Ok(Some(Poly::zero(p.alphabet())));
    }
    let alpha = p.alphabet();
    let key = |m: &Monomial| (alpha.modular_weight(m), m.0);
    let mut rem: BTreeMap<(i32, [u16; super::NGEN]), (Monomial, Rational)> = p
        .terms()
        .iter()
        .map(|(m, c)| (key(m), (*m, c.clone())))
        .collect();
    let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((_, (lm_r, lc_r))) = rem.pop_last() {
        let Some(t) = lm_r.checked_div(&lm_d) else {
            return Ok(None);
        };
        let c = &lc_r / &lc_d;
        for (m, dc) in d.terms().iter().skip(1) {
            let mm = t.mul(m);
            let k = key(&mm);
            let delta = &c * dc;
            match rem.get_mut(&k) {
                Some((_, v)) => {
                    *v -= delta;
                    if v.is_zero() {
                        rem.remove(&k);
                    }
                }
                None => {
                    rem.insert(k, (mm, -delta));
                }
            }
        }
        quotient.push((t, c));
    }
    // Leading terms are produced in decreasing order.
    Ok(Some(Poly::from_terms(alpha, quotient)?))
}

/// True iff `Delta` divides `p`. `E4^3 - E6^2` is irreducible and the cusp
/// curve it cuts out is parametrized by `E4 = t^2, E6 = t^3`, so
/// divisibility is vanishing after that substitution.
pub fn divisible_by_delta(p: &Poly) -> bool {
    let mut acc: FxHashMap<(u32, Monomial), Rational> = FxHashMap::default();
    for (m, c) in p.terms() {
        let t = 2 * m.exp(E4) as u32 + 3 * m.exp(E6) as u32;
        let rest = m.with_exp(E4, 0).with_exp(E6, 0);
        *acc.entry((t, rest)).or_insert_with(Rational::zero) += c;
    }
    acc.values().all(|c| c.is_zero())
}

/// `num / (E4^e4_pow * Delta^delta_pow)` over `AB`, kept normalized:
/// `num` is not divisible by `E4` while `e4_pow > 0`, nor by `Delta`
/// while `delta_pow > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frac {
    num: Poly,
    e4_pow: u32,
    delta_pow: u32,
}

impl Frac {
    pub fn new(num: Poly, e4_pow: u32, delta_pow: u32) -> Result<Frac, RingError> {
        if !num.alphabet().same(&AB) {
            return Err(RingError::AlphabetMismatch {
                left: AB.name,
                right: num.alphabet().name,
            });
        }
        let mut f = Frac {
            num,
            e4_pow,
            delta_pow,
        };
        f.normalize();
        Ok(f)
    }

    pub fn from_poly(num: Poly) -> Result<Frac, RingError> {
        Frac::new(num, 0, 0)
    }

    pub fn zero() -> Frac {
        Frac {
            num: Poly::zero(&AB),
            e4_pow: 0,
            delta_pow: 0,
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn e4_pow(&self) -> u32 {
        self.e4_pow
    }

    pub fn delta_pow(&self) -> u32 {
        self.delta_pow
    }

    pub fn into_parts(self) -> (Poly, u32, u32) {
        (self.num, self.e4_pow, self.delta_pow)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn bidegree(&self) -> Option<BiDegree> {
        self.num.bidegree().map(|d| {
            d - BiDegree::new(4 * self.e4_pow as i32 + 12 * self.delta_pow as i32, 0)
        })
    }

    /// Divides out every common `E4` and `Delta` factor. Idempotent.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.e4_pow = 0;
            self.delta_pow = 0;
            return;
        }
        let common = self.num.min_exp(E4).min(self.e4_pow.min(u16::MAX as u32) as u16);
        if common > 0 {
            self.num = self
                .num
                .div_monomial(&Monomial::power(E4, common))
                .expect("E4 power divides every term");
            self.e4_pow -= common as u32;
        }
        let delta = delta_polynomial();
        while self.delta_pow > 0 && divisible_by_delta(&self.num) {
            self.num = divexact(&self.num, &delta)
                .expect("same alphabet")
                .expect("vanishing on the cusp curve implies divisibility");
            self.delta_pow -= 1;
        }
    }

    /// Rewrites over the denominator `E4^p Delta^q` (both at least the
    /// current exponents). The result is not normalized.
    pub fn numerator_over(&self, p: u32, q: u32) -> Poly {
        assert!(p >= self.e4_pow && q >= self.delta_pow);
        let mut num = self
            .num
            .mul_monomial(&Monomial::power(E4, (p - self.e4_pow) as u16));
        if q > self.delta_pow {
            num = num
                .mul(&delta_power(&AB, q - self.delta_pow))
                .expect("same alphabet");
        }
        num
    }

    pub fn mul(&self, rhs: &Frac) -> Frac {
        let mut f = Frac {
            num: self.num.mul(&rhs.num).expect("both over AB"),
            e4_pow: self.e4_pow + rhs.e4_pow,
            delta_pow: self.delta_pow + rhs.delta_pow,
        };
        f.normalize();
        f
    }

    pub fn checked_add(&self, rhs: &Frac) -> Result<Frac, RingError> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.bidegree() != rhs.bidegree() {
            return Err(RingError::Inhomogeneous {
                left: self.bidegree().unwrap(),
                right: rhs.bidegree().unwrap(),
            });
        }
        let p = self.e4_pow.max(rhs.e4_pow);
        let q = self.delta_pow.max(rhs.delta_pow);
        let num = self.numerator_over(p, q).checked_add(&rhs.numerator_over(p, q))?;
        Frac::new(num, p, q)
    }

    pub fn scale(&self, c: &Rational) -> Frac {
        if c.is_zero() {
            return Frac::zero();
        }
        Frac {
            num: self.num.scale(c),
            e4_pow: self.e4_pow,
            delta_pow: self.delta_pow,
        }
    }

    /// Multiplies by `E4^a E6^b`; only `E4` can cancel a denominator factor.
    pub fn mul_modular_monomial(&self, a: u16, b: u16) -> Frac {
        let cancel = (a as u32).min(self.e4_pow);
        let extra = Monomial::power(E4, a - cancel as u16).mul(&Monomial::power(E6, b));
        Frac {
            num: self.num.mul_monomial(&extra),
            e4_pow: self.e4_pow - cancel,
            delta_pow: self.delta_pow,
        }
    }

    pub fn pow(&self, n: u32) -> Frac {
        let mut f = Frac {
            num: self.num.pow_fast(n),
            e4_pow: self.e4_pow * n,
            delta_pow: self.delta_pow * n,
        };
        f.normalize();
        f
    }

    /// The polynomial when there is no denominator.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.e4_pow == 0 && self.delta_pow == 0).then_some(&self.num)
    }

    pub fn e4_split(&self) -> Result<E4Split<Rational>, RingError> {
        if self.delta_pow != 0 {
            return Err(RingError::DeltaDenominator(self.delta_pow));
        }
        Ok(e4_split(&self.num, self.e4_pow))
    }
}

/// A parametric fraction: `num` carries linear forms in the unknowns.
/// Built per unknown, so `delta_pow` is the largest normalized `Delta`
/// power among the unknown parts.
#[derive(Clone, Debug)]
pub struct ParamFrac {
    pub num: ParamPoly,
    pub e4_pow: u32,
    pub delta_pow: u32,
}

/// `num / E4^p = sum_l Q_l / E4^l + R` with `Q_l, R` free of negative
/// powers and every `Q_l` free of `E4`.
#[derive(Clone, Debug, PartialEq)]
pub struct E4Split<C: Coefficient> {
    /// `(l, Q_l)` for `1 <= l <= l1` with `Q_l != 0`, ascending in `l`.
    pub q_parts: Vec<(u32, Polynomial<C>)>,
    pub remainder: Polynomial<C>,
    pub e4_pow: u32,
}

impl<C: Coefficient> E4Split<C> {
    /// Largest `l` with `Q_l != 0` (0 when there are none).
    pub fn l1(&self) -> u32 {
        self.q_parts.last().map(|(l, _)| *l).unwrap_or(0)
    }

    pub fn q(&self, l: u32) -> Option<&Polynomial<C>> {
        self.q_parts.iter().find(|(k, _)| *k == l).map(|(_, q)| q)
    }
}

/// Splits `num / E4^e4_pow` by powers of `E4`.
pub fn e4_split<C: Coefficient>(num: &Polynomial<C>, e4_pow: u32) -> E4Split<C> {
    let alpha = num.alphabet();
    let mut parts: BTreeMap<u32, Vec<(Monomial, C)>> = BTreeMap::new();
    let mut rem: Vec<(Monomial, C)> = Vec::new();
    for (m, c) in num.terms() {
        let j = m.exp(E4) as u32;
        if j >= e4_pow {
            rem.push((m.with_exp(E4, (j - e4_pow) as u16), c.clone()));
        } else {
            let l = e4_pow - j;
            parts
                .entry(l)
                .or_default()
                .push((m.with_exp(E4, 0), c.clone()));
        }
    }
    // Stripping a fixed E4 power keeps the relative order of terms.
    let q_parts = parts
        .into_iter()
        .map(|(l, terms)| (l, Polynomial::from_sorted_unchecked(alpha, terms)))
        .collect();
    E4Split {
        q_parts,
        remainder: Polynomial::from_sorted_unchecked(alpha, rem),
        e4_pow,
    }
}

impl E4Split<Rational> {
    /// Recombines over `E4^e4_pow` into a normalized fraction.
    pub fn recombine(&self) -> Result<Frac, RingError> {
        let p = self.e4_pow;
        let mut num = self
            .remainder
            .mul_monomial(&Monomial::power(E4, p as u16));
        for (l, q) in &self.q_parts {
            let shifted = q.mul_monomial(&Monomial::power(E4, (p - l) as u16));
            num = num.checked_add(&shifted)?;
        }
        Frac::new(num, p, 0)
    }
}

/// `P_{16,5}`: the weight-16 index-5 polynomial in `E6, A_i, B_j` that is
/// divisible by `E4` as a Jacobi form.
pub fn p165() -> Poly {
    super::parse::parse_poly(
        &AB,
        "864 A1^3 A2 + 3825 A1 B2^2 - 770 E6 A3 B2 - 840 E6 A2 B3 + 60 E6 A1 B4 + 21 E6^2 A5",
    )
    .expect("P_{16,5} transcription")
}

#[cfg(test)]
mod tests {
    use super::super::alphabet::upper::{A1, A2, A5};
    use super::super::coeff::rat;
    use super::super::parse::parse_poly;
    use super::*;

    fn ab(s: &str) -> Poly {
        parse_poly(&AB, s).unwrap()
    }

    #[test]
    fn delta_coefficients() {
        let d = delta_polynomial();
        assert_eq!(d.bidegree(), Some(BiDegree::new(12, 0)));
        assert_eq!(d.coefficient(&Monomial::power(E4, 3)), Some(&ratio(1, 1728)));
        assert_eq!(d.coefficient(&Monomial::power(E6, 2)), Some(&ratio(-1, 1728)));
    }

    #[test]
    fn divexact_delta() {
        let q = divexact(&ab("E4^3 - E6^2"), &delta_polynomial()).unwrap().unwrap();
        assert_eq!(q, Poly::constant(&AB, rat(1728)));
    }

    #[test]
    fn divexact_product() {
        let p = p165().mul(&ab("A1")).unwrap();
        assert_eq!(divexact(&p, &p165()).unwrap().unwrap(), ab("A1"));
    }

    #[test]
    fn divexact_reports_non_divisibility() {
        // Oracle: E4*A2 - A1^2 has the E4-free term -A1^2, so no multiple
        // of E4 can equal it.
        let p = ab("E4 A2 - A1^2");
        assert_eq!(divexact(&p, &ab("E4")).unwrap(), None);
        assert!(matches!(
            divexact(&p, &Poly::zero(&AB)),
            Err(RingError::ZeroDivisor)
        ));
    }

    #[test]
    fn delta_test_matches_division() {
        let yes = ab("(E4^3 - E6^2) (A1^2 E6 + E4 A2 E6 - 3 B2 E4^2)");
        let no = ab("(E4^3 + E6^2) A1");
        assert!(divisible_by_delta(&yes));
        assert!(divexact(&yes, &delta_polynomial()).unwrap().is_some());
        assert!(!divisible_by_delta(&no));
        assert!(divexact(&no, &delta_polynomial()).unwrap().is_none());
    }

    #[test]
    fn p165_shape() {
        let p = p165();
        assert_eq!(p.len(), 6);
        assert_eq!(p.bidegree(), Some(BiDegree::new(16, 5)));
        assert_eq!(p.max_exp(E4), 0);
        let a1a1a1a2 = Monomial::power(A1, 3).mul(&Monomial::unit(A2));
        assert_eq!(p.coefficient(&a1a1a1a2), Some(&rat(864)));
        let e6e6a5 = Monomial::power(E6, 2).mul(&Monomial::unit(A5));
        assert_eq!(p.coefficient(&e6e6a5), Some(&rat(21)));
    }

    #[test]
    fn normalization_divides_common_factors() {
        let f = Frac::new(ab("E4 (E4^3 - E6^2) A1"), 2, 1).unwrap();
        assert_eq!(f.num(), &ab("1728 A1"));
        assert_eq!((f.e4_pow(), f.delta_pow()), (1, 0));
        let mut g = f.clone();
        g.normalize();
        assert_eq!(g, f);
    }

    #[test]
    fn e4_split_without_denominator() {
        let f = Frac::from_poly(ab("E4 E6 A2 + E4^2 B2 + E6 A1^2")).unwrap();
        let s = f.e4_split().unwrap();
        assert!(s.q_parts.is_empty());
        assert_eq!(&s.remainder, f.num());
    }

    #[test]
    fn e4_split_rejects_delta_denominator() {
        let f = Frac::new(ab("A1"), 0, 1).unwrap();
        assert!(matches!(f.e4_split(), Err(RingError::DeltaDenominator(1))));
    }

    #[test]
    fn e4_split_reconstructs() {
        let f = Frac::new(ab("E6^2 A1^5 + 3 E4 E6^2 A1^3 A2 - E4^5 A1 A2^2 + E4^7 A5"), 3, 0)
            .unwrap();
        let s = f.e4_split().unwrap();
        assert_eq!(s.l1(), 3);
        assert_eq!(s.q(3).unwrap(), &ab("E6^2 A1^5"));
        assert_eq!(s.q(2).unwrap(), &ab("3 E6^2 A1^3 A2"));
        assert!(s.q(1).is_none());
        assert_eq!(s.remainder, ab("-E4^2 A1 A2^2 + E4^4 A5"));
        assert_eq!(s.recombine().unwrap(), f);
    }
}
