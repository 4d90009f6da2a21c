//! Substitutions `ab -> AB` (into fractions) and `AB -> ab` (into polynomials).

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use rustc_hash::FxHashMap;

use super::alphabet::{lower, Alphabet, Monomial, AB, LOWER_AB};
use super::coeff::Rational;
use super::frac::{delta_in, divexact, Frac};
use super::poly::Poly;
use super::tables::{lower_in_upper, transcriptions_text, upper_in_lower};
use super::RingError;

/// Memoizes the images of `ab` monomials without `E4, E6` factors.
#[derive(Default)]
pub struct Substituter {
    images: RwLock<FxHashMap<Monomial, Arc<Frac>>>,
}

impl Substituter {
    pub fn new() -> Self {
        Substituter::default()
    }

    /// Process-wide instance.
    pub fn global() -> &'static Substituter {
        static S: OnceLock<Substituter> = OnceLock::new();
        S.get_or_init(Substituter::new)
    }

    fn index_image(&self, m: &Monomial) -> Arc<Frac> {
        if let Some(f) = self.images.read().unwrap().get(m) {
            return f.clone();
        }
        let f = match (lower::A2..=lower::B6).rev().find(|&i| m.exp(i) > 0) {
            None => Frac::from_poly(Poly::one(&AB)).unwrap(),
            Some(i) => {
                let rest = m.with_exp(i, m.exp(i) - 1);
                self.index_image(&rest).mul(lower_in_upper(i))
            }
        };
        let f = Arc::new(f);
        self.images.write().unwrap().insert(*m, f.clone());
        f
    }

    /// Image of an `ab` monomial as a normalized fraction over `AB`.
    pub fn monomial_image(&self, m: &Monomial) -> Frac {
        let a = m.exp(lower::E4);
        let b = m.exp(lower::E6);
        let core = m.with_exp(lower::E4, 0).with_exp(lower::E6, 0);
        self.index_image(&core).mul_modular_monomial(a, b)
    }

    /// Substitutes the `ab` definitions into `p`.
    pub fn substitute(&self, p: &Poly) -> Result<Frac, RingError> {
        check(p.alphabet(), &LOWER_AB)?;
        let items = p
            .terms()
            .iter()
            .map(|(m, c)| (c.clone(), self.monomial_image(m)));
        sum_fracs(items)
    }
}

fn check(a: &Alphabet, expected: &'static Alphabet) -> Result<(), RingError> {
    if a.same(expected) {
        Ok(())
    } else {
        Err(RingError::AlphabetMismatch {
            left: expected.name,
            right: a.name,
        })
    }
}

/// `sum c_i f_i` over the common denominator, normalized. Summands are
/// grouped by denominator first so each group is lifted once.
pub fn sum_fracs(items: impl IntoIterator<Item = (Rational, Frac)>) -> Result<Frac, RingError> {
    let mut groups: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (c, f) in items {
        if f.is_zero() || num_traits::Zero::is_zero(&c) {
            continue;
        }
        let key = (f.e4_pow(), f.delta_pow());
        let scaled = f.num().scale(&c);
        match groups.get_mut(&key) {
            Some(acc) => *acc = acc.checked_add(&scaled)?,
            None => {
                groups.insert(key, scaled);
            }
        }
    }
    let p = groups.keys().map(|k| k.0).max().unwrap_or(0);
    let q = groups.keys().map(|k| k.1).max().unwrap_or(0);
    let mut num = Poly::zero(&AB);
    for ((e, d), part) in groups {
        if part.is_zero() {
            continue;
        }
        let lifted = Frac::new(part, e, d)?.numerator_over(p, q);
        num = num.checked_add(&lifted)?;
    }
    Frac::new(num, p, q)
}

/// `p(a_i, b_j)` written over `AB`.
pub fn sub_ab_to_upper(p: &Poly) -> Result<Frac, RingError> {
    Substituter::global().substitute(p)
}

/// `p(A_i, B_j)` written over `ab`.
pub fn sub_upper_to_ab(p: &Poly) -> Result<Poly, RingError> {
    check(p.alphabet(), &AB)?;
    let mut cache: FxHashMap<Monomial, Poly> = FxHashMap::default();
    let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
    for (m, c) in p.terms() {
        let e4 = m.exp(0);
        let e6 = m.exp(1);
        let core = m.with_exp(0, 0).with_exp(1, 0);
        let img = match cache.get(&core) {
            Some(img) => img.clone(),
            None => {
                let mut img = Poly::one(&LOWER_AB);
                for i in 2..super::NGEN {
                    let e = core.exp(i);
                    if e > 0 {
                        img = img.mul(&upper_in_lower(i).pow_fast(e as u32))?;
                    }
                }
                cache.insert(core, img.clone());
                img
            }
        };
        let shift = Monomial::power(lower::E4, e4).mul(&Monomial::power(lower::E6, e6));
        for (t, d) in img.terms() {
            *acc.entry(t.mul(&shift)).or_default() += c * d;
        }
    }
    Poly::from_terms(&LOWER_AB, acc)
}

/// A fraction over `AB` rewritten as a polynomial over `ab`, when it is one.
pub fn frac_to_lower(f: &Frac) -> Result<Poly, RingError> {
    let mut num = sub_upper_to_ab(f.num())?;
    num = num
        .div_monomial(&Monomial::power(lower::E4, f.e4_pow() as u16))
        .ok_or(RingError::NotPolynomial(LOWER_AB.name))?;
    let delta = delta_in(&LOWER_AB);
    for _ in 0..f.delta_pow() {
        num = divexact(&num, &delta)?.ok_or(RingError::NotPolynomial(LOWER_AB.name))?;
    }
    Ok(num)
}

/// Canonical text of the alphabets and every transcribed relation; any
/// change to it invalidates cached results.
pub fn definitions_text() -> String {
    format!(
        "{}\n{}\n{}",
        AB.definition(),
        LOWER_AB.definition(),
        transcriptions_text()
    )
}

#[cfg(test)]
mod tests {
    use super::super::alphabet::upper;
    use super::super::coeff::{rat, ratio};
    use super::super::frac::{delta_polynomial, p165};
    use super::super::parse::parse_poly;
    use super::super::tables::p165_over_e4_in_ab;
    use super::*;

    fn ab(s: &str) -> Poly {
        parse_poly(&LOWER_AB, s).unwrap()
    }

    #[test]
    fn every_generator_round_trips() {
        for i in 0..super::super::NGEN {
            let x = Poly::generator(&LOWER_AB, i);
            let back = frac_to_lower(&sub_ab_to_upper(&x).unwrap()).unwrap();
            assert_eq!(back, x, "{}", LOWER_AB.symbol(i));
            let y = Poly::generator(&AB, i);
            let img = sub_upper_to_ab(&y).unwrap();
            let back = sub_ab_to_upper(&img).unwrap();
            assert_eq!(back.as_poly(), Some(&y), "{}", AB.symbol(i));
        }
    }

    #[test]
    fn generator_bidegrees_survive() {
        for i in 0..super::super::NGEN {
            let f = lower_in_upper(i);
            assert_eq!(f.bidegree().unwrap(), LOWER_AB.generators[i].degree);
            let p = upper_in_lower(i);
            assert_eq!(p.bidegree().unwrap(), AB.generators[i].degree);
        }
    }

    #[test]
    fn b1_is_simple() {
        let f = sub_ab_to_upper(&ab("b1")).unwrap();
        assert_eq!(f.e4_pow(), 1);
        assert_eq!(f.delta_pow(), 0);
        assert_eq!(f.num(), &parse_poly(&AB, "-4 A1").unwrap());
        let g = sub_ab_to_upper(&ab("-1/4 E4 b1")).unwrap();
        assert_eq!(g.as_poly(), Some(&Poly::generator(&AB, upper::A1)));
    }

    #[test]
    fn delta_is_fixed() {
        let d = delta_in(&LOWER_AB);
        assert_eq!(sub_ab_to_upper(&d).unwrap().as_poly(), Some(&delta_polynomial()));
    }

    #[test]
    fn p165_over_e4_matches() {
        let f = sub_ab_to_upper(p165_over_e4_in_ab()).unwrap();
        let expected = Frac::new(p165(), 1, 0).unwrap();
        assert_eq!(f, expected);
        let g = sub_upper_to_ab(&p165()).unwrap();
        let h = p165_over_e4_in_ab()
            .mul(&Poly::generator(&LOWER_AB, lower::E4))
            .unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn sum_cancels_denominators() {
        let f = lower_in_upper(lower::A2).clone();
        let s = sum_fracs([(rat(1), f.clone()), (rat(-1), f)]).unwrap();
        assert!(s.is_zero());
        let g = sum_fracs([(ratio(1, 2), lower_in_upper(lower::B1).clone())]).unwrap();
        assert_eq!(g.num(), &parse_poly(&AB, "-2 A1").unwrap());
    }

    #[test]
    fn a2_pole_structure() {
        let f = lower_in_upper(lower::A2);
        assert_eq!((f.e4_pow(), f.delta_pow()), (1, 1));
        let s = f.clone().e4_split();
        assert!(s.is_err());
    }
}
