//! Membership certificates: `Delta^n * phi = sum_l P^l S_l / E4^l + R`
//! with `P = P_{16,5}`, every `S_l` free of `E4`.

use std::sync::{Arc, OnceLock, RwLock};

use crate::graded_ring::{
    delta_power, divexact, p165, sub_ab_to_upper, sum_fracs, upper, BiDegree, Frac, Poly,
    Rational, RingError, AB,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Power of `Delta` clearing the denominator.
    pub n: u32,
    /// `(l, S_l)` with `S_l != 0`, ascending in `l`; `S_l` is over `AB` without `E4`.
    pub s_parts: Vec<(u32, Poly)>,
    /// `R` over `AB`.
    pub remainder: Poly,
}

/// Why a concrete form is not a Jacobi form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub n: u32,
    /// First `l` whose `Q_l` is not a multiple of `P^l`.
    pub failing_l: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    Certified(Certificate),
    Rejected(Rejection),
}

impl Certification {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Rejected(_) => None,
        }
    }
}

/// `P_{16,5}^l`, memoized.
pub fn p165_power(l: u32) -> Arc<Poly> {
    static POWERS: OnceLock<RwLock<Vec<Arc<Poly>>>> = OnceLock::new();
    let lock = POWERS.get_or_init(|| RwLock::new(vec![Arc::new(Poly::one(&AB))]));
    if let Some(p) = lock.read().unwrap().get(l as usize) {
        return p.clone();
    }
    let mut v = lock.write().unwrap();
    let base = p165();
    while v.len() <= l as usize {
        let next = v.last().unwrap().mul(&base).expect("same alphabet");
        v.push(Arc::new(next));
    }
    v[l as usize].clone()
}

/// `Delta^n * f` as a fraction with only an `E4` denominator, when
/// `n >= f.delta_pow()`.
pub fn clear_delta(f: &Frac, n: u32) -> Result<Option<Frac>, RingError> {
    if n < f.delta_pow() {
        return Ok(None);
    }
    let extra = n - f.delta_pow();
    let mut num = f.num().clone();
    if extra > 0 {
        num = num.mul(&delta_power(&AB, extra))?;
    }
    Ok(Some(Frac::new(num, f.e4_pow(), 0)?))
}

impl Certificate {
    /// `sum_l P^l S_l / E4^l + R`.
    pub fn right_side(&self) -> Result<Frac, RingError> {
        let mut items = Vec::with_capacity(self.s_parts.len() + 1);
        for (l, s) in &self.s_parts {
            let q = p165_power(*l).mul(s)?;
            items.push((Rational::from_integer(1.into()), Frac::new(q, *l, 0)?));
        }
        items.push((
            Rational::from_integer(1.into()),
            Frac::from_poly(self.remainder.clone())?,
        ));
        sum_fracs(items)
    }

    /// Checks the identity against a form over `ab`, and the shape of the
    /// parts (no `E4` in any `S_l`, bidegrees consistent).
    pub fn verify(&self, form: &Poly) -> Result<bool, RingError> {
        if self.s_parts.iter().any(|(_, s)| s.max_exp(upper::E4) > 0) {
            return Ok(false);
        }
        let f = sub_ab_to_upper(form)?;
        if let (Some(d), Some(r)) = (form.bidegree(), self.remainder.bidegree()) {
            if r != d + BiDegree::new(12 * self.n as i32, 0) {
                return Ok(false);
            }
        }
        let Some(lhs) = clear_delta(&f, self.n)? else {
            return Ok(false);
        };
        Ok(lhs == self.right_side()?)
    }
}

/// Runs the membership test on a concrete form over `ab`.
pub fn certify(form: &Poly) -> Result<Certification, RingError> {
    let f = sub_ab_to_upper(form)?;
    let n = f.delta_pow();
    let cleared = clear_delta(&f, n)?.expect("n equals the Delta power");
    let split = cleared.e4_split()?;
    let mut s_parts = Vec::new();
    for (l, q) in &split.q_parts {
        let p = p165_power(*l);
        match divexact(q, &p)? {
            Some(s) if s.max_exp(upper::E4) == 0 => s_parts.push((*l, s)),
            _ => {
                return Ok(Certification::Rejected(Rejection {
                    n,
                    failing_l: *l,
                }))
            }
        }
    }
    Ok(Certification::Certified(Certificate {
        n,
        s_parts,
        remainder: split.remainder,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_ring::{p165_over_e4_in_ab, parse_poly, sub_upper_to_ab, LOWER_AB};

    fn ab(s: &str) -> Poly {
        parse_poly(&LOWER_AB, s).unwrap()
    }

    #[test]
    fn a1_certifies_trivially() {
        let a1 = sub_upper_to_ab(&Poly::generator(&AB, upper::A1)).unwrap();
        let c = certify(&a1).unwrap();
        let cert = c.certificate().unwrap();
        assert_eq!(cert.n, 0);
        assert!(cert.s_parts.is_empty());
        assert_eq!(cert.remainder, Poly::generator(&AB, upper::A1));
        assert!(cert.verify(&a1).unwrap());
    }

    #[test]
    fn meromorphic_generators_are_rejected() {
        for s in ["a2", "a3", "b1", "b5"] {
            let c = certify(&ab(s)).unwrap();
            assert!(matches!(c, Certification::Rejected(_)), "{s}");
        }
    }

    #[test]
    fn p165_over_e4_has_constant_s1() {
        let c = certify(p165_over_e4_in_ab()).unwrap();
        let cert = c.certificate().unwrap();
        assert_eq!(cert.n, 0);
        assert_eq!(cert.s_parts, vec![(1, Poly::one(&AB))]);
        assert!(cert.remainder.is_zero());
        assert!(cert.verify(p165_over_e4_in_ab()).unwrap());
    }

    #[test]
    fn tampered_certificate_fails() {
        let form = p165_over_e4_in_ab();
        let mut cert = certify(form).unwrap().certificate().unwrap().clone();
        cert.s_parts[0].1 = Poly::constant(&AB, Rational::from_integer(2.into()));
        assert!(!cert.verify(form).unwrap());
    }

    #[test]
    fn first_weight_minus_16_form_certifies() {
        let form = ab("E4^2 b5 + 18/5 E4 a2 b3 - 24/5 E4 a3 b2 + 12 E4 a4 b1");
        let c = certify(&form).unwrap();
        let cert = c.certificate().expect("first paper basis element certifies");
        assert!(cert.verify(&form).unwrap());
    }
}
