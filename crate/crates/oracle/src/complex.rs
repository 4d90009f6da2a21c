//! Multi-precision complex numbers on top of `astro_float`.
//!
//! Every value carries its working precision in bits; binary operations
//! use the larger of the two.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use e8jacobi_core::graded_ring::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Bits needed for `digits` decimal digits, plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

pub fn real_from_f64(x: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(x, p)
}

pub fn real_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    with_consts(|cc| x.format(Radix::Dec, RM, cc))
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(f64::NAN)
}

pub fn pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

fn parse_int(s: &str, p: usize) -> BigFloat {
    with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc))
}

pub fn real_from_rational(q: &Rational, p: usize) -> BigFloat {
    let n = parse_int(&q.numer().to_string(), p);
    if q.denom() == &1.into() {
        return n;
    }
    n.div(&parse_int(&q.denom().to_string(), p), p, RM)
}

#[derive(Clone)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
    pub p: usize,
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({re:e} {im:+e}i)")
    }
}

impl Cx {
    pub fn new(re: BigFloat, im: BigFloat, p: usize) -> Cx {
        Cx { re, im, p }
    }

    pub fn zero(p: usize) -> Cx {
        Cx::from_f64(0.0, 0.0, p)
    }

    pub fn one(p: usize) -> Cx {
        Cx::from_f64(1.0, 0.0, p)
    }

    pub fn i(p: usize) -> Cx {
        Cx::from_f64(0.0, 1.0, p)
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Cx {
        Cx::new(real_from_f64(re, p), real_from_f64(im, p), p)
    }

    pub fn from_i64(n: i64, p: usize) -> Cx {
        Cx::new(BigFloat::from_i64(n, p), BigFloat::from_f64(0.0, p), p)
    }

    pub fn from_real(re: BigFloat, p: usize) -> Cx {
        Cx::new(re, BigFloat::from_f64(0.0, p), p)
    }

    pub fn from_rational(q: &Rational, p: usize) -> Cx {
        Cx::from_real(real_from_rational(q, p), p)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (real_to_f64(&self.re), real_to_f64(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Cx {
        Cx::new(self.re.clone(), self.im.clone().neg(), self.p)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.p;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.p, RM)
    }

    pub fn abs_f64(&self) -> f64 {
        real_to_f64(&self.abs())
    }

    pub fn scale(&self, r: &BigFloat) -> Cx {
        Cx::new(self.re.mul(r, self.p, RM), self.im.mul(r, self.p, RM), self.p)
    }

    pub fn scale_i64(&self, n: i64) -> Cx {
        self.scale(&BigFloat::from_i64(n, self.p))
    }

    pub fn mul_i(&self) -> Cx {
        Cx::new(self.im.clone().neg(), self.re.clone(), self.p)
    }

    pub fn recip(&self) -> Cx {
        let n = self.norm_sqr();
        let p = self.p;
        Cx::new(self.re.div(&n, p, RM), self.im.clone().neg().div(&n, p, RM), p)
    }

    pub fn powi(&self, mut n: u32) -> Cx {
        let mut base = self.clone();
        let mut acc = Cx::one(self.p);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through the reciprocal.
    pub fn powi_signed(&self, n: i32) -> Cx {
        if n >= 0 {
            self.powi(n as u32)
        } else {
            self.recip().powi(n.unsigned_abs())
        }
    }

    pub fn exp(&self) -> Cx {
        let p = self.p;
        with_consts(|cc| {
            let r = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            Cx::new(r.mul(&c, p, RM), r.mul(&s, p, RM), p)
        })
    }

    /// `exp(2 pi i self)`.
    pub fn e2pi(&self) -> Cx {
        let two_pi = pi(self.p).mul(&BigFloat::from_i64(2, self.p), self.p, RM);
        self.scale(&two_pi).mul_i().exp()
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Cx {
        let p = self.p;
        with_consts(|cc| {
            let r = self.abs().ln(p, RM, cc);
            Cx::new(r, atan2(&self.im, &self.re, p, cc), p)
        })
    }
}

fn atan2(y: &BigFloat, x: &BigFloat, p: usize, cc: &mut Consts) -> BigFloat {
    if x.is_zero() {
        let half_pi = cc.pi(p, RM).div(&BigFloat::from_i64(2, p), p, RM);
        return if y.is_negative() { half_pi.neg() } else { half_pi };
    }
    let base = y.div(x, p, RM).atan(p, RM, cc);
    if x.is_positive() {
        base
    } else if y.is_negative() {
        base.sub(&cc.pi(p, RM), p, RM)
    } else {
        base.add(&cc.pi(p, RM), p, RM)
    }
}

/// `|a - b| / max(|a|, |b|)`, or `|a - b|` when both are tiny.
pub fn relative_residual(a: &Cx, b: &Cx) -> f64 {
    let d = (a - b).abs_f64();
    let scale = a.abs_f64().max(b.abs_f64());
    if scale < 1e-300 {
        d
    } else {
        d / scale
    }
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        let p = self.p.max(o.p);
        Cx::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        let p = self.p.max(o.p);
        Cx::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }
}

impl Mul for &Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        let p = self.p.max(o.p);
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        Cx::new(re, im, p)
    }
}

impl Div for &Cx {
    type Output = Cx;
    fn div(self, o: &Cx) -> Cx {
        let r = o.recip();
        Mul::mul(self, &r)
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(self.re.clone().neg(), self.im.clone().neg(), self.p)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Cx {
            type Output = Cx;
            fn $f(self, o: Cx) -> Cx {
                (&self).$f(&o)
            }
        }
        impl $tr<&Cx> for Cx {
            type Output = Cx;
            fn $f(self, o: &Cx) -> Cx {
                (&self).$f(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        -&self
    }
}
