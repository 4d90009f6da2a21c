//! Theta functions, eta, Eisenstein series and the helpers `e_j`, `h_0`.

use e8jacobi_core::graded_ring::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{pi, real_from_f64, Cx};
use crate::{EvalContext, OracleError};

/// One-variable theta sums at a fixed `tau` and `z`.
#[derive(Clone, Debug)]
pub struct Thetas {
    pub t1: Cx,
    pub t2: Cx,
    pub t3: Cx,
    pub t4: Cx,
}

/// Truncation bound for `sum_n y^n q^(n^2/2)` so that the omitted terms are
/// below `10^-(digits+10)` relative to the largest one.
pub fn theta_terms(im_tau: f64, im_z: f64, digits: u32) -> Result<usize, OracleError> {
    if im_tau.is_nan() || im_tau <= 0.0 {
        return Err(OracleError::PrecisionUnreachable { im_tau });
    }
    // |term_n| = exp(-pi t n^2 + 2 pi s |n|)
    let (t, s) = (im_tau, im_z.abs());
    let l = (digits as f64 + 10.0) * std::f64::consts::LN_10;
    let peak = s / t;
    let n = peak + (peak * peak + l / (std::f64::consts::PI * t)).sqrt() + 2.0;
    if n > 1.0e5 {
        return Err(OracleError::PrecisionUnreachable { im_tau });
    }
    Ok(n.ceil() as usize)
}

fn im_f64(x: &Cx) -> f64 {
    crate::complex::real_to_f64(&x.im)
}

/// `sum_k s(k) a^(k^2) y^k` over `k` in `Z + c` (`c` = 0 or 1/2) in both
/// directions, for the plain and alternating sign patterns at once.
/// `start_pos`/`start_neg` are the first terms on each side, `g0` the first
/// increment `a^(2k+1)`, and `a2 = a^2`.
fn two_sided(
    n: usize,
    start_pos: Cx,
    start_neg: Cx,
    y: &Cx,
    y_inv: &Cx,
    g0: &Cx,
    a2: &Cx,
) -> (Cx, Cx, Cx, Cx) {
    // returns (sum_pos, alt_pos, sum_neg, alt_neg), alternation starting at +
    let side = |mut term: Cx, step: &Cx| -> (Cx, Cx) {
        let p = term.p;
        let mut plain = Cx::zero(p);
        let mut alt = Cx::zero(p);
        let mut g = g0.clone();
        for i in 0..n {
            plain = &plain + &term;
            alt = if i % 2 == 0 { &alt + &term } else { &alt - &term };
            term = &(&term * &g) * step;
            g = &g * a2;
        }
        (plain, alt)
    };
    let (sp, ap) = side(start_pos, y);
    let (sn, an) = side(start_neg, y_inv);
    (sp, ap, sn, an)
}

/// All four `theta_k(z, tau)`.
pub fn thetas(z: &Cx, tau: &Cx, ctx: &EvalContext) -> Result<Thetas, OracleError> {
    let p = ctx.bits();
    let n = theta_terms(im_f64(tau), im_f64(z), ctx.digits)?;
    let pi_i_tau = tau.mul_i().scale(&pi(p));
    let a = pi_i_tau.exp();
    let a2 = &a * &a;
    let a_quarter = pi_i_tau.scale(&real_from_f64(0.25, p)).exp();
    let y_half = z.mul_i().scale(&pi(p)).exp();
    let y_half_inv = y_half.recip();
    let y = &y_half * &y_half;
    let y_inv = &y_half_inv * &y_half_inv;

    // integer k: k = 0 counted once, then k = 1, 2, ... and -1, -2, ...
    let one = Cx::one(p);
    let first_pos = &a * &y;
    let first_neg = &a * &y_inv;
    let g0 = &a * &a2; // a^3 = a^(2*1+1)
    let (sp, ap, sn, an) = two_sided(n, first_pos, first_neg, &y, &y_inv, &g0, &a2);
    let t3 = &(&one + &sp) + &sn;
    // alternating sums start at k = +-1 with sign -1
    let t4 = &(&one - &ap) - &an;

    // half-integer k = 1/2, 3/2, ... and -1/2, -3/2, ...
    let h_pos = &a_quarter * &y_half;
    let h_neg = &a_quarter * &y_half_inv;
    let (hp, hap, hn, han) = two_sided(n, h_pos, h_neg, &y, &y_inv, &a2, &a2);
    let t2 = &hp + &hn;
    // theta_1 = i sum_n (-1)^n y^(n-1/2) q^((n-1/2)^2/2): k = n - 1/2,
    // sign -1 at k = 1/2 (n = 1) and +1 at k = -1/2 (n = 0)
    let t1 = (&han - &hap).mul_i();
    Ok(Thetas { t1, t2, t3, t4 })
}

/// `theta_k(0, tau)`, `k = 1..4`.
pub fn theta_null(k: u8, tau: &Cx, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let t = thetas(&Cx::zero(ctx.bits()), tau, ctx)?;
    Ok(match k {
        1 => t.t1,
        2 => t.t2,
        3 => t.t3,
        4 => t.t4,
        _ => panic!("theta index {k}"),
    })
}

/// Number of `q`-series terms until `n^power |q|^n` drops below the target.
fn q_terms(q_abs: f64, power: u32, digits: u32) -> Result<usize, OracleError> {
    if q_abs.is_nan() || q_abs >= 1.0 {
        return Err(OracleError::PrecisionUnreachable { im_tau: -q_abs.ln() / (2.0 * std::f64::consts::PI) });
    }
    let target = -((digits as f64) + 10.0) * std::f64::consts::LN_10;
    let mut n = 1usize;
    while (power as f64) * (n as f64).ln() + (n as f64) * q_abs.ln() > target {
        n += 1;
        if n > 1_000_000 {
            return Err(OracleError::PrecisionUnreachable { im_tau: -q_abs.ln() / (2.0 * std::f64::consts::PI) });
        }
    }
    Ok(n)
}

fn q_of(tau: &Cx) -> Cx {
    tau.e2pi()
}

/// Dedekind eta.
pub fn eta(tau: &Cx, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let p = ctx.bits();
    let q = q_of(tau);
    let n = q_terms(q.abs_f64(), 0, ctx.digits)?;
    let mut prod = Cx::one(p);
    let mut qn = q.clone();
    for _ in 0..n {
        prod = &prod * &(&Cx::one(p) - &qn);
        qn = &qn * &q;
    }
    let tau24 = tau.scale(&crate::complex::real_from_rational(
        &Rational::new(BigInt::one(), BigInt::from(24)),
        p,
    ));
    Ok(&tau24.e2pi() * &prod)
}

/// Bernoulli numbers `B_0 .. B_n` from `x/(e^x - 1)`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `E_{2n}(tau) = 1 - (4n/B_{2n}) sum_k k^(2n-1) q^k/(1-q^k)`.
pub fn eisenstein(two_n: u32, tau: &Cx, ctx: &EvalContext) -> Result<Cx, OracleError> {
    assert!(two_n >= 2 && two_n.is_multiple_of(2));
    let p = ctx.bits();
    let b = &bernoulli(two_n as usize)[two_n as usize];
    let factor = Rational::from_integer(BigInt::from(2 * two_n)) / b;
    let q = q_of(tau);
    let n = q_terms(q.abs_f64(), two_n - 1, ctx.digits)?;
    let mut sum = Cx::zero(p);
    let mut qk = q.clone();
    for k in 1..=n {
        let kp = Cx::from_rational(&Rational::from_integer(BigInt::from(k).pow(two_n - 1)), p);
        let term = &(&kp * &qk) / &(&Cx::one(p) - &qk);
        sum = &sum + &term;
        qk = &qk * &q;
    }
    Ok(&Cx::one(p) - &(&sum * &Cx::from_rational(&factor, p)))
}

/// `dE4/dtau = 240 * 2 pi i * sum_k k^4 q^k / (1 - q^k)^2`.
pub fn e4_derivative(tau: &Cx, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let p = ctx.bits();
    let q = q_of(tau);
    let n = q_terms(q.abs_f64(), 4, ctx.digits)?;
    let mut sum = Cx::zero(p);
    let mut qk = q.clone();
    for k in 1..=n as i64 {
        let d = &Cx::one(p) - &qk;
        sum = &sum + &(&qk.scale_i64(k * k * k * k) / &(&d * &d));
        qk = &qk * &q;
    }
    Ok(sum.scale(&pi(p)).scale_i64(480).mul_i())
}

/// Zero of `E4` near `exp(pi i/3)`, refined by Newton iteration.
pub fn e4_zero(ctx: &EvalContext) -> Result<Cx, OracleError> {
    let p = ctx.bits();
    let mut tau = Cx::from_f64(0.5, 3f64.sqrt() / 2.0 + 1e-3, p);
    for _ in 0..60 {
        let f = eisenstein(4, &tau, ctx)?;
        let df = e4_derivative(&tau, ctx)?;
        let step = &f / &df;
        tau = &tau - &step;
        if step.abs_f64() < 10f64.powi(-(ctx.digits as i32) - 5) {
            break;
        }
    }
    Ok(tau)
}

pub fn e_j(j: u8, tau: &Cx, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let t = thetas(&Cx::zero(ctx.bits()), tau, ctx)?;
    let (t2, t3, t4) = (t.t2.powi(4), t.t3.powi(4), t.t4.powi(4));
    let v = match j {
        1 => &t3 + &t4,
        2 => &t2 - &t4,
        3 => -(&t2 + &t3),
        _ => panic!("e_j index {j}"),
    };
    Ok(&v / &Cx::from_i64(12, ctx.bits()))
}

/// `h_0 = theta_3(2 tau) theta_3(6 tau) + theta_2(2 tau) theta_2(6 tau)`.
pub fn h0(tau: &Cx, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let z = Cx::zero(ctx.bits());
    let a = thetas(&z, &tau.scale_i64(2), ctx)?;
    let b = thetas(&z, &tau.scale_i64(6), ctx)?;
    Ok(&(&a.t3 * &b.t3) + &(&a.t2 * &b.t2))
}
