//! Point evaluation of the E8 theta function, the generators `A_m, B_m`,
//! the meromorphic `a_i, b_j` and of polynomials and certificates in them.

use std::cell::RefCell;

use e8jacobi_core::constructor::{p165_power, Certificate};
use e8jacobi_core::graded_ring::{
    lower_in_upper, p165, ratio, upper, Frac, Poly, Rational, AB, LOWER_AB, NGEN,
};

use crate::complex::{real_from_f64, Cx};
use crate::e8::{dot4, lattice_vectors, PhaseTable};
use crate::special::{e_j, eisenstein, h0, theta_null, thetas};
use crate::{EvalContext, OracleError};

/// A point of `H x C^8`.
#[derive(Clone, Debug)]
pub struct ComplexSample {
    pub tau: Cx,
    pub z: [Cx; 8],
}

impl ComplexSample {
    pub fn new(tau: Cx, z: [Cx; 8]) -> Result<Self, OracleError> {
        let im = tau.to_f64().1;
        if im.is_nan() || im <= 0.0 {
            return Err(OracleError::PrecisionUnreachable { im_tau: im });
        }
        Ok(ComplexSample { tau, z })
    }

    pub fn at_origin(tau: Cx) -> Result<Self, OracleError> {
        let p = tau.p;
        ComplexSample::new(tau, std::array::from_fn(|_| Cx::zero(p)))
    }

    pub fn from_f64(tau: (f64, f64), z: [(f64, f64); 8], p: usize) -> Result<Self, OracleError> {
        ComplexSample::new(
            Cx::from_f64(tau.0, tau.1, p),
            z.map(|(re, im)| Cx::from_f64(re, im, p)),
        )
    }

    pub fn with_tau(&self, tau: Cx) -> Result<Self, OracleError> {
        ComplexSample::new(tau, self.z.clone())
    }
}

/// `z . w` (bilinear, not Hermitian).
pub fn dot(z: &[Cx; 8], w: &[Cx; 8]) -> Cx {
    let mut acc = Cx::zero(z[0].p);
    for j in 0..8 {
        acc = &acc + &(&z[j] * &w[j]);
    }
    acc
}

/// A doubled-coordinate lattice vector as a complex 8-vector.
pub fn vector(v: &[i32; 8], p: usize) -> [Cx; 8] {
    v.map(|x| Cx::from_f64(x as f64 / 2.0, 0.0, p))
}

fn scaled(z: &[Cx; 8], c: i64) -> [Cx; 8] {
    std::array::from_fn(|j| z[j].scale_i64(c))
}

fn shift(tau: &Cx, k: i64, m: i64) -> Cx {
    let p = tau.p;
    &(tau + &Cx::from_i64(k, p)) / &Cx::from_i64(m, p)
}

fn rat(n: i64, d: i64, p: usize) -> Cx {
    Cx::from_rational(&ratio(n, d), p)
}

/// `Theta_E8(tau, z) = 1/2 sum_k prod_j theta_k(z_j, tau)`.
pub fn theta_e8(tau: &Cx, z: &[Cx; 8], ctx: &EvalContext) -> Result<Cx, OracleError> {
    let p = ctx.bits();
    let mut prods = [Cx::one(p), Cx::one(p), Cx::one(p), Cx::one(p)];
    for zj in z {
        let t = thetas(zj, tau, ctx)?;
        prods[0] = &prods[0] * &t.t1;
        prods[1] = &prods[1] * &t.t2;
        prods[2] = &prods[2] * &t.t3;
        prods[3] = &prods[3] * &t.t4;
    }
    let sum = &(&prods[0] + &prods[1]) + &(&prods[2] + &prods[3]);
    Ok(sum.scale(&real_from_f64(0.5, p)))
}

/// Direct truncated sum over lattice vectors of norm at most `max_norm`.
pub fn theta_e8_lattice(tau: &Cx, z: &[Cx; 8], max_norm: i32, ctx: &EvalContext) -> Cx {
    let p = ctx.bits();
    let vs = lattice_vectors(max_norm);
    let max = vs.iter().flat_map(|v| v.iter()).map(|x| x.abs()).max().unwrap_or(0);
    let phases = PhaseTable::new(z, max);
    // exp(pi i tau w^2) depends on the shell only
    let pi_i_tau = tau.mul_i().scale(&crate::complex::pi(p));
    let mut shells: Vec<Option<Cx>> = vec![None; (4 * max_norm + 1) as usize];
    let mut acc = Cx::zero(p);
    for v in &vs {
        let n4 = dot4(v, v) as usize;
        let weight = shells[n4]
            .get_or_insert_with(|| pi_i_tau.scale(&real_from_f64(n4 as f64 / 4.0, p)).exp())
            .clone();
        acc = &acc + &(&weight * &phases.phase(v));
    }
    acc
}

/// `A_m, B_m`, `E4`, `E6` by position in [`AB`].
pub fn eval_upper(i: usize, s: &ComplexSample, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let p = ctx.bits();
    let (tau, z) = (&s.tau, &s.z);
    let th = |t: &Cx, c: i64| -> Result<Cx, OracleError> {
        if c == 1 {
            theta_e8(t, z, ctx)
        } else {
            theta_e8(t, &scaled(z, c), ctx)
        }
    };
    let tm = |m: i64| tau.scale_i64(m);
    Ok(match i {
        upper::E4 => eisenstein(4, tau, ctx)?,
        upper::E6 => eisenstein(6, tau, ctx)?,
        upper::A1 => th(tau, 1)?,
        upper::A4 => th(tau, 2)?,
        upper::A2 | upper::A3 | upper::A5 => {
            let m = match i {
                upper::A2 => 2,
                upper::A3 => 3,
                _ => 5,
            };
            let mut inner = Cx::zero(p);
            for k in 0..m {
                inner = &inner + &th(&shift(tau, k, m), 1)?;
            }
            let body = &th(&tm(m), m)? + &(&inner * &rat(1, m.pow(4), p));
            &body * &rat(m.pow(3), m.pow(3) + 1, p)
        }
        upper::B2 => {
            let t1 = &e_j(1, tau, ctx)? * &th(&tm(2), 2)?;
            let t2 = &e_j(3, tau, ctx)? * &th(&shift(tau, 0, 2), 1)?;
            let t3 = &e_j(2, tau, ctx)? * &th(&shift(tau, 1, 2), 1)?;
            let body = &t1 + &(&(&t2 + &t3) * &rat(1, 16, p));
            &body * &rat(32, 5, p)
        }
        upper::B3 => {
            let mut inner = Cx::zero(p);
            for k in 0..3 {
                let t = shift(tau, k, 3);
                inner = &inner + &(&h0(&t, ctx)?.powi(2) * &th(&t, 1)?);
            }
            let body = &(&h0(tau, ctx)?.powi(2) * &th(&tm(3), 3)?) - &(&inner * &rat(1, 243, p));
            &body * &rat(81, 80, p)
        }
        upper::B4 => {
            let t4 = theta_null(4, &tm(2), ctx)?.powi(4);
            let half = &(tau + &Cx::from_f64(0.5, 0.0, p));
            let mut inner = Cx::zero(p);
            for k in 0..4 {
                let w = theta_null(2, &shift(tau, k, 2), ctx)?.powi(4);
                inner = &inner + &(&w * &th(&shift(tau, k, 4), 1)?);
            }
            let body = &(&(&t4 * &th(&tm(4), 4)?) - &(&(&t4 * &th(half, 2)?) * &rat(1, 16, p)))
                - &(&inner * &rat(1, 4 * 256, p));
            &body * &rat(16, 15, p)
        }
        upper::B6 => {
            let mut s2 = Cx::zero(p);
            for k in 0..2 {
                let t = tau + &Cx::from_i64(k, p);
                s2 = &s2 + &(&h0(&t, ctx)?.powi(2) * &th(&shift(&tm(3), 3 * k, 2), 3)?);
            }
            let mut s3 = Cx::zero(p);
            for k in 0..3 {
                let h = h0(&shift(tau, k, 3), ctx)?.powi(2);
                s3 = &s3 + &(&h * &th(&shift(&tm(2), 2 * k, 3), 2)?);
            }
            let mut s6 = Cx::zero(p);
            for k in 0..6 {
                let h = h0(&shift(tau, k, 3), ctx)?.powi(2);
                s6 = &s6 + &(&h * &th(&shift(tau, k, 6), 1)?);
            }
            let body = &(&(&h0(tau, ctx)?.powi(2) * &th(&tm(6), 6)?) + &(&s2 * &rat(1, 16, p)))
                - &(&(&s3 * &rat(1, 3 * 81, p)) + &(&s6 * &rat(1, 3 * 1296, p)));
            &body * &rat(9, 10, p)
        }
        _ => unreachable!("AB has {NGEN} generators"),
    })
}

/// Evaluates generators lazily at one sample, caching every value.
pub struct PointEval<'a> {
    pub sample: &'a ComplexSample,
    pub ctx: &'a EvalContext,
    upper: RefCell<Vec<Option<Cx>>>,
    lower: RefCell<Vec<Option<Cx>>>,
}

impl<'a> PointEval<'a> {
    pub fn new(sample: &'a ComplexSample, ctx: &'a EvalContext) -> Self {
        PointEval {
            sample,
            ctx,
            upper: RefCell::new(vec![None; NGEN]),
            lower: RefCell::new(vec![None; NGEN]),
        }
    }

    pub fn upper(&self, i: usize) -> Result<Cx, OracleError> {
        if let Some(v) = &self.upper.borrow()[i] {
            return Ok(v.clone());
        }
        let v = eval_upper(i, self.sample, self.ctx)?;
        self.upper.borrow_mut()[i] = Some(v.clone());
        Ok(v)
    }

    /// `a_i, b_j` (and `E4, E6`) by position in [`LOWER_AB`].
    pub fn lower(&self, i: usize) -> Result<Cx, OracleError> {
        if i < 2 {
            return self.upper(i);
        }
        if let Some(v) = &self.lower.borrow()[i] {
            return Ok(v.clone());
        }
        let v = self.frac(lower_in_upper(i))?;
        self.lower.borrow_mut()[i] = Some(v.clone());
        Ok(v)
    }

    pub fn delta(&self) -> Result<Cx, OracleError> {
        let e4 = self.upper(upper::E4)?;
        let e6 = self.upper(upper::E6)?;
        Ok(&(&e4.powi(3) - &e6.powi(2)) / &Cx::from_i64(1728, self.ctx.bits()))
    }

    /// `|E4|` relative to the weight-normalized size of the modular
    /// generators; zero exactly at the zeros of `E4`.
    pub fn e4_smallness(&self) -> Result<f64, OracleError> {
        let e4 = self.upper(upper::E4)?.abs_f64();
        let e6 = self.upper(upper::E6)?.abs_f64().powf(2.0 / 3.0);
        let d = (self.delta()?.abs_f64() * 1728.0).powf(1.0 / 3.0);
        let scale = e4.max(e6).max(d);
        Ok(if scale > 0.0 { e4 / scale } else { 0.0 })
    }

    /// A fraction over `AB`; fails near the zeros of `E4`.
    pub fn frac(&self, f: &Frac) -> Result<Cx, OracleError> {
        if f.e4_pow() > 0 {
            let s = self.e4_smallness()?;
            if s < self.ctx.singular_threshold {
                return Err(OracleError::NearSingular { what: "E4".into(), magnitude: s });
            }
        }
        let num = self.poly(f.num())?;
        let den = &self.upper(upper::E4)?.powi(f.e4_pow()) * &self.delta()?.powi(f.delta_pow());
        Ok(&num / &den)
    }

    /// A polynomial over either alphabet.
    pub fn poly(&self, f: &Poly) -> Result<Cx, OracleError> {
        let lower = if f.alphabet().same(&AB) {
            false
        } else if f.alphabet().same(&LOWER_AB) {
            true
        } else {
            return Err(OracleError::Alphabet(f.alphabet().name.to_string()));
        };
        let p = self.ctx.bits();
        let mut powers: Vec<Vec<Cx>> = Vec::with_capacity(NGEN);
        for i in 0..NGEN {
            let e = f.max_exp(i) as usize;
            let mut row = vec![Cx::one(p)];
            if e > 0 {
                let g = if lower { self.lower(i)? } else { self.upper(i)? };
                for _ in 0..e {
                    let next = row.last().unwrap() * &g;
                    row.push(next);
                }
            }
            powers.push(row);
        }
        let mut acc = Cx::zero(p);
        for (m, c) in f.terms() {
            let mut t = Cx::from_rational(c, p);
            for (i, row) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &row[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

/// `f` at one sample.
pub fn eval_poly(f: &Poly, s: &ComplexSample, ctx: &EvalContext) -> Result<Cx, OracleError> {
    PointEval::new(s, ctx).poly(f)
}

/// `A_m` or `B_m` by name (also `E4`, `E6`).
#[allow(non_snake_case)]
pub fn eval_AB(name: &str, s: &ComplexSample, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let i = AB.position(name).ok_or_else(|| OracleError::Alphabet(name.into()))?;
    eval_upper(i, s, ctx)
}

/// `a_i` or `b_j` by name.
pub fn eval_ab(name: &str, s: &ComplexSample, ctx: &EvalContext) -> Result<Cx, OracleError> {
    let i = LOWER_AB.position(name).ok_or_else(|| OracleError::Alphabet(name.into()))?;
    PointEval::new(s, ctx).lower(i)
}

/// Samples `f` on the circle `tau0 + radius e^(i theta_j)`, `j < points`.
pub fn circle_values(
    f: impl Fn(&ComplexSample) -> Result<Cx, OracleError> + Sync,
    center: &ComplexSample,
    radius: f64,
    points: usize,
) -> Result<Vec<(Cx, Cx)>, OracleError> {
    use rayon::prelude::*;
    let p = center.tau.p;
    (0..points)
        .into_par_iter()
        .map(|j| {
            let off = Cx::from_rational(&ratio(j as i64, points as i64), p)
                .e2pi()
                .scale(&real_from_f64(radius, p));
            let s = center.with_tau(&center.tau + &off)?;
            Ok((off, f(&s)?))
        })
        .collect()
}

/// Points on the mean-value circle around a possibly singular `tau`.
pub const MEAN_RADIUS: f64 = 0.05;
pub const MEAN_POINTS: usize = 64;

/// Mean of `f` over a circle around `center.tau`; equals `f(center)` when
/// `f` is holomorphic in `tau` on a larger disk.
pub fn circle_mean(
    f: impl Fn(&ComplexSample) -> Result<Cx, OracleError> + Sync,
    center: &ComplexSample,
) -> Result<Cx, OracleError> {
    let vals = circle_values(f, center, MEAN_RADIUS, MEAN_POINTS)?;
    let p = center.tau.p;
    let mut acc = Cx::zero(p);
    for (_, v) in &vals {
        acc = &acc + v;
    }
    Ok(&acc / &Cx::from_i64(vals.len() as i64, p))
}

/// `phi` from its certificate: `Delta^-n (sum_l (P/E4)^l S_l + R)`.
/// `P/E4` is holomorphic, so near a zero of `E4` it is taken as a circle
/// mean instead of a quotient.
pub fn eval_certificate(
    cert: &Certificate,
    s: &ComplexSample,
    ctx: &EvalContext,
) -> Result<Cx, OracleError> {
    let pe = PointEval::new(s, ctx);
    let ratio = if pe.e4_smallness()? < ctx.singular_threshold {
        let p165 = p165();
        circle_mean(
            |t| {
                let q = PointEval::new(t, ctx);
                Ok(&q.poly(&p165)? / &q.upper(upper::E4)?)
            },
            s,
        )?
    } else {
        &pe.poly(&p165_power(1))? / &pe.upper(upper::E4)?
    };
    let mut acc = pe.poly(&cert.remainder)?;
    for (l, part) in &cert.s_parts {
        acc = &acc + &(&ratio.powi(*l) * &pe.poly(part)?);
    }
    Ok(&acc / &pe.delta()?.powi(cert.n))
}

/// Rational as a context-precision complex number.
pub fn rational(q: &Rational, ctx: &EvalContext) -> Cx {
    Cx::from_rational(q, ctx.bits())
}
