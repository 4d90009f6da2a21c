//! Numeric checks of the Jacobi-form axioms and of leading Fourier
//! coefficients.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use e8jacobi_core::graded_ring::{ratio, Poly, LOWER_AB};

use crate::complex::{pi, real_from_f64, relative_residual, Cx};
use crate::e8::{orbit_character, roots, E8Data};
use crate::forms::{circle_values, dot, vector, ComplexSample, PointEval};
use crate::special::e4_zero;
use crate::{EvalContext, OracleError};

/// Approximate Laurent coefficients from values on a circle.
#[derive(Clone, Debug)]
pub struct LaurentProbe {
    pub radius: f64,
    pub points: usize,
    /// `(n, c_n)` for `n = -2..=2`.
    pub coefficients: Vec<(i32, Cx)>,
    /// Largest sampled value, the natural scale of the coefficients.
    pub scale: f64,
}

impl LaurentProbe {
    pub fn coefficient(&self, n: i32) -> &Cx {
        &self.coefficients.iter().find(|(k, _)| *k == n).expect("probed range").1
    }

    /// `max_{n<0} |c_n| r^n / scale`: the share of the sampled values owed
    /// to negative powers.
    pub fn negative_power_residual(&self) -> f64 {
        self.coefficients
            .iter()
            .filter(|(n, _)| *n < 0)
            .map(|(n, c)| c.abs_f64() * self.radius.powi(*n) / self.scale.max(1e-300))
            .fold(0.0, f64::max)
    }

    pub fn is_regular(&self, tolerance: f64) -> bool {
        self.negative_power_residual() < tolerance
    }
}

/// `c_n r^n = (1/N) sum_j f_j w^(-jn)` with `w = exp(2 pi i / N)`.
fn laurent(values: &[Cx], radius: &Cx, radius_f64: f64) -> LaurentProbe {
    let p = values[0].p;
    let n_pts = values.len() as i64;
    let scale = values.iter().map(Cx::abs_f64).fold(0.0, f64::max);
    let coefficients = (-2..=2)
        .map(|n: i32| {
            let mut acc = Cx::zero(p);
            for (j, v) in values.iter().enumerate() {
                let w = Cx::from_rational(&ratio(-(j as i64) * n as i64, n_pts), p).e2pi();
                acc = &acc + &(v * &w);
            }
            let c = &acc / &Cx::from_i64(n_pts, p);
            (n, &c * &radius.powi_signed(-n))
        })
        .collect();
    LaurentProbe {
        radius: radius_f64,
        points: values.len(),
        coefficients,
        scale,
    }
}

/// Working digits for probing at `|q| = r`: the generators are quotients
/// by up to `Delta^5 ~ q^5`, so about `6 log10(1/r)` digits cancel.
pub fn probe_context(ctx: &EvalContext, radius: f64) -> EvalContext {
    let extra = (6.0 * (1.0 / radius).log10()).ceil().max(0.0) as u32;
    EvalContext { digits: ctx.digits + extra, ..ctx.clone() }
}

/// Laurent coefficients in `q` of `form(., z)` from `points` samples on
/// `|q| = radius`.
pub fn q_laurent_probe(
    form: &Poly,
    z: &[Cx; 8],
    radius: f64,
    points: usize,
    ctx: &EvalContext,
) -> Result<LaurentProbe, OracleError> {
    let hi = probe_context(ctx, radius);
    let p = hi.bits();
    let t0 = real_from_f64((1.0 / radius).ln() / std::f64::consts::TAU, p);
    let two_pi = pi(p).mul(&real_from_f64(2.0, p), p, astro_float::RoundingMode::ToEven);
    // the radius actually sampled, exp(-2 pi t0), at working precision
    let r = Cx::from_real(t0.clone(), p).scale(&two_pi).scale_i64(-1).exp();
    let z = z.clone().map(|c| Cx::new(c.re, c.im, p));
    let values = (0..points)
        .into_par_iter()
        .map(|j| {
            let tau = &Cx::from_rational(&ratio(j as i64, points as i64), p)
                + &Cx::from_real(t0.clone(), p).mul_i();
            let s = ComplexSample::new(tau, z.clone())?;
            PointEval::new(&s, &hi).poly(form)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(laurent(&values, &r, radius))
}

pub const POLE_PROBE_RADIUS: f64 = 0.05;
pub const POLE_PROBE_POINTS: usize = 64;

/// Laurent coefficients of `form` in `tau - center.tau` from a circle of
/// radius [`POLE_PROBE_RADIUS`]; negative powers witness a pole in `tau`.
pub fn pole_probe(form: &Poly, center: &ComplexSample, ctx: &EvalContext) -> Result<LaurentProbe, OracleError> {
    let hi = EvalContext { digits: ctx.digits + 20, ..ctx.clone() };
    let p = hi.bits();
    let center = ComplexSample::new(
        Cx::new(center.tau.re.clone(), center.tau.im.clone(), p),
        center.z.clone().map(|c| Cx::new(c.re, c.im, p)),
    )?;
    let vals = circle_values(|s| PointEval::new(s, &hi).poly(form), &center, POLE_PROBE_RADIUS, POLE_PROBE_POINTS)?;
    let values: Vec<Cx> = vals.into_iter().map(|(_, v)| v).collect();
    let r = Cx::from_f64(POLE_PROBE_RADIUS, 0.0, p);
    Ok(laurent(&values, &r, POLE_PROBE_RADIUS))
}

/// Maximum relative residual per axiom over all samples.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub weight: i32,
    pub index: i32,
    pub samples: usize,
    pub resampled: usize,
    pub weyl: f64,
    pub quasi_periodicity: f64,
    pub modular_s: f64,
    pub modular_t: f64,
    /// Negative `q`-powers at `|q| = probe_radius`.
    pub q_regularity: f64,
    /// Negative powers of `tau - rho` at the zero `rho` of `E4`.
    pub e4_zero_regularity: f64,
}

impl AxiomReport {
    /// Weyl invariance, quasi-periodicity and the modular law.
    pub fn transformation_residual(&self) -> f64 {
        self.weyl.max(self.quasi_periodicity).max(self.modular_s).max(self.modular_t)
    }

    pub fn regularity_residual(&self) -> f64 {
        self.q_regularity.max(self.e4_zero_regularity)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.transformation_residual() < tolerance && self.regularity_residual() < tolerance
    }
}

pub fn random_tau(rng: &mut impl Rng, p: usize) -> Cx {
    Cx::from_f64(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..1.3), p)
}

/// A generic `z` with small imaginary parts.
pub fn random_z(rng: &mut impl Rng, p: usize) -> [Cx; 8] {
    std::array::from_fn(|_| Cx::from_f64(rng.gen_range(-0.5..0.5), rng.gen_range(-0.1..0.1), p))
}

/// A generic real `z`, keeping every character phase on the unit circle.
pub fn random_real_z(rng: &mut impl Rng, p: usize) -> [Cx; 8] {
    std::array::from_fn(|_| Cx::from_f64(rng.gen_range(-0.5..0.5), 0.0, p))
}

fn add(z: &[Cx; 8], w: &[Cx; 8]) -> [Cx; 8] {
    std::array::from_fn(|j| &z[j] + &w[j])
}

fn scale(z: &[Cx; 8], c: &Cx) -> [Cx; 8] {
    std::array::from_fn(|j| &z[j] * c)
}

fn reflect_z(z: &[Cx; 8], alpha: &[i32; 8]) -> [Cx; 8] {
    let a = vector(alpha, z[0].p);
    let c = dot(z, &a);
    std::array::from_fn(|j| &z[j] - &(&c * &a[j]))
}

/// Checks the Jacobi-form axioms for a form of bidegree `(k, m)` over the
/// `ab` or `AB` alphabet at `samples` seeded random points.
pub fn check_axioms(
    form: &Poly,
    k: i32,
    m: i32,
    samples: usize,
    seed: u64,
    ctx: &EvalContext,
) -> Result<AxiomReport, OracleError> {
    const MAX_RETRIES: usize = 10;
    let p = ctx.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport { weight: k, index: m, samples, ..Default::default() };
    let mi = Cx::from_i64(m as i64, p);
    let pi_i = Cx::from_real(pi(p), p).mul_i();
    let mut first_z = None;
    for _ in 0..samples {
        let mut attempt = 0;
        loop {
            let s = ComplexSample::new(random_tau(&mut rng, p), random_z(&mut rng, p))?;
            let alpha = *roots().choose(&mut rng).unwrap();
            let beta = *roots().choose(&mut rng).unwrap();
            let simple: Vec<[i32; 8]> =
                (0..3).map(|_| *E8Data::standard().simple_roots.choose(&mut rng).unwrap()).collect();
            match axiom_residuals(form, k, &s, &alpha, &beta, &simple, &mi, &pi_i, ctx) {
                Ok(r) => {
                    report.weyl = report.weyl.max(r[0]);
                    report.quasi_periodicity = report.quasi_periodicity.max(r[1]);
                    report.modular_s = report.modular_s.max(r[2]);
                    report.modular_t = report.modular_t.max(r[3]);
                    first_z.get_or_insert(s.z);
                    break;
                }
                Err(OracleError::NearSingular { .. }) if attempt < MAX_RETRIES => {
                    attempt += 1;
                    report.resampled += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }
    let z = first_z.unwrap_or_else(|| random_z(&mut rng, p));
    let probe = q_laurent_probe(form, &z, ctx.probe_radius, ctx.probe_points, ctx)?;
    report.q_regularity = probe.negative_power_residual();
    let rho = e4_zero(ctx)?;
    let pole = pole_probe(form, &ComplexSample::new(rho, z)?, ctx)?;
    report.e4_zero_regularity = pole.negative_power_residual();
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn axiom_residuals(
    form: &Poly,
    k: i32,
    s: &ComplexSample,
    alpha: &[i32; 8],
    beta: &[i32; 8],
    simple: &[[i32; 8]],
    m: &Cx,
    pi_i: &Cx,
    ctx: &EvalContext,
) -> Result<[f64; 4], OracleError> {
    let p = ctx.bits();
    let ev = |s: &ComplexSample| PointEval::new(s, ctx).poly(form);
    let base = ev(s)?;
    let (tau, z) = (&s.tau, &s.z);

    let mut wz = z.clone();
    for a in simple {
        wz = reflect_z(&wz, a);
    }
    let weyl = relative_residual(&ev(&ComplexSample::new(tau.clone(), wz)?)?, &base);

    // phi(tau, z + tau alpha + beta) = e^{-m pi i (tau alpha^2 + 2 z.alpha)} phi
    let a = vector(alpha, p);
    let shifted = add(&add(z, &scale(&a, tau)), &vector(beta, p));
    let expo = &(&(tau * &Cx::from_i64(2, p)) + &dot(z, &a).scale_i64(2)) * m;
    let factor = (&(-&expo) * pi_i).exp();
    let qp = relative_residual(&ev(&ComplexSample::new(tau.clone(), shifted)?)?, &(&factor * &base));

    // phi(-1/tau, z/tau) = tau^k e^{m pi i z^2 / tau} phi
    let inv = tau.recip();
    let s_sample = ComplexSample::new(-&inv, scale(z, &inv))?;
    let factor = &tau.powi_signed(k) * &(&(&(&dot(z, z) * &inv) * m) * pi_i).exp();
    let ms = relative_residual(&ev(&s_sample)?, &(&factor * &base));

    let t_sample = ComplexSample::new(tau + &Cx::one(p), z.clone())?;
    let mt = relative_residual(&ev(&t_sample)?, &base);
    Ok([weyl, qp, ms, mt])
}

/// `w_j(z)` for the orbit characters used below.
fn characters(z: &[Cx; 8]) -> [Cx; 9] {
    let p = z[0].p;
    let mut w: [Cx; 9] = std::array::from_fn(|_| Cx::zero(p));
    for j in [1usize, 2, 7, 8] {
        w[j] = orbit_character(j, z);
    }
    w
}

/// The constant term in `q` of `a2, a3, b1, b2, b3` as a polynomial in
/// orbit characters; `None` for generators whose characters are too large
/// to enumerate here.
pub fn expected_leading(name: &str, z: &[Cx; 8]) -> Option<Cx> {
    let p = z[0].p;
    let c = |n: i64, d: i64| Cx::from_rational(&ratio(n, d), p);
    let lin = |terms: &[(i64, i64, usize)], w: &[Cx; 9]| -> Cx {
        terms.iter().fold(Cx::zero(p), |acc, &(n, d, j)| {
            let t = if j == 0 { c(n, d) } else { &c(n, d) * &w[j] };
            &acc + &t
        })
    };
    let terms: &[(i64, i64, usize)] = match name {
        "a2" => &[(-2, 3, 1), (12, 1, 8), (-1440, 1, 0)],
        "a3" => &[(-2, 1, 2), (96, 1, 1), (-1152, 1, 8), (103680, 1, 0)],
        "b1" => &[(-4, 1, 0)],
        "b2" => &[(-1, 18, 1), (-3, 1, 8), (840, 1, 0)],
        "b3" => &[(-1, 6, 2), (-4, 1, 7), (-8, 1, 1), (528, 1, 8), (-79680, 1, 0)],
        _ => return None,
    };
    let w = if name == "b1" { std::array::from_fn(|_| Cx::zero(p)) } else { characters(z) };
    Some(lin(terms, &w))
}

#[derive(Clone, Debug)]
pub struct LeadingCheck {
    pub name: String,
    pub measured: Cx,
    pub expected: Cx,
    pub residual: f64,
    pub probe: LaurentProbe,
}

/// Compares the probed `q^0` coefficient of a generator with its known
/// character expansion.
pub fn leading_coefficient_check(name: &str, z: &[Cx; 8], ctx: &EvalContext) -> Result<LeadingCheck, OracleError> {
    let i = LOWER_AB.position(name).ok_or_else(|| OracleError::Alphabet(name.into()))?;
    let expected = expected_leading(name, z).ok_or_else(|| OracleError::Alphabet(name.into()))?;
    let probe = q_laurent_probe(&Poly::generator(&LOWER_AB, i), z, ctx.probe_radius, ctx.probe_points, ctx)?;
    let measured = probe.coefficient(0).clone();
    Ok(LeadingCheck {
        name: name.into(),
        residual: relative_residual(&measured, &expected),
        measured,
        expected,
        probe,
    })
}
