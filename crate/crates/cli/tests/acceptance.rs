//! Acceptance suite: runs each criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use e8jacobi_cli::doc::ResultDocument;
use e8jacobi_cli::run;
use e8jacobi_core::ansatz::enumerate_monomials;
use e8jacobi_core::constructor::{ab_ansatz, certify, rank_series, Engine};
use e8jacobi_core::graded_ring::{
    frac_to_lower, p165, p165_over_e4_in_ab, parse_poly, sub_ab_to_upper, sub_upper_to_ab,
    Alphabet, BiDegree, Frac, Poly, Rational, AB, LOWER_AB, NGEN,
};
use e8jacobi_core::linear_solver::span;
use e8jacobi_oracle::checks::{leading_coefficient_check, random_real_z};
use e8jacobi_oracle::{check_axioms, EvalContext};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Shared) -> Outcome);

fn ab(s: &str) -> Poly {
    parse_poly(&LOWER_AB, s).expect("literal polynomial")
}

fn cli_json(args: &[&str]) -> Result<ResultDocument, String> {
    let mut argv = vec!["e8jacobi"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let out = run(argv);
    if out.code != 0 {
        return Err(format!("exit {}: {}", out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn forms_of(doc: &ResultDocument) -> Result<Vec<Poly>, String> {
    doc.forms.iter().map(|f| f.to_poly().map_err(|e| e.to_string())).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    check(start.elapsed() <= budget, || {
        format!("took {:.1?}, budget {:?}", start.elapsed(), budget)
    })
}

struct Shared {
    engine: Engine,
    /// Every form emitted by criteria 1-3.
    emitted: Vec<Poly>,
}

fn criterion_1(sh: &mut Shared) -> Outcome {
    let doc = cli_json(&["basis", "-16", "5"])?;
    let forms = forms_of(&doc)?;
    check(forms.len() == 2, || format!("dimension {}", forms.len()))?;
    let listed = [
        ab("E4^2 b5 + 18/5 E4 a2 b3 - 24/5 E4 a3 b2 + 12 E4 a4 b1"),
        ab("E6 a2 a3 + 36/5 E4 a2 b3 - 108/5 E4 a3 b2 + 72 E4 a4 b1 - 72 a2^2 b1"),
    ];
    let a = ab_ansatz(BiDegree::new(-16, 5));
    let coords = |fs: &[Poly]| -> Result<Vec<Vec<Rational>>, String> {
        fs.iter().map(|f| a.coordinates(f).ok_or_else(|| format!("{f} outside the ansatz"))).collect()
    };
    let ours = span(a.len(), coords(&forms)?).integer_basis();
    let theirs = span(a.len(), coords(&listed)?).integer_basis();
    check(ours == theirs, || "echelon forms differ".into())?;
    sh.emitted.extend(forms);
    Ok("dim 2, spans agree".into())
}

fn criterion_2(sh: &mut Shared) -> Outcome {
    let start = Instant::now();
    let doc = cli_json(&["basis", "-26", "7"])?;
    let forms = forms_of(&doc)?;
    check(forms.len() == 1, || format!("dimension {}", forms.len()))?;
    let listed = ab("25 E6 a2 b5 - 10 E6 a3 b4 + 900 E4 b1 b6 - 180 E4 b2 b5 + 36 E4 b3 b4 \
                     - 1080 a2 b1 b4 + 216 a2 b2 b3 + 1080 a3 b1 b3 - 432 a3 b2^2");
    let f = &forms[0];
    check(f.len() == listed.len(), || format!("{} terms", f.len()))?;
    let (m0, c0) = &listed.terms()[0];
    let scale = f.coefficient(m0).ok_or("monomial sets differ")? / c0;
    check(listed.scale(&scale) == *f, || format!("not proportional: {f}"))?;
    within(start, Duration::from_secs(60))?;
    sh.emitted.extend(forms);
    Ok(format!("unique form, scalar {scale}"))
}

const PROFILES: [&str; 6] = [
    "x^4",
    "x^-4 + x^-2 + 1",
    "x^-8 + x^-6 + x^-4 + x^-2 + 1",
    "x^-16 + x^-14 + x^-12 + x^-10 + 2x^-8 + x^-6 + x^-4 + x^-2 + 1",
    "2x^-16 + 2x^-14 + 3x^-12 + 2x^-10 + 2x^-8 + x^-6 + x^-4 + x^-2 + 1",
    "2x^-24 + 2x^-22 + 3x^-20 + 3x^-18 + 3x^-16 + 3x^-14 + 3x^-12 + 2x^-10 + 2x^-8 + x^-6 + x^-4 + x^-2 + 1",
];

fn criterion_3(sh: &mut Shared) -> Outcome {
    let start = Instant::now();
    for (i, want) in PROFILES.iter().enumerate() {
        let m = i as i32 + 1;
        let p = sh.engine.index_profile(m).map_err(|e| e.to_string())?;
        check(p.complete, || format!("m={m}: window incomplete"))?;
        check(p.laurent() == *want, || format!("m={m}: {} != {want}", p.laurent()))?;
        check(p.generator_count() == rank_series(m as u32), || {
            format!("m={m}: sum d = {} but r(m) = {}", p.generator_count(), rank_series(m as u32))
        })?;
        for k in (p.window.0..=p.window.1).step_by(2) {
            let b = sh.engine.basis(k, m).map_err(|e| e.to_string())?;
            sh.emitted.extend(b.forms.iter().cloned());
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("P^w_1..6 exact, sum d = r(m), {:.1?}", start.elapsed()))
}

fn criterion_4(sh: &mut Shared) -> Outcome {
    for m in 2..=8 {
        for k in (-5 * m..-4 * m).filter(|k| k % 2 == 0) {
            let d = sh.engine.dim(k, m).map_err(|e| e.to_string())?;
            check(d == 0, || format!("dim J_{{{k},{m}}} = {d}"))?;
        }
    }
    Ok("no forms below -4m for m = 2..8".into())
}

fn criterion_5(sh: &mut Shared) -> Outcome {
    let want = [1, 0, 0, 0, 1, 0, 2, 0, 2, 1, 4];
    let got: Vec<usize> = (0..=10)
        .map(|m| sh.engine.dim(-4 * m, m))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    check(got == want, || format!("{got:?}"))?;
    Ok(format!("{got:?}"))
}

fn criterion_6(_: &mut Shared) -> Outcome {
    let doc = cli_json(&["lb", "10"])?;
    let counts: Vec<usize> = doc.lb.iter().map(|r| r.generator_count).collect();
    check(counts == [0, 0, 0, 1, 0, 2, 0, 1, 1, 2], || format!("d_lb {counts:?}"))?;
    let relations: Vec<usize> = doc.lb.iter().map(|r| r.relation_count).collect();
    check(relations.iter().all(|&r| r == 0), || format!("relations {relations:?}"))?;
    Ok(format!("d_lb {counts:?}, no relations"))
}

fn criterion_7(_: &mut Shared) -> Outcome {
    let lhs = sub_ab_to_upper(p165_over_e4_in_ab()).map_err(|e| e.to_string())?;
    let rhs = Frac::new(p165(), 1, 0).map_err(|e| e.to_string())?;
    check(lhs == rhs, || "images differ".into())?;
    Ok("exact".into())
}

fn random_poly(rng: &mut impl Rng, alphabet: &'static Alphabet, target: (i32, i32)) -> Poly {
    let monos = enumerate_monomials(alphabet, BiDegree::new(target.0, target.1));
    let mut terms = Vec::new();
    for m in monos {
        if rng.gen_bool(0.6) || terms.is_empty() {
            let n = rng.gen_range(1i64..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            terms.push((m, Rational::new(BigInt::from(n), BigInt::from(rng.gen_range(1i64..=4)))));
        }
    }
    Poly::from_terms(alphabet, terms).expect("homogeneous")
}

fn criterion_8(_: &mut Shared) -> Outcome {
    let err = |e: e8jacobi_core::graded_ring::RingError| e.to_string();
    for i in 0..NGEN {
        let x = Poly::generator(&AB, i);
        let back = sub_ab_to_upper(&sub_upper_to_ab(&x).map_err(err)?).map_err(err)?;
        check(back == Frac::from_poly(x).map_err(err)?, || format!("{} does not round-trip", AB.symbol(i)))?;
        let y = Poly::generator(&LOWER_AB, i);
        let back = frac_to_lower(&sub_ab_to_upper(&y).map_err(err)?).map_err(err)?;
        check(back == y, || format!("{} does not round-trip", LOWER_AB.symbol(i)))?;
    }
    let targets = [(-8, 2), (0, 1), (4, 1), (-6, 2), (-12, 3), (-2, 2), (-4, 2), (6, 1), (-10, 3), (-14, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let (tp, tq) = (targets[rng.gen_range(0..targets.len())], targets[rng.gen_range(0..targets.len())]);
        let p = random_poly(&mut rng, &LOWER_AB, tp);
        let q = random_poly(&mut rng, &LOWER_AB, tq);
        let lhs = sub_ab_to_upper(&p.mul(&q).map_err(err)?).map_err(err)?;
        let rhs = sub_ab_to_upper(&p).map_err(err)?.mul(&sub_ab_to_upper(&q).map_err(err)?);
        check(lhs == rhs, || format!("not multiplicative on {p} and {q}"))?;
    }
    Ok("11 generators both ways, 20 random products".into())
}

fn criterion_9(_: &mut Shared) -> Outcome {
    const TOL: f64 = 1e-25;
    let start = Instant::now();
    let ctx = EvalContext { digits: 50, ..EvalContext::default() };
    let basis = Engine::new().basis(-16, 5).map_err(|e| e.to_string())?;
    let mut forms = vec![(parse_poly(&AB, "A1").unwrap(), 4, 1)];
    forms.extend(basis.forms.iter().map(|f| (f.clone(), -16, 5)));
    let mut worst: f64 = 0.0;
    for (i, (f, k, m)) in forms.iter().enumerate() {
        let r = check_axioms(f, *k, *m, 3, 900 + i as u64, &ctx).map_err(|e| e.to_string())?;
        check(r.transformation_residual() < TOL, || format!("form {i}: {r:?}"))?;
        check(r.q_regularity < TOL, || format!("form {i}: negative q-powers {:e}", r.q_regularity))?;
        worst = worst.max(r.transformation_residual()).max(r.q_regularity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..2 {
        let z = random_real_z(&mut rng, ctx.bits());
        for name in ["a2", "b1", "b2", "b3"] {
            let c = leading_coefficient_check(name, &z, &ctx).map_err(|e| e.to_string())?;
            check(c.residual < TOL, || format!("{name}: residual {:e}", c.residual))?;
            worst = worst.max(c.residual);
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("worst residual {worst:.1e}, {:.1?}", start.elapsed()))
}

fn criterion_10(sh: &mut Shared) -> Outcome {
    for f in &sh.emitted {
        let c = certify(f).map_err(|e| e.to_string())?;
        let cert = c.certificate().ok_or_else(|| format!("rejected: {f}"))?;
        check(cert.verify(f).map_err(|e| e.to_string())?, || format!("certificate does not verify: {f}"))?;
    }
    check(certify(&ab("a3")).map_err(|e| e.to_string())?.certificate().is_none(), || "a3 certified".into())?;
    Ok(format!("{} forms certified, a3 rejected", sh.emitted.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("worked example (-16,5)", criterion_1),
        ("worked example (-26,7)", criterion_2),
        ("generator profiles m = 1..6", criterion_3),
        ("no forms below weight -4m", criterion_4),
        ("lowest-weight dimensions", criterion_5),
        ("lowest-weight subalgebra generators", criterion_6),
        ("P_{16,5}/E4 identity", criterion_7),
        ("substitution round trips", criterion_8),
        ("numeric oracle residuals", criterion_9),
        ("certificate soundness", criterion_10),
    ];
    let mut sh = Shared { engine: Engine::new(), emitted: Vec::new() };
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f(&mut sh) {
            Ok(detail) => println!("criterion {:>2}: PASS {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL {name}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
