//! Bases of `J_{k,m}`: ansatz, substitution, `E4` splitting and matching
//! `Q_l = P^l S_l` for all `l` at once.

use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::certificate::{p165_power, Certificate};
use super::ConstructError;
use crate::ansatz::{build_ansatz, Ansatz, AnsatzSpec, GeneratorSet};
use crate::graded_ring::{
    e4_split, primitive_integer_vector, BiDegree, E4Split, Frac, LinForm, Monomial, Poly,
    Rational, Substituter, AB, LOWER_AB,
};
use crate::linear_solver::{nullspace, project, LinearSystem};

/// Run data recorded next to a basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BasisMeta {
    pub ansatz_size: usize,
    /// Largest normalized `Delta` power among the ansatz monomials' images.
    pub delta_pow: u32,
    /// Largest normalized `E4` power among the images (after clearing `Delta`).
    pub e4_pow: u32,
    /// `N_t` from the index-only formula, recorded for comparison.
    pub expected_delta_pow: u32,
    pub s_unknowns: usize,
    pub equations: usize,
    pub solution_dim: usize,
}

impl BasisMeta {
    pub fn delta_pow_matches_expected(&self) -> bool {
        self.delta_pow == self.expected_delta_pow
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiBasis {
    pub target: BiDegree,
    /// Reduced echelon order in the ansatz coordinates, primitive integer
    /// coefficients with positive leading coefficient.
    pub forms: Vec<Poly>,
    pub certificates: Vec<Certificate>,
    pub meta: BasisMeta,
}

impl JacobiBasis {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    pub fn empty(target: BiDegree) -> Self {
        JacobiBasis {
            target,
            forms: Vec::new(),
            certificates: Vec::new(),
            meta: BasisMeta {
                expected_delta_pow: expected_delta_pow(target.index.max(0) as u32),
                ..Default::default()
            },
        }
    }
}

/// `N_t = 5 t0 + (0,0,1,2,3,3)[t - 6 t0]` with `t0 = t div 6`.
pub fn expected_delta_pow(t: u32) -> u32 {
    let t0 = t / 6;
    5 * t0 + [0, 0, 1, 2, 3, 3][(t - 6 * t0) as usize]
}

/// The unknown-coefficient ansatz over `ab` at `target`.
pub fn ab_ansatz(target: BiDegree) -> Ansatz {
    build_ansatz(AnsatzSpec::new(&LOWER_AB, target, "c"))
}

fn add_term(acc: &mut FxHashMap<Monomial, Vec<(u32, Rational)>>, m: Monomial, id: u32, c: Rational) {
    acc.entry(m).or_default().push((id, c));
}

/// Computes a basis of `J_{k,m}` from scratch.
pub fn compute_basis(target: BiDegree) -> Result<JacobiBasis, ConstructError> {
    let ansatz = ab_ansatz(target);
    if ansatz.is_empty() {
        return Ok(JacobiBasis::empty(target));
    }
    let sub = Substituter::global();
    let images: Vec<Frac> = ansatz
        .monomials
        .par_iter()
        .map(|m| sub.monomial_image(m))
        .collect();
    let n = images.iter().map(|f| f.delta_pow()).max().unwrap();
    let p = images.iter().map(|f| f.e4_pow()).max().unwrap();
    let splits: Vec<E4Split<Rational>> = images
        .par_iter()
        .map(|f| e4_split(&f.numerator_over(p, n), p))
        .collect();

    let nc = ansatz.len() as u32;
    let mut next = nc;
    let mut s_ansatze: Vec<(u32, Ansatz)> = Vec::new();
    let mut rows: Vec<Vec<(u32, Rational)>> = Vec::new();
    for l in 1..=p {
        let mut acc: FxHashMap<Monomial, Vec<(u32, Rational)>> = FxHashMap::default();
        for (i, s) in splits.iter().enumerate() {
            if let Some(q) = s.q(l) {
                for (m, c) in q.terms() {
                    add_term(&mut acc, *m, i as u32, c.clone());
                }
            }
        }
        if acc.is_empty() {
            continue;
        }
        let s_target = BiDegree::new(target.weight + 12 * n as i32 - 12 * l as i32, target.index - 5 * l as i32);
        let s_ansatz = build_ansatz(
            AnsatzSpec::new(GeneratorSet::s_alphabet(), s_target, &format!("d{l}_")).starting_at(next),
        );
        if !s_ansatz.is_empty() {
            let pl = p165_power(l);
            let products: Vec<Poly> = s_ansatz
                .monomials
                .par_iter()
                .map(|m| pl.mul_monomial(m))
                .collect();
            for (id, prod) in s_ansatz.unknowns().zip(products) {
                for (m, c) in prod.terms() {
                    add_term(&mut acc, *m, id, -c.clone());
                }
            }
            next += s_ansatz.len() as u32;
            s_ansatze.push((l, s_ansatz));
        }
        let mut block: Vec<(Monomial, Vec<(u32, Rational)>)> = acc.into_iter().collect();
        block.sort_unstable_by(|a, b| AB.order(&b.0, &a.0));
        rows.extend(
            block
                .into_iter()
                .map(|(_, terms)| LinForm::from_terms(terms).terms().to_vec())
                .filter(|r| !r.is_empty()),
        );
    }

    let mut sys = LinearSystem::new(next as usize);
    sys.rows = rows;
    let equations = sys.rows.len();
    let joint = nullspace(&sys);
    let c_cols: Vec<usize> = (0..nc as usize).collect();
    let projected = project(&joint, &c_cols);
    if projected.dim() != joint.dim() {
        return Err(ConstructError::Inconsistent {
            invariant: "injective projection onto ansatz unknowns".into(),
            detail: format!(
                "at {target}: joint solution space has dimension {}, its projection {}",
                joint.dim(),
                projected.dim()
            ),
        });
    }

    let mut forms = Vec::with_capacity(joint.dim());
    let mut certificates = Vec::with_capacity(joint.dim());
    for v in &joint.basis {
        let c_part = &v[..nc as usize];
        // Pivots of the joint reduced basis all lie among the c unknowns.
        let lead = c_part.iter().find(|q| !q.is_zero()).expect("injective projection");
        let ints = primitive_integer_vector(c_part);
        let lead_int = ints.iter().find(|q| !q.is_zero()).unwrap();
        let scale = Rational::from_integer(lead_int.clone()) / lead;
        let coeffs: Vec<Rational> = ints.into_iter().map(Rational::from_integer).collect();
        let form = ansatz.instantiate(&coeffs);

        let mut s_parts = Vec::new();
        for (l, sa) in &s_ansatze {
            let vals: Vec<Rational> = sa.unknowns().map(|id| &v[id as usize] * &scale).collect();
            let s = sa.instantiate(&vals);
            if !s.is_zero() {
                s_parts.push((*l, s));
            }
        }
        let mut remainder = Poly::zero(&AB);
        for (c, split) in coeffs.iter().zip(&splits) {
            if !c.is_zero() {
                remainder = remainder.checked_add(&split.remainder.scale(c))?;
            }
        }
        forms.push(form);
        certificates.push(Certificate {
            n,
            s_parts,
            remainder,
        });
    }

    Ok(JacobiBasis {
        target,
        forms,
        certificates,
        meta: BasisMeta {
            ansatz_size: ansatz.len(),
            delta_pow: n,
            e4_pow: p,
            expected_delta_pow: expected_delta_pow(target.index.max(0) as u32),
            s_unknowns: (next - nc) as usize,
            equations,
            solution_dim: joint.dim(),
        },
    })
}
