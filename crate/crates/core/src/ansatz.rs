//! Monomials of a fixed bidegree and the parametric ansatz built on them.

use crate::graded_ring::{
    upper, Alphabet, BiDegree, LinForm, Monomial, ParamPoly, Poly, Polynomial, Rational, AB,
    NGEN,
};

/// A subset of an alphabet's generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub alphabet: &'static Alphabet,
    pub allowed: [bool; NGEN],
}

impl GeneratorSet {
    pub fn full(alphabet: &'static Alphabet) -> Self {
        GeneratorSet {
            alphabet,
            allowed: [true; NGEN],
        }
    }

    /// `E6, A_i, B_j`: the generators allowed in the quotients `S_l`.
    pub fn s_alphabet() -> Self {
        let mut allowed = [true; NGEN];
        allowed[upper::E4] = false;
        GeneratorSet {
            alphabet: &AB,
            allowed,
        }
    }
}

impl From<&'static Alphabet> for GeneratorSet {
    fn from(alphabet: &'static Alphabet) -> Self {
        GeneratorSet::full(alphabet)
    }
}

/// All monomials of bidegree `target` in the allowed generators, leading
/// first under the alphabet's monomial order.
///
/// Generators of positive index are chosen by depth-first search with the
/// exponent of a generator of index `i` bounded by the remaining index over
/// `i`; the leftover weight must then be made of the index-0 generators
/// (`E4`, `E6`, both of positive weight), which is a two-term Frobenius
/// problem. This is the coefficient of `x^k y^m` in the product of
/// `1/(1 - x^w y^i g)` over the generators.
pub fn enumerate_monomials(gens: impl Into<GeneratorSet>, target: BiDegree) -> Vec<Monomial> {
    let gens = gens.into();
    let alpha = gens.alphabet;
    let mut out = Vec::new();
    if target.index < 0 {
        return out;
    }
    let indexed: Vec<usize> = (0..NGEN)
        .filter(|&i| gens.allowed[i] && alpha.generators[i].degree.index > 0)
        .collect();
    let modular: Vec<usize> = (0..NGEN)
        .filter(|&i| gens.allowed[i] && alpha.generators[i].degree.index == 0)
        .collect();
    assert!(
        modular.len() <= 2
            && modular
                .iter()
                .all(|&i| alpha.generators[i].degree.weight > 0),
        "index-0 generators must be at most two of positive weight"
    );
    let mut exps = [0u16; NGEN];
    search(alpha, &indexed, &modular, 0, target, &mut exps, &mut out);
    out.sort_unstable_by(|a, b| alpha.order(b, a));
    out
}

fn search(
    alpha: &Alphabet,
    indexed: &[usize],
    modular: &[usize],
    pos: usize,
    rest: BiDegree,
    exps: &mut [u16; NGEN],
    out: &mut Vec<Monomial>,
) {
    if pos == indexed.len() {
        if rest.index != 0 {
            return;
        }
        fill_modular(alpha, modular, rest.weight, exps, out);
        return;
    }
    let g = indexed[pos];
    let d = alpha.generators[g].degree;
    let max = rest.index / d.index;
    for e in 0..=max {
        exps[g] = e as u16;
        search(alpha, indexed, modular, pos + 1, rest - d * e, exps, out);
    }
    exps[g] = 0;
}

fn fill_modular(
    alpha: &Alphabet,
    modular: &[usize],
    weight: i32,
    exps: &mut [u16; NGEN],
    out: &mut Vec<Monomial>,
) {
    if weight < 0 {
        return;
    }
    match modular {
        [] => {
            if weight == 0 {
                out.push(Monomial(*exps));
            }
        }
        [g] => {
            let w = alpha.generators[*g].degree.weight;
            if weight % w == 0 {
                let mut e = *exps;
                e[*g] = (weight / w) as u16;
                out.push(Monomial(e));
            }
        }
        [g, h] => {
            let wg = alpha.generators[*g].degree.weight;
            let wh = alpha.generators[*h].degree.weight;
            for a in 0..=weight / wg {
                let r = weight - a * wg;
                if r % wh == 0 {
                    let mut e = *exps;
                    e[*g] = a as u16;
                    e[*h] = (r / wh) as u16;
                    out.push(Monomial(e));
                }
            }
        }
        _ => unreachable!(),
    }
}

/// What to enumerate and how to name the unknowns.
#[derive(Clone, Debug)]
pub struct AnsatzSpec {
    pub gens: GeneratorSet,
    pub target: BiDegree,
    pub symbol_prefix: String,
    /// Id of the first unknown; the rest follow consecutively.
    pub first_unknown: u32,
}

impl AnsatzSpec {
    pub fn new(gens: impl Into<GeneratorSet>, target: BiDegree, symbol_prefix: &str) -> Self {
        AnsatzSpec {
            gens: gens.into(),
            target,
            symbol_prefix: symbol_prefix.to_string(),
            first_unknown: 0,
        }
    }

    pub fn starting_at(mut self, first_unknown: u32) -> Self {
        self.first_unknown = first_unknown;
        self
    }
}

/// The most general combination `sum_i u_i * monomial_i` of a bidegree.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub spec: AnsatzSpec,
    pub monomials: Vec<Monomial>,
}

impl Ansatz {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn alphabet(&self) -> &'static Alphabet {
        self.spec.gens.alphabet
    }

    /// Unknown ids, in monomial order.
    pub fn unknowns(&self) -> std::ops::Range<u32> {
        self.spec.first_unknown..self.spec.first_unknown + self.monomials.len() as u32
    }

    /// `prefix` followed by the 1-based position.
    pub fn unknown_names(&self) -> Vec<String> {
        (1..=self.monomials.len())
            .map(|i| format!("{}{}", self.spec.symbol_prefix, i))
            .collect()
    }

    pub fn to_param_poly(&self) -> ParamPoly {
        let terms = self
            .monomials
            .iter()
            .zip(self.unknowns())
            .map(|(m, id)| (*m, LinForm::unknown(id)));
        Polynomial::from_terms(self.alphabet(), terms).expect("ansatz monomials share a bidegree")
    }

    /// `sum_i values[i] * monomial_i`.
    pub fn instantiate(&self, values: &[Rational]) -> Poly {
        assert_eq!(values.len(), self.monomials.len());
        let terms = self.monomials.iter().copied().zip(values.iter().cloned());
        Poly::from_terms(self.alphabet(), terms).expect("ansatz monomials share a bidegree")
    }

    /// Coordinates of `p` in this ansatz, or `None` if `p` uses a monomial
    /// outside it.
    pub fn coordinates(&self, p: &Poly) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::from_integer(0.into()); self.monomials.len()];
        for (m, c) in p.terms() {
            let i = self.position(m)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        let alpha = self.alphabet();
        self.monomials
            .binary_search_by(|probe| alpha.order(m, probe))
            .ok()
    }
}

pub fn build_ansatz(spec: AnsatzSpec) -> Ansatz {
    let monomials = enumerate_monomials(spec.gens, spec.target);
    Ansatz { spec, monomials }
}
