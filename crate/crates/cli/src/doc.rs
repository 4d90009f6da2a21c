//! The JSON result document and conversions from library types.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use e8jacobi_core::constructor::{Certificate, IndexProfile, JacobiBasis, LbReport, ModuleGenerators};
use e8jacobi_core::graded_ring::{format_rational, parse_rational, Alphabet, Monomial, Poly, NGEN};
use e8jacobi_oracle::AxiomReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub target: Target,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<PolyDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<ProfileDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub module_generators: Vec<WeightGenerators>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lb: Vec<LbRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle: Vec<OracleDoc>,
    /// Wall-clock milliseconds; only present when requested, so that
    /// default output is reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ResultDocument {
    pub fn new(command: Vec<String>, target: Target) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION,
            command,
            target,
            dim: None,
            forms: Vec::new(),
            certificates: Vec::new(),
            verdict: None,
            profiles: Vec::new(),
            module_generators: Vec::new(),
            lb: Vec::new(),
            oracle: Vec::new(),
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Bidegree { weight: i32, index: i32 },
    Index { index: i32, window: Option<(i32, i32)> },
    MaxIndex { max_index: i32 },
    File { path: String },
}

/// A polynomial with exact coefficients and named exponents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub alphabet: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coefficient: String,
    pub exponents: Exponents,
}

/// Non-zero exponents keyed by generator name, in alphabet order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Exponents(pub Vec<(String, u16)>);

impl Serialize for Exponents {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Exponents {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Exponents;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from generator names to exponents")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<Exponents, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry::<String, u16>()? {
                    out.push((k, v));
                }
                Ok(Exponents(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("unknown alphabet {0}")]
    Alphabet(String),
    #[error("unknown generator {0}")]
    Generator(String),
    #[error("bad rational {0}")]
    Rational(String),
    #[error(transparent)]
    Ring(#[from] e8jacobi_core::graded_ring::RingError),
}

impl PolyDoc {
    pub fn from_poly(p: &Poly) -> Self {
        let a = p.alphabet();
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| TermDoc {
                coefficient: format_rational(c),
                exponents: Exponents(
                    (0..NGEN)
                        .filter(|&i| m.exp(i) > 0)
                        .map(|i| (a.symbol(i).to_string(), m.exp(i)))
                        .collect(),
                ),
            })
            .collect();
        PolyDoc { alphabet: a.name.to_string(), terms }
    }

    pub fn to_poly(&self) -> Result<Poly, DocError> {
        let a = Alphabet::by_name(&self.alphabet).ok_or_else(|| DocError::Alphabet(self.alphabet.clone()))?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = parse_rational(&t.coefficient).ok_or_else(|| DocError::Rational(t.coefficient.clone()))?;
            let mut m = Monomial::default();
            for (name, e) in &t.exponents.0 {
                let i = a.position(name).ok_or_else(|| DocError::Generator(name.clone()))?;
                m = m.with_exp(i, m.exp(i) + e);
            }
            terms.push((m, c));
        }
        Ok(Poly::from_terms(a, terms)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub delta_power: u32,
    pub s_parts: Vec<SPart>,
    pub remainder: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SPart {
    pub l: u32,
    pub s: PolyDoc,
}

impl CertificateDoc {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateDoc {
            delta_power: c.n,
            s_parts: c.s_parts.iter().map(|(l, s)| SPart { l: *l, s: PolyDoc::from_poly(s) }).collect(),
            remainder: PolyDoc::from_poly(&c.remainder),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate, DocError> {
        Ok(Certificate {
            n: self.delta_power,
            s_parts: self
                .s_parts
                .iter()
                .map(|p| Ok((p.l, p.s.to_poly()?)))
                .collect::<Result<_, DocError>>()?,
            remainder: self.remainder.to_poly()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Certified { delta_power: u32 },
    Rejected { delta_power: u32, failing_l: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub index: i32,
    pub window: (i32, i32),
    pub complete: bool,
    pub rank: u64,
    pub generator_count: u64,
    pub laurent: String,
    pub dims: BTreeMap<i32, usize>,
    pub generators: BTreeMap<i32, usize>,
}

impl ProfileDoc {
    pub fn from_profile(p: &IndexProfile) -> Self {
        ProfileDoc {
            index: p.index,
            window: p.window,
            complete: p.complete,
            rank: p.rank,
            generator_count: p.generator_count(),
            laurent: p.laurent(),
            dims: p.dims.clone(),
            generators: p.generators.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightGenerators {
    pub weight: i32,
    pub forms: Vec<PolyDoc>,
}

pub fn module_generator_docs(g: &ModuleGenerators) -> Vec<WeightGenerators> {
    g.by_weight
        .iter()
        .map(|(k, fs)| WeightGenerators { weight: *k, forms: fs.iter().map(PolyDoc::from_poly).collect() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LbRow {
    pub index: i32,
    pub dim: usize,
    pub generator_count: usize,
    pub product_count: usize,
    pub product_rank: usize,
    pub relation_count: usize,
    pub generators: Vec<PolyDoc>,
}

pub fn lb_rows(r: &LbReport) -> Vec<LbRow> {
    r.entries
        .iter()
        .map(|e| LbRow {
            index: e.index,
            dim: e.dim,
            generator_count: e.generators.len(),
            product_count: e.product_count,
            product_rank: e.product_rank,
            relation_count: e.relation_count,
            generators: e.generators.iter().map(PolyDoc::from_poly).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub form: usize,
    pub samples: usize,
    pub resampled: usize,
    pub weyl: f64,
    pub quasi_periodicity: f64,
    pub modular_s: f64,
    pub modular_t: f64,
    pub q_regularity: f64,
    pub e4_zero_regularity: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleDoc {
    pub fn from_report(form: usize, r: &AxiomReport, tolerance: f64) -> Self {
        OracleDoc {
            form,
            samples: r.samples,
            resampled: r.resampled,
            weyl: r.weyl,
            quasi_periodicity: r.quasi_periodicity,
            modular_s: r.modular_s,
            modular_t: r.modular_t,
            q_regularity: r.q_regularity,
            e4_zero_regularity: r.e4_zero_regularity,
            tolerance,
            passed: r.passes(tolerance),
        }
    }
}

pub fn basis_forms(b: &JacobiBasis) -> (Vec<PolyDoc>, Vec<CertificateDoc>) {
    (
        b.forms.iter().map(PolyDoc::from_poly).collect(),
        b.certificates.iter().map(CertificateDoc::from_certificate).collect(),
    )
}
