//! Content-addressed on-disk store for computed bases.
//!
//! One JSON file per bidegree, named by the SHA-256 of the schema version,
//! the alphabet and substitution definitions, and `(k, m)`. Any change to
//! the definitions therefore misses every old entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use e8jacobi_core::constructor::{BasisMeta, BasisStore, Certificate, JacobiBasis};
use e8jacobi_core::graded_ring::{
    definitions_text, format_rational, parse_rational, Alphabet, BiDegree, Monomial, Poly, NGEN,
};

use crate::doc::SCHEMA_VERSION;

pub struct DiskCache {
    dir: PathBuf,
}

/// Positional polynomial: `(alphabet, [(coefficient, exponent vector)])`.
#[derive(Serialize, Deserialize)]
struct RawPoly(String, Vec<(String, [u16; NGEN])>);

#[derive(Serialize, Deserialize)]
struct RawCertificate {
    n: u32,
    s_parts: Vec<(u32, RawPoly)>,
    remainder: RawPoly,
}

#[derive(Serialize, Deserialize)]
struct RawMeta {
    ansatz_size: usize,
    delta_pow: u32,
    e4_pow: u32,
    expected_delta_pow: u32,
    s_unknowns: usize,
    equations: usize,
    solution_dim: usize,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema_version: u32,
    weight: i32,
    index: i32,
    forms: Vec<RawPoly>,
    certificates: Vec<RawCertificate>,
    meta: RawMeta,
}

fn raw(p: &Poly) -> RawPoly {
    RawPoly(
        p.alphabet().name.to_string(),
        p.terms().iter().map(|(m, c)| (format_rational(c), m.0)).collect(),
    )
}

fn cooked(r: &RawPoly) -> Option<Poly> {
    let a = Alphabet::by_name(&r.0)?;
    let terms = r
        .1
        .iter()
        .map(|(c, e)| Some((Monomial(*e), parse_rational(c)?)))
        .collect::<Option<Vec<_>>>()?;
    Poly::from_terms(a, terms).ok()
}

impl Entry {
    fn from_basis(b: &JacobiBasis) -> Self {
        let m = &b.meta;
        Entry {
            schema_version: SCHEMA_VERSION,
            weight: b.target.weight,
            index: b.target.index,
            forms: b.forms.iter().map(raw).collect(),
            certificates: b
                .certificates
                .iter()
                .map(|c| RawCertificate {
                    n: c.n,
                    s_parts: c.s_parts.iter().map(|(l, s)| (*l, raw(s))).collect(),
                    remainder: raw(&c.remainder),
                })
                .collect(),
            meta: RawMeta {
                ansatz_size: m.ansatz_size,
                delta_pow: m.delta_pow,
                e4_pow: m.e4_pow,
                expected_delta_pow: m.expected_delta_pow,
                s_unknowns: m.s_unknowns,
                equations: m.equations,
                solution_dim: m.solution_dim,
            },
        }
    }

    fn into_basis(self) -> Option<JacobiBasis> {
        let certificates = self
            .certificates
            .iter()
            .map(|c| {
                Some(Certificate {
                    n: c.n,
                    s_parts: c.s_parts.iter().map(|(l, s)| Some((*l, cooked(s)?))).collect::<Option<_>>()?,
                    remainder: cooked(&c.remainder)?,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        let m = self.meta;
        Some(JacobiBasis {
            target: BiDegree::new(self.weight, self.index),
            forms: self.forms.iter().map(cooked).collect::<Option<_>>()?,
            certificates,
            meta: BasisMeta {
                ansatz_size: m.ansatz_size,
                delta_pow: m.delta_pow,
                e4_pow: m.e4_pow,
                expected_delta_pow: m.expected_delta_pow,
                s_unknowns: m.s_unknowns,
                equations: m.equations,
                solution_dim: m.solution_dim,
            },
        })
    }
}

/// Hex digest naming the entry for `target`.
pub fn cache_key(target: BiDegree) -> String {
    let mut h = Sha256::new();
    h.update(format!("schema {SCHEMA_VERSION}\n").as_bytes());
    h.update(definitions_text().as_bytes());
    h.update(format!("\nweight {} index {}\n", target.weight, target.index).as_bytes());
    hex::encode(h.finalize())
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, target: BiDegree) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(target)))
    }

    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(bytes)?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl BasisStore for DiskCache {
    fn load(&self, target: BiDegree) -> Option<JacobiBasis> {
        let bytes = fs::read(self.path_for(target)).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        if entry.schema_version != SCHEMA_VERSION || BiDegree::new(entry.weight, entry.index) != target {
            return None;
        }
        entry.into_basis()
    }

    fn save(&self, basis: &JacobiBasis) {
        let bytes = serde_json::to_vec(&Entry::from_basis(basis)).expect("serializable");
        // a failed write only loses the memo
        let _ = self.write_atomic(&self.path_for(basis.target), &bytes);
    }
}
