//! Bases, dimensions and generator tables of W(E8)-invariant weak Jacobi forms.

mod basis;
mod certificate;
mod tables;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::graded_ring::{BiDegree, RingError};

pub use basis::{ab_ansatz, compute_basis, expected_delta_pow, BasisMeta, JacobiBasis};
pub use certificate::{
    certify, clear_delta, p165_power, Certificate, Certification, Rejection,
};
pub use tables::{rank_series, IndexProfile, LbEntry, LbReport, ModuleGenerators};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("invariant violated ({invariant}): {detail}")]
    Inconsistent { invariant: String, detail: String },
}

impl ConstructError {
    pub fn inconsistent(invariant: &str, detail: impl Into<String>) -> Self {
        ConstructError::Inconsistent {
            invariant: invariant.to_string(),
            detail: detail.into(),
        }
    }
}

/// Persistent storage for computed bases.
pub trait BasisStore: Send + Sync {
    fn load(&self, target: BiDegree) -> Option<JacobiBasis>;
    fn save(&self, basis: &JacobiBasis);
}

/// Memoizing front end. Results are canonical, so concurrent computations
/// of the same bidegree agree and the first insert wins.
#[derive(Default)]
pub struct Engine {
    memo: RwLock<HashMap<BiDegree, Arc<JacobiBasis>>>,
    store: Option<Arc<dyn BasisStore>>,
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    pub fn with_store(store: Arc<dyn BasisStore>) -> Self {
        Engine {
            memo: RwLock::default(),
            store: Some(store),
        }
    }

    pub fn basis(&self, k: i32, m: i32) -> Result<Arc<JacobiBasis>, ConstructError> {
        let target = BiDegree::new(k, m);
        if let Some(b) = self.memo.read().unwrap().get(&target) {
            return Ok(b.clone());
        }
        let basis = match self.store.as_ref().and_then(|s| s.load(target)) {
            Some(b) => b,
            None => {
                let b = compute_basis(target)?;
                if let Some(s) = &self.store {
                    s.save(&b);
                }
                b
            }
        };
        let mut memo = self.memo.write().unwrap();
        Ok(memo.entry(target).or_insert_with(|| Arc::new(basis)).clone())
    }

    pub fn dim(&self, k: i32, m: i32) -> Result<usize, ConstructError> {
        Ok(self.basis(k, m)?.dim())
    }
}
