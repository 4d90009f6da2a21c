//! Free-module generator profiles, module generators and the lowest-weight
//! subalgebra.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::basis::ab_ansatz;
use super::{ConstructError, Engine};
use crate::ansatz::Ansatz;
use crate::graded_ring::{lower, BiDegree, Monomial, Poly, Rational};
use crate::linear_solver::{extend_basis, span_dim};

/// Coefficient of `x^m` in `1/((1-x)(1-x^2)^2(1-x^3)^2(1-x^4)^2(1-x^5)(1-x^6))`.
pub fn rank_series(m: u32) -> u64 {
    let m = m as usize;
    let mut c = vec![0u64; m + 1];
    c[0] = 1;
    for d in [1, 2, 2, 3, 3, 4, 4, 5, 6] {
        for i in d..=m {
            c[i] += c[i - d];
        }
    }
    c[m]
}

/// Dimensions of `J_{k,m}` over a weight window and the generator counts
/// `d_{k,m}` of the free `M_*`-module `J_{*,m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexProfile {
    pub index: i32,
    pub window: (i32, i32),
    pub dims: BTreeMap<i32, usize>,
    /// Nonzero generator counts only.
    pub generators: BTreeMap<i32, usize>,
    pub rank: u64,
    /// Whether the window contains the default one, so that the counts are
    /// expected to sum to the rank.
    pub complete: bool,
}

impl IndexProfile {
    pub fn generator_count(&self) -> u64 {
        self.generators.values().map(|&d| d as u64).sum()
    }

    /// `d` at weight `k`.
    pub fn d(&self, k: i32) -> usize {
        self.generators.get(&k).copied().unwrap_or(0)
    }

    /// The Laurent polynomial `sum_k d_{k,m} x^k`, ascending, e.g.
    /// `x^-4 + x^-2 + 1`.
    pub fn laurent(&self) -> String {
        let mut s = String::new();
        for (i, (&k, &d)) in self.generators.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let coef = if d == 1 && k != 0 {
                String::new()
            } else {
                d.to_string()
            };
            match k {
                0 => write!(s, "{d}").unwrap(),
                1 => write!(s, "{coef}x").unwrap(),
                _ => write!(s, "{coef}x^{k}").unwrap(),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// `dims` recomputed from the generator counts through
    /// `1/((1-x^4)(1-x^6))`.
    pub fn dims_from_generators(&self, k: i32) -> usize {
        let mut total = 0;
        for (&g, &d) in &self.generators {
            let mut w = k - g;
            while w >= 0 {
                if w % 6 == 0 {
                    total += d;
                }
                w -= 4;
            }
        }
        total
    }
}

/// Generator representatives of `J_{*,m}` grouped by weight.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleGenerators {
    pub index: i32,
    pub by_weight: Vec<(i32, Vec<Poly>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LbEntry {
    pub index: i32,
    /// `dim J_{-4m,m}`.
    pub dim: usize,
    /// New generators at this index (`d^lb_m` of them).
    pub generators: Vec<Poly>,
    /// Products of earlier generators with total index `m`.
    pub product_count: usize,
    pub product_rank: usize,
    /// `product_count + generators - dim`: linear relations among the
    /// degree-`m` monomials in the generators.
    pub relation_count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LbReport {
    pub max_index: i32,
    pub entries: Vec<LbEntry>,
}

impl LbReport {
    pub fn generator_counts(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.generators.len()).collect()
    }
}

fn coordinates(ansatz: &Ansatz, p: &Poly, what: &str) -> Result<Vec<Rational>, ConstructError> {
    ansatz.coordinates(p).ok_or_else(|| {
        ConstructError::inconsistent(
            "product lies in the ansatz",
            format!("{what} has a monomial outside the {} ansatz", ansatz.spec.target),
        )
    })
}

/// Multisets of `gens` (by position, nondecreasing) with index sum `m`.
fn multisets(gens: &[(i32, Poly)], m: i32) -> Vec<Vec<usize>> {
    fn go(gens: &[(i32, Poly)], start: usize, rest: i32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..gens.len() {
            if gens[i].0 <= rest {
                cur.push(i);
                go(gens, i, rest - gens[i].0, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(gens, 0, m, &mut Vec::new(), &mut out);
    out
}

impl Engine {
    /// `-5m ..= 0`, or `-5m ..= 4` when `m <= 1`.
    pub fn default_window(m: i32) -> (i32, i32) {
        (-5 * m, if m <= 1 { 4 } else { 0 })
    }

    pub fn index_profile(&self, m: i32) -> Result<IndexProfile, ConstructError> {
        self.index_profile_in(m, Self::default_window(m))
    }

    pub fn index_profile_in(&self, m: i32, window: (i32, i32)) -> Result<IndexProfile, ConstructError> {
        let (lo, hi) = window;
        for k in lo..=hi {
            if k.rem_euclid(2) == 1 && !ab_ansatz(BiDegree::new(k, m)).is_empty() {
                return Err(ConstructError::inconsistent(
                    "odd weights are empty",
                    format!("ansatz at ({k},{m}) is not empty"),
                ));
            }
        }
        let even: Vec<i32> = (lo..=hi).filter(|k| k.rem_euclid(2) == 0).collect();
        let dims_vec: Vec<(i32, usize)> = even
            .par_iter()
            .map(|&k| self.dim(k, m).map(|d| (k, d)))
            .collect::<Result<_, _>>()?;
        let mut dims: BTreeMap<i32, usize> = (lo..=hi).map(|k| (k, 0)).collect();
        dims.extend(dims_vec);
        let at = |k: i32| -> i64 { dims.get(&k).copied().unwrap_or(0) as i64 };
        let mut generators = BTreeMap::new();
        for k in lo..=hi {
            let d = at(k) - at(k - 4) - at(k - 6) + at(k - 10);
            if d < 0 {
                return Err(ConstructError::inconsistent(
                    "generator counts are non-negative",
                    format!("d at ({k},{m}) is {d}"),
                ));
            }
            if d > 0 {
                generators.insert(k, d as usize);
            }
        }
        let (dlo, dhi) = Self::default_window(m);
        let profile = IndexProfile {
            index: m,
            window,
            dims,
            generators,
            rank: rank_series(m.max(0) as u32),
            complete: lo <= dlo && hi >= dhi,
        };
        if profile.complete && profile.generator_count() != profile.rank {
            return Err(ConstructError::inconsistent(
                "generator count equals r(m)",
                format!(
                    "index {m}: counts sum to {}, r(m) = {}",
                    profile.generator_count(),
                    profile.rank
                ),
            ));
        }
        Ok(profile)
    }

    pub fn module_generators(&self, m: i32) -> Result<ModuleGenerators, ConstructError> {
        self.module_generators_in(m, Self::default_window(m))
    }

    pub fn module_generators_in(&self, m: i32, window: (i32, i32)) -> Result<ModuleGenerators, ConstructError> {
        let profile = self.index_profile_in(m, window)?;
        let mut by_weight = Vec::new();
        let e4 = Monomial::unit(lower::E4);
        let e6 = Monomial::unit(lower::E6);
        for k in (window.0..=window.1).filter(|k| k.rem_euclid(2) == 0) {
            let basis = self.basis(k, m)?;
            if basis.dim() == 0 {
                continue;
            }
            let ansatz = ab_ansatz(BiDegree::new(k, m));
            let mut lower_vecs = Vec::new();
            for (shift, mono) in [(4, e4), (6, e6)] {
                if k - shift < window.0 {
                    continue;
                }
                for f in &self.basis(k - shift, m)?.forms {
                    lower_vecs.push(coordinates(&ansatz, &f.mul_monomial(&mono), "E4/E6 multiple")?);
                }
            }
            let vecs: Vec<Vec<Rational>> = basis
                .forms
                .iter()
                .map(|f| coordinates(&ansatz, f, "basis form"))
                .collect::<Result<_, _>>()?;
            let kept = extend_basis(ansatz.len(), &lower_vecs, &vecs);
            if kept.len() != profile.d(k) {
                return Err(ConstructError::inconsistent(
                    "module generator count matches profile",
                    format!("({k},{m}): complement {} vs d = {}", kept.len(), profile.d(k)),
                ));
            }
            if !kept.is_empty() {
                by_weight.push((k, kept.into_iter().map(|i| basis.forms[i].clone()).collect()));
            }
        }
        Ok(ModuleGenerators { index: m, by_weight })
    }

    pub fn lb_analysis(&self, max_index: i32) -> Result<LbReport, ConstructError> {
        let targets: Vec<i32> = (1..=max_index).collect();
        // Warm the cache in parallel; the analysis below is sequential.
        targets
            .par_iter()
            .map(|&m| self.basis(-4 * m, m).map(|_| ()))
            .collect::<Result<Vec<()>, _>>()?;
        let mut gens: Vec<(i32, Poly)> = Vec::new();
        let mut entries = Vec::new();
        for m in 1..=max_index {
            let basis = self.basis(-4 * m, m)?;
            let ansatz = ab_ansatz(BiDegree::new(-4 * m, m));
            let mut products = Vec::new();
            for combo in multisets(&gens, m) {
                let mut p = gens[combo[0]].1.clone();
                for &i in &combo[1..] {
                    p = p.mul(&gens[i].1)?;
                }
                products.push(coordinates(&ansatz, &p, "generator product")?);
            }
            let vecs: Vec<Vec<Rational>> = basis
                .forms
                .iter()
                .map(|f| coordinates(&ansatz, f, "basis form"))
                .collect::<Result<_, _>>()?;
            let product_rank = span_dim(ansatz.len(), &products);
            let mut all = products.clone();
            all.extend(vecs.iter().cloned());
            if span_dim(ansatz.len(), &all) != basis.dim() {
                return Err(ConstructError::inconsistent(
                    "products of Jacobi forms are Jacobi forms",
                    format!("index {m}: products leave J_(-4m,m)"),
                ));
            }
            let kept = extend_basis(ansatz.len(), &products, &vecs);
            let new: Vec<Poly> = kept.into_iter().map(|i| basis.forms[i].clone()).collect();
            if product_rank + new.len() != basis.dim() {
                return Err(ConstructError::inconsistent(
                    "complement dimension",
                    format!("index {m}: {} + {} != {}", product_rank, new.len(), basis.dim()),
                ));
            }
            for g in &new {
                gens.push((m, g.clone()));
            }
            entries.push(LbEntry {
                index: m,
                dim: basis.dim(),
                relation_count: products.len() - product_rank,
                product_count: products.len(),
                product_rank,
                generators: new,
            });
        }
        Ok(LbReport {
            max_index,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_series_values() {
        assert_eq!(rank_series(0), 1);
        assert_eq!(rank_series(1), 1);
        assert_eq!(rank_series(2), 3);
        assert_eq!(rank_series(4), 10);
    }

    #[test]
    fn laurent_formatting() {
        let p = IndexProfile {
            index: 2,
            window: (-10, 0),
            dims: BTreeMap::new(),
            generators: [(-4, 1), (-2, 1), (0, 1)].into_iter().collect(),
            rank: 3,
            complete: true,
        };
        assert_eq!(p.laurent(), "x^-4 + x^-2 + 1");
        let q = IndexProfile {
            generators: [(-24, 2), (4, 1)].into_iter().collect(),
            ..p
        };
        assert_eq!(q.laurent(), "2x^-24 + x^4");
    }

    #[test]
    fn multiset_enumeration() {
        let one = Poly::one(&crate::graded_ring::LOWER_AB);
        let gens = vec![(4, one.clone()), (6, one.clone()), (6, one)];
        // index 12: {4,4,4}? no (12 = 4+4+4), {6,6}, {6,6'}, {6',6'}
        assert_eq!(multisets(&gens, 12).len(), 4);
        assert_eq!(multisets(&gens, 8).len(), 1);
        assert!(multisets(&gens, 5).is_empty());
    }
}
