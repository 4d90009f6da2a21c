//! Exact homogeneous linear systems: coefficient matching, nullspaces and
//! coordinate projections.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashSet;

use crate::graded_ring::{
    make_primitive, primitive_integer_vector, Coefficient, LinForm, ParamPoly, Rational,
    RingError,
};

/// Sparse row: `(column, value)` with strictly increasing columns and no zeros.
pub type SparseRow = Vec<(u32, Rational)>;

/// `rows * x = 0` in `num_unknowns` unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub num_unknowns: usize,
    pub rows: Vec<SparseRow>,
}

impl LinearSystem {
    pub fn new(num_unknowns: usize) -> Self {
        LinearSystem {
            num_unknowns,
            rows: Vec::new(),
        }
    }

    pub fn push_form(&mut self, form: &LinForm) {
        if form.is_zero_coeff() {
            return;
        }
        if let Some(max) = form.max_unknown() {
            assert!((max as usize) < self.num_unknowns, "unknown u{max} out of range");
        }
        self.rows.push(form.terms().to_vec());
    }

    pub fn extend(&mut self, other: LinearSystem) {
        assert!(other.num_unknowns <= self.num_unknowns);
        self.rows.extend(other.rows);
    }

    /// Value of every row at `x`.
    pub fn residuals(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(j, q)| q * &x[*j as usize]).sum())
            .collect()
    }
}

/// One equation per monomial on either side: `lhs - rhs = 0`.
pub fn match_coefficients(lhs: &ParamPoly, rhs: &ParamPoly) -> Result<LinearSystem, RingError> {
    let diff = lhs.checked_sub(rhs)?;
    let n = [lhs, rhs]
        .iter()
        .flat_map(|p| p.unknowns())
        .max()
        .map(|m| m as usize + 1)
        .unwrap_or(0);
    let mut sys = LinearSystem::new(n);
    for (_, form) in diff.terms() {
        sys.push_form(form);
    }
    Ok(sys)
}

/// Reduced-echelon basis of a solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub num_unknowns: usize,
    /// Reduced echelon form with pivots in increasing column order, each
    /// row scaled to a primitive integer vector with positive pivot.
    pub basis: Vec<Vec<Rational>>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn integer_basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|v| primitive_integer_vector(v)).collect()
    }

    /// First nonzero column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|q| !q.is_zero()).unwrap())
            .collect()
    }
}

type IntRow = Vec<(u32, BigInt)>;

fn to_int_row(row: &[(u32, Rational)]) -> IntRow {
    let den = row.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let mut vals: Vec<BigInt> = row
        .iter()
        .map(|(_, q)| q.numer() * (&den / q.denom()))
        .collect();
    make_primitive(&mut vals);
    row.iter().map(|(j, _)| *j).zip(vals).collect()
}

fn primitive_row(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().map(|(_, v)| v.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a*row - b*pivot`, where `a, b` cancel the shared leading column.
fn eliminate(row: &IntRow, pivot: &IntRow) -> IntRow {
    let lead_r = &row[0].1;
    let lead_p = &pivot[0].1;
    let g = lead_r.gcd(lead_p);
    let a = lead_p / &g;
    let b = lead_r / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|t| t.0).unwrap_or(u32::MAX);
        let cj = pivot.get(j).map(|t| t.0).unwrap_or(u32::MAX);
        if ci < cj {
            out.push((ci, &a * &row[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&b * &pivot[j].1)));
            j += 1;
        } else {
            let v = &a * &row[i].1 - &b * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Fraction-free row echelon form, keyed by pivot column.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<u32, IntRow>,
}

impl Echelon {
    /// Reduces `row` against the current pivots; returns whether it was new.
    fn insert(&mut self, mut row: IntRow) -> bool {
        while let Some(&(lead, _)) = row.first() {
            match self.rows.get(&lead) {
                Some(p) => {
                    row = eliminate(&row, p);
                    primitive_row(&mut row);
                }
                None => {
                    primitive_row(&mut row);
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Back-substitution to reduced form with unit pivots, dense rational rows.
    fn reduced(&self, n: usize) -> BTreeMap<u32, Vec<Rational>> {
        let mut out: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
        for (&col, row) in self.rows.iter().rev() {
            let lead = Rational::from_integer(row[0].1.clone());
            let mut dense = vec![Rational::zero(); n];
            for (j, v) in row {
                dense[*j as usize] = Rational::from_integer(v.clone()) / &lead;
            }
            for (&pc, prow) in out.iter() {
                let f = dense[pc as usize].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, q) in prow.iter().enumerate().skip(pc as usize) {
                    if !q.is_zero() {
                        dense[j] -= &f * q;
                    }
                }
            }
            out.insert(col, dense);
        }
        out
    }
}

/// Rank of the system (duplicate and proportional rows are harmless).
pub fn rank(sys: &LinearSystem) -> usize {
    echelonize(sys).rank()
}

fn echelonize(sys: &LinearSystem) -> Echelon {
    let mut seen: FxHashSet<IntRow> = FxHashSet::default();
    let mut ech = Echelon::default();
    for r in &sys.rows {
        if r.is_empty() {
            continue;
        }
        let ir = to_int_row(r);
        if seen.insert(ir.clone()) {
            ech.insert(ir);
        }
    }
    ech
}

/// Basis of `{x : sys * x = 0}`.
pub fn nullspace(sys: &LinearSystem) -> SolutionSpace {
    let n = sys.num_unknowns;
    let ech = echelonize(sys);
    let rref = ech.reduced(n);
    let mut vectors = Vec::new();
    for f in 0..n {
        if rref.contains_key(&(f as u32)) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (&pc, row) in &rref {
            if !row[f].is_zero() {
                v[pc as usize] = -row[f].clone();
            }
        }
        vectors.push(v);
    }
    span(n, vectors)
}

/// Canonical basis of the span of `vectors`.
pub fn span(num_unknowns: usize, vectors: Vec<Vec<Rational>>) -> SolutionSpace {
    let mut sys = LinearSystem::new(num_unknowns);
    for v in vectors {
        assert_eq!(v.len(), num_unknowns);
        let row: SparseRow = v
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(j, q)| (j as u32, q))
            .collect();
        sys.rows.push(row);
    }
    let rref = echelonize(&sys).reduced(num_unknowns);
    let basis = rref
        .into_values()
        .map(|v| {
            primitive_integer_vector(&v)
                .into_iter()
                .map(Rational::from_integer)
                .collect()
        })
        .collect();
    SolutionSpace {
        num_unknowns,
        basis,
    }
}

/// Image of the coordinate projection onto `keep` (in the given order).
pub fn project(space: &SolutionSpace, keep: &[usize]) -> SolutionSpace {
    let vectors = space
        .basis
        .iter()
        .map(|v| keep.iter().map(|&j| v[j].clone()).collect())
        .collect();
    span(keep.len(), vectors)
}

/// Columns of `vectors` that extend the span of `base` (greedy, in order):
/// returns the indices of the vectors kept.
pub fn extend_basis(num_unknowns: usize, base: &[Vec<Rational>], vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut ech = Echelon::default();
    let to_row = |v: &[Rational]| -> SparseRow {
        v.iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(j, q)| (j as u32, q.clone()))
            .collect()
    };
    for v in base {
        assert_eq!(v.len(), num_unknowns);
        let r = to_row(v);
        if !r.is_empty() {
            ech.insert(to_int_row(&r));
        }
    }
    let mut kept = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let r = to_row(v);
        if !r.is_empty() && ech.insert(to_int_row(&r)) {
            kept.push(i);
        }
    }
    kept
}

/// Dimension of the span of `vectors`.
pub fn span_dim(num_unknowns: usize, vectors: &[Vec<Rational>]) -> usize {
    extend_basis(num_unknowns, &[], vectors).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_ring::{rat, ratio};

    fn row(v: &[(u32, Rational)]) -> SparseRow {
        v.to_vec()
    }

    #[test]
    fn empty_system_is_everything() {
        let s = nullspace(&LinearSystem::new(3));
        assert_eq!(s.dim(), 3);
        assert_eq!(s.basis[0], vec![rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn small_nullspace() {
        // x + 2y - z = 0, y + z = 0  =>  (3, -1, 1)
        let mut sys = LinearSystem::new(3);
        sys.rows.push(row(&[(0, rat(1)), (1, rat(2)), (2, rat(-1))]));
        sys.rows.push(row(&[(1, rat(1)), (2, rat(1))]));
        sys.rows.push(row(&[(1, rat(2)), (2, rat(2))]));
        let s = nullspace(&sys);
        assert_eq!(s.basis, vec![vec![rat(3), rat(-1), rat(1)]]);
        assert_eq!(rank(&sys), 2);
    }

    #[test]
    fn projection_examples() {
        let s = span(3, vec![vec![rat(1), rat(0), rat(5)], vec![rat(0), rat(1), rat(7)]]);
        assert_eq!(project(&s, &[2]).basis, vec![vec![rat(1)]]);
        assert_eq!(project(&s, &[0, 1, 2]), s);
    }

    #[test]
    fn rational_entries_become_primitive() {
        let s = span(2, vec![vec![ratio(-2, 3), ratio(4, 9)]]);
        assert_eq!(s.basis, vec![vec![rat(3), rat(-2)]]);
    }

    #[test]
    fn extension_picks_new_directions() {
        let base = vec![vec![rat(1), rat(1), rat(0)]];
        let vs = vec![
            vec![rat(2), rat(2), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
        ];
        assert_eq!(extend_basis(3, &base, &vs), vec![1]);
        assert_eq!(span_dim(3, &vs), 2);
    }
}
