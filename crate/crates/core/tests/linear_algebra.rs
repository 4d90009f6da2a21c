//! Nullspaces and projections against a dense Gauss-Jordan reference.

mod common;

use common::q;
use e8jacobi_core::graded_ring::{primitive_integer_vector, LinForm, Rational};
use e8jacobi_core::linear_solver::{
    extend_basis, match_coefficients, nullspace, project, rank, span, span_dim, LinearSystem,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Dense reduced row echelon form with unit pivots; returns (rows, pivots).
fn naive_rref(mut a: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Null basis from the free columns, then re-reduced and made primitive.
fn naive_nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = naive_rref(rows.to_vec(), n);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    canonical(basis, n)
}

fn canonical(vectors: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    let (red, _) = naive_rref(vectors, n);
    red.iter()
        .map(|v| primitive_integer_vector(v).into_iter().map(Rational::from_integer).collect())
        .collect()
}

fn system(rows: &[Vec<Rational>], n: usize) -> LinearSystem {
    let mut sys = LinearSystem::new(n);
    for r in rows {
        sys.push_form(&LinForm::from_terms(
            r.iter().enumerate().map(|(j, v)| (j as u32, v.clone())),
        ));
    }
    sys
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    // sparse-ish small rationals, with duplicated rows now and then
    prop::collection::vec(
        prop::collection::vec((-3i64..=3, 1i64..=3, 0u8..3), cols),
        rows,
    )
    .prop_map(|m| {
        m.into_iter()
            .map(|r| r.into_iter().map(|(n, d, z)| if z == 0 { q(0, 1) } else { q(n, d) }).collect())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nullspace_matches_reference(a in matrix(4, 7)) {
        let sys = system(&a, 7);
        let space = nullspace(&sys);
        prop_assert_eq!(&space.basis, &naive_nullspace(&a, 7));
        for v in &space.basis {
            prop_assert!(sys.residuals(v).iter().all(|r| r.is_zero()));
        }
        prop_assert_eq!(space.dim() + rank(&sys), 7);
    }

    #[test]
    fn tall_systems(a in matrix(9, 5)) {
        let sys = system(&a, 5);
        let space = nullspace(&sys);
        prop_assert_eq!(&space.basis, &naive_nullspace(&a, 5));
    }

    #[test]
    fn span_is_canonical(a in matrix(5, 6)) {
        let s = span(6, a.clone());
        prop_assert_eq!(&s.basis, &canonical(a.clone(), 6));
        prop_assert_eq!(span_dim(6, &a), s.dim());
        let mut shuffled = a.clone();
        shuffled.reverse();
        prop_assert_eq!(span(6, shuffled), s);
    }

    #[test]
    fn projection_is_image(a in matrix(3, 6), keep in prop::collection::btree_set(0usize..6, 1..6)) {
        let space = nullspace(&system(&a, 6));
        let keep: Vec<usize> = keep.into_iter().collect();
        let projected = project(&space, &keep);
        let images: Vec<Vec<Rational>> = space
            .basis
            .iter()
            .map(|v| keep.iter().map(|&i| v[i].clone()).collect())
            .collect();
        prop_assert_eq!(&projected.basis, &canonical(images, keep.len()));
    }

    #[test]
    fn extension_completes_span(base in matrix(2, 5), extra in matrix(4, 5)) {
        let kept = extend_basis(5, &base, &extra);
        let mut all = base.clone();
        all.extend(kept.iter().map(|&i| extra[i].clone()));
        let mut everything = base.clone();
        everything.extend(extra.iter().cloned());
        prop_assert_eq!(span_dim(5, &all), span_dim(5, &everything));
        prop_assert_eq!(span_dim(5, &all), span_dim(5, &base) + kept.len());
    }
}

#[test]
fn identity_has_trivial_nullspace() {
    let n = 5;
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1, 1) } else { q(0, 1) }).collect())
        .collect();
    let sys = system(&rows, n);
    assert_eq!(nullspace(&sys).dim(), 0);
    assert_eq!(rank(&sys), n);
}

#[test]
fn small_projection() {
    let space = span(3, vec![vec![q(1, 1), q(0, 1), q(5, 1)], vec![q(0, 1), q(1, 1), q(7, 1)]]);
    let p = project(&space, &[2]);
    assert_eq!(p.basis, vec![vec![q(1, 1)]]);
    assert_eq!(project(&space, &[0, 1, 2]), space);
}

#[test]
fn zero_against_zero_is_empty() {
    let z = e8jacobi_core::graded_ring::ParamPoly::zero(&e8jacobi_core::graded_ring::AB);
    let sys = match_coefficients(&z, &z).unwrap();
    assert!(sys.rows.is_empty());
}
