//! E8 root data in the orthonormal basis, Weyl orbits and orbit characters.
//!
//! Vectors are stored with doubled coordinates so that everything in the
//! weight lattice is integral.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use crate::complex::{pi, Cx};

pub type Doubled = [i32; 8];

/// |W(E8)|.
pub const WEYL_ORDER: u64 = 696_729_600;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E8Data {
    pub simple_roots: [Doubled; 8],
    pub fundamental_weights: [Doubled; 8],
}

impl E8Data {
    pub fn standard() -> &'static E8Data {
        static DATA: OnceLock<E8Data> = OnceLock::new();
        DATA.get_or_init(|| {
            let mut roots = [[0; 8]; 8];
            roots[0] = [1, -1, -1, -1, -1, -1, -1, 1];
            roots[1] = [2, 2, 0, 0, 0, 0, 0, 0];
            for j in 3..=8usize {
                let mut r = [0; 8];
                r[j - 3] = -2;
                r[j - 2] = 2;
                roots[j - 1] = r;
            }
            let weights = [
                [0, 0, 0, 0, 0, 0, 0, 4],
                [1, 1, 1, 1, 1, 1, 1, 5],
                [-1, 1, 1, 1, 1, 1, 1, 7],
                [0, 0, 2, 2, 2, 2, 2, 10],
                [0, 0, 0, 2, 2, 2, 2, 8],
                [0, 0, 0, 0, 2, 2, 2, 6],
                [0, 0, 0, 0, 0, 2, 2, 4],
                [0, 0, 0, 0, 0, 0, 2, 2],
            ];
            E8Data {
                simple_roots: roots,
                fundamental_weights: weights,
            }
        })
    }
}

/// `4 (u . v)` for doubled coordinates.
pub fn dot4(u: &Doubled, v: &Doubled) -> i32 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `v - (v . alpha) alpha` for a root `alpha` (norm 2).
pub fn reflect(v: &Doubled, alpha: &Doubled) -> Doubled {
    let d = dot4(v, alpha);
    debug_assert_eq!(d % 4, 0, "weight pairs integrally with roots");
    let c = d / 4;
    let mut out = *v;
    for i in 0..8 {
        out[i] -= c * alpha[i];
    }
    out
}

/// Orbit of `start` under the simple reflections, in discovery order.
pub fn orbit_of(start: Doubled) -> Vec<Doubled> {
    let roots = &E8Data::standard().simple_roots;
    let mut seen: HashSet<Doubled> = HashSet::from([start]);
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for a in roots {
            let w = reflect(&v, a);
            if seen.insert(w) {
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Weyl orbit of the fundamental weight `Lambda_j`, `j = 1..8`, memoized.
pub fn weyl_orbit(j: usize) -> &'static [Doubled] {
    static ORBITS: [OnceLock<Vec<Doubled>>; 8] = [const { OnceLock::new() }; 8];
    assert!((1..=8).contains(&j), "fundamental weight index {j}");
    ORBITS[j - 1].get_or_init(|| orbit_of(E8Data::standard().fundamental_weights[j - 1]))
}

/// The 240 roots.
pub fn roots() -> &'static [Doubled] {
    weyl_orbit(8)
}

/// Lattice vectors of norm at most `max_norm`, enumerated directly from
/// `D8 union (D8 + (1/2)^8)`, without any Weyl group action.
pub fn lattice_vectors(max_norm: i32) -> Vec<Doubled> {
    let bound = ((max_norm as f64).sqrt()).floor() as i32;
    let mut out = Vec::new();
    let mut cur = [0i32; 8];
    fn rec(i: usize, cur: &mut [i32; 8], vals: &[i32], max4: i32, out: &mut Vec<Doubled>) {
        let norm4: i32 = cur[..i].iter().map(|x| x * x).sum();
        if norm4 > max4 {
            return;
        }
        if i == 8 {
            let sum2: i32 = cur.iter().sum();
            // sum of actual coordinates is sum2/2; it must be even
            if sum2 % 4 == 0 {
                out.push(*cur);
            }
            return;
        }
        for &v in vals {
            cur[i] = v;
            rec(i + 1, cur, vals, max4, out);
        }
        cur[i] = 0;
    }
    let ints: Vec<i32> = (-bound..=bound).map(|x| 2 * x).collect();
    rec(0, &mut cur, &ints, 4 * max_norm, &mut out);
    let halves: Vec<i32> = (-bound - 1..=bound).map(|x| 2 * x + 1).collect();
    rec(0, &mut cur, &halves, 4 * max_norm, &mut out);
    out
}

/// `exp(pi i z_j n)` for `n` in `-max..=max`, one table per coordinate, so
/// that `exp(2 pi i v . z)` for doubled `v` is a product of table entries.
pub struct PhaseTable {
    max: i32,
    table: Vec<Vec<Cx>>,
}

impl PhaseTable {
    pub fn new(z: &[Cx; 8], max: i32) -> PhaseTable {
        let table = z
            .iter()
            .map(|zj| {
                let base = zj.mul_i().scale(&pi(zj.p)).exp();
                let inv = base.recip();
                let mut row = vec![Cx::one(zj.p); (2 * max + 1) as usize];
                for n in 1..=max {
                    row[(max + n) as usize] = &row[(max + n - 1) as usize] * &base;
                    row[(max - n) as usize] = &row[(max - n + 1) as usize] * &inv;
                }
                row
            })
            .collect();
        PhaseTable { max, table }
    }

    /// `exp(2 pi i v . z)` for doubled `v`.
    pub fn phase(&self, v: &Doubled) -> Cx {
        let mut acc = self.table[0][(self.max + v[0]) as usize].clone();
        for (row, &x) in self.table.iter().zip(v).skip(1) {
            acc = &acc * &row[(self.max + x) as usize];
        }
        acc
    }
}

/// `w_j(z) = sum over the orbit of Lambda_j of exp(2 pi i v . z)`.
pub fn orbit_character(j: usize, z: &[Cx; 8]) -> Cx {
    let orbit = weyl_orbit(j);
    let max = orbit.iter().flat_map(|v| v.iter()).map(|x| x.abs()).max().unwrap_or(0);
    let table = PhaseTable::new(z, max);
    let mut acc = Cx::zero(z[0].p);
    for v in orbit {
        acc = &acc + &table.phase(v);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_are_dual_to_roots() {
        let d = E8Data::standard();
        for (i, w) in d.fundamental_weights.iter().enumerate() {
            for (j, a) in d.simple_roots.iter().enumerate() {
                assert_eq!(dot4(w, a), if i == j { 4 } else { 0 }, "Lambda_{} . alpha_{}", i + 1, j + 1);
            }
        }
        for a in &d.simple_roots {
            assert_eq!(dot4(a, a), 8);
        }
    }

    #[test]
    fn root_orbit_is_the_norm_two_shell() {
        let orbit: HashSet<Doubled> = roots().iter().copied().collect();
        assert_eq!(orbit.len(), 240);
        let shell: HashSet<Doubled> = lattice_vectors(2).into_iter().filter(|v| dot4(v, v) == 8).collect();
        assert_eq!(orbit, shell);
    }

    #[test]
    fn shell_counts() {
        let vs = lattice_vectors(8);
        let count = |n: i32| vs.iter().filter(|v| dot4(v, v) == 4 * n).count();
        assert_eq!([count(0), count(2), count(4), count(6), count(8)], [1, 240, 2160, 6720, 17520]);
    }

    #[test]
    fn orbits_close_and_divide_the_group_order() {
        for j in [1usize, 2, 7, 8] {
            let orbit = weyl_orbit(j);
            let set: HashSet<Doubled> = orbit.iter().copied().collect();
            for v in orbit {
                for a in &E8Data::standard().simple_roots {
                    assert!(set.contains(&reflect(v, a)));
                }
            }
            assert_eq!(WEYL_ORDER % orbit.len() as u64, 0);
        }
        let sizes: Vec<usize> = [1, 2, 7, 8].iter().map(|&j| weyl_orbit(j).len()).collect();
        assert_eq!(sizes, vec![2160, 17280, 6720, 240]);
    }

    #[test]
    fn character_at_zero_counts_the_orbit() {
        let z: [Cx; 8] = std::array::from_fn(|_| Cx::zero(192));
        assert!((orbit_character(8, &z).to_f64().0 - 240.0).abs() < 1e-30);
    }
}
