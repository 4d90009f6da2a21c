use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Number of generators in each built-in alphabet.
pub const NGEN: usize = 11;

/// (weight, index) bigrading. Weight may be negative; index of a
/// non-zero homogeneous element is never negative, but intermediate
/// targets such as `m - 5l` may be, in which case the space is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BiDegree {
    pub weight: i32,
    pub index: i32,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree {
        weight: 0,
        index: 0,
    };

    pub const fn new(weight: i32, index: i32) -> Self {
        BiDegree { weight, index }
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.weight + rhs.weight, self.index + rhs.index)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.weight - rhs.weight, self.index - rhs.index)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.weight, -self.index)
    }
}

impl Mul<i32> for BiDegree {
    type Output = BiDegree;
    fn mul(self, rhs: i32) -> BiDegree {
        BiDegree::new(self.weight * rhs, self.index * rhs)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.weight, self.index)
    }
}

#[derive(Debug)]
pub struct Generator {
    pub symbol: &'static str,
    pub degree: BiDegree,
}

const fn g(symbol: &'static str, weight: i32, index: i32) -> Generator {
    Generator {
        symbol,
        degree: BiDegree::new(weight, index),
    }
}

/// An ordered list of polynomial generators with their bidegrees.
///
/// Both built-in alphabets start with `E4, E6` at positions 0 and 1;
/// the monomial order and the E4-splitting rely on that.
#[derive(Debug)]
pub struct Alphabet {
    pub name: &'static str,
    pub generators: [Generator; NGEN],
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Alphabet {}

/// Holomorphic generators `E4, E6, A1..A5, B2, B3, B4, B6`.
pub static AB: Alphabet = Alphabet {
    name: "AB",
    generators: [
        g("E4", 4, 0),
        g("E6", 6, 0),
        g("A1", 4, 1),
        g("A2", 4, 2),
        g("A3", 4, 3),
        g("A4", 4, 4),
        g("A5", 4, 5),
        g("B2", 6, 2),
        g("B3", 6, 3),
        g("B4", 6, 4),
        g("B6", 6, 6),
    ],
};

/// Meromorphic generators `E4, E6, a2..a4, b1..b6`.
pub static LOWER_AB: Alphabet = Alphabet {
    name: "ab",
    generators: [
        g("E4", 4, 0),
        g("E6", 6, 0),
        g("a2", -8, 2),
        g("a3", -14, 3),
        g("a4", -20, 4),
        g("b1", 0, 1),
        g("b2", -6, 2),
        g("b3", -12, 3),
        g("b4", -18, 4),
        g("b5", -24, 5),
        g("b6", -30, 6),
    ],
};

/// Positions in [`AB`].
pub mod upper {
    pub const E4: usize = 0;
    pub const E6: usize = 1;
    pub const A1: usize = 2;
    pub const A2: usize = 3;
    pub const A3: usize = 4;
    pub const A4: usize = 5;
    pub const A5: usize = 6;
    pub const B2: usize = 7;
    pub const B3: usize = 8;
    pub const B4: usize = 9;
    pub const B6: usize = 10;
}

/// Positions in [`LOWER_AB`].
pub mod lower {
    pub const E4: usize = 0;
    pub const E6: usize = 1;
    pub const A2: usize = 2;
    pub const A3: usize = 3;
    pub const A4: usize = 4;
    pub const B1: usize = 5;
    pub const B2: usize = 6;
    pub const B3: usize = 7;
    pub const B4: usize = 8;
    pub const B5: usize = 9;
    pub const B6: usize = 10;
}

impl Alphabet {
    pub fn by_name(name: &str) -> Option<&'static Alphabet> {
        match name {
            "AB" => Some(&AB),
            "ab" => Some(&LOWER_AB),
            _ => None,
        }
    }

    pub fn position(&self, symbol: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.symbol == symbol)
    }

    pub fn symbol(&self, i: usize) -> &'static str {
        self.generators[i].symbol
    }

    pub fn bidegree(&self, m: &Monomial) -> BiDegree {
        let mut d = BiDegree::ZERO;
        for (g, &e) in self.generators.iter().zip(m.0.iter()) {
            d = d + g.degree * e as i32;
        }
        d
    }

    /// Weight carried by the index-0 generators of the monomial.
    pub fn modular_weight(&self, m: &Monomial) -> i32 {
        self.generators
            .iter()
            .zip(m.0.iter())
            .filter(|(g, _)| g.degree.index == 0)
            .map(|(g, &e)| g.degree.weight * e as i32)
            .sum()
    }

    /// Monomial order: bidegree, then weight of the index-0 factor, then
    /// exponent vector lexicographically in alphabet order. Within one
    /// bidegree this is a term order (all three keys are additive or
    /// lexicographic), so it drives exact division.
    pub fn order(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.bidegree(a)
            .cmp(&self.bidegree(b))
            .then_with(|| self.modular_weight(a).cmp(&self.modular_weight(b)))
            .then_with(|| a.0.cmp(&b.0))
    }

    pub fn all_weights_even(&self) -> bool {
        self.generators.iter().all(|g| g.degree.weight % 2 == 0)
    }

    pub fn same(&self, other: &Alphabet) -> bool {
        std::ptr::eq(self, other) || self.name == other.name
    }

    /// Canonical text listing of the generators and bidegrees.
    pub fn definition(&self) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}{}", g.symbol, g.degree))
            .collect();
        format!("{}=[{}]", self.name, parts.join(","))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.symbol(i).to_string()),
                _ => parts.push(format!("{}^{}", self.symbol(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Exponent vector over an alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u16; NGEN]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NGEN]);

    pub fn unit(i: usize) -> Self {
        let mut e = [0; NGEN];
        e[i] = 1;
        Monomial(e)
    }

    pub fn power(i: usize, n: u16) -> Self {
        let mut e = [0; NGEN];
        e[i] = n;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16; NGEN] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(rhs.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn checked_div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    pub fn pow(&self, n: u16) -> Monomial {
        let mut e = self.0;
        for a in e.iter_mut() {
            *a = a.checked_mul(n).expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    pub fn with_exp(&self, i: usize, n: u16) -> Monomial {
        let mut e = self.0;
        e[i] = n;
        Monomial(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_weights() {
        for m in 2..=4 {
            let s = format!("a{m}");
            let i = LOWER_AB.position(&s).unwrap();
            assert_eq!(LOWER_AB.generators[i].degree, BiDegree::new(4 - 6 * m, m));
        }
        for m in 1..=6 {
            let s = format!("b{m}");
            let i = LOWER_AB.position(&s).unwrap();
            assert_eq!(LOWER_AB.generators[i].degree, BiDegree::new(6 - 6 * m, m));
        }
        for (s, w) in [("A1", 4), ("A5", 4), ("B2", 6), ("B6", 6)] {
            let i = AB.position(s).unwrap();
            assert_eq!(AB.generators[i].degree.weight, w);
        }
        assert!(AB.all_weights_even() && LOWER_AB.all_weights_even());
    }

    #[test]
    fn bidegree_is_additive() {
        let a = Monomial([1, 0, 2, 0, 0, 1, 0, 0, 0, 0, 0]);
        let b = Monomial([0, 1, 0, 1, 0, 0, 0, 0, 0, 3, 0]);
        assert_eq!(
            LOWER_AB.bidegree(&a.mul(&b)),
            LOWER_AB.bidegree(&a) + LOWER_AB.bidegree(&b)
        );
    }

    #[test]
    fn order_prefers_modular_weight() {
        // E6 a2 a3 sits above E4 a2 b3 at bidegree (-16,5).
        let e6a2a3 = Monomial([0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let e4a2b3 = Monomial([1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(LOWER_AB.bidegree(&e6a2a3), LOWER_AB.bidegree(&e4a2b3));
        assert_eq!(LOWER_AB.order(&e6a2a3, &e4a2b3), Ordering::Greater);
    }
}
