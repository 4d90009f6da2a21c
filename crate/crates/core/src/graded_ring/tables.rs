//! Transcribed relations between the two alphabets.

use std::sync::OnceLock;

use super::alphabet::{AB, LOWER_AB, NGEN};
use super::coeff::Rational;
use super::frac::Frac;
use super::coeff::parse_rational;
use super::parse::parse_poly;
use super::poly::Poly;

/// `symbol = scale * numerator / (E4^e4_pow Delta^delta_pow)`, numerator over `AB`.
pub(crate) struct LowerDef {
    pub symbol: &'static str,
    pub scale: &'static str,
    pub e4_pow: u32,
    pub delta_pow: u32,
    pub numerator: &'static str,
}

pub(crate) const LOWER_DEFS: [LowerDef; 9] = [
    LowerDef {
        symbol: "a2",
        scale: "6",
        e4_pow: 1,
        delta_pow: 1,
        numerator: "-E4 A2 + A1^2",
    },
    LowerDef {
        symbol: "a3",
        scale: "1/9",
        e4_pow: 2,
        delta_pow: 2,
        numerator: "-7 E4^2 E6 A3 - 20 E4^3 B3 - 9 E4 E6 A1 A2 + 30 E4^2 A1 B2 + 6 E6 A1^3",
    },
    LowerDef {
        symbol: "a4",
        scale: "1/864",
        e4_pow: 3,
        delta_pow: 3,
        numerator: "(E4^6 - E4^3 E6^2) A4 + (56 E4^5 - 56 E4^2 E6^2) A1 A3 - 27 E4^5 A2^2 \
            - 90 E4^3 E6 A2 B2 - 75 E4^4 B2^2 + (180 E4^4 - 36 E4 E6^2) A1^2 A2 \
            + 240 E4^2 E6 A1^2 B2 + (-210 E4^3 + 18 E6^2) A1^4",
    },
    LowerDef {
        symbol: "b1",
        scale: "-4",
        e4_pow: 1,
        delta_pow: 0,
        numerator: "A1",
    },
    LowerDef {
        symbol: "b2",
        scale: "5/6",
        e4_pow: 2,
        delta_pow: 1,
        numerator: "E4^2 B2 - E6 A1^2",
    },
    LowerDef {
        symbol: "b3",
        scale: "1/108",
        e4_pow: 3,
        delta_pow: 2,
        numerator: "-7 E4^5 A3 - 20 E4^3 E6 B3 - 9 E4^4 A1 A2 + 30 E4^2 E6 A1 B2 \
            + (16 E4^3 - 10 E6^2) A1^3",
    },
    LowerDef {
        symbol: "b4",
        scale: "1/1728",
        e4_pow: 4,
        delta_pow: 3,
        numerator: "(-5 E4^7 + 5 E4^4 E6^2) B4 + (80 E4^6 - 80 E4^3 E6^2) A1 B3 \
            + 9 E4^5 E6 A2^2 + 30 E4^6 A2 B2 + 25 E4^4 E6 B2^2 - 48 E4^4 E6 A1^2 A2 \
            + (-140 E4^5 + 60 E4^2 E6^2) A1^2 B2 + (74 E4^3 E6 - 10 E6^3) A1^4",
    },
    LowerDef {
        symbol: "b5",
        scale: "1/72",
        e4_pow: 5,
        delta_pow: 3,
        numerator: "(-21 E4^7 + 21 E4^4 E6^2) A5 - 294 E4^6 A2 A3 - 770 E4^4 E6 B2 A3 \
            - 840 E4^4 E6 A2 B3 - 2200 E4^5 B2 B3 + 168 E4^5 A1^2 A3 \
            + 480 E4^3 E6 A1^2 B3 - 621 E4^5 A1 A2^2 + 3525 E4^4 A1 B2^2 \
            + 1224 E4^4 A1^3 A2 - 240 E4^2 E6 A1^3 B2 + (-456 E4^3 + 24 E6^2) A1^5",
    },
    LowerDef {
        symbol: "b6",
        scale: "1/13436928",
        e4_pow: 6,
        delta_pow: 5,
        numerator: "(-20 E4^12 + 40 E4^9 E6^2 - 20 E4^6 E6^4) B6 \
            + (-189 E4^10 E6 + 378 E4^7 E6^3 - 189 E4^4 E6^5) A1 A5 \
            + (-9 E4^10 E6 + 9 E4^7 E6^3) A2 A4 + (-15 E4^11 + 15 E4^8 E6^2) B2 A4 \
            + (-180 E4^11 + 180 E4^8 E6^2) A2 B4 + (-300 E4^9 E6 + 300 E4^6 E6^3) B2 B4 \
            + (22 E4^9 E6 - 22 E4^6 E6^3) A1^2 A4 \
            + (150 E4^10 + 120 E4^7 E6^2 - 270 E4^4 E6^4) A1^2 B4 \
            + (196 E4^10 E6 - 196 E4^7 E6^3) A3^2 + (1120 E4^11 - 1120 E4^8 E6^2) A3 B3 \
            + (1600 E4^9 E6 - 1600 E4^6 E6^3) B3^2 \
            + (-2982 E4^9 E6 + 2982 E4^6 E6^3) A1 A2 A3 \
            + (-2520 E4^10 - 4410 E4^7 E6^2 + 6930 E4^4 E6^4) A1 B2 A3 \
            + (3360 E4^10 - 10920 E4^7 E6^2 + 7560 E4^4 E6^4) A1 A2 B3 \
            + (-19800 E4^8 E6 + 19800 E4^5 E6^3) A1 B2 B3 \
            + (2016 E4^8 E6 - 2016 E4^5 E6^3) A1^3 A3 \
            + (-5920 E4^9 + 7360 E4^6 E6^2 - 1440 E4^3 E6^4) A1^3 B3 \
            + (405 E4^9 E6 + 162 E4^6 E6^3) A2^3 + (1215 E4^10 + 1620 E4^7 E6^2) A2^2 B2 \
            + 4725 E4^8 E6 A2 B2^2 + (1125 E4^9 + 1500 E4^6 E6^2) B2^3 \
            + (-9477 E4^8 E6 + 5103 E4^5 E6^3) A1^2 A2^2 \
            + (-9180 E4^9 - 5400 E4^6 E6^2) A1^2 A2 B2 \
            + (20925 E4^7 E6 - 33075 E4^4 E6^3) A1^2 B2^2 \
            + (20304 E4^7 E6 - 9072 E4^4 E6^3) A1^4 A2 \
            + (12780 E4^8 + 5400 E4^5 E6^2 + 540 E4^2 E6^4) A1^4 B2 \
            + (-11076 E4^6 E6 + 1512 E4^3 E6^3 - 36 E6^5) A1^6",
    },
];

/// `A_i, B_j` as polynomials over `ab` (with `Delta` expanded).
pub(crate) const UPPER_DEFS: [(&str, &str); 9] = [
    ("A1", "-1/4 E4 b1"),
    ("A2", "(3 E4 b1^2 - 8 Delta a2)/48"),
    (
        "A3",
        "(-21 E4 b1^3 - 12 Delta E4 b3 + Delta E6 a3 - 72 Delta a2 b1)/1344",
    ),
    (
        "A4",
        "1/2304 (Delta E4^2 a2^2 + 9 E4 b1^4 - 288 Delta E4 b1 b3 + 144 Delta E4 b2^2 \
            - 24 Delta E6 a2 b2 + 24 Delta E6 a3 b1 + 1296 Delta a2 b1^2 + 1152 Delta^2 a4)",
    ),
    (
        "A5",
        "1/64512 (3 Delta E4^2 a2^2 b1 - 63 E4 b1^5 + 216 Delta E4 b1^2 b3 \
            - 144 Delta E4 b1 b2^2 - 24 Delta E6 a2 b1 b2 + 110 Delta E6 a3 b1^2 \
            - 1200 Delta a2 b1^3 - 128 Delta^2 E4 b5 - 1344 Delta^2 a2 b3 + 2112 Delta^2 a3 b2)",
    ),
    ("B2", "(5 E6 b1^2 + 96 Delta b2)/80"),
    (
        "B3",
        "(-Delta E4^2 a3 - 60 E6 b1^3 + 12 Delta E6 b3 - 1728 Delta b1 b2)/3840",
    ),
    (
        "B4",
        "1/34560 (-24 Delta E4^2 a2 b2 + 36 Delta E4^2 a3 b1 + Delta E4 E6 a2^2 \
            + 135 E6 b1^4 - 432 Delta E6 b1 b3 + 144 Delta E6 b2^2 + 5184 Delta b1^2 b2 \
            - 6912 Delta^2 b4)",
    ),
    (
        "B6",
        "1/552960 (-Delta E4^2 E6 a4 b1^2 + 72 Delta E4^2 a2 b1^2 b2 - 216 Delta E4^2 a3 b1^3 \
            - 9 Delta E4 E6 a2^2 b1^2 + 135 E6 b1^6 - 96 Delta^2 E4^2 a2 b4 \
            + 72 Delta^2 E4^2 a3 b3 - 144 Delta^2 E4^2 a4 b2 + 12 Delta^2 E4 E6 a2 a4 \
            - 3 Delta^2 E4 E6 a3^2 - 144 Delta^2 E4 a2^2 b2 + 288 Delta^2 E4 a2 a3 b1 \
            + 12 Delta^2 E6 a2^3 + 12 Delta E6^2 b1^2 b4 - 216 Delta E6 b1^3 b3 \
            + 7776 Delta b1^4 b2 - 2592 Delta^2 E6 b1 b5 + 1152 Delta^2 E6 b2 b4 \
            - 432 Delta^2 E6 b3^2 + 10368 Delta^2 b1^2 b4 - 124416 Delta^3 b6)",
    ),
];

/// `P_{16,5}/E4` over `ab`.
pub(crate) const P165_OVER_E4: &str = "1/9216 (24 Delta E4^2 E6 a2 b1 b2 \
    - 18 Delta E4^2 E6 a3 b1^2 + 20736 Delta E4^2 a2 b1^3 + 5 Delta E4 E6^2 a2^2 b1 \
    - 28440 E6^2 b1^5 - 336 Delta^2 E4 E6 a2 a3 + 4824 Delta E6^2 b1^2 b3 \
    - 1008 Delta E6^2 b1 b2^2 - 991872 Delta E6 b1^3 b2 - 13436928 Delta b1^5 \
    - 384 Delta^2 E6^2 b5 + 27648 Delta^2 E6 b1 b4 + 76032 Delta^2 E6 b2 b3 \
    - 12690432 Delta^2 b1 b2^2)";

fn lower_table() -> &'static [Frac; NGEN] {
    static T: OnceLock<[Frac; NGEN]> = OnceLock::new();
    T.get_or_init(|| {
        std::array::from_fn(|i| {
            let sym = LOWER_AB.symbol(i);
            if sym == "E4" || sym == "E6" {
                let p = Poly::generator(&AB, AB.position(sym).unwrap());
                return Frac::from_poly(p).unwrap();
            }
            let d = LOWER_DEFS.iter().find(|d| d.symbol == sym).unwrap();
            let scale: Rational = parse_rational(d.scale).unwrap();
            let num = parse_poly(&AB, d.numerator)
                .unwrap_or_else(|e| panic!("definition of {sym}: {e}"))
                .scale(&scale);
            Frac::new(num, d.e4_pow, d.delta_pow).unwrap()
        })
    })
}

fn upper_table() -> &'static [Poly; NGEN] {
    static T: OnceLock<[Poly; NGEN]> = OnceLock::new();
    T.get_or_init(|| {
        std::array::from_fn(|i| {
            let sym = AB.symbol(i);
            if sym == "E4" || sym == "E6" {
                return Poly::generator(&LOWER_AB, LOWER_AB.position(sym).unwrap());
            }
            let (_, text) = UPPER_DEFS.iter().find(|(s, _)| *s == sym).unwrap();
            parse_poly(&LOWER_AB, text).unwrap_or_else(|e| panic!("definition of {sym}: {e}"))
        })
    })
}

/// Generator `i` of `ab` as a normalized fraction over `AB`.
pub fn lower_in_upper(i: usize) -> &'static Frac {
    &lower_table()[i]
}

/// Generator `i` of `AB` as a polynomial over `ab`.
pub fn upper_in_lower(i: usize) -> &'static Poly {
    &upper_table()[i]
}

/// `P_{16,5}/E4` as a polynomial over `ab`.
pub fn p165_over_e4_in_ab() -> &'static Poly {
    static P: OnceLock<Poly> = OnceLock::new();
    P.get_or_init(|| parse_poly(&LOWER_AB, P165_OVER_E4).expect("P_{16,5}/E4 transcription"))
}

/// Text that determines every table above.
pub(crate) fn transcriptions_text() -> String {
    let mut s = String::new();
    for d in &LOWER_DEFS {
        s.push_str(&format!(
            "{}={}*({})/(E4^{} Delta^{});",
            d.symbol, d.scale, d.numerator, d.e4_pow, d.delta_pow
        ));
    }
    for (sym, text) in &UPPER_DEFS {
        s.push_str(&format!("{sym}={text};"));
    }
    s.push_str(P165_OVER_E4);
    s
}
