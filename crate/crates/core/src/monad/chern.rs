//! Chern characters in Q[H]/(H⁴) and Riemann-Roch on P³.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a0 + a1 H + a2 H² + a3 H³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernClass {
    pub a: [BigRational; 4],
}

impl ChernClass {
    pub fn new(a0: BigRational, a1: BigRational, a2: BigRational, a3: BigRational) -> Self {
        ChernClass { a: [a0, a1, a2, a3] }
    }

    pub fn from_ratios(c: [(i64, i64); 4]) -> Self {
        ChernClass { a: c.map(|(n, d)| rat(n, d)) }
    }

    pub fn constant(x: BigRational) -> Self {
        ChernClass::new(x, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        ChernClass::constant(int(n))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        ChernClass { a: self.a.clone().map(|x| x * s) }
    }

    /// Degree-three part, i.e. the integral over P³.
    pub fn integral(&self) -> BigRational {
        self.a[3].clone()
    }
}

impl Add for &ChernClass {
    type Output = ChernClass;
    fn add(self, o: &ChernClass) -> ChernClass {
        ChernClass { a: std::array::from_fn(|k| &self.a[k] + &o.a[k]) }
    }
}

impl Sub for &ChernClass {
    type Output = ChernClass;
    fn sub(self, o: &ChernClass) -> ChernClass {
        ChernClass { a: std::array::from_fn(|k| &self.a[k] - &o.a[k]) }
    }
}

impl Neg for &ChernClass {
    type Output = ChernClass;
    fn neg(self) -> ChernClass {
        ChernClass { a: std::array::from_fn(|k| -&self.a[k]) }
    }
}

impl Mul for &ChernClass {
    type Output = ChernClass;
    fn mul(self, o: &ChernClass) -> ChernClass {
        let mut a: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        for i in 0..4 {
            for j in 0..4 - i {
                a[i + j] += &self.a[i] * &o.a[j];
            }
        }
        ChernClass { a }
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "H", "H^2", "H^3"];
        let mut parts = Vec::new();
        for (k, c) in self.a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c < &BigRational::zero() { "-" } else { "+" };
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => names[k].to_string(),
                _ => format!("{mag}{}", names[k]),
            };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (n, (sign, body)) in parts.iter().enumerate() {
            match (n, *sign) {
                (0, "+") => write!(f, "{body}")?,
                (0, _) => write!(f, "-{body}")?,
                _ => write!(f, " {sign} {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ChernClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `ch(O(k)) = exp(kH)`.
pub fn ch_line(k: i64) -> ChernClass {
    ChernClass::new(int(1), int(k), rat(k * k, 2), rat(k * k * k, 6))
}

/// `td(P³) = (H/(1−e^{−H}))⁴ = 1 + 2H + 11/6 H² + H³`.
pub fn todd_p3() -> ChernClass {
    ChernClass::from_ratios([(1, 1), (2, 1), (11, 6), (1, 1)])
}

/// `χ(O(k)) = (k+1)(k+2)(k+3)/6`.
pub fn chi_line(k: i64) -> BigRational {
    rat((k + 1) * (k + 2) * (k + 3), 6)
}

/// `ch(E) = (2c+r) − c·ch(O(−1)) − c·ch(O(1))`.
pub fn chern_of_monad(r: i64, c: i64) -> ChernClass {
    let mid = ChernClass::int(2 * c + r);
    let cc = int(c);
    &(&mid - &ch_line(-1).scale(&cc)) - &ch_line(1).scale(&cc)
}

pub fn riemann_roch(ch: &ChernClass) -> BigRational {
    (ch * &todd_p3()).integral()
}

/// `χ(E(k))` as `∫ ch(E)·e^{kH}·td`.
pub fn chi_twist(r: i64, c: i64, k: i64) -> BigRational {
    riemann_roch(&(&chern_of_monad(r, c) * &ch_line(k)))
}

/// `χ(E(k))` from additivity along the monad.
pub fn chi_additive(r: i64, c: i64, k: i64) -> BigRational {
    int(2 * c + r) * chi_line(k) - int(c) * chi_line(k - 1) - int(c) * chi_line(k + 1)
}

/// `ch(Ω¹)` from `0 → Ω¹ → O(−1)⁴ → O → 0`.
pub fn ch_omega1_euler() -> ChernClass {
    &ch_line(-1).scale(&int(4)) - &ChernClass::int(1)
}

/// The stated closed form `3 − 4H + 2H² + (2/3)H³`.
pub fn ch_omega1_asserted() -> ChernClass {
    ChernClass::from_ratios([(3, 1), (-4, 1), (2, 1), (2, 3)])
}

/// A computed value next to the value it is checked against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check<T> {
    pub computed: T,
    pub expected: T,
    pub holds: bool,
}

impl<T: PartialEq> Check<T> {
    fn new(computed: T, expected: T) -> Self {
        let holds = computed == expected;
        Check { computed, expected, holds }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChernSuiteReport {
    pub r: i64,
    pub c: i64,
    pub ch_e: ChernClass,
    /// `χ(E(−1)) = −c` by Riemann-Roch.
    #[serde(serialize_with = "ser_check_rat")]
    pub chi_e_minus1: Check<BigRational>,
    /// Same from additivity along the monad.
    #[serde(serialize_with = "ser_check_rat")]
    pub chi_e_minus1_additive: Check<BigRational>,
    /// Euler-sequence `ch(Ω¹)` against the stated closed form.
    pub ch_omega1: Check<ChernClass>,
    /// `χ(E⊗Ω¹) = −c − 2r` by Riemann-Roch with the Euler-sequence `ch(Ω¹)`.
    #[serde(serialize_with = "ser_check_rat")]
    pub chi_e_omega1: Check<BigRational>,
    /// Same from `0 → E⊗Ω¹ → E(−1)⁴ → E → 0`.
    #[serde(serialize_with = "ser_check_rat")]
    pub chi_e_omega1_additive: Check<BigRational>,
    /// `χ(E⊗Ω²(1)) = −c` from `ch = 4ch(E(−2)) − ch(E(−3))`.
    #[serde(serialize_with = "ser_check_rat")]
    pub chi_e_omega2_1: Check<BigRational>,
    #[serde(serialize_with = "ser_check_rat")]
    pub chi_e_omega2_1_additive: Check<BigRational>,
    /// `ch` of the ideal sheaf of 2c lines against `1 − 2cH² + 2cH³`.
    pub ideal_sheaf_ch: Check<ChernClass>,
    /// The ideal sheaf differs from `1 − cH²` (the rank-one obstruction).
    pub rank_one_obstructed: bool,
    /// H³ coefficient of `ch(ideal) − (1 − cH²)`.
    #[serde(serialize_with = "ser_rat")]
    pub obstruction_margin: BigRational,
}

fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_check_rat<S: Serializer>(x: &Check<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Check", 3)?;
    st.serialize_field("computed", &x.computed.to_string())?;
    st.serialize_field("expected", &x.expected.to_string())?;
    st.serialize_field("holds", &x.holds)?;
    st.end()
}

impl ChernSuiteReport {
    /// Every Euler characteristic and closed form agrees.
    pub fn all_hold(&self) -> bool {
        self.chi_e_minus1.holds
            && self.chi_e_minus1_additive.holds
            && self.ch_omega1.holds
            && self.chi_e_omega1.holds
            && self.chi_e_omega1_additive.holds
            && self.chi_e_omega2_1.holds
            && self.chi_e_omega2_1_additive.holds
            && self.ideal_sheaf_ch.holds
            && (self.c == 0 || self.rank_one_obstructed)
    }
}

pub fn chern_suite(r: i64, c: i64) -> ChernSuiteReport {
    let ch_e = chern_of_monad(r, c);
    let twist = |k: i64| &ch_e * &ch_line(k);
    let omega1 = ch_omega1_euler();
    let ch_e_omega1 = &ch_e * &omega1;
    let ch_e_omega2_1 = &twist(-2).scale(&int(4)) - &twist(-3);
    let neg_c = int(-c);
    let line = ChernClass::from_ratios([(0, 1), (0, 1), (1, 1), (-1, 1)]);
    let ideal = &ChernClass::int(1) - &line.scale(&int(2 * c));
    let target = ChernClass::from_ratios([(1, 1), (0, 1), (-2 * c, 1), (2 * c, 1)]);
    let rank_one = ChernClass::from_ratios([(1, 1), (0, 1), (-c, 1), (0, 1)]);
    ChernSuiteReport {
        r,
        c,
        chi_e_minus1: Check::new(chi_twist(r, c, -1), neg_c.clone()),
        chi_e_minus1_additive: Check::new(chi_additive(r, c, -1), neg_c.clone()),
        ch_omega1: Check::new(omega1, ch_omega1_asserted()),
        chi_e_omega1: Check::new(riemann_roch(&ch_e_omega1), int(-c - 2 * r)),
        chi_e_omega1_additive: Check::new(int(4) * chi_additive(r, c, -1) - chi_additive(r, c, 0), int(-c - 2 * r)),
        chi_e_omega2_1: Check::new(riemann_roch(&ch_e_omega2_1), neg_c.clone()),
        chi_e_omega2_1_additive: Check::new(int(4) * chi_additive(r, c, -2) - chi_additive(r, c, -3), neg_c),
        obstruction_margin: &ideal.a[3] - &rank_one.a[3],
        rank_one_obstructed: ideal != rank_one,
        ideal_sheaf_ch: Check::new(ideal, target),
        ch_e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instanton_character() {
        assert_eq!(chern_of_monad(2, 1), ChernClass::from_ratios([(2, 1), (0, 1), (-1, 1), (0, 1)]));
        assert_eq!(chern_of_monad(2, 1).to_string(), "2 - H^2");
    }

    #[test]
    fn line_bundles() {
        for k in -5..=5 {
            assert_eq!(riemann_roch(&ch_line(k)), chi_line(k));
        }
        assert_eq!(chi_line(0), int(1));
        assert_eq!(chi_line(1), int(4));
        assert_eq!(chi_line(-4), int(-1));
    }

    #[test]
    fn twist_examples() {
        for r in 0..=4 {
            assert_eq!(chi_twist(r, 0, 0), int(r));
            for c in 0..=4 {
                assert_eq!(chi_twist(r, c, -1), int(-c));
            }
        }
    }

    #[test]
    fn omega1_from_euler_sequence() {
        let o = ch_omega1_euler();
        assert_eq!(o, ChernClass::from_ratios([(3, 1), (-4, 1), (2, 1), (-2, 3)]));
        assert_eq!(riemann_roch(&o), int(-1));
        assert_ne!(o, ch_omega1_asserted());
    }

    #[test]
    fn omega2_twist_and_obstruction() {
        let rep = chern_suite(2, 1);
        assert_eq!(rep.chi_e_minus1.computed, int(-1));
        assert_eq!(rep.chi_e_omega2_1.computed, int(-1));
        assert!(rep.chi_e_omega2_1.holds && rep.chi_e_omega2_1_additive.holds);
        assert_eq!(rep.chi_e_omega1.computed, rep.chi_e_omega1_additive.computed);
        let rep = chern_suite(1, 1);
        assert!(rep.ideal_sheaf_ch.holds);
        assert!(rep.rank_one_obstructed);
        assert_eq!(rep.obstruction_margin, int(2));
    }

    #[test]
    fn display() {
        assert_eq!(ch_omega1_asserted().to_string(), "3 - 4H + 2H^2 + 2/3H^3");
        assert_eq!(ChernClass::int(0).to_string(), "0");
    }
}
