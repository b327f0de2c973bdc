//! Laurent polynomials in the formal parameter q over Q(i), plus the
//! quantum integers built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactcore::gauss::forward_owned;
use crate::exactcore::{ExactError, GaussRational, UPoly};

/// Finite sum `Σ c_k q^k`, k ∈ Z; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    terms: BTreeMap<i32, GaussRational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussRational) -> Self {
        QLaurent::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        QLaurent::constant(GaussRational::from_int(n))
    }

    pub fn monomial(c: GaussRational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QLaurent { terms }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        QLaurent::monomial(GaussRational::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, GaussRational)>>(it: I) -> Self {
        let mut out = QLaurent::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<i32, GaussRational> {
        &self.terms
    }

    pub fn coeff(&self, e: i32) -> GaussRational {
        self.terms.get(&e).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn add_term(&mut self, e: i32, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(GaussRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `(c, e)` when the value is the single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(GaussRational, i32)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<GaussRational> {
        if self.is_zero() {
            return Some(GaussRational::zero());
        }
        match self.as_monomial() {
            Some((c, 0)) => Some(c),
            _ => None,
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussRational) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> QLaurent {
        let mut acc = QLaurent::from_int(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The substitution `q ↦ q^k` (k may be negative).
    pub fn subst_q_pow(&self, k: i32) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// Value at `q = x`; `x` must be nonzero if negative exponents occur.
    pub fn eval(&self, x: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for (e, c) in &self.terms {
            acc += &(c * &x.pow(*e));
        }
        acc
    }

    /// The classical limit q = 1.
    pub fn at_one(&self) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Ordinary polynomial `q^{-min} * self`, together with `min`.
    pub fn to_upoly(&self) -> (UPoly, i32) {
        let Some(lo) = self.min_exp() else { return (UPoly::zero(), 0) };
        let hi = self.max_exp().unwrap();
        let mut v = vec![GaussRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (UPoly::new(v), lo)
    }

    /// `q^shift * p(q)`.
    pub fn from_upoly(p: &UPoly, shift: i32) -> QLaurent {
        QLaurent::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (k as i32 + shift, c.clone())))
    }

    /// Human-readable form such as `q^2 - 1 + q^-2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_real() && c.re < num_rational::BigRational::zero() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            let coef =
                if mag.is_real() && mag.re.is_integer() { mag.re.numer().to_string() } else { format!("({mag})") };
            let body = match (*e, coef == "1") {
                (0, _) => coef,
                (1, true) => "q".to_string(),
                (1, false) => format!("{coef}*q"),
                (e, true) => format!("q^{e}"),
                (e, false) => format!("{coef}*q^{e}"),
            };
            if k == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, GaussRational> = BTreeMap::deserialize(d)?;
        let mut out = QLaurent::zero();
        for (k, c) in raw {
            let e: i32 = k.parse().map_err(serde::de::Error::custom)?;
            out.add_term(e, &c);
        }
        Ok(out)
    }
}

impl Zero for QLaurent {
    fn zero() -> Self {
        QLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for QLaurent {
    fn one() -> Self {
        QLaurent::from_int(1)
    }
}

impl<'a> Add<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn add(self, o: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn sub(self, o: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn mul(self, o: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

forward_owned!(QLaurent, Add add, Sub sub, Mul mul);

/// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn qint(n: i64) -> QLaurent {
    let m = n.unsigned_abs() as i32;
    let s = QLaurent::from_terms((0..m).map(|k| (m - 1 - 2 * k, GaussRational::one())));
    if n < 0 {
        -s
    } else {
        s
    }
}

/// Brace integer `{n} = (q^{2n} - 1)/(q^2 - 1)`.
pub fn qbrace(n: i64) -> QLaurent {
    if n >= 0 {
        QLaurent::from_terms((0..n as i32).map(|k| (2 * k, GaussRational::one())))
    } else {
        // {-n} = -q^{-2n} {n}
        -(qbrace(-n).shift(2 * n as i32))
    }
}

/// `{n}! = {1}{2}...{n}`.
pub fn qfact(n: i64) -> Result<QLaurent, ExactError> {
    if n < 0 {
        return Err(ExactError::Domain(format!("qfact of negative argument {n}")));
    }
    let mut acc = QLaurent::from_int(1);
    for k in 1..=n {
        acc = &acc * &qbrace(k);
    }
    Ok(acc)
}

/// q-binomial `{n}!/({r}!{n-r}!)`, computed by the q^2-Pascal rule.
pub fn qbinom(n: i64, r: i64) -> Result<QLaurent, ExactError> {
    if n < 0 || r < 0 || r > n {
        return Err(ExactError::Domain(format!("qbinom({n},{r}) out of range")));
    }
    let n = n as usize;
    let mut row = vec![QLaurent::from_int(1)];
    for m in 1..=n {
        let mut next = vec![QLaurent::from_int(1); m + 1];
        for k in 1..m {
            next[k] = &row[k - 1] + &row[k].shift(2 * k as i32);
        }
        row = next;
    }
    Ok(row[r as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> QLaurent {
        QLaurent::q_pow(e)
    }

    #[test]
    fn quantum_integers_at_boundary() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), QLaurent::from_int(1));
        assert_eq!(qint(2), &q(1) + &q(-1));
        assert_eq!(qint(-3), -qint(3));
        assert_eq!(qbrace(2), &q(2) + &QLaurent::from_int(1));
        assert!(qbrace(0).is_zero());
    }

    #[test]
    fn brace_is_shifted_bracket() {
        for n in 1..=12 {
            assert_eq!(qbrace(n), qint(n).shift(n as i32 - 1));
        }
    }

    #[test]
    fn quantum_integer_defining_identity() {
        let denom = &q(1) - &q(-1);
        for n in -6..=6 {
            assert_eq!(&qint(n) * &denom, &q(n as i32) - &q(-n as i32));
        }
    }

    #[test]
    fn qbinom_matches_factorials() {
        for n in 0..=7 {
            for r in 0..=n {
                let lhs = &qbinom(n, r).unwrap() * &(&qfact(r).unwrap() * &qfact(n - r).unwrap());
                assert_eq!(lhs, qfact(n).unwrap());
            }
        }
        assert!(qbinom(3, 4).is_err());
        assert!(qfact(-1).is_err());
    }

    #[test]
    fn serialization_shape() {
        let v = serde_json::to_string(&qint(2)).unwrap();
        assert_eq!(v, r#"{"-1":"1/1","1":"1/1"}"#);
        let back: QLaurent = serde_json::from_str(&v).unwrap();
        assert_eq!(back, qint(2));
    }

    #[test]
    fn upoly_round_trip() {
        let a = QLaurent::from_terms([(-2, GaussRational::from_int(3)), (1, GaussRational::i())]);
        let (p, s) = a.to_upoly();
        assert_eq!(s, -2);
        assert_eq!(QLaurent::from_upoly(&p, s), a);
    }
}
