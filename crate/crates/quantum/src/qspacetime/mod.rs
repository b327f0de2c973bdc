//! Quantum Minkowski algebras: the chart algebras M^I, M^J, their common
//! localization M^IJ, and ordered normal forms.
//!
//! Generators are indexed 0..4 as 11, 12, 21, 22. A monomial exponent
//! `[n11, n12, n21, n22]` stands for the ordered product
//! `x11^n11 x12^n12 x21^n21 x22^n22` (chart J: the same with y).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use qadhm_core::{GaussRational, QLaurent, QRing};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

mod harmonic;
mod slices;

pub use harmonic::{
    b9_sum, basis_element, harmonic, harmonic_y, harmonics_of_degree, oast_check, proportionality, HarmonicIndex,
    IndexError, OastError, OastReport,
};
pub use slices::{
    basis_independence, det_mult_rank, monomials_of_degree, monomials_up_to, slice_matrix, BasisReport, DetMultReport,
    Generic,
};

pub type Exp = [u32; 4];

pub const GEN_NAMES: [&str; 4] = ["11", "12", "21", "22"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chart {
    I,
    J,
    IJ,
}

impl Chart {
    fn letter(self) -> &'static str {
        match self {
            Chart::J => "y",
            _ => "x",
        }
    }
}

/// Element of a chart algebra in ordered normal form. Keys are `(k, e)`
/// with `k` the power of a left factor `det(x)^k` (always 0 outside IJ).
#[derive(Clone, PartialEq)]
pub struct NcPoly<C> {
    chart: Chart,
    terms: BTreeMap<(i32, Exp), C>,
}

fn add_into<C: QRing>(map: &mut BTreeMap<(i32, Exp), C>, key: (i32, Exp), c: C) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            let s = v.clone() + c;
            if s.is_zero() {
                map.remove(&key);
            } else {
                *v = s;
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

fn qp<C: QRing>(e: i64) -> C {
    C::q_pow(e as i32)
}

/// Left multiplication of an ordered chart-I monomial by one generator.
fn left_gen_i<C: QRing>(g: usize, m: Exp, c: &C, out: &mut BTreeMap<(i32, Exp), C>) {
    let [a, b, cc, d] = m;
    match g {
        0 => add_into(out, (0, [a + 1, b, cc, d]), c.clone()),
        1 => add_into(out, (0, [a, b + 1, cc, d]), c.clone()),
        2 => add_into(out, (0, [a, b, cc + 1, d]), c.clone() * qp::<C>(2 * (a + b) as i64)),
        3 => {
            add_into(out, (0, [a, b, cc, d + 1]), c.clone() * qp::<C>(2 * b as i64));
            if a > 0 {
                let k = (qp::<C>(2 * a as i64) - C::one()) * qp::<C>(2 * b as i64);
                add_into(out, (0, [a - 1, b + 1, cc + 1, d]), c.clone() * k);
            }
        }
        _ => unreachable!("generator index out of range"),
    }
}

fn mul_monomials_i<C: QRing>(m1: Exp, m2: Exp, c: C) -> BTreeMap<(i32, Exp), C> {
    let mut cur = BTreeMap::new();
    add_into(&mut cur, (0, m2), c);
    for g in (0..4).rev() {
        for _ in 0..m1[g] {
            let mut next = BTreeMap::new();
            for ((_, m), v) in &cur {
                left_gen_i(g, *m, v, &mut next);
            }
            cur = next;
        }
    }
    cur
}

/// The isomorphism M^J -> M^I, x11<->y11, x12<->y21, x21<->y12, x22<->y22,
/// on ordered monomials.
fn j_to_i<C: QRing>(m: Exp) -> (Exp, C) {
    let [a, b, c, d] = m;
    ([a, c, b, d], qp::<C>(2 * (b * c) as i64))
}

fn i_to_j<C: QRing>(m: Exp) -> (Exp, C) {
    let [a, b, c, d] = m;
    ([a, c, b, d], qp::<C>(-2 * (b * c) as i64))
}

/// `m det = det tau(m)` with `tau(m) = q^{2(n21 - n12)} m`.
fn tau_exp(m: &Exp, k: i32) -> i64 {
    2 * k as i64 * (m[2] as i64 - m[1] as i64)
}

pub fn total_degree(e: &Exp) -> u32 {
    e.iter().sum()
}

impl<C: QRing> NcPoly<C> {
    pub fn zero(chart: Chart) -> Self {
        NcPoly { chart, terms: BTreeMap::new() }
    }

    pub fn one(chart: Chart) -> Self {
        Self::constant(chart, C::one())
    }

    pub fn constant(chart: Chart, c: C) -> Self {
        Self::monomial(chart, 0, [0; 4], c)
    }

    pub fn monomial(chart: Chart, k: i32, e: Exp, c: C) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, (k, e), c);
        let p = NcPoly { chart, terms };
        if chart == Chart::IJ {
            p.canonical()
        } else {
            assert!(k == 0, "det powers only exist in chart IJ");
            p
        }
    }

    /// Generator `g` (0..4 for 11, 12, 21, 22).
    pub fn gen(chart: Chart, g: usize) -> Self {
        let mut e = [0; 4];
        e[g] = 1;
        Self::monomial(chart, 0, e, C::one())
    }

    /// Product of generators in the given order, times `c`.
    pub fn word(chart: Chart, word: &[usize], c: C) -> Self {
        let mut acc = Self::constant(chart, c);
        for &g in word {
            acc = acc.mul(&Self::gen(chart, g));
        }
        acc
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, Exp), C)>>(chart: Chart, it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in it {
            add_into(&mut terms, k, c);
        }
        let p = NcPoly { chart, terms };
        if chart == Chart::IJ {
            p.canonical()
        } else {
            p
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> &BTreeMap<(i32, Exp), C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> C {
        self.terms.get(&(self.det_power(), *e)).cloned().unwrap_or_else(C::zero)
    }

    /// Power of the left det factor (0 outside IJ and for zero).
    pub fn det_power(&self) -> i32 {
        self.terms.keys().next().map(|k| k.0).unwrap_or(0)
    }

    /// Total degree counting det as 2; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|(k, e)| 2 * *k as i64 + total_degree(e) as i64).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|(k, e)| 2 * *k as i64 + total_degree(e) as i64).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        NcPoly {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .filter(|((k, e), _)| 2 * *k as i64 + total_degree(e) as i64 == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Part of total degree at most `d`.
    pub fn truncate(&self, d: i64) -> Self {
        NcPoly {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .filter(|((k, e), _)| 2 * *k as i64 + total_degree(e) as i64 <= d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.chart, self.terms.iter().map(|(k, c)| (*k, c.clone() * s.clone())))
    }

    pub fn map_coeffs<D: QRing>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        NcPoly::from_terms(self.chart, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.chart, o.chart, "chart mismatch");
        if self.chart == Chart::IJ {
            return self.ij_combine(o, C::one());
        }
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            add_into(&mut terms, *k, c.clone());
        }
        NcPoly { chart: self.chart, terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        NcPoly { chart: self.chart, terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.chart, o.chart, "chart mismatch");
        match self.chart {
            Chart::I => {
                let mut out = BTreeMap::new();
                for ((_, m1), c1) in &self.terms {
                    for ((_, m2), c2) in &o.terms {
                        for (k, v) in mul_monomials_i(*m1, *m2, c1.clone() * c2.clone()) {
                            add_into(&mut out, k, v);
                        }
                    }
                }
                NcPoly { chart: Chart::I, terms: out }
            }
            Chart::J => self.j_as_i().mul(&o.j_as_i()).i_as_j(),
            Chart::IJ => {
                let mut out = BTreeMap::new();
                for ((k1, m1), c1) in &self.terms {
                    for ((k2, m2), c2) in &o.terms {
                        let c = c1.clone() * c2.clone() * qp::<C>(tau_exp(m1, *k2));
                        for ((_, m), v) in mul_monomials_i(*m1, *m2, c) {
                            add_into(&mut out, (k1 + k2, m), v);
                        }
                    }
                }
                NcPoly { chart: Chart::IJ, terms: out }.canonical()
            }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.chart);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Read a chart-J element through the isomorphism into chart I.
    fn j_as_i(&self) -> Self {
        NcPoly::from_terms(
            Chart::I,
            self.terms.iter().map(|((_, m), c)| {
                let (e, f) = j_to_i::<C>(*m);
                ((0, e), c.clone() * f)
            }),
        )
    }

    fn i_as_j(&self) -> Self {
        NcPoly::from_terms(
            Chart::J,
            self.terms.iter().map(|((_, m), c)| {
                let (e, f) = i_to_j::<C>(*m);
                ((0, e), c.clone() * f)
            }),
        )
    }

    /// Chart-I element viewed in IJ.
    pub fn to_ij(&self) -> Self {
        assert_eq!(self.chart, Chart::I, "only chart I embeds as det^0");
        NcPoly { chart: Chart::IJ, terms: self.terms.clone() }.canonical()
    }

    /// Chart-J element mapped to IJ by `y_kl = det(x)^-1 x_kl`.
    pub fn j_to_ij(&self) -> Self {
        assert_eq!(self.chart, Chart::J, "expected a chart-J element");
        let y: Vec<NcPoly<C>> = (0..4).map(|g| NcPoly::monomial(Chart::IJ, -1, unit_exp(g), C::one())).collect();
        let mut acc = NcPoly::zero(Chart::IJ);
        for ((_, m), c) in &self.terms {
            let mut t = NcPoly::constant(Chart::IJ, c.clone());
            for g in 0..4 {
                for _ in 0..m[g] {
                    t = t.mul(&y[g]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// The body of an IJ element as a chart-I element (drops the det power).
    pub fn ij_body(&self) -> Self {
        NcPoly { chart: Chart::I, terms: self.terms.iter().map(|((_, e), c)| ((0, *e), c.clone())).collect() }
    }

    fn ij_combine(&self, o: &Self, sign: C) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            add_into(&mut terms, *k, c.clone() * sign.clone());
        }
        NcPoly { chart: Chart::IJ, terms }.canonical()
    }

    /// Unique representation `det^k h` with `h` not left-divisible by det.
    fn canonical(self) -> Self {
        if self.terms.is_empty() {
            return self;
        }
        let k0 = self.terms.keys().map(|k| k.0).min().unwrap();
        let det = det_x_generic::<C>();
        let mut body = NcPoly::<C>::zero(Chart::I);
        for ((k, e), c) in &self.terms {
            let t = NcPoly::monomial(Chart::I, 0, *e, c.clone());
            body = body.add(&det.pow((*k - k0) as u32).mul(&t));
        }
        let mut k = k0;
        while let Some(h) = left_divide_by_det(&body) {
            body = h;
            k += 1;
        }
        NcPoly { chart: Chart::IJ, terms: body.terms.into_iter().map(|((_, e), c)| ((k, e), c)).collect() }
    }

    /// `q -> 1` image as a plain coefficient map through `f`.
    pub fn lex_terms(&self) -> Vec<(i32, Exp, C)> {
        self.terms.iter().map(|((k, e), c)| (*k, *e, c.clone())).collect()
    }
}

pub fn unit_exp(g: usize) -> Exp {
    let mut e = [0; 4];
    e[g] = 1;
    e
}

fn det_x_generic<C: QRing>() -> NcPoly<C> {
    NcPoly::from_terms(Chart::I, [((0, [1, 0, 0, 1]), C::one()), ((0, [0, 1, 1, 0]), -C::one())])
}

/// Exact left division by det in chart I, if possible. The leading
/// lexicographic term of `det * m` is `(a+1, b, c, d+1)` with coefficient
/// `q^{2b}`.
fn left_divide_by_det<C: QRing>(f: &NcPoly<C>) -> Option<NcPoly<C>> {
    if f.is_zero() {
        return None;
    }
    let det = det_x_generic::<C>();
    let mut rem = f.clone();
    let mut quo = NcPoly::zero(Chart::I);
    while let Some(((_, e), c)) = rem.terms.iter().next_back().map(|(k, c)| (*k, c.clone())) {
        if e[0] == 0 || e[3] == 0 {
            return None;
        }
        let m = [e[0] - 1, e[1], e[2], e[3] - 1];
        let t = NcPoly::monomial(Chart::I, 0, m, c * qp::<C>(-2 * e[1] as i64));
        rem = rem.sub(&det.mul(&t));
        quo = quo.add(&t);
    }
    Some(quo)
}

/// `det(x) = x11 x22 - x12 x21`.
pub fn det_x<C: QRing>() -> NcPoly<C> {
    det_x_generic()
}

/// `det(y) = y11 y22 - y21 y12`, in chart-J normal order.
pub fn det_y<C: QRing>() -> NcPoly<C> {
    let y = |g| NcPoly::<C>::gen(Chart::J, g);
    y(0).mul(&y(3)).sub(&y(2).mul(&y(1)))
}

/// Product `det(x)^k` in chart IJ (any sign of k).
pub fn det_power_ij<C: QRing>(k: i32) -> NcPoly<C> {
    NcPoly::monomial(Chart::IJ, k, [0; 4], C::one())
}

/// Each generator against det: expected factor with `det * x = f * x * det`.
#[derive(Clone, Debug, Serialize)]
pub struct DetCommutation {
    pub generator: String,
    pub factor: QLaurent,
    pub holds: bool,
}

/// The q-commutation of det with each generator: x11, x22 commute,
/// `det x12 = q^2 x12 det`, `det x21 = q^-2 x21 det`.
pub fn det_commutators() -> Vec<DetCommutation> {
    let det = det_x::<QLaurent>();
    let factors = [0, 2, -2, 0];
    (0..4)
        .map(|g| {
            let x = NcPoly::<QLaurent>::gen(Chart::I, g);
            let f = QLaurent::q_pow(factors[g]);
            let lhs = det.mul(&x);
            let rhs = x.mul(&det).scale(&f);
            DetCommutation { generator: format!("x{}", GEN_NAMES[g]), factor: f, holds: lhs == rhs }
        })
        .collect()
}

/// Inverse of an IJ element of the form `u det^k` with `u` a unit scalar.
pub fn invert_det_monomial(f: &NcPoly<QLaurent>) -> Option<NcPoly<QLaurent>> {
    if f.chart != Chart::IJ || f.terms.len() != 1 {
        return None;
    }
    let ((k, e), c) = f.terms.iter().next()?;
    if *e != [0; 4] {
        return None;
    }
    let (g, s) = c.as_monomial()?;
    Some(NcPoly::monomial(Chart::IJ, -k, [0; 4], QLaurent::monomial(g.inv(), -s)))
}

/// Specialize q to 1 in the coefficients.
pub fn at_q_one(f: &NcPoly<QLaurent>) -> BTreeMap<(i32, Exp), GaussRational> {
    f.terms
        .iter()
        .filter_map(|(k, c)| {
            let v = c.at_one();
            (!v.is_zero()).then_some((*k, v))
        })
        .collect()
}

impl<C: QRing> Add for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn add(self, o: &NcPoly<C>) -> NcPoly<C> {
        NcPoly::add(self, o)
    }
}

impl<C: QRing> Sub for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn sub(self, o: &NcPoly<C>) -> NcPoly<C> {
        NcPoly::sub(self, o)
    }
}

impl<C: QRing> Mul for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn mul(self, o: &NcPoly<C>) -> NcPoly<C> {
        NcPoly::mul(self, o)
    }
}

impl<C: QRing> Neg for &NcPoly<C> {
    type Output = NcPoly<C>;
    fn neg(self) -> NcPoly<C> {
        NcPoly::neg(self)
    }
}

pub trait CoeffDisplay {
    fn show(&self) -> String;
}

impl CoeffDisplay for QLaurent {
    fn show(&self) -> String {
        self.pretty()
    }
}

impl CoeffDisplay for qadhm_core::QRat {
    fn show(&self) -> String {
        self.pretty()
    }
}

impl<C: QRing + CoeffDisplay> fmt::Display for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.chart.letter();
        let mut first = true;
        for ((k, e), c) in &self.terms {
            let mut factors = Vec::new();
            if *k != 0 {
                factors.push(format!("det^{k}"));
            }
            for g in 0..4 {
                match e[g] {
                    0 => {}
                    1 => factors.push(format!("{letter}{}", GEN_NAMES[g])),
                    n => factors.push(format!("{letter}{}^{n}", GEN_NAMES[g])),
                }
            }
            let cs = c.show();
            let body = factors.join("*");
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let coef = if mag.contains(['+', '-', ' ']) { format!("({mag})") } else { mag };
            let term = match (coef.as_str(), body.is_empty()) {
                (_, true) => coef.clone(),
                ("1", false) => body,
                _ => format!("{coef}*{body}"),
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, term)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, term)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<C: QRing + CoeffDisplay> fmt::Debug for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.chart, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson<C> {
    k: i32,
    e: Exp,
    coef: C,
}

#[derive(Serialize, Deserialize)]
struct PolyJson<C> {
    chart: Chart,
    terms: Vec<TermJson<C>>,
}

impl<C: QRing + Serialize> Serialize for NcPoly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            chart: self.chart,
            terms: self.terms.iter().map(|((k, e), c)| TermJson { k: *k, e: *e, coef: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: QRing + DeserializeOwned> Deserialize<'de> for NcPoly<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = PolyJson::<C>::deserialize(d)?;
        if p.chart != Chart::IJ && p.terms.iter().any(|t| t.k != 0) {
            return Err(serde::de::Error::custom("det powers are only allowed in chart IJ"));
        }
        Ok(NcPoly::from_terms(p.chart, p.terms.into_iter().map(|t| ((t.k, t.e), t.coef))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = NcPoly<QLaurent>;

    fn x(g: usize) -> P {
        P::gen(Chart::I, g)
    }

    fn y(g: usize) -> P {
        P::gen(Chart::J, g)
    }

    fn q(e: i32) -> QLaurent {
        QLaurent::q_pow(e)
    }

    fn mono(e: Exp, c: QLaurent) -> P {
        P::monomial(Chart::I, 0, e, c)
    }

    #[test]
    fn sorting_rules() {
        assert_eq!(x(2).mul(&x(0)), mono([1, 0, 1, 0], q(2)));
        let expect = mono([1, 0, 0, 1], q(0)).add(&mono([0, 1, 1, 0], &q(2) - &q(0)));
        assert_eq!(x(3).mul(&x(0)), expect);
        assert_eq!(x(0).mul(&x(1)), mono([1, 1, 0, 0], q(0)));
        assert_eq!(x(1).mul(&x(0)), mono([1, 1, 0, 0], q(0)));
        assert_eq!(x(2).mul(&x(1)), mono([0, 1, 1, 0], q(2)));
        assert_eq!(x(3).mul(&x(1)), mono([0, 1, 0, 1], q(2)));
        assert_eq!(x(3).mul(&x(2)), mono([0, 0, 1, 1], q(0)));
    }

    #[test]
    fn relations_hold() {
        // [x11, x22] + [x21, x12] = 0
        let r = x(0).commutator(&x(3)).add(&x(2).commutator(&x(1)));
        assert!(r.is_zero());
        // x11 x21 = q^-2 x21 x11
        assert_eq!(x(0).mul(&x(2)), x(2).mul(&x(0)).scale(&q(-2)));
    }

    #[test]
    fn det_forms_agree() {
        let alt = x(3).mul(&x(0)).sub(&x(2).mul(&x(1)));
        assert_eq!(alt, det_x());
        assert!(det_commutators().iter().all(|r| r.holds));
    }

    #[test]
    fn chart_j_rules() {
        assert_eq!(y(3).mul(&y(2)), P::monomial(Chart::J, 0, [0, 0, 1, 1], q(2)));
        assert_eq!(y(1).mul(&y(0)), P::monomial(Chart::J, 0, [1, 1, 0, 0], q(2)));
        assert_eq!(y(2).mul(&y(0)), P::monomial(Chart::J, 0, [1, 0, 1, 0], q(0)));
        assert_eq!(y(2).mul(&y(1)), P::monomial(Chart::J, 0, [0, 1, 1, 0], q(-2)));
        assert_eq!(y(3).mul(&y(1)), P::monomial(Chart::J, 0, [0, 1, 0, 1], q(0)));
        let expect =
            P::monomial(Chart::J, 0, [1, 0, 0, 1], q(0)).add(&P::monomial(Chart::J, 0, [0, 1, 1, 0], &q(0) - &q(-2)));
        assert_eq!(y(3).mul(&y(0)), expect);
    }

    #[test]
    fn localization_units() {
        let d = det_x::<QLaurent>().to_ij();
        assert_eq!(d, det_power_ij(1));
        let inv = det_power_ij::<QLaurent>(-1);
        assert_eq!(d.mul(&inv), P::one(Chart::IJ));
        assert_eq!(inv.mul(&d), P::one(Chart::IJ));
        // det^-1 x12 det = q^2 ... check against tau
        let x12 = x(1).to_ij();
        assert_eq!(inv.mul(&x12).mul(&d), x12.scale(&q(-2)));
    }

    #[test]
    fn y_generators_satisfy_chart_j_relations() {
        let yy: Vec<P> = (0..4).map(|g| y(g).j_to_ij()).collect();
        for a in 0..4 {
            for b in 0..4 {
                let lhs = y(a).mul(&y(b)).j_to_ij();
                assert_eq!(lhs, yy[a].mul(&yy[b]), "y{} y{}", GEN_NAMES[a], GEN_NAMES[b]);
            }
        }
    }

    #[test]
    fn det_y_is_inverse_det() {
        let dy = det_y::<QLaurent>().j_to_ij();
        assert_eq!(dy.det_power(), -1);
        assert!(invert_det_monomial(&dy).is_some());
    }

    #[test]
    fn display_and_json() {
        let d = det_x::<QLaurent>();
        assert_eq!(d.to_string(), "-x12*x21 + x11*x22");
        let s = serde_json::to_string(&d).unwrap();
        let back: P = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(s.starts_with(r#"{"chart":"I","terms":[{"k":0,"e":[0,1,1,0]"#));
    }
}
