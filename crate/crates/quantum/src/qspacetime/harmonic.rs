//! Harmonic polynomials X^l_{m,n}, Y^l_{m,n}, the det-power basis and the
//! X/Y proportionality in the localized algebra.
//!
//! Index convention: `m` splits the exponents (`(l-m)` and `(l+m)` powers),
//! `n` selects the residue (`s^(l-n)` coefficient). Half-integers are
//! stored doubled.

use num_traits::One;
use qadhm_core::exactcore::qfact;
use qadhm_core::{Field, QLaurent, QRat, QRing};
use serde::{Deserialize, Serialize};

use super::{det_power_ij, det_x, det_y, invert_det_monomial, Chart, Exp, NcPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HarmonicIndex {
    pub two_l: i64,
    pub two_m: i64,
    pub two_n: i64,
    pub k: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndexError {
    #[error("invalid harmonic index: {0}")]
    Invalid(String),
}

impl HarmonicIndex {
    pub fn new(two_l: i64, two_m: i64, two_n: i64, k: i64) -> Self {
        HarmonicIndex { two_l, two_m, two_n, k }
    }

    /// Parity and sign conditions; `|m|, |n| <= l` is a separate question.
    pub fn check(&self) -> Result<(), IndexError> {
        if self.two_l < 0 {
            return Err(IndexError::Invalid(format!("2l = {} is negative", self.two_l)));
        }
        if (self.two_m - self.two_l).rem_euclid(2) != 0 || (self.two_n - self.two_l).rem_euclid(2) != 0 {
            return Err(IndexError::Invalid(format!(
                "m, n must be congruent to l mod 1 (2l={}, 2m={}, 2n={})",
                self.two_l, self.two_m, self.two_n
            )));
        }
        Ok(())
    }

    pub fn in_range(&self) -> bool {
        self.two_m.abs() <= self.two_l && self.two_n.abs() <= self.two_l
    }

    /// `l - m`.
    pub fn l_minus_m(&self) -> i64 {
        (self.two_l - self.two_m) / 2
    }

    pub fn l_plus_m(&self) -> i64 {
        (self.two_l + self.two_m) / 2
    }

    pub fn l_minus_n(&self) -> i64 {
        (self.two_l - self.two_n) / 2
    }

    pub fn l_plus_n(&self) -> i64 {
        (self.two_l + self.two_n) / 2
    }

    /// Total degree `2k + 2l`.
    pub fn degree(&self) -> i64 {
        2 * self.k + self.two_l
    }
}

/// All in-range indices with `2l = two_l` and the given `k`.
pub fn harmonics_of_degree(two_l: i64, k: i64) -> Vec<HarmonicIndex> {
    let mut v = Vec::new();
    for two_m in (-two_l..=two_l).step_by(2) {
        for two_n in (-two_l..=two_l).step_by(2) {
            v.push(HarmonicIndex::new(two_l, two_m, two_n, k));
        }
    }
    v
}

type SPoly<C> = Vec<NcPoly<C>>;

fn spoly_mul<C: QRing>(a: &SPoly<C>, b: &SPoly<C>, chart: Chart) -> SPoly<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![NcPoly::zero(chart); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, r) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&p.mul(r));
        }
    }
    out
}

/// Coefficient of `s^t` in `(g_a s + g_b)^e1 (g_c s + g_d)^e2`.
fn residue<C: QRing>(chart: Chart, lin1: (usize, usize), e1: i64, lin2: (usize, usize), e2: i64, t: i64) -> NcPoly<C> {
    let f1 = vec![NcPoly::gen(chart, lin1.1), NcPoly::gen(chart, lin1.0)];
    let f2 = vec![NcPoly::gen(chart, lin2.1), NcPoly::gen(chart, lin2.0)];
    let mut acc = vec![NcPoly::one(chart)];
    for _ in 0..e1 {
        acc = spoly_mul(&acc, &f1, chart);
    }
    for _ in 0..e2 {
        acc = spoly_mul(&acc, &f2, chart);
    }
    if t < 0 || t as usize >= acc.len() {
        return NcPoly::zero(chart);
    }
    acc[t as usize].clone()
}

/// `X^l_{m,n}`: coefficient of `s^(l-n)` in `(x11 s + x21)^(l-m) (x12 s + x22)^(l+m)`.
/// Out-of-range indices give 0.
pub fn harmonic(idx: &HarmonicIndex) -> Result<NcPoly<QLaurent>, IndexError> {
    idx.check()?;
    if !idx.in_range() {
        return Ok(NcPoly::zero(Chart::I));
    }
    Ok(residue(Chart::I, (0, 2), idx.l_minus_m(), (1, 3), idx.l_plus_m(), idx.l_minus_n()))
}

/// `Y^l_{m,n}`: coefficient of `t^(l-m)` in `(y11 t + y12)^(l-n) (y21 t + y22)^(l+n)`.
pub fn harmonic_y(idx: &HarmonicIndex) -> Result<NcPoly<QLaurent>, IndexError> {
    idx.check()?;
    if !idx.in_range() {
        return Ok(NcPoly::zero(Chart::J));
    }
    Ok(residue(Chart::J, (0, 1), idx.l_minus_n(), (2, 3), idx.l_plus_n(), idx.l_minus_m()))
}

/// `det(x)^k X^l_{m,n}` with det on the left (chart I, `k >= 0`).
pub fn basis_element(idx: &HarmonicIndex) -> Result<NcPoly<QLaurent>, IndexError> {
    if idx.k < 0 {
        return Err(IndexError::Invalid(format!("k = {} is negative in chart I", idx.k)));
    }
    Ok(det_x::<QLaurent>().pow(idx.k as u32).mul(&harmonic(idx)?))
}

/// The divided-power sum
/// `Σ_r x11^r x21^(l-m-r) x12^(l-n-r) x22^(r+m+n) / ({r}!{l-m-r}!{l-n-r}!{r+m+n}!)`.
pub fn b9_sum(idx: &HarmonicIndex) -> Result<NcPoly<QRat>, IndexError> {
    idx.check()?;
    if !idx.in_range() {
        return Ok(NcPoly::zero(Chart::I));
    }
    let (lm, ln) = (idx.l_minus_m(), idx.l_minus_n());
    let mn = (idx.two_m + idx.two_n) / 2;
    let mut acc = NcPoly::<QRat>::zero(Chart::I);
    for r in 0..=lm.min(ln) {
        if r + mn < 0 {
            continue;
        }
        let exps = [r, lm - r, ln - r, r + mn];
        let den = exps.iter().fold(QLaurent::one(), |a, &e| &a * &qfact(e).expect("nonnegative"));
        let mut word = Vec::new();
        for (g, &e) in [0usize, 2, 1, 3].iter().zip(exps.iter()) {
            word.extend(std::iter::repeat(*g).take(e as usize));
        }
        acc = acc.add(&NcPoly::word(Chart::I, &word, QRat::one() / QRat::from(den)));
    }
    Ok(acc)
}

/// `λ` with `a = λ b`; on failure the offending pair of keys.
pub fn proportionality<C: Field + QRing>(a: &NcPoly<C>, b: &NcPoly<C>) -> Result<C, ((i32, Exp), (i32, Exp))> {
    let none = ((0, [0; 4]), (0, [0; 4]));
    let (&kb, cb) = match b.terms().iter().next() {
        Some(t) => t,
        None => return if a.is_zero() { Ok(C::one()) } else { Err(none) },
    };
    let lambda = a.terms().get(&kb).cloned().unwrap_or_else(C::zero) / cb.clone();
    for key in a.terms().keys().chain(b.terms().keys()) {
        let ca = a.terms().get(key).cloned().unwrap_or_else(C::zero);
        let cbk = b.terms().get(key).cloned().unwrap_or_else(C::zero);
        if ca != lambda.clone() * cbk {
            return Err((kb, *key));
        }
    }
    if lambda.is_zero() && !a.is_zero() {
        return Err(none);
    }
    Ok(lambda)
}

#[derive(Clone, Debug, Serialize)]
pub struct OastReport {
    pub index: HarmonicIndex,
    /// `det(x)^k X = λ det(y)^(-k-2l) Y`.
    pub lambda: String,
    #[serde(skip)]
    pub lambda_value: QRat,
    pub lhs_terms: usize,
    pub det_y_power: i64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OastError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("det(y) is not a unit multiple of a det(x) power")]
    DetY,
    #[error("not proportional: terms {0} and {1} give different ratios")]
    NotProportional(String, String),
}

/// Compares `det(x)^k X^l_{m,n}` with `det(y)^(-k-2l) Y^l_{m,n}` in M^IJ.
pub fn oast_check(idx: &HarmonicIndex) -> Result<OastReport, OastError> {
    idx.check()?;
    let lhs = det_power_ij::<QLaurent>(idx.k as i32).mul(&harmonic(idx)?.to_ij());
    let dy = det_y::<QLaurent>().j_to_ij();
    let dy_inv = invert_det_monomial(&dy).ok_or(OastError::DetY)?;
    let e = -idx.k - idx.two_l;
    let dpow = if e >= 0 { dy.pow(e as u32) } else { dy_inv.pow((-e) as u32) };
    let rhs = dpow.mul(&harmonic_y(idx)?.j_to_ij());
    let lq = lhs.map_coeffs(|c| QRat::from(c.clone()));
    let rq = rhs.map_coeffs(|c| QRat::from(c.clone()));
    match proportionality(&lq, &rq) {
        Ok(l) => Ok(OastReport {
            index: *idx,
            lambda: l.pretty(),
            lambda_value: l,
            lhs_terms: lhs.terms().len(),
            det_y_power: e,
        }),
        Err((a, b)) => Err(OastError::NotProportional(format!("{a:?}"), format!("{b:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> QLaurent {
        QLaurent::q_pow(e)
    }

    fn idx(l: i64, m: i64, n: i64) -> HarmonicIndex {
        HarmonicIndex::new(l, m, n, 0)
    }

    #[test]
    fn low_harmonics() {
        assert_eq!(harmonic(&idx(0, 0, 0)).unwrap(), NcPoly::one(Chart::I));
        let x = |g| NcPoly::<QLaurent>::gen(Chart::I, g);
        assert_eq!(harmonic(&idx(1, -1, -1)).unwrap(), x(0));
        assert_eq!(harmonic(&idx(1, -1, 1)).unwrap(), x(2));
        assert_eq!(harmonic(&idx(1, 1, -1)).unwrap(), x(1));
        assert_eq!(harmonic(&idx(1, 1, 1)).unwrap(), x(3));
        let x1 =
            NcPoly::monomial(Chart::I, 0, [1, 0, 0, 1], q(0)).add(&NcPoly::monomial(Chart::I, 0, [0, 1, 1, 0], q(2)));
        assert_eq!(harmonic(&idx(2, 0, 0)).unwrap(), x1);
    }

    #[test]
    fn y_harmonics_are_generators() {
        let y = |g| NcPoly::<QLaurent>::gen(Chart::J, g);
        let got: Vec<_> = harmonics_of_degree(1, 0).iter().map(|i| harmonic_y(i).unwrap()).collect();
        for g in 0..4 {
            assert!(got.contains(&y(g)));
        }
        assert_eq!(harmonic_y(&idx(0, 0, 0)).unwrap(), NcPoly::one(Chart::J));
    }

    #[test]
    fn index_validation() {
        assert!(harmonic(&idx(1, 0, 1)).is_err());
        assert!(harmonic(&idx(-2, 0, 0)).is_err());
        assert!(harmonic(&idx(1, 3, 1)).unwrap().is_zero());
    }

    #[test]
    fn residue_equals_divided_power_sum() {
        for two_l in 0..=4 {
            for i in harmonics_of_degree(two_l, 0) {
                let x = harmonic(&i).unwrap().map_coeffs(|c| QRat::from(c.clone()));
                let b = b9_sum(&i).unwrap();
                let f = &qfact(i.l_minus_m()).unwrap() * &qfact(i.l_plus_m()).unwrap();
                assert_eq!(x, b.scale(&QRat::from(f)), "{i:?}");
            }
        }
    }

    #[test]
    fn oast_low_degree() {
        let r = oast_check(&idx(0, 0, 0)).unwrap();
        assert_eq!(r.lambda_value, QRat::one());
        for i in harmonics_of_degree(1, 0) {
            let r = oast_check(&i).unwrap();
            assert!(r.lambda_value.as_laurent().and_then(|l| l.as_monomial()).is_some(), "{i:?}");
        }
        assert!(oast_check(&idx(2, 0, 0)).is_ok());
    }
}
