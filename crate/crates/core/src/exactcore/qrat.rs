//! Rational functions in q over Q(i), and fixed specializations of q.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactcore::gauss::forward_owned;
use crate::exactcore::{GaussRational, QLaurent, QRing};

/// `num/den` in lowest terms. `den` is an ordinary polynomial with nonzero
/// constant term and leading coefficient 1; all powers of q live in `num`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QRat {
    num: QLaurent,
    den: QLaurent,
}

impl QRat {
    pub fn new(num: QLaurent, den: QLaurent) -> Self {
        assert!(!den.is_zero(), "QRat with zero denominator");
        if num.is_zero() {
            return QRat::zero();
        }
        if den.is_one() {
            return QRat { num, den };
        }
        let (dp, ds) = den.to_upoly();
        let (np, ns) = num.to_upoly();
        let g = np.gcd(&dp);
        let np = np.exact_div(&g);
        let dp = dp.exact_div(&g);
        let lc = dp.leading().inv();
        QRat { num: QLaurent::from_upoly(&np.scale(&lc), ns - ds), den: QLaurent::from_upoly(&dp.scale(&lc), 0) }
    }

    pub fn from_laurent(l: QLaurent) -> Self {
        QRat { num: l, den: QLaurent::from_int(1) }
    }

    pub fn num(&self) -> &QLaurent {
        &self.num
    }

    pub fn den(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&QLaurent> {
        self.is_laurent().then_some(&self.num)
    }

    /// Substitute a value for q; `None` if the denominator vanishes there.
    pub fn eval(&self, x: &GaussRational) -> Option<GaussRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(&self.num.eval(x) / &d)
        }
    }

    /// The substitution q ↦ q^k.
    pub fn subst_q_pow(&self, k: i32) -> QRat {
        QRat::new(self.num.subst_q_pow(k), self.den.subst_q_pow(k))
    }

    pub fn inv(&self) -> QRat {
        assert!(!self.is_zero(), "inverse of zero QRat");
        QRat::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> QRat {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn pretty(&self) -> String {
        if self.den.is_one() {
            self.num.pretty()
        } else {
            format!("({})/({})", self.num.pretty(), self.den.pretty())
        }
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat::from_laurent(QLaurent::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRat {
    fn one() -> Self {
        QRat::from_laurent(QLaurent::from_int(1))
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.den.is_one() && o.den.is_one() {
            return QRat::from_laurent(&self.num + &o.num);
        }
        if self.den == o.den {
            return QRat::new(&self.num + &o.num, self.den.clone());
        }
        QRat::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.den.is_one() && o.den.is_one() {
            return QRat::from_laurent(&self.num * &o.num);
        }
        QRat::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn div(self, o: &QRat) -> QRat {
        assert!(!o.is_zero(), "QRat division by zero");
        if let Some((c, e)) = o.num.as_monomial() {
            if o.den.is_one() {
                let c = c.inv();
                return QRat { num: self.num.shift(-e).scale(&c), den: self.den.clone() };
            }
        }
        QRat::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

forward_owned!(QRat, Add add, Sub sub, Mul mul, Div div);

impl QRing for QRat {
    fn q_pow(e: i32) -> Self {
        QRat::from_laurent(QLaurent::q_pow(e))
    }
    fn from_gauss(g: &GaussRational) -> Self {
        QRat::from_laurent(QLaurent::constant(g.clone()))
    }
    fn from_laurent(l: &QLaurent) -> Self {
        QRat::from_laurent(l.clone())
    }
}

impl From<QLaurent> for QRat {
    fn from(l: QLaurent) -> Self {
        QRat::from_laurent(l)
    }
}

/// Q(i) with q fixed to the rational `N/D`. Used for fast rank bounds
/// (rank at a specialization never exceeds the generic rank) and for the
/// classical limit `QSpec<1, 1>`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSpec<const N: i64, const D: i64>(pub GaussRational);

/// The classical limit q = 1.
pub type Classical = QSpec<1, 1>;

impl<const N: i64, const D: i64> QSpec<N, D> {
    pub fn q() -> GaussRational {
        GaussRational::from_ratio(N, D)
    }

    /// Specialize a formal value; `None` at a pole.
    pub fn from_qrat(x: &QRat) -> Option<Self> {
        x.eval(&Self::q()).map(QSpec)
    }
}

impl<const N: i64, const D: i64> fmt::Debug for QSpec<N, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const N: i64, const D: i64> fmt::Display for QSpec<N, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const N: i64, const D: i64> Zero for QSpec<N, D> {
    fn zero() -> Self {
        QSpec(GaussRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const N: i64, const D: i64> One for QSpec<N, D> {
    fn one() -> Self {
        QSpec(GaussRational::one())
    }
}

macro_rules! spec_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<const N: i64, const D: i64> $tr for QSpec<N, D> {
            type Output = Self;
            fn $m(self, o: Self) -> Self { QSpec($tr::$m(&self.0, &o.0)) }
        }
    )*};
}
spec_ops!(Add add, Sub sub, Mul mul, Div div);

impl<const N: i64, const D: i64> Neg for QSpec<N, D> {
    type Output = Self;
    fn neg(self) -> Self {
        QSpec(-self.0)
    }
}

impl<const N: i64, const D: i64> QRing for QSpec<N, D> {
    fn q_pow(e: i32) -> Self {
        QSpec(Self::q().pow(e))
    }
    fn from_gauss(g: &GaussRational) -> Self {
        QSpec(g.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::qint;

    fn q(e: i32) -> QRat {
        QRat::q_pow(e)
    }

    #[test]
    fn reduces_common_factors() {
        // (q^2 - 1)/(q - 1) = q + 1
        let a = QRat::new(&QLaurent::q_pow(2) - &QLaurent::from_int(1), &QLaurent::q_pow(1) - &QLaurent::from_int(1));
        assert!(a.is_laurent());
        assert_eq!(a, &q(1) + &QRat::one());
    }

    #[test]
    fn qint_division_is_exact() {
        let two = QRat::from(qint(2));
        let four = QRat::from(qint(4));
        // [4]/[2] = q^2 + q^-2
        assert_eq!(&four / &two, &q(2) + &q(-2));
        let x = &QRat::one() / &two;
        assert_eq!(&x * &two, QRat::one());
        assert!(!x.is_laurent());
    }

    #[test]
    fn canonical_denominator() {
        let a = &QRat::one() / &(&q(-1) + &q(1));
        let b = &q(1) / &(&QRat::one() + &q(2));
        assert_eq!(a, b);
        assert_eq!(a.den().min_exp(), Some(0));
    }

    #[test]
    fn specialization_agrees() {
        type S = QSpec<5, 3>;
        let x = &(&q(3) - &q(-2)) / &QRat::from(qint(3));
        let direct = S::from_qrat(&x).unwrap();
        let via = (S::q_pow(3) - S::q_pow(-2)) / S::qint(3);
        assert_eq!(direct, via);
    }
}
