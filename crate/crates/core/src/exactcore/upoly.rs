//! Dense univariate polynomials over Q(i).

use std::fmt;

use num_traits::{One, Zero};

use crate::exactcore::GaussRational;

/// Coefficients in ascending degree order, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<GaussRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        UPoly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        UPoly::new(vec![GaussRational::zero(), GaussRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> GaussRational {
        self.coeffs.last().cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &GaussRational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![GaussRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly::new(v)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading().inv();
        let mut r = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![GaussRational::zero(); n - dd];
        for k in (dd..n).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] * &lc_inv;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &(&f * c);
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.leading().inv())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &GaussRational::from_int(k as i64)).collect(),
        )
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&k| GaussRational::from_int(k)).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[1, 2, 3, 4, 5]);
        let d = p(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[1, 1]);
        let g = p(&[-2, 1]);
        let h = p(&[3, 0, 1]);
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(g.gcd(&h), UPoly::one());
        assert_eq!(UPoly::zero().gcd(&g), g);
    }

    #[test]
    fn gaussian_factor() {
        // t^2 + 1 = (t + i)(t - i)
        let i = GaussRational::i();
        let a = p(&[1, 0, 1]);
        let b = UPoly::new(vec![i.clone(), GaussRational::one()]);
        assert_eq!(a.gcd(&b), b);
        assert!(a.eval(&-i).is_zero());
    }
}
