//! Polynomials in a finite set of unknowns over QRat, used to carry the
//! undetermined table coefficients through normal-form computations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use qadhm_core::{GaussRational, QRat, QRing};

/// `Σ c_m t^m`, monomials as sorted lists of unknown indices.
#[derive(Clone, PartialEq, Default)]
pub struct Sym {
    terms: BTreeMap<Vec<u16>, QRat>,
}

impl Sym {
    pub fn var(i: u16) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i], QRat::one());
        Sym { terms }
    }

    pub fn constant(c: QRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Sym { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, QRat> {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> QRat {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(QRat::zero)
    }

    fn add_term(&mut self, m: Vec<u16>, c: QRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(QRat::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Substitute each unknown by a `Sym`.
    pub fn substitute(&self, vals: &dyn Fn(u16) -> Sym) -> Sym {
        let mut out = Sym::zero();
        for (m, c) in &self.terms {
            let mut t = Sym::constant(c.clone());
            for &v in m {
                t = &t * &vals(v);
            }
            out = &out + &t;
        }
        out
    }

    /// Value when every unknown is known.
    pub fn evaluate(&self, vals: &dyn Fn(u16) -> QRat) -> QRat {
        let mut acc = QRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m {
                t = &t * &vals(v);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|v| format!("t{v}")).collect();
                format!(
                    "({}){}",
                    c.pretty(),
                    if vars.is_empty() { String::new() } else { format!("*{}", vars.join("*")) }
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Zero for Sym {
    fn zero() -> Self {
        Sym::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Sym {
    fn one() -> Self {
        Sym::constant(QRat::one())
    }
}

impl<'a> Add<&'a Sym> for &'a Sym {
    type Output = Sym;
    fn add(self, o: &Sym) -> Sym {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Sym> for &'a Sym {
    type Output = Sym;
    fn sub(self, o: &Sym) -> Sym {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Sym> for &'a Sym {
    type Output = Sym;
    fn mul(self, o: &Sym) -> Sym {
        let mut out = Sym::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m: Vec<u16> = m1.iter().chain(m2.iter()).copied().collect();
                m.sort_unstable();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Sym {
    type Output = Sym;
    fn neg(self) -> Sym {
        Sym { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Sym {
    type Output = Sym;
    fn neg(self) -> Sym {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Sym> for Sym {
            type Output = Sym;
            fn $m(self, o: Sym) -> Sym { $tr::$m(&self, &o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl QRing for Sym {
    fn q_pow(e: i32) -> Self {
        Sym::constant(QRat::q_pow(e))
    }
    fn from_gauss(g: &GaussRational) -> Self {
        Sym::constant(QRat::from_gauss(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_substitution() {
        let t0 = Sym::var(0);
        let t1 = Sym::var(1);
        let p = &(&t0 * &t1) + &Sym::q_pow(2);
        assert_eq!(p.degree(), 2);
        let v = p.substitute(&|i| if i == 0 { Sym::one() } else { Sym::var(1) });
        assert_eq!(v, &t1 + &Sym::q_pow(2));
        let val = p.evaluate(&|_| QRat::q_pow(1));
        assert_eq!(val, &QRat::q_pow(2) + &QRat::q_pow(2));
        assert!((&p - &p).is_zero());
    }
}
