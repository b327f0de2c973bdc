//! Homogeneous bivariate polynomials in (z, w) over Q(i): gcd and roots on P¹.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactcore::{ExactError, GaussRational, UPoly};

/// `Σ coeffs[k] z^k w^(degree-k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomPoly {
    pub degree: usize,
    pub coeffs: Vec<GaussRational>,
}

impl HomPoly {
    pub fn new(degree: usize, mut coeffs: Vec<GaussRational>) -> Result<Self, ExactError> {
        if coeffs.len() > degree + 1 {
            if coeffs[degree + 1..].iter().any(|c| !c.is_zero()) {
                return Err(ExactError::Shape("coefficient beyond degree".into()));
            }
            coeffs.truncate(degree + 1);
        }
        coeffs.resize(degree + 1, GaussRational::zero());
        Ok(HomPoly { degree, coeffs })
    }

    pub fn z() -> Self {
        HomPoly { degree: 1, coeffs: vec![GaussRational::zero(), GaussRational::one()] }
    }

    pub fn w() -> Self {
        HomPoly { degree: 1, coeffs: vec![GaussRational::one(), GaussRational::zero()] }
    }

    pub fn constant(c: GaussRational) -> Self {
        HomPoly { degree: 0, coeffs: vec![c] }
    }

    pub fn zero() -> Self {
        HomPoly::constant(GaussRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, o: &HomPoly) -> HomPoly {
        let d = self.degree + o.degree;
        let mut c = vec![GaussRational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        HomPoly { degree: d, coeffs: c }
    }

    pub fn eval(&self, z: &GaussRational, w: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += &(&(c * &z.pow(k as i32)) * &w.pow((self.degree - k) as i32));
        }
        acc
    }

    /// Multiplicity of the factor w, i.e. of the root [1:0].
    pub fn w_multiplicity(&self) -> usize {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(top) => self.degree - top,
            None => 0,
        }
    }

    /// Dehomogenization at w = 1.
    pub fn dehomogenize(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    pub fn homogenize(p: &UPoly, degree: usize) -> HomPoly {
        HomPoly { degree, coeffs: (0..=degree).map(|k| p.coeff(k)).collect() }
    }

    /// Scale so that the coefficient of the highest power of z is 1.
    pub fn monic(&self) -> HomPoly {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(top) => {
                let inv = self.coeffs[top].inv();
                HomPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
            None => self.clone(),
        }
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mono = |k: usize| {
            let zp = match k {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{k}"),
            };
            let wk = self.degree - k;
            let wp = match wk {
                0 => String::new(),
                1 => "w".into(),
                _ => format!("w^{wk}"),
            };
            match (zp.is_empty(), wp.is_empty()) {
                (true, true) => String::new(),
                (false, true) => zp,
                (true, false) => wp,
                (false, false) => format!("{zp}*{wp}"),
            }
        };
        let parts: Vec<String> = (0..=self.degree)
            .rev()
            .filter(|&k| !self.coeffs[k].is_zero())
            .map(|k| {
                let m = mono(k);
                let c = &self.coeffs[k];
                if m.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    m
                } else {
                    format!("({c})*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Monic gcd of homogeneous polynomials; the zero polynomial when every
/// input vanishes. Degree 0 means no common root on P¹.
pub fn homogeneous_gcd(polys: &[HomPoly]) -> Result<HomPoly, ExactError> {
    if polys.is_empty() {
        return Err(ExactError::Empty);
    }
    let mut g: Option<UPoly> = None;
    let mut wmul = usize::MAX;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        wmul = wmul.min(p.w_multiplicity());
        let u = p.dehomogenize();
        let next = match &g {
            None => u.monic(),
            Some(acc) => acc.gcd(&u),
        };
        g = Some(next);
        if wmul == 0 && g.as_ref().and_then(|x| x.degree()) == Some(0) {
            return Ok(HomPoly::constant(GaussRational::one()));
        }
    }
    match g {
        None => Ok(HomPoly::zero()),
        Some(u) => {
            let du = u.degree().unwrap_or(0);
            Ok(HomPoly::homogenize(&u, du + wmul).monic())
        }
    }
}

type GInt = (i128, i128);

fn gmul(a: GInt, b: GInt) -> Option<GInt> {
    Some((
        a.0.checked_mul(b.0)?.checked_sub(a.1.checked_mul(b.1)?)?,
        a.0.checked_mul(b.1)?.checked_add(a.1.checked_mul(b.0)?)?,
    ))
}

fn gnorm(a: GInt) -> Option<i128> {
    a.0.checked_mul(a.0)?.checked_add(a.1.checked_mul(a.1)?)
}

/// `a / b` if exact in Z[i].
fn gdiv_exact(a: GInt, b: GInt) -> Option<GInt> {
    let n = gnorm(b)?;
    let num = gmul(a, (b.0, -b.1))?;
    (num.0 % n == 0 && num.1 % n == 0).then(|| (num.0 / n, num.1 / n))
}

const NORM_CAP: i128 = 1 << 32;

/// All Gaussian integers dividing `g` (nonzero), including unit multiples.
fn gaussian_divisors(g: GInt) -> Option<Vec<GInt>> {
    let n = gnorm(g)?;
    if n == 0 || n > NORM_CAP {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d * d != n {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    let mut out = Vec::new();
    for nd in divs {
        let mut x = 0i128;
        while x * x <= nd {
            let y2 = nd - x * x;
            let y = (y2 as f64).sqrt().round() as i128;
            for yy in [y - 1, y, y + 1] {
                if yy >= 0 && yy * yy == y2 {
                    for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let u = (sx * x, sy * yy);
                        if !out.contains(&u) && gdiv_exact(g, u).is_some() {
                            out.push(u);
                        }
                    }
                }
            }
            x += 1;
        }
    }
    Some(out)
}

fn gint_to_gauss(a: GInt) -> GaussRational {
    GaussRational::new(BigRational::from_integer(BigInt::from(a.0)), BigRational::from_integer(BigInt::from(a.1)))
}

fn to_gint(c: &GaussRational, scale: &BigInt) -> Option<GInt> {
    let re = (&c.re * BigRational::from_integer(scale.clone())).to_integer();
    let im = (&c.im * BigRational::from_integer(scale.clone())).to_integer();
    Some((re.to_i128()?, im.to_i128()?))
}

/// Roots of `p` lying in Q(i), with multiplicities, and the cofactor that
/// has no such roots. Large coefficients leave the cofactor unfactored.
pub fn gaussian_roots(p: &UPoly) -> (Vec<(GaussRational, usize)>, UPoly) {
    let mut roots: Vec<(GaussRational, usize)> = Vec::new();
    let mut rest = p.monic();
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    // zero root
    let mut zmul = 0;
    while rest.degree().unwrap_or(0) > 0 && rest.coeff(0).is_zero() {
        rest = UPoly::new(rest.coeffs()[1..].to_vec());
        zmul += 1;
    }
    if zmul > 0 {
        roots.push((GaussRational::zero(), zmul));
    }
    loop {
        let Some(deg) = rest.degree() else { break };
        if deg == 0 {
            break;
        }
        let mut scale = BigInt::one();
        for c in rest.coeffs() {
            scale = scale.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let Some(ints) = rest.coeffs().iter().map(|c| to_gint(c, &scale)).collect::<Option<Vec<_>>>() else {
            break;
        };
        let (Some(num_d), Some(den_d)) = (gaussian_divisors(ints[0]), gaussian_divisors(ints[deg])) else {
            break;
        };
        let mut found = None;
        'search: for a in &num_d {
            for b in &den_d {
                let cand = &gint_to_gauss(*a) / &gint_to_gauss(*b);
                if rest.eval(&cand).is_zero() {
                    found = Some(cand);
                    break 'search;
                }
            }
        }
        let Some(r) = found else { break };
        let lin = UPoly::new(vec![-r.clone(), GaussRational::one()]);
        let mut m = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
            rest = rest.exact_div(&lin);
            m += 1;
        }
        roots.push((r, m));
    }
    (roots, rest)
}

/// Points [z:w] of P¹ in Q(i) where `f` vanishes, plus the part of `f`
/// without Q(i)-rational roots (dehomogenized at w = 1).
pub fn projective_roots(f: &HomPoly) -> (Vec<(GaussRational, GaussRational, usize)>, UPoly) {
    let mut pts = Vec::new();
    if f.is_zero() {
        return (pts, UPoly::zero());
    }
    let wm = f.w_multiplicity();
    if wm > 0 {
        pts.push((GaussRational::one(), GaussRational::zero(), wm));
    }
    let (roots, rest) = gaussian_roots(&f.dehomogenize());
    for (r, m) in roots {
        pts.push((r, GaussRational::one(), m));
    }
    (pts, rest)
}
