//! Monads O(−1)^c → O^(2c+r) → O(1)^c on P³ built from complex ADHM data,
//! pointwise exactness, sheaf-type classification and the reverse
//! normalization back to ADHM form.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::adhm::{
    classify, complex_residuals, is_stable, random_gl, random_scalar, rng, AdhmError, ComplexAdhmDatum, StabilityReport,
};
use crate::exactcore::{gaussian_roots, ExactError, GaussRational, Matrix, Pencil, UPoly};
use crate::GaussMatrix;

mod chern;

pub use chern::{
    ch_line, ch_omega1_asserted, ch_omega1_euler, chern_of_monad, chern_suite, chi_additive, chi_line, chi_twist,
    todd_p3, ChernClass, ChernSuiteReport,
};

/// Homogeneous coordinates of P³, in the order (x, y, z, w).
pub const VARS: [&str; 4] = ["x", "y", "z", "w"];

pub type Point = [GaussRational; 4];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MonadError {
    #[error("not a monad: {0}")]
    NotAMonad(String),
    #[error("degenerate at infinity: {0}")]
    DegenerateAtInfinity(String),
    #[error("not a C-stable solution: {0}")]
    NotStable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Adhm(#[from] AdhmError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Monad {
    pub r: usize,
    pub c: usize,
    /// (2c+r)×c, linear in x, y, z, w.
    pub alpha: Pencil<GaussRational>,
    /// c×(2c+r), linear in x, y, z, w.
    pub beta: Pencil<GaussRational>,
}

fn stack3(a: &GaussMatrix, b: &GaussMatrix, c: &GaussMatrix) -> GaussMatrix {
    a.vstack(b).vstack(c)
}

fn row3(a: &GaussMatrix, b: &GaussMatrix, c: &GaussMatrix) -> GaussMatrix {
    a.hstack(b).hstack(c)
}

/// The monad of a datum without checking the equations.
pub fn assemble_monad(d: &ComplexAdhmDatum) -> Monad {
    let (c, r) = (d.c, d.r);
    let id = Matrix::identity(c);
    let zc = Matrix::zeros(c, c);
    let zr = Matrix::zeros(r, c);
    let zrt = Matrix::zeros(c, r);
    let alpha = vec![
        stack3(&id, &zc, &zr),
        stack3(&zc, &id, &zr),
        stack3(&d.b11, &d.b12, &d.j1),
        stack3(&d.b21, &d.b22, &d.j2),
    ];
    let beta = vec![
        row3(&zc, &id, &zrt),
        row3(&id.neg(), &zc, &zrt),
        row3(&d.b12.neg(), &d.b11, &d.i1),
        row3(&d.b22.neg(), &d.b21, &d.i2),
    ];
    Monad {
        r,
        c,
        alpha: Pencil::linear(&VARS, alpha).expect("uniform shapes"),
        beta: Pencil::linear(&VARS, beta).expect("uniform shapes"),
    }
}

/// The monad of a solution; non-solutions are rejected naming the first
/// nonzero residual.
pub fn build_monad(d: &ComplexAdhmDatum) -> Result<Monad, MonadError> {
    d.validate()?;
    let res = complex_residuals(d);
    if let Some(k) = res.iter().position(|m| !m.is_zero()) {
        return Err(MonadError::Adhm(AdhmError::NotASolution(format!("residual c{} is nonzero", k + 1))));
    }
    Ok(assemble_monad(d))
}

/// Product of two pencils as a quadratic form: keys `(a, b)` with `a ≤ b`
/// index the variables, `4` standing for the constant term.
pub fn pencil_product(
    left: &Pencil<GaussRational>,
    right: &Pencil<GaussRational>,
) -> BTreeMap<(usize, usize), GaussMatrix> {
    let n = left.vars.len();
    let term = |p: &Pencil<GaussRational>, k: usize| if k == n { p.constant.clone() } else { p.coeffs[k].clone() };
    let mut out: BTreeMap<(usize, usize), GaussMatrix> = BTreeMap::new();
    for a in 0..=n {
        for b in 0..=n {
            let m = term(left, a).mul(&term(right, b));
            if m.is_zero() {
                continue;
            }
            let key = (a.min(b), a.max(b));
            let e = out.remove(&key);
            let s = match e {
                Some(acc) => acc.add(&m),
                None => m,
            };
            if !s.is_zero() {
                out.insert(key, s);
            }
        }
    }
    out
}

impl Monad {
    pub fn middle_dim(&self) -> usize {
        2 * self.c + self.r
    }

    /// Nonzero quadratic coefficients of βα.
    pub fn beta_alpha(&self) -> BTreeMap<(usize, usize), GaussMatrix> {
        pencil_product(&self.beta, &self.alpha)
    }

    pub fn is_complex(&self) -> bool {
        self.beta_alpha().is_empty()
    }

    pub fn alpha_at(&self, x: &Point) -> GaussMatrix {
        self.alpha.evaluate(x).expect("four coordinates")
    }

    pub fn beta_at(&self, x: &Point) -> GaussMatrix {
        self.beta.evaluate(x).expect("four coordinates")
    }

    /// `α ↦ p α g`, `β ↦ h β p⁻¹` for automorphisms g of V⊗O(−1), p of the
    /// middle term and h of V⊗O(1).
    pub fn transform(&self, g: &GaussMatrix, p: &GaussMatrix, h: &GaussMatrix) -> Result<Monad, MonadError> {
        let pi = p.inverse()?;
        Ok(Monad {
            r: self.r,
            c: self.c,
            alpha: self.alpha.left_mul(p).right_mul(g),
            beta: self.beta.left_mul(h).right_mul(&pi),
        })
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "r": self.r,
            "c": self.c,
            "alpha": pencil_json(&self.alpha),
            "beta": pencil_json(&self.beta),
        })
    }

    pub fn from_json(v: &Value) -> Result<Monad, MonadError> {
        let dim = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| MonadError::Invalid(format!("missing or invalid {k}")))
        };
        let (r, c) = (dim("r")?, dim("c")?);
        let n = 2 * c + r;
        let alpha = pencil_from_json(v.get("alpha"), "alpha", n, c)?;
        let beta = pencil_from_json(v.get("beta"), "beta", c, n)?;
        Ok(Monad { r, c, alpha, beta })
    }
}

fn pencil_json(p: &Pencil<GaussRational>) -> Value {
    let mut m = Map::new();
    for (v, c) in p.vars.iter().zip(&p.coeffs) {
        m.insert(v.clone(), serde_json::to_value(c).expect("matrix"));
    }
    m.insert("const".into(), serde_json::to_value(&p.constant).expect("matrix"));
    Value::Object(m)
}

fn pencil_from_json(
    v: Option<&Value>,
    name: &str,
    rows: usize,
    cols: usize,
) -> Result<Pencil<GaussRational>, MonadError> {
    let v = v.ok_or_else(|| MonadError::Invalid(format!("missing {name}")))?;
    let read = |k: &str| -> Result<GaussMatrix, MonadError> {
        match v.get(k) {
            None => Ok(Matrix::zeros(rows, cols)),
            Some(raw) => {
                let m: GaussMatrix =
                    serde_json::from_value(raw.clone()).map_err(|e| MonadError::Invalid(format!("{name}.{k}: {e}")))?;
                Ok(m.with_shape_hint(rows, cols)?)
            }
        }
    };
    let coeffs = VARS.iter().map(|k| read(k)).collect::<Result<Vec<_>, _>>()?;
    let constant = read("const")?;
    Ok(Pencil::new(VARS.iter().map(|s| s.to_string()).collect(), coeffs, constant)?)
}

pub fn point_string(x: &Point) -> String {
    format!("[{}:{}:{}:{}]", x[0], x[1], x[2], x[3])
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize_point(x: &Point) -> Option<Point> {
    let k = x.iter().position(|c| !c.is_zero())?;
    let s = x[k].inv();
    Some([&x[0] * &s, &x[1] * &s, &x[2] * &s, &x[3] * &s])
}

/// All points with coordinates in {0, 1, −1, i} up to scaling.
pub fn deterministic_grid() -> Vec<Point> {
    let vals = [GaussRational::zero(), GaussRational::one(), GaussRational::from_int(-1), GaussRational::i()];
    let mut out: Vec<Point> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [vals[a].clone(), vals[b].clone(), vals[c].clone(), vals[d].clone()];
                    if let Some(n) = normalize_point(&p) {
                        if !out.contains(&n) {
                            out.push(n);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The deterministic grid followed by `random` seeded Q(i) points.
pub fn evaluation_grid(random: usize, seed: u64) -> Vec<Point> {
    let mut out = deterministic_grid();
    let mut g = rng(seed);
    let mut added = 0;
    while added < random {
        let p = [random_scalar(&mut g), random_scalar(&mut g), random_scalar(&mut g), random_scalar(&mut g)];
        if let Some(n) = normalize_point(&p) {
            out.push(n);
            added += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exactness {
    pub rank_alpha: usize,
    pub rank_beta: usize,
    /// `dim ker β_X − rank α_X`.
    pub fiber_dim: usize,
}

pub fn check_exactness_at(m: &Monad, x: &Point) -> Result<Exactness, MonadError> {
    if x.iter().all(|c| c.is_zero()) {
        return Err(MonadError::Invalid("the origin is not a point of P³".into()));
    }
    let ra = m.alpha_at(x).rank();
    let rb = m.beta_at(x).rank();
    let ker = m.middle_dim() - rb;
    Ok(Exactness { rank_alpha: ra, rank_beta: rb, fiber_dim: ker.saturating_sub(ra) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafKind {
    TorsionFree,
    Reflexive,
    LocallyFree,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SheafClassification {
    pub kind: SheafKind,
    pub singular_sample: Vec<String>,
    #[serde(skip)]
    pub singular_points: Vec<Point>,
    pub stability: StabilityReport,
}

/// Grid points where α fails to be injective.
pub fn singular_points(m: &Monad, grid: &[Point]) -> Vec<Point> {
    grid.iter().filter(|x| m.alpha_at(x).rank() < m.c).cloned().collect()
}

/// Grid points where β fails to be surjective.
pub fn nonsurjective_points(m: &Monad, grid: &[Point]) -> Vec<Point> {
    grid.iter().filter(|x| m.beta_at(x).rank() < m.c).cloned().collect()
}

pub fn classify_sheaf(d: &ComplexAdhmDatum, grid: &[Point]) -> Result<SheafClassification, MonadError> {
    let m = build_monad(d)?;
    let report = classify(d);
    if !report.stable_everywhere {
        return Err(MonadError::NotStable(format!("stability gcd {}", report.stability_gcd)));
    }
    let kind = if report.regular {
        SheafKind::LocallyFree
    } else if report.semiregular {
        SheafKind::Reflexive
    } else {
        SheafKind::TorsionFree
    };
    let pts = singular_points(&m, grid);
    Ok(SheafClassification {
        kind,
        singular_sample: pts.iter().map(point_string).collect(),
        singular_points: pts,
        stability: report,
    })
}

/// Characteristic polynomial `det(t − m)` by interpolation at t = 0..n.
pub fn charpoly(m: &GaussMatrix) -> UPoly {
    let n = m.rows();
    let xs: Vec<GaussRational> = (0..=n as i64).map(GaussRational::from_int).collect();
    let ys: Vec<GaussRational> =
        xs.iter().map(|t| Matrix::scalar(n, t.clone()).sub(m).det().expect("square")).collect();
    let mut acc = UPoly::zero();
    for (k, yk) in ys.iter().enumerate() {
        let mut basis = UPoly::constant(yk.clone());
        for (j, xj) in xs.iter().enumerate() {
            if j != k {
                let lin = UPoly::new(vec![-xj.clone(), GaussRational::one()]);
                basis = basis.mul(&lin).scale(&(&xs[k] - xj).inv());
            }
        }
        acc = acc.add(&basis);
    }
    acc
}

/// Matrix of the right action `ξ ↦ ξ a` on the row space spanned by `basis`
/// (assumed invariant), in that basis.
fn restrict_right(basis: &GaussMatrix, a: &GaussMatrix) -> Option<GaussMatrix> {
    // solve M basis = basis a, i.e. basisᵀ Mᵀ = (basis a)ᵀ
    let rhs = basis.mul(a).transpose();
    basis.transpose().solve(&rhs).ok().map(|x| x.transpose())
}

/// For an unstable fibre [z:w], a point X = [x:y:z:w] with rank β_X < c,
/// found from a common left eigenvector of B̃₁, B̃₂ killing ĩ. `None` if the
/// eigenvalues are not in Q(i).
pub fn nonsurjective_point_over(d: &ComplexAdhmDatum, z: &GaussRational, w: &GaussRational) -> Option<Point> {
    let (b1, b2, i, _) = d.eval_at(z, w);
    let wit = is_stable(&b1, &b2, &i);
    if wit.holds {
        return None;
    }
    // annihilator of the closure, as row vectors
    let ann: Vec<Vec<GaussRational>> = if wit.subspace.is_empty() {
        Matrix::<GaussRational>::identity(d.c).to_rows()
    } else {
        Matrix::from_rows(wit.subspace.clone()).ok()?.kernel()
    };
    let u = Matrix::from_rows(ann).ok()?;
    let m1 = restrict_right(&u, &b1)?;
    for (l1, _) in gaussian_roots(&charpoly(&m1)).0 {
        // eigenspace of m1, as combinations of rows of u
        let e = m1.transpose().sub(&Matrix::scalar(m1.rows(), l1.clone())).kernel();
        let ev = Matrix::from_rows(e).ok()?.mul(&u);
        let m2 = restrict_right(&ev, &b2)?;
        if let Some((l2, _)) = gaussian_roots(&charpoly(&m2)).0.into_iter().next() {
            return Some([-l1.clone(), -l2, z.clone(), w.clone()]);
        }
    }
    None
}

/// Reverse construction output: the datum and the changes of basis used.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub datum: ComplexAdhmDatum,
    /// Middle-term change of basis `[α₁ | α₂ | W]`.
    pub middle: GaussMatrix,
    /// `β₁α₂`.
    pub xi: GaussMatrix,
}

pub fn normalize_monad(alpha: &Pencil<GaussRational>, beta: &Pencil<GaussRational>) -> Result<Normalized, MonadError> {
    let get = |p: &Pencil<GaussRational>, v: &str, name: &str| {
        p.coeff(v).cloned().ok_or_else(|| MonadError::Invalid(format!("{name} has no {v} coefficient")))
    };
    let (n, c) = alpha.shape();
    if beta.shape() != (c, n) || n < 2 * c || c == 0 {
        return Err(MonadError::Invalid(format!(
            "shapes {:?} and {:?} do not form a monad",
            alpha.shape(),
            beta.shape()
        )));
    }
    if !alpha.constant.is_zero() || !beta.constant.is_zero() {
        return Err(MonadError::Invalid("pencils must be homogeneous".into()));
    }
    let r = n - 2 * c;
    let a: Vec<GaussMatrix> = VARS.iter().map(|v| get(alpha, v, "alpha")).collect::<Result<_, _>>()?;
    let b: Vec<GaussMatrix> = VARS.iter().map(|v| get(beta, v, "beta")).collect::<Result<_, _>>()?;
    let prod = pencil_product(beta, alpha);
    if let Some((k, _)) = prod.iter().next() {
        let name = |i: usize| VARS.get(i).copied().unwrap_or("1");
        return Err(MonadError::NotAMonad(format!("βα has a nonzero {}{} coefficient", name(k.0), name(k.1))));
    }
    let xi = b[0].mul(&a[1]);
    let xi_inv = xi.inverse().map_err(|_| MonadError::DegenerateAtInfinity("β₁α₂ is singular".into()))?;
    let wk = b[0].vstack(&b[1]).kernel();
    if wk.len() != r {
        return Err(MonadError::DegenerateAtInfinity(format!(
            "ker β₁ ∩ ker β₂ has dimension {}, expected {r}",
            wk.len()
        )));
    }
    let mut t = a[0].hstack(&a[1]);
    if r > 0 {
        let wm = Matrix::from_rows(wk)?.transpose();
        t = t.hstack(&wm);
    }
    let ti =
        t.inverse().map_err(|_| MonadError::DegenerateAtInfinity("α₁, α₂ and W do not span the middle term".into()))?;
    let a3 = ti.mul(&a[2]);
    let a4 = ti.mul(&a[3]);
    let b3 = xi_inv.mul(&b[2]).mul(&t);
    let b4 = xi_inv.mul(&b[3]).mul(&t);
    let datum = ComplexAdhmDatum::from_parts(
        c,
        r,
        [
            a3.block(0, 0, c, c),
            a3.block(c, 0, c, c),
            a4.block(0, 0, c, c),
            a4.block(c, 0, c, c),
            b3.block(0, 2 * c, c, r),
            b4.block(0, 2 * c, c, r),
            a3.block(2 * c, 0, r, c),
            a4.block(2 * c, 0, r, c),
        ],
    )?;
    // the normalized pencils must coincide with the standard form
    let rebuilt = assemble_monad(&datum);
    let na = alpha.left_mul(&ti);
    let nb = beta.left_mul(&xi_inv).right_mul(&t);
    if na != rebuilt.alpha || nb != rebuilt.beta {
        return Err(MonadError::NotAMonad("normalized pencils are not in standard form".into()));
    }
    Ok(Normalized { datum, middle: t, xi })
}

/// `(g, h) ∈ GL(V) × GL(W)` with `g·h·d1 = d2`, i.e. `B'g = gB`,
/// `i'h = g i`, `j'g = h j`.
pub fn find_intertwiner(d1: &ComplexAdhmDatum, d2: &ComplexAdhmDatum) -> Option<(GaussMatrix, GaussMatrix)> {
    if (d1.c, d1.r) != (d2.c, d2.r) {
        return None;
    }
    let (c, r) = (d1.c, d1.r);
    let ng = c * c;
    let nv = ng + r * r;
    let unit = |k: usize| {
        let mut g = Matrix::zeros(c, c);
        let mut h = Matrix::zeros(r, r);
        if k < ng {
            g[(k / c, k % c)] = GaussRational::one();
        } else {
            let k = k - ng;
            h[(k / r, k % r)] = GaussRational::one();
        }
        (g, h)
    };
    let eqs = |g: &GaussMatrix, h: &GaussMatrix| -> Vec<GaussRational> {
        let mut out = Vec::new();
        for (b, bp) in [(&d1.b11, &d2.b11), (&d1.b12, &d2.b12), (&d1.b21, &d2.b21), (&d1.b22, &d2.b22)] {
            out.extend(bp.mul(g).sub(&g.mul(b)).data().to_vec());
        }
        for (i, ip) in [(&d1.i1, &d2.i1), (&d1.i2, &d2.i2)] {
            out.extend(ip.mul(h).sub(&g.mul(i)).data().to_vec());
        }
        for (j, jp) in [(&d1.j1, &d2.j1), (&d1.j2, &d2.j2)] {
            out.extend(jp.mul(g).sub(&h.mul(j)).data().to_vec());
        }
        out
    };
    let cols: Vec<Vec<GaussRational>> = (0..nv)
        .map(|k| {
            let (g, h) = unit(k);
            eqs(&g, &h)
        })
        .collect();
    let sys = Matrix::from_rows(cols).ok()?.transpose();
    let ker = sys.kernel();
    if ker.is_empty() {
        return None;
    }
    let split = |v: &[GaussRational]| {
        (Matrix::from_vec(c, c, v[..ng].to_vec()).expect("g"), Matrix::from_vec(r, r, v[ng..].to_vec()).expect("h"))
    };
    let invertible = |g: &GaussMatrix, h: &GaussMatrix| {
        !g.det().map_or(true, |x| x.is_zero()) && !h.det().map_or(true, |x| x.is_zero())
    };
    for v in &ker {
        let (g, h) = split(v);
        if invertible(&g, &h) {
            return Some((g, h));
        }
    }
    let mut gen = rng(0x5eed);
    for _ in 0..32 {
        let mut v = vec![GaussRational::zero(); nv];
        for k in &ker {
            let s = GaussRational::from_int(gen.gen_range(-5..=5));
            for (x, y) in v.iter_mut().zip(k) {
                *x = &*x + &(&s * y);
            }
        }
        let (g, h) = split(&v);
        if invertible(&g, &h) {
            return Some((g, h));
        }
    }
    None
}

/// Scramble a monad by random automorphisms of its three terms.
pub fn scramble_monad(m: &Monad, seed: u64) -> Monad {
    let mut g = rng(seed);
    let a = random_gl(&mut g, m.c);
    let p = random_gl(&mut g, m.middle_dim());
    let h = random_gl(&mut g, m.c);
    m.transform(&a, &p, &h).expect("invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhm::{basic_real_datum, embed_real, gm, sample_datum_r2, sample_datum_r3};

    fn pt(v: [i64; 4]) -> Point {
        v.map(GaussRational::from_int)
    }

    #[test]
    fn basic_example_pencils() {
        let m = build_monad(&sample_datum_r2()).unwrap();
        assert_eq!(m.alpha.coeff("x").unwrap(), &gm(&[&[1], &[0], &[0], &[0]]));
        assert_eq!(m.alpha.coeff("y").unwrap(), &gm(&[&[0], &[1], &[0], &[0]]));
        assert!(m.alpha.coeff("z").unwrap().is_zero());
        assert_eq!(m.beta.coeff("x").unwrap(), &gm(&[&[0, 1, 0, 0]]));
        assert_eq!(m.beta.coeff("y").unwrap(), &gm(&[&[-1, 0, 0, 0]]));
        assert_eq!(m.beta.coeff("z").unwrap(), &gm(&[&[0, 0, 1, 0]]));
        assert_eq!(m.beta.coeff("w").unwrap(), &gm(&[&[0, 0, 0, 1]]));
        assert!(m.is_complex());
    }

    #[test]
    fn beta_alpha_is_residual_form() {
        let mut d = sample_datum_r3();
        d.j2 = gm(&[&[1], &[0], &[0]]);
        assert!(build_monad(&d).is_err());
        let m = assemble_monad(&d);
        let res = complex_residuals(&d);
        let ba = m.beta_alpha();
        // only z², zw, w² can appear
        assert!(ba.keys().all(|k| k.0 >= 2));
        assert_eq!(ba.get(&(2, 2)).cloned().unwrap_or(Matrix::zeros(1, 1)), res[0]);
        assert_eq!(ba.get(&(3, 3)).cloned().unwrap_or(Matrix::zeros(1, 1)), res[1]);
        assert_eq!(ba.get(&(2, 3)).cloned().unwrap_or(Matrix::zeros(1, 1)), res[2]);
    }

    #[test]
    fn exactness_examples() {
        let m = build_monad(&sample_datum_r2()).unwrap();
        let e = check_exactness_at(&m, &pt([0, 0, 1, 0])).unwrap();
        assert_eq!((e.rank_alpha, e.rank_beta), (0, 1));
        let e = check_exactness_at(&m, &pt([1, 0, 0, 0])).unwrap();
        assert_eq!(e, Exactness { rank_alpha: 1, rank_beta: 1, fiber_dim: 2 });
        assert!(check_exactness_at(&m, &pt([0, 0, 0, 0])).is_err());
    }

    #[test]
    fn grid_is_deduplicated() {
        let g = deterministic_grid();
        assert!(g.contains(&pt([0, 0, 0, 1])));
        for (k, p) in g.iter().enumerate() {
            assert_eq!(normalize_point(p).as_ref(), Some(p));
            assert!(!g[..k].contains(p));
        }
        assert_eq!(evaluation_grid(5, 1).len(), g.len() + 5);
    }

    #[test]
    fn classification_examples() {
        let grid = deterministic_grid();
        let s = classify_sheaf(&sample_datum_r2(), &grid).unwrap();
        assert_eq!(s.kind, SheafKind::TorsionFree);
        assert!(s.singular_points.iter().all(|p| p[0].is_zero() && p[1].is_zero()));
        assert!(s.singular_points.contains(&pt([0, 0, 1, 0])));
        let s = classify_sheaf(&sample_datum_r3(), &grid).unwrap();
        assert_eq!(s.kind, SheafKind::Reflexive);
        assert_eq!(s.singular_sample, vec!["[0/1:0/1:0/1:1/1]".to_string()]);
        let e = embed_real(&basic_real_datum()).unwrap();
        let s = classify_sheaf(&e, &grid).unwrap();
        assert_eq!(s.kind, SheafKind::LocallyFree);
        assert!(s.singular_sample.is_empty());
    }

    #[test]
    fn normalize_standard_form_is_identity() {
        let d = sample_datum_r3();
        let m = build_monad(&d).unwrap();
        let n = normalize_monad(&m.alpha, &m.beta).unwrap();
        assert_eq!(n.datum, d);
        assert_eq!(n.middle, Matrix::identity(5));
    }

    #[test]
    fn normalize_scrambled_round_trip() {
        let d = embed_real(&basic_real_datum()).unwrap();
        let m = scramble_monad(&build_monad(&d).unwrap(), 9);
        assert!(m.is_complex());
        let n = normalize_monad(&m.alpha, &m.beta).unwrap();
        assert!(n.datum.is_solution());
        let (g, h) = find_intertwiner(&d, &n.datum).unwrap();
        assert_eq!(d.act(&g).unwrap().act_w(&h).unwrap(), n.datum);
    }

    #[test]
    fn normalize_rejects() {
        let mut d = sample_datum_r3();
        d.j2 = gm(&[&[1], &[0], &[0]]);
        let m = assemble_monad(&d);
        assert!(matches!(normalize_monad(&m.alpha, &m.beta), Err(MonadError::NotAMonad(_))));
        let m = build_monad(&sample_datum_r2()).unwrap();
        let mut beta = m.beta.clone();
        beta.coeffs[0] = Matrix::zeros(1, 4);
        beta.coeffs[1] = Matrix::zeros(1, 4);
        assert!(matches!(normalize_monad(&m.alpha, &beta), Err(MonadError::DegenerateAtInfinity(_))));
    }

    #[test]
    fn unstable_fibre_gives_point() {
        // r = c = 1, B = 0, ĩ = (z + w)·1: unstable at [−1:1]
        let mut d = ComplexAdhmDatum::zero(1, 1);
        d.i1 = gm(&[&[1]]);
        d.i2 = gm(&[&[1]]);
        let report = classify(&d);
        let (z, w) = report.unstable_coords[0].clone();
        let x = nonsurjective_point_over(&d, &z, &w).unwrap();
        let m = build_monad(&d).unwrap();
        assert!(m.beta_at(&x).rank() < 1);
    }

    #[test]
    fn json_round_trip() {
        let m = build_monad(&sample_datum_r3()).unwrap();
        let v = m.to_json();
        assert!(v["alpha"].get("const").is_some());
        assert_eq!(Monad::from_json(&v).unwrap(), m);
    }

    #[test]
    fn charpoly_of_companion() {
        let m = gm(&[&[0, -6], &[1, 5]]);
        // t² − 5t + 6
        let p = charpoly(&m);
        assert_eq!(p.coeffs(), &[GaussRational::from_int(6), GaussRational::from_int(-5), GaussRational::one()][..]);
    }
}
