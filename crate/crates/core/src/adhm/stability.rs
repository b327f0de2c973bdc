use serde::Serialize;

use crate::adhm::{real_residuals, AdhmError, ComplexAdhmDatum, RealAdhmDatum};
use crate::exactcore::hgcd::projective_roots;
use crate::exactcore::{Field, GaussRational, HomPoly, Matrix, UPoly};
use crate::GaussMatrix;

/// Outcome of a (co)stability test; `subspace` is a basis of the smallest
/// invariant subspace containing Im i (stability) or of the largest
/// invariant subspace inside ker j (costability).
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityWitness<T> {
    pub holds: bool,
    pub subspace: Vec<Vec<T>>,
}

/// Row-reduced basis of the span of `vectors` (all of length `dim`).
fn span_basis<T: Field>(vectors: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec()).expect("equal lengths");
    let (r, piv) = m.rref();
    (0..piv.len()).map(|k| r.row(k)).filter(|v| v.len() == dim).collect()
}

fn apply<T: Field>(m: &Matrix<T>, v: &[T]) -> Vec<T> {
    m.mul(&Matrix::column(v.to_vec())).col(0)
}

/// Word closure of Im `i` under `b1`, `b2`.
pub fn is_stable<T: Field>(b1: &Matrix<T>, b2: &Matrix<T>, i: &Matrix<T>) -> StabilityWitness<T> {
    let c = b1.rows();
    let cols: Vec<Vec<T>> = (0..i.cols()).map(|k| i.col(k)).collect();
    let mut basis = span_basis(&cols, c);
    for _ in 0..=c {
        let mut all = basis.clone();
        for v in &basis {
            all.push(apply(b1, v));
            all.push(apply(b2, v));
        }
        let next = span_basis(&all, c);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }
    StabilityWitness { holds: basis.len() == c, subspace: basis }
}

/// Costability through the transpose; the witness is the annihilator of the
/// dual closure, an invariant subspace contained in ker j.
pub fn is_costable<T: Field>(b1: &Matrix<T>, b2: &Matrix<T>, j: &Matrix<T>) -> StabilityWitness<T> {
    let c = b1.rows();
    let dual = is_stable(&b1.transpose(), &b2.transpose(), &j.transpose());
    let sub = if dual.subspace.is_empty() {
        Matrix::<T>::identity(c).to_rows()
    } else {
        Matrix::from_rows(dual.subspace.clone()).expect("rows").kernel()
    };
    StabilityWitness { holds: dual.holds, subspace: sub }
}

/// `dim {X : [B1,X] = [B2,X] = 0, X i = 0}`.
pub fn stabilizer_dim<T: Field>(b1: &Matrix<T>, b2: &Matrix<T>, i: &Matrix<T>) -> usize {
    let c = b1.rows();
    let r = i.cols();
    let n = c * c;
    let mut sys = Matrix::zeros(2 * n + c * r, n);
    for k in 0..n {
        let mut x = Matrix::zeros(c, c);
        x[(k / c, k % c)] = T::one();
        let e1 = b1.commutator(&x);
        let e2 = b2.commutator(&x);
        let e3 = x.mul(i);
        for (row, val) in e1.data().iter().chain(e2.data()).chain(e3.data()).enumerate() {
            sys[(row, k)] = val.clone();
        }
    }
    n - sys.rank()
}

/// Rank of the ordered-monomial map `⊕ B1^m B2^n i`, `0 ≤ m,n ≤ c−1`.
pub fn ordered_monomial_rank<T: Field>(b1: &Matrix<T>, b2: &Matrix<T>, i: &Matrix<T>) -> usize {
    let c = b1.rows();
    let mut p1 = Matrix::identity(c);
    let mut blocks: Option<Matrix<T>> = None;
    for _m in 0..c {
        let mut p2 = Matrix::identity(c);
        for _n in 0..c {
            let blk = p1.mul(&p2).mul(i);
            blocks = Some(match blocks {
                None => blk,
                Some(acc) => acc.hstack(&blk),
            });
            p2 = p2.mul(b2);
        }
        p1 = p1.mul(b1);
    }
    blocks.map_or(0, |m| m.rank())
}

type PolyVec = Vec<UPoly>;

fn poly_mat(a: &GaussMatrix, b: &GaussMatrix) -> Vec<Vec<UPoly>> {
    // a·z + b in the chart w = 1
    (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| UPoly::new(vec![b[(i, j)].clone(), a[(i, j)].clone()])).collect())
        .collect()
}

fn poly_apply(m: &[Vec<UPoly>], v: &PolyVec) -> PolyVec {
    m.iter().map(|row| row.iter().zip(v).fold(UPoly::zero(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}

fn poly_det(cols: &[&PolyVec]) -> UPoly {
    let n = cols.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = UPoly::zero();
    // Heap's algorithm with sign tracking
    let mut ctr = vec![0usize; n];
    let mut sign = 1i64;
    let term = |perm: &[usize]| {
        let mut t = UPoly::one();
        for (col, &row) in perm.iter().enumerate() {
            t = t.mul(&cols[col][row]);
            if t.is_zero() {
                break;
            }
        }
        t
    };
    acc = acc.add(&term(&perm));
    let mut k = 0;
    while k < n {
        if ctr[k] < k {
            if k % 2 == 0 {
                perm.swap(0, k);
            } else {
                perm.swap(ctr[k], k);
            }
            sign = -sign;
            let t = term(&perm);
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            ctr[k] += 1;
            k = 0;
        } else {
            ctr[k] = 0;
            k += 1;
        }
    }
    acc
}

/// Krylov columns (words of length ≤ c−1 in B̃₁, B̃₂ applied to ĩ), grouped
/// by homogeneous degree and reduced to a Q(i)-basis within each degree.
fn krylov_columns(
    b1: (&GaussMatrix, &GaussMatrix),
    b2: (&GaussMatrix, &GaussMatrix),
    i: (&GaussMatrix, &GaussMatrix),
) -> Vec<(PolyVec, usize)> {
    let c = b1.0.rows();
    let pb1 = poly_mat(b1.0, b1.1);
    let pb2 = poly_mat(b2.0, b2.1);
    let pi = poly_mat(i.0, i.1);
    let mut level: Vec<PolyVec> = (0..i.0.cols()).map(|k| pi.iter().map(|row| row[k].clone()).collect()).collect();
    let mut out = Vec::new();
    for len in 0..c {
        let deg = len + 1;
        // reduce within the degree via coefficient vectors
        let flat: Vec<Vec<GaussRational>> =
            level.iter().map(|v| v.iter().flat_map(|p| (0..=deg).map(move |k| p.coeff(k))).collect()).collect();
        let basis = span_basis(&flat, c * (deg + 1));
        let reduced: Vec<PolyVec> = basis
            .iter()
            .map(|f| (0..c).map(|row| UPoly::new(f[row * (deg + 1)..(row + 1) * (deg + 1)].to_vec())).collect())
            .collect();
        for v in &reduced {
            out.push((v.clone(), deg));
        }
        if len + 1 < c {
            let mut next = Vec::new();
            for v in &reduced {
                next.push(poly_apply(&pb1, v));
                next.push(poly_apply(&pb2, v));
            }
            level = next;
        }
    }
    out
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut p = k;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            if idx[p] != p + n - k {
                break;
            }
        }
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Homogeneous gcd of all c×c minors of the Krylov pencil of
/// `(z·b1.0 + w·b1.1, z·b2.0 + w·b2.1, z·i.0 + w·i.1)`.
pub fn krylov_minors(
    b1: (&GaussMatrix, &GaussMatrix),
    b2: (&GaussMatrix, &GaussMatrix),
    i: (&GaussMatrix, &GaussMatrix),
) -> HomPoly {
    let c = b1.0.rows();
    let cols = krylov_columns(b1, b2, i);
    let mut g: Option<UPoly> = None;
    let mut wmul = usize::MAX;
    combinations(cols.len(), c, |idx| {
        let sel: Vec<&PolyVec> = idx.iter().map(|&k| &cols[k].0).collect();
        let m = poly_det(&sel);
        if m.is_zero() {
            return true;
        }
        let deg: usize = idx.iter().map(|&k| cols[k].1).sum();
        let h = HomPoly::homogenize(&m, deg);
        wmul = wmul.min(h.w_multiplicity());
        g = Some(match &g {
            None => m.monic(),
            Some(acc) => acc.gcd(&m),
        });
        !(wmul == 0 && g.as_ref().and_then(|x| x.degree()) == Some(0))
    });
    match g {
        None => HomPoly::zero(),
        Some(u) => HomPoly::homogenize(&u, u.degree().unwrap_or(0) + wmul).monic(),
    }
}

/// Everything `classify` decides about a complex datum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub stable_everywhere: bool,
    pub costable_everywhere: bool,
    pub semistable: bool,
    pub semiregular: bool,
    pub regular: bool,
    /// Points of P¹ in Q(i) where the evaluation is not regular.
    pub failing_points: Vec<String>,
    pub unstable_points: Vec<String>,
    pub uncostable_points: Vec<String>,
    pub stability_gcd: String,
    pub costability_gcd: String,
    /// Factors without roots in Q(i), dehomogenized at w = 1.
    pub irrational_factors: Vec<String>,
    pub witness_subspace: Option<Vec<Vec<GaussRational>>>,
    #[serde(skip)]
    pub stability_poly: HomPoly,
    #[serde(skip)]
    pub costability_poly: HomPoly,
    #[serde(skip)]
    pub unstable_coords: Vec<(GaussRational, GaussRational)>,
}

fn point_string(z: &GaussRational, w: &GaussRational) -> String {
    format!("[{z}:{w}]")
}

fn roots_of(h: &HomPoly, irr: &mut Vec<String>) -> Vec<(GaussRational, GaussRational)> {
    if h.is_zero() {
        return Vec::new();
    }
    let (pts, rest) = projective_roots(h);
    if rest.degree().unwrap_or(0) > 0 {
        irr.push(rest.to_string());
    }
    pts.into_iter().map(|(z, w, _)| (z, w)).collect()
}

pub fn stability_gcd(d: &ComplexAdhmDatum) -> HomPoly {
    krylov_minors((&d.b11, &d.b21), (&d.b12, &d.b22), (&d.i1, &d.i2))
}

pub fn costability_gcd(d: &ComplexAdhmDatum) -> HomPoly {
    krylov_minors(
        (&d.b11.transpose(), &d.b21.transpose()),
        (&d.b12.transpose(), &d.b22.transpose()),
        (&d.j1.transpose(), &d.j2.transpose()),
    )
}

pub fn classify(d: &ComplexAdhmDatum) -> StabilityReport {
    let sg = stability_gcd(d);
    let cg = costability_gcd(d);
    let stable = !sg.is_zero() && sg.degree == 0;
    let costable = !cg.is_zero() && cg.degree == 0;
    let mut irr = Vec::new();
    let us = roots_of(&sg, &mut irr);
    let uc = roots_of(&cg, &mut irr);
    let mut failing: Vec<String> = us.iter().chain(&uc).map(|(z, w)| point_string(z, w)).collect();
    failing.sort();
    failing.dedup();
    let witness_at =
        if sg.is_zero() { Some((GaussRational::from_int(1), GaussRational::from_int(0))) } else { us.first().cloned() };
    let witness_subspace = witness_at.map(|(z, w)| {
        let (b1, b2, i, _) = d.eval_at(&z, &w);
        is_stable(&b1, &b2, &i).subspace
    });
    StabilityReport {
        stable_everywhere: stable,
        costable_everywhere: costable,
        semistable: !sg.is_zero(),
        semiregular: stable && !cg.is_zero(),
        regular: stable && costable,
        failing_points: failing,
        unstable_points: us.iter().map(|(z, w)| point_string(z, w)).collect(),
        uncostable_points: uc.iter().map(|(z, w)| point_string(z, w)).collect(),
        stability_gcd: sg.to_string(),
        costability_gcd: cg.to_string(),
        irrational_factors: irr,
        witness_subspace,
        stability_poly: sg,
        costability_poly: cg,
        unstable_coords: us,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealStratum {
    Stable,
    Costable,
    Regular,
    Irregular,
}

/// Stratum of a real solution with parameter ξ; rejects non-solutions.
pub fn real_stratify(d: &RealAdhmDatum, xi: &GaussRational) -> Result<RealStratum, AdhmError> {
    if let Some(k) = real_residuals(d, xi).iter().position(|m| !m.is_zero()) {
        return Err(AdhmError::NotASolution(format!("real residual {} is nonzero", k + 1)));
    }
    let s = is_stable(&d.b1, &d.b2, &d.i).holds;
    let c = is_costable(&d.b1, &d.b2, &d.j).holds;
    Ok(match (s, c) {
        (true, true) => RealStratum::Regular,
        (true, false) => RealStratum::Stable,
        (false, true) => RealStratum::Costable,
        (false, false) => RealStratum::Irregular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhm::{basic_real_datum, gm, sample_datum_r2, sample_datum_r3};

    #[test]
    fn stability_examples() {
        let z1 = gm(&[&[0]]);
        assert!(is_stable(&z1, &z1, &gm(&[&[2]])).holds);
        let w = is_stable(&z1, &z1, &gm(&[&[0]]));
        assert!(!w.holds);
        assert!(w.subspace.is_empty());
        let z2 = gm(&[&[0, 0], &[0, 0]]);
        let w = is_stable(&z2, &z2, &gm(&[&[1], &[0]]));
        assert!(!w.holds);
        assert_eq!(w.subspace, vec![vec![GaussRational::from_int(1), GaussRational::from_int(0)]]);
    }

    #[test]
    fn costability_examples() {
        let z1 = gm(&[&[0]]);
        assert!(is_costable(&z1, &z1, &gm(&[&[3]])).holds);
        let w = is_costable(&z1, &z1, &gm(&[&[0]]));
        assert!(!w.holds);
        assert_eq!(w.subspace.len(), 1);
        let d = sample_datum_r2();
        let (b1, b2, _, j) = d.eval_at(&GaussRational::from_int(2), &GaussRational::from_int(5));
        assert!(!is_costable(&b1, &b2, &j).holds);
    }

    #[test]
    fn stabilizer_examples() {
        let z1 = gm(&[&[0]]);
        assert_eq!(stabilizer_dim(&z1, &z1, &gm(&[&[0]])), 1);
        let z2 = gm(&[&[0, 0], &[0, 0]]);
        assert_eq!(stabilizer_dim(&z2, &z2, &gm(&[&[0], &[0]])), 4);
        let b1 = gm(&[&[0, 0], &[1, 0]]);
        assert_eq!(stabilizer_dim(&b1, &z2, &gm(&[&[1], &[0]])), 0);
    }

    #[test]
    fn sample_data_classify() {
        let r2 = classify(&sample_datum_r2());
        assert!(r2.stable_everywhere && !r2.costable_everywhere && !r2.semiregular && !r2.regular);
        assert!(r2.costability_poly.is_zero());
        let r3 = classify(&sample_datum_r3());
        assert!(r3.stable_everywhere && r3.semiregular && !r3.regular);
        assert_eq!(r3.uncostable_points, vec!["[0/1:1/1]".to_string()]);
    }

    #[test]
    fn rank_one_never_stable() {
        let mut d = ComplexAdhmDatum::zero(1, 1);
        d.i1 = gm(&[&[2]]);
        d.i2 = gm(&[&[3]]);
        let rep = classify(&d);
        assert!(!rep.stable_everywhere && rep.semistable);
        assert_eq!(rep.unstable_points, vec!["[-3/2:1/1]".to_string()]);
        assert_eq!(rep.witness_subspace, Some(vec![]));
    }

    #[test]
    fn real_strata() {
        let zero = GaussRational::from_int(0);
        assert_eq!(real_stratify(&basic_real_datum(), &zero).unwrap(), RealStratum::Regular);
        assert_eq!(real_stratify(&RealAdhmDatum::zero(2, 1), &zero).unwrap(), RealStratum::Irregular);
        assert!(real_stratify(&basic_real_datum(), &GaussRational::from_int(1)).is_err());
    }
}
