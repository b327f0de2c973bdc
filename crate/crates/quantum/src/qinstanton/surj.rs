//! Surjectivity of `β_P` onto truncated degree slices: explicit preimages
//! when the pencil is stable at P, a character certificate otherwise.

use num_traits::{One, Zero};
use qadhm_core::adhm::ComplexAdhmDatum;
use qadhm_core::{GaussMatrix, GaussRational, Matrix, QLaurent};
use serde::Serialize;

use super::{build_q_ops, evaluate, QPoly};
use crate::qspacetime::{monomials_up_to, Chart, NcPoly};

/// Linear functional `ξ ⊗ ε` vanishing on the image of `β_P`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub xi: Vec<GaussRational>,
    pub character: [GaussRational; 4],
    pub character_respects_relations: bool,
    pub kills_image: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjReport {
    pub p: [GaussRational; 2],
    pub dmax: u32,
    /// Dimension of the span of `B̃`-words applied to `Im ĩ`.
    pub krylov_dim: usize,
    pub stable_at_p: bool,
    /// Every `e_i ⊗ m`, `deg m <= dmax`, has a verified preimage.
    pub surjective: bool,
    /// Largest degree of a preimage used.
    pub source_degree: Option<i64>,
    pub certificate: Option<Certificate>,
}

/// Twelve sample points of P¹.
pub fn evaluation_grid() -> Vec<(GaussRational, GaussRational)> {
    let g = |a: i64, b: i64| GaussRational::from_parts(a, 1, b, 1);
    [
        (g(1, 0), g(0, 0)),
        (g(0, 0), g(1, 0)),
        (g(1, 0), g(1, 0)),
        (g(1, 0), g(-1, 0)),
        (g(1, 0), g(0, 1)),
        (g(2, 0), g(1, 0)),
        (g(1, 0), g(2, 0)),
        (g(1, 0), g(-2, 0)),
        (g(3, 0), g(1, 0)),
        (g(1, 0), g(3, 0)),
        (g(2, 0), g(-3, 0)),
        (g(1, 1), g(1, 0)),
    ]
    .to_vec()
}

fn zero_vec(n: usize) -> Vec<QPoly> {
    vec![NcPoly::zero(Chart::I); n]
}

fn add_vec(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn scale_vec(a: &[QPoly], s: &GaussRational) -> Vec<QPoly> {
    let s = QLaurent::constant(s.clone());
    a.iter().map(|x| x.scale(&s)).collect()
}

fn right_mul_vec(a: &[QPoly], m: &QPoly) -> Vec<QPoly> {
    a.iter().map(|x| x.mul(m)).collect()
}

/// Reduce `v` against an echelon list; returns the remainder.
fn reduce(basis: &[(Vec<GaussRational>, usize)], v: &[GaussRational]) -> Vec<GaussRational> {
    let mut v = v.to_vec();
    for (b, piv) in basis {
        if !v[*piv].is_zero() {
            let f = &v[*piv] / &b[*piv];
            for k in 0..v.len() {
                v[k] = &v[k] - &(&f * &b[k]);
            }
        }
    }
    v
}

pub fn beta_surjective_truncated(d: &ComplexAdhmDatum, p: &(GaussRational, GaussRational), dmax: u32) -> SurjReport {
    let (c, r) = (d.c, d.r);
    let n = 2 * c + r;
    let ops = build_q_ops(d, Chart::I);
    let beta = ops.beta_p(p);
    let (b1, b2, it, _) = d.eval_at(&p.0, &p.1);
    let x = |g| NcPoly::<QLaurent>::gen(Chart::I, g);
    let lin = |a: usize, b: usize| {
        x(a).scale(&QLaurent::constant(p.0.clone())).add(&x(b).scale(&QLaurent::constant(p.1.clone())))
    };
    let (xt1, xt2) = (lin(0, 2), lin(1, 3));

    // Krylov closure of Im ĩ with tracked preimages
    let mut basis: Vec<(Vec<GaussRational>, usize)> = Vec::new();
    let mut vecs: Vec<(Vec<GaussRational>, Vec<QPoly>)> = Vec::new();
    let mut queue: Vec<(Vec<GaussRational>, Vec<QPoly>)> = Vec::new();
    for k in 0..r {
        let mut phi = zero_vec(n);
        phi[2 * c + k] = NcPoly::one(Chart::I);
        queue.push((it.col(k), phi));
    }
    while let Some((u, phi)) = queue.pop() {
        let red = reduce(&basis, &u);
        let Some(piv) = red.iter().position(|v| !v.is_zero()) else { continue };
        basis.push((red, piv));
        vecs.push((u.clone(), phi.clone()));
        let col = Matrix::column(u.clone());
        // Φ(B̃1 u) = (0, u, 0) + Φ(u) x̃1
        let mut e1 = zero_vec(n);
        for i in 0..c {
            e1[c + i] = NcPoly::constant(Chart::I, QLaurent::constant(u[i].clone()));
        }
        queue.push((b1.mul(&col).col(0), add_vec(&e1, &right_mul_vec(&phi, &xt1))));
        // Φ(B̃2 u) = -(u, 0, 0) + Φ(u) x̃2
        let mut e2 = zero_vec(n);
        for i in 0..c {
            e2[i] = NcPoly::constant(Chart::I, QLaurent::constant(-u[i].clone()));
        }
        queue.push((b2.mul(&col).col(0), add_vec(&e2, &right_mul_vec(&phi, &xt2))));
    }
    let krylov_dim = basis.len();
    let stable_at_p = krylov_dim == c;
    let mut report = SurjReport {
        p: [p.0.clone(), p.1.clone()],
        dmax,
        krylov_dim,
        stable_at_p,
        surjective: false,
        source_degree: None,
        certificate: None,
    };
    if stable_at_p {
        // e_i = Σ a_j u_j
        let u = GaussMatrix::from_fn(c, c, |i, j| vecs[j].0[i].clone());
        let inv = u.inverse().expect("Krylov vectors span V");
        let mut ok = true;
        let mut deg = None;
        for i in 0..c {
            let mut phi = zero_vec(n);
            for j in 0..c {
                phi = add_vec(&phi, &scale_vec(&vecs[j].1, &inv[(j, i)]));
            }
            deg = deg.max(phi.iter().filter_map(|f| f.degree()).max());
            for m in monomials_up_to(dmax) {
                let mono = NcPoly::monomial(Chart::I, 0, m, QLaurent::one());
                let img = beta.apply(&right_mul_vec(&phi, &mono));
                ok &= (0..c).all(|k| if k == i { img[k] == mono } else { img[k].is_zero() });
            }
        }
        report.surjective = ok;
        report.source_degree = deg.map(|dg| dg + dmax as i64);
        return report;
    }
    report.certificate = character_certificate(d, p, &basis, &beta);
    report
}

fn character_certificate(
    d: &ComplexAdhmDatum,
    p: &(GaussRational, GaussRational),
    basis: &[(Vec<GaussRational>, usize)],
    beta: &super::OpMatrix,
) -> Option<Certificate> {
    let c = d.c;
    let (b1, b2, it, _) = d.eval_at(&p.0, &p.1);
    // annihilator of the Krylov span
    let span = if basis.is_empty() {
        GaussMatrix::zeros(1, c)
    } else {
        GaussMatrix::from_rows(basis.iter().map(|(v, _)| v.clone()).collect()).ok()?
    };
    let ann = span.kernel();
    if ann.len() != 1 {
        return None;
    }
    let xi = ann[0].clone();
    let row = GaussMatrix::from_rows(vec![xi.clone()]).ok()?;
    let k = xi.iter().position(|v| !v.is_zero())?;
    let l1 = &row.mul(&b1)[(0, k)] / &xi[k];
    let l2 = &row.mul(&b2)[(0, k)] / &xi[k];
    let z = GaussRational::zero();
    let character = if p.1.is_zero() {
        [&l1 / &p.0, &l2 / &p.0, z.clone(), z]
    } else if p.0.is_zero() {
        [z.clone(), z, &l1 / &p.1, &l2 / &p.1]
    } else {
        [&l1 / &p.0, z.clone(), z, &l2 / &p.1]
    };
    let respects = character_respects_relations(&character);
    let eps = GaussMatrix::from_fn(beta.rows, beta.cols, |i, j| {
        evaluate(beta.get(i, j), &character)
            .as_monomial()
            .map(|(g, e)| if e == 0 { g } else { GaussRational::zero() })
            .unwrap_or_else(GaussRational::zero)
    });
    let consts = (0..beta.rows).all(|i| {
        (0..beta.cols).all(|j| {
            let v = evaluate(beta.get(i, j), &character);
            v.is_zero() || v.as_monomial().map_or(false, |(_, e)| e == 0)
        })
    });
    let kills = consts && row.mul(&eps).is_zero() && row.mul(&it).is_zero();
    Some(Certificate { xi, character, character_respects_relations: respects, kills_image: kills })
}

/// `ε(x_i) ε(x_j) = ε(normal form of x_i x_j)` for every pair.
fn character_respects_relations(pt: &[GaussRational; 4]) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| {
            let nf = NcPoly::<QLaurent>::gen(Chart::I, i).mul(&NcPoly::gen(Chart::I, j));
            evaluate(&nf, pt) == QLaurent::constant(&pt[i] * &pt[j])
        })
    })
}
