//! ADHM operators over the quantum chart algebras: the monad identities,
//! the pencil relation, truncated exactness checks, the curvature 2-form
//! matrix and the truncated projection.

use num_traits::One;
use qadhm_core::adhm::{complex_residuals, ComplexAdhmDatum};
use qadhm_core::{GaussMatrix, GaussRational, QLaurent};
use serde::Serialize;

use crate::qspacetime::{det_x, Chart, NcPoly};

mod curvature;
mod projection;
mod surj;

pub use curvature::{curvature_asd, curvature_matrix, curvature_words, expected_block, CurvatureReport};
pub use projection::{constant_kernel, projection_truncated, ProjError, ProjectionReport};
pub use surj::{beta_surjective_truncated, evaluation_grid, Certificate, SurjReport};

pub type QPoly = NcPoly<QLaurent>;

/// Matrix with entries in a chart algebra, acting by left multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct OpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub chart: Chart,
    entries: Vec<QPoly>,
}

fn gauss(g: &GaussRational) -> QLaurent {
    QLaurent::constant(g.clone())
}

impl OpMatrix {
    pub fn zeros(rows: usize, cols: usize, chart: Chart) -> Self {
        OpMatrix { rows, cols, chart, entries: vec![NcPoly::zero(chart); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, chart: Chart, mut f: impl FnMut(usize, usize) -> QPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        OpMatrix { rows, cols, chart, entries }
    }

    /// `m ⊗ 1`.
    pub fn from_scalar(m: &GaussMatrix, chart: Chart) -> Self {
        Self::from_fn(m.rows(), m.cols(), chart, |i, j| NcPoly::constant(chart, gauss(&m[(i, j)])))
    }

    /// `s · 1_n ⊗ gen`.
    pub fn generator(n: usize, g: usize, s: i64, chart: Chart) -> Self {
        let e = NcPoly::gen(chart, g).scale(&QLaurent::from_int(s));
        Self::from_fn(n, n, chart, |i, j| if i == j { e.clone() } else { NcPoly::zero(chart) })
    }

    pub fn get(&self, i: usize, j: usize) -> &QPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[QPoly] {
        &self.entries
    }

    fn zip(&self, o: &Self, f: impl Fn(&QPoly, &QPoly) -> QPoly) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        OpMatrix {
            rows: self.rows,
            cols: self.cols,
            chart: self.chart,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.scale(&QLaurent::from_int(-1))
    }

    pub fn scale(&self, s: &QLaurent) -> Self {
        OpMatrix { entries: self.entries.iter().map(|e| e.scale(s)).collect(), ..self.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        Self::from_fn(self.rows, o.cols, self.chart, |i, k| {
            (0..self.cols).fold(NcPoly::zero(self.chart), |acc, j| acc.add(&self.get(i, j).mul(o.get(j, k))))
        })
    }

    pub fn vstack(parts: &[&OpMatrix]) -> Self {
        let cols = parts[0].cols;
        let mut entries = Vec::new();
        for p in parts {
            assert_eq!(p.cols, cols);
            entries.extend(p.entries.iter().cloned());
        }
        OpMatrix { rows: parts.iter().map(|p| p.rows).sum(), cols, chart: parts[0].chart, entries }
    }

    pub fn hstack(parts: &[&OpMatrix]) -> Self {
        let rows = parts[0].rows;
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        Self::from_fn(rows, cols, parts[0].chart, |i, mut j| {
            for p in parts {
                if j < p.cols {
                    return p.get(i, j).clone();
                }
                j -= p.cols;
            }
            unreachable!()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Total number of normal-form terms.
    pub fn term_count(&self) -> usize {
        self.entries.iter().map(|e| e.terms().len()).sum()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.iter().filter_map(|e| e.degree()).max()
    }

    /// Homogeneous part of each entry.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        OpMatrix { entries: self.entries.iter().map(|e| e.homogeneous_part(d)).collect(), ..self.clone() }
    }

    /// `M ψ` for a column of algebra elements.
    pub fn apply(&self, v: &[QPoly]) -> Vec<QPoly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(NcPoly::zero(self.chart), |acc, j| acc.add(&self.get(i, j).mul(&v[j]))))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

/// The four maps `α1, α2: V⊗M → W̃⊗M` and `β1, β2: W̃⊗M → V⊗M`.
#[derive(Clone, Debug)]
pub struct QOps {
    pub chart: Chart,
    pub c: usize,
    pub r: usize,
    pub alpha1: OpMatrix,
    pub alpha2: OpMatrix,
    pub beta1: OpMatrix,
    pub beta2: OpMatrix,
}

impl QOps {
    /// `(α1 α2)`.
    pub fn alpha_bar(&self) -> OpMatrix {
        OpMatrix::hstack(&[&self.alpha1, &self.alpha2])
    }

    /// `(-β2; β1)`.
    pub fn beta_bar(&self) -> OpMatrix {
        OpMatrix::vstack(&[&self.beta2.neg(), &self.beta1])
    }

    /// `p1 β1 + p2 β2`.
    pub fn beta_p(&self, p: &(GaussRational, GaussRational)) -> OpMatrix {
        self.beta1.scale(&gauss(&p.0)).add(&self.beta2.scale(&gauss(&p.1)))
    }

    /// `q1 α1 + q2 α2`.
    pub fn alpha_p(&self, p: &(GaussRational, GaussRational)) -> OpMatrix {
        self.alpha1.scale(&gauss(&p.0)).add(&self.alpha2.scale(&gauss(&p.1)))
    }
}

/// Per chart: `(generator, sign)` added to each B block of α1, α2, β1, β2.
fn generator_pattern(chart: Chart) -> [[(usize, i64); 2]; 4] {
    match chart {
        Chart::J => [[(3, -1), (1, 1)], [(2, 1), (0, -1)], [(1, -1), (3, -1)], [(0, 1), (2, 1)]],
        _ => [[(0, -1), (1, -1)], [(2, -1), (3, -1)], [(1, 1), (0, -1)], [(3, 1), (2, -1)]],
    }
}

pub fn build_q_ops(d: &ComplexAdhmDatum, chart: Chart) -> QOps {
    assert!(chart != Chart::IJ, "operators live on chart I or J");
    let (c, r) = (d.c, d.r);
    let pat = generator_pattern(chart);
    let blk = |m: &GaussMatrix, (g, s): (usize, i64)| {
        OpMatrix::from_scalar(m, chart).add(&OpMatrix::generator(c, g, s, chart))
    };
    let sc = |m: &GaussMatrix| OpMatrix::from_scalar(m, chart);
    let alpha1 = OpMatrix::vstack(&[&blk(&d.b11, pat[0][0]), &blk(&d.b12, pat[0][1]), &sc(&d.j1)]);
    let alpha2 = OpMatrix::vstack(&[&blk(&d.b21, pat[1][0]), &blk(&d.b22, pat[1][1]), &sc(&d.j2)]);
    let beta1 = OpMatrix::hstack(&[&blk(&d.b12.neg(), pat[2][0]), &blk(&d.b11, pat[2][1]), &sc(&d.i1)]);
    let beta2 = OpMatrix::hstack(&[&blk(&d.b22.neg(), pat[3][0]), &blk(&d.b21, pat[3][1]), &sc(&d.i2)]);
    QOps { chart, c, r, alpha1, alpha2, beta1, beta2 }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdsReport {
    pub chart: Chart,
    /// Normal-form term counts of β1α1, β2α2, β2α1 + β1α2.
    pub residual_terms: [usize; 3],
    /// Each product equals the matching ADHM residual tensored with 1.
    pub equals_residuals: bool,
    pub holds: bool,
}

pub fn verify_ids(d: &ComplexAdhmDatum, chart: Chart) -> IdsReport {
    let o = build_q_ops(d, chart);
    let prods = [o.beta1.mul(&o.alpha1), o.beta2.mul(&o.alpha2), o.beta2.mul(&o.alpha1).add(&o.beta1.mul(&o.alpha2))];
    let res = complex_residuals(d);
    let equals_residuals = prods.iter().zip(&res).all(|(p, m)| *p == OpMatrix::from_scalar(m, chart));
    IdsReport {
        chart,
        residual_terms: [prods[0].term_count(), prods[1].term_count(), prods[2].term_count()],
        equals_residuals,
        holds: prods.iter().all(|p| p.is_zero()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BpaqReport {
    pub determinant: GaussRational,
    pub holds: bool,
    pub is_zero: bool,
}

/// `β_P α_Q` against `(p1 q2 - p2 q1) β1 α2`.
pub fn beta_p_alpha_q(
    d: &ComplexAdhmDatum,
    p: &(GaussRational, GaussRational),
    q: &(GaussRational, GaussRational),
) -> (OpMatrix, BpaqReport) {
    let o = build_q_ops(d, Chart::I);
    let lhs = o.beta_p(p).mul(&o.alpha_p(q));
    let det = &(&p.0 * &q.1) - &(&p.1 * &q.0);
    let rhs = o.beta1.mul(&o.alpha2).scale(&gauss(&det));
    let rep = BpaqReport { determinant: det, holds: lhs == rhs, is_zero: lhs.is_zero() };
    (lhs, rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct XiReport {
    /// `β1α2 - det·1` has degree at most 1.
    pub leading_is_det: bool,
    /// With all B zero: `β1α2 = det·1 + i1 j2`.
    pub zero_b_formula: Option<bool>,
    pub max_degree: Option<i64>,
}

pub fn xi_leading(d: &ComplexAdhmDatum) -> XiReport {
    let o = build_q_ops(d, Chart::I);
    let xi = o.beta1.mul(&o.alpha2);
    let det_id = OpMatrix::from_fn(d.c, d.c, Chart::I, |i, j| if i == j { det_x() } else { NcPoly::zero(Chart::I) });
    let rest = xi.sub(&det_id);
    let leading_is_det = rest.max_degree().map_or(true, |m| m <= 1);
    let b_zero = [&d.b11, &d.b12, &d.b21, &d.b22].iter().all(|b| b.is_zero());
    let zero_b_formula = b_zero.then(|| rest == OpMatrix::from_scalar(&d.i1.mul(&d.j2), Chart::I));
    XiReport { leading_is_det, zero_b_formula, max_degree: xi.max_degree() }
}

/// Evaluate an element at a point of a commutative quotient.
pub fn evaluate(f: &QPoly, point: &[GaussRational; 4]) -> QLaurent {
    let mut acc = QLaurent::zero();
    for ((k, e), c) in f.terms() {
        assert_eq!(*k, 0, "evaluation needs a polynomial");
        let mut v = GaussRational::one();
        for g in 0..4 {
            v = &v * &point[g].pow(e[g] as i32);
        }
        acc = &acc + &(c * &QLaurent::constant(v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use qadhm_core::adhm::gm;

    #[test]
    fn shapes_and_zero_b_display() {
        let mut d = ComplexAdhmDatum::zero(2, 1);
        d.j1 = gm(&[&[1], &[0]]);
        let o = build_q_ops(&d, Chart::I);
        assert_eq!((o.alpha1.rows, o.alpha1.cols), (4, 1));
        assert_eq!((o.beta2.rows, o.beta2.cols), (1, 4));
        let x = |g| NcPoly::<QLaurent>::gen(Chart::I, g);
        assert_eq!(*o.alpha1.get(0, 0), x(0).neg());
        assert_eq!(*o.alpha1.get(1, 0), x(1).neg());
        assert_eq!(*o.alpha1.get(2, 0), NcPoly::one(Chart::I));
        let oj = build_q_ops(&d, Chart::J);
        let y = |g| NcPoly::<QLaurent>::gen(Chart::J, g);
        assert_eq!(*oj.alpha1.get(0, 0), y(3).neg());
        assert_eq!(*oj.alpha1.get(1, 0), y(1));
    }

    #[test]
    fn zero_datum_identities() {
        for chart in [Chart::I, Chart::J] {
            let r = verify_ids(&ComplexAdhmDatum::zero(2, 2), chart);
            assert!(r.holds && r.equals_residuals);
        }
    }
}
