//! Truncated projection `P = 1 - ᾱ Ξ⁻¹ β̄` on `W̃ ⊗ M`, with `Ξ = β̄ ᾱ`
//! inverted degree by degree from its constant part.

use qadhm_core::adhm::ComplexAdhmDatum;
use qadhm_core::{GaussMatrix, GaussRational, QLaurent};
use serde::Serialize;

use super::{build_q_ops, OpMatrix, QOps, QPoly};
use crate::qspacetime::{Chart, NcPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProjError {
    #[error("constant part of Xi is singular; truncated inverse unavailable")]
    SingularXi0,
    #[error("datum does not satisfy the ADHM equations: Xi is not block diagonal")]
    NotASolution,
    #[error("psi has {0} components, expected {1}")]
    Shape(usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub dmax: u32,
    /// Degree through which `Ξ φ = β̄ ψ` is solved.
    pub truncation: u32,
    pub p_psi: Vec<String>,
    /// `β̄ (P ψ)` vanishes in every degree `<= truncation`.
    pub kernel_within_truncation: bool,
    /// Lowest degree at which `β̄ (P ψ)` is nonzero, if any.
    pub first_residual_degree: Option<i64>,
    /// `P (P ψ) = P ψ` in every degree `<= truncation`.
    pub idempotent_within_truncation: bool,
    #[serde(skip)]
    pub p_psi_value: Vec<QPoly>,
}

struct Truncated {
    ops: QOps,
    xi0_inv: GaussMatrix,
    n1: OpMatrix,
    n2: OpMatrix,
}

impl Truncated {
    fn new(d: &ComplexAdhmDatum) -> Result<Self, ProjError> {
        let ops = build_q_ops(d, Chart::I);
        let xi = ops.beta_bar().mul(&ops.alpha_bar());
        let c = d.c;
        let diag = ops.beta1.mul(&ops.alpha2);
        let block_ok = (0..2 * c).all(|i| {
            (0..2 * c).all(|j| {
                let expect = if i / c == j / c { diag.get(i % c, j % c).clone() } else { NcPoly::zero(Chart::I) };
                *xi.get(i, j) == expect
            })
        });
        if !block_ok {
            return Err(ProjError::NotASolution);
        }
        let xi0 = GaussMatrix::from_fn(2 * c, 2 * c, |i, j| {
            let e = xi.get(i, j).homogeneous_part(0);
            e.terms().values().next().map(|v| v.as_monomial().expect("scalar data").0).unwrap_or_default()
        });
        let xi0_inv = xi0.inverse().map_err(|_| ProjError::SingularXi0)?;
        Ok(Truncated { n1: xi.homogeneous_part(1), n2: xi.homogeneous_part(2), ops, xi0_inv })
    }

    /// `φ` with `Ξ φ = b` in degrees `<= n`.
    fn solve(&self, b: &[QPoly], n: u32) -> Vec<QPoly> {
        let m = b.len();
        let hom = |v: &[QPoly], k: i64| -> Vec<QPoly> { v.iter().map(|f| f.homogeneous_part(k)).collect() };
        let mut parts: Vec<Vec<QPoly>> = Vec::new();
        for k in 0..=n as i64 {
            let mut rhs = hom(b, k);
            if k >= 1 {
                let t = self.n1.apply(&parts[(k - 1) as usize]);
                rhs = rhs.iter().zip(&t).map(|(a, b)| a.sub(b)).collect();
            }
            if k >= 2 {
                let t = self.n2.apply(&parts[(k - 2) as usize]);
                rhs = rhs.iter().zip(&t).map(|(a, b)| a.sub(b)).collect();
            }
            let phi_k: Vec<QPoly> = (0..m)
                .map(|i| {
                    (0..m).fold(NcPoly::zero(Chart::I), |acc, j| {
                        acc.add(&rhs[j].scale(&QLaurent::constant(self.xi0_inv[(i, j)].clone())))
                    })
                })
                .collect();
            parts.push(phi_k);
        }
        (0..m).map(|i| parts.iter().fold(NcPoly::zero(Chart::I), |acc, p| acc.add(&p[i]))).collect()
    }

    fn project(&self, psi: &[QPoly], n: u32) -> Vec<QPoly> {
        let b = self.ops.beta_bar().apply(psi);
        let phi = self.solve(&b, n);
        let corr = self.ops.alpha_bar().apply(&phi);
        psi.iter().zip(&corr).map(|(a, b)| a.sub(b)).collect()
    }
}

fn vanishes_through(v: &[QPoly], n: i64) -> (bool, Option<i64>) {
    let low = v.iter().filter_map(|f| f.min_degree()).min();
    (low.map_or(true, |l| l > n), low)
}

pub fn projection_truncated(d: &ComplexAdhmDatum, psi: &[QPoly], dmax: u32) -> Result<ProjectionReport, ProjError> {
    let n = 2 * d.c + d.r;
    if psi.len() != n {
        return Err(ProjError::Shape(psi.len(), n));
    }
    let t = Truncated::new(d)?;
    let trunc = dmax + 2;
    let ppsi = t.project(psi, trunc);
    let resid = t.ops.beta_bar().apply(&ppsi);
    let (kernel_ok, first) = vanishes_through(&resid, trunc as i64);
    let pp = t.project(&ppsi, trunc);
    let diff: Vec<QPoly> = pp.iter().zip(&ppsi).map(|(a, b)| a.sub(b)).collect();
    let (idem_ok, _) = vanishes_through(&diff, trunc as i64);
    Ok(ProjectionReport {
        dmax,
        truncation: trunc,
        p_psi: ppsi.iter().map(|f| f.truncate(trunc as i64).to_string()).collect(),
        kernel_within_truncation: kernel_ok,
        first_residual_degree: first,
        idempotent_within_truncation: idem_ok,
        p_psi_value: ppsi,
    })
}

/// Constant vectors `ψ` with `β̄ ψ = 0`.
pub fn constant_kernel(d: &ComplexAdhmDatum) -> Vec<Vec<GaussRational>> {
    let ops = build_q_ops(d, Chart::I);
    let bb = ops.beta_bar();
    let n = bb.cols;
    // rows: every (component, monomial) coefficient of β̄ applied to e_j
    let mut keys = std::collections::BTreeSet::new();
    for e in bb.entries() {
        for k in e.terms().keys() {
            keys.insert(*k);
        }
    }
    let mut rows = Vec::new();
    for i in 0..bb.rows {
        for k in &keys {
            rows.push(
                (0..n)
                    .map(|j| {
                        bb.get(i, j).terms().get(k).map(|v| v.as_monomial().expect("scalar").0).unwrap_or_default()
                    })
                    .collect(),
            );
        }
    }
    GaussMatrix::from_rows(rows).map(|m| m.kernel()).unwrap_or_default()
}
