//! The 2-form matrix `dᾱ ∧ dβ̄` in wedge normal form, its SD/ASD
//! classification and comparison with the expected block pattern.

use qadhm_core::adhm::ComplexAdhmDatum;
use qadhm_core::exactcore::qrat::Classical;
use qadhm_core::{QField, QRat, QRing};
use serde::Serialize;

use super::{build_q_ops, OpMatrix};
use crate::qcalculus::forms::classical_rules;
use crate::qcalculus::{asd_membership, Calculus, Duality, Engine, Form};
use crate::qspacetime::Chart;

/// `d` of each entry (constant part dropped), as constant-coefficient 1-forms.
fn d_entries<C: QField>(m: &OpMatrix) -> Vec<Vec<Form<C>>> {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| {
                    let mut f = Form::zero();
                    for ((_, e), c) in m.get(i, j).terms() {
                        if let Some(g) = (0..4).find(|&g| e[g] == 1 && e.iter().sum::<u32>() == 1) {
                            f = f.add(&Form::basic(vec![g as u8], C::from_laurent(c)));
                        } else {
                            assert!(e.iter().all(|&k| k == 0), "operator entries have degree <= 1");
                        }
                    }
                    f
                })
                .collect()
        })
        .collect()
}

fn wedge_matrix<C: QField>(eng: &Engine<C>, a: &[Vec<Form<C>>], b: &[Vec<Form<C>>]) -> Vec<Vec<Form<C>>> {
    let inner = b.len();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|k| (0..inner).fold(Form::zero(), |acc, j| acc.add(&eng.wedge(&a[i][j], &b[j][k]))))
                .collect()
        })
        .collect()
}

/// `dᾱ ∧ dβ̄` normalized with the given engine.
pub fn curvature_matrix<C: QField>(d: &ComplexAdhmDatum, eng: &Engine<C>) -> Vec<Vec<Form<C>>> {
    let o = build_q_ops(d, Chart::I);
    wedge_matrix(eng, &d_entries(&o.alpha_bar()), &d_entries(&o.beta_bar()))
}

/// `dᾱ ∧ dβ̄` as plain words, before any 2-form relation is applied.
pub fn curvature_words(d: &ComplexAdhmDatum, chart: Chart) -> Vec<Vec<Form<QRat>>> {
    let o = build_q_ops(d, chart);
    let eng = Engine::<QRat>::new(classical_rules(), None);
    wedge_matrix(&eng, &d_entries(&o.alpha_bar()), &d_entries(&o.beta_bar()))
}

/// Expected block `(a, b)` of the final 2-form matrix (V-blocks only).
pub fn expected_block<C: QRing>(a: usize, b: usize) -> Form<C> {
    let w = |x: u8, y: u8, s: i64| Form::basic(vec![x, y], C::from_int(s));
    match (a, b) {
        (0, 0) => w(0, 3, -1).add(&w(1, 2, -1)),
        (0, 1) => w(0, 2, 2),
        (1, 0) => w(1, 3, -2),
        (1, 1) => w(0, 3, 1).add(&w(1, 2, 1)),
        _ => Form::zero(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    /// Every block is a scalar 2-form times the identity; W rows/columns vanish.
    pub block_scalar: bool,
    /// The 2×2 V-block 2-forms.
    pub blocks: Vec<Vec<String>>,
    pub classes: Vec<Vec<Duality>>,
    /// SD coordinates of each V-block.
    pub sd_coordinates: Vec<Vec<[String; 3]>>,
    pub all_asd: bool,
    pub matches_expected: bool,
    /// Per block: equals the expected block with the opposite sign.
    pub matches_negated: Vec<Vec<bool>>,
    /// At q = 1 the matrix is the negated expected one.
    pub classical_matches_negated: bool,
    pub classical_all_asd: bool,
}

fn blocks_of<C: QField>(m: &[Vec<Form<C>>], c: usize, r: usize) -> Option<Vec<Vec<Form<C>>>> {
    let n = 2 * c + r;
    let mut out = vec![vec![Form::zero(), Form::zero()], vec![Form::zero(), Form::zero()]];
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (i / c, j / c);
            let (ii, jj) = (i % c, j % c);
            let f = &m[i][j];
            if bi >= 2 || bj >= 2 || ii != jj {
                if !f.is_zero() {
                    return None;
                }
                continue;
            }
            if ii == 0 {
                out[bi][bj] = f.clone();
            } else if *f != out[bi][bj] {
                return None;
            }
        }
    }
    Some(out)
}

pub fn curvature_asd(d: &ComplexAdhmDatum, calc: &Calculus) -> CurvatureReport {
    let (c, r) = (d.c, d.r);
    let m = curvature_matrix(d, calc.engine_rat());
    let blocks = blocks_of(&m, c, r);
    let block_scalar = blocks.is_some();
    let blocks = blocks.unwrap_or_else(|| vec![vec![Form::zero(), Form::zero()], vec![Form::zero(), Form::zero()]]);
    let eng = calc.engine_rat();
    let reps: Vec<Vec<_>> = blocks.iter().map(|row| row.iter().map(|f| asd_membership(eng, f)).collect()).collect();
    let classes: Vec<Vec<Duality>> = reps.iter().map(|row| row.iter().map(|x| x.class).collect()).collect();
    let all_asd = block_scalar && classes.iter().flatten().all(|c| *c == Duality::Asd);
    let matches_expected = block_scalar && (0..2).all(|a| (0..2).all(|b| blocks[a][b] == expected_block::<QRat>(a, b)));
    let matches_negated: Vec<Vec<bool>> = (0..2)
        .map(|a| (0..2).map(|b| blocks[a][b] == expected_block::<QRat>(a, b).scale(&QRat::from_int(-1))).collect())
        .collect();

    let ceng: Engine<Classical> = calc.table().engine();
    let cm = curvature_matrix(d, &ceng);
    let cb = blocks_of(&cm, c, r);
    let classical_matches_negated = cb.as_ref().map_or(false, |b| {
        (0..2).all(|x| (0..2).all(|y| b[x][y] == expected_block::<Classical>(x, y).scale(&Classical::from_int(-1))))
    });
    let classical_all_asd = cb.as_ref().map_or(false, |b| {
        b.iter().flatten().all(|f| {
            let g = |u: u8, v: u8| f.component(&[u, v]);
            g(0, 1).is_zero() && g(2, 3).is_zero() && g(0, 3) == g(1, 2)
        })
    });

    CurvatureReport {
        block_scalar,
        blocks: blocks.iter().map(|row| row.iter().map(|f| f.pretty()).collect()).collect(),
        classes,
        sd_coordinates: reps.iter().map(|row| row.iter().map(|x| x.sd.clone()).collect()).collect(),
        all_asd,
        matches_expected,
        matches_negated,
        classical_matches_negated,
        classical_all_asd,
    }
}
