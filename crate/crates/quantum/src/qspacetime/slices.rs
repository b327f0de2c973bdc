//! Finite-dimensional degree slices: the det-multiplication map and the
//! det-power harmonic basis.

use qadhm_core::exactcore::qrat::Classical;
use qadhm_core::{Matrix, QField, QLaurent, QSpec};
use serde::Serialize;

use super::{basis_element, det_x, harmonics_of_degree, Chart, Exp, NcPoly};

/// Generic specialization used for rank lower bounds.
pub type Generic = QSpec<5, 3>;

/// Ordered monomials of total degree `d`, lexicographic.
pub fn monomials_of_degree(d: u32) -> Vec<Exp> {
    let mut v = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                v.push([a, b, c, d - a - b - c]);
            }
        }
    }
    v
}

pub fn monomials_up_to(d: u32) -> Vec<Exp> {
    (0..=d).flat_map(monomials_of_degree).collect()
}

/// Columns = polynomials, rows = the given monomials (chart I).
pub fn slice_matrix<F: QField>(polys: &[NcPoly<QLaurent>], rows: &[Exp]) -> Matrix<F> {
    Matrix::from_fn(rows.len(), polys.len(), |i, j| F::from_laurent(&polys[j].coeff(&rows[i])))
}

#[derive(Clone, Debug, Serialize)]
pub struct DetMultReport {
    pub degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Rank at q = 5/3; a lower bound for the rank over formal q.
    pub rank: usize,
    /// Every monomial's image has leading term `(a+1, b, c, d+1)` with a unit
    /// coefficient, so the map is triangular with unit diagonal.
    pub leading_ok: bool,
    pub full_rank: bool,
}

/// Left multiplication by det from degree `d` into degree `d + 2`.
pub fn det_mult_rank(d: u32) -> DetMultReport {
    let det = det_x::<QLaurent>();
    let src = monomials_of_degree(d);
    let tgt = monomials_of_degree(d + 2);
    let images: Vec<NcPoly<QLaurent>> =
        src.iter().map(|m| det.mul(&NcPoly::monomial(Chart::I, 0, *m, QLaurent::from_int(1)))).collect();
    let leading_ok = src.iter().zip(&images).all(|(m, img)| {
        let lead = [m[0] + 1, m[1], m[2], m[3] + 1];
        match img.terms().iter().next_back() {
            Some(((_, e), c)) => *e == lead && c.as_monomial().is_some(),
            None => false,
        }
    });
    let rank = slice_matrix::<Generic>(&images, &tgt).rank();
    DetMultReport {
        degree: d,
        source_dim: src.len(),
        target_dim: tgt.len(),
        rank,
        leading_ok,
        full_rank: rank == src.len() && leading_ok,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub degree: u32,
    pub elements: usize,
    pub monomials: usize,
    pub rank_generic: usize,
    pub rank_classical: usize,
    pub independent: bool,
}

/// The elements `det^k X^l_{m,n}` with `2k + 2l = d` against the ordered
/// monomials of degree `d`.
pub fn basis_independence(d: u32) -> BasisReport {
    let mut polys = Vec::new();
    for k in 0..=(d / 2) as i64 {
        let two_l = d as i64 - 2 * k;
        for idx in harmonics_of_degree(two_l, k) {
            polys.push(basis_element(&idx).expect("valid index"));
        }
    }
    let rows = monomials_of_degree(d);
    let rank_generic = slice_matrix::<Generic>(&polys, &rows).rank();
    let rank_classical = slice_matrix::<Classical>(&polys, &rows).rank();
    BasisReport {
        degree: d,
        elements: polys.len(),
        monomials: rows.len(),
        rank_generic,
        rank_classical,
        independent: polys.len() == rows.len() && rank_generic == rows.len() && rank_classical == rows.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        for d in 0..6u32 {
            let n = ((d + 1) * (d + 2) * (d + 3) / 6) as usize;
            assert_eq!(monomials_of_degree(d).len(), n);
        }
    }

    #[test]
    fn det_mult_small() {
        let r0 = det_mult_rank(0);
        assert_eq!((r0.rank, r0.full_rank), (1, true));
        let r1 = det_mult_rank(1);
        assert_eq!((r1.source_dim, r1.target_dim, r1.rank), (4, 20, 4));
    }

    #[test]
    fn basis_small() {
        let b1 = basis_independence(1);
        assert_eq!((b1.elements, b1.rank_generic), (4, 4));
        let b2 = basis_independence(2);
        assert_eq!((b2.elements, b2.monomials), (10, 10));
        assert!(b2.independent);
    }
}
