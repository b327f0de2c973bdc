use crate::adhm::{complex_residuals, ComplexAdhmDatum};
use crate::exactcore::{GaussRational, Matrix};
use crate::GaussMatrix;

fn residual_vector(d: &ComplexAdhmDatum) -> Vec<GaussRational> {
    complex_residuals(d).iter().flat_map(|m| m.data().to_vec()).collect()
}

/// The 3c² × (4c² + 4rc) matrix of the derivative of the quadratic map
/// B ↦ (c1, c2, c3) residuals. Columns follow `ComplexAdhmDatum::to_vector`.
pub fn derivative_matrix(d: &ComplexAdhmDatum) -> GaussMatrix {
    let x = d.to_vector();
    let n = x.len();
    let fx = residual_vector(d);
    let rows = fx.len();
    let mut out = Matrix::zeros(rows, n);
    let zero = ComplexAdhmDatum::zero(d.r, d.c).to_vector();
    for k in 0..n {
        // Df(x)h = f(x+h) - f(x) - f(h) for quadratic f
        let mut h = zero.clone();
        h[k] = GaussRational::from_int(1);
        let mut xh = x.clone();
        xh[k] = &xh[k] + &h[k];
        let fxh = residual_vector(&ComplexAdhmDatum::from_vector(d.c, d.r, &xh).expect("shape"));
        let fh = residual_vector(&ComplexAdhmDatum::from_vector(d.c, d.r, &h).expect("shape"));
        for row in 0..rows {
            out[(row, k)] = &(&fxh[row] - &fx[row]) - &fh[row];
        }
    }
    out
}

pub fn derivative_rank(d: &ComplexAdhmDatum) -> usize {
    derivative_matrix(d).rank()
}

/// `(4c² + 4rc) − rank − c²`: the local dimension of the quotient when the
/// derivative is onto and the action is free.
pub fn dimension_audit(d: &ComplexAdhmDatum) -> i64 {
    let rank = derivative_rank(d) as i64;
    d.param_count() as i64 - rank - (d.c * d.c) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhm::{classify, gm, sample_datum_r2};

    #[test]
    fn sample_datum_full_rank() {
        let d = sample_datum_r2();
        assert_eq!(derivative_matrix(&d).shape(), (3, 12));
        assert_eq!(derivative_rank(&d), 3);
        assert_eq!(dimension_audit(&d), 8);
    }

    #[test]
    fn full_rank_without_c_stability() {
        // unstable at [0:1] (ĩ = 0 there) but costable there, stable elsewhere
        let mut d = ComplexAdhmDatum::zero(2, 1);
        d.i1 = gm(&[&[1, 0]]);
        d.j2 = gm(&[&[0], &[1]]);
        assert!(d.is_solution());
        assert!(!classify(&d).stable_everywhere);
        assert_eq!(derivative_rank(&d), 3);
    }

    #[test]
    fn zero_datum_deficient() {
        assert_eq!(derivative_rank(&ComplexAdhmDatum::zero(1, 1)), 0);
    }
}
