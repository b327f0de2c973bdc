//! Matrices whose entries are affine-linear forms in named variables.

use serde::{Deserialize, Serialize};

use crate::exactcore::{ExactError, Field, Matrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pencil<T> {
    pub vars: Vec<String>,
    /// One coefficient matrix per variable, same order as `vars`.
    pub coeffs: Vec<Matrix<T>>,
    #[serde(rename = "const")]
    pub constant: Matrix<T>,
}

impl<T: Field> Pencil<T> {
    pub fn new(vars: Vec<String>, coeffs: Vec<Matrix<T>>, constant: Matrix<T>) -> Result<Self, ExactError> {
        if vars.len() != coeffs.len() {
            return Err(ExactError::Shape("one coefficient matrix per variable".into()));
        }
        if coeffs.iter().any(|m| m.shape() != constant.shape()) {
            return Err(ExactError::Shape("pencil coefficients differ in shape".into()));
        }
        Ok(Pencil { vars, coeffs, constant })
    }

    /// Homogeneous pencil (zero constant term).
    pub fn linear(vars: &[&str], coeffs: Vec<Matrix<T>>) -> Result<Self, ExactError> {
        let shape = coeffs.first().map_or((0, 0), |m| m.shape());
        Pencil::new(vars.iter().map(|s| s.to_string()).collect(), coeffs, Matrix::zeros(shape.0, shape.1))
    }

    pub fn shape(&self) -> (usize, usize) {
        self.constant.shape()
    }

    pub fn coeff(&self, var: &str) -> Option<&Matrix<T>> {
        self.vars.iter().position(|v| v == var).map(|k| &self.coeffs[k])
    }

    pub fn evaluate(&self, point: &[T]) -> Result<Matrix<T>, ExactError> {
        if point.len() != self.vars.len() {
            return Err(ExactError::Shape(format!(
                "pencil in {} variables evaluated at {} coordinates",
                self.vars.len(),
                point.len()
            )));
        }
        let mut acc = self.constant.clone();
        for (m, x) in self.coeffs.iter().zip(point) {
            if !x.is_zero() {
                acc = acc.add(&m.scale(x));
            }
        }
        Ok(acc)
    }

    /// Left product `m * self`.
    pub fn left_mul(&self, m: &Matrix<T>) -> Self {
        Pencil {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|c| m.mul(c)).collect(),
            constant: m.mul(&self.constant),
        }
    }

    /// Right product `self * m`.
    pub fn right_mul(&self, m: &Matrix<T>) -> Self {
        Pencil {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul(m)).collect(),
            constant: self.constant.mul(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::GaussRational;

    #[test]
    fn evaluation_is_linear_combination() {
        let g = |x: i64| GaussRational::from_int(x);
        let a = Matrix::from_rows(vec![vec![g(1), g(0)], vec![g(0), g(2)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![g(0), g(1)], vec![g(1), g(0)]]).unwrap();
        let p = Pencil::linear(&["z", "w"], vec![a, b]).unwrap();
        let v = p.evaluate(&[g(3), GaussRational::i()]).unwrap();
        assert_eq!(v[(0, 0)], g(3));
        assert_eq!(v[(0, 1)], GaussRational::i());
        assert_eq!(v[(1, 1)], g(6));
        assert!(p.evaluate(&[g(1)]).is_err());
    }
}
