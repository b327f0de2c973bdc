//! Complex and real ADHM data, the complex ADHM equations, and the
//! stability taxonomy over P¹.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exactcore::{ExactError, GaussRational, Matrix};
use crate::GaussMatrix;

mod derivative;
mod sample;
mod stability;

pub use derivative::{derivative_matrix, derivative_rank, dimension_audit};
pub use sample::{
    c1_datum, c1_generator, c_stable_solution, is_unitary, non_c_stable_solution, random_gl, random_matrix,
    random_nonzero, random_scalar, random_unitary, rank_one_solution, real_solution_xi0, real_solution_xi_positive,
    rng, unstable_datum, AdhmRng,
};
pub use stability::{
    classify, costability_gcd, is_costable, is_stable, krylov_minors, ordered_monomial_rank, real_stratify,
    stability_gcd, stabilizer_dim, RealStratum, StabilityReport, StabilityWitness,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AdhmError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `(B11, B12, B21, B22, i1, i2, j1, j2)` with `B` c×c, `i` c×r, `j` r×c.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexAdhmDatum {
    pub c: usize,
    pub r: usize,
    pub b11: GaussMatrix,
    pub b12: GaussMatrix,
    pub b21: GaussMatrix,
    pub b22: GaussMatrix,
    pub i1: GaussMatrix,
    pub i2: GaussMatrix,
    pub j1: GaussMatrix,
    pub j2: GaussMatrix,
}

/// `(B1, B2, i, j)` with the same shapes.
#[derive(Clone, Debug, PartialEq)]
pub struct RealAdhmDatum {
    pub c: usize,
    pub r: usize,
    pub b1: GaussMatrix,
    pub b2: GaussMatrix,
    pub i: GaussMatrix,
    pub j: GaussMatrix,
}

fn check_shape(name: &str, m: &GaussMatrix, rows: usize, cols: usize) -> Result<(), AdhmError> {
    if m.shape() != (rows, cols) {
        return Err(AdhmError::Shape(format!("{name} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    Ok(())
}

impl ComplexAdhmDatum {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        b11: GaussMatrix,
        b12: GaussMatrix,
        b21: GaussMatrix,
        b22: GaussMatrix,
        i1: GaussMatrix,
        i2: GaussMatrix,
        j1: GaussMatrix,
        j2: GaussMatrix,
    ) -> Result<Self, AdhmError> {
        let c = b11.rows();
        let r = i1.cols();
        let d = ComplexAdhmDatum { c, r, b11, b12, b21, b22, i1, i2, j1, j2 };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), AdhmError> {
        let (c, r) = (self.c, self.r);
        if c == 0 || r == 0 {
            return Err(AdhmError::Shape("c and r must be positive".into()));
        }
        for (n, m) in [("B11", &self.b11), ("B12", &self.b12), ("B21", &self.b21), ("B22", &self.b22)] {
            check_shape(n, m, c, c)?;
        }
        check_shape("i1", &self.i1, c, r)?;
        check_shape("i2", &self.i2, c, r)?;
        check_shape("j1", &self.j1, r, c)?;
        check_shape("j2", &self.j2, r, c)?;
        Ok(())
    }

    pub fn zero(r: usize, c: usize) -> Self {
        let z = |a, b| Matrix::zeros(a, b);
        ComplexAdhmDatum {
            c,
            r,
            b11: z(c, c),
            b12: z(c, c),
            b21: z(c, c),
            b22: z(c, c),
            i1: z(c, r),
            i2: z(c, r),
            j1: z(r, c),
            j2: z(r, c),
        }
    }

    /// The eight matrices in the fixed order (B11, B12, B21, B22, i1, i2, j1, j2).
    pub fn parts(&self) -> [&GaussMatrix; 8] {
        [&self.b11, &self.b12, &self.b21, &self.b22, &self.i1, &self.i2, &self.j1, &self.j2]
    }

    pub fn from_parts(c: usize, r: usize, p: [GaussMatrix; 8]) -> Result<Self, AdhmError> {
        let [b11, b12, b21, b22, i1, i2, j1, j2] = p;
        let d = ComplexAdhmDatum { c, r, b11, b12, b21, b22, i1, i2, j1, j2 };
        d.validate()?;
        Ok(d)
    }

    /// Number of complex parameters, `4c² + 4rc`.
    pub fn param_count(&self) -> usize {
        4 * self.c * self.c + 4 * self.r * self.c
    }

    /// Flatten into a parameter vector (row-major, parts in fixed order).
    pub fn to_vector(&self) -> Vec<GaussRational> {
        self.parts().iter().flat_map(|m| m.data().iter().cloned()).collect()
    }

    pub fn from_vector(c: usize, r: usize, v: &[GaussRational]) -> Result<Self, AdhmError> {
        if v.len() != 4 * c * c + 4 * r * c {
            return Err(AdhmError::Shape("parameter vector length".into()));
        }
        let shapes = [(c, c), (c, c), (c, c), (c, c), (c, r), (c, r), (r, c), (r, c)];
        let mut off = 0;
        let mut mats = Vec::with_capacity(8);
        for (a, b) in shapes {
            mats.push(Matrix::from_vec(a, b, v[off..off + a * b].to_vec())?);
            off += a * b;
        }
        let arr: [GaussMatrix; 8] = mats.try_into().expect("eight parts");
        ComplexAdhmDatum::from_parts(c, r, arr)
    }

    /// The pencils B̃₁, B̃₂, ĩ, j̃ evaluated at [z:w].
    pub fn eval_at(
        &self,
        z: &GaussRational,
        w: &GaussRational,
    ) -> (GaussMatrix, GaussMatrix, GaussMatrix, GaussMatrix) {
        let lin = |a: &GaussMatrix, b: &GaussMatrix| a.scale(z).add(&b.scale(w));
        (lin(&self.b11, &self.b21), lin(&self.b12, &self.b22), lin(&self.i1, &self.i2), lin(&self.j1, &self.j2))
    }

    /// `g·(B, i, j) = (g B g⁻¹, g i, j g⁻¹)`.
    pub fn act(&self, g: &GaussMatrix) -> Result<Self, AdhmError> {
        let gi = g.inverse()?;
        let conj = |b: &GaussMatrix| g.mul(b).mul(&gi);
        Ok(ComplexAdhmDatum {
            c: self.c,
            r: self.r,
            b11: conj(&self.b11),
            b12: conj(&self.b12),
            b21: conj(&self.b21),
            b22: conj(&self.b22),
            i1: g.mul(&self.i1),
            i2: g.mul(&self.i2),
            j1: self.j1.mul(&gi),
            j2: self.j2.mul(&gi),
        })
    }

    /// Action of `h ∈ GL(W)`: `i ↦ i h⁻¹`, `j ↦ h j`.
    pub fn act_w(&self, h: &GaussMatrix) -> Result<Self, AdhmError> {
        let hi = h.inverse()?;
        Ok(ComplexAdhmDatum {
            i1: self.i1.mul(&hi),
            i2: self.i2.mul(&hi),
            j1: h.mul(&self.j1),
            j2: h.mul(&self.j2),
            ..self.clone()
        })
    }

    /// The involution `(B22†, −B21†, −B12†, B11†, j2†, −j1†, −i2†, i1†)`.
    pub fn dagger(&self) -> Self {
        ComplexAdhmDatum {
            c: self.c,
            r: self.r,
            b11: self.b22.dagger(),
            b12: self.b21.dagger().neg(),
            b21: self.b12.dagger().neg(),
            b22: self.b11.dagger(),
            i1: self.j2.dagger(),
            i2: self.j1.dagger().neg(),
            j1: self.i2.dagger().neg(),
            j2: self.i1.dagger(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.dagger() == *self
    }

    pub fn is_solution(&self) -> bool {
        complex_residuals(self).iter().all(|m| m.is_zero())
    }
}

impl RealAdhmDatum {
    pub fn new(b1: GaussMatrix, b2: GaussMatrix, i: GaussMatrix, j: GaussMatrix) -> Result<Self, AdhmError> {
        let c = b1.rows();
        let r = i.cols();
        let d = RealAdhmDatum { c, r, b1, b2, i, j };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), AdhmError> {
        let (c, r) = (self.c, self.r);
        if c == 0 || r == 0 {
            return Err(AdhmError::Shape("c and r must be positive".into()));
        }
        check_shape("B1", &self.b1, c, c)?;
        check_shape("B2", &self.b2, c, c)?;
        check_shape("i", &self.i, c, r)?;
        check_shape("j", &self.j, r, c)?;
        Ok(())
    }

    pub fn zero(r: usize, c: usize) -> Self {
        RealAdhmDatum {
            c,
            r,
            b1: Matrix::zeros(c, c),
            b2: Matrix::zeros(c, c),
            i: Matrix::zeros(c, r),
            j: Matrix::zeros(r, c),
        }
    }

    /// Unitary change of frame on V and W: `B ↦ uBu†`, `i ↦ u i h†`, `j ↦ h j u†`.
    pub fn unitary_act(&self, u: &GaussMatrix, h: &GaussMatrix) -> Self {
        let ud = u.dagger();
        let hd = h.dagger();
        RealAdhmDatum {
            c: self.c,
            r: self.r,
            b1: u.mul(&self.b1).mul(&ud),
            b2: u.mul(&self.b2).mul(&ud),
            i: u.mul(&self.i).mul(&hd),
            j: h.mul(&self.j).mul(&ud),
        }
    }
}

/// `([B11,B12]+i1j1, [B21,B22]+i2j2, [B11,B22]+[B21,B12]+i1j2+i2j1)`.
pub fn complex_residuals(d: &ComplexAdhmDatum) -> [GaussMatrix; 3] {
    [
        d.b11.commutator(&d.b12).add(&d.i1.mul(&d.j1)),
        d.b21.commutator(&d.b22).add(&d.i2.mul(&d.j2)),
        d.b11.commutator(&d.b22).add(&d.b21.commutator(&d.b12)).add(&d.i1.mul(&d.j2)).add(&d.i2.mul(&d.j1)),
    ]
}

/// `[B̃₁,B̃₂] + ĩj̃` at [z:w].
pub fn pencil_residual(d: &ComplexAdhmDatum, z: &GaussRational, w: &GaussRational) -> GaussMatrix {
    let (b1, b2, i, j) = d.eval_at(z, w);
    b1.commutator(&b2).add(&i.mul(&j))
}

/// `([B1,B2]+ij, [B1,B1†]+[B2,B2†]+ii†−j†j−ξ·1)`.
pub fn real_residuals(d: &RealAdhmDatum, xi: &GaussRational) -> [GaussMatrix; 2] {
    let first = d.b1.commutator(&d.b2).add(&d.i.mul(&d.j));
    let second =
        d.b1.commutator(&d.b1.dagger())
            .add(&d.b2.commutator(&d.b2.dagger()))
            .add(&d.i.mul(&d.i.dagger()))
            .sub(&d.j.dagger().mul(&d.j))
            .sub(&Matrix::scalar(d.c, xi.clone()));
    [first, second]
}

/// `(B1, B2, −B2†, B1†, i, −j†, j, i†)`; rejects inputs that do not solve
/// the real equations with ξ = 0.
pub fn embed_real(d: &RealAdhmDatum) -> Result<ComplexAdhmDatum, AdhmError> {
    d.validate()?;
    let res = real_residuals(d, &GaussRational::from_int(0));
    if let Some(k) = res.iter().position(|m| !m.is_zero()) {
        return Err(AdhmError::NotASolution(format!("real residual {} is nonzero", k + 1)));
    }
    let out = ComplexAdhmDatum {
        c: d.c,
        r: d.r,
        b11: d.b1.clone(),
        b12: d.b2.clone(),
        b21: d.b2.dagger().neg(),
        b22: d.b1.dagger(),
        i1: d.i.clone(),
        i2: d.j.dagger().neg(),
        j1: d.j.clone(),
        j2: d.i.dagger(),
    };
    if !out.is_solution() {
        return Err(AdhmError::NotASolution("embedded datum fails the complex equations".into()));
    }
    Ok(out)
}

fn read_matrix(v: &Value, key: &str, rows: usize, cols: usize) -> Result<GaussMatrix, AdhmError> {
    let raw = v.get(key).ok_or_else(|| AdhmError::Invalid(format!("missing key {key}")))?;
    let m: GaussMatrix = serde_json::from_value(raw.clone()).map_err(|e| AdhmError::Invalid(format!("{key}: {e}")))?;
    m.with_shape_hint(rows, cols).map_err(|e| AdhmError::Shape(format!("{key}: {e}")))
}

fn read_dims(v: &Value) -> Result<(usize, usize), AdhmError> {
    let get = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| AdhmError::Invalid(format!("missing or invalid {k}")))
    };
    Ok((get("c")?, get("r")?))
}

/// A datum file of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Datum {
    Complex(ComplexAdhmDatum),
    Real(RealAdhmDatum),
}

impl Datum {
    pub fn from_json(v: &Value) -> Result<Self, AdhmError> {
        let kind = v.get("kind").and_then(Value::as_str).unwrap_or("complex");
        let (c, r) = read_dims(v)?;
        match kind {
            "complex" => {
                let d = ComplexAdhmDatum {
                    c,
                    r,
                    b11: read_matrix(v, "B11", c, c)?,
                    b12: read_matrix(v, "B12", c, c)?,
                    b21: read_matrix(v, "B21", c, c)?,
                    b22: read_matrix(v, "B22", c, c)?,
                    i1: read_matrix(v, "i1", c, r)?,
                    i2: read_matrix(v, "i2", c, r)?,
                    j1: read_matrix(v, "j1", r, c)?,
                    j2: read_matrix(v, "j2", r, c)?,
                };
                d.validate()?;
                Ok(Datum::Complex(d))
            }
            "real" => {
                let d = RealAdhmDatum {
                    c,
                    r,
                    b1: read_matrix(v, "B1", c, c)?,
                    b2: read_matrix(v, "B2", c, c)?,
                    i: read_matrix(v, "i", c, r)?,
                    j: read_matrix(v, "j", r, c)?,
                };
                d.validate()?;
                Ok(Datum::Real(d))
            }
            other => Err(AdhmError::Invalid(format!("unknown kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Datum::Complex(d) => d.to_json(),
            Datum::Real(d) => d.to_json(),
        }
    }
}

fn mat_json(m: &GaussMatrix) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}

impl ComplexAdhmDatum {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "kind": "complex", "c": self.c, "r": self.r,
            "B11": mat_json(&self.b11), "B12": mat_json(&self.b12),
            "B21": mat_json(&self.b21), "B22": mat_json(&self.b22),
            "i1": mat_json(&self.i1), "i2": mat_json(&self.i2),
            "j1": mat_json(&self.j1), "j2": mat_json(&self.j2),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, AdhmError> {
        match Datum::from_json(v)? {
            Datum::Complex(d) => Ok(d),
            Datum::Real(_) => Err(AdhmError::Invalid("expected a complex datum".into())),
        }
    }
}

impl RealAdhmDatum {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "kind": "real", "c": self.c, "r": self.r,
            "B1": mat_json(&self.b1), "B2": mat_json(&self.b2),
            "i": mat_json(&self.i), "j": mat_json(&self.j),
        })
    }
}

impl Serialize for ComplexAdhmDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexAdhmDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        ComplexAdhmDatum::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Helpers for small literal matrices.
pub fn gm(rows: &[&[i64]]) -> GaussMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussRational::from_int(x)).collect()).collect())
        .expect("rectangular literal")
}

/// The r = 2, c = 1 datum with B = 0, i1 = (1,0), i2 = (0,1), j = 0.
pub fn sample_datum_r2() -> ComplexAdhmDatum {
    let mut d = ComplexAdhmDatum::zero(2, 1);
    d.i1 = gm(&[&[1, 0]]);
    d.i2 = gm(&[&[0, 1]]);
    d
}

/// The r = 3, c = 1 datum with B = 0, i1 = (1,0,0), i2 = (0,1,0),
/// j1 = (0,0,1)ᵀ, j2 = 0.
pub fn sample_datum_r3() -> ComplexAdhmDatum {
    let mut d = ComplexAdhmDatum::zero(3, 1);
    d.i1 = gm(&[&[1, 0, 0]]);
    d.i2 = gm(&[&[0, 1, 0]]);
    d.j1 = gm(&[&[0], &[0], &[1]]);
    d
}

/// The c = 1, r = 2 real solution B = 0, i = (1,0), j = (0,1)ᵀ at ξ = 0.
pub fn basic_real_datum() -> RealAdhmDatum {
    RealAdhmDatum::new(gm(&[&[0]]), gm(&[&[0]]), gm(&[&[1, 0]]), gm(&[&[0], &[1]])).expect("shapes")
}
