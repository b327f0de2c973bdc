//! Operators built on a derived calculus: partial derivatives, the
//! Laplacians, Hodge star, SD/ASD split and the scalar Penrose map.

use num_traits::{One, Zero};
use qadhm_core::exactcore::laurent::qint;
use qadhm_core::{Matrix, QLaurent, QRat, QRing};
use serde::{Deserialize, Serialize};

use super::forms::{Engine, Form};
use super::table::{derive_table, CalculusTable, PChoice, TableError};
use crate::qspacetime::{
    basis_element, det_x, harmonic, harmonics_of_degree, monomials_of_degree, monomials_up_to, slice_matrix, Chart,
    Exp, Generic, HarmonicIndex, NcPoly,
};

pub type QPoly = NcPoly<QLaurent>;
pub type RatPoly = NcPoly<QRat>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CalcError {
    #[error("Hodge star on 2-forms is not defined; use asd_membership")]
    DegreeTwoStar,
    #[error("form mixes degrees {0:?}")]
    MixedDegree(Vec<usize>),
    #[error("malformed Cech monomial {0}: {1}")]
    MalformedCech(String, String),
}

/// Derived calculus together with its normal-form engines.
pub struct Calculus {
    table: CalculusTable,
    eng: Engine<QLaurent>,
    eng_rat: Engine<QRat>,
}

impl Calculus {
    pub fn new(p: PChoice) -> Result<Self, TableError> {
        Ok(Self::from_table(derive_table(p)?))
    }

    pub fn from_table(table: CalculusTable) -> Self {
        let eng = table.engine();
        let eng_rat = table.engine();
        Calculus { table, eng, eng_rat }
    }

    pub fn p(&self) -> PChoice {
        self.table.p
    }

    pub fn table(&self) -> &CalculusTable {
        &self.table
    }

    pub fn engine(&self) -> &Engine<QLaurent> {
        &self.eng
    }

    pub fn engine_rat(&self) -> &Engine<QRat> {
        &self.eng_rat
    }

    /// `p^k` as a Laurent polynomial.
    pub fn p_pow(&self, k: i32) -> QLaurent {
        self.p().p_pow(k)
    }

    pub fn partials(&self, f: &QPoly) -> [QPoly; 4] {
        self.eng.partials(f)
    }

    pub fn partial(&self, g: usize, f: &QPoly) -> QPoly {
        self.eng.partials(f)[g].clone()
    }

    pub fn d_poly(&self, f: &QPoly) -> Form<QLaurent> {
        self.eng.d_poly(f)
    }

    pub fn d(&self, f: &Form<QLaurent>) -> Form<QLaurent> {
        self.eng.d(f)
    }

    /// `∂11 ∂22 - ∂21 ∂12`.
    pub fn laplacian(&self, f: &QPoly) -> QPoly {
        let p = self.partials(f);
        self.partial(0, &p[3]).sub(&self.partial(2, &p[1]))
    }

    /// `∂22 ∂11 - ∂12 ∂21`.
    pub fn laplacian_alt(&self, f: &QPoly) -> QPoly {
        let p = self.partials(f);
        self.partial(3, &p[0]).sub(&self.partial(1, &p[2]))
    }

    /// `Σ (∂_g f) x_g`.
    pub fn delta_op(&self, f: &QPoly) -> QPoly {
        let p = self.partials(f);
        (0..4).fold(NcPoly::zero(Chart::I), |acc, g| acc.add(&p[g].mul(&NcPoly::gen(Chart::I, g))))
    }

    /// Right multiplication by det.
    pub fn mult_det(&self, f: &QPoly) -> QPoly {
        f.mul(&det_x())
    }

    /// `□` followed by right multiplication by det; the operator whose
    /// spectrum the recurrence built from right multiplication computes.
    pub fn tilde_laplacian(&self, f: &QPoly) -> QPoly {
        self.mult_det(&self.laplacian(f))
    }

    /// `det · □` with det multiplied on the left. On `det^k X^l_{m,n}` it
    /// differs from [`Self::tilde_laplacian`] by `q^(2(m-n))`.
    pub fn tilde_laplacian_left(&self, f: &QPoly) -> QPoly {
        det_x::<QLaurent>().mul(&self.laplacian(f))
    }

    /// `p^(2k+2l-3) [k][k+2l+1]`.
    pub fn tilde_eigenvalue(&self, k: i64, two_l: i64) -> QLaurent {
        tilde_eigenvalue(self.p(), k, two_l)
    }

    /// `p^(2l-1) [2l]`.
    pub fn delta_eigenvalue(&self, two_l: i64) -> QLaurent {
        &self.p_pow(two_l as i32 - 1) * &qint(two_l)
    }

    /// Predicted `∂_g X^l_{m,n}`: coefficient times the shifted harmonic.
    pub fn predicted_partial(&self, g: usize, idx: &HarmonicIndex) -> QPoly {
        let (dm, dn): (i64, i64) = [(1, 1), (-1, 1), (1, -1), (-1, -1)][g];
        let coef = if dm == 1 {
            &QLaurent::q_pow(((idx.two_m + idx.two_l) / 2) as i32) * &qint(idx.l_minus_m())
        } else {
            &QLaurent::q_pow(((idx.two_m - idx.two_l) / 2) as i32) * &qint(idx.l_plus_m())
        };
        let coef = &self.p_pow(idx.two_l as i32 - 1) * &coef;
        let shifted = HarmonicIndex::new(idx.two_l - 1, idx.two_m + dm, idx.two_n + dn, 0);
        if idx.two_l == 0 || coef.is_zero() || !shifted.in_range() {
            return NcPoly::zero(Chart::I);
        }
        harmonic(&shifted).expect("in range").scale(&coef)
    }

    /// All four partials of `X^l_{m,n}` agree with the closed form.
    pub fn check_partials(&self, idx: &HarmonicIndex) -> bool {
        let x = harmonic(idx).expect("valid index");
        let p = self.partials(&x);
        (0..4).all(|g| p[g] == self.predicted_partial(g, idx))
    }

    pub fn eigen_report(&self, k: i64, two_l: i64) -> EigenReport {
        let mut tilde_ok = true;
        let mut delta_ok = true;
        let mut harmonic_ok = true;
        let mut left_literal = true;
        let mut left_twisted = true;
        let lambda = self.tilde_eigenvalue(k, two_l);
        let mu = self.delta_eigenvalue(two_l);
        for idx in harmonics_of_degree(two_l, k) {
            let f = basis_element(&idx).expect("valid index");
            tilde_ok &= self.tilde_laplacian(&f) == f.scale(&lambda);
            let left = self.tilde_laplacian_left(&f);
            left_literal &= left == f.scale(&lambda);
            left_twisted &= left == f.scale(&(&lambda * &QLaurent::q_pow((idx.two_m - idx.two_n) as i32)));
            if k == 0 {
                let x = harmonic(&idx).expect("valid index");
                delta_ok &= self.delta_op(&x) == x.scale(&mu);
                harmonic_ok &= self.laplacian(&x).is_zero();
            }
        }
        EigenReport {
            p_choice: self.p(),
            k,
            two_l,
            eigenvalue: lambda,
            tilde_eigen_holds: tilde_ok,
            left_mult_literal_holds: left_literal,
            left_mult_twist_holds: left_twisted,
            delta_eigenvalue: mu,
            delta_eigen_holds: delta_ok,
            harmonic: harmonic_ok,
        }
    }

    /// Hodge star on forms of degree 0, 1, 3 or 4 (left-linear).
    pub fn hodge_star(&self, w: &Form<QRat>) -> Result<Form<QRat>, CalcError> {
        let degs: std::collections::BTreeSet<usize> = w.words().iter().map(|x| x.len()).collect();
        if degs.len() > 1 {
            return Err(CalcError::MixedDegree(degs.into_iter().collect()));
        }
        let deg = degs.into_iter().next().unwrap_or(0);
        let images: Vec<(Vec<u8>, Form<QRat>)> = match deg {
            0 => vec![(vec![], Form::basic(VOLUME.to_vec(), QRat::q_pow(-1)))],
            1 => (0..4u8).map(|g| (vec![g], self.star_one(g as usize))).collect(),
            3 => self.star_three_images(),
            4 => vec![(VOLUME.to_vec(), Form::basic(vec![], QRat::q_pow(1)))],
            _ => return Err(CalcError::DegreeTwoStar),
        };
        let w = self.eng_rat.normalize(w);
        let mut out = Form::zero();
        for word in w.words() {
            let (_, img) = images.iter().find(|(k, _)| *k == word).expect("ordered basis word");
            out = out.add(&img.left_mul(&w.component(&word)));
        }
        Ok(out)
    }

    /// `*dx_g` in ordered normal form.
    fn star_one(&self, g: usize) -> Form<QRat> {
        let word: Vec<u8> = STAR_ONE_WORDS[g].to_vec();
        let c = -(&QRat::one() / &QRat::qint(2));
        self.eng_rat.normalize(&Form::basic(word, c))
    }

    /// Inverse of the 1-form star on the ordered 3-form basis.
    fn star_three_images(&self) -> Vec<(Vec<u8>, Form<QRat>)> {
        let basis3: [[u8; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let m = Matrix::from_fn(4, 4, |i, g| {
            let img = self.star_one(g);
            img.terms().get(&(basis3[i].to_vec(), [0; 4])).cloned().unwrap_or_else(QRat::zero)
        });
        let inv = m.inverse().expect("1-form star is invertible");
        basis3
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let f = (0..4).fold(Form::zero(), |acc, g| acc.add(&Form::basic(vec![g as u8], inv[(g, i)].clone())));
                (w.to_vec(), f)
            })
            .collect()
    }

    /// `* d * d f`.
    pub fn laplace_via_star(&self, f: &RatPoly) -> RatPoly {
        let df = self.eng_rat.d_poly(f);
        let s = self.hodge_star(&df).expect("1-form");
        let dd = self.eng_rat.d(&s);
        let top = self.hodge_star(&dd).expect("4-form");
        top.component(&[])
    }

    /// Laplacian with coefficients promoted to rational functions.
    pub fn laplacian_rat(&self, f: &RatPoly) -> RatPoly {
        let p = self.eng_rat.partials(f);
        let a = self.eng_rat.partials(&p[3])[0].clone();
        let b = self.eng_rat.partials(&p[1])[2].clone();
        a.sub(&b)
    }

    /// dim ker □ on the degree-`d` slice, computed at a generic specialization.
    pub fn harmonic_kernel_dim(&self, d: u32) -> usize {
        let src = monomials_of_degree(d);
        if d < 2 {
            return src.len();
        }
        let images: Vec<QPoly> =
            src.iter().map(|e| self.laplacian(&NcPoly::monomial(Chart::I, 0, *e, QLaurent::one()))).collect();
        let rank = slice_matrix::<Generic>(&images, &monomials_of_degree(d - 2)).rank();
        src.len() - rank
    }

    /// Operator identities checked on every ordered monomial of degree `<= max_deg`.
    pub fn operator_identities(&self, max_deg: u32) -> Vec<(String, bool)> {
        let mons: Vec<QPoly> =
            monomials_up_to(max_deg).iter().map(|e| NcPoly::monomial(Chart::I, 0, *e, QLaurent::one())).collect();
        let p = |k: i32| self.p_pow(k);
        let dd = |a: usize, b: usize, f: &QPoly| self.partial(a, &self.partial(b, f));
        let q2 = QLaurent::q_pow(2);
        let qm2 = QLaurent::q_pow(-2);
        let extra = &p(-2) + &QLaurent::one();
        let mut checks: Vec<(String, Box<dyn Fn(&QPoly) -> bool + '_>)> = vec![
            ("laplacian orderings agree".into(), Box::new(|f| self.laplacian(f) == self.laplacian_alt(f))),
            ("d11 d21 = d21 d11".into(), Box::new(|f| dd(0, 2, f) == dd(2, 0, f))),
            ("d12 d22 = d22 d12".into(), Box::new(|f| dd(1, 3, f) == dd(3, 1, f))),
            (
                "[d11,d22] + [d12,d21] = 0".into(),
                Box::new(|f| dd(0, 3, f).sub(&dd(3, 0, f)).add(&dd(1, 2, f)).sub(&dd(2, 1, f)).is_zero()),
            ),
            ("d11 d12 = q^-2 d12 d11".into(), Box::new(|f| dd(0, 1, f) == dd(1, 0, f).scale(&qm2))),
            ("d21 d22 = q^-2 d22 d21".into(), Box::new(|f| dd(2, 3, f) == dd(3, 2, f).scale(&qm2))),
            ("d12 d21 = q^2 d21 d12".into(), Box::new(|f| dd(1, 2, f) == dd(2, 1, f).scale(&q2))),
            (
                "laplacian(f det) = p^4 laplacian(f) det + p^2 delta(f) + (p^-2+1) f".into(),
                Box::new(|f| {
                    let lhs = self.laplacian(&self.mult_det(f));
                    let rhs = self
                        .mult_det(&self.laplacian(f))
                        .scale(&p(4))
                        .add(&self.delta_op(f).scale(&p(2)))
                        .add(&f.scale(&extra));
                    lhs == rhs
                }),
            ),
            (
                "delta(f det) = p^2 delta(f) det + (p^-2+1) f det".into(),
                Box::new(|f| {
                    let lhs = self.delta_op(&self.mult_det(f));
                    let rhs = self.mult_det(&self.delta_op(f)).scale(&p(2)).add(&self.mult_det(f).scale(&extra));
                    lhs == rhs
                }),
            ),
            (
                "d11(f det) = p^2 d11(f) det + p^-1 q^-1 f x22".into(),
                Box::new(|f| {
                    let lhs = self.partial(0, &self.mult_det(f));
                    let c = &p(-1) * &QLaurent::q_pow(-1);
                    let rhs = self
                        .mult_det(&self.partial(0, f))
                        .scale(&p(2))
                        .add(&f.mul(&NcPoly::gen(Chart::I, 3)).scale(&c));
                    lhs == rhs
                }),
            ),
        ];
        checks.drain(..).map(|(name, f)| (name, mons.iter().all(|m| f(m)))).collect()
    }

    /// d(d ω) = 0 for ω = monomial and ω = monomial · dx_g, degree `<= max_deg`.
    pub fn d_squared_zero(&self, max_deg: u32) -> bool {
        monomials_up_to(max_deg).iter().all(|e| {
            let m = NcPoly::monomial(Chart::I, 0, *e, QLaurent::one());
            let zero_form = self.d(&self.d_poly(&m)).is_zero();
            zero_form && (0..4u8).all(|g| self.d(&self.d(&Form::from_components(&[(vec![g], m.clone())]))).is_zero())
        })
    }
}

/// `dx11 ∧ dx12 ∧ dx21 ∧ dx22`.
pub const VOLUME: [u8; 4] = [0, 1, 2, 3];

/// Words of `*dx_g` up to the factor `-1/[2]`.
const STAR_ONE_WORDS: [[u8; 3]; 4] = [[0, 1, 2], [1, 3, 0], [2, 0, 3], [3, 2, 1]];

/// `p^(2k+2l-3) [k][k+2l+1]`.
pub fn tilde_eigenvalue(p: PChoice, k: i64, two_l: i64) -> QLaurent {
    let pw: QLaurent = p.p_pow((2 * k + two_l - 3) as i32);
    &(&pw * &qint(k)) * &qint(k + two_l + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub p_choice: PChoice,
    pub k: i64,
    pub two_l: i64,
    pub eigenvalue: QLaurent,
    pub tilde_eigen_holds: bool,
    /// `det · □` (left) has the same eigenvalue on every basis element.
    pub left_mult_literal_holds: bool,
    /// `det · □` (left) has eigenvalue `q^(2(m-n))` times the above.
    pub left_mult_twist_holds: bool,
    pub delta_eigenvalue: QLaurent,
    pub delta_eigen_holds: bool,
    pub harmonic: bool,
}

/// Eigenvalues `c_k` of `det·□` on `det^k X^l` from the recurrence
/// `c_{k+1} = p^4 c_k + p^2 d_k + p^-2 + 1`, `d_{k+1} = p^2 d_k + p^-2 + 1`,
/// `c_0 = 0`, `d_0 = p^(2l-1) [2l]`.
pub fn eigen_recurrence(p: PChoice, k_max: i64, two_l: i64) -> Vec<QLaurent> {
    let pp = |e: i32| -> QLaurent { p.p_pow(e) };
    let extra = &pp(-2) + &QLaurent::one();
    let mut c = QLaurent::zero();
    let mut d = &pp(two_l as i32 - 1) * &qint(two_l);
    let mut out = vec![c.clone()];
    for _ in 0..k_max {
        c = &(&(&pp(4) * &c) + &(&pp(2) * &d)) + &extra;
        d = &(&pp(2) * &d) + &extra;
        out.push(c.clone());
    }
    out
}

/// Which closed form the recurrence reproduces.
#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceVerdict {
    pub p_choice: PChoice,
    pub k_max: i64,
    pub two_l_max: i64,
    /// `[k][k+2l+1]` matches at every (k, l).
    pub matches_k_2l_1: bool,
    /// `[k][k+2l+2]` matches at every (k, l).
    pub matches_k_2l_2: bool,
}

pub fn resolve_recurrence(p: PChoice, k_max: i64, two_l_max: i64) -> RecurrenceVerdict {
    let mut a = true;
    let mut b = true;
    for two_l in 0..=two_l_max {
        let seq = eigen_recurrence(p, k_max, two_l);
        for (k, c) in seq.iter().enumerate() {
            let k = k as i64;
            a &= *c == tilde_eigenvalue(p, k, two_l);
            let alt: QLaurent = &(&p.p_pow::<QLaurent>((2 * k + two_l - 3) as i32) * &qint(k)) * &qint(k + two_l + 2);
            b &= *c == alt;
        }
    }
    RecurrenceVerdict { p_choice: p, k_max, two_l_max, matches_k_2l_1: a, matches_k_2l_2: b }
}

/// Eigenvalue identity between the two charts: `k'' = -k-2l-1`.
pub fn conjugation_identity_check(p: PChoice, k: i64, two_l: i64) -> bool {
    let lhs = tilde_eigenvalue(p, k, two_l);
    let k2 = -k - two_l - 1;
    let rhs_p: QLaurent = p.p_pow((-8 - 2 * k2 - two_l + 3) as i32);
    let rhs = &(&rhs_p * &qint(k2)) * &qint(k2 + two_l + 1);
    lhs == rhs
}

/// Self-dual / anti-self-dual classification of a 2-form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Duality {
    Sd,
    Asd,
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsdReport {
    pub class: Duality,
    /// Coordinates on dx11∧dx12, dx21∧dx22, dx11∧dx22 − dx12∧dx21.
    pub sd: [String; 3],
    /// Coordinates on dx11∧dx21, dx12∧dx22, dx11∧dx22 + dx12∧dx21.
    pub asd: [String; 3],
    #[serde(skip)]
    pub sd_coords: [RatPoly; 3],
    #[serde(skip)]
    pub asd_coords: [RatPoly; 3],
}

/// Split a 2-form into SD and ASD coordinates (after wedge normalization).
pub fn asd_membership(eng: &Engine<QRat>, w: &Form<QRat>) -> AsdReport {
    let w = eng.normalize(w);
    let c = |a: u8, b: u8| w.component(&[a, b]);
    let half = QRat::from_int(1) / QRat::from_int(2);
    let (c03, c12) = (c(0, 3), c(1, 2));
    let sd_coords = [c(0, 1), c(2, 3), c03.sub(&c12).scale(&half)];
    let asd_coords = [c(0, 2), c(1, 3), c03.add(&c12).scale(&half)];
    let sd_zero = sd_coords.iter().all(|x| x.is_zero());
    let asd_zero = asd_coords.iter().all(|x| x.is_zero());
    let class = if sd_zero {
        Duality::Asd
    } else if asd_zero {
        Duality::Sd
    } else {
        Duality::Mixed
    };
    AsdReport {
        class,
        sd: sd_coords.clone().map(|x| x.to_string()),
        asd: asd_coords.clone().map(|x| x.to_string()),
        sd_coords,
        asd_coords,
    }
}

/// Laurent monomial `x^a y^b / (z^c w^e)` on the two patches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CechMonomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub w: u32,
}

impl CechMonomial {
    /// Index `(l, m, n)` with `k = 0`.
    pub fn index(&self) -> Result<HarmonicIndex, CalcError> {
        let bad = |why: &str| Err(CalcError::MalformedCech(format!("{self:?}"), why.into()));
        if self.z == 0 || self.w == 0 {
            return bad("z and w powers must be at least 1");
        }
        if self.x + self.y + 2 != self.z + self.w {
            return bad("total degree must be -2");
        }
        let (a, b, c) = (self.x as i64, self.y as i64, self.z as i64);
        Ok(HarmonicIndex::new(a + b, b - a, a + b + 2 - 2 * c, 0))
    }

    pub fn from_index(idx: &HarmonicIndex) -> Self {
        CechMonomial {
            x: idx.l_minus_m() as u32,
            y: idx.l_plus_m() as u32,
            z: (idx.l_minus_n() + 1) as u32,
            w: (idx.l_plus_n() + 1) as u32,
        }
    }
}

/// Linear extension of `cech monomial -> X^l_{m,n}`.
pub fn penrose_scalar(cocycle: &[(CechMonomial, QLaurent)]) -> Result<QPoly, CalcError> {
    let mut acc = NcPoly::zero(Chart::I);
    for (m, c) in cocycle {
        let idx = m.index()?;
        acc = acc.add(&harmonic(&idx).expect("valid index").scale(c));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct PenroseSliceReport {
    pub two_l: i64,
    pub monomials: usize,
    pub rank: usize,
    pub injective: bool,
    pub harmonic: bool,
    pub round_trip: bool,
}

/// Image of all Cech monomials of weight `2l` is harmonic and independent.
pub fn penrose_slice(calc: &Calculus, two_l: i64) -> PenroseSliceReport {
    let idxs = harmonics_of_degree(two_l, 0);
    let mut images = Vec::new();
    let mut round_trip = true;
    for idx in &idxs {
        let m = CechMonomial::from_index(idx);
        round_trip &= m.index().map(|i| i == *idx).unwrap_or(false);
        images.push(penrose_scalar(&[(m, QLaurent::one())]).expect("well-formed"));
    }
    let harmonic = images.iter().all(|f| calc.laplacian(f).is_zero());
    let rows: Vec<Exp> = monomials_of_degree(two_l as u32);
    let rank = slice_matrix::<Generic>(&images, &rows).rank();
    PenroseSliceReport { two_l, monomials: idxs.len(), rank, injective: rank == idxs.len(), harmonic, round_trip }
}
