//! Seeded generators of ADHM data over Q(i).

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adhm::{embed_real, is_stable, real_residuals, AdhmError, ComplexAdhmDatum, RealAdhmDatum};
use crate::exactcore::{GaussRational, Matrix};
use crate::GaussMatrix;

pub type AdhmRng = ChaCha8Rng;

pub fn rng(seed: u64) -> AdhmRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small-height Gaussian rational: parts in {−3..3}/{1,2}.
pub fn random_scalar(rng: &mut AdhmRng) -> GaussRational {
    let re = rng.gen_range(-3..=3);
    let im = rng.gen_range(-3..=3);
    let d1 = rng.gen_range(1..=2);
    let d2 = rng.gen_range(1..=2);
    GaussRational::from_parts(re, d1, im, d2)
}

pub fn random_nonzero(rng: &mut AdhmRng) -> GaussRational {
    loop {
        let x = random_scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_matrix(rng: &mut AdhmRng, rows: usize, cols: usize) -> GaussMatrix {
    Matrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

pub fn random_gl(rng: &mut AdhmRng, n: usize) -> GaussMatrix {
    loop {
        let g = random_matrix(rng, n, n);
        if !g.det().expect("square").is_zero() {
            return g;
        }
    }
}

/// Cayley transform `(1 − A)(1 + A)⁻¹` of a random skew-Hermitian `A`.
pub fn random_unitary(rng: &mut AdhmRng, n: usize) -> GaussMatrix {
    let m = random_matrix(rng, n, n);
    let a = m.sub(&m.dagger());
    let id = Matrix::identity(n);
    id.sub(&a).mul(&id.add(&a).inverse().expect("1 + skew-Hermitian is invertible"))
}

fn diag(v: &[GaussRational]) -> GaussMatrix {
    Matrix::from_fn(v.len(), v.len(), |i, j| if i == j { v[i].clone() } else { GaussRational::zero() })
}

/// A stable and costable solution of the real equations at ξ = 0 (r ≥ 2):
/// a direct sum of c one-dimensional solutions with distinct B-eigenvalues,
/// rotated by random unitaries on V and W.
pub fn real_solution_xi0(rng: &mut AdhmRng, r: usize, c: usize) -> Result<RealAdhmDatum, AdhmError> {
    if r < 2 || c == 0 {
        return Err(AdhmError::Invalid("real ξ = 0 sampler needs r ≥ 2, c ≥ 1".into()));
    }
    loop {
        let mut a: Vec<GaussRational> = Vec::new();
        while a.len() < c {
            let x = random_scalar(rng);
            if !a.contains(&x) {
                a.push(x);
            }
        }
        let b: Vec<GaussRational> = (0..c).map(|_| random_scalar(rng)).collect();
        let alpha: Vec<GaussRational> = (0..c).map(|_| random_nonzero(rng)).collect();
        let u = random_nonzero(rng);
        let v = random_scalar(rng);
        let mut i = Matrix::zeros(c, r);
        let mut j = Matrix::zeros(r, c);
        for k in 0..c {
            i[(k, 0)] = &alpha[k] * &u;
            i[(k, 1)] = &alpha[k] * &v;
            j[(0, k)] = &alpha[k].conj() * &v;
            j[(1, k)] = -(&alpha[k].conj() * &u);
        }
        let base = RealAdhmDatum::new(diag(&a), diag(&b), i, j)?;
        let uv = random_unitary(rng, c);
        let hw = random_unitary(rng, r);
        let d = base.unitary_act(&uv, &hw);
        let zero = GaussRational::zero();
        if real_residuals(&d, &zero).iter().all(|m| m.is_zero()) && is_stable(&d.b1, &d.b2, &d.i).holds {
            return Ok(d);
        }
    }
}

/// A c = 1 real solution with ξ = |i|² − |j|² > 0, returned with ξ.
pub fn real_solution_xi_positive(rng: &mut AdhmRng, r: usize) -> (RealAdhmDatum, GaussRational) {
    loop {
        let b1 = Matrix::from_fn(1, 1, |_, _| random_scalar(rng));
        let b2 = Matrix::from_fn(1, 1, |_, _| random_scalar(rng));
        let i = random_matrix(rng, 1, r);
        if i.is_zero() {
            continue;
        }
        // j in the kernel of i, shrunk until |j|² < |i|²
        let ker = i.kernel();
        let mut j = Matrix::zeros(r, 1);
        for v in &ker {
            let s = random_scalar(rng);
            for (k, x) in v.iter().enumerate() {
                j[(k, 0)] = &j[(k, 0)] + &(&s * x);
            }
        }
        let norm = |m: &GaussMatrix| {
            m.data().iter().fold(GaussRational::zero(), |acc, x| &acc + &GaussRational::from_rational(x.norm_sq()))
        };
        let ni = norm(&i);
        while norm(&j).re >= ni.re {
            j = j.scale(&GaussRational::from_ratio(1, 2));
        }
        let xi = &ni - &norm(&j);
        let d = RealAdhmDatum::new(b1, b2, i, j).expect("shapes");
        return (d, xi);
    }
}

/// The c = 1 datum with scalars `b` and vectors x, y (rows i1, i2), z, w
/// (columns j1, j2); rejected unless the three quadrics vanish and x, y are
/// linearly independent.
pub fn c1_datum(
    b: [GaussRational; 4],
    x: &[GaussRational],
    y: &[GaussRational],
    z: &[GaussRational],
    w: &[GaussRational],
) -> Result<ComplexAdhmDatum, AdhmError> {
    let r = x.len();
    if [y.len(), z.len(), w.len()].iter().any(|&n| n != r) {
        return Err(AdhmError::Shape("vectors of unequal length".into()));
    }
    let dot = |a: &[GaussRational], b: &[GaussRational]| {
        a.iter().zip(b).fold(GaussRational::zero(), |acc, (p, q)| &acc + &(p * q))
    };
    let q1 = dot(x, z);
    let q2 = dot(y, w);
    let q3 = &dot(x, w) + &dot(y, z);
    if !(q1.is_zero() && q2.is_zero() && q3.is_zero()) {
        return Err(AdhmError::NotASolution(format!("quadrics evaluate to ({q1}, {q2}, {q3})")));
    }
    let xy = Matrix::from_rows(vec![x.to_vec(), y.to_vec()]).expect("rows");
    if xy.rank() < 2 {
        return Err(AdhmError::Invalid("x and y are linearly dependent".into()));
    }
    let one = |v: GaussRational| Matrix::from_vec(1, 1, vec![v]).expect("1x1");
    let [b11, b12, b21, b22] = b;
    ComplexAdhmDatum::new(
        one(b11),
        one(b12),
        one(b21),
        one(b22),
        Matrix::from_vec(1, r, x.to_vec())?,
        Matrix::from_vec(1, r, y.to_vec())?,
        Matrix::column(z.to_vec()),
        Matrix::column(w.to_vec()),
    )
}

/// Random c = 1 solution on the complete intersection of the three quadrics.
pub fn c1_generator(r: usize, seed: u64) -> Result<ComplexAdhmDatum, AdhmError> {
    if r < 2 {
        return Err(AdhmError::Invalid("no C-stable solutions exist for r = 1".into()));
    }
    let mut g = rng(seed);
    loop {
        let b = [random_scalar(&mut g), random_scalar(&mut g), random_scalar(&mut g), random_scalar(&mut g)];
        let x: Vec<GaussRational> = (0..r).map(|_| random_scalar(&mut g)).collect();
        let y: Vec<GaussRational> = (0..r).map(|_| random_scalar(&mut g)).collect();
        // linear conditions on (z, w) ∈ Q(i)^{2r}
        let mut sys = Matrix::zeros(3, 2 * r);
        for k in 0..r {
            sys[(0, k)] = x[k].clone();
            sys[(1, r + k)] = y[k].clone();
            sys[(2, r + k)] = x[k].clone();
            sys[(2, k)] = y[k].clone();
        }
        let mut zw = vec![GaussRational::zero(); 2 * r];
        for v in sys.kernel() {
            let s = random_scalar(&mut g);
            for (k, t) in v.iter().enumerate() {
                zw[k] = &zw[k] + &(&s * t);
            }
        }
        if let Ok(d) = c1_datum(b, &x, &y, &zw[..r], &zw[r..]) {
            return Ok(d);
        }
    }
}

/// A datum (generally not a solution) with ĩ = (z + λw)·i₁ vanishing at [−λ:1].
pub fn unstable_datum(rng: &mut AdhmRng, r: usize, c: usize) -> (ComplexAdhmDatum, GaussRational) {
    let lambda = random_scalar(rng);
    let i1 = random_matrix(rng, c, r);
    let d = ComplexAdhmDatum {
        c,
        r,
        b11: random_matrix(rng, c, c),
        b12: random_matrix(rng, c, c),
        b21: random_matrix(rng, c, c),
        b22: random_matrix(rng, c, c),
        i2: i1.scale(&lambda),
        i1,
        j1: random_matrix(rng, r, c),
        j2: random_matrix(rng, r, c),
    };
    (d, lambda)
}

/// A random r = c = 1 solution: arbitrary B, i, and j = 0.
pub fn rank_one_solution(rng: &mut AdhmRng) -> ComplexAdhmDatum {
    let mut d = ComplexAdhmDatum::zero(1, 1);
    d.b11 = random_matrix(rng, 1, 1);
    d.b12 = random_matrix(rng, 1, 1);
    d.b21 = random_matrix(rng, 1, 1);
    d.b22 = random_matrix(rng, 1, 1);
    d.i1 = Matrix::from_fn(1, 1, |_, _| random_nonzero(rng));
    d.i2 = random_matrix(rng, 1, 1);
    d
}

/// A C-regular solution: an embedded real ξ = 0 solution moved off the real
/// locus by random GL(V) × GL(W).
pub fn c_stable_solution(rng: &mut AdhmRng, r: usize, c: usize) -> Result<ComplexAdhmDatum, AdhmError> {
    let d = embed_real(&real_solution_xi0(rng, r, c)?)?;
    let g = random_gl(rng, c);
    let h = random_gl(rng, r);
    d.act(&g)?.act_w(&h)
}

/// A c = 1 solution that is not C-stable: `i2 = λ i1` (so ĩ vanishes at
/// [−λ:1]) and `j1, j2 ∈ ker i1`.
pub fn non_c_stable_solution(rng: &mut AdhmRng, r: usize) -> (ComplexAdhmDatum, GaussRational) {
    let lambda = random_scalar(rng);
    let i1 = loop {
        let m = random_matrix(rng, 1, r);
        if !m.is_zero() {
            break m;
        }
    };
    let ker = i1.kernel();
    let mut pick = || {
        let mut j = Matrix::zeros(r, 1);
        for v in &ker {
            let s = random_scalar(rng);
            for (k, x) in v.iter().enumerate() {
                j[(k, 0)] = &j[(k, 0)] + &(&s * x);
            }
        }
        j
    };
    let j1 = pick();
    let j2 = pick();
    let mut d = ComplexAdhmDatum::zero(r, 1);
    d.b11 = random_matrix(rng, 1, 1);
    d.b12 = random_matrix(rng, 1, 1);
    d.b21 = random_matrix(rng, 1, 1);
    d.b22 = random_matrix(rng, 1, 1);
    d.i2 = i1.scale(&lambda);
    d.i1 = i1;
    d.j1 = j1;
    d.j2 = j2;
    (d, lambda)
}

/// Check that `g` is unitary.
pub fn is_unitary(g: &GaussMatrix) -> bool {
    g.mul(&g.dagger()) == Matrix::identity(g.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhm::classify;

    #[test]
    fn unitary_sampler() {
        let mut g = rng(7);
        for n in 1..=3 {
            assert!(is_unitary(&random_unitary(&mut g, n)));
        }
    }

    #[test]
    fn xi0_sampler_solves() {
        let mut g = rng(3);
        let d = real_solution_xi0(&mut g, 2, 2).unwrap();
        let e = embed_real(&d).unwrap();
        assert!(classify(&e).regular);
    }

    #[test]
    fn c1_examples() {
        let g = |x: i64| GaussRational::from_int(x);
        let z4 = [g(0), g(0), g(0), g(0)];
        let d = c1_datum(z4.clone(), &[g(1), g(0)], &[g(0), g(1)], &[g(0), g(0)], &[g(0), g(0)]).unwrap();
        assert!(d.is_solution());
        assert!(c1_datum(z4, &[g(1), g(0)], &[g(0), g(1)], &[g(0), g(1)], &[g(1), g(0)]).is_err());
        assert!(c1_generator(1, 0).is_err());
        let d = c1_generator(3, 11).unwrap();
        assert!(d.is_solution());
        assert!(classify(&d).stable_everywhere);
    }

    #[test]
    fn shaped_samplers() {
        let mut g = rng(5);
        let d = c_stable_solution(&mut g, 2, 2).unwrap();
        assert!(d.is_solution() && classify(&d).regular);
        for r in 1..=3 {
            let (d, _) = non_c_stable_solution(&mut g, r);
            assert!(d.is_solution());
            assert!(!classify(&d).stable_everywhere);
        }
    }
}
