//! Numerical search for Edidin failures.
//!
//! Minimizes `σ_min(M(x))` over unit `x`, where `M(x)` stacks the rows
//! `(P_i x)ᵀ`. Since `σ_min(M(x))² = min_v Σ (vᵀ P_i x)²` over unit `v`, the
//! search alternates exact eigen-solves in `v` and `x`, which never increases
//! the objective, then refines with Levenberg-Marquardt on the bilinear
//! residuals `vᵀ P_i x` (plus the two unit-norm constraints), which converges
//! quickly onto exact zeros. Restarts are independent and seeded per index,
//! so results do not depend on the thread count.
//!
//! A small minimum is only a candidate: it is rounded to a small rational and
//! re-verified in the arrangement's own backend. A large minimum is evidence,
//! never proof.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::{edidin_verify_witness, Arrangement, EdidinWitness};
use crate::field::{best_rational, Field};
use crate::linalg::Vector;

/// Minimum singular value below which a restart counts as a candidate failure.
pub const FALSIFIER_TAU: f64 = 1e-8;
/// Largest denominator tried when rounding a candidate to a rational vector.
pub const ROUNDING_MAX_DEN: u64 = 64;

const MAX_SWEEPS: usize = 200;
const LM_ITERATIONS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct FalsifierReport<T> {
    pub min_sigma: f64,
    pub best_x: Vector<f64>,
    pub best_restart: usize,
    pub witness: Option<EdidinWitness<T>>,
    pub restarts: usize,
    pub seed: u64,
    pub tau: f64,
}

struct Restart {
    index: usize,
    sigma: f64,
    x: DVector<f64>,
}

pub(crate) fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub(crate) fn gaussian_unit(rng: &mut ChaCha8Rng, d: usize) -> DVector<f64> {
    loop {
        let v = DVector::<f64>::from_fn(d, |_, _| {
            let s: f64 = StandardNormal.sample(rng);
            s
        });
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

fn min_eigvec(m: DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = SymmetricEigen::new(m);
    let (i, &val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty spectrum");
    (val, eig.eigenvectors.column(i).into_owned())
}

/// `Σ P_i u uᵀ P_i`, symmetric in the roles of `x` and `v`.
fn gram(projectors: &[DMatrix<f64>], u: &DVector<f64>) -> DMatrix<f64> {
    let d = u.len();
    projectors.iter().fold(DMatrix::zeros(d, d), |acc, p| {
        let pu = p * u;
        acc + &pu * pu.transpose()
    })
}

fn sigma_min(projectors: &[DMatrix<f64>], x: &DVector<f64>) -> f64 {
    let d = x.len();
    let n = projectors.len();
    if n < d {
        return 0.0;
    }
    let mut m = DMatrix::zeros(n, d);
    for (i, p) in projectors.iter().enumerate() {
        m.set_row(i, &(p * x).transpose());
    }
    m.singular_values().min()
}

fn residuals(projectors: &[DMatrix<f64>], x: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
    let n = projectors.len();
    let mut r = DVector::zeros(n + 2);
    for (i, p) in projectors.iter().enumerate() {
        r[i] = v.dot(&(p * x));
    }
    r[n] = x.norm_squared() - 1.0;
    r[n + 1] = v.norm_squared() - 1.0;
    r
}

fn jacobian(projectors: &[DMatrix<f64>], x: &DVector<f64>, v: &DVector<f64>) -> DMatrix<f64> {
    let d = x.len();
    let n = projectors.len();
    let mut j = DMatrix::zeros(n + 2, 2 * d);
    for (i, p) in projectors.iter().enumerate() {
        let pv = p * v;
        let px = p * x;
        for k in 0..d {
            j[(i, k)] = pv[k];
            j[(i, d + k)] = px[k];
        }
    }
    for k in 0..d {
        j[(n, k)] = 2.0 * x[k];
        j[(n + 1, d + k)] = 2.0 * v[k];
    }
    j
}

/// Levenberg-Marquardt on `(x, v)`; returns the refined, renormalized `x`.
fn refine(projectors: &[DMatrix<f64>], mut x: DVector<f64>, mut v: DVector<f64>) -> DVector<f64> {
    let d = x.len();
    let mut lambda = 1e-3;
    let mut r = residuals(projectors, &x, &v);
    let mut cost = r.norm_squared();
    for _ in 0..LM_ITERATIONS {
        if cost < 1e-32 {
            break;
        }
        let j = jacobian(projectors, &x, &v);
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let mut improved = false;
        for _ in 0..20 {
            let mut a = jtj.clone();
            for k in 0..2 * d {
                a[(k, k)] += lambda * (1.0 + jtj[(k, k)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let nx = &x + step.rows(0, d);
            let nv = &v + step.rows(d, d);
            let nr = residuals(projectors, &nx, &nv);
            let ncost = nr.norm_squared();
            if ncost < cost {
                x = nx;
                v = nv;
                r = nr;
                cost = ncost;
                lambda = (lambda * 0.3).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let n = x.norm();
    if n > 1e-12 {
        x / n
    } else {
        x
    }
}

fn run_restart(projectors: &[DMatrix<f64>], d: usize, seed: u64, index: usize) -> Restart {
    let mut rng = restart_rng(seed, index);
    let mut x = gaussian_unit(&mut rng, d);
    let mut last = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let v = min_eigvec(gram(projectors, &x)).1;
        let (val, nx) = min_eigvec(gram(projectors, &v));
        x = nx;
        let val = val.max(0.0);
        if last - val <= 1e-12 * last.max(1e-30) || val < 1e-30 {
            break;
        }
        last = val;
    }
    let v = min_eigvec(gram(projectors, &x)).1;
    let refined = refine(projectors, x.clone(), v);
    let (s0, s1) = (sigma_min(projectors, &x), sigma_min(projectors, &refined));
    if s1 < s0 {
        Restart {
            index,
            sigma: s1,
            x: refined,
        }
    } else {
        Restart { index, sigma: s0, x }
    }
}

/// Rational roundings of `x`, scaled so its largest entry is ±1, for every
/// denominator bound up to `max_den`.
pub(crate) fn rational_candidates(x: &[f64], max_den: u64) -> Vec<Vec<crate::field::Rational>> {
    let scale = x.iter().fold(0.0f64, |m, v| if v.abs() > m.abs() { *v } else { m });
    if scale == 0.0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<crate::field::Rational>> = Vec::new();
    for den in 1..=max_den {
        let cand: Vec<_> = x.iter().map(|v| best_rational(v / scale, den)).collect();
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

pub fn edidin_numeric_falsify<T: Field>(
    arrangement: &Arrangement<T>,
    restarts: usize,
    seed: u64,
) -> FalsifierReport<T> {
    let d = arrangement.dim();
    let projectors: Vec<DMatrix<f64>> = arrangement
        .subspaces()
        .iter()
        .map(|w| {
            let p = w.projector().to_f64();
            DMatrix::from_row_slice(d, d, p.data())
        })
        .collect();

    let results: Vec<Restart> = (0..restarts.max(1))
        .into_par_iter()
        .map(|i| run_restart(&projectors, d, seed, i))
        .collect();
    let best = results
        .into_iter()
        .min_by(|a, b| a.sigma.total_cmp(&b.sigma).then(a.index.cmp(&b.index)))
        .expect("at least one restart");

    let witness = if best.sigma < FALSIFIER_TAU {
        rational_candidates(best.x.as_slice(), ROUNDING_MAX_DEN)
            .into_iter()
            .map(|c| Vector::new(c.iter().map(T::from_rational).collect()))
            .filter(|x: &Vector<T>| !x.is_zero(T::default_tol()))
            .find_map(|x| {
                edidin_verify_witness(arrangement, &x)
                    .ok()
                    .filter(EdidinWitness::deficient)
            })
    } else {
        None
    };

    FalsifierReport {
        min_sigma: best.sigma,
        best_x: Vector::new(best.x.iter().copied().collect()),
        best_restart: best.index,
        witness,
        restarts: restarts.max(1),
        seed,
        tau: FALSIFIER_TAU,
    }
}
