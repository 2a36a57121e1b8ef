//! Reference computations written independently of the library, used as
//! oracles in the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Q::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Q>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].clone() * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Plain Gaussian elimination over the rationals.
pub fn rank_gauss(m: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone() / a[r][c].clone();
                for k in c..cols {
                    let v = a[r][k].clone() * f.clone();
                    a[i][k] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Whether every `d`-subset of the rows has nonzero determinant.
pub fn full_spark_oracle(rows: &[Vec<Q>]) -> bool {
    let n = rows.len();
    let d = rows[0].len();
    subsets(n, d).iter().all(|s| {
        let m: Vec<Vec<Q>> = s.iter().map(|&i| rows[i].clone()).collect();
        !det_cofactor(&m).is_zero()
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Complement property straight from the definition: every bipartition has a spanning side.
pub fn cp_oracle(rows: &[Vec<Q>]) -> bool {
    let n = rows.len();
    let d = rows[0].len();
    (0u32..1 << n).all(|mask| {
        let (a, b): (Vec<Vec<Q>>, Vec<Vec<Q>>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(r.clone());
                } else {
                    b.push(r.clone());
                }
            }
            (a, b)
        };
        rank_gauss(&a) == d || rank_gauss(&b) == d
    })
}

/// Sign of `p(t)` for integer coefficients (constant first) at a rational point.
pub fn poly_sign(p: &[i64], t: &Q) -> i32 {
    let v = p.iter().rev().fold(Q::zero(), |acc, &c| acc * t + q(c));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Distinct real roots of a squarefree integer polynomial by sign changes on a
/// fine rational grid inside the Cauchy bound, refined by bisection. Only
/// valid when roots are separated by more than the grid step and none is
/// a grid point.
pub fn count_roots_bisection(p: &[i64], step_den: i64) -> usize {
    let lead = p.iter().rev().find(|&&c| c != 0).copied().unwrap_or(1).abs();
    let bound = 1 + p.iter().map(|c| c.abs()).max().unwrap_or(0) / lead;
    let mut count = 0;
    let lo = -bound * step_den;
    let hi = bound * step_den;
    let mut prev = poly_sign(p, &qf(lo, step_den));
    let mut i = lo + 1;
    while i <= hi {
        let s = poly_sign(p, &qf(i, step_den));
        if s == 0 {
            count += 1;
            i += 1;
            prev = poly_sign(p, &qf(i, step_den));
            i += 1;
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
        i += 1;
    }
    count
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Orthogonal projector onto the span of `vs`, via rational Gram-Schmidt:
/// `P = Σ u uᵀ / ‖u‖²` over an orthogonal basis `u`.
pub fn projector_gram_schmidt(d: usize, vs: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut us: Vec<Vec<Q>> = Vec::new();
    for v in vs {
        let mut u = v.clone();
        for w in &us {
            let c = dot(v, w) / dot(w, w);
            for (a, b) in u.iter_mut().zip(w) {
                *a -= c.clone() * b;
            }
        }
        if u.iter().any(|c| !c.is_zero()) {
            us.push(u);
        }
    }
    let mut p = vec![vec![Q::zero(); d]; d];
    for u in &us {
        let n = dot(u, u);
        for i in 0..d {
            for j in 0..d {
                p[i][j] += u[i].clone() * u[j].clone() / n.clone();
            }
        }
    }
    p
}

/// `I − nnᵀ/‖n‖²`.
pub fn projector_hyperplane_oracle(n: &[Q]) -> Vec<Vec<Q>> {
    let d = n.len();
    let nn = dot(n, n);
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let id = if i == j { Q::one() } else { Q::zero() };
                    id - n[i].clone() * n[j].clone() / nn.clone()
                })
                .collect()
        })
        .collect()
}

pub fn apply(p: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    p.iter().map(|row| dot(row, x)).collect()
}

pub fn norm_sq(x: &[Q]) -> Q {
    dot(x, x)
}
