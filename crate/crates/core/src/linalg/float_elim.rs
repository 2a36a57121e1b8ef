//! Gaussian elimination with partial pivoting for the float backend.

use super::Matrix;

fn eliminate(m: &Matrix<f64>, tol: f64) -> (Vec<Vec<f64>>, usize, usize) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<f64>> = (0..rows).map(|i| m.row_slice(i).to_vec()).collect();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (p, best) = (r..rows)
            .map(|i| (i, a[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol {
            for row in a.iter_mut().skip(r) {
                row[c] = 0.0;
            }
            continue;
        }
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..rows {
            let f = a[i][c] / a[r][c];
            if f != 0.0 {
                let (top, bottom) = a.split_at_mut(i);
                for (x, p) in bottom[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                    *x -= f * p;
                }
            }
            a[i][c] = 0.0;
        }
        r += 1;
    }
    (a, r, swaps)
}

pub fn rank(m: &Matrix<f64>, tol: f64) -> usize {
    eliminate(m, tol).1
}

pub fn det(m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    let (a, r, swaps) = eliminate(m, 0.0);
    if r < n {
        return 0.0;
    }
    let d: f64 = (0..n).map(|i| a[i][i]).product();
    if swaps % 2 == 1 {
        -d
    } else {
        d
    }
}
