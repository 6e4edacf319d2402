//! Test maps `𝕋³ → SU(2)` and a brute-force degree oracle that counts the
//! signed preimages of a regular value.

#![allow(dead_code)]

use std::f64::consts::TAU;

use topo_numerics::{pauli, ComplexMatrix, C64, I};

/// `d₀(k) + i s(k)·σ`, normalized, with `s_j = sin k_j` and
/// `d₀ = m + Σ_j cos k_j`.
pub fn chiral_map(k: &[f64], m: f64) -> ComplexMatrix {
    let sigma = pauli();
    let d0 = m + k.iter().map(|x| x.cos()).sum::<f64>();
    let s: Vec<f64> = k.iter().map(|x| x.sin()).collect();
    let norm = (d0 * d0 + s.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let mut v = ComplexMatrix::scalar(2, C64::new(d0, 0.0));
    for j in 0..3 {
        v += &sigma[j].scale(I * s[j]);
    }
    v.scale_re(1.0 / norm)
}

/// `(h − id₀)(h + id₀)⁻¹` with `h = s·σ`; equals `−q²` for the chiral map
/// `q`, so its degree is twice that of `q`.
pub fn cayley_map(k: &[f64], m: f64) -> ComplexMatrix {
    let q = chiral_map(k, m);
    -&q.matmul(&q)
}

/// `exp(−iθ·σ)`.
pub fn su2_exp(theta: [f64; 3]) -> ComplexMatrix {
    let sigma = pauli();
    let a = theta.iter().map(|t| t * t).sum::<f64>().sqrt();
    let mut v = ComplexMatrix::scalar(2, C64::new(a.cos(), 0.0));
    if a > 0.0 {
        for j in 0..3 {
            v -= &sigma[j].scale(I * (a.sin() * theta[j] / a));
        }
    }
    v
}

/// Coordinates `w` of `W = w₀ − i w·σ ∈ SU(2)`; near `𝟙` they agree with
/// `θ` in `W = exp(−iθ·σ)` to first order.
fn chart(w: &ComplexMatrix) -> (f64, [f64; 3]) {
    let sigma = pauli();
    let w0 = w.trace().re / 2.0;
    let mut v = [0.0; 3];
    for j in 0..3 {
        v[j] = (I * w.matmul(&sigma[j]).trace()).re / 2.0;
    }
    (w0, v)
}

fn det3(j: &[[f64; 3]; 3]) -> f64 {
    j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0])
}

fn solve3(j: &[[f64; 3]; 3], b: [f64; 3]) -> [f64; 3] {
    let d = det3(j);
    let mut x = [0.0; 3];
    for c in 0..3 {
        let mut m = *j;
        for r in 0..3 {
            m[r][c] = b[r];
        }
        x[c] = det3(&m) / d;
    }
    x
}

/// Signed count of solutions of `f(k) = target` with signs
/// `sign det ∂θ/∂k` in the chart `θ ↦ target·exp(−iθ·σ)`.
pub fn preimage_degree<F: Fn(&[f64]) -> ComplexMatrix>(f: F, target: &ComplexMatrix, scan: usize) -> i64 {
    let tinv = target.adjoint();
    let coords = |k: &[f64; 3]| chart(&tinv.matmul(&f(k)));
    let jac = |k: &[f64; 3]| {
        let h = 1e-6;
        let mut j = [[0.0; 3]; 3];
        for a in 0..3 {
            let (mut kp, mut km) = (*k, *k);
            kp[a] += h;
            km[a] -= h;
            let (wp, wm) = (coords(&kp).1, coords(&km).1);
            for r in 0..3 {
                j[r][a] = (wp[r] - wm[r]) / (2.0 * h);
            }
        }
        j
    };
    let mut roots: Vec<[f64; 3]> = Vec::new();
    let mut degree = 0;
    let step = TAU / scan as f64;
    for i in 0..scan * scan * scan {
        let mut k = [(i / (scan * scan)) as f64 * step, ((i / scan) % scan) as f64 * step, (i % scan) as f64 * step];
        let (w0, w) = coords(&k);
        if w0 <= 0.0 || w.iter().map(|x| x * x).sum::<f64>().sqrt() > 0.5 {
            continue;
        }
        let mut converged = false;
        for _ in 0..50 {
            let (w0, w) = coords(&k);
            let r = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r < 1e-13 && w0 > 0.0 {
                converged = true;
                break;
            }
            let dk = solve3(&jac(&k), w);
            for a in 0..3 {
                k[a] -= dk[a];
            }
        }
        if !converged {
            continue;
        }
        let k = k.map(|x| x.rem_euclid(TAU));
        let dist = |a: &[f64; 3], b: &[f64; 3]| {
            a.iter().zip(b).map(|(x, y)| {
                let d = (x - y).rem_euclid(TAU);
                d.min(TAU - d)
            }).fold(0.0, f64::max)
        };
        if roots.iter().any(|r| dist(r, &k) < 1e-7) {
            continue;
        }
        let d = det3(&jac(&k));
        assert!(d.abs() > 1e-6, "target is not a regular value");
        degree += d.signum() as i64;
        roots.push(k);
    }
    degree
}
