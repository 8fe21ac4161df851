//! Double-precision evaluation of mappings and the small numeric toolbox the
//! probes share: seeded sampling, Gauss-Newton projection onto fibres,
//! descent on spheres and Levenberg-Marquardt.

use alloc::vec;
use alloc::vec::Vec;

// Unused whenever another crate in the graph links std.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::PolyMap;

/// Anything that can be evaluated and differentiated in floating point.
pub trait NumericMap {
    fn domain_dim(&self) -> usize;
    fn codomain_dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> Vec<f64>;
    /// Row-major `p × n` Jacobian.
    fn jacobian(&self, x: &[f64]) -> Vec<f64>;
}

fn powu(mut base: f64, mut e: u32) -> f64 {
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// A polynomial with `f64` coefficients, evaluated by direct term summation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, f64)>) -> Self {
        FloatPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(e, c)| c * e.iter().zip(x).map(|(&k, &xi)| powu(xi, k)).product::<f64>()).sum()
    }

    /// Value together with the rounding bound `n_terms · ε · Σ |c_a x^a|`.
    pub fn eval_with_error(&self, x: &[f64]) -> (f64, f64) {
        let mut value = 0.0;
        let mut magnitude = 0.0;
        for (e, c) in &self.terms {
            let t = c * e.iter().zip(x).map(|(&k, &xi)| powu(xi, k)).product::<f64>();
            value += t;
            magnitude += t.abs();
        }
        (value, self.terms.len() as f64 * f64::EPSILON * magnitude)
    }
}

/// Floating-point image of a [`PolyMap`] with its symbolic Jacobian.
#[derive(Clone, Debug)]
pub struct FloatMap {
    n: usize,
    components: Vec<FloatPoly>,
    jacobian: Vec<FloatPoly>,
}

impl FloatMap {
    pub fn from_polymap(f: &PolyMap) -> Self {
        let n = f.domain_dim();
        let components = f.components().iter().map(|c| c.to_float()).collect();
        let mut jacobian = Vec::with_capacity(n * f.codomain_dim());
        for c in f.components() {
            for j in 0..n {
                jacobian.push(c.partial_derivative(j).expect("index in range").to_float());
            }
        }
        FloatMap { n, components, jacobian }
    }
}

impl NumericMap for FloatMap {
    fn domain_dim(&self) -> usize {
        self.n
    }

    fn codomain_dim(&self) -> usize {
        self.components.len()
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    fn jacobian(&self, x: &[f64]) -> Vec<f64> {
        self.jacobian.iter().map(|c| c.eval(x)).collect()
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn residual(map: &dyn NumericMap, x: &[f64], target: &[f64]) -> Vec<f64> {
    map.eval(x).iter().zip(target).map(|(a, b)| a - b).collect()
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
/// Returns `false` for a (numerically) singular matrix.
pub fn solve_dense(a: &mut [f64], b: &mut [f64]) -> bool {
    let n = b.len();
    for col in 0..n {
        let (piv, best) = (col..n)
            .map(|r| (r, a[r * n + col].abs()))
            .fold((col, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if !(best > 0.0) || !best.is_finite() {
            return false;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        for r in col + 1..n {
            let factor = a[r * n + col] / a[col * n + col];
            if factor != 0.0 {
                for k in col..n {
                    a[r * n + k] -= factor * a[col * n + k];
                }
                b[r] -= factor * b[col];
            }
        }
    }
    for col in (0..n).rev() {
        let mut s = b[col];
        for k in col + 1..n {
            s -= a[col * n + k] * b[k];
        }
        b[col] = s / a[col * n + col];
    }
    b.iter().all(|v| v.is_finite())
}

/// Minimum-norm solution `Jᵀ (J Jᵀ + λ I)⁻¹ r` of `J δ = r` for a `p × n`
/// matrix, with a tiny Tikhonov term for rank deficiency.
pub fn min_norm_step(jac: &[f64], p: usize, n: usize, r: &[f64]) -> Option<Vec<f64>> {
    let mut gram = vec![0.0; p * p];
    for i in 0..p {
        for k in 0..p {
            gram[i * p + k] = (0..n).map(|j| jac[i * n + j] * jac[k * n + j]).sum();
        }
    }
    let trace: f64 = (0..p).map(|i| gram[i * p + i]).sum();
    if !(trace > 0.0) || !trace.is_finite() {
        return None;
    }
    let lambda = 1e-14 * trace;
    for i in 0..p {
        gram[i * p + i] += lambda;
    }
    let mut w = r.to_vec();
    if !solve_dense(&mut gram, &mut w) {
        return None;
    }
    Some((0..n).map(|j| (0..p).map(|i| jac[i * n + j] * w[i]).sum()).collect())
}

/// Largest singular value of a `p × n` matrix.
pub fn operator_norm(jac: &[f64], p: usize, n: usize) -> f64 {
    let (small, big, transpose) = if p <= n { (p, n, false) } else { (n, p, true) };
    let at = |i: usize, j: usize| if transpose { jac[j * n + i] } else { jac[i * n + j] };
    let mut gram = vec![0.0; small * small];
    for i in 0..small {
        for k in 0..small {
            gram[i * small + k] = (0..big).map(|j| at(i, j) * at(k, j)).sum();
        }
    }
    if small == 1 {
        return gram[0].sqrt();
    }
    let mut v: Vec<f64> = (0..small).map(|i| 1.0 + 0.1 * i as f64).collect();
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w: Vec<f64> = (0..small).map(|i| (0..small).map(|k| gram[i * small + k] * v[k]).sum()).collect();
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        let next = nw / norm(&v);
        v = w.iter().map(|x| x / nw).collect();
        if (next - lambda).abs() <= 1e-15 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

/// Deterministic generator for a probe, derived from a user seed and a salt
/// naming the call site.
pub fn seeded_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; u1 in (0, 1].
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * core::f64::consts::PI * u2).cos()
}

pub fn uniform_on_sphere<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| standard_normal(rng)).collect();
        let nv = norm(&v);
        if nv > 1e-12 {
            return v.iter().map(|x| x * radius / nv).collect();
        }
    }
}

pub fn uniform_in_ball<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<f64> {
    let r = radius * rng.random::<f64>().powf(1.0 / n as f64);
    uniform_on_sphere(rng, n, r)
}

/// Gauss-Newton with minimum-norm steps towards the fibre `map⁻¹(target)`,
/// which approximates the nearest-point projection. `None` if it stalls.
pub fn project_to_fiber(map: &dyn NumericMap, start: &[f64], target: &[f64], max_iter: usize, tol: f64) -> Option<Vec<f64>> {
    let (p, n) = (map.codomain_dim(), map.domain_dim());
    let scale = 1.0 + norm(target);
    let mut x = start.to_vec();
    let mut r = residual(map, &x, target);
    let mut rn = norm(&r);
    for _ in 0..max_iter {
        if rn <= tol * scale {
            return Some(x);
        }
        let jac = map.jacobian(&x);
        let step = min_norm_step(&jac, p, n, &r)?;
        let mut s = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let cand: Vec<f64> = x.iter().zip(&step).map(|(a, d)| a - s * d).collect();
            let rc = residual(map, &cand, target);
            let rcn = norm(&rc);
            if rcn < rn {
                x = cand;
                r = rc;
                rn = rcn;
                improved = true;
                break;
            }
            s *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (rn <= tol * scale).then_some(x)
}

fn onto_sphere(x: &[f64], radius: f64) -> Option<Vec<f64>> {
    let nx = norm(x);
    (nx > 0.0 && nx.is_finite()).then(|| x.iter().map(|v| v * radius / nx).collect())
}

/// Local minimum of `|map(x) - target|` over the sphere `|x| = radius`, by
/// projected descent from `start`: a Gauss-Newton step in the tangent space
/// first, a normalized projected-gradient step as fallback, each with
/// backtracking. Returns the point and the attained distance.
pub fn descend_on_sphere(map: &dyn NumericMap, target: &[f64], radius: f64, start: &[f64], max_iter: usize) -> (Vec<f64>, f64) {
    let (p, n) = (map.codomain_dim(), map.domain_dim());
    let mut x = onto_sphere(start, radius).unwrap_or_else(|| start.to_vec());
    let mut r = residual(map, &x, target);
    let mut obj = norm(&r);
    let mut alpha: f64 = 0.25;
    for _ in 0..max_iter {
        if obj == 0.0 || !obj.is_finite() {
            break;
        }
        let jac = map.jacobian(&x);
        let unit: Vec<f64> = x.iter().map(|v| v / radius).collect();
        // J restricted to the tangent space: J (I - u uᵀ).
        let mut jt = jac.clone();
        for i in 0..p {
            let dot: f64 = (0..n).map(|j| jac[i * n + j] * unit[j]).sum();
            for j in 0..n {
                jt[i * n + j] -= dot * unit[j];
            }
        }
        let mut accepted = false;
        if let Some(step) = min_norm_step(&jt, p, n, &r) {
            let mut s = 1.0;
            for _ in 0..60 {
                let cand: Vec<f64> = x.iter().zip(&step).map(|(a, d)| a - s * d).collect();
                if let Some(cand) = onto_sphere(&cand, radius) {
                    let rc = residual(map, &cand, target);
                    let oc = norm(&rc);
                    if oc < obj {
                        x = cand;
                        r = rc;
                        obj = oc;
                        accepted = true;
                        break;
                    }
                }
                s *= 0.5;
            }
        }
        if !accepted {
            let grad: Vec<f64> = (0..n).map(|j| (0..p).map(|i| jt[i * n + j] * r[i]).sum()).collect();
            let gn = norm(&grad);
            if !(gn > 0.0) || !gn.is_finite() {
                break;
            }
            alpha = (alpha * 2.0).min(1.0);
            for _ in 0..90 {
                let cand: Vec<f64> = x.iter().zip(&grad).map(|(a, g)| a - alpha * radius * g / gn).collect();
                if let Some(cand) = onto_sphere(&cand, radius) {
                    let rc = residual(map, &cand, target);
                    let oc = norm(&rc);
                    if oc < obj {
                        x = cand;
                        r = rc;
                        obj = oc;
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
        }
        if !accepted {
            break;
        }
    }
    (x, obj)
}

/// Levenberg-Marquardt on a square-or-tall residual system. `system`
/// returns the residual vector (length `k`) and its row-major `k × n`
/// Jacobian. Returns the final point and residual norm.
pub fn levenberg_marquardt<F>(system: F, start: &[f64], max_iter: usize) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> (Vec<f64>, Vec<f64>),
{
    let n = start.len();
    let mut x = start.to_vec();
    let (mut r, mut jac) = system(&x);
    let mut cost = norm(&r);
    let mut mu = 1e-3;
    for _ in 0..max_iter {
        if cost < 1e-15 || !cost.is_finite() {
            break;
        }
        let k = r.len();
        let mut jtj = vec![0.0; n * n];
        let mut jtr = vec![0.0; n];
        for a in 0..n {
            for b in 0..n {
                jtj[a * n + b] = (0..k).map(|i| jac[i * n + a] * jac[i * n + b]).sum();
            }
            jtr[a] = (0..k).map(|i| jac[i * n + a] * r[i]).sum();
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut m = jtj.clone();
            for a in 0..n {
                m[a * n + a] += mu * (1.0 + jtj[a * n + a]);
            }
            let mut step = jtr.clone();
            if solve_dense(&mut m, &mut step) {
                let cand: Vec<f64> = x.iter().zip(&step).map(|(a, d)| a - d).collect();
                let (rc, jc) = system(&cand);
                let cc = norm(&rc);
                if cc < cost {
                    x = cand;
                    r = rc;
                    jac = jc;
                    cost = cc;
                    mu = (mu * 0.3).max(1e-15);
                    improved = true;
                    break;
                }
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (x, cost)
}
