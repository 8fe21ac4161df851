//! Critical values: the Zariski closure of `g(crit g)` by elimination of
//! Jacobian minors, and numerically witnessed real critical values for
//! scalar maps.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::{self, roots, GbBudget, Ideal, RootInterval};
use crate::numeric::{levenberg_marquardt, norm, seeded_rng, standard_normal, FloatPoly};
use crate::poly::{PolyMap, Polynomial, Rational, Ring};

/// `p × m` matrix of partial derivatives `∂g_i/∂x_j`.
pub fn jacobian(g: &PolyMap) -> Result<Vec<Vec<Polynomial>>> {
    g.components()
        .iter()
        .map(|gi| (0..g.domain_dim()).map(|j| gi.partial_derivative(j)).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
fn determinant(m: &[Vec<Polynomial>], ring: &Ring) -> Result<Polynomial> {
    let k = m.len();
    if k == 0 {
        return Ok(Polynomial::one(ring));
    }
    if k == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Polynomial::zero(ring);
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect()).collect();
        let term = m[0][col].try_mul(&determinant(&minor, ring)?)?;
        acc = if col % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
    }
    Ok(acc)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All maximal (`p × p`) minors of the Jacobian; empty when `p > m`.
pub fn maximal_minors(g: &PolyMap) -> Result<Vec<Polynomial>> {
    let jac = jacobian(g)?;
    let (p, m) = (g.codomain_dim(), g.domain_dim());
    if p > m {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for cols in subsets(m, p) {
        let sub: Vec<Vec<Polynomial>> = jac.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        let d = determinant(&sub, g.ring())?;
        if !d.is_zero() {
            out.push(d);
        }
    }
    Ok(out)
}

/// Ideal in `t1..tp` whose zero set is the closure of the critical values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalIdeal {
    pub ideal: Ideal,
}

impl CriticalIdeal {
    pub fn is_unit(&self) -> bool {
        self.ideal.generators().iter().any(|g| g.is_constant())
    }
}

pub fn critical_ideal(g: &PolyMap, budget: &GbBudget) -> Result<CriticalIdeal> {
    let (p, m) = (g.codomain_dim(), g.domain_dim());
    let out_ring = Ring::numbered("t", p);
    let tnames = g.ring().fresh_names("t", p);
    let ring = g.ring().append(&tnames);
    let mut gens = Vec::new();
    for (i, gi) in g.components().iter().enumerate() {
        gens.push(gi.extend_to(&ring)?.try_sub(&Polynomial::var(&ring, m + i)?)?);
    }
    if p <= m {
        for minor in maximal_minors(g)? {
            gens.push(minor.extend_to(&ring)?);
        }
    }
    let drop: Vec<usize> = (0..m).collect();
    let elim = groebner::eliminate(&Ideal::new(&ring, gens)?, &drop, budget)?;
    let tmap: Vec<usize> = (0..p).collect();
    let ideal = Ideal::new(&out_ring, elim.generators().iter().map(|q| q.remap(&out_ring, &tmap)).collect::<Result<_>>()?)?;
    Ok(CriticalIdeal { ideal })
}

/// A real root of the critical-value polynomial of a scalar map.
#[derive(Clone, Debug, PartialEq)]
pub struct RealCriticalValue {
    pub interval: RootInterval,
    pub value: f64,
    /// A real critical point with `|∇g| + |g - value| < 1e-8` was found.
    pub attained: bool,
    pub witness: Option<Vec<f64>>,
    pub residual: f64,
}

const ATTAINED_TOL: f64 = 1e-8;

/// Real critical values of a scalar map, each checked for a real witness
/// by Levenberg-Marquardt on `(∇g, g - t)` from seeded starts.
pub fn real_critical_values(g: &PolyMap, crit: &CriticalIdeal, seed: u64) -> Result<Vec<RealCriticalValue>> {
    if g.codomain_dim() != 1 {
        return Err(Error::InvalidArgument("real critical values need a scalar map".into()));
    }
    let gens = crit.ideal.generators();
    let Some(principal) = gens.iter().min_by_key(|q| q.degree()) else {
        return Ok(Vec::new());
    };
    if principal.is_constant() {
        return Ok(Vec::new());
    }
    let m = g.domain_dim();
    let fine = Rational::new(BigInt::one(), BigInt::one() << 53);
    let g0 = g.components()[0].to_float();
    let grad: Vec<FloatPoly> = (0..m).map(|j| g.components()[0].partial_derivative(j).map(|d| d.to_float())).collect::<Result<_>>()?;
    let hess: Vec<Vec<FloatPoly>> = (0..m)
        .map(|i| {
            let di = g.components()[0].partial_derivative(i)?;
            (0..m).map(|j| di.partial_derivative(j).map(|d| d.to_float())).collect()
        })
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    for iv in groebner::real_roots(principal)? {
        let iv = roots::refine(principal, &iv, &fine)?;
        let value = iv.approx();
        if m == 0 {
            let r = (g0.eval(&[]) - value).abs();
            out.push(RealCriticalValue { interval: iv, value, attained: r < ATTAINED_TOL, witness: Some(Vec::new()), residual: r });
            continue;
        }
        let system = |x: &[f64]| {
            let mut r: Vec<f64> = grad.iter().map(|d| d.eval(x)).collect();
            r.push(g0.eval(x) - value);
            let mut jac = Vec::with_capacity((m + 1) * m);
            for row in &hess {
                jac.extend(row.iter().map(|h| h.eval(x)));
            }
            jac.extend(grad.iter().map(|d| d.eval(x)));
            (r, jac)
        };
        let mut rng = seeded_rng(seed, 0xc717 ^ out.len() as u64);
        let mut best: Option<(Vec<f64>, f64)> = None;
        for k in 0..64 {
            let scale = [0.5, 1.5, 4.0][k % 3];
            let start: Vec<f64> = (0..m).map(|_| scale * standard_normal(&mut rng)).collect();
            let (x, cost) = levenberg_marquardt(system, &start, 200);
            if best.as_ref().is_none_or(|b| cost < b.1) {
                best = Some((x, cost));
            }
            if cost < ATTAINED_TOL * 1e-2 {
                break;
            }
        }
        let (x, cost) = best.expect("at least one start");
        let attained = cost < ATTAINED_TOL && norm(&x).is_finite();
        out.push(RealCriticalValue { interval: iv, value, attained, witness: attained.then_some(x), residual: cost });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn map(names: &[&str], build: impl Fn(&[Polynomial]) -> Vec<Polynomial>) -> PolyMap {
        let r = Ring::new(names.iter().copied());
        let v: Vec<Polynomial> = (0..names.len()).map(|i| Polynomial::var(&r, i).unwrap()).collect();
        PolyMap::new(&r, build(&v)).unwrap()
    }

    fn shown(i: &Ideal) -> Vec<String> {
        i.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn jacobian_entries() {
        let g = map(&["x", "w"], |v| vec![v[0].clone(), &v[0] * &v[1]]);
        let j = jacobian(&g).unwrap();
        let s: Vec<Vec<String>> = j.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        assert_eq!(s, vec![vec!["1", "0"], vec!["w", "x"]]);
    }

    #[test]
    fn critical_ideals() {
        let b = GbBudget::default();
        let g = map(&["x", "w"], |v| vec![v[0].clone(), &v[0] * &v[1]]);
        let mut s = shown(&critical_ideal(&g, &b).unwrap().ideal);
        s.sort();
        assert_eq!(s, vec!["t1", "t2"]);
        let cube = map(&["u"], |v| vec![&(&v[0] * &v[0]) * &v[0]]);
        assert_eq!(shown(&critical_ideal(&cube, &b).unwrap().ideal), vec!["t1"]);
        let lin = map(&["x", "y"], |v| vec![&v[0] + &v[1], &v[0] - &v[1]]);
        assert!(critical_ideal(&lin, &b).unwrap().is_unit());
    }

    #[test]
    fn witnessed_critical_values() {
        let b = GbBudget::default();
        let g = map(&["x", "y"], |v| {
            let one = Polynomial::one(v[0].ring());
            vec![&(&(&v[0] * &v[0]) + &(&v[1] * &v[1])) + &one]
        });
        let crit = critical_ideal(&g, &b).unwrap();
        let vals = real_critical_values(&g, &crit, 7).unwrap();
        assert_eq!(vals.len(), 1);
        assert!(vals[0].interval.is_exact() && vals[0].interval.lo == rat(1));
        assert!(vals[0].attained);
    }
}
