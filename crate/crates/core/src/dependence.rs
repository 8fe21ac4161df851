//! Linear invariance directions of a mapping and the factorization
//! `f = g ∘ π` through a linear surjection.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Subspace};
use crate::poly::{LinearMap, Monomial, PolyMap, Polynomial, Rational, Ring};

/// `V = {v : ∂_v f ≡ 0}`, the largest subspace along which `f` is constant.
///
/// `∂_v f_i = Σ_j v_j ∂f_i/∂x_j` vanishes identically iff for every
/// monomial the coefficients cancel, which is a linear system in `v`.
pub fn invariance_subspace(f: &PolyMap) -> Result<Subspace> {
    let n = f.domain_dim();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for comp in f.components() {
        let mut by_monomial: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for j in 0..n {
            for (m, c) in comp.partial_derivative(j)?.terms() {
                by_monomial.entry(m.clone()).or_insert_with(|| vec![Rational::zero(); n])[j] = c.clone();
            }
        }
        rows.extend(by_monomial.into_values());
    }
    Ok(Subspace::span(n, &linalg::kernel(&rows, n)))
}

/// `f = g ∘ π` with `π` a linear surjection and `g` free of invariance
/// directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationResult {
    /// Invariance directions of `f`.
    pub v: Subspace,
    /// `n - dim V`.
    pub m: usize,
    /// Invertible `n × n`; the first `n - m` columns span `V`, the rest are
    /// unit vectors at the non-pivot coordinates of `V`.
    pub ell: LinearMap,
    /// Last `m` rows of `ell⁻¹`.
    pub pi: LinearMap,
    /// `g(u) = f(ell(0, u))`, in variables `u1..um`.
    pub g: PolyMap,
}

impl FactorizationResult {
    /// Indices of the coordinates used as complement to `V`.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ell.rows()).filter(|j| !self.v.pivots().contains(j)).collect()
    }

    /// Checks `f = g ∘ π` as a polynomial identity.
    pub fn verify(&self, f: &PolyMap) -> Result<bool> {
        if f.codomain_dim() != self.g.codomain_dim() {
            return Ok(false);
        }
        if self.m == 0 {
            return Ok(f
                .components()
                .iter()
                .zip(self.g.components())
                .all(|(a, b)| a.is_constant() && a.constant_term() == b.constant_term()));
        }
        let composed = self.g.compose_linear(&self.pi, f.ring())?;
        Ok(composed.components() == f.components())
    }
}

/// Factors `f` through the projection killing its invariance directions.
pub fn factor_through_projection(f: &PolyMap) -> Result<FactorizationResult> {
    let n = f.domain_dim();
    let v = invariance_subspace(f)?;
    let m = n - v.dim();
    let complement: Vec<usize> = (0..n).filter(|j| !v.pivots().contains(j)).collect();

    let mut columns: Vec<Vec<Rational>> = v.basis().to_vec();
    for &j in &complement {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        columns.push(e);
    }
    let ell = LinearMap::from_columns(n, &columns)?;
    let inv = ell.inverse().ok_or_else(|| Error::InvalidArgument("complement does not span".into()))?;
    let pi_rows: Vec<Vec<Rational>> = (n - m..n).map(|i| inv.row(i).to_vec()).collect();
    let pi = LinearMap::from_rows(n, &pi_rows)?;

    let g_ring = if v.is_zero() { f.ring().clone() } else { Ring::numbered("u", m) };
    let g = if v.is_zero() {
        f.clone()
    } else {
        // ell(0, u) puts u_k at complement coordinate k and zero elsewhere.
        let images: Vec<Polynomial> = (0..n)
            .map(|i| match complement.iter().position(|&j| j == i) {
                Some(k) => Polynomial::var(&g_ring, k),
                None => Ok(Polynomial::zero(&g_ring)),
            })
            .collect::<Result<_>>()?;
        let comps = f
            .components()
            .iter()
            .map(|c| if m == 0 { Ok(Polynomial::constant(&g_ring, c.constant_term())) } else { c.substitute(&images) })
            .collect::<Result<Vec<_>>>()?;
        PolyMap::with_any_domain(&g_ring, comps)?
    };
    Ok(FactorizationResult { v, m, ell, pi, g })
}

/// `g ∘ π₀` where `π₀: K^{m+k} -> K^m` forgets the last `k` coordinates.
pub fn suspend(g: &PolyMap, extra_vars: usize) -> Result<PolyMap> {
    if extra_vars == 0 {
        return Ok(g.clone());
    }
    let extra = g.ring().fresh_names("w", extra_vars);
    let ring = g.ring().append(&extra);
    let comps = g.components().iter().map(|c| c.extend_to(&ring)).collect::<Result<Vec<_>>>()?;
    PolyMap::new(&ring, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use alloc::string::{String, ToString};

    fn map(names: &[&str], build: impl Fn(&[Polynomial]) -> Vec<Polynomial>) -> PolyMap {
        let r = Ring::new(names.iter().copied());
        let v: Vec<Polynomial> = (0..names.len()).map(|i| Polynomial::var(&r, i).unwrap()).collect();
        PolyMap::new(&r, build(&v)).unwrap()
    }

    fn shown(f: &PolyMap) -> Vec<String> {
        f.components().iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn simple_example_factors() {
        let f = map(&["x", "y", "z"], |v| vec![v[0].clone(), &(&v[0] * &v[1]) + &(&v[0] * &v[2])]);
        let res = factor_through_projection(&f).unwrap();
        assert_eq!(res.v.basis(), &[vec![rat(0), rat(1), rat(-1)]]);
        assert_eq!(res.m, 2);
        assert_eq!(shown(&res.g), vec!["u1", "u1*u2"]);
        assert_eq!(res.pi.row_vectors(), vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(1)]]);
        assert!(res.verify(&f).unwrap());
        assert!(invariance_subspace(&res.g).unwrap().is_zero());
    }

    #[test]
    fn bad_example_has_no_directions() {
        let f = map(&["x", "y", "z"], |v| vec![v[0].clone(), &(&v[0] * &v[1]) + &v[2]]);
        let res = factor_through_projection(&f).unwrap();
        assert_eq!(res.m, 3);
        assert_eq!(res.g, f);
        assert_eq!(res.pi, LinearMap::identity(3));
    }

    #[test]
    fn constant_mapping_is_fully_invariant() {
        let r = Ring::new(["x", "y"]);
        let f = PolyMap::new(&r, vec![Polynomial::constant(&r, rat(3))]).unwrap();
        let res = factor_through_projection(&f).unwrap();
        assert_eq!(res.v.dim(), 2);
        assert_eq!(res.m, 0);
        assert_eq!(res.g.domain_dim(), 0);
        assert!(res.verify(&f).unwrap());
    }

    #[test]
    fn suspension_adds_directions() {
        let g = map(&["u"], |v| vec![&(&v[0] * &v[0]) * &v[0]]);
        let f = suspend(&g, 1).unwrap();
        assert_eq!(f.ring().names(), &["u".to_string(), "w1".to_string()]);
        assert_eq!(invariance_subspace(&f).unwrap().dim(), 1);
        let res = factor_through_projection(&f).unwrap();
        assert_eq!(res.m, 1);
        assert_eq!(shown(&res.g), vec!["u1^3"]);
        assert_eq!(suspend(&g, 0).unwrap(), g);
    }
}
