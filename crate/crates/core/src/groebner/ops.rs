use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{GbBudget, Ideal, MonomialOrder};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

fn prepend_fresh(ring: &Ring, base: &str) -> (Ring, Vec<usize>) {
    let name = ring.fresh_name(base);
    let ext = ring.prepend(&[name]);
    let map = (1..=ring.nvars()).collect();
    (ext, map)
}

/// `I ∩ K[remaining variables]`, expressed in the ring of the remaining
/// variables (original order). The generators form a grevlex basis there.
pub fn eliminate(ideal: &Ideal, drop: &[usize], budget: &GbBudget) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut dropped = vec![false; n];
    for &d in drop {
        if d >= n {
            return Err(Error::IndexOutOfRange { index: d, len: n });
        }
        dropped[d] = true;
    }
    let keep: Vec<bool> = dropped.iter().map(|d| !d).collect();
    let k = dropped.iter().filter(|d| **d).count();
    let target = ring.select(&keep);

    // Dropped variables first, then the kept ones, each in original order.
    let order_idx: Vec<usize> = (0..n).filter(|&i| dropped[i]).chain((0..n).filter(|&i| !dropped[i])).collect();
    let mut map = vec![0; n];
    for (pos, &i) in order_idx.iter().enumerate() {
        map[i] = pos;
    }
    let perm_ring = Ring::new(order_idx.iter().map(|&i| ring.name(i).to_string()));
    let gens = ideal.generators().iter().map(|g| g.remap(&perm_ring, &map)).collect::<Result<Vec<_>>>()?;
    let gb = Ideal::new(&perm_ring, gens)?.groebner(MonomialOrder::Block(k), budget)?;
    let block_keep: Vec<bool> = (0..n).map(|i| i >= k).collect();
    let mut out = Vec::new();
    for g in gb.basis() {
        let s = g.support();
        if s[..k].iter().all(|x| !x) {
            out.push(g.restrict_to(&block_keep)?);
        }
    }
    Ideal::new(&target, out)
}

/// `I : h^∞`, via `⟨I, 1 - y·h⟩ ∩ K[x]`.
pub fn saturate(ideal: &Ideal, h: &Polynomial, budget: &GbBudget) -> Result<Ideal> {
    let ring = ideal.ring();
    if h.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if h.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    if h.is_constant() {
        return Ok(ideal.clone());
    }
    let (ext, map) = prepend_fresh(ring, "y");
    let mut gens = ideal.generators().iter().map(|g| g.remap(&ext, &map)).collect::<Result<Vec<_>>>()?;
    let y = Polynomial::var(&ext, 0)?;
    let hy = h.remap(&ext, &map)?.try_mul(&y)?;
    gens.push(Polynomial::one(&ext).try_sub(&hy)?);
    let out = eliminate(&Ideal::new(&ext, gens)?, &[0], budget)?;
    Ideal::new(ring, out.generators().to_vec())
}

/// `I ∩ J`, via `⟨s·I, (1 - s)·J⟩ ∩ K[x]`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &GbBudget) -> Result<Ideal> {
    let ring = a.ring();
    if b.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let (ext, map) = prepend_fresh(ring, "s");
    let s = Polynomial::var(&ext, 0)?;
    let one_minus_s = Polynomial::one(&ext).try_sub(&s)?;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(g.remap(&ext, &map)?.try_mul(&s)?);
    }
    for g in b.generators() {
        gens.push(g.remap(&ext, &map)?.try_mul(&one_minus_s)?);
    }
    let out = eliminate(&Ideal::new(&ext, gens)?, &[0], budget)?;
    Ideal::new(ring, out.generators().to_vec())
}

/// Krull dimension of `K[x]/I`; `-1` for the unit ideal. Computed as the
/// largest set of variables containing the support of no leading monomial.
pub fn dimension(ideal: &Ideal, budget: &GbBudget) -> Result<i64> {
    let gb = ideal.groebner(MonomialOrder::Grevlex, budget)?;
    if gb.is_unit() {
        return Ok(-1);
    }
    let n = ideal.ring().nvars();
    let supports: Vec<Vec<usize>> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.exponents().iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect())
        .collect();
    let mut chosen = vec![false; n];
    let mut best = 0usize;
    independent_search(0, 0, &mut chosen, &supports, &mut best);
    Ok(best as i64)
}

fn independent_search(var: usize, size: usize, chosen: &mut Vec<bool>, supports: &[Vec<usize>], best: &mut usize) {
    let n = chosen.len();
    if size > *best {
        *best = size;
    }
    if var == n || size + (n - var) <= *best {
        return;
    }
    chosen[var] = true;
    let ok = supports.iter().all(|s| !s.iter().all(|&i| chosen[i]));
    if ok {
        independent_search(var + 1, size + 1, chosen, supports, best);
    }
    chosen[var] = false;
    independent_search(var + 1, size, chosen, supports, best);
}

/// Whether `p` lies in the radical of `I`: `1 ∈ ⟨I, 1 - y·p⟩`.
pub fn radical_contains(ideal: &Ideal, p: &Polynomial, budget: &GbBudget) -> Result<bool> {
    let ring = ideal.ring();
    if p.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if p.is_zero() {
        return Ok(true);
    }
    let (ext, map) = prepend_fresh(ring, "y");
    let mut gens = ideal.generators().iter().map(|g| g.remap(&ext, &map)).collect::<Result<Vec<_>>>()?;
    let y = Polynomial::var(&ext, 0)?;
    gens.push(Polynomial::one(&ext).try_sub(&p.remap(&ext, &map)?.try_mul(&y)?)?);
    Ideal::new(&ext, gens)?.is_unit(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn vars(names: &[&str]) -> (Ring, Vec<Polynomial>) {
        let r = Ring::new(names.iter().copied());
        let v = (0..names.len()).map(|i| Polynomial::var(&r, i).unwrap()).collect();
        (r, v)
    }

    fn show(i: &Ideal) -> Vec<String> {
        i.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn eliminating_a_parameter() {
        let (r, v) = vars(&["t", "x", "y"]);
        let (t, x, y) = (&v[0], &v[1], &v[2]);
        let i = Ideal::new(&r, vec![x - &(t * t), y - &(&(t * t) * t)]).unwrap();
        let e = eliminate(&i, &[0], &GbBudget::default()).unwrap();
        assert_eq!(e.ring().names(), &["x", "y"]);
        assert_eq!(show(&e), vec!["x^3 - y^2"]);
    }

    #[test]
    fn saturation_removes_a_component() {
        let (r, v) = vars(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        // ⟨xy, x^2⟩ : x^∞ = ⟨1⟩ ; ⟨xy⟩ : x^∞ = ⟨y⟩
        let i = Ideal::new(&r, vec![x * y]).unwrap();
        assert_eq!(show(&saturate(&i, x, &GbBudget::default()).unwrap()), vec!["y"]);
        let j = Ideal::new(&r, vec![x * y, x * x]).unwrap();
        assert!(saturate(&j, x, &GbBudget::default()).unwrap().is_unit(&GbBudget::default()).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let (r, v) = vars(&["x", "y"]);
        let a = Ideal::new(&r, vec![v[0].clone()]).unwrap();
        let b = Ideal::new(&r, vec![v[1].clone()]).unwrap();
        assert_eq!(show(&intersect(&a, &b, &GbBudget::default()).unwrap()), vec!["x*y"]);
    }

    #[test]
    fn dimensions() {
        let (r, v) = vars(&["x", "y", "z"]);
        let b = GbBudget::default();
        assert_eq!(dimension(&Ideal::zero(&r), &b).unwrap(), 3);
        assert_eq!(dimension(&Ideal::unit(&r), &b).unwrap(), -1);
        assert_eq!(dimension(&Ideal::new(&r, vec![&v[0] * &v[1]]).unwrap(), &b).unwrap(), 2);
        assert_eq!(dimension(&Ideal::new(&r, vec![v[0].clone(), &v[1] * &v[2]]).unwrap(), &b).unwrap(), 1);
    }

    #[test]
    fn radical_membership() {
        let (r, v) = vars(&["x", "y"]);
        let i = Ideal::new(&r, vec![&(&v[0] * &v[0]) * &v[0]]).unwrap();
        let b = GbBudget::default();
        assert!(radical_contains(&i, &v[0], &b).unwrap());
        assert!(!radical_contains(&i, &v[1], &b).unwrap());
        assert!(!i.contains(&v[0], &b).unwrap());
    }
}
