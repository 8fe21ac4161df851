//! Exact ideal engine: Buchberger's algorithm with the Gebauer-Möller pair
//! criteria, normal forms, elimination, saturation, intersection, Krull
//! dimension and univariate real-root isolation.

mod ops;
pub mod roots;

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{BudgetKind, Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, Ring};

pub use ops::{dimension, eliminate, intersect, radical_contains, saturate};
pub use roots::{real_roots, RootInterval};

/// Monomial order used by a Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Eliminates the first block.
    Block(usize),
}

fn grevlex_slices(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::Lex => a.lex_cmp(b),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exponents().split_at(k);
                let (b1, b2) = b.exponents().split_at(k);
                grevlex_slices(a1, b1).then_with(|| grevlex_slices(a2, b2))
            }
        }
    }

    /// Leading monomial and coefficient of `p`.
    pub fn leading_term<'a>(&self, p: &'a Polynomial) -> Option<&'a (Monomial, Rational)> {
        p.terms().iter().max_by(|x, y| self.cmp(&x.0, &y.0))
    }
}

/// Resource caps; exceeding one aborts with [`Error::BudgetExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbBudget {
    pub max_basis: usize,
    pub max_degree: u32,
    pub max_pairs: usize,
    /// Bit length of any integer coefficient during reduction.
    pub max_coeff_bits: u64,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget { max_basis: 5000, max_degree: 60, max_pairs: 250_000, max_coeff_bits: 8192 }
    }
}

/// A finitely generated ideal; zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal { ring: ring.clone(), generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: alloc::vec![Polynomial::one(ring)] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn groebner(&self, order: MonomialOrder, budget: &GbBudget) -> Result<GroebnerBasis> {
        buchberger(self, order, budget)
    }

    pub fn is_unit(&self, budget: &GbBudget) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::Grevlex, budget)?.is_unit())
    }

    pub fn contains(&self, p: &Polynomial, budget: &GbBudget) -> Result<bool> {
        self.groebner(MonomialOrder::Grevlex, budget)?.contains(p)
    }

    /// Generators replaced by the reduced grevlex basis.
    pub fn reduced(&self, budget: &GbBudget) -> Result<Ideal> {
        Ok(self.groebner(MonomialOrder::Grevlex, budget)?.to_ideal())
    }
}

/// Reduced Gröbner basis: monic, auto-reduced, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: Ring,
    basis: Vec<Polynomial>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal { ring: self.ring.clone(), generators: self.basis.clone() }
    }

    /// Remainder of multivariate division by the basis; zero iff `p` lies in
    /// the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let order = self.order;
        let mut rest: Vec<(Monomial, Rational)> = p.terms().to_vec();
        rest.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
        let sorted_basis: Vec<Vec<(Monomial, Rational)>> = self
            .basis
            .iter()
            .map(|g| {
                let mut t = g.terms().to_vec();
                t.sort_by(|a, b| order.cmp(&b.0, &a.0));
                t
            })
            .collect();
        while let Some((m, c)) = rest.first().cloned() {
            let reducer = self.leading.iter().position(|l| l.divides(&m));
            match reducer {
                Some(k) => {
                    let q = self.leading[k].quotient_of(&m).expect("divides");
                    let shifted: Vec<(Monomial, Rational)> = sorted_basis[k]
                        .iter()
                        .map(|(t, a)| Ok((t.checked_mul(&q)?, a * &c)))
                        .collect::<Result<_>>()?;
                    rest = merge_sub(&rest, &shifted, order);
                }
                None => {
                    remainder.push((m, c));
                    rest.remove(0);
                }
            }
        }
        Polynomial::from_terms(&self.ring, remainder)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

fn merge_sub(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], order: MonomialOrder) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), -&b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 - &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Integer polynomial with terms sorted descending in the working order.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<(Monomial, BigInt)>,
    /// Degree the polynomial would have under homogenization; drives pair
    /// selection.
    sugar: u32,
}

impl GPoly {
    fn from_polynomial(p: &Polynomial, order: MonomialOrder) -> GPoly {
        let prim = p.primitive_part();
        let mut terms: Vec<(Monomial, BigInt)> = prim.terms().iter().map(|(m, c)| (m.clone(), c.to_integer())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let mut g = GPoly { terms, sugar };
        g.normalize_sign();
        g
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn normalize_sign(&mut self) {
        if self.terms.first().is_some_and(|(_, c)| c.is_negative()) {
            for (_, c) in &mut self.terms {
                *c = -&*c;
            }
        }
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
        self.normalize_sign();
    }

    fn to_polynomial(&self, ring: &Ring) -> Polynomial {
        let lc = Rational::from_integer(self.lc().clone());
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc)))
            .expect("terms come from the same ring")
    }
}

/// `a·p - b·q` over sorted term lists.
fn lin_comb(p: &[(Monomial, BigInt)], a: &BigInt, q: &[(Monomial, BigInt)], b: &BigInt, order: MonomialOrder) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() || j < q.len() {
        let ord = match (p.get(i), q.get(j)) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((p[i].0.clone(), &p[i].1 * a));
                i += 1;
            }
            Ordering::Less => {
                out.push((q[j].0.clone(), -(&q[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &p[i].1 * a - &q[j].1 * b;
                if !c.is_zero() {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn shift(q: &[(Monomial, BigInt)], by: &Monomial) -> Result<Vec<(Monomial, BigInt)>> {
    q.iter().map(|(m, c)| Ok((m.checked_mul(by)?, c.clone()))).collect()
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'b> {
    order: MonomialOrder,
    budget: &'b GbBudget,
    polys: Vec<GPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    processed: usize,
}

impl<'b> Engine<'b> {
    /// Full reduction of `f` by the active polynomials. The result equals
    /// `f` up to a nonzero scalar, modulo the ideal.
    fn reduce(&self, f: GPoly) -> Result<GPoly> {
        let order = self.order;
        let mut sugar = f.sugar;
        let mut rest = f.terms;
        let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
        let mut steps = 0usize;
        while !rest.is_empty() {
            let (m, c) = (&rest[0].0, &rest[0].1);
            let reducer = self
                .active
                .iter()
                .copied()
                .filter(|&k| self.polys[k].lm().divides(m))
                .min_by_key(|&k| self.polys[k].terms.len());
            match reducer {
                Some(k) => {
                    let g = &self.polys[k];
                    let q = g.lm().quotient_of(m).expect("divides");
                    sugar = sugar.max(g.sugar + q.degree());
                    let d = c.gcd(g.lc());
                    let a = g.lc() / &d;
                    let b = c / &d;
                    let tail = shift(&g.terms[1..], &q)?;
                    rest = lin_comb(&rest[1..], &a, &tail, &b, order);
                    if !a.is_one() {
                        for (_, x) in &mut rem {
                            *x = &*x * &a;
                        }
                    }
                    steps += 1;
                    if steps.is_multiple_of(8) {
                        strip_joint_content(&mut rem, &mut rest);
                        self.check_coefficients(rem.iter().chain(rest.iter()))?;
                    }
                }
                None => {
                    let t = rest.remove(0);
                    rem.push(t);
                }
            }
        }
        let mut out = GPoly { terms: rem, sugar };
        out.make_primitive();
        Ok(out)
    }

    fn check_coefficients<'a>(&self, terms: impl Iterator<Item = &'a (Monomial, BigInt)>) -> Result<()> {
        let limit = self.budget.max_coeff_bits;
        if terms.map(|(_, c)| c.bits()).any(|b| b > limit) {
            return Err(Error::BudgetExceeded { kind: BudgetKind::CoefficientSize, limit: limit as usize });
        }
        Ok(())
    }

    fn s_poly(&self, pair: &Pair) -> Result<GPoly> {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let qf = f.lm().quotient_of(&pair.lcm).expect("lcm");
        let qg = g.lm().quotient_of(&pair.lcm).expect("lcm");
        let d = f.lc().gcd(g.lc());
        let a = g.lc() / &d;
        let b = f.lc() / &d;
        let terms = lin_comb(&shift(&f.terms[1..], &qf)?, &a, &shift(&g.terms[1..], &qg)?, &b, self.order);
        Ok(GPoly { terms, sugar: pair.sugar })
    }

    /// Gebauer-Möller installation of a new basis element.
    fn insert(&mut self, h: GPoly) -> Result<()> {
        if h.max_degree() > self.budget.max_degree {
            return Err(Error::BudgetExceeded { kind: BudgetKind::Degree, limit: self.budget.max_degree as usize });
        }
        self.check_coefficients(h.terms.iter())?;
        if self.polys.len() >= self.budget.max_basis {
            return Err(Error::BudgetExceeded { kind: BudgetKind::BasisSize, limit: self.budget.max_basis });
        }
        let hi = self.polys.len();
        let lm_h = h.lm().clone();
        self.polys.push(h);

        let mut candidates: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lm_g = self.polys[g].lm();
                (g, lm_h.lcm(lm_g), lm_h.is_coprime(lm_g))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, lcm, coprime)) = (!candidates.is_empty()).then(|| candidates.remove(0)) {
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, other, _)| other.divides(&lcm));
            if coprime || !dominated {
                kept.push((g, lcm, coprime));
            }
        }
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lm_h.lcm(self.polys[p.i].lm()) != p.lcm
                && lm_h.lcm(self.polys[p.j].lm()) != p.lcm)
        });
        for (g, lcm, coprime) in kept {
            if !coprime {
                let (a, b) = (&self.polys[g], &self.polys[hi]);
                let sugar = (a.sugar + lcm.degree() - a.lm().degree()).max(b.sugar + lcm.degree() - b.lm().degree());
                self.pairs.push(Pair { i: g, j: hi, lcm, sugar });
            }
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lm_h.divides(polys[g].lm()));
        self.active.push(hi);
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar.cmp(&pb.sugar).then_with(|| order.cmp(&pa.lcm, &pb.lcm)).then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

fn strip_joint_content(a: &mut [(Monomial, BigInt)], b: &mut [(Monomial, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in a.iter().chain(b.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, c) in a.iter_mut().chain(b.iter_mut()) {
        *c = &*c / &g;
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, budget: &GbBudget) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    if let MonomialOrder::Block(k) = order {
        if k > ring.nvars() {
            return Err(Error::IndexOutOfRange { index: k, len: ring.nvars() });
        }
    }
    let mut engine = Engine { order, budget, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), processed: 0 };
    let mut inputs: Vec<GPoly> = ideal.generators().iter().map(|g| GPoly::from_polynomial(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));
    for g in inputs {
        let r = engine.reduce(g)?;
        if !r.is_zero() {
            engine.insert(r)?;
        }
    }
    while let Some(pair) = engine.next_pair() {
        engine.processed += 1;
        if engine.processed > budget.max_pairs {
            return Err(Error::BudgetExceeded { kind: BudgetKind::Pairs, limit: budget.max_pairs });
        }
        let s = engine.s_poly(&pair)?;
        if s.is_zero() {
            continue;
        }
        let r = engine.reduce(s)?;
        if !r.is_zero() {
            engine.insert(r)?;
        }
    }

    // The active set is minimal; reduce each tail against the others.
    let mut active = engine.active.clone();
    active.sort_by(|&a, &b| order.cmp(engine.polys[a].lm(), engine.polys[b].lm()));
    let mut reduced: Vec<GPoly> = Vec::with_capacity(active.len());
    for (idx, &k) in active.iter().enumerate() {
        let others: Vec<usize> = active.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, &v)| v).collect();
        reduced.push(reduce_tail(&engine.polys[k], &engine.polys, &others, order)?);
    }
    let basis: Vec<Polynomial> = reduced.iter().map(|g| g.to_polynomial(&ring)).collect();
    let leading: Vec<Monomial> = reduced.iter().map(|g| g.lm().clone()).collect();
    Ok(GroebnerBasis { order, ring, basis, leading })
}

/// `g` with its tail fully reduced by `polys[others]`; the head coefficient
/// is scaled along with the tail so the result stays a multiple of `g`
/// modulo the ideal.
fn reduce_tail(g: &GPoly, polys: &[GPoly], others: &[usize], order: MonomialOrder) -> Result<GPoly> {
    let mut rest: Vec<(Monomial, BigInt)> = g.terms[1..].to_vec();
    let mut head_coeff = g.lc().clone();
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    while !rest.is_empty() {
        let (m, c) = (&rest[0].0, &rest[0].1);
        match others.iter().copied().find(|&k| polys[k].lm().divides(m)) {
            Some(k) => {
                let r = &polys[k];
                let q = r.lm().quotient_of(m).expect("divides");
                let d = c.gcd(r.lc());
                let a = r.lc() / &d;
                let b = c / &d;
                let t = shift(&r.terms[1..], &q)?;
                rest = lin_comb(&rest[1..], &a, &t, &b, order);
                for (_, x) in &mut rem {
                    *x = &*x * &a;
                }
                head_coeff *= &a;
            }
            None => {
                let t = rest.remove(0);
                rem.push(t);
            }
        }
    }
    let mut terms = alloc::vec![(g.lm().clone(), head_coeff)];
    terms.extend(rem);
    let mut out = GPoly { terms, sugar: g.sugar };
    out.make_primitive();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use alloc::string::ToString;
    use alloc::vec;

    fn ring_xy() -> Ring {
        Ring::new(["x", "y"])
    }

    fn poly(ring: &Ring, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(ring, terms.iter().map(|(c, e)| (Monomial::from_exponents(e.to_vec()).unwrap(), rat(*c)))).unwrap()
    }

    #[test]
    fn already_a_basis() {
        let r = ring_xy();
        let i = Ideal::new(&r, vec![poly(&r, &[(1, &[2, 0]), (-1, &[0, 1])]), poly(&r, &[(1, &[0, 2])])]).unwrap();
        let gb = i.groebner(MonomialOrder::Grevlex, &GbBudget::default()).unwrap();
        let printed: Vec<_> = gb.basis().iter().map(|p| p.to_string()).collect();
        assert_eq!(printed, vec!["y^2", "x^2 - y"]);
        let x2y = poly(&r, &[(1, &[2, 1])]);
        assert!(gb.normal_form(&x2y).unwrap().is_zero());
    }

    #[test]
    fn monomial_and_unit_ideals() {
        let r = ring_xy();
        let x = Polynomial::var(&r, 0).unwrap();
        let y = Polynomial::var(&r, 1).unwrap();
        let gb = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap().groebner(MonomialOrder::Grevlex, &GbBudget::default()).unwrap();
        assert_eq!(gb.basis().len(), 2);
        let xm1 = &x - &Polynomial::one(&r);
        let unit = Ideal::new(&r, vec![xm1, x.clone()]).unwrap().groebner(MonomialOrder::Grevlex, &GbBudget::default()).unwrap();
        assert!(unit.is_unit());
        assert_eq!(unit.basis(), &[Polynomial::one(&r)]);
    }

    #[test]
    fn normal_form_membership() {
        let r = ring_xy();
        let x = Polynomial::var(&r, 0).unwrap();
        let y = Polynomial::var(&r, 1).unwrap();
        let gb = Ideal::new(&r, vec![x.clone()]).unwrap().groebner(MonomialOrder::Grevlex, &GbBudget::default()).unwrap();
        assert!(gb.normal_form(&(&x * &x)).unwrap().is_zero());
        assert_eq!(gb.normal_form(&y).unwrap(), y);
    }

    #[test]
    fn lex_basis_of_twisted_cubic() {
        let r = Ring::new(["t", "x", "y"]);
        let t = Polynomial::var(&r, 0).unwrap();
        let x = Polynomial::var(&r, 1).unwrap();
        let y = Polynomial::var(&r, 2).unwrap();
        let gens = vec![&x - &(&t * &t), &y - &(&(&t * &t) * &t)];
        let gb = Ideal::new(&r, gens).unwrap().groebner(MonomialOrder::Lex, &GbBudget::default()).unwrap();
        let free_of_t: Vec<_> = gb.basis().iter().filter(|p| !p.support()[0]).map(|p| p.to_string()).collect();
        assert_eq!(free_of_t, vec!["x^3 - y^2"]);
    }

    #[test]
    fn degree_budget_is_reported() {
        let r = ring_xy();
        let x = Polynomial::var(&r, 0).unwrap();
        let y = Polynomial::var(&r, 1).unwrap();
        let big = (&x * &y).try_pow(10).unwrap();
        let budget = GbBudget { max_degree: 5, ..GbBudget::default() };
        let err = Ideal::new(&r, vec![big]).unwrap().groebner(MonomialOrder::Grevlex, &budget).unwrap_err();
        assert!(err.is_budget());
    }
}
