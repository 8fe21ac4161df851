//! Rational mappings `num_i / den_i`: indeterminacy, invariance directions
//! and floating-point evaluation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::{GbBudget, Ideal};
use crate::linalg::{self, Subspace};
use crate::numeric::{FloatPoly, NumericMap};
use crate::poly::{Monomial, PolyMap, Polynomial, Rational, Ring};

/// Components `numerators[i] / denominators[i]` over a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    ring: Ring,
    numerators: Vec<Polynomial>,
    denominators: Vec<Polynomial>,
}

impl RationalMap {
    pub fn new(ring: &Ring, numerators: Vec<Polynomial>, denominators: Vec<Polynomial>) -> Result<Self> {
        if numerators.is_empty() {
            return Err(Error::InvalidArgument("a mapping needs at least one component".into()));
        }
        if numerators.len() != denominators.len() {
            return Err(Error::DimensionMismatch { expected: numerators.len(), found: denominators.len() });
        }
        if numerators.iter().chain(&denominators).any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        if denominators.iter().any(Polynomial::is_zero) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(RationalMap { ring: ring.clone(), numerators, denominators })
    }

    pub fn from_polymap(f: &PolyMap) -> Self {
        let ones = vec![Polynomial::one(f.ring()); f.codomain_dim()];
        RationalMap { ring: f.ring().clone(), numerators: f.components().to_vec(), denominators: ones }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[Polynomial] {
        &self.denominators
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn p(&self) -> usize {
        self.numerators.len()
    }

    /// The polynomial map when every denominator is a nonzero constant.
    pub fn as_polymap(&self) -> Option<PolyMap> {
        if !self.denominators.iter().all(Polynomial::is_constant) {
            return None;
        }
        let comps = self
            .numerators
            .iter()
            .zip(&self.denominators)
            .map(|(a, b)| a.scale(&(Rational::from_integer(1.into()) / b.constant_term())))
            .collect();
        PolyMap::new(&self.ring, comps).ok()
    }

    pub fn to_float(&self) -> FloatRationalMap {
        let n = self.n();
        let f = |p: &Polynomial| -> (FloatPoly, Vec<FloatPoly>) {
            let d = (0..n).map(|j| p.partial_derivative(j).expect("in range").to_float()).collect();
            (p.to_float(), d)
        };
        FloatRationalMap { n, num: self.numerators.iter().map(f).collect(), den: self.denominators.iter().map(f).collect() }
    }
}

/// Floating-point evaluation of a [`RationalMap`] with quotient-rule
/// derivatives.
#[derive(Clone, Debug)]
pub struct FloatRationalMap {
    n: usize,
    num: Vec<(FloatPoly, Vec<FloatPoly>)>,
    den: Vec<(FloatPoly, Vec<FloatPoly>)>,
}

impl NumericMap for FloatRationalMap {
    fn domain_dim(&self) -> usize {
        self.n
    }

    fn codomain_dim(&self) -> usize {
        self.num.len()
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.num.iter().zip(&self.den).map(|(a, b)| a.0.eval(x) / b.0.eval(x)).collect()
    }

    fn jacobian(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.num.len() * self.n);
        for (a, b) in self.num.iter().zip(&self.den) {
            let (av, bv) = (a.0.eval(x), b.0.eval(x));
            for j in 0..self.n {
                out.push((a.1[j].eval(x) * bv - av * b.1[j].eval(x)) / (bv * bv));
            }
        }
        out
    }
}

/// `den = c0 + Σ a_k x^{α_k}` with `c0 > 0`, every `a_k > 0` and every
/// exponent even, so `den ≥ c0` on `R^n`.
pub fn is_positive_sos_pattern(den: &Polynomial) -> bool {
    let c0 = den.constant_term();
    c0.is_positive()
        && den
            .terms()
            .iter()
            .filter(|(m, _)| !m.is_one())
            .all(|(m, c)| c.is_positive() && m.exponents().iter().all(|e| e % 2 == 0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndeterminacyReport {
    /// `⟨num_i, den_i⟩` is the unit ideal, per component.
    pub complex_unit: Vec<bool>,
    /// `den_i` matches the positive sum-of-squares pattern, per component.
    pub sos_certified: Vec<bool>,
    /// Reduced common-zero ideals of components that are not unit.
    pub common_zeros: Vec<(usize, Ideal)>,
}

impl IndeterminacyReport {
    /// Empty indeterminacy over the complex numbers.
    pub fn complex_pass(&self) -> bool {
        self.complex_unit.iter().all(|b| *b)
    }

    /// Empty indeterminacy over the reals: each component is either unit
    /// or has a denominator without real zeros.
    pub fn real_pass(&self) -> bool {
        self.complex_unit.iter().zip(&self.sos_certified).all(|(a, b)| *a || *b)
    }
}

pub fn indeterminacy_empty_check(r: &RationalMap, budget: &GbBudget) -> Result<IndeterminacyReport> {
    let mut complex_unit = Vec::new();
    let mut sos_certified = Vec::new();
    let mut common_zeros = Vec::new();
    for (i, (a, b)) in r.numerators.iter().zip(&r.denominators).enumerate() {
        let ideal = Ideal::new(&r.ring, vec![a.clone(), b.clone()])?.reduced(budget)?;
        let unit = ideal.generators().iter().any(Polynomial::is_constant);
        if !unit {
            common_zeros.push((i, ideal));
        }
        complex_unit.push(unit);
        sos_certified.push(is_positive_sos_pattern(b));
    }
    Ok(IndeterminacyReport { complex_unit, sos_certified, common_zeros })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInvariance {
    pub subspace: Subspace,
    /// Basis directions that passed the symbolic re-check.
    pub verified: Vec<Vec<Rational>>,
    /// Basis vectors and their pairwise sums all passed the re-check.
    pub closed: bool,
}

fn quotient_numerator(num: &Polynomial, den: &Polynomial, v: &[Rational]) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(num.ring());
    for (j, vj) in v.iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        let t = num.partial_derivative(j)?.try_mul(den)?.try_sub(&num.try_mul(&den.partial_derivative(j)?)?)?;
        acc = acc.try_add(&t.scale(vj))?;
    }
    Ok(acc)
}

fn is_invariant(r: &RationalMap, v: &[Rational]) -> Result<bool> {
    for (a, b) in r.numerators.iter().zip(&r.denominators) {
        if !quotient_numerator(a, b, v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Directions `v` with `∂_v(num)·den - num·∂_v(den) ≡ 0` for every
/// component, i.e. along which the map is constant.
pub fn rational_invariance_subspace(r: &RationalMap) -> Result<RationalInvariance> {
    let n = r.n();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (a, b) in r.numerators.iter().zip(&r.denominators) {
        let mut by_monomial: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for j in 0..n {
            let t = a.partial_derivative(j)?.try_mul(b)?.try_sub(&a.try_mul(&b.partial_derivative(j)?)?)?;
            for (m, c) in t.terms() {
                by_monomial.entry(m.clone()).or_insert_with(|| vec![Rational::zero(); n])[j] = c.clone();
            }
        }
        rows.extend(by_monomial.into_values());
    }
    let subspace = Subspace::span(n, &linalg::kernel(&rows, n));
    let basis = subspace.basis().to_vec();
    let mut verified = Vec::new();
    let mut closed = true;
    for v in &basis {
        if is_invariant(r, v)? {
            verified.push(v.clone());
        } else {
            closed = false;
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s: Vec<Rational> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            if !is_invariant(r, &s)? {
                closed = false;
            }
        }
    }
    Ok(RationalInvariance { subspace, verified, closed })
}
