//! Points at infinity of fibres: projective closure, dimension of the set at
//! infinity and the cone it spans, with an exact linearity test.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::groebner::{self, GbBudget, Ideal, MonomialOrder};
use crate::linalg::{self, Subspace};
use crate::numeric::seeded_rng;
use crate::poly::{rat, Monomial, PolyMap, Polynomial, Rational, Ring};

/// Shape of `V(cone_ideal)`, the cone over the set at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeShape {
    Linear(Subspace),
    NonLinear,
    /// Neither linearity nor its failure could be certified.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityReport {
    pub value: Vec<Rational>,
    /// Saturated homogeneous ideal of the closure, in `x0, x1..xn`.
    pub closure_ideal: Ideal,
    pub infinity_ideal: Ideal,
    /// Projective dimension of the set at infinity; `-1` when empty.
    pub dim_infinity: i64,
    /// `n - 1 - dim_infinity`.
    pub m_candidate: i64,
    /// Ideal of the cone, in `x1..xn`.
    pub cone_ideal: Ideal,
    pub cone: ConeShape,
    /// The complex closure ideal is generated by affine-linear forms, so the
    /// real points are Zariski dense and the real picture at infinity is the
    /// complex one.
    pub real_certified: bool,
}

impl InfinityReport {
    pub fn cone_is_linear(&self) -> bool {
        matches!(self.cone, ConeShape::Linear(_))
    }

    pub fn cone_subspace(&self) -> Option<&Subspace> {
        match &self.cone {
            ConeShape::Linear(a) => Some(a),
            _ => None,
        }
    }
}

/// Closure of `f⁻¹(c)` in projective space and its trace at infinity.
pub fn fiber_infinity(f: &PolyMap, c: &[Rational], budget: &GbBudget) -> Result<InfinityReport> {
    if c.len() != f.codomain_dim() {
        return Err(Error::DimensionMismatch { expected: f.codomain_dim(), found: c.len() });
    }
    let ring = f.ring();
    let n = ring.nvars();
    let hring = ring.prepend(&[ring.fresh_name("x0")]);
    let mut gens = Vec::new();
    for (fi, ci) in f.components().iter().zip(c) {
        let h = fi.try_sub(&Polynomial::constant(ring, ci.clone()))?;
        if h.is_zero() {
            continue;
        }
        let d = h.degree().unwrap_or(0);
        gens.push(h.homogenize_into(&hring, d)?);
    }
    let x0 = Polynomial::var(&hring, 0)?;
    let closure = groebner::saturate(&Ideal::new(&hring, gens)?, &x0, budget)?.reduced(budget)?;
    let real_certified = closure.generators().iter().all(|g| g.degree().unwrap_or(0) <= 1);
    let infinity = closure.with_generators(&[x0])?.reduced(budget)?;
    let affine_dim = groebner::dimension(&infinity, budget)?;
    let dim_infinity = if affine_dim < 0 { -1 } else { affine_dim - 1 };
    let m_candidate = n as i64 - 1 - dim_infinity;

    let cone_gens = infinity
        .generators()
        .iter()
        .map(|g| g.specialize_var(0, &Rational::zero()))
        .collect::<Result<Vec<_>>>()?;
    let cone_ideal = Ideal::new(ring, cone_gens.into_iter().filter(|g| !g.is_zero()).map(|g| rebase(&g, ring)).collect::<Result<_>>()?)?;
    let cone = if dim_infinity < 0 { ConeShape::Linear(Subspace::zero(n)) } else { cone_shape(&cone_ideal, dim_infinity + 1, budget)? };
    Ok(InfinityReport {
        value: c.to_vec(),
        closure_ideal: closure,
        infinity_ideal: infinity,
        dim_infinity,
        m_candidate,
        cone_ideal,
        cone,
        real_certified,
    })
}

fn rebase(p: &Polynomial, ring: &Ring) -> Result<Polynomial> {
    let id: Vec<usize> = (0..ring.nvars()).collect();
    p.remap(ring, &id)
}

/// The cone ideal and its shape, as computed by [`fiber_infinity`].
pub fn cone_at_infinity(f: &PolyMap, c: &[Rational], budget: &GbBudget) -> Result<(Ideal, ConeShape)> {
    let r = fiber_infinity(f, c, budget)?;
    Ok((r.cone_ideal, r.cone))
}

fn linear_coefficients(p: &Polynomial) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); p.nvars()];
    for (m, c) in p.terms() {
        if let Some(i) = m.exponents().iter().position(|&e| e == 1) {
            v[i] = c.clone();
        }
    }
    v
}

/// `A ⊆ V(I)`: a symbolic parametrization of `A` annihilates every generator.
fn subspace_in_variety(ideal: &Ideal, a: &Subspace) -> Result<bool> {
    if a.is_zero() {
        return Ok(ideal.generators().iter().all(|g| g.constant_term().is_zero()));
    }
    let pring = Ring::numbered("s", a.dim());
    let images: Vec<Polynomial> = (0..a.ambient())
        .map(|i| {
            let terms = a.basis().iter().enumerate().filter(|(_, b)| !b[i].is_zero()).map(|(j, b)| {
                (Monomial::var(a.dim(), j, 1).expect("in range"), b[i].clone())
            });
            Polynomial::from_terms(&pring, terms)
        })
        .collect::<Result<_>>()?;
    for g in ideal.generators() {
        if !g.substitute(&images)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `V(I) ⊆ A`: every defining equation of `A` lies in the radical of `I`.
fn variety_in_subspace(ideal: &Ideal, a: &Subspace, budget: &GbBudget) -> Result<bool> {
    let ring = ideal.ring();
    for eq in a.equations() {
        let p = linear_form(ring, &eq)?;
        if !groebner::radical_contains(ideal, &p, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn linear_form(ring: &Ring, coeffs: &[Rational]) -> Result<Polynomial> {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (Monomial::var(ring.nvars(), j, 1).expect("in range"), c.clone()));
    Polynomial::from_terms(ring, terms)
}

enum SliceOutcome {
    Point(Vec<Rational>),
    SeveralPoints,
    Degenerate,
}

/// Intersects the cone with the affine slice `{h1 = 1, h2 = .. = hk = 0}`
/// and returns its unique point when there is one.
fn slice_point(ideal: &Ideal, slice: &[Vec<Rational>], budget: &GbBudget) -> Result<SliceOutcome> {
    let ring = ideal.ring();
    let mut extra = Vec::new();
    for (i, h) in slice.iter().enumerate() {
        let mut p = linear_form(ring, h)?;
        if i == 0 {
            p = p.try_sub(&Polynomial::one(ring))?;
        }
        extra.push(p);
    }
    let sliced = ideal.with_generators(&extra)?;
    let gb = sliced.groebner(MonomialOrder::Grevlex, budget)?;
    if gb.is_unit() {
        return Ok(SliceOutcome::Degenerate);
    }
    let n = ring.nvars();
    let mut point = Vec::with_capacity(n);
    for j in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let elim = groebner::eliminate(&gb.to_ideal(), &others, budget)?;
        let Some(g) = elim.generators().first() else {
            return Ok(SliceOutcome::Degenerate);
        };
        let uni = groebner::roots::UniPoly::from_polynomial(g)?.squarefree_part();
        match uni.degree() {
            Some(1) => point.push(-uni.coeffs()[0].clone() / uni.coeffs()[1].clone()),
            Some(0) | None => return Ok(SliceOutcome::Degenerate),
            Some(_) => return Ok(SliceOutcome::SeveralPoints),
        }
    }
    Ok(SliceOutcome::Point(point))
}

/// Decides whether `V(cone)` (of affine dimension `k >= 1`) is a linear
/// subspace.
fn cone_shape(cone: &Ideal, k: i64, budget: &GbBudget) -> Result<ConeShape> {
    let n = cone.ring().nvars();
    let k = k as usize;
    let gb = cone.groebner(MonomialOrder::Grevlex, budget)?;
    let linear: Vec<Vec<Rational>> =
        gb.basis().iter().filter(|g| g.degree() == Some(1) && g.is_homogeneous()).map(linear_coefficients).collect();
    let candidate = Subspace::from_equations(n, &linear);
    if candidate.dim() == k && subspace_in_variety(&gb.to_ideal(), &candidate)? {
        return Ok(ConeShape::Linear(candidate));
    }
    // Slice with random affine spaces of codimension k; a linear V meets
    // each in at most one point.
    let mut rng = seeded_rng(0x5eed_c0de, n as u64 * 131 + k as u64);
    let mut points: Vec<Vec<Rational>> = Vec::new();
    let mut attempts = 0;
    while points.len() < k && attempts < 4 * k + 4 {
        attempts += 1;
        let slice: Vec<Vec<Rational>> = (0..k).map(|_| (0..n).map(|_| rat(rng.random_range(-5i64..=5))).collect()).collect();
        if linalg::rank(&slice, n) < k {
            continue;
        }
        match slice_point(&gb.to_ideal(), &slice, budget)? {
            SliceOutcome::SeveralPoints => return Ok(ConeShape::NonLinear),
            SliceOutcome::Degenerate => {}
            SliceOutcome::Point(p) => {
                let mut rows = points.clone();
                rows.push(p.clone());
                if linalg::rank(&rows, n) == rows.len() {
                    points.push(p);
                }
            }
        }
    }
    if points.len() < k {
        return Ok(ConeShape::Undecided);
    }
    // Points of a linear V span a subspace of V; k independent ones span
    // all of it. So V is linear iff it equals this span.
    let a = Subspace::span(n, &points);
    let ideal = gb.to_ideal();
    if subspace_in_variety(&ideal, &a)? && variety_in_subspace(&ideal, &a, budget)? {
        return Ok(ConeShape::Linear(a));
    }
    Ok(ConeShape::NonLinear)
}

/// Outcome of comparing cones at infinity across sample values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeConstancy {
    /// Every sampled cone is this linear subspace.
    Constant(Subspace),
    Differs { first: usize, second: usize, a: Subspace, b: Subspace },
    NonLinear { index: usize },
    Undecided { index: usize },
}

impl ConeConstancy {
    pub fn passed(&self) -> bool {
        matches!(self, ConeConstancy::Constant(_))
    }
}

/// Checks that the cone at infinity is linear and the same at every sample.
pub fn cone_constancy_check(f: &PolyMap, samples: &[Vec<Rational>], budget: &GbBudget) -> Result<ConeConstancy> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument("cone constancy needs at least two sample values".into()));
    }
    let reports = samples.iter().map(|c| fiber_infinity(f, c, budget)).collect::<Result<Vec<_>>>()?;
    Ok(cone_constancy_from_reports(&reports))
}

/// [`cone_constancy_check`] on reports that were already computed.
pub fn cone_constancy_from_reports(reports: &[InfinityReport]) -> ConeConstancy {
    let mut first: Option<&Subspace> = None;
    for (i, report) in reports.iter().enumerate() {
        let a = match &report.cone {
            ConeShape::Linear(a) => a,
            ConeShape::NonLinear => return ConeConstancy::NonLinear { index: i },
            ConeShape::Undecided => return ConeConstancy::Undecided { index: i },
        };
        match first {
            None => first = Some(a),
            Some(a0) if a0 != a => return ConeConstancy::Differs { first: 0, second: i, a: a0.clone(), b: a.clone() },
            Some(_) => {}
        }
    }
    ConeConstancy::Constant(first.cloned().unwrap_or_else(|| Subspace::zero(0)))
}
