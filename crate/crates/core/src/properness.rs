//! Properness at a value: the exact complex non-properness (Jelonek) set by
//! elimination, a numeric radius probe for real values, and curve probes
//! that follow a direction to infinity.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::groebner::{self, GbBudget, Ideal};
use crate::numeric::{descend_on_sphere, norm, seeded_rng, uniform_on_sphere, NumericMap};
use crate::poly::{rational_from_f64, PolyMap, Polynomial, Rational, Ring};

/// Ideal in `t1..tp` whose complex zero set is the set of values at which
/// the mapping fails to be proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JelonekIdeal {
    pub ideal: Ideal,
}

impl JelonekIdeal {
    pub fn is_unit(&self) -> bool {
        self.ideal.generators().iter().any(|g| g.is_constant())
    }

    /// Whether every generator vanishes at `c`, i.e. `c` is a non-proper
    /// value over the complex numbers.
    pub fn vanishes_at(&self, c: &[Rational]) -> Result<bool> {
        for g in self.ideal.generators() {
            if !g.evaluate(c)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Computes the non-properness set of `g` over the complex numbers.
///
/// The closure of the graph in `P^m × C^p` is cut out by the `x0`-saturation
/// of `⟨ĝ_i - t_i x0^{d_i}⟩`. Its points at infinity are covered by the
/// charts `x_j = 1`; each chart is eliminated separately and the results
/// intersected.
pub fn jelonek_ideal(g: &PolyMap, budget: &GbBudget) -> Result<JelonekIdeal> {
    let m = g.domain_dim();
    let p = g.codomain_dim();
    let out_ring = Ring::numbered("t", p);
    if m == 0 {
        return Ok(JelonekIdeal { ideal: Ideal::unit(&out_ring) });
    }
    let x0_name = g.ring().fresh_name("x0");
    let xring = g.ring().prepend(&[x0_name]);
    let tnames = xring.fresh_names("t", p);
    let ring = xring.append(&tnames);
    let xmap: Vec<usize> = (0..=m).collect();
    let x0 = Polynomial::var(&ring, 0)?;

    let mut gens = Vec::with_capacity(p);
    for (i, gi) in g.components().iter().enumerate() {
        let d = gi.degree().unwrap_or(0);
        let hom = gi.homogenize_into(&xring, d)?.remap(&ring, &xmap)?;
        let t = Polynomial::var(&ring, m + 1 + i)?;
        gens.push(hom.try_sub(&t.try_mul(&x0.try_pow(d)?)?)?);
    }
    let sat = groebner::saturate(&Ideal::new(&ring, gens)?, &x0, budget)?;
    let drop: Vec<usize> = (0..=m).collect();
    let tmap: Vec<usize> = (0..p).collect();
    let mut acc: Option<Ideal> = None;
    for j in 1..=m {
        let chart = Polynomial::var(&ring, j)?.try_sub(&Polynomial::one(&ring))?;
        let piece = groebner::eliminate(&sat.with_generators(&[x0.clone(), chart])?, &drop, budget)?;
        let piece = Ideal::new(&out_ring, piece.generators().iter().map(|q| q.remap(&out_ring, &tmap)).collect::<Result<_>>()?)?;
        acc = Some(match acc {
            None => piece,
            Some(prev) => groebner::intersect(&prev, &piece, budget)?,
        });
    }
    let ideal = acc.expect("m >= 1").reduced(budget)?;
    Ok(JelonekIdeal { ideal })
}

/// Radius schedule and optimizer settings for the real properness probe.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSchedule {
    pub radii: Vec<f64>,
    pub restarts: usize,
    pub seed: u64,
    pub tol_zero: f64,
    /// Smallest `μ(R)` accepted as evidence of properness.
    pub mu_floor: f64,
    pub max_iter: usize,
}

impl Default for ProbeSchedule {
    fn default() -> Self {
        ProbeSchedule { radii: vec![10.0, 1e2, 1e3, 1e4], restarts: 32, seed: 42, tol_zero: 1e-6, mu_floor: 1e-3, max_iter: 200 }
    }
}

impl ProbeSchedule {
    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() || self.radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::InvalidArgument("radii must be positive and finite".into()));
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("radii must be strictly increasing".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("at least one restart is required".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    ExactComplex,
    ProbeReal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    NonProper,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Proper => "proper",
            Verdict::NonProper => "non_proper",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// Jelonek membership and complex fibre dimension at the value.
    Exact { jelonek_vanishes: bool, fiber_dimension: i64 },
    /// `(R, μ(R))` with `μ(R) = min_{|x|=R} |g(x) - c|`.
    Radii { trace: Vec<(f64, f64)>, diagnostics: Option<String> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropernessVerdict {
    pub value: Vec<f64>,
    pub mode: ProbeMode,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Exact test over the complex numbers: proper at `c` iff `c` lies outside
/// the Jelonek set and the fibre is finite.
pub fn is_proper_at_complex(g: &PolyMap, jel: &JelonekIdeal, c: &[Rational], budget: &GbBudget) -> Result<PropernessVerdict> {
    if c.len() != g.codomain_dim() {
        return Err(Error::DimensionMismatch { expected: g.codomain_dim(), found: c.len() });
    }
    let vanishes = jel.vanishes_at(c)?;
    let ring = g.ring();
    let fiber = Ideal::new(
        ring,
        g.components().iter().zip(c).map(|(gi, ci)| gi.try_sub(&Polynomial::constant(ring, ci.clone()))).collect::<Result<_>>()?,
    )?;
    let fiber_dimension = if g.domain_dim() == 0 {
        if fiber.generators().iter().any(|q| !q.is_zero()) { -1 } else { 0 }
    } else {
        groebner::dimension(&fiber, budget)?
    };
    let verdict = if !vanishes && fiber_dimension <= 0 { Verdict::Proper } else { Verdict::NonProper };
    Ok(PropernessVerdict {
        value: c.iter().map(crate::poly::rational_to_f64).collect(),
        mode: ProbeMode::ExactComplex,
        verdict,
        evidence: Evidence::Exact { jelonek_vanishes: vanishes, fiber_dimension },
    })
}

/// `μ(R)` for every radius in the schedule.
pub fn sphere_minima(map: &dyn NumericMap, c: &[f64], sched: &ProbeSchedule) -> Vec<(f64, f64)> {
    let n = map.domain_dim();
    let mut trace = Vec::with_capacity(sched.radii.len());
    for (k, &radius) in sched.radii.iter().enumerate() {
        let mut rng = seeded_rng(sched.seed, 0x9e37 + k as u64);
        let mut best = f64::INFINITY;
        for _ in 0..sched.restarts {
            let start = uniform_on_sphere(&mut rng, n, radius);
            let (_, mu) = descend_on_sphere(map, c, radius, &start, sched.max_iter);
            if mu < best {
                best = mu;
            }
        }
        trace.push((radius, best));
    }
    trace
}

/// Verdict from a `μ(R)` trace.
///
/// Non-proper: `μ(R_max) < tol_zero` and each of the last two steps at
/// least halves `μ` or is already below `tol_zero`. Proper: the last `μ` is
/// at least `mu_floor` and `μ` did not decrease (up to 0.1% relative) over
/// the last two radii.
pub fn verdict_from_trace(trace: &[(f64, f64)], sched: &ProbeSchedule) -> Verdict {
    let mus: Vec<f64> = trace.iter().map(|t| t.1).collect();
    let Some(&last) = mus.last() else {
        return Verdict::Inconclusive;
    };
    if !last.is_finite() {
        return Verdict::Inconclusive;
    }
    let tail = &mus[mus.len().saturating_sub(3)..];
    let decaying = tail.windows(2).all(|w| w[1] < (w[0] / 2.0).max(sched.tol_zero));
    if last < sched.tol_zero && decaying {
        return Verdict::NonProper;
    }
    let tail2 = &mus[mus.len().saturating_sub(2)..];
    let steady = tail2.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-3));
    if last >= sched.mu_floor && steady {
        return Verdict::Proper;
    }
    Verdict::Inconclusive
}

/// Numeric properness test at a real value. When a Jelonek ideal is given
/// and the complex map is proper at `c`, that certificate is returned.
pub fn properness_probe_real(
    g: &PolyMap,
    c: &[f64],
    sched: &ProbeSchedule,
    jel: Option<&JelonekIdeal>,
    budget: &GbBudget,
) -> Result<PropernessVerdict> {
    sched.validate()?;
    if c.len() != g.codomain_dim() {
        return Err(Error::DimensionMismatch { expected: g.codomain_dim(), found: c.len() });
    }
    if let Some(jel) = jel {
        let exact: Option<Vec<Rational>> = c.iter().map(|&v| rational_from_f64(v)).collect();
        if let Some(exact) = exact {
            let v = is_proper_at_complex(g, jel, &exact, budget)?;
            if v.verdict == Verdict::Proper {
                return Ok(v);
            }
        }
    }
    Ok(probe_numeric(&g.to_float(), c, sched))
}

/// The radius probe on any numeric map.
pub fn probe_numeric(map: &dyn NumericMap, c: &[f64], sched: &ProbeSchedule) -> PropernessVerdict {
    if map.domain_dim() == 0 {
        // A map out of a point is proper.
        return PropernessVerdict {
            value: c.to_vec(),
            mode: ProbeMode::ProbeReal,
            verdict: Verdict::Proper,
            evidence: Evidence::Radii { trace: Vec::new(), diagnostics: Some("zero-dimensional domain".into()) },
        };
    }
    let trace = sphere_minima(map, c, sched);
    let diagnostics = trace.iter().any(|t| !t.1.is_finite()).then(|| String::from("optimizer produced non-finite values"));
    let verdict = if diagnostics.is_some() { Verdict::Inconclusive } else { verdict_from_trace(&trace, sched) };
    PropernessVerdict { value: c.to_vec(), mode: ProbeMode::ProbeReal, verdict, evidence: Evidence::Radii { trace, diagnostics } }
}

/// Curves `γ_ε(t) = t^d v + Σ_j (p_j(t) + ε_j) w_j`, where the `w_j` are
/// the unit vectors completing `v` to a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFamily {
    pub d: u32,
    /// `p_coeffs[j]` holds the coefficients of `p_j`, lowest degree first.
    pub p_coeffs: Vec<Vec<f64>>,
    pub epsilon_box: f64,
}

impl CurveFamily {
    /// `γ(t) = t^d v + ε` with `p = 0`.
    pub fn straight(d: u32, n: usize, epsilon_box: f64) -> Self {
        CurveFamily { d, p_coeffs: vec![Vec::new(); n.saturating_sub(1)], epsilon_box }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TentacleVerdict {
    Constant,
    Bounded,
    Unbounded,
}

impl TentacleVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            TentacleVerdict::Constant => "constant",
            TentacleVerdict::Bounded => "bounded",
            TentacleVerdict::Unbounded => "unbounded",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TentacleReport {
    pub verdict: TentacleVerdict,
    /// Parameter values visited.
    pub params: Vec<f64>,
    /// Largest `|f(γ_ε(t))|` over the sampled `ε`, per parameter.
    pub value_norms: Vec<f64>,
    /// Largest `|f(γ_ε(t)) - f(γ_ε(t_0))|` over the sampled `ε`, per parameter.
    pub drift: Vec<f64>,
    /// Largest `|∂_v f|` over the curves, per parameter (`v` normalized).
    pub directional_derivative: Vec<f64>,
}

/// Follows curves tending to infinity in `direction` and reports whether
/// `f` stays constant, bounded or blows up along them.
pub fn tentacle_probe(f: &dyn NumericMap, direction: &[f64], fam: &CurveFamily, seed: u64) -> Result<TentacleReport> {
    let n = f.domain_dim();
    if direction.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: direction.len() });
    }
    let vn = norm(direction);
    if !(vn > 0.0) {
        return Err(Error::InvalidArgument("direction must be nonzero".into()));
    }
    if fam.p_coeffs.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, found: fam.p_coeffs.len() });
    }
    if fam.p_coeffs.iter().any(|p| p.len() > fam.d as usize) {
        return Err(Error::InvalidArgument("curve polynomial degree must be below d".into()));
    }
    let pivot = direction.iter().position(|x| *x != 0.0).expect("nonzero");
    let others: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let unit: Vec<f64> = direction.iter().map(|x| x / vn).collect();

    let mut rng = seeded_rng(seed, 0x7e47);
    let eps: Vec<Vec<f64>> = (0..5).map(|_| (0..n - 1).map(|_| rng.random_range(-fam.epsilon_box..=fam.epsilon_box)).collect()).collect();
    let params = vec![10.0, 1e2, 1e3, 1e4];
    let mut value_norms = Vec::new();
    let mut drift = Vec::new();
    let mut dderiv = Vec::new();
    let mut base: Vec<Vec<f64>> = Vec::new();
    for (k, &t) in params.iter().enumerate() {
        let (mut vmax, mut dmax, mut gmax) = (0.0f64, 0.0f64, 0.0f64);
        for (e_idx, e) in eps.iter().enumerate() {
            let td = num_traits::Float::powi(t, fam.d as i32);
            let mut x: Vec<f64> = direction.iter().map(|v| v * td).collect();
            for (j, &i) in others.iter().enumerate() {
                let pj: f64 = fam.p_coeffs[j].iter().rev().fold(0.0, |acc, c| acc * t + c);
                x[i] += pj + e[j];
            }
            let val = f.eval(&x);
            vmax = vmax.max(norm(&val));
            if k == 0 {
                base.push(val.clone());
            }
            dmax = dmax.max(crate::numeric::distance(&val, &base[e_idx]));
            let jac = f.jacobian(&x);
            let p = f.codomain_dim();
            let dv: Vec<f64> = (0..p).map(|r| (0..n).map(|c| jac[r * n + c] * unit[c]).sum()).collect();
            gmax = gmax.max(norm(&dv));
        }
        value_norms.push(vmax);
        drift.push(dmax);
        dderiv.push(gmax);
    }
    let scale = 1.0 + value_norms[0];
    let verdict = if drift.iter().all(|d| *d <= 1e-9 * scale) {
        TentacleVerdict::Constant
    } else if value_norms.iter().all(|v| v.is_finite()) && *value_norms.last().unwrap() <= 2.0 * value_norms[0] + 1.0 {
        TentacleVerdict::Bounded
    } else {
        TentacleVerdict::Unbounded
    };
    Ok(TentacleReport { verdict, params, value_norms, drift, directional_derivative: dderiv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use alloc::string::ToString;

    fn map(names: &[&str], build: impl Fn(&[Polynomial]) -> Vec<Polynomial>) -> PolyMap {
        let r = Ring::new(names.iter().copied());
        let v: Vec<Polynomial> = (0..names.len()).map(|i| Polynomial::var(&r, i).unwrap()).collect();
        PolyMap::new(&r, build(&v)).unwrap()
    }

    fn motzkin() -> PolyMap {
        map(&["x", "y"], |v| {
            let (x, y) = (&v[0], &v[1]);
            let x2 = x * x;
            let y2 = y * y;
            let one = Polynomial::one(x.ring());
            let three = Polynomial::constant(x.ring(), rat(3));
            let quartic = &(&(&x2 * &x2) * &y2) + &(&(&x2 * &y2) * &y2);
            vec![&(&quartic - &(&(&three * &x2) * &y2)) + &one]
        })
    }

    #[test]
    fn jelonek_of_simple_reduction() {
        let g = map(&["u1", "u2"], |v| vec![v[0].clone(), &v[0] * &v[1]]);
        let jel = jelonek_ideal(&g, &GbBudget::default()).unwrap();
        let gens: Vec<_> = jel.ideal.generators().iter().map(|q| q.to_string()).collect();
        assert_eq!(gens, vec!["t1"]);
        let b = GbBudget::default();
        assert_eq!(is_proper_at_complex(&g, &jel, &[rat(1), rat(1)], &b).unwrap().verdict, Verdict::Proper);
        assert_eq!(is_proper_at_complex(&g, &jel, &[rat(0), rat(0)], &b).unwrap().verdict, Verdict::NonProper);
    }

    #[test]
    fn proper_maps_have_unit_jelonek_ideal() {
        let b = GbBudget::default();
        let id = map(&["x", "y"], |v| v.to_vec());
        assert!(jelonek_ideal(&id, &b).unwrap().is_unit());
        let cube = map(&["u"], |v| vec![&(&v[0] * &v[0]) * &v[0]]);
        assert!(jelonek_ideal(&cube, &b).unwrap().is_unit());
    }

    #[test]
    fn motzkin_is_nowhere_proper_over_c() {
        let g = motzkin();
        let b = GbBudget::default();
        let jel = jelonek_ideal(&g, &b).unwrap();
        let v = is_proper_at_complex(&g, &jel, &[rat(5)], &b).unwrap();
        assert_eq!(v.verdict, Verdict::NonProper);
        assert!(matches!(v.evidence, Evidence::Exact { fiber_dimension: 1, .. }));
    }

    #[test]
    fn motzkin_real_probe() {
        let g = motzkin();
        let sched = ProbeSchedule::default();
        let b = GbBudget::default();
        let low = properness_probe_real(&g, &[0.5], &sched, None, &b).unwrap();
        assert_eq!(low.verdict, Verdict::Proper, "{:?}", low.evidence);
        let high = properness_probe_real(&g, &[2.0], &sched, None, &b).unwrap();
        assert_eq!(high.verdict, Verdict::NonProper, "{:?}", high.evidence);
    }

    #[test]
    fn trace_rules() {
        let s = ProbeSchedule::default();
        assert_eq!(verdict_from_trace(&[(10.0, 1e-3), (100.0, 1e-5), (1000.0, 1e-8)], &s), Verdict::NonProper);
        assert_eq!(verdict_from_trace(&[(10.0, 0.0), (100.0, 0.0), (1000.0, 0.0)], &s), Verdict::NonProper);
        assert_eq!(verdict_from_trace(&[(10.0, 0.5), (100.0, 0.5), (1000.0, 0.5)], &s), Verdict::Proper);
        assert_eq!(verdict_from_trace(&[(10.0, 0.5), (100.0, 0.3), (1000.0, 0.1)], &s), Verdict::Inconclusive);
    }

    #[test]
    fn tentacles() {
        let simple = map(&["x", "y", "z"], |v| vec![v[0].clone(), &(&v[0] * &v[1]) + &(&v[0] * &v[2])]);
        let fam = CurveFamily::straight(1, 3, 0.1);
        let r = tentacle_probe(&simple.to_float(), &[0.0, 1.0, -1.0], &fam, 1).unwrap();
        assert_eq!(r.verdict, TentacleVerdict::Constant);
        assert!(r.directional_derivative.iter().all(|d| *d < 1e-9));
        let bad = map(&["x", "y", "z"], |v| vec![v[0].clone(), &(&v[0] * &v[1]) + &v[2]]);
        let r = tentacle_probe(&bad.to_float(), &[0.0, 1.0, 0.0], &fam, 1).unwrap();
        assert_eq!(r.verdict, TentacleVerdict::Unbounded);
    }
}
