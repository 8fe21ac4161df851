//! The decision pipeline: factor `f = g ∘ π`, sample fibres at infinity,
//! then describe the Lipschitz trivial values over `C` exactly and over `R`
//! as exact complement data plus a table of properness probes.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::critical::{critical_ideal, maximal_minors, real_critical_values, CriticalIdeal, RealCriticalValue};
use crate::dependence::{factor_through_projection, FactorizationResult};
use crate::error::{Error, Result};
use crate::groebner::{self, roots, GbBudget, Ideal, RootInterval};
use crate::infinity::{cone_constancy_from_reports, fiber_infinity, ConeConstancy, InfinityReport};
use crate::numeric::{distance, norm, operator_norm, project_to_fiber, seeded_rng, uniform_in_ball, uniform_on_sphere, NumericMap};
use crate::poly::{rational_to_f64, PolyMap, Polynomial, Rational, Ring};
use crate::properness::{
    is_proper_at_complex, jelonek_ideal, probe_numeric, JelonekIdeal, ProbeSchedule, PropernessVerdict, Verdict,
};
use crate::rational_ext::{indeterminacy_empty_check, rational_invariance_subspace, IndeterminacyReport, RationalInvariance, RationalMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(&self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub budget: GbBudget,
    pub schedule: ProbeSchedule,
    /// Number of sampled regular values.
    pub samples: usize,
    /// Values always added to the real probe table.
    pub extra_values: Vec<Vec<Rational>>,
}

impl Default for Config {
    fn default() -> Self {
        Config { budget: GbBudget::default(), schedule: ProbeSchedule::default(), samples: 4, extra_values: Vec::new() }
    }
}

/// Whether a value was found to be Lipschitz trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Ltv,
    NotLtv,
    Unknown,
}

impl Membership {
    pub fn as_str(&self) -> &'static str {
        match self {
            Membership::Ltv => "ltv",
            Membership::NotLtv => "not_ltv",
            Membership::Unknown => "unknown",
        }
    }
}

/// How a row's membership was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Complex map proper at the value, and the value is not critical.
    ExactRegularProper,
    /// A real critical point over the value was found.
    AttainedCritical,
    /// Radius probe only.
    Probe,
}

impl Certificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certificate::ExactRegularProper => "exact",
            Certificate::AttainedCritical => "critical_witness",
            Certificate::Probe => "probe",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub value: Vec<Rational>,
    pub properness: PropernessVerdict,
    /// The value lies on the complex critical-value variety.
    pub in_critical_locus: bool,
    pub attained_critical: bool,
    pub membership: Membership,
    pub certificate: Certificate,
}

/// An open interval between consecutive real breakpoints of a scalar map,
/// judged by one representative.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalVerdict {
    /// `None` means unbounded.
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub row: ProbeRow,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealDescription {
    pub critical_generators: Vec<Polynomial>,
    pub jelonek_generators: Vec<Polynomial>,
    pub critical_values: Vec<RealCriticalValue>,
    pub probes: Vec<ProbeRow>,
    pub intervals: Vec<IntervalVerdict>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LtvDescription {
    Empty { reason: String },
    AllValues,
    /// Every value off the zero set of the generators.
    Complement { generators: Vec<Polynomial> },
    RealComplement(RealDescription),
    Undetermined { reason: String },
    NotApplicable { reason: String },
}

impl LtvDescription {
    pub fn kind(&self) -> &'static str {
        match self {
            LtvDescription::Empty { .. } => "empty",
            LtvDescription::AllValues => "all_values",
            LtvDescription::Complement { .. } => "complement",
            LtvDescription::RealComplement(_) => "real_complement",
            LtvDescription::Undetermined { .. } => "undetermined",
            LtvDescription::NotApplicable { .. } => "not_applicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckVerdict {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl CheckVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckVerdict::Pass => "PASS",
            CheckVerdict::Fail => "FAIL",
            CheckVerdict::Inconclusive => "INCONCLUSIVE",
            CheckVerdict::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CheckData {
    None,
    Necessary {
        value: Vec<Rational>,
        dim_v: usize,
        n: usize,
        m_candidate: i64,
        dim_infinity: i64,
        real_certified: bool,
        /// The outcome can decide emptiness for the requested field.
        decisive: bool,
    },
    ConeConstancy { values: Vec<Vec<Rational>>, outcome: ConeConstancy },
    Dominance { nonzero_minors: usize },
    Tube(TubeProbeReport),
    Gradient(GradientProbeReport),
    Containment(Vec<ContainmentRow>),
    Indeterminacy(IndeterminacyReport),
    RationalInvariance(RationalInvariance),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub verdict: CheckVerdict,
    pub data: CheckData,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LtvReport {
    pub field: Field,
    pub input: Option<PolyMap>,
    pub rational_input: Option<RationalMap>,
    pub factorization: Option<FactorizationResult>,
    pub infinity_sample: Vec<InfinityReport>,
    pub jelonek: Option<JelonekIdeal>,
    pub critical: Option<CriticalIdeal>,
    pub ltv: LtvDescription,
    pub checks: Vec<CheckResult>,
    /// A Gröbner computation hit its budget; later stages were skipped.
    pub budget_exceeded: bool,
}

impl LtvReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Membership of `c` according to this report, when it can be read off.
    pub fn membership(&self, c: &[Rational]) -> Result<Membership> {
        Ok(match &self.ltv {
            LtvDescription::Empty { .. } | LtvDescription::NotApplicable { .. } => Membership::NotLtv,
            LtvDescription::AllValues => Membership::Ltv,
            LtvDescription::Complement { generators } => {
                let mut on_locus = true;
                for g in generators {
                    if !g.evaluate(c)?.is_zero() {
                        on_locus = false;
                        break;
                    }
                }
                if on_locus { Membership::NotLtv } else { Membership::Ltv }
            }
            LtvDescription::RealComplement(desc) => desc
                .probes
                .iter()
                .chain(desc.intervals.iter().map(|iv| &iv.row))
                .find(|r| r.value == c)
                .map_or(Membership::Unknown, |r| r.membership),
            LtvDescription::Undetermined { .. } => Membership::Unknown,
        })
    }
}

fn radical_inverse(mut i: u64, base: u64) -> Rational {
    let b = BigInt::from(base);
    let mut f = Rational::new(BigInt::one(), b.clone());
    let mut r = Rational::zero();
    while i > 0 {
        r += &f * Rational::from_integer(BigInt::from(i % base));
        i /= base;
        f /= Rational::from_integer(b.clone());
    }
    r
}

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// The `i`-th point of a Halton sequence in `[-4, 4]^p`.
pub fn halton_value(i: u64, p: usize) -> Vec<Rational> {
    let eight = Rational::from_integer(BigInt::from(8));
    let four = Rational::from_integer(BigInt::from(4));
    (0..p).map(|k| radical_inverse(i, PRIMES[k % PRIMES.len()]) * &eight - &four).collect()
}

/// Up to `count` Halton values for which `avoid` is false.
pub fn sample_values(p: usize, count: usize, mut avoid: impl FnMut(&[Rational]) -> Result<bool>) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    let mut i = 1;
    while out.len() < count && i <= 16 * count as u64 + 16 {
        let c = halton_value(i, p);
        if !avoid(&c)? {
            out.push(c);
        }
        i += 1;
    }
    Ok(out)
}

fn vanishes_at(ideal: &Ideal, c: &[Rational]) -> Result<bool> {
    for g in ideal.generators() {
        if !g.evaluate(c)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_unit_ideal(ideal: &Ideal) -> bool {
    ideal.generators().iter().any(Polynomial::is_constant)
}

/// Runs the full pipeline on a polynomial mapping.
///
/// A Gröbner budget failure does not abort: the report keeps everything
/// computed so far, sets `budget_exceeded` and describes Ltv as undetermined.
pub fn classify(f: &PolyMap, field: Field, config: &Config) -> Result<LtvReport> {
    config.schedule.validate()?;
    let mut report = LtvReport {
        field,
        input: Some(f.clone()),
        rational_input: None,
        factorization: None,
        infinity_sample: Vec::new(),
        jelonek: None,
        critical: None,
        ltv: LtvDescription::Undetermined { reason: String::new() },
        checks: Vec::new(),
        budget_exceeded: false,
    };
    match pipeline(f, field, config, &mut report) {
        Ok(ltv) => report.ltv = ltv,
        Err(e) if e.is_budget() => {
            report.budget_exceeded = true;
            report.ltv = LtvDescription::Undetermined { reason: format!("{e}; exact stages after this point were skipped") };
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn pipeline(f: &PolyMap, field: Field, config: &Config, report: &mut LtvReport) -> Result<LtvDescription> {
    let budget = &config.budget;
    let fact = factor_through_projection(f)?;
    report.factorization = Some(fact.clone());
    let (n, p, m) = (f.domain_dim(), f.codomain_dim(), fact.m);
    let t_ring = Ring::numbered("t", p);

    if m == 0 {
        let c0: Vec<Rational> = f.components().iter().map(Polynomial::constant_term).collect();
        let generators = c0
            .iter()
            .enumerate()
            .map(|(i, c)| Polynomial::var(&t_ring, i)?.try_sub(&Polynomial::constant(&t_ring, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        return Ok(LtvDescription::Complement { generators });
    }

    let g = &fact.g;
    let jel = jelonek_ideal(g, budget)?;
    report.jelonek = Some(jel.clone());
    let crit = critical_ideal(g, budget)?;
    report.critical = Some(crit.clone());

    // A zero ideal means the locus is everything, which cannot be avoided.
    let values = sample_values(p, config.samples, |c| {
        Ok((!jel.ideal.is_zero() && jel.vanishes_at(c)?) || (!crit.ideal.is_zero() && vanishes_at(&crit.ideal, c)?))
    })?;
    for c in &values {
        report.infinity_sample.push(fiber_infinity(f, c, budget)?);
    }
    let nonempty: Vec<InfinityReport> =
        report.infinity_sample.iter().filter(|r| !is_unit_ideal(&r.closure_ideal)).cloned().collect();

    let cone_failed = if nonempty.len() >= 2 {
        let outcome = cone_constancy_from_reports(&nonempty);
        let verdict = match &outcome {
            ConeConstancy::Constant(_) => CheckVerdict::Pass,
            ConeConstancy::Undecided { .. } => CheckVerdict::Inconclusive,
            _ => CheckVerdict::Fail,
        };
        let values = nonempty.iter().map(|r| r.value.clone()).collect();
        report.checks.push(CheckResult { name: "cone_constancy".into(), verdict, data: CheckData::ConeConstancy { values, outcome } });
        verdict == CheckVerdict::Fail
    } else {
        report.checks.push(CheckResult { name: "cone_constancy".into(), verdict: CheckVerdict::Skipped, data: CheckData::None });
        false
    };

    let dim_v = fact.v.dim();
    if let Some(rep) = nonempty.first() {
        let need = n as i64 - rep.m_candidate;
        let holds = dim_v as i64 >= need;
        let decisive = field == Field::Complex || rep.real_certified;
        report.checks.push(CheckResult {
            name: "necessary_condition".into(),
            verdict: if holds { CheckVerdict::Pass } else { CheckVerdict::Fail },
            data: CheckData::Necessary {
                value: rep.value.clone(),
                dim_v,
                n,
                m_candidate: rep.m_candidate,
                dim_infinity: rep.dim_infinity,
                real_certified: rep.real_certified,
                decisive,
            },
        });
        if !holds && decisive {
            let mut reason = format!("invariance subspace too small (dim V = {dim_v} < n - m_candidate = {need})");
            if cone_failed {
                reason.push_str("; cone at infinity not locally constant");
            }
            return Ok(LtvDescription::Empty { reason });
        }
    } else {
        report.checks.push(CheckResult { name: "necessary_condition".into(), verdict: CheckVerdict::Skipped, data: CheckData::None });
    }

    match field {
        Field::Complex => complex_branch(g, m, p, &jel, &crit, budget, report),
        Field::Real => real_branch(g, &values, &jel, &crit, config),
    }
}

fn complex_branch(
    g: &PolyMap,
    m: usize,
    p: usize,
    jel: &JelonekIdeal,
    crit: &CriticalIdeal,
    budget: &GbBudget,
    report: &mut LtvReport,
) -> Result<LtvDescription> {
    if m != p {
        return Ok(LtvDescription::Empty {
            reason: format!("reduced mapping has m = {m} != p = {p}, so no complex value is Lipschitz trivial"),
        });
    }
    let minors = maximal_minors(g)?.len();
    report.checks.push(CheckResult {
        name: "dominance".into(),
        verdict: if minors > 0 { CheckVerdict::Pass } else { CheckVerdict::Fail },
        data: CheckData::Dominance { nonzero_minors: minors },
    });
    if minors == 0 {
        return Ok(LtvDescription::Empty { reason: "reduced mapping is not dominant (its Jacobian determinant vanishes identically)".into() });
    }
    let bif = groebner::intersect(&jel.ideal, &crit.ideal, budget)?.reduced(budget)?;
    if is_unit_ideal(&bif) {
        Ok(LtvDescription::AllValues)
    } else {
        Ok(LtvDescription::Complement { generators: bif.generators().to_vec() })
    }
}

fn real_branch(g: &PolyMap, samples: &[Vec<Rational>], jel: &JelonekIdeal, crit: &CriticalIdeal, config: &Config) -> Result<LtvDescription> {
    let p = g.codomain_dim();
    let critical_values = if p == 1 { real_critical_values(g, crit, config.schedule.seed)? } else { Vec::new() };
    let mut probes = Vec::new();
    for c in samples.iter().chain(&config.extra_values) {
        if c.len() != p {
            return Err(Error::DimensionMismatch { expected: p, found: c.len() });
        }
        probes.push(real_row(g, jel, crit, &critical_values, c, config)?);
    }
    let intervals = if p == 1 { interval_verdicts(g, jel, crit, &critical_values, config)? } else { Vec::new() };
    let certified = probes.iter().chain(intervals.iter().map(|iv| &iv.row)).any(|r| r.membership == Membership::Ltv);
    if !certified {
        return Ok(LtvDescription::Undetermined { reason: "no sampled value could be certified as a regular value of properness".into() });
    }
    Ok(LtvDescription::RealComplement(RealDescription {
        critical_generators: crit.ideal.generators().to_vec(),
        jelonek_generators: jel.ideal.generators().to_vec(),
        critical_values,
        probes,
        intervals,
    }))
}

/// Membership of one real value: exact when the complex map is proper and
/// regular there or a real critical point is witnessed, otherwise by probe.
fn real_row(
    g: &PolyMap,
    jel: &JelonekIdeal,
    crit: &CriticalIdeal,
    critical_values: &[RealCriticalValue],
    c: &[Rational],
    config: &Config,
) -> Result<ProbeRow> {
    let in_critical_locus = vanishes_at(&crit.ideal, c)?;
    let attained_critical = in_critical_locus
        && c.len() == 1
        && critical_values.iter().any(|v| v.attained && v.interval.lo <= c[0] && c[0] <= v.interval.hi);
    let exact = is_proper_at_complex(g, jel, c, &config.budget)?;
    if attained_critical {
        return Ok(ProbeRow {
            value: c.to_vec(),
            properness: exact,
            in_critical_locus,
            attained_critical,
            membership: Membership::NotLtv,
            certificate: Certificate::AttainedCritical,
        });
    }
    if exact.verdict == Verdict::Proper && !in_critical_locus {
        return Ok(ProbeRow {
            value: c.to_vec(),
            properness: exact,
            in_critical_locus,
            attained_critical,
            membership: Membership::Ltv,
            certificate: Certificate::ExactRegularProper,
        });
    }
    let cf: Vec<f64> = c.iter().map(rational_to_f64).collect();
    let probe = probe_numeric(&g.to_float(), &cf, &config.schedule);
    let membership = match probe.verdict {
        Verdict::Proper => Membership::Ltv,
        Verdict::NonProper => Membership::NotLtv,
        Verdict::Inconclusive => Membership::Unknown,
    };
    Ok(ProbeRow { value: c.to_vec(), properness: probe, in_critical_locus, attained_critical, membership, certificate: Certificate::Probe })
}

fn principal_roots(ideal: &Ideal) -> Result<Vec<RootInterval>> {
    let Some(q) = ideal.generators().iter().min_by_key(|q| q.degree()) else {
        return Ok(Vec::new());
    };
    if q.is_constant() {
        return Ok(Vec::new());
    }
    let fine = Rational::new(BigInt::one(), BigInt::one() << 53);
    groebner::real_roots(q)?.iter().map(|iv| roots::refine(q, iv, &fine)).collect()
}

fn interval_verdicts(
    g: &PolyMap,
    jel: &JelonekIdeal,
    crit: &CriticalIdeal,
    critical_values: &[RealCriticalValue],
    config: &Config,
) -> Result<Vec<IntervalVerdict>> {
    let mut points: Vec<RootInterval> = critical_values.iter().map(|v| v.interval.clone()).collect();
    points.extend(principal_roots(&jel.ideal)?);
    points.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut merged: Vec<RootInterval> = Vec::new();
    for iv in points {
        match merged.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => merged.push(iv),
        }
    }
    let one = Rational::one();
    let mut spans: Vec<(Option<f64>, Option<f64>, Rational)> = Vec::new();
    match (merged.first(), merged.last()) {
        (Some(first), Some(last)) => {
            spans.push((None, Some(first.approx()), first.lo.floor() - &one));
            for w in merged.windows(2) {
                spans.push((Some(w[0].approx()), Some(w[1].approx()), roots::simplest_between(&w[0].hi, &w[1].lo)));
            }
            spans.push((Some(last.approx()), None, last.hi.ceil() + &one));
        }
        _ => spans.push((None, None, Rational::zero())),
    }
    spans
        .into_iter()
        .map(|(lo, hi, rep)| Ok(IntervalVerdict { lo, hi, row: real_row(g, jel, crit, critical_values, &[rep], config)? }))
        .collect()
}

/// Reports for a rational mapping: the factorization theorem does not apply,
/// so only indeterminacy, invariance directions and a gradient probe are run.
pub fn classify_rational(r: &RationalMap, field: Field, config: &Config) -> Result<LtvReport> {
    let mut checks = Vec::new();
    let ind = indeterminacy_empty_check(r, &config.budget)?;
    let pass = match field {
        Field::Real => ind.real_pass(),
        Field::Complex => ind.complex_pass(),
    };
    checks.push(CheckResult {
        name: "indeterminacy_empty".into(),
        verdict: if pass { CheckVerdict::Pass } else { CheckVerdict::Fail },
        data: CheckData::Indeterminacy(ind),
    });
    let inv = rational_invariance_subspace(r)?;
    checks.push(CheckResult {
        name: "invariance_directions".into(),
        verdict: if inv.closed { CheckVerdict::Pass } else { CheckVerdict::Inconclusive },
        data: CheckData::RationalInvariance(inv),
    });
    if field == Field::Real && pass {
        let c = vec![0.0; r.p()];
        let probe = lipschitz_gradient_probe(&r.to_float(), &c, &GradientSchedule { seed: config.schedule.seed, ..GradientSchedule::default() });
        let verdict = match probe.verdict {
            GradientVerdict::Bounded => CheckVerdict::Pass,
            GradientVerdict::Unbounded => CheckVerdict::Fail,
            GradientVerdict::Inconclusive => CheckVerdict::Inconclusive,
        };
        checks.push(CheckResult { name: "gradient_bound".into(), verdict, data: CheckData::Gradient(probe) });
    }
    Ok(LtvReport {
        field,
        input: r.as_polymap(),
        rational_input: Some(r.clone()),
        factorization: None,
        infinity_sample: Vec::new(),
        jelonek: None,
        critical: None,
        ltv: LtvDescription::NotApplicable { reason: "polynomial factorization theorem not applicable (rational input)".into() },
        checks,
        budget_exceeded: false,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TubeSchedule {
    /// Increasing ball radii.
    pub radii: Vec<f64>,
    pub restarts: usize,
    pub rounds: usize,
    pub seed: u64,
}

impl Default for TubeSchedule {
    fn default() -> Self {
        TubeSchedule { radii: vec![5.0, 10.0, 20.0, 50.0], restarts: 48, rounds: 30, seed: 42 }
    }
}

impl TubeSchedule {
    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() || self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::InvalidArgument("tube radii must be positive and finite".into()));
        }
        if self.radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("tube radii must be increasing".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("tube probe needs at least one restart".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TubeVerdict {
    /// Levels get arbitrarily close as the radius grows.
    Collapse,
    Separated,
    Inconclusive,
}

impl TubeVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            TubeVerdict::Collapse => "collapse",
            TubeVerdict::Separated => "separated",
            TubeVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TubeProbeReport {
    pub c: Vec<f64>,
    pub t: Vec<f64>,
    pub radii: Vec<f64>,
    /// Smallest distance found between the two levels inside each ball;
    /// nonincreasing in the radius.
    pub distances: Vec<Option<f64>>,
    /// Largest Jacobian norm seen at the sampled level points.
    pub lipschitz_estimate: Option<f64>,
    /// `|c - t| / L`.
    pub delta: Option<f64>,
    /// `L |c - t|`.
    pub epsilon: Option<f64>,
    pub verdict: TubeVerdict,
}

/// Estimates the distance between the levels `f = c` and `f = t` inside
/// growing balls by alternating projections between the two levels.
pub fn tube_distance_probe(f: &dyn NumericMap, c: &[f64], t: &[f64], sched: &TubeSchedule) -> Result<TubeProbeReport> {
    sched.validate()?;
    let p = f.codomain_dim();
    let n = f.domain_dim();
    if c.len() != p || t.len() != p {
        return Err(Error::DimensionMismatch { expected: p, found: if c.len() != p { c.len() } else { t.len() } });
    }
    if c == t {
        return Err(Error::InvalidArgument("tube probe needs two distinct values".into()));
    }
    let mut distances: Vec<Option<f64>> = Vec::new();
    let mut lip: Option<f64> = None;
    let mut running: Option<f64> = None;
    for (k, &radius) in sched.radii.iter().enumerate() {
        let mut rng = seeded_rng(sched.seed, 0x70be + k as u64);
        let inside = |x: &[f64]| norm(x) <= radius * (1.0 + 1e-9);
        for _ in 0..sched.restarts {
            let start = uniform_in_ball(&mut rng, n, radius);
            let Some(mut x) = project_to_fiber(f, &start, c, 100, 1e-12) else { continue };
            if !inside(&x) {
                continue;
            }
            for _ in 0..sched.rounds {
                let Some(y) = project_to_fiber(f, &x, t, 100, 1e-12) else { break };
                if !inside(&y) {
                    break;
                }
                let d = distance(&x, &y);
                if running.is_none_or(|r| d < r) {
                    running = Some(d);
                }
                for z in [&x, &y] {
                    let l = operator_norm(&f.jacobian(z), p, n);
                    if l.is_finite() && lip.is_none_or(|v| l > v) {
                        lip = Some(l);
                    }
                }
                let Some(x2) = project_to_fiber(f, &y, c, 100, 1e-12) else { break };
                if !inside(&x2) {
                    break;
                }
                let moved = distance(&x, &x2);
                x = x2;
                if moved < 1e-12 {
                    break;
                }
            }
        }
        distances.push(running);
    }
    let r = distance(c, t);
    let (delta, epsilon) = match lip {
        Some(l) if l > 0.0 => (Some(r / l), Some(l * r)),
        _ => (None, None),
    };
    let verdict = match (distances.first().copied().flatten(), distances.last().copied().flatten()) {
        (Some(first), Some(last)) if distances.iter().all(Option::is_some) => {
            if last < first / 2.0 {
                TubeVerdict::Collapse
            } else {
                TubeVerdict::Separated
            }
        }
        _ => TubeVerdict::Inconclusive,
    };
    Ok(TubeProbeReport { c: c.to_vec(), t: t.to_vec(), radii: sched.radii.clone(), distances, lipschitz_estimate: lip, delta, epsilon, verdict })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradientSchedule {
    pub radii: Vec<f64>,
    pub samples: usize,
    /// Half-width of the value box around `c`.
    pub delta: f64,
    pub seed: u64,
}

impl Default for GradientSchedule {
    fn default() -> Self {
        GradientSchedule { radii: vec![1.0, 1e2, 1e4, 1e6], samples: 32, delta: 0.1, seed: 42 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientVerdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

impl GradientVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            GradientVerdict::Bounded => "BOUNDED",
            GradientVerdict::Unbounded => "UNBOUNDED",
            GradientVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradientProbeReport {
    pub c: Vec<f64>,
    pub radii: Vec<f64>,
    /// Largest Jacobian operator norm over preimage samples within each
    /// radius.
    pub sup_norms: Vec<Option<f64>>,
    pub bound: Option<f64>,
    pub verdict: GradientVerdict,
}

/// Samples the Jacobian norm over preimages of a box around `c`, starting
/// from points on spheres of growing radius. `sup_norms[k]` is the largest
/// norm over all preimage points found inside the ball of radius
/// `radii[k]`.
pub fn lipschitz_gradient_probe(f: &dyn NumericMap, c: &[f64], sched: &GradientSchedule) -> GradientProbeReport {
    let (n, p) = (f.domain_dim(), f.codomain_dim());
    let mut found: Vec<(f64, f64)> = Vec::new();
    for (k, &radius) in sched.radii.iter().enumerate() {
        let mut rng = seeded_rng(sched.seed, 0x96ad + k as u64);
        for _ in 0..sched.samples {
            let target: Vec<f64> = c.iter().map(|v| v + sched.delta * (2.0 * rand::Rng::random::<f64>(&mut rng) - 1.0)).collect();
            let start = uniform_on_sphere(&mut rng, n, radius);
            let Some(x) = project_to_fiber(f, &start, &target, 100, 1e-10) else { continue };
            let l = operator_norm(&f.jacobian(&x), p, n);
            if l.is_finite() {
                found.push((norm(&x), l));
            }
        }
    }
    let sup_norms: Vec<Option<f64>> = sched
        .radii
        .iter()
        .map(|&r| found.iter().filter(|(x, _)| *x <= r).map(|(_, l)| *l).reduce(f64::max))
        .collect();
    let bound = sup_norms.iter().flatten().copied().reduce(f64::max);
    let first = sup_norms.iter().flatten().next().copied();
    let verdict = match (first, sup_norms.last().copied().flatten()) {
        (Some(first), Some(last)) if last > 2.0 * first.max(1e-12) => GradientVerdict::Unbounded,
        (Some(_), Some(_)) => GradientVerdict::Bounded,
        _ => GradientVerdict::Inconclusive,
    };
    GradientProbeReport { c: c.to_vec(), radii: sched.radii.clone(), sup_norms, bound, verdict }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentRow {
    pub value: Vec<Rational>,
    pub real: Membership,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub complex: LtvReport,
    pub real: LtvReport,
    /// Sampled real values in the complex Ltv, with their real membership.
    pub rows: Vec<ContainmentRow>,
}

impl Comparison {
    /// Every sampled real value of the complex Ltv is real Ltv.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.real == Membership::Ltv)
    }

    pub fn to_check(&self) -> CheckResult {
        CheckResult {
            name: "complexification_containment".into(),
            verdict: if self.holds() { CheckVerdict::Pass } else { CheckVerdict::Fail },
            data: CheckData::Containment(self.rows.clone()),
        }
    }
}

/// Classifies over both fields and checks that sampled real points of the
/// complex Ltv are Lipschitz trivial for the real map.
pub fn complexification_compare(f: &PolyMap, config: &Config) -> Result<Comparison> {
    let complex = classify(f, Field::Complex, config)?;
    let mut in_complex = Vec::new();
    let mut i = 1;
    while in_complex.len() < config.samples && i <= 16 * config.samples as u64 + 16 {
        let c = halton_value(i, f.codomain_dim());
        if complex.membership(&c)? == Membership::Ltv {
            in_complex.push(c);
        }
        i += 1;
    }
    let mut real_config = config.clone();
    real_config.extra_values.extend(in_complex.iter().cloned());
    let real = classify(f, Field::Real, &real_config)?;
    let rows = in_complex
        .into_iter()
        .map(|value| {
            let real = real.membership(&value)?;
            Ok(ContainmentRow { value, real })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Comparison { complex, real, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::FloatMap;
    use crate::poly::{rat, ratio};
    use alloc::string::ToString;

    fn map(names: &[&str], build: impl Fn(&[Polynomial]) -> Vec<Polynomial>) -> PolyMap {
        let r = Ring::new(names.iter().copied());
        let v: Vec<Polynomial> = (0..names.len()).map(|i| Polynomial::var(&r, i).unwrap()).collect();
        PolyMap::new(&r, build(&v)).unwrap()
    }

    fn shown(gens: &[Polynomial]) -> Vec<String> {
        gens.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn halton_values_are_rational_and_in_range() {
        assert_eq!(halton_value(1, 2), vec![rat(0), ratio(-4, 3)]);
        assert_eq!(halton_value(3, 1), vec![rat(2)]);
        for i in 1..50 {
            for c in halton_value(i, 3) {
                assert!(c > rat(-4) && c < rat(4));
            }
        }
    }

    #[test]
    fn simple_example_over_complex() {
        let f = map(&["x", "y", "z"], |v| vec![v[0].clone(), &(&v[0] * &v[1]) + &(&v[0] * &v[2])]);
        let rep = classify(&f, Field::Complex, &Config::default()).unwrap();
        match &rep.ltv {
            LtvDescription::Complement { generators } => assert_eq!(shown(generators), vec!["t1"]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(rep.check("necessary_condition").unwrap().verdict, CheckVerdict::Pass);
    }

    #[test]
    fn bad_example_is_empty_over_both_fields() {
        let f = map(&["x", "y", "z"], |v| vec![v[0].clone(), &(&v[0] * &v[1]) + &v[2]]);
        for field in [Field::Complex, Field::Real] {
            let rep = classify(&f, field, &Config::default()).unwrap();
            match &rep.ltv {
                LtvDescription::Empty { reason } => {
                    assert!(reason.contains("invariance subspace too small"), "{reason}");
                    assert!(reason.contains("cone at infinity"), "{reason}");
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn cube_of_a_linear_form() {
        let f = map(&["x", "y"], |v| {
            let s = &v[0] + &v[1];
            vec![&(&s * &s) * &s]
        });
        let rep = classify(&f, Field::Complex, &Config::default()).unwrap();
        assert!(rep.jelonek.as_ref().unwrap().is_unit());
        match &rep.ltv {
            LtvDescription::Complement { generators } => assert_eq!(shown(generators), vec!["t1"]),
            other => panic!("unexpected {other:?}"),
        }
        let real = classify(&f, Field::Real, &Config::default()).unwrap();
        assert_eq!(real.membership(&real_first_probe(&real)).unwrap(), Membership::Ltv);
    }

    fn real_first_probe(rep: &LtvReport) -> Vec<Rational> {
        match &rep.ltv {
            LtvDescription::RealComplement(d) => d.probes[0].value.clone(),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constant_map_misses_one_value() {
        let r = Ring::new(["x"]);
        let f = PolyMap::new(&r, vec![Polynomial::constant(&r, rat(2))]).unwrap();
        let rep = classify(&f, Field::Real, &Config::default()).unwrap();
        match &rep.ltv {
            LtvDescription::Complement { generators } => assert_eq!(shown(generators), vec!["t1 - 2"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unequal_dimensions_give_empty_complex_ltv() {
        let f = map(&["x", "y"], |v| vec![&(&v[0] * &v[0]) + &(&v[1] * &v[1])]);
        let rep = classify(&f, Field::Complex, &Config::default()).unwrap();
        assert_eq!(rep.ltv.kind(), "empty");
    }

    #[test]
    fn parallel_levels_stay_apart() {
        let f = map(&["x", "y", "z"], |v| vec![v[0].clone(), &(&v[0] * &v[1]) + &(&v[0] * &v[2])]);
        let rep = tube_distance_probe(&FloatMap::from_polymap(&f), &[1.0, 0.0], &[1.0, 1.0], &TubeSchedule::default()).unwrap();
        assert_eq!(rep.verdict, TubeVerdict::Separated);
        let last = rep.distances.last().unwrap().unwrap();
        assert!((last - 1.0 / 2f64.sqrt()).abs() < 1e-6, "{last}");
    }

    #[test]
    fn linear_gradient_is_constant() {
        let f = map(&["x", "y"], |v| vec![&v[0].scale(&rat(3)) + &v[1].scale(&rat(4))]);
        let rep = lipschitz_gradient_probe(&FloatMap::from_polymap(&f), &[0.0], &GradientSchedule::default());
        assert_eq!(rep.verdict, GradientVerdict::Bounded);
        assert!((rep.bound.unwrap() - 5.0).abs() < 1e-9);
    }
}
