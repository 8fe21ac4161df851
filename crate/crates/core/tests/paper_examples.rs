use std::time::Instant;

use ltv_core::classifier::{
    classify, classify_rational, complexification_compare, lipschitz_gradient_probe, tube_distance_probe, CheckVerdict,
    Config, Field, GradientSchedule, GradientVerdict, LtvDescription, Membership, TubeSchedule, TubeVerdict,
};
use ltv_core::numeric::FloatMap;
use ltv_core::poly::rat;
use ltv_core::properness::{properness_probe_real, Evidence, ProbeSchedule, Verdict};
use ltv_core::rational_ext::RationalMap;
use ltv_core::{PolyMap, Polynomial, Ring};

fn vars(names: &[&str]) -> (Ring, Vec<Polynomial>) {
    let r = Ring::new(names.iter().copied());
    let v = (0..names.len()).map(|i| Polynomial::var(&r, i).unwrap()).collect();
    (r, v)
}

fn motzkin_suspension() -> PolyMap {
    let (r, v) = vars(&["x", "y", "z"]);
    let (x2, y2) = (&v[0] * &v[0], &v[1] * &v[1]);
    let m = &(&(&(&(&x2 * &x2) * &y2) + &(&(&x2 * &y2) * &y2)) - (&(&x2 * &y2).scale(&rat(3)))) + &Polynomial::one(&r);
    PolyMap::new(&r, vec![m]).unwrap()
}

#[test]
fn motzkin_real_classification() {
    let t = Instant::now();
    let f = motzkin_suspension();
    let rep = classify(&f, Field::Real, &Config::default()).unwrap();
    let LtvDescription::RealComplement(desc) = &rep.ltv else { panic!("{:?}", rep.ltv) };
    let attained: Vec<f64> = desc.critical_values.iter().filter(|v| v.attained).map(|v| v.value).collect();
    assert_eq!(attained, vec![0.0, 1.0]);
    let verdicts: Vec<(Option<f64>, Option<f64>, Membership)> = desc.intervals.iter().map(|iv| (iv.lo, iv.hi, iv.row.membership)).collect();
    assert_eq!(
        verdicts,
        vec![(None, Some(0.0), Membership::Ltv), (Some(0.0), Some(1.0), Membership::Ltv), (Some(1.0), None, Membership::NotLtv)]
    );
    assert!(t.elapsed().as_secs() < 60);
}

#[test]
fn motzkin_probe_values() {
    let f = motzkin_suspension();
    let sched = ProbeSchedule::default();
    let budget = Default::default();
    for (c, want) in [(-1.0, Verdict::Proper), (0.5, Verdict::Proper), (0.9, Verdict::Proper), (1.5, Verdict::NonProper), (2.0, Verdict::NonProper), (5.0, Verdict::NonProper)] {
        let v = properness_probe_real(&f, &[c], &sched, None, &budget).unwrap();
        assert_eq!(v.verdict, want, "c = {c}: {:?}", v.evidence);
        if want == Verdict::NonProper {
            let Evidence::Radii { trace, .. } = &v.evidence else { panic!() };
            let at100 = trace.iter().find(|(r, _)| *r == 100.0).unwrap().1;
            assert!(at100 < 1e-2, "c = {c}: {trace:?}");
        }
    }
}

#[test]
fn motzkin_levels_collapse() {
    let f = FloatMap::from_polymap(&motzkin_suspension());
    let rep = tube_distance_probe(&f, &[2.0], &[3.0], &TubeSchedule::default()).unwrap();
    assert_eq!(rep.verdict, TubeVerdict::Collapse);
    assert!(rep.distances.last().unwrap().unwrap() < 0.05);
    let near = tube_distance_probe(&f, &[0.3], &[0.6], &TubeSchedule::default()).unwrap();
    assert_eq!(near.verdict, TubeVerdict::Separated);
}

#[test]
fn rational_counterexample() {
    let (r, v) = vars(&["x", "y"]);
    let h = &Polynomial::one(&r) + &(&v[0] * &v[0]);
    let f = RationalMap::new(&r, vec![&(&v[1] * &h) - &Polynomial::one(&r)], vec![h]).unwrap();
    let g = lipschitz_gradient_probe(&f.to_float(), &[0.0], &GradientSchedule::default());
    assert_eq!(g.verdict, GradientVerdict::Bounded);
    assert!(g.bound.unwrap() <= 2.0);
    let rep = classify_rational(&f, Field::Real, &Config::default()).unwrap();
    assert!(rep.checks.iter().all(|c| c.verdict == CheckVerdict::Pass));
    let LtvDescription::NotApplicable { reason } = &rep.ltv else { panic!() };
    assert_eq!(reason, "polynomial factorization theorem not applicable (rational input)");
}

#[test]
fn simple_example_gradient_grows() {
    let (r, v) = vars(&["x", "y", "z"]);
    let f = PolyMap::new(&r, vec![v[0].clone(), &(&v[0] * &v[1]) + &(&v[0] * &v[2])]).unwrap();
    let g = lipschitz_gradient_probe(&FloatMap::from_polymap(&f), &[0.0, 0.0], &GradientSchedule::default());
    assert_eq!(g.verdict, GradientVerdict::Unbounded);
}

#[test]
fn containment_on_corpus() {
    let (r, v) = vars(&["x", "y", "z"]);
    let simple = PolyMap::new(&r, vec![v[0].clone(), &(&v[0] * &v[1]) + &(&v[0] * &v[2])]).unwrap();
    let (r2, w) = vars(&["x", "y"]);
    let s = &w[0] + &w[1];
    let cube = PolyMap::new(&r2, vec![&(&s * &s) * &s]).unwrap();
    for f in [simple, motzkin_suspension(), cube] {
        let cmp = complexification_compare(&f, &Config::default()).unwrap();
        assert!(cmp.holds());
    }
}
