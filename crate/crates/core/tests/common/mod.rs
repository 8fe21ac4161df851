//! Independent oracles for the property suites: schoolbook division,
//! Sylvester resultants, brute-force monomial dimension and univariate
//! arithmetic. Nothing here calls the Gröbner engine.

#![allow(dead_code)]

use std::cmp::Ordering;

use ltv_core::{Monomial, Polynomial, Rational, Ring};
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Cmp = fn(&Monomial, &Monomial) -> Ordering;

pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.grevlex_cmp(b)
}

pub fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.lex_cmp(b)
}

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, max_deg: u32, max_terms: usize, coeff: i64) -> Polynomial {
    let n = ring.nvars();
    let k = rng.random_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let mut exps = vec![0u32; n];
        let d = rng.random_range(0..=max_deg);
        for _ in 0..d {
            exps[rng.random_range(0..n)] += 1;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.random_range(-coeff..=coeff);
        }
        (Monomial::from_exponents(exps).unwrap(), r(c))
    });
    Polynomial::from_terms(ring, terms.collect::<Vec<_>>()).unwrap()
}

fn leading(p: &Polynomial, cmp: Cmp) -> Option<(Monomial, Rational)> {
    p.terms().iter().max_by(|a, b| cmp(&a.0, &b.0)).cloned()
}

/// Remainder of multivariate division by `basis` (full reduction).
pub fn reduce(p: &Polynomial, basis: &[Polynomial], cmp: Cmp) -> Polynomial {
    let ring = p.ring().clone();
    let mut p = p.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some((m, c)) = leading(&p, cmp) {
        let divisor = basis.iter().find_map(|g| {
            let (gm, gc) = leading(g, cmp)?;
            gm.quotient_of(&m).map(|q| (g, q, gc))
        });
        match divisor {
            Some((g, q, gc)) => {
                let t = Polynomial::monomial(&ring, q, &c / &gc).unwrap();
                p = p.try_sub(&t.try_mul(g).unwrap()).unwrap();
            }
            None => {
                let t = Polynomial::monomial(&ring, m, c).unwrap();
                p = p.try_sub(&t).unwrap();
                rem = rem.try_add(&t).unwrap();
            }
        }
    }
    rem
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, cmp: Cmp) -> Polynomial {
    let ring = f.ring().clone();
    let (fm, fc) = leading(f, cmp).unwrap();
    let (gm, gc) = leading(g, cmp).unwrap();
    let l = fm.lcm(&gm);
    let a = Polynomial::monomial(&ring, fm.quotient_of(&l).unwrap(), Rational::one() / fc).unwrap();
    let b = Polynomial::monomial(&ring, gm.quotient_of(&l).unwrap(), Rational::one() / gc).unwrap();
    a.try_mul(f).unwrap().try_sub(&b.try_mul(g).unwrap()).unwrap()
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct U(pub Vec<Rational>);

impl U {
    pub fn new(mut c: Vec<Rational>) -> U {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        U(c)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
    pub fn add(&self, o: &U) -> U {
        let n = self.0.len().max(o.0.len());
        U::new((0..n).map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default()).collect())
    }
    pub fn neg(&self) -> U {
        U(self.0.iter().map(|c| -c).collect())
    }
    pub fn mul(&self, o: &U) -> U {
        if self.is_zero() || o.is_zero() {
            return U(vec![]);
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        U::new(c)
    }
    pub fn rem(&self, d: &U) -> U {
        let mut r = self.clone();
        let lc = d.0.last().unwrap().clone();
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let q = r.0.last().unwrap() / &lc;
            let mut c = r.0.clone();
            for (i, b) in d.0.iter().enumerate() {
                c[i + shift] -= &q * b;
            }
            c.pop();
            r = U::new(c);
        }
        r
    }
    pub fn div_exact(&self, d: &U) -> U {
        let mut r = self.clone();
        let lc = d.0.last().unwrap().clone();
        let mut q = vec![Rational::zero(); self.deg() + 1 - d.deg()];
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let k = r.0.last().unwrap() / &lc;
            for (i, b) in d.0.iter().enumerate() {
                r.0[i + shift] -= &k * b;
            }
            q[shift] = k;
            r = U::new(r.0);
        }
        assert!(r.is_zero());
        U::new(q)
    }
    pub fn gcd(&self, o: &U) -> U {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let t = a.rem(&b);
            a = b;
            b = t;
        }
        a
    }
    pub fn derivative(&self) -> U {
        U::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * r(i as i64)).collect())
    }
    pub fn squarefree(&self) -> U {
        self.div_exact(&self.gcd(&self.derivative()))
    }
    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }
    /// Whether `self = λ·o` for a nonzero scalar `λ`.
    pub fn proportional(&self, o: &U) -> bool {
        if self.0.len() != o.0.len() || self.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        let k = self.0.last().unwrap() / o.0.last().unwrap();
        self.0.iter().zip(&o.0).all(|(a, b)| *a == &k * b)
    }
}

/// Coefficients of `p` in variable `var`, each a univariate polynomial in
/// variable `other` (the ring must have exactly these two variables).
fn as_bivariate(p: &Polynomial, var: usize, other: usize) -> Vec<U> {
    let d = p.degree_in(var) as usize;
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); d + 1];
    for (m, c) in p.terms() {
        let (i, j) = (m.exponents()[var] as usize, m.exponents()[other] as usize);
        if rows[i].len() <= j {
            rows[i].resize(j + 1, Rational::zero());
        }
        rows[i][j] += c;
    }
    rows.into_iter().map(U::new).collect()
}

fn det(m: &[Vec<U>]) -> U {
    if m.is_empty() {
        return U(vec![r(1)]);
    }
    let mut acc = U(vec![]);
    for col in 0..m.len() {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<U>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect()).collect();
        let t = m[0][col].mul(&det(&minor));
        acc = if col % 2 == 0 { acc.add(&t) } else { acc.add(&t.neg()) };
    }
    acc
}

/// `Res_x(f, g)` as a polynomial in the other variable of a two-variable ring.
pub fn resultant(f: &Polynomial, g: &Polynomial, var: usize, other: usize) -> U {
    let (a, b) = (as_bivariate(f, var, other), as_bivariate(g, var, other));
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    let mut m = vec![vec![U(vec![]); size]; size];
    for i in 0..db {
        for (k, c) in a.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..da {
        for (k, c) in b.iter().rev().enumerate() {
            m[db + i][i + k] = c.clone();
        }
    }
    det(&m)
}

/// Univariate coefficients of a polynomial involving only variable `var`.
pub fn to_u(p: &Polynomial, var: usize) -> U {
    let mut c = vec![Rational::zero(); p.degree_in(var) as usize + 1];
    for (m, v) in p.terms() {
        assert!(m.exponents().iter().enumerate().all(|(i, e)| i == var || *e == 0));
        c[m.exponents()[var] as usize] += v;
    }
    U::new(c)
}

/// Krull dimension of a monomial ideal: the largest set of variables
/// containing the support of no generator.
pub fn monomial_dimension(gens: &[Vec<u32>], n: usize) -> i64 {
    if gens.iter().any(|g| g.iter().all(|e| *e == 0)) {
        return -1;
    }
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let free = |i: usize| mask & (1 << i) != 0;
        let ok = gens.iter().all(|g| g.iter().enumerate().any(|(i, e)| *e > 0 && !free(i)));
        if ok {
            best = best.max(mask.count_ones() as i64);
        }
    }
    best
}

/// Sign changes of `p` along a grid of `steps` points in `[-bound, bound]`,
/// plus grid points where `p` vanishes: a lower bound on the number of
/// distinct real roots.
pub fn sign_chart_roots(p: &U, bound: i64, steps: i64) -> usize {
    let sq = p.squarefree();
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for k in 0..=steps {
        let x = Rational::new((-bound * steps + 2 * bound * k).into(), steps.into());
        let v = sq.eval(&x);
        if v.is_zero() {
            count += 1;
            prev = None;
            continue;
        }
        let s = v.is_positive();
        if prev.is_some_and(|q| q != s) {
            count += 1;
        }
        prev = Some(s);
    }
    count
}

/// `Π (x - r_i)` times `x^2 + 1` when `pad` is set.
pub fn with_roots(roots: &[Rational], pad: bool) -> U {
    let mut p = U(vec![r(1)]);
    for root in roots {
        p = p.mul(&U(vec![-root.clone(), r(1)]));
    }
    if pad {
        p = p.mul(&U(vec![r(1), r(0), r(1)]));
    }
    p
}

pub fn u_to_poly(p: &U, ring: &Ring, var: usize) -> Polynomial {
    let n = ring.nvars();
    let terms = p.0.iter().enumerate().map(|(i, c)| (Monomial::var(n, var, i as u32).unwrap(), c.clone()));
    Polynomial::from_terms(ring, terms.collect::<Vec<_>>()).unwrap()
}

use ltv_core::classifier::{classify, Config, Field, LtvDescription, LtvReport};
use ltv_core::dependence::{invariance_subspace, suspend};
use ltv_core::PolyMap;

/// A random map in at most 3 variables, degree at most 3, without
/// invariance directions.
pub fn random_reduced_map<R: Rng>(rng: &mut R) -> PolyMap {
    loop {
        let n = rng.random_range(1..=3usize);
        let p = rng.random_range(1..=n.min(2));
        let ring = Ring::numbered("x", n);
        let comps: Vec<Polynomial> = (0..p).map(|_| random_poly(rng, &ring, 3, 3, 3)).collect();
        if comps.iter().any(Polynomial::is_constant) {
            continue;
        }
        let g = PolyMap::new(&ring, comps).unwrap();
        if invariance_subspace(&g).unwrap().is_zero() {
            return g;
        }
    }
}

/// The Ltv description and check verdicts. Reason strings quote `n` and
/// `dim V`, which shift under suspension, so only their kind is kept.
fn summary(rep: &LtvReport) -> (String, Vec<(String, &'static str)>) {
    let checks = rep.checks.iter().map(|c| (c.name.clone(), c.verdict.as_str())).collect();
    let ltv = match &rep.ltv {
        LtvDescription::Empty { .. } | LtvDescription::Undetermined { .. } => rep.ltv.kind().to_string(),
        other => format!("{other:?}"),
    };
    (ltv, checks)
}

/// Classifies `g` and `suspend(g, k)` and lists every report field that
/// differs.
pub fn suspension_differences(g: &PolyMap, k: usize, field: Field, config: &Config) -> Vec<String> {
    let f = suspend(g, k).unwrap();
    let a = classify(g, field, config).unwrap();
    let b = classify(&f, field, config).unwrap();
    let mut diffs = Vec::new();
    if summary(&a) != summary(&b) {
        diffs.push(format!("ltv/checks: {:?} vs {:?}", summary(&a), summary(&b)));
    }
    if a.jelonek != b.jelonek {
        diffs.push("jelonek ideal".into());
    }
    if a.critical != b.critical {
        diffs.push("critical ideal".into());
    }
    if a.budget_exceeded != b.budget_exceeded {
        diffs.push("budget flag".into());
    }
    let (fa, fb) = (a.factorization.unwrap(), b.factorization.unwrap());
    if fa.m != fb.m || fb.v.dim() != k {
        diffs.push(format!("reduced dimension {} vs {} (dim V = {})", fa.m, fb.m, fb.v.dim()));
    } else {
        let idx: Vec<usize> = (0..fa.m).collect();
        let renamed: Vec<Polynomial> = fb.g.components().iter().map(|c| c.remap(fa.g.ring(), &idx).unwrap()).collect();
        if renamed != fa.g.components() {
            diffs.push("reduced mapping".into());
        }
    }
    if a.infinity_sample.len() != b.infinity_sample.len()
        || a.infinity_sample.iter().zip(&b.infinity_sample).any(|(x, y)| {
            // An empty fibre stays empty; otherwise the fibre gains k free directions.
            let empty = x.closure_ideal.generators().iter().any(Polynomial::is_constant);
            let want = if empty { -1 } else { x.dim_infinity + k as i64 };
            y.dim_infinity != want || x.value != y.value
        })
    {
        diffs.push("fibre dimensions at infinity".into());
    }
    diffs
}
