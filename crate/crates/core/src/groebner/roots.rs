//! Real-root isolation for univariate rational polynomials via Sturm
//! sequences and exact bisection.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{rational_to_f64, Polynomial, Rational};

/// Dense univariate polynomial, coefficients from degree 0 upward, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Reads a polynomial that involves at most one variable.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let support = p.support();
        let used: Vec<usize> = support.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| i).collect();
        if used.len() > 1 {
            return Err(Error::NotUnivariate);
        }
        let var = used.first().copied();
        let deg = p.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            let e = var.map_or(0, |v| m.exponents()[v] as usize);
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> &Rational {
        self.coeffs.last().expect("nonzero")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::new(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let lc = d.lc().clone();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc().clone();
        UniPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn sign_at(&self, x: &Rational) -> i32 {
        sign(&self.eval(x))
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

struct Sturm {
    seq: Vec<UniPoly>,
}

impl Sturm {
    fn new(p: &UniPoly) -> Sturm {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            seq.push(UniPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        seq.pop();
        Sturm { seq }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|s| *s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn at(&self, x: &Rational) -> usize {
        Sturm::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn at_infinity(&self, positive: bool) -> usize {
        Sturm::variations(self.seq.iter().map(|p| {
            let s = sign(p.lc());
            if positive || p.degree().unwrap_or(0) % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct roots in `(a, b)`; neither endpoint may be a root.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.at(a) - self.at(b)
    }
}

/// An isolating interval. Either `lo == hi` (an exact rational root) or the
/// open interval `(lo, hi)` holds exactly one root and neither endpoint is
/// a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &UniPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let s = Sturm::new(&p.squarefree_part());
    s.at_infinity(false) - s.at_infinity(true)
}

fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.lc().abs();
    let m = p.coeffs[..p.coeffs.len() - 1].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rational::zero);
    m + Rational::one()
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// Simplest rational (smallest denominator) in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_nonneg(&-hi, Some(&-lo));
    }
    simplest_nonneg(lo, Some(hi))
}

// `0 <= lo < hi`, `hi = None` meaning infinity.
fn simplest_nonneg(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => next,
        Some(h) if &next < h => next,
        Some(h) => {
            let lower = Rational::one() / (h - &fl);
            let upper = if *lo == fl { None } else { Some(Rational::one() / (lo - &fl)) };
            let y = simplest_nonneg(&lower, upper.as_ref());
            fl + Rational::one() / y
        }
    }
}

/// Isolates all real roots of a univariate polynomial, sorted ascending.
/// Rational roots are detected and returned as exact point intervals when
/// they are hit during bisection or are the simplest rational of a refined
/// interval.
pub fn real_roots(p: &Polynomial) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    isolate(&UniPoly::from_polynomial(p)?)
}

pub fn isolate(p: &UniPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sq = p.squarefree_part();
    let sturm = Sturm::new(&sq);
    let b = cauchy_bound(&sq);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, c)) = stack.pop() {
        let k = sturm.count(&a, &c);
        if k == 0 {
            continue;
        }
        if k == 1 {
            out.push(finish(&sq, &sturm, a, c));
            continue;
        }
        let m = (&a + &c) * half();
        if sq.sign_at(&m) == 0 {
            let (l, r) = exclude_point(&sq, &sturm, &m, &a, &c);
            out.push(RootInterval { lo: m.clone(), hi: m });
            stack.push((a, l));
            stack.push((r, c));
        } else {
            stack.push((a, m.clone()));
            stack.push((m, c));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Non-root points `l < m < r` inside `(a, c)` such that `m` is the only
/// root in `(l, r)`.
fn exclude_point(sq: &UniPoly, sturm: &Sturm, m: &Rational, a: &Rational, c: &Rational) -> (Rational, Rational) {
    let mut delta = (c - a) / Rational::from_integer(BigInt::from(4));
    loop {
        let l = m - &delta;
        let r = m + &delta;
        if sq.sign_at(&l) != 0 && sq.sign_at(&r) != 0 && sturm.count(&l, &r) == 1 {
            return (l, r);
        }
        delta *= half();
    }
}

/// Light refinement of a one-root interval, checking for a rational root.
fn finish(sq: &UniPoly, sturm: &Sturm, mut a: Rational, mut c: Rational) -> RootInterval {
    for step in 0..24 {
        if step % 4 == 0 {
            let s = simplest_between(&a, &c);
            if sq.sign_at(&s) == 0 {
                return RootInterval { lo: s.clone(), hi: s };
            }
        }
        let m = (&a + &c) * half();
        if sq.sign_at(&m) == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sturm.count(&a, &m) == 1 {
            c = m;
        } else {
            a = m;
        }
    }
    RootInterval { lo: a, hi: c }
}

/// Bisects an isolating interval of `p` until its width is at most `width`.
pub fn refine(p: &Polynomial, interval: &RootInterval, width: &Rational) -> Result<RootInterval> {
    let sq = UniPoly::from_polynomial(p)?.squarefree_part();
    let (mut a, mut c) = (interval.lo.clone(), interval.hi.clone());
    while &c - &a > *width {
        let m = (&a + &c) * half();
        let sm = sq.sign_at(&m);
        if sm == 0 {
            return Ok(RootInterval { lo: m.clone(), hi: m });
        }
        if sq.sign_at(&a) * sm < 0 {
            c = m;
        } else {
            a = m;
        }
    }
    Ok(RootInterval { lo: a, hi: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio, Ring};

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn rational_roots_are_exact() {
        // (x - 1)(x + 2)(2x - 1) = 2x^3 + x^2 - 5x + 2
        let roots = isolate(&uni(&[2, -5, 1, 2])).unwrap();
        let exact: Vec<_> = roots.iter().map(|r| (r.is_exact(), r.lo.clone())).collect();
        assert_eq!(exact, vec![(true, rat(-2)), (true, ratio(1, 2)), (true, rat(1))]);
    }

    #[test]
    fn irrational_roots_are_isolated() {
        let roots = isolate(&uni(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| !r.is_exact()));
        let r = Ring::new(["x"]);
        let x = Polynomial::var(&r, 0).unwrap();
        let p = &(&x * &x) - &Polynomial::constant(&r, rat(2));
        let w = Rational::new(BigInt::one(), BigInt::one() << 53);
        let fine = refine(&p, &roots[1], &w).unwrap();
        assert!((fine.approx() - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn repeated_roots_count_once() {
        // (x - 1)^2 (x^2 + 1)
        let p = uni(&[1, -2, 2, -2, 1]);
        assert_eq!(count_real_roots(&p), 1);
        assert_eq!(isolate(&p).unwrap().len(), 1);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(2, 3)), ratio(1, 2));
        assert_eq!(simplest_between(&ratio(-5, 2), &rat(3)), rat(0));
        assert_eq!(simplest_between(&ratio(3, 10), &ratio(4, 10)), ratio(1, 3));
        assert_eq!(simplest_between(&rat(-3), &ratio(-5, 2)), ratio(-8, 3));
        assert_eq!(simplest_between(&rat(2), &ratio(5, 2)), ratio(7, 3));
    }
}
