//! Exact sparse multivariate polynomials over the rationals, polynomial
//! mappings and rational matrices acting on them.
//!
//! Terms are kept sorted in descending graded reverse lexicographic order with
//! no zero coefficients, so two equal polynomials always have identical term
//! vectors and equality is a plain comparison.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::FloatPoly;

/// Exact coefficient type.
pub type Rational = BigRational;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = i32::MAX as u32;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact conversion of a finite double into a rational.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Result<Self> {
        if exps.iter().any(|&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentOverflow);
        }
        Ok(Monomial(exps))
    }

    /// `x_index^exp` in a ring with `nvars` variables.
    pub fn var(nvars: usize, index: usize, exp: u32) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange { index, len: nvars });
        }
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial::from_exponents(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        let d: u64 = self.0.iter().map(|&e| u64::from(e)).sum();
        d.min(u64::from(u32::MAX)) as u32
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.checked_add(*b) {
                Some(s) if s <= MAX_EXPONENT => out.push(s),
                _ => return Err(Error::ExponentOverflow),
            }
        }
        Ok(Monomial(out))
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomials compare by graded reverse lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

/// An ordered list of variable names. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        Ring { names: names.into() }
    }

    /// `prefix1, ..., prefixN`
    pub fn numbered(prefix: &str, count: usize) -> Self {
        Ring::new((1..=count).map(|i| alloc::format!("{prefix}{i}")))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `base` if no variable carries that name, otherwise `base` with
    /// underscores appended until it is unused.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }

    /// Names that do not clash with this ring.
    pub fn fresh_names(&self, prefix: &str, count: usize) -> Vec<String> {
        let mut out: Vec<String> = Vec::with_capacity(count);
        for i in 1..=count {
            let mut name = alloc::format!("{prefix}{i}");
            while self.index_of(&name).is_some() || out.contains(&name) {
                name.push('_');
            }
            out.push(name);
        }
        out
    }

    pub fn append(&self, extra: &[String]) -> Ring {
        Ring::new(self.names.iter().cloned().chain(extra.iter().cloned()))
    }

    pub fn prepend(&self, extra: &[String]) -> Ring {
        Ring::new(extra.iter().cloned().chain(self.names.iter().cloned()))
    }

    /// Ring keeping only the variables flagged in `keep`, in order.
    pub fn select(&self, keep: &[bool]) -> Ring {
        Ring::new(
            self.names
                .iter()
                .zip(keep)
                .filter(|(_, k)| **k)
                .map(|(n, _)| n.clone()),
        )
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

/// Sparse polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn var(ring: &Ring, index: usize) -> Result<Self> {
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), index, 1)?, Rational::one())],
        })
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Result<Self> {
        Polynomial::from_terms(ring, [(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging repeated monomials
    /// and dropping zero coefficients.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch { expected: ring.nvars(), found: m.nvars() });
            }
            if m.0.iter().any(|&e| e > MAX_EXPONENT) {
                return Err(Error::ExponentOverflow);
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Ok(Polynomial::from_map(ring, acc))
    }

    fn from_map(ring: &Ring, acc: BTreeMap<Monomial, Rational>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Terms in descending graded reverse lexicographic order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term (zero when absent).
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Which variables actually occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars()];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(&m.0) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate_other { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                *acc.entry(m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(Polynomial::from_map(&self.ring, acc))
    }

    pub fn try_pow(&self, exp: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| Ok((t.checked_mul(m)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars() {
            return Err(Error::IndexOutOfRange { index: var, len: self.nvars() });
        }
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let e = m.0[var];
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            (Monomial(exps), c * Rational::from_integer(BigInt::from(e)))
        });
        // Lowering one exponent preserves the relative grevlex order.
        Ok(Polynomial { ring: self.ring.clone(), terms: terms.collect() })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Sum of the terms of top total degree.
    pub fn leading_form(&self) -> Result<Polynomial> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        let terms = self.terms.iter().take_while(|(m, _)| m.degree() == d).cloned().collect();
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Homogenizes to `target_degree` in the ring with a new variable `x0`
    /// prepended (fresh name if `x0` is taken).
    pub fn homogenize(&self, target_degree: u32) -> Result<Polynomial> {
        let ring = self.ring.prepend(&[self.ring.fresh_name("x0")]);
        self.homogenize_into(&ring, target_degree)
    }

    /// Homogenizes into `ring`, whose variable 0 is the homogenizing variable
    /// and whose remaining variables are those of `self`, in order.
    pub fn homogenize_into(&self, ring: &Ring, target_degree: u32) -> Result<Polynomial> {
        if ring.nvars() != self.nvars() + 1 {
            return Err(Error::DimensionMismatch { expected: self.nvars() + 1, found: ring.nvars() });
        }
        if let Some(d) = self.degree() {
            if d > target_degree {
                return Err(Error::DegreeTooLow { target: target_degree, degree: d });
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = Vec::with_capacity(m.0.len() + 1);
            exps.push(target_degree - m.degree());
            exps.extend_from_slice(&m.0);
            (Monomial(exps), c.clone())
        });
        Polynomial::from_terms(ring, terms)
    }

    /// Substitutes `value` for variable `var` and removes it from the ring.
    pub fn specialize_var(&self, var: usize, value: &Rational) -> Result<Polynomial> {
        if var >= self.nvars() {
            return Err(Error::IndexOutOfRange { index: var, len: self.nvars() });
        }
        let keep: Vec<bool> = (0..self.nvars()).map(|i| i != var).collect();
        let ring = self.ring.select(&keep);
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.0[var];
            let factor = if e == 0 { Rational::one() } else { num_traits::pow(value.clone(), e as usize) };
            let exps = m.0.iter().enumerate().filter(|(i, _)| *i != var).map(|(_, &x)| x).collect();
            (Monomial(exps), c * factor)
        });
        Polynomial::from_terms(&ring, terms)
    }

    /// Moves variable `i` to position `map[i]` of `ring`.
    pub fn remap(&self, ring: &Ring, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= ring.nvars()) {
            return Err(Error::IndexOutOfRange { index: bad, len: ring.nvars() });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; ring.nvars()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial(exps), c.clone())
        });
        Polynomial::from_terms(ring, terms)
    }

    /// Embeds into a ring that lists this ring's variables first.
    pub fn extend_to(&self, ring: &Ring) -> Result<Polynomial> {
        let map: Vec<usize> = (0..self.nvars()).collect();
        self.remap(ring, &map)
    }

    /// Drops variables flagged `false` in `keep`; they must not occur.
    pub fn restrict_to(&self, keep: &[bool]) -> Result<Polynomial> {
        let used = self.support();
        if used.iter().zip(keep).any(|(u, k)| *u && !*k) {
            return Err(Error::InvalidArgument("polynomial involves a dropped variable".into()));
        }
        let ring = self.ring.select(keep);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps = m.0.iter().zip(keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
                (Monomial(exps), c.clone())
            })
            .collect();
        // Dropping absent variables keeps the grevlex order.
        Ok(Polynomial { ring, terms })
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return Ok(Polynomial::constant(&self.ring.select(&[]), self.constant_term()));
            }
        };
        if images.iter().any(|p| p.ring != target) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e as usize])?;
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Multiplies by the least common denominator and divides by the content,
    /// leaving an integer polynomial with positive leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let ints: Vec<BigInt> = self.terms.iter().map(|(_, c)| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = num_integer::Integer::gcd(&g, i);
        }
        if ints[0].is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .zip(ints)
            .map(|((m, _), i)| (m.clone(), Rational::from_integer(i / &g)))
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Divides by the leading (grevlex) coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly::new(
            self.nvars(),
            self.terms.iter().map(|(m, c)| (m.0.clone(), rational_to_f64(c))).collect(),
        )
    }
}

impl core::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

// Operator forms for same-ring arithmetic inside the crate; they panic on a
// ring mismatch, which is a programming error at those call sites.
impl core::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl core::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl core::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch or exponent overflow in polynomial product")
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ring.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text form, e.g. `x^2 - y^2` or `3/2*x*y + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

/// A polynomial mapping `K^n -> K^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(ring: &Ring, components: Vec<Polynomial>) -> Result<Self> {
        if ring.nvars() == 0 {
            return Err(Error::InvalidArgument("a mapping needs at least one variable".into()));
        }
        PolyMap::with_any_domain(ring, components)
    }

    /// Like [`PolyMap::new`] but admits a zero-dimensional domain, which
    /// arises when a constant mapping is reduced.
    pub fn with_any_domain(ring: &Ring, components: Vec<Polynomial>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("a mapping needs at least one component".into()));
        }
        if components.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMap { ring: ring.clone(), components })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn domain_dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn codomain_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.degree().unwrap_or(0)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.components.iter().all(Polynomial::is_constant)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    /// Component-wise `Σ_j v_j ∂f_i/∂x_j`.
    pub fn directional_derivative(&self, v: &[Rational]) -> Result<PolyMap> {
        let n = self.domain_dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let mut comps = Vec::with_capacity(self.components.len());
        for f in &self.components {
            let mut acc = Polynomial::zero(&self.ring);
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    acc = acc.merge(&f.partial_derivative(j)?.scale(vj), false);
                }
            }
            comps.push(acc);
        }
        Ok(PolyMap { ring: self.ring.clone(), components: comps })
    }

    /// `f ∘ L` where `L: K^k -> K^n`; `ring` names the `k` new variables.
    pub fn compose_linear(&self, l: &LinearMap, ring: &Ring) -> Result<PolyMap> {
        if l.rows() != self.domain_dim() {
            return Err(Error::DimensionMismatch { expected: self.domain_dim(), found: l.rows() });
        }
        if l.cols() != ring.nvars() {
            return Err(Error::DimensionMismatch { expected: l.cols(), found: ring.nvars() });
        }
        let images = l.linear_forms(ring);
        let components = self.components.iter().map(|c| c.substitute(&images)).collect::<Result<Vec<_>>>()?;
        Ok(PolyMap { ring: ring.clone(), components })
    }

    pub fn to_float(&self) -> crate::numeric::FloatMap {
        crate::numeric::FloatMap::from_polymap(self)
    }
}

/// A rational matrix, read as a linear map `K^cols -> K^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(LinearMap { rows, cols, entries })
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(LinearMap { rows: rows.len(), cols, entries })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let cols = columns.len();
        let mut entries = vec![Rational::zero(); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                entries[i * cols + j] = x.clone();
            }
        }
        Ok(LinearMap { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        LinearMap { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).fold(Rational::zero(), |s, t| s + t))
            .collect())
    }

    /// Matrix product `self · other`, i.e. the composition `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Rational::zero();
                for k in 0..self.cols {
                    s += self.entry(i, k) * other.entry(k, j);
                }
                entries.push(s);
            }
        }
        Ok(LinearMap { rows: self.rows, cols: other.cols, entries })
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.row_vectors(), self.cols)
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        if self.rows != self.cols {
            return None;
        }
        crate::linalg::inverse(&self.row_vectors()).map(|rows| LinearMap::from_rows(self.cols, &rows).expect("square"))
    }

    /// The linear forms `Σ_j a_ij u_j`, one per row, in `ring`.
    pub fn linear_forms(&self, ring: &Ring) -> Vec<Polynomial> {
        (0..self.rows)
            .map(|i| {
                let terms = self.row(i).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| {
                    (Monomial::var(ring.nvars(), j, 1).expect("column index within ring"), c.clone())
                });
                Polynomial::from_terms(ring, terms).expect("well-formed linear form")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn xyz() -> Ring {
        Ring::new(["x", "y", "z"])
    }

    fn p(ring: &Ring, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(ring, terms.iter().map(|(c, e)| (Monomial::from_exponents(e.to_vec()).unwrap(), rat(*c)))).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::new(["x", "y"]);
        let a = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
        let b = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
        let prod = a.try_mul(&b).unwrap();
        assert_eq!(prod, p(&r, &[(1, &[2, 0]), (-1, &[0, 2])]));
        assert_eq!(prod.to_string(), "x^2 - y^2");
        assert_eq!(prod.degree(), Some(2));
    }

    #[test]
    fn add_zero_and_monomial_product() {
        let r = Ring::new(["x", "y"]);
        let a = p(&r, &[(3, &[2, 1]), (-1, &[0, 0])]);
        assert_eq!(a.try_add(&Polynomial::zero(&r)).unwrap(), a);
        let m1 = p(&r, &[(1, &[2, 1])]);
        let m2 = p(&r, &[(1, &[1, 4])]);
        assert_eq!(m1.try_mul(&m2).unwrap(), p(&r, &[(1, &[3, 5])]));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::one(&Ring::new(["x"]));
        let b = Polynomial::one(&Ring::new(["y"]));
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn exponent_overflow_is_caught() {
        let r = Ring::new(["x"]);
        let big = p(&r, &[(1, &[MAX_EXPONENT])]);
        let x = p(&r, &[(1, &[1])]);
        assert_eq!(big.try_mul(&x), Err(Error::ExponentOverflow));
        assert!(Monomial::from_exponents(vec![MAX_EXPONENT + 1]).is_err());
    }

    #[test]
    fn motzkin_partial_and_leading_form() {
        let r = xyz();
        let m = p(&r, &[(1, &[4, 2, 0]), (1, &[2, 4, 0]), (-3, &[2, 2, 0]), (1, &[0, 0, 0])]);
        let dx = m.partial_derivative(0).unwrap();
        assert_eq!(dx, p(&r, &[(4, &[3, 2, 0]), (2, &[1, 4, 0]), (-6, &[1, 2, 0])]));
        assert_eq!(m.leading_form().unwrap(), p(&r, &[(1, &[4, 2, 0]), (1, &[2, 4, 0])]));
        assert_eq!(m.evaluate(&[rat(1), rat(1), rat(0)]).unwrap(), rat(0));
        assert!(Polynomial::constant(&r, rat(5)).partial_derivative(0).unwrap().is_zero());
        assert!(m.partial_derivative(3).is_err());
        assert_eq!(Polynomial::zero(&r).leading_form(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn partial_of_simple_component() {
        let r = xyz();
        let f2 = p(&r, &[(1, &[1, 1, 0]), (1, &[1, 0, 1])]);
        assert_eq!(f2.partial_derivative(2).unwrap(), p(&r, &[(1, &[1, 0, 0])]));
    }

    #[test]
    fn homogenize_examples() {
        let r = xyz();
        let q = p(&r, &[(1, &[1, 1, 0]), (1, &[0, 0, 1])]);
        let h = q.homogenize(2).unwrap();
        assert_eq!(h.to_string(), "x*y + x0*z");
        assert!(h.is_homogeneous());
        let one = Polynomial::one(&r).homogenize(3).unwrap();
        assert_eq!(one.to_string(), "x0^3");
        assert_eq!(q.homogenize(1), Err(Error::DegreeTooLow { target: 1, degree: 2 }));
        let back = h.specialize_var(0, &rat(1)).unwrap();
        assert_eq!(back.to_string(), q.to_string());
    }

    #[test]
    fn directional_derivative_examples() {
        let r = xyz();
        let x = p(&r, &[(1, &[1, 0, 0])]);
        let simple = PolyMap::new(&r, vec![x.clone(), p(&r, &[(1, &[1, 1, 0]), (1, &[1, 0, 1])])]).unwrap();
        let d = simple.directional_derivative(&[rat(0), rat(1), rat(-1)]).unwrap();
        assert!(d.components().iter().all(Polynomial::is_zero));
        let bad = PolyMap::new(&r, vec![x, p(&r, &[(1, &[1, 1, 0]), (1, &[0, 0, 1])])]).unwrap();
        let d = bad.directional_derivative(&[rat(0), rat(1), rat(-1)]).unwrap();
        assert!(d.components()[0].is_zero());
        assert_eq!(d.components()[1].to_string(), "x - 1");
        assert!(bad.directional_derivative(&[rat(1)]).is_err());
    }

    #[test]
    fn compose_linear_expands() {
        let r = Ring::new(["x"]);
        let f = PolyMap::new(&r, vec![p(&r, &[(1, &[2])])]).unwrap();
        let uv = Ring::new(["u", "v"]);
        let l = LinearMap::from_rows(2, &[vec![rat(1), rat(1)]]).unwrap();
        let g = f.compose_linear(&l, &uv).unwrap();
        assert_eq!(g.components()[0].to_string(), "u^2 + 2*u*v + v^2");

        let xy = Ring::new(["x", "y"]);
        let xyp = PolyMap::new(&xy, vec![p(&xy, &[(1, &[1, 1])])]).unwrap();
        let swap = LinearMap::from_rows(2, &[vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
        assert_eq!(xyp.compose_linear(&swap, &xy).unwrap(), xyp);
        assert_eq!(xyp.compose_linear(&LinearMap::identity(2), &xy).unwrap(), xyp);
    }

    #[test]
    fn evaluate_examples() {
        let r = xyz();
        let f = PolyMap::new(&r, vec![p(&r, &[(1, &[1, 0, 0])]), p(&r, &[(1, &[1, 1, 0]), (1, &[1, 0, 1])])]).unwrap();
        assert_eq!(f.evaluate(&[rat(1), rat(2), rat(3)]).unwrap(), vec![rat(1), rat(5)]);
        assert!(f.evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn display_rational_coefficients() {
        let r = Ring::new(["x"]);
        let q = Polynomial::from_terms(&r, [(Monomial::from_exponents(vec![1]).unwrap(), ratio(3, 2)), (Monomial::one(1), ratio(-1, 3))]).unwrap();
        assert_eq!(q.to_string(), "3/2*x - 1/3");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!((-&p(&r, &[(1, &[1])])).to_string(), "-x");
    }
}
