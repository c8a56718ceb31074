//! Sparse multivariate polynomials over the prime field F_p.
//!
//! Exponents are arbitrary-precision so that Frobenius powers `f^(q^e)` never
//! overflow. Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord`
//! is graded reverse lexicographic; iteration in reverse gives the canonical
//! (descending) term order used for printing and for leading terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Characteristic data: the prime `p`, the exponent `gamma` and `q = p^gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharConfig {
    p: u64,
    gamma: u32,
    q: u64,
}

impl CharConfig {
    pub fn new(p: u64, gamma: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        if gamma == 0 {
            return Err(Error::InvalidConfig("gamma must be positive".into()));
        }
        // Coefficients are multiplied in u128, so p itself must fit comfortably.
        if p > u32::MAX as u64 {
            return Err(Error::InvalidConfig(format!("p = {p} is too large")));
        }
        let q = p
            .checked_pow(gamma)
            .ok_or_else(|| Error::InvalidConfig(format!("q = {p}^{gamma} overflows")))?;
        Ok(CharConfig { p, gamma, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^e` as a big integer.
    pub fn q_pow(&self, e: u32) -> BigUint {
        num_traits::pow(BigUint::from(self.q), e as usize)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The distinguished extra variable of `R[t]` or `R[tau]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extra {
    T,
    Tau,
}

impl Extra {
    pub fn name(self) -> &'static str {
        match self {
            Extra::T => "t",
            Extra::Tau => "tau",
        }
    }
}

/// Ambient ring descriptor: `F_p[x0..x{n-1}]`, optionally adjoined with `t` or `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    p: u64,
    nvars: usize,
    extra: Option<Extra>,
}

impl Ring {
    pub fn new(cfg: &CharConfig, nvars: usize) -> Ring {
        Ring {
            p: cfg.p,
            nvars,
            extra: None,
        }
    }

    pub fn with_extra(self, extra: Extra) -> Ring {
        Ring {
            extra: Some(extra),
            ..self
        }
    }

    pub fn pure(self) -> Ring {
        Ring {
            extra: None,
            ..self
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn extra(&self) -> Option<Extra> {
        self.extra
    }

    /// Number of exponent slots in a monomial of this ring.
    pub fn arity(&self) -> usize {
        self.nvars + usize::from(self.extra.is_some())
    }

    fn var_name(&self, i: usize) -> String {
        if i < self.nvars {
            format!("x{i}")
        } else {
            self.extra.map(|e| e.name()).unwrap_or("?").to_string()
        }
    }
}

// ---------------------------------------------------------------------------
// F_p arithmetic

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Monomials

/// Exponent vector with cached total degree. `Ord` is graded reverse lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<BigUint>,
    degree: BigUint,
}

impl Monomial {
    pub fn one(arity: usize) -> Monomial {
        Monomial {
            exps: vec![BigUint::zero(); arity],
            degree: BigUint::zero(),
        }
    }

    pub fn var(arity: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(arity);
        m.exps[i] = BigUint::one();
        m.degree = BigUint::one();
        m
    }

    pub fn from_exps(exps: Vec<BigUint>) -> Monomial {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn from_u64s(exps: &[u64]) -> Monomial {
        Monomial::from_exps(exps.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn exps(&self) -> &[BigUint] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> &BigUint {
        &self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree.is_zero()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<BigUint> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: &self.degree + &other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Vec<BigUint> = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            exps,
            degree: &other.degree - &self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| a.is_zero() || b.is_zero())
    }

    /// Multiply every exponent by `k`.
    pub fn scale_exponents(&self, k: &BigUint) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * k).collect(),
            degree: &self.degree * k,
        }
    }

    /// Componentwise Euclidean division `v = modulus * w + u`; returns `(w, u)`.
    pub fn split(&self, modulus: &BigUint) -> (Monomial, Monomial) {
        let (ws, us): (Vec<BigUint>, Vec<BigUint>) =
            self.exps.iter().map(|a| a.div_rem(modulus)).unzip();
        (Monomial::from_exps(ws), Monomial::from_exps(us))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match b.cmp(a) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// Polynomials

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Poly {
        Poly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, c: u64) -> Poly {
        let mut p = Poly::zero(ring);
        let c = c % ring.p;
        if c != 0 {
            p.terms.insert(Monomial::one(ring.arity()), c);
        }
        p
    }

    pub fn one(ring: Ring) -> Poly {
        Poly::constant(ring, 1)
    }

    /// The variable `x_i`.
    pub fn var(ring: Ring, i: usize) -> Poly {
        assert!(i < ring.nvars, "variable index out of range");
        Poly::term(ring, Monomial::var(ring.arity(), i), 1)
    }

    /// The distinguished variable `t` or `tau`.
    pub fn extra_var(ring: Ring) -> Poly {
        assert!(ring.extra.is_some(), "ring has no distinguished variable");
        Poly::term(ring, Monomial::var(ring.arity(), ring.nvars), 1)
    }

    pub fn term(ring: Ring, mono: Monomial, c: u64) -> Poly {
        debug_assert_eq!(mono.arity(), ring.arity());
        let mut p = Poly::zero(ring);
        let c = c % ring.p;
        if c != 0 {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, u64)>>(ring: Ring, terms: I) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c % ring.p);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending (canonical) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u64)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u64)> {
        self.terms.last_key_value().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<BigUint> {
        self.terms.keys().map(|m| m.degree().clone()).max()
    }

    /// Degree in the distinguished variable (`None` for the zero polynomial).
    pub fn extra_degree(&self) -> Option<BigUint> {
        let slot = self.ring.nvars;
        if self.ring.extra.is_none() {
            return if self.is_zero() {
                None
            } else {
                Some(BigUint::zero())
            };
        }
        self.terms.keys().map(|m| m.exps[slot].clone()).max()
    }

    /// Remove and return the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, u64)> {
        self.terms.pop_last()
    }

    /// Add `c * m`, merging with an existing term.
    pub(crate) fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.ring.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = add_mod(*o.get(), c, p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert_eq!(self.ring, other.ring, "polynomials from different rings");
    }

    /// `self += c * m * other`.
    pub fn add_scaled_shifted(&mut self, other: &Poly, m: &Monomial, c: u64) {
        self.check_ring(other);
        if c == 0 {
            return;
        }
        let p = self.ring.p;
        for (om, &oc) in &other.terms {
            self.add_term(om.mul(m), mul_mod(oc, c, p));
        }
    }

    pub fn scale(&self, c: u64) -> Poly {
        let p = self.ring.p;
        let c = c % p;
        if c == 0 {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), mul_mod(a, c, p)))
                .collect(),
        }
    }

    /// Scale so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(inv_mod(c, self.ring.p)),
            None => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(a, &c)| (a.mul(m), c)).collect(),
        }
    }

    pub fn pow(&self, k: &BigUint) -> Poly {
        let mut acc = Poly::one(self.ring);
        let mut base = self.clone();
        let bits = k.bits();
        for i in 0..bits {
            if k.bit(i) {
                acc = &acc * &base;
            }
            if i + 1 < bits {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_u64(&self, k: u64) -> Poly {
        self.pow(&BigUint::from(k))
    }

    /// `f^(q^e)`; coefficients are fixed by Frobenius so only exponents change.
    pub fn frobenius_power(&self, e: u32, cfg: &CharConfig) -> Poly {
        let k = cfg.q_pow(e);
        self.frobenius_power_by(&k)
    }

    /// `f^k` for `k` a power of the characteristic (exponents scaled by `k`).
    pub(crate) fn frobenius_power_by(&self, k: &BigUint) -> Poly {
        Poly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.scale_exponents(k), c))
                .collect(),
        }
    }

    /// Write `f = sum_u a_u^(q^e) x^u` with every exponent of `u` below `q^e`.
    ///
    /// Returns the nonzero `a_u` keyed by `u`.
    pub fn frobenius_decompose(&self, e: u32, cfg: &CharConfig) -> BTreeMap<Monomial, Poly> {
        let modulus = cfg.q_pow(e);
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let (w, u) = m.split(&modulus);
            out.entry(u)
                .or_insert_with(|| Poly::zero(self.ring))
                .add_term(w, c);
        }
        out.retain(|_, a| !a.is_zero());
        out
    }

    /// Coefficients with respect to the distinguished variable, as polynomials
    /// in the pure ring: `self = sum_k parts[k] * extra^k`.
    pub fn split_extra(&self) -> BTreeMap<BigUint, Poly> {
        let pure = self.ring.pure();
        let mut out: BTreeMap<BigUint, Poly> = BTreeMap::new();
        if self.ring.extra.is_none() {
            if !self.is_zero() {
                out.insert(BigUint::zero(), self.clone());
            }
            return out;
        }
        let n = self.ring.nvars;
        for (m, &c) in &self.terms {
            let k = m.exps[n].clone();
            let rest = Monomial::from_exps(m.exps[..n].to_vec());
            out.entry(k)
                .or_insert_with(|| Poly::zero(pure))
                .add_term(rest, c);
        }
        out
    }

    /// Inverse of [`Poly::split_extra`].
    pub fn from_extra_parts<'a, I>(ring: Ring, parts: I) -> Poly
    where
        I: IntoIterator<Item = (&'a BigUint, &'a Poly)>,
    {
        assert!(ring.extra.is_some());
        let mut out = Poly::zero(ring);
        for (k, part) in parts {
            assert_eq!(part.ring, ring.pure());
            for (m, &c) in &part.terms {
                let mut exps = m.exps.clone();
                exps.push(k.clone());
                out.add_term(Monomial::from_exps(exps), c);
            }
        }
        out
    }

    /// Embed a pure-ring polynomial into `R[extra]`.
    pub fn lift(&self, extra: Extra) -> Poly {
        assert!(self.ring.extra.is_none());
        let ring = self.ring.with_extra(extra);
        let zero = BigUint::zero();
        Poly::from_extra_parts(ring, [(&zero, self)])
    }

    /// Reinterpret under a ring of the same arity (e.g. rename `t` to `tau`).
    pub fn relabel(&self, ring: Ring) -> Poly {
        assert_eq!(ring.arity(), self.ring.arity());
        assert_eq!(ring.p, self.ring.p);
        Poly {
            ring,
            terms: self.terms.clone(),
        }
    }

    pub fn parse(text: &str, ring: Ring) -> Result<Poly> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            ring,
        }
        .parse()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let p = self.ring.p;
        Poly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), p - c))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = Poly::zero(self.ring);
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m, &c) in &small.terms {
            out.add_scaled_shifted(large, m, c);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let factors: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| {
                    if e.is_one() {
                        self.ring.var_name(i)
                    } else {
                        format!("{}^{}", self.ring.var_name(i), e)
                    }
                })
                .collect();
            match (factors.is_empty(), c == 1) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: Ring,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        loop {
            let t = self.term()?;
            acc = &acc + &t;
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    return self.err("subtraction is not supported; write coefficients as mod-p representatives")
                }
                Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            }
        }
    }

    fn natural(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigUint>().expect("digit string"))
    }

    fn term(&mut self) -> Result<Poly> {
        let ring = self.ring;
        let mut coeff = 1u64;
        let mut mono = Monomial::one(ring.arity());
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                coeff = (n % BigUint::from(ring.p)).to_u64().expect("reduced mod p");
            }
            Some(c) if c.is_ascii_alphabetic() => {
                mono = mono.mul(&self.factor()?);
            }
            Some(c) => return self.err(format!("expected a term, found `{}`", c as char)),
            None => return self.err("expected a term, found end of input"),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            mono = mono.mul(&self.factor()?);
        }
        Ok(Poly::term(ring, mono, coeff))
    }

    fn factor(&mut self) -> Result<Monomial> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a variable");
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let slot = self.resolve(name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            pos: start,
        })?;
        let mut exp = BigUint::one();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.natural()?;
        }
        let mut exps = vec![BigUint::zero(); self.ring.arity()];
        exps[slot] = exp;
        Ok(Monomial::from_exps(exps))
    }

    fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(idx) = name.strip_prefix('x') {
            if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            if idx.len() > 1 && idx.starts_with('0') {
                return None;
            }
            let i: usize = idx.parse().ok()?;
            return (i < self.ring.nvars).then_some(i);
        }
        match (name, self.ring.extra) {
            ("t", Some(Extra::T)) | ("tau", Some(Extra::Tau)) => Some(self.ring.nvars),
            _ => None,
        }
    }
}

/// Smallest `n` such that every `x<i>` in `text` has `i < n`.
pub fn infer_num_vars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut n = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        let boundary = i == 0 || !bytes[i - 1].is_ascii_alphanumeric();
        if bytes[i] == b'x' && boundary {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > i + 1 {
                if let Ok(k) = text[i + 1..j].parse::<usize>() {
                    n = n.max(k + 1);
                }
            }
            i = j;
        } else {
            i += 1;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, gamma: u32) -> CharConfig {
        CharConfig::new(p, gamma).unwrap()
    }

    fn ring(p: u64, n: usize) -> Ring {
        Ring::new(&cfg(p, 1), n)
    }

    #[test]
    fn config_validation() {
        assert!(CharConfig::new(4, 1).is_err());
        assert!(CharConfig::new(3, 0).is_err());
        let c = cfg(2, 3);
        assert_eq!(c.q(), 8);
        assert_eq!(c.q_pow(2), BigUint::from(64u32));
    }

    #[test]
    fn parse_zero_and_reduction() {
        let r = ring(3, 2);
        assert!(Poly::parse("0", r).unwrap().is_zero());
        assert!(Poly::parse("3*x0", r).unwrap().is_zero());
        let f = Poly::parse("2*x0^2 + x1", r).unwrap();
        assert_eq!(f.num_terms(), 2);
        let coeffs: Vec<u64> = f.terms().map(|(_, c)| c).collect();
        assert_eq!(coeffs, vec![2, 1]);
        assert_eq!(f.to_string(), "2*x0^2 + x1");
    }

    #[test]
    fn parse_errors() {
        let r = ring(3, 2);
        assert!(matches!(
            Poly::parse("x2", r),
            Err(Error::UnknownVariable { pos: 0, .. })
        ));
        assert!(matches!(
            Poly::parse("x0 + t", r),
            Err(Error::UnknownVariable { pos: 5, .. })
        ));
        assert!(matches!(Poly::parse("x0 +", r), Err(Error::Syntax { .. })));
        assert!(matches!(Poly::parse("x0 - x1", r), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(Poly::parse("", r), Err(Error::Syntax { .. })));
        assert!(matches!(Poly::parse("x0^", r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn parse_extra_variables() {
        let r = ring(3, 1).with_extra(Extra::T);
        let f = Poly::parse("x0^4 + x0^2*t + t^2", r).unwrap();
        assert_eq!(f.extra_degree(), Some(BigUint::from(2u32)));
        assert!(Poly::parse("tau", r).is_err());
        let r2 = ring(3, 1).with_extra(Extra::Tau);
        assert_eq!(Poly::parse("tau^3", r2).unwrap().to_string(), "tau^3");
    }

    #[test]
    fn print_is_canonical() {
        let r = ring(5, 2);
        let f = Poly::parse("x1 + x0 + 3 + x0*x1 + x0^2", r).unwrap();
        assert_eq!(f.to_string(), "x0^2 + x0*x1 + x0 + x1 + 3");
        assert_eq!(Poly::parse(&f.to_string(), r).unwrap(), f);
    }

    #[test]
    fn frobenius_power_examples() {
        let c2 = cfg(2, 1);
        let r = Ring::new(&c2, 2);
        let f = Poly::parse("x0 + x1", r).unwrap();
        assert_eq!(f.frobenius_power(1, &c2).to_string(), "x0^2 + x1^2");
        assert_eq!(&f * &f, f.frobenius_power(1, &c2));

        let c3 = cfg(3, 1);
        let r3 = Ring::new(&c3, 1);
        let c = Poly::constant(r3, 2);
        assert_eq!(c.frobenius_power(4, &c3), c);
        // (2x)^9 by repeated squaring agrees with the exponent-scaling shortcut.
        let g = Poly::parse("2*x0", r3).unwrap();
        let by_squaring = g.pow_u64(9);
        assert_eq!(by_squaring.to_string(), "2*x0^9");
        assert_eq!(g.frobenius_power(2, &c3), by_squaring);
    }

    #[test]
    fn frobenius_decompose_examples() {
        let c2 = cfg(2, 1);
        let r1 = Ring::new(&c2, 1);
        let d = Poly::parse("x0^2", r1).unwrap().frobenius_decompose(1, &c2);
        assert_eq!(d.len(), 1);
        assert_eq!(d[&Monomial::from_u64s(&[0])].to_string(), "x0");

        let d = Poly::parse("x0^3", r1).unwrap().frobenius_decompose(1, &c2);
        assert_eq!(d[&Monomial::from_u64s(&[1])].to_string(), "x0");

        let r2 = Ring::new(&c2, 2);
        let f = Poly::parse("x0^3 + x0*x1^2", r2).unwrap();
        let d = f.frobenius_decompose(1, &c2);
        assert_eq!(d.len(), 1);
        let a = &d[&Monomial::from_u64s(&[1, 0])];
        assert_eq!(a.to_string(), "x0 + x1");
        // (x0 + x1)^2 * x0 == f over F_2
        let check = (a * a).mul_monomial(&Monomial::from_u64s(&[1, 0]));
        assert_eq!(check, f);
    }

    #[test]
    fn big_exponents_do_not_overflow() {
        let c = cfg(3, 1);
        let r = Ring::new(&c, 1);
        let f = Poly::var(r, 0).frobenius_power(60, &c);
        let expected = format!("x0^{}", c.q_pow(60));
        assert_eq!(f.to_string(), expected);
        assert_eq!(Poly::parse(&expected, r).unwrap(), f);
        let d = f.frobenius_decompose(60, &c);
        assert_eq!(d[&Monomial::one(1)], Poly::var(r, 0));
    }

    #[test]
    fn split_extra_round_trip() {
        let r = ring(3, 1).with_extra(Extra::T);
        let f = Poly::parse("x0^4 + x0^2*t + 2*t^2 + t^5*x0", r).unwrap();
        let parts = f.split_extra();
        assert_eq!(parts.len(), 4);
        assert_eq!(Poly::from_extra_parts(r, &parts), f);
    }

    #[test]
    fn infer_vars() {
        assert_eq!(infer_num_vars("x0^3 + x12*t"), 13);
        assert_eq!(infer_num_vars("1 + t"), 0);
        assert_eq!(infer_num_vars("tax1"), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(p: u64, n: usize, max_deg: u64, max_terms: usize) -> impl Strategy<Value = Poly> {
            prop::collection::vec(
                (prop::collection::vec(0..=max_deg, n), 0..p),
                0..=max_terms,
            )
            .prop_map(move |ts| {
                let r = Ring::new(&CharConfig::new(p, 1).unwrap(), n);
                Poly::from_terms(r, ts.into_iter().map(|(e, c)| (Monomial::from_u64s(&e), c)))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn recomposition(f in arb_poly(3, 2, 20, 6), e in 1u32..=3) {
                let c = CharConfig::new(3, 1).unwrap();
                let mut acc = Poly::zero(f.ring());
                for (u, a) in f.frobenius_decompose(e, &c) {
                    acc = &acc + &a.frobenius_power(e, &c).mul_monomial(&u);
                }
                prop_assert_eq!(acc, f);
            }

            #[test]
            fn digit_split_of_a_power(g in arb_poly(2, 2, 6, 5), e in 1u32..=3) {
                let c = CharConfig::new(2, 1).unwrap();
                let d = g.frobenius_power(e, &c).frobenius_decompose(e, &c);
                if g.is_zero() {
                    prop_assert!(d.is_empty());
                } else {
                    prop_assert_eq!(d.len(), 1);
                    prop_assert_eq!(&d[&Monomial::one(2)], &g);
                }
            }

            #[test]
            fn ring_axioms(a in arb_poly(5, 2, 3, 4), b in arb_poly(5, 2, 3, 4), c in arb_poly(5, 2, 3, 4)) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn print_parse_round_trip(f in arb_poly(7, 3, 5, 6)) {
                let s = f.to_string();
                prop_assert_eq!(Poly::parse(&s, f.ring()).unwrap(), f);
            }
        }
    }
}
