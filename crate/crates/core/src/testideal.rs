//! Test ideals of principal ideals and simple list test ideals.
//!
//! Every Frobenius root of a product `g_0 g_1^q ... g_e^(q^e)` is taken one
//! digit at a time through [`DigitRoots`], which memoizes by digit prefix so a
//! scan over the grid shares almost all of its work.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::frobenius::frobenius_root_reduced;
use crate::modgb::{Submodule, VectorR};
use crate::polyring::{CharConfig, Poly};

/// A grid point `m / q^(e+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridRational {
    pub m: BigUint,
    pub e: u32,
    pub q: u64,
}

impl GridRational {
    pub fn new(m: BigUint, e: u32, cfg: &CharConfig) -> GridRational {
        GridRational { m, e, q: cfg.q() }
    }

    /// The grid point `ceil(lambda * q^(e+1)) / q^(e+1)` at or above `lambda`.
    pub fn ceil_of(lambda: &BigRational, e: u32, cfg: &CharConfig) -> GridRational {
        GridRational::new(ceil_times(lambda, &cfg.q_pow(e + 1)), e, cfg)
    }

    pub fn denominator(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.q), self.e as usize + 1)
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.m.clone()), BigInt::from(self.denominator()))
    }
}

impl fmt::Display for GridRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// `ceil(alpha * k)` for `alpha >= 0`.
pub(crate) fn ceil_times(alpha: &BigRational, k: &BigUint) -> BigUint {
    let v = (alpha * BigRational::from_integer(BigInt::from(k.clone()))).ceil();
    v.to_integer().to_biguint().expect("non-negative")
}

/// `floor(alpha * k)` for `alpha >= 0`.
pub(crate) fn floor_times(alpha: &BigRational, k: &BigUint) -> BigUint {
    let v = (alpha * BigRational::from_integer(BigInt::from(k.clone()))).floor();
    v.to_integer().to_biguint().expect("non-negative")
}

#[cfg(test)]
pub(crate) fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn big_ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Base-`q` digits of `n`, least significant first, padded to `len`.
pub(crate) fn digits(n: &BigUint, q: u64, len: usize) -> Vec<usize> {
    let qb = BigUint::from(q);
    let mut out = Vec::with_capacity(len);
    let mut rest = n.clone();
    for _ in 0..len {
        let (d, r) = rest.div_rem(&qb);
        out.push(r.to_usize().expect("digit fits"));
        rest = d;
    }
    out
}

/// Memoized roots `(g_{d_0} g_{d_1}^q ... g_{d_{j-1}}^(q^(j-1)))^[1/q^j]` for a
/// fixed digit-indexed family `g_0..g_{q-1}` of ring elements.
pub(crate) struct DigitRoots {
    template: Submodule,
    factors: Vec<Poly>,
    cfg: CharConfig,
    memo: HashMap<(u32, BigUint), Submodule>,
}

impl DigitRoots {
    /// `template` fixes ring and Gröbner limits; it must have rank one.
    pub(crate) fn new(template: &Submodule, factors: Vec<Poly>, cfg: &CharConfig) -> DigitRoots {
        debug_assert_eq!(template.rank(), 1);
        debug_assert_eq!(factors.len() as u64, cfg.q());
        DigitRoots {
            template: template.sibling(Vec::new()),
            factors,
            cfg: *cfg,
            memo: HashMap::new(),
        }
    }

    fn unit(&self) -> Submodule {
        self.template
            .sibling(vec![VectorR::unit(self.template.ring(), 1, 0)])
    }

    /// The root at level `len` indexed by the low `len` digits of `n`.
    pub(crate) fn root(&mut self, n: &BigUint, len: u32) -> Result<Submodule> {
        let q = self.cfg.q();
        let ds = digits(n, q, len as usize);
        let mut prefix = BigUint::zero();
        let mut place = BigUint::one();
        let mut k = self.unit();
        for (j, &d) in ds.iter().enumerate() {
            prefix += &place * BigUint::from(d);
            place *= BigUint::from(q);
            let key = (j as u32 + 1, prefix.clone());
            if let Some(hit) = self.memo.get(&key) {
                k = hit.clone();
                continue;
            }
            let f = &self.factors[d];
            let next = if f.is_zero() || k.is_zero() {
                self.template.clone()
            } else {
                let scaled = k.generators().iter().map(|g| g.mul_poly(f)).collect();
                frobenius_root_reduced(&self.template.sibling(scaled), 1, &self.cfg)?
            };
            self.memo.insert(key, next.clone());
            k = next;
        }
        Ok(k)
    }
}

fn check_f(f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::InvalidInput("f must be nonzero".into()));
    }
    if f.ring().extra().is_some() {
        return Err(Error::InvalidInput("f must not involve t or tau".into()));
    }
    Ok(())
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    if alpha.is_negative() {
        return Err(Error::InvalidInput(format!("alpha = {alpha} is negative")));
    }
    Ok(())
}

fn power_family(f: &Poly, cfg: &CharConfig) -> Vec<Poly> {
    let mut out = vec![Poly::one(f.ring())];
    for _ in 1..cfg.q() {
        let next = out.last().expect("nonempty") * f;
        out.push(next);
    }
    out
}

/// `(f^k)^[1/q^e]` through the digit cache: `f^floor(k/q^e)` times the root of
/// the digit product of `k mod q^e`.
fn root_of_power(
    cache: &mut DigitRoots,
    f: &Poly,
    k: &BigUint,
    e: u32,
    cfg: &CharConfig,
) -> Result<Submodule> {
    let modulus = cfg.q_pow(e);
    let (high, low) = k.div_rem(&modulus);
    let base = cache.root(&low, e)?;
    if high.is_zero() {
        return Ok(base);
    }
    let g = f.pow(&high);
    base.sibling(base.generators().iter().map(|v| v.mul_poly(&g)).collect())
        .reduced()
}

/// `(f^ceil(alpha q^e))^[1/q^e]`, the `e`-th term of the ascending chain whose
/// union is the test ideal of `f^alpha`.
pub fn tau_f(f: &Poly, alpha: &BigRational, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    check_f(f)?;
    check_alpha(alpha)?;
    let template = Submodule::zero(f.ring(), 1);
    let mut cache = DigitRoots::new(&template, power_family(f, cfg), cfg);
    let k = ceil_times(alpha, &cfg.q_pow(e));
    root_of_power(&mut cache, f, &k, e, cfg)
}

/// Smallest `E` with `alpha * q^E` an integer, if any.
fn q_adic_exponent(alpha: &BigRational, cfg: &CharConfig) -> Option<u32> {
    let (e, rest) = q_valuation_of_denominator(alpha, cfg);
    rest.is_one().then_some(e)
}

/// Smallest `E` with `alpha * q^E` having denominator prime to `q`.
fn q_valuation_of_denominator(alpha: &BigRational, cfg: &CharConfig) -> (u32, BigUint) {
    let p = BigUint::from(cfg.p());
    let mut rest = alpha.denom().to_biguint().expect("positive denominator");
    let mut v = 0u32;
    while (&rest % &p).is_zero() {
        rest /= &p;
        v += 1;
    }
    (v.div_ceil(cfg.gamma()), rest)
}

/// Multiplicative order of `q` modulo `d` (`d` prime to `q`, `d > 1`).
fn order_mod(q: u64, d: &BigUint, cap: u32) -> Option<u32> {
    let qb = BigUint::from(q) % d;
    let mut acc = qb.clone();
    for b in 1..=cap {
        if acc.is_one() {
            return Some(b);
        }
        acc = (acc * &qb) % d;
    }
    None
}

/// Longest base-`q` period of `alpha` accepted by [`tau_f_stable`].
pub const MAX_PERIOD: u32 = 1 << 12;

/// `(f^k I)^[1/q^e]` one digit of `k` at a time; `powers[d] = f^d`.
fn root_of_scaled(powers: &[Poly], start: Submodule, k: &BigUint, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    let (high, low) = k.div_rem(&cfg.q_pow(e));
    let mut cur = start;
    for d in digits(&low, cfg.q(), e as usize) {
        if cur.is_zero() {
            return Ok(cur);
        }
        let scaled = cur.generators().iter().map(|g| g.mul_poly(&powers[d])).collect();
        cur = frobenius_root_reduced(&cur.sibling(scaled), 1, cfg)?;
    }
    if high.is_zero() || cur.is_zero() {
        return Ok(cur);
    }
    let g = powers[1].pow(&high);
    cur.sibling(cur.generators().iter().map(|v| v.mul_poly(&g)).collect())
        .reduced()
}

/// The test ideal of `f^alpha`, exactly.
///
/// If `alpha = k/q^E` the answer is `(f^k)^[1/q^E]`. Otherwise write
/// `alpha q^E = N + rho` with `rho` purely periodic of period `b` in base `q`,
/// and `P = rho (q^b - 1)`. Along `e = E + n b` the chain terms are
/// `(f^N Z_n)^[1/q^E]` with `Z_0 = (f)` and `Z_{n+1} = (f^P Z_n)^[1/q^b]`.
/// The `Z_n` ascend, so their first repeat is the limit. `e_cap` bounds the
/// number of steps.
pub fn tau_f_stable(f: &Poly, alpha: &BigRational, cfg: &CharConfig, e_cap: u32) -> Result<Submodule> {
    check_f(f)?;
    check_alpha(alpha)?;
    let template = Submodule::zero(f.ring(), 1);
    if alpha.is_zero() {
        return Ok(template.sibling(vec![VectorR::unit(f.ring(), 1, 0)]));
    }
    let powers = power_family(f, cfg);
    let unit = template.sibling(vec![VectorR::unit(f.ring(), 1, 0)]);
    if let Some(e) = q_adic_exponent(alpha, cfg) {
        let k = ceil_times(alpha, &cfg.q_pow(e));
        return root_of_scaled(&powers, unit, &k, e, cfg);
    }
    let (pre, coprime) = q_valuation_of_denominator(alpha, cfg);
    let b = order_mod(cfg.q(), &coprime, MAX_PERIOD).ok_or_else(|| {
        Error::InvalidInput(format!(
            "the base-{} period of alpha = {alpha} exceeds {MAX_PERIOD}",
            cfg.q()
        ))
    })?;
    let shifted = alpha * big_ratio(cfg.q_pow(pre), BigUint::one());
    let n = shifted.floor().to_integer().to_biguint().expect("alpha >= 0");
    let rho = &shifted - shifted.floor();
    let qb1 = cfg.q_pow(b) - BigUint::one();
    let period = (rho * big_ratio(qb1, BigUint::one()))
        .to_integer()
        .to_biguint()
        .expect("rho >= 0");
    let mut z = template.sibling(vec![VectorR::new(f.ring(), vec![f.clone()])?]);
    for _ in 0..e_cap {
        let next = root_of_scaled(&powers, z.clone(), &period, b, cfg)?;
        if next.equals(&z)? {
            return root_of_scaled(&powers, z, &n, pre, cfg);
        }
        debug_assert!(next.contains_module(&z)?);
        if next.contains_module(&unit)? {
            return root_of_scaled(&powers, next, &n, pre, cfg);
        }
        z = next;
    }
    let next = root_of_scaled(&powers, z.clone(), &period, b, cfg)?;
    Err(Error::NoStabilization {
        e_cap,
        previous: z.generator_strings(),
        last: next.generator_strings(),
    })
}

/// The simplest rational in `(lo, hi]` whose denominator has the form
/// `q^a (q^b - 1)` with `a <= a_max`, `1 <= b <= b_max`; falls back to `hi`.
///
/// Denominators are tried in ascending order and the largest numerator not
/// exceeding `hi` is taken.
pub fn snap_to_candidate(
    lo: &BigRational,
    hi: &BigRational,
    q: u64,
    a_max: u32,
    b_max: u32,
) -> BigRational {
    let qb = BigUint::from(q);
    let mut dens: Vec<BigUint> = Vec::new();
    for a in 0..=a_max {
        for b in 1..=b_max {
            let d = num_traits::pow(qb.clone(), a as usize)
                * (num_traits::pow(qb.clone(), b as usize) - BigUint::one());
            dens.push(d);
        }
    }
    dens.sort();
    dens.dedup();
    for d in dens {
        let c = floor_times(hi, &d);
        let cand = big_ratio(c, d);
        if &cand > lo {
            return cand;
        }
    }
    hi.clone()
}

/// F-jumping exponents of `f` in `(0, 1]`.
///
/// Scans `alpha = k / q^e_max`; at these points the test ideal is exactly
/// `(f^k)^[1/q^e_max]`. A strict drop between consecutive points places a
/// jump in `((k-1)/q^e_max, k/q^e_max]`, which is then snapped.
pub fn f_jumping_exponents(f: &Poly, cfg: &CharConfig, e_max: u32) -> Result<Vec<BigRational>> {
    check_f(f)?;
    if f.is_constant() {
        return Err(Error::InvalidInput("f must not be a unit".into()));
    }
    let template = Submodule::zero(f.ring(), 1);
    let mut cache = DigitRoots::new(&template, power_family(f, cfg), cfg);
    let big_q = cfg.q_pow(e_max);
    let mut previous = template.sibling(vec![VectorR::unit(f.ring(), 1, 0)]);
    let mut out = Vec::new();
    let mut k = BigUint::one();
    while k <= big_q {
        let current = root_of_power(&mut cache, f, &k, e_max, cfg)?;
        if !current.equals(&previous)? {
            let lo = big_ratio(&k - 1u32, big_q.clone());
            let hi = big_ratio(k.clone(), big_q.clone());
            out.push(snap_to_candidate(&lo, &hi, cfg.q(), e_max, e_max + 1));
        }
        previous = current;
        k += 1u32;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Simple lists

/// Jump set `S_e` together with every cumulative module of the scan.
#[derive(Clone, Debug)]
pub struct SeReport {
    pub e: u32,
    /// Strictly increasing grid points in `(0, 1)`.
    pub jumps: Vec<GridRational>,
    /// `(m / q^(e+1), tau)` for `m = 1..=q^(e+1)`.
    pub chain: Vec<(GridRational, Submodule)>,
}

impl SeReport {
    pub fn jump_values(&self) -> Vec<BigRational> {
        self.jumps.iter().map(GridRational::value).collect()
    }

    /// The cumulative module at grid index `m` (`1 <= m <= q^(e+1)`).
    pub fn tau_at(&self, m: &BigUint) -> &Submodule {
        let i = (m - 1u32).to_usize().expect("grid index fits");
        &self.chain[i].1
    }
}

/// Build an [`SeReport`] from the per-point modules `I(1), ..., I(q^(e+1))`.
pub(crate) fn cumulative_scan<F>(e: u32, cfg: &CharConfig, start: Submodule, mut point: F) -> Result<SeReport>
where
    F: FnMut(&BigUint) -> Result<Submodule>,
{
    let total = cfg.q_pow(e + 1);
    let mut acc = start;
    let mut chain: Vec<(GridRational, Submodule)> = Vec::new();
    let mut m = BigUint::one();
    while m <= total {
        let i = point(&m)?;
        acc = if i.is_zero() {
            acc
        } else if acc.is_zero() {
            i.reduced()?
        } else {
            acc.sum(&i)?
        };
        chain.push((GridRational::new(m.clone(), e, cfg), acc.clone()));
        m += 1u32;
    }
    let mut jumps = Vec::new();
    for w in chain.windows(2) {
        if !w[1].1.equals(&w[0].1)? {
            jumps.push(w[0].0.clone());
        }
    }
    Ok(SeReport { e, jumps, chain })
}

fn check_list(r: &[Poly], cfg: &CharConfig) -> Result<()> {
    if r.len() as u64 != cfg.q() {
        return Err(Error::ListLength {
            expected: cfg.q() as usize,
            found: r.len(),
        });
    }
    if let Some(first) = r.first() {
        if r.iter().any(|p| p.ring() != first.ring()) {
            return Err(Error::RingMismatch("list entries live in different rings".into()));
        }
        if first.ring().extra().is_some() {
            return Err(Error::InvalidInput("list entries must not involve t or tau".into()));
        }
    }
    Ok(())
}

/// Grid index `ceil(lambda q^(e+1))` with `lambda` moved into `(0, 1]` first.
fn grid_index(lambda: &BigRational, e: u32, cfg: &CharConfig) -> BigUint {
    let mut l = lambda - lambda.floor();
    if l.is_zero() {
        l = BigRational::one();
    }
    ceil_times(&l, &cfg.q_pow(e + 1))
}

/// `(r_{i_0} r_{i_1}^q ... r_{i_e}^(q^e))^[1/q^(e+1)]` where `i_0..i_e` are the
/// base-`q` digits of `ceil(lambda q^(e+1)) - 1`.
pub fn simple_list_i(r: &[Poly], lambda: &BigRational, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    check_list(r, cfg)?;
    let template = Submodule::zero(r[0].ring(), 1);
    let mut cache = DigitRoots::new(&template, r.to_vec(), cfg);
    let m = grid_index(lambda, e, cfg);
    cache.root(&(m - 1u32), e + 1)
}

/// The full scan of cumulative simple list test ideals at level `e`.
pub fn s_set_simple(r: &[Poly], e: u32, cfg: &CharConfig) -> Result<SeReport> {
    check_list(r, cfg)?;
    let template = Submodule::zero(r[0].ring(), 1);
    let mut cache = DigitRoots::new(&template, r.to_vec(), cfg);
    cumulative_scan(e, cfg, template, |m| cache.root(&(m - 1u32), e + 1))
}

/// Cumulative sum of [`simple_list_i`] over grid points up to `lambda`.
pub fn simple_list_tau(r: &[Poly], lambda: &BigRational, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    check_list(r, cfg)?;
    let m = grid_index(lambda, e, cfg);
    let template = Submodule::zero(r[0].ring(), 1);
    let mut cache = DigitRoots::new(&template, r.to_vec(), cfg);
    let mut acc = template;
    let mut j = BigUint::one();
    while j <= m {
        acc = acc.sum(&cache.root(&(&j - 1u32), e + 1)?)?;
        j += 1u32;
    }
    Ok(acc)
}

/// The list `(f^(q-1), ..., f, 1)`.
pub fn power_list(f: &Poly, cfg: &CharConfig) -> Vec<Poly> {
    let mut l = power_family(f, cfg);
    l.reverse();
    l
}
