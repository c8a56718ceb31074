//! b-functions of generating matrices along `t = 0`.
//!
//! Euler eigenvalues are never computed from operators. Their candidates come
//! from the jump sets, and the roots of `b` come from the jumping numbers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::estimate::{estimate_from_sets, s_sets_upto, JumpChain, JumpReport};
use crate::listmod::{decompose_a, s_set, PolyMatrix, TMatrix};
use crate::polyring::{CharConfig, Extra, Poly};
use crate::testideal::{ceil_times, digits};

/// The `1 x 1` generator `[(f - t)^(q-1)]` of the graph of `f`.
pub fn graph_generator(f: &Poly, cfg: &CharConfig) -> Result<TMatrix> {
    if f.ring().extra().is_some() {
        return Err(Error::InvalidInput("f must not involve t or tau".into()));
    }
    let tring = f.ring().with_extra(Extra::T);
    let diff = &f.lift(Extra::T) - &Poly::extra_var(tring);
    let entry = diff.pow_u64(cfg.q() - 1);
    TMatrix::new(PolyMatrix::new(tring, vec![vec![entry]])?)
}

/// A weight `m` in `[0, q^e)`; its base-`p` digits are the `theta` eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EulerWeight {
    pub m: BigUint,
    pub e: u32,
    pub p: u64,
    pub gamma: u32,
}

impl EulerWeight {
    pub fn new(m: BigUint, e: u32, cfg: &CharConfig) -> EulerWeight {
        EulerWeight {
            m,
            e,
            p: cfg.p(),
            gamma: cfg.gamma(),
        }
    }
}

/// Digit descriptions of one weight under both eigenvalue conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaDigits {
    /// `theta_l` eigenvalue for `l = 1..=gamma e`.
    pub theta: Vec<u64>,
    /// `Theta_l = theta_l + 1` eigenvalue, mod `p`.
    pub big_theta: Vec<u64>,
    /// Digits `j_l` with `m = sum (p - 1 - j_l) p^(l-1)`.
    pub mustata_j: Vec<u64>,
    /// `Theta_l` eigenvalue read as `-j_l` mod `p`.
    pub mustata_theta: Vec<u64>,
}

impl ThetaDigits {
    pub fn conventions_agree(&self) -> bool {
        self.big_theta == self.mustata_theta
    }
}

pub fn weight_to_theta_digits(w: &EulerWeight) -> ThetaDigits {
    let p = w.p;
    let len = (w.gamma * w.e) as usize;
    let theta: Vec<u64> = digits(&w.m, p, len).into_iter().map(|d| d as u64).collect();
    let big_theta = theta.iter().map(|&i| (i + 1) % p).collect();
    let mustata_j: Vec<u64> = theta.iter().map(|&i| p - 1 - i).collect();
    let mustata_theta = mustata_j.iter().map(|&j| (p - j) % p).collect();
    ThetaDigits {
        theta,
        big_theta,
        mustata_j,
        mustata_theta,
    }
}

/// `{m : m/q^e in S_{e-1}} ∪ {0}`, a superset of the Euler weights that occur.
pub fn euler_eigenvalue_candidates(a: &TMatrix, e: u32, cfg: &CharConfig) -> Result<Vec<EulerWeight>> {
    if e == 0 {
        return Err(Error::InvalidInput("weights need e >= 1".into()));
    }
    let report = s_set(&decompose_a(a, cfg), e - 1, cfg)?;
    let mut out = vec![EulerWeight::new(BigUint::zero(), e, cfg)];
    out.extend(
        report
            .jumps
            .iter()
            .map(|g| EulerWeight::new(g.m.clone(), e, cfg)),
    );
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct BFunctionResult {
    /// Distinct roots in `(0, 1]`, ascending.
    pub roots: Vec<BigRational>,
    pub shift_n: u32,
    pub unresolved: Vec<JumpChain>,
    pub report: Option<JumpReport>,
    /// Set when some chain is unresolved: the true b-function divides this one.
    pub divides_only: bool,
    pub diagnostics: Vec<String>,
}

impl BFunctionResult {
    /// Coefficients of `prod (s - root)`, constant term first.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let mut coeffs = vec![BigRational::one()];
        for r in &self.roots {
            let mut next = vec![BigRational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        coeffs
    }

    /// `s - 1/2`, `(s - 1/2)*(s - 1)`, or `1`.
    pub fn display_polynomial(&self) -> String {
        let factors: Vec<String> = self.roots.iter().map(|r| format!("s - {r}")).collect();
        match factors.len() {
            0 => "1".to_string(),
            1 => factors[0].clone(),
            _ => factors
                .iter()
                .map(|f| format!("({f})"))
                .collect::<Vec<_>>()
                .join("*"),
        }
    }

    /// `(e, S_e values)` for every computed level.
    pub fn s_set_values(&self) -> Vec<(u32, Vec<BigRational>)> {
        self.report
            .as_ref()
            .map(|r| r.s_sets.iter().map(|s| (s.e, s.jump_values())).collect())
            .unwrap_or_default()
    }
}

fn root_of(lambda: &BigRational) -> BigRational {
    if lambda.is_one() {
        BigRational::one()
    } else {
        BigRational::one() - lambda
    }
}

/// Smallest `N` such that for every `e` in `[N, e_max]` each element `m/q^(e+1)`
/// of `S_e` lies in `(ceil(lambda q^(e+1)) - q^N, ceil(lambda q^(e+1))]` for a
/// resolved `lambda`; `e_max + 1` if none works.
fn shift_n(report: &JumpReport, cfg: &CharConfig) -> u32 {
    let e_max = report.e_max;
    'outer: for n in 0..=e_max {
        let slack = BigInt::from(cfg.q_pow(n));
        for s in report.s_sets.iter().filter(|s| s.e >= n) {
            let total = cfg.q_pow(s.e + 1);
            for g in &s.jumps {
                let m = BigInt::from(g.m.clone());
                let hit = report.jumping_numbers.iter().any(|l| {
                    let top = BigInt::from(ceil_times(l, &total));
                    &top - &slack < m && m <= top
                });
                if !hit {
                    continue 'outer;
                }
            }
        }
        return n;
    }
    e_max + 1
}

pub fn b_function(a: &TMatrix, cfg: &CharConfig, e_max: u32) -> Result<BFunctionResult> {
    if e_max < 3 {
        return Err(Error::InvalidInput("b_function needs e_max >= 3".into()));
    }
    if a.matrix().is_zero() {
        return Ok(BFunctionResult {
            roots: Vec::new(),
            shift_n: 0,
            unresolved: Vec::new(),
            report: None,
            divides_only: false,
            diagnostics: vec!["A = 0: the generated module is zero and b = 1".into()],
        });
    }
    let list = decompose_a(a, cfg);
    let report = estimate_from_sets(s_sets_upto(&list, cfg, e_max)?, cfg.q());
    let mut roots: Vec<BigRational> = report.jumping_numbers.iter().map(root_of).collect();
    roots.sort();
    roots.dedup();
    let unresolved: Vec<JumpChain> = report.unresolved().into_iter().cloned().collect();
    let mut diagnostics = Vec::new();
    if !unresolved.is_empty() {
        diagnostics.push(format!(
            "{} chain(s) without a detected period by e_max = {e_max}",
            unresolved.len()
        ));
    }
    if report.chains.is_empty() {
        diagnostics.push(format!("S_{e_max} is empty"));
    }
    let shift = shift_n(&report, cfg);
    Ok(BFunctionResult {
        roots,
        shift_n: shift,
        divides_only: !unresolved.is_empty(),
        unresolved,
        report: Some(report),
        diagnostics,
    })
}

/// Numerator and denominator as `i64` when they fit.
pub fn small_parts(r: &BigRational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;
    use crate::testideal::ratio;

    fn setup(p: u64, n: usize) -> (CharConfig, Ring) {
        let c = CharConfig::new(p, 1).unwrap();
        (c, Ring::new(&c, n))
    }

    fn tmatrix(r: Ring, rows: &[&[&str]]) -> TMatrix {
        let tr = r.with_extra(Extra::T);
        let rows: Vec<Vec<String>> = rows.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect();
        TMatrix::new(PolyMatrix::parse(tr, &rows).unwrap()).unwrap()
    }

    #[test]
    fn graph_generator_examples() {
        let (c3, r) = setup(3, 1);
        let a = graph_generator(&Poly::parse("x0^2", r).unwrap(), &c3).unwrap();
        assert_eq!(a.matrix().to_string(), "[[x0^4 + x0^2*t + t^2]]");
        let z = graph_generator(&Poly::zero(r), &c3).unwrap();
        assert_eq!(z.matrix().to_string(), "[[t^2]]");
        let (c2, r2) = setup(2, 1);
        let a = graph_generator(&Poly::parse("x0", r2).unwrap(), &c2).unwrap();
        assert_eq!(a.matrix().to_string(), "[[x0 + t]]");
        let tr = r2.with_extra(Extra::T);
        assert!(graph_generator(&Poly::parse("t", tr).unwrap(), &c2).is_err());
    }

    #[test]
    fn tame_candidates() {
        let (c3, r) = setup(3, 1);
        let a = tmatrix(r, &[&["t"]]);
        let ms = |e| -> Vec<u64> {
            euler_eigenvalue_candidates(&a, e, &c3)
                .unwrap()
                .iter()
                .map(|w| w.m.to_u64().unwrap())
                .collect()
        };
        assert_eq!(ms(1), vec![0, 1]);
        assert_eq!(ms(2), vec![0, 4]);
        let z = tmatrix(r, &[&["0"]]);
        assert_eq!(euler_eigenvalue_candidates(&z, 2, &c3).unwrap().len(), 1);
    }

    #[test]
    fn theta_digits() {
        let c3 = CharConfig::new(3, 1).unwrap();
        let d = weight_to_theta_digits(&EulerWeight::new(BigUint::from(4u32), 2, &c3));
        assert_eq!(d.theta, vec![1, 1]);
        assert_eq!(d.big_theta, vec![2, 2]);
        assert!(d.conventions_agree());
        let d = weight_to_theta_digits(&EulerWeight::new(BigUint::zero(), 2, &c3));
        assert_eq!(d.theta, vec![0, 0]);
        assert_eq!(d.big_theta, vec![1, 1]);
        let d = weight_to_theta_digits(&EulerWeight::new(BigUint::from(8u32), 2, &c3));
        assert_eq!(d.theta, vec![2, 2]);
        assert_eq!(d.big_theta, vec![0, 0]);
        // q = 4: two base-2 digits per level
        let c4 = CharConfig::new(2, 2).unwrap();
        let d = weight_to_theta_digits(&EulerWeight::new(BigUint::from(6u32), 1, &c4));
        assert_eq!(d.theta, vec![0, 1]);
        assert!(d.conventions_agree());
    }

    #[test]
    fn tame_b_function() {
        let (c3, r) = setup(3, 1);
        let b = b_function(&tmatrix(r, &[&["t"]]), &c3, 3).unwrap();
        assert_eq!(b.roots, vec![ratio(1, 2)]);
        assert_eq!(b.display_polynomial(), "s - 1/2");
        assert_eq!(b.shift_n, 1);
        assert!(!b.divides_only);
        let neg_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(b.coefficients(), vec![neg_half, BigRational::one()]);
    }

    #[test]
    fn zero_matrix_b_function() {
        let (c3, r) = setup(3, 1);
        let b = b_function(&tmatrix(r, &[&["0"]]), &c3, 3).unwrap();
        assert!(b.roots.is_empty());
        assert_eq!(b.display_polynomial(), "1");
        assert_eq!(b.diagnostics.len(), 1);
        assert!(b_function(&tmatrix(r, &[&["t"]]), &c3, 2).is_err());
    }
}
