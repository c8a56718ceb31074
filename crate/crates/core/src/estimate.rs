//! Rational jumping numbers from the jump sets `S_0, ..., S_{e_max}`.
//!
//! Each element of the top set is followed backwards to its nearest neighbour
//! in every lower set. The last two members of a chain share a base-`q` digit
//! prefix; an eventually periodic prefix pins down the limit exactly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::listmod::{assemble_a, h_expand_upto, s_set_from_family, MatrixList};
use crate::polyring::CharConfig;
use crate::testideal::{digits, GridRational, SeReport};

/// One backward chain and, if resolved, its limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpChain {
    /// `(e, element of S_e)` in increasing `e`.
    pub witnesses: Vec<(u32, GridRational)>,
    pub lambda: Option<BigRational>,
}

#[derive(Clone, Debug)]
pub struct JumpReport {
    pub e_max: u32,
    pub s_sets: Vec<SeReport>,
    pub chains: Vec<JumpChain>,
    /// Distinct resolved limits, ascending.
    pub jumping_numbers: Vec<BigRational>,
}

impl JumpReport {
    pub fn unresolved(&self) -> Vec<&JumpChain> {
        self.chains.iter().filter(|c| c.lambda.is_none()).collect()
    }
}

/// Index of the element of `set` nearest to `x`; ties go to the larger one.
fn nearest(set: &[GridRational], x: &BigRational) -> usize {
    let mut best = 0;
    let mut best_dist: Option<BigRational> = None;
    for (i, g) in set.iter().enumerate() {
        let d = (g.value() - x).abs();
        let better = match &best_dist {
            None => true,
            Some(bd) => d <= *bd,
        };
        if better {
            best = i;
            best_dist = Some(d);
        }
    }
    best
}

/// Chains ending at each element of `S_{e_max}`.
pub fn build_chains(s_sets: &[SeReport]) -> Vec<Vec<(u32, GridRational)>> {
    let Some(top) = s_sets.last() else {
        return Vec::new();
    };
    let mut chains = Vec::new();
    for start in &top.jumps {
        let mut chain = vec![(top.e, start.clone())];
        for lower in s_sets.iter().rev().skip(1) {
            if lower.jumps.is_empty() {
                break;
            }
            let x = chain.last().expect("nonempty").1.value();
            let i = nearest(&lower.jumps, &x);
            chain.push((lower.e, lower.jumps[i].clone()));
        }
        chain.reverse();
        chains.push(chain);
    }
    chains
}

/// Digits after the point, most significant first.
fn fraction_digits(g: &GridRational) -> Vec<usize> {
    let mut d = digits(&g.m, g.q, g.e as usize + 1);
    d.reverse();
    d
}

fn digit_value(ds: &[usize], q: u64) -> BigUint {
    ds.iter()
        .fold(BigUint::zero(), |acc, &d| acc * BigUint::from(q) + BigUint::from(d))
}

/// Limit of a chain, or `None` when no period is visible within the window.
pub fn snap_chain(chain: &[(u32, GridRational)], e_max: u32, q: u64) -> Option<BigRational> {
    if chain.len() < 2 {
        return None;
    }
    let prev = &chain[chain.len() - 2].1;
    let last = &chain[chain.len() - 1].1;
    if prev.value() == last.value() {
        return Some(last.value());
    }
    let dp = fraction_digits(prev);
    let dl = fraction_digits(last);
    let prefix: Vec<usize> = dp
        .iter()
        .zip(&dl)
        .take_while(|(a, b)| a == b)
        .map(|(a, _)| *a)
        .collect();
    let half = (e_max / 2) as usize;
    let mut choices: Vec<(usize, usize)> = Vec::new();
    for a in 0..=half {
        for b in 1..=half.max(1) {
            choices.push((a, b));
        }
    }
    choices.sort_by_key(|&(a, b)| (a + b, a));
    let qb = BigUint::from(q);
    for (a, b) in choices {
        if prefix.len() < a + 2 * b {
            continue;
        }
        if !(a..prefix.len() - b).all(|i| prefix[i] == prefix[i + b]) {
            continue;
        }
        let head = digit_value(&prefix[..a], q);
        let period = digit_value(&prefix[a..a + b], q);
        let qa = num_traits::pow(qb.clone(), a);
        let qb1 = num_traits::pow(qb.clone(), b) - BigUint::one();
        let num = head * &qb1 + period;
        let lambda = BigRational::new(BigInt::from(num), BigInt::from(qa * qb1));
        let gap = &lambda - last.value();
        let slack = BigRational::new(
            BigInt::from(num_traits::pow(qb.clone(), half)),
            BigInt::from(last.denominator()),
        );
        if gap >= BigRational::zero() && gap <= slack {
            return Some(lambda);
        }
        return None;
    }
    None
}

/// Resolve chains built from precomputed jump sets `S_0..S_{e_max}`.
pub fn estimate_from_sets(s_sets: Vec<SeReport>, q: u64) -> JumpReport {
    let e_max = s_sets.last().map_or(0, |s| s.e);
    let chains: Vec<JumpChain> = build_chains(&s_sets)
        .into_iter()
        .map(|w| {
            let lambda = snap_chain(&w, e_max, q);
            JumpChain {
                witnesses: w,
                lambda,
            }
        })
        .collect();
    let mut jumping_numbers: Vec<BigRational> =
        chains.iter().filter_map(|c| c.lambda.clone()).collect();
    jumping_numbers.sort();
    jumping_numbers.dedup();
    JumpReport {
        e_max,
        s_sets,
        chains,
        jumping_numbers,
    }
}

/// `S_e` of `list` for `e = 0..=e_max`.
pub fn s_sets_upto(list: &MatrixList, cfg: &CharConfig, e_max: u32) -> Result<Vec<SeReport>> {
    let a = assemble_a(list, cfg);
    let families = h_expand_upto(&a, e_max + 1, cfg)?;
    families
        .iter()
        .enumerate()
        .map(|(e, fam)| s_set_from_family(fam, e as u32, cfg))
        .collect()
}

/// Jump sets for `e = 0..=e_max` and the rational limits of their chains.
pub fn estimate_jumping_numbers(list: &MatrixList, cfg: &CharConfig, e_max: u32) -> Result<JumpReport> {
    if e_max < 2 {
        return Err(Error::InvalidInput("estimation needs e_max >= 2".into()));
    }
    Ok(estimate_from_sets(s_sets_upto(list, cfg, e_max)?, cfg.q()))
}
