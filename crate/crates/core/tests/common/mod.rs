//! Oracles and generators shared by the integration tests.
//!
//! Everything here is computed by routes independent of the production code
//! paths it checks: explicit products instead of digit iteration, the
//! one-variable closed forms for monomials, and the level recursion for `H^e`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use charp::listmod::{HFamily, PolyMatrix, TMatrix};
use charp::modgb::{Submodule, VectorR};
use charp::polyring::{CharConfig, Extra, Monomial, Poly, Ring};
use charp::testideal::SeReport;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn setup(p: u64, gamma: u32, n: usize) -> (CharConfig, Ring) {
    let c = CharConfig::new(p, gamma).unwrap();
    (c, Ring::new(&c, n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn poly(r: Ring, s: &str) -> Poly {
    Poly::parse(s, r).unwrap()
}

pub fn ideal(r: Ring, gens: &[&str]) -> Submodule {
    Submodule::ideal(r, gens.iter().map(|g| poly(r, g)).collect()).unwrap()
}

pub fn tmatrix(r: Ring, rows: &[&[&str]]) -> TMatrix {
    let tr = r.with_extra(Extra::T);
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect();
    TMatrix::new(PolyMatrix::parse(tr, &rows).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// Random inputs

pub fn random_poly(rng: &mut ChaCha8Rng, r: Ring, max_deg: u64, max_terms: usize) -> Poly {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n).map(|_| {
        let mut left = max_deg;
        let exps: Vec<u64> = (0..r.arity())
            .map(|_| {
                let e = rng.gen_range(0..=left);
                left -= e;
                e
            })
            .collect();
        (Monomial::from_u64s(&exps), rng.gen_range(1..r.p()))
    });
    Poly::from_terms(r, terms.collect::<Vec<_>>())
}

pub fn random_submodule(rng: &mut ChaCha8Rng, r: Ring, rank: usize, max_gens: usize, max_deg: u64) -> Submodule {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k)
        .map(|_| {
            let entries = (0..rank).map(|_| random_poly(rng, r, max_deg, 2)).collect();
            VectorR::new(r, entries).unwrap()
        })
        .collect();
    Submodule::new(r, rank, gens).unwrap()
}

pub fn random_tmatrix(rng: &mut ChaCha8Rng, r: Ring, l: usize, max_tdeg: u64, max_xdeg: u64) -> TMatrix {
    let tr = r.with_extra(Extra::T);
    let rows = (0..l)
        .map(|_| {
            (0..l)
                .map(|_| {
                    let k = rng.gen_range(0..=2);
                    let terms: Vec<(Monomial, u64)> = (0..k)
                        .map(|_| {
                            let mut exps: Vec<u64> =
                                (0..r.nvars()).map(|_| rng.gen_range(0..=max_xdeg)).collect();
                            exps.push(rng.gen_range(0..=max_tdeg));
                            (Monomial::from_u64s(&exps), rng.gen_range(1..r.p()))
                        })
                        .collect();
                    Poly::from_terms(tr, terms)
                })
                .collect()
        })
        .collect();
    TMatrix::new(PolyMatrix::new(tr, rows).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// Closed forms

/// `(x^a)^[1/q^e] = (x^floor(a / q^e))` in one variable.
pub fn monomial_root_exponent(a: &BigUint, q_e: &BigUint) -> BigUint {
    a / q_e
}

/// Test ideal of `x^a` at `alpha`: `(x^floor(a alpha))`.
pub fn monomial_tau_exponent(a: u64, alpha: &BigRational) -> BigUint {
    (alpha * BigRational::from_integer(BigInt::from(a)))
        .floor()
        .to_integer()
        .to_biguint()
        .unwrap()
}

/// F-jumping exponents of `x^a` in `(0, 1]`: `{k / a}`.
pub fn monomial_jumps(a: i64) -> Vec<BigRational> {
    (1..=a).map(|k| rat(k, a)).collect()
}

// ---------------------------------------------------------------------------
// H expansion oracles

fn tau_coeff(p: &Poly, k: &BigUint, pure: Ring) -> Poly {
    p.split_extra().remove(k).unwrap_or_else(|| Poly::zero(pure))
}

fn coeff_matrix(m: &PolyMatrix, k: &BigUint, pure: Ring) -> PolyMatrix {
    let l = m.size();
    let rows = (0..l)
        .map(|i| (0..l).map(|j| tau_coeff(m.get(i, j), k, pure)).collect())
        .collect();
    PolyMatrix::new(pure, rows).unwrap()
}

fn lift_tau(m: &PolyMatrix, tau_ring: Ring) -> PolyMatrix {
    let l = m.size();
    let rows = (0..l)
        .map(|i| (0..l).map(|j| m.get(i, j).lift(Extra::Tau)).collect())
        .collect();
    PolyMatrix::new(tau_ring, rows).unwrap()
}

fn scale_tau(m: &PolyMatrix, k: u64, tau_ring: Ring) -> PolyMatrix {
    let shift = Poly::extra_var(tau_ring).pow_u64(k);
    let l = m.size();
    let rows = (0..l)
        .map(|i| (0..l).map(|j| m.get(i, j) * &shift).collect())
        .collect();
    PolyMatrix::new(tau_ring, rows).unwrap()
}

/// `H^e` from `H^{e-1}` and `H^1` through
/// `H^e_{beta + j0 q^(e-1)} = sum_{j1, n} (H^1_n)^[q^(e-1)] B_{j0 + j1 q - n, beta} tau^j1`
/// where `H^{e-1}_beta = sum_k B_{k,beta} tau^k` and the Frobenius power acts on
/// coefficients only.
pub fn recursion_star(h1: &HFamily, prev: &HFamily, cfg: &CharConfig) -> BTreeMap<BigUint, PolyMatrix> {
    let e = prev.e + 1;
    let q = cfg.q();
    let l = h1.l;
    let tau_ring = h1.ring;
    let pure = tau_ring.pure();
    let powered: BTreeMap<u64, PolyMatrix> = (0..q)
        .map(|n| {
            let h = h1.get(&BigUint::from(n));
            let rows = (0..l)
                .map(|i| {
                    (0..l)
                        .map(|j| {
                            let parts: BTreeMap<BigUint, Poly> = h
                                .get(i, j)
                                .split_extra()
                                .into_iter()
                                .map(|(k, c)| (k, c.frobenius_power(e - 1, cfg)))
                                .collect();
                            Poly::from_extra_parts(tau_ring, &parts)
                        })
                        .collect()
                })
                .collect();
            (n, PolyMatrix::new(tau_ring, rows).unwrap())
        })
        .collect();
    let big = cfg.q_pow(e - 1).to_u64().unwrap();
    let max_k = prev.tau_bound as u64;
    let mut out = BTreeMap::new();
    for beta in 0..big {
        let hb = prev.get(&BigUint::from(beta));
        for j0 in 0..q {
            let mut acc = PolyMatrix::zero(tau_ring, l);
            for j1 in 0..=(max_k + q) / q + 1 {
                for n in 0..q {
                    let idx = j0 as i64 + (j1 * q) as i64 - n as i64;
                    if idx < 0 || idx as u64 > max_k {
                        continue;
                    }
                    let b = coeff_matrix(&hb, &BigUint::from(idx as u64), pure);
                    if b.is_zero() {
                        continue;
                    }
                    let term = powered[&n].mul(&scale_tau(&lift_tau(&b, tau_ring), j1, tau_ring));
                    acc = acc.add(&term);
                }
            }
            if !acc.is_zero() {
                out.insert(BigUint::from(beta + j0 * big), acc);
            }
        }
    }
    out
}

/// `A^[q^(e-1)] ... A^[q] A` by explicit products of entrywise powers.
pub fn iterated_product(a: &TMatrix, e: u32, cfg: &CharConfig) -> PolyMatrix {
    let mut prod = a.matrix().clone();
    for i in 1..e {
        let k = cfg.q_pow(i);
        let powered = a.matrix().map(|p| p.pow(&k));
        prod = powered.mul(&prod);
    }
    prod
}

/// `sum_n H^e_n(t^(q^e)) t^n`, rebuilt term by term.
pub fn reassemble_oracle(fam: &HFamily, cfg: &CharConfig) -> PolyMatrix {
    let t_ring = fam.ring.pure().with_extra(Extra::T);
    let qe = cfg.q_pow(fam.e);
    let t = Poly::extra_var(t_ring);
    let mut out = PolyMatrix::zero(t_ring, fam.l);
    for (n, h) in &fam.table {
        let rows = (0..fam.l)
            .map(|i| {
                (0..fam.l)
                    .map(|j| {
                        let mut acc = Poly::zero(t_ring);
                        for (k, c) in h.get(i, j).split_extra() {
                            let shift = t.pow(&(&k * &qe + n));
                            acc = &acc + &(&c.lift(Extra::T) * &shift);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        out = out.add(&PolyMatrix::new(t_ring, rows).unwrap());
    }
    out
}

// ---------------------------------------------------------------------------
// Simple list oracle

/// `(r_{i_0} r_{i_1}^q ... r_{i_e}^(q^e))^[1/q^(e+1)]` with the product formed explicitly.
pub fn direct_simple_i(r: &[Poly], m: u64, e: u32, cfg: &CharConfig) -> Submodule {
    let q = cfg.q();
    let mut rest = m - 1;
    let mut prod = Poly::one(r[0].ring());
    for j in 0..=e {
        let d = (rest % q) as usize;
        rest /= q;
        prod = &prod * &r[d].frobenius_power(j, cfg);
    }
    let n = Submodule::ideal(r[0].ring(), vec![prod]).unwrap();
    charp::frobenius::frobenius_root(&n, e + 1, cfg).unwrap()
}

// ---------------------------------------------------------------------------
// Structural properties of jump sets

/// For `x = M / q^(e+1)` in `S_e` with `q^e` not dividing `M`, `frac(q x)` lies in `S_{e-1}`.
pub fn shift_property(sets: &[SeReport]) -> Result<(), String> {
    for pair in sets.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        assert_eq!(lower.e + 1, upper.e);
        let qe = BigUint::from(upper.jumps.first().map_or(2, |g| g.q)).pow(upper.e);
        let lower_vals = lower.jump_values();
        for g in &upper.jumps {
            if (&g.m % &qe).is_zero() {
                continue;
            }
            let reduced = BigRational::new(
                BigInt::from(&g.m % &qe),
                BigInt::from(qe.clone()),
            );
            if !lower_vals.contains(&reduced) {
                return Err(format!(
                    "{} in S_{} but {} not in S_{}",
                    g, upper.e, reduced, lower.e
                ));
            }
        }
    }
    Ok(())
}

/// `tau(lambda, e + 1) ⊆ tau(lambda, e)` at every grid point of level `e`.
pub fn chain_in_e(sets: &[SeReport], q: u64) -> Result<(), String> {
    for pair in sets.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        for (i, (g, t_low)) in lower.chain.iter().enumerate() {
            let m_up = (i + 1) * q as usize;
            let (g_up, t_up) = &upper.chain[m_up - 1];
            assert_eq!(g.value(), g_up.value());
            if !t_low.contains_module(t_up).unwrap() {
                return Err(format!("tau({}) grows from e = {} to e = {}", g, lower.e, upper.e));
            }
        }
    }
    Ok(())
}
