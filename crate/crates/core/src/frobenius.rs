//! Bracket powers, Frobenius roots and the operations built from them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::modgb::{Submodule, VectorR};
use crate::polyring::{CharConfig, Monomial, Poly};

/// `N^[q^e]`: entrywise `q^e`-th powers of the generators.
pub fn bracket_power(n: &Submodule, e: u32, cfg: &CharConfig) -> Submodule {
    let k = cfg.q_pow(e);
    let gens = n
        .generators()
        .iter()
        .map(|g| {
            let entries = g.entries().iter().map(|p| p.frobenius_power_by(&k)).collect();
            VectorR::new(n.ring(), entries).expect("same ring")
        })
        .collect();
    n.sibling(gens)
}

/// The coefficient vectors `w_u` of every generator, one per basis monomial `u`.
///
/// Their span is `N^[1/q^e]`. The list is neither reduced nor irredundant.
pub fn root_generators(n: &Submodule, e: u32, cfg: &CharConfig) -> Vec<VectorR> {
    let ring = n.ring();
    let rank = n.rank();
    let mut out: Vec<VectorR> = Vec::new();
    for g in n.generators() {
        let mut by_u: BTreeMap<Monomial, Vec<Poly>> = BTreeMap::new();
        for (slot, entry) in g.entries().iter().enumerate() {
            for (u, a) in entry.frobenius_decompose(e, cfg) {
                by_u.entry(u)
                    .or_insert_with(|| vec![Poly::zero(ring); rank])[slot] = a;
            }
        }
        for (_, entries) in by_u.into_iter().rev() {
            let w = VectorR::new(ring, entries).expect("same ring");
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// `N^[1/q^e]` with an irredundant generating set.
///
/// Every returned generator is one of the raw coefficient vectors, so each has
/// total degree at most `floor(maxdeg(N) / q^e)`; no generator lies in the span
/// of the others.
pub fn frobenius_root(n: &Submodule, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    let raw = root_generators(n, e, cfg);
    let mut kept = raw;
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<VectorR> = kept
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, v)| v.clone())
            .collect();
        if n.sibling(others).contains(&kept[i])? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(n.sibling(kept))
}

/// `N^[1/q^e]` as a reduced Gröbner basis; cheaper than [`frobenius_root`]
/// when only the span matters.
pub fn frobenius_root_reduced(n: &Submodule, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    n.sibling(root_generators(n, e, cfg)).reduced()
}

/// `(N^[1/q^e])^[q^e]`, the smallest module of the form `M^[q^e]` containing `N`.
pub fn d_closure(n: &Submodule, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    let root = frobenius_root_reduced(n, e, cfg)?;
    bracket_power(&root, e, cfg).reduced()
}

/// How successive terms of the root chain compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDirection {
    Constant,
    Ascending,
    Descending,
    Neither,
}

impl ChainDirection {
    fn merge(self, step: ChainDirection) -> ChainDirection {
        use ChainDirection::*;
        match (self, step) {
            (Constant, s) | (s, Constant) => s,
            (a, b) if a == b => a,
            _ => Neither,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StableRoot {
    pub module: Submodule,
    /// First `e` with `N^[1/q^e] = N^[1/q^(e+1)]`.
    pub stable_at: u32,
    pub direction: ChainDirection,
}

pub const DEFAULT_E_CAP: u32 = 16;

/// Iterate `N_e = (N_{e-1})^[1/q]` until two consecutive terms agree.
///
/// For submodules of `R^l` with the standard structure the chain ascends; the
/// observed direction is reported rather than assumed.
pub fn stable_root(n: &Submodule, cfg: &CharConfig, e_cap: u32) -> Result<StableRoot> {
    let mut current = n.reduced()?;
    let mut direction = ChainDirection::Constant;
    for e in 0..e_cap {
        let next = frobenius_root_reduced(&current, 1, cfg)?;
        if next.equals(&current)? {
            return Ok(StableRoot {
                module: current,
                stable_at: e,
                direction,
            });
        }
        let up = next.contains_module(&current)?;
        let down = current.contains_module(&next)?;
        let step = match (up, down) {
            (true, _) => ChainDirection::Ascending,
            (false, true) => ChainDirection::Descending,
            (false, false) => ChainDirection::Neither,
        };
        direction = direction.merge(step);
        if e + 1 == e_cap {
            return Err(Error::NoStabilization {
                e_cap,
                previous: current.generator_strings(),
                last: next.generator_strings(),
            });
        }
        current = next;
    }
    Err(Error::NoStabilization {
        e_cap,
        previous: Vec::new(),
        last: current.generator_strings(),
    })
}

/// `(f_0 f_1^q ... f_e^(q^e))^[1/q^(e+1)]` as an ideal, without forming the product.
///
/// Uses `(g^q I)^[1/q] = g I^[1/q]`: with `K_0 = R` and `K_{j+1} = (f_j K_j)^[1/q]`
/// the result is `K_{e+1}`. Every intermediate ideal stays in low degree.
pub fn root_of_digit_product(
    template: &Submodule,
    factors: &[&Poly],
    cfg: &CharConfig,
) -> Result<Submodule> {
    debug_assert_eq!(template.rank(), 1);
    let ring = template.ring();
    let mut k = template.sibling(vec![VectorR::unit(ring, 1, 0)]);
    for f in factors {
        if f.is_zero() {
            return Ok(template.sibling(Vec::new()));
        }
        let scaled: Vec<VectorR> = k
            .generators()
            .iter()
            .map(|g| g.mul_poly(f))
            .collect();
        k = frobenius_root_reduced(&template.sibling(scaled), 1, cfg)?;
    }
    Ok(k)
}
