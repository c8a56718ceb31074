//! Submodules of free modules `R^l` and a Buchberger engine for them.
//!
//! Module monomials are ordered position-over-term: a lower position index is
//! larger, and within one position the ring order decides. The leading term
//! of a vector is therefore the leading term of its first nonzero entry.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::polyring::{inv_mod, Monomial, Poly, Ring};

/// An element of `R^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorR {
    ring: Ring,
    entries: Vec<Poly>,
}

impl VectorR {
    pub fn new(ring: Ring, entries: Vec<Poly>) -> Result<VectorR> {
        if let Some(bad) = entries.iter().find(|p| p.ring() != ring) {
            return Err(Error::RingMismatch(format!(
                "entry lives in {:?}, expected {:?}",
                bad.ring(),
                ring
            )));
        }
        Ok(VectorR { ring, entries })
    }

    pub fn zero(ring: Ring, len: usize) -> VectorR {
        VectorR {
            ring,
            entries: vec![Poly::zero(ring); len],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(ring: Ring, len: usize, i: usize) -> VectorR {
        let mut v = VectorR::zero(ring, len);
        v.entries[i] = Poly::one(ring);
        v
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Poly> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// `(position, monomial, coefficient)` of the leading term.
    pub fn leading(&self) -> Option<(usize, &Monomial, u64)> {
        self.entries
            .iter()
            .enumerate()
            .find_map(|(i, p)| p.leading_term().map(|(m, c)| (i, m, c)))
    }

    pub fn scale(&self, c: u64) -> VectorR {
        VectorR {
            ring: self.ring,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly) -> VectorR {
        VectorR {
            ring: self.ring,
            entries: self.entries.iter().map(|p| p * f).collect(),
        }
    }

    pub fn add(&self, other: &VectorR) -> VectorR {
        assert_eq!(self.len(), other.len());
        VectorR {
            ring: self.ring,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorR) -> VectorR {
        assert_eq!(self.len(), other.len());
        VectorR {
            ring: self.ring,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn monic(&self) -> VectorR {
        match self.leading() {
            Some((_, _, c)) if c != 1 => self.scale(inv_mod(c, self.ring.p())),
            _ => self.clone(),
        }
    }

    /// `self += c * m * other`, skipping the first `from` entries (known zero in `other`).
    fn add_scaled_shifted(&mut self, other: &VectorR, from: usize, m: &Monomial, c: u64) {
        for (a, b) in self.entries[from..].iter_mut().zip(&other.entries[from..]) {
            if !b.is_zero() {
                a.add_scaled_shifted(b, m, c);
            }
        }
    }

    fn mul_monomial(&self, m: &Monomial) -> VectorR {
        VectorR {
            ring: self.ring,
            entries: self.entries.iter().map(|p| p.mul_monomial(m)).collect(),
        }
    }

    fn single_entry(&self) -> bool {
        self.entries.iter().filter(|p| !p.is_zero()).count() == 1
    }

    pub fn max_degree(&self) -> Option<BigUint> {
        self.entries.iter().filter_map(Poly::total_degree).max()
    }
}

impl fmt::Display for VectorR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() == 1 {
            return write!(f, "{}", self.entries[0]);
        }
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Knobs for the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    /// Largest permitted number of pending S-pairs.
    pub max_pairs: usize,
}

const BUILTIN_MAX_PAIRS: usize = 1 << 20;

thread_local! {
    static DEFAULT_MAX_PAIRS: std::cell::Cell<usize> = const { std::cell::Cell::new(BUILTIN_MAX_PAIRS) };
}

impl Default for GbLimits {
    /// The calling thread's default, see [`with_default_limits`].
    fn default() -> Self {
        GbLimits {
            max_pairs: DEFAULT_MAX_PAIRS.with(|c| c.get()),
        }
    }
}

/// Run `f` with `limits` as this thread's default for every new submodule.
pub fn with_default_limits<T>(limits: GbLimits, f: impl FnOnce() -> T) -> T {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            DEFAULT_MAX_PAIRS.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(DEFAULT_MAX_PAIRS.with(|c| c.replace(limits.max_pairs)));
    f()
}

/// A finitely generated submodule of `R^rank`.
///
/// The reduced Gröbner basis is computed on first use and cached; the cache is
/// a `OnceLock`, so a shared `Submodule` may be queried from several threads.
#[derive(Debug)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    gens: Vec<VectorR>,
    limits: GbLimits,
    basis: OnceLock<Vec<VectorR>>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Submodule {
            ring: self.ring,
            rank: self.rank,
            gens: self.gens.clone(),
            limits: self.limits,
            basis,
        }
    }
}

impl Submodule {
    pub fn new(ring: Ring, rank: usize, gens: Vec<VectorR>) -> Result<Submodule> {
        for g in &gens {
            if g.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.len(),
                });
            }
            if g.ring != ring {
                return Err(Error::RingMismatch(format!(
                    "generator lives in {:?}, expected {:?}",
                    g.ring, ring
                )));
            }
        }
        Ok(Submodule::from_parts(ring, rank, gens, GbLimits::default()))
    }

    fn from_parts(ring: Ring, rank: usize, gens: Vec<VectorR>, limits: GbLimits) -> Submodule {
        Submodule {
            ring,
            rank,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            limits,
            basis: OnceLock::new(),
        }
    }

    /// Same ring, rank and limits as `self`, with new generators.
    pub(crate) fn sibling(&self, gens: Vec<VectorR>) -> Submodule {
        Submodule::from_parts(self.ring, self.rank, gens, self.limits)
    }

    pub fn zero(ring: Ring, rank: usize) -> Submodule {
        Submodule::from_parts(ring, rank, Vec::new(), GbLimits::default())
    }

    pub fn full(ring: Ring, rank: usize) -> Submodule {
        let gens = (0..rank).map(|i| VectorR::unit(ring, rank, i)).collect();
        Submodule::from_parts(ring, rank, gens, GbLimits::default())
    }

    /// The ideal generated by `gens`, as a rank-one submodule.
    pub fn ideal(ring: Ring, gens: Vec<Poly>) -> Result<Submodule> {
        let vs = gens
            .into_iter()
            .map(|p| VectorR::new(ring, vec![p]))
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(ring, 1, vs)
    }

    pub fn with_limits(mut self, limits: GbLimits) -> Submodule {
        self.limits = limits;
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn limits(&self) -> GbLimits {
        self.limits
    }

    pub fn generators(&self) -> &[VectorR] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Largest total degree of any generator entry (`None` for the zero module).
    pub fn max_degree(&self) -> Option<BigUint> {
        self.gens.iter().filter_map(VectorR::max_degree).max()
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    /// The reduced Gröbner basis, sorted by descending leading term.
    pub fn groebner_basis(&self) -> Result<&[VectorR]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = reduced_basis(self.rank, &self.gens, self.limits)?;
        let _ = self.basis.set(b);
        Ok(self.basis.get().expect("just set"))
    }

    /// A copy whose generator list is the reduced Gröbner basis.
    pub fn reduced(&self) -> Result<Submodule> {
        let b = self.groebner_basis()?.to_vec();
        let out = self.sibling(b.clone());
        let _ = out.basis.set(b);
        Ok(out)
    }

    fn check_rank(&self, found: usize) -> Result<()> {
        if found != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        self.check_rank(other.rank)?;
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn normal_form(&self, v: &VectorR) -> Result<VectorR> {
        self.check_rank(v.len())?;
        let basis = self.groebner_basis()?;
        Ok(normal_form(v, basis, &index_by_position(self.rank, basis)))
    }

    pub fn contains(&self, v: &VectorR) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_module(&self, other: &Submodule) -> Result<bool> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(true);
        }
        let basis = self.groebner_basis()?;
        let index = index_by_position(self.rank, basis);
        Ok(other
            .gens
            .iter()
            .all(|g| normal_form(g, basis, &index).is_zero()))
    }

    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    /// `self + other`, returned in reduced form.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let limits = GbLimits {
            max_pairs: self.limits.max_pairs.min(other.limits.max_pairs),
        };
        Submodule::from_parts(self.ring, self.rank, gens, limits).reduced()
    }

    /// Embed into `R^new_rank` by appending zero coordinates.
    pub fn pad_to_rank(&self, new_rank: usize) -> Submodule {
        assert!(new_rank >= self.rank);
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = g.entries.clone();
                e.resize(new_rank, Poly::zero(self.ring));
                VectorR {
                    ring: self.ring,
                    entries: e,
                }
            })
            .collect();
        Submodule::from_parts(self.ring, new_rank, gens, self.limits)
    }
}

// ---------------------------------------------------------------------------
// Buchberger

fn index_by_position(rank: usize, basis: &[VectorR]) -> Vec<Vec<usize>> {
    let mut idx = vec![Vec::new(); rank];
    for (i, g) in basis.iter().enumerate() {
        if let Some((pos, _, _)) = g.leading() {
            idx[pos].push(i);
        }
    }
    idx
}

/// Full reduction of `v` by monic `basis`.
fn normal_form(v: &VectorR, basis: &[VectorR], index: &[Vec<usize>]) -> VectorR {
    let p = v.ring.p();
    let mut rest = v.clone();
    let mut out = VectorR::zero(v.ring, v.len());
    for (pos, candidates) in index.iter().enumerate().take(v.len()) {
        while let Some((m, c)) = rest.entries[pos].pop_leading() {
            let divisor = candidates.iter().map(|&k| &basis[k]).find(|g| {
                let (_, lm, _) = g.leading().expect("basis vectors are nonzero");
                lm.divides(&m)
            });
            match divisor {
                Some(g) => {
                    let (_, lm, _) = g.leading().expect("nonzero");
                    let shift = lm.quotient_of(&m);
                    // The leading term cancels against the popped one; skip it.
                    let mut g_tail = g.entries[pos].clone();
                    g_tail.pop_leading();
                    rest.entries[pos].add_scaled_shifted(&g_tail, &shift, p - c);
                    for k in pos + 1..v.len() {
                        if !g.entries[k].is_zero() {
                            rest.entries[k].add_scaled_shifted(&g.entries[k], &shift, p - c);
                        }
                    }
                }
                None => out.entries[pos].add_term(m, c),
            }
        }
    }
    out
}

struct Engine {
    rank: usize,
    basis: Vec<VectorR>,
    index: Vec<Vec<usize>>,
    /// Pending pairs keyed by lcm degree for the normal selection strategy.
    queue: BTreeSet<(BigUint, usize, usize)>,
    pending: HashSet<(usize, usize)>,
    limits: GbLimits,
}

impl Engine {
    fn lead(&self, i: usize) -> (usize, &Monomial) {
        let (pos, m, _) = self.basis[i].leading().expect("nonzero");
        (pos, m)
    }

    fn add(&mut self, v: VectorR) -> Result<()> {
        let v = v.monic();
        let k = self.basis.len();
        let pos = v.leading().expect("nonzero").0;
        self.basis.push(v);
        for &i in &self.index[pos] {
            let lcm = self.lead(i).1.lcm(self.lead(k).1);
            let deg = lcm.degree().clone();
            self.queue.insert((deg, i, k));
            self.pending.insert((i, k));
        }
        self.index[pos].push(k);
        if self.queue.len() > self.limits.max_pairs {
            return Err(Error::ResourceLimit {
                cap: self.limits.max_pairs,
            });
        }
        Ok(())
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }

    /// Product criterion (single-entry vectors only) and the chain criterion.
    fn skippable(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let (pos, mi) = self.lead(i);
        let mj = self.lead(j).1;
        if mi.is_coprime(mj) && self.basis[i].single_entry() && self.basis[j].single_entry() {
            return true;
        }
        self.index[pos].iter().any(|&k| {
            k != i
                && k != j
                && self.lead(k).1.divides(lcm)
                && !self.is_pending(i, k)
                && !self.is_pending(j, k)
        })
    }

    fn s_vector(&self, i: usize, j: usize, lcm: &Monomial) -> VectorR {
        let p = self.basis[i].ring.p();
        let (pos, mi) = self.lead(i);
        let mj = self.lead(j).1;
        let mut s = self.basis[i].mul_monomial(&mi.quotient_of(lcm));
        s.add_scaled_shifted(&self.basis[j], pos, &mj.quotient_of(lcm), p - 1);
        s
    }

    fn run(&mut self) -> Result<()> {
        while let Some((deg, i, j)) = self.queue.pop_first() {
            let _ = deg;
            self.pending.remove(&(i, j));
            let lcm = self.lead(i).1.lcm(self.lead(j).1);
            if self.skippable(i, j, &lcm) {
                continue;
            }
            let s = self.s_vector(i, j, &lcm);
            let r = normal_form(&s, &self.basis, &self.index);
            if !r.is_zero() {
                self.add(r)?;
            }
        }
        Ok(())
    }
}

fn reduced_basis(rank: usize, gens: &[VectorR], limits: GbLimits) -> Result<Vec<VectorR>> {
    let mut engine = Engine {
        rank,
        basis: Vec::new(),
        index: vec![Vec::new(); rank],
        queue: BTreeSet::new(),
        pending: HashSet::new(),
        limits,
    };
    for g in gens {
        let r = normal_form(g, &engine.basis, &engine.index);
        if !r.is_zero() {
            engine.add(r)?;
        }
    }
    engine.run()?;
    debug_assert_eq!(engine.index.len(), engine.rank);

    // Minimize: drop vectors whose leading term is divisible by another's.
    let basis = engine.basis;
    let mut keep: Vec<usize> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (pos, m, _) = g.leading().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            if k == i {
                return false;
            }
            let (hp, hm, _) = h.leading().expect("nonzero");
            hp == pos && hm.divides(m) && (hm != m || k < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<VectorR> = keep.into_iter().map(|i| basis[i].clone()).collect();

    // Inter-reduce: leading terms are untouched, tails become normal forms.
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<VectorR> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, h)| h.clone())
            .collect();
        let index = index_by_position(rank, &others);
        reduced.push(normal_form(g, &others, &index).monic());
    }
    reduced.sort_by(|a, b| {
        let (pa, ma, _) = a.leading().expect("nonzero");
        let (pb, mb, _) = b.leading().expect("nonzero");
        pa.cmp(&pb).then_with(|| mb.cmp(ma))
    });
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::CharConfig;

    fn ring(p: u64, n: usize) -> Ring {
        Ring::new(&CharConfig::new(p, 1).unwrap(), n)
    }

    fn ideal(r: Ring, gens: &[&str]) -> Submodule {
        Submodule::ideal(r, gens.iter().map(|g| Poly::parse(g, r).unwrap()).collect()).unwrap()
    }

    fn vector(r: Ring, entries: &[&str]) -> VectorR {
        VectorR::new(r, entries.iter().map(|g| Poly::parse(g, r).unwrap()).collect()).unwrap()
    }

    fn basis_strings(n: &Submodule) -> Vec<String> {
        n.groebner_basis()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    #[test]
    fn distinct_positions_are_already_a_basis() {
        let r = ring(3, 2);
        let n = Submodule::new(r, 2, vec![vector(r, &["x0", "0"]), vector(r, &["0", "x1"])]).unwrap();
        assert_eq!(basis_strings(&n), vec!["(x0, 0)", "(0, x1)"]);
    }

    #[test]
    fn redundant_generator_drops() {
        let r = ring(5, 2);
        assert_eq!(basis_strings(&ideal(r, &["x0", "x1", "x0 + x1"])), vec!["x0", "x1"]);
    }

    #[test]
    fn two_generator_ideal_over_f2() {
        // Frozen from a hand run of Buchberger: S(x0^2, x0*x1 + x1^2) = x0*x1^2,
        // which reduces to x1^3 by the second generator.
        let r = ring(2, 2);
        let n = ideal(r, &["x0^2", "x0*x1 + x1^2"]);
        assert_eq!(basis_strings(&n), vec!["x1^3", "x0^2", "x0*x1 + x1^2"]);
    }

    #[test]
    fn membership_examples() {
        let r = ring(2, 2);
        let n = ideal(r, &["x0^2", "x1^2"]);
        assert!(!n.contains(&vector(r, &["x0*x1"])).unwrap());
        assert!(n.contains(&vector(r, &["0"])).unwrap());
        assert!(ideal(r, &["x0"]).contains(&vector(r, &["x0^5"])).unwrap());
        assert!(matches!(
            n.contains(&vector(r, &["x0", "x1"])),
            Err(Error::RankMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn equality_examples() {
        let r = ring(3, 2);
        assert!(ideal(r, &["x0", "x0 + x1"]).equals(&ideal(r, &["x1", "x0"])).unwrap());
        assert!(!ideal(r, &["x0^2"]).equals(&ideal(r, &["x0"])).unwrap());
        let a = ideal(r, &["x0^2"]).sum(&ideal(r, &["x0^2 + x0"])).unwrap();
        assert!(a.equals(&ideal(r, &["x0"])).unwrap());
        let z = Submodule::zero(r, 1);
        assert!(a.sum(&z).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn module_with_mixed_positions() {
        // (x0, x1) and (x1, 0): the S-vector x1*(x0,x1) - x0*(x1,0) = (0, x1^2).
        let r = ring(3, 2);
        let n = Submodule::new(r, 2, vec![vector(r, &["x0", "x1"]), vector(r, &["x1", "0"])]).unwrap();
        assert!(n.contains(&vector(r, &["0", "x1^2"])).unwrap());
        assert!(!n.contains(&vector(r, &["0", "x1"])).unwrap());
        assert!(!n.contains(&vector(r, &["x0", "0"])).unwrap());
    }

    #[test]
    fn pair_cap_is_reported() {
        let r = ring(2, 2);
        let n = ideal(r, &["x0^3 + x1", "x0*x1^2 + x0", "x1^3 + x0^2"])
            .with_limits(GbLimits { max_pairs: 1 });
        assert!(matches!(n.groebner_basis(), Err(Error::ResourceLimit { cap: 1 })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_vector(p: u64, rank: usize) -> impl Strategy<Value = VectorR> {
            prop::collection::vec(
                prop::collection::vec((prop::collection::vec(0u64..=3, 2), 1..p), 0..=2),
                rank,
            )
            .prop_map(move |entries| {
                let r = ring(p, 2);
                let polys = entries
                    .into_iter()
                    .map(|ts| Poly::from_terms(r, ts.into_iter().map(|(e, c)| (Monomial::from_u64s(&e), c))))
                    .collect();
                VectorR::new(r, polys).unwrap()
            })
        }

        fn arb_module(p: u64, rank: usize) -> impl Strategy<Value = Submodule> {
            prop::collection::vec(arb_vector(p, rank), 0..=3)
                .prop_map(move |gens| Submodule::new(ring(p, 2), rank, gens).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn generators_are_members(n in arb_module(3, 2)) {
                for g in n.generators() {
                    prop_assert!(n.contains(g).unwrap());
                }
            }

            #[test]
            fn normal_form_idempotent_and_linear(n in arb_module(2, 2), a in arb_vector(2, 2), b in arb_vector(2, 2)) {
                let na = n.normal_form(&a).unwrap();
                prop_assert_eq!(n.normal_form(&na).unwrap(), na.clone());
                let nb = n.normal_form(&b).unwrap();
                prop_assert_eq!(n.normal_form(&a.add(&b)).unwrap(), na.add(&nb));
                prop_assert_eq!(n.normal_form(&a.scale(1)).unwrap(), na);
            }

            #[test]
            fn equality_is_an_equivalence(a in arb_module(3, 1), b in arb_module(3, 1)) {
                prop_assert!(a.equals(&a).unwrap());
                prop_assert_eq!(a.equals(&b).unwrap(), b.equals(&a).unwrap());
                let mut rev = a.generators().to_vec();
                rev.reverse();
                let a2 = Submodule::new(a.ring(), 1, rev).unwrap();
                prop_assert!(a.equals(&a2).unwrap());
            }

            #[test]
            fn sum_is_associative_and_commutative(a in arb_module(2, 2), b in arb_module(2, 2), c in arb_module(2, 2)) {
                let ab = a.sum(&b).unwrap();
                prop_assert!(ab.equals(&b.sum(&a).unwrap()).unwrap());
                let l = ab.sum(&c).unwrap();
                let r = a.sum(&b.sum(&c).unwrap()).unwrap();
                prop_assert!(l.equals(&r).unwrap());
                prop_assert!(ab.contains_module(&a).unwrap());
                prop_assert!(ab.contains_module(&b).unwrap());
            }
        }
    }
}
