//! Matrix lists, the generating matrix `A(t)`, its expansion into the family
//! `H^e_n(tau)`, and list test modules built from that family.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::frobenius::frobenius_root_reduced;
use crate::modgb::{Submodule, VectorR};
use crate::polyring::{CharConfig, Extra, Poly, Ring};
use crate::testideal::{ceil_times, cumulative_scan, SeReport};

/// A square matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn new(ring: Ring, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let l = rows.len();
        for row in &rows {
            if row.len() != l {
                return Err(Error::RankMismatch {
                    expected: l,
                    found: row.len(),
                });
            }
            if row.iter().any(|p| p.ring() != ring) {
                return Err(Error::RingMismatch("matrix entry in the wrong ring".into()));
            }
        }
        Ok(PolyMatrix { ring, rows })
    }

    pub fn zero(ring: Ring, l: usize) -> PolyMatrix {
        PolyMatrix {
            ring,
            rows: vec![vec![Poly::zero(ring); l]; l],
        }
    }

    pub fn identity(ring: Ring, l: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, l);
        for i in 0..l {
            m.rows[i][i] = Poly::one(ring);
        }
        m
    }

    /// Parse a row-major grid of polynomial strings.
    pub fn parse(ring: Ring, rows: &[Vec<String>]) -> Result<PolyMatrix> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| Poly::parse(s, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(ring, parsed)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Poly::is_zero)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect()
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size(), other.size());
        let l = self.size();
        let mut out = PolyMatrix::zero(self.ring, l);
        for i in 0..l {
            for k in 0..l {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..l {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] = &out.rows[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size(), other.size());
        PolyMatrix {
            ring: self.ring,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// Entrywise `q^e`-th power.
    pub fn frobenius_power(&self, e: u32, cfg: &CharConfig) -> PolyMatrix {
        let k = cfg.q_pow(e);
        self.map(|p| p.frobenius_power_by(&k))
    }

    pub fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> PolyMatrix {
        let rows: Vec<Vec<Poly>> = self.rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        let ring = rows
            .first()
            .and_then(|r| r.first())
            .map_or(self.ring, Poly::ring);
        PolyMatrix { ring, rows }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A square matrix over `R[t]`; the generating morphism `A(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMatrix {
    matrix: PolyMatrix,
    t_degree: BigUint,
}

impl TMatrix {
    pub fn new(matrix: PolyMatrix) -> Result<TMatrix> {
        if matrix.ring().extra() != Some(Extra::T) {
            return Err(Error::RingMismatch("a TMatrix lives over R[t]".into()));
        }
        let t_degree = matrix
            .rows
            .iter()
            .flatten()
            .filter_map(Poly::extra_degree)
            .max()
            .unwrap_or_default();
        Ok(TMatrix { matrix, t_degree })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    /// `deg_t A` (zero for the zero matrix).
    pub fn t_degree(&self) -> &BigUint {
        &self.t_degree
    }

    /// The pure ring `R` under `R[t]`.
    pub fn base_ring(&self) -> Ring {
        self.matrix.ring().pure()
    }

    /// `floor(d / (q - 1))`, the bound on `deg_tau H^e_n`.
    pub fn tau_bound(&self, cfg: &CharConfig) -> Result<usize> {
        (&self.t_degree / BigUint::from(cfg.q() - 1))
            .to_usize()
            .ok_or_else(|| Error::InvalidInput("t-degree too large".into()))
    }
}

/// The finitely supported family `A_{k,n}` (`0 <= n < q`) of `l x l` matrices over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixList {
    ring: Ring,
    l: usize,
    entries: BTreeMap<(BigUint, u64), PolyMatrix>,
}

impl MatrixList {
    pub fn new(ring: Ring, l: usize) -> MatrixList {
        MatrixList {
            ring: ring.pure(),
            l,
            entries: BTreeMap::new(),
        }
    }

    /// Add `m` to the entry at `(k, n)`.
    pub fn insert(&mut self, k: BigUint, n: u64, m: PolyMatrix, cfg: &CharConfig) -> Result<()> {
        if n >= cfg.q() {
            return Err(Error::InvalidInput(format!("n = {n} must be below q = {}", cfg.q())));
        }
        if m.size() != self.l {
            return Err(Error::RankMismatch {
                expected: self.l,
                found: m.size(),
            });
        }
        if m.ring() != self.ring {
            return Err(Error::RingMismatch("list matrices live over R".into()));
        }
        let key = (k, n);
        let sum = match self.entries.remove(&key) {
            Some(old) => old.add(&m),
            None => m,
        };
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<(BigUint, u64), PolyMatrix> {
        &self.entries
    }

    /// Missing indices read as the zero matrix.
    pub fn get(&self, k: &BigUint, n: u64) -> PolyMatrix {
        self.entries
            .get(&(k.clone(), n))
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zero(self.ring, self.l))
    }
}

/// `A(t) = sum_{k,n} A_{k,n} t^(kq + n)`.
pub fn assemble_a(list: &MatrixList, cfg: &CharConfig) -> TMatrix {
    let tring = list.ring.with_extra(Extra::T);
    let l = list.l;
    let q = BigUint::from(cfg.q());
    let mut parts: Vec<Vec<BTreeMap<BigUint, Poly>>> = vec![vec![BTreeMap::new(); l]; l];
    for ((k, n), m) in &list.entries {
        let v = k * &q + BigUint::from(*n);
        for (i, row) in parts.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let a = m.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let slot = cell.entry(v.clone()).or_insert_with(|| Poly::zero(list.ring));
                *slot = &*slot + a;
            }
        }
    }
    let rows = parts
        .iter()
        .map(|row| row.iter().map(|cell| Poly::from_extra_parts(tring, cell)).collect())
        .collect();
    TMatrix::new(PolyMatrix { ring: tring, rows }).expect("ring is R[t]")
}

/// Split every `t`-exponent `v = kq + n`; inverse of [`assemble_a`].
pub fn decompose_a(a: &TMatrix, cfg: &CharConfig) -> MatrixList {
    let ring = a.base_ring();
    let l = a.size();
    let q = BigUint::from(cfg.q());
    let mut list = MatrixList::new(ring, l);
    for i in 0..l {
        for j in 0..l {
            for (v, part) in a.matrix.get(i, j).split_extra() {
                let (k, n) = v.div_rem(&q);
                let mut m = PolyMatrix::zero(ring, l);
                m.rows[i][j] = part;
                list.insert(k, n.to_u64().expect("n < q"), m, cfg)
                    .expect("well-formed");
            }
        }
    }
    list
}

/// The split `A^{e-1} = sum_n H^e_n(t^(q^e)) t^n`.
#[derive(Clone, Debug)]
pub struct HFamily {
    pub e: u32,
    pub l: usize,
    /// Ring `R[tau]` of the table entries.
    pub ring: Ring,
    /// Nonzero `H^e_n` keyed by `n < q^e`.
    pub table: BTreeMap<BigUint, PolyMatrix>,
    /// `floor(d / (q - 1))` with `d = deg_t A`.
    pub tau_bound: usize,
}

impl HFamily {
    pub fn get(&self, n: &BigUint) -> PolyMatrix {
        self.table
            .get(n)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zero(self.ring, self.l))
    }

    /// Ambient rank `l (N + 1)` of the flattened modules.
    pub fn ambient_rank(&self) -> usize {
        self.l * (self.tau_bound + 1)
    }

    /// Columns of `H^e_n` flattened into `R^{l(N+1)}` at coordinate `tau_power * l + slot`.
    pub fn flattened_columns(&self, n: &BigUint) -> Vec<VectorR> {
        let Some(h) = self.table.get(n) else {
            return Vec::new();
        };
        let pure = self.ring.pure();
        let width = self.ambient_rank();
        (0..self.l)
            .map(|j| {
                let mut entries = vec![Poly::zero(pure); width];
                for slot in 0..self.l {
                    for (k, part) in h.get(slot, j).split_extra() {
                        let k = k.to_usize().expect("bounded by tau_bound");
                        entries[k * self.l + slot] = part;
                    }
                }
                VectorR::new(pure, entries).expect("pure ring")
            })
            .filter(|v| !v.is_zero())
            .collect()
    }
}

/// `A^{e-1} = A^[q^(e-1)] ... A^[q] A` for `e = 1..=e_max`, each split into an [`HFamily`].
pub fn h_expand_upto(a: &TMatrix, e_max: u32, cfg: &CharConfig) -> Result<Vec<HFamily>> {
    let mut out = Vec::new();
    let mut product = a.matrix.clone();
    for e in 1..=e_max {
        if e > 1 {
            product = a.matrix.frobenius_power(e - 1, cfg).mul(&product);
        }
        out.push(split_product(a, &product, e, cfg)?);
    }
    Ok(out)
}

/// The family `H^e_n(tau)` for one level `e >= 1`.
pub fn h_expand(a: &TMatrix, e: u32, cfg: &CharConfig) -> Result<HFamily> {
    if e == 0 {
        return Err(Error::InvalidInput("h_expand needs e >= 1".into()));
    }
    Ok(h_expand_upto(a, e, cfg)?.pop().expect("e >= 1"))
}

fn split_product(a: &TMatrix, product: &PolyMatrix, e: u32, cfg: &CharConfig) -> Result<HFamily> {
    let l = a.size();
    let pure = a.base_ring();
    let tau_ring = pure.with_extra(Extra::Tau);
    let modulus = cfg.q_pow(e);
    let tau_bound = a.tau_bound(cfg)?;

    let mut cells: BTreeMap<BigUint, Vec<Vec<BTreeMap<BigUint, Poly>>>> = BTreeMap::new();
    for i in 0..l {
        for j in 0..l {
            for (v, part) in product.get(i, j).split_extra() {
                let (k, n) = v.div_rem(&modulus);
                let grid = cells
                    .entry(n)
                    .or_insert_with(|| vec![vec![BTreeMap::new(); l]; l]);
                grid[i][j].insert(k, part);
            }
        }
    }
    let mut table = BTreeMap::new();
    for (n, grid) in cells {
        let rows = grid
            .iter()
            .map(|row| row.iter().map(|c| Poly::from_extra_parts(tau_ring, c)).collect())
            .collect();
        table.insert(n, PolyMatrix { ring: tau_ring, rows });
    }
    let fam = HFamily {
        e,
        l,
        ring: tau_ring,
        table,
        tau_bound,
    };
    validate(&fam, product, cfg)?;
    Ok(fam)
}

fn validate(fam: &HFamily, product: &PolyMatrix, cfg: &CharConfig) -> Result<()> {
    let bound = BigUint::from(fam.tau_bound);
    for (n, h) in &fam.table {
        for p in h.rows.iter().flatten() {
            if let Some(d) = p.extra_degree() {
                if d > bound {
                    return Err(Error::Internal(format!(
                        "deg_tau H^{}_{} = {} exceeds {}",
                        fam.e, n, d, bound
                    )));
                }
            }
        }
    }
    if reassemble(fam, product.ring(), cfg) != *product {
        return Err(Error::Internal(format!(
            "H^{} does not reassemble to the matrix product",
            fam.e
        )));
    }
    Ok(())
}

/// `sum_n H^e_n(t^(q^e)) t^n` over `t_ring`.
pub fn reassemble(fam: &HFamily, t_ring: Ring, cfg: &CharConfig) -> PolyMatrix {
    let modulus = cfg.q_pow(fam.e);
    let mut out = PolyMatrix::zero(t_ring, fam.l);
    for (n, h) in &fam.table {
        for i in 0..fam.l {
            for j in 0..fam.l {
                let mut parts: BTreeMap<BigUint, Poly> = BTreeMap::new();
                for (k, part) in h.get(i, j).split_extra() {
                    parts.insert(k * &modulus + n, part);
                }
                let p = Poly::from_extra_parts(t_ring, &parts);
                out.rows[i][j] = &out.rows[i][j] + &p;
            }
        }
    }
    out
}

/// Root at level `e + 1` of the columns of `H^{e+1}_{m-1}`.
fn point_module(fam: &HFamily, template: &Submodule, m: &BigUint, cfg: &CharConfig) -> Result<Submodule> {
    let cols = fam.flattened_columns(&(m - 1u32));
    if cols.is_empty() {
        return Ok(template.clone());
    }
    frobenius_root_reduced(&template.sibling(cols), fam.e, cfg)
}

/// Jump set `S_e` of the list test modules, with the whole cumulative chain.
pub fn s_set(list: &MatrixList, e: u32, cfg: &CharConfig) -> Result<SeReport> {
    let a = assemble_a(list, cfg);
    let fam = h_expand(&a, e + 1, cfg)?;
    s_set_from_family(&fam, e, cfg)
}

/// [`s_set`] for an already expanded family at level `e + 1`.
pub fn s_set_from_family(fam: &HFamily, e: u32, cfg: &CharConfig) -> Result<SeReport> {
    debug_assert_eq!(fam.e, e + 1);
    let template = Submodule::zero(fam.ring.pure(), fam.ambient_rank());
    cumulative_scan(e, cfg, template.clone(), |m| point_module(fam, &template, m, cfg))
}

/// The list test module at `lambda` (moved into `(0, 1]`) and level `e`.
pub fn list_test_module(list: &MatrixList, lambda: &BigRational, e: u32, cfg: &CharConfig) -> Result<Submodule> {
    let a = assemble_a(list, cfg);
    let fam = h_expand(&a, e + 1, cfg)?;
    let mut l = lambda - lambda.floor();
    if l.is_zero() {
        l = BigRational::one();
    }
    let m = ceil_times(&l, &cfg.q_pow(e + 1));
    let template = Submodule::zero(fam.ring.pure(), fam.ambient_rank());
    let mut acc = template.clone();
    let mut j = BigUint::one();
    while j <= m {
        let i = point_module(&fam, &template, &j, cfg)?;
        if !i.is_zero() {
            acc = acc.sum(&i)?;
        }
        j += 1u32;
    }
    Ok(acc)
}
