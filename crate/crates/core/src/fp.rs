//! Brick sets, adjacency matrices and Frobenius-Perron dimensions over a
//! catalog of indecomposables.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use petgraph::graph::UnGraph;
use rand::Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::ar::{hom_path_graph, tau, tau_inverse, topological_order, IndecomposableCatalog, OrderOrCycle};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::quiver::{Path, Relation};
use crate::repr::{hom_dim, hom_space, stable_hom_dims, ModuleMorphism, Representation, Resolution};
use crate::spectral::{default_tolerance, spectral_radius, SpectralMethod, SpectralValue};

pub const DEFAULT_MMAX: usize = 4;

/// `E(m) = Ext^m(-, -)` or `TAU = Hom(-, τ-)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdjacencyAssignment {
    E(usize),
    Tau,
}

impl fmt::Display for AdjacencyAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjacencyAssignment::E(m) => write!(f, "E{m}"),
            AdjacencyAssignment::Tau => write!(f, "TAU"),
        }
    }
}

impl Serialize for AdjacencyAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Adjacency matrix of explicitly given modules; no catalog needed.
pub fn adjacency_matrix_modules<F: Field>(
    alg: &Algebra<F>,
    modules: &[Representation<F>],
    zeta: AdjacencyAssignment,
) -> Result<Vec<Vec<usize>>> {
    if modules.is_empty() {
        return Err(Error::EmptyBrickSet);
    }
    let q = alg.quiver();
    match zeta {
        AdjacencyAssignment::E(m) => modules
            .iter()
            .map(|x| {
                let res = Resolution::new(alg, x, m);
                modules.iter().map(|y| res.ext_dim(q, m, y)).collect()
            })
            .collect(),
        AdjacencyAssignment::Tau => {
            let taus: Vec<_> = modules.iter().map(|y| tau(alg, y)).collect();
            Ok(modules
                .iter()
                .map(|x| taus.iter().map(|t| hom_dim(q, x, t)).collect())
                .collect())
        }
    }
}

pub fn counts_to_matrix(rows: &[Vec<usize>]) -> Matrix<Rational> {
    Matrix::from_fn(rows.len(), rows.len(), |r, c| Rational::integer(rows[r][c] as i64))
}

/// Catalog indices of pairwise hom-orthogonal bricks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrickSet {
    members: Vec<usize>,
}

impl BrickSet {
    pub fn new<F: Field>(ctx: &FpContext<'_, F>, members: Vec<usize>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyBrickSet);
        }
        for (a, &i) in members.iter().enumerate() {
            if i >= ctx.catalog.len() {
                return Err(Error::BadIndexSubset(format!("{i} is not a catalog index")));
            }
            for (b, &j) in members.iter().enumerate() {
                let expected = usize::from(a == b);
                if ctx.hom[i][j] != expected {
                    return Err(Error::Invalid(format!("entries {i} and {j} do not form a brick set")));
                }
            }
        }
        Ok(BrickSet { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A catalog together with cached homs, resolutions and translates.
pub struct FpContext<'a, F: Field> {
    pub alg: &'a Algebra<F>,
    pub op: &'a Algebra<F>,
    pub catalog: &'a IndecomposableCatalog<F>,
    pub mmax: usize,
    hom: Vec<Vec<usize>>,
    resolutions: Vec<Resolution<F>>,
    taus: Vec<Representation<F>>,
    ext_cache: RefCell<HashMap<(usize, usize, usize), usize>>,
}

impl<'a, F: Field> FpContext<'a, F> {
    pub fn new(alg: &'a Algebra<F>, op: &'a Algebra<F>, catalog: &'a IndecomposableCatalog<F>, mmax: usize) -> Self {
        let q = alg.quiver();
        let mods = catalog.modules();
        let hom = mods
            .iter()
            .map(|x| mods.iter().map(|y| hom_dim(q, x, y)).collect())
            .collect();
        let resolutions = mods.iter().map(|x| Resolution::new(alg, x, mmax.max(1))).collect();
        let taus = mods.iter().map(|x| tau(alg, x)).collect();
        FpContext {
            alg,
            op,
            catalog,
            mmax,
            hom,
            resolutions,
            taus,
            ext_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom
    }

    pub fn tau_of(&self, i: usize) -> &Representation<F> {
        &self.taus[i]
    }

    /// `dim Ext^m(X_i, X_j)` for `m <= mmax`.
    pub fn ext(&self, m: usize, i: usize, j: usize) -> Result<usize> {
        if m == 0 {
            return Ok(self.hom[i][j]);
        }
        if let Some(&v) = self.ext_cache.borrow().get(&(m, i, j)) {
            return Ok(v);
        }
        let v = self.resolutions[i].ext_dim(self.alg.quiver(), m, self.catalog.module(j))?;
        self.ext_cache.borrow_mut().insert((m, i, j), v);
        Ok(v)
    }

    pub fn adjacency_entry(&self, zeta: AdjacencyAssignment, i: usize, j: usize) -> Result<usize> {
        match zeta {
            AdjacencyAssignment::E(m) => self.ext(m, i, j),
            AdjacencyAssignment::Tau => Ok(hom_dim(self.alg.quiver(), self.catalog.module(i), &self.taus[j])),
        }
    }

    pub fn adjacency_matrix(&self, phi: &[usize], zeta: AdjacencyAssignment) -> Result<Vec<Vec<usize>>> {
        phi.iter()
            .map(|&i| phi.iter().map(|&j| self.adjacency_entry(zeta, i, j)).collect())
            .collect()
    }

    pub fn bricks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.hom[i][i] == 1).collect()
    }

    /// Maximal brick sets among the catalog entries, complete or not.
    pub fn brick_cliques(&self) -> Vec<Vec<usize>> {
        let bricks = self.bricks();
        let adj: Vec<Vec<bool>> = bricks
            .iter()
            .map(|&i| {
                bricks
                    .iter()
                    .map(|&j| i != j && self.hom[i][j] == 0 && self.hom[j][i] == 0)
                    .collect()
            })
            .collect();
        let mut out: Vec<Vec<usize>> = maximal_cliques(&adj)
            .into_iter()
            .map(|c| c.into_iter().map(|k| bricks[k]).collect())
            .collect();
        out.sort();
        out
    }
}

/// Maximal cliques (Bron–Kerbosch with pivoting), each sorted, in
/// lexicographic order.
pub fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let mut g = UnGraph::<(), ()>::with_capacity(adj.len(), 0);
    let nodes: Vec<_> = (0..adj.len()).map(|_| g.add_node(())).collect();
    for i in 0..adj.len() {
        for j in i + 1..adj.len() {
            if adj[i][j] {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut out: Vec<Vec<usize>> = petgraph::algo::maximal_cliques(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .filter(|c| !c.is_empty())
        .collect();
    out.sort();
    out
}

pub fn enumerate_brick_sets<F: Field>(ctx: &FpContext<'_, F>) -> Result<Vec<BrickSet>> {
    ctx.catalog.require_complete()?;
    Ok(ctx
        .brick_cliques()
        .into_iter()
        .map(|members| BrickSet { members })
        .collect())
}

pub fn b_height<F: Field>(ctx: &FpContext<'_, F>) -> usize {
    ctx.brick_cliques().iter().map(Vec::len).max().unwrap_or(0)
}

/// All `n`-element subsets of `0..k` in lexicographic order.
pub fn combinations(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > k {
        return out;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..n).rev().find(|&i| idx[i] != i + k - n) else {
            return out;
        };
        idx[pos] += 1;
        for i in pos + 1..n {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

fn principal(rows: &[Vec<usize>], subset: &[usize]) -> Vec<Vec<usize>> {
    subset
        .iter()
        .map(|&i| subset.iter().map(|&j| rows[i][j]).collect())
        .collect()
}

fn strictly_greater(a: &SpectralValue, b: &SpectralValue) -> bool {
    a.lo() > b.hi()
}

/// Spectral radii of one clique matrix: the full radius and, per size
/// `n <= nmax`, the largest principal radius with the first subset attaining it.
#[derive(Clone, Debug)]
struct CliqueSpectra {
    full: SpectralValue,
    per_n: Vec<(SpectralValue, Vec<usize>)>,
}

fn clique_spectra(rows: &[Vec<usize>], nmax: usize, tol: &Rational) -> Result<CliqueSpectra> {
    let full = spectral_radius(&counts_to_matrix(rows), tol)?.value;
    let k = rows.len();
    let mut per_n = Vec::new();
    for n in 1..=nmax.min(k) {
        if full == SpectralValue::Zero {
            per_n.push((SpectralValue::Zero, (0..n).collect()));
            continue;
        }
        let mut best: Option<(SpectralValue, Vec<usize>)> = None;
        for s in combinations(k, n) {
            let v = spectral_radius(&counts_to_matrix(&principal(rows, &s)), tol)?.value;
            best = match best {
                None => Some((v, s)),
                Some((b, bs)) if strictly_greater(&v, &b) => {
                    let _ = bs;
                    Some((v, s))
                }
                Some((b, bs)) => Some((b.max(&v), bs)),
            };
        }
        per_n.push(best.expect("n <= k"));
    }
    Ok(CliqueSpectra { full, per_n })
}

fn all_clique_spectra(matrices: &[Vec<Vec<usize>>], nmax: usize, tol: &Rational, jobs: usize) -> Result<Vec<CliqueSpectra>> {
    if jobs <= 1 || matrices.len() < 2 {
        return matrices.iter().map(|m| clique_spectra(m, nmax, tol)).collect();
    }
    let chunk = matrices.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = matrices
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|m| clique_spectra(m, nmax, tol)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueMethod {
    ExactEnumeration,
    WitnessLowerBound,
    TheoremVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpValue {
    pub value: SpectralValue,
    pub method: ValueMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub m: usize,
    pub n: usize,
    pub value: SpectralValue,
    pub method: ValueMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub zeta: AdjacencyAssignment,
    pub entries: Vec<usize>,
    pub bricks: Vec<Vec<usize>>,
    pub matrix: Vec<Vec<usize>>,
    pub rho: SpectralValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdictSummary {
    pub value: u8,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpReport {
    pub algebra: String,
    pub field: String,
    pub complete: bool,
    pub catalog_size: usize,
    pub b_height: usize,
    pub fpd: FpValue,
    pub fpd_tau: FpValue,
    pub table: Vec<TableEntry>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<TheoremVerdictSummary>,
    pub notes: Vec<String>,
}

impl FpReport {
    pub fn value(&self, m: usize, n: usize) -> Option<&SpectralValue> {
        self.table.iter().find(|e| e.m == m && e.n == n).map(|e| &e.value)
    }

    /// `fpd(E^m)`: the largest entry of row `m`.
    pub fn fpd_row(&self, m: usize) -> Option<SpectralValue> {
        self.table
            .iter()
            .filter(|e| e.m == m)
            .map(|e| e.value.clone())
            .reduce(|a, b| a.max(&b))
    }

    pub fn witness(&self, zeta: AdjacencyAssignment) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.zeta == zeta)
    }

    /// Plain-text summary table.
    pub fn render(&self) -> String {
        let mut out = format!(
            "algebra {} over {}: {} indecomposables ({}), b-height {}\n",
            self.algebra,
            self.field,
            self.catalog_size,
            if self.complete { "complete" } else { "incomplete" },
            self.b_height
        );
        let ns: Vec<usize> = {
            let mut v: Vec<usize> = self.table.iter().map(|e| e.n).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let ms: Vec<usize> = {
            let mut v: Vec<usize> = self.table.iter().map(|e| e.m).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        out.push_str(&format!("{:>6}", "m\\n"));
        for n in &ns {
            out.push_str(&format!("{n:>8}"));
        }
        out.push('\n');
        for m in ms {
            out.push_str(&format!("{:>6}", format!("E{m}")));
            for &n in &ns {
                let cell = self.value(m, n).map(|v| v.to_string()).unwrap_or_default();
                out.push_str(&format!("{cell:>8}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("fpd(E1) = {} [{}]\n", self.fpd.value, method_name(self.fpd.method)));
        out.push_str(&format!("fpd(TAU) = {} [{}]\n", self.fpd_tau.value, method_name(self.fpd_tau.method)));
        for w in &self.witnesses {
            out.push_str(&format!("witness {} on {:?}: {:?}, rho = {}\n", w.zeta, w.bricks, w.matrix, w.rho));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn method_name(m: ValueMethod) -> &'static str {
    match m {
        ValueMethod::ExactEnumeration => "exact-enumeration",
        ValueMethod::WitnessLowerBound => "witness-lower-bound",
        ValueMethod::TheoremVerdict => "theorem-verdict",
    }
}

#[derive(Clone, Debug)]
pub struct FpConfig {
    pub mmax: usize,
    pub nmax: Option<usize>,
    pub tol: Rational,
    pub jobs: usize,
}

impl Default for FpConfig {
    fn default() -> Self {
        FpConfig {
            mmax: DEFAULT_MMAX,
            nmax: None,
            tol: default_tolerance(),
            jobs: 1,
        }
    }
}

/// `fpd^n(ζ)` for one assignment, with the first subset attaining it.
pub struct FpdRow {
    pub per_n: Vec<(SpectralValue, Vec<usize>)>,
    pub total: SpectralValue,
    pub total_witness: Vec<usize>,
}

pub fn fpd_row<F: Field>(ctx: &FpContext<'_, F>, zeta: AdjacencyAssignment, config: &FpConfig) -> Result<FpdRow> {
    let cliques = ctx.brick_cliques();
    let height = cliques.iter().map(Vec::len).max().unwrap_or(0);
    let nmax = config.nmax.unwrap_or(height).min(height);
    let matrices: Vec<Vec<Vec<usize>>> = cliques
        .iter()
        .map(|c| ctx.adjacency_matrix(c, zeta))
        .collect::<Result<_>>()?;
    let spectra = all_clique_spectra(&matrices, nmax, &config.tol, config.jobs)?;
    let mut per_n: Vec<Option<(SpectralValue, Vec<usize>)>> = vec![None; nmax];
    let mut total: Option<(SpectralValue, Vec<usize>)> = None;
    for (c, s) in cliques.iter().zip(&spectra) {
        for (k, (v, sub)) in s.per_n.iter().enumerate() {
            let members: Vec<usize> = sub.iter().map(|&l| c[l]).collect();
            per_n[k] = match per_n[k].take() {
                None => Some((v.clone(), members)),
                Some((b, _)) if strictly_greater(v, &b) => Some((v.clone(), members)),
                Some((b, bm)) => Some((b.max(v), bm)),
            };
        }
        total = match total.take() {
            None => Some((s.full.clone(), c.clone())),
            Some((b, _)) if strictly_greater(&s.full, &b) => Some((s.full.clone(), c.clone())),
            Some((b, bm)) => Some((b.max(&s.full), bm)),
        };
    }
    let per_n: Vec<(SpectralValue, Vec<usize>)> = per_n.into_iter().map(|x| x.expect("n <= height")).collect();
    let (total, mut total_witness) = total.unwrap_or((SpectralValue::Zero, Vec::new()));
    // smallest brick set attaining the supremum
    if let Some((_, w)) = per_n.iter().find(|(v, _)| *v == total) {
        total_witness = w.clone();
    }
    Ok(FpdRow {
        per_n,
        total,
        total_witness,
    })
}

pub fn fpd_n<F: Field>(ctx: &FpContext<'_, F>, n: usize, zeta: AdjacencyAssignment, tol: &Rational) -> Result<SpectralValue> {
    ctx.catalog.require_complete()?;
    let row = fpd_row(
        ctx,
        zeta,
        &FpConfig {
            nmax: Some(n),
            tol: tol.clone(),
            ..FpConfig::default()
        },
    )?;
    Ok(row.per_n.get(n.wrapping_sub(1)).map(|(v, _)| v.clone()).unwrap_or(SpectralValue::Zero))
}

pub fn fpd<F: Field>(ctx: &FpContext<'_, F>, zeta: AdjacencyAssignment, tol: &Rational) -> Result<SpectralValue> {
    ctx.catalog.require_complete()?;
    let row = fpd_row(
        ctx,
        zeta,
        &FpConfig {
            nmax: Some(0),
            tol: tol.clone(),
            ..FpConfig::default()
        },
    )?;
    Ok(row.total)
}

/// The table `fpd^n(E^m)` for `0 <= m <= mmax`, `1 <= n <= nmax`, plus
/// `fpd(E1)` and `fpd(TAU)`. Incomplete catalogs give lower bounds.
pub fn fp_theory_table<F: Field>(ctx: &FpContext<'_, F>, config: &FpConfig) -> Result<FpReport> {
    let complete = ctx.catalog.is_complete();
    let method = if complete {
        ValueMethod::ExactEnumeration
    } else {
        ValueMethod::WitnessLowerBound
    };
    let mut table = Vec::new();
    let mut witnesses = Vec::new();
    let mut fpd_e1 = SpectralValue::Zero;
    let make_witness = |zeta, entries: &[usize], rho: &SpectralValue| -> Result<Witness> {
        Ok(Witness {
            zeta,
            entries: entries.to_vec(),
            bricks: entries.iter().map(|&i| ctx.catalog.module(i).dims().to_vec()).collect(),
            matrix: ctx.adjacency_matrix(entries, zeta)?,
            rho: rho.clone(),
        })
    };
    for m in 0..=config.mmax {
        let zeta = AdjacencyAssignment::E(m);
        let row = fpd_row(ctx, zeta, config)?;
        for (k, (v, _)) in row.per_n.iter().enumerate() {
            table.push(TableEntry {
                m,
                n: k + 1,
                value: v.clone(),
                method,
            });
        }
        if m == 1 {
            fpd_e1 = row.total.clone();
        }
        if m >= 1 && !row.total_witness.is_empty() && (m == 1 || row.total != SpectralValue::Zero) {
            witnesses.push(make_witness(zeta, &row.total_witness, &row.total)?);
        }
    }
    if config.mmax == 0 {
        fpd_e1 = fpd_row(ctx, AdjacencyAssignment::E(1), config)?.total;
    }
    let tau_row = fpd_row(ctx, AdjacencyAssignment::Tau, config)?;
    if !tau_row.total_witness.is_empty() && tau_row.total != SpectralValue::Zero {
        witnesses.push(make_witness(AdjacencyAssignment::Tau, &tau_row.total_witness, &tau_row.total)?);
    }
    let mut notes = ctx.catalog.warnings.clone();
    if !complete {
        notes.push(
            "catalog incomplete: values are lower bounds from the brick sets found; only theorem verdicts can give exact values"
                .into(),
        );
    }
    Ok(FpReport {
        algebra: ctx.alg.name().to_string(),
        field: F::field_name(),
        complete,
        catalog_size: ctx.len(),
        b_height: b_height(ctx),
        fpd: FpValue { value: fpd_e1, method },
        fpd_tau: FpValue {
            value: tau_row.total,
            method,
        },
        table,
        witnesses,
        verdict: None,
        notes,
    })
}

/// One named check with its violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckItem {
    pub fn new(name: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn violation_count(&self) -> usize {
        self.items.iter().map(|i| i.violations.len()).sum()
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn render(&self) -> String {
        self.items
            .iter()
            .map(|i| {
                let mut s = format!(
                    "{:<4} {} ({} checked, {} violations)\n",
                    if i.passed() { "ok" } else { "FAIL" },
                    i.name,
                    i.checked,
                    i.violations.len()
                );
                for v in i.violations.iter().take(10) {
                    s.push_str(&format!("     {v}\n"));
                }
                s
            })
            .collect()
    }
}

/// `dim Ext¹(M,N) = dim Hom(N,τM) - dim I(N,τM) = dim Hom(τ⁻N,M) - dim P(τ⁻N,M)`
/// for all ordered pairs of catalog entries.
pub fn ar_formula_suite<F: Field>(ctx: &FpContext<'_, F>) -> Result<CheckReport> {
    let mut item = CheckItem::new("ar-formula");
    let mods = ctx.catalog.modules();
    let tau_inv: Vec<_> = mods.iter().map(|n| tau_inverse(ctx.op, n)).collect();
    for (i, m) in mods.iter().enumerate() {
        for (j, n) in mods.iter().enumerate() {
            let ext = ctx.ext(1, i, j)?;
            let (h, _, inj) = stable_hom_dims(ctx.alg, ctx.op, n, ctx.tau_of(i));
            let (h2, proj, _) = stable_hom_dims(ctx.alg, ctx.op, &tau_inv[j], m);
            item.record(ext == h - inj && ext == h2 - proj, || {
                format!("({i}, {j}): ext {ext}, Hom(N,τM)/I {}, Hom(τ⁻N,M)/P {}", h - inj, h2 - proj)
            });
        }
    }
    Ok(CheckReport { items: vec![item] })
}

/// `fpd(E1) <= fpd(TAU)` within certified intervals.
pub fn tau_inequality<F: Field>(ctx: &FpContext<'_, F>, config: &FpConfig) -> Result<CheckReport> {
    let mut item = CheckItem::new("fpd(E1) <= fpd(TAU)");
    let e1 = fpd_row(ctx, AdjacencyAssignment::E(1), config)?;
    let t = fpd_row(ctx, AdjacencyAssignment::Tau, config)?;
    item.record(e1.total.certified_le(&t.total), || format!("{} > {}", e1.total, t.total));
    // entrywise form on every maximal brick set
    for c in ctx.brick_cliques() {
        let a = ctx.adjacency_matrix(&c, AdjacencyAssignment::E(1))?;
        let b = ctx.adjacency_matrix(&c, AdjacencyAssignment::Tau)?;
        // Ext¹(X_i, X_j) <= dim Hom(X_j, τX_i), the transposed entry
        let ok = (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] <= b[j][i]));
        item.record(ok, || format!("brick set {c:?}: A(E1) = {a:?} exceeds A(TAU)^T for A(TAU) = {b:?}"));
    }
    Ok(CheckReport { items: vec![item] })
}

/// Whether every relation of `a` lies in the ideal of `b` on the same quiver.
pub fn is_quotient_of<F: Field>(b: &Algebra<F>, a: &Algebra<F>) -> Result<bool> {
    if a.quiver() != b.quiver() {
        return Ok(false);
    }
    for r in a.relations() {
        let terms: Vec<(F, Path)> = r.terms().to_vec();
        if !b.contains(&terms)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some monomorphism `M -> N`, searched among random combinations.
pub fn find_monomorphism<F: Field, R: Rng>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    n: &Representation<F>,
    rng: &mut R,
) -> Option<ModuleMorphism<F>> {
    if m.is_zero() {
        return Some(ModuleMorphism::zero(m, n));
    }
    if m.dims().iter().zip(n.dims()).any(|(a, b)| a > b) {
        return None;
    }
    let basis = hom_space(alg.quiver(), m, n);
    if basis.is_empty() {
        return None;
    }
    for _ in 0..16 {
        let coeffs: Vec<F> = (0..basis.len()).map(|_| F::from_i64(rng.gen_range(-8..=8))).collect();
        let f = ModuleMorphism::linear_combination(&basis, &coeffs, m, n);
        if f.is_injective() {
            return Some(f);
        }
    }
    None
}

/// For `B = A/I'`: `fpd_B(E1) <= fpd_A(E1)`, `fpd_B(τ_B) <= fpd_A(τ_A)` and,
/// for every B-module in the catalog, `τ_B M` embeds in `τ_A M`.
pub fn quotient_inequalities<F: Field, R: Rng>(
    a: &FpContext<'_, F>,
    b: &FpContext<'_, F>,
    config: &FpConfig,
    rng: &mut R,
) -> Result<CheckReport> {
    if !is_quotient_of(b.alg, a.alg)? {
        return Err(Error::Invalid(format!("{} is not a quotient of {}", b.alg.name(), a.alg.name())));
    }
    let mut fp = CheckItem::new(format!("fpd monotone under {} -> {}", a.alg.name(), b.alg.name()));
    for zeta in [AdjacencyAssignment::E(1), AdjacencyAssignment::Tau] {
        let va = fpd_row(a, zeta, config)?.total;
        let vb = fpd_row(b, zeta, config)?.total;
        fp.record(vb.certified_le(&va), || format!("{zeta}: {vb} > {va}"));
    }
    let mut sub = CheckItem::new(format!("τ_B M embeds in τ_A M for {}", b.alg.name()));
    for (i, e) in b.catalog.entries.iter().enumerate() {
        let tb = b.tau_of(i);
        let ta = tau(a.alg, &e.module);
        let dims_ok = tb.dims().iter().zip(ta.dims()).all(|(x, y)| x <= y);
        let mono = dims_ok && find_monomorphism(a.alg, tb, &ta, rng).is_some();
        sub.record(mono, || format!("entry {i} {:?}: τ_B {:?}, τ_A {:?}", e.module.dims(), tb.dims(), ta.dims()));
    }
    Ok(CheckReport { items: vec![fp, sub] })
}

/// A random proper quotient `A/(I + (r))` with `r` a monomial or a
/// binomial of parallel basis paths of length at least two.
pub fn random_quotient<F: Field, R: Rng>(alg: &Algebra<F>, rng: &mut R) -> Result<Option<Algebra<F>>> {
    let long: Vec<&Path> = alg.basis().iter().filter(|p| p.len() >= 2).collect();
    if long.is_empty() {
        return Ok(None);
    }
    let p = long[rng.gen_range(0..long.len())].clone();
    let parallel: Vec<&Path> = long
        .iter()
        .copied()
        .filter(|q| **q != p && q.source() == p.source() && q.target() == p.target())
        .collect();
    let mut terms = vec![(F::one(), p.clone())];
    if !parallel.is_empty() && rng.gen_bool(0.5) {
        let c = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        terms.push((F::from_i64(c), parallel[rng.gen_range(0..parallel.len())].clone()));
    }
    let mut relations = alg.relations().to_vec();
    let index = relations.len();
    relations.push(Relation::new(alg.quiver(), terms, index)?);
    let name = format!("{}/({})", alg.name(), relations[index].display(alg.quiver()));
    Algebra::new(name, alg.quiver().clone(), relations, alg.bound()).map(Some)
}

/// On a representation-directed catalog, the ordering with no hom-path
/// from an earlier entry to a later one makes `A(φ, E^m)` (`m >= 1`)
/// strictly upper triangular and `A(φ, TAU)` strictly lower triangular
/// for every maximal brick set, and all radii are exact zero by nilpotency.
pub fn triangularity_suite<F: Field>(ctx: &FpContext<'_, F>, tol: &Rational) -> Result<CheckReport> {
    ctx.catalog.require_complete()?;
    let mut item = CheckItem::new("triangular adjacency in the directing order");
    let order = match topological_order(&hom_path_graph(ctx.alg, &ctx.catalog.modules())) {
        OrderOrCycle::Order(o) => o,
        OrderOrCycle::Cycle(c) => {
            item.violations.push(format!("not representation-directed: cycle {c:?}"));
            return Ok(CheckReport { items: vec![item] });
        }
    };
    let mut rank = vec![0; ctx.len()];
    for (k, &i) in order.iter().enumerate() {
        rank[i] = k;
    }
    for clique in ctx.brick_cliques() {
        let mut sorted = clique.clone();
        sorted.sort_by_key(|&i| rank[i]);
        let zetas = (1..=ctx.mmax.max(1))
            .map(AdjacencyAssignment::E)
            .chain([AdjacencyAssignment::Tau]);
        for zeta in zetas {
            let a = ctx.adjacency_matrix(&sorted, zeta)?;
            let upper = zeta != AdjacencyAssignment::Tau;
            let ok = (0..a.len()).all(|r| {
                (0..a.len()).all(|c| a[r][c] == 0 || if upper { r < c } else { r > c })
            });
            item.record(ok, || format!("{zeta} on {sorted:?} is not strictly triangular: {a:?}"));
            let rho = spectral_radius(&counts_to_matrix(&a), tol)?;
            item.record(
                rho.value == SpectralValue::Zero && rho.method == SpectralMethod::NilpotentShortcut,
                || format!("{zeta} on {sorted:?}: radius {} via {:?}", rho.value, rho.method),
            );
        }
    }
    Ok(CheckReport { items: vec![item] })
}

/// Every pair with `Ext^m(N, M) != 0` for some `2 <= m <= mmax` admits a
/// hom-path `M ~> N`.
pub fn ext_path_property<F: Field>(ctx: &FpContext<'_, F>, mmax: usize) -> Result<CheckReport> {
    let mut item = CheckItem::new("Ext^m(N, M) != 0 implies a path M ~> N");
    let reach = hom_path_graph(ctx.alg, &ctx.catalog.modules()).reachability();
    for n in 0..ctx.len() {
        for m in 0..ctx.len() {
            for k in 2..=mmax.min(ctx.mmax) {
                if ctx.ext(k, n, m)? != 0 {
                    item.record(reach[m][n], || format!("Ext^{k}({n}, {m}) != 0 without a path {m} ~> {n}"));
                }
            }
        }
    }
    Ok(CheckReport { items: vec![item] })
}
