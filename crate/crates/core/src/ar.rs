//! Auslander-Reiten translates, the indecomposable catalog and the
//! hom-path graph on it.

use std::collections::{HashMap, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::repr::{
    cokernel, decompose, direct_sum, certified_non_isomorphic, endomorphism_radical_dim, find_isomorphism, hom_dim, hom_space, kernel,
    min_proj_presentation, projective, quotient, socle, syzygy, top_dims, BlockKind, BlockModule, IsoOutcome,
    ModuleMorphism, Representation,
};

/// `ν P(v) = I(v)`.
pub fn nakayama_projective<F: Field>(alg: &Algebra<F>, v: usize) -> Representation<F> {
    BlockModule::injective(alg, vec![v]).into_module()
}

/// Applies the Nakayama functor to a morphism between projective sums.
/// Returns the two injective sums and the induced morphism.
pub fn nakayama_map<F: Field>(
    alg: &Algebra<F>,
    from: &BlockModule<F>,
    to: &BlockModule<F>,
    g: &ModuleMorphism<F>,
) -> Result<(BlockModule<F>, BlockModule<F>, ModuleMorphism<F>)> {
    if from.kind() != BlockKind::Projective || to.kind() != BlockKind::Projective {
        return Err(Error::NotProjective);
    }
    let comps = from.components(alg, to, g);
    let nu_from = BlockModule::injective(alg, from.summands().to_vec());
    let nu_to = BlockModule::injective(alg, to.summands().to_vec());
    let nv = alg.num_vertices();
    let mut maps: Vec<Matrix<F>> = (0..nv)
        .map(|w| Matrix::zeros(nu_to.module().dim(w), nu_from.module().dim(w)))
        .collect();
    for (i, &vi) in to.summands().iter().enumerate() {
        for (j, &uj) in from.summands().iter().enumerate() {
            let a = &comps[i][j];
            if a.is_empty() {
                continue;
            }
            for (w, m) in maps.iter_mut().enumerate() {
                let block = alg
                    .left_mult_matrix(a, alg.paths_between(w, vi), alg.paths_between(w, uj))
                    .transpose();
                if block.rows() > 0 && block.cols() > 0 {
                    m.set_block(nu_to.offset(i, w), nu_from.offset(j, w), &block);
                }
            }
        }
    }
    Ok((nu_from, nu_to, ModuleMorphism::from_parts(maps)))
}

/// `τM = ker(νP1 -> νP0)`; zero for projective (or zero) `M`.
pub fn tau<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Representation<F> {
    if m.is_zero() {
        return m.clone();
    }
    let pres = min_proj_presentation(alg, m).expect("nonzero module");
    if pres.p1.summands().is_empty() {
        return Representation::zero(alg.quiver());
    }
    let (nu1, _, nu_map) = nakayama_map(alg, &pres.p1, &pres.p0, &pres.map).expect("projective sums");
    kernel(alg.quiver(), nu1.module(), &nu_map).0
}

/// `τ⁻M = D τ_{A^op}(DM)`.
pub fn tau_inverse<F: Field>(op: &Algebra<F>, m: &Representation<F>) -> Representation<F> {
    tau(op, &m.dual()).dual()
}

/// Whether `End(M)` is local: dimension one, or (characteristic zero) a
/// trace-form radical of codimension one. `None` when undecidable here.
pub fn has_local_endomorphisms<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Option<bool> {
    let endos = hom_space(alg.quiver(), m, m);
    if endos.len() == 1 {
        return Some(true);
    }
    endomorphism_radical_dim(&endos).map(|r| endos.len() - r == 1)
}

/// `τ` restricted to certified indecomposable input.
pub fn tau_checked<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Result<Representation<F>> {
    if has_local_endomorphisms(alg, m) == Some(false) {
        return Err(Error::Decomposable(format!("{:?}", m.dims())));
    }
    Ok(tau(alg, m))
}

pub fn tau_inverse_checked<F: Field>(alg: &Algebra<F>, op: &Algebra<F>, m: &Representation<F>) -> Result<Representation<F>> {
    if has_local_endomorphisms(alg, m) == Some(false) {
        return Err(Error::Decomposable(format!("{:?}", m.dims())));
    }
    Ok(tau_inverse(op, m))
}

/// Projective iff the projective cover has the same dimension.
pub fn is_projective_module<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> bool {
    let top = top_dims(alg.quiver(), m);
    let cover: usize = top
        .iter()
        .enumerate()
        .map(|(v, k)| k * BlockModule::projective(alg, vec![v]).module().total_dim())
        .sum();
    cover == m.total_dim()
}

pub fn is_injective_module<F: Field>(op: &Algebra<F>, m: &Representation<F>) -> bool {
    is_projective_module(op, &m.dual())
}

/// Middle term of the almost split sequence `0 -> τX -> E -> X -> 0`, for
/// a non-projective indecomposable `X` with `tau_x = τX`. Returns `None`
/// when the socle of `Ext¹(X, τX)` cannot be located (non-brick `X` in
/// positive characteristic).
pub fn almost_split_middle<F: Field>(
    alg: &Algebra<F>,
    x: &Representation<F>,
    tau_x: &Representation<F>,
) -> Option<Representation<F>> {
    let q = alg.quiver();
    let syz = syzygy(alg, x);
    let p0 = syz.cover.projective.module();
    let iota = &syz.inclusion;
    let h = hom_space(q, &syz.module, tau_x);
    let b: Vec<Vec<F>> = hom_space(q, p0, tau_x)
        .iter()
        .map(|g| g.compose(iota).flatten())
        .collect();
    let width = h.first()?.flatten().len();
    // rows of `ann` annihilate the coboundaries
    let ann = if b.is_empty() {
        Matrix::identity(width)
    } else {
        Matrix::from_rows(b, width).expect("equal lengths").transpose().left_kernel_matrix()
    };
    let reduce = |f: &ModuleMorphism<F>| ann.mul_vec(&f.flatten());

    let endos = hom_space(q, x, x);
    let radical: Vec<ModuleMorphism<F>> = if endos.len() == 1 {
        Vec::new()
    } else {
        let k = endos.len();
        let gram = Matrix::from_fn(k, k, |i, j| {
            let p = endos[i].compose(&endos[j]);
            p.maps().iter().fold(F::zero(), |acc, m| acc.add(&m.trace()))
        });
        if F::characteristic() != 0 {
            return None;
        }
        gram.nullspace()
            .into_iter()
            .map(|c| ModuleMorphism::linear_combination(&endos, &c, x, x))
            .collect()
    };
    // restrictions to ΩX of lifts of radical endomorphisms
    let mut restricted = Vec::new();
    for r in &radical {
        let images: Vec<Vec<F>> = (0..syz.cover.projective.summands().len())
            .map(|i| {
                let v = syz.cover.projective.summands()[i];
                let row = syz.cover.projective.generator_row(alg, i);
                let target = r.at(v).mul(syz.cover.map.at(v)).column(row);
                syz.cover.map.at(v).solve(&target).expect("shapes").expect("cover is onto")
            })
            .collect();
        let lift = syz.cover.projective.morphism_from_generators(alg, p0, &images);
        let maps = (0..alg.num_vertices())
            .map(|v| {
                iota.at(v)
                    .solve_matrix(&lift.at(v).mul(iota.at(v)))
                    .expect("shapes")
                    .expect("lift preserves the syzygy")
            })
            .collect();
        restricted.push(ModuleMorphism::from_parts(maps));
    }
    // coefficients c with (Σ c_i h_i) ∘ r' a coboundary for every r'
    let mut rows: Vec<Vec<F>> = Vec::new();
    for r in &restricted {
        let cols: Vec<Vec<F>> = h.iter().map(|hi| reduce(&hi.compose(r))).collect();
        for k in 0..ann.rows() {
            rows.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    let solutions = if rows.is_empty() {
        (0..h.len())
            .map(|i| (0..h.len()).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(rows, h.len()).expect("equal lengths").nullspace()
    };
    let class = solutions.into_iter().find_map(|c| {
        let f = ModuleMorphism::linear_combination(&h, &c, &syz.module, tau_x);
        reduce(&f).iter().any(|v| !v.is_zero()).then_some(f)
    })?;
    // pushout of P0 <- ΩX -> τX
    let (sum, inj) = direct_sum(q, &[tau_x, p0]);
    let phi = inj[0].compose(&class).sub(&inj[1].compose(iota));
    Some(cokernel(q, &sum, &phi).0)
}

/// How a catalog entry was first reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Projective { vertex: i64 },
    Injective { vertex: i64 },
    TauInverse { from: usize },
    Tau { from: usize },
    MiddleTerm { of: usize },
    RadicalSummand { of: usize },
    SocleQuotientSummand { of: usize },
    UserSupplied,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry<F: Field> {
    pub module: Representation<F>,
    pub provenance: Provenance,
    pub end_dim: usize,
    pub projective: bool,
    pub injective: bool,
    /// Catalog index of τ of this entry, when computed and present.
    pub tau: Option<usize>,
    pub tau_inverse: Option<usize>,
}

impl<F: Field> CatalogEntry<F> {
    pub fn is_brick(&self) -> bool {
        self.end_dim == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Completeness {
    /// Closed under τ, τ⁻ and irreducible neighbours, hence (the AR
    /// quiver having a finite component) every indecomposable.
    Complete,
    Bounded { reason: String, dims: Option<Vec<usize>> },
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogConfig {
    pub max_total_dim: usize,
    pub max_entries: usize,
    pub seed: u64,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig {
            max_total_dim: 64,
            max_entries: 256,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndecomposableCatalog<F: Field> {
    pub entries: Vec<CatalogEntry<F>>,
    pub completeness: Completeness,
    pub warnings: Vec<String>,
}

impl<F: Field> IndecomposableCatalog<F> {
    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn modules(&self) -> Vec<Representation<F>> {
        self.entries.iter().map(|e| e.module.clone()).collect()
    }

    pub fn module(&self, i: usize) -> &Representation<F> {
        &self.entries[i].module
    }

    pub fn require_complete(&self) -> Result<()> {
        match &self.completeness {
            Completeness::Complete => Ok(()),
            Completeness::Bounded { dims: Some(d), .. } => Err(Error::BoundExceeded { dims: d.clone() }),
            Completeness::Bounded { .. } => Err(Error::IncompleteCatalog),
        }
    }

    /// Index of the entry isomorphic to `m`, if any.
    pub fn find(&self, alg: &Algebra<F>, m: &Representation<F>, seed: u64) -> Option<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.entries
            .iter()
            .position(|e| find_isomorphism(alg.quiver(), &e.module, m, &mut rng).is_isomorphic())
    }
}

struct Builder<'a, F: Field> {
    alg: &'a Algebra<F>,
    config: CatalogConfig,
    entries: Vec<CatalogEntry<F>>,
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
    queue: VecDeque<usize>,
    rng: ChaCha8Rng,
    bounded: Option<Completeness>,
    warnings: Vec<String>,
}

impl<'a, F: Field> Builder<'a, F> {
    fn add(&mut self, m: Representation<F>, provenance: Provenance, op: &Algebra<F>) -> Option<usize> {
        if m.is_zero() {
            return None;
        }
        let q = self.alg.quiver();
        if let Some(candidates) = self.by_dims.get(m.dims()) {
            for &i in candidates {
                match find_isomorphism(q, &self.entries[i].module, &m, &mut self.rng) {
                    IsoOutcome::Isomorphic(_) => return Some(i),
                    IsoOutcome::NotIsomorphic => {}
                    IsoOutcome::Undetermined if certified_non_isomorphic(q, &self.entries[i].module, &m) == Some(true) => {}
                    IsoOutcome::Undetermined => self.warnings.push(format!(
                        "isomorphism undetermined for dimension vector {:?}; treated as distinct",
                        m.dims()
                    )),
                }
            }
        }
        if m.total_dim() > self.config.max_total_dim {
            if self.bounded.is_none() {
                self.bounded = Some(Completeness::Bounded {
                    reason: format!("module of total dimension {} exceeds max_total_dim", m.total_dim()),
                    dims: Some(m.dims().to_vec()),
                });
            }
            return None;
        }
        if self.entries.len() >= self.config.max_entries {
            if self.bounded.is_none() {
                self.bounded = Some(Completeness::Bounded {
                    reason: format!("more than {} indecomposables", self.config.max_entries),
                    dims: Some(m.dims().to_vec()),
                });
            }
            return None;
        }
        let end_dim = hom_dim(q, &m, &m);
        let entry = CatalogEntry {
            projective: is_projective_module(self.alg, &m),
            injective: is_injective_module(op, &m),
            module: m,
            provenance,
            end_dim,
            tau: None,
            tau_inverse: None,
        };
        let i = self.entries.len();
        self.by_dims.entry(entry.module.dims().to_vec()).or_default().push(i);
        self.entries.push(entry);
        self.queue.push_back(i);
        Some(i)
    }

    fn add_summands(&mut self, m: &Representation<F>, provenance: Provenance, op: &Algebra<F>) {
        let d = decompose(self.alg.quiver(), m, &mut self.rng);
        if !d.certified {
            self.uncertain(format!("could not certify the decomposition of a module with dimension vector {:?}", m.dims()));
        }
        for s in d.summands {
            self.add(s, provenance.clone(), op);
        }
    }

    fn uncertain(&mut self, reason: String) {
        self.warnings.push(reason.clone());
        if self.bounded.is_none() {
            self.bounded = Some(Completeness::Bounded { reason, dims: None });
        }
    }
}

/// Generates indecomposables starting from all `P(v)` and `I(v)`, closing
/// under τ⁻, τ and the summands of almost split sequences, radicals of
/// projectives and socle quotients of injectives.
pub fn enumerate_indecomposables<F: Field>(
    alg: &Algebra<F>,
    op: &Algebra<F>,
    config: CatalogConfig,
) -> Result<IndecomposableCatalog<F>> {
    if config.max_total_dim == 0 || config.max_entries == 0 {
        return Err(Error::Invalid("catalog bounds must be positive".into()));
    }
    let q = alg.quiver();
    let mut b = Builder {
        alg,
        config,
        entries: Vec::new(),
        by_dims: HashMap::new(),
        queue: VecDeque::new(),
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        bounded: None,
        warnings: Vec::new(),
    };
    for v in 0..q.num_vertices() {
        b.add(projective(alg, v), Provenance::Projective { vertex: q.vertex_id(v) }, op);
    }
    for v in 0..q.num_vertices() {
        b.add(nakayama_projective(alg, v), Provenance::Injective { vertex: q.vertex_id(v) }, op);
    }
    while let Some(i) = b.queue.pop_front() {
        if b.bounded.is_some() {
            break;
        }
        let x = b.entries[i].module.clone();
        if !b.entries[i].injective {
            let y = tau_inverse(op, &x);
            let j = b.add(y, Provenance::TauInverse { from: i }, op);
            b.entries[i].tau_inverse = j;
            if let Some(j) = j {
                b.entries[j].tau = Some(i);
            }
        }
        if b.entries[i].projective {
            let (rad, _) = crate::repr::radical(q, &x);
            b.add_summands(&rad, Provenance::RadicalSummand { of: i }, op);
        } else {
            let t = tau(alg, &x);
            let j = b.add(t.clone(), Provenance::Tau { from: i }, op);
            b.entries[i].tau = j;
            if let Some(j) = j {
                b.entries[j].tau_inverse = Some(i);
            }
            match almost_split_middle(alg, &x, &t) {
                Some(e) => b.add_summands(&e, Provenance::MiddleTerm { of: i }, op),
                None => b.uncertain(format!(
                    "almost split sequence ending at {:?} not determined",
                    x.dims()
                )),
            }
        }
        if b.entries[i].injective {
            let (s, inc) = socle(q, &x);
            if s.total_dim() < x.total_dim() {
                let (quo, _) = quotient(q, &x, inc.maps());
                b.add_summands(&quo, Provenance::SocleQuotientSummand { of: i }, op);
            }
        }
    }
    let completeness = b.bounded.unwrap_or(Completeness::Complete);
    Ok(IndecomposableCatalog {
        entries: b.entries,
        completeness,
        warnings: b.warnings,
    })
}

/// Directed graph on catalog entries: `i -> j` when a nonzero
/// non-isomorphism `M_i -> M_j` exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomPathGraph {
    pub edges: Vec<Vec<usize>>,
    pub self_loops: Vec<bool>,
}

pub fn hom_path_graph<F: Field>(alg: &Algebra<F>, modules: &[Representation<F>]) -> HomPathGraph {
    let q = alg.quiver();
    let n = modules.len();
    let mut edges = vec![Vec::new(); n];
    let mut self_loops = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            let h = hom_dim(q, &modules[i], &modules[j]);
            if i == j {
                self_loops[i] = h > 1;
            } else if h > 0 {
                edges[i].push(j);
            }
        }
    }
    HomPathGraph { edges, self_loops }
}

impl HomPathGraph {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Reachability matrix over paths of length at least one.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut reach = vec![vec![false; n]; n];
        for s in 0..n {
            let mut stack: Vec<usize> = self.edges[s].clone();
            if self.self_loops[s] {
                stack.push(s);
            }
            while let Some(v) = stack.pop() {
                if reach[s][v] {
                    continue;
                }
                reach[s][v] = true;
                stack.extend(self.edges[v].iter().copied());
                if self.self_loops[v] {
                    stack.push(v);
                }
            }
        }
        reach
    }
}

/// Either an ordering in which every edge points from a later entry to an
/// earlier one (no path from an earlier entry to a later one), or a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "entries", rename_all = "kebab-case")]
pub enum OrderOrCycle {
    Order(Vec<usize>),
    Cycle(Vec<usize>),
}

pub fn topological_order(graph: &HomPathGraph) -> OrderOrCycle {
    if let Some(i) = graph.self_loops.iter().position(|&l| l) {
        return OrderOrCycle::Cycle(vec![i]);
    }
    let n = graph.len();
    // 0 = new, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut post = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = graph.edges[v].get(*next) {
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![w];
                        let mut u = v;
                        while u != w {
                            cycle.push(u);
                            u = parent[u];
                        }
                        cycle.reverse();
                        // rotate so the cycle reads along the edges starting at w
                        cycle.rotate_right(1);
                        return OrderOrCycle::Cycle(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                post.push(v);
                stack.pop();
            }
        }
    }
    // post-order lists sinks first, so edges go from later to earlier
    OrderOrCycle::Order(post)
}

pub fn is_representation_directed<F: Field>(alg: &Algebra<F>, catalog: &IndecomposableCatalog<F>) -> Result<OrderOrCycle> {
    catalog.require_complete()?;
    Ok(topological_order(&hom_path_graph(alg, &catalog.modules())))
}
