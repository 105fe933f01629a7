//! Quiver representations (finite-dimensional left modules), morphisms and
//! the homological operations on them.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{Matrix, SparseSystem};
use crate::quiver::{ModuleLiteral, Path, Quiver};

/// Resolution stage bound used when none is configured.
pub const DEFAULT_STAGE_BOUND: usize = 16;

/// A representation: one vector space per vertex, one matrix of shape
/// `dims[target] x dims[source]` per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F: Field> {
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    /// Checked constructor: shapes and every defining relation.
    pub fn new(alg: &Algebra<F>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.num_arrows() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} dimensions and {} maps, got {} and {}",
                q.num_vertices(),
                q.num_arrows(),
                dims.len(),
                maps.len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = Representation { dims, maps };
        for r in alg.relations() {
            let (s, t) = (r.source(), r.target());
            let mut sum = Matrix::zeros(rep.dims[t], rep.dims[s]);
            for (c, p) in r.terms() {
                sum = sum.add(&rep.path_matrix(p).scale(c));
            }
            if !sum.is_zero() {
                return Err(Error::RelationViolated(r.display(q)));
            }
        }
        Ok(rep)
    }

    /// No relation check; callers guarantee validity.
    pub fn from_parts(dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        Representation { dims, maps }
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Representation {
            dims: vec![0; quiver.num_vertices()],
            maps: vec![Matrix::zeros(0, 0); quiver.num_arrows()],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }

    /// The action of a path: arrow matrices multiplied in list order.
    pub fn path_matrix(&self, p: &Path) -> Matrix<F> {
        if p.is_trivial() {
            return Matrix::identity(self.dims[p.source()]);
        }
        let mut m = self.maps[p.arrows()[0]].clone();
        for &a in &p.arrows()[1..] {
            m = m.mul(&self.maps[a]);
        }
        m
    }

    /// Applies a path to a vector at its source.
    pub fn apply_path(&self, p: &Path, x: &[F]) -> Vec<F> {
        let mut v = x.to_vec();
        for &a in p.arrows().iter().rev() {
            v = self.maps[a].mul_vec(&v);
        }
        v
    }

    /// Dual representation over the opposite quiver.
    pub fn dual(&self) -> Self {
        Representation {
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn from_literal(alg: &Algebra<F>, lit: &ModuleLiteral) -> Result<Self> {
        let q = alg.quiver();
        let mut dims = vec![0; q.num_vertices()];
        for (key, &d) in &lit.dims {
            let id: i64 = key
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("vertex key `{key}` is not an integer")))?;
            let v = q.vertex_index(id).ok_or(Error::UnknownVertex(id))?;
            dims[v] = d;
        }
        let mut maps: Vec<Matrix<F>> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        for (name, rows) in &lit.maps {
            let a = q.arrow_index(name).ok_or_else(|| Error::UnknownArrow(name.clone()))?;
            let parsed = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| Ok(F::from_rational(&s.parse::<Rational>()?)?))
                        .collect::<Result<Vec<F>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let cols = dims[q.arrow(a).source];
            if parsed.len() != dims[q.arrow(a).target] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {name} needs {} rows, got {}",
                    dims[q.arrow(a).target],
                    parsed.len()
                )));
            }
            maps[a] = Matrix::from_rows(parsed, cols)?;
        }
        Representation::new(alg, dims, maps)
    }

    pub fn to_literal(&self, quiver: &Quiver) -> ModuleLiteral {
        let dims = (0..quiver.num_vertices())
            .map(|v| (quiver.vertex_id(v).to_string(), self.dims[v]))
            .collect();
        let maps: BTreeMap<String, Vec<Vec<String>>> = quiver
            .arrows()
            .iter()
            .enumerate()
            .filter(|(a, _)| !self.maps[*a].is_zero())
            .map(|(a, arrow)| {
                let m = &self.maps[a];
                let rows = (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect();
                (arrow.name.clone(), rows)
            })
            .collect();
        ModuleLiteral { dims, maps }
    }
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism<F: Field> {
    maps: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMorphism<F> {
    pub fn from_parts(maps: Vec<Matrix<F>>) -> Self {
        ModuleMorphism { maps }
    }

    pub fn zero(from: &Representation<F>, to: &Representation<F>) -> Self {
        ModuleMorphism {
            maps: from.dims.iter().zip(&to.dims).map(|(&s, &t)| Matrix::zeros(t, s)).collect(),
        }
    }

    pub fn identity(m: &Representation<F>) -> Self {
        ModuleMorphism {
            maps: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn at(&self, v: usize) -> &Matrix<F> {
        &self.maps[v]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        ModuleMorphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        ModuleMorphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModuleMorphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        ModuleMorphism {
            maps: self.maps.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// The dual morphism (between dual representations, reversed).
    pub fn dual(&self) -> Self {
        ModuleMorphism {
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn total_rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }

    /// Entries of all vertex matrices, concatenated.
    pub fn flatten(&self) -> Vec<F> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Whether the intertwining equations hold.
    pub fn is_morphism(&self, quiver: &Quiver, from: &Representation<F>, to: &Representation<F>) -> bool {
        quiver
            .arrows()
            .iter()
            .enumerate()
            .all(|(i, a)| self.maps[a.target].mul(&from.maps[i]) == to.maps[i].mul(&self.maps[a.source]))
    }

    pub fn linear_combination(basis: &[Self], coeffs: &[F], from: &Representation<F>, to: &Representation<F>) -> Self {
        let mut acc = Self::zero(from, to);
        for (b, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

fn hom_system<F: Field>(quiver: &Quiver, m: &Representation<F>, n: &Representation<F>) -> (SparseSystem<F>, Vec<usize>) {
    let nv = quiver.num_vertices();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let mut system = SparseSystem::new(offset[nv]);
    for (ai, a) in quiver.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        // (f_t M_a - N_a f_s)[i][j] = 0
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = Vec::new();
                for k in 0..m.dims[t] {
                    let x = &ma[(k, j)];
                    if !x.is_zero() {
                        row.push((offset[t] + i * m.dims[t] + k, x.clone()));
                    }
                }
                for k in 0..n.dims[s] {
                    let x = &na[(i, k)];
                    if !x.is_zero() {
                        row.push((offset[s] + k * m.dims[s] + j, x.neg()));
                    }
                }
                system.push_row(row);
            }
        }
    }
    (system, offset)
}

/// Basis of `Hom(M, N)`.
pub fn hom_space<F: Field>(quiver: &Quiver, m: &Representation<F>, n: &Representation<F>) -> Vec<ModuleMorphism<F>> {
    let (system, offset) = hom_system(quiver, m, n);
    system
        .nullspace()
        .into_iter()
        .map(|x| ModuleMorphism {
            maps: (0..quiver.num_vertices())
                .map(|v| Matrix::from_fn(n.dims[v], m.dims[v], |i, j| x[offset[v] + i * m.dims[v] + j].clone()))
                .collect(),
        })
        .collect()
}

pub fn hom_dim<F: Field>(quiver: &Quiver, m: &Representation<F>, n: &Representation<F>) -> usize {
    let (system, _) = hom_system(quiver, m, n);
    system.cols() - system.rank()
}

pub fn is_brick<F: Field>(quiver: &Quiver, m: &Representation<F>) -> bool {
    hom_dim(quiver, m, m) == 1
}

/// Bricks with pairwise vanishing homs.
pub fn is_brick_set<F: Field>(quiver: &Quiver, modules: &[Representation<F>]) -> Result<bool> {
    if modules.is_empty() {
        return Err(Error::EmptyBrickSet);
    }
    for (i, x) in modules.iter().enumerate() {
        for (j, y) in modules.iter().enumerate() {
            let expected = usize::from(i == j);
            if hom_dim(quiver, x, y) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sub-representation spanned per vertex by the columns of `bases`
/// (assumed independent and invariant), with its inclusion.
pub fn submodule<F: Field>(
    quiver: &Quiver,
    m: &Representation<F>,
    bases: Vec<Matrix<F>>,
) -> (Representation<F>, ModuleMorphism<F>) {
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let image = m.maps[i].mul(&bases[a.source]);
            bases[a.target]
                .solve_matrix(&image)
                .expect("shapes agree")
                .expect("subspace is invariant")
        })
        .collect();
    (Representation { dims, maps }, ModuleMorphism { maps: bases })
}

/// Quotient by the invariant subspaces spanned by `bases`, with the
/// projection.
pub fn quotient<F: Field>(
    quiver: &Quiver,
    m: &Representation<F>,
    bases: &[Matrix<F>],
) -> (Representation<F>, ModuleMorphism<F>) {
    let projections: Vec<Matrix<F>> = bases.iter().map(Matrix::left_kernel_matrix).collect();
    let sections: Vec<Matrix<F>> = projections
        .iter()
        .map(|l| {
            l.solve_matrix(&Matrix::identity(l.rows()))
                .expect("shapes agree")
                .expect("full row rank")
        })
        .collect();
    let dims = projections.iter().map(Matrix::rows).collect();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| projections[a.target].mul(&m.maps[i]).mul(&sections[a.source]))
        .collect();
    (Representation { dims, maps }, ModuleMorphism { maps: projections })
}

pub fn kernel<F: Field>(quiver: &Quiver, from: &Representation<F>, f: &ModuleMorphism<F>) -> (Representation<F>, ModuleMorphism<F>) {
    submodule(quiver, from, f.maps.iter().map(Matrix::kernel_matrix).collect())
}

pub fn image<F: Field>(quiver: &Quiver, to: &Representation<F>, f: &ModuleMorphism<F>) -> (Representation<F>, ModuleMorphism<F>) {
    submodule(quiver, to, f.maps.iter().map(Matrix::column_space).collect())
}

pub fn cokernel<F: Field>(quiver: &Quiver, to: &Representation<F>, f: &ModuleMorphism<F>) -> (Representation<F>, ModuleMorphism<F>) {
    let bases: Vec<Matrix<F>> = f.maps.iter().map(Matrix::column_space).collect();
    quotient(quiver, to, &bases)
}

fn radical_bases<F: Field>(quiver: &Quiver, m: &Representation<F>) -> Vec<Matrix<F>> {
    (0..quiver.num_vertices())
        .map(|v| {
            let mut acc = Matrix::zeros(m.dims[v], 0);
            for (i, a) in quiver.arrows().iter().enumerate() {
                if a.target == v {
                    acc = acc.hstack(&m.maps[i]);
                }
            }
            acc.column_space()
        })
        .collect()
}

/// `rad M` with its inclusion.
pub fn radical<F: Field>(quiver: &Quiver, m: &Representation<F>) -> (Representation<F>, ModuleMorphism<F>) {
    let bases = radical_bases(quiver, m);
    submodule(quiver, m, bases)
}

/// `M / rad M` with the projection.
pub fn top<F: Field>(quiver: &Quiver, m: &Representation<F>) -> (Representation<F>, ModuleMorphism<F>) {
    let bases = radical_bases(quiver, m);
    quotient(quiver, m, &bases)
}

/// Dimension vector of the top.
pub fn top_dims<F: Field>(quiver: &Quiver, m: &Representation<F>) -> Vec<usize> {
    radical_bases(quiver, m)
        .iter()
        .zip(&m.dims)
        .map(|(b, d)| d - b.cols())
        .collect()
}

/// `soc M` with its inclusion.
pub fn socle<F: Field>(quiver: &Quiver, m: &Representation<F>) -> (Representation<F>, ModuleMorphism<F>) {
    let bases = (0..quiver.num_vertices())
        .map(|v| {
            let mut acc = Matrix::zeros(0, m.dims[v]);
            for (i, a) in quiver.arrows().iter().enumerate() {
                if a.source == v {
                    acc = acc.vstack(&m.maps[i]);
                }
            }
            acc.kernel_matrix()
        })
        .collect();
    submodule(quiver, m, bases)
}

/// Direct sum with the canonical injections.
pub fn direct_sum<F: Field>(quiver: &Quiver, parts: &[&Representation<F>]) -> (Representation<F>, Vec<ModuleMorphism<F>>) {
    let nv = quiver.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..quiver.num_arrows())
        .map(|a| {
            let blocks: Vec<&Matrix<F>> = parts.iter().map(|p| &p.maps[a]).collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    let sum = Representation { dims, maps };
    let mut offsets = vec![0; nv];
    let mut injections = Vec::new();
    for p in parts {
        let maps = (0..nv)
            .map(|v| {
                let mut m = Matrix::zeros(sum.dims[v], p.dims[v]);
                m.set_block(offsets[v], 0, &Matrix::identity(p.dims[v]));
                offsets[v] += p.dims[v];
                m
            })
            .collect();
        injections.push(ModuleMorphism { maps });
    }
    (sum, injections)
}

pub fn simple<F: Field>(alg: &Algebra<F>, v: usize) -> Representation<F> {
    let q = alg.quiver();
    let dims = (0..q.num_vertices()).map(|w| usize::from(w == v)).collect::<Vec<_>>();
    let maps = q.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    Representation { dims, maps }
}

/// Which of the two standard module families a [`BlockModule`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Projective,
    Injective,
}

/// A direct sum of indecomposable projectives `P(v)` (or injectives `I(v)`)
/// with its block layout: at vertex `w` the block of summand `i` has basis
/// `alg.paths_between(v_i, w)` (resp. the dual basis of
/// `alg.paths_between(w, v_i)`).
#[derive(Clone, Debug)]
pub struct BlockModule<F: Field> {
    kind: BlockKind,
    summands: Vec<usize>,
    module: Representation<F>,
    offsets: Vec<Vec<usize>>,
}

impl<F: Field> BlockModule<F> {
    pub fn projective(alg: &Algebra<F>, summands: Vec<usize>) -> Self {
        Self::build(alg, BlockKind::Projective, summands)
    }

    pub fn injective(alg: &Algebra<F>, summands: Vec<usize>) -> Self {
        Self::build(alg, BlockKind::Injective, summands)
    }

    fn block_basis(alg: &Algebra<F>, kind: BlockKind, v: usize, w: usize) -> &[usize] {
        match kind {
            BlockKind::Projective => alg.paths_between(v, w),
            BlockKind::Injective => alg.paths_between(w, v),
        }
    }

    fn build(alg: &Algebra<F>, kind: BlockKind, summands: Vec<usize>) -> Self {
        let q = alg.quiver();
        let nv = q.num_vertices();
        let mut offsets = vec![vec![0; nv]; summands.len()];
        let mut dims = vec![0; nv];
        for (i, &v) in summands.iter().enumerate() {
            for w in 0..nv {
                offsets[i][w] = dims[w];
                dims[w] += Self::block_basis(alg, kind, v, w).len();
            }
        }
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let elem = alg.arrow_element(ai);
                let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
                for (i, &v) in summands.iter().enumerate() {
                    let block = match kind {
                        BlockKind::Projective => {
                            alg.left_mult_matrix(&elem, alg.paths_between(v, a.source), alg.paths_between(v, a.target))
                        }
                        BlockKind::Injective => alg
                            .right_mult_matrix(&elem, alg.paths_between(a.target, v), alg.paths_between(a.source, v))
                            .transpose(),
                    };
                    m.set_block(offsets[i][a.target], offsets[i][a.source], &block);
                }
                m
            })
            .collect();
        BlockModule {
            kind,
            summands,
            module: Representation { dims, maps },
            offsets,
        }
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn module(&self) -> &Representation<F> {
        &self.module
    }

    pub fn into_module(self) -> Representation<F> {
        self.module
    }

    pub fn offset(&self, i: usize, w: usize) -> usize {
        self.offsets[i][w]
    }

    /// Row of the generator `e_{v_i}` of projective summand `i` at `v_i`.
    pub fn generator_row(&self, alg: &Algebra<F>, i: usize) -> usize {
        let v = self.summands[i];
        let local = alg
            .paths_between(v, v)
            .iter()
            .position(|&b| b == alg.idempotent(v))
            .expect("idempotent is a basis element");
        self.offsets[i][v] + local
    }

    /// The morphism from this projective sending the generator of summand
    /// `i` to `images[i] ∈ M_{v_i}`.
    pub fn morphism_from_generators(
        &self,
        alg: &Algebra<F>,
        target: &Representation<F>,
        images: &[Vec<F>],
    ) -> ModuleMorphism<F> {
        assert_eq!(self.kind, BlockKind::Projective);
        let nv = alg.num_vertices();
        let mut maps: Vec<Matrix<F>> = (0..nv).map(|w| Matrix::zeros(target.dims[w], self.module.dims[w])).collect();
        for (i, &v) in self.summands.iter().enumerate() {
            for w in 0..nv {
                for (k, &b) in alg.paths_between(v, w).iter().enumerate() {
                    let col = target.apply_path(&alg.basis()[b], &images[i]);
                    for (r, x) in col.into_iter().enumerate() {
                        maps[w][(r, self.offsets[i][w] + k)] = x;
                    }
                }
            }
        }
        ModuleMorphism { maps }
    }

    /// For a morphism `g: self -> other` between projective sums, the algebra
    /// element `a_ij ∈ e_{u_j} A e_{v_i}` of each component `P(u_j) -> P(v_i)`
    /// as sparse coordinates (`g` is right multiplication by `a_ij`).
    pub fn components(&self, alg: &Algebra<F>, other: &BlockModule<F>, g: &ModuleMorphism<F>) -> Vec<Vec<Vec<(usize, F)>>> {
        other
            .summands
            .iter()
            .enumerate()
            .map(|(i, &vi)| {
                self.summands
                    .iter()
                    .enumerate()
                    .map(|(j, &uj)| {
                        let col = self.generator_row(alg, j);
                        alg.paths_between(vi, uj)
                            .iter()
                            .enumerate()
                            .filter_map(|(k, &b)| {
                                let x = g.maps[uj][(other.offsets[i][uj] + k, col)].clone();
                                (!x.is_zero()).then_some((b, x))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn projective<F: Field>(alg: &Algebra<F>, v: usize) -> Representation<F> {
    BlockModule::projective(alg, vec![v]).into_module()
}

pub fn injective<F: Field>(alg: &Algebra<F>, v: usize) -> Representation<F> {
    BlockModule::injective(alg, vec![v]).into_module()
}

/// A projective cover `P0 -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<F: Field> {
    pub projective: BlockModule<F>,
    pub map: ModuleMorphism<F>,
}

/// Projective cover built from the top: one summand `P(v)` per basis vector
/// of a complement of `rad M` at `v`.
pub fn projective_cover<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> ProjectiveCover<F> {
    let q = alg.quiver();
    let rad = radical_bases(q, m);
    let mut summands = Vec::new();
    let mut images = Vec::new();
    for v in 0..q.num_vertices() {
        let r = &rad[v];
        let ech = r.hstack(&Matrix::identity(m.dims[v])).rref();
        for &p in &ech.pivots {
            if p >= r.cols() {
                let mut e = vec![F::zero(); m.dims[v]];
                e[p - r.cols()] = F::one();
                summands.push(v);
                images.push(e);
            }
        }
    }
    let projective = BlockModule::projective(alg, summands);
    let map = projective.morphism_from_generators(alg, m, &images);
    ProjectiveCover { projective, map }
}

/// `Ω M = ker(P0 -> M)` together with the cover and the inclusion.
#[derive(Clone, Debug)]
pub struct Syzygy<F: Field> {
    pub cover: ProjectiveCover<F>,
    pub module: Representation<F>,
    pub inclusion: ModuleMorphism<F>,
}

pub fn syzygy<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Syzygy<F> {
    let cover = projective_cover(alg, m);
    let (module, inclusion) = kernel(alg.quiver(), cover.projective.module(), &cover.map);
    Syzygy { cover, module, inclusion }
}

/// Minimal projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation<F: Field> {
    pub p1: BlockModule<F>,
    pub p0: BlockModule<F>,
    pub map: ModuleMorphism<F>,
    pub cover: ModuleMorphism<F>,
}

pub fn min_proj_presentation<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Result<ProjectivePresentation<F>> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let syz = syzygy(alg, m);
    let cover1 = projective_cover(alg, &syz.module);
    let map = syz.inclusion.compose(&cover1.map);
    Ok(ProjectivePresentation {
        p1: cover1.projective,
        p0: syz.cover.projective,
        map,
        cover: syz.cover.map,
    })
}

/// Syzygies `Ω^0 M = M, Ω^1 M, ...` and the tops of the resolution terms,
/// enough to read off `Ext^m(M, -)` for `m <= stages`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    syzygies: Vec<Representation<F>>,
    tops: Vec<Vec<usize>>,
    stages: usize,
}

impl<F: Field> Resolution<F> {
    pub fn new(alg: &Algebra<F>, m: &Representation<F>, stages: usize) -> Self {
        let q = alg.quiver();
        let mut syzygies = vec![m.clone()];
        let mut tops = Vec::new();
        for _ in 0..stages {
            let last = syzygies.last().expect("nonempty");
            tops.push(top_dims(q, last));
            if last.is_zero() {
                break;
            }
            let next = syzygy(alg, last).module;
            syzygies.push(next);
        }
        Resolution { syzygies, tops, stages }
    }

    /// Degree after which all syzygies vanish, if reached.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.syzygies.iter().position(Representation::is_zero).map(|k| k.saturating_sub(1))
    }

    pub fn syzygy(&self, k: usize) -> Option<&Representation<F>> {
        self.syzygies.get(k)
    }

    pub fn ext_dim(&self, quiver: &Quiver, m: usize, n: &Representation<F>) -> Result<usize> {
        if m == 0 {
            return Ok(hom_dim(quiver, &self.syzygies[0], n));
        }
        if let Some(k) = self.syzygies.iter().position(Representation::is_zero) {
            if m >= k.max(1) {
                return Ok(0);
            }
        }
        if m > self.stages || m >= self.syzygies.len() {
            return Err(Error::StageBoundExceeded(self.stages));
        }
        let (prev, cur) = (&self.syzygies[m - 1], &self.syzygies[m]);
        let p_hom: usize = self.tops[m - 1].iter().zip(&n.dims).map(|(k, d)| k * d).sum();
        Ok(hom_dim(quiver, cur, n) + hom_dim(quiver, prev, n) - p_hom)
    }
}

/// `dim Ext^m(M, N)` from a minimal projective resolution.
pub fn ext_dim<F: Field>(alg: &Algebra<F>, m: usize, x: &Representation<F>, y: &Representation<F>, stage_bound: usize) -> Result<usize> {
    if m > stage_bound {
        let res = Resolution::new(alg, x, stage_bound);
        return res.ext_dim(alg.quiver(), m, y);
    }
    Resolution::new(alg, x, m).ext_dim(alg.quiver(), m, y)
}

/// Injective envelope `M -> I0`, computed as the dual of the projective
/// cover of `DM` over the opposite algebra.
pub fn injective_envelope<F: Field>(op: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, ModuleMorphism<F>) {
    let cover = projective_cover(op, &m.dual());
    (cover.projective.module().dual(), cover.map.dual())
}

/// `(dim Hom(M,N), dim P(M,N), dim I(M,N))`: all morphisms, those factoring
/// through a projective, and those factoring through an injective.
pub fn stable_hom_dims<F: Field>(
    alg: &Algebra<F>,
    op: &Algebra<F>,
    m: &Representation<F>,
    n: &Representation<F>,
) -> (usize, usize, usize) {
    let q = alg.quiver();
    let hom = hom_dim(q, m, n);
    if hom == 0 {
        return (0, 0, 0);
    }
    let cover = projective_cover(alg, n);
    let through_p: Vec<Vec<F>> = hom_space(q, m, cover.projective.module())
        .iter()
        .map(|f| cover.map.compose(f).flatten())
        .collect();
    let (envelope, iota) = injective_envelope(op, m);
    let through_i: Vec<Vec<F>> = hom_space(q, &envelope, n)
        .iter()
        .map(|g| g.compose(&iota).flatten())
        .collect();
    (hom, span_rank(through_p), span_rank(through_i))
}

fn span_rank<F: Field>(vectors: Vec<Vec<F>>) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    Matrix::from_rows(vectors, width).expect("equal lengths").rank()
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoOutcome<F: Field> {
    Isomorphic(ModuleMorphism<F>),
    NotIsomorphic,
    Undetermined,
}

impl<F: Field> IsoOutcome<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Random combinations of a hom basis (8 tries), then a small exhaustive
/// grid when the hom space has dimension at most 4.
pub fn find_isomorphism<F: Field, R: Rng>(
    quiver: &Quiver,
    m: &Representation<F>,
    n: &Representation<F>,
    rng: &mut R,
) -> IsoOutcome<F> {
    if m.dims != n.dims {
        return IsoOutcome::NotIsomorphic;
    }
    if m.is_zero() {
        return IsoOutcome::Isomorphic(ModuleMorphism::zero(m, n));
    }
    let basis = hom_space(quiver, m, n);
    if basis.is_empty() || hom_dim(quiver, m, m) != basis.len() || hom_dim(quiver, n, m) != basis.len() {
        return IsoOutcome::NotIsomorphic;
    }
    for _ in 0..8 {
        let coeffs: Vec<F> = (0..basis.len()).map(|_| F::from_i64(rng.gen_range(-8..=8))).collect();
        let f = ModuleMorphism::linear_combination(&basis, &coeffs, m, n);
        if f.is_isomorphism() {
            return IsoOutcome::Isomorphic(f);
        }
    }
    if basis.len() <= 4 {
        let k = basis.len();
        for code in 0..5usize.pow(k as u32) {
            let coeffs: Vec<F> = (0..k).map(|i| F::from_i64((code / 5usize.pow(i as u32) % 5) as i64 - 2)).collect();
            let f = ModuleMorphism::linear_combination(&basis, &coeffs, m, n);
            if f.is_isomorphism() {
                return IsoOutcome::Isomorphic(f);
            }
        }
        return IsoOutcome::Undetermined;
    }
    IsoOutcome::Undetermined
}

/// For indecomposable `m` and `n` in characteristic zero: `Some(true)` when
/// every composite `M -> N -> M` lies in the trace-form radical
/// of `End(M)`, which certifies `m` and `n` are not isomorphic.
pub fn certified_non_isomorphic<F: Field>(quiver: &Quiver, m: &Representation<F>, n: &Representation<F>) -> Option<bool> {
    if F::characteristic() != 0 {
        return None;
    }
    if m.dims != n.dims {
        return Some(true);
    }
    let there = hom_space(quiver, m, n);
    let back = hom_space(quiver, n, m);
    let endos = hom_space(quiver, m, m);
    for f in &there {
        for g in &back {
            let s = g.compose(f);
            for e in &endos {
                let t = s.compose(e).maps.iter().fold(F::zero(), |acc, x| acc.add(&x.trace()));
                if !t.is_zero() {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

/// Dimension of the Jacobson radical of `End(M)`, via the trace form
/// (valid in characteristic zero only).
pub fn endomorphism_radical_dim<F: Field>(endos: &[ModuleMorphism<F>]) -> Option<usize> {
    if F::characteristic() != 0 {
        return None;
    }
    let k = endos.len();
    let gram = Matrix::from_fn(k, k, |i, j| {
        let p = endos[i].compose(&endos[j]);
        p.maps.iter().fold(F::zero(), |acc, m| acc.add(&m.trace()))
    });
    Some(k - gram.rank())
}

/// Result of splitting a module into indecomposable summands.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub summands: Vec<Representation<F>>,
    /// Every summand has a local endomorphism ring by a certificate
    /// (End dimension one, or trace-form radical of codimension one).
    pub certified: bool,
}

/// Splits along generalized eigenspaces of endomorphisms until every piece
/// has a local endomorphism ring or no further splitting is found.
pub fn decompose<F: Field, R: Rng>(quiver: &Quiver, m: &Representation<F>, rng: &mut R) -> Decomposition<F> {
    let mut stack = vec![m.clone()];
    let mut summands = Vec::new();
    let mut certified = true;
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        let endos = hom_space(quiver, &x, &x);
        if endos.len() == 1 {
            summands.push(x);
            continue;
        }
        if endomorphism_radical_dim(&endos) == Some(endos.len() - 1) {
            summands.push(x);
            continue;
        }
        match split_once(quiver, &x, &endos, rng) {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => {
                certified = false;
                summands.push(x);
            }
        }
    }
    Decomposition { summands, certified }
}

fn split_once<F: Field, R: Rng>(
    quiver: &Quiver,
    x: &Representation<F>,
    endos: &[ModuleMorphism<F>],
    rng: &mut R,
) -> Option<(Representation<F>, Representation<F>)> {
    let mut candidates: Vec<ModuleMorphism<F>> = endos.to_vec();
    for i in 0..endos.len() {
        for j in i + 1..endos.len() {
            candidates.push(endos[i].add(&endos[j]));
        }
    }
    for _ in 0..8 {
        let coeffs: Vec<F> = (0..endos.len()).map(|_| F::from_i64(rng.gen_range(-5..=5))).collect();
        candidates.push(ModuleMorphism::linear_combination(endos, &coeffs, x, x));
    }
    let n = x.total_dim();
    for phi in candidates {
        let mut eigen: Vec<F> = Vec::new();
        for m in &phi.maps {
            if m.rows() == 0 {
                continue;
            }
            let poly = m.char_poly().expect("square");
            for r in F::roots(poly.coeffs()) {
                if !eigen.contains(&r) {
                    eigen.push(r);
                }
            }
        }
        for lambda in eigen {
            let shifted: Vec<Matrix<F>> = phi
                .maps
                .iter()
                .map(|m| m.sub(&Matrix::scalar(m.rows(), &lambda)).pow(n))
                .collect();
            let nilpotent = shifted.iter().all(Matrix::is_zero);
            let invertible = shifted.iter().all(Matrix::is_invertible);
            if nilpotent || invertible {
                continue;
            }
            let ker = shifted.iter().map(Matrix::kernel_matrix).collect();
            let im = shifted.iter().map(Matrix::column_space).collect();
            let (a, _) = submodule(quiver, x, ker);
            let (b, _) = submodule(quiver, x, im);
            return Some((a, b));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_spec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn alg(text: &str) -> Algebra<Q> {
        Algebra::from_spec(&parse_spec(text).unwrap()).unwrap()
    }

    fn a2() -> Algebra<Q> {
        alg(r#"{"vertices":[1,2],"arrows":[{"name":"a","from":2,"to":1}]}"#)
    }

    fn ex62(rel: &str) -> Algebra<Q> {
        alg(&format!(
            r#"{{"vertices":[1,2,3,4],
            "arrows":[{{"name":"α","from":2,"to":1}},{{"name":"γ","from":3,"to":1}},
                      {{"name":"β","from":4,"to":2}},{{"name":"δ","from":4,"to":3}}],
            "relations":[{rel}]}}"#
        ))
    }

    fn a1() -> Algebra<Q> {
        ex62(r#"[{"coeff":"1","path":["α","β"]},{"coeff":"-1","path":["γ","δ"]}]"#)
    }

    fn a2_zero() -> Algebra<Q> {
        ex62(r#"[{"coeff":"1","path":["α","β"]}]"#)
    }

    fn all_standard_modules(a: &Algebra<Q>) -> Vec<Representation<Q>> {
        let mut out = Vec::new();
        for v in 0..a.num_vertices() {
            out.push(simple(a, v));
            out.push(projective(a, v));
            out.push(injective(a, v));
        }
        out
    }

    #[test]
    fn a2_standard_modules() {
        let a = a2();
        let p1 = projective(&a, 0);
        assert_eq!(p1.dims(), [1, 0]);
        assert_eq!(p1, simple(&a, 0));
        let p2 = projective(&a, 1);
        assert_eq!(p2.dims(), [1, 1]);
        assert_eq!(p2.map(0), &Matrix::from_i64_rows(&[vec![1]]));
        assert_eq!(injective(&a, 0).dims(), [1, 1]);
        assert_eq!(injective(&a, 1).dims(), [0, 1]);
    }

    #[test]
    fn a2_homs() {
        let a = a2();
        let q = a.quiver();
        let (p1, p2) = (projective(&a, 0), projective(&a, 1));
        assert_eq!(hom_dim(q, &p1, &p2), 1);
        assert_eq!(hom_dim(q, &p2, &p1), 0);
        for v in 0..2 {
            assert_eq!(hom_dim(q, &simple(&a, v), &simple(&a, v)), 1);
        }
        let basis = hom_space(q, &p1, &p2);
        assert!(basis[0].is_morphism(q, &p1, &p2));
    }

    #[test]
    fn brick_sets() {
        let a = a2();
        let q = a.quiver();
        assert!(is_brick_set(q, &[simple(&a, 0), simple(&a, 1)]).unwrap());
        assert!(!is_brick_set(q, &[simple(&a, 0), simple(&a, 0)]).unwrap());
        assert!(matches!(is_brick_set::<Q>(q, &[]), Err(Error::EmptyBrickSet)));
    }

    #[test]
    fn relation_checked_at_construction() {
        let a = a2_zero();
        let ones = |r, c| Matrix::<Q>::from_fn(r, c, |_, _| Q::one());
        let maps = vec![ones(1, 1), ones(1, 1), ones(1, 1), ones(1, 1)];
        assert!(matches!(
            Representation::new(&a, vec![1, 1, 1, 1], maps.clone()),
            Err(Error::RelationViolated(_))
        ));
        let a = a1();
        assert!(Representation::new(&a, vec![1, 1, 1, 1], maps.clone()).is_ok());
        let mut skewed = maps;
        skewed[3] = Matrix::from_i64_rows(&[vec![2]]);
        assert!(matches!(
            Representation::new(&a, vec![1, 1, 1, 1], skewed),
            Err(Error::RelationViolated(_))
        ));
    }

    #[test]
    fn standard_modules_satisfy_relations() {
        for a in [a1(), a2_zero()] {
            for m in all_standard_modules(&a) {
                Representation::new(&a, m.dims().to_vec(), m.maps().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn radical_top_socle() {
        let a = a1();
        let q = a.quiver();
        for v in 0..4 {
            let p = projective(&a, v);
            let (t, _) = top(q, &p);
            assert_eq!(t, simple(&a, v));
            let (s, _) = socle(q, &injective(&a, v));
            assert_eq!(s.dims(), simple(&a, v).dims());
        }
        let p4 = projective(&a, 3);
        assert_eq!(p4.dims(), [1, 1, 1, 1]);
        let (r, inc) = radical(q, &p4);
        assert_eq!(r.dims(), [1, 1, 1, 0]);
        assert!(inc.is_morphism(q, &r, &p4));
        assert!(inc.is_injective());
    }

    #[test]
    fn duality_is_an_involution() {
        let a = a1();
        let op = a.opposite().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in all_standard_modules(&a) {
            let d = m.dual();
            Representation::new(&op, d.dims().to_vec(), d.maps().to_vec()).unwrap();
            assert!(find_isomorphism(a.quiver(), &d.dual(), &m, &mut rng).is_isomorphic());
        }
        // D I(v) = P_op(v)
        for v in 0..4 {
            let di = injective(&a, v).dual();
            assert!(find_isomorphism(op.quiver(), &di, &projective(&op, v), &mut rng).is_isomorphic());
        }
    }

    #[test]
    fn syzygies() {
        let a = a2();
        let s2 = simple(&a, 1);
        let syz = syzygy(&a, &s2);
        assert_eq!(syz.module.dims(), [1, 0]);
        assert_eq!(syz.cover.projective.summands(), [1]);
        let p = projective(&a, 1);
        assert!(syzygy(&a, &p).module.is_zero());
        let pres = min_proj_presentation(&a, &p).unwrap();
        assert!(pres.p1.summands().is_empty());
        assert!(matches!(min_proj_presentation(&a, &Representation::zero(a.quiver())), Err(Error::ZeroModule)));

        let b = a2_zero();
        let s4 = simple(&b, 3);
        let syz = syzygy(&b, &s4);
        let p4 = projective(&b, 3);
        let expected: Vec<usize> = p4.dims().iter().zip(s4.dims()).map(|(x, y)| x - y).collect();
        assert_eq!(syz.module.dims(), expected.as_slice());
    }

    #[test]
    fn ext_in_a2() {
        let a = a2();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        assert_eq!(ext_dim(&a, 1, &s2, &s1, DEFAULT_STAGE_BOUND).unwrap(), 1);
        assert_eq!(ext_dim(&a, 1, &s1, &s2, DEFAULT_STAGE_BOUND).unwrap(), 0);
        assert_eq!(ext_dim(&a, 0, &s1, &s1, DEFAULT_STAGE_BOUND).unwrap(), 1);
        for m in 1..4 {
            for n in all_standard_modules(&a) {
                assert_eq!(ext_dim(&a, m, &projective(&a, 1), &n, DEFAULT_STAGE_BOUND).unwrap(), 0);
            }
        }
    }

    #[test]
    fn ext_two_in_example_algebras() {
        // S(4) over A1 has projective dimension 2 with Ext^2(S4, S1) = 1
        let a = a1();
        let (s4, s1) = (simple(&a, 3), simple(&a, 0));
        assert_eq!(ext_dim(&a, 2, &s4, &s1, DEFAULT_STAGE_BOUND).unwrap(), 1);
        assert_eq!(ext_dim(&a, 3, &s4, &s1, DEFAULT_STAGE_BOUND).unwrap(), 0);
    }

    #[test]
    fn stage_bound_reported() {
        // the loop x with x^2 = 0 has infinite global dimension
        let a = alg(r#"{"vertices":[1],"arrows":[{"name":"x","from":1,"to":1}],
                        "relations":[[{"coeff":"1","path":["x","x"]}]]}"#);
        let s = simple(&a, 0);
        assert_eq!(ext_dim(&a, 3, &s, &s, DEFAULT_STAGE_BOUND).unwrap(), 1);
        assert!(matches!(ext_dim(&a, 5, &s, &s, 4), Err(Error::StageBoundExceeded(4))));
    }

    #[test]
    fn stable_homs() {
        let a = a1();
        let op = a.opposite().unwrap();
        let q = a.quiver();
        let mods = all_standard_modules(&a);
        for m in &mods {
            for n in &mods {
                let (h, p, i) = stable_hom_dims(&a, &op, m, n);
                assert_eq!(h, hom_dim(q, m, n));
                assert!(p <= h && i <= h);
            }
            for v in 0..4 {
                let pv = projective(&a, v);
                let (h, p, _) = stable_hom_dims(&a, &op, m, &pv);
                assert_eq!(p, h);
                let iv = injective(&a, v);
                let (h, _, i) = stable_hom_dims(&a, &op, &iv, m);
                assert_eq!(i, h);
            }
        }
        let b = a2();
        let opb = b.opposite().unwrap();
        assert_eq!(stable_hom_dims(&b, &opb, &simple(&b, 0), &simple(&b, 1)), (0, 0, 0));
    }

    #[test]
    fn hom_from_projective_and_into_injective() {
        let a = a2_zero();
        let q = a.quiver();
        for m in all_standard_modules(&a) {
            for v in 0..4 {
                assert_eq!(hom_dim(q, &projective(&a, v), &m), m.dim(v));
                assert_eq!(hom_dim(q, &m, &injective(&a, v)), m.dim(v));
            }
        }
    }

    #[test]
    fn literal_roundtrip() {
        let a = a1();
        let p4 = projective(&a, 3);
        let lit = p4.to_literal(a.quiver());
        let back = Representation::from_literal(&a, &lit).unwrap();
        assert_eq!(back, p4);
        let bad: ModuleLiteral = serde_json::from_str(r#"{"dims":{"1":1,"2":1},"maps":{"α":[["1","2"]]}}"#).unwrap();
        assert!(Representation::from_literal(&a, &bad).is_err());
    }

    #[test]
    fn decomposition_of_sums() {
        let a = a1();
        let q = a.quiver();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let parts = [projective(&a, 3), simple(&a, 1), simple(&a, 1), injective(&a, 2)];
        let refs: Vec<&Representation<Q>> = parts.iter().collect();
        let (sum, _) = direct_sum(q, &refs);
        let d = decompose(q, &sum, &mut rng);
        assert!(d.certified);
        assert_eq!(d.summands.len(), 4);
        for p in &parts {
            assert!(d.summands.iter().any(|s| find_isomorphism(q, s, p, &mut rng).is_isomorphic()));
        }
    }

    #[test]
    fn injectivity_of_envelope_and_surjectivity_of_cover() {
        let a = a2_zero();
        let op = a.opposite().unwrap();
        let q = a.quiver();
        for m in all_standard_modules(&a) {
            let cover = projective_cover(&a, &m);
            assert!(cover.map.is_surjective());
            assert!(cover.map.is_morphism(q, cover.projective.module(), &m));
            let (env, iota) = injective_envelope(&op, &m);
            assert!(iota.is_injective());
            assert!(iota.is_morphism(q, &m, &env));
            // minimality: the kernel of the cover lies in the radical
            let (k, inc) = kernel(q, cover.projective.module(), &cover.map);
            let rad = radical_bases(q, cover.projective.module());
            for v in 0..4 {
                let joined = rad[v].hstack(inc.at(v));
                assert_eq!(joined.rank(), rad[v].cols(), "{:?}", k.dims());
            }
        }
    }
}
