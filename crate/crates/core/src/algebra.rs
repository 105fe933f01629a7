//! Truncated ideal closure and the finite-dimensional quotient algebra kQ/I.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::quiver::{BoundQuiverSpec, Path, Quiver, Relation};

/// Sparse vector: `(index, coefficient)` pairs with nonzero coefficients.
pub type Sparse<F> = Vec<(usize, F)>;

/// The two-sided ideal generated by a set of relations, intersected with
/// the span of paths of length at most `bound`, in reduced row echelon form.
///
/// Columns are ordered longest path first so that pivots land on long
/// paths and the residue basis consists of short ones.
#[derive(Clone, Debug)]
pub struct IdealSpan<F: Field> {
    bound: usize,
    columns: Vec<Path>,
    column_of: HashMap<Path, usize>,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> IdealSpan<F> {
    /// Closes the relations under left and right multiplication by arrows.
    /// Does not check admissibility; see [`ideal_closure`].
    pub fn generate(quiver: &Quiver, relations: &[Relation<F>], bound: usize) -> Self {
        let mut columns = quiver.enumerate_paths(bound);
        columns.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| quiver.path_order(a, b)));
        let column_of: HashMap<Path, usize> = columns.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let width = columns.len();

        let mut echelon = IncrementalEchelon::new(width);
        let mut queue: Vec<Vec<F>> = Vec::new();
        for r in relations {
            let mut v = vec![F::zero(); width];
            for (c, p) in r.terms() {
                if let Some(&i) = column_of.get(p) {
                    v[i] = v[i].add(c);
                }
            }
            queue.push(v);
        }
        while let Some(v) = queue.pop() {
            let Some(v) = echelon.insert(v) else { continue };
            for a in 0..quiver.num_arrows() {
                let arrow = quiver.path_from_indices(vec![a]).expect("single arrow");
                for left in [true, false] {
                    let mut w = vec![F::zero(); width];
                    let mut nonzero = false;
                    for (i, c) in v.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let p = &columns[i];
                        let product = if left { arrow.compose(p) } else { p.compose(&arrow) };
                        if let Some(q) = product {
                            if let Some(&j) = column_of.get(&q) {
                                w[j] = w[j].add(c);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        queue.push(w);
                    }
                }
            }
        }

        let (rows, pivots) = echelon.into_reduced(width);
        let pivot_row = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        IdealSpan {
            bound,
            columns,
            column_of,
            rows,
            pivots,
            pivot_row,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> &[Path] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The first path of length exactly `bound` outside the span, if any.
    pub fn certificate_failure(&self) -> Option<&Path> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() == self.bound)
            .find(|(i, _)| !self.pivot_row.contains_key(i))
            .map(|(_, p)| p)
    }

    pub fn is_admissible(&self) -> bool {
        self.certificate_failure().is_none()
    }

    /// Reduction of a path modulo the span, supported on non-pivot columns.
    /// Paths longer than the bound reduce to zero.
    pub fn reduce_path(&self, p: &Path) -> Sparse<F> {
        let Some(&col) = self.column_of.get(p) else {
            return Vec::new();
        };
        match self.pivot_row.get(&col) {
            None => vec![(col, F::one())],
            Some(&r) => self.rows[r]
                .iter()
                .enumerate()
                .filter(|(c, x)| *c != col && !x.is_zero())
                .map(|(c, x)| (c, x.neg()))
                .collect(),
        }
    }

    /// Reduction of a linear combination of paths.
    pub fn reduce(&self, terms: &[(F, Path)]) -> Sparse<F> {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (c, p) in terms {
            for (i, x) in self.reduce_path(p) {
                let e = acc.entry(i).or_insert_with(F::zero);
                *e = e.add(&c.mul(&x));
            }
        }
        let mut out: Sparse<F> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    fn check_lengths(&self, quiver: &Quiver, terms: &[(F, Path)]) -> Result<()> {
        for (_, p) in terms {
            if p.len() > self.bound {
                return Err(Error::PathTooLong {
                    path: quiver.path_name(p),
                    bound: self.bound,
                });
            }
        }
        Ok(())
    }

    /// Whether the combination lies in the ideal.
    pub fn contains(&self, quiver: &Quiver, terms: &[(F, Path)]) -> Result<bool> {
        self.check_lengths(quiver, terms)?;
        Ok(self.reduce(terms).is_empty())
    }

    /// Solves `a + c·b ∈ I` for the scalar `c`.
    pub fn solve_pencil(&self, quiver: &Quiver, a: &[(F, Path)], b: &[(F, Path)]) -> Result<Pencil<F>> {
        self.check_lengths(quiver, a)?;
        self.check_lengths(quiver, b)?;
        let ra = self.reduce(a);
        let rb = self.reduce(b);
        Ok(pencil_from_residues(&ra, &rb))
    }
}

/// Solution set of `a + c·b = 0` in a vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pencil<F> {
    None,
    All,
    Unique(F),
}

pub(crate) fn pencil_from_residues<F: Field>(ra: &Sparse<F>, rb: &Sparse<F>) -> Pencil<F> {
    let Some((lead, lb)) = rb.first() else {
        return if ra.is_empty() { Pencil::All } else { Pencil::None };
    };
    let la = ra.iter().find(|(i, _)| i == lead).map(|(_, x)| x.clone()).unwrap_or_else(F::zero);
    let c = la.neg().div(lb).expect("nonzero leading coefficient");
    let mut acc: HashMap<usize, F> = ra.iter().cloned().collect();
    for (i, x) in rb {
        let e = acc.entry(*i).or_insert_with(F::zero);
        *e = e.add(&c.mul(x));
    }
    if acc.values().all(F::is_zero) {
        Pencil::Unique(c)
    } else {
        Pencil::None
    }
}

/// Row echelon form maintained under insertion, rows sorted by pivot.
struct IncrementalEchelon<F: Field> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> IncrementalEchelon<F> {
    fn new(_width: usize) -> Self {
        IncrementalEchelon { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
        }
        v
    }

    /// Inserts the reduction of `v`; returns it (normalized) when new.
    fn insert(&mut self, v: Vec<F>) -> Option<Vec<F>> {
        let mut v = self.reduce(v);
        let lead = v.iter().position(|x| !x.is_zero())?;
        let inv = v[lead].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        let at = self.rows.partition_point(|(p, _)| *p < lead);
        self.rows.insert(at, (lead, v.clone()));
        Some(v)
    }

    fn into_reduced(self, width: usize) -> (Vec<Vec<F>>, Vec<usize>) {
        if self.rows.is_empty() {
            return (Vec::new(), Vec::new());
        }
        let m = Matrix::from_rows(self.rows.into_iter().map(|(_, r)| r).collect(), width).expect("consistent widths");
        let e = m.rref();
        let rows = e.matrix.row_vecs().into_iter().take(e.pivots.len()).collect();
        (rows, e.pivots)
    }
}

/// Closure plus admissibility certificate.
pub fn ideal_closure<F: Field>(quiver: &Quiver, relations: &[Relation<F>], bound: usize) -> Result<IdealSpan<F>> {
    if bound < 2 {
        return Err(Error::Invalid("path-length bound must be at least 2".into()));
    }
    let span = IdealSpan::generate(quiver, relations, bound);
    if let Some(p) = span.certificate_failure() {
        return Err(Error::NotAdmissibleAtBound {
            bound,
            path: quiver.path_name(p),
        });
    }
    Ok(span)
}

/// Membership test for a candidate relation.
pub fn ideal_member<F: Field>(quiver: &Quiver, span: &IdealSpan<F>, candidate: &Relation<F>) -> Result<bool> {
    span.contains(quiver, candidate.terms())
}

/// A bound quiver algebra A = kQ/I with residue-path basis and structure
/// constants.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    name: String,
    quiver: Quiver,
    relations: Vec<Relation<F>>,
    span: IdealSpan<F>,
    basis: Vec<Path>,
    basis_of_column: HashMap<usize, usize>,
    products: Vec<Vec<Sparse<F>>>,
    idempotents: Vec<usize>,
    between: Vec<Vec<Vec<usize>>>,
}

impl<F: Field> Algebra<F> {
    pub fn new(name: impl Into<String>, quiver: Quiver, relations: Vec<Relation<F>>, bound: usize) -> Result<Self> {
        let span = ideal_closure(&quiver, &relations, bound)?;
        Ok(Self::from_span(name.into(), quiver, relations, span))
    }

    /// Builds the algebra of a spec over the field `F`.
    pub fn from_spec(spec: &BoundQuiverSpec) -> Result<Self> {
        let relations = spec
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let terms = r
                    .terms()
                    .iter()
                    .map(|(c, p)| Ok((F::from_rational(c)?, p.clone())))
                    .collect::<Result<Vec<_>>>()?;
                Relation::new(&spec.quiver, terms, i)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec.name.clone(), spec.quiver.clone(), relations, spec.path_bound())
    }

    fn from_span(name: String, quiver: Quiver, relations: Vec<Relation<F>>, span: IdealSpan<F>) -> Self {
        let mut free: Vec<usize> = (0..span.columns.len()).filter(|c| !span.pivot_row.contains_key(c)).collect();
        free.sort_by(|&a, &b| quiver.path_order(&span.columns[a], &span.columns[b]));
        let basis: Vec<Path> = free.iter().map(|&c| span.columns[c].clone()).collect();
        let basis_of_column: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        let n = quiver.num_vertices();
        let mut between = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis.iter().enumerate() {
            between[p.target()][p.source()].push(i);
        }
        let idempotents = (0..n)
            .map(|v| {
                let col = span.column_of[&quiver.idempotent(v)];
                basis_of_column[&col]
            })
            .collect();

        let mut alg = Algebra {
            name,
            quiver,
            relations,
            span,
            basis,
            basis_of_column,
            products: Vec::new(),
            idempotents,
            between,
        };
        let products = (0..alg.dim())
            .map(|i| {
                (0..alg.dim())
                    .map(|j| match alg.basis[i].compose(&alg.basis[j]) {
                        Some(p) => alg.normal_form(&p),
                        None => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        alg.products = products;
        alg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation<F>] {
        &self.relations
    }

    pub fn ideal(&self) -> &IdealSpan<F> {
        &self.span
    }

    pub fn bound(&self) -> usize {
        self.span.bound
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_names(&self) -> Vec<String> {
        self.basis.iter().map(|p| self.quiver.path_name(p)).collect()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    /// Basis indices of `e_target A e_source`, i.e. residue paths from
    /// `source` to `target`.
    pub fn paths_between(&self, source: usize, target: usize) -> &[usize] {
        &self.between[target][source]
    }

    /// Residue paths starting at `v` (a basis of `A e_v`), in basis order.
    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source() == v).collect()
    }

    /// Residue paths ending at `v` (a basis of `e_v A`), in basis order.
    pub fn paths_to(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].target() == v).collect()
    }

    /// Basis index of a single arrow, unless the arrow lies in the ideal.
    pub fn arrow_element(&self, a: usize) -> Sparse<F> {
        let p = self.quiver.path_from_indices(vec![a]).expect("arrow");
        self.normal_form(&p)
    }

    /// Coordinates of a path of the quiver in the residue basis.
    pub fn normal_form(&self, p: &Path) -> Sparse<F> {
        let mut out: Sparse<F> = self
            .span
            .reduce_path(p)
            .into_iter()
            .map(|(c, x)| (self.basis_of_column[&c], x))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Coordinates of a linear combination of paths.
    pub fn element(&self, terms: &[(F, Path)]) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        for (c, p) in terms {
            for (i, x) in self.normal_form(p) {
                v[i] = v[i].add(&c.mul(&x));
            }
        }
        v
    }

    /// Structure constants of `b_i · b_j`.
    pub fn product(&self, i: usize, j: usize) -> &Sparse<F> {
        &self.products[i][j]
    }

    pub fn multiply(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in &self.products[i][j] {
                    out[*k] = out[*k].add(&ab.mul(c));
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a·x` restricted to `from` (basis indices) with values
    /// expressed in `to`. Entries outside `to` must vanish.
    pub fn left_mult_matrix(&self, a: &Sparse<F>, from: &[usize], to: &[usize]) -> Matrix<F> {
        let pos: HashMap<usize, usize> = to.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut m = Matrix::<F>::zeros(to.len(), from.len());
        for (col, &j) in from.iter().enumerate() {
            for (i, c) in a {
                for (k, x) in &self.products[*i][j] {
                    let r = *pos.get(k).expect("product stays in the target space");
                    m[(r, col)] = m[(r, col)].add(&c.mul(x));
                }
            }
        }
        m
    }

    /// Matrix of `x ↦ x·a` restricted to `from`, valued in `to`.
    pub fn right_mult_matrix(&self, a: &Sparse<F>, from: &[usize], to: &[usize]) -> Matrix<F> {
        let pos: HashMap<usize, usize> = to.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut m = Matrix::<F>::zeros(to.len(), from.len());
        for (col, &j) in from.iter().enumerate() {
            for (i, c) in a {
                for (k, x) in &self.products[j][*i] {
                    let r = *pos.get(k).expect("product stays in the target space");
                    m[(r, col)] = m[(r, col)].add(&c.mul(x));
                }
            }
        }
        m
    }

    /// The opposite algebra: reversed arrows, reversed relation paths, same
    /// bound.
    pub fn opposite(&self) -> Result<Algebra<F>> {
        let quiver = self.quiver.opposite();
        let relations = self.relations.iter().map(Relation::reversed).collect();
        Algebra::new(format!("{}^op", self.name), quiver, relations, self.bound())
    }

    pub fn contains(&self, terms: &[(F, Path)]) -> Result<bool> {
        self.span.contains(&self.quiver, terms)
    }

    pub fn solve_pencil(&self, a: &[(F, Path)], b: &[(F, Path)]) -> Result<Pencil<F>> {
        self.span.solve_pencil(&self.quiver, a, b)
    }
}

/// Builds the algebra of a rational spec (convenience for the common case).
pub fn algebra_basis(spec: &BoundQuiverSpec) -> Result<Algebra<Rational>> {
    Algebra::from_spec(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::parse_spec;
    use proptest::prelude::*;

    type Q = Rational;

    fn ex62_quiver() -> Quiver {
        Quiver::new(
            vec![1, 2, 3, 4],
            vec![
                ("α".into(), 2, 1),
                ("γ".into(), 3, 1),
                ("β".into(), 4, 2),
                ("δ".into(), 4, 3),
            ],
        )
        .unwrap()
    }

    fn rel(q: &Quiver, terms: &[(i64, &[&str])]) -> Relation<Q> {
        let t = terms.iter().map(|(c, p)| (Q::integer(*c), q.path(p).unwrap())).collect();
        Relation::new(q, t, 0).unwrap()
    }

    fn terms(q: &Quiver, terms: &[(i64, &[&str])]) -> Vec<(Q, Path)> {
        terms.iter().map(|(c, p)| (Q::integer(*c), q.path(p).unwrap())).collect()
    }

    #[test]
    fn a2_closure_is_empty_and_admissible() {
        let q = Quiver::new(vec![1, 2], vec![("a".into(), 2, 1)]).unwrap();
        let span = ideal_closure::<Q>(&q, &[], 2).unwrap();
        assert_eq!(span.rank(), 0);
        let alg = Algebra::<Q>::new("a2", q, vec![], 2).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.basis_names(), ["e1", "e2", "a"]);
    }

    #[test]
    fn example_62_certificate_depends_on_bound() {
        let q = ex62_quiver();
        let r = rel(&q, &[(1, &["α", "β"]), (-1, &["γ", "δ"])]);
        let span = IdealSpan::generate(&q, std::slice::from_ref(&r), 2);
        assert_eq!(span.rank(), 1);
        assert!(matches!(
            ideal_closure(&q, std::slice::from_ref(&r), 2),
            Err(Error::NotAdmissibleAtBound { bound: 2, .. })
        ));
        let span = ideal_closure(&q, std::slice::from_ref(&r), 3).unwrap();
        assert_eq!(span.rank(), 1);
        assert!(ideal_member(&q, &span, &r).unwrap());
        assert!(!span.contains(&q, &terms(&q, &[(1, &["α", "β"])])).unwrap());

        let alg = Algebra::new("A1", q, vec![r], 3).unwrap();
        assert_eq!(alg.dim(), 9);
    }

    #[test]
    fn example_62_second_algebra_pencil() {
        let q = ex62_quiver();
        let r = rel(&q, &[(1, &["α", "β"])]);
        let span = ideal_closure(&q, &[r], 3).unwrap();
        let a = terms(&q, &[(1, &["α", "β"])]);
        let b = terms(&q, &[(1, &["γ", "δ"])]);
        // αβ + c·γδ ∈ I forces c = 0, so no nonzero c exists
        assert_eq!(span.solve_pencil(&q, &a, &b).unwrap(), Pencil::Unique(Q::integer(0)));
        let r1 = rel(&ex62_quiver(), &[(1, &["α", "β"]), (-1, &["γ", "δ"])]);
        let span1 = ideal_closure(&q, &[r1], 3).unwrap();
        assert_eq!(span1.solve_pencil(&q, &a, &b).unwrap(), Pencil::Unique(Q::integer(-1)));
    }

    #[test]
    fn loop_with_square_relation() {
        let q = Quiver::new(vec![1], vec![("x".into(), 1, 1)]).unwrap();
        let r = rel(&q, &[(1, &["x", "x"])]);
        let span = ideal_closure(&q, std::slice::from_ref(&r), 3).unwrap();
        assert!(span.contains(&q, &terms(&q, &[(1, &["x", "x"])])).unwrap());
        assert!(span.contains(&q, &terms(&q, &[(1, &["x", "x", "x"])])).unwrap());
        assert!(span.contains(&q, &terms(&q, &[(1, &["x", "x", "x", "x"])])).is_err());
        let alg = Algebra::new("loop", q, vec![r], 3).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn loop_without_relation_is_not_admissible() {
        let q = Quiver::new(vec![1], vec![("x".into(), 1, 1)]).unwrap();
        assert!(ideal_closure::<Q>(&q, &[], 4).is_err());
    }

    #[test]
    fn closure_is_idempotent() {
        let spec = parse_spec(
            r#"{"vertices":[1,2,3],"arrows":[{"name":"a","from":1,"to":2},{"name":"b","from":2,"to":3},{"name":"c","from":3,"to":1}],
                "relations":[[{"coeff":"1","path":["b","a"]}],[{"coeff":"1","path":["c","b"]}],[{"coeff":"1","path":["a","c"]}]]}"#,
        )
        .unwrap();
        let span = ideal_closure(&spec.quiver, &spec.relations, 4).unwrap();
        let again: Vec<Relation<Q>> = span
            .rows()
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                let t: Vec<(Q, Path)> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, x)| (x.clone(), span.columns()[c].clone()))
                    .collect();
                Relation::new(&spec.quiver, t, i).ok()
            })
            .collect();
        let span2 = ideal_closure(&spec.quiver, &again, 4).unwrap();
        assert_eq!(span2.rows(), span.rows());
        let alg = Algebra::<Q>::from_spec(&spec).unwrap();
        assert_eq!(alg.dim(), 6);
    }

    #[test]
    fn prime_field_algebra() {
        let q = ex62_quiver();
        let t = vec![
            (Fp::<7>::from_i64(1), q.path(&["α", "β"]).unwrap()),
            (Fp::<7>::from_i64(-1), q.path(&["γ", "δ"]).unwrap()),
        ];
        let r = Relation::new(&q, t, 0).unwrap();
        let alg = Algebra::new("A1", q, vec![r], 3).unwrap();
        assert_eq!(alg.dim(), 9);
    }

    fn check_algebra_axioms<F: Field>(alg: &Algebra<F>) {
        let n = alg.dim();
        let unit: Vec<F> = {
            let mut u = vec![F::zero(); n];
            for v in 0..alg.num_vertices() {
                u[alg.idempotent(v)] = F::one();
            }
            u
        };
        let basis_vec = |i: usize| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        };
        for i in 0..n {
            let b = basis_vec(i);
            assert_eq!(alg.multiply(&unit, &b), b);
            assert_eq!(alg.multiply(&b, &unit), b);
        }
        for u in 0..alg.num_vertices() {
            for v in 0..alg.num_vertices() {
                let p = alg.multiply(&basis_vec(alg.idempotent(u)), &basis_vec(alg.idempotent(v)));
                let expected = if u == v { basis_vec(alg.idempotent(v)) } else { vec![F::zero(); n] };
                assert_eq!(p, expected);
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (basis_vec(i), basis_vec(j), basis_vec(k));
                    let left = alg.multiply(&alg.multiply(&a, &b), &c);
                    let right = alg.multiply(&a, &alg.multiply(&b, &c));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn example_algebras_are_associative_and_unital() {
        let q = ex62_quiver();
        let r = rel(&q, &[(1, &["α", "β"]), (-1, &["γ", "δ"])]);
        check_algebra_axioms(&Algebra::new("A1", q.clone(), vec![r], 3).unwrap());
        check_algebra_axioms(&Algebra::<Q>::new("kQ", q, vec![], 3).unwrap());
    }

    /// Random commutativity relations on a square with a tail.
    fn random_relations() -> impl Strategy<Value = Vec<(i64, i64, bool)>> {
        prop::collection::vec((-3i64..4, -3i64..4, any::<bool>()), 0..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_quotients_are_algebras(rels in random_relations()) {
            let q = Quiver::new(
                vec![1, 2, 3, 4, 5],
                vec![
                    ("a".into(), 2, 1), ("b".into(), 4, 2), ("c".into(), 3, 1),
                    ("d".into(), 4, 3), ("e".into(), 5, 4),
                ],
            ).unwrap();
            let mut relations = Vec::new();
            for (i, (x, y, long)) in rels.into_iter().enumerate() {
                let t = if long {
                    vec![(Q::integer(x), q.path(&["a", "b", "e"]).unwrap()), (Q::integer(y), q.path(&["c", "d", "e"]).unwrap())]
                } else {
                    vec![(Q::integer(x), q.path(&["a", "b"]).unwrap()), (Q::integer(y), q.path(&["c", "d"]).unwrap())]
                };
                if let Ok(r) = Relation::new(&q, t, i) {
                    relations.push(r);
                }
            }
            let alg = Algebra::new("r", q.clone(), relations.clone(), 4).unwrap();
            check_algebra_axioms(&alg);
            for r in &relations {
                prop_assert!(alg.contains(r.terms()).unwrap());
            }
            let total_paths = q.enumerate_paths(4).len();
            prop_assert_eq!(alg.dim(), total_paths - alg.ideal().rank());
        }
    }
}
