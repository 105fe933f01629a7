//! Quotients of canonical algebras of types A, D and E: builders,
//! recognition, the fpd classifier and its witnesses.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Pencil};
use crate::ar::{almost_split_middle, enumerate_indecomposables, is_representation_directed, tau, tau_inverse, CatalogConfig, OrderOrCycle};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::fp::{adjacency_matrix_modules, counts_to_matrix, fpd, AdjacencyAssignment, CheckItem, FpContext};
use crate::linalg::Matrix;
use crate::quiver::{BoundQuiverSpec, Path, Quiver, Relation};
use crate::repr::{decompose, find_isomorphism, injective, is_brick_set, projective, radical, simple, Representation};
use crate::spectral::{spectral_radius, SpectralValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type")]
pub enum FamilyTag {
    A { n: usize, m: usize },
    D { n: usize },
    E { n: usize },
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::A { n, m } => write!(f, "A({n},{m})"),
            FamilyTag::D { n } => write!(f, "D({n})"),
            FamilyTag::E { n } => write!(f, "E({n})"),
        }
    }
}

impl FamilyTag {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilyTag::A { n, .. } if n >= 1 => Ok(()),
            FamilyTag::D { n } if n >= 4 => Ok(()),
            FamilyTag::E { n } if (6..=8).contains(&n) => Ok(()),
            other => Err(Error::FamilyOutOfRange(other.to_string())),
        }
    }

    pub fn num_vertices(&self) -> usize {
        match *self {
            FamilyTag::A { n, m } => n + m + 1,
            FamilyTag::D { n } | FamilyTag::E { n } => n + 1,
        }
    }

    /// Arrows `(name, from, to)` with the sink numbered 1.
    fn arrows(&self) -> Vec<(String, i64, i64)> {
        let arm = |prefix: &str, interior: Vec<i64>, source: i64| {
            // interior vertices listed from the sink outwards
            let mut chain = vec![1];
            chain.extend(interior);
            chain.push(source);
            (1..chain.len())
                .map(|i| (format!("{prefix}{i}"), chain[i], chain[i - 1]))
                .collect::<Vec<_>>()
        };
        let range = |a: usize, b: usize| (a..=b).map(|v| v as i64).collect::<Vec<_>>();
        match *self {
            FamilyTag::A { n, m } => {
                let s = (n + m + 1) as i64;
                let mut out = arm("α", range(2, n), s);
                out.extend(arm("γ", range(n + 1, n + m), s));
                out
            }
            FamilyTag::D { n } => {
                let s = (n + 1) as i64;
                let mut out = arm("α", range(2, n - 2), s);
                out.extend(arm("β", vec![(n - 1) as i64], s));
                out.extend(arm("γ", vec![n as i64], s));
                out
            }
            FamilyTag::E { n } => {
                let s = (n + 1) as i64;
                let mut out = arm("α", range(2, n - 3), s);
                out.extend(arm("β", vec![(n - 2) as i64], s));
                out.extend(arm("γ", vec![(n - 1) as i64, n as i64], s));
                out
            }
        }
    }

    pub fn quiver(&self) -> Result<Quiver> {
        self.validate()?;
        Quiver::new((1..=self.num_vertices() as i64).collect(), self.arrows())
    }

    /// Arrow names of each arm in composition order (`α1` applied last).
    pub fn arm_names(&self) -> Vec<Vec<String>> {
        let arrows = self.arrows();
        let letters: &[&str] = match self {
            FamilyTag::A { .. } => &["α", "γ"],
            _ => &["α", "β", "γ"],
        };
        letters
            .iter()
            .map(|l| {
                arrows
                    .iter()
                    .filter(|(name, _, _)| name.starts_with(l))
                    .map(|(name, _, _)| name.clone())
                    .collect()
            })
            .collect()
    }
}

/// The standard ideals used by the built-in specs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardIdeal {
    /// The canonical algebra itself: `0` for A, the arm-sum relation for D/E.
    Canonical,
    /// A: `⟨α-arm + γ-arm⟩`; D/E: `⟨α + β + γ, β - γ⟩`.
    Directed,
    /// A only: `⟨α-arm⟩`.
    AlphaArm,
}

/// Builds the family quiver with the given relations (arrow names as in
/// [`FamilyTag::arm_names`]). For D and E the arm-sum relation is added
/// when the ideal does not already contain it; the notice says so.
pub fn build_family(tag: FamilyTag, relations: &[Vec<(Rational, Vec<String>)>]) -> Result<(BoundQuiverSpec, Vec<String>)> {
    let quiver = tag.quiver()?;
    let mut rels = relations
        .iter()
        .enumerate()
        .map(|(i, terms)| {
            let terms: Vec<(Rational, Path)> = terms
                .iter()
                .map(|(c, names)| {
                    let names: Vec<&str> = names.iter().map(String::as_str).collect();
                    Ok((c.clone(), quiver.path(&names)?))
                })
                .collect::<Result<_>>()?;
            Relation::new(&quiver, terms, i)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut notices = Vec::new();
    if !matches!(tag, FamilyTag::A { .. }) {
        let arm_sum: Vec<(Rational, Path)> = tag
            .arm_names()
            .iter()
            .map(|arm| {
                let names: Vec<&str> = arm.iter().map(String::as_str).collect();
                Ok((Rational::one(), quiver.path(&names)?))
            })
            .collect::<Result<_>>()?;
        let spec = BoundQuiverSpec::new("", quiver.clone(), rels.clone());
        let present = !rels.is_empty() && Algebra::<Rational>::from_spec(&spec)?.contains(&arm_sum)?;
        if !present {
            rels.push(Relation::new(&quiver, arm_sum, rels.len())?);
            notices.push("added the mandatory arm-sum relation".to_string());
        }
    }
    let spec = BoundQuiverSpec::new(format!("canonical-{tag}"), quiver, rels);
    Ok((spec, notices))
}

pub fn standard_family(tag: FamilyTag, ideal: StandardIdeal) -> Result<BoundQuiverSpec> {
    tag.validate()?;
    let arms = tag.arm_names();
    let one = Rational::one;
    let relations: Vec<Vec<(Rational, Vec<String>)>> = match (tag, ideal) {
        (_, StandardIdeal::Canonical) => Vec::new(),
        (FamilyTag::A { .. }, StandardIdeal::Directed) => vec![vec![(one(), arms[0].clone()), (one(), arms[1].clone())]],
        (FamilyTag::A { .. }, StandardIdeal::AlphaArm) => vec![vec![(one(), arms[0].clone())]],
        (_, StandardIdeal::Directed) => vec![
            arms.iter().map(|a| (one(), a.clone())).collect(),
            vec![(one(), arms[1].clone()), (Rational::integer(-1), arms[2].clone())],
        ],
        (_, StandardIdeal::AlphaArm) => {
            return Err(Error::Invalid("the α-arm ideal applies to type A only".into()));
        }
    };
    let suffix = match ideal {
        StandardIdeal::Canonical => "",
        StandardIdeal::Directed => "/directed",
        StandardIdeal::AlphaArm => "/alpha",
    };
    let (mut spec, _) = build_family(tag, &relations)?;
    spec.name = format!("canonical-{tag}{suffix}");
    Ok(spec)
}

/// A quiver recognised as a family member: arms as arrow-index lists in
/// composition order (first entry ends at the sink).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFamily {
    pub tag: FamilyTag,
    pub sink: usize,
    pub source: usize,
    /// α, then β (D/E only), then γ.
    pub arms: Vec<Vec<usize>>,
}

impl CanonicalFamily {
    pub fn arm_path(&self, quiver: &Quiver, k: usize) -> Path {
        quiver.path_from_indices(self.arms[k].clone()).expect("arm is a path")
    }

    /// Interior vertices of arm `k`, from the sink outwards.
    pub fn interior(&self, quiver: &Quiver, k: usize) -> Vec<usize> {
        self.arms[k][1..].iter().map(|&a| quiver.arrow(a).target).collect()
    }

    pub fn arm_label(&self, k: usize) -> &'static str {
        match (self.arms.len(), k) {
            (2, 1) | (3, 2) => "γ",
            (3, 1) => "β",
            _ => "α",
        }
    }
}

/// Recognises the shape of a family member: one sink, one source, and
/// two or three arms between them with no other vertices or arrows.
pub fn recognize_family(quiver: &Quiver) -> Result<CanonicalFamily> {
    let nv = quiver.num_vertices();
    let mut indeg = vec![0; nv];
    let mut outdeg = vec![0; nv];
    for a in quiver.arrows() {
        outdeg[a.source] += 1;
        indeg[a.target] += 1;
    }
    let sinks: Vec<usize> = (0..nv).filter(|&v| outdeg[v] == 0).collect();
    let sources: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let ([sink], [source]) = (sinks.as_slice(), sources.as_slice()) else {
        return Err(Error::NotCanonical);
    };
    let (sink, source) = (*sink, *source);
    if (0..nv).any(|v| v != sink && v != source && (indeg[v] != 1 || outdeg[v] != 1)) {
        return Err(Error::NotCanonical);
    }
    let mut arms: Vec<Vec<usize>> = Vec::new();
    for (start, a) in quiver.arrows().iter().enumerate() {
        if a.source != source {
            continue;
        }
        let mut arm = vec![start];
        let mut v = a.target;
        while v != sink {
            let next = quiver.arrows().iter().position(|b| b.source == v).ok_or(Error::NotCanonical)?;
            arm.push(next);
            v = quiver.arrow(next).target;
            if arm.len() > nv {
                return Err(Error::NotCanonical);
            }
        }
        arm.reverse();
        arms.push(arm);
    }
    if arms.iter().map(Vec::len).sum::<usize>() != quiver.num_arrows() {
        return Err(Error::NotCanonical);
    }
    let name = |arm: &Vec<usize>| quiver.arrow(arm[0]).name.clone();
    let greek = |arm: &Vec<usize>, l: char| name(arm).starts_with(l);
    // canonical names decide ties; otherwise longest arm first
    arms.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| name(x).cmp(&name(y))));
    let take = |arms: &mut Vec<Vec<usize>>, pred: &dyn Fn(&Vec<usize>) -> bool| -> Option<Vec<usize>> {
        arms.iter().position(pred).map(|i| arms.remove(i))
    };
    let ordered = match arms.len() {
        2 => {
            let alpha = take(&mut arms, &|a| greek(a, 'α')).unwrap_or_else(|| arms.remove(0));
            vec![alpha, arms.remove(0)]
        }
        3 => {
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            let is_e = lens.contains(&3) && lens.contains(&2) && lens.iter().sum::<usize>() >= 8;
            if is_e {
                // lengths {k, 2, 3} with k in 3..=5
                let beta = take(&mut arms, &|a| a.len() == 2).ok_or(Error::NotCanonical)?;
                let gamma = take(&mut arms, &|a| a.len() == 3 && greek(a, 'γ'))
                    .or_else(|| {
                        if arms[0].len() == 3 && arms[1].len() == 3 {
                            take(&mut arms, &|a| !greek(a, 'α')).or_else(|| Some(arms.remove(1)))
                        } else {
                            take(&mut arms, &|a| a.len() == 3)
                        }
                    })
                    .ok_or(Error::NotCanonical)?;
                vec![arms.remove(0), beta, gamma]
            } else {
                let alpha = if arms[0].len() > 2 {
                    arms.remove(0)
                } else {
                    take(&mut arms, &|a| greek(a, 'α')).unwrap_or_else(|| arms.remove(0))
                };
                let beta = take(&mut arms, &|a| greek(a, 'β')).unwrap_or_else(|| arms.remove(0));
                vec![alpha, beta, arms.remove(0)]
            }
        }
        _ => return Err(Error::NotCanonical),
    };
    let lens: Vec<usize> = ordered.iter().map(Vec::len).collect();
    let tag = match lens.as_slice() {
        &[n, g] => FamilyTag::A { n, m: g - 1 },
        &[a, 2, 2] if a >= 2 => FamilyTag::D { n: a + 2 },
        &[a, 2, 3] if (3..=5).contains(&a) => FamilyTag::E { n: a + 3 },
        _ => return Err(Error::NotCanonical),
    };
    Ok(CanonicalFamily {
        tag,
        sink,
        source,
        arms: ordered,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictReason {
    /// Nonzero scalars with `α + c·(other arm)` in the ideal.
    WitnessMembership { scalars: Vec<String> },
    /// The arm combinations for which no nonzero scalar exists.
    NoScalarExists { failing: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifierVerdict {
    pub family: FamilyTag,
    pub value: u8,
    pub reason: VerdictReason,
}

fn arm_terms<F: Field>(quiver: &Quiver, family: &CanonicalFamily, k: usize) -> Vec<(F, Path)> {
    vec![(F::one(), family.arm_path(quiver, k))]
}

/// `fpd(E1) ∈ {0, 1}`: zero exactly when `α + c·γ ∈ I` (type A), or both
/// `α + c1·β` and `α + c2·γ` lie in `I` (types D, E), for nonzero scalars.
pub fn classify<F: Field>(alg: &Algebra<F>) -> Result<ClassifierVerdict> {
    let q = alg.quiver();
    let family = recognize_family(q)?;
    if family.arms.len() == 3 {
        let sum: Vec<(F, Path)> = (0..3).flat_map(|k| arm_terms::<F>(q, &family, k)).collect();
        if !alg.contains(&sum)? {
            return Err(Error::NotCanonical);
        }
    }
    let alpha = arm_terms::<F>(q, &family, 0);
    let mut scalars = Vec::new();
    let mut failing = Vec::new();
    for k in 1..family.arms.len() {
        let label = format!("α + c·{}", family.arm_label(k));
        match alg.solve_pencil(&alpha, &arm_terms::<F>(q, &family, k))? {
            Pencil::All => scalars.push(F::one().to_string()),
            Pencil::Unique(c) if !c.is_zero() => scalars.push(c.to_string()),
            _ => failing.push(label),
        }
    }
    let (value, reason) = if failing.is_empty() {
        (0, VerdictReason::WitnessMembership { scalars })
    } else {
        (1, VerdictReason::NoScalarExists { failing })
    };
    Ok(ClassifierVerdict {
        family: family.tag,
        value,
        reason,
    })
}

/// The brick set `{S(z) : z inside the vanishing arm} ∪ {M(0)}` of a
/// verdict-1 algebra, with its `E1` adjacency matrix and radius.
#[derive(Clone, Debug)]
pub struct WitnessBrickSet<F: Field> {
    pub modules: Vec<Representation<F>>,
    pub labels: Vec<String>,
    pub m0: Representation<F>,
    pub matrix: Vec<Vec<usize>>,
    pub rho: SpectralValue,
}

pub fn witness_brick_set<F: Field>(alg: &Algebra<F>) -> Result<WitnessBrickSet<F>> {
    let q = alg.quiver();
    let family = recognize_family(q)?;
    if classify(alg)?.value == 0 {
        return Err(Error::NoWitness);
    }
    let arms = family.arms.len();
    let in_ideal: Vec<bool> = (0..arms)
        .map(|k| alg.contains(&arm_terms::<F>(q, &family, k)))
        .collect::<Result<_>>()?;
    // arms carrying M(0); the remaining arm z is zero inside
    let kept: Vec<usize> = if arms == 2 {
        vec![if in_ideal[1] { 0 } else { 1 }]
    } else {
        let outside: Vec<usize> = (0..3).filter(|&k| !in_ideal[k]).collect();
        if outside.len() == 3 {
            vec![1, 2]
        } else {
            outside
        }
    };
    if kept.len() != arms - 1 || kept.iter().any(|&k| in_ideal[k]) {
        return Err(Error::NoWitness);
    }
    let z = (0..arms).find(|k| !kept.contains(k)).expect("one arm is left");

    // relations among the arm paths: w with Σ w_k arm_k ∈ I
    let residues: Vec<Vec<(usize, F)>> = (0..arms)
        .map(|k| alg.ideal().reduce(&arm_terms::<F>(q, &family, k)))
        .collect();
    let mut support: Vec<usize> = residues.iter().flatten().map(|(i, _)| *i).collect();
    support.sort_unstable();
    support.dedup();
    let columns: Vec<Vec<F>> = residues
        .iter()
        .map(|r| {
            support
                .iter()
                .map(|i| r.iter().find(|(j, _)| j == i).map(|(_, x)| x.clone()).unwrap_or_else(F::zero))
                .collect()
        })
        .collect();
    let relations = if support.is_empty() {
        Matrix::<F>::identity(arms).row_vecs()
    } else {
        Matrix::from_columns(&columns, support.len()).nullspace()
    };
    // scalar y on the last kept arm so every such relation vanishes on M(0)
    let y = if kept.len() == 1 {
        if relations.iter().any(|w| !w[kept[0]].is_zero()) {
            return Err(Error::NoWitness);
        }
        F::one()
    } else {
        let (k1, k2) = (kept[0], kept[1]);
        let mut y: Option<F> = None;
        for w in &relations {
            if !w[k2].is_zero() {
                y = Some(w[k1].neg().div(&w[k2]).expect("nonzero"));
                break;
            }
        }
        let y = y.unwrap_or_else(F::one);
        if y.is_zero() || relations.iter().any(|w| !w[k1].add(&w[k2].mul(&y)).is_zero()) {
            return Err(Error::NoWitness);
        }
        y
    };

    let nv = q.num_vertices();
    let mut dims = vec![0; nv];
    dims[family.sink] = 1;
    dims[family.source] = 1;
    for &k in &kept {
        for v in family.interior(q, k) {
            dims[v] = 1;
        }
    }
    let maps: Vec<Matrix<F>> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (r, c) = (dims[a.target], dims[a.source]);
            if r == 0 || c == 0 || family.arms[z].contains(&i) {
                Matrix::zeros(r, c)
            } else if kept.len() == 2 && family.arms[kept[1]][0] == i {
                Matrix::scalar(1, &y)
            } else {
                Matrix::identity(1)
            }
        })
        .collect();
    let m0 = Representation::new(alg, dims, maps)?;
    let interior = family.interior(q, z);
    let mut modules: Vec<Representation<F>> = interior.iter().map(|&v| simple(alg, v)).collect();
    let mut labels: Vec<String> = interior.iter().map(|&v| format!("S({})", q.vertex_id(v))).collect();
    modules.push(m0.clone());
    labels.push("M(0)".into());
    if !is_brick_set(q, &modules)? {
        return Err(Error::Invalid("constructed witness is not a brick set".into()));
    }
    let matrix = adjacency_matrix_modules(alg, &modules, AdjacencyAssignment::E(1))?;
    let rho = spectral_radius(&counts_to_matrix(&matrix), &crate::spectral::default_tolerance())?.value;
    Ok(WitnessBrickSet {
        modules,
        labels,
        m0,
        matrix,
        rho,
    })
}

/// Independent confirmations of a verdict-0 algebra: complete catalog,
/// representation-directedness and exact `fpd(E1) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroConfirmation {
    pub catalog_size: usize,
    pub complete: bool,
    pub directed: bool,
    pub fpd: Option<SpectralValue>,
}

impl ZeroConfirmation {
    pub fn confirmed(&self) -> bool {
        self.complete && self.directed && self.fpd == Some(SpectralValue::Zero)
    }
}

pub fn confirm_zero<F: Field>(alg: &Algebra<F>, config: CatalogConfig) -> Result<ZeroConfirmation> {
    let op = alg.opposite()?;
    let catalog = enumerate_indecomposables(alg, &op, config)?;
    if !catalog.is_complete() {
        return Ok(ZeroConfirmation {
            catalog_size: catalog.len(),
            complete: false,
            directed: false,
            fpd: None,
        });
    }
    let directed = matches!(is_representation_directed(alg, &catalog)?, OrderOrCycle::Order(_));
    let ctx = FpContext::new(alg, &op, &catalog, 1);
    let value = fpd(&ctx, AdjacencyAssignment::E(1), &crate::spectral::default_tolerance())?;
    Ok(ZeroConfirmation {
        catalog_size: catalog.len(),
        complete: true,
        directed,
        fpd: Some(value),
    })
}

/// The gluing picture for `A(n,m)` with `I = ⟨α + c·γ⟩`: `P(source) ≅ I(sink)`
/// is projective-injective, its radical is `M(1)`, `τ⁻M(1) ≅ M(4)`, the
/// almost split sequence between them has middle term `M(2) ⊕ M(3) ⊕ P`,
/// and the catalog closes.
pub fn verify_gluing<F: Field>(alg: &Algebra<F>, seed: u64) -> Result<Vec<CheckItem>> {
    let q = alg.quiver();
    let family = recognize_family(q)?;
    if !matches!(family.tag, FamilyTag::A { .. }) || alg.relations().len() != 1 || classify(alg)?.value != 0 {
        return Err(Error::Invalid("gluing check needs A(n,m) with a single relation α + c·γ".into()));
    }
    let op = alg.opposite()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = q.num_vertices();
    let (sink, source) = (family.sink, family.source);
    let ones_except = |skip: &[usize], keep: &dyn Fn(usize) -> bool| -> Result<Representation<F>> {
        let dims: Vec<usize> = (0..nv).map(|v| usize::from(!skip.contains(&v) && keep(v))).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                if dims[a.source] == 1 && dims[a.target] == 1 {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(dims[a.target], dims[a.source])
                }
            })
            .collect();
        Representation::new(alg, dims, maps)
    };
    let alpha_inner = family.interior(q, 0);
    let gamma_inner = family.interior(q, 1);
    let m1 = ones_except(&[source], &|_| true)?;
    let m2 = ones_except(&[], &|v| alpha_inner.contains(&v))?;
    let m3 = ones_except(&[], &|v| gamma_inner.contains(&v))?;
    let m4 = ones_except(&[sink], &|_| true)?;
    let p = projective(alg, source);
    let i1 = injective(alg, sink);

    let mut items = Vec::new();
    let mut iso = |name: &str, x: &Representation<F>, y: &Representation<F>| {
        let mut item = CheckItem::new(name);
        let ok = find_isomorphism(q, x, y, &mut rng).is_isomorphic();
        item.record(ok, || format!("{:?} is not isomorphic to {:?}", x.dims(), y.dims()));
        item
    };
    items.push(iso("P(source) ≅ I(sink)", &p, &i1));
    let mut ones = CheckItem::new("P(source) has all-ones dimension vector");
    ones.record(p.dims().iter().all(|&d| d == 1), || format!("{:?}", p.dims()));
    items.push(ones);
    items.push(iso("rad P(source) ≅ M(1)", &radical(q, &p).0, &m1));
    let t = tau_inverse(&op, &m1);
    items.push(iso("τ⁻M(1) ≅ M(4)", &t, &m4));
    let mut book = CheckItem::new("d(M(2)) + d(M(3)) + d(P) = d(M(1)) + d(M(4))");
    let lhs: Vec<usize> = (0..nv).map(|v| m2.dim(v) + m3.dim(v) + p.dim(v)).collect();
    let rhs: Vec<usize> = (0..nv).map(|v| m1.dim(v) + m4.dim(v)).collect();
    book.record(lhs == rhs, || format!("{lhs:?} != {rhs:?}"));
    items.push(book);
    let mut middle = CheckItem::new("almost split sequence M(1) -> M(2) ⊕ M(3) ⊕ P -> M(4)");
    let tau_m4 = tau(alg, &m4);
    let found = match almost_split_middle(alg, &m4, &tau_m4) {
        Some(e) => {
            let parts = decompose(q, &e, &mut rng).summands;
            let mut expected: Vec<&Representation<F>> = vec![&p];
            expected.extend([&m2, &m3].into_iter().filter(|m| !m.is_zero()));
            find_isomorphism(q, &tau_m4, &m1, &mut rng).is_isomorphic()
                && parts.len() == expected.len()
                && expected.iter().all(|x| parts.iter().any(|y| find_isomorphism(q, x, y, &mut rng).is_isomorphic()))
        }
        None => false,
    };
    middle.record(found, || "middle term differs".into());
    items.push(middle);
    let mut closes = CheckItem::new("catalog generation completes");
    let catalog = enumerate_indecomposables(alg, &op, CatalogConfig { seed, ..CatalogConfig::default() })?;
    closes.record(catalog.is_complete(), || format!("{:?}", catalog.completeness));
    items.push(closes);
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn algebra(tag: FamilyTag, ideal: StandardIdeal) -> Algebra<Q> {
        Algebra::from_spec(&standard_family(tag, ideal).unwrap()).unwrap()
    }

    #[test]
    fn family_shapes() {
        let q = FamilyTag::A { n: 2, m: 1 }.quiver().unwrap();
        assert_eq!(q.num_vertices(), 4);
        assert_eq!(q.num_arrows(), 4);
        let spec = standard_family(FamilyTag::D { n: 4 }, StandardIdeal::Canonical).unwrap();
        assert_eq!(spec.relations.len(), 1);
        assert!(matches!(FamilyTag::E { n: 9 }.quiver(), Err(Error::FamilyOutOfRange(_))));
        assert!(matches!(FamilyTag::D { n: 3 }.quiver(), Err(Error::FamilyOutOfRange(_))));
        for tag in [
            FamilyTag::A { n: 3, m: 0 },
            FamilyTag::A { n: 1, m: 2 },
            FamilyTag::D { n: 5 },
            FamilyTag::E { n: 6 },
            FamilyTag::E { n: 8 },
        ] {
            let f = recognize_family(&tag.quiver().unwrap()).unwrap();
            assert_eq!(f.tag, tag);
        }
    }

    #[test]
    fn mandatory_relation_added_once() {
        let (spec, notices) = build_family(FamilyTag::D { n: 4 }, &[]).unwrap();
        assert_eq!(spec.relations.len(), 1);
        assert_eq!(notices.len(), 1);
        let arms = FamilyTag::D { n: 4 }.arm_names();
        let sum: Vec<(Rational, Vec<String>)> = arms.iter().map(|a| (Rational::integer(2), a.clone())).collect();
        let (spec, notices) = build_family(FamilyTag::D { n: 4 }, &[sum]).unwrap();
        assert_eq!(spec.relations.len(), 1);
        assert!(notices.is_empty());
    }

    #[test]
    fn verdicts() {
        let a = algebra(FamilyTag::A { n: 2, m: 1 }, StandardIdeal::Directed);
        let v = classify(&a).unwrap();
        assert_eq!(v.value, 0);
        assert_eq!(v.reason, VerdictReason::WitnessMembership { scalars: vec!["1".into()] });
        assert_eq!(classify(&algebra(FamilyTag::A { n: 2, m: 1 }, StandardIdeal::Canonical)).unwrap().value, 1);
        assert_eq!(classify(&algebra(FamilyTag::A { n: 2, m: 1 }, StandardIdeal::AlphaArm)).unwrap().value, 1);
        assert_eq!(classify(&algebra(FamilyTag::D { n: 4 }, StandardIdeal::Canonical)).unwrap().value, 1);
        assert_eq!(classify(&algebra(FamilyTag::D { n: 4 }, StandardIdeal::Directed)).unwrap().value, 0);
        assert_eq!(classify(&algebra(FamilyTag::E { n: 6 }, StandardIdeal::Directed)).unwrap().value, 0);
    }

    #[test]
    fn a21_alpha_witness() {
        let a = algebra(FamilyTag::A { n: 2, m: 1 }, StandardIdeal::AlphaArm);
        let w = witness_brick_set(&a).unwrap();
        assert_eq!(w.m0.dims(), [1, 0, 1, 1]);
        assert_eq!(w.labels, vec!["S(2)", "M(0)"]);
        assert_eq!(w.matrix, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(w.rho, SpectralValue::One);
    }

    #[test]
    fn d_and_e_witnesses() {
        for tag in [FamilyTag::D { n: 4 }, FamilyTag::D { n: 5 }, FamilyTag::E { n: 6 }] {
            let a = algebra(tag, StandardIdeal::Canonical);
            let w = witness_brick_set(&a).unwrap();
            assert_eq!(w.rho, SpectralValue::One, "{tag}");
        }
        let directed = algebra(FamilyTag::D { n: 4 }, StandardIdeal::Directed);
        assert!(matches!(witness_brick_set(&directed), Err(Error::NoWitness)));
    }

    #[test]
    fn zero_confirmed_and_gluing() {
        let a = algebra(FamilyTag::A { n: 2, m: 1 }, StandardIdeal::Directed);
        assert!(confirm_zero(&a, CatalogConfig::default()).unwrap().confirmed());
        let items = verify_gluing(&a, 1).unwrap();
        for item in &items {
            assert!(item.passed(), "{}: {:?}", item.name, item.violations);
        }
    }

    #[test]
    fn non_canonical_rejected() {
        let q = Quiver::new(vec![1, 2, 3], vec![("a".into(), 2, 1), ("b".into(), 3, 1)]).unwrap();
        assert!(matches!(recognize_family(&q), Err(Error::NotCanonical)));
    }
}
