//! Quivers, paths, relations and the JSON spec-file format.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldChoice, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices carry user-facing integer ids; internally
/// everything is indexed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_ids: Vec<i64>,
    arrows: Vec<Arrow>,
    vertex_lookup: HashMap<i64, usize>,
    arrow_lookup: HashMap<String, usize>,
}

impl Quiver {
    /// `arrows` are `(name, source id, target id)`.
    pub fn new(vertex_ids: Vec<i64>, arrows: Vec<(String, i64, i64)>) -> Result<Self> {
        let mut vertex_lookup = HashMap::new();
        for (i, &v) in vertex_ids.iter().enumerate() {
            if vertex_lookup.insert(v, i).is_some() {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut arrow_lookup = HashMap::new();
        let mut list = Vec::with_capacity(arrows.len());
        for (i, (name, s, t)) in arrows.into_iter().enumerate() {
            let source = *vertex_lookup.get(&s).ok_or(Error::UnknownVertex(s))?;
            let target = *vertex_lookup.get(&t).ok_or(Error::UnknownVertex(t))?;
            if arrow_lookup.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateArrow(name));
            }
            list.push(Arrow { name, source, target });
        }
        Ok(Quiver {
            vertex_ids,
            arrows: list,
            vertex_lookup,
            arrow_lookup,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> &[i64] {
        &self.vertex_ids
    }

    pub fn vertex_id(&self, v: usize) -> i64 {
        self.vertex_ids[v]
    }

    pub fn vertex_index(&self, id: i64) -> Option<usize> {
        self.vertex_lookup.get(&id).copied()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrow_lookup.get(name).copied()
    }

    /// Same vertices, every arrow reversed; arrow indices are preserved.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| (a.name.clone(), self.vertex_ids[a.target], self.vertex_ids[a.source]))
            .collect();
        Quiver::new(self.vertex_ids.clone(), arrows).expect("opposite of a valid quiver")
    }

    pub fn idempotent(&self, v: usize) -> Path {
        Path {
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    /// Path from arrow names in composition order (rightmost applied first).
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        let idx = names
            .iter()
            .map(|n| self.arrow_index(n).ok_or_else(|| Error::UnknownArrow(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.path_from_indices(idx)
    }

    pub fn path_from_indices(&self, arrows: Vec<usize>) -> Result<Path> {
        let Some(&last) = arrows.last() else {
            return Err(Error::Invalid("use Quiver::idempotent for trivial paths".into()));
        };
        for w in arrows.windows(2) {
            let (left, right) = (&self.arrows[w[0]], &self.arrows[w[1]]);
            if left.source != right.target {
                return Err(Error::NotComposable {
                    left: left.name.clone(),
                    right: right.name.clone(),
                });
            }
        }
        Ok(Path {
            source: self.arrows[last].source,
            target: self.arrows[arrows[0]].target,
            arrows,
        })
    }

    /// Canonical ordering: by length, then lexicographically on arrow
    /// names; trivial paths by vertex position.
    pub fn path_order(&self, a: &Path, b: &Path) -> std::cmp::Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            if a.is_trivial() {
                a.source.cmp(&b.source)
            } else {
                let an = a.arrows.iter().map(|&i| self.arrows[i].name.as_str());
                let bn = b.arrows.iter().map(|&i| self.arrows[i].name.as_str());
                an.cmp(bn)
            }
        })
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertex_ids[p.source])
        } else {
            let names: Vec<&str> = p.arrows.iter().map(|&i| self.arrows[i].name.as_str()).collect();
            if names.iter().all(|n| n.chars().count() == 1) {
                names.concat()
            } else {
                names.join("*")
            }
        }
    }

    /// All paths of length `0..=max_len`, in canonical order.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.num_vertices()).map(|v| self.idempotent(v)).collect();
        let mut frontier: Vec<Path> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| Path {
                arrows: vec![i],
                source: a.source,
                target: a.target,
            })
            .collect();
        for _ in 0..max_len {
            frontier.sort_by(|a, b| self.path_order(a, b));
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                // extend on the right: the new arrow is applied first
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.target == p.source {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            arrows,
                            source: a.source,
                            target: p.target,
                        });
                    }
                }
            }
            frontier = next;
        }
        out
    }
}

/// A path in function-composition order: `arrows[0]` is applied last.
/// Length-zero paths are vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Path {
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ other` (other first), if composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            arrows,
            source: other.source,
            target: self.target,
        })
    }

    /// The same path in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            arrows,
            source: self.target,
            target: self.source,
        }
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F> {
    terms: Vec<(F, Path)>,
}

impl<F: Field> Relation<F> {
    /// Validates parallelism and admissibility, merging duplicate paths and
    /// dropping zero coefficients. `index` is only used in error messages.
    pub fn new(quiver: &Quiver, terms: Vec<(F, Path)>, index: usize) -> Result<Self> {
        let mut merged: Vec<(F, Path)> = Vec::new();
        for (c, p) in terms {
            if p.len() < 2 {
                return Err(Error::RelationTooShort {
                    index,
                    path: quiver.path_name(&p),
                });
            }
            if let Some(first) = merged.first().map(|(_, q)| q.clone()) {
                if first.source != p.source || first.target != p.target {
                    return Err(Error::NonParallel {
                        index,
                        first: quiver.path_name(&first),
                        second: quiver.path_name(&p),
                    });
                }
            }
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some((existing, _)) => *existing = existing.add(&c),
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        if merged.is_empty() {
            return Err(Error::EmptyRelation(index));
        }
        merged.sort_by(|a, b| quiver.path_order(&a.1, &b.1));
        Ok(Relation { terms: merged })
    }

    pub fn terms(&self) -> &[(F, Path)] {
        &self.terms
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn reversed(&self) -> Relation<F> {
        Relation {
            terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect(),
        }
    }

    pub fn scaled(&self, s: &F) -> Relation<F> {
        Relation {
            terms: self.terms.iter().map(|(c, p)| (c.mul(s), p.clone())).collect(),
        }
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if c.is_one() {
                out.push_str(&quiver.path_name(p));
            } else {
                out.push_str(&format!("({c}){}", quiver.path_name(p)));
            }
        }
        out
    }
}

/// A bound quiver algebra definition: quiver, relation generators with
/// rational coefficients, field and optional path-length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiverSpec {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<Relation<Rational>>,
    pub field: FieldChoice,
    pub max_path_len: Option<usize>,
}

impl BoundQuiverSpec {
    pub fn new(name: impl Into<String>, quiver: Quiver, relations: Vec<Relation<Rational>>) -> Self {
        BoundQuiverSpec {
            name: name.into(),
            quiver,
            relations,
            field: FieldChoice::Rationals,
            max_path_len: None,
        }
    }

    /// Explicit bound, or `|vertices| + longest relation`.
    pub fn path_bound(&self) -> usize {
        self.max_path_len.unwrap_or_else(|| {
            self.quiver.num_vertices() + self.relations.iter().map(Relation::max_len).max().unwrap_or(0)
        })
    }

    /// Relations as linear combinations with named paths, convenient for
    /// building specs in code: `&[(coeff, &["a", "b"])]`.
    pub fn relation_from_names(quiver: &Quiver, terms: &[(Rational, &[&str])], index: usize) -> Result<Relation<Rational>> {
        let terms = terms
            .iter()
            .map(|(c, names)| Ok((c.clone(), quiver.path(names)?)))
            .collect::<Result<Vec<_>>>()?;
        Relation::new(quiver, terms, index)
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            name: Some(self.name.clone()),
            vertices: self.quiver.vertex_ids().to_vec(),
            arrows: self
                .quiver
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: self.quiver.vertex_id(a.source),
                    to: self.quiver.vertex_id(a.target),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms()
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: c.to_string(),
                            path: p.arrows().iter().map(|&i| self.quiver.arrow(i).name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            field: Some(self.field.to_string()),
            max_path_len: self.max_path_len,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: i64,
    pub to: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

/// On-disk spec-file layout.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<i64>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_len: Option<usize>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        message: e.to_string(),
    }
}

/// Parses spec-file contents.
pub fn parse_spec(text: &str) -> Result<BoundQuiverSpec> {
    let file: SpecFile = serde_json::from_str(text).map_err(syntax)?;
    spec_from_file(file)
}

pub fn spec_from_file(file: SpecFile) -> Result<BoundQuiverSpec> {
    let quiver = Quiver::new(
        file.vertices,
        file.arrows.into_iter().map(|a| (a.name, a.from, a.to)).collect(),
    )?;
    let mut relations = Vec::new();
    for (i, terms) in file.relations.into_iter().enumerate() {
        let mut parsed = Vec::new();
        for t in terms {
            let coeff: Rational = t.coeff.parse()?;
            let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
            parsed.push((coeff, quiver.path(&names)?));
        }
        relations.push(Relation::new(&quiver, parsed, i)?);
    }
    let field = match file.field {
        Some(f) => FieldChoice::parse(&f)?,
        None => FieldChoice::Rationals,
    };
    if file.max_path_len == Some(0) {
        return Err(Error::Invalid("max_path_len must be at least 1".into()));
    }
    Ok(BoundQuiverSpec {
        name: file.name.unwrap_or_else(|| "unnamed".to_string()),
        quiver,
        relations,
        field,
        max_path_len: file.max_path_len,
    })
}

/// Module literal: `{"dims": {"1": 1, ...}, "maps": {"a": [["1"]], ...}}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleLiteral {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
}

/// Number of paths of each length `0..=max_len`, computed from powers of
/// the vertex adjacency matrix (an independent count of `enumerate_paths`).
pub fn path_counts_by_adjacency(quiver: &Quiver, max_len: usize) -> Vec<u128> {
    let n = quiver.num_vertices();
    let mut adj = vec![vec![0u128; n]; n];
    for a in quiver.arrows() {
        adj[a.source][a.target] += 1;
    }
    let mut power: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect();
    let mut counts = Vec::new();
    for _ in 0..=max_len {
        counts.push(power.iter().flatten().sum());
        let mut next = vec![vec![0u128; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += power[i][k] * adj[k][j];
                }
            }
        }
        power = next;
    }
    counts
}

/// Distinct arrow names used by the relations; handy for diagnostics.
pub fn relation_arrows<F: Field>(relations: &[Relation<F>]) -> HashSet<usize> {
    relations
        .iter()
        .flat_map(|r| r.terms().iter().flat_map(|(_, p)| p.arrows().iter().copied()))
        .collect()
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices {:?}; arrows", self.vertex_ids)?;
        for a in &self.arrows {
            write!(f, " {}:{}->{}", a.name, self.vertex_ids[a.source], self.vertex_ids[a.target])?;
        }
        Ok(())
    }
}
