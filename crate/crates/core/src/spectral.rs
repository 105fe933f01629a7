//! Certified spectral radius of nonnegative integer matrices.
//!
//! The radius is exact zero when the matrix is nilpotent. Otherwise the
//! matrix is condensed into strongly connected components, and the Perron
//! root of each irreducible diagonal block (its largest real eigenvalue) is
//! isolated with Sturm sequences over exact rationals. Integer roots are
//! recognised exactly; everything else is reported as an interval.

use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{Matrix, Polynomial};

type Q = Rational;

/// Value of a spectral radius: an exact integer tag or a certified interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralValue {
    Zero,
    One,
    Integer(u64),
    Interval { lo: Rational, hi: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    NilpotentShortcut,
    SccRootIsolation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralRadiusResult {
    pub value: SpectralValue,
    pub method: SpectralMethod,
}

impl SpectralValue {
    fn exact(k: u64) -> Self {
        match k {
            0 => SpectralValue::Zero,
            1 => SpectralValue::One,
            k => SpectralValue::Integer(k),
        }
    }

    pub fn lo(&self) -> Rational {
        match self {
            SpectralValue::Zero => Q::zero(),
            SpectralValue::One => Q::one(),
            SpectralValue::Integer(k) => Q::integer(*k as i64),
            SpectralValue::Interval { lo, .. } => lo.clone(),
        }
    }

    pub fn hi(&self) -> Rational {
        match self {
            SpectralValue::Interval { hi, .. } => hi.clone(),
            other => other.lo(),
        }
    }

    pub fn exact_value(&self) -> Option<u64> {
        match self {
            SpectralValue::Zero => Some(0),
            SpectralValue::One => Some(1),
            SpectralValue::Integer(k) => Some(*k),
            SpectralValue::Interval { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_value().is_some()
    }

    /// Midpoint as a float, for display and oracles.
    pub fn approx(&self) -> f64 {
        (self.lo().to_f64() + self.hi().to_f64()) / 2.0
    }

    /// Certified `self <= other`: true unless the intervals prove the
    /// opposite strict inequality.
    pub fn certified_le(&self, other: &SpectralValue) -> bool {
        self.lo() <= other.hi()
    }

    /// The larger of two values, treating intervals conservatively.
    pub fn max(&self, other: &SpectralValue) -> SpectralValue {
        if self.lo() >= other.hi() {
            self.clone()
        } else if other.lo() >= self.hi() {
            other.clone()
        } else {
            let lo = self.lo().max(other.lo());
            let hi = self.hi().max(other.hi());
            if lo == hi && lo.is_integer() && lo.signum() >= 0 {
                SpectralValue::exact(lo.to_f64() as u64)
            } else {
                SpectralValue::Interval { lo, hi }
            }
        }
    }
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
            other => write!(f, "{}", other.exact_value().unwrap()),
        }
    }
}

impl Serialize for SpectralValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Default certified interval width, 10^-9.
pub fn default_tolerance() -> Rational {
    Rational::new(1, 1_000_000_000)
}

fn check_nonnegative_integer(m: &Matrix<Q>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = &m[(r, c)];
            if v.signum() < 0 {
                return Err(Error::NegativeEntry { row: r, col: c });
            }
            if !v.is_integer() {
                return Err(Error::Invalid(format!("entry ({r}, {c}) = {v} is not an integer")));
            }
        }
    }
    Ok(())
}

/// `M^n = 0` for an `n x n` matrix.
pub fn is_nilpotent(m: &Matrix<Q>) -> bool {
    m.pow(m.rows()).is_zero()
}

/// Spectral radius with the nilpotency shortcut.
pub fn spectral_radius(m: &Matrix<Q>, tol: &Rational) -> Result<SpectralRadiusResult> {
    check_nonnegative_integer(m)?;
    if tol.signum() <= 0 {
        return Err(Error::BadTolerance);
    }
    if is_nilpotent(m) {
        return Ok(SpectralRadiusResult {
            value: SpectralValue::Zero,
            method: SpectralMethod::NilpotentShortcut,
        });
    }
    spectral_radius_by_isolation(m, tol)
}

/// Convenience wrapper for count matrices.
pub fn spectral_radius_counts(rows: &[Vec<usize>], tol: &Rational) -> Result<SpectralRadiusResult> {
    let m = Matrix::from_fn(rows.len(), rows.len(), |r, c| Q::integer(rows[r][c] as i64));
    spectral_radius(&m, tol)
}

/// Spectral radius by SCC condensation and Sturm root isolation only
/// (no nilpotency shortcut).
pub fn spectral_radius_by_isolation(m: &Matrix<Q>, tol: &Rational) -> Result<SpectralRadiusResult> {
    check_nonnegative_integer(m)?;
    if tol.signum() <= 0 {
        return Err(Error::BadTolerance);
    }
    let n = m.rows();
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|r| (0..n).filter(|&c| !m[(r, c)].is_zero()).collect())
        .collect();
    let mut blocks = Vec::new();
    for comp in strongly_connected_components(&adjacency) {
        let has_cycle = comp.len() > 1 || !m[(comp[0], comp[0])].is_zero();
        if !has_cycle {
            continue;
        }
        let sub = m.select_rows(&comp).select_columns(&comp);
        let poly = sub.char_poly()?;
        blocks.push(RootIsolator::new(&poly));
    }
    let value = combine_blocks(&mut blocks, tol);
    Ok(SpectralRadiusResult {
        value,
        method: SpectralMethod::SccRootIsolation,
    })
}

fn combine_blocks(blocks: &mut [RootIsolator], tol: &Rational) -> SpectralValue {
    if blocks.is_empty() {
        return SpectralValue::Zero;
    }
    for b in blocks.iter_mut() {
        b.refine_to(tol);
    }
    // Separate exact winners from intervals that still straddle them.
    for _ in 0..512 {
        let best_exact = blocks.iter().filter_map(|b| b.exact.clone()).max();
        let Some(k) = best_exact else { break };
        let straddling: Vec<usize> = blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.exact.is_none() && b.lo < k && b.hi >= k)
            .map(|(i, _)| i)
            .collect();
        if straddling.is_empty() {
            break;
        }
        for i in straddling {
            blocks[i].bisect();
        }
    }
    blocks
        .iter()
        .map(RootIsolator::value)
        .reduce(|a, b| a.max(&b))
        .expect("nonempty")
}

/// Tarjan's algorithm; components are returned in reverse topological
/// order, each sorted ascending.
pub fn strongly_connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(adjacency.len(), 0);
    let nodes: Vec<_> = (0..adjacency.len()).map(|_| g.add_node(())).collect();
    for (v, out) in adjacency.iter().enumerate() {
        for &w in out {
            g.add_edge(nodes[v], nodes[w], ());
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .collect()
}

/// Sturm-sequence isolator for the largest real root of a monic integer
/// polynomial that has at least one positive root.
struct RootIsolator {
    poly: Polynomial<Q>,
    sturm: Vec<Polynomial<Q>>,
    lo: Rational,
    hi: Rational,
    exact: Option<Rational>,
    integers_checked: bool,
}

impl RootIsolator {
    fn new(poly: &Polynomial<Q>) -> Self {
        let squarefree = {
            let g = poly.gcd(&poly.derivative());
            poly.div_rem(&g).0.monic()
        };
        let mut sturm = vec![squarefree.clone(), squarefree.derivative()];
        loop {
            let k = sturm.len();
            if sturm[k - 1].is_zero() {
                sturm.pop();
                break;
            }
            let (_, r) = sturm[k - 2].div_rem(&sturm[k - 1]);
            if r.is_zero() {
                break;
            }
            sturm.push(r.scale(&Q::integer(-1)));
        }
        // Cauchy bound on root magnitudes.
        let coeffs = squarefree.coeffs();
        let lead = coeffs.last().expect("nonconstant").clone();
        let mut bound = Q::zero();
        for c in &coeffs[..coeffs.len() - 1] {
            let r = c.div(&lead).expect("nonzero lead").abs();
            if r > bound {
                bound = r;
            }
        }
        let hi = Q::from_big(num_rational::BigRational::from_integer(
            bound.add(&Q::one()).to_big().ceil().to_integer(),
        ));
        let mut iso = RootIsolator {
            poly: squarefree,
            sturm,
            lo: Q::zero(),
            hi,
            exact: None,
            integers_checked: false,
        };
        if iso.poly.eval(&Q::zero()).is_zero() && iso.roots_above(&Q::zero()) == 0 {
            iso.exact = Some(Q::zero());
            iso.hi = Q::zero();
        }
        iso
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let mut changes = 0;
        let mut last = 0;
        for p in &self.sturm {
            let s = p.eval(x).signum();
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    fn changes_at_infinity(&self) -> usize {
        let mut changes = 0;
        let mut last = 0;
        for p in &self.sturm {
            let s = p.leading().map_or(0, Rational::signum);
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Number of distinct real roots strictly greater than `x`.
    fn roots_above(&self, x: &Rational) -> usize {
        self.sign_changes(x) - self.changes_at_infinity()
    }

    fn bisect(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let mid = self.lo.add(&self.hi).mul(&Q::new(1, 2));
        if self.poly.eval(&mid).is_zero() && self.roots_above(&mid) == 0 {
            self.exact = Some(mid.clone());
            self.lo = mid.clone();
            self.hi = mid;
        } else if self.roots_above(&mid) >= 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    fn check_integers(&mut self) {
        self.integers_checked = true;
        let lo_floor = self.lo.to_big().floor().to_integer();
        let hi_ceil = self.hi.to_big().ceil().to_integer();
        let mut k = lo_floor;
        while k <= hi_ceil {
            let kq = Q::from_big(num_rational::BigRational::from_integer(k.clone()));
            if kq > self.lo && kq <= self.hi && self.poly.eval(&kq).is_zero() && self.roots_above(&kq) == 0 {
                self.exact = Some(kq.clone());
                self.lo = kq.clone();
                self.hi = kq;
                return;
            }
            k += 1;
        }
    }

    fn refine_to(&mut self, tol: &Rational) {
        while self.exact.is_none() {
            let width = self.hi.sub(&self.lo);
            if !self.integers_checked && width <= Q::integer(2) {
                self.check_integers();
                continue;
            }
            if width <= *tol {
                break;
            }
            self.bisect();
        }
    }

    fn value(&self) -> SpectralValue {
        match &self.exact {
            Some(k) => SpectralValue::exact(k.to_f64().round() as u64),
            None => SpectralValue::Interval {
                lo: self.lo.clone(),
                hi: self.hi.clone(),
            },
        }
    }
}

/// Checks that `a` is the principal submatrix of `b` on `indices` and that
/// `rho(a) <= rho(b)` holds within the certified values.
pub fn principal_submatrix_check(
    a: &Matrix<Q>,
    b: &Matrix<Q>,
    indices: &[usize],
    tol: &Rational,
) -> Result<bool> {
    let n = b.rows();
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::BadIndexSubset(format!("{indices:?} for size {n}")));
        }
    }
    if a.rows() != indices.len() || b.select_rows(indices).select_columns(indices) != *a {
        return Err(Error::BadIndexSubset("matrix is not the principal submatrix on these indices".into()));
    }
    let ra = spectral_radius(a, tol)?;
    let rb = spectral_radius(b, tol)?;
    Ok(ra.value.certified_le(&rb.value))
}
