//! Command implementations behind the `fpdim` binary.
//!
//! Every command returns an [`Outcome`]: a JSON report, a plain-text
//! table and the process exit code.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context};
use fpdim::ar::{enumerate_indecomposables, is_representation_directed, CatalogConfig, Completeness, OrderOrCycle};
use fpdim::builtin::builtin;
use fpdim::canonical::{classify, confirm_zero, recognize_family, witness_brick_set, ClassifierVerdict, VerdictReason};
use fpdim::fp::{
    ar_formula_suite, ext_path_property, fp_theory_table, quotient_inequalities, random_quotient, tau_inequality,
    triangularity_suite, AdjacencyAssignment, CheckReport, FpConfig, FpContext, FpValue, TheoremVerdictSummary,
    ValueMethod, Witness,
};
use fpdim::spectral::SpectralValue;
use fpdim::{parse_spec, Algebra, BoundQuiverSpec, Field, FieldChoice, Fp, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INCOMPLETE: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Basis,
    Fpd,
    Classify,
    Check,
    Catalog,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecSource {
    Path(PathBuf),
    Builtin(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub source: SpecSource,
    /// Overrides the field named in the spec.
    pub field: Option<FieldChoice>,
    pub max_path_len: Option<usize>,
    pub max_dim: usize,
    pub max_entries: usize,
    pub mmax: usize,
    pub nmax: Option<usize>,
    pub tol: Rational,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub jobs: usize,
    pub classify: bool,
    /// Random quotients tried by `check`.
    pub quotients: usize,
}

impl RunConfig {
    pub fn new(command: Command, source: SpecSource) -> Self {
        let catalog = CatalogConfig::default();
        RunConfig {
            command,
            source,
            field: None,
            max_path_len: None,
            max_dim: catalog.max_total_dim,
            max_entries: catalog.max_entries,
            mmax: fpdim::fp::DEFAULT_MMAX,
            nmax: None,
            tol: fpdim::spectral::default_tolerance(),
            out: None,
            format: Format::Table,
            seed: catalog.seed,
            jobs: 1,
            classify: false,
            quotients: 3,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.tol.signum() <= 0 {
            bail!(fpdim::Error::BadTolerance);
        }
        if self.max_dim == 0 || self.max_entries == 0 || self.jobs == 0 {
            bail!("bounds must be positive");
        }
        if self.max_path_len == Some(0) || self.nmax == Some(0) {
            bail!("bounds must be positive");
        }
        Ok(())
    }

    fn catalog_config(&self) -> CatalogConfig {
        CatalogConfig {
            max_total_dim: self.max_dim,
            max_entries: self.max_entries,
            seed: self.seed,
        }
    }

    fn fp_config(&self) -> FpConfig {
        FpConfig {
            mmax: self.mmax,
            nmax: self.nmax,
            tol: self.tol.clone(),
            jobs: self.jobs,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

/// Parses a positive tolerance such as `1e-9`, `0.001` or `1/1000`.
pub fn parse_tolerance(s: &str) -> anyhow::Result<Rational> {
    let t = s.trim();
    let (mantissa, exponent) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().with_context(|| format!("bad tolerance `{s}`"))?),
        None => (t, 0),
    };
    let mut value: Rational = mantissa.parse().with_context(|| format!("bad tolerance `{s}`"))?;
    let ten = Rational::integer(10);
    for _ in 0..exponent.unsigned_abs() {
        value = if exponent > 0 {
            value.mul(&ten)
        } else {
            value.div(&ten).expect("nonzero")
        };
    }
    if value.signum() <= 0 {
        bail!(fpdim::Error::BadTolerance);
    }
    Ok(value)
}

pub fn load_spec(config: &RunConfig) -> anyhow::Result<BoundQuiverSpec> {
    let mut spec = match &config.source {
        SpecSource::Builtin(name) => builtin(name)?,
        SpecSource::Path(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_spec(&text).with_context(|| format!("in {}", path.display()))?
        }
    };
    if let Some(f) = config.field {
        spec.field = f;
    }
    if config.max_path_len.is_some() {
        spec.max_path_len = config.max_path_len;
    }
    Ok(spec)
}

/// A computation generic over the field, dispatched at run time.
trait FieldTask {
    fn run<F: Field>(self) -> anyhow::Result<Outcome>;
}

fn dispatch<T: FieldTask>(choice: FieldChoice, task: T) -> anyhow::Result<Outcome> {
    match choice {
        FieldChoice::Rationals => task.run::<Rational>(),
        FieldChoice::Prime(2) => task.run::<Fp<2>>(),
        FieldChoice::Prime(3) => task.run::<Fp<3>>(),
        FieldChoice::Prime(5) => task.run::<Fp<5>>(),
        FieldChoice::Prime(7) => task.run::<Fp<7>>(),
        FieldChoice::Prime(11) => task.run::<Fp<11>>(),
        FieldChoice::Prime(13) => task.run::<Fp<13>>(),
        FieldChoice::Prime(101) => task.run::<Fp<101>>(),
        FieldChoice::Prime(32003) => task.run::<Fp<32003>>(),
        FieldChoice::Prime(2147483647) => task.run::<Fp<2147483647>>(),
        FieldChoice::Prime(p) => Err(fpdim::error::FieldError::UnsupportedPrime(p).into()),
    }
}

struct Task<'a> {
    config: &'a RunConfig,
    spec: BoundQuiverSpec,
}

impl FieldTask for Task<'_> {
    fn run<F: Field>(self) -> anyhow::Result<Outcome> {
        let alg: Algebra<F> = Algebra::from_spec(&self.spec)?;
        match self.config.command {
            Command::Basis => Ok(basis(&alg)),
            Command::Fpd => fpd_report(&alg, self.config),
            Command::Classify => classify_report(&alg, self.config),
            Command::Check => check_report(&alg, self.config),
            Command::Catalog => catalog_report(&alg, self.config),
        }
    }
}

/// Runs the configured command.
pub fn run(config: &RunConfig) -> anyhow::Result<Outcome> {
    config.validate()?;
    let spec = load_spec(config)?;
    dispatch(spec.field, Task { config, spec })
}

/// Runs the command, writes the JSON report to `--out` if given and
/// returns the text destined for standard output.
pub fn execute(config: &RunConfig) -> anyhow::Result<(String, u8)> {
    let outcome = run(config)?;
    let json = serde_json::to_string_pretty(&outcome.json)? + "\n";
    if let Some(path) = &config.out {
        std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    let stdout = match config.format {
        Format::Table => outcome.text,
        Format::Json => json,
    };
    Ok((stdout, outcome.code))
}

pub fn cmd_basis(config: &RunConfig) -> anyhow::Result<Outcome> {
    run(&RunConfig {
        command: Command::Basis,
        ..config.clone()
    })
}

pub fn cmd_fpd(config: &RunConfig) -> anyhow::Result<Outcome> {
    run(&RunConfig {
        command: Command::Fpd,
        ..config.clone()
    })
}

pub fn cmd_classify(config: &RunConfig) -> anyhow::Result<Outcome> {
    run(&RunConfig {
        command: Command::Classify,
        ..config.clone()
    })
}

pub fn cmd_check(config: &RunConfig) -> anyhow::Result<Outcome> {
    run(&RunConfig {
        command: Command::Check,
        ..config.clone()
    })
}

pub fn cmd_catalog(config: &RunConfig) -> anyhow::Result<Outcome> {
    run(&RunConfig {
        command: Command::Catalog,
        ..config.clone()
    })
}

fn basis<F: Field>(alg: &Algebra<F>) -> Outcome {
    let names = alg.basis_names();
    let q = alg.quiver();
    let projective_dims: Vec<usize> = (0..alg.num_vertices()).map(|v| alg.paths_from(v).len()).collect();
    let json = json!({
        "algebra": alg.name(),
        "field": F::field_name(),
        "vertices": q.vertex_ids(),
        "arrows": q.num_arrows(),
        "path_bound": alg.bound(),
        "dim": alg.dim(),
        "basis": names,
        "projective_dims": projective_dims,
    });
    let mut text = format!(
        "algebra {} over {}: dim {} (path bound {})\n",
        alg.name(),
        F::field_name(),
        alg.dim(),
        alg.bound()
    );
    for (v, d) in projective_dims.iter().enumerate() {
        let _ = writeln!(text, "  dim P({}) = {d}", q.vertex_id(v));
    }
    let _ = writeln!(text, "basis: {}", names.join(", "));
    Outcome { json, text, code: EXIT_OK }
}

fn verdict_summary(v: &ClassifierVerdict) -> TheoremVerdictSummary {
    let reason = match &v.reason {
        VerdictReason::WitnessMembership { scalars } => {
            format!("{}: arm relations in the ideal with scalars {}", v.family, scalars.join(", "))
        }
        VerdictReason::NoScalarExists { failing } => {
            format!("{}: no nonzero scalar for {}", v.family, failing.join("; "))
        }
    };
    TheoremVerdictSummary { value: v.value, reason }
}

fn verdict_value(v: u8) -> SpectralValue {
    if v == 0 {
        SpectralValue::Zero
    } else {
        SpectralValue::One
    }
}

fn fpd_report<F: Field>(alg: &Algebra<F>, config: &RunConfig) -> anyhow::Result<Outcome> {
    let op = alg.opposite()?;
    let catalog = enumerate_indecomposables(alg, &op, config.catalog_config())?;
    let ctx = FpContext::new(alg, &op, &catalog, config.mmax);
    let mut report = fp_theory_table(&ctx, &config.fp_config())?;
    let mut code = if report.complete { EXIT_OK } else { EXIT_INCOMPLETE };
    if config.classify {
        match recognize_family(alg.quiver()).and_then(|_| classify(alg)) {
            Ok(verdict) => {
                let value = verdict_value(verdict.value);
                if report.complete {
                    if report.fpd.value != value {
                        report.notes.push(format!(
                            "theorem verdict {} disagrees with enumeration {}",
                            verdict.value, report.fpd.value
                        ));
                        code = EXIT_VIOLATION;
                    }
                } else {
                    report.fpd = FpValue {
                        value,
                        method: ValueMethod::TheoremVerdict,
                    };
                    if verdict.value == 1 {
                        let w = witness_brick_set(alg)?;
                        report.witnesses.retain(|x| x.zeta != AdjacencyAssignment::E(1));
                        report.witnesses.insert(
                            0,
                            Witness {
                                zeta: AdjacencyAssignment::E(1),
                                entries: Vec::new(),
                                bricks: w.modules.iter().map(|m| m.dims().to_vec()).collect(),
                                matrix: w.matrix.clone(),
                                rho: w.rho.clone(),
                            },
                        );
                    }
                    report
                        .notes
                        .push("fpd(E1) is the theorem verdict; the remaining values are lower bounds".into());
                    code = EXIT_OK;
                }
                report.verdict = Some(verdict_summary(&verdict));
            }
            Err(e) => report.notes.push(format!("--classify ignored: {e}")),
        }
    }
    let json = serde_json::to_value(&report)?;
    Ok(Outcome {
        json,
        text: report.render(),
        code,
    })
}

fn classify_report<F: Field>(alg: &Algebra<F>, config: &RunConfig) -> anyhow::Result<Outcome> {
    let verdict = classify(alg)?;
    let summary = verdict_summary(&verdict);
    let mut text = format!("{}: fpd(E1) = {} ({})\n", alg.name(), verdict.value, summary.reason);
    let mut json = json!({
        "algebra": alg.name(),
        "field": F::field_name(),
        "family": verdict.family.to_string(),
        "verdict": verdict,
        "method": ValueMethod::TheoremVerdict,
    });
    let mut code = EXIT_OK;
    if verdict.value == 1 {
        let w = witness_brick_set(alg)?;
        let q = alg.quiver();
        let ok = w.rho == SpectralValue::One;
        let _ = writeln!(text, "witness {:?}: matrix {:?}, rho = {}", w.labels, w.matrix, w.rho);
        json["witness"] = json!({
            "labels": w.labels,
            "dims": w.modules.iter().map(|m| m.dims().to_vec()).collect::<Vec<_>>(),
            "modules": w.modules.iter().map(|m| m.to_literal(q)).collect::<Vec<_>>(),
            "matrix": w.matrix,
            "rho": w.rho,
        });
        if !ok {
            code = EXIT_VIOLATION;
        }
    } else {
        let c = confirm_zero(alg, config.catalog_config())?;
        let _ = writeln!(
            text,
            "confirmation: catalog {} ({}), directed {}, fpd(E1) {}",
            c.catalog_size,
            if c.complete { "complete" } else { "incomplete" },
            c.directed,
            c.fpd.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into())
        );
        code = if !c.complete {
            EXIT_INCOMPLETE
        } else if c.confirmed() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        };
        json["confirmation"] = serde_json::to_value(&c)?;
    }
    Ok(Outcome { json, text, code })
}

fn check_report<F: Field>(alg: &Algebra<F>, config: &RunConfig) -> anyhow::Result<Outcome> {
    let op = alg.opposite()?;
    let catalog = enumerate_indecomposables(alg, &op, config.catalog_config())?;
    if !catalog.is_complete() {
        let text = format!(
            "{}: catalog incomplete after {} entries; invariant suites need a complete catalog\n",
            alg.name(),
            catalog.len()
        );
        let json = json!({
            "algebra": alg.name(),
            "field": F::field_name(),
            "complete": false,
            "catalog_size": catalog.len(),
            "completeness": catalog.completeness,
        });
        return Ok(Outcome {
            json,
            text,
            code: EXIT_INCOMPLETE,
        });
    }
    let fp = config.fp_config();
    let ctx = FpContext::new(alg, &op, &catalog, config.mmax);
    let mut report = CheckReport::default();
    report.extend(ar_formula_suite(&ctx)?);
    report.extend(tau_inequality(&ctx, &fp)?);
    let directed = matches!(is_representation_directed(alg, &catalog)?, OrderOrCycle::Order(_));
    if directed {
        report.extend(triangularity_suite(&ctx, &config.tol)?);
    }
    report.extend(ext_path_property(&ctx, config.mmax)?);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut skipped = Vec::new();
    for _ in 0..config.quotients {
        let Some(b) = random_quotient(alg, &mut rng)? else { break };
        let b_op = b.opposite()?;
        let b_catalog = enumerate_indecomposables(&b, &b_op, config.catalog_config())?;
        if !b_catalog.is_complete() {
            skipped.push(b.name().to_string());
            continue;
        }
        let b_ctx = FpContext::new(&b, &b_op, &b_catalog, 1);
        report.extend(quotient_inequalities(&ctx, &b_ctx, &fp, &mut rng)?);
    }

    let mut text = format!(
        "{} over {}: {} indecomposables, {}\n",
        alg.name(),
        F::field_name(),
        catalog.len(),
        if directed { "representation-directed" } else { "not representation-directed" }
    );
    text.push_str(&report.render());
    for s in &skipped {
        let _ = writeln!(text, "skipped quotient {s}: catalog incomplete");
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_VIOLATION };
    let json = json!({
        "algebra": alg.name(),
        "field": F::field_name(),
        "complete": true,
        "catalog_size": catalog.len(),
        "directed": directed,
        "passed": report.passed(),
        "violations": report.violation_count(),
        "items": report.items,
        "skipped_quotients": skipped,
    });
    Ok(Outcome { json, text, code })
}

fn catalog_report<F: Field>(alg: &Algebra<F>, config: &RunConfig) -> anyhow::Result<Outcome> {
    let op = alg.opposite()?;
    let catalog = enumerate_indecomposables(alg, &op, config.catalog_config())?;
    let q = alg.quiver();
    let directed = if catalog.is_complete() {
        match is_representation_directed(alg, &catalog)? {
            OrderOrCycle::Order(o) => json!({"directed": true, "order": o}),
            OrderOrCycle::Cycle(c) => json!({"directed": false, "cycle": c}),
        }
    } else {
        Value::Null
    };
    let entries: Vec<Value> = catalog
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            json!({
                "index": i,
                "dims": e.module.dims(),
                "provenance": e.provenance,
                "end_dim": e.end_dim,
                "brick": e.is_brick(),
                "projective": e.projective,
                "injective": e.injective,
                "tau": e.tau,
                "tau_inverse": e.tau_inverse,
                "module": e.module.to_literal(q),
            })
        })
        .collect();
    let mut text = format!(
        "{} over {}: {} indecomposables ({})\n",
        alg.name(),
        F::field_name(),
        catalog.len(),
        match &catalog.completeness {
            Completeness::Complete => "complete".to_string(),
            Completeness::Bounded { reason, .. } => format!("bounded: {reason}"),
        }
    );
    let _ = writeln!(text, "{:>4}  {:<20} {:>4}  {:<5} {:>5} {:>5}", "#", "dims", "end", "kind", "tau", "tau-");
    for (i, e) in catalog.entries.iter().enumerate() {
        let kind = match (e.projective, e.injective) {
            (true, true) => "P,I",
            (true, false) => "P",
            (false, true) => "I",
            _ => "",
        };
        let idx = |x: Option<usize>| x.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "{i:>4}  {:<20} {:>4}  {kind:<5} {:>5} {:>5}",
            format!("{:?}", e.module.dims()),
            e.end_dim,
            idx(e.tau),
            idx(e.tau_inverse)
        );
    }
    for w in &catalog.warnings {
        let _ = writeln!(text, "note: {w}");
    }
    let json = json!({
        "algebra": alg.name(),
        "field": F::field_name(),
        "complete": catalog.is_complete(),
        "completeness": catalog.completeness,
        "entries": entries,
        "directedness": directed,
        "warnings": catalog.warnings,
    });
    let code = if catalog.is_complete() { EXIT_OK } else { EXIT_INCOMPLETE };
    Ok(Outcome { json, text, code })
}
