//! Named specifications for the standard examples.

use crate::canonical::{standard_family, FamilyTag, StandardIdeal};
use crate::error::{Error, Result};
use crate::quiver::{parse_spec, BoundQuiverSpec};

pub const BUILTIN_NAMES: &[&str] = &[
    "a2",
    "a4",
    "example-6.2-1",
    "example-6.2-2",
    "canonical-A:n,m[/directed|/alpha]",
    "canonical-D:n[/directed]",
    "canonical-E:n[/directed]",
];

const A2: &str = r#"{"name": "a2", "vertices": [1, 2], "arrows": [{"name": "a", "from": 2, "to": 1}]}"#;

const A4: &str = r#"{"name": "a4", "vertices": [1, 2, 3, 4],
  "arrows": [{"name": "a", "from": 2, "to": 1}, {"name": "b", "from": 3, "to": 2}, {"name": "c", "from": 4, "to": 3}]}"#;

fn square(name: &str, relation: &str) -> String {
    format!(
        r#"{{"name": "{name}", "vertices": [1, 2, 3, 4],
  "arrows": [{{"name": "α", "from": 2, "to": 1}}, {{"name": "γ", "from": 3, "to": 1}},
             {{"name": "β", "from": 4, "to": 2}}, {{"name": "δ", "from": 4, "to": 3}}],
  "relations": [{relation}]}}"#
    )
}

fn parse_usize(s: &str, name: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad parameter `{s}` in builtin `{name}`")))
}

/// Resolves a built-in name such as `a4`, `example-6.2-2`,
/// `canonical-A:2,1/directed` or `canonical-E:6`.
pub fn builtin(name: &str) -> Result<BoundQuiverSpec> {
    match name {
        "a2" => return parse_spec(A2),
        "a4" => return parse_spec(A4),
        "example-6.2-1" => {
            return parse_spec(&square(
                name,
                r#"[{"coeff": "1", "path": ["α", "β"]}, {"coeff": "-1", "path": ["γ", "δ"]}]"#,
            ))
        }
        "example-6.2-2" => return parse_spec(&square(name, r#"[{"coeff": "1", "path": ["α", "β"]}]"#)),
        _ => {}
    }
    let unknown = || Error::Invalid(format!("unknown builtin `{name}`; available: {}", BUILTIN_NAMES.join(", ")));
    let rest = name.strip_prefix("canonical-").ok_or_else(unknown)?;
    let (family, ideal) = match rest.split_once('/') {
        Some((f, "directed")) => (f, StandardIdeal::Directed),
        Some((f, "alpha")) => (f, StandardIdeal::AlphaArm),
        Some(_) => return Err(unknown()),
        None => (rest, StandardIdeal::Canonical),
    };
    let (kind, params) = family.split_once(':').ok_or_else(unknown)?;
    let tag = match kind {
        "A" => {
            let (n, m) = params.split_once(',').ok_or_else(unknown)?;
            FamilyTag::A {
                n: parse_usize(n, name)?,
                m: parse_usize(m, name)?,
            }
        }
        "D" => FamilyTag::D { n: parse_usize(params, name)? },
        "E" => FamilyTag::E { n: parse_usize(params, name)? },
        _ => return Err(unknown()),
    };
    let mut spec = standard_family(tag, ideal)?;
    spec.name = name.to_string();
    Ok(spec)
}
