//! Output records for `classify`, `bijection` and `theta`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use sharpblunt::corresp::{iota_tilde, theta, ThetaMultiset};
use sharpblunt::rootdata::FiniteType;
use sharpblunt::triples::{
    enumerate_blunt, enumerate_sharp, is_strictly_sharp, strict_x, strictly_blunt_witness, BluntTriple, Mode,
    SharpTriple,
};

use crate::select::{select_omegas, OmegaSelector, SelectedOmega, UsageError};

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: &str = "sharpblunt.output/1";

/// Largest integer a JSON double holds exactly.
pub const MAX_SAFE_INT: u64 = (1 << 53) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Sharp,
    StrictlySharp,
    Blunt,
    StrictlyBlunt,
    Bijection,
    Theta,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Sharp => "sharp",
            Kind::StrictlySharp => "strictly-sharp",
            Kind::Blunt => "blunt",
            Kind::StrictlyBlunt => "strictly-blunt",
            Kind::Bijection => "bijection",
            Kind::Theta => "theta",
        }
    }

    /// Kinds whose `--type` names `W'` rather than `W`.
    fn on_dual_side(self) -> bool {
        matches!(self, Kind::Sharp | Kind::StrictlySharp | Kind::Theta)
    }

    /// Fixed column set for table and CSV output.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Kind::Sharp | Kind::StrictlySharp => {
                &["type", "omega", "class", "case", "removed", "subsystem", "params", "strict"]
            }
            Kind::Blunt => &["type", "omega", "class", "case", "deleted", "subsystem", "mark", "m_star", "params"],
            Kind::StrictlyBlunt => &["type", "omega", "class", "removed", "dual_subsystem", "x"],
            Kind::Bijection => &["type", "omega", "class", "deleted", "subsystem", "params", "removed", "image", "image_params", "m"],
            Kind::Theta => &["type", "omega", "class", "theta"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Normative,
    Literal,
}

impl ModeArg {
    pub fn name(self) -> &'static str {
        match self {
            ModeArg::Normative => "normative",
            ModeArg::Literal => "literal",
        }
    }

    fn mode(self) -> Mode {
        match self {
            ModeArg::Normative => Mode::Normative,
            ModeArg::Literal => Mode::Literal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaEcho {
    pub index: usize,
    pub coords: Vec<u64>,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub kind: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub omega: OmegaEcho,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub query: Query,
    pub result: Value,
}

/// A record and its table cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub record: OutputRecord,
    pub cells: Vec<String>,
}

/// Replaces integers beyond the exact range of a double by decimal strings.
pub fn safe_ints(v: Value) -> Value {
    match v {
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) if u > MAX_SAFE_INT => Value::String(u.to_string()),
            (None, Some(i)) if i.unsigned_abs() > MAX_SAFE_INT => Value::String(i.to_string()),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(safe_ints).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, x)| (k, safe_ints(x))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    safe_ints(serde_json::to_value(x).expect("plain data serializes"))
}

fn nodes(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn pair(p: Option<(u64, u64)>) -> String {
    p.map_or_else(|| "-".into(), |(a, b)| format!("({a},{b})"))
}

fn coords(x: &[u64]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn sharp_result(s: &SharpTriple) -> Value {
    let mut v = to_json(s);
    let m = v.as_object_mut().expect("struct");
    m.remove("w_prime");
    m.remove("omega");
    m.remove("omega_class");
    m.insert("strict".into(), Value::Bool(is_strictly_sharp(s)));
    m.insert("strict_x".into(), to_json(&strict_x(s).filter(|_| is_strictly_sharp(s))));
    v
}

fn blunt_result(b: &BluntTriple) -> Value {
    let mut v = to_json(b);
    let m = v.as_object_mut().expect("struct");
    m.remove("w");
    m.remove("omega");
    m.remove("omega_class");
    v
}

struct Ctx<'a> {
    kind: Kind,
    ty: FiniteType,
    om: &'a SelectedOmega,
    mode: ModeArg,
}

impl Ctx<'_> {
    fn row(&self, result: Value, mut cells: Vec<String>) -> Row {
        let query = Query {
            kind: self.kind.name().into(),
            ty: self.ty.to_string(),
            rank: self.ty.rank(),
            omega: OmegaEcho {
                index: self.om.index,
                coords: self.om.element.clone(),
                class: self.om.class.to_string(),
            },
            mode: self.mode.name().into(),
        };
        let mut head = vec![self.ty.to_string(), format!("{}{}", self.om.index, coords(&self.om.element)), self.om.class.to_string()];
        head.append(&mut cells);
        Row { record: OutputRecord { schema: SCHEMA_VERSION.into(), query, result }, cells: head }
    }
}

/// Computes every record of a query, in canonical order: type as given, then
/// omega index, then orbit representative.
pub fn build_rows(
    kind: Kind,
    types: &[FiniteType],
    sel: OmegaSelector,
    mode: ModeArg,
) -> Result<Vec<Row>, BuildError> {
    let mut rows = Vec::new();
    for &ty in types {
        let group_type = if kind.on_dual_side() { ty.dual() } else { ty };
        for om in select_omegas(group_type, sel)? {
            let ctx = Ctx { kind, ty, om: &om, mode };
            build_one(&ctx, &mut rows)?;
        }
    }
    Ok(rows)
}

fn build_one(ctx: &Ctx<'_>, rows: &mut Vec<Row>) -> Result<(), BuildError> {
    let (ty, x) = (ctx.ty, &ctx.om.element);
    match ctx.kind {
        Kind::Sharp | Kind::StrictlySharp => {
            for s in enumerate_sharp(ty, x, ctx.mode.mode())? {
                if ctx.kind == Kind::StrictlySharp && !is_strictly_sharp(&s) {
                    continue;
                }
                let cells = vec![
                    s.case.clone().unwrap_or_else(|| "-".into()),
                    nodes(&s.removed),
                    s.w_prime_i.to_string(),
                    pair(s.params),
                    is_strictly_sharp(&s).to_string(),
                ];
                rows.push(ctx.row(sharp_result(&s), cells));
            }
        }
        Kind::Blunt => {
            for b in enumerate_blunt(ty, x)? {
                let cells = vec![
                    b.case.clone(),
                    b.deleted.to_string(),
                    b.w_j.to_string(),
                    b.mark.to_string(),
                    b.m_star_count.to_string(),
                    pair(b.params),
                ];
                rows.push(ctx.row(blunt_result(&b), cells));
            }
        }
        Kind::StrictlyBlunt => {
            if let Some(s) = strictly_blunt_witness(ty, x)? {
                let cells = vec![
                    nodes(&s.removed),
                    s.w_prime_i.to_string(),
                    strict_x(&s).map_or_else(|| "-".into(), |v| v.to_string()),
                ];
                rows.push(ctx.row(sharp_result(&s), cells));
            }
        }
        Kind::Bijection => {
            let it = iota_tilde(ty, x)?;
            for r in &it.rows {
                let m = r.m.as_ref().map_or_else(|| "1 or 2".into(), |e| format!("{}#{}", e.value, e.tag));
                let cells = vec![
                    r.blunt.deleted.to_string(),
                    r.blunt.w_j.to_string(),
                    pair(r.blunt.params),
                    nodes(&r.sharp.removed),
                    r.sharp.w_prime_i.to_string(),
                    pair(r.sharp.params),
                    m,
                ];
                let result = serde_json::json!({
                    "status": "mapped",
                    "blunt": blunt_result(&r.blunt),
                    "sharp": sharp_result(&r.sharp),
                    "m": to_json(&r.m),
                });
                rows.push(ctx.row(result, cells));
            }
            for u in &it.unmapped {
                let cells = vec![
                    u.blunt.deleted.to_string(),
                    u.blunt.w_j.to_string(),
                    pair(u.blunt.params),
                    "-".into(),
                    "(not listed)".into(),
                    format!("({},{})", u.image.t, u.image.r),
                    "-".into(),
                ];
                let result = serde_json::json!({
                    "status": "unmapped",
                    "blunt": blunt_result(&u.blunt),
                    "case": to_json(&u.case),
                    "image": to_json(&u.image),
                });
                rows.push(ctx.row(result, cells));
            }
        }
        Kind::Theta => {
            let th = theta(ty, x)?;
            let cells = vec![th.to_string()];
            let mut v = to_json(&th);
            if let ThetaMultiset::Values { .. } = th {
                v.as_object_mut().expect("tagged").insert("sorted".into(), to_json(&th.sorted_values()));
            }
            rows.push(ctx.row(v, cells));
        }
    }
    Ok(())
}

/// Failure while building records.
#[derive(Debug)]
pub enum BuildError {
    Usage(UsageError),
    Compute(sharpblunt::Error),
}

impl From<UsageError> for BuildError {
    fn from(e: UsageError) -> Self {
        BuildError::Usage(e)
    }
}

impl From<sharpblunt::Error> for BuildError {
    fn from(e: sharpblunt::Error) -> Self {
        BuildError::Compute(e)
    }
}

impl std::fmt::Display for BuildError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BuildError::Usage(e) => write!(f, "{e}"),
            BuildError::Compute(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_become_strings() {
        let v = serde_json::json!({"a": 1u64 << 60, "b": [3, -(1i64 << 55)], "c": MAX_SAFE_INT});
        let s = safe_ints(v);
        assert_eq!(s["a"], Value::String((1u64 << 60).to_string()));
        assert_eq!(s["b"][1], Value::String((-(1i64 << 55)).to_string()));
        assert_eq!(s["c"], serde_json::json!(MAX_SAFE_INT));
    }

    #[test]
    fn records_round_trip() {
        let e8: FiniteType = "E8".parse().unwrap();
        let rows = build_rows(Kind::Blunt, &[e8], OmegaSelector::Trivial, ModeArg::Normative).unwrap();
        assert_eq!(rows.len(), 7);
        for r in rows {
            let text = serde_json::to_string(&r.record).unwrap();
            let back: OutputRecord = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r.record);
            assert_eq!(r.cells.len(), Kind::Blunt.columns().len());
        }
    }
}
