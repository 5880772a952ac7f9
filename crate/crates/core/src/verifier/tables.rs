//! Machine-readable transcriptions of printed tables.
//!
//! Bracket cells may be templates: a bare `i`, `j` or `e`, or a
//! parenthesized linear expression such as `(e-i+1)`, stands for a runner
//! label or subscript part. Conditions are `;`-separated comparison chains
//! like `1<=i<=e-2`.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::abacus::BlockId;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::notation::BracketExpr;
use crate::partition::Partition;

pub const D_VALUES_I32: &str = include_str!("../../fixtures/d_values_i32.csv");
pub const D_VALUES_PAIRS: &str = include_str!("../../fixtures/d_values_pairs.csv");
pub const MULLINEUX_1: &str = include_str!("../../fixtures/mullineux_1.csv");
pub const MULLINEUX_2: &str = include_str!("../../fixtures/mullineux_2.csv");

fn fixture_err(message: impl Into<String>) -> Error {
    Error::Fixture(message.into())
}

/// Values of the template variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Vars {
    pub e: i64,
    pub i: i64,
    pub j: i64,
}

impl Vars {
    fn get(&self, name: u8) -> Option<i64> {
        match name {
            b'e' => Some(self.e),
            b'i' => Some(self.i),
            b'j' => Some(self.j),
            _ => None,
        }
    }
}

/// `Σ coeff·var + constant`, with `None` standing for the constant term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearExpr {
    pub terms: Vec<(i64, Option<u8>)>,
}

impl LinearExpr {
    pub fn eval(&self, vars: &Vars) -> i64 {
        self.terms
            .iter()
            .map(|&(c, v)| c * v.and_then(|n| vars.get(n)).unwrap_or(1))
            .sum()
    }

    pub fn variables(&self) -> impl Iterator<Item = u8> + '_ {
        self.terms.iter().filter_map(|&(_, v)| v)
    }
}

impl FromStr for LinearExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        if src.is_empty() {
            return Err(fixture_err("empty expression"));
        }
        let mut terms = Vec::new();
        let mut pos = 0;
        while pos < src.len() {
            let sign = match src[pos] {
                b'+' if pos > 0 => {
                    pos += 1;
                    1
                }
                b'-' => {
                    pos += 1;
                    -1
                }
                _ if pos == 0 => 1,
                other => return Err(fixture_err(format!("unexpected '{}' in {s:?}", other as char))),
            };
            let start = pos;
            while pos < src.len() && src[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits = &src[start..pos];
            if digits.len() > 9 {
                return Err(fixture_err(format!("constant too large in {s:?}")));
            }
            let c = if digits.is_empty() {
                None
            } else {
                Some(std::str::from_utf8(digits).expect("ascii").parse::<i64>().expect("digits"))
            };
            if pos < src.len() && src[pos] == b'*' {
                pos += 1;
            }
            let var = match src.get(pos) {
                Some(&v @ (b'e' | b'i' | b'j')) => {
                    pos += 1;
                    Some(v)
                }
                _ => None,
            };
            if c.is_none() && var.is_none() {
                return Err(fixture_err(format!("missing term in {s:?}")));
            }
            terms.push((sign * c.unwrap_or(1), var));
        }
        Ok(LinearExpr { terms })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CmpOp {
    Eq,
    Le,
    Ge,
    Lt,
    Gt,
}

impl CmpOp {
    fn holds(self, a: i64, b: i64) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Le => a <= b,
            CmpOp::Ge => a >= b,
            CmpOp::Lt => a < b,
            CmpOp::Gt => a > b,
        }
    }
}

/// `x_0 op_1 x_1 op_2 x_2 …`, true when every adjacent comparison holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Condition {
    pub first: LinearExpr,
    pub rest: Vec<(CmpOp, LinearExpr)>,
}

impl Condition {
    pub fn holds(&self, vars: &Vars) -> bool {
        let mut left = self.first.eval(vars);
        for (op, x) in &self.rest {
            let right = x.eval(vars);
            if !op.holds(left, right) {
                return false;
            }
            left = right;
        }
        true
    }

    pub fn variables(&self) -> impl Iterator<Item = u8> + '_ {
        self.first
            .variables()
            .chain(self.rest.iter().flat_map(|(_, x)| x.variables()))
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut ops = Vec::new();
        let mut start = 0;
        let mut k = 0;
        while k < bytes.len() {
            let (op, width) = match (bytes[k], bytes.get(k + 1)) {
                (b'<', Some(b'=')) => (CmpOp::Le, 2),
                (b'>', Some(b'=')) => (CmpOp::Ge, 2),
                (b'<', _) => (CmpOp::Lt, 1),
                (b'>', _) => (CmpOp::Gt, 1),
                (b'=', _) => (CmpOp::Eq, 1),
                _ => {
                    k += 1;
                    continue;
                }
            };
            pieces.push(&s[start..k]);
            ops.push(op);
            k += width;
            start = k;
        }
        pieces.push(&s[start..]);
        if ops.is_empty() {
            return Err(fixture_err(format!("condition {s:?} has no comparison")));
        }
        let mut exprs = pieces.into_iter().map(str::parse::<LinearExpr>);
        let first = exprs.next().expect("at least one piece")?;
        let rest = ops
            .into_iter()
            .zip(exprs)
            .map(|(op, x)| Ok((op, x?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Condition { first, rest })
    }
}

pub fn parse_conditions(s: &str) -> Result<Vec<Condition>> {
    s.split(';')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(str::parse)
        .collect()
}

/// Variables a template or condition mentions.
fn template_variables(template: &str) -> BTreeSet<u8> {
    template.bytes().filter(|b| matches!(b, b'e' | b'i' | b'j')).collect()
}

/// Substitutes variables in a bracket template. Subscript parts are read as
/// a multiset, so `{1,2}` and `{2,1}` both give `(2,1)`; the flag reports
/// whether any subscript needed reordering.
pub fn instantiate(template: &str, vars: &Vars) -> Result<(BracketExpr, bool)> {
    let bytes = template.as_bytes();
    let mut out = String::with_capacity(template.len());
    let mut k = 0;
    while k < bytes.len() {
        match bytes[k] {
            b'(' => {
                let close = template[k..]
                    .find(')')
                    .map(|c| k + c)
                    .ok_or_else(|| fixture_err(format!("unclosed '(' in {template:?}")))?;
                let value = template[k + 1..close].parse::<LinearExpr>()?.eval(vars);
                if value < 0 {
                    return Err(fixture_err(format!("{template:?} gives a negative label")));
                }
                out.push_str(&value.to_string());
                k = close + 1;
            }
            b @ (b'e' | b'i' | b'j') => {
                out.push_str(&vars.get(b).expect("variable").to_string());
                k += 1;
            }
            b => {
                out.push(b as char);
                k += 1;
            }
        }
    }
    let (text, reordered) = sort_subscripts(&out)?;
    Ok((BracketExpr::parse(&text)?, reordered))
}

/// Whether every substituted value lies in `0..e`.
fn labels_in_range(template: &str, vars: &Vars) -> bool {
    let bytes = template.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let value = match bytes[k] {
            b'(' => {
                let Some(close) = template[k..].find(')').map(|c| k + c) else {
                    return true;
                };
                let Ok(x) = template[k + 1..close].parse::<LinearExpr>() else {
                    return true;
                };
                k = close;
                x.eval(vars)
            }
            b @ (b'e' | b'i' | b'j') => vars.get(b).expect("variable"),
            _ => {
                k += 1;
                continue;
            }
        };
        if !(0..vars.e).contains(&value) {
            return false;
        }
        k += 1;
    }
    true
}

fn sort_subscripts(text: &str) -> Result<(String, bool)> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    let mut reordered = false;
    while let Some(open) = rest.find("_{") {
        out.push_str(&rest[..open + 2]);
        let after = &rest[open + 2..];
        let close = after
            .find('}')
            .ok_or_else(|| fixture_err(format!("unclosed subscript in {text:?}")))?;
        let mut parts: Vec<(usize, &str)> = Vec::new();
        for item in after[..close].split(',') {
            let base = item.split('^').next().unwrap_or("").trim();
            let value = base
                .parse::<usize>()
                .map_err(|_| fixture_err(format!("bad subscript part {item:?} in {text:?}")))?;
            parts.push((value, item));
        }
        let mut sorted = parts.clone();
        sorted.sort_by_key(|b| std::cmp::Reverse(b.0));
        reordered |= sorted.iter().map(|p| p.0).ne(parts.iter().map(|p| p.0));
        out.push_str(&sorted.iter().map(|p| p.1).collect::<Vec<_>>().join(","));
        out.push('}');
        rest = &after[close + 1..];
    }
    out.push_str(rest);
    Ok((out, reordered))
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn field<'a>(rec: &'a csv::StringRecord, headers: &csv::StringRecord, name: &str) -> Result<&'a str> {
    let k = headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| fixture_err(format!("missing column {name}")))?;
    rec.get(k)
        .ok_or_else(|| fixture_err(format!("row too short for column {name}")))
}

fn optional(s: &str) -> Option<&str> {
    (!s.is_empty()).then_some(s)
}

/// Values of e a table row applies to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ERange {
    Exactly(usize),
    AtLeast(usize),
}

impl ERange {
    pub fn contains(&self, e: usize) -> bool {
        match *self {
            ERange::Exactly(x) => e == x,
            ERange::AtLeast(x) => e >= x,
        }
    }
}

impl FromStr for ERange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || fixture_err(format!("bad e cell {s:?}"));
        match s.strip_prefix(">=") {
            Some(rest) => Ok(ERange::AtLeast(rest.trim().parse().map_err(|_| bad())?)),
            None => Ok(ERange::Exactly(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

/// One row of a d-value table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DValueRow {
    pub row: usize,
    pub e: ERange,
    pub lambda: String,
    pub mu: String,
    pub lambda_dual: String,
    pub mu_dual: String,
    pub d: Option<LaurentPoly>,
    pub d_dual: Option<LaurentPoly>,
    pub erratum_mu_dual: Option<String>,
}

/// A d-value row at a concrete e.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DValueInstance {
    pub row: usize,
    pub e: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub lambda_dual: Partition,
    pub mu_dual: Partition,
    pub erratum_mu_dual: Option<Partition>,
    pub d: Option<LaurentPoly>,
    pub d_dual: Option<LaurentPoly>,
}

impl DValueRow {
    pub fn instantiate(&self, e: usize) -> Result<DValueInstance> {
        if !self.e.contains(e) {
            return Err(fixture_err(format!("row {} does not apply at e={e}", self.row)));
        }
        let block = BlockId::principal(e, 5);
        let vars = Vars { e: e as i64, i: 0, j: 0 };
        let dec = |t: &str| -> Result<Partition> { instantiate(t, &vars)?.0.decode(&block) };
        Ok(DValueInstance {
            row: self.row,
            e,
            lambda: dec(&self.lambda)?,
            mu: dec(&self.mu)?,
            lambda_dual: dec(&self.lambda_dual)?,
            mu_dual: dec(&self.mu_dual)?,
            erratum_mu_dual: self.erratum_mu_dual.as_deref().map(dec).transpose()?,
            d: self.d.clone(),
            d_dual: self.d_dual.clone(),
        })
    }

    /// Instances for every applicable e up to `max_e`.
    pub fn instances(&self, max_e: usize) -> Result<Vec<DValueInstance>> {
        (2..=max_e)
            .filter(|&e| self.e.contains(e))
            .map(|e| self.instantiate(e))
            .collect()
    }
}

pub fn parse_d_table(text: &str) -> Result<Vec<DValueRow>> {
    let mut rdr = reader(text);
    let headers = rdr.headers().map_err(|e| fixture_err(e.to_string()))?.clone();
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| fixture_err(e.to_string()))?;
        let f = |name: &str| field(&rec, &headers, name);
        let poly = |name: &str| -> Result<Option<LaurentPoly>> {
            optional(f(name)?).map(str::parse).transpose()
        };
        out.push(DValueRow {
            row: f("row")?.parse().map_err(|_| fixture_err("bad row number"))?,
            e: f("e")?.parse()?,
            lambda: f("lambda")?.to_string(),
            mu: f("mu")?.to_string(),
            lambda_dual: f("lambda_dual")?.to_string(),
            mu_dual: f("mu_dual")?.to_string(),
            d: poly("d")?,
            d_dual: poly("d_dual")?,
            erratum_mu_dual: optional(f("erratum_mu_dual")?).map(str::to_string),
        });
    }
    Ok(out)
}

/// One row of a Mullineux table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MullineuxRow {
    pub row: usize,
    pub mu: String,
    pub conditions: Vec<Condition>,
    pub conditions_text: String,
    pub mu_dual: String,
    pub note: Option<String>,
}

/// A Mullineux row at concrete parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MullineuxInstance {
    pub row: usize,
    pub vars: Vars,
    pub mu: Partition,
    pub mu_dual: Partition,
    /// A printed subscript listed its parts out of order.
    pub reordered: bool,
}

impl MullineuxRow {
    fn uses(&self, name: u8) -> bool {
        template_variables(&self.mu).contains(&name)
            || template_variables(&self.mu_dual).contains(&name)
            || self.conditions.iter().any(|c| c.variables().any(|v| v == name))
    }

    /// Every parameter choice with `i` in `1..e` and `j` in `0..e` satisfying
    /// the conditions and giving runner labels in `0..e`, deduplicated by the
    /// resulting pair.
    pub fn instances(&self, e: usize) -> Result<Vec<MullineuxInstance>> {
        let block = BlockId::principal(e, 5);
        let ei = e as i64;
        let is: Vec<i64> = if self.uses(b'i') { (1..ei).collect() } else { vec![0] };
        let js: Vec<i64> = if self.uses(b'j') { (0..ei).collect() } else { vec![0] };
        let mut out: Vec<MullineuxInstance> = Vec::new();
        for &i in &is {
            for &j in &js {
                let vars = Vars { e: ei, i, j };
                if !self.conditions.iter().all(|c| c.holds(&vars)) {
                    continue;
                }
                if !labels_in_range(&self.mu, &vars) || !labels_in_range(&self.mu_dual, &vars) {
                    continue;
                }
                let (m, r1) = instantiate(&self.mu, &vars)?;
                let (d, r2) = instantiate(&self.mu_dual, &vars)?;
                let inst = MullineuxInstance {
                    row: self.row,
                    vars,
                    mu: m.decode(&block)?,
                    mu_dual: d.decode(&block)?,
                    reordered: r1 || r2,
                };
                if !out.iter().any(|o| o.mu == inst.mu && o.mu_dual == inst.mu_dual) {
                    out.push(inst);
                }
            }
        }
        Ok(out)
    }

    pub fn is_self_dual(&self) -> bool {
        self.note.as_deref() == Some("self-dual")
    }
}

pub fn parse_mullineux_table(text: &str) -> Result<Vec<MullineuxRow>> {
    let mut rdr = reader(text);
    let headers = rdr.headers().map_err(|e| fixture_err(e.to_string()))?.clone();
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| fixture_err(e.to_string()))?;
        let f = |name: &str| field(&rec, &headers, name);
        let conditions_text = f("conditions")?.to_string();
        out.push(MullineuxRow {
            row: f("row")?.parse().map_err(|_| fixture_err("bad row number"))?,
            mu: f("mu")?.to_string(),
            conditions: parse_conditions(&conditions_text)?,
            conditions_text,
            mu_dual: f("mu_dual")?.to_string(),
            note: optional(f("note")?).map(str::to_string),
        });
    }
    Ok(out)
}

/// Both Mullineux tables, in order.
pub fn mullineux_tables() -> Result<Vec<(&'static str, Vec<MullineuxRow>)>> {
    Ok(vec![
        ("mullineux_1", parse_mullineux_table(MULLINEUX_1)?),
        ("mullineux_2", parse_mullineux_table(MULLINEUX_2)?),
    ])
}

/// Both d-value tables, in order.
pub fn d_tables() -> Result<Vec<(&'static str, Vec<DValueRow>)>> {
    Ok(vec![
        ("d_values_i32", parse_d_table(D_VALUES_I32)?),
        ("d_values_pairs", parse_d_table(D_VALUES_PAIRS)?),
    ])
}
