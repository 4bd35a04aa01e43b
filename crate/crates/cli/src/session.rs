//! Named catalogs of models, weight matrices, covers and divisors, stored in
//! a line-oriented text format (see docs/session-format.md for the grammar).
//!
//! Files are blocks `kind name { field-lines }`; rationals are `p/q` in
//! lowest terms with the sign on the numerator, polyhedra are spelled
//! `vertices=[...] rays=[...]`, and divisor values use the same coefficient
//! notation the library prints (`{1/2}D3 + {-1/3}D2 + [0,1/6]E`).  The
//! serializer emits a canonical form: blocks grouped by kind, names sorted,
//! no extra whitespace — `parse` then `serialize` is the identity on it.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;

use polydiv::convex::{Cone, Polyhedron};
use polydiv::divisors::{CoverData, ModelKind, QDivisor, YModel};
use polydiv::downgrade::WeightData;
use polydiv::linalg::IntMatrix;
use polydiv::notation::{format_ppdivisor, format_qdivisor_in, format_qvec, format_rat, parse_ppdivisor, parse_qvec, parse_rat};
use polydiv::ppdiv::PPDivisor;
use polydiv::{IVec, Int, QVec, Rat};

use crate::errors::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Session {
    pub models: BTreeMap<String, Arc<YModel>>,
    pub weights: BTreeMap<String, WeightData>,
    pub covers: BTreeMap<String, CoverData>,
    pub divisors: BTreeMap<String, PPDivisor>,
}

impl Session {
    pub fn insert_model(&mut self, m: &Arc<YModel>) {
        self.models.insert(m.name().to_string(), Arc::clone(m));
    }

    pub fn model(&self, name: &str) -> Result<&Arc<YModel>, CliError> {
        self.models.get(name).ok_or_else(|| unknown("model", name, self.models.keys()))
    }

    pub fn weight_data(&self, name: &str) -> Result<&WeightData, CliError> {
        self.weights.get(name).ok_or_else(|| unknown("weights", name, self.weights.keys()))
    }

    pub fn cover(&self, name: &str) -> Result<&CoverData, CliError> {
        self.covers.get(name).ok_or_else(|| unknown("cover", name, self.covers.keys()))
    }

    pub fn divisor(&self, name: &str) -> Result<&PPDivisor, CliError> {
        self.divisors.get(name).ok_or_else(|| unknown("divisor", name, self.divisors.keys()))
    }
}

fn unknown<'a>(kind: &str, name: &str, known: impl Iterator<Item = &'a String>) -> CliError {
    let names: Vec<&str> = known.map(String::as_str).collect();
    CliError::parse(format!("unknown {kind} `{name}`; the session defines: {}", names.join(", ")))
}

// ---------------------------------------------------------------------------
// Shared value syntax: names, integers, tuples.

/// Names for blocks, primes and functions: ASCII alphanumerics plus `_` and
/// `'`, so labels like `D'a3` work while the divisor and list grammars stay
/// unambiguous.
pub fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\''))
}

pub fn parse_int(s: &str) -> Result<Int, CliError> {
    Int::from_str(s.trim()).map_err(|e| CliError::parse(format!("bad integer {:?}: {e}", s.trim())))
}

pub fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|e| CliError::parse(format!("bad index {:?}: {e}", s.trim())))
}

/// Split `[(..),(..)]` into its `(..)` chunks.
pub fn tuple_chunks(s: &str) -> Result<Vec<String>, CliError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| CliError::parse(format!("expected a [..] list, got {t:?}")))?;
    let mut chunks = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| CliError::parse(format!("unbalanced parentheses in {t:?}")))?
            }
            ',' if depth == 0 => {
                chunks.push(inner[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(CliError::parse(format!("unbalanced parentheses in {t:?}")));
    }
    let last = inner[start..].trim();
    if !last.is_empty() {
        chunks.push(last.to_string());
    } else if !chunks.is_empty() {
        return Err(CliError::parse(format!("trailing comma in {t:?}")));
    }
    for c in &chunks {
        if !(c.starts_with('(') && c.ends_with(')')) {
            return Err(CliError::parse(format!("expected a (..) tuple, got {c:?}")));
        }
    }
    Ok(chunks)
}

pub fn parse_int_tuple(s: &str) -> Result<IVec, CliError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| CliError::parse(format!("expected a (..) tuple, got {t:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_int).collect()
}

pub fn parse_rat_tuple(s: &str) -> Result<QVec, CliError> {
    parse_qvec(s).map_err(|e| CliError::parse(e.to_string()))
}

pub fn fmt_ivec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_ivec_list(vs: &[IVec]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| fmt_ivec(v)).collect();
    format!("[{}]", parts.join(","))
}

pub fn fmt_qvec_list(vs: &[QVec]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format_qvec(v)).collect();
    format!("[{}]", parts.join(","))
}

pub fn fmt_matrix(m: &IntMatrix) -> String {
    let rows: Vec<IVec> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    fmt_ivec_list(&rows)
}

/// Q-divisors as signed term lists: `D2 + E`, `1/2*D2 - E`, `0`.
pub fn parse_qdivisor(s: &str) -> Result<QDivisor, CliError> {
    let mut t = s.trim();
    if t == "0" {
        return Ok(QDivisor::zero());
    }
    if t.is_empty() {
        return Err(CliError::parse("empty divisor expression".to_string()));
    }
    let mut sign = Rat::one();
    if let Some(rest) = t.strip_prefix('-') {
        sign = -Rat::one();
        t = rest.trim_start();
    }
    let mut pairs: Vec<(String, Rat)> = Vec::new();
    let mut remaining = t;
    loop {
        let plus = remaining.find(" + ");
        let minus = remaining.find(" - ");
        let (term, next) = match (plus, minus) {
            (None, None) => (remaining, None),
            (Some(p), None) => (&remaining[..p], Some((p, Rat::one()))),
            (None, Some(m)) => (&remaining[..m], Some((m, -Rat::one()))),
            (Some(p), Some(m)) if p < m => (&remaining[..p], Some((p, Rat::one()))),
            (_, Some(m)) => (&remaining[..m], Some((m, -Rat::one()))),
        };
        let term = term.trim();
        let (coeff, label) = match term.split_once('*') {
            Some((c, l)) => {
                let r = parse_rat(c).map_err(|e| CliError::parse(e.to_string()))?;
                (r, l.trim())
            }
            None => (Rat::one(), term),
        };
        if !valid_name(label) {
            return Err(CliError::parse(format!("bad prime label {label:?} in divisor expression")));
        }
        pairs.push((label.to_string(), &sign * &coeff));
        match next {
            None => break,
            Some((idx, s2)) => {
                remaining = &remaining[idx + 3..];
                sign = s2;
            }
        }
    }
    Ok(QDivisor::from_pairs(pairs))
}

// ---------------------------------------------------------------------------
// Parsing.

struct Block {
    kind: String,
    name: String,
    start: usize,
    fields: Vec<(usize, String)>,
}

fn err_at(line: usize, msg: impl Into<String>) -> CliError {
    CliError::parse(format!("line {line}: {}", msg.into()))
}

pub fn parse_session(text: &str) -> Result<Session, CliError> {
    let mut session = Session::default();
    let mut block: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(b) = block.as_mut() {
            if line == "}" {
                let b = block.take().expect("inside a block");
                finish_block(&mut session, b)?;
            } else {
                b.fields.push((lineno, line.to_string()));
            }
            continue;
        }
        let rest = line
            .strip_suffix('{')
            .ok_or_else(|| err_at(lineno, "expected `model|weights|cover|divisor <name> {`"))?
            .trim();
        let mut it = rest.split_whitespace();
        let kind = it.next().ok_or_else(|| err_at(lineno, "missing block kind"))?;
        let name = it.next().ok_or_else(|| err_at(lineno, "missing block name"))?;
        if it.next().is_some() {
            return Err(err_at(lineno, "block header has trailing tokens"));
        }
        if !matches!(kind, "model" | "weights" | "cover" | "divisor") {
            return Err(err_at(lineno, format!("unknown block kind `{kind}`")));
        }
        if !valid_name(name) {
            return Err(err_at(lineno, format!("bad name {name:?}")));
        }
        block = Some(Block { kind: kind.to_string(), name: name.to_string(), start: lineno, fields: Vec::new() });
    }
    if let Some(b) = block {
        return Err(err_at(b.start, format!("block `{}` is never closed", b.name)));
    }
    Ok(session)
}

fn split_eq(line: &str, lineno: usize) -> Result<(&str, &str), CliError> {
    let (k, v) = line
        .split_once('=')
        .ok_or_else(|| err_at(lineno, format!("expected `key = value`, got {line:?}")))?;
    Ok((k.trim(), v.trim()))
}

/// `key=value` attributes on a single line, e.g. `rank=2 rays=[(1,0)]`.
fn parse_attrs(s: &str, lineno: usize) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for token in s.split_whitespace() {
        let (k, v) = token
            .split_once('=')
            .ok_or_else(|| err_at(lineno, format!("expected `key=value`, got {token:?}")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(err_at(lineno, format!("duplicate attribute `{k}`")));
        }
    }
    Ok(out)
}

fn parse_name_list(s: &str, lineno: usize) -> Result<Vec<String>, CliError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| err_at(lineno, format!("expected a [..] list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in inner.split(',') {
        let name = part.trim();
        if !valid_name(name) {
            return Err(err_at(lineno, format!("bad name {name:?} in list")));
        }
        out.push(name.to_string());
    }
    Ok(out)
}

fn finish_block(session: &mut Session, b: Block) -> Result<(), CliError> {
    match b.kind.as_str() {
        "model" => finish_model(session, b),
        "weights" => finish_weights(session, b),
        "cover" => finish_cover(session, b),
        "divisor" => finish_divisor(session, b),
        _ => unreachable!("kind was validated at the header"),
    }
}

fn finish_model(session: &mut Session, b: Block) -> Result<(), CliError> {
    if session.models.contains_key(&b.name) {
        return Err(err_at(b.start, format!("duplicate model `{}`", b.name)));
    }
    let mut kind_str: Option<String> = None;
    let mut exceptional: Option<String> = None;
    let mut order: Option<Int> = None;
    let mut mults: BTreeMap<String, Int> = BTreeMap::new();
    let mut weights: BTreeMap<String, Rat> = BTreeMap::new();
    let mut primes: Option<Vec<String>> = None;
    let mut functions: BTreeMap<String, QDivisor> = BTreeMap::new();
    for (ln, line) in &b.fields {
        let (key, value) = split_eq(line, *ln)?;
        let mut kt = key.split_whitespace();
        match (kt.next(), kt.next(), kt.next()) {
            (Some("kind"), None, _) => kind_str = Some(value.to_string()),
            (Some("exceptional"), None, _) => exceptional = Some(value.to_string()),
            (Some("order"), None, _) => order = Some(parse_int(value)?),
            (Some("multiplicity"), Some(p), None) => {
                mults.insert(p.to_string(), parse_int(value)?);
            }
            (Some("weight"), Some(p), None) => {
                let r = parse_rat(value).map_err(|e| err_at(*ln, e.to_string()))?;
                weights.insert(p.to_string(), r);
            }
            (Some("primes"), None, _) => primes = Some(parse_name_list(value, *ln)?),
            (Some("function"), Some(n), None) => {
                if !valid_name(n) {
                    return Err(err_at(*ln, format!("bad function name {n:?}")));
                }
                functions.insert(n.to_string(), parse_qdivisor(value)?);
            }
            _ => return Err(err_at(*ln, format!("unexpected model field {key:?}"))),
        }
    }
    let kind_str = kind_str.ok_or_else(|| err_at(b.start, "model is missing `kind`"))?;
    let reject = |cond: bool, what: &str| {
        if cond {
            Err(err_at(b.start, format!("`{what}` does not apply to kind {kind_str}")))
        } else {
            Ok(())
        }
    };
    let kind = match kind_str.as_str() {
        "affine-plane" => {
            reject(exceptional.is_some(), "exceptional")?;
            reject(order.is_some(), "order")?;
            reject(!mults.is_empty(), "multiplicity")?;
            reject(!weights.is_empty(), "weight")?;
            ModelKind::AffinePlane
        }
        "blowup-a2" => {
            reject(order.is_some(), "order")?;
            reject(!weights.is_empty(), "weight")?;
            ModelKind::BlowupA2 {
                exceptional: exceptional
                    .ok_or_else(|| err_at(b.start, "blowup-a2 needs `exceptional`"))?,
                multiplicities: mults,
            }
        }
        "quot-blowup" => {
            reject(!mults.is_empty(), "multiplicity")?;
            ModelKind::QuotBlowup {
                exceptional: exceptional
                    .ok_or_else(|| err_at(b.start, "quot-blowup needs `exceptional`"))?,
                weights,
                group_order: order.ok_or_else(|| err_at(b.start, "quot-blowup needs `order`"))?,
            }
        }
        other => return Err(err_at(b.start, format!("unknown model kind {other:?}"))),
    };
    let primes = primes.ok_or_else(|| err_at(b.start, "model is missing `primes`"))?;
    let model = YModel::new(&b.name, kind, primes, functions)
        .map_err(|e| err_at(b.start, format!("model `{}`: {e}", b.name)))?;
    session.models.insert(b.name, model);
    Ok(())
}

fn finish_weights(session: &mut Session, b: Block) -> Result<(), CliError> {
    if session.weights.contains_key(&b.name) {
        return Err(err_at(b.start, format!("duplicate weights `{}`", b.name)));
    }
    let mut matrix: Option<Vec<IVec>> = None;
    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    for (ln, line) in &b.fields {
        let (key, value) = split_eq(line, *ln)?;
        let mut kt = key.split_whitespace();
        match (kt.next(), kt.next(), kt.next()) {
            (Some("matrix"), None, _) => {
                let rows: Result<Vec<IVec>, CliError> =
                    tuple_chunks(value)?.iter().map(|c| parse_int_tuple(c)).collect();
                matrix = Some(rows.map_err(|e| err_at(*ln, fmt_err(e)))?);
            }
            (Some("label"), Some(idx), None) => {
                let prime = value.to_string();
                if !valid_name(&prime) {
                    return Err(err_at(*ln, format!("bad prime label {prime:?}")));
                }
                labels.insert(parse_usize(idx)?, prime);
            }
            _ => return Err(err_at(*ln, format!("unexpected weights field {key:?}"))),
        }
    }
    let rows = matrix.ok_or_else(|| err_at(b.start, "weights are missing `matrix`"))?;
    if rows.is_empty() {
        return Err(err_at(b.start, "weight matrix needs at least one row"));
    }
    let k = rows[0].len();
    if k == 0 || rows.iter().any(|r| r.len() != k) {
        return Err(err_at(b.start, "weight matrix rows must be nonempty and of equal length"));
    }
    let data: IVec = rows.into_iter().flatten().collect();
    let m = data.len() / k;
    let f = IntMatrix::new(m, k, data);
    let w = WeightData::new(f, labels).map_err(|e| err_at(b.start, format!("weights `{}`: {e}", b.name)))?;
    session.weights.insert(b.name, w);
    Ok(())
}

fn finish_cover(session: &mut Session, b: Block) -> Result<(), CliError> {
    if session.covers.contains_key(&b.name) {
        return Err(err_at(b.start, format!("duplicate cover `{}`", b.name)));
    }
    let mut source: Option<String> = None;
    let mut target: Option<String> = None;
    let mut order: Option<Int> = None;
    let mut fibers: BTreeMap<String, Vec<(String, Int)>> = BTreeMap::new();
    for (ln, line) in &b.fields {
        let (key, value) = split_eq(line, *ln)?;
        let mut kt = key.split_whitespace();
        match (kt.next(), kt.next(), kt.next()) {
            (Some("source"), None, _) => source = Some(value.to_string()),
            (Some("target"), None, _) => target = Some(value.to_string()),
            (Some("order"), None, _) => order = Some(parse_int(value)?),
            (Some("fiber"), Some(t), None) => {
                let mut fiber = Vec::new();
                for part in value.split(',') {
                    let (s, r) = part
                        .trim()
                        .split_once(':')
                        .ok_or_else(|| err_at(*ln, format!("expected `prime:index`, got {part:?}")))?;
                    if !valid_name(s.trim()) {
                        return Err(err_at(*ln, format!("bad prime label {:?}", s.trim())));
                    }
                    fiber.push((s.trim().to_string(), parse_int(r)?));
                }
                if fibers.insert(t.to_string(), fiber).is_some() {
                    return Err(err_at(*ln, format!("duplicate fiber for `{t}`")));
                }
            }
            _ => return Err(err_at(*ln, format!("unexpected cover field {key:?}"))),
        }
    }
    let source = source.ok_or_else(|| err_at(b.start, "cover is missing `source`"))?;
    let target = target.ok_or_else(|| err_at(b.start, "cover is missing `target`"))?;
    let order = order.ok_or_else(|| err_at(b.start, "cover is missing `order`"))?;
    let source = session.model(&source)?.clone();
    let target = session.model(&target)?.clone();
    let cover = CoverData::new(source, target, fibers, order)
        .map_err(|e| err_at(b.start, format!("cover `{}`: {e}", b.name)))?;
    session.covers.insert(b.name, cover);
    Ok(())
}

fn finish_divisor(session: &mut Session, b: Block) -> Result<(), CliError> {
    if session.divisors.contains_key(&b.name) {
        return Err(err_at(b.start, format!("duplicate divisor `{}`", b.name)));
    }
    let mut on: Option<String> = None;
    let mut tail: Option<Cone> = None;
    let mut value: Option<(usize, String)> = None;
    let mut coeffs: Vec<(usize, String, Vec<QVec>, Vec<IVec>)> = Vec::new();
    for (ln, line) in &b.fields {
        if let Some(rest) = line.strip_prefix("tail ") {
            let attrs = parse_attrs(rest, *ln)?;
            let rank = parse_usize(
                attrs.get("rank").ok_or_else(|| err_at(*ln, "tail needs `rank=`"))?,
            )?;
            let rays_chunks =
                tuple_chunks(attrs.get("rays").ok_or_else(|| err_at(*ln, "tail needs `rays=`"))?)
                    .map_err(|e| err_at(*ln, fmt_err(e)))?;
            let rays: Result<Vec<IVec>, CliError> =
                rays_chunks.iter().map(|c| parse_int_tuple(c)).collect();
            let rays = rays.map_err(|e| err_at(*ln, fmt_err(e)))?;
            if rays.iter().any(|r| r.len() != rank) {
                return Err(err_at(*ln, "tail ray length does not match `rank`"));
            }
            if tail.replace(Cone::from_generators(rank, rays)).is_some() {
                return Err(err_at(*ln, "duplicate `tail` line"));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("coeff ") {
            let (prime, attrs_str) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| err_at(*ln, "expected `coeff <prime> vertices=[..] rays=[..]`"))?;
            let attrs = parse_attrs(attrs_str, *ln)?;
            let verts_chunks = tuple_chunks(
                attrs.get("vertices").ok_or_else(|| err_at(*ln, "coeff needs `vertices=`"))?,
            )
            .map_err(|e| err_at(*ln, fmt_err(e)))?;
            let verts: Result<Vec<QVec>, CliError> =
                verts_chunks.iter().map(|c| parse_rat_tuple(c)).collect();
            let rays_chunks =
                tuple_chunks(attrs.get("rays").ok_or_else(|| err_at(*ln, "coeff needs `rays=`"))?)
                    .map_err(|e| err_at(*ln, fmt_err(e)))?;
            let rays: Result<Vec<IVec>, CliError> =
                rays_chunks.iter().map(|c| parse_int_tuple(c)).collect();
            coeffs.push((
                *ln,
                prime.to_string(),
                verts.map_err(|e| err_at(*ln, fmt_err(e)))?,
                rays.map_err(|e| err_at(*ln, fmt_err(e)))?,
            ));
            continue;
        }
        let (key, v) = split_eq(line, *ln)?;
        match key {
            "on" => on = Some(v.to_string()),
            "value" => value = Some((*ln, v.to_string())),
            _ => return Err(err_at(*ln, format!("unexpected divisor field {key:?}"))),
        }
    }
    let on = on.ok_or_else(|| err_at(b.start, "divisor is missing `on`"))?;
    let model = session.model(&on)?.clone();
    let tail = tail.ok_or_else(|| err_at(b.start, "divisor is missing its `tail` line"))?;
    let divisor = match (value, coeffs.is_empty()) {
        (Some(_), false) => {
            return Err(err_at(b.start, "divisor has both `value` and `coeff` lines"));
        }
        (Some((ln, v)), true) => parse_ppdivisor(&v, &tail, &model)
            .map_err(|e| err_at(ln, format!("divisor `{}`: {e}", b.name)))?,
        (None, _) => {
            let mut terms = Vec::new();
            for (ln, prime, verts, rays) in coeffs {
                if Cone::from_generators(tail.rank(), rays) != tail {
                    return Err(err_at(
                        ln,
                        format!("coefficient of `{prime}` does not carry the declared tail"),
                    ));
                }
                let poly = Polyhedron::new(verts, tail.clone())
                    .map_err(|e| err_at(ln, format!("coefficient of `{prime}`: {e}")))?;
                terms.push((prime, poly));
            }
            PPDivisor::new(tail, terms, model)
                .map_err(|e| err_at(b.start, format!("divisor `{}`: {e}", b.name)))?
        }
    };
    session.divisors.insert(b.name, divisor);
    Ok(())
}

pub fn fmt_err(e: CliError) -> String {
    match e {
        CliError::Parse(m) => m,
        CliError::Domain(d) => d.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Serialization (canonical form).

pub fn serialize_session(s: &Session) -> String {
    let mut out = String::from("# polydiv session\n");
    for (name, m) in &s.models {
        out.push('\n');
        write_model(&mut out, name, m);
    }
    for (name, w) in &s.weights {
        out.push('\n');
        write_weights(&mut out, name, w);
    }
    for (name, c) in &s.covers {
        out.push('\n');
        write_cover(&mut out, name, c);
    }
    for (name, d) in &s.divisors {
        out.push('\n');
        write_divisor(&mut out, name, d);
    }
    out
}

fn write_model(out: &mut String, name: &str, m: &YModel) {
    out.push_str(&format!("model {name} {{\n"));
    match m.kind() {
        ModelKind::AffinePlane => out.push_str("  kind = affine-plane\n"),
        ModelKind::BlowupA2 { exceptional, multiplicities } => {
            out.push_str("  kind = blowup-a2\n");
            out.push_str(&format!("  exceptional = {exceptional}\n"));
            for (p, m) in multiplicities {
                out.push_str(&format!("  multiplicity {p} = {m}\n"));
            }
        }
        ModelKind::QuotBlowup { exceptional, weights, group_order } => {
            out.push_str("  kind = quot-blowup\n");
            out.push_str(&format!("  exceptional = {exceptional}\n"));
            out.push_str(&format!("  order = {group_order}\n"));
            for (p, w) in weights {
                out.push_str(&format!("  weight {p} = {}\n", format_rat(w)));
            }
        }
    }
    out.push_str(&format!("  primes = [{}]\n", m.primes().join(", ")));
    for (fname, div) in m.known_functions() {
        out.push_str(&format!("  function {fname} = {}\n", format_qdivisor_in(m, div)));
    }
    out.push_str("}\n");
}

fn write_weights(out: &mut String, name: &str, w: &WeightData) {
    out.push_str(&format!("weights {name} {{\n"));
    out.push_str(&format!("  matrix = {}\n", fmt_matrix(w.weights())));
    for (idx, label) in w.column_labels() {
        out.push_str(&format!("  label {idx} = {label}\n"));
    }
    out.push_str("}\n");
}

fn write_cover(out: &mut String, name: &str, c: &CoverData) {
    out.push_str(&format!("cover {name} {{\n"));
    out.push_str(&format!("  source = {}\n", c.source().name()));
    out.push_str(&format!("  target = {}\n", c.target().name()));
    out.push_str(&format!("  order = {}\n", c.group_order()));
    for (t, fiber) in c.fibers() {
        let parts: Vec<String> = fiber.iter().map(|(s, r)| format!("{s}:{r}")).collect();
        out.push_str(&format!("  fiber {t} = {}\n", parts.join(", ")));
    }
    out.push_str("}\n");
}

fn write_divisor(out: &mut String, name: &str, d: &PPDivisor) {
    out.push_str(&format!("divisor {name} {{\n"));
    out.push_str(&format!("  on = {}\n", d.model().name()));
    out.push_str(&format!(
        "  tail rank={} rays={}\n",
        d.tail().rank(),
        fmt_ivec_list(&d.tail().generators())
    ));
    if d.tail().is_zero() && d.rank() == 1 {
        out.push_str(&format!("  value = {}\n", format_ppdivisor(d)));
    } else {
        for prime in d.model().primes() {
            let poly = d.coefficient(prime);
            if poly == Polyhedron::trivial(d.tail().clone()) {
                continue;
            }
            out.push_str(&format!(
                "  coeff {prime} vertices={} rays={}\n",
                fmt_qvec_list(poly.vertices()),
                fmt_ivec_list(&poly.tail().generators())
            ));
        }
    }
    out.push_str("}\n");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn qdivisor_expressions_round_trip() {
        let model = YModel::new(
            "m",
            ModelKind::AffinePlane,
            ["P", "Q"],
            BTreeMap::new(),
        )
        .unwrap();
        for d in [
            QDivisor::zero(),
            QDivisor::from_pairs([("P", qq(1, 1)), ("Q", qq(1, 1))]),
            QDivisor::from_pairs([("P", qq(-1, 2)), ("Q", qq(3, 1))]),
            QDivisor::from_pairs([("P", qq(-2, 3))]),
        ] {
            let text = format_qdivisor_in(&model, &d);
            assert_eq!(parse_qdivisor(&text).unwrap(), d, "expression {text:?}");
        }
    }

    #[test]
    fn minimal_session_parses_and_serializes_canonically() {
        let text = "\
# polydiv session

model plane {
  kind = affine-plane
  primes = [P, Q]
  function s = P
}

weights w {
  matrix = [(1),(1)]
  label 0 = P
}

cover double {
  source = plane
  target = plane
  order = 2
  fiber P = P:2
  fiber Q = Q:1
}

divisor d {
  on = plane
  tail rank=1 rays=[]
  value = {1/2}P + [0,1]Q
}
";
        let session = parse_session(text).unwrap();
        assert_eq!(session.models.len(), 1);
        assert_eq!(session.weights.len(), 1);
        assert_eq!(session.covers.len(), 1);
        assert_eq!(session.divisors.len(), 1);
        let canon = serialize_session(&session);
        assert_eq!(canon, text, "the example is already canonical");
        assert_eq!(parse_session(&canon).unwrap(), session);
    }

    #[test]
    fn general_coefficients_use_vertex_ray_lines() {
        let model = YModel::new("m", ModelKind::AffinePlane, ["P"], BTreeMap::new()).unwrap();
        let tail = Cone::from_generators(2, [vec![Int::from(1), Int::from(0)]]);
        let poly = Polyhedron::new(
            [vec![qq(0, 1), qq(0, 1)], vec![qq(1, 2), qq(1, 1)]],
            tail.clone(),
        )
        .unwrap();
        let d = PPDivisor::new(tail, [("P".to_string(), poly)], model).unwrap();
        let mut session = Session::default();
        session.insert_model(d.model());
        session.divisors.insert("d".to_string(), d);
        let text = serialize_session(&session);
        assert!(text.contains("coeff P vertices="), "general form spelled out: {text}");
        let reparsed = parse_session(&text).unwrap();
        assert_eq!(reparsed, session);
        assert_eq!(serialize_session(&reparsed), text);
    }

    #[test]
    fn session_errors_carry_line_numbers() {
        let missing_close = "model m {\n  kind = affine-plane\n";
        match parse_session(missing_close) {
            Err(CliError::Parse(msg)) => assert!(msg.contains("line 1"), "{msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let unknown_model = "divisor d {\n  on = nope\n  tail rank=1 rays=[]\n}\n";
        match parse_session(unknown_model) {
            Err(CliError::Parse(msg)) => assert!(msg.contains("unknown model"), "{msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let bad_tuple = "weights w {\n  matrix = [(1,2),(3)]\n}\n";
        match parse_session(bad_tuple) {
            Err(CliError::Parse(msg)) => assert!(msg.contains("equal length"), "{msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn coefficient_tail_must_match_declared_tail() {
        let text = "\
model m {
  kind = affine-plane
  primes = [P]
}

divisor d {
  on = m
  tail rank=2 rays=[(1,0)]
  coeff P vertices=[(0,0)] rays=[(0,1)]
}
";
        match parse_session(text) {
            Err(CliError::Parse(msg)) => {
                assert!(msg.contains("does not carry the declared tail"), "{msg}")
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }
}
