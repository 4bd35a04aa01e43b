//! Human-readable notation for the calculus: exact rationals as `p/q`,
//! point coefficients as `{1/2}`, intervals as `[0,1/6]`, general polyhedra
//! as `conv[(..),..]+cone[(..),..]`, and polyhedral divisors as
//! coefficient–label strings like `{1/2}D3 + {-1/3}D2 + [0,1/6]E`.
//!
//! Printing is canonical (terms in the model's prime order, rationals in
//! lowest terms with the sign on the numerator), so printed strings are
//! usable as golden values.  Parsing accepts the same grammar with arbitrary
//! inner whitespace; the shared tail cone is context, supplied by the
//! caller, never parsed from a coefficient.

use crate::convex::{Cone, Polyhedron};
use crate::divisors::{QDivisor, YModel};
use crate::error::Error;
use crate::ppdiv::PPDivisor;
use crate::{IVec, Int, QVec, Rat};
use num_traits::{Signed, Zero};
use std::str::FromStr;
use std::sync::Arc;

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    Rat::from_str(t).map_err(|e| Error::ParseError(format!("bad rational {t:?}: {e}")))
}

pub fn format_qvec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", parts.join(","))
}

fn format_ivec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn parse_qvec(s: &str) -> Result<QVec, Error> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::ParseError(format!("expected a (..)-tuple, got {t:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rat).collect()
}

/// Tail cones: `{0}` when zero, otherwise the canonical generator tuples.
pub fn format_cone(c: &Cone) -> String {
    if c.is_zero() {
        return "{0}".to_string();
    }
    let parts: Vec<String> = c.generators().iter().map(|g| format_ivec(g)).collect();
    format!("cone[{}]", parts.join(","))
}

/// Coefficient polyhedra.  Rank-1 polyhedra with zero tail print in the
/// compact forms `{q}` (point) and `[a,b]` (interval); everything else in
/// the general `conv[..]+cone[..]` form, the cone part omitted for zero
/// tails.
pub fn format_polyhedron(p: &Polyhedron) -> String {
    if p.rank() == 1 && p.tail().is_zero() {
        let vs = p.vertices();
        if vs.len() == 1 {
            return format!("{{{}}}", format_rat(&vs[0][0]));
        }
        return format!("[{},{}]", format_rat(&vs[0][0]), format_rat(&vs[1][0]));
    }
    let verts: Vec<String> = p.vertices().iter().map(|v| format_qvec(v)).collect();
    let mut out = format!("conv[{}]", verts.join(","));
    if !p.tail().is_zero() {
        let gens: Vec<String> = p.tail().generators().iter().map(|g| format_ivec(g)).collect();
        out.push_str(&format!("+cone[{}]", gens.join(",")));
    }
    out
}

/// Polyhedral divisors, coefficient then label, terms joined by ` + ` in the
/// model's prime order.  The zero divisor prints as `0`.
pub fn format_ppdivisor(d: &PPDivisor) -> String {
    let mut parts: Vec<String> = Vec::new();
    for label in d.model().primes() {
        let poly = d.coefficient(label);
        if poly != Polyhedron::trivial(d.tail().clone()) {
            parts.push(format!("{}{}", format_polyhedron(&poly), label));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Q-divisors in the model's prime order (`QDivisor`'s own `Display` sorts
/// by label instead).
pub fn format_qdivisor_in(model: &YModel, d: &QDivisor) -> String {
    let ordered = QDivisor::from_pairs(
        model.primes().iter().map(|p| (p.clone(), d.coeff(p))),
    );
    debug_assert_eq!(&ordered, d, "divisor has labels outside the model");
    let mut out = String::new();
    let mut first = true;
    for label in model.primes() {
        let c = d.coeff(label);
        if c.is_zero() {
            continue;
        }
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let a = c.abs();
        if a == Rat::from_integer(Int::from(1)) {
            out.push_str(label);
        } else {
            out.push_str(&format!("{a}*{label}"));
        }
    }
    if first {
        out.push('0');
    }
    out
}

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Scanner<'a> {
        Scanner { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<(), Error> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::ParseError(format!(
                "expected {:?} at byte {} of coefficient expression",
                c as char, self.pos
            )))
        }
    }

    fn try_eat_str(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    /// Characters up to (excluding) any of the stop bytes, at this nesting
    /// level.
    fn take_until(&mut self, stops: &[u8]) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && !stops.contains(&self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("input was a str")
    }

    fn label(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(Error::ParseError(format!("expected a prime label at byte {}", start)));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("input was a str").to_string())
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.s.len()
    }

    fn rat(&mut self, stops: &[u8]) -> Result<Rat, Error> {
        parse_rat(self.take_until(stops))
    }

    fn tuple_list(&mut self) -> Result<Vec<QVec>, Error> {
        self.eat(b'[')?;
        let mut out = Vec::new();
        loop {
            if self.peek() == Some(b']') {
                self.eat(b']')?;
                break;
            }
            self.eat(b'(')?;
            let mut v: QVec = Vec::new();
            loop {
                v.push(self.rat(&[b',', b')'])?);
                if self.peek() == Some(b',') {
                    self.eat(b',')?;
                } else {
                    self.eat(b')')?;
                    break;
                }
            }
            out.push(v);
            if self.peek() == Some(b',') {
                self.eat(b',')?;
            }
        }
        if out.is_empty() {
            return Err(Error::ParseError("empty tuple list".to_string()));
        }
        Ok(out)
    }

    fn polyhedron(&mut self, tail: &Cone) -> Result<Polyhedron, Error> {
        let rank = tail.rank();
        match self.peek() {
            Some(b'{') => {
                self.eat(b'{')?;
                let v = if self.peek() == Some(b'(') {
                    let t = self.take_until(&[b'}']).trim().to_string();
                    parse_qvec(&t)?
                } else {
                    vec![self.rat(&[b'}'])?]
                };
                self.eat(b'}')?;
                if v.len() != rank {
                    return Err(Error::ParseError(format!(
                        "point of rank {} in a rank-{} divisor",
                        v.len(),
                        rank
                    )));
                }
                Polyhedron::new([v], tail.clone())
            }
            Some(b'[') => {
                if rank != 1 {
                    return Err(Error::ParseError(
                        "interval coefficients only exist in rank 1".to_string(),
                    ));
                }
                self.eat(b'[')?;
                let lo = self.rat(&[b','])?;
                self.eat(b',')?;
                let hi = self.rat(&[b']'])?;
                self.eat(b']')?;
                if lo > hi {
                    return Err(Error::EmptyInterval(format!("[{lo},{hi}] is empty")));
                }
                Polyhedron::new([vec![lo], vec![hi]], tail.clone())
            }
            _ if self.try_eat_str("conv") => {
                let verts = self.tuple_list()?;
                if self.try_eat_str("+cone") {
                    let gens = self.tuple_list()?;
                    let gens: Result<Vec<IVec>, Error> = gens
                        .iter()
                        .map(|g| {
                            crate::qvec_to_primitive(g).ok_or_else(|| {
                                Error::ParseError("cone generators must be nonzero".to_string())
                            })
                        })
                        .collect();
                    let parsed = Cone::from_generators(rank, gens?);
                    if &parsed != tail {
                        return Err(Error::TailMismatch(
                            "written cone differs from the shared tail cone".to_string(),
                        ));
                    }
                } else if !tail.is_zero() {
                    return Err(Error::TailMismatch(
                        "coefficient omits the nonzero shared tail cone".to_string(),
                    ));
                }
                Polyhedron::new(verts, tail.clone())
            }
            _ => Err(Error::ParseError(format!(
                "expected a coefficient ({{..}}, [..] or conv[..]) at byte {}",
                self.pos
            ))),
        }
    }
}

/// Parse a polyhedral divisor expression against a known tail cone and
/// model, e.g. `{1/2}D3 + {-1/3}D2 + [0,1/6]E`, or `0`.
pub fn parse_ppdivisor(s: &str, tail: &Cone, model: &Arc<YModel>) -> Result<PPDivisor, Error> {
    let mut sc = Scanner::new(s);
    if sc.try_eat_str("0") && sc.at_end() {
        return Ok(PPDivisor::empty(tail.clone(), Arc::clone(model)));
    }
    let mut sc = Scanner::new(s);
    let mut terms: Vec<(String, Polyhedron)> = Vec::new();
    loop {
        let poly = sc.polyhedron(tail)?;
        let label = sc.label()?;
        terms.push((label, poly));
        if sc.at_end() {
            break;
        }
        sc.eat(b'+')?;
    }
    PPDivisor::new(tail.clone(), terms, Arc::clone(model))
}

/// Parse a single coefficient polyhedron (same grammar as in divisor
/// expressions) against a known tail cone.
pub fn parse_polyhedron(s: &str, tail: &Cone) -> Result<Polyhedron, Error> {
    let mut sc = Scanner::new(s);
    let p = sc.polyhedron(tail)?;
    if !sc.at_end() {
        return Err(Error::ParseError(format!("trailing input after coefficient: {s:?}")));
    }
    Ok(p)
}
