//! Q-divisors over a finite set of labeled primes, together with the models
//! that make principality decidable.
//!
//! A `YModel` packages the geometric facts the calculus needs about a base
//! variety: its prime-divisor labels, a rule deciding when an integral
//! divisor is principal, and a dictionary of named rational functions given
//! directly by their divisors.  Three rules are supported: the affine plane
//! (trivial class group), the blow-up of the plane at a point (one exceptional
//! class; `Σ aᵢCᵢ + bE` is principal iff `b == Σ aᵢmᵢ` with `mᵢ` the
//! multiplicity of `Cᵢ` at the blown-up point), and cyclic quotients of such
//! blow-ups, whose rational principality weights are supplied as data rather
//! than computed.
//!
//! `CoverData` records a finite cyclic cover between two models as pure
//! bookkeeping: which source primes sit over which target prime, with which
//! ramification index.

use crate::error::Error;
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Identifier of a prime divisor on a model; unique within the model.
pub type PrimeLabel = String;

/// Finitely supported map from prime labels to rationals; zero coefficients
/// are normalized away.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor {
    coeffs: BTreeMap<PrimeLabel, Rat>,
}

impl QDivisor {
    pub fn zero() -> QDivisor {
        QDivisor::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> QDivisor
    where
        I: IntoIterator<Item = (S, Rat)>,
        S: Into<PrimeLabel>,
    {
        let mut d = QDivisor::zero();
        for (label, c) in pairs {
            d.add_coeff(&label.into(), &c);
        }
        d
    }

    pub fn coeff(&self, label: &str) -> Rat {
        self.coeffs.get(label).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_coeff(&mut self, label: &str, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(label.to_string()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(label);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimeLabel> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeLabel, &Rat)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (l, c) in other.iter() {
            out.add_coeff(l, c);
        }
        out
    }

    pub fn sub(&self, other: &QDivisor) -> QDivisor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QDivisor {
        QDivisor { coeffs: self.coeffs.iter().map(|(l, c)| (l.clone(), -c)).collect() }
    }

    pub fn scale(&self, r: &Rat) -> QDivisor {
        if r.is_zero() {
            return QDivisor::zero();
        }
        QDivisor { coeffs: self.coeffs.iter().map(|(l, c)| (l.clone(), c * r)).collect() }
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, c)) in self.coeffs.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{a}*{label}")?;
            }
        }
        Ok(())
    }
}

/// Formal Z-linear combination of a model's named functions, written
/// multiplicatively: the combination `{u: 2, g: -1}` stands for `u²/g`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalCombo {
    terms: BTreeMap<String, Int>,
}

impl FormalCombo {
    pub fn one() -> FormalCombo {
        FormalCombo::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> FormalCombo
    where
        I: IntoIterator<Item = (S, Int)>,
        S: Into<String>,
    {
        let mut c = FormalCombo::one();
        for (name, e) in pairs {
            c.add_term(&name.into(), &e);
        }
        c
    }

    pub fn single(name: &str) -> FormalCombo {
        FormalCombo::from_pairs([(name, Int::one())])
    }

    pub fn add_term(&mut self, name: &str, exponent: &Int) {
        if exponent.is_zero() {
            return;
        }
        let entry = self.terms.entry(name.to_string()).or_insert_with(Int::zero);
        *entry += exponent;
        if entry.is_zero() {
            self.terms.remove(name);
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Int)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &FormalCombo) -> FormalCombo {
        let mut out = self.clone();
        for (name, e) in other.iter() {
            out.add_term(name, e);
        }
        out
    }

    pub fn pow(&self, e: &Int) -> FormalCombo {
        if e.is_zero() {
            return FormalCombo::one();
        }
        FormalCombo { terms: self.terms.iter().map(|(n, x)| (n.clone(), x * e)).collect() }
    }

    pub fn inv(&self) -> FormalCombo {
        FormalCombo { terms: self.terms.iter().map(|(n, x)| (n.clone(), -x)).collect() }
    }

    /// Divisor of the combination inside `model`.
    pub fn divisor_in(&self, model: &YModel) -> Result<QDivisor, Error> {
        let mut out = QDivisor::zero();
        for (name, e) in self.iter() {
            let d = model
                .known_function(name)
                .ok_or_else(|| Error::UnknownFunction(format!("{name} not registered in model {}", model.name())))?;
            out = out.add(&d.scale(&Rat::from_integer(e.clone())));
        }
        Ok(out)
    }
}

impl fmt::Display for FormalCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        for (i, (name, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Principality rule of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    /// Trivial class group: every integral divisor is principal.
    AffinePlane,
    /// Blow-up of the plane at a point.  The class group is generated by the
    /// exceptional divisor; a divisor is principal iff its exceptional
    /// coefficient equals the multiplicity-weighted sum of the others.
    BlowupA2 { exceptional: PrimeLabel, multiplicities: BTreeMap<PrimeLabel, Int> },
    /// Finite cyclic quotient of such a blow-up.  The rational principality
    /// weights are supplied as data (no class-group computation happens
    /// here); checks on these models are only as good as the weights.
    QuotBlowup { exceptional: PrimeLabel, weights: BTreeMap<PrimeLabel, Rat>, group_order: Int },
}

/// A base model: labeled primes, a principality rule, and named rational
/// functions recorded directly by their (principal) divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YModel {
    name: String,
    kind: ModelKind,
    primes: Vec<PrimeLabel>,
    known_functions: BTreeMap<String, QDivisor>,
}

impl YModel {
    pub fn new<I, S>(
        name: &str,
        kind: ModelKind,
        primes: I,
        known_functions: BTreeMap<String, QDivisor>,
    ) -> Result<Arc<YModel>, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<PrimeLabel>,
    {
        let primes: Vec<PrimeLabel> = primes.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for p in &primes {
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicateLabel(format!("prime {p} listed twice in model {name}")));
            }
        }
        let model = YModel { name: name.to_string(), kind, primes, known_functions };
        match &model.kind {
            ModelKind::AffinePlane => {}
            ModelKind::BlowupA2 { exceptional, multiplicities } => {
                model.require_prime(exceptional)?;
                for p in multiplicities.keys() {
                    model.require_prime(p)?;
                }
            }
            ModelKind::QuotBlowup { exceptional, weights, group_order } => {
                model.require_prime(exceptional)?;
                for p in weights.keys() {
                    model.require_prime(p)?;
                }
                if !group_order.is_positive() {
                    return Err(Error::InvalidParameters(format!(
                        "group order {group_order} must be positive"
                    )));
                }
            }
        }
        for (fname, d) in &model.known_functions {
            if !model.is_principal(d)? {
                return Err(Error::InvalidParameters(format!(
                    "divisor of function {fname} is not principal in model {name}"
                )));
            }
        }
        Ok(Arc::new(model))
    }

    fn require_prime(&self, label: &str) -> Result<(), Error> {
        if self.primes.iter().any(|p| p == label) {
            Ok(())
        } else {
            Err(Error::UnknownLabel(format!("{label} is not a prime of model {}", self.name)))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn primes(&self) -> &[PrimeLabel] {
        &self.primes
    }

    pub fn has_prime(&self, label: &str) -> bool {
        self.primes.iter().any(|p| p == label)
    }

    pub fn known_function(&self, name: &str) -> Option<&QDivisor> {
        self.known_functions.get(name)
    }

    pub fn known_functions(&self) -> impl Iterator<Item = (&String, &QDivisor)> {
        self.known_functions.iter()
    }

    /// Whether the integral divisor `d` is principal under this model's rule.
    pub fn is_principal(&self, d: &QDivisor) -> Result<bool, Error> {
        for label in d.support() {
            self.require_prime(label)?;
        }
        if !d.is_integral() {
            return Err(Error::NonIntegral(format!(
                "principality is decided on integral divisors, got {d}"
            )));
        }
        Ok(match &self.kind {
            ModelKind::AffinePlane => true,
            ModelKind::BlowupA2 { exceptional, multiplicities } => {
                let mut weighted = Rat::zero();
                for (label, c) in d.iter() {
                    if label != exceptional {
                        let m = multiplicities.get(label).cloned().unwrap_or_else(Int::zero);
                        weighted += c * Rat::from_integer(m);
                    }
                }
                d.coeff(exceptional) == weighted
            }
            ModelKind::QuotBlowup { exceptional, weights, .. } => {
                let mut weighted = Rat::zero();
                for (label, c) in d.iter() {
                    if label != exceptional {
                        let w = weights.get(label).cloned().unwrap_or_else(Rat::zero);
                        weighted += c * w;
                    }
                }
                d.coeff(exceptional) == weighted
            }
        })
    }
}

/// Finite cyclic cover between two models, as ramification bookkeeping:
/// each target prime carries the list of source primes over it with their
/// ramification indices.  The fibers partition the source primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    source: Arc<YModel>,
    target: Arc<YModel>,
    prime_map: BTreeMap<PrimeLabel, Vec<(PrimeLabel, Int)>>,
    group_order: Int,
}

impl CoverData {
    pub fn new(
        source: Arc<YModel>,
        target: Arc<YModel>,
        prime_map: BTreeMap<PrimeLabel, Vec<(PrimeLabel, Int)>>,
        group_order: Int,
    ) -> Result<CoverData, Error> {
        if !group_order.is_positive() {
            return Err(Error::InvalidParameters(format!("cover degree {group_order} must be positive")));
        }
        let mut covered: BTreeSet<&PrimeLabel> = BTreeSet::new();
        for (t, fiber) in &prime_map {
            target.require_prime(t)?;
            for (s, r) in fiber {
                source.require_prime(s)?;
                if !r.is_positive() {
                    return Err(Error::InvalidParameters(format!(
                        "ramification index {r} over {t} must be positive"
                    )));
                }
                if !covered.insert(s) {
                    return Err(Error::DuplicateLabel(format!("source prime {s} lies in two fibers")));
                }
            }
        }
        for p in source.primes() {
            if !covered.contains(p) {
                return Err(Error::MissingLabel(format!("source prime {p} is in no fiber")));
            }
        }
        Ok(CoverData { source, target, prime_map, group_order })
    }

    /// Degree-1 cover of a model by itself: every prime over itself,
    /// unramified.
    pub fn identity(model: &Arc<YModel>) -> CoverData {
        let prime_map = model
            .primes()
            .iter()
            .map(|p| (p.clone(), vec![(p.clone(), Int::one())]))
            .collect();
        CoverData {
            source: Arc::clone(model),
            target: Arc::clone(model),
            prime_map,
            group_order: Int::one(),
        }
    }

    pub fn source(&self) -> &Arc<YModel> {
        &self.source
    }

    pub fn target(&self) -> &Arc<YModel> {
        &self.target
    }

    pub fn group_order(&self) -> &Int {
        &self.group_order
    }

    /// Fiber over a target prime: empty when nothing lies over it.
    pub fn fiber(&self, target_prime: &str) -> &[(PrimeLabel, Int)] {
        self.prime_map.get(target_prime).map_or(&[], |f| f.as_slice())
    }

    pub fn fibers(&self) -> impl Iterator<Item = (&PrimeLabel, &Vec<(PrimeLabel, Int)>)> {
        self.prime_map.iter()
    }

    /// Composite cover: first `self`, then `outer` (so `outer`'s source model
    /// must be `self`'s target).  Ramification indices multiply.
    pub fn compose(outer: &CoverData, inner: &CoverData) -> Result<CoverData, Error> {
        if outer.source != inner.target {
            return Err(Error::ChainMismatch(format!(
                "cover of {} cannot follow cover onto {}",
                outer.source.name(),
                inner.target.name()
            )));
        }
        let mut prime_map: BTreeMap<PrimeLabel, Vec<(PrimeLabel, Int)>> = BTreeMap::new();
        for (t, mid_fiber) in &outer.prime_map {
            let mut fiber: Vec<(PrimeLabel, Int)> = Vec::new();
            for (m, r2) in mid_fiber {
                for (s, r1) in inner.fiber(m) {
                    fiber.push((s.clone(), r1 * r2));
                }
            }
            if !fiber.is_empty() {
                prime_map.insert(t.clone(), fiber);
            }
        }
        CoverData::new(
            Arc::clone(&inner.source),
            Arc::clone(&outer.target),
            prime_map,
            &inner.group_order * &outer.group_order,
        )
    }
}

/// Pull a Q-divisor on the target back to the source: the coefficient of a
/// source prime is its ramification index times the coefficient downstairs.
pub fn pullback_qdivisor(c: &CoverData, d: &QDivisor) -> Result<QDivisor, Error> {
    let mut out = QDivisor::zero();
    for (t, a) in d.iter() {
        c.target.require_prime(t)?;
        for (s, r) in c.fiber(t) {
            out.add_coeff(s, &(a * Rat::from_integer(r.clone())));
        }
    }
    Ok(out)
}
