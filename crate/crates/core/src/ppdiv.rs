//! Polyhedral divisors and their calculus: evaluation, push-forward along
//! lattice maps, pull-back along cyclic covers, Minkowski addition,
//! translation by plurifunction divisors, linear equivalence with witness
//! search, and validity of map triples.
//!
//! A polyhedral divisor assigns to finitely many prime divisors of a base
//! model a polyhedron in the rational vector space of a lattice `N`, all
//! sharing one tail cone.  Evaluating at a dual-lattice vector `u` in the
//! weight cone takes the support minimum of every coefficient and yields an
//! ordinary Q-divisor.  Maps between such objects are triples
//! `(cover, F, f)` — a cyclic cover of the bases, a lattice map, and a
//! plurifunction — compared through the inequality "pull-back of the target
//! bounds push-forward of the source plus `div(f)`", which termwise is
//! polyhedron containment.

use crate::convex::{Cone, Polyhedron};
use crate::divisors::{pullback_qdivisor, CoverData, FormalCombo, PrimeLabel, QDivisor, YModel};
use crate::error::Error;
use crate::linalg::{solve_integer, IntMatrix};
use crate::{Int, QVec, Rat};
use num_traits::Signed;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Polyhedral divisor: `Σ Δᵢ ⊗ Dᵢ` with a shared tail cone, over a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPDivisor {
    tail: Cone,
    terms: BTreeMap<PrimeLabel, Polyhedron>,
    model: Arc<YModel>,
}

impl PPDivisor {
    /// Canonicalizing constructor: every coefficient must carry the shared
    /// tail cone, labels must be primes of the model, and coefficients equal
    /// to the trivial polyhedron (origin plus tail) are dropped.
    pub fn new<I>(tail: Cone, terms: I, model: Arc<YModel>) -> Result<PPDivisor, Error>
    where
        I: IntoIterator<Item = (PrimeLabel, Polyhedron)>,
    {
        let mut kept: BTreeMap<PrimeLabel, Polyhedron> = BTreeMap::new();
        let trivial = Polyhedron::trivial(tail.clone());
        for (label, poly) in terms {
            if !model.has_prime(&label) {
                return Err(Error::UnknownLabel(format!(
                    "{label} is not a prime of model {}",
                    model.name()
                )));
            }
            if poly.tail() != &tail {
                return Err(Error::TailMismatch(format!(
                    "coefficient of {label} does not carry the shared tail cone"
                )));
            }
            if kept.contains_key(&label) {
                return Err(Error::DuplicateLabel(format!("{label} appears twice")));
            }
            if poly != trivial {
                kept.insert(label, poly);
            }
        }
        Ok(PPDivisor { tail, terms: kept, model })
    }

    /// The zero divisor for a given tail cone and model.
    pub fn empty(tail: Cone, model: Arc<YModel>) -> PPDivisor {
        PPDivisor { tail, terms: BTreeMap::new(), model }
    }

    pub fn rank(&self) -> usize {
        self.tail.rank()
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn model(&self) -> &Arc<YModel> {
        &self.model
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PrimeLabel, &Polyhedron)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a prime, materializing the trivial polyhedron for
    /// primes outside the support.
    pub fn coefficient(&self, label: &str) -> Polyhedron {
        self.terms
            .get(label)
            .cloned()
            .unwrap_or_else(|| Polyhedron::trivial(self.tail.clone()))
    }

    fn support_union<'a>(&'a self, other: &'a PPDivisor) -> BTreeSet<&'a PrimeLabel> {
        self.terms.keys().chain(other.terms.keys()).collect()
    }
}

/// `D(u)`: the Q-divisor whose coefficient at `Dᵢ` is `min_{v in Δᵢ} <u, v>`.
/// Defined on the weight cone (dual of the tail cone) only.
pub fn evaluate(d: &PPDivisor, u: &[Rat]) -> Result<QDivisor, Error> {
    if u.len() != d.rank() {
        return Err(Error::RankMismatch(format!(
            "weight vector of length {} against lattice rank {}",
            u.len(),
            d.rank()
        )));
    }
    if !d.tail.generators().iter().all(|g| !crate::dot_iq(g, u).is_negative()) {
        return Err(Error::OutsideWeightCone(format!(
            "weight vector is outside the dual of the tail cone"
        )));
    }
    let mut out = QDivisor::zero();
    for (label, poly) in d.terms() {
        let m = poly
            .support_min(u)
            .finite()
            .expect("support minimum is finite on the weight cone");
        out.add_coeff(label, &m);
    }
    Ok(out)
}

/// Push-forward along a lattice map: every coefficient becomes
/// `F(Δᵢ) + target_tail`.  Requires `F(tail) ⊆ target_tail`.
pub fn pushforward(f: &IntMatrix, d: &PPDivisor, target_tail: &Cone) -> Result<PPDivisor, Error> {
    if f.cols() != d.rank() || f.rows() != target_tail.rank() {
        return Err(Error::RankMismatch(format!(
            "lattice map is {}x{}, source rank {}, target rank {}",
            f.rows(),
            f.cols(),
            d.rank(),
            target_tail.rank()
        )));
    }
    for g in d.tail.generators() {
        if !target_tail.contains_int(&f.apply(&g)) {
            return Err(Error::TailViolation(format!(
                "image of the tail cone is not contained in the target tail"
            )));
        }
    }
    let mut terms: Vec<(PrimeLabel, Polyhedron)> = Vec::new();
    for (label, poly) in d.terms() {
        terms.push((label.clone(), poly.map_through(f, target_tail.clone())?));
    }
    PPDivisor::new(target_tail.clone(), terms, Arc::clone(&d.model))
}

/// Polyhedral pull-back along a cover: the coefficient of a source prime is
/// the coefficient of the prime below it, dilated by the ramification index.
pub fn pullback(c: &CoverData, d: &PPDivisor) -> Result<PPDivisor, Error> {
    if &d.model != c.target() {
        return Err(Error::ChainMismatch(format!(
            "divisor lives on {}, cover descends to {}",
            d.model.name(),
            c.target().name()
        )));
    }
    let mut terms: Vec<(PrimeLabel, Polyhedron)> = Vec::new();
    for (label, poly) in d.terms() {
        let fiber = c.fiber(label);
        if fiber.is_empty() {
            return Err(Error::UnknownLabel(format!(
                "prime {label} carries a nontrivial coefficient but has an empty fiber"
            )));
        }
        for (s, r) in fiber {
            terms.push((s.clone(), poly.scale(&Rat::from_integer(r.clone()))));
        }
    }
    PPDivisor::new(d.tail.clone(), terms, Arc::clone(c.source()))
}

/// Termwise Minkowski sum; missing terms count as the trivial polyhedron.
pub fn add(d1: &PPDivisor, d2: &PPDivisor) -> Result<PPDivisor, Error> {
    if d1.model != d2.model {
        return Err(Error::ChainMismatch("sum of divisors over different models".into()));
    }
    if d1.tail != d2.tail {
        return Err(Error::TailMismatch("sum of divisors with different tail cones".into()));
    }
    let mut terms: Vec<(PrimeLabel, Polyhedron)> = Vec::new();
    for label in d1.support_union(d2) {
        terms.push((label.clone(), d1.coefficient(label).minkowski(&d2.coefficient(label))?));
    }
    PPDivisor::new(d1.tail.clone(), terms, Arc::clone(&d1.model))
}

/// Termwise Minkowski difference: the unique `X` with `X + d2 == d1`, when
/// every coefficient difference exists.
pub fn minkowski_difference(d1: &PPDivisor, d2: &PPDivisor) -> Option<PPDivisor> {
    if d1.model != d2.model || d1.tail != d2.tail {
        return None;
    }
    let mut terms: Vec<(PrimeLabel, Polyhedron)> = Vec::new();
    for label in d1.support_union(d2) {
        let diff = d1.coefficient(label).minkowski_difference(&d2.coefficient(label))?;
        terms.push((label.clone(), diff));
    }
    PPDivisor::new(d1.tail.clone(), terms, Arc::clone(&d1.model)).ok()
}

/// Plurifunction: one formal combination of the model's functions per basis
/// direction of the (target) lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plurifunction {
    components: Vec<FormalCombo>,
}

impl Plurifunction {
    pub fn trivial(rank: usize) -> Plurifunction {
        Plurifunction { components: vec![FormalCombo::one(); rank] }
    }

    pub fn new(components: Vec<FormalCombo>) -> Plurifunction {
        Plurifunction { components }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[FormalCombo] {
        &self.components
    }

    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(|c| c.is_one())
    }

    /// Componentwise product (divisors add).
    pub fn mul(&self, other: &Plurifunction) -> Plurifunction {
        assert_eq!(self.rank(), other.rank());
        Plurifunction {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// The divisor of each component inside `model`.
    pub fn component_divisors(&self, model: &YModel) -> Result<Vec<QDivisor>, Error> {
        self.components.iter().map(|c| c.divisor_in(model)).collect()
    }
}

/// Translate every coefficient polyhedron by the vector of orders of the
/// plurifunction along its prime: the divisor-level statement `D + div(f)`.
pub fn translate_by_div(d: &PPDivisor, f: &Plurifunction) -> Result<PPDivisor, Error> {
    if f.rank() != d.rank() {
        return Err(Error::RankMismatch(format!(
            "plurifunction has {} components, lattice rank is {}",
            f.rank(),
            d.rank()
        )));
    }
    let divs = f.component_divisors(&d.model)?;
    let mut support: BTreeSet<PrimeLabel> = d.terms.keys().cloned().collect();
    for dv in &divs {
        support.extend(dv.support().cloned());
    }
    let mut terms: Vec<(PrimeLabel, Polyhedron)> = Vec::new();
    for label in support {
        let t: QVec = divs.iter().map(|dv| dv.coeff(&label)).collect();
        terms.push((label.clone(), d.coefficient(&label).translate(&t)));
    }
    PPDivisor::new(d.tail.clone(), terms, Arc::clone(&d.model))
}

/// Search the model's registered functions for an integer combination whose
/// divisor is exactly `target`.
fn solve_in_known_functions(model: &YModel, target: &QDivisor) -> Option<FormalCombo> {
    if !target.is_integral() {
        return None;
    }
    let names: Vec<String> = model.known_functions().map(|(n, _)| n.clone()).collect();
    let primes = model.primes();
    let mut a = IntMatrix::zeros(primes.len(), names.len());
    for (j, name) in names.iter().enumerate() {
        let div = model.known_function(name).expect("name comes from the model");
        for (i, p) in primes.iter().enumerate() {
            a[(i, j)] = div.coeff(p).to_integer();
        }
    }
    let b: Vec<Int> = primes.iter().map(|p| target.coeff(p).to_integer()).collect();
    let x = solve_integer(&a, &b)?;
    Some(FormalCombo::from_pairs(names.into_iter().zip(x)))
}

/// Linear equivalence: `d2 == d1 + div(f)` for some plurifunction `f` whose
/// per-direction divisor is principal.  Returns the witness when the model's
/// registered functions span one.
pub fn linearly_equivalent(
    d1: &PPDivisor,
    d2: &PPDivisor,
) -> Result<(bool, Option<Plurifunction>), Error> {
    if d1.model != d2.model || d1.tail != d2.tail {
        return Ok((false, None));
    }
    let rank = d1.rank();
    let mut translations: Vec<(PrimeLabel, QVec)> = Vec::new();
    for label in d1.support_union(d2) {
        let p1 = d1.coefficient(label);
        let p2 = d2.coefficient(label);
        if p1.vertices().len() != p2.vertices().len() {
            return Ok((false, None));
        }
        let t: QVec = p2.vertices()[0]
            .iter()
            .zip(&p1.vertices()[0])
            .map(|(b, a)| b - a)
            .collect();
        if p1.translate(&t) != p2 {
            return Ok((false, None));
        }
        translations.push((label.clone(), t));
    }
    let mut direction_divisors: Vec<QDivisor> = Vec::new();
    for j in 0..rank {
        let dir = QDivisor::from_pairs(
            translations.iter().map(|(label, t)| (label.clone(), t[j].clone())),
        );
        if !dir.is_integral() {
            return Ok((false, None));
        }
        if !d1.model.is_principal(&dir)? {
            return Ok((false, None));
        }
        direction_divisors.push(dir);
    }
    let witnesses: Option<Vec<FormalCombo>> = direction_divisors
        .iter()
        .map(|dir| solve_in_known_functions(&d1.model, dir))
        .collect();
    Ok((true, witnesses.map(Plurifunction::new)))
}

/// Map triple between polyhedral divisors: a cover of the bases, a lattice
/// map, and a plurifunction.  The identity cover is an ordinary `CoverData`
/// of degree one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPMap {
    cover: CoverData,
    matrix: IntMatrix,
    f: Plurifunction,
}

impl PPMap {
    pub fn new(cover: CoverData, matrix: IntMatrix, f: Plurifunction) -> Result<PPMap, Error> {
        if f.rank() != matrix.rows() {
            return Err(Error::RankMismatch(format!(
                "plurifunction has {} components, lattice map has {} rows",
                f.rank(),
                matrix.rows()
            )));
        }
        Ok(PPMap { cover, matrix, f })
    }

    /// The identity triple on a divisor's ambient data.
    pub fn identity(d: &PPDivisor) -> PPMap {
        PPMap {
            cover: CoverData::identity(d.model()),
            matrix: IntMatrix::identity(d.rank()),
            f: Plurifunction::trivial(d.rank()),
        }
    }

    pub fn cover(&self) -> &CoverData {
        &self.cover
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn plurifunction(&self) -> &Plurifunction {
        &self.f
    }
}

/// Whether the triple `m` is a valid map from `d` to `d2`: termwise, the
/// pull-back of `d2` must contain the push-forward of `d` translated by
/// `div(f)`.
pub fn is_valid_map(m: &PPMap, d: &PPDivisor, d2: &PPDivisor) -> Result<bool, Error> {
    if &d.model != m.cover.source() || &d2.model != m.cover.target() {
        return Err(Error::ChainMismatch("divisor models do not match the cover".into()));
    }
    if m.matrix.cols() != d.rank() || m.matrix.rows() != d2.rank() {
        return Err(Error::ChainMismatch("lattice map does not match the divisor ranks".into()));
    }
    let lhs = pullback(&m.cover, d2)?;
    let pushed = pushforward(&m.matrix, d, d2.tail())?;
    let rhs = translate_by_div(&pushed, &m.f)?;
    for label in lhs.support_union(&rhs) {
        if !lhs.coefficient(label).contains_poly(&rhs.coefficient(label))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Express the pull-back of a single registered target function through a
/// cover in the source model's registered functions, matching divisors.
fn pullback_function(c: &CoverData, name: &str) -> Result<FormalCombo, Error> {
    if c.source() == c.target() && c.group_order() == &Int::from(1) {
        // identity cover: functions restrict as themselves
        return Ok(FormalCombo::single(name));
    }
    let div = c
        .target()
        .known_function(name)
        .ok_or_else(|| Error::UnknownFunction(format!("{name} not registered in model {}", c.target().name())))?;
    let pulled = pullback_qdivisor(c, div)?;
    solve_in_known_functions(c.source(), &pulled).ok_or_else(|| {
        Error::UnknownFunction(format!(
            "pull-back of {name} is not expressible in the functions of model {}",
            c.source().name()
        ))
    })
}

fn pullback_combo(c: &CoverData, combo: &FormalCombo) -> Result<FormalCombo, Error> {
    let mut out = FormalCombo::one();
    for (name, e) in combo.iter() {
        out = out.mul(&pullback_function(c, name)?.pow(e));
    }
    Ok(out)
}

/// Composition of triples: covers compose, lattice maps multiply, and the
/// plurifunction is `outer_matrix(f_inner) * pullback(f_outer)`.
pub fn compose(outer: &PPMap, inner: &PPMap) -> Result<PPMap, Error> {
    if outer.matrix.cols() != inner.matrix.rows() {
        return Err(Error::ChainMismatch("lattice maps are not composable".into()));
    }
    let cover = CoverData::compose(&outer.cover, &inner.cover)?;
    let matrix = outer.matrix.mul(&inner.matrix);
    let mut components: Vec<FormalCombo> = Vec::new();
    for i in 0..outer.matrix.rows() {
        // image of the inner plurifunction under the outer lattice map
        let mut comp = FormalCombo::one();
        for j in 0..outer.matrix.cols() {
            comp = comp.mul(&inner.f.components()[j].pow(&outer.matrix[(i, j)]));
        }
        // times the pull-back of the outer plurifunction along the inner cover
        comp = comp.mul(&pullback_combo(&inner.cover, &outer.f.components()[i])?);
        components.push(comp);
    }
    PPMap::new(cover, matrix, Plurifunction::new(components))
}

/// Tri-state outcome of a validity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckFlag {
    True,
    False,
    Unknown,
}

impl CheckFlag {
    pub fn from_bool(b: bool) -> CheckFlag {
        if b {
            CheckFlag::True
        } else {
            CheckFlag::False
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckFlag::True => "true",
            CheckFlag::False => "false",
            CheckFlag::Unknown => "UNKNOWN",
        }
    }
}

/// Mechanically checkable structural facts about a (candidate) polyhedral
/// divisor, plus the positivity conditions that are out of reach here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub pointed: CheckFlag,
    pub shared_tail: CheckFlag,
    pub labels_ok: CheckFlag,
    pub effective_primes: CheckFlag,
    pub semiample: CheckFlag,
    pub big: CheckFlag,
    pub notes: Vec<String>,
}

impl ValidityReport {
    pub fn structurally_valid(&self) -> bool {
        self.pointed == CheckFlag::True
            && self.shared_tail == CheckFlag::True
            && self.labels_ok == CheckFlag::True
    }
}

/// Validity report on raw data (so broken inputs can be diagnosed before the
/// canonicalizing constructor rejects them).
pub fn validity_report_raw(
    tail: &Cone,
    terms: &BTreeMap<PrimeLabel, Polyhedron>,
    model: &YModel,
) -> ValidityReport {
    let mut notes = Vec::new();
    let pointed = CheckFlag::from_bool(tail.is_pointed());
    if pointed == CheckFlag::False {
        notes.push("tail cone has a nonzero lineality space".to_string());
    }
    let shared_tail = CheckFlag::from_bool(terms.values().all(|p| p.tail() == tail));
    if shared_tail == CheckFlag::False {
        notes.push("some coefficient polyhedron carries a different tail cone".to_string());
    }
    let labels_ok = CheckFlag::from_bool(terms.keys().all(|l| model.has_prime(l)));
    if labels_ok == CheckFlag::False {
        notes.push("some label is not a prime of the model".to_string());
    }
    // labels denote prime divisors, so coefficients are attached to effective
    // divisors by construction
    let effective_primes = CheckFlag::True;
    let (semiample, big) = match model.kind() {
        crate::divisors::ModelKind::AffinePlane => {
            notes.push(
                "positivity holds automatically: every divisor class on the affine plane is trivial"
                    .to_string(),
            );
            (CheckFlag::True, CheckFlag::True)
        }
        _ => {
            notes.push(
                "semi-ampleness and bigness of the evaluations are not decided by this calculus"
                    .to_string(),
            );
            (CheckFlag::Unknown, CheckFlag::Unknown)
        }
    };
    ValidityReport { pointed, shared_tail, labels_ok, effective_primes, semiample, big, notes }
}

pub fn validity_report(d: &PPDivisor) -> ValidityReport {
    let terms: BTreeMap<PrimeLabel, Polyhedron> =
        d.terms().map(|(l, p)| (l.clone(), p.clone())).collect();
    validity_report_raw(&d.tail, &terms, &d.model)
}
