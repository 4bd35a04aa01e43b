//! Quotients of a presented torus action by finite diagonal cyclic groups.
//!
//! Two elementary moves cover everything.  A cyclic group sitting inside the
//! torus rescales the character lattice: the invariant characters form the
//! full-rank sublattice `M' = {u : ⟨w,u⟩ ≡ 0 mod d}`, and the divisor is
//! pushed forward along the dual map `N → N'` of the inclusion — the base
//! model does not move.  A cyclic group acting effectively on the base moves
//! the model instead: the divisor descends through a ramified cover `Y → Y/G`
//! with coefficients divided by the ramification, and the lattice does not
//! move.  General diagonal actions are chains of these two stages; the
//! pipeline runner records each intermediate divisor together with the map
//! triple realizing it.

use crate::convex::Polyhedron;
use crate::divisors::CoverData;
use crate::error::Error;
use crate::linalg::{kernel_basis, row_hnf, IntMatrix};
use crate::ppdiv::{is_valid_map, pullback, pushforward, PPDivisor, PPMap, Plurifunction};
use crate::{IVec, Int, Rat};
use num_traits::Signed;
use std::sync::Arc;

/// One elementary quotient stage.
#[derive(Debug, Clone)]
pub enum QuotientStage {
    /// `μ_order` inside the torus, acting on the character `u` by
    /// `⟨weight, u⟩ mod order`.
    TorusSubgroup { order: Int, weight: IVec },
    /// `μ_order` acting effectively on the base, encoded as the quotient
    /// cover of models.
    Effective { cover: CoverData },
}

impl QuotientStage {
    pub fn order(&self) -> Int {
        match self {
            QuotientStage::TorusSubgroup { order, .. } => order.clone(),
            QuotientStage::Effective { cover } => cover.group_order().clone(),
        }
    }
}

/// A finite diagonal abelian action, one cyclic factor per stage.
#[derive(Debug, Clone)]
pub struct DiagonalGroupAction {
    pub factors: Vec<QuotientStage>,
}

impl DiagonalGroupAction {
    pub fn new(factors: Vec<QuotientStage>) -> DiagonalGroupAction {
        DiagonalGroupAction { factors }
    }

    /// Orders of the cyclic factors.
    pub fn orders(&self) -> Vec<Int> {
        self.factors.iter().map(|s| s.order()).collect()
    }
}

/// Matrix of the dual map `N → N'` induced by the inclusion
/// `M' = {u : ⟨weight, u⟩ ≡ 0 mod order} ⊂ M`: its rows are the Hermite
/// basis of `M'`, so the map is injective with index `order / gcd`.
pub fn sublattice_dual_map(rank: usize, order: &Int, weight: &[Int]) -> IntMatrix {
    assert!(order.is_positive(), "group order must be positive");
    assert_eq!(weight.len(), rank, "weight length must match the lattice rank");
    let mut row: IVec = weight.to_vec();
    row.push(order.clone());
    let congruence = IntMatrix::new(1, rank + 1, row);
    let projected: Vec<IVec> =
        kernel_basis(&congruence).iter().map(|v| v[..rank].to_vec()).collect();
    let basis = row_hnf(&projected);
    assert_eq!(basis.len(), rank, "invariant characters form a full-rank sublattice");
    IntMatrix::new(rank, rank, basis.concat())
}

/// Quotient by `μ_order ⊂ T` acting through `weight`: push the divisor
/// forward along the sublattice rescale, same base model.
pub fn quotient_torus_subgroup(d: &PPDivisor, order: &Int, weight: &[Int]) -> PPDivisor {
    let f = sublattice_dual_map(d.rank(), order, weight);
    let tail = d.tail().image(&f);
    pushforward(&f, d, &tail).expect("injective lattice rescale preserves the tail cone")
}

/// Descend an invariant divisor through an effective quotient cover of its
/// base model: each target coefficient is the shared fiber polyhedron scaled
/// down by the shared ramification index.
///
/// Errors: `ChainMismatch` when the divisor does not live on the cover's
/// source model; `NotInvariant` when a fiber carries unequal polyhedra;
/// `MixedRamification` when a fiber mixes ramification indices.
pub fn quotient_effective(d_g: &PPDivisor, c: &CoverData) -> Result<PPDivisor, Error> {
    if d_g.model() != c.source() {
        return Err(Error::ChainMismatch(format!(
            "divisor on {} cannot descend through a cover of {}",
            d_g.model().name(),
            c.source().name()
        )));
    }
    let mut terms: Vec<(String, Polyhedron)> = Vec::new();
    for (t, fiber) in c.fibers() {
        let mut shared: Option<(&str, Polyhedron, &Int)> = None;
        for (s, r) in fiber {
            let delta = d_g.coefficient(s);
            match &shared {
                None => shared = Some((s, delta, r)),
                Some((s0, delta0, r0)) => {
                    if delta != *delta0 {
                        return Err(Error::NotInvariant(format!(
                            "primes {s0} and {s} over {t} carry different coefficients"
                        )));
                    }
                    if r != *r0 {
                        return Err(Error::MixedRamification(format!(
                            "primes {s0} and {s} over {t} have ramification {r0} and {r}"
                        )));
                    }
                }
            }
        }
        let Some((_, delta, r)) = shared else { continue };
        if delta.is_trivial() {
            continue;
        }
        terms.push((t.clone(), delta.scale(&Rat::new(Int::from(1), r.clone()))));
    }
    let descended = PPDivisor::new(d_g.tail().clone(), terms, Arc::clone(c.target()))?;
    let lifted = pullback(c, &descended).expect("descended divisor lives on the cover target");
    assert_eq!(&lifted, d_g, "descending then pulling back must reproduce the divisor");
    Ok(descended)
}

/// One executed stage: the divisors before and after, the realizing map
/// triple (cover, lattice map, trivial function), and its validity check.
#[derive(Debug, Clone)]
pub struct StageReport {
    pub stage: QuotientStage,
    pub input: PPDivisor,
    pub output: PPDivisor,
    pub map: PPMap,
    pub valid: bool,
}

/// Fold the stages over the divisor.  Each stage report carries the map
/// triple realizing the stage; every shipped stage satisfies the map
/// inequality exactly, and `valid` records the check's outcome.
pub fn run_pipeline(
    d: &PPDivisor,
    stages: &[QuotientStage],
) -> Result<(PPDivisor, Vec<StageReport>), Error> {
    let mut current = d.clone();
    let mut reports = Vec::new();
    for stage in stages {
        let input = current.clone();
        let (output, map) = match stage {
            QuotientStage::TorusSubgroup { order, weight } => {
                if weight.len() != current.rank() {
                    return Err(Error::RankMismatch(format!(
                        "stage weight has length {}, divisor rank is {}",
                        weight.len(),
                        current.rank()
                    )));
                }
                let f = sublattice_dual_map(current.rank(), order, weight);
                let output = quotient_torus_subgroup(&current, order, weight);
                let map = PPMap::new(
                    CoverData::identity(current.model()),
                    f,
                    Plurifunction::trivial(current.rank()),
                )?;
                (output, map)
            }
            QuotientStage::Effective { cover } => {
                let output = quotient_effective(&current, cover)?;
                let map = PPMap::new(
                    cover.clone(),
                    IntMatrix::identity(current.rank()),
                    Plurifunction::trivial(current.rank()),
                )?;
                (output, map)
            }
        };
        let valid = is_valid_map(&map, &input, &output)?;
        reports.push(StageReport { stage: stage.clone(), input, output: output.clone(), map, valid });
        current = output;
    }
    Ok((current, reports))
}
