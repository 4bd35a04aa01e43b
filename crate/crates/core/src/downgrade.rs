//! Reading a linear torus action on affine space as polyhedral-divisor data.
//!
//! Input: an `m`-dimensional ambient space on which a rank-`k` subtorus acts
//! with weight matrix `F` (one row per coordinate).  Splitting the weight
//! cokernel `0 → Z^k → Z^m → Z^(m−k) → 0` with a rational section `s`
//! produces everything the calculus needs: the tail cone
//! `σ = s(Q^m_{≥0} ∩ F(Q^k))`, one ray `vᵢ` per nonzero primitive column of
//! the presentation matrix `P`, and the coefficient polytope
//! `Πᵢ = s({x ≥ 0 : P·x = vᵢ})` for each ray.  Labeling rays with prime
//! divisors of a base model then assembles an honest polyhedral divisor.
//!
//! Identifying which geometric divisor belongs to which ray is inspection,
//! not computation: the caller supplies labels per ambient coordinate, and
//! coordinates whose rays carry the trivial polytope may stay unlabeled.

use crate::convex::{Cone, Polyhedron};
use crate::divisors::{PrimeLabel, QDivisor, YModel};
use crate::error::Error;
use crate::linalg::{cokernel_presentation, primitive_vector, ExactSequence, QMatrix};
use crate::ppdiv::PPDivisor;
use crate::{qvec_to_primitive, to_qvec, IVec, Int};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A linear subtorus action: `m × k` weight matrix (row = weights of one
/// ambient coordinate), plus optional labels naming the divisor cut out by
/// each ambient coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightData {
    f: crate::linalg::IntMatrix,
    column_labels: BTreeMap<usize, PrimeLabel>,
}

impl WeightData {
    /// `f` must be `m × k` with `m ≥ k`; `column_labels` is keyed by ambient
    /// coordinate index (0-based).
    pub fn new(
        f: crate::linalg::IntMatrix,
        column_labels: BTreeMap<usize, PrimeLabel>,
    ) -> Result<WeightData, Error> {
        if f.rows() < f.cols() {
            return Err(Error::NotInjective(format!(
                "weight matrix is {}x{}; need at least as many coordinates as torus factors",
                f.rows(),
                f.cols()
            )));
        }
        for &j in column_labels.keys() {
            if j >= f.rows() {
                return Err(Error::UnknownLabel(format!(
                    "label attached to coordinate {j}, but there are only {}",
                    f.rows()
                )));
            }
        }
        Ok(WeightData { f, column_labels })
    }

    pub fn torus_rank(&self) -> usize {
        self.f.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.f.rows()
    }

    pub fn weights(&self) -> &crate::linalg::IntMatrix {
        &self.f
    }

    pub fn column_labels(&self) -> &BTreeMap<usize, PrimeLabel> {
        &self.column_labels
    }
}

/// Output of the downgrade: the split exact sequence, the tail cone, the
/// rays with their originating ambient coordinates, and one polytope per ray
/// (every polytope's tail cone is `sigma`).
#[derive(Debug, Clone)]
pub struct DowngradeResult {
    pub seq: ExactSequence,
    pub sigma: Cone,
    pub rays: Vec<IVec>,
    pub polytopes: Vec<Polyhedron>,
    /// Ambient coordinates whose presentation column spans each ray.
    pub ray_columns: Vec<Vec<usize>>,
    /// Ray index → prime label, translated from the coordinate labels.
    pub ray_labels: BTreeMap<usize, PrimeLabel>,
}

impl DowngradeResult {
    /// Index of the ray carrying the given ambient coordinate, if any.
    pub fn ray_of_column(&self, j: usize) -> Option<usize> {
        self.ray_columns.iter().position(|cols| cols.contains(&j))
    }
}

/// Run the downgrade with the deterministic section produced by the Smith
/// normal form of the weight matrix.
pub fn downgrade(w: &WeightData) -> Result<DowngradeResult, Error> {
    let seq = cokernel_presentation(w.weights())?;
    downgrade_with_seq(w, seq)
}

/// Run the downgrade with a caller-chosen rational section of the weight
/// matrix (results for different sections differ by coefficient
/// translations, i.e. are linearly equivalent divisors).
pub fn downgrade_with_section(w: &WeightData, s: QMatrix) -> Result<DowngradeResult, Error> {
    let seq = cokernel_presentation(w.weights())?.with_section(s)?;
    downgrade_with_seq(w, seq)
}

fn downgrade_with_seq(w: &WeightData, seq: ExactSequence) -> Result<DowngradeResult, Error> {
    let f = w.weights();
    let (m, k) = (f.rows(), f.cols());
    assert!(seq.p.mul(&seq.f).rank() == 0, "presentation does not kill the weights");
    assert!(seq.s.mul_int(&seq.f).is_identity(), "section does not split the weights");
    // tail cone: membership of F(lambda) in the nonnegative orthant, read
    // through the section, is the system F*lambda >= 0
    let sigma = Cone::from_inequalities(k, &(0..m).map(|i| f.row(i).to_vec()).collect::<Vec<_>>());
    let mut rays: Vec<IVec> = Vec::new();
    let mut ray_columns: Vec<Vec<usize>> = Vec::new();
    for j in 0..m {
        let col = seq.p.col(j);
        if col.iter().all(|x| x.is_zero()) {
            continue;
        }
        let v = primitive_vector(&col).expect("column is nonzero");
        if let Some(i) = rays.iter().position(|r| r == &v) {
            ray_columns[i].push(j);
        } else {
            rays.push(v);
            ray_columns.push(vec![j]);
        }
    }
    let mut polytopes: Vec<Polyhedron> = Vec::new();
    for v in &rays {
        polytopes.push(ray_polytope(&seq, &sigma, v));
    }
    let mut ray_labels: BTreeMap<usize, PrimeLabel> = BTreeMap::new();
    for (&j, label) in w.column_labels() {
        let Some(i) = ray_columns.iter().position(|cols| cols.contains(&j)) else {
            // coordinate with zero presentation column: its divisor does not
            // meet the quotient data, so the label is unused
            continue;
        };
        if let Some(old) = ray_labels.get(&i) {
            if old != label {
                return Err(Error::DuplicateLabel(format!(
                    "coordinates of one ray carry different labels {old} and {label}"
                )));
            }
        }
        ray_labels.insert(i, label.clone());
    }
    Ok(DowngradeResult { seq, sigma, rays, polytopes, ray_columns, ray_labels })
}

/// `Πᵢ = s({x ≥ 0 : P·x = vᵢ})`, exactly.
fn ray_polytope(seq: &ExactSequence, sigma: &Cone, v: &IVec) -> Polyhedron {
    let m = seq.p.cols();
    let q = seq.p.rows();
    // homogenized inequality rows (a, c): coordinates nonnegative, P*x == v
    let mut rows: Vec<IVec> = Vec::new();
    for j in 0..m {
        let mut r = vec![Int::zero(); m + 1];
        r[j] = Int::from(1);
        rows.push(r);
    }
    for i in 0..q {
        let mut pos: IVec = seq.p.row(i).to_vec();
        pos.push(-v[i].clone());
        let neg: IVec = pos.iter().map(|x| -x).collect();
        rows.push(pos);
        rows.push(neg);
    }
    let solutions = Polyhedron::from_hrep(m, &rows)
        .expect("a presentation column scaled back always solves its own system");
    // project through the section
    let verts = solutions.vertices().iter().map(|x| seq.s.apply(x));
    let tail_gens: Vec<IVec> = solutions
        .tail()
        .generators()
        .iter()
        .filter_map(|g| qvec_to_primitive(&seq.s.apply(&to_qvec(g))))
        .collect();
    let tail = Cone::from_generators(seq.s.rows(), tail_gens);
    assert_eq!(&tail, sigma, "ray polytope must recede exactly to the tail cone");
    Polyhedron::new(verts, tail).expect("solution set is nonempty")
}

/// Attach prime labels to the rays and build the polyhedral divisor
/// `Σ Πᵢ ⊗ D_{label(i)}`.  Rays with trivial polytope may stay unlabeled
/// (they drop out); every other ray needs a label.
pub fn assemble(
    r: &DowngradeResult,
    labels: &BTreeMap<usize, PrimeLabel>,
    model: &Arc<YModel>,
) -> Result<PPDivisor, Error> {
    let trivial = Polyhedron::trivial(r.sigma.clone());
    let mut terms: Vec<(PrimeLabel, Polyhedron)> = Vec::new();
    for (i, poly) in r.polytopes.iter().enumerate() {
        match labels.get(&i) {
            Some(label) => terms.push((label.clone(), poly.clone())),
            None if poly == &trivial => {}
            None => {
                return Err(Error::MissingLabel(format!(
                    "ray {i} has a nontrivial polytope but no label"
                )))
            }
        }
    }
    PPDivisor::new(r.sigma.clone(), terms, Arc::clone(model))
}

/// Rank-1 divisor from a pair of opposite-degree generators' divisors: the
/// coefficient of each prime is the interval from its coefficient in
/// `d_plus` to minus its coefficient in `d_minus`.
pub fn from_pm_divisors(
    d_plus: &QDivisor,
    d_minus: &QDivisor,
    model: &Arc<YModel>,
) -> Result<PPDivisor, Error> {
    let mut terms: Vec<(PrimeLabel, Polyhedron)> = Vec::new();
    let labels: std::collections::BTreeSet<&PrimeLabel> =
        d_plus.support().chain(d_minus.support()).collect();
    for label in labels {
        let lo = d_plus.coeff(label);
        let hi = -d_minus.coeff(label);
        terms.push((label.clone(), Polyhedron::interval(lo, hi)?));
    }
    PPDivisor::new(Cone::zero(1), terms, Arc::clone(model))
}
