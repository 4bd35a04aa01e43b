//! Worked hyperbolic C*-action presentations shipped as executable fixtures:
//! the linear building block on affine space, the Russell cubic, and both
//! families of Koras-Russell threefolds.  Every fixture builds its divisors
//! from the closed-form coefficient strings and re-derives them through the
//! downgrade and quotient machinery, so constructing a fixture is itself a
//! consistency check.

use crate::convex::{Cone, Polyhedron};
use crate::divisors::{CoverData, ModelKind, QDivisor, YModel};
use crate::downgrade::{assemble, downgrade_with_section, DowngradeResult, WeightData};
use crate::error::Error;
use crate::linalg::{IntMatrix, QMatrix};
use crate::notation::parse_ppdivisor;
use crate::ppdiv::{add, minkowski_difference, PPDivisor};
use crate::quotients::{quotient_effective, QuotientStage};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

fn qq(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn point_q(v: Rat) -> Polyhedron {
    Polyhedron::point(vec![v])
}

fn interval_q(lo: Rat, hi: Rat) -> Polyhedron {
    Polyhedron::interval(lo, hi).expect("fixture interval bounds are ordered")
}

/// Smallest-|a| solution of `a*alpha3 + b*alpha2 == 1` with `a_divisor | a`,
/// preferring positive `a` on magnitude ties (which also minimizes `|b|`).
/// The search window is reported on failure.
pub fn bezout_pair(
    alpha3: &Int,
    alpha2: &Int,
    a_divisor: &Int,
    window: i64,
) -> Result<(Int, Int), Error> {
    for mag in 0..=window {
        let candidates: &[i64] = if mag == 0 { &[0] } else { &[mag, -mag] };
        for &c in candidates {
            let a = Int::from(c);
            if !(&a % a_divisor).is_zero() {
                continue;
            }
            let rem = Int::one() - &a * alpha3;
            if (&rem % alpha2).is_zero() {
                return Ok((a, rem / alpha2));
            }
        }
    }
    Err(Error::NoBezoutWithDivisibility(format!(
        "no a*{alpha3} + b*{alpha2} == 1 with {a_divisor} | a and |a| <= {window}"
    )))
}

/// The hyperbolic linear action with weights `(p, p, -p, 1)` on affine
/// 4-space, presented over the blow-up of the plane at the origin.
#[derive(Debug, Clone)]
pub struct BuildingBlockFixture {
    pub p: i64,
    pub weights: WeightData,
    pub result: DowngradeResult,
    pub model: Arc<YModel>,
    /// `{1/p}D + [0,1/p]E`
    pub divisor: PPDivisor,
}

pub fn building_block(p: i64) -> Result<BuildingBlockFixture, Error> {
    if p < 1 {
        return Err(Error::InvalidParameters(format!("building block needs p >= 1, got {p}")));
    }
    let labels: BTreeMap<usize, String> = [(2usize, "E".to_string()), (3usize, "D".to_string())].into();
    let weights = WeightData::new(IntMatrix::column(&[p, p, -p, 1]), labels)?;
    // coefficients are read through the last coordinate
    let section = QMatrix::new(1, 4, vec![qq(0, 1), qq(0, 1), qq(0, 1), qq(1, 1)]);
    let result = downgrade_with_section(&weights, section)?;
    let kind = ModelKind::BlowupA2 {
        exceptional: "E".into(),
        multiplicities: [("D".into(), Int::one())].into(),
    };
    let functions: BTreeMap<String, QDivisor> =
        [("u".to_string(), QDivisor::from_pairs([("D", qq(1, 1)), ("E", qq(1, 1))]))].into();
    let model = YModel::new("A2_tilde_bb", kind, ["D", "E"], functions)?;
    let divisor = assemble(&result, &result.ray_labels, &model)?;
    let expected = parse_ppdivisor(
        &format!("{{1/{p}}}D + [0,1/{p}]E"),
        &Cone::zero(1),
        &model,
    )?;
    assert_eq!(divisor, expected, "building block downgrade must match its closed form");
    Ok(BuildingBlockFixture { p, weights, result, model, divisor })
}

/// The Russell cubic `{x + x²y + z² + t³ = 0}` with its weight-(6,-6,3,2)
/// action, presented over the blow-up of the (u,v)-plane.
#[derive(Debug, Clone)]
pub struct RussellCubicFixture {
    pub model: Arc<YModel>,
    /// `{1/2}D3 + {-1/3}D2 + [0,1/6]E`
    pub divisor: PPDivisor,
    /// Degree-2 part: `{1/3}D2 + [0,1/3]E`
    pub d2: PPDivisor,
    /// Degree-3 part: `{1/2}D3 + [0,1/2]E`
    pub d3: PPDivisor,
    /// The two commuting cyclic subgroups of the acting torus.
    pub stage_mu2: QuotientStage,
    pub stage_mu3: QuotientStage,
}

impl RussellCubicFixture {
    /// `{a/2}D3 + {b/3}D2 + [0,1/6]E` — the presentation attached to any
    /// other solution of `3a + 2b == 1`.
    pub fn variant(&self, a: i64, b: i64) -> PPDivisor {
        assert_eq!(3 * a + 2 * b, 1, "variant needs 3a + 2b == 1");
        PPDivisor::new(
            Cone::zero(1),
            [
                ("D3".to_string(), point_q(qq(a, 2))),
                ("D2".to_string(), point_q(qq(b, 3))),
                ("E".to_string(), interval_q(qq(0, 1), qq(1, 6))),
            ],
            Arc::clone(&self.model),
        )
        .expect("variant coefficients are well formed")
    }
}

pub fn russell_cubic() -> RussellCubicFixture {
    let kind = ModelKind::BlowupA2 {
        exceptional: "E".into(),
        multiplicities: [("D2".into(), Int::one()), ("D3".into(), Int::one())].into(),
    };
    // u cuts out the line through the origin, f = u + v + v² the cubic's
    // other branch curve; both are smooth through the blown-up point
    let functions: BTreeMap<String, QDivisor> = [
        ("u".to_string(), QDivisor::from_pairs([("D2", qq(1, 1)), ("E", qq(1, 1))])),
        ("f".to_string(), QDivisor::from_pairs([("D3", qq(1, 1)), ("E", qq(1, 1))])),
    ]
    .into();
    let model = YModel::new("A2_tilde", kind, ["D3", "D2", "E"], functions)
        .expect("the Russell model is well formed");
    let tail = Cone::zero(1);
    let parse = |s: &str| parse_ppdivisor(s, &tail, &model).expect("fixture string parses");
    let divisor = parse("{1/2}D3 + {-1/3}D2 + [0,1/6]E");
    let d2 = parse("{1/3}D2 + [0,1/3]E");
    let d3 = parse("{1/2}D3 + [0,1/2]E");
    // the defining relation: the degree-2 part plus the divisor is the
    // degree-3 part, exactly, and the divisor is their Minkowski difference
    assert_eq!(add(&d2, &divisor).expect("same model"), d3);
    assert_eq!(minkowski_difference(&d3, &d2), Some(divisor.clone()));
    let stage_mu2 =
        QuotientStage::TorusSubgroup { order: Int::from(2), weight: vec![Int::one()] };
    let stage_mu3 =
        QuotientStage::TorusSubgroup { order: Int::from(3), weight: vec![Int::one()] };
    RussellCubicFixture { model, divisor, d2, d3, stage_mu2, stage_mu3 }
}

/// Parameters of a first-kind threefold `{x + x^d y + z^α2 + t^α3 = 0}`
/// with its derived Bézout pair.
#[derive(Debug, Clone)]
pub struct KRFirstKind {
    pub d: Int,
    pub alpha2: Int,
    pub alpha3: Int,
    pub a: Int,
    pub b: Int,
}

impl KRFirstKind {
    pub fn new(d: i64, alpha2: i64, alpha3: i64) -> Result<KRFirstKind, Error> {
        if d < 2 || alpha2 < 2 || alpha3 <= alpha2 {
            return Err(Error::InvalidParameters(format!(
                "first kind needs d >= 2 and 2 <= alpha2 < alpha3, got d={d}, alpha2={alpha2}, alpha3={alpha3}"
            )));
        }
        let (d, alpha2, alpha3) = (Int::from(d), Int::from(alpha2), Int::from(alpha3));
        if !alpha2.gcd(&alpha3).is_one() {
            return Err(Error::InvalidParameters(format!(
                "first kind needs gcd(alpha2, alpha3) == 1, got gcd({alpha2}, {alpha3}) != 1"
            )));
        }
        let window = i64::try_from(&alpha2 * &alpha3).expect("window fits");
        let (a, b) = bezout_pair(&alpha3, &alpha2, &Int::one(), window)?;
        assert!((&a * &alpha3 + &b * &alpha2).is_one());
        Ok(KRFirstKind { d, alpha2, alpha3, a, b })
    }
}

/// A first-kind threefold: the cyclic-cover divisor upstairs on the blown-up
/// plane and its descent through the scalar `μ_{d−1}` quotient.
#[derive(Debug, Clone)]
pub struct FirstKindFixture {
    pub params: KRFirstKind,
    pub cover_model: Arc<YModel>,
    pub quotient_model: Arc<YModel>,
    /// `{a/α2}Da3 + {b/α3}Da2 + [0,1/(α2α3)]E`
    pub cover_divisor: PPDivisor,
    pub cover: CoverData,
    /// `{a/α2}D'a3 + {b/α3}D'a2 + [0,1/((d−1)α2α3)]E'`
    pub descended: PPDivisor,
    pub stage: QuotientStage,
}

pub fn first_kind(d: i64, alpha2: i64, alpha3: i64) -> Result<FirstKindFixture, Error> {
    let params = KRFirstKind::new(d, alpha2, alpha3)?;
    let KRFirstKind { d, alpha2, alpha3, a, b } = params.clone();
    let kind = ModelKind::BlowupA2 {
        exceptional: "E".into(),
        multiplicities: [("Da3".into(), Int::one()), ("Da2".into(), Int::one())].into(),
    };
    let functions: BTreeMap<String, QDivisor> = [
        ("u".to_string(), QDivisor::from_pairs([("Da2", qq(1, 1)), ("E", qq(1, 1))])),
        ("f".to_string(), QDivisor::from_pairs([("Da3", qq(1, 1)), ("E", qq(1, 1))])),
    ]
    .into();
    let cover_model = YModel::new("A2_tilde_first", kind, ["Da3", "Da2", "E"], functions)?;
    let dm1 = &d - Int::one();
    let quot_kind = ModelKind::QuotBlowup {
        exceptional: "E'".into(),
        weights: [
            ("D'a3".into(), Rat::new(Int::one(), dm1.clone())),
            ("D'a2".into(), Rat::new(Int::one(), dm1.clone())),
        ]
        .into(),
        group_order: dm1.clone(),
    };
    let quotient_model =
        YModel::new("A2_tilde_first_quot", quot_kind, ["D'a3", "D'a2", "E'"], BTreeMap::new())?;
    let a23 = &alpha2 * &alpha3;
    let cover_divisor = PPDivisor::new(
        Cone::zero(1),
        [
            ("Da3".to_string(), point_q(Rat::new(a.clone(), alpha2.clone()))),
            ("Da2".to_string(), point_q(Rat::new(b.clone(), alpha3.clone()))),
            ("E".to_string(), interval_q(Rat::zero(), Rat::new(Int::one(), a23.clone()))),
        ],
        Arc::clone(&cover_model),
    )?;
    let cover = CoverData::new(
        Arc::clone(&cover_model),
        Arc::clone(&quotient_model),
        [
            ("D'a3".to_string(), vec![("Da3".to_string(), Int::one())]),
            ("D'a2".to_string(), vec![("Da2".to_string(), Int::one())]),
            ("E'".to_string(), vec![("E".to_string(), dm1.clone())]),
        ]
        .into(),
        dm1.clone(),
    )?;
    let descended = quotient_effective(&cover_divisor, &cover)?;
    let expected = PPDivisor::new(
        Cone::zero(1),
        [
            ("D'a3".to_string(), point_q(Rat::new(a.clone(), alpha2.clone()))),
            ("D'a2".to_string(), point_q(Rat::new(b.clone(), alpha3.clone()))),
            ("E'".to_string(), interval_q(Rat::zero(), Rat::new(Int::one(), &dm1 * &a23))),
        ],
        Arc::clone(&quotient_model),
    )?;
    assert_eq!(descended, expected, "descent must match the closed-form coefficients");
    let stage = QuotientStage::Effective { cover: cover.clone() };
    Ok(FirstKindFixture { params, cover_model, quotient_model, cover_divisor, cover, descended, stage })
}

/// Parameters of a second-kind threefold `{x + y(x^d + z^α2)^l + t^α3 = 0}`
/// with the divisibility-constrained Bézout pair.
#[derive(Debug, Clone)]
pub struct KRSecondKind {
    pub d: Int,
    pub l: Int,
    pub alpha2: Int,
    pub alpha3: Int,
    pub a: Int,
    pub b: Int,
    /// `a / d`
    pub a_prime: Int,
    /// equal to `b`
    pub b_prime: Int,
}

impl KRSecondKind {
    pub fn new(d: i64, l: i64, alpha2: i64, alpha3: i64) -> Result<KRSecondKind, Error> {
        if d < 2 || l < 1 || alpha2 < 2 || alpha3 < 2 {
            return Err(Error::InvalidParameters(format!(
                "second kind needs d >= 2, l >= 1, alpha2 >= 2, alpha3 >= 2, got d={d}, l={l}, alpha2={alpha2}, alpha3={alpha3}"
            )));
        }
        let (d, l, alpha2, alpha3) = (Int::from(d), Int::from(l), Int::from(alpha2), Int::from(alpha3));
        if !alpha2.gcd(&d).is_one() {
            return Err(Error::InvalidParameters(format!(
                "second kind needs gcd(alpha2, d) == 1, got gcd({alpha2}, {d}) != 1"
            )));
        }
        if !alpha2.gcd(&alpha3).is_one() {
            return Err(Error::InvalidParameters(format!(
                "second kind needs gcd(alpha2, alpha3) == 1, got gcd({alpha2}, {alpha3}) != 1"
            )));
        }
        // a ranges over one congruence class mod d·alpha2, so this window
        // always contains a solution under the gcd hypotheses
        let window = i64::try_from(&d * &alpha2).expect("window fits");
        let (a, b) = bezout_pair(&alpha3, &alpha2, &d, window)?;
        assert!((&a * &alpha3 + &b * &alpha2).is_one());
        let a_prime = &a / &d;
        let b_prime = b.clone();
        Ok(KRSecondKind { d, l, alpha2, alpha3, a, b, a_prime, b_prime })
    }
}

/// A second-kind threefold: the bi-cyclic tower of divisors from the
/// blown-up plane down to the quotient model, one effective stage per
/// cyclic factor.
#[derive(Debug, Clone)]
pub struct SecondKindFixture {
    pub params: KRSecondKind,
    pub top_model: Arc<YModel>,
    pub mid_model: Arc<YModel>,
    pub bottom_model: Arc<YModel>,
    /// `{a/α2}Da3 + {b/α3}Da2 + [0,1/(α2α3)]E`
    pub top_divisor: PPDivisor,
    /// `{a'/α2}Dd_a3 + {b/α3}Dd_a2 + [0,1/(α2α3)]E_d`
    pub mid_divisor: PPDivisor,
    /// `{a'/α2}D'a3 + {b/α3}D'a2 + [0,1/((dl−1)α2α3)]E'`
    pub final_divisor: PPDivisor,
    pub cover_d: CoverData,
    pub cover_dl1: CoverData,
    pub stages: Vec<QuotientStage>,
}

pub fn second_kind(d: i64, l: i64, alpha2: i64, alpha3: i64) -> Result<SecondKindFixture, Error> {
    let params = KRSecondKind::new(d, l, alpha2, alpha3)?;
    let KRSecondKind { d, l, alpha2, alpha3, a, b, a_prime, b_prime: _ } = params.clone();
    let top_kind = ModelKind::BlowupA2 {
        exceptional: "E".into(),
        multiplicities: [("Da3".into(), Int::one()), ("Da2".into(), Int::one())].into(),
    };
    // here the roles are swapped next to the first kind: u cuts out Da3
    let functions: BTreeMap<String, QDivisor> = [
        ("u".to_string(), QDivisor::from_pairs([("Da3", qq(1, 1)), ("E", qq(1, 1))])),
        ("g".to_string(), QDivisor::from_pairs([("Da2", qq(1, 1)), ("E", qq(1, 1))])),
    ]
    .into();
    let top_model = YModel::new("A2_tilde_second", top_kind, ["Da3", "Da2", "E"], functions)?;
    let mid_kind = ModelKind::BlowupA2 {
        exceptional: "E_d".into(),
        multiplicities: [("Dd_a3".into(), Int::one()), ("Dd_a2".into(), Int::one())].into(),
    };
    let mid_model =
        YModel::new("A2_tilde_second_d", mid_kind, ["Dd_a3", "Dd_a2", "E_d"], BTreeMap::new())?;
    let dl1 = &d * &l - Int::one();
    let bottom_kind = ModelKind::QuotBlowup {
        exceptional: "E'".into(),
        weights: [
            ("D'a3".into(), Rat::new(Int::one(), dl1.clone())),
            ("D'a2".into(), Rat::new(Int::one(), dl1.clone())),
        ]
        .into(),
        group_order: dl1.clone(),
    };
    let bottom_model =
        YModel::new("A2_tilde_second_quot", bottom_kind, ["D'a3", "D'a2", "E'"], BTreeMap::new())?;
    let a23 = &alpha2 * &alpha3;
    let top_divisor = PPDivisor::new(
        Cone::zero(1),
        [
            ("Da3".to_string(), point_q(Rat::new(a.clone(), alpha2.clone()))),
            ("Da2".to_string(), point_q(Rat::new(b.clone(), alpha3.clone()))),
            ("E".to_string(), interval_q(Rat::zero(), Rat::new(Int::one(), a23.clone()))),
        ],
        Arc::clone(&top_model),
    )?;
    let cover_d = CoverData::new(
        Arc::clone(&top_model),
        Arc::clone(&mid_model),
        [
            ("Dd_a3".to_string(), vec![("Da3".to_string(), d.clone())]),
            ("Dd_a2".to_string(), vec![("Da2".to_string(), Int::one())]),
            ("E_d".to_string(), vec![("E".to_string(), Int::one())]),
        ]
        .into(),
        d.clone(),
    )?;
    let mid_divisor = quotient_effective(&top_divisor, &cover_d)?;
    let mid_expected = PPDivisor::new(
        Cone::zero(1),
        [
            ("Dd_a3".to_string(), point_q(Rat::new(a_prime.clone(), alpha2.clone()))),
            ("Dd_a2".to_string(), point_q(Rat::new(b.clone(), alpha3.clone()))),
            ("E_d".to_string(), interval_q(Rat::zero(), Rat::new(Int::one(), a23.clone()))),
        ],
        Arc::clone(&mid_model),
    )?;
    assert_eq!(mid_divisor, mid_expected, "first descent must divide the Da3 coefficient by d");
    let cover_dl1 = CoverData::new(
        Arc::clone(&mid_model),
        Arc::clone(&bottom_model),
        [
            ("D'a3".to_string(), vec![("Dd_a3".to_string(), Int::one())]),
            ("D'a2".to_string(), vec![("Dd_a2".to_string(), Int::one())]),
            ("E'".to_string(), vec![("E_d".to_string(), dl1.clone())]),
        ]
        .into(),
        dl1.clone(),
    )?;
    let final_divisor = quotient_effective(&mid_divisor, &cover_dl1)?;
    let final_expected = PPDivisor::new(
        Cone::zero(1),
        [
            ("D'a3".to_string(), point_q(Rat::new(a_prime.clone(), alpha2.clone()))),
            ("D'a2".to_string(), point_q(Rat::new(b.clone(), alpha3.clone()))),
            ("E'".to_string(), interval_q(Rat::zero(), Rat::new(Int::one(), &dl1 * &a23))),
        ],
        Arc::clone(&bottom_model),
    )?;
    assert_eq!(final_divisor, final_expected, "second descent must divide the exceptional interval by dl-1");
    let stages = vec![
        QuotientStage::Effective { cover: cover_d.clone() },
        QuotientStage::Effective { cover: cover_dl1.clone() },
    ];
    Ok(SecondKindFixture {
        params,
        top_model,
        mid_model,
        bottom_model,
        top_divisor,
        mid_divisor,
        final_divisor,
        cover_d,
        cover_dl1,
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::format_ppdivisor;
    use crate::ppdiv::{evaluate, linearly_equivalent, pullback};
    use crate::quotients::{quotient_torus_subgroup, run_pipeline};

    #[test]
    fn building_block_closed_form() {
        for p in [1i64, 2, 3, 5] {
            let f = building_block(p).unwrap();
            assert!(f.result.sigma.is_zero());
            assert_eq!(
                format_ppdivisor(&f.divisor),
                format!("{{1/{p}}}D + [0,1/{p}]E").replace("1/1", "1")
            );
        }
        assert!(matches!(building_block(0), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn russell_cubic_relations() {
        let f = russell_cubic();
        assert_eq!(format_ppdivisor(&f.divisor), "{1/2}D3 + {-1/3}D2 + [0,1/6]E");
        // evaluation at the origin of the weight cone vanishes
        assert!(evaluate(&f.divisor, &[qq(0, 1)]).unwrap().is_zero());
        // the two cyclic quotients recover the building-block parts up to
        // linear equivalence
        let by2 = quotient_torus_subgroup(&f.divisor, &Int::from(2), &[Int::one()]);
        let (eq2, w2) = linearly_equivalent(&by2, &f.d2).unwrap();
        assert!(eq2);
        assert!(w2.is_some());
        let by3 = quotient_torus_subgroup(&f.divisor, &Int::from(3), &[Int::one()]);
        let (eq3, w3) = linearly_equivalent(&by3, &f.d3).unwrap();
        assert!(eq3);
        assert!(w3.is_some());
        // pipeline stages are valid maps
        let (_, reports) =
            run_pipeline(&f.divisor, &[f.stage_mu2.clone(), f.stage_mu3.clone()]).unwrap();
        assert!(reports.iter().all(|r| r.valid));
    }

    #[test]
    fn russell_variants_are_equivalent() {
        let f = russell_cubic();
        let alt = f.variant(-1, 2);
        assert_eq!(format_ppdivisor(&alt), "{-1/2}D3 + {2/3}D2 + [0,1/6]E");
        let (eq, w) = linearly_equivalent(&alt, &f.divisor).unwrap();
        assert!(eq);
        assert!(w.is_some());
    }

    #[test]
    fn first_kind_russell_specialization() {
        let f = first_kind(2, 2, 3).unwrap();
        assert_eq!(f.params.a, Int::from(1));
        assert_eq!(f.params.b, Int::from(-1));
        assert_eq!(format_ppdivisor(&f.cover_divisor), "{1/2}Da3 + {-1/3}Da2 + [0,1/6]E");
        // degree-1 quotient: same coefficients on the relabeled model
        assert_eq!(format_ppdivisor(&f.descended), "{1/2}D'a3 + {-1/3}D'a2 + [0,1/6]E'");
        assert_eq!(pullback(&f.cover, &f.descended).unwrap(), f.cover_divisor);
    }

    #[test]
    fn first_kind_interval_shrinks() {
        let f = first_kind(3, 2, 3).unwrap();
        assert_eq!(
            f.descended.coefficient("E'"),
            interval_q(qq(0, 1), qq(1, 12)),
            "d == 3 divides the exceptional interval by d - 1 == 2"
        );
    }

    #[test]
    fn first_kind_rejects_bad_parameters() {
        assert!(matches!(first_kind(2, 3, 3), Err(Error::InvalidParameters(_))));
        assert!(matches!(first_kind(2, 4, 6), Err(Error::InvalidParameters(_))));
        assert!(matches!(first_kind(1, 2, 3), Err(Error::InvalidParameters(_))));
        assert!(matches!(first_kind(2, 3, 2), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn second_kind_spec_example() {
        let f = second_kind(2, 2, 3, 5).unwrap();
        assert_eq!(f.params.a, Int::from(2));
        assert_eq!(f.params.b, Int::from(-3));
        assert_eq!(f.params.a_prime, Int::from(1));
        assert_eq!(format_ppdivisor(&f.top_divisor), "{2/3}Da3 + {-3/5}Da2 + [0,1/15]E");
        assert_eq!(
            format_ppdivisor(&f.mid_divisor),
            "{1/3}Dd_a3 + {-3/5}Dd_a2 + [0,1/15]E_d"
        );
        assert_eq!(
            format_ppdivisor(&f.final_divisor),
            "{1/3}D'a3 + {-3/5}D'a2 + [0,1/45]E'"
        );
        let (out, reports) = run_pipeline(&f.top_divisor, &f.stages).unwrap();
        assert_eq!(out, f.final_divisor);
        assert!(reports.iter().all(|r| r.valid));
    }

    #[test]
    fn second_kind_degenerate_tail_cover() {
        // dl - 1 == 1: the second stage is a degree-1 relabeling
        let f = second_kind(2, 1, 3, 5).unwrap();
        assert_eq!(
            f.mid_divisor.coefficient("E_d"),
            f.final_divisor.coefficient("E'"),
        );
    }

    #[test]
    fn second_kind_rejects_bad_parameters() {
        assert!(matches!(second_kind(2, 2, 4, 5), Err(Error::InvalidParameters(_))));
        assert!(matches!(second_kind(2, 2, 3, 6), Err(Error::InvalidParameters(_))));
        assert!(matches!(second_kind(1, 2, 3, 5), Err(Error::InvalidParameters(_))));
        assert!(matches!(second_kind(2, 0, 3, 5), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn bezout_search_window_is_reported() {
        // parity obstruction: a must be even but also odd
        match bezout_pair(&Int::from(3), &Int::from(2), &Int::from(2), 8) {
            Err(Error::NoBezoutWithDivisibility(msg)) => assert!(msg.contains("8")),
            other => panic!("expected NoBezoutWithDivisibility, got {other:?}"),
        }
        // unconstrained search picks the positive tie
        let (a, b) = bezout_pair(&Int::from(3), &Int::from(2), &Int::one(), 8).unwrap();
        assert_eq!((a, b), (Int::from(1), Int::from(-1)));
    }
}
