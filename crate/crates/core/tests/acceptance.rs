//! Acceptance gate: one test per shipped guarantee, named `criterion_N_*`.
//! Each test prints a single summary line on success, so a full run reads as
//! a pass/fail checklist.  Everything here is exact rational arithmetic —
//! there are no tolerances anywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use proptest::collection::vec as pvec;
use proptest::prelude::*;

use polydiv::convex::{Cone, Polyhedron, SupportValue};
use polydiv::divisors::{pullback_qdivisor, CoverData, FormalCombo, ModelKind, QDivisor, YModel};
use polydiv::downgrade::{assemble, downgrade, downgrade_with_section, DowngradeResult, WeightData};
use polydiv::fixtures::{building_block, first_kind, russell_cubic, second_kind};
use polydiv::linalg::{smith_normal_form, IntMatrix, QMatrix};
use polydiv::notation::format_ppdivisor;
use polydiv::ppdiv::{
    add, compose, evaluate, is_valid_map, linearly_equivalent, minkowski_difference, pullback,
    pushforward, translate_by_div, PPDivisor, PPMap, Plurifunction,
};
use polydiv::quotients::{quotient_effective, quotient_torus_subgroup, run_pipeline};
use polydiv::{dot_ii, dot_qq, to_qvec, Int, IVec, QVec, Rat};

fn qi(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn ints(v: &[i64]) -> IVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn gcd64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd64(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// 1. The one-extra-weight downgrade in closed form.

#[test]
fn criterion_1_building_block_downgrade_is_exact() {
    for p in [1i64, 2, 3, 5] {
        let f = building_block(p).expect("p >= 1 is a valid parameter");
        assert!(f.result.sigma.is_zero(), "hyperbolic grading must leave a trivial tail (p={p})");
        assert_eq!(f.result.rays.len(), 4, "four distinct rays downstairs (p={p})");
        let marked = Polyhedron::point(vec![q(1, p)]);
        let interval = Polyhedron::interval(qi(0), q(1, p)).unwrap();
        let origin = Polyhedron::point(vec![qi(0)]);
        let mut counts = (0usize, 0usize, 0usize);
        for poly in &f.result.polytopes {
            if *poly == marked {
                counts.0 += 1;
            } else if *poly == interval {
                counts.1 += 1;
            } else if *poly == origin {
                counts.2 += 1;
            } else {
                panic!("unexpected ray polytope for p={p}: {poly:?}");
            }
        }
        assert_eq!(counts, (1, 1, 2), "one marked point, one interval, two coordinate rays (p={p})");
        // and the labels sit on the right rays
        let by_label: BTreeMap<&str, usize> =
            f.result.ray_labels.iter().map(|(i, l)| (l.as_str(), *i)).collect();
        assert_eq!(f.result.polytopes[by_label["D"]], marked);
        assert_eq!(f.result.polytopes[by_label["E"]], interval);
    }
    println!("criterion 1: building-block downgrade exact for p in {{1,2,3,5}} — PASS");
}

// ---------------------------------------------------------------------------
// 2. Interval translation is witnessed linear equivalence.

#[test]
fn criterion_2_interval_translation_has_a_witness() {
    let f = building_block(1).unwrap();
    let shifted = PPDivisor::new(
        Cone::zero(1),
        [("E".to_string(), Polyhedron::interval(qi(-1), qi(0)).unwrap())],
        Arc::clone(&f.model),
    )
    .unwrap();
    let (equivalent, witness) = linearly_equivalent(&f.divisor, &shifted).unwrap();
    assert!(equivalent, "{{1}}D + [0,1]E and [-1,0]E present the same variety");
    let w = witness.expect("the blow-up model's registered functions span the witness");
    assert_eq!(translate_by_div(&f.divisor, &w).unwrap(), shifted);
    println!(
        "criterion 2: {{1}}D + [0,1]E ~ [-1,0]E with witness div({}) — PASS",
        w.components()[0]
    );
}

// ---------------------------------------------------------------------------
// 3. The Russell cubic through both cyclic directions and back.

#[test]
fn criterion_3_bicyclic_pipeline_reproduces_the_cubic() {
    let f = russell_cubic();
    assert_eq!(format_ppdivisor(&f.divisor), "{1/2}D3 + {-1/3}D2 + [0,1/6]E");

    // Push along each one-parameter direction and normalize the result to the
    // canonical degree part by its equivalence witness.
    let mut normalized: Vec<PPDivisor> = Vec::new();
    for (order, part) in [(2i64, &f.d2), (3i64, &f.d3)] {
        let pushed = quotient_torus_subgroup(&f.divisor, &Int::from(order), &[Int::one()]);
        let (equivalent, witness) = linearly_equivalent(&pushed, part).unwrap();
        assert!(equivalent, "pushforward by {order} matches the degree-{order} part");
        let w = witness.expect("explicit witness");
        let canon = translate_by_div(&pushed, &w).unwrap();
        assert_eq!(&canon, part);
        normalized.push(canon);
    }

    // Reconstruction: the difference of the normalized parts is the cubic's
    // divisor again, on the nose, and the sum relation holds exactly.
    let reconstructed = minkowski_difference(&normalized[1], &normalized[0])
        .expect("the degree parts differ by a genuine summand");
    assert_eq!(reconstructed, f.divisor);
    assert_eq!(add(&f.d2, &f.divisor).unwrap(), f.d3);

    // The degree-2 direction also carries an explicit map triple: multiply
    // the grading by 2 and translate by u/f.
    let mu2 = PPMap::new(
        CoverData::identity(&f.model),
        IntMatrix::from_rows(&[&[2]]),
        Plurifunction::new(vec![FormalCombo::from_pairs([
            ("u".to_string(), Int::one()),
            ("f".to_string(), -Int::one()),
        ])]),
    )
    .unwrap();
    assert!(is_valid_map(&mu2, &f.divisor, &f.d2).unwrap());

    // And the two stages run as a pipeline with every intermediate validated.
    let (_, reports) = run_pipeline(&f.divisor, &[f.stage_mu2.clone(), f.stage_mu3.clone()]).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.valid));
    println!("criterion 3: bi-cyclic pipeline reconstructs {{1/2}}D3 + {{-1/3}}D2 + [0,1/6]E — PASS");
}

// ---------------------------------------------------------------------------
// 4. Every bounded Bezout choice presents the same variety.

#[test]
fn criterion_4_all_bounded_bezout_variants_are_equivalent() {
    let f = russell_cubic();
    let mut checked = 0usize;
    for a in -10i64..=10 {
        for b in -10i64..=10 {
            if 3 * a + 2 * b != 1 {
                continue;
            }
            let variant = f.variant(a, b);
            let (equivalent, witness) = linearly_equivalent(&variant, &f.divisor).unwrap();
            assert!(equivalent, "variant (a,b)=({a},{b}) must be equivalent");
            let w = witness.expect("witness");
            assert_eq!(translate_by_div(&variant, &w).unwrap(), f.divisor, "(a,b)=({a},{b})");
            checked += 1;
        }
    }
    assert_eq!(checked, 7, "all solutions of 3a+2b==1 inside the box");
    println!("criterion 4: all {checked} bounded Bezout variants equivalent with witnesses — PASS");
}

// ---------------------------------------------------------------------------
// 5. First-kind descent across the whole small parameter grid.

#[test]
fn criterion_5_first_kind_descent_grid() {
    let mut checked = 0usize;
    for d in 2i64..=4 {
        for alpha2 in 2i64..7 {
            for alpha3 in (alpha2 + 1)..=7 {
                if gcd64(alpha2, alpha3) != 1 {
                    continue;
                }
                let f = first_kind(d, alpha2, alpha3).unwrap();
                let expected =
                    Polyhedron::interval(qi(0), q(1, (d - 1) * alpha2 * alpha3)).unwrap();
                assert_eq!(
                    f.descended.coefficient("E'"),
                    expected,
                    "(d,a2,a3)=({d},{alpha2},{alpha3})"
                );
                assert_eq!(
                    pullback(&f.cover, &f.descended).unwrap(),
                    f.cover_divisor,
                    "pullback must round-trip for (d,a2,a3)=({d},{alpha2},{alpha3})"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 33, "3 values of d times 11 coprime pairs");
    println!("criterion 5: first-kind descent exact on all {checked} grid points — PASS");
}

// ---------------------------------------------------------------------------
// 6. Second-kind two-stage descent on its small valid grid.

#[test]
fn criterion_6_second_kind_two_stage_grid() {
    let mut checked = 0usize;
    for d in [2i64, 3] {
        for l in [1i64, 2] {
            for alpha2 in [2i64, 3, 5] {
                for alpha3 in [2i64, 3, 5] {
                    if alpha2 == alpha3 || gcd64(alpha2, alpha3) != 1 || gcd64(alpha2, d) != 1 {
                        continue;
                    }
                    let f = second_kind(d, l, alpha2, alpha3).unwrap();
                    let expected =
                        Polyhedron::interval(qi(0), q(1, (d * l - 1) * alpha2 * alpha3)).unwrap();
                    assert_eq!(
                        f.final_divisor.coefficient("E'"),
                        expected,
                        "(d,l,a2,a3)=({d},{l},{alpha2},{alpha3})"
                    );
                    assert_eq!(&f.params.a, &(&f.params.a_prime * &f.params.d));
                    assert_eq!(f.params.b_prime, f.params.b);
                    let (out, reports) = run_pipeline(&f.top_divisor, &f.stages).unwrap();
                    assert_eq!(out, f.final_divisor);
                    assert_eq!(reports.len(), 2);
                    assert!(
                        reports.iter().all(|r| r.valid),
                        "both quotient stages carry valid map triples"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 16);
    println!("criterion 6: second-kind two-stage descent exact on all {checked} grid points — PASS");
}

// ---------------------------------------------------------------------------
// 7. Property suites, 256 randomized cases each.

fn plane_model(name: &str, primes: &[&str]) -> Arc<YModel> {
    YModel::new(name, ModelKind::AffinePlane, primes.iter().copied(), BTreeMap::new()).unwrap()
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn criterion_7a_dual_cone_involution(
        gens2 in pvec(pvec(-5i64..=5, 2), 0..4),
        gens3 in pvec(pvec(-3i64..=3, 3), 0..5),
    ) {
        let c2 = Cone::from_generators(2, gens2.iter().map(|g| ints(g)));
        prop_assert_eq!(c2.dual().dual(), c2);
        let c3 = Cone::from_generators(3, gens3.iter().map(|g| ints(g)));
        prop_assert_eq!(c3.dual().dual(), c3);
    }

    #[test]
    fn criterion_7b_support_min_adds_under_minkowski_sum(
        tail_gens in pvec(pvec(-3i64..=3, 2), 0..3),
        vs1 in pvec(pvec(small_rat(), 2), 1..4),
        vs2 in pvec(pvec(small_rat(), 2), 1..4),
        u in pvec(-5i64..=5, 2),
    ) {
        let tail = Cone::from_generators(2, tail_gens.iter().map(|g| ints(g)));
        let p = Polyhedron::new(vs1, tail.clone()).unwrap();
        let r = Polyhedron::new(vs2, tail.clone()).unwrap();
        let sum = p.minkowski(&r).unwrap();
        let uq = to_qvec(&ints(&u));
        match (p.support_min(&uq), r.support_min(&uq), sum.support_min(&uq)) {
            (SupportValue::Finite(a), SupportValue::Finite(b), SupportValue::Finite(c)) => {
                prop_assert_eq!(a + b, c);
            }
            (pa, pb, SupportValue::MinusInfinity) => {
                // all three share a tail, so unboundedness hits every factor
                prop_assert!(
                    matches!(pa, SupportValue::MinusInfinity)
                        && matches!(pb, SupportValue::MinusInfinity)
                );
            }
            _ => prop_assert!(false, "sum bounded below while a summand is not"),
        }
    }

    #[test]
    fn criterion_7c_evaluate_pushforward_adjunction(
        tail_gens in pvec(pvec(0i64..=3, 2), 0..3),
        vs1 in pvec(pvec(small_rat(), 2), 1..3),
        vs2 in pvec(pvec(small_rat(), 2), 1..3),
        fm in pvec(-3i64..=3, 4).prop_filter("invertible over Q", |v| v[0] * v[3] != v[1] * v[2]),
        uu in pvec(-6i64..=6, 2),
    ) {
        let model = plane_model("adjunction", &["P1", "P2"]);
        let tail = Cone::from_generators(2, tail_gens.iter().map(|g| ints(g)));
        let d = PPDivisor::new(
            tail.clone(),
            [
                ("P1".to_string(), Polyhedron::new(vs1, tail.clone()).unwrap()),
                ("P2".to_string(), Polyhedron::new(vs2, tail.clone()).unwrap()),
            ],
            model,
        )
        .unwrap();
        let f = IntMatrix::from_rows(&[&[fm[0], fm[1]], &[fm[2], fm[3]]]);
        let fd = pushforward(&f, &d, &tail.image(&f)).unwrap();
        let uprime = to_qvec(&ints(&uu));
        let pulled_u = f.transpose().apply_q(&uprime);
        match (evaluate(&fd, &uprime), evaluate(&d, &pulled_u)) {
            (Ok(lhs), Ok(rhs)) => prop_assert_eq!(lhs, rhs),
            (Err(_), Err(_)) => {} // u' outside both weight cones at once
            (lhs, rhs) => prop_assert!(false, "weight-cone membership must agree: {:?} vs {:?}", lhs, rhs),
        }
    }

    #[test]
    fn criterion_7d_pullback_commutes_with_evaluation(
        r1 in 1i64..=3, r2 in 1i64..=3, r3 in 1i64..=4,
        lo in small_rat(), width in 0i64..=3,
        pt in small_rat(),
        u in -4i64..=4,
    ) {
        let target = plane_model("downstairs", &["T1", "T2"]);
        let source = plane_model("upstairs", &["S1a", "S1b", "S2"]);
        let cover = CoverData::new(
            Arc::clone(&source),
            Arc::clone(&target),
            [
                ("T1".to_string(), vec![("S1a".to_string(), Int::from(r1)), ("S1b".to_string(), Int::from(r2))]),
                ("T2".to_string(), vec![("S2".to_string(), Int::from(r3))]),
            ]
            .into(),
            Int::from(r1.max(r2) * r3),
        )
        .unwrap();
        let d = PPDivisor::new(
            Cone::zero(1),
            [
                ("T1".to_string(), Polyhedron::interval(lo.clone(), lo + qi(width)).unwrap()),
                ("T2".to_string(), Polyhedron::point(vec![pt])),
            ],
            target,
        )
        .unwrap();
        let uq = vec![qi(u)];
        let lhs = evaluate(&pullback(&cover, &d).unwrap(), &uq).unwrap();
        let rhs = pullback_qdivisor(&cover, &evaluate(&d, &uq).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn criterion_7e_descend_inverts_pullback(
        r_shared in 1i64..=3, r_single in 1i64..=4,
        lo in small_rat(), width in 0i64..=3,
        pt in small_rat(),
    ) {
        let target = plane_model("quotient", &["T1", "T2"]);
        let source = plane_model("total-space", &["S1a", "S1b", "S2"]);
        let cover = CoverData::new(
            Arc::clone(&source),
            Arc::clone(&target),
            [
                ("T1".to_string(), vec![
                    ("S1a".to_string(), Int::from(r_shared)),
                    ("S1b".to_string(), Int::from(r_shared)),
                ]),
                ("T2".to_string(), vec![("S2".to_string(), Int::from(r_single))]),
            ]
            .into(),
            Int::from(r_shared * r_single),
        )
        .unwrap();
        let downstairs = PPDivisor::new(
            Cone::zero(1),
            [
                ("T1".to_string(), Polyhedron::interval(lo.clone(), lo + qi(width)).unwrap()),
                ("T2".to_string(), Polyhedron::point(vec![pt])),
            ],
            target,
        )
        .unwrap();
        let lifted = pullback(&cover, &downstairs).unwrap();
        let descended = quotient_effective(&lifted, &cover).unwrap();
        prop_assert_eq!(&descended, &downstairs);
        prop_assert_eq!(pullback(&cover, &descended).unwrap(), lifted);
    }

    #[test]
    fn criterion_7f_smith_form_certificates(
        rows in 1usize..=3,
        cols in 1usize..=4,
        data in pvec(-9i64..=9, 12),
    ) {
        let a = IntMatrix::new(rows, cols, data[..rows * cols].iter().map(|&x| Int::from(x)).collect());
        let snf = smith_normal_form(&a);
        // U·A·V is the diagonal matrix the factorization claims
        prop_assert_eq!(&snf.u.mul(&a).mul(&snf.v), &snf.d);
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        for (i, e) in diag.iter().enumerate() {
            prop_assert!(!e.is_negative());
            if i + 1 < diag.len() {
                if e.is_zero() {
                    prop_assert!(diag[i + 1].is_zero());
                } else {
                    prop_assert!((&diag[i + 1] % e).is_zero(), "elementary divisors form a chain");
                }
            }
        }
        // the transforms are unimodular, so nothing was lost
        prop_assert!(laplace_det(&snf.u).abs().is_one());
        prop_assert!(laplace_det(&snf.v).abs().is_one());
        prop_assert_eq!(snf.rank(), a.rank());
    }

    #[test]
    fn criterion_7g_triple_composition_is_associative(
        mats in pvec(-3i64..=3, 3),
        exps in pvec(-2i64..=2, 6),
        rams in pvec(1i64..=3, 6),
    ) {
        let a = chain_model("chain-a");
        let b = chain_model("chain-b");
        let c = chain_model("chain-c");
        let d = chain_model("chain-d");
        let m1 = chain_map(&a, &b, rams[0], rams[1], mats[0], &exps[0..2]);
        let m2 = chain_map(&b, &c, rams[2], rams[3], mats[1], &exps[2..4]);
        let m3 = chain_map(&c, &d, rams[4], rams[5], mats[2], &exps[4..6]);
        let left = compose(&m3, &compose(&m2, &m1).unwrap()).unwrap();
        let right = compose(&compose(&m3, &m2).unwrap(), &m1).unwrap();
        prop_assert_eq!(left, right);
    }
}

/// Determinant by Laplace expansion — an independent check on the linear
/// algebra, only ever called on matrices of size at most 4.
fn laplace_det(m: &IntMatrix) -> Int {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return Int::one();
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut det = Int::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let minor_data: Vec<Int> = (1..n)
            .flat_map(|i| (0..n).filter(|&col| col != j).map(move |col| m[(i, col)].clone()))
            .collect();
        let minor = IntMatrix::new(n - 1, n - 1, minor_data);
        let cof = m[(0, j)].clone() * laplace_det(&minor);
        if j % 2 == 0 {
            det += cof;
        } else {
            det -= cof;
        }
    }
    det
}

/// A model with two principal primes, for building chains of map triples.
fn chain_model(name: &str) -> Arc<YModel> {
    let functions: BTreeMap<String, QDivisor> = [
        ("s".to_string(), QDivisor::from_pairs([("P", qi(1))])),
        ("t".to_string(), QDivisor::from_pairs([("Q", qi(1))])),
    ]
    .into();
    YModel::new(name, ModelKind::AffinePlane, ["P", "Q"], functions).unwrap()
}

fn chain_map(src: &Arc<YModel>, tgt: &Arc<YModel>, rp: i64, rq: i64, entry: i64, exps: &[i64]) -> PPMap {
    let cover = CoverData::new(
        Arc::clone(src),
        Arc::clone(tgt),
        [
            ("P".to_string(), vec![("P".to_string(), Int::from(rp))]),
            ("Q".to_string(), vec![("Q".to_string(), Int::from(rq))]),
        ]
        .into(),
        Int::from(rp.max(rq)),
    )
    .unwrap();
    let combo = FormalCombo::from_pairs([
        ("s".to_string(), Int::from(exps[0])),
        ("t".to_string(), Int::from(exps[1])),
    ]);
    PPMap::new(cover, IntMatrix::from_rows(&[&[entry]]), Plurifunction::new(vec![combo])).unwrap()
}

// ---------------------------------------------------------------------------
// 8. Evaluation against a brute-force oracle.

/// Solve the square rational system `m x == rhs` by Gaussian elimination,
/// entirely independent of the library's linear algebra.  `None` if singular.
fn rational_solve(mut m: Vec<QVec>, mut rhs: QVec) -> Option<QVec> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &m[col][col];
            for j in col..n {
                let t = &m[i][j] - &(&factor * &m[col][j]);
                m[i][j] = t;
            }
            let t = &rhs[i] - &(&factor * &rhs[col]);
            rhs[i] = t;
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = index_subsets(n - 1, k);
    for mut s in index_subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// All vertices of `{x >= 0 : P x == v}` as basic feasible solutions: zero
/// out every possible choice of `cols - rows` coordinates and solve the
/// remaining square system.
fn fiber_vertices(p: &IntMatrix, v: &IVec) -> Vec<QVec> {
    let m = p.cols();
    let rows = p.rows();
    let mut seen: BTreeSet<QVec> = BTreeSet::new();
    for zero_set in index_subsets(m, m - rows) {
        let keep: Vec<usize> = (0..m).filter(|j| !zero_set.contains(j)).collect();
        let mat: Vec<QVec> = (0..rows)
            .map(|i| keep.iter().map(|&j| Rat::from_integer(p[(i, j)].clone())).collect())
            .collect();
        let rhs: QVec = to_qvec(v);
        let Some(x) = rational_solve(mat, rhs) else { continue };
        if x.iter().any(|c| c.is_negative()) {
            continue;
        }
        let mut full = vec![Rat::zero(); m];
        for (pos, &j) in keep.iter().enumerate() {
            full[j] = x[pos].clone();
        }
        seen.insert(full);
    }
    seen.into_iter().collect()
}

fn box_points(k: usize, bound: i64) -> Vec<IVec> {
    let mut out: Vec<IVec> = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut longer = p.clone();
                    longer.push(Int::from(x));
                    longer
                })
            })
            .collect();
    }
    out
}

/// Evaluate an assembled downgrade at every lattice weight of sup-norm at
/// most `bound` and compare with minimization over independently enumerated
/// fiber vertices.
fn oracle_agrees(result: &DowngradeResult, bound: i64) {
    let labels: BTreeMap<usize, String> =
        (0..result.rays.len()).map(|i| (i, format!("R{i}"))).collect();
    let model = YModel::new(
        "oracle",
        ModelKind::AffinePlane,
        labels.values().cloned(),
        BTreeMap::new(),
    )
    .unwrap();
    let d = assemble(result, &labels, &model).unwrap();
    let k = result.sigma.rank();
    let sigma_gens = result.sigma.generators();
    let mut weights_checked = 0usize;
    for u in box_points(k, bound) {
        if sigma_gens.iter().any(|g| dot_ii(g, &u).is_negative()) {
            continue; // outside the weight cone
        }
        let uq = to_qvec(&u);
        let got = evaluate(&d, &uq).unwrap();
        let expected = QDivisor::from_pairs(result.rays.iter().enumerate().map(|(i, v)| {
            let min = fiber_vertices(&result.seq.p, v)
                .iter()
                .map(|x| dot_qq(&uq, &result.seq.s.apply(x)))
                .min()
                .expect("a pointed nonempty fiber has vertices");
            (labels[&i].clone(), min)
        }));
        assert_eq!(got, expected, "weight {u:?}");
        weights_checked += 1;
    }
    assert!(weights_checked > 0);
}

#[test]
fn criterion_8_evaluation_matches_brute_force_oracle() {
    // the building blocks, coefficients read through the last coordinate
    for p in [1i64, 2, 3, 5] {
        let w = WeightData::new(IntMatrix::column(&[p, p, -p, 1]), BTreeMap::new()).unwrap();
        let section = QMatrix::new(1, 4, vec![qi(0), qi(0), qi(0), qi(1)]);
        oracle_agrees(&downgrade_with_section(&w, section).unwrap(), 10);
    }
    // the Russell cubic's ambient grading
    let w = WeightData::new(IntMatrix::column(&[6, -6, 3, 2]), BTreeMap::new()).unwrap();
    oracle_agrees(&downgrade(&w).unwrap(), 10);
    // a rank-two subtorus with a nontrivial tail cone
    let w = WeightData::new(
        IntMatrix::from_rows(&[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]),
        BTreeMap::new(),
    )
    .unwrap();
    oracle_agrees(&downgrade(&w).unwrap(), 10);
    println!("criterion 8: evaluation agrees with the vertex-enumeration oracle — PASS");
}
