//! One function per subcommand.  Each takes the active session plus raw
//! argument strings and produces a [`Report`]; argument shape problems map
//! to [`CliError::Parse`] and exact-arithmetic failures to
//! [`CliError::Domain`], so the exit code distinguishes "you typed it wrong"
//! from "the calculus rejects it".

use std::collections::BTreeMap;

use num_traits::Signed;

use polydiv::divisors::PrimeLabel;
use polydiv::downgrade::{downgrade, WeightData};
use polydiv::fixtures::{first_kind, russell_cubic, second_kind};
use polydiv::linalg::IntMatrix;
use polydiv::notation::{format_cone, format_polyhedron, format_ppdivisor, format_qdivisor_in, parse_rat};
use polydiv::ppdiv::{
    evaluate, linearly_equivalent, pullback, pushforward, translate_by_div, validity_report,
    Plurifunction,
};
use polydiv::quotients::{quotient_effective, quotient_torus_subgroup, run_pipeline, QuotientStage};
use polydiv::{Error, IVec, QVec};

use crate::errors::CliError;
use crate::report::Report;
use crate::session::{
    self, fmt_ivec, fmt_matrix, parse_int, parse_int_tuple, parse_usize, tuple_chunks, valid_name,
    Session,
};

fn fmt_plurifunction(f: &Plurifunction) -> String {
    let parts: Vec<String> = f.components().iter().map(|c| c.to_string()).collect();
    format!("div({})", parts.join("; "))
}

/// `u` on the command line: a bare rational for rank 1, a `( .. )` tuple in
/// general.
fn parse_direction(s: &str) -> Result<QVec, CliError> {
    let t = s.trim();
    if t.starts_with('(') {
        session::parse_rat_tuple(t)
    } else {
        Ok(vec![parse_rat(t).map_err(|e| CliError::parse(e.to_string()))?])
    }
}

/// Integer weight vectors: a bare integer for rank 1, a `( .. )` tuple in
/// general.
fn parse_weight_vector(s: &str) -> Result<IVec, CliError> {
    let t = s.trim();
    if t.starts_with('(') {
        parse_int_tuple(t)
    } else {
        Ok(vec![parse_int(t)?])
    }
}

fn parse_matrix(s: &str) -> Result<IntMatrix, CliError> {
    let rows: Result<Vec<IVec>, CliError> =
        tuple_chunks(s)?.iter().map(|c| parse_int_tuple(c)).collect();
    let rows = rows?;
    if rows.is_empty() {
        return Err(CliError::parse("matrix needs at least one row"));
    }
    let k = rows[0].len();
    if k == 0 || rows.iter().any(|r| r.len() != k) {
        return Err(CliError::parse("matrix rows must be nonempty and of equal length"));
    }
    let m = rows.len();
    Ok(IntMatrix::new(m, k, rows.into_iter().flatten().collect()))
}

pub fn downgrade_op(
    s: &Session,
    weights_name: &str,
    labels_arg: Option<&str>,
) -> Result<Report, CliError> {
    let base = s.weight_data(weights_name)?;
    let mut labels: BTreeMap<usize, PrimeLabel> = base.column_labels().clone();
    if let Some(arg) = labels_arg {
        for part in arg.split(',') {
            let (idx, label) = part
                .trim()
                .split_once('=')
                .ok_or_else(|| CliError::parse(format!("expected `index=Label`, got {part:?}")))?;
            if !valid_name(label.trim()) {
                return Err(CliError::parse(format!("bad prime label {:?}", label.trim())));
            }
            labels.insert(parse_usize(idx)?, label.trim().to_string());
        }
    }
    let w = WeightData::new(base.weights().clone(), labels)?;
    let result = downgrade(&w)?;
    let mut report = Report::new("downgrade")
        .input("weights", weights_name)
        .input("matrix", fmt_matrix(w.weights()))
        .result("tail", format_cone(&result.sigma));
    for (i, ray) in result.rays.iter().enumerate() {
        let label = match result.ray_labels.get(&i) {
            Some(l) => format!(" ({l})"),
            None => String::new(),
        };
        report = report.result(
            format!("ray{i}"),
            format!("{} -> {}{label}", fmt_ivec(ray), format_polyhedron(&result.polytopes[i])),
        );
    }
    Ok(report)
}

pub fn eval_op(s: &Session, divisor: &str, u: &str) -> Result<Report, CliError> {
    let d = s.divisor(divisor)?;
    let u = parse_direction(u)?;
    let value = evaluate(d, &u)?;
    Ok(Report::new("eval")
        .input("divisor", format_ppdivisor(d))
        .input("u", polydiv::notation::format_qvec(&u))
        .result("value", format_qdivisor_in(d.model(), &value)))
}

pub fn push_op(s: &Session, divisor: &str, matrix: &str) -> Result<Report, CliError> {
    let d = s.divisor(divisor)?;
    let f = parse_matrix(matrix)?;
    if f.cols() != d.rank() {
        return Err(CliError::Domain(Error::RankMismatch(format!(
            "matrix has {} columns, divisor rank is {}",
            f.cols(),
            d.rank()
        ))));
    }
    let target_tail = d.tail().image(&f);
    let out = pushforward(&f, d, &target_tail)?;
    Ok(Report::new("push")
        .input("divisor", format_ppdivisor(d))
        .input("matrix", fmt_matrix(&f))
        .result("tail", format_cone(out.tail()))
        .result("value", format_ppdivisor(&out)))
}

pub fn pull_op(s: &Session, cover: &str, divisor: &str) -> Result<Report, CliError> {
    let c = s.cover(cover)?;
    let d = s.divisor(divisor)?;
    let out = pullback(c, d)?;
    Ok(Report::new("pull")
        .input("cover", cover)
        .input("divisor", format_ppdivisor(d))
        .result("value", format_ppdivisor(&out)))
}

pub fn descend_op(s: &Session, cover: &str, divisor: &str) -> Result<Report, CliError> {
    let c = s.cover(cover)?;
    let d = s.divisor(divisor)?;
    let out = quotient_effective(d, c)?;
    let round_trip = pullback(c, &out)? == *d;
    Ok(Report::new("descend")
        .input("cover", cover)
        .input("divisor", format_ppdivisor(d))
        .result("value", format_ppdivisor(&out))
        .check_bool("pullback-round-trip", round_trip))
}

pub fn quotient_torus_op(
    s: &Session,
    divisor: &str,
    order: &str,
    weight: &str,
) -> Result<Report, CliError> {
    let d = s.divisor(divisor)?;
    let order = parse_int(order)?;
    let weight = parse_weight_vector(weight)?;
    if !order.is_positive() {
        return Err(CliError::Domain(Error::InvalidParameters(format!(
            "subgroup order must be positive, got {order}"
        ))));
    }
    if weight.len() != d.rank() {
        return Err(CliError::Domain(Error::RankMismatch(format!(
            "weight has length {}, divisor rank is {}",
            weight.len(),
            d.rank()
        ))));
    }
    let out = quotient_torus_subgroup(d, &order, &weight);
    Ok(Report::new("quotient-torus")
        .input("divisor", format_ppdivisor(d))
        .input("order", order.to_string())
        .input("weight", fmt_ivec(&weight))
        .result("value", format_ppdivisor(&out)))
}

pub fn equiv_op(s: &Session, d1_name: &str, d2_name: &str) -> Result<Report, CliError> {
    let d1 = s.divisor(d1_name)?;
    let d2 = s.divisor(d2_name)?;
    let (eq, witness) = linearly_equivalent(d1, d2)?;
    let mut report = Report::new("equiv")
        .input("d1", format_ppdivisor(d1))
        .input("d2", format_ppdivisor(d2));
    if !eq {
        return Ok(report.result("value", "NOT EQUIVALENT"));
    }
    match witness {
        Some(w) => {
            report = report.result("value", format!("EQUIVALENT, witness: {}", fmt_plurifunction(&w)));
            let translated = translate_by_div(d1, &w)?;
            report = report.check_bool("translate-by-witness", &translated == d2);
        }
        None => {
            report = report
                .result("value", "EQUIVALENT, witness: none among the registered functions");
        }
    }
    Ok(report)
}

/// `<divisor> | torus <order> <weight> | descend <cover> | ...`
pub fn pipeline_op(s: &Session, spec: &str) -> Result<Report, CliError> {
    let mut parts = spec.split('|').map(str::trim);
    let first = parts
        .next()
        .filter(|p| !p.is_empty())
        .ok_or_else(|| CliError::parse("pipeline spec is empty"))?;
    let d = s.divisor(first)?;
    let mut stages: Vec<QuotientStage> = Vec::new();
    let mut stage_names: Vec<String> = Vec::new();
    for part in parts {
        let tokens: Vec<&str> = part.split_whitespace().collect();
        let stage = match tokens.as_slice() {
            ["torus", order, weight] => QuotientStage::TorusSubgroup {
                order: parse_int(order)?,
                weight: parse_weight_vector(weight)?,
            },
            ["descend", cover] => QuotientStage::Effective { cover: s.cover(cover)?.clone() },
            _ => {
                return Err(CliError::parse(format!(
                    "bad pipeline stage {part:?}; expected `torus <order> <weight>` or `descend <cover>`"
                )))
            }
        };
        stages.push(stage);
        stage_names.push(part.to_string());
    }
    if stages.is_empty() {
        return Err(CliError::parse("pipeline needs at least one stage after the divisor"));
    }
    let (out, reports) = run_pipeline(d, &stages)?;
    let mut report = Report::new("pipeline").input("divisor", format_ppdivisor(d));
    for (i, name) in stage_names.iter().enumerate() {
        report = report.input(format!("stage{i}"), name.clone());
    }
    for (i, r) in reports.iter().enumerate() {
        report = report.result(format!("stage{i}"), format_ppdivisor(&r.output));
    }
    report = report.result("value", format_ppdivisor(&out));
    for (i, r) in reports.iter().enumerate() {
        report = report.check_bool(format!("stage{i}-valid"), r.valid);
    }
    Ok(report)
}

pub fn kr_op(variant: &str, params: &[i64]) -> Result<Report, CliError> {
    match variant {
        "cubic" => {
            if !params.is_empty() {
                return Err(CliError::parse("kr cubic takes no parameters"));
            }
            let f = russell_cubic();
            let (_, reports) =
                run_pipeline(&f.divisor, &[f.stage_mu2.clone(), f.stage_mu3.clone()])?;
            Ok(Report::new("kr cubic")
                .result("divisor", format_ppdivisor(&f.divisor))
                .result("degree-2 part", format_ppdivisor(&f.d2))
                .result("degree-3 part", format_ppdivisor(&f.d3))
                .check_bool("pipeline-valid", reports.iter().all(|r| r.valid)))
        }
        "first" => {
            let [d, alpha2, alpha3] = params else {
                return Err(CliError::parse("kr first takes `<d> <alpha2> <alpha3>`"));
            };
            let f = first_kind(*d, *alpha2, *alpha3)?;
            let round_trip = pullback(&f.cover, &f.descended)? == f.cover_divisor;
            Ok(Report::new("kr first")
                .input("d", d.to_string())
                .input("alpha2", alpha2.to_string())
                .input("alpha3", alpha3.to_string())
                .result("bezout", format!("a={}, b={}", f.params.a, f.params.b))
                .result("upstairs", format_ppdivisor(&f.cover_divisor))
                .result("descended", format_ppdivisor(&f.descended))
                .check_bool("pullback-round-trip", round_trip))
        }
        "second" => {
            let [d, l, alpha2, alpha3] = params else {
                return Err(CliError::parse("kr second takes `<d> <l> <alpha2> <alpha3>`"));
            };
            let f = second_kind(*d, *l, *alpha2, *alpha3)?;
            let (out, reports) = run_pipeline(&f.top_divisor, &f.stages)?;
            Ok(Report::new("kr second")
                .input("d", d.to_string())
                .input("l", l.to_string())
                .input("alpha2", alpha2.to_string())
                .input("alpha3", alpha3.to_string())
                .result(
                    "bezout",
                    format!("a={}, b={}, a'={}", f.params.a, f.params.b, f.params.a_prime),
                )
                .result("top", format_ppdivisor(&f.top_divisor))
                .result("mid", format_ppdivisor(&f.mid_divisor))
                .result("final", format_ppdivisor(&f.final_divisor))
                .check_bool("pipeline-reproduces-final", out == f.final_divisor)
                .check_bool("stages-valid", reports.iter().all(|r| r.valid)))
        }
        other => Err(CliError::parse(format!(
            "unknown kr variant {other:?}; expected cubic, first or second"
        ))),
    }
}

pub fn check_op(s: &Session, divisor: &str) -> Result<Report, CliError> {
    let d = s.divisor(divisor)?;
    let v = validity_report(d);
    let mut report = Report::new("check")
        .input("divisor", format_ppdivisor(d))
        .input("model", d.model().name())
        .result("tail", format_cone(d.tail()))
        .check("pointed", v.pointed.as_str())
        .check("shared-tail", v.shared_tail.as_str())
        .check("labels", v.labels_ok.as_str())
        .check("effective-primes", v.effective_primes.as_str())
        .check("semiample", v.semiample.as_str())
        .check("big", v.big.as_str());
    if !v.notes.is_empty() {
        report = report.result("notes", v.notes.join("; "));
    }
    Ok(report)
}

pub fn session_check_op(text: &str) -> Result<Report, CliError> {
    let parsed = session::parse_session(text)?;
    let canon = session::serialize_session(&parsed);
    let reparsed = session::parse_session(&canon)?;
    let round_trip = reparsed == parsed && session::serialize_session(&reparsed) == canon;
    Ok(Report::new("session check")
        .result("models", parsed.models.len().to_string())
        .result("weights", parsed.weights.len().to_string())
        .result("covers", parsed.covers.len().to_string())
        .result("divisors", parsed.divisors.len().to_string())
        .check_bool("round-trip", round_trip)
        .check_bool("canonical", text == canon))
}
