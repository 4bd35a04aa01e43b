//! The session that is loaded when no `--session` file is given: the Russell
//! cubic with two of its presentations and its degree parts, one threefold of
//! each Koras-Russell kind with the covers linking their presentation levels,
//! and a handful of weight matrices for the `downgrade` command.

use std::collections::BTreeMap;

use polydiv::downgrade::WeightData;
use polydiv::fixtures::{first_kind, russell_cubic, second_kind};
use polydiv::linalg::IntMatrix;

use crate::session::Session;

pub fn builtin_session() -> Session {
    let mut s = Session::default();

    let cubic = russell_cubic();
    s.insert_model(&cubic.model);
    s.divisors.insert("cubic".into(), cubic.divisor.clone());
    s.divisors.insert("cubic_alt".into(), cubic.variant(-1, 2));
    s.divisors.insert("cubic_d2".into(), cubic.d2.clone());
    s.divisors.insert("cubic_d3".into(), cubic.d3.clone());

    let first = first_kind(3, 2, 3).expect("builtin first-kind parameters are valid");
    s.insert_model(&first.cover_model);
    s.insert_model(&first.quotient_model);
    s.covers.insert("first".into(), first.cover.clone());
    s.divisors.insert("first_up".into(), first.cover_divisor.clone());
    s.divisors.insert("first_down".into(), first.descended.clone());

    let second = second_kind(2, 2, 3, 5).expect("builtin second-kind parameters are valid");
    s.insert_model(&second.top_model);
    s.insert_model(&second.mid_model);
    s.insert_model(&second.bottom_model);
    s.covers.insert("second_d".into(), second.cover_d.clone());
    s.covers.insert("second_dl1".into(), second.cover_dl1.clone());
    s.divisors.insert("second_top".into(), second.top_divisor.clone());
    s.divisors.insert("second_mid".into(), second.mid_divisor.clone());
    s.divisors.insert("second_final".into(), second.final_divisor.clone());

    // hyperbolic building-block actions (p, p, -p, 1)
    for p in [1i64, 2, 3, 5] {
        let labels: BTreeMap<usize, String> =
            [(2usize, "E".to_string()), (3usize, "D".to_string())].into();
        let w = WeightData::new(IntMatrix::column(&[p, p, -p, 1]), labels)
            .expect("building-block weights are valid");
        s.weights.insert(format!("bb{p}"), w);
    }
    // the cubic's ambient action (x, y, z, t) with the exceptional on y
    let ambient_labels: BTreeMap<usize, String> =
        [(1usize, "E".to_string()), (2usize, "D3".to_string()), (3usize, "D2".to_string())].into();
    s.weights.insert(
        "ambient".into(),
        WeightData::new(IntMatrix::column(&[6, -6, 3, 2]), ambient_labels)
            .expect("ambient weights are valid"),
    );
    // an unlabeled rank-2 action, for inspecting raw downgrade output
    s.weights.insert(
        "rank2".into(),
        WeightData::new(
            IntMatrix::from_rows(&[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]),
            BTreeMap::new(),
        )
        .expect("rank-2 weights are valid"),
    );

    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::{parse_session, serialize_session};

    #[test]
    fn builtin_session_round_trips_through_its_text_form() {
        let s = builtin_session();
        assert!(s.divisors.contains_key("cubic"));
        assert!(s.covers.contains_key("first"));
        assert!(s.weights.contains_key("bb2"));
        let text = serialize_session(&s);
        let reparsed = parse_session(&text).expect("builtin session parses");
        assert_eq!(reparsed, s);
        assert_eq!(serialize_session(&reparsed), text);
    }
}
