mod common;

use common::{apply, projector_hyperplane_oracle, q, rank_gauss, subsets, Q};
use num_traits::Zero;
use phaselab::cli::bundle_json;
use phaselab::examples::{self, ExampleBundle, ExampleObject};
use phaselab::field::Rational;
use phaselab::frames::Frame;
use phaselab::io::{ArrangementFile, FrameFile};

fn frame_rows(f: &Frame<Rational>) -> Vec<Vec<Q>> {
    f.vectors().iter().map(|v| v.entries().to_vec()).collect()
}

#[test]
fn rd_family_against_oracles() {
    for d in 3..=8 {
        let b = examples::gen_rd_family(d, None).unwrap();
        let ExampleObject::Frame(f) = &b.object else {
            panic!("exact frame expected")
        };
        let rows = frame_rows(f);
        assert_eq!(rows.len(), 2 * d - 1);
        for r in &rows {
            let head = &r[..d - 1];
            let sum = head.iter().fold(Q::zero(), |a, c| a + c);
            let sq = head.iter().fold(Q::zero(), |a, c| a + c * c);
            assert_eq!(r[d - 1].clone() * sum, sq, "set identity, d = {d}");
        }
        for s in subsets(rows.len(), d) {
            let m: Vec<Vec<Q>> = s.iter().map(|&i| rows[i].clone()).collect();
            assert_eq!(rank_gauss(&m), d, "subset {s:?} dependent at d = {d}");
        }
        let ones = vec![q(1); d];
        let projected: Vec<Vec<Q>> = rows
            .iter()
            .map(|n| apply(&projector_hyperplane_oracle(n), &ones))
            .collect();
        assert!(projected.iter().all(|p| p[d - 1].is_zero()));
        assert!(rank_gauss(&projected) < d);
        for o in b.evaluate().unwrap() {
            assert!(o.passed(), "d = {d}: {o:?}");
        }
    }
}

#[test]
fn explicit_points_d3() {
    let b = examples::gen_rd_family(3, Some(&[q(2), q(3)])).unwrap();
    let ExampleObject::Frame(f) = &b.object else { panic!() };
    let rows = frame_rows(f);
    assert_eq!(rows[3], vec![q(2), q(-1), q(5)]);
    assert_eq!(rows[4], vec![q(3), q(-2), q(13)]);
}

#[test]
fn dependent_explicit_points_are_reported() {
    // x = 1 reproduces the all-ones vector.
    let err = examples::gen_rd_family(3, Some(&[q(1), q(3)])).unwrap_err().to_string();
    assert!(
        err.contains("linearly dependent") && err.contains("replace sample point 1"),
        "{err}"
    );
    assert!(examples::gen_rd_family(2, None).is_err());
    assert!(examples::gen_rd_family(4, Some(&[q(2), q(2), q(3)])).is_err());
    assert!(examples::gen_rd_family(4, Some(&[q(2)])).is_err());
}

fn reparse(b: &ExampleBundle) -> ExampleBundle {
    let text = bundle_json(b);
    let object = match &b.object {
        ExampleObject::Frame(_) => ExampleObject::Frame(FrameFile::parse(&text).unwrap().build().unwrap()),
        ExampleObject::FloatFrame(_) => ExampleObject::FloatFrame(FrameFile::parse(&text).unwrap().build().unwrap()),
        ExampleObject::Arrangement(_) => {
            ExampleObject::Arrangement(ArrangementFile::parse(&text).unwrap().build().unwrap())
        }
    };
    ExampleBundle { object, ..b.clone() }
}

#[test]
fn generated_examples_round_trip() {
    let bundles = vec![
        examples::gen_r3_quintet(),
        examples::gen_rd_family(3, None).unwrap(),
        examples::gen_rd_family(5, None).unwrap(),
        examples::gen_r3_hyperplane_quintet(),
        examples::gen_r4_six_hyperplanes(),
    ];
    for b in bundles {
        let again = reparse(&b);
        assert_eq!(again.object, b.object, "{}", b.name);
        assert_eq!(
            again.evaluate_exact().unwrap(),
            b.evaluate_exact().unwrap(),
            "{}",
            b.name
        );
        assert!(b.evaluate_exact().unwrap().iter().all(|o| o.passed()), "{}", b.name);
    }
}
