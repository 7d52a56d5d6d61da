use std::fs;

use eqlines::exactlin::nullity;
use eqlines::seidel::{max_clique, witt_two_graph_276, SeidelMatrix};
use eqlines_cli::ingest::{ingest_seidel, ingest_seidel_with, validate, Expectations, IngestError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 57 of the 276 lines: a real line system with `λ_min = -5`, standing in
/// for the transcribed data.
fn surrogate() -> SeidelMatrix {
    let w = witt_two_graph_276();
    let n = 57;
    let entries = (0..n * n).map(|k| w.get(k / n, k % n)).collect();
    SeidelMatrix::from_entries(n, entries).unwrap()
}

fn flipped(s: &SeidelMatrix, i: usize, j: usize) -> SeidelMatrix {
    let n = s.order();
    let entries = (0..n * n)
        .map(|k| {
            let (a, b) = (k / n, k % n);
            let v = s.get(a, b);
            if (a, b) == (i, j) || (a, b) == (j, i) {
                -v
            } else {
                v
            }
        })
        .collect();
    SeidelMatrix::from_entries(n, entries).unwrap()
}

fn surrogate_expectations(s: &SeidelMatrix) -> Expectations {
    let k = nullity(&s.gram()).nullity;
    Expectations {
        order: s.order(),
        nullity: k,
        rank: s.order() - k,
        clique_number: Some(max_clique(&s.to_graph()).size()),
    }
}

#[test]
fn zero_off_diagonal_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("S1.txt");
    fs::write(&path, "3\n0 1 1\n1 0 0\n1 0 0\n").unwrap();
    match ingest_seidel(&path) {
        Err(IngestError::Parse { .. }) => {}
        other => panic!("expected a parse rejection, got {other:?}"),
    }
}

#[test]
fn wrong_order_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("S1.txt");
    fs::write(&path, "2\n0 1\n1 0\n").unwrap();
    assert_eq!(ingest_seidel(&path).unwrap_err().invariant(), Some("order"));
}

#[test]
fn surrogate_round_trips_through_a_file() {
    let s = surrogate();
    let want = surrogate_expectations(&s);
    assert!(
        want.rank <= 23,
        "a subsystem of the 276 lines spans at most 23 dimensions"
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("S1.txt");
    fs::write(&path, s.to_text()).unwrap();
    let f = ingest_seidel_with(&path, &want).unwrap();
    assert_eq!(f.matrix, s);
    assert_eq!(f.validation.nullity, want.nullity);
}

#[test]
fn sign_flips_fail_validation() {
    let s = surrogate();
    let want = surrogate_expectations(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    for _ in 0..40 {
        let i = rng.gen_range(0..57);
        let mut j = rng.gen_range(0..56);
        if j >= i {
            j += 1;
        }
        let t = flipped(&s, i, j);
        let (name, _) = validate(&t, &want).expect_err("a flipped pair must break an invariant");
        assert!(
            matches!(name, "lambda-min" | "nullity"),
            "flip ({i},{j}) broke {name}"
        );
    }
}
