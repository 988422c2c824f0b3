//! Byte-stable golden files under `fixtures/`, tied to their in-code
//! constructions. `regenerate_fixture_files` (ignored by default) rewrites
//! them: `cargo test -p symmorse --lib -- --ignored regenerate`.

use crate::complex::fixtures;
use crate::io;
use crate::matching::Matching;
use crate::morse::{self, DiscreteMorseFunction};
use crate::simplicial::OrderedSimplicialComplex;
use crate::tropical::enumerate_coloop_complex;
use std::path::PathBuf;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn half_triangle_dmf(values: &[(&str, i64)]) -> String {
    let x = fixtures::half_triangle();
    let f = DiscreteMorseFunction::from_named(&x, &morse::tests::named(values)).unwrap();
    io::dmf_to_string(&x, &f)
}

/// Every golden file name with its canonical contents.
fn goldens() -> Vec<(&'static str, String)> {
    let ht = fixtures::half_triangle();
    let matching = Matching::from_named(
        &ht,
        &[
            ("w".to_string(), "a0".to_string()),
            ("c".to_string(), "T0".to_string()),
        ],
    )
    .unwrap();
    vec![
        ("half-triangle.json", io::complex_to_string(&ht)),
        (
            "half-triangle-dmf-valid.json",
            half_triangle_dmf(&[("v", 0), ("a0", 1), ("w", 2), ("T0", 3), ("c", 4)]),
        ),
        (
            "half-triangle-dmf-two-down.json",
            half_triangle_dmf(&[("v", 1), ("a0", 0), ("w", 2), ("T0", 3), ("c", 4)]),
        ),
        (
            "half-triangle-dmf-nonincreasing.json",
            half_triangle_dmf(&[("v", 0), ("a0", 4), ("w", 1), ("c", 2), ("T0", 3)]),
        ),
        (
            "half-triangle-matching.json",
            io::matching_to_string(&ht, &matching),
        ),
        (
            "interval.json",
            io::complex_to_string(&OrderedSimplicialComplex::full_simplex(1).to_symmetric()),
        ),
        (
            "triangle.json",
            io::complex_to_string(&OrderedSimplicialComplex::full_simplex(2).to_symmetric()),
        ),
        (
            "circle.json",
            io::complex_to_string(&OrderedSimplicialComplex::boundary_simplex(2).to_symmetric()),
        ),
        (
            "coloop-g2.json",
            io::complex_to_string(&enumerate_coloop_complex(2, false).unwrap().0),
        ),
        (
            "coloop-g3.json",
            io::complex_to_string(&enumerate_coloop_complex(3, false).unwrap().0),
        ),
    ]
}

#[test]
fn golden_fixture_files_match_their_constructions() {
    for (name, expected) in goldens() {
        let path = fixture_dir().join(name);
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| {
            panic!(
                "{}: {e}; regenerate with `cargo test -p symmorse --lib -- --ignored regenerate`",
                path.display()
            )
        });
        assert_eq!(
            on_disk,
            expected,
            "{name} is stale; regenerate with `cargo test -p symmorse --lib -- --ignored regenerate`"
        );
    }
}

#[test]
fn complex_fixture_files_round_trip() {
    for name in [
        "half-triangle.json",
        "interval.json",
        "triangle.json",
        "circle.json",
        "coloop-g2.json",
        "coloop-g3.json",
    ] {
        let path = fixture_dir().join(name);
        let x = io::read_complex(&path).unwrap();
        assert!(x.validate().is_valid(), "{name} fails validation");
        assert_eq!(
            io::complex_to_string(&x),
            std::fs::read_to_string(&path).unwrap(),
            "{name} does not round-trip byte-identically"
        );
    }
}

#[test]
fn function_and_matching_fixtures_load_against_half_triangle() {
    let x = io::read_complex(&fixture_dir().join("half-triangle.json")).unwrap();
    for name in [
        "half-triangle-dmf-valid.json",
        "half-triangle-dmf-two-down.json",
        "half-triangle-dmf-nonincreasing.json",
    ] {
        let path = fixture_dir().join(name);
        let f = io::read_dmf(&path, &x).unwrap();
        assert_eq!(
            io::dmf_to_string(&x, &f),
            std::fs::read_to_string(&path).unwrap(),
            "{name} does not round-trip byte-identically"
        );
    }
    let path = fixture_dir().join("half-triangle-matching.json");
    let m = io::read_matching(&path, &x).unwrap();
    assert_eq!(
        io::matching_to_string(&x, &m),
        std::fs::read_to_string(&path).unwrap()
    );
}

#[test]
#[ignore = "rewrites the files under fixtures/"]
fn regenerate_fixture_files() {
    let dir = fixture_dir();
    std::fs::create_dir_all(&dir).unwrap();
    for (name, contents) in goldens() {
        std::fs::write(dir.join(name), contents).unwrap();
    }
}
