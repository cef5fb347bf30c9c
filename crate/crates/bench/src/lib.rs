//! Fixture diagrams shared by the benchmarks.

use kohnert::families::{checkered, key};
use kohnert::{Composition, Diagram, Variant};

/// Named inputs of increasing closure size.
pub fn fixtures() -> Vec<(&'static str, Diagram)> {
    vec![
        ("figure-2", Diagram::from_pairs(&[(1, 3), (2, 1), (2, 2), (3, 2)]).unwrap()),
        ("key-0-3-4-2-3", key::key_diagram(&Composition::new(vec![0, 3, 4, 2, 3]))),
        ("staircase-3", checkered::staircase(3)),
        ("checkered-5", checkered::checkered(5, Variant::One)),
        ("checkered-6", checkered::checkered(6, Variant::Two)),
    ]
}
