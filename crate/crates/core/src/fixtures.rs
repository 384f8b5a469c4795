//! Small named presentations over `F_101` used throughout tests and docs.

use crate::algebra::{Presentation, Quiver, Relation};
use crate::exactla::{Field, DEFAULT_PRIME};

/// Builds a presentation from string data. Relations are lists of
/// `(coefficient, arrow path)` terms.
pub fn presentation(
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(i64, &[&str])]],
    p: u32,
) -> Presentation {
    let field = Field::new(p).expect("fixture prime");
    let quiver = Quiver::new(
        vertices.iter().copied(),
        arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
    )
    .expect("fixture quiver");
    let relations = relations
        .iter()
        .map(|terms| {
            let terms = terms
                .iter()
                .map(|(c, path)| (field.from_i64(*c), quiver.path(path).expect("fixture path")))
                .collect();
            Relation::new(terms).expect("fixture relation")
        })
        .collect();
    Presentation::new(quiver, relations, field)
}

/// One vertex `v`, loop `alpha`, `alpha^2 = 0`.
pub fn l2() -> Presentation {
    truncated_loop("v", "alpha", 2)
}

/// `k[x]/(x^n)` on vertex `a`.
pub fn truncated_polynomial(n: usize) -> Presentation {
    truncated_loop("a", "x", n)
}

fn truncated_loop(v: &str, x: &str, n: usize) -> Presentation {
    let path: Vec<&str> = vec![x; n];
    presentation(&[v], &[(x, v, v)], &[&[(1, &path)]], DEFAULT_PRIME)
}

/// `1 --a--> 2`.
pub fn a2() -> Presentation {
    presentation(&["1", "2"], &[("a", "1", "2")], &[], DEFAULT_PRIME)
}

/// `1 --a--> 2 --b--> 3`.
pub fn a3() -> Presentation {
    presentation(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[], DEFAULT_PRIME)
}

/// Kronecker quiver, arrows `a, b: 1 → 2`.
pub fn kronecker() -> Presentation {
    presentation(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[], DEFAULT_PRIME)
}

/// `D_4` with three arrows into the central vertex `0`.
pub fn d4() -> Presentation {
    presentation(
        &["0", "1", "2", "3"],
        &[("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0")],
        &[],
        DEFAULT_PRIME,
    )
}

/// Oriented 2-cycle `a: 1 → 2`, `b: 2 → 1` with `ab = ba = 0`.
pub fn n2() -> Presentation {
    presentation(
        &["1", "2"],
        &[("a", "1", "2"), ("b", "2", "1")],
        &[&[(1, &["a", "b"])], &[(1, &["b", "a"])]],
        DEFAULT_PRIME,
    )
}

/// Oriented 3-cycle with all paths of length two zero.
pub fn cycle3() -> Presentation {
    presentation(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        &[&[(1, &["a", "b"])], &[(1, &["b", "c"])], &[(1, &["c", "a"])]],
        DEFAULT_PRIME,
    )
}

/// `Ã_2` without relations: `1 → 2 → 3` and `1 → 3`.
pub fn a2_tilde() -> Presentation {
    presentation(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")],
        &[],
        DEFAULT_PRIME,
    )
}

const SQUARE_VERTICES: [&str; 4] = ["1", "2", "3", "4"];
const SQUARE_ARROWS: [(&str, &str, &str); 4] = [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")];

/// Square `1 → 2 → 4`, `1 → 3 → 4` with `ab = cd`.
pub fn square_commutative() -> Presentation {
    presentation(
        &SQUARE_VERTICES,
        &SQUARE_ARROWS,
        &[&[(1, &["a", "b"]), (-1, &["c", "d"])]],
        DEFAULT_PRIME,
    )
}

/// The square without relations.
pub fn square_free() -> Presentation {
    presentation(&SQUARE_VERTICES, &SQUARE_ARROWS, &[], DEFAULT_PRIME)
}

/// The square with `ab = 0` and `cd = 0`.
pub fn square_zero_relations() -> Presentation {
    presentation(
        &SQUARE_VERTICES,
        &SQUARE_ARROWS,
        &[&[(1, &["a", "b"])], &[(1, &["c", "d"])]],
        DEFAULT_PRIME,
    )
}
