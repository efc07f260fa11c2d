//! Closed forms of the low-rank singularity potentials and flat coordinate
//! changes, typed in by hand. Used as regression data.

use crate::poly::MultiPoly;
use crate::rational::{q, qi, Rational};

fn poly(terms: &[(Rational, &[(&str, u32)])]) -> MultiPoly {
    terms
        .iter()
        .map(|(c, f)| MultiPoly::monomial(c.clone(), f))
        .sum()
}

pub fn phi_a3() -> MultiPoly {
    poly(&[
        (q(-1, 2), &[("t_0", 2), ("t_2", 1)]),
        (q(-1, 2), &[("t_0", 1), ("t_1", 2)]),
        (q(-1, 4), &[("t_1", 2), ("t_2", 2)]),
        (q(-1, 60), &[("t_2", 5)]),
    ])
}

pub fn phi_d3() -> MultiPoly {
    poly(&[
        (q(-1, 2), &[("t_0", 2), ("t_2", 1)]),
        (q(1, 2), &[("t_0", 1), ("t_*", 2)]),
        (q(-1, 4), &[("t_2", 2), ("t_*", 2)]),
        (q(-1, 60), &[("t_2", 5)]),
    ])
}

pub fn phi_a5() -> MultiPoly {
    poly(&[
        (q(-1, 2), &[("t_0", 2), ("t_4", 1)]),
        (qi(-1), &[("t_0", 1), ("t_1", 1), ("t_3", 1)]),
        (q(-1, 2), &[("t_0", 1), ("t_2", 2)]),
        (q(-1, 2), &[("t_1", 2), ("t_2", 1)]),
        (q(-1, 4), &[("t_1", 2), ("t_4", 2)]),
        (qi(-1), &[("t_1", 1), ("t_2", 1), ("t_3", 1), ("t_4", 1)]),
        (q(-1, 6), &[("t_1", 1), ("t_3", 3)]),
        (q(-1, 6), &[("t_2", 3), ("t_4", 1)]),
        (q(-1, 2), &[("t_2", 2), ("t_3", 2)]),
        (q(-1, 6), &[("t_2", 2), ("t_4", 3)]),
        (q(-1, 2), &[("t_2", 1), ("t_3", 2), ("t_4", 2)]),
        (q(-1, 6), &[("t_3", 4), ("t_4", 1)]),
        (q(-1, 8), &[("t_3", 2), ("t_4", 4)]),
        (q(-1, 210), &[("t_4", 7)]),
    ])
}

pub fn phi_d4() -> MultiPoly {
    poly(&[
        (q(-1, 2), &[("t_0", 2), ("t_4", 1)]),
        (q(-1, 2), &[("t_0", 1), ("t_2", 2)]),
        (q(1, 2), &[("t_0", 1), ("t_*", 2)]),
        (q(-1, 6), &[("t_2", 3), ("t_4", 1)]),
        (q(-1, 2), &[("t_2", 1), ("t_4", 1), ("t_*", 2)]),
        (q(-1, 6), &[("t_2", 2), ("t_4", 3)]),
        (q(1, 6), &[("t_*", 2), ("t_4", 3)]),
        (q(-1, 210), &[("t_4", 7)]),
    ])
}

/// `a_i(t)` for A_3, indexed by `i`.
pub fn a3_parameters() -> Vec<MultiPoly> {
    vec![
        poly(&[(qi(-1), &[("t_0", 1)]), (q(1, 2), &[("t_2", 2)])]),
        poly(&[(qi(-1), &[("t_1", 1)])]),
        poly(&[(qi(-1), &[("t_2", 1)])]),
    ]
}

/// `a_i(t)` for A_5, indexed by `i`.
pub fn a5_parameters() -> Vec<MultiPoly> {
    vec![
        poly(&[
            (qi(-1), &[("t_0", 1)]),
            (q(1, 2), &[("t_3", 2)]),
            (qi(1), &[("t_2", 1), ("t_4", 1)]),
            (q(-1, 3), &[("t_4", 3)]),
        ]),
        poly(&[(qi(-1), &[("t_1", 1)]), (qi(2), &[("t_3", 1), ("t_4", 1)])]),
        poly(&[(qi(-1), &[("t_2", 1)]), (q(3, 2), &[("t_4", 2)])]),
        poly(&[(qi(-1), &[("t_3", 1)])]),
        poly(&[(qi(-1), &[("t_4", 1)])]),
    ]
}

/// `t_i(a)` for A_5, indexed by `i`.
pub fn a5_flat_coordinates() -> Vec<MultiPoly> {
    vec![
        poly(&[
            (qi(-1), &[("a_0", 1)]),
            (q(1, 2), &[("a_3", 2)]),
            (qi(1), &[("a_2", 1), ("a_4", 1)]),
            (q(-7, 6), &[("a_4", 3)]),
        ]),
        poly(&[(qi(-1), &[("a_1", 1)]), (qi(2), &[("a_3", 1), ("a_4", 1)])]),
        poly(&[(qi(-1), &[("a_2", 1)]), (q(3, 2), &[("a_4", 2)])]),
        poly(&[(qi(-1), &[("a_3", 1)])]),
        poly(&[(qi(-1), &[("a_4", 1)])]),
    ]
}

/// `Y³_g`, the cubic twisted-sector term of the assembled Z/2Z potential.
pub fn twisted_cubic() -> MultiPoly {
    poly(&[(q(1, 2), &[("t_0", 1), ("t_*", 2)])])
}
