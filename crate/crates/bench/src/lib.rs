//! Shared inputs for the benchmarks.

/// Non-standard monomials at `(2,3,3)` of degree 2 to 4.
pub const MONOMIALS_2_3_3: &[&str] = &[
    "p[1|2]*p[2|1]",
    "u[1,2]*xi[1,2]",
    "p[1|1]*u[2,3]",
    "p[1|2]*p[2|1]*p[1|1]",
    "p[1,3|2,3]*p[2|1]*u[1,2]",
    "p[1|3]*p[3|1]*p[2|2]*p[1,2|1,3]",
    "xi[1,2]*xi[2,3]*p[3|1]*u[1,3]",
];

pub fn parsed_2_3_3() -> Vec<smt_core::GenMonomial> {
    let p = smt_core::Params::new(2, 3, 3).unwrap();
    MONOMIALS_2_3_3
        .iter()
        .map(|s| smt_core::GenMonomial::parse(s, smt_core::Mode::S, &p).unwrap())
        .collect()
}
