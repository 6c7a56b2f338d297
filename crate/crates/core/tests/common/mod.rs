//! Golden CLI corpus: file stem and arguments.

pub const CORPUS: &[(&str, &[&str])] = &[
    (
        "normalize_e1_squared",
        &["normalize", "--n", "4", "--expr", "[2]*E1 - E1^2"],
    ),
    (
        "normalize_conjugate",
        &["normalize", "--n", "4", "--expr", "u^-1*E1*u"],
    ),
    ("normalize_u4", &["normalize", "--n", "4", "--expr", "u^4"]),
    (
        "normalize_loops",
        &["normalize", "--n", "4", "--expr", "E1*E3"],
    ),
    (
        "normalize_alpha",
        &[
            "normalize",
            "--n",
            "3",
            "--expr",
            "alpha*E1 + v^-1*u",
            "--ring",
            "Z[v,alpha]",
        ],
    ),
    (
        "mul_braid",
        &["mul", "--n", "3", "--lhs", "E1*E2", "--rhs", "E1"],
    ),
    (
        "mul_loops",
        &["mul", "--n", "4", "--lhs", "E1*E3", "--rhs", "E2*E4"],
    ),
    ("enumerate_4_2", &["enumerate", "--n", "4", "--t", "2"]),
    ("enumerate_5_1", &["enumerate", "--n", "5", "--t", "1"]),
    ("simples_5_tl", &["simples", "--n", "5", "--flavor", "tl"]),
    (
        "simples_4_tl_pretty",
        &["simples", "--n", "4", "--flavor", "tl", "--pretty"],
    ),
];
