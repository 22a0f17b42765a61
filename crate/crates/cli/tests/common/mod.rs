/// `(golden file stem, arguments)`; shared by the golden and acceptance tests.
pub const CASES: &[(&str, &[&str])] = &[
    ("algebra_info_oct", &["algebra", "info", "--algebra", "oct"]),
    (
        "algebra_info_lopsided",
        &[
            "algebra",
            "info",
            "--algebra-file",
            "tests/data/lopsided.json",
        ],
    ),
    (
        "algebra_table_oct",
        &["algebra", "table", "--algebra", "oct"],
    ),
    (
        "algebra_table_lopsided",
        &[
            "algebra",
            "table",
            "--algebra-file",
            "tests/data/lopsided.json",
        ],
    ),
    (
        "algebra_check_quat",
        &["algebra", "check", "--algebra", "quat"],
    ),
    (
        "algebra_check_oct",
        &["algebra", "check", "--algebra", "oct"],
    ),
    (
        "algebra_check_sed_json",
        &["algebra", "check", "--algebra", "sed", "--json"],
    ),
    (
        "algebra_check_split_oct",
        &[
            "algebra",
            "check",
            "--algebra",
            "split-oct",
            "--identity",
            "alternative",
        ],
    ),
    (
        "zero_divisor_sed",
        &["algebra", "zero-divisor", "--algebra", "sed"],
    ),
    (
        "assoc_oct",
        &["assoc", "--algebra", "oct", "--triple", "e1,e2,e4"],
    ),
    (
        "assoc_plus_oct_json",
        &[
            "assoc",
            "--algebra",
            "oct",
            "--triple",
            "e1,e2,e4",
            "--sign",
            "plus",
            "--json",
        ],
    ),
    ("nucleus_oct", &["nucleus", "--algebra", "oct"]),
    (
        "nucleus_quat_json",
        &["nucleus", "--algebra", "quat", "--json"],
    ),
    ("nucleus_sed", &["nucleus", "--algebra", "sed"]),
    (
        "subalgebra_oct",
        &["subalgebra", "--algebra", "oct", "--gens", "e1 + e2,e4"],
    ),
    (
        "classify_oct_observable",
        &["classify", "--algebra", "oct", "--gens", "e1,e2"],
    ),
    (
        "classify_oct_unobservable",
        &["classify", "--algebra", "oct", "--gens", "e1,e2,e4"],
    ),
    (
        "classify_oct_json",
        &[
            "classify",
            "--algebra",
            "oct",
            "--gens",
            "e1,e2,e4",
            "--json",
        ],
    ),
    (
        "expect_oct",
        &[
            "expect",
            "--algebra",
            "oct",
            "--psi",
            "1:e1;1/2:e2 - e4",
            "--m",
            "e3 + 2*e5",
        ],
    ),
    (
        "defect_lopsided",
        &[
            "defect",
            "--algebra-file",
            "tests/data/lopsided.json",
            "--psi",
            "1:e1;1/2:e2",
            "--m",
            "e1 + e2",
        ],
    ),
    (
        "commutator_minus",
        &[
            "commutator",
            "--sign",
            "minus",
            "--a",
            "[phi(x1) phi(x2)]",
            "--b",
            "[phi(x3) phi(x4)]",
        ],
    ),
    (
        "commutator_plus_json",
        &[
            "commutator",
            "--sign",
            "plus",
            "--a",
            "[phi(x1) [phi(x2) phi(x3)]]",
            "--b",
            "phi(x4)",
            "--json",
        ],
    ),
    (
        "commutator_right",
        &[
            "commutator",
            "--a",
            "[[a b] c]",
            "--b",
            "d",
            "--target",
            "right",
            "--rewrite",
            "plus",
        ],
    ),
    (
        "normalform_left",
        &[
            "normalform",
            "--expr",
            "[a [b [c d]]] - 1/2*g*[[a b] [c d]]",
        ],
    ),
    (
        "normalform_json",
        &["normalform", "--expr", "[x [y z]]", "--json"],
    ),
    ("ym_u1", &["ym", "--group", "u1"]),
    ("ym_u1_colors3", &["ym", "--group", "u1", "--colors", "3"]),
    ("ym_su2", &["ym", "--group", "su2"]),
    ("ym_su2_g_zero", &["ym", "--group", "su2", "--g-zero"]),
    (
        "ym_su2_covariant_census",
        &["ym", "--group", "su2", "--covariant", "--census"],
    ),
    (
        "ym_su2_file_json",
        &["ym", "--group-file", "tests/data/su2.json", "--json"],
    ),
    ("ym_u1_depth2", &["ym", "--group", "u1", "--depth", "2"]),
    (
        "ym_u1_depth3_symbolic",
        &[
            "ym",
            "--group",
            "u1",
            "--depth",
            "3",
            "--nesting",
            "right",
            "--symbolic",
        ],
    ),
    (
        "ym_su2_depth2_census",
        &["ym", "--group", "su2", "--depth", "2", "--census"],
    ),
];
