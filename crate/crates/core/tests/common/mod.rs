#![allow(dead_code)]

use stabforge_core::speclang::build_group_spec;
use stabforge_core::{Limits, PermGroup};

pub fn group(spec: &str) -> PermGroup {
    build_group_spec(spec, &Limits::default()).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Primitive solvable catalog groups.
pub const PRIMITIVES: &[&str] = &[
    "Sym(2)",
    "Cyc(3)",
    "Sym(3)",
    "Sym(4)",
    "Cyc(5)",
    "AGL(1,5)",
    "AGL(1,7)",
    "AS(2,3)",
    "ASL(2,3)",
    "AGL(2,3)",
    "AGL(1,11)",
    "AGL(1,13)",
    "AS(2,4)",
    "AS(5,2)",
    "AS(3,3)",
    "AS(2,5)",
];

/// Imprimitive wreaths whose top group has degree 2, 3, 4, 5, 7, 8, 9 and 11.
pub const WREATHS: &[(&str, usize)] = &[
    ("wr(AS(2,3),Cyc(2))", 2),
    ("wr(AGL(1,5),Cyc(3))", 3),
    ("wr(Sym(4),Sym(4))", 4),
    ("wr(Sym(3),AGL(1,5))", 5),
    ("wr(Cyc(2),AGL(1,7))", 7),
    ("wr(Cyc(2),AS(2,3))", 8),
    ("wr(Cyc(2),AGL(2,3))", 9),
    ("wr(Cyc(2),AGL(1,11))", 11),
];

pub const PRODUCT_ACTIONS: &[&str] = &["prodwr(Sym(4),Cyc(2))", "prodwr(Sym(3),Sym(3))"];

pub const INTRANSITIVE: &[&str] = &[
    "disjoint(Sym(3),Sym(4))",
    "disjoint(AS(2,3),Cyc(5))",
    "disjoint(Cyc(2),disjoint(Cyc(2),Cyc(2)))",
    "perm(7; (2 3 4))",
];
