//! Ready-made group specs for the two worked examples and a few small
//! boundary cases.

use crate::permgroup::GroupSpec;

/// Element order of `S_3` used to label the regular representation:
/// `1, (1 2), (2 3), (1 3), (1 2 3), (1 3 2)`.
pub const S3_ORDER: [&str; 6] = ["()", "(1 2)", "(2 3)", "(1 3)", "(1 2 3)", "(1 3 2)"];

/// Element order of `D_8 ⊂ S_4`: rotations `1, a, a², a³`, then reflections
/// `b, ab, a²b, a³b`, with `a = (1 2 3 4)` and `b = (2 4)`.
pub const D8_ORDER: [&str; 8] = [
    "()",
    "(1 2 3 4)",
    "(1 3)(2 4)",
    "(1 4 3 2)",
    "(2 4)",
    "(1 2)(3 4)",
    "(1 3)",
    "(1 4)(2 3)",
];

/// `S_3 ⊂ S_6` through its regular representation.
pub fn s3_regular() -> GroupSpec {
    GroupSpec::regular("S3-regular", 3, &["(1 2)", "(1 2 3)"], Some(&S3_ORDER))
}

/// `D_8 ⊂ S_8` through its regular representation.
pub fn d8_regular() -> GroupSpec {
    GroupSpec::regular("D8-regular", 4, &["(1 2 3 4)", "(2 4)"], Some(&D8_ORDER))
}

/// `S_3 × D_8 ⊂ S_24`, natural on the first factor and regular on the second.
pub fn s3_times_d8() -> GroupSpec {
    GroupSpec::direct_product_regular("S3xD8", GroupSpec::symmetric(3), d8_regular())
}

/// `C_3 ⊂ S_3` (its regular representation is the natural one).
pub fn c3_regular() -> GroupSpec {
    GroupSpec::regular("C3-regular", 3, &["(1 2 3)"], None)
}

/// `S_3` acting naturally on three points.
pub fn s3_natural() -> GroupSpec {
    GroupSpec::symmetric(3)
}
