//! Named solutions used throughout the tests, the CLI and the FFI layer.
//!
//! Cycle notation here is 1-based, as printed in the literature; everything is
//! converted to 0-based permutations on construction.

use crate::perm::Perm;
use crate::solutions::Solution;

fn from_cycles(n: usize, sigma: &[&str], tau: &[&str]) -> Solution {
    let parse = |rows: &[&str]| -> Vec<Perm> {
        rows.iter()
            .map(|c| Perm::parse_cycles(n, c).expect("catalog cycles are well formed"))
            .collect()
    };
    Solution::from_perms(parse(sigma), parse(tau)).expect("catalog entries are solutions")
}

/// Involutive, indecomposable, and equal to its own retraction (4 points).
pub fn four_point_indecomposable() -> Solution {
    from_cycles(
        4,
        &["(12)", "(1324)", "(34)", "(1423)"],
        &["(14)", "(1243)", "(23)", "(1342)"],
    )
}

/// Involutive multipermutation solution of level 3 on 5 points.
pub fn five_point_level_three() -> Solution {
    from_cycles(
        5,
        &["()", "()", "()", "(45)", "(23)(45)"],
        &["()", "()", "()", "(45)", "(23)(45)"],
    )
}

/// Involutive solution on 8 points that is not a multipermutation solution; its
/// retraction has 4 points and is its own retraction.
pub fn eight_point_candidate() -> Solution {
    from_cycles(
        8,
        &[
            "(3745)",
            "(3745)",
            "(1826)",
            "(1826)",
            "(13872465)",
            "(17842563)",
            "(13872465)",
            "(17842563)",
        ],
        &[
            "(3648)",
            "(3648)",
            "(1527)",
            "(1527)",
            "(16542873)",
            "(13562478)",
            "(16542873)",
            "(13562478)",
        ],
    )
}

/// Non-involutive solution on 3 points with `sigma_x = (2 3)` for all `x`.
pub fn three_point_non_involutive() -> Solution {
    from_cycles(3, &["(23)", "(23)", "(23)"], &["()", "(132)", "(123)"])
}

/// `r(x, y) = (y - 1, x + 1)` on `Z/n`.
pub fn cyclic_shift(n: usize) -> Solution {
    let down = Perm::from_images((0..n).map(|y| (y + n - 1) % n).collect()).unwrap();
    let up = down.inverse();
    Solution::from_perms(vec![down; n], vec![up; n]).expect("cyclic shift is a solution")
}

/// Looks up a catalog entry by the name used on the command line.
pub fn by_name(name: &str) -> Option<Solution> {
    Some(match name {
        "four-point-indecomposable" => four_point_indecomposable(),
        "five-point-level-three" => five_point_level_three(),
        "eight-point-candidate" => eight_point_candidate(),
        "three-point-non-involutive" => three_point_non_involutive(),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &[
    "four-point-indecomposable",
    "five-point-level-three",
    "eight-point-candidate",
    "three-point-non-involutive",
];
