//! Reference values for degrees 2 through 6: transition matrices, linear
//! relations among `𝔖_α`, and worked expansions. Matrix rows and columns
//! follow the lexicographic order of peak compositions.

use crate::nsqf::MatrixPair;

type Table = &'static [&'static [i64]];

const QS: [Table; 4] = [
    &[&[1, 2], &[0, 1]],
    &[&[1, 2, 2], &[0, 1, 2], &[0, 0, 1]],
    &[&[1, 2, 6, 6, 4], &[0, 1, 2, 2, 2], &[0, 0, 1, 2, 2], &[0, 0, 0, 1, 2], &[0, 0, 0, 0, 1]],
    &[
        &[1, 2, 2, 4, 8, 12, 8, 4],
        &[0, 1, 2, 2, 6, 8, 6, 4],
        &[0, 0, 1, 0, 2, 2, 2, 2],
        &[0, 0, 0, 1, 2, 6, 6, 4],
        &[0, 0, 0, 0, 1, 2, 2, 2],
        &[0, 0, 0, 0, 0, 1, 2, 2],
        &[0, 0, 0, 0, 0, 0, 1, 2],
        &[0, 0, 0, 0, 0, 0, 0, 1],
    ],
];

const QPI: [Table; 4] = [
    &[&[4, 4], &[0, 2]],
    &[&[4, 4, 4], &[0, 4, 4], &[0, 0, 2]],
    &[&[8, 8, 8, 8, 8], &[0, 4, 4, 0, 4], &[0, 0, 4, 4, 4], &[0, 0, 0, 4, 4], &[0, 0, 0, 0, 2]],
    &[
        &[8, 8, 8, 8, 8, 8, 8, 8],
        &[0, 8, 8, 8, 8, 0, 8, 8],
        &[0, 0, 4, 0, 4, 0, 0, 4],
        &[0, 0, 0, 8, 8, 8, 8, 8],
        &[0, 0, 0, 0, 4, 4, 0, 4],
        &[0, 0, 0, 0, 0, 4, 4, 4],
        &[0, 0, 0, 0, 0, 0, 4, 4],
        &[0, 0, 0, 0, 0, 0, 0, 2],
    ],
];

const SBAR_PI: [Table; 4] = [
    &[&[1, 0], &[0, 1]],
    &[&[1, -1, 0], &[0, 1, 0], &[0, 0, 1]],
    &[&[1, 0, -1, 1, 0], &[0, 1, -1, 0, 0], &[0, 0, 1, -1, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]],
    &[
        &[1, -1, 0, -1, 0, 1, -1, 0],
        &[0, 1, 0, -1, -1, 1, 0, 0],
        &[0, 0, 1, 0, -1, 0, 0, 0],
        &[0, 0, 0, 1, 0, -1, 1, 0],
        &[0, 0, 0, 0, 1, -1, 0, 0],
        &[0, 0, 0, 0, 0, 1, -1, 0],
        &[0, 0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 0, 0, 1],
    ],
];

const PI_SBAR: [Table; 4] = [
    &[&[1, 0], &[0, 1]],
    &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]],
    &[&[1, 0, 1, 0, 0], &[0, 1, 1, 1, 0], &[0, 0, 1, 1, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]],
    &[
        &[1, 1, 0, 2, 1, 1, 0, 0],
        &[0, 1, 0, 1, 1, 1, 0, 0],
        &[0, 0, 1, 0, 1, 1, 1, 0],
        &[0, 0, 0, 1, 0, 1, 0, 0],
        &[0, 0, 0, 0, 1, 1, 1, 0],
        &[0, 0, 0, 0, 0, 1, 1, 0],
        &[0, 0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 0, 0, 1],
    ],
];

/// Reference matrix for `3 ≤ n ≤ 6`; `None` outside that range or for the
/// `(SbarStar, K)` pair, which is derived from `(Pi, Sbar)`.
pub fn matrix(n: u32, pair: MatrixPair) -> Option<Table> {
    if !(3..=6).contains(&n) {
        return None;
    }
    let i = (n - 3) as usize;
    match pair {
        MatrixPair::QS => Some(QS[i]),
        MatrixPair::QPi => Some(QPI[i]),
        MatrixPair::SbarPi => Some(SBAR_PI[i]),
        MatrixPair::PiSbar => Some(PI_SBAR[i]),
        MatrixPair::SbarStarK => None,
    }
}

/// A linear combination `Σ c 𝔖_α`.
pub type Relation = &'static [(i64, &'static [u32])];

/// Linear relations among `𝔖_α` with `|α| = n`, for `2 ≤ n ≤ 6`; together with
/// the peak-indexed basis they span the formal space of all `𝔖_α`.
pub fn relations(n: u32) -> &'static [Relation] {
    match n {
        2 => &[&[(1, &[1, 1])]],
        3 => &[&[(1, &[1, 1, 1])], &[(1, &[2, 1]), (1, &[1, 2])]],
        4 => &[
            &[(1, &[1, 1, 1, 1])],
            &[(1, &[2, 1, 1])],
            &[(1, &[1, 2, 1]), (1, &[1, 1, 2])],
            &[(1, &[1, 2, 1]), (2, &[2, 2])],
            &[(1, &[3, 1]), (1, &[2, 2]), (1, &[1, 3])],
        ],
        5 => &[
            &[(1, &[1, 1, 1, 1, 1])],
            &[(1, &[2, 1, 1, 1])],
            &[(1, &[3, 1, 1])],
            &[(1, &[1, 2, 1, 1])],
            &[(1, &[1, 1, 2, 1]), (1, &[1, 1, 1, 2])],
            &[(1, &[2, 2, 1]), (1, &[2, 1, 2])],
            &[(1, &[2, 2, 1]), (1, &[1, 2, 2])],
            &[(2, &[1, 2, 2]), (1, &[1, 1, 2, 1])],
            &[(2, &[3, 2]), (2, &[2, 3]), (1, &[2, 2, 1]), (1, &[1, 3, 1])],
            &[(1, &[1, 3, 1]), (1, &[1, 2, 2]), (1, &[1, 1, 3])],
            &[(1, &[4, 1]), (1, &[3, 2]), (1, &[2, 3]), (1, &[1, 4])],
        ],
        6 => &[
            &[(1, &[1, 1, 1, 1, 1, 1])],
            &[(1, &[2, 1, 1, 1, 1])],
            &[(1, &[3, 1, 1, 1])],
            &[(1, &[4, 1, 1])],
            &[(1, &[1, 3, 1, 1])],
            &[(1, &[2, 2, 1, 1])],
            &[(1, &[1, 2, 1, 1, 1])],
            &[(1, &[1, 1, 2, 1, 1])],
            &[(1, &[3, 2, 1]), (1, &[3, 1, 2])],
            &[(1, &[2, 1, 2, 1]), (1, &[2, 1, 1, 2])],
            &[(1, &[1, 2, 2, 1]), (1, &[1, 2, 1, 2])],
            &[(1, &[1, 1, 1, 2, 1]), (1, &[1, 1, 1, 1, 2])],
            &[(1, &[1, 2, 2, 1]), (1, &[1, 1, 2, 2])],
            &[(1, &[1, 1, 1, 2, 1]), (2, &[1, 1, 2, 2])],
            &[(1, &[2, 1, 2, 1]), (2, &[2, 2, 2])],
            &[(2, &[1, 3, 2]), (2, &[1, 2, 3]), (1, &[1, 2, 2, 1]), (1, &[1, 1, 3, 1])],
            &[(2, &[2, 3, 1]), (2, &[3, 3]), (1, &[3, 2, 1]), (1, &[1, 3, 2]), (1, &[2, 2, 2])],
            &[(2, &[4, 2]), (2, &[2, 4]), (1, &[1, 4, 1]), (1, &[3, 2, 1]), (1, &[1, 2, 3]), (1, &[2, 2, 2])],
            &[(2, &[4, 2]), (2, &[2, 4]), (2, &[3, 3]), (1, &[1, 4, 1]), (1, &[3, 2, 1]), (1, &[2, 3, 1])],
            &[(1, &[1, 2, 2, 1]), (2, &[3, 2, 1]), (2, &[2, 3, 1]), (2, &[1, 3, 2]), (2, &[1, 2, 3]), (4, &[2, 2, 2])],
            &[(1, &[2, 3, 1]), (1, &[2, 2, 2]), (1, &[2, 1, 3])],
            &[(1, &[1, 1, 3, 1]), (1, &[1, 1, 2, 2]), (1, &[1, 1, 1, 3])],
            &[(1, &[1, 4, 1]), (1, &[1, 3, 2]), (1, &[1, 2, 3]), (1, &[1, 1, 4])],
            &[(1, &[5, 1]), (1, &[4, 2]), (1, &[3, 3]), (1, &[2, 4]), (1, &[1, 5])],
        ],
        _ => &[],
    }
}

/// `Q_{222}` over the peak-indexed `𝔖` basis.
pub const Q222_IN_S: Relation = &[
    (1, &[2, 2, 2]),
    (2, &[2, 3, 1]),
    (2, &[2, 4]),
    (4, &[3, 2, 1]),
    (4, &[6]),
    (8, &[3, 3]),
    (8, &[5, 1]),
    (12, &[4, 2]),
];

/// `𝔖*_{321}` over `M`.
pub const SSTAR_321_M: Relation = &[
    (1, &[3, 2, 1]),
    (1, &[3, 1, 2]),
    (2, &[3, 1, 1, 1]),
    (2, &[2, 3, 1]),
    (4, &[2, 2, 2]),
    (8, &[2, 2, 1, 1]),
    (2, &[2, 1, 3]),
    (8, &[2, 1, 2, 1]),
    (8, &[2, 1, 1, 2]),
    (16, &[2, 1, 1, 1, 1]),
    (1, &[1, 4, 1]),
    (3, &[1, 3, 2]),
    (6, &[1, 3, 1, 1]),
    (2, &[1, 2, 3]),
    (8, &[1, 2, 2, 1]),
    (8, &[1, 2, 1, 2]),
    (16, &[1, 2, 1, 1, 1]),
    (4, &[1, 1, 3, 1]),
    (8, &[1, 1, 2, 2]),
    (16, &[1, 1, 2, 1, 1]),
    (4, &[1, 1, 1, 3]),
    (16, &[1, 1, 1, 2, 1]),
    (16, &[1, 1, 1, 1, 2]),
    (32, &[1, 1, 1, 1, 1, 1]),
];

/// `𝔖*_{321}` over `F`.
pub const SSTAR_321_F: Relation = &[
    (1, &[3, 2, 1]),
    (1, &[3, 1, 2]),
    (2, &[2, 3, 1]),
    (4, &[2, 2, 2]),
    (2, &[2, 2, 1, 1]),
    (2, &[2, 1, 3]),
    (3, &[2, 1, 2, 1]),
    (1, &[2, 1, 1, 2]),
    (1, &[1, 4, 1]),
    (3, &[1, 3, 2]),
    (2, &[1, 3, 1, 1]),
    (2, &[1, 2, 3]),
    (4, &[1, 2, 2, 1]),
    (2, &[1, 2, 1, 2]),
    (1, &[1, 1, 3, 1]),
    (1, &[1, 1, 2, 2]),
];

/// Rows of the four tableaux with shape `(3,4,2)` and content `(2,2,1,4)`.
pub const PCT_342_2214: &[&[&[u32]]] = &[
    &[&[1, 1, 2], &[2, 3, 4, 4], &[4, 4]],
    &[&[1, 1, 3], &[2, 2, 4, 4], &[4, 4]],
    &[&[1, 1, 4], &[2, 2, 3, 4], &[4, 4]],
    &[&[1, 1, 4], &[2, 2, 4, 4], &[3, 4]],
];

/// A tableau of shape `(3,4,2,3,1)` with `p = 5`, `m = 2`.
pub const STATISTICS_TABLEAU: &[&[u32]] = &[&[1, 1, 2], &[2, 3, 3, 5], &[3, 4], &[4, 4, 5], &[5]];

/// `p` and `m` over the 13 tableaux of content `(2,2,2)`, shapes in lex order.
pub const CONTENT_222_P: [u32; 13] = [0, 1, 1, 2, 1, 2, 2, 1, 3, 1, 2, 2, 2];
pub const CONTENT_222_M: [u32; 13] = [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0];
