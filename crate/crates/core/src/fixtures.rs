//! Built-in fixture corpus: strata files and fans for the worked examples,
//! shipped under `fixtures/` and embedded at compile time.

use crate::error::Result;
use crate::io::{parse_fan, parse_strata};
use crate::resolution::StratifiedResolutionData;
use crate::toricfan::Fan;

#[derive(Debug, Clone, Copy)]
pub struct StrataFixture {
    pub name: &'static str,
    /// The underlying variety is projective, so duality applies.
    pub projective: bool,
    pub text: &'static str,
}

impl StrataFixture {
    pub fn load(&self) -> Result<StratifiedResolutionData> {
        parse_strata(self.text)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FanFixture {
    pub name: &'static str,
    pub complete: bool,
    pub text: &'static str,
}

impl FanFixture {
    pub fn load(&self) -> Result<Fan> {
        parse_fan(self.text)
    }
}

macro_rules! strata {
    ($name:literal, $proj:expr) => {
        StrataFixture {
            name: $name,
            projective: $proj,
            text: include_str!(concat!("../fixtures/strata/", $name, ".json")),
        }
    };
}

macro_rules! fan {
    ($name:literal, $complete:expr) => {
        FanFixture {
            name: $name,
            complete: $complete,
            text: include_str!(concat!("../fixtures/fans/", $name, ".json")),
        }
    };
}

pub const STRATA: &[StrataFixture] = &[
    strata!("a2_threefold", false),
    strata!("quadric_cone_d3", true),
    strata!("quadric_cone_d4", true),
    strata!("quadric_cone_d5", true),
    strata!("quadric_cone_d6", true),
    strata!("fano_cone_p2_3_1", true),
    strata!("fano_cone_p2_3_2", true),
    strata!("fano_cone_p1_2_3", true),
    strata!("fano_cone_p1xp1_2_1", true),
    strata!("fano_cone_p3_4_3", true),
    strata!("k3", true),
    strata!("elliptic_curve", true),
    strata!("point", true),
    strata!("a1_minimal", false),
    strata!("a1_blown_up", false),
];

pub const FANS: &[FanFixture] = &[
    fan!("p2", true),
    fan!("p1xp1", true),
    fan!("hirzebruch_f1", true),
    fan!("p3", true),
    fan!("weighted_p121", true),
    fan!("weighted_p121_smooth", true),
    fan!("weighted_p113", true),
    fan!("a1_cone", false),
    fan!("a1_cone_smooth", false),
    fan!("a2_surface_cone", false),
    fan!("one_third_cone", false),
    fan!("c3_mod_z3", false),
    fan!("conifold", false),
    fan!("triangle_cone", false),
    fan!("hexagon_cone", false),
    fan!("not_q_gorenstein", false),
];

/// `(fan, smooth refinement)` pairs.
pub const REFINEMENTS: &[(&str, &str)] = &[("a1_cone", "a1_cone_smooth"), ("weighted_p121", "weighted_p121_smooth")];

/// Fans together with rays of support-function value 1 to star-subdivide at.
pub const CREPANT_RAYS: &[(&str, &[&[i64]])] = &[
    ("a1_cone", &[&[1, 1]]),
    ("weighted_p121", &[&[0, -1]]),
    ("a2_surface_cone", &[&[1, 1], &[1, 2]]),
    ("c3_mod_z3", &[&[0, 0, 1]]),
    ("triangle_cone", &[&[1, 1, 1]]),
    ("triangle_cone", &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]),
    ("hexagon_cone", &[&[0, 0, 1]]),
];

/// Cone over a Fano base: `(strata fixture, E(X_0) as coefficients in uv, k, l, d)`.
pub const FANO_CONES: &[(&str, &[i64], u64, u64, u32)] = &[
    ("quadric_cone_d3", &[1, 2, 1], 2, 1, 3),
    ("quadric_cone_d4", &[1, 1, 1, 1], 3, 1, 4),
    ("quadric_cone_d5", &[1, 1, 2, 1, 1], 4, 1, 5),
    ("quadric_cone_d6", &[1, 1, 1, 1, 1, 1], 5, 1, 6),
    ("fano_cone_p2_3_1", &[1, 1, 1], 3, 1, 3),
    ("fano_cone_p2_3_2", &[1, 1, 1], 3, 2, 3),
    ("fano_cone_p1_2_3", &[1, 1], 2, 3, 2),
    ("fano_cone_p1xp1_2_1", &[1, 2, 1], 2, 1, 3),
    ("fano_cone_p3_4_3", &[1, 1, 1, 1], 4, 3, 4),
];

pub fn strata_fixture(name: &str) -> Option<&'static StrataFixture> {
    STRATA.iter().find(|f| f.name == name)
}

pub fn fan_fixture(name: &str) -> Option<&'static FanFixture> {
    FANS.iter().find(|f| f.name == name)
}
