//! Built-in surfaces: worked fronts with known focal behaviour and the
//! model germs of the recognized singularity types.

use serde::Serialize;

use crate::classify::SingularityClass;
use crate::focal::FocalClass;
use crate::format::{parse_surface_spec, SurfaceFile};

#[derive(Debug, Clone, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    /// Source in the text format.
    pub source: &'static str,
    pub expected_class: SingularityClass,
    pub expected_focal: Option<FocalClass>,
}

impl Fixture {
    pub fn surface(&self) -> SurfaceFile {
        parse_surface_spec(self.source).expect("built-in fixtures parse")
    }

    pub fn point(&self) -> (f64, f64) {
        let p = self.surface().point.expect("built-in fixtures mark a point");
        (crate::poly::ratio_to_f64(p.0), crate::poly::ratio_to_f64(p.1))
    }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "sw-ce",
        description: "swallowtail whose focal surface has a cuspidal edge",
        source: "x = u^2/2 - v\ny = -u^3/3 + u*v\nz = -u^4/8 + u^2*v/2\npoint = 0, 0\n",
        expected_class: SingularityClass::Swallowtail,
        expected_focal: Some(FocalClass::CuspidalEdge),
    },
    Fixture {
        name: "cbf-sw",
        description: "cuspidal butterfly whose focal surface has a swallowtail",
        source: "x = (u^3 - 6v)/6\n\
                 y = -u^4/8 - u^3/6 + u*v + v\n\
                 z = (-5u^6 - 18u^5 + 60u^3*v + 180u^2*v - 180v^2)/360\n\
                 point = 0, 0\n",
        expected_class: SingularityClass::CuspidalButterfly,
        expected_focal: Some(FocalClass::Swallowtail),
    },
    Fixture {
        name: "cbf-cbk",
        description: "cuspidal butterfly whose focal surface has cuspidal beaks",
        source: "x = (u^3 - 6v)/6\n\
                 y = (u^6 - 9u^4 - 12u^3*v + 72u*v + 36v^2)/72\n\
                 z = -u^2*(u^3 - 10v)/20\n\
                 point = 0, 0\n",
        expected_class: SingularityClass::CuspidalButterfly,
        expected_focal: Some(FocalClass::CuspidalBeaks),
    },
    Fixture {
        name: "cbf-clp",
        description: "cuspidal butterfly whose focal surface has cuspidal lips",
        source: "x = (u^3 - 6v)/6\n\
                 y = (-u^6 - 9u^4 + 12u^3*v + 72u*v - 36v^2)/72\n\
                 z = -u^2*(u^3 - 10v)/20\n\
                 point = 0, 0\n",
        expected_class: SingularityClass::CuspidalButterfly,
        expected_focal: Some(FocalClass::CuspidalLips),
    },
    Fixture {
        name: "cuspidal-edge",
        description: "model cuspidal edge",
        source: "x = u\ny = v^2\nz = v^3\npoint = 0, 0\n",
        expected_class: SingularityClass::CuspidalEdge,
        expected_focal: Some(FocalClass::RegularPoint),
    },
    Fixture {
        name: "swallowtail",
        description: "model swallowtail",
        source: "x = u\ny = 4v^3 + 2u*v\nz = 3v^4 + u*v^2\npoint = 0, 0\n",
        expected_class: SingularityClass::Swallowtail,
        expected_focal: None,
    },
    Fixture {
        name: "cuspidal-butterfly",
        description: "model cuspidal butterfly",
        source: "x = u\ny = 5v^4 + 2u*v\nz = 4v^5 + u*v^2\npoint = 0, 0\n",
        expected_class: SingularityClass::CuspidalButterfly,
        expected_focal: None,
    },
    Fixture {
        name: "cuspidal-lips",
        description: "model cuspidal lips",
        source: "x = u\ny = 3v^4 + 2u^2*v^2\nz = v^3 + u^2*v\npoint = 0, 0\n",
        expected_class: SingularityClass::CuspidalLips,
        expected_focal: None,
    },
    Fixture {
        name: "cuspidal-beaks",
        description: "model cuspidal beaks",
        source: "x = u\ny = 3v^4 - 2u^2*v^2\nz = v^3 - u^2*v\npoint = 0, 0\n",
        expected_class: SingularityClass::CuspidalBeaks,
        expected_focal: None,
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Fixtures whose singular curve is the axis `v = 0` with a front frame at the point.
pub fn adapted_fixtures() -> impl Iterator<Item = &'static Fixture> {
    FIXTURES.iter().filter(|f| f.expected_focal.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse_with_points() {
        for f in FIXTURES {
            let s = f.surface();
            assert!(s.point.is_some(), "{}", f.name);
        }
        assert!(fixture("sw-ce").is_some());
        assert!(fixture("nope").is_none());
    }
}
