use alloc::vec::Vec;

use super::{validate, CircleSystem, FamilySpec};
use crate::moebius::SpherePoint;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Genus {
    Finite(usize),
    Infinite,
}

/// Topological data of the handlebody uniformized by the configuration:
/// genus and end space (the accumulation set of the circles).
#[derive(Debug, Clone, PartialEq)]
pub struct HandlebodySummary {
    pub genus: Genus,
    pub end_count_at_truncation: usize,
    pub accumulation: Vec<SpherePoint>,
}

/// Summary of a finite system: genus is the number of pairs, no ends.
pub fn handlebody_summary(sys: &CircleSystem) -> Result<HandlebodySummary> {
    if !validate(sys).admissible {
        return Err(Error::NotAdmissible);
    }
    Ok(HandlebodySummary {
        genus: Genus::Finite(sys.rank()),
        end_count_at_truncation: 0,
        accumulation: Vec::new(),
    })
}

/// Summary of an infinite configuration, validated through its truncation at
/// `radius`.
pub fn handlebody_summary_family(fam: &FamilySpec, radius: u32) -> Result<HandlebodySummary> {
    let sys = fam.materialize(radius)?;
    if !validate(&sys).admissible {
        return Err(Error::NotAdmissible);
    }
    if fam.is_finite() {
        return Ok(HandlebodySummary {
            genus: Genus::Finite(fam.explicit.len()),
            end_count_at_truncation: 0,
            accumulation: Vec::new(),
        });
    }
    let accumulation = fam.accumulation_points();
    Ok(HandlebodySummary {
        genus: Genus::Infinite,
        end_count_at_truncation: accumulation.len(),
        accumulation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CirclePair, ConjugatedFamily};
    use crate::moebius::{Moebius, OrientedCircle};
    use num_complex::Complex64;

    fn circle(x: f64, r: f64) -> OrientedCircle {
        OrientedCircle::new(Complex64::new(x, 0.0), r).unwrap()
    }

    fn three_pairs() -> CircleSystem {
        CircleSystem::new(
            (0..3)
                .map(|i| {
                    let x = 10.0 * i as f64;
                    CirclePair::canonical(i, circle(x, 1.0), circle(x + 4.0, 1.0), 0.0).unwrap()
                })
                .collect(),
        )
    }

    #[test]
    fn finite_genus() {
        let s = handlebody_summary(&three_pairs()).unwrap();
        assert_eq!(s.genus, Genus::Finite(3));
        assert!(s.accumulation.is_empty());
    }

    #[test]
    fn family_has_infinite_genus() {
        let h = Moebius::with_fixed_points(1.0.into(), 0.0.into(), Complex64::new(9.0, 0.0))
            .unwrap();
        let fam = FamilySpec {
            families: alloc::vec![ConjugatedFamily {
                base: CirclePair::canonical(0, circle(0.45, 0.02), circle(0.55, 0.02), 0.0)
                    .unwrap(),
                conjugator: h,
            }],
            ..Default::default()
        };
        let s = handlebody_summary_family(&fam, 2).unwrap();
        assert_eq!(s.genus, Genus::Infinite);
        assert_eq!(s.end_count_at_truncation, 2);
    }

    #[test]
    fn non_admissible_is_rejected() {
        let mut pairs = three_pairs().pairs().to_vec();
        pairs[1].c = circle(0.5, 1.0);
        assert_eq!(
            handlebody_summary(&CircleSystem::new(pairs)),
            Err(Error::NotAdmissible)
        );
    }
}
