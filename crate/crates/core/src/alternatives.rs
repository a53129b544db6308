//! Indistinguishable two-photon alternatives for each source pairing.
//!
//! An alternative is one way a photon pair travels from the sources to the
//! two detectors. Its amplitude is
//!
//! ```text
//! weight · exp(i(φ[slot₁] + φ[slot₂] + n·π/2)) · K(ν_src₁, t₁) · K(ν_src₂, t₂)
//! ```
//!
//! where `n` counts reflections and the `φ` are per-realization random photon
//! phases. Which alternatives share a phase slot encodes the statistics of
//! the sources: a laser reuses one slot for all of its photons, a thermal
//! source draws a fresh slot for each photon, and the two orderings of a
//! thermal pair reuse the same two slots with the roles of the detectors
//! exchanged. Terms in which a photon pair comes from one single-photon
//! source do not exist.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::model::{PairKind, Source};
use crate::probability::PathProbabilities;

/// One indistinguishable two-photon path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alternative {
    pub weight: f64,
    /// Source of the photon detected at D1.
    pub detector1_source: Source,
    /// Source of the photon detected at D2.
    pub detector2_source: Source,
    /// Number of π/2 reflection phases, 0 to 2.
    pub bs_phase_count: u8,
    /// Phase slots of the photons detected at D1 and D2.
    pub phase_slots: [usize; 2],
}

/// How photon phases are assigned to slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseModel {
    /// Laser photons share one slot, thermal photons get independent slots,
    /// and alternatives describing the same photon pair share slots.
    #[default]
    Physical,
    /// Every photon of every alternative gets its own slot. No two
    /// alternatives stay coherent; used as a negative control.
    Independent,
}

/// Alternatives of one pairing together with the number of phase slots a
/// realization must supply.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternativeSet {
    pub pair: PairKind,
    pub alternatives: Vec<Alternative>,
    pub slot_count: usize,
}

impl AlternativeSet {
    pub fn new(pair: PairKind, p: &PathProbabilities, model: PhaseModel) -> Self {
        let alternatives = enumerate_alternatives(pair, p);
        match model {
            PhaseModel::Physical => AlternativeSet {
                pair,
                slot_count: physical_slot_count(pair),
                alternatives,
            },
            PhaseModel::Independent => AlternativeSet {
                pair,
                slot_count: 2 * alternatives.len(),
                alternatives: alternatives
                    .into_iter()
                    .enumerate()
                    .map(|(k, alt)| Alternative {
                        phase_slots: [2 * k, 2 * k + 1],
                        ..alt
                    })
                    .collect(),
            },
        }
    }

    /// Sum of squared weights.
    pub fn total_probability(&self) -> f64 {
        self.alternatives.iter().map(|a| a.weight * a.weight).sum()
    }
}

/// Number of independent phase slots per realization under
/// [`PhaseModel::Physical`].
pub fn physical_slot_count(pair: PairKind) -> usize {
    match pair {
        // φa, φa', φa'' plus the laser
        PairKind::LT => 4,
        PairKind::LL => 2,
        // φa, φa', φb, φb', φa'', φb''
        PairKind::TT => 6,
        PairKind::SS => 2,
        PairKind::SL => 2,
        // φb, φb', φb'' plus the single photon
        PairKind::ST => 4,
    }
}

/// `exp(i·2π·ν·t)`: the time-dependent factor of the point-source propagator.
/// Optical distances are equal for all paths, so the spatial factor is a
/// common constant and dropped.
pub fn temporal_propagator(nu: f64, t: f64) -> Complex64 {
    Complex64::cis(TAU * nu * t)
}

fn alt(weight: f64, d1: (Source, usize), d2: (Source, usize), bs_phase_count: u8) -> Alternative {
    Alternative {
        weight,
        detector1_source: d1.0,
        detector2_source: d2.0,
        bs_phase_count,
        phase_slots: [d1.1, d2.1],
    }
}

/// Term list of the coherence function for `pair`, in the order the terms
/// are usually written: same-source terms first, then the two cross terms.
pub fn enumerate_alternatives(pair: PairKind, p: &PathProbabilities) -> Vec<Alternative> {
    use Source::{A, B};

    let both_a = (p.p1a * p.p2a).sqrt();
    let both_b = (p.p1b * p.p2b).sqrt();
    let a1_b2 = (p.p1a * p.p2b).sqrt();
    let b1_a2 = (p.p1b * p.p2a).sqrt();

    // Two orderings of a thermal pair with slots (s, s'): the photon with
    // phase φ reaches D1 transmitted in the first ordering and D2 reflected
    // in the second.
    let thermal_pair = |w: f64, src: Source, s: usize, s_prime: usize| {
        [
            alt(w * FRAC_1_SQRT_2, (src, s), (src, s_prime), 1),
            alt(w * FRAC_1_SQRT_2, (src, s_prime), (src, s), 1),
        ]
    };
    // a transmitted to D1 and b transmitted to D2, or both reflected.
    let cross = |a: usize, b: usize| [alt(a1_b2, (A, a), (B, b), 0), alt(b1_a2, (B, b), (A, a), 2)];

    let mut terms = Vec::with_capacity(6);
    match pair {
        PairKind::LT => {
            terms.extend(thermal_pair(both_a, A, 0, 1));
            terms.push(alt(both_b, (B, 3), (B, 3), 1));
            terms.extend(cross(2, 3));
        }
        PairKind::LL => {
            terms.push(alt(both_a, (A, 0), (A, 0), 1));
            terms.push(alt(both_b, (B, 1), (B, 1), 1));
            terms.extend(cross(0, 1));
        }
        PairKind::TT => {
            terms.extend(thermal_pair(both_a, A, 0, 1));
            terms.extend(thermal_pair(both_b, B, 2, 3));
            terms.extend(cross(4, 5));
        }
        PairKind::SS => {
            terms.extend(cross(0, 1));
        }
        PairKind::SL => {
            terms.push(alt(both_b, (B, 1), (B, 1), 1));
            terms.extend(cross(0, 1));
        }
        PairKind::ST => {
            terms.extend(thermal_pair(both_b, B, 0, 1));
            terms.extend(cross(3, 2));
        }
    }
    terms
}
