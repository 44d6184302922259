//! Seeded randomized campaigns over the geometry and configuration-space
//! routines. Each case draws from its own ChaCha stream, so results do not
//! depend on thread scheduling and reports are byte-identical across runs.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::configspace::{
    certify_homotopy, lift_config, project_config, random_cone, sample_causal_config, CertReport,
};
use crate::minkowski::{build_witness, causally_disjoint, enclosing_cone, mdot, DoubleCone, WitnessOptions};
use crate::rational::{fmt_q, q, Q};

fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyCase {
    pub case: u64,
    pub dim: usize,
    pub m: usize,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CertReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyCampaign {
    pub seed: u64,
    pub cases: u64,
    pub certified: u64,
    pub records: Vec<HomotopyCase>,
}

impl HomotopyCampaign {
    pub fn all_certified(&self) -> bool {
        self.certified == self.cases
    }
}

fn homotopy_case(case: u64, cone: &DoubleCone, m: usize, rng: &mut ChaCha8Rng, audit: bool) -> HomotopyCase {
    let dim = cone.space_dim() + 1;
    match sample_causal_config(cone, m, rng.gen()) {
        Ok(c) => {
            let r = certify_homotopy(&c);
            HomotopyCase { case, dim, m, certified: r.certified, report: audit.then_some(r), error: None }
        }
        Err(e) => HomotopyCase { case, dim, m, certified: false, report: None, error: Some(e.to_string()) },
    }
}

/// Random cones in dimensions 2 to 4 with `m` drawn from 2 to 5.
pub fn homotopy_campaign(cases: u64, seed: u64, audit: bool) -> HomotopyCampaign {
    let records: Vec<HomotopyCase> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let space = rng.gen_range(1..=3);
            let m = rng.gen_range(2..=5);
            let cone = random_cone(&mut rng, space);
            homotopy_case(i, &cone, m, &mut rng, audit)
        })
        .collect();
    finish_homotopy(seed, records)
}

/// Fixed cone and configuration size.
pub fn homotopy_campaign_in(cone: &DoubleCone, m: usize, cases: u64, seed: u64, audit: bool) -> HomotopyCampaign {
    let records: Vec<HomotopyCase> =
        (0..cases).into_par_iter().map(|i| homotopy_case(i, cone, m, &mut case_rng(seed, i), audit)).collect();
    finish_homotopy(seed, records)
}

fn finish_homotopy(seed: u64, records: Vec<HomotopyCase>) -> HomotopyCampaign {
    let certified = records.iter().filter(|r| r.certified).count() as u64;
    HomotopyCampaign { seed, cases: records.len() as u64, certified, records }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCase {
    pub case: u64,
    pub dim: usize,
    pub m: usize,
    pub round_trip: bool,
    pub on_cauchy_slice: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCampaign {
    pub seed: u64,
    pub cases: u64,
    pub passed: u64,
    pub records: Vec<SectionCase>,
}

/// Samples spatial configurations on the shadow of random cones and checks
/// that lifting then projecting is the identity and that lifts sit on the
/// Cauchy slice.
pub fn section_campaign(cases: u64, seed: u64) -> SectionCampaign {
    let records: Vec<SectionCase> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let space = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=5);
            let cone = random_cone(&mut rng, space);
            let s =
                crate::configspace::sample_spatial_config(&cone, m, rng.gen()).expect("shadows are full-dimensional");
            let (round_trip, on_cauchy_slice) = match lift_config(&cone, &s) {
                Ok(c) => {
                    let centre = cone.center();
                    let axis = cone.axis();
                    let slice = c.points().iter().all(|p| mdot(&p.sub(&centre), &axis).is_zero());
                    (project_config(&c) == s, slice)
                }
                Err(_) => (false, false),
            };
            SectionCase { case: i, dim: space + 1, m, round_trip, on_cauchy_slice }
        })
        .collect();
    let passed = records.iter().filter(|r| r.round_trip && r.on_cauchy_slice).count() as u64;
    SectionCampaign { seed, cases, passed, records }
}

/// Causally disjoint pair of random cones, by rejection.
pub fn random_disjoint_pair(rng: &mut ChaCha8Rng, space: usize) -> (DoubleCone, DoubleCone) {
    loop {
        let a = random_cone(rng, space);
        let b = random_cone(rng, space);
        if causally_disjoint(&a, &b) {
            return (a, b);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCase {
    pub case: u64,
    pub dim: usize,
    pub samples: usize,
    pub inequality: bool,
    pub spacelike: bool,
    pub distinct: bool,
    /// Smallest observed interval, as an exact rational.
    pub min_interval: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCampaign {
    pub seed: u64,
    pub cases: u64,
    pub passed: u64,
    pub records: Vec<ProjectionCase>,
}

pub fn projection_campaign(cases: u64, samples: usize, seed: u64) -> ProjectionCampaign {
    let records: Vec<ProjectionCase> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let space = rng.gen_range(1..=3);
            let (u1, u2) = random_disjoint_pair(&mut rng, space);
            let (mut inequality, mut spacelike, mut distinct) = (true, true, true);
            let mut min: Option<Q> = None;
            for _ in 0..samples {
                let p1 = sample_causal_config(&u1, 1, rng.gen()).expect("one point always fits").points()[0].clone();
                let p2 = sample_causal_config(&u2, 1, rng.gen()).expect("one point always fits").points()[0].clone();
                let (s, e) = crate::configspace::projected_pair_gap(&p1, &p2);
                inequality &= s <= e;
                spacelike &= s.is_positive();
                distinct &= p1.x != p2.x;
                if min.as_ref().map(|m| &s < m).unwrap_or(true) {
                    min = Some(s);
                }
            }
            ProjectionCase {
                case: i,
                dim: space + 1,
                samples,
                inequality,
                spacelike,
                distinct,
                min_interval: min.map(|m| fmt_q(&m)).unwrap_or_default(),
            }
        })
        .collect();
    let passed = records.iter().filter(|r| r.inequality && r.spacelike && r.distinct).count() as u64;
    ProjectionCampaign { seed, cases, passed, records }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCase {
    pub case: u64,
    pub dim: usize,
    pub verified: bool,
    pub rounds: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCampaign {
    pub seed: u64,
    pub cases: u64,
    pub verified: u64,
    pub records: Vec<WitnessCase>,
}

/// Orthogonal cospan `U1, U2` inside an enclosing cone whose slack ranges from
/// none to generous.
pub fn random_cospan(rng: &mut ChaCha8Rng, space: usize) -> (DoubleCone, DoubleCone, DoubleCone) {
    let (u1, u2) = random_disjoint_pair(rng, space);
    let mid: Vec<Q> = u1.center().x.iter().zip(&u2.center().x).map(|(a, b)| (a + b) * q(1, 2)).collect();
    let jitter: Vec<Q> = mid.iter().map(|m| m + q(rng.gen_range(-4..=4), 8)).collect();
    let margin = [Q::zero(), q(1, 64), q(1, 4), q(1, 1), q(3, 1)][rng.gen_range(0..5)].clone();
    let ut = enclosing_cone(&[u1.pminus(), u1.pplus(), u2.pminus(), u2.pplus()], &jitter, &margin);
    (u1, u2, ut)
}

pub fn witness_campaign(cases: u64, seed: u64, opts: &WitnessOptions) -> WitnessCampaign {
    let records: Vec<WitnessCase> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let space = rng.gen_range(1..=3);
            let (u1, u2, ut) = random_cospan(&mut rng, space);
            match build_witness(&u1, &u2, &ut, opts) {
                Ok(r) => WitnessCase { case: i, dim: space + 1, verified: r.verified, rounds: r.rounds, error: None },
                Err(e) => {
                    WitnessCase { case: i, dim: space + 1, verified: false, rounds: 0, error: Some(e.to_string()) }
                }
            }
        })
        .collect();
    let verified = records.iter().filter(|r| r.verified).count() as u64;
    WitnessCampaign { seed, cases, verified, records }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn campaigns_are_deterministic() {
        let a = serde_json::to_string(&homotopy_campaign(20, 3, true)).unwrap();
        let b = serde_json::to_string(&homotopy_campaign(20, 3, true)).unwrap();
        assert_eq!(a, b);
        let a = serde_json::to_string(&witness_campaign(10, 3, &WitnessOptions::default())).unwrap();
        let b = serde_json::to_string(&witness_campaign(10, 3, &WitnessOptions::default())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_campaigns_pass() {
        assert!(homotopy_campaign(30, 1, false).all_certified());
        let s = section_campaign(30, 1);
        assert_eq!(s.passed, s.cases);
        let p = projection_campaign(10, 5, 1);
        assert_eq!(p.passed, p.cases);
        let w = witness_campaign(30, 1, &WitnessOptions::default());
        assert_eq!(w.verified, w.cases, "{:?}", w.records.iter().filter(|r| !r.verified).collect::<Vec<_>>());
    }

    #[test]
    fn zero_margin_outer_cone() {
        let mut rng = case_rng(11, 0);
        for _ in 0..10 {
            let (u1, u2) = random_disjoint_pair(&mut rng, 1);
            let c: Vec<Q> = u1.center().x.iter().zip(&u2.center().x).map(|(a, b)| (a + b) * q(1, 2)).collect();
            let ut = enclosing_cone(&[u1.pminus(), u1.pplus(), u2.pminus(), u2.pplus()], &c, &Q::zero());
            assert!(build_witness(&u1, &u2, &ut, &WitnessOptions::default()).is_ok());
        }
    }
}
