//! Configurations of causally disjoint points in a double cone, their
//! spatial projections, the Cauchy-slice section, and exact certificates that
//! the straight-line homotopy between them never leaves the configuration
//! space.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::minkowski::{
    cauchy_lift, certify_segment_spacelike, euclid2, homotopy_point, project_cone, sq_interval, DoubleCone,
    GeometryError, MPoint, SegmentCertificate, SpatialConvex,
};
use crate::rational::{q, Q};

pub const DEFAULT_GRID: u64 = 64;
pub const MAX_GRID: u64 = 1024;
/// Rejection attempts per grid resolution before refining.
pub const ATTEMPTS_PER_GRID: u64 = 4096;

/// `m` pairwise causally disjoint points of a double cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CausalConfig {
    cone: DoubleCone,
    points: Vec<MPoint>,
}

impl CausalConfig {
    pub fn new(cone: DoubleCone, points: Vec<MPoint>) -> Result<Self, GeometryError> {
        for p in &points {
            if p.space_dim() != cone.space_dim() {
                return Err(GeometryError::DimensionMismatch { expected: cone.space_dim(), got: p.space_dim() });
            }
            if !cone.contains(p) {
                return Err(GeometryError::NotInCone);
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if !sq_interval(&points[i], &points[j])?.is_positive() {
                    return Err(GeometryError::Precondition(format!("points {i} and {j} are causally related")));
                }
            }
        }
        Ok(CausalConfig { cone, points })
    }

    pub fn cone(&self) -> &DoubleCone {
        &self.cone
    }

    pub fn points(&self) -> &[MPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `m` distinct points of a convex spatial region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpatialConfig {
    shadow: SpatialConvex,
    #[serde(serialize_with = "ser_points")]
    points: Vec<Vec<Q>>,
}

fn ser_points<S: serde::Serializer>(pts: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        let v: Vec<String> = p.iter().map(crate::rational::fmt_q).collect();
        seq.serialize_element(&v)?;
    }
    seq.end()
}

impl SpatialConfig {
    pub fn new(shadow: SpatialConvex, points: Vec<Vec<Q>>) -> Result<Self, GeometryError> {
        for p in &points {
            if !shadow.contains(p) {
                return Err(GeometryError::NotInShadow);
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(GeometryError::Precondition(format!("points {i} and {j} coincide")));
                }
            }
        }
        Ok(SpatialConfig { shadow, points })
    }

    pub fn shadow(&self) -> &SpatialConvex {
        &self.shadow
    }

    pub fn points(&self) -> &[Vec<Q>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn grid_value(rng: &mut ChaCha8Rng, lo: &Q, width: &Q, den: u64) -> Q {
    // open grid: k in 1..den keeps samples off the bounding box
    let k = rng.gen_range(1..den);
    lo + width * q(k as i64, den as i64)
}

/// Rejection sampling on a rational grid over the bounding box of `u`.
/// The grid starts at denominator 64 and doubles up to 1024 whenever the
/// attempt budget for a resolution runs out.
pub fn sample_causal_config(u: &DoubleCone, m: usize, seed: u64) -> Result<CausalConfig, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shadow = project_cone(u);
    let centre = shadow.marked_point();
    let width = shadow.length.clone();
    let half = &width * q(1, 2);
    let mut den = DEFAULT_GRID;
    let mut points: Vec<MPoint> = Vec::with_capacity(m);
    let mut attempts = 0u64;
    let mut total = 0u64;
    while points.len() < m {
        if attempts == ATTEMPTS_PER_GRID {
            if den >= MAX_GRID {
                return Err(GeometryError::SamplingExhausted { denominator: den, attempts: total });
            }
            den *= 2;
            attempts = 0;
        }
        attempts += 1;
        total += 1;
        let t = grid_value(&mut rng, &u.pminus().t, &width, den);
        let x: Vec<Q> = centre.iter().map(|c| grid_value(&mut rng, &(c - &half), &width, den)).collect();
        let p = MPoint::new(t, x);
        if !u.contains(&p) {
            continue;
        }
        if points.iter().all(|o| sq_interval(o, &p).map(|s| s.is_positive()).unwrap_or(false)) {
            points.push(p);
        }
    }
    CausalConfig::new(u.clone(), points)
}

/// Distinct grid points of the shadow of `u`, by rejection sampling.
pub fn sample_spatial_config(u: &DoubleCone, m: usize, seed: u64) -> Result<SpatialConfig, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shadow = project_cone(u);
    let centre = shadow.marked_point();
    let width = shadow.length.clone();
    let half = &width * q(1, 2);
    let mut den = DEFAULT_GRID;
    let mut points: Vec<Vec<Q>> = Vec::with_capacity(m);
    let (mut attempts, mut total) = (0u64, 0u64);
    while points.len() < m {
        if attempts == ATTEMPTS_PER_GRID {
            if den >= MAX_GRID {
                return Err(GeometryError::SamplingExhausted { denominator: den, attempts: total });
            }
            den *= 2;
            attempts = 0;
        }
        attempts += 1;
        total += 1;
        let x: Vec<Q> = centre.iter().map(|c| grid_value(&mut rng, &(c - &half), &width, den)).collect();
        if shadow.contains(&x) && !points.contains(&x) {
            points.push(x);
        }
    }
    SpatialConfig::new(SpatialConvex::ConeShadow(shadow), points)
}

/// Drops the time coordinate of each point.
pub fn project_config(c: &CausalConfig) -> SpatialConfig {
    let points: Vec<Vec<Q>> = c.points.iter().map(|p| p.x.clone()).collect();
    SpatialConfig::new(SpatialConvex::ConeShadow(project_cone(&c.cone)), points)
        .expect("causally disjoint points project to distinct shadow points")
}

/// Pointwise Cauchy lift into `u`.
pub fn lift_config(u: &DoubleCone, s: &SpatialConfig) -> Result<CausalConfig, GeometryError> {
    match s.shadow() {
        SpatialConvex::ConeShadow(sh) if *sh == project_cone(u) => {}
        _ => return Err(GeometryError::Precondition("configuration does not live on the shadow of the cone".into())),
    }
    let pts = s.points.iter().map(|x| cauchy_lift(u, x)).collect::<Result<Vec<_>, _>>()?;
    CausalConfig::new(u.clone(), pts)
}

/// Applies the homotopy at parameter `s` to every point.
pub fn homotopy_config(c: &CausalConfig, s: &Q) -> Result<Vec<MPoint>, GeometryError> {
    c.points.iter().map(|p| homotopy_point(&c.cone, p, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCertificate {
    pub i: usize,
    pub j: usize,
    pub certificate: SegmentCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub certified: bool,
    pub pairs: Vec<PairCertificate>,
}

/// For every pair, certifies that the difference vector along the homotopy
/// stays spacelike for all `s` in `[0, 1]`.
pub fn certify_homotopy(c: &CausalConfig) -> CertReport {
    let lifted: Vec<MPoint> = c
        .points
        .iter()
        .map(|p| homotopy_point(&c.cone, p, &Q::zero()).expect("config points lie in the cone"))
        .collect();
    let mut pairs = Vec::new();
    let mut certified = true;
    for i in 0..c.points.len() {
        for j in i + 1..c.points.len() {
            let v = lifted[i].sub(&lifted[j]);
            let w = c.points[i].sub(&c.points[j]);
            match certify_segment_spacelike(&v, &w) {
                Ok(cert) => {
                    certified &= cert.certified;
                    pairs.push(PairCertificate { i, j, certificate: cert });
                }
                Err(_) => certified = false,
            }
        }
    }
    CertReport { certified, pairs }
}

/// Euclidean squared distance of the projections against the interval.
pub fn projected_pair_gap(p1: &MPoint, p2: &MPoint) -> (Q, Q) {
    (sq_interval(p1, p2).expect("matching dimensions"), euclid2(&p1.x, &p2.x))
}

/// Random double cone with small rational coordinates, centre in
/// `[-4, 4]^n`, half-height in `[1/2, 2]` and a tilt below the light cone.
pub fn random_cone(rng: &mut ChaCha8Rng, space: usize) -> DoubleCone {
    let coord = |rng: &mut ChaCha8Rng| q(rng.gen_range(-16..=16), 4);
    let centre = MPoint::new(coord(rng), (0..space).map(|_| coord(rng)).collect());
    let h = q(rng.gen_range(2..=8), 4);
    // tilt with L1 norm below 3h/4, so strictly timelike
    let budget = &h * q(3, 4);
    let mut tilt = Vec::with_capacity(space);
    for _ in 0..space {
        tilt.push(q(rng.gen_range(-8..=8), 8 * space as i64) * &budget);
    }
    let axis = MPoint::new(h.clone(), tilt);
    DoubleCone::new(centre.sub(&axis), centre.add(&axis)).expect("tilt below the light cone")
}
