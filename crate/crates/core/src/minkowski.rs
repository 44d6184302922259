//! Exact causal geometry of double cones in Minkowski space with signature
//! `(-, +, .., +)`.
//!
//! Every predicate is decided in rational arithmetic. Square roots are never
//! taken on the decision path: norms are compared after squaring with the
//! required sign conditions.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::orthogonal::OrthCategory;
use crate::rational::{deserialize_q, deserialize_qs, fmt_q, l1_norm, q, serialize_q, serialize_qs, sqrt_bracket, Q};
use crate::report::Check;

/// Default number of refinement rounds for [`build_witness`].
pub const DEFAULT_RETRY_BUDGET: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected} spatial coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("need at least one spatial dimension")]
    NoSpace,
    #[error("p_plus is not in the chronological future of p_minus")]
    NotChronological,
    #[error("point is not in the projected shadow of the cone")]
    NotInShadow,
    #[error("point is not inside the cone")]
    NotInCone,
    #[error("parameter {0} outside [0, 1]")]
    ParameterOutOfRange(String),
    #[error("{0} is not spacelike")]
    NotSpacelike(String),
    #[error("segment does not meet the light cone")]
    NoHit,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no verified witness within {rounds} refinement rounds: {failures:?}")]
    ExhaustedRetries { rounds: u32, failures: Vec<String> },
    #[error("sampling exhausted at grid denominator {denominator} after {attempts} attempts")]
    SamplingExhausted { denominator: u64, attempts: u64 },
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// Point (or vector) `(t; x)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MPoint {
    #[serde(serialize_with = "serialize_q", deserialize_with = "deserialize_q")]
    pub t: Q,
    #[serde(serialize_with = "serialize_qs", deserialize_with = "deserialize_qs")]
    pub x: Vec<Q>,
}

impl fmt::Debug for MPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.x.iter().map(fmt_q).collect();
        write!(f, "({};{})", fmt_q(&self.t), xs.join(","))
    }
}

impl MPoint {
    pub fn new(t: Q, x: Vec<Q>) -> Self {
        MPoint { t, x }
    }

    /// Integer-ratio shorthand `(t_num/t_den; x...)` used by fixtures.
    pub fn from_ratios(t: (i64, i64), x: &[(i64, i64)]) -> Self {
        MPoint { t: q(t.0, t.1), x: x.iter().map(|&(a, b)| q(a, b)).collect() }
    }

    pub fn ints(t: i64, x: &[i64]) -> Self {
        MPoint { t: q(t, 1), x: x.iter().map(|&a| q(a, 1)).collect() }
    }

    pub fn origin(space: usize) -> Self {
        MPoint { t: Q::zero(), x: vec![Q::zero(); space] }
    }

    pub fn space_dim(&self) -> usize {
        self.x.len()
    }

    pub fn add(&self, o: &MPoint) -> MPoint {
        MPoint { t: &self.t + &o.t, x: self.x.iter().zip(&o.x).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &MPoint) -> MPoint {
        MPoint { t: &self.t - &o.t, x: self.x.iter().zip(&o.x).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: &Q) -> MPoint {
        MPoint { t: &self.t * k, x: self.x.iter().map(|a| a * k).collect() }
    }

    pub fn midpoint(&self, o: &MPoint) -> MPoint {
        self.add(o).scale(&q(1, 2))
    }

    /// `self + s (o - self)`
    pub fn lerp(&self, o: &MPoint, s: &Q) -> MPoint {
        self.add(&o.sub(self).scale(s))
    }

    pub fn spatial(&self) -> &[Q] {
        &self.x
    }
}

fn check_dims(a: &MPoint, b: &MPoint) -> Result<(), GeometryError> {
    if a.x.len() != b.x.len() {
        return Err(GeometryError::DimensionMismatch { expected: a.x.len(), got: b.x.len() });
    }
    if a.x.is_empty() {
        return Err(GeometryError::NoSpace);
    }
    Ok(())
}

/// Minkowski inner product.
pub fn mdot(a: &MPoint, b: &MPoint) -> Q {
    let mut s = -(&a.t * &b.t);
    for (x, y) in a.x.iter().zip(&b.x) {
        s += x * y;
    }
    s
}

pub fn mnorm2(a: &MPoint) -> Q {
    mdot(a, a)
}

pub fn euclid_dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn euclid2(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| {
        let d = x - y;
        acc + &d * &d
    })
}

fn sq(p: &MPoint, q: &MPoint) -> Q {
    mnorm2(&q.sub(p))
}

/// `-(dt)^2 + |dx|^2`.
pub fn sq_interval(p: &MPoint, q: &MPoint) -> Result<Q, GeometryError> {
    check_dims(p, q)?;
    Ok(sq(p, q))
}

/// `q` in the chronological future of `p`.
pub fn chron_after(q: &MPoint, p: &MPoint) -> bool {
    q.t > p.t && sq(p, q).is_negative()
}

/// `q` in the causal future `J+(p)`, including `q = p`.
pub fn causal_after(q: &MPoint, p: &MPoint) -> bool {
    q.t >= p.t && !sq(p, q).is_positive()
}

/// Double cone `I-(p_plus) ∩ I+(p_minus)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DoubleCone {
    pminus: MPoint,
    pplus: MPoint,
}

impl fmt::Debug for DoubleCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[{:?} -> {:?}]", self.pminus, self.pplus)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeJson {
    pminus: MPoint,
    pplus: MPoint,
}

impl<'de> Deserialize<'de> for DoubleCone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ConeJson::deserialize(d)?;
        DoubleCone::new(raw.pminus, raw.pplus).map_err(serde::de::Error::custom)
    }
}

impl DoubleCone {
    pub fn new(pminus: MPoint, pplus: MPoint) -> Result<Self, GeometryError> {
        check_dims(&pminus, &pplus)?;
        if !chron_after(&pplus, &pminus) {
            return Err(GeometryError::NotChronological);
        }
        Ok(DoubleCone { pminus, pplus })
    }

    /// Upright cone of half-height `h` centred at `c`.
    pub fn upright(c: &MPoint, h: &Q) -> Result<Self, GeometryError> {
        let dt = MPoint { t: h.clone(), x: vec![Q::zero(); c.x.len()] };
        DoubleCone::new(c.sub(&dt), c.add(&dt))
    }

    pub fn pminus(&self) -> &MPoint {
        &self.pminus
    }

    pub fn pplus(&self) -> &MPoint {
        &self.pplus
    }

    pub fn space_dim(&self) -> usize {
        self.pminus.x.len()
    }

    pub fn center(&self) -> MPoint {
        self.pminus.midpoint(&self.pplus)
    }

    /// `p_plus - p_minus`
    pub fn axis(&self) -> MPoint {
        self.pplus.sub(&self.pminus)
    }

    pub fn contains(&self, p: &MPoint) -> bool {
        chron_after(&self.pplus, p) && chron_after(p, &self.pminus)
    }

    /// Membership in the closure `J-(p_plus) ∩ J+(p_minus)`.
    pub fn closure_contains(&self, p: &MPoint) -> bool {
        causal_after(&self.pplus, p) && causal_after(p, &self.pminus)
    }
}

pub fn cone_contains(u: &DoubleCone, p: &MPoint) -> Result<bool, GeometryError> {
    check_dims(u.pminus(), p)?;
    Ok(u.contains(p))
}

/// `U ⊆ V` iff `p_U+ ∈ J-(p_V+)` and `p_U- ∈ J+(p_V-)`.
pub fn cone_included(u: &DoubleCone, v: &DoubleCone) -> bool {
    u.space_dim() == v.space_dim() && causal_after(&v.pplus, &u.pplus) && causal_after(&u.pminus, &v.pminus)
}

/// No causal curve joins `U1` and `U2`: `p2+ ∉ I+(p1-)` and `p2- ∉ I-(p1+)`.
pub fn causally_disjoint(u1: &DoubleCone, u2: &DoubleCone) -> bool {
    u1.space_dim() == u2.space_dim() && !chron_after(&u2.pplus, &u1.pminus) && !chron_after(&u1.pplus, &u2.pminus)
}

/// Spatial projection of a double cone: the open ellipsoid of points whose
/// distances to the foci sum to less than `length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeShadow {
    #[serde(serialize_with = "serialize_qs", deserialize_with = "deserialize_qs")]
    pub focus_minus: Vec<Q>,
    #[serde(serialize_with = "serialize_qs", deserialize_with = "deserialize_qs")]
    pub focus_plus: Vec<Q>,
    #[serde(serialize_with = "serialize_q", deserialize_with = "deserialize_q")]
    pub length: Q,
}

/// `sqrt(a) + sqrt(b) < c` decided by staged squaring.
fn sum_of_roots_less(a: &Q, b: &Q, c: &Q) -> bool {
    if !c.is_positive() {
        return false;
    }
    let r = c * c - a - b;
    if !r.is_positive() {
        return false;
    }
    Q::from_integer(4.into()) * a * b < &r * &r
}

impl ConeShadow {
    pub fn contains(&self, x: &[Q]) -> bool {
        sum_of_roots_less(&euclid2(x, &self.focus_minus), &euclid2(x, &self.focus_plus), &self.length)
    }

    /// Midpoint of the foci, the projection of the cone centre.
    pub fn marked_point(&self) -> Vec<Q> {
        self.focus_minus.iter().zip(&self.focus_plus).map(|(a, b)| (a + b) * q(1, 2)).collect()
    }

    /// Endpoints of the shadow in one spatial dimension.
    pub fn interval(&self) -> Option<(Q, Q)> {
        if self.focus_minus.len() != 1 {
            return None;
        }
        let m = &self.marked_point()[0];
        let h = &self.length * q(1, 2);
        Some((m - &h, m + &h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ball {
    #[serde(serialize_with = "serialize_qs", deserialize_with = "deserialize_qs")]
    pub center: Vec<Q>,
    #[serde(serialize_with = "serialize_q", deserialize_with = "deserialize_q")]
    pub radius: Q,
}

/// Open convex spatial region with a marked interior point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpatialConvex {
    Ball(Ball),
    ConeShadow(ConeShadow),
}

impl SpatialConvex {
    pub fn contains(&self, x: &[Q]) -> bool {
        match self {
            SpatialConvex::Ball(b) => euclid2(x, &b.center) < &b.radius * &b.radius,
            SpatialConvex::ConeShadow(s) => s.contains(x),
        }
    }

    pub fn marked_point(&self) -> Vec<Q> {
        match self {
            SpatialConvex::Ball(b) => b.center.clone(),
            SpatialConvex::ConeShadow(s) => s.marked_point(),
        }
    }
}

pub fn project_cone(u: &DoubleCone) -> ConeShadow {
    ConeShadow { focus_minus: u.pminus.x.clone(), focus_plus: u.pplus.x.clone(), length: &u.pplus.t - &u.pminus.t }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionInequality {
    #[serde(serialize_with = "serialize_q")]
    pub sq_interval: Q,
    #[serde(serialize_with = "serialize_q")]
    pub euclid_sq: Q,
    pub holds: bool,
}

/// `sq_interval(p, q) <= |pi(p) - pi(q)|^2`.
pub fn check_projection_inequality(p: &MPoint, q: &MPoint) -> Result<ProjectionInequality, GeometryError> {
    let s = sq_interval(p, q)?;
    let e = euclid2(&p.x, &q.x);
    Ok(ProjectionInequality { holds: s <= e, sq_interval: s, euclid_sq: e })
}

/// Which half of the light cone of the tip is intersected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeBranch {
    /// Boundary of `J-(tip)`: the hit lies to the past of the tip.
    Past,
    /// Boundary of `J+(tip)`.
    Future,
}

/// Intersection of a segment `a + s (b - a)` with a light cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LightconeHit {
    pub exact: bool,
    /// Bracket of the exact parameter; equal ends when `exact`.
    #[serde(serialize_with = "serialize_q")]
    pub lower: Q,
    #[serde(serialize_with = "serialize_q")]
    pub upper: Q,
    /// Sign of `sq_interval(r(s), tip)` at the two ends of the bracket.
    pub sign_lower: i8,
    pub sign_upper: i8,
    /// Rational point on the segment: the exact hit, or the bracket end on
    /// the timelike side of the cone.
    pub point: MPoint,
    #[serde(serialize_with = "serialize_q")]
    pub param: Q,
}

fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// First parameter in `[0, 1]` at which the segment meets the chosen half of
/// the light cone of `tip`. Irrational roots are bracketed to `2^-bits`.
pub fn segment_lightcone_hit(
    a: &MPoint,
    b: &MPoint,
    tip: &MPoint,
    branch: ConeBranch,
    bits: u32,
) -> Result<LightconeHit, GeometryError> {
    check_dims(a, b)?;
    check_dims(a, tip)?;
    let d = b.sub(a);
    let e = a.sub(tip);
    // Q(s) = A s^2 + 2 B s + C
    let qa = mnorm2(&d);
    let qb = mdot(&d, &e);
    let qc = mnorm2(&e);
    let eval = |s: &Q| &qa * s * s + Q::from_integer(2.into()) * &qb * s + &qc;
    let on_branch = |s: &Q| {
        let r = a.lerp(b, s);
        match branch {
            ConeBranch::Past => r.t <= tip.t,
            ConeBranch::Future => r.t >= tip.t,
        }
    };
    let unit = |s: &Q| !s.is_negative() && s <= &Q::one();
    let mut candidates: Vec<(Q, Q, bool)> = Vec::new();
    if qa.is_zero() {
        if qb.is_zero() {
            return Err(GeometryError::NoHit);
        }
        let s = -&qc / (Q::from_integer(2.into()) * &qb);
        candidates.push((s.clone(), s, true));
    } else {
        let disc = &qb * &qb - &qa * &qc;
        if disc.is_negative() {
            return Err(GeometryError::NoHit);
        }
        let (lo, hi) = sqrt_bracket(&disc, bits);
        let exact = lo == hi;
        for sgn in [-1i64, 1] {
            let k = Q::from_integer(sgn.into());
            let r1 = (-&qb + &k * &lo) / &qa;
            let r2 = (-&qb + &k * &hi) / &qa;
            let (l, h) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            candidates.push((l, h, exact));
        }
    }
    candidates.sort_by(|x, y| x.0.cmp(&y.0));
    for (lo, hi, exact) in candidates {
        if exact {
            if unit(&lo) && on_branch(&lo) {
                let point = a.lerp(b, &lo);
                return Ok(LightconeHit {
                    exact: true,
                    sign_lower: 0,
                    sign_upper: 0,
                    point,
                    param: lo.clone(),
                    upper: lo.clone(),
                    lower: lo,
                });
            }
            continue;
        }
        let lo_c = if lo.is_negative() { Q::zero() } else { lo.clone() };
        let hi_c = if hi > Q::one() { Q::one() } else { hi.clone() };
        if lo_c > hi_c || hi.is_negative() || lo > Q::one() {
            continue;
        }
        let mid = (&lo_c + &hi_c) * q(1, 2);
        if !on_branch(&mid) {
            continue;
        }
        let (sl, su) = (sign(&eval(&lo_c)), sign(&eval(&hi_c)));
        if sl == su && sl != 0 {
            continue;
        }
        let param = if sl < 0 { lo_c.clone() } else { hi_c.clone() };
        return Ok(LightconeHit {
            exact: false,
            sign_lower: sl,
            sign_upper: su,
            point: a.lerp(b, &param),
            param,
            lower: lo_c,
            upper: hi_c,
        });
    }
    Err(GeometryError::NoHit)
}

/// `ι(q)`: the point over `q` on the hyperplane through the centre of `U`
/// that is Minkowski-orthogonal to its axis.
pub fn cauchy_lift(u: &DoubleCone, x: &[Q]) -> Result<MPoint, GeometryError> {
    if x.len() != u.space_dim() {
        return Err(GeometryError::DimensionMismatch { expected: u.space_dim(), got: x.len() });
    }
    if !project_cone(u).contains(x) {
        return Err(GeometryError::NotInShadow);
    }
    let p = cauchy_lift_unchecked(u, x);
    assert!(mdot(&p.sub(&u.center()), &u.axis()).is_zero() && u.contains(&p), "lift left the Cauchy slice");
    Ok(p)
}

/// Finite full subcategory of double cones under inclusion, with causal
/// disjointness as orthogonality.
pub fn dcone_category(cones: &[(String, DoubleCone)]) -> OrthCategory {
    let names = cones.iter().map(|(n, _)| n.clone()).collect();
    OrthCategory::thin(
        names,
        |a, b| cone_included(&cones[a].1, &cones[b].1),
        |a, b| causally_disjoint(&cones[a].1, &cones[b].1),
    )
}

pub(crate) fn cauchy_lift_unchecked(u: &DoubleCone, x: &[Q]) -> MPoint {
    let c = u.center();
    let d = u.axis();
    let shift: Vec<Q> = x.iter().zip(&c.x).map(|(a, b)| a - b).collect();
    let t = &c.t + euclid_dot(&shift, &d.x) / &d.t;
    MPoint { t, x: x.to_vec() }
}

/// `h(s, p) = ιπ(p) + s (p - ιπ(p))`.
pub fn homotopy_point(u: &DoubleCone, p: &MPoint, s: &Q) -> Result<MPoint, GeometryError> {
    check_dims(u.pminus(), p)?;
    if !u.contains(p) {
        return Err(GeometryError::NotInCone);
    }
    if s.is_negative() || s > &Q::one() {
        return Err(GeometryError::ParameterOutOfRange(fmt_q(s)));
    }
    let base = cauchy_lift_unchecked(u, &p.x);
    Ok(base.lerp(p, s))
}

/// Exact positivity certificate for `q(s) = |(1-s) v + s w|^2` on `[0, 1]`,
/// written `q(s) = a2 s^2 + a1 s + a0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentCertificate {
    #[serde(serialize_with = "serialize_q")]
    pub a2: Q,
    #[serde(serialize_with = "serialize_q")]
    pub a1: Q,
    #[serde(serialize_with = "serialize_q")]
    pub a0: Q,
    #[serde(serialize_with = "serialize_q")]
    pub q0: Q,
    #[serde(serialize_with = "serialize_q")]
    pub q1: Q,
    #[serde(serialize_with = "ser_opt_q")]
    pub vertex: Option<Q>,
    pub vertex_in_unit: bool,
    #[serde(serialize_with = "ser_opt_q")]
    pub vertex_value: Option<Q>,
    pub certified: bool,
}

fn ser_opt_q<S: serde::Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&fmt_q(v)),
        None => s.serialize_none(),
    }
}

/// Certifies that the straight path from `v` to `w` stays spacelike.
pub fn certify_segment_spacelike(v: &MPoint, w: &MPoint) -> Result<SegmentCertificate, GeometryError> {
    check_dims(v, w)?;
    let a = mnorm2(v);
    let b = mdot(v, w);
    let c = mnorm2(w);
    if !a.is_positive() {
        return Err(GeometryError::NotSpacelike("start vector".into()));
    }
    if !c.is_positive() {
        return Err(GeometryError::NotSpacelike("end vector".into()));
    }
    let two = Q::from_integer(2.into());
    let a2 = &a - &two * &b + &c;
    let a1 = &two * (&b - &a);
    let a0 = a.clone();
    let eval = |s: &Q| &a2 * s * s + &a1 * s + &a0;
    let (vertex, vertex_value) = if a2.is_zero() {
        (None, None)
    } else {
        let sv = -&a1 / (&two * &a2);
        let val = eval(&sv);
        (Some(sv), Some(val))
    };
    let vertex_in_unit = vertex.as_ref().map(|s| !s.is_negative() && s <= &Q::one()).unwrap_or(false);
    let certified = a.is_positive()
        && c.is_positive()
        && (!vertex_in_unit || vertex_value.as_ref().map(|x| x.is_positive()).unwrap_or(true));
    Ok(SegmentCertificate { a2, a1, a0, q0: a, q1: c, vertex, vertex_in_unit, vertex_value, certified })
}

/// Double cone whose closure contains all `points`, with spatial centre
/// `centre` and a time margin. Uses the L1 norm as an exact upper bound on
/// Euclidean distance.
pub fn enclosing_cone(points: &[&MPoint], centre: &[Q], margin: &Q) -> DoubleCone {
    let mut top: Option<Q> = None;
    let mut bottom: Option<Q> = None;
    for p in points {
        let d: Vec<Q> = p.x.iter().zip(centre).map(|(a, b)| a - b).collect();
        let r = l1_norm(&d);
        let up = &p.t + &r;
        let down = &p.t - &r;
        top = Some(match top {
            Some(t) if t >= up => t,
            _ => up,
        });
        bottom = Some(match bottom {
            Some(b) if b <= down => b,
            _ => down,
        });
    }
    let top = top.expect("at least one point") + margin;
    let bottom = bottom.expect("at least one point") - margin;
    DoubleCone::new(MPoint::new(bottom, centre.to_vec()), MPoint::new(top, centre.to_vec()))
        .expect("positive margin gives a valid cone")
}

/// Witness for the extension property of an orthogonal cospan of double
/// cones `U1, U2 ⊆ Ũ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDiagram {
    pub u1: DoubleCone,
    pub u2: DoubleCone,
    pub utilde: DoubleCone,
    pub v1: DoubleCone,
    pub v2: DoubleCone,
    pub w: DoubleCone,
    pub u1_complement: DoubleCone,
    pub u2_complement: DoubleCone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub verified: bool,
    pub rounds: u32,
    pub diagram: WitnessDiagram,
    pub checks: Vec<Check>,
    /// Parameters of the exit points along the half-lines through
    /// `p1-, p1+, p2-, p2+`.
    #[serde(serialize_with = "serialize_qs")]
    pub exit_params: Vec<Q>,
    #[serde(serialize_with = "serialize_q")]
    pub overshoot: Q,
    pub construction: Construction,
}

/// How the half-lines through the tips of `U1, U2` are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Through the light-cone hits on the segment joining the centres.
    LightConeHits,
    /// Along shared rational null directions for opposite tips; keeps the
    /// extended cones causally disjoint in any dimension.
    AlignedNull,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOptions {
    pub retry_budget: u32,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { retry_budget: DEFAULT_RETRY_BUDGET }
    }
}

struct RoundParams {
    hit_bits: u32,
    dyadic: u32,
    /// Relative overshoot past the first dyadic exit parameter.
    overshoot: Q,
}

/// Overshoot schedule tried within each round, smallest first.
fn overshoots() -> Vec<Q> {
    let mut v = vec![Q::zero()];
    v.extend((-4..=4).map(|k| if k < 0 { q(1, 1 << -k) } else { q(1 << k, 1) }));
    v
}

fn round_params(r: u32, overshoot: Q) -> RoundParams {
    RoundParams { hit_bits: 12 + 6 * r, dyadic: 1 + 2 * r, overshoot }
}

/// Smallest `1 + m 2^-j` (m >= 1) at which `q + s k` leaves `cl(Ũ)`.
fn exit_param(start: &MPoint, k: &MPoint, ut: &DoubleCone, j: u32) -> Option<Q> {
    let step = crate::rational::two_pow_neg(j);
    let at = |m: u64| Q::one() + &step * Q::from_integer(m.into());
    let outside = |m: u64| !ut.closure_contains(&start.add(&k.scale(&at(m))));
    let mut hi = 1u64;
    while !outside(hi) {
        hi = hi.checked_mul(2)?;
        if hi > 1 << 50 {
            return None;
        }
    }
    let mut lo = hi / 2; // inside, or 0 meaning s = 1
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if outside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(at(hi))
}

/// Half-lines `q + s k` through the four tips (at `s = 1`), in the order
/// `p1-, p1+, p2-, p2+`.
fn tip_lines(
    u1: &DoubleCone,
    u2: &DoubleCone,
    kind: Construction,
    p: &RoundParams,
) -> Result<[(MPoint, MPoint); 4], String> {
    match kind {
        Construction::LightConeHits => {
            let mut out = Vec::with_capacity(4);
            for (own, other) in [(u1, u2), (u2, u1)] {
                for (tip, branch, name) in
                    [(own.pminus(), ConeBranch::Future, "past"), (own.pplus(), ConeBranch::Past, "future")]
                {
                    let hit = segment_lightcone_hit(&own.center(), &other.center(), tip, branch, p.hit_bits)
                        .map_err(|e| format!("{name} tip hit: {e}"))?;
                    out.push((hit.point.clone(), tip.sub(&hit.point)));
                }
            }
            Ok(out.try_into().expect("four tips"))
        }
        Construction::AlignedNull => {
            // p1- and p2+ share one null direction, p1+ and p2- another, so
            // the tip separations only grow along the extension
            let e = rational_unit_towards(&u2.pplus().sub(u1.pminus())).ok_or("no aligned direction")?;
            let f = rational_unit_towards(&u1.pplus().sub(u2.pminus())).ok_or("no aligned direction")?;
            let future = |dir: &[Q]| MPoint::new(Q::one(), dir.to_vec());
            let k2p = future(&e);
            let k1m = k2p.scale(&-Q::one());
            let k1p = future(&f);
            let k2m = k1p.scale(&-Q::one());
            let line = |tip: &MPoint, k: MPoint| (tip.sub(&k), k);
            Ok([line(u1.pminus(), k1m), line(u1.pplus(), k1p), line(u2.pminus(), k2m), line(u2.pplus(), k2p)])
        }
    }
}

/// Rational unit spatial vector `e` with `e . dx >= dt`, for a spacelike
/// `(dt; dx)`. Built by inverse stereographic projection of a dyadic
/// approximation, so `|e| = 1` holds exactly.
fn rational_unit_towards(d: &MPoint) -> Option<Vec<Q>> {
    use num_traits::ToPrimitive;
    let n = d.x.len();
    let fx: Vec<f64> = d.x.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let norm = fx.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    // stereographic chart with the pole opposite the dominant coordinate
    let m = (0..n).max_by(|&a, &b| fx[a].abs().total_cmp(&fx[b].abs()))?;
    let flip = fx[m] < 0.0;
    let u: Vec<f64> = fx.iter().enumerate().map(|(k, c)| if k == m && flip { -c / norm } else { c / norm }).collect();
    for bits in 4..=60 {
        let y: Vec<Q> = (0..n).filter(|&k| k != m).map(|k| dyadic_of(u[k] / (1.0 + u[m]), bits)).collect();
        let r2 = y.iter().fold(Q::zero(), |acc, c| acc + c * c);
        let den = Q::one() + &r2;
        let mut e = Vec::with_capacity(n);
        let mut yi = y.iter();
        for k in 0..n {
            if k == m {
                let c = (Q::one() - &r2) / &den;
                e.push(if flip { -c } else { c });
            } else {
                e.push(Q::from_integer(2.into()) * yi.next().expect("chart coordinate") / &den);
            }
        }
        if euclid_dot(&e, &d.x) >= d.t {
            return Some(e);
        }
    }
    None
}

/// Floating-point margin by which `m` lies inside `v` and outside
/// `J(cl Ũ)`; positive means both hold. Only guides the search, every
/// candidate is re-decided exactly.
fn complement_margin(m: &[f64], v: &[Vec<f64>; 2], ut: &[Vec<f64>; 2]) -> f64 {
    let dist = |a: &[f64], b: &[f64]| a[1..].iter().zip(&b[1..]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let sep = |p: &[f64], q: &[f64]| (q[0] - p[0]) - dist(p, q);
    let inside = sep(&v[0], m).min(sep(m, &v[1]));
    let below_top = dist(m, &ut[1]) - (ut[1][0] - m[0]);
    let above_bottom = dist(m, &ut[0]) - (m[0] - ut[0][0]);
    inside.min(below_top).min(above_bottom)
}

fn to_f64s(p: &MPoint) -> Vec<f64> {
    use num_traits::ToPrimitive;
    std::iter::once(&p.t).chain(&p.x).map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

fn dyadic_of(x: f64, bits: i32) -> Q {
    let scale = 2f64.powi(bits);
    let m = (x * scale).round() as i64;
    Q::new(m.into(), (1i64 << bits).into())
}

/// Small cone inside `v` and causally disjoint from `Ũ`. The location is
/// found by maximising [`complement_margin`] over a grid followed by a
/// pattern search; the result is verified exactly.
fn complement_cone(v: &DoubleCone, ut: &DoubleCone) -> Option<DoubleCone> {
    let n = v.space_dim();
    let vf = [to_f64s(v.pminus()), to_f64s(v.pplus())];
    let uf = [to_f64s(ut.pminus()), to_f64s(ut.pplus())];
    let centre = to_f64s(&v.center());
    let span = vf[1][0] - vf[0][0];
    let g = (100_000f64.powf(1.0 / (n as f64 + 1.0)).floor() as usize).max(4);
    let mut best = (f64::NEG_INFINITY, centre.clone());
    let mut idx = vec![0usize; n + 1];
    loop {
        let m: Vec<f64> = (0..=n)
            .map(|k| {
                let lo = if k == 0 { vf[0][0] } else { centre[k] - span / 2.0 };
                lo + span * (idx[k] as f64 + 0.5) / g as f64
            })
            .collect();
        let sc = complement_margin(&m, &vf, &uf);
        if sc > best.0 {
            best = (sc, m);
        }
        let mut k = 0;
        while k <= n {
            idx[k] += 1;
            if idx[k] < g {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k > n {
            break;
        }
    }
    let mut step = span / g as f64;
    for _ in 0..200 {
        let mut improved = false;
        for k in 0..=n {
            for sgn in [1.0, -1.0] {
                let mut m = best.1.clone();
                m[k] += sgn * step;
                let sc = complement_margin(&m, &vf, &uf);
                if sc > best.0 {
                    best = (sc, m);
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
            if step < span * 1e-12 {
                break;
            }
        }
    }
    if best.0.is_nan() || best.0 <= 0.0 {
        return None;
    }
    let bits = 40 - (span.abs().log2().ceil() as i32).clamp(-20, 20);
    let m = MPoint::new(dyadic_of(best.1[0], bits), best.1[1..].iter().map(|&c| dyadic_of(c, bits)).collect());
    if !v.contains(&m) || causal_after(ut.pplus(), &m) || causal_after(&m, ut.pminus()) {
        return None;
    }
    let mut eps = dyadic_of(best.0 / 2.0, bits);
    if !eps.is_positive() {
        eps = crate::rational::two_pow_neg(bits as u32);
    }
    for _ in 0..64 {
        let dt = MPoint { t: eps.clone(), x: vec![Q::zero(); n] };
        if let Ok(c) = DoubleCone::new(m.sub(&dt), m.add(&dt)) {
            if cone_included(&c, v) && causally_disjoint(&c, ut) {
                return Some(c);
            }
        }
        eps *= q(1, 2);
    }
    None
}

fn verify_diagram(d: &WitnessDiagram) -> Vec<Check> {
    vec![
        Check::new("u1_in_v1", cone_included(&d.u1, &d.v1)),
        Check::new("u2_in_v2", cone_included(&d.u2, &d.v2)),
        Check::new("utilde_in_w", cone_included(&d.utilde, &d.w)),
        Check::new("v1_in_w", cone_included(&d.v1, &d.w)),
        Check::new("v2_in_w", cone_included(&d.v2, &d.w)),
        Check::new("v1_perp_v2", causally_disjoint(&d.v1, &d.v2)),
        Check::new("u1c_in_v1", cone_included(&d.u1_complement, &d.v1)),
        Check::new("u2c_in_v2", cone_included(&d.u2_complement, &d.v2)),
        Check::new("u1c_perp_u1", causally_disjoint(&d.u1_complement, &d.u1)),
        Check::new("u2c_perp_u2", causally_disjoint(&d.u2_complement, &d.u2)),
        Check::new("u1c_perp_utilde", causally_disjoint(&d.u1_complement, &d.utilde)),
        Check::new("u2c_perp_utilde", causally_disjoint(&d.u2_complement, &d.utilde)),
    ]
}

/// Constructs and exactly verifies an extension diagram for the orthogonal
/// cospan `U1, U2 ⊆ Ũ`. Each refinement round tightens the light-cone hits
/// and the dyadic step for the exit points.
pub fn build_witness(
    u1: &DoubleCone,
    u2: &DoubleCone,
    ut: &DoubleCone,
    opts: &WitnessOptions,
) -> Result<WitnessReport, GeometryError> {
    let n = u1.space_dim();
    for c in [u2, ut] {
        if c.space_dim() != n {
            return Err(GeometryError::DimensionMismatch { expected: n, got: c.space_dim() });
        }
    }
    if !cone_included(u1, ut) {
        return Err(GeometryError::Precondition("U1 is not contained in the outer cone".into()));
    }
    if !cone_included(u2, ut) {
        return Err(GeometryError::Precondition("U2 is not contained in the outer cone".into()));
    }
    if !causally_disjoint(u1, u2) {
        return Err(GeometryError::Precondition("U1 and U2 are not causally disjoint".into()));
    }
    let mut failures = Vec::new();
    for r in 0..opts.retry_budget.max(1) {
        let mut last = String::new();
        for (kind, o) in [Construction::LightConeHits, Construction::AlignedNull]
            .into_iter()
            .flat_map(|k| overshoots().into_iter().map(move |o| (k, o)))
        {
            let p = round_params(r, o);
            match attempt(u1, u2, ut, kind, &p) {
                Ok((diagram, exit_params)) => {
                    let checks = verify_diagram(&diagram);
                    if checks.iter().all(|c| c.passed) {
                        return Ok(WitnessReport {
                            verified: true,
                            rounds: r + 1,
                            overshoot: p.overshoot,
                            construction: kind,
                            diagram,
                            checks,
                            exit_params,
                        });
                    }
                    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                    last = failed.join(", ");
                }
                Err(e) => last = e,
            }
        }
        failures.push(format!("round {r}: {last}"));
    }
    Err(GeometryError::ExhaustedRetries { rounds: opts.retry_budget.max(1), failures })
}

fn attempt(
    u1: &DoubleCone,
    u2: &DoubleCone,
    ut: &DoubleCone,
    kind: Construction,
    p: &RoundParams,
) -> Result<(WitnessDiagram, Vec<Q>), String> {
    let lines = tip_lines(u1, u2, kind, p)?;
    let mut ends = Vec::with_capacity(4);
    let mut exit_params = Vec::with_capacity(4);
    for (q0, k) in &lines {
        let s = exit_param(q0, k, ut, p.dyadic).ok_or("tip never leaves the outer cone")?;
        let s = &s * (Q::one() + &p.overshoot);
        ends.push(q0.add(&k.scale(&s)));
        exit_params.push(s);
    }
    let mut vs = Vec::with_capacity(2);
    for pair in ends.chunks(2) {
        vs.push(DoubleCone::new(pair[0].clone(), pair[1].clone()).map_err(|e| format!("extended cone: {e}"))?);
    }
    let v2 = vs.pop().expect("two cones");
    let v1 = vs.pop().expect("two cones");
    let centre = project_cone(ut).marked_point();
    let w = enclosing_cone(
        &[ut.pminus(), ut.pplus(), v1.pminus(), v1.pplus(), v2.pminus(), v2.pplus()],
        &centre,
        &Q::one(),
    );
    let c1 = complement_cone(&v1, ut).ok_or("no complement found in V1")?;
    let c2 = complement_cone(&v2, ut).ok_or("no complement found in V2")?;
    Ok((
        WitnessDiagram {
            u1: u1.clone(),
            u2: u2.clone(),
            utilde: ut.clone(),
            v1,
            v2,
            w,
            u1_complement: c1,
            u2_complement: c2,
        },
        exit_params,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn p(t: i64, x: &[i64]) -> MPoint {
        MPoint::ints(t, x)
    }

    fn unit() -> DoubleCone {
        DoubleCone::new(p(-1, &[0]), p(1, &[0])).unwrap()
    }

    #[test]
    fn interval_examples() {
        assert_eq!(sq_interval(&p(0, &[0]), &p(1, &[0])).unwrap(), qi(-1));
        assert_eq!(sq_interval(&p(0, &[0]), &p(0, &[1])).unwrap(), qi(1));
        assert_eq!(sq_interval(&p(0, &[0]), &p(1, &[1])).unwrap(), qi(0));
        assert!(matches!(sq_interval(&p(0, &[0]), &p(0, &[0, 0])), Err(GeometryError::DimensionMismatch { .. })));
    }

    #[test]
    fn containment_examples() {
        let u = unit();
        assert!(cone_contains(&u, &p(0, &[0])).unwrap());
        assert!(!cone_contains(&u, &p(0, &[1])).unwrap());
        assert!(cone_contains(&u, &MPoint::from_ratios((0, 1), &[(1, 2)])).unwrap());
        assert!(DoubleCone::new(p(0, &[0]), p(1, &[1])).is_err());
    }

    #[test]
    fn inclusion_examples() {
        let small =
            DoubleCone::new(MPoint::from_ratios((-1, 2), &[(0, 1)]), MPoint::from_ratios((1, 2), &[(0, 1)])).unwrap();
        assert!(cone_included(&small, &unit()));
        let shifted =
            DoubleCone::new(MPoint::from_ratios((-1, 2), &[(1, 1)]), MPoint::from_ratios((1, 2), &[(1, 1)])).unwrap();
        assert!(!cone_included(&shifted, &unit()));
        assert!(cone_included(&unit(), &unit()));
    }

    #[test]
    fn disjointness_examples() {
        let far = DoubleCone::new(p(-1, &[4]), p(1, &[4])).unwrap();
        assert!(causally_disjoint(&unit(), &far));
        let near =
            DoubleCone::new(MPoint::from_ratios((-1, 1), &[(3, 2)]), MPoint::from_ratios((1, 1), &[(3, 2)])).unwrap();
        assert!(!causally_disjoint(&unit(), &near));
        // null separated cones touch without causal contact
        let touching = DoubleCone::new(p(-1, &[2]), p(1, &[2])).unwrap();
        assert!(causally_disjoint(&unit(), &touching));
    }

    #[test]
    fn shadow_examples() {
        let s = project_cone(&unit());
        assert_eq!(s.interval(), Some((qi(-1), qi(1))));
        assert_eq!(s.marked_point(), vec![qi(0)]);
        let tilted = DoubleCone::new(p(-1, &[0]), p(1, &[1])).unwrap();
        let s = project_cone(&tilted);
        assert_eq!(s.interval(), Some((q(-1, 2), q(3, 2))));
        assert_eq!(s.marked_point(), vec![q(1, 2)]);
        assert!(s.contains(&[q(-49, 100)]));
        assert!(!s.contains(&[q(-1, 2)]));
        assert!(s.contains(&[q(149, 100)]));
    }

    #[test]
    fn projection_inequality_example() {
        let r = check_projection_inequality(&p(0, &[0]), &p(5, &[1])).unwrap();
        assert_eq!(r.sq_interval, qi(-24));
        assert_eq!(r.euclid_sq, qi(1));
        assert!(r.holds);
    }

    #[test]
    fn lightcone_hit_examples() {
        let a = p(0, &[0]);
        let b = p(0, &[4]);
        let h = segment_lightcone_hit(&a, &b, &p(1, &[0]), ConeBranch::Past, 20).unwrap();
        assert!(h.exact);
        assert_eq!(h.point, p(0, &[1]));
        let h = segment_lightcone_hit(&a, &b, &p(1, &[4]), ConeBranch::Past, 20).unwrap();
        assert_eq!(h.point, p(0, &[3]));
        assert_eq!(
            segment_lightcone_hit(&a, &b, &p(10, &[2]), ConeBranch::Past, 20).unwrap_err(),
            GeometryError::NoHit
        );
    }

    #[test]
    fn irrational_hit_is_bracketed() {
        // segment along x at t = 0, tip (1; 0, 1): root at x = 0 is... shift to make it irrational
        let a = p(0, &[0, 0]);
        let b = p(0, &[4, 0]);
        let tip = MPoint::new(qi(2), vec![qi(0), qi(1)]);
        let h = segment_lightcone_hit(&a, &b, &tip, ConeBranch::Past, 30).unwrap();
        assert!(!h.exact);
        // exact root: 16 s^2 = 3, s = sqrt(3)/4
        assert!(&h.lower * &h.lower * qi(16) <= qi(3));
        assert!(&h.upper * &h.upper * qi(16) >= qi(3));
        assert!(&h.upper - &h.lower <= q(1, 1 << 29));
        assert_eq!(h.sign_lower, -1);
        assert_eq!(h.sign_upper, 1);
        // the returned point is on the timelike side
        assert!(sq(&h.point, &tip).is_negative());
    }

    #[test]
    fn chronology_examples() {
        assert!(chron_after(&p(1, &[0]), &p(0, &[0])));
        assert!(!chron_after(&p(1, &[2]), &p(0, &[0])));
        assert!(!chron_after(&p(1, &[1]), &p(0, &[0])));
    }

    /// Dense grid of rational points strictly inside `u`.
    fn grid_inside(u: &DoubleCone, k: i64) -> Vec<MPoint> {
        let c = u.center();
        let h = &u.pplus().t - &u.pminus().t;
        let mut out = Vec::new();
        for i in -k..=k {
            for j in -k..=k {
                let pt = MPoint::new(&c.t + &h * q(i, 2 * k), vec![&c.x[0] + &h * q(j, 2 * k)]);
                if u.contains(&pt) {
                    out.push(pt);
                }
            }
        }
        out
    }

    #[test]
    fn tip_criteria_agree_with_sampling() {
        let unit = unit();
        let cones = [
            DoubleCone::new(MPoint::from_ratios((-1, 2), &[(0, 1)]), MPoint::from_ratios((1, 2), &[(0, 1)])).unwrap(),
            DoubleCone::new(MPoint::from_ratios((-1, 2), &[(1, 1)]), MPoint::from_ratios((1, 2), &[(1, 1)])).unwrap(),
            DoubleCone::new(p(-1, &[4]), p(1, &[4])).unwrap(),
            DoubleCone::new(MPoint::from_ratios((-1, 1), &[(3, 2)]), MPoint::from_ratios((1, 1), &[(3, 2)])).unwrap(),
            DoubleCone::new(p(0, &[2]), p(2, &[2])).unwrap(),
        ];
        for v in &cones {
            let pts = grid_inside(v, 12);
            let all_in = pts.iter().all(|pt| unit.contains(pt));
            assert_eq!(cone_included(v, &unit), all_in, "{v:?}");
            let others = grid_inside(&unit, 12);
            let far = pts.iter().all(|a| others.iter().all(|b| sq(a, b).is_positive()));
            assert_eq!(causally_disjoint(v, &unit), far, "{v:?}");
        }
    }

    #[test]
    fn dcone_category_is_orthogonal() {
        let cones: Vec<(String, DoubleCone)> = vec![
            ("a".into(), unit()),
            ("b".into(), DoubleCone::new(p(-1, &[4]), p(1, &[4])).unwrap()),
            ("big".into(), DoubleCone::new(p(-4, &[2]), p(4, &[2])).unwrap()),
            (
                "c".into(),
                DoubleCone::new(MPoint::from_ratios((-1, 2), &[(0, 1)]), MPoint::from_ratios((1, 2), &[(0, 1)]))
                    .unwrap(),
            ),
        ];
        let c = dcone_category(&cones);
        assert!(crate::orthogonal::validate_category(&c).valid);
        assert!(c.objects_orthogonal(0, 1));
        assert!(c.objects_orthogonal(3, 1));
        assert!(!c.objects_orthogonal(0, 3));
    }

    #[test]
    fn witness_example() {
        let u1 = unit();
        let u2 = DoubleCone::new(p(-1, &[4]), p(1, &[4])).unwrap();
        let ut = DoubleCone::new(p(-4, &[2]), p(4, &[2])).unwrap();
        let r = build_witness(&u1, &u2, &ut, &WitnessOptions::default()).unwrap();
        assert!(r.verified);
        assert!(r.checks.iter().all(|c| c.passed));
        // along the half-line through p1+ the exit parameter is 3/2 exactly
        assert!(r.exit_params[1] > q(3, 2));
        assert_eq!(r.exit_params[1], qi(2));
    }

    #[test]
    fn witness_tight_outer_cone() {
        let u1 = unit();
        let u2 = DoubleCone::new(p(-1, &[4]), p(1, &[4])).unwrap();
        let ut = DoubleCone::new(p(-3, &[2]), p(3, &[2])).unwrap();
        let r = build_witness(&u1, &u2, &ut, &WitnessOptions::default()).unwrap();
        assert!(r.verified);
    }

    #[test]
    fn near_null_cospan_uses_aligned_directions() {
        // U2 almost touches the causal future of U1; extending along the
        // light-cone hits breaks V1 ⊥ V2 for every overshoot
        let pt = |t: (i64, i64), a: (i64, i64), b: (i64, i64)| MPoint::from_ratios(t, &[a, b]);
        let u1 = DoubleCone::new(pt((-1, 2), (367, 128), (-207, 64)), pt((2, 1), (337, 128), (-177, 64))).unwrap();
        let u2 = DoubleCone::new(pt((7, 4), (237, 64), (15, 128)), pt((11, 4), (243, 64), (-15, 128))).unwrap();
        let ut = DoubleCone::new(pt((-671, 128), (13, 4), (-15, 8)), pt((1031, 128), (13, 4), (-15, 8))).unwrap();
        let r = build_witness(&u1, &u2, &ut, &WitnessOptions::default()).unwrap();
        assert!(r.verified);
        assert_eq!(r.construction, Construction::AlignedNull);
    }

    #[test]
    fn rational_unit_vectors_are_exact() {
        let d = MPoint::from_ratios((1, 3), &[(2, 1), (-1, 1), (5, 7)]);
        let e = rational_unit_towards(&d).unwrap();
        assert_eq!(e.iter().fold(Q::zero(), |a, c| a + c * c), Q::one());
        assert!(euclid_dot(&e, &d.x) >= d.t);
    }

    #[test]
    fn witness_preconditions() {
        let u1 = unit();
        let u2 = DoubleCone::new(p(-1, &[4]), p(1, &[4])).unwrap();
        let small = DoubleCone::new(p(-2, &[3]), p(2, &[3])).unwrap();
        assert!(matches!(
            build_witness(&u1, &u2, &small, &WitnessOptions::default()),
            Err(GeometryError::Precondition(_))
        ));
    }

    #[test]
    fn cauchy_lift_examples() {
        assert_eq!(cauchy_lift(&unit(), &[q(1, 2)]).unwrap(), MPoint::from_ratios((0, 1), &[(1, 2)]));
        let tilted = DoubleCone::new(p(-1, &[0]), p(1, &[1])).unwrap();
        assert_eq!(cauchy_lift(&tilted, &[q(1, 2)]).unwrap(), MPoint::from_ratios((0, 1), &[(1, 2)]));
        assert_eq!(cauchy_lift(&tilted, &[qi(1)]).unwrap(), MPoint::from_ratios((1, 4), &[(1, 1)]));
        assert_eq!(cauchy_lift(&unit(), &[qi(2)]).unwrap_err(), GeometryError::NotInShadow);
    }

    #[test]
    fn homotopy_point_example() {
        let h = homotopy_point(&unit(), &MPoint::from_ratios((1, 2), &[(0, 1)]), &q(1, 2)).unwrap();
        assert_eq!(h, MPoint::from_ratios((1, 4), &[(0, 1)]));
        assert!(homotopy_point(&unit(), &p(0, &[0]), &qi(2)).is_err());
    }

    #[test]
    fn segment_certificate_examples() {
        let c = certify_segment_spacelike(&p(0, &[2]), &p(1, &[2])).unwrap();
        assert_eq!((c.a2.clone(), c.a1.clone(), c.a0.clone()), (qi(-1), qi(0), qi(4)));
        assert!(c.certified);
        let same = certify_segment_spacelike(&p(0, &[1]), &p(0, &[1])).unwrap();
        assert!(same.certified);
        assert!(matches!(certify_segment_spacelike(&p(0, &[2]), &p(3, &[2])), Err(GeometryError::NotSpacelike(_))));
    }

    #[test]
    fn cone_json_round_trip() {
        let s = r#"{"pminus":{"t":"-1","x":["0"]},"pplus":{"t":"1","x":["1/2"]}}"#;
        let c: DoubleCone = serde_json::from_str(s).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), s);
        let bad = r#"{"pminus":{"t":"0","x":["0"]},"pplus":{"t":"0","x":["1"]}}"#;
        assert!(serde_json::from_str::<DoubleCone>(bad).is_err());
    }
}
