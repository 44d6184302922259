//! Localized endomorphisms of the global algebra, intertwiners between them
//! and the ⋄ product.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::gaussian::GaussQ;
use crate::matrix::{pauli, Matrix};
use crate::orthogonal::ObjId;
use crate::rational::Q;
use crate::report::{Check, ValidationReport, Violation, ViolationLog};

use super::net::{site_permutation, MatrixNet};
use super::SectorError;

/// Matrix `m` with `m m* = scale * 1`; stands for the unitary
/// `m / sqrt(scale)`, whose adjoint action stays rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitary {
    m: Matrix,
    scale: Q,
}

impl Unitary {
    pub fn new(m: Matrix) -> Result<Self, SectorError> {
        let scale = m.unitary_scale().ok_or(SectorError::NotUnitary)?;
        Ok(Unitary { m, scale })
    }

    pub fn identity(n: usize) -> Self {
        Unitary { m: Matrix::identity(n), scale: Q::one() }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn scale(&self) -> &Q {
        &self.scale
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn mul(&self, other: &Unitary) -> Unitary {
        Unitary { m: self.m.mul(&other.m), scale: &self.scale * &other.scale }
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary { m: self.m.adjoint(), scale: self.scale.clone() }
    }

    /// `u a u^{-1}`
    pub fn ad(&self, a: &Matrix) -> Matrix {
        self.m.conjugate(a, &self.scale)
    }
}

/// A unital *-endomorphism of the global algebra.
#[derive(Clone, Debug)]
pub enum Endo {
    Inner(Unitary),
    /// Images of the global basis elements, in basis order.
    General(Arc<Vec<Matrix>>),
}

impl Endo {
    pub fn identity(n: usize) -> Self {
        Endo::Inner(Unitary::identity(n))
    }

    pub fn inner(u: Matrix) -> Result<Self, SectorError> {
        Ok(Endo::Inner(Unitary::new(u)?))
    }

    /// Tabulates `f` on the global basis.
    pub fn from_fn(net: &MatrixNet, f: impl Fn(&Matrix) -> Matrix) -> Self {
        Endo::General(Arc::new(net.global().basis().iter().map(f).collect()))
    }

    /// Pullback along a map of computational basis states, for nets whose
    /// global algebra is diagonal: `rho(f)(b) = f(phi(b))`.
    pub fn pullback(net: &MatrixNet, phi: impl Fn(usize) -> usize) -> Result<Self, SectorError> {
        let n = net.hilbert_dim();
        let diagonal = net.global().basis().iter().all(|b| (0..n).all(|i| b.row(i).iter().all(|(j, _)| *j == i)));
        if !diagonal {
            return Err(SectorError::Precondition("state pullbacks need a diagonal global algebra".into()));
        }
        Ok(Self::from_fn(net, |b| {
            let mut m = Matrix::zeros(n);
            for j in 0..n {
                let k = phi(j);
                m = m.add(&Matrix::unit(n, j, j).scale(&b.get(k, k)));
            }
            m
        }))
    }

    pub fn is_inner(&self) -> bool {
        matches!(self, Endo::Inner(_))
    }

    pub fn unitary(&self) -> Option<&Unitary> {
        match self {
            Endo::Inner(u) => Some(u),
            Endo::General(_) => None,
        }
    }

    pub fn apply(&self, net: &MatrixNet, a: &Matrix) -> Result<Matrix, SectorError> {
        match self {
            Endo::Inner(u) => Ok(u.ad(a)),
            Endo::General(images) => {
                let coords = net.coordinates().coordinates(&a.to_vec()).ok_or(SectorError::OutsideGlobal)?;
                let mut out = Matrix::zeros(net.hilbert_dim());
                for (k, z) in coords {
                    out = out.add(&images[k].scale(&z));
                }
                Ok(out)
            }
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Endo, net: &MatrixNet) -> Endo {
        match (self, other) {
            (Endo::Inner(u), Endo::Inner(w)) => Endo::Inner(u.mul(w)),
            _ => Endo::from_fn(net, |b| {
                let inner = other.apply(net, b).expect("endomorphisms map the global algebra into itself");
                self.apply(net, &inner).expect("endomorphisms map the global algebra into itself")
            }),
        }
    }

    /// Equality as maps. Inner pairs are compared by whether `w* u` is
    /// central; other pairs on the whole global basis.
    pub fn same(&self, other: &Endo, net: &MatrixNet) -> bool {
        match (self, other) {
            (Endo::Inner(u), Endo::Inner(w)) => {
                let m = w.matrix().adjoint().mul(u.matrix());
                net.global_commutant().contains(&m)
            }
            _ => net
                .global()
                .basis()
                .iter()
                .all(|b| matches!((self.apply(net, b), other.apply(net, b)), (Ok(x), Ok(y)) if x == y)),
        }
    }
}

/// An endomorphism together with the region it is declared localized in.
#[derive(Clone, Debug)]
pub struct LocalizedEndo {
    pub name: String,
    pub region: ObjId,
    pub endo: Endo,
}

impl LocalizedEndo {
    /// Declares a sector without checking localization; see
    /// [`check_localized`].
    pub fn declare(name: impl Into<String>, region: ObjId, endo: Endo) -> Self {
        LocalizedEndo { name: name.into(), region, endo }
    }

    pub fn identity(net: &MatrixNet, region: ObjId) -> Self {
        Self::declare("1", region, Endo::identity(net.hilbert_dim()))
    }

    /// `Ad_u` localized in `region`, with the endomorphism and localization
    /// laws verified.
    pub fn inner(net: &MatrixNet, name: impl Into<String>, region: ObjId, u: Matrix) -> Result<Self, SectorError> {
        if u.dim() != net.hilbert_dim() {
            return Err(SectorError::Dimension { expected: net.hilbert_dim(), got: u.dim() });
        }
        Self::checked(net, Self::declare(name, region, Endo::inner(u)?))
    }

    pub fn checked(net: &MatrixNet, rho: LocalizedEndo) -> Result<Self, SectorError> {
        let e = check_endomorphism(net, &rho.endo);
        if !e.valid {
            return Err(SectorError::NotEndomorphism(rho.name, e));
        }
        let l = check_localized(net, &rho);
        if !l.valid {
            return Err(SectorError::NotLocalized(rho.name, l));
        }
        Ok(rho)
    }

    pub fn retagged(&self, region: ObjId) -> Self {
        LocalizedEndo { region, ..self.clone() }
    }

    pub fn apply(&self, net: &MatrixNet, a: &Matrix) -> Result<Matrix, SectorError> {
        self.endo.apply(net, a)
    }

    pub fn label(&self, net: &MatrixNet) -> String {
        format!("{}@{}", self.name, net.region_name(self.region))
    }
}

/// Generators of the global algebra together with their adjoints.
pub(crate) fn generator_words(net: &MatrixNet) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = Vec::new();
    for g in net.global().generators() {
        for m in [g.clone(), g.adjoint()] {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// Unital, *-preserving, multiplicative and into the global algebra, on
/// basis elements (generator words for inner maps, which are automatically
/// multiplicative).
pub fn check_endomorphism(net: &MatrixNet, e: &Endo) -> ValidationReport {
    let mut log = ViolationLog::default();
    let n = net.hilbert_dim();
    let global = net.global();
    if let Endo::Inner(u) = e {
        log.check(u.dim() == n, || Violation::new("endo_dimension", vec![]));
        if u.dim() != n {
            return log.finish();
        }
        for a in generator_words(net) {
            log.check(global.contains(&u.ad(&a)), || Violation::new("endo_into_global", vec![label(net, &a)]));
        }
        return log.finish();
    }
    let Endo::General(images) = e else { unreachable!() };
    if images.len() != global.dim() {
        log.push(Violation::new("endo_total", vec![]).with_detail(format!(
            "{} images for {} basis elements",
            images.len(),
            global.dim()
        )));
        return log.finish();
    }
    let f = |a: &Matrix| e.apply(net, a).ok();
    log.check(f(&Matrix::identity(n)) == Some(Matrix::identity(n)), || Violation::new("endo_unital", vec![]));
    let basis = global.basis();
    for (i, a) in basis.iter().enumerate() {
        log.check(global.contains(&images[i]), || Violation::new("endo_into_global", vec![label(net, a)]));
        log.check(f(&a.adjoint()) == Some(images[i].adjoint()), || Violation::new("endo_star", vec![label(net, a)]));
        for (j, b) in basis.iter().enumerate() {
            log.check(f(&a.mul(b)) == Some(images[i].mul(&images[j])), || {
                Violation::new("endo_multiplicative", vec![label(net, a), label(net, b)])
            });
        }
    }
    log.finish()
}

/// `rho` acts as the identity on every `A(U')` with `U'` orthogonal to its
/// region, checked on basis elements.
pub fn check_localized(net: &MatrixNet, rho: &LocalizedEndo) -> ValidationReport {
    let mut log = ViolationLog::default();
    for u in net.complement(rho.region) {
        for b in net.algebra(u).basis() {
            let ok = matches!(rho.apply(net, b), Ok(x) if &x == b);
            log.check(ok, || {
                Violation::new("localization", vec![rho.label(net), net.region_name(u).to_string(), label(net, b)])
            });
        }
    }
    log.finish()
}

/// Readable name for Pauli-string multiples on qubit nets; a nonzero count
/// otherwise.
pub fn label(net: &MatrixNet, m: &Matrix) -> String {
    let l = net.sites();
    if net.local_dim() == 2 && l <= 6 {
        let ps = [Matrix::identity(2), pauli::x(), pauli::y(), pauli::z()];
        let letters = ['I', 'X', 'Y', 'Z'];
        for code in 0..4usize.pow(l as u32) {
            let digits = super::net::to_digits(code, l, 4);
            let p = digits.iter().fold(Matrix::identity(1), |acc, &d| acc.kron(&ps[d]));
            // m = c p with c = m_{0j} / p_{0j} on the first nonzero of p
            let Some((j, pz)) = p.row(0).first().cloned() else { continue };
            let c = m.get(0, j).mul_inv(&pz);
            if !c.is_zero() && p.scale(&c) == *m {
                let s: String = digits.iter().map(|&d| letters[d]).collect();
                return if c.is_one() { s } else { format!("({c}){s}") };
            }
        }
    }
    format!("matrix[{} nonzero]", m.nnz())
}

trait MulInv {
    fn mul_inv(&self, d: &GaussQ) -> GaussQ;
}

impl MulInv for GaussQ {
    fn mul_inv(&self, d: &GaussQ) -> GaussQ {
        self * &d.inv().expect("nonzero")
    }
}

/// `T: rho -> rho'` with `T rho(a) = rho'(a) T`.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    source: LocalizedEndo,
    target: LocalizedEndo,
    t: Matrix,
}

impl Intertwiner {
    /// Verifies the intertwining law on generators and their adjoints and
    /// membership of `T` in `A(V)''` for every region `V` containing both
    /// localization regions.
    pub fn new(net: &MatrixNet, source: LocalizedEndo, target: LocalizedEndo, t: Matrix) -> Result<Self, SectorError> {
        if t.dim() != net.hilbert_dim() {
            return Err(SectorError::Dimension { expected: net.hilbert_dim(), got: t.dim() });
        }
        for a in generator_words(net) {
            let lhs = t.mul(&source.apply(net, &a)?);
            let rhs = target.apply(net, &a)?.mul(&t);
            if lhs != rhs {
                return Err(SectorError::NotIntertwiner(format!(
                    "{} -> {} fails on {}",
                    source.label(net),
                    target.label(net),
                    label(net, &a)
                )));
            }
        }
        let ups: Vec<ObjId> = (0..net.category().num_objects())
            .filter(|&v| net.leq(source.region, v) && net.leq(target.region, v))
            .collect();
        if ups.is_empty() {
            return Err(SectorError::NoCommonRegion(source.label(net), target.label(net)));
        }
        for v in ups {
            if !net.bicommutant(v).contains(&t) {
                return Err(SectorError::NotInBicommutant(net.region_name(v).to_string()));
            }
        }
        Ok(Intertwiner { source, target, t })
    }

    pub fn identity(net: &MatrixNet, rho: &LocalizedEndo) -> Self {
        Intertwiner { source: rho.clone(), target: rho.clone(), t: Matrix::identity(net.hilbert_dim()) }
    }

    pub fn source(&self) -> &LocalizedEndo {
        &self.source
    }

    pub fn target(&self) -> &LocalizedEndo {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    /// `next ∘ self`
    pub fn then(&self, next: &Intertwiner, net: &MatrixNet) -> Result<Intertwiner, SectorError> {
        if !self.target.endo.same(&next.source.endo, net) {
            return Err(SectorError::NotComposable);
        }
        Intertwiner::new(net, self.source.clone(), next.target.clone(), next.t.mul(&self.t))
    }

    pub fn adjoint(&self, net: &MatrixNet) -> Result<Intertwiner, SectorError> {
        Intertwiner::new(net, self.target.clone(), self.source.clone(), self.t.adjoint())
    }
}

fn common_region(net: &MatrixNet, a: ObjId, b: ObjId, region: Option<ObjId>) -> Result<ObjId, SectorError> {
    match region {
        None if a == b => Ok(a),
        None => Err(SectorError::NoCommonRegion(net.region_name(a).into(), net.region_name(b).into())),
        Some(v) if net.leq(a, v) && net.leq(b, v) => Ok(v),
        Some(v) => Err(SectorError::Precondition(format!(
            "{} does not contain both {} and {}",
            net.region_name(v),
            net.region_name(a),
            net.region_name(b)
        ))),
    }
}

fn diamond_name(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", x) | (x, "1") => x.to_string(),
        _ => format!("{a}⋄{b}"),
    }
}

/// `rho ⋄ rhodot = rho rhodot`, localized in their shared region or in the
/// supplied superregion.
pub fn diamond_in(
    net: &MatrixNet,
    rho: &LocalizedEndo,
    rhodot: &LocalizedEndo,
    region: Option<ObjId>,
) -> Result<LocalizedEndo, SectorError> {
    let v = common_region(net, rho.region, rhodot.region, region)?;
    Ok(LocalizedEndo::declare(diamond_name(&rho.name, &rhodot.name), v, rho.endo.compose(&rhodot.endo, net)))
}

pub fn diamond(net: &MatrixNet, rho: &LocalizedEndo, rhodot: &LocalizedEndo) -> Result<LocalizedEndo, SectorError> {
    diamond_in(net, rho, rhodot, None)
}

/// `T ⋄ Tdot = T rho(Tdot)`, from `rho ⋄ rhodot` to `rho' ⋄ rhodot'`.
pub fn diamond_mor_in(
    net: &MatrixNet,
    t: &Intertwiner,
    tdot: &Intertwiner,
    region: Option<ObjId>,
) -> Result<Intertwiner, SectorError> {
    let src = diamond_in(net, &t.source, &tdot.source, region)?;
    let tgt = diamond_in(net, &t.target, &tdot.target, region)?;
    let m = t.t.mul(&t.source.apply(net, &tdot.t)?);
    Intertwiner::new(net, src, tgt, m)
}

pub fn diamond_mor(net: &MatrixNet, t: &Intertwiner, tdot: &Intertwiner) -> Result<Intertwiner, SectorError> {
    diamond_mor_in(net, t, tdot, None)
}

/// Intertwiner `Ad_u -> Ad_w` given by `w u*`, for inner sectors of any
/// normalisation.
pub fn inner_intertwiner(
    net: &MatrixNet,
    from: &LocalizedEndo,
    to: &LocalizedEndo,
) -> Result<Intertwiner, SectorError> {
    let (Some(u), Some(w)) = (from.endo.unitary(), to.endo.unitary()) else {
        return Err(SectorError::Precondition("inner sectors required".into()));
    };
    Intertwiner::new(net, from.clone(), to.clone(), w.matrix().mul(&u.matrix().adjoint()))
}

#[derive(Clone, Debug, Serialize)]
pub struct PerpSectorReport {
    pub sectors: [String; 2],
    pub join: String,
    pub passed: bool,
    pub steps: Vec<Check>,
}

/// Both orders of the ⋄ product agree for sectors and intertwiners
/// localized in orthogonal regions, with the intermediate identities
/// `rho1(T2) = T2`, `T1 T2 = T2 T1` and `rho2(T1) = T1` reported separately.
pub fn check_perp_commutativity_sectors(
    net: &MatrixNet,
    rho1: &LocalizedEndo,
    rho2: &LocalizedEndo,
    t1: &Intertwiner,
    t2: &Intertwiner,
) -> Result<PerpSectorReport, SectorError> {
    if !net.orthogonal(rho1.region, rho2.region) {
        return Err(SectorError::Precondition(format!(
            "{} and {} are not orthogonal",
            net.region_name(rho1.region),
            net.region_name(rho2.region)
        )));
    }
    for (t, rho) in [(t1, rho1), (t2, rho2)] {
        if !net.leq(t.source.region, rho.region) || !net.leq(t.target.region, rho.region) {
            return Err(SectorError::Precondition(format!(
                "intertwiner not localized in {}",
                net.region_name(rho.region)
            )));
        }
    }
    let v = net
        .join(rho1.region, rho2.region)
        .ok_or_else(|| SectorError::NoCommonRegion(rho1.label(net), rho2.label(net)))?;
    let mut steps = Vec::new();
    let a = diamond_in(net, rho1, rho2, Some(v))?;
    let b = diamond_in(net, rho2, rho1, Some(v))?;
    steps.push(Check::new("sectors_commute", a.endo.same(&b.endo, net)));
    let s1 = t1.source.apply(net, &t2.t)? == t2.t;
    steps.push(Check::new("first_fixes_second_intertwiner", s1));
    steps.push(Check::new("intertwiners_commute", t1.t.commutes_with(&t2.t)));
    let s3 = t2.source.apply(net, &t1.t)? == t1.t;
    steps.push(Check::new("second_fixes_first_intertwiner", s3));
    let m12 = diamond_mor_in(net, t1, t2, Some(v))?;
    let m21 = diamond_mor_in(net, t2, t1, Some(v))?;
    let product = m12.matrix() == &t1.t.mul(&t2.t);
    steps.push(Check::new("diamond_is_product", product));
    steps.push(Check::new("intertwiner_diamonds_agree", m12.matrix() == m21.matrix()));
    let passed = steps.iter().all(|c| c.passed);
    Ok(PerpSectorReport {
        sectors: [rho1.label(net), rho2.label(net)],
        join: net.region_name(v).to_string(),
        passed,
        steps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransportReport {
    pub sector: String,
    pub target: String,
    pub found: bool,
    pub candidates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transporter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transporter_matrix: Option<Matrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transported_localization: Option<ValidationReport>,
    #[serde(skip)]
    pub transported: Option<LocalizedEndo>,
}

/// Site permutation sending the sorted sites of `from` onto a prefix of the
/// sorted sites of `to`, mapping the remaining sites in order.
pub fn relabeling(sites: usize, from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
    if from.len() > to.len() {
        return None;
    }
    let to = &to[..from.len()];
    let mut map = vec![0; sites];
    for (a, b) in from.iter().zip(to) {
        map[a - 1] = *b;
    }
    let rest_dom: Vec<usize> = (1..=sites).filter(|s| !from.contains(s)).collect();
    let rest_cod: Vec<usize> = (1..=sites).filter(|s| !to.contains(s)).collect();
    for (a, b) in rest_dom.iter().zip(&rest_cod) {
        map[a - 1] = *b;
    }
    Some(map)
}

/// Searches the family `v = 1`, then `v = u' u*` (inner sectors, `u'` the
/// relabelled copy of `u`) or `v = P` (site permutation, other sectors),
/// for `Ad_v ∘ rho` strictly localized in `target`.
pub fn check_transportable(net: &MatrixNet, rho: &LocalizedEndo, target: ObjId) -> TransportReport {
    let n = net.hilbert_dim();
    let mut candidates: Vec<(String, Unitary)> = vec![("1".into(), Unitary::identity(n))];
    let from = &net.regions()[rho.region].sites;
    let to = &net.regions()[target].sites;
    if let Some(map) = relabeling(net.sites(), from, to) {
        let p = Unitary::new(site_permutation(net.sites(), net.local_dim(), &map)).expect("permutations are unitary");
        match &rho.endo {
            Endo::Inner(u) => {
                let moved = Unitary { m: p.ad(u.matrix()), scale: u.scale.clone() };
                candidates.push((format!("u'u* with sites {map:?}"), moved.mul(&u.adjoint())));
            }
            Endo::General(_) => candidates.push((format!("P with sites {map:?}"), p)),
        }
    }
    let mut report = TransportReport {
        sector: rho.label(net),
        target: net.region_name(target).to_string(),
        found: false,
        candidates: candidates.iter().map(|(s, _)| s.clone()).collect(),
        transporter: None,
        transporter_matrix: None,
        transported_localization: None,
        transported: None,
    };
    for (name, v) in candidates {
        let moved = LocalizedEndo::declare(
            format!("Ad[{name}]∘{}", rho.name),
            target,
            Endo::Inner(v.clone()).compose(&rho.endo, net),
        );
        let loc = check_localized(net, &moved);
        if loc.valid {
            report.found = true;
            report.transporter = Some(name);
            report.transporter_matrix =
                Some(if v.scale.is_one() { v.m.clone() } else { v.m.scale(&GaussQ::real(Q::one() / &v.scale)) });
            report.transported_localization = Some(loc);
            report.transported = Some(moved);
            break;
        }
    }
    report
}
