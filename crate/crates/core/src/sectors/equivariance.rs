//! Group actions on sectors through implementing unitaries, and covariance
//! families.

use serde::Serialize;

use crate::linalg::{null_space, SparseVec};
use crate::matrix::Matrix;
use crate::orthogonal::{validate_group_action, GroupAction};
use crate::report::{Check, ValidationReport, Violation, ViolationLog};

use super::algebra::sylvester_rows;
use super::endo::{check_localized, diamond_in, generator_words, label, Endo, Intertwiner, LocalizedEndo, Unitary};
use super::net::MatrixNet;
use super::SectorError;

/// Region action and implementing unitaries `u_g`.
#[derive(Clone, Debug)]
pub struct SectorGroupData {
    pub action: GroupAction,
    pub unitaries: Vec<Unitary>,
}

impl SectorGroupData {
    pub fn from_net(net: &MatrixNet) -> Result<Self, SectorError> {
        let action = net.region_action()?;
        let unitaries = net.implementing_unitaries()?.into_iter().map(Unitary::new).collect::<Result<_, _>>()?;
        Ok(SectorGroupData { action, unitaries })
    }

    pub fn order(&self) -> usize {
        self.action.group.order()
    }

    pub fn name(&self, g: usize) -> &str {
        self.action.group.name(g)
    }
}

/// The region action is a valid group action, `Ad_{u_g}` moves every site
/// generator to its relabelled copy inside `A(alpha_g U)`, and `g -> Ad_{u_g}`
/// is a homomorphism (so `u_g` is projective).
pub fn check_symmetry_implementation(net: &MatrixNet, data: &SectorGroupData) -> ValidationReport {
    let mut log = ViolationLog::default();
    let base = validate_group_action(net.category(), &data.action);
    log.checked += base.checked;
    for v in base.violations {
        log.push(v);
    }
    let Some(sym) = net.symmetry() else {
        log.push(Violation::new("symmetry_missing", vec![]));
        return log.finish();
    };
    let grp = &data.action.group;
    for g in 0..grp.order() {
        let map = &sym.site_maps[g];
        for (o, region) in net.regions().iter().enumerate() {
            let target = data.action.functor(g).obj(o);
            for (s, op) in &region.site_generators {
                let a = net.embed(*s, op);
                let moved = data.unitaries[g].ad(&a);
                let expected = net.embed(map[s - 1], op);
                log.check(moved == expected, || {
                    Violation::new("implements_site_map", vec![grp.name(g).to_string(), label(net, &a)])
                        .with_detail(format!("expected {}, got {}", label(net, &expected), label(net, &moved)))
                });
                log.check(net.algebra(target).contains(&moved), || {
                    Violation::new(
                        "region_covariance",
                        vec![grp.name(g).to_string(), region.name.clone(), label(net, &a)],
                    )
                });
            }
        }
        for h in 0..grp.order() {
            let lhs = Endo::Inner(data.unitaries[g].mul(&data.unitaries[h]));
            let rhs = Endo::Inner(data.unitaries[grp.mul(g, h)].clone());
            log.check(lhs.same(&rhs, net), || {
                Violation::new("projective_representation", vec![grp.name(g).to_string(), grp.name(h).to_string()])
            });
        }
    }
    log.finish()
}

/// `g ▷ rho = Ad_{u_g} rho Ad_{u_g}*`, localized in `alpha_g(region)` and
/// verified there.
pub fn g_act_sector(
    net: &MatrixNet,
    data: &SectorGroupData,
    g: usize,
    rho: &LocalizedEndo,
) -> Result<LocalizedEndo, SectorError> {
    let ug = &data.unitaries[g];
    let endo = match &rho.endo {
        Endo::Inner(u) => Endo::Inner(ug.mul(u).mul(&ug.adjoint())),
        Endo::General(_) => Endo::from_fn(net, |b| {
            let pulled = ug.adjoint().ad(b);
            ug.ad(&rho.apply(net, &pulled).expect("symmetry preserves the global algebra"))
        }),
    };
    let name =
        if g == data.action.group.identity() { rho.name.clone() } else { format!("{}▷{}", data.name(g), rho.name) };
    let moved = LocalizedEndo::declare(name, data.action.functor(g).obj(rho.region), endo);
    let loc = check_localized(net, &moved);
    if !loc.valid {
        return Err(SectorError::NotLocalized(moved.name, loc));
    }
    Ok(moved)
}

/// `g ▷ T = u_g T u_g*` between the transformed sectors.
pub fn g_act_mor(
    net: &MatrixNet,
    data: &SectorGroupData,
    g: usize,
    t: &Intertwiner,
) -> Result<Intertwiner, SectorError> {
    let s = g_act_sector(net, data, g, t.source())?;
    let r = g_act_sector(net, data, g, t.target())?;
    Intertwiner::new(net, s, r, data.unitaries[g].ad(t.matrix()))
}

/// Action, monoidal compatibility and unit invariance laws over a family.
pub fn check_action_laws(net: &MatrixNet, data: &SectorGroupData, family: &[LocalizedEndo]) -> ValidationReport {
    let grp = &data.action.group;
    let mut log = ViolationLog::default();
    let act = |g: usize, r: &LocalizedEndo| g_act_sector(net, data, g, r);
    let same = |a: &Result<LocalizedEndo, SectorError>, b: &Result<LocalizedEndo, SectorError>| matches!((a, b), (Ok(x), Ok(y)) if x.region == y.region && x.endo.same(&y.endo, net));
    for rho in family {
        log.check(same(&act(grp.identity(), rho), &Ok(rho.clone())), || {
            Violation::new("action_identity", vec![rho.label(net)])
        });
        for g in 0..grp.order() {
            for h in 0..grp.order() {
                let lhs = act(g, rho).and_then(|x| act(h, &x));
                let rhs = act(grp.mul(h, g), rho);
                log.check(same(&lhs, &rhs), || {
                    Violation::new(
                        "action_composition",
                        vec![grp.name(h).to_string(), grp.name(g).to_string(), rho.label(net)],
                    )
                });
            }
        }
    }
    for a in family {
        for b in family {
            let Some(v) = net.join(a.region, b.region) else { continue };
            for g in 0..grp.order() {
                let gv = data.action.functor(g).obj(v);
                let lhs = diamond_in(net, a, b, Some(v)).and_then(|x| act(g, &x));
                let rhs = act(g, a).and_then(|x| act(g, b).and_then(|y| diamond_in(net, &x, &y, Some(gv))));
                log.check(same(&lhs, &rhs), || {
                    Violation::new("action_monoidal", vec![data.name(g).to_string(), a.label(net), b.label(net)])
                });
            }
        }
    }
    for o in 0..net.category().num_objects() {
        let unit = LocalizedEndo::identity(net, o);
        for g in 0..grp.order() {
            let moved = act(g, &unit);
            let fixed = LocalizedEndo::identity(net, data.action.functor(g).obj(o));
            log.check(same(&moved, &Ok(fixed)), || {
                Violation::new("action_unit", vec![data.name(g).to_string(), net.region_name(o).to_string()])
            });
        }
    }
    log.finish()
}

#[derive(Clone, Debug)]
pub struct CovarianceFamily {
    pub sector: String,
    /// `u^rho_g` for each group element.
    pub unitaries: Vec<Unitary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotFound {
    /// `tr rho(Ad_{u_g} a) != tr rho(a)`: no unitary can conjugate one into
    /// the other, so no covariance family exists.
    TraceMismatch { group_element: String, element: String, traces: [String; 2] },
    /// The linear intertwining system has only the zero solution.
    NoSolution { group_element: String },
    /// Solutions exist but none of the basis solutions is unitary; not a
    /// proof of absence.
    NoUnitarySolution { group_element: String, solution_dim: usize },
}

#[derive(Clone, Debug)]
pub enum Covariance {
    Found(CovarianceFamily),
    NotFound(NotFound),
}

/// `rho Ad_{u_g} = Ad_{u^rho_g} rho`, compared on generator words.
pub fn verify_covariance(net: &MatrixNet, data: &SectorGroupData, rho: &LocalizedEndo, fam: &CovarianceFamily) -> bool {
    fam.unitaries.len() == data.order()
        && (0..data.order()).all(|g| {
            generator_words(net).iter().all(|a| {
                let lhs = rho.apply(net, &data.unitaries[g].ad(a));
                let rhs = rho.apply(net, a).map(|x| fam.unitaries[g].ad(&x));
                matches!((lhs, rhs), (Ok(x), Ok(y)) if x == y)
            })
        })
}

/// Inner sectors get `u u_g u*`. Otherwise a trace obstruction is tried
/// first, then the linear system `rho(Ad_{u_g} a) X = X rho(a)` is solved
/// and its basis solutions are tested for unitarity.
pub fn find_covariance(net: &MatrixNet, data: &SectorGroupData, rho: &LocalizedEndo) -> Covariance {
    if let Endo::Inner(u) = &rho.endo {
        let unitaries = data.unitaries.iter().map(|ug| u.mul(ug).mul(&u.adjoint())).collect();
        let fam = CovarianceFamily { sector: rho.name.clone(), unitaries };
        debug_assert!(verify_covariance(net, data, rho, &fam));
        return Covariance::Found(fam);
    }
    let n = net.hilbert_dim();
    let mut unitaries = Vec::with_capacity(data.order());
    for g in 0..data.order() {
        let ug = &data.unitaries[g];
        let gname = data.name(g).to_string();
        for b in net.global().basis() {
            let (Ok(x), Ok(y)) = (rho.apply(net, &ug.ad(b)), rho.apply(net, b)) else { continue };
            let (tx, ty) = (x.trace(), y.trace());
            if tx != ty {
                return Covariance::NotFound(NotFound::TraceMismatch {
                    group_element: gname,
                    element: label(net, b),
                    traces: [tx.to_string(), ty.to_string()],
                });
            }
        }
        let mut rows: Vec<SparseVec> = Vec::new();
        for a in generator_words(net) {
            let (Ok(left), Ok(right)) = (rho.apply(net, &ug.ad(&a)), rho.apply(net, &a)) else { continue };
            rows.extend(sylvester_rows(n, &left, &right));
        }
        let sols = null_space(&rows, n * n);
        if sols.is_empty() {
            return Covariance::NotFound(NotFound::NoSolution { group_element: gname });
        }
        // the identity and u_g are tried before the basis solutions, since a
        // null-space basis of matrix units rarely contains a unitary
        let solves = |m: &Matrix| {
            let v = m.to_vec();
            let mut e = crate::linalg::Echelon::new();
            sols.iter().for_each(|s| {
                e.insert(s);
            });
            e.contains(&v)
        };
        let found = [Matrix::identity(n), ug.matrix().clone()]
            .into_iter()
            .filter(|m| solves(m))
            .chain(sols.iter().map(|v| Matrix::from_vec(n, v)))
            .filter(|m| !m.is_zero())
            .find_map(|m| Unitary::new(m).ok());
        match found {
            Some(w) => unitaries.push(w),
            None => {
                return Covariance::NotFound(NotFound::NoUnitarySolution {
                    group_element: gname,
                    solution_dim: sols.len(),
                })
            }
        }
    }
    Covariance::Found(CovarianceFamily { sector: rho.name.clone(), unitaries })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub passed: bool,
    pub steps: Vec<Check>,
}

/// `u^{rho⋄rhodot}_g = u^rho_g rho(u_g* u^rhodot_g)`, with the chain
///
/// ```text
/// rho rhodot (Ad_{u_g} a) = rho (Ad_{u^rhodot_g} rhodot(a))
///                         = Ad_{u^rho_g} rho (Ad_{u_g*} Ad_{u^rhodot_g} rhodot(a))
///                         = Ad_{u^{rho⋄rhodot}_g} (rho rhodot(a))
/// ```
///
/// checked link by link on generator words.
pub fn diamond_covariance(
    net: &MatrixNet,
    data: &SectorGroupData,
    rho: &LocalizedEndo,
    rhodot: &LocalizedEndo,
    fam: &CovarianceFamily,
    famdot: &CovarianceFamily,
) -> Result<(CovarianceFamily, ChainReport), SectorError> {
    let v = net
        .join(rho.region, rhodot.region)
        .ok_or_else(|| SectorError::NoCommonRegion(rho.label(net), rhodot.label(net)))?;
    let prod = diamond_in(net, rho, rhodot, Some(v))?;
    let mut unitaries = Vec::with_capacity(data.order());
    let (mut l1, mut l2, mut l3) = (true, true, true);
    for g in 0..data.order() {
        let ug = &data.unitaries[g];
        let (ur, ud) = (&fam.unitaries[g], &famdot.unitaries[g]);
        let inner = ug.matrix().adjoint().mul(ud.matrix());
        let w = Unitary::new(ur.matrix().mul(&rho.apply(net, &inner)?))?;
        for a in generator_words(net) {
            let s0 = prod.apply(net, &ug.ad(&a))?;
            let rd = rhodot.apply(net, &a)?;
            let s1 = rho.apply(net, &ud.ad(&rd))?;
            let s2 = ur.ad(&rho.apply(net, &ug.adjoint().ad(&ud.ad(&rd)))?);
            let s3 = w.ad(&prod.apply(net, &a)?);
            l1 &= s0 == s1;
            l2 &= s1 == s2;
            l3 &= s2 == s3;
        }
        unitaries.push(w);
    }
    let steps = vec![
        Check::new("second_factor_covariance", l1),
        Check::new("first_factor_covariance", l2),
        Check::new("composite_conjugation", l3),
    ];
    let passed = steps.iter().all(|c| c.passed);
    Ok((CovarianceFamily { sector: prod.name, unitaries }, ChainReport { passed, steps }))
}

/// `Ad` maps of two families agree for every group element.
pub fn same_family(net: &MatrixNet, a: &CovarianceFamily, b: &CovarianceFamily) -> bool {
    a.unitaries.len() == b.unitaries.len()
        && a.unitaries.iter().zip(&b.unitaries).all(|(x, y)| Endo::Inner(x.clone()).same(&Endo::Inner(y.clone()), net))
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub valid: bool,
    pub symmetry: ValidationReport,
    pub action_laws: ValidationReport,
    pub covariance: Vec<Check>,
    pub composites: Vec<Check>,
}

/// Everything the group layer promises, over a family of sectors: the
/// implementation check, the action laws, a verified covariance family for
/// every member, and verified composite families for every pair with a
/// common superregion.
pub fn check_equivariance(net: &MatrixNet, data: &SectorGroupData, family: &[LocalizedEndo]) -> EquivarianceReport {
    let symmetry = check_symmetry_implementation(net, data);
    let action_laws = check_action_laws(net, data, family);
    let mut covariance = Vec::new();
    let mut fams = Vec::new();
    for rho in family {
        match find_covariance(net, data, rho) {
            Covariance::Found(f) => {
                let ok = verify_covariance(net, data, rho, &f);
                covariance.push(Check::new(&rho.label(net), ok));
                fams.push(Some(f));
            }
            Covariance::NotFound(why) => {
                covariance.push(Check::new(&rho.label(net), false).with_detail(format!("{why:?}")));
                fams.push(None);
            }
        }
    }
    let mut composites = Vec::new();
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            let (Some(fa), Some(fb)) = (&fams[i], &fams[j]) else { continue };
            if net.join(a.region, b.region).is_none() {
                continue;
            }
            let name = format!("{}⋄{}", a.label(net), b.label(net));
            let ok = match diamond_covariance(net, data, a, b, fa, fb) {
                Ok((fam, chain)) => {
                    let prod = diamond_in(net, a, b, net.join(a.region, b.region)).expect("join exists");
                    chain.passed && verify_covariance(net, data, &prod, &fam)
                }
                Err(_) => false,
            };
            composites.push(Check::new(&name, ok));
        }
    }
    let valid = symmetry.valid
        && action_laws.valid
        && covariance.iter().all(|c| c.passed)
        && composites.iter().all(|c| c.passed);
    EquivarianceReport { valid, symmetry, action_laws, covariance, composites }
}

/// Three-site chain with diagonal local algebras and the mirror symmetry,
/// together with the sector `f -> f(0, b2, b3)` localized at site 1. The
/// sector is not covariant: the mirror would have to carry it to a sector
/// that forgets site 3 instead.
pub fn collapse_example() -> (MatrixNet, LocalizedEndo) {
    let net = MatrixNet::interval_chain(3, 2, super::net::LocalKind::Diagonal)
        .expect("diagonal chain")
        .with_symmetry(super::net::reflection(3))
        .expect("mirror");
    let d = net.local_dim();
    let endo = Endo::pullback(&net, |j| {
        let mut digits = super::net::to_digits(j, 3, d);
        digits[0] = 0;
        super::net::from_digits(&digits, d)
    })
    .expect("diagonal net");
    let rho = LocalizedEndo::declare("collapse1", net.region("[1,1]").expect("site region"), endo);
    (net, rho)
}

/// Whether `fam` is the reference family `u_g` up to phase.
pub fn is_identity_family(net: &MatrixNet, data: &SectorGroupData, fam: &CovarianceFamily) -> bool {
    let reference = CovarianceFamily { sector: String::new(), unitaries: data.unitaries.clone() };
    same_family(net, fam, &reference)
}
