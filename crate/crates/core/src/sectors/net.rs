//! Nets of matrix algebras over a thin category of site regions, with the
//! vacuum taken to be the identity representation on `(C^d)^{⊗L}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::linalg::Echelon;
use crate::matrix::{pauli, Matrix};
use crate::orthogonal::{FiniteGroup, GroupAction, GroupJson, ObjId, OrthCategory, OrthFunctor};
use crate::report::{ValidationReport, Violation, ViolationLog};

use super::algebra::{bicommutant, commutant, commutant_of, MatrixAlg};
use super::SectorError;

/// Which single-site operators a region's algebra is built from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalKind {
    #[default]
    Full,
    Diagonal,
}

/// Generators of `M_d` (or of its diagonal) acting on one site.
pub fn local_generators(d: usize, kind: LocalKind) -> Vec<Matrix> {
    let clock = {
        let mut m = Matrix::zeros(d);
        for i in 1..d {
            m = m.add(&Matrix::unit(d, i, i).scale(&crate::GaussQ::from_ints(i as i64, 0)));
        }
        m
    };
    match (d, kind) {
        (2, LocalKind::Full) => vec![pauli::x(), pauli::z()],
        (2, LocalKind::Diagonal) => vec![pauli::z()],
        (_, LocalKind::Full) => {
            let mut shift = Matrix::zeros(d);
            for i in 0..d {
                shift = shift.add(&Matrix::unit(d, (i + 1) % d, i));
            }
            vec![shift, clock]
        }
        (_, LocalKind::Diagonal) => vec![clock],
    }
}

#[derive(Clone, Debug)]
pub struct Region {
    pub name: String,
    /// 1-based site labels, sorted.
    pub sites: Vec<usize>,
    pub kind: LocalKind,
    /// `(site, local operator)` pairs whose embeddings generate the algebra.
    pub site_generators: Vec<(usize, Matrix)>,
}

/// Site relabelings implementing a finite group action on the net.
#[derive(Clone, Debug)]
pub struct NetSymmetry {
    pub group: FiniteGroup,
    /// `site_maps[g][s - 1]` is the image of site `s`.
    pub site_maps: Vec<Vec<usize>>,
    /// Overrides the site-permutation unitaries when present.
    pub unitaries: Option<Vec<Matrix>>,
}

#[derive(Clone, Debug)]
pub struct MatrixNet {
    sites: usize,
    local_dim: usize,
    n: usize,
    category: OrthCategory,
    regions: Vec<Region>,
    algebras: Vec<MatrixAlg>,
    global: MatrixAlg,
    symmetry: Option<NetSymmetry>,
    coords: OnceLock<Echelon>,
    commutants: Vec<OnceLock<MatrixAlg>>,
    bicommutants: Vec<OnceLock<MatrixAlg>>,
    global_commutant: OnceLock<MatrixAlg>,
}

/// `op` acting on `site` (1-based; site 1 is the most significant factor).
pub fn embed(sites: usize, d: usize, site: usize, op: &Matrix) -> Matrix {
    let mut m = Matrix::identity(1);
    for s in 1..=sites {
        m = if s == site { m.kron(op) } else { m.kron(&Matrix::identity(d)) };
    }
    m
}

/// Permutation of tensor factors sending the factor at site `s` to site
/// `map[s - 1]`, so that `P (a at s) P* = a at map[s - 1]`.
pub fn site_permutation(sites: usize, d: usize, map: &[usize]) -> Matrix {
    let n = d.pow(sites as u32);
    let mut p = Matrix::zeros(n);
    for i in 0..n {
        let digits = to_digits(i, sites, d);
        let mut out = vec![0; sites];
        for s in 0..sites {
            out[map[s] - 1] = digits[s];
        }
        p = p.add(&Matrix::unit(n, from_digits(&out, d), i));
    }
    p
}

pub fn to_digits(mut i: usize, sites: usize, d: usize) -> Vec<usize> {
    let mut v = vec![0; sites];
    for s in (0..sites).rev() {
        v[s] = i % d;
        i /= d;
    }
    v
}

pub fn from_digits(v: &[usize], d: usize) -> usize {
    v.iter().fold(0, |acc, x| acc * d + x)
}

pub struct RegionSpec {
    pub name: String,
    pub sites: Vec<usize>,
    pub kind: LocalKind,
}

impl MatrixNet {
    /// Regions ordered by site-set inclusion; `orth` lists declared
    /// orthogonal region pairs (closed downward), and defaults to site
    /// disjointness.
    pub fn new(
        sites: usize,
        local_dim: usize,
        specs: Vec<RegionSpec>,
        orth: Option<Vec<(String, String)>>,
    ) -> Result<Self, SectorError> {
        if sites == 0 || local_dim < 2 {
            return Err(SectorError::BadNet("need at least one site of dimension at least 2".into()));
        }
        let n = local_dim
            .checked_pow(sites as u32)
            .filter(|&n| n <= 4096)
            .ok_or_else(|| SectorError::BadNet("Hilbert space too large".into()))?;
        let mut seen = BTreeMap::new();
        let mut regions = Vec::with_capacity(specs.len());
        for (k, s) in specs.into_iter().enumerate() {
            if seen.insert(s.name.clone(), k).is_some() {
                return Err(SectorError::BadNet(format!("duplicate region {:?}", s.name)));
            }
            let mut st = s.sites.clone();
            st.sort_unstable();
            st.dedup();
            if st.iter().any(|&x| x == 0 || x > sites) {
                return Err(SectorError::BadNet(format!("region {:?} has a site outside 1..={sites}", s.name)));
            }
            let site_generators =
                st.iter().flat_map(|&x| local_generators(local_dim, s.kind).into_iter().map(move |g| (x, g))).collect();
            regions.push(Region { name: s.name, sites: st, kind: s.kind, site_generators });
        }
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
        let declared: Option<Vec<(usize, usize)>> = match orth {
            None => None,
            Some(pairs) => Some(
                pairs
                    .iter()
                    .map(|(a, b)| {
                        let ia = seen.get(a).ok_or_else(|| SectorError::UnknownRegion(a.clone()))?;
                        let ib = seen.get(b).ok_or_else(|| SectorError::UnknownRegion(b.clone()))?;
                        Ok((*ia, *ib))
                    })
                    .collect::<Result<_, SectorError>>()?,
            ),
        };
        let names: Vec<String> = regions.iter().map(|r| r.name.clone()).collect();
        let leq = |i: usize, j: usize| subset(&regions[i].sites, &regions[j].sites);
        let disjoint = |i: usize, j: usize| match &declared {
            None => regions[i].sites.iter().all(|x| !regions[j].sites.contains(x)),
            Some(d) => d.iter().any(|&(a, b)| (leq(i, a) && leq(j, b)) || (leq(i, b) && leq(j, a))),
        };
        let category = OrthCategory::thin(names, leq, disjoint);
        let embed_all = |r: &Region| -> Vec<Matrix> {
            r.site_generators.iter().map(|(s, g)| embed(sites, local_dim, *s, g)).collect()
        };
        let algebras: Vec<MatrixAlg> = regions.iter().map(|r| MatrixAlg::generated_by(n, embed_all(r))).collect();
        let mut all: Vec<Matrix> = Vec::new();
        for r in &regions {
            for g in embed_all(r) {
                if !all.contains(&g) {
                    all.push(g);
                }
            }
        }
        let global = MatrixAlg::generated_by(n, all);
        let k = regions.len();
        Ok(MatrixNet {
            sites,
            local_dim,
            n,
            category,
            regions,
            algebras,
            global,
            symmetry: None,
            coords: OnceLock::new(),
            commutants: (0..k).map(|_| OnceLock::new()).collect(),
            bicommutants: (0..k).map(|_| OnceLock::new()).collect(),
            global_commutant: OnceLock::new(),
        })
    }

    /// All intervals of a chain, in the order of the bundled interval
    /// category, each carrying the full (or diagonal) tensor factor.
    pub fn interval_chain(sites: usize, local_dim: usize, kind: LocalKind) -> Result<Self, SectorError> {
        let specs = (1..=sites)
            .flat_map(|a| (a..=sites).map(move |b| (a, b)))
            .map(|(a, b)| RegionSpec { name: format!("[{a},{b}]"), sites: (a..=b).collect(), kind })
            .collect();
        Self::new(sites, local_dim, specs, None)
    }

    /// Qubit chain with full local algebras and the mirror symmetry.
    pub fn qubit_chain(sites: usize) -> Self {
        Self::interval_chain(sites, 2, LocalKind::Full)
            .expect("qubit chain")
            .with_symmetry(reflection(sites))
            .expect("mirror maps intervals to intervals")
    }

    /// Replaces one region's algebra by its diagonal subalgebra.
    pub fn with_diagonal_region(mut self, region: &str) -> Result<Self, SectorError> {
        let o = self.region(region)?;
        let r = &mut self.regions[o];
        r.kind = LocalKind::Diagonal;
        r.site_generators = r
            .sites
            .iter()
            .flat_map(|&x| local_generators(self.local_dim, LocalKind::Diagonal).into_iter().map(move |g| (x, g)))
            .collect();
        let gens = self.region_generators(o);
        self.algebras[o] = MatrixAlg::generated_by(self.n, gens);
        self.commutants[o] = OnceLock::new();
        self.bicommutants[o] = OnceLock::new();
        Ok(self)
    }

    pub fn with_symmetry(mut self, sym: NetSymmetry) -> Result<Self, SectorError> {
        if sym.site_maps.len() != sym.group.order() {
            return Err(SectorError::BadNet("one site map per group element required".into()));
        }
        for m in &sym.site_maps {
            let mut sorted = m.clone();
            sorted.sort_unstable();
            if sorted != (1..=self.sites).collect::<Vec<_>>() {
                return Err(SectorError::BadNet(format!("site map {m:?} is not a permutation")));
            }
        }
        if let Some(us) = &sym.unitaries {
            if us.len() != sym.group.order() || us.iter().any(|u| u.dim() != self.n) {
                return Err(SectorError::BadNet("one implementing unitary of full size per group element".into()));
            }
        }
        // the region action must exist before anything else uses it
        self.symmetry = Some(sym);
        self.region_action()?;
        Ok(self)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Dimension of the vacuum Hilbert space.
    pub fn hilbert_dim(&self) -> usize {
        self.n
    }

    pub fn category(&self) -> &OrthCategory {
        &self.category
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region(&self, name: &str) -> Result<ObjId, SectorError> {
        self.category.object(name).ok_or_else(|| SectorError::UnknownRegion(name.to_string()))
    }

    pub fn region_name(&self, o: ObjId) -> &str {
        self.category.object_name(o)
    }

    pub fn algebra(&self, o: ObjId) -> &MatrixAlg {
        &self.algebras[o]
    }

    pub fn global(&self) -> &MatrixAlg {
        &self.global
    }

    pub fn symmetry(&self) -> Option<&NetSymmetry> {
        self.symmetry.as_ref()
    }

    pub fn region_generators(&self, o: ObjId) -> Vec<Matrix> {
        self.regions[o].site_generators.iter().map(|(s, g)| self.embed(*s, g)).collect()
    }

    pub fn embed(&self, site: usize, op: &Matrix) -> Matrix {
        embed(self.sites, self.local_dim, site, op)
    }

    pub fn leq(&self, a: ObjId, b: ObjId) -> bool {
        !self.category.hom(a, b).is_empty()
    }

    pub fn orthogonal(&self, a: ObjId, b: ObjId) -> bool {
        self.category.objects_orthogonal(a, b)
    }

    /// Regions orthogonal to `o`.
    pub fn complement(&self, o: ObjId) -> Vec<ObjId> {
        (0..self.category.num_objects()).filter(|&u| self.orthogonal(o, u)).collect()
    }

    /// Smallest region containing both, if unique.
    pub fn join(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        let ups: Vec<ObjId> = (0..self.category.num_objects()).filter(|&v| self.leq(a, v) && self.leq(b, v)).collect();
        ups.iter().copied().find(|&v| ups.iter().all(|&w| self.leq(v, w)))
    }

    pub fn commutant(&self, o: ObjId) -> &MatrixAlg {
        self.commutants[o].get_or_init(|| commutant(&self.algebras[o]))
    }

    pub fn bicommutant(&self, o: ObjId) -> &MatrixAlg {
        self.bicommutants[o].get_or_init(|| bicommutant(&self.algebras[o]))
    }

    /// Centre-like test set for comparing inner endomorphisms: `Ad_u = Ad_w`
    /// on the global algebra iff `w* u` lies here.
    pub fn global_commutant(&self) -> &MatrixAlg {
        self.global_commutant.get_or_init(|| commutant(&self.global))
    }

    /// Echelon over the global basis tracking coordinates, for evaluating
    /// endomorphisms given by basis images.
    pub fn coordinates(&self) -> &Echelon {
        self.coords.get_or_init(|| {
            let mut e = Echelon::with_coordinates();
            for b in self.global.basis() {
                e.insert(&b.to_vec());
            }
            e
        })
    }

    /// The group action on regions induced by the site maps.
    pub fn region_action(&self) -> Result<GroupAction, SectorError> {
        let sym = self.symmetry.as_ref().ok_or(SectorError::NoSymmetry)?;
        let c = &self.category;
        let mut functors = Vec::with_capacity(sym.group.order());
        for map in &sym.site_maps {
            let objects: Vec<ObjId> = (0..c.num_objects())
                .map(|o| {
                    let mut img: Vec<usize> = self.regions[o].sites.iter().map(|&s| map[s - 1]).collect();
                    img.sort_unstable();
                    self.regions
                        .iter()
                        .position(|r| r.sites == img)
                        .ok_or_else(|| SectorError::BadNet(format!("image of {} is not a region", c.object_name(o))))
                })
                .collect::<Result<_, _>>()?;
            let morphisms = (0..c.num_morphisms())
                .map(|f| {
                    c.hom(objects[c.src(f)], objects[c.tgt(f)])
                        .first()
                        .copied()
                        .ok_or_else(|| SectorError::BadNet("site map does not preserve inclusions".into()))
                })
                .collect::<Result<_, _>>()?;
            functors.push(OrthFunctor { objects, morphisms });
        }
        Ok(GroupAction { group: sym.group.clone(), functors })
    }

    /// Unitaries `u_g`: explicit overrides or the site permutations.
    pub fn implementing_unitaries(&self) -> Result<Vec<Matrix>, SectorError> {
        let sym = self.symmetry.as_ref().ok_or(SectorError::NoSymmetry)?;
        Ok(match &sym.unitaries {
            Some(us) => us.clone(),
            None => sym.site_maps.iter().map(|m| site_permutation(self.sites, self.local_dim, m)).collect(),
        })
    }

    pub fn to_json(&self) -> NetJson {
        let c = &self.category;
        let default_orth = MatrixNet::new(
            self.sites,
            self.local_dim,
            self.regions
                .iter()
                .map(|r| RegionSpec { name: r.name.clone(), sites: r.sites.clone(), kind: r.kind })
                .collect(),
            None,
        )
        .map(|d| {
            (0..c.num_objects()).all(|a| (0..c.num_objects()).all(|b| d.orthogonal(a, b) == self.orthogonal(a, b)))
        })
        .unwrap_or(false);
        let orth = (!default_orth).then(|| {
            let mut v = Vec::new();
            for a in 0..c.num_objects() {
                for b in a..c.num_objects() {
                    if self.orthogonal(a, b) {
                        v.push((c.object_name(a).to_string(), c.object_name(b).to_string()));
                    }
                }
            }
            v
        });
        NetJson {
            sites: self.sites,
            local_dim: self.local_dim,
            regions: self
                .regions
                .iter()
                .map(|r| RegionJson { id: r.name.clone(), sites: r.sites.clone(), algebra: r.kind })
                .collect(),
            orth,
            symmetry: self.symmetry.as_ref().map(|s| SymmetryJson {
                group: GroupJson::from_group(&s.group),
                site_maps: s.group.names().iter().cloned().zip(s.site_maps.iter().cloned()).collect(),
                unitaries: s
                    .unitaries
                    .as_ref()
                    .map(|us| s.group.names().iter().cloned().zip(us.iter().cloned()).collect()),
            }),
        }
    }

    pub fn from_json(j: &NetJson) -> Result<Self, SectorError> {
        let specs = j
            .regions
            .iter()
            .map(|r| RegionSpec { name: r.id.clone(), sites: r.sites.clone(), kind: r.algebra })
            .collect();
        let net = MatrixNet::new(j.sites, j.local_dim, specs, j.orth.clone())?;
        match &j.symmetry {
            None => Ok(net),
            Some(s) => {
                let group = s.group.to_group().map_err(|e| SectorError::BadNet(e.to_string()))?;
                let lookup = |g: &str| s.site_maps.get(g).cloned();
                let site_maps = group
                    .names()
                    .iter()
                    .map(|g| lookup(g).ok_or_else(|| SectorError::BadNet(format!("no site map for {g:?}"))))
                    .collect::<Result<_, _>>()?;
                let unitaries = match &s.unitaries {
                    None => None,
                    Some(us) => Some(
                        group
                            .names()
                            .iter()
                            .map(|g| {
                                us.get(g).cloned().ok_or_else(|| SectorError::BadNet(format!("no unitary for {g:?}")))
                            })
                            .collect::<Result<_, _>>()?,
                    ),
                };
                net.with_symmetry(NetSymmetry { group, site_maps, unitaries })
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, SectorError> {
        let j: NetJson = serde_json::from_str(s).map_err(|e| SectorError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

/// Mirror `s -> L + 1 - s` as a Z2 symmetry.
pub fn reflection(sites: usize) -> NetSymmetry {
    NetSymmetry {
        group: FiniteGroup::z2(),
        site_maps: vec![(1..=sites).collect(), (1..=sites).rev().collect()],
        unitaries: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionJson {
    pub id: String,
    pub sites: Vec<usize>,
    #[serde(default)]
    pub algebra: LocalKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryJson {
    pub group: GroupJson,
    pub site_maps: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitaries: Option<BTreeMap<String, Matrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetJson {
    pub sites: usize,
    pub local_dim: usize,
    pub regions: Vec<RegionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orth: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaagReport {
    pub region: String,
    pub holds: bool,
    /// Empty complement: the duality statement has nothing to compare.
    pub no_complement: bool,
    pub orthogonal_regions: Vec<String>,
    pub bicommutant_dim: usize,
    pub dual_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Compares `A(U)''` with the intersection of the commutants of all
/// orthogonal `A(U')`, which is the commutant of their joint generators.
pub fn check_haag_duality(net: &MatrixNet, o: ObjId) -> HaagReport {
    let region = net.region_name(o).to_string();
    let comp = net.complement(o);
    let names: Vec<String> = comp.iter().map(|&u| net.region_name(u).to_string()).collect();
    if comp.is_empty() {
        return HaagReport {
            region,
            holds: false,
            no_complement: true,
            orthogonal_regions: names,
            bicommutant_dim: net.bicommutant(o).dim(),
            dual_dim: 0,
            detail: Some("no orthogonal region: the complement assumption fails here".into()),
        };
    }
    let bic = net.bicommutant(o);
    let mut gens: Vec<Matrix> = Vec::new();
    for &u in &comp {
        for g in net.algebra(u).generators() {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
    }
    let dual = commutant_of(net.hilbert_dim(), &gens);
    let holds = bic.same_span(&dual);
    let detail = (!holds).then(|| {
        if bic.dim() != dual.dim() {
            format!("dimension mismatch: {} vs {}", bic.dim(), dual.dim())
        } else {
            "equal dimensions but different spans".to_string()
        }
    });
    HaagReport {
        region,
        holds,
        no_complement: false,
        orthogonal_regions: names,
        bicommutant_dim: bic.dim(),
        dual_dim: dual.dim(),
        detail,
    }
}

/// Basis elements of orthogonal regions commute.
pub fn check_perp_commutativity(net: &MatrixNet) -> ValidationReport {
    let c = net.category();
    let mut log = ViolationLog::default();
    for a in 0..c.num_objects() {
        for b in a..c.num_objects() {
            if !net.orthogonal(a, b) {
                continue;
            }
            for x in net.algebra(a).basis() {
                for y in net.algebra(b).basis() {
                    log.check(x.commutes_with(y), || {
                        Violation::new(
                            "perp_commutativity",
                            vec![c.object_name(a).to_string(), c.object_name(b).to_string()],
                        )
                        .with_detail(format!("basis elements fail to commute: {x:?} and {y:?}"))
                    });
                }
            }
        }
    }
    log.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sectors::algebra::commutant;

    #[test]
    fn qubit_net_shape() {
        let net = MatrixNet::qubit_chain(4);
        assert_eq!(net.category().num_objects(), 10);
        assert_eq!(net.global().dim(), 256);
        let o = net.region("[2,3]").unwrap();
        assert_eq!(net.algebra(o).dim(), 16);
        assert_eq!(net.complement(o).len(), 2);
        assert_eq!(net.join(net.region("[1,1]").unwrap(), net.region("[3,3]").unwrap()), net.region("[1,3]").ok());
    }

    #[test]
    fn site_permutation_moves_operators() {
        let p = site_permutation(3, 2, &[3, 2, 1]);
        assert!(p.is_unitary());
        let x1 = embed(3, 2, 1, &pauli::x());
        let x3 = embed(3, 2, 3, &pauli::x());
        assert_eq!(p.mul(&x1).mul(&p.adjoint()), x3);
        let cyc = site_permutation(3, 3, &[2, 3, 1]);
        let m = local_generators(3, LocalKind::Full)[0].clone();
        assert_eq!(cyc.mul(&embed(3, 3, 1, &m)).mul(&cyc.adjoint()), embed(3, 3, 2, &m));
    }

    #[test]
    fn commutant_of_middle_pair() {
        let net = MatrixNet::qubit_chain(4);
        let o = net.region("[2,3]").unwrap();
        let c = commutant(net.algebra(o));
        // M2 (x) 1 (x) 1 (x) M2: Pauli strings supported on sites 1 and 4
        assert_eq!(c.dim(), 16);
        assert!(c.contains(&net.embed(1, &pauli::y()).mul(&net.embed(4, &pauli::x()))));
        assert!(!c.contains(&net.embed(2, &pauli::z())));
    }

    #[test]
    fn haag_duality_examples() {
        let net = MatrixNet::qubit_chain(4);
        for r in ["[2,3]", "[1,1]", "[4,4]"] {
            let h = check_haag_duality(&net, net.region(r).unwrap());
            assert!(h.holds, "{h:?}");
        }
        let whole = check_haag_duality(&net, net.region("[1,4]").unwrap());
        assert!(whole.no_complement && !whole.holds);
        let broken = MatrixNet::qubit_chain(4).with_diagonal_region("[2,3]").unwrap();
        let h = check_haag_duality(&broken, broken.region("[2,3]").unwrap());
        assert!(!h.holds);
        assert_eq!((h.bicommutant_dim, h.dual_dim), (4, 16));
        assert!(h.detail.unwrap().contains("dimension mismatch"));
    }

    #[test]
    fn perp_commutativity_examples() {
        assert!(check_perp_commutativity(&MatrixNet::qubit_chain(4)).valid);
        let specs = |_: ()| {
            vec![
                RegionSpec { name: "a".into(), sites: vec![1, 2], kind: LocalKind::Full },
                RegionSpec { name: "b".into(), sites: vec![2, 3], kind: LocalKind::Full },
                RegionSpec { name: "all".into(), sites: vec![1, 2, 3], kind: LocalKind::Full },
            ]
        };
        let bad = MatrixNet::new(3, 2, specs(()), Some(vec![("a".into(), "b".into())])).unwrap();
        let r = check_perp_commutativity(&bad);
        assert!(!r.valid);
        assert_eq!(r.violations[0].witness, vec!["a".to_string(), "b".to_string()]);
        let none = MatrixNet::new(3, 2, specs(()), None).unwrap();
        let r = check_perp_commutativity(&none);
        assert!(r.valid && r.checked == 0);
    }

    #[test]
    fn json_round_trip() {
        let net = MatrixNet::qubit_chain(3).with_diagonal_region("[1,1]").unwrap();
        let j = net.to_json();
        assert!(j.orth.is_none());
        let s = serde_json::to_string(&j).unwrap();
        let back = MatrixNet::from_json_str(&s).unwrap();
        assert_eq!(back.to_json(), j);
        assert_eq!(back.algebra(back.region("[1,1]").unwrap()).dim(), 2);
        assert!(MatrixNet::from_json_str(r#"{"sites":2,"local_dim":2,"regions":[{"id":"x","sites":[3]}]}"#).is_err());
    }
}
