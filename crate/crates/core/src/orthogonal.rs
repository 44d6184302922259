//! Finite orthogonal categories, orthogonal functors and group actions.
//!
//! An orthogonal category is a small category together with a set of
//! orthogonal cospans `(f1: U1 -> V, f2: U2 -> V)` that is symmetric and
//! stable under post-composition on the shared target and pre-composition on
//! either leg.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::report::{ValidationReport, Violation, ViolationLog};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate object {0:?}")]
    DuplicateObject(String),
    #[error("duplicate morphism {0:?}")]
    DuplicateMorphism(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("object {0:?} has no identity")]
    MissingIdentity(String),
    #[error("composition entry {g:?} o {f:?} is not composable")]
    NotComposable { g: String, f: String },
    #[error("conflicting composition entries for {g:?} o {f:?}")]
    ConflictingComposite { g: String, f: String },
    #[error("malformed group: {0}")]
    Group(String),
    #[error("malformed functor: {0}")]
    Functor(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone)]
pub struct OrthCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    /// Dense table indexed `g * m + f`, holding `g o f` when present.
    compose: Vec<Option<MorId>>,
    orth: HashSet<(MorId, MorId)>,
    orth_list: Vec<(MorId, MorId)>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
}

impl OrthCategory {
    /// Builds a category from named parts. Only schema-level errors are
    /// reported here; axioms are checked by [`validate_category`].
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        compose: Vec<(String, String, String)>,
        identities: Vec<(String, String)>,
        orth: Vec<(String, String)>,
    ) -> Result<Self, CategoryError> {
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(CategoryError::DuplicateObject(o.clone()));
            }
        }
        let obj = |s: &str| obj_index.get(s).copied().ok_or_else(|| CategoryError::UnknownObject(s.to_string()));
        let mut mors = Vec::with_capacity(morphisms.len());
        let mut mor_index = HashMap::new();
        for (name, src, tgt) in &morphisms {
            if mor_index.insert(name.clone(), mors.len()).is_some() {
                return Err(CategoryError::DuplicateMorphism(name.clone()));
            }
            mors.push(Morphism { name: name.clone(), src: obj(src)?, tgt: obj(tgt)? });
        }
        let mor = |s: &str| mor_index.get(s).copied().ok_or_else(|| CategoryError::UnknownMorphism(s.to_string()));
        let m = mors.len();
        let mut table = vec![None; m * m];
        for (g, f, r) in &compose {
            let (gi, fi, ri) = (mor(g)?, mor(f)?, mor(r)?);
            if mors[fi].tgt != mors[gi].src {
                return Err(CategoryError::NotComposable { g: g.clone(), f: f.clone() });
            }
            match table[gi * m + fi] {
                Some(prev) if prev != ri => {
                    return Err(CategoryError::ConflictingComposite { g: g.clone(), f: f.clone() })
                }
                _ => table[gi * m + fi] = Some(ri),
            }
        }
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, i) in &identities {
            ids[obj(o)?] = mor(i)?;
        }
        if let Some(k) = ids.iter().position(|&i| i == usize::MAX) {
            return Err(CategoryError::MissingIdentity(objects[k].clone()));
        }
        let mut orth_set = HashSet::new();
        let mut orth_list = Vec::new();
        for (a, b) in &orth {
            let p = (mor(a)?, mor(b)?);
            if orth_set.insert(p) {
                orth_list.push(p);
            }
        }
        Ok(Self::assemble(objects, mors, ids, table, orth_set, orth_list, obj_index, mor_index))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        compose: Vec<Option<MorId>>,
        orth: HashSet<(MorId, MorId)>,
        mut orth_list: Vec<(MorId, MorId)>,
        obj_index: HashMap<String, ObjId>,
        mor_index: HashMap<String, MorId>,
    ) -> Self {
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        for (i, f) in morphisms.iter().enumerate() {
            outgoing[f.src].push(i);
            incoming[f.tgt].push(i);
            hom.entry((f.src, f.tgt)).or_default().push(i);
        }
        orth_list.sort_unstable();
        OrthCategory {
            objects,
            morphisms,
            identities,
            compose,
            orth,
            orth_list,
            obj_index,
            mor_index,
            outgoing,
            incoming,
            hom,
        }
    }

    /// Thin category on `objects` with a morphism `a -> b` whenever
    /// `leq(a, b)` (assumed reflexive and transitive) and with orthogonal
    /// cospans `(a -> c, b -> c)` whenever `disjoint(a, b)`.
    pub fn thin(
        objects: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        disjoint: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut arrow = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    arrow.insert((a, b), morphisms.len());
                    morphisms.push(Morphism { name: format!("{}<{}", objects[a], objects[b]), src: a, tgt: b });
                }
            }
        }
        let m = morphisms.len();
        let mut compose = vec![None; m * m];
        for (fi, f) in morphisms.iter().enumerate() {
            for &gi in arrow.iter().filter(|((s, _), _)| *s == f.tgt).map(|(_, g)| g) {
                let g = &morphisms[gi];
                compose[gi * m + fi] = arrow.get(&(f.src, g.tgt)).copied();
            }
        }
        let identities = (0..n).map(|a| arrow[&(a, a)]).collect();
        let mut orth = HashSet::new();
        for (fa, f) in morphisms.iter().enumerate() {
            for (fb, g) in morphisms.iter().enumerate() {
                if f.tgt == g.tgt && disjoint(f.src, g.src) {
                    orth.insert((fa, fb));
                }
            }
        }
        let orth_list = orth.iter().copied().collect();
        let obj_index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mor_index = morphisms.iter().enumerate().map(|(i, f)| (f.name.clone(), i)).collect();
        Self::assemble(objects, morphisms, identities, compose, orth, orth_list, obj_index, mor_index)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn mor(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: MorId) -> ObjId {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose[g * self.morphisms.len() + f]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn outgoing(&self, a: ObjId) -> &[MorId] {
        &self.outgoing[a]
    }

    pub fn incoming(&self, b: ObjId) -> &[MorId] {
        &self.incoming[b]
    }

    pub fn is_orth(&self, f1: MorId, f2: MorId) -> bool {
        self.orth.contains(&(f1, f2))
    }

    /// Orthogonal pairs in a fixed order.
    pub fn orth_pairs(&self) -> &[(MorId, MorId)] {
        &self.orth_list
    }

    /// Objects `a, b` admit an orthogonal cospan `(a -> V) ⊥ (b -> V)`.
    pub fn objects_orthogonal(&self, a: ObjId, b: ObjId) -> bool {
        self.orth_list.iter().any(|&(f, g)| self.src(f) == a && self.src(g) == b)
    }

    pub fn is_thin(&self) -> bool {
        self.hom.values().all(|h| h.len() <= 1)
    }

    /// Replaces the composition table entry for `g o f`. Intended for
    /// building deliberately corrupted inputs; it bypasses typing.
    pub fn set_composite_unchecked(&mut self, g: MorId, f: MorId, result: MorId) {
        let m = self.morphisms.len();
        self.compose[g * m + f] = Some(result);
    }

    pub fn remove_orth_pair(&mut self, f1: MorId, f2: MorId) {
        self.orth.remove(&(f1, f2));
        self.orth_list.retain(|&p| p != (f1, f2));
    }

    pub fn add_orth_pair(&mut self, f1: MorId, f2: MorId) {
        if self.orth.insert((f1, f2)) {
            self.orth_list.push((f1, f2));
            self.orth_list.sort_unstable();
        }
    }

    /// Smallest enlargement of the orthogonality relation that is symmetric
    /// and stable under pre- and post-composition.
    pub fn close_orth(&mut self) {
        let mut queue: Vec<(MorId, MorId)> = self.orth_list.clone();
        while let Some((f1, f2)) = queue.pop() {
            let mut next = vec![(f2, f1)];
            for &g in self.outgoing(self.tgt(f1)) {
                if let (Some(a), Some(b)) = (self.compose(g, f1), self.compose(g, f2)) {
                    next.push((a, b));
                }
            }
            for &h in self.incoming(self.src(f1)) {
                if let Some(a) = self.compose(f1, h) {
                    next.push((a, f2));
                }
            }
            for &h in self.incoming(self.src(f2)) {
                if let Some(b) = self.compose(f2, h) {
                    next.push((f1, b));
                }
            }
            for p in next {
                if self.orth.insert(p) {
                    self.orth_list.push(p);
                    queue.push(p);
                }
            }
        }
        self.orth_list.sort_unstable();
    }

    pub fn to_json(&self) -> CategoryJson {
        let m = self.morphisms.len();
        let mut compose = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(r) = self.compose[g * m + f] {
                    compose.push(ComposeEntry {
                        g: self.mor_name(g).to_string(),
                        f: self.mor_name(f).to_string(),
                        result: self.mor_name(r).to_string(),
                    });
                }
            }
        }
        CategoryJson {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|f| MorphismJson {
                    id: f.name.clone(),
                    src: self.objects[f.src].clone(),
                    tgt: self.objects[f.tgt].clone(),
                })
                .collect(),
            compose,
            orth: self
                .orth_list
                .iter()
                .map(|&(a, b)| [self.mor_name(a).to_string(), self.mor_name(b).to_string()])
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(o, &i)| (self.objects[o].clone(), self.mor_name(i).to_string()))
                .collect(),
        }
    }

    pub fn from_json(j: &CategoryJson) -> Result<Self, CategoryError> {
        Self::from_parts(
            j.objects.clone(),
            j.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect(),
            j.compose.iter().map(|c| (c.g.clone(), c.f.clone(), c.result.clone())).collect(),
            j.identities.iter().map(|(o, i)| (o.clone(), i.clone())).collect(),
            j.orth.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self, CategoryError> {
        let j: CategoryJson = serde_json::from_str(s).map_err(|e| CategoryError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeEntry {
    pub g: String,
    pub f: String,
    pub result: String,
}

/// On-disk category format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
    #[serde(default)]
    pub orth: Vec<[String; 2]>,
    pub identities: BTreeMap<String, String>,
}

fn names(c: &OrthCategory, fs: &[MorId]) -> Vec<String> {
    fs.iter().map(|&f| c.mor_name(f).to_string()).collect()
}

/// Checks the category axioms and the closure properties of the
/// orthogonality relation, exhaustively.
pub fn validate_category(c: &OrthCategory) -> ValidationReport {
    let mut log = ViolationLog::default();
    let m = c.num_morphisms();
    for o in 0..c.num_objects() {
        let id = c.identity(o);
        log.check(c.src(id) == o && c.tgt(id) == o, || {
            Violation::new("identity_typing", vec![c.object_name(o).to_string(), c.mor_name(id).to_string()])
        });
    }
    for f in 0..m {
        for &g in c.outgoing(c.tgt(f)) {
            match c.compose(g, f) {
                None => log.push(Violation::new("composition_total", names(c, &[g, f]))),
                Some(r) => log.check(c.src(r) == c.src(f) && c.tgt(r) == c.tgt(g), || {
                    Violation::new("composition_typing", names(c, &[g, f, r]))
                }),
            }
        }
        let (s, t) = (c.identity(c.src(f)), c.identity(c.tgt(f)));
        log.check(c.compose(f, s) == Some(f), || Violation::new("right_unit", names(c, &[f])));
        log.check(c.compose(t, f) == Some(f), || Violation::new("left_unit", names(c, &[f])));
    }
    for f in 0..m {
        for &g in c.outgoing(c.tgt(f)) {
            let Some(gf) = c.compose(g, f) else { continue };
            for &h in c.outgoing(c.tgt(g)) {
                let Some(hg) = c.compose(h, g) else { continue };
                let lhs = c.compose(hg, f);
                let rhs = c.compose(h, gf);
                log.check(lhs.is_some() && lhs == rhs, || Violation::new("associativity", names(c, &[h, g, f])));
            }
        }
    }
    for &(f1, f2) in c.orth_pairs() {
        log.check(c.tgt(f1) == c.tgt(f2), || Violation::new("orth_cospan", names(c, &[f1, f2])));
        log.check(c.is_orth(f2, f1), || Violation::new("orth_symmetric", names(c, &[f1, f2])));
        if c.tgt(f1) != c.tgt(f2) {
            continue;
        }
        for &g in c.outgoing(c.tgt(f1)) {
            let (a, b) = (c.compose(g, f1), c.compose(g, f2));
            log.check(matches!((a, b), (Some(a), Some(b)) if c.is_orth(a, b)), || {
                Violation::new("orth_postcomposition", names(c, &[g, f1, f2]))
            });
        }
        for &h in c.incoming(c.src(f1)) {
            let a = c.compose(f1, h);
            log.check(matches!(a, Some(a) if c.is_orth(a, f2)), || {
                Violation::new("orth_precomposition", names(c, &[f1, h, f2]))
            });
        }
        for &h in c.incoming(c.src(f2)) {
            let b = c.compose(f2, h);
            log.check(matches!(b, Some(b) if c.is_orth(f1, b)), || {
                Violation::new("orth_precomposition", names(c, &[f1, f2, h]))
            });
        }
    }
    log.finish()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FilteredFailure {
    Empty,
    NoCocone { objects: [String; 2] },
    NoCoequalizer { arrows: [String; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredReport {
    pub filtered: bool,
    pub thin: bool,
    pub failures: Vec<FilteredFailure>,
}

/// Filteredness. For thin categories this is directedness: every pair of
/// objects has an upper bound. Otherwise parallel pairs must also be
/// coequalised by some arrow. The empty category is not filtered.
pub fn check_filtered(c: &OrthCategory) -> FilteredReport {
    let n = c.num_objects();
    let thin = c.is_thin();
    let mut failures = Vec::new();
    if n == 0 {
        failures.push(FilteredFailure::Empty);
    }
    let reach: Vec<HashSet<ObjId>> = (0..n).map(|a| c.outgoing(a).iter().map(|&f| c.tgt(f)).collect()).collect();
    for a in 0..n {
        for b in a + 1..n {
            if reach[a].is_disjoint(&reach[b]) {
                failures.push(FilteredFailure::NoCocone {
                    objects: [c.object_name(a).to_string(), c.object_name(b).to_string()],
                });
            }
        }
    }
    if !thin {
        for (&(a, b), fs) in sorted_homs(c) {
            let _ = a;
            for (i, &f) in fs.iter().enumerate() {
                for &g in &fs[i + 1..] {
                    let ok =
                        c.outgoing(b).iter().any(|&h| c.compose(h, f).is_some() && c.compose(h, f) == c.compose(h, g));
                    if !ok {
                        failures.push(FilteredFailure::NoCoequalizer {
                            arrows: [c.mor_name(f).to_string(), c.mor_name(g).to_string()],
                        });
                    }
                }
            }
        }
    }
    FilteredReport { filtered: failures.is_empty(), thin, failures }
}

fn sorted_homs(c: &OrthCategory) -> Vec<(&(ObjId, ObjId), &Vec<MorId>)> {
    let mut v: Vec<_> = c.hom.iter().collect();
    v.sort_by_key(|(k, _)| **k);
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementEntry {
    pub object: String,
    /// `[U' -> V, U -> V]` when a complement exists.
    pub witness: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub holds: bool,
    pub entries: Vec<ComplementEntry>,
    pub failing: Vec<String>,
}

/// Every object admits an orthogonal cospan `(U' -> V) ⊥ (U -> V)`.
pub fn check_assumption_orthocomplement(c: &OrthCategory) -> ComplementReport {
    let mut witness: Vec<Option<[String; 2]>> = vec![None; c.num_objects()];
    for &(a, b) in c.orth_pairs() {
        let u = c.src(b);
        if witness[u].is_none() {
            witness[u] = Some([c.mor_name(a).to_string(), c.mor_name(b).to_string()]);
        }
    }
    let entries: Vec<ComplementEntry> = witness
        .into_iter()
        .enumerate()
        .map(|(o, w)| ComplementEntry { object: c.object_name(o).to_string(), witness: w })
        .collect();
    let failing: Vec<String> = entries.iter().filter(|e| e.witness.is_none()).map(|e| e.object.clone()).collect();
    ComplementReport { holds: failing.is_empty() && !entries.is_empty(), entries, failing }
}

/// Arrows of an extension diagram for an orthogonal cospan
/// `(U1 -> Ũ) ⊥ (U2 -> Ũ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDiagram {
    /// `Ũ -> W`
    pub outer: String,
    /// `V1 -> W`, `V2 -> W`
    pub legs: [String; 2],
    /// `U1 -> V1`, `U2 -> V2`
    pub into_legs: [String; 2],
    /// `U1' -> V1`, `U2' -> V2`
    pub complements: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionEntry {
    pub cospan: [String; 2],
    pub diagram: Option<ExtensionDiagram>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub holds: bool,
    pub checked: usize,
    pub entries: Vec<ExtensionEntry>,
    pub failing: Vec<[String; 2]>,
}

/// For every orthogonal cospan `(U1 -> Ũ) ⊥ (U2 -> Ũ)` search for
/// `k: Ũ -> W`, orthogonal legs `a: V1 -> W`, `b: V2 -> W`, arrows
/// `c: U1 -> V1`, `d: U2 -> V2` with `a c = k f1`, `b d = k f2`, and
/// complements `e: U1' -> V1 ⊥ c`, `e': U2' -> V2 ⊥ d` with
/// `a e ⊥ k` and `b e' ⊥ k`.
pub fn check_assumption_extension(c: &OrthCategory) -> ExtensionReport {
    let mut by_second: HashMap<MorId, Vec<MorId>> = HashMap::new();
    let mut by_target: HashMap<ObjId, Vec<(MorId, MorId)>> = HashMap::new();
    for &(a, b) in c.orth_pairs() {
        by_second.entry(b).or_default().push(a);
        by_target.entry(c.tgt(a)).or_default().push((a, b));
    }
    let none = Vec::new();
    let complement = |leg: MorId, into: MorId, k: MorId| -> Option<MorId> {
        by_second
            .get(&into)
            .unwrap_or(&none)
            .iter()
            .copied()
            .find(|&e| c.compose(leg, e).map(|ae| c.is_orth(ae, k)).unwrap_or(false))
    };
    let mut entries = Vec::new();
    let mut failing = Vec::new();
    for &(f1, f2) in c.orth_pairs() {
        if c.tgt(f1) != c.tgt(f2) {
            continue;
        }
        let mut found = None;
        'search: for &k in c.outgoing(c.tgt(f1)) {
            let (Some(kf1), Some(kf2)) = (c.compose(k, f1), c.compose(k, f2)) else { continue };
            for &(a, b) in by_target.get(&c.tgt(k)).unwrap_or(&Vec::new()) {
                for &cc in c.hom(c.src(f1), c.src(a)) {
                    if c.compose(a, cc) != Some(kf1) {
                        continue;
                    }
                    let Some(e1) = complement(a, cc, k) else { continue };
                    for &d in c.hom(c.src(f2), c.src(b)) {
                        if c.compose(b, d) != Some(kf2) {
                            continue;
                        }
                        // the second complement sits in the cospan (d, e')
                        let e2 =
                            c.incoming(c.src(b)).iter().copied().find(|&e| {
                                c.is_orth(d, e) && c.compose(b, e).map(|be| c.is_orth(be, k)).unwrap_or(false)
                            });
                        if let Some(e2) = e2 {
                            found = Some(ExtensionDiagram {
                                outer: c.mor_name(k).to_string(),
                                legs: [c.mor_name(a).to_string(), c.mor_name(b).to_string()],
                                into_legs: [c.mor_name(cc).to_string(), c.mor_name(d).to_string()],
                                complements: [c.mor_name(e1).to_string(), c.mor_name(e2).to_string()],
                            });
                            break 'search;
                        }
                    }
                }
            }
        }
        let cospan = [c.mor_name(f1).to_string(), c.mor_name(f2).to_string()];
        if found.is_none() {
            failing.push(cospan.clone());
        }
        entries.push(ExtensionEntry { cospan, diagram: found });
    }
    ExtensionReport { holds: failing.is_empty(), checked: entries.len(), entries, failing }
}

/// Finite group given by its multiplication table, `table[a][b] = a b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, CategoryError> {
        let n = names.len();
        let bad = |s: &str| Err(CategoryError::Group(s.to_string()));
        if n == 0 {
            return bad("no elements");
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table is not closed on the element set");
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(CategoryError::Group(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses.push(b),
                None => return Err(CategoryError::Group(format!("{} has no inverse", names[a]))),
            }
        }
        Ok(FiniteGroup { names, table, identity, inverses })
    }

    pub fn trivial() -> Self {
        FiniteGroup::new(vec!["e".into()], vec![vec![0]]).expect("trivial group")
    }

    pub fn z2() -> Self {
        FiniteGroup::new(vec!["e".into(), "r".into()], vec![vec![0, 1], vec![1, 0]]).expect("Z2")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// Functor between finite categories given by its object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthFunctor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl OrthFunctor {
    pub fn identity(c: &OrthCategory) -> Self {
        OrthFunctor { objects: (0..c.num_objects()).collect(), morphisms: (0..c.num_morphisms()).collect() }
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.objects[o]
    }

    pub fn map(&self, f: MorId) -> MorId {
        self.morphisms[f]
    }

    /// `self o other`
    pub fn after(&self, other: &OrthFunctor) -> OrthFunctor {
        OrthFunctor {
            objects: other.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: other.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        }
    }
}

/// Checks that `fun: c -> d` preserves typing, identities, composition and
/// orthogonality.
pub fn validate_orth_functor(fun: &OrthFunctor, c: &OrthCategory, d: &OrthCategory) -> ValidationReport {
    let mut log = ViolationLog::default();
    if fun.objects.len() != c.num_objects() || fun.morphisms.len() != c.num_morphisms() {
        log.push(Violation::new("functor_total", vec![]));
        return log.finish();
    }
    for f in 0..c.num_morphisms() {
        let ff = fun.map(f);
        log.check(d.src(ff) == fun.obj(c.src(f)) && d.tgt(ff) == fun.obj(c.tgt(f)), || {
            Violation::new("functor_typing", vec![c.mor_name(f).to_string(), d.mor_name(ff).to_string()])
        });
    }
    for o in 0..c.num_objects() {
        log.check(fun.map(c.identity(o)) == d.identity(fun.obj(o)), || {
            Violation::new("functor_identity", vec![c.object_name(o).to_string()])
        });
    }
    for f in 0..c.num_morphisms() {
        for &g in c.outgoing(c.tgt(f)) {
            let Some(gf) = c.compose(g, f) else { continue };
            log.check(d.compose(fun.map(g), fun.map(f)) == Some(fun.map(gf)), || {
                Violation::new("functor_composition", names(c, &[g, f]))
            });
        }
    }
    for &(a, b) in c.orth_pairs() {
        log.check(d.is_orth(fun.map(a), fun.map(b)), || Violation::new("functor_orth", names(c, &[a, b])));
    }
    log.finish()
}

/// Action of a finite group on an orthogonal category by orthogonal
/// endofunctors, `functors[g]` implementing `g`.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub functors: Vec<OrthFunctor>,
}

impl GroupAction {
    pub fn trivial(c: &OrthCategory) -> Self {
        GroupAction { group: FiniteGroup::trivial(), functors: vec![OrthFunctor::identity(c)] }
    }

    pub fn functor(&self, g: usize) -> &OrthFunctor {
        &self.functors[g]
    }
}

/// Each `alpha_g` is an orthogonal functor, `alpha_e = id` and
/// `alpha_g' alpha_g = alpha_{g'g}` on objects and morphisms.
pub fn validate_group_action(c: &OrthCategory, action: &GroupAction) -> ValidationReport {
    let mut log = ViolationLog::default();
    let grp = &action.group;
    if action.functors.len() != grp.order() {
        log.push(Violation::new("action_total", vec![]));
        return log.finish();
    }
    for g in 0..grp.order() {
        let r = validate_orth_functor(action.functor(g), c, c);
        log.checked += r.checked;
        for mut v in r.violations {
            v.witness.insert(0, grp.name(g).to_string());
            log.push(v);
        }
    }
    if !log.is_clean() {
        return log.finish();
    }
    let e = grp.identity();
    log.check(action.functor(e) == &OrthFunctor::identity(c), || {
        Violation::new("action_identity", vec![grp.name(e).to_string()])
    });
    for g in 0..grp.order() {
        for h in 0..grp.order() {
            let lhs = action.functor(h).after(action.functor(g));
            let rhs = action.functor(grp.mul(h, g));
            log.check(&lhs == rhs, || {
                Violation::new("action_composition", vec![grp.name(h).to_string(), grp.name(g).to_string()])
            });
        }
    }
    log.finish()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub elements: Vec<String>,
    /// `table[a][b]` is the name of `a b`.
    pub table: Vec<Vec<String>>,
}

/// On-disk format for a group action: category, group and one functor per
/// group element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub category: CategoryJson,
    pub group: GroupJson,
    pub action: BTreeMap<String, FunctorJson>,
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FiniteGroup, CategoryError> {
        let idx = |s: &String| {
            self.elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| CategoryError::Group(format!("unknown element {s:?}")))
        };
        let table = self
            .table
            .iter()
            .map(|r| r.iter().map(idx).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::new(self.elements.clone(), table)
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            elements: g.names().to_vec(),
            table: (0..g.order()).map(|a| (0..g.order()).map(|b| g.name(g.mul(a, b)).to_string()).collect()).collect(),
        }
    }
}

impl FunctorJson {
    pub fn to_functor(&self, c: &OrthCategory) -> Result<OrthFunctor, CategoryError> {
        let mut objects = Vec::with_capacity(c.num_objects());
        for o in c.object_names() {
            let t = self.objects.get(o).ok_or_else(|| CategoryError::Functor(format!("object {o:?} unmapped")))?;
            objects.push(c.object(t).ok_or_else(|| CategoryError::UnknownObject(t.clone()))?);
        }
        let mut morphisms = Vec::with_capacity(c.num_morphisms());
        for f in 0..c.num_morphisms() {
            let name = c.mor_name(f);
            let t = self
                .morphisms
                .get(name)
                .ok_or_else(|| CategoryError::Functor(format!("morphism {name:?} unmapped")))?;
            morphisms.push(c.morphism(t).ok_or_else(|| CategoryError::UnknownMorphism(t.clone()))?);
        }
        Ok(OrthFunctor { objects, morphisms })
    }

    pub fn from_functor(f: &OrthFunctor, c: &OrthCategory) -> Self {
        FunctorJson {
            objects: (0..c.num_objects())
                .map(|o| (c.object_name(o).to_string(), c.object_name(f.obj(o)).to_string()))
                .collect(),
            morphisms: (0..c.num_morphisms())
                .map(|m| (c.mor_name(m).to_string(), c.mor_name(f.map(m)).to_string()))
                .collect(),
        }
    }
}

impl ActionJson {
    pub fn load(&self) -> Result<(OrthCategory, GroupAction), CategoryError> {
        let c = OrthCategory::from_json(&self.category)?;
        let group = self.group.to_group()?;
        let mut functors = Vec::with_capacity(group.order());
        for g in group.names() {
            let fj = self.action.get(g).ok_or_else(|| CategoryError::Functor(format!("no functor for {g:?}")))?;
            functors.push(fj.to_functor(&c)?);
        }
        Ok((c, GroupAction { group, functors }))
    }

    pub fn from_action(c: &OrthCategory, a: &GroupAction) -> Self {
        ActionJson {
            category: c.to_json(),
            group: GroupJson::from_group(&a.group),
            action: (0..a.group.order())
                .map(|g| (a.group.name(g).to_string(), FunctorJson::from_functor(a.functor(g), c)))
                .collect(),
        }
    }
}

/// Bundled example categories.
pub mod fixtures {
    use super::*;

    pub fn interval_name(a: usize, b: usize) -> String {
        format!("[{a},{b}]")
    }

    /// Intervals `[a, b]` of `{1..n}` with `b - a + 1 <= max_len`, ordered by
    /// inclusion, with disjointness as orthogonality.
    pub fn interval_category(n: usize, max_len: usize) -> OrthCategory {
        let ivs: Vec<(usize, usize)> =
            (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).filter(|(a, b)| b - a < max_len).collect();
        OrthCategory::thin(
            ivs.iter().map(|&(a, b)| interval_name(a, b)).collect(),
            |i, j| ivs[j].0 <= ivs[i].0 && ivs[i].1 <= ivs[j].1,
            |i, j| ivs[i].1 < ivs[j].0 || ivs[j].1 < ivs[i].0,
        )
    }

    /// Mirror action `[a, b] -> [n + 1 - b, n + 1 - a]` of Z2.
    pub fn interval_reflection(c: &OrthCategory, n: usize) -> GroupAction {
        let mirror = |o: ObjId| {
            let name = c.object_name(o);
            let (a, b) = parse_interval(name).expect("interval object");
            c.object(&interval_name(n + 1 - b, n + 1 - a)).expect("category closed under mirror")
        };
        let objects: Vec<ObjId> = (0..c.num_objects()).map(mirror).collect();
        let morphisms = (0..c.num_morphisms()).map(|f| c.hom(objects[c.src(f)], objects[c.tgt(f)])[0]).collect();
        let r = OrthFunctor { objects, morphisms };
        GroupAction { group: FiniteGroup::z2(), functors: vec![OrthFunctor::identity(c), r] }
    }

    pub fn parse_interval(s: &str) -> Option<(usize, usize)> {
        let inner = s.strip_prefix('[')?.strip_suffix(']')?;
        let (a, b) = inner.split_once(',')?;
        Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
    }

    /// Arcs `(start, len)` of a ring with `n` sites and `len <= max_len`,
    /// ordered by inclusion of site sets, disjointness as orthogonality.
    pub fn cyclic_interval_category(n: usize, max_len: usize) -> OrthCategory {
        let arcs: Vec<Vec<usize>> = (1..=max_len.min(n))
            .flat_map(|len| {
                let starts = if len == n { 1 } else { n };
                (0..starts).map(move |s| {
                    let mut v: Vec<usize> = (0..len).map(|k| (s + k) % n).collect();
                    v.sort_unstable();
                    v
                })
            })
            .collect();
        let names = arcs
            .iter()
            .map(|a| format!("{{{}}}", a.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        OrthCategory::thin(
            names,
            |i, j| arcs[i].iter().all(|x| arcs[j].contains(x)),
            |i, j| arcs[i].iter().all(|x| !arcs[j].contains(x)),
        )
    }

    /// One object with endomorphisms `{id, l, r, z}` forming the meet
    /// semilattice `l r = r l = z`, `l l = l`, `r r = r`, where `l` and `r`
    /// embed into complementary halves and `z` collapses everything.
    /// `{l, z}` is orthogonal to `{r, z}`.
    pub fn split_monoid() -> OrthCategory {
        let names = ["id", "l", "r", "z"];
        let meet = |a: usize, b: usize| -> usize {
            match (a, b) {
                (0, x) | (x, 0) => x,
                (x, y) if x == y => x,
                _ => 3,
            }
        };
        let mut compose = Vec::new();
        for g in 0..4 {
            for f in 0..4 {
                compose.push((names[g].to_string(), names[f].to_string(), names[meet(g, f)].to_string()));
            }
        }
        let mut orth = Vec::new();
        for a in ["l", "z"] {
            for b in ["r", "z"] {
                orth.push((a.to_string(), b.to_string()));
                orth.push((b.to_string(), a.to_string()));
            }
        }
        OrthCategory::from_parts(
            vec!["X".into()],
            names.iter().map(|n| (n.to_string(), "X".to_string(), "X".to_string())).collect(),
            compose,
            vec![("X".into(), "id".into())],
            orth,
        )
        .expect("split monoid is well formed")
    }

    /// One object whose only morphism is its identity; nothing orthogonal.
    pub fn point() -> OrthCategory {
        OrthCategory::from_parts(
            vec!["*".into()],
            vec![("id".into(), "*".into(), "*".into())],
            vec![("id".into(), "id".into(), "id".into())],
            vec![("*".into(), "id".into())],
            vec![],
        )
        .expect("point category")
    }

    pub fn empty() -> OrthCategory {
        OrthCategory::from_parts(vec![], vec![], vec![], vec![], vec![]).expect("empty category")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    /// Counts intervals of {1..n} directly.
    fn oracle_interval_count(n: usize, max_len: usize) -> usize {
        (1..=max_len.min(n)).map(|len| n + 1 - len).sum()
    }

    #[test]
    fn interval_category_sizes() {
        let c = interval_category(6, 6);
        assert_eq!(c.num_objects(), oracle_interval_count(6, 6));
        assert_eq!(c.num_objects(), 21);
        // inclusions [a,b] <= [c,d]: sum over targets of their sub-interval count
        let subs: usize = (1..=6).map(|len| (7 - len) * len * (len + 1) / 2).sum();
        assert_eq!(c.num_morphisms(), subs);
        assert!(c.is_thin());
    }

    #[test]
    fn interval_category_is_valid() {
        let r = validate_category(&interval_category(6, 6));
        assert!(r.valid, "{:?}", r.violations);
        assert!(validate_category(&interval_category(6, 4)).valid);
    }

    #[test]
    fn missing_transpose_is_one_violation() {
        let mut c = interval_category(6, 6);
        let a = c.morphism("[1,1]<[1,2]").unwrap();
        let b = c.morphism("[2,2]<[1,2]").unwrap();
        assert!(c.is_orth(a, b));
        c.remove_orth_pair(b, a);
        let r = validate_category(&c);
        assert!(!r.valid);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].axiom, "orth_symmetric");
        assert_eq!(r.violations[0].witness, vec!["[1,1]<[1,2]", "[2,2]<[1,2]"]);
    }

    #[test]
    fn point_category_is_valid() {
        assert!(validate_category(&point()).valid);
        assert!(validate_category(&empty()).valid);
    }

    #[test]
    fn corrupted_associativity_is_detected() {
        let mut c = split_monoid();
        assert!(validate_category(&c).valid);
        let (l, r, id) = (c.morphism("l").unwrap(), c.morphism("r").unwrap(), c.morphism("id").unwrap());
        c.set_composite_unchecked(l, r, id);
        let r = validate_category(&c);
        assert!(r.axioms().contains(&"associativity"));
    }

    #[test]
    fn non_cospan_orth_pair() {
        let mut c = interval_category(3, 3);
        let a = c.morphism("[1,1]<[1,1]").unwrap();
        let b = c.morphism("[2,2]<[2,3]").unwrap();
        c.add_orth_pair(a, b);
        c.add_orth_pair(b, a);
        assert!(validate_category(&c).axioms().contains(&"orth_cospan"));
    }

    #[test]
    fn filtered_examples() {
        let short = check_filtered(&interval_category(6, 4));
        assert!(!short.filtered);
        let pair = FilteredFailure::NoCocone { objects: ["[1,4]".into(), "[3,6]".into()] };
        assert!(short.failures.contains(&pair));
        assert!(check_filtered(&interval_category(6, 6)).filtered);
        let e = check_filtered(&empty());
        assert!(!e.filtered);
        assert_eq!(e.failures, vec![FilteredFailure::Empty]);
        let toy = check_filtered(&split_monoid());
        assert!(toy.filtered && !toy.thin);
    }

    #[test]
    fn filtered_failures_match_brute_force() {
        // oracle: a pair fails iff its interval hull is longer than max_len
        let c = interval_category(6, 4);
        let mut expected = Vec::new();
        for i in 0..c.num_objects() {
            for j in i + 1..c.num_objects() {
                let (a, b) = parse_interval(c.object_name(i)).unwrap();
                let (x, y) = parse_interval(c.object_name(j)).unwrap();
                if b.max(y) - a.min(x) + 1 > 4 {
                    expected.push(FilteredFailure::NoCocone {
                        objects: [c.object_name(i).into(), c.object_name(j).into()],
                    });
                }
            }
        }
        assert_eq!(check_filtered(&c).failures, expected);
    }

    #[test]
    fn orthocomplement_on_intervals() {
        let r = check_assumption_orthocomplement(&interval_category(6, 6));
        assert!(!r.holds);
        assert_eq!(r.failing, vec!["[1,6]".to_string()]);
        // every proper interval has an orthogonal complement
        assert!(r.entries.iter().filter(|e| e.object != "[1,6]").all(|e| e.witness.is_some()));
        let p = check_assumption_orthocomplement(&point());
        assert!(!p.holds);
        assert!(check_assumption_orthocomplement(&split_monoid()).holds);
    }

    #[test]
    fn orthocomplement_fails_at_maximal_objects() {
        // without the full interval the maximal ones have nowhere to go
        let r = check_assumption_orthocomplement(&interval_category(6, 5));
        assert_eq!(r.failing, vec!["[1,5]".to_string(), "[2,6]".to_string()]);
    }

    #[test]
    fn extension_examples() {
        let toy = check_assumption_extension(&split_monoid());
        assert!(toy.holds);
        assert!(toy.checked > 0);
        let proper = check_assumption_extension(&interval_category(6, 5));
        assert!(!proper.holds);
        assert!(!proper.failing.is_empty());
        let full = check_assumption_extension(&interval_category(6, 6));
        assert!(!full.holds);
        let vac = check_assumption_extension(&point());
        assert!(vac.holds && vac.checked == 0);
    }

    #[test]
    fn cyclic_arcs_fail_extension_at_maximal_arcs() {
        let c = cyclic_interval_category(6, 5);
        assert!(validate_category(&c).valid);
        let r = check_assumption_extension(&c);
        assert!(!r.holds);
    }

    /// Independent oracle for the interval extension property: a cospan
    /// into Ũ fails exactly when no interval W ⊇ Ũ of {1..n} leaves room for
    /// complements of both legs outside Ũ.
    #[test]
    fn extension_failures_match_interval_oracle() {
        let c = interval_category(5, 5);
        let r = check_assumption_extension(&c);
        for e in &r.entries {
            let f1 = c.morphism(&e.cospan[0]).unwrap();
            let f2 = c.morphism(&e.cospan[1]).unwrap();
            let u1 = parse_interval(c.object_name(c.src(f1))).unwrap();
            let u2 = parse_interval(c.object_name(c.src(f2))).unwrap();
            let ut = parse_interval(c.object_name(c.tgt(f1))).unwrap();
            // V_i must contain U_i and a site outside Ũ while staying disjoint
            let mut ok = false;
            for v1 in intervals(5) {
                for v2 in intervals(5) {
                    let contains = |v: (usize, usize), u: (usize, usize)| v.0 <= u.0 && u.1 <= v.1;
                    let disjoint = |a: (usize, usize), b: (usize, usize)| a.1 < b.0 || b.1 < a.0;
                    let outside = |v: (usize, usize)| v.0 < ut.0 || v.1 > ut.1;
                    if contains(v1, u1) && contains(v2, u2) && disjoint(v1, v2) && outside(v1) && outside(v2) {
                        ok = true;
                    }
                }
            }
            assert_eq!(e.diagram.is_some(), ok, "{:?}", e.cospan);
        }
    }

    fn intervals(n: usize) -> Vec<(usize, usize)> {
        (1..=n).flat_map(|a| (a..=n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn close_orth_generates_interval_relation() {
        let full = interval_category(4, 4);
        let mut c = interval_category(4, 4);
        let pairs: Vec<_> = c.orth_pairs().to_vec();
        for (a, b) in pairs {
            c.remove_orth_pair(a, b);
        }
        // seed with singleton pairs inside the top; closure recovers the rest
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    let a = c.morphism(&format!("[{i},{i}]<[1,4]")).unwrap();
                    let b = c.morphism(&format!("[{j},{j}]<[1,4]")).unwrap();
                    c.add_orth_pair(a, b);
                }
            }
        }
        c.close_orth();
        assert!(validate_category(&c).valid);
        assert!(c.orth_pairs().len() < full.orth_pairs().len());
        assert!(c.orth_pairs().iter().all(|&(a, b)| full.is_orth(a, b)));
    }

    #[test]
    fn reflection_action_is_valid() {
        let c = interval_category(6, 6);
        let a = interval_reflection(&c, 6);
        let r = validate_group_action(&c, &a);
        assert!(r.valid, "{:?}", r.violations);
        let o = c.object("[1,2]").unwrap();
        assert_eq!(c.object_name(a.functor(1).obj(o)), "[5,6]");
        assert!(validate_group_action(&c, &GroupAction::trivial(&c)).valid);
    }

    #[test]
    fn non_orth_preserving_action_is_rejected() {
        let c = interval_category(3, 3);
        // collapse every object onto [1,3], every arrow onto its identity
        let top = c.object("[1,3]").unwrap();
        let f =
            OrthFunctor { objects: vec![top; c.num_objects()], morphisms: vec![c.identity(top); c.num_morphisms()] };
        let a = GroupAction { group: FiniteGroup::z2(), functors: vec![OrthFunctor::identity(&c), f] };
        let r = validate_group_action(&c, &a);
        assert!(r.axioms().contains(&"functor_orth"));
        assert_eq!(r.violations[0].witness[0], "r");
    }

    #[test]
    fn bad_group_table_is_schema_error() {
        let g = FiniteGroup::new(vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(g, Err(CategoryError::Group(_))));
        let g = FiniteGroup::new(vec!["e".into(), "a".into()], vec![vec![0, 2], vec![1, 0]]);
        assert!(g.is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = interval_category(4, 3);
        let j = c.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let back = OrthCategory::from_json_str(&s).unwrap();
        assert_eq!(back.to_json(), j);
        let a = interval_reflection(&c, 4);
        let aj = ActionJson::from_action(&c, &a);
        let (c2, a2) = aj.load().unwrap();
        assert!(validate_group_action(&c2, &a2).valid);
    }

    #[test]
    fn schema_errors() {
        let bad = r#"{"objects":["a"],"morphisms":[{"id":"f","src":"a","tgt":"b"}],"identities":{"a":"f"}}"#;
        assert_eq!(OrthCategory::from_json_str(bad).unwrap_err(), CategoryError::UnknownObject("b".into()));
        let noid = r#"{"objects":["a"],"morphisms":[],"identities":{}}"#;
        assert!(matches!(OrthCategory::from_json_str(noid), Err(CategoryError::MissingIdentity(_))));
        assert!(matches!(OrthCategory::from_json_str("{"), Err(CategoryError::Json(_))));
    }
}
