//! The prefactorization operad of an orthogonal category and finite checks
//! for its algebras.
//!
//! An operation `(U1, .., Un) -> V` is a tuple of pairwise orthogonal arrows
//! `fi: Ui -> V`. Composition substitutes tuples and concatenates, the
//! symmetric group acts by reordering the tuple.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::orthogonal::{GroupAction, MorId, ObjId, OrthCategory};
use crate::report::{ValidationReport, Violation, ViolationLog};

pub const DEFAULT_ARITY_BOUND: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operation {
    pub target: ObjId,
    pub arrows: Vec<MorId>,
}

impl Operation {
    pub fn arity(&self) -> usize {
        self.arrows.len()
    }

    pub fn identity(c: &OrthCategory, v: ObjId) -> Self {
        Operation { target: v, arrows: vec![c.identity(v)] }
    }

    /// The unique nullary operation into `v`.
    pub fn point(v: ObjId) -> Self {
        Operation { target: v, arrows: Vec::new() }
    }

    pub fn sources(&self, c: &OrthCategory) -> Vec<ObjId> {
        self.arrows.iter().map(|&f| c.src(f)).collect()
    }

    pub fn display<'a>(&'a self, c: &'a OrthCategory) -> OpDisplay<'a> {
        OpDisplay { op: self, c }
    }
}

pub struct OpDisplay<'a> {
    op: &'a Operation,
    c: &'a OrthCategory,
}

impl fmt::Display for OpDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.op.arrows.iter().map(|&a| self.c.mor_name(a)).collect();
        write!(f, "({})->{}", names.join(";"), self.c.object_name(self.op.target))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("inner operation {index} targets the wrong object")]
    TypeMismatch { index: usize },
    #[error("composite {g} o {f} is not in the composition table")]
    Undefined { g: String, f: String },
    #[error("composite tuple is not pairwise orthogonal at {0} and {1}")]
    NotOrthogonal(String, String),
    #[error("not a permutation of {0} letters")]
    BadPermutation(usize),
}

/// Permutation of `0..n` as the image list `i -> p[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn new(p: Vec<usize>) -> Result<Self, OperadError> {
        let n = p.len();
        let mut seen = vec![false; n];
        for &x in &p {
            if x >= n || seen[x] {
                return Err(OperadError::BadPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Perm(p))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self o other`, i.e. `i -> self(other(i))`.
    pub fn after(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Perm(inv)
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

/// `f sigma = (f_sigma(1), .., f_sigma(n))`. This is a right action:
/// `permute(permute(f, s), t) = permute(f, s o t)`.
pub fn permute(op: &Operation, sigma: &Perm) -> Result<Operation, OperadError> {
    if sigma.len() != op.arity() {
        return Err(OperadError::ArityMismatch { expected: op.arity(), got: sigma.len() });
    }
    Ok(Operation { target: op.target, arrows: sigma.0.iter().map(|&i| op.arrows[i]).collect() })
}

pub fn is_operation(c: &OrthCategory, op: &Operation) -> bool {
    op.arrows.iter().all(|&f| c.tgt(f) == op.target) && pairwise_orth(c, &op.arrows).is_none()
}

fn pairwise_orth(c: &OrthCategory, arrows: &[MorId]) -> Option<(MorId, MorId)> {
    for (i, &a) in arrows.iter().enumerate() {
        for (j, &b) in arrows.iter().enumerate() {
            if i != j && !c.is_orth(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// All operations with the given sources and target, lexicographic in the
/// arrow ids.
pub fn enumerate_operations(c: &OrthCategory, sources: &[ObjId], target: ObjId) -> Vec<Operation> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(sources.len());
    fn rec(c: &OrthCategory, sources: &[ObjId], target: ObjId, cur: &mut Vec<MorId>, out: &mut Vec<Operation>) {
        if cur.len() == sources.len() {
            out.push(Operation { target, arrows: cur.clone() });
            return;
        }
        for &f in c.hom(sources[cur.len()], target) {
            if cur.iter().all(|&g| c.is_orth(g, f) && c.is_orth(f, g)) {
                cur.push(f);
                rec(c, sources, target, cur, out);
                cur.pop();
            }
        }
    }
    rec(c, sources, target, &mut cur, &mut out);
    out
}

/// All operations into `target` of arity at most `bound`, by arity and then
/// lexicographically in the arrow ids.
pub fn operations_into(c: &OrthCategory, target: ObjId, bound: usize) -> Vec<Operation> {
    let mut into: Vec<MorId> = c.incoming(target).to_vec();
    into.sort_unstable();
    let mut out = vec![Operation::point(target)];
    let mut layer: Vec<Vec<MorId>> = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for t in &layer {
            for &f in &into {
                if t.iter().all(|&g| c.is_orth(g, f) && c.is_orth(f, g)) {
                    let mut u = t.clone();
                    u.push(f);
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().map(|a| Operation { target, arrows: a.clone() }));
        layer = next;
    }
    out
}

/// `gamma(outer; inners)`: arrow `fi o gij` in position `(i, j)`.
pub fn compose(c: &OrthCategory, outer: &Operation, inners: &[Operation]) -> Result<Operation, OperadError> {
    if inners.len() != outer.arity() {
        return Err(OperadError::ArityMismatch { expected: outer.arity(), got: inners.len() });
    }
    let mut arrows = Vec::with_capacity(inners.iter().map(Operation::arity).sum());
    for (i, (&f, g)) in outer.arrows.iter().zip(inners).enumerate() {
        if g.target != c.src(f) {
            return Err(OperadError::TypeMismatch { index: i });
        }
        for &h in &g.arrows {
            let fh = c
                .compose(f, h)
                .ok_or_else(|| OperadError::Undefined { g: c.mor_name(f).to_string(), f: c.mor_name(h).to_string() })?;
            arrows.push(fh);
        }
    }
    if let Some((a, b)) = pairwise_orth(c, &arrows) {
        return Err(OperadError::NotOrthogonal(c.mor_name(a).to_string(), c.mor_name(b).to_string()));
    }
    Ok(Operation { target: outer.target, arrows })
}

/// `f o_i g`: substitute `g` into slot `i`, identities elsewhere.
pub fn partial_compose(c: &OrthCategory, f: &Operation, i: usize, g: &Operation) -> Result<Operation, OperadError> {
    let inners: Vec<Operation> =
        (0..f.arity()).map(|k| if k == i { g.clone() } else { Operation::identity(c, c.src(f.arrows[k])) }).collect();
    compose(c, f, &inners)
}

/// Exhaustive checks of unitality, associativity, equivariance and closure
/// for all operations of arity at most `bound`.
pub fn validate_operad(c: &OrthCategory, bound: usize) -> ValidationReport {
    let ops: Vec<Vec<Operation>> = (0..c.num_objects()).map(|v| operations_into(c, v, bound)).collect();
    let parts: Vec<ViolationLog> =
        (0..c.num_objects()).into_par_iter().map(|v| check_target(c, &ops, v, bound)).collect();
    let mut log = ViolationLog::default();
    for p in parts {
        log.checked += p.checked;
        for v in p.finish().violations {
            log.push(v);
        }
    }
    log.finish()
}

fn describe(c: &OrthCategory, ops: &[&Operation]) -> Vec<String> {
    ops.iter().map(|o| o.display(c).to_string()).collect()
}

fn check_target(c: &OrthCategory, ops: &[Vec<Operation>], v: ObjId, bound: usize) -> ViolationLog {
    let mut log = ViolationLog::default();
    let idv = Operation::identity(c, v);
    let failed =
        |e: &OperadError, ops: &[&Operation]| Violation::new("closure", describe(c, ops)).with_detail(e.to_string());
    for f in &ops[v] {
        log.check(is_operation(c, f), || Violation::new("operation", describe(c, &[f])));
        // unit laws
        match compose(c, &idv, std::slice::from_ref(f)) {
            Ok(r) => log.check(&r == f, || Violation::new("left_unit", describe(c, &[f]))),
            Err(e) => log.push(failed(&e, &[&idv, f])),
        }
        let ids: Vec<Operation> = f.arrows.iter().map(|&a| Operation::identity(c, c.src(a))).collect();
        match compose(c, f, &ids) {
            Ok(r) => log.check(&r == f, || Violation::new("right_unit", describe(c, &[f]))),
            Err(e) => log.push(failed(&e, &[f])),
        }
        // permutations act on the right
        let perms = Perm::all(f.arity());
        for s in &perms {
            for t in &perms {
                let lhs = permute(&permute(f, s).expect("arity"), t).expect("arity");
                let rhs = permute(f, &s.after(t)).expect("arity");
                log.check(lhs == rhs, || {
                    Violation::new("permutation_action", describe(c, &[f])).with_detail(format!("{:?} {:?}", s.0, t.0))
                });
            }
        }
        for i in 0..f.arity() {
            let ui = c.src(f.arrows[i]);
            for g in ops[ui].iter().filter(|g| f.arity() + g.arity() - 1 <= bound) {
                let fg = match partial_compose(c, f, i, g) {
                    Ok(x) => x,
                    Err(e) => {
                        log.push(failed(&e, &[f, g]));
                        continue;
                    }
                };
                log.check(is_operation(c, &fg), || Violation::new("closure", describe(c, &[f, g])));
                check_sequential(c, ops, &mut log, bound, f, i, g, &fg);
                check_parallel(c, ops, &mut log, bound, f, i, g, &fg);
                check_equivariance(c, &mut log, f, i, g, &fg);
            }
        }
    }
    log
}

#[allow(clippy::too_many_arguments)]
fn check_sequential(
    c: &OrthCategory,
    ops: &[Vec<Operation>],
    log: &mut ViolationLog,
    bound: usize,
    f: &Operation,
    i: usize,
    g: &Operation,
    fg: &Operation,
) {
    for j in 0..g.arity() {
        let uj = c.src(g.arrows[j]);
        for h in ops[uj].iter().filter(|h| fg.arity() + h.arity() - 1 <= bound) {
            let lhs = partial_compose(c, fg, i + j, h);
            let rhs = partial_compose(c, g, j, h).and_then(|gh| partial_compose(c, f, i, &gh));
            log.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
                Violation::new("associativity", describe(c, &[f, g, h])).with_detail(format!("sequential {i} {j}"))
            });
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn check_parallel(
    c: &OrthCategory,
    ops: &[Vec<Operation>],
    log: &mut ViolationLog,
    bound: usize,
    f: &Operation,
    i: usize,
    g: &Operation,
    fg: &Operation,
) {
    for l in i + 1..f.arity() {
        let ul = c.src(f.arrows[l]);
        for h in ops[ul].iter().filter(|h| fg.arity() + h.arity() - 1 <= bound) {
            let lhs = partial_compose(c, fg, l + g.arity() - 1, h);
            let rhs = partial_compose(c, f, l, h).and_then(|fh| partial_compose(c, &fh, i, g));
            log.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
                Violation::new("associativity", describe(c, &[f, g, h])).with_detail(format!("parallel {i} {l}"))
            });
        }
    }
}

fn check_equivariance(
    c: &OrthCategory,
    log: &mut ViolationLog,
    f: &Operation,
    i: usize,
    g: &Operation,
    fg: &Operation,
) {
    let (n, k) = (f.arity(), g.arity());
    // (f s) o_j g = (f o_i g) s' where s(j) = i
    for s in Perm::all(n) {
        let j = s.inverse().apply(i);
        let lhs = permute(f, &s).and_then(|fs| partial_compose(c, &fs, j, g));
        let shift = |m: usize| if m < i { m } else { m + k - 1 };
        let mut block = Vec::with_capacity(n + k - 1);
        for p in 0..n {
            if p == j {
                block.extend((0..k).map(|q| i + q));
            } else {
                block.push(shift(s.apply(p)));
            }
        }
        let rhs = permute(fg, &Perm(block));
        log.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
            Violation::new("equivariance", describe(c, &[f, g])).with_detail(format!("outer {:?} slot {i}", s.0))
        });
    }
    // f o_i (g t) = (f o_i g)(id + t + id)
    for t in Perm::all(k) {
        let lhs = permute(g, &t).and_then(|gt| partial_compose(c, f, i, &gt));
        let block: Vec<usize> =
            (0..n + k - 1).map(|p| if p >= i && p < i + k { i + t.apply(p - i) } else { p }).collect();
        let rhs = permute(fg, &Perm(block));
        log.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
            Violation::new("equivariance", describe(c, &[f, g])).with_detail(format!("inner {:?} slot {i}", t.0))
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationGroup {
    pub sources: Vec<String>,
    pub target: String,
    pub operations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadDump {
    pub bound: usize,
    pub groups: Vec<OperationGroup>,
}

/// All operations of arity at most `bound`, grouped by `(sources, target)`.
pub fn dump_operad(c: &OrthCategory, bound: usize) -> OperadDump {
    let mut groups = Vec::new();
    for v in 0..c.num_objects() {
        let mut by_sources: BTreeMap<Vec<ObjId>, Vec<Vec<String>>> = BTreeMap::new();
        for op in operations_into(c, v, bound) {
            let names = op.arrows.iter().map(|&a| c.mor_name(a).to_string()).collect();
            by_sources.entry(op.sources(c)).or_default().push(names);
        }
        for (srcs, operations) in by_sources {
            groups.push(OperationGroup {
                sources: srcs.iter().map(|&o| c.object_name(o).to_string()).collect(),
                target: c.object_name(v).to_string(),
                operations,
            });
        }
    }
    OperadDump { bound, groups }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("structure map for {op} expects {expected} arguments, got {got}")]
    ArityMismatch { op: String, expected: usize, got: usize },
    #[error("argument {index} of {op} is not in the source carrier")]
    BadArgument { op: String, index: usize },
    #[error("no transport isomorphism for group element {0}")]
    MissingTransport(String),
    #[error("{0}")]
    Other(String),
}

/// A finite presentation of an algebra over the prefactorization operad:
/// a spanning set for each carrier and the structure maps evaluated on it.
/// Structure maps are assumed multilinear (or functorial), so diagrams are
/// checked on spanning tuples only.
pub trait PrefactorizationAlgebra: Sync {
    type Elem: Clone + Send + Sync;

    fn category(&self) -> &OrthCategory;

    fn spanning_set(&self, obj: ObjId) -> Vec<Self::Elem>;

    fn act(&self, op: &Operation, args: &[Self::Elem]) -> Result<Self::Elem, AlgebraError>;

    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn describe(&self, a: &Self::Elem) -> String;
}

/// Adds the transport isomorphisms `Psi_g: F(U) -> F(alpha_g U)`.
pub trait EquivariantAlgebra: PrefactorizationAlgebra {
    fn action(&self) -> &GroupAction;

    /// `None` when no isomorphism is provided for `g`.
    fn transport(&self, g: usize, obj: ObjId, a: &Self::Elem) -> Option<Result<Self::Elem, AlgebraError>>;
}

fn cartesian<T: Clone>(sets: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for s in sets {
        let mut next = Vec::with_capacity(out.len() * s.len());
        for prefix in &out {
            for x in s {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Inner tuples `(g1, .., gn)` for `f` with total arity at most `bound`.
fn inner_tuples<'a>(
    c: &OrthCategory,
    ops: &'a [Vec<Operation>],
    f: &Operation,
    bound: usize,
) -> Vec<Vec<&'a Operation>> {
    let mut out: Vec<(usize, Vec<&Operation>)> = vec![(0, Vec::new())];
    for &a in &f.arrows {
        let mut next = Vec::new();
        for (used, prefix) in &out {
            for g in &ops[c.src(a)] {
                if used + g.arity() <= bound {
                    let mut p = prefix.clone();
                    p.push(g);
                    next.push((used + g.arity(), p));
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|(_, t)| t).collect()
}

/// Checks the unit, composition and permutation diagrams on spanning tuples,
/// for operations of arity at most `bound`.
pub fn validate_algebra<A: PrefactorizationAlgebra>(alg: &A, bound: usize) -> ValidationReport {
    let c = alg.category();
    let ops: Vec<Vec<Operation>> = (0..c.num_objects()).map(|v| operations_into(c, v, bound)).collect();
    let spans: Vec<Vec<A::Elem>> = (0..c.num_objects()).map(|o| alg.spanning_set(o)).collect();
    let parts: Vec<ViolationLog> =
        (0..c.num_objects()).into_par_iter().map(|v| algebra_target(alg, &ops, &spans, v, bound)).collect();
    merge(parts)
}

fn merge(parts: Vec<ViolationLog>) -> ValidationReport {
    let mut log = ViolationLog::default();
    for p in parts {
        log.checked += p.checked;
        for v in p.finish().violations {
            log.push(v);
        }
    }
    log.finish()
}

fn algebra_target<A: PrefactorizationAlgebra>(
    alg: &A,
    ops: &[Vec<Operation>],
    spans: &[Vec<A::Elem>],
    v: ObjId,
    bound: usize,
) -> ViolationLog {
    let c = alg.category();
    let mut log = ViolationLog::default();
    let labels = |args: &[A::Elem]| args.iter().map(|a| alg.describe(a)).collect::<Vec<_>>().join(", ");
    for a in &spans[v] {
        let idv = Operation::identity(c, v);
        let r = alg.act(&idv, std::slice::from_ref(a));
        log.check(matches!(&r, Ok(b) if alg.same(a, b)), || {
            Violation::new("algebra_unit", vec![c.object_name(v).to_string(), alg.describe(a)])
        });
    }
    for f in &ops[v] {
        let srcs = f.sources(c);
        let arg_sets: Vec<Vec<A::Elem>> = srcs.iter().map(|&u| spans[u].clone()).collect();
        let tuples = cartesian(&arg_sets);
        // permutation diagram
        for s in Perm::all(f.arity()).into_iter().skip(1) {
            let fs = permute(f, &s).expect("arity");
            for args in &tuples {
                let permuted: Vec<A::Elem> = s.0.iter().map(|&k| args[k].clone()).collect();
                let lhs = alg.act(&fs, &permuted);
                let rhs = alg.act(f, args);
                log.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if alg.same(a, b)), || {
                    Violation::new(
                        "algebra_permutation",
                        vec![f.display(c).to_string(), format!("{:?}", s.0), labels(args)],
                    )
                });
            }
        }
        // composition diagram
        for inner in inner_tuples(c, ops, f, bound) {
            let inner_owned: Vec<Operation> = inner.iter().map(|g| (*g).clone()).collect();
            let Ok(fg) = compose(c, f, &inner_owned) else { continue };
            let leaf_sets: Vec<Vec<A::Elem>> = fg.arrows.iter().map(|&a| spans[c.src(a)].clone()).collect();
            for leaves in cartesian(&leaf_sets) {
                let lhs = alg.act(&fg, &leaves);
                let mut mids = Vec::with_capacity(f.arity());
                let mut off = 0;
                let mut err = None;
                for g in &inner {
                    match alg.act(g, &leaves[off..off + g.arity()]) {
                        Ok(x) => mids.push(x),
                        Err(e) => err = Some(e),
                    }
                    off += g.arity();
                }
                let rhs = match err {
                    Some(e) => Err(e),
                    None => alg.act(f, &mids),
                };
                log.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if alg.same(a, b)), || {
                    let mut w = vec![f.display(c).to_string()];
                    w.extend(inner.iter().map(|g| g.display(c).to_string()));
                    w.push(labels(&leaves));
                    let v = Violation::new("algebra_composition", w);
                    match (&lhs, &rhs) {
                        (Err(e), _) | (_, Err(e)) => v.with_detail(e.to_string()),
                        _ => v,
                    }
                });
            }
        }
    }
    log
}

fn map_op(c: &OrthCategory, action: &GroupAction, g: usize, op: &Operation) -> Operation {
    let fun = action.functor(g);
    let _ = c;
    Operation { target: fun.obj(op.target), arrows: op.arrows.iter().map(|&f| fun.map(f)).collect() }
}

/// Algebra diagrams plus `Psi_e = id`, the cocycle condition
/// `Psi_{hg} = Psi_h Psi_g` and naturality of every `Psi_g` with respect to
/// the structure maps. A missing `Psi_g` is an error.
pub fn validate_equivariant_algebra<A: EquivariantAlgebra>(
    alg: &A,
    bound: usize,
) -> Result<ValidationReport, AlgebraError> {
    let c = alg.category();
    let action = alg.action();
    let grp = &action.group;
    let spans: Vec<Vec<A::Elem>> = (0..c.num_objects()).map(|o| alg.spanning_set(o)).collect();
    for g in 0..grp.order() {
        for (o, span) in spans.iter().enumerate() {
            if let Some(a) = span.first() {
                if alg.transport(g, o, a).is_none() {
                    return Err(AlgebraError::MissingTransport(grp.name(g).to_string()));
                }
            }
        }
    }
    let base = validate_algebra(alg, bound);
    let mut log = ViolationLog::default();
    log.checked = base.checked;
    for v in base.violations {
        log.push(v);
    }
    let psi = |g: usize, o: ObjId, a: &A::Elem| alg.transport(g, o, a).expect("checked above");
    let e = grp.identity();
    for (o, span) in spans.iter().enumerate() {
        for a in span {
            let r = psi(e, o, a);
            log.check(matches!(&r, Ok(b) if alg.same(a, b)), || {
                Violation::new("transport_identity", vec![c.object_name(o).to_string(), alg.describe(a)])
            });
            for g in 0..grp.order() {
                for h in 0..grp.order() {
                    let go = action.functor(g).obj(o);
                    let lhs = psi(grp.mul(h, g), o, a);
                    let rhs = psi(g, o, a).and_then(|b| psi(h, go, &b));
                    log.check(matches!((&lhs, &rhs), (Ok(x), Ok(y)) if alg.same(x, y)), || {
                        Violation::new(
                            "transport_cocycle",
                            vec![
                                grp.name(h).to_string(),
                                grp.name(g).to_string(),
                                c.object_name(o).to_string(),
                                alg.describe(a),
                            ],
                        )
                    });
                }
            }
        }
    }
    for v in 0..c.num_objects() {
        for f in operations_into(c, v, bound) {
            let arg_sets: Vec<Vec<A::Elem>> = f.sources(c).iter().map(|&u| spans[u].clone()).collect();
            for args in cartesian(&arg_sets) {
                for g in 0..grp.order() {
                    let gf = map_op(c, action, g, &f);
                    let lhs = alg.act(&f, &args).and_then(|x| psi(g, v, &x));
                    let moved: Result<Vec<A::Elem>, AlgebraError> =
                        f.arrows.iter().zip(&args).map(|(&a, x)| psi(g, c.src(a), x)).collect();
                    let rhs = moved.and_then(|m| alg.act(&gf, &m));
                    log.check(matches!((&lhs, &rhs), (Ok(x), Ok(y)) if alg.same(x, y)), || {
                        Violation::new(
                            "transport_naturality",
                            vec![
                                grp.name(g).to_string(),
                                f.display(c).to_string(),
                                args.iter().map(|a| alg.describe(a)).collect::<Vec<_>>().join(", "),
                            ],
                        )
                    });
                }
            }
        }
    }
    Ok(log.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonal::fixtures::*;
    use crate::orthogonal::FiniteGroup;

    fn obj(c: &OrthCategory, s: &str) -> ObjId {
        c.object(s).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let c = interval_category(6, 6);
        let t = obj(&c, "[1,3]");
        let ops = enumerate_operations(&c, &[obj(&c, "[1,1]"), obj(&c, "[3,3]")], t);
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].display(&c).to_string(), "([1,1]<[1,3];[3,3]<[1,3])->[1,3]");
        assert_eq!(enumerate_operations(&c, &[], t), vec![Operation::point(t)]);
        assert!(enumerate_operations(&c, &[obj(&c, "[1,2]"), obj(&c, "[2,3]")], t).is_empty());
    }

    /// Counts ordered tuples of pairwise disjoint sub-intervals directly.
    fn oracle_count(n: usize, len: usize, arity: usize) -> usize {
        let subs: Vec<(usize, usize)> = (1..=len).flat_map(|a| (a..=len).map(move |b| (a, b))).collect();
        let _ = n;
        fn rec(subs: &[(usize, usize)], cur: &mut Vec<(usize, usize)>, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            let mut total = 0;
            for &s in subs {
                if cur.iter().all(|&t| t.1 < s.0 || s.1 < t.0) {
                    cur.push(s);
                    total += rec(subs, cur, left - 1);
                    cur.pop();
                }
            }
            total
        }
        rec(&subs, &mut Vec::new(), arity)
    }

    #[test]
    fn operation_counts_match_oracle() {
        let c = interval_category(6, 6);
        let top = obj(&c, "[1,6]");
        let ops = operations_into(&c, top, 3);
        for k in 0..=3 {
            let count = ops.iter().filter(|o| o.arity() == k).count();
            assert_eq!(count, oracle_count(6, 6, k), "arity {k}");
        }
        // frozen from the oracle
        assert_eq!(ops.iter().filter(|o| o.arity() == 2).count(), 140);
        assert_eq!(ops.iter().filter(|o| o.arity() == 3).count(), 504);
    }

    #[test]
    fn composition_concatenates() {
        let c = interval_category(6, 6);
        let m = |s: &str| c.morphism(s).unwrap();
        let f = Operation { target: obj(&c, "[1,6]"), arrows: vec![m("[1,3]<[1,6]"), m("[5,6]<[1,6]")] };
        let g1 = Operation { target: obj(&c, "[1,3]"), arrows: vec![m("[3,3]<[1,3]"), m("[1,1]<[1,3]")] };
        let g2 = Operation::point(obj(&c, "[5,6]"));
        let r = compose(&c, &f, &[g1, g2]).unwrap();
        assert_eq!(r.arrows, vec![m("[3,3]<[1,6]"), m("[1,1]<[1,6]")]);
        assert!(matches!(compose(&c, &f, &[]), Err(OperadError::ArityMismatch { .. })));
    }

    #[test]
    fn permutation_is_right_action() {
        let c = interval_category(6, 6);
        let op = &operations_into(&c, obj(&c, "[1,6]"), 3)[200];
        assert_eq!(op.arity(), 3);
        for s in Perm::all(3) {
            for t in Perm::all(3) {
                let lhs = permute(&permute(op, &s).unwrap(), &t).unwrap();
                assert_eq!(lhs, permute(op, &s.after(&t)).unwrap());
            }
        }
        assert!(Perm::new(vec![0, 0]).is_err());
    }

    #[test]
    fn interval_operad_is_valid() {
        let c = interval_category(5, 5);
        let r = validate_operad(&c, 3);
        assert!(r.valid, "{:?}", r.violations);
        assert!(r.checked > 1000);
        assert!(validate_operad(&split_monoid(), 3).valid);
    }

    #[test]
    fn corrupted_composition_is_detected() {
        let mut c = interval_category(4, 4);
        let m = |s: &str| c.morphism(s).unwrap();
        let (g, f) = (m("[1,2]<[1,3]"), m("[1,1]<[1,2]"));
        let wrong = m("[1,1]<[1,1]");
        c.set_composite_unchecked(g, f, wrong);
        let r = validate_operad(&c, 3);
        assert!(!r.valid);
        let assoc = r.violations.iter().find(|v| v.axiom == "associativity").expect("associativity witness");
        assert_eq!(assoc.witness.len(), 3);
    }

    #[test]
    fn dump_groups_by_profile() {
        let c = interval_category(3, 3);
        let d = dump_operad(&c, 2);
        let g = d
            .groups
            .iter()
            .find(|g| g.target == "[1,3]" && g.sources == vec!["[1,1]".to_string(), "[3,3]".to_string()])
            .unwrap();
        assert_eq!(g.operations, vec![vec!["[1,1]<[1,3]".to_string(), "[3,3]<[1,3]".to_string()]]);
    }

    /// Sets of sites under union: a commutative toy algebra over intervals.
    struct SiteSets<'a> {
        c: &'a OrthCategory,
        zero_op: Option<Operation>,
        action: GroupAction,
        twist: bool,
    }

    impl PrefactorizationAlgebra for SiteSets<'_> {
        type Elem = Vec<usize>;
        fn category(&self) -> &OrthCategory {
            self.c
        }
        fn spanning_set(&self, obj: ObjId) -> Vec<Vec<usize>> {
            let (a, b) = parse_interval(self.c.object_name(obj)).unwrap();
            let mut v = vec![vec![]];
            v.extend((a..=b).map(|s| vec![s]));
            v
        }
        fn act(&self, op: &Operation, args: &[Vec<usize>]) -> Result<Vec<usize>, AlgebraError> {
            if args.len() != op.arity() {
                return Err(AlgebraError::ArityMismatch {
                    op: op.display(self.c).to_string(),
                    expected: op.arity(),
                    got: args.len(),
                });
            }
            if self.zero_op.as_ref() == Some(op) {
                return Ok(vec![0]);
            }
            let mut u: Vec<usize> = args.concat();
            u.sort_unstable();
            Ok(u)
        }
        fn same(&self, a: &Vec<usize>, b: &Vec<usize>) -> bool {
            a == b
        }
        fn describe(&self, a: &Vec<usize>) -> String {
            format!("{a:?}")
        }
    }

    impl EquivariantAlgebra for SiteSets<'_> {
        fn action(&self) -> &GroupAction {
            &self.action
        }
        fn transport(&self, g: usize, obj: ObjId, a: &Vec<usize>) -> Option<Result<Vec<usize>, AlgebraError>> {
            if g == 0 {
                return Some(Ok(a.clone()));
            }
            let mut m: Vec<usize> = a.iter().map(|s| 5 - s).collect();
            if self.twist && self.c.object_name(obj) == "[1,4]" && !m.is_empty() {
                m = vec![1];
            }
            m.sort_unstable();
            Some(Ok(m))
        }
    }

    fn toy(c: &OrthCategory) -> SiteSets<'_> {
        SiteSets { c, zero_op: None, action: interval_reflection(c, 4), twist: false }
    }

    #[test]
    fn toy_algebra_is_valid() {
        let c = interval_category(4, 4);
        let r = validate_algebra(&toy(&c), 3);
        assert!(r.valid, "{:?}", r.violations);
        let e = validate_equivariant_algebra(&toy(&c), 3).unwrap();
        assert!(e.valid, "{:?}", e.violations);
    }

    #[test]
    fn zeroed_structure_map_breaks_composition() {
        let c = interval_category(4, 4);
        let m = |s: &str| c.morphism(s).unwrap();
        let mut a = toy(&c);
        a.zero_op = Some(Operation { target: obj(&c, "[1,4]"), arrows: vec![m("[1,1]<[1,4]"), m("[3,4]<[1,4]")] });
        let r = validate_algebra(&a, 3);
        assert!(r.axioms().contains(&"algebra_composition"));
    }

    #[test]
    fn twisted_transport_breaks_naturality() {
        let c = interval_category(4, 4);
        let mut a = toy(&c);
        a.twist = true;
        let r = validate_equivariant_algebra(&a, 2).unwrap();
        let nat = r.violations.iter().find(|v| v.axiom == "transport_naturality").unwrap();
        assert_eq!(nat.witness[0], "r");
    }

    struct Missing<'a>(SiteSets<'a>);

    impl PrefactorizationAlgebra for Missing<'_> {
        type Elem = Vec<usize>;
        fn category(&self) -> &OrthCategory {
            self.0.c
        }
        fn spanning_set(&self, obj: ObjId) -> Vec<Vec<usize>> {
            self.0.spanning_set(obj)
        }
        fn act(&self, op: &Operation, args: &[Vec<usize>]) -> Result<Vec<usize>, AlgebraError> {
            self.0.act(op, args)
        }
        fn same(&self, a: &Vec<usize>, b: &Vec<usize>) -> bool {
            a == b
        }
        fn describe(&self, a: &Vec<usize>) -> String {
            self.0.describe(a)
        }
    }

    impl EquivariantAlgebra for Missing<'_> {
        fn action(&self) -> &GroupAction {
            &self.0.action
        }
        fn transport(&self, g: usize, obj: ObjId, a: &Vec<usize>) -> Option<Result<Vec<usize>, AlgebraError>> {
            if g == 1 {
                None
            } else {
                self.0.transport(g, obj, a)
            }
        }
    }

    #[test]
    fn missing_transport_is_an_error() {
        let c = interval_category(4, 4);
        let r = validate_equivariant_algebra(&Missing(toy(&c)), 2);
        assert_eq!(r.unwrap_err(), AlgebraError::MissingTransport("r".into()));
    }

    #[test]
    fn trivial_group_action_is_fine() {
        let c = interval_category(3, 3);
        let a = SiteSets { c: &c, zero_op: None, action: GroupAction::trivial(&c), twist: false };
        assert_eq!(a.action.group, FiniteGroup::trivial());
        assert!(validate_equivariant_algebra(&a, 2).unwrap().valid);
    }
}
