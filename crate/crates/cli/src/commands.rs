use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::json;

use sectorfact_core::campaign::{
    homotopy_campaign, homotopy_campaign_in, projection_campaign, section_campaign, witness_campaign,
};
use sectorfact_core::configspace::sample_causal_config;
use sectorfact_core::minkowski::{
    build_witness, causally_disjoint, check_projection_inequality, cone_included, project_cone, DoubleCone,
    GeometryError, WitnessOptions,
};
use sectorfact_core::operad::{dump_operad, validate_algebra, validate_equivariant_algebra, validate_operad};
use sectorfact_core::orthogonal::{
    check_assumption_extension, check_assumption_orthocomplement, check_filtered, validate_category,
    validate_group_action, ActionJson, ObjId, OrthCategory,
};
use sectorfact_core::rational::qi;
use sectorfact_core::sectors::endo::{label, Endo};
use sectorfact_core::sectors::pfa::{EquivariantSectors, NetAlgebra};
use sectorfact_core::sectors::{
    bicommutant, check_endomorphism, check_equivariance, check_haag_duality, check_localized, check_perp_commutativity,
    check_perp_commutativity_sectors, check_transportable, diamond_in, inner_intertwiner, qubit_family,
    validate_theorem_3_11, FamilyJson, LocalKind, LocalizedEndo, MatrixNet, SectorAlgebra, SectorGroupData,
};

use crate::args::*;
use crate::report::{CampaignSpec, CheckLine, Report};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn name(path: &Path) -> String {
    path.display().to_string()
}

fn load_category(path: &Path) -> Result<OrthCategory> {
    OrthCategory::from_json_str(&read(path)?).with_context(|| format!("loading category {}", path.display()))
}

fn load_cone(path: &Path) -> Result<DoubleCone> {
    serde_json::from_str(&read(path)?).with_context(|| format!("loading cone {}", path.display()))
}

fn load_net(path: &Path) -> Result<MatrixNet> {
    MatrixNet::from_json_str(&read(path)?).with_context(|| format!("loading net {}", path.display()))
}

/// The family from a file, or the bundled qubit family on nets of full
/// qubit algebras, or nothing.
fn load_family(net: &MatrixNet, path: Option<&Path>) -> Result<(Vec<LocalizedEndo>, String)> {
    if let Some(p) = path {
        let j = FamilyJson::parse(&read(p)?).with_context(|| format!("loading family {}", p.display()))?;
        return Ok((j.load(net).with_context(|| format!("loading family {}", p.display()))?, name(p)));
    }
    if net.local_dim() == 2 && net.regions().iter().all(|r| r.kind == LocalKind::Full) {
        Ok((qubit_family(net), "bundled".into()))
    } else {
        Ok((Vec::new(), "empty".into()))
    }
}

/// `2-3` and `2` name intervals; anything else is taken as a region id.
fn region(net: &MatrixNet, s: &str) -> Result<ObjId> {
    let id = match s.split_once('-') {
        Some((a, b)) if a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok() => format!("[{a},{b}]"),
        None if s.parse::<usize>().is_ok() => format!("[{s},{s}]"),
        _ => s.to_string(),
    };
    Ok(net.region(&id)?)
}

fn sector<'a>(family: &'a [LocalizedEndo], name: &str) -> Result<&'a LocalizedEndo> {
    family.iter().find(|r| r.name == name).with_context(|| format!("no sector named {name:?} in the family"))
}

fn spec(command: &str, inputs: &[&Path]) -> CampaignSpec {
    CampaignSpec { command: command.into(), inputs: inputs.iter().map(|p| name(p)).collect(), ..Default::default() }
}

fn net_inputs(a: &NetArgs) -> Vec<&Path> {
    let mut v = vec![a.net.as_path()];
    v.extend(a.family.as_deref());
    v
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::ValidateCategory { input, assumptions } => validate_category_cmd(input, *assumptions),
        Command::ValidateAction { input } => {
            let j: ActionJson = serde_json::from_str(&read(input)?).context("parsing action")?;
            let (c, action) = j.load().context("loading action")?;
            let cat = validate_category(&c);
            let act = validate_group_action(&c, &action);
            let checks = vec![
                CheckLine::from_validation("category_axioms", &cat),
                CheckLine::from_validation("group_action", &act),
            ];
            Report::new(spec("validate-action", &[input]), checks, json!({"category": cat, "action": act}))
        }
        Command::Operad(c) => operad(c),
        Command::Geometry(c) => geometry(c),
        Command::Homotopy(c) => homotopy(c),
        Command::Sectors(c) => sectors(c),
        Command::Report(ReportCmd::Render { input }) => {
            serde_json::from_str(&read(input)?).with_context(|| format!("parsing report {}", input.display()))
        }
        Command::Fixture { .. } => unreachable!("handled before dispatch"),
    }
}

fn validate_category_cmd(input: &Path, assumptions: bool) -> Result<Report> {
    let c = load_category(input)?;
    let r = validate_category(&c);
    let mut checks = vec![CheckLine::from_validation("category_axioms", &r)];
    let mut details = json!({"category": r});
    if assumptions {
        let f = check_filtered(&c);
        let o = check_assumption_orthocomplement(&c);
        let e = check_assumption_extension(&c);
        checks.push(CheckLine::new("filtered", f.filtered).detail(format!("{} failures", f.failures.len())));
        checks.push(CheckLine::new("orthocomplement", o.holds).detail(format!("failing: [{}]", o.failing.join(", "))));
        checks.push(CheckLine::new("extension", e.holds).detail(format!(
            "{} cospans, {} failing",
            e.checked,
            e.failing.len()
        )));
        details["filtered"] = serde_json::to_value(f)?;
        details["orthocomplement"] = serde_json::to_value(o)?;
        details["extension"] = serde_json::to_value(e)?;
    }
    Report::new(spec("validate-category", &[input]), checks, details)
}

fn operad(cmd: &OperadCmd) -> Result<Report> {
    match cmd {
        OperadCmd::Check { input, bound, dump } => {
            let c = load_category(input)?;
            let r = validate_operad(&c, *bound);
            let checks = vec![CheckLine::from_validation("operad_axioms", &r)];
            let mut details = json!({"operad": r});
            if *dump {
                details["operations"] = serde_json::to_value(dump_operad(&c, *bound))?;
            }
            let mut s = spec("operad check", &[input]);
            s.bound = Some(*bound);
            Report::new(s, checks, details)
        }
        OperadCmd::Algebra { net: path, family, model, bound } => {
            let net = load_net(path)?;
            let data = net.symmetry().is_some().then(|| SectorGroupData::from_net(&net)).transpose()?;
            let mut checks = Vec::new();
            let mut details = json!({});
            let mut inputs = vec![path.as_path()];
            match model {
                AlgebraModel::Sectors => {
                    let (fam, source) = load_family(&net, family.as_deref())?;
                    inputs.extend(family.as_deref());
                    let r = validate_algebra(&SectorAlgebra::new(&net, &fam), *bound);
                    checks.push(CheckLine::from_validation("algebra_axioms", &r));
                    details = json!({"model": "sectors", "family": source, "algebra": r});
                    if let Some(d) = &data {
                        let alg = EquivariantSectors { sectors: SectorAlgebra::new(&net, &fam), data: d };
                        push_equivariant(&mut checks, &mut details, validate_equivariant_algebra(&alg, *bound));
                    }
                }
                AlgebraModel::Net => {
                    let r = validate_algebra(&NetAlgebra { net: &net, data: None }, *bound);
                    checks.push(CheckLine::from_validation("algebra_axioms", &r));
                    details = json!({"model": "net", "algebra": r});
                    if let Some(d) = &data {
                        let alg = NetAlgebra { net: &net, data: Some(d) };
                        push_equivariant(&mut checks, &mut details, validate_equivariant_algebra(&alg, *bound));
                    }
                }
            }
            let mut s = spec("operad algebra", &inputs);
            s.bound = Some(*bound);
            Report::new(s, checks, details)
        }
    }
}

fn push_equivariant(
    checks: &mut Vec<CheckLine>,
    details: &mut serde_json::Value,
    r: Result<sectorfact_core::report::ValidationReport, sectorfact_core::operad::AlgebraError>,
) {
    match r {
        Ok(r) => {
            checks.push(CheckLine::from_validation("equivariant_algebra_axioms", &r));
            details["equivariant"] = serde_json::to_value(r).expect("reports serialise");
        }
        Err(e) => checks.push(CheckLine::new("equivariant_algebra_axioms", false).detail(e.to_string())),
    }
}

fn answer(id: &str, value: bool, expect: Option<bool>) -> CheckLine {
    match expect {
        None => CheckLine::new(id, true).detail(format!("answer {value}")),
        Some(e) => CheckLine::new(id, value == e).detail(format!("answer {value}, expected {e}")),
    }
}

/// Distinct per-sample seeds from one campaign seed.
fn sample_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k.wrapping_mul(0xBF58_476D_1CE4_E5B9))
}

fn geometry(cmd: &GeometryCmd) -> Result<Report> {
    match cmd {
        GeometryCmd::Disjoint { a, b, expect } => {
            let d = causally_disjoint(&load_cone(a)?, &load_cone(b)?);
            Report::new(
                spec("geometry disjoint", &[a, b]),
                vec![answer("causally_disjoint", d, *expect)],
                json!({"disjoint": d}),
            )
        }
        GeometryCmd::Include { inner, outer, expect } => {
            let d = cone_included(&load_cone(inner)?, &load_cone(outer)?);
            Report::new(
                spec("geometry include", &[inner, outer]),
                vec![answer("included", d, *expect)],
                json!({"included": d}),
            )
        }
        GeometryCmd::Project { cone: Some(c), .. } => {
            let u = load_cone(c)?;
            let shadow = project_cone(&u);
            let centre = u.center();
            let ok = shadow.contains(&centre.x) && shadow.marked_point() == centre.x;
            Report::new(
                spec("geometry project", &[c]),
                vec![CheckLine::new("shadow_marked_point", ok)],
                json!({"shadow": shadow}),
            )
        }
        GeometryCmd::Project { a: Some(a), b: Some(b), samples, seed, .. } => {
            let (u1, u2) = (load_cone(a)?, load_cone(b)?);
            if !causally_disjoint(&u1, &u2) {
                bail!("the cones are not causally disjoint");
            }
            let mut records = Vec::with_capacity(*samples);
            let (mut ineq, mut spacelike, mut distinct) = (0, 0, 0);
            for k in 0..*samples as u64 {
                let p1 = sample_causal_config(&u1, 1, sample_seed(*seed, 2 * k))?.points()[0].clone();
                let p2 = sample_causal_config(&u2, 1, sample_seed(*seed, 2 * k + 1))?.points()[0].clone();
                let r = check_projection_inequality(&p1, &p2)?;
                ineq += r.holds as usize;
                spacelike += (r.sq_interval > qi(0)) as usize;
                distinct += (p1.x != p2.x) as usize;
                records.push(json!({"p1": p1, "p2": p2, "check": r}));
            }
            let n = *samples;
            let line = |id: &str, k: usize| CheckLine::new(id, k == n).detail(format!("{k}/{n}"));
            let checks = vec![
                line("projection_inequality", ineq),
                line("spacelike", spacelike),
                line("distinct_projections", distinct),
            ];
            let mut s = spec("geometry project", &[a, b]);
            s.seed = Some(*seed);
            s.samples = Some(n);
            Report::new(s, checks, json!({"samples": records}))
        }
        GeometryCmd::Project { cases: Some(cases), samples, seed, .. } => {
            let r = projection_campaign(*cases, *samples, *seed);
            let line =
                CheckLine::new("projection_campaign", r.passed == r.cases).detail(format!("{}/{}", r.passed, r.cases));
            let s = CampaignSpec {
                command: "geometry project".into(),
                seed: Some(*seed),
                cases: Some(*cases),
                samples: Some(*samples),
                ..Default::default()
            };
            Report::new(s, vec![line], r)
        }
        GeometryCmd::Project { .. } => bail!("give --cone, --a and --b, or --cases"),
        GeometryCmd::Witness { u1: Some(u1), u2: Some(u2), utilde: Some(ut), retry_budget, .. } => {
            let opts = WitnessOptions { retry_budget: *retry_budget };
            let mut s = spec("geometry witness", &[u1, u2, ut]);
            s.retry_budget = Some(*retry_budget);
            match build_witness(&load_cone(u1)?, &load_cone(u2)?, &load_cone(ut)?, &opts) {
                Ok(r) => {
                    let mut checks =
                        vec![CheckLine::new("witness_verified", r.verified).detail(format!("{} rounds", r.rounds))];
                    checks.extend(r.checks.iter().map(|c| CheckLine::from_check("witness_invariant", c)));
                    Report::new(s, checks, r)
                }
                Err(e @ GeometryError::ExhaustedRetries { .. }) => {
                    Report::new(s, vec![CheckLine::new("witness_verified", false).detail(e.to_string())], json!({}))
                }
                Err(e) => Err(e).context("inputs are not an orthogonal cospan in the outer cone"),
            }
        }
        GeometryCmd::Witness { cases: Some(cases), seed, retry_budget, .. } => {
            let r = witness_campaign(*cases, *seed, &WitnessOptions { retry_budget: *retry_budget });
            let line =
                CheckLine::new("witness_campaign", r.verified == r.cases).detail(format!("{}/{}", r.verified, r.cases));
            let s = CampaignSpec {
                command: "geometry witness".into(),
                seed: Some(*seed),
                cases: Some(*cases),
                retry_budget: Some(*retry_budget),
                ..Default::default()
            };
            Report::new(s, vec![line], r)
        }
        GeometryCmd::Witness { .. } => bail!("give --u1, --u2 and --utilde, or --cases"),
    }
}

fn homotopy(cmd: &HomotopyCmd) -> Result<Report> {
    match cmd {
        HomotopyCmd::Verify { cone, m, cases, seed, audit } => {
            let (r, inputs) = match (cone, m) {
                (Some(c), Some(m)) => (homotopy_campaign_in(&load_cone(c)?, *m, *cases, *seed, *audit), vec![name(c)]),
                (None, None) => (homotopy_campaign(*cases, *seed, *audit), vec![]),
                _ => bail!("--m needs --cone"),
            };
            let line = CheckLine::new("homotopy_certified", r.all_certified())
                .detail(format!("{}/{} certified", r.certified, r.cases));
            let s = CampaignSpec {
                command: "homotopy verify".into(),
                inputs,
                seed: Some(*seed),
                cases: Some(*cases),
                samples: *m,
                ..Default::default()
            };
            Report::new(s, vec![line], r)
        }
        HomotopyCmd::Section { cases, seed } => {
            let r = section_campaign(*cases, *seed);
            let line =
                CheckLine::new("section_identity", r.passed == r.cases).detail(format!("{}/{}", r.passed, r.cases));
            let s = CampaignSpec {
                command: "homotopy section".into(),
                seed: Some(*seed),
                cases: Some(*cases),
                ..Default::default()
            };
            Report::new(s, vec![line], r)
        }
    }
}

fn localization_lines(net: &MatrixNet, family: &[LocalizedEndo]) -> Vec<CheckLine> {
    family
        .iter()
        .map(|r| CheckLine::from_validation("localization", &check_localized(net, r)).on(r.label(net)))
        .collect()
}

fn sectors(cmd: &SectorsCmd) -> Result<Report> {
    match cmd {
        SectorsCmd::Haag { net: path, region: which } => {
            let net = load_net(path)?;
            let objs: Vec<ObjId> = match which {
                Some(s) => vec![region(&net, s)?],
                None => (0..net.category().num_objects()).collect(),
            };
            let mut checks = Vec::new();
            let mut reports = Vec::new();
            for o in objs {
                let r = check_haag_duality(&net, o);
                let line = if r.no_complement {
                    CheckLine::new("haag_duality", true).detail("skipped: no orthogonal region")
                } else {
                    let d = format!("{} vs {}", r.bicommutant_dim, r.dual_dim);
                    CheckLine::new("haag_duality", r.holds)
                        .detail(r.detail.clone().unwrap_or(format!("span equality, dimension {d}")))
                };
                checks.push(line.on(&r.region));
                let a = net.algebra(o);
                checks.push(
                    CheckLine::new("bicommutant", bicommutant(a).same_span(a))
                        .on(&r.region)
                        .detail(format!("dimension {}", a.dim())),
                );
                reports.push(r);
            }
            Report::new(spec("sectors haag", &[path]), checks, json!({"regions": reports}))
        }
        SectorsCmd::Perp { net: a } => {
            let net = load_net(&a.net)?;
            let (fam, source) = load_family(&net, a.family.as_deref())?;
            let base = check_perp_commutativity(&net);
            let mut checks = vec![CheckLine::from_validation("perp_commutativity", &base)];
            checks.extend(localization_lines(&net, &fam));
            let mut pairs = Vec::new();
            for (i, r1) in fam.iter().enumerate() {
                for r2 in &fam[i + 1..] {
                    if !net.orthogonal(r1.region, r2.region) {
                        continue;
                    }
                    let subject = format!("{}, {}", r1.label(&net), r2.label(&net));
                    let from_unit =
                        |r: &LocalizedEndo| inner_intertwiner(&net, &LocalizedEndo::identity(&net, r.region), r);
                    let res = from_unit(r1).and_then(|t1| {
                        from_unit(r2).and_then(|t2| check_perp_commutativity_sectors(&net, r1, r2, &t1, &t2))
                    });
                    match res {
                        Ok(rep) => {
                            checks.push(CheckLine::new("perp_sectors", rep.passed).on(subject));
                            pairs.push(rep);
                        }
                        Err(e) => checks.push(CheckLine::new("perp_sectors", false).on(subject).detail(e.to_string())),
                    }
                }
            }
            Report::new(
                spec("sectors perp", &net_inputs(a)),
                checks,
                json!({"family": source, "net": base, "pairs": pairs}),
            )
        }
        SectorsCmd::Diamond { net: a, sectors: names, region: within } => {
            let net = load_net(&a.net)?;
            let (fam, source) = load_family(&net, a.family.as_deref())?;
            let args: Vec<&LocalizedEndo> = names.iter().map(|n| sector(&fam, n)).collect::<Result<_>>()?;
            let v = match within {
                Some(s) => region(&net, s)?,
                None => args[1..]
                    .iter()
                    .try_fold(args[0].region, |acc, r| net.join(acc, r.region))
                    .context("the sectors have no common region")?,
            };
            let left = args[1..].iter().try_fold(args[0].retagged(v), |acc, r| diamond_in(&net, &acc, r, Some(v)))?;
            let right = args[..args.len() - 1]
                .iter()
                .rev()
                .try_fold(args[args.len() - 1].retagged(v), |acc, r| diamond_in(&net, r, &acc, Some(v)))?;
            let one = LocalizedEndo::identity(&net, v);
            let mut checks: Vec<CheckLine> = args
                .iter()
                .map(|r| CheckLine::from_validation("localization", &check_localized(&net, r)).on(r.label(&net)))
                .collect();
            checks.push(
                CheckLine::from_validation("endomorphism", &check_endomorphism(&net, &left.endo)).on(left.label(&net)),
            );
            checks.push(
                CheckLine::from_validation("product_localization", &check_localized(&net, &left)).on(left.label(&net)),
            );
            let unital = diamond_in(&net, &left, &one, Some(v))?.endo.same(&left.endo, &net)
                && diamond_in(&net, &one, &left, Some(v))?.endo.same(&left.endo, &net);
            checks.push(CheckLine::new("unit_laws", unital));
            checks.push(
                CheckLine::new("associativity", left.endo.same(&right.endo, &net)).detail("left and right bracketings"),
            );
            let unitary = match &left.endo {
                Endo::Inner(u) => Some(label(&net, u.matrix())),
                Endo::General(_) => None,
            };
            let details = json!({"family": source, "product": left.label(&net), "region": net.region_name(v), "unitary": unitary});
            Report::new(spec("sectors diamond", &net_inputs(a)), checks, details)
        }
        SectorsCmd::Transport { net: a, sector: who, to } => {
            let net = load_net(&a.net)?;
            let (fam, _) = load_family(&net, a.family.as_deref())?;
            let rho = sector(&fam, who)?;
            let r = check_transportable(&net, rho, region(&net, to)?);
            let loc_ok = r.transported_localization.as_ref().is_some_and(|l| l.valid);
            let line = CheckLine::new("transportable", r.found && loc_ok)
                .on(format!("{} -> {}", rho.label(&net), r.target))
                .detail(r.transporter.clone().unwrap_or_else(|| format!("none of {} candidates", r.candidates.len())));
            Report::new(spec("sectors transport", &net_inputs(a)), vec![line], r)
        }
        SectorsCmd::Equivariance { net: a } => {
            let net = load_net(&a.net)?;
            let (fam, source) = load_family(&net, a.family.as_deref())?;
            let data = SectorGroupData::from_net(&net)?;
            let r = check_equivariance(&net, &data, &fam);
            let mut checks = vec![
                CheckLine::from_validation("symmetry_implementation", &r.symmetry),
                CheckLine::from_validation("action_laws", &r.action_laws),
            ];
            checks.extend(r.covariance.iter().map(|c| CheckLine::from_check("covariance", c)));
            checks.extend(r.composites.iter().map(|c| CheckLine::from_check("composite_covariance", c)));
            Report::new(
                spec("sectors equivariance", &net_inputs(a)),
                checks,
                json!({"family": source, "equivariance": r}),
            )
        }
        SectorsCmd::Theorem311 { net: a, bound } => {
            let net = load_net(&a.net)?;
            let (fam, source) = load_family(&net, a.family.as_deref())?;
            let r = validate_theorem_3_11(&net, &fam, *bound);
            let mut checks: Vec<CheckLine> =
                r.haag.iter().map(|(reg, ok)| CheckLine::new("haag_duality", *ok).on(reg)).collect();
            checks.push(CheckLine::from_validation("perp_commutativity", &r.perp_commutativity));
            checks.push(CheckLine::from_validation("localization", &r.localization));
            if let Some(alg) = &r.algebra {
                checks.push(CheckLine::from_validation("algebra_axioms", alg));
            }
            if let Some(m) = &r.monoidal {
                checks.push(CheckLine::from_validation("monoidality", m));
            }
            if let Some(stage) = &r.stopped_at {
                checks.push(CheckLine::new("completed", false).detail(format!("stopped at {stage}")));
            }
            let mut s = spec("sectors theorem311", &net_inputs(a));
            s.bound = Some(*bound);
            Report::new(s, checks, json!({"family": source, "theorem": r}))
        }
    }
}
