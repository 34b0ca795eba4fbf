use std::fs;
use std::sync::Arc;

use catcoh::extension::{analyze_extension, extension_e2, extension_pages, subdivision_e2, E2Report, Orientation};
use catcoh::fincat::{ei_analysis, subdivide};
use catcoh::groupcats::{
    build_category, decomposition_e2, group_categories, linking_decomposition, linking_system, CategoryKind, CollectionSpec, DecompositionKind,
    DecompositionReport, LinkingDecompositionKind, SubgroupCollection,
};
use catcoh::homalg::{all_invertible, cohomology_dims, ext_dims, first_homotopy_holds, homology_dims, induced_map, tor_groups, MapDirection, Window};
use catcoh::modcat::{coinduce, hom_space, induce, induction_exact_on_probes, representable_element, representable_map};
use catcoh::{CatModule, Field, FiniteCategory, Variance};
use serde_json::{json, Value};

use crate::args::{BuildArgs, BuildKind, CheckArgs, Command, E2Args, GroupArgs, Law, OrientationArg, PagesArgs, Shape, ValidateArgs};
use crate::error::CliError;
use crate::inputs;
use crate::report::{Check, Report};

type Out = Result<Report, CliError>;

pub struct Params {
    pub n_max: usize,
    pub r_max: usize,
}

pub fn execute<F: Field>(f: F, cmd: &Command, params: &Params) -> Out {
    let n_max = params.n_max;
    match cmd {
        Command::Validate(a) => validate(&f, a),
        Command::Cohomology(a) => {
            let c = inputs::category(&a.category)?;
            let m = inputs::module_or_constant(&c, &f, a.module.as_ref(), Variance::Right)?;
            let dims = cohomology_dims(&m, n_max)?;
            Ok(Report::new("cohomology", json!({ "dims": dims })).graded("H", &dims))
        }
        Command::Homology(a) => {
            let c = inputs::category(&a.category)?;
            let m = inputs::module_or_constant(&c, &f, a.module.as_ref(), Variance::Right)?;
            let dims = homology_dims(&m, n_max)?;
            Ok(Report::new("homology", json!({ "dims": dims })).graded("H_", &dims))
        }
        Command::Ext(a) => {
            let c = inputs::category(&a.category)?;
            let n = inputs::module(&c, &f, &a.from)?;
            let m = inputs::module(&c, &f, &a.to)?;
            let dims = ext_dims(&n, &m, n_max)?;
            Ok(Report::new("ext", json!({ "dims": dims })).graded("Ext", &dims))
        }
        Command::Tor(a) => {
            let c = inputs::category(&a.category)?;
            let n = inputs::module(&c, &f, &a.right)?;
            let m = inputs::module(&c, &f, &a.left)?;
            let t = tor_groups(&n, &m, n_max)?;
            Ok(Report::new("tor", json!({ "dims": t.dims, "resolving_second": t.resolving_second }))
                .graded("Tor", &t.dims)
                .check(Check::new("balancing", t.balanced)))
        }
        Command::InducedMap(a) => {
            let fun = inputs::functor(&a.functor)?;
            let m = inputs::module_or_constant(fun.target(), &f, a.module.as_ref(), Variance::Right)?;
            let dir = if a.homology { MapDirection::Homology } else { MapDirection::Cohomology };
            let maps = induced_map(&fun, &m, n_max, dir)?;
            let degrees: Vec<Value> = maps.iter().enumerate().map(|(n, x)| json!({ "n": n, "rows": x.rows(), "cols": x.cols(), "rank": x.rank(&f) })).collect();
            let invertible = all_invertible(&f, &maps);
            let mut r = Report::new("induced-map", json!({ "degrees": degrees, "invertible": invertible }));
            r.notes = maps.iter().enumerate().map(|(n, x)| format!("degree {n}: {}×{} of rank {}", x.rows(), x.cols(), x.rank(&f))).collect();
            r.notes.push(format!("invertible through degree {n_max}: {invertible}"));
            Ok(r)
        }
        Command::E2(a) => e2(&f, a, params),
        Command::Pages(a) => pages(&f, a, params),
        Command::Build(a) => build(a),
        Command::Check(a) => check(&f, a, params),
    }
}

fn validate<F: Field>(f: &F, a: &ValidateArgs) -> Out {
    let mut r = Report::new("validate", json!({}));
    let mut summary = serde_json::Map::new();
    let mut record = |name: &str, res: Result<Value, CliError>, r: &mut Report| match res {
        Ok(v) => {
            summary.insert(name.to_string(), v);
            r.checks.push(Check::new(name, true));
        }
        Err(e) => r.checks.push(Check::new(name, false).with_detail(e.to_string())),
    };
    let mut cat = None;
    if let Some(p) = &a.category {
        let res = inputs::category(p);
        let v = res.as_ref().map(|c| json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms() }));
        cat = res.as_ref().ok().cloned();
        record("category", v.map_err(|e| CliError::Parse(e.to_string())), &mut r);
    }
    for (i, p) in a.module.iter().enumerate() {
        let res = match &cat {
            Some(c) => inputs::module(c, f, p).map(|m| json!({ "dims": m.dims(), "variance": m.variance() })),
            None => Err(CliError::Parse("modules need --category".into())),
        };
        record(&format!("module {i}"), res, &mut r);
    }
    if let Some(p) = &a.functor {
        let res = inputs::functor(p).map(|fun| json!({ "source_morphisms": fun.source().num_morphisms(), "target_morphisms": fun.target().num_morphisms() }));
        record("functor", res, &mut r);
    }
    if let Some(p) = &a.transformation {
        record("transformation", inputs::transformation(p).map(|t| json!({ "components": t.components().len() })), &mut r);
    }
    if a.group.group.is_some() || a.group.group_name.is_some() {
        record("group", inputs::group(&a.group).map(|g| json!({ "order": g.order() })), &mut r);
    }
    if r.checks.is_empty() {
        return Err(CliError::Parse("nothing to validate".into()));
    }
    r.result = Value::Object(summary);
    Ok(r)
}

fn window(a: &E2Args, n_max: usize) -> Window {
    let w = Window::through(n_max);
    Window { p_max: a.pmax.unwrap_or(w.p_max), q_max: a.qmax.unwrap_or(w.q_max), n_max }
}

fn e2_report(e2: &E2Report, extra: Value) -> Report {
    let mut result = json!({ "e2": e2 });
    if let (Value::Object(m), Value::Object(x)) = (&mut result, extra) {
        m.extend(x);
    }
    let mut r = Report::new("e2", result).graded("E2 total", &e2.totals).graded("abutment", &e2.abutment);
    r.pages.push(e2.page());
    r.notes.push(format!("shape {}", e2.shape));
    r.checks.push(Check::new("totals bound the abutment", e2.inequality.iter().all(|&b| b)));
    if e2.concentrated {
        r.checks.push(Check::new("concentrated page equals the abutment", e2.equality));
    }
    if let Some(ind) = e2.lift_independent {
        r.checks.push(Check::new("lift independence", ind));
    }
    r
}

fn decomposition(report: DecompositionReport) -> Report {
    let mut r = e2_report(&report.e2, json!({ "chain_poset": report.chain_poset, "ini_agrees": report.ini_agrees }));
    if let Some(cp) = &report.chain_poset {
        r.checks.push(Check::new("chain classes biject with subgroup chain classes", cp.bijective));
        r.checks.push(Check::new("chain poset order", cp.order_isomorphic));
    }
    if let Some(ini) = report.ini_agrees {
        r.checks.push(Check::new("subdivision cohomology", ini));
    }
    r
}

fn collection(g: &GroupArgs) -> Result<SubgroupCollection, CliError> {
    let group = inputs::group(g)?;
    let spec = CollectionSpec::parse(&g.collection, g.prime)?;
    Ok(SubgroupCollection::from_spec(group, &spec)?)
}

fn e2<F: Field>(f: &F, a: &E2Args, params: &Params) -> Out {
    let w = window(a, params.n_max);
    let need = |o: &Option<std::path::PathBuf>, flag: &str| o.clone().ok_or_else(|| CliError::Parse(format!("this shape needs --{flag}")));
    match a.shape {
        Shape::Extension => {
            let fun = inputs::functor(&need(&a.functor, "functor")?)?;
            let ext = analyze_extension(&fun)?;
            let on_source = a.coefficient.is_none() || a.module.is_some();
            let base = if on_source { fun.source() } else { fun.target() };
            let variance = if a.left { Variance::Left } else { Variance::Right };
            let m = inputs::module_or_constant(base, f, a.module.as_ref(), variance)?;
            let n = match &a.coefficient {
                Some(p) => {
                    // N lives wherever its object names fit
                    let there = if on_source { fun.target() } else { fun.source() };
                    Some(inputs::module(there, f, p).or_else(|_| inputs::module(base, f, p))?)
                }
                None => None,
            };
            let e2 = extension_e2(&ext, n.as_ref(), &m, w, None)?;
            Ok(e2_report(&e2, json!({})))
        }
        Shape::Subdivision => {
            let c = inputs::category(&need(&a.category, "category")?)?;
            let m = inputs::module_or_constant(&c, f, a.module.as_ref(), Variance::Right)?;
            let s = subdivision_e2(&c, &m, w)?;
            let mut r = e2_report(&s.e2, json!({ "classes": s.classes, "ini_agrees": s.ini_agrees }));
            r.checks.push(Check::new("subdivision cohomology", s.ini_agrees));
            Ok(r)
        }
        Shape::Subgroup | Shape::Centralizer | Shape::Normalizer => {
            let cats = group_categories(&collection(&a.group)?)?;
            let kind = match a.shape {
                Shape::Subgroup => DecompositionKind::Subgroup,
                Shape::Centralizer => DecompositionKind::Centralizer,
                _ => DecompositionKind::Normalizer,
            };
            let variance = if kind == DecompositionKind::Centralizer && a.left { Variance::Left } else { Variance::Right };
            let base = if kind == DecompositionKind::Centralizer && !a.left { &cats.fusion.category } else { &cats.transporter.category };
            let m = inputs::module_or_constant(base, f, a.module.as_ref(), variance)?;
            Ok(decomposition(decomposition_e2(&cats, kind, &m, w)?))
        }
        Shape::LinkingSubgroup | Shape::LinkingNormalizer | Shape::OrbitFusion => {
            let ls = linking_system(&inputs::group(&a.group)?, inputs::prime(&a.group)?)?;
            let (kind, base) = match a.shape {
                Shape::LinkingSubgroup => (LinkingDecompositionKind::Subgroup, &ls.linking.category),
                Shape::LinkingNormalizer => (LinkingDecompositionKind::Normalizer, &ls.linking.category),
                _ => (LinkingDecompositionKind::OrbitFusion, &ls.orbit.category),
            };
            let m = inputs::module_or_constant(base, f, a.module.as_ref(), Variance::Right)?;
            let mut r = decomposition(linking_decomposition(&ls, kind, &m, w)?);
            r.checks.push(Check::new("linking axioms", ls.axioms_hold()));
            Ok(r)
        }
    }
}

fn pages<F: Field>(f: &F, a: &PagesArgs, params: &Params) -> Out {
    let fun = inputs::functor(&a.functor)?;
    let ext = analyze_extension(&fun)?;
    let m = inputs::module_or_constant(fun.source(), f, a.module.as_ref(), Variance::Right)?;
    let full = extension_pages(&ext, &m, params.r_max, Window::through(params.n_max))?;
    let p = &full.pages;
    let higher = p.pages.iter().filter(|x| x.r.is_some_and(|r| r >= 2)).any(|x| x.has_nonzero_differential());
    let mut r = Report::new("pages", json!({ "pages": p, "e2": full.e2, "nonzero_higher_differential": higher }))
        .graded("E_inf total", &p.infinity.totals())
        .graded("abutment", &p.abutment)
        .check(Check::new("page recurrence", p.recurrence_ok))
        .check(Check::new("convergence", p.converges()))
        .check(Check::new("E2 matches kernel cohomology", full.e2_agrees));
    r.pages = p.pages.clone();
    r.pages.push(p.infinity.clone());
    r.notes.push(format!("nonzero differential on a page r ≥ 2: {higher}"));
    if a.revalidate {
        r.checks.push(Check::new("revalidate", p.revalidate()));
    }
    Ok(r)
}

fn build(a: &BuildArgs) -> Out {
    let mut checks = Vec::new();
    let cat: Arc<FiniteCategory> = match a.kind {
        BuildKind::Transporter | BuildKind::Orbit | BuildKind::Fusion | BuildKind::FusionOrbit => {
            let kind = match a.kind {
                BuildKind::Transporter => CategoryKind::Transporter,
                BuildKind::Orbit => CategoryKind::Orbit,
                BuildKind::Fusion => CategoryKind::Fusion,
                _ => CategoryKind::FusionOrbit,
            };
            build_category(&collection(&a.group)?, kind)?.category
        }
        BuildKind::Linking => {
            let ls = linking_system(&inputs::group(&a.group)?, inputs::prime(&a.group)?)?;
            for ax in &ls.axioms {
                let c = Check::new(format!("linking axiom: {}", ax.axiom), ax.holds);
                checks.push(match &ax.witness {
                    Some(w) => c.with_detail(w),
                    None => c,
                });
            }
            ls.linking.category
        }
        BuildKind::Subdivision | BuildKind::Skeleton => {
            let p = a.category.as_ref().ok_or_else(|| CliError::Parse("this kind needs --category".into()))?;
            let c = inputs::category(p)?;
            let ei = ei_analysis(&c)?;
            if a.kind == BuildKind::Skeleton {
                ei.skeleton
            } else {
                subdivide(&ei.skeleton)?.small
            }
        }
    };
    if matches!(a.kind, BuildKind::Transporter | BuildKind::Orbit | BuildKind::Fusion | BuildKind::FusionOrbit | BuildKind::Linking) {
        checks.push(Check::new("EI", ei_analysis(&cat)?.is_ei));
    }
    let raw = cat.to_raw();
    let text = serde_json::to_string_pretty(&raw).expect("categories serialize") + "\n";
    let mut r = Report::new("build", serde_json::to_value(&raw).expect("categories serialize"));
    r.checks = checks;
    match &a.output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Io { path: path.clone(), detail: e.to_string() })?;
            r.notes.push(format!("{} objects, {} morphisms written to {}", cat.num_objects(), cat.num_morphisms(), path.display()));
        }
        None => r.notes.push(text.trim_end().to_string()),
    }
    Ok(r)
}

fn need_path<'a>(p: &'a Option<std::path::PathBuf>, flag: &str) -> Result<&'a std::path::PathBuf, CliError> {
    p.as_ref().ok_or_else(|| CliError::Parse(format!("this law needs --{flag}")))
}

fn check<F: Field>(f: &F, a: &CheckArgs, params: &Params) -> Out {
    let n_max = params.n_max;
    let r = Report::new("check", json!({}));
    match a.law {
        Law::Representables => {
            let c = inputs::category(need_path(&a.category, "category")?)?;
            let m = inputs::module_or_constant(&c, f, a.module.as_ref(), Variance::Right)?;
            // left modules are right modules over the opposite
            let m = match m.variance() {
                Variance::Right => m,
                Variance::Left => m.opposite(),
            };
            let c = m.category().clone();
            let mut dims = Vec::new();
            let mut pass = true;
            for x in 0..c.num_objects() {
                let rep = CatModule::representable(c.clone(), x, f.clone())?;
                let d = hom_space(&rep, &m)?.dim();
                dims.push(json!({ "object": c.object_name(x), "hom": d, "value": m.dim(x) }));
                pass &= d == m.dim(x);
                for i in 0..m.dim(x) {
                    let mut e = vec![f.zero(); m.dim(x)];
                    e[i] = f.one();
                    pass &= representable_element(&representable_map(&m, x, &e)?, x)? == e;
                }
            }
            Ok(Report { result: json!({ "objects": dims }), ..r }.check(Check::new("representables", pass)))
        }
        Law::Adjunction => {
            let fun = inputs::functor(need_path(&a.functor, "functor")?)?;
            let m = inputs::module_or_constant(fun.source(), f, a.module.as_ref(), Variance::Right)?;
            let n = inputs::module_or_constant(fun.target(), f, a.coefficient.as_ref(), Variance::Right)?;
            let res_n = n.restrict(&fun)?;
            let ind = hom_space(&induce(&fun, &m)?.module, &n)?.dim();
            let ind_adj = hom_space(&m, &res_n)?.dim();
            let coind = hom_space(&n, &coinduce(&fun, &m)?.module)?.dim();
            let coind_adj = hom_space(&res_n, &m)?.dim();
            Ok(Report { result: json!({ "hom_ind": ind, "hom_res_left": ind_adj, "hom_coind": coind, "hom_res_right": coind_adj }), ..r }
                .check(Check::new("induction is left adjoint", ind == ind_adj))
                .check(Check::new("coinduction is right adjoint", coind == coind_adj)))
        }
        Law::Balancing => {
            let c = inputs::category(need_path(&a.category, "category")?)?;
            let n = inputs::module_or_constant(&c, f, a.module.as_ref(), Variance::Right)?;
            let m = inputs::module_or_constant(&c, f, a.coefficient.as_ref(), Variance::Left)?;
            let t = tor_groups(&n, &m, n_max)?;
            Ok(Report { result: json!({ "dims": t.dims, "resolving_second": t.resolving_second }), ..r }
                .graded("Tor", &t.dims)
                .check(Check::new("balancing", t.balanced)))
        }
        Law::InducedExt => {
            let fun = inputs::functor(need_path(&a.functor, "functor")?)?;
            let n = inputs::module_or_constant(fun.source(), f, a.module.as_ref(), Variance::Right)?;
            let m = inputs::module_or_constant(fun.target(), f, a.coefficient.as_ref(), Variance::Right)?;
            let exact = induction_exact_on_probes(&fun, &n)?;
            let lhs = ext_dims(&induce(&fun, &n)?.module, &m, n_max)?;
            let rhs = ext_dims(&n, &m.restrict(&fun)?, n_max)?;
            let mut out = Report { result: json!({ "induced": lhs, "restricted": rhs, "induction_exact_on_probes": exact }), ..r }
                .graded("Ext(Ind N, M)", &lhs)
                .graded("Ext(N, Res M)", &rhs);
            if exact {
                out.checks.push(Check::new("induced ext", lhs == rhs));
            } else {
                out.notes.push("induction is not exact on the probe family; the isomorphism is not asserted".into());
            }
            Ok(out)
        }
        Law::Cofinality => {
            let c = inputs::category(need_path(&a.category, "category")?)?;
            let m = inputs::module_or_constant(&c, f, a.module.as_ref(), Variance::Right)?;
            let ei = ei_analysis(&c)?;
            let msk = if c.is_skeletal() { m.rehome(ei.skeleton.clone())? } else { m.restrict(&ei.inclusion)? };
            let sub = subdivide(&ei.skeleton)?;
            let maps = induced_map(&sub.ini, &msk.rehome(sub.base.clone())?, n_max, MapDirection::Cohomology)?;
            let ranks: Vec<usize> = maps.iter().map(|x| x.rank(f)).collect();
            Ok(Report { result: json!({ "ranks": ranks, "chains": sub.chains.len() }), ..r }
                .check(Check::new("Ini induces an isomorphism", all_invertible(f, &maps))))
        }
        Law::FirstHomotopy => {
            let eta = inputs::transformation(need_path(&a.transformation, "transformation")?)?;
            let m = inputs::module_or_constant(eta.from().target(), f, a.module.as_ref(), Variance::Right)?;
            let holds = first_homotopy_holds(&eta, &m, n_max)?;
            Ok(Report { result: json!({ "holds": holds }), ..r }.check(Check::new("first homotopy", holds)))
        }
        Law::Regularity => {
            let fun = inputs::functor(need_path(&a.functor, "functor")?)?;
            let ext = analyze_extension(&fun)?;
            let result = json!({ "target": ext.target, "source": ext.source });
            let c = match a.orientation {
                OrientationArg::Any => Check::new("regular", ext.orientation().is_some()),
                OrientationArg::Target => Check::new("target regular", ext.is_regular(Orientation::Target)),
                OrientationArg::Source => Check::new("source regular", ext.is_regular(Orientation::Source)),
            };
            Ok(Report { result, ..r }.check(c))
        }
        Law::LinkingAxioms => {
            let ls = linking_system(&inputs::group(&a.group)?, inputs::prime(&a.group)?)?;
            let objects = ls.linking.category.num_objects();
            let mut out = Report { result: json!({ "axioms": ls.axioms, "objects": objects }), ..r };
            out.notes.push(format!("linking system objects: {objects}"));
            for ax in &ls.axioms {
                let c = Check::new(ax.axiom.clone(), ax.holds);
                out.checks.push(match &ax.witness {
                    Some(w) => c.with_detail(w),
                    None => c,
                });
            }
            Ok(out)
        }
    }
}
