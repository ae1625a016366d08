use std::fmt::Write as _;

use predomain::completion::Completion;
use predomain::cstar::{FinXModel, Functional, PositiveElement};
use predomain::cuntz::{validate_precuntz, MonoidTable, PreCuntz};
use predomain::dual::{env_hom, hat_embedding_failure, homs_over_grid, separation_failure};
use predomain::ext::{format_rational, parse_rational, Rational};
use predomain::funcspace::{small_grid, FnOverP, FunctionSpace};
use predomain::order::{Carrier, ElemSet, Relation};
use predomain::predomain::{validate_predomain, Predomain};
use predomain::{Error, ExtRational};

use crate::format::{Kind, StructureFile};
use crate::report::Report;
use crate::CliError;

/// Largest carrier for which `dual` enumerates grid functions.
pub const DUAL_BOUND: usize = 8;
/// Largest point set for which `dual` sweeps a model.
pub const MODEL_DUAL_BOUND: usize = 3;
/// Largest point set for which `check` validates a model.
pub const MODEL_CHECK_BOUND: usize = 3;

fn carrier(s: &StructureFile) -> Result<Carrier, CliError> {
    Ok(Carrier::new(s.labels.iter().cloned())?)
}

fn relation(s: &StructureFile) -> Result<Relation, CliError> {
    Ok(Relation::from_pairs(carrier(s)?, s.rel.iter().copied())?)
}

fn expect_order(s: &StructureFile) -> Result<(), CliError> {
    if s.kind == Kind::Model {
        return Err(CliError::KindMismatch {
            expected: "predomain or precuntz",
            found: s.kind,
        });
    }
    Ok(())
}

fn expect_kind(s: &StructureFile, kind: Kind, expected: &'static str) -> Result<(), CliError> {
    if s.kind != kind {
        return Err(CliError::KindMismatch {
            expected,
            found: s.kind,
        });
    }
    Ok(())
}

fn predomain_of(s: &StructureFile) -> Result<Predomain, CliError> {
    expect_order(s)?;
    Ok(Predomain::new(relation(s)?)?)
}

fn monoid_of(s: &StructureFile) -> Result<MonoidTable, CliError> {
    let zero = s.zero.expect("precuntz files carry a zero");
    let table = s.add.clone().expect("precuntz files carry a table");
    Ok(MonoidTable::new(carrier(s)?, zero, table)?)
}

fn precuntz_of(s: &StructureFile) -> Result<PreCuntz, CliError> {
    expect_kind(s, Kind::Precuntz, "precuntz")?;
    Ok(PreCuntz::new(monoid_of(s)?, relation(s)?)?)
}

fn model_of(s: &StructureFile) -> Result<FinXModel, CliError> {
    expect_kind(s, Kind::Model, "model")?;
    Ok(FinXModel::new(carrier(s)?))
}

fn pair(c: &Carrier, a: usize, b: usize) -> String {
    format!("({},{})", c.name(a), c.name(b))
}

fn predomain_checks(r: &mut Report, rel: &Relation) -> Result<bool, CliError> {
    let c = rel.carrier().clone();
    let v = r.timed(|_| validate_predomain(rel))?;
    let n = |i: usize| c.name(i).to_string();
    r.check(
        "transitive",
        v.trans_witness.map(|(a, b, d)| format!("({},{},{})", n(a), n(b), n(d))),
    );
    r.check("ip0", v.ip0_witness.map(|x| format!("nothing below {}", n(x))));
    r.check(
        "ip2",
        v.ip2_witness
            .map(|(a, b, d)| format!("{{{},{}}} below {} without interpolant", n(a), n(b), n(d))),
    );
    r.check(
        "ip",
        v.ip_witness
            .map(|(f, d)| format!("{} below {} without interpolant", c.format_set(f), n(d))),
    );
    Ok(v.is_predomain())
}

fn stratification_info(r: &mut Report, p: &Predomain) {
    match p.stratification_witness() {
        None => r.info("stratified", "true"),
        Some((a, b)) => r.info("stratified", format!("false, witness {}", pair(p.carrier(), a, b))),
    }
}

pub fn check(s: &StructureFile) -> Result<Report, CliError> {
    let mut r = Report::new(format!(
        "{} with {} {}",
        s.kind,
        s.labels.len(),
        if s.kind == Kind::Model { "points" } else { "elements" }
    ));
    match s.kind {
        Kind::Predomain => {
            let rel = relation(s)?;
            if predomain_checks(&mut r, &rel)? {
                stratification_info(&mut r, &Predomain::new(rel)?);
            }
        }
        Kind::Precuntz => {
            let rel = relation(s)?;
            let m = monoid_of(s)?;
            let c = m.carrier().clone();
            let ok = predomain_checks(&mut r, &rel)?;
            let v = r.timed(|_| validate_precuntz(&m, &rel))?;
            r.check(
                "zero below all",
                (!v.zero_below_all).then(|| {
                    let x = (0..c.len()).find(|&x| !rel.holds(m.zero(), x)).expect("some element");
                    format!("{} not below {}", c.name(m.zero()), c.name(x))
                }),
            );
            r.check(
                "additive",
                v.additive_witness.map(|(a, a2, b, b2)| {
                    format!(
                        "{} and {} but not ({} + {}) ≺≺ ({} + {})",
                        pair(&c, a, a2),
                        pair(&c, b, b2),
                        c.name(a),
                        c.name(b),
                        c.name(a2),
                        c.name(b2)
                    )
                }),
            );
            r.check(
                "continuous addition",
                v.continuity_witness.map(|(x, a, b)| {
                    format!(
                        "{} ≺≺ {} + {} has no approximating summands",
                        c.name(x),
                        c.name(a),
                        c.name(b)
                    )
                }),
            );
            if let Some(joint) = v.jointly_continuous {
                r.info("jointly continuous", joint.to_string());
            }
            if ok {
                stratification_info(&mut r, &Predomain::new(rel)?);
            }
        }
        Kind::Model => {
            let model = model_of(s)?;
            if model.len() > MODEL_CHECK_BOUND {
                return Err(Error::EnumerationBound {
                    size: model.len(),
                    bound: MODEL_CHECK_BOUND,
                }
                .into());
            }
            let grid = s.grid.clone().unwrap_or_else(predomain::cstar::default_grid);
            let v = r.timed(|_| model.validate_model_precuntz(&grid))?;
            r.line(format!("grid elements: {}", v.elements));
            let flag = |ok: bool| (!ok).then(|| v.failure.clone().unwrap_or_default());
            r.check("transitive", flag(v.transitive));
            r.check("ip0", flag(v.ip0));
            r.check("ip2", flag(v.ip2));
            r.check("additive", flag(v.additive));
            r.check("continuous addition", flag(v.continuous_addition));
            r.check("first countable", flag(v.first_countable));
            for f in &s.fns {
                element(
                    &model,
                    f.values
                        .iter()
                        .map(|v| v.as_finite().expect("finite").clone())
                        .collect(),
                )?;
            }
        }
    }
    Ok(r)
}

pub fn complete(s: &StructureFile) -> Result<Report, CliError> {
    let p = predomain_of(s)?;
    let c = Completion::new(&p)?;
    let mut r = Report::new(format!("ideals {}", c.len()));
    let names: Vec<String> = (0..c.len()).map(|i| format!("I{i}")).collect();
    for (i, gen) in c.generators().into_iter().enumerate() {
        let gen = gen.map_or_else(|| "none".to_string(), |g| p.carrier().name(g).to_string());
        r.line(format!("{} = {} generator {gen}", names[i], c.carrier().name(i)));
    }
    r.line("waybelow (row ≪ column):");
    let width = names.iter().map(String::len).max().unwrap_or(0);
    let mut header = " ".repeat(width);
    for n in &names {
        let _ = write!(header, " {n:>width$}");
    }
    r.line(header);
    for (i, name) in names.iter().enumerate() {
        let mut row = format!("{name:<width$}");
        for j in 0..c.len() {
            let _ = write!(row, " {:>width$}", u8::from(c.waybelow().holds(i, j)));
        }
        r.line(row);
    }
    let eq = c.waybelow() == c.leq();
    r.info("waybelow equals inclusion", eq.to_string());
    let oracle = predomain::completion::waybelow_oracle(c.leq())?;
    r.check(
        "waybelow matches the directed-family definition",
        (oracle != *c.waybelow()).then(|| {
            let (i, j) = (0..c.len())
                .flat_map(|i| (0..c.len()).map(move |j| (i, j)))
                .find(|&(i, j)| oracle.holds(i, j) != c.waybelow().holds(i, j))
                .expect("relations differ");
            format!("({},{})", names[i], names[j])
        }),
    );
    Ok(r)
}

/// The stratified structure, re-emitted in the same format.
pub fn stratify(s: &StructureFile) -> Result<(Report, StructureFile), CliError> {
    let p = predomain_of(s)?;
    let st = p.stratify()?;
    if s.kind == Kind::Precuntz {
        PreCuntz::new(monoid_of(s)?, st.rel().clone())?;
    }
    let mut r = Report::new("stratify");
    let added: Vec<String> = st
        .rel()
        .pairs()
        .filter(|&(a, b)| !p.holds(a, b))
        .map(|(a, b)| pair(p.carrier(), a, b))
        .collect();
    r.info(
        "added pairs",
        if added.is_empty() {
            "none".to_string()
        } else {
            added.join(" ")
        },
    );
    let mut out = s.clone();
    out.rel = st.rel().pairs().collect();
    Ok((r, out))
}

fn reduced_edges(r: &Relation) -> Vec<(usize, usize)> {
    let n = r.len();
    r.pairs()
        .filter(|&(a, b)| a != b)
        .filter(|&(a, b)| {
            !(0..n).any(|c| c != a && c != b && r.holds(a, c) && r.holds(c, b) && !r.holds(c, a) && !r.holds(b, c))
        })
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT graph: `≺≺` on the elements solid, `≪` on the completion dashed,
/// both transitively reduced. Doubled outlines mark self-related nodes.
pub fn dot(s: &StructureFile) -> Result<String, CliError> {
    let p = predomain_of(s)?;
    let c = Completion::new(&p)?;
    let mut out = String::from("digraph predomain {\n  rankdir=BT;\n");
    let _ = writeln!(out, "  subgraph cluster_basis {{\n    label=\"basis\";");
    for i in 0..p.len() {
        let shape = if p.holds(i, i) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "    e{i} [label={}, shape={shape}];", quote(p.carrier().name(i)));
    }
    for (a, b) in reduced_edges(p.rel()) {
        let _ = writeln!(out, "    e{a} -> e{b};");
    }
    let _ = writeln!(out, "  }}\n  subgraph cluster_completion {{\n    label=\"completion\";");
    for i in 0..c.len() {
        let shape = if c.waybelow().holds(i, i) {
            "doubleoctagon"
        } else {
            "box"
        };
        let _ = writeln!(out, "    i{i} [label={}, shape={shape}];", quote(c.carrier().name(i)));
    }
    for (a, b) in reduced_edges(c.waybelow()) {
        let _ = writeln!(out, "    i{a} -> i{b} [style=dashed];");
    }
    out.push_str("  }\n}\n");
    Ok(out)
}

pub fn topology(s: &StructureFile) -> Result<Report, CliError> {
    let p = predomain_of(s)?;
    let t = p.cspace_topology()?;
    let c = p.carrier();
    let mut r = Report::new(format!("opens {}", t.opens().len()));
    for &u in t.opens() {
        r.line(c.format_set(u));
    }
    let spec: Vec<String> = t
        .specialization()
        .pairs()
        .filter(|&(a, b)| a != b)
        .map(|(a, b)| pair(c, a, b))
        .collect();
    r.line(format!(
        "specialization: {}",
        if spec.is_empty() {
            "discrete".to_string()
        } else {
            spec.join(" ")
        }
    ));
    r.info("c-space", t.is_cspace().to_string());
    let back = t.topological_waybelow();
    let strat = p.stratified_relation();
    r.check(
        "topological way-below equals the stratified relation",
        (back != strat).then(|| {
            let (a, b) = c
                .all()
                .iter()
                .flat_map(|a| c.all().iter().map(move |b| (a, b)))
                .find(|&(a, b)| back.holds(a, b) != strat.holds(a, b))
                .expect("relations differ");
            pair(c, a, b)
        }),
    );
    let again = Predomain::from_topology(&t)?.cspace_topology()?;
    r.check(
        "topology is recovered from its way-below relation",
        (again != t).then(|| "opens differ".to_string()),
    );
    Ok(r)
}

fn dual_precuntz(s: &StructureFile) -> Result<Report, CliError> {
    let pc = precuntz_of(s)?;
    if pc.len() > DUAL_BOUND {
        return Err(Error::EnumerationBound {
            size: pc.len(),
            bound: DUAL_BOUND,
        }
        .into());
    }
    let grid = small_grid();
    let homs = homs_over_grid(&pc, &grid)?;
    let mut r = Report::new(format!("homomorphisms over the grid {{0,1,2,inf}}: {}", homs.len()));
    let mut duals = Vec::new();
    let mut envelope_failure = None;
    for (f, rep) in &homs {
        let mut line = format!("{f} monotone={} lsc={}", rep.monotone, rep.lsc);
        if rep.monotone && !rep.lsc {
            match env_hom(&pc, f) {
                Ok(e) => {
                    let _ = write!(line, " env={e}");
                }
                Err(e) => {
                    envelope_failure.get_or_insert(format!("{f}: {e}"));
                }
            }
        }
        if rep.lsc && rep.monotone {
            duals.push(f.clone());
        }
        r.line(line);
    }
    r.info("monotone", homs.iter().filter(|(_, h)| h.monotone).count().to_string());
    r.info("lower semicontinuous", duals.len().to_string());
    r.check("envelopes are lsc homomorphisms", envelope_failure);
    match separation_failure(&pc, &duals) {
        None => r.info("duals separate the natural preorder", "true"),
        Some((x, y)) => r.info(
            "duals separate the natural preorder",
            format!("false, witness {}", pair(pc.carrier(), x, y)),
        ),
    }
    let c = Completion::new(pc.predomain())?;
    let emb = hat_embedding_failure(&pc, c.ideals(), &duals)?;
    let fmt = |x: ElemSet| pc.carrier().format_set(x);
    r.info(
        "ideals embed via J ↦ Ĵ",
        emb.map_or_else(
            || "true".to_string(),
            |(i, j)| format!("false, witness ({},{})", fmt(i), fmt(j)),
        ),
    );
    Ok(r)
}

fn dual_model(s: &StructureFile) -> Result<Report, CliError> {
    let model = model_of(s)?;
    if model.len() > MODEL_DUAL_BOUND {
        return Err(Error::EnumerationBound {
            size: model.len(),
            bound: MODEL_DUAL_BOUND,
        }
        .into());
    }
    let grid = s.grid.clone().unwrap_or_else(predomain::cstar::default_grid);
    let samples = model.grid_elements(&grid);
    let weights = [ExtRational::zero(), ExtRational::from_int(1), ExtRational::inf()];
    let traces = model.trace_family(&weights);
    let mut r = Report::new(format!("traces {} on {} grid elements", traces.len(), samples.len()));
    let mut bad = None;
    for t in &traces {
        let rep = model.functional_check(&Functional::Trace(t.clone()), &samples)?;
        if !(rep.hom && rep.order_lsc && rep.norm_lsc) {
            bad.get_or_insert(format!("{t:?}: {rep:?}"));
        }
    }
    r.check("every trace is an lsc homomorphism", bad);
    let mut sep = None;
    'outer: for a in &samples {
        for b in &samples {
            if !a.le(b) && model.separating_point(a, b)?.is_none() {
                sep = Some(format!("{a} {b}"));
                break 'outer;
            }
        }
    }
    r.check("point masses separate", sep);
    Ok(r)
}

pub fn dual(s: &StructureFile) -> Result<Report, CliError> {
    match s.kind {
        Kind::Precuntz => dual_precuntz(s),
        Kind::Model => dual_model(s),
        Kind::Predomain => Err(CliError::KindMismatch {
            expected: "precuntz or model",
            found: s.kind,
        }),
    }
}

/// A function given by name or as comma-separated values.
fn function_arg(s: &StructureFile, text: &str) -> Result<Vec<ExtRational>, CliError> {
    if let Some(f) = s.fns.iter().find(|f| f.name == text) {
        return Ok(f.values.clone());
    }
    let vals = text
        .split(',')
        .map(|v| v.trim().parse::<ExtRational>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("`{text}` is neither a declared function nor a value list: {e}")))?;
    if vals.len() != s.labels.len() {
        return Err(CliError::Usage(format!(
            "`{text}` has {} values, expected {}",
            vals.len(),
            s.labels.len()
        )));
    }
    Ok(vals)
}

pub fn separate(s: &StructureFile, f: &str, h: &str) -> Result<Report, CliError> {
    let p = predomain_of(s)?;
    let (f, h) = (FnOverP::new(function_arg(s, f)?), FnOverP::new(function_arg(s, h)?));
    let space = FunctionSpace::new(&p);
    let mut r = Report::new(format!("f = {f}, h = {h}"));
    let (y, q) = r.timed(|_| space.separate(&f, &h))?;
    let rr = ExtRational::Finite(q.clone());
    let y_name = p.carrier().name(y);
    r.line(format!("V = {{g : g({y_name}) > {}}}", format_rational(&q)));
    r.line(format!(
        "W = {{g : g(x) < {} for some x ≻≻ {y_name}}}",
        format_rational(&q)
    ));
    r.check("f in V", (!space.in_v(&f, y, &rr)).then(|| f.to_string()));
    r.check("h in W", (!space.in_w(&h, y, &rr)).then(|| h.to_string()));
    if p.len() > DUAL_BOUND {
        r.info("V and W are disjoint on lsc grid functions", "not scanned");
        return Ok(r);
    }
    let mut grid = small_grid();
    grid.push(rr.clone());
    grid.sort();
    grid.dedup();
    let meet = space
        .lsc_over_grid(&grid)
        .into_iter()
        .find(|g| space.in_v(g, y, &rr) && space.in_w(g, y, &rr))
        .map(|g| g.to_string());
    r.check("V and W are disjoint on lsc grid functions", meet);
    Ok(r)
}

fn element(model: &FinXModel, values: Vec<Rational>) -> Result<PositiveElement, CliError> {
    let e = PositiveElement::new(values)?;
    model.check(&e)?;
    Ok(e)
}

fn element_arg(s: &StructureFile, model: &FinXModel, text: &str) -> Result<PositiveElement, CliError> {
    let vals = function_arg(s, text)?
        .into_iter()
        .map(|v| {
            v.as_finite()
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("`{text}` has an infinite value")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    element(model, vals).map_err(|e| match e {
        CliError::Core(e) => CliError::Usage(format!("`{text}`: {e}")),
        other => other,
    })
}

pub fn deltas(s: &StructureFile, a: Option<&str>, b: Option<&str>, eps: &str) -> Result<Report, CliError> {
    let model = model_of(s)?;
    let eps = parse_rational(eps).map_err(|e| CliError::Usage(e.to_string()))?;
    let pairs: Vec<(String, PositiveElement, String, PositiveElement)> = match (a, b) {
        (Some(a), Some(b)) => {
            vec![(
                a.to_string(),
                element_arg(s, &model, a)?,
                b.to_string(),
                element_arg(s, &model, b)?,
            )]
        }
        (None, None) => {
            let mut v = Vec::new();
            for f in &s.fns {
                for g in &s.fns {
                    v.push((
                        f.name.clone(),
                        element_arg(s, &model, &f.name)?,
                        g.name.clone(),
                        element_arg(s, &model, &g.name)?,
                    ));
                }
            }
            v
        }
        _ => return Err(CliError::Usage("--a and --b go together".into())),
    };
    let mut r = Report::new(format!("eps = {}", format_rational(&eps)));
    for (an, ae, bn, be) in &pairs {
        let da = model.find_delta_add(ae, be, &eps)?;
        let ds = model.find_delta_split(ae, be, &eps)?;
        let kr = model.kr_check(ae, be, &eps)?;
        r.line(format!("a = {an} {ae}, b = {bn} {be}"));
        r.line(format!("  delta_add = {}", format_rational(&da)));
        r.line(format!("  delta_split = {}", format_rational(&ds)));
        match (kr.conclusion, kr.delta, kr.refined) {
            (Some(c), Some(d), Some(f)) => {
                r.line(format!(
                    "  cutdown: |a - b| < eps, (a - eps)+ <= b {c}, delta {} refined {f}",
                    format_rational(&d)
                ));
                let name = format!("cutdown lemma for a = {an}, b = {bn}");
                r.check(&name, (!(c && f)).then(|| format!("conclusion {c}, refinement {f}")));
            }
            _ => r.line("  cutdown: hypothesis |a - b| < eps fails"),
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;

    const CHAIN3: &str = "kind predomain\nelements 0 1 2\nrel 0 0\nrel 0 1\nrel 0 2\nrel 1 1\nrel 1 2\n";

    #[test]
    fn reduction_keeps_cover_pairs() {
        let s = parse(CHAIN3).unwrap();
        assert_eq!(reduced_edges(&relation(&s).unwrap()), [(0, 1), (1, 2)]);
        let cyc = Relation::from_fn(Carrier::numbered(3).unwrap(), |_, _| true);
        assert_eq!(reduced_edges(&cyc).len(), 6);
    }

    #[test]
    fn complete_chain3() {
        let r = complete(&parse(CHAIN3).unwrap()).unwrap();
        assert_eq!(r.title, "ideals 2");
        assert!(!r.failed());
        assert!(r.render(false).contains("info  waybelow equals inclusion: true"));
    }

    #[test]
    fn kind_mismatch() {
        let s = parse(CHAIN3).unwrap();
        assert!(matches!(dual(&s), Err(CliError::KindMismatch { .. })));
        assert!(matches!(
            deltas(&s, None, None, "1"),
            Err(CliError::KindMismatch { .. })
        ));
    }

    #[test]
    fn function_arguments() {
        let s = parse(&format!("{CHAIN3}fn f: 0=0 1=1 2=inf\n")).unwrap();
        assert_eq!(function_arg(&s, "f").unwrap()[2], ExtRational::inf());
        assert_eq!(function_arg(&s, "0, 1/2, 1").unwrap()[1], "1/2".parse().unwrap());
        assert!(matches!(function_arg(&s, "1,2"), Err(CliError::Usage(_))));
        assert!(matches!(function_arg(&s, "g"), Err(CliError::Usage(_))));
    }

    #[test]
    fn separate_reports_disjoint_neighbourhoods() {
        let s = parse(CHAIN3).unwrap();
        let r = separate(&s, "0,5,5", "0,0,0").unwrap();
        assert!(!r.failed(), "{}", r.render(false));
        assert!(matches!(
            separate(&s, "0,0,0", "0,5,5"),
            Err(CliError::Core(Error::Precondition(_)))
        ));
    }
}
