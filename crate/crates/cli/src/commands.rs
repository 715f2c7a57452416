//! Evaluation of single commands into reports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use logfol::cohomology::{
    column_cohomology, h_p1, hypercohomology_all, leaf_complex_hypercohomology, les_terms, total_coboundary,
    ObstructionTriple,
};
use logfol::foliation::{restrict_to_components, PushoutReport};
use logfol::semistability::surface_form_of;
use logfol::{
    check_gluing_cocycle, check_holonomy_compatibility, check_normal_degrees, cohomology_snc_curve, cs_index_paper,
    cs_index_surface, find_flat_unit, involutivity_check, pushout_membership, verify_obstruction_cocycle,
    CechLeafData, Error, FGMonoid, Field, FoliationGerm, GaussRat, GradedBundleP1, HolonomyData, LogDerivation,
    Matrix, MonoidConfig, Rat, SNCCurveBundle, SNCGlueData, SurfaceForm,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{CohomologyCmd, Command, CsCmd, GlobalOpts, MonoidArgs, ObstructionCmd, PushoutCmd, SemistableCmd};
use crate::error::CliError;
use crate::report::{Report, Verdict};
use crate::scene::{Lattice, LeafBlock, Scalar, ScalarKind, SceneDoc};
use crate::selftest;

/// Decision and evidence produced by one command.
#[derive(Clone, Debug)]
pub struct Findings {
    pub decision: Verdict,
    pub order: Option<u32>,
    pub witnesses: BTreeMap<String, Value>,
    pub certificates: Vec<String>,
}

impl Findings {
    pub fn new(decision: Verdict) -> Self {
        Findings {
            decision,
            order: None,
            witnesses: BTreeMap::new(),
            certificates: Vec::new(),
        }
    }

    pub fn at_order(mut self, order: u32) -> Self {
        self.order = Some(order);
        self
    }

    pub fn witness(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.witnesses.insert(key.into(), value.into());
    }
}

macro_rules! by_scalar {
    ($doc:expr, $f:ident, $opts:expr) => {
        match $doc.scene.scalars {
            ScalarKind::Rational => $f::<Rat>(&$doc, $opts),
            ScalarKind::Gaussian => $f::<GaussRat>(&$doc, $opts),
        }
    };
}

pub fn execute(cmd: &Command, opts: &GlobalOpts) -> Report {
    let start = Instant::now();
    let mut report = Report::new(cmd.echo(), Verdict::Holds);
    match dispatch(cmd, opts) {
        Ok(f) => {
            report.decision = f.decision;
            report.order = f.order;
            report.witnesses = f.witnesses;
            report.certificates = f.certificates;
        }
        Err(CliError::Core(Error::Inconclusive { order, reason })) => {
            report.decision = Verdict::Inconclusive;
            report.order = Some(order);
            report.certificates.push(reason);
        }
        Err(CliError::Core(Error::ResourceBound(reason))) => {
            report.decision = Verdict::Inconclusive;
            report.certificates.push(format!("resource bound exceeded: {reason}"));
        }
        Err(e) => {
            report.decision = Verdict::InputError;
            report.error = Some(e.to_string());
        }
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    report
}

fn dispatch(cmd: &Command, opts: &GlobalOpts) -> Result<Findings, CliError> {
    let load = |p: &PathBuf| SceneDoc::load(p);
    match cmd {
        Command::Monoid(a) => monoid(a),
        Command::Semistable(SemistableCmd::Check { scene }) => {
            let doc = load(scene)?;
            by_scalar!(doc, semistable, opts)
        }
        Command::Cs(CsCmd::Paper { scene }) => {
            let doc = load(scene)?;
            by_scalar!(doc, cs_paper, opts)
        }
        Command::Cs(CsCmd::Surface { scene }) => {
            let doc = load(scene)?;
            by_scalar!(doc, cs_surface, opts)
        }
        Command::Pushout(PushoutCmd::Check { scene }) => {
            let doc = load(scene)?;
            by_scalar!(doc, pushout, opts)
        }
        Command::Cohomology(CohomologyCmd::P1 { degrees }) => Ok(p1(degrees)),
        Command::Cohomology(CohomologyCmd::SncCurve { scene }) => {
            let doc = load(scene)?;
            by_scalar!(doc, snc_curve, opts)
        }
        Command::LeafComplex { scene } => {
            let doc = load(scene)?;
            by_scalar!(doc, leaf_complex, opts)
        }
        Command::Obstruction(ObstructionCmd::Verify { scene }) => {
            let doc = load(scene)?;
            by_scalar!(doc, obstruction, opts)
        }
        Command::Holonomy { scene } => {
            let doc = load(scene)?;
            by_scalar!(doc, holonomy, opts)
        }
        Command::Selftest { trials } => Ok(selftest::run(opts.seed, *trials)),
    }
}

fn missing(block: &str) -> CliError {
    CliError::Scene(format!("scene has no [{block}] block"))
}

fn strings<F: Field>(v: &[F]) -> Value {
    Value::from(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn monoid(a: &MonoidArgs) -> Result<Findings, CliError> {
    let (rank, gens, lattice, box_bound) = match (&a.scene, &a.gens) {
        (Some(path), _) => {
            let doc = SceneDoc::load(path)?;
            let m = doc.scene.monoid.ok_or_else(|| missing("monoid"))?;
            (m.rank, m.generators, m.lattice, m.box_bound)
        }
        (None, Some(text)) => {
            let gens: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| CliError::Parse {
                path: "--gens".into(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            (None, gens, Lattice::Ambient, None)
        }
        (None, None) => return Err(CliError::Scene("monoid needs a scene or --gens".into())),
    };
    let rank = rank
        .or_else(|| gens.first().map(Vec::len))
        .ok_or_else(|| CliError::Scene("cannot infer the rank of an empty generator list".into()))?;
    let m = FGMonoid::new(rank, gens)?;
    let mut config = MonoidConfig::default();
    if let Some(b) = a.box_bound.or(box_bound) {
        config.box_bound = b;
    }
    let group = a.group || lattice == Lattice::Group;
    if group {
        config = config.in_group();
    }
    let sat = m.saturate(&config)?;
    let saturated = m.same_monoid(&sat.monoid, &config);
    let mut out = Findings::new(saturated.into());
    out.witness("lattice", if group { "group" } else { "ambient" });
    out.witness("generators", json!(m.generators()));
    out.witness("saturation", json!(sat.monoid.generators()));
    out.witness("group_basis", json!(m.grothendieck_group()));
    let witnesses: Vec<Value> = sat
        .witnesses
        .iter()
        .map(|w| json!({"point": w.point, "multiplier": w.multiplier, "coefficients": w.coefficients}))
        .collect();
    out.witness("witnesses", witnesses);
    for w in &sat.witnesses {
        if !m.contains(&w.point, &config) {
            out.certificates
                .push(format!("{:?} is not in M but {} * {:?} is", w.point, w.multiplier, w.point));
        }
    }
    Ok(out)
}

fn semistable<F: Field>(doc: &SceneDoc, opts: &GlobalOpts) -> Result<Findings, CliError> {
    let block = doc.scene.foliation.as_ref().ok_or_else(|| missing("foliation"))?;
    if block.generators.is_empty() {
        return Err(CliError::Scene("foliation has no generators".into()));
    }
    let gens = block
        .generators
        .iter()
        .map(|n| doc.field::<F>(n, opts.order))
        .collect::<Result<Vec<_>, _>>()?;
    let f = FoliationGerm::new(gens, block.rank.unwrap_or(block.generators.len()))?;
    let order = f.context().order();
    let inv = involutivity_check(&f, order)?;
    if let Some((i, j, d)) = inv.failure {
        return Err(CliError::Scene(format!(
            "foliation is not involutive: [{}, {}] leaves it in degree {d}",
            block.generators[i], block.generators[j]
        )));
    }
    let rep = find_flat_unit(&f, order)?;
    let names = doc.names()?;
    let mut out = Findings::new(rep.decision.into()).at_order(order);
    out.witness("decided_at", rep.order);
    for (name, v) in block.generators.iter().zip(f.generators()) {
        out.witness(format!("log_trace.{name}"), v.log_trace().display_with(&names));
    }
    if let Some(g) = &rep.unit {
        out.witness("g", g.jet().display_with(&names));
    }
    out.witness("unique", rep.unique);
    if let Some(d) = rep.failing_degree {
        out.witness("failing_degree", d);
        out.certificates
            .push(format!("no flat unit: the degree {d} equations of nabla g = 0 are inconsistent"));
    }
    Ok(out)
}

fn cs_paper<F: Field>(doc: &SceneDoc, opts: &GlobalOpts) -> Result<Findings, CliError> {
    let block = doc.scene.cs.as_ref().ok_or_else(|| missing("cs"))?;
    let omega = doc.form::<F>(&block.form, opts.order)?;
    let (i, j) = (block.i, block.j);
    let r = omega.context().r();
    let ij = cs_index_paper(&omega, i, j)?;
    let ji = cs_index_paper(&omega, j, i)?;
    let sum = ij.value.clone() + ji.value.clone();
    let expected = F::from_i64(r as i64 - 2);
    let mut out = Findings::new((sum == expected).into()).at_order(omega.context().order());
    for (key, c) in [(format!("cs_{i}{j}"), &ij), (format!("cs_{j}{i}"), &ji)] {
        out.witness(key.clone(), c.value.to_string());
        out.witness(format!("{key}.dlog_part"), c.dlog_part.to_string());
        out.witness(format!("{key}.regular_residue"), c.regular_residue.to_string());
    }
    out.witness("sum", sum.to_string());
    out.witness("r_minus_2", expected.to_string());
    if sum != expected {
        out.certificates
            .push(format!("CS({i},{j}) + CS({j},{i}) = {sum} but r - 2 = {expected}"));
    }
    Ok(out)
}

fn cs_surface<F: Field>(doc: &SceneDoc, opts: &GlobalOpts) -> Result<Findings, CliError> {
    let block = doc.scene.surface.as_ref().ok_or_else(|| missing("surface"))?;
    let omega = match (&block.field, &block.a, &block.b) {
        (Some(name), None, None) => surface_form_of(&doc.field::<F>(name, opts.order)?)?,
        (None, Some(a), Some(b)) => {
            let (ctx, names) = doc.chart(None, opts.order)?;
            SurfaceForm::new(doc.jet(ctx, &names, a, "surface.a")?, doc.jet(ctx, &names, b, "surface.b")?)?
        }
        _ => return Err(CliError::Scene("[surface] needs either field or both a and b".into())),
    };
    let index = cs_index_surface(&omega)?;
    let names = doc.names()?;
    let mut out = Findings::new(Verdict::Holds).at_order(omega.context().order());
    out.witness("a", omega.a.display_with(&names));
    out.witness("b", omega.b.display_with(&names));
    out.witness("index", index.to_string());
    Ok(out)
}

/// A component generator: given on the component, or restricted from the germ.
fn component_field<F: Field>(
    doc: &SceneDoc,
    name: &str,
    component: usize,
    opts: &GlobalOpts,
) -> Result<LogDerivation<F>, CliError> {
    let v = doc.field::<F>(name, opts.order)?;
    if v.context() == doc.context(opts.order)? {
        Ok(v.restrict(component)?)
    } else {
        Ok(v)
    }
}

fn pushout<F: Field>(doc: &SceneDoc, opts: &GlobalOpts) -> Result<Findings, CliError> {
    let scene = &doc.scene;
    let comps = &scene.component;
    // scalars come from the generators only when there are triple strata to
    // check and none are given explicitly
    let mut glue = if comps.len() >= 3 && scene.double_stratum.is_empty() {
        let firsts = comps
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let name = c
                    .generators
                    .first()
                    .ok_or_else(|| CliError::Scene(format!("component {} has no generators", k + 1)))?;
                component_field::<F>(doc, name, k, opts)
            })
            .collect::<Result<Vec<_>, _>>()?;
        SNCGlueData::from_generators(&firsts)?
    } else {
        let max_index = scene
            .double_stratum
            .iter()
            .flat_map(|d| [d.i, d.j])
            .chain(scene.triple_stratum.iter().flat_map(|t| t.indices))
            .max()
            .unwrap_or(0);
        SNCGlueData::new(comps.len().max(max_index).max(scene.germ.as_ref().map_or(0, |g| g.r)))
    };
    for (k, d) in scene.double_stratum.iter().enumerate() {
        glue.set_double(d.i, d.j, doc.scalar(&d.phi, &format!("double_stratum[{k}].phi"))?)?;
    }
    if !scene.triple_stratum.is_empty() {
        glue.triple.clear();
        for (k, t) in scene.triple_stratum.iter().enumerate() {
            let scalars = match &t.scalars {
                Some(s) => {
                    let v: Vec<F> = doc.scalars(s, &format!("triple_stratum[{k}].scalars"))?;
                    Some([v[0].clone(), v[1].clone(), v[2].clone()])
                }
                None => None,
            };
            let [i, j, l] = t.indices;
            glue.add_triple(i, j, l, scalars)?;
        }
    }
    let cert = check_gluing_cocycle(&glue)?;
    let mut out = Findings::new(cert.holds.into());
    for ((i, j), phi) in &glue.double {
        out.witness(format!("phi_{i}{j}"), phi.to_string());
    }
    for ((i, j, k), p) in &cert.products {
        out.witness(format!("product_{i}{j}{k}"), p.to_string());
    }
    for f in &cert.failures {
        let (i, j, k) = f.triple;
        out.certificates
            .push(format!("triple ({i},{j},{k}): product {} \u{2260} 1", f.product));
    }
    if let Some(block) = &scene.pushout {
        let v = doc.field::<F>(&block.field, opts.order)?;
        let foliations = comps
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let gens = c
                    .generators
                    .iter()
                    .map(|n| component_field::<F>(doc, n, k, opts))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FoliationGerm::new(gens, c.rank.unwrap_or(c.generators.len()))?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let rep: PushoutReport<F> = pushout_membership(&restrict_to_components(&v)?, &foliations)?;
        out.order = Some(doc.context(opts.order)?.order());
        out.witness("decided_at", rep.order);
        let names = doc.names()?;
        for (k, coeffs) in rep.coefficients.iter().enumerate() {
            if let Some(cs) = coeffs {
                let mut local = names.clone();
                local.remove(k);
                let shown: Vec<String> = cs.iter().map(|c| c.display_with(&local)).collect();
                out.witness(format!("coefficients.{}", k + 1), shown);
            }
        }
        for (k, d) in &rep.failures {
            out.certificates
                .push(format!("component {k}: the restriction leaves the component foliation in degree {d}"));
        }
        out.decision = match (out.decision, Verdict::from(rep.decision)) {
            (Verdict::Holds, m) => m,
            (d, _) => d,
        };
    }
    Ok(out)
}

fn holonomy<F: Field>(doc: &SceneDoc, _opts: &GlobalOpts) -> Result<Findings, CliError> {
    let block = doc.scene.holonomy.as_ref().ok_or_else(|| missing("holonomy"))?;
    let h1 = HolonomyData::new(doc.scalars::<F>(&block.h1, "holonomy.h1")?)?;
    let h2 = HolonomyData::new(doc.scalars::<F>(&block.h2, "holonomy.h2")?)?;
    let rep = check_holonomy_compatibility(&h1, &h2)?;
    let mut holds = rep.holds;
    let mut out = Findings::new(Verdict::Holds);
    out.witness("products", strings(&rep.products));
    for (k, p) in rep.products.iter().enumerate() {
        if !p.is_one() {
            out.certificates
                .push(format!("generator {}: h1 * h2 = {p} \u{2260} 1", k + 1));
        }
    }
    if let Some([d1, d2]) = block.normal_degrees {
        let ok = check_normal_degrees(d1, d2);
        out.witness("normal_degree_sum", d1 + d2);
        if !ok {
            out.certificates
                .push(format!("normal degrees {d1} + {d2} = {} \u{2260} 0", d1 + d2));
        }
        holds &= ok;
    }
    out.decision = holds.into();
    Ok(out)
}

fn p1(degrees: &[i64]) -> Findings {
    let bundle = GradedBundleP1::new(degrees.to_vec());
    let (h0, h1) = bundle.cohomology();
    let mut out = Findings::new(Verdict::Holds);
    out.witness("h0", h0);
    out.witness("h1", h1);
    out.witness("euler_characteristic", bundle.euler_characteristic());
    if degrees.len() > 1 {
        let lines: Vec<Value> = degrees
            .iter()
            .map(|&d| {
                let c = h_p1(d);
                json!({"degree": d, "h0": c.h0, "h1": c.h1})
            })
            .collect();
        out.witness("lines", lines);
    }
    out
}

fn snc_curve<F: Field>(doc: &SceneDoc, _opts: &GlobalOpts) -> Result<Findings, CliError> {
    let block = doc.scene.bundle.as_ref().ok_or_else(|| missing("bundle"))?;
    let left = GradedBundleP1::new(block.left.clone());
    let right = GradedBundleP1::new(block.right.clone());
    let glue = match &block.glue {
        Some(rows) => matrix::<F>(doc, rows, "bundle.glue")?,
        None => Matrix::identity(left.rank()),
    };
    let e = SNCCurveBundle::new(left, right, glue)?;
    let (h0, h1) = cohomology_snc_curve(&e);
    let (d0, d1) = cohomology_snc_curve(&e.serre_dual());
    let mut out = Findings::new(Verdict::Holds);
    out.witness("h0", h0);
    out.witness("h1", h1);
    out.witness("dual_h0", d0);
    out.witness("dual_h1", d1);
    out.witness("euler_characteristic", h0 as i64 - h1 as i64);
    out.witness("serre_duality", h0 == d1 && h1 == d0);
    Ok(out)
}

fn matrix<F: Field>(doc: &SceneDoc, rows: &[Vec<Scalar>], key: &str) -> Result<Matrix<F>, CliError> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(r, row)| doc.scalars::<F>(row, &format!("{key}[{r}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Scene(format!("{key} is not rectangular")));
    }
    Ok(Matrix::from_rows(cols, rows))
}

fn leaf_data<F: Field>(doc: &SceneDoc, opts: &GlobalOpts) -> Result<CechLeafData<F>, CliError> {
    match doc.scene.leaf.as_ref().ok_or_else(|| missing("leaf"))? {
        LeafBlock::P1 { columns, maps } => {
            let cols: Vec<GradedBundleP1> = columns.iter().map(|d| GradedBundleP1::new(d.clone())).collect();
            let maps = maps
                .iter()
                .enumerate()
                .map(|(q, m)| {
                    m.iter()
                        .enumerate()
                        .map(|(r, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(c, poly)| doc.scalars::<F>(poly, &format!("leaf.maps[{q}][{r}][{c}]")))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CechLeafData::p1(&cols, &maps)?)
        }
        LeafBlock::Twisted { opens, dims, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(opts.seed));
            Ok(CechLeafData::twisted_constant(*opens, dims, &mut rng)?)
        }
    }
}

fn leaf_complex<F: Field>(doc: &SceneDoc, opts: &GlobalOpts) -> Result<Findings, CliError> {
    let data = leaf_data::<F>(doc, opts)?;
    let all = hypercohomology_all(&data)?;
    let [h0, h1, h2] = leaf_complex_hypercohomology(&data)?;
    let mut out = Findings::new(Verdict::Holds);
    out.witness("h0", h0);
    out.witness("h1", h1);
    out.witness("h2", h2);
    out.witness("hypercohomology", json!(all));
    let columns: Vec<Vec<usize>> = (0..data.columns()).map(|q| column_cohomology(&data, q)).collect();
    out.witness("column_cohomology", json!(columns));
    if data.columns() >= 2 {
        let (coker, ker) = les_terms(&data);
        out.witness("les_coker", coker);
        out.witness("les_ker", ker);
    }
    Ok(out)
}

fn cochain<F: Field>(doc: &SceneDoc, v: &Option<Vec<Scalar>>, len: usize, key: &str) -> Result<Vec<F>, CliError> {
    match v {
        Some(v) => doc.scalars(v, key),
        None => Ok(vec![F::zero(); len]),
    }
}

const EQUATIONS: [&str; 4] = [
    "\u{3b4}\u{302}\u{3b8} = 0",
    "\u{3b4}\u{302}g + \u{3b4}\u{3b8} = 0",
    "\u{3b4}\u{302}b - \u{3b4}g = 0",
    "\u{3b4}b = 0",
];

fn obstruction<F: Field>(doc: &SceneDoc, opts: &GlobalOpts) -> Result<Findings, CliError> {
    let data = leaf_data::<F>(doc, opts)?;
    let block = doc.scene.cochain.as_ref().ok_or_else(|| missing("cochain"))?;
    let dims = [data.dim(2, 0), data.dim(1, 1), data.dim(0, 2)];
    let mut triple = if block.rho.is_some() || block.h.is_some() {
        if block.theta.is_some() || block.g.is_some() || block.b.is_some() {
            return Err(CliError::Scene("give either (rho, h) or (theta, g, b), not both".into()));
        }
        let rho = cochain::<F>(doc, &block.rho, data.dim(1, 0), "cochain.rho")?;
        let h = cochain::<F>(doc, &block.h, data.dim(0, 1), "cochain.h")?;
        total_coboundary(&data, &rho, &h)?
    } else {
        ObstructionTriple {
            theta: cochain(doc, &block.theta, dims[0], "cochain.theta")?,
            g: cochain(doc, &block.g, dims[1], "cochain.g")?,
            b: cochain(doc, &block.b, dims[2], "cochain.b")?,
        }
    };
    for (k, p) in block.perturb.iter().enumerate() {
        let target = match p.layer.as_str() {
            "theta" => &mut triple.theta,
            "g" => &mut triple.g,
            "b" => &mut triple.b,
            other => return Err(CliError::Scene(format!("unknown cochain layer '{other}'"))),
        };
        let len = target.len();
        let slot = target.get_mut(p.index).ok_or_else(|| {
            CliError::Scene(format!("perturbation {k}: index {} out of range 0..{len}", p.index))
        })?;
        *slot = slot.clone() + doc.scalar::<F>(&p.value, &format!("cochain.perturb[{k}].value"))?;
    }
    let check = verify_obstruction_cocycle(&data, &triple)?;
    let mut out = Findings::new(check.is_cocycle().into());
    out.witness("dims", json!({"theta": dims[0], "g": dims[1], "b": dims[2]}));
    out.witness("equations", json!(check.equations));
    out.witness("coboundary", check.is_coboundary());
    if let Some((rho, h)) = &check.primitive {
        out.witness("primitive", json!({"rho": strings(rho), "h": strings(h)}));
    }
    for (k, ok) in check.equations.iter().enumerate() {
        if !ok {
            out.certificates
                .push(format!("equation {} fails: {}", k + 1, EQUATIONS[k]));
        }
    }
    Ok(out)
}

/// Evaluate a scene using its own `command` entry.
pub fn execute_scene_file(path: &Path, opts: &GlobalOpts) -> Report {
    let failed = |msg: String| {
        let mut r = Report::new(format!("scene {}", path.display()), Verdict::InputError);
        r.error = Some(msg);
        r
    };
    let doc = match SceneDoc::load(path) {
        Ok(d) => d,
        Err(e) => return failed(e.to_string()),
    };
    let Some(entry) = doc.scene.command.as_deref() else {
        return failed("scene has no command entry".into());
    };
    match Command::from_scene_entry(entry, path.to_path_buf()) {
        Some(cmd) => execute(&cmd, opts),
        None => failed(format!("unknown command '{entry}'")),
    }
}

/// Evaluate every `.scene` and `.toml` file in `dir` in parallel.
pub fn execute_all(dir: &Path, opts: &GlobalOpts) -> Report {
    let start = Instant::now();
    let mut report = Report::new(format!("--all {}", dir.display()), Verdict::Holds);
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            report.decision = Verdict::InputError;
            report.error = Some(format!("{}: {e}", dir.display()));
            return report;
        }
    };
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|x| x.to_str()), Some("scene" | "toml")))
        .collect();
    paths.sort();
    if paths.is_empty() {
        report.decision = Verdict::InputError;
        report.error = Some(format!("no scene files in {}", dir.display()));
        return report;
    }
    report.batch = std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| s.spawn(move || execute_scene_file(p, opts)))
            .collect();
        handles
            .into_iter()
            .zip(&paths)
            .map(|(h, p)| {
                h.join().unwrap_or_else(|_| {
                    let mut r = Report::new(format!("scene {}", p.display()), Verdict::InputError);
                    r.error = Some("evaluation panicked".into());
                    r
                })
            })
            .collect()
    });
    report.decision = report
        .batch
        .iter()
        .fold(Verdict::Holds, |acc, r| acc.combine(r.decision));
    report.elapsed_us = start.elapsed().as_micros() as u64;
    report
}
