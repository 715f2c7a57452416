//! Scene files: TOML documents describing one problem instance.
//!
//! Polynomials are strings in the jet syntax, numeric literals are integers
//! or `"p/q"` strings, and matrices, degree lists and cochains are arrays.
//! The grammar is written out in `docs/scene-format.md`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use logfol::parse::{default_names, parse_poly, resolver};
use logfol::{Field, GermContext, Jet, Poly, LogDerivation, LogOneForm, DEFAULT_ORDER};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn text(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    #[default]
    Rational,
    Gaussian,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub version: u32,
    pub command: Option<String>,
    #[serde(default)]
    pub scalars: ScalarKind,
    pub germ: Option<GermBlock>,
    #[serde(default)]
    pub constants: BTreeMap<String, Scalar>,
    #[serde(default)]
    pub fields: BTreeMap<String, FieldSpec>,
    #[serde(default)]
    pub forms: BTreeMap<String, FormSpec>,
    pub foliation: Option<FoliationBlock>,
    #[serde(default)]
    pub component: Vec<ComponentBlock>,
    #[serde(default)]
    pub double_stratum: Vec<DoubleBlock>,
    #[serde(default)]
    pub triple_stratum: Vec<TripleBlock>,
    pub pushout: Option<PushoutBlock>,
    pub cs: Option<CsBlock>,
    pub surface: Option<SurfaceBlock>,
    pub holonomy: Option<HolonomyBlock>,
    pub monoid: Option<MonoidBlock>,
    pub bundle: Option<BundleBlock>,
    pub leaf: Option<LeafBlock>,
    pub cochain: Option<CochainBlock>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermBlock {
    pub n: usize,
    pub r: usize,
    pub order: Option<u32>,
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub smooth: bool,
}

/// Either the coefficients of `d/dx_k` of an ordinary vector field, or a
/// table giving log and smooth slots directly, optionally on a component.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Coefficients(Vec<String>),
    Table(FieldTable),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldTable {
    pub component: Option<usize>,
    pub coeffs: Option<Vec<String>>,
    pub log: Option<Vec<String>>,
    pub smooth: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub dlog: Vec<String>,
    #[serde(default)]
    pub regular: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationBlock {
    pub generators: Vec<String>,
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentBlock {
    pub generators: Vec<String>,
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleBlock {
    pub i: usize,
    pub j: usize,
    pub phi: Scalar,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleBlock {
    pub indices: [usize; 3],
    pub scalars: Option<[Scalar; 3]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushoutBlock {
    pub field: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CsBlock {
    pub form: String,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceBlock {
    pub field: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolonomyBlock {
    pub h1: Vec<Scalar>,
    pub h2: Vec<Scalar>,
    pub normal_degrees: Option<[i64; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidBlock {
    pub rank: Option<usize>,
    pub generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub lattice: Lattice,
    #[serde(rename = "box")]
    pub box_bound: Option<i64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    #[default]
    Ambient,
    Group,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleBlock {
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    pub glue: Option<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LeafBlock {
    /// Split bundles on the projective line; `maps[q][row][col]` lists the
    /// coefficients of a polynomial in `t`.
    P1 {
        columns: Vec<Vec<i64>>,
        #[serde(default)]
        maps: Vec<Vec<Vec<Vec<Scalar>>>>,
    },
    /// Random twisted-constant data on the full nerve of `opens` opens.
    Twisted {
        opens: usize,
        dims: Vec<usize>,
        seed: Option<u64>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainBlock {
    pub theta: Option<Vec<Scalar>>,
    pub g: Option<Vec<Scalar>>,
    pub b: Option<Vec<Scalar>>,
    pub rho: Option<Vec<Scalar>>,
    pub h: Option<Vec<Scalar>>,
    #[serde(default)]
    pub perturb: Vec<Perturbation>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub layer: String,
    pub index: usize,
    pub value: Scalar,
}

/// A parsed scene together with its source, for error locations.
#[derive(Clone, Debug)]
pub struct SceneDoc {
    pub path: PathBuf,
    pub source: String,
    pub scene: Scene,
}

/// 1-based line and column of byte offset `pos`.
pub fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let pos = pos.min(src.len());
    let before = &src[..pos];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

impl SceneDoc {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let source = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(path, source)
    }

    pub fn parse(path: &Path, source: String) -> Result<Self, CliError> {
        let scene: Scene = toml::from_str(&source).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(&source, s.start));
            CliError::Parse {
                path: path.display().to_string(),
                line,
                column,
                message: e.message().to_string(),
            }
        })?;
        if scene.version != 1 {
            return Err(CliError::Scene(format!("unsupported scene version {}", scene.version)));
        }
        Ok(SceneDoc {
            path: path.to_path_buf(),
            source,
            scene,
        })
    }

    /// Position of an expression inside the source: the first quoted
    /// occurrence, shifted by `offset` characters into the string.
    fn locate(&self, expr: &str, offset: usize) -> (usize, usize) {
        let quoted = format!("\"{expr}\"");
        match self.source.find(&quoted) {
            Some(p) => {
                let (l, c) = line_col(&self.source, p + 1);
                (l, c + offset.saturating_sub(1))
            }
            None => (0, offset),
        }
    }

    fn parse_error(&self, key: &str, expr: &str, column: usize, message: &str) -> CliError {
        let (line, column) = self.locate(expr, column);
        CliError::Parse {
            path: self.path.display().to_string(),
            line,
            column,
            message: format!("{key}: {message}"),
        }
    }

    pub fn germ(&self) -> Result<&GermBlock, CliError> {
        self.scene
            .germ
            .as_ref()
            .ok_or_else(|| CliError::Scene("scene has no [germ] block".into()))
    }

    /// The germ context at `order` if given, else the scene order, else 6.
    pub fn context(&self, order: Option<u32>) -> Result<GermContext, CliError> {
        let g = self.germ()?;
        let order = order.or(g.order).unwrap_or(DEFAULT_ORDER);
        let ctx = if g.smooth {
            GermContext::smooth(g.n, g.r, order)?
        } else {
            GermContext::normal_crossing(g.n, g.r, order)?
        };
        Ok(ctx)
    }

    pub fn names(&self) -> Result<Vec<String>, CliError> {
        let g = self.germ()?;
        match &g.names {
            Some(names) if names.len() != g.n => Err(CliError::Scene(format!(
                "germ has n = {} but {} variable names",
                g.n,
                names.len()
            ))),
            Some(names) => Ok(names.clone()),
            None => Ok(default_names(g.n)),
        }
    }

    pub fn scalar<F: Field>(&self, s: &Scalar, key: &str) -> Result<F, CliError> {
        let text = s.text();
        if let Some(v) = F::parse_literal(&text) {
            return Ok(v);
        }
        if let Some((_, v)) = self.constants::<F>()?.into_iter().find(|(n, _)| *n == text.trim()) {
            return Ok(v);
        }
        Err(self.parse_error(key, &text, 1, &format!("'{text}' is not a number")))
    }

    pub fn scalars<F: Field>(&self, v: &[Scalar], key: &str) -> Result<Vec<F>, CliError> {
        v.iter()
            .enumerate()
            .map(|(k, s)| self.scalar(s, &format!("{key}[{k}]")))
            .collect()
    }

    pub fn constants<F: Field>(&self) -> Result<Vec<(String, F)>, CliError> {
        let mut out = Vec::new();
        if self.scene.scalars == ScalarKind::Gaussian && !self.scene.constants.contains_key("i") {
            if let Some(i) = F::parse_literal("1i") {
                out.push(("i".to_string(), i));
            }
        }
        for (name, value) in &self.scene.constants {
            let text = value.text();
            let v = F::parse_literal(&text).ok_or_else(|| {
                self.parse_error(&format!("constants.{name}"), &text, 1, "not a rational literal")
            })?;
            out.push((name.clone(), v));
        }
        Ok(out)
    }

    pub fn poly<F: Field>(&self, names: &[String], expr: &str, key: &str) -> Result<Poly<F>, CliError> {
        let consts = self.constants::<F>()?;
        let res = resolver(names, &consts);
        parse_poly(expr, names.len(), &res).map_err(|e| match e {
            logfol::Error::Parse { column, message } => self.parse_error(key, expr, column, &message),
            other => CliError::Core(other),
        })
    }

    /// Parse `expr` as a jet on `ctx` with variable names `names`.
    pub fn jet<F: Field>(&self, ctx: GermContext, names: &[String], expr: &str, key: &str) -> Result<Jet<F>, CliError> {
        Ok(Jet::normal_form(&self.poly(names, expr, key)?, ctx)?)
    }

    /// Context and names of component `i` (1-based), or of the germ itself.
    pub fn chart(&self, component: Option<usize>, order: Option<u32>) -> Result<(GermContext, Vec<String>), CliError> {
        let ctx = self.context(order)?;
        let mut names = self.names()?;
        match component {
            None => Ok((ctx, names)),
            Some(i) if i == 0 || i > ctx.r() => Err(CliError::Scene(format!(
                "component {i} out of range 1..={}",
                ctx.r()
            ))),
            Some(i) => {
                names.remove(i - 1);
                Ok((ctx.restricted(i - 1)?, names))
            }
        }
    }

    pub fn field_spec(&self, name: &str) -> Result<&FieldSpec, CliError> {
        self.scene
            .fields
            .get(name)
            .ok_or_else(|| CliError::Scene(format!("unknown field '{name}'")))
    }

    pub fn field<F: Field>(&self, name: &str, order: Option<u32>) -> Result<LogDerivation<F>, CliError> {
        let spec = self.field_spec(name)?;
        let (component, coeffs, log, smooth) = match spec {
            FieldSpec::Coefficients(c) => (None, Some(c), None, None),
            FieldSpec::Table(t) => (t.component, t.coeffs.as_ref(), t.log.as_ref(), t.smooth.as_ref()),
        };
        let (ctx, names) = self.chart(component, order)?;
        let key = format!("fields.{name}");
        match (coeffs, log) {
            (Some(c), None) if smooth.is_none() => {
                let polys = c
                    .iter()
                    .enumerate()
                    .map(|(k, e)| self.poly::<F>(&names, e, &format!("{key}[{k}]")))
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(LogDerivation::from_vector_field(ctx, &polys)?)
            }
            (None, Some(b)) => {
                let empty = Vec::new();
                let a = smooth.unwrap_or(&empty);
                let parse = |v: &Vec<String>, part: &str| -> Result<Vec<Jet<F>>, CliError> {
                    v.iter()
                        .enumerate()
                        .map(|(k, e)| self.jet(ctx, &names, e, &format!("{key}.{part}[{k}]")))
                        .collect()
                };
                Ok(LogDerivation::new(ctx, parse(b, "log")?, parse(a, "smooth")?)?)
            }
            _ => Err(CliError::Scene(format!(
                "field '{name}' needs either coeffs or log (+ smooth) entries"
            ))),
        }
    }

    pub fn form<F: Field>(&self, name: &str, order: Option<u32>) -> Result<LogOneForm<F>, CliError> {
        let spec = self
            .scene
            .forms
            .get(name)
            .ok_or_else(|| CliError::Scene(format!("unknown form '{name}'")))?;
        let (ctx, names) = self.chart(None, order)?;
        let key = format!("forms.{name}");
        let parse = |v: &Vec<String>, part: &str| -> Result<Vec<Jet<F>>, CliError> {
            v.iter()
                .enumerate()
                .map(|(k, e)| self.jet(ctx, &names, e, &format!("{key}.{part}[{k}]")))
                .collect()
        };
        Ok(LogOneForm::new(ctx, parse(&spec.dlog, "dlog")?, parse(&spec.regular, "regular")?)?)
    }
}
