//! Jobs map one-to-one onto library calls; the CLI only reshapes results.

use std::sync::Arc;

use anyhow::{bail, Result};
use clap::ValueEnum;
use cofilt::cobar::{cobar_complex, cohomology_dims, injectivity_profile, FiniteCoalgebra, Method};
use cofilt::comod::{parse_module, Built, Comodule, Stream};
use cofilt::coordalg::{parse_group, Group};
use cofilt::filtfun::{coalgebra_closure, filtration_dims, restrict, Closure, Level, Source, XSpace};
use cofilt::growth::classify;
use cofilt::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// dim O(G)_{<=d}
    Dims,
    /// dim M_{O(G)_{<=d}}
    Filter,
    /// coalgebra closures of O(G)_{<=d}, or of --span
    Closure,
    /// growth class of a filtration dimension sequence
    Growth,
    /// cobar cohomology of the level-d restriction over O(G)_{<=d}
    Cobar,
    /// injectivity of the level-d restriction over O(G)_{<=d}
    Inject,
    /// comodule axioms
    Validate,
}

/// The canonical description of a job. Its JSON is what gets fingerprinted.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub group: String,
    pub module: Option<String>,
    pub span: Option<String>,
    pub dmax: Option<u32>,
    pub nmax: Option<u32>,
    pub window: Option<usize>,
}

pub type Row = Map<String, Value>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Payload {
    pub rows: Vec<Row>,
    pub verdicts: Map<String, Value>,
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_ambient_dim: usize,
    pub max_ch_size: usize,
    pub max_dmax: u32,
}

impl JobSpec {
    /// Parses group and module text into canonical spellings.
    pub fn canonical(
        command: Command,
        group: &str,
        module: Option<&str>,
        span: Option<&str>,
        dmax: Option<u32>,
        nmax: Option<u32>,
        window: Option<usize>,
    ) -> Result<JobSpec> {
        let g = parse_group(group)?;
        let module = module.map(|m| parse_module(m, &g).map(|e| e.to_string())).transpose()?;
        let span = span.map(|s| s.split(',').map(str::trim).collect::<Vec<_>>().join(", "));
        Ok(JobSpec {
            command,
            group: g.to_string(),
            module,
            span,
            dmax,
            nmax,
            window,
        })
    }
}

fn row(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Row {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn resource(what: &'static str, value: usize, limit: usize) -> anyhow::Error {
    Error::Resource { what, value, limit }.into()
}

fn check_ambient(dim: usize, limits: &Limits) -> Result<()> {
    if dim > limits.max_ambient_dim {
        return Err(resource("ambient dimension", dim, limits.max_ambient_dim));
    }
    Ok(())
}

fn usage(msg: &str) -> anyhow::Error {
    anyhow::anyhow!("{msg}")
}

struct Context {
    group: Arc<Group>,
    limits: Limits,
}

impl Context {
    fn dmax(&self, job: &JobSpec) -> Result<u32> {
        let d = job.dmax.ok_or_else(|| usage("--dmax is required for this command"))?;
        if d > self.limits.max_dmax {
            return Err(resource("d_max", d as usize, self.limits.max_dmax as usize));
        }
        Ok(d)
    }

    /// For jobs that materialize `O(G)_{<=d}` for every `d <= d_max`.
    fn truncations(&self, dmax: u32) -> Result<()> {
        for d in 0..=dmax {
            check_ambient(self.group.filtration_dim(d), &self.limits)?;
        }
        Ok(())
    }

    fn module(&self, job: &JobSpec) -> Result<Built> {
        let text = job
            .module
            .as_deref()
            .ok_or_else(|| usage("--module is required for this command"))?;
        let built = Built::parse(text, &self.group)?;
        if let Built::Finite(m) = &built {
            check_ambient(m.dim(), &self.limits)?;
        }
        Ok(built)
    }

    /// Largest generation a stream job at `d_max` builds.
    fn top_generation(&self, s: &Stream, dmax: u32) -> Result<Arc<Comodule>> {
        let top = s.generation(s.sufficiency(dmax))?;
        check_ambient(top.dim(), &self.limits)?;
        Ok(top)
    }

    fn level_module(&self, built: &Built, d: u32) -> Result<Comodule> {
        let r = match built {
            Built::Finite(m) => restrict(m, Level::Degree(d))?,
            Built::Stream(s) => restrict(&*s.generation(s.sufficiency(d))?, Level::Degree(d))?,
        };
        Ok(r.comodule)
    }
}

fn source(built: &Built) -> Source<'_> {
    match built {
        Built::Finite(m) => Source::Finite(m),
        Built::Stream(s) => Source::Stream(s),
    }
}

fn closure_row(d: u32, x: &XSpace, c: &Closure) -> Row {
    row([
        ("d", json!(d)),
        ("dim", json!(c.space.dim())),
        ("x_dim", json!(x.dim())),
        ("rounds", json!(c.rounds)),
        ("subcoalgebra", json!(c.is_subcoalgebra)),
    ])
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Regular => "regular",
        Method::Cofree => "cofree",
        Method::Splitting => "splitting",
    }
}

pub fn run(job: &JobSpec, limits: Limits) -> Result<Payload> {
    let cx = Context {
        group: Arc::new(parse_group(&job.group)?),
        limits,
    };
    let group = &cx.group;
    let mut verdicts = Map::new();
    let rows = match job.command {
        Command::Dims => {
            let dmax = cx.dmax(job)?;
            cx.truncations(dmax)?;
            let dims = group.filtration_dims(dmax);
            (0..=dmax)
                .zip(dims)
                .map(|(d, n)| row([("d", json!(d)), ("dim", json!(n))]))
                .collect()
        }
        Command::Filter => {
            let dmax = cx.dmax(job)?;
            let built = cx.module(job)?;
            if let Built::Stream(s) = &built {
                cx.top_generation(s, dmax)?;
            }
            let res = filtration_dims(source(&built), dmax)?;
            verdicts.insert("ambient_dim".into(), json!(res.ambient_dim));
            if let Built::Finite(_) = built {
                verdicts.insert("stabilized_at".into(), json!(res.stabilized_at()));
            }
            res.levels
                .iter()
                .map(|l| {
                    let mut r = row([("d", json!(l.d)), ("dim", json!(l.dim))]);
                    if let Some(n) = l.generation {
                        r.insert("generation".into(), json!(n));
                    }
                    r
                })
                .collect()
        }
        Command::Closure => match &job.span {
            Some(text) => {
                let elements = group.parse_span(text)?;
                let x = XSpace::span(group.field(), &elements);
                check_ambient(x.dim(), &cx.limits)?;
                let c = coalgebra_closure(group, &x)?;
                let d = elements
                    .iter()
                    .filter_map(|e| group.filtration_degree(e))
                    .max()
                    .unwrap_or(0);
                let basis: Vec<String> = c.space.elements().iter().map(|e| group.format_element(e)).collect();
                verdicts.insert("basis".into(), json!(basis));
                vec![closure_row(d, &x, &c)]
            }
            None => {
                let dmax = cx.dmax(job)?;
                cx.truncations(dmax)?;
                let mut rows = Vec::new();
                for d in 0..=dmax {
                    let x = XSpace::canonical(group, d);
                    rows.push(closure_row(d, &x, &coalgebra_closure(group, &x)?));
                }
                rows
            }
        },
        Command::Growth => {
            let dmax = cx.dmax(job)?;
            let dims: Vec<usize> = match &job.module {
                None => {
                    cx.truncations(dmax)?;
                    group.filtration_dims(dmax)
                }
                Some(_) => {
                    let built = cx.module(job)?;
                    if let Built::Stream(s) = &built {
                        cx.top_generation(s, dmax)?;
                    }
                    filtration_dims(source(&built), dmax)?.dims()
                }
            };
            let seq: Vec<u64> = dims.iter().map(|&n| n as u64).collect();
            let report = classify(&seq, 0, Some(group.p()), job.window)?;
            verdicts.insert("class".into(), json!(report.class.to_string()));
            verdicts.insert("window".into(), json!([report.window.0, report.window.1]));
            verdicts.insert("window_based".into(), json!(true));
            if let Some(fit) = report.fit {
                verdicts.insert(
                    "fit".into(),
                    json!({
                        "exponent": fit.exponent,
                        "slope": fit.slope,
                        "r2": fit.r2,
                        "p_power_sampling": fit.p_power_sampling,
                    }),
                );
            }
            (0..=dmax)
                .zip(dims)
                .map(|(d, n)| row([("d", json!(d)), ("dim", json!(n))]))
                .collect()
        }
        Command::Cobar => {
            let dmax = cx.dmax(job)?;
            cx.truncations(dmax)?;
            let nmax = job.nmax.unwrap_or(2);
            let built = cx.module(job)?;
            if let Built::Stream(s) = &built {
                cx.top_generation(s, dmax)?;
            }
            let mut rows = Vec::new();
            for d in 0..=dmax {
                let x = XSpace::canonical(group, d);
                let c = FiniteCoalgebra::new(group.clone(), coalgebra_closure(group, &x)?.space)?;
                let m = c.express(&cx.level_module(&built, d)?)?;
                let size = (c.dim() as u128).saturating_pow(nmax) * m.dim() as u128;
                if size > cx.limits.max_ch_size as u128 {
                    let size = usize::try_from(size).unwrap_or(usize::MAX);
                    return Err(resource("cobar chain dimension", size, cx.limits.max_ch_size));
                }
                let h = cohomology_dims(&cobar_complex(&c, &m, nmax as usize)?);
                let mut r = row([("d", json!(d)), ("dim", json!(c.dim())), ("module_dim", json!(m.dim()))]);
                for (n, v) in h.dims.iter().enumerate() {
                    r.insert(format!("h{n}"), json!(v));
                }
                rows.push(r);
            }
            verdicts.insert("top_degree".into(), json!(nmax));
            verdicts.insert("top_degree_is_upper_bound".into(), json!(true));
            rows
        }
        Command::Inject => {
            let dmax = cx.dmax(job)?;
            cx.truncations(dmax)?;
            let built = cx.module(job)?;
            if let Built::Stream(s) = &built {
                cx.top_generation(s, dmax)?;
            }
            let profile = injectivity_profile(source(&built), dmax)?;
            verdicts.insert("all_injective".into(), json!(profile.iter().all(|r| r.injective)));
            profile
                .iter()
                .map(|r| {
                    row([
                        ("d", json!(r.d)),
                        ("dim", json!(r.module_dim)),
                        ("coalgebra_dim", json!(r.coalgebra_dim)),
                        ("injective", json!(r.injective)),
                        ("method", json!(method_name(r.method))),
                    ])
                })
                .collect()
        }
        Command::Validate => {
            let built = cx.module(job)?;
            let mut rows = Vec::new();
            let mut push = |d: u32, m: &Comodule, inclusion: Option<bool>| {
                let report = m.validate();
                let violation = match &report.violation {
                    None => "none".to_string(),
                    Some(v) => format!("{}@{}", v.axiom, v.index),
                };
                let mut r = row([
                    ("d", json!(d)),
                    ("dim", json!(report.dim)),
                    ("passed", json!(report.passed())),
                    ("violation", json!(violation)),
                ]);
                if let Some(ok) = inclusion {
                    r.insert("inclusion".into(), json!(ok));
                }
                rows.push(r);
            };
            match &built {
                Built::Finite(m) => push(m.max_filtration_degree(), m, None),
                Built::Stream(s) => {
                    let dmax = job
                        .dmax
                        .ok_or_else(|| usage("--dmax is required to validate a stream"))?;
                    if dmax > cx.limits.max_dmax {
                        bail!(resource("d_max", dmax as usize, cx.limits.max_dmax as usize));
                    }
                    for n in 0..=dmax {
                        let m = s.generation(n)?;
                        check_ambient(m.dim(), &cx.limits)?;
                        push(n, &m, Some(s.inclusion_is_comodule_map(n)?));
                    }
                }
            }
            let passed = rows
                .iter()
                .all(|r| r["passed"] == json!(true) && r.get("inclusion").is_none_or(|v| *v == json!(true)));
            verdicts.insert("passed".into(), json!(passed));
            rows
        }
    };
    Ok(Payload { rows, verdicts })
}
