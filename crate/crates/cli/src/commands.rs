//! Subcommand handlers. Each returns the text to print on success.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use serde::Serialize;

use hecke2b::fixtures;
use hecke2b::hecke::rank2::orbit;
use hecke2b::hecke::structure::diagonal_candidates;
use hecke2b::hecke::{
    build_calibrated, is_irreducible, rank2_induced, tau_square_check, tau_weight_check,
    verify_relations, GenericModule, HeckeParams, Module, Normalization, Rank2Class, RelationCheck,
};
use hecke2b::regions::{
    self, configuration, parse_half, parse_half_list, standard_fillings, ContentVector, LocalRegion,
};
use hecke2b::schurweyl::{
    bratteli_bounded, build_path_module, configuration_from_lambda, dimension_identity,
    lambda_to_zcj, Partition, RectPair,
};
use hecke2b::weyl::parse_roots;
use hecke2b::{ApproxScalar, Field, Scalar};

use crate::views::{
    halves, root_strings, word_text, MapLambdaView, ModuleView, RegionView, VerifyView,
};
use crate::{
    BratteliArgs, CliError, Command, Format, MapLambdaArgs, ModuleArgs, NormalizationArg,
    ParamSpec, RegionArgs, RegionSpec, VerifyArgs, VerifySwArgs,
};

/// Bound on the intertwiner weight check's monomial exponents.
const TAU_MONOMIAL_BOUND: i64 = 2;

pub fn dispatch(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Region(a) => region(a),
        Command::ModuleBuild(a) => module_build(a),
        Command::ModuleVerify(a) => module_verify(a),
        Command::Bratteli(a) => bratteli(a),
        Command::MapLambda(a) => map_lambda(a),
        Command::VerifySw(a) => verify_sw(a),
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    CliError::Usage(msg.into()).into()
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).context("serializing output")?;
    s.push('\n');
    Ok(s)
}

fn scalar(s: &str, what: &str) -> Result<Scalar> {
    s.parse::<Scalar>()
        .with_context(|| format!("parsing {what}"))
}

fn rect(spec: &str, q: &str) -> Result<RectPair> {
    Ok(RectPair::parse(spec, scalar(q, "q")?)?)
}

impl RegionSpec {
    fn given(&self) -> bool {
        self.c.is_some()
    }

    fn resolve(&self) -> Result<LocalRegion> {
        let c = self.c.as_deref().ok_or_else(|| usage("--c is required"))?;
        let half = |s: &Option<String>| s.as_deref().map(parse_half).transpose();
        let content = ContentVector::new(parse_half_list(c)?, half(&self.r1)?, half(&self.r2)?)?;
        Ok(LocalRegion::new(content, parse_roots(&self.j)?)?)
    }
}

impl ParamSpec {
    /// Exactly one parameter mode; with neither, t^{1/2} = 2, t₀^{1/2} = 3,
    /// t_k^{1/2} = 5. Genericity is checked here, before anything is built.
    fn resolve(&self) -> Result<(HeckeParams, Option<RectPair>)> {
        let direct = [&self.t_half, &self.t0_half, &self.tk_half];
        let any_direct = direct.iter().any(|x| x.is_some());
        let out = match (&self.rect, any_direct) {
            (Some(_), true) => {
                return Err(usage(
                    "give either --rect or --t-half/--t0-half/--tk-half, not both",
                ))
            }
            (Some(r), false) => {
                let rp = rect(r, &self.q)?;
                rp.check_generic()?;
                (rp.params()?, Some(rp))
            }
            (None, true) => {
                let [Some(t), Some(t0), Some(tk)] = direct else {
                    return Err(usage(
                        "direct mode needs all of --t-half, --t0-half and --tk-half",
                    ));
                };
                (
                    HeckeParams::new(
                        scalar(t, "t-half")?,
                        scalar(t0, "t0-half")?,
                        scalar(tk, "tk-half")?,
                    ),
                    None,
                )
            }
            (None, false) => (fixtures::unmarked_params(), None),
        };
        out.0.check_generic()?;
        Ok(out)
    }
}

fn region(a: &RegionArgs) -> Result<String> {
    let r = a.region.resolve()?;
    let members = regions::region_members(&r)?;
    let kappa = configuration(&r).ok();
    let fillings: Vec<Vec<i32>> = kappa
        .as_ref()
        .map(|k| standard_fillings(k).into_iter().map(|s| s.values).collect())
        .unwrap_or_default();
    let skew = regions::is_skew(&r)?;
    match a.format {
        Format::Json => json(&RegionView::new(
            &r,
            &members,
            fillings,
            kappa.as_ref(),
            skew,
        )),
        Format::Dot => {
            let k = kappa.ok_or_else(|| {
                usage("this region has no box configuration (J is contradictory)")
            })?;
            Ok(k.render_dot())
        }
        Format::Text => {
            let mut s = String::new();
            let list = |v: Vec<String>| format!("{{{}}}", v.join(", "));
            let _ = writeln!(s, "{}", r.content.to_text());
            let _ = writeln!(s, "Z(c) = {}", list(root_strings(&r.z())));
            let _ = writeln!(s, "P(c) = {}", list(root_strings(&r.p())));
            let _ = writeln!(s, "J    = {}", list(root_strings(&r.j)));
            let _ = writeln!(s, "skew = {skew}");
            let _ = writeln!(s, "|F|  = {}", members.len());
            for w in &members {
                let _ = writeln!(s, "  {w}  = {}", word_text(w));
            }
            if let Some(k) = &kappa {
                s.push_str(&k.render_ascii());
                if !s.ends_with('\n') {
                    s.push('\n');
                }
            }
            Ok(s)
        }
    }
}

/// What a module command builds.
enum Source {
    Rank2(Rank2Class),
    Path(Partition, RectPair),
    Region(LocalRegion),
}

impl Source {
    fn from_args(a: &ModuleArgs, rect: Option<&RectPair>) -> Result<Self> {
        let picked = [a.rank2.is_some(), a.lambda.is_some(), a.region.given()]
            .iter()
            .filter(|&&x| x)
            .count();
        if picked != 1 {
            return Err(usage("give exactly one of --rank2, --lambda or --c"));
        }
        if let Some(c) = &a.rank2 {
            return Ok(Source::Rank2(c.parse()?));
        }
        if let Some(l) = &a.lambda {
            let rp = rect.ok_or_else(|| usage("--lambda needs --rect"))?.clone();
            return Ok(Source::Path(l.parse()?, rp));
        }
        Ok(Source::Region(a.region.resolve()?))
    }

    fn name(&self) -> String {
        match self {
            Source::Rank2(c) => format!("rank2 {c}"),
            Source::Path(l, p) => format!(
                "path module lambda={l} rect=({},{},{},{})",
                p.a, p.c, p.b, p.d
            ),
            Source::Region(r) => {
                let j = root_strings(&r.j);
                format!("calibrated {} J={{{}}}", r.content.to_text(), j.join(","))
            }
        }
    }
}

struct Built<F> {
    name: String,
    module: Module<F>,
    weight_dims: Option<Vec<usize>>,
    calibrated: Option<bool>,
    irreducible: Option<bool>,
}

fn normalization(n: NormalizationArg) -> Normalization {
    match n {
        NormalizationArg::TauBasis => Normalization::TauBasis,
        NormalizationArg::SymmetricFloat => Normalization::SymmetricFloat,
    }
}

/// `analyse` adds weight-space dimensions and the irreducibility test.
fn build<F: Field>(
    src: &Source,
    params: &HeckeParams,
    norm: Normalization,
    z: Option<&Scalar>,
    analyse: bool,
) -> Result<Built<F>> {
    let one = Scalar::one();
    let name = src.name();
    let (module, candidates) = match src {
        Source::Rank2(class) => {
            let g: GenericModule<F> = rank2_induced(*class, params, z.unwrap_or(&one))?;
            let cands: Vec<(String, Vec<F>)> = orbit(class.inducing_data().1)
                .into_iter()
                .map(|c| {
                    Ok((
                        format!("({},{})", c[0], c[1]),
                        vec![
                            F::from_scalar(&c[0].gamma(params)?),
                            F::from_scalar(&c[1].gamma(params)?),
                        ],
                    ))
                })
                .collect::<hecke2b::Result<_>>()?;
            let irreducible = if F::EXACT && analyse {
                Some(is_irreducible(&g.module, Some(&cands))?)
            } else {
                None
            };
            return Ok(Built {
                name,
                weight_dims: Some(g.weight_dims()),
                calibrated: Some(g.is_calibrated()),
                irreducible,
                module: g.module,
            });
        }
        Source::Path(lambda, rp) => {
            if z.is_some() {
                return Err(usage("--z is determined by --lambda"));
            }
            let m = build_path_module::<F>(lambda, rp, norm)?.module;
            let c = diagonal_candidates(&m);
            (m, c)
        }
        Source::Region(r) => {
            let m = build_calibrated::<F>(z.unwrap_or(&one), r, params, norm)?.module;
            let c = diagonal_candidates(&m);
            (m, c)
        }
    };
    let (weight_dims, irreducible) = match (&candidates, F::EXACT && analyse) {
        (Some(c), true) => {
            let g = GenericModule::new(module.clone(), c)?;
            (
                Some(g.weight_dims()),
                Some(is_irreducible(&module, Some(c))?),
            )
        }
        _ => (None, None),
    };
    Ok(Built {
        name,
        module,
        weight_dims,
        calibrated: Some(candidates.is_some()),
        irreducible,
    })
}

fn module_text<F: Field>(b: &Built<F>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", b.name);
    let _ = writeln!(s, "dim = {}", b.module.dim());
    if let Some(d) = &b.weight_dims {
        let _ = writeln!(s, "weight dims = {d:?}");
    }
    if let Some(c) = b.calibrated {
        let _ = writeln!(s, "calibrated = {c}");
    }
    if let Some(i) = b.irreducible {
        let _ = writeln!(s, "irreducible = {i}");
    }
    let _ = writeln!(s, "basis = [{}]", b.module.labels.join(", "));
    for (g, m) in b.module.generators() {
        let _ = writeln!(s, "{g}:");
        for row in m.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  [{}]", cells.join(", "));
        }
    }
    s
}

fn render_built<F: Field + Serialize>(b: &Built<F>, format: Format) -> Result<String> {
    match format {
        Format::Json => json(&ModuleView {
            source: b.name.clone(),
            dim: b.module.dim(),
            weight_dims: b.weight_dims.clone(),
            calibrated: b.calibrated,
            irreducible: b.irreducible,
            module: &b.module,
        }),
        Format::Text => Ok(module_text(b)),
        Format::Dot => Err(usage("modules have json or text output only")),
    }
}

fn module_build(a: &ModuleArgs) -> Result<String> {
    let (params, rp) = a.params.resolve()?;
    let src = Source::from_args(a, rp.as_ref())?;
    let z = a.z.as_deref().map(|z| scalar(z, "z")).transpose()?;
    let norm = normalization(a.normalization);
    match norm {
        Normalization::TauBasis => render_built(
            &build::<Scalar>(&src, &params, norm, z.as_ref(), true)?,
            a.format,
        ),
        Normalization::SymmetricFloat => render_built(
            &build::<ApproxScalar>(&src, &params, norm, z.as_ref(), true)?,
            a.format,
        ),
    }
}

fn checks_for<F: Field>(
    m: &Module<F>,
    params: &HeckeParams,
    intertwiners: bool,
) -> Result<Vec<RelationCheck>> {
    let mut checks = verify_relations(m, params)?.checks;
    if intertwiners {
        checks.extend(tau_square_check(m, params)?);
        checks.extend(tau_weight_check(m, params, TAU_MONOMIAL_BOUND)?);
    }
    Ok(checks)
}

fn verify_one(
    src: &Source,
    params: &HeckeParams,
    a: &ModuleArgs,
    intertwiners: bool,
) -> Result<VerifyView> {
    let z = a.z.as_deref().map(|z| scalar(z, "z")).transpose()?;
    let norm = normalization(a.normalization);
    let (name, dim, checks) = match norm {
        Normalization::TauBasis => {
            let b = build::<Scalar>(src, params, norm, z.as_ref(), false)?;
            (
                b.name,
                b.module.dim(),
                checks_for(&b.module, params, intertwiners)?,
            )
        }
        Normalization::SymmetricFloat => {
            let b = build::<ApproxScalar>(src, params, norm, z.as_ref(), false)?;
            (
                b.name,
                b.module.dim(),
                checks_for(&b.module, params, intertwiners)?,
            )
        }
    };
    Ok(VerifyView {
        name,
        dim,
        all_pass: checks.iter().all(RelationCheck::passed),
        checks,
    })
}

fn module_verify(v: &VerifyArgs) -> Result<String> {
    let max_k = hecke2b::weyl::suite_k();
    if v.list_fixtures {
        let mut s = String::new();
        for (i, f) in fixtures::all(max_k)?.iter().enumerate() {
            let _ = writeln!(s, "{i:>4}  {}", f.name);
        }
        return Ok(s);
    }
    let reports = match &v.fixture {
        Some(sel) => {
            let all = fixtures::all(max_k)?;
            let chosen: Vec<&fixtures::Fixture> = if sel == "all" {
                all.iter().collect()
            } else {
                let i: usize = sel.parse().map_err(|_| {
                    usage(format!(
                        "--fixture expects an index or \"all\", got {sel:?}"
                    ))
                })?;
                vec![all
                    .get(i)
                    .ok_or_else(|| usage(format!("fixture {i} out of range (0..{})", all.len())))?]
            };
            chosen
                .into_iter()
                .map(|f| {
                    verify_one(
                        &Source::Region(f.region.clone()),
                        &f.params,
                        &v.module,
                        v.intertwiners,
                    )
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => {
            let (params, rp) = v.module.params.resolve()?;
            let src = Source::from_args(&v.module, rp.as_ref())?;
            vec![verify_one(&src, &params, &v.module, v.intertwiners)?]
        }
    };
    let out = match v.module.format {
        Format::Json => json(&reports)?,
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{} (dim {})", r.name, r.dim);
                for c in &r.checks {
                    let _ = writeln!(
                        s,
                        "  {:<28} {}  residual {:.3e}",
                        c.relation,
                        c.status.as_str(),
                        c.max_residual
                    );
                }
            }
            s
        }
        Format::Dot => return Err(usage("module-verify has json or text output only")),
    };
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.all_pass)
        .map(|r| r.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Verification {
            summary: failed.join("; "),
            report: out,
        }
        .into())
    }
}

fn bratteli(a: &BratteliArgs) -> Result<String> {
    let p = rect(&a.rect, &a.q)?;
    let d = bratteli_bounded(&p, a.k, a.rows)?;
    match a.format {
        Format::Json => json(&d),
        Format::Dot => Ok(d.to_dot()),
        Format::Text => Ok(d.to_text()),
    }
}

fn map_lambda(a: &MapLambdaArgs) -> Result<String> {
    let p = rect(&a.rect, &a.q)?;
    let lambda: Partition = a.lambda.parse()?;
    let d = lambda_to_zcj(&lambda, &p, a.k)?;
    match a.format {
        Format::Json => json(&MapLambdaView::from(&d)),
        Format::Dot => Ok(configuration_from_lambda(&lambda, &p, a.k)?.render_dot()),
        Format::Text => {
            let v = MapLambdaView::from(&d);
            let mut s = String::new();
            let _ = writeln!(s, "lambda = {}  k = {}  S0max = {}", v.lambda, v.k, v.s0max);
            let _ = writeln!(s, "z = {}", v.z.text);
            let _ = writeln!(s, "c = ({})", halves(&d.region.content.c).join(", "));
            let _ = writeln!(s, "J = {{{}}}", v.j.join(", "));
            let _ = writeln!(s, "w(reading path) = {}", d.reading_path_w);
            Ok(s)
        }
    }
}

fn verify_sw(a: &VerifySwArgs) -> Result<String> {
    let p = rect(&a.rect, &a.q)?;
    let id = dimension_identity(&p, a.n, a.k)?;
    let out = match a.format {
        Format::Json => json(&id)?,
        Format::Text => {
            let mut s = String::new();
            for t in &id.terms {
                let _ = writeln!(
                    s,
                    "  {:<24} paths {:>6}  dim {}",
                    t.lambda.to_string(),
                    t.paths,
                    t.dim
                );
            }
            let _ = writeln!(s, "lhs = {}", id.lhs);
            let _ = writeln!(s, "rhs = {}", id.rhs);
            let _ = writeln!(
                s,
                "dimension identity: {}",
                if id.holds() { "PASS" } else { "FAIL" }
            );
            s
        }
        Format::Dot => return Err(usage("verify-sw has json or text output only")),
    };
    if id.holds() {
        Ok(out)
    } else {
        Err(CliError::Verification {
            summary: format!("lhs {} != rhs {}", id.lhs, id.rhs),
            report: out,
        }
        .into())
    }
}
