//! Command-line frontend.
//!
//! Every command reads an optional JSON document, overlays the flags given on
//! the command line, decodes the result against the command's schema and prints
//! a report with sorted keys. Use [`run`] to drive it in-process.

mod json;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactcore::{FieldKind, Scalar};
use crate::hochschild::{hochschild_cohomology, hochschild_homology, CurvedAlgebra, HochschildComplexSpec, Variant};
use crate::koszuldual::{bar, cobar, counit_h0_check, koszul_dual_cohomology, AugmentedAlgebra, ConilpotentCoalgebra};
use crate::matfac::{knoerrer_g, knoerrer_h, restrict_rho, rho_g_certificate, rho_rho_h_certificate, MatrixFactorisation};
use crate::polyring::{format_poly, milnor_algebra, milnor_algebra_truncated, parse_poly, tjurina_algebra, tjurina_algebra_truncated, GroebnerBasis, Poly};
use crate::quiverlab::{
    derived_preprojective, drinfeld_cohomology, drinfeld_quotient, dsg_blocks, dsg_blocks_for, end_of_sum_with_residue,
    extended_dynkin, parse_weights, path_basis, preprojective_relations, quasi_dominant, truncated_algebra_dim, ExtendedType,
    Quiver, TensorBase,
};
use crate::stabilize::{end_cohomology, stabilise, stabilise_with, Stabilisation};
use json::*;

#[derive(Debug, Parser)]
#[command(name = "singcat", version, about = "Exact computations with singularity categories")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Ground field: rat, gauss or gf:<p>.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Variable weights, comma separated.
    #[arg(long, global = true)]
    weights: Option<String>,
    /// Weight window `-N..=N` for graded slices.
    #[arg(long = "weight-bound", global = true)]
    weight_bound: Option<i64>,
    /// Truncation length: tensor length, path length or number of components.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Cohomological window `lo,hi`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    out: OutFormat,
    /// Print the input schema of the command and exit.
    #[arg(long, global = true)]
    schema: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
struct Job {
    /// JSON input document; `-` reads standard input.
    input: Option<PathBuf>,
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Ideal generator; repeatable.
    #[arg(long = "gen", allow_hyphen_values = true)]
    gens: Vec<String>,
    /// Ideal generators for stabilisation, comma separated.
    #[arg(long)]
    fs: Option<String>,
    #[arg(long = "order-bound")]
    order_bound: Option<u32>,
    /// Extended Dynkin type such as Atilde3.
    #[arg(long = "type")]
    kind: Option<String>,
    /// Quiver weights, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Variable for knoerrer-g and rho.
    #[arg(long)]
    var: Option<String>,
    /// Two variables `u,v` for knoerrer-h.
    #[arg(long)]
    vars: Option<String>,
    /// cochain or chain.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long = "end-sum-residue")]
    end_sum_residue: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(subcommand)]
    Poly(PolyCmd),
    Milnor(Job),
    Tjurina(Job),
    #[command(subcommand)]
    Mf(MfCmd),
    Stab(Job),
    Endcoh(Job),
    Hh(Job),
    #[command(subcommand)]
    Quiver(QuiverCmd),
    KoszulDual(Job),
    Bar(Job),
    Cobar(Job),
}

#[derive(Debug, Subcommand)]
enum PolyCmd {
    Gb(Job),
}

#[derive(Debug, Subcommand)]
enum MfCmd {
    Verify(Job),
    Shift(Job),
    Tensor(Job),
    Unfold(Job),
    Coker(Job),
    KnoerrerG(Job),
    KnoerrerH(Job),
    Rho(Job),
    Hom(Job),
}

#[derive(Debug, Subcommand)]
enum QuiverCmd {
    Paths(Job),
    Preproj(Job),
    Derived(Job),
    Blocks(Job),
    Drinfeld(Job),
}

impl Command {
    fn path(&self) -> (Vec<&'static str>, &Job) {
        match self {
            Command::Poly(PolyCmd::Gb(j)) => (vec!["poly", "gb"], j),
            Command::Milnor(j) => (vec!["milnor"], j),
            Command::Tjurina(j) => (vec!["tjurina"], j),
            Command::Mf(c) => {
                let (name, j) = match c {
                    MfCmd::Verify(j) => ("verify", j),
                    MfCmd::Shift(j) => ("shift", j),
                    MfCmd::Tensor(j) => ("tensor", j),
                    MfCmd::Unfold(j) => ("unfold", j),
                    MfCmd::Coker(j) => ("coker", j),
                    MfCmd::KnoerrerG(j) => ("knoerrer-g", j),
                    MfCmd::KnoerrerH(j) => ("knoerrer-h", j),
                    MfCmd::Rho(j) => ("rho", j),
                    MfCmd::Hom(j) => ("hom", j),
                };
                (vec!["mf", name], j)
            }
            Command::Stab(j) => (vec!["stab"], j),
            Command::Endcoh(j) => (vec!["endcoh"], j),
            Command::Hh(j) => (vec!["hh"], j),
            Command::Quiver(c) => {
                let (name, j) = match c {
                    QuiverCmd::Paths(j) => ("paths", j),
                    QuiverCmd::Preproj(j) => ("preproj", j),
                    QuiverCmd::Derived(j) => ("derived", j),
                    QuiverCmd::Blocks(j) => ("blocks", j),
                    QuiverCmd::Drinfeld(j) => ("drinfeld", j),
                };
                (vec!["quiver", name], j)
            }
            Command::KoszulDual(j) => (vec!["koszul-dual"], j),
            Command::Bar(j) => (vec!["bar"], j),
            Command::Cobar(j) => (vec!["cobar"], j),
        }
    }
}

/// Options that are not part of the input document.
#[derive(Debug, Clone)]
struct Options {
    field: Option<String>,
    weight_bound: Option<i64>,
    trunc: Option<usize>,
    window: Option<(i64, i64)>,
    var: Option<String>,
    vars: Option<String>,
}

/// Parses `args` (including the program name) and runs the command.
///
/// Returns the exit code and everything meant for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::error::ErrorKind;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => return (0, e.to_string()),
        Err(e) => return (2, error_report("Usage", &e.to_string())),
    };
    let (path, job) = cli.command.path();
    if cli.schema {
        return (0, to_text(&schema(&path), cli.out));
    }
    match execute(&cli, &path, job) {
        Ok(v) => (0, to_text(&v, cli.out)),
        Err(e) => (e.exit_code(), error_report(e.code(), &e.to_string())),
    }
}

fn error_report(code: &str, message: &str) -> String {
    let v = json!({ "error": { "code": code, "message": message.trim_end() } });
    format!("{}\n", serde_json::to_string_pretty(&v).expect("serialisable"))
}

fn to_text(v: &Value, out: OutFormat) -> String {
    match out {
        OutFormat::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serialisable")),
        OutFormat::Text => render_text(v),
    }
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let parts: Vec<&str> = s.split([',', ':']).map(str::trim).collect();
    let num = |t: &str| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad window `{s}`")));
    match parts.as_slice() {
        [a, b] => {
            let (lo, hi) = (num(a)?, num(b)?);
            if lo > hi {
                return Err(Error::Parse(format!("empty window `{s}`")));
            }
            Ok((lo, hi))
        }
        _ => Err(Error::Parse(format!("window must be `lo,hi`, got `{s}`"))),
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

fn read_input(job: &Job) -> Result<Value> {
    let Some(p) = &job.input else { return Ok(json!({})) };
    let text = if p.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Parse(format!("standard input: {e}")))?
    } else {
        std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    if !v.is_object() {
        return Err(Error::Invalid("the input document must be a JSON object".into()));
    }
    Ok(v)
}

/// Flags take precedence over the document.
fn overlay(cli: &Cli, path: &[&str], job: &Job, doc: &mut Value) -> Result<()> {
    let obj = doc.as_object_mut().expect("object");
    let ring_based = matches!(path.first(), Some(&("poly" | "milnor" | "tjurina" | "mf" | "stab" | "endcoh")));
    if let Some(r) = &job.ring {
        obj.insert("ring".into(), json!(r));
    }
    if let Some(s) = &job.sigma {
        obj.insert("sigma".into(), json!(s));
    }
    if !job.gens.is_empty() {
        obj.insert("gens".into(), json!(job.gens));
    }
    if let Some(f) = &job.fs {
        obj.insert("fs".into(), json!(split_list(f)));
    }
    if let Some(n) = job.order_bound {
        obj.insert("orderBound".into(), json!(n));
    }
    if let Some(t) = &job.kind {
        obj.insert("type".into(), json!(t));
    }
    if let Some(l) = &job.lambda {
        obj.insert("lambda".into(), json!(split_list(l)));
    }
    if let Some(v) = &job.variant {
        obj.insert("variant".into(), json!(v));
    }
    if let Some(n) = job.end_sum_residue {
        obj.insert("endSumResidue".into(), json!(n));
    }
    if let Some(w) = &cli.weights {
        let ws: Vec<i64> = split_list(w)
            .iter()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad weight `{t}`"))))
            .collect::<Result<_>>()?;
        obj.insert("weights".into(), json!(ws));
    }
    if let Some(f) = &cli.field {
        FieldKind::parse(f)?;
        if ring_based {
            obj.insert("field".into(), json!(f));
        }
        for key in ["algebra", "stabilisation"] {
            if let Some(Value::Object(inner)) = obj.get_mut(key) {
                inner.insert("field".into(), json!(f));
            }
        }
    }
    Ok(())
}

fn execute(cli: &Cli, path: &[&str], job: &Job) -> Result<Value> {
    let mut doc = read_input(job)?;
    overlay(cli, path, job, &mut doc)?;
    let opts = Options {
        field: cli.field.clone(),
        weight_bound: cli.weight_bound,
        trunc: cli.trunc,
        window: cli.window.as_deref().map(parse_window).transpose()?,
        var: job.var.clone(),
        vars: job.vars.clone(),
    };
    dispatch(path, &doc, &opts)
}

fn dispatch(path: &[&str], doc: &Value, o: &Options) -> Result<Value> {
    match path {
        ["poly", "gb"] => poly_gb(decode(doc)?),
        ["milnor"] => singularity(decode(doc)?, true),
        ["tjurina"] => singularity(decode(doc)?, false),
        ["mf", "tensor"] => {
            let d: MfPairDoc = decode(doc)?;
            Ok(mf_json(&MatrixFactorisation::tensor(&mf_of(&d.left)?, &mf_of(&d.right)?)?))
        }
        ["mf", "hom"] => {
            let d: MfPairDoc = decode(doc)?;
            mf_hom(&mf_of(&d.left)?, &mf_of(&d.right)?, o)
        }
        ["mf", cmd] => mf_single(cmd, &mf_of(&decode(doc)?)?, o),
        ["stab"] => {
            let st = stabilisation_of(&decode(doc)?)?;
            Ok(json!({
                "r": st.r(),
                "squaresToSigma": st.squares_to_sigma(),
                "cofactors": st.cofactor_choice(),
                "mf": mf_json(&st.mf),
                "evenBasis": st.even_basis,
                "oddBasis": st.odd_basis,
            }))
        }
        ["endcoh"] => endcoh(&stabilisation_of(&decode(doc)?)?, o),
        ["hh"] => hh(decode(doc)?, o),
        ["quiver", "drinfeld"] => drinfeld(decode(doc)?, o),
        ["quiver", cmd] => quiver(cmd, decode(doc)?, o),
        ["koszul-dual"] => koszul_dual(&augmented_of(&decode(doc)?)?, o),
        ["bar"] => {
            let a = augmented_of(&decode(doc)?)?;
            let l = o.trunc.unwrap_or(4);
            let pieces: Vec<Value> = bar(&a, l)?
                .iter()
                .map(|p| json!({ "length": p.length, "dim": p.dim(), "degreeDims": p.degree_dims() }))
                .collect();
            Ok(json!({ "bound": l, "pieces": pieces, "squaresToZero": a.bar_squares_to_zero(l)? }))
        }
        ["cobar"] => {
            let a = augmented_of(&decode(doc)?)?;
            let l = o.trunc.unwrap_or(6);
            let (lo, hi) = o.window.unwrap_or((0, l as i64 - 2));
            let c = ConilpotentCoalgebra::dual_of(&a)?;
            let om = cobar(&c, l)?;
            Ok(json!({
                "coalgebra": c.names(),
                "maxLetters": l,
                "window": [lo, hi],
                "dims": om.cohomology(lo, hi)?,
                "dSquaredZero": (lo..=hi).all(|k| om.d_squared_zero(k)),
            }))
        }
        _ => Err(Error::Invalid(format!("unknown command {}", path.join(" ")))),
    }
}

fn poly_gb(d: GbDoc) -> Result<Value> {
    let ring = ring_of(&d.ring, d.weights.as_deref(), d.field.as_deref())?;
    let gens: Vec<Poly> = d.gens.iter().map(|g| parse_poly(&ring, g)).collect::<Result<_>>()?;
    let gb = GroebnerBasis::of(&ring, &gens)?;
    Ok(json!({
        "basis": gb.gens().iter().map(format_poly).collect::<Vec<_>>(),
        "leadingMonomials": gb.leading_monomials().iter().map(|m| mono_text(&ring, m.exps())).collect::<Vec<_>>(),
        "quotientDim": gb.quotient_basis().dim(),
    }))
}

fn singularity(d: SigmaDoc, milnor: bool) -> Result<Value> {
    let ring = ring_of(&d.ring, d.weights.as_deref(), d.field.as_deref())?;
    let s = parse_poly(&ring, &d.sigma)?;
    let alg = match (milnor, d.order_bound) {
        (true, None) => milnor_algebra(&s)?,
        (true, Some(n)) => milnor_algebra_truncated(&s, n)?,
        (false, None) => tjurina_algebra(&s)?,
        (false, Some(n)) => tjurina_algebra_truncated(&s, n)?,
    };
    let key = if milnor { "milnorNumber" } else { "tjurinaNumber" };
    let mut out = serde_json::Map::new();
    out.insert(key.into(), json!(alg.number));
    if let Some(n) = alg.truncated_at {
        out.insert("truncatedAt".into(), json!(n));
    }
    Ok(Value::Object(out))
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Invalid(format!("missing --{flag}")))
}

fn mf_single(cmd: &str, m: &MatrixFactorisation, o: &Options) -> Result<Value> {
    match cmd {
        "verify" => {
            let v = m.verify();
            let mut out = json!({ "ok": v.ok });
            if let Some(w) = v.witness {
                out["witness"] = json!(w);
            }
            Ok(out)
        }
        "shift" => Ok(mf_json(&m.shift())),
        "unfold" => {
            let w = o.weight_bound.unwrap_or(2);
            let c = m.unfold(w)?;
            let ranks: Vec<Value> = c.degrees().iter().map(|&j| json!([j, c.rank(j)])).collect();
            Ok(json!({ "window": w, "ranks": ranks, "isComplex": c.is_complex() }))
        }
        "coker" => {
            let p = m.cokernel()?;
            Ok(json!({
                "generators": p.generators(),
                "relations": p.relations(),
                "constantRank": p.constant_rank(),
                "isZeroModule": p.is_zero_module(),
            }))
        }
        "knoerrer-g" => {
            let y = required(&o.var, "var")?;
            Ok(json!({
                "result": mf_json(&knoerrer_g(m, y)?),
                "rhoCertificate": rho_g_certificate(m, y)?.certify_isomorphism(),
            }))
        }
        "knoerrer-h" => {
            let vs = split_list(required(&o.vars, "vars")?);
            let [u, v] = vs.as_slice() else { return Err(Error::Invalid("--vars needs two variables u,v".into())) };
            Ok(json!({
                "result": mf_json(&knoerrer_h(m, u, v)?),
                "rhoRhoCertificate": rho_rho_h_certificate(m, u, v)?.certify_isomorphism(),
            }))
        }
        "rho" => Ok(mf_json(&restrict_rho(m, required(&o.var, "var")?)?)),
        _ => Err(Error::Invalid(format!("unknown command mf {cmd}"))),
    }
}

fn mf_hom(x: &MatrixFactorisation, y: &MatrixFactorisation, o: &Options) -> Result<Value> {
    let h = MatrixFactorisation::hom_complex(x, y)?;
    let ranks: Vec<Value> = h.degrees().iter().map(|&j| json!([j, h.rank(j)])).collect();
    let mut out = json!({ "isComplex": h.is_complex(), "ranks": ranks });
    if x.grading().is_some() && y.grading().is_some() {
        let w = o.weight_bound.unwrap_or(4);
        let t = h.slice_cohomology(-w, w)?;
        let dims: Vec<Value> =
            t.nonzero().iter().map(|((deg, wt), d)| json!({ "degree": deg, "weight": wt, "dim": d })).collect();
        out["weightBound"] = json!(w);
        out["cohomology"] = json!(dims);
    }
    Ok(out)
}

fn stabilisation_of(d: &StabDoc) -> Result<Stabilisation> {
    let ring = ring_of(&d.ring, d.weights.as_deref(), d.field.as_deref())?;
    let s = parse_poly(&ring, &d.sigma)?;
    let fs: Vec<Poly> = match &d.fs {
        Some(fs) => fs.iter().map(|f| parse_poly(&ring, f)).collect::<Result<_>>()?,
        None => (0..ring.nvars()).map(|i| Poly::var(&ring, i)).collect(),
    };
    match &d.coeffs {
        Some(cs) => {
            let cs: Vec<Poly> = cs.iter().map(|c| parse_poly(&ring, c)).collect::<Result<_>>()?;
            stabilise_with(&ring, &fs, &s, &cs)
        }
        None => stabilise(&ring, &fs, &s),
    }
}

fn endcoh(st: &Stabilisation, o: &Options) -> Result<Value> {
    let w = o.weight_bound.unwrap_or(4);
    let t = end_cohomology(&st.end_algebra()?, -w, w)?;
    let dims: Vec<Value> =
        t.nonzero().iter().map(|((p, wt), d)| json!({ "parity": p, "weight": wt, "dim": d })).collect();
    let reps: Vec<Value> = t
        .reps
        .iter()
        .flat_map(|((p, wt), v)| {
            v.iter().enumerate().map(move |(i, z)| json!({ "class": [p, wt, i], "element": z.to_string() }))
        })
        .collect();
    let products: Vec<Value> = t
        .products
        .iter()
        .map(|e| {
            let res: Vec<Value> =
                e.result.iter().map(|(c, s)| json!([[c.parity, c.weight, c.index], s.to_string()])).collect();
            json!({
                "left": [e.left.parity, e.left.weight, e.left.index],
                "right": [e.right.parity, e.right.weight, e.right.index],
                "result": res,
            })
        })
        .collect();
    Ok(json!({
        "weightBound": w,
        "shift": t.shift,
        "scale": t.scale,
        "dims": dims,
        "representatives": reps,
        "products": products,
    }))
}

fn hh(d: HhDoc, o: &Options) -> Result<Value> {
    let alg = match (&d.algebra, &d.stabilisation) {
        (Some(spec), None) => algebra_of(spec)?,
        (None, Some(st)) => {
            let w = o.weight_bound.unwrap_or(0);
            end_cohomology(&stabilisation_of(st)?.end_algebra()?, -w, w)?.cohomology_algebra()?
        }
        _ => return Err(Error::Invalid("give exactly one of `algebra` and `stabilisation`".into())),
    };
    let dmat = match &d.differential {
        Some(dd) => differential_of(&alg, dd)?,
        None => vec![alg.zero_vec(); alg.dim()],
    };
    let h = match &d.curvature {
        Some(v) => vector_of(&alg, v)?,
        None => alg.zero_vec(),
    };
    let variant = match d.variant.as_deref() {
        None | Some("cochain") => Variant::Cochain,
        Some("chain") => Variant::Chain,
        Some(v) => return Err(Error::Invalid(format!("unknown variant `{v}`"))),
    };
    let names = alg.names().to_vec();
    let l = o.trunc.unwrap_or(6);
    let (lo, hi) = o.window.unwrap_or((0, l as i64 - 2));
    let spec = HochschildComplexSpec::new(CurvedAlgebra::new(alg, dmat, h)?, variant, l)?;
    let t = match variant {
        Variant::Cochain => hochschild_cohomology(&spec, lo, hi)?,
        Variant::Chain => hochschild_homology(&spec, lo, hi)?,
    };
    Ok(json!({
        "algebra": names,
        "variant": if variant == Variant::Cochain { "cochain" } else { "chain" },
        "bound": l,
        "window": [lo, hi],
        "dims": t.dims,
        "hh0Basis": t.hh0_basis(),
    }))
}

fn quiver_of(d: &QuiverDoc) -> Result<(Quiver, Option<ExtendedType>)> {
    match (&d.quiver, &d.kind) {
        (Some(q), None) => {
            q.validate()?;
            Ok((q.clone(), None))
        }
        (None, Some(t)) => {
            let t: ExtendedType = t.parse()?;
            Ok((extended_dynkin(t), Some(t)))
        }
        _ => Err(Error::Invalid("give exactly one of `quiver` and `type`".into())),
    }
}

fn weights_or_zero(d: &QuiverDoc, n: usize) -> Result<Vec<Scalar>> {
    match &d.lambda {
        Some(l) => parse_weights(l),
        None => Ok(vec![Scalar::zero(); n]),
    }
}

fn quiver(cmd: &str, d: QuiverDoc, o: &Options) -> Result<Value> {
    let (q, t) = quiver_of(&d)?;
    let n = q.num_vertices();
    let l = o.trunc.unwrap_or(4);
    match cmd {
        "paths" => {
            let ps = path_basis(&q, l);
            let mut counts = vec![0usize; l + 1];
            for p in &ps {
                counts[p.len()] += 1;
            }
            Ok(json!({ "counts": counts, "paths": ps.iter().map(|p| p.display(&q)).collect::<Vec<_>>() }))
        }
        "preproj" => {
            let lam = weights_or_zero(&d, n)?;
            let rels = preprojective_relations(&q, &lam)?;
            let dims = truncated_algebra_dim(&q.double(), &rels, l);
            Ok(json!({
                "relations": rels.iter().map(|r| r.display(&q.double())).collect::<Vec<_>>(),
                "cumulative": dims.cumulative,
                "byLength": dims.by_length,
                "quasiDominant": quasi_dominant(&lam),
            }))
        }
        "derived" => {
            let lam = weights_or_zero(&d, n)?;
            let dg = derived_preprojective(&q, &lam)?;
            let h0 = dg.h0_truncated_dims(l);
            Ok(json!({ "h0": h0, "dSquaredZero": dg.d_squared_zero_up_to(3, 2) }))
        }
        "blocks" => {
            let report = match t {
                Some(t) => dsg_blocks(t, &weights_or_zero(&d, n - 1)?)?,
                None => dsg_blocks_for(&q, &weights_or_zero(&d, n)?)?,
            };
            Ok(json!(report))
        }
        _ => Err(Error::Invalid(format!("unknown command quiver {cmd}"))),
    }
}

fn drinfeld(d: DrinfeldDoc, o: &Options) -> Result<Value> {
    let (alg, e) = match (&d.end_sum_residue, &d.algebra, &d.e) {
        (Some(n), None, None) => end_of_sum_with_residue(field_of(o.field.as_deref())?, *n)?,
        (None, Some(spec), Some(e)) => {
            let a = algebra_of(spec)?;
            let v = vector_of(&a, e)?;
            (a, v)
        }
        _ => return Err(Error::Invalid("give either `endSumResidue` or both `algebra` and `e`".into())),
    };
    let base = match &d.idempotents {
        Some(fs) => TensorBase::Vertices(fs.iter().map(|f| vector_of(&alg, f)).collect::<Result<_>>()?),
        None => TensorBase::Field,
    };
    let depth = o.trunc.unwrap_or(6);
    let (lo, hi) = o.window.unwrap_or((-(depth as i64 - 2), 0));
    let q = drinfeld_quotient(&alg, &e, depth, &base)?;
    let h = drinfeld_cohomology(&q, lo, hi)?;
    Ok(json!({
        "base": h.base,
        "depthBound": depth,
        "componentDims": q.component_dims(),
        "dSquaredZero": q.d_squared_zero(),
        "quotientDim": q.quotient_dim(),
        "dims": h.dims,
    }))
}

fn augmented_of(d: &AlgebraDoc) -> Result<AugmentedAlgebra> {
    let a = algebra_of(&d.algebra)?;
    match &d.differential {
        Some(dd) => {
            let m = differential_of(&a, dd)?;
            AugmentedAlgebra::with_differential(a, m)
        }
        None => AugmentedAlgebra::new(a),
    }
}

fn koszul_dual(a: &AugmentedAlgebra, o: &Options) -> Result<Value> {
    let l = o.trunc.unwrap_or(6);
    let (lo, hi) = o.window.unwrap_or((0, l as i64 - 2));
    let t = koszul_dual_cohomology(a, l, lo, hi)?;
    let mut out = json!(t);
    let flat = !a.is_dg() && a.algebra().degrees().iter().all(|&d| d == 0);
    if flat {
        out["counit"] = json!(counit_h0_check(a, l)?);
    }
    Ok(out)
}
