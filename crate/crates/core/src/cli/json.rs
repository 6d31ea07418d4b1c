//! Input documents, their schemas, and output rendering.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{parse_vector, AlgebraSpec, FdAlgebra};
use crate::error::{Error, Result};
use crate::exactcore::{FieldKind, Scalar};
use crate::matfac::MatrixFactorisation;
use crate::polyring::{format_poly, parse_poly, Mono, Poly, PolyMatrix, Ring, RingRef};
use crate::quiverlab::Quiver;

/// A sparse vector as `[name, coefficient]` pairs.
pub type VectorDoc = Vec<(String, String)>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GbDoc {
    pub ring: String,
    pub weights: Option<Vec<i64>>,
    pub field: Option<String>,
    pub gens: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SigmaDoc {
    pub ring: String,
    pub weights: Option<Vec<i64>>,
    pub field: Option<String>,
    pub sigma: String,
    pub order_bound: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfDoc {
    pub ring: String,
    pub weights: Option<Vec<i64>>,
    pub field: Option<String>,
    pub sigma: String,
    pub phi: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfPairDoc {
    pub left: MfDoc,
    pub right: MfDoc,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabDoc {
    pub ring: String,
    pub weights: Option<Vec<i64>>,
    pub field: Option<String>,
    pub sigma: String,
    /// Defaults to the variables.
    pub fs: Option<Vec<String>>,
    pub coeffs: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct HhDoc {
    pub algebra: Option<AlgebraSpec>,
    pub differential: Option<Vec<(String, VectorDoc)>>,
    pub curvature: Option<VectorDoc>,
    pub variant: Option<String>,
    pub stabilisation: Option<StabDoc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub quiver: Option<Quiver>,
    #[serde(rename = "type")]
    pub kind: Option<String>,
    pub lambda: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct DrinfeldDoc {
    pub algebra: Option<AlgebraSpec>,
    pub e: Option<VectorDoc>,
    pub idempotents: Option<Vec<VectorDoc>>,
    pub end_sum_residue: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub algebra: AlgebraSpec,
    pub differential: Option<Vec<(String, VectorDoc)>>,
}

pub fn decode<T: DeserializeOwned>(doc: &Value) -> Result<T> {
    serde_json::from_value(doc.clone()).map_err(|e| Error::Invalid(format!("input does not match the schema: {e}")))
}

pub fn field_of(text: Option<&str>) -> Result<FieldKind> {
    text.map_or(Ok(FieldKind::Rat), FieldKind::parse)
}

pub fn ring_of(vars: &str, weights: Option<&[i64]>, field: Option<&str>) -> Result<RingRef> {
    Ring::parse(vars, weights, field_of(field)?)
}

pub fn mf_of(d: &MfDoc) -> Result<MatrixFactorisation> {
    let ring = ring_of(&d.ring, d.weights.as_deref(), d.field.as_deref())?;
    let sigma = parse_poly(&ring, &d.sigma)?;
    MatrixFactorisation::new(&ring, sigma, PolyMatrix::parse_owned(&ring, &d.phi)?, PolyMatrix::parse_owned(&ring, &d.psi)?)
}

pub fn ring_json(ring: &RingRef) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("ring".into(), json!(ring.vars().join(",")));
    if ring.weights().iter().any(|&w| w != 1) {
        m.insert("weights".into(), json!(ring.weights()));
    }
    if ring.field() != FieldKind::Rat {
        m.insert("field".into(), json!(ring.field().to_string()));
    }
    m
}

/// Same shape as the `MfDoc` input.
pub fn mf_json(m: &MatrixFactorisation) -> Value {
    let mut out = ring_json(m.ring());
    let (phi, psi) = m.to_strings();
    out.insert("sigma".into(), json!(format_poly(m.sigma())));
    out.insert("phi".into(), json!(phi));
    out.insert("psi".into(), json!(psi));
    Value::Object(out)
}

pub fn mono_text(ring: &RingRef, exps: &[u32]) -> String {
    let m: Mono = ring.mono(exps.to_vec());
    format_poly(&Poly::term(ring, m, Scalar::one()))
}

pub fn algebra_of(spec: &AlgebraSpec) -> Result<FdAlgebra> {
    FdAlgebra::from_spec(spec)
}

pub fn vector_of(a: &FdAlgebra, v: &VectorDoc) -> Result<Vec<Scalar>> {
    let names: Vec<&str> = a.names().iter().map(String::as_str).collect();
    let mut out = a.zero_vec();
    for (i, c) in parse_vector(&names, v, a.field())? {
        out[i] += &c;
    }
    Ok(out)
}

/// `d` given as the images of basis elements; absent ones map to zero.
pub fn differential_of(a: &FdAlgebra, d: &[(String, VectorDoc)]) -> Result<Vec<Vec<Scalar>>> {
    let mut out = vec![a.zero_vec(); a.dim()];
    for (name, img) in d {
        let i = a.names().iter().position(|n| n == name).ok_or_else(|| Error::Parse(format!("unknown basis element {name}")))?;
        out[i] = vector_of(a, img)?;
    }
    Ok(out)
}

fn prop(ty: &str, about: &str) -> Value {
    json!({ "type": ty, "description": about })
}

fn object(required: &[&str], props: &[(&str, Value)]) -> Value {
    let p: Map<String, Value> = props.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    json!({ "type": "object", "additionalProperties": false, "required": required, "properties": p })
}

fn ring_props() -> Vec<(&'static str, Value)> {
    vec![
        ("ring", prop("string", "comma-separated variables, e.g. \"x,y,z\"")),
        ("weights", prop("array", "positive integer weight per variable")),
        ("field", prop("string", "rat | gauss | gf:<p>")),
    ]
}

fn algebra_schema() -> Value {
    object(
        &["basis", "products", "unit"],
        &[
            ("field", prop("string", "rat | gauss | gf:<p>")),
            ("basis", prop("array", "basis element names")),
            ("degrees", prop("array", "integer degree per basis element")),
            ("grading", prop("string", "z | z2")),
            ("products", prop("array", "nonzero products {left, right, result: [[name, coeff]]}")),
            ("unit", prop("array", "[[name, coeff]]")),
        ],
    )
}

fn mf_schema() -> Value {
    let mut p = ring_props();
    p.push(("sigma", prop("string", "the potential")));
    p.push(("phi", prop("array", "rows of polynomial strings")));
    p.push(("psi", prop("array", "rows of polynomial strings")));
    object(&["ring", "sigma", "phi", "psi"], &p)
}

fn stab_schema() -> Value {
    let mut p = ring_props();
    p.push(("sigma", prop("string", "element of the ideal (fs)")));
    p.push(("fs", prop("array", "ideal generators; defaults to the variables")));
    p.push(("coeffs", prop("array", "cofactors with sigma = sum coeffs_i fs_i")));
    object(&["ring", "sigma"], &p)
}

/// Input schema of a command path such as `["mf", "verify"]`.
pub fn schema(path: &[&str]) -> Value {
    let body = match path {
        ["poly", "gb"] => {
            let mut p = ring_props();
            p.push(("gens", prop("array", "ideal generators")));
            object(&["ring", "gens"], &p)
        }
        ["milnor"] | ["tjurina"] => {
            let mut p = ring_props();
            p.push(("sigma", prop("string", "polynomial in the maximal ideal")));
            p.push(("orderBound", prop("integer", "compute modulo m^N")));
            object(&["ring", "sigma"], &p)
        }
        ["mf", "tensor"] | ["mf", "hom"] => object(&["left", "right"], &[("left", mf_schema()), ("right", mf_schema())]),
        ["mf", _] => mf_schema(),
        ["stab"] | ["endcoh"] => stab_schema(),
        ["hh"] => object(
            &[],
            &[
                ("algebra", algebra_schema()),
                ("differential", prop("array", "[[name, [[name, coeff]]]] images of basis elements")),
                ("curvature", prop("array", "[[name, coeff]]")),
                ("variant", prop("string", "cochain | chain")),
                ("stabilisation", stab_schema()),
            ],
        ),
        ["quiver", "drinfeld"] => object(
            &[],
            &[
                ("algebra", algebra_schema()),
                ("e", prop("array", "idempotent as [[name, coeff]]")),
                ("idempotents", prop("array", "vertex idempotents for the tensor base")),
                ("endSumResidue", prop("integer", "n: use End(R + k) over R = k[x]/x^n with e = id_R")),
            ],
        ),
        ["quiver", _] => object(
            &[],
            &[
                ("quiver", prop("object", "{vertices, arrows: [{name, from, to}], extending}")),
                ("type", prop("string", "extended Dynkin type, e.g. Atilde3")),
                ("lambda", prop("array", "weights in Q(i), one per vertex")),
            ],
        ),
        _ => object(
            &["algebra"],
            &[("algebra", algebra_schema()), ("differential", prop("array", "[[name, [[name, coeff]]]]"))],
        ),
    };
    json!({ "command": path.join(" "), "input": body })
}

/// Indented `key: value` rendering.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(v, 0, &mut out);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_into(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text_into(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v).unwrap_or_default())),
    }
}
