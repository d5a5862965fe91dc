//! JSON input files describing a model, and the compact text grammar for
//! forms used inside them.
//!
//! Form grammar. A form is a sum of terms joined by `+` and `-`. Each
//! term is a `*`-separated list of factors whose last factor names the
//! wedge indices; earlier factors are rational literals (`2`, `1/2`) or
//! parameter powers (`t`, `t^3`). An index block without dots is read one
//! digit at a time (`125` means indices 1, 2, 5); when any index is 10 or
//! larger the block must be dot-separated (`1.12` means 1 and 12, a lone
//! two-digit index is written with a trailing dot, `12.`). The single
//! character `0` denotes the zero form.
//!
//! A structure list is a comma-separated list of 2-forms, one per
//! generator, giving each generator's differential.

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, LieAlgebra};
use crate::deformation::DeformationFamily;
use crate::form::{Form, PolyForm};
use crate::matrix::RatMat;
use crate::operators::Context;
use crate::poly::Poly;
use crate::rational::{parse_rational, Rational};
use crate::symplectic::{
    AlmostComplexStructure, MetricData, SymplecticError, SymplecticStructure,
};
use num_traits::One;

pub const MAX_DIMENSION: usize = 16;

#[derive(Error, Debug)]
pub enum ManifestError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {got}; this tool reads schema 1")]
    Schema { got: u32 },
    #[error("dimension {got} exceeds the supported maximum of {MAX_DIMENSION}")]
    TooLarge { got: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("structure list has {got} entries but the dimension is {dim}")]
    StructureCount { dim: usize, got: usize },
    #[error("{field}: {detail}")]
    Field { field: String, detail: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

fn field_err(field: impl Into<String>, detail: impl Into<String>) -> ManifestError {
    ManifestError::Field {
        field: field.into(),
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------------------
// text grammar

fn parse_index_block(block: &str, dim: usize) -> Result<Vec<u8>, String> {
    if block.is_empty() {
        return Err("empty index block".to_string());
    }
    let mut indices = Vec::new();
    if block.contains('.') {
        for part in block.split('.').filter(|p| !p.is_empty()) {
            let n: usize = part
                .parse()
                .map_err(|_| format!("bad index `{part}` in `{block}`"))?;
            indices.push(n);
        }
        if indices.is_empty() {
            return Err(format!("no indices in `{block}`"));
        }
    } else {
        for c in block.chars() {
            let n = c
                .to_digit(10)
                .ok_or_else(|| format!("bad index character `{c}` in `{block}`"))?
                as usize;
            indices.push(n);
        }
    }
    for &n in &indices {
        if n == 0 {
            return Err(format!("index 0 in `{block}`; indices start at 1"));
        }
        if n > dim {
            return Err(format!("index {n} in `{block}` exceeds the dimension {dim}"));
        }
    }
    Ok(indices.into_iter().map(|n| n as u8).collect())
}

fn parse_power_factor(factor: &str) -> Option<Result<usize, String>> {
    if factor == "t" {
        return Some(Ok(1));
    }
    if let Some(rest) = factor.strip_prefix("t^") {
        return Some(
            rest.parse::<usize>()
                .map_err(|_| format!("bad exponent in `{factor}`")),
        );
    }
    None
}

fn parse_term(term: &str, dim: usize) -> Result<(Poly, Vec<u8>), String> {
    let factors: Vec<&str> = term.split('*').collect();
    let (block, rest) = factors
        .split_last()
        .ok_or_else(|| "empty term".to_string())?;
    let indices = parse_index_block(block, dim)?;
    let mut poly = Poly::constant(Rational::one());
    for factor in rest {
        if let Some(power) = parse_power_factor(factor) {
            poly = poly.mul(&Poly::monomial(Rational::one(), power?));
        } else {
            let c = parse_rational(factor)?;
            poly = poly.scale(&c);
        }
    }
    Ok((poly, indices))
}

/// Parse a polynomial form of the expected degree.
pub fn parse_polyform(src: &str, dim: usize, degree: usize) -> Result<PolyForm, String> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty form".to_string());
    }
    if compact == "0" {
        return Ok(PolyForm::zero(dim, degree));
    }
    let mut result = PolyForm::zero(dim, degree);
    let mut flush = |piece: &str, negative: bool| -> Result<(), String> {
        let (poly, indices) = parse_term(piece, dim)?;
        if indices.len() != degree {
            return Err(format!(
                "term `{piece}` has {} indices where a {degree}-form is expected",
                indices.len()
            ));
        }
        let coeff = if negative { poly.neg() } else { poly };
        result = result.add(&PolyForm::term(dim, &indices, coeff));
        Ok(())
    };
    let mut current = String::new();
    let mut negative = false;
    let mut after_sign = false;
    for c in compact.chars() {
        if c == '+' || c == '-' {
            if after_sign {
                return Err("consecutive signs".to_string());
            }
            if !current.is_empty() {
                flush(&current, negative)?;
                current.clear();
            }
            negative = c == '-';
            after_sign = true;
        } else {
            current.push(c);
            after_sign = false;
        }
    }
    if current.is_empty() {
        return Err("trailing sign".to_string());
    }
    flush(&current, negative)?;
    drop(flush);
    Ok(result)
}

/// Parse a constant form of the expected degree; the parameter `t` is
/// rejected.
pub fn parse_form(src: &str, dim: usize, degree: usize) -> Result<Form, String> {
    let pf = parse_polyform(src, dim, degree)?;
    for (_, poly) in pf.terms() {
        if poly.degree() > 0 {
            return Err("the parameter t is not allowed here".to_string());
        }
    }
    Ok(pf.eval(&crate::rational::rat(0)))
}

/// Parse a comma-separated structure list of 2-forms, one per generator.
pub fn parse_salamon(src: &str, dim: usize) -> Result<Vec<Form>, ManifestError> {
    let entries: Vec<&str> = src.split(',').collect();
    if entries.len() != dim {
        return Err(ManifestError::StructureCount {
            dim,
            got: entries.len(),
        });
    }
    entries
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            parse_form(entry, dim, 2)
                .map_err(|e| field_err(format!("structure[{}]", i + 1), e))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// manifest schema

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub dimension: usize,
    pub structure: String,
    pub symplectic: String,
    #[serde(default)]
    pub j: Option<JSpec>,
    #[serde(default)]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub deformations: Vec<DeformationSpec>,
    #[serde(default)]
    pub outputs: Option<Vec<String>>,
}

/// An almost-complex structure given one of three ways. The variants are
/// tried in order, so the coframe form (which also carries a pairing)
/// must come first.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum JSpec {
    Coframe {
        coframe: Vec<String>,
        pairing: Vec<[u8; 2]>,
    },
    Pairing {
        pairing: Vec<[u8; 2]>,
    },
    Matrix {
        matrix: Vec<Vec<String>>,
    },
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct DeformationSpec {
    pub theta: String,
    #[serde(default)]
    pub t_samples: Option<Vec<String>>,
    #[serde(default)]
    pub coframe_family: Option<Vec<String>>,
    #[serde(default)]
    pub semicontinuity_bound: Option<String>,
}

pub fn parse_manifest(src: &str) -> Result<Manifest, ManifestError> {
    let manifest: Manifest = serde_json::from_str(src)?;
    Ok(manifest)
}

/// A fully validated model ready for computation.
pub struct Model {
    pub name: Option<String>,
    pub context: Context,
    pub deformations: Vec<DeformationFamily>,
    pub outputs: Option<Vec<String>>,
}

fn parse_matrix_field(
    rows: &[Vec<String>],
    dim: usize,
    field: &str,
) -> Result<RatMat, ManifestError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(field_err(field, format!("expected a {dim}x{dim} matrix")));
    }
    let mut data = Vec::with_capacity(dim);
    for row in rows {
        let mut out = Vec::with_capacity(dim);
        for entry in row {
            out.push(parse_rational(entry).map_err(|e| field_err(field, e))?);
        }
        data.push(out);
    }
    Ok(RatMat::from_rows(dim, data))
}

pub fn build_model(manifest: &Manifest) -> Result<Model, ManifestError> {
    if manifest.schema != 1 {
        return Err(ManifestError::Schema {
            got: manifest.schema,
        });
    }
    let dim = manifest.dimension;
    if dim == 0 {
        return Err(ManifestError::ZeroDimension);
    }
    if dim > MAX_DIMENSION {
        return Err(ManifestError::TooLarge { got: dim });
    }
    let de = parse_salamon(&manifest.structure, dim)?;
    let algebra = LieAlgebra::new(dim, de)?;
    let omega = parse_form(&manifest.symplectic, dim, 2)
        .map_err(|e| field_err("symplectic", e))?;
    let sym = SymplecticStructure::new(&algebra, omega.clone())?;
    let j = match &manifest.j {
        None => None,
        Some(JSpec::Coframe { coframe, pairing }) => {
            let forms: Vec<Form> = coframe
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    parse_form(s, dim, 1)
                        .map_err(|e| field_err(format!("j.coframe[{}]", i + 1), e))
                })
                .collect::<Result<_, _>>()?;
            Some(AlmostComplexStructure::from_coframe(&forms, pairing)?)
        }
        Some(JSpec::Pairing { pairing }) => {
            Some(AlmostComplexStructure::from_pairing(dim, pairing)?)
        }
        Some(JSpec::Matrix { matrix }) => {
            let mat = parse_matrix_field(matrix, dim, "j.matrix")?;
            Some(AlmostComplexStructure::from_matrix(mat, dim)?)
        }
    };
    let metric = match (&manifest.metric, &j) {
        (Some(rows), _) => {
            let gram = parse_matrix_field(rows, dim, "metric")?;
            Some(MetricData::from_gram(&sym, gram)?)
        }
        (None, Some(j)) => Some(MetricData::from_triple(&sym, j)?),
        (None, None) => None,
    };
    let context = Context::new(algebra.clone(), sym, j, metric)?;
    let mut deformations = Vec::new();
    for (i, spec) in manifest.deformations.iter().enumerate() {
        let label = |part: &str| format!("deformations[{}].{part}", i + 1);
        let theta = parse_polyform(&spec.theta, dim, 2)
            .map_err(|e| field_err(label("theta"), e))?;
        let samples = match &spec.t_samples {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|s| parse_rational(s).map_err(|e| field_err(label("t_samples"), e)))
                    .collect::<Result<Vec<Rational>, _>>()?,
            ),
        };
        let coframe = match &spec.coframe_family {
            None => None,
            Some(list) => Some(
                list.iter()
                    .enumerate()
                    .map(|(k, s)| {
                        parse_polyform(s, dim, 1).map_err(|e| {
                            field_err(format!("deformations[{}].coframe_family[{}]", i + 1, k + 1), e)
                        })
                    })
                    .collect::<Result<Vec<PolyForm>, _>>()?,
            ),
        };
        let bound = match &spec.semicontinuity_bound {
            None => None,
            Some(s) => Some(
                parse_rational(s).map_err(|e| field_err(label("semicontinuity_bound"), e))?,
            ),
        };
        deformations.push(DeformationFamily::new(theta, samples, coframe, bound));
    }
    Ok(Model {
        name: manifest.name.clone(),
        context,
        deformations,
        outputs: manifest.outputs.clone(),
    })
}

pub fn load_model(src: &str) -> Result<Model, ManifestError> {
    build_model(&parse_manifest(src)?)
}
