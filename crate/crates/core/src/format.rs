//! The JSON file format for categories, filtrations and cochains.
//!
//! Scalars are strings (`"3"`, `"-1/2"`, or residues for `GF(p)`). Linear
//! combinations are objects from basis labels to scalars, and omitted table
//! entries are zero. Unknown fields are rejected. Serialization is
//! deterministic: basis order is kept, table entries are sorted by input
//! indices and combinations by label, so parse followed by serialize is the
//! identity on serializer output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ainf::{lin_add, lin_to_terms, terms_from_dense, AInfCategory, AInfError, BasisElement, Lin, Terms};
use crate::filtration::{Filtration, FiltrationError};
use crate::hochschild::{Bimodule, HochschildCochain};
use crate::linalg::{Subspace, Vector};
use crate::scalar::{ExactField, ScalarError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("unknown basis label {label:?} in {context}")]
    UnknownLabel { label: String, context: String },
    #[error("unknown object {object:?} in {context}")]
    UnknownObject { object: String, context: String },
    #[error("bad field descriptor {0:?} (expected \"QQ\" or \"GF(p)\" with p prime)")]
    Field(String),
    #[error("bad scalar {value:?} in {context}: {source}")]
    Scalar { value: String, context: String, source: ScalarError },
    #[error("{context}: expected {expected} inputs, found {found}")]
    Arity { context: String, expected: usize, found: usize },
    #[error("{context}: entry listed twice")]
    DuplicateEntry { context: String },
    #[error("unknown bimodule {0:?} (expected \"diagonal\" or \"zero\")")]
    UnknownBimodule(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    AInf(#[from] AInfError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        SpecError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

pub type Combination = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub inputs: Vec<String>,
    pub output: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub arity: usize,
    pub entries: Vec<EntrySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainSpec {
    pub degree: i64,
    #[serde(default = "default_bimodule")]
    pub bimodule: String,
    pub tables: Vec<TableSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchSpec {
    pub field: String,
    #[serde(default = "default_objects")]
    pub objects: Vec<String>,
    pub basis: Vec<BasisSpec>,
    pub units: BTreeMap<String, String>,
    #[serde(default)]
    pub multiplications: Vec<TableSpec>,
    /// Levels `F^0, …, F^n`, each given by a spanning list of combinations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<Vec<Combination>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cochain: Option<CochainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
}

fn default_objects() -> Vec<String> {
    vec!["*".to_string()]
}

fn default_bimodule() -> String {
    "diagonal".to_string()
}

/// A parsed file: the category plus whatever optional sections it had.
#[derive(Clone, Debug)]
pub struct Workbench {
    pub category: AInfCategory,
    pub filtration: Option<Filtration>,
    pub cochain: Option<(Bimodule, HochschildCochain)>,
    pub kappa: Option<i64>,
}

pub fn parse_spec(text: &str) -> Result<WorkbenchSpec, SpecError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_cochain_spec(text: &str) -> Result<CochainSpec, SpecError> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("spec types serialize");
    s.push('\n');
    s
}

fn parse_scalar(field: ExactField, value: &str, context: &str) -> Result<crate::scalar::Scalar, SpecError> {
    field.parse(value).map_err(|source| SpecError::Scalar {
        value: value.to_string(),
        context: context.to_string(),
        source,
    })
}

/// Resolves a combination against a label lookup.
fn combination(
    field: ExactField,
    comb: &Combination,
    lookup: &dyn Fn(&str) -> Option<usize>,
    context: &str,
) -> Result<Terms, SpecError> {
    let mut acc = Lin::new();
    for (label, value) in comb {
        let i = lookup(label).ok_or_else(|| SpecError::UnknownLabel {
            label: label.clone(),
            context: context.to_string(),
        })?;
        lin_add(&mut acc, i, parse_scalar(field, value, context)?);
    }
    Ok(lin_to_terms(acc))
}

fn tables(
    field: ExactField,
    specs: &[TableSpec],
    inputs: &dyn Fn(&str) -> Option<usize>,
    outputs: &dyn Fn(&str) -> Option<usize>,
    section: &str,
) -> Result<BTreeMap<usize, BTreeMap<Vec<usize>, Terms>>, SpecError> {
    let mut out: BTreeMap<usize, BTreeMap<Vec<usize>, Terms>> = BTreeMap::new();
    for (ti, t) in specs.iter().enumerate() {
        for (ei, e) in t.entries.iter().enumerate() {
            let context = format!("{section}[{ti}].entries[{ei}]");
            if e.inputs.len() != t.arity {
                return Err(SpecError::Arity {
                    context,
                    expected: t.arity,
                    found: e.inputs.len(),
                });
            }
            let key = e
                .inputs
                .iter()
                .map(|l| {
                    inputs(l).ok_or_else(|| SpecError::UnknownLabel {
                        label: l.clone(),
                        context: format!("{context} inputs"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let value = combination(field, &e.output, outputs, &format!("{context} output"))?;
            if out.entry(t.arity).or_default().insert(key, value).is_some() {
                return Err(SpecError::DuplicateEntry { context });
            }
        }
    }
    for t in out.values_mut() {
        t.retain(|_, v| !v.is_empty());
    }
    out.retain(|_, t| !t.is_empty());
    Ok(out)
}

impl WorkbenchSpec {
    /// Builds the category and the optional sections. The category is only
    /// assembled here; structure checks are left to the caller.
    pub fn load(&self) -> Result<Workbench, SpecError> {
        let field = ExactField::from_name(&self.field).map_err(|_| SpecError::Field(self.field.clone()))?;
        let obj = |name: &str, context: &str| -> Result<usize, SpecError> {
            self.objects.iter().position(|o| o == name).ok_or_else(|| SpecError::UnknownObject {
                object: name.to_string(),
                context: context.to_string(),
            })
        };
        let default_end = |side: &Option<String>, context: &str| -> Result<usize, SpecError> {
            match side {
                Some(o) => obj(o, context),
                None if self.objects.len() == 1 => Ok(0),
                None => Err(SpecError::Invalid(format!(
                    "{context}: source and target are required with several objects"
                ))),
            }
        };
        let mut basis = Vec::with_capacity(self.basis.len());
        for (i, b) in self.basis.iter().enumerate() {
            let context = format!("basis[{i}]");
            basis.push(BasisElement {
                label: b.name.clone(),
                source: default_end(&b.source, &context)?,
                target: default_end(&b.target, &context)?,
                degree: b.degree,
            });
        }
        let index: BTreeMap<String, usize> = basis.iter().enumerate().map(|(i, b)| (b.label.clone(), i)).collect();
        let lookup = |l: &str| index.get(l).copied();
        let mut units = vec![usize::MAX; self.objects.len()];
        for (o, label) in &self.units {
            let oi = obj(o, "units")?;
            units[oi] = lookup(label).ok_or_else(|| SpecError::UnknownLabel {
                label: label.clone(),
                context: "units".to_string(),
            })?;
        }
        if let Some(missing) = units.iter().position(|&u| u == usize::MAX) {
            return Err(AInfError::MissingUnit(self.objects[missing].clone()).into());
        }
        let ops = tables(field, &self.multiplications, &lookup, &lookup, "multiplications")?;
        let category = AInfCategory::from_parts(field, self.objects.clone(), basis, units, ops)?;
        let filtration = match &self.filtration {
            None => None,
            Some(levels) => {
                let dim = category.dim();
                let mut subspaces = Vec::with_capacity(levels.len());
                for (p, level) in levels.iter().enumerate() {
                    let vectors = level
                        .iter()
                        .enumerate()
                        .map(|(k, c)| {
                            let t = combination(field, c, &lookup, &format!("filtration[{p}][{k}]"))?;
                            Ok(crate::ainf::terms_to_dense(field, dim, &t))
                        })
                        .collect::<Result<Vec<Vector>, SpecError>>()?;
                    subspaces.push(Subspace::span(field, dim, &vectors).map_err(|e| SpecError::Invalid(e.to_string()))?);
                }
                Some(Filtration::new(subspaces)?)
            }
        };
        let cochain = match &self.cochain {
            None => None,
            Some(c) => Some(c.load(&category)?),
        };
        Ok(Workbench {
            category,
            filtration,
            cochain,
            kappa: self.parameters.as_ref().and_then(|p| p.kappa),
        })
    }
}

impl CochainSpec {
    /// Resolves inputs against `c` and outputs against the chosen bimodule.
    /// Arity-0 components are not part of the format.
    pub fn load(&self, c: &AInfCategory) -> Result<(Bimodule, HochschildCochain), SpecError> {
        let m = match self.bimodule.as_str() {
            "diagonal" => Bimodule::diagonal(c),
            "zero" => Bimodule::zero(),
            other => return Err(SpecError::UnknownBimodule(other.to_string())),
        };
        if let Some(t) = self.tables.iter().find(|t| t.arity == 0) {
            return Err(SpecError::Arity {
                context: "cochain tables".to_string(),
                expected: 1,
                found: t.arity,
            });
        }
        let m_index: BTreeMap<&str, usize> = m.basis().iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
        let components = tables(
            c.field(),
            &self.tables,
            &|l| c.element(l),
            &|l| m_index.get(l).copied(),
            "cochain.tables",
        )?;
        Ok((
            m,
            HochschildCochain {
                degree: self.degree,
                components,
            },
        ))
    }

    /// The spec of a cochain with values in `m` (`bimodule` names it).
    pub fn from_cochain(c: &AInfCategory, m: &Bimodule, bimodule: &str, phi: &HochschildCochain) -> Self {
        let label = |i: usize| m.basis()[i].label.clone();
        CochainSpec {
            degree: phi.degree,
            bimodule: bimodule.to_string(),
            tables: table_specs(c, &phi.components, &label),
        }
    }
}

fn combination_spec(t: &[(usize, crate::scalar::Scalar)], label: &dyn Fn(usize) -> String) -> Combination {
    t.iter().map(|(i, x)| (label(*i), x.to_string())).collect()
}

fn table_specs(
    c: &AInfCategory,
    ops: &BTreeMap<usize, BTreeMap<Vec<usize>, Terms>>,
    label: &dyn Fn(usize) -> String,
) -> Vec<TableSpec> {
    ops.iter()
        .map(|(&arity, table)| TableSpec {
            arity,
            entries: table
                .iter()
                .map(|(key, out)| EntrySpec {
                    inputs: c.labels_of(key),
                    output: combination_spec(out, label),
                })
                .collect(),
        })
        .collect()
}

/// The spec of a category, optionally with a filtration and parameters.
pub fn category_to_spec(c: &AInfCategory, filtration: Option<&Filtration>, kappa: Option<i64>) -> WorkbenchSpec {
    let one_object = c.objects().len() == 1;
    let obj = |o: usize| if one_object { None } else { Some(c.objects()[o].clone()) };
    let label = |i: usize| c.label(i).to_string();
    WorkbenchSpec {
        field: c.field().name(),
        objects: c.objects().to_vec(),
        basis: c
            .basis()
            .iter()
            .map(|b| BasisSpec {
                name: b.label.clone(),
                source: obj(b.source),
                target: obj(b.target),
                degree: b.degree,
            })
            .collect(),
        units: c
            .units()
            .iter()
            .enumerate()
            .map(|(o, &u)| (c.objects()[o].clone(), c.label(u).to_string()))
            .collect(),
        multiplications: table_specs(c, c.ops(), &label),
        filtration: filtration.map(|f| {
            f.levels()
                .iter()
                .map(|l| l.basis().iter().map(|v| combination_spec(&terms_from_dense(v), &label)).collect())
                .collect()
        }),
        cochain: None,
        parameters: kappa.map(|k| Parameters { kappa: Some(k) }),
    }
}
