//! Model file parsing and canonical serialization.
//!
//! The on-disk format is a single JSON document. Serialization is
//! canonical — object keys sorted bytewise, reals rendered with 17
//! significant digits — so parse → serialize → parse is the identity
//! and canonical files survive a round trip byte-for-byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{DeunError, Result};
use crate::graph::Deun;
use crate::model::{
    validate_model, Attribute, Cpd, DecisionModel, UtilityForm, ValidationReport,
};
use crate::table::{CornerConfig, LabeledTable};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    attributes: Vec<AttributeFile>,
    prob_edges: Vec<(u32, u32)>,
    util_edges: Vec<(u32, u32)>,
    decisions: Vec<String>,
    cpds: BTreeMap<String, BTreeMap<String, CpdFile>>,
    utilities: BTreeMap<String, BTreeMap<String, UtilityFile>>,
    corner_weights: BTreeMap<String, f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AttributeFile {
    index: u32,
    name: String,
    domain: (f64, f64),
    ref_zero: f64,
    ref_star: f64,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum CpdFile {
    LinearGaussian {
        intercept: f64,
        coeffs: BTreeMap<String, f64>,
        sigma: f64,
    },
    Tabular {
        support: Vec<f64>,
        rows: Vec<Vec<f64>>,
    },
}

#[derive(Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
enum UtilityFile {
    ExpIncreasing { delta: f64 },
    ExpDecreasing { delta: f64 },
    OneMinusExp { delta: f64 },
    Tabular { values: Vec<f64> },
}

/// Parses and fully validates a model document from a string.
pub fn parse_model_str(text: &str) -> Result<DecisionModel> {
    let (model, report) = parse_model_str_with_report(text)?;
    if report.is_clean() {
        Ok(model)
    } else {
        Err(DeunError::Validation(report.violations))
    }
}

/// Parses a model document and returns it alongside the full
/// validation report (violations are data here, not errors).
pub fn parse_model_str_with_report(text: &str) -> Result<(DecisionModel, ValidationReport)> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| DeunError::Parse(e.to_string()))?;
    let model = lower(file)?;
    let report = validate_model(&model);
    Ok((model, report))
}

/// Parses and fully validates a model file.
pub fn parse_model(path: &Path) -> Result<DecisionModel> {
    parse_model_str(&std::fs::read_to_string(path)?)
}

/// Converts the file representation into a [`DecisionModel`],
/// resolving attribute names to indices. Structural problems that make
/// the model unrepresentable are errors; everything else is left to
/// [`validate_model`].
fn lower(file: ModelFile) -> Result<DecisionModel> {
    let n = file.attributes.len() as u32;
    let deun = Deun::new(n, file.prob_edges, file.util_edges)?;

    let mut by_name: BTreeMap<&str, u32> = BTreeMap::new();
    let mut attributes: Vec<Option<Attribute>> = vec![None; n as usize];
    for a in &file.attributes {
        if a.index < 1 || a.index > n {
            return Err(DeunError::Parse(format!(
                "attribute index {} outside 1..={n}",
                a.index
            )));
        }
        if by_name.insert(&a.name, a.index).is_some() {
            return Err(DeunError::Parse(format!(
                "duplicate attribute name '{}'",
                a.name
            )));
        }
        let slot = &mut attributes[a.index as usize - 1];
        if slot.is_some() {
            return Err(DeunError::Parse(format!(
                "duplicate attribute index {}",
                a.index
            )));
        }
        *slot = Some(Attribute {
            index: a.index,
            name: a.name.clone(),
            domain: a.domain,
            ref_zero: a.ref_zero,
            ref_star: a.ref_star,
        });
    }
    let attributes: Vec<Attribute> = attributes
        .into_iter()
        .map(|a| a.ok_or_else(|| DeunError::Parse("attribute indices are not 1..=n".into())))
        .collect::<Result<_>>()?;
    let resolve = |name: &str| -> Result<u32> {
        by_name
            .get(name)
            .copied()
            .ok_or_else(|| DeunError::Parse(format!("unknown attribute name '{name}'")))
    };

    let mut cpds = Vec::with_capacity(file.decisions.len());
    for label in &file.decisions {
        let per_decision = file.cpds.get(label).ok_or_else(|| {
            DeunError::Parse(format!("no CPDs given for decision '{label}'"))
        })?;
        let mut map = BTreeMap::new();
        for (attr_name, cpd) in per_decision {
            let i = resolve(attr_name)?;
            let cpd = match cpd {
                CpdFile::LinearGaussian {
                    intercept,
                    coeffs,
                    sigma,
                } => Cpd::LinearGaussian {
                    intercept: *intercept,
                    coeffs: coeffs
                        .iter()
                        .map(|(name, &c)| Ok((resolve(name)?, c)))
                        .collect::<Result<BTreeMap<u32, f64>>>()?,
                    sigma: *sigma,
                },
                CpdFile::Tabular { support, rows } => Cpd::Tabular {
                    support: support.clone(),
                    rows: rows.clone(),
                },
            };
            map.insert(i, cpd);
        }
        cpds.push(map);
    }
    for label in file.cpds.keys() {
        if !file.decisions.contains(label) {
            return Err(DeunError::Parse(format!(
                "CPDs given for undeclared decision '{label}'"
            )));
        }
    }

    let mut utilities = BTreeMap::new();
    for (attr_name, per_corner) in &file.utilities {
        let i = resolve(attr_name)?;
        let scope = deun.util_parents(i);
        let mut map = BTreeMap::new();
        for (key, form) in per_corner {
            let config = CornerConfig::parse(key, &scope).map_err(|e| {
                DeunError::Parse(format!("utilities for '{attr_name}': {e}"))
            })?;
            let form = match form {
                UtilityFile::ExpIncreasing { delta } => {
                    UtilityForm::ExpIncreasing { delta: *delta }
                }
                UtilityFile::ExpDecreasing { delta } => {
                    UtilityForm::ExpDecreasing { delta: *delta }
                }
                UtilityFile::OneMinusExp { delta } => {
                    UtilityForm::OneMinusExp { delta: *delta }
                }
                UtilityFile::Tabular { values } => UtilityForm::Tabular {
                    values: values.clone(),
                },
            };
            map.insert(config, form);
        }
        utilities.insert(i, map);
    }

    let full_scope: Vec<u32> = (1..=n).collect();
    let mut weights = Vec::with_capacity(1 << n);
    for config in CornerConfig::enumerate(&full_scope) {
        match file.corner_weights.get(&config.key()) {
            Some(&w) => weights.push(w),
            None => {
                return Err(DeunError::Parse(format!(
                    "corner_weights: missing key '{}'",
                    config.key()
                )))
            }
        }
    }
    if file.corner_weights.len() != weights.len() {
        let extra: Vec<&String> = file
            .corner_weights
            .keys()
            .filter(|k| CornerConfig::parse(k, &full_scope).is_err())
            .collect();
        return Err(DeunError::Parse(format!(
            "corner_weights: unexpected keys {extra:?}"
        )));
    }

    Ok(DecisionModel {
        deun,
        attributes,
        decisions: file.decisions,
        cpds,
        utilities,
        corner_weights: LabeledTable::new(full_scope, weights),
    })
}

/// Canonical serialization of a model: sorted keys, 17-significant-digit
/// reals, two-space indentation, trailing newline.
pub fn serialize_model(model: &DecisionModel) -> String {
    let mut w = Writer::new();
    w.open_object();
    w.key("attributes");
    w.open_array();
    for attr in &model.attributes {
        w.open_object();
        w.key("domain");
        w.open_array();
        w.real(attr.domain.0);
        w.real(attr.domain.1);
        w.close_array();
        w.key("index");
        w.integer(attr.index as u64);
        w.key("name");
        w.string(&attr.name);
        w.key("ref_star");
        w.real(attr.ref_star);
        w.key("ref_zero");
        w.real(attr.ref_zero);
        w.close_object();
    }
    w.close_array();

    w.key("corner_weights");
    w.open_object();
    // Bytewise key order ('*' sorts before '0').
    let mut weight_keys: Vec<(String, f64)> = model
        .corner_weights
        .configs()
        .into_iter()
        .map(|c| (c.key(), *model.corner_weights.get(&c)))
        .collect();
    weight_keys.sort_by(|a, b| a.0.cmp(&b.0));
    for (key, weight) in weight_keys {
        w.key(&key);
        w.real(weight);
    }
    w.close_object();

    w.key("cpds");
    w.open_object();
    let mut labels: Vec<&String> = model.decisions.iter().collect();
    labels.sort();
    for label in labels {
        let d = model.decision_index(label).expect("declared label");
        w.key(label);
        w.open_object();
        let mut names: Vec<&Attribute> = model.attributes.iter().collect();
        names.sort_by(|a, b| a.name.cmp(&b.name));
        for attr in names {
            w.key(&attr.name);
            w.open_object();
            match model.cpd(d, attr.index) {
                Cpd::LinearGaussian {
                    intercept,
                    coeffs,
                    sigma,
                } => {
                    w.key("coeffs");
                    w.open_object();
                    let mut parents: Vec<(&str, f64)> = coeffs
                        .iter()
                        .map(|(&p, &c)| (model.attribute(p).name.as_str(), c))
                        .collect();
                    parents.sort_by(|a, b| a.0.cmp(b.0));
                    for (name, c) in parents {
                        w.key(name);
                        w.real(c);
                    }
                    w.close_object();
                    w.key("intercept");
                    w.real(*intercept);
                    w.key("sigma");
                    w.real(*sigma);
                    w.key("type");
                    w.string("linear_gaussian");
                }
                Cpd::Tabular { support, rows } => {
                    w.key("rows");
                    w.open_array();
                    for row in rows {
                        w.open_array();
                        for &p in row {
                            w.real(p);
                        }
                        w.close_array();
                    }
                    w.close_array();
                    w.key("support");
                    w.open_array();
                    for &s in support {
                        w.real(s);
                    }
                    w.close_array();
                    w.key("type");
                    w.string("tabular");
                }
            }
            w.close_object();
        }
        w.close_object();
    }
    w.close_object();

    w.key("decisions");
    w.open_array();
    for label in &model.decisions {
        w.string(label);
    }
    w.close_array();

    w.key("prob_edges");
    w.open_array();
    for &(i, j) in model.deun.prob_edges() {
        w.open_array();
        w.integer(i as u64);
        w.integer(j as u64);
        w.close_array();
    }
    w.close_array();

    w.key("util_edges");
    w.open_array();
    for &(i, j) in model.deun.util_edges() {
        w.open_array();
        w.integer(i as u64);
        w.integer(j as u64);
        w.close_array();
    }
    w.close_array();

    w.key("utilities");
    w.open_object();
    let mut named: Vec<&Attribute> = model.attributes.iter().collect();
    named.sort_by(|a, b| a.name.cmp(&b.name));
    for attr in named {
        w.key(&attr.name);
        w.open_object();
        let mut corners: Vec<(String, &UtilityForm)> = model.utilities[&attr.index]
            .iter()
            .map(|(c, f)| (c.key(), f))
            .collect();
        corners.sort_by(|a, b| a.0.cmp(&b.0));
        for (key, form) in corners {
            w.key(&key);
            w.open_object();
            match form {
                UtilityForm::ExpIncreasing { delta } => {
                    w.key("delta");
                    w.real(*delta);
                    w.key("form");
                    w.string("exp_increasing");
                }
                UtilityForm::ExpDecreasing { delta } => {
                    w.key("delta");
                    w.real(*delta);
                    w.key("form");
                    w.string("exp_decreasing");
                }
                UtilityForm::OneMinusExp { delta } => {
                    w.key("delta");
                    w.real(*delta);
                    w.key("form");
                    w.string("one_minus_exp");
                }
                UtilityForm::Tabular { values } => {
                    w.key("form");
                    w.string("tabular");
                    w.key("values");
                    w.open_array();
                    for &v in values {
                        w.real(v);
                    }
                    w.close_array();
                }
            }
            w.close_object();
        }
        w.close_object();
    }
    w.close_object();

    w.close_object();
    w.finish()
}

/// Serializes to a file, creating parent directories if needed.
pub fn write_model(model: &DecisionModel, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, serialize_model(model))?;
    Ok(())
}

/// Renders a real with 17 significant digits, JSON-compatible.
pub fn canonical_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Minimal pretty-printing JSON writer with deterministic layout.
struct Writer {
    out: String,
    indent: usize,
    /// Whether the current container already holds an element.
    has_item: Vec<bool>,
    pending_key: bool,
}

impl Writer {
    fn new() -> Self {
        Writer {
            out: String::new(),
            indent: 0,
            has_item: Vec::new(),
            pending_key: false,
        }
    }

    fn prepare_value(&mut self) {
        if self.pending_key {
            self.pending_key = false;
            return;
        }
        if let Some(has) = self.has_item.last_mut() {
            if *has {
                self.out.push(',');
            }
            *has = true;
            self.out.push('\n');
            for _ in 0..self.indent {
                self.out.push_str("  ");
            }
        }
    }

    fn open_object(&mut self) {
        self.prepare_value();
        self.out.push('{');
        self.indent += 1;
        self.has_item.push(false);
    }

    fn close_object(&mut self) {
        self.close_container('}');
    }

    fn open_array(&mut self) {
        self.prepare_value();
        self.out.push('[');
        self.indent += 1;
        self.has_item.push(false);
    }

    fn close_array(&mut self) {
        self.close_container(']');
    }

    fn close_container(&mut self, ch: char) {
        let had = self.has_item.pop().expect("balanced containers");
        self.indent -= 1;
        if had {
            self.out.push('\n');
            for _ in 0..self.indent {
                self.out.push_str("  ");
            }
        }
        self.out.push(ch);
    }

    fn key(&mut self, key: &str) {
        self.prepare_value();
        write_escaped(&mut self.out, key);
        self.out.push_str(": ");
        self.pending_key = true;
    }

    fn string(&mut self, s: &str) {
        self.prepare_value();
        write_escaped(&mut self.out, s);
    }

    fn integer(&mut self, v: u64) {
        self.prepare_value();
        let _ = write!(self.out, "{v}");
    }

    fn real(&mut self, v: f64) {
        self.prepare_value();
        self.out.push_str(&canonical_real(v));
    }

    fn finish(mut self) -> String {
        debug_assert!(self.has_item.is_empty());
        self.out.push('\n');
        self.out
    }
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}
