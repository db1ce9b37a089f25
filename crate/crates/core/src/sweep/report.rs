//! Serialization of sweep, survey and check results.
//!
//! CSV uses 10 significant digits, JSON 17.

use std::fmt::Write;
use std::str::FromStr;

use super::survey::{Sampler, SurveyReport};
use super::SweepReport;
use crate::criteria::CriterionResult;
use crate::numfmt::{sig10, sig17};
use crate::states::BipartiteDims;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Csv,
    #[default]
    Json,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(Error::input(format!("unknown format '{s}' (json, csv or table)"))),
        }
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn json_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| sig17(*x)).collect();
    format!("[{}]", items.join(", "))
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

impl SweepReport {
    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Table => self.to_table(),
        }
    }

    /// Header `param,criterion,value,detects`, one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,criterion,value,detects\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{}", sig10(r.param), r.criterion, sig10(r.value), r.detects)
                .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let spec = &self.spec;
        let (from, to) = spec.range();
        let fixed: Vec<String> = spec
            .fixed()
            .iter()
            .map(|(k, v)| format!("{}: {}", quote(k), sig17(*v)))
            .collect();
        let criteria: Vec<String> = self.criteria.iter().map(|c| quote(c.as_str())).collect();
        let mut out = String::from("{\n");
        writeln!(out, "  \"family\": {},", quote(spec.family().as_str())).unwrap();
        writeln!(out, "  \"param\": {},", quote(spec.param())).unwrap();
        writeln!(out, "  \"fixed\": {{{}}},", fixed.join(", ")).unwrap();
        writeln!(out, "  \"from\": {},", sig17(from)).unwrap();
        writeln!(out, "  \"to\": {},", sig17(to)).unwrap();
        writeln!(out, "  \"steps\": {},", spec.steps()).unwrap();
        writeln!(out, "  \"criteria\": [{}],", criteria.join(", ")).unwrap();
        out += "  \"rows\": [";
        for (i, r) in self.rows.iter().enumerate() {
            out += if i == 0 { "\n" } else { ",\n" };
            write!(
                out,
                "    {{\"param\": {}, \"criterion\": {}, \"value\": {}, \"detects\": {}}}",
                sig17(r.param),
                quote(r.criterion.as_str()),
                sig17(r.value),
                r.detects
            )
            .unwrap();
        }
        out += if self.rows.is_empty() { "],\n" } else { "\n  ],\n" };
        let bounds: Vec<String> = self
            .boundaries
            .iter()
            .map(|(id, b)| format!("{}: {}", quote(id.as_str()), json_list(b)))
            .collect();
        writeln!(out, "  \"boundaries\": {{{}}}", bounds.join(", ")).unwrap();
        out += "}\n";
        out
    }

    pub fn to_table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    sig10(r.param),
                    r.criterion.to_string(),
                    sig10(r.value),
                    if r.detects { "yes" } else { "no" }.to_string(),
                ]
            })
            .collect();
        let mut out = table(&[self.spec.param(), "criterion", "value", "detects"], &rows);
        for (id, b) in &self.boundaries {
            let list: Vec<String> = b.iter().map(|x| sig10(*x)).collect();
            writeln!(out, "# {id} flips: {}", if list.is_empty() { "none".into() } else { list.join(", ") })
                .unwrap();
        }
        out
    }
}

impl SurveyReport {
    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Table => self.to_table(),
        }
    }

    fn sampler_fields(&self) -> (&'static str, usize) {
        match self.sampler {
            Sampler::Density { rank } => ("density", rank),
            Sampler::Separable { terms } => ("separable", terms),
        }
    }

    /// Rows `metric,count` where metric is a criterion id or `a-but-not-b`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,count\n");
        for (id, n) in &self.counts {
            writeln!(out, "{id},{n}").unwrap();
        }
        for (a, b, n) in &self.cross {
            writeln!(out, "{a}-but-not-{b},{n}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let (sampler, size) = self.sampler_fields();
        let size_key = if sampler == "density" { "rank" } else { "terms" };
        let counts: Vec<String> = self
            .counts
            .iter()
            .map(|(id, n)| format!("{}: {n}", quote(id.as_str())))
            .collect();
        let cross: Vec<String> = self
            .cross
            .iter()
            .map(|(a, b, n)| format!("{}: {n}", quote(&format!("{a}-but-not-{b}"))))
            .collect();
        let mut out = String::from("{\n");
        writeln!(out, "  \"dims\": {},", quote(&self.dims.to_string())).unwrap();
        writeln!(out, "  \"samples\": {},", self.samples).unwrap();
        writeln!(out, "  \"seed\": {},", self.seed).unwrap();
        writeln!(out, "  \"sampler\": {},", quote(sampler)).unwrap();
        writeln!(out, "  \"{size_key}\": {size},").unwrap();
        writeln!(out, "  \"counts\": {{{}}},", counts.join(", ")).unwrap();
        writeln!(out, "  \"cross\": {{{}}}", cross.join(", ")).unwrap();
        out += "}\n";
        out
    }

    pub fn to_table(&self) -> String {
        let (sampler, size) = self.sampler_fields();
        let mut out = format!(
            "# {} {} states ({sampler}, {size}), seed {}\n",
            self.samples, self.dims, self.seed
        );
        let rows: Vec<Vec<String>> = self
            .counts
            .iter()
            .map(|(id, n)| vec![id.to_string(), n.to_string()])
            .collect();
        out += &table(&["criterion", "detected"], &rows);
        let k = self.criteria.len();
        if k > 1 {
            // a row, b column: detected by a but not by b
            let mut header = vec!["but not →"];
            header.extend(self.criteria.iter().map(|c| c.as_str()));
            let rows: Vec<Vec<String>> = self
                .criteria
                .iter()
                .map(|&a| {
                    let mut row = vec![a.to_string()];
                    row.extend(self.criteria.iter().map(|&b| {
                        if a == b { "-".to_string() } else { self.only(a, b).unwrap_or(0).to_string() }
                    }));
                    row
                })
                .collect();
            out += "\n";
            out += &table(&header, &rows);
        }
        out
    }
}

fn check_details(r: &CriterionResult) -> String {
    let mut fields: Vec<String> = Vec::new();
    if let Some(k) = r.rank {
        fields.push(format!("\"rank\": {k}"));
    }
    fields.extend(r.details.iter().map(|(k, v)| format!("{}: {}", quote(k), sig17(*v))));
    format!("{{{}}}", fields.join(", "))
}

pub fn check_to_json(dims: BipartiteDims, results: &[CriterionResult]) -> String {
    let mut out = String::from("{\n");
    writeln!(out, "  \"dims\": {},", quote(&dims.to_string())).unwrap();
    out += "  \"results\": [";
    for (i, r) in results.iter().enumerate() {
        out += if i == 0 { "\n" } else { ",\n" };
        write!(
            out,
            "    {{\"criterion\": {}, \"value\": {}, \"detects\": {}, \"details\": {}}}",
            quote(r.id.as_str()),
            sig17(r.value),
            r.detects,
            check_details(r)
        )
        .unwrap();
    }
    out += if results.is_empty() { "]\n" } else { "\n  ]\n" };
    out += "}\n";
    out
}

/// Header `criterion,value,detects`.
pub fn check_to_csv(results: &[CriterionResult]) -> String {
    let mut out = String::from("criterion,value,detects\n");
    for r in results {
        writeln!(out, "{},{},{}", r.id, sig10(r.value), r.detects).unwrap();
    }
    out
}

pub fn check_to_table(results: &[CriterionResult]) -> String {
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            vec![
                r.id.to_string(),
                sig10(r.value),
                if r.detects { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    table(&["criterion", "value", "detects"], &rows)
}
