//! Exhaustive verification sweeps over all dissections of small polygons.
//!
//! Each dissection is checked independently and the per-dissection results
//! are merged in enumeration order, so a report does not depend on how the
//! sweep was scheduled.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bhj::MTable;
use crate::ccmap::{extension_check, rho_diagonal};
use crate::cluster::{all_ind_objects, IndObj, Obj};
use crate::error::Result;
use crate::gmodule::{g_module, mesh_is_split, GModule};
use crate::grassmann::{chi_table, chi_table_via_fq};
use crate::polygon::{crosses, enumerate_dissections, Dissection, PolygonSize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// `ρ = m_R` on every diagonal.
    Agreement,
    /// Mesh differences are 0 or 1, and 0 exactly for split meshes.
    MeshRule,
    /// `ρ(m) = ρ(a) + ρ(b)` for every dissection diagonal crossing `m`.
    Extension,
    /// Subset counts agree with finite-field point counts.
    Oracle,
}

impl Property {
    pub const DEFAULT: [Property; 3] =
        [Property::Agreement, Property::MeshRule, Property::Extension];

    pub fn key(self) -> &'static str {
        match self {
            Property::Agreement => "rho_equals_m",
            Property::MeshRule => "mesh_rule",
            Property::Extension => "extension",
            Property::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: usize,
    pub dissection: String,
    pub diagonal: String,
    pub property: String,
    pub expected: String,
    pub actual: String,
}

/// A mesh with difference 0, i.e. where the exchange relation fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub dissection: String,
    pub diagonal: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub min_polygon: usize,
    pub max_polygon: usize,
    pub dissections_checked: u64,
    pub objects_checked: u64,
    pub properties: BTreeMap<String, Tally>,
    /// Meshes with difference 0 seen during the mesh-rule check.
    pub split_meshes: u64,
    pub exchange_failure_witness: Option<Witness>,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, p: Property) -> Tally {
        self.properties.get(p.key()).copied().unwrap_or_default()
    }

    fn merge(&mut self, other: VerificationReport) {
        self.dissections_checked += other.dissections_checked;
        self.objects_checked += other.objects_checked;
        for (k, t) in other.properties {
            let e = self.properties.entry(k).or_default();
            e.checked += t.checked;
            e.failed += t.failed;
        }
        self.split_meshes += other.split_meshes;
        if self.exchange_failure_witness.is_none() {
            self.exchange_failure_witness = other.exchange_failure_witness;
        }
        self.failures.extend(other.failures);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Plain-text summary.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "polygons {}..={}: {} dissections, {} objects\n",
            self.min_polygon, self.max_polygon, self.dissections_checked, self.objects_checked
        );
        for (k, t) in &self.properties {
            out.push_str(&format!(
                "  {k:<10} checked {:>9}  failed {}\n",
                t.checked, t.failed
            ));
        }
        if self.properties.contains_key(Property::MeshRule.key()) {
            out.push_str(&format!(
                "  split meshes (difference 0): {}\n",
                self.split_meshes
            ));
        }
        if let Some(w) = &self.exchange_failure_witness {
            out.push_str(&format!(
                "  exchange failure witness: N={} dissection {} at {}\n",
                w.n, w.dissection, w.diagonal
            ));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "  FAIL {} N={} [{}] {}: expected {}, got {}\n",
                f.property, f.n, f.dissection, f.diagonal, f.expected, f.actual
            ));
        }
        out.push_str(if self.passed() { "OK\n" } else { "FAILED\n" });
        out
    }
}

struct Recorder<'a> {
    report: VerificationReport,
    n: usize,
    dissection: &'a Dissection,
}

impl Recorder<'_> {
    fn check(&mut self, p: Property, diagonal: &str, expected: String, actual: String) {
        let ok = expected == actual;
        let t = self
            .report
            .properties
            .entry(p.key().to_string())
            .or_default();
        t.checked += 1;
        if !ok {
            t.failed += 1;
            self.report.failures.push(Failure {
                n: self.n,
                dissection: self.dissection.to_string(),
                diagonal: diagonal.to_string(),
                property: p.key().to_string(),
                expected,
                actual,
            });
        }
    }
}

fn oracle_agrees(m: &GModule) -> std::result::Result<(), String> {
    let table: BTreeMap<_, i64> = chi_table(m)
        .into_iter()
        .map(|(e, c)| (e, c as i64))
        .collect();
    match chi_table_via_fq(m) {
        Ok(via) if via == table => Ok(()),
        Ok(via) => Err(format!("{} entries differ from {}", via.len(), table.len())),
        Err(e) => Err(e.to_string()),
    }
}

/// Checks one dissection against the requested properties.
pub fn verify_dissection(dissection: &Dissection, properties: &[Property]) -> VerificationReport {
    let n = dissection.polygon();
    let objects = all_ind_objects(n).expect("category-sized polygon");
    let mut rec = Recorder {
        report: VerificationReport {
            min_polygon: n.vertices(),
            max_polygon: n.vertices(),
            dissections_checked: 1,
            objects_checked: objects.len() as u64,
            ..Default::default()
        },
        n: n.vertices(),
        dissection,
    };
    let rho: BTreeMap<_, u64> = objects
        .iter()
        .map(|c| (c.diagonal(), rho_diagonal(dissection, c.diagonal())))
        .collect();
    let rho_obj = |x: &Obj| x.summands().iter().map(|d| rho[d]).product::<u64>();

    if properties.contains(&Property::Agreement) {
        let m = MTable::new(dissection);
        for c in &objects {
            let d = c.diagonal();
            rec.check(
                Property::Agreement,
                &d.to_string(),
                m.diagonal(d).to_string(),
                rho[&d].to_string(),
            );
        }
    }

    if properties.contains(&Property::MeshRule) {
        for &c in &objects {
            let t = c.ar_triangle();
            let diff = rho[&t.start.diagonal()] as i128 * rho[&c.diagonal()] as i128
                - rho_obj(&t.middle) as i128;
            let split = mesh_is_split(dissection, c);
            let label = c.to_string();
            let in_range = diff == 0 || diff == 1;
            rec.check(
                Property::MeshRule,
                &label,
                "difference in {0,1}".into(),
                if in_range {
                    "difference in {0,1}".into()
                } else {
                    format!("difference {diff}")
                },
            );
            rec.check(
                Property::MeshRule,
                &label,
                format!("split={}", diff == 0),
                format!("split={split}"),
            );
            if diff == 0 {
                rec.report.split_meshes += 1;
                if rec.report.exchange_failure_witness.is_none() {
                    rec.report.exchange_failure_witness = Some(Witness {
                        n: n.vertices(),
                        dissection: dissection.to_string(),
                        diagonal: label,
                    });
                }
            }
        }
    }

    if properties.contains(&Property::Extension) {
        for &c in &objects {
            for &s in dissection.diagonals() {
                if crosses(c.diagonal(), s) {
                    let ok =
                        extension_check(dissection, c, s).expect("crossing pair in dissection");
                    rec.check(
                        Property::Extension,
                        &format!("{c} with {s}"),
                        "true".into(),
                        ok.to_string(),
                    );
                }
            }
        }
    }

    if properties.contains(&Property::Oracle) {
        for &c in &objects {
            let arc = g_module(dissection, &c.into());
            let middle = g_module(dissection, &c.ar_triangle().middle);
            for (what, m) in [("arc", arc), ("mesh middle", middle)] {
                let result = oracle_agrees(&m);
                rec.check(
                    Property::Oracle,
                    &format!("{what} {c}"),
                    "agree".into(),
                    result.err().unwrap_or_else(|| "agree".into()),
                );
            }
        }
    }

    rec.report
}

/// Sweeps every dissection of every polygon with `min..=max` vertices.
pub fn verify_range(min: usize, max: usize, properties: &[Property]) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        min_polygon: min,
        max_polygon: max,
        ..Default::default()
    };
    for vertices in min..=max {
        let n = PolygonSize::new(vertices)?.require_category()?;
        let parts: Vec<VerificationReport> = enumerate_dissections(n)
            .par_iter()
            .map(|d| verify_dissection(d, properties))
            .collect();
        for part in parts {
            report.merge(part);
        }
    }
    Ok(report)
}

/// Agreement, the mesh rule and the extension formula for all polygons with
/// `6..=max_polygon` vertices.
pub fn verify_all(max_polygon: usize) -> Result<VerificationReport> {
    verify_range(6, max_polygon, &Property::DEFAULT)
}

/// Convenience for a single mesh check outside a sweep.
pub fn mesh_split_matches(dissection: &Dissection, c: IndObj) -> bool {
    let t = c.ar_triangle();
    let r = |d| rho_diagonal(dissection, d) as i128;
    let middle: i128 = t.middle.summands().iter().map(|&d| r(d)).product();
    let diff = r(t.start.diagonal()) * r(c.diagonal()) - middle;
    (diff == 0) == mesh_is_split(dissection, c)
}
