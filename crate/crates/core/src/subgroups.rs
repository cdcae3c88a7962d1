//! Subgroup fusion records and the choice between construction I (the whole
//! subgroup fixes a 4-space) and construction II (each element does).

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::m24::{CharacterTable, ConjClass};
use crate::series::QYSeries;
use crate::trace::{theorem_trace, Construction};

const EMBEDDED: &str = include_str!("../data/subgroup_fusions.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFusions {
    #[allow(dead_code)]
    version: String,
    subgroups: Vec<RawSubgroup>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubgroup {
    name: String,
    fused_classes: Vec<String>,
    asserted_group_fixed_dim: u32,
    construction: String,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SubgroupFusion {
    pub name: String,
    /// One M24 class per subgroup class, with repetition.
    pub fused_classes: Vec<String>,
    /// Dimension of the space fixed by the whole subgroup, as stated in the source.
    pub asserted_group_fixed_dim: u32,
    pub construction: Construction,
    pub note: Option<String>,
}

pub fn parse_construction(s: &str) -> Result<Construction> {
    match s {
        "I" => Ok(Construction::I),
        "II" => Ok(Construction::II),
        _ => Err(Error::data(format!("construction must be I or II, not {s:?}"))),
    }
}

pub fn load_fusions(path: &Path, table: &CharacterTable) -> Result<Vec<SubgroupFusion>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
    parse_fusions(&text, table)
}

pub fn default_fusions(table: &CharacterTable) -> Result<Vec<SubgroupFusion>> {
    parse_fusions(EMBEDDED, table)
}

pub fn parse_fusions(json: &str, table: &CharacterTable) -> Result<Vec<SubgroupFusion>> {
    let raw: RawFusions = serde_json::from_str(json).map_err(|e| Error::data(format!("fusion schema: {e}")))?;
    let mut out = Vec::new();
    let mut problems = Vec::new();
    for s in raw.subgroups {
        for name in &s.fused_classes {
            match table.class(name) {
                Err(_) => problems.push(format!("{}: unknown class {name}", s.name)),
                Ok(c) if c.excluded => problems.push(format!("{}: excluded class {name}", s.name)),
                Ok(c) if c.fixed_space_dim() < 4 => problems.push(format!(
                    "{}: class {name} fixes only a {}-dimensional space",
                    s.name,
                    c.fixed_space_dim()
                )),
                Ok(_) => {}
            }
        }
        let construction = parse_construction(&s.construction)?;
        if construction == Construction::I && s.asserted_group_fixed_dim < 4 {
            problems.push(format!(
                "{}: construction I needs a group-fixed 4-space, asserted dimension is {}",
                s.name, s.asserted_group_fixed_dim
            ));
        }
        out.push(SubgroupFusion {
            name: s.name,
            fused_classes: s.fused_classes,
            asserted_group_fixed_dim: s.asserted_group_fixed_dim,
            construction,
            note: s.note,
        });
    }
    if problems.is_empty() {
        Ok(out)
    } else {
        Err(Error::data(problems.join("; ")))
    }
}

#[derive(Clone, Debug)]
pub struct ClassDims {
    pub class: String,
    pub fixed_space_dim: u32,
    pub chi: i64,
}

#[derive(Clone, Debug)]
pub struct Eligibility {
    pub subgroup: String,
    pub per_class: Vec<ClassDims>,
    pub min_element_dim: u32,
    pub group_fixed_dim: u32,
    /// `None` when neither construction applies.
    pub verdict: Option<Construction>,
    pub declared: Construction,
}

impl Eligibility {
    pub fn matches_declared(&self) -> bool {
        self.verdict == Some(self.declared)
    }
}

pub fn eligibility(sf: &SubgroupFusion, table: &CharacterTable) -> Result<Eligibility> {
    let per_class = sf
        .fused_classes
        .iter()
        .map(|n| {
            let c = table.class(n)?;
            Ok(ClassDims { class: n.clone(), fixed_space_dim: c.fixed_space_dim(), chi: c.chi() })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_element_dim = per_class.iter().map(|d| d.fixed_space_dim).min().unwrap_or(0);
    let verdict = if sf.asserted_group_fixed_dim >= 4 {
        Some(Construction::I)
    } else if min_element_dim >= 4 {
        Some(Construction::II)
    } else {
        None
    };
    Ok(Eligibility {
        subgroup: sf.name.clone(),
        per_class,
        min_element_dim,
        group_fixed_dim: sf.asserted_group_fixed_dim,
        verdict,
        declared: sf.construction,
    })
}

#[derive(Clone, Debug)]
pub struct TraceRow {
    pub class: String,
    pub series: QYSeries,
}

/// `M~_g` for every fused class, by the construction the verdict selects.
pub fn subgroup_trace_table(
    sf: &SubgroupFusion,
    table: &CharacterTable,
    qmax24: i64,
    ylow: i64,
) -> Result<(Eligibility, Vec<TraceRow>)> {
    let el = eligibility(sf, table)?;
    let construction = match el.verdict {
        Some(c) if c == sf.construction => c,
        v => {
            return Err(Error::Invalid(format!(
                "{}: declared construction {:?} but the fusion data gives {v:?}",
                sf.name, sf.construction
            )))
        }
    };
    let mut cache: HashMap<&str, QYSeries> = HashMap::new();
    let mut rows = Vec::new();
    for name in &sf.fused_classes {
        let s = match cache.get(name.as_str()) {
            Some(s) => s.clone(),
            None => {
                let c: &ConjClass = table.class(name)?;
                let s = theorem_trace(c, construction, qmax24, ylow)?;
                cache.insert(name, s.clone());
                s
            }
        };
        rows.push(TraceRow { class: name.clone(), series: s });
    }
    Ok((el, rows))
}
