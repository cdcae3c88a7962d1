//! Serialization of series, check reports, subgroup tables and multiplicities.
//! Rationals are always strings; rows come out sorted by `(n24, r)`.

use mform::jacobi::{Coverage, Multiplicities};
use mform::subgroups::{Eligibility, TraceRow};
use mform::trace::Construction;
use mform::verify::{Check, Status};
use mform::QYSeries;
use serde::Serialize;

#[derive(Clone, Copy)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Serialize)]
pub struct Window {
    pub qmax24: i64,
    pub ylow: i64,
}

type Cell = (i64, i64, String);

fn cells(s: &QYSeries, w: Window) -> Vec<Cell> {
    s.iter()
        .filter(|((n, r), v)| *n <= w.qmax24 && *r >= w.ylow && !is_zero_q(v))
        .map(|((n, r), v)| (*n, *r, v.to_string()))
        .collect()
}

fn is_zero_q(v: &mform::Q) -> bool {
    *v.numer() == 0.into()
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<R: Serialize>(rows: impl IntoIterator<Item = R>, header: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn monomial(n24: i64, r: i64) -> String {
    let q = match n24 {
        0 => String::new(),
        n if n % 24 == 0 => format!("q^{}", n / 24),
        n => format!("q^({n}/24)"),
    };
    let y = match r {
        0 => String::new(),
        1 => "y".into(),
        r => format!("y^{r}"),
    };
    match (q.is_empty(), y.is_empty()) {
        (true, true) => "1".into(),
        (false, false) => format!("{q} {y}"),
        _ => q + &y,
    }
}

fn text_cells(out: &mut String, cs: &[Cell]) {
    for (n, r, v) in cs {
        out.push_str(&format!("{:>12}  {}\n", v, monomial(*n, *r)));
    }
}

#[derive(Serialize)]
struct SeriesOut<'a> {
    function: &'a str,
    class: Option<&'a str>,
    window: Window,
    coefficients: Vec<Cell>,
}

pub fn series(fmt: Format, function: &str, class: Option<&str>, w: Window, s: &QYSeries) -> String {
    let cs = cells(s, w);
    match fmt {
        Format::Json => json(&SeriesOut { function, class, window: w, coefficients: cs }),
        Format::Csv => csv_rows(cs, &["n24", "r", "coefficient"]),
        Format::Text => {
            let mut out = format!(
                "{}{} for n24 <= {}, r >= {}\n",
                function,
                class.map(|c| format!(" at {c}")).unwrap_or_default(),
                w.qmax24,
                w.ylow
            );
            text_cells(&mut out, &cs);
            out
        }
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Partial => "partial",
    }
}

#[derive(Serialize)]
struct CheckOut<'a> {
    name: &'a str,
    status: &'static str,
    detail: &'a str,
}

#[derive(Serialize)]
struct ChecksOut<'a> {
    suite: &'a str,
    window: Window,
    status: &'static str,
    warnings: Vec<String>,
    checks: Vec<CheckOut<'a>>,
}

/// Returns the rendered report and whether any check failed. Timings are
/// left out so that reruns are byte-identical.
pub fn checks(fmt: Format, suite: &str, w: Window, cs: &[Check]) -> (String, bool) {
    let failed = cs.iter().any(|c| c.status == Status::Fail);
    let warnings: Vec<String> =
        cs.iter().filter(|c| c.status == Status::Partial).map(|c| format!("{} is partial: {}", c.name, c.detail)).collect();
    let overall = if failed {
        "fail"
    } else if warnings.is_empty() {
        "pass"
    } else {
        "partial"
    };
    let rows: Vec<CheckOut> = cs.iter().map(|c| CheckOut { name: &c.name, status: status(c.status), detail: &c.detail }).collect();
    let text = match fmt {
        Format::Json => json(&ChecksOut { suite, window: w, status: overall, warnings, checks: rows }),
        Format::Csv => csv_rows(rows.iter().map(|r| (r.name, r.status, r.detail)), &["check", "status", "detail"]),
        Format::Text => {
            let mut out = String::new();
            for c in cs {
                out.push_str(&format!("{:<8} {:<24} {}\n", c.status.to_string(), c.name, c.detail));
            }
            for wn in &warnings {
                out.push_str(&format!("warning: {wn}\n"));
            }
            out.push_str(&format!("{suite}: {overall}\n"));
            out
        }
    };
    (text, failed)
}

fn verdict(v: Option<Construction>) -> &'static str {
    match v {
        Some(Construction::I) => "construction I",
        Some(Construction::II) => "construction II",
        None => "ineligible",
    }
}

#[derive(Serialize)]
struct ClassOut<'a> {
    class: &'a str,
    fixed_space_dim: u32,
    chi: i64,
}

#[derive(Serialize)]
struct RowOut<'a> {
    row: usize,
    class: &'a str,
    integral: bool,
    coefficients: Vec<Cell>,
}

#[derive(Serialize)]
struct ReportOut<'a> {
    subgroup: &'a str,
    verdict: &'static str,
    group_fixed_dim: u32,
    min_element_dim: u32,
    classes: Vec<ClassOut<'a>>,
    window: Window,
    rows: Vec<RowOut<'a>>,
}

pub fn report(fmt: Format, w: Window, el: &Eligibility, rows: &[TraceRow]) -> String {
    let rs: Vec<RowOut> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| RowOut { row: i + 1, class: &r.class, integral: r.series.all_integers(), coefficients: cells(&r.series, w) })
        .collect();
    match fmt {
        Format::Json => json(&ReportOut {
            subgroup: &el.subgroup,
            verdict: verdict(el.verdict),
            group_fixed_dim: el.group_fixed_dim,
            min_element_dim: el.min_element_dim,
            classes: el
                .per_class
                .iter()
                .map(|d| ClassOut { class: &d.class, fixed_space_dim: d.fixed_space_dim, chi: d.chi })
                .collect(),
            window: w,
            rows: rs,
        }),
        Format::Csv => csv_rows(
            rs.iter().flat_map(|r| r.coefficients.iter().map(move |(n, y, v)| (r.row, r.class, *n, *y, v.as_str()))),
            &["row", "class", "n24", "r", "coefficient"],
        ),
        Format::Text => {
            let mut out = format!(
                "{}: {} (group fixes {}, every element at least {})\n",
                el.subgroup,
                verdict(el.verdict),
                el.group_fixed_dim,
                el.min_element_dim
            );
            for r in &rs {
                out.push_str(&format!("row {} class {}{}\n", r.row, r.class, if r.integral { "" } else { " (non-integral)" }));
                text_cells(&mut out, &r.coefficients);
            }
            out
        }
    }
}

#[derive(Serialize)]
struct IrrepOut<'a> {
    irrep: &'a str,
    cells: Vec<Cell>,
}

#[derive(Serialize)]
struct MultOut<'a> {
    coverage: &'static str,
    missing: &'a [String],
    window: Window,
    integral: bool,
    irreps: Vec<IrrepOut<'a>>,
}

pub fn multiplicities(fmt: Format, m: &Multiplicities) -> String {
    let coverage = match m.coverage {
        Coverage::Full => "full",
        Coverage::Partial => "partial",
    };
    let irreps: Vec<IrrepOut> = m
        .irreps
        .iter()
        .enumerate()
        .map(|(i, name)| IrrepOut {
            irrep: name,
            cells: m.total(i).into_iter().map(|((n, r), v)| (n, r, v.to_string())).collect(),
        })
        .collect();
    let w = Window { qmax24: m.qmax24, ylow: m.ylow };
    match fmt {
        Format::Json => json(&MultOut {
            coverage,
            missing: &m.missing,
            window: w,
            integral: m.non_integral().is_empty(),
            irreps,
        }),
        Format::Csv => csv_rows(
            irreps.iter().flat_map(|i| i.cells.iter().map(move |(n, r, v)| (i.irrep, *n, *r, v.as_str()))),
            &["irrep", "n24", "r", "multiplicity"],
        ),
        Format::Text => {
            let mut out = format!("coverage {coverage}");
            if !m.missing.is_empty() {
                out.push_str(&format!(" (no H for {})", m.missing.join(", ")));
            }
            out.push('\n');
            for i in &irreps {
                out.push_str(&format!("{}\n", i.irrep));
                text_cells(&mut out, &i.cells);
            }
            out
        }
    }
}
