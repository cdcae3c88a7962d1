//! Named verification checks, grouped into suites.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;

use crate::classical::{eta3mu, eta_fp, eta_pow, f2, theta1_sq, theta1_sq_fp, theta_quot};
use crate::coeff::qi;
use crate::error::{Error, Result};
use crate::jacobi::{
    f_g, f_g_via_z_k3, h_g, m_g_tilde, multiplicity_series, phi_eta6_over_theta1_sq, phi_g, q_g, AuxH, Coverage,
};
use crate::m24::{validate, CharacterTable, ConjClass};
use crate::series::QYSeries;
use crate::subgroups::{eligibility, SubgroupFusion};
use crate::trace::{component_trace, theorem_trace, vsnat_trace, Component, Construction, Insertion, Route, TraceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Partial => "PARTIAL",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Data,
    Series,
    Forms,
    Traces,
    Multiplicities,
    Subgroups,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "data" => Suite::Data,
            "series" => Suite::Series,
            "forms" => Suite::Forms,
            "traces" => Suite::Traces,
            "multiplicities" => Suite::Multiplicities,
            "subgroups" => Suite::Subgroups,
            _ => return Err(Error::Invalid(format!("unknown suite {s}"))),
        })
    }
}

/// Inputs shared by every check.
pub struct Context<'a> {
    pub table: &'a CharacterTable,
    pub fusions: &'a [SubgroupFusion],
    pub aux: Option<&'a AuxH>,
    pub qmax24: i64,
    pub ylow: i64,
}

type Outcome = std::result::Result<(Status, String), String>;

fn timed(name: &str, f: impl FnOnce() -> Outcome) -> Check {
    let t = Instant::now();
    let (status, detail) = match f() {
        Ok(v) => v,
        Err(e) => (Status::Fail, e),
    };
    Check { name: name.to_string(), status, detail, seconds: t.elapsed().as_secs_f64() }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn pass(detail: impl Into<String>) -> Outcome {
    Ok((Status::Pass, detail.into()))
}

/// Run `f` on every allowed class in parallel; the first failure in class order wins.
fn per_class<F>(table: &CharacterTable, f: F) -> std::result::Result<usize, String>
where
    F: Fn(&ConjClass) -> std::result::Result<(), String> + Sync,
{
    let classes: Vec<&ConjClass> = table.allowed().collect();
    let results: Vec<_> = classes.par_iter().map(|c| f(c).map_err(|e| format!("{}: {e}", c.name))).collect();
    for r in results {
        r?;
    }
    Ok(classes.len())
}

fn same(a: &QYSeries, b: &QYSeries, qmax24: i64, ylow: i64, yhigh: i64) -> std::result::Result<(), String> {
    match a.first_difference(b, qmax24, ylow, yhigh).map_err(err)? {
        None => Ok(()),
        Some(((n, r), x, y)) => Err(format!("differs at (n24 {n}, r {r}): {x} vs {y}")),
    }
}

pub fn check_data(table: &CharacterTable) -> Outcome {
    let problems = validate(table);
    if problems.is_empty() {
        pass(format!("{} classes: orthogonality, class equation, chi = 1 + chi_23, Frame shapes", table.classes.len()))
    } else {
        Err(problems.join("; "))
    }
}

pub fn check_eta_identities(qmax24: i64) -> Outcome {
    let e3 = eta_pow(3, qmax24).map_err(err)?;
    let mut k = 0i64;
    loop {
        let n24 = 3 * (2 * k + 1) * (2 * k + 1);
        if n24 > qmax24 {
            break;
        }
        let want = qi(if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) });
        if e3.coeff(n24, 0).map_err(err)? != want {
            return Err(format!("eta^3 at q^({n24}/24) differs from the Jacobi series"));
        }
        k += 1;
    }
    for (a, b) in [(1, 3), (-3, 9), (12, 12)] {
        let lhs = eta_pow(a, qmax24).map_err(err)?.mul(&eta_pow(b, qmax24).map_err(err)?);
        let w = lhs.qmax24().min(qmax24);
        same(&lhs, &eta_pow(a + b, qmax24).map_err(err)?, w, 0, 0).map_err(|e| format!("eta^{a} eta^{b}: {e}"))?;
    }
    pass("eta^3 Jacobi series and eta^a eta^b = eta^(a+b)")
}

pub fn check_theta(qmax24: i64, ylow: i64) -> Outcome {
    let t = theta1_sq(qmax24, ylow).map_err(err)?.specialize_y_one().map_err(err)?;
    if let Some((n, v)) = t.iter().find(|(_, v)| !v.is_zero()) {
        return Err(format!("theta_1^2 at y = 1 has {v} at q^({n}/24)"));
    }
    for j in [2, 3, 4] {
        let s = theta_quot(j, qmax24, ylow).map_err(err)?.specialize_y_one().map_err(err)?;
        if s.iter().any(|(n, v)| *v != if *n == 0 { qi(1) } else { qi(0) }) {
            return Err(format!("theta_{j} quotient at y = 1 is not 1"));
        }
    }
    let m = eta3mu(qmax24, ylow).map_err(err)?;
    if !m.all_integers() {
        return Err("eta^3 mu has a non-integral coefficient".into());
    }
    pass("theta_1^2(y = 1) = 0, theta_j quotients at y = 1, eta^3 mu integral")
}

/// `phi_g(tau, 0) = chi(g)`.
pub fn check_phi_at_zero(table: &CharacterTable, qmax24: i64, ylow: i64) -> Outcome {
    let n = per_class(table, |c| {
        let s = phi_g(c, qmax24, ylow).map_err(err)?.specialize_y_one().map_err(err)?;
        for (n, v) in s.iter() {
            let want = if *n == 0 { qi(c.chi()) } else { qi(0) };
            if *v != want {
                return Err(format!("coefficient {v} at q^({n}/24), expected {want}"));
            }
        }
        Ok(())
    })?;
    pass(format!("{n} classes, constant chi(g), q <= {}", qmax24 / 24))
}

/// `phi_e = 8 (theta_2 + theta_3 + theta_4 quotients)`.
pub fn check_phi_e_oracle(table: &CharacterTable, qmax24: i64, ylow: i64, yhigh: i64) -> Outcome {
    let phi = phi_g(table.class("1A").map_err(err)?, qmax24, ylow).map_err(err)?;
    let mut oracle = QYSeries::zero(qmax24, ylow);
    for j in [2, 3, 4] {
        oracle = oracle.add(&theta_quot(j, qmax24, ylow).map_err(err)?);
    }
    same(&phi, &oracle.scale(&qi(8)), qmax24, ylow, yhigh)?;
    pass(format!("q <= {}, y in [{ylow}, {yhigh}]", qmax24 / 24))
}

/// `H_g` is y-free and integral; `H_e` starts `-2, 90, 462, 1540` = `-2, 2 * (45, 231, 770)`.
pub fn check_h_extraction(table: &CharacterTable, qmax24: i64) -> Outcome {
    let n = per_class(table, |c| {
        let h = h_g(c, qmax24).map_err(err)?;
        if !h.all_integers() {
            return Err("non-integral coefficient".into());
        }
        if h.coeff(-3).map_err(err)? != qi(-2) {
            return Err("leading coefficient is not -2".into());
        }
        Ok(())
    })?;
    let he = h_g(table.class("1A").map_err(err)?, 69).map_err(err)?;
    let mut want = vec![qi(-2)];
    for label in ["45a", "231a", "770a"] {
        want.push(qi(2 * table.irreps[table.irrep_index(label).map_err(err)?].degree as i64));
    }
    let got = he.coefficients(-3, 24);
    if got != want || want != [-2, 90, 462, 1540].map(qi).to_vec() {
        return Err(format!("H_e starts {got:?}, expected {want:?}"));
    }
    pass(format!("{n} classes y-free and integral to q^{}; H_e = q^(-1/8)(-2 + 90q + 462q^2 + 1540q^3 + ...)", qmax24 / 24))
}

/// `phi_g eta^6 / theta_1^2 = chi(g)(eta^3 mu + 2 F_2) + Q_g`.
pub fn check_polar_decomposition(table: &CharacterTable, qmax24: i64, ylow: i64, yhigh: i64) -> Outcome {
    let polar = eta3mu(qmax24, ylow).map_err(err)?.add(&f2(qmax24).scale(&qi(2)).to_qy());
    let n = per_class(table, |c| {
        let lhs = phi_eta6_over_theta1_sq(c, qmax24, ylow).map_err(err)?;
        let rhs = polar.scale(&qi(c.chi())).add(&q_g(c, qmax24).map_err(err)?.to_qy());
        same(&lhs, &rhs, qmax24, ylow, yhigh)
    })?;
    pass(format!("{n} classes, q <= {}, y in [{ylow}, {yhigh}]", qmax24 / 24))
}

/// The two expressions for `F_g` agree and `F_e = 0`.
pub fn check_f_g_two_ways(table: &CharacterTable, qmax24: i64) -> Outcome {
    let h_e = h_g(table.class("1A").map_err(err)?, qmax24 - 3).map_err(err)?;
    let fe = f_g(table.class("1A").map_err(err)?, &h_e, qmax24).map_err(err)?;
    if let Some((n, v)) = fe.iter().find(|(_, v)| !v.is_zero()) {
        return Err(format!("F_e has {v} at q^({n}/24)"));
    }
    let n = per_class(table, |c| {
        let a = f_g(c, &h_e, qmax24).map_err(err)?;
        let b = f_g_via_z_k3(c, &h_e, qmax24).map_err(err)?;
        match a.sub(&b).iter().find(|(_, v)| !v.is_zero()) {
            None => Ok(()),
            Some((n, v)) => Err(format!("the two F_g differ by {v} at q^({n}/24)")),
        }
    })?;
    pass(format!("{n} classes, q <= {}; F_e = 0", qmax24 / 24))
}

pub fn check_routes(table: &CharacterTable, qmax24: i64, ylow: i64, yhigh: i64) -> Outcome {
    let n = per_class(table, |c| {
        let d = vsnat_trace(c, Route::Direct, qmax24, ylow).map_err(err)?;
        let t = vsnat_trace(c, Route::T, qmax24, ylow).map_err(err)?;
        same(&d, &t, qmax24, ylow, yhigh)
    })?;
    pass(format!("{n} classes, direct = T, q <= {}, y in [{ylow}, {yhigh}]", qmax24 / 24))
}

pub fn check_theorem_traces(table: &CharacterTable, qmax24: i64, ylow: i64, yhigh: i64) -> Outcome {
    let n = per_class(table, |c| {
        let m = m_g_tilde(c, qmax24, ylow).map_err(err)?;
        let one = theorem_trace(c, Construction::I, qmax24, ylow).map_err(err)?;
        let two = theorem_trace(c, Construction::II, qmax24, ylow).map_err(err)?;
        same(&one, &m, qmax24, ylow, yhigh).map_err(|e| format!("construction I: {e}"))?;
        same(&two, &m, qmax24, ylow, yhigh).map_err(|e| format!("construction II: {e}"))
    })?;
    pass(format!("{n} classes, I = II = M~_g, q <= {}", qmax24 / 24))
}

/// `tr(p0 | A(p)_tw) = eta^4` and `-tr(W(b)_tw) = eta^2 / theta_1^2`.
pub fn check_components(qmax24: i64, ylow: i64, yhigh: i64) -> Outcome {
    let ap4 = component_trace(&TraceSpec::new(Component::Ap4, &[Insertion::P0], None)).map_err(err)?;
    let lhs = ap4.collapse().map_err(err)?.expand(qmax24, 0).map_err(err)?;
    same(&lhs, &eta_pow(4, qmax24).map_err(err)?, qmax24, 0, 0).map_err(|e| format!("Ap4: {e}"))?;
    let wb = component_trace(&TraceSpec::new(Component::Wb, &[Insertion::YJ], None)).map_err(err)?;
    let lhs = wb.collapse().map_err(err)?.expand(qmax24, ylow).map_err(err)?.negate();
    let rhs = eta_fp(2).mul(&theta1_sq_fp().inverse().map_err(err)?).expand(qmax24, ylow).map_err(err)?;
    same(&lhs, &rhs, qmax24, ylow, yhigh).map_err(|e| format!("Wb: {e}"))?;
    // theta_1^2 (-Wb) = eta^2 with theta_1^2 expanded as its own series
    let wide = wb.collapse().map_err(err)?.expand(qmax24 + 24, ylow).map_err(err)?.negate();
    let back = theta1_sq(qmax24 + 24, ylow).map_err(err)?.mul(&wide);
    same(&back, &eta_pow(2, qmax24).map_err(err)?, qmax24, back.ylow(), yhigh)
        .map_err(|e| format!("theta_1^2 (-Wb) against eta^2: {e}"))?;
    pass(format!("Ap4 = eta^4, -Wb = eta^2/theta_1^2, q <= {}", qmax24 / 24))
}

pub fn check_multiplicities(table: &CharacterTable, aux: Option<&AuxH>, qmax24: i64, ylow: i64) -> Outcome {
    let m = multiplicity_series(table, qmax24, ylow, aux).map_err(err)?;
    if !m.polar_integral() {
        return Err("the chi(g) eta^3 mu part has a non-integral multiplicity".into());
    }
    match m.coverage {
        Coverage::Full => {
            let bad = m.non_integral();
            if let Some((irr, (n, r), v)) = bad.first() {
                return Err(format!("{} non-integral cells, first {irr} at (n24 {n}, r {r}): {v}", bad.len()));
            }
            pass(format!("26 irreps integral for q <= {} (window ylow {})", m.qmax24 / 24, m.ylow))
        }
        Coverage::Partial => Ok((
            Status::Partial,
            format!(
                "no H_g for {}; polar part integral, H part exact over {} classes (integrality not asserted)",
                m.missing.join(", "),
                26 - m.missing.len()
            ),
        )),
    }
}

pub fn check_subgroups(table: &CharacterTable, fusions: &[SubgroupFusion]) -> Outcome {
    let mut parts = Vec::new();
    for sf in fusions {
        let el = eligibility(sf, table).map_err(err)?;
        if !el.matches_declared() {
            return Err(format!("{}: declared {:?}, data gives {:?}", sf.name, el.declared, el.verdict));
        }
        if el.min_element_dim < 4 {
            return Err(format!("{}: an element fixes only {} dimensions", sf.name, el.min_element_dim));
        }
        parts.push(format!("{} -> {:?} (group dim {})", sf.name, el.declared, el.group_fixed_dim));
    }
    pass(parts.join(", "))
}

/// The checks of one suite at the context window.
pub fn run_suite(suite: Suite, ctx: &Context) -> Vec<Check> {
    let (q, y) = (ctx.qmax24, ctx.ylow);
    let yh = -y;
    let t = ctx.table;
    let mut out = Vec::new();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Data) {
        out.push(timed("data.asset", || check_data(t)));
    }
    if want(Suite::Series) {
        out.push(timed("series.eta", || check_eta_identities(q)));
        out.push(timed("series.theta", || check_theta(q, y)));
    }
    if want(Suite::Forms) {
        out.push(timed("forms.phi_at_zero", || check_phi_at_zero(t, q, y)));
        out.push(timed("forms.phi_e_oracle", || check_phi_e_oracle(t, q, y, yh)));
        out.push(timed("forms.h_extraction", || check_h_extraction(t, q)));
        out.push(timed("forms.polar_decomposition", || check_polar_decomposition(t, q, y, yh)));
        out.push(timed("forms.f_g_two_ways", || check_f_g_two_ways(t, q)));
    }
    if want(Suite::Traces) {
        out.push(timed("traces.components", || check_components(q, y, yh)));
        out.push(timed("traces.routes", || check_routes(t, q, y, yh)));
        out.push(timed("traces.theorems", || check_theorem_traces(t, q, y, yh)));
    }
    if want(Suite::Multiplicities) {
        out.push(timed("multiplicities", || check_multiplicities(t, ctx.aux, q, y)));
    }
    if want(Suite::Subgroups) {
        out.push(timed("subgroups.fixtures", || check_subgroups(t, ctx.fusions)));
    }
    out
}
