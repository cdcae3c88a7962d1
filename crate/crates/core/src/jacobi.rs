//! Twining weak Jacobi forms `phi_g` and everything extracted from them.
//!
//! Every y-dependent object is a [`FactorSum`] expanded straight to its
//! target window; y-free objects are [`QSeries`].

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;

use crate::classical::{
    eta3mu, eta3mu_fs, eta_fp, eta_over_theta1_sq_fp, f2, theta1_sq_over_eta_fp, theta_quot_fp, theta_quot_half_fp,
};
use crate::coeff::{q, qi, Q};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::factor::{FactorProduct, FactorSum};
use crate::m24::{eigen_data, frame_eta, CharacterTable, ConjClass, GROUP_ORDER};
use crate::series::{QSeries, QYSeries};

/// y-window used when a result is only needed through its y-free part.
const Y_FREE_WINDOW: i64 = -4;

/// `phi_g` as a sum of products:
/// `-1/2 A + 1/2 B - 1/2 D_g X - 1/2 C_-g Y`, zero terms dropped.
pub fn phi_g_fs(c: &ConjClass) -> Result<FactorSum> {
    let e = eigen_data(c)?;
    let half = q(1, 2);
    let mut terms = vec![
        theta_quot_half_fp(4, &c.cycle_shape)?.scale(&-half.clone()),
        theta_quot_half_fp(3, &c.cycle_shape)?.scale(&half),
    ];
    if !e.d_g.is_zero() {
        let x = frame_eta(c, false, false).mul(&theta1_sq_over_eta_fp(6));
        terms.push(x.scale(&(-&half * &e.d_g)));
    }
    if !e.c_neg_g.is_zero() {
        let y = frame_eta(c, true, false).mul(&theta_quot_fp(2)?);
        terms.push(y.scale(&(-&half * &e.c_neg_g)));
    }
    Ok(FactorSum::new(terms))
}

pub fn phi_g(c: &ConjClass, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    phi_g_fs(c)?.expand(qmax24, ylow)
}

/// `eta^3 mu` times `fp`, with enough Appell terms for `qmax24`.
fn eta3mu_times(fp: &FactorProduct, qmax24: i64) -> FactorSum {
    eta3mu_fs(qmax24 - fp.b0).mul_fp(fp)
}

/// `H_g = phi_g eta^3 / theta_1^2 - chi(g) mu`, checked to be free of y.
pub fn h_g(c: &ConjClass, qmax24: i64) -> Result<QSeries> {
    let chi = c.chi();
    let mut fs = phi_g_fs(c)?.mul_fp(&eta_over_theta1_sq_fp(3));
    if chi != 0 {
        fs = fs.add(&eta3mu_times(&eta_fp(-3), qmax24).scale(&qi(-chi)));
    }
    fs.expand(qmax24, Y_FREE_WINDOW)?.assert_y_free()
}

/// `H eta^3` as a q-series exact to `qmax24`.
pub fn h_eta3(h: &QSeries, qmax24: i64) -> Result<QSeries> {
    if h.qmax24() < qmax24 - 3 {
        return Err(Error::window(format!("H known to {} but {} is needed", h.qmax24(), qmax24 - 3)));
    }
    eta_fp(3).apply(&h.to_qy(), qmax24, 0)?.assert_y_free()
}

/// `M~ = H eta^3 + chi eta^3 mu` from a given `H`.
pub fn m_tilde_from_h(h: &QSeries, chi: i64, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    let finite = eta_fp(3).apply(&h.to_qy(), qmax24, ylow)?;
    Ok(finite.add(&eta3mu(qmax24, ylow)?.scale(&qi(chi))))
}

pub fn m_g_tilde(c: &ConjClass, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    m_tilde_from_h(&h_g(c, qmax24 - 3)?, c.chi(), qmax24, ylow)
}

/// `phi_g eta^6 / theta_1^2`, expanded directly.
pub fn phi_eta6_over_theta1_sq(c: &ConjClass, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    phi_g_fs(c)?.mul_fp(&eta_over_theta1_sq_fp(6)).expand(qmax24, ylow)
}

/// `Q_g = H_g eta^3 - 2 chi(g) F_2`.
pub fn q_g(c: &ConjClass, qmax24: i64) -> Result<QSeries> {
    let he3 = h_eta3(&h_g(c, qmax24 - 3)?, qmax24)?;
    Ok(he3.sub(&f2(qmax24).scale(&qi(2 * c.chi()))))
}

/// `F_g = chi(g)/24 H_e eta^3 - H_g eta^3`.
pub fn f_g(c: &ConjClass, h_e: &QSeries, qmax24: i64) -> Result<QSeries> {
    let he = h_eta3(h_e, qmax24)?;
    let hg = h_eta3(&h_g(c, qmax24 - 3)?, qmax24)?;
    Ok(he.scale(&q(c.chi(), 24)).sub(&hg))
}

/// The other expression for `F_g`:
/// `chi(g)/24 Z_K3 eta^6 / theta_1^2 - chi(g) mu eta^3 - H_g eta^3`.
pub fn f_g_via_z_k3(c: &ConjClass, h_e: &QSeries, qmax24: i64) -> Result<QSeries> {
    let fp = eta_over_theta1_sq_fp(6);
    let (zq, zy) = fp.input_window(qmax24, Y_FREE_WINDOW, 0);
    let z = z_k3(h_e, zq, zy)?;
    let zpart = fp.apply(&z, qmax24, Y_FREE_WINDOW)?.scale(&q(c.chi(), 24));
    let hg = eta_fp(3).apply(&h_g(c, qmax24 - 3)?.to_qy(), qmax24, Y_FREE_WINDOW)?;
    let polar = eta3mu(qmax24, Y_FREE_WINDOW)?.scale(&qi(c.chi()));
    zpart.sub(&polar).sub(&hg).assert_y_free()
}

/// `Z_K3 = 24 mu theta_1^2 / eta^3 + H_e theta_1^2 / eta^3`.
pub fn z_k3(h_e: &QSeries, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    let polar = eta3mu_times(&theta1_sq_over_eta_fp(6), qmax24).scale(&qi(24)).expand(qmax24, ylow)?;
    let finite = theta1_sq_over_eta_fp(3).apply(&h_e.to_qy(), qmax24, ylow)?;
    Ok(polar.add(&finite))
}

/// `phi_{0,1} = Z_K3 / 2`.
pub fn phi01(h_e: &QSeries, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    Ok(z_k3(h_e, qmax24, ylow)?.scale(&q(1, 2)))
}

/// `phi_{-2,1} = -theta_1^2 / eta^6`.
pub fn phi_neg21(qmax24: i64, ylow: i64) -> Result<QYSeries> {
    theta1_sq_over_eta_fp(6).scale(&qi(-1)).expand(qmax24, ylow)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAux {
    version: String,
    classes: Vec<RawAuxClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAuxClass {
    name: String,
    leading_exponent_24: i64,
    coefficients: Vec<String>,
}

/// Externally supplied `H_g` for the excluded classes.
#[derive(Clone, Debug)]
pub struct AuxH {
    pub version: String,
    pub series: BTreeMap<String, QSeries>,
}

impl AuxH {
    /// Common exactness bound of all supplied series.
    pub fn qmax24(&self) -> i64 {
        self.series.values().map(|s| s.qmax24()).min().unwrap_or(i64::MIN)
    }
}

pub fn load_aux_h(path: &Path, table: &CharacterTable) -> Result<AuxH> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
    parse_aux_h(&text, table)
}

pub fn parse_aux_h(json: &str, table: &CharacterTable) -> Result<AuxH> {
    let raw: RawAux = serde_json::from_str(json).map_err(|e| Error::data(format!("aux schema: {e}")))?;
    let mut series = BTreeMap::new();
    let mut problems = Vec::new();
    for c in raw.classes {
        match table.class(&c.name) {
            Ok(cl) if cl.excluded => {}
            _ => problems.push(format!("aux class {} is not an excluded class", c.name)),
        }
        if c.leading_exponent_24 != -3 {
            problems.push(format!("aux class {}: leading exponent {} is not -3", c.name, c.leading_exponent_24));
        }
        let mut entries = Vec::new();
        for (k, s) in c.coefficients.iter().enumerate() {
            let v: Q = s.parse().map_err(|_| Error::data(format!("aux class {}: bad coefficient {s:?}", c.name)))?;
            if !v.is_integer() {
                problems.push(format!("aux class {}: coefficient {v} is not integral", c.name));
            }
            entries.push((c.leading_exponent_24 + 24 * k as i64, v));
        }
        if entries.first().map(|(_, v)| v.clone()) != Some(qi(-2)) {
            problems.push(format!("aux class {}: leading coefficient is not -2", c.name));
        }
        let qmax = c.leading_exponent_24 + 24 * (c.coefficients.len() as i64 - 1);
        if series.insert(c.name.clone(), QSeries::from_entries(entries, qmax, c.leading_exponent_24)).is_some() {
            problems.push(format!("aux class {} listed twice", c.name));
        }
    }
    if problems.is_empty() {
        Ok(AuxH { version: raw.version, series })
    } else {
        Err(Error::data(problems.join("; ")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Full,
    Partial,
}

/// Multiplicities of each irrep in the class functions given by the
/// coefficients of `M~_g`, per `(n24, r)` cell.
#[derive(Clone, Debug)]
pub struct Multiplicities {
    pub coverage: Coverage,
    pub qmax24: i64,
    pub ylow: i64,
    pub irreps: Vec<String>,
    /// Classes whose `H_g` was unavailable.
    pub missing: Vec<String>,
    /// The `chi(g) eta^3 mu` part, summed over all classes.
    pub polar: Vec<BTreeMap<(i64, i64), Q>>,
    /// The `H_g eta^3` part over the classes that have `H_g`.
    pub finite: Vec<BTreeMap<(i64, i64), Q>>,
}

impl Multiplicities {
    pub fn total(&self, i: usize) -> BTreeMap<(i64, i64), Q> {
        let mut out = self.polar[i].clone();
        for (k, v) in &self.finite[i] {
            *out.entry(*k).or_insert_with(Q::zero) += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Cells `(irrep, (n24, r), value)` that are not integers.
    pub fn non_integral(&self) -> Vec<(String, (i64, i64), Q)> {
        let mut bad = Vec::new();
        for (i, name) in self.irreps.iter().enumerate() {
            for (k, v) in self.total(i) {
                if !v.is_integer() {
                    bad.push((name.clone(), k, v));
                }
            }
        }
        bad
    }

    pub fn polar_integral(&self) -> bool {
        self.polar.iter().all(|m| m.values().all(|v| v.is_integer()))
    }
}

fn pair(
    table: &CharacterTable,
    series: &[(usize, QYSeries)],
    weights: &[Vec<Cyclotomic>],
) -> Result<Vec<BTreeMap<(i64, i64), Q>>> {
    let mut out = Vec::with_capacity(table.irreps.len());
    for w in weights {
        let mut acc: BTreeMap<(i64, i64), Cyclotomic> = BTreeMap::new();
        for (g, s) in series {
            for (k, v) in s.iter() {
                let term = w[*g].scale(v);
                let slot = acc.entry(*k).or_insert_with(|| Cyclotomic::from_integer(0));
                *slot = &*slot + &term;
            }
        }
        let mut m = BTreeMap::new();
        for (k, v) in acc {
            let v = v.rationality_check().map_err(|e| Error::Rationality(format!("multiplicity at {k:?}: {e}")))?;
            if !v.is_zero() {
                m.insert(k, v);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `m_i(n, r) = 1/|M24| sum_g |g^G| [M~_g]_(n, r) conj(chi_i(g))`.
///
/// Classes without `H_g` (excluded and not in `aux`) contribute only their
/// polar part and the result is [`Coverage::Partial`].
pub fn multiplicity_series(
    table: &CharacterTable,
    qmax24: i64,
    ylow: i64,
    aux: Option<&AuxH>,
) -> Result<Multiplicities> {
    let mut qmax24 = qmax24;
    if let Some(a) = aux {
        qmax24 = qmax24.min(a.qmax24() + 3);
    }
    let order = qi(GROUP_ORDER as i64);
    let weights: Vec<Vec<Cyclotomic>> = (0..table.irreps.len())
        .map(|i| {
            table
                .classes
                .iter()
                .map(|c| c.characters[i].conj().scale(&(qi(c.class_size() as i64) / &order)))
                .collect()
        })
        .collect();

    let polar_base = eta3mu(qmax24, ylow)?;
    let mut polar = Vec::new();
    let mut finite = Vec::new();
    let mut missing = Vec::new();
    for (g, c) in table.classes.iter().enumerate() {
        polar.push((g, polar_base.scale(&qi(c.chi()))));
        let h = if c.is_allowed() {
            Some(h_g(c, qmax24 - 3)?)
        } else {
            aux.and_then(|a| a.series.get(&c.name)).cloned()
        };
        match h {
            Some(h) => finite.push((g, eta_fp(3).apply(&h.to_qy(), qmax24, ylow)?)),
            None => missing.push(c.name.clone()),
        }
    }
    Ok(Multiplicities {
        coverage: if missing.is_empty() { Coverage::Full } else { Coverage::Partial },
        qmax24,
        ylow,
        irreps: table.irreps.iter().map(|i| i.label.clone()).collect(),
        missing,
        polar: pair(table, &polar, &weights)?,
        finite: pair(table, &finite, &weights)?,
    })
}
