//! Graded traces on the Clifford, Weyl and Fock factors, assembled into an
//! independent route to `phi_g` and `M~_g`.
//!
//! Templates are cyclotomic [`FactorProduct`]s that may carry the formal
//! symbol `gamma`. A sector is reduced by `gamma -> -1`, then peeling of
//! `q^0` terms, then collapsing root-of-unity factors to rational ones.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::classical::{eta_fp, fam};
use crate::coeff::{q, Q};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::factor::{FactorProduct, FactorSum};
use crate::jacobi::phi_g_fs;
use crate::m24::{eigen_data, ConjClass};
use crate::series::QYSeries;

type Cfp = FactorProduct<Cyclotomic>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Ap4,
    Wb,
    Aa,
    AaTw,
    Af,
    AfTw,
    Wf,
    WfTw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Insertion {
    Ghat,
    Frakz,
    P0,
    YJ,
    GammaJ,
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Ap4" => Component::Ap4,
            "Wb" => Component::Wb,
            "Aa" => Component::Aa,
            "Aa_tw" => Component::AaTw,
            "Af" => Component::Af,
            "Af_tw" => Component::AfTw,
            "Wf" => Component::Wf,
            "Wf_tw" => Component::WfTw,
            _ => return Err(Error::Invalid(format!("unknown trace component {s}"))),
        })
    }
}

impl FromStr for Insertion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ghat" => Insertion::Ghat,
            "frakz" => Insertion::Frakz,
            "p0" => Insertion::P0,
            "yJ" => Insertion::YJ,
            "gammaJ" => Insertion::GammaJ,
            _ => return Err(Error::Invalid(format!("unknown insertion {s}"))),
        })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Component::Ap4 => "Ap4",
            Component::Wb => "Wb",
            Component::Aa => "Aa",
            Component::AaTw => "Aa_tw",
            Component::Af => "Af",
            Component::AfTw => "Af_tw",
            Component::Wf => "Wf",
            Component::WfTw => "Wf_tw",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct TraceSpec<'a> {
    pub component: Component,
    pub insertions: BTreeSet<Insertion>,
    pub class: Option<&'a ConjClass>,
}

impl<'a> TraceSpec<'a> {
    pub fn new(component: Component, insertions: &[Insertion], class: Option<&'a ConjClass>) -> Self {
        TraceSpec { component, insertions: insertions.iter().copied().collect(), class }
    }

    /// Parse `Component[/insertion,...]`, e.g. `Aa_tw/ghat,frakz`.
    pub fn parse(s: &str, class: Option<&'a ConjClass>) -> Result<Self> {
        let (comp, ins) = s.split_once('/').unwrap_or((s, ""));
        let insertions = ins
            .split(',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(TraceSpec { component: comp.parse()?, insertions, class })
    }
}

fn cyc(n: i64) -> Cyclotomic {
    Cyclotomic::from_integer(n)
}

/// `+1` for a minus sign in `(1 - x)`, `-1` for `(1 + x)`.
fn sign(minus: bool) -> Cyclotomic {
    cyc(if minus { 1 } else { -1 })
}

/// The trace template for one component with its insertions.
pub fn component_trace(spec: &TraceSpec) -> Result<Cfp> {
    use Component::*;
    use Insertion::*;
    let ins: Vec<Insertion> = spec.insertions.iter().copied().collect();
    let z = spec.insertions.contains(&Frakz);
    let invalid = || Error::Invalid(format!("no trace for {} with insertions {:?}", spec.component, ins));
    let need = |base: &[Insertion]| -> Result<()> {
        let rest: Vec<Insertion> = ins.iter().copied().filter(|i| *i != Frakz).collect();
        if rest == base {
            Ok(())
        } else {
            Err(invalid())
        }
    };
    let class = || spec.class.ok_or_else(|| Error::Invalid(format!("{} with ghat needs a class", spec.component)));
    let s = sign(z);
    let fp = match spec.component {
        Ap4 => {
            if ins != [P0] {
                return Err(invalid());
            }
            eta_fp(4).map(|c| Cyclotomic::from_rational(c.clone()))
        }
        Wb => {
            if ins != [YJ] {
                return Err(invalid());
            }
            Cfp::monomial(cyc(1), -1, -4)
                .with(cyc(1), -1, fam(24, -24), -2)
                .with(cyc(1), 1, fam(24, 0), -2)
        }
        Aa => {
            need(&[Ghat])?;
            let e = eigen_data(class()?)?;
            let mut fp = Cfp::monomial(cyc(1), 0, -12).with(s.clone(), 0, fam(24, -12), 4);
            for lam in &e.lambdas[..10] {
                fp = fp.with(&s * lam, 0, fam(24, -12), 1).with(&s * &lam.conj(), 0, fam(24, -12), 1);
            }
            fp.normalize()
        }
        AaTw => {
            need(&[Ghat])?;
            let e = eigen_data(class()?)?;
            let mut fp = Cfp::monomial(e.nu.clone(), 0, 24)
                .with(s.clone(), 0, fam(24, -24), 2)
                .with(s.clone(), 0, fam(24, 0), 2);
            for lam in &e.lambdas[..10] {
                fp = fp.with(&s * lam, 0, fam(24, 0), 1).with(&s * &lam.conj(), 0, fam(24, -24), 1);
            }
            fp.normalize()
        }
        Af => {
            need(&[YJ])?;
            Cfp::monomial(cyc(1), 0, -2).with(s.clone(), -1, fam(24, -12), 2).with(s, 1, fam(24, -12), 2)
        }
        AfTw => {
            need(&[YJ])?;
            Cfp::monomial(cyc(1), 1, 4).with(s.clone(), -1, fam(24, -24), 2).with(s, 1, fam(24, 0), 2)
        }
        // the Weyl traces carry a minus sign without frakz and a plus sign with it
        Wf => {
            need(&[GammaJ])?;
            let s = sign(!z);
            Cfp::monomial(cyc(1), 0, 2)
                .with_gamma(s.clone(), -1, 0, fam(24, -12), -2)
                .with_gamma(s, 1, 0, fam(24, -12), -2)
        }
        WfTw => {
            need(&[GammaJ])?;
            let s = sign(!z);
            let mut fp = Cfp::monomial(cyc(1), 0, -4)
                .with_gamma(s.clone(), -1, 0, fam(24, -24), -2)
                .with_gamma(s, 1, 0, fam(24, 0), -2);
            fp.gamma0 = -1;
            fp
        }
    };
    Ok(fp)
}

/// `P^1 = (zg - g)/2` for parity 1, `P^0 = (zg + g)/2` for parity 0.
pub fn project(parity: u8, with_g: &FactorSum<Cyclotomic>, with_zg: &FactorSum<Cyclotomic>) -> Result<FactorSum<Cyclotomic>> {
    let half = Cyclotomic::from_rational(q(1, 2));
    let g = match parity {
        0 => with_g.clone(),
        1 => with_g.clone().scale(&cyc(-1)),
        _ => return Err(Error::Invalid(format!("parity {parity}"))),
    };
    Ok(with_zg.clone().add(&g).scale(&half))
}

/// Set `gamma = -1` and reduce every term to a rational product.
pub fn gamma_limit(gs: &FactorSum<Cyclotomic>) -> Result<FactorSum<Q>> {
    let mut terms = Vec::new();
    for t in &gs.terms {
        let t = t.gamma_limit()?.peel()?;
        if t.scalar.is_zero() {
            continue;
        }
        terms.push(t.collapse()?);
    }
    Ok(FactorSum::new(terms))
}

fn sector_product(c: &ConjClass, tw: bool, frakz: bool) -> Result<Cfp> {
    use Insertion::*;
    let (a, f, w) = if tw {
        (Component::AaTw, Component::AfTw, Component::WfTw)
    } else {
        (Component::Aa, Component::Af, Component::Wf)
    };
    let with = |base: Insertion| if frakz { vec![base, Frakz] } else { vec![base] };
    let fa = component_trace(&TraceSpec::new(a, &with(Ghat), Some(c)))?;
    let ff = component_trace(&TraceSpec::new(f, &with(YJ), None))?;
    let fw = component_trace(&TraceSpec::new(w, &with(GammaJ), None))?;
    Ok(fa.mul(&ff).mul(&fw))
}

/// The trace on `(B (x) A(a))^1`.
pub fn untwisted_sector(c: &ConjClass) -> Result<FactorSum<Cyclotomic>> {
    let g = FactorSum::single(sector_product(c, false, false)?);
    let zg = FactorSum::single(sector_product(c, false, true)?);
    project(1, &g, &zg)
}

/// The trace on `(B (x) A(a))^0_tw`. The twisted vacuum is odd, so the
/// g-trace without the parity insertion enters with a minus sign.
pub fn twisted_sector(c: &ConjClass) -> Result<FactorSum<Cyclotomic>> {
    let g = FactorSum::single(sector_product(c, true, false)?.scale(&cyc(-1)));
    let zg = FactorSum::single(sector_product(c, true, true)?);
    project(0, &g, &zg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// The closed form for `phi_g`.
    Direct,
    /// Sector traces on `T`.
    T,
}

/// `-phi_g` as a rational sum of products.
pub fn vsnat_trace_fs(c: &ConjClass, route: Route) -> Result<FactorSum> {
    match route {
        Route::Direct => Ok(phi_g_fs(c)?.scale(&q(-1, 1))),
        Route::T => gamma_limit(&untwisted_sector(c)?.add(&twisted_sector(c)?)),
    }
}

pub fn vsnat_trace(c: &ConjClass, route: Route, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    vsnat_trace_fs(c, route)?.expand(qmax24, ylow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    I,
    II,
}

/// `tr(p0) tr(yJ | W(b)_tw) tr(zg | V_tw)`: the Ap4 and Wb traces times
/// `vsnat_trace`, direct for construction I and via `T` for II.
pub fn theorem_trace(c: &ConjClass, construction: Construction, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    let ap4 = component_trace(&TraceSpec::new(Component::Ap4, &[Insertion::P0], None))?;
    let wb = component_trace(&TraceSpec::new(Component::Wb, &[Insertion::YJ], None))?;
    let outer = ap4.mul(&wb).collapse()?;
    let route = match construction {
        Construction::I => Route::Direct,
        Construction::II => Route::T,
    };
    vsnat_trace_fs(c, route)?.mul_fp(&outer).expand(qmax24, ylow)
}
