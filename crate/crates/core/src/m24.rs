//! The M24 class data asset: loading, self-validation, and eigenvalue data.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::classical::cycle_product_fp;
use crate::coeff::{q, qi, Q};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::factor::FactorProduct;

pub const GROUP_ORDER: u64 = 244_823_040;

/// Classes whose twining functions are not given by the `phi_g` formula.
pub const EXCLUDED: [&str; 8] = ["3B", "4C", "6B", "12B", "21A", "21B", "23A", "23B"];

pub const CLASS_NAMES: [&str; 26] = [
    "1A", "2A", "2B", "3A", "3B", "4A", "4B", "4C", "5A", "6A", "6B", "7A", "7B", "8A", "10A", "11A", "12A",
    "12B", "14A", "14B", "15A", "15B", "21A", "21B", "23A", "23B",
];

const EMBEDDED: &str = include_str!("../data/m24_classes.json");

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCyc {
    Rational(String),
    Field { order: u32, coeffs: Vec<String> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    name: String,
    element_order: u32,
    cycle_shape: Vec<(u32, u32)>,
    centralizer_order: u64,
    characters: Vec<RawCyc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIrrep {
    label: String,
    degree: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    version: String,
    checksum: String,
    classes: Vec<RawClass>,
    irreps: Vec<RawIrrep>,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub name: String,
    pub element_order: u32,
    /// `(cycle length, multiplicity)`.
    pub cycle_shape: Vec<(u32, u32)>,
    pub centralizer_order: u64,
    pub characters: Vec<Cyclotomic>,
    pub excluded: bool,
}

impl ConjClass {
    /// Number of fixed points in the 24-point action.
    pub fn chi(&self) -> i64 {
        self.cycle_shape.iter().filter(|(l, _)| *l == 1).map(|(_, m)| *m as i64).sum()
    }

    /// Multiplicity of the eigenvalue 1: the number of cycles.
    pub fn fixed_space_dim(&self) -> u32 {
        self.cycle_shape.iter().map(|(_, m)| m).sum()
    }

    pub fn class_size(&self) -> u64 {
        GROUP_ORDER / self.centralizer_order
    }

    pub fn is_allowed(&self) -> bool {
        !self.excluded && self.fixed_space_dim() >= 4
    }

    pub fn require_allowed(&self) -> Result<()> {
        if self.excluded {
            return Err(Error::Excluded(self.name.clone()));
        }
        if self.fixed_space_dim() < 4 {
            return Err(Error::Invalid(format!(
                "class {} fixes only a {}-dimensional space",
                self.name,
                self.fixed_space_dim()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub label: String,
    pub degree: u64,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub version: String,
    pub classes: Vec<ConjClass>,
    pub irreps: Vec<Irrep>,
}

impl CharacterTable {
    pub fn class(&self, name: &str) -> Result<&ConjClass> {
        self.classes
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Invalid(format!("unknown class {name}")))
    }

    pub fn allowed(&self) -> impl Iterator<Item = &ConjClass> {
        self.classes.iter().filter(|c| c.is_allowed())
    }

    pub fn irrep_index(&self, label: &str) -> Result<usize> {
        self.irreps
            .iter()
            .position(|i| i.label == label)
            .ok_or_else(|| Error::data(format!("no irrep labelled {label}")))
    }
}

fn parse_q(s: &str) -> Result<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.trim().parse().map_err(|_| Error::data(format!("bad rational {s:?}")))?;
    let d: num_bigint::BigInt = d.trim().parse().map_err(|_| Error::data(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::data(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

fn parse_cyc(v: &RawCyc) -> Result<Cyclotomic> {
    match v {
        RawCyc::Rational(s) => Ok(Cyclotomic::from_rational(parse_q(s)?)),
        RawCyc::Field { order, coeffs } => {
            if *order == 0 {
                return Err(Error::data("cyclotomic order 0"));
            }
            let cs = coeffs.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
            Ok(Cyclotomic::from_power_coeffs(*order, &cs))
        }
    }
}

/// sha256 of the compact, key-sorted JSON of `{classes, irreps}`.
pub fn asset_checksum(json: &str) -> Result<String> {
    let v: serde_json::Value = serde_json::from_str(json).map_err(|e| Error::data(format!("schema: {e}")))?;
    let mut body = serde_json::Map::new();
    for key in ["classes", "irreps"] {
        body.insert(key.into(), v.get(key).cloned().ok_or_else(|| Error::data(format!("schema: missing {key}")))?);
    }
    let text = serde_json::to_string(&serde_json::Value::Object(body)).map_err(|e| Error::data(e.to_string()))?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

pub fn load_class_data(path: &Path) -> Result<CharacterTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
    parse_class_data(&text)
}

/// Parse and fully validate; every violated relation is listed in the error.
pub fn parse_class_data(json: &str) -> Result<CharacterTable> {
    let raw: RawTable = serde_json::from_str(json).map_err(|e| Error::data(format!("schema: {e}")))?;
    let mut problems = Vec::new();

    let names: Vec<&str> = raw.classes.iter().map(|c| c.name.as_str()).collect();
    for want in CLASS_NAMES {
        if !names.contains(&want) {
            problems.push(format!("schema: missing class {want}"));
        }
    }
    for n in &names {
        if !CLASS_NAMES.contains(n) {
            problems.push(format!("schema: unknown class {n}"));
        }
    }
    if raw.irreps.len() != 26 {
        problems.push(format!("schema: {} irreps, expected 26", raw.irreps.len()));
    }
    for c in &raw.classes {
        if c.characters.len() != raw.irreps.len() {
            problems.push(format!("schema: class {} has {} character values", c.name, c.characters.len()));
        }
    }
    if !problems.is_empty() {
        return Err(Error::data(problems.join("; ")));
    }

    let sum = asset_checksum(json)?;
    if sum != raw.checksum {
        problems.push(format!("checksum mismatch: asset says {}, content hashes to {sum}", raw.checksum));
    }

    let mut classes = Vec::with_capacity(raw.classes.len());
    for c in &raw.classes {
        let characters = c.characters.iter().map(parse_cyc).collect::<Result<Vec<_>>>()?;
        classes.push(ConjClass {
            excluded: EXCLUDED.contains(&c.name.as_str()),
            name: c.name.clone(),
            element_order: c.element_order,
            cycle_shape: c.cycle_shape.clone(),
            centralizer_order: c.centralizer_order,
            characters,
        });
    }
    let table = CharacterTable {
        version: raw.version,
        classes,
        irreps: raw.irreps.into_iter().map(|i| Irrep { label: i.label, degree: i.degree }).collect(),
    };
    problems.extend(validate(&table));
    if problems.is_empty() {
        Ok(table)
    } else {
        Err(Error::data(problems.join("; ")))
    }
}

/// Every derivable relation the table must satisfy; empty when valid.
pub fn validate(t: &CharacterTable) -> Vec<String> {
    let mut problems = Vec::new();
    let g = qi(GROUP_ORDER as i64);

    let mut total = 0u64;
    for c in &t.classes {
        let deg: u32 = c.cycle_shape.iter().map(|(l, m)| l * m).sum();
        if deg != 24 {
            problems.push(format!("class {}: cycle shape has degree {deg}", c.name));
        }
        let ord = c.cycle_shape.iter().fold(1u32, |a, (l, _)| a.lcm(l));
        if ord != c.element_order {
            problems.push(format!("class {}: element order {} but cycle lcm {ord}", c.name, c.element_order));
        }
        if c.centralizer_order == 0 || GROUP_ORDER % c.centralizer_order != 0 {
            problems.push(format!("class {}: centralizer order does not divide |M24|", c.name));
            continue;
        }
        total += c.class_size();
    }
    if total != GROUP_ORDER {
        problems.push(format!("class equation: sizes sum to {total}, not {GROUP_ORDER}"));
    }
    if !problems.is_empty() {
        return problems;
    }

    // degrees are the values at the identity
    let id = match t.classes.iter().find(|c| c.name == "1A") {
        Some(c) => c,
        None => return vec!["missing identity class".into()],
    };
    for (i, irr) in t.irreps.iter().enumerate() {
        if id.characters[i] != Cyclotomic::from_integer(irr.degree as i64) {
            problems.push(format!("irrep {}: degree {} differs from its value at 1A", irr.label, irr.degree));
        }
    }
    for d in [1, 23, 45, 231, 770] {
        if !t.irreps.iter().any(|i| i.degree == d) {
            problems.push(format!("no irrep of degree {d}"));
        }
    }

    // row orthogonality
    let n = t.irreps.len();
    for i in 0..n {
        for j in i..n {
            let mut s = Cyclotomic::from_integer(0);
            for c in &t.classes {
                let term = (&c.characters[i] * &c.characters[j].conj()).scale(&qi(c.class_size() as i64));
                s = &s + &term;
            }
            let want = if i == j { g.clone() } else { Q::zero() };
            if s != Cyclotomic::from_rational(want) {
                problems.push(format!(
                    "row orthogonality fails for irreps {} and {}",
                    t.irreps[i].label, t.irreps[j].label
                ));
            }
        }
    }
    // column orthogonality
    for (a, ca) in t.classes.iter().enumerate() {
        for cb in &t.classes[a..] {
            let mut s = Cyclotomic::from_integer(0);
            for i in 0..n {
                s = &s + &(&ca.characters[i] * &cb.characters[i].conj());
            }
            let want = if ca.name == cb.name { qi(ca.centralizer_order as i64) } else { Q::zero() };
            if s != Cyclotomic::from_rational(want) {
                problems.push(format!("column orthogonality fails for class {} against {}", ca.name, cb.name));
            }
        }
    }

    // permutation character = 1 + chi_23
    if let Some(i23) = t.irreps.iter().position(|i| i.degree == 23) {
        for c in &t.classes {
            let want = Cyclotomic::from_integer(c.chi() - 1);
            if c.characters[i23] != want {
                problems.push(format!("class {}: fixed points {} but chi_23 = {}", c.name, c.chi(), c.characters[i23]));
            }
        }
    }

    for c in &t.classes {
        if let Err(e) = frame_identity(c) {
            problems.push(e.to_string());
        }
    }
    problems
}

/// An eigenvalue `e^(2 pi i f)` as the fraction `f` in `[0, 1)`.
fn eigen_fracs(shape: &[(u32, u32)], negate: bool) -> Vec<Q> {
    let half = q(1, 2);
    let mut out = Vec::with_capacity(24);
    for &(l, m) in shape {
        for _ in 0..m {
            for k in 0..l {
                let mut f = q(k as i64, l as i64);
                if negate {
                    f += &half;
                }
                if f >= qi(1) {
                    f -= qi(1);
                }
                out.push(f);
            }
        }
    }
    out
}

/// Canonical pair representatives `f` in `[0, 1/2]`, unit pairs last.
pub fn canonical_pairs(shape: &[(u32, u32)], negate: bool) -> Result<Vec<Q>> {
    let mut count: BTreeMap<Q, u32> = BTreeMap::new();
    for f in eigen_fracs(shape, negate) {
        *count.entry(f).or_default() += 1;
    }
    let half = q(1, 2);
    let mut reps = Vec::new();
    let mut units = Vec::new();
    for (f, &m) in &count {
        if f.is_zero() || *f == half {
            if m % 2 != 0 {
                return Err(Error::data(format!("eigenvalue {f} has odd multiplicity {m}")));
            }
            let target = if f.is_zero() { &mut units } else { &mut reps };
            target.extend(std::iter::repeat_n(f.clone(), (m / 2) as usize));
        } else if *f < half {
            let partner = qi(1) - f;
            if count.get(&partner) != Some(&m) {
                return Err(Error::data(format!("eigenvalue {f} is not paired with its inverse")));
            }
            reps.extend(std::iter::repeat_n(f.clone(), m as usize));
        }
    }
    reps.extend(units);
    Ok(reps)
}

/// `e^(2 pi i f)` for rational `f`.
pub fn root_of_frac(f: &Q) -> Cyclotomic {
    let d: u32 = f.denom().try_into().expect("small denominator");
    let n: i64 = f.numer().try_into().expect("small numerator");
    Cyclotomic::root(d, n)
}

#[derive(Clone, Debug)]
pub struct EigenData {
    pub class: String,
    /// Twelve representatives `f_i` with `lambda_i = e^(2 pi i f_i)`; the unit pairs are last.
    pub fracs: Vec<Q>,
    pub lambdas: Vec<Cyclotomic>,
    pub nus: Vec<Cyclotomic>,
    pub nu: Cyclotomic,
    pub nu_prime: Cyclotomic,
    pub c_g: Q,
    pub d_g: Q,
    pub c_neg_g: Q,
}

fn c_constant(fracs: &[Q], upto: usize) -> Cyclotomic {
    let one = Cyclotomic::from_integer(1);
    let mut acc = Cyclotomic::from_integer(1);
    for f in &fracs[..upto] {
        let nu = root_of_frac(&(f / qi(2)));
        let lam_inv = root_of_frac(&(-f));
        acc = &(&acc * &nu) * &(&one - &lam_inv);
    }
    acc
}

pub fn eigen_data(c: &ConjClass) -> Result<EigenData> {
    c.require_allowed()?;
    let fracs = canonical_pairs(&c.cycle_shape, false)?;
    if fracs.len() != 12 || !fracs[10].is_zero() || !fracs[11].is_zero() {
        return Err(Error::Invalid(format!("class {}: fewer than 4 unit eigenvalues", c.name)));
    }
    let lambdas: Vec<Cyclotomic> = fracs.iter().map(root_of_frac).collect();
    let nus: Vec<Cyclotomic> = fracs.iter().map(|f| root_of_frac(&(f / qi(2)))).collect();
    let nu = nus.iter().fold(Cyclotomic::from_integer(1), |a, b| &a * b);
    let nu_prime = nus[..10].iter().fold(Cyclotomic::from_integer(1), |a, b| &a * b);
    let neg = canonical_pairs(&c.cycle_shape, true)?;
    let ctx = |what: &str, e: Error| Error::Rationality(format!("class {}: {what}: {e}", c.name));
    Ok(EigenData {
        class: c.name.clone(),
        c_g: c_constant(&fracs, 12).rationality_check().map_err(|e| ctx("C_g", e))?,
        d_g: c_constant(&fracs, 10).rationality_check().map_err(|e| ctx("D_g", e))?,
        c_neg_g: c_constant(&neg, 12).rationality_check().map_err(|e| ctx("C_-g", e))?,
        fracs,
        lambdas,
        nus,
        nu,
        nu_prime,
    })
}

/// `eta_g`, `eta_-g`, or the half ratios `eta_(+-g)(tau/2) / eta_(+-g)(tau)`.
pub fn frame_eta(c: &ConjClass, negate: bool, half: bool) -> FactorProduct {
    cycle_product_fp(&c.cycle_shape, negate, half)
}

/// `prod over 24 eigenvalues (1 - lambda x) = prod_l (1 - x^l)^(m_l)`, with the
/// eigenvalues taken from the canonical pairs.
pub fn frame_identity(c: &ConjClass) -> Result<()> {
    let reps = canonical_pairs(&c.cycle_shape, false)?;
    let one = Cyclotomic::from_integer(1);
    // polynomial in x with cyclotomic coefficients
    let mut lhs = vec![one.clone()];
    for f in &reps {
        for lam in [root_of_frac(f), root_of_frac(&(-f.clone()))] {
            let mut next = vec![Cyclotomic::from_integer(0); lhs.len() + 1];
            for (i, a) in lhs.iter().enumerate() {
                next[i] = &next[i] + a;
                next[i + 1] = &next[i + 1] - &(a * &lam);
            }
            lhs = next;
        }
    }
    let mut rhs = vec![0i64; 25];
    rhs[0] = 1;
    for &(l, m) in &c.cycle_shape {
        for _ in 0..m {
            let mut next = rhs.clone();
            for i in (l as usize)..25 {
                next[i] -= rhs[i - l as usize];
            }
            rhs = next;
        }
    }
    for (i, a) in lhs.iter().enumerate() {
        if *a != Cyclotomic::from_integer(rhs[i]) {
            return Err(Error::data(format!("class {}: Frame-shape identity fails at x^{i}", c.name)));
        }
    }
    Ok(())
}

/// The validated asset shipped with the crate.
pub fn default_table() -> &'static CharacterTable {
    static TABLE: OnceLock<CharacterTable> = OnceLock::new();
    TABLE.get_or_init(|| parse_class_data(EMBEDDED).expect("embedded class data is valid"))
}

pub fn embedded_json() -> &'static str {
    EMBEDDED
}

/// Eigen data for every allowed class, cached.
pub fn eigen_cache(t: &CharacterTable) -> Result<HashMap<String, EigenData>> {
    t.allowed().map(|c| Ok((c.name.clone(), eigen_data(c)?))).collect()
}

impl EigenData {
    pub fn is_unit(&self, i: usize) -> bool {
        self.fracs[i].is_zero()
    }

    pub fn one() -> Q {
        Q::one()
    }
}
