//! Symbolic infinite products and their exact expansion.
//!
//! A [`FactorProduct`] is `scalar * gamma^g0 * y^a0 * q^(b0/24) * prod (1 - c gamma^g y^a q^(b/24))^e`
//! where each factor either occurs once or as the family `n = 1, 2, ...` with
//! `b = slope * n + offset`. Expansion is in the domain `|q| < |y|^-1 < 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::coeff::{Coeff, Q};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::series::{QYSeries, UNBOUNDED};

/// Largest dense work grid, in cells.
const MAX_CELLS: i64 = 40_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Span {
    Single(i64),
    /// `b = slope * n + offset` for `n >= 1`.
    Family { slope: i64, offset: i64 },
}

impl Span {
    pub fn first_b(&self) -> i64 {
        match *self {
            Span::Single(b) => b,
            Span::Family { slope, offset } => slope + offset,
        }
    }

    fn scaled(&self, d: i64) -> Span {
        match *self {
            Span::Single(b) => Span::Single(b * d),
            Span::Family { slope, offset } => Span::Family { slope: slope * d, offset: offset * d },
        }
    }

    /// Exponents `b` of the terms with `b <= limit`.
    fn terms(&self, limit: i64) -> Vec<i64> {
        match *self {
            Span::Single(b) => {
                if b <= limit {
                    vec![b]
                } else {
                    vec![]
                }
            }
            Span::Family { slope, offset } => {
                let mut out = Vec::new();
                let mut n = 1;
                while slope * n + offset <= limit {
                    out.push(slope * n + offset);
                    n += 1;
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor<C: Coeff = Q> {
    pub c: C,
    /// Power of the formal symbol gamma multiplying `c`.
    pub gamma: i64,
    pub a: i64,
    pub span: Span,
    pub e: i64,
}

impl<C: Coeff> Factor<C> {
    pub fn new(c: C, a: i64, span: Span, e: i64) -> Self {
        Factor { c, gamma: 0, a, span, e }
    }

    fn same_base(&self, o: &Self) -> bool {
        self.gamma == o.gamma && self.a == o.a && self.span == o.span && self.c == o.c
    }
}

impl<C: Coeff> fmt::Display for Factor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 - ({})", self.c)?;
        if self.gamma != 0 {
            write!(f, " gamma^{}", self.gamma)?;
        }
        if self.a != 0 {
            write!(f, " y^{}", self.a)?;
        }
        match self.span {
            Span::Single(b) => write!(f, " q^({b}/24))^{}", self.e),
            Span::Family { slope, offset } => {
                write!(f, " q^(({slope}n{offset:+})/24))^{} for n >= 1", self.e)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorProduct<C: Coeff = Q> {
    pub scalar: C,
    pub gamma0: i64,
    pub a0: i64,
    pub b0: i64,
    pub factors: Vec<Factor<C>>,
}

fn minus_one_pow<C: Coeff>(k: i64) -> C {
    if k.rem_euclid(2) == 0 {
        C::one()
    } else {
        C::from_int(-1)
    }
}

/// `(1 - c)^e`, or `None` when `c = 1` makes it a zero (`e > 0`).
fn one_minus_pow<C: Coeff>(c: &C, e: i64, what: &dyn fmt::Display) -> Result<Option<C>> {
    let base = C::one().minus(c);
    if base.is_zero() {
        if e < 0 {
            return Err(Error::Pole(format!("{what} has a pole at q^0")));
        }
        return Ok(None);
    }
    if e >= 0 {
        return Ok(Some(base.pow(e as u32)));
    }
    let inv = base
        .inverse()
        .ok_or_else(|| Error::Domain(format!("cannot invert scalar {base} from {what}")))?;
    Ok(Some(inv.pow((-e) as u32)))
}

impl<C: Coeff> FactorProduct<C> {
    pub fn monomial(scalar: C, a0: i64, b0: i64) -> Self {
        FactorProduct { scalar, gamma0: 0, a0, b0, factors: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0, 0)
    }

    /// Append `(1 - c y^a q^(b/24))^e`.
    pub fn with(mut self, c: C, a: i64, span: Span, e: i64) -> Self {
        self.factors.push(Factor::new(c, a, span, e));
        self
    }

    /// Append `(1 - c gamma^g y^a q^(b/24))^e`.
    pub fn with_gamma(mut self, c: C, gamma: i64, a: i64, span: Span, e: i64) -> Self {
        self.factors.push(Factor { c, gamma, a, span, e });
        self
    }

    pub fn scale(mut self, c: &C) -> Self {
        self.scalar = self.scalar.times(c);
        self
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        FactorProduct {
            scalar: self.scalar.times(&o.scalar),
            gamma0: self.gamma0 + o.gamma0,
            a0: self.a0 + o.a0,
            b0: self.b0 + o.b0,
            factors,
        }
        .normalize()
    }

    pub fn inverse(&self) -> Result<Self> {
        let scalar = self
            .scalar
            .inverse()
            .ok_or_else(|| Error::Domain(format!("cannot invert scalar {}", self.scalar)))?;
        Ok(FactorProduct {
            scalar,
            gamma0: -self.gamma0,
            a0: -self.a0,
            b0: -self.b0,
            factors: self.factors.iter().map(|f| Factor { e: -f.e, ..f.clone() }).collect(),
        })
    }

    /// Merge identical factors and drop those with exponent zero.
    pub fn normalize(mut self) -> Self {
        let mut out: Vec<Factor<C>> = Vec::with_capacity(self.factors.len());
        for f in self.factors.drain(..) {
            match out.iter_mut().find(|g| g.same_base(&f)) {
                Some(g) => g.e += f.e,
                None => out.push(f),
            }
        }
        out.retain(|f| f.e != 0);
        self.factors = out;
        self
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FactorProduct<D> {
        FactorProduct {
            scalar: f(&self.scalar),
            gamma0: self.gamma0,
            a0: self.a0,
            b0: self.b0,
            factors: self
                .factors
                .iter()
                .map(|x| Factor { c: f(&x.c), gamma: x.gamma, a: x.a, span: x.span, e: x.e })
                .collect(),
        }
    }

    pub fn has_gamma(&self) -> bool {
        self.gamma0 != 0 || self.factors.iter().any(|f| f.gamma != 0)
    }

    /// Substitute `gamma = -1`, cancel matching factors, and reject surviving poles.
    pub fn gamma_limit(&self) -> Result<Self> {
        let mut out = self.clone();
        out.scalar = out.scalar.times(&minus_one_pow(out.gamma0));
        out.gamma0 = 0;
        for f in out.factors.iter_mut() {
            f.c = f.c.times(&minus_one_pow(f.gamma));
            f.gamma = 0;
        }
        let out = out.normalize();
        for f in &out.factors {
            if f.a == 0 && f.span.first_b() == 0 && (C::one().minus(&f.c)).is_zero() && f.e < 0 {
                return Err(Error::Pole(format!("uncancelled factor {f} at gamma = -1")));
            }
        }
        Ok(out)
    }

    /// Move the `q^0` terms of y-free factors into the scalar; families are reindexed.
    pub fn peel(&self) -> Result<Self> {
        let mut out = self.clone();
        let mut kept = Vec::with_capacity(out.factors.len());
        for f in out.factors.drain(..) {
            if f.a != 0 || f.gamma != 0 || f.span.first_b() != 0 {
                kept.push(f);
                continue;
            }
            match one_minus_pow(&f.c, f.e, &f)? {
                Some(s) => out.scalar = out.scalar.times(&s),
                None => return Ok(FactorProduct::monomial(C::zero(), 0, 0)),
            }
            if let Span::Family { slope, offset } = f.span {
                kept.push(Factor { span: Span::Family { slope, offset: offset + slope }, ..f });
            }
        }
        out.factors = kept;
        Ok(out.normalize())
    }

    fn check_domain(&self) -> Result<()> {
        if self.has_gamma() {
            return Err(Error::Domain(
                "product still depends on the formal symbol gamma; take gamma_limit first".into(),
            ));
        }
        for f in &self.factors {
            match f.span {
                Span::Single(b) if b < 0 => {
                    return Err(Error::Domain(format!("{f} has a negative q-exponent")))
                }
                Span::Family { slope, offset } if slope <= 0 || slope + offset < 0 => {
                    return Err(Error::Domain(format!("{f} is not a convergent family")))
                }
                _ => {}
            }
            let b1 = f.span.first_b();
            if f.e < 0 && b1 == 0 && f.a > 0 {
                return Err(Error::Domain(format!(
                    "{f} does not converge in 0 < -Im(z) < Im(tau)"
                )));
            }
            if f.e < 0 && 24 * f.a - b1 > 0 {
                return Err(Error::Domain(format!("{f} has unbounded positive y-growth")));
            }
        }
        Ok(())
    }

    /// `B` such that every term of the factor part has `24 r - n24 <= B`.
    pub fn ybound_rel(&self) -> i64 {
        let mut total = 0;
        for f in &self.factors {
            if f.e <= 0 {
                continue;
            }
            // only finitely many terms of a family have 24a > b
            for b in f.span.terms(24 * f.a - 1) {
                total += (24 * f.a - b) * f.e;
            }
        }
        total
    }

    /// The window an input series must cover for `apply` to reach the target.
    pub fn input_window(&self, qmax24: i64, ylow: i64, input_qmin24: i64) -> (i64, i64) {
        let qmax_t = qmax24 - self.b0;
        let ylow_t = ylow - self.a0;
        let b_rel = self.ybound_rel();
        let margin = (qmax_t - input_qmin24 + b_rel).div_euclid(24).max(0);
        (qmax_t, ylow_t - margin)
    }

    /// Exact expansion on `n24 <= qmax24`, `r >= ylow`.
    pub fn expand(&self, qmax24: i64, ylow: i64) -> Result<QYSeries<C>> {
        self.apply(&QYSeries::one(), qmax24, ylow)
    }

    /// `s` times this product, exact on `n24 <= qmax24`, `r >= ylow`.
    pub fn apply(&self, s: &QYSeries<C>, qmax24: i64, ylow: i64) -> Result<QYSeries<C>> {
        self.check_domain()?;
        for v in [qmax24, ylow, self.a0, self.b0] {
            if v.abs() > UNBOUNDED {
                return Err(Error::Capacity(format!("exponent {v} out of range")));
            }
        }
        let qmax_t = qmax24 - self.b0;
        let ylow_t = ylow - self.a0;
        let b_rel = self.ybound_rel();
        let out_qmin = s.qmin24().saturating_add(self.b0);
        let out_b = s.ybound24().saturating_add(b_rel + 24 * self.a0 - self.b0);
        if s.is_empty() || self.scalar.is_zero() || qmax_t < s.qmin24() {
            return Ok(QYSeries::from_entries(Vec::new(), qmax24, ylow, out_qmin, out_b));
        }
        let (need_q, need_y) = self.input_window(qmax24, ylow, s.qmin24());
        if s.qmax24() < need_q || s.ylow() > need_y {
            return Err(Error::window(format!(
                "input exact on (qmax24 {}, ylow {}) but (qmax24 {need_q}, ylow {need_y}) is needed",
                s.qmax24(),
                s.ylow()
            )));
        }

        let span_q = qmax_t - s.qmin24();
        if span_q >= MAX_CELLS {
            return Err(Error::Capacity(format!("{} q-rows exceed {MAX_CELLS} cells", span_q + 1)));
        }

        // fold scalar factors (1 - c)^e and collect the series-valued terms
        let mut scalar = self.scalar.clone();
        let mut terms: Vec<(C, i64, i64, i64)> = Vec::new();
        for f in &self.factors {
            for b in f.span.terms(span_q) {
                if b == 0 && f.a == 0 {
                    match one_minus_pow(&f.c, f.e, f)? {
                        Some(v) => scalar = scalar.times(&v),
                        None => {
                            return Ok(QYSeries::from_entries(Vec::new(), qmax24, ylow, out_qmin, out_b))
                        }
                    }
                } else {
                    terms.push((f.c.clone(), f.a, b, f.e));
                }
            }
        }

        let n_lo = s.qmin24();
        let n_hi = qmax_t;
        let r_lo = need_y;
        let r_hi = (n_hi + s.ybound24() + b_rel).div_euclid(24);
        if r_hi < r_lo {
            return Ok(QYSeries::from_entries(Vec::new(), qmax24, ylow, out_qmin, out_b));
        }
        let rows = n_hi - n_lo + 1;
        let width = r_hi - r_lo + 1;
        if rows.saturating_mul(width) > MAX_CELLS {
            return Err(Error::Capacity(format!(
                "expansion grid {rows} x {width} exceeds {MAX_CELLS} cells"
            )));
        }
        let shape = Shape { n_lo, n_hi, r_lo, r_hi };

        let input: Vec<((i64, i64), C)> = s
            .iter()
            .filter(|(&(n, r), _)| n <= n_hi && r >= r_lo)
            .map(|(k, c)| (*k, c.clone()))
            .collect();

        let cells = run_fast(&shape, &input, &terms).unwrap_or_else(|| run_generic(&shape, &input, &terms));

        let entries = cells
            .into_iter()
            .filter(|((_, r), _)| *r >= ylow_t)
            .map(|((n, r), c)| ((n + self.b0, r + self.a0), c.times(&scalar)));
        Ok(QYSeries::from_entries(entries, qmax24, ylow, out_qmin, out_b))
    }
}

impl<C: Coeff> fmt::Display for FactorProduct<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.scalar)?;
        if self.gamma0 != 0 {
            write!(f, " gamma^{}", self.gamma0)?;
        }
        write!(f, " y^{} q^({}/24)", self.a0, self.b0)?;
        for x in &self.factors {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

struct Shape {
    n_lo: i64,
    n_hi: i64,
    r_lo: i64,
    r_hi: i64,
}

impl Shape {
    fn width(&self) -> usize {
        (self.r_hi - self.r_lo + 1) as usize
    }

    fn idx(&self, n: i64, r: i64) -> usize {
        (n - self.n_lo) as usize * self.width() + (r - self.r_lo) as usize
    }
}

trait Cell: Clone {
    fn is_zero(&self) -> bool;
    /// `self += k * x`; `false` on overflow.
    fn add_mul(&mut self, k: &Self, x: &Self) -> bool;
    fn neg(&self) -> Self;
}

impl Cell for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_mul(&mut self, k: &Self, x: &Self) -> bool {
        match k.checked_mul(*x).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn neg(&self) -> Self {
        -*self
    }
}

struct Generic<C>(C);

impl<C: Coeff> Clone for Generic<C> {
    fn clone(&self) -> Self {
        Generic(self.0.clone())
    }
}

impl<C: Coeff> Cell for Generic<C> {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_mul(&mut self, k: &Self, x: &Self) -> bool {
        self.0.add_mul_assign(&k.0, &x.0);
        true
    }
    fn neg(&self) -> Self {
        Generic(self.0.negated())
    }
}

/// Multiply the grid by `(1 - c y^a q^b)^e` in place.
fn apply_term<T: Cell>(sh: &Shape, g: &mut [T], c: &T, a: i64, b: i64, e: i64) -> bool {
    let w = sh.width() as i64;
    let rows = sh.n_hi - sh.n_lo + 1;
    let shift = b * w + a;
    // destination columns whose source column r - a stays on the grid
    let r_from = sh.r_lo.max(sh.r_lo + a) - sh.r_lo;
    let r_to = sh.r_hi.min(sh.r_hi + a) - sh.r_lo;
    if r_from > r_to || b >= rows {
        return true;
    }
    let divide = e < 0;
    let k = if divide { c.clone() } else { c.neg() };
    for _ in 0..e.abs() {
        // multiplication reads old values, division reads updated ones
        let rows_up = divide;
        let cols_up = if b > 0 { true } else { (a < 0) != divide };
        for step in 0..(rows - b) {
            let row = if rows_up { b + step } else { rows - 1 - step };
            let base = row * w;
            for cs in 0..=(r_to - r_from) {
                let col = if cols_up { r_from + cs } else { r_to - cs };
                let dst = (base + col) as usize;
                let src = dst as i64 - shift;
                let x = &g[src as usize];
                if x.is_zero() {
                    continue;
                }
                let x = x.clone();
                if !g[dst].add_mul(&k, &x) {
                    return false;
                }
            }
        }
    }
    true
}

fn run_fast<C: Coeff>(
    sh: &Shape,
    input: &[((i64, i64), C)],
    terms: &[(C, i64, i64, i64)],
) -> Option<Vec<((i64, i64), C)>> {
    fn small_int<C: Coeff>(c: &C) -> Option<i128> {
        let q = c.as_rational()?;
        if !q.is_integer() {
            return None;
        }
        q.numer().to_i128()
    }
    let ks: Vec<i128> = terms.iter().map(|(c, ..)| small_int(c)).collect::<Option<_>>()?;
    let size = (sh.n_hi - sh.n_lo + 1) as usize * sh.width();
    let mut g = vec![0i128; size];
    for ((n, r), c) in input {
        g[sh.idx(*n, *r)] = small_int(c)?;
    }
    for ((_, a, b, e), k) in terms.iter().zip(&ks) {
        if !apply_term(sh, &mut g, k, *a, *b, *e) {
            return None;
        }
    }
    Some(collect(sh, g.into_iter(), |v| C::from_rational(Q::from_integer(BigInt::from(v))), |v| *v == 0))
}

fn run_generic<C: Coeff>(
    sh: &Shape,
    input: &[((i64, i64), C)],
    terms: &[(C, i64, i64, i64)],
) -> Vec<((i64, i64), C)> {
    let size = (sh.n_hi - sh.n_lo + 1) as usize * sh.width();
    let mut g: Vec<Generic<C>> = vec![Generic(C::zero()); size];
    for ((n, r), c) in input {
        g[sh.idx(*n, *r)] = Generic(c.clone());
    }
    for (c, a, b, e) in terms {
        apply_term(sh, &mut g, &Generic(c.clone()), *a, *b, *e);
    }
    collect(sh, g.into_iter(), |v| v.0, |v| v.0.is_zero())
}

fn collect<T, C>(
    sh: &Shape,
    cells: impl Iterator<Item = T>,
    conv: impl Fn(T) -> C,
    zero: impl Fn(&T) -> bool,
) -> Vec<((i64, i64), C)> {
    let w = sh.width() as i64;
    cells
        .enumerate()
        .filter(|(_, v)| !zero(v))
        .map(|(i, v)| {
            let i = i as i64;
            ((sh.n_lo + i / w, sh.r_lo + i % w), conv(v))
        })
        .collect()
}

/// A finite sum of factor products, expanded term by term.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSum<C: Coeff = Q> {
    pub terms: Vec<FactorProduct<C>>,
}

impl<C: Coeff> FactorSum<C> {
    pub fn new(terms: Vec<FactorProduct<C>>) -> Self {
        FactorSum { terms }
    }

    pub fn single(fp: FactorProduct<C>) -> Self {
        FactorSum { terms: vec![fp] }
    }

    pub fn add(mut self, o: &Self) -> Self {
        self.terms.extend(o.terms.iter().cloned());
        self
    }

    pub fn scale(self, c: &C) -> Self {
        FactorSum { terms: self.terms.into_iter().map(|t| t.scale(c)).collect() }
    }

    /// Multiply every term by `fp`.
    pub fn mul_fp(&self, fp: &FactorProduct<C>) -> Self {
        FactorSum { terms: self.terms.iter().map(|t| t.mul(fp)).collect() }
    }

    pub fn gamma_limit(&self) -> Result<Self> {
        Ok(FactorSum { terms: self.terms.iter().map(|t| t.gamma_limit()).collect::<Result<_>>()? })
    }

    pub fn expand(&self, qmax24: i64, ylow: i64) -> Result<QYSeries<C>> {
        let mut acc = QYSeries::zero(qmax24, ylow);
        for t in &self.terms {
            if t.scalar.is_zero() {
                continue;
            }
            acc = acc.add(&t.expand(qmax24, ylow)?);
        }
        Ok(acc)
    }
}

/// `c = zeta_d^k` with `gcd(k, d) = 1`, if `c` is a root of unity.
pub fn root_of_unity(c: &Cyclotomic) -> Option<(u32, u32)> {
    let l = c.order().lcm(&2);
    (0..l).find(|&j| *c == Cyclotomic::root(l, j as i64)).map(|j| {
        let g = j.gcd(&l);
        (l / g, j / g)
    })
}

impl FactorProduct<Cyclotomic> {
    /// Rewrite Galois-closed root-of-unity factor groups as rational factors
    /// `(1 - x^d)^m`; the scalar must then be rational.
    pub fn collapse(&self) -> Result<FactorProduct<Q>> {
        if self.has_gamma() {
            return Err(Error::Domain("take gamma_limit before collapsing".into()));
        }
        let scalar = self.scalar.rationality_check()?;
        let mut out = FactorProduct::<Q>::monomial(scalar, self.a0, self.b0);
        let mut groups: BTreeMap<(i64, Span), BTreeMap<(u32, u32), i64>> = BTreeMap::new();
        for f in &self.factors {
            match root_of_unity(&f.c) {
                Some(dk) => *groups.entry((f.a, f.span)).or_default().entry(dk).or_default() += f.e,
                None => {
                    let c = f.c.rationality_check().map_err(|_| {
                        Error::Rationality(format!("factor {f} is neither rational nor a root of unity"))
                    })?;
                    out.factors.push(Factor::new(c, f.a, f.span, f.e));
                }
            }
        }
        for ((a, span), mut mult) in groups {
            loop {
                mult.retain(|_, m| *m != 0);
                let Some(d) = mult.keys().map(|&(d, _)| d).max() else { break };
                if d <= 2 {
                    // rational roots stay as they are
                    for (&(d, _), &m) in &mult {
                        let c = if d == 1 { 1 } else { -1 };
                        out.factors.push(Factor::new(Q::from_int(c), a, span, m));
                    }
                    break;
                }
                let prims: Vec<u32> = (0..d).filter(|k| k.gcd(&d) == 1).collect();
                let m = *mult.get(&(d, prims[0])).unwrap_or(&0);
                if m == 0 || prims.iter().any(|k| mult.get(&(d, *k)).copied().unwrap_or(0) != m) {
                    return Err(Error::Rationality(format!(
                        "roots of unity of order {d} in the group (a = {a}, {span:?}) are not Galois-closed"
                    )));
                }
                for j in 0..d {
                    let g = j.gcd(&d);
                    *mult.entry((d / g, j / g)).or_default() -= m;
                }
                out.factors.push(Factor::new(<Q as Coeff>::one(), a * d as i64, span.scaled(d as i64), m));
            }
        }
        Ok(out.normalize())
    }
}
