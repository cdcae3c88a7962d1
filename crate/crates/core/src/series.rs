//! Truncated bivariate series in `q^(1/24)` and `y` with exactness windows.
//!
//! A [`QYSeries`] stores coefficients `c(n24, r)` of `q^(n24/24) y^r`. It is exact
//! for `n24 <= qmax24` and `r >= ylow`. Two structural facts about the true
//! (untruncated) function are carried along so products can certify their
//! own windows:
//!
//! * `qmin24`: every nonzero coefficient has `n24 >= qmin24`;
//! * `ybound24`: every nonzero coefficient has `24 r - n24 <= ybound24`.
//!
//! Negative `y` powers may form infinite tails at fixed `q` order (the domain is
//! `|q| < |y|^{-1} < 1`); positive ones are bounded by the second fact.

use std::collections::BTreeMap;

use crate::coeff::{Coeff, Q};
use crate::error::{Error, Result};

/// Stand-in for an unbounded window edge.
pub const UNBOUNDED: i64 = 1 << 40;

fn clamp_q(v: i64) -> i64 {
    v.min(UNBOUNDED)
}

fn clamp_y(v: i64) -> i64 {
    v.max(-UNBOUNDED)
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QYSeries<C: Coeff = Q> {
    coeffs: BTreeMap<(i64, i64), C>,
    qmax24: i64,
    ylow: i64,
    qmin24: i64,
    ybound24: i64,
}

impl<C: Coeff> QYSeries<C> {
    /// Build from raw entries; entries outside the window and zeros are dropped.
    ///
    /// Panics if an entry violates the structural bounds: that is a bug in
    /// the caller, not a property of the data.
    pub fn from_entries(
        entries: impl IntoIterator<Item = ((i64, i64), C)>,
        qmax24: i64,
        ylow: i64,
        qmin24: i64,
        ybound24: i64,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for ((n, r), c) in entries {
            if n > qmax24 || r < ylow || c.is_zero() {
                continue;
            }
            assert!(n >= qmin24, "entry at n24 = {n} below qmin24 = {qmin24}");
            assert!(
                24 * r - n <= ybound24,
                "entry ({n}, {r}) violates ybound24 = {ybound24}"
            );
            coeffs
                .entry((n, r))
                .and_modify(|x: &mut C| x.add_assign_ref(&c))
                .or_insert(c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        QYSeries { coeffs, qmax24: clamp_q(qmax24), ylow: clamp_y(ylow), qmin24, ybound24 }
    }

    /// `c q^(n24/24) y^r`, exact everywhere.
    pub fn monomial(c: C, n24: i64, r: i64) -> Self {
        Self::from_entries([((n24, r), c)], UNBOUNDED, -UNBOUNDED, n24, 24 * r - n24)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The zero series, exact on the given window.
    pub fn zero(qmax24: i64, ylow: i64) -> Self {
        QYSeries { coeffs: BTreeMap::new(), qmax24, ylow, qmin24: UNBOUNDED, ybound24: -UNBOUNDED }
    }

    pub fn qmax24(&self) -> i64 {
        self.qmax24
    }

    pub fn ylow(&self) -> i64 {
        self.ylow
    }

    pub fn qmin24(&self) -> i64 {
        self.qmin24
    }

    /// Linear y-growth bound: `24 r - n24 <= ybound24` on the support.
    pub fn ybound24(&self) -> i64 {
        self.ybound24
    }

    /// The bound in the form `r <= ceil(n24 / 24) + B`.
    pub fn ybound(&self) -> i64 {
        (self.ybound24 + 23).div_euclid(24)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero in-window entries, ordered by `(n24, r)`.
    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.coeffs.iter()
    }

    pub fn in_window(&self, n24: i64, r: i64) -> bool {
        n24 <= self.qmax24 && r >= self.ylow
    }

    /// The exact coefficient; out-of-window queries are errors, never silent zeros.
    pub fn coeff(&self, n24: i64, r: i64) -> Result<C> {
        if !self.in_window(n24, r) {
            return Err(Error::window(format!(
                "coefficient ({n24}, {r}) requested outside qmax24 = {}, ylow = {}",
                self.qmax24, self.ylow
            )));
        }
        Ok(self.coeffs.get(&(n24, r)).cloned().unwrap_or_else(C::zero))
    }

    /// Entries `(r, c)` at one q-order.
    pub fn q_slice(&self, n24: i64) -> Vec<(i64, C)> {
        self.coeffs
            .range((n24, i64::MIN)..=(n24, i64::MAX))
            .map(|(&(_, r), c)| (r, c.clone()))
            .collect()
    }

    /// Restrict to a smaller window.
    pub fn truncate(&self, qmax24: i64, ylow: i64) -> Result<Self> {
        if qmax24 > self.qmax24 || ylow < self.ylow {
            return Err(Error::window(format!(
                "cannot widen window (qmax24 {}, ylow {}) to (qmax24 {qmax24}, ylow {ylow})",
                self.qmax24, self.ylow
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&(n, r), _)| n <= qmax24 && r >= ylow)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        Ok(QYSeries { coeffs, qmax24, ylow, qmin24: self.qmin24, ybound24: self.ybound24 })
    }

    fn combine(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let qmax24 = self.qmax24.min(other.qmax24);
        let ylow = self.ylow.max(other.ylow);
        let mut coeffs: BTreeMap<(i64, i64), C> = BTreeMap::new();
        let zero = C::zero();
        for (k, c) in self.coeffs.iter() {
            coeffs.insert(*k, f(c, &zero));
        }
        for (k, c) in other.coeffs.iter() {
            match coeffs.get_mut(k) {
                Some(x) => {
                    let a = self.coeffs.get(k).unwrap();
                    *x = f(a, c);
                }
                None => {
                    coeffs.insert(*k, f(&zero, c));
                }
            }
        }
        coeffs.retain(|&(n, r), c| n <= qmax24 && r >= ylow && !c.is_zero());
        QYSeries {
            coeffs,
            qmax24,
            ylow,
            qmin24: self.qmin24.min(other.qmin24),
            ybound24: self.ybound24.max(other.ybound24),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.minus(b))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.clone();
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(k, x)| (*k, x.times(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        out
    }

    pub fn negate(&self) -> Self {
        self.scale(&C::from_int(-1))
    }

    /// Largest y-exponent that a term of q-order at most `nlim` may carry:
    /// from stored entries inside the window, from the structural bound beyond it.
    fn rmax_upto(&self, nlim: i64) -> Option<i64> {
        let mut best: Option<i64> = None;
        for (&(n, r), _) in self.coeffs.range(..=(nlim.min(self.qmax24), i64::MAX)) {
            let _ = n;
            best = Some(best.map_or(r, |b| b.max(r)));
        }
        if nlim > self.qmax24 && self.ybound24 > -UNBOUNDED {
            let s = floor_div(nlim + self.ybound24, 24);
            best = Some(best.map_or(s, |b| b.max(s)));
        }
        best
    }

    /// The exact window of a product, from both operands' windows and bounds.
    pub fn product_window(&self, other: &Self) -> (i64, i64) {
        let qmax24 = clamp_q((self.qmax24 + other.qmin24).min(other.qmax24 + self.qmin24));
        let mut ylow = -UNBOUNDED;
        // a dropped term r2 < ylow2 of `other` meets terms of `self` of q-order <= qmax - qmin2
        if other.ylow > -UNBOUNDED {
            if let Some(r1) = self.rmax_upto(qmax24 - other.qmin24) {
                ylow = ylow.max(other.ylow + r1);
            }
        }
        if self.ylow > -UNBOUNDED {
            if let Some(r2) = other.rmax_upto(qmax24 - self.qmin24) {
                ylow = ylow.max(self.ylow + r2);
            }
        }
        (qmax24, clamp_y(ylow))
    }

    /// Exact product on the window it can certify.
    pub fn mul(&self, other: &Self) -> Self {
        let (qmax24, ylow) = self.product_window(other);
        let mut coeffs: BTreeMap<(i64, i64), C> = BTreeMap::new();
        for (&(n1, r1), c1) in self.coeffs.iter() {
            if n1 + other.qmin24 > qmax24 {
                break;
            }
            for (&(n2, r2), c2) in other.coeffs.iter() {
                let n = n1 + n2;
                if n > qmax24 {
                    break;
                }
                let r = r1 + r2;
                if r < ylow {
                    continue;
                }
                coeffs
                    .entry((n, r))
                    .and_modify(|x| x.add_mul_assign(c1, c2))
                    .or_insert_with(|| c1.times(c2));
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QYSeries {
            coeffs,
            qmax24,
            ylow,
            qmin24: self.qmin24 + other.qmin24,
            ybound24: self.ybound24 + other.ybound24,
        }
    }

    /// Sum of coefficients over `r` at each q-order (evaluation at `y = 1`).
    ///
    /// The y-support at each order must be provably finite: it must lie in
    /// `[-rtop, rtop]`, where `rtop` is the top exponent present, and
    /// `-rtop` must be inside the window. This holds for the even Jacobi
    /// forms it is applied to.
    pub fn specialize_y_one(&self) -> Result<QSeries<C>> {
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        let mut n_prev = None;
        let mut rows: Vec<(i64, Vec<(i64, C)>)> = Vec::new();
        for (&(n, r), c) in self.coeffs.iter() {
            if n_prev != Some(n) {
                rows.push((n, Vec::new()));
                n_prev = Some(n);
            }
            rows.last_mut().unwrap().1.push((r, c.clone()));
        }
        for (n, row) in rows {
            let rtop = row.iter().map(|(r, _)| *r).max().unwrap();
            let rbot = row.iter().map(|(r, _)| *r).min().unwrap();
            if rbot < -rtop.abs() || -rtop.abs() < self.ylow {
                return Err(Error::window(format!(
                    "y-tail at n24 = {n} is not provably zero (support [{rbot}, {rtop}], ylow {})",
                    self.ylow
                )));
            }
            let mut acc = C::zero();
            for (_, c) in &row {
                acc.add_assign_ref(c);
            }
            if !acc.is_zero() {
                out.insert(n, acc);
            }
        }
        Ok(QSeries { coeffs: out, qmax24: self.qmax24, qmin24: self.qmin24 })
    }

    /// The `r = 0` slice, provided every other in-window coefficient vanishes.
    pub fn assert_y_free(&self) -> Result<QSeries<C>> {
        if let Some((&(n24, r), _)) = self.coeffs.iter().find(|(&(_, r), _)| r != 0) {
            return Err(Error::NotYFree { n24, r });
        }
        let coeffs = self.coeffs.iter().map(|(&(n, _), c)| (n, c.clone())).collect();
        Ok(QSeries { coeffs, qmax24: self.qmax24, qmin24: self.qmin24 })
    }

    /// Compare with `other` on a window both must cover; `None` means equal.
    pub fn first_difference(
        &self,
        other: &Self,
        qmax24: i64,
        ylow: i64,
        yhigh: i64,
    ) -> Result<Option<((i64, i64), C, C)>> {
        for s in [self, other] {
            if s.qmax24 < qmax24 || s.ylow > ylow {
                return Err(Error::window(format!(
                    "comparison window (qmax24 {qmax24}, ylow {ylow}) exceeds operand window (qmax24 {}, ylow {})",
                    s.qmax24, s.ylow
                )));
            }
        }
        let keys: std::collections::BTreeSet<(i64, i64)> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|&&(n, r)| n <= qmax24 && r >= ylow && r <= yhigh)
            .copied()
            .collect();
        for (n, r) in keys {
            let a = self.coeff(n, r)?;
            let b = other.coeff(n, r)?;
            if a != b {
                return Ok(Some(((n, r), a, b)));
            }
        }
        Ok(None)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> QYSeries<D> {
        QYSeries::from_entries(
            self.coeffs.iter().map(|(k, c)| (*k, f(c))),
            self.qmax24,
            self.ylow,
            self.qmin24,
            self.ybound24,
        )
    }

    /// Convert to rational coefficients, failing on the first irrational one.
    pub fn to_rational(&self) -> Result<QYSeries<Q>> {
        let mut entries = Vec::with_capacity(self.coeffs.len());
        for (&(n, r), c) in self.coeffs.iter() {
            let v = c.as_rational().ok_or_else(|| {
                Error::Rationality(format!("coefficient ({n}, {r}) = {c} is not rational"))
            })?;
            entries.push(((n, r), v));
        }
        Ok(QYSeries::from_entries(entries, self.qmax24, self.ylow, self.qmin24, self.ybound24))
    }
}

/// A series in `q^(1/24)` alone.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C: Coeff = Q> {
    coeffs: BTreeMap<i64, C>,
    qmax24: i64,
    qmin24: i64,
}

impl<C: Coeff> QSeries<C> {
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, C)>, qmax24: i64, qmin24: i64) -> Self {
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (n, c) in entries {
            if n > qmax24 || c.is_zero() {
                continue;
            }
            assert!(n >= qmin24, "entry at n24 = {n} below qmin24 = {qmin24}");
            coeffs.entry(n).and_modify(|x| x.add_assign_ref(&c)).or_insert(c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries { coeffs, qmax24: clamp_q(qmax24), qmin24 }
    }

    pub fn qmax24(&self) -> i64 {
        self.qmax24
    }

    pub fn qmin24(&self) -> i64 {
        self.qmin24
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, n24: i64) -> Result<C> {
        if n24 > self.qmax24 {
            return Err(Error::window(format!(
                "coefficient at n24 = {n24} requested beyond qmax24 = {}",
                self.qmax24
            )));
        }
        Ok(self.coeffs.get(&n24).cloned().unwrap_or_else(C::zero))
    }

    /// Coefficients at `qmin24, qmin24 + step, ...` up to `qmax24`.
    pub fn coefficients(&self, start24: i64, step24: i64) -> Vec<C> {
        let mut out = Vec::new();
        let mut n = start24;
        while n <= self.qmax24 {
            out.push(self.coeffs.get(&n).cloned().unwrap_or_else(C::zero));
            n += step24;
        }
        out
    }

    pub fn truncate(&self, qmax24: i64) -> Result<Self> {
        if qmax24 > self.qmax24 {
            return Err(Error::window(format!("cannot extend qmax24 {} to {qmax24}", self.qmax24)));
        }
        Ok(QSeries::from_entries(self.coeffs.clone(), qmax24, self.qmin24))
    }

    /// View as a y-free bivariate series.
    pub fn to_qy(&self) -> QYSeries<C> {
        QYSeries::from_entries(
            self.coeffs.iter().map(|(&n, c)| ((n, 0), c.clone())),
            self.qmax24,
            -UNBOUNDED,
            self.qmin24,
            -self.qmin24,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.to_qy().add(&other.to_qy()).assert_y_free().expect("y-free by construction")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.to_qy().sub(&other.to_qy()).assert_y_free().expect("y-free by construction")
    }

    pub fn scale(&self, c: &C) -> Self {
        QSeries::from_entries(self.coeffs.iter().map(|(&n, x)| (n, x.times(c))), self.qmax24, self.qmin24)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.to_qy().mul(&other.to_qy()).assert_y_free().expect("y-free by construction")
    }

    /// `true` iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool
    where
        C: Into<Q>,
    {
        self.coeffs.values().all(|c| c.clone().into().is_integer())
    }
}

impl QSeries<Q> {
    pub fn all_integers(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }
}

impl QYSeries<Q> {
    pub fn all_integers(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }
}
