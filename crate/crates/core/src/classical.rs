//! Eta powers, theta quotients, the Appell-Lerch sum and `F_2`.
//!
//! Theta functions appear only squared or inside the Appell sum, so all
//! exponents stay integral and all coefficients rational.

use crate::coeff::{q, qi, Coeff};
use crate::error::{Error, Result};
use crate::factor::{FactorProduct, FactorSum, Span};
use crate::series::{QSeries, QYSeries};

/// The family `b = slope * n + offset`, `n >= 1`.
pub fn fam(slope: i64, offset: i64) -> Span {
    Span::Family { slope, offset }
}

/// `q^(k/24) prod (1 - q^n)^k`.
pub fn eta_fp(k: i64) -> FactorProduct {
    FactorProduct::monomial(qi(1), 0, k).with(qi(1), 0, fam(24, 0), k)
}

/// `theta_1^2 = -q^(1/4) y prod (1 - y^-1 q^(n-1))^2 (1 - y q^n)^2 (1 - q^n)^2`.
pub fn theta1_sq_fp() -> FactorProduct {
    FactorProduct::monomial(qi(-1), 1, 6)
        .with(qi(1), -1, fam(24, -24), 2)
        .with(qi(1), 1, fam(24, 0), 2)
        .with(qi(1), 0, fam(24, 0), 2)
}

/// `theta_j(tau, z)^2 / theta_j(tau, 0)^2` for `j = 2, 3, 4`.
pub fn theta_quot_fp(j: u8) -> Result<FactorProduct> {
    let fp = match j {
        2 => FactorProduct::monomial(q(1, 4), 1, 0)
            .with(qi(-1), -1, fam(24, -24), 2)
            .with(qi(-1), 1, fam(24, 0), 2)
            .with(qi(-1), 0, fam(24, 0), -4),
        3 | 4 => {
            let c = if j == 3 { qi(-1) } else { qi(1) };
            FactorProduct::monomial(qi(1), 0, 0)
                .with(c.clone(), -1, fam(24, -12), 2)
                .with(c.clone(), 1, fam(24, -12), 2)
                .with(c, 0, fam(24, -12), -4)
        }
        _ => return Err(Error::Invalid(format!("no theta quotient for j = {j}"))),
    };
    Ok(fp)
}

/// `prod_l prod_n (1 - (s x)^l)^(m_l)` over a cycle shape, with `x = q^n`
/// (`half = false`, prefactor `q`) or `x = q^(n - 1/2)` (`half = true`,
/// prefactor `q^(-1/2)`); `s = -1` gives the product for `-g`.
pub fn cycle_product_fp(shape: &[(u32, u32)], negate: bool, half: bool) -> FactorProduct {
    let mut fp = FactorProduct::monomial(qi(1), 0, if half { -12 } else { 24 });
    for &(l, m) in shape {
        let l = l as i64;
        let c = if negate && l % 2 == 1 { qi(-1) } else { qi(1) };
        let span = if half { fam(24 * l, -12 * l) } else { fam(24 * l, 0) };
        fp = fp.with(c, 0, span, m as i64);
    }
    fp.normalize()
}

/// The first-bracket terms: theta_4 quotient with the `g` half ratio (`j = 4`)
/// or theta_3 quotient with the `-g` half ratio (`j = 3`).
pub fn theta_quot_half_fp(j: u8, shape: &[(u32, u32)]) -> Result<FactorProduct> {
    match j {
        4 => Ok(theta_quot_fp(4)?.mul(&cycle_product_fp(shape, false, true))),
        3 => Ok(theta_quot_fp(3)?.mul(&cycle_product_fp(shape, true, true))),
        _ => Err(Error::Invalid(format!("no half-lattice theta quotient for j = {j}"))),
    }
}

/// `eta^3 mu` as a sum of products: `P * sum_n (-1)^n y^n q^(n(n+1)/2) / (1 - y q^n)`
/// with `P = prod (1 - q^n)^2 (1 - y^-1 q^(n-1))^-1 (1 - y q^n)^-1`. Terms whose
/// q-prefactor exceeds `cutoff24` are omitted.
pub fn eta3mu_fs(cutoff24: i64) -> FactorSum {
    let p = FactorProduct::monomial(qi(1), 0, 0)
        .with(qi(1), 0, fam(24, 0), 2)
        .with(qi(1), -1, fam(24, -24), -1)
        .with(qi(1), 1, fam(24, 0), -1);
    // n = 0: 1/(1 - y) = -y^-1 / (1 - y^-1) in the domain |y| > 1
    let mut terms = vec![FactorProduct::monomial(qi(-1), -1, 0).with(qi(1), -1, Span::Single(0), -1)];
    let mut n = 1i64;
    while 12 * n * (n + 1) <= cutoff24 {
        let b = 12 * n * (n + 1);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        // positive n
        terms.push(FactorProduct::monomial(qi(sign), n, b).with(qi(1), 1, Span::Single(24 * n), -1));
        // n -> -(n+1) rewritten with 1/(1 - y q^-m) = -y^-1 q^m / (1 - y^-1 q^m)
        terms.push(FactorProduct::monomial(qi(-sign), -n - 1, b).with(qi(1), -1, Span::Single(24 * n), -1));
        n += 1;
    }
    FactorSum::new(terms).mul_fp(&p)
}

/// `F_2 = sum_{r > s > 0, r - s odd} s q^(rs/2)`, by enumeration.
pub fn f2(qmax24: i64) -> QSeries {
    let nmax = qmax24.div_euclid(24);
    let mut entries = Vec::new();
    let mut r = 2;
    // the smallest term for a given r is r/2 (s = 1)
    while r <= 2 * nmax + 1 {
        for s in 1..r {
            if (r - s) % 2 == 1 && r * s / 2 <= nmax {
                entries.push((24 * (r * s / 2), qi(s)));
            }
        }
        r += 1;
    }
    QSeries::from_entries(entries, qmax24, 24)
}

impl<C: Coeff> FactorProduct<C> {
    pub fn is_y_free(&self) -> bool {
        self.a0 == 0 && self.factors.iter().all(|f| f.a == 0)
    }

    /// Expansion of a y-free product, exact in every y-degree.
    pub fn expand_q(&self, qmax24: i64) -> Result<QSeries<C>> {
        if !self.is_y_free() {
            return Err(Error::Invalid(format!("{self} depends on y")));
        }
        self.expand(qmax24, 0)?.assert_y_free()
    }
}

pub fn eta_pow(k: i64, qmax24: i64) -> Result<QYSeries> {
    Ok(eta_fp(k).expand_q(qmax24)?.to_qy())
}

pub fn theta1_sq(qmax24: i64, ylow: i64) -> Result<QYSeries> {
    theta1_sq_fp().expand(qmax24, ylow)
}

pub fn theta_quot(j: u8, qmax24: i64, ylow: i64) -> Result<QYSeries> {
    theta_quot_fp(j)?.expand(qmax24, ylow)
}

pub fn theta_quot_half(j: u8, shape: &[(u32, u32)], qmax24: i64, ylow: i64) -> Result<QYSeries> {
    theta_quot_half_fp(j, shape)?.expand(qmax24, ylow)
}

/// `eta^3 mu`.
pub fn eta3mu(qmax24: i64, ylow: i64) -> Result<QYSeries> {
    eta3mu_fs(qmax24).expand(qmax24, ylow)
}

/// `mu = (eta^3 mu) eta^-3`.
pub fn appell_mu(qmax24: i64, ylow: i64) -> Result<QYSeries> {
    eta3mu_fs(qmax24 + 3).mul_fp(&eta_fp(-3)).expand(qmax24, ylow)
}

/// `eta^k / theta_1^2`.
pub fn eta_over_theta1_sq_fp(k: i64) -> FactorProduct {
    eta_fp(k).mul(&theta1_sq_fp().inverse().expect("rational scalar"))
}

/// `theta_1^2 / eta^k`.
pub fn theta1_sq_over_eta_fp(k: i64) -> FactorProduct {
    theta1_sq_fp().mul(&eta_fp(-k))
}
