// Independent oracles: naive truncated polynomial products, no shared code
// with the library's expansion kernel.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mform::{FactorProduct, QYSeries, Span, Q};
use num_traits::{One, Zero};

pub type Poly = BTreeMap<(i64, i64), Q>;

pub fn qq(n: i64, d: i64) -> Q {
    mform::q(n, d)
}

pub fn one() -> Poly {
    let mut p = Poly::new();
    p.insert((0, 0), Q::one());
    p
}

pub fn mono(c: Q, n24: i64, r: i64) -> Poly {
    let mut p = Poly::new();
    p.insert((n24, r), c);
    p
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_insert_with(Q::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn scale(a: &Poly, c: &Q) -> Poly {
    a.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

/// Product keeping `n24 <= qmax` and `r >= ydeep`.
pub fn mul(a: &Poly, b: &Poly, qmax: i64, ydeep: i64) -> Poly {
    let mut out = Poly::new();
    for ((n1, r1), c1) in a {
        for ((n2, r2), c2) in b {
            let (n, r) = (n1 + n2, r1 + r2);
            if n <= qmax && r >= ydeep {
                *out.entry((n, r)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `(1 - c y^a q^(b/24))^e` by repeated multiplication / geometric series.
pub fn factor(c: &Q, a: i64, b: i64, e: i64, qmax: i64, ydeep: i64) -> Poly {
    if a == 0 && b == 0 {
        let base = Q::one() - c;
        let v = if e >= 0 { pow(&base, e) } else { pow(&base.recip(), -e) };
        return mono(v, 0, 0);
    }
    let base = if e > 0 {
        add(&one(), &mono(-c.clone(), b, a))
    } else {
        let mut g = Poly::new();
        let mut k = 0;
        while b * k <= qmax && a * k >= ydeep {
            g.insert((b * k, a * k), pow(c, k));
            k += 1;
            if k > 2000 {
                break;
            }
        }
        g
    };
    let mut out = one();
    for _ in 0..e.abs() {
        out = mul(&out, &base, qmax, ydeep);
    }
    out
}

pub fn pow(c: &Q, k: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..k {
        acc *= c;
    }
    acc
}

/// Brute-force expansion of a rational factor product.
pub fn product(fp: &FactorProduct<Q>, qmax: i64, ydeep: i64) -> Poly {
    let qrel = qmax - fp.b0;
    let mut out = one();
    for f in &fp.factors {
        let bs: Vec<i64> = match f.span {
            Span::Single(b) => vec![b],
            Span::Family { slope, offset } => (1..).map(|n| slope * n + offset).take_while(|&b| b <= qrel).collect(),
        };
        for b in bs {
            if b > qrel {
                continue;
            }
            out = mul(&out, &factor(&f.c, f.a, b, f.e, qrel, ydeep - fp.a0), qrel, ydeep - fp.a0);
        }
    }
    out.into_iter()
        .map(|((n, r), v)| ((n + fp.b0, r + fp.a0), v * &fp.scalar))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Every cell of the window `n24 <= qmax`, `ylow <= r <= yhigh` agrees.
pub fn agree(s: &QYSeries<Q>, p: &Poly, qmax: i64, ylow: i64, yhigh: i64) -> Result<(), String> {
    let mut keys: Vec<(i64, i64)> = p.keys().copied().collect();
    keys.extend(s.iter().map(|(k, _)| *k));
    keys.sort();
    keys.dedup();
    for (n, r) in keys {
        if n > qmax || r < ylow || r > yhigh {
            continue;
        }
        let got = s.coeff(n, r).map_err(|e| e.to_string())?;
        let want = p.get(&(n, r)).cloned().unwrap_or_else(Q::zero);
        if got != want {
            return Err(format!("({n}, {r}): got {got}, want {want}"));
        }
    }
    Ok(())
}

pub fn to_poly(s: &QYSeries<Q>) -> Poly {
    s.iter().map(|(k, v)| (*k, v.clone())).collect()
}

pub fn int(v: i64) -> Q {
    <Q as mform::Coeff>::from_int(v)
}
