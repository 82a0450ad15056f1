//! Closed-form invariants of Ein components — dimension, t, delta, m, tau and
//! the auxiliary fibration dimensions — plus bounded enumeration of all
//! components of M(e, n) and the rationality classifier.
//!
//! Every quantity is pure integer arithmetic in the parameters (e, a, b, c).
//! All binomials C(x, 3) evaluate to 0 for x < 3; for admissible parameters
//! the arguments appearing in the dimension formulas are always >= 3.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::monad::EinParams;

/// C(x, 3), zero below x = 3.
fn b3(x: i64) -> i64 {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

/// Rationality status of a component. `StablyRationalAtLeast` is a lower
/// bound: stable rationality is proved, rationality is not claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationality {
    Rational,
    StablyRationalAtLeast,
}

impl Rationality {
    /// Short label used in tables.
    pub fn label(self) -> &'static str {
        match self {
            Rationality::Rational => "rational",
            Rationality::StablyRationalAtLeast => "stably rational",
        }
    }
}

/// Correction term t(e, a, b) in the component dimension formula.
pub fn t_value(e: i64, a: i64, b: i64) -> i64 {
    if e == 0 {
        if a == 0 && b == 0 {
            4
        } else if (a == 0 && b > 0) || (a == b && a > 0) {
            1
        } else {
            0
        }
    } else {
        i64::from(a == b)
    }
}

/// delta(e, a, b, c) = C(2a+b-c-e+3, 3) when c <= 2a+b-e, else 0.
pub fn delta_value(e: i64, a: i64, b: i64, c: i64) -> i64 {
    if c <= 2 * a + b - e {
        b3(2 * a + b - c - e + 3)
    } else {
        0
    }
}

/// Fibre dimension m(e, a, b, c) of the curve-choice fibration:
/// 0 unless e = a = 0; then 1 for b > 0 and 2 for b = 0.
pub fn m_value(e: i64, a: i64, _b: i64, _c: i64) -> i64 {
    if (e, a) != (0, 0) {
        0
    } else if _b > 0 {
        1
    } else {
        2
    }
}

/// tau = delta + t - m; the generic fibre dimension of the surface-choice
/// fibration, always nonnegative.
pub fn tau_value(e: i64, a: i64, b: i64, c: i64) -> i64 {
    delta_value(e, a, b, c) + t_value(e, a, b) - m_value(e, a, b, c)
}

/// Dimension of the component: the nine-binomial expression minus 3 minus
/// t(e, a, b).
pub fn dim_nbar(e: i64, a: i64, b: i64, c: i64) -> i64 {
    b3(c + a - e + 3) + b3(c + b - e + 3) + b3(c - a + 3) + b3(c - b + 3)
        - b3(a + b - e + 3)
        - b3(b - a + 3)
        - b3(2 * a - e + 3)
        - b3(2 * b - e + 3)
        - 3
        - t_value(e, a, b)
}

/// Dimensions of the auxiliary varieties in the rationality construction.
/// Each field is computed from its own binomial expansion, so the relations
/// between them are genuine cross-checks, not definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxDims {
    pub dim_r: i64,
    pub dim_ext1: i64,
    pub dim_t: i64,
    pub rk_a: i64,
    pub dim_u: i64,
}

pub fn aux_dims(e: i64, a: i64, b: i64, c: i64) -> AuxDims {
    let delta = delta_value(e, a, b, c);
    let dim_r = b3(c - b + 3) + b3(c - a + 3) - b3(b - a + 3) - 2;
    let dim_ext1 = b3(c + a - e + 3) - b3(a + b - e + 3) - b3(2 * a - e + 3) + delta;
    let dim_t = b3(c - b + 3) + b3(c - a + 3) - b3(b - a + 3) + b3(c + a - e + 3)
        - b3(a + b - e + 3)
        - b3(2 * a - e + 3)
        + delta
        - 3;
    let rk_a = b3(b + c - e + 3) - b3(2 * b - e + 3) + 1;
    let dim_u = b3(c - b + 3) + b3(c - a + 3) - b3(b - a + 3) + b3(c + a - e + 3)
        - b3(a + b - e + 3)
        - b3(2 * a - e + 3)
        + b3(b + c - e + 3)
        - b3(2 * b - e + 3)
        + delta
        - 3;
    AuxDims {
        dim_r,
        dim_ext1,
        dim_t,
        rk_a,
        dim_u,
    }
}

/// Rationality classifier:
/// Rational iff [e = 0 and a = b = 0] or [(e, a) != (0, 0) and c > 2a+b-e];
/// otherwise at least stably rational.
pub fn classify(e: i64, a: i64, b: i64, c: i64) -> Rationality {
    if (e == 0 && a == 0 && b == 0) || ((e, a) != (0, 0) && c > 2 * a + b - e) {
        Rationality::Rational
    } else {
        Rationality::StablyRationalAtLeast
    }
}

/// The derived integer invariants carried by a [`ComponentRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsBag {
    pub t: i64,
    pub delta: i64,
    pub m: i64,
    pub tau: i64,
    pub dim_r: i64,
    pub dim_ext1: i64,
    pub dim_t: i64,
    pub rk_a: i64,
    pub dim_u: i64,
}

/// One enumerated Ein component with its dimension, rationality status, and
/// derived invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub e: i64,
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub dim: i64,
    pub status: Rationality,
    pub invariants: InvariantsBag,
}

/// Fully populated record for admissible (e, a, b, c).
pub fn component_record(e: i64, a: i64, b: i64, c: i64) -> Result<ComponentRecord, Error> {
    let params = EinParams::new(e, a, b, c)?;
    let aux = aux_dims(e, a, b, c);
    Ok(ComponentRecord {
        e,
        n: params.n(),
        a,
        b,
        c,
        dim: dim_nbar(e, a, b, c),
        status: classify(e, a, b, c),
        invariants: InvariantsBag {
            t: t_value(e, a, b),
            delta: delta_value(e, a, b, c),
            m: m_value(e, a, b, c),
            tau: tau_value(e, a, b, c),
            dim_r: aux.dim_r,
            dim_ext1: aux.dim_ext1,
            dim_t: aux.dim_t,
            rk_a: aux.rk_a,
            dim_u: aux.dim_u,
        },
    })
}

/// All components of M(e, n): triples (a, b, c) with 0 <= a <= b, c > a+b and
/// c^2 - a^2 - b^2 - e(c-a-b) = n, in lexicographic (a, b, c) order.
///
/// For fixed (a, b) the value is strictly increasing in c, with minimum
/// 2ab + 2a + 2b + 1 - e at c = a+b+1; that minimum bounds both loops.
pub fn enumerate(e: i64, n: i64) -> Result<Vec<ComponentRecord>, Error> {
    if e != 0 && e != -1 {
        return Err(Error::InvalidParams("e must be 0 or -1".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParams("n >= 1 violated".into()));
    }
    if e == -1 && n % 2 != 0 {
        return Err(Error::InvalidParams("n must be even when e = -1".into()));
    }
    let n_at = |a: i64, b: i64, c: i64| c * c - a * a - b * b - e * (c - a - b);
    let mut out = Vec::new();
    let mut a = 0i64;
    while 2 * a * a + 4 * a + 1 - e <= n {
        let mut b = a;
        while 2 * a * b + 2 * a + 2 * b + 1 - e <= n {
            let mut c = a + b + 1;
            while n_at(a, b, c) < n {
                c += 1;
            }
            if n_at(a, b, c) == n {
                out.push(component_record(e, a, b, c)?);
            }
            b += 1;
        }
        a += 1;
    }
    Ok(out)
}

/// Component table for n = 1..n_max (even n only when e = -1), including the
/// values of n with no components.
pub fn component_table(e: i64, n_max: i64) -> Result<Vec<(i64, Vec<ComponentRecord>)>, Error> {
    if e != 0 && e != -1 {
        return Err(Error::InvalidParams("e must be 0 or -1".into()));
    }
    let (start, step) = if e == -1 { (2, 2) } else { (1, 1) };
    let mut rows = Vec::new();
    let mut n = start;
    while n <= n_max {
        rows.push((n, enumerate(e, n)?));
        n += step;
    }
    Ok(rows)
}

/// Markdown table with one row per component and explicit empty rows.
pub fn components_markdown(e: i64, table: &[(i64, Vec<ComponentRecord>)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("Ein components of M({e}, n)\n\n"));
    out.push_str("|  n | (a, b, c) | dim | status |\n");
    out.push_str("|---:|:---------:|----:|:-------|\n");
    for (n, records) in table {
        if records.is_empty() {
            out.push_str(&format!(
                "| {n:>2} |     —     |   — | no Ein components |\n"
            ));
        } else {
            for r in records {
                out.push_str(&format!(
                    "| {:>2} | ({}, {}, {}) | {:>3} | {} |\n",
                    n,
                    r.a,
                    r.b,
                    r.c,
                    r.dim,
                    r.status.label()
                ));
            }
        }
    }
    out
}
