//! Generalized null correlation monads: admissibility of the integer
//! parameters (e, a, b, c), the four defining forms, and linear-algebra
//! certificates of empty zero loci and smoothness.
//!
//! A monad is the complex 0 -> O(e-c) -> O(a) + O(e-a) + O(b) + O(e-b) -> O(c)
//! with maps lambda = (f2, -f1, f4, -f3)^t and mu = (f1, f2, f3, f4). Its
//! cohomology is a rank-2 bundle exactly when the four forms have no common
//! zero, which is certified here by surjectivity of the ideal's graded piece.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fp::{FpMatrix, PrimeField};
use crate::poly::{block_mult_matrix, dim_forms, multiply, partials, random_form, HomogeneousForm};
use crate::seed;

/// Default retry budget for [`random_monad`]; generic draws pass all checks,
/// so the budget is generous only to absorb tiny-prime experiments.
pub const DEFAULT_MAX_RETRIES: u32 = 64;

/// The integer quadruple (e, a, b, c) of an Ein component, with
/// b >= a >= 0 and c > a + b, e in {-1, 0}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EinParams {
    e: i64,
    a: i64,
    b: i64,
    c: i64,
}

impl EinParams {
    pub fn new(e: i64, a: i64, b: i64, c: i64) -> Result<Self, Error> {
        if e != 0 && e != -1 {
            return Err(Error::InvalidParams("e must be 0 or -1".into()));
        }
        if a < 0 {
            return Err(Error::InvalidParams("a >= 0 violated".into()));
        }
        if b < a {
            return Err(Error::InvalidParams("b >= a violated".into()));
        }
        if c <= a + b {
            return Err(Error::InvalidParams("c > a+b violated".into()));
        }
        let params = EinParams { e, a, b, c };
        // consistency of the derived second Chern class
        debug_assert!(params.n() > 0);
        debug_assert!(e == 0 || params.n() % 2 == 0);
        Ok(params)
    }

    pub fn e(self) -> i64 {
        self.e
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn c(self) -> i64 {
        self.c
    }

    /// Second Chern class n = c^2 - a^2 - b^2 - e(c - a - b).
    pub fn n(self) -> i64 {
        self.c * self.c - self.a * self.a - self.b * self.b - self.e * (self.c - self.a - self.b)
    }

    /// Degrees of (f1, f2, f3, f4): (c-a, c+a-e, c-b, c+b-e).
    pub fn form_degrees(self) -> [i64; 4] {
        [
            self.c - self.a,
            self.c + self.a - self.e,
            self.c - self.b,
            self.c + self.b - self.e,
        ]
    }

    /// Source degrees of the four middle summands twisted by m:
    /// (a+m, -a+e+m, b+m, -b+e+m).
    pub fn source_degrees(self, m: i64) -> [i64; 4] {
        [
            self.a + m,
            -self.a + self.e + m,
            self.b + m,
            -self.b + self.e + m,
        ]
    }
}

impl std::fmt::Display for EinParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.e, self.a, self.b, self.c)
    }
}

/// Verdict of the zero-locus emptiness certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroLocus {
    /// The common zero locus is empty over the algebraic closure.
    Empty,
    /// Not certified empty up to `at_degree`. For exactly four forms this is a
    /// proof of nonemptiness; for other form counts it may be undetermined.
    NonemptyOrUndetermined { at_degree: i64 },
}

/// Verdict of a smoothness certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    SingularOrUndetermined,
}

/// Degree-D piece of the ideal generated by `forms`, as the matrix of
/// (g_i) -> sum f_i g_i from the direct sum of R_{D - deg f_i} to R_D.
pub fn ideal_piece_matrix(forms: &[&HomogeneousForm], d: i64, ctx: PrimeField) -> FpMatrix {
    let blocks: Vec<(&HomogeneousForm, i64)> = forms.iter().map(|&f| (f, d - f.degree())).collect();
    block_mult_matrix(&blocks, d, ctx)
}

/// Certify that the common zero locus of `forms` in P^3 is empty.
///
/// The locus is empty over the algebraic closure iff the ideal contains the
/// whole of R_D for some D, i.e. the concatenated multiplication matrix is
/// surjective. Test degrees ascend; the first surjective degree settles it,
/// and surjectivity persists for larger D.
///
/// For exactly four forms the search stops at the Macaulay bound
/// D* = d1+d2+d3+d4-3: an empty locus forces the forms to be a regular
/// sequence, whose Artinian quotient has socle degree d1+d2+d3+d4-4, so
/// non-surjectivity at D* proves the locus nonempty. For other form counts a
/// degree cap applies (`degree_cap`, defaulting to the same bound) and failure
/// at the cap is only undetermined.
///
/// Degree-0 forms: a nonzero constant makes the locus trivially empty; zero
/// constants cut nothing and are dropped.
pub fn is_basepoint_free(
    forms: &[HomogeneousForm],
    ctx: PrimeField,
    degree_cap: Option<i64>,
) -> Result<ZeroLocus, Error> {
    if forms.is_empty() {
        return Err(Error::InvalidParams("at least one form is required".into()));
    }
    let mut active: Vec<&HomogeneousForm> = Vec::new();
    for f in forms {
        if f.degree() <= 0 {
            if !f.is_zero() {
                return Ok(ZeroLocus::Empty);
            }
        } else {
            active.push(f);
        }
    }
    if active.is_empty() {
        return Ok(ZeroLocus::NonemptyOrUndetermined { at_degree: 0 });
    }
    let degrees: Vec<i64> = active.iter().map(|f| f.degree()).collect();
    let macaulay = degrees.iter().sum::<i64>() - 3;
    let cap = if active.len() == 4 {
        macaulay
    } else {
        degree_cap.unwrap_or(macaulay)
    };
    let d_min = *degrees.iter().min().expect("nonempty");
    for d in d_min..=cap {
        let target = dim_forms(d);
        let source: usize = degrees.iter().map(|&dd| dim_forms(d - dd)).sum();
        if source < target {
            continue;
        }
        if ideal_piece_matrix(&active, d, ctx).rank(ctx) == target {
            return Ok(ZeroLocus::Empty);
        }
    }
    Ok(ZeroLocus::NonemptyOrUndetermined { at_degree: cap })
}

/// Smoothness of the hypersurface {f = 0} by the Jacobian criterion.
///
/// Requires p not dividing deg f, so Euler's formula puts f in its Jacobian
/// ideal and smoothness is equivalent to the four partials having empty
/// common zero locus.
pub fn is_smooth_hypersurface(f: &HomogeneousForm, ctx: PrimeField) -> Result<Smoothness, Error> {
    if f.degree() < 1 {
        return Err(Error::InvalidParams(
            "hypersurface form must have degree >= 1".into(),
        ));
    }
    if (f.degree() as u64).is_multiple_of(ctx.modulus()) {
        return Err(Error::CharDividesDegree {
            p: ctx.modulus(),
            degree: f.degree(),
        });
    }
    let parts = partials(f, ctx)?;
    Ok(match is_basepoint_free(&parts, ctx, None)? {
        ZeroLocus::Empty => Smoothness::Smooth,
        ZeroLocus::NonemptyOrUndetermined { .. } => Smoothness::SingularOrUndetermined,
    })
}

/// Smoothness of the complete-intersection curve {f1 = f3 = 0}.
///
/// Generators are f1, f3 and the six 2x2 minors of their 2x4 Jacobian; the
/// curve is smooth iff that system has empty zero locus. With eight
/// generators the certificate is sound but only heuristically complete at the
/// default cap deg f1 + deg f3 + 2(deg f1 + deg f3 - 2) - 3.
pub fn is_smooth_ci_curve(
    f1: &HomogeneousForm,
    f3: &HomogeneousForm,
    ctx: PrimeField,
    degree_cap: Option<i64>,
) -> Result<Smoothness, Error> {
    if f1.degree() < 1 || f3.degree() < 1 {
        return Err(Error::InvalidParams(
            "curve generators must have degree >= 1".into(),
        ));
    }
    let j1 = partials(f1, ctx)?;
    let j3 = partials(f3, ctx)?;
    let mut gens: Vec<HomogeneousForm> = vec![f1.clone(), f3.clone()];
    for i in 0..4 {
        for j in i + 1..4 {
            let minor = multiply(&j1[i], &j3[j], ctx).sub(&multiply(&j1[j], &j3[i], ctx), ctx);
            gens.push(minor);
        }
    }
    let cap = degree_cap.unwrap_or(3 * (f1.degree() + f3.degree()) - 7);
    Ok(match is_basepoint_free(&gens, ctx, Some(cap))? {
        ZeroLocus::Empty => Smoothness::Smooth,
        ZeroLocus::NonemptyOrUndetermined { .. } => Smoothness::SingularOrUndetermined,
    })
}

/// A validated generalized null correlation monad: parameters, the four forms
/// f1..f4 of degrees (c-a, c+a-e, c-b, c+b-e), and the field they live over.
#[derive(Debug, Clone)]
pub struct NullCorrelationMonad {
    params: EinParams,
    forms: [HomogeneousForm; 4],
    ctx: PrimeField,
}

impl NullCorrelationMonad {
    /// Validates form degrees, the identity mu.lambda = 0, and emptiness of
    /// the common zero locus of f1..f4.
    pub fn new(
        params: EinParams,
        forms: [HomogeneousForm; 4],
        ctx: PrimeField,
    ) -> Result<Self, Error> {
        let expected = params.form_degrees();
        for (i, f) in forms.iter().enumerate() {
            if f.degree() != expected[i] {
                return Err(Error::InvalidMonad(format!(
                    "f{} must have degree {}, got {}",
                    i + 1,
                    expected[i],
                    f.degree()
                )));
            }
        }
        // mu.lambda = f1 f2 - f2 f1 + f3 f4 - f4 f3; zero by the antisymmetric
        // arrangement, asserted as an exact coefficient check
        let [f1, f2, f3, f4] = &forms;
        let composite = multiply(f1, f2, ctx)
            .sub(&multiply(f2, f1, ctx), ctx)
            .add(&multiply(f3, f4, ctx), ctx)
            .sub(&multiply(f4, f3, ctx), ctx);
        if !composite.is_zero() {
            return Err(Error::InvalidMonad("mu.lambda != 0".into()));
        }
        match is_basepoint_free(&forms, ctx, None)? {
            ZeroLocus::Empty => Ok(NullCorrelationMonad { params, forms, ctx }),
            ZeroLocus::NonemptyOrUndetermined { .. } => Err(Error::InvalidMonad(
                "common zero locus of f1..f4 is not empty".into(),
            )),
        }
    }

    /// Skips every validity check. Cohomology of the result is meaningful only
    /// for genuinely valid monads; used to probe degenerate inputs in tests.
    pub fn new_unchecked(params: EinParams, forms: [HomogeneousForm; 4], ctx: PrimeField) -> Self {
        NullCorrelationMonad { params, forms, ctx }
    }

    pub fn params(&self) -> EinParams {
        self.params
    }

    pub fn ctx(&self) -> PrimeField {
        self.ctx
    }

    pub fn forms(&self) -> &[HomogeneousForm; 4] {
        &self.forms
    }

    pub fn f1(&self) -> &HomogeneousForm {
        &self.forms[0]
    }

    pub fn f2(&self) -> &HomogeneousForm {
        &self.forms[1]
    }

    pub fn f3(&self) -> &HomogeneousForm {
        &self.forms[2]
    }

    pub fn f4(&self) -> &HomogeneousForm {
        &self.forms[3]
    }
}

/// Flat description of a monad for reproducible bug reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadDescriptor {
    pub e: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub p: u64,
    pub seed: u64,
    pub f1: Vec<u64>,
    pub f2: Vec<u64>,
    pub f3: Vec<u64>,
    pub f4: Vec<u64>,
}

impl MonadDescriptor {
    pub fn new(monad: &NullCorrelationMonad, seed: u64) -> Self {
        let p = monad.params();
        MonadDescriptor {
            e: p.e(),
            a: p.a(),
            b: p.b(),
            c: p.c(),
            p: monad.ctx().modulus(),
            seed,
            f1: monad.f1().coeffs().to_vec(),
            f2: monad.f2().coeffs().to_vec(),
            f3: monad.f3().coeffs().to_vec(),
            f4: monad.f4().coeffs().to_vec(),
        }
    }
}

/// Sample a general monad for `params`: draw f1..f4 from seeded streams and
/// retry (advancing the attempt index deterministically) until the zero locus
/// is empty, {f3 = 0} is smooth, and {f1 = f3 = 0} is a smooth curve.
///
/// Returns the monad and the number of retries consumed (0 = first draw).
/// Requires p > 4c so no degree in play is divisible by p.
pub fn random_monad(
    params: EinParams,
    ctx: PrimeField,
    seed: u64,
    max_retries: u32,
) -> Result<(NullCorrelationMonad, u32), Error> {
    let bound = 4 * params.c();
    if ctx.modulus() <= bound as u64 {
        return Err(Error::PrimeTooSmall {
            p: ctx.modulus(),
            bound,
        });
    }
    let degrees = params.form_degrees();
    let mut last_failure = String::from("no attempts made");
    for attempt in 0..max_retries {
        let attempt_seed = seed::mix(seed, attempt as u64);
        let forms: [HomogeneousForm; 4] = std::array::from_fn(|i| {
            random_form(degrees[i], ctx, seed::mix(attempt_seed, i as u64))
        });
        let candidate = match NullCorrelationMonad::new(params, forms, ctx) {
            Ok(m) => m,
            Err(err) => {
                last_failure = err.to_string();
                continue;
            }
        };
        if is_smooth_hypersurface(candidate.f3(), ctx)? != Smoothness::Smooth {
            last_failure = "surface {f3 = 0} not certified smooth".into();
            continue;
        }
        if is_smooth_ci_curve(candidate.f1(), candidate.f3(), ctx, None)? != Smoothness::Smooth {
            last_failure = "curve {f1 = f3 = 0} not certified smooth".into();
            continue;
        }
        return Ok((candidate, attempt));
    }
    Err(Error::RetriesExhausted {
        attempts: max_retries,
        last_failure,
    })
}
