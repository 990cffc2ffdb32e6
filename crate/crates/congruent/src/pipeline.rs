//! From constructions to certificates: every congruent number the crate
//! emits is backed by an explicit rational right triangle whose area equals
//! the number exactly, plus a trace of how it was built.
//!
//! The Pell routes: for d = 2·p₁⋯pₘ with distinct primes pᵢ ≡ 1 (mod 4), a
//! solution of x² − dy² = −1 makes 2xd congruent; for d ≢ 2 (mod 4), a
//! nontrivial solution of x² − dy² = 1 makes xd congruent. Both reduce to
//! square-free parts before certification.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize_product, is_perfect_square, squarefree_part};
use crate::pell::{compose, fundamental, theorem8_admissible, PellSign, PellSolution};
use crate::rational::Rational;
use crate::triples::PythTriple;
use crate::{Error, Result};

mod wire {
    //! Decimal-string serde for arbitrary-precision integers.

    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &Option<BigUint>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<BigUint>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| s.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod triple {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            v: &[BigUint; 3],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(3))?;
            for part in v {
                seq.serialize_element(&part.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<[BigUint; 3], D::Error> {
            let parts: Vec<String> = Vec::deserialize(d)?;
            if parts.len() != 3 {
                return Err(serde::de::Error::custom("expected three sides"));
            }
            let mut out = [BigUint::ZERO, BigUint::ZERO, BigUint::ZERO];
            for (slot, part) in out.iter_mut().zip(parts) {
                *slot = part.parse().map_err(serde::de::Error::custom)?;
            }
            Ok(out)
        }
    }
}

/// The rational right triangle of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalTriangle {
    pub leg1: Rational,
    pub leg2: Rational,
    pub hyp: Rational,
}

/// How a certificate was constructed: source triple, transform chain, the
/// scale divided out, and Pell data when a Pell route produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub method: String,
    #[serde(with = "wire::opt", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<BigUint>,
    #[serde(with = "wire::opt", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<BigUint>,
    #[serde(with = "wire::opt", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<BigUint>,
    #[serde(with = "wire::triple")]
    pub source_triple: [BigUint; 3],
    pub transform: String,
    #[serde(with = "wire")]
    pub scale: BigUint,
    #[serde(with = "wire")]
    pub raw: BigUint,
}

/// An explicit proof that `n` is congruent: a rational right triangle with
/// `leg1² + leg2² = hyp²` and `leg1·leg2/2 = n`, `n` square-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruentCertificate {
    #[serde(with = "wire")]
    pub n: BigUint,
    pub triangle: RationalTriangle,
    pub construction: ConstructionTrace,
}

impl CongruentCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Construction metadata handed to [`certify`].
#[derive(Debug, Clone)]
pub struct TraceSpec {
    pub method: String,
    pub d: Option<BigUint>,
    pub x: Option<BigUint>,
    pub y: Option<BigUint>,
    pub source: PythTriple,
    pub transform: String,
}

impl TraceSpec {
    pub fn new(method: impl Into<String>, source: &PythTriple, transform: impl Into<String>) -> Self {
        TraceSpec {
            method: method.into(),
            d: None,
            x: None,
            y: None,
            source: source.clone(),
            transform: transform.into(),
        }
    }

    pub fn with_pell(mut self, d: &BigUint, x: &BigUint, y: &BigUint) -> Self {
        self.d = Some(d.clone());
        self.x = Some(x.clone());
        self.y = Some(y.clone());
        self
    }
}

/// Scales `witness` down to area `squarefree_part(raw)` and returns the
/// verified certificate. `raw` must divide into the witness half-area with
/// a perfect-square quotient, which every construction here guarantees.
pub fn certify(raw: &BigUint, witness: &PythTriple, spec: TraceSpec) -> Result<CongruentCertificate> {
    let n = squarefree_part(raw)?;
    certify_with_squarefree(raw, &n, witness, spec)
}

/// [`certify`] with the square-free part already known, so callers that
/// factored `raw` piecewise do not factor it again.
pub fn certify_with_squarefree(
    raw: &BigUint,
    n: &BigUint,
    witness: &PythTriple,
    spec: TraceSpec,
) -> Result<CongruentCertificate> {
    if raw.is_zero() || n.is_zero() {
        return Err(Error::Domain("cannot certify zero".into()));
    }
    let (cofactor, rem) = raw.div_rem(n);
    if !rem.is_zero() || is_perfect_square(&cofactor).is_none() {
        return Err(Error::ScaleNotSquare(raw.to_string(), n.to_string()));
    }
    let area = witness.area();
    let (ratio, rem) = area.div_rem(n);
    if !rem.is_zero() {
        return Err(Error::ScaleNotSquare(area.to_string(), n.to_string()));
    }
    let Some(scale) = is_perfect_square(&ratio) else {
        return Err(Error::ScaleNotSquare(area.to_string(), n.to_string()));
    };
    let triangle = RationalTriangle {
        leg1: Rational::from_biguint_ratio(witness.a(), &scale)?,
        leg2: Rational::from_biguint_ratio(witness.b(), &scale)?,
        hyp: Rational::from_biguint_ratio(witness.c(), &scale)?,
    };
    let certificate = CongruentCertificate {
        n: n.clone(),
        triangle,
        construction: ConstructionTrace {
            method: spec.method,
            d: spec.d,
            x: spec.x,
            y: spec.y,
            source_triple: [
                spec.source.a().clone(),
                spec.source.b().clone(),
                spec.source.c().clone(),
            ],
            transform: spec.transform,
            scale,
            raw: raw.clone(),
        },
    };
    #[cfg(debug_assertions)]
    {
        let t = &certificate.triangle;
        debug_assert_eq!(&t.leg1.square() + &t.leg2.square(), t.hyp.square());
        let two_n = Rational::from_integer(num_bigint::BigInt::from(2u32 * n));
        debug_assert_eq!(&t.leg1 * &t.leg2, two_n);
    }
    Ok(certificate)
}

/// Reasons a certificate can fail verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyFailure {
    /// A side or n is not positive.
    NonPositive,
    /// leg1² + leg2² ≠ hyp².
    Pythagoras,
    /// leg1·leg2/2 ≠ n.
    Area,
    /// n has a square factor.
    NotSquareFree,
    /// (hyp/2)² ± n are not both rational squares.
    ProgressionSquares,
}

impl VerifyFailure {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyFailure::NonPositive => "non-positive",
            VerifyFailure::Pythagoras => "pythagoras",
            VerifyFailure::Area => "area",
            VerifyFailure::NotSquareFree => "not-square-free",
            VerifyFailure::ProgressionSquares => "progression-squares",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every certificate invariant in exact arithmetic, never panicking
/// on untrusted input. The Pythagoras and area identities are recomputed
/// over cross-multiplied integers, independent of the rational type's
/// normalization.
pub fn verify_certificate(cert: &CongruentCertificate) -> VerifyReport {
    let mut failures = Vec::new();
    let t = &cert.triangle;
    if !t.leg1.is_positive() || !t.leg2.is_positive() || !t.hyp.is_positive() || cert.n.is_zero() {
        failures.push(VerifyFailure::NonPositive);
        return VerifyReport { failures };
    }
    let (p1, q1) = (t.leg1.numerator(), t.leg1.denominator());
    let (p2, q2) = (t.leg2.numerator(), t.leg2.denominator());
    let (ph, qh) = (t.hyp.numerator(), t.hyp.denominator());

    // (p1/q1)² + (p2/q2)² = (ph/qh)²  ⟺  (p1·q2·qh)² + (p2·q1·qh)² = (ph·q1·q2)²
    let lhs1 = p1 * q2 * qh;
    let lhs2 = p2 * q1 * qh;
    let rhs = ph * q1 * q2;
    if &lhs1 * &lhs1 + &lhs2 * &lhs2 != &rhs * &rhs {
        failures.push(VerifyFailure::Pythagoras);
    }

    // p1·p2/(q1·q2) = 2n  ⟺  p1·p2 = 2n·q1·q2
    let n_int = num_bigint::BigInt::from(cert.n.clone());
    if p1 * p2 != 2u32 * &n_int * q1 * q2 {
        failures.push(VerifyFailure::Area);
    }

    match squarefree_part(&cert.n) {
        Ok(sf) if sf == cert.n => {}
        _ => failures.push(VerifyFailure::NotSquareFree),
    }

    // The arithmetic-progression view: (hyp/2)² ± n must both be rational
    // squares, namely ((leg1 ± leg2)/2)².
    let two = Rational::from_integer(2);
    let half_hyp = &t.hyp / &two;
    let n_rat = Rational::from_integer(n_int);
    let upper = &half_hyp.square() + &n_rat;
    let lower = &half_hyp.square() - &n_rat;
    let sum_sq = (&(&t.leg1 + &t.leg2) / &two).square();
    let diff_sq = (&(&t.leg1 - &t.leg2) / &two).square();
    let progression_ok = upper.sqrt_exact().is_some()
        && lower.sqrt_exact().is_some()
        && upper == sum_sq
        && lower == diff_sq;
    if !progression_ok {
        failures.push(VerifyFailure::ProgressionSquares);
    }

    VerifyReport { failures }
}

/// A congruent number produced from a Pell solution, with its certificate.
#[derive(Debug, Clone)]
pub struct PellCongruentResult {
    pub d: BigUint,
    pub solution: PellSolution,
    /// 2xd on the negative route, xd on the positive route.
    pub raw: BigUint,
    /// Square-free part of `raw`: the certified congruent number.
    pub n: BigUint,
    pub certificate: CongruentCertificate,
    /// 2d (negative route) or d (positive route) when x is itself a perfect
    /// square; congruent with the same certificate.
    pub bonus: Option<BigUint>,
    /// Set when produced in relaxed mode for a d outside the stated form.
    pub relaxed: bool,
}

/// Negative-Pell route for admissible d: x² − dy² = −1 gives the triple
/// (x² − 1, 2x, x² + 1) and 2x(x² + 1) = 2xd·y², so sf(2xd) is congruent.
pub fn theorem8(d: &BigUint) -> Result<PellCongruentResult> {
    theorem8_nth(d, 1, false)
}

/// Relaxed variant: any non-square d with a solvable negative equation,
/// flagged as outside the stated admissible form when it is.
pub fn theorem8_relaxed(d: &BigUint) -> Result<PellCongruentResult> {
    theorem8_nth(d, 1, true)
}

/// `nth` selects the nth negative solution (1 = fundamental). Solutions
/// with x = 1 (only d = 2) give a degenerate triple and are skipped.
pub fn theorem8_nth(d: &BigUint, nth: usize, relaxed: bool) -> Result<PellCongruentResult> {
    if nth == 0 {
        return Err(Error::Domain("solution index is 1-based".into()));
    }
    let admissibility = theorem8_admissible(d)?;
    let outside_stated_form = !admissibility.admissible();
    if outside_stated_form && !relaxed {
        return Err(Error::NotAdmissible(
            d.to_string(),
            admissibility.violations().join("; "),
        ));
    }
    let plus = fundamental(d, PellSign::Plus)?;
    let mut sol = fundamental(d, PellSign::Minus)?;
    for _ in 1..nth {
        sol = compose(&sol, &plus);
    }
    while sol.x.is_one() {
        sol = compose(&sol, &plus);
    }
    let (x, y) = (&sol.x, &sol.y);
    let base = PythTriple::new(x * x - 1u32, 2u32 * x, x * x + 1u32)
        .expect("x >= 2 gives a valid triple");
    let two_x = 2u32 * x;
    let (tag, witness) = base.pair_leg_with_hyp(&two_x);
    let raw = 2u32 * x * d;
    let n = factorize_product(&[BigUint::from(2u32), x.clone(), d.clone()])?.squarefree_part();
    let method = if outside_stated_form {
        "theorem8-relaxed"
    } else {
        "theorem8"
    };
    let spec = TraceSpec::new(method, &base, tag.label()).with_pell(d, x, y);
    let certificate = certify_with_squarefree(&raw, &n, &witness, spec)?;
    let bonus = is_perfect_square(x).map(|_| 2u32 * d);
    Ok(PellCongruentResult {
        d: d.clone(),
        solution: sol,
        raw,
        n,
        certificate,
        bonus,
        relaxed: outside_stated_form,
    })
}

/// Positive-Pell route for d ≢ 2 (mod 4): the triple (x² − 1, 2x, x² + 1)
/// has half-area x(x² − 1) = xd·y², so sf(xd) is congruent.
pub fn theorem10(d: &BigUint) -> Result<PellCongruentResult> {
    theorem10_nth(d, 1, false)
}

/// Relaxed variant: also accepts d ≡ 2 (mod 4), flagged as outside the
/// stated residue classes.
pub fn theorem10_relaxed(d: &BigUint) -> Result<PellCongruentResult> {
    theorem10_nth(d, 1, true)
}

pub fn theorem10_nth(d: &BigUint, nth: usize, relaxed: bool) -> Result<PellCongruentResult> {
    if nth == 0 {
        return Err(Error::Domain("solution index is 1-based".into()));
    }
    if d < &BigUint::from(2u32) {
        return Err(Error::Domain("positive-Pell route requires d >= 2".into()));
    }
    let outside_stated_form = (d % 4u32).to_u32() == Some(2);
    if outside_stated_form && !relaxed {
        return Err(Error::WrongResidue(d.to_string()));
    }
    let plus = fundamental(d, PellSign::Plus)?;
    let mut sol = plus.clone();
    for _ in 1..nth {
        sol = compose(&sol, &plus);
    }
    let (x, y) = (&sol.x, &sol.y);
    let base = PythTriple::new(x * x - 1u32, 2u32 * x, x * x + 1u32)
        .expect("positive fundamentals have x >= 2");
    let raw = x * d;
    let n = factorize_product(&[x.clone(), d.clone()])?.squarefree_part();
    let method = if outside_stated_form {
        "theorem10-relaxed"
    } else {
        "theorem10"
    };
    let spec = TraceSpec::new(method, &base, "identity").with_pell(d, x, y);
    let certificate = certify_with_squarefree(&raw, &n, &base, spec)?;
    let bonus = is_perfect_square(x).map(|_| d.clone());
    Ok(PellCongruentResult {
        d: d.clone(),
        solution: sol,
        raw,
        n,
        certificate,
        bonus,
        relaxed: outside_stated_form,
    })
}

/// Builds d = 2·p₁⋯pₘ from distinct primes ≡ 1 (mod 4) and runs the
/// negative-Pell route; the resulting n is divisible by every listed prime.
pub fn corollary9_build(primes: &[BigUint]) -> Result<PellCongruentResult> {
    if primes.is_empty() {
        return Err(Error::InvalidParameters(
            "at least one prime is required".into(),
        ));
    }
    let mut seen = std::collections::BTreeSet::new();
    for p in primes {
        if !crate::arith::is_prime(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        if (p % 4u32).to_u32() != Some(1) {
            return Err(Error::InvalidParameters(format!(
                "{p} is not congruent to 1 mod 4"
            )));
        }
        if !seen.insert(p.clone()) {
            return Err(Error::InvalidParameters(format!("duplicate prime {p}")));
        }
    }
    let d = primes
        .iter()
        .fold(BigUint::from(2u32), |acc, p| acc * p);
    let result = theorem8(&d)?;
    for p in primes {
        assert!(
            (&result.n % p).is_zero(),
            "emitted n = {} must be divisible by {p}",
            result.n
        );
    }
    Ok(result)
}

/// The d = y² + 1 family: for any solution (x, y) of x² − 2y² = 1, the
/// equation u² − (y² + 1)v² = 1 has the solution (2y² + 1, 2y), and
/// u = 2y² + 1 = x² is a perfect square, so d = y² + 1 itself is congruent.
pub fn closing_example(y: &BigUint) -> Result<PellCongruentResult> {
    if y.is_zero() {
        return Err(Error::Domain("y must be nonzero".into()));
    }
    let u = 2u32 * y * y + 1u32;
    let Some(x) = is_perfect_square(&u) else {
        return Err(Error::InvalidParameters(format!(
            "no integer x satisfies x² - 2y² = 1 for y = {y}"
        )));
    };
    let d = y * y + 1u32;
    let v = 2u32 * y;
    let sol = PellSolution {
        d: d.clone(),
        x: u.clone(),
        y: v.clone(),
        sign: PellSign::Plus,
    };
    assert!(sol.verify(), "(2y² + 1, 2y) must solve u² - dv² = 1");
    let base = PythTriple::new(&u * &u - 1u32, 2u32 * &u, &u * &u + 1u32)
        .expect("u >= 3 gives a valid triple");
    let raw = &u * &d;
    let n = factorize_product(&[x.clone(), x.clone(), d.clone()])?.squarefree_part();
    let spec = TraceSpec::new("closing-example", &base, "identity").with_pell(&d, &u, &v);
    let certificate = certify_with_squarefree(&raw, &n, &base, spec)?;
    Ok(PellCongruentResult {
        d: d.clone(),
        solution: sol,
        raw,
        n,
        certificate,
        bonus: Some(d),
        relaxed: false,
    })
}

/// Worker count for sweeps: CN_THREADS when set, else the machine's
/// available parallelism.
pub fn worker_threads() -> usize {
    std::env::var("CN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn parallel_map<T: Send, F: Fn(u64) -> T + Sync>(inputs: &[u64], threads: usize, f: F) -> Vec<T> {
    let threads = threads.max(1).min(inputs.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = inputs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= inputs.len() {
                    break;
                }
                let out = f(inputs[i]);
                *slots[i].lock().expect("slot lock") = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("slot lock").expect("slot filled"))
        .collect()
}

/// Negative-Pell sweep over every admissible d ≤ bound. Results keep the
/// input order; unsolvable d are reported as errors, not skipped.
pub fn sweep_theorem8(bound: u64, threads: usize) -> Vec<(u64, Result<PellCongruentResult>)> {
    let eligible: Vec<u64> = (2..=bound)
        .filter(|&d| {
            theorem8_admissible(&BigUint::from(d))
                .map(|a| a.admissible())
                .unwrap_or(false)
        })
        .collect();
    let results = parallel_map(&eligible, threads, |d| theorem8(&BigUint::from(d)));
    eligible.into_iter().zip(results).collect()
}

/// Positive-Pell sweep over every non-square d ≤ bound with d ≢ 2 (mod 4).
pub fn sweep_theorem10(bound: u64, threads: usize) -> Vec<(u64, Result<PellCongruentResult>)> {
    let eligible: Vec<u64> = (2..=bound)
        .filter(|&d| d % 4 != 2 && is_perfect_square(&BigUint::from(d)).is_none())
        .collect();
    let results = parallel_map(&eligible, threads, |d| theorem10(&BigUint::from(d)));
    eligible.into_iter().zip(results).collect()
}

/// Certifies a triple-derived congruent source (the five per-triple values).
pub fn certify_source(
    base: &PythTriple,
    source: &crate::triples::CongruentSource,
    method: &str,
) -> Result<CongruentCertificate> {
    let spec = TraceSpec::new(method, base, source.transform_label());
    certify_with_squarefree(&source.raw, &source.squarefree, &source.witness, spec)
}

/// Certifies the derived value of a family entry; degenerate entries have
/// nothing to certify.
pub fn certify_family_entry(
    entry: &crate::families::FamilyEntry,
) -> Result<Option<CongruentCertificate>> {
    let Some(derived) = &entry.derived else {
        return Ok(None);
    };
    let spec = TraceSpec::new("theorem6", &derived.source, derived.transform_label());
    certify_with_squarefree(&derived.value, &derived.squarefree, &derived.witness, spec).map(Some)
}
