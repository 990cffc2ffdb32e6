//! Continued fractions of √d and the equations x² − dy² = ±1: expansion
//! with exact integer state, fundamental solutions from convergents, the
//! composition recurrence for further solutions, and the solvability
//! predicates used by the congruent-number pipeline.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, is_perfect_square, Factorization};
use crate::{Error, Result};

/// Which sign of x² − dy² a solution satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PellSign {
    Plus,
    Minus,
}

impl fmt::Display for PellSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PellSign::Plus => f.write_str("+1"),
            PellSign::Minus => f.write_str("-1"),
        }
    }
}

/// A solution of x² − dy² = sign, kept with its d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub d: BigUint,
    pub x: BigUint,
    pub y: BigUint,
    pub sign: PellSign,
}

impl PellSolution {
    /// Exact check of x² − dy² = sign.
    pub fn verify(&self) -> bool {
        let x2 = &self.x * &self.x;
        let dy2 = &self.d * &self.y * &self.y;
        match self.sign {
            PellSign::Plus => x2 == dy2 + 1u32,
            PellSign::Minus => x2 + 1u32 == dy2,
        }
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Continued fraction of √d: integer part plus one minimal periodic block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    d: BigUint,
    a0: BigUint,
    period: Vec<BigUint>,
}

impl CfExpansion {
    /// Expands √d via the integer surd recurrence. The period is detected
    /// by the recurrence state returning to its initial configuration; the
    /// trailing term equaling 2·a0 is asserted afterwards.
    pub fn expand(d: &BigUint) -> Result<Self> {
        if is_perfect_square(d).is_some() {
            return Err(Error::NotQuadraticIrrational(d.to_string()));
        }
        let a0 = d.sqrt();
        // State for ξ_i = (√d + m_i)/q_i, starting at ξ_1 = 1/(√d − a0).
        let first_m = a0.clone();
        let first_q = d - &a0 * &a0;
        let mut m = first_m.clone();
        let mut q = first_q.clone();
        let mut period = Vec::new();
        loop {
            let a = (&a0 + &m) / &q;
            period.push(a.clone());
            let next_m = &a * &q - &m;
            let next_q = (d - &next_m * &next_m) / &q;
            if next_m == first_m && next_q == first_q {
                break;
            }
            m = next_m;
            q = next_q;
        }
        let last = period.last().expect("period is never empty");
        assert_eq!(last, &(&a0 * 2u32), "period must end with 2·a0");
        Ok(CfExpansion {
            d: d.clone(),
            a0,
            period,
        })
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn a0(&self) -> &BigUint {
        &self.a0
    }

    pub fn period(&self) -> &[BigUint] {
        &self.period
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// x² − dy² = −1 is solvable exactly when the period length is odd.
    pub fn negative_solvable(&self) -> bool {
        self.period_len() % 2 == 1
    }

    /// Convergent h/k over the first `terms` partial quotients
    /// (a0 plus `terms − 1` period terms, cycling).
    fn convergent(&self, terms: usize) -> (BigUint, BigUint) {
        assert!(terms >= 1);
        let mut h_prev = BigUint::one();
        let mut h = self.a0.clone();
        let mut k_prev = BigUint::zero();
        let mut k = BigUint::one();
        for i in 1..terms {
            let a = &self.period[(i - 1) % self.period.len()];
            let h_next = a * &h + &h_prev;
            let k_next = a * &k + &k_prev;
            h_prev = h;
            h = h_next;
            k_prev = k;
            k = k_next;
        }
        (h, k)
    }

    /// The convergent at the end of the first period: the fundamental
    /// solution of x² − dy² = (−1)^(period length).
    pub fn fundamental_at_period(&self) -> PellSolution {
        let (x, y) = self.convergent(self.period_len());
        let sign = if self.negative_solvable() {
            PellSign::Minus
        } else {
            PellSign::Plus
        };
        let sol = PellSolution {
            d: self.d.clone(),
            x,
            y,
            sign,
        };
        assert!(sol.verify(), "period-end convergent must solve x² − dy² = ±1");
        sol
    }
}

/// Brahmagupta composition with a +1 solution; signs multiply.
pub fn compose(sol: &PellSolution, plus: &PellSolution) -> PellSolution {
    debug_assert_eq!(sol.d, plus.d);
    debug_assert_eq!(plus.sign, PellSign::Plus);
    PellSolution {
        d: sol.d.clone(),
        x: &sol.x * &plus.x + &sol.d * &sol.y * &plus.y,
        y: &sol.x * &plus.y + &sol.y * &plus.x,
        sign: sol.sign,
    }
}

/// Least positive solution of x² − dy² = sign.
///
/// For sign = +1 this always exists. For sign = −1 it exists exactly when
/// the continued-fraction period of √d is odd; otherwise `Unsolvable`.
pub fn fundamental(d: &BigUint, sign: PellSign) -> Result<PellSolution> {
    let cf = CfExpansion::expand(d)?;
    let base = cf.fundamental_at_period();
    match (sign, base.sign) {
        (PellSign::Minus, PellSign::Minus) | (PellSign::Plus, PellSign::Plus) => Ok(base),
        (PellSign::Minus, PellSign::Plus) => Err(Error::Unsolvable(d.to_string())),
        (PellSign::Plus, PellSign::Minus) => {
            // Odd period: the +1 fundamental is the convergent at twice the
            // period, equivalently the square of the −1 fundamental.
            let (x, y) = cf.convergent(2 * cf.period_len());
            let doubled = PellSolution {
                d: d.clone(),
                x,
                y,
                sign: PellSign::Plus,
            };
            let squared = PellSolution {
                d: d.clone(),
                x: &base.x * &base.x + d * &base.y * &base.y,
                y: 2u32 * &base.x * &base.y,
                sign: PellSign::Plus,
            };
            assert_eq!(
                doubled, squared,
                "double-period convergent must equal the squared −1 fundamental"
            );
            assert!(doubled.verify());
            Ok(doubled)
        }
    }
}

/// The first `count` solutions of x² − dy² = sign in increasing x,
/// generated from the fundamental by composition with the +1 fundamental.
pub fn solutions(d: &BigUint, sign: PellSign, count: usize) -> Result<Vec<PellSolution>> {
    let first = fundamental(d, sign)?;
    let plus = match sign {
        PellSign::Plus => first.clone(),
        PellSign::Minus => fundamental(d, PellSign::Plus)?,
    };
    let mut out = Vec::with_capacity(count);
    let mut current = first;
    for _ in 0..count {
        out.push(current.clone());
        current = compose(&current, &plus);
    }
    Ok(out)
}

/// Outcome of the negative-Pell necessary-condition check: d must not be
/// divisible by 4 and every odd prime factor must be ≡ 1 (mod 4). The
/// condition is necessary but not sufficient (d = 34 satisfies it yet
/// x² − 34y² = −1 has no solutions).
#[derive(Debug, Clone)]
pub struct NecessaryCondition {
    pub doubly_even: bool,
    pub bad_primes: Vec<BigUint>,
}

impl NecessaryCondition {
    pub fn satisfied(&self) -> bool {
        !self.doubly_even && self.bad_primes.is_empty()
    }
}

pub fn negative_pell_necessary(d: &BigUint) -> Result<NecessaryCondition> {
    if d < &BigUint::from(2u32) {
        return Err(Error::Domain("necessary-condition check requires d >= 2".into()));
    }
    let f = factorize(d)?;
    let doubly_even = (d % 4u32).is_zero();
    let bad_primes = f
        .factors()
        .iter()
        .filter(|(p, _)| (p % 4u32).to_u32() == Some(3))
        .map(|(p, _)| p.clone())
        .collect();
    Ok(NecessaryCondition {
        doubly_even,
        bad_primes,
    })
}

/// Whether d has the form 2·q₁⋯qₘ₋₁ with distinct odd primes qᵢ ≡ 1 (mod 4)
/// (d = 2 itself is admissible).
#[derive(Debug, Clone)]
pub struct Admissibility {
    pub factorization: Factorization,
    violations: Vec<String>,
}

impl Admissibility {
    pub fn admissible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[String] {
        &self.violations
    }
}

pub fn theorem8_admissible(d: &BigUint) -> Result<Admissibility> {
    if d < &BigUint::from(2u32) {
        return Err(Error::Domain("admissibility check requires d >= 2".into()));
    }
    let factorization = factorize(d)?;
    let mut violations = Vec::new();
    let two = BigUint::from(2u32);
    if factorization.exponent_of(&two) != 1 {
        violations.push(format!(
            "d must contain the prime 2 exactly once (exponent {})",
            factorization.exponent_of(&two)
        ));
    }
    for (p, e) in factorization.factors() {
        if p == &two {
            continue;
        }
        if *e != 1 {
            violations.push(format!("repeated prime {p} (exponent {e})"));
        }
        if (p % 4u32).to_u32() != Some(1) {
            violations.push(format!("prime {p} is not congruent to 1 mod 4"));
        }
    }
    Ok(Admissibility {
        factorization,
        violations,
    })
}
