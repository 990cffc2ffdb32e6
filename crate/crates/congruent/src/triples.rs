//! Pythagorean triples: the `(s, t)` parametrization, the three
//! leg/hypotenuse transforms, and the five congruent numbers each triple
//! yields together with witness triangles for certification.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorize_product, Factorization};
use crate::{Error, Result};

/// An integer right triangle. Legs are normalized so `a < b` on
/// construction; `a = b` cannot happen for integer sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PythTriple {
    a: BigUint,
    b: BigUint,
    c: BigUint,
}

/// The three triple transforms. Applied to `(a, b, c)` with `a < b`:
///
/// 1. `(2ac, b², a² + c²)` with half-area `ac·b²`
/// 2. `(2bc, a², b² + c²)` with half-area `bc·a²`
/// 3. `(2ab, b² − a², c²)` with half-area `ab(b² − a²)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma1 {
    One,
    Two,
    Three,
}

impl Lemma1 {
    pub fn label(&self) -> &'static str {
        match self {
            Lemma1::One => "lemma1.1",
            Lemma1::Two => "lemma1.2",
            Lemma1::Three => "lemma1.3",
        }
    }
}

impl fmt::Display for Lemma1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl PythTriple {
    /// Builds a triple from two legs and a hypotenuse, reordering the legs
    /// so the larger is second.
    pub fn new(leg1: BigUint, leg2: BigUint, hyp: BigUint) -> Result<Self> {
        if leg1.is_zero() || leg2.is_zero() || hyp.is_zero() {
            return Err(Error::Domain(
                "triple sides must all be positive".into(),
            ));
        }
        let (a, b) = if leg1 < leg2 {
            (leg1, leg2)
        } else {
            (leg2, leg1)
        };
        if a == b {
            return Err(Error::Domain(
                "integer right triangles cannot have equal legs".into(),
            ));
        }
        if &a * &a + &b * &b != &hyp * &hyp {
            return Err(Error::Domain(format!(
                "({a}, {b}, {hyp}) is not a Pythagorean triple"
            )));
        }
        Ok(PythTriple { a, b, c: hyp })
    }

    /// Smaller leg.
    pub fn a(&self) -> &BigUint {
        &self.a
    }

    /// Larger leg.
    pub fn b(&self) -> &BigUint {
        &self.b
    }

    /// Hypotenuse.
    pub fn c(&self) -> &BigUint {
        &self.c
    }

    pub fn sides(&self) -> [&BigUint; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// Half of `a·b`; always integral since one leg of an integer right
    /// triangle is even.
    pub fn area(&self) -> BigUint {
        let product = &self.a * &self.b;
        debug_assert!(product.is_even());
        product / 2u32
    }

    pub fn scaled(&self, factor: &BigUint) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::Domain("scale factor must be positive".into()));
        }
        Ok(PythTriple {
            a: &self.a * factor,
            b: &self.b * factor,
            c: &self.c * factor,
        })
    }

    /// The three transformed triples, each tagged with its transform.
    pub fn lemma1(&self) -> [(Lemma1, PythTriple); 3] {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let t1 = PythTriple::new(2u32 * a * c, b * b, a * a + c * c)
            .expect("transform 1 preserves the triple identity");
        let t2 = PythTriple::new(2u32 * b * c, a * a, b * b + c * c)
            .expect("transform 2 preserves the triple identity");
        let t3 = PythTriple::new(2u32 * a * b, b * b - a * a, c * c)
            .expect("transform 3 preserves the triple identity");
        [
            (Lemma1::One, t1),
            (Lemma1::Two, t2),
            (Lemma1::Three, t3),
        ]
    }

    /// The transform whose result has half-area `leg·hyp·(other leg)²`,
    /// selected by leg value. Returns the transform tag and the new triple.
    pub fn pair_leg_with_hyp(&self, leg: &BigUint) -> (Lemma1, PythTriple) {
        assert!(
            leg == &self.a || leg == &self.b,
            "pair_leg_with_hyp: {leg} is not a leg of {self}"
        );
        let (a, b, c) = (&self.a, &self.b, &self.c);
        if leg == a {
            let t = PythTriple::new(2u32 * a * c, b * b, a * a + c * c)
                .expect("transform 1 preserves the triple identity");
            (Lemma1::One, t)
        } else {
            let t = PythTriple::new(2u32 * b * c, a * a, b * b + c * c)
                .expect("transform 2 preserves the triple identity");
            (Lemma1::Two, t)
        }
    }

    /// The five congruent numbers this triple yields, each with a witness
    /// triangle whose half-area is the value times a perfect square.
    pub fn corollary2(&self) -> [CongruentSource; 5] {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let ac = a * c;
        let bc = b * c;
        let leg_diff = b * b - a * a;
        let sum_ac = a * a + c * c;
        let sum_bc = b * b + c * c;

        let lemma = self.lemma1();
        let (_, t1) = &lemma[0];
        let (_, t2) = &lemma[1];
        let (_, t3) = &lemma[2];

        let src = |kind: Corollary2Kind,
                   raw: BigUint,
                   factorization: Factorization,
                   witness: PythTriple,
                   transforms: Vec<Lemma1>| {
            debug_assert_eq!(factorization.n(), &raw);
            CongruentSource {
                kind,
                squarefree: factorization.squarefree_part(),
                raw,
                witness,
                transforms,
            }
        };

        // ac and bc are the half-areas of transforms 1 and 2 up to the
        // square factors b² and a².
        let ac_src = src(
            Corollary2Kind::Ac,
            ac.clone(),
            factorize_product(&[a.clone(), c.clone()]).expect("positive pieces"),
            t1.clone(),
            vec![Lemma1::One],
        );
        let bc_src = src(
            Corollary2Kind::Bc,
            bc.clone(),
            factorize_product(&[b.clone(), c.clone()]).expect("positive pieces"),
            t2.clone(),
            vec![Lemma1::Two],
        );
        // b² − a² is a leg of transform 3; pairing it with that triple's
        // hypotenuse gives half-area (b² − a²)·(2abc)².
        let (tag3, w3) = t3.pair_leg_with_hyp(&leg_diff);
        let diff_src = src(
            Corollary2Kind::LegSquareDiff,
            leg_diff.clone(),
            factorize_product(&[b - a, b + a]).expect("positive pieces"),
            w3,
            vec![Lemma1::Three, tag3],
        );
        // a² + c² and b² + c² are the hypotenuses of transforms 1 and 2;
        // pairing the square leg with them gives half-area value·(2abc)².
        let (tag1, w1) = t1.pair_leg_with_hyp(&(b * b));
        let sum_ac_src = src(
            Corollary2Kind::SumASqCSq,
            sum_ac.clone(),
            factorize_product(&[sum_ac]).expect("positive pieces"),
            w1,
            vec![Lemma1::One, tag1],
        );
        let (tag2, w2) = t2.pair_leg_with_hyp(&(a * a));
        let sum_bc_src = src(
            Corollary2Kind::SumBSqCSq,
            sum_bc.clone(),
            factorize_product(&[sum_bc]).expect("positive pieces"),
            w2,
            vec![Lemma1::Two, tag2],
        );
        [ac_src, bc_src, diff_src, sum_ac_src, sum_bc_src]
    }
}

impl fmt::Display for PythTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Which congruent-number expression a [`CongruentSource`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corollary2Kind {
    /// `a·c`
    Ac,
    /// `b·c`
    Bc,
    /// `b² − a²`
    LegSquareDiff,
    /// `a² + c²`
    SumASqCSq,
    /// `b² + c²`
    SumBSqCSq,
}

impl Corollary2Kind {
    pub fn label(&self) -> &'static str {
        match self {
            Corollary2Kind::Ac => "ac",
            Corollary2Kind::Bc => "bc",
            Corollary2Kind::LegSquareDiff => "b2-a2",
            Corollary2Kind::SumASqCSq => "a2+c2",
            Corollary2Kind::SumBSqCSq => "b2+c2",
        }
    }
}

/// A congruent-number claim: `raw` is congruent, witnessed by an integer
/// triangle whose half-area equals `raw` times a perfect square.
#[derive(Debug, Clone)]
pub struct CongruentSource {
    pub kind: Corollary2Kind,
    pub raw: BigUint,
    pub squarefree: BigUint,
    pub witness: PythTriple,
    pub transforms: Vec<Lemma1>,
}

impl CongruentSource {
    pub fn transform_label(&self) -> String {
        self.transforms
            .iter()
            .map(Lemma1::label)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Generator parameters for primitive triples: `s > t ≥ 1`, coprime,
/// opposite parity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePair {
    s: BigUint,
    t: BigUint,
}

impl TriplePair {
    pub fn new(s: BigUint, t: BigUint) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::InvalidParameters("t must be at least 1".into()));
        }
        if s <= t {
            return Err(Error::InvalidParameters(format!(
                "s must exceed t (got s = {s}, t = {t})"
            )));
        }
        let g = s.gcd(&t);
        if !g.is_one() {
            return Err(Error::InvalidParameters(format!(
                "s and t must be coprime (gcd = {g})"
            )));
        }
        if s.is_even() == t.is_even() {
            return Err(Error::InvalidParameters(
                "s and t must have opposite parity (s - t odd)".into(),
            ));
        }
        Ok(TriplePair { s, t })
    }

    pub fn s(&self) -> &BigUint {
        &self.s
    }

    pub fn t(&self) -> &BigUint {
        &self.t
    }

    /// Legs in parameter order, before normalization: `(s² − t², 2st)`.
    pub fn raw_legs(&self) -> (BigUint, BigUint) {
        let (s, t) = (&self.s, &self.t);
        (s * s - t * t, 2u32 * s * t)
    }

    pub fn hypotenuse(&self) -> BigUint {
        let (s, t) = (&self.s, &self.t);
        s * s + t * t
    }

    /// The primitive triple `(s² − t², 2st, s² + t²)`.
    pub fn triple(&self) -> PythTriple {
        let (leg1, leg2) = self.raw_legs();
        PythTriple::new(leg1, leg2, self.hypotenuse())
            .expect("parametrized triples satisfy the identity")
    }
}

impl fmt::Display for TriplePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s = {}, t = {})", self.s, self.t)
    }
}
