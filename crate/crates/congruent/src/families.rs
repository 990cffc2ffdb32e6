//! Polynomial congruent-number families: the six two-parameter expressions,
//! the one-parameter variant obtained by substituting (x², 2y²), and the 21
//! residue-class families with printed-vs-derived cross-checking.
//!
//! Every printed polynomial is evaluated verbatim and compared against the
//! value recomputed from the underlying triple construction. Where the two
//! disagree by a non-square factor the entry is flagged rather than silently
//! corrected, and only derived values are ever certified.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{difference_of_squares, factorize_product};
use crate::triples::{Lemma1, PythTriple, TriplePair};
use crate::{Error, Result};

/// The six two-parameter expressions evaluated at a valid pair `(s, t)`,
/// with the last one kept in both its printed and derived forms.
#[derive(Debug, Clone)]
pub struct Corollary4Values {
    pub s: BigUint,
    pub t: BigUint,
    /// `st(s² − t²)`, the half-area of the parametrized triple.
    pub a: BigUint,
    /// `st(s² + t²)/2`, a quarter of leg·hypotenuse `2st·(s² + t²)`.
    pub b: BigUint,
    /// `s⁴ − t⁴`.
    pub c: BigUint,
    /// `2(s⁴ + t⁴)`.
    pub d: BigUint,
    /// `s⁴ + t⁴ + 6s²t²`.
    pub e: BigUint,
    /// `4s²t² − s⁴ − t⁴` as printed; negative at (2, 1).
    pub f_printed: BigInt,
    /// `6s²t² − s⁴ − t⁴`, the value the triple identity forces.
    pub f_derived: BigInt,
}

impl Corollary4Values {
    pub fn compute(pair: &TriplePair) -> Self {
        let s = pair.s().clone();
        let t = pair.t().clone();
        let s2 = &s * &s;
        let t2 = &t * &t;
        let s4 = &s2 * &s2;
        let t4 = &t2 * &t2;
        let st = &s * &t;
        let s2t2 = &s2 * &t2;
        let a = &st * (&s2 - &t2);
        let b = &st * (&s2 + &t2) / 2u32;
        let c = &s4 - &t4;
        let d = 2u32 * (&s4 + &t4);
        let e = &s4 + &t4 + 6u32 * &s2t2;
        let sum4 = BigInt::from(&s4 + &t4);
        let f_printed = BigInt::from(4u32 * &s2t2) - &sum4;
        let f_derived = BigInt::from(6u32 * &s2t2) - &sum4;
        Corollary4Values {
            s,
            t,
            a,
            b,
            c,
            d,
            e,
            f_printed,
            f_derived,
        }
    }

    /// The printed form of the sixth expression never matches the derived
    /// one (they differ by 2s²t²); the flag records it per evaluation.
    pub fn f_discrepant(&self) -> bool {
        self.f_printed != self.f_derived
    }
}

/// The substitution `s = x²`, `t = 2y²` in the second expression. Only the
/// derived `x⁴ + 4y⁴` is certified; the printed `x⁴ + 4y²` is evaluated for
/// comparison.
#[derive(Debug, Clone)]
pub struct Remark5Value {
    pub x: BigUint,
    pub y: BigUint,
    /// `x⁴ + 4y⁴`: `B(x², 2y²) = x²y²(x⁴ + 4y⁴)`.
    pub derived: BigUint,
    /// `x⁴ + 4y²` as printed.
    pub printed: BigUint,
    /// Square-free part of the derived value: the congruent number.
    pub squarefree: BigUint,
    /// The full `B(x², 2y²)` value.
    pub b_value: BigUint,
}

pub fn remark5_variant(x: &BigUint, y: &BigUint) -> Result<Remark5Value> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::InvalidParameters(
            "x and y must both be positive".into(),
        ));
    }
    let s = x * x;
    let t = 2u32 * y * y;
    // TriplePair validation covers x odd, gcd(x, 2y) = 1, and x² > 2y².
    let pair = TriplePair::new(s, t)?;
    let values = Corollary4Values::compute(&pair);
    let x4 = x * x * x * x;
    let y2 = y * y;
    let derived = &x4 + 4u32 * &y2 * &y2;
    let printed = &x4 + 4u32 * &y2;
    // B = x²y²(x⁴ + 4y⁴) exactly.
    debug_assert_eq!(values.b, x * x * &y2 * &derived);
    let squarefree = factorize_product(std::slice::from_ref(&derived))?.squarefree_part();
    Ok(Remark5Value {
        x: x.clone(),
        y: y.clone(),
        derived,
        printed,
        squarefree,
        b_value: values.b,
    })
}

/// The seven residue classes of the one-parameter families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyClass {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// How a sub-entry's derived value is read off the class triple
/// `(n, 2st, s² + t²)` built from `n = s² − t²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DerivedKind {
    /// `st·n`, the half-area.
    HalfArea,
    /// `n·(s² + t²)`, the decomposition leg times hypotenuse.
    RawAc,
    /// `2st·(s² + t²)`.
    RawBc,
}

impl FamilyClass {
    pub fn all() -> [FamilyClass; 7] {
        use FamilyClass::*;
        [A, B, C, D, E, F, G]
    }

    pub fn label(&self) -> &'static str {
        match self {
            FamilyClass::A => "A",
            FamilyClass::B => "B",
            FamilyClass::C => "C",
            FamilyClass::D => "D",
            FamilyClass::E => "E",
            FamilyClass::F => "F",
            FamilyClass::G => "G",
        }
    }

    /// The residue form this class represents, as a function of k.
    pub fn n_class_form(&self) -> &'static str {
        match self {
            FamilyClass::A => "4k",
            FamilyClass::B => "4k+1",
            FamilyClass::C => "2k+1",
            FamilyClass::D => "4k+3",
            FamilyClass::E => "8k",
            FamilyClass::F => "8k+1",
            FamilyClass::G => "8k+3",
        }
    }

    pub fn n_class(&self, k: u64) -> BigUint {
        let k = BigUint::from(k);
        match self {
            FamilyClass::A => 4u32 * k,
            FamilyClass::B => 4u32 * k + 1u32,
            FamilyClass::C => 2u32 * k + 1u32,
            FamilyClass::D => 4u32 * k + 3u32,
            FamilyClass::E => 8u32 * k,
            FamilyClass::F => 8u32 * k + 1u32,
            FamilyClass::G => 8u32 * k + 3u32,
        }
    }

    /// The printed polynomials, as factor lists so square-free parts stay
    /// cheap to compute.
    fn printed_pieces(&self, k: u64) -> [Vec<BigUint>; 3] {
        let kb = BigUint::from(k);
        let big = |n: u64| BigUint::from(n);
        let k2 = &kb * &kb;
        match self {
            // k(k²−1), 2k(k²+1), k⁴−1
            FamilyClass::A => [
                vec![kb.clone(), &k2 - 1u32],
                vec![big(2), kb.clone(), &k2 + 1u32],
                vec![&k2 - 1u32, &k2 + 1u32],
            ],
            // k(2k+1)(4k+1), 2k(2k+1)(8k²+4k+1), (4k+1)(8k²+4k+1)
            FamilyClass::B => {
                let q = 8u32 * &k2 + 4u32 * &kb + 1u32;
                [
                    vec![kb.clone(), 2u32 * &kb + 1u32, 4u32 * &kb + 1u32],
                    vec![big(2), kb.clone(), 2u32 * &kb + 1u32, q.clone()],
                    vec![4u32 * &kb + 1u32, q],
                ]
            }
            // k(k+1)(2k+1), 2k(k+1)(2k²+2k+1), (2k+1)(2k²+2k+1)
            FamilyClass::C => {
                let q = 2u32 * &k2 + 2u32 * &kb + 1u32;
                [
                    vec![kb.clone(), &kb + 1u32, 2u32 * &kb + 1u32],
                    vec![big(2), kb.clone(), &kb + 1u32, q.clone()],
                    vec![2u32 * &kb + 1u32, q],
                ]
            }
            // 2(k+1)(2k+1)(4k+3), (k+1)(2k+1)(8k²+12k+5), (4k+3)(8k²+12k+5)
            FamilyClass::D => {
                let q = 8u32 * &k2 + 12u32 * &kb + 5u32;
                [
                    vec![big(2), &kb + 1u32, 2u32 * &kb + 1u32, 4u32 * &kb + 3u32],
                    vec![&kb + 1u32, 2u32 * &kb + 1u32, q.clone()],
                    vec![4u32 * &kb + 3u32, q],
                ]
            }
            // 2k(2k+1)(2k−1), k(4k²+1), (2k+1)(4k²+1)
            FamilyClass::E => {
                let q = 4u32 * &k2 + 1u32;
                [
                    vec![big(2), kb.clone(), 2u32 * &kb + 1u32, 2u32 * &kb - 1u32],
                    vec![kb.clone(), q.clone()],
                    vec![2u32 * &kb + 1u32, q],
                ]
            }
            // k(4k+1)(8k+1), 2k(4k+1)(32k²+8k+1), (8k+1)(32k²+8k+1)
            FamilyClass::F => {
                let q = 32u32 * &k2 + 8u32 * &kb + 1u32;
                [
                    vec![kb.clone(), 4u32 * &kb + 1u32, 8u32 * &kb + 1u32],
                    vec![big(2), kb.clone(), 4u32 * &kb + 1u32, q.clone()],
                    vec![8u32 * &kb + 1u32, q],
                ]
            }
            // 2(2k+1)(4k+1)(8k+3), (8k+3)(32k²+24k+5), (2k+1)(4k+1)(32k²+24k+5)
            FamilyClass::G => {
                let q = 32u32 * &k2 + 24u32 * &kb + 5u32;
                [
                    vec![big(2), 2u32 * &kb + 1u32, 4u32 * &kb + 1u32, 8u32 * &kb + 3u32],
                    vec![8u32 * &kb + 3u32, q.clone()],
                    vec![2u32 * &kb + 1u32, 4u32 * &kb + 1u32, q],
                ]
            }
        }
    }

    /// Which derived quantity each printed sub-entry corresponds to.
    fn derived_kinds(&self) -> [DerivedKind; 3] {
        use DerivedKind::*;
        match self {
            FamilyClass::A | FamilyClass::E | FamilyClass::G => [HalfArea, RawAc, RawBc],
            FamilyClass::B | FamilyClass::C | FamilyClass::D | FamilyClass::F => {
                [HalfArea, RawBc, RawAc]
            }
        }
    }
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Comparison outcome between a printed polynomial and its derived value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryStatus {
    /// Printed equals derived exactly.
    Match,
    /// Equal square-free parts: same congruent number.
    SquareEquivalent,
    /// Square-free parts differ; the printed value is not certified.
    Discrepancy,
    /// The class decomposition degenerates (t = 0) and yields no triple.
    Degenerate,
}

impl EntryStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntryStatus::Match => "match",
            EntryStatus::SquareEquivalent => "square-equivalent",
            EntryStatus::Discrepancy => "discrepancy",
            EntryStatus::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for EntryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The triple-derived value behind a family entry, with its witness data.
#[derive(Debug, Clone)]
pub struct FamilyDerived {
    pub value: BigUint,
    pub squarefree: BigUint,
    /// The class triple the value is read off.
    pub source: PythTriple,
    /// Witness triangle whose half-area is `value` times a perfect square.
    pub witness: PythTriple,
    pub transforms: Vec<Lemma1>,
}

impl FamilyDerived {
    pub fn transform_label(&self) -> String {
        if self.transforms.is_empty() {
            "identity".to_string()
        } else {
            self.transforms
                .iter()
                .map(Lemma1::label)
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

/// One evaluated family polynomial at a concrete k.
#[derive(Debug, Clone)]
pub struct FamilyEntry {
    pub class: FamilyClass,
    /// Sub-entry index, 1 through 3.
    pub sub: u8,
    pub k: u64,
    pub n_class: BigUint,
    pub printed: BigUint,
    pub printed_squarefree: Option<BigUint>,
    pub derived: Option<FamilyDerived>,
    pub status: EntryStatus,
}

impl FamilyEntry {
    pub fn sub_label(&self) -> String {
        format!("{}{}", self.class.label(), self.sub)
    }
}

/// Evaluates the three printed polynomials of one class at k ≥ 1 and
/// recomputes each value from the class decomposition.
pub fn theorem6(class: FamilyClass, k: u64) -> Result<[FamilyEntry; 3]> {
    if k == 0 {
        return Err(Error::Domain("family evaluation requires k >= 1".into()));
    }
    let n_class = class.n_class(k);
    let printed_pieces = class.printed_pieces(k);
    let decomposition =
        difference_of_squares(&n_class).expect("class representatives are never 2 mod 4");

    let printed_values: Vec<BigUint> = printed_pieces
        .iter()
        .map(|pieces| pieces.iter().fold(BigUint::one(), |acc, p| acc * p))
        .collect();

    if decomposition.is_degenerate() {
        // n_class ∈ {1, 4}: only b = 0 decompositions exist, so there is no
        // triple to derive from and nothing to certify.
        let entries: Vec<FamilyEntry> = printed_values
            .into_iter()
            .enumerate()
            .map(|(i, printed)| FamilyEntry {
                class,
                sub: (i + 1) as u8,
                k,
                n_class: n_class.clone(),
                printed,
                printed_squarefree: None,
                derived: None,
                status: EntryStatus::Degenerate,
            })
            .collect();
        return Ok(entries.try_into().expect("three entries"));
    }

    let s = decomposition.a;
    let t = decomposition.b;
    let raw_a = &s * &s - &t * &t;
    debug_assert_eq!(raw_a, n_class);
    let raw_b = 2u32 * &s * &t;
    let hyp = &s * &s + &t * &t;
    let class_triple = PythTriple::new(raw_a.clone(), raw_b.clone(), hyp.clone())
        .expect("difference-of-squares decompositions give valid triples");

    let mut entries = Vec::with_capacity(3);
    for (i, kind) in class.derived_kinds().into_iter().enumerate() {
        let (pieces, witness, transforms): (Vec<BigUint>, PythTriple, Vec<Lemma1>) = match kind {
            DerivedKind::HalfArea => (
                vec![s.clone(), t.clone(), n_class.clone()],
                class_triple.clone(),
                vec![],
            ),
            DerivedKind::RawAc => {
                let (tag, w) = class_triple.pair_leg_with_hyp(&raw_a);
                (vec![n_class.clone(), hyp.clone()], w, vec![tag])
            }
            DerivedKind::RawBc => {
                let (tag, w) = class_triple.pair_leg_with_hyp(&raw_b);
                (
                    vec![BigUint::from(2u32), s.clone(), t.clone(), hyp.clone()],
                    w,
                    vec![tag],
                )
            }
        };
        let factorization = factorize_product(&pieces)?;
        let value = factorization.n().clone();
        let squarefree = factorization.squarefree_part();
        let printed = printed_values[i].clone();
        let printed_squarefree = factorize_product(&printed_pieces[i])?.squarefree_part();
        let status = if printed == value {
            EntryStatus::Match
        } else if printed_squarefree == squarefree {
            EntryStatus::SquareEquivalent
        } else {
            EntryStatus::Discrepancy
        };
        entries.push(FamilyEntry {
            class,
            sub: (i + 1) as u8,
            k,
            n_class: n_class.clone(),
            printed,
            printed_squarefree: Some(printed_squarefree),
            derived: Some(FamilyDerived {
                value,
                squarefree,
                source: class_triple.clone(),
                witness,
                transforms,
            }),
            status,
        });
    }
    Ok(entries.try_into().expect("three entries"))
}

/// All 21 polynomials evaluated for k = 1..=k_max, ordered by
/// (class, sub, k).
#[derive(Debug, Clone, Default)]
pub struct FamilySweep {
    pub entries: Vec<FamilyEntry>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StatusTally {
    pub matches: usize,
    pub square_equivalent: usize,
    pub discrepancies: usize,
    pub degenerate: usize,
}

impl FamilySweep {
    pub fn discrepancies(&self) -> impl Iterator<Item = &FamilyEntry> {
        self.entries
            .iter()
            .filter(|e| e.status == EntryStatus::Discrepancy)
    }

    pub fn tally(&self) -> StatusTally {
        let mut t = StatusTally::default();
        for e in &self.entries {
            match e.status {
                EntryStatus::Match => t.matches += 1,
                EntryStatus::SquareEquivalent => t.square_equivalent += 1,
                EntryStatus::Discrepancy => t.discrepancies += 1,
                EntryStatus::Degenerate => t.degenerate += 1,
            }
        }
        t
    }
}

/// Evaluates every class at every k up to k_max. k_max = 0 gives an empty
/// report.
pub fn sweep_families(k_max: u64) -> FamilySweep {
    let mut entries = Vec::with_capacity(21 * k_max as usize);
    for class in FamilyClass::all() {
        for k in 1..=k_max {
            entries.extend(theorem6(class, k).expect("k >= 1"));
        }
    }
    entries.sort_by_key(|e| (e.class, e.sub, e.k));
    FamilySweep { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn pair(s: u64, t: u64) -> TriplePair {
        TriplePair::new(BigUint::from(s), BigUint::from(t)).unwrap()
    }

    #[test]
    fn corollary4_at_2_1() {
        let v = Corollary4Values::compute(&pair(2, 1));
        assert_eq!(v.a.to_u64().unwrap(), 6);
        assert_eq!(v.b.to_u64().unwrap(), 5);
        assert_eq!(v.c.to_u64().unwrap(), 15);
        assert_eq!(v.d.to_u64().unwrap(), 34);
        assert_eq!(v.e.to_u64().unwrap(), 41);
        assert_eq!(v.f_printed, BigInt::from(-1));
        assert_eq!(v.f_derived, BigInt::from(7));
        assert!(v.f_discrepant());
    }

    #[test]
    fn corollary4_at_3_2() {
        let v = Corollary4Values::compute(&pair(3, 2));
        assert_eq!(v.a.to_u64().unwrap(), 30);
        assert_eq!(v.b.to_u64().unwrap(), 39);
        assert_eq!(v.c.to_u64().unwrap(), 65);
        assert_eq!(v.d.to_u64().unwrap(), 194);
        assert_eq!(v.e.to_u64().unwrap(), 313);
        assert_eq!(v.f_derived, BigInt::from(119));
    }

    #[test]
    fn corollary4_identities_against_raw_triple() {
        // a, 4b, c, d, e, f_derived are exactly the half-area, bc, ac,
        // a²+c², b²+c², b²−a² of the raw parametrized legs.
        for s in 2u64..=40 {
            for t in 1..s {
                let Ok(p) = TriplePair::new(BigUint::from(s), BigUint::from(t)) else {
                    continue;
                };
                let v = Corollary4Values::compute(&p);
                let (ra, rb) = p.raw_legs();
                let rc = p.hypotenuse();
                assert_eq!(&v.a * 2u32, &ra * &rb, "area, (s,t)=({s},{t})");
                assert_eq!(&v.b * 4u32, &rb * &rc, "bc, (s,t)=({s},{t})");
                assert_eq!(v.c, &ra * &rc, "ac, (s,t)=({s},{t})");
                assert_eq!(v.d, &ra * &ra + &rc * &rc, "(s,t)=({s},{t})");
                assert_eq!(v.e, &rb * &rb + &rc * &rc, "(s,t)=({s},{t})");
                assert_eq!(
                    v.f_derived,
                    BigInt::from(&rb * &rb) - BigInt::from(&ra * &ra),
                    "(s,t)=({s},{t})"
                );
            }
        }
    }

    #[test]
    fn remark5_examples() {
        let r = remark5_variant(&BigUint::from(3u32), &BigUint::from(1u32)).unwrap();
        assert_eq!(r.derived.to_u64().unwrap(), 85);
        assert_eq!(r.squarefree.to_u64().unwrap(), 85);
        assert_eq!(r.b_value.to_u64().unwrap(), 765); // 9·85

        let r = remark5_variant(&BigUint::from(3u32), &BigUint::from(2u32)).unwrap();
        assert_eq!(r.derived.to_u64().unwrap(), 145);
        assert_eq!(r.squarefree.to_u64().unwrap(), 145);

        let r = remark5_variant(&BigUint::from(5u32), &BigUint::from(1u32)).unwrap();
        assert_eq!(r.derived.to_u64().unwrap(), 629);
        assert_eq!(r.printed.to_u64().unwrap(), 629); // y = 1 makes both agree
    }

    #[test]
    fn remark5_rejects_bad_parameters() {
        // x even violates coprimality with t = 2y².
        assert!(remark5_variant(&BigUint::from(2u32), &BigUint::from(1u32)).is_err());
        // x² < 2y².
        assert!(remark5_variant(&BigUint::from(3u32), &BigUint::from(3u32)).is_err());
        assert!(remark5_variant(&BigUint::from(3u32), &BigUint::from(0u32)).is_err());
    }

    fn entry_values(class: FamilyClass, k: u64) -> Vec<(u64, Option<u64>, EntryStatus)> {
        theorem6(class, k)
            .unwrap()
            .iter()
            .map(|e| {
                (
                    e.printed.to_u64().unwrap(),
                    e.derived.as_ref().map(|d| d.value.to_u64().unwrap()),
                    e.status,
                )
            })
            .collect()
    }

    #[test]
    fn class_c_at_1_matches_3_4_5() {
        let got = entry_values(FamilyClass::C, 1);
        assert_eq!(
            got,
            vec![
                (6, Some(6), EntryStatus::Match),
                (20, Some(20), EntryStatus::Match),
                (15, Some(15), EntryStatus::Match),
            ]
        );
    }

    #[test]
    fn class_a_at_2_is_square_equivalent() {
        // s = 3, t = 1 gives the triple (8, 6, 10): every derived value is
        // four times the printed one.
        let got = entry_values(FamilyClass::A, 2);
        assert_eq!(
            got,
            vec![
                (6, Some(24), EntryStatus::SquareEquivalent),
                (20, Some(80), EntryStatus::SquareEquivalent),
                (15, Some(60), EntryStatus::SquareEquivalent),
            ]
        );
    }

    #[test]
    fn class_b_at_1_has_the_factor_two_discrepancies() {
        let got = entry_values(FamilyClass::B, 1);
        assert_eq!(got[0], (15, Some(30), EntryStatus::Discrepancy));
        assert_eq!(got[1], (78, Some(156), EntryStatus::Discrepancy));
        assert_eq!(got[2], (65, Some(65), EntryStatus::Match));
    }

    #[test]
    fn class_e_third_entry_diverges_from_k_2() {
        // k = 1: ratio 4, square-equivalent.
        let got = entry_values(FamilyClass::E, 1);
        assert_eq!(got[2], (15, Some(60), EntryStatus::SquareEquivalent));
        // k = 2: the derived value carries the extra factor 2k−1 = 3.
        let got = entry_values(FamilyClass::E, 2);
        assert_eq!(got[2], (85, Some(1020), EntryStatus::Discrepancy));
    }

    #[test]
    fn class_a_at_1_degenerates() {
        let got = theorem6(FamilyClass::A, 1).unwrap();
        for e in &got {
            assert_eq!(e.status, EntryStatus::Degenerate);
            assert!(e.derived.is_none());
        }
        assert_eq!(got[0].printed, BigUint::zero());
        assert_eq!(got[1].printed.to_u64().unwrap(), 4);
    }

    #[test]
    fn theorem6_rejects_k_zero() {
        assert!(matches!(
            theorem6(FamilyClass::C, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sweep_at_1_has_21_entries_with_only_b_discrepancies() {
        let sweep = sweep_families(1);
        assert_eq!(sweep.entries.len(), 21);
        let discrepant: Vec<String> = sweep.discrepancies().map(|e| e.sub_label()).collect();
        assert_eq!(discrepant, vec!["B1".to_string(), "B2".to_string()]);
        assert_eq!(sweep.tally().degenerate, 3); // class A at k = 1
    }

    #[test]
    fn sweep_at_0_is_empty() {
        assert!(sweep_families(0).entries.is_empty());
    }

    #[test]
    fn sweep_discrepancy_pattern_to_k_60() {
        use crate::arith::is_perfect_square;
        let sweep = sweep_families(60);
        for e in &sweep.entries {
            let is_discrepant = e.status == EntryStatus::Discrepancy;
            let expected = match (e.class, e.sub) {
                (FamilyClass::B, 1) | (FamilyClass::B, 2) => true,
                (FamilyClass::E, 3) => {
                    e.k >= 2 && is_perfect_square(&BigUint::from(2 * e.k - 1)).is_none()
                }
                _ => false,
            };
            assert_eq!(is_discrepant, expected, "{} k={}", e.sub_label(), e.k);
        }
    }

    #[test]
    fn remark4_product_of_three_consecutive_numbers() {
        // A1 = k(k²−1) is literally (k−1)k(k+1).
        for k in 1..=1000u64 {
            let kb = BigUint::from(k);
            let poly = &kb * (&kb * &kb - 1u32);
            let consecutive = (&kb - 1u32) * &kb * (&kb + 1u32);
            assert_eq!(poly, consecutive);
        }
    }

    #[test]
    fn derived_witness_areas_are_value_times_square() {
        use crate::arith::is_perfect_square;
        use num_integer::Integer;
        for class in FamilyClass::all() {
            for k in 1..=25u64 {
                for e in theorem6(class, k).unwrap() {
                    let Some(d) = &e.derived else { continue };
                    let area = d.witness.area();
                    let (q, r) = area.div_rem(&d.value);
                    assert!(r.is_zero(), "{} k={k}", e.sub_label());
                    assert!(
                        is_perfect_square(&q).is_some(),
                        "{} k={k}: {q} not square",
                        e.sub_label()
                    );
                }
            }
        }
    }
}
