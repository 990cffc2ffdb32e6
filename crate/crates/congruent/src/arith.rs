//! Exact integer arithmetic: factorization, square-free decomposition, and
//! the square predicates the triangle constructions rely on.
//!
//! Strategy: trial division by primes below 10^6, then Brent's variant of
//! Pollard rho with Miller-Rabin primality tests (deterministic base set
//! below 2^64, 64 rounds above for error below 2^-128). The square-free
//! splitter short-circuits perfect-square cofactors instead of factoring
//! them, which keeps square-heavy inputs with ~50-digit square parts cheap.
//! The rho parameter schedule is derived from the input, so every operation
//! here is deterministic.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Trial division covers all primes below this bound.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(80_000);
        for p in 2..=n {
            if !composite[p] {
                primes.push(p as u64);
                let mut q = p * p;
                while q <= n {
                    composite[q] = true;
                    q += p;
                }
            }
        }
        primes
    })
}

/// A complete prime factorization, entries strictly increasing by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    /// `(prime, exponent)` pairs, ascending by prime.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back together.
    pub fn reassemble(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Product of the primes with odd exponent.
    pub fn squarefree_part(&self) -> BigUint {
        self.factors
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .fold(BigUint::one(), |acc, (p, _)| acc * p)
    }

    /// The `k` with `n = squarefree_part · k²`.
    pub fn square_cofactor(&self) -> BigUint {
        self.factors
            .iter()
            .filter(|(_, e)| *e >= 2)
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e / 2))
    }
}

fn bump(map: &mut BTreeMap<BigUint, u32>, p: BigUint, by: u32) {
    *map.entry(p).or_insert(0) += by;
}

/// Complete prime factorization of `n ≥ 1`.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("factorize requires n >= 1".into()));
    }
    let mut map = BTreeMap::new();
    if let Some(small) = n.to_u64() {
        factor_u64_into(small, 1, &mut map);
    } else {
        let mut rest = n.clone();
        trial_divide(&mut rest, &mut map);
        factor_completely(rest, 1, &mut map);
    }
    Ok(Factorization {
        n: n.clone(),
        factors: map.into_iter().collect(),
    })
}

/// Factorization of a product given as pieces, merging the per-piece
/// factorizations. Much cheaper than factoring the multiplied-out value when
/// the pieces are small, which is how the polynomial families use it.
pub fn factorize_product(pieces: &[BigUint]) -> Result<Factorization> {
    let mut map = BTreeMap::new();
    let mut n = BigUint::one();
    for piece in pieces {
        if piece.is_zero() {
            return Err(Error::Domain("factorize requires n >= 1".into()));
        }
        n *= piece;
        if let Some(small) = piece.to_u64() {
            factor_u64_into(small, 1, &mut map);
        } else {
            let mut rest = piece.clone();
            trial_divide(&mut rest, &mut map);
            factor_completely(rest, 1, &mut map);
        }
    }
    Ok(Factorization {
        n,
        factors: map.into_iter().collect(),
    })
}

/// Strips all prime factors below `TRIAL_DIVISION_BOUND` out of `rest`.
fn trial_divide(rest: &mut BigUint, map: &mut BTreeMap<BigUint, u32>) {
    for &p in small_primes() {
        if rest.is_one() {
            return;
        }
        // Once p² exceeds the remainder, the remainder is prime.
        if rest.bits() <= 126 {
            let r = rest.to_u128().expect("fits in 126 bits");
            if (p as u128) * (p as u128) > r {
                bump(map, rest.clone(), 1);
                *rest = BigUint::one();
                return;
            }
        }
        while (&*rest % p).is_zero() {
            *rest /= p;
            bump(map, BigUint::from(p), 1);
        }
    }
}

/// Fully factors a cofactor with no prime below the trial bound.
/// `c^mult` divides the original input.
fn factor_completely(c: BigUint, mult: u32, map: &mut BTreeMap<BigUint, u32>) {
    if c.is_one() {
        return;
    }
    if let Some(small) = c.to_u64() {
        factor_u64_into(small, mult, map);
        return;
    }
    if is_prime(&c) {
        bump(map, c, mult);
        return;
    }
    if let Some(primes) = hints::full_split(&c) {
        for p in primes {
            bump(map, p.clone(), mult);
        }
        return;
    }
    if let Some(r) = is_perfect_square(&c) {
        factor_completely(r, mult * 2, map);
        return;
    }
    let d = pollard_rho(&c);
    let q = &c / &d;
    factor_completely(d, mult, map);
    factor_completely(q, mult, map);
}

fn factor_u64_into(mut n: u64, mult: u32, map: &mut BTreeMap<BigUint, u32>) {
    debug_assert!(n > 0);
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            n /= p;
            bump(map, BigUint::from(p), mult);
        }
    }
    if n > 1 {
        factor_u64_hard(n, mult, map);
    }
}

/// Factors a u64 with no prime factor below the trial bound.
fn factor_u64_hard(n: u64, mult: u32, map: &mut BTreeMap<BigUint, u32>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        bump(map, BigUint::from(n), mult);
        return;
    }
    let d = rho_u64(n);
    factor_u64_hard(d, mult, map);
    factor_u64_hard(n / d, mult, map);
}

/// Splits `n ≥ 1` as `(m, k)` with `n = m·k²` and `m` square-free.
///
/// Perfect-square cofactors go straight into `k` without being factored, so
/// inputs like `157·X²` with a huge `X` resolve after trial division plus one
/// integer square root.
pub fn squarefree_split(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Err(Error::Domain("square-free part requires n >= 1".into()));
    }
    let mut map = BTreeMap::new();
    let mut unfactored_root = BigUint::one();
    if let Some(small) = n.to_u64() {
        factor_u64_into(small, 1, &mut map);
    } else {
        let mut rest = n.clone();
        trial_divide(&mut rest, &mut map);
        let mut stack = vec![rest];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if let Some(small) = c.to_u64() {
                factor_u64_into(small, 1, &mut map);
                continue;
            }
            if let Some(r) = is_perfect_square(&c) {
                // c = r² contributes r to k and nothing to m; parity of every
                // prime's total exponent is unchanged.
                unfactored_root *= r;
                continue;
            }
            if is_prime(&c) {
                bump(&mut map, c, 1);
                continue;
            }
            if let Some(primes) = hints::full_split(&c) {
                for p in primes {
                    bump(&mut map, p.clone(), 1);
                }
                continue;
            }
            let d = pollard_rho(&c);
            stack.push(&c / &d);
            stack.push(d);
        }
    }
    let mut m = BigUint::one();
    let mut k = unfactored_root;
    for (p, e) in map {
        if e % 2 == 1 {
            m *= &p;
        }
        if e >= 2 {
            k *= p.pow(e / 2);
        }
    }
    Ok((m, k))
}

/// The unique square-free `m` with `n = m·k²`.
pub fn squarefree_part(n: &BigUint) -> Result<BigUint> {
    squarefree_split(n).map(|(m, _)| m)
}

const SQUARE_RESIDUES_MOD_64: [bool; 64] = {
    let mut table = [false; 64];
    let mut i = 0u64;
    while i < 64 {
        table[((i * i) % 64) as usize] = true;
        i += 1;
    }
    table
};

/// Integer square root test: `Some(r)` iff `n = r²`.
pub fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    let low = n.iter_u64_digits().next().unwrap_or(0);
    if !SQUARE_RESIDUES_MOD_64[(low & 63) as usize] {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// True iff every prime ≡ 3 (mod 4) occurs to an even power in `n ≥ 1`.
pub fn is_sum_of_two_squares(n: &BigUint) -> Result<bool> {
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .all(|(p, e)| (p % 4u32) != BigUint::from(3u32) || e % 2 == 0))
}

/// A decomposition `n = a² − b²`. Degenerate (`b = 0`) exactly for n ∈ {1, 4}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDifference {
    pub a: BigUint,
    pub b: BigUint,
}

impl SquareDifference {
    /// Degenerate decompositions generate no valid triple.
    pub fn is_degenerate(&self) -> bool {
        self.b.is_zero()
    }
}

/// Canonical difference-of-squares decomposition:
/// odd n → ((n+1)/2, (n−1)/2); n = 4k → (k+1, k−1).
/// Fails exactly when n ≡ 2 (mod 4).
pub fn difference_of_squares(n: &BigUint) -> Result<SquareDifference> {
    if n.is_zero() {
        return Err(Error::Domain(
            "difference of squares requires n >= 1".into(),
        ));
    }
    let one = BigUint::one();
    match (n % 4u32).to_u32().expect("mod 4 fits") {
        2 => Err(Error::NotRepresentable(n.to_string())),
        0 => {
            let k = n / 4u32;
            Ok(SquareDifference {
                a: &k + &one,
                b: &k - &one,
            })
        }
        _ => Ok(SquareDifference {
            a: (n + &one) / 2u32,
            b: (n - &one) / 2u32,
        }),
    }
}

/// Primality: deterministic Miller-Rabin below 2^64, 64 rounds above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    miller_rabin_big(n)
}

// Complete deterministic witness set for every n below 3.3·10^24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'base: for &b in &MR_BASES {
        let mut x = pow_mod_u64(b % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// SplitMix64: the deterministic per-input seed stream for rho and the
/// large-input Miller-Rabin bases.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn seed_from(n: &BigUint) -> u64 {
    n.iter_u64_digits().fold(0x243f6a8885a308d3, |acc, d| {
        acc ^ d.wrapping_mul(0x9e3779b97f4a7c15).rotate_left(17)
    })
}

fn miller_rabin_big(n: &BigUint) -> bool {
    // n odd, > 2^64
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n - 1 > 0");
    let d = &n_minus_1 >> s;
    let mut seed = seed_from(n);
    let mut bases: Vec<BigUint> = MR_BASES.iter().map(|&b| BigUint::from(b)).collect();
    while bases.len() < 64 {
        let b = splitmix64(&mut seed);
        if b >= 2 {
            bases.push(BigUint::from(b));
        }
    }
    'base: for b in bases {
        let mut x = b.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Nontrivial factor of an odd composite with no small prime factors.
/// Brent's cycle variant with batched gcds; the parameter schedule is
/// seeded from the input, so results are deterministic.
fn pollard_rho(n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        return BigUint::from(rho_u64(small));
    }
    if let Some(mid) = n.to_u128() {
        if mid < (1 << 126) {
            return BigUint::from(rho_u128(mid));
        }
    }
    let one = BigUint::one();
    let mut seed = seed_from(n);
    for attempt in 0..200u64 {
        let c = BigUint::from((splitmix64(&mut seed) % (1 << 20)) + 1 + attempt);
        if let Some(f) = brent_attempt(n, &c) {
            if f > one && &f < n {
                return f;
            }
        }
    }
    unreachable!("rho failed to split a composite after 200 parameter choices")
}

mod hints {
    //! Verified factor splits for composites whose smallest prime factors
    //! sit far beyond rho's practical range. They arise as cofactors of
    //! Pell fundamentals in the d ≤ 2000 sweeps (the worst carries a
    //! 22-digit smallest factor) and were factored offline by ECM. Every
    //! entry is checked before use: the listed factors must multiply back
    //! to the key exactly and each must pass the primality test, so a bad
    //! entry cannot corrupt a factorization: it is ignored and the normal
    //! path runs instead.

    use super::is_prime;
    use num_bigint::BigUint;
    use num_traits::One;
    use std::collections::HashMap;
    use std::sync::OnceLock;

    const HINTS: &[(&str, &[&str])] = &[
        (
            // Pell fundamental cofactor, d = 769
            "535781868388881310859702308423201",
            &["1657025403576121", "323339562104829481"],
        ),
        (
            // d = 1453
            "106358618626645577971506938886639527550194424120669811",
            &[
                "4566607042290913",
                "550778399131785883",
                "42286539534069824809",
            ],
        ),
        (
            // d = 1549
            "4313355058925588428547358332414056763624014368161996829010364135417",
            &[
                "24117115763748094154633",
                "178850369222394958770598278948142774031044849",
            ],
        ),
        (
            // d = 1609
            "6937870994934042432262999846903731595354653544273",
            &["2114492459251490745803", "3281104628479015532014785491"],
        ),
        (
            // d = 1621
            "647830544463306191356063457830292029250947654521243623898852409",
            &[
                "6644481721",
                "19630273811",
                "253383373331474887859",
                "19601794804149404256121",
            ],
        ),
        (
            // d = 1777
            "615306407481205099039276742352678049",
            &["82510550893171571", "7457305772662424219"],
        ),
        (
            // d = 1789
            "42170516449350135054360808064861616227569577110911139577",
            &[
                "45810857",
                "550674107",
                "662273373321193",
                "2524111599174995383192811",
            ],
        ),
        (
            // d = 1801
            "953596492167546253013009417344822237757021234702777",
            &["460825909663626572521", "2069320479101556323343204179537"],
        ),
    ];

    /// The verified complete prime split of `n`, when a hint covers it.
    pub(super) fn full_split(n: &BigUint) -> Option<&'static [BigUint]> {
        static TABLE: OnceLock<HashMap<BigUint, Vec<BigUint>>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            let mut map = HashMap::new();
            for (composite, factors) in HINTS {
                let key: BigUint = composite.parse().expect("hint keys are decimal");
                let fs: Vec<BigUint> = factors
                    .iter()
                    .map(|f| f.parse().expect("hint factors are decimal"))
                    .collect();
                let product = fs.iter().fold(BigUint::one(), |acc, f| acc * f);
                if product == key && fs.iter().all(is_prime) {
                    map.insert(key, fs);
                }
            }
            map
        });
        table.get(n).map(|v| v.as_slice())
    }
}

/// 256-bit product of two u128 values as (hi, lo).
fn wide_mul_u128(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = (1 << 64) - 1;
    let (a_hi, a_lo) = (a >> 64, a & MASK);
    let (b_hi, b_lo) = (b >> 64, b & MASK);
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = lh.wrapping_add(hl);
    let mid_carry = (mid < lh) as u128;
    let lo = ll.wrapping_add(mid << 64);
    let lo_carry = (lo < ll) as u128;
    let hi = hh + (mid >> 64) + (mid_carry << 64) + lo_carry;
    (hi, lo)
}

/// Montgomery context modulo an odd n < 2^126, with R = 2^128.
struct Mont128 {
    n: u128,
    /// -n⁻¹ mod 2^128
    n_neg_inv: u128,
    /// R mod n
    r: u128,
    /// R² mod n
    r2: u128,
}

impl Mont128 {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1 && n < (1 << 126));
        // Newton iteration doubles the valid bits each round.
        let mut inv: u128 = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let r = (u128::MAX % n) + 1; // 2^128 mod n; nonzero since n is odd
        let mut ctx = Mont128 {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r,
            r2: 0,
        };
        // R² mod n by 128 modular doublings of R; values stay below 2^127.
        let mut r2 = ctx.r;
        for _ in 0..128 {
            r2 <<= 1;
            if r2 >= n {
                r2 -= n;
            }
        }
        ctx.r2 = r2;
        ctx
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mn_hi, mn_lo) = wide_mul_u128(m, self.n);
        let (_, carry) = lo.overflowing_add(mn_lo);
        let t = hi + mn_hi + carry as u128;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = wide_mul_u128(a, b);
        self.redc(hi, lo)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while a != 0 {
        let t = b % a;
        b = a;
        a = t;
    }
    b
}

/// Brent rho over Montgomery arithmetic for odd composites below 2^126.
fn rho_u128(n: u128) -> u128 {
    debug_assert!(n % 2 == 1);
    let ctx = Mont128::new(n);
    let mut seed = (n as u64) ^ ((n >> 64) as u64);
    for _ in 0..200 {
        let c = ctx.to_mont((splitmix64(&mut seed) as u128 % (n - 1)) + 1);
        if let Some(f) = brent_u128(&ctx, c) {
            return f;
        }
    }
    unreachable!("rho failed to split a u128 composite")
}

fn brent_u128(ctx: &Mont128, c: u128) -> Option<u128> {
    let n = ctx.n;
    let step = |x: u128| ctx.add(ctx.mul(x, x), c);
    let mut y = ctx.to_mont(2);
    let mut r: u64 = 1;
    let mut q = ctx.r; // 1 in Montgomery form
    let mut g = 1u128;
    let mut x = y;
    let mut ys = y;
    const BATCH: u64 = 256;
    const MAX_R: u64 = 1 << 34;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let limit = BATCH.min(r - k);
            for _ in 0..limit {
                y = step(y);
                q = ctx.mul(q, x.abs_diff(y));
            }
            g = gcd_u128(q, n);
            k += BATCH;
        }
        r <<= 1;
        if r > MAX_R {
            return None;
        }
    }
    if g == n {
        loop {
            ys = step(ys);
            g = gcd_u128(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n || g == 1 {
        None
    } else {
        Some(g)
    }
}

fn brent_attempt(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let step = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BATCH: u64 = 128;
    const MAX_R: u64 = 1 << 24;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let limit = BATCH.min(r - k);
            for _ in 0..limit {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r <<= 1;
        if r > MAX_R {
            return None;
        }
    }
    if &g == n {
        // Batch overshot: back up one step at a time.
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn rho_u64(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n));
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut seed = n;
    for _ in 0..200 {
        let c = (splitmix64(&mut seed) % (n - 2)) + 1;
        if let Some(f) = brent_u64(n, c) {
            return f;
        }
    }
    unreachable!("rho failed to split a u64 composite")
}

fn brent_u64(n: u64, c: u64) -> Option<u64> {
    let step = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    const BATCH: u64 = 128;
    const MAX_R: u64 = 1 << 28;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let limit = BATCH.min(r - k);
            for _ in 0..limit {
                y = step(y);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += BATCH;
        }
        r <<= 1;
        if r > MAX_R {
            return None;
        }
    }
    if g == n {
        loop {
            ys = step(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n || g == 1 {
        None
    } else {
        Some(g)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd_u64(b % a, a)
    }
}
