//! Exact coefficient fields: prime fields F_p and arbitrary-precision rationals.
//!
//! Every element carries its own [`FieldSpec`], so values are self-describing
//! and cross-field mixups surface as [`Error::FieldMismatch`] instead of
//! silent nonsense. Arithmetic is exact in both backends; nothing here ever
//! rounds. Characteristics 2 and 3 are rejected at construction: the curve
//! equation leads with −y³ and the fiber analysis divides by small integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exclusive upper bound on prime moduli, so that sums of two canonical
/// residues never overflow `u64` and products fit in `u128`.
pub const MAX_PRIME: u64 = 1 << 63;

/// Exhaustive enumeration (point sets, root scans) is allowed only below this
/// field size.
pub const ENUMERATION_BOUND: u64 = 1 << 16;

/// Description of a coefficient field: `F_p` with `p` prime and `p > 3`, or ℚ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

impl FieldSpec {
    /// A validated prime field descriptor.
    pub fn prime(p: u64) -> Result<Self> {
        let spec = FieldSpec::Prime { p };
        spec.validate()?;
        Ok(spec)
    }

    /// The rational field descriptor.
    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    /// Checks the declared field is actually usable.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Prime { p } => {
                if p <= 3 {
                    return Err(Error::BadField(format!(
                        "characteristic {p} is not supported (must exceed 3)"
                    )));
                }
                if p >= MAX_PRIME {
                    return Err(Error::BadField(format!(
                        "modulus {p} exceeds the supported bound 2^63"
                    )));
                }
                if !is_prime_u64(p) {
                    return Err(Error::BadField(format!("{p} is not prime")));
                }
                Ok(())
            }
            FieldSpec::Rational => Ok(()),
        }
    }

    /// Field characteristic: `p` for prime fields, 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } => *p,
            FieldSpec::Rational => 0,
        }
    }

    /// Whether exhaustive element enumeration is permitted.
    pub fn is_enumerable(&self) -> bool {
        matches!(self, FieldSpec::Prime { p } if *p < ENUMERATION_BOUND)
    }

    pub fn describe(&self) -> String {
        match self {
            FieldSpec::Prime { p } => format!("F_{p}"),
            FieldSpec::Rational => "Q".to_string(),
        }
    }
}

/// An exact field element. Implementations are immutable values; all
/// operations are pure and safe to share across threads.
///
/// The `checked_*` operations report [`Error::FieldMismatch`] when operands
/// disagree on the field; the unchecked convenience wrappers panic in that
/// case and exist for internal use where specs are aligned by construction.
pub trait FieldElement:
    Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// The field this element lives in.
    fn spec(&self) -> FieldSpec;

    /// Additive identity of `spec`. Panics if `spec` names the other backend.
    fn zero(spec: &FieldSpec) -> Self;

    /// Multiplicative identity of `spec`.
    fn one(spec: &FieldSpec) -> Self;

    /// The image of a small integer in `spec`.
    fn from_i64(spec: &FieldSpec, n: i64) -> Self;

    fn checked_add(&self, rhs: &Self) -> Result<Self>;
    fn checked_sub(&self, rhs: &Self) -> Result<Self>;
    fn checked_mul(&self, rhs: &Self) -> Result<Self>;

    /// Multiplicative inverse; [`Error::DivisionByZero`] on zero.
    fn inv(&self) -> Result<Self>;

    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    /// Total order used for canonical point sorting and deterministic output.
    /// (Residue order for F_p, numeric order for ℚ.)
    fn canon_cmp(&self, other: &Self) -> Ordering;

    /// Parses the CLI wire format: decimal for F_p (sign allowed, reduced to
    /// the canonical residue), `n` or `n/d` for ℚ.
    fn parse(spec: &FieldSpec, text: &str) -> Result<Self>;

    /// Canonical wire rendering; inverse of [`FieldElement::parse`].
    fn render(&self) -> String;

    /// Every element of the field, in canonical order. Only small prime
    /// fields are enumerable.
    fn enumerate(spec: &FieldSpec) -> Result<Vec<Self>>;

    /// A scalar `s` such that `s·e` is "integral" for every `e` in `row`:
    /// the identity over prime fields, the least common denominator over ℚ.
    /// Row scaling preserves kernels; the fraction-free elimination uses this
    /// to keep rational matrices integer-valued.
    fn integral_row_scale(spec: &FieldSpec, row: &[Self]) -> Self {
        let _ = row;
        Self::one(spec)
    }

    /// Sum with a same-field operand (panics on field mismatch).
    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("field mismatch")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("field mismatch")
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("field mismatch")
    }

    /// Quotient; [`Error::DivisionByZero`] on zero divisor.
    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.inv()?)
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// An element of F_p: the canonical residue `v ∈ [0, p)` plus its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    /// The canonical residue of `v` in F_p. `p` must be a validated modulus.
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn residue(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn guard(&self, rhs: &Self) -> Result<()> {
        if self.p == rhs.p {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: format!("F_{}", self.p),
                right: format!("F_{}", rhs.p),
            })
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl FieldElement for Fp {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }

    fn zero(spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Prime { p } => Fp { v: 0, p: *p },
            FieldSpec::Rational => panic!("prime-field element requested from a rational spec"),
        }
    }

    fn one(spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Prime { p } => Fp { v: 1 % *p, p: *p },
            FieldSpec::Rational => panic!("prime-field element requested from a rational spec"),
        }
    }

    fn from_i64(spec: &FieldSpec, n: i64) -> Self {
        match spec {
            // p < 2^63 by construction, so the cast is lossless.
            FieldSpec::Prime { p } => Fp {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
            FieldSpec::Rational => panic!("prime-field element requested from a rational spec"),
        }
    }

    fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.guard(rhs)?;
        let mut s = self.v + rhs.v;
        if s >= self.p {
            s -= self.p;
        }
        Ok(Fp { v: s, p: self.p })
    }

    fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.guard(rhs)?;
        let s = if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            self.v + self.p - rhs.v
        };
        Ok(Fp { v: s, p: self.p })
    }

    fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.guard(rhs)?;
        Ok(Fp {
            v: mulmod(self.v, rhs.v, self.p),
            p: self.p,
        })
    }

    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Fp {
            v: invmod(self.v, self.p),
            p: self.p,
        })
    }

    fn neg(&self) -> Self {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    fn canon_cmp(&self, other: &Self) -> Ordering {
        self.v.cmp(&other.v)
    }

    fn parse(spec: &FieldSpec, text: &str) -> Result<Self> {
        let p = match spec {
            FieldSpec::Prime { p } => *p,
            FieldSpec::Rational => {
                return Err(Error::BadField(
                    "prime-field element requested from a rational spec".into(),
                ))
            }
        };
        let n: BigInt = text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("`{text}` is not an integer")))?;
        let modulus = BigInt::from(p);
        let m = ((&n % &modulus) + &modulus) % &modulus;
        let v = u64::try_from(m).expect("residue fits u64");
        Ok(Fp { v, p })
    }

    fn render(&self) -> String {
        self.v.to_string()
    }

    fn enumerate(spec: &FieldSpec) -> Result<Vec<Self>> {
        match spec {
            FieldSpec::Prime { p } if *p < ENUMERATION_BOUND => {
                Ok((0..*p).map(|v| Fp { v, p: *p }).collect())
            }
            FieldSpec::Prime { p } => Err(Error::FieldTooLarge {
                p: *p,
                bound: ENUMERATION_BOUND,
            }),
            FieldSpec::Rational => Err(Error::RationalFieldUnsupported("enumerate")),
        }
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// An exact rational number in lowest terms (denominator positive).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rat(BigRational);

impl Rat {
    pub fn from_ratio(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// `n/d` from machine integers; panics on `d = 0`.
    pub fn of(n: i64, d: i64) -> Self {
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl FieldElement for Rat {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn zero(spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Rational => Rat(BigRational::zero()),
            FieldSpec::Prime { .. } => panic!("rational element requested from a prime spec"),
        }
    }

    fn one(spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Rational => Rat(BigRational::one()),
            FieldSpec::Prime { .. } => panic!("rational element requested from a prime spec"),
        }
    }

    fn from_i64(spec: &FieldSpec, n: i64) -> Self {
        match spec {
            FieldSpec::Rational => Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime { .. } => panic!("rational element requested from a prime spec"),
        }
    }

    fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Rat(&self.0 + &rhs.0))
    }

    fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Rat(&self.0 - &rhs.0))
    }

    fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(Rat(&self.0 * &rhs.0))
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    fn neg(&self) -> Self {
        Rat(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn canon_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    fn parse(spec: &FieldSpec, text: &str) -> Result<Self> {
        match spec {
            FieldSpec::Rational => {}
            FieldSpec::Prime { .. } => {
                return Err(Error::BadField(
                    "rational element requested from a prime spec".into(),
                ))
            }
        }
        let text = text.trim();
        let (ns, ds) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let n: BigInt = ns
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("`{text}` is not a rational")))?;
        let d: BigInt = ds
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("`{text}` is not a rational")))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(n, d)))
    }

    fn render(&self) -> String {
        if self.0.denom().is_one() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    fn enumerate(_spec: &FieldSpec) -> Result<Vec<Self>> {
        Err(Error::RationalFieldUnsupported("enumerate"))
    }

    fn integral_row_scale(spec: &FieldSpec, row: &[Self]) -> Self {
        use num_integer::Integer;
        let mut lcm = BigInt::one();
        for e in row {
            lcm = lcm.lcm(e.0.denom());
        }
        let _ = spec;
        Rat(BigRational::from_integer(lcm))
    }
}

// ---------------------------------------------------------------------------
// u64 modular arithmetic helpers
// ---------------------------------------------------------------------------

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` mod prime `p` via the extended Euclidean algorithm.
fn invmod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime and a nonzero");
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller–Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
