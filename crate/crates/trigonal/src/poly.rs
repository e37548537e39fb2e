//! Dense univariate polynomials over an exact field.
//!
//! This is the x-ring in which curve coefficients (`P`, `Q`, `T`), divisor
//! polynomials (`H`, `F`), norms (`Z`) and the y-linear function parts live.
//! Coefficients are stored little-endian (`coeffs[i]` multiplies `x^i`) with
//! no trailing zeros, so equality is representation equality. Every
//! polynomial carries its field descriptor; mixing fields in ring operations
//! is a programming error and panics (the element layer reports
//! [`crate::error::Error::FieldMismatch`] for the checked entry points used
//! on parsed input).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// A dense univariate polynomial. Degrees here stay small (≤ 3·genus or so),
/// so schoolbook arithmetic is exact and fast.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<K: FieldElement> {
    spec: FieldSpec,
    coeffs: Vec<K>,
}

impl<K: FieldElement> Poly<K> {
    /// The zero polynomial.
    pub fn zero(spec: FieldSpec) -> Self {
        Poly {
            spec,
            coeffs: Vec::new(),
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: K) -> Self {
        let spec = c.spec();
        Poly::from_coeffs(spec, vec![c])
    }

    /// The monomial `c·x^deg`.
    pub fn monomial(c: K, deg: usize) -> Self {
        let spec = c.spec();
        if c.is_zero() {
            return Poly::zero(spec);
        }
        let mut coeffs = vec![K::zero(&spec); deg];
        coeffs.push(c);
        Poly { spec, coeffs }
    }

    /// From a little-endian coefficient vector; trailing zeros are trimmed.
    pub fn from_coeffs(spec: FieldSpec, mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { spec, coeffs }
    }

    /// The monic product ∏ (x − r) over the given roots.
    pub fn from_roots(spec: FieldSpec, roots: &[K]) -> Self {
        let mut acc = Poly::constant(K::one(&spec));
        for r in roots {
            let linear = Poly::from_coeffs(spec, vec![r.neg(), K::one(&spec)]);
            acc = acc.mul(&linear);
        }
        acc
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| K::zero(&self.spec))
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, `None` for zero.
    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    fn guard(&self, rhs: &Self) {
        assert_eq!(self.spec, rhs.spec, "polynomial field mismatch");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.guard(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Poly::from_coeffs(self.spec, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.guard(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect();
        Poly::from_coeffs(self.spec, coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.guard(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.spec);
        }
        let mut coeffs = vec![K::zero(&self.spec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(self.spec, coeffs)
    }

    /// Scalar multiple `k·self`.
    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Poly::zero(self.spec);
        }
        Poly::from_coeffs(self.spec, self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    /// `self · x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(&self.spec); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { spec: self.spec, coeffs }
    }

    /// Euclidean division: `self = quot·den + rem` with `deg rem < deg den`.
    pub fn divrem(&self, den: &Self) -> Result<(Self, Self)> {
        self.guard(den);
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = den.lead().expect("nonzero").inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((Poly::zero(self.spec), self.clone()));
        }
        let mut quot = vec![K::zero(&self.spec); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(d));
            }
            quot[k] = c;
        }
        Ok((
            Poly::from_coeffs(self.spec, quot),
            Poly::from_coeffs(self.spec, rem),
        ))
    }

    /// Exact quotient; a nonzero remainder signals a violated precondition
    /// upstream (the divisor's roots are not all roots of `self`).
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let (q, r) = self.divrem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible(format!(
                "degree-{} remainder dividing degree {} by degree {}",
                r.degree().map_or(0, |d| d),
                self.degree().map_or(0, |d| d),
                den.degree().map_or(0, |d| d),
            )))
        }
    }

    /// Monic multiple of `self` (leading coefficient 1).
    pub fn monic(&self) -> Result<Self> {
        let lead = self.lead().ok_or(Error::DivisionByZero)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lead.inv()?))
    }

    /// Monic greatest common divisor (`gcd(0, 0) = 0`, `gcd(f, 0) = monic f`).
    pub fn gcd_monic(&self, rhs: &Self) -> Result<Self> {
        self.guard(rhs);
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&K::from_i64(&self.spec, i as i64)))
            .collect();
        Poly::from_coeffs(self.spec, coeffs)
    }

    /// Taylor shift of the argument: `p(x + c)`.
    pub fn compose_x_plus(&self, c: &K) -> Self {
        let shift = Poly::from_coeffs(self.spec, vec![c.clone(), K::one(&self.spec)]);
        let mut out = Poly::zero(self.spec);
        for a in self.coeffs.iter().rev() {
            out = out.mul(&shift).add(&Poly::constant(a.clone()));
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &K) -> K {
        let mut acc = K::zero(&self.spec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(c);
        }
        acc
    }

    /// All roots in a small prime field, with multiplicities, in canonical
    /// order. Exhaustive scan plus deflation; gated on the enumeration bound.
    pub fn roots_small_field(&self) -> Result<Vec<(K, usize)>> {
        if self.is_zero() {
            return Err(Error::InvalidParameter(
                "root extraction from the zero polynomial".into(),
            ));
        }
        let elements = K::enumerate(&self.spec)?;
        let mut roots = Vec::new();
        let mut f = self.clone();
        for a in elements {
            if f.degree() == Some(0) {
                break;
            }
            if self.eval(&a).is_zero() {
                let mut mult = 0usize;
                loop {
                    let (q, r) = f.deflate(&a);
                    if !r.is_zero() {
                        break;
                    }
                    f = q;
                    mult += 1;
                }
                debug_assert!(mult > 0);
                roots.push((a, mult));
            }
        }
        Ok(roots)
    }

    /// Synthetic division by `(x − a)`: returns `(quotient, remainder)`.
    fn deflate(&self, a: &K) -> (Self, K) {
        let mut quot = vec![K::zero(&self.spec); self.coeffs.len().saturating_sub(1)];
        let mut acc = K::zero(&self.spec);
        for i in (0..self.coeffs.len()).rev() {
            acc = acc.mul(a).add(&self.coeffs[i]);
            if i > 0 {
                quot[i - 1] = acc.clone();
            }
        }
        (Poly::from_coeffs(self.spec, quot), acc)
    }

    /// Wire form: little-endian coefficient strings.
    pub fn render(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.render()).collect()
    }

    /// Parses the wire form against a field descriptor.
    pub fn parse(spec: &FieldSpec, coeffs: &[String]) -> Result<Self> {
        let cs = coeffs
            .iter()
            .map(|s| K::parse(spec, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(*spec, cs))
    }
}

impl<K: FieldElement> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{c}·x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{c}·x^{i}")?,
            }
        }
        Ok(())
    }
}
