//! The trigonal curve model.
//!
//! Curves come in the two standard families
//!
//! ```text
//! C¹ = (3, 3m+1):  0 = −y³ + y²·T(x) + y·Q(x) + P(x),   genus 3m,
//! C² = (3, 3m+2):  same shape,                           genus 3m+1,
//! ```
//!
//! with `P` monic of degree `s` (= 3m+1 resp. 3m+2), `deg Q ≤ 2m` (C¹) or
//! `2m+1` (C²), and `deg T ≤ m`. Every coefficient is addressed by its Sato
//! weight (wgt x = 3, wgt y = s): the coefficient of `x^i y^j` has weight
//! `3s − 3i − js`, which pins each parameter to a unique slot and keeps the
//! two families from being confused with one another. The x-projection is
//! 3-to-1; the ≤3 points sharing an x-coordinate form the involution fiber
//! that drives all of the divisor arithmetic downstream.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Poly;

/// The two trigonal families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// (3, 3m+1), genus 3m.
    C1,
    /// (3, 3m+2), genus 3m+1.
    C2,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::C1 => "C1",
            Family::C2 => "C2",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "C1" => Ok(Family::C1),
            "C2" => Ok(Family::C2),
            other => Err(Error::InvalidParameter(format!(
                "unknown family `{other}` (expected C1 or C2)"
            ))),
        }
    }
}

/// An affine point. The single point at infinity is the implicit base point
/// of all divisors and is never materialized.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point<K: FieldElement> {
    pub x: K,
    pub y: K,
}

impl<K: FieldElement> Point<K> {
    pub fn new(x: K, y: K) -> Self {
        Point { x, y }
    }

    /// Canonical order: by x, then y.
    pub fn canon_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.x
            .canon_cmp(&other.x)
            .then_with(|| self.y.canon_cmp(&other.y))
    }
}

/// A basis monomial `x^i y^j` with `j ≤ 2`, graded by Sato weight `3i + s·j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub i: u32,
    pub j: u8,
    pub weight: u64,
}

/// A nondegenerate trigonal curve over an exact field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Curve<K: FieldElement> {
    family: Family,
    m: u32,
    s: u32,
    genus: u32,
    p_poly: Poly<K>,
    q_poly: Poly<K>,
    t_poly: Poly<K>,
    spec: FieldSpec,
    smooth_certified: bool,
}

impl<K: FieldElement> Curve<K> {
    /// Builds a curve from its weighted coefficients `λ_w`.
    ///
    /// Every key of `lambda` must name an admissible slot of the family
    /// (weights `3(s−i)` for `P`, `2s−3i` for `Q`, `s−3i` for `T`, all
    /// positive); unspecified slots default to zero and `P` is always monic
    /// of degree `s`. Over small prime fields the affine nondegeneracy scan
    /// runs exhaustively and singular curves are rejected; over larger
    /// fields and ℚ the curve is accepted on trust with
    /// [`Curve::smooth_certified`] reporting `false`.
    pub fn new(
        family: Family,
        m: u32,
        lambda: &BTreeMap<u64, K>,
        spec: FieldSpec,
    ) -> Result<Self> {
        spec.validate()?;
        if m == 0 {
            return Err(Error::InvalidParameter(
                "family parameter m must be positive".into(),
            ));
        }
        let s: u32 = match family {
            Family::C1 => 3 * m + 1,
            Family::C2 => 3 * m + 2,
        };
        let genus = match family {
            Family::C1 => 3 * m,
            Family::C2 => 3 * m + 1,
        };

        // Route each λ to its slot. With s ≢ 0 (mod 3) the residue of the
        // weight mod 3 determines which of P/Q/T it belongs to.
        let mut p_coeffs = vec![K::zero(&spec); s as usize + 1];
        p_coeffs[s as usize] = K::one(&spec);
        let deg_q_bound = match family {
            Family::C1 => 2 * m,
            Family::C2 => 2 * m + 1,
        };
        let mut q_coeffs = vec![K::zero(&spec); deg_q_bound as usize + 1];
        let mut t_coeffs = vec![K::zero(&spec); m as usize + 1];

        let s64 = s as u64;
        for (&w, value) in lambda {
            if value.spec() != spec {
                return Err(Error::FieldMismatch {
                    left: spec.describe(),
                    right: value.spec().describe(),
                });
            }
            if w == 0 {
                return Err(Error::BadWeight {
                    weight: w,
                    reason: "weights are positive (weight 0 is the monic leading term)".into(),
                });
            }
            let r = (w % 3, s64 % 3);
            match r {
                // weight ≡ 0: P slot, coefficient of x^{s − w/3}
                (0, _) => {
                    let k = w / 3;
                    if k > s64 {
                        return Err(Error::BadWeight {
                            weight: w,
                            reason: format!("P slots end at weight {}", 3 * s64),
                        });
                    }
                    p_coeffs[(s64 - k) as usize] = value.clone();
                }
                // weight ≡ s (mod 3): T slot, coefficient of x^{(s−w)/3}
                (a, b) if a == b => {
                    if w > s64 {
                        return Err(Error::BadWeight {
                            weight: w,
                            reason: format!("T slots end at weight {s64}"),
                        });
                    }
                    t_coeffs[((s64 - w) / 3) as usize] = value.clone();
                }
                // weight ≡ 2s (mod 3): Q slot, coefficient of x^{(2s−w)/3}
                _ => {
                    let hi = 2 * s64;
                    if w > hi || (hi - w) / 3 > deg_q_bound as u64 {
                        return Err(Error::BadWeight {
                            weight: w,
                            reason: format!(
                                "Q slots are weights {} down to {}, step 3",
                                hi,
                                hi - 3 * deg_q_bound as u64
                            ),
                        });
                    }
                    q_coeffs[((hi - w) / 3) as usize] = value.clone();
                }
            }
        }

        let curve = Curve {
            family,
            m,
            s,
            genus,
            p_poly: Poly::from_coeffs(spec, p_coeffs),
            q_poly: Poly::from_coeffs(spec, q_coeffs),
            t_poly: Poly::from_coeffs(spec, t_coeffs),
            spec,
            smooth_certified: false,
        };
        curve.certify_nondegenerate()
    }

    /// Runs the affine singular-point scan where enumeration is possible.
    fn certify_nondegenerate(mut self) -> Result<Self> {
        if !self.spec.is_enumerable() {
            self.smooth_certified = false;
            return Ok(self);
        }
        // A singular point (a, b) needs f = f_y = 0, i.e. b is a repeated
        // root of the fiber cubic, which happens exactly where the cubic's
        // discriminant Δ(a) vanishes. Scan Δ's roots only; at each, the
        // repeated fiber roots are the roots of gcd(cubic, cubic′).
        let disc = self.fiber_discriminant();
        let candidates: Vec<K> = if disc.is_zero() {
            K::enumerate(&self.spec)?
        } else {
            disc.roots_small_field()?
                .into_iter()
                .map(|(r, _)| r)
                .collect()
        };
        for a in candidates {
            let cubic = self.fiber_cubic(&a);
            let repeated = cubic.gcd_monic(&cubic.derivative())?;
            if repeated.degree() == Some(0) {
                continue;
            }
            for (b, _) in repeated.roots_small_field()? {
                let pt = Point::new(a.clone(), b);
                if self.partial_x(&pt).is_zero() {
                    return Err(Error::SingularCurve {
                        x: pt.x.render(),
                        y: pt.y.render(),
                    });
                }
            }
        }
        self.smooth_certified = true;
        Ok(self)
    }

    /// Discriminant (in x) of the monic fiber cubic `y³ − Ty² − Qy − P`.
    fn fiber_discriminant(&self) -> Poly<K> {
        let (t, q, p) = (&self.t_poly, &self.q_poly, &self.p_poly);
        // Δ = −18·T·Q·P − 4·T³·P + T²·Q² + 4·Q³ − 27·P²
        let c = |n: i64| Poly::constant(K::from_i64(&self.spec, n));
        c(-18)
            .mul(t)
            .mul(q)
            .mul(p)
            .add(&c(-4).mul(&t.mul(t).mul(t)).mul(p))
            .add(&t.mul(t).mul(&q.mul(q)))
            .add(&c(4).mul(&q.mul(q).mul(q)))
            .add(&c(-27).mul(&p.mul(p)))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The second Sato weight `s` (the weight of y); 3m+1 or 3m+2.
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Whether the exhaustive nondegeneracy scan actually ran (small prime
    /// fields only). `false` means "accepted on trust".
    pub fn smooth_certified(&self) -> bool {
        self.smooth_certified
    }

    pub fn p_poly(&self) -> &Poly<K> {
        &self.p_poly
    }

    pub fn q_poly(&self) -> &Poly<K> {
        &self.q_poly
    }

    pub fn t_poly(&self) -> &Poly<K> {
        &self.t_poly
    }

    /// The sparse λ map (only nonzero coefficients), inverse of [`Curve::new`].
    pub fn lambdas(&self) -> BTreeMap<u64, K> {
        let mut out = BTreeMap::new();
        let s = self.s as u64;
        for (i, c) in self.t_poly.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.insert(s - 3 * i as u64, c.clone());
            }
        }
        for (i, c) in self.q_poly.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.insert(2 * s - 3 * i as u64, c.clone());
            }
        }
        for (i, c) in self.p_poly.coeffs().iter().enumerate() {
            if !c.is_zero() && (i as u64) < s {
                out.insert(3 * (s - i as u64), c.clone());
            }
        }
        out
    }

    /// The Weierstrass gap sequence, ascending, of length `genus`.
    pub fn gap_sequence(&self) -> Vec<u64> {
        let m = self.m as u64;
        let mut gaps: Vec<u64> = match self.family {
            Family::C1 => (1..=m)
                .map(|k| 3 * k - 2)
                .chain((1..=2 * m).map(|k| 3 * k - 1))
                .collect(),
            Family::C2 => (1..=m)
                .map(|k| 3 * k - 1)
                .chain((1..=2 * m + 1).map(|k| 3 * k - 2))
                .collect(),
        };
        gaps.sort_unstable();
        gaps
    }

    /// The first `count` monomials `x^i y^j` (j ≤ 2) in strictly ascending
    /// Sato weight. Weights are distinct because gcd(3, s) = 1.
    pub fn monomial_basis(&self, count: usize) -> Vec<Monomial> {
        let s = self.s as u64;
        let mut out = Vec::with_capacity(count);
        let mut w: u64 = 0;
        while out.len() < count {
            // j is pinned by w mod 3 (j·s ≡ w), then i = (w − j·s)/3.
            let j = match s % 3 {
                1 => w % 3,
                _ => (2 * w) % 3,
            };
            if w >= j * s {
                out.push(Monomial {
                    i: ((w - j * s) / 3) as u32,
                    j: j as u8,
                    weight: w,
                });
            }
            w += 1;
        }
        out
    }

    /// `f(x, y) = −y³ + y²·T(x) + y·Q(x) + P(x)` at a point.
    pub fn eval_f(&self, pt: &Point<K>) -> K {
        let t = self.t_poly.eval(&pt.x);
        let q = self.q_poly.eval(&pt.x);
        let p = self.p_poly.eval(&pt.x);
        // Horner in y: ((−y + T)·y + Q)·y + P
        pt.y.neg()
            .add(&t)
            .mul(&pt.y)
            .add(&q)
            .mul(&pt.y)
            .add(&p)
    }

    pub fn on_curve(&self, pt: &Point<K>) -> bool {
        self.eval_f(pt).is_zero()
    }

    /// `∂f/∂x` at a point.
    pub fn partial_x(&self, pt: &Point<K>) -> K {
        let t = self.t_poly.derivative().eval(&pt.x);
        let q = self.q_poly.derivative().eval(&pt.x);
        let p = self.p_poly.derivative().eval(&pt.x);
        pt.y.mul(&pt.y)
            .mul(&t)
            .add(&pt.y.mul(&q))
            .add(&p)
    }

    /// `∂f/∂y = −3y² + 2y·T + Q` at a point.
    pub fn partial_y(&self, pt: &Point<K>) -> K {
        let t = self.t_poly.eval(&pt.x);
        let q = self.q_poly.eval(&pt.x);
        let three = K::from_i64(&self.spec, 3);
        let two = K::from_i64(&self.spec, 2);
        three
            .neg()
            .mul(&pt.y)
            .add(&two.mul(&t))
            .mul(&pt.y)
            .add(&q)
    }

    /// The monic fiber cubic `y³ − T(a)y² − Q(a)y − P(a)` whose roots are the
    /// y-coordinates over `x = a`.
    pub fn fiber_cubic(&self, a: &K) -> Poly<K> {
        Poly::from_coeffs(
            self.spec,
            vec![
                self.p_poly.eval(a).neg(),
                self.q_poly.eval(a).neg(),
                self.t_poly.eval(a).neg(),
                K::one(&self.spec),
            ],
        )
    }

    /// All points over `x = a`, with multiplicity (0–3 entries). Requires an
    /// enumerable field for the root scan.
    pub fn involution_fiber(&self, a: &K) -> Result<Vec<Point<K>>> {
        let cubic = self.fiber_cubic(a);
        let mut pts = Vec::new();
        for (b, mult) in cubic.roots_small_field()? {
            for _ in 0..mult {
                pts.push(Point::new(a.clone(), b.clone()));
            }
        }
        Ok(pts)
    }

    /// Whether `{b₁, b₂, b₃}` is the complete fiber multiset over `x = a`,
    /// tested via the elementary symmetric functions (no enumeration needed):
    /// `e₁ = T(a)`, `e₂ = −Q(a)`, `e₃ = P(a)`.
    pub fn is_complete_fiber(&self, a: &K, ys: [&K; 3]) -> bool {
        let [b1, b2, b3] = ys;
        let e1 = b1.add(b2).add(b3);
        let e2 = b1.mul(b2).add(&b1.mul(b3)).add(&b2.mul(b3));
        let e3 = b1.mul(b2).mul(b3);
        e1 == self.t_poly.eval(a)
            && e2 == self.q_poly.eval(a).neg()
            && e3 == self.p_poly.eval(a)
    }

    /// Degree bounds `(deg ay, deg ax)` for a function of order 2g
    /// (`I = y·ay + ax`).
    pub fn order_2g_bounds(&self) -> (usize, usize) {
        let m = self.m as usize;
        match self.family {
            Family::C1 => (m - 1, 2 * m),
            Family::C2 => (m, 2 * m),
        }
    }

    /// Degree bounds `(deg ay, deg ax)` for a function of order 2g+1
    /// (`G = y·ay + ax`).
    pub fn order_2g1_bounds(&self) -> (usize, usize) {
        let m = self.m as usize;
        match self.family {
            Family::C1 => (m, 2 * m),
            Family::C2 => (m, 2 * m + 1),
        }
    }
}
