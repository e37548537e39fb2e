//! Effective divisors of affine points and their compressed representations.
//!
//! A degree-n divisor is an unordered multiset of n affine points (the point
//! at infinity is the implicit base point and never appears). Two compressed
//! forms stand in for point lists during arithmetic:
//!
//! * [`HRep`] `(H, I)` for degree-g divisors: `H` is the monic degree-g
//!   x-projection polynomial and `I` the y-linear function of order 2g
//!   vanishing on the divisor;
//! * [`FRep`] `(F, G)` for degree-(g+1) divisors: same with `deg F = g+1`
//!   and `G` of order 2g+1.
//!
//! The pair `(H, I)` pins the y-coordinate over each root of `H` via
//! `y = −ax/ay`, so the encoding is faithful exactly when no two *distinct*
//! points of the divisor share an x-coordinate — one half of the *strictly
//! non-special* condition the constructors enforce (the other half being
//! linear independence of the evaluation conditions). For anything weaker
//! the encoding collapses involution mates and is refused.

use std::fmt;

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::kernel_basis;
use crate::linfun::{build_function, evaluation_matrix, YLinFun};
use crate::poly::Poly;

/// Position of a point multiset relative to the faithful-encoding boundary.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DivisorClass {
    /// Evaluation conditions independent and distinct points have distinct
    /// x-coordinates: the divisor has a faithful compressed representation.
    StrictlyNonSpecial,
    /// Conditions independent, but two involution mates are present.
    NonSpecial,
    /// The evaluation conditions are linearly dependent.
    Special,
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DivisorClass::StrictlyNonSpecial => "strictly non-special",
            DivisorClass::NonSpecial => "non-special",
            DivisorClass::Special => "special",
        };
        f.write_str(s)
    }
}

/// An effective divisor: canonically sorted points, all verified on-curve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointDivisor<K: FieldElement> {
    points: Vec<Point<K>>,
}

impl<K: FieldElement> PointDivisor<K> {
    pub fn new(curve: &Curve<K>, mut points: Vec<Point<K>>) -> Result<Self> {
        for pt in &points {
            if !curve.on_curve(pt) {
                return Err(Error::OffCurvePoint {
                    x: pt.x.render(),
                    y: pt.y.render(),
                });
            }
        }
        points.sort_by(|a, b| a.canon_cmp(b));
        Ok(PointDivisor { points })
    }

    pub fn points(&self) -> &[Point<K>] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    /// Multiset sum of two divisors.
    pub fn concat(&self, other: &Self) -> Self {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        points.sort_by(|a, b| a.canon_cmp(b));
        PointDivisor { points }
    }
}

/// Classifies a point multiset of any degree n: special when some function
/// spanned by the first n monomials vanishes on it, otherwise strictly
/// non-special unless two distinct points share an x-coordinate.
pub fn classify<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
) -> Result<DivisorClass> {
    let n = divisor.degree();
    if n == 0 {
        return Ok(DivisorClass::StrictlyNonSpecial);
    }
    let monomials = curve.monomial_basis(n);
    let rows = evaluation_matrix(curve, divisor.points(), &monomials)?;
    if !kernel_basis(curve.spec(), monomials.len(), &rows).is_empty() {
        return Ok(DivisorClass::Special);
    }
    let pts = divisor.points();
    for w in pts.windows(2) {
        if w[0].x == w[1].x && w[0].y != w[1].y {
            return Ok(DivisorClass::NonSpecial);
        }
    }
    Ok(DivisorClass::StrictlyNonSpecial)
}

/// One involution fiber removed from a divisor: three points over `x` whose
/// y-multiset matches the full fiber there.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberRemoval<K: FieldElement> {
    pub x: K,
    pub ys: [K; 3],
}

/// Strips complete involution fibers (x, b₁)+(x, b₂)+(x, b₃) from a point
/// multiset; each such triple sums to zero in the divisor class group and
/// contributes nothing. Membership is decided by the elementary symmetric
/// functions against T, −Q, P, so no root extraction is involved. Triples
/// are removed in canonical order until none remain.
pub fn eliminate_involution_triples<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
) -> (PointDivisor<K>, Vec<FiberRemoval<K>>) {
    let mut pts = divisor.points.clone();
    let mut removed = Vec::new();
    'scan: loop {
        // group runs of equal x (points are sorted)
        let mut start = 0;
        while start < pts.len() {
            let mut end = start + 1;
            while end < pts.len() && pts[end].x == pts[start].x {
                end += 1;
            }
            if end - start >= 3 {
                let group = &pts[start..end];
                let k = group.len();
                for i in 0..k {
                    for j in i + 1..k {
                        for l in j + 1..k {
                            let (b1, b2, b3) = (&group[i].y, &group[j].y, &group[l].y);
                            if curve.is_complete_fiber(&group[i].x, [b1, b2, b3]) {
                                removed.push(FiberRemoval {
                                    x: group[i].x.clone(),
                                    ys: [b1.clone(), b2.clone(), b3.clone()],
                                });
                                let (a, b, c) = (start + i, start + j, start + l);
                                pts.remove(c);
                                pts.remove(b);
                                pts.remove(a);
                                continue 'scan;
                            }
                        }
                    }
                }
            }
            start = end;
        }
        break;
    }
    (PointDivisor { points: pts }, removed)
}

/// Compressed degree-g divisor: monic `H` of degree g plus the order-2g
/// y-linear function `I` vanishing on the divisor, normalized so its
/// highest-weight coefficient is 1. Invariant: `H` divides `Z(I)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HRep<K: FieldElement> {
    h: Poly<K>,
    i: YLinFun<K>,
}

/// Compressed degree-(g+1) divisor: monic `F` of degree g+1 plus the
/// order-(2g+1) function `G`, same conventions as [`HRep`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FRep<K: FieldElement> {
    f: Poly<K>,
    g_fun: YLinFun<K>,
}

fn validate_pair<K: FieldElement>(
    curve: &Curve<K>,
    poly: &Poly<K>,
    fun: &YLinFun<K>,
    want_deg: usize,
    want_order: u64,
    bounds: (usize, usize),
) -> Result<YLinFun<K>> {
    if !poly.is_monic() || poly.degree() != Some(want_deg) {
        return Err(Error::MalformedRep(format!(
            "projection polynomial must be monic of degree {want_deg}"
        )));
    }
    if fun.is_zero() {
        return Err(Error::MalformedRep("function part must be nonzero".into()));
    }
    let fun = fun.normalized(curve.s())?;
    if fun.order(curve.s()) != Some(want_order) {
        return Err(Error::MalformedRep(format!(
            "function part must have order exactly {want_order}"
        )));
    }
    let (by, bx) = bounds;
    if fun.ay().degree().map_or(false, |d| d > by)
        || fun.ax().degree().map_or(false, |d| d > bx)
    {
        return Err(Error::MalformedRep(format!(
            "function part exceeds degree bounds (≤{by} in the y part, ≤{bx} in the x part)"
        )));
    }
    let z = fun.z_polynomial(curve);
    if z.exact_div(poly).is_err() {
        return Err(Error::MalformedRep(
            "projection polynomial does not divide the function's norm".into(),
        ));
    }
    Ok(fun)
}

impl<K: FieldElement> HRep<K> {
    pub fn new(curve: &Curve<K>, h: Poly<K>, i: YLinFun<K>) -> Result<Self> {
        let g = curve.genus() as usize;
        let i = validate_pair(curve, &h, &i, g, 2 * g as u64, curve.order_2g_bounds())?;
        Ok(HRep { h, i })
    }

    pub fn h(&self) -> &Poly<K> {
        &self.h
    }

    pub fn i(&self) -> &YLinFun<K> {
        &self.i
    }

    /// Recovers the point divisor (needs a small prime field).
    pub fn points(&self, curve: &Curve<K>) -> Result<PointDivisor<K>> {
        points_from_rep(curve, &self.h, &self.i)
    }
}

impl<K: FieldElement> FRep<K> {
    pub fn new(curve: &Curve<K>, f: Poly<K>, g_fun: YLinFun<K>) -> Result<Self> {
        let g = curve.genus() as usize;
        let g_fun = validate_pair(
            curve,
            &f,
            &g_fun,
            g + 1,
            2 * g as u64 + 1,
            curve.order_2g1_bounds(),
        )?;
        Ok(FRep { f, g_fun })
    }

    pub fn f(&self) -> &Poly<K> {
        &self.f
    }

    pub fn g_fun(&self) -> &YLinFun<K> {
        &self.g_fun
    }

    pub fn points(&self, curve: &Curve<K>) -> Result<PointDivisor<K>> {
        points_from_rep(curve, &self.f, &self.g_fun)
    }
}

/// Compresses a strictly non-special degree-g divisor to its `(H, I)` form.
pub fn rep_from_points_g<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
) -> Result<HRep<K>> {
    let g = curve.genus() as usize;
    if divisor.degree() != g {
        return Err(Error::InvalidParameter(format!(
            "expected a degree-{g} divisor, got degree {}",
            divisor.degree()
        )));
    }
    match classify(curve, divisor)? {
        DivisorClass::StrictlyNonSpecial => {}
        other => {
            return Err(Error::NotStrictlyNonSpecial(format!(
                "divisor is {other}; its compressed form would be ambiguous"
            )))
        }
    }
    let fun = build_function(curve, divisor.points())?;
    let i = fun
        .as_y_linear()
        .expect("order ≤ 2g keeps the function y-linear");
    let h = projection_poly(curve, divisor);
    debug_assert!(i.z_polynomial(curve).exact_div(&h).is_ok());
    HRep::new(curve, h, i)
}

/// Compresses a strictly non-special degree-(g+1) divisor to `(F, G)`.
pub fn rep_from_points_g1<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
) -> Result<FRep<K>> {
    let g = curve.genus() as usize;
    if divisor.degree() != g + 1 {
        return Err(Error::InvalidParameter(format!(
            "expected a degree-{} divisor, got degree {}",
            g + 1,
            divisor.degree()
        )));
    }
    match classify(curve, divisor)? {
        DivisorClass::StrictlyNonSpecial => {}
        other => {
            return Err(Error::NotStrictlyNonSpecial(format!(
                "divisor is {other}; its compressed form would be ambiguous"
            )))
        }
    }
    let fun = build_function(curve, divisor.points())?;
    let g_fun = fun
        .as_y_linear()
        .expect("order ≤ 2g+1 keeps the function y-linear");
    let f = projection_poly(curve, divisor);
    FRep::new(curve, f, g_fun)
}

/// Monic x-projection `∏ (x − x_k)` over the points, with multiplicity.
fn projection_poly<K: FieldElement>(curve: &Curve<K>, divisor: &PointDivisor<K>) -> Poly<K> {
    let xs: Vec<K> = divisor.points().iter().map(|p| p.x.clone()).collect();
    Poly::from_roots(curve.spec(), &xs)
}

/// Expands a compressed pair back into points: each root `a` of the
/// projection polynomial carries `y = −ax(a)/ay(a)`. Root extraction needs
/// an enumerable field; a root with `ay(a) = 0` has no single y-coordinate
/// (the function contains the whole fiber there) and reports
/// [`Error::InvolutionCollision`].
pub fn points_from_rep<K: FieldElement>(
    curve: &Curve<K>,
    poly: &Poly<K>,
    fun: &YLinFun<K>,
) -> Result<PointDivisor<K>> {
    let roots = poly.roots_small_field()?;
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if found != poly.degree().unwrap_or(0) {
        return Err(Error::DegenerateConfiguration(format!(
            "projection polynomial has only {found} of {} roots in the base field",
            poly.degree().unwrap_or(0)
        )));
    }
    let mut points = Vec::with_capacity(found);
    for (a, mult) in roots {
        let den = fun.ay().eval(&a);
        if den.is_zero() {
            return Err(Error::InvolutionCollision { x: a.render() });
        }
        let y = fun.ax().eval(&a).neg().mul(&den.inv()?);
        for _ in 0..mult {
            points.push(Point::new(a.clone(), y.clone()));
        }
    }
    PointDivisor::new(curve, points)
}
