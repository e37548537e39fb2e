//! Functions on the curve with a pole only at infinity, and the machinery
//! for constructing them through prescribed zeros.
//!
//! The coordinate ring at infinity is spanned by the monomials `x^i y^j`
//! (j ≤ 2) graded by Sato weight; a function's *order* is its pole order at
//! infinity, i.e. the largest weight appearing. Two shapes matter here:
//!
//! * [`CurveFun`] — a general element `a₀(x) + a₁(x)·y + a₂(x)·y²`, the
//!   witness shape produced by kernel computations;
//! * [`YLinFun`] — the y-linear case `y·ay(x) + ax(x)`, which is what the
//!   reduced-divisor representations use. Its affine zeros project to the
//!   roots of the resultant-style polynomial `Z` ([`YLinFun::z_polynomial`]),
//!   which is how zeros are moved between x- and (x,y)-coordinates.
//!
//! [`build_function`] finds the essentially unique function of bounded order
//! vanishing on a list of points by solving for the kernel of the evaluation
//! matrix. Points listed with multiplicity contribute rows of higher-order
//! vanishing conditions, computed from the power-series expansion of the
//! branch at the point (valid whenever `x − x₀` is a local parameter, i.e.
//! `∂f/∂y ≠ 0` there).

use crate::curve::{Curve, Monomial, Point};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::kernel_basis;
use crate::poly::Poly;

/// A y-linear function `y·ay(x) + ax(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YLinFun<K: FieldElement> {
    ay: Poly<K>,
    ax: Poly<K>,
}

impl<K: FieldElement> YLinFun<K> {
    pub fn new(ay: Poly<K>, ax: Poly<K>) -> Self {
        assert_eq!(ay.spec(), ax.spec(), "mismatched coefficient fields");
        YLinFun { ay, ax }
    }

    pub fn ay(&self) -> &Poly<K> {
        &self.ay
    }

    pub fn ax(&self) -> &Poly<K> {
        &self.ax
    }

    pub fn spec(&self) -> FieldSpec {
        self.ay.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.ay.is_zero() && self.ax.is_zero()
    }

    pub fn evaluate(&self, pt: &Point<K>) -> K {
        self.ay.eval(&pt.x).mul(&pt.y).add(&self.ax.eval(&pt.x))
    }

    /// Pole order at infinity: `max(3·deg ax, s + 3·deg ay)`.
    pub fn order(&self, s: u32) -> Option<u64> {
        let from_x = self.ax.degree().map(|d| 3 * d as u64);
        let from_y = self.ay.degree().map(|d| s as u64 + 3 * d as u64);
        from_x.into_iter().chain(from_y).max()
    }

    /// The norm-style polynomial whose roots are the x-projections of this
    /// function's affine zeros (with multiplicity):
    ///
    /// ```text
    /// Z = ax³ + T·ax²·ay − Q·ax·ay² + P·ay³.
    /// ```
    pub fn z_polynomial(&self, curve: &Curve<K>) -> Poly<K> {
        let (ay, ax) = (&self.ay, &self.ax);
        let ax2 = ax.mul(ax);
        let ay2 = ay.mul(ay);
        ax2.mul(ax)
            .add(&curve.t_poly().mul(&ax2).mul(ay))
            .sub(&curve.q_poly().mul(ax).mul(&ay2))
            .add(&curve.p_poly().mul(&ay2).mul(ay))
    }

    /// Scales so that the highest-weight nonzero coefficient is 1.
    pub fn normalized(&self, s: u32) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::MalformedRep("cannot normalize the zero function".into()));
        }
        let lead = match (self.ax.degree(), self.ay.degree()) {
            (Some(dx), Some(dy)) => {
                if 3 * dx as u64 > s as u64 + 3 * dy as u64 {
                    self.ax.lead().unwrap()
                } else {
                    self.ay.lead().unwrap()
                }
            }
            (Some(_), None) => self.ax.lead().unwrap(),
            (None, _) => self.ay.lead().unwrap(),
        };
        let inv = lead.inv()?;
        Ok(YLinFun {
            ay: self.ay.scale(&inv),
            ax: self.ax.scale(&inv),
        })
    }
}

/// A general function `a₀(x) + a₁(x)·y + a₂(x)·y²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveFun<K: FieldElement> {
    a0: Poly<K>,
    a1: Poly<K>,
    a2: Poly<K>,
}

impl<K: FieldElement> CurveFun<K> {
    pub fn new(a0: Poly<K>, a1: Poly<K>, a2: Poly<K>) -> Self {
        assert!(
            a0.spec() == a1.spec() && a1.spec() == a2.spec(),
            "mismatched coefficient fields"
        );
        CurveFun { a0, a1, a2 }
    }

    /// Assembles a function from coordinates over a monomial list.
    pub fn from_monomial_coords(
        spec: FieldSpec,
        monomials: &[Monomial],
        coords: &[K],
    ) -> Self {
        assert_eq!(monomials.len(), coords.len());
        let mut parts = [Poly::zero(spec), Poly::zero(spec), Poly::zero(spec)];
        for (mo, c) in monomials.iter().zip(coords) {
            if !c.is_zero() {
                parts[mo.j as usize] =
                    parts[mo.j as usize].add(&Poly::monomial(c.clone(), mo.i as usize));
            }
        }
        let [a0, a1, a2] = parts;
        CurveFun { a0, a1, a2 }
    }

    pub fn a0(&self) -> &Poly<K> {
        &self.a0
    }

    pub fn a1(&self) -> &Poly<K> {
        &self.a1
    }

    pub fn a2(&self) -> &Poly<K> {
        &self.a2
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero() && self.a2.is_zero()
    }

    pub fn evaluate(&self, pt: &Point<K>) -> K {
        // Horner in y.
        self.a2
            .eval(&pt.x)
            .mul(&pt.y)
            .add(&self.a1.eval(&pt.x))
            .mul(&pt.y)
            .add(&self.a0.eval(&pt.x))
    }

    /// Pole order at infinity.
    pub fn order(&self, s: u32) -> Option<u64> {
        let s = s as u64;
        [(&self.a0, 0), (&self.a1, s), (&self.a2, 2 * s)]
            .iter()
            .filter_map(|(p, base)| p.degree().map(|d| base + 3 * d as u64))
            .max()
    }

    /// The y-linear view, if `a₂ = 0`.
    pub fn as_y_linear(&self) -> Option<YLinFun<K>> {
        if self.a2.is_zero() {
            Some(YLinFun::new(self.a1.clone(), self.a0.clone()))
        } else {
            None
        }
    }

    /// Norm from the degree-3 cover down to the x-line: the determinant of
    /// multiplication by this function on the basis `{1, y, y²}` of the
    /// coordinate ring over `K[x]`. Its roots are the x-projections of the
    /// function's affine zeros, with multiplicity.
    pub fn norm_poly(&self, curve: &Curve<K>) -> Poly<K> {
        let (t, q, p) = (curve.t_poly(), curve.q_poly(), curve.p_poly());
        let (a0, a1, a2) = (&self.a0, &self.a1, &self.a2);
        // Columns of the multiplication matrix: images of 1, y, y² reduced
        // by y³ = T·y² + Q·y + P.
        let m = [
            [a0.clone(), a1.clone(), a2.clone()],
            [
                a2.mul(p),
                a0.add(&a2.mul(q)),
                a1.add(&a2.mul(t)),
            ],
            [
                a1.add(&a2.mul(t)).mul(p),
                a1.mul(q).add(&a2.mul(&t.mul(q).add(p))),
                a0.add(&a1.mul(t)).add(&a2.mul(&t.mul(t).add(q))),
            ],
        ];
        // det (columns m[0], m[1], m[2]) by cofactor expansion
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[c1][r1].mul(&m[c2][r2]).sub(&m[c2][r1].mul(&m[c1][r2]))
        };
        m[0][0]
            .mul(&minor(1, 2, 1, 2))
            .sub(&m[0][1].mul(&minor(0, 2, 1, 2)))
            .add(&m[0][2].mul(&minor(0, 1, 1, 2)))
    }
}

/// Smallest monic polynomial in x that vanishes on every full involution
/// fiber contained in the zero set of `fun`; `None` when there is none.
///
/// A y-linear function vanishes on a complete fiber over `x = a` exactly
/// when `ay(a) = ax(a) = 0` (three points cannot share one line otherwise),
/// so the answer is the monic gcd. A function of x alone consists entirely
/// of full fibers.
pub fn detect_involution_factor<K: FieldElement>(
    fun: &YLinFun<K>,
) -> Result<Option<Poly<K>>> {
    if fun.is_zero() {
        return Err(Error::MalformedRep(
            "the zero function has no zero divisor".into(),
        ));
    }
    let d = fun.ay().gcd_monic(fun.ax())?;
    if d.degree().unwrap_or(0) >= 1 {
        Ok(Some(d))
    } else {
        Ok(None)
    }
}

// --- truncated power series over K, little-endian in the local parameter ---

fn series_mul<K: FieldElement>(spec: &FieldSpec, a: &[K], b: &[K], n: usize) -> Vec<K> {
    let mut out = vec![K::zero(spec); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn series_of_poly<K: FieldElement>(p: &Poly<K>, x0: &K, n: usize) -> Vec<K> {
    let shifted = p.compose_x_plus(x0);
    (0..n).map(|k| shifted.coeff(k)).collect()
}

/// Expansion of the branch `y(t)` at `pt` to `n` terms, `t = x − x₀`.
///
/// Solves `f(x₀ + t, y(t)) = 0` term by term: the next coefficient is read
/// off from the `t^k` coefficient of the defect, divided by `∂f/∂y` at the
/// point. Requires `∂f/∂y ≠ 0` (the projection is unramified there).
fn branch_series<K: FieldElement>(curve: &Curve<K>, pt: &Point<K>, n: usize) -> Result<Vec<K>> {
    let spec = curve.spec();
    let fy = curve.partial_y(pt);
    if fy.is_zero() {
        return Err(Error::DerivativeRowSingular {
            x: pt.x.render(),
            y: pt.y.render(),
        });
    }
    let fy_inv = fy.inv()?;
    let ts = series_of_poly(curve.t_poly(), &pt.x, n);
    let qs = series_of_poly(curve.q_poly(), &pt.x, n);
    let ps = series_of_poly(curve.p_poly(), &pt.x, n);
    let mut y = vec![K::zero(&spec); n];
    y[0] = pt.y.clone();
    for k in 1..n {
        // defect of the series so far, to order k
        let len = k + 1;
        let y2 = series_mul(&spec, &y, &y, len);
        let y3 = series_mul(&spec, &y2, &y, len);
        let mut defect = ps[..len].to_vec();
        let qy = series_mul(&spec, &qs, &y, len);
        let ty2 = series_mul(&spec, &ts, &y2, len);
        for i in 0..len {
            defect[i] = defect[i].add(&qy[i]).add(&ty2[i]).sub(&y3[i]);
        }
        y[k] = defect[k].neg().mul(&fy_inv);
    }
    Ok(y)
}

/// Vanishing-condition rows for one point of multiplicity `mult`: row `r`
/// holds the `t^r` series coefficient of each monomial along the branch.
fn point_rows<K: FieldElement>(
    curve: &Curve<K>,
    pt: &Point<K>,
    mult: usize,
    monomials: &[Monomial],
) -> Result<Vec<Vec<K>>> {
    let spec = curve.spec();
    if mult == 1 {
        let row = monomials
            .iter()
            .map(|mo| {
                let mut v = K::one(&spec);
                for _ in 0..mo.i {
                    v = v.mul(&pt.x);
                }
                for _ in 0..mo.j {
                    v = v.mul(&pt.y);
                }
                v
            })
            .collect();
        return Ok(vec![row]);
    }
    let y = branch_series(curve, pt, mult)?;
    let max_i = monomials.iter().map(|mo| mo.i).max().unwrap_or(0) as usize;
    let mut x_pows: Vec<Vec<K>> = vec![{
        let mut one = vec![K::zero(&spec); mult];
        one[0] = K::one(&spec);
        one
    }];
    let x_lin = {
        let mut v = vec![K::zero(&spec); mult];
        v[0] = pt.x.clone();
        if mult > 1 {
            v[1] = K::one(&spec);
        }
        v
    };
    for i in 1..=max_i {
        x_pows.push(series_mul(&spec, &x_pows[i - 1], &x_lin, mult));
    }
    let y2 = series_mul(&spec, &y, &y, mult);
    let mut rows = vec![Vec::with_capacity(monomials.len()); mult];
    for mo in monomials {
        let series = match mo.j {
            0 => x_pows[mo.i as usize].clone(),
            1 => series_mul(&spec, &x_pows[mo.i as usize], &y, mult),
            _ => series_mul(&spec, &x_pows[mo.i as usize], &y2, mult),
        };
        for (r, row) in rows.iter_mut().enumerate() {
            row.push(series[r].clone());
        }
    }
    Ok(rows)
}

/// Evaluation matrix of `monomials` on `points` (with multiplicity): one row
/// per point occurrence. Equal points are grouped and contribute rows of
/// successively higher vanishing order. Rejects off-curve points.
pub fn evaluation_matrix<K: FieldElement>(
    curve: &Curve<K>,
    points: &[Point<K>],
    monomials: &[Monomial],
) -> Result<Vec<Vec<K>>> {
    for pt in points {
        if !curve.on_curve(pt) {
            return Err(Error::OffCurvePoint {
                x: pt.x.render(),
                y: pt.y.render(),
            });
        }
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.canon_cmp(b));
    let mut rows = Vec::with_capacity(points.len());
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        rows.extend(point_rows(curve, &sorted[i], j - i, monomials)?);
        i = j;
    }
    Ok(rows)
}

/// The function of minimal order vanishing on `points`, found as the kernel
/// of the evaluation matrix over the first `points.len() + 1` monomials and
/// scaled so its highest-weight nonzero coefficient is 1 (which makes the
/// result independent of the order the points are listed in).
///
/// The kernel is 1-dimensional for divisors in general position; anything
/// else reports [`Error::KernelDimensionError`].
pub fn build_function<K: FieldElement>(
    curve: &Curve<K>,
    points: &[Point<K>],
) -> Result<CurveFun<K>> {
    let monomials = curve.monomial_basis(points.len() + 1);
    let rows = evaluation_matrix(curve, points, &monomials)?;
    let kernel = kernel_basis(curve.spec(), monomials.len(), &rows);
    if kernel.len() != 1 {
        return Err(Error::KernelDimensionError {
            expected: 1,
            got: kernel.len(),
        });
    }
    let mut coords = kernel.into_iter().next().unwrap();
    let lead = coords
        .iter()
        .rposition(|c| !c.is_zero())
        .expect("kernel vectors are nonzero");
    let inv = coords[lead].inv()?;
    for c in coords.iter_mut() {
        *c = c.mul(&inv);
    }
    Ok(CurveFun::from_monomial_coords(curve.spec(), &monomials, &coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Family;
    use crate::field::Fp;
    use std::collections::BTreeMap;

    fn quartic_twist() -> Curve<Fp> {
        // f = −y³ + x⁴ + 6 over F_7, genus 3
        let spec = FieldSpec::prime(7).unwrap();
        Curve::new(
            Family::C1,
            1,
            &BTreeMap::from([(12, Fp::new(6, 7))]),
            spec,
        )
        .unwrap()
    }

    fn pt(x: u64, y: u64) -> Point<Fp> {
        Point::new(Fp::new(x, 7), Fp::new(y, 7))
    }

    #[test]
    fn line_through_two_points() {
        let c = quartic_twist();
        // (0,3) and (1,0) are on the curve; the kernel over [1, x, y] is the
        // affine line through them.
        let f = build_function(&c, &[pt(0, 3), pt(1, 0)]).unwrap();
        assert!(f.evaluate(&pt(0, 3)).is_zero());
        assert!(f.evaluate(&pt(1, 0)).is_zero());
        assert!(!f.evaluate(&pt(0, 5)).is_zero());
        // y-linear, order 4 = weight of y
        let lin = f.as_y_linear().unwrap();
        assert_eq!(lin.order(c.s()), Some(4));
        // normalization: the y coefficient (highest weight present) is 1
        assert!(lin.ay().is_monic());
    }

    #[test]
    fn permutation_invariance() {
        let c = quartic_twist();
        let a = build_function(&c, &[pt(0, 3), pt(1, 0), pt(2, 4)]).unwrap();
        let b = build_function(&c, &[pt(2, 4), pt(0, 3), pt(1, 0)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tangent_line_at_double_point() {
        let c = quartic_twist();
        // Double zero at (0,3): f_x = 4x³ vanishes at x = 0, so the tangent
        // is horizontal and the kernel over [1, x, y] is y − 3.
        let f = build_function(&c, &[pt(0, 3), pt(0, 3)]).unwrap();
        let lin = f.as_y_linear().unwrap();
        assert_eq!(lin.ay(), &Poly::constant(Fp::new(1, 7)));
        assert_eq!(lin.ax(), &Poly::constant(Fp::new(4, 7))); // −3 ≡ 4
    }

    #[test]
    fn double_zero_shows_in_z() {
        let c = quartic_twist();
        // function through 2·(2,4) + (0,3): Z must be divisible by (x−2)²
        let f = build_function(&c, &[pt(2, 4), pt(0, 3), pt(2, 4)]).unwrap();
        let lin = f.as_y_linear().unwrap();
        let z = lin.z_polynomial(&c);
        let sq = Poly::from_roots(c.spec(), &[Fp::new(2, 7), Fp::new(2, 7)]);
        assert!(z.exact_div(&sq).is_ok());
        assert!(z.eval(&Fp::new(0, 7)).is_zero());
    }

    #[test]
    fn full_fiber_gives_fat_kernel() {
        let c = quartic_twist();
        // The complete fiber over x = 0 is {(0,3),(0,5),(0,6)}; both x and
        // x² vanish on it, so the kernel over the first 4 monomials has
        // dimension 2 and the build must refuse.
        let err = build_function(&c, &[pt(0, 3), pt(0, 5), pt(0, 6)]).unwrap_err();
        assert!(matches!(
            err,
            Error::KernelDimensionError { expected: 1, got: 2 }
        ));
    }

    #[test]
    fn ramified_double_point_is_rejected() {
        let c = quartic_twist();
        // (1,0) has ∂f/∂y = −3y² = 0: x is not a local parameter there.
        let err = build_function(&c, &[pt(1, 0), pt(1, 0)]).unwrap_err();
        assert!(matches!(err, Error::DerivativeRowSingular { .. }));
    }

    #[test]
    fn off_curve_points_are_rejected() {
        let c = quartic_twist();
        let err = build_function(&c, &[pt(0, 1)]).unwrap_err();
        assert!(matches!(err, Error::OffCurvePoint { .. }));
    }

    #[test]
    fn norm_matches_z_for_y_linear() {
        // The identity is coefficient algebra in T, Q, P; pick a large prime
        // (no nondegeneracy scan) with all three parts present.
        let p = 65537;
        let spec = FieldSpec::prime(p).unwrap();
        let c = Curve::new(
            Family::C2,
            1,
            &BTreeMap::from([
                (2, Fp::new(11, p)),
                (4, Fp::new(5, p)),
                (9, Fp::new(123, p)),
                (15, Fp::new(4321, p)),
            ]),
            spec,
        )
        .unwrap();
        // a handful of pseudo-random y-linear functions
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Fp::new(state % p, p)
        };
        for _ in 0..10 {
            let ay = Poly::from_coeffs(spec, vec![next(), next()]);
            let ax = Poly::from_coeffs(spec, vec![next(), next(), next()]);
            let lin = YLinFun::new(ay.clone(), ax.clone());
            let fun = CurveFun::new(ax, ay, Poly::zero(spec));
            assert_eq!(lin.z_polynomial(&c), fun.norm_poly(&c));
        }
    }

    #[test]
    fn z_degree_equals_order() {
        let c = quartic_twist();
        // I = y·1 + x² has order max(6, 4) = 6 and Z of degree 6
        let lin = YLinFun::new(
            Poly::constant(Fp::new(1, 7)),
            Poly::monomial(Fp::new(1, 7), 2),
        );
        assert_eq!(lin.order(c.s()), Some(6));
        assert_eq!(lin.z_polynomial(&c).degree(), Some(6));
    }

    #[test]
    fn involution_factor_detection() {
        let spec = FieldSpec::prime(7).unwrap();
        // shared root at x = 2
        let shared = YLinFun::new(
            Poly::from_roots(spec, &[Fp::new(2, 7)]),
            Poly::from_roots(spec, &[Fp::new(2, 7), Fp::new(3, 7)]).scale(&Fp::new(5, 7)),
        );
        let d = detect_involution_factor(&shared).unwrap().unwrap();
        assert_eq!(d, Poly::from_roots(spec, &[Fp::new(2, 7)]));
        // coprime parts
        let clean = YLinFun::new(
            Poly::from_roots(spec, &[Fp::new(2, 7)]),
            Poly::from_roots(spec, &[Fp::new(3, 7)]),
        );
        assert!(detect_involution_factor(&clean).unwrap().is_none());
        // pure function of x: everything is fibers
        let pure = YLinFun::new(Poly::zero(spec), Poly::from_roots(spec, &[Fp::new(4, 7)]));
        let d = detect_involution_factor(&pure).unwrap().unwrap();
        assert_eq!(d, Poly::from_roots(spec, &[Fp::new(4, 7)]));
        // zero function is malformed
        assert!(detect_involution_factor(&YLinFun::<Fp>::new(
            Poly::zero(spec),
            Poly::zero(spec)
        ))
        .is_err());
    }

    #[test]
    fn norm_degree_matches_order_generically() {
        let c = quartic_twist();
        // order-7 function y·x + x² + 1 (weights: xy → 7)
        let spec = c.spec();
        let fun = CurveFun::new(
            Poly::from_coeffs(spec, vec![Fp::new(1, 7), Fp::new(0, 7), Fp::new(1, 7)]),
            Poly::monomial(Fp::new(1, 7), 1),
            Poly::zero(spec),
        );
        assert_eq!(fun.order(c.s()), Some(7));
        assert_eq!(fun.norm_poly(&c).degree(), Some(7));
        // order-8 witness with a y² term: x⁰y² has weight 8
        let fun2 = CurveFun::new(
            Poly::constant(Fp::new(3, 7)),
            Poly::zero(spec),
            Poly::constant(Fp::new(1, 7)),
        );
        assert_eq!(fun2.order(c.s()), Some(8));
        assert_eq!(fun2.norm_poly(&c).degree(), Some(8));
    }
}
