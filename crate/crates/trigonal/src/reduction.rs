//! Divisor-class reduction: pushing a degree-(g+p) divisor down to its
//! canonical degree-g representative, one point at a time.
//!
//! One round trip of the loop moves a degree-(g+1) divisor A, held as an
//! [`FRep`] `(F, G)`, to the degree-g divisor in the same class:
//!
//! 1. [`complement_g1`]: `H = Z(G)/F` is the projection of the complement
//!    B = zeros(G) − A, so `[B] = −[A]`; B is now held as `(H, G)`.
//! 2. [`minimal_function`]: replace `G` (order 2g+1) by the minimal
//!    function `I` (order 2g) vanishing on B, via the ansatz
//!    `I = G·M + H·N` with every coefficient of weight > 2g forced to zero.
//! 3. [`invert_g`]: `H̃ = Z(I)/H` is the projection of D* = zeros(I) − B,
//!    and `[D*] = −[B] = [A]` — the class of A now sits in degree g as
//!    `(H̃, I)`.
//! 4. [`extend_with_point`]: absorb the next queued point: `F = H̃·(x−x̄)`
//!    and `G̃ = I·M + H̃·N` with one extra evaluation condition at the
//!    point, giving the next `(F, G)`.
//!
//! Steps 2 and 4 share one mechanism ([`CombinationSpace`]): the unknown
//! coefficient blocks of M and N are cut down by the weight bound, and the
//! answer is the (generically one-dimensional) kernel. In step 4 the kernel
//! before the point condition has dimension two — it contains `I` itself
//! (M = 1, N = 0) — and the evaluation row removes that direction whenever
//! the new point is not a zero of `I`.
//!
//! The combination ansatz of step 2 can degenerate: when the interim pair
//! shares a complete fiber with its own function, every combination collapses
//! to the zero function even though the minimal function exists. While the
//! loop still knows the interim divisor as explicit points (always true for
//! the initial window, and maintained across extensions as long as every zero
//! set along the way splits over the base field), the minimal function is
//! then rebuilt from first principles — the evaluation matrix of the
//! complement's points — and the loop continues.
//!
//! Complete involution fibers are stripped up front (they are principal),
//! and the final `(H̃, I)` is refused as [`Error::DegenerateClass`] when it
//! cannot name its own points — that is, when the reduced divisor is not
//! strictly non-special.

use crate::curve::{Curve, Point};
use crate::divisor::{
    classify, eliminate_involution_triples, points_from_rep, rep_from_points_g, DivisorClass,
    FRep, FiberRemoval, HRep, PointDivisor,
};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::kernel_basis;
use crate::linfun::{build_function, detect_involution_factor, YLinFun};
use crate::poly::Poly;

/// One loop iteration of the reduction, as recorded in the trace: the
/// incoming pair `(F, G)`, the complement `(H, G→I)`, the inverse
/// projection `H̃`, and the point absorbed afterwards (`None` on the final
/// iteration).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionStep<K: FieldElement> {
    pub f: Poly<K>,
    pub g_fun: YLinFun<K>,
    pub h: Poly<K>,
    pub i_fun: YLinFun<K>,
    pub h_tilde: Poly<K>,
    pub point: Option<Point<K>>,
    pub events: Vec<String>,
}

/// Everything that happened during one reduction, for auditing.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ReductionTrace<K: FieldElement> {
    pub removed_fibers: Vec<FiberRemoval<K>>,
    pub steps: Vec<ReductionStep<K>>,
    pub notes: Vec<String>,
}

impl<K: FieldElement> ReductionTrace<K> {
    fn new() -> Self {
        ReductionTrace {
            removed_fibers: Vec::new(),
            steps: Vec::new(),
            notes: Vec::new(),
        }
    }
}

/// Step 1: the complement of the represented divisor inside the zero set of
/// its own function: `H = Z(G)/F`, monic of degree g. The pair `(H, G)`
/// pins the complement divisor.
pub fn complement_g1<K: FieldElement>(
    curve: &Curve<K>,
    rep: &FRep<K>,
) -> Result<(Poly<K>, YLinFun<K>)> {
    let z = rep.g_fun().z_polynomial(curve);
    let h = z.exact_div(rep.f())?;
    debug_assert_eq!(h.degree(), Some(curve.genus() as usize));
    debug_assert!(h.is_monic());
    Ok((h, rep.g_fun().clone()))
}

/// Step 3: the projection of the inverse divisor, `H̃ = Z(I)/H`, monic of
/// degree g. `(H̃, I)` pins the divisor inverse to the one pinned by
/// `(H, I)`.
pub fn invert_g<K: FieldElement>(
    curve: &Curve<K>,
    h: &Poly<K>,
    i_fun: &YLinFun<K>,
) -> Result<Poly<K>> {
    i_fun.z_polynomial(curve).exact_div(h)
}

/// The linear space of functions `Φ = base·M + carrier·N`, `N = y·νy + νx`,
/// with prescribed coefficient-block sizes and output degree bounds. Rows of
/// the homogeneous system force every coefficient of the y-part of Φ above
/// `bound_y` (and of the x-part above `bound_x`) to vanish; what survives is
/// the kernel.
struct CombinationSpace<'a, K: FieldElement> {
    base: &'a YLinFun<K>,
    carrier: &'a Poly<K>,
    n_m: usize,
    n_vy: usize,
    n_vx: usize,
    bound_y: usize,
    bound_x: usize,
}

impl<'a, K: FieldElement> CombinationSpace<'a, K> {
    fn cols(&self) -> usize {
        self.n_m + self.n_vy + self.n_vx
    }

    /// Highest x-exponent the given part of Φ can reach, or None when both
    /// contributing blocks are empty or zero.
    fn reach(a: &Poly<K>, n_a: usize, b: &Poly<K>, n_b: usize) -> Option<usize> {
        let from_a = a.degree().filter(|_| n_a > 0).map(|d| d + n_a - 1);
        let from_b = b.degree().filter(|_| n_b > 0).map(|d| d + n_b - 1);
        from_a.into_iter().chain(from_b).max()
    }

    fn high_rows(&self, spec: &crate::field::FieldSpec) -> Vec<Vec<K>> {
        let mut rows = Vec::new();
        let zero = K::zero(spec);
        if let Some(top) = Self::reach(self.base.ay(), self.n_m, self.carrier, self.n_vy) {
            for i in (self.bound_y + 1)..=top {
                let mut row = Vec::with_capacity(self.cols());
                for j in 0..self.n_m {
                    row.push(if i >= j { self.base.ay().coeff(i - j) } else { zero.clone() });
                }
                for j in 0..self.n_vy {
                    row.push(if i >= j { self.carrier.coeff(i - j) } else { zero.clone() });
                }
                row.extend(std::iter::repeat(zero.clone()).take(self.n_vx));
                rows.push(row);
            }
        }
        if let Some(top) = Self::reach(self.base.ax(), self.n_m, self.carrier, self.n_vx) {
            for i in (self.bound_x + 1)..=top {
                let mut row = Vec::with_capacity(self.cols());
                for j in 0..self.n_m {
                    row.push(if i >= j { self.base.ax().coeff(i - j) } else { zero.clone() });
                }
                row.extend(std::iter::repeat(zero.clone()).take(self.n_vy));
                for j in 0..self.n_vx {
                    row.push(if i >= j { self.carrier.coeff(i - j) } else { zero.clone() });
                }
                rows.push(row);
            }
        }
        rows
    }

    /// The condition `Φ(pt) = 0` as a row over the unknown blocks.
    fn eval_row(&self, pt: &Point<K>) -> Vec<K> {
        let base_at = self.base.evaluate(pt);
        let carrier_at = self.carrier.eval(&pt.x);
        let mut row = Vec::with_capacity(self.cols());
        let mut xp = base_at.clone();
        for _ in 0..self.n_m {
            row.push(xp.clone());
            xp = xp.mul(&pt.x);
        }
        let mut xp = carrier_at.mul(&pt.y);
        for _ in 0..self.n_vy {
            row.push(xp.clone());
            xp = xp.mul(&pt.x);
        }
        let mut xp = carrier_at;
        for _ in 0..self.n_vx {
            row.push(xp.clone());
            xp = xp.mul(&pt.x);
        }
        row
    }

    fn assemble(&self, spec: crate::field::FieldSpec, v: &[K]) -> YLinFun<K> {
        let m_poly = Poly::from_coeffs(spec, v[..self.n_m].to_vec());
        let vy = Poly::from_coeffs(spec, v[self.n_m..self.n_m + self.n_vy].to_vec());
        let vx = Poly::from_coeffs(spec, v[self.n_m + self.n_vy..].to_vec());
        let ay = self.base.ay().mul(&m_poly).add(&self.carrier.mul(&vy));
        let ax = self.base.ax().mul(&m_poly).add(&self.carrier.mul(&vx));
        YLinFun::new(ay, ax)
    }
}

/// Step 2: the minimal function of the divisor pinned by `(H, G)` — the
/// essentially unique `I = G·M + H·N` of order 2g, with `deg M ≤ g−1` and
/// `N` one weight step below `G`. The defining linear system has one more
/// unknown than equations; a kernel of any other dimension flags a
/// degenerate configuration.
pub fn minimal_function<K: FieldElement>(
    curve: &Curve<K>,
    h: &Poly<K>,
    g_fun: &YLinFun<K>,
) -> Result<YLinFun<K>> {
    let g = curve.genus() as usize;
    let spec = curve.spec();
    let (by_i, bx_i) = curve.order_2g_bounds();
    let (by_g, bx_g) = curve.order_2g1_bounds();
    let space = CombinationSpace {
        base: g_fun,
        carrier: h,
        n_m: g,
        n_vy: by_g,
        n_vx: bx_g,
        bound_y: by_i,
        bound_x: bx_i,
    };
    let rows = space.high_rows(&spec);
    let kernel = kernel_basis(spec, space.cols(), &rows);
    if kernel.len() != 1 {
        return Err(Error::KernelDimensionError {
            expected: 1,
            got: kernel.len(),
        });
    }
    let i_fun = space.assemble(spec, &kernel[0]);
    if i_fun.is_zero() {
        return Err(Error::DegenerateClass(
            "the pinning system collapsed to the zero function; the interim pair is too \
             degenerate to continue"
                .into(),
        ));
    }
    if i_fun.order(curve.s()) != Some(2 * g as u64) {
        return Err(Error::DegenerateClass(
            "the divisor admits a function below order 2g; its class has no faithful reduced form"
                .into(),
        ));
    }
    i_fun.normalized(curve.s())
}

/// The zero divisor of a y-linear function as explicit points, multiplicity
/// included: the involution factor contributes whole fibers, the cofactor one
/// point per root of its norm polynomial. Fails when any root or fiber does
/// not split over the base field, or when the field is not enumerable.
fn function_zeros<K: FieldElement>(
    curve: &Curve<K>,
    fun: &YLinFun<K>,
) -> Result<PointDivisor<K>> {
    let mut pts: Vec<Point<K>> = Vec::new();
    let cofactor = match detect_involution_factor(fun)? {
        Some(t) => {
            let roots = t.roots_small_field()?;
            let split: usize = roots.iter().map(|(_, m)| m).sum();
            if Some(split) != t.degree() {
                return Err(Error::DegenerateConfiguration(
                    "the function's involution factor does not split over the base field".into(),
                ));
            }
            for (a, mult) in roots {
                let fiber = curve.involution_fiber(&a)?;
                if fiber.len() != 3 {
                    return Err(Error::DegenerateConfiguration(format!(
                        "the fiber over x = {} does not split over the base field",
                        a.render()
                    )));
                }
                for _ in 0..mult {
                    pts.extend(fiber.iter().cloned());
                }
            }
            YLinFun::new(fun.ay().exact_div(&t)?, fun.ax().exact_div(&t)?)
        }
        None => fun.clone(),
    };
    let norm = cofactor.z_polynomial(curve);
    if norm.degree().unwrap_or(0) > 0 {
        pts.extend(points_from_rep(curve, &norm, &cofactor)?.points().iter().cloned());
    }
    PointDivisor::new(curve, pts)
}

/// Multiset difference `total − part` of two point divisors, or None when
/// `part` is not contained in `total`.
fn subtract_points<K: FieldElement>(
    curve: &Curve<K>,
    total: &PointDivisor<K>,
    part: &PointDivisor<K>,
) -> Option<PointDivisor<K>> {
    let mut rest: Vec<Point<K>> = total.points().to_vec();
    for p in part.points() {
        let k = rest.iter().position(|q| q == p)?;
        rest.remove(k);
    }
    PointDivisor::new(curve, rest).ok()
}

/// The complement B = zeros(G) − A as explicit points, for an interim divisor
/// A that is itself known as points. Best-effort: returns None whenever some
/// zero of G cannot be named in the base field.
fn resolve_complement<K: FieldElement>(
    curve: &Curve<K>,
    a_pts: &PointDivisor<K>,
    g_fun: &YLinFun<K>,
    h: &Poly<K>,
) -> Option<PointDivisor<K>> {
    let zeros = function_zeros(curve, g_fun).ok()?;
    let b = subtract_points(curve, &zeros, a_pts)?;
    debug_assert_eq!(
        Poly::from_roots(
            curve.spec(),
            &b.points().iter().map(|p| p.x.clone()).collect::<Vec<_>>()
        ),
        *h
    );
    Some(b)
}

/// Step 2 from first principles: the order-2g function vanishing on an
/// explicitly known complement, built from its evaluation matrix over the
/// first g+1 monomials. This is the rescue for [`minimal_function`] when the
/// combination ansatz degenerates — as it does when the interim pair shares
/// a complete fiber with its own function — and it is available only while
/// the loop still knows the complement as points.
fn minimal_function_from_points<K: FieldElement>(
    curve: &Curve<K>,
    complement: &PointDivisor<K>,
) -> Result<YLinFun<K>> {
    let g = curve.genus() as usize;
    debug_assert_eq!(complement.degree(), g);
    let fun = build_function(curve, complement.points())?;
    let lin = fun
        .as_y_linear()
        .expect("the first g+1 monomials are all linear in y");
    if lin.order(curve.s()) != Some(2 * g as u64) {
        return Err(Error::DegenerateClass(
            "the divisor admits a function below order 2g; its class has no faithful reduced form"
                .into(),
        ));
    }
    lin.normalized(curve.s())
}

/// Step 4: extend the divisor pinned by `(H̃, I)` with one more point:
/// `F = H̃·(x − x̄)` and `G = I·M + H̃·N`, where the weight bound leaves a
/// two-dimensional kernel (it contains `I` itself) and the evaluation
/// condition at the new point cuts it to one. The point must not lie on
/// `I` — otherwise the cut fails and [`Error::PointOnI`] is returned.
pub fn extend_with_point<K: FieldElement>(
    curve: &Curve<K>,
    h_tilde: &Poly<K>,
    i_fun: &YLinFun<K>,
    pt: &Point<K>,
) -> Result<FRep<K>> {
    if !curve.on_curve(pt) {
        return Err(Error::OffCurvePoint {
            x: pt.x.render(),
            y: pt.y.render(),
        });
    }
    if i_fun.evaluate(pt).is_zero() {
        return Err(Error::PointOnI);
    }
    let g = curve.genus() as usize;
    let spec = curve.spec();
    let (by_i, bx_i) = curve.order_2g_bounds();
    let (by_g, bx_g) = curve.order_2g1_bounds();
    let space = CombinationSpace {
        base: i_fun,
        carrier: h_tilde,
        n_m: g,
        n_vy: by_i,
        n_vx: bx_i,
        bound_y: by_g,
        bound_x: bx_g,
    };
    let mut rows = space.high_rows(&spec);
    rows.push(space.eval_row(pt));
    let kernel = kernel_basis(spec, space.cols(), &rows);
    if kernel.len() != 1 {
        return Err(Error::KernelDimensionError {
            expected: 1,
            got: kernel.len(),
        });
    }
    let g_fun = space.assemble(spec, &kernel[0]);
    let shift = Poly::from_roots(spec, std::slice::from_ref(&pt.x));
    FRep::new(curve, h_tilde.mul(&shift), g_fun)
}

/// Reduces an effective divisor of any degree to the degree-g representative
/// of its class, together with a full trace.
///
/// Complete involution fibers are stripped first. A divisor of degree below
/// g after stripping has no faithful representative ([`Error::SpecialDivisor`]);
/// a degree-g divisor is compressed directly (it must be strictly
/// non-special); anything larger goes through the reduction loop, absorbing
/// one point per iteration.
pub fn reduce_divisor<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
) -> Result<(HRep<K>, ReductionTrace<K>)> {
    let mut trace = ReductionTrace::new();
    // Every loop attempt is cheap, but unlucky paths can restart; the budget
    // keeps the whole reduction strictly bounded.
    let mut budget = 8 + 4 * divisor.degree();
    let rep = reduce_inner(curve, divisor, &mut trace, &mut budget)?;
    Ok((rep, trace))
}

/// A verdict that condemns only the attempted path, not the divisor class:
/// a different window or absorption order may still succeed.
fn is_path_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotStrictlyNonSpecial(_)
            | Error::KernelDimensionError { .. }
            | Error::DerivativeRowSingular { .. }
            | Error::DegenerateClass(_)
            | Error::DegenerateConfiguration(_)
            | Error::InvolutionCollision { .. }
            | Error::PointOnI
            | Error::MalformedRep(_)
    )
}

fn reduce_inner<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
    trace: &mut ReductionTrace<K>,
    budget: &mut usize,
) -> Result<HRep<K>> {
    let (current, removed) = eliminate_involution_triples(curve, divisor);
    trace.removed_fibers.extend(removed);
    let g = curve.genus() as usize;
    if current.degree() < g {
        return Err(Error::SpecialDivisor(format!(
            "degree {} after fiber removal is below the genus {g}; every such divisor is special",
            current.degree()
        )));
    }
    if current.degree() == g {
        return rep_from_points_g(curve, &current);
    }

    // Initial window: g+1 points. A failed attempt — whether the window
    // itself is special or the loop later runs into a degenerate path —
    // rotates the starting offset and tries again; only the last error
    // survives.
    let n = current.degree();
    let mut last_err: Option<Error> = None;
    for rot in 0..n {
        let (window, queue) = select_window(curve, &current, rot, g + 1)?;
        let frep = match interim_rep_g1(curve, &window) {
            Ok(frep) => frep,
            Err(e) if is_path_error(&e) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        if *budget == 0 {
            return Err(Error::DegenerateConfiguration(
                "reduction retry budget exhausted".into(),
            ));
        }
        *budget -= 1;
        // Snapshot the trace so an abandoned attempt leaves no residue.
        let (fibers_mark, steps_mark, notes_mark) = (
            trace.removed_fibers.len(),
            trace.steps.len(),
            trace.notes.len(),
        );
        if rot > 0 {
            trace
                .notes
                .push(format!("initial window accepted at rotation {rot}"));
        }
        match run_loop(curve, frep, queue, window, trace, budget) {
            Ok(rep) => return Ok(rep),
            Err(e) if is_path_error(&e) => {
                trace.removed_fibers.truncate(fibers_mark);
                trace.steps.truncate(steps_mark);
                trace.notes.truncate(notes_mark);
                trace
                    .notes
                    .push(format!("attempt at rotation {rot} abandoned: {e}"));
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::DegenerateConfiguration(
            "no initial window of distinct-x points can be selected".into(),
        )
    }))
}

/// Picks the `size` points starting at `rot` (cyclically) as the window;
/// the rest queue for later absorption. Involution mates and repeated points
/// are admissible inside a window — the loop knows the window as points, so
/// nothing is lost to the pair compression.
fn select_window<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
    rot: usize,
    size: usize,
) -> Result<(PointDivisor<K>, Vec<Point<K>>)> {
    let pts = divisor.points();
    let n = pts.len();
    let mut window: Vec<Point<K>> = Vec::with_capacity(size);
    let mut queue: Vec<Point<K>> = Vec::with_capacity(n - size);
    for k in 0..n {
        let p = pts[(rot + k) % n].clone();
        if window.len() < size {
            window.push(p);
        } else {
            queue.push(p);
        }
    }
    Ok((PointDivisor::new(curve, window)?, queue))
}

/// Compresses a degree-(g+1) window to `(F, G)` for loop-internal use. Unlike
/// the public compression, involution mates and repeated points are accepted:
/// the pair itself need not name its points, because the loop carries the
/// window explicitly. The kernel dimension and the order validation still
/// reject special windows.
fn interim_rep_g1<K: FieldElement>(
    curve: &Curve<K>,
    window: &PointDivisor<K>,
) -> Result<FRep<K>> {
    // A surplus kernel vector or a dropped order both mean the same thing
    // here: some function of order ≤ 2g vanishes on the window, so the
    // window is special.
    let special = |e: Error| match e {
        Error::KernelDimensionError { .. } | Error::MalformedRep(_) => {
            Error::NotStrictlyNonSpecial(
                "the selected window admits a function of order ≤ 2g; it is special".into(),
            )
        }
        other => other,
    };
    let fun = build_function(curve, window.points()).map_err(special)?;
    let g_fun = fun
        .as_y_linear()
        .expect("the first g+2 monomials are all linear in y");
    let xs: Vec<K> = window.points().iter().map(|p| p.x.clone()).collect();
    let f = Poly::from_roots(curve.spec(), &xs);
    FRep::new(curve, f, g_fun).map_err(special)
}

/// Step 4 from first principles: the next pair built directly from the
/// inverse divisor's points, for configurations where the combination ansatz
/// degenerates — a shared factor between `H̃` and `I`, or a point landing on
/// `I` or over a root of `H̃`.
fn extend_from_points<K: FieldElement>(
    curve: &Curve<K>,
    h_tilde: &Poly<K>,
    d_star: &PointDivisor<K>,
    pt: &Point<K>,
) -> Result<FRep<K>> {
    let mut pts = d_star.points().to_vec();
    pts.push(pt.clone());
    let extended = PointDivisor::new(curve, pts)?;
    let fun = build_function(curve, extended.points())?;
    let g_fun = fun
        .as_y_linear()
        .expect("the first g+2 monomials are all linear in y");
    let shift = Poly::from_roots(curve.spec(), std::slice::from_ref(&pt.x));
    FRep::new(curve, h_tilde.mul(&shift), g_fun)
}

fn run_loop<K: FieldElement>(
    curve: &Curve<K>,
    mut frep: FRep<K>,
    mut queue: Vec<Point<K>>,
    window: PointDivisor<K>,
    trace: &mut ReductionTrace<K>,
    budget: &mut usize,
) -> Result<HRep<K>> {
    // While the interim divisor is known as explicit points, a degenerate
    // step-2 system can be rebuilt from first principles, and the fallback
    // below can expand the interim divisor even when its pair is ambiguous.
    // The knowledge starts with the initial window and survives an extension
    // only while every zero set along the way splits over the base field;
    // when it lapses, the loop continues on the pair arithmetic alone.
    let mut resolved: Option<PointDivisor<K>> = Some(window);
    loop {
        let (h, g_fun) = complement_g1(curve, &frep)?;
        let complement = resolved
            .as_ref()
            .and_then(|a| resolve_complement(curve, a, &g_fun, &h));
        let mut events = Vec::new();
        let i_fun = match minimal_function(curve, &h, &g_fun) {
            Ok(i) => i,
            Err(e) if is_path_error(&e) => match &complement {
                Some(b) => {
                    events.push(format!(
                        "step-2 ansatz degenerated ({e}); rebuilt the minimal function from \
                         the complement's points"
                    ));
                    minimal_function_from_points(curve, b)?
                }
                None => return Err(e),
            },
            Err(e) => return Err(e),
        };
        let h_tilde = invert_g(curve, &h, &i_fun)?;

        if queue.is_empty() {
            trace.steps.push(ReductionStep {
                f: frep.f().clone(),
                g_fun: frep.g_fun().clone(),
                h,
                i_fun: i_fun.clone(),
                h_tilde: h_tilde.clone(),
                point: None,
                events,
            });
            return finish(curve, h_tilde, i_fun);
        }

        // The inverse divisor D* = zeros(I) − B as points, when the chain of
        // knowledge is unbroken: it seeds the next iteration's interim points
        // and gives the fallback a robust expansion.
        let d_star = complement.as_ref().and_then(|b| {
            let zeros = function_zeros(curve, &i_fun).ok()?;
            subtract_points(curve, &zeros, b)
        });

        // Next point: the combination extension needs the candidate off the
        // interim projection and off I; when it is inapplicable or its system
        // degenerates, and the inverse divisor is known as points, the pair
        // is rebuilt from first principles instead. The absorption order is
        // free, so a candidate that fails both routes is skipped, not fatal.
        let mut chosen: Option<(usize, FRep<K>)> = None;
        for (k, cand) in queue.iter().enumerate() {
            let mut attempt: Option<FRep<K>> = None;
            if h_tilde.eval(&cand.x).is_zero() || i_fun.evaluate(cand).is_zero() {
                events.push(format!(
                    "({}, {}): collides with the interim pair; the combination extension \
                     does not apply",
                    cand.x.render(),
                    cand.y.render()
                ));
            } else {
                match extend_with_point(curve, &h_tilde, &i_fun, cand) {
                    Ok(next) => attempt = Some(next),
                    Err(e) if is_path_error(&e) => {
                        events.push(format!(
                            "({}, {}): the combination extension degenerated ({e})",
                            cand.x.render(),
                            cand.y.render()
                        ));
                    }
                    Err(e) => return Err(e),
                }
            }
            if attempt.is_none() {
                if let Some(d) = &d_star {
                    match extend_from_points(curve, &h_tilde, d, cand) {
                        Ok(next) => {
                            events.push(format!(
                                "({}, {}): extended from the inverse divisor's points",
                                cand.x.render(),
                                cand.y.render()
                            ));
                            attempt = Some(next);
                        }
                        Err(e) if is_path_error(&e) => {
                            events.push(format!(
                                "({}, {}): the point extension degenerated ({e})",
                                cand.x.render(),
                                cand.y.render()
                            ));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            if let Some(next) = attempt {
                // Without the point knowledge, an ambiguous pair could never
                // be expanded again; refuse to carry one blind.
                if d_star.is_none() && pair_is_ambiguous(next.f(), next.g_fun())? {
                    events.push(format!(
                        "skipped ({}, {}): the extended pair would be ambiguous",
                        cand.x.render(),
                        cand.y.render()
                    ));
                    continue;
                }
                chosen = Some((k, next));
                break;
            }
        }

        match chosen {
            Some((k, next)) => {
                let pt = queue.remove(k);
                resolved = match (d_star, PointDivisor::new(curve, vec![pt.clone()])) {
                    (Some(d), Ok(single)) => Some(d.concat(&single)),
                    _ => None,
                };
                trace.steps.push(ReductionStep {
                    f: frep.f().clone(),
                    g_fun: frep.g_fun().clone(),
                    h,
                    i_fun,
                    h_tilde,
                    point: Some(pt),
                    events,
                });
                frep = next;
            }
            None => {
                // Every queued point collides with the interim pair. Expand
                // the interim divisor back to points, merge with the queue
                // and restart. The merge has one point fewer than the state
                // that entered this loop (g + queue against g+1 + queue), so
                // the restart always terminates.
                events.push("no admissible extension point; expanding and restarting".into());
                trace.steps.push(ReductionStep {
                    f: frep.f().clone(),
                    g_fun: frep.g_fun().clone(),
                    h,
                    i_fun: i_fun.clone(),
                    h_tilde: h_tilde.clone(),
                    point: None,
                    events,
                });
                let interim = match d_star {
                    Some(d) => d,
                    None => points_from_rep(curve, &h_tilde, &i_fun).map_err(|e| {
                        Error::DegenerateConfiguration(format!(
                            "no admissible extension point, and the interim divisor cannot be \
                             expanded back to points: {e}"
                        ))
                    })?,
                };
                let merged = interim.concat(&PointDivisor::new(curve, queue)?);
                trace
                    .notes
                    .push("restarted after expanding the interim divisor".into());
                return reduce_inner(curve, &merged, trace, budget);
            }
        }
    }
}

/// Whether a (projection, function) pair fails to name its own points: a
/// shared root between the projection and the function's involution factor
/// (a fiber fully inside the function's zero set meeting the support) makes
/// every y-coordinate over that root unrecoverable from the pair.
fn pair_is_ambiguous<K: FieldElement>(
    projection: &Poly<K>,
    fun: &YLinFun<K>,
) -> Result<bool> {
    match detect_involution_factor(fun)? {
        Some(d) => Ok(projection.gcd_monic(&d)?.degree().unwrap_or(0) >= 1),
        None => Ok(false),
    }
}

/// Final faithfulness gate: a reduced pair that cannot name its own points
/// means the class's degree-g representative contains involution mates, so
/// no faithful compressed form exists.
fn finish<K: FieldElement>(
    curve: &Curve<K>,
    h_tilde: Poly<K>,
    i_fun: YLinFun<K>,
) -> Result<HRep<K>> {
    if pair_is_ambiguous(&h_tilde, &i_fun)? {
        return Err(Error::DegenerateClass(
            "the reduced divisor contains involution mates; its compressed form would be \
             ambiguous"
                .into(),
        ));
    }
    HRep::new(curve, h_tilde, i_fun)
}

/// Class addition: expand both summands to points, concatenate, reduce.
/// Expansion needs an enumerable field.
pub fn add_divisors<K: FieldElement>(
    curve: &Curve<K>,
    a: &HRep<K>,
    b: &HRep<K>,
) -> Result<(HRep<K>, ReductionTrace<K>)> {
    let da = a.points(curve)?;
    let db = b.points(curve)?;
    reduce_divisor(curve, &da.concat(&db))
}

/// Class inversion, entirely in the compressed form: `(Z(I)/H, I)` pins the
/// divisor inverse to the one pinned by `(H, I)` — no point extraction, no
/// field-size restriction.
pub fn invert_class<K: FieldElement>(curve: &Curve<K>, rep: &HRep<K>) -> Result<HRep<K>> {
    let h_inv = invert_g(curve, rep.h(), rep.i())?;
    finish(curve, h_inv, rep.i().clone())
}

/// Convenience wrapper: classification of a point divisor (re-exported at
/// the crate root alongside the reduction entry points).
pub fn classify_divisor<K: FieldElement>(
    curve: &Curve<K>,
    divisor: &PointDivisor<K>,
) -> Result<DivisorClass> {
    classify(curve, divisor)
}
