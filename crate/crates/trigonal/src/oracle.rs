//! Independent verification: a linear-algebra principality test and an
//! exhaustive small-field census.
//!
//! A degree-N effective divisor D with N ≥ 2g satisfies D − N·∞ ~ 0 exactly
//! when some function of order ≤ N vanishes on all of D, and such functions
//! are spanned by the first N−g+1 monomials. The kernel of the N×(N−g+1)
//! evaluation matrix is therefore the entire obstruction: a nonzero kernel
//! vector is the principal function. Its norm polynomial must still
//! reproduce the projection of D exactly — that final comparison rules out
//! witnesses that vanish somewhere other than D (special position).
//!
//! [`is_principal`] shares no code with the reduction loop (only the
//! evaluation matrix and the kernel solver), so [`check_reduction`] is an
//! independent referee for the engine: a reduction `original → (H̃, I)` is
//! correct precisely when `original ∪ D*` is principal, where D* is the
//! divisor inverse to the reduced one, pinned by the pair `(Z(I)/H̃, I)`.
//!
//! D* rarely has coordinates in the base field — over a small prime field
//! its x-coordinates usually live in a cubic extension — so the referee
//! never names its points in the common case. Instead, "the witness vanishes
//! on D*" becomes a divisibility: eliminating y between the witness and `I`
//! (both evaluated along `y = −I_x/I_y`) leaves a polynomial in x alone that
//! the inverse projection must divide. That residue condition is linear in
//! the witness's coefficients and joins the evaluation rows of `original` in
//! one kernel system. Only when the inverse projection has repeated roots —
//! where vanishing order along a branch matters — are the inverse points
//! materialized explicitly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::curve::{Curve, Point};
use crate::divisor::{classify, points_from_rep, DivisorClass, HRep, PointDivisor};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::kernel_basis;
use crate::linfun::{evaluation_matrix, CurveFun};
use crate::poly::Poly;
use crate::reduction::reduce_divisor;

/// Outcome of a principality test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceVerdict<K: FieldElement> {
    /// Whether the tested divisor, minus its degree at infinity, is
    /// principal.
    pub equivalent: bool,
    /// The principal function, when the kernel produced one.
    pub witness: Option<CurveFun<K>>,
    /// Dimension of the kernel of the evaluation system.
    pub kernel_dim: usize,
}

/// Tests whether `d − N·∞` is principal for an effective divisor `d` of
/// degree N ≥ 2g, by solving for a function of order ≤ N vanishing on `d`
/// and confirming that the witness vanishes nowhere else: its norm
/// polynomial must be exactly the projection of `d`.
///
/// Repeated points contribute derivative rows, so multiplicities are tested
/// faithfully. The verdict's `kernel_dim` exposes specialness: a dimension
/// above 1 means the union sits in special position.
pub fn is_principal<K: FieldElement>(
    curve: &Curve<K>,
    d: &PointDivisor<K>,
) -> Result<EquivalenceVerdict<K>> {
    let g = curve.genus() as usize;
    let n = d.degree();
    if n < 2 * g {
        return Err(Error::InvalidParameter(format!(
            "principality test needs degree ≥ 2g = {}, got {n}",
            2 * g
        )));
    }
    let monomials = curve.monomial_basis(n - g + 1);
    let rows = evaluation_matrix(curve, d.points(), &monomials)?;
    let xs: Vec<K> = d.points().iter().map(|p| p.x.clone()).collect();
    let projection = Poly::from_roots(curve.spec(), &xs);
    verdict_from_kernel(curve, &monomials, rows, n, &projection)
}

/// Solves the assembled vanishing system and confirms the witness: the rows
/// only say where the witness vanishes; its norm polynomial says where else.
/// Norm degree N equal to the target projection means the zero set is the
/// tested divisor and nothing more.
fn verdict_from_kernel<K: FieldElement>(
    curve: &Curve<K>,
    monomials: &[crate::curve::Monomial],
    rows: Vec<Vec<K>>,
    n: usize,
    projection: &Poly<K>,
) -> Result<EquivalenceVerdict<K>> {
    let kernel = kernel_basis(curve.spec(), monomials.len(), &rows);
    let kernel_dim = kernel.len();
    if kernel.is_empty() {
        return Ok(EquivalenceVerdict {
            equivalent: false,
            witness: None,
            kernel_dim,
        });
    }
    let witness = CurveFun::from_monomial_coords(curve.spec(), monomials, &kernel[0]);
    let norm = witness.norm_poly(curve);
    let equivalent = norm.degree() == Some(n) && norm.monic()? == *projection;
    Ok(EquivalenceVerdict {
        equivalent,
        witness: Some(witness),
        kernel_dim,
    })
}

/// Verifies a reduction `original → reduced` without trusting the engine:
/// the divisor D* inverse to the reduced one is pinned by `(Z(I)/H̃, I)`,
/// and the reduction is correct exactly when `original ∪ D*` is principal.
///
/// When the inverse projection is squarefree (the common case), D* is never
/// named as points: the witness's vanishing on D* is the condition that the
/// inverse projection divide the y-eliminant of the witness against `I` —
/// linear in the witness's coefficients, exact over any field. Repeated
/// roots in the inverse projection need vanishing orders along branches, so
/// those fall back to materializing D* (enumerable fields only); the same
/// fallback covers an original that meets D* itself, where the two row
/// blocks would otherwise undercount a shared point.
pub fn check_reduction<K: FieldElement>(
    curve: &Curve<K>,
    original: &PointDivisor<K>,
    reduced: &HRep<K>,
) -> Result<EquivalenceVerdict<K>> {
    let g = curve.genus() as usize;
    let spec = curve.spec();
    let inverse_projection = reduced.i().z_polynomial(curve).exact_div(reduced.h())?;
    debug_assert_eq!(inverse_projection.degree(), Some(g));
    if original.degree() < g {
        return Err(Error::InvalidParameter(format!(
            "reduction check needs an original of degree ≥ g = {g}, got {}",
            original.degree()
        )));
    }
    let iy = reduced.i().ay();
    // The squarefree test via gcd(f, f′) is only conclusive while the degree
    // stays below the characteristic.
    let char_ok = match spec {
        crate::field::FieldSpec::Prime { p } => (g as u64) < p,
        crate::field::FieldSpec::Rational => true,
    };
    let simple = char_ok
        && inverse_projection
            .gcd_monic(&inverse_projection.derivative())?
            .degree()
            == Some(0)
        // A root shared with I_y leaves the y-coordinate over it unpinned:
        // the eliminant would vanish there for every witness.
        && inverse_projection.gcd_monic(iy)?.degree() == Some(0);
    if !simple {
        let d_star = points_from_rep(curve, &inverse_projection, reduced.i())?;
        debug_assert_eq!(d_star.degree(), g);
        return is_principal(curve, &original.concat(&d_star));
    }

    // A point of the original lying on D* crosses the two row blocks: its
    // union multiplicity climbs by one, so it moves from the divisibility
    // modulus into the evaluation block. Unramified points take an extra
    // union copy (a branch derivative row); at a totally ramified point the
    // valuations of the three y-parts never collide (v(w_j·y^j) = 3·ord + j),
    // so second-order vanishing is exactly "the constant and y parts both
    // vanish at x" — one extra row on the y part.
    let mut modulus = inverse_projection.clone();
    let mut union_pts: Vec<Point<K>> = original.points().to_vec();
    let mut ramified_cross: Vec<K> = Vec::new();
    let mut seen: Vec<Point<K>> = Vec::new();
    for pt in original.points() {
        if seen.iter().any(|q| q == pt)
            || !inverse_projection.eval(&pt.x).is_zero()
            || !reduced.i().evaluate(pt).is_zero()
        {
            continue;
        }
        seen.push(pt.clone());
        if curve.partial_y(pt).is_zero() {
            ramified_cross.push(pt.x.clone());
        } else {
            union_pts.push(pt.clone());
        }
        modulus = modulus.exact_div(&Poly::from_roots(spec, std::slice::from_ref(&pt.x)))?;
    }

    let n = original.degree() + g;
    let monomials = curve.monomial_basis(n - g + 1);
    let mut rows = evaluation_matrix(curve, &union_pts, &monomials)?;
    for a in &ramified_cross {
        rows.push(
            monomials
                .iter()
                .map(|m| {
                    if m.j != 1 {
                        return K::zero(&spec);
                    }
                    let mut v = K::one(&spec);
                    for _ in 0..m.i {
                        v = v.mul(a);
                    }
                    v
                })
                .collect(),
        );
    }
    // Vanishing on the uncrossed part of D*: substituting y = −I_x/I_y into
    // the witness and clearing denominators maps each monomial x^i y^j to the
    // polynomial x^i·(−I_x)^j·I_y^(J−j); the combination must be divisible by
    // the remaining modulus, i.e. its residue must cancel coefficient by
    // coefficient — one linear row per modulus degree.
    let m_deg = modulus.degree().unwrap_or(0);
    if m_deg > 0 {
        let j_max = monomials.iter().map(|m| m.j).max().unwrap_or(0) as usize;
        let one = Poly::monomial(K::one(&spec), 0);
        let neg_ix = reduced.i().ax().neg();
        let mut pow_nix = vec![one.clone()];
        let mut pow_iy = vec![one];
        for _ in 0..j_max {
            pow_nix.push(pow_nix.last().unwrap().mul(&neg_ix));
            pow_iy.push(pow_iy.last().unwrap().mul(iy));
        }
        let mut residues = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let lifted = Poly::monomial(K::one(&spec), m.i as usize)
                .mul(&pow_nix[m.j as usize])
                .mul(&pow_iy[j_max - m.j as usize]);
            residues.push(lifted.divrem(&modulus)?.1);
        }
        for k in 0..m_deg {
            rows.push(residues.iter().map(|r| r.coeff(k)).collect());
        }
    }
    let xs: Vec<K> = original.points().iter().map(|p| p.x.clone()).collect();
    let projection = Poly::from_roots(spec, &xs).mul(&inverse_projection);
    verdict_from_kernel(curve, &monomials, rows, n, &projection)
}

/// Every affine point of the curve with coordinates in the base field, in
/// canonical order. Needs an enumerable field.
pub fn affine_points<K: FieldElement>(curve: &Curve<K>) -> Result<Vec<Point<K>>> {
    let mut pts = Vec::new();
    for x in K::enumerate(&curve.spec())? {
        // The fiber lists a ramified point once per sheet; here each point
        // counts once.
        let mut fiber = curve.involution_fiber(&x)?;
        fiber.dedup();
        pts.extend(fiber);
    }
    pts.sort_by(Point::canon_cmp);
    Ok(pts)
}

/// Tally of one exhaustive degree-(g+1) census run. The accounting identity
/// `total = passed + Σ degenerate + |failed|` always holds; `failed` lists
/// only cases where the referee itself returned "not equivalent" — any
/// nonempty `failed` is an engine bug, while `degenerate` collects the
/// classified reasons a case could not run to completion.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CensusReport {
    /// Number of divisors that entered the pipeline: every enumerable
    /// degree-(g+1) multiset that is strictly non-special, plus those whose
    /// classification itself failed (tallied as degenerate).
    pub total: usize,
    /// Reduced and verified equivalent.
    pub passed: usize,
    /// Classified causes (error codes) for cases that could not be taken to
    /// a verdict, with counts.
    pub degenerate: BTreeMap<String, usize>,
    /// Human-readable descriptions of verified-inequivalent cases.
    pub failed: Vec<String>,
}

/// Reduces and verifies every strictly non-special degree-(g+1) divisor of
/// rational points on a tiny curve: the whole pipeline, refereed by
/// [`check_reduction`], over the complete enumeration. Degenerate cases are
/// counted under their error code, never thrown.
///
/// Capped at genus 3 and p ≤ 31 — the enumeration is quartic in the point
/// count.
pub fn exhaustive_class_census<K: FieldElement>(curve: &Curve<K>) -> Result<CensusReport> {
    if curve.genus() != 3 {
        return Err(Error::InvalidParameter(format!(
            "census supports genus 3 only, got genus {}",
            curve.genus()
        )));
    }
    match curve.spec() {
        crate::field::FieldSpec::Prime { p } if p <= 31 => {}
        crate::field::FieldSpec::Prime { p } => {
            return Err(Error::InvalidParameter(format!(
                "census supports p ≤ 31 only, got p = {p}"
            )))
        }
        crate::field::FieldSpec::Rational => {
            return Err(Error::RationalFieldUnsupported("exhaustive census"))
        }
    }
    let pts = affine_points(curve)?;
    let n = pts.len();
    let mut report = CensusReport {
        total: 0,
        passed: 0,
        degenerate: BTreeMap::new(),
        failed: Vec::new(),
    };
    let tally = |report: &mut CensusReport, e: &Error| {
        *report.degenerate.entry(e.code().to_string()).or_insert(0) += 1;
    };
    for a in 0..n {
        for b in a..n {
            for k in b..n {
                for l in k..n {
                    let d = PointDivisor::new(
                        curve,
                        vec![
                            pts[a].clone(),
                            pts[b].clone(),
                            pts[k].clone(),
                            pts[l].clone(),
                        ],
                    )?;
                    match classify(curve, &d) {
                        Ok(DivisorClass::StrictlyNonSpecial) => {}
                        Ok(_) => continue,
                        Err(e) => {
                            report.total += 1;
                            tally(&mut report, &e);
                            continue;
                        }
                    }
                    report.total += 1;
                    let rep = match reduce_divisor(curve, &d) {
                        Ok((rep, _)) => rep,
                        Err(e) => {
                            tally(&mut report, &e);
                            continue;
                        }
                    };
                    match check_reduction(curve, &d, &rep) {
                        Ok(verdict) if verdict.equivalent => report.passed += 1,
                        Ok(verdict) => report.failed.push(format!(
                            "{}: not equivalent (kernel dimension {})",
                            render_divisor(&d),
                            verdict.kernel_dim
                        )),
                        Err(e) => tally(&mut report, &e),
                    }
                }
            }
        }
    }
    Ok(report)
}

fn render_divisor<K: FieldElement>(d: &PointDivisor<K>) -> String {
    d.points()
        .iter()
        .map(|p| format!("({}, {})", p.x.render(), p.y.render()))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Family;
    use crate::divisor::{rep_from_points_g, rep_from_points_g1};
    use crate::field::{FieldSpec, Fp};
    use crate::linfun::build_function;
    use std::collections::BTreeMap;

    fn quartic_twist() -> Curve<Fp> {
        let spec = FieldSpec::prime(7).unwrap();
        Curve::new(Family::C1, 1, &BTreeMap::from([(12, Fp::new(6, 7))]), spec).unwrap()
    }

    fn div(curve: &Curve<Fp>, pts: &[(u64, u64)]) -> PointDivisor<Fp> {
        let pts = pts
            .iter()
            .map(|&(x, y)| Point::new(Fp::new(x, 7), Fp::new(y, 7)))
            .collect();
        PointDivisor::new(curve, pts).unwrap()
    }

    #[test]
    fn full_zero_set_of_a_function_is_principal() {
        // Most order-6 functions have zeros in a cubic extension; scan point
        // triples until one's complete zero set splits over F_7.
        let c = quartic_twist();
        let pts = affine_points(&c).unwrap();
        let mut checked = 0;
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                for k in b + 1..pts.len() {
                    let d3 = PointDivisor::new(
                        &c,
                        vec![pts[a].clone(), pts[b].clone(), pts[k].clone()],
                    )
                    .unwrap();
                    let Ok(fun) = build_function(&c, d3.points()) else {
                        continue;
                    };
                    let Some(lin) = fun.as_y_linear() else {
                        continue;
                    };
                    let norm = lin.z_polynomial(&c).monic().unwrap();
                    if norm.degree() != Some(6) {
                        // an order-4 function through a special triple
                        continue;
                    }
                    let Ok(zeros) = points_from_rep(&c, &norm, &lin) else {
                        continue;
                    };
                    assert_eq!(zeros.degree(), 6);
                    let verdict = is_principal(&c, &zeros).unwrap();
                    assert!(verdict.equivalent, "zero set of a function must be principal");
                    assert_eq!(verdict.kernel_dim, 1);
                    // witness ∝ the function it came from
                    let w = verdict.witness.unwrap();
                    assert_eq!(w.norm_poly(&c).monic().unwrap(), norm);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "no fully split zero set among {} triples", pts.len());
    }

    #[test]
    fn general_position_points_are_not_principal() {
        let c = quartic_twist();
        let d = div(&c, &[(0, 3), (0, 5), (1, 0), (2, 1), (5, 2), (6, 0)]);
        let verdict = is_principal(&c, &d).unwrap();
        assert!(!verdict.equivalent);
        assert_eq!(verdict.kernel_dim, 0);
        assert!(verdict.witness.is_none());
    }

    #[test]
    fn two_fibers_are_principal_with_split_witness() {
        let c = quartic_twist();
        let d = div(&c, &[(2, 1), (2, 2), (2, 4), (0, 3), (0, 5), (0, 6)]);
        let verdict = is_principal(&c, &d).unwrap();
        assert!(verdict.equivalent);
        // The witness is forced to x(x−2) up to scale: divisible by both
        // fiber coordinates.
        let w = verdict.witness.unwrap();
        assert!(w.a1().is_zero() && w.a2().is_zero());
        let norm = w.norm_poly(&c).monic().unwrap();
        let expected = Poly::from_roots(
            c.spec(),
            &[
                Fp::new(0, 7),
                Fp::new(0, 7),
                Fp::new(0, 7),
                Fp::new(2, 7),
                Fp::new(2, 7),
                Fp::new(2, 7),
            ],
        );
        assert_eq!(norm, expected);
    }

    #[test]
    fn degree_below_2g_is_refused() {
        let c = quartic_twist();
        let d = div(&c, &[(0, 3), (0, 5), (1, 0), (2, 1), (5, 2)]);
        assert!(matches!(
            is_principal(&c, &d),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn check_reduction_accepts_the_engine() {
        // Every degree-5 subset the engine reduces must satisfy the referee.
        let c = quartic_twist();
        let pts = affine_points(&c).unwrap();
        let mut confirmed = 0;
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                for k in b + 1..pts.len() {
                    for l in k + 1..pts.len() {
                        for m in l + 1..pts.len() {
                            let d = PointDivisor::new(
                                &c,
                                vec![
                                    pts[a].clone(),
                                    pts[b].clone(),
                                    pts[k].clone(),
                                    pts[l].clone(),
                                    pts[m].clone(),
                                ],
                            )
                            .unwrap();
                            let Ok((rep, _)) = reduce_divisor(&c, &d) else {
                                continue;
                            };
                            let verdict = check_reduction(&c, &d, &rep).unwrap();
                            assert!(
                                verdict.equivalent,
                                "referee rejected a reduction of {} (kernel_dim {})",
                                render_divisor(&d),
                                verdict.kernel_dim
                            );
                            confirmed += 1;
                        }
                    }
                }
            }
        }
        assert!(confirmed > 100, "only {confirmed} reductions confirmed");
    }

    #[test]
    fn check_reduction_rejects_an_unrelated_representative() {
        let c = quartic_twist();
        let d = div(&c, &[(0, 3), (1, 0), (2, 1), (5, 1), (6, 0)]);
        let unrelated = rep_from_points_g(&c, &div(&c, &[(0, 5), (2, 2), (5, 4)])).unwrap();
        let verdict = check_reduction(&c, &d, &unrelated).unwrap();
        assert!(!verdict.equivalent);
    }

    #[test]
    fn identity_reduction_verifies() {
        let c = quartic_twist();
        let d = div(&c, &[(0, 3), (1, 0), (2, 1)]);
        let rep = rep_from_points_g(&c, &d).unwrap();
        let verdict = check_reduction(&c, &d, &rep).unwrap();
        assert!(verdict.equivalent);
    }

    #[test]
    fn duality_of_complement_and_inverse() {
        // One loop round trip lands in the same class: (H̃, I) built from a
        // degree-(g+1) divisor must verify against it.
        let c = quartic_twist();
        let d = div(&c, &[(0, 3), (1, 0), (2, 1), (5, 1)]);
        let frep = rep_from_points_g1(&c, &d).unwrap();
        let (h, g_fun) = crate::reduction::complement_g1(&c, &frep).unwrap();
        let i_fun = crate::reduction::minimal_function(&c, &h, &g_fun).unwrap();
        let h_tilde = crate::reduction::invert_g(&c, &h, &i_fun).unwrap();
        let rep = HRep::new(&c, h_tilde, i_fun).unwrap();
        let verdict = check_reduction(&c, &d, &rep).unwrap();
        assert!(verdict.equivalent);
    }

    #[test]
    fn affine_points_enumerates_the_whole_curve() {
        let c = quartic_twist();
        let pts = affine_points(&c).unwrap();
        assert_eq!(pts.len(), 11);
        assert!(pts.iter().all(|p| c.on_curve(p)));
        // canonical order, no duplicates
        for w in pts.windows(2) {
            assert!(w[0].canon_cmp(&w[1]).is_lt());
        }
    }

    #[test]
    fn census_accounts_for_every_case() {
        let c = quartic_twist();
        let report = exhaustive_class_census(&c).unwrap();
        let degenerate: usize = report.degenerate.values().sum();
        assert_eq!(
            report.total,
            report.passed + degenerate + report.failed.len()
        );
        assert!(report.passed > 0);
        // The referee never contradicts the engine, even on this crowded
        // little curve — failures would be bugs, degenerates are honest.
        assert!(report.failed.is_empty(), "failed: {:?}", report.failed);
        // Pinned: two ramified points make many multisets unclassifiable
        // (repeated ramified points have no derivative rows), and a third of
        // the classes genuinely lack a faithful degree-3 representative.
        assert_eq!(report.passed, 114);
        assert_eq!(report.total, 467);
        // byte-stable
        let again = exhaustive_class_census(&c).unwrap();
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
    }

    #[test]
    fn census_refuses_large_fields_and_wrong_genus() {
        let spec = FieldSpec::prime(10007).unwrap();
        let big = Curve::new(
            Family::C1,
            1,
            &BTreeMap::from([(12, Fp::new(6, 10007))]),
            spec,
        )
        .unwrap();
        assert!(matches!(
            exhaustive_class_census(&big),
            Err(Error::InvalidParameter(_))
        ));

        let spec5 = FieldSpec::prime(7).unwrap();
        let c2 = Curve::new(
            Family::C2,
            1,
            &BTreeMap::from([(15, Fp::new(1, 7))]),
            spec5,
        )
        .unwrap();
        assert!(matches!(
            exhaustive_class_census(&c2),
            Err(Error::InvalidParameter(_))
        ));
    }
}
