//! Wada's invariant for <a, b | wa = bw>: the determinant of the evaluated
//! Fox derivative of the relator, divided by det Phi(1 - b), canonicalized so
//! its minimum exponent is 0.

use crate::group_words::{relator_derivative, FreeWord, Gen, GroupRingElement};
use crate::knots::KnotPresentation;
use crate::laurent::{divide_exact, phi, ComplexLaurentPoly};
use crate::representations::{relator_residual, Representation, TraceCoord};
use crate::{Complex64, Error, Result, Tolerances};

/// The polynomial of one (knot, representation) pair with its classification.
#[derive(Debug, Clone)]
pub struct DeltaReport {
    pub knot: String,
    pub x: Complex64,
    pub coord: TraceCoord,
    /// Canonical polynomial: minimum exponent 0.
    pub delta: ComplexLaurentPoly,
    pub span: i64,
    pub leading: Complex64,
    pub trailing: Complex64,
    pub monic: bool,
    /// span < 4g - 2; None when the genus is unknown.
    pub deficient: Option<bool>,
    pub genus_bound: Option<i64>,
    /// Leading/trailing coefficient of the numerator determinant; both equal
    /// the boundary-coefficient function of the family.
    pub numerator_leading: Complex64,
    pub numerator_trailing: Complex64,
    pub division_remainder: f64,
    pub relator_residual: f64,
}

impl DeltaReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "knot": self.knot,
            "x": [self.x.re, self.x.im],
            "coord": { self.coord.key(): [self.coord.value().re, self.coord.value().im] },
            "delta": self.delta.to_json(),
            "span": self.span,
            "leading": [self.leading.re, self.leading.im],
            "trailing": [self.trailing.re, self.trailing.im],
            "monic": self.monic,
            "deficient": self.deficient,
            "genus_bound": self.genus_bound,
            "residuals": {
                "division_remainder": self.division_remainder,
                "relator_residual": self.relator_residual,
            },
        })
    }
}

fn one_minus(g: Gen) -> GroupRingElement {
    GroupRingElement::one().sub(&GroupRingElement::from_word(FreeWord::generator(g)))
}

/// Numerator and denominator determinants for the given column (derivative
/// with respect to `col`, denominator 1 - the other generator).
fn column_quotient(
    pres: &KnotPresentation,
    rep: &Representation,
    col: Gen,
    tol: &Tolerances,
) -> Result<(ComplexLaurentPoly, ComplexLaurentPoly, f64)> {
    let other = match col {
        Gen::A => Gen::B,
        Gen::B => Gen::A,
    };
    let num = phi(&relator_derivative(&pres.word, col), rep).det().clean(tol.zero);
    let den = phi(&one_minus(other), rep).det().clean(tol.zero);
    let (q, rem) = divide_exact(&num, &den, tol.division)?;
    Ok((q.clean(tol.zero).canonical(), num, rem))
}

pub fn twisted_alexander(
    pres: &KnotPresentation,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<DeltaReport> {
    let scale = 1.0 + rep.rho(&pres.word).max_abs();
    let res = relator_residual(rep, &pres.word);
    if res > tol.representation * scale {
        return Err(Error::NotARepresentation { residual: res });
    }
    let (delta, num, rem) = column_quotient(pres, rep, Gen::A, tol)?;
    let span = delta.span()?;
    let leading = delta.leading()?;
    let trailing = delta.trailing()?;
    let genus_bound = pres.genus_bound();
    Ok(DeltaReport {
        knot: pres.label(),
        x: rep.x(),
        coord: rep.coord(),
        span,
        leading,
        trailing,
        monic: (leading - 1.0).norm() < tol.monic,
        deficient: genus_bound.map(|g| span < g),
        genus_bound,
        numerator_leading: num.leading()?,
        numerator_trailing: num.trailing()?,
        division_remainder: rem,
        relator_residual: res,
        delta,
    })
}

/// The invariant must not depend on which Fox column is used: compare
/// det Phi(dr/da) / det Phi(1-b) against det Phi(dr/db) / det Phi(1-a) after
/// the canonical shift.
pub fn wada_welldefined_check(
    pres: &KnotPresentation,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<bool> {
    let (qa, _, _) = column_quotient(pres, rep, Gen::A, tol)?;
    let (qb, _, _) = column_quotient(pres, rep, Gen::B, tol)?;
    Ok(qa.rel_distance(&qb) < 1e-8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::{r_b3_closed, r_even_split, r_odd_split};
    use crate::chebyshev::s_eval;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn randc(rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
    }

    /// A random non-abelian representation of the given family member,
    /// obtained by solving the Riley equation (linear in x^2) at a random
    /// second coordinate.
    pub(crate) fn random_riley_root(
        rng: &mut ChaCha8Rng,
        pres: &KnotPresentation,
    ) -> Option<Representation> {
        use crate::knots::KnotFamily;
        match pres.family {
            KnotFamily::TwoBridge { p, m: 3 } if p % 6 == 1 => {
                let n = (p / 6) as i64;
                let z = randc(rng);
                let den = (z - 2.0) * s_eval(n - 1, z).powi(2) * (s_eval(n, z) - s_eval(n - 1, z));
                if den.norm() < 1e-3 {
                    return None;
                }
                let x2 = (s_eval(3 * n, z) - s_eval(3 * n - 1, z)) / den;
                if x2.norm() > 10.0 {
                    return None; // ill-conditioned sample
                }
                Representation::from_xz(x2.sqrt(), z).ok()
            }
            KnotFamily::TwoBridge { .. } => None,
            KnotFamily::Twist { m } => {
                let y = randc(rng);
                let n = m.div_ceil(2) as i64;
                let (p0, q0) = if m % 2 == 0 {
                    r_even_split(n, y)
                } else {
                    r_odd_split(n, y)
                };
                if q0.norm() < 1e-3 || (p0 / q0).norm() > 10.0 {
                    return None;
                }
                Representation::from_xy((-p0 / q0).sqrt(), y).ok()
            }
        }
    }

    #[test]
    fn trefoil_is_monic_span_two() {
        let tol = Tolerances::default();
        let pres = KnotPresentation::twist(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let mut seen = 0;
        while seen < 20 {
            let Some(rep) = random_riley_root(&mut rng, &pres) else { continue };
            let rpt = twisted_alexander(&pres, &rep, &tol).unwrap();
            assert_eq!(rpt.span, 2);
            assert!(rpt.monic, "leading {:?}", rpt.leading);
            assert_eq!(rpt.deficient, Some(false));
            seen += 1;
        }
    }

    #[test]
    fn b7_pinned_witnesses() {
        let tol = Tolerances::default();
        let pres = KnotPresentation::two_bridge(7, 3).unwrap();
        // z = 1/2, x^2 = -1/6: degree-deficient
        let x = Complex64::new(-1.0 / 6.0, 0.0).sqrt();
        let rep = Representation::from_xz(x, Complex64::new(0.5, 0.0)).unwrap();
        assert!(r_b3_closed(1, x, Complex64::new(0.5, 0.0)).norm() < 1e-12);
        let rpt = twisted_alexander(&pres, &rep, &tol).unwrap();
        assert!(rpt.span < 2);
        assert_eq!(rpt.deficient, Some(true));

        // z = 0, x^2 = 1/2: monic of full span
        let x = Complex64::new(0.5, 0.0).sqrt();
        let rep = Representation::from_xz(x, Complex64::new(0.0, 0.0)).unwrap();
        let rpt = twisted_alexander(&pres, &rep, &tol).unwrap();
        assert_eq!(rpt.span, 2);
        assert!(rpt.monic);
        assert!((rpt.leading - 1.0).norm() < 1e-9);
    }

    #[test]
    fn rejects_non_representation() {
        let tol = Tolerances::default();
        let pres = KnotPresentation::twist(2).unwrap();
        let rep = Representation::from_xy(Complex64::new(1.2, 0.0), Complex64::new(0.3, 0.0)).unwrap();
        assert!(matches!(
            twisted_alexander(&pres, &rep, &tol),
            Err(Error::NotARepresentation { .. })
        ));
    }

    #[test]
    fn rejects_reducible_before_it_gets_here() {
        assert!(matches!(
            Representation::from_xy(Complex64::new(0.5, 0.0), Complex64::new(2.0, 0.0)),
            Err(Error::Reducible)
        ));
    }

    #[test]
    fn wada_column_independence() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for spec in ["twist:1", "twist:4", "b:13,3"] {
            let pres = KnotPresentation::parse(spec).unwrap();
            let mut seen = 0;
            while seen < 10 {
                let Some(rep) = random_riley_root(&mut rng, &pres) else { continue };
                assert!(wada_welldefined_check(&pres, &rep, &tol).unwrap(), "{spec}");
                seen += 1;
            }
        }
    }

    #[test]
    fn conjugation_invariance() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for spec in ["twist:3", "b:7,3"] {
            let pres = KnotPresentation::parse(spec).unwrap();
            let mut seen = 0;
            while seen < 10 {
                let Some(rep) = random_riley_root(&mut rng, &pres) else { continue };
                let g = loop {
                    let cand = crate::laurent::Mat2::new([
                        [randc(&mut rng), randc(&mut rng)],
                        [randc(&mut rng), randc(&mut rng)],
                    ]);
                    if cand.det().norm() > 0.3 {
                        break cand;
                    }
                };
                let rpt = twisted_alexander(&pres, &rep, &tol).unwrap();
                let rpt2 = twisted_alexander(&pres, &rep.conjugated_by(&g), &tol).unwrap();
                assert!(rpt.delta.rel_distance(&rpt2.delta) < 1e-8, "{spec}");
                seen += 1;
            }
        }
    }

    #[test]
    fn degree_bound_holds_on_random_roots() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for spec in ["b:7,3", "b:13,3", "b:19,3", "twist:2", "twist:5", "twist:6"] {
            let pres = KnotPresentation::parse(spec).unwrap();
            let bound = pres.genus_bound().unwrap();
            let mut seen = 0;
            while seen < 15 {
                let Some(rep) = random_riley_root(&mut rng, &pres) else { continue };
                let rpt = twisted_alexander(&pres, &rep, &tol).unwrap();
                assert!(rpt.span <= bound, "{spec}: span {} > {}", rpt.span, bound);
                seen += 1;
            }
        }
    }

    #[test]
    fn numerator_boundary_coefficients_agree() {
        use crate::knots::KnotFamily;
        use crate::representations::{boundary_coeff_b3, boundary_coeff_twist};
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for spec in ["b:7,3", "b:13,3", "twist:2", "twist:3", "twist:6", "twist:7"] {
            let pres = KnotPresentation::parse(spec).unwrap();
            let mut seen = 0;
            while seen < 10 {
                let Some(rep) = random_riley_root(&mut rng, &pres) else { continue };
                let rpt = twisted_alexander(&pres, &rep, &tol).unwrap();
                let want = match pres.family {
                    KnotFamily::TwoBridge { p, .. } => {
                        boundary_coeff_b3((p / 6) as i64, rep.x(), rep.coord().value())
                    }
                    KnotFamily::Twist { m } => {
                        boundary_coeff_twist(m.div_ceil(2) as i64, rep.coord().value())
                    }
                };
                if want.norm() < 1e-6 {
                    continue; // boundary degenerates; top coefficient absent
                }
                let scale = 1.0 + want.norm();
                assert!((rpt.numerator_leading - want).norm() < 1e-7 * scale, "{spec}");
                assert!((rpt.numerator_trailing - want).norm() < 1e-7 * scale, "{spec}");
                assert!((rpt.leading - rpt.trailing).norm() < 1e-7 * (1.0 + rpt.leading.norm()));
                seen += 1;
            }
        }
    }
}
