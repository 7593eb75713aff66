//! Laurent polynomials in t with complex or 2x2-matrix coefficients, the
//! evaluation map u -> t^(exponent sum) * rho(u), determinants, and the exact
//! division that produces the twisted Alexander polynomial.

use crate::group_words::GroupRingElement;
use crate::representations::Representation;
use crate::{Complex64, Error, Result};
use std::collections::BTreeMap;

/// Plain 2x2 complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2 {
    pub e: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(e: [[Complex64; 2]; 2]) -> Self {
        Mat2 { e }
    }

    pub fn zero() -> Self {
        Mat2::new([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Mat2::zero();
        m.e[0][0] = Complex64::new(1.0, 0.0);
        m.e[1][1] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] = self.e[i][j] + o.e[i][j];
            }
        }
        m
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] = self.e[i][j] - o.e[i][j];
            }
        }
        m
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] = self.e[i][0] * o.e[0][j] + self.e[i][1] * o.e[1][j];
            }
        }
        m
    }

    pub fn scale<S: Into<Complex64>>(&self, c: S) -> Mat2 {
        let c = c.into();
        let mut m = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] *= c;
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2::new([
            [self.e[1][1] / d, -self.e[0][1] / d],
            [-self.e[1][0] / d, self.e[0][0] / d],
        ])
    }

    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// A matrix checked to have determinant 1 at construction.
#[derive(Debug, Clone)]
pub struct SL2Matrix(Mat2);

impl SL2Matrix {
    pub fn try_new(m: Mat2) -> Result<Self> {
        let err = (m.det() - 1.0).norm();
        if err > 1e-9 {
            return Err(Error::NonUnimodular(err));
        }
        Ok(SL2Matrix(m))
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }
}

/// Laurent polynomial over C, sparse by exponent.
#[derive(Debug, Clone, Default)]
pub struct ComplexLaurentPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

impl ComplexLaurentPoly {
    pub fn zero() -> Self {
        ComplexLaurentPoly::default()
    }

    pub fn monomial(exp: i64, c: Complex64) -> Self {
        let mut p = ComplexLaurentPoly::zero();
        p.add_coeff(exp, c);
        p
    }

    pub fn from_pairs(pairs: &[(i64, Complex64)]) -> Self {
        let mut p = ComplexLaurentPoly::zero();
        for &(e, c) in pairs {
            p.add_coeff(e, c);
        }
        p
    }

    pub fn add_coeff(&mut self, exp: i64, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        *self.coeffs.entry(exp).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn coeff(&self, exp: i64) -> Complex64 {
        self.coeffs.get(&exp).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (&e, &c) in &o.coeffs {
            p.add_coeff(e, c);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (&e, &c) in &o.coeffs {
            p.add_coeff(e, -c);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = ComplexLaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &o.coeffs {
                p.add_coeff(e1 + e2, c1 * c2);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drop coefficients below `tol` times the largest magnitude.
    pub fn clean(&self, tol: f64) -> Self {
        let cutoff = tol * self.max_coeff_abs();
        ComplexLaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, c)| c.norm() > cutoff)
                .map(|(&e, &c)| (e, c))
                .collect(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn span(&self) -> Result<i64> {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => Ok(b - a),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    pub fn leading(&self) -> Result<Complex64> {
        self.max_exp().map(|e| self.coeff(e)).ok_or(Error::ZeroPolynomial)
    }

    pub fn trailing(&self) -> Result<Complex64> {
        self.min_exp().map(|e| self.coeff(e)).ok_or(Error::ZeroPolynomial)
    }

    /// Shift exponents so the minimum is 0; identity on the zero polynomial.
    pub fn canonical(&self) -> Self {
        match self.min_exp() {
            None => self.clone(),
            Some(mn) => ComplexLaurentPoly {
                coeffs: self.coeffs.iter().map(|(&e, &c)| (e - mn, c)).collect(),
            },
        }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&e, &c)| c * t.powi(e as i32))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Dense ascending coefficients together with the minimum exponent.
    pub fn dense(&self) -> (i64, Vec<Complex64>) {
        let (Some(mn), Some(mx)) = (self.min_exp(), self.max_exp()) else {
            return (0, vec![]);
        };
        let mut out = vec![Complex64::new(0.0, 0.0); (mx - mn + 1) as usize];
        for (&e, &c) in &self.coeffs {
            out[(e - mn) as usize] = c;
        }
        (mn, out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (mn, coeffs) = self.dense();
        serde_json::json!({
            "min_exp": mn,
            "coeffs": coeffs.iter().map(|c| vec![c.re, c.im]).collect::<Vec<_>>(),
        })
    }

    /// Relative distance between two cleaned polynomials over their common
    /// support; infinite if supports differ.
    pub fn rel_distance(&self, o: &Self) -> f64 {
        let scale = self.max_coeff_abs().max(o.max_coeff_abs()).max(1e-300);
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        keys.iter()
            .map(|&e| (self.coeff(e) - o.coeff(e)).norm() / scale)
            .fold(0.0, f64::max)
    }
}

/// Laurent polynomial with 2x2 matrix coefficients.
#[derive(Debug, Clone, Default)]
pub struct MatrixLaurentPoly {
    coeffs: BTreeMap<i64, Mat2>,
}

impl MatrixLaurentPoly {
    pub fn zero() -> Self {
        MatrixLaurentPoly::default()
    }

    pub fn add_coeff(&mut self, exp: i64, m: &Mat2) {
        let entry = self.coeffs.entry(exp).or_insert_with(Mat2::zero);
        *entry = entry.add(m);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (&e, m) in &o.coeffs {
            p.add_coeff(e, m);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = MatrixLaurentPoly::zero();
        for (&e1, m1) in &self.coeffs {
            for (&e2, m2) in &o.coeffs {
                p.add_coeff(e1 + e2, &m1.mul(m2));
            }
        }
        p
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|m| m.max_abs()).fold(0.0, f64::max)
    }

    pub fn clean(&self, tol: f64) -> Self {
        let cutoff = tol * self.max_abs();
        MatrixLaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, m)| m.max_abs() > cutoff)
                .map(|(&e, m)| (e, m.clone()))
                .collect(),
        }
    }

    /// Determinant over C[t, t^-1]: ad - bc of the four entry polynomials.
    pub fn det(&self) -> ComplexLaurentPoly {
        let entry = |i: usize, j: usize| -> ComplexLaurentPoly {
            let mut p = ComplexLaurentPoly::zero();
            for (&e, m) in &self.coeffs {
                p.add_coeff(e, m.e[i][j]);
            }
            p
        };
        let (a, b, c, d) = (entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1));
        a.mul(&d).sub(&b.mul(&c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Mat2)> {
        self.coeffs.iter().map(|(&e, m)| (e, m))
    }
}

/// The ring map sending a group-ring element to its matrix Laurent polynomial:
/// each word u contributes coeff * rho(u) at exponent exponent_sum(u).
pub fn phi(elem: &GroupRingElement, rep: &Representation) -> MatrixLaurentPoly {
    let mut out = MatrixLaurentPoly::zero();
    for (w, c) in elem.terms() {
        out.add_coeff(w.exponent_sum(), &rep.rho(w).scale(Complex64::new(c as f64, 0.0)));
    }
    out
}

/// Long division of Laurent polynomials after shifting both to minimum
/// exponent 0. Returns the quotient and the relative remainder norm; errors
/// if the remainder exceeds `tol` times the numerator norm.
pub fn divide_exact(
    num: &ComplexLaurentPoly,
    den: &ComplexLaurentPoly,
    tol: f64,
) -> Result<(ComplexLaurentPoly, f64)> {
    if den.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if num.is_zero() {
        return Ok((ComplexLaurentPoly::zero(), 0.0));
    }
    let (nmin, n) = num.dense();
    let (dmin, d) = den.dense();
    let num_norm = num.max_coeff_abs();
    if n.len() < d.len() {
        return Err(Error::NotDivisible { remainder: 1.0 });
    }
    let qlen = n.len() - d.len() + 1;
    let mut rem = n;
    let mut q = vec![Complex64::new(0.0, 0.0); qlen];
    let dlead = *d.last().unwrap();
    for k in (0..qlen).rev() {
        let c = rem[k + d.len() - 1] / dlead;
        q[k] = c;
        for (i, &dc) in d.iter().enumerate() {
            rem[k + i] -= c * dc;
        }
    }
    let rem_rel = rem.iter().map(|c| c.norm()).fold(0.0, f64::max) / num_norm;
    if rem_rel > tol {
        return Err(Error::NotDivisible { remainder: rem_rel });
    }
    let mut quotient = ComplexLaurentPoly::zero();
    for (k, &c) in q.iter().enumerate() {
        quotient.add_coeff(k as i64 + nmin - dmin, c);
    }
    Ok((quotient, rem_rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_words::{FreeWord, Gen, GroupRingElement};
    use crate::representations::Representation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn randc(rng: &mut ChaCha8Rng) -> Complex64 {
        Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
    }

    fn random_rep(rng: &mut ChaCha8Rng) -> Representation {
        loop {
            let x = randc(rng);
            let z = randc(rng);
            if let Ok(r) = Representation::from_xz(x, z) {
                return r;
            }
        }
    }

    fn random_gre(rng: &mut ChaCha8Rng) -> GroupRingElement {
        let mut e = GroupRingElement::zero();
        for _ in 0..rng.gen_range(1..5) {
            let len = rng.gen_range(0..10);
            let w = FreeWord::from_letters((0..len).map(|_| {
                (
                    if rng.gen() { Gen::A } else { Gen::B },
                    if rng.gen() { 1 } else { -1 },
                )
            }));
            e.add_term(w, rng.gen_range(-3i64..=3));
        }
        e
    }

    #[test]
    fn phi_one_minus_b_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let rep = random_rep(&mut rng);
            let x = rep.x();
            let one_minus_b = GroupRingElement::one()
                .sub(&GroupRingElement::from_word(FreeWord::generator(Gen::B)));
            let d = phi(&one_minus_b, &rep).det();
            let want = ComplexLaurentPoly::from_pairs(&[
                (0, Complex64::new(1.0, 0.0)),
                (1, -x),
                (2, Complex64::new(1.0, 0.0)),
            ]);
            assert!(d.rel_distance(&want) < 1e-9);
        }
    }

    #[test]
    fn phi_identity_word() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let rep = random_rep(&mut rng);
        let p = phi(&GroupRingElement::one(), &rep);
        let terms: Vec<_> = p.iter().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, 0);
        assert!(terms[0].1.sub(&Mat2::identity()).max_abs() < 1e-12);
    }

    /// Max entry-wise difference between two matrix Laurent polynomials.
    fn mlp_diff(a: &MatrixLaurentPoly, b: &MatrixLaurentPoly) -> f64 {
        let keys: std::collections::BTreeSet<i64> =
            a.iter().map(|(e, _)| e).chain(b.iter().map(|(e, _)| e)).collect();
        let get = |p: &MatrixLaurentPoly, e: i64| {
            p.iter()
                .find(|&(k, _)| k == e)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(Mat2::zero)
        };
        keys.iter()
            .map(|&e| get(a, e).sub(&get(b, e)).max_abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn phi_is_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let rep = random_rep(&mut rng);
            let u = random_gre(&mut rng);
            let v = random_gre(&mut rng);
            let lhs_add = phi(&u.add(&v), &rep);
            let rhs_add = phi(&u, &rep).add(&phi(&v, &rep));
            let scale = 1.0 + lhs_add.max_abs().max(rhs_add.max_abs());
            assert!(mlp_diff(&lhs_add, &rhs_add) < 1e-9 * scale);

            let lhs_mul = phi(&u.mul(&v), &rep);
            let rhs_mul = phi(&u, &rep).mul(&phi(&v, &rep));
            let scale = 1.0 + lhs_mul.max_abs().max(rhs_mul.max_abs());
            assert!(mlp_diff(&lhs_mul, &rhs_mul) < 1e-9 * scale);
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..50 {
            let rep = random_rep(&mut rng);
            let m = phi(&random_gre(&mut rng), &rep);
            let n = phi(&random_gre(&mut rng), &rep);
            let lhs = m.mul(&n).det();
            let rhs = m.det().mul(&n.det());
            let scale = 1.0 + lhs.max_coeff_abs().max(rhs.max_coeff_abs());
            assert!(lhs.sub(&rhs).max_coeff_abs() < 1e-9 * scale);
        }
    }

    #[test]
    fn det_of_power_of_t() {
        let p = {
            let mut p = MatrixLaurentPoly::zero();
            p.add_coeff(3, &Mat2::identity());
            p
        };
        let d = p.det();
        assert_eq!(d.min_exp(), Some(6));
        assert_eq!(d.max_exp(), Some(6));
    }

    #[test]
    fn fox_fundamental_identity_under_phi() {
        // Phi(dr/da)(Phi(a) - I) + Phi(dr/db)(Phi(b) - I) = Phi(r) - I
        use crate::group_words::{relator, relator_derivative};
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..30 {
            let rep = random_rep(&mut rng);
            let len = rng.gen_range(0..12);
            let w = FreeWord::from_letters((0..len).map(|_| {
                (
                    if rng.gen() { Gen::A } else { Gen::B },
                    if rng.gen() { 1 } else { -1 },
                )
            }));
            let r = relator(&w);
            let minus_one = GroupRingElement::one().neg();
            let a_minus_1 = GroupRingElement::from_word(FreeWord::generator(Gen::A)).add(&minus_one);
            let b_minus_1 = GroupRingElement::from_word(FreeWord::generator(Gen::B)).add(&minus_one);
            let lhs = phi(&relator_derivative(&w, Gen::A), &rep)
                .mul(&phi(&a_minus_1, &rep))
                .add(&phi(&relator_derivative(&w, Gen::B), &rep).mul(&phi(&b_minus_1, &rep)));
            let rhs = phi(&GroupRingElement::from_word(r).add(&minus_one), &rep);
            let scale = 1.0 + lhs.max_abs().max(rhs.max_abs());
            assert!(mlp_diff(&lhs, &rhs) < 1e-9 * scale, "w={w}");
        }
    }

    #[test]
    fn division_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..50 {
            let den = ComplexLaurentPoly::from_pairs(&[
                (0, Complex64::new(1.0, 0.0)),
                (1, randc(&mut rng)),
                (2, Complex64::new(1.0, 0.0)),
            ]);
            let q = ComplexLaurentPoly::from_pairs(&[
                (-2, randc(&mut rng)),
                (0, randc(&mut rng)),
                (3, randc(&mut rng)),
            ]);
            let num = den.mul(&q);
            let (got, rem) = divide_exact(&num, &den, 1e-8).unwrap();
            assert!(rem < 1e-12);
            assert!(got.rel_distance(&q) < 1e-9);
        }
    }

    #[test]
    fn division_of_monomials() {
        let t4 = ComplexLaurentPoly::monomial(4, Complex64::new(1.0, 0.0));
        let t2 = ComplexLaurentPoly::monomial(2, Complex64::new(1.0, 0.0));
        let (q, rem) = divide_exact(&t4, &t2, 1e-8).unwrap();
        assert!(rem < 1e-15);
        assert_eq!(q.min_exp(), Some(2));
        assert_eq!(q.max_exp(), Some(2));
    }

    #[test]
    fn division_detects_nondivisible() {
        let num = ComplexLaurentPoly::from_pairs(&[
            (0, Complex64::new(1.0, 0.0)),
            (3, Complex64::new(1.0, 0.0)),
        ]);
        let den = ComplexLaurentPoly::from_pairs(&[
            (0, Complex64::new(1.0, 0.0)),
            (1, Complex64::new(-2.0, 0.0)),
            (2, Complex64::new(1.0, 0.0)),
        ]);
        assert!(matches!(
            divide_exact(&num, &den, 1e-8),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn span_and_leading() {
        let p = ComplexLaurentPoly::from_pairs(&[
            (-3, Complex64::new(1.0, 0.0)),
            (3, Complex64::new(1.0, 0.0)),
        ]);
        assert_eq!(p.span().unwrap(), 6);
        let q = ComplexLaurentPoly::from_pairs(&[
            (0, Complex64::new(1.0, 0.0)),
            (1, Complex64::new(-0.7, 0.0)),
            (2, Complex64::new(1.0, 0.0)),
        ]);
        assert_eq!(q.span().unwrap(), 2);
        assert!((q.leading().unwrap() - 1.0).norm() < 1e-15);
        assert!(ComplexLaurentPoly::zero().span().is_err());
    }

    #[test]
    fn canonical_shifts_min_to_zero() {
        let p = ComplexLaurentPoly::from_pairs(&[
            (-5, Complex64::new(2.0, 0.0)),
            (-1, Complex64::new(1.0, 1.0)),
        ]);
        let c = p.canonical();
        assert_eq!(c.min_exp(), Some(0));
        assert_eq!(c.max_exp(), Some(4));
    }

    #[test]
    fn boundary_blocks_control_det_degree() {
        // if L(t) = sum_{r<=e<=s} M_e t^e with invertible end blocks, det L
        // has top term det(M_s) t^(2s) and bottom det(M_r) t^(2r)
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..30 {
            let rep = random_rep(&mut rng);
            let mut l = MatrixLaurentPoly::zero();
            let r = rng.gen_range(-2..0);
            let s = rng.gen_range(1..4);
            for e in r..=s {
                l.add_coeff(e, &rep.rho(&FreeWord::letter(Gen::A, e as i32 + 1)));
            }
            let end_lo = l.iter().next().unwrap().1.det();
            let end_hi = l.iter().last().unwrap().1.det();
            if end_lo.norm() < 1e-6 || end_hi.norm() < 1e-6 {
                continue;
            }
            let d = l.det().clean(1e-12);
            assert_eq!(d.min_exp(), Some(2 * r));
            assert_eq!(d.max_exp(), Some(2 * s));
            assert!((d.coeff(2 * s) - end_hi).norm() < 1e-9 * (1.0 + end_hi.norm()));
            assert!((d.coeff(2 * r) - end_lo).norm() < 1e-9 * (1.0 + end_lo.norm()));
        }
    }

    #[test]
    fn json_shape() {
        let p = ComplexLaurentPoly::from_pairs(&[
            (0, Complex64::new(1.0, 0.0)),
            (2, Complex64::new(0.0, -1.0)),
        ]);
        let v = p.to_json();
        assert_eq!(v["min_exp"], 0);
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
    }
}
