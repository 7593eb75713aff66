//! SL2(C) representations of <a, b | wa = bw> from trace coordinates, the
//! Riley-type polynomials that detect non-abelian representations, and the
//! boundary-coefficient functions controlling degree and monicity.

use crate::chebyshev::{s_eval, t_eval};
use crate::group_words::{FreeWord, Gen};
use crate::laurent::Mat2;
use crate::{Complex64, Error, Result};

const REDUCIBLE_TOL: f64 = 1e-10;

/// Which second trace coordinate was supplied: z = tr(ab) or y = tr(ab^-1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceCoord {
    Z(Complex64),
    Y(Complex64),
}

impl TraceCoord {
    pub fn value(self) -> Complex64 {
        match self {
            TraceCoord::Z(v) | TraceCoord::Y(v) => v,
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            TraceCoord::Z(_) => "z",
            TraceCoord::Y(_) => "y",
        }
    }
}

/// A concrete pair A = [[s,1],[0,1/s]], B = [[s,0],[u,1/s]] realizing the
/// requested traces: tr A = tr B = x, and either tr(AB) = z or tr(AB^-1) = y.
/// u = 0 is the reducible (abelian) locus and is rejected.
#[derive(Debug, Clone)]
pub struct Representation {
    a: Mat2,
    b: Mat2,
    a_inv: Mat2,
    b_inv: Mat2,
    x: Complex64,
    s: Complex64,
    u: Complex64,
    coord: TraceCoord,
}

impl Representation {
    pub fn from_xz(x: Complex64, z: Complex64) -> Result<Self> {
        let u = z + 2.0 - x * x;
        Self::build(x, u, TraceCoord::Z(z))
    }

    pub fn from_xy(x: Complex64, y: Complex64) -> Result<Self> {
        let u = Complex64::new(2.0, 0.0) - y;
        Self::build(x, u, TraceCoord::Y(y))
    }

    pub fn from_coord(x: Complex64, coord: TraceCoord) -> Result<Self> {
        match coord {
            TraceCoord::Z(z) => Self::from_xz(x, z),
            TraceCoord::Y(y) => Self::from_xy(x, y),
        }
    }

    fn build(x: Complex64, u: Complex64, coord: TraceCoord) -> Result<Self> {
        if u.norm() < REDUCIBLE_TOL {
            return Err(Error::Reducible);
        }
        // fixed branch: the conjugate choice of s gives a conjugate
        // representation with the same traces and the same polynomial
        let s = (x + (x * x - 4.0).sqrt()) / 2.0;
        let si = 1.0 / s;
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let a = Mat2::new([[s, one], [zero, si]]);
        let b = Mat2::new([[s, zero], [u, si]]);
        let rep = Representation {
            a_inv: a.inverse(),
            b_inv: b.inverse(),
            a,
            b,
            x,
            s,
            u,
            coord,
        };
        debug_assert!((rep.a.trace() - x).norm() < 1e-9);
        debug_assert!((rep.b.trace() - x).norm() < 1e-9);
        debug_assert!(match coord {
            TraceCoord::Z(z) => (rep.a.mul(&rep.b).trace() - z).norm(),
            TraceCoord::Y(y) => (rep.a.mul(&rep.b_inv).trace() - y).norm(),
        } < 1e-9 * (1.0 + x.norm() * x.norm()));
        Ok(rep)
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn u(&self) -> Complex64 {
        self.u
    }

    pub fn coord(&self) -> TraceCoord {
        self.coord
    }

    pub fn a(&self) -> &Mat2 {
        &self.a
    }

    pub fn b(&self) -> &Mat2 {
        &self.b
    }

    /// Conjugate the image by an arbitrary invertible matrix (test hook;
    /// traces and the resulting polynomial are unchanged).
    pub fn conjugated_by(&self, g: &Mat2) -> Self {
        let gi = g.inverse();
        let a = g.mul(&self.a).mul(&gi);
        let b = g.mul(&self.b).mul(&gi);
        Representation {
            a_inv: a.inverse(),
            b_inv: b.inverse(),
            a,
            b,
            ..self.clone()
        }
    }

    /// Evaluate the representation on a reduced word.
    pub fn rho(&self, w: &FreeWord) -> Mat2 {
        self.rho_letters(&w.unit_letters())
    }

    /// Evaluate on an explicit unit-letter sequence (no reduction applied).
    pub fn rho_letters(&self, letters: &[(Gen, i32)]) -> Mat2 {
        let mut m = Mat2::identity();
        for &(g, e) in letters {
            let factor = match (g, e >= 0) {
                (Gen::A, true) => &self.a,
                (Gen::A, false) => &self.a_inv,
                (Gen::B, true) => &self.b,
                (Gen::B, false) => &self.b_inv,
            };
            m = m.mul(factor);
        }
        m
    }
}

/// Alternating trace sum over successive end-deletions of an even word:
/// sum_{i<d} (-1)^i tr rho(w^(i)) + (-1)^d, where w^(i) drops i letters from
/// each end and d = |w| / 2. Vanishes exactly at the non-abelian locus.
pub fn riley_generic(w: &FreeWord, rep: &Representation) -> Result<Complex64> {
    let letters = w.unit_letters();
    let len = letters.len();
    if len % 2 != 0 {
        return Err(Error::OddWordLength(len));
    }
    let d = len / 2;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    for i in 0..d {
        acc += sign * rep.rho_letters(&letters[i..len - i]).trace();
        sign = -sign;
    }
    Ok(acc + sign)
}

/// Closed form of the Riley polynomial for b(6n+1, 3) in (x, z).
pub fn r_b3_closed(n: i64, x: Complex64, z: Complex64) -> Complex64 {
    let x2 = x * x;
    s_eval(3 * n, z) - s_eval(3 * n - 1, z)
        - x2 * (z - 2.0) * s_eval(n - 1, z).powi(2) * (s_eval(n, z) - s_eval(n - 1, z))
}

/// R for K_{2n} split as (P, Q) with R = P + x^2 Q; both depend only on y.
pub fn r_even_split(n: i64, y: Complex64) -> (Complex64, Complex64) {
    let sm = s_eval(n - 1, y);
    let sn = s_eval(n, y);
    ((y + 1.0) * sm * sm - sn * sn - 2.0 * sm * sn, sm * (sn - sm))
}

pub fn r_even(n: i64, x: Complex64, y: Complex64) -> Complex64 {
    let (p, q) = r_even_split(n, y);
    p + x * x * q
}

/// R for K_{2n-1} split the same way.
pub fn r_odd_split(n: i64, y: Complex64) -> (Complex64, Complex64) {
    let sm = s_eval(n - 1, y);
    let sp = s_eval(n - 2, y);
    (-(y + 1.0) * sm * sm + sp * sp + 2.0 * sm * sp, sm * (sm - sp))
}

pub fn r_odd(n: i64, x: Complex64, y: Complex64) -> Complex64 {
    let (p, q) = r_odd_split(n, y);
    p + x * x * q
}

/// Common value of the numerator's top and bottom t-coefficients for
/// b(6n+1, 3): 4 + (z-2)(z+2-x^2) S_{n-1}(z)^2.
pub fn boundary_coeff_b3(n: i64, x: Complex64, z: Complex64) -> Complex64 {
    4.0 + (z - 2.0) * (z + 2.0 - x * x) * s_eval(n - 1, z).powi(2)
}

/// Same for the twist knots: (T_n(y) - 2) / (y - 2), with the removable
/// singularity at y = 2 filled by its limit n^2.
pub fn boundary_coeff_twist(n: i64, y: Complex64) -> Complex64 {
    if (y - 2.0).norm() < 1e-8 {
        Complex64::new((n * n) as f64, 0.0)
    } else {
        (t_eval(n, y) - 2.0) / (y - 2.0)
    }
}

/// Largest entry of rho(w) rho(a) - rho(b) rho(w); zero exactly when the pair
/// satisfies the group relation.
pub fn relator_residual(rep: &Representation, w: &FreeWord) -> f64 {
    relator_defect(rep, w).max_abs()
}

/// The defect matrix rho(w) rho(a) - rho(b) rho(w). Its (0,0) entry vanishes
/// identically on the slice, and its (0,1) entry is a scalar multiple of the
/// Riley polynomial, which makes it an implementation-independent oracle for
/// the closed forms.
pub fn relator_defect(rep: &Representation, w: &FreeWord) -> Mat2 {
    let m = rep.rho(w);
    m.mul(rep.a()).sub(&rep.b().mul(&m))
}
