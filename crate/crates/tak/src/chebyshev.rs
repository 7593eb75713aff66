//! The recurrence families S_j and T_j (f_{j+1} = z f_j - f_{j-1} with seeds
//! (1, z) and (2, z)) as exact integer polynomials, plus the SL2 power
//! expansion M^j = S_{j-1}(tr M) M - S_{j-2}(tr M) I built on them.

use crate::laurent::Mat2;
use crate::{Complex64, Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer polynomial, coefficient of z^k at index k, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// The variable z.
    pub fn z() -> Self {
        IntPolynomial::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Horner evaluation at a complex point (coefficients go through f64).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::INFINITY);
        }
        acc
    }

    /// Exact integer evaluation.
    pub fn eval_int(&self, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficients as complex numbers, ascending degree.
    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0))
            .collect()
    }

    /// Largest absolute coefficient as f64 (for tolerance scaling).
    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

/// S_j for any integer j; the recurrence runs backwards for j < 0
/// (S_{-1} = 0, S_{-2} = -1, ...).
pub fn s_poly(j: i64) -> IntPolynomial {
    let z = IntPolynomial::z();
    if j >= 0 {
        let (mut f0, mut f1) = (IntPolynomial::one(), z.clone());
        if j == 0 {
            return f0;
        }
        for _ in 0..j - 1 {
            let f2 = z.mul(&f1).sub(&f0);
            f0 = f1;
            f1 = f2;
        }
        f1
    } else {
        // maintain (S_k, S_{k+1}) going down from k = 0
        let (mut fk, mut fk1) = (IntPolynomial::one(), z.clone());
        let mut k = 0;
        while k > j {
            let fkm1 = z.mul(&fk).sub(&fk1);
            fk1 = fk;
            fk = fkm1;
            k -= 1;
        }
        fk
    }
}

/// T_j; T_{-j} = T_j.
pub fn t_poly(j: i64) -> IntPolynomial {
    let j = j.abs();
    let z = IntPolynomial::z();
    let (mut f0, mut f1) = (IntPolynomial::constant(BigInt::from(2)), z.clone());
    if j == 0 {
        return f0;
    }
    for _ in 0..j - 1 {
        let f2 = z.mul(&f1).sub(&f0);
        f0 = f1;
        f1 = f2;
    }
    f1
}

/// S_j(z) evaluated directly by the scalar recurrence.
pub fn s_eval(j: i64, z: Complex64) -> Complex64 {
    cheb_eval(j, z, Complex64::new(1.0, 0.0), z)
}

/// T_j(z) evaluated directly by the scalar recurrence.
pub fn t_eval(j: i64, z: Complex64) -> Complex64 {
    cheb_eval(j.abs(), z, Complex64::new(2.0, 0.0), z)
}

fn cheb_eval(j: i64, z: Complex64, f0: Complex64, f1: Complex64) -> Complex64 {
    if j >= 0 {
        let (mut a, mut b) = (f0, f1);
        if j == 0 {
            return a;
        }
        for _ in 0..j - 1 {
            let c = z * b - a;
            a = b;
            b = c;
        }
        b
    } else {
        let (mut fk, mut fk1) = (f0, f1);
        let mut k = 0;
        while k > j {
            let fkm1 = z * fk - fk1;
            fk1 = fk;
            fk = fkm1;
            k -= 1;
        }
        fk
    }
}

/// M^j for unimodular M via M^j = S_{j-1}(z) M - S_{j-2}(z) I, z = tr M.
pub fn sl2_power(m: &Mat2, j: i64) -> Result<Mat2> {
    let det_err = (m.det() - 1.0).norm();
    if det_err > 1e-9 {
        return Err(Error::NonUnimodular(det_err));
    }
    let z = m.trace();
    let s1 = s_eval(j - 1, z);
    let s2 = s_eval(j - 2, z);
    Ok(m.scale(s1).sub(&Mat2::identity().scale(s2)))
}
