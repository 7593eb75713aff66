//! The supported knot families, their 2-generator presentations
//! <a, b | wa = bw>, and the classical Alexander polynomial used for the
//! fiberedness cross-check.

use crate::chebyshev::IntPolynomial;
use crate::group_words::{fox_derivative, relator, FreeWord, Gen};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotFamily {
    /// 2-bridge knot b(p, m), p > m > 1 odd and coprime.
    TwoBridge { p: u32, m: u32 },
    /// m-twist knot K_m; K_1 is the trefoil, K_2 the figure-eight.
    Twist { m: u32 },
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The alternating word w = a^e1 b^e2 ... b^e(p-1) with
/// e_j = (-1)^floor(jm/p).
pub fn two_bridge_word(p: u32, m: u32) -> Result<FreeWord> {
    if p % 2 == 0 || m % 2 == 0 || m <= 1 || p <= m || gcd(p, m) != 1 {
        return Err(Error::InvalidKnot(format!(
            "b({p},{m}) needs odd coprime p > m > 1"
        )));
    }
    Ok(FreeWord::from_letters((1..p).map(|j| {
        let eps = if (j as u64 * m as u64 / p as u64) % 2 == 0 {
            1
        } else {
            -1
        };
        (if j % 2 == 1 { Gen::A } else { Gen::B }, eps)
    })))
}

/// w = (b a^-1)^n b (a b^-1)^n for K_{2n};
/// w = (a b^-1)^n b (b a^-1)^n for K_{2n-1}.
pub fn twist_knot_word(m: u32) -> FreeWord {
    let ba = FreeWord::from_letters([(Gen::B, 1), (Gen::A, -1)]);
    let ab = FreeWord::from_letters([(Gen::A, 1), (Gen::B, -1)]);
    let b = FreeWord::generator(Gen::B);
    if m % 2 == 0 {
        let n = (m / 2) as i32;
        ba.pow(n).concat(&b).concat(&ab.pow(n))
    } else {
        let n = m.div_ceil(2) as i32;
        ab.pow(n).concat(&b).concat(&ba.pow(n))
    }
}

/// A family member with its word and relator.
#[derive(Debug, Clone)]
pub struct KnotPresentation {
    pub family: KnotFamily,
    pub word: FreeWord,
    pub relator: FreeWord,
}

impl KnotPresentation {
    pub fn new(family: KnotFamily) -> Result<Self> {
        let word = match family {
            KnotFamily::TwoBridge { p, m } => two_bridge_word(p, m)?,
            KnotFamily::Twist { m } => {
                if m == 0 {
                    return Err(Error::InvalidKnot("twist parameter must be >= 1".into()));
                }
                twist_knot_word(m)
            }
        };
        let relator = relator(&word);
        Ok(KnotPresentation { family, word, relator })
    }

    pub fn two_bridge(p: u32, m: u32) -> Result<Self> {
        Self::new(KnotFamily::TwoBridge { p, m })
    }

    pub fn twist(m: u32) -> Result<Self> {
        Self::new(KnotFamily::Twist { m })
    }

    /// Parse the spec string `b:p,m` or `twist:m`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidKnot(format!("cannot parse knot spec {spec:?}"));
        if let Some(rest) = spec.strip_prefix("b:") {
            let (p, m) = rest.split_once(',').ok_or_else(bad)?;
            let p = p.trim().parse::<u32>().map_err(|_| bad())?;
            let m = m.trim().parse::<u32>().map_err(|_| bad())?;
            Self::two_bridge(p, m)
        } else if let Some(rest) = spec.strip_prefix("twist:") {
            let m = rest.trim().parse::<u32>().map_err(|_| bad())?;
            Self::twist(m)
        } else {
            Err(bad())
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            KnotFamily::TwoBridge { p, m } => format!("b:{p},{m}"),
            KnotFamily::Twist { m } => format!("twist:{m}"),
        }
    }

    /// Known genus: n for b(6n+1, 3), 1 for every twist knot, unknown
    /// otherwise.
    pub fn genus(&self) -> Option<u32> {
        match self.family {
            KnotFamily::TwoBridge { p, m: 3 } if p % 6 == 1 => Some(p / 6),
            KnotFamily::TwoBridge { .. } => None,
            KnotFamily::Twist { .. } => Some(1),
        }
    }

    /// Fiberedness: b(p,3) is non-fibered exactly when p = 1 mod 6; twist
    /// knots are fibered exactly for m <= 2.
    pub fn fibered(&self) -> Option<bool> {
        match self.family {
            KnotFamily::TwoBridge { p, m: 3 } => Some(p % 6 != 1),
            KnotFamily::TwoBridge { .. } => None,
            KnotFamily::Twist { m } => Some(m <= 2),
        }
    }

    /// 4g - 2, when the genus is known.
    pub fn genus_bound(&self) -> Option<i64> {
        self.genus().map(|g| 4 * g as i64 - 2)
    }

    /// The classical Alexander polynomial: the Fox derivative dr/da pushed
    /// through the abelianization a, b -> t, shifted to lowest exponent 0
    /// with positive leading coefficient.
    pub fn classical_alexander(&self) -> IntPolynomial {
        let d = fox_derivative(&self.relator, Gen::A);
        let mut terms: std::collections::BTreeMap<i64, BigInt> = Default::default();
        for (w, c) in d.terms() {
            *terms.entry(w.exponent_sum()).or_insert_with(BigInt::zero) += BigInt::from(c);
        }
        terms.retain(|_, v| !v.is_zero());
        let Some(&mn) = terms.keys().next() else {
            return IntPolynomial::zero();
        };
        let mx = *terms.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (mx - mn + 1) as usize];
        for (e, v) in terms {
            coeffs[(e - mn) as usize] = v;
        }
        if coeffs.last().unwrap().is_negative() {
            for c in &mut coeffs {
                *c = -c.clone();
            }
        }
        IntPolynomial::new(coeffs)
    }
}
