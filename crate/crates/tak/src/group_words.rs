//! Words in the free group on two generators, the integral group ring, and
//! Fox's free differential calculus.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn symbol(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
        }
    }
}

/// A freely reduced word. Stored run-length style: adjacent entries always
/// have distinct generators and nonzero exponents, so equality of the
/// representation is equality in the free group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord {
    runs: Vec<(Gen, i32)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: Gen) -> Self {
        FreeWord { runs: vec![(g, 1)] }
    }

    pub fn letter(g: Gen, e: i32) -> Self {
        let mut w = FreeWord::identity();
        w.push(g, e);
        w
    }

    pub fn from_letters<I: IntoIterator<Item = (Gen, i32)>>(letters: I) -> Self {
        let mut w = FreeWord::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Append g^e, cancelling against the tail as needed.
    pub fn push(&mut self, g: Gen, e: i32) {
        if e == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((tg, te)) if *tg == g => {
                *te += e;
                if *te == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((g, e)),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, e) in &other.runs {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of unit letters, i.e. the reduced word length.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.runs.iter().map(|&(_, e)| e as i64).sum()
    }

    /// The word spelled out as unit letters (g, ±1).
    pub fn unit_letters(&self) -> Vec<(Gen, i32)> {
        let mut out = Vec::with_capacity(self.len());
        for &(g, e) in &self.runs {
            let s = e.signum();
            for _ in 0..e.unsigned_abs() {
                out.push((g, s));
            }
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for &(g, e) in &self.runs {
            if e == 1 {
                write!(f, "{}", g.symbol())?;
            } else {
                write!(f, "{}^{}", g.symbol(), e)?;
            }
        }
        Ok(())
    }
}

/// An element of the group ring Z[F_2]: a finite integer combination of
/// reduced words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut e = GroupRingElement::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GroupRingElement) -> GroupRingElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, &cu) in &self.terms {
            for (v, &cv) in &other.terms {
                out.add_term(u.concat(v), cu * cv);
            }
        }
        out
    }

    /// Left multiplication by a single word.
    pub fn word_mul(&self, u: &FreeWord) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, &c) in &self.terms {
            out.add_term(u.concat(w), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }
}

/// Fox derivative d(w)/d(g). Axioms: dg/dg = 1, dh/dg = 0 for h != g,
/// d(g^-1)/dg = -g^-1, and the product rule d(uv)/dg = du/dg + u dv/dg.
pub fn fox_derivative(w: &FreeWord, g: Gen) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for (h, e) in w.unit_letters() {
        if h == g {
            if e == 1 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.concat(&FreeWord::letter(g, -1)), -1);
            }
        }
        prefix.push(h, e);
    }
    out
}

/// The relator w a w^-1 b^-1 of the presentation <a, b | wa = bw>.
pub fn relator(w: &FreeWord) -> FreeWord {
    w.concat(&FreeWord::generator(Gen::A))
        .concat(&w.inverse())
        .concat(&FreeWord::letter(Gen::B, -1))
}

pub fn relator_derivative(w: &FreeWord, g: Gen) -> GroupRingElement {
    fox_derivative(&relator(w), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> FreeWord {
        // tiny literal syntax for tests: 'a', 'A' (= a^-1), 'b', 'B'
        FreeWord::from_letters(s.chars().map(|c| match c {
            'a' => (Gen::A, 1),
            'A' => (Gen::A, -1),
            'b' => (Gen::B, 1),
            'B' => (Gen::B, -1),
            _ => panic!("bad letter {c}"),
        }))
    }

    fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> FreeWord {
        let len = rng.gen_range(0..=max_len);
        FreeWord::from_letters((0..len).map(|_| {
            (
                if rng.gen() { Gen::A } else { Gen::B },
                if rng.gen() { 1 } else { -1 },
            )
        }))
    }

    #[test]
    fn reduction_cancels() {
        assert!(w("aA").is_identity());
        assert_eq!(w("abBa"), w("aa"));
        assert_eq!(w("abBa").len(), 2);
        // (ab)(a^-1 b^-1)(ab) stays reduced as written
        let n1 = w("ab").concat(&w("AB")).concat(&w("ab"));
        assert_eq!(n1, w("abABab"));
        assert_eq!(n1.len(), 6);
    }

    #[test]
    fn concat_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (u, v, t) = (
                random_word(&mut rng, 12),
                random_word(&mut rng, 12),
                random_word(&mut rng, 12),
            );
            assert_eq!(u.concat(&v).concat(&t), u.concat(&v.concat(&t)));
        }
    }

    #[test]
    fn inverse_cancels() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let u = random_word(&mut rng, 20);
            assert!(u.concat(&u.inverse()).is_identity());
        }
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(FreeWord::identity().exponent_sum(), 0);
        for n in 1..=6 {
            let w63 = w("ab").pow(n).concat(&w("AB").pow(n)).concat(&w("ab").pow(n));
            assert_eq!(w63.exponent_sum(), 2 * n as i64);
            let tw = w("bA").pow(n).concat(&w("b")).concat(&w("aB").pow(n));
            assert_eq!(tw.exponent_sum(), 1);
        }
    }

    #[test]
    fn fox_axioms() {
        assert_eq!(fox_derivative(&w("a"), Gen::A), GroupRingElement::one());
        assert_eq!(fox_derivative(&w("b"), Gen::A), GroupRingElement::zero());
        let mut want = GroupRingElement::zero();
        want.add_term(w("A"), -1);
        assert_eq!(fox_derivative(&w("A"), Gen::A), want);
    }

    #[test]
    fn fox_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let u = random_word(&mut rng, 30);
            let v = random_word(&mut rng, 30);
            for g in [Gen::A, Gen::B] {
                let lhs = fox_derivative(&u.concat(&v), g);
                let rhs = fox_derivative(&u, g).add(&fox_derivative(&v, g).word_mul(&u));
                assert_eq!(lhs, rhs, "u={u} v={v}");
            }
        }
    }

    #[test]
    fn fox_of_u_uinv_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let u = random_word(&mut rng, 25);
            for g in [Gen::A, Gen::B] {
                // d(u u^-1)/dg = du/dg + u d(u^-1)/dg must vanish even though
                // the word itself reduces to 1 before differentiation;
                // compute it via the product rule on the unreduced pair.
                let d = fox_derivative(&u, g).add(&fox_derivative(&u.inverse(), g).word_mul(&u));
                assert!(d.is_zero(), "u={u}");
            }
        }
    }

    #[test]
    fn twist_word_derivative_closed_form() {
        // for w = (b a^-1)^n b (a b^-1)^n:
        // dw/da = -(1 + ... + (ba^-1)^(n-1)) b a^-1
        //         + (ba^-1)^n b (1 + ... + (ab^-1)^(n-1))
        for n in 1..=6 {
            let ba = w("bA");
            let ab = w("aB");
            let word = ba.pow(n).concat(&w("b")).concat(&ab.pow(n));
            let mut left = GroupRingElement::zero();
            let mut right = GroupRingElement::zero();
            for k in 0..n {
                left.add_term(ba.pow(k).concat(&w("bA")), -1);
                right.add_term(ba.pow(n).concat(&w("b")).concat(&ab.pow(k)), 1);
            }
            assert_eq!(fox_derivative(&word, Gen::A), left.add(&right));
        }
    }

    #[test]
    fn relator_derivative_small_cases() {
        // w = 1: r = a b^-1, dr/da = 1
        assert_eq!(
            relator_derivative(&FreeWord::identity(), Gen::A),
            GroupRingElement::one()
        );
        // w = b: r = b a b^-2, dr/da = b
        assert_eq!(
            relator_derivative(&w("b"), Gen::A),
            GroupRingElement::from_word(w("b"))
        );
    }

    #[test]
    fn relator_derivative_b7() {
        // b(7,3): w = a b a^-1 b^-1 a b; the reduced expansion has 7 terms,
        // all with coefficient +-1, including the constant 1 and the word w
        let word = w("abABab");
        let d = relator_derivative(&word, Gen::A);
        assert_eq!(d.num_terms(), 7);
        for (t, c) in d.terms() {
            assert!(c == 1 || c == -1, "{t} has coefficient {c}");
        }
        let coeff_of = |u: &FreeWord| d.terms().find(|(t, _)| *t == u).map(|(_, c)| c);
        assert_eq!(coeff_of(&FreeWord::identity()), Some(1));
        assert_eq!(coeff_of(&word), Some(1));
    }

    #[test]
    fn relator_has_zero_exponent_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let u = random_word(&mut rng, 20);
            assert_eq!(relator(&u).exponent_sum(), 0);
        }
    }
}
