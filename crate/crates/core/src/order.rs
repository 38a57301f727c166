//! The ultra-fat-tailed ordered space.
//!
//! Elements are formal integer combinations of real generators drawn from
//! (0, 1). The space is ordered lexicographically from the largest generator
//! down: an element is positive exactly when the coefficient of its largest
//! generator is positive, and `a < b` iff `b - a` is positive. Equivalently,
//! any single generator outweighs every integer combination of strictly
//! smaller generators, which is the "one huge step dominates the rest"
//! behaviour the walk models rely on.
//!
//! The order is total on the whole space and compatible with addition, so all
//! the usual LIS machinery applies verbatim; it is *not* archimedean, and no
//! real-number embedding is ever used.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from constructing or parsing ordered-space values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrderError {
    /// Generators must be finite and lie strictly inside (0, 1).
    #[error("generator value {0} outside the open interval (0, 1)")]
    InvalidGenerator(f64),
    /// Textual form did not match `<int>*g(<float>)` terms joined by `+`.
    #[error("malformed element term {0:?}")]
    Parse(String),
}

/// A generator of the ordered space: a real label in the open interval (0, 1).
///
/// Generators are compared by their real value. The constructor rejects
/// non-finite values and values outside (0, 1), so `Eq`/`Ord` are total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorId(f64);

impl GeneratorId {
    /// Creates a generator label, rejecting values outside the open (0, 1).
    pub fn new(value: f64) -> Result<Self, OrderError> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(GeneratorId(value))
        } else {
            Err(OrderError::InvalidGenerator(value))
        }
    }

    /// The real label of this generator.
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Eq for GeneratorId {}

impl PartialOrd for GeneratorId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneratorId {
    fn cmp(&self, other: &Self) -> Ordering {
        // Constructor excludes NaN and signed zero, so total_cmp agrees with
        // the usual order on the admissible range.
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g({})", self.0)
    }
}

/// An element of the ordered space: a finite formal sum
/// `c_1 * g(u_1) + ... + c_k * g(u_k)` with integer coefficients.
///
/// Invariant: `terms` is sorted by strictly descending generator and contains
/// no zero coefficients, so the leading term is the largest generator present
/// and representation equality is structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UltraElement {
    terms: Vec<(GeneratorId, i64)>,
}

impl UltraElement {
    /// The zero element (empty combination).
    pub fn zero() -> Self {
        UltraElement::default()
    }

    /// The element `1 * g`.
    pub fn generator(g: GeneratorId) -> Self {
        UltraElement {
            terms: vec![(g, 1)],
        }
    }

    /// The element `coeff * g`.
    pub fn term(g: GeneratorId, coeff: i64) -> Self {
        if coeff == 0 {
            UltraElement::zero()
        } else {
            UltraElement {
                terms: vec![(g, coeff)],
            }
        }
    }

    /// Builds an element from arbitrary (generator, coefficient) pairs,
    /// combining repeated generators and dropping zero coefficients.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (GeneratorId, i64)>,
    {
        let mut v: Vec<(GeneratorId, i64)> = terms.into_iter().collect();
        v.sort_by_key(|&(g, _)| std::cmp::Reverse(g));
        let mut out: Vec<(GeneratorId, i64)> = Vec::with_capacity(v.len());
        for (g, c) in v {
            match out.last_mut() {
                Some((lg, lc)) if *lg == g => *lc += c,
                _ => out.push((g, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        UltraElement { terms: out }
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The largest generator with a nonzero coefficient, or `None` for zero.
    pub fn degree(&self) -> Option<GeneratorId> {
        self.terms.first().map(|&(g, _)| g)
    }

    /// Terms in strictly descending generator order, zero coefficients absent.
    pub fn terms(&self) -> &[(GeneratorId, i64)] {
        &self.terms
    }

    /// Sum of two elements.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ga, ca) = self.terms[i];
            let (gb, cb) = other.terms[j];
            match ga.cmp(&gb) {
                Ordering::Greater => {
                    out.push((ga, ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gb, cb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ca + cb != 0 {
                        out.push((ga, ca + cb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        UltraElement { terms: out }
    }

    /// Additive inverse.
    pub fn negate(&self) -> Self {
        UltraElement {
            terms: self.terms.iter().map(|&(g, c)| (g, -c)).collect(),
        }
    }

    /// Difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    /// Sign relative to zero: the sign of the leading coefficient.
    pub fn sign(&self) -> Ordering {
        match self.terms.first() {
            None => Ordering::Equal,
            Some(&(_, c)) => c.cmp(&0),
        }
    }

    /// Total order: `a.compare(b)` is the sign of `a - b`.
    ///
    /// Walks both term lists from the largest generator down; the first
    /// generator whose coefficients differ decides, since every smaller
    /// generator is infinitesimal next to it.
    pub fn compare(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.terms.get(i), other.terms.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ca)), None) => return ca.cmp(&0),
                (None, Some(&(_, cb))) => return 0.cmp(&cb),
                (Some(&(ga, ca)), Some(&(gb, cb))) => match ga.cmp(&gb) {
                    Ordering::Greater => {
                        if ca != 0 {
                            return ca.cmp(&0);
                        }
                        i += 1;
                    }
                    Ordering::Less => {
                        if cb != 0 {
                            return 0.cmp(&cb);
                        }
                        j += 1;
                    }
                    Ordering::Equal => {
                        if ca != cb {
                            return ca.cmp(&cb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for UltraElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UltraElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for UltraElement {
    /// Renders `-1*g(0.55)+2*g(0.3)`, terms in descending generator order;
    /// zero renders as `0`. Float labels use the shortest round-trip form, so
    /// `Display` then `FromStr` reproduces the element exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}*{}", c, g)?;
        }
        Ok(())
    }
}

impl FromStr for UltraElement {
    type Err = OrderError;

    /// Parses the `Display` format. Terms may appear in any order and with
    /// repeated generators; the result is canonicalized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(UltraElement::zero());
        }
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let t = raw.trim();
            let (coeff_str, rest) = t
                .split_once("*g(")
                .ok_or_else(|| OrderError::Parse(t.to_string()))?;
            let value_str = rest
                .strip_suffix(')')
                .ok_or_else(|| OrderError::Parse(t.to_string()))?;
            let coeff: i64 = coeff_str
                .parse()
                .map_err(|_| OrderError::Parse(t.to_string()))?;
            let value: f64 = value_str
                .parse()
                .map_err(|_| OrderError::Parse(t.to_string()))?;
            terms.push((GeneratorId::new(value)?, coeff));
        }
        Ok(UltraElement::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: f64) -> GeneratorId {
        GeneratorId::new(v).unwrap()
    }

    #[test]
    fn generator_bounds_enforced() {
        assert!(GeneratorId::new(0.0).is_err());
        assert!(GeneratorId::new(1.0).is_err());
        assert!(GeneratorId::new(-0.5).is_err());
        assert!(GeneratorId::new(f64::NAN).is_err());
        assert!(GeneratorId::new(f64::INFINITY).is_err());
        assert!(GeneratorId::new(0.5).is_ok());
    }

    #[test]
    fn largest_generator_dominates_any_combination() {
        // g(0.9) > 1000*g(0.8) + 1000*g(0.7): the biggest generator wins
        // regardless of coefficients below it.
        let big = UltraElement::generator(g(0.9));
        let pile = UltraElement::from_terms([(g(0.8), 1000), (g(0.7), 1000)]);
        assert_eq!(big.compare(&pile), Ordering::Greater);
        assert_eq!(pile.compare(&big), Ordering::Less);
        // ...and with a negative leading coefficient the comparison flips.
        let neg_big = UltraElement::term(g(0.9), -1);
        assert_eq!(neg_big.compare(&pile), Ordering::Less);
    }

    #[test]
    fn sign_matches_leading_coefficient() {
        assert_eq!(UltraElement::zero().sign(), Ordering::Equal);
        let e = UltraElement::from_terms([(g(0.2), 5), (g(0.6), -1)]);
        assert_eq!(e.sign(), Ordering::Less);
        assert_eq!(e.degree(), Some(g(0.6)));
    }

    #[test]
    fn addition_cancels_to_zero() {
        let a = UltraElement::from_terms([(g(0.3), 2), (g(0.5), -1)]);
        let b = a.negate();
        assert!(a.add(&b).is_zero());
        assert_eq!(a.sub(&a), UltraElement::zero());
    }

    #[test]
    fn from_terms_canonicalizes() {
        let a = UltraElement::from_terms([(g(0.3), 1), (g(0.3), 1), (g(0.7), 0)]);
        assert_eq!(a.terms(), &[(g(0.3), 2)]);
        let b = UltraElement::from_terms([(g(0.3), 1), (g(0.3), -1)]);
        assert!(b.is_zero());
    }

    #[test]
    fn display_parse_round_trip_examples() {
        let e = UltraElement::from_terms([(g(0.3), 2), (g(0.55), -1)]);
        let s = e.to_string();
        assert_eq!(s, "-1*g(0.55)+2*g(0.3)");
        assert_eq!(s.parse::<UltraElement>().unwrap(), e);
        assert_eq!("0".parse::<UltraElement>().unwrap(), UltraElement::zero());
        // Order-insensitive parsing with duplicate combining.
        let p: UltraElement = "1*g(0.3)+-1*g(0.55)+1*g(0.3)".parse().unwrap();
        assert_eq!(p, e);
        assert!("nonsense".parse::<UltraElement>().is_err());
        assert!("1*g(1.5)".parse::<UltraElement>().is_err());
    }
}
