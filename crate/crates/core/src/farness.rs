// SPDX-License-Identifier: Apache-2.0

//! Exact farness values.
//!
//! Farness is `(n-1)·S / (r-1)²` where `S` is a (bound on the) distance sum
//! and `r` the number of reachable nodes. Values are kept as integer ratios
//! and compared by cross-multiplication, so pruning and tie detection never
//! depend on rounding. Numerators may be negative for weak lower bounds.
//! With `n < 2^21` every cross product fits in an `i128`.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy)]
pub struct Farness {
    num: i128,
    /// Zero encodes +∞.
    den: i128,
}

impl Farness {
    pub const INFINITE: Farness = Farness { num: 1, den: 0 };
    pub const ZERO: Farness = Farness { num: 0, den: 1 };

    /// `(n-1)·sum / (r-1)²`, or +∞ when `r ≤ 1`.
    pub fn new(n: usize, sum: i128, r: usize) -> Farness {
        if r <= 1 {
            return Farness::INFINITE;
        }
        let rm1 = (r - 1) as i128;
        Farness {
            num: (n as i128 - 1) * sum,
            den: rm1 * rm1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    /// Reciprocal, i.e. Lin's closeness. Infinite farness maps to 0.
    pub fn closeness(&self) -> f64 {
        if self.den == 0 || self.num <= 0 {
            return 0.0;
        }
        self.den as f64 / self.num as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.den == 0 {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

impl Ord for Farness {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.den == 0, other.den == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (self.num * other.den).cmp(&(other.num * self.den)),
        }
    }
}

impl PartialOrd for Farness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Farness {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Farness {}

impl fmt::Debug for Farness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 0 {
            write!(f, "Farness(+inf)")
        } else {
            write!(f, "Farness({}/{})", self.num, self.den)
        }
    }
}

/// Orders `(n-1)·S_a/(r_a-1)²` against `(n-1)·S_b/(r_b-1)²`. A side with
/// `r < 2` counts as +∞.
pub fn compare_farness(a: (u64, usize), b: (u64, usize), n: usize) -> Ordering {
    Farness::new(n, a.0 as i128, a.1).cmp(&Farness::new(n, b.0 as i128, b.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_examples() {
        assert_eq!(compare_farness((3, 3), (2, 3), 4), Ordering::Greater);
        // 4·(5-1)² = 16·(3-1)²
        assert_eq!(compare_farness((4, 3), (16, 5), 7), Ordering::Equal);
        // path a-b-c-d: S(a)=6, S(b)=4
        assert_eq!(compare_farness((6, 4), (4, 4), 4), Ordering::Greater);
    }

    #[test]
    fn infinity_rules() {
        assert_eq!(compare_farness((0, 1), (1_000, 2), 10), Ordering::Greater);
        assert_eq!(compare_farness((0, 1), (0, 0), 10), Ordering::Equal);
        assert!(Farness::INFINITE > Farness::new(5, 1 << 40, 2));
        assert_eq!(Farness::INFINITE.closeness(), 0.0);
    }

    #[test]
    fn negative_bounds_order_below_zero() {
        let neg = Farness::new(4, -3, 3);
        assert!(neg < Farness::ZERO);
        assert!(neg < Farness::new(4, 1, 3));
    }

    #[test]
    fn closeness_is_reciprocal() {
        // path a-b-c, node a: S = 3, r = 3 → c = 4 / (2·3)
        let f = Farness::new(3, 3, 3);
        assert_eq!(f.closeness(), 4.0 / 6.0);
        assert_eq!(f.to_f64(), 1.5);
    }

    #[test]
    fn no_overflow_near_size_limit() {
        let n = (1usize << 21) - 1;
        let s = (n as i128) * (n as i128);
        let a = Farness::new(n, s, n);
        let b = Farness::new(n, s - 1, n);
        assert!(a > b);
    }
}
