use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

/// Largest finite cost accepted from input.
pub const MAX_FINITE: u64 = 1 << 40;

/// A nonnegative movement cost with a distinguished infinite value.
///
/// Addition saturates: anything plus `Cost::INF` is `Cost::INF`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(u64);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INF: Cost = Cost(u64::MAX);

    pub fn new(v: u64) -> Cost {
        if v == u64::MAX {
            Cost::INF
        } else {
            Cost(v)
        }
    }

    pub fn is_inf(self) -> bool {
        self.0 == u64::MAX
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    /// The finite value, or `None` for infinity.
    pub fn finite(self) -> Option<u64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn times(self, n: u64) -> Cost {
        if n == 0 {
            return Cost::ZERO;
        }
        match self.finite() {
            None => Cost::INF,
            Some(v) => Cost(v.checked_mul(n).filter(|&x| x < u64::MAX).unwrap_or(u64::MAX)),
        }
    }

    /// `self - other` for finite `other <= self`; used only to undo double counting.
    pub(crate) fn minus(self, other: Cost) -> Cost {
        debug_assert!(other.is_finite());
        if self.is_inf() {
            Cost::INF
        } else {
            Cost(self.0 - other.0)
        }
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0.saturating_add(rhs.0))
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a + b)
    }
}

impl From<u64> for Cost {
    fn from(v: u64) -> Cost {
        Cost::new(v)
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturates() {
        assert_eq!(Cost::new(3) + Cost::INF, Cost::INF);
        assert_eq!(Cost::INF + Cost::INF, Cost::INF);
        assert_eq!(Cost::new(u64::MAX - 1) + Cost::new(5), Cost::INF);
        assert_eq!(Cost::new(2) + Cost::new(5), Cost::new(7));
    }

    #[test]
    fn ordering_puts_inf_last() {
        assert!(Cost::new(1 << 40) < Cost::INF);
        assert_eq!(Cost::INF.times(0), Cost::ZERO);
        assert_eq!(Cost::new(4).times(3), Cost::new(12));
        assert_eq!(Cost::INF.times(2), Cost::INF);
    }
}
