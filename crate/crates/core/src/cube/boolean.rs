use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest cube dimension whose truth table fits in a `u64`.
pub const MAX_DIM: usize = 6;

/// A set of coordinates, bit `i` standing for coordinate `i` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_coords(coords: &[usize]) -> Self {
        Subset(coords.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn full(n: usize) -> Self {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn coords(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    pub(crate) fn check(self, n: usize) -> Result<()> {
        if (self.0 as u64) >> n != 0 {
            let index = (self.0 as u64 >> n).trailing_zeros() as usize + n;
            return Err(Error::CoordinateOutOfCube { index, n });
        }
        Ok(())
    }
}

/// Character χ_S(x) = Π_{i∈S} x_i, with x_i = +1 exactly when bit i of x is set.
#[inline]
pub fn chi(s: usize, x: usize) -> i64 {
    if (s & !x).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A {0,1}-valued function on `{±1}^n`, stored as a truth table.
///
/// Point `x` is an index in `0..2^n`; coordinate `i` of the point is `+1`
/// when bit `i` is set and `−1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub struct BooleanFunction {
    n: usize,
    table: u64,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    n: usize,
    support: Vec<usize>,
}

impl TryFrom<Repr> for BooleanFunction {
    type Error = Error;

    fn try_from(r: Repr) -> Result<Self> {
        BooleanFunction::from_support(r.n, &r.support)
    }
}

impl From<BooleanFunction> for Repr {
    fn from(f: BooleanFunction) -> Self {
        Repr {
            n: f.n,
            support: f.support(),
        }
    }
}

pub(crate) fn check_dim(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::DimensionOverflow { n, max });
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == MAX_DIM {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl BooleanFunction {
    /// Builds a function from a raw truth table; bits at or above `2^n` must be clear.
    pub fn from_table(n: usize, table: u64) -> Result<Self> {
        check_dim(n, MAX_DIM)?;
        if table & !full_mask(n) != 0 {
            let index = (table & !full_mask(n)).trailing_zeros() as usize;
            return Err(Error::PointOutOfCube { index, n });
        }
        Ok(Self { n, table })
    }

    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        check_dim(n, MAX_DIM)?;
        let mut table = 0u64;
        for &x in support {
            if x >= 1 << n {
                return Err(Error::PointOutOfCube { index: x, n });
            }
            table |= 1 << x;
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_dim(n, MAX_DIM)?;
        let table = (0..1usize << n).filter(|&x| f(x)).fold(0u64, |t, x| t | 1 << x);
        Ok(Self { n, table })
    }

    /// 1{x_i = +1}, or 1{x_i = −1} when `positive` is false.
    pub fn dictator(n: usize, i: usize, positive: bool) -> Result<Self> {
        if i >= n {
            return Err(Error::CoordinateOutOfCube { index: i, n });
        }
        Self::from_fn(n, |x| (x >> i & 1 == 1) == positive)
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// First `count` points in ascending index order.
    pub fn lexicographic(n: usize, count: usize) -> Result<Self> {
        check_dim(n, MAX_DIM)?;
        if count > 1 << n {
            return Err(Error::PointOutOfCube { index: count - 1, n });
        }
        Self::from_fn(n, |x| x < count)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> u64 {
        self.table
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn value(&self, x: usize) -> bool {
        self.table >> x & 1 == 1
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.value(x)).collect()
    }

    pub fn count(&self) -> usize {
        self.table.count_ones() as usize
    }

    pub fn mean(&self) -> f64 {
        self.count() as f64 / self.size() as f64
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.count() == self.size()
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            table: !self.table & full_mask(self.n),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.size()).map(|x| if self.value(x) { 1.0 } else { 0.0 }).collect()
    }
}
