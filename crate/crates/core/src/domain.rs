/// Axis-aligned parametric box `[lo, hi]` in `N` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBox<const N: usize> {
    pub lo: [f64; N],
    pub hi: [f64; N],
}

impl<const N: usize> ParamBox<N> {
    pub const fn new(lo: [f64; N], hi: [f64; N]) -> Self {
        ParamBox { lo, hi }
    }

    pub fn contains(&self, xi: &[f64; N]) -> bool {
        (0..N).all(|i| xi[i] >= self.lo[i] && xi[i] <= self.hi[i])
    }

    pub fn center(&self) -> [f64; N] {
        core::array::from_fn(|i| 0.5 * (self.lo[i] + self.hi[i]))
    }

    /// Point at fractional coordinates `t ∈ [0,1]^N`.
    pub fn lerp(&self, t: &[f64; N]) -> [f64; N] {
        core::array::from_fn(|i| self.lo[i] + t[i] * (self.hi[i] - self.lo[i]))
    }

    pub fn extent(&self, i: usize) -> f64 {
        self.hi[i] - self.lo[i]
    }

    /// Lebesgue measure of the box.
    pub fn measure(&self) -> f64 {
        (0..N).map(|i| self.extent(i)).product()
    }
}

pub type Rect = ParamBox<2>;
pub type Cuboid = ParamBox<3>;
