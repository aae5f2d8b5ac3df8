use alloc::vec::Vec;

/// Virtual-work residual `G_in + G_int − G_ext` with its named parts.
///
/// Thermal forms map onto the same slots: `g_in` is the entropy-rate term,
/// `g_int` minus the conduction term and `g_ext` the source minus the
/// boundary flux.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualBreakdown {
    pub g_in: f64,
    pub g_int: f64,
    pub g_ext: f64,
    /// Named contributions; they sum to the three totals above.
    pub terms: Vec<(&'static str, f64)>,
}

impl ResidualBreakdown {
    pub fn residual(&self) -> f64 {
        self.g_in + self.g_int - self.g_ext
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    pub fn is_finite(&self) -> bool {
        self.g_in.is_finite() && self.g_int.is_finite() && self.g_ext.is_finite()
    }
}
