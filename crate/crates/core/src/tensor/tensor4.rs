use super::{Configuration, Tensor2, Variance};
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::math;

/// Fourth-order tensor with Cartesian components `C_ijkl`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor4 {
    components: [[[[f64; 3]; 3]; 3]; 3],
    /// Variances of the two tensors the value was built from (left, right).
    pub variances: (Variance, Variance),
    pub configuration: Configuration,
}

/// The three dyadic products of two second-order tensors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    /// `(A⊗B)_ijkl = A_ij B_kl`
    Outer,
    /// `(A⊕B)_ijkl = A_il B_jk`
    Oplus,
    /// `(A⊠B)_ijkl = A_ik B_jl`
    Boxtimes,
}

/// Index rearrangements; `L` undoes `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rearrangement {
    /// `C^R_ijkl = C_iklj`
    R,
    /// `C^L_ijkl = C_iljk`
    L,
}

impl Tensor4 {
    pub fn zero(configuration: Configuration) -> Self {
        Tensor4 {
            components: [[[[0.0; 3]; 3]; 3]; 3],
            variances: (Variance::Contra, Variance::Contra),
            configuration,
        }
    }

    pub fn from_fn(configuration: Configuration, f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Tensor4::zero(configuration);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        t.components[i][j][k][l] = f(i, j, k, l);
                    }
                }
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.components[i][j][k][l]
    }

    pub fn components(&self) -> &[[[[f64; 3]; 3]; 3]; 3] {
        &self.components
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().flatten().flatten().flatten().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.components
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0, |m, x| f64::max(m, math::abs(*x)))
    }

    /// Largest componentwise difference to `other`.
    pub fn max_abs_diff(&self, other: &Tensor4) -> f64 {
        let mut worst: f64 = 0.0;
        self.for_each(|i, j, k, l| {
            worst = worst.max(math::abs(self.get(i, j, k, l) - other.get(i, j, k, l)));
        });
        worst
    }

    /// `(C:X)_ij = C_ijkl X_kl`
    pub fn ddot(&self, x: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            let mut s = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    s += self.components[i][j][k][l] * x[(k, l)];
                }
            }
            s
        })
    }

    /// `(X:C)_kl = X_ij C_ijkl`
    pub fn ddot_left(&self, x: &Mat3) -> Mat3 {
        Mat3::from_fn(|k, l| {
            let mut s = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    s += x[(i, j)] * self.components[i][j][k][l];
                }
            }
            s
        })
    }

    pub fn add(&self, other: &Tensor4) -> Result<Tensor4> {
        if self.configuration != other.configuration {
            return Err(Error::ConfigurationMismatch {
                expected: self.configuration,
                found: other.configuration,
            });
        }
        let mut out = *self;
        out.for_each_mut(|i, j, k, l, c| *c += other.get(i, j, k, l));
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Tensor4 {
        let mut out = *self;
        out.for_each_mut(|_, _, _, _, c| *c *= s);
        out
    }

    fn for_each(&self, mut f: impl FnMut(usize, usize, usize, usize)) {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        f(i, j, k, l);
                    }
                }
            }
        }
    }

    fn for_each_mut(&mut self, mut f: impl FnMut(usize, usize, usize, usize, &mut f64)) {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        f(i, j, k, l, &mut self.components[i][j][k][l]);
                    }
                }
            }
        }
    }
}

/// Dyadic product of two second-order tensors in the same configuration.
pub fn tensor_product(a: &Tensor2, b: &Tensor2, kind: Product) -> Result<Tensor4> {
    b.check_configuration(a.configuration())?;
    let mut out = matrix_product(a.components(), b.components(), kind);
    out.variances = (a.variance(), b.variance());
    out.configuration = a.configuration();
    Ok(out)
}

/// Untagged dyadic product of two component matrices.
pub fn matrix_product(a: &Mat3, b: &Mat3, kind: Product) -> Tensor4 {
    Tensor4::from_fn(Configuration::Reference, |i, j, k, l| match kind {
        Product::Outer => a[(i, j)] * b[(k, l)],
        Product::Oplus => a[(i, l)] * b[(j, k)],
        Product::Boxtimes => a[(i, k)] * b[(j, l)],
    })
}

pub fn rearrange(c: &Tensor4, direction: Rearrangement) -> Tensor4 {
    let mut out = Tensor4::from_fn(c.configuration, |i, j, k, l| match direction {
        Rearrangement::R => c.get(i, k, l, j),
        Rearrangement::L => c.get(i, l, j, k),
    });
    out.variances = c.variances;
    out
}
