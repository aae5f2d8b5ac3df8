//! Seeded sample streams and random kernel inputs.
//!
//! Streams are ChaCha8 (`rand_chacha`) keyed by the run seed, with one
//! 64-bit stream id per property group. ChaCha is a counter-based generator,
//! so each group's sequence depends only on `(seed, stream)` and not on
//! scheduling.

use klts_core::domain::ParamBox;
use klts_core::surface::{MappedSurface, PolynomialSurface, SurfaceChart, Sphere, Torus};
use klts_core::volume::{CylindricalChart, MappedChart, PolynomialChart, VolumeChart};
use klts_core::{Mat2, Mat3, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn stream(seed: u64, id: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

pub fn uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

pub fn vec3(rng: &mut SampleRng, amp: f64) -> Vec3 {
    Vec3::new(uniform(rng, -amp, amp), uniform(rng, -amp, amp), uniform(rng, -amp, amp))
}

pub fn mat3(rng: &mut SampleRng, amp: f64) -> Mat3 {
    Mat3::from_rows(&[vec3(rng, amp), vec3(rng, amp), vec3(rng, amp)])
}

pub fn sym3(rng: &mut SampleRng, amp: f64) -> Mat3 {
    mat3(rng, amp).sym()
}

pub fn skew3(rng: &mut SampleRng, amp: f64) -> Mat3 {
    mat3(rng, amp).skew()
}

/// `I + P` with `|P_ij| < amp`; `amp < 1/3` keeps `det > 0`.
pub fn near_identity(rng: &mut SampleRng, amp: f64) -> Mat3 {
    Mat3::IDENTITY + mat3(rng, amp)
}

/// `L Lᵀ` from a random `L`, positive semidefinite and usually singular-free.
pub fn psd3(rng: &mut SampleRng, amp: f64) -> Mat3 {
    let l = mat3(rng, amp);
    l * l.transpose()
}

/// Proper rotation `exp(W)` by the Rodrigues formula.
pub fn rotation(rng: &mut SampleRng) -> Mat3 {
    let axis = loop {
        if let Some(a) = vec3(rng, 1.0).normalized() {
            break a;
        }
    };
    let angle = uniform(rng, -std::f64::consts::PI, std::f64::consts::PI);
    let k = Mat3([[0.0, -axis[2], axis[1]], [axis[2], 0.0, -axis[0]], [-axis[1], axis[0], 0.0]]);
    Mat3::IDENTITY + k * angle.sin() + (k * k) * (1.0 - angle.cos())
}

pub fn spd2(rng: &mut SampleRng) -> Mat2 {
    let l = Mat2::new(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    l * l.transpose() + Mat2::IDENTITY * uniform(rng, 0.3, 1.0)
}

/// Symmetric 2×2 with `|det| ≥ min_det`.
pub fn sym2_regular(rng: &mut SampleRng, min_det: f64) -> Mat2 {
    loop {
        let off = uniform(rng, -0.5, 0.5);
        let b = Mat2::new(uniform(rng, -1.0, 1.0), off, off, uniform(rng, -1.0, 1.0));
        if b.det().abs() >= min_det {
            return b;
        }
    }
}

pub fn point_in<const N: usize>(rng: &mut SampleRng, domain: &ParamBox<N>, margin: f64) -> [f64; N] {
    std::array::from_fn(|i| {
        let pad = margin * domain.extent(i);
        uniform(rng, domain.lo[i] + pad, domain.hi[i] - pad)
    })
}

pub fn unit_cube() -> ParamBox<3> {
    ParamBox::new([0.0; 3], [1.0; 3])
}

/// Cubic polynomial chart on the unit cube, a perturbation of `x = ξ`.
pub fn polynomial_chart(rng: &mut SampleRng, amp: f64) -> PolynomialChart {
    let mut c = PolynomialChart::affine(near_identity(rng, amp), vec3(rng, 1.0), unit_cube());
    for i in 0..3 {
        for j in 0..3 {
            for k in j..3 {
                let q = uniform(rng, -0.5 * amp, 0.5 * amp);
                c.quadratic[i][j][k] = q;
                c.quadratic[i][k][j] = q;
            }
            c.cubic[i][j][j][j] = uniform(rng, -0.25 * amp, 0.25 * amp);
        }
    }
    c
}

/// Random volume chart: even `index` gives a polynomial chart, odd a mapped
/// cylindrical chart.
pub fn volume_chart(rng: &mut SampleRng, amp: f64, index: usize) -> Box<dyn VolumeChart + Send + Sync> {
    if index.is_multiple_of(2) {
        Box::new(polynomial_chart(rng, amp))
    } else {
        Box::new(MappedChart {
            inner: CylindricalChart {
                domain: ParamBox::new([0.5, -2.5, -1.0], [2.0, 2.5, 1.0]),
            },
            map: near_identity(rng, amp),
            offset: vec3(rng, 1.0),
        })
    }
}

/// Random regular surface patch cycling through sphere, torus and
/// polynomial families, each composed with a near-identity affine map.
pub fn surface_chart(rng: &mut SampleRng, amp: f64, index: usize) -> Box<dyn SurfaceChart + Send + Sync> {
    let map = near_identity(rng, amp);
    let offset = vec3(rng, 0.5);
    match index % 3 {
        0 => Box::new(MappedSurface {
            inner: Sphere {
                radius: uniform(rng, 0.5, 3.0),
                domain: ParamBox::new([0.4, -2.5], [std::f64::consts::PI - 0.4, 2.5]),
            },
            map,
            offset,
        }),
        1 => {
            let major = uniform(rng, 2.0, 3.0);
            Box::new(MappedSurface {
                inner: Torus {
                    major,
                    minor: uniform(rng, 0.3, 1.0),
                    domain: ParamBox::new([-2.5, -2.5], [2.5, 2.5]),
                },
                map,
                offset,
            })
        }
        _ => Box::new(MappedSurface {
            inner: polynomial_surface(rng, amp, ParamBox::new([-1.0, -1.0], [1.0, 1.0])),
            map,
            offset,
        }),
    }
}

/// `x = (ξ¹, ξ², 0) + ` small quadratic and cubic terms.
pub fn polynomial_surface(rng: &mut SampleRng, amp: f64, domain: ParamBox<2>) -> PolynomialSurface {
    let mut p = PolynomialSurface::constant(Vec3::ZERO, domain);
    p.linear = [Vec3::unit(0) + vec3(rng, amp), Vec3::unit(1) + vec3(rng, amp)];
    for a in 0..2 {
        for b in a..2 {
            let q = vec3(rng, amp);
            p.quadratic[a][b] = q;
            p.quadratic[b][a] = q;
        }
    }
    p.quadratic[0][0][2] += 0.5;
    p.quadratic[1][1][2] -= 0.3;
    p.cubic[0][0][1] = vec3(rng, 0.5 * amp);
    p.cubic[1][1][0] = vec3(rng, 0.5 * amp);
    p
}

/// Random cubic vector field with every derivative order populated.
pub fn surface_field(rng: &mut SampleRng, amp: f64, domain: ParamBox<2>) -> PolynomialSurface {
    let mut p = PolynomialSurface::constant(vec3(rng, amp), domain);
    p.linear = [vec3(rng, amp), vec3(rng, amp)];
    for a in 0..2 {
        for b in a..2 {
            let q = vec3(rng, amp);
            p.quadratic[a][b] = q;
            p.quadratic[b][a] = q;
        }
    }
    p.cubic[0][0][0] = vec3(rng, amp);
    p.cubic[0][1][1] = vec3(rng, amp);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| stream(42, 3).gen()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut s3 = stream(42, 3);
        let mut s4 = stream(42, 4);
        assert_ne!(s3.gen::<u64>(), s4.gen::<u64>());
    }

    #[test]
    fn rotations_are_orthogonal() {
        let mut rng = stream(1, 0);
        for _ in 0..20 {
            let q = rotation(&mut rng);
            assert!((q.transpose() * q - Mat3::IDENTITY).max_abs() < 1e-14);
            assert!((q.det() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_charts_are_regular() {
        let mut rng = stream(5, 0);
        for i in 0..9 {
            let s = surface_chart(&mut rng, 0.2, i);
            let xi = point_in(&mut rng, &s.domain(), 0.05);
            assert!(klts_core::surface::frame(&s, &xi, klts_core::tensor::Configuration::Current).is_ok());
            let v = volume_chart(&mut rng, 0.2, i);
            let xi = point_in(&mut rng, &v.domain(), 0.05);
            assert!(v.basis(&xi, klts_core::tensor::Configuration::Current).is_ok());
        }
    }
}
