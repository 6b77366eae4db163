//! Holographic reduced representations.
//!
//! Hypervectors are dense real vectors of dimension `D` whose components are
//! drawn i.i.d. from `N(0, 1/D)`. Binding is circular convolution and is
//! evaluated in Fourier space, so any `D >= 2` is supported (the FFT backend
//! handles non-power-of-two and prime lengths). Bundling is plain addition.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::hash::Hasher;
use std::ops::{Add, Neg};

use fnv::FnvHasher;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

/// Norm below which a vector is treated as zero by [`normalize`].
pub const NORM_EPSILON: f64 = 1e-12;

/// Largest imaginary component tolerated when a spectrum is inverted back to
/// a real vector.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HdcError {
    #[error("invalid dimension {dim}: must be at least {min}")]
    InvalidDimension { dim: usize, min: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("non-finite component at index {0}")]
    NonFinite(usize),
    #[error("invalid value {0}: must be finite")]
    InvalidValue(f64),
    #[error("bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),
    #[error("inverse transform left an imaginary residue of {0:e}")]
    ImaginaryResidue(f64),
}

/// Dense real hypervector.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperVector {
    components: Vec<f64>,
}

impl HyperVector {
    /// Wraps a component vector, rejecting empty input and non-finite values.
    pub fn new(components: Vec<f64>) -> Result<Self, HdcError> {
        if components.is_empty() {
            return Err(HdcError::InvalidDimension { dim: 0, min: 1 });
        }
        if let Some(i) = components.iter().position(|c| !c.is_finite()) {
            return Err(HdcError::NonFinite(i));
        }
        Ok(Self { components })
    }

    pub(crate) fn from_vec_unchecked(components: Vec<f64>) -> Self {
        debug_assert!(components.iter().all(|c| c.is_finite()));
        Self { components }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { components: vec![0.0; dim] }
    }

    /// The identity element of binding: `[1, 0, ..., 0]`.
    pub fn impulse(dim: usize) -> Self {
        Self::basis(dim, 0)
    }

    /// Standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut components = vec![0.0; dim];
        components[index] = 1.0;
        Self { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.components
    }

    pub fn dot(&self, other: &Self) -> Result<f64, HdcError> {
        check_dims(self.dim(), other.dim())?;
        Ok(dot(&self.components, &other.components))
    }

    pub fn norm(&self) -> f64 {
        dot(&self.components, &self.components).sqrt()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_vec_unchecked(self.components.iter().map(|c| c * factor).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0.0)
    }

    pub fn bind(&self, other: &Self) -> Result<Self, HdcError> {
        bind(self, other)
    }

    pub fn unbind(&self, key: &Self) -> Result<Self, HdcError> {
        unbind(self, key)
    }

    pub fn cosine(&self, other: &Self) -> Result<f64, HdcError> {
        cosine_sim(self, other)
    }

    pub fn normalized(&self) -> Self {
        normalize(self)
    }

    /// Largest absolute component-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, HdcError> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

impl Add for &HyperVector {
    type Output = HyperVector;

    /// Component-wise sum. Panics on dimension mismatch; use [`bundle`] for a
    /// checked version.
    fn add(self, rhs: &HyperVector) -> HyperVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        HyperVector::from_vec_unchecked(
            self.components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Neg for &HyperVector {
    type Output = HyperVector;

    fn neg(self) -> HyperVector {
        self.scale(-1.0)
    }
}

/// Deterministic source of labeled random streams.
///
/// Every label maps to its own sub-seed, so the vector drawn for `"atom:C"`
/// does not depend on which other labels were drawn before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededGenerator {
    master_seed: u64,
}

impl SeededGenerator {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// 64-bit sub-seed for `label`: FNV-1a over the little-endian master seed
    /// followed by the label bytes, finished with a splitmix64 avalanche.
    pub fn sub_seed(&self, label: &str) -> u64 {
        let mut hasher = FnvHasher::default();
        hasher.write(&self.master_seed.to_le_bytes());
        hasher.write(label.as_bytes());
        splitmix64(hasher.finish())
    }

    pub fn rng(&self, label: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.sub_seed(label))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Draws a hypervector with i.i.d. `N(0, 1/D)` components from the stream of
/// `(master_seed, label)`.
pub fn random_hv(gen: &SeededGenerator, label: &str, dim: usize) -> Result<HyperVector, HdcError> {
    if dim < 2 {
        return Err(HdcError::InvalidDimension { dim, min: 2 });
    }
    let mut rng = gen.rng(label);
    let scale = 1.0 / (dim as f64).sqrt();
    let components = (0..dim)
        .map(|_| rng.sample::<f64, _>(StandardNormal) * scale)
        .collect();
    Ok(HyperVector::from_vec_unchecked(components))
}

/// Circular convolution `p_j = sum_k v_k u_{(j-k) mod D}`, evaluated as
/// `F^-1(F(u) * F(v))`.
pub fn bind(u: &HyperVector, v: &HyperVector) -> Result<HyperVector, HdcError> {
    check_dims(u.dim(), v.dim())?;
    let fu = spectral::forward(u.as_slice());
    let fv = spectral::forward(v.as_slice());
    let product: Vec<Complex64> = fu.iter().zip(&fv).map(|(a, b)| a * b).collect();
    Ok(spectral::inverse_real_lossy(product))
}

/// Circular correlation `q_j = sum_k u_k p_{(j+k) mod D}`; approximately
/// recovers `v` from `p = bind(u, v)`.
pub fn unbind(p: &HyperVector, u: &HyperVector) -> Result<HyperVector, HdcError> {
    check_dims(p.dim(), u.dim())?;
    let fp = spectral::forward(p.as_slice());
    let fu = spectral::forward(u.as_slice());
    let product: Vec<Complex64> = fp.iter().zip(&fu).map(|(a, b)| a * b.conj()).collect();
    Ok(spectral::inverse_real_lossy(product))
}

/// Component-wise sum. No normalization is applied.
pub fn bundle(vs: &[HyperVector]) -> Result<HyperVector, HdcError> {
    let (first, rest) = vs.split_first().ok_or(HdcError::EmptyInput)?;
    let mut acc = first.components.clone();
    for v in rest {
        check_dims(first.dim(), v.dim())?;
        for (a, b) in acc.iter_mut().zip(&v.components) {
            *a += b;
        }
    }
    Ok(HyperVector::from_vec_unchecked(acc))
}

/// Cosine similarity together with a flag that is set when either operand
/// has zero norm (the value is then reported as 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub value: f64,
    pub degenerate: bool,
}

pub fn cosine_sim_flagged(u: &HyperVector, v: &HyperVector) -> Result<Similarity, HdcError> {
    check_dims(u.dim(), v.dim())?;
    Ok(cosine_slices(u.as_slice(), v.as_slice()))
}

/// Cosine similarity; 0 when either operand is the zero vector.
pub fn cosine_sim(u: &HyperVector, v: &HyperVector) -> Result<f64, HdcError> {
    cosine_sim_flagged(u, v).map(|s| s.value)
}

pub(crate) fn cosine_slices(u: &[f64], v: &[f64]) -> Similarity {
    let nu = dot(u, u).sqrt();
    let nv = dot(v, v).sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Similarity { value: 0.0, degenerate: true };
    }
    let value = (dot(u, v) / (nu * nv)).clamp(-1.0, 1.0);
    Similarity { value, degenerate: false }
}

/// Scales to unit norm. Vectors with norm at most [`NORM_EPSILON`] are
/// returned unchanged.
pub fn normalize(u: &HyperVector) -> HyperVector {
    let n = u.norm();
    if n > NORM_EPSILON {
        u.scale(1.0 / n)
    } else {
        u.clone()
    }
}

/// Base vector for fractional power encoding: a unit-magnitude,
/// Hermitian-symmetric spectrum stored as its phases.
#[derive(Debug, Clone, PartialEq)]
pub struct FpeBase {
    phases: Vec<f64>,
    sigma: f64,
}

impl FpeBase {
    /// Draws phases uniformly from `(-pi, pi)` for the positive frequencies
    /// and mirrors them with opposite sign. The DC bin and, for even `D`, the
    /// Nyquist bin get phase 0 so every real power stays real.
    pub fn new(gen: &SeededGenerator, label: &str, dim: usize, sigma: f64) -> Result<Self, HdcError> {
        if dim < 2 {
            return Err(HdcError::InvalidDimension { dim, min: 2 });
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(HdcError::InvalidBandwidth(sigma));
        }
        let mut rng = gen.rng(label);
        let mut phases = vec![0.0; dim];
        for k in 1..dim.div_ceil(2) {
            let theta = loop {
                let t = rng.random_range(-PI..PI);
                if t != -PI {
                    break t;
                }
            };
            phases[k] = theta;
            phases[dim - k] = -theta;
        }
        Ok(Self { phases, sigma })
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// The base vector itself, i.e. the encoding of `x = sigma`.
    pub fn base(&self) -> HyperVector {
        spectral::inverse_real_lossy(self.spectrum(self.sigma))
    }

    /// Spectrum of `F(base)^(x/sigma)`.
    pub(crate) fn spectrum(&self, x: f64) -> Vec<Complex64> {
        let t = x / self.sigma;
        self.phases
            .iter()
            .map(|&theta| Complex64::from_polar(1.0, theta * t))
            .collect()
    }

    /// `F^-1(F(base)^(x/sigma))`.
    pub fn encode(&self, x: f64) -> Result<HyperVector, HdcError> {
        fpe_encode(self, x)
    }
}

pub fn fpe_encode(base: &FpeBase, x: f64) -> Result<HyperVector, HdcError> {
    if !x.is_finite() {
        return Err(HdcError::InvalidValue(x));
    }
    spectral::inverse_real(base.spectrum(x))
}

fn check_dims(left: usize, right: usize) -> Result<(), HdcError> {
    if left != right {
        return Err(HdcError::ShapeMismatch { left, right });
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Thin wrappers over a per-thread FFT planner.
pub(crate) mod spectral {
    use super::*;

    thread_local! {
        static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
    }

    /// Unnormalized forward DFT of a real signal.
    pub fn forward(x: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = x.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(x.len()));
        fft.process(&mut buf);
        buf
    }

    /// Inverse DFT scaled by `1/D`.
    pub fn inverse(mut spectrum: Vec<Complex64>) -> Vec<Complex64> {
        let n = spectrum.len();
        let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n));
        fft.process(&mut spectrum);
        let scale = 1.0 / n as f64;
        for c in spectrum.iter_mut() {
            *c *= scale;
        }
        spectrum
    }

    /// Inverse DFT of a Hermitian spectrum; fails if the imaginary residue
    /// exceeds [`IMAGINARY_TOLERANCE`].
    pub fn inverse_real(spectrum: Vec<Complex64>) -> Result<HyperVector, HdcError> {
        let time = inverse(spectrum);
        let residue = time.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
        if residue > IMAGINARY_TOLERANCE {
            return Err(HdcError::ImaginaryResidue(residue));
        }
        Ok(HyperVector::from_vec_unchecked(time.into_iter().map(|c| c.re).collect()))
    }

    /// Inverse DFT keeping the real part. Only for spectra that are products
    /// of spectra of real vectors, which are Hermitian by construction.
    pub fn inverse_real_lossy(spectrum: Vec<Complex64>) -> HyperVector {
        let time = inverse(spectrum);
        HyperVector::from_vec_unchecked(time.into_iter().map(|c| c.re).collect())
    }

    /// Squared Euclidean norm of the real signal with the given spectrum
    /// (Parseval).
    pub fn norm_sq(spectrum: &[Complex64]) -> f64 {
        spectrum.iter().map(|c| c.norm_sqr()).sum::<f64>() / spectrum.len() as f64
    }

    /// Scales a spectrum so its signal has unit norm, with the same zero
    /// guard as [`normalize`].
    pub fn normalize_in_place(spectrum: &mut [Complex64]) {
        let n = norm_sq(spectrum).sqrt();
        if n > NORM_EPSILON {
            let s = 1.0 / n;
            for c in spectrum.iter_mut() {
                *c *= s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(v: &[f64]) -> HyperVector {
        HyperVector::new(v.to_vec()).unwrap()
    }

    fn direct_convolution(u: &[f64], v: &[f64]) -> Vec<f64> {
        let d = u.len();
        (0..d)
            .map(|j| (0..d).map(|k| v[k] * u[(j + d - k) % d]).sum())
            .collect()
    }

    #[test]
    fn random_hv_is_deterministic() {
        let gen = SeededGenerator::new(7);
        let a = random_hv(&gen, "atom:C", 10_000).unwrap();
        let b = random_hv(&gen, "atom:C", 10_000).unwrap();
        assert_eq!(a, b);
        let c = random_hv(&gen, "atom:N", 10_000).unwrap();
        assert_ne!(a, c);
        let other_seed = random_hv(&SeededGenerator::new(8), "atom:C", 10_000).unwrap();
        assert_ne!(a, other_seed);
    }

    #[test]
    fn random_hv_sample_statistics() {
        let d = 10_000;
        let x = random_hv(&SeededGenerator::new(7), "atom:C", d).unwrap();
        let mean = x.as_slice().iter().sum::<f64>() / d as f64;
        let var = x.as_slice().iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (d - 1) as f64;
        assert!(mean.abs() < 0.01, "mean {mean}");
        let expected = 1.0 / d as f64;
        assert!((var - expected).abs() < 0.2 * expected, "variance {var}");
        assert!((x.norm() - 1.0).abs() < 0.05);
    }

    #[test]
    fn random_hv_rejects_tiny_dims() {
        let gen = SeededGenerator::new(1);
        assert_eq!(
            random_hv(&gen, "x", 1),
            Err(HdcError::InvalidDimension { dim: 1, min: 2 })
        );
    }

    #[test]
    fn bind_impulse_is_identity() {
        let v = hv(&[1.5, -2.0, 3.25, 4.0]);
        let out = bind(&HyperVector::impulse(4), &v).unwrap();
        assert!(out.max_abs_diff(&v).unwrap() < 1e-12);
    }

    #[test]
    fn bind_shifted_impulse_rotates() {
        let (a, b, c, d) = (1.0, 2.0, 3.0, 4.0);
        let out = bind(&HyperVector::basis(4, 1), &hv(&[a, b, c, d])).unwrap();
        assert!(out.max_abs_diff(&hv(&[d, a, b, c])).unwrap() < 1e-12);
    }

    #[test]
    fn bind_matches_direct_sum_for_odd_lengths() {
        let gen = SeededGenerator::new(3);
        for d in [5, 7, 257] {
            let u = random_hv(&gen, "u", d).unwrap();
            let v = random_hv(&gen, "v", d).unwrap();
            let expected = hv(&direct_convolution(u.as_slice(), v.as_slice()));
            assert!(bind(&u, &v).unwrap().max_abs_diff(&expected).unwrap() < 1e-12);
        }
    }

    #[test]
    fn bind_is_commutative() {
        let gen = SeededGenerator::new(11);
        let u = random_hv(&gen, "u", 1024).unwrap();
        let v = random_hv(&gen, "v", 1024).unwrap();
        let uv = bind(&u, &v).unwrap();
        let vu = bind(&v, &u).unwrap();
        assert!(uv.max_abs_diff(&vu).unwrap() < 1e-10);
    }

    #[test]
    fn bind_rejects_shape_mismatch() {
        let err = bind(&HyperVector::zeros(4), &HyperVector::zeros(5)).unwrap_err();
        assert_eq!(err, HdcError::ShapeMismatch { left: 4, right: 5 });
        assert!(unbind(&HyperVector::zeros(4), &HyperVector::zeros(5)).is_err());
    }

    #[test]
    fn unbind_with_impulse_is_exact() {
        let gen = SeededGenerator::new(5);
        let v = random_hv(&gen, "v", 64).unwrap();
        let e0 = HyperVector::impulse(64);
        let out = unbind(&bind(&e0, &v).unwrap(), &e0).unwrap();
        assert!(out.max_abs_diff(&v).unwrap() < 1e-10);
    }

    #[test]
    fn unbind_recovers_operand_and_not_strangers() {
        // In Fourier space the recovered vector is |U|^2 V. With |U_k|^2
        // exponentially distributed, cos -> E[X] / sqrt(E[X^2]) = 1/sqrt(2).
        let d = 10_000;
        let mut sims = Vec::new();
        for trial in 0..50 {
            let gen = SeededGenerator::new(trial);
            let u = random_hv(&gen, "u", d).unwrap();
            let v = random_hv(&gen, "v", d).unwrap();
            let w = random_hv(&gen, "w", d).unwrap();
            let recovered = unbind(&bind(&u, &v).unwrap(), &u).unwrap();
            sims.push(cosine_sim(&recovered, &v).unwrap());
            assert!(cosine_sim(&recovered, &w).unwrap().abs() < 0.05);
        }
        let mean = sims.iter().sum::<f64>() / sims.len() as f64;
        assert!((mean - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.005, "{mean}");
        assert!(sims.iter().all(|&s| s > 0.65));
    }

    #[test]
    fn bundle_cases() {
        let gen = SeededGenerator::new(2);
        let x = random_hv(&gen, "x", 10_000).unwrap();
        let y = random_hv(&gen, "y", 10_000).unwrap();
        assert_eq!(bundle(std::slice::from_ref(&x)).unwrap(), x);
        assert!(bundle(&[x.clone(), -&x]).unwrap().is_zero());
        let s = bundle(&[x.clone(), y]).unwrap();
        assert!(cosine_sim(&s, &x).unwrap() > 0.3);
        assert_eq!(bundle(&[]), Err(HdcError::EmptyInput));
        assert!(matches!(
            bundle(&[x, HyperVector::zeros(3)]),
            Err(HdcError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn cosine_cases() {
        let x = hv(&[0.3, -1.0, 2.0]);
        assert!((cosine_sim(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cosine_sim(&HyperVector::basis(3, 0), &HyperVector::basis(3, 1)).unwrap(), 0.0);
        let z = HyperVector::zeros(3);
        let s = cosine_sim_flagged(&z, &z).unwrap();
        assert_eq!(s, Similarity { value: 0.0, degenerate: true });
        assert!(!cosine_sim_flagged(&x, &x).unwrap().degenerate);
    }

    #[test]
    fn normalize_cases() {
        let n = normalize(&hv(&[3.0, 4.0]));
        assert!(n.max_abs_diff(&hv(&[0.6, 0.8])).unwrap() < 1e-15);
        assert!(normalize(&HyperVector::zeros(5)).is_zero());
        let r = random_hv(&SeededGenerator::new(9), "r", 333).unwrap().scale(17.0);
        assert!((normalize(&r).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn new_rejects_non_finite() {
        assert_eq!(HyperVector::new(vec![1.0, f64::NAN]), Err(HdcError::NonFinite(1)));
        assert!(HyperVector::new(vec![]).is_err());
    }

    #[test]
    fn fpe_zero_is_impulse() {
        for d in [8, 9, 2048] {
            let base = FpeBase::new(&SeededGenerator::new(1), "fpe:size", d, 1.0).unwrap();
            let h0 = base.encode(0.0).unwrap();
            assert!(h0.max_abs_diff(&HyperVector::impulse(d)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn fpe_base_spectrum_is_unit_and_hermitian() {
        for d in [8, 9, 1024] {
            let base = FpeBase::new(&SeededGenerator::new(4), "fpe:diam", d, 2.5).unwrap();
            let phi = base.base();
            let spectrum = spectral::forward(phi.as_slice());
            for (k, c) in spectrum.iter().enumerate() {
                assert!((c.norm() - 1.0).abs() < 1e-9, "bin {k}: {}", c.norm());
                let mirror = spectrum[(d - k) % d];
                assert!((c - mirror.conj()).norm() < 1e-9);
            }
            assert!(phi.max_abs_diff(&base.encode(2.5).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn fpe_decays_and_is_self_similar() {
        let sigma = 1.0;
        let base = FpeBase::new(&SeededGenerator::new(42), "fpe:size", 2048, sigma).unwrap();
        let a = base.encode(3.7).unwrap();
        assert!((cosine_sim(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let far = cosine_sim(&base.encode(0.0).unwrap(), &base.encode(10.0 * sigma).unwrap()).unwrap();
        assert!(far.abs() < 0.1, "{far}");
        let near = cosine_sim(&base.encode(0.0).unwrap(), &base.encode(0.1 * sigma).unwrap()).unwrap();
        assert!(near > 0.9, "{near}");
    }

    #[test]
    fn fpe_rejects_bad_inputs() {
        let gen = SeededGenerator::new(0);
        assert_eq!(
            FpeBase::new(&gen, "f", 16, 0.0),
            Err(HdcError::InvalidBandwidth(0.0))
        );
        let base = FpeBase::new(&gen, "f", 16, 1.0).unwrap();
        assert!(matches!(base.encode(f64::INFINITY), Err(HdcError::InvalidValue(_))));
    }

    #[test]
    fn sub_seeds_differ_by_label_and_seed() {
        let g = SeededGenerator::new(42);
        assert_ne!(g.sub_seed("atom:C"), g.sub_seed("atom:N"));
        assert_ne!(g.sub_seed("atom:C"), SeededGenerator::new(43).sub_seed("atom:C"));
        assert_eq!(g.sub_seed("hs:0"), g.sub_seed("hs:0"));
    }

    #[test]
    fn spectral_normalize_matches_real_space() {
        let x = random_hv(&SeededGenerator::new(12), "x", 100).unwrap().scale(3.0);
        let mut s = spectral::forward(x.as_slice());
        spectral::normalize_in_place(&mut s);
        let back = spectral::inverse_real(s).unwrap();
        assert!(back.max_abs_diff(&normalize(&x)).unwrap() < 1e-12);
    }
}
