//! Truncated harmonic-oscillator basis numerics. This is the only module
//! that uses floating point.

use faer::prelude::*;
use faer::Mat;

use crate::error::{Error, Result};
use crate::ladder::NormalOrdered;
use crate::poly::PhasePoly;
use crate::scalar::binomial;
use crate::CycloScalar;

pub type C64 = c64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

fn to_c64(s: &CycloScalar) -> C64 {
    let z = s.to_complex();
    C64::new(z.re, z.im)
}

/// Dense `N×N` complex matrix in the number basis.
#[derive(Clone, Debug)]
pub struct FockMatrix {
    pub mat: Mat<C64>,
}

impl FockMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        Self { mat: Mat::from_fn(n, n, f) }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ONE } else { ZERO })
    }

    /// `a|n⟩ = √n |n−1⟩`.
    pub fn annihilation(n: usize) -> Self {
        Self::from_fn(n, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { ZERO })
    }

    pub fn creation(n: usize) -> Self {
        Self::annihilation(n).adjoint()
    }

    pub fn number(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { C64::new(i as f64, 0.0) } else { ZERO })
    }

    /// `x̂ = (a + a†)/√2`.
    pub fn position(n: usize) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::annihilation(n).add(&Self::creation(n)).scale(C64::new(s, 0.0))
    }

    /// `p̂ = −i(a − a†)/√2`.
    pub fn momentum(n: usize) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::annihilation(n).sub(&Self::creation(n)).scale(C64::new(0.0, -s))
    }

    /// Exact matrix elements of a normal-ordered ladder polynomial.
    pub fn from_normal_ordered(op: &NormalOrdered, n: usize) -> Self {
        let mut out = Self::zeros(n);
        for (&(m, k), c) in op.terms() {
            let c = to_c64(c);
            // ⟨j| a†^m a^k |i⟩ with j = i − k + m.
            for i in (k as usize)..n {
                let j = i - k as usize + m as usize;
                if j >= n {
                    continue;
                }
                let mut amp = 1.0;
                for t in (i - k as usize + 1)..=i {
                    amp *= t as f64;
                }
                for t in (i - k as usize + 1)..=j {
                    amp *= t as f64;
                }
                out.mat[(j, i)] += c * amp.sqrt();
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self { mat: self.mat.adjoint().to_owned() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { mat: &self.mat + &o.mat }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { mat: &self.mat - &o.mat }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { mat: &self.mat * &o.mat }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(self.dim(), |i, j| self.mat[(i, j)] * s)
    }

    pub fn crop(&self, n: usize) -> Self {
        Self { mat: self.mat.submatrix(0, 0, n, n).to_owned() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                m = m.max(self.mat[(i, j)].norm());
            }
        }
        m
    }

    /// Largest entry modulus of `self − o` on the top-left block that
    /// excludes the last `drop` rows and columns.
    pub fn interior_defect(&self, o: &Self, drop: usize) -> f64 {
        let n = self.dim().saturating_sub(drop);
        let mut m: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                m = m.max((self.mat[(i, j)] - o.mat[(i, j)]).norm());
            }
        }
        m
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        let n = self.dim();
        (0..n).map(|j| (0..n).map(|i| self.mat[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn solve(&self, rhs: &Self) -> Self {
        Self { mat: self.mat.partial_piv_lu().solve(&rhs.mat) }
    }
}

/// Weyl-ordered operator of `f`, each monomial `xᵐpⁿ` realized as
/// `2⁻ᵐ Σₖ C(m,k) x̂ᵏ p̂ⁿ x̂^{m−k}`.
///
/// Products are formed in a padded basis and cropped, so every returned
/// entry equals the matrix element of the untruncated operator.
pub fn weyl_quantize(f: &PhasePoly, n: usize) -> Result<FockMatrix> {
    let deg = f.degree().unwrap_or(0) as usize;
    if n < deg + 2 {
        return Err(Error::DimensionTooSmall { need: deg + 2, got: n });
    }
    let big = n + deg;
    let (x, p) = (FockMatrix::position(big), FockMatrix::momentum(big));
    let mut xp = vec![FockMatrix::identity(big)];
    let mut pp = vec![FockMatrix::identity(big)];
    for k in 1..=deg {
        xp.push(xp[k - 1].mul(&x));
        pp.push(pp[k - 1].mul(&p));
    }
    let mut out = FockMatrix::zeros(big);
    for (mono, c) in f.terms() {
        let (m, k) = (mono.x_deg as usize, mono.p_deg as usize);
        let c = to_c64(c) * 0.5f64.powi(m as i32);
        for j in 0..=m {
            let w: f64 = binomial(m as u32, j as u32).to_string().parse().unwrap();
            let t = xp[j].mul(&pp[k]).mul(&xp[m - j]);
            out = out.add(&t.scale(c * w));
        }
    }
    Ok(out.crop(n))
}

/// Interior defect of `Q(f)Q(g) − Q(f ⋆ g)`, dropping the top
/// `deg f + deg g` rows and columns where truncation bites.
pub fn quantization_consistency(f: &PhasePoly, g: &PhasePoly, n: usize) -> Result<f64> {
    let df = f.degree().unwrap_or(0) as usize;
    let dg = g.degree().unwrap_or(0) as usize;
    if n < df + dg + 4 {
        return Err(Error::DimensionTooSmall { need: df + dg + 4, got: n });
    }
    let lhs = weyl_quantize(f, n)?.mul(&weyl_quantize(g, n)?);
    let rhs = weyl_quantize(&crate::moyal::star(f, g), n)?;
    Ok(lhs.interior_defect(&rhs, df + dg))
}

/// All eigenvalues, sorted by real part.
pub fn eigenvalues(h: &FockMatrix) -> Result<Vec<C64>> {
    let mut ev = h.mat.eigenvalues().map_err(|e| Error::Eigen(format!("{e:?}")))?;
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(ev)
}

#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub n: usize,
    pub n_prime: usize,
    /// The `k` lowest by real part at dimension `n`.
    pub eigenvalues: Vec<C64>,
    /// Max `|Im λ|` over the reported levels.
    pub reality_defect: f64,
    /// `|λ(n) − λ(n′)|` per level.
    pub truncation_drift: Vec<f64>,
}

impl SpectralReport {
    pub fn max_drift(&self) -> f64 {
        self.truncation_drift.iter().cloned().fold(0.0, f64::max)
    }

    pub fn render(&self) -> String {
        let mut s = format!("N = {}, N' = {}\n", self.n, self.n_prime);
        for (k, (l, d)) in self.eigenvalues.iter().zip(&self.truncation_drift).enumerate() {
            s.push_str(&format!("{k:>3}  {:>22.14e}  {:>12.3e}  drift {:.3e}\n", l.re, l.im, d));
        }
        s.push_str(&format!("max |Im| = {:.3e}", self.reality_defect));
        s
    }
}

/// Lowest `k` levels of the Weyl-quantized symbol at `n` and `3n/2`.
pub fn spectrum(h: &PhasePoly, n: usize, k: usize) -> Result<SpectralReport> {
    spectrum_with(|dim| weyl_quantize(h, dim), n, k)
}

/// As [`spectrum`], for any builder of the truncated matrix.
pub fn spectrum_with(build: impl Fn(usize) -> Result<FockMatrix>, n: usize, k: usize) -> Result<SpectralReport> {
    if k > n / 4 {
        return Err(Error::PreconditionViolation(format!("k = {k} exceeds N/4 = {}", n / 4)));
    }
    let n_prime = 3 * n / 2;
    let small = eigenvalues(&build(n)?)?;
    let large = eigenvalues(&build(n_prime)?)?;
    let eigenvalues: Vec<C64> = small[..k].to_vec();
    let truncation_drift = eigenvalues.iter().zip(&large).map(|(a, b)| (a - b).norm()).collect();
    let reality_defect = eigenvalues.iter().map(|l| l.im.abs()).fold(0.0, f64::max);
    Ok(SpectralReport {
        n,
        n_prime,
        eigenvalues,
        reality_defect,
        truncation_drift,
    })
}

/// `exp(A)` by scaling and squaring with the degree-13 Padé approximant.
pub fn expm(a: &FockMatrix) -> Result<FockMatrix> {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    const THETA13: f64 = 5.371920351148152;
    let n = a.dim();
    let norm = a.norm_1();
    if !norm.is_finite() {
        return Err(Error::ExpNonConvergence);
    }
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a.scale(C64::new(0.5f64.powi(s), 0.0));
    let id = FockMatrix::identity(n);
    let a2 = a.mul(&a);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);
    let lin = |c: [f64; 4], m: [&FockMatrix; 4]| {
        let mut out = FockMatrix::zeros(n);
        for (ci, mi) in c.iter().zip(m) {
            out = out.add(&mi.scale(C64::new(*ci, 0.0)));
        }
        out
    };
    let u_inner = a6.mul(&lin([B[13], B[11], B[9], 0.0], [&a6, &a4, &a2, &id]));
    let u = a.mul(&u_inner.add(&lin([B[7], B[5], B[3], B[1]], [&a6, &a4, &a2, &id])));
    let v_inner = a6.mul(&lin([B[12], B[10], B[8], 0.0], [&a6, &a4, &a2, &id]));
    let v = v_inner.add(&lin([B[6], B[4], B[2], B[0]], [&a6, &a4, &a2, &id]));
    let mut r = v.sub(&u).solve(&v.add(&u));
    for _ in 0..s {
        r = r.mul(&r);
    }
    if !r.max_abs().is_finite() {
        return Err(Error::ExpNonConvergence);
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct TransformReport {
    pub n: usize,
    /// Interior defect of `η̂ a η̂⁻¹ − i a†` from the truncated exponential.
    pub ladder_defect: f64,
    /// Interior Hermiticity defect of `η̂ H_m η̂⁻¹`.
    pub hm_hermiticity_defect: f64,
    /// Same for the generalized lattice Reggeon Hamiltonian.
    pub sslr_hermiticity_defect: f64,
    /// Largest entry of the truncated `η̂`; its growth with `N` shows the
    /// operator is unbounded.
    pub eta_max_entry: f64,
    /// `‖η̂ − η̂†‖`: the exponent is Hermitian, so `η̂` is Hermitian, not unitary.
    pub eta_hermiticity_defect: f64,
    /// Coefficients `(u, v)` of `η̂ a η̂⁻¹ = u a + v a†` from the adjoint
    /// action on the two-dimensional ladder span, summed exactly.
    pub algebraic_image: (C64, C64),
}

/// `H_m = Δ/2(p̂² + x̂²) − i g (−1)^m x̂^{2m+1}`.
pub fn h_m(m: u32, delta: f64, g: f64, n: usize) -> Result<FockMatrix> {
    let quad = weyl_quantize(&(&PhasePoly::x().pow(2) + &PhasePoly::p().pow(2)), n)?;
    let odd = weyl_quantize(&PhasePoly::x().pow(2 * m + 1), n)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(quad.scale(C64::new(delta / 2.0, 0.0)).add(&odd.scale(C64::new(0.0, -g * sign))))
}

/// `Δ a†a + (i g/2) a†(a + a†)^{2m+1} a`.
pub fn h_sslr_m(m: u32, delta: f64, g: f64, n: usize) -> FockMatrix {
    let (ad, an) = (NormalOrdered::adag(), NormalOrdered::a());
    let cubic = &(&ad * &(&an + &ad).pow(2 * m + 1)) * &an;
    let num = FockMatrix::from_normal_ordered(&(&ad * &an), n);
    let pert = FockMatrix::from_normal_ordered(&cubic, n);
    num.scale(C64::new(delta, 0.0)).add(&pert.scale(C64::new(0.0, g / 2.0)))
}

/// The squeeze `η̂ = exp((iπ/4)(aa − a†a†))` built by truncated matrix
/// exponential, checked on the ladder operators and on `H_m`.
pub fn reality_transform_check(m: u32, delta: f64, g: f64, n: usize) -> Result<TransformReport> {
    if n < 16 {
        return Err(Error::DimensionTooSmall { need: 16, got: n });
    }
    let (a, ad) = (FockMatrix::annihilation(n), FockMatrix::creation(n));
    let gen = a.mul(&a).sub(&ad.mul(&ad)).scale(I * std::f64::consts::FRAC_PI_4);
    let eta = expm(&gen)?;
    let eta_inv = expm(&gen.scale(-ONE))?;
    let conj = |h: &FockMatrix| eta.mul(h).mul(&eta_inv);
    let drop = (2 * m as usize + 1) + 2;
    let ladder_defect = conj(&a).interior_defect(&ad.scale(I), 3);
    let herm = |h: FockMatrix| {
        let t = conj(&h);
        t.interior_defect(&t.adjoint(), drop)
    };
    Ok(TransformReport {
        n,
        ladder_defect,
        hm_hermiticity_defect: herm(h_m(m, delta, g, n)?),
        sslr_hermiticity_defect: herm(h_sslr_m(m, delta, g, n)),
        eta_max_entry: eta.max_abs(),
        eta_hermiticity_defect: eta.interior_defect(&eta.adjoint(), 0),
        algebraic_image: squeeze_adjoint_action(),
    })
}

/// `e^X a e^{−X}` for `X = (iπ/4)(aa − a†a†)` via `Σ ad_Xᵏ(a)/k!`.
///
/// `ad_X` maps `span{a, a†}` into itself; its matrix is read off from exact
/// commutators and the series is summed in floating point.
pub fn squeeze_adjoint_action() -> (C64, C64) {
    let (ad, an) = (NormalOrdered::adag(), NormalOrdered::a());
    let x = (&(&an * &an) - &(&ad * &ad)).scale(&(CycloScalar::i() * CycloScalar::ratio(1, 4)));
    let comm = |y: &NormalOrdered| &(&x * y) - &(y * &x);
    // Commutators carry one factor of π each.
    let pi = std::f64::consts::PI;
    let col = |img: NormalOrdered| (to_c64(&img.coeff(0, 1)) * pi, to_c64(&img.coeff(1, 0)) * pi);
    let (m00, m10) = col(comm(&an));
    let (m01, m11) = col(comm(&ad));
    let (mut u, mut v) = (ONE, ZERO);
    let (mut tu, mut tv) = (ONE, ZERO);
    for k in 1..80 {
        let nu = (m00 * tu + m01 * tv) / k as f64;
        let nv = (m10 * tu + m11 * tv) / k as f64;
        tu = nu;
        tv = nv;
        u += tu;
        v += tv;
    }
    (u, v)
}

#[derive(Clone, Debug)]
pub struct ParityReport {
    pub n: usize,
    /// Phase `φ` with `D₁ a D₁⁻¹ = φ a`, `D₁ = diag(iⁿ)`.
    pub d1_phase_on_a: C64,
    /// Phase for `D₂ = diag((−1)ⁿ)`.
    pub d2_phase_on_a: C64,
    /// `‖D H D⁻¹ − H†‖` for the lattice Reggeon Hamiltonian, each candidate.
    pub d1_sslr_defect: f64,
    pub d2_sslr_defect: f64,
}

impl ParityReport {
    pub fn d1_gives_minus_a(&self) -> bool {
        (self.d1_phase_on_a + ONE).norm() < 1e-12
    }

    pub fn d2_gives_minus_a(&self) -> bool {
        (self.d2_phase_on_a + ONE).norm() < 1e-12
    }
}

/// Compare the literal `exp(iπ/2 a†a) = diag(iⁿ)` with `diag((−1)ⁿ)` as
/// the operator that flips the sign of `a` and maps `H` to `H†`.
pub fn parity_resolution(n: usize) -> Result<ParityReport> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { need: 2, got: n });
    }
    let phase = |k: usize, w: C64| (0..k).fold(ONE, |acc, _| acc * w);
    let d1 = FockMatrix::from_fn(n, |i, j| if i == j { phase(i % 4, I) } else { ZERO });
    let d2 = FockMatrix::from_fn(n, |i, j| if i == j { phase(i % 2, -ONE) } else { ZERO });
    let a = FockMatrix::annihilation(n);
    let h = h_sslr_m(0, 1.0, 0.1 * std::f64::consts::SQRT_2 * 2.0, n);
    let ratio = |d: &FockMatrix| {
        let t = d.mul(&a).mul(&d.adjoint());
        t.get(0, 1) / a.get(0, 1)
    };
    let defect = |d: &FockMatrix| {
        let t = d.mul(&h).mul(&d.adjoint());
        t.interior_defect(&h.adjoint(), 0)
    };
    Ok(ParityReport {
        n,
        d1_phase_on_a: ratio(&d1),
        d2_phase_on_a: ratio(&d2),
        d1_sslr_defect: defect(&d1),
        d2_sslr_defect: defect(&d2),
    })
}
