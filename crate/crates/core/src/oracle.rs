//! Exact quantum propagation in finite or truncated Hilbert spaces, used as
//! an independent check on the classical side.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::drive::{Drive, DriveParams, SignConvention};
use crate::dynamics::{integrate, IntegrationOptions};
use crate::error::{Error, Result};
use crate::geometry::{Manifold, PhasePoint};
use crate::phases::{phase_breakdown, wrap_phase};

/// Smallest truncation used by the automatic policy.
pub const MIN_TRUNCATION: usize = 16;
/// Largest truncation the oracle will build.
pub const MAX_TRUNCATION: usize = 512;
/// Coherent-state probability mass allowed beyond the truncation.
pub const TAIL_TOLERANCE: f64 = 1e-12;

type CMatrix = DMatrix<Complex64>;
type CVector = DVector<Complex64>;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Highest basis index kept for the PseudoSphere and Plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    #[default]
    Auto,
    Fixed(usize),
}

impl FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Truncation::Auto);
        }
        s.parse::<usize>()
            .map(Truncation::Fixed)
            .map_err(|_| Error::Domain(format!("truncation must be an integer or \"auto\", got {s:?}")))
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Auto => f.write_str("auto"),
            Truncation::Fixed(n) => write!(f, "{n}"),
        }
    }
}

/// How the SU(1,1) generators are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    /// Directly from the (k, m) ladder.
    Ladder,
    /// From truncated boson operators, K+ = a†²/2 on the even (k = 1/4) or odd (k = 3/4) sector.
    Photon,
}

/// Generator matrices in the standard basis of one family.
///
/// Sphere: basis m = −J..J, `raising` = J+, `lowering` = J−, `diagonal` = Jz.
/// PseudoSphere: basis m = 0..N, K+, K−, K0 = diag(k + m).
/// Plane: Fock n = 0..N, a†, a, a†a.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub manifold: Manifold,
    /// Basis labels: m for the Sphere, m or n otherwise.
    pub labels: Vec<f64>,
    pub raising: CMatrix,
    pub lowering: CMatrix,
    pub diagonal: CMatrix,
}

impl GeneratorSet {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Highest basis index: 2J for the Sphere, N otherwise.
    pub fn truncation(&self) -> usize {
        self.dim() - 1
    }

    /// Jx or (K+ + K−)/2 or (a + a†)/2.
    pub fn x(&self) -> CMatrix {
        (&self.raising + &self.lowering) * Complex64::new(0.5, 0.0)
    }

    /// Jy or (K+ − K−)/(2i) or (a† − a)/(2i).
    pub fn y(&self) -> CMatrix {
        (&self.raising - &self.lowering) * Complex64::new(0.0, -0.5)
    }
}

fn ladder(dim: usize, coeff: impl Fn(usize) -> f64) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim.saturating_sub(1) {
        m[(i + 1, i)] = Complex64::new(coeff(i), 0.0);
    }
    m
}

fn check_truncation(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Truncation(format!("truncation N = {n} is too small (need N ≥ 2)")));
    }
    if n > MAX_TRUNCATION {
        return Err(Error::Truncation(format!("truncation N = {n} exceeds the cap {MAX_TRUNCATION}")));
    }
    Ok(())
}

/// Generators for `manifold`; the Sphere ignores `truncation`.
pub fn build_generators(manifold: Manifold, truncation: usize) -> Result<GeneratorSet> {
    match manifold {
        Manifold::Sphere { twice_j } => {
            let j = twice_j as f64 / 2.0;
            let dim = twice_j as usize + 1;
            let labels: Vec<f64> = (0..dim).map(|i| i as f64 - j).collect();
            let raising = ladder(dim, |i| {
                let m = labels[i];
                ((j - m) * (j + m + 1.0)).sqrt()
            });
            let lowering = raising.adjoint();
            let diagonal = CMatrix::from_diagonal(&CVector::from_iterator(
                dim,
                labels.iter().map(|&m| Complex64::new(m, 0.0)),
            ));
            Ok(GeneratorSet { manifold, labels, raising, lowering, diagonal })
        }
        Manifold::PseudoSphere { k } => {
            check_truncation(truncation)?;
            let dim = truncation + 1;
            let raising = ladder(dim, |m| ((m as f64 + 1.0) * (m as f64 + 2.0 * k)).sqrt());
            let lowering = raising.adjoint();
            let diagonal = CMatrix::from_diagonal(&CVector::from_iterator(
                dim,
                (0..dim).map(|m| Complex64::new(k + m as f64, 0.0)),
            ));
            let labels = (0..dim).map(|m| m as f64).collect();
            Ok(GeneratorSet { manifold, labels, raising, lowering, diagonal })
        }
        Manifold::Plane => {
            check_truncation(truncation)?;
            let dim = truncation + 1;
            let raising = ladder(dim, |n| (n as f64 + 1.0).sqrt());
            let lowering = raising.adjoint();
            let diagonal = CMatrix::from_diagonal(&CVector::from_iterator(
                dim,
                (0..dim).map(|n| Complex64::new(n as f64, 0.0)),
            ));
            let labels = (0..dim).map(|n| n as f64).collect();
            Ok(GeneratorSet { manifold, labels, raising, lowering, diagonal })
        }
    }
}

/// SU(1,1) generators built from boson operators: K+ = a†²/2, K0 = (a†a + 1/2)/2,
/// restricted to the even (k = 1/4) or odd (k = 3/4) photon-number sector.
pub fn build_generators_photon(k: f64, truncation: usize) -> Result<GeneratorSet> {
    check_truncation(truncation)?;
    let parity = if k == 0.25 {
        0
    } else if k == 0.75 {
        1
    } else {
        return Err(Error::Domain(format!("the photon realization exists only for k = 1/4 or 3/4, got {k}")));
    };
    let fock = build_generators(Manifold::Plane, 2 * truncation + parity + 1)?;
    let a_dag = &fock.raising;
    let k_plus_full = a_dag * a_dag * Complex64::new(0.5, 0.0);
    let k0_full = (&fock.diagonal + CMatrix::identity(fock.dim(), fock.dim()) * Complex64::new(0.5, 0.0))
        * Complex64::new(0.5, 0.0);
    let dim = truncation + 1;
    let index = |m: usize| 2 * m + parity;
    let project = |full: &CMatrix| CMatrix::from_fn(dim, dim, |r, c| full[(index(r), index(c))]);
    let raising = project(&k_plus_full);
    let lowering = raising.adjoint();
    let diagonal = project(&k0_full);
    Ok(GeneratorSet {
        manifold: Manifold::pseudo_sphere(k)?,
        labels: (0..dim).map(|m| m as f64).collect(),
        raising,
        lowering,
        diagonal,
    })
}

/// Generators built the requested way.
pub fn build_generators_with(
    manifold: Manifold,
    truncation: usize,
    realization: Realization,
) -> Result<GeneratorSet> {
    match (manifold, realization) {
        (Manifold::PseudoSphere { k }, Realization::Photon) => build_generators_photon(k, truncation),
        (_, Realization::Ladder) => build_generators(manifold, truncation),
        (m, Realization::Photon) => Err(Error::Domain(format!(
            "the photon realization applies to the pseudosphere, not the {}",
            m.name()
        ))),
    }
}

/// A normalized state over a [`GeneratorSet`] basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    pub amplitudes: CVector,
}

impl QuantumState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// ⟨self|op|self⟩.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        self.amplitudes.dotc(&(op * &self.amplitudes))
    }

    pub fn basis(dim: usize, index: usize) -> QuantumState {
        let mut amplitudes = CVector::zeros(dim);
        amplitudes[index] = ONE;
        QuantumState { amplitudes }
    }
}

/// Unnormalized-series coefficients c_n with |z⟩ ∝ Σ c_n |n⟩, together with
/// the normalization prefactor.
fn series_step(manifold: Manifold, n: usize, z: Complex64) -> Complex64 {
    let n_f = n as f64;
    match manifold {
        Manifold::Sphere { twice_j } => z * ((twice_j as f64 - n_f + 1.0) / n_f).sqrt(),
        Manifold::PseudoSphere { k } => z * ((n_f - 1.0 + 2.0 * k) / n_f).sqrt(),
        Manifold::Plane => z / n_f.sqrt(),
    }
}

fn prefactor(manifold: Manifold, z: Complex64) -> f64 {
    let n2 = z.norm_sqr();
    match manifold {
        Manifold::Sphere { twice_j } => (1.0 + n2).powf(-(twice_j as f64) / 2.0),
        Manifold::PseudoSphere { k } => (1.0 - n2).powf(k),
        Manifold::Plane => (-0.5 * n2).exp(),
    }
}

/// Probability mass of |z⟩ above basis index `truncation`.
pub fn coherent_tail(manifold: Manifold, z: Complex64, truncation: usize) -> Result<f64> {
    manifold.check_z(z)?;
    if let Manifold::Sphere { twice_j } = manifold {
        if truncation >= twice_j as usize {
            return Ok(0.0);
        }
    }
    let pre = prefactor(manifold, z);
    let mut c = Complex64::new(pre, 0.0);
    for n in 1..=truncation {
        c *= series_step(manifold, n, z);
    }
    let mut tail = 0.0;
    let mut n = truncation + 1;
    loop {
        if let Manifold::Sphere { twice_j } = manifold {
            if n > twice_j as usize {
                break;
            }
        }
        c *= series_step(manifold, n, z);
        let term = c.norm_sqr();
        tail += term;
        // the ratio of successive terms approaches |z|² (< 1 on the pseudosphere)
        let ratio = series_step(manifold, n + 1, z).norm_sqr();
        if ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-3 * TAIL_TOLERANCE * 1e-3 {
            break;
        }
        if term == 0.0 || n > 1_000_000 {
            break;
        }
        n += 1;
    }
    Ok(tail)
}

/// Smallest N ≥ 16 whose coherent-state tail at |z| = `z_max` is below 1e−12.
pub fn auto_truncation(manifold: Manifold, z_max: f64) -> Result<usize> {
    if let Manifold::Sphere { twice_j } = manifold {
        return Ok(twice_j as usize);
    }
    let z = Complex64::new(z_max, 0.0);
    for n in MIN_TRUNCATION..=MAX_TRUNCATION {
        if coherent_tail(manifold, z, n)? < TAIL_TOLERANCE {
            return Ok(n);
        }
    }
    Err(Error::Truncation(format!(
        "|z| = {z_max} needs a truncation above the cap {MAX_TRUNCATION}"
    )))
}

/// Resolves `truncation` for states reaching at most |z| = `z_max`.
pub fn resolve_truncation(manifold: Manifold, truncation: Truncation, z_max: f64) -> Result<usize> {
    match (manifold, truncation) {
        (Manifold::Sphere { twice_j }, _) => Ok(twice_j as usize),
        (_, Truncation::Auto) => auto_truncation(manifold, z_max),
        (_, Truncation::Fixed(n)) => {
            check_truncation(n)?;
            Ok(n)
        }
    }
}

/// The normalized coherent state |z⟩ in the basis of `manifold` up to `truncation`.
pub fn coherent_vector(manifold: Manifold, z: Complex64, truncation: usize) -> Result<QuantumState> {
    manifold.check_z(z)?;
    let dim = match manifold {
        Manifold::Sphere { twice_j } => twice_j as usize + 1,
        _ => {
            check_truncation(truncation)?;
            truncation + 1
        }
    };
    let tail = coherent_tail(manifold, z, dim - 1)?;
    if tail >= TAIL_TOLERANCE {
        return Err(Error::Truncation(format!(
            "coherent state at |z| = {} leaves {tail:e} beyond N = {}; increase the truncation",
            z.norm(),
            dim - 1
        )));
    }
    let mut amplitudes = CVector::zeros(dim);
    let mut c = Complex64::new(prefactor(manifold, z), 0.0);
    amplitudes[0] = c;
    for n in 1..dim {
        c *= series_step(manifold, n, z);
        amplitudes[n] = c;
    }
    Ok(QuantumState { amplitudes })
}

/// Ĥ(t) in the basis of `gen`, including the energy offset.
pub fn hamiltonian_at(gen: &GeneratorSet, p: &DriveParams, t: f64) -> Result<CMatrix> {
    p.check_manifold(gen.manifold)?;
    let dim = gen.dim();
    let hbar = p.hbar;
    let mut h = match p.drive {
        Drive::Su2(d) => {
            // B⊥·J⊥ = (B0/2)(e^{−iωt}J+ + e^{iωt}J−)
            let rot = Complex64::from_polar(1.0, d.omega * t);
            let transverse = (&gen.raising * rot.conj() + &gen.lowering * rot) * Complex64::new(0.5 * d.b0, 0.0);
            (transverse + &gen.diagonal * Complex64::new(d.b, 0.0)) * Complex64::new(-d.mu, 0.0)
        }
        Drive::Su11(d) => {
            let rot = match d.convention {
                SignConvention::Rederived => Complex64::from_polar(1.0, d.omega * t),
                SignConvention::Paper => Complex64::from_polar(1.0, -d.omega * t),
            };
            let pump = (&gen.raising * rot + &gen.lowering * rot.conj()) * Complex64::new(d.kappa, 0.0);
            (&gen.diagonal * Complex64::new(d.omega0, 0.0) + pump) * Complex64::new(2.0 * hbar, 0.0)
        }
        Drive::Boson(d) => {
            let rot = Complex64::from_polar(1.0, d.omega * t);
            let drive = (&gen.raising * rot.conj() + &gen.lowering * rot) * Complex64::new(d.e, 0.0);
            (&gen.diagonal * Complex64::new(d.omega0, 0.0) + drive) * Complex64::new(hbar, 0.0)
        }
    };
    for i in 0..dim {
        h[(i, i)] += p.energy_offset;
    }
    Ok(h)
}

/// Diagonal generator g of the drive's rotation, Ĥ(t) = e^{−iωtg} Ĥ(0) e^{iωtg}.
fn rotation_generator(gen: &GeneratorSet, p: &DriveParams) -> Vec<f64> {
    let sign = match p.drive {
        Drive::Su11(d) if d.convention == SignConvention::Rederived => -1.0,
        _ => 1.0,
    };
    gen.labels.iter().map(|&l| sign * l).collect()
}

/// ψ(T) from ψ(0) by `steps` midpoint-exponential steps.
///
/// Each step applies exp(−iĤ(t + δt/2)δt/ℏ). Since every drive here is a
/// rotation of a fixed operator, Ĥ(0) is diagonalized once and each step is
/// conjugated by the diagonal rotation.
pub fn propagate(
    gen: &GeneratorSet,
    p: &DriveParams,
    psi0: &QuantumState,
    t_final: f64,
    steps: usize,
) -> Result<QuantumState> {
    p.validate()?;
    if steps == 0 {
        return Err(Error::Domain("propagation needs at least one step".into()));
    }
    if !t_final.is_finite() {
        return Err(Error::Domain(format!("propagation time must be finite, got {t_final}")));
    }
    if psi0.amplitudes.len() != gen.dim() {
        return Err(Error::Domain(format!(
            "state dimension {} does not match basis dimension {}",
            psi0.amplitudes.len(),
            gen.dim()
        )));
    }
    let h0 = hamiltonian_at(gen, p, 0.0)?;
    let dt = t_final / steps as f64;
    let eig = SymmetricEigen::new(h0);
    let phases = CVector::from_iterator(
        gen.dim(),
        eig.eigenvalues.iter().map(|&e| Complex64::from_polar(1.0, -e * dt / p.hbar)),
    );
    let v = &eig.eigenvectors;
    let step = v * CMatrix::from_diagonal(&phases) * v.adjoint();

    let g = rotation_generator(gen, p);
    let omega = p.omega();
    let norm0 = psi0.norm();
    let mut psi = psi0.amplitudes.clone();
    for s in 0..steps {
        let tm = (s as f64 + 0.5) * dt;
        // R(t)† ψ, then the static step, then R(t)
        for (a, &gi) in psi.iter_mut().zip(&g) {
            *a *= Complex64::from_polar(1.0, omega * tm * gi);
        }
        psi = &step * &psi;
        for (a, &gi) in psi.iter_mut().zip(&g) {
            *a *= Complex64::from_polar(1.0, -omega * tm * gi);
        }
    }
    let drift = (psi.norm() - norm0).abs();
    if drift > 1e-8 {
        return Err(Error::Propagation(format!("norm drifted by {drift:e}")));
    }
    Ok(QuantumState { amplitudes: psi })
}

fn orbit_z_max(manifold: Manifold, z0: Complex64, p: &DriveParams, t_final: f64) -> f64 {
    let fallback = z0.norm();
    let Ok(start) = PhasePoint::from_z(manifold, z0) else {
        return fallback;
    };
    let opts = IntegrationOptions { samples_per_period: 256, ..Default::default() };
    match integrate(manifold, &start, p, t_final.abs(), &opts) {
        Ok(traj) => traj.samples.iter().map(|s| s.point.z().norm()).fold(fallback, f64::max),
        Err(_) => fallback,
    }
}

/// Builds the basis, the initial coherent state and the propagated state.
fn evolve(
    manifold: Manifold,
    z0: Complex64,
    p: &DriveParams,
    t_final: f64,
    truncation: Truncation,
    steps: usize,
) -> Result<(GeneratorSet, QuantumState, QuantumState)> {
    p.check_manifold(manifold)?;
    manifold.check_z(z0)?;
    let z_max = match truncation {
        Truncation::Auto => orbit_z_max(manifold, z0, p, t_final),
        Truncation::Fixed(_) => z0.norm(),
    };
    let n = resolve_truncation(manifold, truncation, z_max)?;
    let gen = build_generators(manifold, n)?;
    let psi0 = coherent_vector(manifold, z0, n)?;
    let psi = propagate(&gen, p, &psi0, t_final, steps)?;
    Ok((gen, psi0, psi))
}

/// ⟨z0|U(T)|z0⟩.
pub fn return_amplitude(
    manifold: Manifold,
    z0: Complex64,
    p: &DriveParams,
    t_final: f64,
    truncation: Truncation,
    steps: usize,
) -> Result<Complex64> {
    let (_, psi0, psi) = evolve(manifold, z0, p, t_final, truncation, steps)?;
    Ok(psi0.inner(&psi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalReport {
    pub overlap_modulus: f64,
    pub overlap_arg: f64,
    pub gamma: f64,
    pub delta: f64,
    /// arg⟨z0|U(T)|z0⟩ − (Γ − Δ)/ℏ, wrapped into (−π, π].
    pub phase_mismatch: f64,
    pub truncation: usize,
}

/// Compares the exact return amplitude with exp(i(Γ − Δ)/ℏ) from the classical orbit.
pub fn semiclassical_check(
    manifold: Manifold,
    z0: Complex64,
    p: &DriveParams,
    t_final: f64,
    truncation: Truncation,
    steps: usize,
) -> Result<SemiclassicalReport> {
    let (gen, psi0, psi) = evolve(manifold, z0, p, t_final, truncation, steps)?;
    let k = psi0.inner(&psi);
    let start = PhasePoint::from_z(manifold, z0)?;
    let opts = IntegrationOptions::default().with_period(t_final);
    let traj = integrate(manifold, &start, p, t_final, &opts)?;
    let b = phase_breakdown(&traj, p, None)?;
    Ok(SemiclassicalReport {
        overlap_modulus: k.norm(),
        overlap_arg: k.arg(),
        gamma: b.gamma_numeric,
        delta: b.delta_numeric,
        phase_mismatch: wrap_phase(k.arg() - b.total_phi),
        truncation: gen.truncation(),
    })
}

/// 1 − |⟨z(T)|ψ(T)⟩| where z(T) is the classical endpoint and ψ(T) the propagated |z0⟩.
pub fn coherence_defect(
    manifold: Manifold,
    z0: Complex64,
    p: &DriveParams,
    t_final: f64,
    truncation: Truncation,
    steps: usize,
) -> Result<f64> {
    let (gen, _, psi) = evolve(manifold, z0, p, t_final, truncation, steps)?;
    let start = PhasePoint::from_z(manifold, z0)?;
    let traj = integrate(manifold, &start, p, t_final, &IntegrationOptions::default())?;
    let z_end = traj.samples[traj.samples.len() - 1].point.z();
    let target = coherent_vector(manifold, z_end, gen.truncation())?;
    Ok(1.0 - target.inner(&psi).norm())
}

/// Normalized SU(1,1) matrix elements ⟨z1|K±,K0|z2⟩/⟨z1|z2⟩ in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Elements {
    pub plus: Complex64,
    pub minus: Complex64,
    pub zero: Complex64,
}

impl Su11Elements {
    pub fn max_difference(&self, other: &Su11Elements) -> f64 {
        (self.plus - other.plus)
            .norm()
            .max((self.minus - other.minus).norm())
            .max((self.zero - other.zero).norm())
    }
}

pub fn su11_matrix_elements(z1: Complex64, z2: Complex64, k: f64) -> Result<Su11Elements> {
    let m = Manifold::pseudo_sphere(k)?;
    m.check_z(z1)?;
    m.check_z(z2)?;
    let den = ONE - z1.conj() * z2;
    Ok(Su11Elements {
        plus: 2.0 * k * z1.conj() / den,
        minus: 2.0 * k * z2 / den,
        zero: k * (ONE + z1.conj() * z2) / den,
    })
}

/// The same matrix elements from truncated vectors and matrices.
///
/// Starts from the truncation that meets the tail tolerance and adds levels
/// until the normalized elements stop changing, since dividing by a small
/// overlap ⟨z1|z2⟩ amplifies the truncation error.
pub fn su11_matrix_elements_numeric(
    z1: Complex64,
    z2: Complex64,
    k: f64,
    truncation: Truncation,
) -> Result<Su11Elements> {
    let m = Manifold::pseudo_sphere(k)?;
    let mut n = resolve_truncation(m, truncation, z1.norm().max(z2.norm()))?;
    let mut current = truncated_elements(m, z1, z2, n)?;
    if let Truncation::Fixed(_) = truncation {
        return Ok(current);
    }
    while n + 16 < MAX_TRUNCATION {
        n += 16;
        let next = truncated_elements(m, z1, z2, n)?;
        let change = current.max_difference(&next);
        current = next;
        if change < 1e-14 {
            break;
        }
    }
    Ok(current)
}

fn truncated_elements(m: Manifold, z1: Complex64, z2: Complex64, n: usize) -> Result<Su11Elements> {
    // one level of headroom so K+ acting on the right does not fall off the edge
    let gen = build_generators(m, n + 1)?;
    let v1 = coherent_vector(m, z1, n + 1)?;
    let v2 = coherent_vector(m, z2, n + 1)?;
    let overlap = v1.inner(&v2);
    let element = |op: &CMatrix| v1.amplitudes.dotc(&(op * &v2.amplitudes)) / overlap;
    Ok(Su11Elements {
        plus: element(&gen.raising),
        minus: element(&gen.lowering),
        zero: element(&gen.diagonal),
    })
}

/// Largest entry of |A − B|.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Commutator [A, B].
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}
