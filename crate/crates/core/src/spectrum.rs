//! Quantized wave vectors of the billiard and the resulting exact spectrum.

use std::f64::consts::PI;
use std::fmt;

use crate::bloch::{dispersion, KPoint};
use crate::edge::{edge_labels, EdgeLabel};
use crate::error::{Error, Result};

/// Tolerance used to merge energies into multiplicity classes.
pub const LEVEL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Band {
    Plus,
    Minus,
}

impl Band {
    pub fn sign(self) -> f64 {
        match self {
            Band::Plus => 1.0,
            Band::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Band::Plus => '+',
            Band::Minus => '-',
        }
    }
}

/// Real (`One`) or imaginary (`Two`) part of the complex Bloch superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub fn index(self) -> u8 {
        match self {
            Branch::One => 1,
            Branch::Two => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub q: i64,
    pub p: i64,
    pub band: Band,
    pub branch: Branch,
}

impl QuantumNumbers {
    /// Validated constructor: `(q, p)` must be in the fundamental sector and
    /// branch 1 does not exist on the axis `q = p`.
    pub fn new(q: i64, p: i64, band: Band, branch: Branch, n: usize) -> Result<Self> {
        if !in_sector(q, p, n) || (branch == Branch::One && q == p) {
            return Err(Error::Domain { q, p, n });
        }
        Ok(QuantumNumbers { q, p, band, branch })
    }

    pub fn energy(&self, n: usize) -> f64 {
        self.band.sign() * dispersion(quantized_k(self.q, self.p, n))
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.q, self.p, self.band.symbol(), self.branch.index())
    }
}

/// `1 <= p <= floor((N-1)/2)` and `p <= q <= N-1-p`.
pub fn in_sector(q: i64, p: i64, n: usize) -> bool {
    let n = n as i64;
    p >= 1 && p <= (n - 1) / 2 && q >= p && q <= n - 1 - p
}

pub fn quantized_k(q: i64, p: i64, n: usize) -> KPoint {
    let scale = 2.0 * PI / (3.0 * n as f64);
    KPoint::new(scale * (2 * q + p) as f64, scale * (2 * p + q) as f64)
}

/// `θ1 = (N/2)(k1 - 2k2)`, `θ2 = (N/2)(k2 - 2k1)`, `θ3 = -θ1 - θ2`.
pub fn thetas(k: KPoint, n: usize) -> [f64; 3] {
    let half = 0.5 * n as f64;
    let t1 = half * (k.k1 - 2.0 * k.k2);
    let t2 = half * (k.k2 - 2.0 * k.k1);
    [t1, t2, -t1 - t2]
}

/// Largest violation of the six-sine closure condition on the three nodal
/// lines of a billiard of size `n`.
///
/// The six wave vectors are `k, σk, Rk, σRk, R²k, σR²k` (σ the α-preserving
/// mirror) with phases `+α` on the unmirrored and `-α` on the mirrored ones.
/// The sum is linear in `(cos α, sin α)`, so `α = 0` and `α = π/2` cover
/// every phase choice.
pub fn diophantine_residual(k: KPoint, n: usize) -> f64 {
    let mut waves = Vec::with_capacity(6);
    let mut g = k;
    for _ in 0..3 {
        waves.push((g, 1.0));
        waves.push((g.y_mirrored(), -1.0));
        g = g.rotated();
    }
    let ni = n as i64;
    let mut worst = 0.0f64;
    for alpha in [0.0, 0.5 * PI] {
        for m in 1..=ni {
            for (n1, n2) in [(m, 0), (0, m), (m, ni - m)] {
                let sum: f64 = waves.iter().map(|(kr, sign)| (kr.phase_at(n1, n2) + sign * alpha).sin()).sum();
                worst = worst.max(sum.abs());
            }
        }
    }
    worst
}

pub const DIOPHANTINE_TOLERANCE: f64 = 1e-10;

pub fn verify_diophantine(q: i64, p: i64, n: usize) -> bool {
    verify_diophantine_at(quantized_k(q, p, n), n)
}

/// The closure test at an arbitrary wave vector.
pub fn verify_diophantine_at(k: KPoint, n: usize) -> bool {
    diophantine_residual(k, n) < DIOPHANTINE_TOLERANCE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    Axial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexPoint {
    pub q: i64,
    pub p: i64,
    pub class: PointClass,
}

impl IndexPoint {
    pub fn energy(&self, n: usize) -> f64 {
        dispersion(quantized_k(self.q, self.p, n))
    }

    /// Every eigenstate label carried by this point, branch 1 first.
    pub fn labels(&self) -> Vec<QuantumNumbers> {
        let branches: &[Branch] = match self.class {
            PointClass::Interior => &[Branch::One, Branch::Two],
            PointClass::Axial => &[Branch::Two],
        };
        let mut out = Vec::new();
        for band in [Band::Plus, Band::Minus] {
            for &branch in branches {
                out.push(QuantumNumbers { q: self.q, p: self.p, band, branch });
            }
        }
        out
    }
}

/// The quantized points of the fundamental sector, ordered by `p` then `q`.
pub fn index_set(n: usize) -> Vec<IndexPoint> {
    let ni = n as i64;
    let mut out = Vec::new();
    for p in 1..=(ni - 1) / 2 {
        for q in p..=ni - 1 - p {
            let class = if q == p { PointClass::Axial } else { PointClass::Interior };
            out.push(IndexPoint { q, p, class });
        }
    }
    out
}

/// Closed-form state counts of the billiard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateCounts {
    pub interior: usize,
    pub axial: usize,
    pub nonzero: usize,
    pub zero: usize,
    pub total: usize,
}

pub fn state_counts(n: usize) -> StateCounts {
    let half = (n - 1) / 2;
    // N_I = (N-1)(N-2)/4 - floor((N-1)/2)/2, kept in integers
    let interior = ((n - 1) * (n - 2) - 2 * half) / 4;
    StateCounts { interior, axial: half, nonzero: (n - 1) * (n - 2), zero: n - 1, total: (n - 1) * (n - 1) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateLabel {
    Periodic(QuantumNumbers),
    Edge(EdgeLabel),
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::Periodic(qn) => write!(f, "periodic{qn}"),
            StateLabel::Edge(e) => write!(f, "edge{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub energy: f64,
    pub multiplicity: usize,
    pub labels: Vec<StateLabel>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub n: usize,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    /// Every level repeated by its multiplicity, ascending.
    pub fn energies(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for e in &self.entries {
            out.extend(std::iter::repeat_n(e.energy, e.multiplicity));
        }
        out
    }

    pub fn total_states(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn zero_modes(&self) -> usize {
        self.entries.iter().filter(|e| e.energy.abs() < LEVEL_TOLERANCE).map(|e| e.multiplicity).sum()
    }
}

/// Sorts `(energy, label)` pairs and merges runs closer than `tol` to the
/// first member of the run.
pub fn group_levels(mut states: Vec<(f64, StateLabel)>, tol: f64) -> Vec<SpectrumEntry> {
    states.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    for (energy, label) in states {
        match entries.last_mut() {
            Some(last) if (energy - last.energy).abs() < tol => {
                last.multiplicity += 1;
                last.labels.push(label);
            }
            _ => entries.push(SpectrumEntry { energy, multiplicity: 1, labels: vec![label] }),
        }
    }
    entries
}

pub fn analytic_spectrum(n: usize) -> Result<SpectrumTable> {
    analytic_spectrum_with_tolerance(n, LEVEL_TOLERANCE)
}

pub fn analytic_spectrum_with_tolerance(n: usize, tol: f64) -> Result<SpectrumTable> {
    if n < 2 {
        return Err(Error::Size(n));
    }
    let mut states = Vec::with_capacity((n - 1) * (n - 1));
    for point in index_set(n) {
        let e = point.energy(n);
        for qn in point.labels() {
            states.push((qn.band.sign() * e, StateLabel::Periodic(qn)));
        }
    }
    for label in edge_labels(n) {
        states.push((0.0, StateLabel::Edge(label)));
    }
    Ok(SpectrumTable { n, entries: group_levels(states, tol) })
}
