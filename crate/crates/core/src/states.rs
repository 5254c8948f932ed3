//! Periodic eigenstates of the billiard built from six-wave Bloch
//! superpositions, and their extension over the infinite sheet.
//!
//! The upper (A) components are the antisymmetrised sum over the C3 orbit of
//! `k` minus the orbit of its x-mirror image. Each wave carries its own B
//! amplitude, fixed by the sheet Hamiltonian so that every wave is an
//! eigenfunction with energy `band * |α(k)|` on its own.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_complex::Complex64;

use crate::bloch::{alpha, KPoint};
use crate::error::{Error, Result};
use crate::lattice::{SiteIndex, Sublattice, TrianguleneLattice};
use crate::spectrum::{in_sector, index_set, quantized_k, Band, Branch, QuantumNumbers, StateLabel, LEVEL_TOLERANCE};
use crate::vecops;

/// Norm below which a branch is treated as vanishing identically.
pub const DEGENERATE_NORM: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    /// One amplitude per site in canonical lattice order.
    pub amplitudes: Vec<Complex64>,
    pub energy: f64,
    pub label: StateLabel,
    pub normalized: bool,
}

impl StateVector {
    pub fn norm(&self) -> f64 {
        vecops::norm(&self.amplitudes)
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            vecops::scale(&mut self.amplitudes, 1.0 / n);
        }
        self.normalized = true;
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.amplitudes.iter().all(|a| a.im.abs() <= tol)
    }

    /// `|H v - E v|` relative to `|v|`, using the lattice bonds.
    pub fn residual(&self, lattice: &TrianguleneLattice) -> f64 {
        let hv = lattice.apply_hamiltonian(&self.amplitudes);
        let r: f64 = hv.iter().zip(&self.amplitudes).map(|(h, v)| (h - self.energy * v).norm_sqr()).sum::<f64>().sqrt();
        r / self.norm().max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, Copy)]
struct Wave {
    k: KPoint,
    sign: f64,
    lower: Complex64,
}

/// A real standing wave `sqrt(2) Re Ψ` (branch 1) or `sqrt(2) Im Ψ`
/// (branch 2), evaluable at any site of the sheet.
#[derive(Debug, Clone)]
pub struct BlochSuperposition {
    pub k: KPoint,
    pub band: Band,
    pub branch: Branch,
    pub energy: f64,
    waves: [Wave; 6],
}

impl BlochSuperposition {
    pub fn new(k: KPoint, band: Band, branch: Branch) -> Self {
        let mut waves = [Wave { k, sign: 0.0, lower: Complex64::new(0.0, 0.0) }; 6];
        let mut g = k;
        for pair in waves.chunks_mut(2) {
            pair[0] = wave(g, 1.0, band);
            pair[1] = wave(g.mirrored(), -1.0, band);
            g = g.rotated();
        }
        BlochSuperposition { k, band, branch, energy: band.sign() * alpha(k).norm(), waves }
    }

    pub fn for_state(qn: &QuantumNumbers, n: usize) -> Self {
        Self::new(quantized_k(qn.q, qn.p, n), qn.band, qn.branch)
    }

    /// The complex superposition Ψ at one site.
    pub fn spinor(&self, site: &SiteIndex) -> Complex64 {
        let sum: Complex64 = self
            .waves
            .iter()
            .map(|w| {
                let plane = Complex64::from_polar(w.sign, w.k.phase_at(site.n1, site.n2));
                match site.sublattice {
                    Sublattice::A => plane,
                    Sublattice::B => plane * w.lower,
                }
            })
            .sum();
        sum / 12f64.sqrt()
    }

    pub fn value(&self, site: &SiteIndex) -> f64 {
        let psi = self.spinor(site);
        std::f64::consts::SQRT_2
            * match self.branch {
                Branch::One => psi.re,
                Branch::Two => psi.im,
            }
    }
}

fn wave(k: KPoint, sign: f64, band: Band) -> Wave {
    let a = alpha(k);
    let lower = if a.norm() > 0.0 { -band.sign() * a.conj() / a.norm() } else { Complex64::new(0.0, 0.0) };
    Wave { k, sign, lower }
}

/// Unnormalized amplitudes of a periodic state on the billiard sites.
pub fn periodic_amplitudes(qn: &QuantumNumbers, lattice: &TrianguleneLattice) -> Vec<f64> {
    let sup = BlochSuperposition::for_state(qn, lattice.size());
    lattice.sites().iter().map(|s| sup.value(s)).collect()
}

pub fn build_periodic_state(qn: &QuantumNumbers, lattice: &TrianguleneLattice) -> Result<StateVector> {
    let n = lattice.size();
    if !in_sector(qn.q, qn.p, n) {
        return Err(Error::Domain { q: qn.q, p: qn.p, n });
    }
    let raw = periodic_amplitudes(qn, lattice);
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < DEGENERATE_NORM {
        return Err(Error::DegenerateBranch { q: qn.q, p: qn.p, norm });
    }
    Ok(StateVector {
        amplitudes: raw.iter().map(|x| Complex64::new(x / norm, 0.0)).collect(),
        energy: qn.energy(n),
        label: StateLabel::Periodic(*qn),
        normalized: true,
    })
}

/// All `(N-1)(N-2)` periodic states, each normalized but not orthogonalized.
pub fn periodic_states(lattice: &TrianguleneLattice) -> Result<Vec<StateVector>> {
    let n = lattice.size();
    index_set(n).iter().flat_map(|pt| pt.labels()).map(|qn| build_periodic_state(&qn, lattice)).collect()
}

/// Periodic states orthonormalized within each energy class. Classes are
/// formed with [`LEVEL_TOLERANCE`]; inside a class branch 1 precedes branch 2,
/// then `(p, q)` ascending.
pub fn periodic_basis(lattice: &TrianguleneLattice) -> Result<Vec<StateVector>> {
    let mut states = periodic_states(lattice)?;
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let mut out = Vec::with_capacity(states.len());
    let mut start = 0;
    while start < states.len() {
        let e0 = states[start].energy;
        let end = start + states[start..].iter().take_while(|s| (s.energy - e0).abs() < LEVEL_TOLERANCE).count();
        let mut class: Vec<StateVector> = states[start..end].to_vec();
        class.sort_by_key(|s| match s.label {
            StateLabel::Periodic(qn) => (qn.branch, qn.p, qn.q),
            StateLabel::Edge(_) => unreachable!("periodic builder only emits periodic labels"),
        });
        let mut done: Vec<StateVector> = Vec::with_capacity(class.len());
        for mut s in class {
            let basis: Vec<&[Complex64]> = done.iter().map(|d| d.amplitudes.as_slice()).collect();
            let left = vecops::orthogonalize(&mut s.amplitudes, &basis);
            if left < DEGENERATE_NORM {
                return Err(Error::Count { expected: lattice.len(), found: out.len() + done.len() });
            }
            s.normalize();
            done.push(s);
        }
        out.extend(done);
        start = end;
    }
    Ok(out)
}

/// A rectangular range of integer pairs; both sublattices are included at
/// every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub n1: RangeInclusive<i64>,
    pub n2: RangeInclusive<i64>,
}

impl Window {
    /// `count x count` billiard-sized cells centred on the billiard.
    pub fn supercells(n: usize, count: usize) -> Self {
        let n = n as i64;
        let lo = -((count / 2) as i64) * n;
        let hi = lo + count as i64 * n;
        Window { n1: lo..=hi, n2: lo..=hi }
    }

    /// The bounding box of the billiard including its nodal rim.
    pub fn billiard(n: usize) -> Self {
        let n = n as i64;
        Window { n1: 0..=n, n2: 0..=n }
    }

    pub fn contains(&self, site: &SiteIndex) -> bool {
        self.n1.contains(&site.n1) && self.n2.contains(&site.n2)
    }
}

/// A periodic state evaluated on a window of the infinite sheet.
#[derive(Debug, Clone)]
pub struct ExtendedField {
    pub n: usize,
    pub energy: f64,
    pub window: Window,
    pub sites: Vec<SiteIndex>,
    pub values: Vec<f64>,
    lookup: HashMap<SiteIndex, usize>,
}

impl ExtendedField {
    pub fn value(&self, site: &SiteIndex) -> Option<f64> {
        self.lookup.get(site).map(|&i| self.values[i])
    }

    /// `|-(sum of neighbours) - E psi|` at site `i`, if all of its neighbours
    /// lie inside the window.
    pub fn sheet_residual_at(&self, i: usize) -> Option<f64> {
        let mut hop = 0.0;
        for nb in self.sites[i].neighbors() {
            hop -= self.value(&nb)?;
        }
        Some((hop - self.energy * self.values[i]).abs())
    }

    /// Residual with every nodal A site cut out of the sheet, which splits it
    /// into disconnected triangles. Nodal sites themselves are skipped.
    pub fn decoupled_residual_at(&self, i: usize) -> Option<f64> {
        let site = &self.sites[i];
        if site.is_nodal(self.n) {
            return None;
        }
        let mut hop = 0.0;
        for nb in site.neighbors() {
            let v = self.value(&nb)?;
            if !nb.is_nodal(self.n) {
                hop -= v;
            }
        }
        Some((hop - self.energy * self.values[i]).abs())
    }

    /// Largest amplitude on any image of the three nodal lines.
    pub fn nodal_max(&self) -> f64 {
        self.sites
            .iter()
            .zip(&self.values)
            .filter(|(s, _)| s.is_nodal(self.n))
            .map(|(_, v)| v.abs())
            .fold(0.0, f64::max)
    }
}

pub fn extend_superposition(sup: &BlochSuperposition, n: usize, window: &Window) -> ExtendedField {
    let mut sites = Vec::new();
    for n2 in window.n2.clone() {
        for n1 in window.n1.clone() {
            sites.push(SiteIndex::a(n1, n2));
            sites.push(SiteIndex::b(n1, n2));
        }
    }
    let values = sites.iter().map(|s| sup.value(s)).collect();
    let lookup = sites.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    ExtendedField { n, energy: sup.energy, window: window.clone(), sites, values, lookup }
}

pub fn extend_state(qn: &QuantumNumbers, n: usize, window: &Window) -> Result<ExtendedField> {
    if !in_sector(qn.q, qn.p, n) {
        return Err(Error::Domain { q: qn.q, p: qn.p, n });
    }
    Ok(extend_superposition(&BlochSuperposition::for_state(qn, n), n, window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::PointClass;

    fn qn(q: i64, p: i64, band: Band, branch: Branch) -> QuantumNumbers {
        QuantumNumbers { q, p, band, branch }
    }

    #[test]
    fn n6_ground_state() {
        let lat = TrianguleneLattice::build(6).unwrap();
        let s = build_periodic_state(&qn(1, 1, Band::Minus, Branch::Two), &lat).unwrap();
        assert!((s.energy + 7f64.sqrt()).abs() < 1e-12);
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert!(s.residual(&lat) < 1e-12);
    }

    #[test]
    fn n3_axial_state_is_uniform_on_b() {
        let lat = TrianguleneLattice::build(3).unwrap();
        for band in [Band::Plus, Band::Minus] {
            let s = build_periodic_state(&qn(1, 1, band, Branch::Two), &lat).unwrap();
            let b: Vec<f64> = lat
                .sites()
                .iter()
                .zip(&s.amplitudes)
                .filter(|(site, _)| site.sublattice == Sublattice::B)
                .map(|(_, a)| a.re)
                .collect();
            assert_eq!(b.len(), 3);
            assert!((b[0] - b[1]).abs() < 1e-12 && (b[1] - b[2]).abs() < 1e-12);
            // star graph: the A amplitude is -E times each B amplitude divided by 3... i.e. |a| = sqrt(3)|b|
            let a = s.amplitudes[3].re;
            assert!((a.abs() - 3f64.sqrt() * b[0].abs()).abs() < 1e-12);
            assert!(s.residual(&lat) < 1e-12);
        }
    }

    #[test]
    fn errors() {
        let lat = TrianguleneLattice::build(6).unwrap();
        assert!(matches!(
            build_periodic_state(&qn(2, 2, Band::Plus, Branch::One), &lat),
            Err(Error::DegenerateBranch { .. })
        ));
        assert!(matches!(build_periodic_state(&qn(5, 1, Band::Plus, Branch::Two), &lat), Err(Error::Domain { .. })));
    }

    #[test]
    fn nodal_lines_vanish() {
        for n in 3..12 {
            let ni = n as i64;
            for pt in index_set(n) {
                for q in pt.labels() {
                    let sup = BlochSuperposition::for_state(&q, n);
                    for m in 0..=ni {
                        for site in [SiteIndex::a(0, m), SiteIndex::a(m, 0), SiteIndex::a(m, ni - m)] {
                            assert!(sup.value(&site).abs() < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn branch_one_vanishes_exactly_on_axis() {
        for n in 3..=20 {
            let lat = TrianguleneLattice::build(n).unwrap();
            for pt in index_set(n) {
                let q = qn(pt.q, pt.p, Band::Plus, Branch::One);
                let raw = periodic_amplitudes(&q, &lat);
                let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
                match pt.class {
                    PointClass::Axial => assert!(norm < DEGENERATE_NORM, "N={n} {pt:?}"),
                    PointClass::Interior => assert!(norm > 1e-3, "N={n} {pt:?}"),
                }
            }
        }
    }

    #[test]
    fn residuals_and_class_orthonormality() {
        for n in 2..=20 {
            let lat = TrianguleneLattice::build(n).unwrap();
            let basis = periodic_basis(&lat).unwrap();
            assert_eq!(basis.len(), (n - 1) * (n - 2));
            for s in &basis {
                assert!(s.residual(&lat) < 1e-9);
            }
            for (i, a) in basis.iter().enumerate() {
                for b in &basis[i..] {
                    if (a.energy.abs() - b.energy.abs()).abs() < LEVEL_TOLERANCE {
                        let o = vecops::inner(&a.amplitudes, &b.amplitudes);
                        let expected = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                        assert!((o - expected).norm() < 1e-9, "N={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_keeps_states_in_their_eigenspace() {
        for n in [5, 6, 9, 12] {
            let lat = TrianguleneLattice::build(n).unwrap();
            let basis = periodic_basis(&lat).unwrap();
            for s in &basis {
                let rotated = lat.rotate(&s.amplitudes);
                let same: Vec<&[Complex64]> = basis
                    .iter()
                    .filter(|t| (t.energy - s.energy).abs() < LEVEL_TOLERANCE)
                    .map(|t| t.amplitudes.as_slice())
                    .collect();
                assert!(vecops::span_residual(&rotated, &same) < 1e-9);
            }
        }
    }

    #[test]
    fn extension_restricts_to_the_billiard_state() {
        let lat = TrianguleneLattice::build(6).unwrap();
        let q = qn(3, 1, Band::Plus, Branch::One);
        let field = extend_state(&q, 6, &Window::billiard(6)).unwrap();
        let raw = periodic_amplitudes(&q, &lat);
        for (site, v) in lat.sites().iter().zip(&raw) {
            assert_eq!(field.value(site), Some(*v));
        }
    }

    #[test]
    fn extension_vanishes_on_image_nodal_lines() {
        let q = qn(1, 1, Band::Minus, Branch::Two);
        let field = extend_state(&q, 6, &Window::supercells(6, 3)).unwrap();
        assert_eq!(field.window, Window { n1: -6..=12, n2: -6..=12 });
        assert!(field.nodal_max() < 1e-10);
        let worst = (0..field.sites.len()).filter_map(|i| field.decoupled_residual_at(i)).fold(0.0, f64::max);
        assert!(worst < 1e-10);
    }

    #[test]
    fn extension_satisfies_sheet_recursion_at_random_sites() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let q = qn(3, 2, Band::Plus, Branch::Two);
        let field = extend_state(&q, 6, &Window::supercells(6, 3)).unwrap();
        let mut checked = 0;
        while checked < 100 {
            let i = rng.random_range(0..field.sites.len());
            if let Some(r) = field.sheet_residual_at(i) {
                assert!(r < 1e-10);
                checked += 1;
            }
        }
    }
}
