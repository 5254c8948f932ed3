//! Zero-energy edge states.
//!
//! Every E = 0 eigenstate lives on the B sublattice and obeys the three-term
//! B recurrence at each active A site. A seed for layer `l` puts alternating
//! signs on B row `l-1`, is zero above it, and is continued downwards one row
//! at a time. Seeds are sorted into C3 representations with the projectors
//! `Π_q = (1 + z^-q R + z^q R²)/3`, `z = exp(2πi/3)`, and orthonormalized
//! within each `q` in order of increasing layer.

use std::fmt;

use nalgebra::{Cholesky, DMatrix, Dyn};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{layer_count, SiteIndex, Sublattice, TrianguleneLattice};
use crate::spectrum::StateLabel;
use crate::states::StateVector;
use crate::vecops;

/// Norm below which a projected seed counts as annihilated.
pub const DEPENDENT_NORM: f64 = 1e-10;

/// Remainder (relative to the projected seed) below which Gram–Schmidt
/// declares a seed dependent on the lower layers.
const GS_BREAKDOWN: f64 = 1e-9;

/// Edge state `|l, q)`: layer and C3 representation `q ∈ {-1, 0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel {
    pub layer: usize,
    pub q: i32,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.layer, self.q)
    }
}

/// Representations contributed by the innermost layer, by `N mod 3`.
pub fn innermost_reps(n: usize) -> &'static [i32] {
    match n % 3 {
        1 => &[-1, 0, 1],
        2 => &[0],
        _ => &[-1, 1],
    }
}

/// Labels of the edge basis in construction order: `q` ascending, then layer.
pub fn edge_labels(n: usize) -> Vec<EdgeLabel> {
    let layers = layer_count(n);
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for q in [-1, 0, 1] {
        for layer in 1..=layers {
            if layer < layers || innermost_reps(n).contains(&q) {
                out.push(EdgeLabel { layer, q });
            }
        }
    }
    out
}

/// Replays the induction that forces every A amplitude of a zero mode to
/// vanish: each B-site equation `a(n1-1,n2+1) + a(n1,n2+1) + a(n1,n2) = 0`
/// with two known zeros forces the third. Returns whether all active A
/// sites end up forced.
pub fn a_sublattice_vanishing_proof_check(n: usize) -> bool {
    let Ok(lat) = TrianguleneLattice::build(n) else {
        return false;
    };
    let mut zero: Vec<bool> = lat.sites().iter().map(|s| s.sublattice == Sublattice::B).collect();
    let is_zero = |zero: &[bool], s: &SiteIndex| lat.index_of(s).is_none_or(|i| zero[i]);
    loop {
        let mut changed = false;
        for site in lat.sites().iter().filter(|s| s.sublattice == Sublattice::B) {
            let open: Vec<_> = site.neighbors().into_iter().filter(|a| !is_zero(&zero, a)).collect();
            if let [only] = open.as_slice() {
                if let Some(i) = lat.index_of(only) {
                    zero[i] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    zero.iter().all(|&z| z)
}

fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > 1e-9 * max.max(1.0)).count()
}

/// Rank of the E = 0 equations for the A amplitudes (one row per active B
/// site). Equal to the A-site count exactly when those amplitudes must vanish.
pub fn a_recurrence_rank(lattice: &TrianguleneLattice) -> usize {
    let a_sites: Vec<_> = lattice.sites().iter().filter(|s| s.sublattice == Sublattice::A).collect();
    let b_sites: Vec<_> = lattice.sites().iter().filter(|s| s.sublattice == Sublattice::B).collect();
    let mut m = DMatrix::zeros(b_sites.len(), a_sites.len());
    for (row, b) in b_sites.iter().enumerate() {
        for a in b.neighbors() {
            if let Some(col) = a_sites.iter().position(|s| **s == a) {
                m[(row, col)] = 1.0;
            }
        }
    }
    numerical_rank(&m)
}

/// Rank of the B recurrence `b(n1+1,n2-1) + b(n1,n2-1) + b(n1,n2) = 0` over
/// `n2 = 1..N-2`, `n1 = 1..N-1-n2`. The zero-mode count is the number of B
/// sites minus this rank.
pub fn b_recurrence_rank(lattice: &TrianguleneLattice) -> usize {
    let n = lattice.size() as i64;
    let b_sites: Vec<_> = lattice.sites().iter().filter(|s| s.sublattice == Sublattice::B).collect();
    let col = |s: SiteIndex| b_sites.iter().position(|b| **b == s);
    let mut rows = Vec::new();
    for n2 in 1..=n - 2 {
        for n1 in 1..=n - 1 - n2 {
            let mut row = vec![0.0; b_sites.len()];
            for s in [SiteIndex::b(n1 + 1, n2 - 1), SiteIndex::b(n1, n2 - 1), SiteIndex::b(n1, n2)] {
                row[col(s).expect("recurrence only touches active B sites")] = 1.0;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), b_sites.len(), |i, j| rows[i][j]);
    numerical_rank(&m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedState {
    pub layer: usize,
    /// One amplitude per site in canonical order; A entries are zero.
    pub amplitudes: Vec<f64>,
}

impl SeedState {
    pub fn to_complex(&self) -> Vec<Complex64> {
        vecops::to_complex(&self.amplitudes)
    }
}

/// Mirror parity a seed of layer `l` carries: `-1` (antisymmetric) when
/// `N + l` is even, `+1` otherwise.
pub fn seed_parity(layer: usize, n: usize) -> f64 {
    if (n + layer).is_multiple_of(2) {
        -1.0
    } else {
        1.0
    }
}

/// Solves row `r` from row `r+1` above it. The row system has one free
/// parameter along the alternating vector; it is fixed by the requested
/// mirror parity, or, when the alternating vector itself has that parity, by
/// taking the minimum-norm solution.
fn solve_row_below(above: &[f64], parity: f64) -> Vec<f64> {
    let len = above.len() + 1;
    let mut x = vec![0.0; len];
    for i in 0..above.len() {
        x[i + 1] = -above[i] - x[i];
    }
    let alt: Vec<f64> = (0..len).map(|i| if i % 2 == 0 { -1.0 } else { 1.0 }).collect();
    let odd_part = |v: &[f64]| -> Vec<f64> { (0..len).map(|i| v[i] - parity * v[len - 1 - i]).collect() };
    let (d, e) = (odd_part(&x), odd_part(&alt));
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let ee = dot(&e, &e);
    let t = if ee > 0.5 { -dot(&d, &e) / ee } else { -dot(&x, &alt) / dot(&alt, &alt) };
    for (xi, ai) in x.iter_mut().zip(&alt) {
        *xi += t * ai;
    }
    x
}

pub fn build_seed(layer: usize, lattice: &TrianguleneLattice) -> Result<SeedState> {
    let n = lattice.size();
    let layers = layer_count(n);
    if layer == 0 || layer > layers {
        return Err(Error::Layer { layer, layers });
    }
    let parity = seed_parity(layer, n);
    // rows[r][i] is b(i+1, r)
    let mut rows: Vec<Vec<f64>> = (0..n - 1).map(|r| vec![0.0; n - 1 - r]).collect();
    rows[layer - 1] = (1..n - layer + 1).map(|n1| if n1 % 2 == 0 { 1.0 } else { -1.0 }).collect();
    for r in (0..layer - 1).rev() {
        let row = solve_row_below(&rows[r + 1], parity);
        let scale = row.iter().chain(&rows[r + 1]).fold(1.0f64, |m, v| m.max(v.abs()));
        let eq = rows[r + 1].iter().enumerate().map(|(i, b)| (row[i] + row[i + 1] + b).abs()).fold(0.0, f64::max);
        let par = (0..row.len()).map(|i| (row[i] - parity * row[row.len() - 1 - i]).abs()).fold(0.0, f64::max);
        let residual = eq.max(par) / scale;
        if residual > 1e-12 {
            return Err(Error::SeedConstruction { layer, row: r, residual });
        }
        rows[r] = row;
    }
    let amplitudes = lattice
        .sites()
        .iter()
        .map(|s| match s.sublattice {
            Sublattice::A => 0.0,
            Sublattice::B => rows[s.n2 as usize][(s.n1 - 1) as usize],
        })
        .collect();
    Ok(SeedState { layer, amplitudes })
}

/// `Π_q v = (v + z^-q R v + z^q R² v) / 3`.
pub fn project(v: &[Complex64], q: i32, lattice: &TrianguleneLattice) -> Vec<Complex64> {
    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let (zm, zp) = (z.powi(-q), z.powi(q));
    let rv = lattice.rotate(v);
    let rrv = lattice.rotate(&rv);
    v.iter().zip(&rv).zip(&rrv).map(|((a, b), c)| (a + zm * b + zp * c) / 3.0).collect()
}

/// `|l, q) = Π_q |l)`, not normalized.
pub fn project_c3v(seed: &SeedState, q: i32, lattice: &TrianguleneLattice) -> Result<StateVector> {
    let amplitudes = project(&seed.to_complex(), q, lattice);
    let norm = vecops::norm(&amplitudes);
    if norm < DEPENDENT_NORM {
        return Err(Error::DependentProjection { layer: seed.layer, q, norm });
    }
    Ok(StateVector {
        amplitudes,
        energy: 0.0,
        label: StateLabel::Edge(EdgeLabel { layer: seed.layer, q }),
        normalized: false,
    })
}

/// Which real combination of a `(l, ±1)` pair a real edge state is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealPart {
    /// The `q = 0` state, already real.
    Symmetric,
    Re,
    Im,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealEdgeState {
    pub layer: usize,
    pub part: RealPart,
    pub amplitudes: Vec<f64>,
}

impl RealEdgeState {
    pub fn name(&self) -> String {
        match self.part {
            RealPart::Symmetric => format!("({},0)", self.layer),
            RealPart::Re => format!("({},1) re", self.layer),
            RealPart::Im => format!("({},1) im", self.layer),
        }
    }
}

/// The complete orthonormal zero-energy basis.
#[derive(Debug, Clone)]
pub struct EdgeBasis {
    pub n: usize,
    pub states: Vec<StateVector>,
}

impl EdgeBasis {
    pub fn labels(&self) -> Vec<EdgeLabel> {
        self.states
            .iter()
            .filter_map(|s| match s.label {
                StateLabel::Edge(l) => Some(l),
                StateLabel::Periodic(_) => None,
            })
            .collect()
    }

    /// Real orthonormal view: `q = 0` states as they are, and each `q = +1`
    /// state split into `sqrt(2) Re` and `sqrt(2) Im` (its `q = -1` partner is
    /// the complex conjugate).
    pub fn real_view(&self) -> Vec<RealEdgeState> {
        let mut out = Vec::new();
        for s in &self.states {
            let StateLabel::Edge(label) = s.label else { continue };
            match label.q {
                0 => out.push(RealEdgeState {
                    layer: label.layer,
                    part: RealPart::Symmetric,
                    amplitudes: s.amplitudes.iter().map(|a| a.re).collect(),
                }),
                1 => {
                    let r2 = std::f64::consts::SQRT_2;
                    out.push(RealEdgeState {
                        layer: label.layer,
                        part: RealPart::Re,
                        amplitudes: s.amplitudes.iter().map(|a| r2 * a.re).collect(),
                    });
                    out.push(RealEdgeState {
                        layer: label.layer,
                        part: RealPart::Im,
                        amplitudes: s.amplitudes.iter().map(|a| r2 * a.im).collect(),
                    });
                }
                _ => {}
            }
        }
        out.sort_by_key(|s| (s.layer, s.part as u8));
        out
    }
}

/// Orthogonal projector onto the zero modes, `1 - Mᵀ(MMᵀ)⁻¹M`, with `M` the
/// E = 0 equations at the A sites acting on B amplitudes. `MMᵀ` has the
/// squared nonzero energies as eigenvalues, so it is well conditioned.
struct ZeroModeProjector {
    m: DMatrix<f64>,
    b_index: Vec<usize>,
    gram: Option<Cholesky<f64, Dyn>>,
}

impl ZeroModeProjector {
    fn new(lattice: &TrianguleneLattice) -> Result<Self> {
        let b_index: Vec<usize> =
            (0..lattice.len()).filter(|&i| lattice.sites()[i].sublattice == Sublattice::B).collect();
        let a_sites: Vec<&SiteIndex> = lattice.sites().iter().filter(|s| s.sublattice == Sublattice::A).collect();
        let mut m = DMatrix::zeros(a_sites.len(), b_index.len());
        for (row, a) in a_sites.iter().enumerate() {
            for b in a.neighbors() {
                let i = lattice.index_of(&b).expect("active A sites have active B neighbours");
                let col = b_index.binary_search(&i).expect("B sites come first");
                m[(row, col)] = 1.0;
            }
        }
        let gram = if a_sites.is_empty() {
            None
        } else {
            let g = &m * m.transpose();
            Some(Cholesky::new(g).ok_or_else(|| Error::Oracle("A-site equations are rank deficient".into()))?)
        };
        Ok(ZeroModeProjector { m, b_index, gram })
    }

    fn apply(&self, v: &mut [Complex64]) {
        let Some(gram) = &self.gram else { return };
        let vb = DMatrix::from_fn(self.b_index.len(), 2, |r, c| {
            let a = v[self.b_index[r]];
            if c == 0 {
                a.re
            } else {
                a.im
            }
        });
        let y = gram.solve(&(&self.m * vb));
        let fix = self.m.transpose() * y;
        for (r, &i) in self.b_index.iter().enumerate() {
            v[i] -= Complex64::new(fix[(r, 0)], fix[(r, 1)]);
        }
    }
}

pub fn edge_basis(lattice: &TrianguleneLattice) -> Result<EdgeBasis> {
    let n = lattice.size();
    let seeds: Vec<SeedState> = (1..=layer_count(n)).map(|l| build_seed(l, lattice)).collect::<Result<_>>()?;
    let zero_modes = ZeroModeProjector::new(lattice)?;
    let mut states = Vec::with_capacity(n - 1);
    for q in [-1, 0, 1] {
        let mut done: Vec<StateVector> = Vec::new();
        for label in edge_labels(n).into_iter().filter(|l| l.q == q) {
            let mut v = project_c3v(&seeds[label.layer - 1], q, lattice)?;
            let start = v.norm();
            let basis: Vec<&[Complex64]> = done.iter().map(|d| d.amplitudes.as_slice()).collect();
            let left = vecops::orthogonalize(&mut v.amplitudes, &basis);
            if left < GS_BREAKDOWN * start {
                return Err(Error::DependentProjection { layer: label.layer, q, norm: left });
            }
            v.normalize();
            done.push(v);
        }
        // Seeds grow steeply towards the bottom rows, so the Gram-Schmidt
        // remainders are small and rounding errors come out amplified.
        // Re-project the unit vectors and orthonormalize once more.
        let mut clean: Vec<StateVector> = Vec::with_capacity(done.len());
        for mut v in done {
            v.amplitudes = project(&v.amplitudes, q, lattice);
            zero_modes.apply(&mut v.amplitudes);
            let basis: Vec<&[Complex64]> = clean.iter().map(|d| d.amplitudes.as_slice()).collect();
            vecops::orthogonalize(&mut v.amplitudes, &basis);
            v.normalize();
            clean.push(v);
        }
        states.extend(clean);
    }
    if states.len() != n - 1 {
        return Err(Error::Completeness { expected: n - 1, found: states.len() });
    }
    Ok(EdgeBasis { n, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hv_max(lat: &TrianguleneLattice, v: &[Complex64]) -> f64 {
        lat.apply_hamiltonian(v).iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn a_amplitudes_forced_to_zero() {
        for n in [2, 3, 6, 10] {
            assert!(a_sublattice_vanishing_proof_check(n), "N={n}");
            let lat = TrianguleneLattice::build(n).unwrap();
            assert_eq!(a_recurrence_rank(&lat), (n - 1) * (n - 2) / 2);
        }
    }

    #[test]
    fn b_recurrence_leaves_n_minus_one_free() {
        for n in 2..=20 {
            let lat = TrianguleneLattice::build(n).unwrap();
            let rank = b_recurrence_rank(&lat);
            assert_eq!(rank, (n - 1) * (n - 2) / 2);
            assert_eq!(lat.count(Sublattice::B) - rank, n - 1);
        }
    }

    #[test]
    fn n3_seed_is_antisymmetric() {
        let lat = TrianguleneLattice::build(3).unwrap();
        let seed = build_seed(1, &lat).unwrap();
        // B(1,0), B(2,0), B(1,1), A(1,1)
        assert_eq!(seed.amplitudes, vec![-1.0, 1.0, 0.0, 0.0]);
        assert_eq!(lat.reflect(&seed.amplitudes), vec![1.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn seeds_are_zero_modes_with_the_right_parity() {
        for n in 2..=25 {
            let lat = TrianguleneLattice::build(n).unwrap();
            for l in 1..=layer_count(n) {
                let seed = build_seed(l, &lat).unwrap();
                let v = seed.to_complex();
                let scale = seed.amplitudes.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                assert!(hv_max(&lat, &v) <= 1e-12 * scale, "N={n} l={l}");
                let mirrored = lat.reflect(&seed.amplitudes);
                let s = seed_parity(l, n);
                for (a, b) in seed.amplitudes.iter().zip(&mirrored) {
                    assert!((a - s * b).abs() <= 1e-12 * scale);
                }
                for (site, a) in lat.sites().iter().zip(&seed.amplitudes) {
                    if site.n2 >= l as i64 || site.sublattice == Sublattice::A {
                        assert_eq!(*a, 0.0);
                    }
                    if site.n2 == l as i64 - 1 && site.sublattice == Sublattice::B {
                        assert_eq!(a.abs(), 1.0);
                    }
                }
            }
        }
    }

    #[test]
    fn n6_second_seed_has_equal_support_per_row() {
        let lat = TrianguleneLattice::build(6).unwrap();
        let seed = build_seed(2, &lat).unwrap();
        let mut per_row = [0usize; 5];
        for (s, a) in lat.sites().iter().zip(&seed.amplitudes) {
            if a.abs() > 1e-12 {
                per_row[s.n2 as usize] += 1;
            }
        }
        assert_eq!(&per_row[..2], &[4, 4]);
        assert_eq!(&per_row[2..], &[0, 0, 0]);
    }

    #[test]
    fn bad_layer_is_rejected() {
        let lat = TrianguleneLattice::build(6).unwrap();
        assert!(matches!(build_seed(0, &lat), Err(Error::Layer { .. })));
        assert!(matches!(build_seed(3, &lat), Err(Error::Layer { .. })));
    }

    #[test]
    fn n5_chiral_innermost_projections_vanish_at_the_fixed_point() {
        let lat = TrianguleneLattice::build(5).unwrap();
        let seed = build_seed(2, &lat).unwrap();
        let centre = lat.index_of(&SiteIndex::b(2, 1)).unwrap();
        assert!(seed.amplitudes[centre].abs() > 0.5);
        for q in [-1, 1] {
            let v = project_c3v(&seed, q, &lat).unwrap();
            assert!(v.amplitudes[centre].norm() < 1e-14);
        }
    }

    #[test]
    fn n6_chiral_states_are_complex() {
        let lat = TrianguleneLattice::build(6).unwrap();
        let seed = build_seed(1, &lat).unwrap();
        for q in [-1, 1] {
            let v = project_c3v(&seed, q, &lat).unwrap();
            assert!(!v.is_real(1e-6));
            assert!(hv_max(&lat, &v.amplitudes) < 1e-12);
        }
        assert!(project_c3v(&seed, 0, &lat).unwrap().is_real(1e-15));
    }

    #[test]
    fn basis_sizes() {
        let lat = TrianguleneLattice::build(6).unwrap();
        let basis = edge_basis(&lat).unwrap();
        assert_eq!(basis.states.len(), 5);
        assert_eq!(basis.real_view().len(), 5);

        let lat = TrianguleneLattice::build(2).unwrap();
        let basis = edge_basis(&lat).unwrap();
        assert_eq!(basis.states.len(), 1);
        assert!((basis.states[0].amplitudes[0].norm() - 1.0).abs() < 1e-15);

        let labels = edge_labels(5);
        let expected: Vec<_> =
            [(1, -1), (1, 0), (2, 0), (1, 1)].iter().map(|&(layer, q)| EdgeLabel { layer, q }).collect();
        assert_eq!(labels, expected);
    }

    #[test]
    fn basis_is_orthonormal_and_rotation_diagonal() {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        for n in 2..=20 {
            let lat = TrianguleneLattice::build(n).unwrap();
            let basis = edge_basis(&lat).unwrap();
            assert_eq!(basis.states.len(), n - 1);
            for (i, a) in basis.states.iter().enumerate() {
                for (j, b) in basis.states.iter().enumerate() {
                    let o = vecops::inner(&a.amplitudes, &b.amplitudes);
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((o - e).norm() < 1e-10, "N={n}");
                }
                assert!(hv_max(&lat, &a.amplitudes) < 1e-10);
                let StateLabel::Edge(label) = a.label else { unreachable!() };
                let rotated = lat.rotate(&a.amplitudes);
                let expected: Vec<_> = a.amplitudes.iter().map(|x| z.powi(label.q) * x).collect();
                assert!(vecops::max_abs_diff(&rotated, &expected) < 1e-9);
                for (site, x) in lat.sites().iter().zip(&a.amplitudes) {
                    if site.sublattice == Sublattice::A {
                        assert!(x.norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn large_sizes_keep_full_precision() {
        for n in [35, 40] {
            let lat = TrianguleneLattice::build(n).unwrap();
            let basis = edge_basis(&lat).unwrap();
            for (i, a) in basis.states.iter().enumerate() {
                assert!(hv_max(&lat, &a.amplitudes) < 1e-13, "N={n}");
                for b in &basis.states[..i] {
                    assert!(vecops::inner(&a.amplitudes, &b.amplitudes).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn mirror_swaps_chiral_partners() {
        for n in [4, 6, 7, 11] {
            let lat = TrianguleneLattice::build(n).unwrap();
            let basis = edge_basis(&lat).unwrap();
            for s in &basis.states {
                let StateLabel::Edge(label) = s.label else { unreachable!() };
                let partners: Vec<&[Complex64]> = basis
                    .states
                    .iter()
                    .filter(|t| matches!(t.label, StateLabel::Edge(l) if l.q == -label.q))
                    .map(|t| t.amplitudes.as_slice())
                    .collect();
                let mirrored = lat.reflect(&s.amplitudes);
                assert!(vecops::span_residual(&mirrored, &partners) < 1e-9);
            }
        }
    }

    #[test]
    fn real_view_is_orthonormal() {
        let lat = TrianguleneLattice::build(9).unwrap();
        let real = edge_basis(&lat).unwrap().real_view();
        assert_eq!(real.len(), 8);
        for (i, a) in real.iter().enumerate() {
            for (j, b) in real.iter().enumerate() {
                let o: f64 = a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x * y).sum();
                assert!((o - if i == j { 1.0 } else { 0.0 }).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn different_representations_of_seeds_are_orthogonal() {
        for n in [6, 9, 13] {
            let lat = TrianguleneLattice::build(n).unwrap();
            for l in 1..=layer_count(n) {
                let seed = build_seed(l, &lat).unwrap().to_complex();
                let scale = vecops::norm(&seed).powi(2);
                for p in [-1, 0, 1] {
                    for q in [-1, 0, 1] {
                        let o = vecops::inner(&project(&seed, p, &lat), &project(&seed, q, &lat));
                        if p != q {
                            assert!(o.norm() < 1e-10 * scale.max(1.0));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn projector_is_idempotent(values in proptest::collection::vec(-1.0f64..1.0, 2 * 36)) {
            let lat = TrianguleneLattice::build(7).unwrap();
            let v: Vec<Complex64> =
                values.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            for q in [-1, 0, 1] {
                let once = project(&v, q, &lat);
                let twice = project(&once, q, &lat);
                prop_assert!(vecops::max_abs_diff(&once, &twice) < 1e-12);
                for p in [-1, 0, 1] {
                    if p != q {
                        let cross = project(&project(&v, p, &lat), q, &lat);
                        prop_assert!(vecops::norm(&cross) < 1e-12);
                    }
                }
            }
        }
    }
}
