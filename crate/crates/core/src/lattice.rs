//! Finite triangulene site set on the honeycomb lattice.
//!
//! Sites are addressed by a sublattice tag and the integer pair `(n1, n2)`.
//! An A site sits at `n1*a1 + n2*a2` with `a1 = (1, 0)` and
//! `a2 = (1/2, sqrt(3)/2)`; its B partner sits one bond above it at
//! `+ (0, 1/sqrt(3))`. The billiard of size `N` is bounded by three lines of
//! A sites (`n1 = 0`, `n2 = 0`, `n1 + n2 = N`) whose amplitudes vanish, which
//! leaves `(N-1)^2` active carbon sites.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Matching tolerance for symmetry permutations in position space.
pub const POSITION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sublattice {
    A,
    B,
}

impl Sublattice {
    pub fn as_str(self) -> &'static str {
        match self {
            Sublattice::A => "A",
            Sublattice::B => "B",
        }
    }
}

/// One carbon site of the (infinite) honeycomb sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SiteIndex {
    pub sublattice: Sublattice,
    pub n1: i64,
    pub n2: i64,
}

impl SiteIndex {
    pub const fn a(n1: i64, n2: i64) -> Self {
        SiteIndex { sublattice: Sublattice::A, n1, n2 }
    }

    pub const fn b(n1: i64, n2: i64) -> Self {
        SiteIndex { sublattice: Sublattice::B, n1, n2 }
    }

    /// Whether the site belongs to the billiard of size `n`.
    pub fn is_active(&self, n: usize) -> bool {
        let n = n as i64;
        match self.sublattice {
            Sublattice::B => (0..=n - 2).contains(&self.n2) && self.n1 >= 1 && self.n1 <= n - 1 - self.n2,
            Sublattice::A => self.n1 >= 1 && self.n2 >= 1 && self.n1 + self.n2 < n,
        }
    }

    /// True for A sites on one of the three nodal lines of the billiard or
    /// any of their images in the triangular tessellation of the sheet.
    pub fn is_nodal(&self, n: usize) -> bool {
        let n = n as i64;
        self.sublattice == Sublattice::A
            && (self.n1.rem_euclid(n) == 0 || self.n2.rem_euclid(n) == 0 || (self.n1 + self.n2).rem_euclid(n) == 0)
    }

    pub fn position(&self) -> [f64; 2] {
        let x = self.n1 as f64 + 0.5 * self.n2 as f64;
        let y = 0.5 * SQRT3 * self.n2 as f64;
        match self.sublattice {
            Sublattice::A => [x, y],
            Sublattice::B => [x, y + 1.0 / SQRT3],
        }
    }

    /// Nearest neighbours on the infinite sheet.
    pub fn neighbors(&self) -> [SiteIndex; 3] {
        let (n1, n2) = (self.n1, self.n2);
        match self.sublattice {
            Sublattice::A => [SiteIndex::b(n1, n2), SiteIndex::b(n1 + 1, n2 - 1), SiteIndex::b(n1, n2 - 1)],
            Sublattice::B => [SiteIndex::a(n1, n2), SiteIndex::a(n1 - 1, n2 + 1), SiteIndex::a(n1, n2 + 1)],
        }
    }
}

impl std::fmt::Display for SiteIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({},{})", self.sublattice.as_str(), self.n1, self.n2)
    }
}

/// Integer key of a position: `(2x, 2*sqrt(3)*y)` is integral on both sublattices.
fn position_key(p: [f64; 2]) -> (i64, i64) {
    ((2.0 * p[0]).round() as i64, (2.0 * SQRT3 * p[1]).round() as i64)
}

fn distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// The finite billiard: canonical site order, geometry, bonds and the two
/// generators of its C3v symmetry as site permutations.
#[derive(Debug, Clone)]
pub struct TrianguleneLattice {
    n: usize,
    sites: Vec<SiteIndex>,
    positions: Vec<[f64; 2]>,
    bonds: Vec<(usize, usize)>,
    rotation: Vec<usize>,
    reflection: Vec<usize>,
    lookup: HashMap<SiteIndex, usize>,
}

impl TrianguleneLattice {
    pub fn build(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Size(n));
        }
        let ni = n as i64;
        let mut sites = Vec::with_capacity((n - 1) * (n - 1));
        for n2 in 0..=ni - 2 {
            for n1 in 1..=ni - 1 - n2 {
                sites.push(SiteIndex::b(n1, n2));
            }
        }
        for n2 in 1..=ni - 2 {
            for n1 in 1..=ni - 1 - n2 {
                sites.push(SiteIndex::a(n1, n2));
            }
        }
        let lookup: HashMap<_, _> = sites.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let positions: Vec<_> = sites.iter().map(SiteIndex::position).collect();

        let mut bonds = Vec::new();
        for (i, site) in sites.iter().enumerate() {
            if site.sublattice != Sublattice::A {
                continue;
            }
            for nb in site.neighbors() {
                let j = *lookup
                    .get(&nb)
                    .ok_or_else(|| Error::Geometry(format!("active site {site} has inactive neighbour {nb}")))?;
                bonds.push((i.min(j), i.max(j)));
            }
        }
        bonds.sort_unstable();

        let rotation = rotation_permutation(n, &positions)?;

        let reflection: Vec<usize> = sites
            .iter()
            .map(|s| {
                let image = SiteIndex { n1: ni - s.n1 - s.n2, ..*s };
                lookup
                    .get(&image)
                    .copied()
                    .ok_or_else(|| Error::Geometry(format!("mirror image of {s} is not an active site")))
            })
            .collect::<Result<_>>()?;
        for (i, &j) in reflection.iter().enumerate() {
            let p = positions[i];
            if distance([n as f64 - p[0], p[1]], positions[j]) > POSITION_TOLERANCE {
                return Err(Error::Geometry(format!("mirror index map disagrees with geometry at {}", sites[i])));
            }
        }

        Ok(TrianguleneLattice { n, sites, positions, bonds, rotation, reflection, lookup })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> &[SiteIndex] {
        &self.sites
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn bonds(&self) -> &[(usize, usize)] {
        &self.bonds
    }

    /// `rotation()[i]` is the site that site `i` lands on after a
    /// counter-clockwise 2π/3 rotation about the centroid.
    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// `reflection()[i]` is the mirror image of site `i` under `x -> N - x`.
    pub fn reflection(&self) -> &[usize] {
        &self.reflection
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn index_of(&self, site: &SiteIndex) -> Option<usize> {
        self.lookup.get(site).copied()
    }

    pub fn count(&self, sub: Sublattice) -> usize {
        self.sites.iter().filter(|s| s.sublattice == sub).count()
    }

    /// Rotates a state: `(R v)[rotation[i]] = v[i]`.
    pub fn rotate<T: Copy + Default>(&self, v: &[T]) -> Vec<T> {
        permute(&self.rotation, v)
    }

    pub fn reflect<T: Copy + Default>(&self, v: &[T]) -> Vec<T> {
        permute(&self.reflection, v)
    }

    /// Applies the nearest-neighbour Hamiltonian (hopping -1 on every bond).
    pub fn apply_hamiltonian(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for &(i, j) in &self.bonds {
            out[i] -= v[j];
            out[j] -= v[i];
        }
        out
    }
}

fn permute<T: Copy + Default>(perm: &[usize], v: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); v.len()];
    for (i, &j) in perm.iter().enumerate() {
        out[j] = v[i];
    }
    out
}

fn rotation_permutation(n: usize, positions: &[[f64; 2]]) -> Result<Vec<usize>> {
    let keyed: HashMap<_, _> = positions.iter().enumerate().map(|(i, p)| (position_key(*p), i)).collect();
    let c = rotation_center_point(n);
    let (sin, cos) = (2.0 * PI / 3.0).sin_cos();
    positions
        .iter()
        .map(|p| {
            let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
            let r = [c[0] + cos * dx - sin * dy, c[1] + sin * dx + cos * dy];
            keyed
                .get(&position_key(r))
                .copied()
                .filter(|&j| distance(positions[j], r) < POSITION_TOLERANCE)
                .ok_or_else(|| Error::Geometry(format!("rotated position ({:.6}, {:.6}) matches no site", r[0], r[1])))
        })
        .collect()
}

fn rotation_center_point(n: usize) -> [f64; 2] {
    let n = n as f64;
    [0.5 * n, n / (2.0 * SQRT3)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CenterKind {
    HexagonCenter,
    AAtom,
    BAtom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationCenter {
    pub kind: CenterKind,
    pub position: [f64; 2],
    /// The site sitting on the rotation axis, if any.
    pub site: Option<SiteIndex>,
}

/// What sits at the centroid of the billiard, which depends on `N mod 3`.
pub fn rotation_center(n: usize) -> Result<RotationCenter> {
    if n < 2 {
        return Err(Error::Size(n));
    }
    let position = rotation_center_point(n);
    let ni = n as i64;
    let (kind, site) = match n % 3 {
        1 => (CenterKind::HexagonCenter, None),
        0 => (CenterKind::AAtom, Some(SiteIndex::a(ni / 3, ni / 3))),
        _ => (CenterKind::BAtom, Some(SiteIndex::b((ni + 1) / 3, (ni - 2) / 3))),
    };
    Ok(RotationCenter { kind, position, site })
}

/// Number of triangular layers, counted from the rim inwards: `ceil((N-1)/3)`.
pub fn layer_count(n: usize) -> usize {
    n.saturating_sub(1).div_ceil(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_billiard_is_one_b_site() {
        let lat = TrianguleneLattice::build(2).unwrap();
        assert_eq!(lat.sites(), &[SiteIndex::b(1, 0)]);
        assert!(lat.bonds().is_empty());
        assert_eq!(lat.rotation(), &[0]);
    }

    #[test]
    fn n6_counts() {
        let lat = TrianguleneLattice::build(6).unwrap();
        assert_eq!(lat.len(), 25);
        assert_eq!(lat.bonds().len(), 30);
        assert_eq!(lat.count(Sublattice::A), 10);
        assert_eq!(lat.count(Sublattice::B), 15);
    }

    #[test]
    fn rejects_tiny_sizes() {
        assert!(matches!(TrianguleneLattice::build(1), Err(Error::Size(1))));
        assert!(matches!(TrianguleneLattice::build(0), Err(Error::Size(0))));
        assert!(rotation_center(1).is_err());
    }

    #[test]
    fn canonical_order_is_b_then_a_by_row() {
        let lat = TrianguleneLattice::build(4).unwrap();
        let expected = [
            SiteIndex::b(1, 0),
            SiteIndex::b(2, 0),
            SiteIndex::b(3, 0),
            SiteIndex::b(1, 1),
            SiteIndex::b(2, 1),
            SiteIndex::b(1, 2),
            SiteIndex::a(1, 1),
            SiteIndex::a(2, 1),
            SiteIndex::a(1, 2),
        ];
        assert_eq!(lat.sites(), &expected);
    }

    #[test]
    fn n5_rotation_fixes_only_the_central_b_site() {
        let lat = TrianguleneLattice::build(5).unwrap();
        let fixed: Vec<_> = (0..lat.len()).filter(|&i| lat.rotation()[i] == i).collect();
        assert_eq!(fixed.len(), 1);
        assert_eq!(lat.sites()[fixed[0]], SiteIndex::b(2, 1));
    }

    #[test]
    fn center_kinds() {
        let c7 = rotation_center(7).unwrap();
        assert_eq!(c7.kind, CenterKind::HexagonCenter);
        assert_eq!(c7.site, None);
        // hexagon centres of the sheet sit at (0.5 + n1 + n2/2, (1 + 3 n2) / (2 sqrt 3))
        let on_hex_lattice = (0..10).any(|n1| {
            (0..10).any(|n2| {
                let h = [0.5 + n1 as f64 + 0.5 * n2 as f64, (1.0 + 3.0 * n2 as f64) / (2.0 * SQRT3)];
                distance(h, c7.position) < 1e-12
            })
        });
        assert!(on_hex_lattice);

        let c6 = rotation_center(6).unwrap();
        assert_eq!(c6.kind, CenterKind::AAtom);
        assert_eq!(c6.site, Some(SiteIndex::a(2, 2)));

        let c5 = rotation_center(5).unwrap();
        assert_eq!(c5.kind, CenterKind::BAtom);
        assert_eq!(c5.site, Some(SiteIndex::b(2, 1)));

        for n in 2..30 {
            let c = rotation_center(n).unwrap();
            if let Some(site) = c.site {
                assert!(distance(site.position(), c.position) < 1e-12, "N={n}");
            }
        }
    }

    #[test]
    fn layers() {
        assert_eq!(layer_count(8), 3);
        assert_eq!(layer_count(2), 1);
        assert_eq!(layer_count(6), 2);
        assert_eq!(layer_count(4), 1);
        assert_eq!(layer_count(5), 2);
    }

    #[test]
    fn counting_formulas_hold_up_to_40() {
        for n in 2..=40 {
            let lat = TrianguleneLattice::build(n).unwrap();
            assert_eq!(lat.len(), (n - 1) * (n - 1));
            assert_eq!(lat.count(Sublattice::A), (n - 1) * (n - 2) / 2);
            assert_eq!(lat.count(Sublattice::B), n * (n - 1) / 2);
            assert_eq!(2 * lat.bonds().len(), 3 * (n - 1) * (n - 2));
        }
    }

    #[test]
    fn bonds_are_bipartite_with_unit_length() {
        for n in 2..=15 {
            let lat = TrianguleneLattice::build(n).unwrap();
            for &(i, j) in lat.bonds() {
                assert_ne!(lat.sites()[i].sublattice, lat.sites()[j].sublattice);
                let d = distance(lat.positions()[i], lat.positions()[j]);
                assert!((d - 1.0 / SQRT3).abs() < 1e-12);
            }
            let mut degree = vec![0; lat.len()];
            for &(i, j) in lat.bonds() {
                degree[i] += 1;
                degree[j] += 1;
            }
            for (s, d) in lat.sites().iter().zip(&degree) {
                if s.sublattice == Sublattice::A {
                    assert_eq!(*d, 3);
                }
            }
        }
    }

    #[test]
    fn permutations_are_group_generators() {
        for n in 2..=20 {
            let lat = TrianguleneLattice::build(n).unwrap();
            let ids: Vec<usize> = (0..lat.len()).collect();
            let r3 = lat.rotate(&lat.rotate(&lat.rotate(&ids)));
            assert_eq!(r3, ids);
            assert_eq!(lat.reflect(&lat.reflect(&ids)), ids);
            for i in 0..lat.len() {
                assert_eq!(lat.sites()[i].sublattice, lat.sites()[lat.rotation()[i]].sublattice);
                assert_eq!(lat.sites()[i].sublattice, lat.sites()[lat.reflection()[i]].sublattice);
            }
            let mut bonds_r: Vec<_> = lat
                .bonds()
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (lat.rotation()[i], lat.rotation()[j]);
                    (a.min(b), a.max(b))
                })
                .collect();
            bonds_r.sort_unstable();
            assert_eq!(bonds_r, lat.bonds());
            let mut bonds_m: Vec<_> = lat
                .bonds()
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (lat.reflection()[i], lat.reflection()[j]);
                    (a.min(b), a.max(b))
                })
                .collect();
            bonds_m.sort_unstable();
            assert_eq!(bonds_m, lat.bonds());
        }
    }

    #[test]
    fn nodal_lines_hold_no_active_sites() {
        for n in 2..=20 {
            let lat = TrianguleneLattice::build(n).unwrap();
            let ni = n as i64;
            for k in 0..=ni {
                assert!(!SiteIndex::a(0, k).is_active(n));
                assert!(!SiteIndex::a(k, 0).is_active(n));
                assert!(!SiteIndex::a(k, ni - k).is_active(n));
            }
            assert!(lat.sites().iter().all(|s| !s.is_nodal(n)));
        }
    }
}
