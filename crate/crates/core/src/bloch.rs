//! Plane waves on the infinite sheet: structure factor, dispersion and the
//! twelve-member symmetry star of a wave vector.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::lattice::SQRT3;

/// Wave vector in lattice components `k1 = k.a1`, `k2 = k.a2` (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KPoint {
    pub k1: f64,
    pub k2: f64,
}

impl KPoint {
    pub const fn new(k1: f64, k2: f64) -> Self {
        KPoint { k1, k2 }
    }

    pub fn from_cartesian(kx: f64, ky: f64) -> Self {
        KPoint { k1: kx, k2: 0.5 * kx + 0.5 * SQRT3 * ky }
    }

    pub fn kx(&self) -> f64 {
        self.k1
    }

    pub fn ky(&self) -> f64 {
        (2.0 * self.k2 - self.k1) / SQRT3
    }

    /// `k . (n1 a1 + n2 a2)`
    pub fn phase_at(&self, n1: i64, n2: i64) -> f64 {
        self.k1 * n1 as f64 + self.k2 * n2 as f64
    }

    /// Counter-clockwise rotation by 2π/3, as an integer map on `(k1, k2)`.
    pub fn rotated(&self) -> Self {
        KPoint { k1: -self.k2, k2: self.k1 - self.k2 }
    }

    /// Mirror about the x axis.
    pub fn mirrored(&self) -> Self {
        KPoint { k1: self.k1, k2: self.k1 - self.k2 }
    }

    /// Mirror about the y axis; unlike [`KPoint::mirrored`] it leaves α unchanged.
    pub fn y_mirrored(&self) -> Self {
        KPoint { k1: -self.k1, k2: self.k2 - self.k1 }
    }

    pub fn negated(&self) -> Self {
        KPoint { k1: -self.k1, k2: -self.k2 }
    }

    /// Shift by the reciprocal vector `4π(m1 a1 + m2 a2)`.
    pub fn translated(&self, m1: i64, m2: i64) -> Self {
        let (m1, m2) = (m1 as f64, m2 as f64);
        KPoint { k1: self.k1 + 4.0 * PI * m1 + 2.0 * PI * m2, k2: self.k2 + 2.0 * PI * m1 + 4.0 * PI * m2 }
    }

    pub fn distance(&self, other: &KPoint) -> f64 {
        (self.kx() - other.kx()).hypot(self.ky() - other.ky())
    }
}

/// Structure factor `1 + exp(-i(k2 - k1)) + exp(-i k2)`. Its modulus is the
/// band energy and its argument the spinor phase.
pub fn alpha(k: KPoint) -> Complex64 {
    Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -(k.k2 - k.k1)) + Complex64::from_polar(1.0, -k.k2)
}

/// Upper band `E+(k)`, in the sum-of-squares form that stays accurate near
/// the Dirac points.
pub fn dispersion(k: KPoint) -> f64 {
    let half_x = 0.5 * k.kx();
    let half_y = 0.5 * SQRT3 * k.ky();
    let c = 2.0 * half_x.cos() + half_y.cos();
    (half_y.sin().powi(2) + c * c).sqrt()
}

/// The three algebraically equivalent forms of `E+(k)` in Cartesian
/// components, in the order: cosine sum, squared cosine form, sum of squares.
pub fn dispersion_forms(k: KPoint) -> [f64; 3] {
    let (kx, ky) = (k.kx(), k.ky());
    let first = 3.0 + 2.0 * kx.cos() + 2.0 * (0.5 * (kx + SQRT3 * ky)).cos() + 2.0 * (0.5 * (kx - SQRT3 * ky)).cos();
    let (cx, cy) = ((0.5 * kx).cos(), (0.5 * SQRT3 * ky).cos());
    let second = 1.0 + 4.0 * cx * cx + 4.0 * cx * cy;
    [first.max(0.0).sqrt(), second.max(0.0).sqrt(), dispersion(k)]
}

/// Samples `E+` on a regular `points x points` grid spanning the hexagonal
/// Brillouin zone's bounding box. Rows are `(kx, ky, E)`.
pub fn dispersion_grid(points: usize) -> Vec<[f64; 3]> {
    let (xmax, ymax) = (4.0 * PI / 3.0, 2.0 * PI / SQRT3);
    let step = |i: usize, max: f64| {
        if points < 2 {
            0.0
        } else {
            -max + 2.0 * max * i as f64 / (points - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(points * points);
    for j in 0..points {
        for i in 0..points {
            let (kx, ky) = (step(i, xmax), step(j, ymax));
            out.push([kx, ky, dispersion(KPoint::from_cartesian(kx, ky))]);
        }
    }
    out
}

/// The twelve images of `k` under C6v: `{±k, ±Rk, ±R²k, ±ρk, ±Rρk, ±R²ρk}`
/// with `ρ` the x-axis mirror. `Rρ` means mirror first, then rotate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarMember {
    K,
    RK,
    R2K,
    RhoK,
    RRhoK,
    R2RhoK,
    NegK,
    NegRK,
    NegR2K,
    NegRhoK,
    NegRRhoK,
    NegR2RhoK,
}

impl StarMember {
    pub const ALL: [StarMember; 12] = [
        StarMember::K,
        StarMember::RK,
        StarMember::R2K,
        StarMember::RhoK,
        StarMember::RRhoK,
        StarMember::R2RhoK,
        StarMember::NegK,
        StarMember::NegRK,
        StarMember::NegR2K,
        StarMember::NegRhoK,
        StarMember::NegRRhoK,
        StarMember::NegR2RhoK,
    ];

    fn parts(self) -> (u8, bool, bool) {
        use StarMember::*;
        match self {
            K => (0, false, false),
            RK => (1, false, false),
            R2K => (2, false, false),
            RhoK => (0, true, false),
            RRhoK => (1, true, false),
            R2RhoK => (2, true, false),
            NegK => (0, false, true),
            NegRK => (1, false, true),
            NegR2K => (2, false, true),
            NegRhoK => (0, true, true),
            NegRRhoK => (1, true, true),
            NegR2RhoK => (2, true, true),
        }
    }

    pub fn apply(self, k: KPoint) -> KPoint {
        let (turns, mirror, negate) = self.parts();
        let mut out = if mirror { k.mirrored() } else { k };
        for _ in 0..turns {
            out = out.rotated();
        }
        if negate {
            out.negated()
        } else {
            out
        }
    }

    /// Closed form of `arg α(member)` in terms of `arg α(k)`.
    pub fn phase(self, k: KPoint, arg: f64) -> f64 {
        let (turns, mirror, negate) = self.parts();
        let (k1, k2) = (k.k1, k.k2);
        let phi = match (turns, mirror) {
            (0, false) => arg,
            (1, false) => arg + k2 - k1,
            (2, false) => arg + k2,
            (0, true) => -arg,
            (1, true) => -arg - k2,
            _ => -arg + k1 - k2,
        };
        if negate {
            -phi
        } else {
            phi
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarPoint {
    pub k: KPoint,
    pub phase: f64,
    pub member: StarMember,
}

#[derive(Debug, Clone)]
pub struct Star {
    pub points: Vec<StarPoint>,
    /// Set when two members coincide (k on a symmetry line of the zone).
    pub degenerate: bool,
}

/// Coincidence threshold for star members.
pub const STAR_COINCIDENCE: f64 = 1e-9;

pub fn star(k: KPoint) -> Star {
    let arg = alpha(k).arg();
    let points: Vec<StarPoint> = StarMember::ALL
        .iter()
        .map(|&member| StarPoint { k: member.apply(k), phase: member.phase(k, arg), member })
        .collect();
    let degenerate =
        points.iter().enumerate().any(|(i, a)| points[i + 1..].iter().any(|b| a.k.distance(&b.k) < STAR_COINCIDENCE));
    Star { points, degenerate }
}
