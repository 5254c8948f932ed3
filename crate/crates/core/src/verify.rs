//! Full oracle comparison at one size.

use num_complex::Complex64;
use serde::Serialize;

use crate::edge::edge_basis;
use crate::error::Result;
use crate::export::serialize_rounded;
use crate::lattice::{Sublattice, TrianguleneLattice};
use crate::oracle::{
    build_hamiltonian, chirality_deviation, completeness_residual, embedding_check, multiset_deviation,
    numerical_spectrum, ORACLE_MAX_N,
};
use crate::spectrum::{analytic_spectrum, index_set, state_counts, verify_diophantine, StateLabel};
use crate::states::periodic_basis;
use crate::vecops;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Analytic vs. oracle eigenvalues, elementwise.
    pub spectral: f64,
    /// Orthonormality and `|Hv|` of the edge basis.
    pub edge: f64,
    /// Edge basis spanning the numerical kernel.
    pub kernel_span: f64,
    /// Rotation eigenvalue of each edge state.
    pub symmetry: f64,
    pub completeness: f64,
    /// Patch residual of the extended periodic states.
    pub embedding: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            spectral: 1e-9,
            edge: 1e-10,
            kernel_span: 1e-9,
            symmetry: 1e-9,
            completeness: 1e-8,
            embedding: 1e-9,
        }
    }
}

impl Tolerances {
    /// Defaults with the spectral tolerance replaced.
    pub fn with_spectral(spectral: f64) -> Self {
        Tolerances { spectral, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(serialize_with = "serialize_rounded")]
    pub value: f64,
    #[serde(serialize_with = "serialize_rounded")]
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Check { name: name.to_string(), value, tolerance, pass: value < tolerance }
    }

    fn exact(name: &str, pass: bool) -> Self {
        Check { name: name.to_string(), value: if pass { 0.0 } else { 1.0 }, tolerance: 0.0, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "serialize_rounded")]
    pub max_spectral_deviation: f64,
    pub kernel_dim: usize,
    #[serde(serialize_with = "serialize_rounded")]
    pub completeness_residual: f64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

pub fn verify(n: usize, tol: &Tolerances) -> Result<VerifyReport> {
    if n > ORACLE_MAX_N {
        return Err(Error::OracleSize { n, max: ORACLE_MAX_N });
    }
    let lattice = TrianguleneLattice::build(n)?;
    let h = build_hamiltonian(&lattice);
    let numeric = numerical_spectrum(&h)?;
    let analytic = analytic_spectrum(n)?;
    let mut checks = Vec::new();

    let counts = state_counts(n);
    checks.push(Check::exact(
        "counting",
        counts.total == lattice.len()
            && counts.interior * 4 + counts.axial * 2 == counts.nonzero
            && counts.nonzero + counts.zero == counts.total
            && analytic.total_states() == counts.total
            && analytic.zero_modes() == counts.zero,
    ));
    checks.push(Check::exact(
        "trace moments",
        h.trace() == 0.0 && h.trace_squared() == (3 * (n - 1) * (n - 2)) as f64 && h.trace_cubed() == 0.0,
    ));

    let max_spectral_deviation = multiset_deviation(&analytic.energies(), &numeric.values);
    checks.push(Check::below("spectrum", max_spectral_deviation, tol.spectral));
    checks.push(Check::below("chirality", chirality_deviation(&numeric.values), tol.spectral));
    checks.push(Check::below("eigenvector residual", numeric.max_residual(&h), 1e-10));
    let kernel_dim = numeric.kernel_dim();
    checks.push(Check::exact("kernel dimension", kernel_dim == n - 1));

    checks.push(Check::exact("diophantine", index_set(n).iter().all(|pt| verify_diophantine(pt.q, pt.p, n))));

    let edges = edge_basis(&lattice)?;
    let mut ortho = 0.0f64;
    let mut hv = 0.0f64;
    let mut a_amp = 0.0f64;
    let mut rot = 0.0f64;
    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    for (i, u) in edges.states.iter().enumerate() {
        for (j, v) in edges.states.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((vecops::inner(&u.amplitudes, &v.amplitudes) - target).norm());
        }
        hv = hv.max(vecops::norm(&lattice.apply_hamiltonian(&u.amplitudes)));
        for (site, a) in lattice.sites().iter().zip(&u.amplitudes) {
            if site.sublattice == Sublattice::A {
                a_amp = a_amp.max(a.norm());
            }
        }
        if let StateLabel::Edge(label) = u.label {
            let expected: Vec<_> = u.amplitudes.iter().map(|x| z.powi(label.q) * x).collect();
            rot = rot.max(vecops::max_abs_diff(&lattice.rotate(&u.amplitudes), &expected));
        }
    }
    checks.push(Check::exact("edge count", edges.states.len() == n - 1));
    checks.push(Check::below("edge orthonormality", ortho, tol.edge));
    checks.push(Check::below("edge |Hv|", hv, tol.edge));
    checks.push(Check::below("edge A amplitudes", a_amp, 1e-12));
    checks.push(Check::below("edge rotation eigenvalue", rot, tol.symmetry));
    let basis: Vec<&[Complex64]> = edges.states.iter().map(|s| s.amplitudes.as_slice()).collect();
    let span = numeric.kernel().iter().map(|k| vecops::span_residual(k, &basis)).fold(0.0, f64::max);
    checks.push(Check::below("kernel span", span, tol.kernel_span));

    let mut all = periodic_basis(&lattice)?;
    let periodic_residual = all.iter().map(|s| s.residual(&lattice)).fold(0.0, f64::max);
    checks.push(Check::below("periodic residual", periodic_residual, tol.edge));
    all.extend(edges.states);
    let completeness = completeness_residual(&all, lattice.len())?;
    checks.push(Check::below("completeness", completeness, tol.completeness));

    let mut embedding = 0.0f64;
    for point in index_set(n) {
        let qn = point.labels()[0];
        embedding = embedding.max(embedding_check(&qn, n, 3)?.residual());
    }
    checks.push(Check::below("embedding", embedding, tol.embedding));

    Ok(VerifyReport {
        n,
        max_spectral_deviation,
        kernel_dim,
        completeness_residual: completeness,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}
