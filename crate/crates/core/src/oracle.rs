//! Brute-force ground truth: the dense Hamiltonian and its full
//! diagonalization, completeness of a state set, the patch check on the
//! infinite sheet, and the open chain.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::bloch::KPoint;
use crate::error::{Error, Result};
use crate::lattice::TrianguleneLattice;
use crate::spectrum::{quantized_k, Band, Branch, QuantumNumbers};
use crate::states::{extend_superposition, BlochSuperposition, ExtendedField, StateVector, Window};

/// Largest size the dense oracle accepts (1521 x 1521).
pub const ORACLE_MAX_N: usize = 40;

/// Eigenvalues with `|λ|` below this are counted as zero modes.
pub const KERNEL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub n: usize,
    pub matrix: DMatrix<f64>,
    adjacency: Vec<Vec<usize>>,
}

impl HamiltonianMatrix {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn trace_squared(&self) -> f64 {
        self.matrix.iter().map(|h| h * h).sum()
    }

    /// `tr H³`, summed over closed three-step walks.
    pub fn trace_cubed(&self) -> f64 {
        let h = &self.matrix;
        let mut t = 0.0;
        for (i, nbs) in self.adjacency.iter().enumerate() {
            for &j in nbs {
                for &k in &self.adjacency[j] {
                    t += h[(i, j)] * h[(j, k)] * h[(k, i)];
                }
            }
        }
        t
    }
}

pub fn build_hamiltonian(lattice: &TrianguleneLattice) -> HamiltonianMatrix {
    let dim = lattice.len();
    let mut matrix = DMatrix::zeros(dim, dim);
    let mut adjacency = vec![Vec::new(); dim];
    for &(i, j) in lattice.bonds() {
        matrix[(i, j)] = -1.0;
        matrix[(j, i)] = -1.0;
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    HamiltonianMatrix { n: lattice.size(), matrix, adjacency }
}

/// Sorted eigenvalues and the matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct NumericalSpectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl NumericalSpectrum {
    pub fn kernel_dim(&self) -> usize {
        self.values.iter().filter(|v| v.abs() < KERNEL_TOLERANCE).count()
    }

    /// Orthonormal basis of the numerical kernel.
    pub fn kernel(&self) -> Vec<Vec<Complex64>> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() < KERNEL_TOLERANCE)
            .map(|(i, _)| self.vectors.column(i).iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect()
    }

    /// Largest `|H v - λ v|` over all eigenpairs.
    pub fn max_residual(&self, h: &HamiltonianMatrix) -> f64 {
        let hv = &h.matrix * &self.vectors;
        let mut worst = 0.0f64;
        for (c, &lambda) in self.values.iter().enumerate() {
            let r = (hv.column(c) - self.vectors.column(c) * lambda).amax();
            worst = worst.max(r);
        }
        worst
    }
}

fn sorted_eigen(m: DMatrix<f64>) -> Result<NumericalSpectrum> {
    let dim = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0)
        .ok_or_else(|| Error::Oracle(format!("eigensolver did not converge ({dim} x {dim})")))?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(NumericalSpectrum { values, vectors })
}

pub fn numerical_spectrum(h: &HamiltonianMatrix) -> Result<NumericalSpectrum> {
    if h.n > ORACLE_MAX_N {
        return Err(Error::OracleSize { n: h.n, max: ORACLE_MAX_N });
    }
    sorted_eigen(h.matrix.clone())
}

/// Builds and diagonalizes the Hamiltonian of the size-`n` billiard.
pub fn oracle_spectrum(n: usize) -> Result<NumericalSpectrum> {
    if n > ORACLE_MAX_N {
        return Err(Error::OracleSize { n, max: ORACLE_MAX_N });
    }
    numerical_spectrum(&build_hamiltonian(&TrianguleneLattice::build(n)?))
}

/// Largest elementwise gap between two spectra compared as sorted
/// multisets; infinite when the sizes differ.
pub fn multiset_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Largest gap between the spectrum and its mirror image `E -> -E`.
pub fn chirality_deviation(values: &[f64]) -> f64 {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    multiset_deviation(values, &negated)
}

/// `max |Σ |v><v| - 1|` over the given states, which must number `dim`.
pub fn completeness_residual(states: &[StateVector], dim: usize) -> Result<f64> {
    if states.len() != dim {
        return Err(Error::Count { expected: dim, found: states.len() });
    }
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..=i {
            let s: Complex64 = states.iter().map(|v| v.amplitudes[i] * v.amplitudes[j].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).norm());
        }
    }
    Ok(worst)
}

/// Residuals of a Bloch superposition laid over a patch of the sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingReport {
    /// Largest `|(H - E) ψ|` over the full sheet.
    pub sheet_residual: f64,
    /// Same, with nodal sites removed, so each triangle stands alone.
    pub decoupled_residual: f64,
    /// Largest amplitude on a nodal line image.
    pub nodal_max: f64,
    /// Sites whose neighbours all lie in the patch.
    pub checked_sites: usize,
}

impl EmbeddingReport {
    pub fn residual(&self) -> f64 {
        self.sheet_residual.max(self.decoupled_residual).max(self.nodal_max)
    }
}

fn report(field: &ExtendedField) -> EmbeddingReport {
    let mut sheet = 0.0f64;
    let mut decoupled = 0.0f64;
    let mut checked = 0;
    for i in 0..field.sites.len() {
        if let Some(r) = field.sheet_residual_at(i) {
            sheet = sheet.max(r);
            checked += 1;
        }
        if let Some(r) = field.decoupled_residual_at(i) {
            decoupled = decoupled.max(r);
        }
    }
    EmbeddingReport {
        sheet_residual: sheet,
        decoupled_residual: decoupled,
        nodal_max: field.nodal_max(),
        checked_sites: checked,
    }
}

/// Places a superposition built at an arbitrary `k` on a
/// `supercell x supercell` patch. Only quantized `k` give a clean report.
pub fn embedding_check_at(
    k: KPoint,
    band: Band,
    branch: Branch,
    n: usize,
    supercell: usize,
) -> Result<EmbeddingReport> {
    if supercell < 2 {
        return Err(Error::Oracle(format!("supercell must be at least 2, got {supercell}")));
    }
    let sup = BlochSuperposition::new(k, band, branch);
    Ok(report(&extend_superposition(&sup, n, &Window::supercells(n, supercell))))
}

pub fn embedding_check(qn: &QuantumNumbers, n: usize, supercell: usize) -> Result<EmbeddingReport> {
    QuantumNumbers::new(qn.q, qn.p, qn.band, qn.branch, n)?;
    embedding_check_at(quantized_k(qn.q, qn.p, n), qn.band, qn.branch, n, supercell)
}

/// The `m`-site open chain with unit hopping.
#[derive(Debug, Clone)]
pub struct ChainSpectrum {
    /// `2 cos(πj/(m+1))` for `j = 1..m`, in ascending order.
    pub values: Vec<f64>,
    /// `sqrt(2/(m+1)) sin(πjs/(m+1))`, one vector per value.
    pub vectors: Vec<Vec<f64>>,
}

pub fn chain_reference(m: usize) -> Result<ChainSpectrum> {
    if m == 0 {
        return Err(Error::Size(0));
    }
    let step = std::f64::consts::PI / (m + 1) as f64;
    let amp = (2.0 / (m + 1) as f64).sqrt();
    let mut pairs: Vec<(f64, Vec<f64>)> = (1..=m)
        .map(|j| {
            let v = (1..=m).map(|s| amp * (step * (j * s) as f64).sin()).collect();
            (2.0 * (step * j as f64).cos(), v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(ChainSpectrum { values, vectors })
}

pub fn path_graph_matrix(m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, m, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 })
}

/// Dense diagonalization of the path graph, sorted.
pub fn chain_oracle(m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::Size(0));
    }
    Ok(sorted_eigen(path_graph_matrix(m))?.values)
}
