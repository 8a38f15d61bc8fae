//! Floating-point certification of codes inside tensor powers of a matrix
//! group: isotypic projection, code extraction, Knill–Laflamme and
//! transversality checks.

use std::collections::{HashMap, HashSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chartab::{table_from_classes, CharacterTable, ChartabError};
use crate::cyclotomic::Cyclotomic;
use crate::permgroup::{ClassData, Permutation};

pub type CycMatrix = Vec<Vec<Cyclotomic>>;
pub type CMatrix = DMatrix<Complex64>;

/// Default ceiling on the order of an expanded matrix group.
pub const DEFAULT_EXPANSION_CAP: usize = 20_000;
/// Largest ambient dimension `qⁿ` handled by the projector.
pub const MAX_AMBIENT_DIM: usize = 4096;

const DEDUP_SCALE: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("matrix generator {index} is not {dim}x{dim}")]
    Shape { index: usize, dim: usize },
    #[error("matrix generator {0} is not unitary")]
    NotUnitary(usize),
    #[error("matrix group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("matrix group has {found} elements but {declared} were declared")]
    OrderMismatch { declared: u64, found: usize },
    #[error("ambient dimension {dim} exceeds the limit {limit}")]
    DimensionGuard { dim: usize, limit: usize },
    #[error("λ has multiplicity zero in the tensor power (trace {trace:.3e})")]
    MultiplicityZero { trace: f64 },
    #[error("projector rank {found} does not match its trace {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("commutant eigenvalues are degenerate after {0} attempts")]
    DegenerateSplit(usize),
    #[error("no row of the computed table matches the representation's character")]
    CharacterNotFound,
    #[error("character table computation failed: {0}")]
    Table(String),
}

impl From<ChartabError> for VerifyError {
    fn from(e: ChartabError) -> Self {
        VerifyError::Table(e.to_string())
    }
}

/// A finite unitary matrix group given by exact generators.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    pub name: String,
    pub dim: usize,
    pub declared_order: Option<u64>,
    pub generators: Vec<CycMatrix>,
    complex: Vec<CMatrix>,
}

impl MatrixRep {
    /// Checks shapes and exact unitarity of every generator.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        declared_order: Option<u64>,
        generators: Vec<CycMatrix>,
    ) -> Result<Self, VerifyError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != dim || g.iter().any(|r| r.len() != dim) {
                return Err(VerifyError::Shape { index, dim });
            }
            for i in 0..dim {
                for j in 0..dim {
                    let s: Cyclotomic = (0..dim).map(|k| &g[i][k] * &g[j][k].conj()).sum();
                    let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                    if s != expected {
                        return Err(VerifyError::NotUnitary(index));
                    }
                }
            }
        }
        let complex = generators
            .iter()
            .map(|g| CMatrix::from_fn(dim, dim, |i, j| g[i][j].to_complex()))
            .collect();
        Ok(MatrixRep { name: name.into(), dim, declared_order, generators, complex })
    }

    pub fn complex_generators(&self) -> &[CMatrix] {
        &self.complex
    }
}

/// Every element of a matrix group with its right Cayley graph.
pub struct ExpandedGroup {
    pub elements: Vec<CMatrix>,
    /// `right_mul[x][s]` is the index of `x·g_s`
    pub right_mul: Vec<Vec<u32>>,
    /// breadth-first tree: `(parent, generator)`; the identity has no parent
    pub parent: Vec<Option<(u32, u32)>>,
}

impl ExpandedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Extends a homomorphism given on generators to every element.
    pub fn extend<T: Clone>(&self, identity: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(self.order());
        for p in &self.parent {
            let v = match p {
                None => identity.clone(),
                Some((x, s)) => mul(&out[*x as usize], &gens[*s as usize]),
            };
            out.push(v);
        }
        out
    }
}

fn dedup_key(m: &CMatrix) -> Vec<i64> {
    m.iter()
        .flat_map(|z| [(z.re * DEDUP_SCALE).round() as i64, (z.im * DEDUP_SCALE).round() as i64])
        .collect()
}

/// Closure of the generators under multiplication.
pub fn expand_group(rep: &MatrixRep, cap: usize) -> Result<ExpandedGroup, VerifyError> {
    let gens = rep.complex_generators();
    let id = CMatrix::identity(rep.dim, rep.dim);
    let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
    index.insert(dedup_key(&id), 0);
    let mut elements = vec![id];
    let mut parent = vec![None];
    let mut right_mul: Vec<Vec<u32>> = Vec::new();
    let mut k = 0;
    while k < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, g) in gens.iter().enumerate() {
            let y = &elements[k] * g;
            let key = dedup_key(&y);
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if elements.len() >= cap {
                        return Err(VerifyError::CapExceeded { cap });
                    }
                    let j = elements.len() as u32;
                    index.insert(key, j);
                    elements.push(y);
                    parent.push(Some((k as u32, s as u32)));
                    j
                }
            };
            row.push(j);
        }
        right_mul.push(row);
        k += 1;
    }
    if let Some(declared) = rep.declared_order {
        if declared as usize != elements.len() {
            return Err(VerifyError::OrderMismatch { declared, found: elements.len() });
        }
    }
    Ok(ExpandedGroup { elements, right_mul, parent })
}

/// Generators acting on the union of the orbits of the standard basis row
/// vectors under `v ↦ v·g`; the action is faithful.
pub fn orbit_permutations(rep: &MatrixRep) -> Vec<Permutation> {
    let gens = rep.complex_generators();
    let q = rep.dim;
    let key = |v: &[Complex64]| -> Vec<i64> {
        v.iter()
            .flat_map(|z| [(z.re * DEDUP_SCALE).round() as i64, (z.im * DEDUP_SCALE).round() as i64])
            .collect()
    };
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for i in 0..q {
        let mut e = vec![Complex64::new(0.0, 0.0); q];
        e[i] = Complex64::new(1.0, 0.0);
        if index.insert(key(&e), points.len()).is_none() {
            points.push(e);
        }
    }
    let act = |v: &[Complex64], g: &CMatrix| -> Vec<Complex64> {
        (0..q).map(|j| (0..q).map(|i| v[i] * g[(i, j)]).sum()).collect()
    };
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut k = 0;
    while k < points.len() {
        for (s, g) in gens.iter().enumerate() {
            let w = act(&points[k], g);
            let kw = key(&w);
            let j = match index.get(&kw) {
                Some(&j) => j,
                None => {
                    index.insert(kw, points.len());
                    points.push(w);
                    points.len() - 1
                }
            };
            images[s].push(j as u32);
        }
        k += 1;
    }
    images
        .into_iter()
        .map(|im| Permutation::from_images(im).expect("group action permutes the orbit"))
        .collect()
}

/// Conjugacy classes of an expanded matrix group; element `i` of the result
/// corresponds to `group.elements[i]`.
pub fn class_data(rep: &MatrixRep, group: &ExpandedGroup) -> ClassData {
    let gen_perms = orbit_permutations(rep);
    let degree = gen_perms.first().map_or(rep.dim, |g| g.degree());
    let perms = group.extend(Permutation::identity(degree), &gen_perms, |a, b| a.then(b));
    ClassData::from_elements(perms, &gen_perms)
}

/// A matrix group together with its classes, character table and the row
/// carrying the character of the defining representation.
pub struct RepAnalysis {
    pub group: ExpandedGroup,
    pub classes: ClassData,
    pub table: CharacterTable,
    pub f_row: usize,
}

impl RepAnalysis {
    /// Values of table row `row` on every group element.
    pub fn element_values(&self, row: usize) -> Vec<Complex64> {
        let vals: Vec<Complex64> = self.table.characters[row].iter().map(|v| v.to_complex()).collect();
        self.classes.class_of.iter().map(|&c| vals[c as usize]).collect()
    }
}

pub fn analyse(rep: &MatrixRep, cap: usize) -> Result<RepAnalysis, VerifyError> {
    let group = expand_group(rep, cap)?;
    let classes = class_data(rep, &group);
    let table = table_from_classes(&classes, &rep.name)?;
    let traces: Vec<Complex64> = classes
        .class_reps
        .iter()
        .map(|r| {
            let i = classes.element_index(r).unwrap();
            group.elements[i].trace()
        })
        .collect();
    let f_row = (0..table.n_characters())
        .find(|&i| {
            table.characters[i]
                .iter()
                .zip(&traces)
                .all(|(v, t)| (v.to_complex() - t).norm() < 1e-6)
        })
        .ok_or(VerifyError::CharacterNotFound)?;
    Ok(RepAnalysis { group, classes, table, f_row })
}

/// Applies `ops[s]` to tensor factor `s` of a vector in `(C^q)^{⊗n}`.
pub fn apply_product(ops: &[&CMatrix], q: usize, v: &[Complex64]) -> Vec<Complex64> {
    let n = ops.len();
    let mut cur = v.to_vec();
    let mut next = vec![Complex64::new(0.0, 0.0); v.len()];
    let mut buf = vec![Complex64::new(0.0, 0.0); q];
    for (s, op) in ops.iter().enumerate() {
        let post = q.pow((n - 1 - s) as u32);
        let pre = q.pow(s as u32);
        for x in 0..pre {
            for y in 0..post {
                for (j, b) in buf.iter_mut().enumerate() {
                    *b = cur[(x * q + j) * post + y];
                }
                for i in 0..q {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, b) in buf.iter().enumerate() {
                        acc += op[(i, j)] * b;
                    }
                    next[(x * q + i) * post + y] = acc;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

fn apply_power(f: &CMatrix, n: usize, v: &[Complex64]) -> Vec<Complex64> {
    let ops = vec![f; n];
    apply_product(&ops, f.nrows(), v)
}

fn apply_power_block(f: &CMatrix, n: usize, block: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(block.nrows(), block.ncols());
    for c in 0..block.ncols() {
        let col: Vec<Complex64> = block.column(c).iter().copied().collect();
        let w = apply_power(f, n, &col);
        out.column_mut(c).copy_from_slice(&w);
    }
    out
}

/// The λ-isotypic projector `(K/|G|)·Σ conj(λ(g))·f(g)^{⊗n}`, applied
/// implicitly.
pub struct IsotypicProjector<'a> {
    elements: &'a [CMatrix],
    weights: Vec<Complex64>,
    pub n: usize,
    pub q: usize,
    pub k: usize,
    /// `tr P` from the character values
    pub trace: f64,
}

impl<'a> IsotypicProjector<'a> {
    pub fn ambient_dim(&self) -> usize {
        self.q.pow(self.n as u32)
    }

    pub fn apply(&self, block: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(block.nrows(), block.ncols());
        for (g, w) in self.elements.iter().zip(&self.weights) {
            if w.norm() < 1e-14 {
                continue;
            }
            out += apply_power_block(g, self.n, block) * *w;
        }
        out
    }

    /// Multiplicity `tr P / K` rounded to the nearest integer.
    pub fn multiplicity(&self) -> usize {
        (self.trace / self.k as f64).round() as usize
    }
}

pub fn isotypic_projector<'a>(
    group: &'a ExpandedGroup,
    lambda_values: &[Complex64],
    k: usize,
    n: usize,
) -> Result<IsotypicProjector<'a>, VerifyError> {
    let q = group.elements[0].nrows();
    let dim = q.checked_pow(n as u32).unwrap_or(usize::MAX);
    if dim > MAX_AMBIENT_DIM {
        return Err(VerifyError::DimensionGuard { dim, limit: MAX_AMBIENT_DIM });
    }
    let scale = k as f64 / group.order() as f64;
    let weights: Vec<Complex64> = lambda_values.iter().map(|l| l.conj() * scale).collect();
    let trace: f64 = group
        .elements
        .iter()
        .zip(&weights)
        .map(|(g, w)| w * g.trace().powu(n as u32))
        .sum::<Complex64>()
        .re;
    let p = IsotypicProjector { elements: &group.elements, weights, n, q, k, trace };
    if trace < 0.5 {
        return Err(VerifyError::MultiplicityZero { trace });
    }
    Ok(p)
}

fn random_block(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Orthonormal basis of the column span, dropping numerically dependent columns.
fn orthonormalize(block: &CMatrix, rel_tol: f64) -> CMatrix {
    let mut basis: Vec<nalgebra::DVector<Complex64>> = Vec::new();
    for c in 0..block.ncols() {
        let mut v = block.column(c).clone_owned();
        let norm0 = v.norm();
        if norm0 == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in &basis {
                let coef = b.dotc(&v);
                v -= b * coef;
            }
        }
        let norm = v.norm();
        if norm > rel_tol * norm0 {
            basis.push(v / Complex64::new(norm, 0.0));
        }
    }
    if basis.is_empty() {
        return CMatrix::zeros(block.nrows(), 0);
    }
    CMatrix::from_columns(&basis)
}

/// Range of the projector together with residual diagnostics.
pub struct ProjectorRange {
    pub basis: CMatrix,
    /// `max(‖PB − B‖, ‖P(1 − BB†)V‖)` over random probes `V`
    pub idempotency_residual: f64,
}

pub fn projector_range(p: &IsotypicProjector, rng: &mut ChaCha8Rng) -> Result<ProjectorRange, VerifyError> {
    let dim = p.ambient_dim();
    let rank = p.trace.round() as usize;
    let probes = random_block(dim, (rank + 4).min(dim), rng);
    let image = p.apply(&probes);
    let basis = orthonormalize(&image, 1e-6);
    if basis.ncols() != rank {
        return Err(VerifyError::RankMismatch { expected: rank, found: basis.ncols() });
    }
    let pb = p.apply(&basis);
    let r1 = (&pb - &basis).norm();
    let fresh = random_block(dim, 2, rng);
    let outside = &fresh - &basis * (basis.adjoint() * &fresh);
    let r2 = p.apply(&outside).norm();
    Ok(ProjectorRange { basis, idempotency_residual: r1.max(r2) })
}

/// One `K`-dimensional λ-subrepresentation inside the range `basis`.
pub fn extract_code(
    range: &CMatrix,
    group: &ExpandedGroup,
    rep: &MatrixRep,
    n: usize,
    k: usize,
    tol: f64,
    rng: &mut ChaCha8Rng,
) -> Result<CMatrix, VerifyError> {
    let r = range.ncols();
    if r == k {
        return Ok(range.clone());
    }
    let restricted: Vec<CMatrix> = rep
        .complex_generators()
        .iter()
        .map(|g| range.adjoint() * apply_power_block(g, n, range))
        .collect();
    let all = group.extend(CMatrix::identity(r, r), &restricted, |a, b| a * b);
    for _ in 0..5 {
        let h = random_block(r, r, rng);
        let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let mut t = CMatrix::zeros(r, r);
        for rg in &all {
            t += rg * &h * rg.adjoint();
        }
        t /= Complex64::new(all.len() as f64, 0.0);
        let eig = t.symmetric_eigen();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let clusters_ok = (0..r / k).all(|c| vals[c * k + k - 1] - vals[c * k] < tol);
        let gaps_ok = (1..r / k).all(|c| vals[c * k] - vals[c * k - 1] > 10.0 * tol);
        if clusters_ok && gaps_ok {
            let cols: Vec<_> = order[..k].iter().map(|&i| eig.eigenvectors.column(i).clone_owned()).collect();
            let v = CMatrix::from_columns(&cols);
            return Ok(range * v);
        }
    }
    Err(VerifyError::DegenerateSplit(5))
}

/// Row index of a basis state with digit `a` inserted at `site`.
fn insert_digit(rest: usize, site: usize, a: usize, q: usize, n: usize) -> usize {
    let post = q.pow((n - 1 - site) as u32);
    let hi = rest / post;
    let lo = rest % post;
    (hi * q + a) * post + lo
}

fn kl_deviation(m: &CMatrix) -> f64 {
    let k = m.nrows();
    let mean = m.trace() / k as f64;
    let mut d = m.clone();
    for i in 0..k {
        d[(i, i)] -= mean;
    }
    d.norm()
}

/// Knill–Laflamme residuals for weights `1..=w` over matrix-unit errors;
/// entry `w-1` is the maximum over all errors of weight at most `w`.
pub fn check_knill_laflamme(c: &CMatrix, n: usize, q: usize, w: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    if w >= 1 {
        let rest = q.pow((n - 1) as u32);
        for site in 0..n {
            let slices: Vec<CMatrix> = (0..q)
                .map(|a| c.select_rows((0..rest).map(|r| insert_digit(r, site, a, q, n)).collect::<Vec<_>>().iter()))
                .collect();
            for a in 0..q {
                for b in 0..q {
                    worst = worst.max(kl_deviation(&(slices[a].adjoint() * &slices[b])));
                }
            }
        }
        out.push(worst);
    }
    if w >= 2 && n >= 2 {
        let rest = q.pow((n - 2) as u32);
        for s in 0..n {
            for t in s + 1..n {
                let slices: Vec<CMatrix> = (0..q * q)
                    .map(|ac| {
                        let (a, cc) = (ac / q, ac % q);
                        let rows: Vec<usize> = (0..rest)
                            .map(|r| {
                                // insert at t (in the n-1 digit string), then at s
                                let partial = insert_digit(r, t - 1, cc, q, n - 1);
                                insert_digit(partial, s, a, q, n)
                            })
                            .collect();
                        c.select_rows(rows.iter())
                    })
                    .collect();
                for x in 0..q * q {
                    for y in 0..q * q {
                        worst = worst.max(kl_deviation(&(slices[x].adjoint() * &slices[y])));
                    }
                }
            }
        }
        out.push(worst);
    }
    out
}

/// Transversality diagnostics for a code `c`.
pub struct TransversalReport {
    /// `max_g ‖f(g)^{⊗n}C − C·U_g‖_F` over generators
    pub residual: f64,
    /// `max_g ‖U_g†U_g − 1‖_F` over generators
    pub unitarity_residual: f64,
    /// distinct logical operators `U_g` over the whole group
    pub logical_order: usize,
    /// distinct logical operators up to a global phase
    pub logical_order_projective: usize,
}

fn phase_key(u: &CMatrix, projective: bool) -> Vec<i64> {
    let mut m = u.clone();
    if projective {
        if let Some(z) = u.iter().find(|z| z.norm() > 1e-3) {
            m *= z.conj() / z.norm();
        }
    }
    m.iter()
        .flat_map(|z| [(z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64])
        .collect()
}

pub fn check_transversal(c: &CMatrix, rep: &MatrixRep, group: &ExpandedGroup, n: usize) -> TransversalReport {
    let k = c.ncols();
    let mut residual: f64 = 0.0;
    let mut unitarity: f64 = 0.0;
    let mut logical = Vec::new();
    for g in rep.complex_generators() {
        let fc = apply_power_block(g, n, c);
        let u = c.adjoint() * &fc;
        residual = residual.max((&fc - c * &u).norm());
        unitarity = unitarity.max((u.adjoint() * &u - CMatrix::identity(k, k)).norm());
        logical.push(u);
    }
    let all = group.extend(CMatrix::identity(k, k), &logical, |a, b| a * b);
    let exact: HashSet<Vec<i64>> = all.iter().map(|u| phase_key(u, false)).collect();
    let projective: HashSet<Vec<i64>> = all.iter().map(|u| phase_key(u, true)).collect();
    TransversalReport {
        residual,
        unitarity_residual: unitarity,
        logical_order: exact.len(),
        logical_order_projective: projective.len(),
    }
}

/// A random isometry `dim × k`, used as a negative control.
pub fn random_isometry(dim: usize, k: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    orthonormalize(&random_block(dim, k, &mut rng), 1e-12)
}

/// Applies `u_s` to every site `s` of each column of `c`.
pub fn rotate_sites(c: &CMatrix, unitaries: &[CMatrix]) -> CMatrix {
    let ops: Vec<&CMatrix> = unitaries.iter().collect();
    let q = unitaries[0].nrows();
    let mut out = CMatrix::zeros(c.nrows(), c.ncols());
    for j in 0..c.ncols() {
        let col: Vec<Complex64> = c.column(j).iter().copied().collect();
        out.column_mut(j).copy_from_slice(&apply_product(&ops, q, &col));
    }
    out
}

/// Haar-ish random unitary from the QR factorisation of a random matrix.
pub fn random_unitary(q: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    orthonormalize(&random_block(q, q, rng), 1e-12)
}

/// Default tolerance `10⁻⁹·qⁿ`.
pub fn default_tol(q: usize, n: usize) -> f64 {
    1e-9 * (q as f64).powi(n as i32)
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeCertificate {
    pub group: String,
    pub group_order: usize,
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub multiplicity: usize,
    pub projector_trace: f64,
    pub projector_rank: usize,
    pub idempotency_residual: f64,
    pub isometry_residual: f64,
    pub kl_residual: Vec<f64>,
    pub transversal_residual: f64,
    pub logical_unitarity_residual: f64,
    pub logical_group_order: usize,
    pub logical_group_order_projective: usize,
    pub achieved_distance: usize,
    pub tol: f64,
    pub seed: u64,
    #[serde(skip)]
    pub isometry: CMatrix,
}

impl CodeCertificate {
    /// `((n,K,d))_q` with the certified distance.
    pub fn label(&self) -> String {
        format!("(({},{},{}))_{}", self.n, self.k, self.achieved_distance, self.q)
    }
}

/// Options for [`certify`].
#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    pub weight: usize,
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { weight: 1, tol: None, seed: 0 }
    }
}

/// Runs projection, extraction, Knill–Laflamme and transversality checks for
/// λ = `lambda_row` of the analysed table in the `n`-th tensor power.
pub fn certify(
    rep: &MatrixRep,
    analysis: &RepAnalysis,
    lambda_row: usize,
    n: usize,
    opts: CertifyOptions,
) -> Result<CodeCertificate, VerifyError> {
    let q = rep.dim;
    let k = analysis.table.degree_u64(lambda_row).expect("small degree") as usize;
    let tol = opts.tol.unwrap_or_else(|| default_tol(q, n));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let values = analysis.element_values(lambda_row);
    let p = isotypic_projector(&analysis.group, &values, k, n)?;
    let range = projector_range(&p, &mut rng)?;
    let c = extract_code(&range.basis, &analysis.group, rep, n, k, tol, &mut rng)?;
    let isometry_residual = (c.adjoint() * &c - CMatrix::identity(k, k)).norm();
    let kl = check_knill_laflamme(&c, n, q, opts.weight);
    let achieved_distance = 1 + kl.iter().take_while(|&&r| r <= tol).count();
    let tr = check_transversal(&c, rep, &analysis.group, n);
    Ok(CodeCertificate {
        group: rep.name.clone(),
        group_order: analysis.group.order(),
        n,
        k,
        q,
        multiplicity: p.multiplicity(),
        projector_trace: p.trace,
        projector_rank: range.basis.ncols(),
        idempotency_residual: range.idempotency_residual,
        isometry_residual,
        kl_residual: kl,
        transversal_residual: tr.residual,
        logical_unitarity_residual: tr.unitarity_residual,
        logical_group_order: tr.logical_order,
        logical_group_order_projective: tr.logical_order_projective,
        achieved_distance,
        tol,
        seed: opts.seed,
        isometry: c,
    })
}
