//! Matrix-vector polynomial multiplication `p = Â^T · r` over `R_q`.
//!
//! The matrix is given in the NTT domain, already transposed, one transform per
//! phase. The vector is given in the coefficient domain. Every pipeline returns
//! `p` in the coefficient domain and tallies its work in a [`StageCounters`]:
//! forward and inverse transforms go to `transform`, everything else to
//! `matvec`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::faststruct::{
    accumulate_lanes, combine_lanes_2, combine_lanes_4, combine_lanes_4_direct, entry_mul_five_2, entry_mul_lanes,
    entry_mul_original_form_2, finish_original_form_2, prepare_original_operand, preprocess_matrix_entry_2,
    preprocess_matrix_entry_4, preprocess_vector_entry_2, preprocess_vector_entry_4,
    preprocess_vector_entry_4_unshared, LaneProducts, OriginalPartials, PreprocessedMatrixEntry,
    PreprocessedVectorEntry,
};
use crate::modarith::{OpCounter, StageCounters};
use crate::ntt::{ntt_forward, ntt_inverse, pointwise_add, NttVector, Polynomial, TableSet, TwiddleTables};
use crate::oracle::matvec_schoolbook;
use crate::polyphase::{decompose, recompose, Parallelism, PhaseSplit};

/// Ring dimension.
pub const N: usize = 256;

/// A vector of `k` polynomials of length 256.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyVector {
    entries: Vec<Polynomial>,
}

impl PolyVector {
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        check_k(entries.len())?;
        if let Some(bad) = entries.iter().find(|p| p.len() != N) {
            return Err(Error::Shape { expected: N, found: bad.len() });
        }
        Ok(PolyVector { entries })
    }

    pub fn zero(k: usize) -> Result<Self> {
        Self::new(vec![Polynomial::zero(N); k])
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Coefficient-wise sum, `k·256` additions.
    pub fn add(&self, other: &PolyVector, ctx: &mut OpCounter) -> Result<PolyVector> {
        check_same_k(self.k(), other.k())?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b, ctx)).collect::<Result<_>>()?;
        Ok(PolyVector { entries })
    }
}

/// A `k × k` matrix of length-256 polynomials in the coefficient domain,
/// row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    k: usize,
    entries: Vec<Polynomial>,
}

impl CoeffMatrix {
    pub fn new(k: usize, entries: Vec<Polynomial>) -> Result<Self> {
        check_k(k)?;
        if entries.len() != k * k {
            return Err(Error::Dimension(format!("{k}x{k} matrix needs {} entries, got {}", k * k, entries.len())));
        }
        if let Some(bad) = entries.iter().find(|p| p.len() != N) {
            return Err(Error::Shape { expected: N, found: bad.len() });
        }
        Ok(CoeffMatrix { k, entries })
    }

    /// Constant 1 on the diagonal, zero elsewhere.
    pub fn identity(k: usize) -> Result<Self> {
        let entries = (0..k * k)
            .map(|idx| {
                if idx / k == idx % k {
                    Polynomial::constant(N, crate::modarith::Residue::ONE)
                } else {
                    Polynomial::zero(N)
                }
            })
            .collect();
        Self::new(k, entries)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.k + j]
    }
}

/// `Â^T` in the NTT domain: entry `(i, j)` holds the transforms of the `L`
/// phases of `(A^T)_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NttMatrix {
    k: usize,
    parallelism: Parallelism,
    entries: Vec<Vec<NttVector>>,
}

impl NttMatrix {
    /// `entries` is row-major with `k²` items of `L` phases each.
    pub fn new(k: usize, parallelism: Parallelism, entries: Vec<Vec<NttVector>>) -> Result<Self> {
        check_k(k)?;
        if entries.len() != k * k {
            return Err(Error::Dimension(format!("{k}x{k} matrix needs {} entries, got {}", k * k, entries.len())));
        }
        let len = parallelism.phase_len(N);
        for entry in &entries {
            if entry.len() != parallelism.phases() {
                return Err(Error::Dimension(format!(
                    "matrix entry has {} phases, expected {}",
                    entry.len(),
                    parallelism.phases()
                )));
            }
            if let Some(bad) = entry.iter().find(|p| p.len() != len) {
                return Err(Error::Shape { expected: len, found: bad.len() });
            }
        }
        Ok(NttMatrix { k, parallelism, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parallelism(&self) -> Parallelism {
        self.parallelism
    }

    /// Phases of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &[NttVector] {
        &self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[Vec<NttVector>] {
        &self.entries
    }

    /// Builds the NTT-domain form of a coefficient matrix. Uncounted setup.
    pub fn from_coefficients(m: &CoeffMatrix, parallelism: Parallelism, tables: &TableSet) -> Result<Self> {
        let t = tables.for_len(parallelism.phase_len(N))?;
        let mut scratch = OpCounter::new();
        let entries = m.entries.iter().map(|p| ntt_phases(p, parallelism, t, &mut scratch)).collect::<Result<_>>()?;
        Self::new(m.k, parallelism, entries)
    }

    /// Inverse of [`NttMatrix::from_coefficients`]. Uncounted.
    pub fn to_coefficients(&self, tables: &TableSet) -> Result<CoeffMatrix> {
        let t = tables.for_len(self.parallelism.phase_len(N))?;
        let mut scratch = OpCounter::new();
        let entries =
            self.entries.iter().map(|phases| from_ntt_phases(phases, t, &mut scratch)).collect::<Result<_>>()?;
        CoeffMatrix::new(self.k, entries)
    }

    /// Re-expresses the same matrix with a different number of phases.
    pub fn to_parallelism(&self, parallelism: Parallelism, tables: &TableSet) -> Result<Self> {
        if parallelism == self.parallelism {
            return Ok(self.clone());
        }
        Self::from_coefficients(&self.to_coefficients(tables)?, parallelism, tables)
    }
}

/// A matrix and vector forming one multiplication problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub matrix: NttMatrix,
    pub vector: PolyVector,
}

fn check_k(k: usize) -> Result<()> {
    if (1..=4).contains(&k) {
        Ok(())
    } else {
        Err(Error::Dimension(format!("k must be in 1..=4, got {k}")))
    }
}

fn check_same_k(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension(format!("matrix has k={expected} but vector has k={found}")))
    }
}

fn check_matrix(a: &NttMatrix, r: &PolyVector, l: Parallelism) -> Result<()> {
    check_same_k(a.k, r.k())?;
    if a.parallelism != l {
        return Err(Error::Dimension(format!("matrix is stored with L={}, pipeline needs L={l}", a.parallelism)));
    }
    Ok(())
}

/// Polyphase split followed by one forward transform per phase.
pub fn ntt_phases(
    f: &Polynomial,
    l: Parallelism,
    tables: &TwiddleTables,
    ctx: &mut OpCounter,
) -> Result<Vec<NttVector>> {
    decompose(f, l)?.phases().iter().map(|p| ntt_forward(p, tables, ctx)).collect()
}

/// One inverse transform per phase followed by recomposition.
pub fn from_ntt_phases(phases: &[NttVector], tables: &TwiddleTables, ctx: &mut OpCounter) -> Result<Polynomial> {
    let polys = phases.iter().map(|v| ntt_inverse(v, tables, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(recompose(&PhaseSplit::new(polys)?))
}

/// Which of the two equivalent two-parallel structures to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Original,
    Transposed,
}

// Row i: entry(i, 0) + entry(i, 1) + ... in ascending j.
fn sum_rows<T>(
    k: usize,
    ctx: &mut OpCounter,
    mut entry: impl FnMut(usize, usize, &mut OpCounter) -> Result<T>,
    mut accumulate: impl FnMut(&mut T, &T, &mut OpCounter) -> Result<()>,
) -> Result<Vec<T>> {
    (0..k)
        .map(|i| {
            let mut acc = entry(i, 0, ctx)?;
            for j in 1..k {
                let next = entry(i, j, ctx)?;
                accumulate(&mut acc, &next, ctx)?;
            }
            Ok(acc)
        })
        .collect()
}

fn transposed_lane_sums(
    a: &NttMatrix,
    f: &[PreprocessedVectorEntry],
    prep_matrix: impl Fn(&[NttVector], &mut OpCounter) -> Result<PreprocessedMatrixEntry>,
    ctx: &mut OpCounter,
) -> Result<Vec<LaneProducts>> {
    let g = a.entries.iter().map(|phases| prep_matrix(phases, ctx)).collect::<Result<Vec<_>>>()?;
    let k = a.k;
    sum_rows(k, ctx, |i, j, c| entry_mul_lanes(&g[i * k + j], &f[j], c), accumulate_lanes)
}

fn prep_matrix_2(phases: &[NttVector], ctx: &mut OpCounter) -> Result<PreprocessedMatrixEntry> {
    preprocess_matrix_entry_2(&phases[0], &phases[1], ctx)
}

fn vector_phases(
    r: &PolyVector,
    l: Parallelism,
    t: &TwiddleTables,
    ctx: &mut OpCounter,
) -> Result<Vec<Vec<NttVector>>> {
    r.entries.iter().map(|p| ntt_phases(p, l, t, ctx)).collect()
}

fn outputs(rows: Vec<Vec<NttVector>>, t: &TwiddleTables, ctx: &mut OpCounter) -> Result<PolyVector> {
    let entries = rows.iter().map(|phases| from_ntt_phases(phases, t, ctx)).collect::<Result<_>>()?;
    PolyVector::new(entries)
}

/// The proposed pipeline: shared vector-side preprocessing, row accumulation
/// of lane products, one combination per row. `Form::Original` is available
/// for `L = 2` only.
pub fn matvec_proposed(
    a: &NttMatrix,
    r: &PolyVector,
    l: Parallelism,
    form: Form,
    tables: &TableSet,
    ctx: &mut StageCounters,
) -> Result<PolyVector> {
    check_matrix(a, r, l)?;
    let t = tables.for_len(l.phase_len(N))?;
    let r_hat = vector_phases(r, l, t, &mut ctx.transform)?;
    let m = &mut ctx.matvec;
    let rows = match (l, form) {
        (Parallelism::Two, Form::Transposed) => {
            let f =
                r_hat.iter().map(|ph| preprocess_vector_entry_2(&ph[0], &ph[1], t, m)).collect::<Result<Vec<_>>>()?;
            transposed_lane_sums(a, &f, prep_matrix_2, m)?
                .iter()
                .map(|sums| combine_lanes_2(sums, m).map(|(e, o)| vec![e, o]))
                .collect::<Result<Vec<_>>>()?
        }
        (Parallelism::Two, Form::Original) => {
            let r_ops =
                r_hat.iter().map(|ph| prepare_original_operand(&ph[0], &ph[1], m)).collect::<Result<Vec<_>>>()?;
            let a_ops =
                a.entries.iter().map(|ph| prepare_original_operand(&ph[0], &ph[1], m)).collect::<Result<Vec<_>>>()?;
            let k = a.k;
            let sums = sum_rows(
                k,
                m,
                |i, j, c| entry_mul_original_form_2(&r_ops[j], &a_ops[i * k + j], c),
                OriginalPartials::accumulate,
            )?;
            sums.iter().map(|s| finish_original_form_2(s, t, m).map(|(e, o)| vec![e, o])).collect::<Result<Vec<_>>>()?
        }
        (Parallelism::Four, Form::Transposed) => {
            let f = r_hat.iter().map(|ph| preprocess_vector_entry_4(ph, t, m)).collect::<Result<Vec<_>>>()?;
            transposed_lane_sums(a, &f, preprocess_matrix_entry_4, m)?
                .iter()
                .map(|sums| combine_lanes_4(sums, m))
                .collect::<Result<Vec<_>>>()?
        }
        (Parallelism::Four, Form::Original) => {
            return Err(Error::Unsupported("the original form is implemented for L=2 only".into()))
        }
    };
    outputs(rows, t, &mut ctx.transform)
}

/// `u = Â^T·r + e_1`. The final addition is counted in the matvec stage.
pub fn matvec_with_error(
    a: &NttMatrix,
    r: &PolyVector,
    e1: &PolyVector,
    l: Parallelism,
    tables: &TableSet,
    ctx: &mut StageCounters,
) -> Result<PolyVector> {
    check_same_k(a.k, e1.k())?;
    let p = matvec_proposed(a, r, l, Form::Transposed, tables, ctx)?;
    p.add(e1, &mut ctx.matvec)
}

fn two_output_rows(
    a: &NttMatrix,
    r_hat: &[Vec<NttVector>],
    ctx: &mut OpCounter,
    mut entry: impl FnMut(&[NttVector], &[NttVector], &mut OpCounter) -> Result<(NttVector, NttVector)>,
) -> Result<Vec<Vec<NttVector>>> {
    sum_rows(
        a.k,
        ctx,
        |i, j, c| entry(a.entry(i, j), &r_hat[j], c).map(|(e, o)| vec![e, o]),
        |acc: &mut Vec<NttVector>, next, c| {
            acc[0] = pointwise_add(&acc[0], &next[0], c)?;
            acc[1] = pointwise_add(&acc[1], &next[1], c)?;
            Ok(())
        },
    )
}

/// Per-entry fast two-parallel structure with its own `y` product; outputs are
/// accumulated after combination.
pub fn matvec_baseline_4mult(
    a: &NttMatrix,
    r: &PolyVector,
    tables: &TableSet,
    ctx: &mut StageCounters,
) -> Result<PolyVector> {
    check_matrix(a, r, Parallelism::Two)?;
    let t = &tables.t128;
    let r_hat = vector_phases(r, Parallelism::Two, t, &mut ctx.transform)?;
    let rows = two_output_rows(a, &r_hat, &mut ctx.matvec, |ah, rh, c| {
        let f = preprocess_vector_entry_2(&rh[0], &rh[1], t, c)?;
        let g = preprocess_matrix_entry_2(&ah[0], &ah[1], c)?;
        combine_lanes_2(&entry_mul_lanes(&g, &f, c)?, c)
    })?;
    outputs(rows, t, &mut ctx.transform)
}

/// Direct expansion with five products per entry.
pub fn matvec_baseline_5mult(
    a: &NttMatrix,
    r: &PolyVector,
    tables: &TableSet,
    ctx: &mut StageCounters,
) -> Result<PolyVector> {
    check_matrix(a, r, Parallelism::Two)?;
    let t = &tables.t128;
    let r_hat = vector_phases(r, Parallelism::Two, t, &mut ctx.transform)?;
    let rows = two_output_rows(a, &r_hat, &mut ctx.matvec, |ah, rh, c| {
        entry_mul_five_2(&rh[0], &rh[1], &ah[0], &ah[1], t, c)
    })?;
    outputs(rows, t, &mut ctx.transform)
}

/// Four-parallel structure with every vector entry re-preprocessed for each
/// matrix entry it meets.
pub fn matvec_four_parallel_unshared(
    a: &NttMatrix,
    r: &PolyVector,
    tables: &TableSet,
    ctx: &mut StageCounters,
) -> Result<PolyVector> {
    check_matrix(a, r, Parallelism::Four)?;
    let t = &tables.t64;
    let r_hat = vector_phases(r, Parallelism::Four, t, &mut ctx.transform)?;
    let g = a.entries.iter().map(|ph| preprocess_matrix_entry_4(ph, &mut ctx.matvec)).collect::<Result<Vec<_>>>()?;
    let k = a.k;
    let sums = sum_rows(
        k,
        &mut ctx.matvec,
        |i, j, c| {
            let f = preprocess_vector_entry_4_unshared(&r_hat[j], t, c)?;
            entry_mul_lanes(&g[i * k + j], &f, c)
        },
        accumulate_lanes,
    )?;
    let rows = sums.iter().map(|s| combine_lanes_4_direct(s, &mut ctx.matvec)).collect::<Result<Vec<_>>>()?;
    outputs(rows, t, &mut ctx.transform)
}

/// Every pipeline selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Baseline4Mult,
    Baseline5Mult,
    Proposed2,
    Proposed4,
    Unshared4,
    Schoolbook,
}

impl Algorithm {
    /// The instrumented pipelines, in report order.
    pub const COUNTED: [Algorithm; 5] = [
        Algorithm::Baseline4Mult,
        Algorithm::Baseline5Mult,
        Algorithm::Proposed2,
        Algorithm::Proposed4,
        Algorithm::Unshared4,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Baseline4Mult => "baseline4mult",
            Algorithm::Baseline5Mult => "baseline5mult",
            Algorithm::Proposed2 => "proposed2",
            Algorithm::Proposed4 => "proposed4",
            Algorithm::Unshared4 => "unshared4",
            Algorithm::Schoolbook => "schoolbook",
        }
    }

    /// Phase count the pipeline expects its matrix in. The schoolbook path
    /// accepts any.
    pub fn parallelism(self) -> Parallelism {
        match self {
            Algorithm::Proposed4 | Algorithm::Unshared4 => Parallelism::Four,
            _ => Parallelism::Two,
        }
    }

    /// Runs the pipeline, converting the matrix to the needed phase count
    /// first when necessary (uncounted).
    pub fn run(self, a: &NttMatrix, r: &PolyVector, tables: &TableSet, ctx: &mut StageCounters) -> Result<PolyVector> {
        if self == Algorithm::Schoolbook {
            return matvec_schoolbook(&a.to_coefficients(tables)?, r);
        }
        let converted;
        let a = if a.parallelism == self.parallelism() {
            a
        } else {
            converted = a.to_parallelism(self.parallelism(), tables)?;
            &converted
        };
        match self {
            Algorithm::Proposed2 => matvec_proposed(a, r, Parallelism::Two, Form::Transposed, tables, ctx),
            Algorithm::Proposed4 => matvec_proposed(a, r, Parallelism::Four, Form::Transposed, tables, ctx),
            Algorithm::Baseline4Mult => matvec_baseline_4mult(a, r, tables, ctx),
            Algorithm::Baseline5Mult => matvec_baseline_5mult(a, r, tables, ctx),
            Algorithm::Unshared4 => matvec_four_parallel_unshared(a, r, tables, ctx),
            Algorithm::Schoolbook => unreachable!(),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Algorithm::Schoolbook]
            .into_iter()
            .chain(Algorithm::COUNTED)
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}
