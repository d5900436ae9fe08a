//! Exact joint-state assembly for delta-coupled detector pairs
//!
//! Each delta coupling acts as `exp(m̂_ν ⊗ Ŷ)` with `m̂_ν` the detector's
//! monopole moment and `Ŷ` an anti-Hermitian field displacement, so the
//! full evolution branches the detector pair over cosh/sinh combinations
//! of displacement exponentials. Tracing out the field maps every matrix
//! element of the reduced two-detector state onto a vacuum expectation
//! value of at most eight `ŷ^{l}_u` factors, which this module evaluates
//! through the Gaussian 256-term expansion (see [`crate::kernel`]).
//!
//! The expansion depends on the detector gaps only through scalar phases
//! `exp(i(Ω_A·δc_A + Ω_B·δc_B))`, so [`AssembledSchedule`] precomputes
//! every gap-independent weight once per coupling geometry and then
//! evaluates the reduced state for any pair of gaps in microseconds —
//! the workhorse behind dense parameter sweeps.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, UdwError};
use crate::schedule::{DeltaSchedule, SlotTable};
use crate::special::{i_c, i_s};
use crate::xstate::XState;

/// Slot Gram matrix `G_uv = (9λ_uλ_v/2π²)·[i_c(t_u−t_v) + i·i_s(t_u−t_v)]`
/// over the four coupling slots `[A1, A2, B1, B2]`.
pub(crate) fn gram_matrix(times: &[f64; 4], strengths: &[f64; 4]) -> [[Complex64; 4]; 4] {
    let mut g = [[Complex64::new(0.0, 0.0); 4]; 4];
    for u in 0..4 {
        for v in 0..4 {
            let prefactor = 9.0 * strengths[u] * strengths[v] / (2.0 * PI * PI);
            let dt = times[u] - times[v];
            g[u][v] = prefactor * Complex64::new(i_c(dt), i_s(dt));
        }
    }
    g
}

/// One Gaussian overlap `⟨0|Π_k exp(p_k Ŷ_{seq_k})|0⟩` for an arbitrary
/// slot sequence, from the Gram matrix alone:
/// modulus `exp(−½ Σ_{k,l} p_k p_l Re G)`, phase
/// `½ Σ_{k<l} p_k p_l · 2 Im G` (one commutator per ordered pair).
fn k_value(pmask: u8, seq: &[usize; 8], g: &[[Complex64; 4]; 4]) -> Complex64 {
    let p: [f64; 8] = std::array::from_fn(|k| if pmask >> k & 1 == 1 { -1.0 } else { 1.0 });
    let mut quad = 0.0;
    let mut phase = 0.0;
    for k in 0..8 {
        for l in 0..8 {
            let guv = g[seq[k]][seq[l]];
            quad += p[k] * p[l] * guv.re;
            if l > k {
                phase += 2.0 * p[k] * p[l] * guv.im;
            }
        }
    }
    Complex64::new(-0.5 * quad, 0.5 * phase).exp()
}

/// A branch of the evolved joint state before tracing out the field:
/// accumulated gap-phase times and one cosh/sinh label per slot.
#[derive(Debug, Clone, Copy)]
struct RawTerm {
    c_a: f64,
    c_b: f64,
    /// `+1` cosh / `−1` sinh, indexed `[A1, A2, B1, B2]`.
    labels: [i8; 4],
}

/// Branches the initial `|g_A g_B⟩ ⊗ |0⟩` state through the couplings in
/// time order. Each coupling keeps the detector level (cosh factor) or
/// flips it (sinh factor); a flip of detector A from ground (excited)
/// at time `t` adds `+t` (`−t`) to the accumulated phase time `c_a`,
/// and likewise for B. Sinh branches of zero-strength slots vanish
/// identically and are pruned.
fn branch_terms(table: &SlotTable) -> [Vec<RawTerm>; 4] {
    let mut components: [Vec<RawTerm>; 4] = std::array::from_fn(|_| Vec::new());
    components[0].push(RawTerm {
        c_a: 0.0,
        c_b: 0.0,
        labels: [1; 4],
    });
    for &u in &table.ascending {
        let time = table.times[u];
        let acts_on_a = u < 2;
        let couples = table.strengths[u] > 0.0;
        let mut next: [Vec<RawTerm>; 4] = std::array::from_fn(|_| Vec::new());
        for idx in 0..4 {
            let (a, b) = (idx >> 1, idx & 1);
            for term in &components[idx] {
                next[idx].push(*term);
                if couples {
                    let mut flipped = *term;
                    flipped.labels[u] = -1;
                    if acts_on_a {
                        flipped.c_a += if a == 0 { time } else { -time };
                        next[(1 - a) << 1 | b].push(flipped);
                    } else {
                        flipped.c_b += if b == 0 { time } else { -time };
                        next[a << 1 | (1 - b)].push(flipped);
                    }
                }
            }
        }
        components = next;
    }
    components
}

/// One symbolic term of an evolved-state component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedTerm {
    /// Gap phase `exp(i(Ω_A c_A + Ω_B c_B))` accumulated by the
    /// level flips of this branch, at the schedule's own gaps.
    pub phase: Complex64,
    /// Cosh (`+1`) / sinh (`−1`) label per slot `[A1, A2, B1, B2]`.
    pub labels: [i8; 4],
}

/// Symbolic expansion of the evolved joint state over the two-detector
/// product basis, before the field trace.
#[derive(Debug, Clone)]
pub struct EvolvedCoefficients {
    /// Terms per basis vector, indexed
    /// `|g_A g_B⟩, |g_A e_B⟩, |e_A g_B⟩, |e_A e_B⟩`.
    pub components: [Vec<EvolvedTerm>; 4],
    /// Slot indices in operator order (leftmost factor = latest
    /// coupling); the labels of every term apply to slots in this order.
    pub operator_order: [usize; 4],
}

/// Expands the evolved state of `schedule` into its cosh/sinh branches.
///
/// Every component carries `2^{n−2}` terms for `n` couplings with
/// non-zero strength; at `λ = 0` only `|g_A g_B⟩` survives with a single
/// phase-1 term.
pub fn evolved_coefficients(schedule: &DeltaSchedule) -> EvolvedCoefficients {
    let table = schedule.slot_table();
    let components = branch_terms(&table);
    let (gap_a, gap_b) = (schedule.gap_a(), schedule.gap_b());
    let mut operator_order = table.ascending;
    operator_order.reverse();
    EvolvedCoefficients {
        components: components.map(|terms| {
            terms
                .iter()
                .map(|t| EvolvedTerm {
                    phase: Complex64::from_polar(1.0, gap_a * t.c_a + gap_b * t.c_b),
                    labels: t.labels,
                })
                .collect()
        }),
        operator_order,
    }
}

/// Gap-independent weight of one bra–ket branch pair.
#[derive(Debug, Clone, Copy)]
struct PairTerm {
    d_ca: f64,
    d_cb: f64,
    w: Complex64,
}

/// A coupling geometry with all field expectation values precomputed.
///
/// Construction performs the full 256-overlap expansion once; evaluating
/// the reduced state at any detector gaps afterwards only sums a few
/// dozen phase factors. All entries of the reduced state outside the
/// X shape vanish identically because their branch pairs carry an odd
/// number of sinh factors.
#[derive(Debug, Clone)]
pub struct AssembledSchedule {
    entries: [[Vec<PairTerm>; 4]; 4],
}

impl AssembledSchedule {
    /// Expands and contracts the field degrees of freedom of `schedule`.
    pub fn new(schedule: &DeltaSchedule) -> Self {
        let table = schedule.slot_table();
        let gram = gram_matrix(&table.times, &table.strengths);
        let asc = table.ascending;
        // Every bra–ket pair shares one mirror-symmetric slot sequence:
        // ascending coupling times out, descending back.
        let seq: [usize; 8] = std::array::from_fn(|k| if k < 4 { asc[k] } else { asc[7 - k] });
        let kvec: Vec<Complex64> = (0..=255u8).map(|mask| k_value(mask, &seq, &gram)).collect();
        let components = branch_terms(&table);
        let mut entries: [[Vec<PairTerm>; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Vec::new()));
        for i in 0..4 {
            for j in 0..4 {
                let list = &mut entries[i][j];
                list.reserve(components[i].len() * components[j].len());
                for ket in &components[i] {
                    for bra in &components[j] {
                        // Bra labels run over ascending slots, ket labels
                        // over descending, matching `seq`.
                        let mut lmask = 0u8;
                        for k in 0..4 {
                            if bra.labels[asc[k]] == -1 {
                                lmask |= 1 << k;
                            }
                            if ket.labels[asc[3 - k]] == -1 {
                                lmask |= 1 << (4 + k);
                            }
                        }
                        let mut h = Complex64::new(0.0, 0.0);
                        for (pmask, k) in kvec.iter().enumerate() {
                            if (lmask as usize & pmask).count_ones() & 1 == 1 {
                                h -= k;
                            } else {
                                h += k;
                            }
                        }
                        h /= 256.0;
                        // Adjoint of each bra-side sinh contributes −1.
                        let bra_minus = bra.labels.iter().filter(|&&l| l == -1).count();
                        let sign = if bra_minus % 2 == 1 { -1.0 } else { 1.0 };
                        list.push(PairTerm {
                            d_ca: ket.c_a - bra.c_a,
                            d_cb: ket.c_b - bra.c_b,
                            w: sign * h,
                        });
                    }
                }
            }
        }
        Self { entries }
    }

    fn entry(&self, row: usize, col: usize, gap_a: f64, gap_b: f64) -> Complex64 {
        self.entries[row][col]
            .iter()
            .map(|pt| Complex64::from_polar(1.0, gap_a * pt.d_ca + gap_b * pt.d_cb) * pt.w)
            .sum()
    }

    /// One matrix element of the reduced state at the given gaps, in the
    /// basis `|g_A g_B⟩, |g_A e_B⟩, |e_A g_B⟩, |e_A e_B⟩`. Mainly useful
    /// for checking the X shape; [`Self::rho_at`] is the primary output.
    pub fn entry_at(&self, row: usize, col: usize, gap_a: f64, gap_b: f64) -> Result<Complex64> {
        if row > 3 || col > 3 {
            return Err(UdwError::Argument(format!(
                "matrix indices must be 0..4, got ({row}, {col})"
            )));
        }
        if !gap_a.is_finite() || !gap_b.is_finite() {
            return Err(UdwError::Argument(format!(
                "gaps must be finite, got ({gap_a}, {gap_b})"
            )));
        }
        Ok(self.entry(row, col, gap_a, gap_b))
    }

    /// The reduced two-detector state at the given gaps.
    pub fn rho_at(&self, gap_a: f64, gap_b: f64) -> Result<XState> {
        if !gap_a.is_finite() || !gap_b.is_finite() {
            return Err(UdwError::Argument(format!(
                "gaps must be finite, got ({gap_a}, {gap_b})"
            )));
        }
        let diag: [Complex64; 4] = std::array::from_fn(|i| self.entry(i, i, gap_a, gap_b));
        debug_assert!(diag.iter().all(|d| d.im.abs() < 1e-12));
        XState::new(
            diag[0].re,
            diag[1].re,
            diag[2].re,
            diag[3].re,
            self.entry(0, 3, gap_a, gap_b),
            self.entry(1, 2, gap_a, gap_b),
        )
    }

    /// Negativity of [`Self::rho_at`].
    pub fn negativity_at(&self, gap_a: f64, gap_b: f64) -> Result<f64> {
        Ok(self.rho_at(gap_a, gap_b)?.negativity())
    }
}

/// Reduced two-detector state of `schedule` at its own gaps.
pub fn rho_ab(schedule: &DeltaSchedule) -> Result<XState> {
    AssembledSchedule::new(schedule).rho_at(schedule.gap_a(), schedule.gap_b())
}

/// Negativity of the reduced two-detector state of `schedule`.
pub fn negativity_of(schedule: &DeltaSchedule) -> Result<f64> {
    Ok(rho_ab(schedule)?.negativity())
}
