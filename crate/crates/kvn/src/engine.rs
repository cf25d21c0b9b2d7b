//! Symmetric split-step evolution over exactly exponentiable sub-generators.
//!
//! Each sub-generator is a product of per-axis real diagonal factors, each
//! factor diagonal in either the position or the frequency representation of
//! its axis. Its exact exponential is then a unit phase table. The evolver
//! tracks the current representation of every axis and only transforms
//! lazily, fusing phase multiplications into the scatter pass of the final
//! transform whenever one is needed.
//!
//! Parallel work is map-only (every output cell is written by exactly one
//! task), so results are bit-identical regardless of thread count.

use crate::error::{KvnError, Result};
use crate::fft::{plan, Direction};
use crate::grid::Grid1D;
use crate::state::StateVector;
use crate::util::pairwise_sum_f64;
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rep {
    Pos,
    Freq,
}

/// One diagonal factor of a sub-generator.
#[derive(Debug, Clone)]
pub struct AxisFactor {
    pub axis: usize,
    pub rep: Rep,
    /// Diagonal values per grid index in the chosen representation.
    pub values: Vec<f64>,
}

/// An exactly exponentiable sub-generator: the product of at most two
/// diagonal axis factors (constant along every other axis).
#[derive(Debug, Clone)]
pub struct SubGen {
    pub name: String,
    pub factors: Vec<AxisFactor>,
}

impl SubGen {
    /// Diagonal factor built from coordinate values of a grid.
    pub fn position_factor(axis: usize, grid: &Grid1D, f: impl Fn(f64) -> f64) -> AxisFactor {
        AxisFactor {
            axis,
            rep: Rep::Pos,
            values: grid.points().iter().map(|&u| f(u)).collect(),
        }
    }

    /// Diagonal factor built from the frequency ladder of a grid.
    pub fn frequency_factor(axis: usize, grid: &Grid1D, f: impl Fn(f64) -> f64) -> AxisFactor {
        AxisFactor {
            axis,
            rep: Rep::Freq,
            values: grid.frequencies().iter().map(|&w| f(w)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Strength {
    Half,
    Full,
}

struct CompiledSub {
    name: String,
    reqs: Vec<(usize, Rep)>,
    axes: Vec<usize>,
    dims: Vec<usize>,
    table_half: Vec<Complex64>,
    table_full: Vec<Complex64>,
}

enum LaneMul<'a> {
    Identity,
    Scalar(Complex64),
    Row {
        vals: &'a [Complex64],
        base: usize,
        stride: usize,
    },
}

impl LaneMul<'_> {
    #[inline]
    fn at(&self, j: usize) -> Complex64 {
        match self {
            LaneMul::Identity => Complex64::new(1.0, 0.0),
            LaneMul::Scalar(z) => *z,
            LaneMul::Row { vals, base, stride } => vals[base + j * stride],
        }
    }
}

/// Weighted-moment request: the product of per-axis diagonal weights applied
/// to `|amplitude|^2`, summed over the grid with the cell measure.
pub struct MomentSpec {
    pub weights: Vec<(usize, Vec<f64>)>,
}

pub struct SplitEvolver {
    grids: Vec<Grid1D>,
    shape: Vec<usize>,
    buf: Vec<Complex64>,
    reps: Vec<Rep>,
    subs: Vec<CompiledSub>,
    sub_order: Vec<String>,
    dt: f64,
    parallel: bool,
}

impl SplitEvolver {
    /// Compile sub-generators into phase tables for step `dt` and load the
    /// initial state.
    pub fn new(state: &StateVector, gens: &[SubGen], dt: f64, parallel: bool) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(KvnError::Parameter("dt must be positive".into()));
        }
        if gens.is_empty() {
            return Err(KvnError::Parameter("no sub-generators".into()));
        }
        let shape = state.shape();
        let mut subs = Vec::with_capacity(gens.len());
        for g in gens {
            if g.factors.is_empty() || g.factors.len() > 2 {
                return Err(KvnError::Config(format!(
                    "sub-generator `{}` must have one or two axis factors",
                    g.name
                )));
            }
            for f in &g.factors {
                if f.axis >= shape.len() || f.values.len() != shape[f.axis] {
                    return Err(KvnError::Config(format!(
                        "sub-generator `{}` factor does not match axis {}",
                        g.name, f.axis
                    )));
                }
            }
            if g.factors.len() == 2 && g.factors[0].axis == g.factors[1].axis {
                return Err(KvnError::Config(format!(
                    "sub-generator `{}` repeats an axis",
                    g.name
                )));
            }
            let axes: Vec<usize> = g.factors.iter().map(|f| f.axis).collect();
            let dims: Vec<usize> = axes.iter().map(|&a| shape[a]).collect();
            let table = |tau: f64| -> Vec<Complex64> {
                match g.factors.len() {
                    1 => g.factors[0]
                        .values
                        .iter()
                        .map(|&v| Complex64::from_polar(1.0, -tau * v))
                        .collect(),
                    _ => {
                        let (fa, fb) = (&g.factors[0], &g.factors[1]);
                        let mut t = Vec::with_capacity(fa.values.len() * fb.values.len());
                        for &va in &fa.values {
                            for &vb in &fb.values {
                                t.push(Complex64::from_polar(1.0, -tau * va * vb));
                            }
                        }
                        t
                    }
                }
            };
            subs.push(CompiledSub {
                name: g.name.clone(),
                reqs: g.factors.iter().map(|f| (f.axis, f.rep)).collect(),
                axes,
                dims,
                table_half: table(dt / 2.0),
                table_full: table(dt),
            });
        }
        Ok(Self {
            grids: state.grids().to_vec(),
            shape,
            buf: state.amps().to_vec(),
            reps: vec![Rep::Pos; state.grids().len()],
            sub_order: subs.iter().map(|s| s.name.clone()).collect(),
            subs,
            dt,
            parallel,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Sub-generator names in Strang order, for the run manifest.
    pub fn sub_order(&self) -> &[String] {
        &self.sub_order
    }

    pub fn grids(&self) -> &[Grid1D] {
        &self.grids
    }

    /// Advance one symmetric Strang step.
    pub fn step(&mut self) {
        let n = self.subs.len();
        for i in 0..n.saturating_sub(1) {
            self.apply_sub(i, Strength::Half);
        }
        self.apply_sub(n - 1, Strength::Full);
        for i in (0..n.saturating_sub(1)).rev() {
            self.apply_sub(i, Strength::Half);
        }
    }

    /// Bring every axis back to the position representation.
    pub fn ensure_all_position(&mut self) {
        for ax in 0..self.reps.len() {
            if self.reps[ax] == Rep::Freq {
                self.transform(ax, None);
            }
        }
    }

    /// Copy the current state out (in position representation).
    pub fn state(&mut self) -> StateVector {
        self.ensure_all_position();
        StateVector::from_amplitudes(self.grids.clone(), self.buf.clone())
            .expect("engine buffer is a valid state")
    }

    /// Cell measure of the underlying grid.
    pub fn cell_volume(&self) -> f64 {
        self.grids.iter().map(|g| g.step()).product()
    }

    fn apply_sub(&mut self, idx: usize, strength: Strength) {
        // Figure out which axes need transforming for this sub-generator.
        let needed: Vec<usize> = self.subs[idx]
            .reqs
            .iter()
            .filter(|&&(ax, rep)| self.reps[ax] != rep)
            .map(|&(ax, _)| ax)
            .collect();
        if needed.is_empty() {
            self.standalone_mul(idx, strength);
            return;
        }
        for (pos, &ax) in needed.iter().enumerate() {
            let fused = if pos + 1 == needed.len() {
                Some((idx, strength))
            } else {
                None
            };
            self.transform(ax, fused);
        }
    }

    /// Transform `axis` (flipping its representation), optionally applying a
    /// sub-generator's phase table during the scatter pass.
    fn transform(&mut self, axis: usize, fused: Option<(usize, Strength)>) {
        let dir = match self.reps[axis] {
            Rep::Pos => Direction::Forward,
            Rep::Freq => Direction::Inverse,
        };
        self.reps[axis] = match self.reps[axis] {
            Rep::Pos => Rep::Freq,
            Rep::Freq => Rep::Pos,
        };
        let mut buf = std::mem::take(&mut self.buf);
        {
            let fused_ref = fused.map(|(idx, strength)| {
                let sub = &self.subs[idx];
                let vals = match strength {
                    Strength::Half => &sub.table_half,
                    Strength::Full => &sub.table_full,
                };
                (sub.axes.as_slice(), sub.dims.as_slice(), vals.as_slice())
            });
            sweep(
                &mut buf,
                &self.shape,
                axis,
                dir,
                fused_ref,
                self.parallel,
            );
        }
        self.buf = buf;
    }

    fn standalone_mul(&mut self, idx: usize, strength: Strength) {
        let last = self.shape.len() - 1;
        let n_last = self.shape[last];
        let mut buf = std::mem::take(&mut self.buf);
        {
            let sub = &self.subs[idx];
            let vals = match strength {
                Strength::Half => &sub.table_half,
                Strength::Full => &sub.table_full,
            };
            // Treat the last axis as the "sweep" axis so lanes are contiguous
            // rows; the plan resolves the multiplier per row.
            let plan = FusedPlan::new(&sub.axes, &sub.dims, vals, &self.shape, last);
            let apply_lane = |lane_idx: usize, lane: &mut [Complex64]| {
                match plan.lane(lane_idx, 0) {
                    LaneMul::Identity => {}
                    LaneMul::Scalar(z) => {
                        for a in lane.iter_mut() {
                            *a *= z;
                        }
                    }
                    LaneMul::Row { vals, base, stride } => {
                        for (j, a) in lane.iter_mut().enumerate() {
                            *a *= vals[base + j * stride];
                        }
                    }
                }
            };
            if self.parallel {
                buf.par_chunks_mut(n_last).enumerate().for_each(|(l, lane)| {
                    apply_lane(l, lane);
                });
            } else {
                for (l, lane) in buf.chunks_exact_mut(n_last).enumerate() {
                    apply_lane(l, lane);
                }
            }
        }
        self.buf = buf;
    }

    /// Bring the listed axes into the requested representations.
    pub fn ensure_reps(&mut self, reqs: &[(usize, Rep)]) {
        for &(ax, rep) in reqs {
            if self.reps[ax] != rep {
                self.transform(ax, None);
            }
        }
    }

    /// Weighted moments of `|amplitude|^2`, all computed in one deterministic
    /// traversal. Weights address grid indices in the axes' *current*
    /// representations; call [`Self::ensure_reps`] first.
    ///
    /// Lane partial sums are accumulated linearly within each last-axis lane
    /// and reduced pairwise across lanes, a fixed order independent of
    /// threading.
    pub fn moments(&mut self, specs: &[MomentSpec]) -> Vec<f64> {
        let last = self.shape.len() - 1;
        let n_last = self.shape[last];
        let lanes = self.buf.len() / n_last;
        let vol = self.cell_volume();
        let nspec = specs.len();

        // Per-spec weight layout: scalar-per-lane axes and an optional row
        // along the last axis.
        let mut lane_partials = vec![0.0f64; lanes * nspec];
        let shape = &self.shape;
        let buf = &self.buf;
        let lane_strides: Vec<usize> = (0..shape.len())
            .map(|ax| {
                if ax >= last {
                    1
                } else {
                    shape[ax + 1..last].iter().product()
                }
            })
            .collect();

        let compute_lane = |l: usize, out: &mut [f64]| {
            let lane = &buf[l * n_last..(l + 1) * n_last];
            for (si, spec) in specs.iter().enumerate() {
                let mut scalar = 1.0f64;
                let mut row: Option<&[f64]> = None;
                for (ax, w) in &spec.weights {
                    if *ax == last {
                        row = Some(w.as_slice());
                    } else {
                        let j = (l / lane_strides[*ax]) % shape[*ax];
                        scalar *= w[j];
                    }
                }
                let mut acc = 0.0f64;
                match row {
                    Some(r) => {
                        for (j, z) in lane.iter().enumerate() {
                            acc += z.norm_sqr() * r[j];
                        }
                    }
                    None => {
                        for z in lane {
                            acc += z.norm_sqr();
                        }
                    }
                }
                out[si] = acc * scalar;
            }
        };

        if self.parallel {
            lane_partials
                .par_chunks_mut(nspec)
                .enumerate()
                .for_each(|(l, out)| compute_lane(l, out));
        } else {
            for (l, out) in lane_partials.chunks_exact_mut(nspec).enumerate() {
                compute_lane(l, out);
            }
        }

        (0..nspec)
            .map(|si| {
                let col: Vec<f64> = (0..lanes).map(|l| lane_partials[l * nspec + si]).collect();
                pairwise_sum_f64(&col) * vol
            })
            .collect()
    }

    /// Current norm (representation independent).
    pub fn norm(&mut self) -> f64 {
        let specs = [MomentSpec { weights: vec![] }];
        self.moments(&specs)[0].sqrt()
    }
}

/// Precomputed index arithmetic for locating a table axis' coordinate from a
/// lane's (outer block, inner offset) pair during a sweep along `sweep_axis`.
#[derive(Debug, Clone, Copy)]
struct AxisLocator {
    /// Divisor applied to `i` (axes after the sweep axis) or `o` (before).
    divisor: usize,
    modulus: usize,
    from_inner: bool,
}

impl AxisLocator {
    fn new(target: usize, shape: &[usize], sweep_axis: usize) -> Self {
        if target > sweep_axis {
            AxisLocator {
                divisor: shape[target + 1..].iter().product(),
                modulus: shape[target],
                from_inner: true,
            }
        } else {
            AxisLocator {
                divisor: shape[target + 1..sweep_axis].iter().product(),
                modulus: shape[target],
                from_inner: false,
            }
        }
    }

    #[inline]
    fn index(&self, o: usize, i: usize) -> usize {
        let src = if self.from_inner { i } else { o };
        (src / self.divisor) % self.modulus
    }
}

/// A fused phase table with its per-sweep index plan resolved.
struct FusedPlan<'a> {
    vals: &'a [Complex64],
    kind: FusedKind,
}

enum FusedKind {
    /// Table indexed by the swept axis only.
    SweepOnly,
    /// Table constant along the swept axis: value at `vals[loc(o, i)]`.
    OtherOnly(AxisLocator),
    /// Two-axis table `[sweep, other]`: row base `loc(o, i)`, stride `d1`.
    SweepThenOther { loc: AxisLocator, d1: usize },
    /// Two-axis table `[other, sweep]`: row base `loc(o, i) * d1`, stride 1.
    OtherThenSweep { loc: AxisLocator, d1: usize },
    /// Two-axis table not involving the swept axis.
    TwoOthers {
        loc0: AxisLocator,
        loc1: AxisLocator,
        d1: usize,
    },
}

impl<'a> FusedPlan<'a> {
    fn new(
        axes: &[usize],
        dims: &[usize],
        vals: &'a [Complex64],
        shape: &[usize],
        sweep_axis: usize,
    ) -> Self {
        let kind = match axes.len() {
            1 => {
                if axes[0] == sweep_axis {
                    FusedKind::SweepOnly
                } else {
                    FusedKind::OtherOnly(AxisLocator::new(axes[0], shape, sweep_axis))
                }
            }
            _ => {
                let (a0, a1) = (axes[0], axes[1]);
                let d1 = dims[1];
                if a0 == sweep_axis {
                    FusedKind::SweepThenOther {
                        loc: AxisLocator::new(a1, shape, sweep_axis),
                        d1,
                    }
                } else if a1 == sweep_axis {
                    FusedKind::OtherThenSweep {
                        loc: AxisLocator::new(a0, shape, sweep_axis),
                        d1,
                    }
                } else {
                    FusedKind::TwoOthers {
                        loc0: AxisLocator::new(a0, shape, sweep_axis),
                        loc1: AxisLocator::new(a1, shape, sweep_axis),
                        d1,
                    }
                }
            }
        };
        FusedPlan { vals, kind }
    }

    /// Resolve the multiplier for lane `(o, i)` as a function of the sweep
    /// index `j`.
    #[inline]
    fn lane(&self, o: usize, i: usize) -> LaneMul<'a> {
        match &self.kind {
            FusedKind::SweepOnly => LaneMul::Row {
                vals: self.vals,
                base: 0,
                stride: 1,
            },
            FusedKind::OtherOnly(loc) => LaneMul::Scalar(self.vals[loc.index(o, i)]),
            FusedKind::SweepThenOther { loc, d1 } => LaneMul::Row {
                vals: self.vals,
                base: loc.index(o, i),
                stride: *d1,
            },
            FusedKind::OtherThenSweep { loc, d1 } => LaneMul::Row {
                vals: self.vals,
                base: loc.index(o, i) * d1,
                stride: 1,
            },
            FusedKind::TwoOthers { loc0, loc1, d1 } => {
                LaneMul::Scalar(self.vals[loc0.index(o, i) * d1 + loc1.index(o, i)])
            }
        }
    }
}

struct SendPtr(*mut Complex64);
unsafe impl Send for SendPtr {}
unsafe impl Sync for SendPtr {}

/// One FFT pass along `axis` with unitary scaling, optionally multiplying the
/// scatter output by a fused phase table.
fn sweep(
    buf: &mut [Complex64],
    shape: &[usize],
    axis: usize,
    dir: Direction,
    fused: Option<(&[usize], &[usize], &[Complex64])>,
    parallel: bool,
) {
    let n = shape[axis];
    let stride: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let fft = plan(n, dir);
    let scale = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let plan =
        fused.map(|(axes, dims, vals)| FusedPlan::new(axes, dims, vals, shape, axis));

    if stride == 1 {
        // Contiguous lanes; lane index == outer index.
        let process = |o0: usize, chunk: &mut [Complex64]| {
            let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
            for (li, lane) in chunk.chunks_exact_mut(n).enumerate() {
                let o = o0 + li;
                fft.process_with_scratch(lane, &mut scratch);
                match plan.as_ref().map(|p| p.lane(o, 0)) {
                    None | Some(LaneMul::Identity) => {
                        for z in lane.iter_mut() {
                            *z *= scale;
                        }
                    }
                    Some(LaneMul::Scalar(c)) => {
                        let f = c * scale;
                        for z in lane.iter_mut() {
                            *z *= f;
                        }
                    }
                    Some(LaneMul::Row { vals, base, stride }) => {
                        for (j, z) in lane.iter_mut().enumerate() {
                            *z *= vals[base + j * stride] * scale;
                        }
                    }
                }
            }
        };
        if parallel && outer > 1 {
            let lanes_per_task = outer.div_ceil(2 * rayon::current_num_threads()).max(1);
            buf.par_chunks_mut(lanes_per_task * n)
                .enumerate()
                .for_each(|(ci, chunk)| process(ci * lanes_per_task, chunk));
        } else {
            process(0, buf);
        }
        return;
    }

    const TILE: usize = 32;
    let block = n * stride;

    let sweep_block = |o: usize, blockbuf: &mut [Complex64], i_lo: usize, i_hi: usize| {
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let mut tile = vec![Complex64::default(); TILE * n];
        let mut muls: Vec<LaneMul> = Vec::with_capacity(TILE);
        let mut i0 = i_lo;
        while i0 < i_hi {
            let t = TILE.min(i_hi - i0);
            for j in 0..n {
                let row = j * stride + i0;
                for l in 0..t {
                    tile[l * n + j] = blockbuf[row + l];
                }
            }
            for l in 0..t {
                fft.process_with_scratch(&mut tile[l * n..(l + 1) * n], &mut scratch);
            }
            match &plan {
                Some(p) => {
                    muls.clear();
                    for l in 0..t {
                        muls.push(p.lane(o, i0 + l));
                    }
                    for j in 0..n {
                        let row = j * stride + i0;
                        for l in 0..t {
                            blockbuf[row + l] = tile[l * n + j] * muls[l].at(j) * scale;
                        }
                    }
                }
                None => {
                    for j in 0..n {
                        let row = j * stride + i0;
                        for l in 0..t {
                            blockbuf[row + l] = tile[l * n + j] * scale;
                        }
                    }
                }
            }
            i0 += t;
        }
    };

    if outer > 1 {
        if parallel {
            buf.par_chunks_mut(block)
                .enumerate()
                .for_each(|(o, blockbuf)| sweep_block(o, blockbuf, 0, stride));
        } else {
            for (o, blockbuf) in buf.chunks_exact_mut(block).enumerate() {
                sweep_block(o, blockbuf, 0, stride);
            }
        }
    } else if parallel {
        // Axis 0: a single block spanning the whole buffer. Split the inner
        // range across tasks; each task touches a disjoint set of columns.
        let nthreads = rayon::current_num_threads().max(1);
        let per = stride.div_ceil(2 * nthreads).max(1);
        let ranges: Vec<(usize, usize)> = (0..stride)
            .step_by(per)
            .map(|lo| (lo, (lo + per).min(stride)))
            .collect();
        let ptr = SendPtr(buf.as_mut_ptr());
        let len = buf.len();
        ranges.par_iter().for_each(|&(lo, hi)| {
            let p = &ptr;
            // Safety: tasks write disjoint column ranges of the same block.
            let slice = unsafe { std::slice::from_raw_parts_mut(p.0, len) };
            sweep_block(0, slice, lo, hi);
        });
    } else {
        sweep_block(0, buf, 0, stride);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::GaussianAxis;

    fn harmonic_gens(grids: &[Grid1D]) -> Vec<SubGen> {
        // Classical harmonic shears on (x, k): A = k p_x, B = -x p_k.
        vec![
            SubGen {
                name: "xshear".into(),
                factors: vec![
                    AxisFactor {
                        axis: 1,
                        rep: Rep::Pos,
                        values: grids[1].points(),
                    },
                    AxisFactor {
                        axis: 0,
                        rep: Rep::Freq,
                        values: grids[0].frequencies(),
                    },
                ],
            },
            SubGen {
                name: "kshear".into(),
                factors: vec![
                    AxisFactor {
                        axis: 0,
                        rep: Rep::Pos,
                        values: grids[0].points().iter().map(|&x| -x).collect(),
                    },
                    AxisFactor {
                        axis: 1,
                        rep: Rep::Freq,
                        values: grids[1].frequencies(),
                    },
                ],
            },
        ]
    }

    #[test]
    fn norm_preserved_and_rotation_correct() {
        let gx = Grid1D::symmetric(128, 8.0, "x").unwrap();
        let gk = Grid1D::symmetric(128, 8.0, "k").unwrap();
        let s = StateVector::gaussian(
            vec![gx.clone(), gk.clone()],
            &[GaussianAxis::packet(1.0), GaussianAxis::packet(0.0)],
        )
        .unwrap();
        let gens = harmonic_gens(&[gx, gk]);
        let t_final = std::f64::consts::FRAC_PI_2;
        let steps = (t_final / 1e-3).round() as usize;
        let dt = t_final / steps as f64;
        let mut ev = SplitEvolver::new(&s, &gens, dt, false).unwrap();
        for _ in 0..steps {
            ev.step();
        }
        assert!((ev.norm() - 1.0).abs() < 1e-10);
        ev.ensure_all_position();
        let xs = ev.grids()[0].points();
        let ks = ev.grids()[1].points();
        let m = ev.moments(&[
            MomentSpec {
                weights: vec![(0, xs)],
            },
            MomentSpec {
                weights: vec![(1, ks)],
            },
        ]);
        // Quarter turn: (1, 0) -> (0, -1).
        assert!(m[0].abs() < 1e-5, "mean x {}", m[0]);
        assert!((m[1] + 1.0).abs() < 1e-5, "mean k {}", m[1]);
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let gx = Grid1D::symmetric(32, 8.0, "x").unwrap();
        let gk = Grid1D::symmetric(32, 8.0, "k").unwrap();
        let s = StateVector::gaussian(
            vec![gx.clone(), gk.clone()],
            &[GaussianAxis::packet(0.5), GaussianAxis::packet(-0.5)],
        )
        .unwrap();
        let gens = harmonic_gens(&[gx, gk]);
        let mut a = SplitEvolver::new(&s, &gens, 1e-2, false).unwrap();
        let mut b = SplitEvolver::new(&s, &gens, 1e-2, true).unwrap();
        for _ in 0..25 {
            a.step();
            b.step();
        }
        assert_eq!(a.state().amps(), b.state().amps());
    }
}
