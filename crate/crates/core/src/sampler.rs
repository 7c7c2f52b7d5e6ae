//! Grid sampling of the orbit congruences and ruled-surface export.
//!
//! A grid runs row-major over (psi, psi_star, ruling). Every cell builds
//! the dual angle, evaluates the moving frame, picks the designated dual
//! vector and recovers a real point of its line — the dual-arithmetic path
//! only, never the expanded coordinate formulas, so exported geometry stays
//! trustworthy where those expansions carry misprints. Cells that hit a
//! degenerate configuration are skipped and counted. Identical grids yield
//! bit-identical sample sets regardless of thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

use crate::dual::DualScalar;
use crate::error::{Error, Result};
use crate::expansions::CaseParams;
use crate::minkowski::Vec3L;
use crate::motion::{frame_at, orbit_point, LambdaSign, MotionConfig, OrbitSpec};
use crate::study::{line_point, raw_point};

/// Faces with Euclidean area at or below this are dropped as degenerate.
pub const DEGENERATE_FACE_AREA: f64 = 1e-14;

const LINE_GATE_TOL: f64 = 1e-9;

/// One sampled axis: `count = 1` means the single value `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn single(v: f64) -> Self {
        Axis {
            lo: v,
            hi: v,
            count: 1,
        }
    }

    pub fn new(lo: f64, hi: f64, count: usize) -> Self {
        Axis { lo, hi, count }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidGrid {
                reason: "axis count must be at least 1".into(),
            });
        }
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::InvalidGrid {
                reason: "axis bounds must be finite".into(),
            });
        }
        if self.count > 1 && self.hi < self.lo {
            return Err(Error::InvalidGrid {
                reason: "axis upper bound below lower bound".into(),
            });
        }
        Ok(())
    }

    /// Inclusive linear spacing; the last value is pinned to `hi` exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.hi
                } else {
                    self.lo + step * i as f64
                }
            })
            .collect()
    }
}

/// The grid: two congruence parameters plus the ruling parameter, and the
/// fixed values for everything else.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub psi: Axis,
    pub psi_star: Axis,
    pub ruling: Axis,
    pub fixed: CaseParams,
}

/// Which dual vector the congruence is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    /// The orbit point for the fixed dual angles p, q.
    General,
    V1,
    V2,
    V3,
}

impl Generator {
    pub fn as_str(&self) -> &'static str {
        match self {
            Generator::General => "general",
            Generator::V1 => "v1",
            Generator::V2 => "v2",
            Generator::V3 => "v3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub psi: f64,
    pub psi_star: f64,
    pub ruling: f64,
    pub point: Vec3L,
}

/// Row-major samples over (psi, psi_star, ruling) with skips counted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleSet {
    pub generator: Generator,
    pub branch: LambdaSign,
    pub grid: GridSpec,
    pub skipped: usize,
    pub records: Vec<SampleRecord>,
}

/// Sample a congruence over the grid via the dual-arithmetic path.
pub fn sample_congruence(
    generator: Generator,
    grid: &GridSpec,
    branch: LambdaSign,
) -> Result<SampleSet> {
    grid.psi.validate()?;
    grid.psi_star.validate()?;
    grid.ruling.validate()?;

    // For the general orbit the dual angles are grid constants; reject an
    // unusable pair up front rather than skipping every cell.
    let orbit = if generator == Generator::General {
        Some(OrbitSpec::new(
            DualScalar::new(grid.fixed.p, grid.fixed.p_star),
            DualScalar::new(grid.fixed.q, grid.fixed.q_star),
        )?)
    } else {
        None
    };

    let psis = grid.psi.values();
    let stars = grid.psi_star.values();
    let rulings = grid.ruling.values();
    let (ns, nr) = (stars.len(), rulings.len());
    let total = psis.len() * ns * nr;
    let fixed = grid.fixed;

    let cells: Vec<Option<SampleRecord>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let psi = psis[idx / (ns * nr)];
            let psi_star = stars[(idx / nr) % ns];
            let ruling = rulings[idx % nr];
            let cfg = MotionConfig::new(DualScalar::new(fixed.sigma, fixed.sigma_star), branch);
            let pose = frame_at(&cfg, DualScalar::new(psi, psi_star)).ok()?;
            let point = match generator {
                Generator::General => {
                    let x = orbit_point(&pose, orbit.as_ref().unwrap()).ok()?;
                    // The orbit point is generally on neither dual sphere,
                    // so only the formal recovery applies to it.
                    raw_point(&x, ruling)
                }
                Generator::V1 => line_point(&pose.v1, ruling, LINE_GATE_TOL).ok()?,
                Generator::V2 => line_point(&pose.v2, ruling, LINE_GATE_TOL).ok()?,
                Generator::V3 => line_point(&pose.v3, ruling, LINE_GATE_TOL).ok()?,
            };
            point.is_finite().then_some(SampleRecord {
                psi,
                psi_star,
                ruling,
                point,
            })
        })
        .collect();

    let records: Vec<SampleRecord> = cells.iter().flatten().copied().collect();
    let skipped = total - records.len();
    Ok(SampleSet {
        generator,
        branch,
        grid: *grid,
        skipped,
        records,
    })
}

/// Left-hand side of the ruled-surface equation satisfied by the v1-orbit
/// congruence at sigma = 0:
/// `cosh(psi)^2 (y2 + lambda/cosh(psi))^2 - y3^2 sinh(psi)^2`.
pub fn surface_residual_v1_sigma0(y: Vec3L, psi: f64, lambda: f64) -> f64 {
    let ch = psi.cosh();
    let sh = psi.sinh();
    let m = y.c2 + lambda / ch;
    ch * ch * m * m - y.c3 * y.c3 * sh * sh
}

/// Residuals of the v3-orbit congruence relations
/// `y3^2 - y2^2 = lambda^2` and `y1 = psi_star`.
pub fn congruence_residual_v3(y: Vec3L, lambda: f64, psi_star: f64) -> (f64, f64) {
    (
        y.c3 * y.c3 - y.c2 * y.c2 - lambda * lambda,
        y.c1 - psi_star,
    )
}

/// Which of the two helicoid relations to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HelicoidForm {
    /// `g1 - k * atanh(g2 / g3)`
    G1FromG2G3,
    /// `g2 - k * atanh(g3 / g1)`
    G2FromG3G1,
}

/// Helicoid relation residual; errors when the atanh argument leaves
/// (-1, 1) or its denominator vanishes.
pub fn helicoid_residual(g: Vec3L, k: f64, form: HelicoidForm) -> Result<f64> {
    let (lhs, ratio) = match form {
        HelicoidForm::G1FromG2G3 => (g.c1, g.c2 / g.c3),
        HelicoidForm::G2FromG3G1 => (g.c2, g.c3 / g.c1),
    };
    if !ratio.is_finite() || ratio.abs() >= 1.0 {
        return Err(Error::OutOfDomain { value: ratio });
    }
    Ok(lhs - k * ratio.atanh())
}

/// Triangle mesh with 0-based vertex indices; faces of near-zero area are
/// never emitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<Vec3L>,
    pub faces: Vec<[usize; 3]>,
}

/// Which varying axis runs along mesh rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Psi,
    Ruling,
}

fn triangle_area(a: &Vec3L, b: &Vec3L, c: &Vec3L) -> f64 {
    // Euclidean area, used only to drop collapsed faces.
    let u = *b - *a;
    let v = *c - *a;
    let cx = u.c2 * v.c3 - u.c3 * v.c2;
    let cy = u.c3 * v.c1 - u.c1 * v.c3;
    let cz = u.c1 * v.c2 - u.c2 * v.c1;
    0.5 * (cx * cx + cy * cy + cz * cz).sqrt()
}

/// Tessellate a complete 2-d slice of a sample set into triangles.
///
/// Exactly one grid axis must hold a single value; the remaining two span
/// the slice. `sweep` picks which varying axis runs along rows.
pub fn to_mesh(set: &SampleSet, sweep: SweepAxis) -> Result<Mesh> {
    if set.skipped > 0 {
        return Err(Error::IncompleteSlice {
            reason: format!("{} skipped cells break the grid topology", set.skipped),
        });
    }
    let (np, ns, nr) = (
        set.grid.psi.count,
        set.grid.psi_star.count,
        set.grid.ruling.count,
    );
    // index strides in the row-major record layout
    let (rows, cols, row_stride, col_stride) = match (np, ns, nr, sweep) {
        (_, 1, _, SweepAxis::Psi) if np > 1 && nr > 1 => (np, nr, nr, 1),
        (_, 1, _, SweepAxis::Ruling) if np > 1 && nr > 1 => (nr, np, 1, nr),
        (_, _, 1, SweepAxis::Psi) if np > 1 && ns > 1 => (np, ns, ns, 1),
        (1, _, _, SweepAxis::Ruling) if ns > 1 && nr > 1 => (nr, ns, 1, nr),
        (1, _, _, SweepAxis::Psi) if ns > 1 && nr > 1 => {
            return Err(Error::InvalidGrid {
                reason: "sweep axis psi holds a single value in this slice".into(),
            })
        }
        (_, _, 1, SweepAxis::Ruling) if np > 1 && ns > 1 => {
            return Err(Error::InvalidGrid {
                reason: "sweep axis ruling holds a single value in this slice".into(),
            })
        }
        _ => {
            return Err(Error::IncompleteSlice {
                reason: format!(
                    "need exactly one single-valued axis with the other two >= 2, got {}x{}x{}",
                    np, ns, nr
                ),
            })
        }
    };

    let mut vertices = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            vertices.push(set.records[r * row_stride + c * col_stride].point);
        }
    }
    let mut faces = Vec::with_capacity(2 * (rows - 1) * (cols - 1));
    for r in 0..rows - 1 {
        for c in 0..cols - 1 {
            let i00 = r * cols + c;
            let i01 = i00 + 1;
            let i10 = i00 + cols;
            let i11 = i10 + 1;
            for tri in [[i00, i01, i11], [i00, i11, i10]] {
                if triangle_area(&vertices[tri[0]], &vertices[tri[1]], &vertices[tri[2]])
                    > DEGENERATE_FACE_AREA
                {
                    faces.push(tri);
                }
            }
        }
    }
    Ok(Mesh { vertices, faces })
}

/// 17 significant digits, enough to round-trip any double.
fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

/// CSV export: `psi,psi_star,ruling,y1,y2,y3`, LF line endings.
pub fn write_csv<W: Write>(set: &SampleSet, mut w: W) -> io::Result<()> {
    w.write_all(b"psi,psi_star,ruling,y1,y2,y3\n")?;
    for r in &set.records {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt17(r.psi),
            fmt17(r.psi_star),
            fmt17(r.ruling),
            fmt17(r.point.c1),
            fmt17(r.point.c2),
            fmt17(r.point.c3)
        )?;
    }
    Ok(())
}

fn axis_summary(a: &Axis) -> String {
    format!("{}:{}:{}", a.lo, a.hi, a.count)
}

/// OBJ export of a tessellated slice. The first coordinate maps to x, the
/// second to y and the timelike third to z, as the header comment notes.
pub fn write_obj<W: Write>(set: &SampleSet, mesh: &Mesh, mut w: W) -> io::Result<()> {
    writeln!(w, "# lorentz-conchoid")?;
    writeln!(
        w,
        "# generator={} branch={} psi={} psi_star={} ruling={}",
        set.generator.as_str(),
        set.branch.as_str(),
        axis_summary(&set.grid.psi),
        axis_summary(&set.grid.psi_star),
        axis_summary(&set.grid.ruling),
    )?;
    writeln!(
        w,
        "# fixed: sigma={} sigma_star={} p={} p_star={} q={} q_star={}",
        set.grid.fixed.sigma,
        set.grid.fixed.sigma_star,
        set.grid.fixed.p,
        set.grid.fixed.p_star,
        set.grid.fixed.q,
        set.grid.fixed.q_star,
    )?;
    writeln!(w, "# axes: x=y1 y=y2 z=y3 (z is the timelike coordinate)")?;
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", fmt17(v.c1), fmt17(v.c2), fmt17(v.c3))?;
    }
    for f in &mesh.faces {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}
