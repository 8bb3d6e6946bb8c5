//! CSV files written and read by the commands.
//!
//! Every number is written in scientific notation with 15 significant
//! digits, so identical runs produce byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use fermat_osc::analysis::{Deviation, SinusoidFit};
use fermat_osc::dynamics::{EventLog, Trajectory, TrajectorySample};

pub const TRAJECTORY_HEADER: [&str; 5] = ["t", "x", "xdot", "phi", "energy"];

fn num(v: f64) -> String {
    format!("{v:.14e}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn write_rows<const N: usize>(
    path: &Path,
    comment: &str,
    header: [&str; N],
    rows: impl Iterator<Item = [String; N]>,
) -> Result<()> {
    let mut out = create(path)?;
    writeln!(out, "# {comment}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trajectory(path: &Path, traj: &Trajectory) -> Result<()> {
    write_rows(
        path,
        "t: time; x: distance |A1S| along the axis; xdot: axial velocity; phi: angle A4-S-A3 in radians; \
         energy: m0*xdot^2/2 + V(x)",
        TRAJECTORY_HEADER,
        traj.samples.iter().map(|s| [num(s.t), num(s.x), num(s.xdot), num(s.phi), num(s.energy)]),
    )
}

pub fn write_events(path: &Path, events: &EventLog) -> Result<()> {
    let mut rows: Vec<(f64, [String; 4])> = events
        .o_crossings
        .iter()
        .map(|c| {
            (
                c.t,
                [
                    format!("crossing{}", c.direction),
                    num(c.t),
                    num(c.x),
                    num(c.xdot),
                ],
            )
        })
        .chain(
            events
                .turning_points
                .iter()
                .map(|p| (p.t, ["turn".to_string(), num(p.t), num(p.x), num(p.xdot)])),
        )
        .collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    write_rows(
        path,
        "crossing+/crossing-: passage through the Fermat-Torricelli point away from / towards A1; turn: zero velocity",
        ["kind", "t", "x", "xdot"],
        rows.into_iter().map(|r| r.1),
    )
}

pub fn write_fit(path: &Path, fit: &SinusoidFit) -> Result<()> {
    write_rows(
        path,
        "x(t) ~ d + A*sin(omega*(t - t0))",
        ["d", "A", "omega", "t0", "rmse"],
        std::iter::once([
            num(fit.offset),
            num(fit.amplitude),
            num(fit.omega),
            num(fit.t0),
            num(fit.rmse),
        ]),
    )
}

pub fn write_deviation(path: &Path, dev: &[Deviation]) -> Result<()> {
    write_rows(
        path,
        "dx = x(t) - fit(t); dv = |xdot(t)| - |fit'(t)|",
        ["t", "dx", "dv"],
        dev.iter().map(|d| [num(d.t), num(d.dx), num(d.dv)]),
    )
}

/// Reads a trajectory file; errors name the offending line.
pub fn read_trajectory(path: &Path) -> Result<Vec<TrajectorySample>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(file);
    let header = rdr
        .headers()
        .with_context(|| format!("{}: unreadable header", path.display()))?
        .clone();
    if header.is_empty() {
        bail!(
            "{}: empty file, expected header `{}`",
            path.display(),
            TRAJECTORY_HEADER.join(",")
        );
    }
    if header.iter().map(str::trim).ne(TRAJECTORY_HEADER) {
        bail!(
            "{} line {}: expected header `{}`, found `{}`",
            path.display(),
            header.position().map_or(1, |p| p.line()),
            TRAJECTORY_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        );
    }
    let mut samples = Vec::new();
    for record in rdr.records() {
        let record = record.with_context(|| format!("{}: malformed row", path.display()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 5 {
            bail!(
                "{} line {line}: expected 5 fields, found {}",
                path.display(),
                record.len()
            );
        }
        let mut v = [0.0; 5];
        for (slot, field) in v.iter_mut().zip(record.iter()) {
            *slot = field.trim().parse().with_context(|| {
                format!("{} line {line}: `{field}` is not a number", path.display())
            })?;
        }
        samples.push(TrajectorySample {
            t: v[0],
            x: v[1],
            xdot: v[2],
            phi: v[3],
            energy: v[4],
        });
    }
    if samples.is_empty() {
        bail!("{}: no data rows", path.display());
    }
    if samples
        .windows(2)
        .any(|w| w[1].t.partial_cmp(&w[0].t) != Some(std::cmp::Ordering::Greater))
    {
        bail!("{}: times must be strictly increasing", path.display());
    }
    Ok(samples)
}
