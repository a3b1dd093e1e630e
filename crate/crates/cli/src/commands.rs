use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use eigenflow_core::dynamics::{classification_table, write_classify_csv, ClassTableRow};
use eigenflow_core::format::sig15;
use eigenflow_core::homotopy::{boundary_collisions, tuning_map, HomotopySpec, TuningParams};
use eigenflow_core::jungreis::{self, partition_by_modulus};
use eigenflow_core::render::{
    overlay_points, render_mandelbrot, snapshot_series, write_snapshot_csv, Raster, Window,
};
use eigenflow_core::spectra::{build_eigenset, EigenRecord, EigenSet};
use eigenflow_core::stats::{
    angle_grid, bin_histogram, density_probe, fit_exp_decay_constrained, fit_logistic,
    logistic_sse, unit_circle_table, write_bins_csv, write_table1_csv, BinHistogram, UnitCircleRow,
    REFERENCE_LOGISTIC,
};
use eigenflow_core::{Complex64, Error};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Kind {
    Linear,
    Cardioid,
    TunedCardioid,
    RadialBulb,
    Scale,
    Jungreis,
    Boundary,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Linear,
        Kind::Cardioid,
        Kind::TunedCardioid,
        Kind::RadialBulb,
        Kind::Scale,
        Kind::Jungreis,
        Kind::Boundary,
    ];
}

/// Half-width of the window around the tuned copy of the eigenset.
const TUNED_HALF_WIDTH: f64 = 0.03;

fn progress(msg: impl AsRef<str>) {
    eprintln!("eigenflow: {}", msg.as_ref());
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn finish(mut w: BufWriter<File>) -> Result<(), Error> {
    w.flush()?;
    Ok(())
}

pub fn prepare_out_dir(cfg: &RunConfig) -> Result<PathBuf, Error> {
    fs::create_dir_all(&cfg.out_dir)?;
    Ok(cfg.out_dir.clone())
}

pub fn eigenset(cfg: &RunConfig) -> Result<EigenSet, Error> {
    progress(format!(
        "computing {} eigenset up to n = {}",
        cfg.family, cfg.n_max
    ));
    let es = build_eigenset(cfg.family, cfg.n_max, cfg.tolerance)?;
    progress(format!("{} records", es.len()));
    Ok(es)
}

pub fn eigens(es: &EigenSet, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            let mut w = BufWriter::new(File::create(path)?);
            es.write_csv(&mut w)?;
            w.flush()?;
            progress(format!("wrote {}", path.display()));
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            es.write_csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

pub struct StatsOutput {
    pub table1: Vec<UnitCircleRow>,
    pub histograms: Vec<BinHistogram>,
    pub density_max: f64,
}

fn fit_json<T: Serialize>(r: Result<T, Error>) -> Value {
    match r {
        Ok(v) => serde_json::to_value(v).unwrap_or(Value::Null),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn stats(cfg: &RunConfig, es: &EigenSet, dir: &Path) -> Result<StatsOutput, Error> {
    let sizes = cfg.table_sizes();
    let table1 = unit_circle_table(es, cfg.eps_ring, &sizes)?;
    let mut w = create(dir, "table1.csv")?;
    write_table1_csv(&table1, &mut w)?;
    finish(w)?;

    let histograms = cfg
        .histogram_sizes()
        .iter()
        .map(|&n| bin_histogram(es, n, cfg.bin_start, cfg.bin_width, cfg.bin_count))
        .collect::<Result<Vec<_>, _>>()?;
    let mut w = create(dir, "bins.csv")?;
    write_bins_csv(&histograms, &mut w)?;
    finish(w)?;

    let xs: Vec<f64> = table1.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = table1.iter().map(|r| r.pct_within).collect();
    let complement: Vec<f64> = ys.iter().map(|y| 100.0 - y).collect();
    let fits = json!({
        "x": xs,
        "pct_within": ys,
        "logistic": fit_json(fit_logistic(&xs, &ys)),
        "logistic_reference": {
            "L": REFERENCE_LOGISTIC[0],
            "k": REFERENCE_LOGISTIC[1],
            "x0": REFERENCE_LOGISTIC[2],
            "sse": logistic_sse(REFERENCE_LOGISTIC, &xs, &ys),
        },
        "exp_decay_left_out": fit_json(fit_exp_decay_constrained(&xs, &complement)),
    });
    let mut w = create(dir, "fits.json")?;
    serde_json::to_writer_pretty(&mut w, &fits)?;
    writeln!(w)?;
    finish(w)?;

    let angles = angle_grid(cfg.density_angles);
    let dist = density_probe(es, &angles, None)?;
    let mut w = create(dir, "density.csv")?;
    writeln!(w, "angle,distance")?;
    for (a, d) in angles.iter().zip(&dist) {
        writeln!(w, "{},{}", sig15(*a), sig15(*d))?;
    }
    finish(w)?;
    let density_max = dist.iter().cloned().fold(0.0, f64::max);

    progress("wrote table1.csv, bins.csv, fits.json, density.csv");
    Ok(StatsOutput {
        table1,
        histograms,
        density_max,
    })
}

pub fn classify(cfg: &RunConfig, es: &EigenSet, dir: &Path) -> Result<Vec<ClassTableRow>, Error> {
    let rows = classification_table(es, &cfg.table_sizes(), &cfg.thresholds)?;
    let mut w = create(dir, "classify.csv")?;
    write_classify_csv(&rows, &mut w)?;
    finish(w)?;
    progress("wrote classify.csv");
    Ok(rows)
}

/// Rasters keyed by window, rendered once per run.
#[derive(Default)]
pub struct RasterCache {
    entries: Vec<Raster>,
}

impl RasterCache {
    pub fn get(&mut self, cfg: &RunConfig, w: &Window) -> Result<&Raster, Error> {
        if let Some(i) = self.entries.iter().position(|r| r.window == *w) {
            return Ok(&self.entries[i]);
        }
        self.entries
            .push(render_mandelbrot(w, cfg.max_iter, cfg.escape_radius)?);
        Ok(self.entries.last().expect("just pushed"))
    }
}

fn global_window(cfg: &RunConfig) -> Window {
    Window::global(cfg.width_px, cfg.height_px)
}

fn bulb_tuning(cfg: &RunConfig) -> TuningParams {
    TuningParams {
        c_prime: cfg.radial_bulb.center,
        ..cfg.tuning
    }
}

/// Homotopy, input points and viewing window for one snapshot kind.
fn snapshot_setup(
    cfg: &RunConfig,
    kind: Kind,
    records: &[EigenRecord],
) -> (HomotopySpec, Vec<Complex64>, Window) {
    let recips: Vec<Complex64> = records.iter().map(|r| r.reciprocal).collect();
    let global = global_window(cfg);
    match kind {
        Kind::Linear => (
            HomotopySpec::Linear {
                target: cfg.linear_target,
            },
            recips,
            global,
        ),
        Kind::Cardioid => (HomotopySpec::Cardioid, recips, global),
        Kind::Scale => (HomotopySpec::Scale, recips, global),
        Kind::Boundary => (HomotopySpec::Boundary, recips, global),
        Kind::Jungreis => (
            HomotopySpec::Jungreis {
                m: cfg.jungreis_terms,
            },
            recips,
            global,
        ),
        Kind::TunedCardioid => {
            let pts = recips.iter().map(|z| tuning_map(*z, &cfg.tuning)).collect();
            let w = Window::centered(
                cfg.rotated_cardioid.center,
                TUNED_HALF_WIDTH,
                cfg.width_px,
                cfg.height_px,
            );
            (HomotopySpec::TunedCardioid(cfg.rotated_cardioid), pts, w)
        }
        Kind::RadialBulb => {
            let tp = bulb_tuning(cfg);
            let pts = recips.iter().map(|z| tuning_map(*z, &tp)).collect();
            (
                HomotopySpec::RadialBulb(cfg.radial_bulb),
                pts,
                Window::period3(cfg.width_px, cfg.height_px),
            )
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesSummary {
    pub kind: &'static str,
    pub frames: Vec<String>,
    pub points: usize,
    pub dropped: Vec<usize>,
    /// Whether the `t = 0` frame (if present) reproduces its inputs exactly.
    pub identity_frame: Option<bool>,
}

pub fn homotopy(
    cfg: &RunConfig,
    es: &EigenSet,
    kinds: &[Kind],
    dir: &Path,
    rasters: &mut RasterCache,
) -> Result<Vec<SeriesSummary>, Error> {
    let records = es.up_to(cfg.figure_size());
    let mut out = Vec::new();
    for &kind in kinds {
        let (spec, points, window) = snapshot_setup(cfg, kind, records);
        let raster = rasters.get(cfg, &window)?;
        let frames = snapshot_series(
            &spec,
            &points,
            &cfg.t_grid,
            &window,
            Some(raster),
            &cfg.marker,
        )?;
        for f in &frames {
            let mut w = create(dir, &f.file_name)?;
            f.figure.write_svg(&mut w)?;
            finish(w)?;
        }
        let csv_name = format!("{}_snapshots.csv", spec.name());
        let mut w = create(dir, &csv_name)?;
        write_snapshot_csv(records, &frames, &mut w)?;
        finish(w)?;
        let identity_frame = frames
            .iter()
            .find(|f| f.t == 0.0)
            .map(|f| f.images == points);
        progress(format!(
            "wrote {} {} frames and {csv_name}",
            frames.len(),
            spec.name()
        ));
        out.push(SeriesSummary {
            kind: spec.name(),
            frames: frames.iter().map(|f| f.file_name.clone()).collect(),
            points: points.len(),
            dropped: frames.iter().map(|f| f.figure.dropped).collect(),
            identity_frame,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct JungreisSummary {
    pub eps: f64,
    pub unit_ring: usize,
    pub inside: usize,
    pub outside: usize,
    pub snapshots: SeriesSummary,
}

pub fn jungreis(
    cfg: &RunConfig,
    es: &EigenSet,
    dir: &Path,
    rasters: &mut RasterCache,
) -> Result<JungreisSummary, Error> {
    let mut w = create(dir, "jungreis_coefficients.json")?;
    jungreis::coefficients().write_json(&mut w)?;
    writeln!(w)?;
    finish(w)?;
    let part = partition_by_modulus(es, cfg.eps_ring)?;
    let summary = JungreisSummary {
        eps: cfg.eps_ring,
        unit_ring: part.unit_ring.len(),
        inside: part.inside.len(),
        outside: part.outside.len(),
        snapshots: homotopy(cfg, es, &[Kind::Jungreis], dir, rasters)?.remove(0),
    };
    let mut w = create(dir, "jungreis_partition.json")?;
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w)?;
    finish(w)?;
    progress(format!(
        "partition: {} in ring, {} inside, {} outside",
        summary.unit_ring, summary.inside, summary.outside
    ));
    Ok(summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct RenderSummary {
    pub files: Vec<String>,
    pub markers: BTreeMap<String, usize>,
    pub dropped: BTreeMap<String, usize>,
}

pub fn render(
    cfg: &RunConfig,
    es: &EigenSet,
    dir: &Path,
    rasters: &mut RasterCache,
) -> Result<RenderSummary, Error> {
    let records = es.up_to(cfg.figure_size());
    let recips: Vec<Complex64> = records.iter().map(|r| r.reciprocal).collect();
    let global = global_window(cfg);
    let raster = rasters.get(cfg, &global)?.clone();
    let mut w = create(dir, "mandelbrot.pgm")?;
    raster.write_pgm(&mut w)?;
    finish(w)?;

    let mut summary = RenderSummary {
        files: vec!["mandelbrot.pgm".into()],
        markers: BTreeMap::new(),
        dropped: BTreeMap::new(),
    };
    let tp = bulb_tuning(cfg);
    let tuned: Vec<Complex64> = recips.iter().map(|z| tuning_map(*z, &tp)).collect();
    let period3 = Window::period3(cfg.width_px, cfg.height_px);
    let p3_raster = rasters.get(cfg, &period3)?.clone();
    for (name, r, pts) in [
        ("eigenset.svg", &raster, &recips),
        ("period3.svg", &p3_raster, &tuned),
    ] {
        let mut fig = overlay_points(r, pts, &cfg.marker);
        fig.title = Some(format!("{} n <= {}", cfg.family, cfg.figure_size()));
        let mut w = create(dir, name)?;
        fig.write_svg(&mut w)?;
        finish(w)?;
        summary.files.push(name.into());
        summary.markers.insert(name.into(), fig.markers.len());
        summary.dropped.insert(name.into(), fig.dropped);
    }
    progress("wrote mandelbrot.pgm, eigenset.svg, period3.svg");
    Ok(summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

/// Runs every stage and writes `summary.json`; returns the structural checks.
pub fn reproduce_all(cfg: &RunConfig) -> Result<Vec<Check>, Error> {
    let dir = prepare_out_dir(cfg)?;
    let es = eigenset(cfg)?;
    eigens(&es, Some(&dir.join("eigens.csv")))?;
    let st = stats(cfg, &es, &dir)?;
    let classes = classify(cfg, &es, &dir)?;
    let mut rasters = RasterCache::default();
    let jg = jungreis(cfg, &es, &dir, &mut rasters)?;
    let kinds: Vec<Kind> = Kind::ALL
        .iter()
        .copied()
        .filter(|k| *k != Kind::Jungreis)
        .collect();
    let mut series = homotopy(cfg, &es, &kinds, &dir, &mut rasters)?;
    series.push(jg.snapshots.clone());
    let rendered = render(cfg, &es, &dir, &mut rasters)?;

    let mut checks = Vec::new();
    for r in &st.table1 {
        let expected = EigenSet::expected_len(cfg.family, r.n);
        checks.push(check(
            format!("table1 total n={}", r.n),
            r.total == expected && r.within + r.left_out == r.total,
            format!("total {} expected {expected}", r.total),
        ));
    }
    for h in &st.histograms {
        let total = EigenSet::expected_len(cfg.family, h.n);
        let counted = h.counts.iter().sum::<usize>() + h.out_of_range();
        checks.push(check(
            format!("bins partition n={}", h.n),
            counted == total,
            format!("{counted} of {total}"),
        ));
        let ring_bin = h.bin_index(1.0 - cfg.eps_ring);
        if let (Some(i), Some(row)) = (ring_bin, st.table1.iter().find(|r| r.n == h.n)) {
            if (h.bin_width - 2.0 * cfg.eps_ring).abs() < 1e-12 {
                checks.push(check(
                    format!("ring bin equals within n={}", h.n),
                    h.counts[i] == row.within,
                    format!("bin {} within {}", h.counts[i], row.within),
                ));
            }
        }
    }
    for r in &classes {
        checks.push(check(
            format!("classification partition n={}", r.n),
            r.classified_total + r.others == r.grand_total,
            format!("{} + {} vs {}", r.classified_total, r.others, r.grand_total),
        ));
        if cfg.family == eigenflow_core::SequenceFamily::Fibonacci {
            checks.push(check(
                format!("hyperbolic n={}", r.n),
                r.hyperbolic == r.n - 1,
                format!("{}", r.hyperbolic),
            ));
        }
    }
    checks.push(check(
        "modulus partition",
        jg.unit_ring + jg.inside + jg.outside == es.len(),
        format!("{} + {} + {}", jg.unit_ring, jg.inside, jg.outside),
    ));
    for s in &series {
        checks.push(check(
            format!("{} frame count", s.kind),
            s.frames.len() == cfg.t_grid.len(),
            format!("{}", s.frames.len()),
        ));
        if s.kind != "radial_bulb" {
            if let Some(ok) = s.identity_frame {
                checks.push(check(format!("{} identity at t=0", s.kind), ok, ""));
            }
        }
    }
    let svgs = series.iter().map(|s| s.frames.len()).sum::<usize>() + 2;
    checks.push(check("svg count", svgs >= 5, format!("{svgs}")));

    let recips: Vec<Complex64> = es
        .up_to(cfg.figure_size())
        .iter()
        .map(|r| r.reciprocal)
        .collect();
    let summary = json!({
        "family": cfg.family,
        "n_max": cfg.n_max,
        "records": es.len(),
        "figure_n": cfg.figure_size(),
        "density_probe_max": st.density_max,
        "boundary_collisions": boundary_collisions(&recips),
        "jungreis": jg,
        "snapshots": series,
        "render": rendered,
        "checks": checks,
    });
    let mut w = create(&dir, "summary.json")?;
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w)?;
    finish(w)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    progress(format!(
        "{} checks, {failed} failed; outputs in {}",
        checks.len(),
        dir.display()
    ));
    Ok(checks)
}
