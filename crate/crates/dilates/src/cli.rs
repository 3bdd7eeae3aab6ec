//! Command-line entry point: thin argument handling over the library.
//!
//! Exit codes: 0 success, 1 computational refusal (caps, inconclusive
//! results, precision exhaustion), 2 input error.

use crate::config::ExperimentConfig;
use crate::density::flags::IdealFlagData;
use crate::density::regular::regular_decomposition;
use crate::density::{lattice_density, Flag, PeriodicSet, DEFAULT_DENSITY_CAP};
use crate::error::{Error, Result};
use crate::hconst::h_constant;
use crate::lattice::IntegerLattice;
use crate::matfam::{analyze, MatrixFamily};
use crate::numfield::{DilateSystem, IntegralBasis};
use crate::sumset::{
    coordinate_maps, dilate_sumset_size, extremal_set, linear_sumset, PointSet, DEFAULT_POINT_CAP,
};
use crate::textform::{
    format_points, parse_basis, parse_matrices, parse_points, parse_rational, parse_system,
};
use crate::voxel::{verify_cts_bound, EigenStructure, VoxelSet};
use clap::{Args, Parser, Subcommand};

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::IndexCapExceeded { .. }
            | Error::MemoryCapExceeded { .. }
            | Error::SearchCapExceeded
            | Error::Inconclusive
            | Error::PrecisionExhausted(_)
            | Error::CertificationFailed { .. }
            | Error::TooManyAmbiguous
            | Error::NotPreCommuting
            | Error::NotIrreducible
            | Error::PreCommutingUnsupported => 1,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "dilates",
    about = "Exact sum-of-dilates constants, matrix family analysis, sumset and lattice-density experiments",
    version
)]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Flat key-value config file supplying defaults for the flags.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    json: Option<String>,
    /// Seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct SystemArgs {
    /// Defining polynomial in t (or "rational" for Q).
    #[arg(long)]
    field: Option<String>,
    /// Dilate as a polynomial in t; repeat for several dilates.
    #[arg(long = "dilate")]
    dilates: Vec<String>,
    /// Integral basis: quadratic:<m>, monogenic, or rational.
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certified H(λ1,...,λk) for a dilate system.
    Hconst {
        #[command(flatten)]
        sys: SystemArgs,
        /// Maximum width of the certified interval.
        #[arg(long)]
        width: Option<f64>,
    },
    /// Analyze an integer matrix family L_0,...,L_k.
    Analyze {
        /// JSON file (or inline JSON) with a list of integer matrices.
        #[arg(long)]
        mats: Option<String>,
        #[arg(long)]
        width: Option<f64>,
    },
    /// Exact sumset of finite point sets under integer matrices.
    Sumset {
        /// Point-set file (one integer vector per line); repeat per factor,
        /// or give one file to reuse for every factor.
        #[arg(long = "set")]
        sets: Vec<String>,
        #[arg(long)]
        mats: Option<String>,
        /// Refuse enumerations whose projected size exceeds this cap.
        #[arg(long)]
        cap: Option<u128>,
        /// Write the resulting point set to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// The extremal construction nA' ∩ D and its growth ratio.
    Extremal {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        n: Option<u32>,
        /// Comma-separated per-eigenspace radii (default all 1).
        #[arg(long)]
        radii: Option<String>,
        /// Run a whole schedule n1,n2,... and print a ratio table.
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long)]
        out: Option<String>,
        /// Write the ratio table to this CSV file.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Lattice density of a periodic set with respect to a flag.
    Ld {
        /// JSON matrix whose columns generate the period lattice.
        #[arg(long)]
        period: Option<String>,
        /// Residue file (one integer vector per line).
        #[arg(long)]
        residues: Option<String>,
        /// JSON list of matrices, one per flag member (columns generate each
        /// lattice), ordered from the bottom of the chain upward.
        #[arg(long)]
        flag: Option<String>,
    },
    /// Ideal-derived flag families F_n and G_n.
    Flags {
        #[command(flatten)]
        sys: SystemArgs,
        /// Comma-separated exponent vector n.
        #[arg(long)]
        n: Option<String>,
    },
    /// Regularity decomposition of a finite set in [0,N)^d.
    Regularize {
        #[command(flatten)]
        sys: SystemArgs,
        /// Point-set file for A.
        #[arg(long)]
        points: Option<String>,
        /// Box size N.
        #[arg(long = "big-n")]
        big_n: Option<i64>,
        /// Cube split factor M.
        #[arg(long)]
        m: Option<u32>,
        /// Regularity slack δ, e.g. "1/5".
        #[arg(long)]
        delta: Option<String>,
        /// Projection level l.
        #[arg(long)]
        level: Option<usize>,
        /// Comma-separated trailing exponents n_{l+1..k}.
        #[arg(long = "n-rest")]
        n_rest: Option<String>,
    },
    /// Voxel-grid check of the continuous lower bound.
    #[command(name = "verify-cts")]
    VerifyCts {
        /// Disk of this radius centered at the origin.
        #[arg(long)]
        disk: Option<f64>,
        /// Box "x0,y0:x1,y1" (repeatable; union of boxes).
        #[arg(long = "box")]
        boxes: Vec<String>,
        /// Eigenstructure as JSON (inline or a file path):
        /// {"blocks":[{"dim":2,"scales":[1.0,0.8],"angles":[0.0,0.7]}]}.
        #[arg(long)]
        eigen: Option<String>,
        /// Voxels per unit length (h = 1/resolution).
        #[arg(long)]
        resolution: Option<u32>,
    },
    /// Time the main operations.
    Bench,
    /// Run the full acceptance/invariant suite.
    Selftest,
}

pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // clap uses exit code 2 for usage errors, 0 for --help/--version
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let config = match &cli.config {
        Some(path) => match ExperimentConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {}", e);
                return 2;
            }
        },
        None => ExperimentConfig::default(),
    };
    match dispatch(&cli, &config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}

fn write_json(cli_json: &Option<String>, value: &serde_json::Value) -> Result<()> {
    if let Some(path) = cli_json {
        std::fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    }
    Ok(())
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

fn build_system(args: &SystemArgs, config: &ExperimentConfig) -> Result<DilateSystem> {
    let field = config
        .pick_owned(args.field.clone(), "field")
        .ok_or_else(|| Error::Invalid("missing --field".into()))?;
    let dilates = if args.dilates.is_empty() {
        config
            .list("dilates")
            .ok_or_else(|| Error::Invalid("missing --dilate".into()))?
    } else {
        args.dilates.clone()
    };
    parse_system(&field, &dilates)
}

fn build_basis(
    args: &SystemArgs,
    config: &ExperimentConfig,
    sys: &DilateSystem,
) -> Result<IntegralBasis> {
    let spec = config
        .pick_owned(args.basis.clone(), "basis")
        .ok_or_else(|| Error::Invalid("missing --basis".into()))?;
    parse_basis(&spec, &sys.field)
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {:?}", w)))
        })
        .collect()
}

fn read_matrices(src: &str) -> Result<Vec<Vec<Vec<i64>>>> {
    if std::path::Path::new(src).exists() {
        parse_matrices(&std::fs::read_to_string(src)?)
    } else {
        parse_matrices(src)
    }
}

fn dispatch(cli: &Cli, config: &ExperimentConfig) -> Result<()> {
    match &cli.cmd {
        Cmd::Hconst { sys, width } => {
            let system = build_system(sys, config)?;
            let width = width
                .or_else(|| config.get("width").and_then(|w| w.parse().ok()))
                .unwrap_or(1e-9);
            let h = h_constant(&system, width, cli.seed)?;
            println!(
                "H in [{:.12}, {:.12}]  (N(D) = {}, archimedean in [{:.12}, {:.12}])",
                h.h_lo, h.h_hi, h.ideal_norm_factor, h.archimedean_lo, h.archimedean_hi
            );
            if let Some(exact) = &h.exact_rational {
                println!("exact value: {}", exact);
            }
            let report = serde_json::json!({
                "field": config.pick_owned(sys.field.clone(), "field"),
                "dilates": if sys.dilates.is_empty() { config.list("dilates").unwrap_or_default() } else { sys.dilates.clone() },
                "ideal_norm_factor": h.ideal_norm_factor,
                "h_lo": h.h_lo,
                "h_hi": h.h_hi,
                "archimedean_lo": h.archimedean_lo,
                "archimedean_hi": h.archimedean_hi,
                "exact": h.exact_rational,
            });
            write_json(&cli.json, &report)
        }
        Cmd::Analyze { mats, width } => {
            let src = config
                .pick_owned(mats.clone(), "mats")
                .ok_or_else(|| Error::Invalid("missing --mats".into()))?;
            let fam = MatrixFamily::from_rows_i64(&read_matrices(&src)?)?;
            let report = analyze(&fam, width.unwrap_or(1e-9), cli.seed);
            println!("pre_commuting: {:?}", report.pre_commuting);
            println!("irreducible:   {:?}", report.irreducible);
            println!("coprime:       {:?}", report.coprime);
            println!("det form:      {}", report.det_form);
            if let Some(h) = &report.h {
                println!("H in [{:.12}, {:.12}]", h.h_lo, h.h_hi);
            }
            write_json(&cli.json, &serde_json::to_value(&report)?)
        }
        Cmd::Sumset {
            sets,
            mats,
            cap,
            out,
        } => {
            let mats_src = config
                .pick_owned(mats.clone(), "mats")
                .ok_or_else(|| Error::Invalid("missing --mats".into()))?;
            let parsed_mats = read_matrices(&mats_src)?;
            let set_paths: Vec<String> = if sets.is_empty() {
                config
                    .list("sets")
                    .ok_or_else(|| Error::Invalid("missing --set".into()))?
            } else {
                sets.clone()
            };
            let mut point_sets: Vec<PointSet> = set_paths
                .iter()
                .map(|p| parse_points(&std::fs::read_to_string(p)?))
                .collect::<Result<_>>()?;
            if point_sets.len() == 1 && parsed_mats.len() > 1 {
                point_sets = vec![point_sets[0].clone(); parsed_mats.len()];
            }
            let cap = cap
                .or_else(|| config.get("cap").and_then(|c| c.parse().ok()))
                .unwrap_or(DEFAULT_POINT_CAP);
            let sum = linear_sumset(&point_sets, &parsed_mats, cap)?;
            println!(
                "|sum| = {}  (inputs {:?})",
                sum.len(),
                point_sets.iter().map(PointSet::len).collect::<Vec<_>>()
            );
            if let Some(path) = out {
                std::fs::write(path, format_points(&sum))?;
            }
            write_json(
                &cli.json,
                &serde_json::json!({
                    "sizes": point_sets.iter().map(PointSet::len).collect::<Vec<_>>(),
                    "sum_size": sum.len(),
                }),
            )
        }
        Cmd::Extremal {
            sys,
            n,
            radii,
            schedule,
            out,
            csv,
        } => {
            let system = build_system(sys, config)?;
            let basis = build_basis(sys, config, &system)?;
            let radii: Option<Vec<f64>> = match config.pick_owned(radii.clone(), "radii") {
                Some(s) => Some(
                    s.split(',')
                        .map(|w| {
                            w.trim()
                                .parse()
                                .map_err(|_| Error::Parse("bad radius".into()))
                        })
                        .collect::<Result<_>>()?,
                ),
                None => None,
            };
            if let Some(sched) = config.pick_owned(schedule.clone(), "schedule") {
                let ns = parse_u32_list(&sched)?;
                let h = h_constant(&system, 1e-9, cli.seed)?;
                let reports = crate::sumset::ratio_experiment(
                    &system,
                    &basis,
                    &ns,
                    radii.as_deref(),
                    &h,
                    DEFAULT_POINT_CAP,
                )?;
                let header = "n,set_size,sum_size,ratio,h_lo,h_hi,margin,ambiguous";
                println!("{}", header);
                let mut csv_rows = format!("{}\n", header);
                for r in &reports {
                    let line = format!(
                        "{},{},{},{:.6},{:.9},{:.9},{},{}",
                        r.n,
                        r.set_size,
                        r.sum_size,
                        r.ratio_f64,
                        r.h_lo,
                        r.h_hi,
                        r.margin,
                        r.ambiguous
                    );
                    println!("{}", line);
                    csv_rows.push_str(&line);
                    csv_rows.push('\n');
                }
                if let Some(path) = csv {
                    std::fs::write(path, csv_rows)?;
                }
                // JSON lines, appendable and diffable
                if let Some(path) = &cli.json {
                    let mut lines = String::new();
                    for r in &reports {
                        lines.push_str(&serde_json::to_string(r)?);
                        lines.push('\n');
                    }
                    std::fs::write(path, lines)?;
                }
                return Ok(());
            }
            let n = n
                .or_else(|| config.get("n").and_then(|v| v.parse().ok()))
                .ok_or_else(|| Error::Invalid("missing --n or --schedule".into()))?;
            let ex = extremal_set(&system, &basis, n, radii.as_deref())?;
            let maps = coordinate_maps(&system, &basis)?;
            let sum = dilate_sumset_size(&ex.points, &maps, DEFAULT_POINT_CAP)?;
            println!(
                "n = {}: |A| = {}, |sum of dilates| = {}, ratio = {:.6}, ambiguous boundary points = {}",
                n,
                ex.points.len(),
                sum,
                sum as f64 / ex.points.len() as f64,
                ex.ambiguous
            );
            if let Some(path) = out {
                std::fs::write(path, format_points(&ex.points))?;
            }
            write_json(
                &cli.json,
                &serde_json::json!({
                    "n": n,
                    "set_size": ex.points.len(),
                    "sum_size": sum,
                    "ambiguous": ex.ambiguous,
                }),
            )
        }
        Cmd::Ld {
            period,
            residues,
            flag,
        } => {
            let period_src = config
                .pick_owned(period.clone(), "period")
                .ok_or_else(|| Error::Invalid("missing --period".into()))?;
            let period_mat = read_matrices(&period_src)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Invalid("empty period".into()))?;
            let period_lattice = IntegerLattice::hnf(&transpose(&period_mat))?;
            let residues_src = config
                .pick_owned(residues.clone(), "residues")
                .ok_or_else(|| Error::Invalid("missing --residues".into()))?;
            let residues = parse_points(&std::fs::read_to_string(&residues_src)?)?;
            let set = PeriodicSet::new(period_lattice, residues.points);
            let flag_src = config
                .pick_owned(flag.clone(), "flag")
                .ok_or_else(|| Error::Invalid("missing --flag".into()))?;
            let chain: Vec<IntegerLattice> = read_matrices(&flag_src)?
                .iter()
                .map(|m| IntegerLattice::hnf(&transpose(m)))
                .collect::<Result<_>>()?;
            let flag = Flag::new(chain)?;
            let ld = lattice_density(&set, &flag, DEFAULT_DENSITY_CAP)?;
            let heights: Vec<String> = ld.heights.iter().map(|h| h.to_string()).collect();
            let projections: Vec<String> = (1..=flag.len())
                .map(|l| ld.projection(l).to_string())
                .collect();
            println!("grid dims: {:?}", ld.dims);
            println!("heights (row-major): {:?}", heights);
            println!("volume: {}", ld.volume());
            println!("projections: {:?}", projections);
            write_json(
                &cli.json,
                &serde_json::json!({
                    "grid_dims": ld.dims,
                    "heights": heights,
                    "volume": ld.volume().to_string(),
                    "projections": projections,
                }),
            )
        }
        Cmd::Flags { sys, n } => {
            let system = build_system(sys, config)?;
            let basis = build_basis(sys, config, &system)?;
            let n = parse_u32_list(
                &config
                    .pick_owned(n.clone(), "n")
                    .ok_or_else(|| Error::Invalid("missing --n".into()))?,
            )?;
            if n.len() != system.k() {
                return Err(Error::DimensionMismatch(
                    "exponent vector length must equal k".into(),
                ));
            }
            let data = IdealFlagData::new(&system, &basis)?;
            let f = data.f_flag(&n, &basis)?;
            let g = data.g_flag(&n, &basis)?;
            let to_json = |fl: &Flag| -> serde_json::Value {
                serde_json::json!(fl.chain.iter().map(|l| l.basis_cols()).collect::<Vec<_>>())
            };
            println!("F flag (columns per member, D-coordinates): {}", to_json(&f));
            println!("G flag (columns per member, O-coordinates): {}", to_json(&g));
            println!("denominator ideal norm: {}", data.denominator().norm());
            write_json(
                &cli.json,
                &serde_json::json!({
                    "f_flag": to_json(&f),
                    "g_flag": to_json(&g),
                    "denominator_norm": data.denominator().norm().to_string(),
                }),
            )
        }
        Cmd::Regularize {
            sys,
            points,
            big_n,
            m,
            delta,
            level,
            n_rest,
        } => {
            let system = build_system(sys, config)?;
            let basis = build_basis(sys, config, &system)?;
            let data = IdealFlagData::new(&system, &basis)?;
            let pts_src = config
                .pick_owned(points.clone(), "points")
                .ok_or_else(|| Error::Invalid("missing --points".into()))?;
            let a = parse_points(&std::fs::read_to_string(&pts_src)?)?;
            let big_n = big_n
                .or_else(|| config.get("big_n").and_then(|v| v.parse().ok()))
                .ok_or_else(|| Error::Invalid("missing --big-n".into()))?;
            let m = m
                .or_else(|| config.get("m").and_then(|v| v.parse().ok()))
                .unwrap_or(2);
            let delta = parse_rational(
                &config
                    .pick_owned(delta.clone(), "delta")
                    .unwrap_or_else(|| "1/5".into()),
            )?;
            let level = level
                .or_else(|| config.get("level").and_then(|v| v.parse().ok()))
                .unwrap_or(1);
            let n_rest = parse_u32_list(
                &config
                    .pick_owned(n_rest.clone(), "n_rest")
                    .unwrap_or_default(),
            )?;
            let dec = regular_decomposition(
                &a,
                &data,
                &basis,
                big_n,
                m,
                &delta,
                level,
                &n_rest,
                DEFAULT_DENSITY_CAP,
            )?;
            println!(
                "stabilized at r = {} (cube side {}): {} regular cubes retain {} of {} points",
                dec.r,
                dec.cube_side,
                dec.cubes.len(),
                dec.retained.len(),
                a.len()
            );
            write_json(
                &cli.json,
                &serde_json::json!({
                    "r": dec.r,
                    "cube_side": dec.cube_side,
                    "regular_cubes": dec.cubes,
                    "retained": dec.retained.len(),
                    "total": a.len(),
                }),
            )
        }
        Cmd::VerifyCts {
            disk,
            boxes,
            eigen,
            resolution,
        } => {
            let resolution = resolution
                .or_else(|| config.get("resolution").and_then(|v| v.parse().ok()))
                .unwrap_or(256);
            let res = crate::rat::rat(1, resolution as i64);
            let eigen_src = config
                .pick_owned(eigen.clone(), "eigen")
                .ok_or_else(|| Error::Invalid("missing --eigen".into()))?;
            let eigen_json = if std::path::Path::new(&eigen_src).exists() {
                std::fs::read_to_string(&eigen_src)?
            } else {
                eigen_src
            };
            let eigen: EigenStructure = serde_json::from_str(&eigen_json)?;
            let mut shape: Option<VoxelSet> = None;
            let mut add = |v: VoxelSet| {
                shape = Some(match shape.take() {
                    None => v,
                    Some(mut acc) => {
                        acc.occupied.extend(v.occupied);
                        acc
                    }
                });
            };
            if let Some(r) = disk.or_else(|| config.get("disk").and_then(|v| v.parse().ok())) {
                add(VoxelSet::disk(r, res.clone()));
            }
            let box_specs: Vec<String> = if boxes.is_empty() {
                config.list("boxes").unwrap_or_default()
            } else {
                boxes.clone()
            };
            for spec in &box_specs {
                let (lo, hi) = spec
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("box expects lo:hi".into()))?;
                let parse_vec = |s: &str| -> Result<Vec<f64>> {
                    s.split(',')
                        .map(|w| {
                            w.trim()
                                .parse()
                                .map_err(|_| Error::Parse("bad box coordinate".into()))
                        })
                        .collect()
                };
                add(VoxelSet::from_box(&parse_vec(lo)?, &parse_vec(hi)?, res.clone()));
            }
            let shape =
                shape.ok_or_else(|| Error::Invalid("no shape given (--disk/--box)".into()))?;
            let report = verify_cts_bound(&shape, &eigen, &eigen.maps())?;
            println!(
                "measured = {:.6}, bound = {:.6}, budget = {:.6}: {}",
                report.measured,
                report.bound,
                report.budget,
                if report.pass { "PASS" } else { "FAIL" }
            );
            write_json(&cli.json, &serde_json::to_value(&report)?)
        }
        Cmd::Bench => {
            bench();
            Ok(())
        }
        Cmd::Selftest => {
            if crate::selftest::run_all() {
                Ok(())
            } else {
                Err(Error::Inconclusive)
            }
        }
    }
}

fn transpose(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    (0..c)
        .map(|j| (0..r).map(|i| rows[i][j]).collect())
        .collect()
}

fn bench() {
    let timeit = |name: &str, f: &dyn Fn()| {
        let start = std::time::Instant::now();
        f();
        println!("{:<44} {:>8} ms", name, start.elapsed().as_millis());
    };
    timeit("hconst sqrt2 (width 1e-9)", &|| {
        let field =
            crate::numfield::NumberField::new(crate::poly::UPoly::from_int_coeffs(&[-2, 0, 1]))
                .unwrap();
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let _ = h_constant(&sys, 1e-9, 0).unwrap();
    });
    timeit("extremal n=40 over Z[sqrt2] + sumset", &|| {
        let field =
            crate::numfield::NumberField::new(crate::poly::UPoly::from_int_coeffs(&[-2, 0, 1]))
                .unwrap();
        let (_, basis) = IntegralBasis::quadratic(2).unwrap();
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let ex = extremal_set(&sys, &basis, 40, None).unwrap();
        let maps = coordinate_maps(&sys, &basis).unwrap();
        let _ = dilate_sumset_size(&ex.points, &maps, DEFAULT_POINT_CAP).unwrap();
    });
    timeit("lattice density, 200 random instances", &|| {
        let mut rng = crate::seeded_rng(1);
        use rand::Rng;
        for _ in 0..200 {
            let dim = rng.gen_range(1..=2usize);
            let diag: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=4)).collect();
            let sub = IntegerLattice::from_diag(&diag);
            let flag = Flag::new(vec![sub, IntegerLattice::standard(dim)]).unwrap();
            let q = IntegerLattice::from_diag(&vec![rng.gen_range(2..=6); dim]);
            let reps = IntegerLattice::standard(dim)
                .coset_reps(&q, DEFAULT_DENSITY_CAP)
                .unwrap();
            let residues: Vec<Vec<i64>> = reps.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            if residues.is_empty() {
                continue;
            }
            let a = PeriodicSet::new(q, residues);
            let _ = lattice_density(&a, &flag, DEFAULT_DENSITY_CAP).unwrap();
        }
    });
    timeit("voxel disk bound check at 512^2", &|| {
        let disk = VoxelSet::disk(1.0, crate::rat::rat(1, 256));
        let eigen = EigenStructure {
            blocks: vec![crate::voxel::EigenBlock {
                dim: 2,
                scales: vec![1.0, 0.8],
                angles: vec![0.0, 0.5],
            }],
        };
        let _ = verify_cts_bound(&disk, &eigen, &eigen.maps()).unwrap();
    });
}
