use std::fs;
use std::hash::{BuildHasher, RandomState};
use std::path::Path;

use anyhow::{bail, Context, Result};
use hypermds::data_io::{
    euclidean_dissimilarity, generate_synthetic, graph_to_dissimilarity,
    largest_connected_component, read_configuration_csv, read_dissimilarity_csv, read_edge_list,
    read_feature_table, read_path_csv, read_sweep_csv, sibling_path, write_configuration_csv,
    write_dissimilarity_csv, write_mapping_csv, write_path_csv, write_replicate_summary,
    write_sweep_csv, write_trace_csv, GeneratorPoints, GraphMode, SyntheticKind, SyntheticSpec,
};
use hypermds::{
    euclid_multi_start, log_grid, multi_start, scale_sweep, sweep_minimum, DissimilarityData,
    ErrorModel, StopReason,
};

use crate::args::{
    CompareArgs, EmbedArgs, FeaturesArgs, Figure, GraphArgs, GridArgs, InputArgs, ModeArg,
    PlotArgs, SurfaceKind, SweepArgs, SynthArgs,
};
use crate::svg;

/// How a command that ran to completion ended.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The best run ended without a usable descent direction.
    Numerical,
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(|| RandomState::new().hash_one(0x5eed_u64));
    println!("seed: {seed}");
    seed
}

fn load(input: &InputArgs, scale: f64) -> Result<(DissimilarityData, ErrorModel)> {
    let data = read_dissimilarity_csv(&input.input, input.weights.as_deref())
        .with_context(|| format!("reading {}", input.input.display()))?;
    let model = ErrorModel::new(input.error.into(), scale)?.normalized(input.normalize);
    Ok((data, model))
}

fn grid(g: &GridArgs) -> Result<Vec<f64>> {
    Ok(log_grid(g.scale_min, g.scale_max, g.scale_steps)?)
}

fn status_of(reason: StopReason) -> Status {
    if reason == StopReason::StationaryLineSearch {
        Status::Numerical
    } else {
        Status::Ok
    }
}

pub fn embed(args: &EmbedArgs) -> Result<Status> {
    let (data, model) = load(&args.input, args.scale)?;
    let mut params = args.solver.params();
    params.record_path = args.out_path.is_some();
    params.validate()?;
    let seed = resolve_seed(args.solver.seed);
    let ms = multi_start(&data, &model, &params, args.replicates, seed)?;
    let best = ms.best_run();
    write_configuration_csv(&args.out_config, &best.final_config)?;
    write_trace_csv(&args.out_trace, &best.trace)?;
    let summary = args
        .out_summary
        .clone()
        .unwrap_or_else(|| sibling_path(&args.out_config, "_replicates.csv"));
    write_replicate_summary(&summary, &ms)?;
    if let (Some(out), Some(path)) = (&args.out_path, &best.path) {
        write_path_csv(out, path)?;
    }
    println!(
        "best error: {:.10e} (replicate {}, {} iterations, {})",
        best.final_error,
        ms.best,
        best.iterations(),
        best.stop_reason
    );
    Ok(status_of(best.stop_reason))
}

pub fn sweep(args: &SweepArgs) -> Result<Status> {
    let (data, model) = load(&args.input, 1.0)?;
    let params = args.solver.params();
    params.validate()?;
    let grid = grid(&args.grid)?;
    let seed = resolve_seed(args.solver.seed);
    let points = scale_sweep(&data, &model, &params, &grid, args.replicates, seed)?;
    write_sweep_csv(&args.out, &points)?;
    if let Some(out) = &args.svg {
        let curve: Vec<(f64, f64)> = points.iter().map(|p| (p.scale, p.best_error)).collect();
        fs::write(out, svg::curve(&curve))?;
    }
    let best = sweep_minimum(&points).expect("grid is nonempty");
    println!(
        "best error: {:.10e} at scale {:.6}",
        best.best_error, best.scale
    );
    Ok(status_of(best.best.stop_reason))
}

pub fn synth(args: &SynthArgs) -> Result<Status> {
    let kind = match args.kind {
        SurfaceKind::Euclidean => SyntheticKind::EuclideanPlane,
        SurfaceKind::Spherical => SyntheticKind::Sphere,
        SurfaceKind::Hyperbolic => SyntheticKind::HyperbolicDisk,
    };
    if args.out_points.is_some() && kind != SyntheticKind::HyperbolicDisk {
        bail!(hypermds::Error::InvalidParameter(
            "--out-points is only available for hyperbolic data".into()
        ));
    }
    let seed = resolve_seed(args.seed);
    let mut spec = SyntheticSpec::new(kind, args.n, seed).with_noise(args.noise);
    spec.sphere_radius = args.radius;
    let set = generate_synthetic(&spec)?;
    write_dissimilarity_csv(&args.out, &set.data)?;
    if let (Some(out), GeneratorPoints::Disk(cfg)) = (&args.out_points, &set.points) {
        write_configuration_csv(out, cfg)?;
    }
    Ok(Status::Ok)
}

pub fn graph(args: &GraphArgs) -> Result<Status> {
    let mut g =
        read_edge_list(&args.edges).with_context(|| format!("reading {}", args.edges.display()))?;
    let mut mapping = g.nodes().to_vec();
    if args.largest_component {
        (g, mapping) = largest_connected_component(&g)?;
    }
    let mode = match args.mode {
        ModeArg::Binary => GraphMode::Binary,
        ModeArg::ConstMinusWeight => GraphMode::ConstMinusWeight,
        ModeArg::ShortestPath => GraphMode::ShortestPath,
    };
    let data = graph_to_dissimilarity(&g, mode)?;
    write_dissimilarity_csv(&args.out, &data)?;
    if let Some(out) = &args.out_mapping {
        write_mapping_csv(out, &mapping)?;
    }
    println!(
        "nodes: {}, observed pairs: {}",
        data.n(),
        data.active_pairs()
    );
    Ok(Status::Ok)
}

pub fn features(args: &FeaturesArgs) -> Result<Status> {
    let rows = read_feature_table(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let data = euclidean_dissimilarity(&rows)?;
    write_dissimilarity_csv(&args.out, &data)?;
    println!(
        "objects: {}, observed pairs: {}",
        data.n(),
        data.active_pairs()
    );
    Ok(Status::Ok)
}

/// Disk sweep, then the planar baseline at the best disk scale.
pub fn compare(args: &CompareArgs) -> Result<Status> {
    let (data, model) = load(&args.input, 1.0)?;
    let params = args.solver.params();
    params.validate()?;
    let grid = grid(&args.grid)?;
    let seed = resolve_seed(args.solver.seed);
    let points = scale_sweep(&data, &model, &params, &grid, args.replicates, seed)?;
    let best = sweep_minimum(&points).expect("grid is nonempty");
    let eu = euclid_multi_start(
        &data,
        &model.with_scale(best.scale)?,
        &params,
        args.replicates,
        seed,
    )?;
    let ratio = eu.best_error() / best.best_error;
    let report = format!(
        "pd_best_scale,pd_best_error,euclid_best_error,ratio\n{:.16e},{:.16e},{:.16e},{:.16e}\n",
        best.scale,
        best.best_error,
        eu.best_error(),
        ratio
    );
    fs::write(&args.out, report)?;
    println!(
        "disk {:.6e} at scale {:.6}, plane {:.6e}, ratio {ratio:.4}",
        best.best_error,
        best.scale,
        eu.best_error()
    );
    Ok(status_of(best.best.stop_reason))
}

pub fn plot(args: &PlotArgs) -> Result<Status> {
    let doc = match args.figure {
        Figure::Disk => {
            let frames = if is_path_file(&args.input)? {
                read_path_csv(&args.input)?
            } else {
                vec![read_configuration_csv(&args.input)?]
            };
            svg::disk(&frames)
        }
        Figure::Curve => svg::curve(&read_sweep_csv(&args.input)?),
    };
    fs::write(&args.out, doc)?;
    Ok(Status::Ok)
}

fn is_path_file(path: &Path) -> Result<bool> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text
        .lines()
        .next()
        .is_some_and(|l| l.trim_start().starts_with("t,")))
}
