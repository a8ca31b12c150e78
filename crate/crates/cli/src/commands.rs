//! Implementations of the six subcommands.

use std::path::PathBuf;

use ddi_core::completeness::{
    is_informationally_complete, is_observationally_complete, is_oc_for_support, SubspaceProjector,
    Witness,
};
use ddi_core::linalg::{self, Matrix};
use ddi_core::mvee::{affine_reduce, ddi_spherical, MveeError};
use ddi_core::qubit::{born, povm_range, range_invert, simulate_counts, BlochState, StateSet};
use ddi_core::simplex2d::{self, min_area_enclosing_triangle, nonuniqueness_witness};
use ddi_core::table::ProbTable;
use ddi_core::RangeEllipsoid;

use crate::args::*;
use crate::io;
use crate::plot;
use crate::schema::*;
use crate::CliError;

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn require_positive(name: &str, value: f64) -> Result<(), CliError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CliError::input(format!(
            "{name} must be a positive number, got {value}"
        )))
    }
}

fn load_table(
    path: &str,
    row_tol: f64,
    renormalize: bool,
) -> Result<(ProbTable, Vec<f64>), CliError> {
    let text = io::read_input(path)?;
    let rows = io::parse_csv(&text)?;
    let table = ProbTable::from_rows(&rows).map_err(|e| CliError::input(e.to_string()))?;
    let residuals: Vec<f64> = table.row_sums().iter().map(|s| s - 1.0).collect();
    if renormalize {
        let table = table
            .renormalized()
            .map_err(|e| CliError::input(e.to_string()))?;
        return Ok((table, residuals));
    }
    for (i, r) in residuals.iter().enumerate() {
        if r.abs() > row_tol {
            return Err(CliError::row_sum(format!(
                "row {} sums to {:.9} (tolerance {row_tol:.1e}); pass --renormalize to rescale",
                i + 1,
                1.0 + r
            )));
        }
    }
    Ok((table, residuals))
}

fn solve_table(
    table: &ProbTable,
    residuals: Vec<f64>,
    renormalized: bool,
    eps: f64,
    affine_tol: f64,
    plot_path: Option<&PathBuf>,
) -> Result<(InferenceReport, RangeEllipsoid), CliError> {
    let points = table.to_point_set();
    let (frame, reduced) = affine_reduce(&points, affine_tol);
    let e = ddi_spherical(&points, eps, affine_tol).map_err(|err| match err {
        MveeError::NotConverged { .. } | MveeError::DegenerateSpan => {
            CliError::solver(err.to_string())
        }
        other => CliError::input(other.to_string()),
    })?;

    if let Some(path) = plot_path {
        let svg = plot::render(&frame, &reduced, &e);
        io::write_output(Some(path), &svg)?;
    }

    let report = InferenceReport {
        input: InputDigest {
            rows: table.rows(),
            cols: table.cols(),
            row_sum_residuals: residuals,
            renormalized,
        },
        affine: AffineSummary {
            dim: frame.dim(),
            base_point: frame.base_point().to_vec(),
        },
        ellipsoid: EllipsoidJson::from_ellipsoid(&e),
        povm: None,
        validity: Validity {
            ok: true,
            error: None,
        },
    };
    Ok((report, e))
}

pub fn cmd_infer(args: InferArgs) -> Result<(), CliError> {
    require_positive("--row-tol", args.row_tol)?;
    require_positive("--eps", args.eps)?;
    require_positive("--affine-tol", args.affine_tol)?;
    let (table, residuals) = load_table(&args.table, args.row_tol, args.renormalize)?;
    let (report, _) = solve_table(
        &table,
        residuals,
        args.renormalize,
        args.eps,
        args.affine_tol,
        args.plot.as_ref(),
    )?;
    io::write_output(args.output.as_deref(), &to_json(&report))
}

pub fn cmd_reconstruct(args: ReconstructArgs) -> Result<(), CliError> {
    require_positive("--row-tol", args.row_tol)?;
    require_positive("--eps", args.eps)?;
    require_positive("--affine-tol", args.affine_tol)?;
    require_positive("--povm-tol", args.povm_tol)?;
    let (mut report, ellipsoid) = match (&args.table, &args.from_range) {
        (_, Some(path)) => {
            let text = io::read_input(path)?;
            let saved: InferenceReport = io::parse_json(&text, "inference report")?;
            let e = saved
                .ellipsoid
                .to_ellipsoid(args.povm_tol)
                .map_err(|err| CliError::input(err.to_string()))?;
            (saved, e)
        }
        (Some(table_path), None) => {
            let (table, residuals) = load_table(table_path, args.row_tol, args.renormalize)?;
            solve_table(
                &table,
                residuals,
                args.renormalize,
                args.eps,
                args.affine_tol,
                args.plot.as_ref(),
            )?
        }
        (None, None) => {
            return Err(CliError::input(
                "supply a table file or --from-range <report>".to_string(),
            ))
        }
    };

    match range_invert(&ellipsoid, args.povm_tol) {
        Ok(povm) => {
            report.povm = Some(PovmJson::from_povm(&povm));
            report.validity = Validity {
                ok: true,
                error: None,
            };
            io::write_output(args.output.as_deref(), &to_json(&report))
        }
        Err(err) => {
            report.povm = None;
            report.validity = Validity {
                ok: false,
                error: Some(err.to_string()),
            };
            io::write_output(args.output.as_deref(), &to_json(&report))?;
            Err(CliError::inversion(format!("the inference fails: {err}")))
        }
    }
}

fn load_states(path: &str) -> Result<StateSet, CliError> {
    let text = io::read_input(path)?;
    let doc: StatesJson = io::parse_json(&text, "states")?;
    let states: Result<Vec<BlochState>, _> =
        doc.bloch.iter().map(|r| BlochState::new(*r)).collect();
    let states = states.map_err(|e| CliError::input(e.to_string()))?;
    StateSet::new(states).map_err(|e| CliError::input(e.to_string()))
}

pub fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    require_positive("--povm-tol", args.povm_tol)?;
    let povm_text = io::read_input(&args.povm)?;
    let povm_doc: PovmJson = io::parse_json(&povm_text, "measurement")?;
    let povm = povm_doc
        .to_povm(args.povm_tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    let states = load_states(&args.states)?;

    if args.shots == 0 {
        // sentinel: emit exact outcome probabilities
        if args.counts.is_some() {
            return Err(CliError::input(
                "--counts is unavailable with --shots 0 (exact probabilities)".to_string(),
            ));
        }
        let rows: Vec<Vec<f64>> = states.iter().map(|s| born(&povm, s)).collect();
        return io::write_output(args.output.as_deref(), &io::format_csv(&rows));
    }

    let (counts, freqs) = simulate_counts(&povm, &states, args.shots, args.seed);
    if let Some(path) = &args.counts {
        let rows: Vec<Vec<f64>> = counts
            .iter()
            .map(|row| row.iter().map(|&c| c as f64).collect())
            .collect();
        io::write_output(Some(path), &io::format_csv(&rows))?;
    }
    let rows: Vec<Vec<f64>> = (0..freqs.rows()).map(|i| freqs.row(i).to_vec()).collect();
    io::write_output(args.output.as_deref(), &io::format_csv(&rows))
}

pub fn cmd_check(args: CheckArgs) -> Result<(), CliError> {
    require_positive("--tol", args.tol)?;
    let states = load_states(&args.states)?;
    let verdict = match args.mode {
        CheckMode::Ic => is_informationally_complete(&states, args.tol),
        CheckMode::Oc => is_observationally_complete(&states, args.tol),
        CheckMode::OcSupport => {
            let path = args.projector.as_ref().ok_or_else(|| {
                CliError::input("--mode oc-support requires --projector".to_string())
            })?;
            let text = io::read_input(path)?;
            let doc: ProjectorJson = io::parse_json(&text, "projector")?;
            if doc.p.len() != 3 || doc.p.iter().any(|r| r.len() != 3) {
                return Err(CliError::input(
                    "projector must be a 3x3 matrix".to_string(),
                ));
            }
            let p = Matrix::from_fn(3, 3, |i, j| doc.p[i][j]);
            let projector =
                SubspaceProjector::new(p).map_err(|e| CliError::input(e.to_string()))?;
            is_oc_for_support(&states, &projector, args.tol)
        }
    };

    let mut report = CheckReport {
        mode: args.mode.to_string(),
        states: states.len(),
        complete: verdict.is_complete(),
        witness_affine_dim: None,
        witness_ellipsoid: None,
    };
    match verdict.witness() {
        Some(Witness::AffineDim(d)) => report.witness_affine_dim = Some(*d),
        Some(Witness::Ellipsoid(e)) => {
            report.witness_ellipsoid = Some(EllipsoidJson::from_ellipsoid(e))
        }
        None => {}
    }
    io::write_output(args.output.as_deref(), &to_json(&report))
}

pub fn cmd_equiv(args: EquivArgs) -> Result<(), CliError> {
    require_positive("--tol", args.tol)?;
    require_positive("--povm-tol", args.povm_tol)?;
    let mut povms = Vec::new();
    for path in [&args.first, &args.second] {
        let text = io::read_input(path)?;
        let doc: PovmJson = io::parse_json(&text, "measurement")?;
        povms.push(
            doc.to_povm(args.povm_tol)
                .map_err(|e| CliError::input(format!("{path}: {e}")))?,
        );
    }
    if povms[0].outcomes() != povms[1].outcomes() {
        return Err(CliError::input(format!(
            "outcome counts differ: {} vs {}",
            povms[0].outcomes(),
            povms[1].outcomes()
        )));
    }
    let (e1, e2) = (povm_range(&povms[0]), povm_range(&povms[1]));
    let delta_q = e1.correlation().sub(e2.correlation()).max_abs();
    let delta_t = linalg::linf_norm(&linalg::sub_vec(e1.center(), e2.center()));
    let report = EquivReport {
        outcomes: povms[0].outcomes(),
        equivalent: delta_q <= args.tol && delta_t <= args.tol,
        delta_q_max: delta_q,
        delta_t_max: delta_t,
        tol: args.tol,
    };
    io::write_output(args.output.as_deref(), &to_json(&report))
}

pub fn cmd_demo_nonunique(args: DemoArgs) -> Result<(), CliError> {
    require_positive("--tol", args.tol)?;
    let points: Vec<[f64; 2]> = if args.hexagon {
        simplex2d::regular_polygon_points(6)
    } else {
        let path = args
            .points
            .as_ref()
            .ok_or_else(|| CliError::input("supply a points file or --hexagon".to_string()))?;
        let rows = io::parse_csv(&io::read_input(path)?)?;
        rows.iter()
            .map(|r| {
                if r.len() == 2 {
                    Ok([r[0], r[1]])
                } else {
                    Err(CliError::input(format!(
                        "expected 2 columns, got {}",
                        r.len()
                    )))
                }
            })
            .collect::<Result<_, _>>()?
    };

    let solution =
        min_area_enclosing_triangle(&points).map_err(|e| CliError::input(e.to_string()))?;
    let witness =
        nonuniqueness_witness(&points, args.tol).map_err(|e| CliError::input(e.to_string()))?;

    let tri_json = |t: &simplex2d::Triangle| TriangleJson {
        vertices: t.vertices.to_vec(),
        area: t.area(),
    };
    let report = NonuniqueReport {
        hull_points: simplex2d::convex_hull(&points).len(),
        optimal_area: solution.area,
        flush_edge: solution.flush_edge,
        triangle: tri_json(&solution.triangle),
        witness: witness.map(|(t1, t2)| WitnessPair {
            area_difference: (t1.area() - t2.area()).abs(),
            first: tri_json(&t1),
            second: tri_json(&t2),
        }),
    };
    io::write_output(args.output.as_deref(), &to_json(&report))
}
