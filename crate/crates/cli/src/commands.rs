use anyhow::{bail, Result};
use qmi_orbits::collision::{
    heat_flow_survey, qutrit_counterexample, run_collisions_with, CollisionMode, MinimalityCheck,
};
use qmi_orbits::extremal::{self, max_qmi_upper_bound, rho_max, rho_min};
use qmi_orbits::majorization::{build_column_graph, build_graph};
use qmi_orbits::orbit::{demon_scenario, sweep, tau_states, triple_point_states, Family};
use qmi_orbits::region::{convex_hull_region, membership_grid};
use qmi_orbits::states::{marginal_point, qmi, DensityMatrixJson};
use qmi_orbits::tableaux::{
    enumerate_young, exhaustive_minimum, histogram_minimizers, hook_count, minimal_table, EXHAUSTIVE_BUDGET,
};
use qmi_orbits::{DensityMatrix, MarginalPoint, Region, XState};
use serde::Serialize;

use crate::input::{shape, spectrum};
use crate::output::{json, num, write_to, Csv};
use crate::{Cli, Command, DirectionArg, FamilyArg, GraphFormat, ModeArg, StartArg, TableauxCommand};

pub fn run(cli: &Cli) -> Result<()> {
    let text = match &cli.command {
        Command::Region { spectrum: s, energy, grid, vertices } => {
            let s = spectrum(s)?;
            if let Some(path) = vertices {
                write_to(Some(path), &region_vertices(&s)?)?;
            }
            region_grid(&s, *energy, *grid)?
        }
        Command::Extremal { spectrum: s } => extremal_report(&spectrum(s)?)?,
        Command::Sweep { spectrum: s, family, start, cos_theta, steps } => {
            sweep_csv(&spectrum(s)?, *family, *start, *cos_theta, *steps)?
        }
        Command::Collide { spectrum: s, p, steps, schedule, mode, qutrit_swap } => {
            let s = spectrum(s)?;
            if *qutrit_swap {
                json("qutrit_swap", qutrit_counterexample(&s, MinimalityCheck::ReportOnly)?)?
            } else {
                let schedule = match (p, schedule) {
                    (_, Some(list)) => crate::input::weights(list)?,
                    (Some(p), None) => vec![*p; *steps],
                    (None, None) => bail!("give --p or --schedule"),
                };
                collide_csv(&s, &schedule, *mode)?
            }
        }
        Command::Heatcheck { samples, seed, details } => {
            json("heatcheck", heat_flow_survey(*samples, *seed, *details)?)?
        }
        Command::Tableaux { action } => tableaux(action)?,
        Command::Graph { shape: sh, format, direction } => {
            let sh = shape(sh)?;
            let g = match direction {
                DirectionArg::Row => build_graph(sh)?,
                DirectionArg::Column => build_column_graph(sh)?,
            };
            match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Csv => format!("# schema_version: {}\n{}", crate::output::SCHEMA_VERSION, g.to_csv()),
            }
        }
        Command::Demon { spectrum: s, lambda_b } => json("demon", demon_scenario(*lambda_b, &spectrum(s)?)?)?,
    };
    write_to(cli.output.as_deref(), &text)
}

fn region_grid(s: &qmi_orbits::Spectrum, energy: f64, n: usize) -> Result<String> {
    let cells = membership_grid(s, energy, n)?;
    let meta = format!("spectrum: {:?}, energy: {energy}", s.values());
    let mut csv = Csv::new(&meta, &["lambda_a", "lambda_b", "in_R", "in_R_E", "in_hull"]);
    for c in cells {
        csv.row(&[num(c.lambda_a), num(c.lambda_b), c.in_r.to_string(), c.in_r_e.to_string(), c.in_hull.to_string()]);
    }
    Ok(csv.finish())
}

fn region_vertices(s: &qmi_orbits::Spectrum) -> Result<String> {
    let r = Region::new(s)?;
    let hull = convex_hull_region(s)?;
    let (m1, m2) = r.min_vertex();
    let mut csv = Csv::new(&format!("spectrum: {:?}", s.values()), &["polygon", "index", "lambda_a", "lambda_b"]);
    for (name, poly) in [("R", &r), ("hull", &hull)] {
        for (i, v) in poly.vertices().iter().enumerate() {
            csv.row(&[name.into(), i.to_string(), num(v.lambda_a), num(v.lambda_b)]);
        }
    }
    for (i, v) in [m1, m2].iter().enumerate() {
        csv.row(&["min_vertex".into(), i.to_string(), num(v.lambda_a), num(v.lambda_b)]);
    }
    Ok(csv.finish())
}

#[derive(Serialize)]
struct MinTable {
    index: usize,
    label: String,
    rows: Vec<Vec<u8>>,
    tie: bool,
    young_restricted: bool,
}

#[derive(Serialize)]
struct TriplePoint {
    lambda: f64,
    points: Vec<MarginalPoint>,
    qmi: Vec<f64>,
}

#[derive(Serialize)]
struct ExtremalReport {
    spectrum: Vec<f64>,
    dims: [usize; 2],
    i_min: f64,
    i_max: Option<f64>,
    i_max_upper_bound: f64,
    delta_i: Option<f64>,
    min_table: MinTable,
    min_vertex: Option<[MarginalPoint; 2]>,
    triple_point: Option<TriplePoint>,
    rho_min: DensityMatrixJson,
    rho_max: Option<DensityMatrixJson>,
}

fn extremal_report(s: &qmi_orbits::Spectrum) -> Result<String> {
    let search = minimal_table(s)?;
    let low = rho_min(s, &search.table)?;
    let high = if s.dims().0 == s.dims().1 { Some(rho_max(s)?) } else { None };
    let two_qubit = s.dims() == (2, 2);
    let delta_i =
        if two_qubit { Some(extremal::delta_i(s)?) } else { high.as_ref().map(|h| h.qmi_value - low.qmi_value) };
    let triple_point = if two_qubit && s.is_strict(1e-9) {
        let states = triple_point_states(s)?;
        Some(TriplePoint {
            lambda: 0.5 * (1.0 - (s.lambda(3) - s.lambda(4))),
            points: states.iter().map(marginal_point).collect::<qmi_orbits::Result<_>>()?,
            qmi: states.iter().map(qmi).collect(),
        })
    } else {
        None
    };
    let report = ExtremalReport {
        spectrum: s.values().to_vec(),
        dims: [s.dims().0, s.dims().1],
        i_min: low.qmi_value,
        i_max: high.as_ref().map(|h| h.qmi_value),
        i_max_upper_bound: max_qmi_upper_bound(s.dims()),
        delta_i,
        min_table: MinTable {
            index: search.index + 1,
            label: search.pattern.label(),
            rows: search.pattern.rows(),
            tie: search.tie,
            young_restricted: search.young_restricted,
        },
        min_vertex: if two_qubit {
            let (a, b) = Region::new(s)?.min_vertex();
            Some([a, b])
        } else {
            None
        },
        triple_point,
        rho_min: low.state.to_json(),
        rho_max: high.map(|h| h.state.to_json()),
    };
    json("extremal", report)
}

fn sweep_csv(
    s: &qmi_orbits::Spectrum,
    family: FamilyArg,
    start: StartArg,
    cos_theta: Option<f64>,
    steps: usize,
) -> Result<String> {
    let rho0: DensityMatrix = match cos_theta {
        Some(c) => {
            let v = s.values();
            if v.len() != 4 {
                bail!("--cos-theta needs a two-qubit spectrum");
            }
            XState::new([v[0], v[1], v[2], v[3]], c, 1.0)?.materialize()
        }
        None => {
            let [t1, t2, t3] = tau_states(s)?;
            match start {
                StartArg::Tau1 => t1,
                StartArg::Tau2 => t2,
                StartArg::Tau3 => t3,
            }
        }
    };
    let fam = match family {
        FamilyArg::Odd => Family::Odd,
        FamilyArg::Even => Family::Even,
        FamilyArg::Tilde => Family::Tilde,
    };
    let t = sweep(&rho0, fam, steps)?;
    let meta = format!(
        "spectrum: {:?}, family: {family:?}, start: {}",
        s.values(),
        match cos_theta {
            Some(c) => format!("x-state cos_theta={c}"),
            None => format!("{start:?}"),
        }
    );
    let mut csv = Csv::new(&meta, &["angle", "cos_angle", "lambda_a", "lambda_b", "qmi"]);
    for k in 0..t.angles.len() {
        csv.row(&[
            num(t.angles[k]),
            num(t.cos_angles[k]),
            num(t.points[k].lambda_a),
            num(t.points[k].lambda_b),
            num(t.qmi[k]),
        ]);
    }
    Ok(csv.finish())
}

fn collide_csv(s: &qmi_orbits::Spectrum, schedule: &[f64], mode: ModeArg) -> Result<String> {
    let mode = match mode {
        ModeArg::Dephase => CollisionMode::Dephase,
        ModeArg::Decorrelate => CollisionMode::Decorrelate,
    };
    let traj = run_collisions_with(&DensityMatrix::diagonal_of(s), schedule, mode)?;
    let meta = format!("spectrum: {:?}, mode: {mode:?}", s.values());
    let mut csv = Csv::new(&meta, &["step", "p", "lambda2", "lambda3", "gap", "S_A", "S_B", "qmi"]);
    for st in &traj.steps {
        csv.row(&[
            st.step.to_string(),
            num(st.p),
            num(st.lambda2),
            num(st.lambda3),
            num(st.gap),
            num(st.s_a),
            num(st.s_b),
            num(st.qmi),
        ]);
    }
    Ok(csv.finish())
}

#[derive(Serialize)]
struct PatternEntry {
    index: usize,
    name: String,
    label: String,
    rows: Vec<Vec<u8>>,
}

#[derive(Serialize)]
struct Enumeration {
    shape: String,
    count: usize,
    hook_count: String,
    transpose_quotiented: bool,
    patterns: Vec<PatternEntry>,
}

#[derive(Serialize)]
struct Minimization {
    spectrum: Vec<f64>,
    dims: [usize; 2],
    index: usize,
    name: String,
    label: String,
    rows: Vec<Vec<u8>>,
    table: Vec<f64>,
    value: f64,
    tie: bool,
    young_restricted: bool,
    exhaustive_value: Option<f64>,
}

fn tableaux(action: &TableauxCommand) -> Result<String> {
    match action {
        TableauxCommand::Enumerate { shape: sh } => {
            let sh = shape(sh)?;
            let y = enumerate_young(sh)?;
            let patterns = y
                .patterns()
                .iter()
                .enumerate()
                .map(|(i, p)| PatternEntry { index: i + 1, name: y.label(i), label: p.label(), rows: p.rows() })
                .collect();
            json(
                "tableaux_enumerate",
                Enumeration {
                    shape: sh.to_string(),
                    count: y.len(),
                    hook_count: hook_count(sh).to_string(),
                    transpose_quotiented: sh.is_square(),
                    patterns,
                },
            )
        }
        TableauxCommand::Minimize { spectrum: s } => {
            let s = spectrum(s)?;
            let m = minimal_table(&s)?;
            let exhaustive_value =
                if s.len() <= EXHAUSTIVE_BUDGET { Some(exhaustive_minimum(&s)?.value) } else { None };
            let young = enumerate_young(s.dims().into())?;
            json(
                "tableaux_minimize",
                Minimization {
                    spectrum: s.values().to_vec(),
                    dims: [s.dims().0, s.dims().1],
                    index: m.index + 1,
                    name: young.label(m.index),
                    label: m.pattern.label(),
                    rows: m.pattern.rows(),
                    table: m.table.entries().to_vec(),
                    value: m.value,
                    tie: m.tie,
                    young_restricted: m.young_restricted,
                    exhaustive_value,
                },
            )
        }
        TableauxCommand::Histogram { shape: sh, samples, seed } => {
            let h = histogram_minimizers(shape(sh)?, *samples, *seed)?;
            let meta = format!("shape: {}, samples: {}, seed: {}, ties: {}", h.shape, h.n_samples, h.seed, h.ties);
            let mut csv = Csv::new(&meta, &["table_index", "count"]);
            for (i, c) in h.counts.iter().enumerate() {
                csv.row(&[(i + 1).to_string(), c.to_string()]);
            }
            Ok(csv.finish())
        }
    }
}
