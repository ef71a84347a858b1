//! One function per subcommand, each producing a [`Dataset`].

use qudit_core::geometry::{
    constant_invariant_surface_ququart, constant_t2_locus, constant_t3_locus_qutrit, lambda_segment_images,
    permutation_images, simplex_edges, simplex_medians, t_space_boundary_qutrit, Locus, Medians, ParamCurve,
    QuquartInvariant, Sampling, Space, SurfaceMesh,
};
use qudit_core::hamiltonian::{
    lmg_spectrum, linear_spectrum, phase_sweep, separatrix, Branch, GridAxes, LMGParams, ParamGrid, RegionClass, Spin,
};
use qudit_core::states::{in_simplex, power_sums, DiagonalMap};
use qudit_core::thermal::{endpoint_state, trajectory, Endpoint, Spectrum};
use qudit_core::{build_generators, Tolerances};

use crate::args::{
    BoundaryArgs, FlowerArgs, FrameArgs, InputSpace, LocusArgs, MapArgs, Model, ModelArgs, PhaseArgs, ThermalArgs,
};
use crate::error::{CliError, CliResult};
use crate::grid::{parse_beta_grid, parse_list, parse_range};
use crate::table::{space_columns, Cell, Dataset, Discrepancy};

const PROB_TOL: f64 = 1e-12;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Header `prefix…, p…, l…, t…, suffix…, physical`.
fn header(n: usize, prefix: &[&str], suffix: &[&str]) -> Vec<String> {
    let (p, l, t) = space_columns(n);
    let mut cols: Vec<String> = prefix.iter().map(|s| s.to_string()).collect();
    cols.extend(p);
    cols.extend(l);
    cols.extend(t);
    cols.extend(suffix.iter().map(|s| s.to_string()));
    cols.push("physical".into());
    cols
}

fn coords(map: &DiagonalMap, p: &[f64]) -> Vec<Cell> {
    let mut out: Vec<Cell> = p.iter().map(|&x| Cell::F(x)).collect();
    out.extend(map.raw_p_to_lambda(p).into_iter().map(Cell::F));
    out.extend(power_sums(p).into_iter().map(Cell::F));
    out
}

fn row(prefix: Vec<Cell>, map: &DiagonalMap, p: &[f64], suffix: Vec<Cell>, physical: bool) -> Vec<Cell> {
    let mut r = prefix;
    r.extend(coords(map, p));
    r.extend(suffix);
    r.push(physical.into());
    r
}

pub fn frame(args: &FrameArgs) -> CliResult<Dataset> {
    let n = args.n;
    if n < 2 {
        return Err(config(format!("n must be at least 2, got {n}")));
    }
    if args.generators {
        let gens = build_generators(n)?;
        let mut ds = Dataset::new(["k", "kind", "row", "col", "re", "im"].map(String::from).to_vec());
        let (ns, na) = (gens.symmetric().len(), gens.antisymmetric().len());
        for (idx, g) in gens.iter().enumerate() {
            let kind = if idx < ns {
                "symmetric"
            } else if idx < ns + na {
                "antisymmetric"
            } else {
                "diagonal"
            };
            for r in 0..n {
                for c in 0..n {
                    let z = g[(r, c)];
                    if z.re != 0.0 || z.im != 0.0 {
                        ds.push(vec![Cell::I(idx as i64 + 1), kind.into(), Cell::I(r as i64 + 1), Cell::I(c as i64 + 1), z.re.into(), z.im.into()]);
                    }
                }
            }
        }
        return Ok(ds);
    }
    let map = DiagonalMap::new(n)?;
    let mut ds = Dataset::new(header(n, &["point"], &[]));
    for k in 0..n {
        let mut p = vec![0.0; n];
        p[k] = 1.0;
        ds.push(row(vec![format!("p{}", k + 1).into()], &map, &p, vec![], true));
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut p = vec![0.0; n];
            p[j] = 0.5;
            p[k] = 0.5;
            ds.push(row(vec![format!("m{}{}", j + 1, k + 1).into()], &map, &p, vec![], true));
        }
    }
    ds.push(row(vec!["e".into()], &map, &vec![1.0 / n as f64; n], vec![], true));
    Ok(ds)
}

pub fn map(args: &MapArgs) -> CliResult<Dataset> {
    let n = args.n;
    let map = DiagonalMap::new(n)?;
    let mut ds = Dataset::new(header(n, &["index"], &[]));
    for (i, spec) in args.points.iter().enumerate() {
        let v = parse_list(spec, "point")?;
        let p = match args.from {
            InputSpace::P => {
                if v.len() != n {
                    return Err(config(format!("point {}: expected {n} probabilities, got {}", i + 1, v.len())));
                }
                let s: f64 = v.iter().sum();
                if (s - 1.0).abs() > 1e-9 {
                    return Err(config(format!("point {}: probabilities sum to {s}, not 1", i + 1)));
                }
                v
            }
            InputSpace::Lambda => {
                if v.len() != n - 1 {
                    return Err(config(format!("point {}: expected {} λ components, got {}", i + 1, n - 1, v.len())));
                }
                map.raw_lambda_to_p(&v)
            }
        };
        let physical = in_simplex(&p, PROB_TOL);
        ds.push(row(vec![Cell::I(i as i64 + 1)], &map, &p, vec![], physical));
    }
    Ok(ds)
}

fn lmg_params(m: &ModelArgs) -> CliResult<LMGParams> {
    Ok(match (m.gminus, m.gplus) {
        (None, None) => LMGParams::new(m.omega, m.gx.unwrap_or(0.0), m.gy.unwrap_or(0.0))?,
        (gm, gp) => LMGParams::from_pm(m.omega, gm.unwrap_or(0.0), gp.unwrap_or(0.0))?,
    })
}

/// The spectrum selected by the model flags; level labels follow the model.
pub fn model_spectrum(m: &ModelArgs) -> CliResult<Spectrum> {
    match m.model {
        Model::Linear => Ok(linear_spectrum(Spin::new(m.j)?, m.omega)?),
        Model::Lmg => Ok(lmg_spectrum(Spin::new(m.j)?, &lmg_params(m)?)?),
        Model::Spectrum => {
            let e = m.energies.as_deref().ok_or_else(|| config("--model spectrum needs --energies"))?;
            Ok(Spectrum::from_levels(&parse_list(e, "energies")?)?)
        }
    }
}

struct ThermalRow {
    beta: f64,
    /// Occupations in level-label order.
    p: Vec<f64>,
    u: f64,
    s: f64,
    f: f64,
    ln_z: f64,
}

fn thermal_rows(spec: &Spectrum, grid: &[f64]) -> CliResult<Vec<ThermalRow>> {
    let finite: Vec<f64> = grid.iter().copied().filter(|b| b.is_finite()).collect();
    let traj = trajectory(spec, &finite)?;
    let mut rows: Vec<ThermalRow> = traj
        .samples
        .iter()
        .map(|smp| {
            let st = qudit_core::thermal::gibbs_state(spec, smp.beta).expect("same β as the trajectory");
            ThermalRow {
                beta: smp.beta,
                p: spec.to_label_order(smp.p.as_slice()),
                u: st.internal_energy,
                s: st.entropy,
                f: st.free_energy.unwrap_or(f64::NAN),
                ln_z: st.ln_partition_function(),
            }
        })
        .collect();
    if grid.iter().any(|b| b.is_infinite()) {
        let p = endpoint_state(spec, Endpoint::ZeroTemperature, Tolerances::DEFAULT.degeneracy);
        let u = p.as_slice().iter().zip(spec.energies()).map(|(p, e)| p * e).sum();
        let s = 0.0 - p.as_slice().iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>();
        rows.push(ThermalRow { beta: f64::INFINITY, p: spec.to_label_order(p.as_slice()), u, s, f: spec.ground_energy(), ln_z: f64::INFINITY });
    }
    Ok(rows)
}

pub fn thermal(args: &ThermalArgs) -> CliResult<Dataset> {
    let spec = model_spectrum(&args.model)?;
    let grid = parse_beta_grid(&args.beta.beta_grid, !args.beta.no_zero)?;
    let n = spec.len();
    let map = DiagonalMap::new(n)?;
    let suffix: &[&str] = if args.thermo { &["U", "S", "F", "lnZ"] } else { &[] };
    let mut ds = Dataset::new(header(n, &["beta"], suffix));
    for r in thermal_rows(&spec, &grid)? {
        let extra = if args.thermo { vec![r.u.into(), r.s.into(), r.f.into(), r.ln_z.into()] } else { vec![] };
        ds.push(row(vec![r.beta.into()], &map, &r.p, extra, true));
    }
    Ok(ds)
}

pub fn flower(args: &FlowerArgs) -> CliResult<Dataset> {
    let spec = model_spectrum(&args.model)?;
    let grid = parse_beta_grid(&args.beta.beta_grid, !args.beta.no_zero)?;
    let rows = thermal_rows(&spec, &grid)?;
    let n = spec.len();
    let map = DiagonalMap::new(n)?;
    let curve = ParamCurve {
        space: Space::P,
        label: "thermal".into(),
        parameter: rows.iter().map(|r| r.beta).collect(),
        points: rows.into_iter().map(|r| r.p).collect(),
        physical: vec![true; grid.len()],
        radius: None,
    };
    let mut ds = Dataset::new(header(n, &["perm", "beta"], &[]));
    for (perm, img) in permutation_images(&curve)? {
        let tag: String = perm.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join("");
        for ((b, p), &ok) in img.parameter.iter().zip(&img.points).zip(&img.physical) {
            ds.push(row(vec![tag.clone().into(), (*b).into()], &map, p, vec![], ok));
        }
    }
    Ok(ds)
}

fn level_name(i: usize) -> String {
    format!("E{}", i + 1)
}

fn pair_name(pair: (usize, usize)) -> String {
    format!("{}={}", level_name(pair.0), level_name(pair.1))
}

pub fn phase_diagram(args: &PhaseArgs) -> CliResult<Dataset> {
    let spin = Spin::new(args.j)?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(config("--tol must be positive"));
    }
    if args.separatrices {
        let gm = parse_range(&args.gminus, "gminus")?;
        let mut ds = Dataset::new(["branch", "gminus", "gplus", "pair", "physical"].map(String::from).to_vec());
        for branch in [Branch::Ground, Branch::Excited] {
            let name = match branch {
                Branch::Ground => "ground",
                Branch::Excited => "excited",
            };
            let pair = pair_name(branch.crossing_pair(spin)?);
            for &g in &gm {
                ds.push(vec![name.into(), g.into(), separatrix(spin, branch, g)?.into(), pair.clone().into(), true.into()]);
            }
        }
        return Ok(ds);
    }
    let grid = match (&args.gx, &args.gy) {
        (Some(gx), Some(gy)) => ParamGrid { axes: GridAxes::XY, first: parse_range(gx, "gx")?, second: parse_range(gy, "gy")? },
        _ => ParamGrid {
            axes: GridAxes::MinusPlus,
            first: parse_range(&args.gminus, "gminus")?,
            second: parse_range(&args.gplus, "gplus")?,
        },
    };
    let n = spin.dimension();
    let map = DiagonalMap::new(n)?;
    let energies: Vec<String> = (0..n).map(level_name).collect();
    let mut prefix = vec!["gminus", "gplus", "gx", "gy"];
    prefix.extend(energies.iter().map(String::as_str));
    let mut ds = Dataset::new(header(n, &prefix, &["region", "boundary"]));
    for pt in phase_sweep(spin, &grid, args.beta, args.omega, args.tol)? {
        let pr = pt.params;
        let mut pre: Vec<Cell> = vec![pr.g_minus().into(), pr.g_plus().into(), pr.gx.into(), pr.gy.into()];
        pre.extend(lmg_spectrum(spin, &pr)?.levels().into_iter().map(Cell::F));
        let (region, boundary) = match &pt.region {
            Some(RegionClass::Interior(r)) => (r.region.to_string(), String::new()),
            Some(RegionClass::Boundary { region, pair, .. }) => {
                (region.map(|r| r.to_string()).unwrap_or_default(), pair_name(*pair))
            }
            None => (String::new(), String::new()),
        };
        ds.push(row(pre, &map, pt.p.as_slice(), vec![region.into(), boundary.into()], true));
    }
    Ok(ds)
}

fn push_curves(ds: &mut Dataset, map: &DiagonalMap, curves: &[ParamCurve]) {
    for c in curves {
        for (i, p) in c.points.iter().enumerate() {
            let mut pre: Vec<Cell> = vec![c.label.clone().into(), c.parameter[i].into()];
            if let Some(r) = &c.radius {
                pre.push(r[i].into());
            }
            if p.iter().any(|x| x.is_nan()) {
                ds.failed += 1;
            }
            ds.push(row(pre, map, p, vec![], c.physical[i]));
        }
    }
}

fn push_meshes(ds: &mut Dataset, map: &DiagonalMap, meshes: &[SurfaceMesh]) {
    for m in meshes {
        let nv = m.v.len();
        for (idx, p) in m.points.iter().enumerate() {
            let mut pre: Vec<Cell> = vec![m.label.clone().into(), m.u[idx / nv].into(), m.v[idx % nv].into()];
            if let Some(r) = &m.radius {
                pre.push(r[idx].into());
            }
            if p.iter().any(|x| x.is_nan()) {
                ds.failed += 1;
            }
            ds.push(row(pre, map, p, vec![], m.physical[idx]));
        }
    }
}

fn curve_dataset(n: usize, param: &str, radius: bool, curves: &[ParamCurve]) -> CliResult<Dataset> {
    let map = DiagonalMap::new(n)?;
    let prefix: Vec<&str> = if radius { vec!["curve", param, "radius"] } else { vec!["curve", param] };
    let mut ds = Dataset::new(header(n, &prefix, &[]));
    push_curves(&mut ds, &map, curves);
    Ok(ds)
}

fn mesh_dataset(n: usize, meshes: &[SurfaceMesh]) -> CliResult<Dataset> {
    let map = DiagonalMap::new(n)?;
    let first = meshes.first().ok_or_else(|| CliError::Numerical("empty mesh set".into()))?;
    let [u, v] = first.param_names;
    let prefix: Vec<&str> = if first.radius.is_some() { vec!["surface", u, v, "radius"] } else { vec!["surface", u, v] };
    let mut ds = Dataset::new(header(n, &prefix, &[]));
    push_meshes(&mut ds, &map, meshes);
    Ok(ds)
}

pub fn locus(args: &LocusArgs) -> CliResult<Dataset> {
    let n = args.n;
    let sampling = Sampling { curve: args.samples, theta: args.theta_samples, phi: args.phi_samples };
    let k = &args.kind;
    if k.edges {
        return curve_dataset(n, "x", false, &simplex_edges(n, args.samples)?);
    }
    if k.medians {
        return match simplex_medians(n, args.samples)? {
            Medians::Curves(c) => curve_dataset(n, "x", false, &c),
            Medians::Planes(m) => mesh_dataset(n, &m),
        };
    }
    let locus = match (n, k.t2, k.t3, k.t4) {
        (_, Some(t2), _, _) => constant_t2_locus(n, t2, &sampling)?,
        (3, _, Some(t3), _) => Locus::Curve(constant_t3_locus_qutrit(t3, args.samples)?),
        (4, _, Some(t3), _) => Locus::Surface(constant_invariant_surface_ququart(QuquartInvariant::T3, t3, &sampling)?),
        (4, _, _, Some(t4)) => Locus::Surface(constant_invariant_surface_ququart(QuquartInvariant::T4, t4, &sampling)?),
        _ => return Err(config(format!("this locus is not available for n = {n}"))),
    };
    match locus {
        Locus::Curve(c) => curve_dataset(n, "alpha", true, &[c]),
        Locus::Surface(s) => mesh_dataset(n, &[s]),
    }
}

pub fn boundary(args: &BoundaryArgs) -> CliResult<Dataset> {
    if args.segments {
        let images = lambda_segment_images(args.samples)?;
        let mut ds = Dataset::new(["curve", "x", "l7", "l8", "t2", "t3", "physical"].map(String::from).to_vec());
        for img in &images {
            for ((x, l), t) in img.t_curve.parameter.iter().zip(&img.lambda_curve.points).zip(&img.t_curve.points) {
                ds.push(vec![img.label.into(), (*x).into(), l[0].into(), l[1].into(), t[0].into(), t[1].into(), true.into()]);
            }
            if !img.printed_agrees(1e-12) {
                ds.discrepancies.push(Discrepancy {
                    item: img.label.to_string(),
                    printed: img.printed_form.to_string(),
                    used: "trace powers of the segment points".to_string(),
                    max_abs_deviation: img.printed_max_deviation,
                });
            }
        }
        return Ok(ds);
    }
    let mut ds = Dataset::new(["curve", "t2", "t3", "physical"].map(String::from).to_vec());
    for arc in t_space_boundary_qutrit(args.samples)? {
        for (pt, &ok) in arc.points.iter().zip(&arc.physical) {
            ds.push(vec![arc.label.clone().into(), pt[0].into(), pt[1].into(), ok.into()]);
        }
    }
    Ok(ds)
}
