//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qudit_core::geometry::{
    constant_invariant_surface_ququart, constant_t2_locus, constant_t3_locus_qutrit, permutation_images, ququart_radius,
    qutrit_t3_radius, Locus, ParamCurve, QuquartInvariant, Sampling, Space,
};
use qudit_core::hamiltonian::{
    classify_region, linear_spectrum, lmg_levels, lmg_spectrum, lmg_spectrum_numeric, separatrix, Branch, LMGParams,
    RegionClass, Spin,
};
use qudit_core::states::{invariants, lambda_to_p, p_to_lambda, power_sums, t_vertices, DiagonalMap};
use qudit_core::thermal::{endpoint_state, gibbs_state, trajectory, BetaGrid, Endpoint, Spectrum};
use qudit_core::ProbabilityVector;

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!("{} {id:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

/// Best of three runs, after one warm-up.
fn timed<T>(mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut out = f();
    let mut best = Duration::MAX;
    for _ in 0..3 {
        let t = Instant::now();
        out = f();
        best = best.min(t.elapsed());
    }
    (out, best)
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn random_simplex_point(rng: &mut impl Rng, n: usize) -> ProbabilityVector {
    // normalised exponentials are uniform on the simplex
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    ProbabilityVector::new(w.iter().map(|x| x / s).collect()).unwrap()
}

fn t_space_vertices(r: &mut Report) {
    let ((v3, v4), dt) = timed(|| (t_vertices(3).unwrap(), t_vertices(4).unwrap()));
    let want3 = [[1.0, 1.0], [0.5, 0.25], [1.0 / 3.0, 1.0 / 9.0]];
    let mut err: f64 = 0.0;
    for (v, w) in v3.iter().zip(&want3) {
        err = err.max(max_dev(v.as_slice(), w));
    }
    let has4 = v4.iter().any(|v| max_dev(v.as_slice(), &[0.25, 1.0 / 16.0, 1.0 / 64.0]) < 1e-14);
    let ok = v3.len() == 3 && err < 1e-14 && has4 && dt < Duration::from_millis(1);
    r.line(1, "t-space vertices", ok, format!("max err {err:.1e} (tol 1e-14), n=4 centre vertex present {has4}, {dt:?} (limit 1 ms)"));
}

fn qutrit_thermal_identity(r: &mut Report) {
    let spec = linear_spectrum(Spin::ONE, 1.0).unwrap();
    let grid = BetaGrid::log(1e-3, 1e3, 200).unwrap();
    let (err, dt) = timed(|| {
        let traj = trajectory(&spec, &grid.values).unwrap();
        traj.samples
            .iter()
            .map(|s| {
                let (t2, t3) = (s.t.get(2).unwrap(), s.t.get(3).unwrap());
                (t3 - (9.0 * t2 * t2 - 3.0 * t2.powi(3) + 3.0 * t2 - 1.0) / 8.0).abs()
            })
            .fold(0.0, f64::max)
    });
    let ok = err < 1e-12 && dt < Duration::from_millis(10);
    r.line(2, "qutrit thermal identity", ok, format!("max |t3 - f(t2)| {err:.1e} (tol 1e-12) over 200 β, {dt:?} (limit 10 ms)"));
}

fn equidistant_products(r: &mut Report) {
    let grid = BetaGrid::log(1e-3, 1e3, 200).unwrap();
    let q3 = trajectory(&linear_spectrum(Spin::ONE, 1.0).unwrap(), &grid.values).unwrap();
    let e3 = q3.samples.iter().map(|s| {
        let p = s.p.as_slice();
        (p[1] * p[1] - p[0] * p[2]).abs()
    });
    let spec4 = linear_spectrum(Spin::THREE_HALVES, 1.0).unwrap();
    let mut e4: f64 = 0.0;
    let mut ez: f64 = 0.0;
    for &b in &grid.values {
        let st = gibbs_state(&spec4, b).unwrap();
        let p = st.p.as_slice();
        e4 = e4.max((p[0] * p[3] - p[1] * p[2]).abs());
        // 1/Z² in the unshifted gauge; large β underflows both sides to zero
        let inv_z2 = (-2.0 * st.ln_partition_function()).exp();
        ez = ez.max((p[0] * p[3] - inv_z2).abs());
    }
    let e3 = e3.fold(0.0, f64::max);
    let ok = e3 < 1e-12 && e4 < 1e-12 && ez < 1e-12;
    r.line(3, "equidistant-spectrum products", ok, format!("qutrit {e3:.1e}, ququart {e4:.1e}, vs 1/Z² {ez:.1e} (tol 1e-12)"));
}

fn map_inversion(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut err: f64 = 0.0;
    let mut id_err: f64 = 0.0;
    for n in [3, 4] {
        for _ in 0..10_000 {
            let p = random_simplex_point(&mut rng, n);
            let back = lambda_to_p(&p_to_lambda(&p)).unwrap();
            err = err.max(max_dev(p.as_slice(), back.as_slice()));
        }
        let map = DiagonalMap::new(n).unwrap();
        let prod = map.matrix() * map.inverse_matrix();
        let eye = nalgebra::DMatrix::<f64>::identity(n, n);
        id_err = id_err.max((prod - eye).amax());
    }
    let ok = err < 1e-12 && id_err < 1e-14;
    r.line(4, "map inversion", ok, format!("round trip {err:.1e} (tol 1e-12), |M M^-1 - I| {id_err:.1e} (tol 1e-14), 2x10^4 points"));
}

fn lmg_oracle(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let omega = 1.0;
    let params: Vec<LMGParams> =
        (0..500).map(|_| LMGParams::new(omega, rng.gen_range(-6.0..=6.0), rng.gen_range(-6.0..=6.0)).unwrap()).collect();
    let (err, dt) = timed(|| {
        let mut err: f64 = 0.0;
        for spin in [Spin::ONE, Spin::THREE_HALVES] {
            for p in &params {
                let a = lmg_spectrum(spin, p).unwrap();
                let b = lmg_spectrum_numeric(spin, p).unwrap();
                err = err.max(max_dev(a.energies(), b.energies()));
            }
        }
        err
    });
    let ok = err < 1e-10 * omega && dt < Duration::from_secs(1);
    r.line(5, "LMG closed forms vs Jacobi", ok, format!("max dev {err:.1e} (tol 1e-10 ω), 2x500 couplings, {dt:?} (limit 1 s)"));
}

fn separatrix_degeneracy(r: &mut Report) {
    let mut err: f64 = 0.0;
    for spin in [Spin::ONE, Spin::THREE_HALVES] {
        for branch in [Branch::Ground, Branch::Excited] {
            let (a, b) = branch.crossing_pair(spin).unwrap();
            for i in 0..100 {
                let gm = -6.0 + 12.0 * i as f64 / 99.0;
                let gp = separatrix(spin, branch, gm).unwrap();
                let e = lmg_levels(spin, &LMGParams::from_pm(1.0, gm, gp).unwrap()).unwrap();
                err = err.max((e[a] - e[b]).abs());
            }
        }
    }
    let at = |gp: f64| lmg_levels(Spin::THREE_HALVES, &LMGParams::from_pm(1.0, 0.0, gp).unwrap()).unwrap();
    let (up, down) = (at(2.0), at(-2.0));
    let d14 = (up[0] - up[3]).abs();
    let d23 = (down[1] - down[2]).abs();
    let class_ok = matches!(
        classify_region(Spin::THREE_HALVES, &LMGParams::from_pm(1.0, 0.0, 2.0).unwrap(), 1e-9).unwrap(),
        RegionClass::Boundary { pair: (0, 3), .. }
    ) && matches!(
        classify_region(Spin::THREE_HALVES, &LMGParams::from_pm(1.0, 0.0, -2.0).unwrap(), 1e-9).unwrap(),
        RegionClass::Boundary { pair: (1, 2), .. }
    );
    let ok = err < 1e-9 && d14 < 1e-9 && d23 < 1e-9 && class_ok;
    r.line(
        6,
        "separatrix degeneracy",
        ok,
        format!("max gap on separatrices {err:.1e} (tol 1e-9); J=3/2 (0,2) |E1-E4| {d14:.1e}, (0,-2) |E2-E3| {d23:.1e}; boundary classification {class_ok}"),
    )
}

fn endpoint_degeneracy(r: &mut Report) {
    let verts = t_vertices(4).unwrap();
    let mut p_err: f64 = 0.0;
    let mut t_err: f64 = 0.0;
    for k in 1..=3 {
        let mut e = vec![-1.0; k];
        e.extend((k..4).map(|i| i as f64));
        let spec = Spectrum::new(e).unwrap();
        let p = endpoint_state(&spec, Endpoint::ZeroTemperature, 1e-9);
        let want: Vec<f64> = (0..4).map(|i| if i < k { 1.0 / k as f64 } else { 0.0 }).collect();
        p_err = p_err.max(max_dev(p.as_slice(), &want));
        t_err = t_err.max(max_dev(invariants(&p).as_slice(), verts[k - 1].as_slice()));
    }
    let ok = p_err < 1e-10 && t_err < 1e-9;
    r.line(7, "zero-temperature endpoint", ok, format!("p err {p_err:.1e} (tol 1e-10), t err {t_err:.1e} (tol 1e-9), k = 1, 2, 3"));
}

fn curve_error(c: &ParamCurve, index: usize, target: f64) -> f64 {
    c.points.iter().filter(|p| !p[0].is_nan()).map(|p| (power_sums(p)[index] - target).abs()).fold(0.0, f64::max)
}

fn invariant_self_consistency(r: &mut Report) {
    let sampling = Sampling::default();
    let mut circle: f64 = 0.0;
    for t2 in [13.0 / 30.0, 0.5, 5.0 / 6.0] {
        let Locus::Curve(c) = constant_t2_locus(3, t2, &sampling).unwrap() else { unreachable!() };
        circle = circle.max(curve_error(&c, 0, t2));
    }
    let mut other: f64 = 0.0;
    for t3 in [109.0 / 600.0, 0.25, 11.0 / 18.0] {
        other = other.max(curve_error(&constant_t3_locus_qutrit(t3, sampling.curve).unwrap(), 1, t3));
    }
    for t2 in [1.0 / 3.0, 0.5] {
        let Locus::Surface(s) = constant_t2_locus(4, t2, &sampling).unwrap() else { unreachable!() };
        other = other.max(s.points.iter().map(|p| (power_sums(p)[0] - t2).abs()).fold(0.0, f64::max));
    }
    let mut nodes = 0;
    let mut sym: f64 = 0.0;
    for (which, v, k) in
        [(QuquartInvariant::T3, 0.1, 1), (QuquartInvariant::T3, 7.0 / 40.0, 1), (QuquartInvariant::T4, 1.0 / 32.0, 2), (QuquartInvariant::T4, 5.0 / 64.0, 2)]
    {
        let s = constant_invariant_surface_ququart(which, v, &sampling).unwrap();
        for p in s.points.iter().filter(|p| !p[0].is_nan()) {
            nodes += 1;
            other = other.max((power_sums(p)[k] - v).abs());
        }
        // radius at φ and φ + 2π/3, both on and off the grid
        let radius = s.radius.as_ref().unwrap();
        let (nu, nv) = (s.u.len(), s.v.len());
        let shift = (nv - 1) / 3;
        for i in 0..nu {
            for j in 0..nv - shift {
                let (a, b) = (radius[i * nv + j], radius[i * nv + j + shift]);
                if !(a.is_nan() && b.is_nan()) {
                    sym = sym.max((a - b).abs());
                }
            }
        }
        for i in 0..50 {
            let (th, ph) = (PI * i as f64 / 49.0, 0.37 + 0.11 * i as f64);
            let a = ququart_radius(which, v, th, (3.0 * ph).sin());
            let b = ququart_radius(which, v, th, (3.0 * (ph + 2.0 * PI / 3.0)).sin());
            if let (Some(a), Some(b)) = (a, b) {
                sym = sym.max((a - b).abs());
            }
        }
    }
    for i in 0..100 {
        let a = 0.063 * i as f64;
        for t3 in [109.0 / 600.0, 0.25, 11.0 / 18.0] {
            sym = sym.max((qutrit_t3_radius(t3, a).unwrap() - qutrit_t3_radius(t3, a + 2.0 * PI / 3.0).unwrap()).abs());
        }
    }
    let ok = circle < 1e-12 && other < 1e-9 && sym < 1e-12;
    r.line(
        8,
        "constant-invariant self-consistency",
        ok,
        format!("circle {circle:.1e} (tol 1e-12), curves/surfaces {other:.1e} (tol 1e-9, {nodes} surface nodes), 2π/3 symmetry {sym:.1e} (tol 1e-12)"),
    );
}

fn thermodynamic_identity(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 0..100 {
        let n = [2, 3, 4, 6][i % 4];
        let mut e: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        e.sort_by(f64::total_cmp);
        let spec = Spectrum::new(e).unwrap();
        for _ in 0..20 {
            let t: f64 = 10f64.powf(rng.gen_range(-2.0..2.0));
            let st = gibbs_state(&spec, 1.0 / t).unwrap();
            let f = st.free_energy.unwrap();
            let ts = t * st.entropy;
            let scale = 1f64.max(ts.abs()).max(st.internal_energy.abs()).max(f.abs());
            worst = worst.max((ts - st.internal_energy + f).abs() / scale);
            count += 1;
        }
    }
    let ok = worst < 1e-10;
    r.line(9, "thermodynamic identity", ok, format!("max relative |TS - U + F| {worst:.1e} (tol 1e-10) over {count} states"));
}

fn flower_structure(r: &mut Report) {
    let spec = linear_spectrum(Spin::ONE, 1.0).unwrap();
    let grid = BetaGrid::default_log();
    let traj = trajectory(&spec, &grid.values).unwrap();
    let curve = ParamCurve {
        space: Space::P,
        label: "thermal".into(),
        parameter: grid.values.clone(),
        points: traj.samples.iter().map(|s| s.p.as_slice().to_vec()).collect(),
        physical: vec![true; grid.values.len()],
        radius: None,
    };
    let images = permutation_images(&curve).unwrap();
    let base = curve.to_space(Space::T).unwrap();
    let mut t_err: f64 = 0.0;
    for (_, img) in &images {
        for (a, b) in img.to_space(Space::T).unwrap().points.iter().zip(&base.points) {
            t_err = t_err.max(max_dev(a, b));
        }
    }
    // reflection about the line through p_e and p₁, computed geometrically
    let e = [1.0 / 3.0; 3];
    let axis: Vec<f64> = [2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0].iter().map(|x| x / (2.0f64 / 3.0).sqrt()).collect();
    let swap = images.iter().find(|(perm, _)| perm == &[0, 2, 1]).unwrap();
    let mut refl: f64 = 0.0;
    for (p, q) in curve.points.iter().zip(&swap.1.points) {
        let d: Vec<f64> = p.iter().zip(&e).map(|(x, c)| x - c).collect();
        let along: f64 = d.iter().zip(&axis).map(|(x, a)| x * a).sum();
        let mirrored: Vec<f64> = (0..3).map(|i| e[i] + 2.0 * along * axis[i] - d[i]).collect();
        refl = refl.max(max_dev(&mirrored, q));
    }
    let ok = images.len() == 6 && t_err < 1e-14 && refl < 1e-12;
    r.line(10, "flower structure", ok, format!("{} copies, t-space spread {t_err:.1e} (tol 1e-14), (p2,p3) swap vs reflection {refl:.1e} (tol 1e-12)", images.len()));
}

fn main() {
    let mut r = Report { failures: 0 };
    t_space_vertices(&mut r);
    qutrit_thermal_identity(&mut r);
    equidistant_products(&mut r);
    map_inversion(&mut r);
    lmg_oracle(&mut r);
    separatrix_degeneracy(&mut r);
    endpoint_degeneracy(&mut r);
    invariant_self_consistency(&mut r);
    thermodynamic_identity(&mut r);
    flower_structure(&mut r);
    println!("acceptance: {} of 10 criteria passed", 10 - r.failures);
    if r.failures > 0 {
        std::process::exit(1);
    }
}
