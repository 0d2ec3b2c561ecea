//! Independent numerical oracles for the traveling-wave construction.

use benney::boundstate::{
    assemble_bound_state, field_residual, kink, pde_residual, solve_parameters, BoundStateParams,
};
use benney::dynamics::{DiffusionScheme, Scheme, TransportScheme};
use benney::io::{read_snapshot_from, write_snapshot_to, Snapshot};
use benney::{Grid, PhysParams};

fn rk4<const D: usize>(mut y: [f64; D], x_end: f64, h: f64, f: impl Fn(&[f64; D]) -> [f64; D]) -> Vec<(f64, [f64; D])> {
    let steps = (x_end / h).round() as usize;
    let add = |a: &[f64; D], b: &[f64; D], c: f64| {
        let mut out = *a;
        for i in 0..D {
            out[i] += c * b[i];
        }
        out
    };
    let mut out = vec![(0.0, y)];
    for n in 0..steps {
        let k1 = f(&y);
        let k2 = f(&add(&y, &k1, 0.5 * h));
        let k3 = f(&add(&y, &k2, 0.5 * h));
        let k4 = f(&add(&y, &k3, h));
        for i in 0..D {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out.push(((n + 1) as f64 * h, y));
    }
    out
}

#[test]
fn second_order_ivp_matches_the_kink_on_its_stable_window() {
    for (mu, lambda) in [(1.0, 0.5), (2.0, 1.0), (0.7, 0.3)] {
        let gamma = mu / f64::sqrt(2.0 * lambda);
        // round-off grows like exp(sqrt(2 mu) x) off the saddle at r_inf
        let x_stable = (1e4f64).ln() / f64::sqrt(2.0 * mu);
        let sol = rk4([0.0, gamma], x_stable, 1e-3, |y| {
            [y[1], lambda * y[0].powi(3) - mu * y[0]]
        });
        for (x, y) in sol {
            let (r, rp) = kink(mu, lambda, x).unwrap();
            assert!((y[0] - r).abs() < 1e-10, "mu={mu} x={x}: {} vs {r}", y[0]);
            assert!((y[1] - rp).abs() < 1e-10);
        }
    }
}

#[test]
fn first_integral_reduction_matches_the_kink_on_the_full_window() {
    let (mu, lambda) = (1.0, 0.5);
    let r_inf2 = mu / lambda;
    let c = f64::sqrt(0.5 * lambda);
    for (x, y) in rk4([0.0], 20.0, 1e-3, |y| [c * (r_inf2 - y[0] * y[0])]) {
        let (r, _) = kink(mu, lambda, x).unwrap();
        assert!((y[0] - r).abs() < 1e-10, "x={x}");
    }
}

#[test]
fn alpha_against_fine_quadrature() {
    let bp = solve_parameters(1.0, 1.0, 2.0, 1.0).unwrap();
    let g = Grid::new(40.0, 8192).unwrap();
    let (_, w) = assemble_bound_state(&bp, &g, 0.0);
    let q = g.integrate(&w.iter().map(|x| x * x).collect::<Vec<_>>()).unwrap();
    assert!((q - bp.alpha).abs() < 1e-8);
}

#[test]
fn residual_is_second_order_in_dx() {
    let bp = solve_parameters(1.0, 1.0, 2.0, 1.0).unwrap();
    let r: Vec<(f64, f64)> = [100, 200, 400, 800]
        .iter()
        .map(|&n| pde_residual(&bp, &Grid::new(20.0, n).unwrap(), 0.3))
        .collect();
    for w in r.windows(2) {
        let (qu, qv) = (w[0].0 / w[1].0, w[0].1 / w[1].1);
        assert!((3.4..=4.6).contains(&qu), "{qu}");
        assert!((3.4..=4.6).contains(&qv), "{qv}");
    }
}

fn perturbed(f: impl Fn(&mut BoundStateParams)) -> (f64, f64) {
    let mut bp = solve_parameters(1.0, 1.0, 2.0, 1.0).unwrap();
    f(&mut bp);
    pde_residual(&bp, &Grid::new(20.0, 800).unwrap(), 0.3)
}

#[test]
fn shifted_frequency_leaves_an_order_one_residual() {
    let (base, _) = perturbed(|_| {});
    let (bad, _) = perturbed(|bp| bp.omega += 0.1);
    assert!(base < 1e-3);
    assert!(bad > 0.1, "{bad}");
}

#[test]
fn opposite_carrier_sign_leaves_an_order_one_residual() {
    let (bad, _) = perturbed(|bp| bp.k_wave = 0.5 * bp.s);
    assert!(bad > 0.5, "{bad}");
}

#[test]
fn reloaded_snapshot_has_bitwise_identical_residual() {
    let bp = solve_parameters(1.0, 1.0, 2.0, 1.0).unwrap();
    let g = Grid::new(20.0, 400).unwrap();
    let t = 0.37;
    let (u, v) = assemble_bound_state(&bp, &g, t);
    let before = field_residual(&bp, &g, t, &u, &v).unwrap();
    let snap = Snapshot {
        t,
        grid: g,
        params: PhysParams::new(1.0, 1.0, 0.0).unwrap(),
        scheme: Scheme::Inviscid,
        transport: TransportScheme::Minmod,
        diffusion: DiffusionScheme::BackwardEuler,
        u,
        v,
    };
    let mut buf = Vec::new();
    write_snapshot_to(&snap, &mut buf).unwrap();
    let back = read_snapshot_from(buf.as_slice()).unwrap();
    let after = field_residual(&bp, &back.grid, back.t, &back.u, &back.v).unwrap();
    assert_eq!(before.0.to_bits(), after.0.to_bits());
    assert_eq!(before.1.to_bits(), after.1.to_bits());
}
