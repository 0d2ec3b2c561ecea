use std::ffi::{CStr, CString};
use std::path::Path;
use std::ptr;

use benney_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 512];
    unsafe {
        bny_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn gaussian_sim(cells: usize) -> *mut BnySim {
    let len = 20.0;
    let n = cells + 1;
    let dx = len / cells as f64;
    let env: Vec<f64> = (0..n)
        .map(|j| {
            let x = j as f64 * dx;
            (-(x - 10.0f64).powi(2) / 2.0).exp() * (std::f64::consts::PI * x / len).sin().powi(2)
        })
        .collect();
    let re: Vec<f64> = env.iter().enumerate().map(|(j, e)| e * (j as f64 * dx).cos()).collect();
    let im: Vec<f64> = env.iter().enumerate().map(|(j, e)| e * (j as f64 * dx).sin()).collect();
    let v: Vec<f64> = env.iter().map(|e| 0.5 * e).collect();
    let mut sim = ptr::null_mut();
    let st = unsafe {
        bny_sim_new(
            len,
            cells,
            1.0,
            -1.0,
            0.0,
            re.as_ptr(),
            im.as_ptr(),
            v.as_ptr(),
            &mut sim,
        )
    };
    assert_eq!(st, BnyStatus::Ok);
    sim
}

#[test]
fn advance_conserves_mass_and_reports_time() {
    let sim = gaussian_sim(512);
    unsafe {
        let mut before = BnyInvariants::default();
        assert_eq!(bny_sim_invariants(sim, &mut before), BnyStatus::Ok);
        assert_eq!(
            bny_sim_set_numerics(sim, BNY_TRANSPORT_MINMOD, BNY_DIFFUSION_BACKWARD_EULER, 0.9),
            BnyStatus::Ok
        );
        let mut steps = 0usize;
        assert_eq!(bny_sim_advance(sim, 0.5, 0.01, &mut steps), BnyStatus::Ok);
        assert!(steps >= 50);
        let mut after = BnyInvariants::default();
        assert_eq!(bny_sim_invariants(sim, &mut after), BnyStatus::Ok);
        assert_eq!(after.t, 0.5);
        assert!(((after.mass - before.mass) / before.mass).abs() < 1e-12);
        assert!(((after.energy - before.energy) / before.energy).abs() < 1e-3);
        let mut t = 0.0;
        assert_eq!(bny_sim_time(sim, &mut t), BnyStatus::Ok);
        assert_eq!(t, 0.5);
        bny_sim_free(sim);
    }
}

#[test]
fn copy_fields_round_trips_the_input() {
    let sim = gaussian_sim(64);
    unsafe {
        let n = bny_sim_nodes(sim);
        assert_eq!(n, 65);
        let (mut re, mut im, mut v) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        assert_eq!(
            bny_sim_copy_fields(sim, re.as_mut_ptr(), im.as_mut_ptr(), v.as_mut_ptr(), n),
            BnyStatus::Ok
        );
        assert!((v[32] - 0.5).abs() < 1e-12);
        assert!((re[32] - 10.0f64.cos()).abs() < 1e-12);
        let st = bny_sim_copy_fields(sim, re.as_mut_ptr(), im.as_mut_ptr(), v.as_mut_ptr(), n - 1);
        assert_eq!(st, BnyStatus::InvalidArgument);
        assert!(last_error().contains("nodes"));
        bny_sim_free(sim);
    }
}

#[test]
fn oversized_step_is_refused_and_leaves_the_state() {
    let sim = gaussian_sim(512);
    unsafe {
        assert_eq!(bny_sim_step(sim, 5.0), BnyStatus::CflViolation);
        assert!(last_error().contains("CFL"));
        let mut t = 1.0;
        bny_sim_time(sim, &mut t);
        assert_eq!(t, 0.0);
        assert_eq!(bny_sim_step(sim, 0.01), BnyStatus::Ok);
        assert_eq!(bny_sim_step(sim, -1.0), BnyStatus::InvalidArgument);
        bny_sim_free(sim);
    }
}

#[test]
fn bad_arguments_map_to_codes() {
    let mut sim = ptr::null_mut();
    let z = [0.0f64; 9];
    unsafe {
        let st = bny_sim_new(1.0, 8, -1.0, 1.0, 0.0, z.as_ptr(), z.as_ptr(), z.as_ptr(), &mut sim);
        assert_eq!(st, BnyStatus::InvalidArgument);
        assert!(sim.is_null());
        let st = bny_sim_new(1.0, 8, 1.0, 1.0, 0.0, ptr::null(), z.as_ptr(), z.as_ptr(), &mut sim);
        assert_eq!(st, BnyStatus::NullPointer);
        assert!(last_error().contains("u_re"));
        assert_eq!(bny_sim_step(ptr::null_mut(), 0.1), BnyStatus::NullPointer);
        assert_eq!(bny_sim_nodes(ptr::null()), 0);
        bny_sim_free(ptr::null_mut());

        let st = bny_sim_new(1.0, 8, 1.0, 1.0, 0.0, z.as_ptr(), z.as_ptr(), z.as_ptr(), &mut sim);
        assert_eq!(st, BnyStatus::Ok);
        assert_eq!(bny_sim_set_numerics(sim, 7, 0, 0.9), BnyStatus::InvalidArgument);
        assert_eq!(bny_sim_set_numerics(sim, 0, 0, 1.5), BnyStatus::InvalidArgument);
        let (mut eu, mut ev) = (0.0, 0.0);
        assert_eq!(
            bny_sim_tracking_error(sim, &mut eu, &mut ev),
            BnyStatus::InvalidArgument
        );
        bny_sim_free(sim);
    }
}

#[test]
fn boundstate_solve_and_rejection() {
    let mut out = BnyBoundState::default();
    unsafe {
        assert_eq!(bny_boundstate_solve(1.0, -1.0, 2.0, 1.0, &mut out), BnyStatus::Ok);
        assert!((out.lambda - 0.5).abs() < 1e-15);
        assert!((out.k_wave + 0.5 * out.s).abs() < 1e-15);
        let st = bny_boundstate_solve(1.0, 1.0, 1.0, 1.0, &mut out);
        assert_eq!(st, BnyStatus::InvalidArgument);
        assert!(last_error().contains("lambda"));
        assert_eq!(
            bny_boundstate_solve(1.0, 1.0, 2.0, 1.0, ptr::null_mut()),
            BnyStatus::NullPointer
        );
    }
}

#[test]
fn config_handle_tracks_the_traveling_wave() {
    let preset = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/presets/boundstate.toml");
    let path = CString::new(preset.to_str().unwrap()).unwrap();
    let mut sim = ptr::null_mut();
    unsafe {
        assert_eq!(
            bny_sim_from_config(path.as_ptr(), &mut sim),
            BnyStatus::Ok,
            "{}",
            last_error()
        );
        assert_eq!(bny_sim_advance(sim, 1.0, 0.025, ptr::null_mut()), BnyStatus::Ok);
        let (mut eu, mut ev) = (1.0, 1.0);
        assert_eq!(bny_sim_tracking_error(sim, &mut eu, &mut ev), BnyStatus::Ok);
        assert!(eu < 1e-2 && ev < 1e-2, "{eu} {ev}");
        let dir = std::env::temp_dir().join(format!("bny_ffi_{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let snap = CString::new(dir.join("s.bny").to_str().unwrap()).unwrap();
        assert_eq!(bny_sim_save_snapshot(sim, snap.as_ptr()), BnyStatus::Ok);
        let back = benney::io::read_snapshot(&dir.join("s.bny")).unwrap();
        assert_eq!(back.t, 1.0);
        std::fs::remove_dir_all(dir).unwrap();
        bny_sim_free(sim);
    }
}

#[test]
fn missing_config_is_an_io_error() {
    let path = CString::new("/nonexistent/x.toml").unwrap();
    let mut sim = ptr::null_mut();
    unsafe {
        assert_eq!(bny_sim_from_config(path.as_ptr(), &mut sim), BnyStatus::Io);
        assert_eq!(bny_sim_from_config(ptr::null(), &mut sim), BnyStatus::NullPointer);
    }
}

#[test]
fn error_message_truncates_and_reports_length() {
    unsafe {
        bny_sim_step(ptr::null_mut(), 0.1);
        let full = bny_last_error_message(ptr::null_mut(), 0);
        let mut small = [0x7f as std::ffi::c_char; 5];
        assert_eq!(bny_last_error_message(small.as_mut_ptr(), small.len()), full);
        assert_eq!(CStr::from_ptr(small.as_ptr()).to_bytes(), b"null");
        assert_eq!(
            CStr::from_ptr(bny_version()).to_str().unwrap(),
            env!("CARGO_PKG_VERSION")
        );
    }
}
