//! C ABI over the simulation core.
//!
//! Every fallible call returns a `BnyStatus` code; the message for the last
//! failure on the calling thread is available from `bny_last_error_message`.
//! Simulations are opaque `BnySim` handles released with `bny_sim_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use num_complex::Complex64;

use benney::boundstate::{solve_parameters, BoundStateParams, TravelingWave};
use benney::diagnostics::Integrals;
use benney::dynamics::{
    BoundaryData, DiffusionScheme, Homogeneous, Scheme, SimState, StepControl, Stepper, TransportScheme,
};
use benney::experiments::{prepare, tracking_error};
use benney::io::{load_config, write_snapshot, Snapshot};
use benney::{ComplexField, Error, Grid, PhysParams, RealField};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CflViolation = 3,
    Diverged = 4,
    Inadmissible = 5,
    Config = 6,
    Io = 7,
    Format = 8,
    Resource = 9,
    Panic = 10,
}

/// Transport discretization ids accepted by `bny_sim_set_numerics`.
pub const BNY_TRANSPORT_UPWIND1: u32 = 0;
pub const BNY_TRANSPORT_MINMOD: u32 = 1;
/// Diffusion discretization ids accepted by `bny_sim_set_numerics`.
pub const BNY_DIFFUSION_BACKWARD_EULER: u32 = 0;
pub const BNY_DIFFUSION_CRANK_NICOLSON: u32 = 1;

/// Quadratures of the current state.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BnyInvariants {
    pub t: f64,
    /// ∫|u|²
    pub mass: f64,
    pub energy: f64,
    pub momentum: f64,
    /// ∫|u_x|²
    pub ux2: f64,
    /// ∫v²
    pub v2: f64,
    /// ∫x²|u|²
    pub i2: f64,
    /// ∫x v²
    pub j: f64,
    /// ∫x|u|²
    pub k: f64,
    /// Transport speed a∫v²
    pub speed: f64,
    pub max_abs_u: f64,
    pub max_abs_v: f64,
}

/// Traveling-wave parameters for given `(a, b, s*, mu*)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BnyBoundState {
    pub mu: f64,
    pub lambda: f64,
    pub s_star: f64,
    pub s: f64,
    pub omega: f64,
    pub k_wave: f64,
    pub c_const: f64,
    pub alpha: f64,
    pub r_inf: f64,
    pub gamma: f64,
}

impl From<BoundStateParams> for BnyBoundState {
    fn from(p: BoundStateParams) -> Self {
        BnyBoundState {
            mu: p.mu,
            lambda: p.lambda,
            s_star: p.s_star,
            s: p.s,
            omega: p.omega,
            k_wave: p.k_wave,
            c_const: p.c_const,
            alpha: p.alpha,
            r_inf: p.r_inf,
            gamma: p.gamma,
        }
    }
}

/// Opaque simulation handle.
pub struct BnySim {
    grid: Grid,
    params: PhysParams,
    control: StepControl,
    boundary: Box<dyn BoundaryData>,
    boundstate: Option<BoundStateParams>,
    state: SimState,
}

impl BnySim {
    fn stepper(&self) -> Stepper<'_> {
        Stepper::new(self.grid, self.params, self.control, self.boundary.as_ref())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> BnyStatus {
    match e {
        Error::InvalidGrid(_)
        | Error::LengthMismatch { .. }
        | Error::InvalidParameter(_)
        | Error::SingularSystem { .. }
        | Error::UnsortedTimes { .. } => BnyStatus::InvalidArgument,
        Error::CflViolation { .. } => BnyStatus::CflViolation,
        Error::Diverged => BnyStatus::Diverged,
        Error::Inadmissible(_) => BnyStatus::Inadmissible,
        Error::Config(_) => BnyStatus::Config,
        Error::Format(_) => BnyStatus::Format,
        Error::Resource(_) => BnyStatus::Resource,
        Error::Io(_) => BnyStatus::Io,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, records any failure or panic and maps it to a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BnyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BnyStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            BnyStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            BnyStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if ptr.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn slice_mut<'a, T>(ptr: *mut T, len: usize, what: &'static str) -> Result<&'a mut [T], Failure> {
    if ptr.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(ptr, len))
}

unsafe fn to_path<'a>(ptr: *const c_char) -> Result<&'a Path, Failure> {
    if ptr.is_null() {
        return Err(Failure::Null("path"));
    }
    let s = CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Error::InvalidParameter("path is not valid UTF-8".into()))?;
    Ok(Path::new(s))
}

unsafe fn sim_ref<'a>(sim: *const BnySim) -> Result<&'a BnySim, Failure> {
    sim.as_ref().ok_or(Failure::Null("sim"))
}

unsafe fn sim_mut<'a>(sim: *mut BnySim) -> Result<&'a mut BnySim, Failure> {
    sim.as_mut().ok_or(Failure::Null("sim"))
}

fn scheme_for(p: &PhysParams) -> Scheme {
    if p.epsilon > 0.0 {
        Scheme::Viscous
    } else {
        Scheme::Inviscid
    }
}

/// Creates a simulation on `[0, length]` with `cells` cells from nodal data.
/// All three arrays hold `cells + 1` values; the end values are kept as given.
///
/// # Safety
/// The arrays must be readable for `cells + 1` doubles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_new(
    length: f64,
    cells: usize,
    a: f64,
    b: f64,
    epsilon: f64,
    u_re: *const f64,
    u_im: *const f64,
    v: *const f64,
    out: *mut *mut BnySim,
) -> BnyStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let grid = Grid::new(length, cells)?;
        let params = PhysParams::new(a, b, epsilon)?;
        let n = grid.nodes();
        let (re, im, vv) = (slice(u_re, n, "u_re")?, slice(u_im, n, "u_im")?, slice(v, n, "v")?);
        let u = ComplexField::new(re.iter().zip(im).map(|(&x, &y)| Complex64::new(x, y)).collect());
        let state = SimState::new(0.0, u, RealField::new(vv.to_vec()))?;
        let control = StepControl::new(grid.dx(), 0.9, scheme_for(&params))?;
        *out = Box::into_raw(Box::new(BnySim {
            grid,
            params,
            control,
            boundary: Box::new(Homogeneous),
            boundstate: None,
            state,
        }));
        Ok(())
    })
}

/// Creates a simulation from a scenario config file, with the initial data,
/// numerics and boundary data it describes.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_from_config(path: *const c_char, out: *mut *mut BnySim) -> BnyStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let cfg = load_config(to_path(path)?)?;
        let (setup, state, _) = prepare(&cfg)?;
        let control = StepControl::new(setup.dt.unwrap_or(setup.grid.dx()), setup.cfl_safety, setup.scheme())?
            .with_transport(setup.transport)
            .with_diffusion(setup.diffusion);
        let boundary: Box<dyn BoundaryData> = match setup.boundstate {
            Some(params) => Box::new(TravelingWave {
                params,
                length: setup.grid.length(),
            }),
            None => Box::new(Homogeneous),
        };
        *out = Box::into_raw(Box::new(BnySim {
            grid: setup.grid,
            params: setup.params,
            control,
            boundary,
            boundstate: setup.boundstate,
            state,
        }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `sim` must come from a constructor here and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_free(sim: *mut BnySim) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Selects the transport and diffusion discretizations and the CFL safety
/// factor in (0, 1].
///
/// # Safety
/// `sim` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_set_numerics(
    sim: *mut BnySim,
    transport: u32,
    diffusion: u32,
    cfl_safety: f64,
) -> BnyStatus {
    guard(|| {
        let s = sim_mut(sim)?;
        let transport = match transport {
            BNY_TRANSPORT_UPWIND1 => TransportScheme::Upwind1,
            BNY_TRANSPORT_MINMOD => TransportScheme::Minmod,
            other => return Err(Error::InvalidParameter(format!("unknown transport id {other}")).into()),
        };
        let diffusion = match diffusion {
            BNY_DIFFUSION_BACKWARD_EULER => DiffusionScheme::BackwardEuler,
            BNY_DIFFUSION_CRANK_NICOLSON => DiffusionScheme::CrankNicolson,
            other => return Err(Error::InvalidParameter(format!("unknown diffusion id {other}")).into()),
        };
        let mut c = s.control.with_transport(transport).with_diffusion(diffusion);
        c.cfl_safety = cfl_safety;
        c.validate()?;
        s.control = c;
        Ok(())
    })
}

/// One split step of exactly `dt`. Fails with `CflViolation` when `dt` is
/// beyond the explicit transport limit; the state is then unchanged.
///
/// # Safety
/// `sim` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_step(sim: *mut BnySim, dt: f64) -> BnyStatus {
    guard(|| {
        let s = sim_mut(sim)?;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter("dt must be > 0".into()).into());
        }
        let next = s.stepper().step(&s.state, dt)?;
        let diverged = next.diverged;
        s.state = next;
        if diverged {
            return Err(Error::Diverged.into());
        }
        Ok(())
    })
}

/// Advances to time `t_end` with steps of at most `dt_max`, shortened to the
/// CFL limit and clipped to land on `t_end`. Writes the step count to
/// `steps` when it is not null.
///
/// # Safety
/// `sim` must be a live handle; `steps` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_advance(sim: *mut BnySim, t_end: f64, dt_max: f64, steps: *mut usize) -> BnyStatus {
    guard(|| {
        let s = sim_mut(sim)?;
        if !(dt_max.is_finite() && dt_max > 0.0 && t_end.is_finite()) {
            return Err(Error::InvalidParameter("dt_max must be > 0 and t_end finite".into()).into());
        }
        let mut count = 0usize;
        let mut failure = None;
        let mut state = s.state.clone();
        {
            let stepper = s.stepper();
            while t_end - state.t > 1e-9 * dt_max {
                let mut dt = dt_max.min(stepper.cfl_dt(&state));
                if t_end - state.t - dt <= 1e-9 * dt_max {
                    dt = t_end - state.t;
                }
                match stepper.step(&state, dt) {
                    Ok(next) => state = next,
                    Err(e) => {
                        failure = Some(e);
                        break;
                    }
                }
                count += 1;
                if state.diverged {
                    failure = Some(Error::Diverged);
                    break;
                }
            }
        }
        s.state = state;
        if !steps.is_null() {
            *steps = count;
        }
        match failure {
            Some(e) => Err(e.into()),
            None => Ok(()),
        }
    })
}

/// Number of grid nodes, `cells + 1`; zero for a null handle.
///
/// # Safety
/// `sim` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_nodes(sim: *const BnySim) -> usize {
    sim.as_ref().map_or(0, |s| s.grid.nodes())
}

/// Current simulation time.
///
/// # Safety
/// `sim` must be a live handle and `t` writable.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_time(sim: *const BnySim, t: *mut f64) -> BnyStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        *t.as_mut().ok_or(Failure::Null("t"))? = s.state.t;
        Ok(())
    })
}

/// Invariants and moments of the current state.
///
/// # Safety
/// `sim` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_invariants(sim: *const BnySim, out: *mut BnyInvariants) -> BnyStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let out = out.as_mut().ok_or(Failure::Null("out"))?;
        let i = Integrals::compute(&s.state.u, &s.state.v, &s.grid)?;
        *out = BnyInvariants {
            t: s.state.t,
            mass: i.mass,
            energy: i.energy(&s.params),
            momentum: i.momentum(),
            ux2: i.ux2,
            v2: i.v2,
            i2: i.i2,
            j: i.j,
            k: i.k,
            speed: s.stepper().speed(&s.state),
            max_abs_u: i.max_u,
            max_abs_v: i.max_v,
        };
        Ok(())
    })
}

/// Copies the nodal fields into caller buffers of `len` doubles each;
/// `len` must equal `bny_sim_nodes`.
///
/// # Safety
/// The buffers must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_copy_fields(
    sim: *const BnySim,
    u_re: *mut f64,
    u_im: *mut f64,
    v: *mut f64,
    len: usize,
) -> BnyStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        if len != s.grid.nodes() {
            return Err(Error::LengthMismatch {
                expected: s.grid.nodes(),
                found: len,
            }
            .into());
        }
        let (re, im, vv) = (
            slice_mut(u_re, len, "u_re")?,
            slice_mut(u_im, len, "u_im")?,
            slice_mut(v, len, "v")?,
        );
        for (j, z) in s.state.u.iter().enumerate() {
            re[j] = z.re;
            im[j] = z.im;
        }
        vv.copy_from_slice(&s.state.v);
        Ok(())
    })
}

/// L² distance to the exact traveling wave at the current time. Fails with
/// `InvalidArgument` unless the handle was built from bound-state data.
///
/// # Safety
/// `sim` must be a live handle; `err_u` and `err_v` writable.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_tracking_error(sim: *const BnySim, err_u: *mut f64, err_v: *mut f64) -> BnyStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let bp = s
            .boundstate
            .ok_or_else(|| Error::InvalidParameter("simulation does not carry bound-state data".into()))?;
        let (eu, ev) = tracking_error(&bp, &s.grid, &s.state);
        *err_u.as_mut().ok_or(Failure::Null("err_u"))? = eu;
        *err_v.as_mut().ok_or(Failure::Null("err_v"))? = ev;
        Ok(())
    })
}

/// Writes the current state as a binary snapshot.
///
/// # Safety
/// `sim` must be a live handle and `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bny_sim_save_snapshot(sim: *const BnySim, path: *const c_char) -> BnyStatus {
    guard(|| {
        let s = sim_ref(sim)?;
        let snap = Snapshot {
            t: s.state.t,
            grid: s.grid,
            params: s.params,
            scheme: s.control.scheme,
            transport: s.control.transport,
            diffusion: s.control.diffusion,
            u: s.state.u.clone(),
            v: s.state.v.clone(),
        };
        write_snapshot(&snap, to_path(path)?)?;
        Ok(())
    })
}

/// Solves for the traveling-wave parameters.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bny_boundstate_solve(
    a: f64,
    b: f64,
    s_star: f64,
    mu_star: f64,
    out: *mut BnyBoundState,
) -> BnyStatus {
    guard(|| {
        let out = out.as_mut().ok_or(Failure::Null("out"))?;
        *out = solve_parameters(a, b, s_star, mu_star)?.into();
        Ok(())
    })
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`) and returns the full message length in bytes
/// excluding the NUL. A null `buf` only queries the length.
///
/// # Safety
/// `buf` must be null or writable for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn bny_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bny_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
