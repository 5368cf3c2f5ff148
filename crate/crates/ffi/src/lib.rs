//! C ABI for tailsurf.
//!
//! Codes are opaque [`TsCode`] handles created by [`ts_code_new`] and released
//! with [`ts_code_free`]. Every fallible call returns a [`TsStatus`]; on
//! failure the message is available from [`ts_last_error_message`] on the same
//! thread. Panics are caught at the boundary and reported as
//! [`TsStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tailsurf::codes::{pure_noise_summary, Layout, StabilizerCode};
use tailsurf::gf2::BitVec;
use tailsurf::noise::{hashing_bound, BiasedNoiseModel};
use tailsurf::sim::{build_decoder, estimate_failure_rate, DecoderKind};
use tailsurf::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The syndrome cannot arise from the errors the decoder handles.
    Unattainable = 3,
    Numerical = 4,
    Internal = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsLayout {
    Standard = 0,
    Rotated = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsDecoder {
    ExactY = 0,
    Concatenated = 1,
    Mps = 2,
    BruteForce = 3,
}

/// Opaque code handle.
pub struct TsCode {
    inner: StabilizerCode,
}

/// Distances and base-2 logarithms of minimum-weight logical counts under
/// pure X, Y and Z noise.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TsPureSummary {
    pub d_x: usize,
    pub d_y: usize,
    pub d_z: usize,
    pub c_x_log2: u32,
    pub c_y_log2: u32,
    pub c_z_log2: u32,
}

/// Monte Carlo failure-rate estimate.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TsEstimate {
    pub trials: u64,
    pub failures: u64,
    pub decoder_errors: u64,
    pub rate: f64,
    pub stderr: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::InvalidDimensions(_)
        | Error::InvalidArgument(_)
        | Error::LengthMismatch { .. }
        | Error::SizeGuard(_) => TsStatus::InvalidArgument,
        Error::UnattainableSyndrome | Error::InconsistentSyndrome(_) => TsStatus::Unattainable,
        Error::Numerical(_) | Error::Fit(_) => TsStatus::Numerical,
        Error::Internal(_) => TsStatus::Internal,
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

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            TsStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            TsStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

fn decoder_kind(d: TsDecoder) -> DecoderKind {
    match d {
        TsDecoder::ExactY => DecoderKind::ExactY,
        TsDecoder::Concatenated => DecoderKind::Concatenated,
        TsDecoder::Mps => DecoderKind::Mps,
        TsDecoder::BruteForce => DecoderKind::BruteForce,
    }
}

/// Zero means "not given".
fn chi_arg(chi: usize) -> Option<usize> {
    (chi > 0).then_some(chi)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a `j` x `k` code and stores a new handle in `*out_code`.
///
/// # Safety
/// `out_code` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_code_new(
    layout: TsLayout,
    j: usize,
    k: usize,
    out_code: *mut *mut TsCode,
) -> TsStatus {
    guard(|| {
        let slot = out(out_code, "out_code")?;
        *slot = ptr::null_mut();
        let layout = match layout {
            TsLayout::Standard => Layout::Standard,
            TsLayout::Rotated => Layout::Rotated,
        };
        let inner = StabilizerCode::new(layout, j, k)?;
        *slot = Box::into_raw(Box::new(TsCode { inner }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `code` must be NULL or a handle from [`ts_code_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_code_free(code: *mut TsCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of physical qubits and of stabilizer checks.
///
/// # Safety
/// `code` must be a live handle; the out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_code_size(
    code: *const TsCode,
    out_qubits: *mut usize,
    out_checks: *mut usize,
) -> TsStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        *out(out_qubits, "out_qubits")? = c.n();
        *out(out_checks, "out_checks")? = c.num_checks();
        Ok(())
    })
}

/// Distances and logical counts under pure X, Y and Z noise.
///
/// # Safety
/// `code` must be a live handle; `out_summary` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_code_pure_summary(
    code: *const TsCode,
    out_summary: *mut TsPureSummary,
) -> TsStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        let slot = out(out_summary, "out_summary")?;
        let s = pure_noise_summary(c)?;
        *slot = TsPureSummary {
            d_x: s.d_x,
            d_y: s.d_y,
            d_z: s.d_z,
            c_x_log2: s.c_x_log2,
            c_y_log2: s.c_y_log2,
            c_z_log2: s.c_z_log2,
        };
        Ok(())
    })
}

/// Hashing-bound threshold for bias `eta` (pass `INFINITY` for pure Y).
///
/// # Safety
/// `out_p` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_hashing_bound(eta: f64, out_p: *mut f64) -> TsStatus {
    guard(|| {
        let slot = out(out_p, "out_p")?;
        *slot = hashing_bound(eta)?;
        Ok(())
    })
}

/// Decodes one syndrome. `syndrome` holds `syndrome_len` bytes, each 0 or 1,
/// in check order. On success `out_recovery` receives `n` bytes with
/// 0 = I, 1 = X, 2 = Y, 3 = Z per qubit; `recovery_len` must be at least `n`.
/// `chi` is the MPS bond dimension (0 for other decoders).
///
/// # Safety
/// `code` must be a live handle; buffers must be valid for their lengths.
#[no_mangle]
pub unsafe extern "C" fn ts_decode(
    code: *const TsCode,
    p: f64,
    eta: f64,
    decoder: TsDecoder,
    chi: usize,
    syndrome: *const u8,
    syndrome_len: usize,
    out_recovery: *mut u8,
    recovery_len: usize,
) -> TsStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        if syndrome.is_null() {
            return Err(Failure::Null("syndrome"));
        }
        if out_recovery.is_null() {
            return Err(Failure::Null("out_recovery"));
        }
        if syndrome_len != c.num_checks() {
            return Err(Error::LengthMismatch {
                expected: c.num_checks(),
                got: syndrome_len,
            }
            .into());
        }
        if recovery_len < c.n() {
            return Err(Error::LengthMismatch {
                expected: c.n(),
                got: recovery_len,
            }
            .into());
        }
        let bits = std::slice::from_raw_parts(syndrome, syndrome_len);
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(
                Error::InvalidArgument(format!("syndrome bytes must be 0 or 1 (got {b})")).into(),
            );
        }
        let s = BitVec::from_bools(&bits.iter().map(|&b| b == 1).collect::<Vec<_>>());
        let model = BiasedNoiseModel::new(p, eta)?;
        let dec = build_decoder(decoder_kind(decoder), c, &model, chi_arg(chi))?;
        let outcome = dec.decode(&s)?;
        let dst = std::slice::from_raw_parts_mut(out_recovery, c.n());
        for (q, slot) in dst.iter_mut().enumerate() {
            *slot = outcome.recovery.get(q).index() as u8;
        }
        Ok(())
    })
}

/// Monte Carlo logical failure rate over `trials` seeded trials.
///
/// # Safety
/// `code` must be a live handle; `out_estimate` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_estimate_failure_rate(
    code: *const TsCode,
    p: f64,
    eta: f64,
    decoder: TsDecoder,
    chi: usize,
    trials: u64,
    seed: u64,
    out_estimate: *mut TsEstimate,
) -> TsStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        let slot = out(out_estimate, "out_estimate")?;
        let model = BiasedNoiseModel::new(p, eta)?;
        let dec = build_decoder(decoder_kind(decoder), c, &model, chi_arg(chi))?;
        let est = estimate_failure_rate(c, dec.as_ref(), &model, trials, seed)?;
        *slot = TsEstimate {
            trials: est.tally.trials,
            failures: est.tally.failures,
            decoder_errors: est.tally.decoder_errors,
            rate: est.rate,
            stderr: est.stderr,
        };
        Ok(())
    })
}
