//! Status codes and the per-thread last-error message.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use modforms::Error;

/// Result of every fallible call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfStatus {
    MfOk = 0,
    MfErrNullPointer = 1,
    MfErrInvalidArgument = 2,
    MfErrInsufficientPrecision = 3,
    MfErrInvalidWeight = 4,
    MfErrParityMismatch = 5,
    MfErrUnsupported = 6,
    MfErrArithmetic = 7,
    MfErrValence = 8,
    MfErrUtf8 = 9,
    MfErrPanic = 10,
}

impl From<&Error> for MfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InsufficientPrecision { .. } => MfStatus::MfErrInsufficientPrecision,
            Error::InvalidWeight(..) => MfStatus::MfErrInvalidWeight,
            Error::ParityMismatch(_) => MfStatus::MfErrParityMismatch,
            Error::Unsupported(_) => MfStatus::MfErrUnsupported,
            Error::NotAUnit(_) | Error::DivisionByZero | Error::MismatchedFields => MfStatus::MfErrArithmetic,
            Error::ValenceViolation(_) => MfStatus::MfErrValence,
            Error::InvalidArgument(_) | Error::BadPrime(..) | Error::Parse(_) => MfStatus::MfErrInvalidArgument,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

pub(crate) fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

pub(crate) fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Failure inside a call body.
pub(crate) struct Fail(pub MfStatus, pub String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(MfStatus::from(&e), format!("{}: {e}", e.kind()))
    }
}

pub(crate) type Body<T> = Result<T, Fail>;

/// Runs `f`, turning errors and panics into a status and last-error text.
pub(crate) fn guard(f: impl FnOnce() -> Body<()> + UnwindSafe) -> MfStatus {
    clear_last_error();
    match catch_unwind(f) {
        Ok(Ok(())) => MfStatus::MfOk,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            MfStatus::MfErrPanic
        }
    }
}

/// Message for the most recent failed call on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library on the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn mf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}
