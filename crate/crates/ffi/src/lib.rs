//! C ABI for the ultrametric toolkit: opaque handles, integer error codes,
//! and caller-owned output buffers. The header is generated by cbindgen at
//! build time (see `include/padiq.h`).

use padiq::dynamics::{iterate, mental_space_size, Classification, DynSpec};
use padiq::error::PadiqError;
use padiq::grid::GridSpec;
use padiq::operators::{
    hamiltonian_alpha, spectrum, vladimirov_multiplier, ZeroMode,
};
use padiq::padic::{parse_padic, BaseConfig, PadicNumber};
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PadiqStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    InvalidConfig = 3,
    SizeLimit = 4,
    MathError = 5,
    BufferTooSmall = 6,
}

fn status_of(e: &PadiqError) -> PadiqStatus {
    match e {
        PadiqError::Parse(_) | PadiqError::UnknownKey(_) => PadiqStatus::ParseError,
        PadiqError::GridTooLarge { .. } => PadiqStatus::SizeLimit,
        PadiqError::NotPrime(_) | PadiqError::ZeroPrecision | PadiqError::ConfigMismatch(_, _) => {
            PadiqStatus::InvalidConfig
        }
        _ => PadiqStatus::MathError,
    }
}

/// Opaque exact p-adic number.
pub struct PadiqNumber {
    inner: PadicNumber,
}

unsafe fn opt<'a, T>(p: *const T) -> Option<&'a T> {
    if p.is_null() {
        None
    } else {
        Some(&*p)
    }
}

/// Parse the textual format `p^v * (d0 d1 ...)_p` into a new handle.
/// The handle must be released with `padiq_number_free`.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_parse(
    text: *const c_char,
    out: *mut *mut PadiqNumber,
) -> PadiqStatus {
    if text.is_null() || out.is_null() {
        return PadiqStatus::NullArgument;
    }
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => return PadiqStatus::ParseError,
    };
    match parse_padic(s) {
        Ok(n) => {
            *out = Box::into_raw(Box::new(PadiqNumber { inner: n }));
            PadiqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Encode an integer in base p with `precision` digits.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_from_integer(
    value: i64,
    p: u64,
    precision: u32,
    out: *mut *mut PadiqNumber,
) -> PadiqStatus {
    if out.is_null() {
        return PadiqStatus::NullArgument;
    }
    match BaseConfig::new(p, precision) {
        Ok(cfg) => {
            let n = PadicNumber::from_integer(value, cfg);
            *out = Box::into_raw(Box::new(PadiqNumber { inner: n }));
            PadiqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn padiq_number_free(handle: *mut PadiqNumber) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Write the textual form into `buf`. Returns BufferTooSmall and stores the
/// required size (including the terminator) in `needed` when `len` is
/// insufficient.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_format(
    handle: *const PadiqNumber,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> PadiqStatus {
    let Some(h) = opt(handle) else { return PadiqStatus::NullArgument };
    let text = CString::new(h.inner.to_string()).expect("no interior NUL");
    let bytes = text.as_bytes_with_nul();
    if !needed.is_null() {
        *needed = bytes.len();
    }
    if buf.is_null() || len < bytes.len() {
        return PadiqStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
    PadiqStatus::Ok
}

unsafe fn binop(
    a: *const PadiqNumber,
    b: *const PadiqNumber,
    out: *mut *mut PadiqNumber,
    f: impl FnOnce(&PadicNumber, &PadicNumber) -> padiq::Result<PadicNumber>,
) -> PadiqStatus {
    let (Some(a), Some(b)) = (opt(a), opt(b)) else {
        return PadiqStatus::NullArgument;
    };
    if out.is_null() {
        return PadiqStatus::NullArgument;
    }
    match f(&a.inner, &b.inner) {
        Ok(r) => {
            *out = Box::into_raw(Box::new(PadiqNumber { inner: r }));
            PadiqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// a + b into a new handle.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_add(
    a: *const PadiqNumber,
    b: *const PadiqNumber,
    out: *mut *mut PadiqNumber,
) -> PadiqStatus {
    binop(a, b, out, PadicNumber::add)
}

/// a - b into a new handle.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_sub(
    a: *const PadiqNumber,
    b: *const PadiqNumber,
    out: *mut *mut PadiqNumber,
) -> PadiqStatus {
    binop(a, b, out, PadicNumber::sub)
}

/// a * b into a new handle.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_mul(
    a: *const PadiqNumber,
    b: *const PadiqNumber,
    out: *mut *mut PadiqNumber,
) -> PadiqStatus {
    binop(a, b, out, PadicNumber::mul)
}

/// a / b into a new handle; fails on division by zero.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_div(
    a: *const PadiqNumber,
    b: *const PadiqNumber,
    out: *mut *mut PadiqNumber,
) -> PadiqStatus {
    binop(a, b, out, PadicNumber::div)
}

/// |x|_p as a double; 0 for the p-adic zero.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_norm(handle: *const PadiqNumber, out: *mut f64) -> PadiqStatus {
    let Some(h) = opt(handle) else { return PadiqStatus::NullArgument };
    if out.is_null() {
        return PadiqStatus::NullArgument;
    }
    *out = h.inner.norm();
    PadiqStatus::Ok
}

/// Ultrametric distance |a - b|_p.
#[no_mangle]
pub unsafe extern "C" fn padiq_number_distance(
    a: *const PadiqNumber,
    b: *const PadiqNumber,
    out: *mut f64,
) -> PadiqStatus {
    let (Some(a), Some(b)) = (opt(a), opt(b)) else {
        return PadiqStatus::NullArgument;
    };
    if out.is_null() {
        return PadiqStatus::NullArgument;
    }
    match a.inner.distance(&b.inner) {
        Ok(d) => {
            *out = d;
            PadiqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Eigenvalues of H = h^2 D^alpha + optional |q|^2 potential on a one-axis
/// grid, ascending. Two-call pattern: pass `eigenvalues = NULL` to query
/// the count via `count`.
#[no_mangle]
pub unsafe extern "C" fn padiq_spectrum(
    p: u64,
    n: u32,
    m: u32,
    alpha: f64,
    h_exp: i64,
    with_abs2_potential: bool,
    eigenvalues: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> PadiqStatus {
    if count.is_null() {
        return PadiqStatus::NullArgument;
    }
    let grid = match GridSpec::new(p, n, m, 1) {
        Ok(g) => g,
        Err(e) => return status_of(&e),
    };
    *count = grid.total_cells();
    if eigenvalues.is_null() {
        return PadiqStatus::Ok;
    }
    if capacity < grid.total_cells() {
        return PadiqStatus::BufferTooSmall;
    }
    let result = (|| -> padiq::Result<Vec<f64>> {
        let op = if with_abs2_potential {
            let v = padiq::operators::abs2_potential(&grid);
            hamiltonian_alpha(&grid, h_exp, alpha, &v, ZeroMode::Floor)?
        } else {
            let h = (p as f64).powi(-h_exp as i32);
            vladimirov_multiplier(&grid, alpha, ZeroMode::Floor)?.scaled(h * h)
        };
        Ok(spectrum(&op, None)?.eigenvalues)
    })();
    match result {
        Ok(values) => {
            ptr::copy_nonoverlapping(values.as_ptr(), eigenvalues, values.len());
            PadiqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Fixed-point character of x -> x^n at the orbit's reference point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PadiqOrbitClass {
    Attracting = 0,
    Repelling = 1,
    Siegel = 2,
    Inconclusive = 3,
}

/// Run the exact monomial orbit of `x0` (textual format) under x -> x^n.
/// `distance_exps` receives per-step exponents e with |x_k - x*| = p^e;
/// steps that collapse onto the fixed point at working precision store
/// INT64_MIN. `filled` reports how many entries were written.
#[no_mangle]
pub unsafe extern "C" fn padiq_orbit(
    x0: *const c_char,
    exponent: u64,
    steps: usize,
    distance_exps: *mut i64,
    capacity: usize,
    filled: *mut usize,
    class: *mut PadiqOrbitClass,
) -> PadiqStatus {
    if x0.is_null() || filled.is_null() || class.is_null() {
        return PadiqStatus::NullArgument;
    }
    let text = match CStr::from_ptr(x0).to_str() {
        Ok(s) => s,
        Err(_) => return PadiqStatus::ParseError,
    };
    let start = match parse_padic(text) {
        Ok(x) => x,
        Err(e) => return status_of(&e),
    };
    let cfg = start.config();
    let report = match DynSpec::new(cfg, exponent, start, steps).and_then(|s| iterate(&s)) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    *class = match report.classification {
        Classification::Attracting => PadiqOrbitClass::Attracting,
        Classification::Repelling => PadiqOrbitClass::Repelling,
        Classification::Siegel => PadiqOrbitClass::Siegel,
        Classification::Inconclusive => PadiqOrbitClass::Inconclusive,
    };
    let want = report.distance_exps.len();
    *filled = want.min(capacity);
    if !distance_exps.is_null() {
        for (i, d) in report.distance_exps.iter().take(*filled).enumerate() {
            *distance_exps.add(i) = d.unwrap_or(i64::MIN);
        }
    } else if capacity > 0 {
        return PadiqStatus::NullArgument;
    }
    PadiqStatus::Ok
}

/// Number of decimal digits of p^L (the code-space cardinality).
#[no_mangle]
pub extern "C" fn padiq_mental_space_decimal_digits(p: u64, l: u32) -> u64 {
    mental_space_size(p, l).to_string().len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn parse_norm_and_arithmetic() {
        unsafe {
            let text = CString::new("2^-1 * (1 1 0 1)_2").unwrap();
            let mut a = ptr::null_mut();
            assert_eq!(padiq_number_parse(text.as_ptr(), &mut a), PadiqStatus::Ok);
            let mut norm = 0.0;
            assert_eq!(padiq_number_norm(a, &mut norm), PadiqStatus::Ok);
            assert_eq!(norm, 2.0);
            let mut b = ptr::null_mut();
            assert_eq!(padiq_number_from_integer(3, 2, 4, &mut b), PadiqStatus::Ok);
            let mut sum = ptr::null_mut();
            assert_eq!(padiq_number_add(a, b, &mut sum), PadiqStatus::Ok);
            let mut d = 0.0;
            assert_eq!(padiq_number_distance(sum, b, &mut d), PadiqStatus::Ok);
            assert_eq!(d, 2.0); // |a|_2
            padiq_number_free(a);
            padiq_number_free(b);
            padiq_number_free(sum);
        }
    }

    #[test]
    fn format_two_call_pattern() {
        unsafe {
            let mut a = ptr::null_mut();
            assert_eq!(padiq_number_from_integer(12, 2, 6, &mut a), PadiqStatus::Ok);
            let mut needed = 0usize;
            assert_eq!(
                padiq_number_format(a, ptr::null_mut(), 0, &mut needed),
                PadiqStatus::BufferTooSmall
            );
            let mut buf = vec![0i8; needed];
            assert_eq!(
                padiq_number_format(a, buf.as_mut_ptr() as *mut c_char, needed, &mut needed),
                PadiqStatus::Ok
            );
            let text = CStr::from_ptr(buf.as_ptr() as *const c_char).to_str().unwrap();
            assert!(text.starts_with("2^2"), "{text}");
            padiq_number_free(a);
        }
    }

    #[test]
    fn spectrum_two_call_pattern() {
        unsafe {
            let mut count = 0usize;
            assert_eq!(
                padiq_spectrum(2, 1, 1, 1.0, 0, false, ptr::null_mut(), 0, &mut count),
                PadiqStatus::Ok
            );
            assert_eq!(count, 4);
            let mut values = vec![0.0f64; count];
            assert_eq!(
                padiq_spectrum(2, 1, 1, 1.0, 0, false, values.as_mut_ptr(), count, &mut count),
                PadiqStatus::Ok
            );
            for (got, want) in values.iter().zip([0.0, 1.0, 2.0, 2.0]) {
                assert!((got - want).abs() < 1e-12, "{values:?}");
            }
        }
    }

    #[test]
    fn orbit_classification() {
        unsafe {
            let x0 = CString::new("2^0 * (1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0)_2").unwrap();
            let mut dist = vec![0i64; 8];
            let mut filled = 0usize;
            let mut class = PadiqOrbitClass::Inconclusive;
            assert_eq!(
                padiq_orbit(x0.as_ptr(), 2, 7, dist.as_mut_ptr(), 8, &mut filled, &mut class),
                PadiqStatus::Ok
            );
            assert_eq!(class, PadiqOrbitClass::Attracting);
            assert_eq!(dist[0], -1);
            assert!(filled >= 2 && dist[1] < dist[0]);
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            assert_eq!(
                padiq_number_parse(ptr::null(), ptr::null_mut()),
                PadiqStatus::NullArgument
            );
            let mut norm = 0.0;
            assert_eq!(padiq_number_norm(ptr::null(), &mut norm), PadiqStatus::NullArgument);
        }
    }

    #[test]
    fn generated_header_covers_the_surface() {
        let header = std::fs::read_to_string(
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/padiq.h"),
        )
        .expect("header generated at build time");
        for symbol in [
            "padiq_number_parse",
            "padiq_number_free",
            "padiq_number_format",
            "padiq_number_add",
            "padiq_number_div",
            "padiq_number_norm",
            "padiq_number_distance",
            "padiq_spectrum",
            "padiq_orbit",
            "padiq_mental_space_decimal_digits",
            "PADIQ_STATUS_BUFFER_TOO_SMALL",
        ] {
            assert!(header.contains(symbol), "missing {symbol}");
        }
    }

    #[test]
    fn mental_space_digit_counts() {
        assert_eq!(padiq_mental_space_decimal_digits(2, 5), 2); // 32
        assert_eq!(padiq_mental_space_decimal_digits(5, 10000), 6990);
    }
}
