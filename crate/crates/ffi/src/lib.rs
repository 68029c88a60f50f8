//! C ABI over `percepthash`.
//!
//! Images and hashes cross the boundary as opaque handles owned by the caller
//! and released with the matching `*_free`. Every fallible call returns a
//! [`PhStatus`]; on failure [`ph_last_error_message`] describes the most
//! recent error on the calling thread. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use percepthash::attacks::{apply_attack, AttackSpec};
use percepthash::raster::{load_image, save_image, PnmError};
use percepthash::similarity::{correlation, hamming, is_similar, DecisionThreshold};
use percepthash::{Algorithm, HashVector, RasterImage};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    UnknownAlgorithm = 4,
    Mismatch = 5,
    Panic = 6,
}

/// Decoded 8-bit raster.
pub struct PhImage(RasterImage);

/// Hash vector tagged with its algorithm.
pub struct PhHash(HashVector);

struct Failure(PhStatus, String);

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure(PhStatus::InvalidArgument, message.to_string())
    }
}

impl From<PnmError> for Failure {
    fn from(e: PnmError) -> Self {
        let status = match e {
            PnmError::NotFound(_) | PnmError::Io { .. } => PhStatus::Io,
            _ => PhStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PhStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PhStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            PhStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(PhStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PhStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PhStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PhStatus::NullPointer, "output pointer is null".into()));
    }
    *out = value;
    Ok(())
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn ph_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Reads a binary PGM or PPM file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_image_load(path: *const c_char, out: *mut *mut PhImage) -> PhStatus {
    guard(|| {
        let img = load_image(text(path, "path")?)?;
        store(out, PhImage(img))
    })
}

/// Copies `len` interleaved samples; `channels` is 1 or 3.
///
/// # Safety
/// `pixels` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ph_image_from_pixels(
    width: usize,
    height: usize,
    channels: usize,
    pixels: *const u8,
    len: usize,
    out: *mut *mut PhImage,
) -> PhStatus {
    guard(|| {
        let samples = deref(pixels, "pixels")?;
        let data = std::slice::from_raw_parts(samples, len).to_vec();
        let img = RasterImage::new(width, height, channels, data).map_err(Failure::invalid)?;
        store(out, PhImage(img))
    })
}

/// Writes P5 for grayscale and P6 for RGB.
///
/// # Safety
/// `img` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ph_image_save(img: *const PhImage, path: *const c_char) -> PhStatus {
    guard(|| {
        let img = deref(img, "image")?;
        save_image(&img.0, text(path, "path")?)?;
        Ok(())
    })
}

/// Width in pixels, or 0 for a null handle.
///
/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ph_image_width(img: *const PhImage) -> usize {
    img.as_ref().map_or(0, |i| i.0.width())
}

/// Height in pixels, or 0 for a null handle.
///
/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ph_image_height(img: *const PhImage) -> usize {
    img.as_ref().map_or(0, |i| i.0.height())
}

/// 1 or 3, or 0 for a null handle.
///
/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ph_image_channels(img: *const PhImage) -> usize {
    img.as_ref().map_or(0, |i| i.0.channels())
}

/// Releases an image; null is ignored.
///
/// # Safety
/// `img` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ph_image_free(img: *mut PhImage) {
    if !img.is_null() {
        drop(Box::from_raw(img));
    }
}

/// Hashes `img` with `algorithm` (`phash`, `ring`, `block` or `cslbp`).
///
/// # Safety
/// `algorithm` must be a NUL-terminated string, `img` a live handle and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ph_hash_compute(
    algorithm: *const c_char,
    img: *const PhImage,
    out: *mut *mut PhHash,
) -> PhStatus {
    guard(|| {
        let algorithm: Algorithm = text(algorithm, "algorithm")?
            .parse()
            .map_err(|e: percepthash::hashes::UnknownAlgorithm| Failure(PhStatus::UnknownAlgorithm, e.to_string()))?;
        let img = deref(img, "image")?;
        store(out, PhHash(algorithm.hash(&img.0)))
    })
}

/// Number of values, or 0 for a null handle.
///
/// # Safety
/// `hash` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ph_hash_len(hash: *const PhHash) -> usize {
    hash.as_ref().map_or(0, |h| h.0.len())
}

/// Copies the values into `out`, which must hold at least `ph_hash_len` items.
///
/// # Safety
/// `hash` must be a live handle and `out` must have room for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn ph_hash_values(hash: *const PhHash, out: *mut f64, capacity: usize) -> PhStatus {
    guard(|| {
        let values = deref(hash, "hash")?.0.values();
        if out.is_null() {
            return Err(Failure(PhStatus::NullPointer, "output buffer is null".into()));
        }
        if capacity < values.len() {
            return Err(Failure::invalid(format!(
                "buffer holds {capacity} values, hash has {}",
                values.len()
            )));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
        Ok(())
    })
}

/// Renders `algorithm:length:v1,v2,...`; release with [`ph_string_free`].
///
/// # Safety
/// `hash` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ph_hash_to_string(hash: *const PhHash, out: *mut *mut c_char) -> PhStatus {
    guard(|| {
        let line = CString::new(deref(hash, "hash")?.0.to_string()).map_err(Failure::invalid)?;
        write(out, line.into_raw())
    })
}

/// Parses the text produced by [`ph_hash_to_string`].
///
/// # Safety
/// `line` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ph_hash_parse(line: *const c_char, out: *mut *mut PhHash) -> PhStatus {
    guard(|| {
        let hash: HashVector = text(line, "hash text")?.parse().map_err(Failure::invalid)?;
        store(out, PhHash(hash))
    })
}

/// Releases a hash; null is ignored.
///
/// # Safety
/// `hash` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ph_hash_free(hash: *mut PhHash) {
    if !hash.is_null() {
        drop(Box::from_raw(hash));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Correlation score S in [-1, 1] between two hashes of the same algorithm.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ph_correlation(a: *const PhHash, b: *const PhHash, out: *mut f64) -> PhStatus {
    guard(|| {
        let s = correlation(&deref(a, "hash a")?.0, &deref(b, "hash b")?.0)
            .map_err(|e| Failure(PhStatus::Mismatch, e.to_string()))?;
        write(out, s.value())
    })
}

/// Whether S > `threshold`, with `threshold` in (-1, 1).
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ph_is_similar(a: *const PhHash, b: *const PhHash, threshold: f64, out: *mut bool) -> PhStatus {
    guard(|| {
        let t = DecisionThreshold::new(threshold).map_err(Failure::invalid)?;
        let similar = is_similar(&deref(a, "hash a")?.0, &deref(b, "hash b")?.0, t)
            .map_err(|e| Failure(PhStatus::Mismatch, e.to_string()))?;
        write(out, similar)
    })
}

/// Differing positions between two binary hashes.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ph_hamming(a: *const PhHash, b: *const PhHash, out: *mut usize) -> PhStatus {
    guard(|| {
        let d = hamming(&deref(a, "hash a")?.0, &deref(b, "hash b")?.0)
            .map_err(|e| Failure(PhStatus::Mismatch, e.to_string()))?;
        write(out, d)
    })
}

/// Applies one operation given as a manifest line such as `rotation theta=5`.
///
/// # Safety
/// `img` must be a live handle, `spec` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ph_attack_apply(
    img: *const PhImage,
    spec: *const c_char,
    seed: u64,
    out: *mut *mut PhImage,
) -> PhStatus {
    guard(|| {
        let spec: AttackSpec = text(spec, "spec")?.parse().map_err(Failure::invalid)?;
        let attacked = apply_attack(&deref(img, "image")?.0, &spec, seed).map_err(Failure::invalid)?;
        store(out, PhImage(attacked))
    })
}
