//! C ABI for the secure-by-component toolkit.
//!
//! Models and catalogs are opaque handles created and freed here; analysis
//! results cross the boundary as newly allocated UTF-8 strings the caller
//! releases via [`sbc_string_free`]. Every fallible call returns an
//! [`SbcStatus`]; on failure [`sbc_last_error_message`] yields a diagnostic.

use sbc::blocks::{builtin_profile, derive_plan, generate_shall, render_shall_markdown};
use sbc::catalog::{builtin_catalog, load_catalog, Catalog};
use sbc::linksim::{parse_scenario, run_simulation, ModelRef};
use sbc::model::{builtin_model, parse_model, serialize_model, to_dot, validate, SystemModel};
use sbc::surface::{
    builtin_labels, enumerate_surfaces, render_markdown as render_surface_markdown,
};
use sbc::threatmap::enumerate_threats;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Result of a toolkit call. Mirrors the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbcStatus {
    /// Success.
    Ok = 0,
    /// The model has validation errors.
    Validation = 1,
    /// The input document or configuration is malformed.
    Parse = 2,
    /// Internal or I/O failure.
    Runtime = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
}

/// Opaque mission-model handle.
pub struct SbcModel {
    inner: SystemModel,
}

/// Opaque technique-catalog handle.
pub struct SbcCatalog {
    inner: Catalog,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message =
        CString::new(message).unwrap_or_else(|_| CString::new("invalid error message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn fail(status: SbcStatus, message: impl Into<String>) -> SbcStatus {
    set_error(message.into());
    status
}

/// Last error message for this thread, or null when no call failed yet.
/// The caller owns the string and frees it with [`sbc_string_free`].
#[no_mangle]
pub extern "C" fn sbc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(message) => message.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by a function of this library and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn sbc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SbcStatus> {
    if ptr.is_null() {
        return Err(fail(SbcStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(SbcStatus::Parse, "argument is not valid UTF-8"))
}

fn emit_string(out: *mut *mut c_char, content: String) -> SbcStatus {
    if out.is_null() {
        return fail(SbcStatus::NullArgument, "null output argument");
    }
    match CString::new(content) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            SbcStatus::Ok
        }
        Err(_) => fail(SbcStatus::Runtime, "output contains an interior NUL byte"),
    }
}

fn emit_model(out: *mut *mut SbcModel, model: SystemModel) -> SbcStatus {
    if out.is_null() {
        return fail(SbcStatus::NullArgument, "null output argument");
    }
    unsafe { *out = Box::into_raw(Box::new(SbcModel { inner: model })) };
    SbcStatus::Ok
}

unsafe fn model_ref<'a>(model: *const SbcModel) -> Result<&'a SystemModel, SbcStatus> {
    if model.is_null() {
        return Err(fail(SbcStatus::NullArgument, "null model handle"));
    }
    Ok(&(*model).inner)
}

unsafe fn catalog_ref<'a>(catalog: *const SbcCatalog) -> Result<&'a Catalog, SbcStatus> {
    if catalog.is_null() {
        return Err(fail(SbcStatus::NullArgument, "null catalog handle"));
    }
    Ok(&(*catalog).inner)
}

/// Parse a model document into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must point to writable
/// pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_model_parse(
    text: *const c_char,
    out: *mut *mut SbcModel,
) -> SbcStatus {
    let text = match read_str(text) {
        Ok(text) => text,
        Err(status) => return status,
    };
    match parse_model(text) {
        Ok(model) => emit_model(out, model),
        Err(e) => fail(SbcStatus::Parse, e.to_string()),
    }
}

/// Load one of the builtin models (`single-leo` or `leo-network`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must point to writable
/// pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_model_builtin(
    name: *const c_char,
    out: *mut *mut SbcModel,
) -> SbcStatus {
    let name = match read_str(name) {
        Ok(name) => name,
        Err(status) => return status,
    };
    match builtin_model(name) {
        Ok(model) => emit_model(out, model),
        Err(e) => fail(SbcStatus::Parse, e.to_string()),
    }
}

/// Release a model handle. Null is ignored.
///
/// # Safety
/// `model` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn sbc_model_free(model: *mut SbcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Release a catalog handle. Null is ignored.
///
/// # Safety
/// `catalog` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn sbc_catalog_free(catalog: *mut SbcCatalog) {
    if !catalog.is_null() {
        drop(Box::from_raw(catalog));
    }
}

/// Load the builtin technique catalog.
///
/// # Safety
/// `out` must point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_catalog_builtin(out: *mut *mut SbcCatalog) -> SbcStatus {
    if out.is_null() {
        return fail(SbcStatus::NullArgument, "null output argument");
    }
    *out = Box::into_raw(Box::new(SbcCatalog {
        inner: builtin_catalog(),
    }));
    SbcStatus::Ok
}

/// Parse a catalog document into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must point to writable
/// pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_catalog_parse(
    text: *const c_char,
    out: *mut *mut SbcCatalog,
) -> SbcStatus {
    let text = match read_str(text) {
        Ok(text) => text,
        Err(status) => return status,
    };
    match load_catalog(text) {
        Ok(catalog) => {
            if out.is_null() {
                return fail(SbcStatus::NullArgument, "null output argument");
            }
            *out = Box::into_raw(Box::new(SbcCatalog { inner: catalog }));
            SbcStatus::Ok
        }
        Err(e) => fail(SbcStatus::Parse, e.to_string()),
    }
}

/// Validate a model; `out` receives the violations as a JSON array (empty
/// when every invariant holds).
///
/// # Safety
/// `model` must be a live handle; `out` must point to writable pointer
/// storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_model_validate_json(
    model: *const SbcModel,
    out: *mut *mut c_char,
) -> SbcStatus {
    let model = match model_ref(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    match serde_json::to_string_pretty(&validate(model)) {
        Ok(json) => emit_string(out, json),
        Err(e) => fail(SbcStatus::Runtime, e.to_string()),
    }
}

/// Canonical JSON serialization of a model.
///
/// # Safety
/// `model` must be a live handle; `out` must point to writable pointer
/// storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_model_serialize(
    model: *const SbcModel,
    out: *mut *mut c_char,
) -> SbcStatus {
    let model = match model_ref(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    emit_string(out, serialize_model(model))
}

/// Graphviz digraph of the mission decomposition.
///
/// # Safety
/// `model` must be a live handle; `out` must point to writable pointer
/// storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_model_to_dot(
    model: *const SbcModel,
    out: *mut *mut c_char,
) -> SbcStatus {
    let model = match model_ref(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    emit_string(out, to_dot(model))
}

/// Attack-surface table under the builtin labels; Markdown when `markdown`
/// is nonzero, a JSON array otherwise.
///
/// # Safety
/// `model` must be a live handle; `out` must point to writable pointer
/// storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_surface(
    model: *const SbcModel,
    markdown: bool,
    out: *mut *mut c_char,
) -> SbcStatus {
    let model = match model_ref(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    let entries = match enumerate_surfaces(model, &builtin_labels()) {
        Ok(entries) => entries,
        Err(e) => return fail(SbcStatus::Parse, e.to_string()),
    };
    let content = if markdown {
        render_surface_markdown(&entries)
    } else {
        match serde_json::to_string_pretty(&entries) {
            Ok(json) => json,
            Err(e) => return fail(SbcStatus::Runtime, e.to_string()),
        }
    };
    emit_string(out, content)
}

/// Threat findings for a model under a catalog, as JSON.
///
/// # Safety
/// `model` and `catalog` must be live handles; `out` must point to writable
/// pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_threats_json(
    model: *const SbcModel,
    catalog: *const SbcCatalog,
    out: *mut *mut c_char,
) -> SbcStatus {
    let model = match model_ref(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    let catalog = match catalog_ref(catalog) {
        Ok(catalog) => catalog,
        Err(status) => return status,
    };
    match serde_json::to_string_pretty(&enumerate_threats(model, catalog)) {
        Ok(json) => emit_string(out, json),
        Err(e) => fail(SbcStatus::Runtime, e.to_string()),
    }
}

/// Secure-block plan for a model under a catalog, as JSON.
///
/// # Safety
/// `model` and `catalog` must be live handles; `out` must point to writable
/// pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_plan_json(
    model: *const SbcModel,
    catalog: *const SbcCatalog,
    out: *mut *mut c_char,
) -> SbcStatus {
    let model = match model_ref(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    let catalog = match catalog_ref(catalog) {
        Ok(catalog) => catalog,
        Err(status) => return status,
    };
    let report = enumerate_threats(model, catalog);
    match serde_json::to_string_pretty(&derive_plan(&report, catalog, model)) {
        Ok(json) => emit_string(out, json),
        Err(e) => fail(SbcStatus::Runtime, e.to_string()),
    }
}

/// Shall statements for a model. `profile` selects `paper-eo` or is null
/// for the full derivation. Markdown when `markdown` is nonzero, JSON
/// otherwise.
///
/// # Safety
/// `model` and `catalog` must be live handles; `profile` must be null or a
/// NUL-terminated string; `out` must point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_shall(
    model: *const SbcModel,
    catalog: *const SbcCatalog,
    profile: *const c_char,
    markdown: bool,
    out: *mut *mut c_char,
) -> SbcStatus {
    let model = match model_ref(model) {
        Ok(model) => model,
        Err(status) => return status,
    };
    let catalog = match catalog_ref(catalog) {
        Ok(catalog) => catalog,
        Err(status) => return status,
    };
    let profile = if profile.is_null() {
        None
    } else {
        match read_str(profile) {
            Ok("paper-eo") => Some(builtin_profile()),
            Ok("none") => None,
            Ok(other) => return fail(SbcStatus::Parse, format!("unknown profile `{other}`")),
            Err(status) => return status,
        }
    };
    let report = enumerate_threats(model, catalog);
    let plan = derive_plan(&report, catalog, model);
    let statements = match generate_shall(&plan, catalog, profile.as_ref()) {
        Ok(statements) => statements,
        Err(e) => return fail(SbcStatus::Parse, e.to_string()),
    };
    let content = if markdown {
        render_shall_markdown(&statements)
    } else {
        match serde_json::to_string_pretty(&statements) {
            Ok(json) => json,
            Err(e) => return fail(SbcStatus::Runtime, e.to_string()),
        }
    };
    emit_string(out, content)
}

/// Run a simulation scenario given as a JSON document. Model references by
/// `builtin` name resolve directly; `path` references resolve against the
/// current working directory. `out` receives the full result as JSON.
///
/// # Safety
/// `scenario_json` must be a NUL-terminated string; `out` must point to
/// writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn sbc_simulate_json(
    scenario_json: *const c_char,
    out: *mut *mut c_char,
) -> SbcStatus {
    let text = match read_str(scenario_json) {
        Ok(text) => text,
        Err(status) => return status,
    };
    let file = match parse_scenario(text) {
        Ok(file) => file,
        Err(e) => return fail(SbcStatus::Parse, e.to_string()),
    };
    let model = match &file.model {
        ModelRef::Builtin { builtin } => match builtin_model(builtin) {
            Ok(model) => model,
            Err(e) => return fail(SbcStatus::Parse, e.to_string()),
        },
        ModelRef::Path { path } => match std::fs::read_to_string(path) {
            Ok(text) => match parse_model(&text) {
                Ok(model) => model,
                Err(e) => return fail(SbcStatus::Parse, e.to_string()),
            },
            Err(e) => return fail(SbcStatus::Runtime, format!("cannot read {path}: {e}")),
        },
    };
    let config = file.resolve(model);
    match run_simulation(&config) {
        Ok(result) => match serde_json::to_string_pretty(&result) {
            Ok(json) => emit_string(out, json),
            Err(e) => fail(SbcStatus::Runtime, e.to_string()),
        },
        Err(e) => fail(SbcStatus::Parse, e.to_string()),
    }
}
