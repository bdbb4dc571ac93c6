//! Exact tools for studying ages of elements in finite linear groups.
//!
//! * [`angle`]: eigen-angle spectra, age, age*, trace deviation.
//! * [`cyclo`]: cyclotomic numbers and matrices.
//! * [`group`]: enumeration of finite matrix groups.
//! * [`classify`]: element types and group verdicts.
//! * [`catalog`]: constructors for standard groups and the bundled class data.

pub mod angle;
pub mod catalog;
pub mod classify;
pub mod cyclo;
pub mod group;
pub mod ser;

use std::sync::OnceLock;

/// Default working precision for certified evaluations.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Working precision in bits, read once from `AGELAB_PRECISION_BITS`.
pub fn precision_bits() -> u32 {
    static BITS: OnceLock<u32> = OnceLock::new();
    *BITS.get_or_init(|| {
        std::env::var("AGELAB_PRECISION_BITS")
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&b| (64..=1 << 16).contains(&b))
            .unwrap_or(DEFAULT_PRECISION_BITS)
    })
}

/// Formats a float with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
