use agelab::angle::Spectrum;
use num_rational::Rational64;
use rand::Rng;
use serde_json::{json, Value};

use crate::{Tally, TrialConfig, VerifyError};

pub(crate) mod deviation;
mod exact;
pub(crate) mod groups;
mod sn;
mod unitary;

pub(crate) fn dispatch(name: &str, config: &TrialConfig) -> Result<Tally, VerifyError> {
    Ok(match name {
        "age_axioms" => exact::age_axioms(config),
        "chen_ruan" => unitary::chen_ruan(config),
        "interlacing" => unitary::interlacing(config),
        "deviation" => deviation::deviation(config),
        "arc" => exact::arc(config),
        "small_order" => exact::small_order(config),
        "sn_characters" => sn::sn_characters(config),
        "tensor" => {
            let mut t = unitary::tensor_induced(config);
            t.merge(groups::tensor_pairs());
            t
        }
        "bound1" => groups::bound1(config),
        "imprimitive" => groups::imprimitive(config),
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    })
}

/// Angles with denominators up to 12.
pub(crate) const MAX_DEN: i64 = 12;

pub(crate) fn random_angle<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Rational64 {
    let q = rng.gen_range(1..=max_den);
    Rational64::new(rng.gen_range(0..q), q)
}

pub(crate) fn random_angles<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_den: i64) -> Vec<Rational64> {
    (0..dim).map(|_| random_angle(rng, max_den)).collect()
}

/// A random spectrum, with repeated angles about a third of the time.
pub(crate) fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Spectrum {
    let v = if rng.gen_bool(1.0 / 3.0) {
        let size = rng.gen_range(1..=dim);
        let pool = random_angles(rng, size, MAX_DEN);
        (0..dim).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
    } else {
        random_angles(rng, dim, MAX_DEN)
    };
    Spectrum::new(v).expect("angles in range")
}

pub(crate) fn spectrum_json(s: &Spectrum) -> Value {
    json!(s.to_strings())
}

pub(crate) fn angles_json(v: &[Rational64]) -> Value {
    json!(v.iter().map(|r| r.to_string()).collect::<Vec<_>>())
}
