//! Affine unit conversion and the built-in registry.
//!
//! Every unit declares a map into its quantity kind's base: `x_base =
//! scale·x + offset`. Two units of the same kind convert through the base,
//! so the composite is itself affine. Kinds never mix: converting Celsius to
//! meters is an error, not a zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{AffineMap, Iri, Unit};

#[derive(Debug, Clone, PartialEq, Error, Serialize, Deserialize)]
pub enum ConversionError {
    #[error("cannot convert {from_kind} ({from}) into {to_kind} ({to})")]
    KindMismatch { from: Iri, from_kind: String, to: Iri, to_kind: String },
}

/// Convert a value between two units of the same quantity kind:
/// `(from.scale·x + from.offset − to.offset) / to.scale`.
pub fn convert(value: f64, from: &Unit, to: &Unit) -> Result<f64, ConversionError> {
    if from.quantity_kind != to.quantity_kind {
        return Err(ConversionError::KindMismatch {
            from: from.iri.clone(),
            from_kind: from.quantity_kind.clone(),
            to: to.iri.clone(),
            to_kind: to.quantity_kind.clone(),
        });
    }
    // Equal maps convert exactly; going through the base would smear the
    // identity with rounding.
    if from.to_base == to.to_base {
        return Ok(value);
    }
    Ok((from.to_base.scale * value + from.to_base.offset - to.to_base.offset) / to.to_base.scale)
}

/// The composite affine map `x_to = slope·x_from + intercept` between two
/// units of the same kind.
pub fn conversion_map(from: &Unit, to: &Unit) -> Result<AffineMap, ConversionError> {
    if from.quantity_kind != to.quantity_kind {
        return Err(ConversionError::KindMismatch {
            from: from.iri.clone(),
            from_kind: from.quantity_kind.clone(),
            to: to.iri.clone(),
            to_kind: to.quantity_kind.clone(),
        });
    }
    Ok(AffineMap {
        scale: from.to_base.scale / to.to_base.scale,
        offset: (from.to_base.offset - to.to_base.offset) / to.to_base.scale,
    })
}

fn builtin(iri: &str, label: &str, kind: &str, scale: f64, offset: f64) -> Unit {
    Unit {
        iri: Iri::new(iri).expect("builtin unit IRI"),
        label: label.to_owned(),
        quantity_kind: kind.to_owned(),
        to_base: AffineMap { scale, offset },
    }
}

pub const CELSIUS_IRI: &str = "http://hadatac.org/kb/unit/Celsius";
pub const FAHRENHEIT_IRI: &str = "http://hadatac.org/kb/unit/Fahrenheit";
pub const KELVIN_IRI: &str = "http://hadatac.org/kb/unit/Kelvin";
pub const GRAM_IRI: &str = "http://hadatac.org/kb/unit/Gram";
pub const KILOGRAM_IRI: &str = "http://hadatac.org/kb/unit/Kilogram";

/// The units shipped with every fresh store: the three everyday temperature
/// scales (base kelvin) and gram/kilogram (base kilogram). Everything else
/// arrives as user data; coefficients always live in the store, not in the
/// conversion code.
pub fn builtin_units() -> Vec<Unit> {
    vec![
        builtin(CELSIUS_IRI, "degree Celsius", "temperature", 1.0, 273.15),
        builtin(FAHRENHEIT_IRI, "degree Fahrenheit", "temperature", 5.0 / 9.0, 273.15 - 160.0 / 9.0),
        builtin(KELVIN_IRI, "kelvin", "temperature", 1.0, 0.0),
        builtin(GRAM_IRI, "gram", "mass", 0.001, 0.0),
        builtin(KILOGRAM_IRI, "kilogram", "mass", 1.0, 0.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(iri: &str) -> Unit {
        builtin_units().into_iter().find(|u| u.iri.as_str() == iri).unwrap()
    }

    #[test]
    fn identity_conversion() {
        let c = unit(CELSIUS_IRI);
        for x in [-40.0, 0.0, 36.6, 1e6] {
            assert_eq!(convert(x, &c, &c).unwrap(), x);
        }
    }

    #[test]
    fn zero_celsius_is_32_fahrenheit() {
        let c = unit(CELSIUS_IRI);
        let f = unit(FAHRENHEIT_IRI);
        // Hand-derived through the declared maps:
        //   0 °C -> base 273.15 K -> (273.15 - (273.15 - 160/9)) / (5/9) = 32 °F
        let got = convert(0.0, &c, &f).unwrap();
        assert!((got - 32.0).abs() <= 1e-9, "got {got}");
        let back = convert(got, &f, &c).unwrap();
        assert!(back.abs() <= 1e-9, "got {back}");
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let c = unit(CELSIUS_IRI);
        let g = unit(GRAM_IRI);
        assert!(matches!(convert(1.0, &c, &g), Err(ConversionError::KindMismatch { .. })));
    }

    #[test]
    fn conversion_map_agrees_with_convert() {
        let f = unit(FAHRENHEIT_IRI);
        let c = unit(CELSIUS_IRI);
        let map = conversion_map(&f, &c).unwrap();
        for x in [-40.0, 32.0, 68.0, 212.0] {
            let direct = convert(x, &f, &c).unwrap();
            let via_map = map.scale * x + map.offset;
            assert!((direct - via_map).abs() <= 1e-12);
        }
    }
}
