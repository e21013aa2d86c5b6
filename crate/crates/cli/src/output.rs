//! Number formatting shared by the JSON and CSV writers.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Formats `x` with 17 significant digits, positional when the exponent is
/// moderate and scientific otherwise. Non-finite values become `null` in JSON
/// contexts, so they are rendered that way here too.
pub fn fmt17(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0" } else { "0.0" }.into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-6..=16).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}.0", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

/// `f64` that serializes through [`fmt17`].
#[derive(Clone, Copy, Debug)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn nums(xs: &[f64]) -> Vec<Num> {
    xs.iter().copied().map(Num).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(1.0), "1.0000000000000000");
        assert_eq!(fmt17(-0.36602540378443865), "-0.36602540378443865");
        assert_eq!(fmt17(4.75), "4.7500000000000000");
        assert_eq!(fmt17(1234.5), "1234.5000000000000");
        assert_eq!(fmt17(1e-12), "9.9999999999999998e-13");
        assert_eq!(fmt17(f64::NAN), "null");
    }

    #[test]
    fn round_trips_exactly() {
        for x in [
            0.1,
            1.0 / 3.0,
            2.6064274244103857,
            -1e-5,
            123456789.123,
            5e20,
        ] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn serializes_as_json_number() {
        let s = serde_json::to_string(&vec![Num(0.5), Num(-2.0)]).unwrap();
        assert_eq!(s, "[0.50000000000000000,-2.0000000000000000]");
    }
}
