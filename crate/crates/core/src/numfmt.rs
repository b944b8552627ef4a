//! Fixed-precision rendering of reals for reproducible output.

use serde::Serializer;

pub const SIG_DIGITS: usize = 9;

/// Round to `digits` significant decimal digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{:.*e}", digits.max(1) - 1, x)
        .parse()
        .expect("exponent form parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

pub fn sig9(x: f64) -> f64 {
    round_sig(x, SIG_DIGITS)
}

/// Locale-independent text form with nine significant digits.
pub fn fmt_sig9(x: f64) -> String {
    format!("{}", sig9(x))
}

/// A rounded real that serializes integral values as integers, so JSON
/// agrees with the text form (`5`, not `5.0`).
#[derive(Debug, Clone, Copy)]
struct Sig9(f64);

impl serde::Serialize for Sig9 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let x = sig9(self.0);
        if x.fract() == 0.0 && x.abs() < 9.0e15 {
            s.serialize_i64(x as i64)
        } else {
            s.serialize_f64(x)
        }
    }
}

pub fn serialize_sig9<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&Sig9(*x), s)
}

pub fn serialize_opt_sig9<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&Sig9(*v)),
        None => s.serialize_none(),
    }
}

pub fn serialize_vec_sig9<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| Sig9(*x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(fmt_sig9(10f64.sqrt()), "3.16227766");
        assert_eq!(fmt_sig9(0.7219280948873623), "0.721928095");
        assert_eq!(fmt_sig9(5.0), "5");
        assert_eq!(fmt_sig9(-0.0), "0");
        assert_eq!(fmt_sig9(1.23456789012e-7), "0.000000123456789");
        assert_eq!(fmt_sig9(2f64.sqrt()), "1.41421356");
    }

    #[test]
    fn json_integral_reals() {
        #[derive(serde::Serialize)]
        struct T {
            #[serde(serialize_with = "serialize_sig9")]
            a: f64,
            #[serde(serialize_with = "serialize_vec_sig9")]
            b: Vec<f64>,
        }
        let t = T {
            a: 5.0,
            b: vec![-0.0, 0.5, 2.0],
        };
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"a":5,"b":[0,0.5,2]}"#
        );
    }
}
