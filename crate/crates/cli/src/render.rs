//! JSON value builders with integral floats printed as integers, so that
//! exact results read `[0, 1, 0]` rather than `[0.0, 1.0, 0.0]`.

use korenblum_core::TruncatedSeries;
use num_complex::Complex64;
use serde_json::{json, Value};

pub fn num(x: f64) -> Value {
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        Value::from(x as i64)
    } else {
        Value::from(x)
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

/// Real coefficient array when every imaginary part vanishes, otherwise the
/// `{"re": [..], "im": [..]}` form.
pub fn series(s: &TruncatedSeries) -> Value {
    if s.coeffs().iter().all(|c| c.im == 0.0) {
        Value::Array(s.coeffs().iter().map(|c| num(c.re)).collect())
    } else {
        json!({
            "re": s.coeffs().iter().map(|c| num(c.re)).collect::<Vec<_>>(),
            "im": s.coeffs().iter().map(|c| num(c.im)).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_values_print_as_integers() {
        let s = TruncatedSeries::from_real(&[0.0, 1.0, -0.0, 0.5]).unwrap();
        assert_eq!(series(&s).to_string(), "[0,1,0,0.5]");
        let s = TruncatedSeries::new(vec![Complex64::new(1.0, 2.0)]).unwrap();
        assert_eq!(series(&s).to_string(), r#"{"im":[2],"re":[1]}"#);
    }
}
