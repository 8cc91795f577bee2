// Encode floats as total-order keys and compare them, including the
// values ordinary `<` cannot rank.

use std::cmp::Ordering;

use detsort::{cmp_total, encode_key, value_equal, FloatValue};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let values = [
        FloatValue::from_f64(f64::NEG_INFINITY),
        FloatValue::from_f64(-1.5),
        FloatValue::from_f64(-0.0),
        FloatValue::from_f64(0.0),
        FloatValue::from_f64(1.5),
        FloatValue::from_f64(f64::INFINITY),
        FloatValue::from_bits64(0x7ff8_0000_0000_0001),
    ];
    let mut lines = Vec::new();
    for v in &values {
        let key = encode_key(*v);
        lines.push(format!(
            "{:>24} -> key {:#018x}",
            format!("{v:?}"),
            key.key()
        ));
        assert_eq!(key.decode(), *v);
    }
    for w in values.windows(2) {
        assert_eq!(cmp_total(w[0], w[1])?, Ordering::Less);
    }
    let (neg_zero, pos_zero) = (values[2], values[3]);
    assert!(!value_equal(neg_zero, pos_zero)?);
    lines.push(format!("-0 vs +0: {:?}", cmp_total(neg_zero, pos_zero)?));

    // mixing widths is refused rather than silently widened
    let err = cmp_total(FloatValue::from_f32(1.0), FloatValue::from_f64(1.0)).unwrap_err();
    lines.push(format!("f32 vs f64: {err}"));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
