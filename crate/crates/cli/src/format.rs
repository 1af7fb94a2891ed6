/// Scientific notation with 17 significant digits; parses back to the same
/// `f64` bit pattern.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}
