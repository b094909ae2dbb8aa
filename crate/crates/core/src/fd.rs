//! Central finite differences used by the derivative cross checks.

use crate::scalar::Real;

/// `(f(x+h) - f(x-h)) / 2h`.
pub fn central_diff<T: Real, E>(
    mut f: impl FnMut(T) -> std::result::Result<T, E>,
    x: T,
    h: T,
) -> std::result::Result<T, E> {
    Ok((f(x + h)? - f(x - h)?) / (T::two() * h))
}

/// `(f(x+h) - 2 f(x) + f(x-h)) / h^2`.
pub fn second_diff<T: Real, E>(
    mut f: impl FnMut(T) -> std::result::Result<T, E>,
    x: T,
    h: T,
) -> std::result::Result<T, E> {
    Ok((f(x + h)? - T::two() * f(x)? + f(x - h)?) / (h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differences_of_a_cubic() {
        let f = |x: f64| -> Result<f64, ()> { Ok(x * x * x) };
        let d1 = central_diff(f, 2.0, 1e-6).unwrap();
        assert!((d1 - 12.0).abs() < 1e-5);
        let d2 = second_diff(f, 2.0, 1e-4).unwrap();
        assert!((d2 - 12.0).abs() < 1e-4);
    }
}
