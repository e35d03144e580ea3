use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    First,
    Second,
}

/// Second-order accurate central difference of `f` at `x`.
pub fn central_diff<F>(f: F, x: f64, h: f64, order: DiffOrder) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let check = |at: f64| {
        let v = f(at);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x: at, value: v })
        }
    };
    let plus = check(x + h)?;
    let minus = check(x - h)?;
    match order {
        DiffOrder::First => Ok((plus - minus) / (2.0 * h)),
        DiffOrder::Second => {
            let mid = check(x)?;
            Ok((plus - 2.0 * mid + minus) / (h * h))
        }
    }
}
